//! The elementary coordinate moves on opposite and nested hyperplane pairs
//! and their ordered composition: a contractive retraction of C(X) onto the
//! embedded complex.

use std::collections::HashMap;

use num::{One, Zero};

use crate::cube::{decode, CubePoint, FinSupportPoint};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::hyperplane::{HyperplaneId, Relation};
use crate::rat::Rat;
use crate::Complex;

/// Distances d(h^(0), k^(0)) between carriers of nested pairs, computed once
/// per complex by BFS from each carrier.
#[derive(Debug, Clone, Default)]
pub struct CarrierDistances {
    map: HashMap<(HyperplaneId, HyperplaneId), u64>,
}

impl CarrierDistances {
    pub fn compute(cx: &Complex) -> CarrierDistances {
        let g = &cx.graph;
        let n = g.vertex_count();
        let mut map = HashMap::new();
        for (h, plane) in cx.hyperplanes.iter() {
            // multi-source BFS from the carrier of h
            let mut dist = vec![u64::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            for v in plane.carrier.iter() {
                dist[v] = 0;
                queue.push_back(v);
            }
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w] == u64::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for k in 0..cx.hyperplanes.len() {
                if cx.relations.relation(h, k) == Relation::Less {
                    let d = cx.hyperplanes.plane(k).carrier.iter().map(|v| dist[v]).min().unwrap();
                    map.insert((h, k), d);
                }
            }
        }
        CarrierDistances { map }
    }

    /// Carrier distance of a nested pair h < k.
    pub fn get(&self, h: HyperplaneId, k: HyperplaneId) -> u64 {
        self.map[&(h, k)]
    }
}

/// Projection engine for one complex.
pub struct Projector<'a> {
    cx: &'a Complex,
    dist: &'a CarrierDistances,
}

impl<'a> Projector<'a> {
    pub fn new(cx: &'a Complex, dist: &'a CarrierDistances) -> Projector<'a> {
        Projector { cx, dist }
    }

    /// Active opposite pairs: both coordinates nonzero. Unordered, reported
    /// with the smaller id first, ascending.
    pub fn op_support(&self, point: &FinSupportPoint) -> Vec<(HyperplaneId, HyperplaneId)> {
        let supp: Vec<HyperplaneId> = point.support().map(|(h, _)| h).collect();
        let mut out = Vec::new();
        for (i, &h) in supp.iter().enumerate() {
            for &k in &supp[i + 1..] {
                if self.cx.relations.relation(h, k) == Relation::Opposite {
                    out.push((h, k));
                }
            }
        }
        out
    }

    /// Active nested pairs (h, k) with h < k, coordinate at h below 1 and at
    /// k above 0. Ascending by id pair.
    pub fn less_support(&self, point: &FinSupportPoint) -> Vec<(HyperplaneId, HyperplaneId)> {
        let mut out = Vec::new();
        for (k, _) in point.support() {
            for &h in self.cx.relations.below(k) {
                if !point.is_one_at(h) {
                    out.push((h, k));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The opposite-pair move: (x, y) becomes (x-y, 0) or (0, y-x).
    pub fn p_op_pair(
        &self,
        point: &FinSupportPoint,
        h: HyperplaneId,
        k: HyperplaneId,
    ) -> Result<FinSupportPoint> {
        if self.cx.relations.relation(h, k) != Relation::Opposite {
            return Err(Error::NotOpposite(h, k));
        }
        let (x, y) = (point.get(h), point.get(k));
        let mut out = point.clone();
        if x >= y {
            out.set(h, x - y);
            out.set(k, Rat::zero());
        } else {
            out.set(h, Rat::zero());
            out.set(k, y - x);
        }
        Ok(out)
    }

    /// The nested-pair move: (x, y) becomes (x+y, 0), saturating at 1 with
    /// the excess left on k. Preserves the coordinate sum.
    pub fn p_less_pair(
        &self,
        point: &FinSupportPoint,
        h: HyperplaneId,
        k: HyperplaneId,
    ) -> Result<FinSupportPoint> {
        if self.cx.relations.relation(h, k) != Relation::Less {
            return Err(Error::NotLess(h, k));
        }
        let (x, y) = (point.get(h), point.get(k));
        let sum = x + y;
        let mut out = point.clone();
        if sum <= Rat::one() {
            out.set(h, sum);
            out.set(k, Rat::zero());
        } else {
            out.set(h, Rat::one());
            out.set(k, sum - Rat::one());
        }
        Ok(out)
    }

    /// Clears the opposite support by applying the pair move over the active
    /// pairs in ascending id order. The result is insensitive to enlarging
    /// the applied pair set (applying over any superset of the support in
    /// the same order gives the same point), which pins the canonical order
    /// down to this deterministic choice.
    pub fn project_op(&self, point: &FinSupportPoint) -> FinSupportPoint {
        let mut point = point.clone();
        let mut rounds = 0;
        loop {
            let support = self.op_support(&point);
            if support.is_empty() {
                return point;
            }
            // one pass over the current support clears it (each application
            // strictly shrinks the support and creates no new pairs)
            rounds += 1;
            assert!(rounds <= point.support_len() + 1, "opposite support did not clear");
            for (h, k) in support {
                point = self.p_op_pair(&point, h, k).expect("pair stays opposite");
            }
        }
    }

    /// Order-override variant for verification: applies the given pair
    /// sequence first, then finishes canonically.
    pub fn project_op_in_order(
        &self,
        point: &FinSupportPoint,
        order: &[(HyperplaneId, HyperplaneId)],
    ) -> Result<FinSupportPoint> {
        let mut point = point.clone();
        for &(h, k) in order {
            point = self.p_op_pair(&point, h, k)?;
        }
        Ok(self.project_op(&point))
    }

    /// Clears the nested support. Pairs are processed at strictly decreasing
    /// carrier distance; the active maximal-distance bucket is recomputed
    /// after every application, ties broken by smallest id pair.
    pub fn project_less(&self, point: &FinSupportPoint) -> Result<FinSupportPoint> {
        self.project_less_with_tiebreak(point, |_| 0)
    }

    /// Tie-break-override variant for verification: `choose` picks an index
    /// into the current maximal-distance bucket (sorted by id pair).
    pub fn project_less_with_tiebreak(
        &self,
        point: &FinSupportPoint,
        mut choose: impl FnMut(&[(HyperplaneId, HyperplaneId)]) -> usize,
    ) -> Result<FinSupportPoint> {
        if !self.op_support(point).is_empty() {
            return Err(Error::OpSupportNonempty);
        }
        let mut point = point.clone();
        let mut guard = 0usize;
        loop {
            let support = self.less_support(&point);
            if support.is_empty() {
                return Ok(point);
            }
            guard += 1;
            if guard > self.cx.hyperplanes.len() * self.cx.hyperplanes.len() + 1 {
                return Err(Error::internal("nested support did not clear"));
            }
            let far = support.iter().map(|&(h, k)| self.dist.get(h, k)).max().unwrap();
            let bucket: Vec<_> =
                support.into_iter().filter(|&(h, k)| self.dist.get(h, k) == far).collect();
            let pick = bucket[choose(&bucket).min(bucket.len() - 1)];
            point = self.p_less_pair(&point, pick.0, pick.1)?;
        }
    }

    /// The full projection: clear opposite pairs, then nested pairs, then
    /// decode. A decode failure here is a bug, not an input error.
    pub fn project(&self, point: &FinSupportPoint) -> Result<CubePoint> {
        let flat = self.project_point(point)?;
        decode(self.cx, &flat).map_err(|e| Error::internal(format!("projection left the image: {e}")))
    }

    /// As `project`, but returns the point of C(X); decoding is still
    /// performed as a checked assertion.
    pub fn project_point(&self, point: &FinSupportPoint) -> Result<FinSupportPoint> {
        let flat = self.project_less(&self.project_op(point))?;
        decode(self.cx, &flat)
            .map_err(|e| Error::internal(format!("projection left the image: {e}")))?;
        Ok(flat)
    }
}

/// Convenience: projector data for a complex owned together.
pub struct OwnedProjector {
    dist: CarrierDistances,
}

impl OwnedProjector {
    pub fn new(cx: &Complex) -> OwnedProjector {
        OwnedProjector { dist: CarrierDistances::compute(cx) }
    }

    pub fn projector<'a>(&'a self, cx: &'a Complex) -> Projector<'a> {
        Projector::new(cx, &self.dist)
    }
}

/// Projects the embedding of a vertex; identity by construction, used as a
/// smoke check.
pub fn project_vertex(cx: &Complex, dist: &CarrierDistances, x: Vertex) -> Result<CubePoint> {
    let p = crate::cube::iota(cx, x)?;
    Projector::new(cx, dist).project(&p)
}
