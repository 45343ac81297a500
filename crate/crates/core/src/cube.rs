//! The l1 cube space C(X): finitely supported [0,1]-valued maps on the
//! hyperplanes of one component, the isometric embedding of vertices, and the
//! decoding of points back into cubes of the complex.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, NotInImageReason, Result};
use crate::graph::{ComponentId, Vertex};
use crate::hyperplane::{HyperplaneId, Relation, Side};
use crate::pocset::vertex_with_sides;
use crate::rat::{in_unit_interval, ExtRat, Rat};
use crate::Complex;

/// A point of C(X): exact rational coordinates in [0,1] on finitely many
/// hyperplanes of a single component. Zero coordinates are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSupportPoint {
    component: ComponentId,
    entries: BTreeMap<HyperplaneId, Rat>,
}

impl FinSupportPoint {
    /// Builds a point, dropping explicit zeros and rejecting coordinates
    /// outside [0,1].
    pub fn new(component: ComponentId, entries: BTreeMap<HyperplaneId, Rat>) -> Result<FinSupportPoint> {
        for (h, v) in &entries {
            if !in_unit_interval(v) {
                return Err(Error::InvalidParams(format!(
                    "coordinate {v} at hyperplane {h} is outside [0,1]"
                )));
            }
        }
        let entries = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(FinSupportPoint { component, entries })
    }

    pub fn zero(component: ComponentId) -> FinSupportPoint {
        FinSupportPoint { component, entries: BTreeMap::new() }
    }

    pub fn component(&self) -> ComponentId {
        self.component
    }

    pub fn get(&self, h: HyperplaneId) -> Rat {
        self.entries.get(&h).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero_at(&self, h: HyperplaneId) -> bool {
        !self.entries.contains_key(&h)
    }

    pub fn is_one_at(&self, h: HyperplaneId) -> bool {
        self.entries.get(&h).map(|v| v.is_one()).unwrap_or(false)
    }

    /// Supported hyperplanes with their nonzero values, ascending by id.
    pub fn support(&self) -> impl Iterator<Item = (HyperplaneId, &Rat)> {
        self.entries.iter().map(|(&h, v)| (h, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Sets one coordinate, keeping the no-zeros invariant.
    pub fn set(&mut self, h: HyperplaneId, v: Rat) {
        debug_assert!(in_unit_interval(&v));
        if v.is_zero() {
            self.entries.remove(&h);
        } else {
            self.entries.insert(h, v);
        }
    }
}

/// The embedding of a vertex: the indicator of the hyperplanes separating the
/// component base from it.
pub fn iota(cx: &Complex, x: Vertex) -> Result<FinSupportPoint> {
    cx.graph.check_vertex(x)?;
    let c = cx.graph.component_of(x);
    let base = cx.graph.base_of(c);
    let mut entries = BTreeMap::new();
    for h in cx.hyperplanes.separating(&cx.graph, base, x)? {
        entries.insert(h, Rat::one());
    }
    Ok(FinSupportPoint { component: c, entries })
}

/// Exact l1 distance; infinite across components.
pub fn l1_distance(a: &FinSupportPoint, b: &FinSupportPoint) -> ExtRat {
    if a.component != b.component {
        return ExtRat::Infinite;
    }
    let mut total = Rat::zero();
    for (&h, va) in &a.entries {
        let vb = b.get(h);
        total += if *va >= vb { va - vb } else { vb - va.clone() };
    }
    for (&h, vb) in &b.entries {
        if !a.entries.contains_key(&h) {
            total += vb;
        }
    }
    ExtRat::Finite(total)
}

/// A point of the geometric realization: the corner of its minimal cube
/// nearest the component base, plus coordinates in (0,1) on the pairwise
/// crossing hyperplanes the cube spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubePoint {
    pub vertex: Vertex,
    pub frac: BTreeMap<HyperplaneId, Rat>,
}

impl CubePoint {
    pub fn vertex(v: Vertex) -> CubePoint {
        CubePoint { vertex: v, frac: BTreeMap::new() }
    }
}

/// The embedding of a cube point: ones on the separators of (base, corner)
/// plus the fractional coordinates.
pub fn encode(cx: &Complex, p: &CubePoint) -> Result<FinSupportPoint> {
    let mut point = iota(cx, p.vertex)?;
    for (&h, v) in &p.frac {
        debug_assert!(!v.is_zero() && !v.is_one() && in_unit_interval(v));
        debug_assert!(point.is_zero_at(h), "fractional hyperplane already separates");
        point.set(h, v.clone());
    }
    Ok(point)
}

/// Decodes a point claimed to lie in the image of the embedding.
///
/// The 1-set must be the separator set of the base and a (unique) vertex, the
/// fractional hyperplanes must pairwise cross, and each must carry an edge at
/// that vertex; the corner found is automatically the one nearest the base.
pub fn decode(cx: &Complex, point: &FinSupportPoint) -> Result<CubePoint> {
    let c = point.component;
    let mut ones: Vec<HyperplaneId> = Vec::new();
    let mut frac: BTreeMap<HyperplaneId, Rat> = BTreeMap::new();
    for (h, v) in point.support() {
        cx.hyperplanes.check_id(h)?;
        if cx.hyperplanes.plane(h).component != c {
            return Err(Error::ComponentMismatch);
        }
        if v.is_one() {
            ones.push(h);
        } else {
            frac.insert(h, v.clone());
        }
    }

    let target = |h: HyperplaneId| {
        if ones.binary_search(&h).is_ok() {
            Side::Plus
        } else {
            Side::Minus
        }
    };
    let vertex = vertex_with_sides(cx, c, &target)
        .ok_or(Error::NotInImage { reason: NotInImageReason::NoVertexForOnes })?;

    let ids: Vec<HyperplaneId> = frac.keys().copied().collect();
    for (i, &h) in ids.iter().enumerate() {
        for &k in &ids[i + 1..] {
            if cx.relations.relation(h, k) != Relation::Cross {
                return Err(Error::NotInImage { reason: NotInImageReason::FracNotCrossing });
            }
        }
    }
    for &h in &ids {
        if cx.hyperplanes.cross_neighbor(vertex, h).is_none() {
            return Err(Error::NotInImage { reason: NotInImageReason::NoCubeAtVertex });
        }
        debug_assert_eq!(cx.hyperplanes.side(h, vertex), Side::Minus);
    }
    Ok(CubePoint { vertex, frac })
}
