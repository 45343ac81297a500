//! The weight function w and the interpolation map from C(X) into the cube
//! space of the quotient by the 0-colored hyperplanes.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::coloring::ColoringAssignment;
use crate::cube::FinSupportPoint;
use crate::error::{Error, Result};
use crate::hyperplane::{HyperplaneId, Relation};
use crate::pocset::QuotientResult;
use crate::rat::Rat;
use crate::Complex;

/// The two-valued weight system of one tower stage.
///
/// w(k, k) = l/(l+1); w(k, h) = 1/(l+1) exactly when k < h, c(h) = 1, and
/// everything strictly between k and h is colored 0; otherwise 0. The scale l
/// is per component, defaulting to 3^(D-1)·D for component dimension D (1
/// when D <= 1).
#[derive(Debug, Clone)]
pub struct WeightFn {
    ell: Vec<u64>,
    /// Colors, kept for the pointwise `weight` query.
    color: Vec<u8>,
    /// Per k in K_c, the h > k with nonzero off-diagonal weight.
    ups: Vec<Vec<HyperplaneId>>,
    /// Per hyperplane h, the k in K_c with nonzero weight w(k, h), k != h.
    downs: Vec<Vec<HyperplaneId>>,
    in_kc: Vec<bool>,
}

/// The scale under which the interpolation is (l/(l+1))-Lipschitz.
pub fn default_ell(dimension: usize) -> u64 {
    if dimension <= 1 {
        1
    } else {
        3u64.pow(dimension as u32 - 1) * dimension as u64
    }
}

impl WeightFn {
    /// Builds the weights for a stage. `ell_override`, when given, replaces
    /// the per-component default on every component.
    pub fn new(cx: &Complex, coloring: &ColoringAssignment, ell_override: Option<u64>) -> Result<WeightFn> {
        if let Some(0) = ell_override {
            return Err(Error::InvalidParams("ell must be positive".into()));
        }
        let ell = (0..cx.graph.component_count())
            .map(|c| ell_override.unwrap_or_else(|| default_ell(cx.hyperplanes.component_dimension(c))))
            .collect();
        let n = cx.hyperplanes.len();
        let mut in_kc = vec![false; n];
        for &k in &coloring.k_c {
            in_kc[k] = true;
        }
        let mut ups = vec![Vec::new(); n];
        let mut downs = vec![Vec::new(); n];
        for &k in &coloring.k_c {
            for h in 0..n {
                if cx.relations.relation(k, h) != Relation::Less || coloring.color[h] != 1 {
                    continue;
                }
                // nothing colored 1 strictly between k and h
                let blocked = (0..n).any(|j| {
                    coloring.color[j] == 1
                        && cx.relations.relation(k, j) == Relation::Less
                        && cx.relations.relation(j, h) == Relation::Less
                });
                if !blocked {
                    ups[k].push(h);
                    downs[h].push(k);
                }
            }
        }
        Ok(WeightFn { ell, color: coloring.color.clone(), ups, downs, in_kc })
    }

    pub fn ell(&self, component: usize) -> u64 {
        self.ell[component]
    }

    /// The stage's Lipschitz constant on one component: l/(l+1).
    pub fn stage_constant(&self, component: usize) -> Rat {
        let l = self.ell[component] as i64;
        crate::rat::rat(l, l + 1)
    }

    /// The weight w(k, h), arguments ordered as in the interpolation sum.
    pub fn weight(&self, cx: &Complex, k: HyperplaneId, h: HyperplaneId) -> Rat {
        let c = cx.hyperplanes.plane(k).component;
        let l = self.ell[c] as i64;
        if k == h {
            return crate::rat::rat(l, l + 1);
        }
        if self.color[h] == 1 && self.ups[k].binary_search(&h).is_ok() {
            return crate::rat::rat(1, l + 1);
        }
        Rat::zero()
    }

    fn check_ordering(&self) -> bool {
        self.ups.iter().all(|v| v.windows(2).all(|w| w[0] < w[1]))
    }
}

/// The interpolation of a point of C(X) into C(X_{K_c}), re-indexed onto the
/// quotient complex through the duality bijection.
///
/// Support containment: the image is supported inside
/// {k in K_c : exists h in supp(xi), k <= h}.
pub fn psi_w(
    wf: &WeightFn,
    cx: &Complex,
    q: &QuotientResult,
    point: &FinSupportPoint,
) -> Result<FinSupportPoint> {
    debug_assert!(wf.check_ordering());
    let c = point.component();
    if c >= cx.graph.component_count() {
        return Err(Error::ComponentMismatch);
    }
    for (h, _) in point.support() {
        if cx.hyperplanes.plane(h).component != c {
            return Err(Error::ComponentMismatch);
        }
    }
    let l = wf.ell[c] as i64;
    let diag = crate::rat::rat(l, l + 1);
    let off = crate::rat::rat(1, l + 1);

    // candidate rows: k in K_c that are the support itself or sit below it
    // with nonzero weight
    let mut rows: BTreeSet<HyperplaneId> = BTreeSet::new();
    for (h, _) in point.support() {
        if wf.in_kc[h] {
            rows.insert(h);
        }
        rows.extend(wf.downs[h].iter().copied());
    }

    let mut out = FinSupportPoint::zero(q.component_map[c]);
    for &k in &rows {
        let mut sum = &diag * point.get(k);
        for &h in &wf.ups[k] {
            let v = point.get(h);
            if !v.is_zero() {
                sum += &off * v;
            }
        }
        let clamped = if sum > Rat::one() { Rat::one() } else { sum };
        if !clamped.is_zero() {
            let img = q
                .image_plane(k)
                .ok_or_else(|| Error::internal("K_c hyperplane missing from quotient"))?;
            out.set(img, clamped);
        }
    }
    Ok(out)
}
