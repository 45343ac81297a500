//! Point location in the double-barycentric triangulation of the cube
//! complex, and star-level classification.
//!
//! Each n-cube is cut by the mid-hyperplanes t_i = 1/2 and the diagonal
//! hyperplanes |t_i - 1/2| = |t_j - 1/2| into the flag triangulation T whose
//! vertices are the centers of the cube's faces; a T-simplex is a chain of
//! faces. T1 and T2 are its first and second barycentric subdivisions. The
//! closed T2-star of a T1-vertex v is exactly the region where v's
//! barycentric coordinate in the containing T1-simplex is maximal, which is
//! how membership is decided here.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::cube::CubePoint;
use crate::graph::Vertex;
use crate::hyperplane::{HyperplaneId, Side};
use crate::rat::Rat;
use crate::Complex;

/// A cube of the complex: its corner nearest the component base plus the
/// crossing hyperplanes it spans (sorted). Faces of cubes are cubes again,
/// so this also names every face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeId {
    pub corner: Vertex,
    pub spans: Vec<HyperplaneId>,
}

impl CubeId {
    pub fn dim(&self) -> usize {
        self.spans.len()
    }
}

impl std::fmt::Display for CubeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let spans: Vec<String> = self.spans.iter().map(|h| h.to_string()).collect();
        write!(f, "{}[{}]", self.corner, spans.join(","))
    }
}

/// A T1-vertex: the barycenter of a T-simplex, identified by its chain of
/// faces, ascending by dimension. Canonical across the cubes containing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarId(pub Vec<CubeId>);

impl StarId {
    /// The level of the star: the dimension of the underlying T-simplex.
    pub fn level(&self) -> usize {
        self.0.len() - 1
    }
}

impl std::fmt::Display for StarId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("<"))
    }
}

/// Where a cube point sits in the subdivided complex.
#[derive(Debug, Clone)]
pub struct SimplexLocation {
    /// The minimal cube carrying the point.
    pub cube: CubeId,
    /// Sign of each spanned coordinate relative to the cube center; exact
    /// halves are reported as Minus (the lowest cell).
    pub orthant: Vec<(HyperplaneId, Side)>,
    /// Spanned hyperplanes grouped by ascending |t - 1/2|, ties together;
    /// a leading group with value 0 collects the exactly-central coordinates.
    pub perm_cell: Vec<Vec<HyperplaneId>>,
    /// The vertices of the carrier T1-simplex.
    pub t1_chain: Vec<StarId>,
    /// Positive barycentric coordinates of the point, parallel to t1_chain.
    pub bary: Vec<Rat>,
}

/// The face of `cube` obtained by fixing the hyperplanes in `fix` at the
/// given sides, re-anchored at the corner nearest the base.
fn face_of(cx: &Complex, cube: &CubeId, fix: &[(HyperplaneId, Side)]) -> CubeId {
    let mut corner = cube.corner;
    for &(h, side) in fix {
        if side == Side::Plus {
            corner = cx
                .hyperplanes
                .cross_neighbor(corner, h)
                .expect("fixing a spanned hyperplane stays inside the cube");
        }
    }
    let spans = cube
        .spans
        .iter()
        .copied()
        .filter(|h| !fix.iter().any(|&(f, _)| f == *h))
        .collect();
    CubeId { corner, spans }
}

/// Locates a cube point: carrier T-simplex from the ordering of |t - 1/2|,
/// then the T1 barycentric coordinates from sorted coordinate drops.
pub fn locate(cx: &Complex, p: &CubePoint) -> SimplexLocation {
    let half = Rat::new(1.into(), 2.into());
    let cube = CubeId { corner: p.vertex, spans: p.frac.keys().copied().collect() };

    // offsets from the cube center
    let mut orthant = Vec::new();
    let mut offsets: Vec<(HyperplaneId, Rat, Side)> = Vec::new();
    for (&h, t) in &p.frac {
        let u = t - &half;
        let (abs, side) =
            if u >= Rat::zero() { (u.clone(), Side::Plus) } else { (-u.clone(), Side::Minus) };
        let display_side = if abs.is_zero() { Side::Minus } else { side };
        orthant.push((h, display_side));
        offsets.push((h, abs, side));
    }
    offsets.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));

    // group by |u| ascending
    let mut groups: Vec<(Rat, Vec<(HyperplaneId, Side)>)> = Vec::new();
    for (h, abs, side) in offsets {
        match groups.last_mut() {
            Some((val, ids)) if *val == abs => ids.push((h, side)),
            _ => groups.push((abs, vec![(h, side)])),
        }
    }
    let perm_cell: Vec<Vec<HyperplaneId>> =
        groups.iter().map(|(_, ids)| ids.iter().map(|&(h, _)| h).collect()).collect();

    // carrier T-simplex: faces fixing the suffix groups with nonzero |u|.
    // lambda(face fixing groups >= j) = 2(val_j - val_{j-1});
    // lambda(whole cube center) = 1 - 2 max|u|.
    let nonzero_from = groups.iter().position(|(val, _)| !val.is_zero()).unwrap_or(groups.len());
    let two = Rat::from_integer(2.into());
    let mut carrier: Vec<(CubeId, Rat)> = Vec::new();
    let mut prev = Rat::zero();
    for j in nonzero_from..groups.len() {
        let fix: Vec<(HyperplaneId, Side)> =
            groups[j..].iter().flat_map(|(_, ids)| ids.iter().copied()).collect();
        let lam = &two * (&groups[j].0 - &prev);
        prev = groups[j].0.clone();
        carrier.push((face_of(cx, &cube, &fix), lam));
    }
    let top_lam = Rat::one() - &two * &prev;
    debug_assert!(top_lam > Rat::zero(), "interior coordinates keep the center positive");
    carrier.push((cube.clone(), top_lam));

    // T1 coordinates: sort lambda descending (carrier faces ascending by
    // dimension break ties deterministically), prefix barycenters at strict
    // drops carry positive weight.
    carrier.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.dim().cmp(&b.0.dim())));
    let m = carrier.len();
    let mut t1_chain = Vec::new();
    let mut bary = Vec::new();
    for k in 1..=m {
        let lam_k = &carrier[k - 1].1;
        let next = if k < m { carrier[k].1.clone() } else { Rat::zero() };
        let mu = Rat::from_integer((k as i64).into()) * (lam_k - &next);
        if mu.is_zero() {
            continue;
        }
        let mut chain: Vec<CubeId> = carrier[..k].iter().map(|(c, _)| c.clone()).collect();
        chain.sort_by_key(|c| c.dim());
        t1_chain.push(StarId(chain));
        bary.push(mu);
    }
    debug_assert_eq!(bary.iter().sum::<Rat>(), Rat::one());

    SimplexLocation { cube, orthant, perm_cell, t1_chain, bary }
}

/// The levels whose stars contain the point: the T-dimensions of the argmax
/// vertices of its T1 barycentric coordinates. Ties give several levels; the
/// result is never empty, and contains at most one star per level.
pub fn star_levels(cx: &Complex, p: &CubePoint) -> BTreeSet<usize> {
    stars(cx, p).into_iter().map(|(l, _)| l).collect()
}

/// The argmax stars of a point: (level, star) pairs, one star per level.
pub fn stars(cx: &Complex, p: &CubePoint) -> Vec<(usize, StarId)> {
    let loc = locate(cx, p);
    let best = loc.bary.iter().max().expect("carrier is nonempty");
    loc.t1_chain
        .iter()
        .zip(&loc.bary)
        .filter(|(_, mu)| *mu == best)
        .map(|(star, _)| (star.level(), star.clone()))
        .collect()
}
