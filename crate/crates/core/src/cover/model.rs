//! Explicit enumeration of the subdivided model complex: the cubical complex
//! on [0,2]^d with unit cells, its flag triangulation T (chains of faces),
//! the barycentric subdivisions T1 and T2, and closed T2-star polytopes.
//! Stars span at most two T1-simplexes in every direction, so this model
//! realizes every local pattern a d-dimensional grid complex can show.

use num::Zero;

use crate::rat::Rat;

/// A face of the cubical complex: a product of per-axis intervals, each
/// either degenerate [a, a] or unit [a, a+1], inside [0,2]^d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub lo: Vec<u8>,
    pub hi: Vec<u8>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.lo.iter().zip(&self.hi).filter(|(a, b)| a != b).count()
    }

    /// Inclusion of closed faces, per axis.
    pub fn contains(&self, other: &Face) -> bool {
        self.lo
            .iter()
            .zip(&self.hi)
            .zip(other.lo.iter().zip(&other.hi))
            .all(|((slo, shi), (olo, ohi))| slo <= olo && ohi <= shi)
    }

    pub fn center(&self) -> Vec<Rat> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&a, &b)| Rat::new((a as i64 + b as i64).into(), 2.into()))
            .collect()
    }
}

/// A T-simplex: a chain of faces, ascending by dimension (strict inclusion).
pub type Chain = Vec<usize>;

pub struct ModelComplex {
    pub dim: usize,
    pub faces: Vec<Face>,
    /// All chains in the face poset, each a strictly increasing face list.
    pub t_simplexes: Vec<Chain>,
}

impl ModelComplex {
    pub fn new(dim: usize) -> ModelComplex {
        assert!(dim >= 1 && dim <= 3, "model complex supports dimensions 1..=3");
        // enumerate faces: per axis, intervals [0,0],[1,1],[2,2],[0,1],[1,2]
        let axis_intervals: Vec<(u8, u8)> = vec![(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)];
        let mut faces = vec![Face { lo: vec![], hi: vec![] }];
        for _ in 0..dim {
            let mut next = Vec::new();
            for f in &faces {
                for &(a, b) in &axis_intervals {
                    let mut lo = f.lo.clone();
                    let mut hi = f.hi.clone();
                    lo.push(a);
                    hi.push(b);
                    next.push(Face { lo, hi });
                }
            }
            faces = next;
        }
        faces.sort();

        // chains by DFS over strict containment: every chain set is reached
        // exactly once (its containment order is unique); stored chains are
        // canonicalized to ascending face index
        let mut t_simplexes: Vec<Chain> = Vec::new();
        let n = faces.len();
        let mut stack: Vec<Chain> = (0..n).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            let mut canon = chain.clone();
            canon.sort_unstable();
            t_simplexes.push(canon);
            for next in 0..n {
                if next != last && faces[next].contains(&faces[last]) {
                    let mut longer = chain.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
        t_simplexes.sort();
        ModelComplex { dim, faces, t_simplexes }
    }

    /// Barycenter of a T-simplex: the average of its face centers.
    pub fn barycenter(&self, chain: &Chain) -> Vec<Rat> {
        let k = Rat::new((chain.len() as i64).into(), 1.into());
        let mut acc = vec![Rat::zero(); self.dim];
        for &f in chain {
            for (a, c) in acc.iter_mut().zip(self.faces[f].center()) {
                *a += c;
            }
        }
        acc.into_iter().map(|a| a / &k).collect()
    }

    /// The level of the T1-vertex at a chain's barycenter.
    pub fn level(chain: &Chain) -> usize {
        chain.len() - 1
    }

    /// Maximal flags: chains with one face of every dimension 0..=dim.
    fn maximal_flags(&self) -> Vec<Chain> {
        let mut flags: Vec<Chain> = self
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dim() == 0)
            .map(|(i, _)| vec![i])
            .collect();
        for d in 1..=self.dim {
            let mut next = Vec::new();
            for flag in &flags {
                let top = *flag.last().unwrap();
                for (i, f) in self.faces.iter().enumerate() {
                    if f.dim() == d && f.contains(&self.faces[top]) {
                        let mut longer = flag.clone();
                        longer.push(i);
                        next.push(longer);
                    }
                }
            }
            flags = next;
        }
        flags
    }

    /// The closed T2-star of the T1-vertex at `chain`'s barycenter: the
    /// vertex-coordinate lists of all top T2-simplexes containing it.
    ///
    /// A top T1-simplex is the chain of prefix sets of a permutation of a
    /// maximal flag; it has the T1-vertex among its vertices exactly when
    /// the prefix of length |chain| is `chain` itself. A top T2-simplex is
    /// the chain of prefix sets of a permutation of a top T1-simplex's
    /// vertices; it contains the T1-vertex exactly when that permutation
    /// starts with it.
    pub fn star_simplexes(&self, chain: &Chain) -> Vec<Vec<Vec<Rat>>> {
        let mut out = Vec::new();
        let tau: std::collections::BTreeSet<usize> = chain.iter().copied().collect();
        for flag in self.maximal_flags() {
            if !tau.iter().all(|f| flag.contains(f)) {
                continue;
            }
            let rest: Vec<usize> = flag.iter().copied().filter(|f| !tau.contains(f)).collect();
            for tau_order in permutations(chain) {
                for tail in permutations(&rest) {
                    // sigma: prefix sets of tau_order ++ tail
                    let mut verts: Vec<Chain> = Vec::new();
                    let mut acc: Vec<usize> = Vec::new();
                    for &f in tau_order.iter().chain(&tail) {
                        acc.push(f);
                        let mut s = acc.clone();
                        s.sort_unstable();
                        verts.push(s);
                    }
                    let tau_pos = tau.len() - 1; // verts[tau_pos] == chain
                    debug_assert_eq!(&verts[tau_pos], chain);
                    let others: Vec<usize> = (0..verts.len()).filter(|&i| i != tau_pos).collect();
                    for order in permutations(&others) {
                        let mut t2: Vec<Vec<Rat>> = Vec::new();
                        let mut members = vec![tau_pos];
                        t2.push(self.t1_barycenter(&verts, &members));
                        for &o in &order {
                            members.push(o);
                            t2.push(self.t1_barycenter(&verts, &members));
                        }
                        out.push(t2);
                    }
                }
            }
        }
        dedup_simplexes(&mut out);
        out
    }

    /// All top T2-simplexes of the whole model, for the membership oracle.
    pub fn all_top_t2(&self) -> Vec<Vec<Vec<Rat>>> {
        let mut out = Vec::new();
        for flag in self.maximal_flags() {
            for seq in permutations(&flag) {
                let mut verts: Vec<Chain> = Vec::new();
                let mut acc: Vec<usize> = Vec::new();
                for &f in &seq {
                    acc.push(f);
                    let mut s = acc.clone();
                    s.sort_unstable();
                    verts.push(s);
                }
                for order in permutations(&(0..verts.len()).collect::<Vec<_>>()) {
                    let mut t2: Vec<Vec<Rat>> = Vec::new();
                    let mut members = Vec::new();
                    for &o in &order {
                        members.push(o);
                        t2.push(self.t1_barycenter(&verts, &members));
                    }
                    out.push(t2);
                }
            }
        }
        dedup_simplexes(&mut out);
        out
    }

    /// Barycenter of a T1-simplex given by indices into a vertex chain list.
    fn t1_barycenter(&self, verts: &[Chain], members: &[usize]) -> Vec<Rat> {
        let k = Rat::new((members.len() as i64).into(), 1.into());
        let mut acc = vec![Rat::zero(); self.dim];
        for &m in members {
            for (a, c) in acc.iter_mut().zip(self.barycenter(&verts[m])) {
                *a += c;
            }
        }
        acc.into_iter().map(|a| a / &k).collect()
    }

    /// All T1-vertices (chains) grouped with their levels.
    pub fn t1_vertices(&self) -> Vec<(usize, &Chain)> {
        self.t_simplexes.iter().map(|c| (Self::level(c), c)).collect()
    }
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

fn dedup_simplexes(simplexes: &mut Vec<Vec<Vec<Rat>>>) {
    for s in simplexes.iter_mut() {
        s.sort();
    }
    simplexes.sort();
    simplexes.dedup();
}

/// Exact membership of a point in the convex hull of d+1 affinely
/// independent points of R^d: solve for barycentric coordinates and check
/// nonnegativity. Degenerate simplexes report false.
pub fn point_in_simplex(point: &[Rat], simplex: &[Vec<Rat>]) -> bool {
    let d = point.len();
    let k = simplex.len();
    // solve sum_j lambda_j v_j = p, sum lambda = 1 by Gaussian elimination
    let rows = d + 1;
    let mut m = vec![vec![Rat::zero(); k + 1]; rows];
    for i in 0..d {
        for (j, v) in simplex.iter().enumerate() {
            m[i][j] = v[i].clone();
        }
        m[i][k] = point[i].clone();
    }
    for j in 0..k {
        m[d][j] = Rat::new(1.into(), 1.into());
    }
    m[d][k] = Rat::new(1.into(), 1.into());

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = {
            let p = m[r][c].clone();
            Rat::new(1.into(), 1.into()) / p
        };
        for j in 0..=k {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let coef = m[i][c].clone();
                for j in 0..=k {
                    let delta = &coef * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent rows mean the point is outside the affine hull
    for i in r..rows {
        if !m[i][k].is_zero() {
            return false;
        }
    }
    if pivot_cols.len() < k {
        // affinely dependent vertex set: not a top simplex, skip
        return false;
    }
    (0..k).all(|j| {
        let row = pivot_cols.iter().position(|&c| c == j).unwrap();
        !m[row][k].is_negative()
    })
}

use num::Signed;
