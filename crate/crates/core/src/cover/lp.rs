//! A small exact simplex solver over rationals, used by the star-separation
//! oracle to minimize l1 distance between convex polytopes. Two phases,
//! Bland's rule; exact arithmetic rules out cycling and tolerance issues.

use num::{One, Signed, Zero};

use crate::rat::Rat;

/// min c.x subject to A x = b, x >= 0. Rows with negative b are flipped;
/// feasibility comes from a phase-one artificial basis.
///
/// Returns None when infeasible. The problems built here are always bounded.
pub fn solve_min(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Option<Rat> {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // tableau: columns = n structural + m artificial + rhs
    let cols = n + m + 1;
    let mut t = vec![vec![Rat::zero(); cols]; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        t[i][n + i] = Rat::one();
        t[i][cols - 1] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimize the sum of artificials
    let mut obj = vec![Rat::zero(); cols];
    for j in 0..cols {
        for row in t.iter() {
            obj[j] -= &row[j]; // reduced costs of sum(artificials) after pricing out
        }
    }
    for i in n..n + m {
        obj[i] += Rat::one();
    }
    run_simplex(&mut t, &mut obj, &mut basis, n + m);
    let infeasible = t
        .iter()
        .enumerate()
        .any(|(i, row)| basis[i] >= n && !row[cols - 1].is_zero());
    if infeasible {
        return None;
    }
    // drive leftover zero-level artificials out of the basis when possible
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut obj, &mut basis, i, j);
            }
        }
    }

    // phase two: the real objective, priced out over the current basis
    let mut obj2 = vec![Rat::zero(); cols];
    obj2[..n].clone_from_slice(c);
    for i in 0..m {
        if basis[i] < n && !obj2[basis[i]].is_zero() {
            let coef = obj2[basis[i]].clone();
            for j in 0..cols {
                let delta = &coef * &t[i][j];
                obj2[j] -= delta;
            }
        }
    }
    run_simplex(&mut t, &mut obj2, &mut basis, n);

    let mut value = Rat::zero();
    for (i, row) in t.iter().enumerate() {
        if basis[i] < n {
            value += &c[basis[i]] * &row[cols - 1];
        }
    }
    Some(value)
}

/// Bland's rule simplex on a tableau with priced-out objective row.
/// `allowed` bounds the entering columns (excludes artificials in phase two).
fn run_simplex(t: &mut [Vec<Rat>], obj: &mut [Rat], basis: &mut [usize], allowed: usize) {
    let m = t.len();
    let cols = obj.len();
    loop {
        // entering: smallest index with negative reduced cost
        let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else { return };
        // leaving: minimum ratio, ties by smallest basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter] > Rat::zero() {
                let ratio = &t[i][cols - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => &ratio < b || (&ratio == b && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // unbounded; our objectives are bounded below by zero
            unreachable!("simplex objective is unbounded");
        };
        pivot(t, obj, basis, leave, enter);
    }
}

fn pivot(t: &mut [Vec<Rat>], obj: &mut [Rat], basis: &mut [usize], row: usize, col: usize) {
    let cols = obj.len();
    let inv = {
        let p = t[row][col].clone();
        debug_assert!(!p.is_zero());
        Rat::one() / p
    };
    for j in 0..cols {
        t[row][j] = &t[row][j] * &inv;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let coef = t[i][col].clone();
            for j in 0..cols {
                let delta = &coef * &t[row][j];
                t[i][j] -= delta;
            }
        }
    }
    if !obj[col].is_zero() {
        let coef = obj[col].clone();
        for j in 0..cols {
            let delta = &coef * &t[row][j];
            obj[j] -= delta;
        }
    }
    basis[row] = col;
}

/// Minimum l1 distance between the convex hulls of two vertex sets in R^d:
/// min sum_i z_i with z_i >= |(P lambda - Q mu)_i|, lambda and mu stochastic.
pub fn polytope_l1_distance(p: &[Vec<Rat>], q: &[Vec<Rat>]) -> Rat {
    let d = p[0].len();
    let (np, nq) = (p.len(), q.len());
    let nvars = np + nq + d + 2 * d; // lambda, mu, z, slacks
    let mut a = Vec::new();
    let mut b = Vec::new();
    // diff_i - z_i + s1_i = 0 and -diff_i - z_i + s2_i = 0
    for i in 0..d {
        let mut row1 = vec![Rat::zero(); nvars];
        let mut row2 = vec![Rat::zero(); nvars];
        for (j, pv) in p.iter().enumerate() {
            row1[j] = pv[i].clone();
            row2[j] = -pv[i].clone();
        }
        for (k, qv) in q.iter().enumerate() {
            row1[np + k] = -qv[i].clone();
            row2[np + k] = qv[i].clone();
        }
        row1[np + nq + i] = -Rat::one();
        row2[np + nq + i] = -Rat::one();
        row1[np + nq + d + i] = Rat::one();
        row2[np + nq + d + d + i] = Rat::one();
        a.push(row1);
        a.push(row2);
        b.push(Rat::zero());
        b.push(Rat::zero());
    }
    // stochastic weights
    let mut row = vec![Rat::zero(); nvars];
    for cell in row.iter_mut().take(np) {
        *cell = Rat::one();
    }
    a.push(row);
    b.push(Rat::one());
    let mut row = vec![Rat::zero(); nvars];
    for cell in row.iter_mut().skip(np).take(nq) {
        *cell = Rat::one();
    }
    a.push(row);
    b.push(Rat::one());

    let mut c = vec![Rat::zero(); nvars];
    for i in 0..d {
        c[np + nq + i] = Rat::one();
    }
    solve_min(&c, &a, &b).expect("polytope distance LP is feasible")
}
