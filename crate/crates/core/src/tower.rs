//! The quotient tower: iterate (coloring, quotient by K_c, interpolation,
//! projection) until the composed Lipschitz bound drops below a requested
//! epsilon, and verify the resulting map.

use num::{One, Zero};
use rayon::prelude::*;

use crate::coloring::{compute_coloring, ColoringAssignment};
use crate::cube::{decode, iota, l1_distance, FinSupportPoint};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::interp::{psi_w, WeightFn};
use crate::pocset::{quotient, QuotientResult};
use crate::project::{CarrierDistances, Projector};
use crate::rat::Rat;
use crate::Complex;

/// One stage: the coloring of the (implicit) source complex, the quotient by
/// its 0-class, the stage weights, and the projection data on the quotient.
#[derive(Debug)]
pub struct TowerStage {
    pub coloring: ColoringAssignment,
    pub weights: WeightFn,
    pub quotient: QuotientResult,
    /// Worst per-component l/(l+1) over components that still carry
    /// hyperplanes; 1-Lipschitz trivially when none do.
    pub constant: Rat,
    pub carrier_distances: CarrierDistances,
}

/// The composed map from a complex to its iterated quotient.
#[derive(Debug)]
pub struct TowerMap {
    pub source: Complex,
    pub stages: Vec<TowerStage>,
    /// Requested strict bound; None when the stage count was fixed directly.
    pub epsilon: Option<Rat>,
    /// Product of the stage constants.
    pub lipschitz_bound: Rat,
    /// True when the last stage quotients by an empty K_c, collapsing every
    /// component to its base point.
    pub collapsed: bool,
}

fn build_stage(cx: &Complex, ell_override: Option<u64>) -> Result<TowerStage> {
    let coloring = compute_coloring(cx)?;
    let weights = WeightFn::new(cx, &coloring, ell_override)?;
    let q = quotient(cx, &coloring.k_c)?;
    let constant = (0..cx.graph.component_count())
        .filter(|&c| !cx.hyperplanes.in_component(c).is_empty())
        .map(|c| weights.stage_constant(c))
        .max()
        .unwrap_or_else(Rat::one);
    let carrier_distances = CarrierDistances::compute(&q.complex);
    Ok(TowerStage { coloring, weights, quotient: q, constant, carrier_distances })
}

fn build(
    cx: Complex,
    epsilon: Option<&Rat>,
    max_stages: usize,
    ell_override: Option<u64>,
) -> Result<TowerMap> {
    if let Some(eps) = epsilon {
        if eps <= &Rat::zero() || eps > &Rat::one() {
            return Err(Error::InvalidParams("epsilon must lie in (0, 1]".into()));
        }
    }
    let mut stages: Vec<TowerStage> = Vec::new();
    let mut bound = Rat::one();
    let mut collapsed = false;
    while stages.len() < max_stages {
        let source = stages.last().map(|s| &s.quotient.complex).unwrap_or(&cx);
        let stage = build_stage(source, ell_override)?;
        let empty_kc = stage.coloring.k_c.is_empty();
        bound *= stage.constant.clone();
        stages.push(stage);
        if empty_kc {
            // the quotient is a point per component; later stages are no-ops
            collapsed = true;
            break;
        }
        if let Some(eps) = epsilon {
            if &bound < eps {
                break;
            }
        }
    }
    Ok(TowerMap {
        source: cx,
        stages,
        epsilon: epsilon.cloned(),
        lipschitz_bound: bound,
        collapsed,
    })
}

/// Builds the tower for a strict epsilon bound: the stage count is minimal
/// with (product of stage constants) < epsilon, except that a stage with an
/// empty 0-class terminates the tower early.
pub fn build_tower(cx: Complex, epsilon: &Rat) -> Result<TowerMap> {
    build(cx, Some(epsilon), usize::MAX, None)
}

/// Builds a tower with exactly `stages` stages (fewer if it collapses).
pub fn build_tower_stages(cx: Complex, stages: usize, ell_override: Option<u64>) -> Result<TowerMap> {
    build(cx, None, stages, ell_override)
}

/// Builds the epsilon tower with a uniform scale override.
pub fn build_tower_with_ell(cx: Complex, epsilon: &Rat, ell_override: Option<u64>) -> Result<TowerMap> {
    build(cx, Some(epsilon), usize::MAX, ell_override)
}

/// Lipschitz verification report: the exact observed constant next to the
/// claimed bound.
#[derive(Debug, Clone)]
pub struct LipschitzReport {
    pub observed: Rat,
    pub bound: Rat,
    pub ok: bool,
    pub witness: Option<(Vertex, Vertex)>,
}

/// Empirical cobornologousness table: per source distance threshold t, the
/// minimum image distance over pairs at distance >= t.
#[derive(Debug, Clone)]
pub struct CobornologousReport {
    pub control: Vec<(u64, Rat)>,
}

impl TowerMap {
    pub fn final_complex(&self) -> &Complex {
        self.stages.last().map(|s| &s.quotient.complex).unwrap_or(&self.source)
    }

    fn stage_source(&self, i: usize) -> &Complex {
        if i == 0 {
            &self.source
        } else {
            &self.stages[i - 1].quotient.complex
        }
    }

    /// The image of a source vertex: interpolate then project, stage by
    /// stage. Every intermediate point decodes; a failure is a bug.
    pub fn apply(&self, x: Vertex) -> Result<FinSupportPoint> {
        let mut point = iota(&self.source, x)?;
        for (i, stage) in self.stages.iter().enumerate() {
            let interpolated = psi_w(&stage.weights, self.stage_source(i), &stage.quotient, &point)?;
            let projector = Projector::new(&stage.quotient.complex, &stage.carrier_distances);
            point = projector.project_point(&interpolated)?;
        }
        Ok(point)
    }

    /// Images of all source vertices, in parallel.
    pub fn apply_all(&self) -> Result<Vec<FinSupportPoint>> {
        (0..self.source.graph.vertex_count())
            .into_par_iter()
            .map(|x| self.apply(x))
            .collect()
    }

    /// Exhaustive vertex-pair Lipschitz verification against the stated
    /// bound, exact rational comparisons throughout.
    pub fn verify_lipschitz(&self, max_vertices: usize) -> Result<LipschitzReport> {
        let n = self.source.graph.vertex_count();
        if n > max_vertices {
            return Err(Error::BudgetExceeded { vertices: n, budget: max_vertices });
        }
        let images = self.apply_all()?;
        let mut observed = Rat::zero();
        let mut witness = None;
        for x in 0..n {
            for y in x + 1..n {
                let Some(d) = self.source.graph.distance(x, y).finite() else { continue };
                let img_d = l1_distance(&images[x], &images[y])
                    .expect_finite("image distance within a component")?;
                let ratio = img_d / Rat::from_integer(d.into());
                if ratio > observed {
                    observed = ratio;
                    witness = Some((x, y));
                }
            }
        }
        let ok = observed <= self.lipschitz_bound;
        Ok(LipschitzReport { observed, bound: self.lipschitz_bound.clone(), ok, witness })
    }

    /// Empirical control table: for every t up to the largest finite source
    /// distance, the minimum image distance over pairs at source distance
    /// >= t. Nondecreasing in t by construction; no pass/fail judgment.
    pub fn verify_cobornologous(&self) -> Result<CobornologousReport> {
        let n = self.source.graph.vertex_count();
        let images = self.apply_all()?;
        let mut pairs: Vec<(u64, Rat)> = Vec::new();
        let mut max_d = 0;
        for x in 0..n {
            for y in x + 1..n {
                let Some(d) = self.source.graph.distance(x, y).finite() else { continue };
                let img_d = l1_distance(&images[x], &images[y])
                    .expect_finite("image distance within a component")?;
                max_d = max_d.max(d);
                pairs.push((d, img_d));
            }
        }
        let mut control = Vec::new();
        for t in 1..=max_d {
            let min_img = pairs
                .iter()
                .filter(|(d, _)| *d >= t)
                .map(|(_, img)| img.clone())
                .min()
                .unwrap_or_else(Rat::zero);
            control.push((t, min_img));
        }
        Ok(CobornologousReport { control })
    }
}

/// Decodes the final image of a vertex; exposed for the CLI and checkers.
pub fn apply_and_decode(tm: &TowerMap, x: Vertex) -> Result<crate::cube::CubePoint> {
    let p = tm.apply(x)?;
    decode(tm.final_complex(), &p)
        .map_err(|e| Error::internal(format!("tower image failed to decode: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RawGraph;
    use crate::instance;
    use crate::rat::rat;

    fn p5() -> Complex {
        Complex::from_raw(&RawGraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap()
    }

    fn path(n: usize) -> Complex {
        Complex::from_raw(&RawGraph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect())).unwrap()
    }

    #[test]
    fn epsilon_one_needs_one_stage() {
        let tm = build_tower(p5(), &Rat::one()).unwrap();
        assert_eq!(tm.stages.len(), 1);
        assert_eq!(tm.lipschitz_bound, rat(1, 2));
    }

    #[test]
    fn strict_inequality_in_stage_count() {
        // constant 1/2 per stage; (1/2)^3 = 1/8 is not < 1/8, so four stages
        let tm = build_tower(path(9), &rat(1, 8)).unwrap();
        assert_eq!(tm.stages.len(), 4);
        // P9 collapses exactly at stage 4 (P2's only hyperplane touches base)
        assert!(tm.collapsed);
    }

    #[test]
    fn grid_constant_is_six_sevenths() {
        let tm = build_tower_stages(Complex::build(instance::grid(6, 6).unwrap()).unwrap(), 1, None)
            .unwrap();
        assert_eq!(tm.lipschitz_bound, rat(6, 7));
        assert_eq!(tm.stages[0].weights.ell(0), 6);
    }

    #[test]
    fn base_maps_to_final_base() {
        let tm = build_tower(p5(), &rat(1, 4)).unwrap();
        let img = tm.apply(0).unwrap();
        assert_eq!(img.support_len(), 0);
        let cube = apply_and_decode(&tm, 0).unwrap();
        let fc = tm.final_complex();
        assert_eq!(cube.vertex, fc.graph.base_of(cube_component(fc, cube.vertex)));
    }

    fn cube_component(cx: &Complex, v: Vertex) -> usize {
        cx.graph.component_of(v)
    }

    #[test]
    fn p5_single_stage_examples() {
        let tm = build_tower_stages(p5(), 1, None).unwrap();
        let stage = &tm.stages[0];
        // apply(2): halfway along the image of e2
        let img = tm.apply(2).unwrap();
        let e2 = stage.quotient.image_plane(1).unwrap();
        assert_eq!(img.support().collect::<Vec<_>>(), vec![(e2, &rat(1, 2))]);
        let cube = apply_and_decode(&tm, 2).unwrap();
        assert_eq!(cube.frac.len(), 1);
        // apply(3): the quotient vertex [2] = [3]
        let img = tm.apply(3).unwrap();
        assert_eq!(img, iota(&stage.quotient.complex, stage.quotient.vertex_map[3]).unwrap());
    }

    #[test]
    fn single_vertex_tower_is_trivial() {
        let cx = Complex::from_raw(&RawGraph::new(1, vec![])).unwrap();
        let tm = build_tower(cx, &rat(1, 2)).unwrap();
        assert!(tm.collapsed);
        let rep = tm.verify_lipschitz(100).unwrap();
        assert_eq!(rep.observed, Rat::zero());
        assert!(rep.ok);
    }

    #[test]
    fn p5_one_stage_lipschitz() {
        let tm = build_tower_stages(p5(), 1, None).unwrap();
        let rep = tm.verify_lipschitz(100).unwrap();
        assert!(rep.ok, "observed {} > bound {}", rep.observed, rep.bound);
        assert!(rep.observed <= rat(1, 2));
    }

    #[test]
    fn grid_5x5_one_stage_lipschitz() {
        let tm = build_tower_stages(Complex::build(instance::grid(5, 5).unwrap()).unwrap(), 1, None)
            .unwrap();
        let rep = tm.verify_lipschitz(100).unwrap();
        assert!(rep.ok);
        assert!(rep.observed <= rat(6, 7));
    }

    #[test]
    fn budget_is_enforced() {
        let tm = build_tower_stages(p5(), 1, None).unwrap();
        assert!(matches!(tm.verify_lipschitz(3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn intermediate_points_always_decode() {
        let tm = build_tower(Complex::build(instance::staircase(2).unwrap()).unwrap(), &rat(1, 3))
            .unwrap();
        for x in 0..tm.source.graph.vertex_count() {
            apply_and_decode(&tm, x).unwrap();
        }
    }

    #[test]
    fn collapsing_tower_sends_everything_to_base() {
        // one square: both hyperplanes touch the base corner, so stage one
        // collapses
        let cx = Complex::from_raw(&RawGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap();
        let tm = build_tower(cx, &rat(1, 100)).unwrap();
        assert!(tm.collapsed);
        assert_eq!(tm.stages.len(), 1);
        for x in 0..4 {
            assert_eq!(tm.apply(x).unwrap().support_len(), 0);
        }
        let rep = tm.verify_lipschitz(100).unwrap();
        assert!(rep.ok);
    }

    #[test]
    fn cobornologous_table_is_monotone() {
        let tm = build_tower_stages(path(9), 1, None).unwrap();
        let rep = tm.verify_cobornologous().unwrap();
        for w in rep.control.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
        // pairs at distance >= 2 keep image distance at least 1/2
        let at2 = rep.control.iter().find(|(t, _)| *t == 2).unwrap();
        assert!(at2.1 >= rat(1, 2));
    }

    #[test]
    fn grid_cobornologous_table_emitted() {
        let tm = build_tower_stages(Complex::build(instance::grid(6, 6).unwrap()).unwrap(), 1, None)
            .unwrap();
        let rep = tm.verify_cobornologous().unwrap();
        assert_eq!(rep.control.len(), 10); // max distance in 6x6 grid
        for w in rep.control.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn mixed_dimensions_use_per_component_ell() {
        let raw = instance::tree(2, 2)
            .unwrap()
            .to_raw()
            .disjoint_union(&instance::grid(3, 3).unwrap().to_raw());
        let cx = Complex::from_raw(&raw).unwrap();
        let tm = build_tower_stages(cx, 1, None).unwrap();
        let wf = &tm.stages[0].weights;
        assert_eq!(wf.ell(0), 1); // tree component
        assert_eq!(wf.ell(1), 6); // grid component
        assert_eq!(tm.stages[0].constant, rat(6, 7)); // worst component
    }
}
