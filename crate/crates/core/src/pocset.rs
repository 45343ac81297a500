//! Sageev-Roller duality at finite scale: quotients of a median graph by a
//! hyperplane subset, consistent orientations (ultrafilters) of a finite
//! halfspace system, the dual median graph, and gates onto convex sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ComponentId, MedianGraph, RawGraph, Vertex};
use crate::hyperplane::{HyperplaneId, Relation, Side};
use crate::Complex;

/// A quotient X_K of a median graph by a hyperplane subset K, rebuilt and
/// re-validated as a full complex.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub complex: Complex,
    /// Original vertex -> quotient vertex (class id).
    pub vertex_map: Vec<Vertex>,
    /// Original component -> quotient component.
    pub component_map: Vec<ComponentId>,
    /// The quotiented subset K, sorted.
    pub k_set: Vec<HyperplaneId>,
    /// Parallel to `k_set`: the image hyperplane in the quotient. This is the
    /// duality bijection K -> H(X_K).
    pub plane_map: Vec<HyperplaneId>,
}

impl QuotientResult {
    /// Image of a source hyperplane in K, if it lies in K.
    pub fn image_plane(&self, k: HyperplaneId) -> Option<HyperplaneId> {
        self.k_set.binary_search(&k).ok().map(|i| self.plane_map[i])
    }
}

/// Quotients `cx` by the hyperplanes in `k_set`. Vertices are identified when
/// no K-hyperplane separates them; an edge survives exactly when its class is
/// in K. K = ∅ collapses each component to a point.
pub fn quotient(cx: &Complex, k_set: &[HyperplaneId]) -> Result<QuotientResult> {
    let g = &cx.graph;
    let hs = &cx.hyperplanes;
    let mut k_set: Vec<HyperplaneId> = k_set.to_vec();
    k_set.sort_unstable();
    k_set.dedup();
    for &k in &k_set {
        hs.check_id(k)?;
    }

    // Class of a vertex: its side pattern over K, within its component.
    // Class ids are assigned by first appearance in vertex order, so the
    // quotient is canonical.
    let mut class_of: Vec<usize> = Vec::with_capacity(g.vertex_count());
    let mut ids: HashMap<(ComponentId, Vec<bool>), usize> = HashMap::new();
    for v in 0..g.vertex_count() {
        let key: Vec<bool> = k_set.iter().map(|&k| hs.side(k, v) == Side::Plus).collect();
        let next = ids.len();
        let id = *ids.entry((g.component_of(v), key)).or_insert(next);
        class_of.push(id);
    }
    let class_count = ids.len();

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut edge_class: HashMap<(Vertex, Vertex), HyperplaneId> = HashMap::new();
    for (h, plane) in hs.iter() {
        if k_set.binary_search(&h).is_err() {
            continue;
        }
        for &(u, v) in &plane.edges {
            let (a, b) = (class_of[u], class_of[v]);
            let e = if a < b { (a, b) } else { (b, a) };
            edges.push(e);
            edge_class.insert(e, h);
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut raw = RawGraph::new(class_count, edges);
    for c in 0..g.component_count() {
        raw.base.insert(usize::MAX, 0); // placeholder replaced below
        raw.base.remove(&usize::MAX);
        let _ = c;
    }
    // Base of each quotient component is the image of the source base. The
    // component index of that image is only known after validation, so
    // validate once to learn components, then revalidate with overrides.
    let probe = MedianGraph::validate(&raw)?;
    for c in 0..g.component_count() {
        let img = class_of[g.base_of(c)];
        raw.base.insert(probe.component_of(img), img);
    }
    let qg = MedianGraph::validate(&raw)?;
    let component_map: Vec<ComponentId> =
        (0..g.component_count()).map(|c| qg.component_of(class_of[g.base_of(c)])).collect();
    let complex = Complex::build(qg)?;

    // Duality bijection K -> H(X_K) via image edges.
    let mut plane_map = Vec::with_capacity(k_set.len());
    let mut hit = vec![false; complex.hyperplanes.len()];
    for &k in &k_set {
        let &(u, v) = &hs.plane(k).edges[0];
        let (a, b) = (class_of[u], class_of[v]);
        let e = if a < b { (a, b) } else { (b, a) };
        let img = complex
            .hyperplanes
            .iter()
            .find(|(_, p)| p.edges.binary_search(&e).is_ok())
            .map(|(id, _)| id)
            .ok_or_else(|| Error::internal("image edge lost its hyperplane"))?;
        plane_map.push(img);
        hit[img] = true;
        debug_assert_eq!(edge_class.get(&e), Some(&k));
    }
    if hit.iter().any(|&b| !b) || plane_map.len() != complex.hyperplanes.len() {
        return Err(Error::internal("quotient duality map is not a bijection"));
    }

    Ok(QuotientResult { complex, vertex_map: class_of, component_map, k_set, plane_map })
}

/// A consistent orientation of a finite halfspace system: one side per
/// hyperplane, pairwise intersecting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ultrafilter {
    /// Indexed by position in the owning `Pocset`. `true` means the plus side.
    pub plus: Vec<bool>,
}

/// An abstract finite halfspace system: just the pairwise relations, in the
/// based orientation (all minus sides share the base).
#[derive(Debug, Clone)]
pub struct Pocset {
    n: usize,
    rel: Vec<Relation>,
}

impl Pocset {
    /// Builds a pocset from an explicit relation table. The table must be a
    /// valid based system: Equal on the diagonal, Less/Greater mutually
    /// transposed, Opposite and Cross symmetric, `<` transitive, and Opposite
    /// upward-closed under `<` in both arguments.
    pub fn new(n: usize, rel: Vec<Relation>) -> Result<Pocset> {
        if rel.len() != n * n {
            return Err(Error::InvalidParams("relation table has wrong size".into()));
        }
        let p = Pocset { n, rel };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        for i in 0..self.n {
            if self.relation(i, i) != Relation::Equal {
                return bad(format!("diagonal entry {i} is not Equal"));
            }
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let (r, rt) = (self.relation(i, j), self.relation(j, i));
                let expected = match r {
                    Relation::Less => Relation::Greater,
                    Relation::Greater => Relation::Less,
                    other => other,
                };
                if rt != expected {
                    return bad(format!("entries ({i},{j}) and ({j},{i}) disagree"));
                }
                if matches!(r, Relation::Equal) {
                    return bad(format!("off-diagonal Equal at ({i},{j})"));
                }
                for k in 0..self.n {
                    if r == Relation::Less && self.relation(j, k) == Relation::Less
                        && self.relation(i, k) != Relation::Less
                    {
                        return bad(format!("< is not transitive at ({i},{j},{k})"));
                    }
                    // op(i,j) and i<k force op(k,j)
                    if r == Relation::Opposite
                        && self.relation(i, k) == Relation::Less
                        && self.relation(k, j) != Relation::Opposite
                    {
                        return bad(format!("opposite is not upward-closed at ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The halfspace system of one component of a complex; returns the pocset
    /// and the global hyperplane id at each position.
    pub fn from_component(cx: &Complex, c: ComponentId) -> (Pocset, Vec<HyperplaneId>) {
        let ids = cx.hyperplanes.in_component(c).to_vec();
        let n = ids.len();
        let mut rel = vec![Relation::Equal; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = cx.relations.relation(ids[i], ids[j]);
            }
        }
        (Pocset { n, rel }, ids)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        self.rel[i * self.n + j]
    }

    /// A side pair is forbidden exactly when the corresponding quadrant is
    /// empty: (−,+) under Less, (+,−) under Greater, (+,+) under Opposite.
    fn compatible(&self, i: usize, i_plus: bool, j: usize, j_plus: bool) -> bool {
        match self.relation(i, j) {
            Relation::Less => !(!i_plus && j_plus),
            Relation::Greater => !(i_plus && !j_plus),
            Relation::Opposite => !(i_plus && j_plus),
            Relation::Cross | Relation::Equal | Relation::DifferentComponent => true,
        }
    }

    /// All consistent orientations, by backtracking with forward checking.
    /// Hyperplanes are assigned in ascending #{k : k < h} (distance from the
    /// base to the carrier), which prunes nested constraints early. The
    /// result is sorted canonically.
    pub fn enumerate_ultrafilters(&self) -> Vec<Ultrafilter> {
        let mut order: Vec<usize> = (0..self.n).collect();
        let depth: Vec<usize> = (0..self.n)
            .map(|i| (0..self.n).filter(|&k| self.relation(k, i) == Relation::Less).count())
            .collect();
        order.sort_by_key(|&i| (depth[i], i));

        let mut out = Vec::new();
        let mut sides = vec![false; self.n];
        self.backtrack(&order, 0, &mut sides, &mut out);
        out.sort();
        out
    }

    fn backtrack(&self, order: &[usize], pos: usize, sides: &mut Vec<bool>, out: &mut Vec<Ultrafilter>) {
        if pos == order.len() {
            out.push(Ultrafilter { plus: sides.clone() });
            return;
        }
        let i = order[pos];
        'sides: for s in [false, true] {
            for &j in &order[..pos] {
                if !self.compatible(i, s, j, sides[j]) {
                    continue 'sides;
                }
            }
            // forward check: every unassigned hyperplane keeps a legal side
            for &k in &order[pos + 1..] {
                let ok = [false, true].into_iter().any(|t| {
                    self.compatible(i, s, k, t)
                        && order[..pos].iter().all(|&j| self.compatible(k, t, j, sides[j]))
                });
                if !ok {
                    continue 'sides;
                }
            }
            sides[i] = s;
            self.backtrack(order, pos + 1, sides, out);
        }
        sides[order[pos]] = false;
    }

    /// The dual graph: one vertex per ultrafilter, edges between orientations
    /// differing on exactly one hyperplane.
    pub fn dual_graph(&self) -> (RawGraph, Vec<Ultrafilter>) {
        let ufs = self.enumerate_ultrafilters();
        let mut edges = Vec::new();
        for (a, ua) in ufs.iter().enumerate() {
            for (b, ub) in ufs.iter().enumerate().skip(a + 1) {
                let diff = ua.plus.iter().zip(&ub.plus).filter(|(x, y)| x != y).count();
                if diff == 1 {
                    edges.push((a, b));
                }
            }
        }
        (RawGraph::new(ufs.len(), edges), ufs)
    }
}

/// All consistent orientations of one component's halfspace system.
pub fn enumerate_ultrafilters(cx: &Complex, c: ComponentId) -> Vec<Ultrafilter> {
    Pocset::from_component(cx, c).0.enumerate_ultrafilters()
}

/// The gate of `o` in a convex vertex set: the unique member of the set
/// nearest to `o`. Sides are assigned by the three-case rule: the side
/// containing the whole set when one exists, otherwise the side of `o`.
pub fn gate(cx: &Complex, o: Vertex, set: &[Vertex]) -> Result<Vertex> {
    let g = &cx.graph;
    let hs = &cx.hyperplanes;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    g.check_vertex(o)?;
    let c = g.component_of(o);
    if set.iter().any(|&v| v >= g.vertex_count() || g.component_of(v) != c) {
        return Err(Error::DifferentComponents);
    }
    if !g.is_convex(set)? {
        return Err(Error::NotConvex);
    }

    let target = |h: HyperplaneId| {
        let plane = hs.plane(h);
        if set.iter().all(|&v| plane.plus.contains(v)) {
            Side::Plus
        } else if set.iter().all(|&v| plane.minus.contains(v)) {
            Side::Minus
        } else {
            hs.side(h, o)
        }
    };
    let v = vertex_with_sides(cx, c, &target)
        .ok_or_else(|| Error::internal("gate side vector matches no vertex"))?;

    debug_assert!(set.contains(&v));
    debug_assert_eq!(
        g.dist_in_component(o, v).unwrap(),
        set.iter().map(|&w| g.dist_in_component(o, w).unwrap()).min().unwrap(),
        "gate must minimize distance to the set"
    );
    Ok(v)
}

/// Finds the vertex of component `c` whose side vector matches `target`, by
/// walking from the base across one disagreeing hyperplane at a time.
pub(crate) fn vertex_with_sides(
    cx: &Complex,
    c: ComponentId,
    target: &dyn Fn(HyperplaneId) -> Side,
) -> Option<Vertex> {
    let g = &cx.graph;
    let hs = &cx.hyperplanes;
    let mut v = g.base_of(c);
    loop {
        let mut moved = false;
        let mut done = true;
        for &h in hs.in_component(c) {
            if hs.side(h, v) != target(h) {
                done = false;
                if let Some(w) = hs.cross_neighbor(v, h) {
                    v = w;
                    moved = true;
                    break;
                }
            }
        }
        if done {
            return Some(v);
        }
        if !moved {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RawGraph;
    use crate::instance;

    fn square() -> Complex {
        Complex::from_raw(&RawGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap()
    }

    fn p5() -> Complex {
        Complex::from_raw(&RawGraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)])).unwrap()
    }

    #[test]
    fn quotient_by_all_is_isomorphic() {
        let cx = p5();
        let all: Vec<_> = (0..cx.hyperplanes.len()).collect();
        let q = quotient(&cx, &all).unwrap();
        assert_eq!(q.complex.graph.vertex_count(), 5);
        assert_eq!(q.complex.graph.edges().len(), 4);
        // classes are singletons
        let mut seen = q.vertex_map.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn quotient_by_nothing_is_a_point_per_component() {
        let raw = RawGraph::new(5, vec![(0, 1), (1, 2), (3, 4)]);
        let cx = Complex::from_raw(&raw).unwrap();
        let q = quotient(&cx, &[]).unwrap();
        assert_eq!(q.complex.graph.vertex_count(), 2);
        assert!(q.complex.graph.edges().is_empty());
    }

    #[test]
    fn quotient_p5_by_two_edges() {
        let cx = p5();
        // hyperplane of edge (1,2) and of edge (3,4): brute-force class check
        let find = |e: (Vertex, Vertex)| {
            cx.hyperplanes.iter().find(|(_, p)| p.edges.contains(&e)).unwrap().0
        };
        let q = quotient(&cx, &[find((1, 2)), find((3, 4))]).unwrap();
        assert_eq!(q.complex.graph.vertex_count(), 3);
        assert_eq!(q.complex.graph.edges().len(), 2);
        assert_eq!(q.vertex_map[0], q.vertex_map[1]);
        assert_eq!(q.vertex_map[2], q.vertex_map[3]);
        assert_ne!(q.vertex_map[1], q.vertex_map[2]);
        assert_ne!(q.vertex_map[3], q.vertex_map[4]);
    }

    #[test]
    fn quotient_distance_formula() {
        let cx = Complex::build(instance::grid(4, 3).unwrap()).unwrap();
        let k: Vec<_> = (0..cx.hyperplanes.len()).step_by(2).collect();
        let q = quotient(&cx, &k).unwrap();
        let g = &cx.graph;
        for v in 0..g.vertex_count() {
            for w in 0..g.vertex_count() {
                let expected = k
                    .iter()
                    .filter(|&&h| cx.hyperplanes.side(h, v) != cx.hyperplanes.side(h, w))
                    .count() as u64;
                let got = q
                    .complex
                    .graph
                    .dist_in_component(q.vertex_map[v], q.vertex_map[w])
                    .unwrap();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn quotient_preserves_relations_on_k() {
        let cx = Complex::build(instance::staircase(3).unwrap()).unwrap();
        let k: Vec<_> = (0..cx.hyperplanes.len()).filter(|h| h % 3 != 1).collect();
        let q = quotient(&cx, &k).unwrap();
        for (i, &a) in q.k_set.iter().enumerate() {
            for (j, &b) in q.k_set.iter().enumerate() {
                assert_eq!(
                    cx.relations.relation(a, b),
                    q.complex.relations.relation(q.plane_map[i], q.plane_map[j]),
                );
            }
        }
    }

    #[test]
    fn square_has_four_ultrafilters() {
        let cx = square();
        let ufs = enumerate_ultrafilters(&cx, 0);
        assert_eq!(ufs.len(), 4); // two crossing hyperplanes forbid nothing
    }

    #[test]
    fn nested_pair_has_three_ultrafilters() {
        let cx = Complex::from_raw(&RawGraph::new(3, vec![(0, 1), (1, 2)])).unwrap();
        let ufs = enumerate_ultrafilters(&cx, 0);
        assert_eq!(ufs.len(), 3); // (plus at e1, minus at e2) is forbidden
    }

    #[test]
    fn tripod_has_four_ultrafilters() {
        let cx = Complex::from_raw(&RawGraph::new(4, vec![(0, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!(enumerate_ultrafilters(&cx, 0).len(), 4);
    }

    #[test]
    fn dual_graph_reconstructs_component() {
        for g in [
            instance::grid(3, 3).unwrap(),
            instance::tree(3, 2).unwrap(),
            instance::staircase(2).unwrap(),
        ] {
            let cx = Complex::build(g).unwrap();
            let (pocset, ids) = Pocset::from_component(&cx, 0);
            let ufs = pocset.enumerate_ultrafilters();
            let members = cx.graph.component_members(0);
            assert_eq!(ufs.len(), members.len());
            // canonical bijection: ultrafilter = side vector of a vertex
            let mut matched: HashMap<Vec<bool>, Vertex> = HashMap::new();
            for &v in members {
                let key: Vec<bool> =
                    ids.iter().map(|&h| cx.hyperplanes.side(h, v) == Side::Plus).collect();
                matched.insert(key, v);
            }
            let to_vertex: Vec<Vertex> =
                ufs.iter().map(|u| *matched.get(&u.plus).expect("principal ultrafilter")).collect();
            // adjacency transfers both ways
            for (a, ua) in ufs.iter().enumerate() {
                for (b, ub) in ufs.iter().enumerate().skip(a + 1) {
                    let diff = ua.plus.iter().zip(&ub.plus).filter(|(x, y)| x != y).count();
                    let adjacent =
                        cx.graph.distance(to_vertex[a], to_vertex[b]).finite() == Some(1);
                    assert_eq!(diff == 1, adjacent);
                }
            }
        }
    }

    #[test]
    fn dual_median_formula_matches_graph_median() {
        let cx = Complex::build(instance::grid(3, 2).unwrap()).unwrap();
        let (pocset, ids) = Pocset::from_component(&cx, 0);
        let ufs = pocset.enumerate_ultrafilters();
        let side_key = |v: Vertex| -> Vec<bool> {
            ids.iter().map(|&h| cx.hyperplanes.side(h, v) == Side::Plus).collect()
        };
        let members = cx.graph.component_members(0);
        for &x in members {
            for &y in members {
                for &z in members {
                    let m = cx.graph.median(x, y, z).unwrap();
                    // majority vote per hyperplane
                    let vote: Vec<bool> = ids
                        .iter()
                        .map(|&h| {
                            let n_plus = [x, y, z]
                                .iter()
                                .filter(|&&v| cx.hyperplanes.side(h, v) == Side::Plus)
                                .count();
                            n_plus >= 2
                        })
                        .collect();
                    assert_eq!(vote, side_key(m));
                    assert!(ufs.iter().any(|u| u.plus == vote));
                }
            }
        }
    }

    #[test]
    fn gate_examples() {
        let cx = square();
        // whole component: gate is o itself
        assert_eq!(gate(&cx, 2, &[0, 1, 2, 3]).unwrap(), 2);
        // singleton
        assert_eq!(gate(&cx, 0, &[2]).unwrap(), 2);
        // one edge of the square from the opposite corner: brute-force the
        // nearest member
        let got = gate(&cx, 0, &[1, 2]).unwrap();
        let best = [1, 2]
            .into_iter()
            .min_by_key(|&v| cx.graph.dist_in_component(0, v).unwrap())
            .unwrap();
        assert_eq!(got, best);
        // idempotence: o inside the set gates to itself
        assert_eq!(gate(&cx, 1, &[1, 2]).unwrap(), 1);
    }

    #[test]
    fn gate_rejects_nonconvex() {
        let cx = square();
        assert!(matches!(gate(&cx, 0, &[1, 3]), Err(Error::NotConvex)));
        assert!(matches!(gate(&cx, 0, &[]), Err(Error::EmptySet)));
    }

    #[test]
    fn pocset_consistency_check_rejects_garbage() {
        // 0 < 1 and 1 < 2 but 0 and 2 marked crossing
        let r = |v: Vec<Relation>| Pocset::new(3, v);
        use Relation::*;
        let bad = r(vec![
            Equal, Less, Cross, //
            Greater, Equal, Less, //
            Cross, Greater, Equal,
        ]);
        assert!(bad.is_err());
    }
}
