//! Hyperplanes as edge classes under the square-opposite relation, halfspaces
//! oriented by the component base, separation sets, and the four-way relation
//! table.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ComponentId, MedianGraph, Vertex};

pub type HyperplaneId = usize;

/// Above this many hyperplanes the quadratic relation table switches from a
/// dense matrix to a sparse map.
const DENSE_LIMIT: usize = 1 << 14;

/// Which halfspace of a hyperplane a vertex lies in. The base vertex of the
/// component always lies in `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// Mutual position of two hyperplanes. For distinct hyperplanes of one
/// component exactly one of Less/Greater/Opposite/Cross holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    /// h^- is strictly contained in k^-.
    Less,
    /// k^- is strictly contained in h^-.
    Greater,
    /// h^+ and k^+ are disjoint.
    Opposite,
    /// All four corner quadrants h^± ∩ k^± are nonempty.
    Cross,
    DifferentComponent,
}

/// Fixed-size bitset over vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> VertexSet {
        VertexSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, v: Vertex) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// One hyperplane: its edge class, oriented halfspaces, and vertex carrier.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub edges: Vec<(Vertex, Vertex)>,
    pub component: ComponentId,
    /// Halfspace containing the component base.
    pub minus: VertexSet,
    pub plus: VertexSet,
    /// h^(0): endpoints of the class edges.
    pub carrier: VertexSet,
}

/// All hyperplanes of a median graph, ordered by their smallest edge.
#[derive(Debug, Clone)]
pub struct HyperplaneSet {
    planes: Vec<Hyperplane>,
    by_component: Vec<Vec<HyperplaneId>>,
    /// Per vertex, the hyperplanes with an edge at that vertex, together with
    /// the neighbor across the edge. A vertex meets each class at most once.
    at_vertex: Vec<Vec<(HyperplaneId, Vertex)>>,
    dimension: usize,
    component_dimension: Vec<usize>,
}

impl HyperplaneSet {
    /// Union-find closure of the square-opposite relation, then halfspaces by
    /// removing each class and splitting the component in two.
    pub fn compute(g: &MedianGraph) -> Result<HyperplaneSet> {
        let n = g.vertex_count();
        let edges = g.edges();
        let edge_index: HashMap<(Vertex, Vertex), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let key = |u: Vertex, v: Vertex| if u < v { (u, v) } else { (v, u) };

        let mut uf = UnionFind::new(edges.len());
        // Squares: u, w at distance 2 with common neighbors a != b give the
        // 4-cycle u-a-w-b; opposite edge pairs are (u,a)~(b,w) and (u,b)~(a,w).
        for u in 0..n {
            let mut seen: Vec<Vertex> = Vec::new();
            for &a in g.neighbors(u) {
                for &w in g.neighbors(a) {
                    if w > u && g.distance(u, w).finite() == Some(2) && !seen.contains(&w) {
                        seen.push(w);
                        let common: Vec<Vertex> = g
                            .neighbors(u)
                            .iter()
                            .copied()
                            .filter(|x| g.neighbors(w).contains(x))
                            .collect();
                        for (i, &p) in common.iter().enumerate() {
                            for &q in &common[i + 1..] {
                                uf.union(edge_index[&key(u, p)], edge_index[&key(q, w)]);
                                uf.union(edge_index[&key(u, q)], edge_index[&key(p, w)]);
                            }
                        }
                    }
                }
            }
        }

        let mut classes: HashMap<usize, Vec<(Vertex, Vertex)>> = HashMap::new();
        for (i, &e) in edges.iter().enumerate() {
            classes.entry(uf.find(i)).or_default().push(e);
        }
        let mut class_list: Vec<Vec<(Vertex, Vertex)>> = classes.into_values().collect();
        for c in &mut class_list {
            c.sort_unstable();
        }
        class_list.sort_unstable();

        let mut planes = Vec::with_capacity(class_list.len());
        let mut by_component = vec![Vec::new(); g.component_count()];
        let mut at_vertex: Vec<Vec<(HyperplaneId, Vertex)>> = vec![Vec::new(); n];
        for (hid, class_edges) in class_list.into_iter().enumerate() {
            let comp = g.component_of(class_edges[0].0);
            let in_class: std::collections::HashSet<(Vertex, Vertex)> =
                class_edges.iter().copied().collect();

            // BFS from the base avoiding class edges.
            let base = g.base_of(comp);
            let mut minus = VertexSet::new(n);
            let mut queue = std::collections::VecDeque::from([base]);
            minus.insert(base);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if !in_class.contains(&key(v, w)) && !minus.contains(w) {
                        minus.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            let mut plus = VertexSet::new(n);
            let mut carrier = VertexSet::new(n);
            for &v in g.component_members(comp) {
                if !minus.contains(v) {
                    plus.insert(v);
                }
            }
            if plus.count() == 0 {
                return Err(Error::internal(format!(
                    "removing hyperplane {hid} does not disconnect its component"
                )));
            }
            // The plus side must be a single piece and every class edge must
            // cross; otherwise removal gave more than two components.
            let plus_start = plus.iter().next().unwrap();
            let mut reach = VertexSet::new(n);
            reach.insert(plus_start);
            let mut queue = std::collections::VecDeque::from([plus_start]);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if !in_class.contains(&key(v, w)) && !reach.contains(w) {
                        reach.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            if reach != plus {
                return Err(Error::internal(format!(
                    "removing hyperplane {hid} splits its component into more than two pieces"
                )));
            }
            for &(u, v) in &class_edges {
                if minus.contains(u) == minus.contains(v) {
                    return Err(Error::internal(format!(
                        "edge ({u},{v}) of hyperplane {hid} does not cross it"
                    )));
                }
                carrier.insert(u);
                carrier.insert(v);
                at_vertex[u].push((hid, v));
                at_vertex[v].push((hid, u));
            }

            by_component[comp].push(hid);
            planes.push(Hyperplane { edges: class_edges, component: comp, minus, plus, carrier });
        }

        let mut hs = HyperplaneSet {
            planes,
            by_component,
            at_vertex,
            dimension: 0,
            component_dimension: vec![0; g.component_count()],
        };
        hs.fill_dimensions(g);
        Ok(hs)
    }

    /// Top cube dimension: largest pairwise-crossing hyperplane set incident
    /// to a common vertex. Crossing is tested via the quadrant criterion.
    fn fill_dimensions(&mut self, g: &MedianGraph) {
        for v in 0..g.vertex_count() {
            let here: Vec<HyperplaneId> = self.at_vertex[v].iter().map(|&(h, _)| h).collect();
            let k = self.max_crossing_clique(&here);
            let c = g.component_of(v);
            self.component_dimension[c] = self.component_dimension[c].max(k);
            self.dimension = self.dimension.max(k);
        }
    }

    fn max_crossing_clique(&self, ids: &[HyperplaneId]) -> usize {
        fn grow(hs: &HyperplaneSet, chosen: &mut Vec<HyperplaneId>, rest: &[HyperplaneId], best: &mut usize) {
            *best = (*best).max(chosen.len());
            for (i, &h) in rest.iter().enumerate() {
                if chosen.len() + (rest.len() - i) <= *best {
                    break;
                }
                if chosen.iter().all(|&k| hs.crosses(k, h)) {
                    chosen.push(h);
                    grow(hs, chosen, &rest[i + 1..], best);
                    chosen.pop();
                }
            }
        }
        let mut best = 0;
        grow(self, &mut Vec::new(), ids, &mut best);
        best
    }

    fn crosses(&self, h: HyperplaneId, k: HyperplaneId) -> bool {
        let (a, b) = (&self.planes[h], &self.planes[k]);
        a.component == b.component
            && a.minus.intersects(&b.plus)
            && a.plus.intersects(&b.minus)
            && a.plus.intersects(&b.plus)
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn plane(&self, h: HyperplaneId) -> &Hyperplane {
        &self.planes[h]
    }

    pub fn check_id(&self, h: HyperplaneId) -> Result<()> {
        if h < self.planes.len() {
            Ok(())
        } else {
            Err(Error::InvalidHyperplane(h))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (HyperplaneId, &Hyperplane)> {
        self.planes.iter().enumerate()
    }

    pub fn in_component(&self, c: ComponentId) -> &[HyperplaneId] {
        &self.by_component[c]
    }

    /// Hyperplanes with an edge at v, with the neighbor across each.
    pub fn at_vertex(&self, v: Vertex) -> &[(HyperplaneId, Vertex)] {
        &self.at_vertex[v]
    }

    /// The neighbor of v across h, when v carries an edge of h.
    pub fn cross_neighbor(&self, v: Vertex, h: HyperplaneId) -> Option<Vertex> {
        self.at_vertex[v].iter().find(|&&(k, _)| k == h).map(|&(_, w)| w)
    }

    pub fn side(&self, h: HyperplaneId, v: Vertex) -> Side {
        if self.planes[h].minus.contains(v) {
            Side::Minus
        } else {
            Side::Plus
        }
    }

    /// H(x, y): hyperplanes separating x and y, ascending by id.
    pub fn separating(&self, g: &MedianGraph, x: Vertex, y: Vertex) -> Result<Vec<HyperplaneId>> {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        let c = g.component_of(x);
        if g.component_of(y) != c {
            return Err(Error::DifferentComponents);
        }
        Ok(self.by_component[c]
            .iter()
            .copied()
            .filter(|&h| self.planes[h].minus.contains(x) != self.planes[h].minus.contains(y))
            .collect())
    }

    /// Top cube dimension over all components; 0 for edgeless graphs.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn component_dimension(&self, c: ComponentId) -> usize {
        self.component_dimension[c]
    }
}

enum RelStore {
    Dense(Vec<Relation>),
    Sparse(HashMap<(HyperplaneId, HyperplaneId), Relation>),
}

impl std::fmt::Debug for RelStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelStore::Dense(_) => f.write_str("RelStore::Dense"),
            RelStore::Sparse(_) => f.write_str("RelStore::Sparse"),
        }
    }
}

impl Clone for RelStore {
    fn clone(&self) -> Self {
        match self {
            RelStore::Dense(v) => RelStore::Dense(v.clone()),
            RelStore::Sparse(m) => RelStore::Sparse(m.clone()),
        }
    }
}

/// Pairwise classification of all hyperplanes, plus the derived below-lists
/// and predecessor lists used throughout the coloring and weight machinery.
#[derive(Debug, Clone)]
pub struct RelationTable {
    n: usize,
    store: RelStore,
    /// Per hyperplane h, the k with k < h, ascending.
    below: Vec<Vec<HyperplaneId>>,
    /// Per hyperplane h, its predecessors: k < h with nothing strictly between.
    predecessors: Vec<Vec<HyperplaneId>>,
}

impl RelationTable {
    pub fn compute(g: &MedianGraph, hs: &HyperplaneSet) -> RelationTable {
        let n = hs.len();
        let mut store = if n <= DENSE_LIMIT {
            RelStore::Dense(vec![Relation::DifferentComponent; n * n])
        } else {
            RelStore::Sparse(HashMap::new())
        };
        let set = |store: &mut RelStore, h: usize, k: usize, r: Relation| match store {
            RelStore::Dense(v) => v[h * n + k] = r,
            RelStore::Sparse(m) => {
                if r != Relation::DifferentComponent {
                    m.insert((h, k), r);
                }
            }
        };
        for c in 0..g.component_count() {
            let ids = hs.in_component(c);
            for (i, &h) in ids.iter().enumerate() {
                set(&mut store, h, h, Relation::Equal);
                for &k in &ids[i + 1..] {
                    let r = classify(hs.plane(h), hs.plane(k));
                    set(&mut store, h, k, r);
                    let rt = match r {
                        Relation::Less => Relation::Greater,
                        Relation::Greater => Relation::Less,
                        other => other,
                    };
                    set(&mut store, k, h, rt);
                }
            }
        }
        let mut table = RelationTable { n, store, below: vec![Vec::new(); n], predecessors: vec![Vec::new(); n] };
        for h in 0..n {
            table.below[h] =
                (0..n).filter(|&k| table.relation(k, h) == Relation::Less).collect();
        }
        for h in 0..n {
            table.predecessors[h] = table.below[h]
                .iter()
                .copied()
                .filter(|&k| !table.below[h].iter().any(|&j| table.relation(k, j) == Relation::Less))
                .collect();
        }
        table
    }

    /// The relation of h to k: Less means h < k.
    pub fn relation(&self, h: HyperplaneId, k: HyperplaneId) -> Relation {
        match &self.store {
            RelStore::Dense(v) => v[h * self.n + k],
            RelStore::Sparse(m) => m.get(&(h, k)).copied().unwrap_or(Relation::DifferentComponent),
        }
    }

    /// All k with k < h, ascending by id.
    pub fn below(&self, h: HyperplaneId) -> &[HyperplaneId] {
        &self.below[h]
    }

    /// Predecessors of h (below with nothing strictly between).
    pub fn predecessors(&self, h: HyperplaneId) -> &[HyperplaneId] {
        &self.predecessors[h]
    }

    /// d(x0, h^(0)) equals the number of hyperplanes strictly below h.
    pub fn base_distance(&self, h: HyperplaneId) -> usize {
        self.below[h].len()
    }
}

/// Quadrant classification of distinct same-component hyperplanes. The minus
/// sides both contain the base, so h^- ∩ k^- is never empty and exactly one
/// of the other three quadrants can vanish.
fn classify(a: &Hyperplane, b: &Hyperplane) -> Relation {
    let minus_plus = a.minus.intersects(&b.plus);
    let plus_minus = a.plus.intersects(&b.minus);
    let plus_plus = a.plus.intersects(&b.plus);
    match (minus_plus, plus_minus, plus_plus) {
        (true, true, true) => Relation::Cross,
        (false, true, true) => Relation::Less,
        (true, false, true) => Relation::Greater,
        (true, true, false) => Relation::Opposite,
        _ => unreachable!("two quadrants vanished for distinct hyperplanes"),
    }
}
