//! Finite graphs with a validated median structure.
//!
//! A graph is accepted only if every connected component satisfies the median
//! axiom: each vertex triple has exactly one vertex lying between every pair.
//! Multi-component graphs are first-class; every component carries a base
//! vertex (minimal id by default, overridable) that orients everything
//! downstream.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ComponentId = usize;

const UNREACHABLE: u32 = u32::MAX;

/// Graph distance extended with infinity across components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtDist {
    Finite(u64),
    Infinite,
}

impl ExtDist {
    pub fn finite(&self) -> Option<u64> {
        match self {
            ExtDist::Finite(d) => Some(*d),
            ExtDist::Infinite => None,
        }
    }
}

impl PartialOrd for ExtDist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(match (self, other) {
            (ExtDist::Infinite, ExtDist::Infinite) => std::cmp::Ordering::Equal,
            (ExtDist::Infinite, ExtDist::Finite(_)) => std::cmp::Ordering::Greater,
            (ExtDist::Finite(_), ExtDist::Infinite) => std::cmp::Ordering::Less,
            (ExtDist::Finite(a), ExtDist::Finite(b)) => a.cmp(b),
        })
    }
}

impl std::fmt::Display for ExtDist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtDist::Finite(d) => write!(f, "{d}"),
            ExtDist::Infinite => f.write_str("inf"),
        }
    }
}

/// An unvalidated graph: dense vertex ids 0..n-1, undirected edges, optional
/// per-component base overrides keyed by component index.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertex_count: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default)]
    pub base: BTreeMap<ComponentId, Vertex>,
}

impl RawGraph {
    pub fn new(vertex_count: usize, edges: Vec<(Vertex, Vertex)>) -> RawGraph {
        RawGraph { vertex_count, edges, base: BTreeMap::new() }
    }

    /// Disjoint union; the second graph's vertices are shifted past the first.
    pub fn disjoint_union(&self, other: &RawGraph) -> RawGraph {
        let off = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        RawGraph::new(self.vertex_count + other.vertex_count, edges)
    }
}

/// A finite graph that passed median validation, with precomputed components,
/// per-component bases, and the all-pairs distance matrix. Immutable.
#[derive(Debug, Clone)]
pub struct MedianGraph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    component: Vec<ComponentId>,
    members: Vec<Vec<Vertex>>,
    base: Vec<Vertex>,
    dist: Vec<u32>,
}

impl MedianGraph {
    /// Validates the median axiom on every component of `raw`.
    ///
    /// Distances are computed by BFS from every vertex, then every triple is
    /// checked for a unique median by exhausting candidates. On failure the
    /// offending triple and its median count are reported.
    pub fn validate(raw: &RawGraph) -> Result<MedianGraph> {
        let n = raw.vertex_count;
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(raw.edges.len());
        for &(u, v) in &raw.edges {
            if u >= n {
                return Err(Error::InvalidVertex(u));
            }
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("loop edge at vertex {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a, b));
        }
        edges.sort_unstable();
        edges.dedup();
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }

        // Components in order of minimal vertex id.
        let mut component = vec![usize::MAX; n];
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut queue = std::collections::VecDeque::from([start]);
            component[start] = c;
            let mut verts = vec![start];
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if component[w] == usize::MAX {
                        component[w] = c;
                        verts.push(w);
                        queue.push_back(w);
                    }
                }
            }
            verts.sort_unstable();
            members.push(verts);
        }

        let mut base: Vec<Vertex> = members.iter().map(|m| m[0]).collect();
        for (&c, &v) in &raw.base {
            if c >= members.len() {
                return Err(Error::InvalidParams(format!("base override for missing component {c}")));
            }
            if v >= n || component[v] != c {
                return Err(Error::InvalidParams(format!(
                    "base override {v} does not lie in component {c}"
                )));
            }
            base[c] = v;
        }

        // All-pairs BFS.
        let mut dist = vec![UNREACHABLE; n * n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = row[v];
                for &w in &adj[v] {
                    if row[w] == UNREACHABLE {
                        row[w] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
        }

        let g = MedianGraph { vertex_count: n, edges, adj, component, members, base, dist };

        // Median axiom, exhaustive per component.
        for verts in &g.members {
            let m = verts.len();
            for i in 0..m {
                for j in i..m {
                    for k in j..m {
                        let (x, y, z) = (verts[i], verts[j], verts[k]);
                        let count = g.median_count(x, y, z);
                        if count != 1 {
                            return Err(Error::NotMedian { triple: (x, y, z), median_count: count });
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    fn median_count(&self, x: Vertex, y: Vertex, z: Vertex) -> usize {
        let n = self.vertex_count;
        let (dxy, dxz, dyz) = (self.dist[x * n + y], self.dist[x * n + z], self.dist[y * n + z]);
        self.members[self.component[x]]
            .iter()
            .filter(|&&m| {
                self.dist[x * n + m] + self.dist[m * n + y] == dxy
                    && self.dist[x * n + m] + self.dist[m * n + z] == dxz
                    && self.dist[y * n + m] + self.dist[m * n + z] == dyz
            })
            .count()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The raw form of this graph, bases included.
    pub fn to_raw(&self) -> RawGraph {
        let base = (0..self.component_count()).map(|c| (c, self.base[c])).collect();
        RawGraph { vertex_count: self.vertex_count, edges: self.edges.clone(), base }
    }

    /// Undirected edges, each as (u, v) with u < v, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: Vertex) -> ComponentId {
        self.component[v]
    }

    /// Vertices of a component, ascending.
    pub fn component_members(&self, c: ComponentId) -> &[Vertex] {
        &self.members[c]
    }

    /// The base vertex x0 of a component.
    pub fn base_of(&self, c: ComponentId) -> Vertex {
        self.base[c]
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    pub fn distance(&self, x: Vertex, y: Vertex) -> ExtDist {
        let d = self.dist[x * self.vertex_count + y];
        if d == UNREACHABLE {
            ExtDist::Infinite
        } else {
            ExtDist::Finite(d as u64)
        }
    }

    /// Finite distance within one component; errors across components.
    pub fn dist_in_component(&self, x: Vertex, y: Vertex) -> Result<u64> {
        match self.distance(x, y) {
            ExtDist::Finite(d) => Ok(d),
            ExtDist::Infinite => Err(Error::DifferentComponents),
        }
    }

    /// The unique median of a same-component triple.
    pub fn median(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<Vertex> {
        if self.component[x] != self.component[y] || self.component[y] != self.component[z] {
            return Err(Error::DifferentComponents);
        }
        let n = self.vertex_count;
        let (dxy, dxz, dyz) = (self.dist[x * n + y], self.dist[x * n + z], self.dist[y * n + z]);
        for &m in &self.members[self.component[x]] {
            if self.dist[x * n + m] + self.dist[m * n + y] == dxy
                && self.dist[x * n + m] + self.dist[m * n + z] == dxz
                && self.dist[y * n + m] + self.dist[m * n + z] == dyz
            {
                return Ok(m);
            }
        }
        Err(Error::internal("validated graph lost its median"))
    }

    /// The metric interval I(x, y) = vertices on some geodesic from x to y.
    pub fn interval(&self, x: Vertex, y: Vertex) -> Result<Vec<Vertex>> {
        let n = self.vertex_count;
        if self.component[x] != self.component[y] {
            return Err(Error::DifferentComponents);
        }
        let dxy = self.dist[x * n + y];
        Ok(self.members[self.component[x]]
            .iter()
            .copied()
            .filter(|&v| self.dist[x * n + v] + self.dist[v * n + y] == dxy)
            .collect())
    }

    /// Convexity via interval closure: B is convex iff I(x, y) stays in B for
    /// all x, y in B. Equivalent to geodesic convexity, without enumerating
    /// geodesics.
    pub fn is_convex(&self, set: &[Vertex]) -> Result<bool> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for &v in set {
            self.check_vertex(v)?;
        }
        let c = self.component[set[0]];
        if set.iter().any(|&v| self.component[v] != c) {
            return Err(Error::DifferentComponents);
        }
        let mut in_set = vec![false; self.vertex_count];
        for &v in set {
            in_set[v] = true;
        }
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i..] {
                if self.interval(x, y)?.iter().any(|&v| !in_set[v]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
