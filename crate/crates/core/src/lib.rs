//! Finite median graphs and the machinery built on top of them: hyperplane
//! arrangements with halfspace orientations, Sageev-Roller duality (quotients,
//! ultrafilters, gates), controlled 2-colorings of hyperplanes, the l1 cube
//! space C(X) with its isometric embedding, the weighted interpolation map and
//! the order-based projection back onto the complex, quotient towers, and the
//! triangulation-star covers that witness asymptotic dimension at most D.
//!
//! All geometry is exact: coordinates are arbitrary-precision rationals and
//! every comparison in the library and its verifiers is an exact rational
//! comparison. Instances are finite ("desk scale"); everything is computed
//! per connected component with a distinguished base vertex per component.

pub mod coloring;
pub mod cover;
pub mod cube;
pub mod error;
pub mod graph;
pub mod hyperplane;
pub mod instance;
pub mod interp;
pub mod io;
pub mod pocset;
pub mod project;
pub mod rat;
pub mod sample;
pub mod tower;

pub use coloring::ColoringAssignment;
pub use cover::{build_cover, compute_delta, verify_certificate, CoverCertificate};
pub use cube::{decode, encode, iota, l1_distance, CubePoint, FinSupportPoint};
pub use error::{Error, Result};
pub use graph::{ExtDist, MedianGraph, RawGraph, Vertex};
pub use hyperplane::{HyperplaneId, HyperplaneSet, Relation, RelationTable};
pub use instance::InstanceSpec;
pub use interp::{psi_w, WeightFn};
pub use pocset::{enumerate_ultrafilters, gate, quotient, Pocset, QuotientResult, Ultrafilter};
pub use project::Projector;
pub use rat::{rat, rat_from_str, rat_to_string, ExtRat, Rat};
pub use tower::{build_tower, build_tower_stages, TowerMap, TowerStage};

/// A validated median graph together with its hyperplane arrangement and the
/// pairwise relation table. Most operations in the crate consume this bundle.
#[derive(Debug, Clone)]
pub struct Complex {
    pub graph: MedianGraph,
    pub hyperplanes: HyperplaneSet,
    pub relations: RelationTable,
}

impl Complex {
    /// Builds the hyperplane arrangement and relation table of a validated graph.
    pub fn build(graph: MedianGraph) -> Result<Complex> {
        let hyperplanes = HyperplaneSet::compute(&graph)?;
        let relations = RelationTable::compute(&graph, &hyperplanes);
        Ok(Complex { graph, hyperplanes, relations })
    }

    /// Validates a raw graph and builds the full bundle.
    pub fn from_raw(raw: &RawGraph) -> Result<Complex> {
        Complex::build(MedianGraph::validate(raw)?)
    }

    /// Top cube dimension over all components.
    pub fn dimension(&self) -> usize {
        self.hyperplanes.dimension()
    }
}
