use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a finitely supported point fails to decode to a cube point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotInImageReason {
    /// The 1-coordinates are not the separating set of base and any vertex.
    NoVertexForOnes,
    /// Two fractionally supported hyperplanes do not cross.
    FracNotCrossing,
    /// A fractional hyperplane has no edge at the decoded corner.
    NoCubeAtVertex,
}

impl std::fmt::Display for NotInImageReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NotInImageReason::NoVertexForOnes => "no_vertex_for_ones",
            NotInImageReason::FracNotCrossing => "frac_not_crossing",
            NotInImageReason::NoCubeAtVertex => "no_cube_at_vertex",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a median graph: triple ({},{},{}) has {median_count} medians", triple.0, triple.1, triple.2)]
    NotMedian { triple: (Vertex, Vertex, Vertex), median_count: usize },

    #[error("vertices lie in different components")]
    DifferentComponents,

    #[error("vertex set is empty")]
    EmptySet,

    #[error("vertex set is not convex")]
    NotConvex,

    #[error("points live over different components")]
    ComponentMismatch,

    #[error("hyperplanes {0} and {1} are not opposite")]
    NotOpposite(usize, usize),

    #[error("hyperplane {0} is not below hyperplane {1}")]
    NotLess(usize, usize),

    #[error("op-support is nonempty; project_op must run first")]
    OpSupportNonempty,

    #[error("point is not in the image of the embedding: {reason}")]
    NotInImage { reason: NotInImageReason },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("delta oracle supports dimension <= 3, got {0}")]
    DimensionTooLarge(usize),

    #[error("instance exceeds the verification budget ({vertices} vertices > {budget})")]
    BudgetExceeded { vertices: usize, budget: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("invalid vertex id {0}")]
    InvalidVertex(Vertex),

    #[error("invalid hyperplane id {0}")]
    InvalidHyperplane(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
}
