use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "ground set of {n} vertices exceeds the 64-vertex cap; use the counting formulas instead"
    )]
    GroundTooLarge { n: usize },

    #[error("edge {edge} has {size} vertices, expected {k}")]
    NotUniform { edge: String, size: usize, k: usize },

    #[error("edge {edge} uses vertex {vertex} outside the ground set [1..{n}]")]
    VertexOutOfRange {
        edge: String,
        vertex: usize,
        n: usize,
    },

    #[error("avoid and require sets overlap")]
    OverlappingQuery,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("family is not intersecting")]
    NotIntersecting,

    #[error("family is not saturated")]
    NotSaturated,

    #[error("precondition not met: {0}")]
    NotApplicable(String),

    #[error("enumeration of {count} sets exceeds the budget of {budget}")]
    Budget { count: u128, budget: u128 },

    #[error("invalid family JSON: {0}")]
    Json(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
