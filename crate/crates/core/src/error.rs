use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: vertex ids are 1-based, got 0")]
    ZeroVertexId { line: usize },

    #[error("input contains no graph")]
    EmptyInput,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected ({components} components); Randić energy is defined for connected graphs")]
    Disconnected { components: usize },

    #[error("graph has a single vertex; at least two are required")]
    SingleVertex,

    #[error("vertex {vertex} has degree 0; the Randić matrix needs every degree >= 1")]
    DegenerateDegree { vertex: usize },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("vertices {i} and {j} are not adjacent")]
    NotAdjacent { i: usize, j: usize },

    #[error("graph has no edges")]
    NoEdges,

    #[error("matrix has dimension 0")]
    EmptyMatrix,

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("graph has {n} vertices; exhaustive enumeration is capped at {max}")]
    TooLarge { n: usize, max: usize },

    #[error("coefficient of x^{power} is {value:e}; the spectrum is not symmetric about 0")]
    OddCoefficient { power: usize, value: f64 },

    #[error("even coefficient b_{index} = {value:e} is negative")]
    NegativeEvenCoefficient { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::OddCoefficient { .. }
                | Error::NegativeEvenCoefficient { .. }
        )
    }
}
