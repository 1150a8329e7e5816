//! Vertex-level Randić energy: spectral, series, combinatorial and integral
//! routes, closed-form bounds, and the named graph families used to check them.

pub mod bounds;
pub mod charpoly;
pub mod coulson;
pub mod energy;
pub mod error;
pub mod families;
pub mod graph;
pub mod spectral;

pub use bounds::{bounds_report, BoundKind, BoundsReport, HolderAudit, HolderStatus};
pub use charpoly::{Polynomial, QuasiOrder};
pub use coulson::{CoulsonEstimate, QuadratureConfig};
pub use energy::{vertex_energies, RandicSpectrum, Route, VertexEnergyVector};
pub use error::{Error, Result};
pub use families::{Family, VertexClass};
pub use graph::{parse_edge_list, Bipartition, Graph};
pub use spectral::{EigenDecomposition, SymmetricMatrix};
