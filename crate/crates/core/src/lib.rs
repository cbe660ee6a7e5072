//! Semiclassical analysis laboratory: Hamilton flows, Hamilton-Jacobi
//! phases, WKB amplitude hierarchies, oscillatory-integral propagators,
//! pseudodifferential quantization, dyadic frequency decompositions, and
//! grid Schrödinger solvers, with scripted experiments measuring
//! dispersive and Strichartz bounds for variable-coefficient operators
//! with growing electromagnetic potentials.

pub mod admissible;
pub mod assumptions;
pub mod error;
pub mod flow;
pub mod grid;
pub mod lp;
pub mod model;
pub mod num;
pub mod quantize;
pub mod region;

pub use admissible::{enumerate_admissible, AdmissiblePair, Exponent};
pub use error::{Result, SemiError};
pub use flow::{integrate_flow, flow_jacobian, invert_position_map, nontrapping_scan, FlowResult};
pub use grid::{forward_dft, inverse_dft, gaussian_packet, Grid, GridState};
pub use lp::{build_dyadic_partitions, build_psi_epsilon, lp_apply, DyadicLP, FourAdicPartition, PsiEpsilon};
pub use model::{ModelKind, SymbolChoice, SymbolModel, TruncationParams};
pub use quantize::{apply_pdo, apply_pdo_adjoint, apply_multiplier, operator_norm};
pub use region::{classify_region, RegionKind, RegionSpec};
