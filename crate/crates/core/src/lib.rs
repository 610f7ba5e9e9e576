//! Two-qubit correlation analysis.
//!
//! The central object is a nonlinear classicality witness built from four
//! observable expectations ([`witness`]). It is checked against quantum
//! discord ([`measures`]), put in context with the partial-transpose and CHSH
//! criteria ([`entanglement`]), and read out through a simulated NMR gate
//! sequence ([`nmr`]).
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which every tolerance in the crate is tuned for.

// Negated comparisons are deliberate: they send NaN down the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod density;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod measures;
pub mod nmr;
pub mod operator;
pub mod optimize;
pub mod pauli;
pub mod sampling;
pub mod scalar;
pub mod statefile;
pub mod states;
pub mod witness;

pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use operator::{CMatrix, Subsystem};
pub use pauli::PauliDecomposition;
pub use scalar::Scalar;
pub use statefile::StateFile;
pub use witness::{ClassicalForm, DirectionPair, Verdict, WitnessMode};

pub type Matrix2 = operator::Mat2<f64>;
pub type Matrix4 = operator::Mat4<f64>;
pub type Matrix2F32 = operator::Mat2<f32>;
pub type Matrix4F32 = operator::Mat4<f32>;
pub type State = DensityMatrix<f64>;
pub type StateF32 = DensityMatrix<f32>;
pub type Decomposition = PauliDecomposition<f64>;
pub type Witness = witness::WitnessReport<f64>;
pub type Discord = measures::DiscordReport<f64>;
pub type Entanglement = entanglement::EntanglementReport<f64>;
pub type Protocol = nmr::ProtocolRun<f64>;
pub type Basis = states::BasisAngles<f64>;
