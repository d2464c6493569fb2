//! Detecting zero quantum capacity through forbidden transformations.
//!
//! The crate represents finite-dimensional quantum channels and runs the two
//! known incapacity certificates against them:
//!
//! * time reversal: a channel whose Choi matrix stays positive under partial
//!   transposition (PPT) cannot transmit quantum information, because any code
//!   for it would physically implement the transpose map;
//! * cloning: an antidegradable channel admits a symmetric extension, and a
//!   code for it would yield a cloning machine.
//!
//! Modules:
//!
//! * [`opalg`]: dense complex matrices, partial trace/transpose, Hermitian
//!   eigensolver, seeded random generators.
//! * [`channel`]: Kraus/Choi/superoperator representations, Stinespring
//!   dilation, complementary and conjugate channels.
//! * [`forbidden`]: transpose certificates, tensor stability and the
//!   classifier for linear maps commuting with all channels.
//! * [`antideg`]: antidegradability feasibility (Dykstra projections),
//!   symmetric extensions and the cloning map.
//! * [`locc`]: Heisenberg-Weyl operators, teleportation through a Choi matrix
//!   and the transpose-extraction recipe for distillation protocols.
//! * [`cli`]: the channel zoo, JSON formats and incapacity reports.

pub mod antideg;
pub mod channel;
pub mod cli;
pub mod error;
pub mod forbidden;
pub mod locc;
pub mod opalg;

pub use channel::{Channel, ChoiMatrix, SuperOperator};
pub use error::{Error, Result};
pub use opalg::{CMatrix, DensityMatrix, DimPair, Subsystem, Tolerances};
