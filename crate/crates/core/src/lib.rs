//! Discrete-time quantum walks on a one-dimensional lattice.
//!
//! The crate covers the standard Hadamard walk, a coin-retaining shift
//! operator that needs no coin toss between steps (in a reduced
//! coin ⊗ position form and an explicit coin ⊗ ancilla ⊗ position form),
//! two-particle walks on coin-entangled pairs, and a co-location-constrained
//! pair walk. A dense-matrix and path-enumeration oracle is shipped alongside
//! for differential testing.
//!
//! All state types are generic over the real scalar ([`Real`], implemented
//! for `f32` and `f64`). The aliases at the crate root fix the scalar to
//! `f64`, which is what the tolerances quoted in the tests assume.

mod error;
mod local;
mod scalar;

pub mod entangled;
pub mod lattice;
pub mod measure;
pub mod oracle;
pub mod walk;

pub use error::WalkError;
pub use lattice::{
    make_initial, normalize, Amplitudes, BellState, CoinState, InitialSpec, InitialState, Lattice,
    SingleParticle, WalkKind,
};
pub use measure::{coincidence_probability, runs_required, Particle};
pub use scalar::Real;
pub use walk::SignVariant;

/// Complex amplitude with `f64` parts.
pub type Amp = num_complex::Complex<f64>;
/// Complex amplitude with `f32` parts.
pub type Amp32 = num_complex::Complex<f32>;

pub type SingleState = lattice::SingleState<f64>;
pub type ExtendedState = lattice::ExtendedState<f64>;
pub type PairState = lattice::PairState<f64>;
pub type WalkConfig = lattice::WalkConfig<f64>;
pub type Distribution = measure::Distribution<f64>;
pub type JointDistribution = measure::JointDistribution<f64>;
pub type BecKick = entangled::BecKick<f64>;
pub type SingleRun = walk::SingleRun<f64>;
pub type PairRun = entangled::PairRun<f64>;

pub type SingleState32 = lattice::SingleState<f32>;
pub type PairState32 = lattice::PairState<f32>;
pub type Distribution32 = measure::Distribution<f32>;

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
