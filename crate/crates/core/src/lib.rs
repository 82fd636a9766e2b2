//! Plancherel-type random partitions and the determinantal point processes
//! they induce.
//!
//! The crate covers the combinatorial side (partitions, particle encodings,
//! exact dimension formulas, measures), the discrete orthogonal polynomials
//! behind the Charlier and Krawtchouk ensembles, their correlation kernels
//! (including the discrete Hermite and discrete sine limit kernels), exact
//! determinantal-process machinery, and numerical checks of the edge and
//! bulk limit regimes together with the associated limit-shape curves.
//!
//! Data-parallel loops (parameter sweeps, Monte Carlo batches, window
//! enumerations) run on rayon when the `parallel` feature is enabled and
//! fall back to plain iterators otherwise; see [`exec::Strategy`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dpp;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod limits;
pub mod linalg;
pub mod orthopoly;
pub mod partitions;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use kernels::{GroundSet, HermiteForm, Kernel, KernelFamily};
pub use orthopoly::{JacobiFamily, JacobiOperator};
pub use partitions::{MeasureSpec, Param, ParticleConfiguration, Partition};
