//! # qdlab-core
//!
//! A numerical laboratory for qubit pure dephasing with correlated initial
//! qubit-environment states.
//!
//! Two exactly solvable models are provided:
//!
//! - [`model_a`]: a qubit dephased by an infinite bosonic environment with a
//!   super-ohmic spectral profile, starting from an entangled
//!   qubit-environment state controlled by a correlation parameter `lambda`.
//! - [`model_b`]: a qubit coupled to a single boson mode, with the
//!   environment component of the initial state a superposition of the
//!   ground state with either a coherent state or a number state.
//!
//! Both models reduce to a closed-form complex dephasing function `A(t)`
//! multiplying the initial qubit coherence; populations stay fixed.
//!
//! The [`distances`] module implements five distance measures between qubit
//! states (trace, Hilbert-Schmidt, Bures, Hellinger, Jensen-Shannon) in
//! closed Bloch form. Tracking `D[rho_1(t), rho_2(t)]` along the evolution
//! detects breakdown of distance contractivity induced by the initial
//! correlations: which measures can grow above their initial value depends
//! on the measure, the model, and the preparation.
//!
//! The [`lab`] module drives experiments: config parsing, time sweeps,
//! parameter scans, CSV emission and SVG plots.

pub mod distances;
pub mod lab;
pub mod model_a;
pub mod model_b;
pub mod numerics;
pub mod qstate;

pub use num_complex::Complex64;
