//! Finger selection for selective-Rake ultra-wideband receivers.
//!
//! An impulse-radio receiver with `L` resolvable multipath components can
//! afford to combine only `M` of them. Which `M` it picks matters: under
//! multiple-access interference the best set is generally *not* the set of
//! individually strongest paths, because the optimum combiner can cancel
//! interference that several fingers see jointly.
//!
//! This crate models a synchronous multiuser impulse-radio link with random
//! time-hopping and polarity codes over signed-lognormal frequency-selective
//! fading, scores finger sets by the exact overall SINR of the
//! minimum-mean-square-error combiner, and compares three selectors:
//!
//! * **conventional** — take the `M` paths with the best single-path SINRs;
//! * **exhaustive** — evaluate all `C(L, M)` sets (the optimum, at a cost
//!   that explodes combinatorially);
//! * **genetic** — a small evolutionary search over finger sets that tracks
//!   the exhaustive optimum at a few hundred objective evaluations.
//!
//! The [`harness`] runs seeded, reproducible Monte Carlo sweeps over SNR or
//! finger count and aggregates per-selector SINR statistics; [`harness::emit`]
//! serializes them as CSV.

pub mod channel;
pub mod config;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod selectors;
pub mod signature;
pub mod sinr;

pub use config::SystemConfig;
pub use error::Error;
pub use harness::{run_realization, run_sweep, Algorithm, ExperimentSpec, Sweep, SweepResult};
pub use selectors::ga::{ga_select, GaOutcome, GaParams};
pub use selectors::{
    conventional_select, exhaustive_select, Selection, DEFAULT_ENUMERATION_CAP,
};
pub use signature::{build_signature, Signature};
pub use sinr::{linear_to_db, Assignment, Objective};
