//! Exact n-dimensional Kloosterman sums over small finite fields, computed
//! as cyclotomic integers, together with an exact determination of the
//! subfield of Q(zeta_p) each sum generates and a coset-based prediction of
//! that subfield from the point alone.
//!
//! Everything is integer-exact: field arithmetic runs in F_{p^r} under a
//! size cap, sums live in Z\[zeta_p\] with unbounded coefficients, and every
//! claim the crate makes is checkable by exhaustive replay.
//!
//! # Quick start
//!
//! ```
//! use klsum::classifier::{derive_parameters, resolve_distinctness,
//!     verify_against_ground_truth};
//! use klsum::finite_field::FieldSpec;
//! use klsum::kloosterman::kloosterman_sweep;
//!
//! let field = FieldSpec::new(5, 2)?;
//! let params = derive_parameters(5, 2, 1)?;
//! let table = kloosterman_sweep(&field, 1)?;
//! let resolution = resolve_distinctness(&params, Some(&table));
//! let report = verify_against_ground_truth(&field, &params, &table, &resolution)?;
//! assert!(report.summary.passed);
//! assert_eq!(report.summary.rational_predicted, 4);
//! # Ok::<(), klsum::Error>(())
//! ```
//!
//! # Examples
//!
//! One runnable example per capability; run with
//! `cargo run --release --example <name>`:
//!
//! - **`build_field`** - deterministic field construction, traces, discrete
//!   logs, Frobenius orbits
//! - **`cyclotomic_ring`** - exact arithmetic in Z\[zeta_p\], the Galois
//!   action, stabilizers and subfield labels
//! - **`kloosterman_values`** - direct evaluation vs the sweep, value tables
//! - **`classify_points`** - coset certificates and predicted subfields
//! - **`rational_points`** - finding every point with a rational sum
//! - **`verify_predictions`** - the full prediction-vs-ground-truth pipeline
//! - **`congruence_identities`** - the linear-congruence machinery behind
//!   the cosets, solved and cross-checked
//! - **`distinctness_bounds`** - advisory bounds vs the exhaustive
//!   distinctness check
//!
//! The same capabilities are scriptable through the `klsum` binary
//! (`sweep`, `classify`, `verify`, `bounds`, `distinctness`).

pub mod arith;
pub mod classifier;
pub mod cli;
pub mod congruence;
pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod kloosterman;
pub mod report;

pub use classifier::{Certificate, ClassificationRecord, Mode, Parameters};
pub use cyclotomic::{CycInt, SubfieldLabel};
pub use error::{Error, Result};
pub use finite_field::{FieldElement, FieldSpec};
pub use kloosterman::{KlTable, DEFAULT_TERM_CAP};
