//! Coherent states and cat states on a Möbius strip.
//!
//! A point particle confined to a Möbius strip carries an angular variable
//! `φ` that closes only after a 4π turn. The coherent states of that system
//! live in the integer angular-momentum basis `|j⟩`, with amplitudes
//! `c_j = e^{(l′ − iφ)j} e^{−j²/2}` controlled by a single effective level
//! `l′(φ)` derived from the strip geometry. Every closed-form identity those
//! states satisfy (normalization, overlaps, 4π periodicity, exponential
//! uncertainty measures) reduces to the lattice Gaussian sum
//! `S(a, β) = Σ_{j∈ℤ} e^{−aj² + βj}`.
//!
//! The crate is organized around that reduction:
//!
//! - [`geometry`] embeds strip trajectories and computes `l′(φ)`;
//! - [`latticesum`] evaluates `S(a, β)` with certified truncation, in both
//!   the direct and the Poisson-resummed form;
//! - [`fock`] is the truncated angular-momentum engine (states, operators,
//!   moments) used as the first-principles reference;
//! - [`states`] builds coherent states and their two-branch superpositions;
//! - [`uncertainty`] implements the exponential uncertainty measures under
//!   two evaluation conventions;
//! - [`verify`] cross-checks closed forms against the engine and produces
//!   periodicity and discrepancy reports.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `mobius-cs-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod fock;
pub mod geometry;
pub mod latticesum;
pub mod states;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
pub use fock::{FockState, MomentSet};
pub use geometry::{RadialProfile, StripConfig, StripPoint};
pub use latticesum::{GaussSumResult, GaussSumSpec};
pub use states::{ChiRule, CsParams, ScsKind, ScsSpec, StateKind};
pub use uncertainty::{Convention, UncertaintyReport};
