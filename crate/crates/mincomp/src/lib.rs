//! Exact integer-set algebra and decision procedures for minimal additive
//! complements.
//!
//! A set `C` of integers is an *additive complement* of `W` when `C + W = ℤ`,
//! and a *minimal* one when no proper subset of `C` still covers `ℤ`. This
//! crate decides, gathers evidence for, or certifies whether an infinite set
//! `W` admits a minimal additive complement:
//!
//! - [`setalg`] — a closed symbolic class of integer sets (finite parts,
//!   arithmetic rays and lines, power-interval families) with exact
//!   membership, enumeration, normalization, sumsets and positive
//!   complements over arbitrary-precision integers.
//! - [`complement`] — coverage, essentiality and removability predicates,
//!   greedy window complements and pruning to window-minimal form.
//! - [`criteria`] — gap-structure analysis, witness-sequence checking and
//!   the classification ladder.
//! - [`periodic`] — eventually periodic decomposition, exact modular
//!   necessity/sufficiency checks, the progression-tail recognizer and the
//!   absorber property.
//! - [`verify`] — independent re-checking of emitted certificates.
//!
//! All values are immutable and all operations are pure functions; everything
//! is safe to use concurrently without synchronization.

pub mod complement;
pub mod criteria;
pub mod docint;
pub mod error;
pub mod periodic;
pub mod reference;
pub mod sampling;
pub mod setalg;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use setalg::{ApComponent, IntSetExpr, Part, PowerIntervalFamily, Window};
pub use verdict::{Certificate, Status, Verdict};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
