//! Finite order structures and their representations by families of partial
//! functions.
//!
//! The crate covers binary relations on finite labelled sets
//! ([`relation`], [`classify`], [`width`]), exact partial functions
//! ([`partial_fn`]), checking ([`verify`]) and building ([`build`])
//! multi-utility, Richter-Peleg and Scott-Suppes style representations,
//! finite topologies ([`topology`], [`harness`]), and happened-before posets
//! of distributed traces ([`trace`]).

mod bits;
pub mod build;
pub mod classify;
pub mod error;
pub mod harness;
pub mod json;
pub mod partial_fn;
pub mod random;
pub mod rational;
pub mod relation;
pub mod topology;
pub mod trace;
pub mod verify;
pub mod width;

pub use build::{BuildMode, BuildReport};
pub use classify::{classify, Check, PropertyReport};
pub use error::{Error, Result};
pub use partial_fn::{PartialFn, ReprFamily, ReprKind};
pub use rational::Rational;
pub use relation::{Contours, GroundSet, PairKind, Quotient, Relation};
pub use topology::{FiniteTopology, ValueSpace};
pub use trace::Trace;
pub use verify::{Verdict, Violation};
pub use width::Width;
