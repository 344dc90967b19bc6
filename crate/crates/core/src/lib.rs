//! Exact computational toolkit for Thompson's group F.
//!
//! Elements live in two interchangeable forms: piecewise-linear
//! homeomorphisms of [0,1] with dyadic breakpoints and power-of-two slopes
//! ([`plf::PlHomeo`]), and words over the infinite generating set x_0, x_1,
//! ... with a unique normal form ([`words::NormalWord`]). Everything is
//! computed in exact arithmetic over Z[1/2]; floating point appears nowhere.
//!
//! On top of the arithmetic sit the structural tools (supports, dividing
//! points, defragmentation, centralizers, conjugation shifts), words with
//! constants and their verification as laws, Britton reduction for
//! one-stable-letter HNN words over cyclic edge subgroups, and the marked
//! groups metric with its relation-set enumeration.

pub mod dyadic;
pub mod laws;
pub mod marked;
pub mod plf;
pub mod structure;
pub mod words;

pub use dyadic::Dyadic;
pub use plf::{embed, generator, DyadicInterval, PlHomeo};
pub use words::{GenWord, NormalWord, TreePair};
