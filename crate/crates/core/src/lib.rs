//! Exact periodic-orbit analysis for piecewise-linear interval maps.
//!
//! A continuous map of an interval that has a point of least period `n` also
//! has points of every period `m` that follows `n` in the Sharkovsky order
//!
//! ```text
//! 3 > 5 > 7 > … > 2·3 > 2·5 > … > 4·3 > 4·5 > … > 2^inf > … > 8 > 4 > 2 > 1
//! ```
//!
//! and every tail of this order occurs as a period set. This crate makes both
//! halves computable for piecewise-linear maps with rational breakpoints:
//!
//! * [`order`] compares classes and recognizes tails;
//! * [`map`] evaluates, composes and iterates maps exactly;
//! * [`periodic`] enumerates least periods, realizes loops of covering
//!   intervals as periodic points and checks the elementary forcing rules;
//! * [`pattern`] works with cyclic permutations and their covering digraphs;
//! * [`construct`] builds witness maps for every class.
//!
//! ```
//! use sharklab::construct::make_fn;
//! use sharklab::order::{shark_tail, SharkClass};
//! use sharklab::periodic::period_set;
//! use sharklab::PieceBudget;
//!
//! let f = make_fn(2)?;
//! let report = period_set(&f, 9, PieceBudget::default())?;
//! assert_eq!(report.periods(), shark_tail(SharkClass::Finite(5), 9));
//! # Ok::<(), sharklab::Error>(())
//! ```

pub mod budget;
pub mod construct;
pub mod error;
pub mod map;
pub mod order;
pub mod pattern;
pub mod periodic;
pub mod rational;

pub use budget::PieceBudget;
pub use error::{Error, Result};
pub use map::{compose, iterate, MapFile, PlMap, Point};
pub use order::SharkClass;
pub use rational::{Interval, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ordering.md")]
    mod ordering {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/periods.md")]
    mod periods {}
    #[doc = include_str!("../../../book/src/loops.md")]
    mod loops {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/doubling.md")]
    mod doubling {}
    #[doc = include_str!("../../../book/src/phi.md")]
    mod phi {}
    #[doc = include_str!("../../../book/src/witness.md")]
    mod witness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
