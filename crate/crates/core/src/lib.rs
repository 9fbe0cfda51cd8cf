//! Valued constraint satisfaction over the rationals with order-invariant
//! cost functions.
//!
//! Relations are tables indexed by weak orders ([`order`]) holding exact
//! costs ([`cost`]). [`classify`] decides whether the problem for a
//! structure is in P or NP-complete, and [`solve`] picks a matching backend.
//!
//! ```
//! use tvcsp::catalog::named_relation;
//! use tvcsp::classify::{classify_temporal, Complexity};
//! use tvcsp::config::Caps;
//! use tvcsp::relation::ValuedStructure;
//!
//! let s = ValuedStructure::new([named_relation("neq01").unwrap()]).unwrap();
//! let v = classify_temporal(&s, &Caps::default()).unwrap();
//! assert_eq!(v.complexity, Complexity::P);
//! ```
//!
//! The guide in `book/` walks through the concepts with runnable examples.

pub mod catalog;
pub mod classify;
pub mod clone;
pub mod config;
pub mod cost;
pub mod csp;
pub mod error;
pub mod gen;
pub mod io;
pub mod ops;
pub mod order;
pub mod relation;
pub mod solve;
