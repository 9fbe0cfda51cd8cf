//! Runs the code blocks of the guide as doc-tests. One module per chapter so
//! a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/costs-and-orders.md")]
pub mod costs_and_orders {}
#[doc = include_str!("../../../book/src/relations.md")]
pub mod relations {}
#[doc = include_str!("../../../book/src/expressions.md")]
pub mod expressions {}
#[doc = include_str!("../../../book/src/operations.md")]
pub mod operations {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/solving.md")]
pub mod solving {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
