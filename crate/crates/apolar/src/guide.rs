//! The user guide, embedded chapter by chapter from `book/src`.
//!
//! Each submodule's documentation is one chapter of the rendered book, so
//! every code block in the book compiles and runs as a doc test and the two
//! cannot drift apart.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/apolarity.md")]
pub mod apolarity {}

#[doc = include_str!("../../../book/src/arrangements.md")]
pub mod arrangements {}

#[doc = include_str!("../../../book/src/waring.md")]
pub mod waring {}

#[doc = include_str!("../../../book/src/ranksearch.md")]
pub mod ranksearch {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
