//! Exact-arithmetic toolkit for apolar algebras of products of linear forms.
//!
//! A product of linear forms `f = l_1 ... l_d` in `S = K[x_0..x_n]` is the defining
//! polynomial of a hyperplane multi-arrangement.  The dual ring `R = K[X_0..X_n]`
//! acts on `S` by differentiation, and the central objects here are the graded
//! pieces of the apolar ideal `Ann(f) = { D in R : D(f) = 0 }`, computed exactly as
//! kernels of catalecticant matrices over `Q` or the cyclotomic field `Q(z)` with
//! `z = exp(i*pi/6)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: exact scalars ([`Rat`], [`CycElem`]) and the float bridge [`ComplexF`].
//! * [`poly`]: sparse multivariate polynomials, the apolar action, parsing and printing.
//! * [`linalg`]: exact row reduction, kernels and solving; SVD-based numeric kernels.
//! * [`apolarity`]: catalecticants, apolar ideal components, Hilbert functions,
//!   complete-intersection detection, Jacobian ideals, colon membership.
//! * [`arrangements`]: multi-arrangement model, genericity and irreducibility,
//!   linear-factor extraction, sextic normalization, star configurations, bounds.
//! * [`waring`]: Waring decomposition verification and apolarity certificates.
//! * [`ranksearch`]: the rank-constrained catalecticant system for sextics with
//!   four fixed factors, a total-degree homotopy tracker, and Bertini-format I/O.
//! * [`catalog`]: the six classified sextic forms and their verification data.
//!
//! The `book/` directory at the workspace root contains a long-form guide; its
//! code snippets are compiled as doc tests through the [`guide`] module.

pub mod apolarity;
pub mod arrangements;
pub mod catalog;
pub mod error;
pub mod field;
pub mod guide;
pub mod linalg;
pub mod poly;
pub mod ranksearch;
pub mod waring;

pub use error::{Error, Result};
pub use field::{ComplexF, CycElem, Rat, Scalar};
pub use poly::{Exponent, Poly, Ring};

/// Compiles the README's example as a doc test so it cannot go stale.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
