//! Generating pairs of orders 2 and 3 for the finite symplectic groups
//! `Sp_2n(q)`, and a checker that recomputes the finite facts they rest on.

pub mod claims;
pub mod construct;
pub mod expr;
pub mod gf;
pub mod grouporder;
pub mod matrix;
pub mod poly;

/// The guide, compiled so that its examples run as doctests.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/fields.md")]
    pub struct Fields;
    #[doc = include_str!("../../../book/src/matrices.md")]
    pub struct Matrices;
    #[doc = include_str!("../../../book/src/pairs.md")]
    pub struct Pairs;
    #[doc = include_str!("../../../book/src/orders.md")]
    pub struct Orders;
    #[doc = include_str!("../../../book/src/claims.md")]
    pub struct Claims;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
