//! Linear codes over finite fields and star-product private information retrieval.

pub mod agcode;
pub mod code;
pub mod cyclic;
pub mod error;
pub mod frac;
pub mod gf;
pub mod matrix;
pub mod pir;
pub mod rmext;
pub mod search;
pub mod verify;

pub use code::{CodeParams, Distance, LinearCode};
pub use error::{Error, Result};
pub use gf::{Elem, Field, Poly};
pub use matrix::Matrix;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/codes.md")]
    pub mod codes {}
    #[doc = include_str!("../../../book/src/cyclic.md")]
    pub mod cyclic {}
    #[doc = include_str!("../../../book/src/reed_muller.md")]
    pub mod reed_muller {}
    #[doc = include_str!("../../../book/src/elliptic.md")]
    pub mod elliptic {}
    #[doc = include_str!("../../../book/src/pir.md")]
    pub mod pir {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
