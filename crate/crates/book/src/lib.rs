//! The guide under `book/` compiled as doctests, one module per chapter, so
//! every listing in the book runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/scheme.md")]
pub mod scheme {}
#[doc = include_str!("../../../book/src/number-theory.md")]
pub mod number_theory {}
#[doc = include_str!("../../../book/src/shift-structure.md")]
pub mod shift_structure {}
#[doc = include_str!("../../../book/src/attack.md")]
pub mod attack {}
#[doc = include_str!("../../../book/src/language-model.md")]
pub mod language_model {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/formats.md")]
pub mod formats {}
