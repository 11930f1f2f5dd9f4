//! Compiles and runs every code snippet in the guide (`book/`) as a doctest,
//! so `cargo test --workspace` keeps the book in sync with the library.
//!
//! Each chapter becomes one rustdoc module; a failing snippet therefore
//! reports which chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}

#[doc = include_str!("../../../book/src/entropy.md")]
pub mod entropy {}

#[doc = include_str!("../../../book/src/codification.md")]
pub mod codification {}

#[doc = include_str!("../../../book/src/page.md")]
pub mod page {}

#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
