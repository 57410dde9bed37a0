//! The guide under `book/src`, compiled so every snippet runs as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/sequence.md")]
pub mod sequence {}

#[doc = include_str!("../../../book/src/enclosures.md")]
pub mod enclosures {}

#[doc = include_str!("../../../book/src/repdigits.md")]
pub mod repdigits {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
