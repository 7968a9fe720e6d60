//! The book under `book/`, compiled chapter by chapter.
//!
//! Each module below is one chapter, included verbatim so that every code
//! block in the book is a doc-test: `cargo test --doc -p locald-guide`
//! fails if the book's examples drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/configurations.md")]
pub mod configurations {}

#[doc = include_str!("../../../book/src/bits.md")]
pub mod bits {}

#[doc = include_str!("../../../book/src/views.md")]
pub mod views {}

#[doc = include_str!("../../../book/src/deciding.md")]
pub mod deciding {}

#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}

#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}

#[doc = include_str!("../../../book/src/fooling.md")]
pub mod fooling {}

#[doc = include_str!("../../../book/src/searching.md")]
pub mod searching {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
