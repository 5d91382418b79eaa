//! Exact word and permutation machinery for repetition thresholds, and an
//! exhaustive check that Carpi's morphism produces no short stabilizing
//! factors for 27 <= n <= 29.
//!
//! ```
//! use dejean::verify::verify_stabilizer_freeness;
//!
//! let report = verify_stabilizer_freeness(28, 1).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.per_r[0].factors_checked, 51_904);
//! ```

pub mod carpi;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod pansiot;
pub mod perms;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use perms::Permutation;
pub use words::{BinaryWord, Rational, Word};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    pub mod words {}
    #[doc = include_str!("../../../book/src/pansiot.md")]
    pub mod pansiot {}
    #[doc = include_str!("../../../book/src/morphism.md")]
    pub mod morphism {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    pub mod kernel {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
