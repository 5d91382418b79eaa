use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word has no period")]
    EmptyWord,
    #[error("invalid character {ch:?} at index {index}")]
    InvalidCharacter { ch: char, index: usize },
    #[error("letter {letter} at index {index} is outside the alphabet 1..={sigma}")]
    LetterOutOfRange { letter: u8, index: usize, sigma: u8 },
    #[error("unsupported alphabet size {0}")]
    AlphabetSize(usize),
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("threshold {0} is below 1")]
    ThresholdBelowOne(String),
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("factor range {start}..{end} is out of bounds for a word of length {len}")]
    FactorOutOfRange {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("k = {k} is outside 1..={n}")]
    StabilizerOutOfRange { k: usize, n: usize },
    #[error("n = {0} is too small for the morphism construction (need n >= 9)")]
    MorphismDegree(usize),
    #[error("letter {letter} is outside 1..={m}")]
    MorphismLetter { letter: u8, m: usize },
    #[error(
        "n = {0} is outside the verified range 27..=29 (pass the range override to experiment)"
    )]
    OutsideVerifiedRange(usize),
    #[error("empty range {lo}..={hi}")]
    EmptyRange { lo: usize, hi: usize },
    #[error(
        "no word of length {target_length} over {m} letters avoids kernel repetitions of order {n}"
    )]
    SearchExhausted {
        m: usize,
        n: usize,
        target_length: usize,
    },
    #[error("parallelism must be at least 1")]
    ZeroParallelism,
    #[error("kernel alphabet must be non-empty and at most 9 letters, got {0}")]
    KernelAlphabet(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
