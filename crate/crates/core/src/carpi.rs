//! Carpi's uniform morphism `f: A_m* -> B*`.
//!
//! For `n` letters: `m = (n - 3) / 6`, `p = n / 2` (floor), `y` is the suffix
//! of `(01)^n` of length `n - 1`, and `x` the suffix of `y` of length
//! `|y| - 6m`. Then
//!
//! ```text
//! f(1) = y^p x (101)^(2m)
//! f(a) = y^p x (101)^(2m - 2a) 010 (101)^(2a - 1)      2 <= a <= m
//! ```
//!
//! and every image has length `(p + 1)(n - 1)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{BinaryWord, Word};

/// Smallest `n` for which `m >= 1`.
pub const MIN_DEGREE: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarpiParams {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    #[serde(serialize_with = "as_bits")]
    pub y: BinaryWord,
    #[serde(serialize_with = "as_bits")]
    pub x: BinaryWord,
    pub uniform_length: usize,
}

fn as_bits<S: serde::Serializer>(w: &BinaryWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// Alternating `0101...` ending in `1`, of the given length.
fn alternating_suffix(len: usize) -> Vec<u8> {
    (0..len).map(|i| ((len - i) % 2) as u8).collect()
}

pub fn carpi_params(n: usize) -> Result<CarpiParams> {
    if n < MIN_DEGREE {
        return Err(Error::MorphismDegree(n));
    }
    let m = (n - 3) / 6;
    let p = n / 2;
    let y = alternating_suffix(n - 1);
    let x = y[6 * m..].to_vec();
    Ok(CarpiParams {
        n,
        m,
        p,
        y: BinaryWord::from_bits_unchecked(y),
        x: BinaryWord::from_bits_unchecked(x),
        uniform_length: (p + 1) * (n - 1),
    })
}

impl CarpiParams {
    /// Length of the shared prefix `y^p x`.
    pub fn common_prefix_len(&self) -> usize {
        self.p * self.y.len() + self.x.len()
    }
}

/// `(01)^k`, prefixed by `1` when the length is odd.
fn describe_alternating(w: &BinaryWord) -> String {
    let pairs = w.len() / 2;
    let lead = if w.len() % 2 == 1 { "1" } else { "" };
    match pairs {
        0 => lead.to_string(),
        1 => format!("{lead}01"),
        _ => format!("{lead}(01)^{pairs}"),
    }
}

impl fmt::Display for CarpiParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} p={} r={} y={} x={}",
            self.m,
            self.p,
            self.uniform_length,
            describe_alternating(&self.y),
            self.x
        )
    }
}

fn image_bits(a: usize, params: &CarpiParams) -> Vec<u8> {
    const BLOCK: [u8; 3] = [1, 0, 1];
    const MARK: [u8; 3] = [0, 1, 0];
    let m = params.m;
    let mut out = Vec::with_capacity(params.uniform_length);
    for _ in 0..params.p {
        out.extend_from_slice(params.y.bits());
    }
    out.extend_from_slice(params.x.bits());
    if a == 1 {
        (0..2 * m).for_each(|_| out.extend_from_slice(&BLOCK));
    } else {
        (0..2 * m - 2 * a).for_each(|_| out.extend_from_slice(&BLOCK));
        out.extend_from_slice(&MARK);
        (0..2 * a - 1).for_each(|_| out.extend_from_slice(&BLOCK));
    }
    debug_assert_eq!(out.len(), params.uniform_length);
    out
}

fn check_letter(letter: usize, m: usize) -> Result<()> {
    if letter == 0 || letter > m {
        Err(Error::MorphismLetter {
            letter: letter.min(u8::MAX as usize) as u8,
            m,
        })
    } else {
        Ok(())
    }
}

/// `f(a)` for a single letter `a` in `1..=m`.
pub fn f_image(a: usize, params: &CarpiParams) -> Result<BinaryWord> {
    check_letter(a, params.m)?;
    Ok(BinaryWord::from_bits_unchecked(image_bits(a, params)))
}

/// `f(w)`, building the images on the fly. Use [`MorphismTable`] when
/// applying `f` repeatedly.
pub fn apply_f(w: &Word, params: &CarpiParams) -> Result<BinaryWord> {
    MorphismTable::new(params.clone()).apply(w)
}

/// All images of `f` for one `n`, built once.
#[derive(Debug, Clone)]
pub struct MorphismTable {
    params: CarpiParams,
    images: Vec<BinaryWord>,
}

impl MorphismTable {
    pub fn new(params: CarpiParams) -> Self {
        let images = (1..=params.m)
            .map(|a| BinaryWord::from_bits_unchecked(image_bits(a, &params)))
            .collect();
        MorphismTable { params, images }
    }

    pub fn for_degree(n: usize) -> Result<Self> {
        Ok(Self::new(carpi_params(n)?))
    }

    pub fn params(&self) -> &CarpiParams {
        &self.params
    }

    /// `f(a)`.
    pub fn image(&self, a: usize) -> Result<&BinaryWord> {
        check_letter(a, self.params.m)?;
        Ok(&self.images[a - 1])
    }

    pub fn images(&self) -> &[BinaryWord] {
        &self.images
    }

    /// Concatenation of images for raw letters in `1..=m`.
    pub fn apply_letters(&self, letters: &[u8]) -> Result<BinaryWord> {
        let mut bits = Vec::with_capacity(letters.len() * self.params.uniform_length);
        for &a in letters {
            bits.extend_from_slice(self.image(a as usize)?.bits());
        }
        Ok(BinaryWord::from_bits_unchecked(bits))
    }

    pub fn apply(&self, w: &Word) -> Result<BinaryWord> {
        self.apply_letters(w.letters())
    }
}
