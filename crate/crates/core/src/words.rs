//! Finite words, periods and exact fractional exponents.
//!
//! A word `w` has period `q` when `w[i] == w[i + q]` for every valid `i`; its
//! exponent is `|w| / q` for the least such `q`. All comparisons between
//! exponents and thresholds go through [`Rational`], never through floats.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact, reduced fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    /// Builds `numerator / denominator` in lowest terms.
    ///
    /// Panics if `denominator` is zero.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        Rational(Ratio::new(numerator, denominator))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    /// `length / period` as a reduced fraction.
    fn of_ratio(length: usize, period: usize) -> Self {
        Rational::new(length as i64, period as i64)
    }

    /// True iff `length / period > self`, by cross-multiplication.
    fn is_exceeded_by(&self, length: usize, period: usize) -> bool {
        (length as i128) * (self.denominator() as i128)
            > (self.numerator() as i128) * (period as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `a`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A word over the alphabet `{1, ..., sigma}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    sigma: u8,
}

impl Word {
    /// Alphabets up to 255 letters are representable; only `sigma <= 9`
    /// has a text encoding.
    pub fn new(letters: Vec<u8>, sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > u8::MAX as usize {
            return Err(Error::AlphabetSize(sigma));
        }
        let sigma = sigma as u8;
        if let Some((index, &letter)) = letters
            .iter()
            .enumerate()
            .find(|(_, &l)| l == 0 || l > sigma)
        {
            return Err(Error::LetterOutOfRange {
                letter,
                index,
                sigma,
            });
        }
        Ok(Word { letters, sigma })
    }

    /// Parses the digit encoding: one character `'1'..='9'` per letter.
    pub fn parse(text: &str, sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > 9 {
            return Err(Error::AlphabetSize(sigma));
        }
        let sigma = sigma as u8;
        let mut letters = Vec::with_capacity(text.len());
        for (index, ch) in text.chars().enumerate() {
            let letter = match ch.to_digit(10) {
                Some(d) if d >= 1 => d as u8,
                _ => return Err(Error::InvalidCharacter { ch, index }),
            };
            if letter > sigma {
                return Err(Error::LetterOutOfRange {
                    letter,
                    index,
                    sigma,
                });
            }
            letters.push(letter);
        }
        Ok(Word { letters, sigma })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn sigma(&self) -> usize {
        self.sigma as usize
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }
}

/// Digits for alphabets of at most 9 letters, comma-separated numbers
/// otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma <= 9 {
            return self
                .letters
                .iter()
                .try_for_each(|&l| write!(f, "{}", char::from(b'0' + l)));
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A word over `B = {0, 1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some((index, &b)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(Error::LetterOutOfRange {
                letter: b,
                index,
                sigma: 1,
            });
        }
        Ok(BinaryWord { bits })
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .enumerate()
            .map(|(index, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidCharacter { ch, index }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| BinaryWord { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    /// The factor `self[start..end)`.
    pub fn factor(&self, start: usize, end: usize) -> Result<BinaryWord> {
        if start > end || end > self.len() {
            return Err(Error::FactorOutOfRange {
                start,
                end,
                len: self.len(),
            });
        }
        Ok(BinaryWord {
            bits: self.bits[start..end].to_vec(),
        })
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BinaryWord { bits }
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryWord { bits }
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits
            .iter()
            .try_for_each(|&b| f.write_str(if b == 0 { "0" } else { "1" }))
    }
}

/// Locates a repetition `w[start..start + length)` with period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepetitionWitness {
    pub start: usize,
    pub length: usize,
    pub period: usize,
    pub exponent: Rational,
}

impl RepetitionWitness {
    fn new(start: usize, length: usize, period: usize) -> Self {
        RepetitionWitness {
            start,
            length,
            period,
            exponent: Rational::of_ratio(length, period),
        }
    }
}

impl fmt::Display for RepetitionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (start={} len={} period={})",
            self.exponent, self.start, self.length, self.period
        )
    }
}

/// Failure function: `table[i]` is the length of the longest proper border
/// of `w[..=i]`.
pub fn border_table<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut table = vec![0; w.len()];
    for i in 1..w.len() {
        let mut b = table[i - 1];
        while b > 0 && w[i] != w[b] {
            b = table[b - 1];
        }
        if w[i] == w[b] {
            b += 1;
        }
        table[i] = b;
    }
    table
}

/// Least `q >= 1` such that `w[i] == w[i + q]` wherever both sides exist.
pub fn smallest_period<T: PartialEq>(w: &[T]) -> Result<usize> {
    let borders = border_table(w);
    match borders.last() {
        Some(&b) => Ok(w.len() - b),
        None => Err(Error::EmptyWord),
    }
}

/// `|w| / smallest_period(w)` in lowest terms.
pub fn exponent_of<T: PartialEq>(w: &[T]) -> Result<Rational> {
    let period = smallest_period(w)?;
    Ok(Rational::of_ratio(w.len(), period))
}

/// Walks every non-empty factor in `(start, length)` order, feeding
/// `(start, length, smallest period)` to `visit` until it returns `true`.
///
/// One border table per suffix, so the whole walk is quadratic.
fn scan_factors<T: PartialEq>(w: &[T], mut visit: impl FnMut(usize, usize, usize) -> bool) {
    let mut borders = vec![0usize; w.len()];
    for start in 0..w.len() {
        let suffix = &w[start..];
        borders[0] = 0;
        if visit(start, 1, 1) {
            return;
        }
        for i in 1..suffix.len() {
            let mut b = borders[i - 1];
            while b > 0 && suffix[i] != suffix[b] {
                b = borders[b - 1];
            }
            if suffix[i] == suffix[b] {
                b += 1;
            }
            borders[i] = b;
            let length = i + 1;
            if visit(start, length, length - b) {
                return;
            }
        }
    }
}

/// The largest exponent of any non-empty factor of `w`, with the first
/// witness in `(start, length)` order attaining it.
pub fn max_exponent_factor<T: PartialEq>(w: &[T]) -> Result<(Rational, RepetitionWitness)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut best = (0usize, 1usize, 1usize); // (start, length, period)
    let mut first = true;
    scan_factors(w, |start, length, period| {
        // length / period > best.length / best.period
        if first || length * best.2 > best.1 * period {
            best = (start, length, period);
            first = false;
        }
        false
    });
    let witness = RepetitionWitness::new(best.0, best.1, best.2);
    Ok((witness.exponent, witness))
}

/// The first factor in `(start, length)` order whose exponent is strictly
/// greater than `threshold`.
pub fn has_factor_exceeding<T: PartialEq>(
    w: &[T],
    threshold: Rational,
) -> Result<Option<RepetitionWitness>> {
    if threshold < Rational::from_integer(1) {
        return Err(Error::ThresholdBelowOne(threshold.to_string()));
    }
    let mut found = None;
    scan_factors(w, |start, length, period| {
        if threshold.is_exceeded_by(length, period) {
            found = Some(RepetitionWitness::new(start, length, period));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// The conjectured repetition threshold on `n` letters: 7/4 for `n = 3`,
/// 7/5 for `n = 4`, and `n / (n - 1)` otherwise.
pub fn dejean_threshold(n: usize) -> Result<Rational> {
    match n {
        0 | 1 => Err(Error::DegreeTooSmall(n)),
        3 => Ok(Rational::new(7, 4)),
        4 => Ok(Rational::new(7, 5)),
        _ => Ok(Rational::new(n as i64, n as i64 - 1)),
    }
}
