//! Kernel periods and psi-kernel repetitions over `A_m`.
//!
//! A word is in `ker psi` when every letter occurs a multiple of 4 times.
//! `q` is a kernel period of `v` if `q` is a period of `v` and `v[..q]` is in
//! `ker psi`. A non-empty `v` is a psi-kernel repetition of order `n` when it
//! has a kernel period `q` with `(n - 1)(|v| + 1) >= nq - 3`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::Word;

/// Occurrence counts `|v|_a` for `a` in `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountVector {
    counts: Vec<usize>,
}

impl CountVector {
    pub fn of(v: &Word, m: usize) -> Result<Self> {
        check_letters(v, m)?;
        let mut counts = vec![0; m];
        for &a in v.letters() {
            counts[a as usize - 1] += 1;
        }
        Ok(CountVector { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_kernel(&self) -> bool {
        self.counts.iter().all(|c| c % 4 == 0)
    }
}

/// A factor `w[start..start + length)` with kernel period `q` satisfying the
/// order-`n` length inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KernelWitness {
    pub start: usize,
    pub length: usize,
    pub q: usize,
    pub n: usize,
}

impl fmt::Display for KernelWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},q={})", self.start, self.length, self.q)
    }
}

fn check_alphabet(m: usize) -> Result<()> {
    if m == 0 || m > MAX_KERNEL_ALPHABET {
        Err(Error::KernelAlphabet(m))
    } else {
        Ok(())
    }
}

fn check_letters(v: &Word, m: usize) -> Result<()> {
    check_alphabet(m)?;
    match v.letters().iter().position(|&a| a as usize > m) {
        Some(index) => Err(Error::LetterOutOfRange {
            letter: v.letters()[index],
            index,
            sigma: m as u8,
        }),
        None => Ok(()),
    }
}

/// Letters are packed two bits each into a `u64` of counts mod 4.
const MAX_KERNEL_ALPHABET: usize = 9;

/// `(n - 1)(length + 1) >= n q - 3`.
pub fn satisfies_length_bound(n: usize, length: usize, q: usize) -> bool {
    let n = n as i64;
    (n - 1) * (length as i64 + 1) >= n * q as i64 - 3
}

/// Smallest factor length for which kernel period `q` meets the order-`n`
/// bound.
fn min_length(n: usize, q: usize) -> usize {
    // Least L with (n - 1)(L + 1) >= nq - 3.
    let need = (n * q).saturating_sub(3);
    need.div_ceil(n - 1).saturating_sub(1)
}

/// Prefix count vectors reduced mod 4: `out[i]` describes `w[..i)`.
fn reduced_prefix_counts(letters: &[u8]) -> Vec<u64> {
    let mut out = Vec::with_capacity(letters.len() + 1);
    let mut acc = 0u64;
    out.push(acc);
    for &a in letters {
        acc = bump(acc, a);
        out.push(acc);
    }
    out
}

fn bump(packed: u64, letter: u8) -> u64 {
    let shift = 2 * (letter as u64 - 1);
    let field = (packed >> shift) & 3;
    (packed & !(3 << shift)) | (((field + 1) & 3) << shift)
}

pub fn in_kernel(v: &Word, m: usize) -> Result<bool> {
    Ok(CountVector::of(v, m)?.is_kernel())
}

fn has_period(letters: &[u8], q: usize) -> bool {
    letters.iter().zip(&letters[q..]).all(|(a, b)| a == b)
}

/// All kernel periods of `v`, ascending. `q = |v|` counts as a period.
pub fn kernel_periods(v: &Word, m: usize) -> Result<Vec<usize>> {
    check_letters(v, m)?;
    let letters = v.letters();
    let prefix = reduced_prefix_counts(letters);
    Ok((1..=letters.len())
        .filter(|&q| prefix[q] == 0 && has_period(letters, q))
        .collect())
}

/// The smallest kernel period witnessing that `v` is a psi-kernel repetition
/// of order `n`, if any.
pub fn is_kernel_repetition(v: &Word, n: usize, m: usize) -> Result<Option<usize>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    Ok(kernel_periods(v, m)?
        .into_iter()
        .find(|&q| satisfies_length_bound(n, v.len(), q)))
}

/// Every psi-kernel repetition in `w`, one witness per `(start, q)` at its
/// maximal periodic length, ordered by `(start, q)`.
pub fn scan_kernel_repetitions(w: &Word, n: usize, m: usize) -> Result<Vec<KernelWitness>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    check_letters(w, m)?;
    let letters = w.letters();
    let len = letters.len();
    let prefix = reduced_prefix_counts(letters);
    let mut run = vec![0usize; len + 1];
    let mut found = Vec::new();
    for q in 1..=len {
        // run[s]: number of i >= s with letters[i] == letters[i + q], consecutively.
        run[len - q] = 0;
        for s in (0..len - q).rev() {
            run[s] = if letters[s] == letters[s + q] {
                run[s + 1] + 1
            } else {
                0
            };
        }
        for s in 0..=len - q {
            let length = q + run[s];
            if prefix[s] == prefix[s + q] && satisfies_length_bound(n, length, q) {
                found.push(KernelWitness {
                    start: s,
                    length,
                    q,
                    n,
                });
            }
        }
    }
    found.sort_by_key(|k| (k.start, k.q));
    Ok(found)
}

/// Whether appending the last letter of `letters` created a psi-kernel
/// repetition. Only factors ending at the last position are examined.
fn suffix_has_kernel_repetition(letters: &[u8], prefix: &[u64], n: usize) -> bool {
    let len = letters.len();
    let end = len - 1;
    for q in 1..=len {
        let lo = min_length(n, q).max(q);
        if lo > len {
            // min_length grows with q.
            break;
        }
        // Longest suffix with period q.
        let mut longest = q;
        while longest < len && letters[end - longest] == letters[end - longest + q] {
            longest += 1;
        }
        for length in lo..=longest {
            let s = len - length;
            if prefix[s] == prefix[s + q] {
                return true;
            }
        }
    }
    false
}

/// Depth-first search for a word of length `target_length` over `A_m`
/// avoiding psi-kernel repetitions of order `n`.
///
/// Letter order at each depth is a seeded shuffle, so the result is a pure
/// function of the arguments. Fails with [`Error::SearchExhausted`] when no
/// such word exists.
pub fn generate_kernel_avoiding(
    m: usize,
    n: usize,
    target_length: usize,
    seed: u64,
) -> Result<Word> {
    check_alphabet(m)?;
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if target_length == 0 {
        return Word::new(Vec::new(), m);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders: Vec<Vec<u8>> = Vec::new();
    let mut letters: Vec<u8> = Vec::with_capacity(target_length);
    let mut prefix: Vec<u64> = vec![0];
    // choice[d]: index into orders[d] of the letter currently at depth d.
    let mut choice: Vec<usize> = vec![0];

    loop {
        let depth = letters.len();
        if orders.len() == depth {
            let mut order: Vec<u8> = (1..=m as u8).collect();
            order.shuffle(&mut rng);
            orders.push(order);
        }
        let idx = choice[depth];
        if idx == m {
            // Every letter failed here: backtrack.
            if depth == 0 {
                return Err(Error::SearchExhausted {
                    m,
                    n,
                    target_length,
                });
            }
            choice.pop();
            letters.pop();
            prefix.pop();
            choice[depth - 1] += 1;
            continue;
        }
        let letter = orders[depth][idx];
        letters.push(letter);
        prefix.push(bump(prefix[depth], letter));
        if suffix_has_kernel_repetition(&letters, &prefix, n) {
            letters.pop();
            prefix.pop();
            choice[depth] += 1;
            continue;
        }
        if letters.len() == target_length {
            return Word::new(letters, m);
        }
        choice.push(0);
    }
}
