//! The coding `gamma_n` of binary words as words over `n` letters, and
//! membership in `Stab_n(k)`.
//!
//! Read `phi(prefix)` as a map from letters to positions in the window of
//! recent letters: position 1 holds the letter just written, positions
//! `2..n-1` the older ones, position `n` the letter currently absent. Bit 0
//! rewrites the oldest letter, bit 1 the absent one. The `i`-th output letter
//! is therefore the preimage of position 1 under `phi(b_1 ... b_i)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perms::{Permutation, PrefixTable};
use crate::words::{BinaryWord, Word};

/// `gamma_n(v)`: letter `i` is the unique `a` with `a · phi(v[..=i]) = 1`.
///
/// For `n >= 3` neither generator fixes 1, so adjacent output letters differ.
pub fn gamma(v: &BinaryWord, n: usize) -> Result<Word> {
    let table = PrefixTable::new(v, n)?;
    let letters = (1..table.rows())
        .map(|i| table.prefix(i).inverse().apply(1) as u8)
        .collect();
    Word::new(letters, n)
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::StabilizerOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// Whether `phi(u)` fixes every point of `{1, ..., k}`.
pub fn is_k_stabilizing(u: &BinaryWord, n: usize, k: usize) -> Result<bool> {
    check_k(k, n)?;
    let p = crate::perms::phi(u, n)?;
    Ok(p.max_stabilized() >= k)
}

/// Permutation-level form of [`is_k_stabilizing`].
pub fn is_k_stabilizing_perm(p: &Permutation, k: usize) -> Result<bool> {
    check_k(k, p.degree())?;
    Ok(p.raw()[..k]
        .iter()
        .enumerate()
        .all(|(i, &x)| i == x as usize))
}

/// Largest `k` such that `p` fixes `1..=k` pointwise.
pub fn max_stabilized(p: &Permutation) -> usize {
    p.max_stabilized()
}

/// A non-empty factor `u = v[start..start + length)` with `u` in
/// `Stab_n(k)` and `length < k (n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShortStabilizer {
    pub start: usize,
    pub length: usize,
    pub k: usize,
}

/// Finds the first short stabilizing factor of `v` in `(start, length)`
/// order, reporting the largest admissible `k <= n - 1`.
///
/// Factor lengths are bounded by `(n - 1)^2 - 1`, the largest length any
/// `k <= n - 1` can accept.
pub fn find_condition_i_factor(v: &BinaryWord, n: usize) -> Result<Option<ShortStabilizer>> {
    let table = PrefixTable::new(v, n)?;
    let window = n - 1;
    let max_len = window * window - 1;
    for start in 0..v.len() {
        for length in 1..=max_len.min(v.len() - start) {
            let fixed = table
                .factor_max_stabilized(start, start + length)
                .min(window);
            // Smallest k with length < k (n - 1).
            let k_min = length / window + 1;
            if fixed >= k_min {
                return Ok(Some(ShortStabilizer {
                    start,
                    length,
                    k: fixed,
                }));
            }
        }
    }
    Ok(None)
}
