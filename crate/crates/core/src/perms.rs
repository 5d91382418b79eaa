//! Permutations of `{1, ..., n}` acting on the right, and Pansiot's morphism
//! from binary words into the symmetric group.
//!
//! Composition follows the right-action convention: `point · (a b)` is
//! `(point · a) · b`, so `phi(uv) = phi(u) * phi(v)` and words are folded left
//! to right. Points are 1-based at every public boundary.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::BinaryWord;

/// A bijection of `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // 0-based images: point `i + 1` maps to `image[i] + 1`.
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based image table.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::NotAPermutation(n));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[p - 1] = true;
            image.push((p - 1) as u8);
        }
        Ok(Permutation { image })
    }

    fn from_raw(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    /// The degree `n`.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// The image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.image[point - 1] as usize + 1
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// The product "apply `self`, then `other`".
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation::from_raw(
            self.image
                .iter()
                .map(|&p| other.image[p as usize])
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Permutation::from_raw(inv)
    }

    /// Largest `k` such that the points `1..=k` are all fixed.
    pub fn max_stabilized(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .take_while(|(i, &p)| *i == p as usize)
            .count()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.image
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &p) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p as usize + 1)?;
        }
        f.write_str("]")
    }
}

/// `c` with `x · c = (x · a) · b` for every point `x`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DegreeTooSmall(n))
    } else if n > u8::MAX as usize {
        Err(Error::NotAPermutation(n))
    } else {
        Ok(())
    }
}

fn generator_raw(n: usize, bit: u8) -> Vec<u8> {
    // bit 0: the cycle (1 2 ... n-1) fixing n; bit 1: the cycle (1 2 ... n).
    let len = if bit == 0 { n - 1 } else { n };
    (0..n)
        .map(|p| {
            if p < len {
                ((p + 1) % len) as u8
            } else {
                p as u8
            }
        })
        .collect()
}

/// Pansiot's generators: `phi(0) = (1 2 ... n-1)`, `phi(1) = (1 2 ... n)`.
pub fn pansiot_generator(n: usize, bit: u8) -> Result<Permutation> {
    check_degree(n)?;
    if bit > 1 {
        return Err(Error::LetterOutOfRange {
            letter: bit,
            index: 0,
            sigma: 1,
        });
    }
    Ok(Permutation::from_raw(generator_raw(n, bit)))
}

/// `phi(v)`: the left-to-right product of the generators of `v`'s bits.
pub fn phi(v: &BinaryWord, n: usize) -> Result<Permutation> {
    phi_bits(v.bits(), n)
}

pub(crate) fn phi_bits(bits: &[u8], n: usize) -> Result<Permutation> {
    check_degree(n)?;
    let generators = [generator_raw(n, 0), generator_raw(n, 1)];
    let mut image: Vec<u8> = (0..n as u8).collect();
    for &bit in bits {
        let g = &generators[bit as usize];
        for p in image.iter_mut() {
            *p = g[*p as usize];
        }
    }
    Ok(Permutation::from_raw(image))
}

/// `phi` of every prefix of a binary word, so that `phi` of any factor costs
/// one inversion and one product.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    n: usize,
    len: usize,
    // Row `i` holds phi(v[..i)), row-major with stride `n`.
    forward: Vec<u8>,
    backward: Vec<u8>,
}

impl PrefixTable {
    pub fn new(v: &BinaryWord, n: usize) -> Result<Self> {
        Self::from_bits(v.bits(), n)
    }

    pub(crate) fn from_bits(bits: &[u8], n: usize) -> Result<Self> {
        check_degree(n)?;
        let generators = [generator_raw(n, 0), generator_raw(n, 1)];
        let rows = bits.len() + 1;
        let mut forward = Vec::with_capacity(rows * n);
        forward.extend(0..n as u8);
        for (i, &bit) in bits.iter().enumerate() {
            let g = &generators[bit as usize];
            for x in 0..n {
                let p = forward[i * n + x];
                forward.push(g[p as usize]);
            }
        }
        let mut backward = vec![0u8; rows * n];
        for row in 0..rows {
            for x in 0..n {
                let p = forward[row * n + x] as usize;
                backward[row * n + p] = x as u8;
            }
        }
        Ok(PrefixTable {
            n,
            len: bits.len(),
            forward,
            backward,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Length of the underlying word; the table has `word_len() + 1` rows.
    pub fn word_len(&self) -> usize {
        self.len
    }

    /// Number of stored prefix permutations.
    pub fn rows(&self) -> usize {
        self.len + 1
    }

    /// `phi(v[..i))`.
    pub fn prefix(&self, i: usize) -> Permutation {
        Permutation::from_raw(self.forward[i * self.n..(i + 1) * self.n].to_vec())
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        if i > j || j > self.len {
            Err(Error::FactorOutOfRange {
                start: i,
                end: j,
                len: self.len,
            })
        } else {
            Ok(())
        }
    }

    /// `phi(v[i..j)) = phi(v[..i))^-1 * phi(v[..j))`.
    pub fn factor_image(&self, i: usize, j: usize) -> Result<Permutation> {
        self.check_range(i, j)?;
        let n = self.n;
        let inv = &self.backward[i * n..(i + 1) * n];
        let fwd = &self.forward[j * n..(j + 1) * n];
        Ok(Permutation::from_raw(
            inv.iter().map(|&y| fwd[y as usize]).collect(),
        ))
    }

    /// Whether `phi(v[i..j))` fixes each of the points `1..=k`.
    ///
    /// Non-allocating; the caller guarantees `i <= j <= word_len()` and
    /// `k <= degree()`.
    pub(crate) fn factor_fixes_initial(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.n;
        let inv = &self.backward[i * n..i * n + k];
        let fwd = &self.forward[j * n..(j + 1) * n];
        inv.iter()
            .enumerate()
            .all(|(x, &y)| fwd[y as usize] as usize == x)
    }

    /// `max_stabilized(phi(v[i..j)))` without materializing the permutation.
    pub(crate) fn factor_max_stabilized(&self, i: usize, j: usize) -> usize {
        let n = self.n;
        let inv = &self.backward[i * n..(i + 1) * n];
        let fwd = &self.forward[j * n..(j + 1) * n];
        inv.iter()
            .enumerate()
            .take_while(|(x, &y)| fwd[y as usize] as usize == *x)
            .count()
    }
}

/// Builds the table of `phi` over all prefixes of `v`.
pub fn prefix_table(v: &BinaryWord, n: usize) -> Result<PrefixTable> {
    PrefixTable::new(v, n)
}

/// `phi(v[i..j))` read from a prefix table.
pub fn factor_image(table: &PrefixTable, i: usize, j: usize) -> Result<Permutation> {
    table.factor_image(i, j)
}
