//! Brute-force oracles. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Least q in 1..=|w| with w[i] == w[i+q] everywhere, by trying every q.
pub fn brute_period<T: PartialEq>(w: &[T]) -> usize {
    (1..=w.len())
        .find(|&q| (0..w.len() - q).all(|i| w[i] == w[i + q]))
        .expect("non-empty word")
}

/// (start, length, period) of the first maximal-exponent factor in
/// (start, length) order.
pub fn brute_max_exponent<T: PartialEq>(w: &[T]) -> (usize, usize, usize) {
    let mut best = (0, 1, 1);
    for s in 0..w.len() {
        for e in s + 1..=w.len() {
            let q = brute_period(&w[s..e]);
            let len = e - s;
            if len * best.2 > best.1 * q {
                best = (s, len, q);
            }
        }
    }
    best
}

/// First factor in (start, length) order with len/period > num/den.
pub fn brute_first_exceeding<T: PartialEq>(
    w: &[T],
    num: i64,
    den: i64,
) -> Option<(usize, usize, usize)> {
    for s in 0..w.len() {
        for e in s + 1..=w.len() {
            let q = brute_period(&w[s..e]);
            if ((e - s) as i64) * den > num * q as i64 {
                return Some((s, e - s, q));
            }
        }
    }
    None
}

/// All (start, end, q) with w[start..end) of period q, prefix of length q
/// having every letter count divisible by 4, and (n-1)(len+1) >= nq-3;
/// reduced to the maximal end per (start, q).
pub fn brute_kernel_scan(w: &[u8], n: usize, m: usize) -> Vec<(usize, usize, usize)> {
    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in 0..w.len() {
        for e in s + 1..=w.len() {
            let len = e - s;
            for q in 1..=len {
                let periodic = (s..e - q).all(|i| w[i] == w[i + q]);
                if !periodic {
                    continue;
                }
                let mut counts = vec![0usize; m + 1];
                for &a in &w[s..s + q] {
                    counts[a as usize] += 1;
                }
                if counts.iter().any(|c| c % 4 != 0) {
                    continue;
                }
                let lhs = (n as i64 - 1) * (len as i64 + 1);
                let rhs = n as i64 * q as i64 - 3;
                if lhs >= rhs {
                    let slot = best.entry((s, q)).or_insert(len);
                    *slot = (*slot).max(len);
                }
            }
        }
    }
    best.into_iter().map(|((s, q), len)| (s, len, q)).collect()
}

/// Applies a 1-based image table to a 1-based point.
pub fn apply(images: &[usize], point: usize) -> usize {
    images[point - 1]
}

/// Composes two 1-based image tables pointwise: x -> b(a(x)).
pub fn compose_tables(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x - 1]).collect()
}

/// phi(v) computed by literally tracking every point through every cycle.
pub fn phi_by_cycles(bits: &[u8], n: usize) -> Vec<usize> {
    (1..=n)
        .map(|start| {
            let mut x = start;
            for &b in bits {
                let len = if b == 0 { n - 1 } else { n };
                if x <= len {
                    x = if x == len { 1 } else { x + 1 };
                }
            }
            x
        })
        .collect()
}

/// Prefix of the Thue-Morse word: t[i] = parity of the bit count of i.
pub fn thue_morse(len: usize) -> Vec<u8> {
    (0..len).map(|i| (i.count_ones() % 2) as u8).collect()
}
