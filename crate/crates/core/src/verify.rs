//! Exhaustive search for short stabilizing factors in `f(A_m^3)`.
//!
//! A short stabilizing factor of `f(w)` has length `r(n - 1)` with
//! `p + 1 <= r < k <= 16`, so only `r <= 15` and `k = r + 1` need testing:
//! a permutation that does not fix `1..=r+1` fixes no larger initial segment
//! either. Any factor of that length in an `f`-image lies inside three
//! consecutive blocks, so enumerating every triple of letters covers every
//! context in which it can occur.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carpi::{carpi_params, CarpiParams, MorphismTable};
use crate::error::{Error, Result};
use crate::pansiot::{find_condition_i_factor, is_k_stabilizing_perm, ShortStabilizer};
use crate::perms::{phi_bits, PrefixTable};
use crate::words::BinaryWord;

/// Degrees settled by this search.
pub const VERIFIED_RANGE: std::ops::RangeInclusive<usize> = 27..=29;

/// Upper bound on `k` for any short stabilizing factor in `f(A_m*)`.
pub const MAX_K: usize = 16;

/// Factor lengths are `r(n - 1)`; every `f`-image context spans this many
/// blocks.
const BLOCKS: usize = 3;

/// The admissible `(r, k)` pairs for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpace {
    pub n: usize,
    pub params: CarpiParams,
    pub r_values: Vec<usize>,
    /// Set when the space is empty, explaining why.
    pub note: Option<String>,
}

impl SearchSpace {
    /// The `k` tested for multiplier `r`.
    pub fn k_of_r(&self, r: usize) -> usize {
        r + 1
    }

    pub fn factor_length(&self, r: usize) -> usize {
        r * (self.n - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.r_values.is_empty()
    }
}

/// Restricts the search to `|u| = r(n - 1)` with `p + 1 <= r <= 15`.
///
/// Outside `27..=29` this fails unless `allow_override` is set.
pub fn admissible_search_space(n: usize, allow_override: bool) -> Result<SearchSpace> {
    if !allow_override && !VERIFIED_RANGE.contains(&n) {
        return Err(Error::OutsideVerifiedRange(n));
    }
    let params = carpi_params(n)?;
    let r_values: Vec<usize> = (params.p + 1..MAX_K).collect();
    let note = r_values.is_empty().then(|| {
        format!(
            "p + 1 = {} exceeds {}: no factor length is admissible",
            params.p + 1,
            MAX_K - 1
        )
    });
    Ok(SearchSpace {
        n,
        params,
        r_values,
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RStats {
    pub r: usize,
    pub k: usize,
    pub factor_length: usize,
    pub words_examined: usize,
    pub factors_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_factors: Option<usize>,
}

/// A factor of `f(triple)` lying in `Stab_n(r + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub triple: String,
    pub start: usize,
    pub length: usize,
    pub r: usize,
    pub max_stabilized: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub uniform_length: usize,
    pub per_r: Vec<RStats>,
    pub violations: Vec<Violation>,
    pub elapsed_seconds: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing zeroed: identical for identical inputs.
    pub fn canonical_json(&self) -> String {
        VerificationReport {
            elapsed_seconds: 0.0,
            ..self.clone()
        }
        .to_json()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} m={} p={} uniform_length={}",
            self.n, self.m, self.p, self.uniform_length
        )?;
        if let Some(note) = &self.note {
            writeln!(f, "  note: {note}")?;
        }
        for s in &self.per_r {
            write!(
                f,
                "  r={} k={} factor_length={} words_examined={} factors_checked={}",
                s.r, s.k, s.factor_length, s.words_examined, s.factors_checked
            )?;
            if let Some(d) = s.distinct_factors {
                write!(f, " distinct_factors={d}")?;
            }
            writeln!(f)?;
        }
        if self.violations.is_empty() {
            writeln!(f, "  violations: none")?;
        } else {
            for v in &self.violations {
                writeln!(
                    f,
                    "  violation: triple={} start={} length={} r={} max_stabilized={}",
                    v.triple, v.start, v.length, v.r, v.max_stabilized
                )?;
            }
        }
        write!(f, "status: {} ({:.3}s)", self.status, self.elapsed_seconds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub parallelism: usize,
    pub allow_override: bool,
    /// Test each distinct factor once per `r`, across all triples.
    pub dedup: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            parallelism: 1,
            allow_override: false,
            dedup: false,
        }
    }
}

/// The `index`-th triple over `A_m` in lexicographic order.
fn triple(index: usize, m: usize) -> [u8; 3] {
    [
        (index / (m * m) + 1) as u8,
        (index / m % m + 1) as u8,
        (index % m + 1) as u8,
    ]
}

fn triple_name(t: &[u8; 3]) -> String {
    t.iter().map(|&a| char::from(b'0' + a)).collect()
}

struct TripleOutcome {
    counts: Vec<usize>,
    violations: Vec<Violation>,
}

fn check_triple(
    index: usize,
    space: &SearchSpace,
    morphism: &MorphismTable,
) -> Result<TripleOutcome> {
    let t = triple(index, space.params.m);
    let v = morphism.apply_letters(&t)?;
    let table = PrefixTable::from_bits(v.bits(), space.n)?;
    let mut counts = Vec::with_capacity(space.r_values.len());
    let mut violations = Vec::new();
    for &r in &space.r_values {
        let length = space.factor_length(r);
        let k = space.k_of_r(r);
        let positions = v.len() + 1 - length;
        for start in 0..positions {
            if table.factor_fixes_initial(start, start + length, k) {
                violations.push(Violation {
                    triple: triple_name(&t),
                    start,
                    length,
                    r,
                    max_stabilized: table.factor_max_stabilized(start, start + length),
                });
            }
        }
        counts.push(positions);
    }
    Ok(TripleOutcome { counts, violations })
}

fn run_pool<T: Send>(parallelism: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if parallelism == 0 {
        return Err(Error::ZeroParallelism);
    }
    if parallelism == 1 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .expect("thread pool");
    Ok(pool.install(job))
}

/// Checks that no factor of `f(w)`, `w` in `A_m^3`, of length `r(n - 1)` is
/// `(r + 1)`-stabilizing, for every admissible `r`.
pub fn verify_stabilizer_freeness(n: usize, parallelism: usize) -> Result<VerificationReport> {
    verify_with(
        n,
        &VerifyOptions {
            parallelism,
            ..VerifyOptions::default()
        },
    )
}

pub fn verify_with(n: usize, options: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let space = admissible_search_space(n, options.allow_override)?;
    let morphism = MorphismTable::new(space.params.clone());
    let m = space.params.m;
    let words = m.pow(BLOCKS as u32);

    let (per_r, violations) = if options.dedup {
        verify_deduplicated(&space, &morphism, words)?
    } else {
        let outcomes: Vec<Result<TripleOutcome>> = run_pool(options.parallelism, || {
            (0..words)
                .into_par_iter()
                .map(|i| check_triple(i, &space, &morphism))
                .collect()
        })?;
        let mut totals = vec![0usize; space.r_values.len()];
        let mut violations = Vec::new();
        for outcome in outcomes {
            let outcome = outcome?;
            totals
                .iter_mut()
                .zip(&outcome.counts)
                .for_each(|(t, c)| *t += c);
            violations.extend(outcome.violations);
        }
        let per_r = space
            .r_values
            .iter()
            .zip(totals)
            .map(|(&r, factors_checked)| RStats {
                r,
                k: space.k_of_r(r),
                factor_length: space.factor_length(r),
                words_examined: words,
                factors_checked,
                distinct_factors: None,
            })
            .collect();
        (per_r, violations)
    };

    let status = if violations.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(VerificationReport {
        n,
        m,
        p: space.params.p,
        uniform_length: space.params.uniform_length,
        per_r,
        violations,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        status,
        note: space.note.clone(),
    })
}

/// Single-threaded variant testing each distinct factor once per `r`.
fn verify_deduplicated(
    space: &SearchSpace,
    morphism: &MorphismTable,
    words: usize,
) -> Result<(Vec<RStats>, Vec<Violation>)> {
    let mut per_r = Vec::new();
    let mut violations = Vec::new();
    for &r in &space.r_values {
        let length = space.factor_length(r);
        let k = space.k_of_r(r);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut checked = 0;
        for index in 0..words {
            let t = triple(index, space.params.m);
            let v = morphism.apply_letters(&t)?;
            for start in 0..=v.len() - length {
                checked += 1;
                let bits = &v.bits()[start..start + length];
                if !seen.insert(bits.to_vec()) {
                    continue;
                }
                let image = phi_bits(bits, space.n)?;
                if is_k_stabilizing_perm(&image, k)? {
                    violations.push(Violation {
                        triple: triple_name(&t),
                        start,
                        length,
                        r,
                        max_stabilized: image.max_stabilized(),
                    });
                }
            }
        }
        per_r.push(RStats {
            r,
            k,
            factor_length: length,
            words_examined: words,
            factors_checked: checked,
            distinct_factors: Some(seen.len()),
        });
    }
    Ok((per_r, violations))
}

/// One report per `n` in `lo..=hi`.
pub fn verify_range(
    lo: usize,
    hi: usize,
    parallelism: usize,
    allow_override: bool,
) -> Result<Vec<VerificationReport>> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    let options = VerifyOptions {
        parallelism,
        allow_override,
        dedup: false,
    };
    (lo..=hi).map(|n| verify_with(n, &options)).collect()
}

/// Outcome of [`cross_check_sample`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub cells: usize,
    pub mismatches: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Re-derives random `(triple, start, r)` cells of the search from scratch
/// and compares them with the prefix-table path.
pub fn cross_check_sample(
    n: usize,
    sample_size: usize,
    seed: u64,
    allow_override: bool,
) -> Result<CrossCheck> {
    let space = admissible_search_space(n, allow_override)?;
    let morphism = MorphismTable::new(space.params.clone());
    let m = space.params.m;
    let words = m.pow(BLOCKS as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut cells = 0;
    if space.is_empty() {
        return Ok(CrossCheck { cells, mismatches });
    }
    for _ in 0..sample_size {
        let t = triple(rng.gen_range(0..words), m);
        let r = space.r_values[rng.gen_range(0..space.r_values.len())];
        let length = space.factor_length(r);
        let k = space.k_of_r(r);
        let v = morphism.apply_letters(&t)?;
        let start = rng.gen_range(0..=v.len() - length);
        let table = PrefixTable::from_bits(v.bits(), n)?;

        let factor = BinaryWord::new(v.bits()[start..start + length].to_vec())?;
        let direct = phi_bits(factor.bits(), n)?;
        let via_table = table.factor_image(start, start + length)?;
        let fast = table.factor_fixes_initial(start, start + length, k);
        let on_bits = crate::pansiot::is_k_stabilizing(&factor, n, k)?;
        let on_perm = is_k_stabilizing_perm(&via_table, k)?;
        cells += 1;
        if direct != via_table || fast != on_bits || on_bits != on_perm {
            mismatches.push(format!(
                "triple={} start={start} r={r}: direct={direct} table={via_table} \
                 fast={fast} bits={on_bits} perm={on_perm}",
                triple_name(&t)
            ));
        }
    }
    Ok(CrossCheck { cells, mismatches })
}

/// Exhaustive condition-(i) scan of one `f`-image triple: every factor
/// length below `(n - 1)^2` and every `k <= n - 1`, without the restriction
/// to lengths `r(n - 1)`.
pub fn legacy_exhaustive(n: usize, letters: [u8; 3]) -> Result<Option<ShortStabilizer>> {
    let morphism = MorphismTable::for_degree(n)?;
    let v = morphism.apply_letters(&letters)?;
    find_condition_i_factor(&v, n)
}
