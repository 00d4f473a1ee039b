//! Randomized search for matroids whose Möbius pair (mu, mu*) fails to
//! determine the coboundary polynomial: sample matrices with prescribed
//! (q, k, n, d, d*), fingerprint (mu, mu*, chi) per accepted sample, and
//! flag any (mu, mu*) class that contains two distinct chi classes.
//!
//! Runs are deterministic functions of the configuration: attempt t draws
//! from stream t of a counter-based generator, so results are independent
//! of batch size, thread count, and interruption.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::invariants::{coboundary_of, mobius_poly_of};
use crate::lattice::GeometricLattice;
use crate::matrix::Matrix;
use crate::matroid::{full_mask, Matroid};
use crate::poly::PolyT;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::Instant;

/// Largest ground set the search accepts; every accepted sample builds
/// the flat lattices of both the matroid and its dual.
pub const MAX_SEARCH_GROUND_SET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    /// Required smallest cocircuit size (minimum distance) of each sample.
    pub d: usize,
    /// Required smallest circuit size (girth) of each sample.
    pub dstar: usize,
    /// Number of accepted samples to collect.
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on sampling attempts; defaults to 1000 * trials.
    #[serde(default)]
    pub attempt_cap: Option<u64>,
}

impl SearchConfig {
    pub fn cap(&self) -> u64 {
        self.attempt_cap.unwrap_or(1000 * self.trials as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.q) {
            return Err(Error::Invalid(format!(
                "sampling field order {} is not prime",
                self.q
            )));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::Invalid(format!(
                "need 1 <= k <= n, got k={}, n={}",
                self.k, self.n
            )));
        }
        if self.n > MAX_SEARCH_GROUND_SET {
            return Err(Error::SizeGuard(format!(
                "search ground set {} exceeds the cap {MAX_SEARCH_GROUND_SET}",
                self.n
            )));
        }
        if self.d < 3 || self.dstar < 3 {
            return Err(Error::Invalid(format!(
                "accepted samples must be simple and cosimple, so d and d* \
                 must be at least 3; got d={}, d*={}",
                self.d, self.dstar
            )));
        }
        if self.dstar > self.k + 1 || self.d > self.n - self.k + 1 {
            return Err(Error::Invalid(format!(
                "no (k={}, n={}) matroid has d={} and d*={}: the bounds are \
                 d <= n - k + 1 and d* <= k + 1",
                self.k, self.n, self.d, self.dstar
            )));
        }
        // trials = 0 is allowed and yields an empty run.
        Ok(())
    }
}

/// One accepted sample. The matrix entries are stored so any flagged
/// group can be recomputed from scratch. Wall time is measured but kept
/// out of the serialized form, which stays byte-deterministic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub attempt: u64,
    pub seed: u64,
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub dstar: usize,
    /// Row-major k x n matrix entries.
    pub entries: Vec<u64>,
    pub mu_fp: String,
    pub mu_dual_fp: String,
    pub chi_fp: String,
    #[serde(skip)]
    pub wall_time_ms: u64,
}

/// Uniform k x n matrix over F_q.
pub fn sample_matrix(rng: &mut impl Rng, q: u64, k: usize, n: usize) -> Matrix {
    let entries = (0..k * n).map(|_| rng.gen_range(0..q)).collect();
    Matrix::new(q, k, n, entries).expect("sampled entries lie in the field")
}

fn fingerprint(tag: &str, n: usize, k: usize, polys: &[PolyT]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{tag} n={n} k={k}\n"));
    for p in polys {
        h.update(p.to_text());
        h.update("\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs one attempt: draw, filter on (rank, d*, d), and on acceptance
/// compute the fingerprinted invariants. `trial` is filled in by the
/// caller once the acceptance order is known.
fn run_attempt(config: &SearchConfig, attempt: u64) -> Result<Option<TrialRecord>> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(attempt);
    let mat = sample_matrix(&mut rng, config.q, config.k, config.n);
    if mat.rank_cols(full_mask(config.n)) != config.k {
        return Ok(None);
    }
    let entries = mat.entries().to_vec();
    let m = Matroid::from_matrix(mat)?;
    if !m.girth_is(config.dstar) {
        return Ok(None);
    }
    let dual = m.dual();
    if !dual.girth_is(config.d) {
        return Ok(None);
    }

    let lat = GeometricLattice::build(&m)?;
    let lat_star = GeometricLattice::build(&dual)?;
    let mu = mobius_poly_of(&lat, config.n);
    let mu_star = mobius_poly_of(&lat_star, config.n);
    let chi = coboundary_of(&lat, config.n);
    Ok(Some(TrialRecord {
        trial: 0,
        attempt,
        seed: config.seed,
        q: config.q,
        k: config.k,
        n: config.n,
        d: config.d,
        dstar: config.dstar,
        entries,
        mu_fp: fingerprint("mu", config.n, config.k, &mu.mu),
        mu_dual_fp: fingerprint("mu", config.n, config.n - config.k, &mu_star.mu),
        chi_fp: fingerprint("chi", config.n, config.k, &chi.chi),
        wall_time_ms: start.elapsed().as_millis() as u64,
    }))
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// Total attempts consumed, including those loaded from a resumed file.
    pub attempted: u64,
    /// Records loaded from an existing artifact before sampling began.
    pub resumed: usize,
    pub records: Vec<TrialRecord>,
    pub wall_time_ms: u64,
}

fn load_records(path: &Path, config: &SearchConfig) -> Result<Vec<TrialRecord>> {
    let file = File::open(path)?;
    let mut records: Vec<TrialRecord> = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: TrialRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Parse(format!("record on line {}: {e}", idx + 1)))?;
        if rec.seed != config.seed
            || rec.q != config.q
            || rec.k != config.k
            || rec.n != config.n
            || rec.d != config.d
            || rec.dstar != config.dstar
        {
            return Err(Error::Invalid(format!(
                "record on line {} was produced by a different configuration; \
                 refusing to mix runs in one artifact",
                idx + 1
            )));
        }
        if rec.trial != records.len() {
            return Err(Error::Invalid(format!(
                "record on line {} has trial index {}, expected {}",
                idx + 1,
                rec.trial,
                records.len()
            )));
        }
        if let Some(prev) = records.last() {
            if rec.attempt <= prev.attempt {
                return Err(Error::Invalid(format!(
                    "record on line {} repeats attempt {}",
                    idx + 1,
                    rec.attempt
                )));
            }
        }
        records.push(rec);
    }
    Ok(records)
}

/// Collects `config.trials` accepted samples, appending each to `out` as
/// one JSON line. An existing artifact written by the same configuration
/// is loaded and extended, so interrupted runs resume where they left
/// off and produce the same bytes a single run would have.
pub fn run_search(config: &SearchConfig, out: Option<&Path>) -> Result<SearchReport> {
    config.validate()?;
    let started = Instant::now();
    let mut records = match out {
        Some(path) if path.exists() => load_records(path, config)?,
        _ => Vec::new(),
    };
    records.truncate(config.trials);
    let resumed = records.len();
    let mut next_attempt = records.last().map_or(0, |r| r.attempt + 1);
    let mut writer = match out {
        Some(path) => Some(OpenOptions::new().create(true).append(true).open(path)?),
        None => None,
    };
    let cap = config.cap();

    const BATCH: u64 = 64;
    'sampling: while records.len() < config.trials {
        if next_attempt >= cap {
            return Err(Error::SizeGuard(format!(
                "attempt cap {cap} reached with {} of {} samples accepted; \
                 raise attempt_cap or loosen the parameters",
                records.len(),
                config.trials
            )));
        }
        let attempts: Vec<u64> = (next_attempt..(next_attempt + BATCH).min(cap)).collect();
        let outcomes: Vec<Result<Option<TrialRecord>>> =
            attempts.par_iter().map(|&a| run_attempt(config, a)).collect();
        for (&attempt, outcome) in attempts.iter().zip(outcomes) {
            next_attempt = attempt + 1;
            if let Some(mut rec) = outcome? {
                rec.trial = records.len();
                if let Some(w) = writer.as_mut() {
                    let line = serde_json::to_string(&rec)
                        .map_err(|e| Error::Parse(format!("record encoding: {e}")))?;
                    writeln!(w, "{line}")?;
                    w.flush()?;
                }
                records.push(rec);
                if records.len() == config.trials {
                    break 'sampling;
                }
            }
        }
    }

    Ok(SearchReport {
        config: config.clone(),
        attempted: next_attempt,
        resumed,
        records,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

/// A (mu, mu*) class whose members disagree on chi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleGroup {
    pub mu_fp: String,
    pub mu_dual_fp: String,
    pub trials: Vec<usize>,
    /// The distinct chi fingerprints found in the class, sorted.
    pub chi_classes: Vec<String>,
}

/// Pure grouping pass: partitions records by (mu_fp, mu_dual_fp) and
/// returns the total class count plus the classes holding at least two
/// distinct chi fingerprints. No recomputation happens here.
pub fn group_candidates(records: &[TrialRecord]) -> (usize, Vec<CounterexampleGroup>) {
    let mut groups: BTreeMap<(&str, &str), BTreeMap<&str, Vec<usize>>> = BTreeMap::new();
    for r in records {
        groups
            .entry((&r.mu_fp, &r.mu_dual_fp))
            .or_default()
            .entry(&r.chi_fp)
            .or_default()
            .push(r.trial);
    }
    let total = groups.len();
    let candidates = groups
        .into_iter()
        .filter(|(_, by_chi)| by_chi.len() >= 2)
        .map(|((mu_fp, mu_dual_fp), by_chi)| {
            let mut trials: Vec<usize> = by_chi.values().flatten().copied().collect();
            trials.sort_unstable();
            CounterexampleGroup {
                mu_fp: mu_fp.to_string(),
                mu_dual_fp: mu_dual_fp.to_string(),
                trials,
                chi_classes: by_chi.keys().map(|s| s.to_string()).collect(),
            }
        })
        .collect();
    (total, candidates)
}

/// Recomputes a record's invariants from its stored matrix and checks
/// every stored field. A mismatch means the artifact does not reproduce.
fn reverify(rec: &TrialRecord) -> Result<()> {
    let broken = |what: &str| {
        Err(Error::Integrity(format!(
            "trial {} does not reproduce from its stored matrix: {what}",
            rec.trial
        )))
    };
    let mat = Matrix::new(rec.q, rec.k, rec.n, rec.entries.clone())?;
    if mat.rank_cols(full_mask(rec.n)) != rec.k {
        return broken("rank is not k");
    }
    let m = Matroid::from_matrix(mat)?;
    if !m.girth_is(rec.dstar) {
        return broken("girth is not d*");
    }
    let dual = m.dual();
    if !dual.girth_is(rec.d) {
        return broken("dual girth is not d");
    }
    let lat = GeometricLattice::build(&m)?;
    let lat_star = GeometricLattice::build(&dual)?;
    if fingerprint("mu", rec.n, rec.k, &mobius_poly_of(&lat, rec.n).mu) != rec.mu_fp {
        return broken("mu fingerprint differs");
    }
    let mu_star = mobius_poly_of(&lat_star, rec.n);
    if fingerprint("mu", rec.n, rec.n - rec.k, &mu_star.mu) != rec.mu_dual_fp {
        return broken("mu* fingerprint differs");
    }
    if fingerprint("chi", rec.n, rec.k, &coboundary_of(&lat, rec.n).chi) != rec.chi_fp {
        return broken("chi fingerprint differs");
    }
    Ok(())
}

/// Grouping plus confirmation: every member of a flagged class is
/// recomputed from its stored matrix before the class is reported, so a
/// corrupted artifact cannot manufacture a counterexample.
pub fn detect_counterexamples(
    records: &[TrialRecord],
) -> Result<(usize, Vec<CounterexampleGroup>)> {
    let (total, candidates) = group_candidates(records);
    for group in &candidates {
        for &trial in &group.trials {
            let rec = records
                .iter()
                .find(|r| r.trial == trial)
                .expect("grouped trial exists");
            reverify(rec)?;
        }
    }
    Ok((total, candidates))
}

/// What a finished run amounts to: sampling effort, class structure, and
/// any confirmed counterexample groups.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub dstar: usize,
    pub seed: u64,
    pub trials: usize,
    pub attempted: u64,
    pub groups: usize,
    pub counterexamples: Vec<CounterexampleGroup>,
}

pub fn summarize(report: &SearchReport) -> Result<SearchSummary> {
    let (groups, counterexamples) = detect_counterexamples(&report.records)?;
    Ok(SearchSummary {
        q: report.config.q,
        k: report.config.k,
        n: report.config.n,
        d: report.config.d,
        dstar: report.config.dstar,
        seed: report.config.seed,
        trials: report.records.len(),
        attempted: report.attempted,
        groups,
        counterexamples,
    })
}
