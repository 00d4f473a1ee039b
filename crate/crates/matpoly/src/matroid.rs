//! Matroids as rank oracles over bitmask-encoded ground sets.
//!
//! Four constructions are supported: column matroids of matrices over prime
//! fields, uniform matroids, duals of existing matroids, and explicit rank
//! tables. Ground sets are limited to 62 elements so every subset fits in a
//! `u64`.

use crate::comb::Combinations;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const MAX_GROUND_SET: usize = 62;

#[derive(Debug, Clone)]
enum Kind {
    Representable(Arc<Matrix>),
    Uniform { k: usize },
    Dual(Box<Matroid>),
    ExplicitRank(Arc<Vec<u8>>),
}

/// A matroid on ground set {0, .., n-1}.
#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    full_rank: usize,
    kind: Kind,
}

impl Matroid {
    /// Column matroid of `matrix`: rank of a subset is the rank of the
    /// selected columns.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let n = matrix.cols();
        check_ground_set(n)?;
        let full_rank = matrix.rank_cols(full_mask(n));
        Ok(Matroid {
            n,
            full_rank,
            kind: Kind::Representable(Arc::new(matrix)),
        })
    }

    /// The uniform matroid U(k, n): rank of A is min(|A|, k).
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        check_ground_set(n)?;
        if k > n {
            return Err(Error::Invalid(format!(
                "uniform matroid needs k <= n, got k={k}, n={n}"
            )));
        }
        Ok(Matroid { n, full_rank: k, kind: Kind::Uniform { k } })
    }

    /// A matroid given by its full rank table, indexed by bitmask.
    pub fn from_rank_table(n: usize, table: Vec<u8>) -> Result<Self> {
        check_ground_set(n)?;
        if n > 24 {
            return Err(Error::SizeGuard(format!(
                "explicit rank tables are limited to n <= 24, got {n}"
            )));
        }
        if table.len() != 1usize << n {
            return Err(Error::Invalid(format!(
                "rank table must have 2^{n} entries, got {}",
                table.len()
            )));
        }
        if table[0] != 0 {
            return Err(Error::Invalid("rank of the empty set must be 0".into()));
        }
        if let Some(bad) = table.iter().find(|&&r| r as usize > n) {
            return Err(Error::Invalid(format!(
                "rank value {bad} exceeds the ground set size {n}"
            )));
        }
        let full_rank = table[(1usize << n) - 1] as usize;
        Ok(Matroid { n, full_rank, kind: Kind::ExplicitRank(Arc::new(table)) })
    }

    /// Parses either supported text format, telling them apart by the
    /// header line: `ranks n` for an explicit rank table, `q k n` for a
    /// matrix over a prime field.
    pub fn parse_any(text: &str) -> Result<Self> {
        let header = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::Parse("empty matroid description".into()))?;
        if header.split_whitespace().next() == Some("ranks") {
            Matroid::parse_rank_table(text)
        } else {
            Matroid::from_matrix(Matrix::parse(text)?)
        }
    }

    /// Parses the explicit rank table format:
    ///
    /// ```text
    /// # optional comments
    /// ranks n
    /// <2^n lines of "bitmask rank">
    /// ```
    pub fn parse_rank_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty rank table file".into()))?;
        let mut head = header.split_whitespace();
        if head.next() != Some("ranks") {
            return Err(Error::Parse(format!(
                "rank table header must be 'ranks n', got {header:?}"
            )));
        }
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad ground set size in header".into()))?;
        if head.next().is_some() {
            return Err(Error::Parse("trailing tokens in rank table header".into()));
        }
        check_ground_set(n)?;
        if n > 24 {
            return Err(Error::SizeGuard(format!(
                "explicit rank tables are limited to n <= 24, got {n}"
            )));
        }
        let size = 1usize << n;
        let mut table = vec![u8::MAX; size];
        let mut seen = 0usize;
        for line in lines {
            let mut toks = line.split_whitespace();
            let (Some(mask), Some(rank), None) = (toks.next(), toks.next(), toks.next())
            else {
                return Err(Error::Parse(format!("expected 'mask rank', got {line:?}")));
            };
            let mask: usize = mask
                .parse()
                .map_err(|_| Error::Parse(format!("bad subset mask {mask:?}")))?;
            let rank: u8 = rank
                .parse()
                .map_err(|_| Error::Parse(format!("bad rank value {rank:?}")))?;
            if mask >= size {
                return Err(Error::Parse(format!("mask {mask} out of range for n={n}")));
            }
            if table[mask] != u8::MAX {
                return Err(Error::Parse(format!("duplicate mask {mask}")));
            }
            table[mask] = rank;
            seen += 1;
        }
        if seen != size {
            return Err(Error::Parse(format!(
                "rank table lists {seen} subsets, expected {size}"
            )));
        }
        Matroid::from_rank_table(n, table)
    }

    /// Renders in the format accepted by [`Matroid::parse_rank_table`].
    pub fn render_rank_table(&self) -> String {
        let mut out = format!("ranks {}\n", self.n);
        for mask in 0..1u64 << self.n {
            out.push_str(&format!("{} {}\n", mask, self.rank(mask)));
        }
        out
    }

    /// The dual matroid, with rank r*(A) = |A| + r(E \ A) - r(E).
    /// Taking the dual twice unwraps; uniform duals stay uniform.
    pub fn dual(&self) -> Matroid {
        match &self.kind {
            Kind::Dual(inner) => (**inner).clone(),
            Kind::Uniform { k } => Matroid {
                n: self.n,
                full_rank: self.n - k,
                kind: Kind::Uniform { k: self.n - k },
            },
            _ => Matroid {
                n: self.n,
                full_rank: self.n - self.full_rank,
                kind: Kind::Dual(Box::new(self.clone())),
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the full ground set.
    pub fn k(&self) -> usize {
        self.full_rank
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.kind, Kind::Uniform { .. })
    }

    /// The representation matrix, when this matroid is a column matroid.
    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.kind {
            Kind::Representable(m) => Some(m),
            _ => None,
        }
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Rank of the subset encoded by `mask`.
    pub fn rank(&self, mask: u64) -> usize {
        debug_assert_eq!(mask & !self.full_mask(), 0, "mask outside ground set");
        match &self.kind {
            Kind::Representable(m) => m.rank_cols(mask),
            Kind::Uniform { k } => (mask.count_ones() as usize).min(*k),
            Kind::Dual(inner) => {
                mask.count_ones() as usize + inner.rank(self.full_mask() & !mask)
                    - inner.full_rank
            }
            Kind::ExplicitRank(table) => table[mask as usize] as usize,
        }
    }

    /// Closure of `mask`: all elements whose addition leaves the rank
    /// unchanged. For a matroid rank function one sweep suffices.
    pub fn closure(&self, mask: u64) -> u64 {
        let r = self.rank(mask);
        let mut out = mask;
        for e in 0..self.n {
            let bit = 1u64 << e;
            if out & bit == 0 && self.rank(mask | bit) == r {
                out |= bit;
            }
        }
        out
    }

    /// Smallest size of a dependent set (the girth), or `None` when every
    /// subset is independent (k = n).
    pub fn girth(&self) -> Option<usize> {
        if let Kind::Uniform { k } = self.kind {
            return if k == self.n { None } else { Some(k + 1) };
        }
        for c in 1..=self.full_rank + 1 {
            if c > self.n {
                break;
            }
            for mask in Combinations::new(self.n, c) {
                if self.rank(mask) < c {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Like [`Matroid::girth`] but abandons the scan once it can tell
    /// whether the girth equals `want`. Used by rejection sampling.
    pub fn girth_is(&self, want: usize) -> bool {
        if let Kind::Uniform { k } = self.kind {
            return if k == self.n { false } else { k + 1 == want };
        }
        for c in 1..=want.min(self.n) {
            for mask in Combinations::new(self.n, c) {
                if self.rank(mask) < c {
                    return c == want;
                }
            }
        }
        false
    }

    /// Some loop (rank-zero element), if one exists.
    pub fn find_loop(&self) -> Option<usize> {
        (0..self.n).find(|&e| self.rank(1 << e) == 0)
    }

    /// Some parallel pair (dependent two-element set of non-loops), if one
    /// exists.
    pub fn find_parallel_pair(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            if self.rank(1 << a) == 0 {
                continue;
            }
            for b in (a + 1)..self.n {
                if self.rank(1 << b) == 1 && self.rank((1 << a) | (1 << b)) == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// No loops and no parallel pairs; equivalently girth > 2.
    pub fn is_simple(&self) -> bool {
        self.find_loop().is_none() && self.find_parallel_pair().is_none()
    }

    /// Flats grouped by rank 0 ..= `upto`, each level sorted by bitmask.
    /// Level i+1 consists of the distinct closures cl(F + e) over level-i
    /// flats F and elements e outside F.
    pub fn flats_by_rank(&self, upto: usize) -> Vec<Vec<u64>> {
        let mut levels: Vec<Vec<u64>> = vec![vec![self.closure(0)]];
        for _ in 0..upto {
            let prev = levels.last().unwrap();
            let mut next = std::collections::BTreeSet::new();
            for &flat in prev {
                for e in 0..self.n {
                    let bit = 1u64 << e;
                    if flat & bit == 0 {
                        next.insert(self.closure(flat | bit));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        levels
    }

    /// Structural parameters. `d` is the smallest cocircuit size, computed
    /// as n minus the largest hyperplane; `dstar` is the girth. Degenerate
    /// cases (k = 0 or k = n) leave the corresponding parameter undefined
    /// and its simplicity flag false.
    pub fn params(&self) -> MatroidParams {
        let n = self.n;
        let k = self.full_rank;
        let d = if k == 0 {
            None
        } else {
            // A genuine matroid always yields k levels here; a corrupt rank
            // table may not, in which case d stays undefined and `verify`
            // reports the violated axiom.
            let levels = self.flats_by_rank(k - 1);
            levels.get(k - 1).map(|hyperplanes| {
                let max_size = hyperplanes
                    .iter()
                    .map(|f| f.count_ones() as usize)
                    .max()
                    .expect("flat levels are never empty");
                n - max_size
            })
        };
        let dstar = self.girth();
        MatroidParams {
            n,
            k,
            d,
            dstar,
            simple: dstar.is_some_and(|g| g > 2),
            cosimple: d.is_some_and(|d| d > 2),
        }
    }
}

fn check_ground_set(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("ground set must be nonempty".into()));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::SizeGuard(format!(
            "ground sets are limited to {MAX_GROUND_SET} elements, got {n}"
        )));
    }
    Ok(())
}

pub fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// The (n, k, d, d*) profile of a matroid plus simplicity flags.
/// `d` (smallest cocircuit) is `None` when k = 0; `dstar` (smallest
/// circuit) is `None` when k = n. `simple` means dstar > 2, `cosimple`
/// means d > 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub dstar: Option<usize>,
    pub simple: bool,
    pub cosimple: bool,
}

impl MatroidParams {
    /// One-line textual form: `n=7 k=3 d=4 d*=3 simple=true cosimple=true`.
    pub fn to_line(&self) -> String {
        let show = |v: Option<usize>| v.map_or("inf".to_string(), |x| x.to_string());
        format!(
            "n={} k={} d={} d*={} simple={} cosimple={}",
            self.n,
            self.k,
            show(self.d),
            show(self.dstar),
            self.simple,
            self.cosimple
        )
    }
}
