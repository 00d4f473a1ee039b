//! Matrices over prime fields and column-rank computations.

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// A k x n matrix over F_q (q prime), row-major, entries reduced mod q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn new(q: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        let field = FieldSpec::prime(q)?;
        if rows == 0 || cols == 0 {
            return Err(Error::Invalid("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e >= q) {
            return Err(Error::Invalid(format!(
                "entry {bad} is not reduced modulo {q}"
            )));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn q(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Column `c` as a vector of length `rows`.
    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.entry(r, c)).collect()
    }

    /// Rank of the column set selected by `mask` over F_q.
    pub fn rank_cols(&self, mask: u64) -> usize {
        let mut elim = Eliminator::new(self.field.clone());
        for c in 0..self.cols {
            if mask >> c & 1 == 1 {
                elim.insert(self.column(c));
            }
        }
        elim.rank()
    }

    /// Rank of the selected columns over an extension field containing F_q.
    /// The rank is invariant under field extension; this exists so tests can
    /// confirm that on concrete instances.
    pub fn rank_cols_in(&self, field: &FieldSpec, mask: u64) -> usize {
        assert_eq!(field.characteristic(), self.q(), "field does not contain F_q");
        let mut elim = Eliminator::new(field.clone());
        for c in 0..self.cols {
            if mask >> c & 1 == 1 {
                let col = self.column(c).iter().map(|&e| field.embed(e)).collect();
                elim.insert(col);
            }
        }
        elim.rank()
    }

    /// Parses the textual matrix format:
    ///
    /// ```text
    /// # optional comment lines
    /// q k n
    /// <k rows of n integers in [0, q)>
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let head: Vec<u64> = parse_ints(header)?;
        let [q, k, n] = head[..] else {
            return Err(Error::Parse(format!(
                "header must be 'q k n', got {header:?}"
            )));
        };
        let (k, n) = (k as usize, n as usize);
        let mut entries = Vec::with_capacity(k * n);
        for row in 0..k {
            let line = lines.next().ok_or_else(|| {
                Error::Parse(format!("expected {k} rows, found {row}"))
            })?;
            let vals = parse_ints(line)?;
            if vals.len() != n {
                return Err(Error::Parse(format!(
                    "row {row} has {} entries, expected {n}",
                    vals.len()
                )));
            }
            if let Some(bad) = vals.iter().find(|&&v| v >= q) {
                return Err(Error::Parse(format!(
                    "entry {bad} in row {row} is outside [0, {q})"
                )));
            }
            entries.extend(vals);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        Matrix::new(q, k, n, entries)
    }

    /// Renders in the format accepted by [`Matrix::parse`].
    pub fn render(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q(), self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer {tok:?}")))
        })
        .collect()
}

/// Incremental Gaussian elimination over a finite field. Basis vectors are
/// kept normalized with a leading 1 at their pivot position.
pub struct Eliminator {
    field: FieldSpec,
    /// (pivot index, reduced vector) pairs.
    basis: Vec<(usize, Vec<u64>)>,
}

impl Eliminator {
    pub fn new(field: FieldSpec) -> Self {
        Eliminator { field, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `vec` against the basis; inserts the residue if nonzero.
    /// Returns true when the vector was independent of the basis.
    pub fn insert(&mut self, vec: Vec<u64>) -> bool {
        match self.residue(vec) {
            None => false,
            Some((pivot, mut residue)) => {
                let inv = self.field.inv(residue[pivot]);
                for e in residue.iter_mut() {
                    *e = self.field.mul(*e, inv);
                }
                self.basis.push((pivot, residue));
                true
            }
        }
    }

    /// True when `vec` lies in the span of the basis.
    pub fn in_span(&self, vec: Vec<u64>) -> bool {
        self.residue(vec).is_none()
    }

    fn residue(&self, mut vec: Vec<u64>) -> Option<(usize, Vec<u64>)> {
        for (pivot, row) in &self.basis {
            let c = vec[*pivot];
            if c != 0 {
                for (e, b) in vec.iter_mut().zip(row) {
                    *e = self.field.sub(*e, self.field.mul(c, *b));
                }
            }
        }
        vec.iter().position(|&e| e != 0).map(|pivot| (pivot, vec))
    }
}
