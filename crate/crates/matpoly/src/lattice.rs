//! The lattice of flats of a simple matroid and its Möbius function.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use std::collections::HashMap;

/// Lattice of flats, ordered by inclusion, with the one-argument Möbius
/// function precomputed from the bottom of every interval.
///
/// Flats are indexed in (rank, bitmask) order, so indices respect the
/// partial order: x < y in the lattice implies index(x) < index(y).
#[derive(Debug)]
pub struct GeometricLattice {
    n: usize,
    k: usize,
    flats: Vec<u64>,
    ranks: Vec<u8>,
    /// `rank_start[i] .. rank_start[i + 1]` indexes the rank-i flats.
    rank_start: Vec<usize>,
    index_of: HashMap<u64, u32>,
    /// Row x lists (index of y, mu(x, y)) for every flat y containing x,
    /// ascending by index. The first entry is (x, 1).
    mobius_rows: Vec<Vec<(u32, i64)>>,
}

impl GeometricLattice {
    /// Builds the full lattice. The matroid must be simple; a loop or a
    /// parallel pair is reported by name.
    pub fn build(m: &Matroid) -> Result<Self> {
        if let Some(e) = m.find_loop() {
            return Err(Error::NotSimple(format!("element {e} is a loop")));
        }
        if let Some((a, b)) = m.find_parallel_pair() {
            return Err(Error::NotSimple(format!("elements {a} and {b} are parallel")));
        }
        let n = m.n();
        let k = m.k();
        let levels = m.flats_by_rank(k);
        debug_assert_eq!(levels.len(), k + 1);
        debug_assert_eq!(levels[0], vec![0], "simple matroids have an empty bottom flat");
        debug_assert_eq!(*levels[k].as_slice(), [m.full_mask()]);

        let mut flats = Vec::new();
        let mut ranks = Vec::new();
        let mut rank_start = vec![0usize];
        for (r, level) in levels.iter().enumerate() {
            flats.extend_from_slice(level);
            ranks.extend(std::iter::repeat_n(r as u8, level.len()));
            rank_start.push(flats.len());
        }
        let index_of: HashMap<u64, u32> =
            flats.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();

        let mut mobius_rows = Vec::with_capacity(flats.len());
        for (xi, &x) in flats.iter().enumerate() {
            // Flats containing x, ascending by index (hence by rank).
            let ups: Vec<u32> = (xi..flats.len())
                .filter(|&yi| flats[yi] & x == x)
                .map(|yi| yi as u32)
                .collect();
            let mut row: Vec<(u32, i64)> = Vec::with_capacity(ups.len());
            for (pos, &yi) in ups.iter().enumerate() {
                if pos == 0 {
                    row.push((yi, 1));
                    continue;
                }
                let y = flats[yi as usize];
                let mut sum: i64 = 0;
                for &(zi, mu) in &row {
                    if y & flats[zi as usize] == flats[zi as usize] {
                        sum = sum.checked_add(mu).ok_or_else(overflow)?;
                    }
                }
                row.push((yi, sum.checked_neg().ok_or_else(overflow)?));
            }
            mobius_rows.push(row);
        }
        Ok(GeometricLattice { n, k, flats, ranks, rank_start, index_of, mobius_rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lattice rank (rank of the full ground set).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flat_count(&self) -> usize {
        self.flats.len()
    }

    pub fn flat(&self, idx: usize) -> u64 {
        self.flats[idx]
    }

    pub fn rank_of_flat(&self, idx: usize) -> usize {
        self.ranks[idx] as usize
    }

    /// Indices of the rank-r flats.
    pub fn level(&self, r: usize) -> std::ops::Range<usize> {
        self.rank_start[r]..self.rank_start[r + 1]
    }

    /// Number of flats of each rank 0 ..= k.
    pub fn level_counts(&self) -> Vec<usize> {
        (0..=self.k).map(|r| self.level(r).len()).collect()
    }

    pub fn index_of_flat(&self, mask: u64) -> Option<usize> {
        self.index_of.get(&mask).map(|&i| i as usize)
    }

    /// Möbius row of flat `xi`: pairs (index of y, mu(x, y)) for all y >= x.
    pub fn mobius_row(&self, xi: usize) -> &[(u32, i64)] {
        &self.mobius_rows[xi]
    }

    /// mu(x, y) for flats x <= y given by bitmask.
    pub fn mobius(&self, x: u64, y: u64) -> Result<i64> {
        let xi = self
            .index_of_flat(x)
            .ok_or_else(|| Error::Invalid(format!("{x:#b} is not a flat")))?;
        let yi = self
            .index_of_flat(y)
            .ok_or_else(|| Error::Invalid(format!("{y:#b} is not a flat")))?;
        if x & y != x {
            return Err(Error::Invalid(format!(
                "flats {x:#b} and {y:#b} are incomparable"
            )));
        }
        let row = &self.mobius_rows[xi];
        let pos = row
            .binary_search_by_key(&(yi as u32), |&(i, _)| i)
            .expect("every superflat appears in the row");
        Ok(row[pos].1)
    }

    /// Doubly indexed Whitney number: sum of mu(x, y) over flats with
    /// rank(x) = i and corank k - rank(y) = j. Equivalently the coefficient
    /// of S^i T^j in the Möbius polynomial.
    pub fn whitney(&self, i: usize, j: usize) -> i64 {
        assert!(i <= self.k && j <= self.k, "Whitney indices exceed the rank");
        let target_rank = self.k - j;
        let mut sum: i64 = 0;
        for xi in self.level(i) {
            for &(yi, mu) in &self.mobius_rows[xi] {
                if self.ranks[yi as usize] as usize == target_rank {
                    sum = sum.checked_add(mu).expect("Whitney sum overflow");
                }
            }
        }
        sum
    }
}

fn overflow() -> Error {
    Error::Invalid("Mobius value exceeds 64-bit integer range".into())
}
