//! Small combinatorial helpers: exact binomial coefficients and subset
//! iteration over bitmask-encoded sets.

use num::{BigInt, One, Zero};

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Iterates over all k-element subsets of {0, .., n-1} as bitmasks, in
/// increasing numeric order (Gosper's hack).
pub struct Combinations {
    next: Option<u64>,
    limit: u64,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 62, "bitmask ground sets are limited to 62 elements");
        if k > n {
            return Combinations { next: None, limit: 0 };
        }
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        Combinations { next: Some(first), limit: 1u64 << n }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack: next larger integer with the same popcount.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(62, 31), "465428353255261088".parse().unwrap());
    }

    #[test]
    fn combinations_enumerate_all() {
        let got: Vec<u64> = Combinations::new(4, 2).collect();
        assert_eq!(got, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(Combinations::new(3, 4).count(), 0);
        assert_eq!(Combinations::new(10, 4).count(), 210);
    }
}
