//! Finite fields F_{p^m} with elements packed into `u64`.
//!
//! A prime-field element is its residue. An extension-field element encodes
//! the coefficients of its polynomial representative in base p: the element
//! `sum c_i x^i` is stored as `sum c_i p^i`. The reduction modulus is the
//! least monic irreducible of the requested degree under that same numeric
//! encoding, so a given (p, m) always names one concrete field.

use crate::error::{Error, Result};

/// Deterministic primality by trial division; inputs here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// A concrete finite field F_{p^m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    /// Coefficients of the reduction modulus, degree m, monic; only
    /// meaningful for m > 1.
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::SizeGuard(format!("prime {p} exceeds the 2^31 limit")));
        }
        Ok(FieldSpec { p, m: 1, modulus: Vec::new() })
    }

    /// The extension field F_{p^m}, m >= 1. The field order must fit the
    /// packed encoding comfortably; callers that enumerate codewords apply
    /// their own tighter guards.
    pub fn extension(p: u64, m: u32) -> Result<Self> {
        let base = FieldSpec::prime(p)?;
        if m == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        if m == 1 {
            return Ok(base);
        }
        let mut order: u64 = 1;
        for _ in 0..m {
            order = order
                .checked_mul(p)
                .filter(|&o| o <= 1 << 32)
                .ok_or_else(|| {
                    Error::SizeGuard(format!("field order {p}^{m} exceeds the 2^32 limit"))
                })?;
        }
        let modulus = least_irreducible(p, m);
        Ok(FieldSpec { p, m, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements, p^m.
    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Reduction modulus coefficients (constant term first), or `None` for
    /// a prime field.
    pub fn modulus(&self) -> Option<&[u64]> {
        if self.m == 1 {
            None
        } else {
            Some(&self.modulus)
        }
    }

    /// Embeds a prime-field residue into this field.
    pub fn embed(&self, scalar: u64) -> u64 {
        scalar % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return a * b % self.p;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * self.m as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.reduce(&mut prod);
        self.pack(&prod[..self.m as usize])
    }

    /// Multiplicative inverse via a^(q-2); `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.m as usize];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let mut out = 0u64;
        for &d in digits.iter().rev() {
            out = out * self.p + d;
        }
        out
    }

    /// Reduces a coefficient vector modulo the field modulus, in place; the
    /// result occupies the first m slots.
    fn reduce(&self, poly: &mut [u64]) {
        let m = self.m as usize;
        for i in (m..poly.len()).rev() {
            let c = poly[i];
            if c == 0 {
                continue;
            }
            poly[i] = 0;
            // x^m = -(modulus minus leading term)
            for j in 0..m {
                let sub = c * self.modulus[j] % self.p;
                poly[i - m + j] = (poly[i - m + j] + self.p - sub) % self.p;
            }
        }
    }
}

/// Least monic irreducible polynomial of degree m over F_p under the packed
/// numeric encoding. Returned as m+1 coefficients, constant term first.
fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let tail_count = p.pow(m as u32);
    for tail in 0..tail_count {
        let mut cand = digits_of(tail, p, m);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

fn digits_of(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

/// Trial division by every monic polynomial of degree 1 ..= deg/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if poly[0] == 0 {
        return deg == 1; // divisible by x unless it is x itself
    }
    for ddeg in 1..=deg / 2 {
        let tails = p.pow(ddeg as u32);
        for tail in 0..tails {
            let mut div = digits_of(tail, p, ddeg);
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap() % p;
        let top = rem.len() - 1;
        if lead != 0 {
            for (j, &c) in div.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + p - lead * c % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(is_prime(31));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(!is_prime(91)); // 7 * 13
        assert!(FieldSpec::prime(6).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.modulus(), None);
    }

    #[test]
    fn f4_uses_least_irreducible() {
        let f = FieldSpec::extension(2, 2).unwrap();
        // Irreducibles of degree 2 over F_2: only x^2 + x + 1, encoded [1,1,1].
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
        assert_eq!(f.order(), 4);
        // x * x = x + 1 in F_4: element x is 2, x + 1 is 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn f9_arithmetic_closes() {
        let f = FieldSpec::extension(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        // Least monic irreducible over F_3 of degree 2 is x^2 + 1.
        assert_eq!(f.modulus(), Some(&[1, 0, 1][..]));
        for a in 0..9u64 {
            for b in 0..9u64 {
                assert!(f.mul(a, b) < 9);
                assert!(f.add(a, b) < 9);
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
        for a in 1..9u64 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        // Frobenius sanity: a^9 = a for all a.
        for a in 0..9u64 {
            assert_eq!(f.pow(a, 9), a);
        }
    }

    #[test]
    fn f49_has_expected_order_structure() {
        let f = FieldSpec::extension(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        for a in 1..49u64 {
            assert_eq!(f.pow(a, 48), 1);
        }
    }

    #[test]
    fn embed_respects_prime_subfield() {
        let f = FieldSpec::extension(2, 3).unwrap();
        assert_eq!(f.embed(1), 1);
        assert_eq!(f.embed(5), 1);
        assert_eq!(f.add(f.embed(1), f.embed(1)), 0);
    }

    #[test]
    fn degenerate_extensions_rejected() {
        assert!(FieldSpec::extension(2, 0).is_err());
        assert!(FieldSpec::extension(4, 2).is_err());
        assert_eq!(FieldSpec::extension(5, 1).unwrap(), FieldSpec::prime(5).unwrap());
    }
}
