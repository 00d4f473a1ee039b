//! Exact univariate Laurent polynomials in T over the rationals.
//!
//! `PolyT` stores a contiguous coefficient block together with the exponent
//! of its first entry, so ordinary polynomials and Laurent polynomials (with
//! negative powers of T) share one representation. Every operation is exact.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Convenience constructor for an integer rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Convenience constructor for the fraction `numer/denom`.
pub fn rat_frac(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `base^exp` for possibly negative exponents. `None` when `base` is zero
/// and `exp` is negative.
pub fn rat_pow(base: &BigRational, exp: i64) -> Option<BigRational> {
    if exp >= 0 {
        let mut acc = BigRational::one();
        for _ in 0..exp {
            acc *= base;
        }
        Some(acc)
    } else {
        if base.is_zero() {
            return None;
        }
        rat_pow(&base.recip(), -exp)
    }
}

/// A Laurent polynomial in T with rational coefficients.
///
/// Invariant: `coeffs` is empty exactly for the zero polynomial; otherwise
/// its first and last entries are nonzero and `coeffs[i]` is the coefficient
/// of `T^(offset + i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyT {
    offset: i64,
    coeffs: Vec<BigRational>,
}

impl PolyT {
    pub fn zero() -> Self {
        PolyT { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyT::constant(BigRational::one())
    }

    /// The variable T itself.
    pub fn var() -> Self {
        PolyT::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        PolyT { offset: 0, coeffs: vec![c] }.normalized()
    }

    /// `c * T^exp`.
    pub fn monomial(c: BigRational, exp: i64) -> Self {
        PolyT { offset: exp, coeffs: vec![c] }.normalized()
    }

    /// Polynomial with the given coefficients of `T^0, T^1, ..`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        PolyT { offset: 0, coeffs }.normalized()
    }

    /// Polynomial with the given integer coefficients of `T^0, T^1, ..`.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        PolyT::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn normalized(mut self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            return PolyT::zero();
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.offset += lead_zeros as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Exponent of the highest nonzero term, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset + self.coeffs.len() as i64 - 1)
        }
    }

    /// Exponent of the lowest nonzero term, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// True when no negative power of T occurs.
    pub fn is_polynomial(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let idx = exp - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.offset + i as i64, c))
    }

    pub fn neg(&self) -> PolyT {
        PolyT { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &PolyT) -> PolyT {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.coeffs.len() as i64)
            .max(other.offset + other.coeffs.len() as i64);
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.offset - lo) as usize + i] += c;
        }
        PolyT { offset: lo, coeffs }.normalized()
    }

    pub fn sub(&self, other: &PolyT) -> PolyT {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyT) -> PolyT {
        if self.is_zero() || other.is_zero() {
            return PolyT::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PolyT { offset: self.offset + other.offset, coeffs }.normalized()
    }

    pub fn scale(&self, c: &BigRational) -> PolyT {
        if c.is_zero() {
            return PolyT::zero();
        }
        PolyT {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `T^exp`.
    pub fn mul_monomial(&self, exp: i64) -> PolyT {
        if self.is_zero() {
            return PolyT::zero();
        }
        PolyT { offset: self.offset + exp, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, exp: u32) -> PolyT {
        let mut acc = PolyT::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at `t`. Fails only when `t = 0` meets a negative
    /// power of T.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        let shift = rat_pow(t, self.offset).ok_or_else(|| {
            Error::Invalid("cannot evaluate a Laurent polynomial at T = 0".into())
        })?;
        Ok(acc * shift)
    }

    /// Composition T -> T + c. Defined for ordinary polynomials only.
    pub fn shift_var(&self, c: &BigRational) -> Result<PolyT> {
        if !self.is_polynomial() {
            return Err(Error::Invalid(
                "variable shift is defined for non-negative powers of T only".into(),
            ));
        }
        let shifted = PolyT {
            offset: 0,
            coeffs: vec![c.clone(), BigRational::one()],
        };
        let mut acc = PolyT::zero();
        let deg = match self.degree() {
            None => return Ok(PolyT::zero()),
            Some(d) => d,
        };
        for e in (0..=deg).rev() {
            acc = acc.mul(&shifted).add(&PolyT::constant(self.coeff(e)));
        }
        Ok(acc)
    }

    /// Exact division; `None` when `other` is zero or leaves a remainder.
    pub fn div_exact(&self, other: &PolyT) -> Option<PolyT> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PolyT::zero());
        }
        if self.coeffs.len() < other.coeffs.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - other.coeffs.len() + 1;
        let mut quot = vec![BigRational::zero(); qlen];
        let lead = other.coeffs.last().unwrap();
        for qi in (0..qlen).rev() {
            let factor = &rem[qi + other.coeffs.len() - 1] / lead;
            if !factor.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let delta = &factor * b;
                    rem[qi + j] -= delta;
                }
            }
            quot[qi] = factor;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(PolyT { offset: self.offset - other.offset, coeffs: quot }.normalized())
    }

    /// Canonical text form, terms ascending by exponent.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term_text(e, &abs));
        }
        out
    }
}

fn term_text(e: i64, abs_coeff: &BigRational) -> String {
    if e == 0 {
        return format!("{abs_coeff}");
    }
    let var = if e == 1 { "T".to_string() } else { format!("T^{e}") };
    if abs_coeff.is_one() {
        var
    } else {
        format!("{abs_coeff}*{var}")
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyT({})", self.to_text())
    }
}

/// Coefficient list `[T^0, T^1, ..]` as decimal strings ("p" or "p/q").
/// Requires an ordinary polynomial (no negative powers).
pub fn poly_to_coeff_strings(p: &PolyT) -> Result<Vec<String>> {
    if !p.is_polynomial() {
        return Err(Error::Invalid(
            "cannot serialize negative powers of T as a coefficient list".into(),
        ));
    }
    let deg = match p.degree() {
        None => return Ok(vec!["0".into()]),
        Some(d) => d,
    };
    Ok((0..=deg).map(|e| p.coeff(e).to_string()).collect())
}

/// Inverse of [`poly_to_coeff_strings`].
pub fn poly_from_coeff_strings(coeffs: &[String]) -> Result<PolyT> {
    let mut parsed = Vec::with_capacity(coeffs.len());
    for s in coeffs {
        let c: BigRational = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational coefficient {s:?}")))?;
        parsed.push(c);
    }
    Ok(PolyT::from_coeffs(parsed))
}

/// Interpolates the unique polynomial of degree <= `degree_bound` through
/// the given points, then checks every remaining point against it.
///
/// Fails when fewer than `degree_bound + 1` points are supplied, when two
/// abscissae coincide, or when the data cannot be matched within the bound.
pub fn interpolate(
    points: &[(BigRational, BigRational)],
    degree_bound: usize,
) -> Result<PolyT> {
    let need = degree_bound + 1;
    if points.len() < need {
        return Err(Error::Invalid(format!(
            "interpolation needs {} points for degree bound {}, got {}",
            need,
            degree_bound,
            points.len()
        )));
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].0 == points[j].0 {
                return Err(Error::Invalid(format!(
                    "duplicate interpolation abscissa {}",
                    points[i].0
                )));
            }
        }
    }
    // Newton divided differences on the first `need` points.
    let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<BigRational> = points[..need].iter().map(|(_, y)| y.clone()).collect();
    for j in 1..need {
        for i in (j..need).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = xs[i] - xs[i - j];
            dd[i] = num / den;
        }
    }
    let mut result = PolyT::constant(dd[need - 1].clone());
    for j in (0..need - 1).rev() {
        let factor = PolyT {
            offset: 0,
            coeffs: vec![-xs[j].clone(), BigRational::one()],
        };
        result = result.mul(&factor).add(&PolyT::constant(dd[j].clone()));
    }
    for (x, y) in &points[need..] {
        if &result.eval(x)? != y {
            return Err(Error::Invalid(format!(
                "degree bound exceeded: no polynomial of degree <= {degree_bound} \
                 matches all interpolation points"
            )));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> PolyT {
        PolyT::from_int_coeffs(coeffs)
    }

    #[test]
    fn product_of_linear_factors() {
        let a = p(&[-1, 1]); // T - 1
        let b = p(&[-3, 1]); // T - 3
        assert_eq!(a.mul(&b), p(&[3, -4, 1]));
    }

    #[test]
    fn evaluation_is_exact() {
        let q = p(&[3, -4, 1]);
        assert_eq!(q.eval(&rat(2)).unwrap(), rat(-1));
        assert_eq!(q.eval(&rat_frac(1, 2)).unwrap(), rat_frac(5, 4));
    }

    #[test]
    fn laurent_product_cancels_offsets() {
        let a = PolyT::monomial(rat(1), -2);
        let b = PolyT::monomial(rat(1), 3);
        assert_eq!(a.mul(&b), PolyT::var());
        assert_eq!(a.mul(&b).to_text(), "T");
    }

    #[test]
    fn laurent_evaluation_rejects_zero() {
        let a = PolyT::monomial(rat(1), -2);
        assert_eq!(a.eval(&rat(2)).unwrap(), rat_frac(1, 4));
        assert!(a.eval(&rat(0)).is_err());
    }

    #[test]
    fn addition_cancels_terms() {
        let a = p(&[1, 2, 1]);
        let b = p(&[0, -2, -1]);
        assert_eq!(a.add(&b), PolyT::one());
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a).to_text(), "0");
    }

    #[test]
    fn degree_and_valuation() {
        assert_eq!(p(&[3, -4, 1]).degree(), Some(2));
        assert_eq!(p(&[3, -4, 1]).valuation(), Some(0));
        assert_eq!(PolyT::zero().degree(), None);
        let l = PolyT::monomial(rat(5), -3);
        assert_eq!(l.degree(), Some(-3));
        assert!(!l.is_polynomial());
        assert!(p(&[1]).is_polynomial());
    }

    #[test]
    fn rendering_matches_canonical_form() {
        assert_eq!(p(&[3, -4, 1]).to_text(), "3 - 4*T + T^2");
        assert_eq!(p(&[0, 1]).to_text(), "T");
        assert_eq!(p(&[-1, 0, 2]).to_text(), "-1 + 2*T^2");
        assert_eq!(PolyT::monomial(rat(1), -1).add(&p(&[2])).to_text(), "T^-1 + 2");
        assert_eq!(PolyT::constant(rat_frac(1, 2)).to_text(), "1/2");
    }

    #[test]
    fn division_is_exact_or_refused() {
        let q = p(&[3, -4, 1]);
        assert_eq!(q.div_exact(&p(&[-1, 1])).unwrap(), p(&[-3, 1]));
        assert_eq!(q.div_exact(&p(&[1, 1])), None);
        assert_eq!(q.div_exact(&PolyT::zero()), None);
        // Laurent division adjusts the offset.
        let l = PolyT::monomial(rat(6), -1);
        let d = PolyT::monomial(rat(2), -3);
        assert_eq!(l.div_exact(&d).unwrap(), PolyT::monomial(rat(3), 2));
    }

    #[test]
    fn shift_var_composes() {
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.shift_var(&rat(1)).unwrap(), p(&[1, 2, 1]));
        assert!(PolyT::monomial(rat(1), -1).shift_var(&rat(1)).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let pts = vec![(rat(2), rat(-1)), (rat(3), rat(0)), (rat(4), rat(3))];
        assert_eq!(interpolate(&pts, 2).unwrap(), p(&[3, -4, 1]));
        // Extra consistent points are fine.
        let pts4 = vec![
            (rat(2), rat(-1)),
            (rat(3), rat(0)),
            (rat(4), rat(3)),
            (rat(5), rat(8)),
        ];
        assert_eq!(interpolate(&pts4, 2).unwrap(), p(&[3, -4, 1]));
    }

    #[test]
    fn interpolation_rejects_bound_violation() {
        let pts = vec![(rat(1), rat(1)), (rat(2), rat(2)), (rat(3), rat(5))];
        let err = interpolate(&pts, 1).unwrap_err();
        assert!(err.to_string().contains("degree bound exceeded"));
    }

    #[test]
    fn interpolation_rejects_duplicates_and_shortage() {
        let dup = vec![(rat(1), rat(1)), (rat(1), rat(2)), (rat(3), rat(5))];
        assert!(interpolate(&dup, 2).is_err());
        assert!(interpolate(&[(rat(1), rat(1))], 1).is_err());
    }

    #[test]
    fn coeff_string_round_trip() {
        let q = p(&[3, -4, 1]).scale(&rat_frac(1, 2));
        let strings = poly_to_coeff_strings(&q).unwrap();
        assert_eq!(strings, vec!["3/2", "-2", "1/2"]);
        assert_eq!(poly_from_coeff_strings(&strings).unwrap(), q);
        assert_eq!(poly_to_coeff_strings(&PolyT::zero()).unwrap(), vec!["0"]);
        assert!(poly_to_coeff_strings(&PolyT::monomial(rat(1), -1)).is_err());
    }

    #[test]
    fn powers_and_monomials() {
        assert_eq!(p(&[-1, 1]).pow(2), p(&[1, -2, 1]));
        assert_eq!(p(&[-1, 1]).pow(0), PolyT::one());
        assert_eq!(PolyT::var().mul_monomial(-1), PolyT::one());
        assert_eq!(p(&[1, 1]).coeff(0), rat(1));
        assert_eq!(p(&[1, 1]).coeff(5), rat(0));
    }
}
