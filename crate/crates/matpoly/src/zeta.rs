//! The two-variable zeta polynomial: the coordinates of a coboundary
//! polynomial on the basis of uniform-matroid coboundary polynomials
//! X_{n,d}, X_{n,d+1}, .., X_{n,d+r} with r = n - d - d* + 2.

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::invariants::{uniform_chi_coeff, CoboundaryPoly};
use crate::poly::{poly_to_coeff_strings, PolyT};
use num::BigRational;
use serde::{Deserialize, Serialize};

/// P(Q, T) = sum_{i=0}^{r} coeffs[i](T) Q^i for a matroid with invariants
/// (n, k, d); d* is implied by r. Coefficients are rational polynomials in
/// T, and may be Laurent for duals.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaPoly {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub coeffs: Vec<PolyT>,
}

impl ZetaPoly {
    /// Q-degree bound r = n - d - d* + 2 implied by the coefficient count.
    pub fn r(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The smallest circuit size d* implied by (n, d, r).
    pub fn dstar(&self) -> usize {
        self.n - self.d + 2 - self.r()
    }

    /// Actual Q-degree: index of the highest nonzero coefficient.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// True when some coefficient has negative powers of T (possible after
    /// dualization).
    pub fn has_laurent(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_polynomial())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(PolyT::is_zero)
    }

    pub fn validate(&self) -> Result<()> {
        if self.coeffs.is_empty() {
            return Err(Error::Invalid("zeta polynomial has no coefficients".into()));
        }
        if self.d < 2 || self.d > self.n {
            return Err(Error::Invalid(format!(
                "zeta needs 2 <= d <= n, got d={}, n={}",
                self.d, self.n
            )));
        }
        if self.k > self.n {
            return Err(Error::Invalid(format!(
                "zeta rank {} exceeds ground set {}",
                self.k, self.n
            )));
        }
        if self.r() > self.n - self.d {
            return Err(Error::Invalid(format!(
                "zeta Q-degree bound {} exceeds n - d = {}",
                self.r(),
                self.n - self.d
            )));
        }
        Ok(())
    }

    /// Serialization view: one (valuation, coefficient strings) pair per
    /// Q-power, accommodating Laurent coefficients.
    pub fn coeff_parts(&self) -> Vec<ZetaCoeffJson> {
        self.coeffs
            .iter()
            .map(|c| {
                let val = c.valuation().unwrap_or(0).min(0);
                let shifted = c.mul_monomial(-val);
                ZetaCoeffJson {
                    valuation: val,
                    coeffs: poly_to_coeff_strings(&shifted)
                        .expect("shifted coefficient is a polynomial"),
                }
            })
            .collect()
    }
}

/// JSON form of one zeta coefficient: the polynomial `coeffs` shifted by
/// T^valuation (valuation <= 0; 0 for ordinary polynomials).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZetaCoeffJson {
    pub valuation: i64,
    pub coeffs: Vec<String>,
}

/// Extracts the zeta polynomial from a coboundary polynomial with known
/// d and d*. The system chi_j = sum_i P_i X_{n,d+i,j} is triangular in the
/// rows j = n-d, n-d-1, .., d*-2 with pivot X_{n,d+m,n-d-m} =
/// C(n,j)(T-1); after extraction every one of the n+1 rows is re-verified,
/// so success certifies the expansion exactly.
pub fn zeta_from_chi(chi: &CoboundaryPoly, d: usize, dstar: usize) -> Result<ZetaPoly> {
    chi.validate()?;
    let n = chi.n;
    if d < 2 || dstar < 2 || d > n || dstar > n {
        return Err(Error::Invalid(format!(
            "zeta extraction needs 2 <= d, d* <= n, got d={d}, d*={dstar}, n={n}"
        )));
    }
    if n + 2 < d + dstar {
        return Err(Error::Invalid(format!(
            "inconsistent parameters: r = n - d - d* + 2 is negative for \
             n={n}, d={d}, d*={dstar}"
        )));
    }
    let r = n + 2 - d - dstar;

    // Basis coefficients X_{n, d+i, j}; basis[i][j].
    let basis: Vec<Vec<PolyT>> = (0..=r)
        .map(|i| (0..=n).map(|j| uniform_chi_coeff(n, d + i, j)).collect())
        .collect();

    let mut p: Vec<PolyT> = Vec::with_capacity(r + 1);
    for m in 0..=r {
        let j = n - d - m;
        let mut num = chi.chi[j].clone();
        for (i, pi) in p.iter().enumerate() {
            num = num.sub(&pi.mul(&basis[i][j]));
        }
        let pivot = PolyT::from_int_coeffs(&[-1, 1])
            .scale(&BigRational::from_integer(binomial(n, j)));
        let quotient = num.div_exact(&pivot).ok_or_else(|| {
            Error::Integrity(format!(
                "row j={j} is not divisible by the pivot C({n},{j})(T-1); \
                 chi is not in the span of the uniform basis"
            ))
        })?;
        p.push(quotient);
    }

    for (j, expected) in chi.chi.iter().enumerate() {
        let mut sum = PolyT::zero();
        for (i, pi) in p.iter().enumerate() {
            sum = sum.add(&pi.mul(&basis[i][j]));
        }
        if sum != *expected {
            return Err(Error::Integrity(format!(
                "uniform-basis expansion fails at row j={j}: expected {expected}, got {sum}"
            )));
        }
    }

    Ok(ZetaPoly { n, k: chi.k, d, coeffs: p })
}

/// Reassembles the coboundary polynomial chi_j = sum_i P_i X_{n,d+i,j}.
/// Purely formal: a zero zeta gives the zero vector.
pub fn chi_from_zeta(z: &ZetaPoly) -> Result<CoboundaryPoly> {
    z.validate()?;
    let n = z.n;
    let mut chi = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut sum = PolyT::zero();
        for (i, pi) in z.coeffs.iter().enumerate() {
            if !pi.is_zero() {
                sum = sum.add(&pi.mul(&uniform_chi_coeff(n, z.d + i, j)));
            }
        }
        chi.push(sum);
    }
    Ok(CoboundaryPoly { n, k: z.k, chi })
}

/// Zeta polynomial of the dual matroid:
///
///   P*_i(T) = T^(i - k - 1 + d*) P_(r - i)(T),
///
/// an involution. The reversed order and T-shifts can introduce negative
/// powers of T; consumers check [`ZetaPoly::has_laurent`].
pub fn zeta_dual(z: &ZetaPoly) -> Result<ZetaPoly> {
    z.validate()?;
    let r = z.r();
    let dstar = z.dstar();
    if dstar < 2 {
        return Err(Error::Invalid(format!(
            "implied d* = {dstar} is below 2; parameters are inconsistent"
        )));
    }
    let k = z.k as i64;
    let coeffs: Vec<PolyT> = (0..=r)
        .map(|i| z.coeffs[r - i].mul_monomial(i as i64 - k - 1 + dstar as i64))
        .collect();
    Ok(ZetaPoly { n: z.n, k: z.n - z.k, d: dstar, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{coboundary, uniform_coboundary};
    use crate::matrix::Matrix;
    use crate::matroid::Matroid;
    use crate::poly::{rat, rat_frac};

    fn fano_chi() -> CoboundaryPoly {
        let m = Matrix::parse(
            "2 3 7\n1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1\n",
        )
        .unwrap();
        coboundary(&Matroid::from_matrix(m).unwrap()).unwrap()
    }

    #[test]
    fn uniform_zeta_is_one() {
        for (k, n) in [(2usize, 4usize), (2, 5), (3, 6), (4, 7)] {
            let d = n - k + 1;
            let chi = uniform_coboundary(n, d).unwrap();
            let z = zeta_from_chi(&chi, d, k + 1).unwrap();
            assert_eq!(z.r(), 0);
            assert!(z.is_one(), "U({k}, {n})");
            assert_eq!(z.q_degree(), Some(0));
        }
    }

    #[test]
    fn fano_zeta_frozen_values() {
        let z = zeta_from_chi(&fano_chi(), 4, 3).unwrap();
        assert_eq!(z.r(), 2);
        assert_eq!(z.dstar(), 3);
        // P = [1/5, -(T-4)/5, T/5]; the coefficients sum to 1.
        let fifth = rat_frac(1, 5);
        assert_eq!(z.coeffs[0], PolyT::constant(fifth.clone()));
        assert_eq!(
            z.coeffs[1],
            PolyT::from_int_coeffs(&[4, -1]).scale(&fifth)
        );
        assert_eq!(z.coeffs[2], PolyT::var().scale(&fifth));
        assert_eq!(z.q_degree(), Some(2));
        assert!(!z.has_laurent());
        assert!(!z.is_one());
    }

    #[test]
    fn zeta_round_trips_through_chi() {
        let chi = fano_chi();
        let z = zeta_from_chi(&chi, 4, 3).unwrap();
        assert_eq!(chi_from_zeta(&z).unwrap(), chi);

        let u = uniform_coboundary(6, 4).unwrap();
        let z = zeta_from_chi(&u, 4, 4).unwrap();
        assert_eq!(chi_from_zeta(&z).unwrap(), u);
    }

    #[test]
    fn fano_zeta_dual_matches_dual_chi() {
        let z = zeta_from_chi(&fano_chi(), 4, 3).unwrap();
        let zd = zeta_dual(&z).unwrap();
        assert_eq!((zd.n, zd.k, zd.d), (7, 4, 3));
        assert_eq!(zd.dstar(), 4);
        // Independent route: extract zeta from the dual coboundary.
        let star = crate::duality::chi_dual(&fano_chi()).unwrap();
        let direct = zeta_from_chi(&star, 3, 4).unwrap();
        assert_eq!(zd, direct);
        // This particular dual has no Laurent terms.
        assert!(!zd.has_laurent());
    }

    #[test]
    fn zeta_dual_is_an_involution() {
        let z = zeta_from_chi(&fano_chi(), 4, 3).unwrap();
        assert_eq!(zeta_dual(&zeta_dual(&z).unwrap()).unwrap(), z);
    }

    #[test]
    fn zeta_dual_can_be_laurent() {
        // Synthetic coefficients with d* < k + 1 force negative T-powers.
        let z = ZetaPoly {
            n: 6,
            k: 3,
            d: 3,
            coeffs: vec![
                PolyT::constant(rat_frac(1, 3)),
                PolyT::constant(rat_frac(1, 3)),
                PolyT::constant(rat_frac(1, 3)),
            ],
        };
        assert_eq!(z.dstar(), 3);
        let zd = zeta_dual(&z).unwrap();
        assert!(zd.has_laurent());
        assert_eq!(zd.coeffs[0], PolyT::monomial(rat_frac(1, 3), -1));
        assert_eq!(zeta_dual(&zd).unwrap(), z);
    }

    #[test]
    fn extraction_rejects_vectors_outside_the_span() {
        let mut chi = fano_chi();
        chi.chi[2] = PolyT::one(); // Fano has no size-2 flats
        let err = zeta_from_chi(&chi, 4, 3).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)), "{err}");
    }

    #[test]
    fn extraction_validates_parameters() {
        let chi = fano_chi();
        assert!(zeta_from_chi(&chi, 1, 3).is_err());
        assert!(zeta_from_chi(&chi, 4, 8).is_err());
        // d + d* > n + 2 gives negative r.
        assert!(zeta_from_chi(&chi, 6, 5).is_err());
    }

    #[test]
    fn coeff_parts_encode_laurent_valuations() {
        let z = ZetaPoly {
            n: 6,
            k: 3,
            d: 3,
            coeffs: vec![
                PolyT::monomial(rat(1), -2),
                PolyT::zero(),
                PolyT::one(),
            ],
        };
        let parts = z.coeff_parts();
        assert_eq!(parts[0].valuation, -2);
        assert_eq!(parts[0].coeffs, vec!["1"]);
        assert_eq!(parts[1].valuation, 0);
        assert_eq!(parts[1].coeffs, vec!["0"]);
        assert_eq!(parts[2].valuation, 0);
        assert_eq!(parts[2].coeffs, vec!["1"]);
    }
}
