//! Coboundary duality: the closed-form transform sending chi of a matroid
//! to chi of its dual, and the family of n+1 coefficient identities that
//! relate the two without any substitution.

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::invariants::CoboundaryPoly;
use crate::poly::PolyT;
use num::{BigInt, BigRational, Zero};

/// chi of the dual matroid, via
///
///   chi*(S, T) = (S - 1)^n T^(-k) chi((S + T - 1)/(S - 1), T).
///
/// Expanded coefficient-wise: chi*_v is the S^v coefficient of
/// sum_i chi_i(T) (S + T - 1)^i (S - 1)^(n - i), divided by T^k. The
/// division must leave ordinary polynomials; a residue of negative powers
/// is an integrity failure.
pub fn chi_dual(chi: &CoboundaryPoly) -> Result<CoboundaryPoly> {
    chi.validate()?;
    let n = chi.n;
    let k = chi.k;
    // Powers of the two linear forms, as S-coefficient vectors over Z[T].
    let s_plus = [PolyT::from_int_coeffs(&[-1, 1]), PolyT::one()]; // (T-1) + S
    let s_minus = [PolyT::one().neg(), PolyT::one()]; // -1 + S
    let mut a_pows: Vec<Vec<PolyT>> = vec![vec![PolyT::one()]];
    let mut b_pows: Vec<Vec<PolyT>> = vec![vec![PolyT::one()]];
    for i in 0..n {
        a_pows.push(s_mul(&a_pows[i], &s_plus));
        b_pows.push(s_mul(&b_pows[i], &s_minus));
    }

    let mut acc: Vec<PolyT> = vec![PolyT::zero(); n + 1];
    for (i, ci) in chi.chi.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let term = s_mul(&a_pows[i], &b_pows[n - i]);
        debug_assert_eq!(term.len(), n + 1);
        for (v, tv) in term.iter().enumerate() {
            acc[v] = acc[v].add(&ci.mul(tv));
        }
    }

    let mut out = Vec::with_capacity(n + 1);
    for (v, av) in acc.into_iter().enumerate() {
        let shifted = av.mul_monomial(-(k as i64));
        if !shifted.is_polynomial() {
            return Err(Error::Integrity(format!(
                "dual transform left negative powers of T in coefficient {v}: {shifted}"
            )));
        }
        out.push(shifted);
    }
    let star = CoboundaryPoly { n, k: n - k, chi: out };
    star.validate().map_err(|e| {
        Error::Integrity(format!("dual transform produced a malformed result: {e}"))
    })?;
    Ok(star)
}

/// Product of two S-coefficient vectors with entries in Z[T].
fn s_mul(a: &[PolyT], b: &[PolyT]) -> Vec<PolyT> {
    let mut out = vec![PolyT::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Chi,
    ChiStar,
}

/// One linear term `binom * T^t_exp * <side>_index`.
#[derive(Debug, Clone)]
pub struct EqTerm {
    pub side: Side,
    pub index: usize,
    pub binom: BigInt,
    pub t_exp: i64,
}

/// One identity, in homogeneous form: the terms sum to zero.
#[derive(Debug, Clone)]
pub struct DualEquation {
    pub v: usize,
    pub terms: Vec<EqTerm>,
}

/// The n+1 coefficient identities indexed by v = 0 ..= n, the binomial-
/// moment form of the dual transform:
///
///   T^(v-k) sum_{i=v}^{n} C(i, v) chi_i(T)
///       = sum_{i=n-v}^{n} C(i, n-v) chi*_i(T).
///
/// Returned with every term moved to one side (chi terms positive, chi*
/// terms negated), so a row evaluates to zero exactly when the identity
/// holds.
pub fn dual_identity_equations(n: usize, k: usize) -> Vec<DualEquation> {
    let mut eqs = Vec::with_capacity(n + 1);
    for v in 0..=n {
        let mut terms = Vec::new();
        for i in v..=n {
            terms.push(EqTerm {
                side: Side::Chi,
                index: i,
                binom: binomial(i, v),
                t_exp: v as i64 - k as i64,
            });
        }
        for i in (n - v)..=n {
            terms.push(EqTerm {
                side: Side::ChiStar,
                index: i,
                binom: -binomial(i, n - v),
                t_exp: 0,
            });
        }
        eqs.push(DualEquation { v, terms });
    }
    eqs
}

/// Result of checking the identity family on a concrete pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCheck {
    pub pass: bool,
    pub first_failing_v: Option<usize>,
    pub equations: usize,
}

/// Evaluates all n+1 identities exactly on (chi, chi*). Failure is a
/// reported outcome, not an error; errors are reserved for shape mismatch.
pub fn check_dual_identities(
    chi: &CoboundaryPoly,
    chi_star: &CoboundaryPoly,
) -> Result<DualityCheck> {
    chi.validate()?;
    chi_star.validate()?;
    if chi.n != chi_star.n || chi_star.k != chi.n - chi.k {
        return Err(Error::Invalid(format!(
            "parameter mismatch: ({}, {}) against dual ({}, {})",
            chi.n, chi.k, chi_star.n, chi_star.k
        )));
    }
    let mut first_failing_v = None;
    let eqs = dual_identity_equations(chi.n, chi.k);
    for eq in &eqs {
        let mut sum = PolyT::zero();
        for term in &eq.terms {
            let poly = match term.side {
                Side::Chi => &chi.chi[term.index],
                Side::ChiStar => &chi_star.chi[term.index],
            };
            if poly.is_zero() || term.binom.is_zero() {
                continue;
            }
            let scaled = poly
                .scale(&BigRational::from_integer(term.binom.clone()))
                .mul_monomial(term.t_exp);
            sum = sum.add(&scaled);
        }
        if !sum.is_zero() {
            first_failing_v = Some(eq.v);
            break;
        }
    }
    Ok(DualityCheck {
        pass: first_failing_v.is_none(),
        first_failing_v,
        equations: eqs.len(),
    })
}
