//! Exact linear algebra over Q and over Q(T).
//!
//! Rational systems are solved by fraction-free-ish Gaussian elimination on
//! `BigRational` entries. Systems whose coefficients are polynomials (or
//! Laurent polynomials) in T are solved by evaluating at enough integer
//! points, solving each specialization exactly, and interpolating the
//! unknowns back to polynomials under caller-supplied degree bounds.

use crate::error::{Error, Result};
use crate::poly::{interpolate, rat, PolyT};
use num::{BigRational, Zero};

/// Outcome of an exact rational solve.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Unique(Vec<BigRational>),
    /// Consistent but rank-deficient; `kernel_dim` = unknowns - rank.
    Underdetermined { rank: usize, kernel_dim: usize },
    /// `row` indexes the offending equation in the caller's ordering.
    Inconsistent { row: usize },
}

/// Solves `a x = b` exactly. `a` is row-major; all rows must have equal
/// length. Unique solutions are verified against every original equation
/// before being returned.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> SolveOutcome {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side disagree");
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<(Vec<BigRational>, BigRational, usize)> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            assert_eq!(row.len(), cols, "ragged coefficient matrix");
            (row.clone(), rhs.clone(), i)
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0usize;
    for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
        let Some(pr) = (next_row..rows).find(|&r| !aug[r].0[col].is_zero()) else {
            continue;
        };
        aug.swap(next_row, pr);
        let inv = aug[next_row].0[col].recip();
        for c in col..cols {
            let v = &aug[next_row].0[c] * &inv;
            aug[next_row].0[c] = v;
        }
        aug[next_row].1 = &aug[next_row].1 * &inv;
        for r in 0..rows {
            if r != next_row && !aug[r].0[col].is_zero() {
                let factor = aug[r].0[col].clone();
                for c in col..cols {
                    let delta = &factor * &aug[next_row].0[c];
                    aug[r].0[c] -= delta;
                }
                let delta = &factor * &aug[next_row].1;
                aug[r].1 -= delta;
            }
        }
        *pivot_slot = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    let rank = next_row;

    for (coeffs, rhs, orig) in &aug[rank..] {
        debug_assert!(coeffs.iter().all(BigRational::is_zero));
        if !rhs.is_zero() {
            return SolveOutcome::Inconsistent { row: *orig };
        }
    }
    if rank < cols {
        return SolveOutcome::Underdetermined { rank, kernel_dim: cols - rank };
    }

    let mut x = vec![BigRational::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        x[col] = aug[pivot.expect("full rank")].1.clone();
    }
    for (row, rhs) in a.iter().zip(b) {
        let lhs: BigRational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
        debug_assert_eq!(&lhs, rhs, "solution failed residual check");
    }
    SolveOutcome::Unique(x)
}

/// One equation with coefficients in Q(T): `sum coeffs[j] * x_j = rhs`.
/// Entries may be Laurent polynomials; they are only ever evaluated at
/// integer points t >= 2.
#[derive(Debug, Clone)]
pub struct PolyRow {
    pub coeffs: Vec<PolyT>,
    pub rhs: PolyT,
}

/// Outcome of a polynomial-system solve.
#[derive(Debug, Clone, PartialEq)]
pub enum PolySolveOutcome {
    Unique(Vec<PolyT>),
    Underdetermined { rank: usize, kernel_dim: usize },
}

/// Solves a linear system over Q(T) whose solution, if unique, consists of
/// polynomials with `deg x_j <= bounds[j]`.
///
/// Strategy: evaluate all rows at integer points t = 2, 3, .. and solve each
/// rational specialization exactly. Points where the coefficient matrix
/// drops below its generic rank are discarded. With `max(bounds) + 2`
/// well-behaved points the unknowns are interpolated and re-verified, so a
/// unique answer is exact, never heuristic.
///
/// An inconsistent specialization is an integrity error: inputs for which a
/// polynomial solution exists stay consistent at every evaluation point.
pub fn solve_poly_system(rows: &[PolyRow], bounds: &[usize]) -> Result<PolySolveOutcome> {
    let unknowns = bounds.len();
    for row in rows {
        assert_eq!(row.coeffs.len(), unknowns, "ragged polynomial system");
    }
    if unknowns == 0 {
        if let Some(row) = rows.iter().find(|r| !r.rhs.is_zero()) {
            return Err(Error::Integrity(format!(
                "empty system has nonzero residual {}",
                row.rhs
            )));
        }
        return Ok(PolySolveOutcome::Unique(Vec::new()));
    }

    let needed = bounds.iter().max().copied().unwrap_or(0) + 2;
    let scan_cap = 10 * needed + 50;

    // (t, specialized solution) for points achieving the best rank seen.
    let mut kept: Vec<(BigRational, Vec<BigRational>)> = Vec::new();
    let mut best_rank = 0usize;
    let mut t_int: i64 = 2;
    let mut scanned = 0usize;
    while kept.len() < needed && scanned < scan_cap {
        let t = rat(t_int);
        t_int += 1;
        scanned += 1;
        let mut a = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        for row in rows {
            let coeffs: Result<Vec<BigRational>> =
                row.coeffs.iter().map(|c| c.eval(&t)).collect();
            a.push(coeffs?);
            b.push(row.rhs.eval(&t)?);
        }
        match solve_exact(&a, &b) {
            SolveOutcome::Inconsistent { row } => {
                return Err(Error::Integrity(format!(
                    "system is inconsistent at T = {t} (equation {row}); \
                     the inputs admit no polynomial solution"
                )));
            }
            SolveOutcome::Unique(x) => {
                if best_rank < unknowns {
                    best_rank = unknowns;
                    kept.clear();
                }
                kept.push((t, x));
            }
            SolveOutcome::Underdetermined { rank, .. } => {
                if rank > best_rank {
                    best_rank = rank;
                    kept.clear();
                }
                if rank == best_rank && best_rank < unknowns {
                    // Rank-deficient points carry no solution vector; they
                    // only witness the generic rank.
                    kept.push((t, Vec::new()));
                }
            }
        }
    }

    if best_rank < unknowns {
        return Ok(PolySolveOutcome::Underdetermined {
            rank: best_rank,
            kernel_dim: unknowns - best_rank,
        });
    }
    if kept.len() < needed {
        return Err(Error::Integrity(format!(
            "could not collect {needed} full-rank evaluation points \
             (got {} out of {scanned} scanned)",
            kept.len()
        )));
    }

    let mut solution = Vec::with_capacity(unknowns);
    for (j, &bound) in bounds.iter().enumerate() {
        let pts: Vec<(BigRational, BigRational)> =
            kept.iter().map(|(t, x)| (t.clone(), x[j].clone())).collect();
        let poly = interpolate(&pts, bound).map_err(|e| {
            Error::Integrity(format!(
                "unknown {j} does not interpolate within degree {bound}: {e}"
            ))
        })?;
        solution.push(poly);
    }
    Ok(PolySolveOutcome::Unique(solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_frac;

    fn rows(m: &[&[i64]]) -> Vec<Vec<BigRational>> {
        m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn rhs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn identity_system_is_unique() {
        let a = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let out = solve_exact(&a, &rhs(&[1, 2, 3]));
        assert_eq!(out, SolveOutcome::Unique(rhs(&[1, 2, 3])));
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let a = rows(&[&[1, 0]]);
        assert_eq!(
            solve_exact(&a, &rhs(&[1])),
            SolveOutcome::Underdetermined { rank: 1, kernel_dim: 1 }
        );
    }

    #[test]
    fn inconsistency_is_distinguished() {
        let a = rows(&[&[1, 0], &[1, 0]]);
        assert_eq!(
            solve_exact(&a, &rhs(&[1, 2])),
            SolveOutcome::Inconsistent { row: 1 }
        );
    }

    #[test]
    fn rational_pivots_are_exact() {
        // 2x + y = 7, x - y = -1  =>  x = 2, y = 3
        let a = rows(&[&[2, 1], &[1, -1]]);
        let out = solve_exact(&a, &rhs(&[7, -1]));
        assert_eq!(out, SolveOutcome::Unique(rhs(&[2, 3])));
        // A system with a genuinely fractional answer.
        let a = rows(&[&[2, 0], &[0, 4]]);
        let out = solve_exact(&a, &rhs(&[1, 1]));
        assert_eq!(
            out,
            SolveOutcome::Unique(vec![rat_frac(1, 2), rat_frac(1, 4)])
        );
    }

    #[test]
    fn redundant_consistent_rows_are_fine() {
        let a = rows(&[&[1, 1], &[2, 2], &[1, -1]]);
        let out = solve_exact(&a, &rhs(&[3, 6, 1]));
        assert_eq!(out, SolveOutcome::Unique(rhs(&[2, 1])));
    }

    #[test]
    fn poly_system_recovers_polynomials() {
        // x0 + x1 = T^2 + T, x0 - x1 = T^2 - T  =>  x0 = T^2, x1 = T
        let rows = vec![
            PolyRow {
                coeffs: vec![PolyT::one(), PolyT::one()],
                rhs: PolyT::from_int_coeffs(&[0, 1, 1]),
            },
            PolyRow {
                coeffs: vec![PolyT::one(), PolyT::one().neg()],
                rhs: PolyT::from_int_coeffs(&[0, -1, 1]),
            },
        ];
        let out = solve_poly_system(&rows, &[2, 2]).unwrap();
        assert_eq!(
            out,
            PolySolveOutcome::Unique(vec![
                PolyT::from_int_coeffs(&[0, 0, 1]),
                PolyT::var()
            ])
        );
    }

    #[test]
    fn poly_system_with_laurent_coefficients() {
        // (T^-1) x0 = 1  =>  x0 = T
        let rows = vec![PolyRow {
            coeffs: vec![PolyT::monomial(rat(1), -1)],
            rhs: PolyT::one(),
        }];
        let out = solve_poly_system(&rows, &[1]).unwrap();
        assert_eq!(out, PolySolveOutcome::Unique(vec![PolyT::var()]));
    }

    #[test]
    fn poly_system_detects_underdetermined() {
        let rows = vec![PolyRow {
            coeffs: vec![PolyT::one(), PolyT::one()],
            rhs: PolyT::var(),
        }];
        let out = solve_poly_system(&rows, &[1, 1]).unwrap();
        assert_eq!(
            out,
            PolySolveOutcome::Underdetermined { rank: 1, kernel_dim: 1 }
        );
    }

    #[test]
    fn poly_system_flags_inconsistency() {
        // x0 = T and x0 = T + 1 cannot both hold.
        let rows = vec![
            PolyRow { coeffs: vec![PolyT::one()], rhs: PolyT::var() },
            PolyRow {
                coeffs: vec![PolyT::one()],
                rhs: PolyT::from_int_coeffs(&[1, 1]),
            },
        ];
        let err = solve_poly_system(&rows, &[1]).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)), "{err}");
    }

    #[test]
    fn poly_system_ignores_rank_dropping_points(){
        // (T - 2) x0 = (T - 2) T: rank drops at t = 2 but the solution T is
        // still pinned down by the remaining points.
        let factor = PolyT::from_int_coeffs(&[-2, 1]);
        let rows = vec![PolyRow {
            coeffs: vec![factor.clone()],
            rhs: factor.mul(&PolyT::var()),
        }];
        let out = solve_poly_system(&rows, &[1]).unwrap();
        assert_eq!(out, PolySolveOutcome::Unique(vec![PolyT::var()]));
    }

    #[test]
    fn empty_system_checks_residuals() {
        let ok = vec![PolyRow { coeffs: vec![], rhs: PolyT::zero() }];
        assert_eq!(
            solve_poly_system(&ok, &[]).unwrap(),
            PolySolveOutcome::Unique(vec![])
        );
        let bad = vec![PolyRow { coeffs: vec![], rhs: PolyT::one() }];
        assert!(solve_poly_system(&bad, &[]).is_err());
    }
}
