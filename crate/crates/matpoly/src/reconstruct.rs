//! Reconstruction of a coboundary polynomial from the Möbius polynomials
//! of a matroid and of its dual.
//!
//! Both routes start from the same seeds: mu determines chi_j for
//! j <= d* - 2 (flats that small are just the small subsets), chi_j = 0 on
//! n - d < j < n, chi_n = 1, and symmetrically on the dual side. The
//! linear route closes the remaining gap with the binomial-moment
//! identities relating chi and chi*; the zeta route expands chi on the
//! uniform basis and solves for the r + 1 = n - d - d* + 3 zeta
//! coefficients. Either system determines chi exactly when
//! 2(d + d*) >= n + 3.

use crate::comb::binomial;
use crate::duality::{check_dual_identities, chi_dual, dual_identity_equations, Side};
use crate::error::{Error, Result};
use crate::invariants::{uniform_chi_coeff, CoboundaryPoly, MobiusPoly};
use crate::poly::PolyT;
use crate::solve::{solve_poly_system, PolyRow, PolySolveOutcome};
use crate::zeta::{chi_from_zeta, zeta_dual, ZetaPoly};
use num::{BigRational, Signed};
use serde_json::{json, Value};

/// Reads the smallest circuit size off a Möbius polynomial: the T^(k-i)
/// coefficient of mu_i counts the rank-i flats, which number C(n, i)
/// exactly while i-subsets are closed, i.e. for i <= d* - 2.
pub fn dstar_from_mobius(mu: &MobiusPoly) -> Result<usize> {
    mu.validate()?;
    for i in 0..=mu.k {
        let flats = mu.mu[i].coeff(mu.k as i64 - i as i64);
        if !flats.is_integer() || flats.is_negative() {
            return Err(Error::Invalid(format!(
                "rank-{i} flat count {flats} is not a nonnegative integer"
            )));
        }
        let free = BigRational::from_integer(binomial(mu.n, i));
        if flats > free {
            return Err(Error::Invalid(format!(
                "rank-{i} flat count {flats} exceeds the {free} subsets of size {i}"
            )));
        }
        if flats < free {
            return Ok(i + 1);
        }
    }
    // Every subset is a flat; only the free matroid (k = n) gets here.
    Ok(mu.k + 1)
}

/// A coboundary polynomial with some S-coefficients still unknown.
#[derive(Debug, Clone)]
pub struct PartialChi {
    pub n: usize,
    pub k: usize,
    pub known: Vec<Option<PolyT>>,
}

impl PartialChi {
    pub fn unknown_indices(&self) -> Vec<usize> {
        (0..=self.n).filter(|&j| self.known[j].is_none()).collect()
    }

    /// Completes the vector with `values` in unknown-index order.
    pub fn fill(&self, values: &[PolyT]) -> CoboundaryPoly {
        let idx = self.unknown_indices();
        assert_eq!(idx.len(), values.len(), "fill arity mismatch");
        let mut chi: Vec<PolyT> = self
            .known
            .iter()
            .map(|c| c.clone().unwrap_or_else(PolyT::zero))
            .collect();
        for (j, v) in idx.into_iter().zip(values) {
            chi[j] = v.clone();
        }
        CoboundaryPoly { n: self.n, k: self.k, chi }
    }

    /// True when `chi` agrees with every seeded coefficient.
    pub fn agrees_with(&self, chi: &CoboundaryPoly) -> bool {
        chi.n == self.n
            && chi.k == self.k
            && self
                .known
                .iter()
                .zip(&chi.chi)
                .all(|(seed, c)| seed.as_ref().is_none_or(|s| s == c))
    }
}

/// Everything the Möbius pair determines before any system is solved.
#[derive(Debug, Clone)]
pub struct Seeds {
    pub chi: PartialChi,
    pub chi_star: PartialChi,
    pub d: usize,
    pub dstar: usize,
}

/// Validates a Möbius pair and lays out the seeded partial coboundary
/// vectors for the matroid and its dual. The derived parameters satisfy
/// d <= n - k + 1 and d* <= k + 1, so the seeded regions never collide.
pub fn seed_partial(mu: &MobiusPoly, mu_star: &MobiusPoly) -> Result<Seeds> {
    mu.validate()?;
    mu_star.validate()?;
    let n = mu.n;
    if mu_star.n != n || mu.k + mu_star.k != n {
        return Err(Error::Invalid(format!(
            "Mobius pair shapes disagree: ({}, {}) against ({}, {})",
            mu.n, mu.k, mu_star.n, mu_star.k
        )));
    }
    for (label, m) in [("mu", mu), ("mu_star", mu_star)] {
        let total = m.mu.iter().fold(PolyT::zero(), |acc, p| acc.add(p));
        if total != PolyT::monomial(BigRational::from_integer(1.into()), m.k as i64) {
            return Err(Error::Invalid(format!(
                "{label} sums to {total}, not T^{}; not a Mobius polynomial",
                m.k
            )));
        }
    }
    let dstar = dstar_from_mobius(mu)?;
    let d = dstar_from_mobius(mu_star)?;
    if dstar < 3 {
        return Err(Error::Invalid(format!(
            "derived d* = {dstar}: mu is not the Mobius polynomial of a simple matroid"
        )));
    }
    if d < 3 {
        return Err(Error::Invalid(format!(
            "derived d = {d}: mu_star is not the Mobius polynomial of a simple matroid"
        )));
    }

    let seed = |m: &MobiusPoly, girth: usize, codist: usize| -> PartialChi {
        let mut known: Vec<Option<PolyT>> = vec![None; n + 1];
        for (j, slot) in known.iter_mut().enumerate().take(girth - 1) {
            *slot = Some(m.mu[j].clone());
        }
        for slot in known.iter_mut().take(n).skip(n - codist + 1) {
            *slot = Some(PolyT::zero());
        }
        known[n] = Some(PolyT::one());
        PartialChi { n, k: m.k, known }
    };
    Ok(Seeds {
        chi: seed(mu, dstar, d),
        chi_star: seed(mu_star, d, dstar),
        d,
        dstar,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Linear,
    Zeta,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Linear => "linear",
            Method::Zeta => "zeta",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Unique { chi: CoboundaryPoly },
    Underdetermined { kernel_dim: usize },
}

/// What a reconstruction attempt did and whether its answer is certified.
#[derive(Debug, Clone)]
pub struct ReconstructionReport {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub dstar: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub bound_holds: bool,
    pub outcome: Outcome,
    pub verified: bool,
}

impl ReconstructionReport {
    pub fn to_json(&self) -> Value {
        let outcome = match &self.outcome {
            Outcome::Unique { chi } => json!({
                "kind": "unique",
                "chi": { "n": chi.n, "k": chi.k, "coeffs": chi.coeff_strings() },
            }),
            Outcome::Underdetermined { kernel_dim } => json!({
                "kind": "underdetermined",
                "kernel_dim": kernel_dim,
            }),
        };
        json!({
            "method": self.method.name(),
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "dstar": self.dstar,
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "bound_holds": self.bound_holds,
            "outcome": outcome,
            "verified": self.verified,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("method: {}\n", self.method.name()));
        out.push_str(&format!(
            "n={} k={} d={} d*={}\n",
            self.n, self.k, self.d, self.dstar
        ));
        out.push_str(&format!(
            "bound 2(d + d*) >= n + 3: {} ({} vs {})\n",
            if self.bound_holds { "holds" } else { "fails" },
            2 * (self.d + self.dstar),
            self.n + 3
        ));
        out.push_str(&format!(
            "system: {} equations, {} unknowns, rank {}\n",
            self.equations, self.unknowns, self.rank
        ));
        match &self.outcome {
            Outcome::Unique { chi } => {
                out.push_str(&format!(
                    "outcome: unique, {}\n",
                    if self.verified { "verified" } else { "NOT verified" }
                ));
                for (j, c) in chi.chi.iter().enumerate() {
                    out.push_str(&format!("chi_{j} = {}\n", c.to_text()));
                }
            }
            Outcome::Underdetermined { kernel_dim } => {
                out.push_str(&format!(
                    "outcome: underdetermined (kernel dimension {kernel_dim})\n"
                ));
            }
        }
        out
    }
}

fn bound_holds(n: usize, d: usize, dstar: usize) -> bool {
    2 * (d + dstar) >= n + 3
}

/// An inconsistent system means the Möbius pair is not realizable, which
/// is an input defect rather than an internal one.
fn solve_as_input(rows: &[PolyRow], bounds: &[usize]) -> Result<PolySolveOutcome> {
    solve_poly_system(rows, bounds).map_err(|e| {
        Error::Invalid(format!(
            "the Mobius pair admits no coboundary polynomial: {e}"
        ))
    })
}

/// Certifies a completed pair: every seed must be reproduced, the n + 1
/// identities must hold, and chi* must equal the dual transform of chi.
fn certify(seeds: &Seeds, chi: &CoboundaryPoly, chi_star: &CoboundaryPoly) -> bool {
    if !seeds.chi.agrees_with(chi) || !seeds.chi_star.agrees_with(chi_star) {
        return false;
    }
    let identities = match check_dual_identities(chi, chi_star) {
        Ok(c) => c.pass,
        Err(_) => false,
    };
    identities && chi_dual(chi).map(|d| &d == chi_star).unwrap_or(false)
}

/// Reconstruction through the duality identities: the n + 1 binomial-
/// moment equations in the 2(n - d - d* + 2) unseeded coefficients of chi
/// and chi*.
pub fn reconstruct_linear(
    mu: &MobiusPoly,
    mu_star: &MobiusPoly,
) -> Result<ReconstructionReport> {
    let seeds = seed_partial(mu, mu_star)?;
    let n = mu.n;
    let k = mu.k;
    let chi_unknown = seeds.chi.unknown_indices();
    let star_unknown = seeds.chi_star.unknown_indices();
    let unknowns = chi_unknown.len() + star_unknown.len();

    let column = |side: Side, index: usize| -> Option<usize> {
        match side {
            Side::Chi => chi_unknown.iter().position(|&j| j == index),
            Side::ChiStar => star_unknown
                .iter()
                .position(|&j| j == index)
                .map(|p| chi_unknown.len() + p),
        }
    };

    let equations = dual_identity_equations(n, k);
    let mut rows = Vec::with_capacity(equations.len());
    for eq in &equations {
        let mut coeffs = vec![PolyT::zero(); unknowns];
        let mut rhs = PolyT::zero();
        for term in &eq.terms {
            let mono = PolyT::monomial(
                BigRational::from_integer(term.binom.clone()),
                term.t_exp,
            );
            match column(term.side, term.index) {
                Some(c) => coeffs[c] = coeffs[c].add(&mono),
                None => {
                    let seeded = match term.side {
                        Side::Chi => &seeds.chi.known[term.index],
                        Side::ChiStar => &seeds.chi_star.known[term.index],
                    };
                    let seeded = seeded.as_ref().expect("unseeded index is a column");
                    rhs = rhs.sub(&mono.mul(seeded));
                }
            }
        }
        rows.push(PolyRow { coeffs, rhs });
    }

    let mut bounds = vec![k; chi_unknown.len()];
    bounds.extend(vec![n - k; star_unknown.len()]);

    let report = |rank, outcome, verified| ReconstructionReport {
        method: Method::Linear,
        n,
        k,
        d: seeds.d,
        dstar: seeds.dstar,
        unknowns,
        equations: equations.len(),
        rank,
        bound_holds: bound_holds(n, seeds.d, seeds.dstar),
        outcome,
        verified,
    };

    match solve_as_input(&rows, &bounds)? {
        PolySolveOutcome::Unique(values) => {
            let chi = seeds.chi.fill(&values[..chi_unknown.len()]);
            let chi_star = seeds.chi_star.fill(&values[chi_unknown.len()..]);
            let verified = certify(&seeds, &chi, &chi_star);
            Ok(report(unknowns, Outcome::Unique { chi }, verified))
        }
        PolySolveOutcome::Underdetermined { rank, kernel_dim } => {
            Ok(report(rank, Outcome::Underdetermined { kernel_dim }, false))
        }
    }
}

/// Reconstruction through the zeta polynomial: the d + d* seeded rows of
/// the uniform-basis expansion, on both sides, in the r + 1 coefficients
/// P_0 .. P_r. The dual side is rewritten through
/// P*_u = T^(u - k - 1 + d*) P_(r - u) so both sides constrain the same
/// unknowns.
pub fn reconstruct_zeta(
    mu: &MobiusPoly,
    mu_star: &MobiusPoly,
) -> Result<ReconstructionReport> {
    let seeds = seed_partial(mu, mu_star)?;
    let n = mu.n;
    let k = mu.k;
    let (d, dstar) = (seeds.d, seeds.dstar);
    let r = n + 2 - d - dstar;
    let unknowns = r + 1;

    let mut rows = Vec::with_capacity(d + dstar);
    let seeded_rows = |girth: usize| (0..girth - 1).chain(std::iter::once(n));
    for j in seeded_rows(dstar) {
        rows.push(PolyRow {
            coeffs: (0..=r).map(|u| uniform_chi_coeff(n, d + u, j)).collect(),
            rhs: seeds.chi.known[j].clone().expect("row j is seeded"),
        });
    }
    for j in seeded_rows(d) {
        let coeffs = (0..=r)
            .map(|w| {
                let shift = (r - w) as i64 - k as i64 - 1 + dstar as i64;
                uniform_chi_coeff(n, dstar + r - w, j).mul_monomial(shift)
            })
            .collect();
        rows.push(PolyRow {
            coeffs,
            rhs: seeds.chi_star.known[j].clone().expect("row j is seeded"),
        });
    }

    let bounds: Vec<usize> = (0..=r).map(|u| k + u - 1).collect();

    let report = |rank, outcome, verified| ReconstructionReport {
        method: Method::Zeta,
        n,
        k,
        d,
        dstar,
        unknowns,
        equations: rows.len(),
        rank,
        bound_holds: bound_holds(n, d, dstar),
        outcome,
        verified,
    };

    match solve_as_input(&rows, &bounds)? {
        PolySolveOutcome::Unique(coeffs) => {
            let z = ZetaPoly { n, k, d, coeffs };
            let chi = chi_from_zeta(&z)?;
            let chi_star = chi_from_zeta(&zeta_dual(&z)?)?;
            let verified = chi.validate().is_ok()
                && chi_star.validate().is_ok()
                && certify(&seeds, &chi, &chi_star);
            Ok(report(unknowns, Outcome::Unique { chi }, verified))
        }
        PolySolveOutcome::Underdetermined { rank, kernel_dim } => {
            Ok(report(rank, Outcome::Underdetermined { kernel_dim }, false))
        }
    }
}
