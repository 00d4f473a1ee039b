//! Self-checks: identities every genuine matroid satisfies, run against a
//! concrete instance and reported line by line. This is the main defense
//! against a silently wrong rank oracle, parser, or invariant routine.

use crate::comb::{binomial, Combinations};
use crate::duality::{check_dual_identities, chi_dual};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::invariants::{
    bruteforce_weights, coboundary_of, mobius_poly_of, tutte, uniform_coboundary,
};
use crate::lattice::GeometricLattice;
use crate::matroid::Matroid;
use crate::poly::{rat, PolyT};
use crate::reconstruct::dstar_from_mobius;
use crate::zeta::{chi_from_zeta, zeta_dual, zeta_from_chi};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", c.status.label(), c.name, c.detail));
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "overall: {} ({} checks: {} passed, {} failed, {} skipped)\n",
            if self.pass() { "PASS" } else { "FAIL" },
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip)
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.label(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn line(name: &'static str, status: Status, detail: impl Into<String>) -> CheckLine {
    CheckLine { name, status, detail: detail.into() }
}

fn passed(name: &'static str, detail: impl Into<String>) -> CheckLine {
    line(name, Status::Pass, detail)
}

fn failed(name: &'static str, detail: impl Into<String>) -> CheckLine {
    line(name, Status::Fail, detail)
}

fn skipped(name: &'static str, detail: impl Into<String>) -> CheckLine {
    line(name, Status::Skip, detail)
}

/// Exhaustive below this ground-set size, sampled above it.
const EXHAUSTIVE_LIMIT: usize = 12;
const SAMPLES: usize = 20_000;

fn rank_axioms(m: &Matroid) -> CheckLine {
    let name = "rank-axioms";
    let n = m.n();
    if m.rank(0) != 0 {
        return failed(name, format!("rank of the empty set is {}", m.rank(0)));
    }
    if m.rank(m.full_mask()) != m.k() {
        return failed(
            name,
            format!("rank of the ground set is {}, not k = {}", m.rank(m.full_mask()), m.k()),
        );
    }

    // Unit increase and local submodularity together give monotonicity
    // and full submodularity for integer-valued functions.
    let test_triple = |mask: u64, e: usize, f: usize| -> Option<String> {
        let (be, bf) = (1u64 << e, 1u64 << f);
        let r = m.rank(mask);
        let re = m.rank(mask | be);
        if re < r || re > r + 1 {
            return Some(format!(
                "unit increase violated at A={mask:#b}, e={e}: r(A)={r}, r(A+e)={re}"
            ));
        }
        if e == f {
            return None;
        }
        let rf = m.rank(mask | bf);
        let ref_ = m.rank(mask | be | bf);
        if re + rf < ref_ + r {
            return Some(format!(
                "submodularity violated at A={mask:#b}, e={e}, f={f}: \
                 r(A+e)={re}, r(A+f)={rf}, r(A+e+f)={ref_}, r(A)={r}"
            ));
        }
        None
    };

    if n <= EXHAUSTIVE_LIMIT {
        for mask in 0..(1u64 << n) {
            if m.rank(mask) > mask.count_ones() as usize {
                return failed(name, format!("rank exceeds size at A={mask:#b}"));
            }
            for e in 0..n {
                if mask & (1 << e) != 0 {
                    continue;
                }
                for f in e..n {
                    if mask & (1 << f) != 0 {
                        continue;
                    }
                    if let Some(witness) = test_triple(mask, e, f) {
                        return failed(name, witness);
                    }
                }
            }
        }
        passed(name, format!("exhaustive over all {} subsets", 1u64 << n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..SAMPLES {
            let mask = rng.gen::<u64>() & m.full_mask();
            let e = rng.gen_range(0..n);
            let f = rng.gen_range(0..n);
            let probe = mask & !(1 << e) & !(1 << f);
            if m.rank(probe) > probe.count_ones() as usize {
                return failed(name, format!("rank exceeds size at A={probe:#b}"));
            }
            if let Some(witness) = test_triple(probe, e, f) {
                return failed(name, witness);
            }
        }
        passed(name, format!("{SAMPLES} sampled triples"))
    }
}

fn double_dual(m: &Matroid) -> CheckLine {
    let name = "double-dual";
    let n = m.n();
    let dual = m.dual();
    let full = m.full_mask();
    // Apply the dual rank formula to the dual's own oracle, bypassing the
    // unwrapping shortcut, so the identity is actually exercised.
    let through = |mask: u64| {
        mask.count_ones() as usize + dual.rank(full & !mask) - dual.k()
    };
    let test = |mask: u64| -> Option<CheckLine> {
        (through(mask) != m.rank(mask)).then(|| {
            failed(
                name,
                format!(
                    "r**(A) = {} disagrees with r(A) = {} at A={mask:#b}",
                    through(mask),
                    m.rank(mask)
                ),
            )
        })
    };
    if n <= EXHAUSTIVE_LIMIT {
        for mask in 0..(1u64 << n) {
            if let Some(fail) = test(mask) {
                return fail;
            }
        }
        passed(name, format!("exhaustive over all {} subsets", 1u64 << n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
        for _ in 0..SAMPLES {
            if let Some(fail) = test(rng.gen::<u64>() & full) {
                return fail;
            }
        }
        passed(name, format!("{SAMPLES} sampled subsets"))
    }
}

fn params_coherence(m: &Matroid) -> CheckLine {
    let name = "params";
    let p = m.params();
    let pd = m.dual().params();
    if p.d != pd.dstar {
        return failed(
            name,
            format!(
                "d = {:?} from hyperplanes, but the dual girth is {:?}",
                p.d, pd.dstar
            ),
        );
    }
    if p.dstar != pd.d {
        return failed(
            name,
            format!(
                "d* = {:?}, but the dual computes d = {:?} from its hyperplanes",
                p.dstar, pd.d
            ),
        );
    }
    if p.simple != m.is_simple() {
        return failed(name, "simple flag disagrees with the loop/parallel scan");
    }
    if p.cosimple != pd.simple {
        return failed(name, "cosimple flag disagrees with the dual's simple flag");
    }
    passed(name, p.to_line())
}

fn simplicity_gate(m: &Matroid) -> (CheckLine, Option<GeometricLattice>) {
    let name = "simplicity-gate";
    match (m.is_simple(), GeometricLattice::build(m)) {
        (true, Ok(lat)) => (passed(name, "simple; flat lattice built"), Some(lat)),
        (false, Err(Error::NotSimple(why))) => {
            (passed(name, format!("not simple; construction refused: {why}")), None)
        }
        (true, Err(e)) => (failed(name, format!("lattice rejected a simple matroid: {e}")), None),
        (false, Ok(_)) => (failed(name, "lattice accepted a non-simple matroid"), None),
        (false, Err(e)) => {
            (failed(name, format!("expected a simplicity refusal, got: {e}")), None)
        }
    }
}

/// Runs every check that applies to `m`, skipping (with a reason) the ones
/// whose preconditions fail. Never panics on healthy inputs; a corrupted
/// instance shows up as failed lines, not errors.
pub fn verify_matroid(m: &Matroid) -> VerifyReport {
    let mut checks = Vec::new();
    checks.push(rank_axioms(m));
    checks.push(double_dual(m));
    checks.push(params_coherence(m));
    let (gate, lat) = simplicity_gate(m);
    checks.push(gate);

    let p = m.params();
    let n = m.n();
    let k = m.k();

    let Some(lat) = lat else {
        let reason = "matroid is not simple";
        for name in [
            "flat-counts",
            "mobius-rows",
            "atoms-below",
            "chi-mu-seeds",
            "sum-laws",
            "mobius-girth",
            "uniform-form",
            "duality-identities",
            "zeta-laws",
        ] {
            checks.push(skipped(name, reason));
        }
        checks.push(oracle_weights(m, None));
        checks.push(tutte_specializations(m, None));
        return VerifyReport { checks };
    };

    // Levels below d* - 1 are free: every small subset is closed.
    let free_levels = p.dstar.map_or(k, |g| (g - 2).min(k));
    checks.push({
        let name = "flat-counts";
        let counts = lat.level_counts();
        let mut result = passed(
            name,
            format!("free through rank {free_levels}; strict drop afterwards"),
        );
        for (i, &w) in counts.iter().enumerate().take(free_levels + 1) {
            if BigRational::from_integer(binomial(n, i)) != rat(w as i64) {
                result = failed(name, format!("rank {i} has {w} flats, expected C({n},{i})"));
                break;
            }
        }
        if result.status == Status::Pass {
            if let Some(g) = p.dstar {
                if g - 1 <= k {
                    let w = counts[g - 1];
                    if BigRational::from_integer(binomial(n, g - 1)) <= rat(w as i64) {
                        result = failed(
                            name,
                            format!("rank {} has {w} flats, not fewer than C({n},{})", g - 1, g - 1),
                        );
                    }
                }
            }
        }
        result
    });

    checks.push({
        let name = "mobius-rows";
        let mut result = passed(name, format!("all rows over {} flats sum correctly", lat.flat_count()));
        'rows: for xi in 0..lat.flat_count() {
            let sum: i64 = lat.mobius_row(xi).iter().map(|&(_, v)| v).sum();
            let want = if lat.flat(xi) == m.full_mask() { 1 } else { 0 };
            if sum != want {
                result = failed(
                    name,
                    format!("row of flat {:#b} sums to {sum}, expected {want}", lat.flat(xi)),
                );
                break 'rows;
            }
        }
        result
    });

    checks.push({
        let name = "atoms-below";
        let mut result = passed(name, format!("flats of rank <= {free_levels} equal their element sets"));
        'levels: for i in 0..=free_levels {
            for xi in lat.level(i) {
                if lat.flat(xi).count_ones() as usize != i {
                    result = failed(
                        name,
                        format!("rank-{i} flat {:#b} has the wrong size", lat.flat(xi)),
                    );
                    break 'levels;
                }
            }
        }
        result
    });

    let chi = coboundary_of(&lat, n);
    let mu = mobius_poly_of(&lat, n);

    checks.push({
        let name = "chi-mu-seeds";
        let mut result = passed(name, "seeded coefficients match");
        for i in 0..=free_levels {
            if chi.chi[i] != mu.mu[i] {
                result = failed(name, format!("chi_{i} != mu_{i}"));
            }
        }
        if let Some(d) = p.d {
            for j in (n - d + 1)..n {
                if !chi.chi[j].is_zero() {
                    result = failed(name, format!("chi_{j} should vanish, got {}", chi.chi[j]));
                }
            }
        }
        if !chi.chi[n].is_one() {
            result = failed(name, format!("chi_n = {}, expected 1", chi.chi[n]));
        }
        result
    });

    checks.push({
        let name = "sum-laws";
        let tk = PolyT::monomial(rat(1), k as i64);
        let chi_sum = chi.chi.iter().fold(PolyT::zero(), |a, p| a.add(p));
        let mu_sum = mu.mu.iter().fold(PolyT::zero(), |a, p| a.add(p));
        if chi_sum != tk {
            failed(name, format!("sum of chi_j is {chi_sum}, expected T^{k}"))
        } else if mu_sum != tk {
            failed(name, format!("sum of mu_i is {mu_sum}, expected T^{k}"))
        } else {
            passed(name, format!("both polynomial families sum to T^{k}"))
        }
    });

    checks.push({
        let name = "mobius-girth";
        match p.dstar {
            None => skipped(name, "no circuits (k = n)"),
            Some(g) => match dstar_from_mobius(&mu) {
                Ok(got) if got == g => passed(name, format!("mu reads back d* = {g}")),
                Ok(got) => failed(name, format!("mu reads d* = {got}, matroid has {g}")),
                Err(e) => failed(name, format!("girth extraction failed: {e}")),
            },
        }
    });

    let is_uniform = k == n || m.girth() == Some(k + 1);
    checks.push({
        let name = "uniform-form";
        if !is_uniform {
            skipped(name, "matroid is not uniform")
        } else if k == n {
            skipped(name, "free matroid has no closed form here")
        } else {
            match uniform_coboundary(n, n - k + 1) {
                Ok(closed) if closed == chi => {
                    passed(name, "closed form matches the lattice computation")
                }
                Ok(_) => failed(name, "closed form disagrees with the lattice computation"),
                Err(e) => failed(name, format!("closed form unavailable: {e}")),
            }
        }
    });

    let dual = m.dual();
    let chi_star = if p.cosimple {
        GeometricLattice::build(&dual).ok().map(|l| coboundary_of(&l, n))
    } else {
        None
    };

    checks.push({
        let name = "duality-identities";
        match &chi_star {
            None => skipped(name, "dual is not simple"),
            Some(cs) => match chi_dual(&chi) {
                Err(e) => failed(name, format!("dual transform failed: {e}")),
                Ok(transformed) if &transformed != cs => {
                    failed(name, "transformed chi disagrees with the dual lattice")
                }
                Ok(_) => match check_dual_identities(&chi, cs) {
                    Ok(c) if c.pass => {
                        passed(name, format!("all {} identities hold", c.equations))
                    }
                    Ok(c) => failed(
                        name,
                        format!("identity fails first at v = {:?}", c.first_failing_v),
                    ),
                    Err(e) => failed(name, format!("identity check errored: {e}")),
                },
            },
        }
    });

    checks.push({
        let name = "zeta-laws";
        match (p.d, p.dstar, p.simple && p.cosimple) {
            (Some(d), Some(g), true) => match zeta_from_chi(&chi, d, g) {
                Err(e) => failed(name, format!("extraction failed: {e}")),
                Ok(z) => {
                    let r = n + 2 - d - g;
                    if z.q_degree() != Some(r) {
                        failed(
                            name,
                            format!("Q-degree is {:?}, expected {r}", z.q_degree()),
                        )
                    } else if chi_from_zeta(&z).ok().as_ref() != Some(&chi) {
                        failed(name, "round trip through the uniform basis failed")
                    } else if z.is_one() != is_uniform {
                        failed(
                            name,
                            format!(
                                "P = 1 should characterize uniformity; P = 1 is {}, uniform is {}",
                                z.is_one(),
                                is_uniform
                            ),
                        )
                    } else {
                        match (&chi_star, zeta_dual(&z)) {
                            (Some(cs), Ok(zd)) => match zeta_from_chi(cs, g, d) {
                                Ok(direct) if direct == zd => passed(
                                    name,
                                    format!("degree {r}, round trip, and dual coherence"),
                                ),
                                Ok(_) => failed(name, "dual zeta disagrees with direct extraction"),
                                Err(e) => failed(name, format!("dual extraction failed: {e}")),
                            },
                            (None, Ok(_)) => passed(name, format!("degree {r} and round trip")),
                            (_, Err(e)) => failed(name, format!("dualization failed: {e}")),
                        }
                    }
                }
            },
            _ => skipped(name, "needs a simple and cosimple matroid"),
        }
    });

    checks.push(oracle_weights(m, Some(&chi)));
    checks.push(tutte_specializations(m, Some(&chi)));

    VerifyReport { checks }
}

/// Weight enumerator cross-check: for each manageable extension degree,
/// count codeword weights directly and compare with chi evaluated at the
/// extension order.
fn oracle_weights(m: &Matroid, chi: Option<&crate::invariants::CoboundaryPoly>) -> CheckLine {
    let name = "oracle-weights";
    let Some(chi) = chi else {
        return skipped(name, "needs the coboundary polynomial");
    };
    let Some(mat) = m.matrix() else {
        return skipped(name, "matroid is not given by a matrix");
    };
    let q = mat.q();
    let k = m.k();
    let mut tested = Vec::new();
    for deg in 1u32..=2 {
        let Some(words) = q.checked_pow(deg * k as u32) else {
            continue;
        };
        if words > 1u64 << 24 {
            continue;
        }
        let ext = match FieldSpec::extension(q, deg) {
            Ok(f) => f,
            Err(e) => return failed(name, format!("field construction failed: {e}")),
        };
        let counts = match bruteforce_weights(mat, &ext) {
            Ok(c) => c,
            Err(e) => return failed(name, format!("direct enumeration failed: {e}")),
        };
        let order = rat(ext.order() as i64);
        for (w, &count) in counts.iter().enumerate() {
            let predicted = match chi.weight(w).eval(&order) {
                Ok(v) => v,
                Err(e) => return failed(name, format!("evaluation failed: {e}")),
            };
            if predicted != rat(count as i64) {
                return failed(
                    name,
                    format!(
                        "A_{w}(q^{deg}) = {count} by enumeration, {predicted} by chi"
                    ),
                );
            }
        }
        tested.push(format!("q^{deg}"));
    }
    if tested.is_empty() {
        skipped(name, "every extension exceeds the enumeration cap")
    } else {
        passed(name, format!("direct counts agree at {}", tested.join(", ")))
    }
}

fn tutte_specializations(
    m: &Matroid,
    chi: Option<&crate::invariants::CoboundaryPoly>,
) -> CheckLine {
    let name = "tutte";
    if m.n() > 18 {
        return skipped(name, "ground set too large for subset enumeration");
    }
    let t = match tutte(m) {
        Ok(t) => t,
        Err(e) => return failed(name, format!("computation failed: {e}")),
    };
    let bases = Combinations::new(m.n(), m.k())
        .filter(|&mask| m.rank(mask) == m.k())
        .count();
    if t.eval(&rat(1), &rat(1)) != rat(bases as i64) {
        return failed(
            name,
            format!("t(1,1) = {}, but the matroid has {bases} bases", t.eval(&rat(1), &rat(1))),
        );
    }
    if t.eval(&rat(2), &rat(2)) != rat(1i64 << m.n()) {
        return failed(name, "t(2,2) does not count all subsets");
    }
    if let Some(chi) = chi {
        // chi_0(T) = (-1)^k t(1 - T, 0).
        let spec = t.eval_poly(&PolyT::from_int_coeffs(&[1, -1]), &PolyT::zero());
        let sign = if m.k().is_multiple_of(2) { 1 } else { -1 };
        if spec.scale(&rat(sign)) != chi.chi[0] {
            return failed(name, "t(1 - T, 0) disagrees with the characteristic polynomial");
        }
        passed(name, "basis count, subset count, and characteristic specialization")
    } else {
        passed(name, "basis count and subset count")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn fano() -> Matroid {
        let m = Matrix::parse(
            "2 3 7\n1 0 1 0 1 0 1\n0 1 1 0 0 1 1\n0 0 0 1 1 1 1\n",
        )
        .unwrap();
        Matroid::from_matrix(m).unwrap()
    }

    #[test]
    fn fano_passes_every_applicable_check() {
        let report = verify_matroid(&fano());
        assert!(report.pass(), "{}", report.to_text());
        // Everything applies to the Fano matroid except the uniform form.
        for c in &report.checks {
            let want = if c.name == "uniform-form" { Status::Skip } else { Status::Pass };
            assert_eq!(c.status, want, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn uniform_passes_including_the_closed_form() {
        let u = Matroid::uniform(3, 6).unwrap();
        let report = verify_matroid(&u);
        assert!(report.pass(), "{}", report.to_text());
        let uniform_line = report
            .checks
            .iter()
            .find(|c| c.name == "uniform-form")
            .unwrap();
        assert_eq!(uniform_line.status, Status::Pass);
        // Not a column matroid, so the weight oracle is skipped.
        let oracle = report.checks.iter().find(|c| c.name == "oracle-weights").unwrap();
        assert_eq!(oracle.status, Status::Skip);
    }

    #[test]
    fn non_simple_matroids_skip_lattice_checks_but_pass_the_gate() {
        let m = Matrix::parse("3 2 4\n1 0 1 2\n0 1 0 0\n").unwrap();
        let m = Matroid::from_matrix(m).unwrap();
        assert!(!m.is_simple());
        let report = verify_matroid(&m);
        assert!(report.pass(), "{}", report.to_text());
        let gate = report.checks.iter().find(|c| c.name == "simplicity-gate").unwrap();
        assert_eq!(gate.status, Status::Pass);
        let seeds = report.checks.iter().find(|c| c.name == "chi-mu-seeds").unwrap();
        assert_eq!(seeds.status, Status::Skip);
    }

    #[test]
    fn corrupt_rank_tables_fail_with_a_named_witness() {
        // Submodularity-only violation: both pairs {0,1} and {2,3} have
        // rank 1, every other pair rank 2, all triples rank 2, E rank 3.
        // Unit increase holds throughout, but at A = {0,3} with e = 1,
        // f = 2 the local form gives 2 + 2 < 3 + 2.
        let mut ranks = vec![0u8; 16];
        for mask in 1u64..16 {
            let size = mask.count_ones() as usize;
            ranks[mask as usize] = match mask {
                0b0011 | 0b1100 => 1,
                0b1111 => 3,
                _ => size.min(2) as u8,
            };
        }
        let m = Matroid::from_rank_table(4, ranks).unwrap();
        let report = verify_matroid(&m);
        assert!(!report.pass());
        let rank_line = report.checks.iter().find(|c| c.name == "rank-axioms").unwrap();
        assert_eq!(rank_line.status, Status::Fail);
        assert!(rank_line.detail.contains("submodularity"), "{}", rank_line.detail);
    }

    #[test]
    fn report_renders_both_ways() {
        let report = verify_matroid(&fano());
        let text = report.to_text();
        assert!(text.contains("[pass] zeta-laws"), "{text}");
        assert!(text.trim_end().ends_with("skipped)"), "{text}");
        let v = report.to_json();
        assert_eq!(v["pass"], true);
        assert!(v["checks"].as_array().unwrap().len() >= 10);
    }
}
