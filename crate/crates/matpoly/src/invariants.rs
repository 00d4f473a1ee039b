//! Polynomial invariants of a simple matroid: the two-variable coboundary
//! and Möbius polynomials (stored as coefficient lists in S with values in
//! Z[T]), the Tutte polynomial, and a brute-force codeword weight
//! enumerator used as an independent oracle.

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lattice::GeometricLattice;
use crate::matrix::{Eliminator, Matrix};
use crate::matroid::Matroid;
use crate::poly::{poly_from_coeff_strings, poly_to_coeff_strings, PolyT};
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coboundary polynomial chi(S, T) = sum over flat pairs x <= y of
/// mu(x, y) S^|x| T^(k - rank y), stored as S-coefficients `chi[0..=n]`.
/// `chi[n - w]` is the weight-w coefficient A_w(T) of the extended weight
/// enumerator when the matroid is the column matroid of a generator matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundaryPoly {
    pub n: usize,
    pub k: usize,
    pub chi: Vec<PolyT>,
}

/// Möbius polynomial mu(S, T): as the coboundary polynomial but with S
/// graded by rank(x) instead of |x|, so the S-degree is k.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusPoly {
    pub n: usize,
    pub k: usize,
    pub mu: Vec<PolyT>,
}

impl CoboundaryPoly {
    /// Structural well-formedness: n+1 coefficients, ordinary polynomials
    /// in T of degree at most k.
    pub fn validate(&self) -> Result<()> {
        if self.k > self.n {
            return Err(Error::Invalid(format!(
                "coboundary rank {} exceeds ground set {}",
                self.k, self.n
            )));
        }
        if self.chi.len() != self.n + 1 {
            return Err(Error::Invalid(format!(
                "coboundary needs {} S-coefficients, got {}",
                self.n + 1,
                self.chi.len()
            )));
        }
        for (i, c) in self.chi.iter().enumerate() {
            if !c.is_polynomial() || c.degree().unwrap_or(0) > self.k as i64 {
                return Err(Error::Invalid(format!(
                    "chi_{i} = {c} is not a polynomial of degree <= {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    /// Weight-w coefficient A_w(T) = chi_{n-w}(T).
    pub fn weight(&self, w: usize) -> &PolyT {
        &self.chi[self.n - w]
    }

    pub fn coeff_strings(&self) -> Vec<Vec<String>> {
        self.chi
            .iter()
            .map(|p| poly_to_coeff_strings(p).expect("chi coefficients are polynomials"))
            .collect()
    }

    pub fn from_coeff_strings(n: usize, k: usize, parts: &[Vec<String>]) -> Result<Self> {
        let chi = parts
            .iter()
            .map(|p| poly_from_coeff_strings(p))
            .collect::<Result<Vec<_>>>()?;
        let out = CoboundaryPoly { n, k, chi };
        out.validate()?;
        Ok(out)
    }
}

impl MobiusPoly {
    /// Structural well-formedness: k+1 coefficients, ordinary polynomials
    /// in T of degree at most k.
    pub fn validate(&self) -> Result<()> {
        if self.k > self.n {
            return Err(Error::Invalid(format!(
                "Mobius rank {} exceeds ground set {}",
                self.k, self.n
            )));
        }
        if self.mu.len() != self.k + 1 {
            return Err(Error::Invalid(format!(
                "Mobius polynomial needs {} S-coefficients, got {}",
                self.k + 1,
                self.mu.len()
            )));
        }
        for (i, c) in self.mu.iter().enumerate() {
            if !c.is_polynomial() || c.degree().unwrap_or(0) > self.k as i64 {
                return Err(Error::Invalid(format!(
                    "mu_{i} = {c} is not a polynomial of degree <= {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    pub fn coeff_strings(&self) -> Vec<Vec<String>> {
        self.mu
            .iter()
            .map(|p| poly_to_coeff_strings(p).expect("mu coefficients are polynomials"))
            .collect()
    }

    pub fn from_coeff_strings(n: usize, k: usize, parts: &[Vec<String>]) -> Result<Self> {
        let mu = parts
            .iter()
            .map(|p| poly_from_coeff_strings(p))
            .collect::<Result<Vec<_>>>()?;
        let out = MobiusPoly { n, k, mu };
        out.validate()?;
        Ok(out)
    }
}

/// Coboundary polynomial of a simple matroid.
pub fn coboundary(m: &Matroid) -> Result<CoboundaryPoly> {
    Ok(coboundary_of(&GeometricLattice::build(m)?, m.n()))
}

/// Coboundary polynomial from an already-built lattice.
pub fn coboundary_of(lat: &GeometricLattice, n: usize) -> CoboundaryPoly {
    let k = lat.k();
    let mut grid = vec![vec![0i64; k + 1]; n + 1];
    accumulate(lat, |xi| lat.flat(xi).count_ones() as usize, &mut grid);
    CoboundaryPoly { n, k, chi: grid_to_polys(&grid) }
}

/// Möbius polynomial of a simple matroid.
pub fn mobius_poly(m: &Matroid) -> Result<MobiusPoly> {
    Ok(mobius_poly_of(&GeometricLattice::build(m)?, m.n()))
}

/// Möbius polynomial from an already-built lattice.
pub fn mobius_poly_of(lat: &GeometricLattice, n: usize) -> MobiusPoly {
    let k = lat.k();
    let mut grid = vec![vec![0i64; k + 1]; k + 1];
    accumulate(lat, |xi| lat.rank_of_flat(xi), &mut grid);
    MobiusPoly { n, k, mu: grid_to_polys(&grid) }
}

/// Shared accumulation: grid[s_index(x)][k - rank(y)] += mu(x, y).
fn accumulate(
    lat: &GeometricLattice,
    s_index: impl Fn(usize) -> usize,
    grid: &mut [Vec<i64>],
) {
    let k = lat.k();
    for xi in 0..lat.flat_count() {
        let si = s_index(xi);
        for &(yi, mu) in lat.mobius_row(xi) {
            let tj = k - lat.rank_of_flat(yi as usize);
            grid[si][tj] = grid[si][tj].checked_add(mu).expect("coefficient overflow");
        }
    }
}

fn grid_to_polys(grid: &[Vec<i64>]) -> Vec<PolyT> {
    grid.iter().map(|row| PolyT::from_int_coeffs(row)).collect()
}

/// Closed-form coboundary polynomial of the uniform matroid with n elements
/// and smallest cocircuit size d (rank n - d + 1), for 2 <= d <= n:
///
///   chi_j(T) = C(n, j) (T - 1) sum_{t=0}^{n-j-d} (-1)^t C(n-j-1, t) T^(n-j-d-t)
///
/// for j <= n - d, zero on the band n - d < j < n, and 1 at j = n.
pub fn uniform_coboundary(n: usize, d: usize) -> Result<CoboundaryPoly> {
    if d < 2 || d > n {
        return Err(Error::Invalid(format!(
            "uniform coboundary needs 2 <= d <= n, got d={d}, n={n}"
        )));
    }
    let k = n - d + 1;
    let mut chi = Vec::with_capacity(n + 1);
    for j in 0..=n {
        chi.push(uniform_chi_coeff(n, d, j));
    }
    Ok(CoboundaryPoly { n, k, chi })
}

/// The j-th S-coefficient of the uniform coboundary polynomial; exposed
/// separately because these polynomials form the basis of the zeta
/// expansion.
pub fn uniform_chi_coeff(n: usize, d: usize, j: usize) -> PolyT {
    assert!((2..=n).contains(&d) && j <= n, "parameters out of range");
    if j == n {
        return PolyT::one();
    }
    if j > n - d {
        return PolyT::zero();
    }
    let top = n - j - d;
    let mut inner = PolyT::zero();
    for t in 0..=top {
        let c = BigRational::from_integer(binomial(n - j - 1, t));
        let signed = if t % 2 == 0 { c } else { -c };
        inner = inner.add(&PolyT::monomial(signed, (top - t) as i64));
    }
    let t_minus_1 = PolyT::from_int_coeffs(&[-1, 1]);
    inner
        .mul(&t_minus_1)
        .scale(&BigRational::from_integer(binomial(n, j)))
}

/// Tutte polynomial, computed by direct subset enumeration:
/// T(x, y) = sum over subsets A of (x-1)^(k - r(A)) (y-1)^(|A| - r(A)).
#[derive(Debug, Clone, PartialEq)]
pub struct TuttePoly {
    /// `coeffs[i][j]` is the coefficient of x^i y^j.
    pub coeffs: Vec<Vec<BigInt>>,
}

impl TuttePoly {
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut xp = BigRational::one();
        for row in &self.coeffs {
            let mut yp = xp.clone();
            for c in row {
                acc += BigRational::from_integer(c.clone()) * &yp;
                yp *= y;
            }
            xp *= x;
        }
        acc
    }

    /// Substitutes polynomials in T for x and y.
    pub fn eval_poly(&self, x: &PolyT, y: &PolyT) -> PolyT {
        let mut acc = PolyT::zero();
        let mut xp = PolyT::one();
        for row in &self.coeffs {
            let mut yp = xp.clone();
            for c in row {
                if !c.is_zero() {
                    acc = acc.add(&yp.scale(&BigRational::from_integer(c.clone())));
                }
                yp = yp.mul(y);
            }
            xp = xp.mul(x);
        }
        acc
    }

    /// Canonical text, x-degree major, descending.
    pub fn to_text(&self) -> String {
        let mut terms: Vec<(usize, usize, &BigInt)> = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, c));
                }
            }
        }
        if terms.is_empty() {
            return "0".into();
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0, t.1)));
        let mut out = String::new();
        for (i, j, c) in terms {
            let neg = c.is_negative();
            let abs = c.magnitude().to_string();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut vars = String::new();
            for (sym, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => vars.push_str(sym),
                    _ => vars.push_str(&format!("{sym}^{e}")),
                }
                if e > 0 {
                    vars.push('*');
                }
            }
            let vars = vars.trim_end_matches('*');
            if vars.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(vars);
            } else {
                out.push_str(&format!("{abs}*{vars}"));
            }
        }
        out
    }

    pub fn coeff_strings(&self) -> Vec<Vec<String>> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect()
    }
}

/// Tutte polynomial by 2^n subset enumeration; guarded at n <= 24.
pub fn tutte(m: &Matroid) -> Result<TuttePoly> {
    let n = m.n();
    if n > 24 {
        return Err(Error::SizeGuard(format!(
            "Tutte enumeration is limited to n <= 24, got {n}"
        )));
    }
    let k = m.k();
    // counts[a][b] = number of subsets with corank a and nullity b.
    let mut counts = vec![vec![0u64; n - k + 1]; k + 1];
    for mask in 0..1u64 << n {
        let r = m.rank(mask);
        let size = mask.count_ones() as usize;
        counts[k - r][size - r] += 1;
    }
    // Expand sum counts[a][b] (x-1)^a (y-1)^b.
    let mut coeffs = vec![vec![BigInt::zero(); n - k + 1]; k + 1];
    for (a, row) in counts.iter().enumerate() {
        for (b, &cnt) in row.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let cnt = BigInt::from(cnt);
            for (i, crow) in coeffs.iter_mut().enumerate().take(a + 1) {
                let xc = binomial(a, i)
                    * if (a - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for (j, cell) in crow.iter_mut().enumerate().take(b + 1) {
                    let yc = binomial(b, j)
                        * if (b - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    *cell += &cnt * &xc * yc;
                }
            }
        }
    }
    Ok(TuttePoly { coeffs })
}

/// Codeword weight distribution of the row space of `mat`, extended to the
/// field `ext` (which must have the same characteristic). Enumerates all
/// order^rank codewords with incremental updates; guarded at 2^24.
pub fn bruteforce_weights(mat: &Matrix, ext: &FieldSpec) -> Result<Vec<u64>> {
    if ext.characteristic() != mat.q() {
        return Err(Error::Invalid(format!(
            "extension of characteristic {} does not contain F_{}",
            ext.characteristic(),
            mat.q()
        )));
    }
    let n = mat.cols();
    // A row basis of the matrix; over any extension the row space has the
    // same dimension, and these rows still span it.
    let mut elim = Eliminator::new(FieldSpec::prime(mat.q())?);
    let mut basis_rows: Vec<Vec<u64>> = Vec::new();
    for r in 0..mat.rows() {
        let row: Vec<u64> = (0..n).map(|c| mat.entry(r, c)).collect();
        if elim.insert(row.clone()) {
            basis_rows.push(row.iter().map(|&e| ext.embed(e)).collect());
        }
    }
    let dim = basis_rows.len();
    let order = ext.order();
    let mut total: u64 = 1;
    for _ in 0..dim {
        total = total
            .checked_mul(order)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| {
                Error::SizeGuard(format!(
                    "codeword enumeration {order}^{dim} exceeds 2^24"
                ))
            })?;
    }

    let mut counts = vec![0u64; n + 1];
    let mut digits = vec![0u64; dim];
    let mut cw = vec![0u64; n];
    let weight = |cw: &[u64]| cw.iter().filter(|&&c| c != 0).count();
    counts[weight(&cw)] += 1;
    if dim == 0 {
        return Ok(counts);
    }
    let last = order - 1;
    let wrap_delta = ext.neg(last); // elem(0) - elem(order-1)
    loop {
        let mut i = 0;
        while i < dim && digits[i] == last {
            digits[i] = 0;
            add_multiple(ext, &mut cw, wrap_delta, &basis_rows[i]);
            i += 1;
        }
        if i == dim {
            break;
        }
        digits[i] += 1;
        let delta = ext.sub(digits[i], digits[i] - 1);
        add_multiple(ext, &mut cw, delta, &basis_rows[i]);
        counts[weight(&cw)] += 1;
    }
    debug_assert_eq!(counts.iter().sum::<u64>(), total);
    Ok(counts)
}

fn add_multiple(f: &FieldSpec, cw: &mut [u64], c: u64, row: &[u64]) {
    if c == 0 {
        return;
    }
    for (e, &r) in cw.iter_mut().zip(row) {
        *e = f.add(*e, f.mul(c, r));
    }
}

/// On-disk / wire JSON document for polynomial exchange. Coefficients are
/// decimal strings ("p" or "p/q"), ascending in T; the outer lists ascend
/// in S.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyDocument {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<Vec<String>>>,
}

impl PolyDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad polynomial document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn chi(&self) -> Result<CoboundaryPoly> {
        let parts = self
            .chi
            .as_ref()
            .ok_or_else(|| Error::Invalid("document has no 'chi' field".into()))?;
        CoboundaryPoly::from_coeff_strings(self.n, self.k, parts)
    }

    pub fn mu(&self) -> Result<MobiusPoly> {
        let parts = self
            .mu
            .as_ref()
            .ok_or_else(|| Error::Invalid("document has no 'mu' field".into()))?;
        MobiusPoly::from_coeff_strings(self.n, self.k, parts)
    }

    pub fn of_chi(chi: &CoboundaryPoly) -> Self {
        PolyDocument {
            n: chi.n,
            k: chi.k,
            chi: Some(chi.coeff_strings()),
            mu: None,
        }
    }

    pub fn of_mu(mu: &MobiusPoly) -> Self {
        PolyDocument {
            n: mu.n,
            k: mu.k,
            chi: None,
            mu: Some(mu.coeff_strings()),
        }
    }
}
