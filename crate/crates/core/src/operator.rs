//! Weighted arithmetic and geometric means of Hermitian positive-definite
//! matrices, Loewner-order comparison, and certification of the operator
//! forms of the refined Young bounds under a spectral sandwich
//! `m <= A <= m' < M' <= B <= M` (or the same with `A`, `B` swapped).

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use faer::{c64, Mat, MatRef};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{exp_r, kantorovich_unchecked, pow_pos, DeformParam};

/// Relative Frobenius deviation from Hermitian accepted on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues at or below this multiple of the spectral norm are treated
/// as non-positive.
pub const PD_FLOOR: f64 = 1e-12;
pub const DEFAULT_LOEWNER_TOL: f64 = 1e-10;
pub const SANDWICH_TOL: f64 = 1e-10;

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };

fn real(x: f64) -> c64 {
    c64::new(x, 0.0)
}

/// A Hermitian matrix, stored exactly Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(Mat<c64>);

impl HermitianMatrix {
    /// Symmetrizes `(X + X*) / 2`; rejects non-square input and input that
    /// is not Hermitian to within [`HERMITIAN_TOL`].
    pub fn new(m: Mat<c64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
        }
        if m.nrows() == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let n = m.nrows();
        let norm = m.norm_l2();
        let deviation = Mat::<c64>::from_fn(n, n, |i, j| m[(i, j)] - m[(j, i)].conj()).norm_l2();
        if deviation > HERMITIAN_TOL * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::Parse(format!(
                "matrix is not Hermitian (relative deviation {:e})",
                deviation / norm
            )));
        }
        Ok(Self::symmetrized(m.as_ref()))
    }

    fn symmetrized(m: MatRef<'_, c64>) -> Self {
        let n = m.nrows();
        HermitianMatrix(Mat::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5))
    }

    /// Real symmetric matrix from row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Self::new(Mat::from_fn(dim, dim, |i, j| real(entries[i * dim + j])))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        HermitianMatrix(Mat::from_fn(
            n,
            n,
            |i, j| if i == j { real(diag[i]) } else { ZERO },
        ))
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix(Mat::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> c64 {
        self.0[(row, col)]
    }

    pub fn as_mat(&self) -> MatRef<'_, c64> {
        self.0.as_ref()
    }

    /// Ascending eigenvalues and the matching unitary eigenvector matrix.
    pub fn eigh(&self) -> Result<(Vec<f64>, Mat<c64>)> {
        let evd = self
            .0
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|e| Error::Eigen(format!("{e:?}")))?;
        let s = evd.S();
        let values = (0..self.dim()).map(|i| s[i].re).collect();
        Ok((values, evd.U().to_owned()))
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut values = self
            .0
            .self_adjoint_eigenvalues(faer::Side::Lower)
            .map_err(|e| Error::Eigen(format!("{e:?}")))?;
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    /// Spectral norm, the largest eigenvalue magnitude.
    pub fn norm2(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().fold(0.0, |acc, x| acc.max(x.abs())))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?[0])
    }

    pub fn scale(&self, factor: f64) -> Self {
        let n = self.dim();
        HermitianMatrix(Mat::from_fn(n, n, |i, j| self.0[(i, j)] * factor))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Relative Frobenius distance `|A - B| / max(|A|, |B|)`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let diff = (&self.0 - &other.0).norm_l2();
        let scale = self.0.norm_l2().max(other.0.norm_l2());
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

fn check_weight(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidPoint(format!(
            "weight v must lie in [0, 1], got {v}"
        )));
    }
    Ok(())
}

/// `Q diag(f(lambda)) Q*` for an eigendecomposition `(lambda, Q)`.
fn spectral_map(vectors: &Mat<c64>, values: &[f64], f: impl Fn(f64) -> f64) -> HermitianMatrix {
    let n = vectors.nrows();
    let weights: Vec<f64> = values.iter().map(|&x| f(x)).collect();
    let scaled = Mat::<c64>::from_fn(n, n, |i, j| vectors[(i, j)] * weights[j]);
    let product = &scaled * vectors.adjoint();
    HermitianMatrix::symmetrized(product.as_ref())
}

fn positive_spectrum(a: &HermitianMatrix) -> Result<(Vec<f64>, Mat<c64>)> {
    let (values, vectors) = a.eigh()?;
    let norm = values.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if !(values[0] > PD_FLOOR * norm) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: values[0],
        });
    }
    Ok((values, vectors))
}

/// `A^p` by functional calculus on a positive-definite `A`.
pub fn hermitian_power(a: &HermitianMatrix, p: f64) -> Result<HermitianMatrix> {
    let (values, vectors) = positive_spectrum(a)?;
    Ok(spectral_map(&vectors, &values, |lambda| pow_pos(lambda, p)))
}

/// `A nabla_v B = (1 - v) A + v B`.
pub fn weighted_arithmetic(a: &HermitianMatrix, b: &HermitianMatrix, v: f64) -> Result<HermitianMatrix> {
    a.check_dim(b)?;
    check_weight(v)?;
    let n = a.dim();
    Ok(HermitianMatrix(Mat::from_fn(n, n, |i, j| {
        a.0[(i, j)] * (1.0 - v) + b.0[(i, j)] * v
    })))
}

/// `A #_v B = A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}`.
pub fn weighted_geometric(a: &HermitianMatrix, b: &HermitianMatrix, v: f64) -> Result<HermitianMatrix> {
    a.check_dim(b)?;
    check_weight(v)?;
    let (values, vectors) = positive_spectrum(a)?;
    let root = spectral_map(&vectors, &values, f64::sqrt);
    let inv_root = spectral_map(&vectors, &values, |x| 1.0 / x.sqrt());
    let t = HermitianMatrix::symmetrized((&inv_root.0 * &b.0 * &inv_root.0).as_ref());
    let t_pow = hermitian_power(&t, v)?;
    Ok(HermitianMatrix::symmetrized(
        (&root.0 * &t_pow.0 * &root.0).as_ref(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerCheck {
    pub holds: bool,
    /// `lambda_min(B - A) / max(1, |A|_2, |B|_2)`.
    pub margin: f64,
}

/// Whether `A <= B` in the Loewner order, up to a relative tolerance.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<LoewnerCheck> {
    a.check_dim(b)?;
    let diff = HermitianMatrix::symmetrized((&b.0 - &a.0).as_ref());
    let scale = 1f64.max(a.norm2()?).max(b.norm2()?);
    let margin = diff.min_eigenvalue()? / scale;
    Ok(LoewnerCheck {
        holds: margin >= -tol,
        margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SandwichCase {
    /// `m <= A <= m' < M' <= B <= M`
    I,
    /// `m <= B <= m' < M' <= A <= M`
    Ii,
}

impl FromStr for SandwichCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "i" => Ok(SandwichCase::I),
            "ii" => Ok(SandwichCase::Ii),
            other => Err(format!("unknown sandwich case `{other}` (expected i or ii)")),
        }
    }
}

/// Spectral sandwich constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichSpec {
    pub m: f64,
    pub m_prime: f64,
    #[serde(rename = "M_prime")]
    pub big_m_prime: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub case: SandwichCase,
}

impl SandwichSpec {
    pub fn new(m: f64, m_prime: f64, big_m_prime: f64, big_m: f64, case: SandwichCase) -> Result<Self> {
        if !(0.0 < m && m <= m_prime && m_prime < big_m_prime && big_m_prime <= big_m && big_m.is_finite()) {
            return Err(Error::InvalidSandwich(format!(
                "need 0 < m <= m' < M' <= M, got m={m}, m'={m_prime}, M'={big_m_prime}, M={big_m}"
            )));
        }
        Ok(SandwichSpec {
            m,
            m_prime,
            big_m_prime,
            big_m,
            case,
        })
    }

    /// `h = M / m`
    pub fn h(&self) -> f64 {
        self.big_m / self.m
    }

    /// `h' = M' / m'`
    pub fn h_prime(&self) -> f64 {
        self.big_m_prime / self.m_prime
    }
}

/// Checks the four scalar Loewner bounds of the declared case.
pub fn validate_sandwich(a: &HermitianMatrix, b: &HermitianMatrix, s: &SandwichSpec) -> Result<bool> {
    a.check_dim(b)?;
    let (low, high) = match s.case {
        SandwichCase::I => (a, b),
        SandwichCase::Ii => (b, a),
    };
    let scalar = |c: f64| HermitianMatrix::identity(a.dim()).scale(c);
    let checks = [
        loewner_leq(&scalar(s.m), low, SANDWICH_TOL)?,
        loewner_leq(low, &scalar(s.m_prime), SANDWICH_TOL)?,
        loewner_leq(&scalar(s.big_m_prime), high, SANDWICH_TOL)?,
        loewner_leq(high, &scalar(s.big_m), SANDWICH_TOL)?,
    ];
    Ok(checks.iter().all(|c| c.holds))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "as-stated")]
    AsStated,
    #[serde(rename = "interval-extremal")]
    IntervalExtremal,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "as-stated" => Ok(Variant::AsStated),
            "interval-extremal" => Ok(Variant::IntervalExtremal),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorCertificate {
    pub claim_id: String,
    pub scalar_factor: f64,
    pub min_eigen_margin: f64,
    pub holds: bool,
    pub variant: Variant,
    pub tol: f64,
}

fn require_sandwich(a: &HermitianMatrix, b: &HermitianMatrix, s: &SandwichSpec) -> Result<()> {
    if !validate_sandwich(a, b, s)? {
        return Err(Error::SandwichViolation);
    }
    Ok(())
}

/// `A nabla_v B <= exp_r(4 v (1 - v) (K(h) - 1)) A #_v B` for `0 < r <= 1`.
pub fn certify_corollary_one(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    v: f64,
    r: DeformParam,
    s: &SandwichSpec,
    tol: f64,
) -> Result<OperatorCertificate> {
    check_weight(v)?;
    if !(r.value() > 0.0) {
        return Err(Error::Domain(format!(
            "corollary one needs 0 < r <= 1, got {}",
            r.value()
        )));
    }
    require_sandwich(a, b, s)?;
    // K is symmetric under t -> 1/t and increasing on t >= 1, so its maximum
    // over either admissible spectral interval is K(h).
    let x = 4.0 * v * (1.0 - v) * (kantorovich_unchecked(s.h()) - 1.0);
    let factor = exp_r(r.value(), x)?;
    let arith = weighted_arithmetic(a, b, v)?;
    let geo = weighted_geometric(a, b, v)?;
    let check = loewner_leq(&arith, &geo.scale(factor), tol)?;
    Ok(OperatorCertificate {
        claim_id: "corollary-one".into(),
        scalar_factor: factor,
        min_eigen_margin: check.margin,
        holds: check.holds,
        variant: Variant::AsStated,
        tol,
    })
}

/// Scalar arguments `(lower, upper)` of the two-sided operator bound.
pub fn corollary_two_arguments(v: f64, s: &SandwichSpec, variant: Variant) -> (f64, f64) {
    let half = 0.5 * v * (1.0 - v);
    let (h, hp) = (s.h(), s.h_prime());
    let (lower_h, upper_h) = match variant {
        Variant::AsStated => (h, hp),
        Variant::IntervalExtremal => (hp, h),
    };
    let lo = (lower_h - 1.0) / lower_h;
    let hi = upper_h - 1.0;
    (half * lo * lo, half * hi * hi)
}

/// `exp_{r1}(..) A #_v B <= A nabla_v B <= exp_{r2}(..) A #_v B`.
///
/// `AsStated` takes `h` in the lower constant and `h'` in the upper one;
/// `IntervalExtremal` takes the worst case of the scalar bounds over the
/// spectral interval `[h', h]`, which swaps the two.
#[allow(clippy::too_many_arguments)]
pub fn certify_corollary_two(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    v: f64,
    r1: DeformParam,
    r2: DeformParam,
    s: &SandwichSpec,
    variant: Variant,
    tol: f64,
) -> Result<(OperatorCertificate, OperatorCertificate)> {
    check_weight(v)?;
    if !(r1.value() < 0.0) {
        return Err(Error::Domain(format!(
            "corollary two needs -1 <= r1 < 0, got {}",
            r1.value()
        )));
    }
    if !(r2.value() > 0.0) {
        return Err(Error::Domain(format!(
            "corollary two needs 0 < r2 <= 1, got {}",
            r2.value()
        )));
    }
    require_sandwich(a, b, s)?;
    let (x_lo, x_hi) = corollary_two_arguments(v, s, variant);
    let lower_factor = exp_r(r1.value(), x_lo)?;
    let upper_factor = exp_r(r2.value(), x_hi)?;

    let arith = weighted_arithmetic(a, b, v)?;
    let geo = weighted_geometric(a, b, v)?;
    let lower = loewner_leq(&geo.scale(lower_factor), &arith, tol)?;
    let upper = loewner_leq(&arith, &geo.scale(upper_factor), tol)?;
    let cert = |claim: &str, factor: f64, check: LoewnerCheck| OperatorCertificate {
        claim_id: claim.into(),
        scalar_factor: factor,
        min_eigen_margin: check.margin,
        holds: check.holds,
        variant,
        tol,
    };
    Ok((
        cert("corollary-two-lower", lower_factor, lower),
        cert("corollary-two-upper", upper_factor, upper),
    ))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Mat<c64> {
    let z = Mat::<c64>::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let q = qr.compute_Q();
    let r = qr.R();
    let phases: Vec<c64> = (0..n)
        .map(|j| {
            let d = r[(j, j)];
            let norm = d.norm();
            if norm > 0.0 {
                d / norm
            } else {
                real(1.0)
            }
        })
        .collect();
    Mat::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}

fn conjugate(u: &Mat<c64>, diag: &[f64]) -> HermitianMatrix {
    spectral_map(u, diag, |x| x)
}

/// Draw a pair satisfying `s`.
///
/// Both spectra are drawn uniformly from their intervals in a common
/// Haar-random basis. With `commuting = false` the second matrix is further
/// conjugated by an independent Haar unitary and the sandwich is re-checked
/// numerically, redrawing on failure.
pub fn random_sandwich_pair<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    s: &SandwichSpec,
    commuting: bool,
) -> Result<(HermitianMatrix, HermitianMatrix)> {
    const MAX_ATTEMPTS: usize = 16;
    for _ in 0..MAX_ATTEMPTS {
        let u = haar_unitary(rng, dim);
        let low: Vec<f64> = (0..dim).map(|_| rng.gen_range(s.m..=s.m_prime)).collect();
        let high: Vec<f64> = (0..dim).map(|_| rng.gen_range(s.big_m_prime..=s.big_m)).collect();
        let low_m = conjugate(&u, &low);
        let mut high_m = conjugate(&u, &high);
        if !commuting {
            let w = haar_unitary(rng, dim);
            high_m = HermitianMatrix::symmetrized((&w * &high_m.0 * w.adjoint()).as_ref());
        }
        let (a, b) = match s.case {
            SandwichCase::I => (low_m, high_m),
            SandwichCase::Ii => (high_m, low_m),
        };
        if validate_sandwich(&a, &b, s)? {
            return Ok((a, b));
        }
    }
    Err(Error::SandwichViolation)
}

/// Parse the plain-text matrix format: a `dim n` line followed by `n` rows
/// of `n` entries written as `re+imj` (or plain `re`).
pub fn parse_matrix(text: &str) -> Result<HermitianMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => n
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad dimension `{n}`: {e}")))?,
        _ => return Err(Error::Parse(format!("expected `dim n`, got `{header}`"))),
    };
    if dim == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {dim} rows, found {row}")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(Error::Parse(format!(
                "row {row} has {} entries, expected {dim}",
                tokens.len()
            )));
        }
        for tok in tokens {
            let z = c64::from_str(tok).map_err(|_| Error::Parse(format!("bad entry `{tok}`")))?;
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::Parse(format!("non-finite entry `{tok}`")));
            }
            entries.push(z);
        }
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing content `{extra}`")));
    }
    HermitianMatrix::new(Mat::from_fn(dim, dim, |i, j| entries[i * dim + j]))
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<HermitianMatrix> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Inverse of [`parse_matrix`]; real entries are written without `+0j`.
pub fn format_matrix(a: &HermitianMatrix) -> String {
    let n = a.dim();
    let mut out = format!("dim {n}\n");
    for r in 0..n {
        let row: Vec<String> = (0..n)
            .map(|c| {
                let z = a.0[(r, c)];
                if z.im == 0.0 {
                    format!("{}", z.re)
                } else if z.im < 0.0 {
                    format!("{}-{}j", z.re, -z.im)
                } else {
                    format!("{}+{}j", z.re, z.im)
                }
            })
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(d: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_diagonal(d)
    }

    fn assert_close(a: &HermitianMatrix, b: &HermitianMatrix, rel: f64) {
        let d = a.relative_distance(b);
        assert!(d <= rel, "relative distance {d:e}\n{a:?}\n{b:?}");
    }

    fn spec(m: f64, mp: f64, bmp: f64, bm: f64, case: SandwichCase) -> SandwichSpec {
        SandwichSpec::new(m, mp, bmp, bm, case).unwrap()
    }

    #[test]
    fn construction_rejects_non_hermitian() {
        assert!(HermitianMatrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(HermitianMatrix::from_real(2, &[1.0, 2.0, 2.0, 4.0]).is_ok());
        assert!(HermitianMatrix::from_real(2, &[1.0, 2.0, 2.0]).is_err());
        assert!(HermitianMatrix::new(Mat::from_fn(1, 2, |_, _| real(1.0))).is_err());
    }

    #[test]
    fn power_examples() {
        assert_close(
            &hermitian_power(&HermitianMatrix::identity(3), 0.5).unwrap(),
            &HermitianMatrix::identity(3),
            1e-15,
        );
        assert_close(
            &hermitian_power(&diag(&[1.0, 4.0]), 0.5).unwrap(),
            &diag(&[1.0, 2.0]),
            1e-15,
        );
        assert_close(
            &hermitian_power(&diag(&[4.0]), -1.0).unwrap(),
            &diag(&[0.25]),
            1e-15,
        );
        assert!(matches!(
            hermitian_power(&diag(&[1.0, 0.0]), 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            hermitian_power(&diag(&[1.0, -2.0]), 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn power_identities_on_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = haar_unitary(&mut rng, 4);
        let a = conjugate(&u, &[0.5, 1.0, 2.0, 7.0]);
        assert_close(&hermitian_power(&a, 1.0).unwrap(), &a, 1e-12);
        assert_close(
            &hermitian_power(&a, 0.0).unwrap(),
            &HermitianMatrix::identity(4),
            1e-12,
        );
        let root = hermitian_power(&a, 0.5).unwrap();
        assert_close(&hermitian_power(&root, 2.0).unwrap(), &a, 1e-9);
    }

    #[test]
    fn arithmetic_examples() {
        let i = HermitianMatrix::identity(2);
        assert_close(&weighted_arithmetic(&i, &i, 0.3).unwrap(), &i, 1e-15);
        assert_close(
            &weighted_arithmetic(&diag(&[1.0, 2.0]), &diag(&[3.0, 6.0]), 0.5).unwrap(),
            &diag(&[2.0, 4.0]),
            1e-15,
        );
        let a = diag(&[1.0, 5.0]);
        assert_eq!(weighted_arithmetic(&a, &diag(&[2.0, 3.0]), 0.0).unwrap(), a);
        assert!(matches!(
            weighted_arithmetic(&a, &HermitianMatrix::identity(3), 0.5),
            Err(Error::DimensionMismatch(2, 3))
        ));
        assert!(weighted_arithmetic(&a, &a, 1.5).is_err());
    }

    #[test]
    fn geometric_examples() {
        let i = HermitianMatrix::identity(2);
        assert_close(&weighted_geometric(&i, &i, 0.7).unwrap(), &i, 1e-15);
        assert_close(
            &weighted_geometric(&diag(&[1.0, 4.0]), &diag(&[4.0, 16.0]), 0.5).unwrap(),
            &diag(&[2.0, 8.0]),
            1e-14,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = spec(1.0, 1.5, 3.0, 5.0, SandwichCase::I);
        let (a, b) = random_sandwich_pair(&mut rng, 3, &s, false).unwrap();
        assert_close(&weighted_geometric(&a, &b, 1.0).unwrap(), &b, 1e-10);
        assert_close(&weighted_geometric(&a, &b, 0.0).unwrap(), &a, 1e-10);
        assert!(matches!(
            weighted_geometric(&diag(&[1.0, -1.0]), &i, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            weighted_geometric(&i, &diag(&[1.0, -1.0]), 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn loewner_examples() {
        let c = loewner_leq(&diag(&[1.0, 2.0]), &diag(&[2.0, 3.0]), 1e-10).unwrap();
        assert!(c.holds);
        assert!((c.margin - 1.0 / 3.0).abs() < 1e-15);
        let a = diag(&[1.0, 2.0]);
        let c = loewner_leq(&a, &a, 1e-10).unwrap();
        assert!(c.holds && c.margin == 0.0);
        assert!(!loewner_leq(&diag(&[2.0]), &diag(&[1.0]), 1e-10).unwrap().holds);
        assert!(loewner_leq(&a, &diag(&[1.0]), 1e-10).is_err());
    }

    #[test]
    fn sandwich_spec_validation() {
        assert!(SandwichSpec::new(1.0, 1.5, 3.0, 4.0, SandwichCase::I).is_ok());
        assert!(SandwichSpec::new(0.0, 1.5, 3.0, 4.0, SandwichCase::I).is_err());
        assert!(SandwichSpec::new(2.0, 1.5, 3.0, 4.0, SandwichCase::I).is_err());
        assert!(SandwichSpec::new(1.0, 3.0, 3.0, 4.0, SandwichCase::I).is_err());
        assert!(SandwichSpec::new(1.0, 1.5, 5.0, 4.0, SandwichCase::I).is_err());
        let s = spec(1.0, 1.2, 3.0, 4.0, SandwichCase::I);
        assert_eq!(s.h(), 4.0);
        assert_eq!(s.h_prime(), 2.5);
    }

    #[test]
    fn validate_sandwich_examples() {
        let a = diag(&[1.0, 1.5]);
        let b = diag(&[3.0, 4.0]);
        assert!(validate_sandwich(&a, &b, &spec(1.0, 1.5, 3.0, 4.0, SandwichCase::I)).unwrap());
        assert!(validate_sandwich(&b, &a, &spec(1.0, 1.5, 3.0, 4.0, SandwichCase::Ii)).unwrap());
        assert!(!validate_sandwich(&a, &b, &spec(1.0, 1.5, 3.0, 4.0, SandwichCase::Ii)).unwrap());
        let i = HermitianMatrix::identity(2);
        assert!(!validate_sandwich(&i, &i, &spec(0.5, 1.0, 1.5, 2.0, SandwichCase::I)).unwrap());
        assert!(validate_sandwich(
            &a,
            &HermitianMatrix::identity(3),
            &spec(1.0, 1.5, 3.0, 4.0, SandwichCase::I)
        )
        .is_err());
    }

    #[test]
    fn corollary_one_scalar_case() {
        let (a, b) = (diag(&[1.0]), diag(&[4.0]));
        let s = spec(1.0, 1.0, 4.0, 4.0, SandwichCase::I);
        let c = certify_corollary_one(&a, &b, 0.5, DeformParam::new(1.0).unwrap(), &s, 1e-10).unwrap();
        assert_eq!(c.scalar_factor, 1.5625);
        assert!(c.holds);
        // 1.5625 * 2 - 2.5 = 0.625, normalized by the larger side 3.125
        assert!((c.min_eigen_margin - 0.2).abs() < 1e-12);
    }

    #[test]
    fn corollary_one_rejects_bad_inputs() {
        let i = HermitianMatrix::identity(2);
        let s = spec(0.5, 1.0, 1.5, 2.0, SandwichCase::I);
        let r = DeformParam::new(1.0).unwrap();
        assert!(matches!(
            certify_corollary_one(&i, &i, 0.5, r, &s, 1e-10),
            Err(Error::SandwichViolation)
        ));
        let (a, b) = (diag(&[1.0]), diag(&[4.0]));
        let s = spec(1.0, 1.0, 4.0, 4.0, SandwichCase::I);
        let r = DeformParam::new(-0.5).unwrap();
        assert!(matches!(
            certify_corollary_one(&a, &b, 0.5, r, &s, 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn corollary_one_random_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = spec(1.0, 1.2, 3.0, 4.0, SandwichCase::I);
        for commuting in [true, false] {
            let (a, b) = random_sandwich_pair(&mut rng, 4, &s, commuting).unwrap();
            let c = certify_corollary_one(&a, &b, 0.3, DeformParam::new(0.5).unwrap(), &s, 1e-10).unwrap();
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn corollary_two_scalar_case() {
        let (a, b) = (diag(&[1.0]), diag(&[4.0]));
        let s = spec(1.0, 1.0, 4.0, 4.0, SandwichCase::I);
        let r1 = DeformParam::new(-1.0).unwrap();
        let r2 = DeformParam::new(1.0).unwrap();
        for variant in [Variant::AsStated, Variant::IntervalExtremal] {
            let (lo, hi) = certify_corollary_two(&a, &b, 0.5, r1, r2, &s, variant, 1e-10).unwrap();
            assert!((hi.scalar_factor - 2.125).abs() < 1e-15);
            assert!((lo.scalar_factor - 1.0 / 0.929_687_5).abs() < 1e-15);
            assert!(lo.holds && hi.holds);
        }
        let i = HermitianMatrix::identity(1);
        assert!(matches!(
            certify_corollary_two(
                &i,
                &i,
                0.5,
                r1,
                r2,
                &spec(0.5, 1.0, 1.5, 2.0, SandwichCase::I),
                Variant::AsStated,
                1e-10
            ),
            Err(Error::SandwichViolation)
        ));
    }

    #[test]
    fn corollary_two_random_interval_extremal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // h' = 2, h = 6
        let s = spec(1.0, 1.5, 3.0, 6.0, SandwichCase::I);
        assert_eq!((s.h_prime(), s.h()), (2.0, 6.0));
        let (a, b) = random_sandwich_pair(&mut rng, 3, &s, false).unwrap();
        let (lo, hi) = certify_corollary_two(
            &a,
            &b,
            0.4,
            DeformParam::new(-1.0).unwrap(),
            DeformParam::new(1.0).unwrap(),
            &s,
            Variant::IntervalExtremal,
            1e-10,
        )
        .unwrap();
        assert!(lo.holds && hi.holds, "{lo:?} {hi:?}");
    }

    #[test]
    fn random_pairs_satisfy_sandwich_in_both_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in [SandwichCase::I, SandwichCase::Ii] {
            let s = spec(1.0, 1.2, 3.0, 4.0, case);
            for dim in 1..=5 {
                let (a, b) = random_sandwich_pair(&mut rng, dim, &s, dim % 2 == 0).unwrap();
                assert!(validate_sandwich(&a, &b, &s).unwrap());
            }
        }
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(&mut rng, 6);
        let prod = &u * u.adjoint();
        assert!((prod - Mat::<c64>::identity(6, 6)).norm_l2() < 1e-12);
    }

    #[test]
    fn matrix_text_format() {
        let a = parse_matrix("dim 2\n1 2-1j\n2+1j 5\n").unwrap();
        assert_eq!(a.entry(0, 1), c64::new(2.0, -1.0));
        assert_eq!(a.entry(1, 0), c64::new(2.0, 1.0));
        let b = parse_matrix(&format_matrix(&a)).unwrap();
        assert_eq!(a, b);

        let c = parse_matrix("dim 1\n4\n").unwrap();
        assert_eq!(c, diag(&[4.0]));
        let d = parse_matrix("dim 2\n1.5e-3+0j 0\n0 2.5E+1-0j\n").unwrap();
        assert_eq!(d, diag(&[1.5e-3, 25.0]));

        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("size 2\n1 0\n0 1").is_err());
        assert!(parse_matrix("dim 2\n1 0\n").is_err());
        assert!(parse_matrix("dim 2\n1 0 0\n0 1\n").is_err());
        assert!(parse_matrix("dim 1\nabc\n").is_err());
        assert!(parse_matrix("dim 1\n1\n2\n").is_err());
        assert!(parse_matrix("dim 2\n1 2\n3 4\n").is_err());
    }
}
