//! C ABI over `young-bounds`.
//!
//! Every fallible function returns a [`YbStatus`] and writes its result
//! through out-pointers, which are left untouched on failure. The message of
//! the most recent failure on the calling thread is available from
//! [`yb_last_error_message`]. Matrices cross the boundary as opaque
//! [`YbMatrix`] handles that the caller releases with [`yb_matrix_free`].
//! Panics are caught at the boundary and reported as `YB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use faer::{c64, Mat};
use young_bounds::operator::read_matrix_file;
use young_bounds::verifier::list_diffs;
use young_bounds::{
    certify_corollary_one, certify_corollary_two, certify_point, eval_diff, evaluate, exp_r, hermitian_power,
    kantorovich, list_bounds, loewner_leq, weighted_arithmetic, weighted_geometric, young_ratio, DeformParam,
    Error, EvalPoint, HermitianMatrix, OperatorCertificate, SandwichCase, SandwichSpec, Variant,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbStatus {
    Ok = 0,
    /// A required pointer was null or a string was not valid UTF-8.
    NullOrInvalidArgument = 1,
    InvalidPoint = 2,
    InvalidDeform = 3,
    Domain = 4,
    UnknownBound = 5,
    UnknownDiff = 6,
    Region = 7,
    InvalidRegion = 8,
    NotFound = 9,
    NotPositiveDefinite = 10,
    Eigen = 11,
    DimensionMismatch = 12,
    InvalidSandwich = 13,
    SandwichViolation = 14,
    Parse = 15,
    Io = 16,
    Panic = 99,
}

impl From<&Error> for YbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidPoint(_) => YbStatus::InvalidPoint,
            Error::InvalidDeform(_) => YbStatus::InvalidDeform,
            Error::Domain(_) => YbStatus::Domain,
            Error::UnknownBound(_) => YbStatus::UnknownBound,
            Error::UnknownDiff(_) => YbStatus::UnknownDiff,
            Error::Region(_) => YbStatus::Region,
            Error::InvalidRegion(_) => YbStatus::InvalidRegion,
            Error::NotFound { .. } => YbStatus::NotFound,
            Error::NotPositiveDefinite { .. } => YbStatus::NotPositiveDefinite,
            Error::Eigen(_) => YbStatus::Eigen,
            Error::DimensionMismatch(..) => YbStatus::DimensionMismatch,
            Error::InvalidSandwich(_) => YbStatus::InvalidSandwich,
            Error::SandwichViolation => YbStatus::SandwichViolation,
            Error::Parse(_) => YbStatus::Parse,
            Error::Io(_) => YbStatus::Io,
        }
    }
}

/// Which matrix sits below the other in the spectral sandwich.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbSandwichCase {
    /// `m <= A <= m' < M' <= B <= M`
    I = 0,
    /// `m <= B <= m' < M' <= A <= M`
    Ii = 1,
}

/// Constants used by the two-sided operator bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbVariant {
    AsStated = 0,
    IntervalExtremal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YbSandwich {
    pub m: f64,
    pub m_prime: f64,
    pub big_m_prime: f64,
    pub big_m: f64,
    pub case_: YbSandwichCase,
}

/// Pointwise check of a scalar bound against the ratio.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YbCertificate {
    pub ratio_value: f64,
    pub bound_value: f64,
    pub margin: f64,
    pub holds: bool,
    pub tol: f64,
}

/// Loewner-order check of an operator bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YbOperatorCertificate {
    pub scalar_factor: f64,
    pub min_eigen_margin: f64,
    pub holds: bool,
    pub tol: f64,
}

impl From<&OperatorCertificate> for YbOperatorCertificate {
    fn from(c: &OperatorCertificate) -> Self {
        YbOperatorCertificate {
            scalar_factor: c.scalar_factor,
            min_eigen_margin: c.min_eigen_margin,
            holds: c.holds,
            tol: c.tol,
        }
    }
}

/// Opaque Hermitian matrix handle.
pub struct YbMatrix(HermitianMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Failure inside a boundary call.
struct Fail(YbStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = YbStatus::from(&e);
        set_last_error(e.to_string());
        Fail(status)
    }
}

fn invalid(message: &str) -> Fail {
    set_last_error(message.to_string());
    Fail(YbStatus::NullOrInvalidArgument)
}

/// Run `body`, translating errors and panics into a status code.
fn boundary(body: impl FnOnce() -> Result<(), Fail>) -> YbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => YbStatus::Ok,
        Ok(Err(Fail(status))) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("panic: {message}"));
            YbStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid("string is not valid UTF-8"))
}

unsafe fn matrix<'a>(m: *const YbMatrix) -> Result<&'a HermitianMatrix, Fail> {
    m.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| invalid("null matrix handle"))
}

unsafe fn optional(p: *const f64) -> Option<f64> {
    p.as_ref().copied()
}

fn boxed(m: HermitianMatrix) -> *mut YbMatrix {
    Box::into_raw(Box::new(YbMatrix(m)))
}

fn sandwich(s: &YbSandwich) -> Result<SandwichSpec, Fail> {
    let case = match s.case_ {
        YbSandwichCase::I => SandwichCase::I,
        YbSandwichCase::Ii => SandwichCase::Ii,
    };
    Ok(SandwichSpec::new(s.m, s.m_prime, s.big_m_prime, s.big_m, case)?)
}

fn ids(source: impl Iterator<Item = &'static str>) -> Vec<CString> {
    source
        .map(|id| CString::new(id).expect("ids contain no nul"))
        .collect()
}

fn bound_ids() -> &'static [CString] {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    IDS.get_or_init(|| ids(list_bounds().iter().map(|b| b.id)))
}

fn diff_ids() -> &'static [CString] {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    IDS.get_or_init(|| ids(list_diffs().iter().map(|d| d.id)))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn yb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null if none occurred.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn yb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// `((1 - v) + v t) / t^v`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn yb_young_ratio(t: f64, v: f64, out: *mut f64) -> YbStatus {
    boundary(|| write(out, young_ratio(EvalPoint::new(t, v)?)))
}

/// Kantorovich constant `(t + 1)^2 / (4 t)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn yb_kantorovich(t: f64, out: *mut f64) -> YbStatus {
    boundary(|| write(out, kantorovich(t)?))
}

/// Deformed exponential `(1 + r x)^(1/r)`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn yb_exp_r(r: f64, x: f64, out: *mut f64) -> YbStatus {
    boundary(|| write(out, exp_r(r, x)?))
}

/// Number of entries in the bound catalog.
#[no_mangle]
pub extern "C" fn yb_bound_count() -> usize {
    list_bounds().len()
}

/// Id of catalog entry `index` as a static string, or null when out of range.
#[no_mangle]
pub extern "C" fn yb_bound_id(index: usize) -> *const c_char {
    bound_ids().get(index).map_or(ptr::null(), |c| c.as_ptr())
}

/// Number of difference functions.
#[no_mangle]
pub extern "C" fn yb_diff_count() -> usize {
    list_diffs().len()
}

/// Id of difference function `index`, or null when out of range.
#[no_mangle]
pub extern "C" fn yb_diff_id(index: usize) -> *const c_char {
    diff_ids().get(index).map_or(ptr::null(), |c| c.as_ptr())
}

/// Value of bound `id` at `(t, v)`. `r` is null for the bound's default
/// deformation.
///
/// # Safety
/// `id` must be a nul-terminated string; `r` null or readable; `out` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn yb_evaluate(
    id: *const c_char,
    t: f64,
    v: f64,
    r: *const f64,
    out: *mut f64,
) -> YbStatus {
    boundary(|| {
        let id = read_str(id)?;
        let deform = optional(r).map(DeformParam::new).transpose()?;
        write(out, evaluate(id, EvalPoint::new(t, v)?, deform)?)
    })
}

/// Certify bound `id` against the ratio at `(t, v)` with absolute tolerance
/// `tol`.
///
/// # Safety
/// As for [`yb_evaluate`].
#[no_mangle]
pub unsafe extern "C" fn yb_certify_point(
    id: *const c_char,
    t: f64,
    v: f64,
    r: *const f64,
    tol: f64,
    out: *mut YbCertificate,
) -> YbStatus {
    boundary(|| {
        let id = read_str(id)?;
        let deform = optional(r).map(DeformParam::new).transpose()?;
        let c = certify_point(id, EvalPoint::new(t, v)?, deform, tol)?;
        write(
            out,
            YbCertificate {
                ratio_value: c.ratio_value,
                bound_value: c.bound_value,
                margin: c.margin,
                holds: c.holds,
                tol: c.tol,
            },
        )
    })
}

/// Value of difference function `id` at `(t, v)`; `r` is required only by
/// the deformed difference and must be null otherwise.
///
/// # Safety
/// As for [`yb_evaluate`].
#[no_mangle]
pub unsafe extern "C" fn yb_eval_diff(
    id: *const c_char,
    t: f64,
    v: f64,
    r: *const f64,
    out: *mut f64,
) -> YbStatus {
    boundary(|| {
        let id = read_str(id)?;
        write(out, eval_diff(id, EvalPoint::new(t, v)?, optional(r))?)
    })
}

/// New real symmetric matrix from `dim * dim` row-major entries.
///
/// # Safety
/// `entries` must be readable for `dim * dim` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_new_real(
    dim: usize,
    entries: *const f64,
    out: *mut *mut YbMatrix,
) -> YbStatus {
    boundary(|| {
        if entries.is_null() || dim == 0 {
            return Err(invalid("need dim > 0 and non-null entries"));
        }
        let n = dim
            .checked_mul(dim)
            .ok_or_else(|| invalid("dimension overflows"))?;
        let values = std::slice::from_raw_parts(entries, n);
        let m = HermitianMatrix::from_real(dim, values)?;
        write(out, boxed(m))
    })
}

/// New Hermitian matrix from row-major real and imaginary parts.
///
/// # Safety
/// `re` and `im` must each be readable for `dim * dim` doubles; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_new_complex(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut YbMatrix,
) -> YbStatus {
    boundary(|| {
        if re.is_null() || im.is_null() || dim == 0 {
            return Err(invalid("need dim > 0 and non-null entries"));
        }
        let n = dim
            .checked_mul(dim)
            .ok_or_else(|| invalid("dimension overflows"))?;
        let (re, im) = (
            std::slice::from_raw_parts(re, n),
            std::slice::from_raw_parts(im, n),
        );
        let m = HermitianMatrix::new(Mat::from_fn(dim, dim, |i, j| {
            c64::new(re[i * dim + j], im[i * dim + j])
        }))?;
        write(out, boxed(m))
    })
}

/// Read a matrix from a text file (`dim n` then `n` rows of `re+imj`).
///
/// # Safety
/// `path` must be a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_from_file(path: *const c_char, out: *mut *mut YbMatrix) -> YbStatus {
    boundary(|| {
        let path = read_str(path)?;
        write(out, boxed(read_matrix_file(path)?))
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library not already freed.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_free(m: *mut YbMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of `m`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_dim(m: *const YbMatrix) -> usize {
    m.as_ref().map_or(0, |h| h.0.dim())
}

/// Entry `(row, col)` of `m`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_matrix_get(
    m: *const YbMatrix,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> YbStatus {
    boundary(|| {
        let m = matrix(m)?;
        if row >= m.dim() || col >= m.dim() {
            return Err(invalid("index out of range"));
        }
        if re.is_null() || im.is_null() {
            return Err(invalid("null output pointer"));
        }
        let z = m.entry(row, col);
        write(re, z.re)?;
        write(im, z.im)
    })
}

/// `(1 - v) A + v B`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_weighted_arithmetic(
    a: *const YbMatrix,
    b: *const YbMatrix,
    v: f64,
    out: *mut *mut YbMatrix,
) -> YbStatus {
    boundary(|| write(out, boxed(weighted_arithmetic(matrix(a)?, matrix(b)?, v)?)))
}

/// `A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}`.
///
/// # Safety
/// As for [`yb_weighted_arithmetic`].
#[no_mangle]
pub unsafe extern "C" fn yb_weighted_geometric(
    a: *const YbMatrix,
    b: *const YbMatrix,
    v: f64,
    out: *mut *mut YbMatrix,
) -> YbStatus {
    boundary(|| write(out, boxed(weighted_geometric(matrix(a)?, matrix(b)?, v)?)))
}

/// `A^p` for positive-definite `A`.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_hermitian_power(a: *const YbMatrix, p: f64, out: *mut *mut YbMatrix) -> YbStatus {
    boundary(|| write(out, boxed(hermitian_power(matrix(a)?, p)?)))
}

/// Whether `A <= B` in Loewner order, with the normalized eigenvalue margin.
///
/// # Safety
/// `a` and `b` must be live handles; `holds` and `margin` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_loewner_leq(
    a: *const YbMatrix,
    b: *const YbMatrix,
    tol: f64,
    holds: *mut bool,
    margin: *mut f64,
) -> YbStatus {
    boundary(|| {
        if holds.is_null() || margin.is_null() {
            return Err(invalid("null output pointer"));
        }
        let c = loewner_leq(matrix(a)?, matrix(b)?, tol)?;
        write(holds, c.holds)?;
        write(margin, c.margin)
    })
}

/// One-sided bound `A nabla_v B <= exp_r(4 v (1 - v) (K(h) - 1)) A #_v B`.
///
/// # Safety
/// `a` and `b` must be live handles; `s` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn yb_certify_corollary_one(
    a: *const YbMatrix,
    b: *const YbMatrix,
    v: f64,
    r: f64,
    s: *const YbSandwich,
    tol: f64,
    out: *mut YbOperatorCertificate,
) -> YbStatus {
    boundary(|| {
        let s = sandwich(s.as_ref().ok_or_else(|| invalid("null sandwich"))?)?;
        let c = certify_corollary_one(matrix(a)?, matrix(b)?, v, DeformParam::new(r)?, &s, tol)?;
        write(out, YbOperatorCertificate::from(&c))
    })
}

/// Two-sided bound; writes the lower and upper certificates.
///
/// # Safety
/// `a` and `b` must be live handles; `s` readable; `lower` and `upper`
/// writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn yb_certify_corollary_two(
    a: *const YbMatrix,
    b: *const YbMatrix,
    v: f64,
    r1: f64,
    r2: f64,
    s: *const YbSandwich,
    variant: YbVariant,
    tol: f64,
    lower: *mut YbOperatorCertificate,
    upper: *mut YbOperatorCertificate,
) -> YbStatus {
    boundary(|| {
        if lower.is_null() || upper.is_null() {
            return Err(invalid("null output pointer"));
        }
        let s = sandwich(s.as_ref().ok_or_else(|| invalid("null sandwich"))?)?;
        let variant = match variant {
            YbVariant::AsStated => Variant::AsStated,
            YbVariant::IntervalExtremal => Variant::IntervalExtremal,
        };
        let (lo, hi) = certify_corollary_two(
            matrix(a)?,
            matrix(b)?,
            v,
            DeformParam::new(r1)?,
            DeformParam::new(r2)?,
            &s,
            variant,
            tol,
        )?;
        write(lower, YbOperatorCertificate::from(&lo))?;
        write(upper, YbOperatorCertificate::from(&hi))
    })
}
