//! C ABI for the `bicomplex` crate.
//!
//! Matrices cross the boundary as opaque [`BcxMatrix`] handles built from
//! JSON. Every fallible function returns a [`BcxStatus`]; on failure the
//! message is available from [`bcx_last_error_message`] on the same thread.
//! Strings handed out by the library are released with [`bcx_string_free`],
//! matrices with [`bcx_matrix_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bicomplex::error::Error;
use bicomplex::field::{ComplexField, C64};
use bicomplex::io::{
    jordan_json, lattice_json, matrix_from_json, parse_json, spectral_json, AnyMatrix, Backend,
    Dual, ToJson,
};
use bicomplex::jordan::bicomplex_jordan;
use bicomplex::lattice::bicomplex_lattice;
use bicomplex::matrix::{BicomplexMatrix, DEFAULT_SINGULAR_TOL};
use bicomplex::scalar::BicomplexScalar;
use bicomplex::spectral::selfadjoint_diagonalize;
use serde_json::{json, Value};

/// Result code of every fallible call. `BCX_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcxStatus {
    Ok = 0,
    NotInvertible = 1,
    UnsupportedOnExactBackend = 2,
    EmptySet = 3,
    NegativeHyperbolic = 4,
    InvalidArgument = 5,
    ShapeMismatch = 6,
    NotSquare = 7,
    SingularComponent = 8,
    DoesNotSplit = 9,
    ConsistencyFailure = 10,
    NotSelfAdjoint = 11,
    NoConvergence = 12,
    DegenerateSpectrum = 13,
    SubspaceIsFull = 14,
    ZeroSubspace = 15,
    Parse = 16,
    /// A required pointer argument was null.
    NullPointer = 100,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 101,
    /// The library panicked; this is a bug.
    Panic = 102,
}

impl From<&Error> for BcxStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotInvertible { .. } => BcxStatus::NotInvertible,
            Error::UnsupportedOnExactBackend(_) => BcxStatus::UnsupportedOnExactBackend,
            Error::EmptySet => BcxStatus::EmptySet,
            Error::NegativeHyperbolic => BcxStatus::NegativeHyperbolic,
            Error::InvalidArgument(_) => BcxStatus::InvalidArgument,
            Error::ShapeMismatch(_) => BcxStatus::ShapeMismatch,
            Error::NotSquare { .. } => BcxStatus::NotSquare,
            Error::SingularComponent { .. } => BcxStatus::SingularComponent,
            Error::DoesNotSplit { .. } => BcxStatus::DoesNotSplit,
            Error::ConsistencyFailure(_) => BcxStatus::ConsistencyFailure,
            Error::NotSelfAdjoint { .. } => BcxStatus::NotSelfAdjoint,
            Error::NoConvergence { .. } => BcxStatus::NoConvergence,
            Error::DegenerateSpectrum { .. } => BcxStatus::DegenerateSpectrum,
            Error::SubspaceIsFull { .. } => BcxStatus::SubspaceIsFull,
            Error::ZeroSubspace { .. } => BcxStatus::ZeroSubspace,
            Error::Parse(_) => BcxStatus::Parse,
        }
    }
}

/// Opaque matrix handle.
pub struct BcxMatrix {
    inner: AnyMatrix,
}

/// A floating-point bicomplex scalar in idempotent coordinates:
/// `c1_re + i c1_im` is the coefficient of `e`, `c2_*` that of `e†`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcxScalar {
    pub c1_re: f64,
    pub c1_im: f64,
    pub c2_re: f64,
    pub c2_im: f64,
}

impl From<BicomplexScalar<C64>> for BcxScalar {
    fn from(s: BicomplexScalar<C64>) -> Self {
        let (a, b) = (s.component(1), s.component(2));
        BcxScalar { c1_re: a.re, c1_im: a.im, c2_re: b.re, c2_im: b.im }
    }
}

impl From<BcxScalar> for BicomplexScalar<C64> {
    fn from(s: BcxScalar) -> Self {
        BicomplexScalar::from_idempotent(C64::new(s.c1_re, s.c1_im), C64::new(s.c2_re, s.c2_im))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Lib(Error),
    Status(BcxStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BcxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BcxStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            BcxStatus::from(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic".into());
            BcxStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(BcxStatus::NullPointer, format!("{what} is null"))
}

unsafe fn matrix_ref<'a>(m: *const BcxMatrix, what: &str) -> Result<&'a BcxMatrix, Failure> {
    m.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure::Status(BcxStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Failure::Lib(Error::InvalidArgument(e.to_string())))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_matrix(out: *mut *mut BcxMatrix, m: AnyMatrix) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(BcxMatrix { inner: m }));
    Ok(())
}

fn exact_only(m: &AnyMatrix) -> Result<BicomplexMatrix<bicomplex::field::GaussRational>, Error> {
    match m {
        Dual::Exact(a) => Ok(a.clone()),
        Dual::Float(_) => Err(Error::InvalidArgument(
            "this computation is only available on the exact backend".into(),
        )),
    }
}

/// Message of the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bcx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn bcx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a matrix from JSON text. String entries select the exact backend.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_from_json(json: *const c_char, out: *mut *mut BcxMatrix) -> BcxStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let m = matrix_from_json(&parse_json(text)?, None)?;
        write_matrix(out, m)
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_free(m: *mut BcxMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row count, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_rows(m: *const BcxMatrix) -> usize {
    m.as_ref().map_or(0, |m| match &m.inner {
        Dual::Exact(a) => a.rows(),
        Dual::Float(a) => a.rows(),
    })
}

/// Column count, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_cols(m: *const BcxMatrix) -> usize {
    m.as_ref().map_or(0, |m| match &m.inner {
        Dual::Exact(a) => a.cols(),
        Dual::Float(a) => a.cols(),
    })
}

/// 1 if the matrix uses exact Gaussian-rational arithmetic, 0 otherwise.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_is_exact(m: *const BcxMatrix) -> i32 {
    m.as_ref().map_or(0, |m| (m.inner.backend() == Backend::Exact) as i32)
}

/// Serializes a matrix to JSON.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_to_json(m: *const BcxMatrix, out: *mut *mut c_char) -> BcxStatus {
    guard(|| {
        let m = matrix_ref(m, "m")?;
        write_string(out, m.inner.to_json().to_string())
    })
}

/// Product `a * b`. The result is exact only if both operands are.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_mul(
    a: *const BcxMatrix,
    b: *const BcxMatrix,
    out: *mut *mut BcxMatrix,
) -> BcxStatus {
    guard(|| {
        let (a, b) = (matrix_ref(a, "a")?, matrix_ref(b, "b")?);
        let product = match (&a.inner, &b.inner) {
            (Dual::Exact(x), Dual::Exact(y)) => Dual::Exact(x.mul(y)?),
            (x, y) => Dual::Float(x.clone().into_float().mul(&y.clone().into_float())?),
        };
        write_matrix(out, product)
    })
}

/// Inverse; fails with `BCX_STATUS_SINGULAR_COMPONENT` if either component is singular.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_inverse(m: *const BcxMatrix, out: *mut *mut BcxMatrix) -> BcxStatus {
    guard(|| {
        let inv = match &matrix_ref(m, "m")?.inner {
            Dual::Exact(a) => Dual::Exact(a.inverse()?),
            Dual::Float(a) => Dual::Float(a.inverse()?),
        };
        write_matrix(out, inv)
    })
}

fn determinant_json<F: ComplexField + ToJson>(a: &BicomplexMatrix<F>) -> Result<Value, Error> {
    Ok(json!({
        "determinant": a.determinant()?.to_json(),
        "singular": [
            a.m1().is_singular(DEFAULT_SINGULAR_TOL)?,
            a.m2().is_singular(DEFAULT_SINGULAR_TOL)?,
        ],
    }))
}

/// `{"determinant", "singular": [bool, bool]}` as JSON.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_determinant_json(m: *const BcxMatrix, out: *mut *mut c_char) -> BcxStatus {
    guard(|| {
        let v = match &matrix_ref(m, "m")?.inner {
            Dual::Exact(a) => determinant_json(a)?,
            Dual::Float(a) => determinant_json(a)?,
        };
        write_string(out, v.to_string())
    })
}

/// Jordan decomposition of an exact matrix as JSON `{p, j, blocks, superdiagonal_alphabet}`.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_jordan_json(m: *const BcxMatrix, out: *mut *mut c_char) -> BcxStatus {
    guard(|| {
        let a = exact_only(&matrix_ref(m, "m")?.inner)?;
        let data = bicomplex_jordan(&a)?;
        write_string(out, jordan_json(&data).to_string())
    })
}

/// Invariant-subspace lattice of an exact matrix, as JSON when `dot == 0`
/// or as a Graphviz digraph otherwise.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_lattice(m: *const BcxMatrix, dot: i32, out: *mut *mut c_char) -> BcxStatus {
    guard(|| {
        let a = exact_only(&matrix_ref(m, "m")?.inner)?;
        let lattice = bicomplex_lattice(&a)?;
        lattice.verify_order()?;
        let text = if dot != 0 { lattice.to_dot() } else { lattice_json(&lattice).to_string() };
        write_string(out, text)
    })
}

/// Unitary diagonalization of a self-adjoint matrix as JSON `{p, d, pairing, residuals}`.
/// `pairing` may be null for the identity pairing; otherwise it holds `len`
/// indices and `len` must equal the dimension.
///
/// # Safety
/// `m` must be a live handle, `out` a valid pointer, and `pairing` null or
/// valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn bcx_matrix_spectral_json(
    m: *const BcxMatrix,
    pairing: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> BcxStatus {
    guard(|| {
        let a = matrix_ref(m, "m")?.inner.clone().into_float();
        let perm = (!pairing.is_null()).then(|| std::slice::from_raw_parts(pairing, len));
        let data = selfadjoint_diagonalize(&a, perm)?;
        write_string(out, spectral_json(&data).to_string())
    })
}

/// Scalar from Euclidean coordinates `z1 + j z2`.
#[no_mangle]
pub extern "C" fn bcx_scalar_from_euclidean(z1_re: f64, z1_im: f64, z2_re: f64, z2_im: f64) -> BcxScalar {
    BicomplexScalar::from_euclidean(C64::new(z1_re, z1_im), C64::new(z2_re, z2_im)).into()
}

#[no_mangle]
pub extern "C" fn bcx_scalar_add(a: BcxScalar, b: BcxScalar) -> BcxScalar {
    (BicomplexScalar::from(a) + BicomplexScalar::from(b)).into()
}

#[no_mangle]
pub extern "C" fn bcx_scalar_sub(a: BcxScalar, b: BcxScalar) -> BcxScalar {
    (BicomplexScalar::from(a) - BicomplexScalar::from(b)).into()
}

#[no_mangle]
pub extern "C" fn bcx_scalar_mul(a: BcxScalar, b: BcxScalar) -> BcxScalar {
    (BicomplexScalar::from(a) * BicomplexScalar::from(b)).into()
}

#[no_mangle]
pub extern "C" fn bcx_scalar_conjugate(a: BcxScalar) -> BcxScalar {
    BicomplexScalar::from(a).conjugate().into()
}

/// Multiplicative inverse; `BCX_STATUS_NOT_INVERTIBLE` if a component is zero.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bcx_scalar_inverse(a: BcxScalar, out: *mut BcxScalar) -> BcxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = BicomplexScalar::from(a).invert()?.into();
        Ok(())
    })
}

/// Hyperbolic modulus `|c1| e + |c2| e†`, written as its two components.
///
/// # Safety
/// `h1` and `h2` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bcx_scalar_hyperbolic_norm(a: BcxScalar, h1: *mut f64, h2: *mut f64) -> BcxStatus {
    guard(|| {
        if h1.is_null() || h2.is_null() {
            return Err(null("h1/h2"));
        }
        (*h1, *h2) = BicomplexScalar::from(a).hyperbolic_norm().to_f64();
        Ok(())
    })
}
