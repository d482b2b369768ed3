//! C ABI over `rhs-core`.
//!
//! Objects cross the boundary as opaque handles created by `rhs_*_new` style
//! constructors and released with the matching `rhs_*_free`. Every fallible
//! call returns an [`RhsStatus`]; on failure a message for the calling thread
//! is available from [`rhs_last_error_message`]. Panics are caught here and
//! reported as [`RhsStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;
use std::sync::Arc;

use num_complex::Complex64;
use rhs_core::dual::{seminorm_qk, DualFunctional, SeminormIndex};
use rhs_core::fourier::{fourier_coeff, TorusFunction};
use rhs_core::hermite::gaussian_moment;
use rhs_core::ladder::{embed_to_hilbert, HilbertElement, LadderContext, LadderSpec, PhiElement};
use rhs_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LevelOrder = 3,
    OutOfRange = 4,
    DimensionMismatch = 5,
    LadderMismatch = 6,
    InsufficientData = 7,
    CoconeViolation = 8,
    Aliasing = 9,
    Diagnostic = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RhsComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for RhsComplex {
    fn from(z: Complex64) -> Self {
        RhsComplex { re: z.re, im: z.im }
    }
}

impl From<RhsComplex> for Complex64 {
    fn from(z: RhsComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// A ladder of dimensions.
pub struct RhsLadder {
    ctx: LadderContext,
}

/// An element of one level of a ladder.
pub struct RhsPhi {
    inner: PhiElement,
}

/// A square-summable sequence with a certified tail.
pub struct RhsHilbert {
    inner: HilbertElement,
}

/// A linear functional given by its coefficients.
pub struct RhsFunctional {
    inner: DualFunctional,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RhsStatus {
    match e {
        Error::Specification(_) | Error::InvalidParameter(_) | Error::Usage(_) => {
            RhsStatus::InvalidArgument
        }
        Error::InvalidGrid(_) => RhsStatus::InvalidArgument,
        Error::LevelOrder { .. } => RhsStatus::LevelOrder,
        Error::LevelOutOfRange { .. } => RhsStatus::OutOfRange,
        Error::DimensionMismatch { .. } => RhsStatus::DimensionMismatch,
        Error::LadderMismatch => RhsStatus::LadderMismatch,
        Error::InsufficientData { .. } => RhsStatus::InsufficientData,
        Error::CoconeViolation { .. } => RhsStatus::CoconeViolation,
        Error::Aliasing { .. } => RhsStatus::Aliasing,
        Error::Diagnostic(_) => RhsStatus::Diagnostic,
    }
}

struct Failure(RhsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(RhsStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(RhsStatus::InvalidArgument, msg.into())
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> RhsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            RhsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {msg}"));
            RhsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn complex_slice(data: *const RhsComplex, len: usize) -> Result<Vec<Complex64>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if data.is_null() {
        return Err(null("coefficient array"));
    }
    Ok(slice::from_raw_parts(data, len)
        .iter()
        .map(|&z| z.into())
        .collect())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn rhs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `spec` (`identity`, `even`, or a list such as `1:3:7`).
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rhs_ladder_new(
    spec: *const c_char,
    out: *mut *mut RhsLadder,
) -> RhsStatus {
    guard(|| {
        let spec: LadderSpec = str_arg(spec, "spec")?.parse()?;
        let ctx = rhs_core::ladder::ladder_from_hilbert(spec)?;
        write(out, boxed(RhsLadder { ctx }), "out")
    })
}

/// # Safety
/// `ladder` must be null or a handle from [`rhs_ladder_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rhs_ladder_free(ladder: *mut RhsLadder) {
    if !ladder.is_null() {
        drop(Box::from_raw(ladder));
    }
}

/// Dimension of `level` (1-based).
///
/// # Safety
/// `ladder` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_ladder_dim(
    ladder: *const RhsLadder,
    level: usize,
    out: *mut usize,
) -> RhsStatus {
    guard(|| {
        let l = deref(ladder, "ladder")?;
        write(out, l.ctx.ladder().dim(level)?, "out")
    })
}

/// Element of `level` with `len` coefficients, which must equal the level's
/// dimension.
///
/// # Safety
/// `ladder` must be a live handle, `coeffs` must point to `len` values (or be
/// null when `len` is 0), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_new(
    ladder: *const RhsLadder,
    level: usize,
    coeffs: *const RhsComplex,
    len: usize,
    out: *mut *mut RhsPhi,
) -> RhsStatus {
    guard(|| {
        let l = deref(ladder, "ladder")?;
        let inner = l.ctx.element(level, complex_slice(coeffs, len)?)?;
        write(out, boxed(RhsPhi { inner }), "out")
    })
}

/// # Safety
/// `phi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_free(phi: *mut RhsPhi) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Level the element is stored at, or 0 for a null handle.
///
/// # Safety
/// `phi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_level(phi: *const RhsPhi) -> usize {
    phi.as_ref().map_or(0, |p| p.inner.level())
}

/// Smallest level containing the element, or 0 for a null handle.
///
/// # Safety
/// `phi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_canonical_level(phi: *const RhsPhi) -> usize {
    phi.as_ref().map_or(0, |p| p.inner.canonical_level())
}

/// Number of stored coefficients, or 0 for a null handle.
///
/// # Safety
/// `phi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_len(phi: *const RhsPhi) -> usize {
    phi.as_ref().map_or(0, |p| p.inner.coeffs().len())
}

/// Copies the coefficients into `buf`, which must hold at least
/// [`rhs_phi_len`] values.
///
/// # Safety
/// `phi` must be a live handle and `buf` must point to `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_coeffs(
    phi: *const RhsPhi,
    buf: *mut RhsComplex,
    cap: usize,
) -> RhsStatus {
    guard(|| {
        let p = deref(phi, "phi")?;
        let coeffs = p.inner.coeffs();
        if cap < coeffs.len() {
            return Err(Failure(
                RhsStatus::DimensionMismatch,
                format!("buffer holds {cap} values, {} needed", coeffs.len()),
            ));
        }
        if coeffs.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let dst = slice::from_raw_parts_mut(buf, coeffs.len());
        for (d, s) in dst.iter_mut().zip(coeffs) {
            *d = (*s).into();
        }
        Ok(())
    })
}

/// Inclusion into a level at or above the element's own.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_include(
    phi: *const RhsPhi,
    level: usize,
    out: *mut *mut RhsPhi,
) -> RhsStatus {
    guard(|| {
        let inner = deref(phi, "phi")?.inner.include(level)?;
        write(out, boxed(RhsPhi { inner }), "out")
    })
}

/// `<a, b>`, linear in `a` and conjugate linear in `b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_inner_product(
    a: *const RhsPhi,
    b: *const RhsPhi,
    out: *mut RhsComplex,
) -> RhsStatus {
    guard(|| {
        let z = deref(a, "a")?.inner.inner_product(&deref(b, "b")?.inner)?;
        write(out, z.into(), "out")
    })
}

/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_phi_norm(phi: *const RhsPhi, out: *mut f64) -> RhsStatus {
    guard(|| write(out, deref(phi, "phi")?.inner.norm(), "out"))
}

/// The sequence `r^(n-1)`, `0 < r < 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_geometric(ratio: f64, out: *mut *mut RhsHilbert) -> RhsStatus {
    guard(|| {
        let inner = HilbertElement::geometric(ratio)?;
        write(out, boxed(RhsHilbert { inner }), "out")
    })
}

/// The sequence `n^(-p)`, `p > 1/2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_power(exponent: f64, out: *mut *mut RhsHilbert) -> RhsStatus {
    guard(|| {
        let inner = HilbertElement::power_law(exponent)?;
        write(out, boxed(RhsHilbert { inner }), "out")
    })
}

/// Embeds a ladder element as a finitely supported sequence.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_embed(
    phi: *const RhsPhi,
    out: *mut *mut RhsHilbert,
) -> RhsStatus {
    guard(|| {
        let inner = embed_to_hilbert(&deref(phi, "phi")?.inner);
        write(out, boxed(RhsHilbert { inner }), "out")
    })
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_free(h: *mut RhsHilbert) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `||x - P_n x||`. For power-law sequences this is a certified upper bound.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_tail_norm(
    h: *const RhsHilbert,
    n: usize,
    out: *mut f64,
) -> RhsStatus {
    guard(|| write(out, deref(h, "h")?.inner.tail_norm(n)?, "out"))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_norm(h: *const RhsHilbert, out: *mut f64) -> RhsStatus {
    guard(|| write(out, deref(h, "h")?.inner.norm(), "out"))
}

/// `P_n x` as an element of the smallest level of `ladder` with dimension at
/// least `n`.
///
/// # Safety
/// `ladder` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_hilbert_project(
    ladder: *const RhsLadder,
    h: *const RhsHilbert,
    n: usize,
    out: *mut *mut RhsPhi,
) -> RhsStatus {
    guard(|| {
        let inner = deref(ladder, "ladder")?
            .ctx
            .project(&deref(h, "h")?.inner, n)?;
        write(out, boxed(RhsPhi { inner }), "out")
    })
}

/// Functional with coefficients `coeffs[0..len]` and zero beyond.
///
/// # Safety
/// `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_from_coeffs(
    coeffs: *const RhsComplex,
    len: usize,
    out: *mut *mut RhsFunctional,
) -> RhsStatus {
    guard(|| {
        let c = Arc::new(complex_slice(coeffs, len)?);
        let inner = DualFunctional::new("coeffs", move |i| {
            c.get(i - 1).copied().unwrap_or(Complex64::new(0.0, 0.0))
        });
        write(out, boxed(RhsFunctional { inner }), "out")
    })
}

/// The functional `f_i = i!`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_factorial(out: *mut *mut RhsFunctional) -> RhsStatus {
    guard(|| {
        write(
            out,
            boxed(RhsFunctional {
                inner: DualFunctional::factorial(),
            }),
            "out",
        )
    })
}

/// The functional `x -> <x, y>`.
///
/// # Safety
/// `y` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_riesz(
    y: *const RhsPhi,
    out: *mut *mut RhsFunctional,
) -> RhsStatus {
    guard(|| {
        let inner = DualFunctional::riesz(&deref(y, "y")?.inner);
        write(out, boxed(RhsFunctional { inner }), "out")
    })
}

/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_free(f: *mut RhsFunctional) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` and `x` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_pair(
    f: *const RhsFunctional,
    x: *const RhsPhi,
    out: *mut RhsComplex,
) -> RhsStatus {
    guard(|| {
        let z = deref(f, "f")?.inner.pair(&deref(x, "x")?.inner);
        write(out, z.into(), "out")
    })
}

/// Operator norm of the restriction of `f` to `level`.
///
/// # Safety
/// `f` and `ladder` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_functional_restriction_norm(
    f: *const RhsFunctional,
    ladder: *const RhsLadder,
    level: usize,
    out: *mut f64,
) -> RhsStatus {
    guard(|| {
        let r = deref(f, "f")?
            .inner
            .restrict(deref(ladder, "ladder")?.ctx.ladder(), level)?;
        write(out, r.norm, "out")
    })
}

/// `q_k` of a finite coefficient vector.
///
/// # Safety
/// `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_seminorm_qk(
    coeffs: *const RhsComplex,
    len: usize,
    k: u32,
    out: *mut f64,
) -> RhsStatus {
    guard(|| {
        let v = complex_slice(coeffs, len)?;
        write(out, seminorm_qk(&v, SeminormIndex(k)), "out")
    })
}

/// `int xi^m exp(-xi^2/2) dxi` as a float. When `numer` and `denom` are given
/// they receive the exact value divided by `sqrt(2 pi)`; a ratio that does not
/// fit in `i64` reports `RHS_STATUS_OUT_OF_RANGE`.
///
/// # Safety
/// `value` must be writable; `numer` and `denom` may be null.
#[no_mangle]
pub unsafe extern "C" fn rhs_gaussian_moment(
    m: usize,
    value: *mut f64,
    numer: *mut i64,
    denom: *mut i64,
) -> RhsStatus {
    guard(|| {
        use num_traits::ToPrimitive;
        let q = gaussian_moment(m);
        write(value, q.to_f64(), "value")?;
        if !numer.is_null() || !denom.is_null() {
            let r = q.rational_part();
            let (n, d) = match (r.numer().to_i64(), r.denom().to_i64()) {
                (Some(n), Some(d)) => (n, d),
                _ => {
                    return Err(Failure(
                        RhsStatus::OutOfRange,
                        format!("moment {m} does not fit in 64-bit integers"),
                    ))
                }
            };
            if !numer.is_null() {
                numer.write(n);
            }
            if !denom.is_null() {
                denom.write(d);
            }
        }
        Ok(())
    })
}

/// Trapezoid Fourier coefficient `c_n` of a named function (`const`, `cosine`,
/// `expcos`, `sawtooth`) on an even grid with `grid > 2|n|`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rhs_fourier_coeff(
    name: *const c_char,
    n: i64,
    grid: usize,
    out: *mut RhsComplex,
) -> RhsStatus {
    guard(|| {
        let f = TorusFunction::named(str_arg(name, "name")?)?;
        write(out, fourier_coeff(&f, n, grid)?.into(), "out")
    })
}
