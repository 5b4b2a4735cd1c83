//! C ABI over `oscbridge`.
//!
//! Every fallible function returns an [`OscStatus`] and writes its result
//! through an out pointer. On failure the out pointer is left untouched and
//! [`osc_last_error_message`] describes what went wrong on the calling thread.
//! Heap objects are exposed as opaque handles that must be released with their
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oscbridge::covariant::{self, MomentumPoint, SpacetimePoint};
use oscbridge::entanglement::{self, ReducedState};
use oscbridge::numerics::{self, DensityKernel, QuadratureGrid};
use oscbridge::oscillator::{self, CoupledParams, OscPoint};
use oscbridge::parton;
use oscbridge::OscError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    ZeroTemperature = 4,
    Numerical = 5,
    Panic = 6,
}

/// Normal-mode decomposition of the coupled pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscNormalModes {
    pub k: f64,
    pub eta: f64,
    pub omega: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

/// Opaque handle to the eigenvalues of the traced density matrix.
pub struct OscReducedState(ReducedState);

/// Opaque handle to a tabulated reduced density kernel.
pub struct OscDensityKernel(DensityKernel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(err: &OscError) -> OscStatus {
    match err {
        OscError::EtaOutOfRange { .. } => OscStatus::OutOfRange,
        OscError::ZeroTemperature => OscStatus::ZeroTemperature,
        OscError::UnderResolved(_) => OscStatus::Numerical,
        _ => OscStatus::InvalidArgument,
    }
}

/// Runs `body`, records any error or panic and maps it to a status.
fn guard<F>(body: F) -> OscStatus
where
    F: FnOnce() -> Result<(), OscStatus>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => OscStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("panic inside oscbridge".to_owned());
            OscStatus::Panic
        }
    }
}

fn fail(err: OscError) -> OscStatus {
    set_last_error(err.to_string());
    status_of(&err)
}

fn null(what: &str) -> OscStatus {
    set_last_error(format!("{what} is null"));
    OscStatus::NullPointer
}

fn finite(value: f64, what: &str) -> Result<f64, OscStatus> {
    if value.is_finite() {
        Ok(value)
    } else {
        set_last_error(format!("non-finite input: {what}"));
        Err(OscStatus::InvalidArgument)
    }
}

/// Writes `value` through `out`, failing on a null pointer.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn store<T>(out: *mut T, value: T, what: &str) -> Result<(), OscStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn check_out<T>(out: *mut T, what: &str) -> Result<(), OscStatus> {
    if out.is_null() {
        Err(null(what))
    } else {
        Ok(())
    }
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn osc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn osc_status_message(status: OscStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        OscStatus::Ok => b"ok\0",
        OscStatus::NullPointer => b"null pointer\0",
        OscStatus::InvalidArgument => b"invalid argument\0",
        OscStatus::OutOfRange => b"argument out of supported range\0",
        OscStatus::ZeroTemperature => b"zero-temperature limit\0",
        OscStatus::Numerical => b"numerical resolution failure\0",
        OscStatus::Panic => b"internal panic\0",
    };
    text.as_ptr().cast()
}

/// Normal modes for mass `m`, stiffness `a` and coupling `c`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_normal_modes(m: f64, a: f64, c: f64, out: *mut OscNormalModes) -> OscStatus {
    guard(|| {
        check_out(out, "out")?;
        let params = CoupledParams::new(m, a, c).map_err(fail)?;
        let d = oscillator::normal_modes(&params);
        store(
            out,
            OscNormalModes {
                k: d.k,
                eta: d.eta,
                omega: d.omega,
                omega_plus: d.omega_plus,
                omega_minus: d.omega_minus,
            },
            "out",
        )
    })
}

/// Ground-state wave function of the coupled pair at `(x1, x2)`.
#[no_mangle]
pub extern "C" fn osc_ground_state(x1: f64, x2: f64, eta: f64) -> f64 {
    oscillator::ground_state(OscPoint::new(x1, x2), eta)
}

/// Normalized Hermite function of order `k` at `x`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_hermite_fn(k: usize, x: f64, out: *mut f64) -> OscStatus {
    guard(|| {
        check_out(out, "out")?;
        let v = numerics::hermite_fn(k, x).map_err(fail)?;
        store(out, v, "out")
    })
}

/// `1 / cosh(eta)`.
#[no_mangle]
pub extern "C" fn osc_purity(eta: f64) -> f64 {
    entanglement::purity(eta)
}

/// Von Neumann entropy of either oscillator.
#[no_mangle]
pub extern "C" fn osc_entropy(eta: f64) -> f64 {
    entanglement::entropy(eta)
}

/// Thermal-oscillator entropy at `x = omega / T`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_thermal_entropy(x: f64, out: *mut f64) -> OscStatus {
    guard(|| {
        check_out(out, "out")?;
        let v = entanglement::thermal_entropy(x).map_err(fail)?;
        store(out, v, "out")
    })
}

/// Effective temperature and `omega / T`. Either out pointer may be null.
///
/// # Safety
/// Each out pointer must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_effective_temperature(
    eta: f64,
    omega: f64,
    temperature: *mut f64,
    x: *mut f64,
) -> OscStatus {
    guard(|| {
        let map = entanglement::effective_temperature(eta, omega).map_err(fail)?;
        if !temperature.is_null() {
            store(temperature, map.temperature, "temperature")?;
        }
        if !x.is_null() {
            store(x, map.x, "x")?;
        }
        Ok(())
    })
}

/// Boosts `(z, t)` in place by rapidity `eta`.
///
/// # Safety
/// `z` and `t` must be null or valid for reads and writes.
#[no_mangle]
pub unsafe extern "C" fn osc_boost_point(z: *mut f64, t: *mut f64, eta: f64) -> OscStatus {
    guard(|| {
        if z.is_null() {
            return Err(null("z"));
        }
        if t.is_null() {
            return Err(null("t"));
        }
        finite(eta, "eta")?;
        let p = SpacetimePoint::new(*z, *t);
        let q = covariant::boost_point(p, eta);
        store(z, q.z, "z")?;
        store(t, q.t, "t")
    })
}

/// Boosted spacetime wave function.
#[no_mangle]
pub extern "C" fn osc_boosted_wavefunction(z: f64, t: f64, eta: f64) -> f64 {
    covariant::boosted_wavefunction(SpacetimePoint::new(z, t), eta)
}

/// Boosted momentum-space wave function.
#[no_mangle]
pub extern "C" fn osc_momentum_wavefunction(qz: f64, q0: f64, eta: f64) -> f64 {
    covariant::momentum_wavefunction(MomentumPoint::new(qz, q0), eta)
}

/// Width `sqrt(cosh(eta) / 2)` of the longitudinal marginal.
#[no_mangle]
pub extern "C" fn osc_width(eta: f64) -> f64 {
    parton::width(eta)
}

/// Builds the truncated eigenvalue list `p_0..p_kmax`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_reduced_state_new(eta: f64, k_max: usize, out: *mut *mut OscReducedState) -> OscStatus {
    guard(|| {
        check_out(out, "out")?;
        finite(eta, "eta")?;
        let state = entanglement::reduced_state(eta, k_max);
        store(out, Box::into_raw(Box::new(OscReducedState(state))), "out")
    })
}

/// Number of stored eigenvalues, `k_max + 1`. Zero for a null handle.
///
/// # Safety
/// `state` must be null or a live handle from [`osc_reduced_state_new`].
#[no_mangle]
pub unsafe extern "C" fn osc_reduced_state_len(state: *const OscReducedState) -> usize {
    state.as_ref().map_or(0, |s| s.0.eigenvalues.len())
}

/// Copies up to `capacity` eigenvalues into `buf` and reports how many were written.
///
/// # Safety
/// `state` must be a live handle and `buf` valid for `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn osc_reduced_state_eigenvalues(
    state: *const OscReducedState,
    buf: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> OscStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if buf.is_null() && capacity > 0 {
            return Err(null("buf"));
        }
        let n = capacity.min(state.0.eigenvalues.len());
        if n > 0 {
            ptr::copy_nonoverlapping(state.0.eigenvalues.as_ptr(), buf, n);
        }
        if !written.is_null() {
            written.write(n);
        }
        Ok(())
    })
}

/// Series purity and entropy of the truncated state. Either out pointer may be null.
///
/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn osc_reduced_state_summary(
    state: *const OscReducedState,
    purity: *mut f64,
    entropy: *mut f64,
) -> OscStatus {
    guard(|| {
        let state = state.as_ref().ok_or_else(|| null("state"))?;
        if !purity.is_null() {
            purity.write(state.0.purity);
        }
        if !entropy.is_null() {
            entropy.write(state.0.entropy);
        }
        Ok(())
    })
}

/// Releases a reduced state. Null is ignored.
///
/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osc_reduced_state_free(state: *mut OscReducedState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Tabulates the reduced density kernel on an `n`-node grid over `[-extent, extent]`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn osc_density_kernel_new(
    eta: f64,
    n: usize,
    extent: f64,
    out: *mut *mut OscDensityKernel,
) -> OscStatus {
    guard(|| {
        check_out(out, "out")?;
        let grid = QuadratureGrid::trapezoid(n, extent).map_err(fail)?;
        let kernel = numerics::oracle_reduced_density(eta, &grid).map_err(fail)?;
        store(out, Box::into_raw(Box::new(OscDensityKernel(kernel))), "out")
    })
}

/// Quadrature trace of the kernel.
///
/// # Safety
/// `kernel` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn osc_density_kernel_trace(kernel: *const OscDensityKernel, out: *mut f64) -> OscStatus {
    guard(|| {
        let kernel = kernel.as_ref().ok_or_else(|| null("kernel"))?;
        store(out, kernel.0.trace(), "out")
    })
}

/// Quadrature purity `Tr rho^2` of the kernel.
///
/// # Safety
/// `kernel` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn osc_density_kernel_purity(kernel: *const OscDensityKernel, out: *mut f64) -> OscStatus {
    guard(|| {
        let kernel = kernel.as_ref().ok_or_else(|| null("kernel"))?;
        store(out, kernel.0.purity(), "out")
    })
}

/// Projection `<k|rho|k>` onto the `k`-th oscillator state.
///
/// # Safety
/// `kernel` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn osc_density_kernel_fock_projection(
    kernel: *const OscDensityKernel,
    k: usize,
    out: *mut f64,
) -> OscStatus {
    guard(|| {
        let kernel = kernel.as_ref().ok_or_else(|| null("kernel"))?;
        check_out(out, "out")?;
        let v = kernel.0.fock_projection(k).map_err(fail)?;
        store(out, v, "out")
    })
}

/// Releases a density kernel. Null is ignored.
///
/// # Safety
/// `kernel` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn osc_density_kernel_free(kernel: *mut OscDensityKernel) {
    if !kernel.is_null() {
        drop(Box::from_raw(kernel));
    }
}
