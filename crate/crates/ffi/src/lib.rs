//! C ABI over the `iugehp` engine.
//!
//! Systems live behind an opaque handle created by `iugehp_system_new` or
//! `iugehp_system_from_json` and released with `iugehp_system_free`. Every
//! fallible call returns an [`IugehpStatus`]; on failure a message is kept in
//! thread-local storage and read back with `iugehp_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iugehp::config::RunConfig;
use iugehp::spectrum::{energy, system_coefficients};
use iugehp::specfun::{erf_complex, ComplexValue};
use iugehp::thermo::{partition_closed, partition_quadrature, partition_sum, thermo_props, Integrand, Route, ThermoConfig};
use iugehp::{EnergyVariant, Error, FieldConfig, PotentialParams, System, UnitSystem};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IugehpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    NoBoundState = 4,
    NoConvergence = 5,
    Panic = 6,
}

pub const IUGEHP_VARIANT_PRINTED: i32 = 0;
pub const IUGEHP_VARIANT_RESCALED: i32 = 1;

pub const IUGEHP_ROUTE_SUM: i32 = 0;
pub const IUGEHP_ROUTE_QUADRATURE: i32 = 1;
pub const IUGEHP_ROUTE_CLOSED: i32 = 2;

/// Potential parameters in the engine's natural units.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IugehpPotential {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub g: f64,
    pub k: f64,
    pub alpha: f64,
    pub delta: f64,
    pub tau: f64,
}

/// Thermodynamic functions at one inverse temperature.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IugehpThermo {
    pub z: f64,
    pub f: f64,
    pub u: f64,
    pub s: f64,
    pub c: f64,
    pub m: f64,
    pub chi: f64,
    /// Non-zero when `m` and `chi` come from one-sided field differences.
    pub one_sided_field: i32,
}

/// Opaque system handle.
pub struct IugehpSystem {
    system: System,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> IugehpStatus {
    match e {
        Error::InvalidConfig(_) | Error::InvalidRoute(_) => IugehpStatus::InvalidArgument,
        Error::Domain(_) | Error::NoRealSolution { .. } | Error::NonNormalizable(_) => IugehpStatus::Domain,
        Error::NoBoundStates(_) => IugehpStatus::NoBoundState,
        Error::RootNotBracketed { .. } | Error::NoConvergence { .. } | Error::Quadrature { .. } => {
            IugehpStatus::NoConvergence
        }
    }
}

enum Failure {
    Null(&'static str),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

/// Runs `f`, records any failure and converts it to a status code.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> IugehpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IugehpStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            IugehpStatus::NullPointer
        }
        Ok(Err(Failure::Engine(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            IugehpStatus::Panic
        }
    }
}

unsafe fn handle<'a>(h: *const IugehpSystem) -> Result<&'a System, Failure> {
    h.as_ref().map(|s| &s.system).ok_or(Failure::Null("system handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

fn variant(v: i32) -> Result<EnergyVariant, Failure> {
    match v {
        IUGEHP_VARIANT_PRINTED => Ok(EnergyVariant::Printed),
        IUGEHP_VARIANT_RESCALED => Ok(EnergyVariant::Rescaled),
        _ => Err(Error::InvalidConfig(format!("unknown energy variant {v}")).into()),
    }
}

fn route(r: i32) -> Result<Route, Failure> {
    match r {
        IUGEHP_ROUTE_SUM => Ok(Route::Sum),
        IUGEHP_ROUTE_QUADRATURE => Ok(Route::Quadrature),
        IUGEHP_ROUTE_CLOSED => Ok(Route::Closed),
        _ => Err(Error::InvalidRoute(format!("unknown route {r}")).into()),
    }
}

fn boxed(system: System, out: &mut *mut IugehpSystem) {
    *out = Box::into_raw(Box::new(IugehpSystem { system }));
}

/// Message of the last failed call on this thread, or NULL if there is none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn iugehp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn iugehp_clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn iugehp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a system in natural units with the given fields.
///
/// # Safety
/// `potential` must point to a valid `IugehpPotential` and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn iugehp_system_new(
    potential: *const IugehpPotential,
    b_field: f64,
    phi_ab: f64,
    out: *mut *mut IugehpSystem,
) -> IugehpStatus {
    guard(|| {
        let p = potential.as_ref().ok_or(Failure::Null("potential"))?;
        let out = out_ref(out, "out")?;
        let units = UnitSystem::default();
        let params = PotentialParams {
            a: p.a,
            b: p.b,
            c: p.c,
            d: p.d,
            g: p.g,
            k: p.k,
            alpha: p.alpha,
            delta: p.delta,
            tau: p.tau,
        };
        let system = System::new(params, FieldConfig::new(b_field, phi_ab, &units), units);
        system.validate()?;
        boxed(system, out);
        Ok(())
    })
}

/// Creates a system from a JSON run configuration (the CLI's `--config`
/// format). Only the `potential`, `fields` and `units` sections are used.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn iugehp_system_from_json(json: *const c_char, out: *mut *mut IugehpSystem) -> IugehpStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let out = out_ref(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Error::InvalidConfig(format!("configuration is not UTF-8: {e}")))?;
        let system = RunConfig::from_json(text)?.system()?;
        boxed(system, out);
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `system` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn iugehp_system_free(system: *mut IugehpSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Energy `E_{n,m}` for one of the `IUGEHP_VARIANT_*` mappings.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_energy(
    system: *const IugehpSystem,
    n: u32,
    m: i32,
    energy_variant: i32,
    out: *mut f64,
) -> IugehpStatus {
    guard(|| {
        let s = handle(system)?;
        let out = out_ref(out, "out")?;
        *out = energy(n, m, s, variant(energy_variant)?)?.energy;
        Ok(())
    })
}

/// Dimensionless eigenvalue `ε_{n,m}`.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_epsilon(system: *const IugehpSystem, n: u32, m: i32, out: *mut f64) -> IugehpStatus {
    guard(|| {
        let s = handle(system)?;
        let out = out_ref(out, "out")?;
        *out = energy(n, m, s, EnergyVariant::Printed)?.epsilon;
        Ok(())
    })
}

/// Number of bound radial levels for `m`.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_bound_count(system: *const IugehpSystem, m: i32, out: *mut u32) -> IugehpStatus {
    guard(|| {
        let s = handle(system)?;
        let out = out_ref(out, "out")?;
        *out = system_coefficients(s, m)?.bound_count();
        Ok(())
    })
}

fn thermo_config(s: &System, m: i32, energy_variant: i32) -> Result<ThermoConfig, Failure> {
    Ok(ThermoConfig {
        variant: variant(energy_variant)?,
        ..ThermoConfig::new(*s, m)
    })
}

/// Partition function at inverse temperature `beta` over the levels of `m`.
/// The quadrature route integrates `exp(−βE)`; the closed route evaluates the
/// printed closed form and returns its real part.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_partition(
    system: *const IugehpSystem,
    beta: f64,
    m: i32,
    energy_variant: i32,
    partition_route: i32,
    out: *mut f64,
) -> IugehpStatus {
    guard(|| {
        let s = handle(system)?;
        let out = out_ref(out, "out")?;
        let cfg = thermo_config(s, m, energy_variant)?;
        *out = match route(partition_route)? {
            Route::Sum => partition_sum(beta, &cfg)?,
            Route::Quadrature => partition_quadrature(beta, &cfg, Integrand::Canonical)?.value,
            Route::Closed => partition_closed(beta, &cfg)?.value.re,
        };
        Ok(())
    })
}

/// `Z, F, U, S, C, M, χ` at inverse temperature `beta`.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_thermo(
    system: *const IugehpSystem,
    beta: f64,
    m: i32,
    energy_variant: i32,
    thermo_route: i32,
    out: *mut IugehpThermo,
) -> IugehpStatus {
    guard(|| {
        let s = handle(system)?;
        let out = out_ref(out, "out")?;
        let r = thermo_props(beta, &thermo_config(s, m, energy_variant)?, route(thermo_route)?)?;
        *out = IugehpThermo {
            z: r.z,
            f: r.f,
            u: r.u,
            s: r.s,
            c: r.c,
            m: r.m_mag,
            chi: r.chi,
            one_sided_field: r.one_sided_field as i32,
        };
        Ok(())
    })
}

/// Complex error function.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iugehp_erf(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> IugehpStatus {
    guard(|| {
        let out_re = out_ref(out_re, "out_re")?;
        let out_im = out_ref(out_im, "out_im")?;
        let w = erf_complex(ComplexValue::new(re, im))?;
        *out_re = w.re;
        *out_im = w.im;
        Ok(())
    })
}
