//! C interface to the cedga engine.
//!
//! Algebras live behind an opaque `CedgaDga` handle. Every fallible call
//! returns a `CedgaStatus`; the message of the last failure on the calling
//! thread is available from `cedga_last_error`. Strings handed out by the
//! library are released with `cedga_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cedga::algebra::check_dga;
use cedga::modules::augment::find_augmentations;
use cedga::surgery::{build_cap_algebra, pipeline_compare, CapSpec};
use cedga::{io, registry, Dga, Error};

/// Opaque algebra handle.
pub struct CedgaDga {
    inner: Dga,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CedgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// A mathematical failure: d^2 != 0, a failed comparison, bad cap data.
    Math = 4,
    /// The augmentation search exceeded its bit budget.
    Budget = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CedgaPipelineResult {
    pub pass: bool,
    /// Meaningful only when `pass`.
    pub shift: i64,
    pub cthulhu_total: usize,
    pub rhom_total: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CedgaStatus {
    match e {
        Error::Budget { .. } => CedgaStatus::Budget,
        e if e.is_input() => CedgaStatus::Parse,
        _ => CedgaStatus::Math,
    }
}

/// Runs `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), (CedgaStatus, String)>) -> CedgaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CedgaStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CedgaStatus::Internal
        }
    }
}

fn engine(e: Error) -> (CedgaStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (CedgaStatus, String)> {
    if p.is_null() {
        return Err((CedgaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CedgaStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn dga_ref<'a>(h: *const CedgaDga) -> Result<&'a Dga, (CedgaStatus, String)> {
    h.as_ref().map(|d| &d.inner).ok_or((CedgaStatus::NullPointer, "null handle".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (CedgaStatus, String)> {
    if p.is_null() {
        Err((CedgaStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn publish(d: Dga, out: *mut *mut CedgaDga) {
    // SAFETY: callers check `out` first.
    unsafe { *out = Box::into_raw(Box::new(CedgaDga { inner: d })) };
}

/// Parses a JSON algebra document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_dga_from_json(json: *const c_char, out: *mut *mut CedgaDga) -> CedgaStatus {
    guard(|| {
        out_ptr(out)?;
        let d = io::parse_dga(read_str(json)?).map_err(engine)?;
        publish(d, out);
        Ok(())
    })
}

/// Loads a built-in algebra: `unknot`, `trefoil`, `hopf-attaching`, `synthetic-N`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_dga_from_registry(name: *const c_char, out: *mut *mut CedgaDga) -> CedgaStatus {
    guard(|| {
        out_ptr(out)?;
        let name = read_str(name)?;
        let d = registry::get(name).ok_or((CedgaStatus::Parse, format!("no built-in algebra `{name}`")))?;
        publish(d, out);
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cedga_dga_free(h: *mut CedgaDga) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Sets `*violations` to the number of validation failures.
///
/// # Safety
/// `h` must be a live handle; `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_dga_check(h: *const CedgaDga, violations: *mut usize) -> CedgaStatus {
    guard(|| {
        out_ptr(violations)?;
        let r = check_dga(dga_ref(h)?);
        *violations = r.violations.len();
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle or null; null gives 0.
#[no_mangle]
pub unsafe extern "C" fn cedga_generator_count(h: *const CedgaDga) -> usize {
    h.as_ref().map_or(0, |d| d.inner.n_gens())
}

/// Counts augmentations of the algebra with at most `max_bits` degree-0 generators.
///
/// # Safety
/// `h` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_augmentation_count(
    h: *const CedgaDga,
    max_bits: usize,
    count: *mut usize,
) -> CedgaStatus {
    guard(|| {
        out_ptr(count)?;
        *count = find_augmentations(dga_ref(h)?, max_bits).map_err(engine)?.len();
        Ok(())
    })
}

/// Compares the Cthulhu complex with RHom for caps of `k0` and `k1` copies
/// of every idempotent, using augmentation indices `aug0` and `aug1`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_pipeline_compare(
    h: *const CedgaDga,
    k0: u32,
    k1: u32,
    aug0: usize,
    aug1: usize,
    out: *mut CedgaPipelineResult,
) -> CedgaStatus {
    guard(|| {
        out_ptr(out)?;
        let base = dga_ref(h)?;
        let s0 = CapSpec::uniform(base.clone(), k0).map_err(engine)?;
        let s1 = CapSpec::uniform(base.clone(), k1).map_err(engine)?;
        let pick = |s: &CapSpec, i: usize| {
            let augs = find_augmentations(&build_cap_algebra(s).map_err(engine)?, 24).map_err(engine)?;
            let n = augs.len();
            augs.into_iter().nth(i).ok_or((CedgaStatus::Parse, format!("augmentation {i} out of range, {n} found")))
        };
        let (e0, e1) = (pick(&s0, aug0)?, pick(&s1, aug1)?);
        let r = pipeline_compare(base, &s0, &s1, &e0, &e1).map_err(engine)?;
        *out = CedgaPipelineResult {
            pass: r.pass,
            shift: r.shift.unwrap_or(0),
            cthulhu_total: r.cthulhu.total(),
            rhom_total: r.rhom.total(),
        };
        Ok(())
    })
}

/// Canonical JSON; free the result with `cedga_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cedga_dga_to_json(h: *const CedgaDga, out: *mut *mut c_char) -> CedgaStatus {
    guard(|| {
        out_ptr(out)?;
        let s =
            CString::new(io::dga_to_json(dga_ref(h)?)).map_err(|_| (CedgaStatus::Internal, "nul in output".into()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cedga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cedga_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
