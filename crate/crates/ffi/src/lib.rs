//! C ABI over `bethe_bbs`.
//!
//! Every fallible call returns a [`BbsStatus`] and writes its result through an out pointer.
//! Handles and strings handed out here must be released with the matching `_free` function.

use bethe_bbs::bbs::{evolve, row_energy, Capacity};
use bethe_bbs::crystal::Path;
use bethe_bbs::kkr::{kkr_from_path, kkr_to_path, unrestricted_from_path};
use bethe_bbs::rigged::RiggedConfig;
use bethe_bbs::tau::{energy_table, rho_table, tau_table, verify_triple, EnergyVariant, TauTable};
use bethe_bbs::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BbsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    InvalidRc = 5,
    NotHighest = 6,
    BoundaryCheck = 7,
    NotSubMultiset = 8,
    IndexOutOfRange = 9,
    /// An identity check found a counterexample.
    CheckFailed = 10,
    Panic = 11,
}

/// A tensor product of single-row crystal elements.
pub struct BbsPath(Path);
/// A rigged configuration.
pub struct BbsRiggedConfig(RiggedConfig);
/// A table indexed by prefix length k and color d (τ, ρ or ℰ).
pub struct BbsTable(TauTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BbsStatus {
    match e {
        Error::Parse(_) => BbsStatus::Parse,
        Error::InvalidRc(_) => BbsStatus::InvalidRc,
        Error::NotHighest => BbsStatus::NotHighest,
        Error::BoundaryCheck => BbsStatus::BoundaryCheck,
        Error::NotSubMultiset(_) => BbsStatus::NotSubMultiset,
        _ => BbsStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into a status and storing the message.
fn guard(f: impl FnOnce() -> Result<(), BbsStatus>) -> BbsStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => BbsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BbsStatus::Panic
        }
    }
}

fn lift<T>(r: bethe_bbs::Result<T>) -> Result<T, BbsStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, BbsStatus> {
    if s.is_null() {
        set_error("null string argument".into());
        return Err(BbsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        BbsStatus::InvalidUtf8
    })
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, BbsStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle".into());
        BbsStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), BbsStatus> {
    if out.is_null() {
        set_error("null out pointer".into());
        return Err(BbsStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn put_box<T>(out: *mut *mut T, v: T) -> Result<(), BbsStatus> {
    if out.is_null() {
        set_error("null out pointer".into());
        return Err(BbsStatus::NullPointer);
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), BbsStatus> {
    let c = CString::new(s).map_err(|_| BbsStatus::InvalidInput)?;
    if out.is_null() {
        set_error("null out pointer".into());
        return Err(BbsStatus::NullPointer);
    }
    out.write(c.into_raw());
    Ok(())
}

fn capacity(l: u32) -> Capacity {
    if l == 0 {
        Capacity::Infinite
    } else {
        Capacity::Finite(l)
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn bbs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a path of rank `n`; boxes are separated by spaces, or one letter per box without spaces.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_path_parse(n: usize, text: *const c_char, out: *mut *mut BbsPath) -> BbsStatus {
    guard(|| {
        let p = lift(Path::parse(n, str_arg(text)?, 0))?;
        put_box(out, BbsPath(p))
    })
}

/// # Safety
/// `p` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_path_free(p: *mut BbsPath) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_path_render(p: *const BbsPath, out: *mut *mut c_char) -> BbsStatus {
    guard(|| put_string(out, obj(p)?.0.render()))
}

/// Number of tensor factors, 0 for NULL.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_path_len(p: *const BbsPath) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// T_l with the boundary check; `l == 0` means ∞.
///
/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_evolve(p: *const BbsPath, l: u32, out: *mut *mut BbsPath) -> BbsStatus {
    guard(|| {
        let q = lift(evolve(&obj(p)?.0, capacity(l)))?;
        put_box(out, BbsPath(q))
    })
}

/// Row energy E_l; `l == 0` means ∞.
///
/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_row_energy(p: *const BbsPath, l: u32, out: *mut i64) -> BbsStatus {
    guard(|| put(out, lift(row_energy(&obj(p)?.0, capacity(l)))?))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_rc_from_json(json: *const c_char, out: *mut *mut BbsRiggedConfig) -> BbsStatus {
    guard(|| {
        let rc = lift(RiggedConfig::from_json(str_arg(json)?))?;
        put_box(out, BbsRiggedConfig(rc))
    })
}

/// # Safety
/// `rc` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_rc_to_json(rc: *const BbsRiggedConfig, out: *mut *mut c_char) -> BbsStatus {
    guard(|| put_string(out, obj(rc)?.0.to_json()))
}

/// # Safety
/// `rc` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_rc_free(rc: *mut BbsRiggedConfig) {
    if !rc.is_null() {
        drop(Box::from_raw(rc));
    }
}

/// # Safety
/// `rc` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_kkr_to_path(rc: *const BbsRiggedConfig, out: *mut *mut BbsPath) -> BbsStatus {
    guard(|| {
        let p = lift(kkr_to_path(&obj(rc)?.0))?;
        put_box(out, BbsPath(p))
    })
}

/// Restricted RC of a highest path, or the unrestricted RC of any path when `unrestricted` is set.
///
/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_kkr_from_path(
    p: *const BbsPath,
    unrestricted: bool,
    out: *mut *mut BbsRiggedConfig,
) -> BbsStatus {
    guard(|| {
        let p = &obj(p)?.0;
        let rc = lift(if unrestricted { unrestricted_from_path(p) } else { kkr_from_path(p) })?;
        put_box(out, BbsRiggedConfig(rc))
    })
}

/// # Safety
/// `rc` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_tau_table(rc: *const BbsRiggedConfig, out: *mut *mut BbsTable) -> BbsStatus {
    guard(|| {
        let t = lift(tau_table(&obj(rc)?.0))?;
        put_box(out, BbsTable(t))
    })
}

/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_rho_table(p: *const BbsPath, out: *mut *mut BbsTable) -> BbsStatus {
    guard(|| {
        let t = lift(rho_table(&obj(p)?.0))?;
        put_box(out, BbsTable(t))
    })
}

/// Corner energies ℰ, or ℰ∨ when `check` is set.
///
/// # Safety
/// `p` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_energy_table(p: *const BbsPath, check: bool, out: *mut *mut BbsTable) -> BbsStatus {
    guard(|| {
        let variant = if check { EnergyVariant::Check } else { EnergyVariant::Full };
        let t = lift(energy_table(&obj(p)?.0, variant))?;
        put_box(out, BbsTable(t))
    })
}

/// Largest k; valid entries are 0 <= k <= len, 0 <= d <= rank + 1.
///
/// # Safety
/// `t` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_table_len(t: *const BbsTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `t` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_table_rank(t: *const BbsTable) -> usize {
    t.as_ref().map_or(0, |t| t.0.n)
}

/// # Safety
/// `t` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_table_get(t: *const BbsTable, k: usize, d: usize, out: *mut i64) -> BbsStatus {
    guard(|| {
        let t = &obj(t)?.0;
        if k > t.len() || d > t.n + 1 {
            set_error(format!("entry ({k}, {d}) outside the table"));
            return Err(BbsStatus::IndexOutOfRange);
        }
        put(out, t.get(k, d))
    })
}

/// # Safety
/// `t` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bbs_table_to_csv(t: *const BbsTable, out: *mut *mut c_char) -> BbsStatus {
    guard(|| put_string(out, obj(t)?.0.to_csv()))
}

/// # Safety
/// `t` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bbs_table_free(t: *mut BbsTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Checks τ = ρ = ℰ on every prefix; `CheckFailed` leaves the counterexample in `bbs_last_error`.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bbs_verify_triple(p: *const BbsPath) -> BbsStatus {
    guard(|| {
        let r = lift(verify_triple(&obj(p)?.0))?;
        if r.agree {
            Ok(())
        } else {
            set_error(format!("{:?}", r.counterexample));
            Err(BbsStatus::CheckFailed)
        }
    })
}
