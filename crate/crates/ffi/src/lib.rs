//! C ABI over the core solvers: opaque handles, integer error codes, and
//! no panics across the boundary. The header is generated into
//! `include/bhc.h` by the build script.

use bhc_core::bitvec::BitVector;
use bhc_core::error::SolveError;
use bhc_core::instance::{verify, Instance, Solution};
use bhc_core::{branching, csp3, format, ilp, oracle, treewidth};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhcStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// Input text was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Instance or argument failed to parse or validate.
    Parse = 3,
    /// The solver declined the instance (limits, wrong class).
    Refused = 4,
    /// Internal consistency failure; report a bug.
    Internal = 5,
    /// Unknown algorithm name.
    UnknownAlgo = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg).ok();
    });
}

/// The most recent error message on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bhc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    })
}

/// An immutable parsed instance.
pub struct BhcInstance {
    inner: Instance,
}

/// A found center and radius.
pub struct BhcSolution {
    inner: Solution,
}

/// Parse the canonical instance text format. On success stores a handle
/// in `out`; free it with [`bhc_instance_free`].
///
/// # Safety
/// `text` must be a valid NUL-terminated C string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_parse(
    text: *const c_char,
    out: *mut *mut BhcInstance,
) -> BhcStatus {
    if text.is_null() || out.is_null() {
        set_error("null argument");
        return BhcStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        set_error("input is not UTF-8");
        return BhcStatus::InvalidUtf8;
    };
    match format::parse_instance(text) {
        Ok(parsed) => {
            *out = Box::into_raw(Box::new(BhcInstance { inner: parsed.instance }));
            BhcStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            BhcStatus::Parse
        }
    }
}

/// # Safety
/// `inst` must come from [`bhc_instance_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_free(inst: *mut BhcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_dim(inst: *const BhcInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.inner.dim())
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_num_blues(inst: *const BhcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.blues().len())
}

/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_num_reds(inst: *const BhcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.reds().len())
}

/// Maximum number of ones in any vector.
///
/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_data_conciseness(inst: *const BhcInstance) -> u32 {
    inst.as_ref().map_or(0, |i| i.inner.data_conciseness())
}

/// Serialize back to the canonical text format; the returned string must
/// be released with [`bhc_string_free`].
///
/// # Safety
/// `inst` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_instance_write(inst: *const BhcInstance) -> *mut c_char {
    let Some(i) = inst.as_ref() else {
        return ptr::null_mut();
    };
    CString::new(format::write_instance(&i.inner)).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `s` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn bhc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Check a center (given by its support) and radius against an instance.
/// Writes 1 into `out` if the ball separates, 0 otherwise.
///
/// # Safety
/// `support` must point to `support_len` readable coordinates; other
/// pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bhc_verify(
    inst: *const BhcInstance,
    support: *const u32,
    support_len: usize,
    radius: u32,
    out: *mut i32,
) -> BhcStatus {
    let (Some(i), false) = (inst.as_ref(), out.is_null()) else {
        set_error("null argument");
        return BhcStatus::NullArgument;
    };
    if support.is_null() && support_len > 0 {
        set_error("null support with nonzero length");
        return BhcStatus::NullArgument;
    }
    let coords: Vec<u32> = std::slice::from_raw_parts(support, support_len).to_vec();
    let center = match BitVector::from_coords(i.inner.dim(), coords) {
        Ok(c) => c,
        Err(e) => {
            set_error(e);
            return BhcStatus::Parse;
        }
    };
    match verify(&i.inner, &center, radius) {
        Ok(ok) => {
            *out = i32::from(ok);
            BhcStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            BhcStatus::Parse
        }
    }
}

fn dispatch(inst: &Instance, algo: &str, budget: i64) -> Result<Option<Solution>, BhcStatus> {
    let need_budget = || -> Result<u32, BhcStatus> {
        if budget < 0 {
            set_error("this algorithm needs a conciseness budget (scp >= 0)");
            return Err(BhcStatus::Parse);
        }
        Ok(budget as u32)
    };
    let result: Result<Option<Solution>, SolveError> = match algo {
        "brute" => oracle::brute_force_solve(inst).map(|o| o.map(|s| s.solution)),
        "bounded" => Ok(oracle::solve_bounded_conciseness(inst, need_budget()?)),
        "ilp" => ilp::solve_ilp(inst),
        "csp3" => csp3::solve_icon3(inst),
        "branch-blue" => branching::solve_icon_blue(inst),
        "branch-red" => branching::solve_icon_red(inst),
        "branch-scp" => Ok(branching::solve_scp_icon(inst, need_budget()?)),
        "treewidth" => {
            treewidth::solve_treewidth_auto(inst).map(|(r, _, _)| r.map(|o| o.solution))
        }
        _ => {
            set_error(format!("unknown algorithm `{algo}`"));
            return Err(BhcStatus::UnknownAlgo);
        }
    };
    match result {
        Ok(s) => Ok(s),
        Err(SolveError::Refused(msg)) => {
            set_error(msg);
            Err(BhcStatus::Refused)
        }
        Err(e) => {
            set_error(e.to_string());
            Err(BhcStatus::Internal)
        }
    }
}

/// Solve with the named algorithm (`brute`, `bounded`, `ilp`, `csp3`,
/// `branch-blue`, `branch-red`, `branch-scp`, `treewidth`). `budget` is
/// the conciseness budget for the bounded solvers, -1 otherwise. On a YES
/// answer `*out` holds a solution handle, on NO it is null.
///
/// # Safety
/// All pointers must be valid; `algo` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bhc_solve(
    inst: *const BhcInstance,
    algo: *const c_char,
    budget: i64,
    out: *mut *mut BhcSolution,
) -> BhcStatus {
    let (Some(i), false, false) = (inst.as_ref(), algo.is_null(), out.is_null()) else {
        set_error("null argument");
        return BhcStatus::NullArgument;
    };
    let Ok(algo) = CStr::from_ptr(algo).to_str() else {
        set_error("algorithm name is not UTF-8");
        return BhcStatus::InvalidUtf8;
    };
    let solved = std::panic::catch_unwind(|| dispatch(&i.inner, algo, budget));
    match solved {
        Ok(Ok(Some(sol))) => {
            *out = Box::into_raw(Box::new(BhcSolution { inner: sol }));
            BhcStatus::Ok
        }
        Ok(Ok(None)) => {
            *out = ptr::null_mut();
            BhcStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("solver panicked");
            BhcStatus::Internal
        }
    }
}

/// # Safety
/// `sol` must come from [`bhc_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bhc_solution_free(sol: *mut BhcSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `sol` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_solution_radius(sol: *const BhcSolution) -> u32 {
    sol.as_ref().map_or(0, |s| s.inner.radius)
}

/// Number of ones in the center.
///
/// # Safety
/// `sol` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bhc_solution_conciseness(sol: *const BhcSolution) -> u32 {
    sol.as_ref().map_or(0, |s| s.inner.center.conciseness())
}

/// Copy the center's support into `buf` (up to `cap` coordinates) and
/// return the support size. Call with `cap = 0` to query the size.
///
/// # Safety
/// `buf` must point to `cap` writable slots (or be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn bhc_solution_center(
    sol: *const BhcSolution,
    buf: *mut u32,
    cap: usize,
) -> usize {
    let Some(s) = sol.as_ref() else {
        return 0;
    };
    let support = s.inner.center.support();
    if !buf.is_null() {
        let n = cap.min(support.len());
        std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&support[..n]);
    }
    support.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn parse(text: &str) -> *mut BhcInstance {
        let c = CString::new(text).unwrap();
        let mut out: *mut BhcInstance = ptr::null_mut();
        let status = unsafe { bhc_instance_parse(c.as_ptr(), &mut out) };
        assert_eq!(status, BhcStatus::Ok);
        out
    }

    #[test]
    fn parse_solve_verify_roundtrip() {
        let inst = parse("d 3\nB 1 2\nB 1 3\nR\n");
        unsafe {
            assert_eq!(bhc_instance_dim(inst), 3);
            assert_eq!(bhc_instance_num_blues(inst), 2);
            assert_eq!(bhc_instance_num_reds(inst), 1);
            assert_eq!(bhc_instance_data_conciseness(inst), 2);

            let algo = CString::new("brute").unwrap();
            let mut sol: *mut BhcSolution = ptr::null_mut();
            assert_eq!(bhc_solve(inst, algo.as_ptr(), -1, &mut sol), BhcStatus::Ok);
            assert!(!sol.is_null());
            assert_eq!(bhc_solution_radius(sol), 1);
            assert_eq!(bhc_solution_conciseness(sol), 3);
            let mut buf = [0u32; 8];
            let n = bhc_solution_center(sol, buf.as_mut_ptr(), buf.len());
            assert_eq!(&buf[..n], &[1, 2, 3]);

            let mut ok = 0i32;
            assert_eq!(bhc_verify(inst, buf.as_ptr(), n, 1, &mut ok), BhcStatus::Ok);
            assert_eq!(ok, 1);
            assert_eq!(bhc_verify(inst, buf.as_ptr(), n, 0, &mut ok), BhcStatus::Ok);
            assert_eq!(ok, 0);

            bhc_solution_free(sol);
            bhc_instance_free(inst);
        }
    }

    #[test]
    fn no_instance_yields_null_solution() {
        let inst = parse("d 2\nB 1 2\nB\nR 1\nR 2\n");
        unsafe {
            let algo = CString::new("ilp").unwrap();
            let mut sol: *mut BhcSolution = ptr::null_mut();
            assert_eq!(bhc_solve(inst, algo.as_ptr(), -1, &mut sol), BhcStatus::Ok);
            assert!(sol.is_null());
            bhc_instance_free(inst);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        let mut out: *mut BhcInstance = ptr::null_mut();
        let bad = CString::new("d 2\nB 5\n").unwrap();
        let status = unsafe { bhc_instance_parse(bad.as_ptr(), &mut out) };
        assert_eq!(status, BhcStatus::Parse);
        let msg = unsafe { CStr::from_ptr(bhc_last_error()) }.to_str().unwrap();
        assert!(msg.contains("line 2"));

        let inst = parse("d 2\nB 1\nR 2\n");
        unsafe {
            let algo = CString::new("nope").unwrap();
            let mut sol: *mut BhcSolution = ptr::null_mut();
            assert_eq!(bhc_solve(inst, algo.as_ptr(), -1, &mut sol), BhcStatus::UnknownAlgo);
            let algo = CString::new("bounded").unwrap();
            assert_eq!(bhc_solve(inst, algo.as_ptr(), -1, &mut sol), BhcStatus::Parse);
            bhc_instance_free(inst);
        }
        assert_eq!(unsafe { bhc_instance_parse(ptr::null(), &mut out) }, BhcStatus::NullArgument);
    }
}
