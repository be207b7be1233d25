//! C ABI for the medianwalls library.
//!
//! All functions follow the same conventions:
//!
//! - Handles (`MwWallSpace`, `MwMedianSpace`) are opaque and must be released
//!   with their matching `*_free` function.
//! - Strings returned through `*mut c_char` are NUL-terminated, owned by the
//!   caller, and must be released with [`mw_string_free`].
//! - Fallible functions return an [`MwStatus`]; on any status other than
//!   `Ok` the output arguments are untouched and [`mw_last_error`] holds a
//!   message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use medianwalls::io;
use medianwalls::medianization::{enumerate_sections, FiniteMedianSpace, DEFAULT_WALL_BUDGET};
use medianwalls::{Error, PointId, WallSpace};

/// Result code for every fallible entry point. The numeric values match the
/// CLI exit codes where a counterpart exists.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MwStatus {
    /// The call succeeded.
    Ok = 0,
    /// The input was malformed or outside the function's domain.
    InvalidInput = 2,
    /// An enumeration or resource budget was exceeded.
    BudgetExceeded = 3,
    /// A required pointer argument was NULL.
    NullArgument = 4,
}

/// Opaque handle to a finite space with measured walls.
pub struct MwWallSpace(WallSpace);

/// Opaque handle to the median space produced by [`mw_medianize`].
pub struct MwMedianSpace(FiniteMedianSpace);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let text = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(e: Error) -> MwStatus {
    let status = match e.exit_code() {
        3 => MwStatus::BudgetExceeded,
        _ => MwStatus::InvalidInput,
    };
    set_error(e.to_string());
    status
}

fn null_argument(name: &str) -> MwStatus {
    set_error(format!("{name} must not be NULL"));
    MwStatus::NullArgument
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).unwrap_or_default().into_raw()
}

/// Returns the error message for the most recent failing call on this
/// thread. The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn mw_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by any `*_to_json` function.
///
/// # Safety
/// `text` must be NULL or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mw_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses a wall space from its JSON document and writes a new handle to
/// `out`.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_from_json(
    json: *const c_char,
    out: *mut *mut MwWallSpace,
) -> MwStatus {
    if json.is_null() {
        return null_argument("json");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("json is not valid UTF-8");
            return MwStatus::InvalidInput;
        }
    };
    match io::wallspace_from_json(text) {
        Ok(space) => {
            *out = Box::into_raw(Box::new(MwWallSpace(space)));
            MwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Serializes the wall space back to its JSON document.
///
/// # Safety
/// `space` must be a live handle from [`mw_wallspace_from_json`].
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_to_json(space: *const MwWallSpace) -> *mut c_char {
    if space.is_null() {
        return ptr::null_mut();
    }
    into_c_string(io::wallspace_to_json(&(*space).0))
}

/// Releases a wall-space handle.
///
/// # Safety
/// `space` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_free(space: *mut MwWallSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of points in the space; 0 when the handle is NULL.
///
/// # Safety
/// `space` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_point_count(space: *const MwWallSpace) -> usize {
    if space.is_null() {
        0
    } else {
        (*space).0.point_count()
    }
}

/// Number of walls in the space; 0 when the handle is NULL.
///
/// # Safety
/// `space` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_wall_count(space: *const MwWallSpace) -> usize {
    if space.is_null() {
        0
    } else {
        (*space).0.wall_count()
    }
}

/// Wall pseudo-distance between points `i` and `j`, written to `out` as a
/// double.
///
/// # Safety
/// `space` must be a live handle and `out` writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn mw_wallspace_pdist(
    space: *const MwWallSpace,
    i: usize,
    j: usize,
    out: *mut f64,
) -> MwStatus {
    if space.is_null() {
        return null_argument("space");
    }
    if out.is_null() {
        return null_argument("out");
    }
    match (*space).0.wall_pdist(PointId(i), PointId(j)) {
        Ok(w) => {
            *out = io::rat_to_f64(w);
            MwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the median space of `space` and writes a new handle to `out`.
/// `wall_budget` caps the number of walls; pass 0 for the default.
///
/// # Safety
/// `space` must be a live handle and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_medianize(
    space: *const MwWallSpace,
    wall_budget: usize,
    out: *mut *mut MwMedianSpace,
) -> MwStatus {
    if space.is_null() {
        return null_argument("space");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let budget = if wall_budget == 0 {
        DEFAULT_WALL_BUDGET
    } else {
        wall_budget
    };
    match enumerate_sections(&(*space).0, budget) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(MwMedianSpace(m)));
            MwStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Number of points in the median space; 0 when the handle is NULL.
///
/// # Safety
/// `median` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_median_space_len(median: *const MwMedianSpace) -> usize {
    if median.is_null() {
        0
    } else {
        (*median).0.len()
    }
}

/// Distance between median-space points `i` and `j`, written to `out`.
///
/// # Safety
/// `median` must be a live handle and `out` writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn mw_median_space_dist(
    median: *const MwMedianSpace,
    i: usize,
    j: usize,
    out: *mut f64,
) -> MwStatus {
    if median.is_null() {
        return null_argument("median");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let m = &(*median).0;
    if i >= m.len() || j >= m.len() {
        set_error(format!("point index out of range (len = {})", m.len()));
        return MwStatus::InvalidInput;
    }
    *out = io::rat_to_f64(m.dist(i, j));
    MwStatus::Ok
}

/// Index of the median-space point carrying base point `i`.
///
/// # Safety
/// `median` must be a live handle and `out` writable storage for one usize.
#[no_mangle]
pub unsafe extern "C" fn mw_median_space_embedded(
    median: *const MwMedianSpace,
    i: usize,
    out: *mut usize,
) -> MwStatus {
    if median.is_null() {
        return null_argument("median");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let m = &(*median).0;
    if i >= m.wall_space().point_count() {
        set_error("base point index out of range");
        return MwStatus::InvalidInput;
    }
    *out = m.embedded(PointId(i));
    MwStatus::Ok
}

/// Median space as a distance-matrix JSON document.
///
/// # Safety
/// `median` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_median_space_to_json(median: *const MwMedianSpace) -> *mut c_char {
    if median.is_null() {
        return ptr::null_mut();
    }
    into_c_string(io::median_space_to_json(&(*median).0))
}

/// Releases a median-space handle.
///
/// # Safety
/// `median` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mw_median_space_free(median: *mut MwMedianSpace) {
    if !median.is_null() {
        drop(Box::from_raw(median));
    }
}

/// Runs the full quantitative audit and writes the JSON report to `out`.
/// `wall_budget` caps the number of walls; pass 0 for the default.
///
/// # Safety
/// `space` must be a live handle and `out` writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_audit_json(
    space: *const MwWallSpace,
    wall_budget: usize,
    out: *mut *mut c_char,
) -> MwStatus {
    if space.is_null() {
        return null_argument("space");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let budget = if wall_budget == 0 {
        DEFAULT_WALL_BUDGET
    } else {
        wall_budget
    };
    match medianwalls::audit::full_audit(&(*space).0, budget) {
        Ok(report) => {
            *out = into_c_string(io::audit_report_to_json(&report));
            MwStatus::Ok
        }
        Err(e) => fail(e),
    }
}
