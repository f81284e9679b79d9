//! C interface to the class-counting engine and the bound certifier.
//!
//! Every function returns an [`RcStatus`]. On failure the message is kept per thread and
//! can be read with [`rc_last_error_message`]. Handles are opaque and must be released
//! with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use regclass::catalog::CatalogEntry;
use regclass::chartab::CharacterTable;
use regclass::liebounds::{find_claim, grid_certify, GridReport};
use regclass::numtheory::Verdict;
use regclass::permgroup::{class_counts, ClassTable, DEFAULT_CAP};
use regclass::Error;

/// Status codes. Library errors keep the numbering of the core error type.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    Invalid = 1,
    Unsupported = 2,
    CapExceeded = 3,
    NotNormal = 4,
    NotNormalizing = 5,
    Consistency = 6,
    Cache = 7,
    Io = 8,
    NullPointer = 100,
    BadString = 101,
    OutOfRange = 102,
    Panic = 103,
}

impl From<&Error> for RcStatus {
    fn from(e: &Error) -> Self {
        match e.code() {
            1 => RcStatus::Invalid,
            2 => RcStatus::Unsupported,
            3 => RcStatus::CapExceeded,
            4 => RcStatus::NotNormal,
            5 => RcStatus::NotNormalizing,
            6 => RcStatus::Consistency,
            7 => RcStatus::Cache,
            _ => RcStatus::Io,
        }
    }
}

/// Class counts of a group at a prime.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RcClassCounts {
    pub p: u64,
    pub k: u64,
    pub k_p: u64,
    pub k_p_prime: u64,
}

/// Counts of p-rational and p'-rational irreducible characters.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RcCharacterCounts {
    pub p: u64,
    pub p_rational: u64,
    pub p_prime_rational: u64,
    pub union_count: u64,
    pub rational: u64,
    /// -1, 0 or 1 as the union count is below, equal to or above 2√(p−1); 2 if undecided.
    pub union_vs_threshold: i32,
}

/// A catalog group with its class table.
pub struct RcGroup {
    entry: CatalogEntry,
    classes: ClassTable,
    characters: OnceLock<Result<CharacterTable, Error>>,
}

/// The outcome of certifying a bundled claim over its grid.
pub struct RcGrid {
    report: GridReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RcStatus, msg: impl Into<String>) -> RcStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), RcStatus>) -> RcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(RcStatus::Panic, "internal panic"),
    }
}

fn lib_err(e: &Error) -> RcStatus {
    fail(RcStatus::from(e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, RcStatus> {
    if s.is_null() {
        return Err(fail(RcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(RcStatus::BadString, "string is not UTF-8"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, RcStatus> {
    p.as_mut()
        .ok_or_else(|| fail(RcStatus::NullPointer, "null output pointer"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, RcStatus> {
    p.as_ref()
        .ok_or_else(|| fail(RcStatus::NullPointer, "null handle"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(regclass::VERSION).unwrap())
        .as_ptr()
}

/// Copies the last error message of this thread into `buf`, NUL-terminated and truncated
/// to `len` bytes. Returns the full message length, or 0 when there is none.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn rc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a catalog entry such as `psl2(16)` and computes its classes.
///
/// # Safety
/// `entry` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_group_open(
    entry: *const c_char,
    out_group: *mut *mut RcGroup,
) -> RcStatus {
    guard(|| {
        let slot = out(out_group)?;
        *slot = ptr::null_mut();
        let entry: CatalogEntry = read_str(entry)?.parse().map_err(|e| lib_err(&e))?;
        let built = entry.build().map_err(|e| lib_err(&e))?;
        let classes = ClassTable::compute(&built.group, DEFAULT_CAP).map_err(|e| lib_err(&e))?;
        *slot = Box::into_raw(Box::new(RcGroup {
            entry,
            classes,
            characters: OnceLock::new(),
        }));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from [`rc_group_open`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_group_free(group: *mut RcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_group_order(group: *const RcGroup, order: *mut u64) -> RcStatus {
    guard(|| {
        *out(order)? = handle(group)?.classes.group_order();
        Ok(())
    })
}

/// # Safety
/// `group` must be a live handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_group_class_count(group: *const RcGroup, count: *mut u64) -> RcStatus {
    guard(|| {
        *out(count)? = handle(group)?.classes.len() as u64;
        Ok(())
    })
}

/// Size and element order of class `index`.
///
/// # Safety
/// `group` must be a live handle; `size` and `order` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rc_group_class(
    group: *const RcGroup,
    index: u64,
    size: *mut u64,
    order: *mut u64,
) -> RcStatus {
    guard(|| {
        let g = handle(group)?;
        let c = g.classes.classes().get(index as usize).ok_or_else(|| {
            fail(
                RcStatus::OutOfRange,
                format!("class {index} of {}", g.classes.len()),
            )
        })?;
        *out(size)? = c.size;
        *out(order)? = c.order;
        Ok(())
    })
}

/// # Safety
/// `group` must be a live handle and `counts` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_group_class_counts(
    group: *const RcGroup,
    p: u64,
    counts: *mut RcClassCounts,
) -> RcStatus {
    guard(|| {
        let g = handle(group)?;
        let dst = out(counts)?;
        let c = class_counts(&g.classes, p).map_err(|e| lib_err(&e))?;
        *dst = RcClassCounts {
            p,
            k: c.k as u64,
            k_p: c.k_p as u64,
            k_p_prime: c.k_p_prime as u64,
        };
        Ok(())
    })
}

/// Character counts at `p`; the character table is computed on first use.
///
/// # Safety
/// `group` must be a live handle and `counts` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_group_character_counts(
    group: *const RcGroup,
    p: u64,
    counts: *mut RcCharacterCounts,
) -> RcStatus {
    guard(|| {
        let g = handle(group)?;
        let dst = out(counts)?;
        let table = g
            .characters
            .get_or_init(|| CharacterTable::compute(&g.classes))
            .as_ref()
            .map_err(|e| lib_err(e))?;
        let c = table.character_counts(p).map_err(|e| lib_err(&e))?;
        *dst = RcCharacterCounts {
            p,
            p_rational: c.p_rational as u64,
            p_prime_rational: c.p_prime_rational as u64,
            union_count: c.union as u64,
            rational: c.rational as u64,
            union_vs_threshold: match c.union_vs_threshold {
                Verdict::Less => -1,
                Verdict::Equal => 0,
                Verdict::Greater => 1,
                Verdict::Indeterminate => 2,
            },
        };
        Ok(())
    })
}

/// Writes the catalog identifier of the group into `buf` like [`rc_last_error_message`].
///
/// # Safety
/// `group` must be a live handle; `buf` null or `len` writable bytes; `needed` valid.
#[no_mangle]
pub unsafe extern "C" fn rc_group_id(
    group: *const RcGroup,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> RcStatus {
    guard(|| {
        let id = handle(group)?.entry.id();
        *out(needed)? = id.len();
        if !buf.is_null() && len > 0 {
            let n = id.len().min(len - 1);
            ptr::copy_nonoverlapping(id.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        Ok(())
    })
}

/// Certifies a bundled claim such as `g2-ssc-torus` over its default grid.
///
/// # Safety
/// `claim` must be a NUL-terminated string and `out_grid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_grid_certify(
    claim: *const c_char,
    out_grid: *mut *mut RcGrid,
) -> RcStatus {
    guard(|| {
        let slot = out(out_grid)?;
        *slot = ptr::null_mut();
        let claim = find_claim(read_str(claim)?).map_err(|e| lib_err(&e))?;
        let report = grid_certify(&claim, None).map_err(|e| lib_err(&e))?;
        *slot = Box::into_raw(Box::new(RcGrid { report }));
        Ok(())
    })
}

/// # Safety
/// `grid` must be null or a handle from [`rc_grid_certify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rc_grid_free(grid: *mut RcGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Whether the certified exceptions equal the expected ones, and how many there are.
///
/// # Safety
/// `grid` must be a live handle; `matches` and `exceptions` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rc_grid_summary(
    grid: *const RcGrid,
    matches: *mut bool,
    exceptions: *mut u64,
    undecided: *mut u64,
) -> RcStatus {
    guard(|| {
        let r = &handle(grid)?.report;
        *out(matches)? = r.matches;
        *out(exceptions)? = r.exceptions.len() as u64;
        *out(undecided)? = r.undecided.len() as u64;
        Ok(())
    })
}

/// The `index`-th grid point where the inequality fails.
///
/// # Safety
/// `grid` must be a live handle and `q` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rc_grid_exception(
    grid: *const RcGrid,
    index: u64,
    q: *mut u64,
) -> RcStatus {
    guard(|| {
        let r = &handle(grid)?.report;
        *out(q)? = *r.exceptions.get(index as usize).ok_or_else(|| {
            fail(
                RcStatus::OutOfRange,
                format!("exception {index} of {}", r.exceptions.len()),
            )
        })?;
        Ok(())
    })
}
