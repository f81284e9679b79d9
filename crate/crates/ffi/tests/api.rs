use std::ffi::{c_char, CStr, CString};
use std::ptr;

use regclass_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let n = unsafe { rc_last_error_message(buf.as_mut_ptr(), buf.len()) };
    if n == 0 {
        return String::new();
    }
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

fn open(id: &str) -> *mut RcGroup {
    let s = CString::new(id).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { rc_group_open(s.as_ptr(), &mut g) },
        RcStatus::Ok,
        "{}",
        last_error()
    );
    g
}

#[test]
fn group_queries() {
    let g = open("psl2(16)");
    unsafe {
        let (mut order, mut k) = (0, 0);
        assert_eq!(rc_group_order(g, &mut order), RcStatus::Ok);
        assert_eq!(rc_group_class_count(g, &mut k), RcStatus::Ok);
        assert_eq!((order, k), (4080, 17));

        let mut c = RcClassCounts::default();
        assert_eq!(rc_group_class_counts(g, 17, &mut c), RcStatus::Ok);
        assert_eq!(
            c,
            RcClassCounts {
                p: 17,
                k: 17,
                k_p: 8,
                k_p_prime: 9
            }
        );

        let (mut size, mut ord) = (0, 0);
        assert_eq!(rc_group_class(g, 0, &mut size, &mut ord), RcStatus::Ok);
        assert_eq!((size, ord), (1, 1));
        assert_eq!(
            rc_group_class(g, 99, &mut size, &mut ord),
            RcStatus::OutOfRange
        );
        assert!(last_error().contains("99"));

        let mut buf = [0 as c_char; 32];
        let mut needed = 0;
        assert_eq!(
            rc_group_id(g, buf.as_mut_ptr(), buf.len(), &mut needed),
            RcStatus::Ok
        );
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "psl2(16)");
        assert_eq!(needed, 8);
        rc_group_free(g);
    }
}

#[test]
fn character_counts_at_a_prime() {
    let g = open("alt(5)");
    let mut c = RcCharacterCounts::default();
    unsafe {
        assert_eq!(rc_group_character_counts(g, 5, &mut c), RcStatus::Ok);
        assert_eq!(rc_group_character_counts(g, 4, &mut c), RcStatus::Invalid);
        rc_group_free(g);
    }
    assert_eq!((c.p_rational, c.p_prime_rational, c.union_count), (3, 5, 5));
    assert_eq!(c.union_vs_threshold, 1);
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    let bad = CString::new("psl2(6)").unwrap();
    unsafe {
        assert_eq!(rc_group_open(bad.as_ptr(), &mut g), RcStatus::Unsupported);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(rc_group_open(ptr::null(), &mut g), RcStatus::NullPointer);
        let mut x = 0;
        assert_eq!(rc_group_order(ptr::null(), &mut x), RcStatus::NullPointer);
        rc_group_free(ptr::null_mut());
    }
}

#[test]
fn grid_certification() {
    let id = CString::new("g2-ssc-torus").unwrap();
    let mut grid = ptr::null_mut();
    unsafe {
        assert_eq!(
            rc_grid_certify(id.as_ptr(), &mut grid),
            RcStatus::Ok,
            "{}",
            last_error()
        );
        let (mut matches, mut n, mut und) = (true, 0, 0);
        assert_eq!(
            rc_grid_summary(grid, &mut matches, &mut n, &mut und),
            RcStatus::Ok
        );
        let qs: Vec<u64> = (0..n)
            .map(|i| {
                let mut q = 0;
                assert_eq!(rc_grid_exception(grid, i, &mut q), RcStatus::Ok);
                q
            })
            .collect();
        assert_eq!(qs, [8, 9]);
        assert!(!matches);
        assert_eq!(und, 0);
        rc_grid_free(grid);
        let missing = CString::new("no-such-claim").unwrap();
        assert_ne!(rc_grid_certify(missing.as_ptr(), &mut grid), RcStatus::Ok);
        assert!(grid.is_null());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(rc_version()) };
    assert_eq!(v.to_str().unwrap(), regclass::VERSION);
}

#[test]
fn header_lists_entry_points() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/regclass.h"))
        .unwrap();
    for f in [
        "rc_group_open",
        "rc_group_free",
        "rc_group_class_counts",
        "rc_grid_certify",
        "rc_last_error_message",
    ] {
        assert!(h.contains(f), "{f}");
    }
}
