use std::ffi::{CStr, CString};
use std::ptr;

use resolvent_ffi::*;

fn last_error() -> String {
    let p = rsv_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn series_coefficients_round_trip() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { rsv_series_new(3, RsvSeriesKind::Local, 12, &mut h) }, RsvStatus::Ok);
    let mut order = 0;
    assert_eq!(unsafe { rsv_series_order(h, &mut order) }, RsvStatus::Ok);
    assert_eq!(order, 12);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rsv_series_coeff_string(h, 6, &mut s) }, RsvStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "0:3;1:1");
    unsafe { rsv_string_free(s) };

    let mut c = 0i64;
    assert_eq!(unsafe { rsv_series_coeff_int(h, 12, 2, &mut c) }, RsvStatus::Ok);
    assert_eq!(c, 1);
    assert_eq!(unsafe { rsv_series_coeff_int(h, 13, 0, &mut c) }, RsvStatus::InvalidArgument);
    assert!(last_error().contains("exceeds series order"));
    unsafe { rsv_series_free(h) };
}

#[test]
fn unsupported_degree_is_reported() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { rsv_series_new(5, RsvSeriesKind::Global, 4, &mut h) }, RsvStatus::UnsupportedDegree);
    assert!(h.is_null());
    assert!(last_error().contains("degree 5"));
}

#[test]
fn null_pointers_are_rejected() {
    assert_eq!(unsafe { rsv_series_new(3, RsvSeriesKind::Local, 4, ptr::null_mut()) }, RsvStatus::NullPointer);
    let mut n = 0usize;
    assert_eq!(unsafe { rsv_series_order(ptr::null(), &mut n) }, RsvStatus::NullPointer);
    unsafe {
        rsv_series_free(ptr::null_mut());
        rsv_nichols_free(ptr::null_mut());
        rsv_string_free(ptr::null_mut());
    }
}

#[test]
fn nichols_dims_and_buffer_protocol() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { rsv_nichols_build(3, 10_000, &mut h) }, RsvStatus::Ok);
    let mut len = 0usize;
    let mut small = [0u64; 2];
    assert_eq!(
        unsafe { rsv_nichols_dims(h, small.as_mut_ptr(), small.len(), &mut len) },
        RsvStatus::BufferTooSmall
    );
    assert_eq!(len, 5);
    let mut buf = vec![0u64; len];
    assert_eq!(unsafe { rsv_nichols_dims(h, buf.as_mut_ptr(), buf.len(), &mut len) }, RsvStatus::Ok);
    assert_eq!(buf, [1, 3, 4, 3, 1]);

    let mut row = [0u64; 7];
    assert_eq!(
        unsafe { rsv_invariant_ext_row(h, RsvAction::Geometric, 6, row.as_mut_ptr(), row.len(), &mut len) },
        RsvStatus::Ok
    );
    assert_eq!(row, [0, 0, 0, 0, 1, 0, 3]);
    unsafe { rsv_nichols_free(h) };
}

#[test]
fn density_counts() {
    let (mut count, mut total) = (0u64, 0u64);
    assert_eq!(unsafe { rsv_density_exact(3, 5, 0, 1 << 20, &mut count, &mut total) }, RsvStatus::Ok);
    assert_eq!((count, total), (480, 625));
    assert_eq!(unsafe { rsv_density_exact(3, 5, 2, 1000, &mut count, &mut total) }, RsvStatus::BudgetExceeded);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(rsv_version()) };
    assert_eq!(v, CString::new(env!("CARGO_PKG_VERSION")).unwrap().as_c_str());
}
