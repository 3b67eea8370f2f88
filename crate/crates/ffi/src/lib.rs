//! C ABI for the square-tiled surface census.
//!
//! The interface follows the usual opaque-handle pattern: `sts_census_new`
//! allocates a census context holding the precomputed convolution table,
//! `sts_census_row` reads exact counts out of it, and `sts_census_free`
//! releases it. Stateless queries (H(2) counts, density limits, the brute
//! force sweep) need no handle. Every function returns an [`StsStatus`];
//! results are written through out-pointers only on `Ok`.
//!
//! Counts are returned as signed 64-bit integers. The census grows like
//! `n^4 / 6`, which fits comfortably for every table size the context
//! accepts; a value that would not fit reports `Overflow` instead of
//! truncating.
//!
//! The matching header `include/sts_census.h` is generated by cbindgen at
//! build time.

use std::os::raw::c_char;

use sts_census::arith::ArithTable;
use sts_census::formulas;
use sts_census::origami;

/// Status code returned by every census call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StsStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside its documented domain.
    InvalidArgument = 2,
    /// A count does not fit the 64-bit result field.
    Overflow = 3,
}

/// Opaque census context: the convolution table for one table length.
pub struct StsCensus {
    n_max: u64,
    conv: ArithTable,
}

/// One census row: counts by cylinder diagram A-D and the total E.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StsCensusRow {
    pub n: u64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
}

/// H(2) counts: one-cylinder F, two-cylinder G and the total H.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StsH2Row {
    pub n: u64,
    pub f: i64,
    pub g: i64,
    pub h: i64,
}

/// Asymptotic diagram densities and the zeta values behind them.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StsLimitDensities {
    pub zeta2: f64,
    pub zeta3: f64,
    pub zeta5: f64,
    pub limit_a: f64,
    pub limit_b: f64,
    pub limit_c: f64,
    pub limit_d: f64,
}

/// Primitive class counts found by the permutation sweep at one n.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StsBruteCounts {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub f: u64,
    pub g: u64,
}

/// Smallest n with census rows.
pub const STS_CENSUS_MIN_N: u64 = 4;
/// Largest table length a context accepts (additive-convolution cap).
pub const STS_CENSUS_MAX_N: u64 = 10_000;

fn narrow(v: i128) -> Result<i64, StsStatus> {
    v.try_into().map_err(|_| StsStatus::Overflow)
}

/// Allocates a census context covering `4 <= n <= n_max` and stores it in
/// `*out`. Free with `sts_census_free`.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn sts_census_new(n_max: u64, out: *mut *mut StsCensus) -> StsStatus {
    if out.is_null() {
        return StsStatus::NullPointer;
    }
    if !(STS_CENSUS_MIN_N..=STS_CENSUS_MAX_N).contains(&n_max) {
        return StsStatus::InvalidArgument;
    }
    match formulas::conv_term_batch(n_max as usize) {
        Ok(conv) => {
            let handle = Box::new(StsCensus { n_max, conv });
            unsafe { *out = Box::into_raw(handle) };
            StsStatus::Ok
        }
        Err(_) => StsStatus::Overflow,
    }
}

/// Releases a context returned by `sts_census_new`. Passing null is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer obtained from `sts_census_new`, not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn sts_census_free(handle: *mut StsCensus) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Writes the census row at `n` (counts A-D and total E) into `*out`.
///
/// # Safety
/// `handle` must come from `sts_census_new` and `out` must point to a row.
#[no_mangle]
pub unsafe extern "C" fn sts_census_row(
    handle: *const StsCensus,
    n: u64,
    out: *mut StsCensusRow,
) -> StsStatus {
    if handle.is_null() || out.is_null() {
        return StsStatus::NullPointer;
    }
    let census = unsafe { &*handle };
    if !(STS_CENSUS_MIN_N..=census.n_max).contains(&n) {
        return StsStatus::InvalidArgument;
    }
    let row = formulas::CensusRow::compute(n, &census.conv);
    let narrowed = (|| {
        Ok(StsCensusRow {
            n,
            a: narrow(row.a)?,
            b: narrow(row.b)?,
            c: narrow(row.c)?,
            d: narrow(row.d)?,
            e: narrow(row.e)?,
        })
    })();
    match narrowed {
        Ok(r) => {
            unsafe { *out = r };
            StsStatus::Ok
        }
        Err(status) => status,
    }
}

/// Writes the H(2) counts (F, G, H) at `n >= 3` into `*out`. Stateless.
///
/// # Safety
/// `out` must point to a row.
#[no_mangle]
pub unsafe extern "C" fn sts_h2_counts(n: u64, out: *mut StsH2Row) -> StsStatus {
    if out.is_null() {
        return StsStatus::NullPointer;
    }
    if !(3..=STS_CENSUS_MAX_N).contains(&n) {
        return StsStatus::InvalidArgument;
    }
    let row = formulas::count_h2(n);
    let narrowed = (|| {
        Ok(StsH2Row { n, f: narrow(row.f)?, g: narrow(row.g)?, h: narrow(row.h)? })
    })();
    match narrowed {
        Ok(r) => {
            unsafe { *out = r };
            StsStatus::Ok
        }
        Err(status) => status,
    }
}

/// Writes the asymptotic density constants into `*out`.
///
/// # Safety
/// `out` must point to a densities struct.
#[no_mangle]
pub unsafe extern "C" fn sts_limit_densities(out: *mut StsLimitDensities) -> StsStatus {
    if out.is_null() {
        return StsStatus::NullPointer;
    }
    let d = formulas::limit_densities();
    unsafe {
        *out = StsLimitDensities {
            zeta2: d.zeta2,
            zeta3: d.zeta3,
            zeta5: d.zeta5,
            limit_a: d.limit_a,
            limit_b: d.limit_b,
            limit_c: d.limit_c,
            limit_d: d.limit_d,
        };
    }
    StsStatus::Ok
}

/// Runs the full permutation-pair sweep at `n` (4..=8; `n = 8` costs about
/// 1.6e9 pairs and must be enabled with `allow_n8`) and writes the primitive
/// class counts into `*out`.
///
/// # Safety
/// `out` must point to a counts struct.
#[no_mangle]
pub unsafe extern "C" fn sts_brute_force(
    n: u64,
    allow_n8: bool,
    out: *mut StsBruteCounts,
) -> StsStatus {
    if out.is_null() {
        return StsStatus::NullPointer;
    }
    if n == 8 && !allow_n8 {
        return StsStatus::InvalidArgument;
    }
    match origami::brute_force_census(n) {
        Ok(c) => {
            unsafe {
                *out = StsBruteCounts {
                    n,
                    a: c.h11[0],
                    b: c.h11[1],
                    c: c.h11[2],
                    d: c.h11[3],
                    f: c.f,
                    g: c.g,
                };
            }
            StsStatus::Ok
        }
        Err(_) => StsStatus::InvalidArgument,
    }
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handle_lifecycle_and_rows() {
        unsafe {
            let mut handle: *mut StsCensus = std::ptr::null_mut();
            assert_eq!(sts_census_new(120, &mut handle), StsStatus::Ok);
            assert!(!handle.is_null());
            let mut row = StsCensusRow { n: 0, a: 0, b: 0, c: 0, d: 0, e: 0 };
            assert_eq!(sts_census_row(handle, 4, &mut row), StsStatus::Ok);
            assert_eq!(row, StsCensusRow { n: 4, a: 0, b: 3, c: 1, d: 0, e: 4 });
            assert_eq!(sts_census_row(handle, 8, &mut row), StsStatus::Ok);
            assert_eq!(row, StsCensusRow { n: 8, a: 48, b: 122, c: 60, d: 10, e: 240 });
            assert_eq!(sts_census_row(handle, 3, &mut row), StsStatus::InvalidArgument);
            assert_eq!(sts_census_row(handle, 121, &mut row), StsStatus::InvalidArgument);
            sts_census_free(handle);
            sts_census_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn argument_validation() {
        unsafe {
            let mut handle: *mut StsCensus = std::ptr::null_mut();
            assert_eq!(sts_census_new(3, &mut handle), StsStatus::InvalidArgument);
            assert_eq!(sts_census_new(10_001, &mut handle), StsStatus::InvalidArgument);
            assert_eq!(sts_census_new(10, std::ptr::null_mut()), StsStatus::NullPointer);
            let mut row = StsCensusRow { n: 0, a: 0, b: 0, c: 0, d: 0, e: 0 };
            assert_eq!(sts_census_row(std::ptr::null(), 4, &mut row), StsStatus::NullPointer);
        }
    }

    #[test]
    fn h2_and_densities() {
        unsafe {
            let mut row = StsH2Row { n: 0, f: 0, g: 0, h: 0 };
            assert_eq!(sts_h2_counts(4, &mut row), StsStatus::Ok);
            assert_eq!(row, StsH2Row { n: 4, f: 4, g: 5, h: 9 });
            assert_eq!(sts_h2_counts(2, &mut row), StsStatus::InvalidArgument);
            let mut d = StsLimitDensities {
                zeta2: 0.0,
                zeta3: 0.0,
                zeta5: 0.0,
                limit_a: 0.0,
                limit_b: 0.0,
                limit_c: 0.0,
                limit_d: 0.0,
            };
            assert_eq!(sts_limit_densities(&mut d), StsStatus::Ok);
            assert!(d.limit_b > 0.4534 && d.limit_b < 0.4535);
            assert_eq!(d.limit_a, 0.25);
        }
    }

    #[test]
    fn brute_force_roundtrip() {
        unsafe {
            let mut c = StsBruteCounts { n: 0, a: 0, b: 0, c: 0, d: 0, f: 0, g: 0 };
            assert_eq!(sts_brute_force(5, false, &mut c), StsStatus::Ok);
            assert_eq!((c.a, c.b, c.c, c.d), (5, 11, 6, 2));
            assert_eq!((c.f, c.g), (10, 17));
            assert_eq!(sts_brute_force(8, false, &mut c), StsStatus::InvalidArgument);
            assert_eq!(sts_brute_force(3, false, &mut c), StsStatus::InvalidArgument);
        }
    }

    #[test]
    fn version_string_is_nul_terminated() {
        let v = unsafe { std::ffi::CStr::from_ptr(sts_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
