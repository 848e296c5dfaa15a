//! C ABI over the `bcinv` engine.
//!
//! Rings are opaque heap handles. Elements cross the boundary as canonical
//! indices (`uint32_t`). Every entry point returns a [`BcinvStatus`]; the
//! message behind the last non-OK status on the calling thread is available
//! from [`bcinv_last_error`]. Panics never unwind into C: they are caught and
//! reported as [`BcinvStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bcinv::harness::{self, HarnessError, RunConfig};
use bcinv::inverse::{self, EngineError};
use bcinv::report::{self, Summary};
use bcinv::{RingError, RingHandle, RingOptions, RingSpec};
use libc::c_char;

/// Opaque ring handle.
pub struct BcinvRing {
    ring: RingHandle,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcinvStatus {
    Ok = 0,
    /// The requested inverse does not exist.
    NotFound = 1,
    /// Null pointer, wrong argument count, or non-UTF-8 text.
    InvalidArgument = 2,
    /// Malformed ring spec, element literal or theorem id.
    ParseError = 3,
    CardinalityExceeded = 4,
    /// Element index outside the ring.
    OutOfRange = 5,
    /// A precondition such as idempotency of `e` did not hold.
    Precondition = 6,
    /// The engine found an inconsistency; please report it.
    Internal = 7,
    Panic = 8,
    /// A verify run completed and at least one checker failed.
    CheckFailed = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcinvKind {
    /// args: a, b, c
    Bc = 0,
    /// args: a, b, c
    Hybrid = 1,
    /// args: a, b, c
    Annihilator = 2,
    /// args: a
    Group = 3,
    /// args: a
    Drazin = 4,
    /// args: a, e, f
    BottDuffin = 5,
    /// args: a, p, q
    ImageKernel = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(BcinvStatus, String);

impl From<RingError> for Failure {
    fn from(e: RingError) -> Failure {
        let status = match e {
            RingError::MalformedSpec(_) | RingError::InvalidLiteral { .. } => {
                BcinvStatus::ParseError
            }
            RingError::CardinalityExceeded { .. } => BcinvStatus::CardinalityExceeded,
            RingError::IndexOutOfRange { .. } | RingError::CrossRing => BcinvStatus::OutOfRange,
            RingError::NotAUnit(_) | RingError::ZeroPower => BcinvStatus::Precondition,
            RingError::AxiomViolation(_) => BcinvStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::Ring(inner) => inner.into(),
            other if other.is_internal() => Failure(BcinvStatus::Internal, other.to_string()),
            other => Failure(BcinvStatus::Precondition, other.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Failure {
        match e {
            HarnessError::Engine(inner) => inner.into(),
            HarnessError::UnknownTheorem(_) => Failure(BcinvStatus::ParseError, e.to_string()),
            HarnessError::Pool(_) => Failure(BcinvStatus::Internal, e.to_string()),
            other => Failure(BcinvStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Runs `body`, converting failures and panics into a status.
fn guard(body: impl FnOnce() -> Result<BcinvStatus, Failure>) -> BcinvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == BcinvStatus::Ok {
                set_last_error("");
            }
            status
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("panic inside bcinv");
            BcinvStatus::Panic
        }
    }
}

fn invalid(message: &str) -> Failure {
    Failure(BcinvStatus::InvalidArgument, message.to_string())
}

/// # Safety
/// `text` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if text.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

/// # Safety
/// `ring` must be null or a live handle from [`bcinv_ring_new`].
unsafe fn read_ring<'a>(ring: *const BcinvRing) -> Result<&'a RingHandle, Failure> {
    ring.as_ref()
        .map(|r| &r.ring)
        .ok_or_else(|| invalid("ring handle is null"))
}

fn check_ix(ring: &RingHandle, x: u32) -> Result<u32, Failure> {
    ring.element(x).map(|e| e.index()).map_err(Failure::from)
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text)
        .map(CString::into_raw)
        .map_err(|_| Failure(BcinvStatus::Internal, "string contains NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bcinv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bcinv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a ring from a spec such as `zn:6` or `mat:2:zn:2`.
/// `cardinality_cap` of 0 selects the default cap.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_ring_new(
    spec: *const c_char,
    cardinality_cap: u64,
    out: *mut *mut BcinvRing,
) -> BcinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let spec: RingSpec = read_str(spec, "spec")?.parse()?;
        let mut options = RingOptions::default();
        if cardinality_cap > 0 {
            options.cardinality_cap = cardinality_cap;
        }
        let ring = RingHandle::build(&spec, &options)?;
        write(out, Box::into_raw(Box::new(BcinvRing { ring })))?;
        Ok(BcinvStatus::Ok)
    })
}

/// # Safety
/// `ring` must be null or a handle from [`bcinv_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bcinv_ring_free(ring: *mut BcinvRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcinv_ring_order(ring: *const BcinvRing) -> u32 {
    ring.as_ref().map_or(0, |r| r.ring.order())
}

/// Index of the unit element, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcinv_ring_one(ring: *const BcinvRing) -> u32 {
    ring.as_ref().map_or(0, |r| r.ring.one_ix())
}

/// # Safety
/// `ring` live, `literal` NUL-terminated, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_parse_element(
    ring: *const BcinvRing,
    literal: *const c_char,
    out: *mut u32,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        let x = ring.parse_element(read_str(literal, "literal")?)?;
        write(out, x.index())?;
        Ok(BcinvStatus::Ok)
    })
}

/// Writes a newly allocated literal for `x`; release it with
/// [`bcinv_string_free`].
///
/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_format_element(
    ring: *const BcinvRing,
    x: u32,
    out: *mut *mut c_char,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        let text = ring.format_ix(check_ix(ring, x)?);
        write(out, into_c_string(text)?)?;
        Ok(BcinvStatus::Ok)
    })
}

/// # Safety
/// `text` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bcinv_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

unsafe fn binary(
    ring: *const BcinvRing,
    x: u32,
    y: u32,
    out: *mut u32,
    op: fn(&RingHandle, u32, u32) -> u32,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        let value = op(ring, check_ix(ring, x)?, check_ix(ring, y)?);
        write(out, value)?;
        Ok(BcinvStatus::Ok)
    })
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_add(
    ring: *const BcinvRing,
    x: u32,
    y: u32,
    out: *mut u32,
) -> BcinvStatus {
    binary(ring, x, y, out, RingHandle::add_ix)
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_mul(
    ring: *const BcinvRing,
    x: u32,
    y: u32,
    out: *mut u32,
) -> BcinvStatus {
    binary(ring, x, y, out, RingHandle::mul_ix)
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_neg(ring: *const BcinvRing, x: u32, out: *mut u32) -> BcinvStatus {
    binary(ring, x, 0, out, |r, x, _| r.neg_ix(x))
}

unsafe fn predicate(
    ring: *const BcinvRing,
    x: u32,
    out: *mut bool,
    test: fn(&RingHandle, u32) -> bool,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        let value = test(ring, check_ix(ring, x)?);
        write(out, value)?;
        Ok(BcinvStatus::Ok)
    })
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_is_unit(
    ring: *const BcinvRing,
    x: u32,
    out: *mut bool,
) -> BcinvStatus {
    predicate(ring, x, out, RingHandle::is_unit_ix)
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_is_idempotent(
    ring: *const BcinvRing,
    x: u32,
    out: *mut bool,
) -> BcinvStatus {
    predicate(ring, x, out, RingHandle::is_idempotent_ix)
}

/// # Safety
/// `ring` live, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_is_regular(
    ring: *const BcinvRing,
    x: u32,
    out: *mut bool,
) -> BcinvStatus {
    predicate(ring, x, out, inverse::is_regular_ix)
}

/// Computes an inverse of the given kind. `args` holds the element indices
/// listed on [`BcinvKind`]. Returns `Ok` with the value in `out`, or
/// `NotFound` when no such inverse exists (`out` untouched).
///
/// # Safety
/// `ring` live, `args` valid for `nargs` reads, `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_inverse(
    ring: *const BcinvRing,
    kind: BcinvKind,
    args: *const u32,
    nargs: usize,
    out: *mut u32,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        if args.is_null() {
            return Err(invalid("args is null"));
        }
        let args = std::slice::from_raw_parts(args, nargs);
        let expected = match kind {
            BcinvKind::Group | BcinvKind::Drazin => 1,
            _ => 3,
        };
        if args.len() != expected {
            return Err(invalid(&format!(
                "{kind:?} takes {expected} arguments, got {}",
                args.len()
            )));
        }
        let el = |i: usize| ring.element(args[i]).map_err(Failure::from);
        let value = match kind {
            BcinvKind::Drazin => inverse::drazin_inverse(ring, el(0)?)?.map(|d| d.value.index()),
            BcinvKind::Group => inverse::group_inverse(ring, el(0)?)?.value_ix(),
            BcinvKind::Bc => {
                inverse::bc_inverse_cross_checked(ring, el(0)?, el(1)?, el(2)?)?.value_ix()
            }
            BcinvKind::Hybrid => {
                inverse::hybrid_bc_inverse(ring, el(0)?, el(1)?, el(2)?)?.value_ix()
            }
            BcinvKind::Annihilator => {
                inverse::annihilator_bc_inverse(ring, el(0)?, el(1)?, el(2)?)?.value_ix()
            }
            BcinvKind::BottDuffin => inverse::bott_duffin(ring, el(0)?, el(1)?, el(2)?)?.value_ix(),
            BcinvKind::ImageKernel => {
                inverse::image_kernel_inverse(ring, el(0)?, el(1)?, el(2)?)?.value_ix()
            }
        };
        match value {
            Some(y) => {
                write(out, y)?;
                Ok(BcinvStatus::Ok)
            }
            None => Ok(BcinvStatus::NotFound),
        }
    })
}

/// Runs theorem checkers (`theorem` is an id or `all`) and writes the
/// structured records, one JSON object per line without the header, to a
/// new string in `json_out` (free with [`bcinv_string_free`]). Returns `Ok`
/// when every checker passes and `CheckFailed` when any fails.
///
/// # Safety
/// `ring` live, `theorem` NUL-terminated, `json_out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn bcinv_verify(
    ring: *const BcinvRing,
    theorem: *const c_char,
    threads: u32,
    json_out: *mut *mut c_char,
) -> BcinvStatus {
    guard(|| {
        let ring = read_ring(ring)?;
        let theorem = read_str(theorem, "theorem")?;
        if json_out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let ids: Vec<&str> = if theorem == "all" {
            harness::theorem_ids().collect()
        } else {
            vec![theorem]
        };
        let config = RunConfig {
            threads: threads as usize,
            ..RunConfig::default()
        };
        let reports = harness::run_selected(ring, &ids, &config)?;
        let summary = Summary::of(ring, &reports);
        let mut lines: Vec<String> = reports
            .iter()
            .map(|r| report::record("report", r))
            .collect();
        lines.push(report::record("summary", &summary));
        write(json_out, into_c_string(lines.join("\n"))?)?;
        Ok(if summary.passed() {
            BcinvStatus::Ok
        } else {
            BcinvStatus::CheckFailed
        })
    })
}
