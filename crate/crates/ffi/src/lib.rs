//! C ABI over `extweyl`.
//!
//! Diagrams and factorizations are opaque heap handles released with their
//! `_free` functions. Every entry point returns an [`ExtweylStatus`]; on
//! failure a message is available from [`extweyl_last_error_message`] on the
//! same thread. Documents (roots, factorizations, search results, slices)
//! are returned as NUL-terminated JSON or DOT strings owned by the caller
//! and released with [`extweyl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use extweyl::absorder::{self, ExportFormat, SliceBudgets};
use extweyl::diagram::{self, DiagramSpec, WeylType};
use extweyl::hurwitz::{self, BraidWord, ConnectOutcome, Factorization};
use extweyl::{rootsys, Error, ExtendedWeylGroup};

/// Result codes shared by all entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtweylStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedTubular = 3,
    Exhausted = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtweylType {
    Domestic = 0,
    Tubular = 1,
    Wild = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtweylFormat {
    Json = 0,
    Dot = 1,
}

/// An extended Coxeter–Dynkin diagram and, unless tubular, its group.
pub struct ExtweylDiagram {
    spec: DiagramSpec,
    group: Option<ExtendedWeylGroup>,
}

/// A tuple of reflections.
pub struct ExtweylFactorization {
    inner: Factorization,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ExtweylStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnsupportedTubular => ExtweylStatus::UnsupportedTubular,
            Error::Exhausted { .. } => ExtweylStatus::Exhausted,
            Error::Overflow => ExtweylStatus::Overflow,
            Error::Internal(_) => ExtweylStatus::Internal,
            _ => ExtweylStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

fn null(what: &str) -> Failure {
    Failure(ExtweylStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> ExtweylStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            ExtweylStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside extweyl");
            ExtweylStatus::Panic
        }
    }
}

unsafe fn diagram_ref<'a>(d: *const ExtweylDiagram) -> FfiResult<&'a ExtweylDiagram> {
    d.as_ref().ok_or_else(|| null("diagram"))
}

unsafe fn group_ref<'a>(d: *const ExtweylDiagram) -> FfiResult<&'a ExtendedWeylGroup> {
    diagram_ref(d)?
        .group
        .as_ref()
        .ok_or_else(|| Error::UnsupportedTubular.into())
}

unsafe fn factorization_ref<'a>(f: *const ExtweylFactorization) -> FfiResult<&'a Factorization> {
    f.as_ref()
        .map(|f| &f.inner)
        .ok_or_else(|| null("factorization"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|e| Failure(ExtweylStatus::Internal, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_factorization(
    out: *mut *mut ExtweylFactorization,
    f: Factorization,
) -> FfiResult<()> {
    write_out(
        out,
        Box::into_raw(Box::new(ExtweylFactorization { inner: f })),
    )
}

unsafe fn slice_from<'a, T>(data: *const T, len: usize) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("array"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn to_json(value: &impl serde::Serialize) -> FfiResult<String> {
    serde_json::to_string(value).map_err(|e| Failure(ExtweylStatus::Internal, e.to_string()))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn extweyl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a diagram from `len` arm lengths (each at least 1). Tubular
/// diagrams are accepted; group operations on them fail with
/// `UNSUPPORTED_TUBULAR`.
///
/// # Safety
/// `arms` must point to `len` readable values (or be null when `len` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_diagram_new(
    arms: *const i64,
    len: usize,
    out: *mut *mut ExtweylDiagram,
) -> ExtweylStatus {
    guard(|| {
        let spec = DiagramSpec::new(slice_from(arms, len)?.iter().copied())?;
        let group = match ExtendedWeylGroup::new(spec.clone()) {
            Ok(g) => Some(g),
            Err(Error::UnsupportedTubular) => None,
            Err(e) => return Err(e.into()),
        };
        write_out(out, Box::into_raw(Box::new(ExtweylDiagram { spec, group })))
    })
}

/// # Safety
/// `d` must be null or a handle from [`extweyl_diagram_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn extweyl_diagram_free(d: *mut ExtweylDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of simple roots `n = 2 + Σ p_i`.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_diagram_rank(
    d: *const ExtweylDiagram,
    out: *mut usize,
) -> ExtweylStatus {
    guard(|| write_out(out, diagram_ref(d)?.spec.rank()))
}

/// Type and signature (positive, negative, zero eigenvalue counts).
///
/// # Safety
/// `d` must be a live diagram handle; all output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_diagram_classify(
    d: *const ExtweylDiagram,
    out_type: *mut ExtweylType,
    out_plus: *mut usize,
    out_minus: *mut usize,
    out_zero: *mut usize,
) -> ExtweylStatus {
    guard(|| {
        let sig = diagram::signature(&diagram_ref(d)?.spec);
        let ty = match WeylType::from_signature(sig) {
            Some(WeylType::Domestic) => ExtweylType::Domestic,
            Some(WeylType::Tubular) => ExtweylType::Tubular,
            Some(WeylType::Wild) => ExtweylType::Wild,
            None => {
                return Err(Failure(
                    ExtweylStatus::Internal,
                    format!("unexpected signature {sig:?}"),
                ))
            }
        };
        write_out(out_type, ty)?;
        write_out(out_plus, sig.plus)?;
        write_out(out_minus, sig.minus)?;
        write_out(out_zero, sig.zero)
    })
}

/// Copies the `n × n` Gram matrix, row-major, into `buf`. Fails with
/// `BUFFER_TOO_SMALL` when `buf_len < n * n`.
///
/// # Safety
/// `d` must be a live diagram handle; `buf` must point to `buf_len`
/// writable values.
#[no_mangle]
pub unsafe extern "C" fn extweyl_diagram_gram(
    d: *const ExtweylDiagram,
    buf: *mut i64,
    buf_len: usize,
) -> ExtweylStatus {
    guard(|| {
        let gram = diagram::build_gram(&diagram_ref(d)?.spec);
        let n = gram.dim();
        if buf_len < n * n {
            return Err(Failure(
                ExtweylStatus::BufferTooSmall,
                format!("need {} entries, got {buf_len}", n * n),
            ));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        for (i, row) in gram.rows().iter().enumerate() {
            ptr::copy_nonoverlapping(row.as_ptr(), buf.add(i * n), n);
        }
        Ok(())
    })
}

/// Projected roots of height at most `height` as JSON
/// `{"height_bound", "complete", "roots"}`.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_roots_json(
    d: *const ExtweylDiagram,
    height: i64,
    out: *mut *mut c_char,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        write_string(
            out,
            to_json(&rootsys::enumerate_projected(g.space(), height)?)?,
        )
    })
}

/// The standard factorization of the Coxeter transformation for the
/// default arm ordering.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_standard_factorization(
    d: *const ExtweylDiagram,
    out: *mut *mut ExtweylFactorization,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        write_factorization(
            out,
            hurwitz::standard_factorization(g, &g.default_ordering())?,
        )
    })
}

/// Parses `{"tuple": [{"root": [...], "k": k}, ...]}` and validates every
/// entry against the diagram.
///
/// # Safety
/// `d` must be a live diagram handle; `json` a NUL-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_from_json(
    d: *const ExtweylDiagram,
    json: *const c_char,
    out: *mut *mut ExtweylFactorization,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(ExtweylStatus::InvalidArgument, e.to_string()))?;
        let f: Factorization = serde_json::from_str(text)
            .map_err(|e| Failure(ExtweylStatus::InvalidArgument, e.to_string()))?;
        hurwitz::product(g, &f)?;
        write_factorization(out, f)
    })
}

/// # Safety
/// `f` must be a live factorization handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_to_json(
    f: *const ExtweylFactorization,
    out: *mut *mut c_char,
) -> ExtweylStatus {
    guard(|| write_string(out, to_json(factorization_ref(f)?)?))
}

/// # Safety
/// `f` must be a live factorization handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_len(
    f: *const ExtweylFactorization,
    out: *mut usize,
) -> ExtweylStatus {
    guard(|| write_out(out, factorization_ref(f)?.len()))
}

/// Applies the braid word `letters` (`±i` for `σ_i^{±1}`, left to right) and
/// returns a new handle.
///
/// # Safety
/// `d` and `f` must be live handles; `letters` must point to `len` readable
/// values (or be null when `len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_apply_braid(
    d: *const ExtweylDiagram,
    f: *const ExtweylFactorization,
    letters: *const i32,
    len: usize,
    out: *mut *mut ExtweylFactorization,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        let word = BraidWord::new(slice_from(letters, len)?.to_vec());
        write_factorization(out, hurwitz::apply_braid(g, factorization_ref(f)?, &word)?)
    })
}

/// Deterministic random walk of `steps` moves seeded by `seed`.
///
/// # Safety
/// `d` and `f` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_random_walk(
    d: *const ExtweylDiagram,
    f: *const ExtweylFactorization,
    steps: usize,
    seed: u64,
    out: *mut *mut ExtweylFactorization,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        let (h, _) = hurwitz::random_walk(g, factorization_ref(f)?, steps, seed)?;
        write_factorization(out, h)
    })
}

/// # Safety
/// `f` must be null or a live factorization handle.
#[no_mangle]
pub unsafe extern "C" fn extweyl_factorization_free(f: *mut ExtweylFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Searches for a braid word carrying `from` to `to` within `budget`
/// expanded nodes. Writes `{"status":"connected","letters":[...],"nodes":N}`
/// and returns `OK`, or writes `{"status":"exhausted","nodes":N}` and
/// returns `EXHAUSTED`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_connect(
    d: *const ExtweylDiagram,
    from: *const ExtweylFactorization,
    to: *const ExtweylFactorization,
    budget: usize,
    out: *mut *mut c_char,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        let outcome =
            hurwitz::connect(g, factorization_ref(from)?, factorization_ref(to)?, budget)?;
        write_string(out, to_json(&outcome)?)?;
        match outcome {
            ConnectOutcome::Connected { .. } => Ok(()),
            ConnectOutcome::Exhausted { nodes } => Err(Error::Exhausted { nodes }.into()),
        }
    })
}

/// Budgeted slice of the interval below the Coxeter transformation of the
/// default ordering, exported as JSON or DOT. A slice truncated at
/// `node_cap` is still written, and the call returns `EXHAUSTED`.
///
/// # Safety
/// `d` must be a live diagram handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extweyl_interval(
    d: *const ExtweylDiagram,
    move_budget: usize,
    k_bound: i64,
    node_cap: usize,
    format: ExtweylFormat,
    out: *mut *mut c_char,
) -> ExtweylStatus {
    guard(|| {
        let g = group_ref(d)?;
        let budgets = SliceBudgets {
            move_budget,
            k_bound,
            node_cap,
        };
        let slice = absorder::interval_slice(g, &g.default_ordering(), budgets)?;
        let format = match format {
            ExtweylFormat::Json => ExportFormat::Json,
            ExtweylFormat::Dot => ExportFormat::Dot,
        };
        write_string(out, absorder::export_poset(g, &slice, format)?)?;
        if slice.complete {
            Ok(())
        } else {
            Err(Error::Exhausted { nodes: node_cap }.into())
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn extweyl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        unsafe { CStr::from_ptr(extweyl_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn guard_maps_errors_and_panics() {
        assert_eq!(guard(|| Ok(())), ExtweylStatus::Ok);
        assert_eq!(message(), "");
        assert_eq!(
            guard(|| Err(Error::Overflow.into())),
            ExtweylStatus::Overflow
        );
        assert!(message().contains("overflow"));
        assert_eq!(
            guard(|| Err(Error::Exhausted { nodes: 3 }.into())),
            ExtweylStatus::Exhausted
        );
        assert_eq!(guard(|| panic!("boom")), ExtweylStatus::Panic);
        assert_eq!(message(), "panic inside extweyl");
    }

    #[test]
    fn null_outputs_rejected() {
        let arms = [1i64];
        let status = unsafe { extweyl_diagram_new(arms.as_ptr(), 1, ptr::null_mut()) };
        assert_eq!(status, ExtweylStatus::NullPointer);
        assert_eq!(
            unsafe { extweyl_diagram_new(ptr::null(), 2, ptr::null_mut()) },
            ExtweylStatus::NullPointer
        );
    }
}
