//! C ABI for the rstacked library.
//!
//! Complexes are opaque handles created by `rstacked_complex_parse` or
//! `rstacked_complex_generate` and released with `rstacked_complex_free`.
//! Every function returns an `RstackedStatus`; on any non-OK status the
//! thread-local message from `rstacked_last_error_message` explains what
//! went wrong. Strings returned through out-parameters are NUL-terminated,
//! owned by the caller, and released with `rstacked_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use rstacked::complex::{ComplexError, DEFAULT_SEARCH_CAP};
use rstacked::facetfile::{parse_facet_file, render_facet_file, ParsedComplex};
use rstacked::generators::Family;
use rstacked::manifold::{analyze_auto, ManifoldError};
use rstacked::report::{build_analysis, AnalysisOptions, ReportError};
use rstacked::stackedness::{
    is_stacked_closed_with_cap, is_stacked_with_boundary, StackError,
};
use rstacked::FieldSpec;

/// Result code for every call in this interface.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RstackedStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The facet text could not be parsed.
    ParseError = 3,
    /// The input was outside the operation's domain: an unknown family or
    /// field name, an out-of-range index, or a complex of the wrong shape.
    DomainError = 4,
    /// A reconstruction search exceeded its node budget.
    BudgetExceeded = 5,
}

/// An immutable simplicial complex with its optional vertex labels.
pub struct RstackedComplex {
    parsed: ParsedComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: RstackedStatus, message: impl std::fmt::Display) -> RstackedStatus {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).unwrap());
    status
}

fn complex_status(e: &ComplexError) -> RstackedStatus {
    match e {
        ComplexError::SearchBudgetExceeded { .. } => RstackedStatus::BudgetExceeded,
        _ => RstackedStatus::DomainError,
    }
}

fn manifold_status(e: &ManifoldError) -> RstackedStatus {
    match e {
        ManifoldError::Complex(c) => complex_status(c),
        _ => RstackedStatus::DomainError,
    }
}

fn stack_status(e: &StackError) -> RstackedStatus {
    match e {
        StackError::Complex(c) => complex_status(c),
        StackError::Manifold(m) => manifold_status(m),
        _ => RstackedStatus::DomainError,
    }
}

fn report_status(e: &ReportError) -> RstackedStatus {
    match e {
        ReportError::Complex(c) => complex_status(c),
        ReportError::Manifold(m) => manifold_status(m),
        ReportError::Stackedness(s) => stack_status(s),
        ReportError::Enumerative(_) => RstackedStatus::DomainError,
    }
}

/// Reads a required C string argument; errors fall through to the caller.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RstackedStatus> {
    if ptr.is_null() {
        return Err(fail(RstackedStatus::NullArgument, "string argument is null"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(RstackedStatus::InvalidUtf8, "string argument is not valid UTF-8"))
}

/// Reads an optional field name; null means the automatic field policy.
unsafe fn read_field(ptr: *const c_char) -> Result<Option<FieldSpec>, RstackedStatus> {
    if ptr.is_null() {
        return Ok(None);
    }
    let text = read_str(ptr)?;
    FieldSpec::parse(text)
        .map(Some)
        .map_err(|e| fail(RstackedStatus::DomainError, e))
}

unsafe fn deref<'a>(handle: *const RstackedComplex) -> Result<&'a RstackedComplex, RstackedStatus> {
    handle
        .as_ref()
        .ok_or_else(|| fail(RstackedStatus::NullArgument, "complex handle is null"))
}

fn emit_complex(
    out: *mut *mut RstackedComplex,
    parsed: ParsedComplex,
) -> RstackedStatus {
    if out.is_null() {
        return fail(RstackedStatus::NullArgument, "out pointer is null");
    }
    let boxed = Box::new(RstackedComplex { parsed });
    unsafe { *out = Box::into_raw(boxed) };
    RstackedStatus::Ok
}

fn emit_string(out: *mut *mut c_char, text: String) -> RstackedStatus {
    if out.is_null() {
        return fail(RstackedStatus::NullArgument, "out pointer is null");
    }
    let c = CString::new(text.replace('\0', " ")).unwrap();
    unsafe { *out = c.into_raw() };
    RstackedStatus::Ok
}

/// The message for the most recent failure on this thread. The pointer is
/// valid until the next failing call on the same thread. Never null; the
/// message is empty when no call has failed yet.
#[no_mangle]
pub extern "C" fn rstacked_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// The library version as a static NUL-terminated string. Never freed.
#[no_mangle]
pub extern "C" fn rstacked_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses facet text (one facet per line, whitespace-separated vertex names,
/// `#` comments) into a new complex handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_parse(
    text: *const c_char,
    out: *mut *mut RstackedComplex,
) -> RstackedStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_facet_file(text) {
        Ok(parsed) => emit_complex(out, parsed),
        Err(e) => fail(RstackedStatus::ParseError, e),
    }
}

/// Builds a member of a named example family. `params` points to
/// `params_len` numeric parameters in the family's order; `seed` is used
/// only when `has_seed` is true (randomized families fall back to a fixed
/// default seed otherwise).
///
/// # Safety
/// `family` must be NUL-terminated; `params` must point to `params_len`
/// readable values (it may be null when `params_len` is 0); `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_generate(
    family: *const c_char,
    params: *const usize,
    params_len: usize,
    seed: u64,
    has_seed: bool,
    out: *mut *mut RstackedComplex,
) -> RstackedStatus {
    let name = match read_str(family) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let family = match Family::from_name(name) {
        Ok(f) => f,
        Err(e) => return fail(RstackedStatus::DomainError, e),
    };
    if params.is_null() && params_len > 0 {
        return fail(RstackedStatus::NullArgument, "params pointer is null");
    }
    let params: Vec<usize> = if params_len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(params, params_len).to_vec()
    };
    let seed = has_seed.then_some(seed);
    match family.build(&params, seed) {
        Ok(generated) => emit_complex(
            out,
            ParsedComplex { complex: generated.complex, labels: None },
        ),
        Err(e) => fail(RstackedStatus::DomainError, e),
    }
}

/// Releases a complex handle. Null is ignored.
///
/// # Safety
/// `handle` must have come from this interface and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_free(handle: *mut RstackedComplex) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned through an out-parameter. Null is ignored.
///
/// # Safety
/// `text` must have come from this interface and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn rstacked_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// The dimension of the complex: -1 for `{∅}`, and the common facet
/// dimension otherwise. Returns -2 when the handle is null.
///
/// # Safety
/// `handle` must be a live handle from this interface, or null.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_dim(handle: *const RstackedComplex) -> i32 {
    match deref(handle) {
        Ok(c) => c.parsed.complex.dim(),
        Err(_) => -2,
    }
}

/// The number of vertices actually used by the complex. Returns 0 for a
/// null handle.
///
/// # Safety
/// `handle` must be a live handle from this interface, or null.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_vertex_count(handle: *const RstackedComplex) -> usize {
    match deref(handle) {
        Ok(c) => c.parsed.complex.vertices().len(),
        Err(_) => 0,
    }
}

/// The number of facets. Returns 0 for a null handle.
///
/// # Safety
/// `handle` must be a live handle from this interface, or null.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_facet_count(handle: *const RstackedComplex) -> usize {
    match deref(handle) {
        Ok(c) => c.parsed.complex.facets().len(),
        Err(_) => 0,
    }
}

/// Renders the facets, one per line with numeric vertex names, into a new
/// string.
///
/// # Safety
/// `handle` must be a live handle from this interface; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_facet_text(
    handle: *const RstackedComplex,
    out: *mut *mut c_char,
) -> RstackedStatus {
    let c = match deref(handle) {
        Ok(c) => c,
        Err(status) => return status,
    };
    emit_string(out, render_facet_file(&c.parsed.complex))
}

/// Computes the boundary complex of a homology manifold with boundary.
/// `field` selects the coefficient field (`rat`, `gf2`, or `gf:<p>`); null
/// applies the automatic policy. Closed complexes are a domain error.
///
/// # Safety
/// `handle` must be a live handle; `field` must be NUL-terminated or null;
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_boundary(
    handle: *const RstackedComplex,
    field: *const c_char,
    out: *mut *mut RstackedComplex,
) -> RstackedStatus {
    let c = match deref(handle) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let requested = match read_field(field) {
        Ok(f) => f,
        Err(status) => return status,
    };
    match rstacked::report::boundary_of(&c.parsed.complex, requested) {
        Ok(b) if b.is_empty_complex() => fail(
            RstackedStatus::DomainError,
            "the complex is closed: its boundary is empty",
        ),
        Ok(b) => emit_complex(out, ParsedComplex { complex: b, labels: None }),
        Err(e) => fail(report_status(&e), e),
    }
}

/// Computes the candidate complex whose faces of dimension at most
/// `r` come from the input and whose larger faces are filled in wherever no
/// small missing face blocks them. `node_budget` caps the search; 0 selects
/// the default budget.
///
/// # Safety
/// `handle` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_complex_reconstruction(
    handle: *const RstackedComplex,
    r: usize,
    node_budget: usize,
    out: *mut *mut RstackedComplex,
) -> RstackedStatus {
    let c = match deref(handle) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let cap = if node_budget == 0 { DEFAULT_SEARCH_CAP } else { node_budget };
    match c.parsed.complex.delta_r_with_cap(r, cap) {
        Ok(d) => emit_complex(out, ParsedComplex { complex: d, labels: None }),
        Err(e) => fail(complex_status(&e), e),
    }
}

/// Runs the full analysis and returns the report as a JSON document.
/// `field` selects the coefficient field (null for the automatic policy);
/// `max_r` caps the stackedness table (0 for the default cap).
///
/// # Safety
/// `handle` must be a live handle; `field` must be NUL-terminated or null;
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_analyze_json(
    handle: *const RstackedComplex,
    field: *const c_char,
    max_r: usize,
    out: *mut *mut c_char,
) -> RstackedStatus {
    let c = match deref(handle) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let requested = match read_field(field) {
        Ok(f) => f,
        Err(status) => return status,
    };
    let opts = AnalysisOptions {
        source: "(memory)".into(),
        requested_field: requested,
        max_r: (max_r > 0).then_some(max_r),
        search_cap: DEFAULT_SEARCH_CAP,
    };
    match build_analysis(&c.parsed, &opts) {
        Ok(report) => emit_string(out, report.to_json().to_string()),
        Err(e) => fail(report_status(&e), e),
    }
}

/// Tests r-stackedness. `mode` is `"auto"`, `"closed"`, or
/// `"with-boundary"`: closed complexes use the closed-manifold test at
/// index `r`, bordered ones the interior-face test at level `r - 1`, and
/// auto picks whichever applies. The verdict lands in `out_verdict`.
///
/// # Safety
/// `handle` must be a live handle; `mode` must be NUL-terminated; `field`
/// must be NUL-terminated or null; `out_verdict` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rstacked_check_stacked(
    handle: *const RstackedComplex,
    r: usize,
    mode: *const c_char,
    field: *const c_char,
    out_verdict: *mut bool,
) -> RstackedStatus {
    let c = match deref(handle) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let mode = match read_str(mode) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let requested = match read_field(field) {
        Ok(f) => f,
        Err(status) => return status,
    };
    if out_verdict.is_null() {
        return fail(RstackedStatus::NullArgument, "out pointer is null");
    }
    if r < 1 {
        return fail(RstackedStatus::DomainError, "the index r must be at least 1");
    }
    let complex = &c.parsed.complex;
    let (analysis, _) = match analyze_auto(complex, requested) {
        Ok(a) => a,
        Err(e) => return fail(manifold_status(&e), e),
    };
    let field_used = analysis.field();
    let closed = analysis.is_closed_manifold();
    let with_boundary = analysis.is_manifold_with_boundary() && !closed;
    let use_closed = match mode {
        "auto" => {
            if closed {
                true
            } else if with_boundary {
                false
            } else {
                return fail(
                    RstackedStatus::DomainError,
                    format!("the complex is not a homology manifold with boundary over {field_used}"),
                );
            }
        }
        "closed" => {
            if !closed {
                return fail(
                    RstackedStatus::DomainError,
                    format!(
                        "closed mode requested, but the complex is not a closed homology \
                         manifold over {field_used}"
                    ),
                );
            }
            true
        }
        "with-boundary" => {
            if closed {
                return fail(
                    RstackedStatus::DomainError,
                    "with-boundary mode requested, but the complex is closed (its boundary \
                     is empty); use closed mode",
                );
            }
            if !with_boundary {
                return fail(
                    RstackedStatus::DomainError,
                    format!("the complex is not a homology manifold with boundary over {field_used}"),
                );
            }
            false
        }
        other => {
            return fail(
                RstackedStatus::DomainError,
                format!("unknown mode '{other}': expected auto, closed, or with-boundary"),
            )
        }
    };
    let verdict = if use_closed {
        is_stacked_closed_with_cap(complex, r, field_used, DEFAULT_SEARCH_CAP)
    } else {
        is_stacked_with_boundary(complex, r - 1, field_used)
    };
    match verdict {
        Ok(v) => {
            *out_verdict = v.verdict;
            RstackedStatus::Ok
        }
        Err(e) => fail(stack_status(&e), e),
    }
}
