//! C interface to `ridgechord`.
//!
//! Complexes are opaque [`RcComplex`] handles released with
//! [`rc_complex_free`]. Every fallible call returns an [`RcStatus`]; on an
//! error status, [`rc_last_error`] describes the failure for the calling
//! thread. Strings handed out by the library are released with
//! [`rc_string_free`].
//!
//! Flat facet lists use two arrays: `lengths[i]` is the size of facet `i`, and
//! `vertices` holds all facets back to back as 1-based labels.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ridgechord::chordality::{is_ridge_chordal, ChordalVerdict};
use ridgechord::constructions::{alexander_dual, clique_complex, delta2, derive_c2};
use ridgechord::decomposability::is_k_decomposable;
use ridgechord::homology::reduced_homology;
use ridgechord::io::{digest, parse_text, to_text};
use ridgechord::report::Verdict;
use ridgechord::search::{Budget, SearchOutcome};
use ridgechord::shelling::{find_shelling, is_complete_shelling};
use ridgechord::theorem_a::theorem_a_certificate;
use ridgechord::{Error, Face, SimplicialComplex};

/// Result of a call. Decision procedures report `RC_STATUS_OK` for a
/// verified property, `RC_STATUS_REFUTED` for a disproved one and
/// `RC_STATUS_UNKNOWN` when the search budget ran out.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    Refuted = 1,
    Unknown = 2,
    InvalidArgument = 3,
    ParseError = 4,
    IoError = 5,
    LimitExceeded = 6,
    NullPointer = 7,
    Internal = 8,
}

/// Opaque simplicial complex.
pub struct RcComplex {
    inner: SimplicialComplex,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RcStats {
    pub ground_set_size: usize,
    pub dimension: i64,
    pub facet_count: usize,
    pub vertex_count: usize,
    pub is_pure: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RcStatus {
    match err {
        Error::Parse { .. } | Error::Json(_) => RcStatus::ParseError,
        Error::Io(_) => RcStatus::IoError,
        Error::GroundSetTooLarge(_) | Error::MatrixTooLarge { .. } => RcStatus::LimitExceeded,
        Error::Integrity(_) => RcStatus::Internal,
        _ => RcStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<RcStatus, (RcStatus, String)>) -> RcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RcStatus::Internal
        }
    }
}

fn lib<T>(r: ridgechord::Result<T>) -> Result<T, (RcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (RcStatus, String) {
    (RcStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn complex_ref<'a>(cx: *const RcComplex) -> Result<&'a SimplicialComplex, (RcStatus, String)> {
    cx.as_ref().map(|c| &c.inner).ok_or_else(null)
}

unsafe fn put_complex(out: *mut *mut RcComplex, cx: SimplicialComplex) -> Result<RcStatus, (RcStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(RcComplex { inner: cx }));
    Ok(RcStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (RcStatus, String)> {
    if out.is_null() {
        return Ok(());
    }
    let c = CString::new(s).map_err(|_| (RcStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn read_faces(vertices: *const u32, lengths: *const usize, count: usize) -> Result<Vec<Vec<usize>>, (RcStatus, String)> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if lengths.is_null() {
        return Err(null());
    }
    let lengths = std::slice::from_raw_parts(lengths, count);
    let total: usize = lengths.iter().sum();
    if total > 0 && vertices.is_null() {
        return Err(null());
    }
    let flat = if total == 0 { &[][..] } else { std::slice::from_raw_parts(vertices, total) };
    let mut out = Vec::with_capacity(count);
    let mut at = 0;
    for &len in lengths {
        out.push(flat[at..at + len].iter().map(|&v| v as usize).collect());
        at += len;
    }
    Ok(out)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, (RcStatus, String)> {
    serde_json::to_string(value).map_err(|e| (RcStatus::Internal, e.to_string()))
}

fn verdict_status(v: Verdict) -> RcStatus {
    match v {
        Verdict::Verified => RcStatus::Ok,
        Verdict::Refuted => RcStatus::Refuted,
        Verdict::Unknown => RcStatus::Unknown,
    }
}

fn outcome_status<T>(o: &SearchOutcome<T>) -> RcStatus {
    match o {
        SearchOutcome::Found(_) => RcStatus::Ok,
        SearchOutcome::Refuted => RcStatus::Refuted,
        SearchOutcome::Unknown => RcStatus::Unknown,
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; not to be freed.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a complex handle.
///
/// # Safety
/// `cx` must be null or a handle obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_free(cx: *mut RcComplex) {
    if !cx.is_null() {
        drop(Box::from_raw(cx));
    }
}

/// Builds a complex on `{1..n}` from a flat facet list; non-maximal entries
/// are dropped.
///
/// # Safety
/// `lengths` must point to `facet_count` sizes and `vertices` to their sum
/// of labels; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_from_facets(
    n: usize,
    vertices: *const u32,
    lengths: *const usize,
    facet_count: usize,
    out: *mut *mut RcComplex,
) -> RcStatus {
    guard(|| {
        let faces = read_faces(vertices, lengths, facet_count)?;
        let cx = lib(SimplicialComplex::new(faces, n))?;
        put_complex(out, cx)
    })
}

/// Parses the text facet-list format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_parse(text: *const c_char, out: *mut *mut RcComplex) -> RcStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| (RcStatus::ParseError, e.to_string()))?;
        put_complex(out, lib(parse_text(s))?)
    })
}

/// Writes the text facet-list form into `*out`.
///
/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_to_text(cx: *const RcComplex, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        if out.is_null() {
            return Err(null());
        }
        put_string(out, to_text(cx))?;
        Ok(RcStatus::Ok)
    })
}

/// Hex SHA-256 of the text form.
///
/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_digest(cx: *const RcComplex, out: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        if out.is_null() {
            return Err(null());
        }
        put_string(out, digest(cx))?;
        Ok(RcStatus::Ok)
    })
}

/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_complex_stats(cx: *const RcComplex, out: *mut RcStats) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let out = out.as_mut().ok_or_else(null)?;
        let s = cx.stats();
        *out = RcStats {
            ground_set_size: cx.ground_set_size(),
            dimension: s.dimension as i64,
            facet_count: s.facet_count,
            vertex_count: s.vertex_count,
            is_pure: s.is_pure,
        };
        Ok(RcStatus::Ok)
    })
}

/// The 2-complex C₂ on 7 vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_build_c2(out: *mut *mut RcComplex) -> RcStatus {
    guard(|| put_complex(out, lib(derive_c2())?))
}

/// `k` copies of C₂ glued along the free ridge.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_build_delta(k: usize, out: *mut *mut RcComplex) -> RcStatus {
    guard(|| put_complex(out, lib(delta2(k))?.complex))
}

/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_clique_complex(cx: *const RcComplex, out: *mut *mut RcComplex) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        put_complex(out, lib(clique_complex(cx))?)
    })
}

/// # Safety
/// `cx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rc_alexander_dual(cx: *const RcComplex, out: *mut *mut RcComplex) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        put_complex(out, alexander_dual(cx))
    })
}

/// Exhaustive ridge-chordality. `explored`, if non-null, receives the number
/// of visited states.
///
/// # Safety
/// `cx` must be a live handle; `explored` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_check_ridge_chordal(cx: *const RcComplex, budget: u64, explored: *mut u64) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let t = lib(is_ridge_chordal(cx, Budget::new(budget)))?;
        if let Some(e) = explored.as_mut() {
            *e = t.explored_states;
        }
        Ok(match t.verdict {
            ChordalVerdict::Chordal => RcStatus::Ok,
            ChordalVerdict::NotChordal => RcStatus::Refuted,
            ChordalVerdict::Unknown => RcStatus::Unknown,
        })
    })
}

/// Checks that a flat facet list is a complete shelling of `cx`.
///
/// # Safety
/// `cx` must be a live handle; the order arrays follow the flat layout.
#[no_mangle]
pub unsafe extern "C" fn rc_check_shelling(
    cx: *const RcComplex,
    vertices: *const u32,
    lengths: *const usize,
    facet_count: usize,
) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let faces = read_faces(vertices, lengths, facet_count)?;
        let mut order = Vec::with_capacity(faces.len());
        for f in faces {
            let face = Face::from_vertices(f.iter().copied())
                .ok_or_else(|| (RcStatus::InvalidArgument, format!("invalid face {f:?}")))?;
            order.push(face);
        }
        Ok(if lib(is_complete_shelling(cx, &order))? { RcStatus::Ok } else { RcStatus::Refuted })
    })
}

/// Searches for a shelling; on success `*order_json` (if `order_json` is
/// non-null) receives the order as a JSON array of facets.
///
/// # Safety
/// `cx` must be a live handle; `order_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_find_shelling(cx: *const RcComplex, budget: u64, order_json: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let res = lib(find_shelling(cx, &mut Budget::new(budget)))?;
        if let SearchOutcome::Found(order) = &res {
            put_string(order_json, to_json(order)?)?;
        }
        Ok(outcome_status(&res))
    })
}

/// k-decomposability search; on success `*cert_json` (if non-null) receives
/// the certificate.
///
/// # Safety
/// `cx` must be a live handle; `cert_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_check_k_decomposable(
    cx: *const RcComplex,
    k: usize,
    budget: u64,
    cert_json: *mut *mut c_char,
) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let res = lib(is_k_decomposable(cx, k, &mut Budget::new(budget)))?;
        if let SearchOutcome::Found(cert) = &res {
            put_string(cert_json, to_json(cert)?)?;
        }
        Ok(outcome_status(&res))
    })
}

/// Reduced homology as JSON. Returns `RC_STATUS_OK` when every reduced group
/// vanishes and `RC_STATUS_REFUTED` otherwise.
///
/// # Safety
/// `cx` must be a live handle; `profile_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_reduced_homology(cx: *const RcComplex, profile_json: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let cx = complex_ref(cx)?;
        let profile = lib(reduced_homology(cx))?;
        put_string(profile_json, to_json(&profile)?)?;
        Ok(if profile.is_trivial() { RcStatus::Ok } else { RcStatus::Refuted })
    })
}

/// Runs the staged 4-decomposability certification for `k ≥ 2`.
///
/// # Safety
/// `report_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn rc_theorem_a(k: usize, budget: u64, report_json: *mut *mut c_char) -> RcStatus {
    guard(|| {
        let report = lib(theorem_a_certificate(k, budget))?;
        put_string(report_json, to_json(&report)?)?;
        Ok(verdict_status(report.verdict))
    })
}
