//! C ABI over `poset-assoc`.
//!
//! Posets live behind opaque `PaPoset` handles. Every fallible call returns a
//! `PaStatus`; on failure a message is available from `pa_last_error` on the
//! same thread until the next failing call. Strings returned by the library
//! must be released with `pa_string_free`, handles with `pa_poset_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use poset_assoc::{
    comparability_graph, complete_graded, enumerate_tubings, f_vector, face_lattice, flip_tubing,
    graphs_isomorphic, lattices_equivalent, parse_poset, permutohedron_lattice,
    tubing::parse_tubing, Composition, ElementSet, Error, Poset,
};

/// Opaque poset handle.
pub struct PaPoset(Poset);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    BufferTooSmall = 3,
    Panic = 4,
    DuplicateElement = 10,
    UnknownElement = 11,
    CyclicRelation = 12,
    MalformedInput = 13,
    EmptyComposition = 14,
    ElementNotFound = 15,
    LabelClash = 16,
    NotAutonomous = 17,
    TooLarge = 18,
    DisconnectedPoset = 19,
    TooSmall = 20,
    NotATubing = 21,
    StructureViolation = 22,
    MalformedDecomposition = 23,
    ImageNotATubing = 24,
    QuotientNotPoset = 25,
}

impl From<&Error> for PaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DuplicateElement(_) => PaStatus::DuplicateElement,
            Error::UnknownElement(_) => PaStatus::UnknownElement,
            Error::CyclicRelation(_) => PaStatus::CyclicRelation,
            Error::MalformedInput(_) => PaStatus::MalformedInput,
            Error::EmptyComposition => PaStatus::EmptyComposition,
            Error::ElementNotFound(_) => PaStatus::ElementNotFound,
            Error::LabelClash(_) => PaStatus::LabelClash,
            Error::NotAutonomous => PaStatus::NotAutonomous,
            Error::TooLarge(_) => PaStatus::TooLarge,
            Error::DisconnectedPoset => PaStatus::DisconnectedPoset,
            Error::TooSmall(_) => PaStatus::TooSmall,
            Error::NotATubing(_) => PaStatus::NotATubing,
            Error::StructureViolation(_) => PaStatus::StructureViolation,
            Error::MalformedDecomposition(_) => PaStatus::MalformedDecomposition,
            Error::ImageNotATubing => PaStatus::ImageNotATubing,
            Error::QuotientNotPoset => PaStatus::QuotientNotPoset,
        }
    }
}

struct Failure(PaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(PaStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = Result<T, Failure>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn call(f: impl FnOnce() -> FfiResult<()>) -> PaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            PaStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PaStatus::NullArgument, format!("`{what}` is null"))
}

unsafe fn poset<'a>(p: *const PaPoset) -> FfiResult<&'a Poset> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("poset"))
}

unsafe fn string<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(PaStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn write<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn new_handle(p: Poset) -> *mut PaPoset {
    Box::into_raw(Box::new(PaPoset(p)))
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn subset(p: &Poset, labels: &str) -> FfiResult<ElementSet> {
    let labels: Vec<&str> = labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(p.subset_of(&labels)?)
}

unsafe fn copy_out<T: Copy>(
    values: &[T],
    buf: *mut T,
    cap: usize,
    len: *mut usize,
) -> FfiResult<()> {
    write(len, values.len())?;
    if values.len() > cap {
        return Err(Failure(
            PaStatus::BufferTooSmall,
            format!("need {} entries, buffer holds {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the last failing call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse `{"elements": [...], "relations": [[a, b], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_from_json(
    json: *const c_char,
    out: *mut *mut PaPoset,
) -> PaStatus {
    call(|| {
        let p = parse_poset(string(json, "json")?)?;
        write(out, new_handle(p))
    })
}

/// Complete graded poset with rank sizes `parts[0..len]`.
///
/// # Safety
/// `parts` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_complete_graded(
    parts: *const usize,
    len: usize,
    out: *mut *mut PaPoset,
) -> PaStatus {
    call(|| {
        let parts = if len == 0 {
            Vec::new()
        } else if parts.is_null() {
            return Err(null("parts"));
        } else {
            std::slice::from_raw_parts(parts, len).to_vec()
        };
        let p = complete_graded(&Composition::new(parts)?)?;
        write(out, new_handle(p))
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_free(p: *mut PaPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of elements; 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_len(p: *const PaPoset) -> usize {
    p.as_ref().map_or(0, |h| h.0.len())
}

/// Serialize to the poset file format. Free the result with `pa_string_free`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_to_json(p: *const PaPoset, out: *mut *mut c_char) -> PaStatus {
    call(|| {
        let text = serde_json::to_string(&poset(p)?.to_file())
            .map_err(|e| Failure(PaStatus::MalformedInput, e.to_string()))?;
        write(out, new_string(text))
    })
}

/// Whether the comma-separated labels form an autonomous subset.
///
/// # Safety
/// `p` must be a live handle, `labels` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_is_autonomous(
    p: *const PaPoset,
    labels: *const c_char,
    out: *mut bool,
) -> PaStatus {
    call(|| {
        let p = poset(p)?;
        let s = subset(p, string(labels, "labels")?)?;
        write(out, p.is_autonomous(s))
    })
}

/// New handle with the order reversed inside the autonomous subset `labels`.
///
/// # Safety
/// `p` must be a live handle, `labels` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_flip(
    p: *const PaPoset,
    labels: *const c_char,
    out: *mut *mut PaPoset,
) -> PaStatus {
    call(|| {
        let p = poset(p)?;
        let s = subset(p, string(labels, "labels")?)?;
        write(out, new_handle(p.flip(s)?))
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_poset_is_isomorphic(
    a: *const PaPoset,
    b: *const PaPoset,
    out: *mut bool,
) -> PaStatus {
    call(|| write(out, poset(a)?.is_isomorphic(poset(b)?)))
}

/// Whether the comparability graphs are isomorphic.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_comparability_isomorphic(
    a: *const PaPoset,
    b: *const PaPoset,
    out: *mut bool,
) -> PaStatus {
    call(|| {
        let (ga, gb) = (
            comparability_graph(poset(a)?),
            comparability_graph(poset(b)?),
        );
        write(out, graphs_isomorphic(&ga, &gb).is_some())
    })
}

/// f-vector `f_0 .. f_d` into `buf`. `*len` receives the length even when
/// `cap` is too small (status `BUFFER_TOO_SMALL`).
///
/// # Safety
/// `p` live; `buf` writable for `cap` values; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_f_vector(
    p: *const PaPoset,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> PaStatus {
    call(|| {
        let f = f_vector(poset(p)?)?;
        copy_out(f.counts(), buf, cap, len)
    })
}

/// h-vector `h_0 .. h_d`, same buffer protocol as `pa_f_vector`.
///
/// # Safety
/// `p` live; `buf` writable for `cap` values; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_h_vector(
    p: *const PaPoset,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PaStatus {
    call(|| {
        let h = f_vector(poset(p)?)?.h_vector();
        copy_out(&h, buf, cap, len)
    })
}

/// Number of proper tubings, the empty one included.
///
/// # Safety
/// `p` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_tubing_count(p: *const PaPoset, out: *mut u64) -> PaStatus {
    call(|| write(out, enumerate_tubings(poset(p)?)?.count() as u64))
}

/// Image of a tubing (`{"tubes": [[..], ..]}`) under the flip map for the
/// subset `labels`, as a tubing of the flipped poset in the same format.
///
/// # Safety
/// `p` live; `labels` and `tubing_json` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_flip_tubing_json(
    p: *const PaPoset,
    labels: *const c_char,
    tubing_json: *const c_char,
    out: *mut *mut c_char,
) -> PaStatus {
    call(|| {
        let p = poset(p)?;
        let s = subset(p, string(labels, "labels")?)?;
        let t = parse_tubing(p, string(tubing_json, "tubing_json")?)?;
        let image = flip_tubing(p, s, &t)?;
        let text = serde_json::to_string(&image.to_file(p))
            .map_err(|e| Failure(PaStatus::MalformedInput, e.to_string()))?;
        write(out, new_string(text))
    })
}

/// Whether the two poset associahedra have isomorphic face lattices.
///
/// # Safety
/// `a`, `b` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_lattices_equivalent(
    a: *const PaPoset,
    b: *const PaPoset,
    out: *mut bool,
) -> PaStatus {
    call(|| {
        let (la, lb) = (face_lattice(poset(a)?)?, face_lattice(poset(b)?)?);
        write(out, lattices_equivalent(&la, &lb))
    })
}

/// Whether the poset associahedron of `p` is combinatorially the
/// permutohedron on `n` letters.
///
/// # Safety
/// `p` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pa_equivalent_to_permutohedron(
    p: *const PaPoset,
    n: usize,
    out: *mut bool,
) -> PaStatus {
    call(|| {
        if n == 0 {
            return Err(Failure(
                PaStatus::TooSmall,
                "permutohedron needs n >= 1".into(),
            ));
        }
        let l = face_lattice(poset(p)?)?;
        write(out, lattices_equivalent(&l, &permutohedron_lattice(n)))
    })
}
