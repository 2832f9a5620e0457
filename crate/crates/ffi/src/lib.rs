//! C ABI for graphonlab.
//!
//! Objects are opaque handles created by `*_new`/`*_from_*`/`*_make`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`GlStatus`]; on failure, [`gl_last_error`] describes the error
//! on the calling thread. Strings are NUL-terminated UTF-8. Output buffers
//! follow the `snprintf` convention: `needed` receives the full length
//! including the terminator, and nothing is written if `len` is too small.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphonlab::classes::{census, colouring_number, HereditaryClass};
use graphonlab::cutmetrics::d_box;
use graphonlab::graphons::{edge_density, entropy, from_json, p_induced, parse_graphon, sample, to_json};
use graphonlab::graphs::{canonical_form, graph6};
use graphonlab::{Error, Graph, StepGraphon};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed or out-of-domain input.
    Invalid = 2,
    /// The request exceeds what exhaustive methods support.
    Capacity = 3,
    /// The result could not be decided at the requested size.
    Inconclusive = 4,
    /// File access failed.
    Io = 5,
    /// The output buffer is too small; `needed` holds the required size.
    BufferTooSmall = 6,
    /// An internal error; the library state is unaffected.
    Internal = 7,
}

/// An undirected simple graph on at most 64 vertices.
pub struct GlGraph(Graph);

/// A step graphon.
pub struct GlGraphon(StepGraphon);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("interior NULs removed"));
}

fn status_of(e: &Error) -> GlStatus {
    match e {
        Error::Capacity(_) => GlStatus::Capacity,
        Error::Inconclusive(_) => GlStatus::Inconclusive,
        Error::Io { .. } => GlStatus::Io,
        _ => GlStatus::Invalid,
    }
}

/// Runs `f`, recording errors and converting panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (GlStatus, String)>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GlStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal error");
            GlStatus::Internal
        }
    }
}

type Failure = (GlStatus, String);

fn lib(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> Failure {
    (GlStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GlStatus::Invalid, format!("`{name}` is not valid UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), Failure> {
    let total = s.len() + 1;
    if !needed.is_null() {
        needed.write(total);
    }
    if len < total || buf.is_null() {
        return Err((GlStatus::BufferTooSmall, format!("buffer of {len} bytes, {total} needed")));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gl_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Decodes one graph6 line.
///
/// # Safety
/// `code` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_from_graph6(code: *const c_char, out: *mut *mut GlGraph) -> GlStatus {
    guard(|| {
        let g = graph6::decode(text(code, "code")?).map_err(lib)?;
        put(out, Box::into_raw(Box::new(GlGraph(g))), "out")
    })
}

/// Writes the graph6 code of `g` into `buf`.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_to_graph6(g: *const GlGraph, buf: *mut c_char, len: usize, needed: *mut usize) -> GlStatus {
    guard(|| write_string(&graph6::encode(&get(g, "g")?.0), buf, len, needed))
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_vertex_count(g: *const GlGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Whether `u` and `v` are adjacent.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_has_edge(g: *const GlGraph, u: usize, v: usize, out: *mut bool) -> GlStatus {
    guard(|| {
        let g = &get(g, "g")?.0;
        if u >= g.n() || v >= g.n() {
            return Err((GlStatus::Invalid, format!("vertex out of range 0..{}", g.n())));
        }
        put(out, g.has_edge(u, v), "out")
    })
}

/// Canonical representative of the isomorphism class of `g`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_canonical(g: *const GlGraph, out: *mut *mut GlGraph) -> GlStatus {
    guard(|| {
        let c = canonical_form(&get(g, "g")?.0);
        put(out, Box::into_raw(Box::new(GlGraph(c))), "out")
    })
}

/// Releases a graph; null is ignored.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_free(g: *mut GlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds a graphon from a literal such as `wrs:2,0` or `@file.json`.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_make(literal: *const c_char, out: *mut *mut GlGraphon) -> GlStatus {
    guard(|| {
        let w = parse_graphon(text(literal, "literal")?).map_err(lib)?;
        put(out, Box::into_raw(Box::new(GlGraphon(w))), "out")
    })
}

/// Parses a graphon JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_from_json(json: *const c_char, out: *mut *mut GlGraphon) -> GlStatus {
    guard(|| {
        let w = from_json(text(json, "json")?).map_err(lib)?;
        put(out, Box::into_raw(Box::new(GlGraphon(w))), "out")
    })
}

/// The graphon `W_G` of a graph.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_from_graph(g: *const GlGraph, out: *mut *mut GlGraphon) -> GlStatus {
    guard(|| {
        let w = StepGraphon::from_graph(&get(g, "g")?.0);
        put(out, Box::into_raw(Box::new(GlGraphon(w))), "out")
    })
}

/// Writes the JSON document of `w` into `buf`.
///
/// # Safety
/// `w` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_to_json(w: *const GlGraphon, buf: *mut c_char, len: usize, needed: *mut usize) -> GlStatus {
    guard(|| write_string(&to_json(&get(w, "w")?.0), buf, len, needed))
}

/// Number of blocks, or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_block_count(w: *const GlGraphon) -> usize {
    w.as_ref().map_or(0, |w| w.0.k())
}

/// Releases a graphon; null is ignored.
///
/// # Safety
/// `w` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_free(w: *mut GlGraphon) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Entropy `Ent(W)` in bits.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_entropy(w: *const GlGraphon, out: *mut f64) -> GlStatus {
    guard(|| put(out, entropy(&get(w, "w")?.0), "out"))
}

/// Edge density `t(K_2; W)`.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_edge_density(w: *const GlGraphon, out: *mut f64) -> GlStatus {
    guard(|| put(out, edge_density(&get(w, "w")?.0), "out"))
}

/// Probability that `G(n, W)` on `n = |V(h)|` vertices equals the labelled graph `h`.
///
/// # Safety
/// `h` and `w` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_p_induced(h: *const GlGraph, w: *const GlGraphon, out: *mut f64) -> GlStatus {
    guard(|| {
        let p = p_induced(&get(h, "h")?.0, &get(w, "w")?.0).map_err(lib)?;
        put(out, p, "out")
    })
}

/// Draws `G(n, W)` with the given seed.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_graphon_sample(w: *const GlGraphon, n: usize, seed: u64, out: *mut *mut GlGraph) -> GlStatus {
    guard(|| {
        let g = sample(&get(w, "w")?.0, n, seed).map_err(lib)?;
        put(out, Box::into_raw(Box::new(GlGraph(g))), "out")
    })
}

/// Labelled cut distance `d_box(u, v)`.
///
/// # Safety
/// `u` and `v` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_d_box(u: *const GlGraphon, v: *const GlGraphon, out: *mut f64) -> GlStatus {
    guard(|| {
        let d = d_box(&get(u, "u")?.0, &get(v, "v")?.0).map_err(lib)?;
        put(out, d, "out")
    })
}

fn class(name: &str) -> Result<HereditaryClass, Failure> {
    name.parse().map_err(lib)
}

/// Exact member counts of a named class on `n <= 8` vertices.
///
/// # Safety
/// `class_name` must be a NUL-terminated string; `labelled` and `unlabelled` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gl_census(
    class_name: *const c_char,
    n: usize,
    labelled: *mut u64,
    unlabelled: *mut u64,
) -> GlStatus {
    guard(|| {
        let row = census(&class(text(class_name, "class_name")?)?, n).map_err(lib)?;
        put(labelled, row.labelled, "labelled")?;
        put(unlabelled, row.unlabelled, "unlabelled")
    })
}

/// Colouring number estimate. `s_witness` receives `SIZE_MAX` when no
/// `C(t, u)` is contained.
///
/// # Safety
/// `class_name` must be a NUL-terminated string; the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gl_colouring_number(
    class_name: *const c_char,
    t_max: usize,
    n_check: usize,
    r_hat: *mut usize,
    s_witness: *mut usize,
    at_cap: *mut bool,
) -> GlStatus {
    guard(|| {
        let col = colouring_number(&class(text(class_name, "class_name")?)?, t_max, n_check).map_err(lib)?;
        put(r_hat, col.r_hat, "r_hat")?;
        put(s_witness, col.s_witness.unwrap_or(usize::MAX), "s_witness")?;
        put(at_cap, col.at_cap, "at_cap")
    })
}
