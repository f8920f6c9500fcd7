//! C ABI over the `cheeger` library.
//!
//! Graphs live behind an opaque [`CheegerGraph`] handle created by
//! [`cheeger_graph_parse`] or [`cheeger_graph_generate`] and released with
//! [`cheeger_graph_free`]. Every fallible call returns a [`CheegerStatus`];
//! on failure [`cheeger_last_error_message`] describes the error for the
//! calling thread. Panics never cross the boundary.
//!
//! The header `include/cheeger.h` is generated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use cheeger::cheeger::{
    conductance, rho_exact, rho_signed_exact, PartitionCertificate, SearchBudget,
};
use cheeger::graph::io::parse_graph;
use cheeger::graph::{cyclomatic, generate, Family, GenParams};
use cheeger::nodal::{default_zero_tol, strong_nodal};
use cheeger::spectral::{laplacian_spectrum, EigenOptions};
use cheeger::{Error, WeightedGraph};

/// Opaque graph handle.
pub struct CheegerGraph {
    inner: WeightedGraph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheegerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    InvalidArgument = 5,
    Hypothesis = 6,
    NoConvergence = 7,
    /// The exact search ran out of states; outputs hold the best labeling
    /// found, which is only an upper bound.
    BudgetExceeded = 8,
    BufferTooSmall = 9,
    NotGeneric = 10,
    Io = 11,
    Panic = 12,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(status: CheegerStatus, message: impl Into<String>) -> CheegerStatus {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn status_of(e: &Error) -> CheegerStatus {
    match e {
        Error::InvalidGraph(_) => CheegerStatus::InvalidGraph,
        Error::Parse(_) => CheegerStatus::Parse,
        Error::InvalidArgument(_) => CheegerStatus::InvalidArgument,
        Error::Hypothesis(_) => CheegerStatus::Hypothesis,
        Error::NoConvergence { .. } | Error::Residual { .. } => CheegerStatus::NoConvergence,
        Error::BudgetExceeded { .. } => CheegerStatus::BudgetExceeded,
        Error::NotGeneric(_) => CheegerStatus::NotGeneric,
        Error::Io(_) => CheegerStatus::Io,
    }
}

fn fail(e: Error) -> CheegerStatus {
    set_error(status_of(&e), e.to_string())
}

/// Runs `body`, clearing the last error first and turning panics into
/// [`CheegerStatus::Panic`].
fn guard(body: impl FnOnce() -> CheegerStatus) -> CheegerStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| set_error(CheegerStatus::Panic, "internal panic"))
}

unsafe fn graph_ref<'a>(graph: *const CheegerGraph) -> Option<&'a WeightedGraph> {
    graph.as_ref().map(|g| &g.inner)
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, CheegerStatus> {
    if s.is_null() {
        return Err(set_error(CheegerStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| set_error(CheegerStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn null() -> CheegerStatus {
    set_error(CheegerStatus::NullPointer, "null pointer argument")
}

fn into_handle(g: WeightedGraph, out: *mut *mut CheegerGraph) {
    let handle = Box::new(CheegerGraph { inner: g });
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(handle) };
}

/// Parses a graph from JSON or edge-list text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must point to writable
/// storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_parse(
    text: *const c_char,
    out: *mut *mut CheegerGraph,
) -> CheegerStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        *out = ptr::null_mut();
        let text = match c_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph(text) {
            Ok(g) => {
                into_handle(g, out);
                CheegerStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds a member of a named family (`gn`, `path`, `cycle`, `star`,
/// `complete`, `random_tree`, `random_connected`, `random_bipartite`) with
/// default parameters.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must point to writable
/// storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_generate(
    family: *const c_char,
    n: usize,
    seed: u64,
    out: *mut *mut CheegerGraph,
) -> CheegerStatus {
    guard(|| {
        if out.is_null() {
            return null();
        }
        *out = ptr::null_mut();
        let name = match c_str(family) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = name
            .parse::<Family>()
            .and_then(|f| generate(f, &GenParams::with_n(n), seed));
        match result {
            Ok(g) => {
                into_handle(g, out);
                CheegerStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_free(graph: *mut CheegerGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_vertex_count(graph: *const CheegerGraph) -> usize {
    graph_ref(graph).map_or(0, WeightedGraph::n)
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_edge_count(graph: *const CheegerGraph) -> usize {
    graph_ref(graph).map_or(0, WeightedGraph::edge_count)
}

/// Cyclomatic number `|E| - |V| + c`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cheeger_graph_cyclomatic(
    graph: *const CheegerGraph,
    out: *mut usize,
) -> CheegerStatus {
    guard(|| match (graph_ref(graph), out.is_null()) {
        (Some(g), false) => {
            *out = cyclomatic(g);
            CheegerStatus::Ok
        }
        _ => null(),
    })
}

/// Writes the `n` normalized Laplacian eigenvalues, ascending, to
/// `values[0..n]`. `len` is the capacity of `values`.
///
/// # Safety
/// `graph` must be a live handle and `values` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cheeger_laplacian_spectrum(
    graph: *const CheegerGraph,
    values: *mut f64,
    len: usize,
) -> CheegerStatus {
    guard(|| {
        let Some(g) = graph_ref(graph) else {
            return null();
        };
        if values.is_null() {
            return null();
        }
        if len < g.n() {
            return set_error(
                CheegerStatus::BufferTooSmall,
                format!("need {} values, got {len}", g.n()),
            );
        }
        match laplacian_spectrum(g, &EigenOptions::default()) {
            Ok(s) => {
                slice::from_raw_parts_mut(values, g.n()).copy_from_slice(&s.values);
                CheegerStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Conductance of the vertex set `set[0..len]`.
///
/// # Safety
/// `graph` must be a live handle, `set` valid for `len` reads, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cheeger_conductance(
    graph: *const CheegerGraph,
    set: *const usize,
    len: usize,
    out: *mut f64,
) -> CheegerStatus {
    guard(|| {
        let Some(g) = graph_ref(graph) else {
            return null();
        };
        if out.is_null() || (set.is_null() && len > 0) {
            return null();
        }
        let vertices = if len == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(set, len)
        };
        match conductance(g, vertices) {
            Ok(v) => {
                *out = v;
                CheegerStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

unsafe fn write_certificate(
    cert: &PartitionCertificate,
    value: *mut f64,
    labels: *mut u32,
    n: usize,
) {
    *value = cert.value;
    if !labels.is_null() {
        let out = slice::from_raw_parts_mut(labels, n);
        out.fill(0);
        for (i, part) in cert.parts.iter().enumerate() {
            for &x in part {
                out[x] = i as u32 + 1;
            }
        }
    }
}

unsafe fn run_rho(
    graph: *const CheegerGraph,
    k: usize,
    max_states: u64,
    value: *mut f64,
    labels: *mut u32,
    signed: bool,
) -> CheegerStatus {
    guard(|| {
        let Some(g) = graph_ref(graph) else {
            return null();
        };
        if value.is_null() {
            return null();
        }
        let budget = SearchBudget {
            max_states: if max_states == 0 {
                SearchBudget::default().max_states
            } else {
                max_states
            },
            allow_overflow: false,
        };
        let result = if signed {
            rho_signed_exact(g, k, &budget)
        } else {
            rho_exact(g, k, &budget)
        };
        match result {
            Ok(cert) => {
                write_certificate(&cert, value, labels, g.n());
                CheegerStatus::Ok
            }
            Err(Error::BudgetExceeded {
                best: Some(best),
                max_states,
            }) => {
                write_certificate(&best, value, labels, g.n());
                set_error(
                    CheegerStatus::BudgetExceeded,
                    format!(
                        "search budget of {max_states} states exhausted; value is an upper bound"
                    ),
                )
            }
            Err(e) => fail(e),
        }
    })
}

/// Exact k-way Cheeger constant. When `labels` is not null it receives `n`
/// entries: the 1-based part of each vertex, 0 for vertices in no part.
/// `max_states = 0` selects the default budget.
///
/// # Safety
/// `graph` must be a live handle, `value` writable, `labels` null or valid
/// for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn cheeger_rho(
    graph: *const CheegerGraph,
    k: usize,
    max_states: u64,
    value: *mut f64,
    labels: *mut u32,
) -> CheegerStatus {
    run_rho(graph, k, max_states, value, labels, false)
}

/// Exact signed k-way Cheeger constant. `labels` entries are `2i - 1` / `2i`
/// for side 1 / side 2 of pair `i`, 0 outside every pair.
///
/// # Safety
/// As [`cheeger_rho`].
#[no_mangle]
pub unsafe extern "C" fn cheeger_rho_signed(
    graph: *const CheegerGraph,
    k: usize,
    max_states: u64,
    value: *mut f64,
    labels: *mut u32,
) -> CheegerStatus {
    run_rho(graph, k, max_states, value, labels, true)
}

/// Number of strong nodal domains of `f[0..len]`, with entries below
/// `1e-10 max|f|` treated as zero.
///
/// # Safety
/// `graph` must be a live handle, `f` valid for `len` reads, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cheeger_strong_nodal_count(
    graph: *const CheegerGraph,
    f: *const f64,
    len: usize,
    out: *mut usize,
) -> CheegerStatus {
    guard(|| {
        let Some(g) = graph_ref(graph) else {
            return null();
        };
        if f.is_null() || out.is_null() {
            return null();
        }
        let f = slice::from_raw_parts(f, len);
        match strong_nodal(g, f, default_zero_tol(f)) {
            Ok(d) => {
                *out = d.count;
                CheegerStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cheeger_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
