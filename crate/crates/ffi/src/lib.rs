//! C ABI over `rigkit`.
//!
//! Graphs are opaque `RkGraph` handles created by the `rk_graph_*`
//! constructors and released with `rk_graph_free`. Every fallible call
//! returns an `RkStatus`; on failure `rk_last_error` gives a message for the
//! calling thread. Strings handed out by the library are released with
//! `rk_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rigkit::constructions::{apex_grid, build_bn, build_bn_prime, build_g, build_gg, pd_grid};
use rigkit::formats::{named_graph, read_graph_any, write_graph, Format};
use rigkit::minor::{find_model, verify_model, MinorModel, ModelKind, SearchOutcome};
use rigkit::ops::{girth, GirthValue};
use rigkit::{Error, Graph};

/// Opaque graph handle.
pub struct RkGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    SizeGuard = 5,
    Failed = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkFormat {
    Graph6 = 0,
    Dimacs = 1,
    Json = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkModelKind {
    Ordinary = 0,
    Induced = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkOutcome {
    Found = 0,
    Absent = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(RkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Json(_) => RkStatus::Parse,
            Error::SizeGuard { .. } => RkStatus::SizeGuard,
            Error::InvalidParameter(_)
            | Error::SelfLoop(_)
            | Error::VertexOutOfRange { .. }
            | Error::DomainMismatch(_)
            | Error::Precondition(_) => RkStatus::InvalidArgument,
            _ => RkStatus::Failed,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: Option<String>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = message.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    });
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            RkStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(Some(message));
            status
        }
        Err(_) => {
            set_error(Some("panic inside rigkit".into()));
            RkStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(RkStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(RkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn graph<'a>(p: *const RkGraph) -> Result<&'a Graph, Failure> {
    p.as_ref().map(|g| &g.inner).ok_or_else(|| Failure(RkStatus::NullPointer, "null graph handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(RkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut RkGraph, g: Graph) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(RkGraph { inner: g })))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn rk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses graph6, DIMACS, graph JSON or bundle JSON (format guessed).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_parse(text: *const c_char, out: *mut *mut RkGraph) -> RkStatus {
    guard(|| put_graph(out, read_graph_any(c_str(text)?)?))
}

/// Builds a small named graph such as `k6`, `c4`, `p5` or `k4-sub1`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_named(name: *const c_char, out: *mut *mut RkGraph) -> RkStatus {
    guard(|| {
        let name = c_str(name)?;
        let g = named_graph(name)?.ok_or_else(|| Failure(RkStatus::InvalidArgument, format!("unknown graph name {name}")))?;
        put_graph(out, g)
    })
}

/// Generates a family member: `apex-grid`, `pd-grid`, `bn`, `bn-prime`, `g`
/// or `gg`. `g` is ignored by families without a subdivision parameter.
///
/// # Safety
/// `family` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_generate(family: *const c_char, n: usize, g: usize, out: *mut *mut RkGraph) -> RkStatus {
    guard(|| {
        let graph = match c_str(family)? {
            "apex-grid" => apex_grid(n)?,
            "pd-grid" => pd_grid(n)?,
            "bn" => build_bn(g, n)?,
            "bn-prime" => build_bn_prime(g, n)?.graph,
            "g" => build_g(n)?.graph,
            "gg" => build_gg(g, n)?.graph,
            other => return Err(Failure(RkStatus::InvalidArgument, format!("unknown family {other}"))),
        };
        put_graph(out, graph)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_free(g: *mut RkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_vertex_count(g: *const RkGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Edge count, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_edge_count(g: *const RkGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Serialises a graph; release the string with `rk_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_write(g: *const RkGraph, format: RkFormat, out: *mut *mut c_char) -> RkStatus {
    guard(|| {
        let format = match format {
            RkFormat::Graph6 => Format::Graph6,
            RkFormat::Dimacs => Format::Dimacs,
            RkFormat::Json => Format::Json,
        };
        put(out, owned_string(write_graph(graph(g)?, format)))
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Shortest cycle length; `*unbounded` is set for forests (length 0 then).
///
/// # Safety
/// `g` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_girth(g: *const RkGraph, length: *mut usize, unbounded: *mut bool) -> RkStatus {
    guard(|| {
        let v = girth(graph(g)?);
        put(length, v.finite().unwrap_or(0))?;
        put(unbounded, v == GirthValue::Unbounded)
    })
}

/// Exact (induced) minor search with a node budget (0 = unlimited).
/// When `witness_json` is non-null it receives the model as JSON on
/// `RK_OUTCOME_FOUND` and null otherwise.
///
/// # Safety
/// Handles must be live; `outcome` must be writable; `witness_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn rk_find_minor(
    pattern: *const RkGraph,
    host: *const RkGraph,
    kind: RkModelKind,
    budget: u64,
    outcome: *mut RkOutcome,
    witness_json: *mut *mut c_char,
) -> RkStatus {
    guard(|| {
        let kind = match kind {
            RkModelKind::Ordinary => ModelKind::Ordinary,
            RkModelKind::Induced => ModelKind::Induced,
        };
        let res = find_model(graph(pattern)?, graph(host)?, kind, (budget > 0).then_some(budget))?;
        let (o, w) = match res {
            SearchOutcome::Found { witness } => (RkOutcome::Found, owned_string(witness.to_json())),
            SearchOutcome::Absent => (RkOutcome::Absent, ptr::null_mut()),
            SearchOutcome::Unknown { .. } => (RkOutcome::Unknown, ptr::null_mut()),
        };
        put(outcome, o)?;
        if !witness_json.is_null() {
            witness_json.write(w);
        } else if !w.is_null() {
            rk_string_free(w);
        }
        Ok(())
    })
}

/// Checks a model given as JSON (`{"kind", "assignment"}`).
///
/// # Safety
/// Handles must be live; `model_json` nul-terminated; `valid` writable.
#[no_mangle]
pub unsafe extern "C" fn rk_verify_model(
    pattern: *const RkGraph,
    host: *const RkGraph,
    model_json: *const c_char,
    valid: *mut bool,
) -> RkStatus {
    guard(|| {
        let m = MinorModel::from_json(c_str(model_json)?)?;
        put(valid, verify_model(graph(pattern)?, graph(host)?, &m)?.valid)
    })
}
