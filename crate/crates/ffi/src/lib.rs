//! C interface to `eqlines`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns an
//! [`EqStatus`]; on failure `eq_last_error` describes the most recent error
//! on the calling thread. Strings returned through `char **` are owned by
//! the caller and released with `eq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqlines::korder::{EnumerationBudget, KOrder};
use eqlines::lines::{self, Alpha, LineFamily, NAlpha};
use eqlines::{cayley, mult_bound, spectra, Error, Graph, NamedGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Disconnected = 4,
    NotPrime = 5,
    BudgetExceeded = 6,
    Numeric = 7,
    BufferTooSmall = 8,
    /// `N_α(d)` has no closed form for this angle.
    Unbounded = 9,
    Panic = 10,
}

/// Graph handle.
pub struct EqGraph(Graph);

/// Line family handle.
pub struct EqLineFamily(LineFamily);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> EqStatus {
    match err {
        Error::InvalidArgument(_) | Error::VertexOutOfRange { .. } | Error::TooSmall { .. } => {
            EqStatus::InvalidArgument
        }
        Error::UnknownLabel(_) | Error::Parse(_) | Error::Json(_) | Error::Io(_) => EqStatus::Parse,
        Error::Disconnected => EqStatus::Disconnected,
        Error::NotPrime(_) => EqStatus::NotPrime,
        Error::BudgetExceeded(_) => EqStatus::BudgetExceeded,
        _ => EqStatus::Numeric,
    }
}

/// Run `f`, recording any error or panic.
fn guard<F: FnOnce() -> Result<(), EqStatus>>(f: F) -> EqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            EqStatus::Panic
        }
    }
}

fn fail(err: Error) -> EqStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

fn null(what: &str) -> EqStatus {
    set_error(format!("{what} is null"));
    EqStatus::NullPointer
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, EqStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        EqStatus::Parse
    })
}

unsafe fn graph_ref<'a>(g: *const EqGraph) -> Result<&'a Graph, EqStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn family_ref<'a>(f: *const EqLineFamily) -> Result<&'a LineFamily, EqStatus> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null("family"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), EqStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), EqStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("string contains NUL");
        EqStatus::Numeric
    })?;
    put(out, c.into_raw())
}

unsafe fn put_slice<T: Copy>(buf: *mut T, cap: usize, len_out: *mut usize, data: &[T]) -> Result<(), EqStatus> {
    put(len_out, data.len())?;
    if cap < data.len() {
        set_error(format!("buffer holds {cap}, need {}", data.len()));
        return Err(EqStatus::BufferTooSmall);
    }
    if data.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    Ok(())
}

fn parse_alpha(s: &str) -> Result<Alpha, EqStatus> {
    Alpha::parse(s).map_err(fail)
}

fn budget(n_max: usize) -> Result<EnumerationBudget, EqStatus> {
    EnumerationBudget::new(n_max, true).map_err(fail)
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn eq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn eq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_from_json(json: *const c_char, out: *mut *mut EqGraph) -> EqStatus {
    guard(|| {
        let g = Graph::from_json(read_str(json, "json")?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(EqGraph(g))))
    })
}

/// `kind` is one of `complete`, `path`, `cycle`, `empty`, `star`.
///
/// # Safety
/// `kind` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_named(kind: *const c_char, k: usize, out: *mut *mut EqGraph) -> EqStatus {
    guard(|| {
        let kind: NamedGraph = read_str(kind, "kind")?.parse().map_err(fail)?;
        let g = Graph::build_named(kind, k).map_err(fail)?;
        put(out, Box::into_raw(Box::new(EqGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_free(g: *mut EqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_order(g: *const EqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_edge_count(g: *const EqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_to_json(g: *const EqGraph, out: *mut *mut c_char) -> EqStatus {
    guard(|| put_string(out, graph_ref(g)?.to_json()))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_lambda1(g: *const EqGraph, out: *mut f64) -> EqStatus {
    guard(|| put(out, spectra::lambda1(graph_ref(g)?).map_err(fail)?))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_lambda2(g: *const EqGraph, out: *mut f64) -> EqStatus {
    guard(|| put(out, spectra::lambda2(graph_ref(g)?).map_err(fail)?))
}

/// Adjacency eigenvalues in descending order. `*len` is always set to the
/// number of eigenvalues, so a call with `cap = 0` queries the size.
///
/// # Safety
/// `buf` must hold `cap` doubles; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_spectrum(g: *const EqGraph, buf: *mut f64, cap: usize, len: *mut usize) -> EqStatus {
    guard(|| put_slice(buf, cap, len, &spectra::adjacency_spectrum(graph_ref(g)?).values))
}

/// Members of an `r`-net grown from `root`.
///
/// # Safety
/// `buf` must hold `cap` entries; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_graph_r_net(
    g: *const EqGraph,
    r: usize,
    root: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> EqStatus {
    guard(|| {
        let net = graph_ref(g)?.r_net_rooted(r, root).map_err(fail)?;
        put_slice(buf, cap, len, &net.members)
    })
}

/// Spectral radius order of `λ = (1 − α)/(2α)` for a rational `alpha`
/// such as `"1/3"`. On success `*k` is set and, if `witness` is non-null,
/// a witness graph is returned through it. A search that exhausts `n_max`
/// returns `BudgetExceeded`.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `k` must be writable;
/// `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn eq_korder(
    alpha: *const c_char,
    n_max: usize,
    k: *mut usize,
    witness: *mut *mut EqGraph,
) -> EqStatus {
    guard(|| {
        let a = parse_alpha(read_str(alpha, "alpha")?)?;
        let lam = a.lambda();
        let found = eqlines::korder::spectral_radius_order(&lam, budget(n_max)?).map_err(fail)?;
        match found {
            KOrder::Found { k: order, witness: w, .. } => {
                put(k, order)?;
                if !witness.is_null() {
                    witness.write(Box::into_raw(Box::new(EqGraph(w))));
                }
                Ok(())
            }
            KOrder::Exceeded { n_max } => Err(fail(Error::BudgetExceeded(n_max))),
        }
    })
}

/// Largest known family of equiangular lines in `R^d` at angle `arccos α`.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_construct(
    alpha: *const c_char,
    d: usize,
    n_max: usize,
    out: *mut *mut EqLineFamily,
) -> EqStatus {
    guard(|| {
        let a = parse_alpha(read_str(alpha, "alpha")?)?;
        let c = lines::construct_optimal(&a, d, budget(n_max)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(EqLineFamily(c.family))))
    })
}

/// Parse a family from the CSV form written by `eq_family_to_csv`.
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_family_from_csv(csv: *const c_char, out: *mut *mut EqLineFamily) -> EqStatus {
    guard(|| {
        let f = LineFamily::from_csv(read_str(csv, "csv")?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(EqLineFamily(f))))
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_family_to_csv(f: *const EqLineFamily, out: *mut *mut c_char) -> EqStatus {
    guard(|| put_string(out, family_ref(f)?.to_csv()))
}

/// # Safety
/// `f` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn eq_family_free(f: *mut EqLineFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of lines, 0 for a null handle.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn eq_family_len(f: *const EqLineFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.n())
}

/// Ambient dimension, 0 for a null handle.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn eq_family_dim(f: *const EqLineFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.d)
}

/// Unit vectors, row-major, `len × dim` doubles.
///
/// # Safety
/// `buf` must hold `cap` doubles; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_family_vectors(
    f: *const EqLineFamily,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> EqStatus {
    guard(|| {
        let flat: Vec<f64> = family_ref(f)?.vectors.iter().flatten().copied().collect();
        put_slice(buf, cap, len, &flat)
    })
}

/// Sets `*valid` to 1 when every vector is a unit vector and every pair
/// has inner product `±α` within `tol`, 0 otherwise.
///
/// # Safety
/// `f` must be a live handle; `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_family_verify(f: *const EqLineFamily, tol: f64, valid: *mut i32) -> EqStatus {
    guard(|| put(valid, lines::verify_family(family_ref(f)?, tol).valid as i32))
}

/// Certified upper bound on the multiplicity of `lambda` in a connected
/// graph, along with the measured multiplicity.
///
/// # Safety
/// `g` must be a live handle; `bound` and `measured` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_mult_bound(
    g: *const EqGraph,
    lambda: f64,
    r: usize,
    s: usize,
    bound: *mut usize,
    measured: *mut usize,
) -> EqStatus {
    guard(|| {
        let b = mult_bound::certified_mult_upper(graph_ref(g)?, lambda, r, s).map_err(fail)?;
        put(bound, b.bound)?;
        put(measured, b.measured)
    })
}

/// Cayley graph of `Aff(F_p)` with its shift edges subdivided into paths
/// of `length` edges; `length = 0` picks `⌈log₂ p⌉`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_cayley_aff(p: u64, length: usize, out: *mut *mut EqGraph) -> EqStatus {
    guard(|| {
        let g = cayley::subdivided_aff(p, (length > 0).then_some(length)).map_err(fail)?;
        put(out, Box::into_raw(Box::new(EqGraph(g))))
    })
}

#[no_mangle]
pub extern "C" fn eq_gerzon_bound(d: u64) -> u64 {
    lines::gerzon_bound(d)
}

/// `N_α(d)` from the spectral radius order. Angles without a finite order
/// return `Unbounded`.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eq_n_alpha(alpha: *const c_char, d: u64, n_max: usize, out: *mut u64) -> EqStatus {
    guard(|| {
        let a = parse_alpha(read_str(alpha, "alpha")?)?;
        match lines::n_alpha(&a, d, budget(n_max)?).map_err(fail)? {
            NAlpha::Value(v) => put(out, v),
            NAlpha::Linear => {
                set_error("no closed form for this angle");
                Err(EqStatus::Unbounded)
            }
        }
    })
}
