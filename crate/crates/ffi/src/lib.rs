//! C interface to `cubrig`.
//!
//! Every function returns a [`CubrigStatus`]; results come back through out
//! pointers. On failure [`cubrig_last_error`] describes what went wrong on
//! the calling thread. Handles are opaque and released with their `_free`
//! function; strings handed out are released with [`cubrig_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubrig::builtin::Builtin;
use cubrig::cubeset::CubicalComplex;
use cubrig::pathcat::leadsto_closure;
use cubrig::posets::{bruhat, nerve, FinitePoset};
use cubrig::sset::TruncSSet;
use cubrig::verify::{partition_posets, run_suite};
use cubrig::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubrigStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotInBoxCategory = 4,
    GuardExceeded = 5,
    LoopDetected = 6,
    Overflow = 7,
    Panic = 8,
}

/// A finite cubical set.
pub struct CubrigComplex {
    complex: CubicalComplex,
    builtin: Option<Builtin>,
}

/// A finite poset.
pub struct CubrigPoset(FinitePoset);

/// A truncated simplicial set.
pub struct CubrigSSet(TruncSSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CubrigStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotInBoxCategory(_) => CubrigStatus::NotInBoxCategory,
            Error::GuardExceeded { .. } => CubrigStatus::GuardExceeded,
            Error::LoopDetected(_) => CubrigStatus::LoopDetected,
            Error::Overflow(_) => CubrigStatus::Overflow,
            _ => CubrigStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(CubrigStatus::InvalidInput, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn guarded(f: impl FnOnce() -> Res<()>) -> CubrigStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CubrigStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CubrigStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Failure(CubrigStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CubrigStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(CubrigStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return Err(Failure(CubrigStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn top_arg(top: i64) -> Option<usize> {
    (top >= 0).then_some(top as usize)
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cubrig_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cubrig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a named complex such as `cube:3`, `open-box:3:1:0` or `k`.
#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_build(spec: *const c_char, out: *mut *mut CubrigComplex) -> CubrigStatus {
    guarded(|| {
        let b: Builtin = text(spec, "spec")?.parse()?;
        let complex = b.complex()?;
        put(out, Box::into_raw(Box::new(CubrigComplex { complex, builtin: Some(b) })))
    })
}

/// Reads a complex from the JSON produced by [`cubrig_complex_to_json`].
#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_from_json(json: *const c_char, out: *mut *mut CubrigComplex) -> CubrigStatus {
    guarded(|| {
        let v: serde_json::Value = serde_json::from_str(text(json, "json")?)?;
        let complex = CubicalComplex::from_json(&v)?;
        put(out, Box::into_raw(Box::new(CubrigComplex { complex, builtin: None })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_free(c: *mut CubrigComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_dim(c: *const CubrigComplex, out: *mut usize) -> CubrigStatus {
    guarded(|| put(out, deref(c, "complex")?.complex.dim()))
}

/// Number of nondegenerate cells of dimension `k`.
#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_cell_count(c: *const CubrigComplex, k: usize, out: *mut usize) -> CubrigStatus {
    guarded(|| put(out, deref(c, "complex")?.complex.count(k)))
}

/// Checks the cubical identities. `out` is true when none fail.
#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_validate(c: *const CubrigComplex, out: *mut bool) -> CubrigStatus {
    guarded(|| put(out, deref(c, "complex")?.complex.validate().is_ok()))
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_to_json(c: *const CubrigComplex, out: *mut *mut c_char) -> CubrigStatus {
    guarded(|| {
        let v = deref(c, "complex")?.complex.to_json();
        put(out, owned_string(serde_json::to_string(&v)?))
    })
}

/// Number of paths between two vertices, given by name (or `alpha`/`omega`
/// for builtins with cube coordinates).
#[no_mangle]
pub unsafe extern "C" fn cubrig_complex_path_count(
    c: *const CubrigComplex,
    from: *const c_char,
    to: *const c_char,
    out: *mut usize,
) -> CubrigStatus {
    guarded(|| {
        let h = deref(c, "complex")?;
        let find = |name: &str| -> Res<usize> {
            let name = match &h.builtin {
                Some(b) => b.vertex(name).map(|v| v.to_string()).unwrap_or_else(|_| name.to_string()),
                None => name.to_string(),
            };
            h.complex
                .vertex_id(&name)
                .ok_or_else(|| Failure(CubrigStatus::InvalidInput, format!("no vertex named {name:?}")))
        };
        let (a, b) = (find(text(from, "from")?)?, find(text(to, "to")?)?);
        put(out, leadsto_closure(&h.complex, a, b)?.len())
    })
}

/// The weak Bruhat order on permutations of `{1..n}`.
#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_bruhat(n: usize, out: *mut *mut CubrigPoset) -> CubrigStatus {
    guarded(|| {
        let set: Vec<u8> = (1..=n.min(u8::MAX as usize) as u8).collect();
        let (p, _) = bruhat(&set)?;
        put(out, Box::into_raw(Box::new(CubrigPoset(p))))
    })
}

/// Ordered partitions of `{1..n+1}`: `variant` 0 for all of them, 1 without
/// the one-block partition, 2 also without `({1..n};{n+1})`.
#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_partitions(n: usize, variant: u32, out: *mut *mut CubrigPoset) -> CubrigStatus {
    guarded(|| {
        let (p, b, o) = partition_posets(n)?;
        let pick = match variant {
            0 => p,
            1 => b,
            2 => o,
            _ => return Err(Failure(CubrigStatus::InvalidInput, format!("variant {variant} is not 0, 1 or 2"))),
        };
        put(out, Box::into_raw(Box::new(CubrigPoset(pick))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_free(p: *mut CubrigPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_len(p: *const CubrigPoset, out: *mut usize) -> CubrigStatus {
    guarded(|| put(out, deref(p, "poset")?.0.len()))
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_leq(p: *const CubrigPoset, x: usize, y: usize, out: *mut bool) -> CubrigStatus {
    guarded(|| {
        let p = &deref(p, "poset")?.0;
        if x >= p.len() || y >= p.len() {
            return Err(Failure(CubrigStatus::InvalidInput, format!("elements {x}, {y} of a poset of size {}", p.len())));
        }
        put(out, p.leq(x, y))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_to_dot(p: *const CubrigPoset, out: *mut *mut c_char) -> CubrigStatus {
    guarded(|| put(out, owned_string(deref(p, "poset")?.0.to_dot("poset"))))
}

/// Nerve truncated at `top`, or one above the longest chain when `top < 0`.
#[no_mangle]
pub unsafe extern "C" fn cubrig_poset_nerve(p: *const CubrigPoset, top: i64, out: *mut *mut CubrigSSet) -> CubrigStatus {
    guarded(|| {
        let n = nerve(&deref(p, "poset")?.0, top_arg(top))?;
        put(out, Box::into_raw(Box::new(CubrigSSet(n.sset))))
    })
}

/// Rigidification mapping space of a named complex between two vertices.
#[no_mangle]
pub unsafe extern "C" fn cubrig_mapping_space(
    spec: *const c_char,
    from: *const c_char,
    to: *const c_char,
    top: i64,
    out: *mut *mut CubrigSSet,
) -> CubrigStatus {
    guarded(|| {
        let b: Builtin = text(spec, "spec")?.parse()?;
        let m = b.mapping_space(text(from, "from")?, text(to, "to")?, top_arg(top))?;
        put(out, Box::into_raw(Box::new(CubrigSSet(m.sset))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_from_json(json: *const c_char, out: *mut *mut CubrigSSet) -> CubrigStatus {
    guarded(|| {
        let v: serde_json::Value = serde_json::from_str(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(CubrigSSet(TruncSSet::from_json(&v)?))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_free(s: *mut CubrigSSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_top_dim(s: *const CubrigSSet, out: *mut usize) -> CubrigStatus {
    guarded(|| put(out, deref(s, "sset")?.0.top_dim()))
}

/// Number of nondegenerate `k`-simplices.
#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_count(s: *const CubrigSSet, k: usize, out: *mut usize) -> CubrigStatus {
    guarded(|| {
        let s = &deref(s, "sset")?.0;
        put(out, if k <= s.top_dim() { s.count(k) } else { 0 })
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_euler(s: *const CubrigSSet, out: *mut i64) -> CubrigStatus {
    guarded(|| put(out, deref(s, "sset")?.0.euler_characteristic()))
}

/// True when the homology is that of a point through the truncation.
#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_is_point(s: *const CubrigSSet, out: *mut bool) -> CubrigStatus {
    guarded(|| put(out, deref(s, "sset")?.0.homology()?.is_point()))
}

/// Integer homology as JSON.
#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_homology_json(s: *const CubrigSSet, out: *mut *mut c_char) -> CubrigStatus {
    guarded(|| {
        let h = deref(s, "sset")?.0.homology()?;
        put(out, owned_string(serde_json::to_string(&h)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubrig_sset_to_json(s: *const CubrigSSet, out: *mut *mut c_char) -> CubrigStatus {
    guarded(|| put(out, owned_string(serde_json::to_string(&deref(s, "sset")?.0.to_json())?)))
}

/// Runs a verification suite (or `all`). `passed` reports the verdict and
/// `report`, when not null, receives the JSON report.
#[no_mangle]
pub unsafe extern "C" fn cubrig_verify(
    suite: *const c_char,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> CubrigStatus {
    guarded(|| {
        let reports = run_suite(text(suite, "suite")?, seed)?;
        put(passed, reports.iter().all(|r| r.passed()))?;
        if !report.is_null() {
            report.write(owned_string(serde_json::to_string(&reports)?));
        }
        Ok(())
    })
}
