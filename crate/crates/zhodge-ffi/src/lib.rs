//! C ABI for the engine: opaque handle, error codes, caller-freed strings.
//! The matching header lives in include/zhodge.h.

use std::ffi::{c_char, c_int, c_uint, CStr, CString};
use std::path::PathBuf;
use std::ptr;
use zhodge::engine::Engine;
use zhodge::rat::{rat_from_str, rat_int, rat_to_string, Rat};

/// Error codes shared with the header.
pub const ZH_OK: c_int = 0;
pub const ZH_ERR_COMPUTE: c_int = 1;
pub const ZH_ERR_USAGE: c_int = 2;
pub const ZH_ERR_IO: c_int = 3;
pub const ZH_ERR_MISSING: c_int = 4;
pub const ZH_ERR_VERIFY: c_int = 5;

pub struct ZhEngine {
    inner: Engine,
    last_error: Option<CString>,
}

fn set_err(engine: &mut ZhEngine, msg: String) {
    engine.last_error = CString::new(msg).ok();
}

/// Creates an engine holding only the three-point seeds.
#[no_mangle]
pub extern "C" fn zh_engine_new(threads: c_uint) -> *mut ZhEngine {
    Box::into_raw(Box::new(ZhEngine {
        inner: Engine::new(threads.max(1) as usize),
        last_error: None,
    }))
}

/// # Safety
/// `engine` must come from `zh_engine_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_free(engine: *mut ZhEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// # Safety
/// `engine` must be a live engine pointer.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_compute(engine: *mut ZhEngine, max_insertions: c_uint) -> c_int {
    let Some(engine) = engine.as_mut() else {
        return ZH_ERR_USAGE;
    };
    if max_insertions < 3 {
        set_err(engine, "max_insertions must be at least 3".into());
        return ZH_ERR_USAGE;
    }
    match engine.inner.compute(max_insertions) {
        Ok(()) => ZH_OK,
        Err(e) => {
            set_err(engine, e.to_string());
            ZH_ERR_COMPUTE
        }
    }
}

/// Runs the verification suite. ZH_OK means every check passed.
///
/// # Safety
/// `engine` must be a live engine pointer.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_verify(engine: *mut ZhEngine) -> c_int {
    let Some(engine) = engine.as_mut() else {
        return ZH_ERR_USAGE;
    };
    let report = engine.inner.verify();
    if report.ok() {
        ZH_OK
    } else {
        set_err(engine, report.render());
        ZH_ERR_VERIFY
    }
}

/// The invariant <w^n1 wb^n2> specialized at rational t1, t2, t3 (strings of
/// the form "p/q"), as a newly allocated "p/q" string. NULL on error.
///
/// # Safety
/// `engine` must be live; the t-strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_invariant(
    engine: *mut ZhEngine,
    n1: c_uint,
    n2: c_uint,
    t1: *const c_char,
    t2: *const c_char,
    t3: *const c_char,
) -> *mut c_char {
    let Some(engine) = engine.as_mut() else {
        return ptr::null_mut();
    };
    let mut t = [rat_int(1), rat_int(1), rat_int(1)];
    for (slot, raw) in t.iter_mut().zip([t1, t2, t3]) {
        if raw.is_null() {
            continue;
        }
        let Ok(s) = CStr::from_ptr(raw).to_str() else {
            set_err(engine, "t value is not UTF-8".into());
            return ptr::null_mut();
        };
        let Some(r) = rat_from_str(s) else {
            set_err(engine, format!("bad rational {s:?}"));
            return ptr::null_mut();
        };
        *slot = r;
    }
    let Some(value) = engine.inner.inv.get_primary(n1, n2) else {
        set_err(
            engine,
            format!("<w^{n1} wb^{n2}> is not computed; call zh_engine_compute first"),
        );
        return ptr::null_mut();
    };
    let s = rat_to_string(&value.specialize(&t));
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// The Z3-Hodge integral of lam_i lam_j lam_k over A(n1,n2), as a "p/q"
/// string. NULL on error.
///
/// # Safety
/// `engine` must be a live engine pointer.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_hodge(
    engine: *mut ZhEngine,
    n1: c_uint,
    n2: c_uint,
    li: c_uint,
    lj: c_uint,
    lk: c_uint,
) -> *mut c_char {
    let Some(engine) = engine.as_mut() else {
        return ptr::null_mut();
    };
    if !zhodge::geometry::space_nonempty(n1, n2) || n1 + n2 < 3 {
        set_err(engine, format!("A({n1},{n2}) carries no integrals"));
        return ptr::null_mut();
    }
    if engine.inner.inv.get_primary(n1, n2).is_none() {
        if let Err(e) = engine.inner.compute(n1 + n2) {
            set_err(engine, e.to_string());
            return ptr::null_mut();
        }
    }
    let classes = match zhodge::assembler::hodge_from_invariant(&engine.inner.inv, n1, n2) {
        Ok(c) => c,
        Err(e) => {
            set_err(engine, e.to_string());
            return ptr::null_mut();
        }
    };
    let mut part = [li as i64, lj as i64, lk as i64];
    part.sort_unstable();
    let value = classes.get(&part).cloned().unwrap_or_else(|| Rat::from_integer(0.into()));
    CString::new(rat_to_string(&value))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Writes the cache file. Returns ZH_OK or an error code.
///
/// # Safety
/// `engine` must be live; `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_save(engine: *mut ZhEngine, path: *const c_char) -> c_int {
    let Some(engine) = engine.as_mut() else {
        return ZH_ERR_USAGE;
    };
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_err(engine, "path is not UTF-8".into());
        return ZH_ERR_USAGE;
    };
    match zhodge::cache::save(&PathBuf::from(path), &engine.inner.to_cache_file()) {
        Ok(()) => ZH_OK,
        Err(e) => {
            set_err(engine, e.to_string());
            ZH_ERR_IO
        }
    }
}

/// Loads a cache file into a fresh engine. NULL on error.
///
/// # Safety
/// `path` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_load(path: *const c_char, threads: c_uint) -> *mut ZhEngine {
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return ptr::null_mut();
    };
    let Ok(file) = zhodge::cache::load(&PathBuf::from(path)) else {
        return ptr::null_mut();
    };
    match Engine::from_cache_file(&file, threads.max(1) as usize) {
        Ok(inner) => Box::into_raw(Box::new(ZhEngine {
            inner,
            last_error: None,
        })),
        Err(_) => ptr::null_mut(),
    }
}

/// The last error message on this engine, or NULL. Owned by the engine; do
/// not free.
///
/// # Safety
/// `engine` must be a live engine pointer.
#[no_mangle]
pub unsafe extern "C" fn zh_engine_last_error(engine: *const ZhEngine) -> *const c_char {
    match engine.as_ref().and_then(|e| e.last_error.as_ref()) {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    }
}

/// Frees a string returned by zh_engine_invariant / zh_engine_hodge.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn zh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
