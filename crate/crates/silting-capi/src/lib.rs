//! C ABI for the silting crate.
//!
//! A workspace wraps one parsed bundle document (algebra plus named modules
//! and presentations). Commands return UTF-8 JSON strings allocated by this
//! library; release them with `silt_string_free`. Every function returns a
//! status code; on failure `silt_last_error` yields a message valid on the
//! calling thread until the next API call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use silting::error::Error;
use silting::io::{parse_field_flag, AnySession, OutputFormat};
use silting::tilting::Caps;

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiltStatus {
    Ok = 0,
    /// Mathematical failure (not rigid, no silting completion, ...).
    Math = 1,
    /// Malformed input, unknown handle, bad UTF-8.
    Input = 2,
    /// A configured cap was exceeded; graph output is still produced.
    CapExceeded = 3,
    /// A null pointer where one is not allowed.
    NullArgument = 4,
    /// An internal invariant failed.
    Internal = 5,
}

/// Opaque workspace handle.
pub struct SiltWorkspace {
    session: AnySession,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> SiltStatus {
    match err.exit_code() {
        1 => SiltStatus::Math,
        2 => SiltStatus::Input,
        3 => SiltStatus::CapExceeded,
        _ => SiltStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> SiltStatus) -> SiltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SiltStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SiltStatus> {
    if p.is_null() {
        set_error(&format!("{what} is null"));
        return Err(SiltStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        SiltStatus::Input
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> SiltStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SiltStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            SiltStatus::Internal
        }
    }
}

/// Last error message for this thread; empty when no error occurred.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn silt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by a `silt_*` function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn silt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a bundle document into a workspace.
///
/// `field_override` may be null, or `"p"`, `"Q"`, or a prime written in
/// decimal. Caps of 0 select the defaults.
///
/// # Safety
/// `bundle_json` must point to a NUL-terminated string; `out` must be a
/// valid pointer to receive the workspace.
#[no_mangle]
pub unsafe extern "C" fn silt_workspace_new(
    bundle_json: *const c_char,
    field_override: *const c_char,
    seed: u64,
    cap_vertices: u64,
    cap_pool: u64,
    out: *mut *mut SiltWorkspace,
) -> SiltStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return SiltStatus::NullArgument;
        }
        let json = match read_str(bundle_json, "bundle_json") {
            Ok(s) => s,
            Err(st) => return st,
        };
        let field = if field_override.is_null() {
            None
        } else {
            match read_str(field_override, "field_override") {
                Ok(s) => match parse_field_flag(s) {
                    Ok(d) => Some(d),
                    Err(e) => {
                        set_error(&e.to_string());
                        return status_of(&e);
                    }
                },
                Err(st) => return st,
            }
        };
        let defaults = Caps::default();
        let caps = Caps {
            max_graph_vertices: if cap_vertices == 0 {
                defaults.max_graph_vertices
            } else {
                cap_vertices as usize
            },
            max_pool: if cap_pool == 0 {
                defaults.max_pool
            } else {
                cap_pool as usize
            },
        };
        match AnySession::from_json(json, field, caps, seed) {
            Ok(session) => {
                *out = Box::into_raw(Box::new(SiltWorkspace { session }));
                SiltStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Destroy a workspace. Null is a no-op.
///
/// # Safety
/// `ws` must have been returned by `silt_workspace_new` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn silt_workspace_free(ws: *mut SiltWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

unsafe fn workspace<'a>(ws: *const SiltWorkspace) -> Result<&'a SiltWorkspace, SiltStatus> {
    if ws.is_null() {
        set_error("workspace is null");
        Err(SiltStatus::NullArgument)
    } else {
        Ok(&*ws)
    }
}

fn run_string(r: Result<String, Error>, out: *mut *mut c_char) -> SiltStatus {
    if out.is_null() {
        set_error("out is null");
        return SiltStatus::NullArgument;
    }
    match r {
        Ok(s) => hand_out(s, out),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Dimension of the algebra over its field.
///
/// # Safety
/// `ws` is a live workspace; `out` receives the dimension.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_dim(ws: *const SiltWorkspace, out: *mut u64) -> SiltStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(w) => w,
            Err(st) => return st,
        };
        if out.is_null() {
            set_error("out is null");
            return SiltStatus::NullArgument;
        }
        let dim = match &ws.session {
            AnySession::Prime(s) => s.algebra().dim(),
            AnySession::Rational(s) => s.algebra().dim(),
        };
        *out = dim as u64;
        SiltStatus::Ok
    })
}

/// Algebra summary (dimension, basis, Hom-projective table) as JSON.
///
/// # Safety
/// `ws` is a live workspace; `out` receives a string to free with
/// `silt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn silt_algebra_info_json(
    ws: *const SiltWorkspace,
    out: *mut *mut c_char,
) -> SiltStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(w) => w,
            Err(st) => return st,
        };
        run_string(ws.session.cmd_algebra_info(OutputFormat::Json), out)
    })
}

/// dim E(f1, f2) for two presentation handles.
///
/// # Safety
/// `ws` live, `f1`/`f2` NUL-terminated handles, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn silt_e_dim(
    ws: *const SiltWorkspace,
    f1: *const c_char,
    f2: *const c_char,
    out: *mut i64,
) -> SiltStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(w) => w,
            Err(st) => return st,
        };
        let (a, b) = match (read_str(f1, "f1"), read_str(f2, "f2")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(st), _) | (_, Err(st)) => return st,
        };
        if out.is_null() {
            set_error("out is null");
            return SiltStatus::NullArgument;
        }
        match ws.session.cmd_e_dim(a, b, OutputFormat::Json) {
            Ok((_, d)) => {
                *out = d as i64;
                SiltStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Rigidity of a presentation handle: writes 1 or 0.
///
/// # Safety
/// `ws` live, `pres` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn silt_is_rigid(
    ws: *const SiltWorkspace,
    pres: *const c_char,
    out: *mut i32,
) -> SiltStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(w) => w,
            Err(st) => return st,
        };
        let name = match read_str(pres, "pres") {
            Ok(s) => s,
            Err(st) => return st,
        };
        if out.is_null() {
            set_error("out is null");
            return SiltStatus::NullArgument;
        }
        match ws.session.cmd_rigid(name, OutputFormat::Json) {
            Ok((_, rigid)) => {
                *out = rigid as i32;
                SiltStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

macro_rules! string_command {
    ($(#[$doc:meta])* $name:ident, $method:ident) => {
        $(#[$doc])*
        ///
        /// # Safety
        /// `ws` is a live workspace, the handle is NUL-terminated, and `out`
        /// receives a string to free with `silt_string_free`.
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            ws: *const SiltWorkspace,
            handle: *const c_char,
            out: *mut *mut c_char,
        ) -> SiltStatus {
            guard(|| {
                let ws = match workspace(ws) {
                    Ok(w) => w,
                    Err(st) => return st,
                };
                let name = match read_str(handle, "handle") {
                    Ok(s) => s,
                    Err(st) => return st,
                };
                run_string(ws.session.$method(name, OutputFormat::Json), out)
            })
        }
    };
}

string_command!(
    /// Minimal projective presentation of a module handle, as JSON.
    silt_min_pres_json,
    cmd_min_pres
);
string_command!(
    /// Auslander-Reiten translate of a module handle, as a module JSON file.
    silt_tau_json,
    cmd_tau
);
string_command!(
    /// Complete a tau-rigid module handle to a tau-tilting module.
    silt_complete_module_json,
    cmd_complete_module
);
string_command!(
    /// Complete a rigid presentation handle to a silting object.
    silt_complete_pres_json,
    cmd_complete_pres
);
string_command!(
    /// Krull-Schmidt decomposition of a presentation handle.
    silt_decompose_json,
    cmd_decompose
);

/// Mutate a silting presentation handle at one summand; returns the new
/// object with its exchange data as JSON.
///
/// # Safety
/// `ws` live, `pres` NUL-terminated, `out` receives a string to free with
/// `silt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn silt_mutate_json(
    ws: *const SiltWorkspace,
    pres: *const c_char,
    summand: u32,
    out: *mut *mut c_char,
) -> SiltStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(w) => w,
            Err(st) => return st,
        };
        let name = match read_str(pres, "pres") {
            Ok(s) => s,
            Err(st) => return st,
        };
        run_string(
            ws.session
                .cmd_mutate(name, summand as usize, OutputFormat::Json),
            out,
        )
    })
}

unsafe fn graph_common(
    ws: *const SiltWorkspace,
    format: OutputFormat,
    out: *mut *mut c_char,
) -> SiltStatus {
    let ws = match workspace(ws) {
        Ok(w) => w,
        Err(st) => return st,
    };
    if out.is_null() {
        set_error("out is null");
        return SiltStatus::NullArgument;
    }
    match ws.session.cmd_graph(format) {
        Ok((report, complete)) => {
            let st = hand_out(report, out);
            if st != SiltStatus::Ok {
                return st;
            }
            if complete {
                SiltStatus::Ok
            } else {
                set_error("vertex cap exceeded; the graph is partial");
                SiltStatus::CapExceeded
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Exchange graph as JSON. Returns CapExceeded (with partial output) when
/// the vertex cap fired.
///
/// # Safety
/// `ws` live, `out` receives a string to free with `silt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn silt_graph_json(
    ws: *const SiltWorkspace,
    out: *mut *mut c_char,
) -> SiltStatus {
    guard(|| graph_common(ws, OutputFormat::Json, out))
}

/// Exchange graph in DOT format; same cap semantics as `silt_graph_json`.
///
/// # Safety
/// `ws` live, `out` receives a string to free with `silt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn silt_graph_dot(
    ws: *const SiltWorkspace,
    out: *mut *mut c_char,
) -> SiltStatus {
    guard(|| graph_common(ws, OutputFormat::Dot, out))
}
