//! C ABI for the statesum library.
//!
//! Handles are opaque pointers created and freed by this library. Every
//! fallible call returns a [`StatesumStatus`]; on failure the thread-local
//! message retrieved by [`statesum_last_error`] describes what went wrong.
//! Strings returned through `char**` out-parameters are UTF-8, NUL
//! terminated, and owned by the caller, who must release them with
//! [`statesum_string_free`].
//!
//! The status values mirror the CLI exit-code contract: 2 for unusable
//! input, 3 for a resource cap, 4 for arithmetic failures (including a
//! cross-method mismatch), plus FFI-specific codes for null arguments and
//! internal panics.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use statesum::heegaard::{
    builtin_planar, derive_code, HeegaardCode, PlanarHeegaardDiagram,
};
use statesum::hopf::{builtin_hopf, HopfAlgebra, HopfData};
use statesum::kuperberg::invariant;
use statesum::planar::planar_invariant;
use statesum::scalars::BaseRing;
use statesum::Error;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum StatesumStatus {
    /// Success.
    StatesumOk = 0,
    /// Input could not be parsed or failed validation.
    StatesumErrInput = 2,
    /// A resource limit (tensor entries, enumeration size) was exceeded.
    StatesumErrResource = 3,
    /// Arithmetic failure, or disagreement between evaluation methods.
    StatesumErrMath = 4,
    /// A required pointer argument was null or not valid UTF-8.
    StatesumErrNullArgument = 5,
    /// An internal invariant failed; the library state is still sound.
    StatesumErrInternal = 6,
}

/// An immutable Hopf algebra handle.
pub struct StatesumAlgebra(HopfAlgebra);

enum DiagramKind {
    Code(HeegaardCode),
    Planar(PlanarHeegaardDiagram),
}

/// An immutable Heegaard diagram handle (crossing code or planar form).
pub struct StatesumDiagram(DiagramKind);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(error: &Error) -> StatesumStatus {
    match error.exit_code() {
        3 => StatesumStatus::StatesumErrResource,
        4 => StatesumStatus::StatesumErrMath,
        _ => StatesumStatus::StatesumErrInput,
    }
}

/// Runs a fallible body with panic containment and error capture.
fn guarded(body: impl FnOnce() -> Result<(), (StatesumStatus, String)>) -> StatesumStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            StatesumStatus::StatesumOk
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            StatesumStatus::StatesumErrInternal
        }
    }
}

fn lib_err(error: Error) -> (StatesumStatus, String) {
    (status_of(&error), error.to_string())
}

fn null_err(what: &str) -> (StatesumStatus, String) {
    (
        StatesumStatus::StatesumErrNullArgument,
        format!("{what} must not be null"),
    )
}

/// Reads a required C string argument.
///
/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn read_str(ptr: *const c_char, what: &str) -> Result<String, (StatesumStatus, String)> {
    if ptr.is_null() {
        return Err(null_err(what));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map(str::to_owned)
        .map_err(|_| {
            (
                StatesumStatus::StatesumErrNullArgument,
                format!("{what} is not valid UTF-8"),
            )
        })
}

fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (StatesumStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

fn write_string(
    out: *mut *mut c_char,
    value: String,
) -> Result<(), (StatesumStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    let c = CString::new(value.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Returns the message for the most recent failure on this thread. The
/// pointer stays valid until the next statesum call on the same thread;
/// do not free it. Empty string when the last call succeeded.
#[no_mangle]
pub extern "C" fn statesum_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn statesum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned through a `char**` out-parameter.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn statesum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Creates a built-in Hopf algebra: `ZmodGroupAlgebra(m)`, `S3GroupAlgebra`,
/// `D4GroupAlgebra`, `Q8GroupAlgebra`, or `dual(...)` of these, over ring
/// `"Q"` or `"F<p>"`.
///
/// # Safety
/// `name` and `ring` must be NUL-terminated strings; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn statesum_algebra_builtin(
    name: *const c_char,
    ring: *const c_char,
    out: *mut *mut StatesumAlgebra,
) -> StatesumStatus {
    guarded(|| {
        let name = unsafe { read_str(name, "name") }?;
        let ring = unsafe { read_str(ring, "ring") }?;
        let ring = BaseRing::parse(&ring).map_err(lib_err)?;
        let algebra = builtin_hopf(&name, ring).map_err(lib_err)?;
        write_out(out, StatesumAlgebra(algebra))
    })
}

/// Creates a Hopf algebra from its JSON description (structure constants,
/// unit, counit, antipode); the data is validated before use.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn statesum_algebra_from_json(
    json: *const c_char,
    out: *mut *mut StatesumAlgebra,
) -> StatesumStatus {
    guarded(|| {
        let json = unsafe { read_str(json, "json") }?;
        let data = HopfData::from_json(&json).map_err(lib_err)?;
        let algebra = HopfAlgebra::new(data).map_err(lib_err)?;
        write_out(out, StatesumAlgebra(algebra))
    })
}

/// Writes the algebra's display name to `out`.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn statesum_algebra_name(
    algebra: *const StatesumAlgebra,
    out: *mut *mut c_char,
) -> StatesumStatus {
    guarded(|| {
        let algebra = unsafe { algebra.as_ref() }.ok_or_else(|| null_err("algebra"))?;
        write_string(out, algebra.0.name().to_string())
    })
}

/// Runs the Hopf axiom checks on the algebra, reporting counts.
///
/// # Safety
/// `algebra` must be a live handle; `passed` and `failed` must be valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn statesum_algebra_check(
    algebra: *const StatesumAlgebra,
    passed: *mut usize,
    failed: *mut usize,
) -> StatesumStatus {
    guarded(|| {
        let algebra = unsafe { algebra.as_ref() }.ok_or_else(|| null_err("algebra"))?;
        if passed.is_null() || failed.is_null() {
            return Err(null_err("passed/failed"));
        }
        let report = algebra.0.check_axioms();
        let fail_count = report.failures().len();
        unsafe {
            *passed = report.checks.len() - fail_count;
            *failed = fail_count;
        }
        Ok(())
    })
}

/// Frees an algebra handle; null is ignored.
///
/// # Safety
/// `algebra` must be null or a live handle, and must not be used again.
#[no_mangle]
pub unsafe extern "C" fn statesum_algebra_free(algebra: *mut StatesumAlgebra) {
    if !algebra.is_null() {
        drop(unsafe { Box::from_raw(algebra) });
    }
}

/// Creates a built-in diagram by catalog name (`s3_genus0`, `s3_genus1`,
/// `s2xs1`, `lens(p,q)`, `l31_connsum_s2xs1`, `stab(...)`), in planar form
/// so that every evaluation method is available.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn statesum_diagram_builtin(
    name: *const c_char,
    out: *mut *mut StatesumDiagram,
) -> StatesumStatus {
    guarded(|| {
        let name = unsafe { read_str(name, "name") }?;
        let phd = builtin_planar(&name).map_err(lib_err)?;
        write_out(out, StatesumDiagram(DiagramKind::Planar(phd)))
    })
}

/// Creates a diagram from JSON: a planar form (object with a `boxes` key)
/// or a bare crossing code.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn statesum_diagram_from_json(
    json: *const c_char,
    out: *mut *mut StatesumDiagram,
) -> StatesumStatus {
    guarded(|| {
        let json = unsafe { read_str(json, "json") }?;
        let value: serde_json::Value = serde_json::from_str(&json).map_err(|e| {
            lib_err(Error::Parse(format!("bad diagram JSON: {e}")))
        })?;
        let kind = match value.as_object().map(|o| o.contains_key("boxes")) {
            Some(true) => {
                DiagramKind::Planar(PlanarHeegaardDiagram::from_json_str(&json).map_err(lib_err)?)
            }
            Some(false) => DiagramKind::Code(HeegaardCode::from_json_str(&json).map_err(lib_err)?),
            None => {
                return Err(lib_err(Error::Parse(
                    "diagram JSON must be an object".into(),
                )))
            }
        };
        write_out(out, StatesumDiagram(kind))
    })
}

/// Frees a diagram handle; null is ignored.
///
/// # Safety
/// `diagram` must be null or a live handle, and must not be used again.
#[no_mangle]
pub unsafe extern "C" fn statesum_diagram_free(diagram: *mut StatesumDiagram) {
    if !diagram.is_null() {
        drop(unsafe { Box::from_raw(diagram) });
    }
}

fn evaluate(
    diagram: &StatesumDiagram,
    algebra: &HopfAlgebra,
    method: &str,
) -> Result<String, (StatesumStatus, String)> {
    let planar = |what: &str| match &diagram.0 {
        DiagramKind::Planar(phd) => Ok(phd),
        DiagramKind::Code(_) => Err(lib_err(Error::Invalid(format!(
            "{what} needs a planar diagram, but the handle holds a bare crossing code"
        )))),
    };
    match method {
        "kuperberg" => {
            let code = match &diagram.0 {
                DiagramKind::Code(code) => code.clone(),
                DiagramKind::Planar(phd) => derive_code(phd).map_err(lib_err)?,
            };
            Ok(invariant(&code, algebra).map_err(lib_err)?.value.to_exact_string())
        }
        "planar" => {
            let value = planar_invariant(planar("the planar method")?, algebra).map_err(lib_err)?;
            Ok(value.to_exact_string())
        }
        "both" => {
            let phd = planar("the cross-check")?;
            let network = planar_invariant(phd, algebra).map_err(lib_err)?;
            let code = derive_code(phd).map_err(lib_err)?;
            let state_sum = invariant(&code, algebra).map_err(lib_err)?.value;
            if state_sum != network {
                return Err((
                    StatesumStatus::StatesumErrMath,
                    format!(
                        "state sum {} and network value {} disagree",
                        state_sum.to_exact_string(),
                        network.to_exact_string()
                    ),
                ));
            }
            Ok(state_sum.to_exact_string())
        }
        other => Err(lib_err(Error::Parse(format!(
            "unknown method {other:?}; expected kuperberg, planar, or both"
        )))),
    }
}

/// Computes the invariant of `diagram` over `algebra` and writes it to
/// `out` as an exact field-element string. `method` is `"kuperberg"`,
/// `"planar"`, or `"both"` (which cross-checks the two evaluations and
/// fails with a math status on disagreement).
///
/// # Safety
/// `diagram` and `algebra` must be live handles, `method` a NUL-terminated
/// string, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn statesum_invariant(
    diagram: *const StatesumDiagram,
    algebra: *const StatesumAlgebra,
    method: *const c_char,
    out: *mut *mut c_char,
) -> StatesumStatus {
    guarded(|| {
        let diagram = unsafe { diagram.as_ref() }.ok_or_else(|| null_err("diagram"))?;
        let algebra = unsafe { algebra.as_ref() }.ok_or_else(|| null_err("algebra"))?;
        let method = unsafe { read_str(method, "method") }?;
        let value = evaluate(diagram, &algebra.0, &method)?;
        write_string(out, value)
    })
}
