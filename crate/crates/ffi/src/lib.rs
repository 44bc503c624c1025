//! C ABI over the autbound library.
//!
//! Registries and groups are opaque handles owned by the caller and released
//! with their `_free` function. Every entry point returns an
//! [`AutboundStatus`]; on anything other than `AUTBOUND_STATUS_OK` the message and
//! error name are kept per thread and read with [`autbound_last_error`] and
//! [`autbound_last_error_name`]. Strings handed out by the library are
//! released with [`autbound_string_free`]. Rationals cross the boundary as
//! `p/q` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use autbound::actions::{find_generating_vector, genus_of_action};
use autbound::bounds::{solve_b, Attainability, BoundsError, ClassContext, Extra, Parity, Registry};
use autbound::classify::classify;
use autbound::config::Caps;
use autbound::group::construct_with_cap;
use autbound::signature::rational_string;
use autbound::{abelianization, FiniteGroup, GroupSpec, Signature};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutboundStatus {
    Ok = 0,
    /// The computation finished with nothing to report: no applicable rule,
    /// no witness recipe, no generating vector, no modular root.
    None = 1,
    /// Null pointer, invalid UTF-8 or an out-of-range option.
    InvalidArgument = 2,
    /// A signature or group spec did not parse.
    Parse = 3,
    /// The registry rejected the query or failed to load.
    Bounds = 4,
    /// Group construction or a search hit a cap.
    Group = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutboundAttainability {
    Yes = 0,
    No = 1,
    NecessaryConditionsHold = 2,
    Unknown = 3,
}

impl From<Attainability> for AutboundAttainability {
    fn from(a: Attainability) -> Self {
        match a {
            Attainability::Yes => AutboundAttainability::Yes,
            Attainability::No => AutboundAttainability::No,
            Attainability::NecessaryConditionsHold => AutboundAttainability::NecessaryConditionsHold,
            Attainability::Unknown => AutboundAttainability::Unknown,
        }
    }
}

/// A class and context at a genus. Zero means "not set" for the prime
/// fields; `pq_p`/`pq_q` are only read when `pq` is true, and zero there
/// leaves that prime open.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AutboundQuery {
    pub class_name: *const c_char,
    pub genus: u64,
    pub odd: bool,
    pub min_prime: u64,
    pub pq: bool,
    pub pq_p: u64,
    pub pq_q: u64,
    pub p_group: u64,
    pub not_divisible_by_8: bool,
}

/// Opaque rule registry.
pub struct AutboundRegistry {
    inner: Registry,
}

/// Opaque finite group.
pub struct AutboundGroup {
    inner: FiniteGroup,
}

struct Failure {
    status: AutboundStatus,
    name: String,
    message: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(CString, CString)>> = const { RefCell::new(None) };
}

fn c_string(s: impl Into<Vec<u8>>) -> CString {
    let mut bytes = s.into();
    bytes.retain(|&b| b != 0);
    CString::new(bytes).expect("interior nul bytes removed")
}

fn set_last_error(name: &str, message: &str) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some((c_string(name), c_string(message))));
}

fn fail(status: AutboundStatus, name: &str, message: impl Into<String>) -> Failure {
    Failure {
        status,
        name: name.to_string(),
        message: message.into(),
    }
}

fn variant_name<E: Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    let end = dbg
        .find(|c: char| !(c.is_alphanumeric() || c == '_'))
        .unwrap_or(dbg.len());
    dbg[..end].to_string()
}

fn from_error<E: Debug + std::fmt::Display>(status: AutboundStatus) -> impl Fn(E) -> Failure {
    move |e| fail(status, &variant_name(&e), e.to_string())
}

fn from_bounds(e: BoundsError) -> Failure {
    let status = match e {
        BoundsError::NoRule { .. } | BoundsError::NoRecipe(_) => AutboundStatus::None,
        _ => AutboundStatus::Bounds,
    };
    fail(status, e.name(), e.to_string())
}

/// Run `f`, record any failure and convert panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AutboundStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AutboundStatus::Ok
        }
        Ok(Err(f)) => {
            set_last_error(&f.name, &f.message);
            f.status
        }
        Err(_) => {
            set_last_error("Panic", "internal error");
            AutboundStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(
            AutboundStatus::InvalidArgument,
            "NullPointer",
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            AutboundStatus::InvalidArgument,
            "InvalidUtf8",
            format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(
            AutboundStatus::InvalidArgument,
            "NullPointer",
            format!("{what} is null"),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: impl Into<Vec<u8>>, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(
            AutboundStatus::InvalidArgument,
            "NullPointer",
            format!("{what} is null"),
        ));
    }
    out.write(c_string(s).into_raw());
    Ok(())
}

unsafe fn registry<'a>(r: *const AutboundRegistry) -> Result<&'a Registry, Failure> {
    r.as_ref()
        .map(|r| &r.inner)
        .ok_or_else(|| fail(AutboundStatus::InvalidArgument, "NullPointer", "registry is null"))
}

unsafe fn group<'a>(g: *const AutboundGroup) -> Result<&'a FiniteGroup, Failure> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| fail(AutboundStatus::InvalidArgument, "NullPointer", "group is null"))
}

unsafe fn query<'a>(q: *const AutboundQuery) -> Result<(&'a str, ClassContext, u64), Failure> {
    let q = q
        .as_ref()
        .ok_or_else(|| fail(AutboundStatus::InvalidArgument, "NullPointer", "query is null"))?;
    let class = read_str(q.class_name, "class_name")?;
    let nz = |x: u64| (x != 0).then_some(x);
    if q.p_group != 0 && q.not_divisible_by_8 {
        return Err(fail(
            AutboundStatus::InvalidArgument,
            "InvalidContext",
            "p_group and not_divisible_by_8 are exclusive",
        ));
    }
    let ctx = ClassContext {
        parity: if q.odd { Parity::Odd } else { Parity::Any },
        min_prime: nz(q.min_prime),
        pq: q.pq.then(|| (nz(q.pq_p), nz(q.pq_q))),
        extra: match (nz(q.p_group), q.not_divisible_by_8) {
            (Some(p), _) => Extra::PGroup(p),
            (None, true) => Extra::NotDivisibleBy8,
            (None, false) => Extra::None,
        },
    };
    Ok((class, ctx, q.genus))
}

fn parse_signature(s: &str) -> Result<Signature, Failure> {
    Signature::parse_unrestricted(s).map_err(from_error(AutboundStatus::Parse))
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn autbound_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |(_, m)| m.as_ptr()))
}

/// Variant name of the last failure on this thread, or null.
#[no_mangle]
pub extern "C" fn autbound_last_error_name() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |(n, _)| n.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn autbound_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn autbound_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The registry compiled into the library.
#[no_mangle]
pub extern "C" fn autbound_registry_builtin() -> *mut AutboundRegistry {
    Box::into_raw(Box::new(AutboundRegistry {
        inner: Registry::builtin(),
    }))
}

/// Load a registry file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn autbound_registry_load(
    path: *const c_char,
    out: *mut *mut AutboundRegistry,
) -> AutboundStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let reg = Registry::load(Path::new(path)).map_err(from_bounds)?;
        write_out(out, Box::into_raw(Box::new(AutboundRegistry { inner: reg })), "out")
    })
}

/// # Safety
/// `r` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn autbound_registry_free(r: *mut AutboundRegistry) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Exact upper bound on `|G|`. `out_value` receives a `p/q` string;
/// `out_rule` (may be null) the id of the governing rule.
///
/// # Safety
/// Pointers must be valid; strings written are freed with [`autbound_string_free`].
#[no_mangle]
pub unsafe extern "C" fn autbound_bound(
    r: *const AutboundRegistry,
    q: *const AutboundQuery,
    out_value: *mut *mut c_char,
    out_rule: *mut *mut c_char,
) -> AutboundStatus {
    guard(|| {
        let reg = registry(r)?;
        let (class, ctx, g) = query(q)?;
        let a = reg.bound(class, &ctx, g).map_err(from_bounds)?;
        write_string(out_value, rational_string(&a.value), "out_value")?;
        if !out_rule.is_null() {
            write_string(out_rule, a.rule.id, "out_rule")?;
        }
        Ok(())
    })
}

/// Whether the bound is attained at the query genus.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn autbound_attainable(
    r: *const AutboundRegistry,
    q: *const AutboundQuery,
    out: *mut AutboundAttainability,
) -> AutboundStatus {
    guard(|| {
        let reg = registry(r)?;
        let (class, ctx, g) = query(q)?;
        let a = reg.attainable(class, &ctx, g).map_err(from_bounds)?;
        write_out(out, a.status.into(), "out")
    })
}

/// A witness group spec and its signature, both as strings.
///
/// # Safety
/// Pointers must be valid; strings written are freed with [`autbound_string_free`].
#[no_mangle]
pub unsafe extern "C" fn autbound_witness(
    r: *const AutboundRegistry,
    q: *const AutboundQuery,
    out_group: *mut *mut c_char,
    out_signature: *mut *mut c_char,
) -> AutboundStatus {
    guard(|| {
        let reg = registry(r)?;
        let (class, ctx, g) = query(q)?;
        let w = reg.witness(class, &ctx, g).map_err(from_bounds)?;
        write_string(out_group, w.group.to_string(), "out_group")?;
        write_string(out_signature, w.signature.to_string(), "out_signature")
    })
}

/// Build a group from a spec string such as `C 7 : C 3 @ 2`, under the
/// group-size cap from the environment.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn autbound_group_from_spec(spec: *const c_char, out: *mut *mut AutboundGroup) -> AutboundStatus {
    guard(|| {
        let s = read_str(spec, "spec")?;
        let spec: GroupSpec = s.parse().map_err(from_error(AutboundStatus::Parse))?;
        let g = construct_with_cap(&spec, Caps::from_env().group).map_err(from_error(AutboundStatus::Group))?;
        write_out(out, Box::into_raw(Box::new(AutboundGroup { inner: g })), "out")
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn autbound_group_free(g: *mut AutboundGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn autbound_group_order(g: *const AutboundGroup) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.order() as u64)
}

/// Whether the group lies in the named class: writes 1 (yes), 0 (no) or
/// -1 (undecided under the subgroup cap).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn autbound_group_member_of(
    g: *const AutboundGroup,
    class_name: *const c_char,
    out: *mut i32,
) -> AutboundStatus {
    guard(|| {
        let g = group(g)?;
        let class = read_str(class_name, "class_name")?;
        let profile = classify(g, Caps::from_env().subgroup);
        let d = profile
            .member_of(class)
            .map_err(from_error(AutboundStatus::InvalidArgument))?;
        let v = match d {
            autbound::classify::Decision::Yes => 1,
            autbound::classify::Decision::No => 0,
            autbound::classify::Decision::Undecided => -1,
        };
        write_out(out, v, "out")
    })
}

/// Search a generating vector of the group for a signature. On success
/// writes the genus of the action; `AUTBOUND_STATUS_NONE` when no vector exists.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn autbound_group_action_genus(
    g: *const AutboundGroup,
    signature: *const c_char,
    out_genus: *mut u64,
) -> AutboundStatus {
    guard(|| {
        let g = group(g)?;
        let sig = parse_signature(read_str(signature, "signature")?)?;
        let found = find_generating_vector(g, &sig, &Caps::from_env()).map_err(from_error(AutboundStatus::Group))?;
        if found.is_none() {
            return Err(fail(
                AutboundStatus::None,
                "NoVector",
                format!("no generating vector for {sig}"),
            ));
        }
        let genus = genus_of_action(g, &sig).map_err(from_error(AutboundStatus::Parse))?;
        write_out(out_genus, genus, "out_genus")
    })
}

/// Abelianization of a signature's Fuchsian group, e.g. `C2 x C6`.
///
/// # Safety
/// Pointers must be valid; the string written is freed with [`autbound_string_free`].
#[no_mangle]
pub unsafe extern "C" fn autbound_abelianization(signature: *const c_char, out: *mut *mut c_char) -> AutboundStatus {
    guard(|| {
        let sig = parse_signature(read_str(signature, "signature")?)?;
        write_string(out, abelianization(&sig).to_string(), "out")
    })
}

/// Least `b` in `[1, t)` with `t | 1 + b + b^2`; `AUTBOUND_STATUS_NONE` if there is none.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn autbound_solve_b(t: u64, out: *mut u64) -> AutboundStatus {
    guard(|| match solve_b(t) {
        Some(b) => write_out(out, b, "out"),
        None => Err(fail(AutboundStatus::None, "NoRoot", format!("no b with {t} | 1+b+b^2"))),
    })
}
