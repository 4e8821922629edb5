//! C ABI for the pcone library.
//!
//! Conventions: every fallible call returns a [`PconeStatus`]; outputs go
//! through out-pointers; handles are opaque and freed with their matching
//! `_free` function. Complex results (search reports) are returned as JSON
//! strings, freed with [`pcone_string_free`]. On failure a thread-local
//! message is readable via [`pcone_last_error_message`] until the next
//! failing call on the same thread.
//!
//! Dimensions follow the cone convention: `ambient_dim` is `n + 1`, vector
//! arguments for norms and gradients have length `n`, points have length
//! `ambient_dim` laid out as `(t, x_1, ..., x_n)`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use pcone::autgroup::{
    is_structural_automorphism, sampling_oracle_automorphism, LinearMap, OracleOutcome,
};
use pcone::cone::{ConePoint, ConeSpec, Membership};
use pcone::duality::{iso_search, selfdual_search};
use pcone::pnorm::{self, Exponent};
use pcone::Error;

/// Status codes shared by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PconeStatus {
    Ok = 0,
    InvalidArgument = 1,
    ZeroVector = 2,
    UnsupportedExponent = 3,
    NotTwiceDifferentiable = 4,
    DimensionMismatch = 5,
    NotPolyhedral = 6,
    Singular = 7,
    ConvergenceFailure = 8,
    NotInterior = 9,
    NotOnTargetGraph = 10,
}

/// Cone membership classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PconeMembership {
    Interior = 0,
    Boundary = 1,
    Outside = 2,
}

/// Opaque handle to a cone `K_p^{n+1}`.
pub struct PconeCone(ConeSpec);

/// Opaque handle to an invertible linear map with cached inverse.
pub struct PconeMap(LinearMap);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: PconeStatus, message: &str) -> PconeStatus {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).unwrap_or_default();
    });
    status
}

fn fail_with(err: Error) -> PconeStatus {
    let status = match &err {
        Error::ZeroVector => PconeStatus::ZeroVector,
        Error::UnsupportedExponent(_) | Error::InvalidExponent(_) => {
            PconeStatus::UnsupportedExponent
        }
        Error::NotTwiceDifferentiable => PconeStatus::NotTwiceDifferentiable,
        Error::PreconditionViolated(_) => PconeStatus::InvalidArgument,
        Error::DimensionMismatch { .. } => PconeStatus::DimensionMismatch,
        Error::NotPolyhedral => PconeStatus::NotPolyhedral,
        Error::Singular => PconeStatus::Singular,
        Error::ConvergenceFailure { .. } => PconeStatus::ConvergenceFailure,
        Error::NotInterior => PconeStatus::NotInterior,
        Error::NotOnTargetGraph(_) => PconeStatus::NotOnTargetGraph,
    };
    fail(status, &err.to_string())
}

/// Message for the most recent failure on this thread; valid until the next
/// failing call. Never null.
#[no_mangle]
pub extern "C" fn pcone_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pcone_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a cone handle. `is_inf != 0` selects `p = inf` (then `p` is
/// ignored); otherwise `p` must be a finite real `>= 1`. `ambient_dim` is
/// `n + 1 >= 2`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pcone_cone_new(
    p: f64,
    is_inf: i32,
    ambient_dim: usize,
    out: *mut *mut PconeCone,
) -> PconeStatus {
    if out.is_null() {
        return fail(PconeStatus::InvalidArgument, "out pointer is null");
    }
    let exponent = if is_inf != 0 {
        Exponent::Infinity
    } else {
        match Exponent::finite(p) {
            Ok(e) => e,
            Err(e) => return fail_with(e),
        }
    };
    match ConeSpec::new(exponent, ambient_dim) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(PconeCone(spec)));
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Free a cone handle (null is a no-op).
///
/// # Safety
/// `cone` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pcone_cone_free(cone: *mut PconeCone) {
    if !cone.is_null() {
        drop(Box::from_raw(cone));
    }
}

/// The dual cone: same dimension, conjugate exponent.
///
/// # Safety
/// `cone` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pcone_cone_dual(
    cone: *const PconeCone,
    out: *mut *mut PconeCone,
) -> PconeStatus {
    if cone.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    *out = Box::into_raw(Box::new(PconeCone((*cone).0.dual())));
    PconeStatus::Ok
}

/// Ambient dimension `n + 1` of the cone.
///
/// # Safety
/// `cone` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn pcone_cone_ambient_dim(cone: *const PconeCone) -> usize {
    if cone.is_null() {
        return 0;
    }
    (*cone).0.ambient_dim
}

/// p-norm of an `n`-vector under the cone's exponent.
///
/// # Safety
/// `x` must point to `len` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_norm(
    cone: *const PconeCone,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> PconeStatus {
    if cone.is_null() || x.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    let spec = &(*cone).0;
    if len != spec.n() {
        return fail(
            PconeStatus::DimensionMismatch,
            "vector length must equal ambient_dim - 1",
        );
    }
    let slice = std::slice::from_raw_parts(x, len);
    *out = pnorm::norm(slice, spec.exponent);
    PconeStatus::Ok
}

/// Gradient of the p-norm at a nonzero `n`-vector, written into `out`
/// (length `len`). Requires finite `p > 1`.
///
/// # Safety
/// `x` and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn pcone_gradient(
    cone: *const PconeCone,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> PconeStatus {
    if cone.is_null() || x.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    let spec = &(*cone).0;
    if len != spec.n() {
        return fail(
            PconeStatus::DimensionMismatch,
            "vector length must equal ambient_dim - 1",
        );
    }
    let slice = std::slice::from_raw_parts(x, len);
    match pnorm::gradient(slice, spec.exponent) {
        Ok(g) => {
            std::slice::from_raw_parts_mut(out, len).copy_from_slice(&g);
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Membership of the ambient point `z = (t, x_1, ..., x_n)` with a symmetric
/// boundary band of width `tol`.
///
/// # Safety
/// `z` must point to `dim` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_contains(
    cone: *const PconeCone,
    z: *const f64,
    dim: usize,
    tol: f64,
    out: *mut PconeMembership,
) -> PconeStatus {
    if cone.is_null() || z.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    if dim < 2 {
        return fail(PconeStatus::InvalidArgument, "point needs at least (t, x1)");
    }
    let slice = std::slice::from_raw_parts(z, dim);
    let point = ConePoint::new(slice[0], slice[1..].to_vec());
    match (*cone).0.contains(&point, tol) {
        Ok(Membership::Interior) => {
            *out = PconeMembership::Interior;
            PconeStatus::Ok
        }
        Ok(Membership::Boundary) => {
            *out = PconeMembership::Boundary;
            PconeStatus::Ok
        }
        Ok(Membership::Outside) => {
            *out = PconeMembership::Outside;
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Euclidean projection onto the cone. Writes the projection into `pk_out`
/// and the Moreau complement `z - pk` (the projection onto `-K_q`) into
/// `pkstar_neg_out`, both of length `dim`.
///
/// # Safety
/// `z`, `pk_out`, `pkstar_neg_out` must point to `dim` doubles each.
#[no_mangle]
pub unsafe extern "C" fn pcone_project(
    cone: *const PconeCone,
    z: *const f64,
    dim: usize,
    tol: f64,
    pk_out: *mut f64,
    pkstar_neg_out: *mut f64,
) -> PconeStatus {
    if cone.is_null() || z.is_null() || pk_out.is_null() || pkstar_neg_out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    if dim < 2 {
        return fail(PconeStatus::InvalidArgument, "point needs at least (t, x1)");
    }
    let slice = std::slice::from_raw_parts(z, dim);
    let point = ConePoint::new(slice[0], slice[1..].to_vec());
    match (*cone).0.project(&point, tol) {
        Ok(m) => {
            let pk = std::slice::from_raw_parts_mut(pk_out, dim);
            pk[0] = m.pk.t;
            pk[1..].copy_from_slice(&m.pk.x);
            let pn = std::slice::from_raw_parts_mut(pkstar_neg_out, dim);
            pn[0] = m.pkstar_neg.t;
            pn[1..].copy_from_slice(&m.pkstar_neg.x);
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Number of extreme rays of a polyhedral cone (`p` in `{1, inf}`).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_extreme_ray_count(
    cone: *const PconeCone,
    out: *mut usize,
) -> PconeStatus {
    if cone.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    match (*cone).0.extreme_rays() {
        Ok(rays) => {
            *out = rays.len();
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Build an invertible-map handle from a row-major `dim x dim` matrix.
///
/// # Safety
/// `row_major` must point to `dim * dim` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_map_new(
    row_major: *const f64,
    dim: usize,
    out: *mut *mut PconeMap,
) -> PconeStatus {
    if row_major.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    if dim == 0 {
        return fail(PconeStatus::InvalidArgument, "dimension must be positive");
    }
    let data = std::slice::from_raw_parts(row_major, dim * dim);
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|i| data[i * dim..(i + 1) * dim].to_vec())
        .collect();
    match LinearMap::from_rows(&rows) {
        Ok(map) => {
            *out = Box::into_raw(Box::new(PconeMap(map)));
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Free a map handle (null is a no-op).
///
/// # Safety
/// `map` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pcone_map_free(map: *mut PconeMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Apply the map to an ambient point.
///
/// # Safety
/// `z` and `out` must point to `dim` doubles matching the map.
#[no_mangle]
pub unsafe extern "C" fn pcone_map_apply(
    map: *const PconeMap,
    z: *const f64,
    dim: usize,
    out: *mut f64,
) -> PconeStatus {
    if map.is_null() || z.is_null() || out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    let m = &(*map).0;
    if dim != m.dim() || dim < 2 {
        return fail(
            PconeStatus::DimensionMismatch,
            "point/map dimensions differ",
        );
    }
    let slice = std::slice::from_raw_parts(z, dim);
    let point = ConePoint::new(slice[0], slice[1..].to_vec());
    match m.apply(&point) {
        Ok(w) => {
            let dst = std::slice::from_raw_parts_mut(out, dim);
            dst[0] = w.t;
            dst[1..].copy_from_slice(&w.x);
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Structural automorphism decision for `p != 2`: sets `*is_member` to 1 or
/// 0; when 1, `*alpha_out` receives the scale factor.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_is_structural_automorphism(
    map: *const PconeMap,
    cone: *const PconeCone,
    tol: f64,
    is_member: *mut i32,
    alpha_out: *mut f64,
) -> PconeStatus {
    if map.is_null() || cone.is_null() || is_member.is_null() || alpha_out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    match is_structural_automorphism(&(*map).0, &(*cone).0, tol) {
        Ok(Some(auto)) => {
            *is_member = 1;
            *alpha_out = auto.alpha;
            PconeStatus::Ok
        }
        Ok(None) => {
            *is_member = 0;
            *alpha_out = 0.0;
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// One-sided sampling oracle: sets `*refuted` to 1 when a boundary sample
/// maps outside the cone (under image or preimage), 0 otherwise.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_sampling_oracle(
    map: *const PconeMap,
    cone: *const PconeCone,
    samples: usize,
    seed: u64,
    tol: f64,
    refuted: *mut i32,
) -> PconeStatus {
    if map.is_null() || cone.is_null() || refuted.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    match sampling_oracle_automorphism(&(*map).0, &(*cone).0, samples, seed, tol) {
        Ok(OracleOutcome::Plausible) => {
            *refuted = 0;
            PconeStatus::Ok
        }
        Ok(OracleOutcome::RefutedAt(_)) => {
            *refuted = 1;
            PconeStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

fn report_to_cstring(report: &pcone::duality::IsoSearchReport) -> Result<CString, PconeStatus> {
    let json = serde_json::to_string(report)
        .map_err(|e| fail(PconeStatus::InvalidArgument, &e.to_string()))?;
    CString::new(json).map_err(|e| fail(PconeStatus::InvalidArgument, &e.to_string()))
}

/// Multi-start search for a positive definite self-duality witness.
/// `*json_out` receives the full search report as a JSON string; free it
/// with [`pcone_string_free`].
///
/// # Safety
/// `cone` and `json_out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pcone_selfdual_search_json(
    cone: *const PconeCone,
    restarts: usize,
    samples: usize,
    seed: u64,
    budget: usize,
    json_out: *mut *mut c_char,
) -> PconeStatus {
    if cone.is_null() || json_out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    match selfdual_search(&(*cone).0, restarts, samples, seed, budget) {
        Ok(report) => match report_to_cstring(&report) {
            Ok(s) => {
                *json_out = s.into_raw();
                PconeStatus::Ok
            }
            Err(status) => status,
        },
        Err(e) => fail_with(e),
    }
}

/// Multi-start search for a linear isomorphism between two cones of the
/// same dimension, reported as JSON.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pcone_iso_search_json(
    from: *const PconeCone,
    to: *const PconeCone,
    restarts: usize,
    samples: usize,
    seed: u64,
    budget: usize,
    json_out: *mut *mut c_char,
) -> PconeStatus {
    if from.is_null() || to.is_null() || json_out.is_null() {
        return fail(PconeStatus::InvalidArgument, "null pointer");
    }
    match iso_search(&(*from).0, &(*to).0, restarts, samples, seed, budget) {
        Ok(report) => match report_to_cstring(&report) {
            Ok(s) => {
                *json_out = s.into_raw();
                PconeStatus::Ok
            }
            Err(status) => status,
        },
        Err(e) => fail_with(e),
    }
}

/// Free a string returned by a `_json` call (null is a no-op).
///
/// # Safety
/// `s` must have come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pcone_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
