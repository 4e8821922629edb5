//! Exercises the C ABI from Rust: handle lifecycles, status codes, and the
//! numeric surfaces another language would bind.

use std::ffi::CStr;
use std::ptr;

use pcone_ffi::*;

unsafe fn new_cone(p: f64, is_inf: bool, dim: usize) -> *mut PconeCone {
    let mut cone = ptr::null_mut();
    let status = pcone_cone_new(p, is_inf as i32, dim, &mut cone);
    assert_eq!(status, PconeStatus::Ok);
    assert!(!cone.is_null());
    cone
}

#[test]
fn cone_lifecycle_and_norms() {
    unsafe {
        let cone = new_cone(3.0, false, 4);
        assert_eq!(pcone_cone_ambient_dim(cone), 4);

        let x = [1.0, 1.0, 1.0];
        let mut value = 0.0;
        assert_eq!(pcone_norm(cone, x.as_ptr(), 3, &mut value), PconeStatus::Ok);
        assert!((value - 1.4422495703074083).abs() < 1e-12);

        let mut grad = [0.0; 3];
        assert_eq!(
            pcone_gradient(cone, x.as_ptr(), 3, grad.as_mut_ptr()),
            PconeStatus::Ok
        );
        assert!((grad[0] - 0.48074985676913623).abs() < 1e-12);

        // wrong length is a dimension error
        assert_eq!(
            pcone_norm(cone, x.as_ptr(), 2, &mut value),
            PconeStatus::DimensionMismatch
        );

        pcone_cone_free(cone);
    }
}

#[test]
fn error_paths_and_messages() {
    unsafe {
        let mut cone = ptr::null_mut();
        assert_eq!(
            pcone_cone_new(0.5, 0, 3, &mut cone),
            PconeStatus::UnsupportedExponent
        );
        let msg = CStr::from_ptr(pcone_last_error_message());
        assert!(!msg.to_str().unwrap().is_empty());

        assert_eq!(
            pcone_cone_new(2.0, 0, 1, &mut cone),
            PconeStatus::InvalidArgument
        );

        let cone = new_cone(1.0, false, 3);
        let zero = [0.0, 0.0];
        let mut grad = [0.0; 2];
        assert_eq!(
            pcone_gradient(cone, zero.as_ptr(), 2, grad.as_mut_ptr()),
            PconeStatus::UnsupportedExponent
        );
        pcone_cone_free(cone);

        let cone = new_cone(3.0, false, 3);
        assert_eq!(
            pcone_gradient(cone, zero.as_ptr(), 2, grad.as_mut_ptr()),
            PconeStatus::ZeroVector
        );
        pcone_cone_free(cone);

        // free of null is a no-op
        pcone_cone_free(ptr::null_mut());
        pcone_map_free(ptr::null_mut());
        pcone_string_free(ptr::null_mut());
    }
}

#[test]
fn membership_projection_and_rays() {
    unsafe {
        let cone = new_cone(2.0, false, 3);
        let inside = [2.0, 1.0, 0.0];
        let mut m = PconeMembership::Outside;
        assert_eq!(
            pcone_contains(cone, inside.as_ptr(), 3, 1e-9, &mut m),
            PconeStatus::Ok
        );
        assert_eq!(m, PconeMembership::Interior);

        let z = [0.0, 2.0, 0.0];
        let mut pk = [0.0; 3];
        let mut pn = [0.0; 3];
        assert_eq!(
            pcone_project(cone, z.as_ptr(), 3, 1e-12, pk.as_mut_ptr(), pn.as_mut_ptr()),
            PconeStatus::Ok
        );
        assert!((pk[0] - 1.0).abs() < 1e-9 && (pk[1] - 1.0).abs() < 1e-9);
        // Moreau sum reconstructs z
        for i in 0..3 {
            assert!((pk[i] + pn[i] - z[i]).abs() < 1e-12);
        }

        let mut count = 0usize;
        assert_eq!(
            pcone_extreme_ray_count(cone, &mut count),
            PconeStatus::NotPolyhedral
        );
        pcone_cone_free(cone);

        let kinf = new_cone(0.0, true, 4);
        assert_eq!(pcone_extreme_ray_count(kinf, &mut count), PconeStatus::Ok);
        assert_eq!(count, 8);

        let mut dual = ptr::null_mut();
        assert_eq!(pcone_cone_dual(kinf, &mut dual), PconeStatus::Ok);
        let mut v = 0.0;
        let x = [1.0, -7.0, 2.0];
        assert_eq!(pcone_norm(dual, x.as_ptr(), 3, &mut v), PconeStatus::Ok);
        assert_eq!(v, 10.0); // dual of inf is the 1-norm
        pcone_cone_free(dual);
        pcone_cone_free(kinf);
    }
}

#[test]
fn maps_and_automorphism_checks() {
    unsafe {
        let cone = new_cone(1.5, false, 3);
        // alpha = 2 times a sign-flipping swap
        let rows = [2.0, 0.0, 0.0, 0.0, 0.0, 2.0, 0.0, -2.0, 0.0];
        let mut map = ptr::null_mut();
        assert_eq!(pcone_map_new(rows.as_ptr(), 3, &mut map), PconeStatus::Ok);

        let z = [1.0, 5.0, 7.0];
        let mut out = [0.0; 3];
        assert_eq!(
            pcone_map_apply(map, z.as_ptr(), 3, out.as_mut_ptr()),
            PconeStatus::Ok
        );
        assert_eq!(out, [2.0, 14.0, -10.0]);

        let mut member = 0;
        let mut alpha = 0.0;
        assert_eq!(
            pcone_is_structural_automorphism(map, cone, 1e-12, &mut member, &mut alpha),
            PconeStatus::Ok
        );
        assert_eq!(member, 1);
        assert_eq!(alpha, 2.0);

        let mut refuted = 1;
        assert_eq!(
            pcone_sampling_oracle(map, cone, 500, 42, 1e-9, &mut refuted),
            PconeStatus::Ok
        );
        assert_eq!(refuted, 0);
        pcone_map_free(map);

        // a singular matrix is rejected at construction
        let singular = [1.0, 2.0, 0.0, 2.0, 4.0, 0.0, 0.0, 0.0, 1.0];
        let mut bad = ptr::null_mut();
        assert_eq!(
            pcone_map_new(singular.as_ptr(), 3, &mut bad),
            PconeStatus::Singular
        );

        // an axis stretch is refuted by the oracle
        let stretch = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0];
        let mut map = ptr::null_mut();
        assert_eq!(
            pcone_map_new(stretch.as_ptr(), 3, &mut map),
            PconeStatus::Ok
        );
        assert_eq!(
            pcone_sampling_oracle(map, cone, 1000, 0, 1e-9, &mut refuted),
            PconeStatus::Ok
        );
        assert_eq!(refuted, 1);
        pcone_map_free(map);
        pcone_cone_free(cone);
    }
}

#[test]
fn search_reports_round_trip_as_json() {
    unsafe {
        let cone = new_cone(2.0, false, 3);
        let mut json = ptr::null_mut();
        assert_eq!(
            pcone_selfdual_search_json(cone, 3, 200, 42, 2000, &mut json),
            PconeStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        pcone_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], "FoundIso");
        assert_eq!(v["seed"], 42);
        pcone_cone_free(cone);

        let from = new_cone(1.0, false, 3);
        let to = new_cone(0.0, true, 3);
        let mut json = ptr::null_mut();
        assert_eq!(
            pcone_iso_search_json(from, to, 4, 200, 7, 4000, &mut json),
            PconeStatus::Ok
        );
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        pcone_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["best_violation"].as_f64().unwrap() >= 0.0);
        pcone_cone_free(from);
        pcone_cone_free(to);
    }
}

#[test]
fn version_string_is_exposed() {
    unsafe {
        let v = CStr::from_ptr(pcone_version());
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
