use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use rigkit_ffi::*;

fn named(name: &str) -> *mut RkGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { rk_graph_named(name.as_ptr(), &mut g) }, RkStatus::Ok);
    g
}

#[test]
fn generate_count_and_girth() {
    let family = CString::new("g").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(rk_graph_generate(family.as_ptr(), 2, 1, &mut g), RkStatus::Ok);
        assert_eq!((rk_graph_vertex_count(g), rk_graph_edge_count(g)), (130, 186));
        let (mut len, mut unbounded) = (0usize, true);
        assert_eq!(rk_girth(g, &mut len, &mut unbounded), RkStatus::Ok);
        assert_eq!((len, unbounded), (5, false));
        rk_graph_free(g);
    }
}

#[test]
fn minor_search_and_verification() {
    let (k5, k6, a3) = (named("k5"), named("k6"), ptr::null_mut::<RkGraph>());
    let family = CString::new("apex-grid").unwrap();
    let mut a3 = a3;
    unsafe {
        assert_eq!(rk_graph_generate(family.as_ptr(), 3, 0, &mut a3), RkStatus::Ok);
        let mut outcome = RkOutcome::Unknown;
        let mut witness = ptr::null_mut();
        assert_eq!(rk_find_minor(k6, a3, RkModelKind::Ordinary, 0, &mut outcome, &mut witness), RkStatus::Ok);
        assert_eq!(outcome, RkOutcome::Absent);
        assert!(witness.is_null());
        assert_eq!(rk_find_minor(k5, a3, RkModelKind::Ordinary, 0, &mut outcome, &mut witness), RkStatus::Ok);
        assert_eq!(outcome, RkOutcome::Found);
        let mut valid = false;
        assert_eq!(rk_verify_model(k5, a3, witness, &mut valid), RkStatus::Ok);
        assert!(valid);
        rk_string_free(witness);
        assert_eq!(rk_find_minor(k6, a3, RkModelKind::Ordinary, 2, &mut outcome, ptr::null_mut()), RkStatus::Ok);
        assert_eq!(outcome, RkOutcome::Unknown);
        for g in [k5, k6, a3] {
            rk_graph_free(g);
        }
    }
}

#[test]
fn round_trip_through_text() {
    let c5 = named("c5");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(rk_graph_write(c5, RkFormat::Graph6, &mut s), RkStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(rk_graph_parse(s, &mut back), RkStatus::Ok);
        assert_eq!(rk_graph_edge_count(back), 5);
        rk_string_free(s);
        rk_graph_free(back);
        rk_graph_free(c5);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(rk_graph_parse(bad.as_ptr(), &mut g), RkStatus::Parse);
        assert!(g.is_null());
        let msg = CStr::from_ptr(rk_last_error()).to_str().unwrap();
        assert!(!msg.is_empty());
        assert_eq!(rk_graph_parse(ptr::null(), &mut g), RkStatus::NullPointer);
        let unknown = CString::new("zz9").unwrap();
        assert_eq!(rk_graph_named(unknown.as_ptr(), &mut g), RkStatus::InvalidArgument);
        let family = CString::new("gg").unwrap();
        assert_eq!(rk_graph_generate(family.as_ptr(), 2, 1, &mut g), RkStatus::InvalidArgument);
        assert_eq!(rk_graph_vertex_count(ptr::null()), 0);
        let ok = named("k3");
        assert!(rk_last_error().is_null());
        rk_graph_free(ok);
        assert!(!CStr::from_ptr(rk_version()).to_str().unwrap().is_empty());
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/rigkit.h");
    assert!(header.exists(), "header not generated");
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; header syntax check skipped");
        return;
    };
    assert!(cc.status.success());
    let probe = std::env::temp_dir().join(format!("rigkit_header_probe_{}.c", std::process::id()));
    std::fs::write(
        &probe,
        "#include \"rigkit.h\"\nint main(void) { RkGraph *g = 0; RkStatus s = rk_graph_named(\"k4\", &g); \
         rk_graph_free(g); return s == RK_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&probe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
