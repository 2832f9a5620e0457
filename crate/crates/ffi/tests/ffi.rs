use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use graphonlab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gl_last_error()).to_string_lossy().into_owned() }
}

fn graphon(lit: &str) -> *mut GlGraphon {
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { gl_graphon_make(c(lit).as_ptr(), &mut w) }, GlStatus::Ok, "{}", last_error());
    w
}

fn graph(code: &str) -> *mut GlGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gl_graph_from_graph6(c(code).as_ptr(), &mut g) }, GlStatus::Ok, "{}", last_error());
    g
}

#[test]
fn graphon_scalars() {
    let w = graphon("wrs:2,0");
    let mut x = f64::NAN;
    unsafe {
        assert_eq!(gl_graphon_entropy(w, &mut x), GlStatus::Ok);
        assert!((x - 0.5).abs() < 1e-12);
        assert_eq!(gl_graphon_edge_density(w, &mut x), GlStatus::Ok);
        assert!((x - 0.25).abs() < 1e-12);
        assert_eq!(gl_graphon_block_count(w), 2);
        let u = graphon("turan:2");
        let v = graphon("constant:0.5");
        assert_eq!(gl_d_box(u, v, &mut x), GlStatus::Ok);
        assert!((x - 0.125).abs() < 1e-12);
        gl_graphon_free(u);
        gl_graphon_free(v);
        gl_graphon_free(w);
    }
}

#[test]
fn json_round_trip() {
    let w = graphon("string:1/16");
    unsafe {
        let mut needed = 0usize;
        assert_eq!(gl_graphon_to_json(w, ptr::null_mut(), 0, &mut needed), GlStatus::BufferTooSmall);
        let mut buf = vec![0 as c_char; needed];
        assert_eq!(gl_graphon_to_json(w, buf.as_mut_ptr(), buf.len(), &mut needed), GlStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(gl_graphon_from_json(buf.as_ptr(), &mut back), GlStatus::Ok);
        let (mut a, mut b) = (0.0, 1.0);
        gl_graphon_edge_density(w, &mut a);
        gl_graphon_edge_density(back, &mut b);
        assert_eq!(a, b);
        gl_graphon_free(back);
        gl_graphon_free(w);
    }
}

#[test]
fn graphs_and_sampling() {
    let g = graph("Dhc");
    unsafe {
        assert_eq!(gl_graph_vertex_count(g), 5);
        let mut e = false;
        assert_eq!(gl_graph_has_edge(g, 0, 1, &mut e), GlStatus::Ok);
        assert!(e);
        assert_eq!(gl_graph_has_edge(g, 0, 9, &mut e), GlStatus::Invalid);
        let mut canon = ptr::null_mut();
        assert_eq!(gl_graph_canonical(g, &mut canon), GlStatus::Ok);
        let mut wg = ptr::null_mut();
        assert_eq!(gl_graphon_from_graph(g, &mut wg), GlStatus::Ok);
        let mut h = f64::NAN;
        gl_graphon_entropy(wg, &mut h);
        assert_eq!(h, 0.0);

        let w = graphon("wrs:3,1");
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(gl_graphon_sample(w, 20, 42, &mut s1), GlStatus::Ok);
        assert_eq!(gl_graphon_sample(w, 20, 42, &mut s2), GlStatus::Ok);
        let mut b1 = [0 as c_char; 64];
        let mut b2 = [0 as c_char; 64];
        gl_graph_to_graph6(s1, b1.as_mut_ptr(), 64, ptr::null_mut());
        gl_graph_to_graph6(s2, b2.as_mut_ptr(), 64, ptr::null_mut());
        assert_eq!(CStr::from_ptr(b1.as_ptr()), CStr::from_ptr(b2.as_ptr()));
        let mut big = ptr::null_mut();
        assert_eq!(gl_graphon_sample(w, 65, 1, &mut big), GlStatus::Capacity);
        assert!(big.is_null());

        let mut p = f64::NAN;
        let k2 = graph("A_");
        assert_eq!(gl_p_induced(k2, w, &mut p), GlStatus::Ok);
        let mut d = f64::NAN;
        gl_graphon_edge_density(w, &mut d);
        assert!((p - d).abs() < 1e-12);

        for x in [g, canon, s1, s2, k2] {
            gl_graph_free(x);
        }
        gl_graphon_free(wg);
        gl_graphon_free(w);
    }
}

#[test]
fn classes() {
    unsafe {
        let (mut l, mut u) = (0u64, 0u64);
        assert_eq!(gl_census(c("bipartite").as_ptr(), 3, &mut l, &mut u), GlStatus::Ok);
        assert_eq!((l, u), (7, 3));
        assert_eq!(gl_census(c("all").as_ptr(), 4, &mut l, &mut u), GlStatus::Ok);
        assert_eq!((l, u), (64, 11));
        let (mut r, mut s, mut cap) = (0usize, 0usize, true);
        assert_eq!(gl_colouring_number(c("split").as_ptr(), 5, 6, &mut r, &mut s, &mut cap), GlStatus::Ok);
        assert_eq!((r, s, cap), (2, 1, false));
        assert_eq!(gl_colouring_number(c("split").as_ptr(), 9, 6, &mut r, &mut s, &mut cap), GlStatus::Capacity);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(gl_graphon_make(ptr::null(), &mut w), GlStatus::NullPointer);
        assert!(last_error().contains("literal"));
        assert_eq!(gl_graphon_make(c("wrs:1,5").as_ptr(), &mut w), GlStatus::Invalid);
        assert!(!last_error().is_empty());
        assert!(w.is_null());
        assert_eq!(gl_graphon_make(c("@/nonexistent/w.json").as_ptr(), &mut w), GlStatus::Io);
        let mut g = ptr::null_mut();
        assert_eq!(gl_graph_from_graph6(c("B!").as_ptr(), &mut g), GlStatus::Invalid);
        let mut x = 0.0;
        assert_eq!(gl_graphon_entropy(ptr::null(), &mut x), GlStatus::NullPointer);
        let ok = graphon("constant:0.5");
        assert_eq!(gl_graphon_entropy(ok, ptr::null_mut()), GlStatus::NullPointer);
        assert_eq!(gl_graphon_entropy(ok, &mut x), GlStatus::Ok);
        assert_eq!(last_error(), "");
        gl_graphon_free(ok);
        gl_graph_free(ptr::null_mut());
        gl_graphon_free(ptr::null_mut());
        assert_eq!(gl_graph_vertex_count(ptr::null()), 0);
        assert!(!CStr::from_ptr(gl_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/graphonlab.h")).unwrap();
    for name in [
        "gl_last_error", "gl_version", "gl_graph_from_graph6", "gl_graph_to_graph6", "gl_graph_vertex_count",
        "gl_graph_has_edge", "gl_graph_canonical", "gl_graph_free", "gl_graphon_make", "gl_graphon_from_json",
        "gl_graphon_from_graph", "gl_graphon_to_json", "gl_graphon_block_count", "gl_graphon_free",
        "gl_graphon_entropy", "gl_graphon_edge_density", "gl_p_induced", "gl_graphon_sample", "gl_d_box",
        "gl_census", "gl_colouring_number", "GL_STATUS_CAPACITY", "typedef struct GlGraph GlGraph",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles the C smoke test against the static library when a C compiler
/// and the archive are available.
#[test]
fn c_smoke_program() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let archive = profile_dir().join("libgraphonlab_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {} missing", archive.display());
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("graphonlab_smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&archive)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
