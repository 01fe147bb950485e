use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use artinlab_ffi::*;

const PERAZZO_B: &str = "field Q\nvars x y z u v\ndual XU^[2] + YUV + ZV^[2]\n";

fn parse(text: &str) -> (*mut ArtinAlgebra, ArtinStatus) {
    let c = CString::new(text).unwrap();
    let mut a = ptr::null_mut();
    let s = unsafe { artin_algebra_parse(c.as_ptr(), &mut a) };
    (a, s)
}

fn last_error() -> String {
    let p = artin_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { artin_string_free(p) };
    s
}

#[test]
fn algebra_round_trip() {
    let (a, s) = parse(PERAZZO_B);
    assert_eq!(s, ArtinStatus::Ok);
    let mut dim = 0;
    assert_eq!(unsafe { artin_algebra_dimension(a, &mut dim) }, ArtinStatus::Ok);
    assert_eq!(dim, 12);

    let mut len = 0;
    let mut small = [0usize; 2];
    assert_eq!(unsafe { artin_algebra_hilbert(a, small.as_mut_ptr(), 2, &mut len) }, ArtinStatus::BufferTooSmall);
    assert_eq!(len, 4);
    let mut h = vec![0usize; len];
    assert_eq!(unsafe { artin_algebra_hilbert(a, h.as_mut_ptr(), h.len(), &mut len) }, ArtinStatus::Ok);
    assert_eq!(h, [1, 5, 5, 1]);
    assert_eq!(unsafe { artin_algebra_local_hilbert(a, h.as_mut_ptr(), h.len(), &mut len) }, ArtinStatus::Ok);
    assert_eq!(h, [1, 5, 5, 1]);

    let text = unsafe { artin_algebra_render(a) };
    let rendered = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    unsafe { artin_string_free(text) };
    let (b, s) = parse(&rendered);
    assert_eq!(s, ArtinStatus::Ok);
    unsafe {
        artin_algebra_free(a);
        artin_algebra_free(b);
    }
}

#[test]
fn jordan_types() {
    let (a, _) = parse(PERAZZO_B);
    let mut buf = [0usize; 16];
    let mut len = 0;
    let e = CString::new("x + u").unwrap();
    assert_eq!(unsafe { artin_jordan_type(a, e.as_ptr(), buf.as_mut_ptr(), 16, &mut len) }, ArtinStatus::Ok);
    assert_eq!(buf[..len].iter().sum::<usize>(), 12);
    let mode = ArtinSampleMode::Linear as u32;
    assert_eq!(
        unsafe { artin_generic_jordan_type(a, mode, 7, 0, buf.as_mut_ptr(), 16, &mut len) },
        ArtinStatus::Ok
    );
    assert_eq!(&buf[..len], &[4, 2, 2, 2, 1, 1]);
    assert_eq!(
        unsafe { artin_generic_jordan_type(a, 9, 7, 0, buf.as_mut_ptr(), 16, &mut len) },
        ArtinStatus::InvalidArgument
    );
    let mut verdict = true;
    assert_eq!(unsafe { artin_lefschetz(a, ArtinLefschetzMode::Graded as u32, 7, 0, &mut verdict) }, ArtinStatus::Ok);
    assert!(!verdict);
    unsafe { artin_algebra_free(a) };
}

#[test]
fn partitions() {
    let p = [2usize, 2, 1, 1];
    let q = [3usize, 2, 1];
    let mut d = ArtinDominance::Equal;
    assert_eq!(unsafe { artin_dominance(p.as_ptr(), 4, q.as_ptr(), 3, &mut d) }, ArtinStatus::Ok);
    assert_eq!(d, ArtinDominance::Less);
    let bad = [1usize, 2];
    assert_eq!(unsafe { artin_dominance(bad.as_ptr(), 2, q.as_ptr(), 3, &mut d) }, ArtinStatus::ParseError);
    assert_eq!(unsafe { artin_dominance(p.as_ptr(), 4, q.as_ptr(), 2, &mut d) }, ArtinStatus::MathError);

    let mut buf = [0usize; 16];
    let mut len = 0;
    let two = [2usize];
    let b = [4usize, 2, 2, 2, 1, 1];
    let s = unsafe { artin_cg_tensor(two.as_ptr(), 1, b.as_ptr(), 6, 0, buf.as_mut_ptr(), 16, &mut len) };
    assert_eq!(s, ArtinStatus::Ok);
    assert_eq!(&buf[..len], &[5, 3, 3, 3, 3, 2, 2, 1, 1, 1]);
}

#[test]
fn errors_and_null_pointers() {
    let (a, s) = parse("field Q\nvars x\nideal x^\n");
    assert_eq!(s, ArtinStatus::ParseError);
    assert!(a.is_null());
    assert!(last_error().contains("line 3"));

    let (a, s) = parse("field Q\nvars x y\nideal x^2\n");
    assert_eq!(s, ArtinStatus::MathError);
    assert!(a.is_null());

    let mut a = ptr::null_mut();
    assert_eq!(unsafe { artin_algebra_parse(ptr::null(), &mut a) }, ArtinStatus::NullPointer);
    let mut dim = 0;
    assert_eq!(unsafe { artin_algebra_dimension(ptr::null(), &mut dim) }, ArtinStatus::NullPointer);
    unsafe { artin_algebra_free(ptr::null_mut()) };
    unsafe { artin_string_free(ptr::null_mut()) };
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

#[test]
fn triples() {
    let dir = data_dir();
    let text = CString::new(std::fs::read_to_string(dir.join("perazzo.triple")).unwrap()).unwrap();
    let base = CString::new(dir.to_str().unwrap()).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { artin_triple_parse(text.as_ptr(), base.as_ptr(), &mut t) }, ArtinStatus::Ok);
    let mut verdict = false;
    assert_eq!(unsafe { artin_verify_extension(t, &mut verdict) }, ArtinStatus::Ok);
    assert!(verdict);
    let mut outcome = ArtinTheoremOutcome::Falsified;
    assert_eq!(unsafe { artin_theorem_check(t, 7, 0, &mut outcome) }, ArtinStatus::Ok);
    assert_eq!(outcome, ArtinTheoremOutcome::Greater);
    unsafe { artin_triple_free(t) };

    let mut t = ptr::null_mut();
    assert_eq!(unsafe { artin_triple_parse(text.as_ptr(), ptr::null(), &mut t) }, ArtinStatus::ParseError);
    assert!(t.is_null());
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/artinlab.h")).unwrap();
    let src = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct ArtinAlgebra ArtinAlgebra;"));
    assert!(header.contains("ARTIN_STATUS_PANIC = 7"));
}

#[test]
fn c_program_links_against_staticlib() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler on PATH; C link check not run");
        return;
    };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libartinlab_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
