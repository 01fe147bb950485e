//! C ABI for `artinlab`.
//!
//! Algebras and triples are opaque handles created by `artin_*_parse` and
//! released by the matching `_free`. Every fallible call returns an
//! [`ArtinStatus`]; on failure `artin_last_error_message` describes the most
//! recent error on the calling thread.
//!
//! Array outputs use the caller's buffer: the required length is always
//! written to `*len`, and `ARTIN_STATUS_BUFFER_TOO_SMALL` is returned when
//! `cap < *len`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use artinlab::extension::{cg_tensor, theorem_check, verify_free_extension, ExtensionTriple, TheoremOutcome};
use artinlab::format::{parse_algebra, parse_triple, render_algebra};
use artinlab::jordan::{element_jordan_type, generic_jordan_type, lefschetz_certify, LefschetzMode, SampleMode};
use artinlab::parse::parse_polynomial;
use artinlab::{build_algebra, dominance_compare, Dominance, Error, GradedAlgebra, Partition};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinStatus {
    Ok = 0,
    ParseError = 1,
    MathError = 2,
    Falsification = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    InvalidArgument = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinSampleMode {
    Linear = 0,
    Local = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinLefschetzMode {
    Graded = 0,
    Local = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinDominance {
    Less = -1,
    Equal = 0,
    Greater = 1,
    Incomparable = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinTheoremOutcome {
    Greater = 0,
    Equal = 1,
    Unresolved = 2,
    Falsified = 3,
}

/// A graded Artinian algebra.
pub struct ArtinAlgebra(GradedAlgebra);

/// An extension triple `A -> C -> B`.
pub struct ArtinTriple(ExtensionTriple);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(ArtinStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => ArtinStatus::InvalidArgument,
            _ if e.exit_code() == 1 => ArtinStatus::ParseError,
            _ => ArtinStatus::MathError,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: ArtinStatus, msg: &str) -> Failure {
    Failure(status, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<ArtinStatus, Failure>) -> ArtinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            ArtinStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(ArtinStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ArtinStatus::ParseError, &format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(ArtinStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(ArtinStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn write_array(values: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> Result<ArtinStatus, Failure> {
    *out(len, "len")? = values.len();
    if cap < values.len() {
        return Ok(ArtinStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(fail(ArtinStatus::NullPointer, "buf is null"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(ArtinStatus::Ok)
}

unsafe fn read_partition(parts: *const usize, len: usize, what: &str) -> Result<Partition, Failure> {
    let v = if len == 0 {
        Vec::new()
    } else if parts.is_null() {
        return Err(fail(ArtinStatus::NullPointer, &format!("{what} is null")));
    } else {
        std::slice::from_raw_parts(parts, len).to_vec()
    };
    Ok(Partition::new(v)?)
}

/// Parse an algebra file's text and build the algebra.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_algebra` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_parse(text: *const c_char, out_algebra: *mut *mut ArtinAlgebra) -> ArtinStatus {
    guard(|| {
        let slot = out(out_algebra, "out_algebra")?;
        *slot = ptr::null_mut();
        let a = build_algebra(parse_algebra(c_str(text, "text")?)?)?;
        *slot = Box::into_raw(Box::new(ArtinAlgebra(a)));
        Ok(ArtinStatus::Ok)
    })
}

/// # Safety
/// `algebra` must come from `artin_algebra_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_free(algebra: *mut ArtinAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_dimension(algebra: *const ArtinAlgebra, dim: *mut usize) -> ArtinStatus {
    guard(|| {
        *out(dim, "dim")? = handle(algebra, "algebra")?.0.dimension();
        Ok(ArtinStatus::Ok)
    })
}

/// # Safety
/// `buf` must hold `cap` entries; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_hilbert(
    algebra: *const ArtinAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ArtinStatus {
    guard(|| write_array(handle(algebra, "algebra")?.0.hilbert(), buf, cap, len))
}

/// Hilbert function of the `m`-adic filtration.
///
/// # Safety
/// As for `artin_algebra_hilbert`.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_local_hilbert(
    algebra: *const ArtinAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ArtinStatus {
    guard(|| write_array(&handle(algebra, "algebra")?.0.local_hilbert(), buf, cap, len))
}

/// The algebra in file format; free with `artin_string_free`.
///
/// # Safety
/// `algebra` must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_algebra_render(algebra: *const ArtinAlgebra) -> *mut c_char {
    match handle(algebra, "algebra") {
        Ok(a) => CString::new(render_algebra(a.0.spec())).map_or(ptr::null_mut(), CString::into_raw),
        Err(Failure(_, msg)) => {
            set_error(msg);
            ptr::null_mut()
        }
    }
}

/// Jordan type of multiplication by `element`, a polynomial in the
/// algebra's variables.
///
/// # Safety
/// `element` must be NUL-terminated; `buf` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn artin_jordan_type(
    algebra: *const ArtinAlgebra,
    element: *const c_char,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ArtinStatus {
    guard(|| {
        let a = &handle(algebra, "algebra")?.0;
        let e = a.normal_form(&parse_polynomial(c_str(element, "element")?, a.table(), a.field())?)?;
        write_array(element_jordan_type(a, &e)?.parts(), buf, cap, len)
    })
}

fn sample_mode(mode: u32) -> Result<SampleMode, Failure> {
    match mode {
        m if m == ArtinSampleMode::Linear as u32 => Ok(SampleMode::LinearForms),
        m if m == ArtinSampleMode::Local as u32 => Ok(SampleMode::MaximalIdeal),
        _ => Err(fail(ArtinStatus::InvalidArgument, "unknown sample mode")),
    }
}

/// Dominance maximum of `samples` seeded random elements; `mode` is an
/// `ArtinSampleMode`.
///
/// # Safety
/// `buf` must hold `cap` entries; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_generic_jordan_type(
    algebra: *const ArtinAlgebra,
    mode: u32,
    samples: usize,
    seed: u64,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ArtinStatus {
    guard(|| {
        let a = &handle(algebra, "algebra")?.0;
        let g = generic_jordan_type(a, sample_mode(mode)?, samples, seed)?;
        write_array(g.partition.parts(), buf, cap, len)
    })
}

/// Strong Lefschetz verdict; `mode` is an `ArtinLefschetzMode`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_lefschetz(
    algebra: *const ArtinAlgebra,
    mode: u32,
    samples: usize,
    seed: u64,
    verdict: *mut bool,
) -> ArtinStatus {
    guard(|| {
        let a = &handle(algebra, "algebra")?.0;
        let mode = match mode {
            m if m == ArtinLefschetzMode::Graded as u32 => LefschetzMode::Graded,
            m if m == ArtinLefschetzMode::Local as u32 => LefschetzMode::Local,
            _ => return Err(fail(ArtinStatus::InvalidArgument, "unknown Lefschetz mode")),
        };
        *out(verdict, "verdict")? = lefschetz_certify(a, mode, samples, seed)?.verdict;
        Ok(ArtinStatus::Ok)
    })
}

/// Compare two partitions given as weakly decreasing arrays.
///
/// # Safety
/// `p` and `q` must hold `p_len` and `q_len` entries.
#[no_mangle]
pub unsafe extern "C" fn artin_dominance(
    p: *const usize,
    p_len: usize,
    q: *const usize,
    q_len: usize,
    result: *mut ArtinDominance,
) -> ArtinStatus {
    guard(|| {
        let d = dominance_compare(&read_partition(p, p_len, "p")?, &read_partition(q, q_len, "q")?)?;
        *out(result, "result")? = match d {
            Dominance::Less => ArtinDominance::Less,
            Dominance::Equal => ArtinDominance::Equal,
            Dominance::Greater => ArtinDominance::Greater,
            Dominance::Incomparable => ArtinDominance::Incomparable,
        };
        Ok(ArtinStatus::Ok)
    })
}

/// Jordan type of `J_p (x) J_q` in characteristic `characteristic`.
///
/// # Safety
/// Input arrays must hold their stated lengths; `buf` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn artin_cg_tensor(
    p: *const usize,
    p_len: usize,
    q: *const usize,
    q_len: usize,
    characteristic: u64,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ArtinStatus {
    guard(|| {
        let r = cg_tensor(&read_partition(p, p_len, "p")?, &read_partition(q, q_len, "q")?, characteristic)?;
        write_array(r.parts(), buf, cap, len)
    })
}

/// Parse a triple file's text. `base_dir` resolves `include` lines and may be null.
///
/// # Safety
/// Strings must be NUL-terminated; `out_triple` must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_triple_parse(
    text: *const c_char,
    base_dir: *const c_char,
    out_triple: *mut *mut ArtinTriple,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_triple, "out_triple")?;
        *slot = ptr::null_mut();
        let base = if base_dir.is_null() { None } else { Some(Path::new(c_str(base_dir, "base_dir")?)) };
        let t = parse_triple(c_str(text, "text")?, base)?.resolve()?;
        *slot = Box::into_raw(Box::new(ArtinTriple(t)));
        Ok(ArtinStatus::Ok)
    })
}

/// # Safety
/// `triple` must come from `artin_triple_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn artin_triple_free(triple: *mut ArtinTriple) {
    if !triple.is_null() {
        drop(Box::from_raw(triple));
    }
}

/// Free-extension verdict of a triple.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_verify_extension(triple: *const ArtinTriple, verdict: *mut bool) -> ArtinStatus {
    guard(|| {
        *out(verdict, "verdict")? = verify_free_extension(&handle(triple, "triple")?.0)?.verdict;
        Ok(ArtinStatus::Ok)
    })
}

/// Compare generic Jordan types of `C` and `A (x) B`. Returns
/// `ARTIN_STATUS_FALSIFICATION` when `P_C < P_{A (x) B}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn artin_theorem_check(
    triple: *const ArtinTriple,
    samples: usize,
    seed: u64,
    outcome: *mut ArtinTheoremOutcome,
) -> ArtinStatus {
    guard(|| {
        let r = theorem_check(&handle(triple, "triple")?.0, samples, seed)?;
        let slot = out(outcome, "outcome")?;
        *slot = match r.outcome {
            TheoremOutcome::Greater => ArtinTheoremOutcome::Greater,
            TheoremOutcome::Equal => ArtinTheoremOutcome::Equal,
            TheoremOutcome::Unresolved => ArtinTheoremOutcome::Unresolved,
            TheoremOutcome::Falsified => ArtinTheoremOutcome::Falsified,
        };
        if r.outcome == TheoremOutcome::Falsified {
            set_error(format!("P_C = {} < P_(A(x)B) = {}", r.p_c, r.p_tensor));
            return Ok(ArtinStatus::Falsification);
        }
        Ok(ArtinStatus::Ok)
    })
}

/// Copy of the calling thread's last error message, or null. Free with
/// `artin_string_free`.
#[no_mangle]
pub extern "C" fn artin_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn artin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn artin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
