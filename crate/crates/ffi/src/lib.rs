//! C interface.
//!
//! Every fallible function returns a [`HopcalcStatus`]; on failure a message
//! is available from [`hopcalc_last_error`] on the same thread. Objects are
//! opaque handles released by their `_free` function, and strings returned by
//! the library are released with [`hopcalc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopcalc::adem::{self, AdmissibleSum};
use hopcalc::chains::{verify_nilcond, ChainComplex, ChainSpec};
use hopcalc::gf2::binom_mod2;
use hopcalc::sphere::{self, GradedVectorSpace};
use hopcalc::words::{ParsedWord, SourceDegree};
use hopcalc::{Error, ErrorKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopcalcStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Precondition = 3,
    SearchCap = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// A sum of admissible δ-words.
pub struct HopcalcSum(AdmissibleSum);

/// A chain complex built from its JSON description.
pub struct HopcalcChainComplex(ChainComplex);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(err: Error) -> HopcalcStatus {
    set_error(err.to_string());
    match err.kind() {
        ErrorKind::Parse => HopcalcStatus::Parse,
        ErrorKind::Precondition => HopcalcStatus::Precondition,
        ErrorKind::SearchCap => HopcalcStatus::SearchCap,
    }
}

fn guard(body: impl FnOnce() -> Result<(), HopcalcStatus>) -> HopcalcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HopcalcStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            HopcalcStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, HopcalcStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(HopcalcStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        HopcalcStatus::Parse
    })
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, HopcalcStatus> {
    p.as_ref().ok_or_else(|| {
        set_error(format!("{what} is null"));
        HopcalcStatus::NullArgument
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), HopcalcStatus> {
    if out.is_null() {
        set_error("output pointer is null");
        return Err(HopcalcStatus::NullArgument);
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("NUL removed")
        .into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn hopcalc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parity of `binom(h, k)`: 1 if odd, 0 if even.
#[no_mangle]
pub extern "C" fn hopcalc_binom_mod2(h: u64, k: u64) -> u8 {
    binom_mod2(h, k).is_one() as u8
}

/// Normal form of a word such as `"d5 d4"` or `"a1 a1 @3"`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_normalize(
    word: *const c_char,
    out: *mut *mut HopcalcSum,
) -> HopcalcStatus {
    guard(|| {
        let parsed: ParsedWord = text(word, "word")?.parse().map_err(fail)?;
        let delta = parsed.to_delta().map_err(fail)?;
        let sum = Box::new(HopcalcSum(adem::normalize(&delta)));
        write_out(out, Box::into_raw(sum))
    })
}

/// `outer ∘ inner`, normalized.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sum_compose(
    outer: *const HopcalcSum,
    inner: *const HopcalcSum,
    out: *mut *mut HopcalcSum,
) -> HopcalcStatus {
    guard(|| {
        let outer = handle(outer, "outer")?;
        let inner = handle(inner, "inner")?;
        let sum = Box::new(HopcalcSum(adem::compose(&outer.0, &inner.0)));
        write_out(out, Box::into_raw(sum))
    })
}

/// Number of terms; 0 for null.
///
/// # Safety
/// `sum` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sum_len(sum: *const HopcalcSum) -> usize {
    sum.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the indices of term `index` (outermost first) into `buf`.
///
/// `len_out` always receives the word length; if it exceeds `cap` nothing is
/// copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `sum` must be live, `buf` writable for `cap` entries, `len_out` writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sum_word(
    sum: *const HopcalcSum,
    index: usize,
    buf: *mut u32,
    cap: usize,
    len_out: *mut usize,
) -> HopcalcStatus {
    guard(|| {
        let sum = handle(sum, "sum")?;
        let Some(word) = sum.0.iter().nth(index) else {
            set_error(format!("term index {index} out of range"));
            return Err(HopcalcStatus::Precondition);
        };
        let indices = word.indices();
        write_out(len_out, indices.len())?;
        if indices.len() > cap {
            set_error("buffer too small");
            return Err(HopcalcStatus::BufferTooSmall);
        }
        if !indices.is_empty() {
            if buf.is_null() {
                set_error("buffer is null");
                return Err(HopcalcStatus::NullArgument);
            }
            ptr::copy_nonoverlapping(indices.as_ptr(), buf, indices.len());
        }
        Ok(())
    })
}

/// The sum as text, e.g. `"d6 d3"`, or null for a null handle.
///
/// # Safety
/// `sum` must be null or live. Release the result with [`hopcalc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sum_to_string(sum: *const HopcalcSum) -> *mut c_char {
    sum.as_ref()
        .map_or(ptr::null_mut(), |s| owned_string(s.0.to_string()))
}

/// # Safety
/// `sum` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sum_free(sum: *mut HopcalcSum) {
    if !sum.is_null() {
        drop(Box::from_raw(sum));
    }
}

/// Dimensions of `π_t S(n)` for `t = 0..=max_degree` into `out`, which must
/// hold `max_degree + 1` entries.
///
/// # Safety
/// `out` must be writable for `out_len` entries.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_sphere_poincare(
    n: u32,
    max_degree: u32,
    out: *mut u64,
    out_len: usize,
) -> HopcalcStatus {
    guard(|| {
        let n = SourceDegree::new(n).map_err(fail)?;
        if out.is_null() {
            set_error("output buffer is null");
            return Err(HopcalcStatus::NullArgument);
        }
        if out_len <= max_degree as usize {
            set_error(format!("need {} entries", max_degree as usize + 1));
            return Err(HopcalcStatus::BufferTooSmall);
        }
        let series = sphere::sphere_poincare(n, max_degree);
        let coeffs = series.coefficients();
        ptr::copy_nonoverlapping(coeffs.as_ptr(), out, coeffs.len());
        Ok(())
    })
}

/// Least `s` with `θ(s,t) δ_i = 0`. A `cap` of 0 selects the default `t + 16`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_annihilation_order(
    i: u32,
    t: u32,
    cap: u32,
    out: *mut u32,
) -> HopcalcStatus {
    guard(|| {
        let cap = if cap == 0 { adem::default_cap(t) } else { cap };
        let s = adem::annihilation_order(i, t, cap).map_err(fail)?;
        write_out(out, s)
    })
}

/// E¹ page of `W` (`{"generators":[{"name","degree"}]}`) as a JSON array of
/// `{"s","t","dim","basis"}` rows.
///
/// # Safety
/// `w_json` must be a NUL-terminated string; `out` must be writable. Release
/// the result with [`hopcalc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hopcalc_e1_page_json(
    w_json: *const c_char,
    s_max: u64,
    t_max: u32,
    out: *mut *mut c_char,
) -> HopcalcStatus {
    guard(|| {
        let space = GradedVectorSpace::from_json(text(w_json, "w_json")?).map_err(fail)?;
        let page = sphere::e1_page(&space, s_max, t_max).map_err(fail)?;
        let rows: Vec<serde_json::Value> = page
            .entries()
            .map(|((s, t), basis)| {
                let labels: Vec<String> = basis.iter().map(ToString::to_string).collect();
                serde_json::json!({ "s": s, "t": t, "dim": labels.len(), "basis": labels })
            })
            .collect();
        let json = serde_json::to_string(&rows).expect("JSON values serialize");
        write_out(out, owned_string(json))
    })
}

/// Builds a chain complex from `{"symbols":[…],"ring":{"vars","trunc"}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_chain_complex_from_json(
    json: *const c_char,
    out: *mut *mut HopcalcChainComplex,
) -> HopcalcStatus {
    guard(|| {
        let spec = ChainSpec::from_json(text(json, "json")?).map_err(fail)?;
        let complex = spec.build().map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(HopcalcChainComplex(complex))))
    })
}

/// # Safety
/// `complex` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_chain_complex_free(complex: *mut HopcalcChainComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Least `r` with `γ₂^r(u) = 0` for an element such as `"e1*x"`.
///
/// # Safety
/// `complex` must be live, `element` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_chain_nilpotence_order(
    complex: *const HopcalcChainComplex,
    element: *const c_char,
    out: *mut u32,
) -> HopcalcStatus {
    guard(|| {
        let c = &handle(complex, "complex")?.0;
        let u = c.parse(text(element, "element")?).map_err(fail)?;
        let r = c.gamma2_nilpotence_order(&u).map_err(fail)?;
        write_out(out, r)
    })
}

/// Checks `∂ϑ^r(u) = γ₂^r(∂u)` for `r = 1..=r_max`; `all_hold` receives the
/// verdict.
///
/// # Safety
/// `complex` must be live, `symbol` NUL-terminated, `all_hold` writable.
#[no_mangle]
pub unsafe extern "C" fn hopcalc_chain_verify_nilcond(
    complex: *const HopcalcChainComplex,
    symbol: *const c_char,
    r_max: u32,
    all_hold: *mut bool,
) -> HopcalcStatus {
    guard(|| {
        let c = &handle(complex, "complex")?.0;
        let name = text(symbol, "symbol")?;
        let id = c
            .symbol_id(name)
            .ok_or_else(|| fail(Error::Parse(format!("unknown symbol `{name}`"))))?;
        let report = verify_nilcond(c, id, r_max).map_err(fail)?;
        write_out(all_hold, report.all_hold())
    })
}
