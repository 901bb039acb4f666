//! C ABI over the satnorm toolkit.
//!
//! Conventions: opaque handles for realizations, integer status codes
//! mirroring the CLI exit codes (0 ok / normal, 1 witness found / not
//! normal, 2 verification failure, 64 invalid input, 70 internal error),
//! and JSON payloads as heap-allocated C strings released with
//! [`sn_string_free`]. On any non-ok status, [`sn_last_error`] returns a
//! description valid until the next call on the same thread.

use satnorm::certs::{
    classify, verify_certificate, verify_corpus, ClassifyOptions, Corpus, CorpusCheckConfig,
    NormalityStatus,
};
use satnorm::error::Error;
use satnorm::linalg::ExactVector;
use satnorm::roots::Realization;
use satnorm::saturation::{
    is_hereditarily_normal, is_saturated, HereditaryOptions, HereditaryStatus, SaturationOptions,
    SaturationStatus, VectorSet,
};
use satnorm::weights::{enumerate, member};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes shared with the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SnStatus {
    Ok = 0,
    Witness = 1,
    VerifyFailed = 2,
    InvalidInput = 64,
    Internal = 70,
}

/// Opaque root-system handle.
pub struct SnRealization {
    inner: Realization,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_for(err: &Error) -> SnStatus {
    match err {
        Error::LemmaContradiction { .. } | Error::MalformedCertificate { .. } => {
            SnStatus::VerifyFailed
        }
        _ => SnStatus::InvalidInput,
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', ""))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> SnStatus {
    if out.is_null() {
        set_last_error("output pointer is null");
        return SnStatus::InvalidInput;
    }
    *out = to_c_string(s);
    SnStatus::Ok
}

fn guard<F: FnOnce() -> SnStatus>(f: F) -> SnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_last_error("internal panic");
            SnStatus::Internal
        }
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next library call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn sn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn sn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn sn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the realization for a root system id such as "E8" or "G2".
///
/// # Safety
/// `id` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns the handle (free with
/// [`sn_realization_free`]).
#[no_mangle]
pub unsafe extern "C" fn sn_realization_new(
    id: *const c_char,
    out: *mut *mut SnRealization,
) -> SnStatus {
    guard(|| {
        if id.is_null() || out.is_null() {
            set_last_error("null pointer argument");
            return SnStatus::InvalidInput;
        }
        let text = match CStr::from_ptr(id).to_str() {
            Ok(t) => t,
            Err(_) => {
                set_last_error("id is not valid UTF-8");
                return SnStatus::InvalidInput;
            }
        };
        match satnorm::roots::build_named(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SnRealization { inner }));
                SnStatus::Ok
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// # Safety
/// `r` must come from [`sn_realization_new`] (or be null).
#[no_mangle]
pub unsafe extern "C" fn sn_realization_free(r: *mut SnRealization) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

unsafe fn realization<'a>(r: *const SnRealization) -> Option<&'a Realization> {
    (!r.is_null()).then(|| &(*r).inner)
}

unsafe fn hw_weight(
    rs: &Realization,
    hw: *const i64,
    hw_len: usize,
) -> Result<satnorm::roots::Weight, Error> {
    if hw.is_null() {
        return Err(Error::InvalidInput("null highest-weight pointer".into()));
    }
    let coords = std::slice::from_raw_parts(hw, hw_len);
    rs.weight_from_fw_coords(coords)
}

/// JSON dump of the realization (the `roots` CLI payload).
///
/// # Safety
/// `r` from [`sn_realization_new`]; `out_json` valid; free the result with
/// [`sn_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sn_roots_json(
    r: *const SnRealization,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let rs = match realization(r) {
            Some(rs) => rs,
            None => {
                set_last_error("null realization");
                return SnStatus::InvalidInput;
            }
        };
        match serde_json::to_string_pretty(&rs.dump()) {
            Ok(s) => write_out(out_json, s),
            Err(e) => {
                set_last_error(&e.to_string());
                SnStatus::Internal
            }
        }
    })
}

/// Enumerates M(lambda) for a highest weight in fundamental-weight
/// coordinates; JSON payload out.
///
/// # Safety
/// Pointer contracts as in [`sn_roots_json`]; `hw` points at `hw_len` ints.
#[no_mangle]
pub unsafe extern "C" fn sn_weights_json(
    r: *const SnRealization,
    hw: *const i64,
    hw_len: usize,
    limit: usize,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let rs = match realization(r) {
            Some(rs) => rs,
            None => {
                set_last_error("null realization");
                return SnStatus::InvalidInput;
            }
        };
        let run = || -> Result<String, Error> {
            let lam = hw_weight(rs, hw, hw_len)?;
            let ws = enumerate(rs, &lam, limit)?;
            Ok(serde_json::to_string_pretty(&ws)?)
        };
        match run() {
            Ok(s) => write_out(out_json, s),
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Membership proof record for `weight_csv` (ambient coordinates, comma
/// separated rationals) against M(lambda). Status `Witness` means "not a
/// member", with the proof record in the payload either way.
///
/// # Safety
/// Pointer contracts as above; `weight_csv` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn sn_member_json(
    r: *const SnRealization,
    hw: *const i64,
    hw_len: usize,
    weight_csv: *const c_char,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let rs = match realization(r) {
            Some(rs) => rs,
            None => {
                set_last_error("null realization");
                return SnStatus::InvalidInput;
            }
        };
        if weight_csv.is_null() {
            set_last_error("null weight string");
            return SnStatus::InvalidInput;
        }
        let run = || -> Result<(bool, String), Error> {
            let lam = hw_weight(rs, hw, hw_len)?;
            let text = CStr::from_ptr(weight_csv)
                .to_str()
                .map_err(|_| Error::InvalidInput("weight string is not UTF-8".into()))?;
            let parts: Vec<&str> = text.split(',').collect();
            let v = ExactVector::parse(&parts)?;
            let mu = rs.weight(v)?;
            let proof = member(rs, &lam, &mu)?;
            let is_member = proof.is_member;
            Ok((is_member, serde_json::to_string_pretty(&proof)?))
        };
        match run() {
            Ok((is_member, s)) => {
                let st = write_out(out_json, s);
                if st != SnStatus::Ok {
                    return st;
                }
                if is_member {
                    SnStatus::Ok
                } else {
                    SnStatus::Witness
                }
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Classification verdict for the highest weight; status `Ok` = normal,
/// `Witness` = verified not normal.
///
/// # Safety
/// Pointer contracts as above.
#[no_mangle]
pub unsafe extern "C" fn sn_classify_json(
    r: *const SnRealization,
    hw: *const i64,
    hw_len: usize,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let rs = match realization(r) {
            Some(rs) => rs,
            None => {
                set_last_error("null realization");
                return SnStatus::InvalidInput;
            }
        };
        let run = || -> Result<(NormalityStatus, String), Error> {
            let lam = hw_weight(rs, hw, hw_len)?;
            let verdict = classify(rs, &lam, &ClassifyOptions::default())?;
            let status = verdict.status;
            Ok((status, serde_json::to_string_pretty(&verdict)?))
        };
        match run() {
            Ok((status, s)) => {
                let st = write_out(out_json, s);
                if st != SnStatus::Ok {
                    return st;
                }
                match status {
                    NormalityStatus::Normal => SnStatus::Ok,
                    NormalityStatus::NotNormal => SnStatus::Witness,
                }
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

fn parse_set(set_json: *const c_char) -> Result<VectorSet, Error> {
    if set_json.is_null() {
        return Err(Error::InvalidInput("null set pointer".into()));
    }
    let text = unsafe { CStr::from_ptr(set_json) }
        .to_str()
        .map_err(|_| Error::InvalidInput("set JSON is not UTF-8".into()))?;
    let raw: VectorSet = serde_json::from_str(text)?;
    VectorSet::new(raw.dim, raw.vectors)
}

/// Saturation decision on a `{"dim": n, "vectors": [...]}` JSON set; status
/// `Ok` = saturated, `Witness` = not saturated (witness in the payload).
///
/// # Safety
/// `set_json` NUL-terminated; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn sn_saturated_json(
    set_json: *const c_char,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let run = || -> Result<(SaturationStatus, String), Error> {
            let set = parse_set(set_json)?;
            let verdict = is_saturated(&set, &SaturationOptions::default())?;
            Ok((verdict.status, serde_json::to_string_pretty(&verdict)?))
        };
        match run() {
            Ok((status, s)) => {
                let st = write_out(out_json, s);
                if st != SnStatus::Ok {
                    return st;
                }
                match status {
                    SaturationStatus::Saturated => SnStatus::Ok,
                    SaturationStatus::NotSaturated => SnStatus::Witness,
                }
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Hereditary-normality decision on a JSON set; status `Ok` = normal,
/// `Witness` = violating subset found.
///
/// # Safety
/// As in [`sn_saturated_json`].
#[no_mangle]
pub unsafe extern "C" fn sn_hereditary_json(
    set_json: *const c_char,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let run = || -> Result<(bool, String), Error> {
            let set = parse_set(set_json)?;
            let verdict = is_hereditarily_normal(&set, None, &HereditaryOptions::default())?;
            let normal = matches!(verdict.status, HereditaryStatus::Normal);
            Ok((normal, serde_json::to_string_pretty(&verdict)?))
        };
        match run() {
            Ok((normal, s)) => {
                let st = write_out(out_json, s);
                if st != SnStatus::Ok {
                    return st;
                }
                if normal {
                    SnStatus::Ok
                } else {
                    SnStatus::Witness
                }
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}

/// Verifies the certificate corpus (or a single certificate when `case_id`
/// is non-null). Pass 0 for either sample count to use the defaults.
/// `Ok` = everything passed, `VerifyFailed` = at least one entry failed.
///
/// # Safety
/// `case_id` may be null; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn sn_verify_paper_json(
    case_id: *const c_char,
    lemma_samples: usize,
    random_per_coset: usize,
    out_json: *mut *mut c_char,
) -> SnStatus {
    guard(|| {
        let run = || -> Result<(bool, String), Error> {
            let corpus = Corpus::load_default()?;
            if !case_id.is_null() {
                let id = CStr::from_ptr(case_id)
                    .to_str()
                    .map_err(|_| Error::InvalidInput("case id is not UTF-8".into()))?;
                let cert = corpus.get(id)?;
                let rs = satnorm::roots::build(cert.system)?;
                let report = verify_certificate(&rs, cert, None)?;
                return Ok((report.pass, serde_json::to_string_pretty(&report)?));
            }
            let defaults = CorpusCheckConfig::default();
            let cfg = CorpusCheckConfig {
                lemma_samples: if lemma_samples == 0 {
                    defaults.lemma_samples
                } else {
                    lemma_samples
                },
                random_per_coset: if random_per_coset == 0 {
                    defaults.random_per_coset
                } else {
                    random_per_coset
                },
                ..defaults
            };
            let report = verify_corpus(&corpus, &cfg);
            Ok((report.pass, serde_json::to_string_pretty(&report)?))
        };
        match run() {
            Ok((pass, s)) => {
                let st = write_out(out_json, s);
                if st != SnStatus::Ok {
                    return st;
                }
                if pass {
                    SnStatus::Ok
                } else {
                    SnStatus::VerifyFailed
                }
            }
            Err(e) => {
                set_last_error(&e.to_string());
                status_for(&e)
            }
        }
    })
}
