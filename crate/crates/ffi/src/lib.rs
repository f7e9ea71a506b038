//! C ABI for the partition solver.
//!
//! Instances and results cross the boundary as opaque handles that must be
//! released with the matching `*_free` function. Every fallible call returns
//! an [`SpStatus`]; on failure a description is available from
//! [`sp_last_error`] on the same thread. Indices are zero-based here, unlike
//! the command-line text formats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use setpart::baselines::{greedy_partition, karmarkar_karp, BaselineReport};
use setpart::io::{parse_instance, ReportDocument};
use setpart::optimality::is_locally_2opt;
use setpart::oracle::{optimal_diff, ENUM_LIMIT};
use setpart::partition::complement;
use setpart::{solve, Engine, Error, InitPolicy, Instance, SolverConfig, TieBreak};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    TooLarge = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

pub const SP_INIT_ROUND_ROBIN: u32 = 0;
pub const SP_INIT_FIRST_HALF: u32 = 1;
pub const SP_INIT_RANDOM: u32 = 2;

pub const SP_TIE_NO_FLIP: u32 = 0;
pub const SP_TIE_SMALLEST: u32 = 1;

pub const SP_ENGINE_SCAN: u32 = 0;
pub const SP_ENGINE_REFERENCE: u32 = 1;

/// Solver options. Fill with [`sp_config_default`] and adjust.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SpConfig {
    /// One of the `SP_INIT_*` constants.
    pub init: u32,
    /// Seed for `SP_INIT_RANDOM`.
    pub seed: u64,
    /// One of the `SP_TIE_*` constants.
    pub tie: u32,
    /// One of the `SP_ENGINE_*` constants.
    pub engine: u32,
    pub trace: bool,
}

/// Opaque instance handle.
pub struct SpInstance {
    inner: Instance,
}

/// Opaque result handle shared by the solver, the baselines and the oracle.
pub struct SpReport {
    side1: Vec<usize>,
    side2: Vec<usize>,
    final_diff: String,
    traverses: u64,
    swaps: u64,
    doc: ReportDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SpStatus, msg: impl Into<String>) -> SpStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::Parse { .. } | Error::Report(_) => SpStatus::ParseError,
        Error::TooLarge { .. } => SpStatus::TooLarge,
        Error::InvalidPartition(_) | Error::InvalidSpec(_) => SpStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> SpStatus) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(SpStatus::Panic, "internal panic"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn decode_config(c: &SpConfig) -> Result<SolverConfig, String> {
    Ok(SolverConfig {
        init_policy: match c.init {
            SP_INIT_ROUND_ROBIN => InitPolicy::RoundRobinDescending,
            SP_INIT_FIRST_HALF => InitPolicy::FirstHalf,
            SP_INIT_RANDOM => InitPolicy::SeededRandom(c.seed),
            other => return Err(format!("unknown init policy {other}")),
        },
        tie_break: match c.tie {
            SP_TIE_NO_FLIP => TieBreak::PreferNoSignFlip,
            SP_TIE_SMALLEST => TieBreak::PreferSmallest,
            other => return Err(format!("unknown tie rule {other}")),
        },
        engine: match c.engine {
            SP_ENGINE_SCAN => Engine::Scan,
            SP_ENGINE_REFERENCE => Engine::Reference,
            other => return Err(format!("unknown engine {other}")),
        },
        collect_trace: c.trace,
    })
}

/// Writes the default configuration to `out`.
///
/// # Safety
/// `out` must be null or point to writable memory for one `SpConfig`.
#[no_mangle]
pub unsafe extern "C" fn sp_config_default(out: *mut SpConfig) -> SpStatus {
    if out.is_null() {
        return fail(SpStatus::NullArgument, "out is null");
    }
    out.write(SpConfig {
        init: SP_INIT_ROUND_ROBIN,
        seed: 0,
        tie: SP_TIE_NO_FLIP,
        engine: SP_ENGINE_SCAN,
        trace: false,
    });
    SpStatus::Ok
}

/// Parses an instance in the one-value-per-line text format.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sp_instance_parse(text: *const c_char, out: *mut *mut SpInstance) -> SpStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(SpStatus::NullArgument, "text or out is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(SpStatus::InvalidUtf8, "instance text is not UTF-8");
        };
        match parse_instance(text) {
            Ok(inner) => {
                out.write(Box::into_raw(Box::new(SpInstance { inner })));
                SpStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Builds an instance from integer mantissas; the real values are
/// `values[i] / 10^scale_exp`.
///
/// # Safety
/// `values` must point to `len` readable integers (or be null when `len` is
/// 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_instance_from_i64(
    values: *const i64,
    len: usize,
    scale_exp: u32,
    out: *mut *mut SpInstance,
) -> SpStatus {
    guard(|| {
        if out.is_null() || (values.is_null() && len > 0) {
            return fail(SpStatus::NullArgument, "values or out is null");
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(values, len)
        };
        let inner = Instance::from_i64s(slice).with_scale_exp(scale_exp);
        out.write(Box::into_raw(Box::new(SpInstance { inner })));
        SpStatus::Ok
    })
}

/// Number of values in the instance, 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_instance_len(inst: *const SpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.len())
}

/// # Safety
/// `inst` must be null or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn sp_instance_free(inst: *mut SpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

fn baseline_report(inst: &Instance, r: BaselineReport, elapsed_ms: f64) -> SpReport {
    SpReport {
        final_diff: inst.render(&r.final_diff),
        doc: ReportDocument::from_baseline(inst, &r, elapsed_ms),
        side1: r.side1_indices,
        side2: r.side2_indices,
        traverses: 0,
        swaps: 0,
    }
}

/// Runs the local search. A null `config` means the defaults.
///
/// # Safety
/// `inst` must be a live handle, `config` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_solve(
    inst: *const SpInstance,
    config: *const SpConfig,
    out: *mut *mut SpReport,
) -> SpStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(SpStatus::NullArgument, "inst or out is null");
        };
        let config = match config.as_ref().map(decode_config) {
            None => SolverConfig::default(),
            Some(Ok(c)) => c,
            Some(Err(msg)) => return fail(SpStatus::InvalidArgument, msg),
        };
        let inst = &inst.inner;
        let r = solve(inst, &config);
        let report = SpReport {
            final_diff: inst.render(&r.final_diff),
            doc: ReportDocument::from_solver(inst, &r, &config),
            traverses: r.traverses,
            swaps: r.swaps,
            side1: r.side1_indices,
            side2: r.side2_indices,
        };
        out.write(Box::into_raw(Box::new(report)));
        SpStatus::Ok
    })
}

/// Greedy baseline.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_greedy(inst: *const SpInstance, out: *mut *mut SpReport) -> SpStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(SpStatus::NullArgument, "inst or out is null");
        };
        let t = Instant::now();
        let r = greedy_partition(&inst.inner);
        let report = baseline_report(&inst.inner, r, t.elapsed().as_secs_f64() * 1e3);
        out.write(Box::into_raw(Box::new(report)));
        SpStatus::Ok
    })
}

/// Karmarkar-Karp differencing baseline.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_karmarkar_karp(inst: *const SpInstance, out: *mut *mut SpReport) -> SpStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(SpStatus::NullArgument, "inst or out is null");
        };
        let t = Instant::now();
        let r = karmarkar_karp(&inst.inner);
        let report = baseline_report(&inst.inner, r, t.elapsed().as_secs_f64() * 1e3);
        out.write(Box::into_raw(Box::new(report)));
        SpStatus::Ok
    })
}

/// Exact optimum; exhaustive up to 24 values, meet in the middle up to 40.
/// Larger instances return `TooLarge`.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_oracle(inst: *const SpInstance, out: *mut *mut SpReport) -> SpStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out.is_null()) else {
            return fail(SpStatus::NullArgument, "inst or out is null");
        };
        let inst = &inst.inner;
        let t = Instant::now();
        match optimal_diff(inst) {
            Ok(r) => {
                let method = if inst.len() <= ENUM_LIMIT {
                    "oracle_enum"
                } else {
                    "oracle_mitm"
                };
                let side2 = r.witness_side2(inst.len());
                let report = SpReport {
                    final_diff: inst.render(&r.optimal_diff),
                    doc: ReportDocument::from_oracle(inst, method, &r, t.elapsed().as_secs_f64() * 1e3),
                    side1: r.witness_side1,
                    side2,
                    traverses: 0,
                    swaps: 0,
                };
                out.write(Box::into_raw(Box::new(report)));
                SpStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Decides local 2-optimality of the partition whose side 1 is `side1`
/// (zero-based, the rest is side 2). Writes the verdict to `out_optimal`.
///
/// # Safety
/// `inst` must be a live handle, `side1` readable for `len` entries (or null
/// when `len` is 0) and `out_optimal` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_check(
    inst: *const SpInstance,
    side1: *const usize,
    len: usize,
    out_optimal: *mut bool,
) -> SpStatus {
    guard(|| {
        let (Some(inst), false) = (inst.as_ref(), out_optimal.is_null()) else {
            return fail(SpStatus::NullArgument, "inst or out_optimal is null");
        };
        if side1.is_null() && len > 0 {
            return fail(SpStatus::NullArgument, "side1 is null");
        }
        let side1 = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(side1, len)
        };
        let result =
            complement(inst.inner.len(), side1).and_then(|(a, b)| is_locally_2opt(&inst.inner, &a, &b));
        match result {
            Ok(v) => {
                out_optimal.write(v.is_locally_2opt);
                SpStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_report_traverses(report: *const SpReport) -> u64 {
    report.as_ref().map_or(0, |r| r.traverses)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_report_swaps(report: *const SpReport) -> u64 {
    report.as_ref().map_or(0, |r| r.swaps)
}

/// `|S1 - S2|` as a decimal string in the instance's scale. Free with
/// [`sp_string_free`]. Null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_report_final_diff(report: *const SpReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.final_diff.clone()))
}

/// Copies the indices of `side` (1 or 2) into `buf`. `out_len` always receives
/// the full count; `BufferTooSmall` is returned when `cap` is less than that.
///
/// # Safety
/// `report` must be a live handle, `buf` writable for `cap` entries (or null
/// when `cap` is 0) and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_report_side(
    report: *const SpReport,
    side: u32,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> SpStatus {
    let (Some(r), false) = (report.as_ref(), out_len.is_null()) else {
        return fail(SpStatus::NullArgument, "report or out_len is null");
    };
    let indices = match side {
        1 => &r.side1,
        2 => &r.side2,
        other => {
            return fail(
                SpStatus::InvalidArgument,
                format!("side must be 1 or 2, got {other}"),
            )
        }
    };
    out_len.write(indices.len());
    if cap < indices.len() {
        return fail(
            SpStatus::BufferTooSmall,
            format!("{} indices do not fit in {cap}", indices.len()),
        );
    }
    if !indices.is_empty() {
        if buf.is_null() {
            return fail(SpStatus::NullArgument, "buf is null");
        }
        ptr::copy_nonoverlapping(indices.as_ptr(), buf, indices.len());
    }
    SpStatus::Ok
}

/// The JSON report document (one-based indices). Free with [`sp_string_free`].
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_report_to_json(report: *const SpReport) -> *mut c_char {
    report
        .as_ref()
        .map_or(ptr::null_mut(), |r| into_c_string(r.doc.to_json()))
}

/// # Safety
/// `report` must be null or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn sp_report_free(report: *mut SpReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
