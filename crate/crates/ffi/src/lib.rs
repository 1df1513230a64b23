//! C ABI for `jobroute`.
//!
//! Objects are opaque handles created by `*_new`/`*_load`/`*_generate`
//! functions and released with the matching `*_free`. Fallible calls return a
//! [`JrStatus`] and write their result through an out-pointer; on failure the
//! message is available from [`jr_last_error_message`] on the same thread.
//!
//! Handles are immutable after creation and may be shared between threads.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::sync::Arc;

use jobroute::algorithms::ScheduleFile;
use jobroute::graph::GraphError;
use jobroute::instance::{load_instance_with_graph, save_instance, DatasetInfo, InstanceError};
use jobroute::{
    generate_instance, load_graph, solve, validate_schedule, Algorithm, GenParams, GraphFormat,
    MetricsMode, OracleLimits, ProblemInstance, RoadNetwork, Schedule, SolveOptions, TravelMetrics,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    /// The exact oracle refused the instance.
    Oracle = 5,
    /// A schedule broke a constraint of its instance.
    Invalid = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JrGraphFormat {
    EdgeList = 0,
    Oldenburg = 1,
    Mtx = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JrMetricsMode {
    OnDemand = 0,
    FullApsp = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JrAlgorithm {
    Bfs = 0,
    Nn = 1,
    Random = 2,
    Ugreedy = 3,
    Oracle = 4,
}

/// Generator parameters. Start from [`jr_gen_params_default`].
/// A NaN `budget` or `window_start` means "use the default".
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct JrGenParams {
    pub t_min: f64,
    pub t_max: f64,
    pub util_min: f64,
    pub util_max: f64,
    pub dur_min: f64,
    pub dur_max: f64,
    pub budget: f64,
    pub window_start: f64,
    pub window_end: f64,
    pub has_worker_start: bool,
    pub worker_start: u64,
}

pub struct JrNetwork(Arc<RoadNetwork>);

pub struct JrMetrics(Arc<TravelMetrics>);

pub struct JrInstance(ProblemInstance);

pub struct JrSchedule {
    schedule: Schedule,
    algorithm: Algorithm,
    seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', "?");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type FfiResult<T> = Result<T, (JrStatus, String)>;

fn graph_status(e: &GraphError) -> JrStatus {
    match e {
        GraphError::Io { .. } => JrStatus::Io,
        GraphError::InvalidTimeFactor(_) | GraphError::UnknownLabel(_) => JrStatus::InvalidArgument,
        _ => JrStatus::Parse,
    }
}

fn graph_err(e: GraphError) -> (JrStatus, String) {
    (graph_status(&e), e.to_string())
}

fn instance_err(e: InstanceError) -> (JrStatus, String) {
    let status = match &e {
        InstanceError::Io { .. } => JrStatus::Io,
        InstanceError::Graph(g) => graph_status(g),
        InstanceError::Schema { .. } | InstanceError::GraphMismatch { .. } => JrStatus::Parse,
        _ => JrStatus::InvalidArgument,
    };
    (status, e.to_string())
}

/// Run `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> JrStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JrStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            JrStatus::Panic
        }
    }
}

fn null(what: &str) -> (JrStatus, String) {
    (JrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> FfiResult<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn path_arg(p: *const c_char, what: &str) -> FfiResult<PathBuf> {
    if p.is_null() {
        return Err(null(what));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (JrStatus::InvalidArgument, format!("{what} is not UTF-8")))?;
    Ok(PathBuf::from(s))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

impl From<JrGraphFormat> for GraphFormat {
    fn from(f: JrGraphFormat) -> Self {
        match f {
            JrGraphFormat::EdgeList => GraphFormat::EdgeList,
            JrGraphFormat::Oldenburg => GraphFormat::Oldenburg,
            JrGraphFormat::Mtx => GraphFormat::Mtx,
        }
    }
}

impl From<JrMetricsMode> for MetricsMode {
    fn from(m: JrMetricsMode) -> Self {
        match m {
            JrMetricsMode::OnDemand => MetricsMode::OnDemand,
            JrMetricsMode::FullApsp => MetricsMode::FullApsp,
        }
    }
}

impl From<JrAlgorithm> for Algorithm {
    fn from(a: JrAlgorithm) -> Self {
        match a {
            JrAlgorithm::Bfs => Algorithm::Bfs,
            JrAlgorithm::Nn => Algorithm::Nn,
            JrAlgorithm::Random => Algorithm::Random,
            JrAlgorithm::Ugreedy => Algorithm::Ugreedy,
            JrAlgorithm::Oracle => Algorithm::Oracle,
        }
    }
}

impl From<&JrGenParams> for GenParams {
    fn from(p: &JrGenParams) -> Self {
        GenParams {
            t_range: (p.t_min, p.t_max),
            util_range: (p.util_min, p.util_max),
            duration_range: (p.dur_min, p.dur_max),
            budget: (!p.budget.is_nan()).then_some(p.budget),
            window: (!p.window_start.is_nan()).then_some((p.window_start, p.window_end)),
            worker_start: p.has_worker_start.then_some(p.worker_start),
        }
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn jr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn jr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Free a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn jr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `path` is a NUL-terminated UTF-8 string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_network_load(
    path: *const c_char,
    format: JrGraphFormat,
    out: *mut *mut JrNetwork,
) -> JrStatus {
    guard(|| {
        let path = path_arg(path, "path")?;
        let net = load_graph(&path, format.into()).map_err(graph_err)?;
        put(out, boxed(JrNetwork(Arc::new(net))), "out")
    })
}

/// Build a network from `len` undirected edges `(us[i], vs[i], weights[i])`.
///
/// # Safety
/// The three arrays hold at least `len` elements; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_network_from_edges(
    us: *const u64,
    vs: *const u64,
    weights: *const f64,
    len: usize,
    out: *mut *mut JrNetwork,
) -> JrStatus {
    guard(|| {
        if len > 0 && (us.is_null() || vs.is_null() || weights.is_null()) {
            return Err(null("edge array"));
        }
        let edges: Vec<(u64, u64, f64)> = (0..len)
            .map(|i| (*us.add(i), *vs.add(i), *weights.add(i)))
            .collect();
        let net = RoadNetwork::from_edges(&edges).map_err(graph_err)?;
        put(out, boxed(JrNetwork(Arc::new(net))), "out")
    })
}

/// Number of POIs, or 0 for NULL.
///
/// # Safety
/// `net` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_network_poi_count(net: *const JrNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.poi_count())
}

/// Number of undirected edges, or 0 for NULL.
///
/// # Safety
/// `net` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_network_edge_count(net: *const JrNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.edge_count())
}

/// # Safety
/// `net` is NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jr_network_free(net: *mut JrNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Travel metrics over `net`. The network handle may be freed afterwards.
///
/// # Safety
/// `net` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_metrics_new(
    net: *const JrNetwork,
    time_factor: f64,
    mode: JrMetricsMode,
    out: *mut *mut JrMetrics,
) -> JrStatus {
    guard(|| {
        let net = arg(net, "net")?;
        let m = TravelMetrics::new(net.0.clone(), time_factor, mode.into()).map_err(graph_err)?;
        put(out, boxed(JrMetrics(Arc::new(m))), "out")
    })
}

/// Shortest-path cost between two POIs given by their file labels.
/// Unreachable pairs give `INFINITY`.
///
/// # Safety
/// `metrics` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_metrics_cost(
    metrics: *const JrMetrics,
    from_label: u64,
    to_label: u64,
    out: *mut f64,
) -> JrStatus {
    guard(|| {
        let m = arg(metrics, "metrics")?;
        let net = m.0.network();
        let poi = |l| {
            net.poi_by_label(l)
                .ok_or_else(|| graph_err(GraphError::UnknownLabel(l)))
        };
        let cost = m.0.cost_or_inf(poi(from_label)?, poi(to_label)?);
        put(out, cost, "out")
    })
}

/// # Safety
/// `metrics` is NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jr_metrics_free(metrics: *mut JrMetrics) {
    if !metrics.is_null() {
        drop(Box::from_raw(metrics));
    }
}

/// Default generator parameters.
#[no_mangle]
pub extern "C" fn jr_gen_params_default() -> JrGenParams {
    let d = GenParams::default();
    JrGenParams {
        t_min: d.t_range.0,
        t_max: d.t_range.1,
        util_min: d.util_range.0,
        util_max: d.util_range.1,
        dur_min: d.duration_range.0,
        dur_max: d.duration_range.1,
        budget: f64::NAN,
        window_start: f64::NAN,
        window_end: f64::NAN,
        has_worker_start: false,
        worker_start: 0,
    }
}

/// Generate `jobs` random jobs and a worker. `params` may be NULL for the
/// defaults.
///
/// # Safety
/// `metrics` is a live handle; `params` is NULL or readable; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_generate(
    metrics: *const JrMetrics,
    jobs: usize,
    seed: u64,
    params: *const JrGenParams,
    out: *mut *mut JrInstance,
) -> JrStatus {
    guard(|| {
        let m = arg(metrics, "metrics")?;
        let params = params.as_ref().map(GenParams::from).unwrap_or_default();
        let inst = generate_instance(&m.0, jobs, &params, seed, DatasetInfo::named("ffi"))
            .map_err(instance_err)?;
        put(out, boxed(JrInstance(inst)), "out")
    })
}

/// Load an instance file. `graph_path` may be NULL to use the graph recorded
/// in the file; otherwise it is read with `graph_format`.
///
/// # Safety
/// `path` and `graph_path` are NUL-terminated strings (`graph_path` may be
/// NULL); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_load(
    path: *const c_char,
    graph_path: *const c_char,
    graph_format: JrGraphFormat,
    mode: JrMetricsMode,
    out: *mut *mut JrInstance,
) -> JrStatus {
    guard(|| {
        let path = path_arg(path, "path")?;
        let graph = if graph_path.is_null() {
            None
        } else {
            Some(path_arg(graph_path, "graph_path")?)
        };
        let inst = load_instance_with_graph(
            &path,
            graph.as_deref().map(|g| (g, graph_format.into())),
            mode.into(),
        )
        .map_err(instance_err)?;
        put(out, boxed(JrInstance(inst)), "out")
    })
}

/// # Safety
/// `inst` is a live handle; `path` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_save(
    inst: *const JrInstance,
    path: *const c_char,
) -> JrStatus {
    guard(|| {
        let inst = arg(inst, "inst")?;
        let path = path_arg(path, "path")?;
        save_instance(&inst.0, path).map_err(instance_err)
    })
}

/// Number of jobs, or 0 for NULL.
///
/// # Safety
/// `inst` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_job_count(inst: *const JrInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.jobs().len())
}

/// Worker budget, or NaN for NULL.
///
/// # Safety
/// `inst` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_budget(inst: *const JrInstance) -> f64 {
    inst.as_ref().map_or(f64::NAN, |i| i.0.worker().budget)
}

/// # Safety
/// `inst` is NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jr_instance_free(inst: *mut JrInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Run one algorithm. `seed` drives the random baseline only.
///
/// # Safety
/// `inst` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_solve(
    inst: *const JrInstance,
    algorithm: JrAlgorithm,
    seed: u64,
    out: *mut *mut JrSchedule,
) -> JrStatus {
    guard(|| {
        let inst = arg(inst, "inst")?;
        let algorithm = Algorithm::from(algorithm);
        let opts = SolveOptions {
            seed,
            oracle: OracleLimits::default(),
            ..SolveOptions::default()
        };
        let schedule =
            solve(&inst.0, algorithm, &opts).map_err(|e| (JrStatus::Oracle, e.to_string()))?;
        put(
            out,
            boxed(JrSchedule {
                schedule,
                algorithm,
                seed,
            }),
            "out",
        )
    })
}

/// # Safety
/// `s` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_job_count(s: *const JrSchedule) -> usize {
    s.as_ref().map_or(0, |s| s.schedule.jobs_performed())
}

/// # Safety
/// `s` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_total_utility(s: *const JrSchedule) -> f64 {
    s.as_ref().map_or(f64::NAN, |s| s.schedule.total_utility)
}

/// # Safety
/// `s` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_total_travel_cost(s: *const JrSchedule) -> f64 {
    s.as_ref()
        .map_or(f64::NAN, |s| s.schedule.total_travel_cost)
}

/// Copy up to `cap` job ids in execution order into `ids`; the full count is
/// written to `len`. Pass `cap = 0` to query the length.
///
/// # Safety
/// `s` is a live handle; `ids` holds `cap` elements (may be NULL if `cap` is
/// 0); `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_job_ids(
    s: *const JrSchedule,
    ids: *mut u32,
    cap: usize,
    len: *mut usize,
) -> JrStatus {
    guard(|| {
        let s = arg(s, "schedule")?;
        if cap > 0 && ids.is_null() {
            return Err(null("ids"));
        }
        for (i, leg) in s.schedule.legs.iter().take(cap).enumerate() {
            *ids.add(i) = leg.job_id.0;
        }
        put(len, s.schedule.legs.len(), "len")
    })
}

/// Replay `s` against `inst`. Returns `JR_STATUS_INVALID` with the
/// violations in the error message if any constraint is broken.
///
/// # Safety
/// Both handles are live.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_validate(
    inst: *const JrInstance,
    s: *const JrSchedule,
) -> JrStatus {
    guard(|| {
        let inst = arg(inst, "inst")?;
        let s = arg(s, "schedule")?;
        validate_schedule(&inst.0, &s.schedule).map_err(|vs| {
            let msg = vs.iter().map(ToString::to_string).collect::<Vec<_>>();
            (JrStatus::Invalid, msg.join("; "))
        })
    })
}

/// The schedule as a JSON schedule file. Free with [`jr_string_free`].
///
/// # Safety
/// Both handles are live and `s` was solved on `inst`; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_to_json(
    inst: *const JrInstance,
    s: *const JrSchedule,
    out: *mut *mut c_char,
) -> JrStatus {
    guard(|| {
        let inst = arg(inst, "inst")?;
        let s = arg(s, "schedule")?;
        let json = ScheduleFile::new(&inst.0, &s.schedule, s.algorithm.name(), s.seed).to_json();
        let c = CString::new(json).map_err(|e| (JrStatus::Invalid, e.to_string()))?;
        put(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` is NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jr_schedule_free(s: *mut JrSchedule) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
