//! C ABI over `circuitwalk`.
//!
//! Instances and digraphs live behind opaque handles created by the `*_parse`
//! functions and released with the matching `*_free`. Rationals, points and
//! circuits cross the boundary as NUL-terminated text in the same format the
//! command-line tool reads and writes. Every returned string is owned by the
//! caller and must be released with [`cw_string_free`].
//!
//! All functions return a [`CwStatus`]. On failure, [`cw_last_error`] returns a
//! description of the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circuitwalk::ddstep::{self, StepOutcome, StepRule};
use circuitwalk::lp::{self, LpOutcome};
use circuitwalk::ocnp::{self, OcnpVerdict};
use circuitwalk::polyhedron::LpInstance;
use circuitwalk::ratlin::{self, RatVec};
use circuitwalk::reductions::{self, Digraph};
use circuitwalk::{circuits, conformal, io, Error, WorkBudget};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Dimension = 4,
    NotPointed = 5,
    InvalidArgument = 6,
    Infeasible = 7,
    Unbounded = 8,
    WorkBudget = 9,
    IterationCap = 10,
    Io = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStepRule {
    Exact = 0,
    Approx = 1,
    Steepest = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStepOutcome {
    Step = 0,
    Optimal = 1,
    UnboundedImprovement = 2,
}

/// Values match the command-line exit codes of `ocnp`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwOcnpVerdict {
    CircuitNeighbor = 0,
    NotCircuitNeighbor = 1,
    AlreadyOptimal = 2,
    NotUnique = 3,
}

/// Opaque LP instance.
pub struct CwInstance(LpInstance);

/// Opaque digraph.
pub struct CwGraph(Digraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CwStatus {
    match e {
        Error::Dimension(_) => CwStatus::Dimension,
        Error::NotPointed { .. } => CwStatus::NotPointed,
        Error::Usage(_) => CwStatus::InvalidArgument,
        Error::InfeasibleLp => CwStatus::Infeasible,
        Error::UnboundedLp { .. } => CwStatus::Unbounded,
        Error::WorkBudget { .. } => CwStatus::WorkBudget,
        Error::IterationCap { .. } => CwStatus::IterationCap,
        Error::Parse { .. } => CwStatus::Parse,
        Error::Io(_) => CwStatus::Io,
    }
}

struct Fail(CwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FfiResult = Result<(), Fail>;

/// Runs `f`, turning errors and panics into a status plus the thread's last
/// error message.
fn guard(f: impl FnOnce() -> FfiResult) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CwStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CwStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CwStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CwStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CwStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> FfiResult {
    if out.is_null() {
        return Err(Fail(CwStatus::NullPointer, format!("{what} is NULL")));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no NUL").into_raw()
}

unsafe fn point(p: *const c_char, inst: &LpInstance, what: &str) -> Result<RatVec, Fail> {
    Ok(io::parse_point(text(p, what)?, inst.polyhedron.dim())?)
}

fn rule(r: CwStepRule) -> StepRule {
    match r {
        CwStepRule::Exact => StepRule::Exact,
        CwStepRule::Approx => StepRule::Approx,
        CwStepRule::Steepest => StepRule::Steepest,
    }
}

/// Message for the last failed call on this thread, or NULL. The caller owns
/// the returned string.
#[no_mangle]
pub extern "C" fn cw_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an LP instance in the text format of the command-line tool.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_instance_parse(source: *const c_char, out: *mut *mut CwInstance) -> CwStatus {
    guard(|| {
        let inst = io::parse_instance(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(CwInstance(inst))), "out")
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_instance_free(inst: *mut CwInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of variables, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_instance_dim(inst: *const CwInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.polyhedron.dim())
}

/// Writes the instance back in its text format.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_instance_format(inst: *const CwInstance, out: *mut *mut c_char) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        put(out, owned(io::format_instance(&inst.0)), "out")
    })
}

/// Solves the LP. On `CW_STATUS_OK`, `out_point` receives the optimal vertex
/// and `out_value` the optimal value. On `CW_STATUS_UNBOUNDED`, `out_point`
/// receives an improving ray and `out_value` is set to NULL.
///
/// # Safety
/// `inst` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cw_solve(inst: *const CwInstance, out_point: *mut *mut c_char, out_value: *mut *mut c_char) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        if out_point.is_null() || out_value.is_null() {
            return Err(Fail(CwStatus::NullPointer, "output pointer is NULL".into()));
        }
        match lp::solve_lp(&inst.0.polyhedron, &inst.0.objective)? {
            LpOutcome::Optimal { vertex, value } => {
                out_point.write(owned(ratlin::format_vec(&vertex)));
                out_value.write(owned(value.to_string()));
                Ok(())
            }
            LpOutcome::Unbounded { direction } => {
                out_point.write(owned(ratlin::format_vec(&direction)));
                out_value.write(ptr::null_mut());
                Err(Fail(CwStatus::Unbounded, "linear program is unbounded".into()))
            }
            LpOutcome::Infeasible => Err(Error::InfeasibleLp.into()),
        }
    })
}

/// All circuits, one per line in canonical order.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_circuits(inst: *const CwInstance, budget: u64, out: *mut *mut c_char) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        let all = circuits::enumerate_circuits(&inst.0.polyhedron, WorkBudget(budget))?;
        put(out, owned(io::format_circuits(&all)), "out")
    })
}

/// One circuit step from `from`. For `CW_STEP_OUTCOME_STEP` the circuit,
/// step length and improvement are written; for an unbounded improving
/// circuit only the circuit is; for `CW_STEP_OUTCOME_OPTIMAL` all three are
/// NULL.
///
/// # Safety
/// `inst` must be a live handle, `from` a NUL-terminated point, and every
/// output writable.
#[no_mangle]
pub unsafe extern "C" fn cw_step(
    inst: *const CwInstance,
    from: *const c_char,
    step_rule: CwStepRule,
    budget: u64,
    out_outcome: *mut CwStepOutcome,
    out_circuit: *mut *mut c_char,
    out_alpha: *mut *mut c_char,
    out_improvement: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        let x0 = point(from, &inst.0, "from")?;
        if out_outcome.is_null() || out_circuit.is_null() || out_alpha.is_null() || out_improvement.is_null() {
            return Err(Fail(CwStatus::NullPointer, "output pointer is NULL".into()));
        }
        let outcome = ddstep::step(&inst.0.polyhedron, &inst.0.objective, &x0, rule(step_rule), WorkBudget(budget))?;
        let (kind, circuit, alpha, improvement) = match outcome {
            StepOutcome::Step(s) => (
                CwStepOutcome::Step,
                owned(s.circuit.to_string()),
                owned(s.alpha.to_string()),
                owned(s.improvement.to_string()),
            ),
            StepOutcome::Optimal => (CwStepOutcome::Optimal, ptr::null_mut(), ptr::null_mut(), ptr::null_mut()),
            StepOutcome::UnboundedImprovement(g) => {
                (CwStepOutcome::UnboundedImprovement, owned(g.to_string()), ptr::null_mut(), ptr::null_mut())
            }
        };
        out_outcome.write(kind);
        out_circuit.write(circuit);
        out_alpha.write(alpha);
        out_improvement.write(improvement);
        Ok(())
    })
}

/// Decides whether the unique optimum is one circuit step from `from`.
///
/// # Safety
/// `inst` must be a live handle, `from` a NUL-terminated point and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cw_ocnp(inst: *const CwInstance, from: *const c_char, out: *mut CwOcnpVerdict) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        let x0 = point(from, &inst.0, "from")?;
        let verdict = match ocnp::decide_ocnp(&inst.0.polyhedron, &inst.0.objective, &x0)? {
            OcnpVerdict::CircuitNeighbor { .. } => CwOcnpVerdict::CircuitNeighbor,
            OcnpVerdict::NotCircuitNeighbor { .. } => CwOcnpVerdict::NotCircuitNeighbor,
            OcnpVerdict::AlreadyOptimal => CwOcnpVerdict::AlreadyOptimal,
            OcnpVerdict::NotUnique { .. } => CwOcnpVerdict::NotUnique,
        };
        put(out, verdict, "out")
    })
}

/// Conformal decomposition of `to - from`, one `alpha | circuit` line per term.
///
/// # Safety
/// `inst` must be a live handle, both points NUL-terminated and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cw_decompose(
    inst: *const CwInstance,
    from: *const c_char,
    to: *const c_char,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let inst = handle(inst, "instance")?;
        let x = point(from, &inst.0, "from")?;
        let y = point(to, &inst.0, "to")?;
        let sum = conformal::decompose(&inst.0.polyhedron, &ratlin::sub(&y, &x))?;
        put(out, owned(io::format_conformal(&sum)), "out")
    })
}

/// Parses a digraph file (`|V| m`, then `tail head [cost]` per arc).
///
/// # Safety
/// `source` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_parse(source: *const c_char, out: *mut *mut CwGraph) -> CwStatus {
    guard(|| {
        let g = io::parse_graph(text(source, "source")?)?;
        put(out, Box::into_raw(Box::new(CwGraph(g))), "out")
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_free(g: *mut CwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Builds the perturbed circulation LP of an unweighted digraph. The start
/// point of the reduction is the origin.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_reduce(g: *const CwGraph, out: *mut *mut CwInstance) -> CwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let inst = reductions::build_reduction(&g.0)?;
        put(out, Box::into_raw(Box::new(CwInstance(inst.lp))), "out")
    })
}

/// Maximum-cost directed cycle as 1-based arc indices separated by spaces,
/// perturbing unit costs first when the graph has none. Both outputs are NULL
/// for an acyclic graph.
///
/// # Safety
/// `g` must be a live handle and both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn cw_longest_cycle(
    g: *const CwGraph,
    budget: u64,
    out_arcs: *mut *mut c_char,
    out_cost: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        if out_arcs.is_null() || out_cost.is_null() {
            return Err(Fail(CwStatus::NullPointer, "output pointer is NULL".into()));
        }
        let weighted = match g.0.costs() {
            Some(_) => g.0.clone(),
            None => reductions::perturb_costs(&g.0)?,
        };
        match reductions::longest_cycle_oracle(&weighted, WorkBudget(budget))? {
            Some((arcs, cost)) => {
                let listed: Vec<String> = arcs.iter().map(|a| (a + 1).to_string()).collect();
                out_arcs.write(owned(listed.join(" ")));
                out_cost.write(owned(cost.to_string()));
            }
            None => {
                out_arcs.write(ptr::null_mut());
                out_cost.write(ptr::null_mut());
            }
        }
        Ok(())
    })
}

/// Checks that the deepest-descent step of the reduction from the origin is
/// the longest cycle.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cw_verify_correspondence(g: *const CwGraph, budget: u64, out: *mut bool) -> CwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let holds = reductions::verify_correspondence(&g.0, WorkBudget(budget))?;
        put(out, holds, "out")
    })
}
