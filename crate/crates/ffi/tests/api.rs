use std::ffi::{c_char, CStr, CString};
use std::ptr;

use circuitwalk_ffi::*;

const SQUARE: &str = "2 0 4\n1 0\n0 1\n-1 0\n0 -1\n1 1 0 0\n-1 -2\n";
const TRIANGLE: &str = "3 3\n1 2\n2 3\n3 1\n";
const BUDGET: u64 = 1_000_000;

fn take(s: *mut c_char) -> Option<String> {
    if s.is_null() {
        return None;
    }
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { cw_string_free(s) };
    Some(out)
}

fn instance(text: &str) -> *mut CwInstance {
    let src = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { cw_instance_parse(src.as_ptr(), &mut inst) }, CwStatus::Ok);
    inst
}

#[test]
fn solve_and_format() {
    let inst = instance(SQUARE);
    assert_eq!(unsafe { cw_instance_dim(inst) }, 2);
    let (mut x, mut v) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { cw_solve(inst, &mut x, &mut v) }, CwStatus::Ok);
    assert_eq!(take(x).unwrap(), "1 1");
    assert_eq!(take(v).unwrap(), "-3");

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { cw_instance_format(inst, &mut text) }, CwStatus::Ok);
    assert_eq!(take(text).unwrap(), SQUARE);
    unsafe { cw_instance_free(inst) };
}

#[test]
fn circuits_steps_and_ocnp() {
    let inst = instance(SQUARE);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cw_circuits(inst, BUDGET, &mut out) }, CwStatus::Ok);
    assert_eq!(take(out).unwrap(), "0 1\n1 0\n");

    let from = CString::new("0 0").unwrap();
    let mut outcome = CwStepOutcome::Optimal;
    let (mut g, mut a, mut imp) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    let status = unsafe { cw_step(inst, from.as_ptr(), CwStepRule::Exact, BUDGET, &mut outcome, &mut g, &mut a, &mut imp) };
    assert_eq!(status, CwStatus::Ok);
    assert_eq!(outcome, CwStepOutcome::Step);
    assert_eq!(take(g).unwrap(), "0 1");
    assert_eq!(take(a).unwrap(), "1");
    assert_eq!(take(imp).unwrap(), "2");

    let done = CString::new("1 1").unwrap();
    let status = unsafe { cw_step(inst, done.as_ptr(), CwStepRule::Approx, BUDGET, &mut outcome, &mut g, &mut a, &mut imp) };
    assert_eq!(status, CwStatus::Ok);
    assert_eq!(outcome, CwStepOutcome::Optimal);
    assert!(g.is_null() && a.is_null() && imp.is_null());

    let mut verdict = CwOcnpVerdict::NotUnique;
    let near = CString::new("0 1").unwrap();
    assert_eq!(unsafe { cw_ocnp(inst, near.as_ptr(), &mut verdict) }, CwStatus::Ok);
    assert_eq!(verdict, CwOcnpVerdict::CircuitNeighbor);
    assert_eq!(unsafe { cw_ocnp(inst, from.as_ptr(), &mut verdict) }, CwStatus::Ok);
    assert_eq!(verdict, CwOcnpVerdict::NotCircuitNeighbor);

    let mut terms = ptr::null_mut();
    assert_eq!(unsafe { cw_decompose(inst, from.as_ptr(), done.as_ptr(), &mut terms) }, CwStatus::Ok);
    assert_eq!(take(terms).unwrap().lines().count(), 2);
    unsafe { cw_instance_free(inst) };
}

#[test]
fn graphs() {
    let src = CString::new(TRIANGLE).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { cw_graph_parse(src.as_ptr(), &mut g) }, CwStatus::Ok);

    let (mut arcs, mut cost) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { cw_longest_cycle(g, BUDGET, &mut arcs, &mut cost) }, CwStatus::Ok);
    assert_eq!(take(arcs).unwrap(), "1 2 3");
    assert_eq!(take(cost).unwrap(), "31/8");

    let mut holds = false;
    assert_eq!(unsafe { cw_verify_correspondence(g, BUDGET, &mut holds) }, CwStatus::Ok);
    assert!(holds);

    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { cw_reduce(g, &mut inst) }, CwStatus::Ok);
    assert_eq!(unsafe { cw_instance_dim(inst) }, 3);
    let zeros = CString::new("zeros").unwrap();
    let mut outcome = CwStepOutcome::Optimal;
    let (mut c, mut a, mut imp) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    let status = unsafe { cw_step(inst, zeros.as_ptr(), CwStepRule::Exact, BUDGET, &mut outcome, &mut c, &mut a, &mut imp) };
    assert_eq!(status, CwStatus::Ok);
    assert_eq!(take(c).unwrap(), "1 1 1");
    assert_eq!(take(a).unwrap(), "1");
    assert_eq!(take(imp).unwrap(), "31/8");
    unsafe {
        cw_instance_free(inst);
        cw_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("2 0 4\n1 0\n0 1\n-1 0\n0 -1\n1 1 0 0\n-1 x\n").unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { cw_instance_parse(bad.as_ptr(), &mut inst) }, CwStatus::Parse);
    assert!(inst.is_null());
    let msg = take(cw_last_error()).unwrap();
    assert!(msg.contains("line 7, column 4"), "{msg}");

    assert_eq!(unsafe { cw_instance_parse(ptr::null(), &mut inst) }, CwStatus::NullPointer);

    let inst = instance(SQUARE);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cw_circuits(inst, 1, &mut out) }, CwStatus::WorkBudget);
    assert!(out.is_null());

    let mut verdict = CwOcnpVerdict::NotUnique;
    let outside = CString::new("2 2").unwrap();
    assert_eq!(unsafe { cw_ocnp(inst, outside.as_ptr(), &mut verdict) }, CwStatus::InvalidArgument);
    let wrong_dim = CString::new("1 1 1").unwrap();
    assert_eq!(unsafe { cw_ocnp(inst, wrong_dim.as_ptr(), &mut verdict) }, CwStatus::Parse);

    let empty = instance("2 0 5\n1 0\n0 1\n-1 0\n0 -1\n-1 0\n1 1 0 0 -2\n1 1\n");
    let (mut x, mut v) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { cw_solve(empty, &mut x, &mut v) }, CwStatus::Infeasible);

    // success clears the message
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { cw_instance_format(inst, &mut text) }, CwStatus::Ok);
    take(text);
    assert!(cw_last_error().is_null());
    unsafe {
        cw_instance_free(inst);
        cw_instance_free(empty);
        cw_instance_free(ptr::null_mut());
        cw_string_free(ptr::null_mut());
    }
}
