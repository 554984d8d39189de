use holodd::dd::{gate_fidelity_under_error, BathModel, DDErrorModel, InterleavingPlan};
use holodd::gates::{schedule_u1, schedule_u2, schedule_u3, synthesize, verify_holonomy};
use holodd::{Basis32, Schedule32};

#[test]
fn single_precision_gates() {
    let basis = Basis32::new(4).unwrap();
    let schedules: [Schedule32; 3] = [
        schedule_u1(4, 1, 0.4f32).unwrap(),
        schedule_u2(4, 2, 1.0f32).unwrap(),
        schedule_u3(4, 1, 2, 0.7f32).unwrap(),
    ];
    for s in &schedules {
        let r = synthesize(s, &basis).unwrap();
        assert!(r.fidelity.unwrap() > 1.0 - 1e-5, "{:?}", s.kind());
        assert!(r.leakage < 1e-4);
        assert!(verify_holonomy(s, &basis, 8).unwrap().cyclic_defect < 1e-4);
    }
}

#[test]
fn single_precision_error_model() {
    let basis = Basis32::new(4).unwrap();
    let s = schedule_u3(4, 1, 2, -std::f32::consts::FRAC_PI_4).unwrap();
    let bath = BathModel::<f32>::zero(4).unwrap();
    let plan = InterleavingPlan::default();
    let f0 = gate_fidelity_under_error(&s, &basis, &plan, &DDErrorModel::ideal(), &bath).unwrap();
    let f1 = gate_fidelity_under_error(&s, &basis, &plan, &DDErrorModel::flip(0.1f32), &bath).unwrap();
    assert!(f0.physical > 1.0 - 1e-5);
    assert!(f1.physical < f0.physical);
}
