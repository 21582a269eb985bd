//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL` line with its runtime against the budget.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{max_diff, oracle, random_grad, random_point, random_prim, rng};
use vel_core::dynamics::{linear_dt, nonlinear_dt, Background, BgJets, LinJets};
use vel_core::grid_norms::Grid;
use vel_core::order_calculus::certify::order_check;
use vel_core::thermo::GasParams;
use vel_core::verify::*;
use vel_core::Scalar;
use vel_core::vorticity::{decomposition_residual, linearized_vorticity};

fn report(n: u32, what: &str, pass: bool, start: Instant, budget_s: u64, detail: String) {
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_s);
    let ok = pass && in_time;
    println!(
        "criterion {n}: {} {what} ({:.2} s of {budget_s} s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(pass, "criterion {n} failed: {detail}");
    assert!(in_time, "criterion {n} over its time budget");
}

fn config(name: &str) -> Scenario {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    Scenario::load(&p).unwrap()
}

fn flag<'a>(rep: &'a RunReport, name: &str) -> &'a Flag {
    rep.flags.iter().find(|f| f.name == name).unwrap_or_else(|| panic!("no flag {name}"))
}

#[test]
fn criterion_01_order_calculus() {
    let start = Instant::now();
    let rows = order_check(6, 6, 4);
    let bad = rows.iter().filter(|r| !r.pass).count();
    report(1, "order calculus", bad == 0, start, 5, format!("{} rows, {bad} failing", rows.len()));
}

#[test]
fn criterion_02_identities() {
    let start = Instant::now();
    let rows = identities(1000, 1, 1e-12, &GasParams::new(2.0)).unwrap();
    let worst = rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    report(2, "algebraic identities", rows.iter().all(|r| r.pass), start, 1, format!("max residual {worst:.2e}"));
}

#[test]
fn criterion_03_elimination_oracle() {
    let start = Instant::now();
    let mut g = rng(2024);
    let params = GasParams::new(2.0);
    let (mut worst_n, mut worst_l) = (0.0_f64, 0.0_f64);
    for _ in 0..200 {
        let (p, d) = random_point(&mut g);
        let f = random_prim(&mut g, 0.5);
        let got = nonlinear_dt(&p, &d, Some(&f), &params).unwrap();
        worst_n = worst_n.max(max_diff(&got, &oracle::nonlinear(&p, &d, &f, 2.0)));
        let l = random_prim(&mut g, 1.0);
        let lg = random_grad(&mut g);
        let dt = nonlinear_dt(&p, &d, None, &params).unwrap();
        let got = linear_dt(&p, &d, &dt, &l, &lg, &params).unwrap();
        worst_l = worst_l.max(max_diff(&got, &oracle::linearized(&p, &d, &l, &lg, 2.0)));
    }
    let pass = worst_n < 1e-12 && worst_l < 1e-12;
    report(3, "elimination vs linear solve", pass, start, 1, format!("nonlinear {worst_n:.2e} linearized {worst_l:.2e}"));
}

#[test]
fn criterion_04_moving_domain() {
    let start = Instant::now();
    let params = GasParams::new(2.0);
    let pd = convergence_study(ConvergenceTest::PerfectDerivative, 3, &params).unwrap();
    let md = convergence_study(ConvergenceTest::MovingDomain, 3, &params).unwrap();
    let pass = pd.pass && md.pass && pd.rows[0].0 == 64 && pd.rows[2].0 == 256;
    report(4, "perfect derivative and moving domain", pass, start, 30, format!("rates {:.3} / {:.3}", pd.fitted, md.fitted));
}

#[test]
fn criterion_05_constant_state() {
    let start = Instant::now();
    let cfg = config("constant_state.toml");
    assert_eq!(cfg.grid.n, 128);
    let rep = run_scenario(&cfg).unwrap();
    let cons = flag(&rep, "conservation");
    let mut pass = cons.pass;
    let mut detail = cons.detail.clone();
    for gamma in [1.5, 2.0, 2.5] {
        let p = phase_speed(gamma, 128, 1.0).unwrap();
        pass &= p.rel_err < 5e-3;
        detail.push_str(&format!(" c({gamma})={:.2e}", p.rel_err));
    }
    report(5, "constant-state conservation and phase speed", pass, start, 60, detail);
}

#[test]
fn criterion_06_basic_energy() {
    let start = Instant::now();
    let rep = run_scenario(&config("static_rest_frame.toml")).unwrap();
    let f = flag(&rep, "basic_energy");
    report(6, "basic energy inequality", f.pass, start, 60, f.detail.clone());
}

#[test]
fn criterion_07_decomposition() {
    let start = Instant::now();
    let params = GasParams::new(2.0);
    let d = convergence_study(ConvergenceTest::Decomposition, 3, &params).unwrap();
    let s = convergence_study(ConvergenceTest::System6, 3, &params).unwrap();
    report(7, "decomposition and system-6 residuals", d.pass && s.pass, start, 120, format!("rates {:.3} / {:.3}", d.fitted, s.fitted));
}

#[test]
fn criterion_08_elliptic_fits() {
    let start = Instant::now();
    let params = GasParams::new(2.0);
    let mut pass = true;
    let mut detail = String::new();
    for op in ["L1", "L2L3"] {
        for k in [0, 1] {
            let rep = elliptic_study(op.parse().unwrap(), 50, k, 3, &params).unwrap();
            pass &= rep.stable && rep.constant.is_finite();
            detail.push_str(&format!(" {op}/k{k}: C={:.3} drift={:.3}", rep.constant, rep.drift));
        }
    }
    report(8, "elliptic and div-curl fits", pass, start, 120, detail);
}

#[test]
fn criterion_09_equivalence() {
    let start = Instant::now();
    let params = GasParams::new(2.0);
    let mut pass = true;
    let mut detail = String::new();
    for (id, n) in [(ScenarioId::StaticRestFrame, 64), (ScenarioId::Manufactured1d, 64), (ScenarioId::Slab2d, 24)] {
        let rep = equivalence_study(id, n, 50, 5, FamilyKind::Mixed, &params).unwrap();
        pass &= rep.stable && rep.min > 0.0 && rep.max.is_finite();
        detail.push_str(&format!(" {}: [{:.3}, {:.3}]", id.name(), rep.min, rep.max));
    }
    report(9, "energy equivalence", pass, start, 120, detail);
}

#[test]
fn criterion_10_vorticity() {
    let start = Instant::now();
    let params = GasParams::new(2.0);
    let mut pass = true;
    let mut detail = String::new();
    for t in [ConvergenceTest::VorticityEq1, ConvergenceTest::VorticityEq2, ConvergenceTest::NegativeControl] {
        let rep = convergence_study(t, 3, &params).unwrap();
        pass &= rep.pass;
        detail.push_str(&format!(" {}={:.2}", t.name(), rep.fitted));
    }
    let grid = Grid::slab(24, 1.0, 25, 1.0, 2.0).unwrap();
    let bg = Background::Slab2D { s0: 0.0 };
    let bj = BgJets::evolved(&grid, &bg.sample(&grid, 0.0), None, &params).unwrap();
    // perturbations at the size the shipped scenarios use
    let amplitude = config("slab_2d.toml").scenario.amplitude;
    let (mut worst, mut size) = (0.0_f64, 0.0_f64);
    for m in 0..10 {
        let lin = family_state(&grid, m, 11, amplitude, FamilyKind::Mixed);
        let lj = LinJets::solve(&grid, &bj, &lin, &params).unwrap();
        let pack = linearized_vorticity(&grid, &bj, &lj, &params).unwrap();
        worst = worst.max(decomposition_residual(&pack));
        let lv = pack.lin.as_ref().unwrap();
        size = lv.omega_tilde.iter().flatten().flatten().fold(size, |a, j| a.max(j.value().abs()));
    }
    pass &= worst < 1e-13;
    detail.push_str(&format!(" split {worst:.1e} (relative {:.1e})", worst / size));
    report(10, "vorticity identities", pass, start, 300, detail);
}

#[test]
fn criterion_11_main_theorem() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for f in ["constant_state.toml", "static_rest_frame.toml", "manufactured_1d.toml", "slab_2d.toml"] {
        let cfg = config(f);
        assert_eq!((cfg.scenario.k, cfg.scenario.t_final), (1, 1.0));
        let rep = run_scenario(&cfg).unwrap();
        let m = flag(&rep, "main_theorem");
        pass &= m.pass && rep.main.monitor.margin >= 0.05;
        detail.push_str(&format!(" {}: {:.3}", cfg.scenario.id.name(), rep.main.monitor.margin));
    }
    report(11, "main theorem monitor", pass, start, 300, detail);
}
