use std::path::PathBuf;
use std::process::Command;

use vel_core::thermo::GasParams;
use vel_core::verify::*;
use vel_core::Error;

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

#[test]
fn shipped_configs_parse() {
    for f in ["constant_state.toml", "static_rest_frame.toml", "manufactured_1d.toml", "slab_2d.toml"] {
        Scenario::load(&config_path(f)).unwrap();
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let base = "[scenario]\nid = \"static_rest_frame\"\n[grid]\nn = 32\n";
    assert!(Scenario::parse(base).is_ok());
    for bad in [
        "[scenario]\nid = \"static_rest_frame\"\ngamma = 1.0\n[grid]\nn = 32\n",
        "[scenario]\nid = \"static_rest_frame\"\nk = 2\n[grid]\nn = 32\n",
        "[scenario]\nid = \"static_rest_frame\"\ncfl = 0.0\n[grid]\nn = 32\n",
        "[scenario]\nid = \"static_rest_frame\"\n[grid]\nn = 32\n[tolerances]\nr_max = 0.6\n",
        "[scenario]\nid = \"static_rest_frame\"\n[grid]\nn = 32\n[tolerances]\nmargin = -1.0\n",
        "[scenario]\nid = \"nowhere\"\n[grid]\nn = 32\n",
        "[scenario]\nid = \"static_rest_frame\"\ncolour = 3\n[grid]\nn = 32\n",
        "[grid]\nn = 32\n",
    ] {
        assert!(matches!(Scenario::parse(bad), Err(Error::Config(_))), "{bad}");
    }
}

#[test]
fn csv_has_header_and_quoting() {
    let mut t = CsvTable::new(&["a", "b"]);
    t.push(["1", "x,y"]);
    let mut buf = Vec::new();
    write_csv(&mut buf, &t).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,\"x,y\"\n");
    assert_eq!(num(0.5), "5.000000e-1");
}

#[test]
fn zero_perturbation_gives_a_zero_series() {
    let mut cfg = Scenario::preset(ScenarioId::StaticRestFrame, 32);
    cfg.scenario.amplitude = 0.0;
    cfg.scenario.t_final = 0.2;
    let rep = run_scenario(&cfg).unwrap();
    assert!(rep.rows.len() > 1);
    for r in &rep.rows {
        assert_eq!((r.e0, r.e_wave, r.e_transport, r.e_total, r.h_sq), (0.0, 0.0, 0.0, 0.0, 0.0));
    }
    assert!(rep.rows.windows(2).all(|w| w[0].t < w[1].t));
}

#[test]
fn runs_are_reproducible() {
    let mut cfg = Scenario::preset(ScenarioId::Manufactured1d, 32);
    cfg.scenario.t_final = 0.2;
    cfg.tolerances.family = 50;
    let table = |rep: &RunReport| {
        let mut buf = Vec::new();
        let mut t = CsvTable::new(&["t", "e", "h"]);
        for r in &rep.rows {
            t.push([num(r.t), num(r.e_total), num(r.h_sq)]);
        }
        write_csv(&mut buf, &t).unwrap();
        buf
    };
    let a = run_scenario(&cfg).unwrap();
    let b = run_scenario(&cfg).unwrap();
    assert_eq!(table(&a), table(&b));
    assert_eq!(a.flags.iter().map(|f| f.pass).collect::<Vec<_>>(), b.flags.iter().map(|f| f.pass).collect::<Vec<_>>());
}

#[test]
fn study_arguments_are_checked() {
    let params = GasParams::new(2.0);
    let res = convergence_study(ConvergenceTest::PerfectDerivative, 2, &params);
    assert!(matches!(res, Err(Error::LevelsTooFew { .. })));
    let res = equivalence_study(ScenarioId::StaticRestFrame, 32, 10, 0, FamilyKind::Mixed, &params);
    assert!(matches!(res, Err(Error::FamilyTooSmall { .. })));
    let res = elliptic_study("L1".parse().unwrap(), 10, 1, 0, &params);
    assert!(matches!(res, Err(Error::FamilyTooSmall { .. })));
}

#[test]
fn test_names_round_trip() {
    for t in ConvergenceTest::ALL {
        assert_eq!(t.name().parse::<ConvergenceTest>().unwrap(), t);
    }
    assert!("nonsense".parse::<ConvergenceTest>().is_err());
}

#[test]
fn pure_entropy_family_is_bounded() {
    let rep = equivalence_study(ScenarioId::StaticRestFrame, 32, 50, 5, FamilyKind::PureEntropy, &GasParams::new(2.0)).unwrap();
    assert!(rep.min > 0.0 && rep.max.is_finite());
    assert_eq!(rep.rows.len(), 50);
}

fn vel(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_vel")).args(args).output().unwrap()
}

#[test]
fn cli_exit_codes_follow_the_flags() {
    let out = vel(&["order", "check", "--max-m", "2", "--max-l", "2", "--max-k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("term,k,op,claimed_min_order,computed_min_order,pass"));

    let out = vel(&["convergence", "--test", "negative_control", "--levels", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let out = vel(&["run", "--config", "/nonexistent.toml"]);
    assert_eq!(out.status.code(), Some(2));

    let out = vel(&["identities", "--samples", "50", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}
