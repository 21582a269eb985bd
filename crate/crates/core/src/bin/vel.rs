use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vel_core::order_calculus::certify::order_check;
use vel_core::thermo::GasParams;
use vel_core::verify::{
    convergence_study, elliptic_study, equivalence_study, identities, num, phase_speed, run_scenario, write_csv,
    ConvergenceTest, CsvTable, EllipticFamily, FamilyKind, Scenario, ScenarioId,
};
use vel_core::Result;

#[derive(Parser)]
#[command(name = "vel", about = "Verification lab for the linearized relativistic Euler equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evolve a scenario and check the energy monitors.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Exhaustive check of the order calculus.
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// Pointwise algebraic identities on random states.
    Identities {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Fitted constant of the elliptic or div-curl estimate.
    Elliptic {
        #[arg(long, value_parser = parse_op)]
        op: EllipticFamily,
        #[arg(long, default_value_t = 50)]
        family_size: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
    },
    /// Refinement study of one residual.
    Convergence {
        #[arg(long, value_parser = parse_test)]
        test: ConvergenceTest,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
    },
    /// Range of E²/‖·‖² over a random family at k = 1.
    Equivalence {
        #[arg(long, value_enum, default_value_t = Sc::StaticRestFrame)]
        scenario: Sc,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        family_size: usize,
        #[arg(long, default_value_t = 5)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Kind::Mixed)]
        kind: Kind,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
    },
    /// Acoustic speed on the constant state.
    Phase {
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        t_final: f64,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    Check {
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, default_value_t = 6)]
        max_l: u32,
        #[arg(long, default_value_t = 4)]
        max_k: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sc {
    ConstantState,
    StaticRestFrame,
    Manufactured1d,
    Slab2d,
}

impl From<Sc> for ScenarioId {
    fn from(s: Sc) -> Self {
        match s {
            Sc::ConstantState => ScenarioId::ConstantState,
            Sc::StaticRestFrame => ScenarioId::StaticRestFrame,
            Sc::Manufactured1d => ScenarioId::Manufactured1d,
            Sc::Slab2d => ScenarioId::Slab2d,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Mixed,
    PureEntropy,
}

fn parse_op(s: &str) -> std::result::Result<EllipticFamily, String> {
    s.parse().map_err(|e: vel_core::Error| e.to_string())
}

fn parse_test(s: &str) -> std::result::Result<ConvergenceTest, String> {
    s.parse().map_err(|e: vel_core::Error| e.to_string())
}

fn flags(rows: &[(String, bool, String)]) -> Result<bool> {
    let mut t = CsvTable::new(&["flag", "pass", "detail"]);
    for (name, pass, detail) in rows {
        t.push([name.clone(), pass.to_string(), detail.clone()]);
    }
    write_csv(io::stderr(), &t)?;
    Ok(rows.iter().all(|r| r.1))
}

fn execute(cmd: Cmd) -> Result<bool> {
    let out = io::stdout().lock();
    match cmd {
        Cmd::Run { config } => {
            let cfg = Scenario::load(&config)?;
            let rep = run_scenario(&cfg)?;
            let mut t = CsvTable::new(&[
                "t", "e0", "e_wave", "e_transport", "e_total", "h_sq", "basic_bound", "main_bound",
            ]);
            for r in &rep.rows {
                t.push([r.t, r.e0, r.e_wave, r.e_transport, r.e_total, r.h_sq, r.basic_bound, r.main_bound].map(num));
            }
            write_csv(out, &t)?;
            flags(&rep.flags.iter().map(|f| (f.name.clone(), f.pass, f.detail.clone())).collect::<Vec<_>>())
        }
        Cmd::Order { cmd: OrderCmd::Check { max_m, max_l, max_k } } => {
            let rows = order_check(max_m, max_l, max_k);
            let mut t = CsvTable::new(&["term", "k", "op", "claimed_min_order", "computed_min_order", "pass"]);
            for r in &rows {
                t.push([
                    r.term.clone(),
                    r.k.to_string(),
                    r.op.clone(),
                    r.claimed_min.to_string(),
                    r.computed_min.to_string(),
                    r.pass.to_string(),
                ]);
            }
            write_csv(out, &t)?;
            let bad = rows.iter().filter(|r| !r.pass).count();
            flags(&[("order_check".into(), bad == 0, format!("{} rows, {bad} failing", rows.len()))])
        }
        Cmd::Identities { samples, seed, tol } => {
            let rows = identities(samples, seed, tol, &GasParams::new(2.0))?;
            let mut t = CsvTable::new(&["identity", "max_residual", "tolerance", "pass"]);
            for r in &rows {
                t.push([r.name.to_string(), num(r.max_residual), num(r.tolerance), r.pass.to_string()]);
            }
            write_csv(out, &t)?;
            Ok(rows.iter().all(|r| r.pass))
        }
        Cmd::Elliptic { op, family_size, k, seed, gamma } => {
            let rep = elliptic_study(op, family_size, k, seed, &GasParams::new(gamma))?;
            write_csv(out, &rep.table())?;
            flags(&[(
                "elliptic_fit".into(),
                rep.stable,
                format!("C = {:.4e}, refined {:.4e}, drift {:.4}", rep.constant, rep.constant_refined, rep.drift),
            )])
        }
        Cmd::Convergence { test, levels, gamma } => {
            let rep = convergence_study(test, levels, &GasParams::new(gamma))?;
            write_csv(out, &rep.table())?;
            flags(&[(test.name().into(), rep.pass, format!("fitted rate {:.3}", rep.fitted))])
        }
        Cmd::Equivalence { scenario, n, family_size, seed, kind, gamma } => {
            let kind = match kind {
                Kind::Mixed => FamilyKind::Mixed,
                Kind::PureEntropy => FamilyKind::PureEntropy,
            };
            let rep = equivalence_study(scenario.into(), n, family_size, seed, kind, &GasParams::new(gamma))?;
            write_csv(out, &rep.table())?;
            flags(&[(
                "equivalence".into(),
                rep.stable,
                format!("[{:.4}, {:.4}] refined [{:.4}, {:.4}]", rep.min, rep.max, rep.min_refined, rep.max_refined),
            )])
        }
        Cmd::Phase { gamma, n, t_final } => {
            let p = phase_speed(gamma, n, t_final)?;
            let mut t = CsvTable::new(&["gamma", "measured", "exact", "rel_err", "pass"]);
            t.push([num(p.gamma), num(p.measured), num(p.exact), num(p.rel_err), p.pass.to_string()]);
            write_csv(out, &t)?;
            Ok(p.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = writeln!(io::stderr(), "error: {e}");
            ExitCode::from(2)
        }
    }
}
