use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use estgame_core::best_response::bounds;
use estgame_core::equilibrium::{solve, Equilibrium};
use estgame_core::game::{average_error, leader_cost, follower_cost};
use estgame_core::simulator::{empirical_cost, run, SimConfig};
use estgame_core::{GameConstants, GameParams, PolicyPair};
use serde_json::json;

use crate::args::{FiguresArgs, SimulateArgs, SolveArgs, SweepArgs, VerifyArgs};
use crate::error::CliError;
use crate::manifest::{manifest_path_for, write_file, RunManifest};
use crate::sweep::{self, SweepRow};
use crate::{svg, verify};

/// How a successful command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out<'_>, text: std::fmt::Arguments<'_>) {
    // Stdout closed early (e.g. piped into `head`) is not an error.
    let _ = out.write_fmt(text);
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => { emit($out, format_args!("{}\n", format_args!($($arg)*))) };
}

fn resolve_constants(args: &SolveArgs) -> Result<GameConstants, CliError> {
    let alpha_space = [args.alpha1, args.alpha2, args.alpha];
    let k_space = [args.k1, args.k2];
    let any_alpha = alpha_space.iter().any(Option::is_some);
    let any_k = k_space.iter().any(Option::is_some);
    match (any_alpha, any_k) {
        (true, true) => Err(CliError::usage("give either --alpha1/--alpha2/--alpha or --k1/--k2, not both")),
        (false, false) => Err(CliError::usage("missing parameters: give --alpha1 --alpha2 --alpha or --k1 --k2")),
        (true, false) => {
            let [Some(a1), Some(a2), Some(a)] = alpha_space else {
                return Err(CliError::usage("walk parameters need all of --alpha1, --alpha2 and --alpha"));
            };
            let params = GameParams::new(a1, a2, a, args.c1, args.c2)?;
            let params = if args.swap_roles { params.swapped() } else { params };
            Ok(params.derive_constants())
        }
        (false, true) => {
            let [Some(k1), Some(k2)] = k_space else {
                return Err(CliError::usage("constant parameters need both --k1 and --k2"));
            };
            let k = GameConstants::new(k1, k2, args.c1, args.c2)?;
            Ok(if args.swap_roles { k.swapped() } else { k })
        }
    }
}

pub fn cmd_solve(args: &SolveArgs, out: Out<'_>) -> Result<Outcome, CliError> {
    let constants = resolve_constants(args)?;
    let eq = solve(&constants);
    let (leader, follower) = if args.swap_roles { ("P2", "P1") } else { ("P1", "P2") };
    // Report in the caller's player labels.
    let (policy, j1, j2) = if args.swap_roles {
        (eq.policy.swapped(), eq.follower_value, eq.leader_value)
    } else {
        (eq.policy, eq.leader_value, eq.follower_value)
    };
    say!(out, "leader: {leader}");
    say!(out, "follower: {follower}");
    say!(out, "k_leader: {}", constants.k1);
    say!(out, "k_follower: {}", constants.k2);
    say!(out, "regime: {}", eq.regime);
    say!(out, "p1*: {}", policy.p1);
    say!(out, "p2*: {}", policy.p2);
    say!(out, "J1: {j1}");
    say!(out, "J2: {j2}");
    say!(out, "candidates:");
    for c in &eq.candidates {
        let p = if args.swap_roles { c.policy.swapped() } else { c.policy };
        say!(out, "  p1={} p2={} leader_cost={}", p.p1, p.p2, c.leader_value);
    }
    Ok(Outcome::Success)
}

fn check_step(step: f64) -> Result<(), CliError> {
    if step.is_finite() && step > 0.0 && step <= 0.5 {
        Ok(())
    } else {
        Err(CliError::usage(format!("--p1-step {step} must lie in (0, 0.5]")))
    }
}

fn plot_sweep(title: &str, rows: &[SweepRow], best: &SweepRow) -> String {
    let points: Vec<_> = rows.iter().map(|r| (r.p1, r.j1)).collect();
    let marker = best.j1.finite().map(|y| (best.p1, y));
    svg::line_plot(title, "p1", "J1(p1, BR(p1))", &points, marker)
}

pub fn cmd_sweep(args: &SweepArgs, out: Out<'_>) -> Result<Outcome, CliError> {
    check_step(args.p1_step)?;
    let constants = GameConstants::new(args.k1, args.k2, args.c1, 1.0)?;
    let rows = sweep::sweep_rows(&constants, args.p1_step);
    let best = rows[sweep::argmin(&rows)];

    let mut manifest = RunManifest::new(
        "sweep",
        json!({ "k1": args.k1, "k2": args.k2, "c1": args.c1, "p1_step": args.p1_step }),
        None,
    );
    write_file(&args.out, &sweep::to_csv(&rows))?;
    manifest.record(&args.out);
    if let Some(path) = &args.svg {
        let title = format!("K1 = {}, K2 = {}", args.k1, args.k2);
        write_file(path, &plot_sweep(&title, &rows, &best))?;
        manifest.record(path);
    }
    manifest.write(&manifest_path_for(&args.out))?;

    say!(out, "rows: {}", rows.len());
    say!(
        out,
        "argmin: p1={} br_p2={} j1={} region={}",
        best.p1, best.br_p2, best.j1, best.region
    );
    let eq = solve(&constants);
    say!(out, "equilibrium: p1={} p2={} j1={}", eq.policy.p1, eq.policy.p2, eq.leader_value);
    say!(out, "wrote: {}", args.out.display());
    Ok(Outcome::Success)
}

fn rel_dev(empirical: f64, closed: f64) -> f64 {
    if closed == 0.0 {
        empirical.abs()
    } else {
        (empirical - closed).abs() / closed.abs()
    }
}

pub fn cmd_simulate(args: &SimulateArgs, out: Out<'_>) -> Result<Outcome, CliError> {
    let params = GameParams::new(args.alpha1, args.alpha2, args.alpha, args.c1, args.c2)?;
    let policy = PolicyPair::new(args.p1, args.p2)?;
    let config = SimConfig::new(params, policy, args.horizon, args.seed).with_age_cap(args.age_cap);
    let result = run(&config)?;
    let constants = params.derive_constants();
    let cost = empirical_cost(&result, &params);

    say!(out, "horizon: {}", result.horizon);
    say!(out, "seed: {}", args.seed);
    say!(out, "reset_probability: {}", policy.reset_probability());
    say!(out, "reset_rate_empirical: {}", result.reset_rate);
    say!(out, "diverges: {}", result.diverges);
    let closed = [
        average_error(params.alpha2, policy),
        average_error(params.alpha1, policy),
    ];
    for (i, who) in ["P1", "P2"].iter().enumerate() {
        say!(out, "{who}_mse_empirical: {}", result.mean_sq_error[i]);
        say!(out, "{who}_mse_closed_form: {}", closed[i]);
        if let Some(c) = closed[i].finite() {
            say!(out, "{who}_mse_rel_dev: {}", rel_dev(result.mean_sq_error[i], c));
        }
        say!(out, "{who}_sample_rate: {}", result.sample_rate[i]);
    }
    say!(out, "J1_empirical: {}", cost.leader);
    say!(out, "J1_closed_form: {}", leader_cost(&constants, policy));
    say!(out, "J2_empirical: {}", cost.follower);
    say!(out, "J2_closed_form: {}", follower_cost(&constants, policy));

    if let Some(path) = &args.out {
        let mut csv = String::from("age,probability,empirical_cond_error\n");
        for (age, mass) in result.age_histogram.iter().enumerate() {
            let cond = result.cond_error_by_age[0][age].map(|e| e.to_string()).unwrap_or_default();
            csv.push_str(&format!("{age},{mass},{cond}\n"));
        }
        write_file(path, &csv)?;
        let mut manifest = RunManifest::new(
            "simulate",
            json!({
                "alpha1": args.alpha1, "alpha2": args.alpha2, "alpha": args.alpha,
                "c1": args.c1, "c2": args.c2, "p1": args.p1, "p2": args.p2,
                "horizon": args.horizon, "age_cap": args.age_cap,
            }),
            Some(args.seed),
        );
        manifest.record(path);
        manifest.write(&manifest_path_for(path))?;
        say!(out, "wrote: {}", path.display());
    }
    Ok(Outcome::Success)
}

pub fn cmd_verify(args: &VerifyArgs, out: Out<'_>) -> Result<Outcome, CliError> {
    if !(args.grid_step > 0.0 && args.grid_step <= 1e-2) {
        return Err(CliError::usage(format!("--grid-step {} must lie in (0, 0.01]", args.grid_step)));
    }
    let mut instances = verify::sample_instances(args.instances, args.seed);
    if args.include_fixed {
        instances.extend(
            verify::FIXED_INSTANCES
                .iter()
                .map(|&(k1, k2)| GameConstants::unit_costs(k1, k2).expect("finite")),
        );
    }
    let rows = verify::verify_all(&instances, args.grid_step)?;
    say!(out, "{:>4} {:>10} {:>10} {:>9} {:>9} {:>9} {:>9} {:>10} result", "#", "k1", "k2", "p1", "p2", "grid_p1", "grid_p2", "gap");
    for (i, r) in rows.iter().enumerate() {
        say!(
            out,
            "{:>4} {:>10.5} {:>10.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>10.3e} {}",
            i,
            r.constants.k1,
            r.constants.k2,
            r.analytic.policy.p1,
            r.analytic.policy.p2,
            r.grid.policy.p1,
            r.grid.policy.p2,
            r.cost_gap,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    let failures = rows.iter().filter(|r| !r.pass).count();
    say!(out, "instances: {} passed: {} failed: {}", rows.len(), rows.len() - failures, failures);
    if let Some(path) = &args.out {
        write_file(path, &verify::to_csv(&rows))?;
        let mut manifest = RunManifest::new(
            "verify",
            json!({
                "instances": args.instances, "grid_step": args.grid_step,
                "include_fixed": args.include_fixed,
            }),
            Some(args.seed),
        );
        manifest.record(path);
        manifest.write(&manifest_path_for(path))?;
    }
    say!(out, "overall: {}", if failures == 0 { "PASS" } else { "FAIL" });
    Ok(if failures == 0 {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

/// A reference plot of the leader's reduced objective, with `c1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub name: &'static str,
    pub k1: f64,
    pub k2: f64,
}

pub const PANELS: [Panel; 4] = [
    Panel { name: "a", k1: 1.0, k2: 1.25 },
    Panel { name: "b", k1: 1.0, k2: 0.1 },
    Panel { name: "c", k1: -0.5, k2: 1.25 },
    Panel { name: "d", k1: -2.0, k2: 1.25 },
];

#[derive(Debug, Clone)]
pub struct PanelOutput {
    pub panel: Panel,
    pub csv: PathBuf,
    pub svg: PathBuf,
    pub argmin: SweepRow,
    pub equilibrium: Equilibrium,
}

pub fn render_figures(out_dir: &Path, p1_step: f64) -> Result<Vec<PanelOutput>, CliError> {
    check_step(p1_step)?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Write {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut manifest = RunManifest::new("figures", json!({ "p1_step": p1_step, "c1": 1.0 }), None);
    let mut outputs = Vec::new();
    for panel in PANELS {
        let constants = GameConstants::unit_costs(panel.k1, panel.k2)?;
        let rows = sweep::sweep_rows(&constants, p1_step);
        let best = rows[sweep::argmin(&rows)];
        let csv = out_dir.join(format!("panel_{}.csv", panel.name));
        let svg_path = out_dir.join(format!("panel_{}.svg", panel.name));
        write_file(&csv, &sweep::to_csv(&rows))?;
        let title = format!("({}) K1 = {}, K2 = {}", panel.name, panel.k1, panel.k2);
        write_file(&svg_path, &plot_sweep(&title, &rows, &best))?;
        manifest.record(&csv);
        manifest.record(&svg_path);
        outputs.push(PanelOutput {
            panel,
            csv,
            svg: svg_path,
            argmin: best,
            equilibrium: solve(&constants),
        });
    }
    manifest.write(&out_dir.join("manifest.json"))?;
    Ok(outputs)
}

pub fn cmd_figures(args: &FiguresArgs, out: Out<'_>) -> Result<Outcome, CliError> {
    for p in render_figures(&args.out_dir, args.p1_step)? {
        let upper = bounds(p.panel.k2).map(|b| b.p1_upper).unwrap_or(f64::NAN);
        say!(
            out,
            "panel ({}) K1={} K2={}: argmin p1={} br_p2={} j1={} | equilibrium ({}, {}) | p1_upper={}",
            p.panel.name,
            p.panel.k1,
            p.panel.k2,
            p.argmin.p1,
            p.argmin.br_p2,
            p.argmin.j1,
            p.equilibrium.policy.p1,
            p.equilibrium.policy.p2,
            upper
        );
    }
    say!(out, "wrote: {}", args.out_dir.display());
    Ok(Outcome::Success)
}
