//! `lvtlab` — scenario runner for particle/kinetic-energy density audits of
//! local virial theorems.
//!
//! Exit codes: 0 all asserted tolerances pass, 1 a tolerance failed,
//! 2 unknown preset or bad configuration.

mod config;
mod output;
mod presets;
mod scenario;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use lvtlab_core::model::{PotentialKind, PotentialSpec, Units};
use lvtlab_core::smooth::XiMode;
use scenario::{Filling, LambdaChoice, Scenario};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "lvtlab", version, about = "local virial theorem laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a configuration file.
    Run {
        /// Preset name (see `lvtlab list`) or path to a key = value config.
        target: String,
        /// Use the reference-scale particle numbers instead of desk scale.
        #[arg(long)]
        paper_scale: bool,
        /// Re-run at half the grid spacing and report norm drift (≤10%).
        #[arg(long)]
        grid_refine: bool,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// List available presets.
    List,
    /// Describe a preset (desk and paper scales).
    Describe { name: String },
}

fn main() {
    let code = match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run() -> Result<i32> {
    if let Ok(threads) = std::env::var("LVTLAB_THREADS") {
        let n: usize = threads
            .parse()
            .map_err(|_| anyhow!("LVTLAB_THREADS must be an integer, got `{threads}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            println!("available presets:");
            for p in presets::PRESET_NAMES {
                println!("  {p}");
            }
            Ok(0)
        }
        Command::Describe { name } => {
            print!("{}", presets::describe(&name)?);
            Ok(0)
        }
        Command::Run { target, paper_scale, grid_refine, out } => {
            let scenarios = load_target(&target, paper_scale)?;
            let mut all_ok = true;
            for sc in &scenarios {
                let art = sc.run().with_context(|| format!("running {}", sc.name))?;
                let summary = scenario::write_artifacts(&out, &sc.name, &art)?;
                print_outcomes(sc, &art);
                println!("  summary: {}", summary.display());
                all_ok &= art.all_passed;

                if grid_refine {
                    let mut fine = sc.clone();
                    fine.points = sc.points * 2;
                    fine.name = format!("{}-refined", sc.name);
                    let art2 = fine.run().with_context(|| format!("refining {}", sc.name))?;
                    scenario::write_artifacts(&out, &fine.name, &art2)?;
                    for (a, b) in art.outcomes.iter().zip(&art2.outcomes) {
                        // drift counts only worsening; checks still passing
                        // their own gate after refinement are stable even if
                        // a roundoff-floor norm moved relatively
                        let drift = (b.norms.linf_rel - a.norms.linf_rel).max(0.0)
                            / a.norms.linf_rel.max(1e-14);
                        let ok = drift <= 0.10
                            || match a.tolerance {
                                Some(t) => b.norms.linf_rel <= t,
                                None => true,
                            };
                        println!(
                            "  refine {}: L∞ {:.3e} → {:.3e} (drift {:.1}%){}",
                            a.theorem,
                            a.norms.linf_rel,
                            b.norms.linf_rel,
                            100.0 * drift,
                            if ok { "" } else { "  DRIFT EXCEEDS 10%" }
                        );
                        all_ok &= ok;
                    }
                }
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn print_outcomes(sc: &Scenario, art: &scenario::RunArtifacts) {
    println!("scenario {}: {}", sc.name, sc.description);
    for o in &art.outcomes {
        let status = match o.passed {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "info",
        };
        let tol = o
            .tolerance
            .map(|t| format!(" (tol {t:.1e})"))
            .unwrap_or_default();
        println!(
            "  [{status}] {}: L∞ {:.3e}, L2 {:.3e}{tol}  {}",
            o.theorem, o.norms.linf_rel, o.norms.l2_rel, o.note
        );
    }
}

fn load_target(target: &str, paper_scale: bool) -> Result<Vec<Scenario>> {
    if Path::new(target).is_file() {
        return config_scenario(target);
    }
    presets::preset(target, paper_scale)
}

fn config_scenario(path: &str) -> Result<Vec<Scenario>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let ini = config::Ini::parse(&text)?;
    let kind = ini
        .get("system", "kind")
        .ok_or_else(|| anyhow!("[system] kind is required"))?;
    let units = match ini.get("system", "units").unwrap_or("natural") {
        "billiard" => Units::billiard(),
        "natural" => Units::natural(),
        other => anyhow::bail!("unknown units `{other}`"),
    };
    let spec = match kind {
        "iho" => PotentialSpec::new(
            PotentialKind::Iho {
                omega: ini.f64("system", "omega")?.unwrap_or(1.0),
                dim: ini.u64("system", "dim")?.unwrap_or(3) as u32,
            },
            units,
        )?,
        "linear" => {
            let slopes = ini
                .list("system", "slopes")
                .unwrap_or_else(|| vec!["1.0".into()])
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| anyhow!("bad slope `{s}`")))
                .collect::<Result<Vec<_>>>()?;
            PotentialSpec::new(PotentialKind::Linear { slopes }, units)?
        }
        "box" => PotentialSpec::new(
            PotentialKind::Box1D { length: ini.f64("system", "length")?.unwrap_or(1.0) },
            units,
        )?,
        "quartic1d" => PotentialSpec::new(
            PotentialKind::Quartic1D { c: ini.f64("system", "c")?.unwrap_or(0.5) },
            units,
        )?,
        "radialpower" => PotentialSpec::new(
            PotentialKind::RadialPower {
                c: ini.f64("system", "c")?.unwrap_or(0.5),
                p: ini.f64("system", "p")?.unwrap_or(4.0),
                dim: ini.u64("system", "dim")?.unwrap_or(2) as u32,
            },
            units,
        )?,
        "coupledquartic2d" => PotentialSpec::new(
            PotentialKind::CoupledQuartic2D { kappa: ini.f64("system", "kappa")?.unwrap_or(0.6) },
            units,
        )?,
        "disk" => PotentialSpec::new(
            PotentialKind::DiskBilliard { radius: ini.f64("system", "radius")?.unwrap_or(1.0) },
            units,
        )?,
        other => anyhow::bail!("unknown system kind `{other}`"),
    };
    let filling = if let Some(n) = ini.u64("filling", "n")? {
        Filling::Particles(n)
    } else if let Some(m) = ini.u64("filling", "m")? {
        Filling::Shells(m as u32)
    } else if let Some(l) = ini.f64("filling", "lambda")? {
        Filling::FermiEnergy(l)
    } else {
        anyhow::bail!("[filling] needs n, m, or lambda")
    };
    let default_theorems = vec!["lvt1".into(), "lvt_basic".into(), "slvt".into()];
    let name = Path::new(path)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("config")
        .to_string();
    Ok(vec![Scenario {
        name,
        spec,
        filling,
        extent: ini
            .f64("grid", "extent")?
            .ok_or_else(|| anyhow!("[grid] extent is required"))?,
        points: ini.u64("grid", "points")?.unwrap_or(2000) as usize,
        theorems: ini.list("checks", "theorems").unwrap_or(default_theorems),
        surface_correction: ini.bool("checks", "surface_correction")?.unwrap_or(false),
        xi_mode: match ini.get("checks", "xi_mode").unwrap_or("tf") {
            "tf" => XiMode::Tf,
            "local-average" | "localaverage" => XiMode::LocalAverage,
            other => anyhow::bail!("unknown xi_mode `{other}`"),
        },
        lambda_choice: match ini.get("checks", "lambda").unwrap_or("auto") {
            "auto" => LambdaChoice::Auto,
            "shell" => LambdaChoice::Shell,
            "tf" => LambdaChoice::SmoothTf,
            "weyl" => LambdaChoice::Weyl,
            "midpoint" => LambdaChoice::Midpoint,
            other => anyhow::bail!("unknown lambda choice `{other}`"),
        },
        description: format!("configuration {path}"),
    }])
}
