//! Command dispatch.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use bgc_core::json::{CapacityResultJson, ChannelJson, ConstraintJson, DecompositionJson, StateJson};
use bgc_core::capacity::{constrained_capacity_with, waterfilling_commuting_with, OptimizerOptions};
use bgc_core::decompose::decompose_with;
use bgc_core::entropy::min_output_entropy_with;
use bgc_core::{
    additive_capacity, amplifier_capacity, gaussian_entropy, shannon_capacity, thermal_capacity, Error, GaussianChannel,
    LogBase, Tolerances,
};
use bgc_fock::{run_suite, OracleConfig, SuiteOptions};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{Cli, Command, Family, FamilyPoint, Format, Method, SweepAxis};
use crate::error::{CliError, Result};
use crate::output::{sig12, sink, write_csv, write_json};

/// Everything one invocation needs, resolved from the flags.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub log_base: LogBase,
    pub format: Option<Format>,
    pub tolerances: Tolerances,
    pub oracle: OracleConfig,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        Self {
            tolerances: cli.common.tol.core(),
            oracle: cli.common.tol.oracle(),
            command: cli.command,
            input: cli.common.input,
            output: cli.common.output,
            log_base: cli.common.log_base.into(),
            format: cli.common.format,
        }
    }
}

#[derive(Debug, Deserialize)]
struct ApplyInput {
    channel: ChannelJson,
    state: StateJson,
}

#[derive(Debug, Deserialize)]
struct CapacityInput {
    channel: ChannelJson,
    constraint: ConstraintJson,
}

#[derive(Debug, Serialize)]
struct CapacityOutput {
    unit: LogBase,
    method: &'static str,
    #[serde(flatten)]
    result: CapacityResultJson,
}

fn read_input<T: DeserializeOwned>(cfg: &RunConfig) -> Result<T> {
    let path = cfg.input.as_ref().ok_or_else(|| CliError::Parse("this command needs --input".into()))?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn unit(base: LogBase) -> &'static str {
    match base {
        LogBase::Nats => "nats",
        LogBase::Bits => "bits",
    }
}

/// A single named scalar, as a one-row CSV or a JSON object.
fn write_scalar(out: &mut dyn Write, format: Format, name: &str, value: f64, base: LogBase) -> Result<()> {
    match format {
        Format::Json => write_json(out, &json!({ name: value, "unit": unit(base) })),
        Format::Csv => write_csv(out, &[name, "unit"], &[vec![sig12(value), unit(base).into()]]),
    }
}

fn family_channel(p: &FamilyPoint) -> bgc_core::Result<GaussianChannel> {
    match p.family {
        Family::Thermal => GaussianChannel::thermal_noise(p.param, p.noise),
        Family::Additive => GaussianChannel::additive_noise(p.noise),
        Family::Amplifier => GaussianChannel::noisy_amplifier(p.param, p.noise),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
struct FamilyValues {
    quantum_capacity: f64,
    shannon_capacity: f64,
    min_output_entropy: f64,
}

/// Closed-form capacity, the Shannon baseline `½ log(1 + S/N_eff)` with the
/// received signal `S` and the output noise floor `N_eff`, and the minimal
/// output entropy.
fn family_values(p: &FamilyPoint, base: LogBase, tol: &Tolerances) -> bgc_core::Result<FamilyValues> {
    let (quantum, signal, floor) = match p.family {
        Family::Thermal => (
            thermal_capacity(p.param, p.noise, p.energy)?,
            p.param * p.energy,
            (1.0 - p.param) * p.noise,
        ),
        Family::Additive => (additive_capacity(p.noise, p.energy)?, p.energy, p.noise),
        Family::Amplifier => (
            amplifier_capacity(p.param, p.noise, p.energy)?,
            p.param * p.energy,
            (p.param - 1.0) * (p.noise + 1.0),
        ),
    };
    let shannon = match shannon_capacity(signal, floor, base) {
        Err(Error::ZeroNoise) if signal > 0.0 => f64::INFINITY,
        Err(Error::ZeroNoise) => 0.0,
        other => other?,
    };
    Ok(FamilyValues {
        quantum_capacity: base.from_nats(quantum),
        shannon_capacity: shannon,
        min_output_entropy: base.from_nats(min_output_entropy_with(&family_channel(p)?, tol)?),
    })
}

fn sweep_points(point: &FamilyPoint, over: SweepAxis, from: f64, to: f64, steps: usize) -> Result<Vec<(f64, FamilyPoint)>> {
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(CliError::Parse("sweep needs finite --from/--to and --steps >= 1".into()));
    }
    Ok((0..steps)
        .map(|i| {
            let x = if steps == 1 { from } else { from + (to - from) * i as f64 / (steps - 1) as f64 };
            let mut p = point.clone();
            match over {
                SweepAxis::Energy => p.energy = x,
                SweepAxis::Noise => p.noise = x,
                SweepAxis::Param => p.param = x,
            }
            (x, p)
        })
        .collect())
}

pub fn run(cfg: RunConfig) -> Result<()> {
    let tol = cfg.tolerances;
    let base = cfg.log_base;
    let channel = |cfg: &RunConfig| -> Result<GaussianChannel> { Ok(read_input::<ChannelJson>(cfg)?.to_channel(&tol)?) };
    match &cfg.command {
        Command::Validate => {
            let ch = channel(&cfg)?;
            let mut out = sink(cfg.output.as_deref())?;
            write_json(
                &mut out,
                &json!({
                    "valid": true,
                    "kind": ch.kind(),
                    "input_modes": ch.input_modes(),
                    "output_modes": ch.output_modes(),
                    "inequality_margin": ch.inequality_margin(),
                }),
            )
        }
        Command::Classify => {
            let ch = channel(&cfg)?;
            let class = ch.classify_with(&tol);
            let mut out = sink(cfg.output.as_deref())?;
            write_json(
                &mut out,
                &json!({
                    "kind": ch.kind(),
                    "tag": class.tag,
                    "quantum_limited": class.quantum_limited,
                    "entanglement_breaking": ch.is_entanglement_breaking_with(&tol),
                }),
            )
        }
        Command::Decompose => {
            let ch = channel(&cfg)?;
            let parts = decompose_with(&ch, &tol)?;
            let mut out = sink(cfg.output.as_deref())?;
            write_json(&mut out, &DecompositionJson::from(&parts))
        }
        Command::Apply => {
            let input: ApplyInput = read_input(&cfg)?;
            let ch = input.channel.to_channel(&tol)?;
            let state = input.state.to_state(&tol)?;
            let result = ch.apply_with(&state, &tol)?;
            let mut out = sink(cfg.output.as_deref())?;
            write_json(&mut out, &StateJson::from(&result))
        }
        Command::Entropy => {
            let state = read_input::<StateJson>(&cfg)?.to_state(&tol)?;
            let mut out = sink(cfg.output.as_deref())?;
            let value = base.from_nats(gaussian_entropy(&state));
            write_scalar(&mut out, cfg.format.unwrap_or(Format::Csv), "entropy", value, base)
        }
        Command::MinEntropy => {
            let ch = channel(&cfg)?;
            let value = base.from_nats(min_output_entropy_with(&ch, &tol)?);
            let mut out = sink(cfg.output.as_deref())?;
            write_scalar(&mut out, cfg.format.unwrap_or(Format::Csv), "min_output_entropy", value, base)
        }
        Command::Capacity { method } => {
            let input: CapacityInput = read_input(&cfg)?;
            let ch = input.channel.to_channel(&tol)?;
            let cons = input.constraint.to_constraint(&tol)?;
            let (result, name) = match method {
                Method::General => (constrained_capacity_with(&ch, &cons, &tol, &OptimizerOptions::default())?, "general"),
                Method::Waterfilling => (waterfilling_commuting_with(&ch, &cons, &tol)?, "waterfilling"),
            };
            let report = CapacityOutput {
                unit: base,
                method: name,
                result: CapacityResultJson::new(&result, base),
            };
            let mut out = sink(cfg.output.as_deref())?;
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Json => write_json(&mut out, &report),
                Format::Csv => write_csv(
                    &mut out,
                    &["capacity", "unit", "method", "iterations", "converged", "gradient_norm", "duality_gap"],
                    &[vec![
                        sig12(report.result.value),
                        unit(base).into(),
                        name.into(),
                        report.result.iterations.to_string(),
                        report.result.converged.to_string(),
                        sig12(report.result.gradient_norm),
                        sig12(report.result.duality_gap),
                    ]],
                ),
            }
        }
        Command::ClosedForm { point } => {
            let v = family_values(point, base, &tol)?;
            let mut out = sink(cfg.output.as_deref())?;
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Json => write_json(&mut out, &json!({ "point": point_json(point), "unit": unit(base), "values": v })),
                Format::Csv => write_csv(
                    &mut out,
                    &["family", "param", "noise", "energy", "quantum_capacity", "shannon_capacity", "min_output_entropy", "unit"],
                    &[vec![
                        family_name(point.family).into(),
                        sig12(point.param),
                        sig12(point.noise),
                        sig12(point.energy),
                        sig12(v.quantum_capacity),
                        sig12(v.shannon_capacity),
                        sig12(v.min_output_entropy),
                        unit(base).into(),
                    ]],
                ),
            }
        }
        Command::Sweep { point, over, from, to, steps } => {
            let rows = sweep_points(point, *over, *from, *to, *steps)?
                .into_iter()
                .map(|(x, p)| Ok((x, family_values(&p, base, &tol)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut out = sink(cfg.output.as_deref())?;
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Json => {
                    let rows: Vec<_> = rows.iter().map(|(x, v)| json!({ "parameter": x, "values": v })).collect();
                    write_json(&mut out, &json!({ "point": point_json(point), "over": format!("{over:?}").to_lowercase(), "unit": unit(base), "rows": rows }))
                }
                Format::Csv => write_csv(
                    &mut out,
                    &["parameter", "quantum_capacity", "shannon_capacity", "min_output_entropy"],
                    &rows
                        .iter()
                        .map(|(x, v)| vec![sig12(*x), sig12(v.quantum_capacity), sig12(v.shannon_capacity), sig12(v.min_output_entropy)])
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Verify { suite, seed, dim, grid_points, samples } => {
            let opts = SuiteOptions { seed: *seed, dim: *dim, grid_points: *grid_points, samples: *samples };
            let reports = run_suite((*suite).into(), &opts, &cfg.oracle);
            let mut out = sink(cfg.output.as_deref())?;
            match cfg.format.unwrap_or(Format::Json) {
                Format::Json => write_json(&mut out, &reports)?,
                Format::Csv => write_csv(
                    &mut out,
                    &["check", "metric", "tolerance", "pass", "parameters"],
                    &reports
                        .iter()
                        .map(|r| vec![r.check.clone(), sig12(r.metric), sig12(r.tolerance), r.pass.to_string(), r.parameters.to_string()])
                        .collect::<Vec<_>>(),
                )?,
            }
            out.flush()?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!("{} of {} checks passed", reports.len() - failed, reports.len());
            if failed > 0 {
                return Err(CliError::Verification { failed, total: reports.len() });
            }
            Ok(())
        }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Thermal => "thermal",
        Family::Additive => "additive",
        Family::Amplifier => "amplifier",
    }
}

fn point_json(p: &FamilyPoint) -> serde_json::Value {
    json!({ "family": family_name(p.family), "param": p.param, "noise": p.noise, "energy": p.energy })
}
