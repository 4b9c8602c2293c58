use std::fs;
use std::io::Write;
use std::path::Path;

use agip_core::report::{
    emit_appendix, emit_curve, emit_report, parse_profile, save_profile, KeyScores, LoadedProfile,
    OutputFormat, Rounding, REPORT_HEADER,
};
use agip_core::{
    agi_auc, agi_p, apply_scenario, rank_bottlenecks, rollup_all, sample_curve,
    uncertainty_envelope, Aggregator, EnvelopeParams, EpsilonFloor, Error, Exponent, PGrid,
    ScenarioEdit, Score,
};
use anyhow::Context;

use crate::args::{AggregatorArg, Cli, Command, FormatArg, GridArgs, ReportRounding, RoundingArg};

/// Exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    Usage = 1,
    Input = 2,
    Compute = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub class: ExitClass,
    pub error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            class: ExitClass::Input,
            error: error.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let class = if e.is_input_error() {
            ExitClass::Input
        } else {
            ExitClass::Compute
        };
        Failure {
            class,
            error: e.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    eps: EpsilonFloor,
    verbose: bool,
}

impl Ctx {
    fn note(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("agip: {}", msg.as_ref());
        }
    }
}

pub fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let eps = EpsilonFloor::new(cli.eps).map_err(|e| Failure {
        class: ExitClass::Usage,
        error: e.into(),
    })?;
    let ctx = Ctx {
        eps,
        verbose: cli.verbose,
    };
    match cli.command {
        Command::Validate { file } => validate(&ctx, &file, out),
        Command::Score { file, p, rounding } => score(&ctx, &file, &p, rounding, out),
        Command::Curve { file, grid, format } => curve(&ctx, &file, grid, format, out),
        Command::Auc {
            file,
            grid,
            rounding,
        } => auc(&ctx, &file, grid, rounding, out),
        Command::Rollup {
            file,
            aggregator,
            rounding,
            format,
            save,
        } => rollup(&ctx, &file, aggregator, rounding, format, save.as_deref(), out),
        Command::Report {
            files,
            grid,
            rounding,
            format,
        } => report(&ctx, &files, grid, rounding, format, out),
        Command::Scenario {
            file,
            set,
            grid,
            rounding,
            save,
        } => scenario(&ctx, &file, &set, grid, rounding, save.as_deref(), out),
        Command::Bottlenecks { file, target, grid } => bottlenecks(&ctx, &file, target, grid, out),
        Command::Envelope {
            file,
            scale,
            samples,
            seed,
            grid,
            format,
        } => envelope(
            &ctx,
            &file,
            EnvelopeParams {
                scale,
                samples,
                seed,
            },
            grid,
            format,
            out,
        ),
    }
}

fn load(ctx: &Ctx, path: &Path) -> Result<LoadedProfile, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)?;
    let loaded = parse_profile(&text).map_err(|e| Failure {
        class: ExitClass::Input,
        error: anyhow::Error::new(e).context(path.display().to_string()),
    })?;
    ctx.note(format!(
        "loaded `{}` from {} ({} domains, {} subdomain tables)",
        loaded.profile.model_name,
        path.display(),
        loaded.profile.len(),
        loaded.tables.len()
    ));
    Ok(loaded)
}

fn grid_of(ctx: &Ctx, g: GridArgs) -> Result<PGrid, Failure> {
    let grid = PGrid::new(g.p_min, g.p_max, g.grid)?;
    ctx.note(format!(
        "grid [{}, {}] with {} points, eps {}",
        grid.p_min,
        grid.p_max,
        grid.num_points,
        ctx.eps.value()
    ));
    Ok(grid)
}

fn fmt_percent(rounding: RoundingArg, percent: f64) -> String {
    match rounding {
        RoundingArg::Integer => Rounding::Integer.format(percent),
        RoundingArg::Decimal => Rounding::OneDecimal.format(percent),
        RoundingArg::Full => percent.to_string(),
    }
}

fn output_format(f: FormatArg) -> OutputFormat {
    match f {
        FormatArg::Csv => OutputFormat::Delimited,
        FormatArg::Json => OutputFormat::Structured,
    }
}

fn csv_out(out: &mut impl Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out as &mut dyn Write)
}

fn validate(ctx: &Ctx, file: &Path, out: &mut impl Write) -> Outcome {
    let loaded = load(ctx, file)?;
    let mut w = csv_out(out);
    w.write_record(["model", "domains", "subdomain_tables", "weighted"])
        .map_err(anyhow::Error::from)
        .map_err(Failure::input)?;
    w.write_record([
        loaded.profile.model_name.clone(),
        loaded.profile.len().to_string(),
        loaded.tables.len().to_string(),
        loaded.profile.weights.is_some().to_string(),
    ])
    .map_err(anyhow::Error::from)
    .map_err(Failure::input)?;
    w.flush()?;
    Ok(())
}

fn score(ctx: &Ctx, file: &Path, ps: &[f64], rounding: RoundingArg, out: &mut impl Write) -> Outcome {
    let loaded = load(ctx, file)?;
    writeln!(out, "p,agi_p_percent")?;
    for &p in ps {
        let v = agi_p(&loaded.profile, Exponent::new(p)?, ctx.eps)?;
        writeln!(out, "{},{}", p, fmt_percent(rounding, v.percent()))?;
    }
    Ok(())
}

fn curve(ctx: &Ctx, file: &Path, grid: GridArgs, format: FormatArg, out: &mut impl Write) -> Outcome {
    let loaded = load(ctx, file)?;
    let grid = grid_of(ctx, grid)?;
    let c = sample_curve(&loaded.profile, &grid, ctx.eps)?;
    out.write_all(&emit_curve(&c, output_format(format)))?;
    Ok(())
}

fn auc(ctx: &Ctx, file: &Path, grid: GridArgs, rounding: RoundingArg, out: &mut impl Write) -> Outcome {
    let loaded = load(ctx, file)?;
    let grid = grid_of(ctx, grid)?;
    let v = agi_auc(&loaded.profile, &grid, ctx.eps)?;
    writeln!(out, "{}", fmt_percent(rounding, v.percent()))?;
    Ok(())
}

fn rollup(
    ctx: &Ctx,
    file: &Path,
    aggregator: AggregatorArg,
    rounding: RoundingArg,
    format: FormatArg,
    save: Option<&Path>,
    out: &mut impl Write,
) -> Outcome {
    let loaded = load(ctx, file)?;
    if loaded.tables.is_empty() {
        return Err(Failure {
            class: ExitClass::Compute,
            error: anyhow::anyhow!("{} has no subdomain tables to roll up", file.display()),
        });
    }
    let aggregator = match aggregator {
        AggregatorArg::Am => Aggregator::Am,
        AggregatorArg::Wam => Aggregator::Wam,
        AggregatorArg::Gm => Aggregator::Gm,
        AggregatorArg::Wgm => Aggregator::Wgm,
    };
    let (profile, aggregates) = rollup_all(
        loaded.profile.model_name.clone(),
        &loaded.tables,
        aggregator,
        ctx.eps,
    )?;
    ctx.note(format!("rolled up {} domains with {aggregator}", profile.len()));
    match (format, rounding) {
        (FormatArg::Csv, RoundingArg::Full) => {
            let mut w = csv_out(out);
            let wr = |w: &mut csv::Writer<&mut dyn Write>, rec: Vec<String>| {
                w.write_record(rec).map_err(|e| Failure::input(anyhow::Error::from(e)))
            };
            wr(&mut w, ["domain", "am", "wam", "gm", "wgm"].map(String::from).to_vec())?;
            for a in &aggregates {
                wr(
                    &mut w,
                    vec![
                        a.domain_id.clone(),
                        a.am.to_string(),
                        a.wam.to_string(),
                        a.gm.to_string(),
                        a.wgm.to_string(),
                    ],
                )?;
            }
            w.flush()?;
        }
        (FormatArg::Csv, r) => {
            let r = if r == RoundingArg::Integer {
                Rounding::Integer
            } else {
                Rounding::OneDecimal
            };
            out.write_all(&emit_appendix(&aggregates, r, OutputFormat::Delimited))?;
        }
        (FormatArg::Json, _) => {
            let doc = serde_json::json!({
                "model": profile.model_name,
                "aggregator": aggregator.name(),
                "profile": profile
                    .domains
                    .iter()
                    .map(|d| serde_json::json!({"id": d.id, "score_percent": d.score.percent()}))
                    .collect::<Vec<_>>(),
                "aggregates": aggregates,
            });
            let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| Failure::input(anyhow::Error::from(e)))?;
            bytes.push(b'\n');
            out.write_all(&bytes)?;
        }
    }
    if let Some(path) = save {
        fs::write(path, save_profile(&profile, &[]))
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::input)?;
        ctx.note(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn report(
    ctx: &Ctx,
    files: &[std::path::PathBuf],
    grid: GridArgs,
    rounding: ReportRounding,
    format: FormatArg,
    out: &mut impl Write,
) -> Outcome {
    let profiles = files
        .iter()
        .map(|f| load(ctx, f).map(|l| l.profile))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = grid_of(ctx, grid)?;
    let rounding = match rounding {
        ReportRounding::Integer => Rounding::Integer,
        ReportRounding::Decimal => Rounding::OneDecimal,
    };
    out.write_all(&emit_report(
        &profiles,
        &grid,
        ctx.eps,
        rounding,
        output_format(format),
    )?)?;
    Ok(())
}

fn scenario(
    ctx: &Ctx,
    file: &Path,
    set: &[(String, f64)],
    grid: GridArgs,
    rounding: RoundingArg,
    save: Option<&Path>,
    out: &mut impl Write,
) -> Outcome {
    let loaded = load(ctx, file)?;
    let grid = grid_of(ctx, grid)?;
    let edits = set
        .iter()
        .map(|(id, pct)| {
            Score::from_percent(*pct)
                .map(|s| ScenarioEdit::new(id.clone(), s))
                .map_err(|e| Failure {
                    class: ExitClass::Usage,
                    error: anyhow::Error::new(e).context(format!("--set {id}={pct}")),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let edited = apply_scenario(&loaded.profile, &edits)?;
    let before = KeyScores::compute(&loaded.profile, &grid, ctx.eps)?;
    let after = KeyScores::compute(&edited, &grid, ctx.eps)?;
    writeln!(out, "metric,before,after")?;
    for ((name, b), a) in REPORT_HEADER[1..]
        .iter()
        .zip(before.columns())
        .zip(after.columns())
    {
        writeln!(out, "{name},{},{}", fmt_percent(rounding, b), fmt_percent(rounding, a))?;
    }
    if let Some(path) = save {
        fs::write(path, save_profile(&edited, &[]))
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::input)?;
        ctx.note(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn bottlenecks(ctx: &Ctx, file: &Path, target: f64, grid: GridArgs, out: &mut impl Write) -> Outcome {
    let loaded = load(ctx, file)?;
    let grid = grid_of(ctx, grid)?;
    let target = Score::from_percent(target).map_err(|e| Failure {
        class: ExitClass::Usage,
        error: anyhow::Error::new(e).context("--target"),
    })?;
    let ranked = rank_bottlenecks(&loaded.profile, target, &grid, ctx.eps)?;
    writeln!(out, "rank,domain,score_percent,auc_gain_points")?;
    for (i, (id, gain)) in ranked.iter().enumerate() {
        let score = loaded.profile.score_of(id).expect("ranked domain exists");
        writeln!(out, "{},{},{},{}", i + 1, id, score.percent(), gain * 100.0)?;
    }
    Ok(())
}

fn envelope(
    ctx: &Ctx,
    file: &Path,
    params: EnvelopeParams,
    grid: GridArgs,
    format: FormatArg,
    out: &mut impl Write,
) -> Outcome {
    let loaded = load(ctx, file)?;
    let grid = grid_of(ctx, grid)?;
    ctx.note(format!(
        "envelope: scale {}, {} samples, seed {}",
        params.scale, params.samples, params.seed
    ));
    let env = uncertainty_envelope(&loaded.profile, &grid, ctx.eps, params)?;
    match format {
        FormatArg::Csv => {
            writeln!(out, "p,lower,nominal,upper")?;
            for pt in &env.points {
                writeln!(out, "{},{},{},{}", pt.p, pt.lower, pt.nominal, pt.upper)?;
            }
        }
        FormatArg::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(&env).map_err(|e| Failure::input(anyhow::Error::from(e)))?;
            bytes.push(b'\n');
            out.write_all(&bytes)?;
        }
    }
    Ok(())
}
