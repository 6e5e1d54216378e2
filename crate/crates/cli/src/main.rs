//! Command-line frontend: vanishing angles, bound tables, cone certificates,
//! hypercone classification and the aggregated claim report.
//!
//! Exit codes: 0 when every requested certificate is Minimizing (or every
//! claim passes, or the requested angle exists), 1 when something is
//! inconclusive or fails, 2 on input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cone_certify::catalog::{ambient_dim, catalog_json, wang_minimizing, Side};
use cone_certify::certifier::{
    certify_focal_cone, certify_focal_union, certify_product, recheck_certificate, Certificate,
    Verdict,
};
use cone_certify::claims::verify_claims;
use cone_certify::factors::parse_factor_list;
use cone_certify::profile::{
    solve_profile, theta_upper_bound, Outcome, SolverSettings, ThetaBoundError,
};
use cone_certify::qmodel::{QModel, Spectrum};
use cone_certify::sweep_g4_families;
use cone_certify::table::generate_angle_table;

#[derive(Parser)]
#[command(
    name = "cone-certify",
    version,
    about = "Certifies area-minimizing cones over focal submanifolds and their minimal products"
)]
struct Cli {
    /// Number of worker threads for parallel computations.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Exact,
    #[value(name = "F", alias = "f")]
    F,
    Exp,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Plus => Side::Plus,
            SideArg::Minus => Side::Minus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the vanishing angle of one (dim, alpha^2) pair.
    Angle(AngleCmd),
    /// Vanishing-angle upper bounds over a (dim, alpha^2) grid.
    Table(TableCmd),
    /// Certify a cone.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Hypercone classification predicate for a minimal isoparametric
    /// hypersurface family.
    Classify(ClassifyCmd),
    /// Dump the family catalog as JSON.
    Catalog(CatalogCmd),
    /// Verify the reference-bound claim list, or re-check a stored certificate.
    Verify(VerifyCmd),
}

#[derive(Args)]
struct AngleCmd {
    /// Cone dimension k.
    #[arg(long)]
    dim: u32,
    /// Squared shape-operator norm.
    #[arg(long)]
    alpha2: Option<f64>,
    /// Determinant bound family to solve with.
    #[arg(long, value_enum, default_value = "auto")]
    model: ModelArg,
    /// Eigenvalue multiset, e.g. "1x2,-1x2,0x1"; required for --model exact.
    #[arg(long)]
    spectrum: Option<String>,
    /// Matrix size for the F bound; defaults to dim - 1.
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the sampled (t, h) trajectory as CSV to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct TableCmd {
    /// Cone dimensions: comma list or a:b range, e.g. "7:12" or "7,9,12".
    #[arg(long, default_value = "7:12")]
    dims: String,
    /// alpha^2 values: comma list or a:b integer range.
    #[arg(long, default_value = "1:19")]
    alpha2s: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Certify the cone over one focal submanifold.
    Focal(FocalCmd),
    /// Certify the union of both focal cones of a g = 4 family.
    Union(UnionCmd),
    /// Certify the cone over a minimal product of factors.
    Product(ProductCmd),
    /// Certify both sides of every g = 4 family up to a multiplicity sum.
    Sweep(SweepCmd),
}

#[derive(Args)]
struct FocalCmd {
    #[arg(long)]
    g: u8,
    #[arg(long)]
    m1: u32,
    #[arg(long)]
    m2: u32,
    #[arg(long, value_enum, default_value = "plus")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct UnionCmd {
    #[arg(long, default_value = "4")]
    g: u8,
    #[arg(long)]
    m1: u32,
    #[arg(long)]
    m2: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProductCmd {
    /// Factor list, e.g. "g=4,m1=1,m2=2,side=plus; g=3,m=2; sphere=4".
    #[arg(long)]
    factors: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepCmd {
    /// Largest m1 + m2 to enumerate.
    #[arg(long, default_value = "20")]
    max_sum: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyCmd {
    #[arg(long)]
    g: u8,
    #[arg(long)]
    m1: u32,
    #[arg(long)]
    m2: u32,
    /// Ambient dimension (the hypersurface lives in S^{n-1}); computed from
    /// the family when omitted.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CatalogCmd {
    #[arg(long, default_value = "20")]
    max_sum: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCmd {
    /// Run the full claim list (the default action).
    #[arg(long)]
    all: bool,
    /// Re-derive and validate a certificate JSON file.
    #[arg(long)]
    recheck: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --jobs ignored");
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    let settings = SolverSettings::from_env();
    match command {
        Command::Angle(cmd) => run_angle(cmd, &settings),
        Command::Table(cmd) => run_table(cmd, &settings),
        Command::Certify(cmd) => run_certify(cmd, &settings),
        Command::Classify(cmd) => run_classify(cmd),
        Command::Catalog(cmd) => {
            let json = catalog_json(cmd.max_sum);
            emit(&cmd.out, &format!("{:#}\n", json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(cmd) => run_verify(cmd, &settings),
    }
}

fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let mut entries = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (lambda, mult) = item
            .rsplit_once('x')
            .ok_or_else(|| anyhow!("expected <eigenvalue>x<multiplicity>, got `{item}`"))?;
        let lambda: f64 = lambda
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid eigenvalue `{lambda}`"))?;
        let mult: u32 = mult
            .trim()
            .parse()
            .map_err(|_| anyhow!("invalid multiplicity `{mult}`"))?;
        entries.push((lambda, mult));
    }
    Spectrum::new(entries).map_err(|e| anyhow!("invalid spectrum: {e}"))
}

fn run_angle(cmd: AngleCmd, settings: &SolverSettings) -> Result<ExitCode> {
    if cmd.dim < 2 {
        bail!("--dim must be >= 2");
    }
    let spectrum = cmd.spectrum.as_deref().map(parse_spectrum).transpose()?;
    let settings = if cmd.trace.is_some() {
        settings.clone().with_trace()
    } else {
        settings.clone()
    };

    // Auto delegates to the strategy policy; a concrete model is solved
    // directly so failures keep their typed reason.
    let solved: Result<(String, cone_certify::VanishingAngleResult)> = match cmd.model {
        ModelArg::Auto => {
            let alpha_sq = match (&spectrum, cmd.alpha2) {
                (_, Some(a)) => a,
                (Some(s), None) => s.alpha_sq(),
                (None, None) => bail!("--alpha2 (or --spectrum) is required"),
            };
            match theta_upper_bound(cmd.dim, alpha_sq, spectrum.as_ref(), &settings) {
                Ok(bound) => {
                    let content = render_angle_bound(&cmd, alpha_sq, &bound)?;
                    emit(&cmd.out, &content)?;
                    if let Some(path) = &cmd.trace {
                        // Re-solve the winning model with tracing for export.
                        let model = model_for_strategy(&bound, alpha_sq, &spectrum, cmd.dim)?;
                        let r = solve_profile(&model, cmd.dim, &settings)?;
                        write_trace(path, &r)?;
                    }
                    return Ok(ExitCode::SUCCESS);
                }
                Err(ThetaBoundError::NoVanishing { attempts, .. }) => {
                    let mut content = String::from("no vanishing angle:\n");
                    for (s, reason) in attempts {
                        content.push_str(&format!("  {}: {:?}\n", s.tag(), reason));
                    }
                    emit(&cmd.out, &content)?;
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            }
        }
        ModelArg::Exact => {
            let s = spectrum
                .clone()
                .ok_or_else(|| anyhow!("--model exact requires --spectrum"))?;
            let model = QModel::exact(s);
            Ok((
                "exact".to_string(),
                solve_profile(&model, cmd.dim, &settings)?,
            ))
        }
        ModelArg::F => {
            let alpha2 = cmd.alpha2.ok_or_else(|| anyhow!("--model F requires --alpha2"))?;
            let ell = cmd.ell.unwrap_or(cmd.dim.saturating_sub(1));
            let model = QModel::f_bound(alpha2.sqrt(), ell).map_err(|e| anyhow!("{e}"))?;
            Ok(("F".to_string(), solve_profile(&model, cmd.dim, &settings)?))
        }
        ModelArg::Exp => {
            let alpha2 = cmd
                .alpha2
                .ok_or_else(|| anyhow!("--model exp requires --alpha2"))?;
            let model = QModel::exp_bound(alpha2.sqrt()).map_err(|e| anyhow!("{e}"))?;
            Ok(("exp".to_string(), solve_profile(&model, cmd.dim, &settings)?))
        }
    };

    let (tag, result) = solved?;
    if let Some(path) = &cmd.trace {
        write_trace(path, &result)?;
    }
    let content = match cmd.format {
        Format::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "dim": cmd.dim,
                "model": tag,
                "result": result,
            })
        ),
        _ => match result.outcome {
            Outcome::Vanishes { theta, t_star } => format!(
                "theta = {:.4} deg (tan theta = {:.6}, model {tag}, dim {})\n",
                theta.to_degrees(),
                t_star,
                cmd.dim
            ),
            Outcome::NoVanishing(reason) => format!("no vanishing angle: {reason:?}\n"),
        },
    };
    emit(&cmd.out, &content)?;
    Ok(match result.outcome {
        Outcome::Vanishes { .. } => ExitCode::SUCCESS,
        Outcome::NoVanishing(_) => ExitCode::from(1),
    })
}

fn model_for_strategy(
    bound: &cone_certify::ThetaBound,
    alpha_sq: f64,
    spectrum: &Option<Spectrum>,
    dim: u32,
) -> Result<QModel> {
    use cone_certify::Strategy;
    Ok(match bound.strategy {
        Strategy::ExactSpectrum => QModel::exact(
            spectrum
                .clone()
                .ok_or_else(|| anyhow!("exact strategy without a spectrum"))?,
        ),
        Strategy::FBound => QModel::f_bound(alpha_sq.sqrt(), dim.saturating_sub(1))
            .map_err(|e| anyhow!("{e}"))?,
        Strategy::ExpBound | Strategy::Chain => {
            QModel::exp_bound(alpha_sq.sqrt()).map_err(|e| anyhow!("{e}"))?
        }
    })
}

fn render_angle_bound(
    cmd: &AngleCmd,
    alpha_sq: f64,
    bound: &cone_certify::ThetaBound,
) -> Result<String> {
    Ok(match cmd.format {
        Format::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "dim": cmd.dim,
                "alpha_sq": alpha_sq,
                "bound": bound,
            })
        ),
        _ => format!(
            "theta <= {:.4} deg (tan theta = {:.6}, strategy {}, dim {}, alpha^2 {})\n",
            bound.theta.to_degrees(),
            bound.tan_theta,
            bound.strategy.tag(),
            cmd.dim,
            alpha_sq
        ),
    })
}

fn write_trace(path: &PathBuf, result: &cone_certify::VanishingAngleResult) -> Result<()> {
    let Some(trace) = &result.trace else {
        bail!("no trace recorded");
    };
    let mut csv = String::from("t,h\n");
    for (t, h) in trace {
        csv.push_str(&format!("{t},{h}\n"));
    }
    fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn parse_axis_u32(text: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = text.split_once(':') {
        let a: u32 = a.trim().parse().map_err(|_| anyhow!("invalid range start `{a}`"))?;
        let b: u32 = b.trim().parse().map_err(|_| anyhow!("invalid range end `{b}`"))?;
        if a > b {
            bail!("empty range {a}:{b}");
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| anyhow!("invalid integer `{}`", s.trim()))
        })
        .collect()
}

fn parse_axis_f64(text: &str) -> Result<Vec<f64>> {
    if let Some((a, b)) = text.split_once(':') {
        let a: i64 = a.trim().parse().map_err(|_| anyhow!("invalid range start `{a}`"))?;
        let b: i64 = b.trim().parse().map_err(|_| anyhow!("invalid range end `{b}`"))?;
        if a > b {
            bail!("empty range {a}:{b}");
        }
        return Ok((a..=b).map(|v| v as f64).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| anyhow!("invalid number `{}`", s.trim()))
        })
        .collect()
}

fn run_table(cmd: TableCmd, settings: &SolverSettings) -> Result<ExitCode> {
    let dims = parse_axis_u32(&cmd.dims)?;
    let alpha2s = parse_axis_f64(&cmd.alpha2s)?;
    let table = generate_angle_table(&dims, &alpha2s, settings).map_err(|e| anyhow!("{e}"))?;
    let content = match cmd.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{:#}\n", table.to_json()),
        Format::Text => table.render_text(),
    };
    emit(&cmd.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn render_certificate(cert: &Certificate, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!(
            "{:#}\n",
            serde_json::to_value(cert).context("serializing certificate")?
        )),
        Format::Csv => bail!("csv output is only available for `table`"),
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("subject:    {:?}\n", cert.subject));
            out.push_str(&format!("cone dim:   {}\n", cert.cone_dim));
            out.push_str(&format!("alpha^2:    {:.6}\n", cert.alpha_sq_used));
            match cert.theta0_upper {
                Some(t) => out.push_str(&format!(
                    "theta0:     <= {:.4} deg ({} model)\n",
                    t.to_degrees(),
                    cert.q_model_used.as_deref().unwrap_or("-")
                )),
                None => out.push_str("theta0:     no vanishing angle\n"),
            }
            match cert.condition {
                cone_certify::Condition::ThetaBelowThreshold => out.push_str(&format!(
                    "condition:  theta0 < {:.4} deg\n",
                    cert.threshold.to_degrees()
                )),
                cone_certify::Condition::DoubleThetaBelowPhi => out.push_str(&format!(
                    "condition:  2 theta0 < phi, phi >= {:.4} deg (tan^2 phi >= {:.6})\n",
                    cert.threshold.to_degrees(),
                    cert.tan_phi_sq_lb.unwrap_or(f64::NAN)
                )),
            }
            out.push_str(&format!(
                "margin:     {:.6e} rad\nverdict:    {}\n",
                cert.margin, cert.verdict
            ));
            for n in &cert.notes {
                out.push_str(&format!("note:       {n}\n"));
            }
            Ok(out)
        }
    }
}

fn certificate_exit(cert: &Certificate) -> ExitCode {
    match cert.verdict {
        Verdict::Minimizing => ExitCode::SUCCESS,
        Verdict::Inconclusive => ExitCode::from(1),
    }
}

fn run_certify(cmd: CertifyCmd, settings: &SolverSettings) -> Result<ExitCode> {
    match cmd {
        CertifyCmd::Focal(c) => {
            let cert = certify_focal_cone(c.g, c.m1, c.m2, c.side.into(), settings)
                .map_err(|e| anyhow!("{e}"))?;
            emit(&c.out, &render_certificate(&cert, c.format)?)?;
            Ok(certificate_exit(&cert))
        }
        CertifyCmd::Union(c) => {
            let cert =
                certify_focal_union(c.g, c.m1, c.m2, settings).map_err(|e| anyhow!("{e}"))?;
            emit(&c.out, &render_certificate(&cert, c.format)?)?;
            Ok(certificate_exit(&cert))
        }
        CertifyCmd::Product(c) => {
            let factors = parse_factor_list(&c.factors).map_err(|e| anyhow!("{e}"))?;
            let cert = certify_product(factors, settings).map_err(|e| anyhow!("{e}"))?;
            emit(&c.out, &render_certificate(&cert, c.format)?)?;
            Ok(certificate_exit(&cert))
        }
        CertifyCmd::Sweep(c) => {
            let rows = sweep_g4_families(c.max_sum, settings).map_err(|e| anyhow!("{e}"))?;
            let mut all_ok = true;
            let content = match c.format {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(fam, plus, minus)| {
                            serde_json::json!({
                                "family": fam,
                                "plus": plus,
                                "minus": minus,
                            })
                        })
                        .collect();
                    format!("{:#}\n", serde_json::Value::Array(rows))
                }
                Format::Csv => bail!("csv output is only available for `table`"),
                Format::Text => {
                    let mut out = String::new();
                    for (fam, plus, minus) in &rows {
                        out.push_str(&format!(
                            "({:>2},{:>2})  plus: {:<12} minus: {:<12}\n",
                            fam.m1,
                            fam.m2,
                            plus.verdict.to_string(),
                            minus.verdict.to_string()
                        ));
                    }
                    out
                }
            };
            for (fam, plus, minus) in &rows {
                // The open (1,1) case is expected to be inconclusive; any
                // other inconclusive side fails the sweep.
                if (fam.m1, fam.m2) != (1, 1)
                    && (plus.verdict != Verdict::Minimizing
                        || minus.verdict != Verdict::Minimizing)
                {
                    all_ok = false;
                }
            }
            emit(&c.out, &content)?;
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn run_classify(cmd: ClassifyCmd) -> Result<ExitCode> {
    let n = cmd.n.unwrap_or_else(|| ambient_dim(cmd.g, cmd.m1, cmd.m2));
    let verdict = wang_minimizing(cmd.g, cmd.m1, cmd.m2, n).map_err(|e| anyhow!("{e}"))?;
    let content = match cmd.format {
        Format::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "g": cmd.g, "m1": cmd.m1, "m2": cmd.m2, "n": n,
                "verdict": verdict,
            })
        ),
        _ => format!(
            "hypercone of family (g={}, m1={}, m2={}) in S^{}: {}{}\n",
            cmd.g,
            cmd.m1,
            cmd.m2,
            n - 1,
            if verdict.minimizing { "minimizing" } else { "not minimizing" },
            if verdict.strictly_minimizing { " (strictly)" } else { "" }
        ),
    };
    print!("{content}");
    Ok(if verdict.minimizing {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_verify(cmd: VerifyCmd, settings: &SolverSettings) -> Result<ExitCode> {
    if let Some(path) = &cmd.recheck {
        let data = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let cert: Certificate =
            serde_json::from_str(&data).context("parsing certificate JSON")?;
        let report = recheck_certificate(&cert, settings).map_err(|e| anyhow!("{e}"))?;
        let content = match cmd.format {
            Format::Json => format!(
                "{:#}\n",
                serde_json::to_value(&report).context("serializing report")?
            ),
            _ => {
                let mut out = String::new();
                for d in &report.details {
                    out.push_str(&format!("{d}\n"));
                }
                out.push_str(if report.ok { "recheck: OK\n" } else { "recheck: FAILED\n" });
                out
            }
        };
        emit(&cmd.out, &content)?;
        return Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    // Default action (and `--all`): the full claim list.
    let report = verify_claims(settings).map_err(|e| anyhow!("{e}"))?;
    let content = match cmd.format {
        Format::Json => format!("{:#}\n", report.to_json()),
        Format::Csv => {
            let mut out = String::from("id,description,computed,op,bound,margin,pass\n");
            for c in &report.claims {
                out.push_str(&format!(
                    "{},\"{}\",{},{},{},{},{}\n",
                    c.id, c.description, c.computed, c.op, c.bound, c.margin, c.pass
                ));
            }
            out
        }
        Format::Text => report.render_text(),
    };
    emit(&cmd.out, &content)?;
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
