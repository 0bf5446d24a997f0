//! `openmirror` command-line interface.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use openmirror::amodel::f_q;
use openmirror::bmodel::w0_series;
use openmirror::curve::{abel_jacobi_check, curve_grading, framed_curve};
use openmirror::gkz::check_annihilation;
use openmirror::io::{render_rational, resolve_geometry, GeometryFile, ResultTable, TableMetadata};
use openmirror::mirror::{build_mirror_map, invariants_in_flat};
use openmirror::{catalog, BraneSpec, Error, Grading, ToricCY3, TruncatedSeries};

#[derive(Parser)]
#[command(name = "openmirror", version, about = "Exact disk amplitudes of toric Calabi-Yau threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    /// `catalog:NAME`, `catalog:Ym?m=N`, or a geometry JSON file.
    #[arg(long)]
    geometry: String,
    /// Brane phase label.
    #[arg(long)]
    brane: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    framing: i64,
    /// Truncation order in total grade.
    #[arg(long, default_value_t = 8)]
    order: i64,
    /// Weights `g0,g1,..,gk`; searched for when omitted.
    #[arg(long)]
    grading: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the geometry and its branes.
    Validate(Common),
    /// B-model superpotential `W0`.
    Superpotential(Common),
    /// A-model series `F_q`.
    Amodel(Common),
    /// `W0` in flat coordinates.
    Invariants(Common),
    /// Mirror-map corrections `S_0..S_k`.
    MirrorMap(Common),
    /// Inverse mirror map `q_a(Q)`.
    InvertMap(Common),
    /// Framed mirror curve.
    Curve(Common),
    /// Compare `x dW0/dx` with the log of the curve branch.
    AbelJacobi(Common),
    /// GKZ annihilation of the mirror-map periods.
    GkzCheck(Common),
    /// Compare `W0` with `F_q` and the tabulated formula with the superpotential.
    CrossCheck {
        #[command(flatten)]
        common: Common,
        /// Add 1 to the first tabulated coefficient.
        #[arg(long)]
        perturb: bool,
    },
    /// List catalog geometries, or export one as a geometry file.
    Catalog {
        #[arg(long)]
        geometry: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Output text plus exit status.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

type Run<T> = Result<T, Failure>;

struct Setup {
    geometry: ToricCY3,
    branes: Vec<BraneSpec>,
}

impl Setup {
    fn load(c: &Common) -> Run<Self> {
        let (geometry, branes) = resolve_geometry(&c.geometry)?;
        Ok(Self { geometry, branes })
    }

    fn brane(&self, c: &Common) -> Run<BraneSpec> {
        let label = c
            .brane
            .as_deref()
            .ok_or_else(|| Failure::Usage("--brane is required".into()))?;
        self.branes
            .iter()
            .find(|b| b.label == label)
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("no brane {label} in {}", self.geometry.name)))
    }

    fn grading(&self, c: &Common, b: Option<&BraneSpec>) -> Run<Grading> {
        match &c.grading {
            None => Ok(self.geometry.default_grading(b)?),
            Some(s) => parse_grading(s),
        }
    }
}

fn parse_grading(s: &str) -> Run<Grading> {
    let weights = s
        .split(',')
        .map(|w| w.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --grading {s}: {e}")))?;
    Ok(Grading::new(weights)?)
}

fn metadata(g: &ToricCY3, b: Option<&BraneSpec>, c: &Common, grading: &Grading, pipeline: &str) -> TableMetadata {
    TableMetadata {
        geometry: g.name.clone(),
        phase: b.map(|b| b.label.clone()),
        framing: b.map(|_| c.framing),
        order: c.order,
        grading: grading.weights().to_vec(),
        pipeline: pipeline.to_string(),
    }
}

fn render_tables(tables: &[ResultTable], format: Format) -> String {
    match format {
        Format::Json if tables.len() == 1 => tables[0].to_json() + "\n",
        Format::Json => {
            let parts: Vec<String> = tables.iter().map(ResultTable::to_json).collect();
            format!("[\n{}\n]\n", parts.join(",\n"))
        }
        Format::Csv => {
            let mut out = String::new();
            for t in tables {
                if tables.len() > 1 {
                    let _ = writeln!(out, "# {}", t.metadata.pipeline);
                }
                out.push_str(&t.to_csv());
            }
            out
        }
    }
}

fn series_command(c: &Common, pipeline: &str) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let grading = setup.grading(c, Some(&b))?;
    let g = &setup.geometry;
    let series = match pipeline {
        "superpotential" => w0_series(g, &b, c.framing, &grading, c.order)?,
        "amodel" => f_q(g, &b, c.framing, &grading, c.order)?,
        _ => invariants_in_flat(g, &b, c.framing, &grading, c.order)?,
    };
    let table = ResultTable::from_series(metadata(g, Some(&b), c, &grading, pipeline), &series);
    Ok(Outcome::ok(render_tables(&[table], c.format)))
}

fn map_command(c: &Common, inverse: bool) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let grading = setup.grading(c, Some(&b))?;
    let g = &setup.geometry;
    let map = build_mirror_map(g, &b, c.framing, &grading, c.order)?;
    let (series, name): (&[TruncatedSeries], &str) = if inverse {
        (&map.inverse, "q")
    } else {
        (&map.corrections, "S")
    };
    let tables: Vec<ResultTable> = series
        .iter()
        .enumerate()
        .map(|(a, s)| ResultTable::from_series(metadata(g, Some(&b), c, &grading, &format!("{name}{a}")), s))
        .collect();
    Ok(Outcome::ok(render_tables(&tables, c.format)))
}

fn validate(c: &Common) -> Run<Outcome> {
    // Catalog geometries are not validated on load, so check everything here.
    let setup = Setup::load(c)?;
    let g = &setup.geometry;
    let mut text = String::new();
    let report = g.validate_geometry();
    let mut passed = report.is_ok();
    let _ = writeln!(text, "{}: {}", g.name, report.to_string().trim_end());
    for b in &setup.branes {
        let r = g.validate(b);
        passed &= r.is_ok();
        let _ = writeln!(text, "brane {}: {}", b.label, r.to_string().trim_end());
    }
    if !passed {
        return Err(Failure::Usage(text));
    }
    Ok(Outcome::ok(text))
}

fn curve(c: &Common) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let curve = framed_curve(&setup.geometry, &b, c.framing)?;
    let text = match c.format {
        Format::Json => {
            let terms: Vec<String> = curve
                .terms()
                .map(|t| {
                    let q: Vec<String> = t.q.iter().map(i64::to_string).collect();
                    format!(
                        "    {{\"coeff\": \"{}\", \"x\": {}, \"y\": {}, \"q\": [{}]}}",
                        render_rational(&t.coeff),
                        t.x,
                        t.y,
                        q.join(", ")
                    )
                })
                .collect();
            format!(
                "{{\n  \"geometry\": \"{}\",\n  \"phase\": \"{}\",\n  \"framing\": {},\n  \"curve\": \"{curve}\",\n  \"terms\": [\n{}\n  ]\n}}\n",
                setup.geometry.name,
                b.label,
                c.framing,
                terms.join(",\n")
            )
        }
        Format::Csv => {
            let k = setup.geometry.k();
            let mut out = String::from("coeff,x,y");
            for a in 1..=k {
                let _ = write!(out, ",q{a}");
            }
            out.push('\n');
            for t in curve.terms() {
                let _ = write!(out, "{},{},{}", render_rational(&t.coeff), t.x, t.y);
                for e in &t.q {
                    let _ = write!(out, ",{e}");
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn abel_jacobi(c: &Common) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let g = &setup.geometry;
    let grading = match &c.grading {
        Some(s) => parse_grading(s)?,
        None => curve_grading(g, &b, c.framing)?,
    };
    let report = abel_jacobi_check(g, &b, c.framing, &grading, c.order)?;
    let mut text = String::new();
    for (eps, n) in report.residual_terms {
        let _ = writeln!(text, "epsilon {eps:+}: {n} x-dependent terms left");
    }
    let passed = match (report.epsilon(), report.remainder()) {
        (Some(eps), Some(rem)) => {
            let _ = writeln!(text, "pass: epsilon = {eps:+}, remainder {rem}");
            true
        }
        _ => {
            let _ = writeln!(text, "fail: no unique epsilon");
            false
        }
    };
    Ok(Outcome { text, passed })
}

fn gkz(c: &Common) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let grading = setup.grading(c, Some(&b))?;
    let report = check_annihilation(&setup.geometry, &b, c.framing, &grading, c.order)?;
    let mut text = String::new();
    for r in report.residuals.iter().take(20) {
        let _ = writeln!(text, "residual: {r}");
    }
    let _ = writeln!(
        text,
        "{}: {} operator-period pairs, {} residual coefficients",
        if report.passed() { "pass" } else { "fail" },
        report.checked,
        report.residuals.len()
    );
    Ok(Outcome { text, passed: report.passed() })
}

fn cross_check(c: &Common, perturb: bool) -> Run<Outcome> {
    let setup = Setup::load(c)?;
    let b = setup.brane(c)?;
    let grading = setup.grading(c, Some(&b))?;
    let g = &setup.geometry;
    let mut text = String::new();
    let mut passed = true;

    let w0 = w0_series(g, &b, c.framing, &grading, c.order)?;
    let fq = f_q(g, &b, c.framing, &grading, c.order)?;
    match w0.sub(&fq)?.terms().next() {
        None => {
            let _ = writeln!(text, "W0 = F_q to order {} ({} terms)", c.order, w0.len());
        }
        Some((e, _)) => {
            passed = false;
            let _ = writeln!(text, "W0 and F_q first differ at {e}: {} vs {}", w0.get(e), fq.get(e));
        }
    }

    let fixture = catalog::fixtures(g).into_iter().find(|fx| fx.brane == b);
    match fixture {
        None => {
            let _ = writeln!(text, "no tabulated formula for phase {}", b.label);
            if perturb {
                return Err(Failure::Usage("--perturb needs a tabulated phase".into()));
            }
        }
        Some(fx) => {
            let box_d = if g.k() > 3 { 1 } else { 2 };
            let points = catalog::sweep_points(g, &b, 4, 6, 3, box_d)?;
            match catalog::first_divergence(g, &fx, c.framing, &points, perturb)? {
                None => {
                    let _ = writeln!(text, "table = C_coeff at {} points", points.len());
                }
                Some(d) => {
                    passed = false;
                    let _ = writeln!(
                        text,
                        "table and C_coeff first differ at {}: {} vs {}",
                        d.point,
                        render_rational(&d.table),
                        render_rational(&d.computed)
                    );
                }
            }
        }
    }
    let _ = writeln!(text, "{}", if passed { "pass" } else { "fail" });
    Ok(Outcome { text, passed })
}

fn catalog_command(geometry: Option<&str>) -> Run<Outcome> {
    match geometry {
        None => {
            let mut text = String::new();
            for g in catalog::all_geometries(3) {
                let labels: Vec<String> = catalog::branes(&g).into_iter().map(|b| b.label).collect();
                let name = if g.name.starts_with('Y') { "Ym?m=N".to_string() } else { g.name.clone() };
                let _ = writeln!(text, "{name}: k={} r={} phases {}", g.k(), g.r(), labels.join(" "));
            }
            Ok(Outcome::ok(text))
        }
        Some(spec) => {
            let spec = if spec.contains(':') || std::path::Path::new(spec).exists() {
                spec.to_string()
            } else {
                format!("catalog:{spec}")
            };
            let (g, branes) = resolve_geometry(&spec)?;
            Ok(Outcome::ok(GeometryFile::from_model(&g, &branes).to_json() + "\n"))
        }
    }
}

fn run(cli: Cli) -> Run<(Outcome, Option<PathBuf>)> {
    let (outcome, out) = match cli.command {
        Command::Validate(c) => (validate(&c)?, c.out),
        Command::Superpotential(c) => (series_command(&c, "superpotential")?, c.out),
        Command::Amodel(c) => (series_command(&c, "amodel")?, c.out),
        Command::Invariants(c) => (series_command(&c, "invariants")?, c.out),
        Command::MirrorMap(c) => (map_command(&c, false)?, c.out),
        Command::InvertMap(c) => (map_command(&c, true)?, c.out),
        Command::Curve(c) => (curve(&c)?, c.out),
        Command::AbelJacobi(c) => (abel_jacobi(&c)?, c.out),
        Command::GkzCheck(c) => (gkz(&c)?, c.out),
        Command::CrossCheck { common, perturb } => (cross_check(&common, perturb)?, common.out),
        Command::Catalog { geometry, out } => (catalog_command(geometry.as_deref())?, out),
    };
    Ok((outcome, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &outcome.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", outcome.text),
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
