use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use toeplitz_ladder::diffeq::{dp2_oracle, dp2_orbit, dp2_orbit_ext, gram_oracle_digits};
use toeplitz_ladder::export::{self, fmt10, fmt17, opuc_records, to_value, Envelope};
use toeplitz_ladder::fh::{self, discriminant_resultant, fh_asymptotics, fh_delta, fh_discriminant, FhParams};
use toeplitz_ladder::opuc::{build_toeplitz, delta_product, det_lu, opuc_solve};
use toeplitz_ladder::par::Exec;
use toeplitz_ladder::report::ResidualReport;
use toeplitz_ladder::symbols::{Family, MomentSequence, Pole, SymbolSpec};
use toeplitz_ladder::verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "toeplitz-ladder",
    version,
    about = "Toeplitz determinants, OPUC and ladder identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymbolKind {
    Fh,
    Bessel,
    Poles,
}

#[derive(Args)]
struct SymbolArgs {
    #[arg(long, value_enum)]
    symbol: SymbolKind,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// A pole as z:g, repeatable.
    #[arg(long = "pole", value_parser = parse_pole, allow_hyphen_values = true)]
    poles: Vec<Pole>,
    /// Cap on integrand evaluations per quadrature.
    #[arg(long)]
    quad_points: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetMethod {
    Lu,
    Product,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscMethod {
    Resultant,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Moments w_m for |m| ≤ M.
    Moments {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long)]
        max_order: usize,
    },
    /// Toeplitz determinant Δ_n.
    Det {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "lu")]
        method: DetMethod,
    },
    /// k_n, φ_n(0), l_n, r_n, m_n, s_n.
    Opuc {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long)]
        n_max: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long)]
        n_max: Option<usize>,
        /// Decimal digits for the dP2 orbit.
        #[arg(long, default_value_t = 40)]
        digits: u32,
        /// Replaces every tolerance of the suite.
        #[arg(long)]
        tol: Option<f64>,
        /// A sample point as re:im, repeatable; replaces the default points.
        #[arg(long = "point", value_parser = parse_pair, allow_hyphen_values = true)]
        points: Vec<(f64, f64)>,
    },
    /// Discrete Painlevé II orbit against Gram solves.
    Dp2 {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        n_max: usize,
        /// Decimal digits; double precision when absent.
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Discriminant of φ_n for the Fisher–Hartwig symbol.
    Discriminant {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "closed")]
        method: DiscMethod,
    },
    /// Exact-to-asymptote ratios for Δ_n and |D[φ_n]|.
    Asympt {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        n_max: usize,
    },
    /// Closed values and LU determinants over an (α, β) grid.
    Golden {
        #[arg(long)]
        n_max: usize,
        /// A grid point as alpha:beta, repeatable.
        #[arg(long = "point", value_parser = parse_pair, allow_hyphen_values = true)]
        points: Vec<(f64, f64)>,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn parse_pole(s: &str) -> Result<Pole, String> {
    parse_pair(s).map(|(z, g)| Pole { z, g })
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
        .map_err(|_| format!("expected one of {}", Suite::NAMES.join(", ")))
}

enum Failure {
    Usage(String),
    Numerical(toeplitz_ladder::Error),
    Io(String),
}

impl From<toeplitz_ladder::Error> for Failure {
    fn from(e: toeplitz_ladder::Error) -> Self {
        Failure::Numerical(e)
    }
}

enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

struct Output {
    command: &'static str,
    symbol: Value,
    results: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    pass: bool,
}

impl Output {
    fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => {
                let env = Envelope::new(self.command, self.symbol.clone(), self.results.clone(), self.pass);
                Ok(env.to_json() + "\n")
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|c| cell(c, fmt17)).collect())
                    .collect();
                Ok(export::table_csv(&self.header, &rows)?)
            }
            Format::Text => {
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|c| cell(c, fmt10)).collect())
                    .collect();
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|j| rows.iter().map(|r| r[j].len()).fold(self.header[j].len(), usize::max))
                    .collect();
                let line = |cells: Vec<String>| -> String {
                    let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    parts.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(self.header.iter().map(|h| h.to_string()).collect());
                for r in rows {
                    s += &line(r);
                }
                Ok(s)
            }
        }
    }
}

fn cell(c: &Cell, f: fn(f64) -> String) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Num(x) => f(*x),
        Cell::Text(s) => s.clone(),
    }
}

fn spec_of(a: &SymbolArgs) -> Result<SymbolSpec, Failure> {
    let need_t = || {
        a.t.ok_or_else(|| Failure::Usage("--t is required for this symbol".into()))
    };
    let spec = match a.symbol {
        SymbolKind::Fh => SymbolSpec::fisher_hartwig(a.alpha, a.beta),
        SymbolKind::Bessel => SymbolSpec::bessel(need_t()?),
        SymbolKind::Poles => {
            if a.poles.is_empty() {
                return Err(Failure::Usage("--pole z:g is required for the poles symbol".into()));
            }
            SymbolSpec::exp_poles(need_t()?, a.poles.clone())
        }
    };
    let spec = spec?;
    Ok(match a.quad_points {
        Some(0) => return Err(Failure::Usage("--quad-points must be positive".into())),
        Some(cap) => spec.with_quadrature_cap(cap),
        None => spec,
    })
}

fn complex_cells(z: C64) -> [Cell; 2] {
    [Cell::Num(z.re), Cell::Num(z.im)]
}

fn moments(a: &SymbolArgs, max_order: usize) -> Result<Output, Failure> {
    let spec = spec_of(a)?;
    let m = MomentSequence::compute(&spec, max_order)?;
    let values: Vec<(i64, C64)> = m.iter().collect();
    Ok(Output {
        command: "moments",
        symbol: to_value(&spec),
        results: json!(values.iter().map(|(k, v)| json!({"m": k, "w": v})).collect::<Vec<_>>()),
        header: vec!["m", "re", "im"],
        rows: values
            .iter()
            .map(|&(k, v)| {
                let [re, im] = complex_cells(v);
                vec![Cell::Int(k), re, im]
            })
            .collect(),
        pass: true,
    })
}

fn det(a: &SymbolArgs, n: usize, method: DetMethod) -> Result<Output, Failure> {
    let spec = spec_of(a)?;
    let value = match method {
        DetMethod::Lu => {
            let m = MomentSequence::compute(&spec, n)?;
            det_lu(&build_toeplitz(&m, n)?).value
        }
        DetMethod::Product => {
            let m = MomentSequence::compute(&spec, n + 1)?;
            let seq = opuc_solve(&m, n.saturating_sub(1))?;
            delta_product(&seq, n)?
        }
        DetMethod::Closed => {
            let Family::FisherHartwig { alpha, beta } = spec.family else {
                return Err(Failure::Usage(
                    "--method closed is available for --symbol fh only".into(),
                ));
            };
            C64::new(fh_delta(&FhParams::new(alpha, beta)?, n)?, 0.0)
        }
    };
    let method_name = match method {
        DetMethod::Lu => "lu",
        DetMethod::Product => "product",
        DetMethod::Closed => "closed",
    };
    let [re, im] = complex_cells(value);
    Ok(Output {
        command: "det",
        symbol: to_value(&spec),
        results: json!([{"n": n, "method": method_name, "value": value}]),
        header: vec!["n", "method", "re", "im"],
        rows: vec![vec![Cell::Int(n as i64), Cell::Text(method_name.into()), re, im]],
        pass: true,
    })
}

fn opuc(a: &SymbolArgs, n_max: usize) -> Result<Output, Failure> {
    let spec = spec_of(a)?;
    let m = MomentSequence::compute(&spec, n_max + 2)?;
    let seq = opuc_solve(&m, n_max + 1)?;
    let mut recs = opuc_records(&seq);
    recs.truncate(n_max + 1);
    let rows = recs
        .iter()
        .map(|r| {
            let mut row = vec![Cell::Int(r.n as i64)];
            for z in [r.k, r.phi0, r.l, r.r] {
                row.extend(complex_cells(z));
            }
            for z in [r.m, r.s] {
                row.extend(complex_cells(z.unwrap_or(C64::new(f64::NAN, f64::NAN))));
            }
            row
        })
        .collect();
    Ok(Output {
        command: "opuc",
        symbol: to_value(&spec),
        results: to_value(&recs),
        header: vec![
            "n", "k_re", "k_im", "phi0_re", "phi0_im", "l_re", "l_im", "r_re", "r_im", "m_re", "m_im", "s_re", "s_im",
        ],
        rows,
        pass: true,
    })
}

fn override_tolerance(rep: &mut ResidualReport, tol: f64) {
    for e in &mut rep.entries {
        e.tolerance = tol;
        e.pass = e.relative <= tol;
    }
}

fn verify(
    suite: Suite,
    a: &SymbolArgs,
    n_max: Option<usize>,
    digits: u32,
    tol: Option<f64>,
    points: &[(f64, f64)],
) -> Result<Output, Failure> {
    let spec = spec_of(a)?;
    if !suite.applies_to(&spec) {
        return Err(Failure::Usage(format!(
            "suite {suite} does not apply to {}",
            spec.label()
        )));
    }
    let mut opts = VerifyOptions {
        digits,
        ..VerifyOptions::default()
    };
    if let Some(n) = n_max {
        opts.n_max = n;
    }
    if !points.is_empty() {
        opts.points = points.iter().map(|&(re, im)| C64::new(re, im)).collect();
    }
    let mut rep = run_suite(suite, &spec, &opts)?;
    if let Some(tol) = tol {
        override_tolerance(&mut rep, tol);
    }
    for f in rep.failures() {
        eprintln!(
            "FAIL {} n={} at {} relative={:e} tolerance={:e}",
            f.identity, f.n, f.point, f.relative, f.tolerance
        );
    }
    let rows = rep
        .entries
        .iter()
        .map(|e| {
            vec![
                Cell::Text(e.identity.clone()),
                Cell::Int(e.n),
                Cell::Text(e.point.to_string()),
                Cell::Num(e.absolute),
                Cell::Num(e.relative),
                Cell::Num(e.tolerance),
                Cell::Text(if e.pass { "pass" } else { "fail" }.into()),
            ]
        })
        .collect();
    Ok(Output {
        command: "verify",
        symbol: to_value(&spec),
        results: json!({"suite": suite.name(), "entries": rep.entries}),
        header: vec!["identity", "n", "point", "absolute", "relative", "tolerance", "status"],
        rows,
        pass: rep.pass(),
    })
}

fn dp2(t: f64, n_max: usize, digits: Option<u32>) -> Result<Output, Failure> {
    let orbit = match digits {
        Some(d) => dp2_orbit_ext(t, n_max, d)?,
        None => dp2_orbit(t, n_max)?,
    };
    let oracle = dp2_oracle(Exec::default(), t, n_max, gram_oracle_digits(t, n_max))?;
    let rows = orbit.compare(&oracle);
    Ok(Output {
        command: "dp2",
        symbol: json!({"family": "bessel", "t": t}),
        results: json!({"precision_digits": orbit.precision_digits, "rows": rows}),
        header: vec!["n", "r_n", "oracle_r_n", "abs_diff"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Int(r.n as i64),
                    Cell::Num(r.r_n),
                    Cell::Num(r.oracle_r_n),
                    Cell::Num(r.abs_diff),
                ]
            })
            .collect(),
        pass: true,
    })
}

fn discriminant(alpha: f64, beta: f64, n: usize, method: DiscMethod) -> Result<Output, Failure> {
    let p = FhParams::new(alpha, beta)?;
    let (name, value) = match method {
        DiscMethod::Closed => ("closed", fh_discriminant(&p, n)?),
        DiscMethod::Resultant => {
            let m = MomentSequence::compute(&p.spec()?, n + 1)?;
            let seq = opuc_solve(&m, n)?;
            ("resultant", discriminant_resultant(seq.phi(n))?)
        }
    };
    let [re, im] = complex_cells(value);
    Ok(Output {
        command: "discriminant",
        symbol: to_value(&p.spec()?),
        results: json!([{"n": n, "method": name, "value": value}]),
        header: vec!["n", "method", "re", "im"],
        rows: vec![vec![Cell::Int(n as i64), Cell::Text(name.into()), re, im]],
        pass: true,
    })
}

fn asympt(alpha: f64, beta: f64, n_max: usize) -> Result<Output, Failure> {
    let p = FhParams::new(alpha, beta)?;
    let data = (2..=n_max)
        .map(|n| fh_asymptotics(&p, n))
        .collect::<Result<Vec<_>, _>>()?;
    let results: Vec<Value> = data
        .iter()
        .map(|a| {
            json!({
                "n": a.n,
                "delta_ratio": a.delta_ratio(),
                "disc_ratio": a.disc_ratio(),
                "disc_ratio_over_c": a.disc_ratio_over_c(),
                "data": a,
            })
        })
        .collect();
    Ok(Output {
        command: "asympt",
        symbol: to_value(&p.spec()?),
        results: json!(results),
        header: vec!["n", "delta_ratio", "disc_ratio", "disc_ratio_over_c"],
        rows: data
            .iter()
            .map(|a| {
                vec![
                    Cell::Int(a.n as i64),
                    Cell::Num(a.delta_ratio()),
                    Cell::Num(a.disc_ratio()),
                    Cell::Num(a.disc_ratio_over_c()),
                ]
            })
            .collect(),
        pass: true,
    })
}

fn golden(n_max: usize, points: &[(f64, f64)]) -> Result<Output, Failure> {
    let grid: Vec<(f64, f64)> = if points.is_empty() {
        vec![(0.5, 0.0), (1.0, 0.0), (0.3, 0.7), (2.0, 1.0)]
    } else {
        points.to_vec()
    };
    let rows = fh::golden_table(Exec::default(), &grid, n_max)?;
    Ok(Output {
        command: "golden",
        symbol: json!({"family": "fisher_hartwig", "grid": grid}),
        results: to_value(&rows),
        header: vec![
            "alpha",
            "beta",
            "n",
            "kn2",
            "phi0_sq",
            "delta_closed",
            "delta_lu",
            "rel_err",
        ],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.alpha),
                    Cell::Num(r.beta),
                    Cell::Int(r.n as i64),
                    Cell::Num(r.kn2),
                    Cell::Num(r.phi0_sq),
                    Cell::Num(r.delta_closed),
                    Cell::Num(r.delta_lu),
                    Cell::Num(r.rel_err),
                ]
            })
            .collect(),
        pass: true,
    })
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Moments { symbol, max_order } => moments(symbol, *max_order),
        Command::Det { symbol, n, method } => det(symbol, *n, *method),
        Command::Opuc { symbol, n_max } => opuc(symbol, *n_max),
        Command::Verify {
            suite,
            symbol,
            n_max,
            digits,
            tol,
            points,
        } => verify(*suite, symbol, *n_max, *digits, *tol, points),
        Command::Dp2 { t, n_max, digits } => dp2(*t, *n_max, *digits),
        Command::Discriminant { alpha, beta, n, method } => discriminant(*alpha, *beta, *n, *method),
        Command::Asympt { alpha, beta, n_max } => asympt(*alpha, *beta, *n_max),
        Command::Golden { n_max, points } => golden(*n_max, points),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|out| {
        let text = out.render(cli.format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(out.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
