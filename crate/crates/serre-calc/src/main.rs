use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use serre_calc::characters::CharCtx;
use serre_calc::cycles::{cycle_of, multiplicity};
use serre_calc::homology::linalg::Fp;
use serre_calc::homology::tor::tor_n;
use serre_calc::monomial::{hilbert_function, ideal_a, ideal_a1, ideal_i_n, MonomialIdeal};
use serre_calc::subset::IndexSet;
use serre_calc::verify::{run, RunConfig, Suite};
use serre_calc::weights::{enumerate_d, enumerate_dss, enumerate_p, enumerate_pss, LambdaTuple, Params, StarInvolution};
use serre_calc::{Error, Result};

#[derive(Parser)]
#[command(name = "serre-calc", version, about = "Serre weight combinatorics and graded homology checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List P^ss, P, D^ss or D with their invariants
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum)]
        set: WeightSet,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the generators of a(lambda) or a_1^{i0}(lambda), optionally plus I^(n)
    Ideal {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Characteristic cycle of R-bar modulo the ideal
    Cycle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hilbert function of R-bar modulo the ideal
    Hilbert {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tor_i(F, N) over gr(Lambda): dimensions and characters
    Tor {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_degree: Option<i32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification suites and write a report
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// comma-separated suite names or `all`
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_degree: Option<i32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    f: usize,
    #[arg(long)]
    p: u64,
    /// comma-separated indices; empty for the empty set
    #[arg(long, allow_hyphen_values = true)]
    jrho: String,
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<u64>,
}

impl ParamArgs {
    fn build(&self) -> Result<Params> {
        Params::new(self.f, self.p, parse_index_set(&self.jrho)?, self.r.clone())
    }
}

#[derive(Args)]
struct IdealArgs {
    /// e.g. `x,p-1-x`
    #[arg(long)]
    lambda: String,
    /// use a_1^{i0}(lambda) instead of a(lambda)
    #[arg(long, allow_hyphen_values = true)]
    i0: Option<i64>,
    /// add I^(n)
    #[arg(long)]
    n: Option<u32>,
}

impl IdealArgs {
    fn build(&self, params: &Params) -> Result<(LambdaTuple, MonomialIdeal)> {
        let lambda: LambdaTuple = self.lambda.parse()?;
        if lambda.f() != params.f() {
            return Err(Error::InvalidParams(format!("lambda has {} entries, expected {}", lambda.f(), params.f())));
        }
        if !lambda.in_p(params.j_rho()) {
            return Err(Error::NotMember(lambda.to_string(), "P"));
        }
        let mut ideal = match self.i0 {
            Some(i0) => ideal_a1(&lambda, i0, params.j_rho())?,
            None => ideal_a(&lambda, params.j_rho())?,
        };
        if let Some(n) = self.n {
            ideal = ideal.sum(&ideal_i_n(params.f(), n));
        }
        Ok((lambda, ideal))
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightSet {
    Pss,
    P,
    Dss,
    D,
}

fn parse_index_set(s: &str) -> Result<IndexSet> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| Error::InvalidParams(format!("bad index `{x}` in --jrho"))))
        .collect()
}

fn emit(output: &OutputArgs, value: &Value, text: String) -> std::io::Result<()> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(value).expect("json value") + "\n",
        Format::Text => text,
    };
    match &output.out {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn enumerate(params: &Params, set: WeightSet, output: &OutputArgs) -> Result<Value> {
    let f = params.f();
    let j_rho = params.j_rho();
    let tuples = match set {
        WeightSet::Pss => enumerate_pss(f),
        WeightSet::P => enumerate_p(params),
        WeightSet::Dss => enumerate_dss(f),
        WeightSet::D => enumerate_d(params),
    };
    let ctx = CharCtx::new(params);
    let rows: Vec<Value> = tuples
        .iter()
        .map(|l| {
            let t = l.t_type(j_rho).ok().map(|t| t.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            json!({ "lambda": l, "J": l.j_set(), "ell": l.ell(), "t": t, "diff": ctx.diff_of_lambda(l) })
        })
        .collect();
    let mut text = String::new();
    for row in &rows {
        text.push_str(&format!(
            "{}  J={} ell={} t={} diff={}\n",
            row["lambda"].as_str().unwrap_or_default(),
            row["J"],
            row["ell"],
            row["t"].as_str().unwrap_or("-"),
            row["diff"],
        ));
    }
    text.push_str(&format!("{} tuples\n", rows.len()));
    let value = json!({ "count": rows.len(), "tuples": rows });
    emit(output, &value, text).map_err(io_error)?;
    Ok(value)
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidParams(format!("cannot write output: {e}"))
}

fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Enumerate { params, set, output } => {
            enumerate(&params.build()?, set, &output)?;
            Ok(0)
        }
        Command::Ideal { params, ideal, output } => {
            let params = params.build()?;
            let (lambda, ideal) = ideal.build(&params)?;
            let value = json!({ "lambda": lambda, "ideal": ideal, "generators": ideal.gens() });
            emit(&output, &value, format!("{ideal}\n")).map_err(io_error)?;
            Ok(0)
        }
        Command::Cycle { params, ideal, output } => {
            let params = params.build()?;
            let (lambda, ideal) = ideal.build(&params)?;
            let cycle = cycle_of(&ideal);
            let star = StarInvolution::new(&params)?.apply(&lambda);
            let m = multiplicity(&ideal);
            let value = json!({ "lambda": lambda, "star": star, "ideal": ideal, "cycle": cycle.to_string(), "multiplicity": m });
            emit(&output, &value, format!("Z = {cycle}\nm = {m}\nlambda* = {star}\n")).map_err(io_error)?;
            Ok(0)
        }
        Command::Hilbert { params, ideal, max_degree, output } => {
            let params = params.build()?;
            let (_, ideal) = ideal.build(&params)?;
            let h = hilbert_function(&ideal, max_degree);
            let text = h.iter().enumerate().map(|(d, n)| format!("{d}\t{n}\n")).collect();
            emit(&output, &json!({ "ideal": ideal, "hilbert": h }), text).map_err(io_error)?;
            Ok(0)
        }
        Command::Tor { params, max_degree, output } => {
            let params = params.build()?;
            params.require_genericity(2)?;
            let ctx = CharCtx::new(&params);
            let tor = tor_n(&params, false, max_degree, Fp::new(params.p()))?;
            let terms: Vec<Vec<Value>> = tor
                .terms
                .iter()
                .map(|t| t.iter().map(|s| json!({ "shift": s.shift, "chi": s.chi, "diff": ctx.diff(&s.chi) })).collect())
                .collect();
            let value = json!({
                "dims": tor.dims(),
                "dims_match": tor.dims_match(),
                "characters_match": tor.characters_match(&ctx),
                "support_ok": tor.support_ok(),
                "certified": tor.certified(),
                "terms": terms,
            });
            let mut text = String::new();
            for (i, t) in tor.terms.iter().enumerate() {
                text.push_str(&format!("Tor_{i}: dim {}\n", t.len()));
                for s in t {
                    text.push_str(&format!("  [-{}] {}\n", s.shift, s.chi));
                }
            }
            text.push_str(&format!("certified: {}\n", tor.certified()));
            emit(&output, &value, text).map_err(io_error)?;
            Ok(if tor.certified() { 0 } else { 3 })
        }
        Command::Verify { params, suite, max_degree, jobs, output } => {
            let cfg = RunConfig::new(params.build()?, Suite::parse_list(&suite)?, max_degree, jobs)?;
            let report = run(&cfg)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            emit(&output, &value, report.to_text()).map_err(io_error)?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
