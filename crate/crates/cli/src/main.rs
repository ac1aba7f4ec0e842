use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rankmetric::codes::{code_report, gallery, CanonicalForm, CodeReport, GalleryCode};
use rankmetric::equivalence::{audit_dually_qoac_classification, AuditReport};
use rankmetric::invariants::{
    generalized_weights_oracle, rank_distribution_oracle, rho_c, rho_r, verify_qpolymatroid_axioms, AxiomMode,
    AxiomReport, InvariantReport, RhoEntry, Side,
};
use rankmetric::io::{code_to_json, read_code_file};
use rankmetric::sweep::{run_job, Status, Theorem, VerificationJob, VerifyRow};
use rankmetric::{Budget, Error, FieldSpec, RankMetricCode, Subspace};

/// Exact computations with rank-metric codes over finite fields.
#[derive(Parser)]
#[command(name = "rankmetric", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Most codewords one enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_CODEWORDS)]
    cap_codewords: u64,

    /// Most subspaces one lattice sweep may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_SUBSPACES)]
    cap_subspaces: u64,

    /// Most isometries one equivalence search may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_GROUP)]
    cap_group: u64,

    /// Worker threads (0 = one per core). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled axiom checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Report parameters, predicates and invariants of a code file.
    Analyze {
        path: PathBuf,

        /// Evaluate rho_c on the subspace of F_q^n spanned by these
        /// vectors, written "1,0;0,1". Repeatable.
        #[arg(long = "rho-columns", value_name = "VECTORS")]
        rho_columns: Vec<String>,

        /// Evaluate rho_r on a subspace of F_q^m. Repeatable.
        #[arg(long = "rho-rows", value_name = "VECTORS")]
        rho_rows: Vec<String>,

        /// Also check the q-polymatroid axioms for both rank functions.
        #[arg(long)]
        axioms: bool,

        /// Sample this many pairs instead of checking every pair.
        #[arg(long, requires = "axioms")]
        sample_pairs: Option<usize>,
    },
    /// Compare closed forms with brute force over a parameter range.
    Verify(VerifyArgs),
    /// Emit a named construction as a code file.
    Gallery {
        #[command(subcommand)]
        code: GalleryCmd,
    },
    /// Classify every dually qOAC of a given dimension (same as
    /// `verify thm2.5-audit`, but prints the full audit).
    Census {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// All dimensions not divisible by m when omitted.
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// prop2.4, thm2.5-audit (or census), prop2.11, thm3.3, thm4.2, thm5.4, axioms
    job: String,

    /// Field orders, comma separated.
    #[arg(long, default_value = "2", value_delimiter = ',')]
    q: Vec<u32>,

    /// Row range, "lo..hi" or a single value.
    #[arg(long, default_value = "1..3", value_parser = parse_range)]
    n: (usize, usize),

    /// Column range; only shapes with n <= m are visited.
    #[arg(long, default_value = "1..3", value_parser = parse_range)]
    m: (usize, usize),

    /// Restrict the audit to one dimension.
    #[arg(long)]
    dim: Option<usize>,

    /// Sample this many pairs in the axiom job instead of all pairs.
    #[arg(long)]
    sample_pairs: Option<usize>,
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// C_{s,h,k}: Mat on the first s rows plus the next h rows supported on the first k columns.
    Cshk { q: u32, n: usize, m: usize, s: usize, h: usize, k: usize },
    /// The split-row family C_k with parameters alpha, rho.
    #[command(name = "example-2.3")]
    SplitRow {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long)]
        k: usize,
    },
    /// A dually qOAC canonical form (a, b, c or d).
    #[command(name = "thm2.5")]
    Form {
        form: CanonicalForm,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        rho: usize,
    },
    /// A qOAC whose dual is not a qOAC.
    #[command(name = "example-2.7")]
    ZeroDiagonal {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        rho: usize,
    },
    /// The 9-dimensional 4x4 code over F_2.
    #[command(name = "example-2.8")]
    UpperTriangular,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => parse(s).map(|v| (v, v)),
    }
}

fn parse_subspace(field: &rankmetric::Field, ambient: usize, text: &str) -> Result<Subspace, Error> {
    let vectors = text
        .split(';')
        .filter(|v| !v.trim().is_empty())
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Format(format!("{x:?}: {e}"))))
                .collect::<Result<Vec<u32>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if vectors.iter().any(|v| v.len() != ambient) {
        return Err(Error::Format(format!("{text:?}: every vector needs {ambient} entries")));
    }
    Subspace::from_vectors(field, ambient, &vectors)
}

#[derive(Serialize)]
struct Analysis {
    report: CodeReport,
    invariants: InvariantReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    axioms: Option<SideAxioms>,
}

#[derive(Serialize)]
struct SideAxioms {
    columns: AxiomReport,
    rows: AxiomReport,
}

enum Failure {
    Mismatch(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.into())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    budget: Budget,
    format: Format,
    seed: u64,
    out: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => std::fs::write(p, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
        s.push('\n');
        self.emit(&s)
    }

    fn emit_csv<T: Serialize>(&self, rows: &[T]) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(|e| Error::Format(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        self.emit(&String::from_utf8(bytes).expect("csv is utf-8"))
    }

    fn axiom_mode(&self, sample_pairs: Option<usize>) -> AxiomMode {
        match sample_pairs {
            Some(pairs) => AxiomMode::Sampled { pairs, seed: self.seed },
            None => AxiomMode::Exhaustive,
        }
    }
}

fn field(q: u32) -> Result<rankmetric::Field, Error> {
    Ok(FieldSpec::with_order(q)?.into_shared())
}

fn analyze(
    ctx: &Ctx,
    path: &PathBuf,
    rho_columns: &[String],
    rho_rows: &[String],
    axioms: bool,
    sample_pairs: Option<usize>,
) -> Outcome {
    let code = read_code_file(path)?;
    let b = &ctx.budget;
    let report = code_report(&code, b)?;
    let weights = generalized_weights_oracle(&code, b)?;
    let dist = rank_distribution_oracle(&code, b)?;
    let mut invariants = InvariantReport::new(&weights, &dist);
    for (side, specs, ambient) in [(Side::Columns, rho_columns, code.n()), (Side::Rows, rho_rows, code.m())] {
        for text in specs {
            let s = parse_subspace(code.field(), ambient, text)?;
            let rho = match side {
                Side::Columns => rho_c(&code, &s)?,
                Side::Rows => rho_r(&code, &s)?,
            };
            invariants.rho.push(RhoEntry { side, subspace: s.basis_indices(), rho });
        }
    }
    let axioms = if axioms {
        let mode = ctx.axiom_mode(sample_pairs);
        Some(SideAxioms {
            columns: verify_qpolymatroid_axioms(&code, Side::Columns, mode, b)?,
            rows: verify_qpolymatroid_axioms(&code, Side::Rows, mode, b)?,
        })
    } else {
        None
    };
    let axioms_ok = axioms.as_ref().map_or(true, |a| a.columns.passed() && a.rows.passed());
    match ctx.format {
        Format::Json => ctx.emit_json(&Analysis { report, invariants, axioms })?,
        Format::Csv => {
            let mut rows: Vec<(String, String)> = vec![
                ("n".into(), report.n.to_string()),
                ("m".into(), report.m.to_string()),
                ("dim".into(), report.dim.to_string()),
                ("maxrk".into(), report.maxrk.to_string()),
                ("min_dist".into(), report.min_dist.map(|d| d.to_string()).unwrap_or_default()),
                ("dual_maxrk".into(), report.dual_maxrk.to_string()),
                ("is_optimal_anticode".into(), report.is_optimal_anticode.to_string()),
                ("is_qoac".into(), report.is_qoac.to_string()),
                ("is_dually_qoac".into(), report.is_dually_qoac.to_string()),
                ("weights".into(), join(&invariants.weights)),
                ("rank_distribution".into(), invariants.rank_distribution.join(" ")),
            ];
            for e in &invariants.rho {
                let key = format!("rho_{}", if e.side == Side::Columns { "c" } else { "r" });
                let span: Vec<String> = e.subspace.iter().map(|v| join(v)).collect();
                rows.push((format!("{key}[{}]", span.join(";")), e.rho.to_string()));
            }
            if let Some(a) = &axioms {
                rows.push(("axioms_columns".into(), a.columns.passed().to_string()));
                rows.push(("axioms_rows".into(), a.rows.passed().to_string()));
            }
            let header = [("key".to_string(), "value".to_string())];
            ctx.emit_csv(&header.into_iter().chain(rows).collect::<Vec<_>>())?;
        }
    }
    if !axioms_ok {
        return Err(Failure::Mismatch("q-polymatroid axiom violated".into()));
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let theorem: Theorem = args.job.parse()?;
    let mut job = VerificationJob::new(theorem);
    job.qs = args.q.clone();
    job.n = args.n;
    job.m = args.m;
    job.dim = args.dim;
    job.axiom_mode = ctx.axiom_mode(args.sample_pairs);
    job.budget = ctx.budget;
    let rows: Vec<VerifyRow> = run_job(&job)?;
    match ctx.format {
        Format::Json => ctx.emit_json(&rows)?,
        Format::Csv => ctx.emit_csv(&rows)?,
    }
    let bad = rows.iter().filter(|r| r.status == Status::Mismatch).count();
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{bad} of {} rows mismatch", rows.len())));
    }
    Ok(())
}

fn emit_gallery(ctx: &Ctx, cmd: &GalleryCmd) -> Outcome {
    let (q, code) = match *cmd {
        GalleryCmd::Cshk { q, n, m, s, h, k } => (q, GalleryCode::Cshk { n, m, s, h, k }),
        GalleryCmd::SplitRow { q, n, m, alpha, rho, k } => (q, GalleryCode::SplitRow { n, m, alpha, rho, k }),
        GalleryCmd::Form { form, q, n, m, alpha, rho } => (q, GalleryCode::DuallyQoac { form, n, m, alpha, rho }),
        GalleryCmd::ZeroDiagonal { q, n, m, alpha, rho } => (q, GalleryCode::ZeroDiagonal { n, m, alpha, rho }),
        GalleryCmd::UpperTriangular => (2, GalleryCode::UpperTriangularF2),
    };
    let c: RankMetricCode = gallery(&field(q)?, &code, &ctx.budget)?;
    ctx.emit(&code_to_json(&c))
}

#[derive(Serialize)]
struct CensusRow {
    q: usize,
    n: usize,
    m: usize,
    dim: usize,
    scanned: usize,
    dually_qoac: usize,
    classified: usize,
    unclassified: usize,
    forms: String,
}

fn census(ctx: &Ctx, q: u32, n: usize, m: usize, dim: Option<usize>) -> Outcome {
    let f = field(q)?;
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (1..n * m).filter(|d| d % m != 0).collect(),
    };
    let reports = dims
        .into_iter()
        .map(|d| audit_dually_qoac_classification(&f, n, m, d, &ctx.budget))
        .collect::<Result<Vec<AuditReport>, Error>>()?;
    match ctx.format {
        Format::Json => ctx.emit_json(&reports)?,
        Format::Csv => {
            let rows: Vec<CensusRow> = reports
                .iter()
                .map(|r| CensusRow {
                    q: r.q,
                    n: r.n,
                    m: r.m,
                    dim: r.dim,
                    scanned: r.scanned,
                    dually_qoac: r.dually_qoac,
                    classified: r.classified.len(),
                    unclassified: r.unclassified.len(),
                    forms: r.forms.join(" "),
                })
                .collect();
            ctx.emit_csv(&rows)?
        }
    }
    if reports.iter().any(|r| !r.complete()) {
        return Err(Failure::Mismatch("some dually qOACs match no canonical form".into()));
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Mismatch(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if g.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global() {
            eprintln!("rankmetric: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        budget: Budget::default()
            .with_codewords(g.cap_codewords)
            .with_subspaces(g.cap_subspaces)
            .with_group(g.cap_group),
        format: g.format,
        seed: g.seed,
        out: g.out.clone(),
    };
    if ctx.budget.codewords == 0 || ctx.budget.subspaces == 0 || ctx.budget.group == 0 {
        eprintln!("rankmetric: caps must be positive");
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Analyze { path, rho_columns, rho_rows, axioms, sample_pairs } => {
            analyze(&ctx, path, rho_columns, rho_rows, *axioms, *sample_pairs)
        }
        Command::Verify(args) => verify(&ctx, args),
        Command::Gallery { code } => emit_gallery(&ctx, code),
        Command::Census { q, n, m, dim } => census(&ctx, *q, *n, *m, *dim),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("rankmetric: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("rankmetric: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3"), Ok((1, 3)));
        assert_eq!(parse_range("2..=4"), Ok((2, 4)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn subspaces() {
        let f = field(3).unwrap();
        let s = parse_subspace(&f, 2, "1,2; 2,1").unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(parse_subspace(&f, 2, "").unwrap().dim(), 0);
        assert!(parse_subspace(&f, 2, "1,0,0").is_err());
        assert!(parse_subspace(&f, 2, "1,x").is_err());
    }

    #[test]
    fn exit_code_mapping() {
        assert_eq!(exit_code(&Error::Budget { what: "codeword", required: "8".into(), cap: 1 }), 3);
        assert_eq!(exit_code(&Error::Mismatch("x".into())), 1);
        assert_eq!(exit_code(&Error::Format("x".into())), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
