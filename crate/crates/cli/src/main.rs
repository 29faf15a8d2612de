mod classes;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mslcob::cf::HomologyRow;
use mslcob::charnum::{generator_check_msu, hypersurface_class};
use mslcob::kq::kq_table;
use mslcob::msl::{intro_table, msl_diagonal};
use mslcob::operations::{boundary_partial, delta_op, landweber_novikov};
use mslcob::verify::{run_suite, Suite};
use mslcob::witt::witt_table;
use mslcob::{CfComplex, Error, FieldDescriptor, MuBasis, Partition};

use config::{Format, RunConfig};
use output::{csv_line, Emit};

#[derive(Parser, Debug)]
#[command(name = "mslcob", version, about = "Exact computations for the geometric diagonal of MSL")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// key=value config file; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// truncation bound N
    #[arg(long = "truncation", short = 'N', global = true)]
    pub truncation: Option<u32>,
    /// c, r, fq1 or fq3
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// exponential characteristic of the field
    #[arg(long = "char", global = true)]
    pub characteristic: Option<u64>,
    /// text, json or csv
    #[arg(long, global = true)]
    pub format: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The diagonal groups of MSL
    #[command(subcommand)]
    Msl(MslCmd),
    /// The Conner-Floyd complex
    #[command(subcommand)]
    Cf(CfCmd),
    /// Cohomology operations on classes
    #[command(subcommand)]
    Op(OpCmd),
    /// Grothendieck-Witt and Witt data
    #[command(subcommand)]
    Witt(TableCmd),
    /// Hermitian K-theory presentation
    #[command(subcommand)]
    Kq(KqCmd),
    /// Characteristic numbers
    #[command(subcommand)]
    Charnum(CharnumCmd),
    /// Run verification suites
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long = "max-degree")]
        max_degree: Option<u32>,
    },
    /// Write CSV and JSON tables to a directory
    Dump {
        #[arg(long, default_value = "dump")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum MslCmd {
    Group {
        #[arg(long)]
        n: u32,
    },
    Table,
}

#[derive(Subcommand, Debug)]
enum CfCmd {
    Homology {
        #[arg(long = "max-degree")]
        max_degree: Option<u32>,
    },
    Dump {
        #[arg(long, default_value = "cf-dump")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum OpCmd {
    Apply {
        /// partial, delta, or s(1,1)-style Landweber-Novikov names
        #[arg(long)]
        name: String,
        /// product of CPn, H(i,j), V(n,d), xn factors with optional ^k and integer scalars
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand, Debug)]
enum TableCmd {
    Table {
        #[arg(long = "max-power", default_value_t = 3)]
        max_power: u32,
    },
}

#[derive(Subcommand, Debug)]
enum KqCmd {
    Table {
        #[arg(long = "max-degree", default_value_t = 16)]
        max_degree: i64,
        #[arg(long)]
        connective: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CharnumCmd {
    Hypersurface {
        #[arg(long)]
        ambient: u32,
        #[arg(long)]
        degree: u32,
        /// shorthand for --format json
        #[arg(long)]
        json: bool,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::DegreeOutOfRange { .. }
            | Error::InvalidArgument(_)
            | Error::NotACycle(_)
            | Error::NotInLattice(_) => 2,
            Error::Verification(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::internal(format!("io: {e}"))
    }
}

type Outcome = Result<Emit, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(f) => return fail(f),
    };
    match run(&cfg, cli.command) {
        Ok(emit) => {
            print!("{}", emit.render(cfg.format));
            ExitCode::from(emit.code)
        }
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("error: {}", f.message);
    ExitCode::from(f.code)
}

fn run(cfg: &RunConfig, command: Command) -> Outcome {
    match command {
        Command::Msl(MslCmd::Group { n }) => msl_group(cfg, n),
        Command::Msl(MslCmd::Table) => msl_table(cfg),
        Command::Cf(CfCmd::Homology { max_degree }) => cf_homology(cfg, max_degree),
        Command::Cf(CfCmd::Dump { out }) => {
            let cf = build_cf(cfg.truncation)?;
            let files = dump_cf(&cf, &out)?;
            Ok(files_written(files))
        }
        Command::Op(OpCmd::Apply { name, class }) => op_apply(cfg, &name, &class),
        Command::Witt(TableCmd::Table { max_power }) => witt(cfg, max_power),
        Command::Kq(KqCmd::Table { max_degree, connective }) => kq(cfg, max_degree, connective),
        Command::Charnum(CharnumCmd::Hypersurface { ambient, degree, json }) => {
            let mut e = charnum(cfg, ambient, degree)?;
            if json {
                e.force = Some(Format::Json);
            }
            Ok(e)
        }
        Command::Verify { suite, max_degree } => verify(cfg, suite, max_degree),
        Command::Dump { out } => dump_all(cfg, &out),
    }
}

fn check_degree(cfg: &RunConfig, n: u32) -> Result<(), Failure> {
    if n > cfg.truncation {
        return Err(Error::DegreeOutOfRange { degree: n as i64, min: 0, max: cfg.truncation as i64 }.into());
    }
    Ok(())
}

fn build_cf(n: u32) -> Result<CfComplex, Failure> {
    Ok(CfComplex::build(Arc::new(MuBasis::build(n)?))?)
}

fn msl_group(cfg: &RunConfig, n: u32) -> Outcome {
    check_degree(cfg, n)?;
    let a = msl_diagonal(&cfg.field, n)?;
    let mut text = format!("pi_{{{},{}}} MSL over {} = {}\n", 2 * n, n, a.field, a.group);
    let mut csv = String::from("summand,group,source\n");
    for s in &a.decomposition {
        text.push_str(&format!("  {} = {} ({})\n", s.label, s.group, s.source));
        csv.push_str(&csv_line(&[&s.label, &s.group.to_string(), &s.source]));
    }
    Emit::new(&GroupAnswer { group: &a.group, field: &a.field, n: a.n, decomposition: &a.decomposition }, text, csv)
}

/// The answer with the group's fields first.
#[derive(Serialize)]
struct GroupAnswer<'a> {
    #[serde(flatten)]
    group: &'a mslcob::FGAbGroup,
    field: &'a FieldDescriptor,
    n: u32,
    decomposition: &'a [mslcob::msl::Summand],
}

fn msl_table(cfg: &RunConfig) -> Outcome {
    let rows = intro_table(&cfg.field)?;
    let mut text = format!("n  symbolic  group over {}\n", cfg.field);
    let mut csv = String::from("n,symbolic,group\n");
    for r in &rows {
        text.push_str(&format!("{}  {}  {}\n", r.n, r.symbolic, r.group));
        csv.push_str(&csv_line(&[&r.n.to_string(), &r.symbolic, &r.group.to_string()]));
    }
    Emit::new(&rows, text, csv)
}

fn homology_rows(cf: &CfComplex, max: u32) -> Result<Vec<HomologyRow>, Failure> {
    Ok((0..=max).map(|n| cf.homology_row(n)).collect::<mslcob::Result<_>>()?)
}

fn homology_text(rows: &[HomologyRow]) -> (String, String) {
    let mut text = String::from("n  rank Z  rank B  H\n");
    let mut csv = String::from("n,rank_Z,rank_B,H\n");
    for r in rows {
        text.push_str(&format!("{}  {}  {}  {}\n", r.n, r.rank_z, r.rank_b, r.h));
        csv.push_str(&csv_line(&[&r.n.to_string(), &r.rank_z.to_string(), &r.rank_b.to_string(), &r.h.to_string()]));
    }
    (text, csv)
}

fn cf_homology(cfg: &RunConfig, max_degree: Option<u32>) -> Outcome {
    // H_n needs degree n + 1
    let max = max_degree.unwrap_or(cfg.truncation - 1);
    if max + 1 > cfg.truncation {
        return Err(Error::DegreeOutOfRange { degree: max as i64, min: 0, max: cfg.truncation as i64 - 1 }.into());
    }
    let cf = build_cf(cfg.truncation)?;
    let rows = homology_rows(&cf, max)?;
    let (text, csv) = homology_text(&rows);
    Emit::new(&rows, text, csv)
}

#[derive(Serialize)]
struct OpResult {
    operation: String,
    input: String,
    input_degree: u32,
    input_hurewicz: String,
    output_degree: i64,
    output_hurewicz: String,
}

fn op_apply(cfg: &RunConfig, name: &str, class: &str) -> Outcome {
    let basis = MuBasis::build(cfg.truncation)?;
    let x = classes::parse_class(&basis, class)?;
    let fgl = basis.fgl();
    let op = match name {
        "partial" | "boundary" => boundary_partial(fgl),
        "delta" | "Delta" => delta_op(fgl),
        s => {
            let parts = s.strip_prefix('s').ok_or_else(|| Failure::usage(format!("unknown operation {s:?}")))?;
            let parts = parts.trim_start_matches('(').trim_end_matches(')');
            let parts: Vec<u32> = parts
                .split(',')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::usage(format!("cannot parse partition in {s:?}")))?;
            landweber_novikov(&Partition::new(parts))?
        }
    };
    let y = op.apply(&x)?;
    let out_degree = x.degree as i64 - op.shift as i64;
    let r = OpResult {
        operation: op.name.clone(),
        input: x.label.clone(),
        input_degree: x.degree,
        input_hurewicz: x.hurewicz.to_string(),
        output_degree: out_degree,
        output_hurewicz: y.hurewicz.to_string(),
    };
    let text = format!("{}({}) = {}  (degree {})\n", r.operation, r.input, r.output_hurewicz, r.output_degree);
    let csv = format!(
        "operation,input,input_degree,output_degree,output_hurewicz\n{}",
        csv_line(&[&r.operation, &r.input, &r.input_degree.to_string(), &out_degree.to_string(), &r.output_hurewicz])
    );
    Emit::new(&r, text, csv)
}

fn witt(cfg: &RunConfig, max_power: u32) -> Outcome {
    let rows = witt_table(&cfg.field, max_power)?;
    let mut text = format!("Witt data over {}\n", cfg.field);
    let mut csv = String::from("name,group\n");
    for r in &rows {
        text.push_str(&format!("  {} = {}\n", r.name, r.group));
        csv.push_str(&csv_line(&[&r.name, &r.group.to_string()]));
    }
    Emit::new(&rows, text, csv)
}

fn kq(cfg: &RunConfig, max_degree: i64, connective: bool) -> Outcome {
    let rows = kq_table(&cfg.field, max_degree, connective)?;
    let mut text = format!("pi_{{2n,n}} {} over {}\n", if connective { "kq" } else { "KQ" }, cfg.field);
    let mut csv = String::from("n,generator,group\n");
    for r in &rows {
        let g = r.generator.clone().unwrap_or_else(|| "-".into());
        text.push_str(&format!("{}  {}  {}\n", r.n, g, r.group));
        csv.push_str(&csv_line(&[&r.n.to_string(), &g, &r.group.to_string()]));
    }
    Emit::new(&rows, text, csv)
}

#[derive(Serialize)]
struct CharnumOut {
    variety: mslcob::charnum::VarietyClass,
    hurewicz: String,
    #[serde(serialize_with = "output::bigint")]
    s_number: num_bigint::BigInt,
    generator_check: Option<mslcob::charnum::GeneratorVerdict>,
    generator_check_error: Option<String>,
}

fn charnum(cfg: &RunConfig, ambient: u32, degree: u32) -> Outcome {
    let v = hypersurface_class(ambient, degree)?;
    check_degree(cfg, v.dimension)?;
    let (check, err) = if v.dimension >= 2 && v.dimension < cfg.truncation {
        let cf = build_cf(v.dimension + 1)?;
        match generator_check_msu(&v.class, &cf) {
            Ok(g) => (Some(g), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let out = CharnumOut {
        hurewicz: v.class.hurewicz.to_string(),
        s_number: v.class.s_number(),
        variety: v,
        generator_check: check,
        generator_check_error: err,
    };
    let mut text = format!("{} (dimension {})\n", out.variety.description, out.variety.dimension);
    let mut csv = String::from("omega,tangent_number\n");
    for (w, c) in &out.variety.tangent_numbers {
        text.push_str(&format!("  c_{w} = {c}\n"));
        csv.push_str(&csv_line(&[w, &c.to_string()]));
    }
    text.push_str(&format!("  Calabi-Yau: {}\n  s-number: {}\n", out.variety.calabi_yau, out.s_number));
    match (&out.generator_check, &out.generator_check_error) {
        (Some(g), _) => text.push_str(&format!("  MSU generator test: {}\n", if g.pass { "pass" } else { "fail" })),
        (None, Some(e)) => text.push_str(&format!("  MSU generator test: {e}\n")),
        _ => {}
    }
    Emit::new(&out, text, csv)
}

fn verify(cfg: &RunConfig, suite: Option<String>, max_degree: Option<u32>) -> Outcome {
    let name = suite.or_else(|| cfg.suite.clone()).unwrap_or_else(|| "all".into());
    let suite: Suite =
        name.parse().map_err(|e: Error| Failure::usage(format!("{e}; expected one of {}", Suite::NAMES.join(", "))))?;
    let max = max_degree.unwrap_or(cfg.truncation);
    if !(2..=16).contains(&max) {
        return Err(Error::DegreeOutOfRange { degree: max as i64, min: 2, max: 16 }.into());
    }
    let reports = run_suite(suite, max)?;
    let passed = reports.iter().all(|r| r.passed());
    let mut text = String::new();
    let mut csv = String::from("suite,check,passed,detail\n");
    for r in &reports {
        text.push_str(&r.to_string());
        for c in &r.checks {
            csv.push_str(&csv_line(&[&r.suite, &c.name, &c.passed.to_string(), &c.detail]));
        }
    }
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let mut e = Emit::new(&reports, text, csv)?;
    if !passed {
        e.code = 3;
    }
    Ok(e)
}

fn write(dir: &Path, name: &str, body: &str, files: &mut Vec<String>) -> Result<(), Failure> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))?;
    files.push(path.display().to_string());
    Ok(())
}

fn dump_cf(cf: &CfComplex, dir: &Path) -> Result<Vec<String>, Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::internal(format!("cannot create {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    let n_max = cf.max_degree();
    let mut delta = String::from("degree,row,col,entry\n");
    for n in 1..=n_max {
        let m = cf.delta_matrix(n)?;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                delta.push_str(&format!("{n},{i},{j},{}\n", m[(i, j)]));
            }
        }
    }
    write(dir, "delta_matrices.csv", &delta, &mut files)?;
    let rows = homology_rows(cf, n_max - 1)?;
    let (_, csv) = homology_text(&rows);
    write(dir, "homology.csv", &csv, &mut files)?;
    write(dir, "homology.json", &output::to_json(&rows)?, &mut files)?;
    Ok(files)
}

fn dump_all(cfg: &RunConfig, dir: &Path) -> Outcome {
    let cf = build_cf(cfg.truncation)?;
    let mut files = dump_cf(&cf, dir)?;
    write(dir, "mu_basis.csv", &cf.basis().basis_csv(), &mut files)?;
    write(dir, "chern_numbers.csv", &cf.basis().chern_csv(), &mut files)?;
    for k in FieldDescriptor::catalog() {
        let rows = witt_table(&k, 3)?;
        let name = format!("witt_{}.json", k.kind.short_name());
        write(dir, &name, &output::to_json(&rows)?, &mut files)?;
    }
    Ok(files_written(files))
}

fn files_written(files: Vec<String>) -> Emit {
    let text: String = files.iter().map(|f| format!("wrote {f}\n")).collect();
    let csv: String = std::iter::once("file\n".to_string()).chain(files.iter().map(|f| csv_line(&[f]))).collect();
    Emit::new(&files, text, csv).expect("list of strings serializes")
}
