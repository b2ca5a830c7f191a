mod cache;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use permucell_core::barcobar::{build_bar_complex, build_cobar_complex, build_koszul_complex};
use permucell_core::brackets::{gerstenhaber_bracket, mc_check, polydiff_bracket, schouten_bracket};
use permucell_core::cells::{build_perm_complex, build_simplex_complex};
use permucell_core::chain::FinChainComplex;
use permucell_core::gs::{build_full_gs_complex, build_polydiff_gs_complex};
use permucell_core::hoch::{build_full_hochschild_complex, build_polydiff_complex};
use permucell_core::serial::{complex_to_json, element_from_json, element_to_json, DegreeTable, Element};
use permucell_core::suite::{report_csv, report_json, report_markdown, run_criterion, Status, CRITERIA};
use permucell_core::{Error, Rational};

use config::FileConfig;

#[derive(Parser)]
#[command(name = "permucell", version, about = "Build and check the complexes of permucell-core")]
struct Cli {
    /// TOML file with default options and per-command parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Where to write the main artifact (a directory for `suite`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Directory caching boundary matrices between runs.
    #[arg(long, global = true, env = "PERMUCELL_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Also write the complex itself as JSON.
    #[arg(long, global = true)]
    dump: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Cellular chains of a simplex or a permutahedron.
    Cells(CellsArgs),
    /// Koszul complex of the symmetric algebra.
    Koszul(KoszulArgs),
    /// Bar complex of the symmetric algebra at one weight.
    Bar(WeightArgs),
    /// Cobar complex of the exterior coalgebra at one weight.
    Cobar(WeightArgs),
    /// Polydifferential or full Hochschild complex.
    Hoch(HochArgs),
    /// Polydifferential or full Gerstenhaber-Schack complex.
    Gs(HochArgs),
    /// Brackets and Maurer-Cartan residuals of JSON cochains.
    Bracket(BracketArgs),
    /// The acceptance battery.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Perm,
    Simplex,
}

#[derive(Args)]
struct CellsArgs {
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct KoszulArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    weight: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Poly,
    Full,
}

#[derive(Args)]
struct HochArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Weight of the full complex; defaults to `n − m`.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<i64>,
    /// Bound on total input degree of the full complex.
    #[arg(long)]
    max_deg: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Gerst,
    Schouten,
    Mc,
}

#[derive(Args)]
struct BracketArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "in2")]
    input2: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Desk,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, value_enum, default_value = "desk")]
    level: Level,
    /// Run only these criteria, e.g. `--only 1,3`.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

/// Bad invocation: exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// Failed validation: exit status 1, with the offending identity named.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

struct Ctx {
    file: FileConfig,
    out: Option<PathBuf>,
    format: Option<Format>,
    cache_dir: Option<PathBuf>,
    dump: Option<PathBuf>,
}

impl Ctx {
    fn param(&self, command: &str, key: &str, flag: Option<usize>, lo: usize, hi: usize) -> Result<usize> {
        let v = match flag {
            Some(v) => v as i64,
            None => self
                .file
                .section(command)
                .int(key)?
                .ok_or_else(|| usage(format!("{command}: missing --{}", key.replace('_', "-"))))?,
        };
        if v < lo as i64 || v > hi as i64 {
            return Err(usage(format!("{command}: --{} must be in {lo}..={hi}, got {v}", key.replace('_', "-"))));
        }
        Ok(v as usize)
    }

    fn choice<E: ValueEnum>(&self, command: &str, key: &str, flag: Option<E>, default: Option<E>) -> Result<E> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file.section(command).string(key)? {
            Some(s) => E::from_str(&s, true).map_err(|_| usage(format!("{command}: invalid {key} `{s}` in config"))),
            None => default.ok_or_else(|| usage(format!("{command}: missing --{key}"))),
        }
    }

    fn format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("md") => Format::Markdown,
            Some("csv") => Format::Csv,
            _ => Format::Json,
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn report_complex(ctx: &Ctx, title: &str, key: &str, build: impl FnOnce() -> permucell_core::Result<FinChainComplex<Rational>>) -> Result<()> {
    let t = Instant::now();
    let (c, hit) = cache::cached(ctx.cache_dir.as_deref(), key, build)?;
    let built = t.elapsed();
    let report = c.validate();
    let betti = c.betti()?;
    let table = DegreeTable::new(title, &c, &betti);
    let text = match ctx.format() {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
        Format::Markdown => table.to_markdown(),
    };
    ctx.emit(&text)?;
    if let Some(path) = &ctx.dump {
        write_file(path, &complex_to_json(&c))?;
    }
    if ctx.out.is_some() {
        println!(
            "{title}: {} cells, betti total {}, {} in {:.1?}",
            c.size(),
            betti.total(),
            if hit { "loaded from cache" } else { "built" },
            built
        );
    }
    if !report.passed() {
        let first = report
            .violations
            .first()
            .map(|v| format!("degree {}: {} -> {} with {}", v.degree, v.source, v.target, v.coefficient))
            .or_else(|| report.shape_errors.first().cloned())
            .unwrap_or_default();
        return Err(anyhow!(Failed(format!("{title}: d∘d ≠ 0 ({first})"))));
    }
    Ok(())
}

fn run_cells(ctx: &Ctx, a: &CellsArgs) -> Result<()> {
    let family = ctx.choice("cells", "family", a.family, None)?;
    match family {
        Family::Perm => {
            let n = ctx.param("cells", "n", a.n, 1, 7)?;
            report_complex(ctx, &format!("permutahedron n={n}"), &format!("cells-perm-n{n}"), || build_perm_complex(n))
        }
        Family::Simplex => {
            let n = ctx.param("cells", "n", a.n, 1, 14)?;
            report_complex(ctx, &format!("simplex n={n}"), &format!("cells-simplex-n{n}"), || build_simplex_complex(n))
        }
    }
}

fn run_hoch(ctx: &Ctx, a: &HochArgs, gs: bool) -> Result<()> {
    let cmd = if gs { "gs" } else { "hoch" };
    let dim = ctx.param(cmd, "dim", a.dim, 1, 6)?;
    let mode = ctx.choice(cmd, "mode", a.mode, Some(Mode::Poly))?;
    let min_m = 1;
    let min_n = usize::from(gs);
    match mode {
        Mode::Poly => {
            let m = ctx.param(cmd, "m", a.m, min_m, 12)?;
            let n = ctx.param(cmd, "n", a.n, min_n, 12)?;
            let title = format!("{cmd} poly dim={dim} (m,n)=({m},{n})");
            let key = format!("{cmd}-poly-d{dim}-m{m}-n{n}");
            if gs {
                report_complex(ctx, &title, &key, || build_polydiff_gs_complex(dim, m, n))
            } else {
                report_complex(ctx, &title, &key, || build_polydiff_complex(dim, m, n))
            }
        }
        Mode::Full => {
            let weight = match a.weight {
                Some(w) => w,
                None => match ctx.file.section(cmd).int("weight")? {
                    Some(w) => w,
                    None => {
                        let m = ctx.param(cmd, "m", a.m, min_m, 12)?;
                        let n = ctx.param(cmd, "n", a.n, min_n, 12)?;
                        n as i64 - m as i64
                    }
                },
            };
            let d = ctx.param(cmd, "max_deg", a.max_deg, 1, 10)?;
            let title = format!("{cmd} full dim={dim} weight={weight} D={d}");
            let key = format!("{cmd}-full-d{dim}-w{weight}-D{d}");
            if gs {
                report_complex(ctx, &title, &key, || build_full_gs_complex(dim, weight, d))
            } else {
                report_complex(ctx, &title, &key, || build_full_hochschild_complex(dim, weight, d))
            }
        }
    }
}

fn read_element(path: &Path) -> Result<Element<Rational>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    element_from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn run_bracket(ctx: &Ctx, a: &BracketArgs) -> Result<()> {
    if ctx.format.is_some_and(|f| f != Format::Json) {
        return Err(usage("bracket: only json output is supported"));
    }
    let x = read_element(&a.input)?;
    let second = || -> Result<Element<Rational>> {
        let p = a.input2.as_ref().ok_or_else(|| usage("bracket: this operation needs --in2"))?;
        read_element(p)
    };
    let t = Instant::now();
    let (result, verdict) = match (a.op, x) {
        (Op::Gerst, Element::Full(f)) => match second()? {
            Element::Full(g) => (Element::Full(gerstenhaber_bracket(&f, &g)?), None),
            _ => return Err(usage("bracket: both inputs must be F(...) cochains")),
        },
        (Op::Gerst, Element::Poly { dim, cochain }) => match second()? {
            Element::Poly { dim: d2, cochain: c2 } if d2 == dim => {
                (Element::Poly { dim, cochain: polydiff_bracket(dim, &cochain, &c2)? }, None)
            }
            _ => return Err(usage("bracket: both inputs must be H(...) cochains of the same dim")),
        },
        (Op::Schouten, Element::Polyvector(p)) => match second()? {
            Element::Polyvector(q) => (Element::Polyvector(schouten_bracket(&p, &q)?), None),
            _ => return Err(usage("bracket: both inputs must be polyvectors")),
        },
        (Op::Mc, Element::Full(g)) => {
            let r = mc_check(&g)?;
            let ok = r.is_mc();
            let arities = r.arities();
            (Element::Full(r.residual), Some((ok, arities)))
        }
        _ => return Err(usage("bracket: input kind does not fit the operation")),
    };
    ctx.emit(&element_to_json(&result))?;
    if ctx.out.is_some() {
        println!("bracket {:?}: done in {:.1?}", a.op, t.elapsed());
    }
    if let Some((false, arities)) = verdict {
        return Err(anyhow!(Failed(format!("Maurer-Cartan residual is nonzero in arities {arities:?}"))));
    }
    Ok(())
}

fn run_suite(ctx: &Ctx, a: &SuiteArgs) -> Result<()> {
    let Level::Desk = a.level;
    let ids: Vec<u8> = if a.only.is_empty() { CRITERIA.iter().map(|(i, _)| *i).collect() } else { a.only.clone() };
    if let Some(bad) = ids.iter().find(|i| !CRITERIA.iter().any(|(c, _)| c == *i)) {
        return Err(usage(format!("suite: no criterion {bad}")));
    }
    let t = Instant::now();
    let timed: Vec<_> = ids
        .par_iter()
        .map(|&id| {
            let s = Instant::now();
            (run_criterion(id), s.elapsed())
        })
        .collect();
    for (r, dt) in &timed {
        println!("criterion {} ({}): {} [{} checks, {:.2?}]", r.id, r.title, r.status.as_str(), r.checks, dt);
        for f in &r.failures {
            println!("  {f}");
        }
    }
    println!("suite: {:.2?} total", t.elapsed());
    let reports: Vec<_> = timed.into_iter().map(|(r, _)| r).collect();
    let dir = ctx.out.clone().unwrap_or_else(|| PathBuf::from("suite-report"));
    write_file(&dir.join("report.json"), &report_json(&reports))?;
    write_file(&dir.join("report.md"), &report_markdown(&reports))?;
    write_file(&dir.join("report.csv"), &report_csv(&reports))?;
    let failed: Vec<String> = reports.iter().filter(|r| r.status == Status::Fail).map(|r| format!("{} ({})", r.id, r.title)).collect();
    if !failed.is_empty() {
        return Err(anyhow!(Failed(format!("failed criteria: {}", failed.join(", ")))));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p).map_err(|e| usage(format!("{e:#}")))?,
        None => FileConfig::default(),
    };
    let format = match (cli.format, &file.format) {
        (Some(f), _) => Some(f),
        (None, Some(s)) => Some(Format::from_str(s, true).map_err(|_| usage(format!("invalid format `{s}` in config")))?),
        (None, None) => None,
    };
    let jobs = cli.jobs.or(file.jobs);
    if jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let ctx = Ctx {
        out: cli.out.clone().or_else(|| file.out.clone()),
        cache_dir: cli.cache_dir.clone().or_else(|| file.cache_dir.clone()),
        format,
        dump: cli.dump.clone(),
        file,
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
    pool.install(|| match &cli.command {
        Command::Cells(a) => run_cells(&ctx, a),
        Command::Koszul(a) => {
            let dim = ctx.param("koszul", "dim", a.dim, 1, 8)?;
            let m = ctx.param("koszul", "m", a.m, 1, 12)?;
            report_complex(&ctx, &format!("koszul dim={dim} m={m}"), &format!("koszul-d{dim}-m{m}"), || build_koszul_complex(dim, m))
        }
        Command::Bar(a) => {
            let dim = ctx.param("bar", "dim", a.dim, 1, 8)?;
            let w = ctx.param("bar", "weight", a.weight, 1, 10)?;
            report_complex(&ctx, &format!("bar dim={dim} weight={w}"), &format!("bar-d{dim}-w{w}"), || build_bar_complex(dim, w))
        }
        Command::Cobar(a) => {
            let dim = ctx.param("cobar", "dim", a.dim, 1, 8)?;
            let w = ctx.param("cobar", "weight", a.weight, 1, 10)?;
            report_complex(&ctx, &format!("cobar dim={dim} weight={w}"), &format!("cobar-d{dim}-w{w}"), || build_cobar_complex(dim, w))
        }
        Command::Hoch(a) => run_hoch(&ctx, a, false),
        Command::Gs(a) => run_hoch(&ctx, a, true),
        Command::Bracket(a) => run_bracket(&ctx, a),
        Command::Suite(a) => run_suite(&ctx, a),
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidParameter(_) | Error::Dimension(_) | Error::Window(_) | Error::Parse(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
