mod input;
mod output;

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use hochkit_core::fixtures::{Fixture, FixtureError, GROUP_FIXTURES};
use hochkit_core::hochschild::{Hochschild, HochschildConfig, HochschildError, DEFAULT_DEGREE_CAP};
use hochkit_core::linalg::SparseMatrix;
use hochkit_core::modules::ModuleError;
use hochkit_core::mukai::{
    chern, hochschild_trace, iota_solve, pairing_report, random_central, MukaiError, Transfer,
};
use hochkit_core::report::CheckRecord;
use hochkit_core::scalars::format_vector;
use hochkit_core::suites::{self, SuiteError};
use hochkit_core::tqft::{evaluate, generator_kernels, homomorphism_count_oracle, parse_word, CobordismWord, TqftError};

use input::{matrix_arg, parse_algebra, spec_kind, Loader, SpecKind};
use output::{Format, Report, RunConfig, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("ParseError at {path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("ValidationError: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Mukai(#[from] MukaiError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Tqft(#[from] TqftError),
}

#[derive(Parser, Debug)]
#[command(name = "hochkit", version, about = "Exact Hochschild structure, Chern characters and Mukai pairings")]
struct Cli {
    /// Highest degree to compute (hh defaults to 4, verify morita to 3)
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Largest chain space, in coordinates, that may be assembled
    #[arg(long, global = true, default_value_t = hochkit_core::hochschild::DEFAULT_SIZE_GUARD,
          value_parser = positive)]
    size_guard: usize,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Widen the coefficient field of loaded algebras to contain ζ_n
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    field_order: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hochschild homology (or cohomology) dimensions from the bar complex
    Hh {
        algebra: String,
        #[arg(long)]
        cohomology: bool,
        #[arg(long)]
        unnormalized: bool,
    },
    /// Center Z(A) = HH⁰ and the dimension of HH₀ = A/[A,A]
    Center { algebra: String },
    /// Chern character of a module, checked against its defining trace property
    Chern { algebra: String, module: String },
    /// ι^M(e) for an endomorphism e of M (identity by default)
    Iota {
        algebra: String,
        module: String,
        /// Matrix rows, e.g. "[[1, 0], [0, 2]]"
        #[arg(long)]
        endo: Option<String>,
    },
    /// Mukai pairing of two classes: coordinate lists or ch(<module>)
    Pairing { algebra: String, z1: String, z2: String },
    /// Push a class along a kernel: outer(A#V, B#W), regular(A) or a bimodule file
    Pushforward { kernel: String, class: String },
    /// Evaluate a closed surface for a group algebra
    Tqft {
        algebra: String,
        #[arg(long, conflicts_with = "genus", required_unless_present = "genus")]
        word: Option<String>,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Run identity suites
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Fixtures to run on (suite defaults otherwise)
        fixtures: Vec<String>,
        /// Random instances per fixture (cardy) or per identity (traces)
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Parse and validate an algebra, module or bimodule file, or a fixture expression
    Validate { target: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Hrr,
    Cardy,
    Adjoint,
    Functorial,
    Morita,
    Traces,
    Chern,
    Tqft,
    All,
}

impl Suite {
    const EACH: [Suite; 8] = [
        Suite::Hrr,
        Suite::Cardy,
        Suite::Adjoint,
        Suite::Functorial,
        Suite::Morita,
        Suite::Traces,
        Suite::Chern,
        Suite::Tqft,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Hrr => "hrr",
            Suite::Cardy => "cardy",
            Suite::Adjoint => "adjoint",
            Suite::Functorial => "functorial",
            Suite::Morita => "morita",
            Suite::Traces => "traces",
            Suite::Chern => "chern",
            Suite::Tqft => "tqft",
            Suite::All => "all",
        }
    }

    fn default_fixtures(self) -> Vec<&'static str> {
        match self {
            Suite::Adjoint | Suite::Functorial => vec!["zn:2", "zn:3", "s3"],
            Suite::Morita => vec!["field", "zn:2", "s3", "dual"],
            Suite::Tqft => vec!["zn:2", "zn:4", "s3", "q8"],
            Suite::Chern => {
                let mut v = GROUP_FIXTURES.to_vec();
                v.extend(["mat:2", "field"]);
                v
            }
            _ => GROUP_FIXTURES.to_vec(),
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

struct Context {
    loader: Loader,
    config: RunConfig,
}

impl Context {
    fn hochschild_config(&self) -> HochschildConfig {
        HochschildConfig { degree_cap: DEFAULT_DEGREE_CAP, size_guard: self.config.size_guard }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.config.seed);
        r.set_stream(stream);
        r
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let config = RunConfig {
        max_degree: cli.max_degree,
        size_guard: cli.size_guard,
        field_order: cli.field_order,
        seed: cli.seed,
    };
    let ctx = Context { loader: Loader::from_env(cli.field_order), config: config.clone() };
    let start = Instant::now();
    let mut report = match cli.command {
        Command::Hh { algebra, cohomology, unnormalized } => hh(&ctx, &algebra, cohomology, !unnormalized)?,
        Command::Center { algebra } => center(&ctx, &algebra)?,
        Command::Chern { algebra, module } => chern_cmd(&ctx, &algebra, &module)?,
        Command::Iota { algebra, module, endo } => iota(&ctx, &algebra, &module, endo.as_deref())?,
        Command::Pairing { algebra, z1, z2 } => pairing(&ctx, &algebra, &z1, &z2)?,
        Command::Pushforward { kernel, class } => pushforward(&ctx, &kernel, &class)?,
        Command::Tqft { algebra, word, genus } => tqft(&ctx, &algebra, word.as_deref(), genus)?,
        Command::Verify { suite, fixtures, instances } => verify(&ctx, suite, &fixtures, instances)?,
        Command::Validate { target } => validate(&ctx, &target)?,
    };
    report.finish(start.elapsed());
    Ok(report)
}

fn hh(ctx: &Context, algebra: &str, cohomology: bool, normalized: bool) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let maxdeg = ctx.config.max_degree.unwrap_or(4);
    let h = Hochschild::new(&f.algebra, normalized, ctx.hochschild_config());
    let r = if cohomology { h.cohomology_dims(maxdeg)? } else { h.homology_dims(maxdeg)? };
    let mut report = Report::new(format!("hh {algebra}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("kind", if cohomology { "cohomology" } else { "homology" });
    report.set("normalized", normalized);
    report.set("dims", &r.dims);
    report.set("truncation", r.truncation);
    report.set("top_incomplete", r.top_incomplete);
    report.tables.push(Table {
        title: format!("dim HH{}{}", if cohomology { "^" } else { "_" }, "i"),
        header: vec!["degree".into(), "dim".into()],
        rows: r
            .dims
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let note = if r.top_incomplete && i == r.truncation { " (incomplete)" } else { "" };
                vec![i.to_string(), format!("{d}{note}")]
            })
            .collect(),
    });
    Ok(report)
}

fn center(ctx: &Context, algebra: &str) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let a = &f.algebra;
    let basis = a.center_basis();
    let mut report = Report::new(format!("center {algebra}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("dim", a.dim());
    report.set("center_dim", basis.len());
    report.set("hh0_dim", a.dim() - a.commutator_subspace().dim());
    report.tables.push(Table {
        title: format!("basis of Z({}) in {}", f.name, a.labels().join(", ")),
        header: vec!["".into(), "coordinates".into()],
        rows: basis.iter().enumerate().map(|(i, z)| vec![format!("z{i}"), format_vector(z)]).collect(),
    });
    Ok(report)
}

fn chern_cmd(ctx: &Context, algebra: &str, module: &str) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let m = ctx.loader.module(&f, module)?;
    let ch = chern(&m)?;
    let z = random_central(&f.algebra, &mut ctx.rng(0));
    let mut report = Report::new(format!("chern {algebra} {module}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("module_dim", m.dim());
    report.set("ch", format_vector(ch.coords()));
    report.records.push(output::Record::from_check(
        "chern",
        CheckRecord::equal(
            "Tr_A(z·ch M) = tr(z|M)",
            "Def 6.2 Chern character",
            format!("random central z = {z}"),
            &hochschild_trace(&f.algebra, z.mul(&ch)?.coords())?,
            &m.act(z.coords()).trace(),
        ),
    ));
    Ok(report)
}

fn iota(ctx: &Context, algebra: &str, module: &str, endo: Option<&str>) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let m = ctx.loader.module(&f, module)?;
    let e = match endo {
        Some(t) => matrix_arg(t, m.dim())?,
        None => SparseMatrix::identity(m.dim()),
    };
    let v = iota_solve(&m, &e)?;
    let z = random_central(&f.algebra, &mut ctx.rng(0));
    let mut report = Report::new(format!("iota {algebra} {module}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("module_dim", m.dim());
    report.set("iota", format_vector(v.coords()));
    report.records.push(output::Record::from_check(
        "iota",
        CheckRecord::equal(
            "Tr_A(z·ι(e)) = tr(z|M ∘ e)",
            "Def 6.2 iota",
            format!("random central z = {z}"),
            &hochschild_trace(&f.algebra, z.mul(&v)?.coords())?,
            &m.act(z.coords()).matmul(&e).trace(),
        ),
    ));
    Ok(report)
}

fn pairing(ctx: &Context, algebra: &str, z1: &str, z2: &str) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let v = ctx.loader.class(&f, z1)?;
    let w = ctx.loader.class(&f, z2)?;
    let p = pairing_report(&v, &w)?;
    let mut report = Report::new(format!("pairing {algebra}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("left", format_vector(p.left.coords()));
    report.set("right", format_vector(p.right.coords()));
    report.set("value", p.value.to_string());
    report.set("method", p.method);
    Ok(report)
}

fn pushforward(ctx: &Context, kernel: &str, class: &str) -> Result<Report, CliError> {
    let (k, src, tgt) = ctx.loader.kernel(kernel)?;
    let v = ctx.loader.class(&src, class)?;
    let t = Transfer::new(&k, &src.simple_modules())?;
    let a = t.route_a(&v)?;
    let b = t.route_b(&v)?;
    let mut report = Report::new(format!("pushforward {kernel}"), ctx.config.clone());
    report.set("source", &src.name);
    report.set("target", &tgt.name);
    report.set("kernel_dim", k.dim());
    report.set("class", format_vector(v.coords()));
    report.set("image", format_vector(a.coords()));
    report.records.push(output::Record::from_check(
        "pushforward",
        CheckRecord::equal("route A = route B", "Prop 3.1 adjoint transfer", format!("v = {v}"), &a, &b),
    ));
    Ok(report)
}

fn tqft(ctx: &Context, algebra: &str, word: Option<&str>, genus: Option<usize>) -> Result<Report, CliError> {
    let f = ctx.loader.algebra(algebra)?;
    let group = f.group.as_ref().ok_or_else(|| CliError::Usage(format!("{} is not a group algebra fixture", f.name)))?;
    let kernels = generator_kernels(&f.algebra, group, f.augmentation.as_ref())?;
    let w = match (word, genus) {
        (Some(text), _) => parse_word(text)?,
        (None, Some(g)) => CobordismWord::genus(g),
        (None, None) => return Err(CliError::Usage("give --word or --genus".into())),
    };
    let inv = evaluate(&kernels, &w)?;
    let mut report = Report::new(format!("tqft {algebra}"), ctx.config.clone());
    report.set("algebra", &f.name);
    report.set("word", &inv.word);
    report.set("genus", inv.genus);
    report.set("dim", inv.dim);
    if let Some(g) = inv.genus {
        report.tables.push(Table {
            title: "oracle comparison (genus ≥ 2 reported only)".into(),
            header: vec!["genus".into(), "evaluated dim".into(), "|Hom(π₁Σ_g, G)|/|G|".into()],
            rows: vec![vec![g.to_string(), inv.dim.to_string(), homomorphism_count_oracle(group, g).to_string()]],
        });
        let expected = match g {
            0 => Some(1),
            1 => Some(suites::torus_hh0(&f.algebra)?),
            _ => None,
        };
        if let Some(e) = expected {
            let name = if g == 0 { "Z(S²) = 1" } else { "Z(T²) = dim HH₀" };
            report.extend("tqft", vec![CheckRecord::equal(name, "App A TQFT", inv.word.clone(), &inv.dim, &e)]);
        }
    }
    Ok(report)
}

struct SuiteOutput {
    records: Vec<CheckRecord>,
    tables: Vec<Table>,
}

fn load(ctx: &Context, names: &[String], defaults: Vec<&str>) -> Result<Vec<Fixture>, CliError> {
    let names: Vec<String> = if names.is_empty() { defaults.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    names.iter().map(|n| ctx.loader.algebra(n)).collect()
}

fn run_suite(ctx: &Context, suite: Suite, names: &[String], instances: Option<usize>) -> Result<SuiteOutput, CliError> {
    let fx = load(ctx, names, suite.default_fixtures())?;
    let mut rng = ctx.rng(suite as u64 + 1);
    let mut tables = Vec::new();
    let records = match suite {
        Suite::Hrr => {
            let records = suites::hrr_suite(&fx)?;
            let mut k = 0;
            for f in &fx {
                let n = f.simples.len();
                let mut header = vec!["⟨ch V_i, ch V_j⟩".to_string()];
                header.extend(f.simples.iter().map(|s| s.name.clone()));
                let rows = f
                    .simples
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let mut row = vec![s.name.clone()];
                        row.extend(records[k + i * n..k + (i + 1) * n].iter().map(|r| r.lhs.clone()));
                        row
                    })
                    .collect();
                k += n * n;
                tables.push(Table { title: format!("{}: {n}×{n} pairing of simples", f.name), header, rows });
            }
            records
        }
        Suite::Cardy => suites::cardy_suite(&fx, instances.unwrap_or(50), &mut rng)?,
        Suite::Adjoint | Suite::Functorial => {
            let order = ctx.config.field_order.unwrap_or(6);
            let fx: Vec<Fixture> = fx.iter().map(|f| f.with_field_order(order)).collect();
            if suite == Suite::Adjoint {
                suites::adjoint_suite(&fx)?
            } else {
                suites::functorial_suite(&fx, &mut rng)?
            }
        }
        Suite::Morita => {
            let (iso, dims): (Vec<Fixture>, Vec<Fixture>) = if names.is_empty() {
                let iso = load(ctx, &[], vec!["field", "zn:2", "s3"])?;
                (iso, load(ctx, &[], vec!["dual", "zn:2"])?)
            } else {
                let iso = fx.iter().filter(|f| f.algebra.is_semisimple() && !f.simples.is_empty()).cloned().collect();
                (iso, fx.clone())
            };
            let maxdeg = ctx.config.max_degree.unwrap_or(3);
            suites::morita_suite(&iso, &dims, 2, maxdeg, &ctx.hochschild_config())?
        }
        Suite::Traces => suites::trace_suite(&fx, instances.unwrap_or(100), &mut rng)?,
        Suite::Chern => suites::chern_suite(&fx, &mut rng)?,
        Suite::Tqft => {
            let records = suites::tqft_suite(&fx)?;
            let mut rows = Vec::new();
            for f in &fx {
                for r in suites::genus_rows(f, &[0, 1, 2])? {
                    rows.push(vec![r.algebra, r.genus.to_string(), r.dim.to_string(), r.oracle]);
                }
            }
            tables.push(Table {
                title: "surface invariants (genus ≥ 2 reported only)".into(),
                header: ["algebra", "genus", "evaluated dim", "|Hom(π₁Σ_g, G)|/|G|"].map(String::from).to_vec(),
                rows,
            });
            records
        }
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(SuiteOutput { records, tables })
}

fn verify(ctx: &Context, suite: Suite, names: &[String], instances: Option<usize>) -> Result<Report, CliError> {
    let mut report = Report::new(format!("verify {}", suite.name()), ctx.config.clone());
    let selected: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    // independent suites run concurrently; results are merged in suite order
    let results: Vec<(Suite, Result<SuiteOutput, CliError>, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&s| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = run_suite(ctx, s, names, instances);
                    (s, out, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    for (s, out, elapsed) in results {
        let out = out?;
        report.extend(s.name(), out.records);
        report.tables.extend(out.tables);
        report.timings.push((s.name().to_string(), elapsed));
    }
    report.set("suites", selected.iter().map(|s| s.name()).collect::<Vec<_>>());
    Ok(report)
}

fn validate(ctx: &Context, target: &str) -> Result<Report, CliError> {
    let mut report = Report::new(format!("validate {target}"), ctx.config.clone());
    let named = ctx.loader.named_file(target);
    let path = named.as_deref().unwrap_or(Path::new(target));
    if path.is_file() {
        match spec_kind(path)? {
            SpecKind::Algebra => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(e.to_string()))?;
                let a = parse_algebra(path, &text)?;
                report.set("kind", "algebra");
                report.set("dim", a.dim());
                report.set("field_order", a.field_order());
                report.set("frobenius", a.serre().is_some());
                report.set("semisimple", a.is_semisimple());
                report.set("center_dim", a.center().dim());
            }
            SpecKind::Module => {
                let m = ctx.loader.module_file(path, None)?;
                report.set("kind", "module");
                report.set("algebra", m.algebra().name());
                report.set("dim", m.dim());
            }
            SpecKind::Bimodule => {
                let (k, src, tgt) = ctx.loader.bimodule_file(path)?;
                report.set("kind", "bimodule");
                report.set("source", &src.name);
                report.set("target", &tgt.name);
                report.set("dim", k.dim());
            }
        }
    } else {
        let f = ctx.loader.algebra(target)?;
        f.algebra.validate().map_err(|e| CliError::Validation(e.to_string()))?;
        for s in &f.simples {
            s.module.validate().map_err(|e| CliError::Validation(format!("{}: {e}", s.name)))?;
        }
        report.set("kind", "fixture");
        report.set("dim", f.algebra.dim());
        report.set("simples", f.simples.iter().map(|s| format!("{} (dim {})", s.name, s.module.dim())).collect::<Vec<_>>());
        report.set("semisimple", f.algebra.is_semisimple());
        report.set("center_dim", f.algebra.center().dim());
    }
    report.set("valid", true);
    Ok(report)
}
