use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use loopforge::analysis::{derived_subloop, upper_central_series};
use loopforge::half::half_suite;
use loopforge::loops::{
    build_bruck_loop, chein_double, load_cayley, preset, save_cayley, GroupTable,
    DEFAULT_EXPORT_CAP, PRESETS,
};
use loopforge::report::{Report, Status, SuiteReport};
use loopforge::ring::{parse_ring_spec, ring_preset, RingSpec, RING_PRESETS};
use loopforge::sampling::{SamplingPlan, DEFAULT_SEED};
use loopforge::session::Session;
use loopforge::suites::{
    run_suite, theorem_harness, SuiteId, SuiteOptions, Theorem, Verdict, SUITE_IDS,
};
use loopforge::verify::verify_paper;
use loopforge::{Error, Loop};

/// Exact computations on finite loops.
#[derive(Parser)]
#[command(name = "loopforge", version)]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "LOOPFORGE_THREADS")]
    threads: Option<usize>,

    /// Seed for sampled scans, decimal or 0x-prefixed hex.
    #[arg(long, global = true, value_parser = parse_seed, default_value = "0x5EED")]
    seed: u64,

    /// Samples per sampled scan, overriding the per-suite defaults.
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Tab-separated output.
    #[arg(long, global = true)]
    tsv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a loop and print its descriptor
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Structural analysis of a loop given by preset name or file
    Analyze {
        source: String,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        nucleus: bool,
        #[arg(long)]
        series: bool,
        #[arg(long)]
        inn: bool,
        #[arg(long)]
        derived: bool,
    },
    /// Run an identity suite or a theorem harness
    Check {
        source: String,
        #[arg(long)]
        suite: Option<String>,
        /// odd-order or six-div
        #[arg(long)]
        theorem: Option<String>,
        /// Assert that every proper subloop has class at most 2.
        #[arg(long)]
        assume_proper_class2: bool,
    },
    /// Reproduce the structure of the triple loop of a ring
    VerifyPaper {
        /// Ring preset name or ring file.
        #[arg(long, default_value = "paper-z4")]
        ring: String,
    },
    /// List presets and suites
    List,
}

#[derive(Subcommand)]
enum Construct {
    /// The triple loop of a ring
    Bruck {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        export_table: Option<PathBuf>,
    },
    /// A shipped preset
    Preset {
        #[arg(long)]
        name: String,
        #[arg(long)]
        export_table: Option<PathBuf>,
    },
    /// The Chein double of a group table
    Chein {
        #[arg(long)]
        group: String,
        #[arg(long)]
        export_table: Option<PathBuf>,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}

/// A command's outcome besides its report.
enum Failure {
    /// A checked property does not hold.
    Assertion,
    /// Bad input, refused computation or unmet precondition.
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn file_stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned())
}

fn first_word(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

fn load_ring(source: &str) -> Result<RingSpec, Error> {
    if RING_PRESETS.contains(&source) {
        return ring_preset(source);
    }
    parse_ring_spec(&fs::read_to_string(source)?)
}

/// A preset name, a ring file or a Cayley table file.
fn load_loop(source: &str) -> Result<Loop, Error> {
    if PRESETS.contains(&source) {
        return preset(source);
    }
    let text = fs::read_to_string(source)?;
    let lp = match first_word(&text) {
        Some("ring") => build_bruck_loop(&parse_ring_spec(&text)?)?,
        _ => load_cayley(&text)?,
    };
    Ok(lp.with_name(file_stem(source)))
}

fn describe(lp: &Loop, report: &mut Report) {
    report.push("loop.name", lp.name());
    report.push("loop.order", lp.order());
    report.push(
        "loop.backend",
        if lp.as_triple().is_some() {
            "triple"
        } else {
            "cayley"
        },
    );
    if let Some(t) = lp.as_triple() {
        let (n1, n2, n3) = t.sizes();
        report.push("x1.size", n1);
        report.push("x2.size", n2);
        report.push("x3.size", n3);
    }
}

fn export(lp: &Loop, path: Option<&Path>, report: &mut Report) -> Result<(), Error> {
    if let Some(path) = path {
        fs::write(path, save_cayley(lp, DEFAULT_EXPORT_CAP)?)?;
        report.push("export.path", path.display());
    }
    Ok(())
}

fn construct(what: &Construct, report: &mut Report) -> Outcome {
    let (lp, path) = match what {
        Construct::Bruck { ring, export_table } => {
            let lp = build_bruck_loop(&load_ring(ring)?)?.with_name(file_stem(ring));
            (lp, export_table)
        }
        Construct::Preset { name, export_table } => (preset(name)?, export_table),
        Construct::Chein {
            group,
            export_table,
        } => {
            let g = GroupTable::verify(load_loop(group)?, None)?;
            let name = format!("chein-{}", file_stem(group));
            (chein_double(&g, &name)?, export_table)
        }
    };
    describe(&lp, report);
    export(&lp, path.as_deref(), report)?;
    Ok(())
}

fn forms_key(s: &Session, report: &mut Report) {
    if s.lp().as_triple().is_some() {
        report.push("forms.certified", s.form_cert().is_some());
    }
}

fn analyze(s: &Session, sections: [bool; 5], report: &mut Report) -> Outcome {
    let [center, nucleus, series, inn, derived] = sections;
    let lp = s.lp();
    describe(lp, report);
    if center {
        forms_key(s, report);
        let z = s.center();
        report.push("center.order", z.len());
        report.push("center.elements", z.describe(lp, 16));
    }
    if nucleus {
        forms_key(s, report);
        let n = s.nucleus()?;
        report.push("nucleus.order", n.len());
        report.push("nucleus.elements", n.describe(lp, 16));
    }
    if series {
        forms_key(s, report);
        let cs = s.series()?;
        report.push("series.orders", format!("{:?}", cs.orders()));
        report.push("class", class_value(cs.class()));
    }
    if inn {
        if lp.as_triple().is_some() {
            report.push("inn.certified", s.inner_cert().is_some());
        }
        let g = s.inn()?;
        report.push("inn.order", g.order());
        report.push("inn.abelian", g.is_abelian());
        report.push("inn.exponent", g.exponent());
        report.push("inn.generators", g.generator_count());
        if let Ok(table) = g.to_group_table(lp) {
            let cs = upper_central_series(table.as_loop(), None)?;
            report.push("inn.class", class_value(cs.class()));
        }
    }
    if derived {
        forms_key(s, report);
        let d = derived_subloop(lp, s.inner_generators()?, s.form_cert())?;
        report.push("derived.order", d.len());
        report.push("derived.in_center", d.is_subset_of(s.center()));
    }
    Ok(())
}

fn class_value(class: Option<usize>) -> String {
    class.map_or_else(|| "not-nilpotent".to_string(), |c| c.to_string())
}

fn suite_status(r: &SuiteReport) -> Outcome {
    if r.items.iter().any(|i| i.status == Status::Fail) {
        Err(Failure::Assertion)
    } else {
        Ok(())
    }
}

fn check(
    s: &Session,
    suite: Option<&str>,
    theorem: Option<&str>,
    opts: SuiteOptions,
    report: &mut Report,
) -> Outcome {
    if suite.is_none() && theorem.is_none() {
        return Err(Failure::Input(Error::Refused(
            "check needs --suite or --theorem".into(),
        )));
    }
    report.push("loop.name", s.lp().name());
    report.push("loop.order", s.lp().order());
    let mut outcome = Ok(());
    if let Some(id) = suite {
        let id = SuiteId::parse(id)?;
        let r = if id == SuiteId::HalfBundle {
            let h = half_suite(s)?;
            report.push("half.commutative", h.commutative);
            report.push("half.abelian", h.abelian);
            h.suite
        } else {
            run_suite(s, id, opts)?
        };
        r.render_into(&id.to_string(), report);
        outcome = suite_status(&r);
    }
    if let Some(which) = theorem {
        let th = theorem_harness(s, Theorem::parse(which)?)?;
        th.suite.render_into("theorem", report);
        report.push("theorem.verdict", th.verdict);
        if let Some(c) = th.class {
            report.push("class", c);
        }
        if th.verdict == Verdict::Violation {
            outcome = Err(Failure::Assertion);
        }
    }
    outcome
}

fn run(cli: &Cli, report: &mut Report) -> Outcome {
    let mut plan = SamplingPlan::default().with_seed(cli.seed);
    plan.samples = cli.samples;
    match &cli.command {
        Command::Construct { what } => construct(what, report),
        Command::Analyze {
            source,
            center,
            nucleus,
            series,
            inn,
            derived,
        } => {
            let s = Session::new(load_loop(source)?, plan);
            analyze(&s, [*center, *nucleus, *series, *inn, *derived], report)
        }
        Command::Check {
            source,
            suite,
            theorem,
            assume_proper_class2,
        } => {
            let s = Session::new(load_loop(source)?, plan);
            let opts = SuiteOptions {
                proper_subloops_class2: *assume_proper_class2,
            };
            check(&s, suite.as_deref(), theorem.as_deref(), opts, report)
        }
        Command::VerifyPaper { ring } => {
            let v = verify_paper(&load_ring(ring)?, &plan);
            report.extend(v.report.clone());
            if v.passed() {
                Ok(())
            } else {
                Err(Failure::Assertion)
            }
        }
        Command::List => {
            report.push("presets", PRESETS.join(","));
            report.push("rings", RING_PRESETS.join(","));
            report.push("suites", SUITE_IDS.join(","));
            report.push("theorems", "odd-order,six-div");
            report.push("seed.default", format!("{DEFAULT_SEED:#x}"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("loopforge: cannot configure {k} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let mut report = Report::new();
    let outcome = run(&cli, &mut report);
    let text = if cli.tsv {
        report.render_tsv()
    } else {
        report.render()
    };
    print!("{text}");
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("loopforge: {e}");
            ExitCode::from(2)
        }
    }
}
