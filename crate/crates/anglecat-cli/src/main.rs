mod print;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anglecat::angle::Verdict;
use anglecat::axioms::{Engine, OctahedronInput};
use anglecat::builtin::{self, LoadError, Workbench};
use anglecat::document::parse_document;
use anglecat::sequence::Ladder;
use anglecat::suite::{run_full_suite, Outcome, SuiteConfig, SuiteReport};
use anglecat::validate_presentation;
use clap::{Args, Parser, Subcommand, ValueEnum};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "anglecat", version, about = "Check right angulated quotient categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Source {
    /// Document path or builtin:NAME.
    source: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the document's n.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, default_value_t = 2)]
    universe_bound: usize,
    #[arg(long, default_value_t = 48)]
    budget: usize,
    #[arg(long, default_value_t = 50)]
    derive_instances: usize,
    /// Treat UNDECIDED verdicts as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the presentation invariants of a document.
    Validate { file: PathBuf },
    /// Run the axiom suite and summarize.
    Axioms(SuiteArgs),
    /// Run the axiom suite and print every verdict.
    Report {
        #[command(flatten)]
        suite: SuiteArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the standard angle on a morphism, e.g. `P1->S1:1`.
    Angle {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        morphism: String,
    },
    /// Print the cone of a ladder `a0 | b0 | f0 | f1`, or of the identity
    /// ladder when a single morphism is given.
    Cone {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        ladder: String,
    },
    /// Complete an octahedron from `a0 | f1`, printing alpha and beta.
    Octahedron {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        input: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(match cli.cmd {
        Cmd::Validate { file } => validate(&file),
        Cmd::Axioms(a) => axioms(&a, None),
        Cmd::Report { suite, format } => axioms(&suite, Some(format)),
        Cmd::Angle { src, morphism } => with(&src, |wb| angle(wb, &morphism)),
        Cmd::Cone { src, ladder } => with(&src, |wb| cone(wb, &ladder)),
        Cmd::Octahedron { src, input } => with(&src, |wb| octahedron(wb, &input)),
    })
}

fn input_error(e: impl std::fmt::Display) -> u8 {
    eprintln!("error: {e}");
    INPUT
}

fn open(src: &Source) -> Result<Workbench, LoadError> {
    builtin::open(&src.source, src.seed, src.n)
}

fn with(src: &Source, f: impl FnOnce(&Workbench) -> Result<u8, String>) -> u8 {
    match open(src) {
        Ok(wb) => f(&wb).unwrap_or_else(input_error),
        Err(e) => input_error(e),
    }
}

fn validate(file: &PathBuf) -> u8 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let loaded = match doc.load() {
        Ok(l) => l,
        Err(e) => {
            println!("INVALID {e}");
            return FAIL;
        }
    };
    let report = validate_presentation(&loaded.pres);
    for v in &report.violations {
        println!("INVALID {v}");
    }
    if report.passed() {
        println!("VALID {} indecomposables", loaded.pres.k());
        PASS
    } else {
        FAIL
    }
}

fn axioms(a: &SuiteArgs, format: Option<Format>) -> u8 {
    let wb = match open(&a.src) {
        Ok(wb) => wb,
        Err(e @ (LoadError::Invalid(_) | LoadError::Theta(_) | LoadError::Quotient(_))) => {
            println!("FAIL setup: {e}");
            return FAIL;
        }
        Err(e) => return input_error(e),
    };
    let cfg = SuiteConfig {
        universe_bound: a.universe_bound,
        budget: a.budget,
        derive_instances: a.derive_instances,
        seed: a.src.seed,
        mutation: None,
    };
    let phi = if wb.ctx.is_some() { wb.phi.as_deref() } else { None };
    let report = run_full_suite(&a.src.source, wb.theta.as_ref(), phi, &cfg);
    match format {
        None => summary(&report),
        Some(Format::Text) => {
            for r in &report.records {
                println!("{}\t{}\t{}\t{}", r.key, r.axiom, r.verdict.label(), r.digest);
            }
        }
        Some(Format::Json) => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
    }
    let undecided = report.count(Outcome::Undecided);
    if !report.passed() {
        return FAIL;
    }
    if undecided > 0 {
        eprintln!("warning: {undecided} UNDECIDED verdicts");
        if a.strict {
            return FAIL;
        }
    }
    PASS
}

fn summary(r: &SuiteReport) {
    println!("instance {}  n={}  seed={}", r.instance, r.n, r.config.seed);
    let outcomes = [Outcome::Pass, Outcome::Undecided, Outcome::NotFound, Outcome::Violation];
    println!("{:32} {:>6} {:>9} {:>9} {:>9}", "axiom", "PASS", "UNDECIDED", "NOT_FOUND", "VIOLATION");
    for (ax, t) in r.tally() {
        let c: Vec<usize> = outcomes.iter().map(|o| t.get(o).copied().unwrap_or(0)).collect();
        println!("{ax:32} {:>6} {:>9} {:>9} {:>9}", c[0], c[1], c[2], c[3]);
    }
    for f in r.failures() {
        println!("FAIL {} {} {} {}", f.axiom, f.key, f.verdict.label(), f.detail);
    }
    println!("{} ({} records)", if r.passed() { "PASS" } else { "FAIL" }, r.records.len());
}

fn verdict_line(v: Verdict) -> &'static str {
    match v {
        Verdict::Member => "MEMBER",
        Verdict::NotFound => "NOT_FOUND",
        Verdict::Undecided => "UNDECIDED",
    }
}

fn angle(wb: &Workbench, spec: &str) -> Result<u8, String> {
    let f = spec::parse_mor(&wb.pres, spec)?;
    let w = wb.theta.work();
    let Some(s) = wb.theta.embed(&f) else {
        println!("no standard angle on {}", print::arrow(w, "f", &f));
        return Ok(FAIL);
    };
    print!("{}", print::sequence(w, &s));
    let v = wb.theta.contains(&s);
    println!("verdict {}", verdict_line(v));
    Ok(if v == Verdict::Member { PASS } else { FAIL })
}

fn embed(wb: &Workbench, f: &anglecat::Mor) -> Result<anglecat::sequence::NSequence, String> {
    wb.theta.embed(f).ok_or_else(|| format!("no standard angle on {}", print::arrow(wb.theta.work(), "f", f)))
}

fn cone(wb: &Workbench, spec: &str) -> Result<u8, String> {
    let ms = spec::parse_list(&wb.pres, spec)?;
    let w = wb.theta.work();
    let p = w.pres();
    let (s, t, f0, f1, prefer) = match ms.as_slice() {
        [a0] => {
            let s = embed(wb, a0)?;
            let legs = s.objs.iter().map(|o| p.identity(o)).collect();
            let l = Ladder { legs, last: p.identity(&s.target) };
            (s.clone(), s, p.identity(&a0.src), p.identity(&a0.dst), Some(l))
        }
        [a0, b0, f0, f1] => (embed(wb, a0)?, embed(wb, b0)?, f0.clone(), f1.clone(), None),
        _ => return Err("--ladder takes one morphism or four: a0 | b0 | f0 | f1".into()),
    };
    match Engine::new(wb.theta.as_ref()).rn41(&s, &t, &f0, &f1, prefer.as_ref()) {
        Ok((l, c)) => {
            println!("top");
            print!("{}", print::sequence(w, &s));
            println!("bottom");
            print!("{}", print::sequence(w, &t));
            println!("ladder");
            for (k, f) in l.legs.iter().enumerate() {
                println!("  {}", print::arrow(w, &format!("f{k}"), f));
            }
            println!("cone");
            print!("{}", print::sequence(w, &c));
            println!("verdict MEMBER");
            Ok(PASS)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(FAIL)
        }
    }
}

fn octahedron(wb: &Workbench, spec: &str) -> Result<u8, String> {
    let ms = spec::parse_list(&wb.pres, spec)?;
    let [a0, f1] = ms.as_slice() else {
        return Err("--input takes two morphisms: a0 | f1".into());
    };
    if a0.dst != f1.src {
        return Err("a0 and f1 do not compose".into());
    }
    let w = wb.theta.work();
    let inp = OctahedronInput { a: embed(wb, a0)?, b: embed(wb, &w.pres().compose(f1, a0))?, c: embed(wb, f1)?, f1: f1.clone() };
    match Engine::new(wb.theta.as_ref()).complete_rn4_star(&inp) {
        Ok(c) => {
            for (name, row) in [("a", &inp.a), ("b", &inp.b), ("c", &inp.c)] {
                println!("row {name}");
                print!("{}", print::sequence(w, row));
            }
            for (k, f) in c.f.iter().enumerate() {
                println!("  {}", print::arrow(w, &format!("f{k}"), f));
            }
            for (k, g) in c.g.iter().enumerate() {
                println!("  {}", print::arrow(w, &format!("g{k}"), g));
            }
            for (k, h) in c.h.iter().enumerate() {
                if let Some(h) = h {
                    println!("  {}", print::arrow(w, &format!("h{k}"), h));
                }
            }
            if c.alpha.is_empty() {
                println!("  alpha: none (n < 4)");
            }
            for (i, a) in c.alpha.iter().enumerate() {
                println!("  {}", print::arrow(w, &format!("alpha{}", i + 1), a));
            }
            match &c.beta {
                Some(b) => println!("  {}", print::arrow(w, "beta", b)),
                None => println!("  beta: none (n = 1)"),
            }
            println!("long");
            print!("{}", print::sequence(w, &c.long));
            println!("verdict MEMBER");
            Ok(PASS)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(FAIL)
        }
    }
}
