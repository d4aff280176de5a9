use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rstacked::complex::DEFAULT_SEARCH_CAP;
use rstacked::facetfile::{parse_facet_file, render_facet_file, ParsedComplex};
use rstacked::field::FieldSpec;
use rstacked::generators::Family;
use rstacked::manifold::analyze_auto;
use rstacked::report::{boundary_of, build_analysis, AnalysisOptions};
use rstacked::stackedness::{
    is_stacked_closed_with_cap, is_stacked_with_boundary, StackednessVerdict,
};

/// Exact-arithmetic analysis of triangulated homology manifolds.
#[derive(Parser)]
#[command(name = "rstacked", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Closed,
    WithBoundary,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a facet file: vectors, classification, stackedness, identities
    Analyze {
        path: PathBuf,
        /// Field for homology: rat, gf2, or gf:<p> (default: rationals,
        /// with an automatic gf2 retry for non-orientable manifolds)
        #[arg(long)]
        field: Option<String>,
        /// Largest stackedness index to test (default: (dim + 2) / 2)
        #[arg(long = "max-r")]
        max_r: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a member of a named example family as a facet file
    Generate {
        /// One of: simplex-boundary, full-simplex, kuhnel-lassmann,
        /// klee-novik, join-boundaries, stacked-sphere, cross-polytope
        family: String,
        /// Family parameters, e.g. `3 7`
        params: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide stackedness at index r; exit 0 = yes, 1 = no, 2 = error
    CheckStacked {
        path: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long)]
        field: Option<String>,
    },
    /// Write the largest complex with the same skeleton up to dimension r - 1
    Reconstruct {
        path: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the boundary complex of a homology manifold with boundary
    Boundary {
        path: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { path, field, max_r, format } => analyze(path, field, max_r, format),
        Command::Generate { family, params, seed, out } => generate(family, params, seed, out),
        Command::CheckStacked { path, r, mode, field } => check_stacked(path, r, mode, field),
        Command::Reconstruct { path, r, out } => reconstruct(path, r, out),
        Command::Boundary { path, field, out } => boundary(path, field, out),
    }
}

fn search_cap() -> Result<usize, String> {
    match std::env::var("RSTACKED_SIZE_GUARD") {
        Ok(value) => value
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&cap| cap > 0)
            .ok_or_else(|| format!("RSTACKED_SIZE_GUARD must be a positive integer, got '{value}'")),
        Err(_) => Ok(DEFAULT_SEARCH_CAP),
    }
}

fn parse_field(field: Option<String>) -> Result<Option<FieldSpec>, String> {
    match field {
        None => Ok(None),
        Some(text) => FieldSpec::parse(&text).map(Some).map_err(|e| e.to_string()),
    }
}

fn load(path: &PathBuf) -> Result<ParsedComplex, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_facet_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(out: Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(&path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn analyze(
    path: PathBuf,
    field: Option<String>,
    max_r: Option<usize>,
    format: Format,
) -> Result<u8, String> {
    let parsed = load(&path)?;
    let opts = AnalysisOptions {
        source: path.display().to_string(),
        requested_field: parse_field(field)?,
        max_r,
        search_cap: search_cap()?,
    };
    let report = build_analysis(&parsed, &opts).map_err(|e| e.to_string())?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => {
            let pretty = serde_json::to_string_pretty(&report.to_json())
                .map_err(|e| e.to_string())?;
            println!("{pretty}");
        }
    }
    Ok(0)
}

fn generate(
    family: String,
    params: Vec<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<u8, String> {
    let family = Family::from_name(&family).map_err(|e| e.to_string())?;
    let built = family.build(&params, seed).map_err(|e| e.to_string())?;
    for warning in &built.warnings {
        eprintln!("warning: {warning}");
    }
    write_output(out, &render_facet_file(&built.complex))?;
    Ok(0)
}

fn print_verdict(verdict: &StackednessVerdict) {
    println!("index r = {} (stack level {})", verdict.r, verdict.stack_level);
    println!("verdict: {}", if verdict.verdict { "yes" } else { "no" });
    println!("criterion: {}", verdict.criterion);
    if let Some(witness) = &verdict.witness {
        println!("witness facets: {}", witness.facets().len());
    }
    for note in &verdict.notes {
        println!("note: {note}");
    }
}

fn check_stacked(
    path: PathBuf,
    r: usize,
    mode: Mode,
    field: Option<String>,
) -> Result<u8, String> {
    if r < 1 {
        return Err("the index r must be at least 1".into());
    }
    let parsed = load(&path)?;
    let complex = &parsed.complex;
    let cap = search_cap()?;
    let requested = parse_field(field)?;
    let (analysis, _) = analyze_auto(complex, requested).map_err(|e| e.to_string())?;
    let field_used = analysis.field();
    let closed = analysis.is_closed_manifold();
    let with_boundary = analysis.is_manifold_with_boundary() && !closed;
    let use_closed = match mode {
        Mode::Auto => {
            if closed {
                true
            } else if with_boundary {
                false
            } else {
                return Err(format!(
                    "the complex is not a homology manifold with boundary over {field_used}"
                ));
            }
        }
        Mode::Closed => {
            if !closed {
                return Err(format!(
                    "closed mode requested, but the complex is not a closed homology \
                     manifold over {field_used}"
                ));
            }
            true
        }
        Mode::WithBoundary => {
            if closed {
                return Err(
                    "with-boundary mode requested, but the complex is closed (its boundary \
                     is empty); use closed mode"
                        .into(),
                );
            }
            if !with_boundary {
                return Err(format!(
                    "the complex is not a homology manifold with boundary over {field_used}"
                ));
            }
            false
        }
    };
    let verdict = if use_closed {
        is_stacked_closed_with_cap(complex, r, field_used, cap).map_err(|e| e.to_string())?
    } else {
        is_stacked_with_boundary(complex, r - 1, field_used).map_err(|e| e.to_string())?
    };
    print_verdict(&verdict);
    Ok(if verdict.verdict { 0 } else { 1 })
}

fn reconstruct(path: PathBuf, r: usize, out: Option<PathBuf>) -> Result<u8, String> {
    let parsed = load(&path)?;
    let cap = search_cap()?;
    let rebuilt = parsed.complex.delta_r_with_cap(r, cap).map_err(|e| e.to_string())?;
    write_output(out, &render_facet_file(&rebuilt))?;
    Ok(0)
}

fn boundary(path: PathBuf, field: Option<String>, out: Option<PathBuf>) -> Result<u8, String> {
    let parsed = load(&path)?;
    let requested = parse_field(field)?;
    let complex = boundary_of(&parsed.complex, requested).map_err(|e| e.to_string())?;
    if complex.is_empty_complex() {
        return Err("the complex is closed: its boundary is empty".into());
    }
    write_output(out, &render_facet_file(&complex))?;
    Ok(0)
}
