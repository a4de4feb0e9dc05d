//! Command line front end: load JSON families, run the library, print text
//! or machine-readable reports.
//!
//! Exit codes: 0 affirmative, 1 corpus failure, 2 input error, 3 negative
//! verdict, 4 unsupported weights, 5 invalid augmentation.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corpus::{self, CorpusInputs};
use crate::discrete::{is_dual_pair, DiscreteFrame};
use crate::document::{parse_augmentation, FamilySpecDocument};
use crate::duals::{
    associated_discrete_frame, construct_dual_by_augmentation, enumerate_augmented_duals,
    lift_local_duals, EnumerationStrategy, LocalFrameAssignment,
};
use crate::error::FrameError;
use crate::fusion::{alternate_dual_check, RieszReport};
use crate::report::{sig12, AnalysisReport};
use crate::subspaces::TolerancePolicy;

#[derive(Parser)]
#[command(
    name = "fusionframe",
    version,
    about = "Frames and fusion frames: bounds, duals, and Riesz diagnostics"
)]
struct Cli {
    /// Residual tolerance for duality and identity checks.
    #[arg(
        long,
        global = true,
        env = "FUSIONFRAME_TOL",
        default_value_t = 1e-8,
        value_parser = positive_f64
    )]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Canonical,
    Augment,
    Enumerate,
}

#[derive(Subcommand)]
enum Command {
    /// Frame operator, bounds, and structural verdicts for one family.
    Analyze { file: PathBuf },
    /// Check whether the second family is a dual of the first.
    CheckDual {
        w_file: PathBuf,
        v_file: PathBuf,
        /// Also run the check with the roles swapped.
        #[arg(long)]
        both: bool,
    },
    /// Build dual families and print them as JSON documents.
    Construct {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Canonical)]
        mode: Mode,
        /// JSON file with one unit augmentation vector or null per member.
        #[arg(long)]
        h_file: Option<PathBuf>,
        /// Enumerate with seeded random directions instead of basis vectors.
        #[arg(long)]
        seed: Option<u64>,
        /// Stop enumerating after this many verified duals.
        #[arg(long, default_value_t = 256)]
        cap: usize,
    },
    /// Riesz diagnostics for one family.
    Riesz { file: PathBuf },
    /// Flatten a family into its associated frame and lift local duals.
    Discrete { file: PathBuf },
    /// Replay the bundled verification corpus.
    VerifyPaper {
        /// Only run fixture groups whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let tol = TolerancePolicy::with_identity_tol(cli.tol);
    let result = match &cli.command {
        Command::Analyze { file } => analyze(file, &tol, cli.format),
        Command::CheckDual {
            w_file,
            v_file,
            both,
        } => check_dual(w_file, v_file, *both, &tol, cli.format),
        Command::Construct {
            file,
            mode,
            h_file,
            seed,
            cap,
        } => construct(file, *mode, h_file.as_deref(), *seed, *cap, &tol),
        Command::Riesz { file } => riesz(file, &tol, cli.format),
        Command::Discrete { file } => discrete(file, &tol, cli.format),
        Command::VerifyPaper { filter } => verify_paper(filter.as_deref(), &tol, cli.format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(err: &FrameError) -> i32 {
    match err {
        FrameError::NotAFrame { .. } | FrameError::NotAFusionFrame { .. } => 3,
        FrameError::UnsupportedWeights { .. } => 4,
        FrameError::InvalidAugmentation { .. } => 5,
        _ => 2,
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive and finite, got {v}"))
    }
}

fn load_document(path: &Path) -> Result<FamilySpecDocument, FrameError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FrameError::Parse(format!("{}: {e}", path.display())))?;
    FamilySpecDocument::from_json(&text)
}

fn family_name(doc: &FamilySpecDocument, path: &Path) -> String {
    doc.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "family".into())
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn analyze(file: &Path, tol: &TolerancePolicy, format: Format) -> Result<i32, FrameError> {
    let doc = load_document(file)?;
    let (family, _) = doc.build(tol)?;
    let report = AnalysisReport::for_family(&family_name(&doc, file), &family, tol);
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Machine => println!("{}", to_json(&report)),
    }
    Ok(if report.is_fusion_frame { 0 } else { 3 })
}

#[derive(Serialize)]
struct DirectionReport {
    direction: &'static str,
    residual: f64,
    is_dual: bool,
    tolerance: f64,
}

fn check_dual(
    w_file: &Path,
    v_file: &Path,
    both: bool,
    tol: &TolerancePolicy,
    format: Format,
) -> Result<i32, FrameError> {
    let (w, _) = load_document(w_file)?.build(tol)?;
    let (v, _) = load_document(v_file)?.build(tol)?;
    let forward = alternate_dual_check(&w, &v, tol)?;
    let mut reports = vec![DirectionReport {
        direction: "forward",
        residual: forward.residual,
        is_dual: forward.is_dual,
        tolerance: forward.tolerance,
    }];
    if both {
        let reverse = alternate_dual_check(&v, &w, tol)?;
        reports.push(DirectionReport {
            direction: "reverse",
            residual: reverse.residual,
            is_dual: reverse.is_dual,
            tolerance: reverse.tolerance,
        });
    }
    match format {
        Format::Text => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("direction: {}", r.direction);
                println!("residual: {}", sig12(r.residual));
                println!("dual: {}", yes_no(r.is_dual));
                println!("tolerance: {}", sig12(r.tolerance));
            }
        }
        Format::Machine => println!("{}", to_json(&reports)),
    }
    Ok(if forward.is_dual { 0 } else { 3 })
}

fn construct(
    file: &Path,
    mode: Mode,
    h_file: Option<&Path>,
    seed: Option<u64>,
    cap: usize,
    tol: &TolerancePolicy,
) -> Result<i32, FrameError> {
    let doc = load_document(file)?;
    let (family, _) = doc.build(tol)?;
    let name = family_name(&doc, file);
    match mode {
        Mode::Canonical => {
            let dual = family.canonical_dual(tol)?;
            let check = alternate_dual_check(&family, &dual, tol)?;
            if !check.is_dual {
                return Err(FrameError::Validation(format!(
                    "constructed family failed the dual check, residual {}",
                    sig12(check.residual)
                )));
            }
            let out = FamilySpecDocument::from_family(
                Some(format!("{name} canonical dual")),
                &dual,
                None,
            );
            println!("{}", out.to_json());
        }
        Mode::Augment => {
            let h_path = h_file.ok_or_else(|| {
                FrameError::Validation("--h-file is required when --mode augment".into())
            })?;
            let text = std::fs::read_to_string(h_path)
                .map_err(|e| FrameError::Parse(format!("{}: {e}", h_path.display())))?;
            let choice = parse_augmentation(&text, family.ambient_dim())?;
            let dual = construct_dual_by_augmentation(&family, &choice, tol)?;
            let check = alternate_dual_check(&family, &dual, tol)?;
            if !check.is_dual {
                return Err(FrameError::Validation(format!(
                    "constructed family failed the dual check, residual {}",
                    sig12(check.residual)
                )));
            }
            let out = FamilySpecDocument::from_family(
                Some(format!("{name} augmented dual")),
                &dual,
                None,
            );
            println!("{}", out.to_json());
        }
        Mode::Enumerate => {
            let strategy = match seed {
                Some(seed) => EnumerationStrategy::SeededRandom {
                    seed,
                    per_member: 2,
                },
                None => EnumerationStrategy::BasisVectors,
            };
            let found = enumerate_augmented_duals(&family, &strategy, cap, tol)?;
            if found.cap_exceeded {
                eprintln!("note: stopped after {cap} verified duals; more may exist");
            }
            let docs: Vec<FamilySpecDocument> = found
                .families
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    FamilySpecDocument::from_family(Some(format!("{name} dual {}", i + 1)), f, None)
                })
                .collect();
            println!("{}", to_json(&docs));
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct NamedRieszReport<'a> {
    name: &'a str,
    #[serde(flatten)]
    report: &'a RieszReport,
}

fn riesz(file: &Path, tol: &TolerancePolicy, format: Format) -> Result<i32, FrameError> {
    let doc = load_document(file)?;
    let (family, _) = doc.build(tol)?;
    let name = family_name(&doc, file);
    let report = family.riesz_report(tol);
    match format {
        Format::Text => {
            println!("name: {name}");
            println!("dimension sum: {}", report.dims_sum);
            println!(
                "synthesis injective: {}",
                yes_no(report.synthesis_injective)
            );
            println!(
                "analysis surjective: {}",
                yes_no(report.analysis_surjective)
            );
            println!(
                "local bases discrete riesz: {}",
                yes_no(report.local_bases_discrete_riesz)
            );
            println!("riesz lower: {}", sig12(report.lower));
            println!("riesz upper: {}", sig12(report.upper));
            println!("fusion riesz basis: {}", yes_no(report.is_riesz));
        }
        Format::Machine => println!(
            "{}",
            to_json(&NamedRieszReport {
                name: &name,
                report: &report,
            })
        ),
    }
    Ok(if report.is_riesz { 0 } else { 3 })
}

#[derive(Serialize)]
struct DiscreteOutput {
    name: String,
    dimension: usize,
    vectors: Vec<Vec<f64>>,
    lower_bound: f64,
    upper_bound: f64,
    is_frame: bool,
    canonical_dual: Vec<Vec<f64>>,
    lifted_dual: Vec<Vec<f64>>,
    lifted_residual: f64,
    lifted_is_dual: bool,
}

fn vector_rows(frame: &DiscreteFrame) -> Vec<Vec<f64>> {
    frame
        .vectors()
        .iter()
        .map(|v| v.as_slice().to_vec())
        .collect()
}

fn print_vector_rows(label: &str, rows: &[Vec<f64>]) {
    for (i, row) in rows.iter().enumerate() {
        let coords = row.iter().map(|x| sig12(*x)).collect::<Vec<_>>().join(" ");
        println!("{label} {i}: {coords}");
    }
}

fn discrete(file: &Path, tol: &TolerancePolicy, format: Format) -> Result<i32, FrameError> {
    let doc = load_document(file)?;
    let (family, locals) = doc.build(tol)?;
    let locals = locals.unwrap_or_else(|| LocalFrameAssignment::orthonormal_bases(&family));
    let frame = associated_discrete_frame(&family, &locals, tol)?;
    let bounds = frame.bounds();
    let canonical = frame.canonical_dual(tol)?;
    let local_duals = locals.local_canonical_duals(&family, tol)?;
    let lifted = lift_local_duals(&family, &locals, &local_duals, tol)?;
    let check = is_dual_pair(&frame, &lifted, tol)?;
    let output = DiscreteOutput {
        name: family_name(&doc, file),
        dimension: family.ambient_dim(),
        vectors: vector_rows(&frame),
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        is_frame: frame.is_frame(tol),
        canonical_dual: vector_rows(&canonical),
        lifted_dual: vector_rows(&lifted),
        lifted_residual: check.residual,
        lifted_is_dual: check.is_dual,
    };
    match format {
        Format::Text => {
            println!("name: {}", output.name);
            println!("dimension: {}", output.dimension);
            println!("lower bound: {}", sig12(output.lower_bound));
            println!("upper bound: {}", sig12(output.upper_bound));
            println!("frame: {}", yes_no(output.is_frame));
            print_vector_rows("vector", &output.vectors);
            print_vector_rows("canonical dual", &output.canonical_dual);
            print_vector_rows("lifted dual", &output.lifted_dual);
            println!("lifted dual residual: {}", sig12(output.lifted_residual));
            println!("lifted dual verified: {}", yes_no(output.lifted_is_dual));
        }
        Format::Machine => println!("{}", to_json(&output)),
    }
    Ok(if output.lifted_is_dual { 0 } else { 3 })
}

fn verify_paper(
    filter: Option<&str>,
    tol: &TolerancePolicy,
    format: Format,
) -> Result<i32, FrameError> {
    let rows = corpus::run_corpus(&CorpusInputs::bundled(), filter, tol);
    if rows.is_empty() {
        return Err(FrameError::Validation(format!(
            "no fixture group matches '{}'",
            filter.unwrap_or_default()
        )));
    }
    match format {
        Format::Text => {
            for row in &rows {
                println!(
                    "{:<16} {:<62} {:<30} {:<30} {}",
                    row.group,
                    row.name,
                    row.expected,
                    row.actual,
                    if row.pass { "pass" } else { "fail" }
                );
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            println!("{} checks, {} failed", rows.len(), failed);
        }
        Format::Machine => println!("{}", to_json(&rows)),
    }
    Ok(corpus::exit_code(&rows))
}
