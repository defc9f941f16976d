//! `seqea` — batch interface to the effect-algebra toolkit.
//!
//! Subcommands: `check` (law verification), `search` (exhaustive product
//! enumeration on finite tables), `decompose` (boolean ⊕ convex ⊕ a-convex
//! splitting), `analyze` (floor, square root, halves, center, commutants).
//!
//! Exit codes: 0 — all checks passed; 1 — a property failed, with witnesses
//! on stdout; 2 — usage, parse, or unsupported-input errors.
//!
//! Stdout is deterministic for identical invocations (including `--seed`);
//! wall-clock timing goes to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use seqea::models::check_ea_axioms_on;
use seqea::search::{search_effect_monoids, search_products, AxiomSet, SearchProblem};
use seqea::sequential::{
    bicommutant, center, check_effect_monoid, check_sea_axioms, commutant, floor, halves_of, sqrt,
    SeaCheckConfig,
};
use seqea::structure::decompose;
use seqea::{Elem, FiniteEaTable, ModelExpr};
use seqea_cli::{doc, render};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Square roots refine to this grid when no exact rational root exists.
const SQRT_DENOM_BITS: u32 = 40;

#[derive(Parser)]
#[command(
    name = "seqea",
    version,
    about = "Exact-arithmetic toolkit for effect algebras and sequential products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the algebra laws of a model document
    Check {
        /// Path to a model document (JSON)
        file: PathBuf,
        /// Element-pool budget for sampled families (minimum 8)
        #[arg(long, default_value_t = 24)]
        budget: usize,
        /// Seed for the deterministic sampler
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Enumerate every sequential product (or effect-monoid product) on a
    /// finite table
    Search {
        /// Path to a model document (JSON); must be finite or boolean
        file: PathBuf,
        /// Which axiom set the products must satisfy
        #[arg(long, value_enum, default_value_t = AxiomsArg::Sea)]
        axioms: AxiomsArg,
        /// Stop after this many solutions
        #[arg(long)]
        max: Option<usize>,
        /// Quotient the solutions by the table's symmetries
        #[arg(long)]
        canonical: bool,
    },
    /// Split a model into boolean, convex, and purely-a-convex blocks
    Decompose {
        /// Path to a model document (JSON)
        file: PathBuf,
    },
    /// Run one derived operation on an element of the model
    Analyze {
        /// Path to a model document (JSON)
        file: PathBuf,
        /// The operation to run
        #[arg(long, value_enum)]
        op: OpArg,
        /// The element, as JSON (e.g. '{"rat":"3/4"}'); not needed for
        /// `center`
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AxiomsArg {
    /// Sequential-product axioms
    Sea,
    /// Total biadditive associative unital product
    Monoid,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Floor,
    Sqrt,
    Halves,
    Commutant,
    Center,
    Bicommutant,
}

impl OpArg {
    fn name(self) -> &'static str {
        match self {
            OpArg::Floor => "floor",
            OpArg::Sqrt => "sqrt",
            OpArg::Halves => "halves",
            OpArg::Commutant => "commutant",
            OpArg::Center => "center",
            OpArg::Bicommutant => "bicommutant",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let code = match cli.command {
        Command::Check { file, budget, seed } => cmd_check(&file, budget, seed),
        Command::Search { file, axioms, max, canonical } => {
            cmd_search(&file, axioms, max, canonical)
        }
        Command::Decompose { file } => cmd_decompose(&file),
        Command::Analyze { file, op, element } => cmd_analyze(&file, op, element.as_deref()),
    };
    eprintln!("elapsed: {:.3?}", start.elapsed());
    ExitCode::from(code)
}

/// Usage/parse/unsupported failures: message to stderr, exit 2.
fn refuse(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    2
}

fn load_model(path: &Path) -> Result<ModelExpr, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    doc::parse_document(&text).map_err(|e| e.to_string())
}

fn header(command: &str, path: &Path, m: &ModelExpr) {
    println!("command: {command}");
    println!("input: {}", path.display());
    println!("model: {}", render::model_brief(m));
}

fn cmd_check(path: &Path, budget: usize, seed: u64) -> u8 {
    let m = match load_model(path) {
        Ok(m) => m,
        Err(e) => return refuse(e),
    };
    header("check", path, &m);
    println!("budget: {budget}");
    println!("seed: {seed}");

    let cfg = SeaCheckConfig::with_budget(budget, seed);
    let pool = match cfg.elements(&m) {
        Ok(p) => p,
        Err(e) => return refuse(e),
    };
    println!("pool: {} elements", pool.len());

    let ea = match check_ea_axioms_on(&m, &pool) {
        Ok(r) => r,
        Err(e) => return refuse(e),
    };
    println!("{}", render::report_line("effect-algebra laws", &ea));
    print!("{}", render::violation_lines(&ea));

    let mut all_passed = ea.passed();
    if m.has_product() {
        let sea = match check_sea_axioms(&m, &cfg) {
            Ok(r) => r,
            Err(e) => return refuse(e),
        };
        println!("{}", render::report_line("sequential-product laws", &sea));
        print!("{}", render::violation_lines(&sea));
        print!("{}", render::note_lines(&sea));
        all_passed &= sea.passed();

        // Classification only: a valid sequential product need not be an
        // effect monoid (additivity in the first argument can fail), so
        // this never affects the exit status.
        match check_effect_monoid(&m, &cfg) {
            Ok(monoid) => {
                println!("effect monoid: {}", render::yes_no(monoid.is_effect_monoid()));
                println!("  commutative: {}", render::yes_no(monoid.commutative));
                println!("  zero-divisor-free: {}", render::yes_no(monoid.zero_divisor_free));
                println!(
                    "  vanishing products symmetric: {}",
                    render::yes_no(monoid.s3_bridge_holds)
                );
            }
            Err(e) => return refuse(e),
        }
    } else {
        println!("sequential-product laws: skipped (no product attached)");
    }

    if all_passed {
        println!("status: pass");
        0
    } else {
        println!("status: FAIL");
        1
    }
}

fn cmd_search(path: &Path, axioms: AxiomsArg, max: Option<usize>, canonical: bool) -> u8 {
    let m = match load_model(path) {
        Ok(m) => m,
        Err(e) => return refuse(e),
    };
    let table = match &m {
        ModelExpr::Finite { table, .. } => table.clone(),
        ModelExpr::Boolean { atoms } => FiniteEaTable::boolean(*atoms),
        other => {
            return refuse(format!(
                "search requires a finite model, got {}",
                render::model_brief(other)
            ))
        }
    };
    header("search", path, &m);
    println!(
        "axioms: {}",
        match axioms {
            AxiomsArg::Sea => "sea",
            AxiomsArg::Monoid => "monoid",
        }
    );
    println!("table: {} elements", table.size());

    let mut problem = SearchProblem::new(
        table,
        match axioms {
            AxiomsArg::Sea => AxiomSet::SeaS1S5,
            AxiomsArg::Monoid => AxiomSet::EffectMonoid,
        },
    );
    problem.max_solutions = max;
    problem.canonicalize = canonical;

    let (result, zero_symmetry) = match axioms {
        AxiomsArg::Sea => match search_products(&problem) {
            Ok(r) => (r, None),
            Err(e) => return refuse(e),
        },
        AxiomsArg::Monoid => match search_effect_monoids(&problem) {
            Ok(r) => (r.search, Some(r.zero_symmetry)),
            Err(e) => return refuse(e),
        },
    };

    println!("boolean: {}", render::yes_no(result.boolean_verdict.is_boolean()));
    let is_meet = result.solutions.len() == 1
        && result.boolean_verdict.meet_table.as_deref() == Some(result.solutions[0].as_slice());
    if is_meet {
        println!("solutions: 1 (meet)");
    } else {
        println!("solutions: {}", result.solutions.len());
    }
    let n = problem.ea.size();
    for (i, sol) in result.solutions.iter().enumerate() {
        println!("solution {}:", i + 1);
        print!("{}", render::product_rows(sol, n));
        if let Some(zs) = &zero_symmetry {
            println!("  vanishing products symmetric: {}", render::yes_no(zs[i]));
        }
    }
    println!("nodes: {}", result.node_count);
    println!("pruned: {}", result.pruned_count);
    println!("rejected: {}", result.rejected_count);
    println!("truncated: {}", render::yes_no(result.truncated));
    println!("status: pass");
    0
}

fn cmd_decompose(path: &Path) -> u8 {
    let m = match load_model(path) {
        Ok(m) => m,
        Err(e) => return refuse(e),
    };
    header("decompose", path, &m);
    let cfg = SeaCheckConfig::with_budget(24, 42);
    let report = match decompose(&m, &cfg) {
        Ok(r) => r,
        Err(e) => return refuse(e),
    };
    if report.analyzed != m {
        println!("analyzed as: {}", render::model_brief(&report.analyzed));
    }
    println!(
        "boolean block: {} (indicator: {})",
        render::model_brief(&report.boolean_block),
        report.p_bool
    );
    println!(
        "convex block: {} (indicator: {})",
        render::model_brief(&report.convex_block),
        report.p_conv
    );
    println!(
        "a-convex block: {} (indicator: {})",
        render::model_brief(&report.aconvex_block),
        report.p_ac
    );
    println!("evidence:");
    for line in &report.evidence {
        println!("  - {line}");
    }
    println!("{}", render::report_line("block checks", &report.report));
    print!("{}", render::violation_lines(&report.report));
    if report.passed() {
        println!("status: pass");
        0
    } else {
        println!("status: FAIL");
        1
    }
}

fn cmd_analyze(path: &Path, op: OpArg, element: Option<&str>) -> u8 {
    let m = match load_model(path) {
        Ok(m) => m,
        Err(e) => return refuse(e),
    };
    let cfg = SeaCheckConfig::with_budget(24, 42);

    // Parse and canonicalize the element up front where the operation
    // needs one; `center` works on the model alone.
    let elem: Option<Elem> = match (op, element) {
        (OpArg::Center, _) => None,
        (_, None) => {
            return refuse(format!("--op {} needs --element", op.name()));
        }
        (_, Some(text)) => match doc::parse_element_text(text) {
            Ok(e) => match m.want(&e) {
                Ok(e) => Some(e),
                Err(e) => return refuse(e),
            },
            Err(e) => return refuse(e),
        },
    };

    header("analyze", path, &m);
    println!("op: {}", op.name());
    if let Some(e) = &elem {
        println!("element: {e}");
    }

    match op {
        OpArg::Floor => {
            let e = elem.expect("floor needs an element");
            match floor(&m, &e) {
                Ok(f) => println!("floor: {f}"),
                Err(err) => return refuse(err),
            }
        }
        OpArg::Sqrt => {
            let e = elem.expect("sqrt needs an element");
            match sqrt(&m, &e, SQRT_DENOM_BITS) {
                Ok(r) => {
                    let tag = if r.exact {
                        "exact".to_string()
                    } else {
                        format!("approximate on the 2^-{SQRT_DENOM_BITS} grid")
                    };
                    println!("sqrt: {} ({tag})", r.value);
                }
                Err(err) => return refuse(err),
            }
        }
        OpArg::Halves => {
            let e = elem.expect("halves needs an element");
            match halves_of(&m, &e) {
                Ok(hs) => {
                    println!("halves: {}", hs.len());
                    for h in hs {
                        println!("  - {h}");
                    }
                }
                Err(err) => return refuse(err),
            }
        }
        OpArg::Center => match center(&m, &cfg) {
            Ok(c) => print!("{}", render::closure_block("center", &c)),
            Err(err) => return refuse(err),
        },
        OpArg::Commutant => {
            let e = elem.expect("commutant needs a generator");
            match commutant(&m, std::slice::from_ref(&e), &cfg) {
                Ok(c) => print!("{}", render::closure_block("commutant", &c)),
                Err(err) => return refuse(err),
            }
        }
        OpArg::Bicommutant => {
            let e = elem.expect("bicommutant needs a generator");
            match bicommutant(&m, std::slice::from_ref(&e), &cfg) {
                Ok(c) => print!("{}", render::closure_block("bicommutant", &c)),
                Err(err) => return refuse(err),
            }
        }
    }
    println!("status: pass");
    0
}
