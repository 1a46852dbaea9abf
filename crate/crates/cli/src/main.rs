use clap::{Args, Parser, Subcommand, ValueEnum};
use legsat::atlas;
use legsat::dga::build_default;
use legsat::diagram::moves::{applicable_moves, apply_move};
use legsat::diagram::patterns::{basic_product, full_twist, half_twist, zigzag};
use legsat::diagram::text::{from_json, front_to_json, front_to_text, parse, pattern_to_json};
use legsat::pathmatrix::gf2::two_dim_classes;
use legsat::pathmatrix::ncpoly::NCMatrix;
use legsat::pathmatrix::{crossing_name, path_matrix, path_matrix_inverse};
use legsat::reps::{eta_from_dims, find_augmentations, find_representation, Outcome, TConstraint, DEFAULT_TIMEOUT};
use legsat::ruling::{enumerate_restricted, polynomial_restricted, Mode};
use legsat::satellite::satellite;
use legsat::verify::{self, TheoremReport};
use legsat::{AnnulusPattern, Diagram, PlatFront};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_SOFTWARE: u8 = 70;

#[derive(Parser)]
#[command(name = "legsat", version, about = "Legendrian fronts: rulings, satellites, path matrices, DGAs and their representations")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Grading {
    /// Grading modulus p; must divide 2r.
    #[arg(long, default_value_t = 1)]
    p: u32,
}

#[derive(Args, Clone)]
struct Search {
    /// Time budget per search in seconds (default LEGSAT_TIMEOUT or 60).
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RulingMode {
    Normal,
    Generalized,
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum TClass {
    I,
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Thurston-Bennequin number.
    Tb { input: String },
    /// Rotation number.
    Rot { input: String },
    /// Ruling polynomial of a front or pattern, or the reduced polynomial of a satellite.
    RulingPoly {
        input: String,
        #[command(flatten)]
        grading: Grading,
        #[arg(long, value_enum, default_value = "normal")]
        mode: RulingMode,
        /// Pattern L for `--mode reduced` (computes the reduced polynomial of S(K, L)).
        #[arg(long)]
        pattern: Option<String>,
        /// Also list the rulings.
        #[arg(long)]
        list: bool,
    },
    /// Satellite S(K, L) as a front.
    Satellite {
        input: String,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        grading: Grading,
    },
    /// Path matrix of a cusp-free pattern.
    PathMatrix {
        pattern: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Chekanov-Eliashberg DGA over Z/2 graded mod 2r.
    Dga { input: String },
    /// Augmentations graded mod p.
    Augs {
        input: String,
        #[command(flatten)]
        grading: Grading,
    },
    /// Search for a finite dimensional representation.
    Reps {
        input: String,
        #[command(flatten)]
        grading: Grading,
        /// Graded dimension n(0),n(1),... (a single number means all in degree 0).
        #[arg(long, default_value = "1")]
        dim: String,
        /// Conjugacy class of the image of t (dimension 2).
        #[arg(long, value_enum, ignore_case = true, conflicts_with = "t_form")]
        t_class: Option<TClass>,
        /// Require t = M_L U for this pattern L.
        #[arg(long)]
        t_form: Option<String>,
        #[command(flatten)]
        search: Search,
    },
    /// Check a theorem numerically.
    Verify {
        #[command(subcommand)]
        theorem: Theorem,
    },
    /// Shipped knots.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
}

#[derive(Subcommand)]
enum Theorem {
    /// Representations, reduced rulings of S(K, A_Λ) and rulings of S(K, tw_n) agree.
    MainResult {
        input: String,
        /// Graded dimension n(0),n(1),...
        #[arg(long, default_value = "1")]
        n: String,
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        search: Search,
    },
    /// R of S(K, L) as a sum over generalized rulings of L.
    BijFormula { input: String, #[arg(long)] pattern: String, #[command(flatten)] grading: Grading },
    /// R of S(K, L) dominates R_L.
    Estimate { input: String, #[arg(long)] pattern: String, #[command(flatten)] grading: Grading },
    /// A stabilized K is not L-compatible.
    Stab { input: String, #[arg(long)] pattern: String, #[command(flatten)] grading: Grading },
    /// Whether K is L-compatible.
    Compatibility { input: String, #[arg(long)] pattern: String, #[command(flatten)] grading: Grading },
    /// R of S(K, A_λ) from reduced polynomials (p = 1).
    AFormula {
        input: String,
        /// Block sizes λ.
        #[arg(long)]
        lambda: String,
    },
    /// A(1,1)- and A(2)-compatibility against 2-dimensional representations.
    #[command(name = "2dim")]
    TwoDim {
        input: String,
        #[command(flatten)]
        grading: Grading,
        #[command(flatten)]
        search: Search,
    },
    /// R of K and the reduced polynomial of S(K, L) along random Legendrian moves.
    LInvariance {
        input: String,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        grading: Grading,
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum AtlasAction {
    /// Names and knot types.
    List,
    /// Front and golden invariants of one entry.
    Show { name: String },
    /// Rebuild every entry and compare with the shipped files.
    Check,
    /// Write the front files and golden.json into a directory.
    Regenerate { dir: String },
}

enum Failure {
    Usage(String),
    NoInput(String),
    Data(legsat::Error),
}

impl From<legsat::Error> for Failure {
    fn from(e: legsat::Error) -> Self {
        Failure::Data(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

/// Text of `atlas:<name>`, `-` (stdin), a file, or an inline front.
fn read_source(spec: &str) -> Result<String> {
    if let Some(name) = spec.strip_prefix("atlas:") {
        return atlas::front_file(name).map(str::to_string).ok_or_else(|| Failure::NoInput(format!("no atlas entry `{name}`")));
    }
    if spec == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::NoInput(format!("stdin: {e}")));
    }
    if Path::new(spec).is_file() {
        return std::fs::read_to_string(spec).map_err(|e| Failure::NoInput(format!("{spec}: {e}")));
    }
    if spec.contains(';') || spec.contains(':') {
        return Ok(spec.to_string());
    }
    Err(Failure::NoInput(format!("{spec}: no such file")))
}

fn read_diagram(spec: &str) -> Result<Diagram> {
    let text = read_source(spec)?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Data(legsat::Error::Parse { at: 0, msg: e.to_string() }))?;
        return Ok(from_json(&v)?);
    }
    Ok(parse(&text)?)
}

fn read_front(spec: &str) -> Result<PlatFront> {
    match read_diagram(spec)? {
        Diagram::Plat(f) => Ok(f),
        Diagram::Pattern(_) => Err(Failure::Usage(format!("{spec}: expected a front in the plane, got a pattern"))),
    }
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("`{s}` is not a list of numbers")))).collect()
}

/// Named patterns: A(2,1), A(2@0,1@1) (block size @ degree), tw(2,1),
/// delta(n), zig(down) and zig(up). Anything else is read as a pattern file
/// or text.
fn read_pattern(spec: &str) -> Result<AnnulusPattern> {
    let inner = |prefix: &str| spec.strip_prefix(prefix).and_then(|s| s.strip_suffix(')'));
    if let Some(args) = inner("A(") {
        let blocks = args
            .split(',')
            .map(|b| {
                let (size, degree) = b.split_once('@').unwrap_or((b, "0"));
                match (size.trim().parse(), degree.trim().parse()) {
                    (Ok(s), Ok(d)) => Ok((s, d)),
                    _ => Err(Failure::Usage(format!("bad block `{b}` in {spec}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(basic_product(&blocks)?);
    }
    if let Some(args) = inner("tw(") {
        return Ok(full_twist(&numbers(args)?)?);
    }
    if let Some(args) = inner("delta(") {
        return Ok(half_twist(numbers(args)?[0])?);
    }
    match spec {
        "zig(down)" => return Ok(zigzag(true)),
        "zig(up)" => return Ok(zigzag(false)),
        _ => {}
    }
    match read_diagram(spec)? {
        Diagram::Pattern(p) => Ok(p),
        Diagram::Plat(_) => Err(Failure::Usage(format!("{spec}: expected a pattern"))),
    }
}

fn timeout(search: &Search) -> Result<Duration> {
    let secs = match search.timeout {
        Some(s) => Some(s),
        None => match std::env::var("LEGSAT_TIMEOUT") {
            Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("LEGSAT_TIMEOUT=`{v}` is not a number")))?),
            Err(_) => None,
        },
    };
    match secs {
        Some(s) if s.is_finite() && s > 0.0 => Ok(Duration::from_secs_f64(s)),
        Some(s) => Err(Failure::Usage(format!("timeout {s} must be positive"))),
        None => Ok(DEFAULT_TIMEOUT),
    }
}

fn matrix_text(m: &NCMatrix) -> String {
    m.to_string_with(&crossing_name)
}

fn matrix_json(m: &NCMatrix) -> Value {
    let n = m.size();
    json!((0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).to_string_with(&crossing_name)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, code: 0 }
    }
}

fn report(r: TheoremReport) -> Output {
    Output { text: r.summary(), json: r.to_json(), code: r.verdict.exit_code() as u8 }
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Tb { input } => {
            let tb = read_front(&input)?.thurston_bennequin();
            Output::ok(tb.to_string(), json!({ "tb": tb }))
        }
        Command::Rot { input } => {
            let f = read_front(&input)?;
            let r = f.rotation_number();
            Output::ok(r.to_string(), json!({ "r": r, "components": f.rotation_numbers() }))
        }
        Command::RulingPoly { input, grading, mode, pattern, list } => {
            let p = grading.p;
            let (graded, forbidden) = match (mode, pattern) {
                (RulingMode::Reduced, Some(l)) => {
                    let s = satellite(&read_front(&input)?, &read_pattern(&l)?, p)?;
                    let forbidden = s.left_cusp_crossings();
                    (s.graded, forbidden)
                }
                (RulingMode::Reduced, None) => return Err(Failure::Usage("--mode reduced needs --pattern".into())),
                (_, Some(_)) => return Err(Failure::Usage("--pattern is only used with --mode reduced".into())),
                (_, None) => match read_diagram(&input)? {
                    Diagram::Plat(f) => (f.graded(p)?, Vec::new()),
                    Diagram::Pattern(l) => (l.graded(p)?, Vec::new()),
                },
            };
            let m = if matches!(mode, RulingMode::Generalized) { Mode::Generalized } else { Mode::Normal };
            let poly = polynomial_restricted(&graded, m, &forbidden);
            let mut text = poly.to_string();
            let mut out = json!({ "polynomial": poly.to_json(), "text": poly.to_string(), "count": poly.count() });
            if list {
                let rulings = enumerate_restricted(&graded, m, &forbidden);
                out["rulings"] = json!(rulings.iter().map(|r| r.to_json(&graded)).collect::<Vec<_>>());
                for r in &rulings {
                    text.push('\n');
                    text.push_str(&r.to_json(&graded).to_string());
                }
            }
            Output::ok(text, out)
        }
        Command::Satellite { input, pattern, grading } => {
            let s = satellite(&read_front(&input)?, &read_pattern(&pattern)?, grading.p)?;
            Output::ok(front_to_text(&s.front), s.to_json())
        }
        Command::PathMatrix { pattern, inverse } => {
            let l = read_pattern(&pattern)?;
            let m = if inverse { path_matrix_inverse(&l)? } else { path_matrix(&l)? };
            Output::ok(matrix_text(&m), json!({ "pattern": pattern_to_json(&l), "inverse": inverse, "matrix": matrix_json(&m) }))
        }
        Command::Dga { input } => {
            let dga = build_default(&read_front(&input)?)?;
            Output::ok(dga.to_text().trim_end(), dga.to_json())
        }
        Command::Augs { input, grading } => {
            let dga = build_default(&read_front(&input)?)?;
            let augs = find_augmentations(&dga, grading.p)?;
            let mut text = format!("{} augmentations", augs.len());
            for a in &augs {
                let ones: Vec<&str> =
                    a.values.iter().zip(&dga.generators).filter(|(v, _)| **v).map(|(_, g)| g.name.as_str()).collect();
                text.push_str(&format!("\n{{{}}}", ones.join(", ")));
            }
            Output::ok(text, json!({ "count": augs.len(), "augmentations": augs.iter().map(|a| a.to_json(&dga)).collect::<Vec<_>>() }))
        }
        Command::Reps { input, grading, dim, t_class, t_form, search } => {
            let dims = numbers(&dim)?;
            let eta = eta_from_dims(&dims);
            let tc = match (t_class, t_form) {
                (Some(c), _) => {
                    if eta.len() != 2 {
                        return Err(Failure::Usage("--t-class needs dimension 2".into()));
                    }
                    let [(_, i), (_, a), (_, b)] = two_dim_classes();
                    TConstraint::ConjClass(match c {
                        TClass::I => i,
                        TClass::A => a,
                        TClass::B => b,
                    })
                }
                (None, Some(l)) => TConstraint::PathForm(read_pattern(&l)?),
                (None, None) => TConstraint::Any,
            };
            let dga = build_default(&read_front(&input)?)?;
            let outcome = find_representation(&dga, grading.p, &eta, &tc, timeout(&search)?)?;
            let status = outcome.label();
            match outcome {
                Outcome::Found(rep) => Output::ok(rep.to_text(&dga).trim_end(), json!({ "status": "found", "representation": rep.to_json(&dga) })),
                Outcome::None => Output::ok(status, json!({ "status": "none" })),
                Outcome::Unknown => Output { text: status.into(), json: json!({ "status": "unknown" }), code: 2 },
            }
        }
        Command::Verify { theorem } => report(run_theorem(theorem)?),
        Command::Atlas { action } => run_atlas(action)?,
    })
}

fn run_theorem(t: Theorem) -> Result<TheoremReport> {
    Ok(match t {
        Theorem::MainResult { input, n, grading, search } => {
            verify::check_main_result(&read_front(&input)?, grading.p, &numbers(&n)?, timeout(&search)?)?
        }
        Theorem::BijFormula { input, pattern, grading } => verify::check_bij_formula(&read_front(&input)?, &read_pattern(&pattern)?, grading.p)?,
        Theorem::Estimate { input, pattern, grading } => verify::check_estimate(&read_front(&input)?, &read_pattern(&pattern)?, grading.p)?,
        Theorem::Stab { input, pattern, grading } => verify::check_stab(&read_front(&input)?, &read_pattern(&pattern)?, grading.p)?,
        Theorem::Compatibility { input, pattern, grading } => {
            verify::check_compatibility(&read_front(&input)?, &read_pattern(&pattern)?, grading.p)?
        }
        Theorem::AFormula { input, lambda } => verify::check_a_formula(&read_front(&input)?, &numbers(&lambda)?)?,
        Theorem::TwoDim { input, grading, search } => verify::check_2dim(&read_front(&input)?, grading.p, timeout(&search)?)?,
        Theorem::LInvariance { input, pattern, grading, moves, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = read_front(&input)?;
            let mut fronts = vec![f.clone()];
            for _ in 0..moves {
                let all = applicable_moves(&f);
                f = apply_move(&f, all[rng.gen_range(0..all.len())])?;
                fronts.push(f.clone());
            }
            verify::check_l_invariance(&fronts, &read_pattern(&pattern)?, grading.p)?
        }
    })
}

fn run_atlas(action: AtlasAction) -> Result<Output> {
    Ok(match action {
        AtlasAction::List => {
            let text = atlas::ENTRIES.iter().map(|(n, t)| format!("{n:<24}{t}")).collect::<Vec<_>>().join("\n");
            let json = json!(atlas::ENTRIES.iter().map(|(n, t)| json!({ "name": n, "knot": t })).collect::<Vec<_>>());
            Output::ok(text, json)
        }
        AtlasAction::Show { name } => {
            let e = atlas::load(&name).map_err(|_| Failure::NoInput(format!("no atlas entry `{name}`")))?;
            let text = format!(
                "{}: {}\nfront: {}\ntb = {}, r = {}, R1 = {}",
                e.name,
                e.knot_type,
                front_to_text(&e.front),
                e.tb,
                e.rotation,
                e.ruling_polynomial
            );
            let json = json!({
                "name": e.name,
                "knot": e.knot_type,
                "front": front_to_json(&e.front),
                "tb": e.tb,
                "r": e.rotation,
                "ruling_polynomial_p1": e.ruling_polynomial.to_json(),
            });
            Output::ok(text, json)
        }
        AtlasAction::Check => {
            let mut bad = Vec::new();
            for name in atlas::names() {
                let fresh = atlas::render_front_file(name)?;
                if atlas::front_file(name) != Some(fresh.as_str()) || atlas::load(name).is_err() {
                    bad.push(name);
                }
            }
            if atlas::render_golden()? != atlas::golden_file() {
                bad.push("golden.json");
            }
            let text = if bad.is_empty() { "atlas ok".to_string() } else { format!("mismatch: {}", bad.join(", ")) };
            Output { text, json: json!({ "ok": bad.is_empty(), "mismatches": bad }), code: if bad.is_empty() { 0 } else { 1 } }
        }
        AtlasAction::Regenerate { dir } => {
            let dir = Path::new(&dir);
            std::fs::create_dir_all(dir).map_err(|e| Failure::NoInput(format!("{}: {e}", dir.display())))?;
            let write = |file: String, text: String| {
                std::fs::write(dir.join(&file), text).map_err(|e| Failure::NoInput(format!("{file}: {e}")))
            };
            for name in atlas::names() {
                write(format!("{name}.front"), atlas::render_front_file(name)?)?;
            }
            write("golden.json".into(), atlas::render_golden()?)?;
            let count = atlas::names().count();
            Output::ok(format!("wrote {count} fronts and golden.json to {}", dir.display()), json!({ "fronts": count }))
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EX_USAGE } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli.command) {
        Ok(out) => {
            let text = if json { serde_json::to_string_pretty(&out.json).expect("json values serialize") } else { out.text };
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            let (msg, code) = match f {
                Failure::Usage(m) => (m, EX_USAGE),
                Failure::NoInput(m) => (m, EX_NOINPUT),
                Failure::Data(e @ legsat::Error::Internal(_)) => (e.to_string(), EX_SOFTWARE),
                Failure::Data(e) => (e.to_string(), EX_DATAERR),
            };
            eprintln!("legsat: {msg}");
            ExitCode::from(code)
        }
    }
}
