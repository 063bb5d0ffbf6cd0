use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aisemiring::algebra::{adjoin_zero, builtin, is_isomorphic, AlgebraError, BUILTIN_NAMES};
use aisemiring::deciders::{
    cross_validate, AlwaysHolds, BruteForce, CrossValidation, D2Syntactic, Decider, GeneratorConfig, S7Syntactic,
    S7ZeroSyntactic, Verdict, ZeroLift, DEFAULT_ASSIGNMENT_CAP,
};
use aisemiring::derivation::{
    search_derivation, verify_chain, AxiomSet, ChainDocument, ChainVerdict, DerivationChain, SearchBounds,
    SearchOutcome,
};
use aisemiring::terms::{delta_sets, VarSet};
use aisemiring::witness::{check_axiom_conditions, check_witness_facts, make_witness, Condition};
use aisemiring::{parse_identity, parse_term, FiniteSemiring, Identity};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Decide identities of finite ai-semirings and work with derivations.
#[derive(Debug, Parser)]
#[command(name = "aisemiring", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Read terms in commutative mode (letters within a word commute).
    #[arg(long, global = true)]
    commutative: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an identity in a semiring.
    Check {
        /// Built-in name (S7, S7_0, D2, trivial) or a semiring JSON file.
        #[arg(long)]
        semiring: String,
        /// Identity text, or a file holding it.
        #[arg(long)]
        identity: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Maximum number of assignments the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        cap: u64,
    },
    /// List the delta sets of a term.
    Delta {
        #[arg(long)]
        term: String,
    },
    /// Check the odd-cycle identity with 2n+1 variables.
    Witness {
        #[arg(long)]
        n: usize,
        /// Also run brute force over S7_0.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        oracle_cap: u64,
    },
    /// Check the structural conditions on an axiom `A == B`.
    AxiomCheck {
        #[arg(long)]
        identity: String,
    },
    /// Verify or search for derivations.
    Derive {
        #[command(subcommand)]
        action: DeriveAction,
    },
    /// Validate a semiring file.
    Validate {
        #[arg(long)]
        semiring: PathBuf,
    },
    /// Compare a syntactic decider with brute force on random identities.
    Crossval {
        #[arg(long)]
        semiring: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_words: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Compare the zero-lift of brute force over the semiring with brute
        /// force over the semiring with a zero adjoined.
        #[arg(long)]
        lift: bool,
    },
}

#[derive(Debug, Subcommand)]
enum DeriveAction {
    /// Check every step of a chain file.
    Verify {
        #[arg(long)]
        axioms: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Breadth-first search for a chain from the goal's left side to its right side.
    Search {
        #[arg(long)]
        axioms: PathBuf,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = SearchBounds::default().max_depth)]
        max_depth: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_words)]
        max_words: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_len)]
        max_len: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_image)]
        max_image: usize,
        #[arg(long, default_value_t = SearchBounds::default().max_nodes)]
        max_nodes: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Syntactic,
    Both,
}

/// A finished report: text lines, the JSON mirror, and whether the command
/// succeeded (exit 0) or reported a failure or rejection (exit 1).
struct Report {
    text: Vec<String>,
    json: Value,
    ok: bool,
}

type CmdResult = Result<Report, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("reports serialize")
                );
            } else {
                for line in &report.text {
                    println!("{line}");
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let comm = cli.commutative;
    match &cli.command {
        Command::Check {
            semiring,
            identity,
            method,
            cap,
        } => check(semiring, identity, *method, *cap, comm),
        Command::Delta { term } => delta(term, comm),
        Command::Witness { n, oracle, oracle_cap } => witness(*n, oracle.then_some(*oracle_cap)),
        Command::AxiomCheck { identity } => axiom_check(identity, comm),
        Command::Derive {
            action: DeriveAction::Verify { axioms, chain },
        } => derive_verify(axioms, chain),
        Command::Derive {
            action:
                DeriveAction::Search {
                    axioms,
                    goal,
                    max_depth,
                    max_words,
                    max_len,
                    max_image,
                    max_nodes,
                },
        } => {
            let bounds = SearchBounds {
                max_depth: *max_depth,
                max_words: *max_words,
                max_len: *max_len,
                max_image: *max_image,
                max_nodes: *max_nodes,
            };
            derive_search(axioms, goal, &bounds, comm)
        }
        Command::Validate { semiring } => validate(semiring),
        Command::Crossval {
            semiring,
            samples,
            seed,
            max_vars,
            max_words,
            max_len,
            lift,
        } => {
            let cfg = GeneratorConfig {
                samples: *samples,
                seed: *seed,
                max_vars: *max_vars,
                max_words: *max_words,
                max_len: *max_len,
                commutative: comm,
            };
            crossval(semiring, &cfg, *lift)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// The argument itself, or the contents of the file it names.
fn text_or_file(arg: &str) -> Result<String, String> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(read_file(path)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn read_identity(arg: &str, comm: bool) -> Result<Identity, String> {
    let text = text_or_file(arg)?;
    parse_identity(&text, comm).map_err(|e| format!("cannot parse identity: {e}"))
}

/// A built-in by name, or a semiring file, with a display label and the
/// built-in it is isomorphic to, if any.
fn load_semiring(arg: &str) -> Result<(FiniteSemiring, String, Option<&'static str>), String> {
    if let Some(name) = BUILTIN_NAMES.iter().find(|n| **n == arg) {
        return Ok((builtin(name).expect("built-in"), name.to_string(), Some(name)));
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(format!(
            "`{arg}` is neither a built-in ({}) nor a file",
            BUILTIN_NAMES.join(", ")
        ));
    }
    let s = FiniteSemiring::from_json(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((s.clone(), path.display().to_string(), matching_builtin(&s)))
}

fn matching_builtin(s: &FiniteSemiring) -> Option<&'static str> {
    BUILTIN_NAMES
        .iter()
        .copied()
        .find(|name| matches!(is_isomorphic(s, &builtin(name).expect("built-in")), Ok(Some(_))))
}

fn syntactic_decider(name: &str) -> Box<dyn Decider> {
    match name {
        "S7" => Box::new(S7Syntactic::default()),
        "S7_0" => Box::new(S7ZeroSyntactic::default()),
        "D2" => Box::new(D2Syntactic),
        _ => Box::new(AlwaysHolds),
    }
}

fn holds_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn verdict_text(v: &Verdict, s: &FiniteSemiring) -> String {
    let mut out = holds_word(v.holds).to_string();
    let mut detail = Vec::new();
    if let Some(w) = &v.witness {
        detail.push(format!("at {}", w.describe(s)));
    }
    if let Some(r) = &v.reason {
        detail.push(r.to_string());
    }
    if !detail.is_empty() {
        out += &format!(" ({})", detail.join("; "));
    }
    out
}

fn verdict_json(decider: &str, v: &Verdict, s: &FiniteSemiring) -> Value {
    json!({
        "decider": decider,
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|w| w.to_names(s)),
        "reason": v.reason,
    })
}

fn check(semiring: &str, identity: &str, method: Method, cap: u64, comm: bool) -> CmdResult {
    let (s, label, iso) = load_semiring(semiring)?;
    let id = read_identity(identity, comm)?;
    let mut text = vec![format!("identity: {id}"), format!("semiring: {label}")];
    let mut verdicts = Vec::new();

    if matches!(method, Method::Oracle | Method::Both) {
        let v = BruteForce::with_cap(s.clone(), cap)
            .decide(&id)
            .map_err(|e| e.to_string())?;
        text.push(format!("oracle: {}", verdict_text(&v, &s)));
        verdicts.push(("oracle".to_string(), v));
    }
    if matches!(method, Method::Syntactic | Method::Both) {
        let Some(name) = iso else {
            return Err(format!(
                "no syntactic decider for {label}: it is not isomorphic to a built-in"
            ));
        };
        let d = syntactic_decider(name);
        let v = d.decide(&id).map_err(|e| e.to_string())?;
        text.push(format!("syntactic ({}): {}", d.name(), verdict_text(&v, &s)));
        verdicts.push((d.name(), v));
    }

    let holds = verdicts[0].1.holds;
    let agree = verdicts.iter().all(|(_, v)| v.holds == holds);
    if verdicts.len() > 1 {
        text.push(if agree {
            format!("methods agree: {}", holds_word(holds))
        } else {
            "methods DISAGREE".to_string()
        });
    }
    let json = json!({
        "identity": id,
        "semiring": label,
        "verdicts": verdicts.iter().map(|(n, v)| verdict_json(n, v, &s)).collect::<Vec<_>>(),
        "agree": agree,
        "holds": agree.then_some(holds),
    });
    Ok(Report {
        text,
        json,
        ok: agree && holds,
    })
}

fn fmt_set(z: &VarSet) -> String {
    let names: Vec<&str> = z.iter().map(|v| v.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn delta(term: &str, comm: bool) -> CmdResult {
    let t = parse_term(&text_or_file(term)?, comm).map_err(|e| format!("cannot parse term: {e}"))?;
    let mut sets: Vec<VarSet> = delta_sets(&t).map_err(|e| e.to_string())?.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let line = if sets.is_empty() {
        "(none)".to_string()
    } else {
        sets.iter().map(fmt_set).collect::<Vec<_>>().join("; ")
    };
    let json = json!({ "term": t, "delta": sets });
    Ok(Report {
        text: vec![line],
        json,
        ok: true,
    })
}

fn witness(n: usize, oracle_cap: Option<u64>) -> CmdResult {
    let w = make_witness(n).map_err(|e| e.to_string())?;
    let r = check_witness_facts(&w, oracle_cap);
    let mut text = vec![format!("n = {n}: {}", r.identity)];
    for (label, outcome) in r.checks() {
        text.push(format!("  {label}: {outcome}"));
    }
    let ok = r.all_pass();
    text.push(if ok {
        "all checks pass".into()
    } else {
        "some checks FAIL".into()
    });
    let json = serde_json::to_value(&r).expect("reports serialize");
    Ok(Report { text, json, ok })
}

fn condition_line<E>(label: &str, c: &Condition<E>, show: impl Fn(&E) -> String) -> String {
    match c {
        Condition::Pass => format!("  {label}: pass"),
        Condition::Fail(e) => format!("  {label}: FAIL ({})", show(e)),
    }
}

fn axiom_check(identity: &str, comm: bool) -> CmdResult {
    let id = read_identity(identity, comm)?;
    let r = check_axiom_conditions(id.lhs(), Some(id.rhs())).map_err(|e| e.to_string())?;
    let delta: Vec<String> = r.delta.iter().map(fmt_set).collect();
    let text = vec![
        format!("A = {}", r.term),
        condition_line("(a) words of length <= 2", &r.short_words, |w| format!("`{w}`")),
        condition_line("(b) linear words", &r.linear_words, |w| format!("`{w}`")),
        condition_line("(c) no word divides another", &r.antichain, |(a, b)| {
            format!("`{a}` divides `{b}`")
        }),
        condition_line("(d) no odd cycle", &r.no_odd_cycle, |c| {
            format!("cycle {}", c.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" - "))
        }),
        format!(
            "  delta(A): {}",
            if delta.is_empty() {
                "(none)".to_string()
            } else {
                delta.join("; ")
            }
        ),
        format!("  delta covers c(A): {}", r.delta_covers_content),
        format!("  B included in A: {}", r.other_side_included.unwrap_or(false)),
    ];
    let ok = r.conditions_pass();
    let json = serde_json::to_value(&r).expect("reports serialize");
    Ok(Report { text, json, ok })
}

fn load_axioms(path: &Path) -> Result<AxiomSet, String> {
    AxiomSet::from_json(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn chain_text(chain: &DerivationChain, terms: &[aisemiring::Term]) -> Vec<String> {
    let mut text = vec![format!("  {}", terms[0])];
    for (step, t) in chain.steps.iter().zip(&terms[1..]) {
        text.push(format!("  -> {t}    [{} {}]", step.axiom, step.direction));
    }
    text
}

fn derive_verify(axioms: &Path, chain: &Path) -> CmdResult {
    let sigma = load_axioms(axioms)?;
    let doc = ChainDocument::from_json(&read_file(chain)?).map_err(|e| format!("{}: {e}", chain.display()))?;
    let chain = doc.to_chain().map_err(|e| e.to_string())?;
    match verify_chain(&chain, &sigma) {
        ChainVerdict::Accepted { terms } => {
            let n = chain.steps.len();
            let mut text = vec![format!("chain accepted ({n} step{})", if n == 1 { "" } else { "s" })];
            text.extend(chain_text(&chain, &terms));
            let json = json!({ "accepted": true, "terms": terms });
            Ok(Report { text, json, ok: true })
        }
        ChainVerdict::Rejected { index, reason } => {
            let where_ = if index == chain.steps.len() {
                "final term".to_string()
            } else {
                format!("step {index}")
            };
            let text = vec![format!("chain rejected at {where_}: {reason}")];
            let json = json!({ "accepted": false, "index": index, "reason": reason });
            Ok(Report { text, json, ok: false })
        }
    }
}

fn derive_search(axioms: &Path, goal: &str, bounds: &SearchBounds, comm: bool) -> CmdResult {
    let sigma = load_axioms(axioms)?;
    let comm = comm || sigma.iter().any(|a| a.identity.is_commutative());
    let goal = read_identity(goal, comm)?;
    match search_derivation(&sigma, &goal, bounds) {
        SearchOutcome::Found(chain) => {
            let n = chain.steps.len();
            let mut text = vec![format!(
                "found a derivation of {goal} in {n} step{}",
                if n == 1 { "" } else { "s" }
            )];
            let terms = match verify_chain(&chain, &sigma) {
                ChainVerdict::Accepted { terms } => terms,
                ChainVerdict::Rejected { reason, .. } => {
                    return Err(format!("search produced an invalid chain: {reason}"))
                }
            };
            text.extend(chain_text(&chain, &terms));
            let json = json!({ "found": true, "goal": goal, "chain": chain.to_document() });
            Ok(Report { text, json, ok: true })
        }
        SearchOutcome::NotFound { explored } => {
            let text = vec![format!(
                "no derivation of {goal}: all {explored} terms reachable within the bounds were explored"
            )];
            let json =
                json!({ "found": false, "goal": goal, "complete": true, "explored": explored, "bounds": bounds });
            Ok(Report { text, json, ok: false })
        }
        SearchOutcome::Exhausted { bounds: hit, explored } => {
            let names: Vec<String> = hit.iter().map(ToString::to_string).collect();
            let text = vec![format!(
                "no derivation of {goal} found within the bounds after exploring {explored} terms; limits reached: {}",
                names.join(", ")
            )];
            let json = json!({
                "found": false,
                "goal": goal,
                "complete": false,
                "explored": explored,
                "bounds": bounds,
                "limits_reached": hit,
            });
            Ok(Report { text, json, ok: false })
        }
    }
}

fn validate(path: &Path) -> CmdResult {
    match FiniteSemiring::from_json(&read_file(path)?) {
        Ok(s) => {
            let iso = matching_builtin(&s);
            let mut text = vec![format!(
                "{}: valid ai-semiring with elements {}",
                path.display(),
                s.elements().join(", ")
            )];
            if let Some(name) = iso {
                text.push(format!("isomorphic to {name}"));
            }
            let json = json!({ "valid": true, "elements": s.elements(), "isomorphic_to": iso });
            Ok(Report { text, json, ok: true })
        }
        Err(AlgebraError::Axiom(v)) => {
            let text = vec![format!("{}: not an ai-semiring: {v}", path.display())];
            let json = json!({ "valid": false, "violation": v });
            Ok(Report { text, json, ok: false })
        }
        Err(e) => Err(format!("{}: {e}", path.display())),
    }
}

fn fresh_zero_name(s: &FiniteSemiring) -> String {
    std::iter::once("∞".to_string())
        .chain((1..).map(|i| format!("∞{i}")))
        .find(|n| s.index_of(n).is_none())
        .expect("unbounded supply of names")
}

fn crossval(semiring: &str, cfg: &GeneratorConfig, lift: bool) -> CmdResult {
    let (s, label, iso) = load_semiring(semiring)?;
    let (report, target): (CrossValidation, String) = if lift {
        let lifted = adjoin_zero(&s, &fresh_zero_name(&s)).map_err(|e| e.to_string())?;
        let d = ZeroLift::new(BruteForce::new(s.clone()));
        (cross_validate(&lifted, &d, cfg), format!("{label} with zero adjoined"))
    } else {
        let Some(name) = iso else {
            return Err(format!(
                "no syntactic decider for {label}: it is not isomorphic to a built-in"
            ));
        };
        (cross_validate(&s, syntactic_decider(name).as_ref(), cfg), label)
    };

    let mut text = vec![
        format!("{} vs {} on {target}", report.first, report.second),
        format!(
            "samples: {} (seed {}, at most {} vars, {} words, length {})",
            cfg.samples, cfg.seed, cfg.max_vars, cfg.max_words, cfg.max_len
        ),
        format!("both hold: {}", report.both_hold),
        format!("disagreements: {}", report.disagreements.len()),
    ];
    for d in &report.disagreements {
        text.push(format!(
            "  {}: {} {}, {} {}",
            d.identity, report.first, d.first, report.second, d.second
        ));
    }
    if !report.errors.is_empty() {
        text.push(format!("errors: {}", report.errors.len()));
        text.extend(report.errors.iter().map(|e| format!("  {e}")));
    }
    let ok = report.agrees();
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Report { text, json, ok })
}
