//! Deciding identities in finite ai-semirings.
//!
//! [`BruteForce`] evaluates an identity under every assignment and works for
//! any [`FiniteSemiring`]. The syntactic deciders work on the words alone:
//!
//! * [`D2Syntactic`]: `u ≈ u + q` holds in D₂ iff some word of `u` has
//!   content inside `c(q)`.
//! * [`S7Syntactic`]: `u ≈ v` holds in S₇ iff `c(u) = c(v)` and
//!   `δ(u) = δ(v)`.
//! * [`ZeroLift`]: `u ≈ u + q` holds in S⁰ iff `D_q(u)` is nonempty and
//!   `D_q(u) ≈ D_q(u) + q` holds in S, for any decider of S.
//! * [`S7ZeroSyntactic`]: the S⁰ criterion specialized to S₇.
//!
//! The component-wise deciders handle a general `u ≈ v` through
//! [`Identity::decompose`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{ElemId, FiniteSemiring};
use crate::terms::{
    content_of_words, delta_sets_capped, filter_content_subset, Assignment, Component, Identity, Term, TermError, Var,
    VarSet, Word, DEFAULT_DELTA_CAP,
};

/// Default bound on `|S|^k` for brute force.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error("brute force needs {needed} assignments, above the cap of {cap}")]
    AssignmentCap { needed: String, cap: u64 },
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lhs,
    Rhs,
}

/// Why a decider rejected an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    /// Sides evaluate differently under the verdict's witness.
    Counterexample {
        lhs_value: String,
        rhs_value: String,
    },
    ContentMismatch {
        lhs_only: VarSet,
        rhs_only: VarSet,
    },
    /// `separating` lies in δ of `side` and not in δ of the other side.
    DeltaMismatch {
        separating: VarSet,
        side: Side,
    },
    Component {
        index: usize,
        component: Identity,
        failure: ComponentFailure,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum ComponentFailure {
    /// No word of `u` has content inside `c(q)`.
    NoCoveringWord,
    /// `D_q(u)` is empty.
    EmptyFilter,
    /// `c(D_q(u)) ≠ c(q)`.
    FilterContent {
        filter_content: VarSet,
        added_content: VarSet,
    },
    /// `separating` is in exactly one of `δ(D_q(u))` and `δ(D_q(u) + q)`.
    FilterDelta { separating: VarSet },
    /// The base algebra rejects `D_q(u) ≈ D_q(u) + q`.
    Base {
        reduced: Identity,
        reason: Option<Box<Reason>>,
    },
}

pub(crate) fn fmt_vars(vars: &VarSet) -> String {
    let names: Vec<&str> = vars.iter().map(Var::as_str).collect();
    format!("{{{}}}", names.join(", "))
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Counterexample { lhs_value, rhs_value } => {
                write!(f, "lhs evaluates to {lhs_value}, rhs evaluates to {rhs_value}")
            }
            Reason::ContentMismatch { lhs_only, rhs_only } => write!(
                f,
                "contents differ: only in lhs {}, only in rhs {}",
                fmt_vars(lhs_only),
                fmt_vars(rhs_only)
            ),
            Reason::DeltaMismatch { separating, side } => {
                let (here, there) = match side {
                    Side::Lhs => ("lhs", "rhs"),
                    Side::Rhs => ("rhs", "lhs"),
                };
                write!(
                    f,
                    "delta sets differ: {} is in delta({here}) but not delta({there})",
                    fmt_vars(separating)
                )
            }
            Reason::Component {
                index,
                component,
                failure,
            } => {
                write!(f, "component {index} `{component}` fails: {failure}")
            }
        }
    }
}

impl fmt::Display for ComponentFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentFailure::NoCoveringWord => f.write_str("no word of u has content inside c(q)"),
            ComponentFailure::EmptyFilter => f.write_str("D_q(u) is empty"),
            ComponentFailure::FilterContent {
                filter_content,
                added_content,
            } => write!(
                f,
                "c(D_q(u)) = {} differs from c(q) = {}",
                fmt_vars(filter_content),
                fmt_vars(added_content)
            ),
            ComponentFailure::FilterDelta { separating } => write!(
                f,
                "delta(D_q(u)) and delta(D_q(u) + q) differ at {}",
                fmt_vars(separating)
            ),
            ComponentFailure::Base { reduced, reason } => {
                write!(f, "base algebra rejects `{reduced}`")?;
                if let Some(r) = reason {
                    write!(f, " ({r})")?;
                }
                Ok(())
            }
        }
    }
}

/// Outcome of deciding one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// A falsifying assignment, from the brute-force oracle only.
    pub witness: Option<Assignment>,
    pub reason: Option<Reason>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
            reason: None,
        }
    }

    pub fn fails(reason: Reason) -> Self {
        Verdict {
            holds: false,
            witness: None,
            reason: Some(reason),
        }
    }
}

pub trait Decider {
    fn name(&self) -> String;
    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError>;
}

impl<D: Decider + ?Sized> Decider for &D {
    fn name(&self) -> String {
        (**self).name()
    }
    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        (**self).decide(id)
    }
}

impl<D: Decider + ?Sized> Decider for Box<D> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        (**self).decide(id)
    }
}

/// Evaluates both sides under every assignment of `c(id)` into the semiring.
///
/// Assignments are enumerated as a mixed-radix counter over the variables
/// sorted by name, the last variable varying fastest and digits following
/// carrier order, so the reported witness is the first falsifying one in
/// that order.
#[derive(Debug, Clone)]
pub struct BruteForce {
    semiring: FiniteSemiring,
    cap: u64,
}

impl BruteForce {
    pub fn new(semiring: FiniteSemiring) -> Self {
        Self::with_cap(semiring, DEFAULT_ASSIGNMENT_CAP)
    }

    pub fn with_cap(semiring: FiniteSemiring, cap: u64) -> Self {
        BruteForce { semiring, cap }
    }

    pub fn semiring(&self) -> &FiniteSemiring {
        &self.semiring
    }

    /// `|S|^k`, or `None` on overflow.
    pub fn assignment_count(&self, vars: usize) -> Option<u128> {
        (self.semiring.size() as u128).checked_pow(u32::try_from(vars).ok()?)
    }
}

impl Decider for BruteForce {
    fn name(&self) -> String {
        "oracle".into()
    }

    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        let s = &self.semiring;
        let vars: Vec<Var> = id.content().into_iter().collect();
        let count = self.assignment_count(vars.len());
        if count.is_none_or(|c| c > self.cap as u128) {
            let needed = match count {
                Some(c) => c.to_string(),
                None => format!("{}^{}", s.size(), vars.len()),
            };
            return Err(DeciderError::AssignmentCap { needed, cap: self.cap });
        }

        let compile = |t: &Term| -> Vec<Vec<usize>> {
            t.words()
                .iter()
                .map(|w| {
                    w.letters()
                        .iter()
                        .map(|l| vars.binary_search(l).expect("variable is in the content"))
                        .collect()
                })
                .collect()
        };
        let lhs = compile(id.lhs());
        let rhs = compile(id.rhs());
        let eval = |term: &[Vec<usize>], digits: &[ElemId]| -> ElemId {
            let word = |w: &[usize]| w[1..].iter().fold(digits[w[0]], |acc, &i| s.mul(acc, digits[i]));
            term[1..].iter().fold(word(&term[0]), |acc, w| s.add(acc, word(w)))
        };

        let n = s.size();
        let mut digits = vec![0 as ElemId; vars.len()];
        loop {
            let (l, r) = (eval(&lhs, &digits), eval(&rhs, &digits));
            if l != r {
                let witness = vars.iter().cloned().zip(digits.iter().copied()).collect();
                return Ok(Verdict {
                    holds: false,
                    witness: Some(witness),
                    reason: Some(Reason::Counterexample {
                        lhs_value: s.name(l).into(),
                        rhs_value: s.name(r).into(),
                    }),
                });
            }
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return Ok(Verdict::holds());
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < n {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

pub fn holds_bruteforce(s: &FiniteSemiring, id: &Identity) -> Result<Verdict, DeciderError> {
    BruteForce::new(s.clone()).decide(id)
}

/// Runs `check` on each component of `id` and stops at the first failure.
fn decide_components(
    id: &Identity,
    mut check: impl FnMut(&Component) -> Result<Option<ComponentFailure>, DeciderError>,
) -> Result<Verdict, DeciderError> {
    for (index, component) in id.decompose().iter().enumerate() {
        if let Some(failure) = check(component)? {
            return Ok(Verdict::fails(Reason::Component {
                index,
                component: component.identity(),
                failure,
            }));
        }
    }
    Ok(Verdict::holds())
}

/// Equational theory of the two-element distributive lattice.
#[derive(Debug, Clone, Copy, Default)]
pub struct D2Syntactic;

impl Decider for D2Syntactic {
    fn name(&self) -> String {
        "D2-syntactic".into()
    }

    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        decide_components(id, |c| {
            let covered = !filter_content_subset(&c.base, &c.added).is_empty();
            Ok((!covered).then_some(ComponentFailure::NoCoveringWord))
        })
    }
}

pub fn holds_d2(id: &Identity) -> Verdict {
    D2Syntactic.decide(id).expect("the D2 criterion has no failure modes")
}

/// Equational theory of S₇ by content and δ-sets.
#[derive(Debug, Clone, Copy)]
pub struct S7Syntactic {
    pub delta_cap: usize,
}

impl Default for S7Syntactic {
    fn default() -> Self {
        S7Syntactic {
            delta_cap: DEFAULT_DELTA_CAP,
        }
    }
}

impl Decider for S7Syntactic {
    fn name(&self) -> String {
        "S7-syntactic".into()
    }

    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        let (cl, cr) = (id.lhs().content(), id.rhs().content());
        if cl != cr {
            return Ok(Verdict::fails(Reason::ContentMismatch {
                lhs_only: cl.difference(&cr).cloned().collect(),
                rhs_only: cr.difference(&cl).cloned().collect(),
            }));
        }
        let dl = delta_sets_capped(id.lhs().words(), self.delta_cap)?;
        let dr = delta_sets_capped(id.rhs().words(), self.delta_cap)?;
        if let Some(z) = dl.difference(&dr).next() {
            return Ok(Verdict::fails(Reason::DeltaMismatch {
                separating: z.clone(),
                side: Side::Lhs,
            }));
        }
        if let Some(z) = dr.difference(&dl).next() {
            return Ok(Verdict::fails(Reason::DeltaMismatch {
                separating: z.clone(),
                side: Side::Rhs,
            }));
        }
        Ok(Verdict::holds())
    }
}

pub fn holds_s7(id: &Identity) -> Result<Verdict, DeciderError> {
    S7Syntactic::default().decide(id)
}

/// Decides identities of `S⁰` from a decider for `S`.
#[derive(Debug, Clone)]
pub struct ZeroLift<D> {
    pub base: D,
}

impl<D: Decider> ZeroLift<D> {
    pub fn new(base: D) -> Self {
        ZeroLift { base }
    }
}

impl<D: Decider> Decider for ZeroLift<D> {
    fn name(&self) -> String {
        format!("zero-lift({})", self.base.name())
    }

    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        decide_components(id, |c| {
            let filtered = filter_content_subset(&c.base, &c.added);
            let Ok(reduced_base) = Term::new(filtered, c.base.is_commutative()) else {
                return Ok(Some(ComponentFailure::EmptyFilter));
            };
            let reduced = Component::new(reduced_base, c.added.clone()).identity();
            let verdict = self.base.decide(&reduced)?;
            Ok((!verdict.holds).then(|| ComponentFailure::Base {
                reduced,
                reason: verdict.reason.map(Box::new),
            }))
        })
    }
}

pub fn holds_s0_lift<D: Decider>(base: D, id: &Identity) -> Result<Verdict, DeciderError> {
    ZeroLift::new(base).decide(id)
}

/// Accepts every identity: the decider of the one-element semiring.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysHolds;

impl Decider for AlwaysHolds {
    fn name(&self) -> String {
        "trivial".into()
    }

    fn decide(&self, _id: &Identity) -> Result<Verdict, DeciderError> {
        Ok(Verdict::holds())
    }
}

/// Equational theory of S₇⁰. A component `u ≈ u + q` holds iff `D_q(u)` is
/// nonempty, `c(D_q(u)) = c(q)` and `δ(D_q(u)) = δ(D_q(u) + q)`. With
/// `shortcut` set, components with `c(u) = c(q)` and `δ(u) = ∅` are accepted
/// before the full check.
#[derive(Debug, Clone, Copy)]
pub struct S7ZeroSyntactic {
    pub shortcut: bool,
    pub delta_cap: usize,
}

impl Default for S7ZeroSyntactic {
    fn default() -> Self {
        S7ZeroSyntactic {
            shortcut: true,
            delta_cap: DEFAULT_DELTA_CAP,
        }
    }
}

impl S7ZeroSyntactic {
    fn check(&self, c: &Component) -> Result<Option<ComponentFailure>, DeciderError> {
        let added_content = c.added.content();
        if self.shortcut
            && c.base.content() == added_content
            && delta_sets_capped(c.base.words(), self.delta_cap)?.is_empty()
        {
            return Ok(None);
        }
        let filtered = filter_content_subset(&c.base, &c.added);
        if filtered.is_empty() {
            return Ok(Some(ComponentFailure::EmptyFilter));
        }
        let filter_content = content_of_words(&filtered);
        if filter_content != added_content {
            return Ok(Some(ComponentFailure::FilterContent {
                filter_content,
                added_content,
            }));
        }
        let mut extended = filtered.clone();
        extended.insert(c.added.clone());
        let before = delta_sets_capped(&filtered, self.delta_cap)?;
        let after = delta_sets_capped(&extended, self.delta_cap)?;
        Ok(before
            .symmetric_difference(&after)
            .next()
            .map(|z| ComponentFailure::FilterDelta { separating: z.clone() }))
    }
}

impl Decider for S7ZeroSyntactic {
    fn name(&self) -> String {
        "S7_0-syntactic".into()
    }

    fn decide(&self, id: &Identity) -> Result<Verdict, DeciderError> {
        decide_components(id, |c| self.check(c))
    }
}

pub fn holds_s7_0(id: &Identity) -> Result<Verdict, DeciderError> {
    S7ZeroSyntactic::default().decide(id)
}

/// Bounds for random identity generation.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_vars: usize,
    pub max_words: usize,
    pub max_len: usize,
    pub commutative: bool,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            samples: 10_000,
            seed: 0,
            max_vars: 4,
            max_words: 4,
            max_len: 4,
            commutative: false,
        }
    }
}

fn random_term<R: Rng>(rng: &mut R, vars: &[Var], cfg: &GeneratorConfig) -> Term {
    let count = rng.gen_range(1..=cfg.max_words.max(1));
    let words = (0..count).map(|_| {
        let len = rng.gen_range(1..=cfg.max_len.max(1));
        let letters = (0..len).map(|_| vars[rng.gen_range(0..vars.len())].clone()).collect();
        Word::new(letters).expect("len >= 1")
    });
    Term::new(words, cfg.commutative).expect("count >= 1")
}

/// Draws the variable count, then each side's word count and each word's
/// length, all uniformly within the configured bounds.
pub fn random_identity<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> Identity {
    let nvars = rng.gen_range(1..=cfg.max_vars.max(1));
    let vars: Vec<Var> = (1..=nvars).map(|i| Var::indexed("x", i)).collect();
    let lhs = random_term(rng, &vars, cfg);
    let rhs = random_term(rng, &vars, cfg);
    Identity::new(lhs, rhs).expect("both sides share the configured mode")
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub identity: Identity,
    pub first: bool,
    pub second: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub first: String,
    pub second: String,
    pub config: GeneratorConfig,
    /// Identities on which both deciders said "holds".
    pub both_hold: usize,
    pub disagreements: Vec<Disagreement>,
    pub errors: Vec<String>,
}

impl CrossValidation {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty() && self.errors.is_empty()
    }
}

/// Runs two deciders over the same seeded stream of random identities.
pub fn compare_deciders(first: &dyn Decider, second: &dyn Decider, cfg: &GeneratorConfig) -> CrossValidation {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CrossValidation {
        first: first.name(),
        second: second.name(),
        config: cfg.clone(),
        both_hold: 0,
        disagreements: Vec::new(),
        errors: Vec::new(),
    };
    for _ in 0..cfg.samples {
        let id = random_identity(&mut rng, cfg);
        match (first.decide(&id), second.decide(&id)) {
            (Ok(a), Ok(b)) => {
                if a.holds != b.holds {
                    report.disagreements.push(Disagreement {
                        identity: id,
                        first: a.holds,
                        second: b.holds,
                    });
                } else if a.holds {
                    report.both_hold += 1;
                }
            }
            (Err(e), _) | (_, Err(e)) => report.errors.push(format!("{id}: {e}")),
        }
    }
    report
}

/// Compares `syntactic` with brute force over `s`.
pub fn cross_validate(s: &FiniteSemiring, syntactic: &dyn Decider, cfg: &GeneratorConfig) -> CrossValidation {
    compare_deciders(syntactic, &BruteForce::new(s.clone()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoin_zero, builtin};
    use crate::parse::parse_identity;
    use crate::terms::evaluate;

    fn id(s: &str) -> Identity {
        parse_identity(s, false).unwrap()
    }

    fn oracle(name: &str, s: &str) -> Verdict {
        holds_bruteforce(&builtin(name).unwrap(), &id(s)).unwrap()
    }

    #[test]
    fn oracle_on_separating_identities() {
        assert!(oracle("S7", "x^2 + y == x^2*y^2").holds);
        let v = oracle("D2", "x^2 + y == x^2*y^2");
        assert!(!v.holds);
        let d2 = builtin("D2").unwrap();
        let w = v.witness.unwrap();
        let i = id("x^2 + y == x^2*y^2");
        assert_ne!(evaluate(i.lhs(), &d2, &w).unwrap(), evaluate(i.rhs(), &d2, &w).unwrap());
        assert!(!oracle("S7_0", "x^2 + y == x^2 + y + y^2").holds);
    }

    #[test]
    fn oracle_witness_is_first_in_mixed_radix_order() {
        // x + y == x fails in D2 first at x=0, y=1.
        let v = oracle("D2", "x + y == x");
        let w = v.witness.unwrap();
        assert_eq!(w.iter().map(|(_, e)| e).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn oracle_cap() {
        let bf = BruteForce::with_cap(builtin("S7_0").unwrap(), 63);
        let err = bf.decide(&id("x*y*z == x*y*z + x")).unwrap_err();
        assert!(matches!(err, DeciderError::AssignmentCap { .. }));
        let bf = BruteForce::with_cap(builtin("S7_0").unwrap(), 64);
        assert!(bf.decide(&id("x*y*z == x*y*z + x")).is_ok());
    }

    #[test]
    fn d2_examples() {
        assert!(holds_d2(&id("x^2 + y == x^2 + y + y^2")).holds);
        let v = holds_d2(&id("x^2 + y == x^2*y^2"));
        assert!(!v.holds);
        // The only failing component is x^2*y^2 == x^2*y^2 + y: c(x^2 y^2) is not inside {y}.
        match v.reason.unwrap() {
            Reason::Component { component, failure, .. } => {
                assert_eq!(component, id("x^2*y^2 == y + x^2*y^2"));
                assert_eq!(failure, ComponentFailure::NoCoveringWord);
            }
            other => panic!("unexpected reason {other:?}"),
        }
        assert!(holds_d2(&id("x*y + z == x*y + z")).holds);
    }

    #[test]
    fn s7_examples() {
        assert!(holds_s7(&id("x^2 + y == x^2*y^2")).unwrap().holds);
        assert!(holds_s7(&id("x^2 + y == x^2 + y + y^2")).unwrap().holds);
        let v = holds_s7(&id("x*y + y*z == x*z + z*y")).unwrap();
        assert!(!v.holds);
        // δ(lhs) = {{y}, {x,z}}, δ(rhs) = {{z}, {x,y}}: either lhs member separates.
        let vars = |names: &[&str]| -> VarSet { names.iter().map(|n| Var::new(*n).unwrap()).collect() };
        match v.reason.unwrap() {
            Reason::DeltaMismatch {
                separating,
                side: Side::Lhs,
            } => {
                assert!(separating == vars(&["y"]) || separating == vars(&["x", "z"]));
            }
            other => panic!("unexpected reason {other:?}"),
        }
        let v = holds_s7(&id("x == x + y")).unwrap();
        assert!(matches!(v.reason, Some(Reason::ContentMismatch { .. })));
    }

    #[test]
    fn s7_0_examples() {
        let witness = parse_identity("x1*x2 + x2*x3 + x3*x1 == x1*x2 + x2*x3 + x3*x1 + x1*x2*x3", true).unwrap();
        assert!(holds_s7_0(&witness).unwrap().holds);
        let v = holds_s7_0(&id("x^2 + y == x^2 + y + y^2")).unwrap();
        match v.reason.unwrap() {
            Reason::Component {
                failure: ComponentFailure::FilterDelta { separating },
                ..
            } => {
                assert_eq!(separating, [Var::new("y").unwrap()].into_iter().collect());
            }
            other => panic!("unexpected reason {other:?}"),
        }
        assert!(holds_s7_0(&id("x*y + y^2 == x*y + y^2")).unwrap().holds);
        assert!(!holds_s7_0(&id("x*y == x*y + z")).unwrap().holds);
    }

    #[test]
    fn s0_lift_examples() {
        let witness = parse_identity("x1*x2 + x2*x3 + x3*x1 == x1*x2 + x2*x3 + x3*x1 + x1*x2*x3", true).unwrap();
        assert!(holds_s0_lift(S7Syntactic::default(), &witness).unwrap().holds);
        assert!(
            holds_s0_lift(BruteForce::new(builtin("S7").unwrap()), &witness)
                .unwrap()
                .holds
        );
        let v = holds_s0_lift(AlwaysHolds, &id("x*y == x*y + z")).unwrap();
        assert!(matches!(
            v.reason,
            Some(Reason::Component {
                failure: ComponentFailure::EmptyFilter,
                ..
            })
        ));
    }

    #[test]
    fn every_decider_accepts_reflexive_identities() {
        let deciders: Vec<Box<dyn Decider>> = vec![
            Box::new(D2Syntactic),
            Box::new(S7Syntactic::default()),
            Box::new(S7ZeroSyntactic::default()),
            Box::new(ZeroLift::new(BruteForce::new(builtin("S7").unwrap()))),
            Box::new(BruteForce::new(builtin("S7_0").unwrap())),
        ];
        for text in ["x == x", "x^2*y + y*z^3 == y*z^3 + x^2*y", "a*b*a + b == b + a*b*a"] {
            for d in &deciders {
                assert!(d.decide(&id(text)).unwrap().holds, "{} on {text}", d.name());
            }
        }
    }

    #[test]
    fn small_cross_validations() {
        let cfg = GeneratorConfig {
            samples: 300,
            seed: 7,
            ..Default::default()
        };
        assert!(cross_validate(&builtin("D2").unwrap(), &D2Syntactic, &cfg).agrees());
        assert!(cross_validate(&builtin("S7").unwrap(), &S7Syntactic::default(), &cfg).agrees());
        let s70 = GeneratorConfig {
            max_vars: 3,
            ..cfg.clone()
        };
        assert!(cross_validate(&builtin("S7_0").unwrap(), &S7ZeroSyntactic::default(), &s70).agrees());
        let lifted = adjoin_zero(&builtin("S7").unwrap(), "∞").unwrap();
        let lift = ZeroLift::new(BruteForce::new(builtin("S7").unwrap()));
        assert!(cross_validate(&lifted, &lift, &cfg).agrees());
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GeneratorConfig::default();
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_identity(&mut a, &cfg);
            assert_eq!(x, random_identity(&mut b, &cfg));
            assert!(x.content().len() <= 4);
            assert!(x.lhs().len() <= 4 && x.lhs().max_word_len() <= 4);
        }
    }
}
