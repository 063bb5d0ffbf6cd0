//! The odd-cycle identities `u⁽ⁿ⁾ ≈ u⁽ⁿ⁾ + q⁽ⁿ⁾` with
//! `u⁽ⁿ⁾ = x1x2 + x2x3 + … + x(2n+1)x1` and `q⁽ⁿ⁾ = x1x2…x(2n+1)`, and the
//! checks on candidate axioms `A ≈ B` that such identities can be rewritten
//! with.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::builtin;
use crate::deciders::{fmt_vars, BruteForce, Decider, DeciderError, S7ZeroSyntactic};
use crate::graphs::{odd_cycle, term_graph, Bipartiteness};
use crate::terms::{delta_sets, DeltaSets, Identity, Term, TermError, Var, VarSet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("the witness family starts at n = 1, got n = {0}")]
    ZeroIndex(usize),
}

/// `u⁽ⁿ⁾` (commutative mode) and `q⁽ⁿ⁾`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub n: usize,
    pub u: Term,
    pub q: Word,
}

impl WitnessPair {
    /// `u ≈ u + q`.
    pub fn identity(&self) -> Identity {
        Identity::new(self.u.clone(), self.u.with_word(&self.q)).expect("same mode")
    }

    pub fn variables(&self) -> usize {
        2 * self.n + 1
    }
}

pub fn make_witness(n: usize) -> Result<WitnessPair, WitnessError> {
    if n < 1 {
        return Err(WitnessError::ZeroIndex(n));
    }
    let k = 2 * n + 1;
    let x = |i: usize| Var::indexed("x", i);
    let edges = (1..=k).map(|i| Word::new(vec![x(i), x(i % k + 1)]).expect("two letters"));
    let u = Term::new(edges, true).expect("k >= 3 words");
    let q = Word::new((1..=k).map(x).collect()).expect("k >= 3 letters").sorted();
    Ok(WitnessPair { n, u, q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    Skipped(String),
    Error(String),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail(why())
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Pass => f.write_str("pass"),
            CheckOutcome::Fail(d) => write!(f, "FAIL ({d})"),
            CheckOutcome::Skipped(d) => write!(f, "skipped ({d})"),
            CheckOutcome::Error(d) => write!(f, "error ({d})"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub identity: Identity,
    pub contents_equal: CheckOutcome,
    pub delta_empty: CheckOutcome,
    pub s7_0_syntactic: CheckOutcome,
    pub odd_cycle: CheckOutcome,
    pub odd_cycle_length: Option<usize>,
    pub oracle: CheckOutcome,
}

impl WitnessReport {
    pub fn syntactic_pass(&self) -> bool {
        [
            &self.contents_equal,
            &self.delta_empty,
            &self.s7_0_syntactic,
            &self.odd_cycle,
        ]
        .iter()
        .all(|c| c.passed())
    }

    /// Syntactic checks pass and the oracle, if it ran, concurs.
    pub fn all_pass(&self) -> bool {
        self.syntactic_pass() && matches!(self.oracle, CheckOutcome::Pass | CheckOutcome::Skipped(_))
    }

    pub fn checks(&self) -> [(&'static str, &CheckOutcome); 5] {
        [
            ("contents equal", &self.contents_equal),
            ("delta(u) empty", &self.delta_empty),
            ("S7_0 syntactic decider holds", &self.s7_0_syntactic),
            ("graph of u is an odd cycle", &self.odd_cycle),
            ("S7_0 brute force holds", &self.oracle),
        ]
    }
}

/// Runs every check independently. `oracle_cap` bounds the number of
/// brute-force assignments over S₇⁰; `None` skips the oracle.
pub fn check_witness_facts(w: &WitnessPair, oracle_cap: Option<u64>) -> WitnessReport {
    let cu = w.u.content();
    let cq = w.q.content();
    let contents_equal = CheckOutcome::from_bool(cu == cq, || {
        format!("c(u) = {} but c(q) = {}", fmt_vars(&cu), fmt_vars(&cq))
    });

    let delta_empty = match delta_sets(&w.u) {
        Ok(d) => CheckOutcome::from_bool(d.is_empty(), || format!("{} delta sets", d.len())),
        Err(e) => CheckOutcome::Error(e.to_string()),
    };

    let id = w.identity();
    let s7_0_syntactic = match S7ZeroSyntactic::default().decide(&id) {
        Ok(v) => CheckOutcome::from_bool(v.holds, || v.reason.map(|r| r.to_string()).unwrap_or_default()),
        Err(e) => CheckOutcome::Error(e.to_string()),
    };

    let expected = w.variables();
    let (odd_cycle_check, odd_cycle_length) = match term_graph(&w.u) {
        Ok(g) => match odd_cycle(&g) {
            Bipartiteness::OddCycle(c) => (
                CheckOutcome::from_bool(c.len() == expected && g.vertices().len() == expected, || {
                    format!("odd cycle of length {} on {} vertices", c.len(), g.vertices().len())
                }),
                Some(c.len()),
            ),
            Bipartiteness::Bipartite(_) => (CheckOutcome::Fail("graph is bipartite".into()), None),
        },
        Err(e) => (CheckOutcome::Error(e.to_string()), None),
    };

    let oracle = match oracle_cap {
        None => CheckOutcome::Skipped("oracle not requested".into()),
        Some(cap) => {
            let s70 = builtin("S7_0").expect("built-in");
            match BruteForce::with_cap(s70, cap).decide(&id) {
                Ok(v) => CheckOutcome::from_bool(v.holds, || v.reason.map(|r| r.to_string()).unwrap_or_default()),
                Err(e @ DeciderError::AssignmentCap { .. }) => CheckOutcome::Skipped(e.to_string()),
                Err(e) => CheckOutcome::Error(e.to_string()),
            }
        }
    };

    WitnessReport {
        n: w.n,
        identity: id,
        contents_equal,
        delta_empty,
        s7_0_syntactic,
        odd_cycle: odd_cycle_check,
        odd_cycle_length,
        oracle,
    }
}

/// `Pass`, or `Fail` carrying the offending item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "evidence", rename_all = "snake_case")]
pub enum Condition<E> {
    Pass,
    Fail(E),
}

impl<E> Condition<E> {
    pub fn passed(&self) -> bool {
        matches!(self, Condition::Pass)
    }

    pub fn evidence(&self) -> Option<&E> {
        match self {
            Condition::Pass => None,
            Condition::Fail(e) => Some(e),
        }
    }

    fn from_violation(v: Option<E>) -> Self {
        v.map_or(Condition::Pass, Condition::Fail)
    }
}

/// Conditions (a)–(d) on a candidate axiom side `A`, plus the δ facts they
/// lead to. Words are compared as commutative words.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomConditionReport {
    pub term: Term,
    /// (a) every word has length at most 2.
    pub short_words: Condition<Word>,
    /// (b) every word is linear.
    pub linear_words: Condition<Word>,
    /// (c) no word is a proper commutative subword of another.
    pub antichain: Condition<(Word, Word)>,
    /// (d) the graph of the linear length-2 words has no odd cycle.
    pub no_odd_cycle: Condition<Vec<Var>>,
    pub delta: DeltaSets,
    /// Every variable of `c(A)` lies in some member of δ(A).
    pub delta_covers_content: bool,
    /// `B ⊆ A`, when `B` was given.
    pub other_side_included: Option<bool>,
}

impl AxiomConditionReport {
    pub fn conditions_pass(&self) -> bool {
        self.short_words.passed() && self.linear_words.passed() && self.antichain.passed() && self.no_odd_cycle.passed()
    }
}

pub fn check_axiom_conditions(a: &Term, b: Option<&Term>) -> Result<AxiomConditionReport, TermError> {
    let a = a.in_mode(true);
    let short_words = Condition::from_violation(a.words().iter().find(|w| w.len() > 2).cloned());
    let linear_words = Condition::from_violation(a.words().iter().find(|w| !w.is_linear()).cloned());
    let antichain = Condition::from_violation(a.words().iter().find_map(|w1| {
        a.words()
            .iter()
            .find(|w2| *w2 != w1 && w1.divides_commutatively(w2))
            .map(|w2| (w1.clone(), w2.clone()))
    }));

    let edges: Vec<Word> = a
        .words()
        .iter()
        .filter(|w| w.len() == 2 && w.is_linear())
        .cloned()
        .collect();
    let no_odd_cycle = match Term::new(edges, true) {
        Err(_) => Condition::Pass,
        Ok(edge_term) => {
            let g = term_graph(&edge_term).expect("only linear length-2 words remain");
            Condition::from_violation(odd_cycle(&g).odd_cycle().map(<[Var]>::to_vec))
        }
    };

    let delta = delta_sets(&a)?;
    let covered: VarSet = delta.iter().flatten().cloned().collect();
    let delta_covers_content = covered == a.content();
    let other_side_included = b.map(|b| b.in_mode(true).is_subset(&a));

    Ok(AxiomConditionReport {
        term: a,
        short_words,
        linear_words,
        antichain,
        no_odd_cycle,
        delta,
        delta_covers_content,
        other_side_included,
    })
}
