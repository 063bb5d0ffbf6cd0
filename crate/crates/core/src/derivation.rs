//! Equational derivations over ai-semiring terms.
//!
//! One step rewrites `T = P·φ(A)·Q + R` into `P·φ(B)·Q + R` where `A ≈ B`
//! (or `B ≈ A`) is an axiom and `φ` a substitution. The contexts `P`, `Q`
//! and the remainder `R` are optional: an absent context contributes no
//! factor and an absent remainder no summand. The ai-semiring laws for `+`
//! are built into the set representation of terms, so axiom sets only need
//! the identities of interest.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_identity, parse_term, ParseError};
use crate::terms::{Identity, Substitution, Term, TermError, Var, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("axiom name `{0}` is used twice")]
    DuplicateAxiom(String),
    #[error("substitution does not map `{var}`, which occurs in axiom `{axiom}`")]
    Uncovered { axiom: String, var: Var },
    #[error("step source `{expected}` does not match the current term `{found}`")]
    Mismatch { expected: Term, found: Term },
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("parse error in {context}: {error}")]
    Parse { context: String, error: ParseError },
    #[error("invalid document: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAxiom {
    pub name: String,
    pub identity: Identity,
}

/// A finite set of named axioms with distinct names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomSet {
    axioms: Vec<NamedAxiom>,
}

impl AxiomSet {
    pub fn new(axioms: Vec<NamedAxiom>) -> Result<Self, DerivationError> {
        let mut names = BTreeSet::new();
        for a in &axioms {
            if !names.insert(a.name.as_str()) {
                return Err(DerivationError::DuplicateAxiom(a.name.clone()));
            }
        }
        Ok(AxiomSet { axioms })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&NamedAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &NamedAxiom> {
        self.axioms.iter()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        let doc: AxiomsDocument = serde_json::from_str(text).map_err(|e| DerivationError::Json(e.to_string()))?;
        let axioms = doc
            .axioms
            .into_iter()
            .map(|a| {
                let identity =
                    parse_identity(&a.identity, doc.commutative).map_err(|error| DerivationError::Parse {
                        context: format!("axiom `{}`", a.name),
                        error,
                    })?;
                Ok(NamedAxiom { name: a.name, identity })
            })
            .collect::<Result<Vec<_>, DerivationError>>()?;
        AxiomSet::new(axioms)
    }
}

/// Axiom file: `{"commutative": false, "axioms": [{"name": .., "identity": ..}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomsDocument {
    #[serde(default)]
    pub commutative: bool,
    pub axioms: Vec<AxiomEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub name: String,
    pub identity: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Rewrite an instance of the axiom's left side into its right side.
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub axiom: String,
    pub direction: Direction,
    pub substitution: Substitution,
    pub left: Option<Term>,
    pub right: Option<Term>,
    pub remainder: Option<Term>,
}

impl DerivationStep {
    pub fn new(axiom: impl Into<String>, direction: Direction, substitution: Substitution) -> Self {
        DerivationStep {
            axiom: axiom.into(),
            direction,
            substitution,
            left: None,
            right: None,
            remainder: None,
        }
    }

    pub fn with_left(mut self, p: Term) -> Self {
        self.left = Some(p);
        self
    }

    pub fn with_right(mut self, q: Term) -> Self {
        self.right = Some(q);
        self
    }

    pub fn with_remainder(mut self, r: Term) -> Self {
        self.remainder = Some(r);
        self
    }

    /// `P·φ(side)·Q + R` in the given mode.
    fn frame(&self, side: &Term, commutative: bool) -> Result<Term, TermError> {
        let mut x = self.substitution.apply(&side.in_mode(commutative))?;
        if let Some(p) = &self.left {
            x = p.in_mode(commutative).product(&x);
        }
        if let Some(q) = &self.right {
            x = x.product(q);
        }
        if let Some(r) = &self.remainder {
            x = x.union(r);
        }
        Ok(x)
    }
}

/// Checks that `t` is the step's source and returns its target.
pub fn apply_step(t: &Term, step: &DerivationStep, sigma: &AxiomSet) -> Result<Term, DerivationError> {
    let ax = sigma
        .get(&step.axiom)
        .ok_or_else(|| DerivationError::UnknownAxiom(step.axiom.clone()))?;
    if let Some(var) = ax
        .identity
        .content()
        .into_iter()
        .find(|v| step.substitution.get(v).is_none())
    {
        return Err(DerivationError::Uncovered {
            axiom: ax.name.clone(),
            var,
        });
    }
    let (src, dst) = match step.direction {
        Direction::Forward => (ax.identity.lhs(), ax.identity.rhs()),
        Direction::Backward => (ax.identity.rhs(), ax.identity.lhs()),
    };
    let comm = t.is_commutative();
    let expected = step.frame(src, comm)?;
    if &expected != t {
        return Err(DerivationError::Mismatch {
            expected,
            found: t.clone(),
        });
    }
    Ok(step.frame(dst, comm)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationChain {
    pub start: Term,
    pub steps: Vec<DerivationStep>,
    pub end: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    /// Every intermediate term, `start` first and `end` last.
    Accepted { terms: Vec<Term> },
    /// `index` is the failing step, or `steps.len()` when the last term
    /// differs from `end`.
    Rejected { index: usize, reason: String },
}

impl ChainVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ChainVerdict::Accepted { .. })
    }
}

pub fn verify_chain(chain: &DerivationChain, sigma: &AxiomSet) -> ChainVerdict {
    let mut terms = vec![chain.start.clone()];
    for (index, step) in chain.steps.iter().enumerate() {
        let current = terms.last().expect("nonempty");
        match apply_step(current, step, sigma) {
            Ok(next) => terms.push(next),
            Err(e) => {
                return ChainVerdict::Rejected {
                    index,
                    reason: e.to_string(),
                }
            }
        }
    }
    let last = terms.last().expect("nonempty");
    if last.in_mode(chain.end.is_commutative()) != chain.end {
        return ChainVerdict::Rejected {
            index: chain.steps.len(),
            reason: format!("chain ends at `{last}`, expected `{}`", chain.end),
        };
    }
    ChainVerdict::Accepted { terms }
}

/// Chain file: terms as strings in the identity grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDocument {
    #[serde(default)]
    pub commutative: bool,
    pub start: String,
    pub steps: Vec<StepDocument>,
    pub end: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub axiom: String,
    pub direction: Direction,
    pub substitution: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
}

impl ChainDocument {
    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        serde_json::from_str(text).map_err(|e| DerivationError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chain documents serialize") + "\n"
    }

    pub fn to_chain(&self) -> Result<DerivationChain, DerivationError> {
        let comm = self.commutative;
        let term = |text: &str, context: String| {
            parse_term(text, comm).map_err(|error| DerivationError::Parse { context, error })
        };
        let opt = |text: &Option<String>, context: String| text.as_deref().map(|t| term(t, context)).transpose();
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut substitution = Substitution::new();
                for (name, image) in &s.substitution {
                    substitution.insert(
                        Var::new(name.clone())?,
                        term(image, format!("step {i} image of `{name}`"))?,
                    );
                }
                Ok(DerivationStep {
                    axiom: s.axiom.clone(),
                    direction: s.direction,
                    substitution,
                    left: opt(&s.left, format!("step {i} left context"))?,
                    right: opt(&s.right, format!("step {i} right context"))?,
                    remainder: opt(&s.remainder, format!("step {i} remainder"))?,
                })
            })
            .collect::<Result<Vec<_>, DerivationError>>()?;
        Ok(DerivationChain {
            start: term(&self.start, "start".into())?,
            steps,
            end: term(&self.end, "end".into())?,
        })
    }
}

impl DerivationChain {
    pub fn to_document(&self) -> ChainDocument {
        let s = |t: &Term| t.to_string();
        ChainDocument {
            commutative: self.start.is_commutative(),
            start: s(&self.start),
            steps: self
                .steps
                .iter()
                .map(|st| StepDocument {
                    axiom: st.axiom.clone(),
                    direction: st.direction,
                    substitution: st.substitution.iter().map(|(v, t)| (v.to_string(), s(t))).collect(),
                    left: st.left.as_ref().map(s),
                    right: st.right.as_ref().map(s),
                    remainder: st.remainder.as_ref().map(s),
                })
                .collect(),
            end: s(&self.end),
        }
    }
}

/// Limits for [`search_derivation`].
#[derive(Debug, Clone, Serialize)]
pub struct SearchBounds {
    /// Maximum number of steps.
    pub max_depth: usize,
    /// Terms with more words are not explored.
    pub max_words: usize,
    /// Longest word allowed in explored terms and in substitution images.
    pub max_len: usize,
    /// Maximum number of words in a substitution image or context.
    pub max_image: usize,
    /// Maximum number of terms expanded.
    pub max_nodes: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_depth: 4,
            max_words: 6,
            max_len: 6,
            max_image: 1,
            max_nodes: 5_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Depth,
    Words,
    Length,
    Nodes,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Depth => "max-depth",
            Bound::Words => "max-words",
            Bound::Length => "max-len",
            Bound::Nodes => "max-nodes",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(DerivationChain),
    /// Every term reachable within the bounds was explored; none is the goal.
    NotFound {
        explored: usize,
    },
    /// The search was cut short by the listed bounds.
    Exhausted {
        bounds: BTreeSet<Bound>,
        explored: usize,
    },
}

/// Breadth-first search from `goal.lhs()` to `goal.rhs()`.
///
/// Substitution images and contexts are drawn from the factors of the
/// current term's words and of the goal's right side (sub-multisets in
/// commutative mode), at most `max_len` letters each and at most `max_image`
/// words per image. Remainders range over every choice compatible with the
/// matched instance.
pub fn search_derivation(sigma: &AxiomSet, goal: &Identity, bounds: &SearchBounds) -> SearchOutcome {
    let comm = goal.is_commutative();
    let start = goal.lhs().clone();
    let target = goal.rhs().clone();
    if start == target {
        return SearchOutcome::Found(DerivationChain {
            start,
            steps: Vec::new(),
            end: target,
        });
    }

    let axioms: Vec<(String, Term, Term)> = sigma
        .iter()
        .map(|a| {
            (
                a.name.clone(),
                a.identity.lhs().in_mode(comm),
                a.identity.rhs().in_mode(comm),
            )
        })
        .collect();
    let goal_factors = factor_candidates(&target, bounds.max_len);

    let mut hit = BTreeSet::new();
    let mut visited: HashSet<Term> = HashSet::from([start.clone()]);
    let mut parent: HashMap<Term, (Term, DerivationStep)> = HashMap::new();
    let mut frontier = vec![start.clone()];
    let mut explored = 0;
    let mut depth = 0;

    'levels: while !frontier.is_empty() {
        if depth == bounds.max_depth {
            hit.insert(Bound::Depth);
            break;
        }
        let mut next = Vec::new();
        for t in &frontier {
            if explored == bounds.max_nodes {
                hit.insert(Bound::Nodes);
                break 'levels;
            }
            explored += 1;
            for (succ, step) in successors(t, &axioms, &goal_factors, bounds, &mut hit) {
                if !visited.insert(succ.clone()) {
                    continue;
                }
                parent.insert(succ.clone(), (t.clone(), step));
                if succ == target {
                    let chain = rebuild(&start, &target, &parent);
                    debug_assert!(verify_chain(&chain, sigma).is_accepted());
                    return SearchOutcome::Found(chain);
                }
                next.push(succ);
            }
        }
        frontier = next;
        depth += 1;
    }
    if hit.is_empty() {
        SearchOutcome::NotFound { explored }
    } else {
        SearchOutcome::Exhausted { bounds: hit, explored }
    }
}

fn rebuild(start: &Term, target: &Term, parent: &HashMap<Term, (Term, DerivationStep)>) -> DerivationChain {
    let mut steps = Vec::new();
    let mut cur = target;
    while cur != start {
        let (prev, step) = &parent[cur];
        steps.push(step.clone());
        cur = prev;
    }
    steps.reverse();
    DerivationChain {
        start: start.clone(),
        steps,
        end: target.clone(),
    }
}

/// Contiguous factors (noncommutative) or sub-multisets (commutative) of the
/// words of `t`, up to `max_len` letters.
fn factor_candidates(t: &Term, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in t.words() {
        let letters = w.letters();
        if t.is_commutative() {
            // Sub-multisets of a sorted word, as sorted words.
            let mut counts: Vec<(&Var, usize)> = Vec::new();
            for l in letters {
                match counts.last_mut() {
                    Some((v, k)) if *v == l => *k += 1,
                    _ => counts.push((l, 1)),
                }
            }
            let mut pick = vec![0usize; counts.len()];
            loop {
                let size: usize = pick.iter().sum();
                if size > 0 && size <= max_len {
                    let ls = counts
                        .iter()
                        .zip(&pick)
                        .flat_map(|((v, _), &k)| std::iter::repeat_n((*v).clone(), k))
                        .collect();
                    out.insert(Word::new(ls).expect("size > 0"));
                }
                let mut i = 0;
                while i < pick.len() {
                    pick[i] += 1;
                    if pick[i] <= counts[i].1 {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
            }
        } else {
            for i in 0..letters.len() {
                for j in i + 1..=letters.len().min(i + max_len) {
                    out.insert(Word::new(letters[i..j].to_vec()).expect("j > i"));
                }
            }
        }
    }
    out
}

fn is_factor(w: &Word, of: &Word, commutative: bool) -> bool {
    if commutative {
        w.divides_commutatively(of)
    } else {
        of.letters().windows(w.len()).any(|win| win == w.letters())
    }
}

/// Nonempty subsets of `items` with at most `max` elements, as terms.
fn small_subsets(items: &[Word], max: usize, commutative: bool) -> Vec<Term> {
    fn go(items: &[Word], from: usize, max: usize, cur: &mut Vec<Word>, comm: bool, out: &mut Vec<Term>) {
        if !cur.is_empty() {
            out.push(Term::new(cur.iter().cloned(), comm).expect("nonempty"));
        }
        if cur.len() == max {
            return;
        }
        for i in from..items.len() {
            cur.push(items[i].clone());
            go(items, i + 1, max, cur, comm, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, max, &mut Vec::new(), commutative, &mut out);
    out
}

/// Every subset of `items`.
fn all_subsets(items: &[Word]) -> Vec<Vec<Word>> {
    (0u64..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect()
        })
        .collect()
}

fn successors(
    t: &Term,
    axioms: &[(String, Term, Term)],
    goal_factors: &BTreeSet<Word>,
    bounds: &SearchBounds,
    hit: &mut BTreeSet<Bound>,
) -> BTreeMap<Term, DerivationStep> {
    let comm = t.is_commutative();
    let mut factors = factor_candidates(t, bounds.max_len);
    factors.extend(goal_factors.iter().cloned());
    let factors: Vec<Word> = factors.into_iter().collect();
    let images = small_subsets(&factors, bounds.max_image, comm);
    let contexts: Vec<Option<Term>> = std::iter::once(None).chain(images.iter().cloned().map(Some)).collect();

    let mut out = BTreeMap::new();
    for (name, lhs, rhs) in axioms {
        for direction in [Direction::Forward, Direction::Backward] {
            let (src, dst) = match direction {
                Direction::Forward => (lhs, rhs),
                Direction::Backward => (rhs, lhs),
            };
            let src_vars: Vec<Var> = src.content().into_iter().collect();
            let extra_vars: Vec<Var> = dst.content().difference(&src.content()).cloned().collect();

            for_each_assignment(&src_vars, &images, &mut Substitution::new(), &mut |phi| {
                let core = phi.apply(src).expect("phi covers src");
                if !core
                    .words()
                    .iter()
                    .all(|w| t.words().iter().any(|tw| is_factor(w, tw, comm)))
                {
                    return;
                }
                for left in &contexts {
                    for right in &contexts {
                        let mut x = core.clone();
                        if let Some(p) = left {
                            x = p.product(&x);
                        }
                        if let Some(q) = right {
                            x = x.product(q);
                        }
                        if !x.is_subset(t) {
                            continue;
                        }
                        let required: Vec<Word> = t.words().difference(x.words()).cloned().collect();
                        let optional: Vec<Word> = x.words().iter().cloned().collect();
                        for_each_assignment(&extra_vars, &images, &mut phi.clone(), &mut |full| {
                            let mut y = full.apply(dst).expect("phi covers dst");
                            if let Some(p) = left {
                                y = p.product(&y);
                            }
                            if let Some(q) = right {
                                y = y.product(q);
                            }
                            for extra in all_subsets(&optional) {
                                let r_words: Vec<Word> = required.iter().cloned().chain(extra).collect();
                                let remainder = Term::new(r_words, comm).ok();
                                let result = match &remainder {
                                    Some(r) => y.union(r),
                                    None => y.clone(),
                                };
                                if result == *t || out.contains_key(&result) {
                                    continue;
                                }
                                if result.len() > bounds.max_words {
                                    hit.insert(Bound::Words);
                                    continue;
                                }
                                if result.max_word_len() > bounds.max_len {
                                    hit.insert(Bound::Length);
                                    continue;
                                }
                                let step = DerivationStep {
                                    axiom: name.clone(),
                                    direction,
                                    substitution: full.clone(),
                                    left: left.clone(),
                                    right: right.clone(),
                                    remainder,
                                };
                                out.insert(result, step);
                            }
                        });
                    }
                }
            });
        }
    }
    out
}

fn for_each_assignment(vars: &[Var], images: &[Term], acc: &mut Substitution, f: &mut dyn FnMut(&Substitution)) {
    match vars.split_first() {
        None => f(acc),
        Some((v, rest)) => {
            for img in images {
                acc.insert(v.clone(), img.clone());
                for_each_assignment(rest, images, acc, f);
            }
        }
    }
}
