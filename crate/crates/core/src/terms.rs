//! Words, ai-semiring terms and the statistics the deciders are built on.
//!
//! A [`Term`] is a finite nonempty set of nonempty [`Word`]s, i.e. an element
//! of the free ai-semiring over the variables. Addition is set union and
//! multiplication is the elementwise concatenation product. A term carries a
//! `commutative` flag fixed at construction: in commutative mode every word is
//! normalized to sorted letter order, so two words are equal exactly when they
//! have the same letter multiset.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{ElemId, FiniteSemiring};

/// Default bound on `|c(u)|` for [`delta_sets`].
pub const DEFAULT_DELTA_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
    #[error("a word must contain at least one letter")]
    EmptyWord,
    #[error("a term must contain at least one word")]
    EmptyTerm,
    #[error("both sides of an identity must use the same commutativity mode")]
    ModeMismatch,
    #[error("variable `{0}` is not mapped by the substitution")]
    Unmapped(Var),
    #[error("variable `{0}` is not assigned a value")]
    Unassigned(Var),
    #[error("element index {0} is out of range")]
    ElementOutOfRange(ElemId),
    #[error("delta computation over {vars} variables exceeds the cap of {cap}")]
    DeltaCap { vars: usize, cap: usize },
}

/// A variable name matching `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(Var(name))
        } else {
            Err(TermError::InvalidVariable(name))
        }
    }

    /// `prefix` followed by `index`, e.g. `x3`.
    pub fn indexed(prefix: &str, index: usize) -> Self {
        Var::new(format!("{prefix}{index}")).expect("indexed variable names are well formed")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type VarSet = BTreeSet<Var>;

/// The δ-sets of a term: a set of nonempty variable sets.
pub type DeltaSets = BTreeSet<VarSet>;

/// A possibly empty set of words, such as the filters `D_q(u)` and `D_Z(u)`.
pub type WordSet = BTreeSet<Word>;

/// A nonempty sequence of variables.
///
/// Words order by length first and then lexicographically by letters, which
/// is also the display order of words inside a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Var>,
}

impl Word {
    pub fn new(letters: Vec<Var>) -> Result<Self, TermError> {
        if letters.is_empty() {
            Err(TermError::EmptyWord)
        } else {
            Ok(Word { letters })
        }
    }

    pub fn letter(v: Var) -> Self {
        Word { letters: vec![v] }
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    /// ℓ(ω), the length counting multiplicities.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn content(&self) -> VarSet {
        self.letters.iter().cloned().collect()
    }

    pub fn occurrences(&self, x: &Var) -> usize {
        self.letters.iter().filter(|l| *l == x).count()
    }

    pub fn is_linear(&self) -> bool {
        let content = self.content();
        content.len() == self.letters.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Letters sorted by name: the canonical representative in a free
    /// commutative semigroup.
    pub fn sorted(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.sort();
        Word { letters }
    }

    /// Letter multiplicities.
    pub fn multiset(&self) -> BTreeMap<&Var, usize> {
        let mut counts = BTreeMap::new();
        for l in &self.letters {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }

    /// Commutative subword order: every letter occurs in `other` at least as
    /// often as in `self`.
    pub fn divides_commutatively(&self, other: &Word) -> bool {
        let theirs = other.multiset();
        self.multiset()
            .into_iter()
            .all(|(v, k)| theirs.get(v).copied().unwrap_or(0) >= k)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for Word {
    /// Runs of a repeated letter print as powers: `x^2*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == self.letters[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", self.letters[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite nonempty set of words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    words: BTreeSet<Word>,
    commutative: bool,
}

impl Term {
    pub fn new(words: impl IntoIterator<Item = Word>, commutative: bool) -> Result<Self, TermError> {
        let words: BTreeSet<Word> = if commutative {
            words.into_iter().map(|w| w.sorted()).collect()
        } else {
            words.into_iter().collect()
        };
        if words.is_empty() {
            return Err(TermError::EmptyTerm);
        }
        Ok(Term { words, commutative })
    }

    pub fn from_word(word: Word, commutative: bool) -> Self {
        Term::new([word], commutative).expect("a single word is nonempty")
    }

    /// A variable as a one-letter term.
    pub fn var(v: Var, commutative: bool) -> Self {
        Term::from_word(Word::letter(v), commutative)
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn contains(&self, word: &Word) -> bool {
        if self.commutative {
            self.words.contains(&word.sorted())
        } else {
            self.words.contains(word)
        }
    }

    pub fn content(&self) -> VarSet {
        self.words.iter().flat_map(|w| w.letters.iter().cloned()).collect()
    }

    /// Longest word length.
    pub fn max_word_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// The same words reinterpreted in the given mode.
    pub fn in_mode(&self, commutative: bool) -> Term {
        if commutative == self.commutative {
            return self.clone();
        }
        Term::new(self.words.iter().cloned(), commutative).expect("nonempty")
    }

    /// `self + other`, in `self`'s mode.
    pub fn union(&self, other: &Term) -> Term {
        self.extend(other.words.iter().cloned())
    }

    /// `self + w`.
    pub fn with_word(&self, w: &Word) -> Term {
        self.extend([w.clone()])
    }

    fn extend(&self, extra: impl IntoIterator<Item = Word>) -> Term {
        let mut words = self.words.clone();
        for w in extra {
            words.insert(if self.commutative { w.sorted() } else { w });
        }
        Term {
            words,
            commutative: self.commutative,
        }
    }

    /// `self · other`: every concatenation of a word of `self` with a word of
    /// `other`, in `self`'s mode.
    pub fn product(&self, other: &Term) -> Term {
        let words = self
            .words
            .iter()
            .flat_map(|a| other.words.iter().map(move |b| a.concat(b)));
        Term::new(words, self.commutative).expect("product of nonempty terms is nonempty")
    }

    pub fn is_subset(&self, other: &Term) -> bool {
        let other = other.in_mode(self.commutative);
        self.words.is_subset(&other.words)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An identity `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    lhs: Term,
    rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Result<Self, TermError> {
        if lhs.commutative != rhs.commutative {
            return Err(TermError::ModeMismatch);
        }
        Ok(Identity { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn is_commutative(&self) -> bool {
        self.lhs.commutative
    }

    pub fn content(&self) -> VarSet {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    /// Both sides are the same set of words.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Splits `u ≈ v` into the components `u ≈ u + v_j` and `v ≈ v + u_i`.
    /// Their conjunction defines the same variety as `u ≈ v`.
    pub fn decompose(&self) -> Vec<Component> {
        let forward = self
            .rhs
            .words
            .iter()
            .map(|w| Component::new(self.lhs.clone(), w.clone()));
        let backward = self
            .lhs
            .words
            .iter()
            .map(|w| Component::new(self.rhs.clone(), w.clone()));
        forward.chain(backward).collect()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One identity of the shape `u ≈ u + q` with `q` a single word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub base: Term,
    pub added: Word,
}

impl Component {
    pub fn new(base: Term, added: Word) -> Self {
        let added = if base.commutative { added.sorted() } else { added };
        Component { base, added }
    }

    /// `q` already belongs to `u`.
    pub fn is_trivial(&self) -> bool {
        self.base.contains(&self.added)
    }

    pub fn identity(&self) -> Identity {
        Identity {
            lhs: self.base.clone(),
            rhs: self.base.with_word(&self.added),
        }
    }
}

pub fn content(t: &Term) -> VarSet {
    t.content()
}

pub fn occurrences(x: &Var, w: &Word) -> usize {
    w.occurrences(x)
}

pub fn is_linear(w: &Word) -> bool {
    w.is_linear()
}

pub fn content_of_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> VarSet {
    words.into_iter().flat_map(|w| w.letters.iter().cloned()).collect()
}

/// `D_q(u)`: the words of `u` whose content lies inside `c(q)`.
pub fn filter_content_subset(u: &Term, q: &Word) -> WordSet {
    let cq = q.content();
    u.words
        .iter()
        .filter(|w| w.letters.iter().all(|l| cq.contains(l)))
        .cloned()
        .collect()
}

/// `D_Z(u)`: the words of `u` whose content avoids `z`.
pub fn filter_content_avoiding(u: &Term, z: &VarSet) -> WordSet {
    u.words
        .iter()
        .filter(|w| w.letters.iter().all(|l| !z.contains(l)))
        .cloned()
        .collect()
}

/// δ(u) with the default cap on `|c(u)|`.
pub fn delta_sets(u: &Term) -> Result<DeltaSets, TermError> {
    delta_sets_capped(u.words(), DEFAULT_DELTA_CAP)
}

/// δ of an arbitrary word set: the nonempty `Z ⊆ c(words)` that meet every
/// word in exactly one variable, that variable occurring once in the word.
///
/// Search assigns variables in order and discards a partial choice as soon
/// as one word is hit twice, is hit on a repeated letter, or has all its
/// letters decided without being hit.
pub fn delta_sets_capped(words: &WordSet, cap: usize) -> Result<DeltaSets, TermError> {
    let vars: Vec<Var> = content_of_words(words).into_iter().collect();
    if vars.len() > cap {
        return Err(TermError::DeltaCap { vars: vars.len(), cap });
    }
    let index: BTreeMap<&Var, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();

    // Per word: occurrence count of each variable index, and the largest
    // variable index it contains (the point where it becomes fully decided).
    let profiles: Vec<(BTreeMap<usize, usize>, usize)> = words
        .iter()
        .map(|w| {
            let mut occ = BTreeMap::new();
            for l in &w.letters {
                *occ.entry(index[l]).or_insert(0) += 1;
            }
            let last = *occ.keys().next_back().expect("words are nonempty");
            (occ, last)
        })
        .collect();

    let mut hits = vec![0usize; profiles.len()];
    let mut chosen = vec![false; vars.len()];
    let mut out = DeltaSets::new();
    delta_search(0, &profiles, &mut hits, &mut chosen, &vars, &mut out);
    Ok(out)
}

fn delta_search(
    depth: usize,
    profiles: &[(BTreeMap<usize, usize>, usize)],
    hits: &mut [usize],
    chosen: &mut [bool],
    vars: &[Var],
    out: &mut DeltaSets,
) {
    if depth == vars.len() {
        if chosen.iter().any(|&c| c) {
            out.insert(
                vars.iter()
                    .zip(chosen.iter())
                    .filter(|(_, &c)| c)
                    .map(|(v, _)| v.clone())
                    .collect(),
            );
        }
        return;
    }
    // Leave `depth` out.
    let excluded_ok = profiles
        .iter()
        .zip(hits.iter())
        .all(|((_, last), &h)| *last != depth || h == 1);
    if excluded_ok {
        delta_search(depth + 1, profiles, hits, chosen, vars, out);
    }
    // Put `depth` in.
    let included_ok = profiles
        .iter()
        .zip(hits.iter())
        .all(|((occ, _), &h)| match occ.get(&depth) {
            Some(&k) => k == 1 && h == 0,
            None => true,
        });
    if included_ok {
        for ((occ, _), h) in profiles.iter().zip(hits.iter_mut()) {
            if occ.contains_key(&depth) {
                *h += 1;
            }
        }
        chosen[depth] = true;
        let finished_ok = profiles
            .iter()
            .zip(hits.iter())
            .all(|((_, last), &h)| *last != depth || h == 1);
        if finished_ok {
            delta_search(depth + 1, profiles, hits, chosen, vars, out);
        }
        chosen[depth] = false;
        for ((occ, _), h) in profiles.iter().zip(hits.iter_mut()) {
            if occ.contains_key(&depth) {
                *h -= 1;
            }
        }
    }
}

/// A map from variables to terms, extended homomorphically to all terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Var, image: Term) -> Option<Term> {
        self.map.insert(v, image)
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> VarSet {
        self.map.keys().cloned().collect()
    }

    pub fn covers(&self, vars: &VarSet) -> bool {
        vars.iter().all(|v| self.map.contains_key(v))
    }

    /// Maps every variable in `vars` to itself.
    pub fn identity_on(vars: &VarSet, commutative: bool) -> Self {
        Substitution {
            map: vars
                .iter()
                .map(|v| (v.clone(), Term::var(v.clone(), commutative)))
                .collect(),
        }
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &Substitution) -> Result<Substitution, TermError> {
        let mut map = BTreeMap::new();
        for (v, t) in &inner.map {
            map.insert(v.clone(), self.apply(t)?);
        }
        Ok(Substitution { map })
    }

    /// The image of a word: the set product of the images of its letters.
    pub fn apply_word(&self, w: &Word, commutative: bool) -> Result<Term, TermError> {
        let mut acc: Option<Term> = None;
        for l in &w.letters {
            let image = self.map.get(l).ok_or_else(|| TermError::Unmapped(l.clone()))?;
            acc = Some(match acc {
                None => image.in_mode(commutative),
                Some(prefix) => prefix.product(image),
            });
        }
        Ok(acc.expect("words are nonempty"))
    }

    /// The image of a term: the union of the images of its words, in the
    /// term's mode.
    pub fn apply(&self, t: &Term) -> Result<Term, TermError> {
        let mut words = BTreeSet::new();
        for w in &t.words {
            words.extend(self.apply_word(w, t.commutative)?.words);
        }
        Ok(Term {
            words,
            commutative: t.commutative,
        })
    }
}

pub fn substitute(phi: &Substitution, t: &Term) -> Result<Term, TermError> {
    phi.apply(t)
}

/// A map from variables to elements of a finite semiring.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<Var, ElemId>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Var, e: ElemId) -> Option<ElemId> {
        self.map.insert(v, e)
    }

    pub fn get(&self, v: &Var) -> Option<ElemId> {
        self.map.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, ElemId)> {
        self.map.iter().map(|(v, &e)| (v, e))
    }

    /// `x=1, y=a` using the element names of `s`.
    pub fn describe(&self, s: &FiniteSemiring) -> String {
        self.map
            .iter()
            .map(|(v, &e)| format!("{v}={}", s.name(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_names(&self, s: &FiniteSemiring) -> BTreeMap<String, String> {
        self.map
            .iter()
            .map(|(v, &e)| (v.to_string(), s.name(e).to_string()))
            .collect()
    }
}

impl FromIterator<(Var, ElemId)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, ElemId)>>(iter: I) -> Self {
        Assignment {
            map: iter.into_iter().collect(),
        }
    }
}

pub fn evaluate_word(w: &Word, s: &FiniteSemiring, asg: &Assignment) -> Result<ElemId, TermError> {
    let mut acc: Option<ElemId> = None;
    for l in &w.letters {
        let e = asg.get(l).ok_or_else(|| TermError::Unassigned(l.clone()))?;
        if e >= s.size() {
            return Err(TermError::ElementOutOfRange(e));
        }
        acc = Some(match acc {
            None => e,
            Some(a) => s.mul(a, e),
        });
    }
    Ok(acc.expect("words are nonempty"))
}

/// Evaluates `t` in `s`: words multiply left to right, the term sums its
/// words.
pub fn evaluate(t: &Term, s: &FiniteSemiring, asg: &Assignment) -> Result<ElemId, TermError> {
    let mut acc: Option<ElemId> = None;
    for w in &t.words {
        let e = evaluate_word(w, s, asg)?;
        acc = Some(match acc {
            None => e,
            Some(a) => s.add(a, e),
        });
    }
    Ok(acc.expect("terms are nonempty"))
}
