//! Finite semirings given by Cayley tables.
//!
//! Elements are indices into the carrier internally and names at the
//! interface. Tables are row-major with the row as the left operand.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element in a [`FiniteSemiring`] carrier.
pub type ElemId = usize;

/// Default carrier-size bound for [`is_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 8;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["S7", "S7_0", "D2", "trivial"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddCommutative,
    AddIdempotent,
    AddAssociative,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::AddCommutative => "a+b = b+a",
            Axiom::AddIdempotent => "a+a = a",
            Axiom::AddAssociative => "(a+b)+c = a+(b+c)",
            Axiom::MulAssociative => "(ab)c = a(bc)",
            Axiom::LeftDistributive => "a(b+c) = ab+ac",
            Axiom::RightDistributive => "(a+b)c = ac+bc",
        })
    }
}

/// The first violated axiom, with the element names that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} fails at ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed semiring: {0}")]
    Structural(String),
    #[error("{0}")]
    Axiom(AxiomViolation),
    #[error("element name `{0}` is already in use")]
    NameCollision(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown built-in semiring `{0}` (expected one of S7, S7_0, D2, trivial)")]
    UnknownBuiltin(String),
    #[error("not a partition of the carrier: {0}")]
    NotPartition(String),
    #[error("{0}")]
    Incompatible(CongruenceViolation),
    #[error("isomorphism search supports carriers of at most {cap} elements, got {size}")]
    IsoCap { size: usize, cap: usize },
    #[error("invalid semiring document: {0}")]
    Json(String),
}

/// A finite ai-semiring that passed [`validate_ai_semiring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    elements: Vec<String>,
    add: Vec<Vec<ElemId>>,
    mul: Vec<Vec<ElemId>>,
}

impl FiniteSemiring {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.elements[e]
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.elements.iter().position(|n| n == name)
    }

    #[inline]
    pub fn add(&self, a: ElemId, b: ElemId) -> ElemId {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a][b]
    }

    pub fn add_table(&self) -> &[Vec<ElemId>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<ElemId>] {
        &self.mul
    }

    /// Builds from tables written with element names.
    pub fn from_named_tables(elements: &[&str], add: &[&[&str]], mul: &[&[&str]]) -> Result<Self, AlgebraError> {
        let elements: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let lookup = |table: &[&[&str]]| -> Result<Vec<Vec<ElemId>>, AlgebraError> {
            table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            elements
                                .iter()
                                .position(|e| e == cell)
                                .ok_or_else(|| AlgebraError::UnknownElement(cell.to_string()))
                        })
                        .collect()
                })
                .collect()
        };
        let add = lookup(add)?;
        let mul = lookup(mul)?;
        validate_ai_semiring(elements, add, mul)
    }

    pub fn to_document(&self) -> SemiringDocument {
        let names = |table: &[Vec<ElemId>]| -> Vec<Vec<String>> {
            table
                .iter()
                .map(|row| row.iter().map(|&e| self.elements[e].clone()).collect())
                .collect()
        };
        SemiringDocument {
            elements: self.elements.clone(),
            add: names(&self.add),
            mul: names(&self.mul),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("semiring documents serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let doc: SemiringDocument = serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        doc.into_semiring()
    }
}

/// The semiring file format: element names and both tables by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringDocument {
    pub elements: Vec<String>,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

impl SemiringDocument {
    pub fn into_semiring(self) -> Result<FiniteSemiring, AlgebraError> {
        let (elements, add, mul) = self.into_indexed()?;
        validate_ai_semiring(elements, add, mul)
    }

    /// Resolves names to indices without checking any axiom.
    #[allow(clippy::type_complexity)]
    pub fn into_indexed(self) -> Result<(Vec<String>, Vec<Vec<ElemId>>, Vec<Vec<ElemId>>), AlgebraError> {
        let lookup = |table: &[Vec<String>]| -> Result<Vec<Vec<ElemId>>, AlgebraError> {
            table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            self.elements.iter().position(|e| e == cell).ok_or_else(|| {
                                AlgebraError::Structural(format!("table entry `{cell}` is not an element"))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let add = lookup(&self.add)?;
        let mul = lookup(&self.mul)?;
        Ok((self.elements, add, mul))
    }
}

fn check_structure(elements: &[String], add: &[Vec<ElemId>], mul: &[Vec<ElemId>]) -> Result<(), AlgebraError> {
    let n = elements.len();
    if n == 0 {
        return Err(AlgebraError::Structural("the carrier is empty".into()));
    }
    let distinct: BTreeSet<&String> = elements.iter().collect();
    if distinct.len() != n {
        return Err(AlgebraError::Structural("element names are not distinct".into()));
    }
    if let Some(e) = elements.iter().find(|e| e.is_empty()) {
        return Err(AlgebraError::Structural(format!("empty element name `{e}`")));
    }
    for (label, table) in [("add", add), ("mul", mul)] {
        if table.len() != n {
            return Err(AlgebraError::Structural(format!(
                "{label} table has {} rows, expected {n}",
                table.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Structural(format!(
                    "{label} row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&e| e >= n) {
                return Err(AlgebraError::Structural(format!(
                    "{label} row {i} holds index {bad} >= {n}"
                )));
            }
        }
    }
    Ok(())
}

/// Checks the tables exhaustively and returns the validated algebra, or the
/// first violated axiom in the order: `+` commutative, idempotent,
/// associative; `·` associative; left then right distributivity.
pub fn validate_ai_semiring(
    elements: Vec<String>,
    add: Vec<Vec<ElemId>>,
    mul: Vec<Vec<ElemId>>,
) -> Result<FiniteSemiring, AlgebraError> {
    check_structure(&elements, &add, &mul)?;
    let s = FiniteSemiring { elements, add, mul };
    match first_violation(&s) {
        Some(v) => Err(AlgebraError::Axiom(v)),
        None => Ok(s),
    }
}

fn first_violation(s: &FiniteSemiring) -> Option<AxiomViolation> {
    let n = s.size();
    let violation = |axiom, w: &[ElemId]| AxiomViolation {
        axiom,
        witness: w.iter().map(|&e| s.elements[e].clone()).collect(),
    };
    for a in 0..n {
        for b in 0..n {
            if s.add(a, b) != s.add(b, a) {
                return Some(violation(Axiom::AddCommutative, &[a, b]));
            }
        }
    }
    for a in 0..n {
        if s.add(a, a) != a {
            return Some(violation(Axiom::AddIdempotent, &[a]));
        }
    }
    let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
    for (a, b, c) in triples() {
        if s.add(s.add(a, b), c) != s.add(a, s.add(b, c)) {
            return Some(violation(Axiom::AddAssociative, &[a, b, c]));
        }
    }
    for (a, b, c) in triples() {
        if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
            return Some(violation(Axiom::MulAssociative, &[a, b, c]));
        }
    }
    for (a, b, c) in triples() {
        if s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)) {
            return Some(violation(Axiom::LeftDistributive, &[a, b, c]));
        }
    }
    for (a, b, c) in triples() {
        if s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c)) {
            return Some(violation(Axiom::RightDistributive, &[a, b, c]));
        }
    }
    None
}

/// `S⁰`: `s` with a new element that is an additive identity and a
/// multiplicative zero. The new element is last in carrier order.
pub fn adjoin_zero(s: &FiniteSemiring, zero_name: &str) -> Result<FiniteSemiring, AlgebraError> {
    if s.index_of(zero_name).is_some() {
        return Err(AlgebraError::NameCollision(zero_name.to_string()));
    }
    let n = s.size();
    let z = n;
    let mut elements = s.elements.clone();
    elements.push(zero_name.to_string());
    let extend = |table: &[Vec<ElemId>], f: &dyn Fn(ElemId, ElemId) -> ElemId| -> Vec<Vec<ElemId>> {
        (0..=n)
            .map(|a| {
                (0..=n)
                    .map(|b| if a < n && b < n { table[a][b] } else { f(a, b) })
                    .collect()
            })
            .collect()
    };
    let add = extend(&s.add, &|a, b| if a == z { b } else { a });
    let mul = extend(&s.mul, &|_, _| z);
    validate_ai_semiring(elements, add, mul)
}

/// A partition of the carrier that is compatible with both operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    blocks: Vec<Vec<ElemId>>,
}

impl Congruence {
    pub fn blocks(&self) -> &[Vec<ElemId>] {
        &self.blocks
    }

    pub fn block_of(&self, e: ElemId) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&e))
            .expect("a congruence covers the carrier")
    }
}

/// `(a, a')` and `(b, b')` are related but `a ∘ b` and `a' ∘ b'` are not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceViolation {
    pub op: char,
    pub a: String,
    pub a_prime: String,
    pub b: String,
    pub b_prime: String,
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not compatible with {}: {} ~ {} and {} ~ {} but {}{}{} and {}{}{} are unrelated",
            self.op,
            self.a,
            self.a_prime,
            self.b,
            self.b_prime,
            self.a,
            self.op,
            self.b,
            self.a_prime,
            self.op,
            self.b_prime
        )
    }
}

/// Accepts `partition` iff it partitions the carrier and is compatible with
/// `+` and `·`. Blocks are normalized: sorted inside, ordered by least
/// element.
pub fn validate_congruence(s: &FiniteSemiring, partition: &[Vec<ElemId>]) -> Result<Congruence, AlgebraError> {
    let n = s.size();
    let mut seen = vec![false; n];
    for block in partition {
        if block.is_empty() {
            return Err(AlgebraError::NotPartition("empty block".into()));
        }
        for &e in block {
            if e >= n {
                return Err(AlgebraError::NotPartition(format!("index {e} is out of range")));
            }
            if seen[e] {
                return Err(AlgebraError::NotPartition(format!("`{}` appears twice", s.name(e))));
            }
            seen[e] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&x| !x) {
        return Err(AlgebraError::NotPartition(format!(
            "`{}` is not covered",
            s.name(missing)
        )));
    }
    let mut blocks: Vec<Vec<ElemId>> = partition
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort_unstable_by_key(|b| b[0]);
    let congruence = Congruence { blocks };

    let related = |x: ElemId, y: ElemId| congruence.block_of(x) == congruence.block_of(y);
    for (op, f) in [
        (
            '+',
            FiniteSemiring::add as fn(&FiniteSemiring, ElemId, ElemId) -> ElemId,
        ),
        ('·', FiniteSemiring::mul),
    ] {
        for a in 0..n {
            for a2 in (0..n).filter(|&a2| related(a, a2)) {
                for b in 0..n {
                    for b2 in (0..n).filter(|&b2| related(b, b2)) {
                        if !related(f(s, a, b), f(s, a2, b2)) {
                            return Err(AlgebraError::Incompatible(CongruenceViolation {
                                op,
                                a: s.name(a).into(),
                                a_prime: s.name(a2).into(),
                                b: s.name(b).into(),
                                b_prime: s.name(b2).into(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(congruence)
}

/// Partition given by element names.
pub fn validate_congruence_named(s: &FiniteSemiring, partition: &[&[&str]]) -> Result<Congruence, AlgebraError> {
    let blocks = partition
        .iter()
        .map(|b| {
            b.iter()
                .map(|name| {
                    s.index_of(name)
                        .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    validate_congruence(s, &blocks)
}

/// `s / rho`. Blocks become elements named `{a,b,..}` in block order.
pub fn quotient(s: &FiniteSemiring, rho: &Congruence) -> FiniteSemiring {
    let elements: Vec<String> = rho
        .blocks
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&e| s.name(e)).collect::<Vec<_>>().join(",")))
        .collect();
    let table = |f: fn(&FiniteSemiring, ElemId, ElemId) -> ElemId| -> Vec<Vec<ElemId>> {
        rho.blocks
            .iter()
            .map(|ba| rho.blocks.iter().map(|bb| rho.block_of(f(s, ba[0], bb[0]))).collect())
            .collect()
    };
    let add = table(FiniteSemiring::add);
    let mul = table(FiniteSemiring::mul);
    validate_ai_semiring(elements, add, mul).expect("quotients of ai-semirings by congruences are ai-semirings")
}

/// A bijection `map` (indexed by elements of the first algebra) carrying both
/// tables of the first algebra onto the second, if one exists.
pub fn is_isomorphic(s1: &FiniteSemiring, s2: &FiniteSemiring) -> Result<Option<Vec<ElemId>>, AlgebraError> {
    is_isomorphic_capped(s1, s2, DEFAULT_ISO_CAP)
}

pub fn is_isomorphic_capped(
    s1: &FiniteSemiring,
    s2: &FiniteSemiring,
    cap: usize,
) -> Result<Option<Vec<ElemId>>, AlgebraError> {
    for s in [s1, s2] {
        if s.size() > cap {
            return Err(AlgebraError::IsoCap { size: s.size(), cap });
        }
    }
    if s1.size() != s2.size() {
        return Ok(None);
    }
    let n = s1.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_iso(0, s1, s2, &mut map, &mut used).then_some(map))
}

/// Backtracking over partial bijections; a partial map is pruned as soon as
/// a table cell between assigned elements lands on an assigned element with
/// the wrong image.
fn extend_iso(k: usize, s1: &FiniteSemiring, s2: &FiniteSemiring, map: &mut [ElemId], used: &mut [bool]) -> bool {
    let n = s1.size();
    if k == n {
        return true;
    }
    for target in 0..n {
        if used[target] {
            continue;
        }
        map[k] = target;
        used[target] = true;
        let consistent = (0..=k).all(|a| {
            (0..=k).all(|b| {
                [
                    (s1.add(a, b), s2.add(map[a], map[b])),
                    (s1.mul(a, b), s2.mul(map[a], map[b])),
                ]
                .iter()
                .all(|&(img_src, img)| img_src > k || map[img_src] == img)
            })
        });
        if consistent && extend_iso(k + 1, s1, s2, map, used) {
            return true;
        }
        used[target] = false;
        map[k] = usize::MAX;
    }
    false
}

/// The named algebras `S7` (order 1, a, 0), `S7_0` (order 1, a, 0, ∞), `D2`
/// (order 0, 1 with join and meet) and `trivial` (a single element `1`).
pub fn builtin(name: &str) -> Result<FiniteSemiring, AlgebraError> {
    match name {
        "S7" => FiniteSemiring::from_named_tables(
            &["1", "a", "0"],
            &[&["1", "0", "0"], &["0", "a", "0"], &["0", "0", "0"]],
            &[&["1", "a", "0"], &["a", "0", "0"], &["0", "0", "0"]],
        ),
        "S7_0" => FiniteSemiring::from_named_tables(
            &["1", "a", "0", "∞"],
            &[
                &["1", "0", "0", "1"],
                &["0", "a", "0", "a"],
                &["0", "0", "0", "0"],
                &["1", "a", "0", "∞"],
            ],
            &[
                &["1", "a", "0", "∞"],
                &["a", "0", "0", "∞"],
                &["0", "0", "0", "∞"],
                &["∞", "∞", "∞", "∞"],
            ],
        ),
        "D2" => {
            FiniteSemiring::from_named_tables(&["0", "1"], &[&["0", "1"], &["1", "1"]], &[&["0", "0"], &["0", "1"]])
        }
        "trivial" => FiniteSemiring::from_named_tables(&["1"], &[&["1"]], &[&["1"]]),
        other => Err(AlgebraError::UnknownBuiltin(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s7() -> FiniteSemiring {
        builtin("S7").unwrap()
    }

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap();
        }
        assert!(matches!(builtin("S8"), Err(AlgebraError::UnknownBuiltin(_))));
        assert_eq!(builtin("trivial").unwrap().size(), 1);
    }

    #[test]
    fn s7_cells() {
        let s = s7();
        let (one, a, zero) = (0, 1, 2);
        assert_eq!(s.add(one, a), zero);
        assert_eq!(s.mul(a, a), zero);
        let s70 = builtin("S7_0").unwrap();
        let inf = s70.index_of("∞").unwrap();
        assert_eq!(s70.name(s70.add(inf, 0)), "1");
        assert_eq!(s70.name(s70.mul(2, inf)), "∞");
    }

    #[test]
    fn mutated_s7_multiplication_is_rejected() {
        let s = s7();
        let mut mul = s.mul_table().to_vec();
        mul[1][1] = 1;
        let err = validate_ai_semiring(s.elements().to_vec(), s.add_table().to_vec(), mul).unwrap_err();
        match err {
            AlgebraError::Axiom(v) => {
                assert!(matches!(
                    v.axiom,
                    Axiom::MulAssociative | Axiom::LeftDistributive | Axiom::RightDistributive
                ));
                assert!(!v.witness.is_empty());
            }
            other => panic!("expected an axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors_are_distinct() {
        let err = validate_ai_semiring(
            vec!["a".into(), "b".into()],
            vec![vec![0, 1]],
            vec![vec![0, 0], vec![0, 0]],
        );
        assert!(matches!(err, Err(AlgebraError::Structural(_))));
        let err = validate_ai_semiring(vec!["a".into()], vec![vec![3]], vec![vec![0]]);
        assert!(matches!(err, Err(AlgebraError::Structural(_))));
        let err = validate_ai_semiring(vec!["a".into(), "a".into()], vec![vec![0, 0]; 2], vec![vec![0, 0]; 2]);
        assert!(matches!(err, Err(AlgebraError::Structural(_))));
        let err = validate_ai_semiring(vec![], vec![], vec![]);
        assert!(matches!(err, Err(AlgebraError::Structural(_))));
    }

    #[test]
    fn adjoin_zero_examples() {
        let s70 = adjoin_zero(&s7(), "∞").unwrap();
        assert_eq!(s70, builtin("S7_0").unwrap());
        let d2 = adjoin_zero(&builtin("trivial").unwrap(), "0").unwrap();
        assert!(is_isomorphic(&d2, &builtin("D2").unwrap()).unwrap().is_some());
        let d2z = adjoin_zero(&builtin("D2").unwrap(), "z").unwrap();
        assert_eq!(d2z.size(), 3);
        assert_eq!(adjoin_zero(&s7(), "a"), Err(AlgebraError::NameCollision("a".into())));
    }

    #[test]
    fn adjoined_zero_laws() {
        for name in BUILTIN_NAMES {
            let s = adjoin_zero(&builtin(name).unwrap(), "z").unwrap();
            let z = s.index_of("z").unwrap();
            for x in 0..s.size() {
                assert_eq!(s.add(z, x), x);
                assert_eq!(s.mul(z, x), z);
                assert_eq!(s.mul(x, z), z);
                for y in 0..s.size() {
                    if s.mul(x, y) == z {
                        assert!(x == z || y == z);
                    }
                    if s.add(x, y) == z {
                        assert!(x == z && y == z);
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let s70 = builtin("S7_0").unwrap();
        let rho = validate_congruence_named(&s70, &[&["1", "a", "0"], &["∞"]]).unwrap();
        let q = quotient(&s70, &rho);
        assert!(is_isomorphic(&q, &builtin("D2").unwrap()).unwrap().is_some());

        let bad = validate_congruence_named(&s70, &[&["1", "a"], &["0", "∞"]]);
        assert!(matches!(bad, Err(AlgebraError::Incompatible(_))));

        let singletons: Vec<Vec<ElemId>> = (0..s70.size()).map(|i| vec![i]).collect();
        let id = validate_congruence(&s70, &singletons).unwrap();
        assert!(is_isomorphic(&quotient(&s70, &id), &s70).unwrap().is_some());

        let all = validate_congruence(&s70, &[(0..s70.size()).collect()]).unwrap();
        assert_eq!(quotient(&s70, &all).size(), 1);

        assert!(matches!(
            validate_congruence(&s70, &[vec![0, 1]]),
            Err(AlgebraError::NotPartition(_))
        ));
        assert!(matches!(
            validate_congruence(&s70, &[vec![0, 1, 2], vec![2, 3]]),
            Err(AlgebraError::NotPartition(_))
        ));
    }

    #[test]
    fn isomorphism() {
        assert!(is_isomorphic(&s7(), &builtin("D2").unwrap()).unwrap().is_none());
        assert!(is_isomorphic(&s7(), &builtin("S7_0").unwrap()).unwrap().is_none());
        let map = is_isomorphic(&s7(), &s7()).unwrap().unwrap();
        assert_eq!(map, vec![0, 1, 2]);

        // Relabel S7 as (0, 1, a) and recover the permutation.
        let relabeled = FiniteSemiring::from_named_tables(
            &["0", "1", "a"],
            &[&["0", "0", "0"], &["0", "1", "0"], &["0", "0", "a"]],
            &[&["0", "0", "0"], &["0", "1", "a"], &["0", "a", "0"]],
        )
        .unwrap();
        let map = is_isomorphic(&s7(), &relabeled).unwrap().unwrap();
        assert_eq!(map, vec![1, 2, 0]);
    }

    #[test]
    fn iso_cap() {
        let s = builtin("D2").unwrap();
        assert!(matches!(
            is_isomorphic_capped(&s, &s, 1),
            Err(AlgebraError::IsoCap { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        for name in BUILTIN_NAMES {
            let s = builtin(name).unwrap();
            let text = s.to_json();
            let back = FiniteSemiring::from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn json_structural_error() {
        let text = r#"{"elements": ["x"], "add": [["y"]], "mul": [["x"]]}"#;
        assert!(matches!(
            FiniteSemiring::from_json(text),
            Err(AlgebraError::Structural(_))
        ));
    }
}
