//! Identity checking for finite additively idempotent semirings.
//!
//! Terms are finite nonempty sets of words ([`terms`]), read from text by
//! [`parse`]. Finite algebras are Cayley tables ([`algebra`]), with the
//! built-ins `S7`, `S7_0`, `D2` and `trivial`. Identities are decided either
//! by brute-force evaluation or by the syntactic criteria in [`deciders`].
//! [`graphs`] and [`witness`] cover the odd-cycle identity family and the
//! structural conditions on axioms that rewrite it; [`derivation`] verifies
//! and searches for equational derivations.

pub mod algebra;
pub mod deciders;
pub mod derivation;
pub mod graphs;
pub mod parse;
pub mod terms;
pub mod witness;

pub use algebra::{
    adjoin_zero, builtin, is_isomorphic, quotient, validate_ai_semiring, validate_congruence, FiniteSemiring,
};
pub use deciders::{
    holds_bruteforce, holds_d2, holds_s0_lift, holds_s7, holds_s7_0, BruteForce, D2Syntactic, Decider, S7Syntactic,
    S7ZeroSyntactic, Verdict, ZeroLift,
};
pub use parse::{parse_identity, parse_term, parse_word, ParseError};
pub use terms::{delta_sets, evaluate, Assignment, Identity, Substitution, Term, Var, Word};
