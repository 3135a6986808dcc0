//! Seeded random schemes and words, and the randomized checks run over them.
//! Instance `i` of a sweep with seed `s` is drawn from its own generator
//! seeded with `s + i`, so sequential and parallel runs see the same inputs.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::braid::{defining_relators, BraidContext, RelationKind};
use crate::centre::{centre_group, centre_rank_formula, cross_check_torsion};
use crate::par::{self, Execution};
use crate::scheme::{disjoint_union, NegativeColourScheme};

pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeShape {
    pub max_colours: usize,
    pub max_edges: usize,
    pub min_degree: u64,
    pub max_degree: u64,
}

impl SchemeShape {
    /// Up to 7 colours, 12 edges, degrees in `[1, 6]`.
    pub const STANDARD: SchemeShape = SchemeShape {
        max_colours: 7,
        max_edges: 12,
        min_degree: 1,
        max_degree: 6,
    };

    /// As [`SchemeShape::STANDARD`] with degrees in `[2, 6]`.
    pub const VERY_COMPOSITE: SchemeShape = SchemeShape {
        min_degree: 2,
        ..SchemeShape::STANDARD
    };
}

/// A connected scheme: a random spanning tree plus random extra edges.
pub fn random_connected_scheme<R: Rng>(rng: &mut R, shape: SchemeShape) -> NegativeColourScheme {
    let r = rng.random_range(1..=shape.max_colours);
    let mut order: Vec<usize> = (1..=r).collect();
    order.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..r {
        let j = rng.random_range(0..i);
        let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
        edges.insert((a, b));
    }
    let possible = r * (r - 1) / 2;
    let target = rng.random_range(edges.len()..=possible.min(shape.max_edges).max(edges.len()));
    while edges.len() < target {
        let a = rng.random_range(1..=r);
        let b = rng.random_range(1..=r);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let degrees: Vec<i64> = (0..r)
        .map(|_| rng.random_range(shape.min_degree..=shape.max_degree) as i64)
        .collect();
    NegativeColourScheme::new(r, edges.into_iter().map(|(a, b)| (a as i64, b as i64)), &degrees)
        .expect("generated scheme is valid")
}

pub fn random_schemes(seed: u64, count: usize, shape: SchemeShape) -> Vec<NegativeColourScheme> {
    (0..count)
        .map(|i| random_connected_scheme(&mut instance_rng(seed, i), shape))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSummary {
    pub check: &'static str,
    pub seed: u64,
    pub cases: usize,
    /// Schemes (as JSON) on which the check failed.
    pub failures: Vec<Value>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

fn summarize(check: &'static str, seed: u64, results: Vec<Option<Value>>) -> SweepSummary {
    SweepSummary {
        check,
        seed,
        cases: results.len(),
        failures: results.into_iter().flatten().collect(),
    }
}

/// SNF rank against `s − r + t`.
pub fn rank_sweep(exec: Execution, seed: u64, count: usize) -> SweepSummary {
    let results = par::map_range(exec, count, |i| {
        let s = random_connected_scheme(&mut instance_rng(seed, i), SchemeShape::STANDARD);
        (centre_group(&s).rank() != centre_rank_formula(&s)).then(|| s.to_json())
    });
    summarize("rank", seed, results)
}

/// SNF torsion against the Diophantine route at `N` and `2N`.
pub fn torsion_sweep(exec: Execution, seed: u64, count: usize) -> SweepSummary {
    let results = par::map_range(exec, count, |i| {
        let s = random_connected_scheme(&mut instance_rng(seed, i), SchemeShape::VERY_COMPOSITE);
        (!cross_check_torsion(&s).agree).then(|| s.to_json())
    });
    summarize("torsion", seed, results)
}

/// `D(a ⊔ b) ≅ D(a) ⊕ D(b)`.
pub fn direct_sum_sweep(exec: Execution, seed: u64, count: usize) -> SweepSummary {
    let results = par::map_range(exec, count, |i| {
        let mut rng = instance_rng(seed, i);
        let a = random_connected_scheme(&mut rng, SchemeShape::STANDARD);
        let b = random_connected_scheme(&mut rng, SchemeShape::STANDARD);
        let u = disjoint_union(&a, &b);
        let lhs = centre_group(&u).invariants();
        let rhs = centre_group(&a).invariants().direct_sum(&centre_group(&b).invariants());
        (lhs != rhs).then(|| json!({"a": a.to_json(), "b": b.to_json()}))
    });
    summarize("direct_sum", seed, results)
}

/// A word token: generator text and exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub generator: String,
    pub exponent: i64,
}

impl Token {
    fn inverse(&self) -> Token {
        Token {
            generator: self.generator.clone(),
            exponent: -self.exponent,
        }
    }
}

/// Splits well-formed word text (`a[1,2]^-1 b[1,3]`) into tokens.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .map(|t| match t.split_once('^') {
            Some((g, e)) => Token {
                generator: g.to_string(),
                exponent: e.parse().expect("integer exponent"),
            },
            None => Token {
                generator: t.to_string(),
                exponent: 1,
            },
        })
        .collect()
}

pub fn render(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| {
            if t.exponent == 1 {
                t.generator.clone()
            } else {
                format!("{}^{}", t.generator, t.exponent)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A random word of `len` letters over all generators of the context, `b`
/// letters restricted to edges, exponents in `[-3, 3] \ {0}`.
pub fn random_word_tokens<R: Rng>(rng: &mut R, context: &BraidContext, len: usize) -> Vec<Token> {
    let r = context.scheme().r();
    let n = context.surface().cycles();
    let edges = context.scheme().edges();
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        let use_b = n == 0 || (!edges.is_empty() && rng.random_bool(0.3));
        let generator = if use_b {
            if edges.is_empty() {
                break;
            }
            let (a, b) = edges[rng.random_range(0..edges.len())];
            format!("b[{a},{b}]")
        } else {
            format!("a[{},{}]", rng.random_range(1..=r), rng.random_range(1..=n))
        };
        let mut exponent = rng.random_range(1..=3);
        if rng.random_bool(0.5) {
            exponent = -exponent;
        }
        out.push(Token { generator, exponent });
    }
    out
}

/// Inserts relators of the presentation, or free cancellations `x x⁻¹`, at
/// random positions.
pub struct RewriteOracle {
    relators: Vec<(RelationKind, Vec<Token>)>,
}

impl RewriteOracle {
    pub fn new(context: &Arc<BraidContext>) -> Self {
        RewriteOracle {
            relators: defining_relators(context)
                .into_iter()
                .map(|(k, t)| (k, tokenize(&t)))
                .collect(),
        }
    }

    pub fn rewrite<R: Rng>(&self, rng: &mut R, word: &[Token]) -> Vec<Token> {
        let at = rng.random_range(0..=word.len());
        let insert: Vec<Token> = if word.is_empty() || rng.random_bool(0.8) {
            let (_, rel) = &self.relators[rng.random_range(0..self.relators.len())];
            if rng.random_bool(0.5) {
                rel.iter().rev().map(Token::inverse).collect()
            } else {
                // cyclic conjugate of a relator is again a relator
                let shift = rng.random_range(0..rel.len().max(1));
                rel[shift..].iter().chain(&rel[..shift]).cloned().collect()
            }
        } else {
            let t = &word[rng.random_range(0..word.len())];
            vec![t.clone(), t.inverse()]
        };
        let mut out = word[..at].to_vec();
        out.extend(insert);
        out.extend_from_slice(&word[at..]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{normal_form, parse_word};
    use crate::scheme::analyze_graph;

    #[test]
    fn schemes_are_connected_and_bounded() {
        for s in random_schemes(7, 200, SchemeShape::STANDARD) {
            assert!(analyze_graph(&s).is_connected());
            assert!(s.r() <= 7 && s.edge_count() <= 12);
            assert!(s.degrees().iter().all(|&k| (1..=6).contains(&k)));
        }
        assert!(random_schemes(3, 50, SchemeShape::VERY_COMPOSITE)
            .iter()
            .all(NegativeColourScheme::very_composite));
    }

    #[test]
    fn sweeps_are_reproducible() {
        let a = random_schemes(11, 20, SchemeShape::STANDARD);
        let b = random_schemes(11, 20, SchemeShape::STANDARD);
        assert_eq!(a, b);
        assert_eq!(
            rank_sweep(Execution::Sequential, 5, 30),
            rank_sweep(Execution::Parallel, 5, 30)
        );
    }

    #[test]
    fn tokens_round_trip() {
        let text = "a[1,2]^-1 b[1,3] a[2,1]^4";
        assert_eq!(render(&tokenize(text)), text);
    }

    #[test]
    fn rewrites_preserve_the_element() {
        let s = NegativeColourScheme::new(3, [(1, 2), (2, 3)], &[2, 4, 6]).unwrap();
        let ctx = BraidContext::new(&s, 1);
        let oracle = RewriteOracle::new(&ctx);
        let mut rng = instance_rng(1, 0);
        let w = random_word_tokens(&mut rng, &ctx, 8);
        let mut v = w.clone();
        for _ in 0..10 {
            v = oracle.rewrite(&mut rng, &v);
        }
        let nf = |t: &[Token]| normal_form(&parse_word(&render(t), &ctx).unwrap().word);
        assert_eq!(nf(&w), nf(&v));
    }
}
