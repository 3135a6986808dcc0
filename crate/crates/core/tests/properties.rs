use std::sync::Arc;

use dbraid_core::braid::{
    invert, multiply, normal_form, parse_word, theta, AllowableCollection, BraidContext, NormalForm,
};
use dbraid_core::centre::{centre_group, centre_rank_formula, character_at};
use dbraid_core::nctorus::nc_parameters;
use dbraid_core::scheme::{analyze_graph, disjoint_union, negate_graph, NegativeColourScheme};
use dbraid_core::sweep::{instance_rng, random_connected_scheme, random_word_tokens, render, SchemeShape};
use dbraid_core::toric::{chop_vertex, DelzantIncidence};
use dbraid_core::zlinalg::{snf, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn scheme() -> impl Strategy<Value = NegativeColourScheme> {
    (1usize..=6).prop_flat_map(|r| {
        let pairs = r * (r - 1) / 2;
        (
            Just(r),
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(1i64..=8, r),
        )
            .prop_map(|(r, mask, degrees)| {
                let edges = (1..=r as i64)
                    .flat_map(|a| ((a + 1)..=r as i64).map(move |b| (a, b)))
                    .zip(mask)
                    .filter(|(_, keep)| *keep)
                    .map(|(e, _)| e);
                NegativeColourScheme::new(r, edges, &degrees).unwrap()
            })
    })
}

fn word(ctx: &Arc<BraidContext>, seed: u64, len: usize) -> NormalForm {
    let tokens = random_word_tokens(&mut instance_rng(seed, 0), ctx, len);
    normal_form(&parse_word(&render(&tokens), ctx).unwrap().word)
}

fn context(seed: u64, genus: usize) -> Arc<BraidContext> {
    let s = random_connected_scheme(
        &mut instance_rng(seed, 1),
        SchemeShape {
            max_colours: 4,
            ..SchemeShape::VERY_COMPOSITE
        },
    );
    BraidContext::new(&s, genus)
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negation_is_an_involution_and_partitions_pairs(s in scheme()) {
        let n = negate_graph(&s);
        prop_assert_eq!(negate_graph(&n), s.clone());
        let r = s.r();
        prop_assert_eq!(s.edge_count() + n.edge_count(), r * (r - 1) / 2);
        prop_assert!(s.edges().iter().all(|&(a, b)| !n.has_edge(a, b)));
    }

    #[test]
    fn rank_is_edges_minus_colours_plus_bipartite_components(s in scheme()) {
        let a = analyze_graph(&s);
        prop_assert_eq!(centre_group(&s).rank(), a.s + a.t - s.r());
        prop_assert_eq!(centre_group(&s).rank(), centre_rank_formula(&s));
    }

    #[test]
    fn rank_ignores_degrees(s in scheme(), scale in 1u64..=5, shift in 0u64..=3) {
        let degrees: Vec<u64> = s.degrees().iter().map(|k| k * scale + shift).collect();
        let t = s.with_degrees(&degrees).unwrap();
        prop_assert_eq!(centre_group(&t).rank(), centre_group(&s).rank());
    }

    #[test]
    fn centre_of_union_is_direct_sum(a in scheme(), b in scheme()) {
        let lhs = centre_group(&disjoint_union(&a, &b)).invariants();
        let rhs = centre_group(&a).invariants().direct_sum(&centre_group(&b).invariants());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_form_factors_the_matrix(
        rows in 1usize..=5,
        cols in 1usize..=5,
        entries in prop::collection::vec(-20i64..=20, 25),
    ) {
        let a = IntMatrix::from_i64(rows, cols, &entries[..rows * cols]);
        let d = snf(&a);
        let uav = d.u.checked_mul(&a).unwrap().checked_mul(&d.v).unwrap();
        prop_assert_eq!(&uav, &d.d);
        prop_assert!(d.u.is_unimodular() && d.v.is_unimodular());
        prop_assert!(d.u.checked_mul(&d.u_inv).unwrap() == IntMatrix::identity(rows));
        let diag = d.diagonal();
        for i in 0..rows {
            for j in 0..cols {
                prop_assert!(i == j || d.d.get(i, j).is_zero());
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            prop_assert!(divides);
        }
    }

    #[test]
    fn multiplication_is_associative_with_inverses(seed in any::<u64>(), genus in 0usize..=2) {
        let ctx = context(seed, genus);
        let x = word(&ctx, seed ^ 1, 6);
        let y = word(&ctx, seed ^ 2, 6);
        let z = word(&ctx, seed ^ 3, 6);
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(multiply(&x, &invert(&x)).unwrap().is_identity());
        prop_assert!(multiply(&invert(&x), &x).unwrap().is_identity());
    }

    #[test]
    fn b_generators_are_central(seed in any::<u64>(), genus in 0usize..=2) {
        let ctx = context(seed, genus);
        let x = word(&ctx, seed ^ 5, 8);
        for &(a, b) in ctx.scheme().edges() {
            let z = normal_form(&parse_word(&format!("b[{a},{b}]"), &ctx).unwrap().word);
            prop_assert_eq!(multiply(&x, &z).unwrap(), multiply(&z, &x).unwrap());
        }
    }

    #[test]
    fn commutators_are_central(seed in any::<u64>(), genus in 1usize..=2) {
        let ctx = context(seed, genus);
        let x = word(&ctx, seed ^ 7, 5);
        let y = word(&ctx, seed ^ 11, 5);
        let c = multiply(&multiply(&x, &y).unwrap(), &invert(&multiply(&y, &x).unwrap())).unwrap();
        prop_assert!(c.is_central());
    }

    #[test]
    fn theta_is_additive(seed in any::<u64>(), genus in 1usize..=2) {
        let ctx = context(seed, genus);
        let y = AllowableCollection::universal(ctx.scheme());
        let commutator = |s: u64| {
            let x = word(&ctx, s, 4);
            let w = word(&ctx, s ^ 0x55, 4);
            multiply(&multiply(&x, &w).unwrap(), &invert(&multiply(&w, &x).unwrap())).unwrap()
        };
        let u = commutator(seed ^ 13);
        let v = commutator(seed ^ 17);
        let sum: Vec<BigInt> = theta(&y, &u).unwrap().iter().zip(theta(&y, &v).unwrap()).map(|(a, b)| a + b).collect();
        let uv = theta(&y, &multiply(&u, &v).unwrap()).unwrap();
        let group = ctx.centre().group();
        let diff: Vec<BigInt> = uv.iter().zip(&sum).map(|(a, b)| a - b).collect();
        prop_assert!(group.is_zero_element(&diff).unwrap());
    }

    #[test]
    fn characters_add(s in scheme(), i in 0u64..1000, j in 0u64..1000, v in prop::collection::vec(-9i64..=9, 15)) {
        let group = centre_group(&s);
        let chi = character_at(&group, &BigInt::from(i));
        let psi = character_at(&group, &BigInt::from(j));
        let x: Vec<BigInt> = v[..s.edge_count()].iter().map(|&c| BigInt::from(c)).collect();
        let lhs = chi.add(&psi).unwrap().evaluate(&group, &x).unwrap();
        let rhs = chi.evaluate(&group, &x).unwrap() + psi.evaluate(&group, &x).unwrap();
        prop_assert_eq!(frac(&lhs), frac(&rhs));
    }

    #[test]
    fn nc_parameters_are_skew_with_empty_diagonal_blocks(s in scheme(), i in 0u64..100, genus in 0usize..=3) {
        let group = centre_group(&s);
        let chi = character_at(&group, &BigInt::from(i));
        let p = nc_parameters(&s, genus, &chi).unwrap();
        let n = 2 * genus;
        for a in 1..=s.r() {
            for b in 1..=s.r() {
                for l in 1..=n {
                    for lp in 1..=n {
                        let x = p.entry(a, l, b, lp);
                        prop_assert!(*x >= BigRational::zero() && *x < BigRational::one());
                        prop_assert_eq!(frac(&(x + p.entry(b, lp, a, l))), BigRational::zero());
                        if a == b || !s.has_edge(a, b) {
                            prop_assert!(x.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chopping_keeps_polytopes_simple(n in 2usize..=4, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=3)) {
        let mut p = DelzantIncidence::hypercube(n);
        for pick in picks {
            let v = pick.index(p.vertex_count()) + 1;
            let facets = p.facet_count();
            let vertices = p.vertex_count();
            p = chop_vertex(&p, v).unwrap().polytope;
            prop_assert_eq!(p.facet_count(), facets + 1);
            prop_assert_eq!(p.vertex_count(), vertices - 1 + n);
            for u in 1..=p.vertex_count() {
                prop_assert_eq!(p.facets_of(u).map(|f| f.len()), Some(n));
            }
        }
    }
}
