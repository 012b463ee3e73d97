mod common;

use std::collections::BTreeMap;

use common::s;
use common::displays::{displayed, points, COMPLEX_PAIR, SPLIT_PAIR};

use schouten_core::classify::{canonical_pair, MetricVariant};
use schouten_core::constraints::*;
use schouten_core::groebner::{reduce, GbConfig};
use schouten_core::lie::structure_constant_index;
use schouten_core::poly::{MonomialOrder, MultiPoly};
use schouten_core::segre::SegreType;

const SIGN_CASES: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [-1, 1, -1, 1], [1, 1, -1, -1]];

fn pair(t: &str, signs: [i8; 4]) -> schouten_core::classify::CanonicalPair {
    canonical_pair(&SegreType::parse(t).unwrap(), signs, MetricVariant::SignFlipped).unwrap()
}

#[test]
fn split_pair_system_has_the_displayed_span() {
    for signs in SIGN_CASES {
        let generated = generate_sw_equations(&pair("{(11)(11)}", signs));
        let shown = displayed(&SPLIT_PAIR, signs);
        assert!(same_span(&generated, &shown, &points()), "signs {signs:?}");
        assert_eq!(rank_at_points(&generated, &points()), 16);
    }
}

#[test]
fn split_pair_reduction_forces_twelve_zeros_and_four_relations() {
    let sys = assemble_system(&pair("{(11)(11)}", [1, 1, 1, 1]));
    let red = reduce_sw(&sys).unwrap();
    let name = |v: usize| system_vars().name(v).to_string();
    let mut zeros: Vec<String> = red.forced_zero.iter().map(|&v| name(v)).collect();
    zeros.sort();
    assert_eq!(
        zeros,
        [
            "C_1_2^3", "C_1_2^4", "C_1_3^1", "C_1_3^3", "C_1_4^1", "C_1_4^4", "C_2_3^2", "C_2_3^3", "C_2_4^2",
            "C_2_4^4", "C_3_4^1", "C_3_4^2"
        ]
    );
    assert_eq!(red.relations.len(), 4);
    assert_eq!(red.rank, 16);
    assert!(red.uncertified.is_empty());
    // the relations tie C_13^2 to C_23^1, C_14^2 to C_24^1, and so on
    let mut vs = system_vars();
    for rel in ["C_1_3^2 + C_2_3^1", "C_1_4^2 + C_2_4^1", "C_1_3^4 + C_1_4^3", "C_2_3^4 + C_2_4^3"] {
        let p = vs.parse(rel).unwrap();
        assert!(span_contains(&red.relations, &p, &points()), "{rel}");
    }
}

#[test]
fn split_pair_solution_is_ricci_parallel() {
    for signs in SIGN_CASES {
        let sys = assemble_system(&pair("{(11)(11)}", signs));
        let red = reduce_sw(&sys).unwrap();
        assert!(nabla_ricci_after(&sys, &red.solution_map()).is_zero(), "signs {signs:?}");
    }
}

#[test]
fn both_strategies_agree_on_the_split_pair() {
    let sys = assemble_system(&pair("{(11)(11)}", [1, 1, 1, 1]));
    let red = reduce_sw(&sys).unwrap();
    let cfg = GbConfig::default();
    let gb = solve_small(&sys.sw_eqs, &sys.assumptions, Strategy::GbOnly, &cfg).unwrap();
    let lin = solve_small(&sys.sw_eqs, &sys.assumptions, Strategy::LinearThenGb, &cfg).unwrap();
    assert!(!gb.budget_exhausted && !lin.budget_exhausted);
    assert_eq!(gb.forced_zero, red.forced_zero);
    assert_eq!(lin.forced_zero, red.forced_zero);
    assert_eq!(lin.linear.unwrap().forced_zero, red.forced_zero);
}

#[test]
fn complex_pair_system_contains_the_displayed_equations() {
    for signs in [[1, 1, 1, -1], [-1, 1, -1, 1], [1, -1, 1, -1]] {
        let generated = generate_sw_equations(&pair("{1111~}", signs));
        let shown = displayed(&COMPLEX_PAIR, signs);
        for (line, p) in COMPLEX_PAIR.iter().zip(&shown) {
            assert!(span_contains(&generated, p, &points()), "signs {signs:?}: {line}");
        }
        assert!(same_span(&generated, &shown, &points()), "signs {signs:?}");
    }
}

#[test]
fn same_sign_metric_block_misses_the_displayed_equations() {
    let t = SegreType::parse("{1111~}").unwrap();
    let same_sign = canonical_pair(&t, [1, 1, 1, 1], MetricVariant::SameSign).unwrap();
    let generated = generate_sw_equations(&same_sign);
    let shown = displayed(&COMPLEX_PAIR, [1, 1, 1, 1]);
    assert!(!same_span(&generated, &shown, &points()));
}

#[test]
fn family_substitution_solves_the_complex_pair_system() {
    for delta in [1, -1] {
        for (e2, e3) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            for e1 in [1, -1] {
                let sys = assemble_system(&pair("{1111~}", [e1, e2, e3, -e3]));
                let sub = family_substitution(delta, e2, e3).unwrap();
                for (k, p) in sys.all_equations().iter().enumerate() {
                    assert!(p.substitute(&sub).is_zero(), "delta {delta}, signs {e1} {e2} {e3}: equation {k}");
                }
                let assumptions: Vec<MultiPoly> = sys.assumptions.iter().map(|p| p.substitute(&sub)).collect();
                assert!(assumptions.iter().all(|p| !p.is_zero()));
            }
        }
    }
}

#[test]
fn perturbed_target_breaks_the_ricci_match() {
    let sys = assemble_system(&pair("{1111~}", [1, 1, 1, -1]));
    let mut sub = family_substitution(1, 1, 1).unwrap();
    sub.insert(RHO1, MultiPoly::constant(s("1")));
    assert!(sys.ricci_eqs.iter().any(|p| !p.substitute(&sub).is_zero()));
}

#[test]
fn abelian_point_satisfies_every_generated_system() {
    let zero: BTreeMap<usize, MultiPoly> = (0..C_COUNT).map(|v| (v, MultiPoly::zero())).chain([
        (RHO1, MultiPoly::zero()),
        (RHO2, MultiPoly::zero()),
        (ALPHA, MultiPoly::zero()),
        (BETA, MultiPoly::zero()),
    ])
    .collect();
    for t in ["{(11)(11)}", "{1111~}", "{1(12)}", "{(11)2}", "{(112)}", "{(22)}"] {
        let sys = assemble_system(&pair(t, [1, 1, 1, -1]));
        assert!(sys.sw_eqs.iter().chain(&sys.jacobi_eqs).all(|p| p.substitute(&zero).is_zero()), "{t}");
        let diagonalizable = SegreType::parse(t).unwrap().is_diagonalizable();
        assert_eq!(sys.ricci_eqs.iter().all(|p| p.substitute(&zero).is_zero()), diagonalizable, "{t}");
    }
}

#[test]
fn family_point_reduces_against_a_basis_containing_it() {
    // the reduced system at the family point is zero, so reduction against
    // any basis leaves it zero; check one nonzero polynomial as a control
    let sys = assemble_system(&pair("{1111~}", [1, 1, 1, -1]));
    let mut sub = family_substitution(1, 1, 1).unwrap();
    sub.insert(A, MultiPoly::constant(s("1")));
    let basis: Vec<MultiPoly> = vec![MultiPoly::var(A).sub(&MultiPoly::constant(s("1")))];
    for p in sys.all_equations() {
        assert!(reduce(&p.substitute(&sub), &basis, MonomialOrder::GrevLex).is_zero());
    }
    let c = structure_constant_index(4, 1, 2, 3);
    assert!(!reduce(&MultiPoly::var(c).substitute(&sub), &basis, MonomialOrder::GrevLex).is_zero());
}

#[test]
fn dump_is_deterministic_and_names_every_symbol() {
    let sys = assemble_system(&pair("{1111~}", [1, 1, 1, -1]));
    let text = sys.dump();
    assert_eq!(text, assemble_system(&pair("{1111~}", [1, 1, 1, -1])).dump());
    for needle in ["rho1", "rho2", "alpha", "beta", "C_1_4^1", "[sw]", "[jacobi] 16", "[ricci] 10", "# assume"] {
        assert!(text.contains(needle), "{needle}");
    }
    let split = assemble_system(&pair("{(11)(11)}", [1, 1, 1, 1])).dump();
    // 24 deduplicated components, 4 of them identically zero
    assert!(split.contains("[sw] 20"), "{split}");
    let comps = eq1_components(&pair("{(11)(11)}", [1, 1, 1, 1]).metric, &pair("{(11)(11)}", [1, 1, 1, 1]).ricci);
    assert_eq!(comps.len(), 24);
}
