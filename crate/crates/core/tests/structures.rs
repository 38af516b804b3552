//! Invariants of cones, posets and rewriting certificates.

use oddsig_core::freesig::{
    abelianize_mod2, check_certificate, derive_witness_from_mycielski, sigma1_of_walk,
};
use oddsig_core::homposet::{
    barycentric_subdivision, chain_poset, dismantle_with_order, hom_complex, is_crown,
    is_dismantlable, q_poset, strict_order_indicator, z2_crown, Poset,
};
use oddsig_core::mycielski::{
    base_cycle, class_member, coind2_certificate_search, find_homomorphism, mycielskian,
    CoindSearch, HomSearch, Homomorphism,
};
use oddsig_core::oracle::{chromatic_number, is_graph_isomorphic};
use oddsig_core::sig2::{build_quotient, detect};
use oddsig_core::Graph;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Transitive closure of a random relation compatible with `0 < 1 < ... < n-1`.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |keep| {
            let mut rel = vec![vec![false; n]; n];
            for i in 0..n {
                rel[i][i] = true;
                for j in i + 1..n {
                    rel[i][j] = keep[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][k] && rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            let labels = (0..n).map(|i| i.to_string()).collect();
            Poset::from_fn(labels, |i, j| rel[i][j]).unwrap()
        })
    })
}

#[test]
fn cones_over_odd_cycles_have_chromatic_number_four() {
    for n in [3, 5, 7] {
        for q in 1..=3 {
            let g = mycielskian(&Graph::cycle(n), q).unwrap().graph;
            assert_eq!(chromatic_number(&g, 5), Some(4), "M_{q}(C_{n})");
            assert!(detect(&g).unwrap().is_yes(), "M_{q}(C_{n})");
        }
    }
}

#[test]
fn class_members_reach_their_index() {
    assert!(is_graph_isomorphic(
        &class_member(3, &[1]).unwrap(),
        &Graph::complete(3)
    ));
    assert!(is_graph_isomorphic(
        &class_member(3, &[2]).unwrap(),
        &Graph::cycle(5)
    ));
    for h in [&[1, 1][..], &[2, 1], &[1, 2], &[2, 2]] {
        assert_eq!(chromatic_number(&class_member(4, h).unwrap(), 5), Some(4));
    }
    assert_eq!(
        chromatic_number(&class_member(5, &[1, 1, 1]).unwrap(), 6),
        Some(5)
    );
}

#[test]
fn witnesses_through_found_homomorphisms() {
    for target in [
        Graph::complete(4),
        Graph::complete(5),
        class_member(4, &[2, 2]).unwrap(),
    ] {
        let CoindSearch::Found { cone, hom, .. } =
            coind2_certificate_search(&target, 3, 9, 1_000_000)
        else {
            panic!("no cone maps to {:?}", target.edges());
        };
        let cert = derive_witness_from_mycielski(&cone, &hom).unwrap();
        assert!(check_certificate(&target, &cert));
        let walk = base_cycle(&cone, &hom).unwrap();
        assert_eq!(sigma1_of_walk(&target, &walk), Some(cert.start.clone()));
        let span = build_quotient(&target);
        assert_eq!(
            span.basis()
                .contains(&abelianize_mod2(&target, &cert.start)),
            Ok(true)
        );
    }
    assert!(matches!(
        coind2_certificate_search(&Graph::cycle(7), 2, 7, 100_000),
        CoindSearch::NoneFound
    ));
}

#[test]
fn homomorphism_search_respects_colourability() {
    let g = mycielskian(&Graph::cycle(5), 1).unwrap().graph;
    let HomSearch::Found(found) = find_homomorphism(&g, &Graph::complete(4), 100_000) else {
        panic!("M_1(C_5) is 4-colourable");
    };
    assert!(found.verify().is_ok());
    assert!(Homomorphism::new(g.clone(), Graph::complete(4), found.map).is_ok());
    assert!(Homomorphism::identity(&g).verify().is_ok());
    assert!(matches!(
        find_homomorphism(&g, &Graph::complete(3), 100_000),
        HomSearch::NoneFound
    ));
}

#[test]
fn odd_cycle_complexes_are_crowns() {
    for n in [3, 5, 7] {
        let c = hom_complex(&Graph::cycle(n), 10_000).unwrap();
        assert_eq!(c.len(), 4 * n);
        assert!(is_crown(c.z2()), "C_{n}");
    }
    assert!(!is_crown(
        hom_complex(&Graph::complete(4), 10_000).unwrap().z2()
    ));
    assert!(is_crown(&q_poset(1)));
    assert_eq!(strict_order_indicator(z2_crown(5).poset()).count_ones(), 20);
}

#[test]
fn subdivision_counts_chains() {
    // Q_1 is a 4-crown: 4 points and 4 comparable pairs.
    let s = barycentric_subdivision(&q_poset(1), 1000).unwrap();
    assert_eq!(s.len(), 8);
    assert!(is_crown(&s));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // The dismantling result is independent of the order of removals, up to
    // the size of the core.
    #[test]
    fn dismantling_core_size_is_order_independent(p in arb_poset(9), seed in any::<u64>()) {
        let first = dismantle_with_order(&p, &[], |c| c[0]);
        let mut rng = StdRng::seed_from_u64(seed);
        let random = dismantle_with_order(&p, &[], |c| c[rng.gen_range(0..c.len())]);
        prop_assert_eq!(first.core.len(), random.core.len());
    }

    #[test]
    fn posets_with_extrema_dismantle(p in arb_poset(8)) {
        if p.minimal_elements().len() == 1 || p.maximal_elements().len() == 1 {
            prop_assert!(is_dismantlable(&p));
        }
    }

    #[test]
    fn chain_poset_elements_are_chains(p in arb_poset(6)) {
        let (s, chains) = chain_poset(&p, 10_000).unwrap();
        prop_assert_eq!(s.len(), chains.len());
        for c in &chains {
            for w in c.windows(2) {
                prop_assert!(p.lt(w[0], w[1]));
            }
        }
        for i in 0..s.len() {
            for j in 0..s.len() {
                let subset = chains[i].iter().all(|x| chains[j].contains(x));
                prop_assert_eq!(s.leq(i, j), subset);
            }
        }
    }
}
