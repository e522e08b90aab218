use commgraph::dla::{model_preset, Model};
use commgraph::graph::{component_of, DEFAULT_COMPONENT_CAP};
use commgraph::matchgate::{
    a1_closed_form, all_pairs_average, component_diameter, majorana_distance, majorana_to_pauli,
    pauli_to_majorana, reflection_automorphism, MajoranaIndex,
};
use commgraph::rational::to_big;
use commgraph::PauliString;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn distance_matches_bfs() {
    for n in [2, 4] {
        let gens = model_preset(Model::Matchgate, n).unwrap();
        for kappa in 0..=2 * n {
            let corner = majorana_to_pauli(&MajoranaIndex::corner(n, kappa).unwrap());
            let comp = component_of(&corner, &gens, None, DEFAULT_COMPONENT_CAP).unwrap();
            assert_eq!(comp.len(), MajoranaIndex::all(n, kappa).len());
            let idx: Vec<MajoranaIndex> = comp.members().iter().map(pauli_to_majorana).collect();
            for (s, a) in idx.iter().enumerate() {
                let dist = comp.bfs(s);
                for (t, b) in idx.iter().enumerate() {
                    assert_eq!(majorana_distance(a, b).unwrap(), dist.distance[t] as u64, "{a} -> {b}");
                }
            }
            assert_eq!(comp.diameter() as u64, component_diameter(n, kappa));
        }
    }
}

#[test]
fn pair_sum_matches_bfs() {
    for n in [2, 4] {
        let gens = model_preset(Model::Matchgate, n).unwrap();
        for kappa in 0..=2 * n {
            let corner = majorana_to_pauli(&MajoranaIndex::corner(n, kappa).unwrap());
            let comp = component_of(&corner, &gens, None, DEFAULT_COMPONENT_CAP).unwrap();
            let len = comp.len() as u64;
            let bfs = BigRational::new(BigInt::from(comp.total_pair_distance()), BigInt::from(len * len));
            assert_eq!(all_pairs_average(n, kappa).unwrap(), bfs, "n={n} kappa={kappa}");
        }
        assert_eq!(to_big(&a1_closed_form(n)), all_pairs_average(n, 1).unwrap());
    }
}

#[test]
fn reflection_preserves_distances() {
    let n = 3;
    for kappa in 1..=3 {
        let all = MajoranaIndex::all(n, kappa);
        for a in &all {
            for b in &all {
                let (ra, rb) = (reflection_automorphism(a), reflection_automorphism(b));
                assert_eq!(majorana_distance(a, b).unwrap(), majorana_distance(&ra, &rb).unwrap());
            }
        }
    }
}

#[test]
fn modes_anticommute() {
    let n = 4;
    let modes: Vec<PauliString> = (1..=2 * n as u32)
        .map(|i| majorana_to_pauli(&MajoranaIndex::new(n, vec![i]).unwrap()))
        .collect();
    for (i, a) in modes.iter().enumerate() {
        for (j, b) in modes.iter().enumerate() {
            assert_eq!(a.commutes_with(b), i == j);
        }
    }
}

proptest! {
    #[test]
    fn pauli_majorana_round_trip(p in (1usize..=6).prop_flat_map(|n| (0..1u64 << (2 * n)).prop_map(move |i| PauliString::from_index(n, i)))) {
        let m = pauli_to_majorana(&p);
        prop_assert_eq!(majorana_to_pauli(&m), p);
        prop_assert!(m.indices().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn distance_is_a_metric(
        (n, k, a, b, c) in (2usize..=5)
            .prop_flat_map(|n| (Just(n), 1..=2 * n))
            .prop_flat_map(|(n, k)| {
                let len = MajoranaIndex::all(n, k).len();
                (Just(n), Just(k), 0..len, 0..len, 0..len)
            })
    ) {
        let all = MajoranaIndex::all(n, k);
        let (a, b, c) = (&all[a], &all[b], &all[c]);
        let d = |x, y| majorana_distance(x, y).unwrap();
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert_eq!(d(a, a), 0);
        prop_assert!(d(a, c) <= d(a, b) + d(b, c));
        prop_assert!(d(a, b) <= component_diameter(n, k));
    }
}
