use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use proptest::prelude::*;
use regwt_core::duality::{classify, effective_row};
use regwt_core::lattice::GradingLattice;
use regwt_core::{enumerate_regular, signature, WeightSystem};

fn regular_up_to(h_max: u64) -> Vec<WeightSystem> {
    (2..=h_max).flat_map(enumerate_regular).collect()
}

#[test]
fn exponent_symmetry_and_milnor_number() {
    for w in regular_up_to(40) {
        let data = w.require_regular().unwrap();
        let m = &data.exponents;
        let h = w.h() as i64;
        for i in 0..m.len() {
            assert_eq!(m[i] + m[m.len() - 1 - i], h, "{w}");
        }
        let mu: Ratio<i64> = w
            .weights()
            .iter()
            .map(|&a| Ratio::new(h - a as i64, a as i64))
            .product();
        assert!(mu.is_integer(), "{w}");
        assert_eq!(mu.to_integer(), data.mu as i64, "{w}");
        let chi_at_one: i64 = data.chi.to_i64s().unwrap().iter().sum();
        assert_eq!(chi_at_one, data.mu as i64);
    }
}

#[test]
fn positive_genus_forces_nonpositive_epsilon() {
    let violations: Vec<String> = regular_up_to(40)
        .into_iter()
        .filter(|w| signature(w).unwrap().genus >= 1 && w.epsilon() > 0)
        .map(|w| w.to_string())
        .collect();
    assert!(violations.is_empty(), "genus >= 1 with ε > 0: {violations:?}");
}

#[test]
fn family_rows_match_signatures() {
    for w in regular_up_to(60) {
        for t in classify(&w).unwrap() {
            let sig = signature(&w).unwrap();
            assert_eq!(sig.genus, 0, "{w}");
            assert_eq!(sig.alphas, effective_row(t.family.signature_row()), "{w} as {}", t.family);
        }
    }
}

fn sample(pool: &'static [WeightSystem]) -> impl Strategy<Value = WeightSystem> {
    (0..pool.len()).prop_map(move |i| pool[i])
}

fn regular_pool() -> &'static [WeightSystem] {
    static POOL: std::sync::OnceLock<Vec<WeightSystem>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| regular_up_to(30))
}

fn dual_type_pool() -> &'static [WeightSystem] {
    static POOL: std::sync::OnceLock<Vec<WeightSystem>> = std::sync::OnceLock::new();
    POOL.get_or_init(|| {
        regular_up_to(40)
            .into_iter()
            .filter(|w| !classify(w).unwrap().is_empty())
            .collect()
    })
}

fn signature_triple() -> impl Strategy<Value = [u64; 3]> {
    [2u64..8, 2u64..8, 2u64..8]
}

fn coords() -> impl Strategy<Value = [i64; 3]> {
    [-20i64..20, -20i64..20, -20i64..20]
}

proptest! {
    #[test]
    fn signature_ignores_weight_order(w in sample(regular_pool()), p in 0usize..6) {
        let perm = regwt_core::PERMUTATIONS[p];
        let moved = w.permuted(perm);
        prop_assert_eq!(signature(&moved).unwrap(), signature(&w).unwrap());
    }

    #[test]
    fn classification_ignores_weight_order(w in sample(dual_type_pool()), p in 0usize..6) {
        let moved = w.permuted(regwt_core::PERMUTATIONS[p]);
        prop_assert_eq!(classify(&moved).unwrap(), classify(&w).unwrap());
    }

    #[test]
    fn lattice_equality_is_a_congruence(alphas in signature_triple(), a in coords(), b in coords(), k in -5i64..5) {
        let lat = GradingLattice::new(&alphas).unwrap();
        let (x, y) = (lat.element(&a), lat.element(&b));
        let sum: Vec<i64> = (0..3).map(|i| a[i] + b[i]).collect();
        prop_assert_eq!(lat.add(&x, &y), lat.element(&sum));
        prop_assert_eq!(lat.scale(k, &x), lat.element(&a.map(|c| k * c)));

        // Moving along a relation X_i^{α_i} = X_j^{α_j} keeps the class.
        let mut shifted = a;
        shifted[0] += alphas[0] as i64;
        shifted[1] -= alphas[1] as i64;
        let x2 = lat.element(&shifted);
        prop_assert_eq!(&x2, &x);
        prop_assert_eq!(lat.add(&x2, &y), lat.add(&x, &y));
        prop_assert_eq!(lat.scale(k, &x2), lat.scale(k, &x));
        prop_assert_eq!(lat.degree(&lat.add(&x, &y)), lat.degree(&x) + lat.degree(&y));
    }

    #[test]
    fn degree_zero_is_torsion(alphas in signature_triple(), a in coords(), b in coords()) {
        let lat = GradingLattice::new(&alphas).unwrap();
        let (u, v) = (lat.element(&a), lat.element(&b));
        let t = lat.sub(&lat.scale(lat.degree(&u), &v), &lat.scale(lat.degree(&v), &u));
        prop_assert_eq!(lat.degree(&t), 0);
        prop_assert_eq!(lat.scale(lat.alpha() as i64, &t), lat.zero());
    }

    #[test]
    fn degree_is_onto(alphas in signature_triple()) {
        let lat = GradingLattice::new(&alphas).unwrap();
        let g = lat.generator_degrees().iter().fold(0i64, |g, &d| g.gcd(&d));
        prop_assert_eq!(g, 1);
    }
}

#[test]
fn catalog_counts_are_stable() {
    let mut per_h: BTreeMap<u64, usize> = BTreeMap::new();
    for w in dual_type_pool() {
        *per_h.entry(w.h()).or_default() += 1;
    }
    assert_eq!(per_h.get(&2), Some(&1));
    assert!(dual_type_pool().contains(&WeightSystem::new([3, 8, 12], 24).unwrap()));
    assert!(dual_type_pool().contains(&WeightSystem::new([6, 8, 9], 24).unwrap()));
}
