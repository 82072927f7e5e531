use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steenrod::hopf::{default_degree_bound, HopfPresentation};
use steenrod::milnor::{in_dual_span, in_j_basis, DualSymbol, Seq, SeqB};
use steenrod::partitions::enumerate_compositions;
use steenrod::sample::{GroupSampler, Shape};
use steenrod::wire::{group_element_to_json, parse_group_element};
use steenrod::{Element, Filtration, Flavor, GroupElement, Presentation};

fn dual(p: u32) -> Arc<Presentation> {
    let n = if p == 5 { 2 } else { 3 };
    Arc::clone(HopfPresentation::a_dual(p, n, default_degree_bound(p)).unwrap().presentation())
}

fn flavor_of(tag: u8) -> Flavor {
    match tag {
        0 => Flavor::Base,
        t => Flavor::Level(t as u32),
    }
}

/// Elements sampled from one seeded stream; `k` is kept small at p = 5.
fn sample(p: u32, k: usize, tag: u8, seed: u64, count: usize) -> Vec<GroupElement> {
    let k = if p == 5 { k.min(2) } else { k };
    let mut s = GroupSampler::new(&dual(p), k, flavor_of(tag)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| s.sample(&mut rng).unwrap()).collect()
}

fn poly_mul(a: &[Element], b: &[Element]) -> Vec<Element> {
    let alg = a[0].presentation();
    let mut out = vec![Element::zero(alg); a.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `β(α(X))` by expanding the series, truncated at `X^{p^k}`; all
/// coefficients have even degree, so they commute.
fn naive_compose(a: &GroupElement, b: &GroupElement) -> Vec<Element> {
    let alg = a.presentation();
    let p = a.p() as usize;
    let k = a.k();
    let top = p.pow(k as u32);
    let mut alpha = vec![Element::zero(alg); top + 1];
    for (i, c) in a.coeffs().iter().enumerate() {
        alpha[p.pow(i as u32)] = c.clone();
    }
    let mut out = vec![Element::zero(alg); top + 1];
    let mut power = alpha;
    for j in 0..=k {
        for (m, c) in power.iter().enumerate() {
            out[m] = &out[m] + &(b.coeff(j) * c);
        }
        let mut next = power.clone();
        for _ in 1..p {
            next = poly_mul(&next, &power);
        }
        power = next;
    }
    out
}

fn sampled_triple() -> impl Strategy<Value = (u32, usize, u8, u64)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=4, 0u8..=2, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity((p, k, tag, seed) in sampled_triple()) {
        let v = sample(p, k, tag, seed, 3);
        let left = v[0].compose(&v[1]).unwrap().compose(&v[2]).unwrap();
        let right = v[0].compose(&v[1].compose(&v[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverse((p, k, tag, seed) in sampled_triple()) {
        let a = &sample(p, k, tag, seed, 1)[0];
        let e = GroupElement::identity(a.presentation(), a.k(), a.flavor()).unwrap();
        prop_assert_eq!(&a.compose(&e).unwrap(), a);
        prop_assert_eq!(&e.compose(a).unwrap(), a);
        let inv = a.invert_recursive();
        prop_assert!(a.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(a).unwrap().is_identity());
        prop_assert_eq!(&a.invert_closed(), &inv);
        if p != 2 && tag == 0 {
            prop_assert_eq!(&a.invert_split().unwrap(), &inv);
        }
    }

    #[test]
    fn compose_matches_series_substitution(
        p in prop::sample::select(vec![2u32, 3]),
        k in 1usize..=3,
        tag in prop::sample::select(vec![0u8, 2]),
        seed in any::<u64>(),
    ) {
        let k = if p == 3 { k.min(2) } else { k };
        let v = sample(p, k, tag, seed, 2);
        let fast = v[0].compose(&v[1]).unwrap();
        let slow = naive_compose(&v[0], &v[1]);
        let q = p as usize;
        for (m, c) in slow.iter().enumerate().skip(1) {
            let exact_power = (0..=k).find(|&i| q.pow(i as u32) == m);
            match exact_power {
                Some(i) => prop_assert_eq!(c, fast.coeff(i)),
                None => prop_assert!(c.is_zero(), "X^{} has coefficient {}", m, c),
            }
        }
    }

    #[test]
    fn commutators_rise_in_the_filtration((p, k, tag, seed) in sampled_triple(), depth in 0usize..3) {
        let k = k.max(depth + 1);
        let p_k = if p == 5 { k.min(2) } else { k };
        let depth = depth.min(p_k - 1);
        let mut s = GroupSampler::new(&dual(p), p_k, flavor_of(tag)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shaped = Shape { zero_prefix: depth, unit_leading: depth > 0, ..Shape::default() };
        let a = s.sample_shaped(&mut rng, shaped).unwrap();
        let b = s.sample(&mut rng).unwrap();
        let c = a.commutator(&b).unwrap();
        let floor = Filtration::half(depth as u32);
        prop_assert!(c.filtration_level() >= floor, "{} at {}", c, c.filtration_level());
    }

    #[test]
    fn rho_and_projection_are_homomorphisms((p, k, tag, seed) in sampled_triple()) {
        let v = sample(p, k, tag, seed, 2);
        let ab = v[0].compose(&v[1]).unwrap();
        prop_assert_eq!(ab.rho(), v[0].rho().compose(&v[1].rho()).unwrap());
        let j = v[0].k() - 1;
        prop_assert_eq!(
            ab.project(j).unwrap(),
            v[0].project(j).unwrap().compose(&v[1].project(j).unwrap()).unwrap()
        );
    }

    #[test]
    fn json_round_trip((p, k, tag, seed) in sampled_triple()) {
        let a = &sample(p, k, tag, seed, 1)[0];
        let text = serde_json::to_string(&group_element_to_json(a)).unwrap();
        let back = parse_group_element(&text).unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert_eq!(back.flavor(), a.flavor());
    }

    #[test]
    fn j_basis_and_dual_span_are_complementary(
        p in prop::sample::select(vec![2u32, 3, 5]),
        k in 0u32..3,
        e in prop::collection::vec(0u32..2, 0..5),
        r in prop::collection::vec(0u32..30, 0..5),
    ) {
        let e = if p == 2 { SeqB::zero() } else { SeqB::new(&e).unwrap() };
        let r = Seq::new(&r);
        let sym = DualSymbol::dual_of(p, &e, &r);
        prop_assert_ne!(in_j_basis(&e, &r, k, p), in_dual_span(&sym, k));
    }

    #[test]
    fn compositions_are_counted(n in 1usize..=12) {
        let all = enumerate_compositions(n).unwrap();
        prop_assert_eq!(all.len(), 1 << (n - 1));
        prop_assert!(all.iter().all(|c| c.total() == n));
    }
}
