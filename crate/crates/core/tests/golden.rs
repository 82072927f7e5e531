//! Worked examples with known answers.

use std::sync::Arc;

use steenrod::algebra::{enumerate_component, AlgebraMap};
use steenrod::grouptheory::{lower_central_series, FiniteGroupTable, Family};
use steenrod::hopf::{check_hopf_ideal, GenKind, HopfPresentation, Tensor};
use steenrod::milnor::{in_dual_span, in_j_basis, monomial_of, DualSymbol, Seq, SeqB};
use steenrod::partitions::{enumerate_compositions, extend_f, Composition};
use steenrod::{Element, Error, Filtration, Flavor, Generator, GroupElement, LeadingCase, Presentation};

fn pres(p: u32, gens: &[(&str, i64, Option<u32>)]) -> Arc<Presentation> {
    Presentation::new(
        p,
        gens.iter().map(|&(n, d, c)| Generator::new(n, d, c)).collect(),
    )
    .unwrap()
}

fn gen(alg: &Arc<Presentation>, name: &str) -> Element {
    Element::generator_named(alg, name).unwrap()
}

#[test]
fn presentations() {
    let a = pres(2, &[("zeta1", 1, Some(4)), ("zeta2", 3, Some(2))]);
    assert_eq!(a.generators()[0].cap, Some(4));
    let b = pres(3, &[("tau0", 1, Some(5))]);
    assert_eq!(b.generators()[0].cap, Some(2));
    assert!(matches!(Presentation::new(4, vec![]), Err(Error::NotPrime(4))));
}

#[test]
fn products_and_frobenius() {
    let alg = pres(3, &[("tau0", 1, None), ("xi1", 4, None)]).adjoin_epsilon().unwrap();
    let eps = Element::epsilon(&alg).unwrap();
    assert!((&eps * &eps).is_zero());
    let (t0, x1) = (gen(&alg, "tau0"), gen(&alg, "xi1"));
    assert_eq!(&t0 * &x1, &x1 * &t0);
    assert_eq!((&t0 * &x1).to_string(), "tau0*xi1");
    let b = &x1 * &t0;
    let lead = &Element::one(&alg) + &(&b * &eps);
    assert!(lead.frobenius(1).is_one());
    assert!(alg.adjoin_epsilon().is_err());

    let two = pres(2, &[("zeta1", 1, None), ("zeta2", 3, None)]);
    let s = &gen(&two, "zeta1") + &gen(&two, "zeta2");
    let squares = &gen(&two, "zeta1").pow(2) + &gen(&two, "zeta2").pow(2);
    assert_eq!(s.frobenius(1), squares);
    assert_eq!(s.frobenius(0), s);
    assert!(Arc::ptr_eq(&two.adjoin_epsilon().unwrap(), &two));
}

#[test]
fn eps_reduction() {
    let alg = pres(3, &[("xi1", 4, None)]).adjoin_epsilon().unwrap();
    let a = gen(&alg, "xi1");
    let eps = Element::epsilon(&alg).unwrap();
    let x = &a + &(&a * &eps);
    assert_eq!(x.eps_reduce(), a);
    assert!(eps.eps_reduce().is_zero());
}

#[test]
fn components_of_a22() {
    let alg = pres(2, &[("zeta1", 1, Some(4)), ("zeta2", 3, Some(2))]);
    assert_eq!(enumerate_component(&alg, 1).unwrap().len(), 2);
    assert_eq!(enumerate_component(&alg, 3).unwrap().len(), 4);
    assert_eq!(enumerate_component(&alg, 2).unwrap().len(), 2);
    assert_eq!(enumerate_component(&alg, 11).unwrap().len(), 1);
}

#[test]
fn compositions() {
    let c = |v: &[usize]| Composition::new(v.to_vec()).unwrap();
    let three = enumerate_compositions(3).unwrap();
    let mut expected = vec![c(&[1, 1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[3])];
    expected.sort();
    let mut got = three.clone();
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(enumerate_compositions(1).unwrap(), vec![c(&[1])]);
    assert_eq!(enumerate_compositions(5).unwrap().len(), 16);
    assert_eq!(extend_f(&c(&[1, 2]), 5).unwrap(), c(&[1, 2, 2]));
    assert_eq!(extend_f(&c(&[1]), 2).unwrap(), c(&[1, 1]));
    assert!(extend_f(&c(&[3]), 3).is_err());
}

#[test]
fn leading_eps_inverse() {
    let alg = pres(3, &[("tau0", 1, None)]).adjoin_epsilon().unwrap();
    let c = gen(&alg, "tau0");
    let eps = Element::epsilon(&alg).unwrap();
    let one = Element::one(&alg);
    let a = GroupElement::new(Flavor::Base, vec![&one + &(&c * &eps)]).unwrap();
    let expected = GroupElement::new(Flavor::Base, vec![&one - &(&c * &eps)]).unwrap();
    assert_eq!(a.invert_split().unwrap(), expected);
    assert_eq!(a.invert_closed(), expected);
}

#[test]
fn small_commutator_against_prediction() {
    let alg = pres(2, &[("a", 1, Some(2)), ("b", 3, Some(2))]);
    let (one, zero) = (Element::one(&alg), Element::zero(&alg));
    let alpha = GroupElement::new(Flavor::Base, vec![one.clone(), gen(&alg, "a"), zero.clone()]).unwrap();
    let beta = GroupElement::new(Flavor::Base, vec![one, zero, gen(&alg, "b")]).unwrap();
    let c = alpha.commutator(&beta).unwrap();
    let brute = alpha
        .invert_recursive()
        .compose(&beta.invert_recursive())
        .unwrap()
        .compose(&alpha.compose(&beta).unwrap())
        .unwrap();
    assert_eq!(c, brute);
    let (c1, c2) = alpha.commutator_leading(&beta, LeadingCase::One).unwrap();
    assert_eq!(&c1, c.coeff(1));
    assert_eq!(&c2, c.coeff(2));
    assert!(c.filtration_level() >= Filtration::half(0));
}

#[test]
fn filtration_levels() {
    let alg = pres(3, &[("xi1", 4, None), ("tau1", 5, None), ("x", 17, None)]).adjoin_epsilon().unwrap();
    let (one, zero) = (Element::one(&alg), Element::zero(&alg));
    let eps = Element::epsilon(&alg).unwrap();
    let top = &gen(&alg, "x") * &eps;
    assert_eq!(top.degree(), Some(16));
    let half = GroupElement::new(Flavor::Base, vec![one.clone(), zero.clone(), top.clone()]).unwrap();
    assert_eq!(half.filtration_level(), Filtration::half(1));
    assert_eq!(half.filtration_level().to_string(), "1.5");
    let id = GroupElement::identity(&alg, 2, Flavor::Base).unwrap();
    assert_eq!(id.filtration_level(), Filtration::Top);

    let two = pres(2, &[("a", 3, None)]);
    let one2 = Element::one(&two);
    let g = GroupElement::new(Flavor::Base, vec![one2, Element::zero(&two), gen(&two, "a")]).unwrap();
    assert_eq!(g.filtration_level(), Filtration::integer(1));
    assert_eq!(g.half_quotient(), g);
}

#[test]
fn gpn_membership() {
    let alg = pres(2, &[("zeta1", 1, Some(4)), ("zeta2", 3, Some(2))]);
    let one = Element::one(&alg);
    let z1 = gen(&alg, "zeta1");
    let g = GroupElement::new(Flavor::Base, vec![one.clone(), z1.clone(), Element::zero(&alg)]).unwrap();
    assert!(g.in_gpn(2));
    assert!(!g.in_gpn(0));
    assert!(GroupElement::identity(&alg, 3, Flavor::Base).unwrap().in_gpn(1));
}

#[test]
fn abelian_kernel() {
    let alg = pres(2, &[("zeta1", 1, Some(2))]);
    let g = GroupElement::new(Flavor::Base, vec![Element::one(&alg), gen(&alg, "zeta1")]).unwrap();
    assert!(g.in_abelian_kernel());
    assert!(g.rho().is_identity());
    assert!(GroupElement::identity(&alg, 3, Flavor::Base).unwrap().in_abelian_kernel());
}

#[test]
fn theta_of_a_single_generator() {
    let hopf = HopfPresentation::a_dual(2, 2, 10).unwrap();
    let target = pres(2, &[("a", 1, None)]);
    let images = vec![gen(&target, "a"), Element::zero(&target)];
    let phi = AlgebraMap::new(hopf.presentation(), &target, images).unwrap();
    let g = hopf.theta(&phi, 1).unwrap();
    assert_eq!(g.coeff(1), &gen(&target, "a"));
    assert!(g.coeff(0).is_one());
    let zero = hopf.trivial_assignment(&target).unwrap();
    assert!(hopf.theta(&zero, 2).unwrap().is_identity());
    assert!(hopf.rho_diagram_check(&phi, 1).unwrap());
}

#[test]
fn cocommutativity() {
    for p in [2, 3] {
        let q = HopfPresentation::a_mod_i(p, 0, 3, 200).unwrap();
        assert!(q.cocommutativity_defect(200).unwrap().is_empty());
        assert!(q.primitivity_check());
    }
    let full = HopfPresentation::a_dual(3, 2, 60).unwrap();
    let defects = full.cocommutativity_defect(60).unwrap();
    let (name, tau1) = defects.iter().find(|(n, _)| n == "tau1").unwrap();
    assert_eq!(name, "tau1");
    let t0 = full.gen(GenKind::Tau(0));
    let x1 = full.gen(GenKind::Xi(1));
    let expected = &Tensor::pure(&[x1.clone(), t0.clone()]) - &Tensor::pure(&[t0, x1]);
    assert_eq!(tau1, &expected);
    assert!(!HopfPresentation::a_dual(2, 3, 10).unwrap().primitivity_check());
}

#[test]
fn hopf_ideals() {
    let hopf = HopfPresentation::a_dual(2, 4, 15).unwrap();
    let squares: Vec<Element> = (1..=4).map(|i| hopf.gen(GenKind::Zeta(i)).pow(2)).collect();
    assert!(check_hopf_ideal(&hopf, &squares, 15).unwrap().ok);
    let z2 = hopf.gen(GenKind::Zeta(2));
    let report = check_hopf_ideal(&hopf, &[z2], 15).unwrap();
    assert!(!report.ok);
    assert!(check_hopf_ideal(&hopf, &[], 15).unwrap().ok);
}

#[test]
fn milnor_examples() {
    let none = SeqB::zero();
    let h2 = HopfPresentation::a_dual(2, 3, 20).unwrap();
    assert!(monomial_of(&none, &Seq::zero(), &h2).unwrap().is_one());
    assert_eq!(monomial_of(&none, &Seq::new(&[2, 1]), &h2).unwrap().to_string(), "zeta1^2*zeta2");
    let h3 = HopfPresentation::a_dual(3, 2, 60).unwrap();
    let e1 = SeqB::new(&[0, 1]).unwrap();
    assert_eq!(monomial_of(&e1, &Seq::new(&[1]), &h3).unwrap().to_string(), "tau1*xi1");

    assert!(in_j_basis(&none, &Seq::new(&[2]), 0, 2));
    assert!(!in_j_basis(&none, &Seq::new(&[3, 1]), 1, 2));
    assert!(in_j_basis(&SeqB::new(&[1]).unwrap(), &Seq::zero(), 0, 3));
    assert!(in_dual_span(&DualSymbol::Sq(Seq::new(&[1, 1])), 0));
    let q0 = DualSymbol::dual_of(3, &SeqB::new(&[1]).unwrap(), &Seq::zero());
    assert!(!in_dual_span(&q0, 0));
}

#[test]
fn small_nilpotent_groups() {
    let a2 = HopfPresentation::a_n(2, 2, 30).unwrap();
    let g = FiniteGroupTable::enumerate(a2.presentation(), 2, Family::Full).unwrap();
    assert_eq!(g.order(), 8);
    let lcs = lower_central_series(&g);
    assert!(lcs.class.unwrap() <= 3);
    assert!(lcs.ok);

    let a3 = HopfPresentation::a_n(3, 2, 160).unwrap();
    let ev = FiniteGroupTable::enumerate(a3.presentation(), 2, Family::Even).unwrap();
    let lcs = lower_central_series(&ev);
    assert_eq!(lcs.orders.get(2).copied().unwrap_or(1), 1);
    let trivial = FiniteGroupTable::enumerate(a3.presentation(), 0, Family::Even).unwrap();
    assert_eq!(trivial.order(), 1);
}

/// The cocommutativity defect forces `tau0`, then `xi1^p`, `xi2^p`, … into
/// any ideal with a cocommutative quotient; each step is read off the
/// defect of the next `tau`.
#[test]
fn cocommutativity_forcing_chain() {
    let p = 3;
    let n = 3;
    let full = HopfPresentation::a_dual(p, n, 200).unwrap();
    let mut caps = vec![(GenKind::Tau(0), 1)];
    for i in 1..n {
        let q = full.with_caps(&caps).unwrap();
        let defects = q.cocommutativity_defect(200).unwrap();
        let name = format!("tau{}", i + 1);
        let (_, got) = defects.iter().find(|(g, _)| *g == name).unwrap();
        let xp = q.gen(GenKind::Xi(i)).pow(p as u64);
        let t1 = q.gen(GenKind::Tau(1));
        let expected = &Tensor::pure(&[xp.clone(), t1.clone()]) - &Tensor::pure(&[t1, xp]);
        assert_eq!(got, &expected, "defect at {name}");
        for j in 0..=i {
            let earlier = format!("tau{j}");
            assert!(defects.iter().all(|(g, _)| *g != earlier), "defect at {earlier}");
        }
        caps.push((GenKind::Xi(i), p));
    }
    let q = full.with_caps(&caps).unwrap();
    assert!(q.cocommutativity_defect(200).unwrap().is_empty());
}
