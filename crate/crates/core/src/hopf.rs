//! Presented members of the dual Steenrod algebra family as Hopf algebras.
//!
//! Every preset is a monomial quotient of a subalgebra generated by
//! `zeta_i^{2^s}` (p = 2) or `tau_i`, `xi_i^{p^s}` (odd p). The coproduct
//! is determined on generators by
//!
//! ```text
//! mu(g_n)   = sum_k g_{n-k}^{q^k} (x) g_k          (g = zeta or xi, q = 2 or p)
//! mu(tau_n) = sum_k xi_{n-k}^{p^k} (x) tau_k + tau_n (x) 1
//! ```
//!
//! and the antipode by the recursions obtained from `m(1 (x) iota) mu = unit counit`.
//! Generators missing from a preset are zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_presentation, AlgebraMap, Element, Generator, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::group::{Flavor, GroupElement};

/// The role of a generator in a preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Zeta(usize),
    Xi(usize),
    Tau(usize),
}

/// Default generator bound.
pub const DEFAULT_N: usize = 4;

/// Default degree bound `2(p^4 - 1)`.
pub fn default_degree_bound(p: u32) -> i64 {
    2 * ((p as i64).pow(4) - 1)
}

#[derive(Clone)]
pub struct HopfPresentation {
    label: String,
    alg: Arc<Presentation>,
    kinds: Vec<GenKind>,
    shift: u32,
    max_index: usize,
    degree_bound: i64,
    coproducts: Vec<Tensor>,
    antipode: AlgebraMap,
}

impl fmt::Debug for HopfPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfPresentation({})", self.label)
    }
}

fn kind_degree(p: u32, shift: u32, kind: GenKind) -> i64 {
    let p = p as i64;
    match kind {
        GenKind::Zeta(i) => 2i64.pow(shift) * (2i64.pow(i as u32) - 1),
        GenKind::Xi(i) => p.pow(shift) * 2 * (p.pow(i as u32) - 1),
        GenKind::Tau(i) => 2 * p.pow(i as u32) - 1,
    }
}

fn kind_name(p: u32, shift: u32, kind: GenKind) -> String {
    let power = |base: &str, i: usize, q: u32| {
        if shift == 0 {
            format!("{base}{i}")
        } else {
            format!("{base}{i}^{}", (q as u64).pow(shift))
        }
    };
    match kind {
        GenKind::Zeta(i) => power("zeta", i, 2),
        GenKind::Xi(i) => power("xi", i, p),
        GenKind::Tau(i) => format!("tau{i}"),
    }
}

impl HopfPresentation {
    fn build(
        label: String,
        p: u32,
        shift: u32,
        max_index: usize,
        degree_bound: i64,
        specs: Vec<(GenKind, Option<u32>)>,
    ) -> Result<Self> {
        let specs: Vec<_> = specs
            .into_iter()
            .filter(|(k, _)| kind_degree(p, shift, *k) <= degree_bound)
            .collect();
        let gens = specs
            .iter()
            .map(|&(k, cap)| Generator::new(kind_name(p, shift, k), kind_degree(p, shift, k), cap))
            .collect();
        let alg = Presentation::new(p, gens)?;
        let kinds: Vec<GenKind> = specs.iter().map(|(k, _)| *k).collect();
        let mut h = HopfPresentation {
            label,
            alg: Arc::clone(&alg),
            kinds,
            shift,
            max_index,
            degree_bound,
            coproducts: Vec::new(),
            antipode: AlgebraMap::new(&alg, &alg, (0..alg.len()).map(|_| Element::zero(&alg)).collect())
                .expect("zero map is valid"),
        };
        h.coproducts = (0..h.kinds.len()).map(|i| h.generator_coproduct(i)).collect();
        h.antipode = h.build_antipode()?;
        Ok(h)
    }

    /// The (truncated) dual Steenrod algebra: generators of index `<= n_max`
    /// and degree `<= degree_bound`, no relations beyond exterior ones.
    pub fn a_dual(p: u32, n_max: usize, degree_bound: i64) -> Result<Self> {
        let mut specs = Vec::new();
        if p == 2 {
            specs.extend((1..=n_max).map(|i| (GenKind::Zeta(i), None)));
        } else {
            specs.extend((0..=n_max).map(|i| (GenKind::Tau(i), Some(2))));
            specs.extend((1..=n_max).map(|i| (GenKind::Xi(i), None)));
        }
        HopfPresentation::build(
            format!("A_dual(p={p},N={n_max},D={degree_bound})"),
            p,
            0,
            n_max,
            degree_bound,
            specs,
        )
    }

    /// Quotient with `zeta_i^{2^{n-i+1}} = 0` resp. `xi_i^{p^{n-i+1}} = 0`,
    /// generators of index above `n` killed.
    pub fn a_n(p: u32, n: usize, degree_bound: i64) -> Result<Self> {
        let mut specs = Vec::new();
        let q = p as u64;
        let cap = |i: usize| u32::try_from(q.pow((n - i + 1) as u32)).ok();
        if p == 2 {
            specs.extend((1..=n).map(|i| (GenKind::Zeta(i), cap(i))));
        } else {
            specs.extend((0..=n).map(|i| (GenKind::Tau(i), Some(2))));
            specs.extend((1..=n).map(|i| (GenKind::Xi(i), cap(i))));
        }
        HopfPresentation::build(format!("A(p={p},n={n})"), p, 0, n, degree_bound, specs)
    }

    /// The even part of [`a_n`](Self::a_n): only the `xi` generators. For
    /// p = 2 this is the same as `a_n`.
    pub fn a_ev_n(p: u32, n: usize, degree_bound: i64) -> Result<Self> {
        if p == 2 {
            let mut h = HopfPresentation::a_n(p, n, degree_bound)?;
            h.label = format!("A_ev(p={p},n={n})");
            return Ok(h);
        }
        let q = p as u64;
        let specs = (1..=n)
            .map(|i| (GenKind::Xi(i), u32::try_from(q.pow((n - i + 1) as u32)).ok()))
            .collect();
        HopfPresentation::build(format!("A_ev(p={p},n={n})"), p, 0, n, degree_bound, specs)
    }

    /// The subalgebra generated by `zeta_i^{2^k}` (p = 2), `tau_0` and
    /// `xi_i^p` (odd p, k = 1) or `xi_i^{p^k}` (odd p, k >= 2).
    pub fn a_angle(p: u32, k: u32, n_max: usize, degree_bound: i64) -> Result<Self> {
        if k == 0 {
            let mut h = HopfPresentation::a_dual(p, n_max, degree_bound)?;
            h.label = format!("A_angle(p={p},k=0,N={n_max},D={degree_bound})");
            return Ok(h);
        }
        let specs = HopfPresentation::angle_specs(p, k, n_max, None);
        HopfPresentation::build(
            format!("A_angle(p={p},k={k},N={n_max},D={degree_bound})"),
            p,
            k,
            n_max,
            degree_bound,
            specs,
        )
    }

    fn angle_specs(p: u32, k: u32, n_max: usize, cap: Option<u32>) -> Vec<(GenKind, Option<u32>)> {
        let mut specs = Vec::new();
        if p == 2 {
            specs.extend((1..=n_max).map(|i| (GenKind::Zeta(i), cap)));
        } else {
            if k == 1 {
                specs.push((GenKind::Tau(0), Some(2)));
            }
            specs.extend((1..=n_max).map(|i| (GenKind::Xi(i), cap)));
        }
        specs
    }

    /// The primitively generated quotient of the level-`k` subalgebra by the
    /// ideal of `q`-th powers of its generators (and `tau_0` when p is odd
    /// and k = 0).
    pub fn a_mod_i(p: u32, k: u32, n_max: usize, degree_bound: i64) -> Result<Self> {
        let q = if p == 2 { 2 } else { p };
        let label = format!("A_mod_I(p={p},k={k},N={n_max},D={degree_bound})");
        if k == 0 {
            let mut specs = Vec::new();
            if p == 2 {
                specs.extend((1..=n_max).map(|i| (GenKind::Zeta(i), Some(2))));
            } else {
                specs.push((GenKind::Tau(0), Some(1)));
                specs.extend((1..=n_max).map(|i| (GenKind::Tau(i), Some(2))));
                specs.extend((1..=n_max).map(|i| (GenKind::Xi(i), Some(q))));
            }
            return HopfPresentation::build(label, p, 0, n_max, degree_bound, specs);
        }
        let specs = HopfPresentation::angle_specs(p, k, n_max, Some(q));
        HopfPresentation::build(label, p, k, n_max, degree_bound, specs)
    }

    /// The full dual algebra modulo the extension of the level-`k` ideal:
    /// `zeta_i^{2^{k+1}} = 0`; odd p: `tau_0 = 0`, `xi_i^p = 0` for k = 0
    /// and `xi_i^{p^{k+1}} = 0` for k >= 1.
    pub fn a_mod_j(p: u32, k: u32, n_max: usize, degree_bound: i64) -> Result<Self> {
        let q = p as u64;
        let big = u32::try_from(q.pow(k + 1)).ok();
        let mut specs = Vec::new();
        if p == 2 {
            specs.extend((1..=n_max).map(|i| (GenKind::Zeta(i), big)));
        } else {
            let tau0_cap = if k == 0 { 1 } else { 2 };
            specs.push((GenKind::Tau(0), Some(tau0_cap)));
            specs.extend((1..=n_max).map(|i| (GenKind::Tau(i), Some(2))));
            specs.extend((1..=n_max).map(|i| (GenKind::Xi(i), big)));
        }
        HopfPresentation::build(
            format!("A_mod_J(p={p},k={k},N={n_max},D={degree_bound})"),
            p,
            0,
            n_max,
            degree_bound,
            specs,
        )
    }

    /// The same generators with extra (monomial) caps. The caller is
    /// responsible for the result being a Hopf quotient; see [`check_hopf_ideal`].
    pub fn with_caps(&self, caps: &[(GenKind, u32)]) -> Result<Self> {
        let specs = self
            .kinds
            .iter()
            .zip(self.alg.generators())
            .map(|(&kind, g)| {
                let extra = caps.iter().find(|(k, _)| *k == kind).map(|(_, c)| *c);
                let cap = match (g.cap, extra) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (kind, cap)
            })
            .collect();
        let mut desc: Vec<String> = caps
            .iter()
            .map(|(k, c)| format!("{}^{}", kind_name(self.p(), self.shift, *k), c))
            .collect();
        desc.sort();
        HopfPresentation::build(
            format!("{}/({})", self.label, desc.join(",")),
            self.p(),
            self.shift,
            self.max_index,
            self.degree_bound,
            specs,
        )
    }

    /// Builds a preset by its command-line name.
    pub fn preset(name: &str, p: u32, k: u32, n_max: usize, degree_bound: i64) -> Result<Self> {
        match name {
            "A_dual" => HopfPresentation::a_dual(p, n_max, degree_bound),
            "A" => HopfPresentation::a_n(p, k as usize, degree_bound),
            "A_ev" => HopfPresentation::a_ev_n(p, k as usize, degree_bound),
            "A_angle" => HopfPresentation::a_angle(p, k, n_max, degree_bound),
            "A_mod_I" => HopfPresentation::a_mod_i(p, k, n_max, degree_bound),
            "A_mod_J" => HopfPresentation::a_mod_j(p, k, n_max, degree_bound),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p(&self) -> u32 {
        self.alg.p()
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn kinds(&self) -> &[GenKind] {
        &self.kinds
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn degree_bound(&self) -> i64 {
        self.degree_bound
    }

    pub fn position(&self, kind: GenKind) -> Option<usize> {
        self.kinds.iter().position(|&k| k == kind)
    }

    /// The generator of the given kind; index 0 of `zeta`/`xi` is 1, and
    /// generators outside the preset are 0.
    pub fn gen(&self, kind: GenKind) -> Element {
        match kind {
            GenKind::Zeta(0) | GenKind::Xi(0) => Element::one(&self.alg),
            _ => match self.position(kind) {
                Some(i) => Element::generator(&self.alg, i),
                None => Element::zero(&self.alg),
            },
        }
    }

    fn poly_kind(&self, i: usize) -> GenKind {
        if self.p() == 2 {
            GenKind::Zeta(i)
        } else {
            GenKind::Xi(i)
        }
    }

    fn generator_coproduct(&self, pos: usize) -> Tensor {
        let alg = &self.alg;
        match self.kinds[pos] {
            GenKind::Zeta(n) | GenKind::Xi(n) => {
                let mut t = Tensor::zero(alg, 2);
                for k in 0..=n {
                    let left = self.gen(self.poly_kind(n - k)).frobenius(k as u32);
                    let right = self.gen(self.poly_kind(k));
                    t = &t + &Tensor::pure(&[left, right]);
                }
                t
            }
            GenKind::Tau(n) => {
                let mut t = Tensor::pure(&[self.gen(GenKind::Tau(n)), Element::one(alg)]);
                for k in 0..=n {
                    let left = self.gen(GenKind::Xi(n - k)).frobenius(k as u32);
                    t = &t + &Tensor::pure(&[left, self.gen(GenKind::Tau(k))]);
                }
                t
            }
        }
    }

    fn build_antipode(&self) -> Result<AlgebraMap> {
        let alg = &self.alg;
        let mut poly: HashMap<usize, Element> = HashMap::new();
        poly.insert(0, Element::one(alg));
        let max = self.max_index;
        for n in 1..=max {
            let mut acc = Element::zero(alg);
            for k in 0..n {
                let g = self.gen(self.poly_kind(n - k)).frobenius(k as u32);
                acc = &acc + &(&g * &poly[&k]);
            }
            poly.insert(n, acc.negated());
        }
        let tau = |n: usize| -> Element {
            let mut acc = Element::zero(alg);
            for k in 0..=n {
                let iota_xi = poly[&(n - k)].frobenius(k as u32);
                acc = &acc + &(&iota_xi * &self.gen(GenKind::Tau(k)));
            }
            acc.negated()
        };
        let images = self
            .kinds
            .iter()
            .map(|&kind| match kind {
                GenKind::Zeta(n) | GenKind::Xi(n) => poly[&n].clone(),
                GenKind::Tau(n) => tau(n),
            })
            .collect();
        AlgebraMap::new(alg, alg, images)
    }

    fn check_degree(&self, x: &Element) -> Result<()> {
        for (m, _) in x.terms() {
            let d = self.alg.monomial_degree(m);
            if d > self.degree_bound {
                return Err(Error::DegreeOverflow {
                    degree: d,
                    bound: self.degree_bound,
                });
            }
        }
        Ok(())
    }

    fn check_owner(&self, x: &Element) -> Result<()> {
        if same_presentation(x.presentation(), &self.alg) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Tensor {
        let p = self.p();
        let mut out = Tensor::unit(&self.alg, 2);
        for (i, &e) in m.exponents().iter().enumerate() {
            // mu(g^e) = prod_j frob(mu(g), j)^{digit_j}
            let mut rest = e;
            let mut j = 0;
            while rest > 0 {
                let digit = rest % p;
                if digit > 0 {
                    let f = self.coproducts[i].frobenius(j);
                    for _ in 0..digit {
                        out = &out * &f;
                    }
                }
                rest /= p;
                j += 1;
            }
        }
        out
    }

    pub fn coproduct(&self, x: &Element) -> Result<Tensor> {
        self.check_owner(x)?;
        self.check_degree(x)?;
        let mut out = Tensor::zero(&self.alg, 2);
        for (m, c) in x.terms() {
            out = &out + &self.coproduct_monomial(m).scaled(c as i64);
        }
        Ok(out)
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        self.check_owner(x)?;
        self.check_degree(x)?;
        self.antipode.apply(x)
    }

    pub fn antipode_map(&self) -> &AlgebraMap {
        &self.antipode
    }

    pub fn counit(&self, x: &Element) -> u32 {
        x.constant_term()
    }

    /// `x (x) 1 + 1 (x) x`.
    pub fn primitive_tensor(&self, x: &Element) -> Tensor {
        let one = Element::one(&self.alg);
        &Tensor::pure(&[x.clone(), one.clone()]) + &Tensor::pure(&[one, x.clone()])
    }

    /// Nonzero values of `mu(x) - T mu(x)` for the generators of degree `<= d`.
    pub fn cocommutativity_defect(&self, d: i64) -> Result<Vec<(String, Tensor)>> {
        let mut out = Vec::new();
        for (i, g) in self.alg.generators().iter().enumerate() {
            if g.degree > d {
                continue;
            }
            let x = Element::generator(&self.alg, i);
            let mu = self.coproduct(&x)?;
            let defect = &mu - &mu.switch();
            if !defect.is_zero() {
                out.push((g.name.clone(), defect));
            }
        }
        Ok(out)
    }

    /// Whether every generator is primitive.
    pub fn primitivity_check(&self) -> bool {
        self.non_primitive_generators().is_empty()
    }

    pub fn non_primitive_generators(&self) -> Vec<(String, Tensor)> {
        (0..self.alg.len())
            .filter_map(|i| {
                let x = Element::generator(&self.alg, i);
                let mu = self.coproducts[i].clone();
                let defect = &mu - &self.primitive_tensor(&x);
                (!defect.is_zero()).then(|| (self.alg.generators()[i].name.clone(), mu))
            })
            .collect()
    }

    /// `x -> m(psi (x) phi)(mu(x))` on every generator.
    pub fn convolution(&self, phi: &AlgebraMap, psi: &AlgebraMap) -> Result<AlgebraMap> {
        self.check_assignment(phi)?;
        self.check_assignment(psi)?;
        if !same_presentation(phi.target(), psi.target()) {
            return Err(Error::PresentationMismatch);
        }
        let target = phi.target();
        let images = self
            .coproducts
            .iter()
            .map(|mu| {
                let mut acc = Element::zero(target);
                for (legs, c) in mu.terms() {
                    let v = &psi.apply_monomial(&legs[0]) * &phi.apply_monomial(&legs[1]);
                    acc = &acc + &v.scaled(c as i64);
                }
                acc
            })
            .collect();
        AlgebraMap::new(&self.alg, target, images)
    }

    /// The assignment sending every generator to zero (the unit of convolution).
    pub fn trivial_assignment(&self, target: &Arc<Presentation>) -> Result<AlgebraMap> {
        AlgebraMap::new(
            &self.alg,
            target,
            (0..self.alg.len()).map(|_| Element::zero(target)).collect(),
        )
    }

    fn check_assignment(&self, phi: &AlgebraMap) -> Result<()> {
        if same_presentation(phi.source(), &self.alg) {
            Ok(())
        } else {
            Err(Error::Assignment("assignment is defined on another presentation".into()))
        }
    }

    /// Group flavor represented by this preset's generators.
    pub fn flavor(&self) -> Flavor {
        if self.shift == 0 {
            Flavor::Base
        } else {
            Flavor::Level(self.shift)
        }
    }

    /// The group element attached to an algebra homomorphism out of this
    /// preset, truncated at `k`. Odd primes get eps adjoined to the target.
    pub fn theta(&self, phi: &AlgebraMap, k: usize) -> Result<GroupElement> {
        self.check_assignment(phi)?;
        let p = self.p();
        let flavor = self.flavor();
        let target = if flavor.leading_eps_allowed(p) {
            phi.target().with_epsilon()?
        } else {
            Arc::clone(phi.target())
        };
        let value = |kind: GenKind| -> Result<Element> {
            match self.position(kind) {
                Some(i) => phi.images()[i].embed(&target),
                None => Ok(Element::zero(&target)),
            }
        };
        let one = Element::one(&target);
        let mut coeffs = Vec::with_capacity(k + 1);
        if flavor.leading_eps_allowed(p) {
            let eps = Element::epsilon(&target)?;
            coeffs.push(&one + &(&value(GenKind::Tau(0))? * &eps));
        } else {
            coeffs.push(one);
        }
        for i in 1..=k {
            let mut c = value(self.poly_kind(i))?;
            if flavor.higher_eps_allowed(p) {
                let eps = Element::epsilon(&target)?;
                c = &c + &(&value(GenKind::Tau(i))? * &eps);
            }
            coeffs.push(c);
        }
        GroupElement::new(flavor, coeffs)
    }

    /// The next level preset. The degree bound is scaled by p so that every
    /// `g_i^p` of this preset survives as a generator there.
    pub fn next_level(&self) -> Result<HopfPresentation> {
        HopfPresentation::a_angle(
            self.p(),
            self.shift + 1,
            self.max_index,
            self.degree_bound.saturating_mul(self.p() as i64),
        )
    }

    /// `phi` precomposed with the inclusion of the next level:
    /// `g'_i -> phi(g_i)^p`, `tau_0 -> phi(tau_0)`.
    pub fn restrict_to_next_level(
        &self,
        next: &HopfPresentation,
        phi: &AlgebraMap,
    ) -> Result<AlgebraMap> {
        self.check_assignment(phi)?;
        let target = phi.target();
        let images = next
            .kinds
            .iter()
            .map(|&kind| {
                let own = |k: GenKind| match self.position(k) {
                    Some(i) => phi.images()[i].clone(),
                    None => Element::zero(target),
                };
                match kind {
                    GenKind::Tau(0) => own(GenKind::Tau(0)),
                    GenKind::Tau(_) => Element::zero(target),
                    other => own(other).frobenius(1),
                }
            })
            .collect();
        AlgebraMap::new(&next.alg, target, images)
    }

    /// `rho(theta_s(phi)) == theta_{s+1}(phi . iota_s)`.
    pub fn rho_diagram_check(&self, phi: &AlgebraMap, k: usize) -> Result<bool> {
        let (left, right) = self.rho_diagram_sides(phi, k)?;
        Ok(left == right)
    }

    /// Both ways around the square, over the same presentation.
    pub fn rho_diagram_sides(
        &self,
        phi: &AlgebraMap,
        k: usize,
    ) -> Result<(GroupElement, GroupElement)> {
        let next = self.next_level()?;
        let left = self.theta(phi, k)?.rho();
        let restricted = self.restrict_to_next_level(&next, phi)?;
        let right = next.theta(&restricted, k)?;
        if !same_presentation(left.presentation(), right.presentation()) {
            // theta on the next level need not adjoin eps; compare after embedding.
            let right = right.map_coefficients(|c| c.embed(left.presentation()))?;
            return Ok((left, right));
        }
        Ok((left, right))
    }

    /// The reduction map to a preset with the same kinds of generators:
    /// each generator goes to its namesake, or to zero when absent.
    pub fn reduction_to(&self, other: &HopfPresentation) -> Result<AlgebraMap> {
        if other.p() != self.p() || other.shift != self.shift {
            return Err(Error::PresentationMismatch);
        }
        let images = self.kinds.iter().map(|&k| other.gen(k)).collect();
        AlgebraMap::new(&self.alg, &other.alg, images)
    }
}

/// Checks that a map between presets commutes with the coproducts on generators.
pub fn is_hopf_map(
    source: &HopfPresentation,
    target: &HopfPresentation,
    f: &AlgebraMap,
) -> Result<bool> {
    for i in 0..source.alg.len() {
        let x = Element::generator(&source.alg, i);
        let via_source = source.coproduct(&x)?.map_legs(&|m: &Monomial| {
            Tensor::from_element(&f.apply_monomial(m))
        });
        let via_target = target.coproduct(&f.apply(&x)?)?;
        if via_source != via_target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`check_hopf_ideal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub ok: bool,
    /// Number of monomial multiples examined.
    pub checked: usize,
    /// First violation, described.
    pub counterexample: Option<String>,
}

/// Tests the Hopf-ideal conditions for the ideal generated by the given
/// monomials, on every monomial multiple of degree `<= d`.
pub fn check_hopf_ideal(
    hopf: &HopfPresentation,
    gens: &[Element],
    d: i64,
) -> Result<IdealReport> {
    let alg = &hopf.alg;
    let mut monos = Vec::new();
    for g in gens {
        hopf.check_owner(g)?;
        if g.is_zero() {
            continue;
        }
        if g.num_terms() != 1 {
            return Err(Error::NotMonomial(g.to_string()));
        }
        let (m, _) = g.terms().next().unwrap();
        monos.push(m.clone());
    }
    let in_ideal = |m: &Monomial| monos.iter().any(|g| m.divisible_by(g));
    let mut checked = 0;
    for g in &monos {
        let gd = alg.monomial_degree(g);
        for md in 0..=(d - gd) {
            for m in alg.monomials_of_degree(md)? {
                let Some((prod, _)) = alg.mul_monomials(&m, g) else {
                    continue;
                };
                checked += 1;
                let x = Element::monomial(alg, prod.clone())?;
                let describe = |what: String| {
                    Some(format!("{} ({}): {}", x, crate::algebra::format_monomial(alg, &prod), what))
                };
                if hopf.counit(&x) != 0 {
                    return Ok(IdealReport {
                        ok: false,
                        checked,
                        counterexample: describe("counit is nonzero".into()),
                    });
                }
                let mu = hopf.coproduct(&x)?;
                if let Some((legs, c)) = mu
                    .terms()
                    .find(|(legs, _)| !in_ideal(&legs[0]) && !in_ideal(&legs[1]))
                {
                    let term = Tensor::from_terms(alg, 2, [(legs.to_vec(), c as i64)]);
                    return Ok(IdealReport {
                        ok: false,
                        checked,
                        counterexample: describe(format!("coproduct term {term} leaves the ideal")),
                    });
                }
                let iota = hopf.antipode(&x)?;
                let outside = iota.terms().find(|(m, _)| !in_ideal(m)).map(|(m, _)| m.clone());
                if let Some(m) = outside {
                    return Ok(IdealReport {
                        ok: false,
                        checked,
                        counterexample: describe(format!(
                            "antipode term {} leaves the ideal",
                            crate::algebra::format_monomial(alg, &m)
                        )),
                    });
                }
            }
        }
    }
    Ok(IdealReport {
        ok: true,
        checked,
        counterexample: None,
    })
}

/// Sparse element of an `arity`-fold graded tensor power.
#[derive(Clone)]
pub struct Tensor {
    alg: Arc<Presentation>,
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, u32>,
}

impl Tensor {
    pub fn zero(alg: &Arc<Presentation>, arity: usize) -> Self {
        Tensor {
            alg: Arc::clone(alg),
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) … (x) 1`.
    pub fn unit(alg: &Arc<Presentation>, arity: usize) -> Self {
        let mut t = Tensor::zero(alg, arity);
        t.terms.insert(vec![Monomial::unit(alg.len()); arity], 1);
        t
    }

    pub fn from_element(x: &Element) -> Self {
        Tensor::pure(std::slice::from_ref(x))
    }

    /// `x_1 (x) … (x) x_n`, expanded multilinearly.
    pub fn pure(factors: &[Element]) -> Self {
        let alg = factors[0].presentation();
        let p = alg.p() as u64;
        let mut acc: Vec<(Vec<Monomial>, u64)> = vec![(Vec::new(), 1)];
        for x in factors {
            let mut next = Vec::new();
            for (legs, c) in &acc {
                for (m, d) in x.terms() {
                    let mut l = legs.clone();
                    l.push(m.clone());
                    next.push((l, c * d as u64 % p));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero(alg, factors.len());
        for (legs, c) in acc {
            t.add_term(legs, c as u32);
        }
        t
    }

    pub fn from_terms<I>(alg: &Arc<Presentation>, arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Monomial>, i64)>,
    {
        let mut t = Tensor::zero(alg, arity);
        for (legs, c) in terms {
            assert_eq!(legs.len(), arity, "wrong number of tensor legs");
            t.add_term(legs, c.rem_euclid(alg.p() as i64) as u32);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], u32)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, legs: Vec<Monomial>, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.alg.p();
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scaled(&self, c: i64) -> Tensor {
        let p = self.alg.p() as i64;
        let c = c.rem_euclid(p);
        let mut out = Tensor::zero(&self.alg, self.arity);
        if c == 0 {
            return out;
        }
        for (k, &v) in &self.terms {
            out.terms.insert(k.clone(), ((v as i64 * c) % p) as u32);
        }
        out
    }

    fn parity(&self, m: &Monomial) -> bool {
        self.alg.monomial_degree(m).rem_euclid(2) == 1
    }

    /// Graded tensor product multiplication.
    pub fn try_mul(&self, other: &Tensor) -> Result<Tensor> {
        if self.arity != other.arity || !same_presentation(&self.alg, &other.alg) {
            return Err(Error::PresentationMismatch);
        }
        let p = self.alg.p() as u64;
        let odd_p = p != 2;
        let mut out = Tensor::zero(&self.alg, self.arity);
        for (a, &ca) in &self.terms {
            let a_par: Vec<bool> = a.iter().map(|m| self.parity(m)).collect();
            'pairs: for (b, &cb) in &other.terms {
                let mut negative = false;
                if odd_p {
                    // b_j moves left past a_i for every i > j.
                    let mut odd_after = 0u32;
                    for j in (0..self.arity).rev() {
                        if self.parity(&b[j]) && odd_after % 2 == 1 {
                            negative = !negative;
                        }
                        if a_par[j] {
                            odd_after += 1;
                        }
                    }
                }
                let mut legs = Vec::with_capacity(self.arity);
                for j in 0..self.arity {
                    match self.alg.mul_monomials(&a[j], &b[j]) {
                        Some((m, neg)) => {
                            negative ^= neg;
                            legs.push(m);
                        }
                        None => continue 'pairs,
                    }
                }
                let mut c = ca as u64 * cb as u64 % p;
                if negative {
                    c = (p - c) % p;
                }
                out.add_term(legs, c as u32);
            }
        }
        Ok(out)
    }

    /// `x^{p^j}`, termwise (see [`Element::frobenius`]).
    pub fn frobenius(&self, j: u32) -> Tensor {
        if j == 0 {
            return self.clone();
        }
        let mut out = Tensor::zero(&self.alg, self.arity);
        'terms: for (legs, &c) in &self.terms {
            let mut new_legs = Vec::with_capacity(legs.len());
            for m in legs {
                let x = Element::monomial(&self.alg, m.clone())
                    .expect("monomial of this presentation")
                    .frobenius(j);
                let first = x.terms().next().map(|(m2, c2)| (m2.clone(), c2));
                match first {
                    Some((m2, 1)) => new_legs.push(m2),
                    Some(_) => unreachable!("frobenius of a monomial is a monomial"),
                    None => continue 'terms,
                }
            }
            out.add_term(new_legs, c);
        }
        out
    }

    /// The switching map on a two-fold tensor, with the Koszul sign.
    pub fn switch(&self) -> Tensor {
        assert_eq!(self.arity, 2, "switch needs two legs");
        let p = self.alg.p();
        let mut out = Tensor::zero(&self.alg, 2);
        for (legs, &c) in &self.terms {
            let negative = p != 2 && self.parity(&legs[0]) && self.parity(&legs[1]);
            let c = if negative { (p - c) % p } else { c };
            out.add_term(vec![legs[1].clone(), legs[0].clone()], c);
        }
        out
    }

    /// Applies a degree-preserving linear map to every leg; leg `i` of each
    /// term is replaced by the tensor `f(i, m)`. The result lives over the
    /// presentation of the images.
    pub fn map_legs_indexed(&self, f: &dyn Fn(usize, &Monomial) -> Tensor) -> Tensor {
        let p = self.alg.p() as u64;
        let mut out: Option<Tensor> = None;
        let mut target = Arc::clone(&self.alg);
        for (legs, &c) in &self.terms {
            let mut acc: Vec<(Vec<Monomial>, u64)> = vec![(Vec::new(), c as u64)];
            let mut arity = 0;
            for (i, m) in legs.iter().enumerate() {
                let image = f(i, m);
                target = Arc::clone(&image.alg);
                arity += image.arity;
                let mut next = Vec::new();
                for (prefix, pc) in &acc {
                    for (k, &ic) in &image.terms {
                        let mut l = prefix.clone();
                        l.extend(k.iter().cloned());
                        next.push((l, pc * ic as u64 % p));
                    }
                }
                acc = next;
            }
            let o = out.get_or_insert_with(|| Tensor::zero(&target, arity));
            for (l, v) in acc {
                o.add_term(l, v as u32);
            }
        }
        out.unwrap_or_else(|| Tensor::zero(&self.alg, 0))
    }

    /// Same map on every leg.
    pub fn map_legs(&self, f: &dyn Fn(&Monomial) -> Tensor) -> Tensor {
        self.map_legs_indexed(&|_, m| f(m))
    }

    /// Multiplies the legs together in order.
    pub fn multiply_legs(&self) -> Element {
        let mut out = Element::zero(&self.alg);
        for (legs, &c) in &self.terms {
            let mut x = Element::scalar(&self.alg, c as i64);
            for m in legs {
                let y = Element::monomial(&self.alg, m.clone()).expect("monomial of this presentation");
                x = &x * &y;
            }
            out = &out + &x;
        }
        out
    }

    /// Reads an arity-1 tensor back as an element.
    pub fn to_element(&self) -> Element {
        assert_eq!(self.arity, 1, "not an arity-one tensor");
        self.multiply_legs()
    }

    /// Scalar value of an arity-0 tensor.
    pub fn scalar_value(&self) -> u32 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }
}

impl PartialEq for Tensor {
    /// Zero tensors compare equal regardless of arity.
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.alg, &other.alg)
            && self.terms == other.terms
            && (self.arity == other.arity || self.terms.is_empty())
    }
}

impl Eq for Tensor {}

impl<'a> std::ops::Add<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn add(self, rhs: &'a Tensor) -> Tensor {
        assert!(self.arity == rhs.arity && same_presentation(&self.alg, &rhs.alg));
        let mut out = self.clone();
        for (k, &c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &'a Tensor) -> Tensor {
        self + &rhs.scaled(-1)
    }
}

impl<'a> std::ops::Mul<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &'a Tensor) -> Tensor {
        self.try_mul(rhs).expect("tensors of different shapes")
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(legs, &c)| {
                let body = legs
                    .iter()
                    .map(|m| crate::algebra::format_monomial(&self.alg, m))
                    .collect::<Vec<_>>()
                    .join(" ⊗ ");
                if c == 1 {
                    body
                } else {
                    format!("{c}*({body})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_coproducts() {
        let h = HopfPresentation::a_dual(2, 4, 30).unwrap();
        let z1 = h.gen(GenKind::Zeta(1));
        assert_eq!(h.coproduct(&z1).unwrap(), h.primitive_tensor(&z1));
        let one = Element::one(h.presentation());
        assert_eq!(h.coproduct(&one).unwrap(), Tensor::unit(h.presentation(), 2));
        let h3 = HopfPresentation::a_dual(3, 2, 60).unwrap();
        let t0 = h3.gen(GenKind::Tau(0));
        assert_eq!(h3.coproduct(&t0).unwrap(), h3.primitive_tensor(&t0));
    }

    #[test]
    fn low_antipodes() {
        let h = HopfPresentation::a_dual(2, 4, 30).unwrap();
        let z1 = h.gen(GenKind::Zeta(1));
        let z2 = h.gen(GenKind::Zeta(2));
        assert_eq!(h.antipode(&z1).unwrap(), z1);
        assert_eq!(h.antipode(&z2).unwrap(), &z2 + &z1.pow(3));
        let h3 = HopfPresentation::a_dual(3, 2, 60).unwrap();
        let t0 = h3.gen(GenKind::Tau(0));
        assert_eq!(h3.antipode(&t0).unwrap(), t0.negated());
    }

    #[test]
    fn counit_is_constant_term() {
        let h = HopfPresentation::a_dual(3, 2, 60).unwrap();
        let x = &Element::scalar(h.presentation(), 3) + &h.gen(GenKind::Xi(1));
        assert_eq!(h.counit(&x), 0);
        assert_eq!(h.counit(&Element::one(h.presentation())), 1);
        assert_eq!(h.counit(&h.gen(GenKind::Xi(2))), 0);
    }

    #[test]
    fn degree_overflow_is_reported() {
        let h = HopfPresentation::a_dual(2, 4, 10).unwrap();
        let z3 = h.gen(GenKind::Zeta(3));
        assert!(matches!(h.coproduct(&z3.pow(2)), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn witness_at_tau1() {
        let h = HopfPresentation::a_dual(3, 2, 60).unwrap();
        let defects = h.cocommutativity_defect(5).unwrap();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].0, "tau1");
        let xi1 = h.gen(GenKind::Xi(1));
        let t0 = h.gen(GenKind::Tau(0));
        let expected = &Tensor::pure(&[xi1.clone(), t0.clone()]) - &Tensor::pure(&[t0, xi1]);
        assert_eq!(defects[0].1, expected);
    }

    #[test]
    fn presets_and_names() {
        let h = HopfPresentation::a_angle(3, 1, 2, 1000).unwrap();
        let names: Vec<_> = h.presentation().generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(names, ["tau0", "xi1^3", "xi2^3"]);
        assert_eq!(h.flavor(), Flavor::Level(1));
        let a2 = HopfPresentation::a_n(2, 2, 100).unwrap();
        let caps: Vec<_> = a2.presentation().generators().iter().map(|g| g.cap).collect();
        assert_eq!(caps, [Some(4), Some(2)]);
        assert!(HopfPresentation::preset("nope", 2, 0, 4, 30).is_err());
    }

    #[test]
    fn switch_sign() {
        let h = HopfPresentation::a_dual(3, 1, 60).unwrap();
        let t0 = h.gen(GenKind::Tau(0));
        let t1 = h.gen(GenKind::Tau(1));
        let t = Tensor::pure(&[t0.clone(), t1.clone()]);
        assert_eq!(t.switch(), Tensor::pure(&[t1, t0]).scaled(-1));
    }
}
