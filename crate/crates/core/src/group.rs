//! Truncated power series `Σ α_i X^{p^i}` under composition.
//!
//! A [`GroupElement`] keeps the coefficients `α_0..=α_k`. With flavor
//! [`Flavor::Base`] it lives in the truncated quotient of the Steenrod group;
//! with [`Flavor::Level`]`(j)` it lives in the level-`j` group whose
//! coefficients are `p^j`-th-power shaped. The coefficient algebra carries
//! `eps` for odd primes whenever the flavor allows an eps-part.
//!
//! The product follows the substitution convention `α·β = β(α(X))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{same_presentation, Element, Presentation};
use crate::error::{Error, Result};
use crate::partitions::enumerate_compositions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Base,
    /// Level `j >= 1`.
    Level(u32),
}

impl Flavor {
    /// Frobenius shift of the coefficient degrees (0 for the base group).
    pub fn shift(self) -> u32 {
        match self {
            Flavor::Base => 0,
            Flavor::Level(j) => j,
        }
    }

    /// Whether `α_0` may carry an eps-part (odd primes only).
    pub fn leading_eps_allowed(self, p: u32) -> bool {
        p != 2 && matches!(self, Flavor::Base | Flavor::Level(1))
    }

    /// Whether `α_i`, `i >= 1`, may carry an eps-part (odd primes only).
    pub fn higher_eps_allowed(self, p: u32) -> bool {
        p != 2 && self == Flavor::Base
    }

    pub fn next(self) -> Flavor {
        Flavor::Level(self.shift() + 1)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Base => write!(f, "base"),
            Flavor::Level(j) => write!(f, "level{j}"),
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "base" {
            return Ok(Flavor::Base);
        }
        match s.strip_prefix("level").map(str::parse::<u32>) {
            Some(Ok(j)) if j >= 1 => Ok(Flavor::Level(j)),
            _ => Err(Error::Parse(format!(
                "flavor must be `base` or `levelJ` with J >= 1, got `{s}`"
            ))),
        }
    }
}

/// Degree of `α_i` for `i >= 1`: `2^(i+j) - 2^j` for p = 2 and
/// `2(p^(i+j) - p^j)` for odd p, where `j` is the flavor's shift.
pub fn coefficient_degree(p: u32, flavor: Flavor, i: usize) -> i64 {
    let j = flavor.shift();
    let p = p as i64;
    let low = p.pow(j);
    let high = p.pow(j + i as u32);
    if p == 2 {
        high - low
    } else {
        2 * (high - low)
    }
}

/// Position in the filtration `G ⊃ G^(0) ⊃ G^(0.5) ⊃ G^(1) ⊃ …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filtration {
    /// Leading coefficient differs from 1.
    Bottom,
    /// Stage `half_steps / 2`.
    Stage(u32),
    /// Identity up to the truncation.
    Top,
}

impl Filtration {
    pub fn integer(m: u32) -> Self {
        Filtration::Stage(2 * m)
    }

    pub fn half(m: u32) -> Self {
        Filtration::Stage(2 * m + 1)
    }

    pub fn as_f64(self) -> Option<f64> {
        match self {
            Filtration::Stage(h) => Some(h as f64 / 2.0),
            _ => None,
        }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filtration::Bottom => write!(f, "bottom"),
            Filtration::Top => write!(f, "top"),
            Filtration::Stage(h) if h % 2 == 0 => write!(f, "{}", h / 2),
            Filtration::Stage(h) => write!(f, "{}.5", h / 2),
        }
    }
}

/// Which of the three commutator expansions to predict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingCase {
    /// No vanishing hypotheses; predicts the X^p and X^{p^2} coefficients.
    One,
    /// `α_1 = … = α_k = 0` with `k >= 1`.
    Two { k: usize },
    /// Additionally `β_1 = … = β_l = 0` with `k >= l >= 1`.
    Three { k: usize, l: usize },
}

impl LeadingCase {
    /// Index of the first predicted coefficient.
    pub fn first_index(self) -> usize {
        match self {
            LeadingCase::One => 1,
            LeadingCase::Two { k } | LeadingCase::Three { k, .. } => k + 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    flavor: Flavor,
    coeffs: Vec<Element>,
}

impl GroupElement {
    /// Validates coefficient degrees and the leading-coefficient constraint.
    pub fn new(flavor: Flavor, coeffs: Vec<Element>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidElement("no coefficients".into()));
        };
        let alg = Arc::clone(first.presentation());
        let p = alg.p();
        if let Flavor::Level(0) = flavor {
            return Err(Error::InvalidElement("level must be at least 1".into()));
        }
        if coeffs.iter().any(|c| !same_presentation(c.presentation(), &alg)) {
            return Err(Error::PresentationMismatch);
        }
        if p != 2 && !alg.has_epsilon() && flavor.leading_eps_allowed(p) {
            return Err(Error::NoEpsilon);
        }
        let one = Element::one(&alg);
        let lead_dev = &coeffs[0] - &one;
        if flavor.leading_eps_allowed(p) {
            if !lead_dev.in_epsilon_ideal() || !lead_dev.is_homogeneous_of(0) {
                return Err(Error::InvalidElement(format!(
                    "leading coefficient {} is not 1 + c*eps with deg c = 1",
                    coeffs[0]
                )));
            }
        } else if !lead_dev.is_zero() {
            return Err(Error::InvalidElement(format!(
                "leading coefficient {} must be 1",
                coeffs[0]
            )));
        }
        for (i, c) in coeffs.iter().enumerate().skip(1) {
            let d = coefficient_degree(p, flavor, i);
            if !c.is_homogeneous_of(d) {
                return Err(Error::InvalidElement(format!(
                    "coefficient {i} ({c}) is not homogeneous of degree {d}"
                )));
            }
            if !flavor.higher_eps_allowed(p) && !c.is_epsilon_free() {
                return Err(Error::InvalidElement(format!(
                    "coefficient {i} ({c}) must not involve eps"
                )));
            }
        }
        Ok(GroupElement { flavor, coeffs })
    }

    fn from_parts(flavor: Flavor, coeffs: Vec<Element>) -> Self {
        debug_assert!(GroupElement::new(flavor, coeffs.clone()).is_ok());
        GroupElement { flavor, coeffs }
    }

    /// `X` truncated at level `k` over `alg`.
    pub fn identity(alg: &Arc<Presentation>, k: usize, flavor: Flavor) -> Result<Self> {
        let alg = if flavor.leading_eps_allowed(alg.p()) {
            alg.with_epsilon()?
        } else {
            Arc::clone(alg)
        };
        let mut coeffs = vec![Element::one(&alg)];
        coeffs.extend((0..k).map(|_| Element::zero(&alg)));
        GroupElement::new(flavor, coeffs)
    }

    fn identity_like(&self) -> Self {
        let alg = self.presentation();
        let mut coeffs = vec![Element::one(alg)];
        coeffs.extend((0..self.k()).map(|_| Element::zero(alg)));
        GroupElement::from_parts(self.flavor, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.presentation().p()
    }

    /// Truncation level: the highest retained index.
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.coeffs[0].presentation()
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Element {
        &self.coeffs[i]
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Element::is_zero)
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::GroupMismatch(format!(
                "flavors {} and {}",
                self.flavor, other.flavor
            )));
        }
        if self.k() != other.k() {
            return Err(Error::GroupMismatch(format!(
                "truncation levels {} and {}",
                self.k(),
                other.k()
            )));
        }
        if !same_presentation(self.presentation(), other.presentation()) {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }

    /// Whether the flavor's product drops eps from the higher coefficients.
    fn drops_eps(&self) -> bool {
        self.p() != 2 && self.flavor == Flavor::Level(1)
    }

    /// `frobenius(α_m, j)` for every `m + j <= k`, indexed `[m][j]`.
    fn frobenius_table(&self) -> Vec<Vec<Element>> {
        let k = self.k();
        (0..=k)
            .map(|m| {
                let mut row = Vec::with_capacity(k - m + 1);
                row.push(self.coeffs[m].clone());
                for _ in 1..=(k - m) {
                    let next = row.last().unwrap().frobenius(1);
                    row.push(next);
                }
                row
            })
            .collect()
    }

    /// `α·β = β(α(X))`: `γ_i = Σ_j α_{i-j}^{p^j} β_j`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_compatible(other)?;
        let table = self.frobenius_table();
        let alg = self.presentation();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for i in 0..=self.k() {
            let mut gamma = Element::zero(alg);
            for j in 0..=i {
                let term = &table[i - j][j] * &other.coeffs[j];
                gamma = &gamma + &term;
            }
            if i >= 1 && self.drops_eps() {
                gamma = gamma.eps_reduce();
            }
            coeffs.push(gamma);
        }
        Ok(GroupElement::from_parts(self.flavor, coeffs))
    }

    /// Solves `Σ_j α_{i-j}^{p^j} β_j = 0` term by term.
    pub fn invert_recursive(&self) -> GroupElement {
        let table = self.frobenius_table();
        let alg = self.presentation();
        let two = Element::scalar(alg, 2);
        let mut beta = vec![&two - &self.coeffs[0]];
        for i in 1..=self.k() {
            let mut acc = Element::zero(alg);
            for j in 0..i {
                acc = &acc + &(&table[i - j][j] * &beta[j]);
            }
            let mut b = acc.negated();
            if self.drops_eps() {
                b = b.eps_reduce();
            }
            beta.push(b);
        }
        GroupElement::from_parts(self.flavor, beta)
    }

    /// Signed sum over ordered partitions of `i`.
    pub fn invert_closed(&self) -> GroupElement {
        let table = self.frobenius_table();
        let alg = self.presentation();
        let two = Element::scalar(alg, 2);
        let lead_inv = &two - &self.coeffs[0];
        let mut beta = vec![lead_inv.clone()];
        for i in 1..=self.k() {
            let mut sum = Element::zero(alg);
            for nu in enumerate_compositions(i).expect("truncation level within range") {
                let mut prod = Element::one(alg);
                for (part, shift) in nu.with_shifts() {
                    prod = &prod * &table[part][shift];
                    if prod.is_zero() {
                        break;
                    }
                }
                if nu.len() % 2 == 1 {
                    prod = prod.negated();
                }
                sum = &sum + &prod;
            }
            let mut b = &lead_inv * &sum;
            if self.drops_eps() {
                b = b.eps_reduce();
            }
            beta.push(b);
        }
        GroupElement::from_parts(self.flavor, beta)
    }

    /// The partition formula with each coefficient split as `a + b*eps`.
    /// Only the first factor of a product can contribute an eps-part.
    pub fn invert_split(&self) -> Result<GroupElement> {
        if self.p() == 2 {
            return Err(Error::OddPrimeRequired);
        }
        if self.flavor != Flavor::Base {
            return Err(Error::BaseFlavorRequired);
        }
        let alg = self.presentation();
        let eps = Element::epsilon(alg)?;
        let split: Vec<(Element, Element)> = self.coeffs.iter().map(Element::eps_split).collect();
        // Even parts raised to p^j.
        let even_frob: Vec<Vec<Element>> = split
            .iter()
            .enumerate()
            .map(|(m, (a, _))| {
                let mut row = vec![a.clone()];
                for _ in 1..=(self.k() - m) {
                    let next = row.last().unwrap().frobenius(1);
                    row.push(next);
                }
                row
            })
            .collect();
        let one = Element::one(alg);
        let lead_inv = &one - &(&split[0].1 * &eps);
        let mut beta = vec![lead_inv.clone()];
        for i in 1..=self.k() {
            let mut sum = Element::zero(alg);
            for nu in enumerate_compositions(i).expect("truncation level within range") {
                let mut tail = Element::one(alg);
                for (part, shift) in nu.with_shifts().skip(1) {
                    tail = &tail * &even_frob[part][shift];
                }
                let first = nu.parts()[0];
                let even = &split[first].0 * &tail;
                let odd = &(&split[first].1 * &tail) * &eps;
                let mut term = &even + &odd;
                if nu.len() % 2 == 1 {
                    term = term.negated();
                }
                sum = &sum + &term;
            }
            beta.push(&lead_inv * &sum);
        }
        Ok(GroupElement::from_parts(self.flavor, beta))
    }

    pub fn invert(&self) -> GroupElement {
        self.invert_recursive()
    }

    /// `(α^{-1}·β^{-1})·(α·β)`.
    pub fn commutator(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_compatible(other)?;
        let left = self.invert().compose(&other.invert())?;
        left.compose(&self.compose(other)?)
    }

    /// The two leading coefficients of `[α, β]` predicted by the
    /// vanishing-pattern expansion, at indices `case.first_index()` and the next.
    pub fn commutator_leading(
        &self,
        other: &GroupElement,
        case: LeadingCase,
    ) -> Result<(Element, Element)> {
        self.check_compatible(other)?;
        if self.flavor != Flavor::Base {
            return Err(Error::BaseFlavorRequired);
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let p = self.p() as u64;
        let top = case.first_index() + 1;
        if self.k() < top {
            return Err(Error::Truncation {
                requested: top,
                available: self.k(),
            });
        }
        let zero_through = |c: &[Element], n: usize, name: &str| -> Result<()> {
            match (1..=n).find(|&i| !c[i].is_zero()) {
                Some(i) => Err(Error::Hypothesis(format!("{name}_{i} is nonzero"))),
                None => Ok(()),
            }
        };
        match case {
            LeadingCase::One => {}
            LeadingCase::Two { k } => {
                if k == 0 {
                    return Err(Error::Hypothesis("case 2 needs k >= 1".into()));
                }
                zero_through(a, k, "alpha")?;
            }
            LeadingCase::Three { k, l } => {
                if l == 0 || l > k {
                    return Err(Error::Hypothesis("case 3 needs k >= l >= 1".into()));
                }
                zero_through(a, k, "alpha")?;
                zero_through(b, l, "beta")?;
            }
        }
        let alg = self.presentation();
        let one = Element::one(alg);
        let b0m1 = &b[0] - &one;
        let one_m_a0 = &one - &a[0];
        Ok(match case {
            LeadingCase::One => {
                let c1 = &(&a[1] * &b0m1) + &(&one_m_a0 * &b[1]);
                let t1 = &(&a[2] - &a[1].pow(p + 1)) * &b0m1;
                let t2 = &one_m_a0 * &(&b[2] - &b[1].pow(p + 1));
                let t3 = &(&a[0] * &a[1].frobenius(1)) * &b[1];
                let t4 = &(&a[1] * &b[0]) * &b[1].frobenius(1);
                let c2 = &(&(&t1 + &t2) + &t3) - &t4;
                (c1, c2)
            }
            LeadingCase::Two { k } | LeadingCase::Three { k, .. } => {
                let bbar = other.invert();
                let lead = |i: usize| {
                    &(&a[i] * &b0m1) - &(&(&one_m_a0 * &b[0]) * &bbar.coeffs[i])
                };
                let c1 = lead(k + 1);
                let mut c2 = lead(k + 2);
                if let LeadingCase::Two { .. } = case {
                    let t3 = &(&a[0] * &a[k + 1].frobenius(1)) * &b[1];
                    let t4 = &(&a[k + 1] * &b[0]) * &b[1].frobenius(k as u32 + 1);
                    c2 = &(&c2 + &t3) - &t4;
                }
                (c1, c2)
            }
        })
    }

    /// Drops coefficients above index `k_new`.
    pub fn project(&self, k_new: usize) -> Result<GroupElement> {
        if k_new > self.k() {
            return Err(Error::Truncation {
                requested: k_new,
                available: self.k(),
            });
        }
        Ok(GroupElement::from_parts(
            self.flavor,
            self.coeffs[..=k_new].to_vec(),
        ))
    }

    /// Removes the eps-part of the top coefficient.
    pub fn half_quotient(&self) -> GroupElement {
        let mut coeffs = self.coeffs.clone();
        let top = coeffs.last_mut().unwrap();
        *top = top.eps_reduce();
        GroupElement::from_parts(self.flavor, coeffs)
    }

    /// Whether the top coefficient is eps-free.
    pub fn is_half_truncated(&self) -> bool {
        self.coeffs.last().unwrap().is_epsilon_free()
    }

    pub fn star_product(&self, other: &GroupElement) -> Result<GroupElement> {
        for (name, g) in [("left", self), ("right", other)] {
            if !g.is_half_truncated() {
                return Err(Error::InvalidElement(format!(
                    "{name} factor has an eps-part in its top coefficient"
                )));
            }
        }
        Ok(self.compose(other)?.half_quotient())
    }

    pub fn star_inverse(&self) -> Result<GroupElement> {
        if !self.is_half_truncated() {
            return Err(Error::InvalidElement(
                "top coefficient has an eps-part".into(),
            ));
        }
        Ok(self.invert().half_quotient())
    }

    /// The deepest filtration stage containing this element.
    pub fn filtration_level(&self) -> Filtration {
        if !self.coeffs[0].is_one() {
            return Filtration::Bottom;
        }
        match self.coeffs.iter().skip(1).position(|c| !c.is_zero()) {
            None => Filtration::Top,
            Some(m) => {
                if self.coeffs[m + 1].in_epsilon_ideal() {
                    Filtration::half(m as u32)
                } else {
                    Filtration::integer(m as u32)
                }
            }
        }
    }

    /// Membership in the subgroup cut out by `α_i^{p^{n-i+1}} = 0`
    /// (`1 <= i <= n`) and `α_i = 0` (`i > n`).
    pub fn in_gpn(&self, n: usize) -> bool {
        self.coeffs.iter().enumerate().skip(1).all(|(i, c)| {
            if i > n {
                c.is_zero()
            } else {
                c.frobenius((n - i + 1) as u32).is_zero()
            }
        })
    }

    /// Deletes every eps-part.
    pub fn pi_ev(&self) -> Result<GroupElement> {
        if self.p() == 2 {
            return Err(Error::OddPrimeRequired);
        }
        if self.flavor != Flavor::Base {
            return Err(Error::BaseFlavorRequired);
        }
        Ok(GroupElement::from_parts(
            self.flavor,
            self.coeffs.iter().map(Element::eps_reduce).collect(),
        ))
    }

    /// Every higher coefficient lies in the eps-ideal (the kernel of `pi_ev`).
    pub fn in_g_od(&self) -> bool {
        self.coeffs[1..].iter().all(Element::in_epsilon_ideal)
    }

    /// Whether no coefficient involves eps and `α_0 = 1`.
    pub fn in_g_ev(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs.iter().all(Element::is_epsilon_free)
    }

    /// Frobenius map to the next level. The base leading coefficient is kept
    /// (it may carry eps); at higher levels it becomes 1.
    pub fn rho(&self) -> GroupElement {
        let alg = self.presentation();
        let flavor = self.flavor.next();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(match self.flavor {
            Flavor::Base if self.p() != 2 => self.coeffs[0].clone(),
            _ => Element::one(alg),
        });
        for c in &self.coeffs[1..] {
            coeffs.push(c.frobenius(1).eps_reduce());
        }
        GroupElement::from_parts(flavor, coeffs)
    }

    /// Kernel of [`rho`](Self::rho), tested literally.
    pub fn in_abelian_kernel(&self) -> bool {
        self.rho().is_identity()
    }

    /// Applies `f` to every coefficient and revalidates.
    pub fn map_coefficients<F>(&self, f: F) -> Result<GroupElement>
    where
        F: Fn(&Element) -> Result<Element>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        GroupElement::new(self.flavor, coeffs)
    }

    /// Group power by repeated composition.
    pub fn power(&self, n: usize) -> GroupElement {
        let mut acc = self.identity_like();
        for _ in 0..n {
            acc = acc.compose(self).expect("compatible with itself");
        }
        acc
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = if i == 0 {
                "X".to_string()
            } else {
                format!("X^{}", (p as u128).pow(i as u32))
            };
            if c.is_one() {
                parts.push(x);
            } else {
                parts.push(format!("({c})*{x}"));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} [{}, k={}]", parts.join(" + "), self.flavor, self.k())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flavor
            .cmp(&other.flavor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Generator, Monomial};

    fn f2a() -> Arc<Presentation> {
        Presentation::new(2, vec![Generator::new("a", 1, Some(4))]).unwrap()
    }

    fn elt(alg: &Arc<Presentation>, terms: &[(&[u32], i64)]) -> Element {
        Element::from_terms(
            alg,
            terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e), *c)),
        )
        .unwrap()
    }

    #[test]
    fn coefficient_degrees() {
        assert_eq!(coefficient_degree(2, Flavor::Base, 1), 1);
        assert_eq!(coefficient_degree(2, Flavor::Base, 3), 7);
        assert_eq!(coefficient_degree(3, Flavor::Base, 1), 4);
        assert_eq!(coefficient_degree(3, Flavor::Level(1), 1), 12);
        assert_eq!(coefficient_degree(2, Flavor::Level(2), 1), 4);
    }

    #[test]
    fn flavor_strings() {
        assert_eq!("base".parse::<Flavor>().unwrap(), Flavor::Base);
        assert_eq!("level3".parse::<Flavor>().unwrap(), Flavor::Level(3));
        assert!("level0".parse::<Flavor>().is_err());
        assert_eq!(Flavor::Level(2).to_string(), "level2");
    }

    #[test]
    fn hand_composition_and_inverse() {
        let alg = f2a();
        let a = elt(&alg, &[(&[1], 1)]);
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), a.clone(), Element::zero(&alg)],
        )
        .unwrap();
        let sq = g.compose(&g).unwrap();
        assert!(sq.coeff(1).is_zero());
        assert_eq!(*sq.coeff(2), a.pow(3));
        let inv = g.invert_recursive();
        assert_eq!(*inv.coeff(1), a);
        assert_eq!(*inv.coeff(2), a.pow(3));
        assert_eq!(inv, g.invert_closed());
        assert!(g.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn split_inverse_of_leading_term() {
        let alg = Presentation::new(3, vec![Generator::new("c", 1, None)])
            .unwrap()
            .adjoin_epsilon()
            .unwrap();
        let c = elt(&alg, &[(&[1, 0], 1)]);
        let eps = Element::epsilon(&alg).unwrap();
        let ce = &c * &eps;
        let g = GroupElement::new(
            Flavor::Base,
            vec![&Element::one(&alg) + &ce, Element::zero(&alg)],
        )
        .unwrap();
        let inv = g.invert_split().unwrap();
        assert_eq!(*inv.coeff(0), &Element::one(&alg) - &ce);
        assert_eq!(inv, g.invert_recursive());
    }

    #[test]
    fn filtration_examples() {
        let alg = f2a();
        let id = GroupElement::identity(&alg, 2, Flavor::Base).unwrap();
        assert_eq!(id.filtration_level(), Filtration::Top);
        // X + a^3 X^4 over F_2[a]/(a^4) sits at level 1.
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), Element::zero(&alg), elt(&alg, &[(&[3], 1)])],
        )
        .unwrap();
        assert_eq!(g.filtration_level(), Filtration::integer(1));
        assert_eq!(g.filtration_level().to_string(), "1");
    }

    #[test]
    fn half_filtration_with_eps() {
        let alg = Presentation::new(3, vec![Generator::new("c", 17, Some(2))])
            .unwrap()
            .adjoin_epsilon()
            .unwrap();
        let ce = elt(&alg, &[(&[1, 1], 1)]);
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), Element::zero(&alg), ce],
        )
        .unwrap();
        assert_eq!(g.filtration_level(), Filtration::half(1));
        assert_eq!(g.filtration_level().to_string(), "1.5");
        assert!(g.half_quotient().is_identity());
    }

    #[test]
    fn validation_rejects_bad_degrees() {
        let alg = f2a();
        let bad = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), elt(&alg, &[(&[2], 1)])],
        );
        assert!(matches!(bad, Err(Error::InvalidElement(_))));
        let bad_lead = GroupElement::new(Flavor::Base, vec![Element::zero(&alg)]);
        assert!(bad_lead.is_err());
    }

    #[test]
    fn projection_truncates() {
        let alg = f2a();
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), elt(&alg, &[(&[1], 1)]), elt(&alg, &[(&[3], 1)])],
        )
        .unwrap();
        let h = g.project(1).unwrap();
        assert_eq!(h.k(), 1);
        assert_eq!(h.coeff(1), g.coeff(1));
        assert_eq!(g.project(2).unwrap(), g);
        assert!(g.project(3).is_err());
    }

    #[test]
    fn gpn_membership() {
        let alg = Presentation::new(
            2,
            vec![Generator::new("z1", 1, Some(4)), Generator::new("z2", 3, Some(2))],
        )
        .unwrap();
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), elt(&alg, &[(&[1, 0], 1)]), Element::zero(&alg)],
        )
        .unwrap();
        assert!(g.in_gpn(2));
        assert!(!g.in_gpn(1));
        assert!(!g.in_gpn(0));
    }

    #[test]
    fn rho_of_square_zero_is_identity() {
        let alg = Presentation::new(2, vec![Generator::new("z1", 1, Some(2))]).unwrap();
        let g = GroupElement::new(
            Flavor::Base,
            vec![Element::one(&alg), elt(&alg, &[(&[1], 1)])],
        )
        .unwrap();
        assert!(g.in_abelian_kernel());
        assert_eq!(g.rho().flavor(), Flavor::Level(1));
    }
}
