//! Finitely presented graded-commutative algebras over a prime field.
//!
//! A [`Presentation`] is an ordered list of generators, each carrying a
//! degree and an optional nilpotency cap (the smallest exponent that
//! vanishes). All relations are monomial, so an [`Element`] is stored in
//! normal form: a sparse map from exponent vectors to nonzero residues mod p.
//! Multiplication applies the Koszul sign for odd-degree generators.
//!
//! The exterior variable `eps` of degree -1 is an ordinary generator with
//! cap 2 that is always appended last; [`Presentation::adjoin_epsilon`]
//! creates it and [`Element::eps_reduce`] kills it.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Reserved name of the exterior generator of degree -1.
pub const EPSILON: &str = "eps";

/// Upper bound on the number of elements [`enumerate_component`] will list.
pub const DEFAULT_COMPONENT_LIMIT: u128 = 1 << 20;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// Smallest vanishing exponent; `None` means polynomial.
    pub cap: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64, cap: Option<u32>) -> Self {
        Generator {
            name: name.into(),
            degree,
            cap,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// A validated presentation. Shared behind an `Arc`; never mutated.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    p: u32,
    generators: Vec<Generator>,
    epsilon: Option<usize>,
}

impl Presentation {
    /// Validates and normalizes a presentation. For odd `p` every odd-degree
    /// generator gets cap at most 2.
    pub fn new(p: u32, generators: Vec<Generator>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(generators.len());
        for mut g in generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::DuplicateGenerator(g.name));
            }
            if let Some(0) = g.cap {
                return Err(Error::InvalidCap {
                    name: g.name,
                    cap: 0,
                });
            }
            if p != 2 && g.is_odd() {
                g.cap = Some(g.cap.map_or(2, |c| c.min(2)));
            }
            normalized.push(g);
        }
        let epsilon = normalized
            .iter()
            .position(|g| g.name == EPSILON && g.degree == -1);
        if let Some(i) = epsilon {
            if i + 1 != normalized.len() {
                return Err(Error::Parse(format!(
                    "generator `{EPSILON}` must be listed last"
                )));
            }
        }
        Ok(Arc::new(Presentation {
            p,
            generators: normalized,
            epsilon,
        }))
    }

    /// The prime field itself.
    pub fn ground_field(p: u32) -> Result<Arc<Self>> {
        Presentation::new(p, Vec::new())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn epsilon_index(&self) -> Option<usize> {
        self.epsilon
    }

    pub fn has_epsilon(&self) -> bool {
        self.epsilon.is_some()
    }

    /// Appends `eps` (degree -1, cap 2). For p = 2 the exterior variable is
    /// identically zero and the presentation is returned unchanged.
    pub fn adjoin_epsilon(self: &Arc<Self>) -> Result<Arc<Self>> {
        if self.p == 2 {
            return Ok(Arc::clone(self));
        }
        if self.epsilon.is_some() || self.index_of(EPSILON).is_some() {
            return Err(Error::EpsilonPresent);
        }
        let mut gens = self.generators.clone();
        gens.push(Generator::new(EPSILON, -1, Some(2)));
        Presentation::new(self.p, gens)
    }

    /// Adjoins `eps` unless it is already there (or p = 2).
    pub fn with_epsilon(self: &Arc<Self>) -> Result<Arc<Self>> {
        if self.p == 2 || self.has_epsilon() {
            Ok(Arc::clone(self))
        } else {
            self.adjoin_epsilon()
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as i64 * g.degree)
            .sum()
    }

    fn max_exponent(&self, i: usize) -> Option<u32> {
        self.generators[i].cap.map(|c| c - 1)
    }

    /// Product of two normal-form monomials: `None` when a cap is hit,
    /// otherwise the product monomial and whether the Koszul sign is -1.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let n = self.generators.len();
        let mut out: SmallVec<[u32; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let e = a.0[i] + b.0[i];
            if let Some(cap) = self.generators[i].cap {
                if e >= cap {
                    return None;
                }
            }
            out.push(e);
        }
        // Moving each odd factor of b left past the odd factors of a that
        // sit at later positions.
        let mut negative = false;
        if self.p != 2 {
            let mut odd_a_after = 0u32;
            for j in (0..n).rev() {
                let g = &self.generators[j];
                if g.is_odd() {
                    if b.0[j] % 2 == 1 && odd_a_after % 2 == 1 {
                        negative = !negative;
                    }
                    if a.0[j] % 2 == 1 {
                        odd_a_after += 1;
                    }
                }
            }
        }
        Some((Monomial(out), negative))
    }

    /// All normal-form monomials of degree `d`.
    pub fn monomials_of_degree(&self, d: i64) -> Result<Vec<Monomial>> {
        let bounds = self.exponent_bounds(d)?;
        let n = self.generators.len();
        let degs: Vec<i64> = self.generators.iter().map(|g| g.degree).collect();
        let mut suffix_min = vec![0i64; n + 1];
        let mut suffix_max = vec![0i64; n + 1];
        for i in (0..n).rev() {
            let reach = degs[i] * bounds[i] as i64;
            suffix_min[i] = suffix_min[i + 1] + reach.min(0);
            suffix_max[i] = suffix_max[i + 1] + reach.max(0);
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fn walk(
            i: usize,
            remaining: i64,
            degs: &[i64],
            bounds: &[u32],
            suffix_min: &[i64],
            suffix_max: &[i64],
            current: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if remaining < suffix_min[i] || remaining > suffix_max[i] {
                return;
            }
            if i == degs.len() {
                if remaining == 0 {
                    out.push(Monomial(current.iter().copied().collect()));
                }
                return;
            }
            for e in 0..=bounds[i] {
                current[i] = e;
                walk(
                    i + 1,
                    remaining - degs[i] * e as i64,
                    degs,
                    bounds,
                    suffix_min,
                    suffix_max,
                    current,
                    out,
                );
            }
            current[i] = 0;
        }
        walk(
            0,
            d,
            &degs,
            &bounds,
            &suffix_min,
            &suffix_max,
            &mut current,
            &mut out,
        );
        out.sort();
        Ok(out)
    }

    /// Largest exponent each generator can carry inside a monomial of degree `d`.
    pub(crate) fn exponent_bounds(&self, d: i64) -> Result<Vec<u32>> {
        let mut capped_min = 0i64;
        let mut capped_max = 0i64;
        let mut uncapped_pos = None;
        let mut uncapped_neg = None;
        for (i, g) in self.generators.iter().enumerate() {
            match self.max_exponent(i) {
                Some(m) => {
                    let reach = g.degree * m as i64;
                    capped_min += reach.min(0);
                    capped_max += reach.max(0);
                }
                None if g.degree == 0 => {
                    return Err(Error::InfiniteComponent {
                        generator: g.name.clone(),
                        degree: d,
                    })
                }
                None if g.degree > 0 => uncapped_pos = Some(i),
                None => uncapped_neg = Some(i),
            }
        }
        if let (Some(_), Some(j)) = (uncapped_pos, uncapped_neg) {
            return Err(Error::InfiniteComponent {
                generator: self.generators[j].name.clone(),
                degree: d,
            });
        }
        Ok(self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| match self.max_exponent(i) {
                Some(m) => m,
                None if g.degree > 0 => ((d - capped_min).max(0) / g.degree) as u32,
                None => ((capped_max - d).max(0) / -g.degree) as u32,
            })
            .collect())
    }
}

pub(crate) fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector indexed by generator position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn generator(len: usize, index: usize) -> Self {
        let mut m = Monomial::unit(len);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self >= other`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    fn scaled(&self, factor: u64) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for &e in &self.0 {
            out.push(u32::try_from(e as u64 * factor).ok()?);
        }
        Some(Monomial(out))
    }
}

fn reduce(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

/// A normal-form element: sparse F_p-combination of monomials.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Presentation>,
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero(alg: &Arc<Presentation>) -> Self {
        Element {
            alg: Arc::clone(alg),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<Presentation>) -> Self {
        Element::scalar(alg, 1)
    }

    pub fn scalar(alg: &Arc<Presentation>, c: i64) -> Self {
        let mut x = Element::zero(alg);
        let c = reduce(c, alg.p);
        if c != 0 {
            x.terms.insert(Monomial::unit(alg.len()), c);
        }
        x
    }

    /// The generator at position `index`, or zero if its cap is 1.
    pub fn generator(alg: &Arc<Presentation>, index: usize) -> Self {
        let mut x = Element::zero(alg);
        if alg.generators[index].cap != Some(1) {
            x.terms.insert(Monomial::generator(alg.len(), index), 1);
        }
        x
    }

    pub fn generator_named(alg: &Arc<Presentation>, name: &str) -> Result<Self> {
        let i = alg
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Element::generator(alg, i))
    }

    /// `eps` itself; zero for p = 2.
    pub fn epsilon(alg: &Arc<Presentation>) -> Result<Self> {
        if alg.p == 2 {
            return Ok(Element::zero(alg));
        }
        alg.epsilon
            .map(|i| Element::generator(alg, i))
            .ok_or(Error::NoEpsilon)
    }

    /// Builds an element from raw terms. Monomials violating a cap are zero
    /// in the algebra and are dropped.
    pub fn from_terms<I>(alg: &Arc<Presentation>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut x = Element::zero(alg);
        for (m, c) in terms {
            if m.0.len() != alg.len() {
                return Err(Error::ExponentLength {
                    expected: alg.len(),
                    got: m.0.len(),
                });
            }
            let within = m
                .0
                .iter()
                .zip(&alg.generators)
                .all(|(&e, g)| g.cap.is_none_or(|cap| e < cap));
            if within {
                x.add_term(m, reduce(c, alg.p));
            }
        }
        Ok(x)
    }

    pub fn monomial(alg: &Arc<Presentation>, m: Monomial) -> Result<Self> {
        Element::from_terms(alg, [(m, 1)])
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == 1
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::unit(self.alg.len()))
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.alg.p;
        let slot = self.terms.entry(m);
        match slot {
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

    fn check_same(&self, other: &Element) -> Result<()> {
        if same_presentation(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.negated())
    }

    pub fn negated(&self) -> Element {
        self.scaled(-1)
    }

    pub fn scaled(&self, c: i64) -> Element {
        let p = self.alg.p;
        let c = reduce(c, p) as u64;
        let mut out = Element::zero(&self.alg);
        if c == 0 {
            return out;
        }
        for (m, &v) in &self.terms {
            out.terms.insert(m.clone(), (v as u64 * c % p as u64) as u32);
        }
        out
    }

    /// Graded-commutative product with Koszul signs.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let p = self.alg.p as u64;
        let mut out = Element::zero(&self.alg);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((m, negative)) = self.alg.mul_monomials(a, b) {
                    let mut c = ca as u64 * cb as u64 % p;
                    if negative {
                        c = (p - c) % p;
                    }
                    out.add_term(m, c as u32);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut n: u64) -> Element {
        let mut result = Element::one(&self.alg);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `x^(p^j)`, computed termwise: the Frobenius is additive in
    /// characteristic p, odd-degree parts square to zero, and c^p = c in F_p.
    pub fn frobenius(&self, j: u32) -> Element {
        if j == 0 {
            return self.clone();
        }
        let factor = match (self.alg.p as u64).checked_pow(j) {
            Some(f) => f,
            None => return self.frobenius_overflow(),
        };
        let mut out = Element::zero(&self.alg);
        for (m, &c) in &self.terms {
            if m.is_unit() {
                out.add_term(m.clone(), c);
                continue;
            }
            let Some(scaled) = m.scaled(factor) else {
                // Only reachable for uncapped generators with absurd exponents.
                panic!("exponent overflow in frobenius power");
            };
            let within = scaled
                .0
                .iter()
                .zip(&self.alg.generators)
                .all(|(&e, g)| g.cap.is_none_or(|cap| e < cap));
            if within {
                out.add_term(scaled, c);
            }
        }
        out
    }

    fn frobenius_overflow(&self) -> Element {
        // p^j no longer fits; every non-constant monomial must vanish or overflow.
        let mut out = Element::zero(&self.alg);
        let c = self.constant_term();
        let has_uncapped = self.terms.keys().any(|m| {
            m.0.iter()
                .zip(&self.alg.generators)
                .any(|(&e, g)| e > 0 && g.cap.is_none())
        });
        assert!(!has_uncapped, "exponent overflow in frobenius power");
        out.add_term(Monomial::unit(self.alg.len()), c);
        out
    }

    /// The quotient map A[eps] -> A: deletes every monomial containing eps.
    pub fn eps_reduce(&self) -> Element {
        match self.alg.epsilon {
            None => self.clone(),
            Some(i) => Element {
                alg: Arc::clone(&self.alg),
                terms: self
                    .terms
                    .iter()
                    .filter(|(m, _)| m.0[i] == 0)
                    .map(|(m, &c)| (m.clone(), c))
                    .collect(),
            },
        }
    }

    /// Writes `self = a + b*eps` with `a`, `b` free of eps.
    pub fn eps_split(&self) -> (Element, Element) {
        let Some(i) = self.alg.epsilon else {
            return (self.clone(), Element::zero(&self.alg));
        };
        let mut even = Element::zero(&self.alg);
        let mut coeff = Element::zero(&self.alg);
        for (m, &c) in &self.terms {
            if m.0[i] == 0 {
                even.terms.insert(m.clone(), c);
            } else {
                let mut stripped = m.clone();
                stripped.0[i] = 0;
                coeff.terms.insert(stripped, c);
            }
        }
        (even, coeff)
    }

    /// Membership in the ideal generated by eps (always true for zero).
    pub fn in_epsilon_ideal(&self) -> bool {
        match self.alg.epsilon {
            None => self.is_zero(),
            Some(i) => self.terms.keys().all(|m| m.0[i] > 0),
        }
    }

    pub fn is_epsilon_free(&self) -> bool {
        match self.alg.epsilon {
            None => true,
            Some(i) => self.terms.keys().all(|m| m.0[i] == 0),
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| self.alg.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// True for zero and for homogeneous elements of degree `d`.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms
            .keys()
            .all(|m| self.alg.monomial_degree(m) == d)
    }

    /// Reinterprets the element in a presentation that extends this one by
    /// generators appended at the end (for instance after adjoining eps).
    pub fn embed(&self, target: &Arc<Presentation>) -> Result<Element> {
        let n = self.alg.len();
        if target.p != self.alg.p
            || target.len() < n
            || target.generators[..n] != self.alg.generators[..]
        {
            return Err(Error::PresentationMismatch);
        }
        let extra = target.len() - n;
        Ok(Element {
            alg: Arc::clone(target),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat_n(0, extra));
                    (Monomial(e), c)
                })
                .collect(),
        })
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn format_monomial(alg: &Presentation, m: &Monomial) -> String {
    let factors: Vec<String> = m
        .0
        .iter()
        .zip(&alg.generators)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, g)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mono = format_monomial(&self.alg, m);
                match (c, m.is_unit()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Operator sugar. These panic when the operands live in different
// presentations; the `try_*` methods report that as an error instead.

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("adding elements of different presentations")
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs)
            .expect("subtracting elements of different presentations")
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        self.try_mul(rhs)
            .expect("multiplying elements of different presentations")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.negated()
    }
}

/// Every homogeneous element of degree `d`, zero included, each exactly once.
pub fn enumerate_component(alg: &Arc<Presentation>, d: i64) -> Result<Vec<Element>> {
    enumerate_component_with_limit(alg, d, DEFAULT_COMPONENT_LIMIT)
}

pub fn enumerate_component_with_limit(
    alg: &Arc<Presentation>,
    d: i64,
    limit: u128,
) -> Result<Vec<Element>> {
    let basis = alg.monomials_of_degree(d)?;
    let p = alg.p as u128;
    let size = (0..basis.len()).try_fold(1u128, |acc, _| acc.checked_mul(p));
    let size = match size {
        Some(s) if s <= limit => s,
        Some(s) => return Err(Error::LimitExceeded { size: s, limit }),
        None => {
            return Err(Error::LimitExceeded {
                size: u128::MAX,
                limit,
            })
        }
    };
    let mut out = Vec::with_capacity(size as usize);
    let mut digits = vec![0u32; basis.len()];
    loop {
        let x = Element {
            alg: Arc::clone(alg),
            terms: basis
                .iter()
                .zip(&digits)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        };
        out.push(x);
        // Odometer increment in base p.
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] == alg.p {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// An algebra homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    images: Vec<Element>,
}

impl AlgebraMap {
    /// Checks that images are degree-preserving and respect the source caps.
    pub fn new(
        source: &Arc<Presentation>,
        target: &Arc<Presentation>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Assignment(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        if source.p != target.p {
            return Err(Error::PresentationMismatch);
        }
        for (g, img) in source.generators.iter().zip(&images) {
            if !same_presentation(img.presentation(), target) {
                return Err(Error::PresentationMismatch);
            }
            if !img.is_homogeneous_of(g.degree) {
                return Err(Error::Assignment(format!(
                    "image of `{}` is not homogeneous of degree {}",
                    g.name, g.degree
                )));
            }
            if let Some(cap) = g.cap {
                if !img.pow(cap as u64).is_zero() {
                    return Err(Error::Assignment(format!(
                        "image of `{}` does not satisfy {}^{} = 0",
                        g.name, g.name, cap
                    )));
                }
            }
        }
        Ok(AlgebraMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_presentation(x.presentation(), &self.source) {
            return Err(Error::PresentationMismatch);
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in x.terms() {
            out = &out + &self.apply_monomial(m).scaled(c as i64);
        }
        Ok(out)
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let mut value = Element::one(&self.target);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                value = &value * &self.images[i].pow(e as u64);
            }
        }
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_2() -> Arc<Presentation> {
        Presentation::new(
            2,
            vec![
                Generator::new("z1", 1, Some(4)),
                Generator::new("z2", 3, Some(2)),
            ],
        )
        .unwrap()
    }

    fn odd3() -> Arc<Presentation> {
        Presentation::new(
            3,
            vec![
                Generator::new("t0", 1, None),
                Generator::new("t1", 5, None),
                Generator::new("x1", 4, Some(9)),
            ],
        )
        .unwrap()
        .adjoin_epsilon()
        .unwrap()
    }

    #[test]
    fn presentation_validation() {
        assert_eq!(Presentation::new(4, vec![]).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Presentation::new(1, vec![]).unwrap_err(), Error::NotPrime(1));
        let dup = Presentation::new(
            2,
            vec![Generator::new("a", 1, None), Generator::new("a", 2, None)],
        );
        assert_eq!(dup.unwrap_err(), Error::DuplicateGenerator("a".into()));
        let a = a2_2();
        assert_eq!(a.generators()[0].cap, Some(4));
        assert_eq!(a.generators()[1].cap, Some(2));
    }

    #[test]
    fn odd_caps_normalized() {
        let a = Presentation::new(3, vec![Generator::new("tau0", 1, Some(5))]).unwrap();
        assert_eq!(a.generators()[0].cap, Some(2));
        let b = Presentation::new(3, vec![Generator::new("tau0", 1, None)]).unwrap();
        assert_eq!(b.generators()[0].cap, Some(2));
        // p = 2 keeps odd generators polynomial.
        let c = Presentation::new(2, vec![Generator::new("z1", 1, None)]).unwrap();
        assert_eq!(c.generators()[0].cap, None);
    }

    #[test]
    fn epsilon_adjunction() {
        let a = Presentation::new(3, vec![Generator::new("x1", 4, Some(3))]).unwrap();
        let b = a.adjoin_epsilon().unwrap();
        let names: Vec<_> = b.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x1", "eps"]);
        assert_eq!(b.epsilon_index(), Some(1));
        assert_eq!(b.adjoin_epsilon().unwrap_err(), Error::EpsilonPresent);
        let two = a2_2();
        assert!(Arc::ptr_eq(&two.adjoin_epsilon().unwrap(), &two));
    }

    #[test]
    fn epsilon_squares_to_zero() {
        let a = odd3();
        let e = Element::epsilon(&a).unwrap();
        assert!((&e * &e).is_zero());
    }

    #[test]
    fn unit_and_even_odd_commute() {
        let a = odd3();
        let t0 = Element::generator_named(&a, "t0").unwrap();
        let x1 = Element::generator_named(&a, "x1").unwrap();
        let one = Element::one(&a);
        assert_eq!(&one * &x1, x1);
        assert_eq!(&t0 * &x1, &x1 * &t0);
        assert_eq!((&t0 * &x1).to_string(), "t0*x1");
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = odd3();
        let t0 = Element::generator_named(&a, "t0").unwrap();
        let t1 = Element::generator_named(&a, "t1").unwrap();
        let e = Element::epsilon(&a).unwrap();
        assert_eq!(&t1 * &t0, (&t0 * &t1).negated());
        assert_eq!(&e * &t0, (&t0 * &e).negated());
        assert!((&t0 * &t0).is_zero());
    }

    #[test]
    fn frobenius_examples() {
        let a = odd3();
        let t0 = Element::generator_named(&a, "t0").unwrap();
        let e = Element::epsilon(&a).unwrap();
        // (1 + t0*eps)^3 = 1
        let x = &Element::one(&a) + &(&t0 * &e);
        assert!(x.frobenius(1).is_one());
        assert_eq!(x.frobenius(0), x);
        assert_eq!(x.frobenius(1), x.pow(3));

        let b = a2_2();
        let z1 = Element::generator_named(&b, "z1").unwrap();
        let z2 = Element::generator_named(&b, "z2").unwrap();
        let s = &z1 + &z2;
        assert_eq!(s.frobenius(1), &z1.pow(2) + &z2.pow(2));
        assert_eq!(s.frobenius(1), s.pow(2));
        assert!(s.frobenius(2).is_zero());
    }

    #[test]
    fn eps_reduce_examples() {
        let a = odd3();
        let t0 = Element::generator_named(&a, "t0").unwrap();
        let x1 = Element::generator_named(&a, "x1").unwrap();
        let e = Element::epsilon(&a).unwrap();
        let y = &x1 + &(&t0 * &e);
        assert_eq!(y.eps_reduce(), x1);
        assert_eq!(x1.eps_reduce(), x1);
        assert!(e.eps_reduce().is_zero());
        let (even, coeff) = y.eps_split();
        assert_eq!(even, x1);
        assert_eq!(coeff, t0);
        assert_eq!(&even + &(&coeff * &e), y);
    }

    #[test]
    fn component_enumeration() {
        let a = a2_2();
        assert_eq!(enumerate_component(&a, 1).unwrap().len(), 2);
        let d3 = enumerate_component(&a, 3).unwrap();
        assert_eq!(d3.len(), 4);
        let z1 = Element::generator_named(&a, "z1").unwrap();
        let z2 = Element::generator_named(&a, "z2").unwrap();
        assert!(d3.contains(&z1.pow(3)));
        assert!(d3.contains(&z2));
        assert!(d3.contains(&(&z1.pow(3) + &z2)));
        assert_eq!(enumerate_component(&a, 2).unwrap().len(), 2);
        assert_eq!(enumerate_component(&a, 100).unwrap(), vec![Element::zero(&a)]);
    }

    #[test]
    fn component_enumeration_with_epsilon() {
        let a = odd3();
        // degree 0: 1, t0*eps -> 9 elements
        let m = a.monomials_of_degree(0).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(enumerate_component(&a, 0).unwrap().len(), 9);
    }

    #[test]
    fn infinite_component_rejected() {
        let a = Presentation::new(
            2,
            vec![Generator::new("u", 1, None), Generator::new("v", -1, None)],
        )
        .unwrap();
        assert!(matches!(
            a.monomials_of_degree(0),
            Err(Error::InfiniteComponent { .. })
        ));
        let b = Presentation::new(2, vec![Generator::new("w", 0, None)]).unwrap();
        assert!(matches!(
            b.monomials_of_degree(0),
            Err(Error::InfiniteComponent { .. })
        ));
    }

    #[test]
    fn mismatched_presentations() {
        let x = Element::one(&a2_2());
        let y = Element::one(&odd3());
        assert_eq!(x.try_mul(&y).unwrap_err(), Error::PresentationMismatch);
    }

    #[test]
    fn algebra_map_checks_caps() {
        let src = Presentation::new(2, vec![Generator::new("u", 1, Some(2))]).unwrap();
        let tgt = Presentation::new(2, vec![Generator::new("v", 1, None)]).unwrap();
        let v = Element::generator(&tgt, 0);
        assert!(AlgebraMap::new(&src, &tgt, vec![v]).is_err());
        let tgt2 = Presentation::new(2, vec![Generator::new("v", 1, Some(2))]).unwrap();
        let v2 = Element::generator(&tgt2, 0);
        let f = AlgebraMap::new(&src, &tgt2, vec![v2.clone()]).unwrap();
        assert_eq!(f.apply(&Element::generator(&src, 0)).unwrap(), v2);
    }
}
