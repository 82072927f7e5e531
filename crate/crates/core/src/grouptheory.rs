//! Finite groups `G_{p,n}(A_*)` over finite graded algebras: enumeration,
//! Cayley tables, lower central and derived series.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{enumerate_component, Element, Presentation};
use crate::error::{Error, Result};
use crate::group::{coefficient_degree, Filtration, Flavor, GroupElement};

/// Default cap on the number of enumerated elements. The table has |G|^2 entries.
pub const DEFAULT_GROUP_LIMIT: usize = 4096;

/// The element cap, overridable through `STEENROD_LIMIT`.
pub fn group_limit() -> usize {
    std::env::var("STEENROD_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_LIMIT)
}

/// Which elements of `G_{p,n}(A_*)` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Full,
    /// eps-free elements with `α_0 = 1`.
    Even,
}

#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    p: u32,
    n: usize,
    family: Family,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    identity: usize,
}

fn candidates(
    alg: &Arc<Presentation>,
    group_alg: &Arc<Presentation>,
    d: i64,
    with_eps: bool,
) -> Result<Vec<Element>> {
    let evens = enumerate_component(alg, d)?;
    let evens: Vec<Element> = evens
        .iter()
        .map(|x| x.embed(group_alg))
        .collect::<Result<_>>()?;
    if !with_eps {
        return Ok(evens);
    }
    let eps = Element::epsilon(group_alg)?;
    let odds = enumerate_component(alg, d + 1)?;
    let mut out = Vec::with_capacity(evens.len() * odds.len());
    for b in &odds {
        let b_eps = &b.embed(group_alg)? * &eps;
        for a in &evens {
            out.push(a + &b_eps);
        }
    }
    Ok(out)
}

impl FiniteGroupTable {
    /// Enumerates `G_{p,n}(A_*)` truncated at `k = n`, or its even part.
    /// `alg` must not contain eps; it is adjoined at odd primes.
    pub fn enumerate(alg: &Arc<Presentation>, n: usize, family: Family) -> Result<Self> {
        Self::enumerate_with_limit(alg, n, family, group_limit())
    }

    pub fn enumerate_with_limit(
        alg: &Arc<Presentation>,
        n: usize,
        family: Family,
        limit: usize,
    ) -> Result<Self> {
        let p = alg.p();
        if alg.has_epsilon() {
            return Err(Error::Hypothesis(
                "enumerate over an algebra without eps; it is adjoined here".into(),
            ));
        }
        if family == Family::Even && p == 2 {
            return Err(Error::OddPrimeRequired);
        }
        let flavor = Flavor::Base;
        let group_alg = alg.with_epsilon()?;
        let odd = p != 2 && family == Family::Full;
        let one = Element::one(&group_alg);

        let leads: Vec<Element> = if odd {
            let eps = Element::epsilon(&group_alg)?;
            enumerate_component(alg, 1)?
                .iter()
                .map(|c| Ok(&one + &(&c.embed(&group_alg)? * &eps)))
                .collect::<Result<_>>()?
        } else {
            vec![one]
        };
        let mut slots = vec![leads];
        for i in 1..=n {
            let d = coefficient_degree(p, flavor, i);
            let cands = candidates(alg, &group_alg, d, odd)?;
            let power = (n - i + 1) as u32;
            slots.push(
                cands
                    .into_iter()
                    .filter(|c| c.frobenius(power).is_zero())
                    .collect(),
            );
        }
        let size = slots
            .iter()
            .try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
        match size {
            Some(s) if s <= limit => {}
            other => {
                return Err(Error::LimitExceeded {
                    size: other.map_or(u128::MAX, |s| s as u128),
                    limit: limit as u128,
                })
            }
        }

        let mut elements = Vec::new();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let coeffs = digits
                .iter()
                .zip(&slots)
                .map(|(&d, s)| s[d].clone())
                .collect();
            elements.push(GroupElement::new(flavor, coeffs)?);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] == slots[i].len() {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == digits.len() {
                break;
            }
        }
        elements.sort();
        elements.dedup();
        Self::from_elements(p, n, family, elements)
    }

    /// Builds the table for a list of elements closed under composition.
    pub fn from_elements(
        p: u32,
        n: usize,
        family: Family,
        elements: Vec<GroupElement>,
    ) -> Result<Self> {
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let size = elements.len();
        let mut table = vec![0u32; size * size];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                let z = x.compose(y)?;
                let Some(&c) = index.get(&z) else {
                    return Err(Error::Hypothesis(format!(
                        "not closed: {x} * {y} = {z}"
                    )));
                };
                table[a * size + b] = c as u32;
            }
        }
        let identity = elements
            .iter()
            .position(GroupElement::is_identity)
            .ok_or_else(|| Error::Hypothesis("identity missing".into()))?;
        let mut inverses = vec![usize::MAX; size];
        for a in 0..size {
            for b in 0..size {
                if table[a * size + b] as usize == identity {
                    inverses[a] = b;
                    break;
                }
            }
            if inverses[a] == usize::MAX {
                return Err(Error::Hypothesis(format!(
                    "no inverse for {}",
                    elements[a]
                )));
            }
        }
        Ok(FiniteGroupTable {
            p,
            n,
            family,
            elements,
            index,
            table,
            inverses,
            identity,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `[a, b] = (a^-1 b^-1)(a b)` in the composition order of the table.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let left = self.mul(self.inverse(a), self.inverse(b));
        self.mul(left, self.mul(a, b))
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        for a in 0..n {
            stamp += 1;
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == stamp {
                    return false;
                }
                seen[c] = stamp;
            }
        }
        for b in 0..n {
            stamp += 1;
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == stamp {
                    return false;
                }
                seen[c] = stamp;
            }
        }
        true
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as sorted indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut gens: Vec<usize> = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..n).filter(|&i| member[i]).collect()
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }

    /// Subgroup generated by the commutators `[a, b]`, `a ∈ left`, `b ∈ right`.
    pub fn commutator_subgroup(&self, left: &[usize], right: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.order()];
        for &a in left {
            for &b in right {
                hit[self.commutator(a, b)] = true;
            }
        }
        let gens: Vec<usize> = (0..self.order()).filter(|&i| hit[i]).collect();
        self.closure(&gens)
    }

    fn filtration(&self, i: usize) -> Filtration {
        self.elements[i].filtration_level()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub family: Family,
    pub p: u32,
    pub n: usize,
    pub order: usize,
    /// Subgroup orders along the chain.
    pub orders: Vec<usize>,
    /// Element indices of each term, up to the first repeat.
    pub chain: Vec<Vec<usize>>,
    /// First index with a trivial term; `None` if the chain stalls.
    pub class: Option<usize>,
    pub bound: usize,
    /// Elements of a term lying below the filtration stage it must reach.
    pub filtration_violations: Vec<String>,
    pub ok: bool,
}

impl SeriesReport {
    fn finish(
        kind: SeriesKind,
        g: &FiniteGroupTable,
        chain: Vec<Vec<usize>>,
        bound: usize,
        filtration_violations: Vec<String>,
    ) -> Self {
        let class = chain.iter().position(|h| h.len() == 1);
        let nested = chain.windows(2).all(|w| is_subset(&w[1], &w[0]));
        let ok = nested && filtration_violations.is_empty() && class.is_some_and(|c| c <= bound);
        SeriesReport {
            kind,
            family: g.family,
            p: g.p,
            n: g.n,
            order: g.order(),
            orders: chain.iter().map(Vec::len).collect(),
            chain,
            class,
            bound,
            filtration_violations,
            ok,
        }
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn stage_check(
    g: &FiniteGroupTable,
    term: &[usize],
    label: &str,
    required: Filtration,
    out: &mut Vec<String>,
) {
    for &i in term {
        let level = g.filtration(i);
        if level < required {
            out.push(format!(
                "{label}: {} at level {level}, expected at least {required}",
                g.element(i)
            ));
        }
    }
}

/// `Γ_0(H) = H`, `Γ_{i+1}(H) = [Γ_i(H), H]`. Each `Γ_{i+1}` is checked to lie
/// in filtration stage `i + 0.5`.
pub fn lower_central_series_of(g: &FiniteGroupTable, h: &[usize], bound: usize) -> SeriesReport {
    let mut chain = vec![h.to_vec()];
    let mut violations = Vec::new();
    loop {
        let last = chain.last().unwrap();
        if last.len() == 1 {
            break;
        }
        let next = g.commutator_subgroup(last, h);
        let i = chain.len() - 1;
        stage_check(g, &next, &format!("Gamma_{}", i + 1), Filtration::half(i as u32), &mut violations);
        if &next == last {
            break;
        }
        chain.push(next);
    }
    SeriesReport::finish(SeriesKind::LowerCentral, g, chain, bound, violations)
}

/// Lower central series of the whole table, with bound `n + 1`
/// (`n` for the even family).
pub fn lower_central_series(g: &FiniteGroupTable) -> SeriesReport {
    let bound = match g.family {
        Family::Full => g.n + 1,
        Family::Even => g.n,
    };
    lower_central_series_of(g, &g.all(), bound)
}

/// `D_0 = G`, `D_{i+1} = [D_i, D_i]`. Each `D_{i+1}` is checked to lie in
/// stage `2i` (`0.5` for `D_1`) and inside `Γ_{i+1}`. The length bound is `ceil(n/2) + 1`.
pub fn derived_series(g: &FiniteGroupTable) -> SeriesReport {
    let all = g.all();
    let lcs = lower_central_series_of(g, &all, g.n + 1);
    let mut chain = vec![all];
    let mut violations = Vec::new();
    loop {
        let last = chain.last().unwrap();
        if last.len() == 1 {
            break;
        }
        let next = g.commutator_subgroup(last, last);
        let i = chain.len() - 1;
        let required = if i == 0 {
            Filtration::half(0)
        } else {
            Filtration::integer(2 * i as u32)
        };
        stage_check(g, &next, &format!("D_{}", i + 1), required, &mut violations);
        let gamma = lcs.chain.get(i + 1).or(lcs.chain.last()).unwrap();
        if !is_subset(&next, gamma) {
            violations.push(format!("D_{} is not contained in Gamma_{}", i + 1, i + 1));
        }
        if &next == last {
            break;
        }
        chain.push(next);
    }
    if chain.len() > 1 && lcs.chain.len() > 1 && chain[1] != lcs.chain[1] {
        violations.push("D_1 differs from Gamma_1".into());
    }
    SeriesReport::finish(SeriesKind::Derived, g, chain, g.n.div_ceil(2) + 1, violations)
}

/// Lower central series of the even part `G_{p,n}^ev(A_*)`, bound `n`.
pub fn ev_subgroup_series(alg: &Arc<Presentation>, n: usize) -> Result<SeriesReport> {
    let g = FiniteGroupTable::enumerate(alg, n, Family::Even)?;
    Ok(lower_central_series(&g))
}
