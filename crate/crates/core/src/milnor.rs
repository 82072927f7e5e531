//! Index sequences of the Milnor basis and the membership predicates for
//! the ideals `J<k>` and the dual spanning sets.
//!
//! `Seq` holds `(r_1, r_2, …)`, `SeqB` holds `(e_0, e_1, …)`. Both drop
//! trailing zeros, so equality is equality of sequences.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::hopf::{GenKind, HopfPresentation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seq(SmallVec<[u32; 8]>);

impl Seq {
    #[inline]
    pub fn new(entries: &[u32]) -> Self {
        let mut v = SmallVec::from_slice(entries);
        while v.last() == Some(&0) {
            v.pop();
        }
        Seq(v)
    }

    pub fn zero() -> Self {
        Seq(SmallVec::new())
    }

    /// `r_1, r_2, …` up to the last nonzero entry.
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `r_i` for 1-based `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Seq) -> Seq {
        let n = self.len().max(other.len());
        let v: SmallVec<[u32; 8]> = (1..=n).map(|i| self.get(i) + other.get(i)).collect();
        Seq(v)
    }

    #[inline]
    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeqB(SmallVec<[u8; 8]>);

impl SeqB {
    pub fn new(entries: &[u32]) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&e| e > 1) {
            return Err(Error::Parse(format!("exterior exponents are 0 or 1, got {bad}")));
        }
        let mut v: SmallVec<[u8; 8]> = entries.iter().map(|&e| e as u8).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(SeqB(v))
    }

    pub fn zero() -> Self {
        SeqB(SmallVec::new())
    }

    /// `e_0, e_1, …` up to the last nonzero entry.
    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// `e_i` for 0-based `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SeqB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

/// A formal dual-basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DualSymbol {
    /// `Sq(R)`, p = 2.
    Sq(Seq),
    /// `Q(E)P(R)` at an odd prime.
    QP { p: u32, e: SeqB, r: Seq },
}

impl DualSymbol {
    /// The dual of the basis monomial with index `(E, R)`.
    #[inline]
    pub fn dual_of(p: u32, e: &SeqB, r: &Seq) -> DualSymbol {
        if p == 2 {
            DualSymbol::Sq(r.clone())
        } else {
            DualSymbol::QP {
                p,
                e: e.clone(),
                r: r.clone(),
            }
        }
    }

    pub fn p(&self) -> u32 {
        match self {
            DualSymbol::Sq(_) => 2,
            DualSymbol::QP { p, .. } => *p,
        }
    }
}

impl fmt::Display for DualSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualSymbol::Sq(r) => write!(f, "Sq{r}"),
            DualSymbol::QP { e, r, .. } => write!(f, "Q{e}P{r}"),
        }
    }
}

pub fn seq_leq(r: &Seq, s: &Seq) -> bool {
    r.len() <= s.len() && r.0.iter().zip(s.0.iter()).all(|(a, b)| a <= b)
}

#[inline]
fn threshold(p: u32, k: u32) -> u64 {
    (p as u64).saturating_pow(k + 1)
}

/// Membership of `tau(E)xi(R)` (or `zeta(R)`) in the monomial basis of `J<k>`.
#[inline]
pub fn in_j_basis(e: &SeqB, r: &Seq, k: u32, p: u32) -> bool {
    let t = threshold(p, k);
    let big = r.0.iter().any(|&x| x as u64 >= t);
    if p != 2 && k == 0 {
        e.get(0) == 1 || big
    } else {
        big
    }
}

/// Membership in the spanning set of the dual of `A/J<k>`.
#[inline]
pub fn in_dual_span(sym: &DualSymbol, k: u32) -> bool {
    match sym {
        DualSymbol::Sq(r) => (r.max_entry() as u64) < threshold(2, k),
        DualSymbol::QP { p, e, r } => {
            let small = (r.max_entry() as u64) < threshold(*p, k);
            if k == 0 {
                e.get(0) == 0 && small
            } else {
                small
            }
        }
    }
}

/// Pairing of a dual symbol with the basis monomial of index `(E, R)`.
pub fn kronecker_pair(sym: &DualSymbol, e: &SeqB, r: &Seq) -> u32 {
    let matches = match sym {
        DualSymbol::Sq(s) => e.is_empty() && s == r,
        DualSymbol::QP { e: se, r: sr, .. } => se == e && sr == r,
    };
    matches as u32
}

/// `tau(E)xi(R)` for odd p, `zeta(R)` for p = 2, as an element of `hopf`.
pub fn monomial_of(e: &SeqB, r: &Seq, hopf: &HopfPresentation) -> Result<Element> {
    let bound = hopf.max_index();
    let p = hopf.p();
    if p == 2 && !e.is_empty() {
        return Err(Error::Parse("exterior indices need an odd prime".into()));
    }
    if r.len() > bound {
        return Err(Error::IndexOutOfRange {
            index: r.len(),
            bound,
        });
    }
    if e.len() > bound + 1 {
        return Err(Error::IndexOutOfRange {
            index: e.len() - 1,
            bound,
        });
    }
    let alg = hopf.presentation();
    let mut x = Element::one(alg);
    for (i, &ei) in e.entries().iter().enumerate() {
        if ei == 1 {
            x = &x * &hopf.gen(GenKind::Tau(i));
        }
    }
    for (i, &ri) in r.entries().iter().enumerate() {
        let g = if p == 2 {
            GenKind::Zeta(i + 1)
        } else {
            GenKind::Xi(i + 1)
        };
        x = &x * &hopf.gen(g).pow(ri as u64);
    }
    Ok(x)
}

/// Linear extension of the pairing to an arbitrary element.
pub fn kronecker_pair_element(
    sym: &DualSymbol,
    x: &Element,
    hopf: &HopfPresentation,
) -> Result<u32> {
    let (e, r) = match sym {
        DualSymbol::Sq(r) => (SeqB::zero(), r.clone()),
        DualSymbol::QP { e, r, .. } => (e.clone(), r.clone()),
    };
    let basis = monomial_of(&e, &r, hopf)?;
    let Some((m, c)) = basis.terms().next() else {
        return Ok(0);
    };
    // tau(E) in normal order can pick up a sign; undo it.
    let coeff = x.coefficient(m) as u64;
    let p = hopf.p() as u64;
    let inv = (1..p).find(|v| v * c as u64 % p == 1).unwrap_or(1);
    Ok((coeff * inv % p) as u32)
}
