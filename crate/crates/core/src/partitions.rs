//! Ordered partitions (compositions) of a positive integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_compositions`]; there are 2^(n-1) of them.
pub const MAX_COMPOSITION_N: usize = 20;

/// A sequence of positive integers. `parts()[s]` is ν(s+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parse(format!(
                "composition parts must be positive and nonempty: {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// σ(ν)(i) for 1-based `i`: the sum of the parts before position i.
    pub fn sigma(&self, i: usize) -> usize {
        self.0[..i - 1].iter().sum()
    }

    /// Parts paired with their shifts σ, in order.
    pub fn with_shifts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().scan(0usize, |acc, &part| {
            let shift = *acc;
            *acc += part;
            Some((part, shift))
        })
    }
}

/// All compositions of `n` in lexicographic order.
pub fn enumerate_compositions(n: usize) -> Result<Vec<Composition>> {
    if n == 0 || n > MAX_COMPOSITION_N {
        return Err(Error::CompositionRange {
            n,
            max: MAX_COMPOSITION_N,
        });
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    let mut current = Vec::with_capacity(n);
    fn walk(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(current.clone()));
            return;
        }
        for first in 1..=remaining {
            current.push(first);
            walk(remaining - first, current, out);
            current.pop();
        }
    }
    walk(n, &mut current, &mut out);
    Ok(out)
}

/// Appends the part `m - k` to a composition of `k`.
pub fn extend_f(nu: &Composition, m: usize) -> Result<Composition> {
    let k = nu.total();
    if m <= k {
        return Err(Error::ExtendRange { k, m });
    }
    let mut parts = nu.0.clone();
    parts.push(m - k);
    Ok(Composition(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_compositions(1).unwrap(), vec![c(&[1])]);
        assert_eq!(
            enumerate_compositions(3).unwrap(),
            vec![c(&[1, 1, 1]), c(&[1, 2]), c(&[2, 1]), c(&[3])]
        );
        assert_eq!(enumerate_compositions(5).unwrap().len(), 16);
        assert!(enumerate_compositions(0).is_err());
        assert!(enumerate_compositions(MAX_COMPOSITION_N + 1).is_err());
    }

    #[test]
    fn extension() {
        assert_eq!(extend_f(&c(&[1, 2]), 5).unwrap(), c(&[1, 2, 2]));
        assert_eq!(extend_f(&c(&[1]), 2).unwrap(), c(&[1, 1]));
        assert_eq!(
            extend_f(&c(&[3]), 3).unwrap_err(),
            Error::ExtendRange { k: 3, m: 3 }
        );
    }

    #[test]
    fn shifts() {
        let nu = c(&[2, 1, 3]);
        assert_eq!(nu.sigma(1), 0);
        assert_eq!(nu.sigma(3), 3);
        let pairs: Vec<_> = nu.with_shifts().collect();
        assert_eq!(pairs, vec![(2, 0), (1, 2), (3, 3)]);
        assert_eq!(nu.sigma(nu.len()) + nu.parts()[nu.len() - 1], nu.total());
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }
}
