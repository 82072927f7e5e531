//! Seeded random elements of graded components and of the truncated groups.
//!
//! Small components (at most [`UNIFORM_THRESHOLD`] monomials) are sampled
//! uniformly; larger ones give sparse combinations of at most three random
//! monomials.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Element, Monomial, Presentation};
use crate::error::Result;
use crate::group::{coefficient_degree, Flavor, GroupElement};

pub const UNIFORM_THRESHOLD: usize = 64;

/// Random monomials of one fixed degree, drawn with probability proportional
/// to the number of completions (uniform over monomials).
#[derive(Clone, Debug)]
struct DegreeSampler {
    degree: i64,
    bounds: Vec<u32>,
    degs: Vec<i64>,
    /// `counts[i][v - lo[i]]`: monomials in generators `i..` of degree `v`.
    counts: Vec<Vec<f64>>,
    lo: Vec<i64>,
    total: f64,
    small: Option<Vec<Monomial>>,
}

impl DegreeSampler {
    fn new(alg: &Presentation, degree: i64) -> Result<Self> {
        let n = alg.len();
        let degs: Vec<i64> = alg.generators().iter().map(|g| g.degree).collect();
        let bounds = alg.exponent_bounds(degree)?;
        // Range of partial degrees of generators i.. that can still be completed.
        let mut prefix_min = vec![0i64; n + 1];
        let mut prefix_max = vec![0i64; n + 1];
        for i in 0..n {
            let reach = degs[i] * bounds[i] as i64;
            prefix_min[i + 1] = prefix_min[i] + reach.min(0);
            prefix_max[i + 1] = prefix_max[i] + reach.max(0);
        }
        let mut counts = vec![Vec::new(); n + 1];
        let mut lo = vec![0i64; n + 1];
        counts[n] = vec![1.0];
        lo[n] = 0;
        for i in (0..n).rev() {
            let new_lo = degree - prefix_max[i];
            let new_hi = degree - prefix_min[i];
            let mut row = vec![0.0; (new_hi - new_lo + 1) as usize];
            let next = &counts[i + 1];
            for (off, &c) in next.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let v = lo[i + 1] + off as i64;
                for e in 0..=bounds[i] {
                    let w = v + degs[i] * e as i64;
                    if w >= new_lo && w <= new_hi {
                        row[(w - new_lo) as usize] += c;
                    }
                }
            }
            counts[i] = row;
            lo[i] = new_lo;
        }
        let total = lookup(&counts[0], lo[0], degree);
        let small = if total <= UNIFORM_THRESHOLD as f64 {
            Some(alg.monomials_of_degree(degree)?)
        } else {
            None
        };
        Ok(DegreeSampler {
            degree,
            bounds,
            degs,
            counts,
            lo,
            total,
            small,
        })
    }

    fn monomial<R: Rng>(&self, rng: &mut R) -> Option<Monomial> {
        if self.total == 0.0 {
            return None;
        }
        let n = self.degs.len();
        let mut remaining = self.degree;
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let weights: Vec<f64> = (0..=self.bounds[i])
                .map(|e| {
                    lookup(
                        &self.counts[i + 1],
                        self.lo[i + 1],
                        remaining - self.degs[i] * e as i64,
                    )
                })
                .collect();
            let sum: f64 = weights.iter().sum();
            let mut target = rng.gen::<f64>() * sum;
            let mut chosen = weights.iter().rposition(|&w| w > 0.0).unwrap_or(0);
            for (e, &w) in weights.iter().enumerate() {
                if w > 0.0 && target < w {
                    chosen = e;
                    break;
                }
                target -= w;
            }
            exps.push(chosen as u32);
            remaining -= self.degs[i] * chosen as i64;
        }
        Some(Monomial::from_exponents(&exps))
    }

    fn element<R: Rng>(&self, alg: &Arc<Presentation>, rng: &mut R) -> Element {
        let p = alg.p() as i64;
        if let Some(basis) = &self.small {
            let terms = basis.iter().map(|m| (m.clone(), rng.gen_range(0..p)));
            return Element::from_terms(alg, terms).expect("basis monomials fit");
        }
        if rng.gen_ratio(1, 8) {
            return Element::zero(alg);
        }
        let count = rng.gen_range(1..=3);
        let terms: Vec<(Monomial, i64)> = (0..count)
            .filter_map(|_| self.monomial(rng).map(|m| (m, rng.gen_range(1..p))))
            .collect();
        Element::from_terms(alg, terms).expect("sampled monomials fit")
    }
}

fn lookup(row: &[f64], lo: i64, v: i64) -> f64 {
    if v < lo {
        return 0.0;
    }
    row.get((v - lo) as usize).copied().unwrap_or(0.0)
}

/// Random homogeneous elements, with per-degree tables cached.
#[derive(Clone, Debug)]
pub struct ElementSampler {
    alg: Arc<Presentation>,
    cache: HashMap<i64, DegreeSampler>,
}

impl ElementSampler {
    pub fn new(alg: &Arc<Presentation>) -> Self {
        ElementSampler {
            alg: Arc::clone(alg),
            cache: HashMap::new(),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.alg
    }

    pub fn sample<R: Rng>(&mut self, degree: i64, rng: &mut R) -> Result<Element> {
        if !self.cache.contains_key(&degree) {
            let s = DegreeSampler::new(&self.alg, degree)?;
            self.cache.insert(degree, s);
        }
        Ok(self.cache[&degree].element(&self.alg, rng))
    }

    /// A random nonzero element, or zero when the component is trivial.
    pub fn sample_nonzero<R: Rng>(&mut self, degree: i64, rng: &mut R) -> Result<Element> {
        for _ in 0..32 {
            let x = self.sample(degree, rng)?;
            if !x.is_zero() {
                return Ok(x);
            }
        }
        Ok(Element::zero(&self.alg))
    }

    pub fn random_monomial<R: Rng>(&mut self, degree: i64, rng: &mut R) -> Result<Option<Monomial>> {
        if !self.cache.contains_key(&degree) {
            let s = DegreeSampler::new(&self.alg, degree)?;
            self.cache.insert(degree, s);
        }
        Ok(self.cache[&degree].monomial(rng))
    }
}

/// Restrictions on sampled group elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Shape {
    /// Force `α_1 = … = α_zero_prefix = 0`.
    pub zero_prefix: usize,
    /// Force `α_0 = 1`.
    pub unit_leading: bool,
    /// Delete eps-parts everywhere (even subgroup).
    pub even: bool,
    /// Keep only eps-parts of the higher coefficients (odd subgroup).
    pub odd: bool,
    /// Require membership in G_{p,n} by rejection, coefficientwise.
    pub gpn: Option<usize>,
}

/// Random elements of one truncated group.
#[derive(Clone, Debug)]
pub struct GroupSampler {
    elements: ElementSampler,
    k: usize,
    flavor: Flavor,
}

impl GroupSampler {
    /// Adjoins eps to `alg` if the flavor needs it.
    pub fn new(alg: &Arc<Presentation>, k: usize, flavor: Flavor) -> Result<Self> {
        let alg = if flavor.leading_eps_allowed(alg.p()) {
            alg.with_epsilon()?
        } else {
            Arc::clone(alg)
        };
        Ok(GroupSampler {
            elements: ElementSampler::new(&alg),
            k,
            flavor,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.elements.presentation()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn element_sampler(&mut self) -> &mut ElementSampler {
        &mut self.elements
    }

    pub fn sample<R: Rng>(&mut self, rng: &mut R) -> Result<GroupElement> {
        self.sample_shaped(rng, Shape::default())
    }

    pub fn sample_shaped<R: Rng>(&mut self, rng: &mut R, shape: Shape) -> Result<GroupElement> {
        let alg = Arc::clone(self.presentation());
        let p = alg.p();
        let one = Element::one(&alg);
        let lead = if self.flavor.leading_eps_allowed(p) && !shape.unit_leading && !shape.even {
            let c = self.elements.sample(1, rng)?;
            &one + &(&c * &Element::epsilon(&alg)?)
        } else {
            one
        };
        let mut coeffs = vec![lead];
        for i in 1..=self.k {
            if i <= shape.zero_prefix || shape.gpn.is_some_and(|n| i > n) {
                coeffs.push(Element::zero(&alg));
                continue;
            }
            let d = coefficient_degree(p, self.flavor, i);
            let mut c = Element::zero(&alg);
            for _ in 0..16 {
                c = self.elements.sample(d, rng)?;
                if !self.flavor.higher_eps_allowed(p) || shape.even {
                    c = c.eps_reduce();
                }
                if shape.odd {
                    c = &c - &c.eps_reduce();
                }
                let ok = match shape.gpn {
                    Some(n) => c.frobenius((n - i + 1) as u32).is_zero(),
                    None => true,
                };
                if ok {
                    break;
                }
                c = Element::zero(&alg);
            }
            coeffs.push(c);
        }
        GroupElement::new(self.flavor, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_homogeneous() {
        let alg = Presentation::new(
            3,
            vec![
                Generator::new("x1", 4, None),
                Generator::new("x2", 16, None),
                Generator::new("t0", 1, None),
                Generator::new("t1", 5, None),
            ],
        )
        .unwrap()
        .adjoin_epsilon()
        .unwrap();
        let mut s = ElementSampler::new(&alg);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [0, 4, 16, 52] {
            for _ in 0..20 {
                let x = s.sample(d, &mut rng).unwrap();
                assert!(x.is_homogeneous_of(d), "{x} not of degree {d}");
            }
        }
    }

    #[test]
    fn empty_component_gives_zero() {
        let alg = Presentation::new(2, vec![Generator::new("z", 2, Some(3))]).unwrap();
        let mut s = ElementSampler::new(&alg);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(s.sample(3, &mut rng).unwrap().is_zero());
        assert!(s.random_monomial(3, &mut rng).unwrap().is_none());
    }

    #[test]
    fn shaped_group_samples() {
        let alg = Presentation::new(
            3,
            vec![
                Generator::new("t0", 1, None),
                Generator::new("x1", 4, None),
                Generator::new("t1", 5, None),
            ],
        )
        .unwrap();
        let mut g = GroupSampler::new(&alg, 3, Flavor::Base).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x = g
                .sample_shaped(
                    &mut rng,
                    Shape {
                        zero_prefix: 1,
                        ..Shape::default()
                    },
                )
                .unwrap();
            assert!(x.coeff(1).is_zero());
            let od = g
                .sample_shaped(
                    &mut rng,
                    Shape {
                        odd: true,
                        ..Shape::default()
                    },
                )
                .unwrap();
            assert!(od.in_g_od());
            let ev = g
                .sample_shaped(
                    &mut rng,
                    Shape {
                        even: true,
                        ..Shape::default()
                    },
                )
                .unwrap();
            assert!(ev.in_g_ev());
        }
    }
}
