//! Seeded property suites over the whole library. Every suite stops at its
//! first failure and keeps the full counterexample.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{enumerate_component, AlgebraMap, Element, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::group::{Filtration, Flavor, GroupElement, LeadingCase};
use crate::grouptheory::{derived_series, lower_central_series, Family, FiniteGroupTable};
use crate::hopf::{default_degree_bound, is_hopf_map, GenKind, HopfPresentation, Tensor};
use crate::milnor::{in_dual_span, in_j_basis, seq_leq, DualSymbol, Seq, SeqB};
use crate::partitions::{enumerate_compositions, extend_f};
use crate::sample::{ElementSampler, GroupSampler, Shape};
use crate::wire::{element_to_json, group_element_to_json};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub p: u32,
    pub k: usize,
    pub seed: u64,
    pub samples: usize,
    /// Generator bound N of the Hopf presets.
    pub n_max: usize,
    /// Degree bound D of the Hopf presets.
    pub degree_bound: i64,
}

impl VerifyConfig {
    pub fn new(p: u32, k: usize, seed: u64, samples: usize) -> Self {
        VerifyConfig {
            p,
            k,
            seed,
            samples,
            n_max: crate::hopf::DEFAULT_N,
            degree_bound: default_degree_bound(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub ok: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    pub ok: bool,
}

pub struct Ctx {
    pub cfg: VerifyConfig,
    pub rng: ChaCha8Rng,
    checked: usize,
    failure: Option<Counterexample>,
}

impl Ctx {
    fn new(cfg: &VerifyConfig, name: &str) -> Self {
        // Each suite gets its own stream so adding a suite leaves the others unchanged.
        let salt = name
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Ctx {
            cfg: cfg.clone(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ salt),
            checked: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(cx());
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

type Suite = fn(&mut Ctx) -> Result<()>;

const SUITES: &[(&str, Suite)] = &[
    ("abelian_kernel", abelian_kernel),
    ("algebra_laws", algebra_laws),
    ("associativity", associativity),
    ("commutator_filtration", commutator_filtration),
    ("commutator_leading", commutator_leading),
    ("component_cardinality", component_cardinality),
    ("compositions", compositions),
    ("finite_groups", finite_groups),
    ("gp0_additive", gp0_additive),
    ("gpn_subgroup", gpn_subgroup),
    ("group_identity", group_identity),
    ("group_inverse", group_inverse),
    ("homomorphisms", homomorphisms),
    ("hopf_antipode", hopf_antipode),
    ("hopf_antipode_recursion", hopf_antipode_recursion),
    ("hopf_coassociativity", hopf_coassociativity),
    ("hopf_cocommutativity_witness", hopf_cocommutativity_witness),
    ("hopf_counit", hopf_counit),
    ("hopf_ideal_primitivity", hopf_ideal_primitivity),
    ("hopf_quotient_maps", hopf_quotient_maps),
    ("inverse_oracles", inverse_oracles),
    ("milnor_complementarity", milnor_complementarity),
    ("milnor_order", milnor_order),
    ("od_exponent", od_exponent),
    ("rho_diagram", rho_diagram),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(cfg: &VerifyConfig, name: &str) -> Result<SuiteReport> {
    let (_, suite) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown suite {name}")))?;
    let mut ctx = Ctx::new(cfg, name);
    if let Err(e) = suite(&mut ctx) {
        ctx.check(false, || Counterexample {
            inputs: vec![],
            lhs: Value::Null,
            rhs: Value::Null,
            note: format!("error: {e}"),
        });
    }
    Ok(SuiteReport {
        name: name.to_string(),
        ok: ctx.failure.is_none(),
        checked: ctx.checked,
        counterexample: ctx.failure,
    })
}

/// Runs the named suites (all when `names` is empty), sorted by name.
pub fn run(cfg: &VerifyConfig, names: &[String]) -> Result<VerifyReport> {
    if !crate::algebra::is_prime(cfg.p) {
        return Err(Error::NotPrime(cfg.p));
    }
    let mut selected: Vec<&str> = if names.is_empty() {
        suite_names()
    } else {
        names.iter().map(String::as_str).collect()
    };
    selected.sort_unstable();
    selected.dedup();
    let suites = selected
        .iter()
        .map(|n| run_suite(cfg, n))
        .collect::<Result<Vec<_>>>()?;
    let ok = suites.iter().all(|s| s.ok);
    Ok(VerifyReport {
        config: cfg.clone(),
        suites,
        ok,
    })
}

fn gj(g: &GroupElement) -> Value {
    serde_json::to_value(group_element_to_json(g)).expect("serializable")
}

fn ej(x: &Element) -> Value {
    json!({ "text": x.to_string(), "terms": element_to_json(x) })
}

fn tj(t: &Tensor) -> Value {
    Value::String(t.to_string())
}

fn cx(inputs: Vec<Value>, lhs: Value, rhs: Value, note: &str) -> Counterexample {
    Counterexample {
        inputs,
        lhs,
        rhs,
        note: note.to_string(),
    }
}

fn dual_presentation(cfg: &VerifyConfig) -> Result<HopfPresentation> {
    HopfPresentation::a_dual(cfg.p, cfg.n_max, cfg.degree_bound)
}

const FLAVORS: [Flavor; 3] = [Flavor::Base, Flavor::Level(1), Flavor::Level(2)];

fn samplers(cfg: &VerifyConfig, k: usize) -> Result<Vec<GroupSampler>> {
    let alg = Arc::clone(dual_presentation(cfg)?.presentation());
    FLAVORS
        .into_iter()
        .map(|f| GroupSampler::new(&alg, k, f))
        .collect()
}

fn associativity(ctx: &mut Ctx) -> Result<()> {
    let mut ss = samplers(&ctx.cfg, ctx.cfg.k)?;
    for i in 0..ctx.cfg.samples {
        let s = &mut ss[i % 3];
        let (a, b, c) = (s.sample(&mut ctx.rng)?, s.sample(&mut ctx.rng)?, s.sample(&mut ctx.rng)?);
        let lhs = a.compose(&b)?.compose(&c)?;
        let rhs = a.compose(&b.compose(&c)?)?;
        ctx.check(lhs == rhs, || cx(vec![gj(&a), gj(&b), gj(&c)], gj(&lhs), gj(&rhs), "(ab)c = a(bc)"));
    }
    Ok(())
}

fn group_identity(ctx: &mut Ctx) -> Result<()> {
    let mut ss = samplers(&ctx.cfg, ctx.cfg.k)?;
    for i in 0..ctx.cfg.samples {
        let s = &mut ss[i % 3];
        let a = s.sample(&mut ctx.rng)?;
        let e = GroupElement::identity(a.presentation(), a.k(), a.flavor())?;
        for (lhs, note) in [(e.compose(&a)?, "e a = a"), (a.compose(&e)?, "a e = a")] {
            ctx.check(lhs == a, || cx(vec![gj(&a)], gj(&lhs), gj(&a), note));
        }
    }
    Ok(())
}

fn group_inverse(ctx: &mut Ctx) -> Result<()> {
    let mut ss = samplers(&ctx.cfg, ctx.cfg.k)?;
    for i in 0..ctx.cfg.samples {
        let s = &mut ss[i % 3];
        let a = s.sample(&mut ctx.rng)?;
        let inv = a.invert();
        let e = GroupElement::identity(a.presentation(), a.k(), a.flavor())?;
        for (lhs, note) in [(a.compose(&inv)?, "a a^-1 = e"), (inv.compose(&a)?, "a^-1 a = e")] {
            ctx.check(lhs == e, || cx(vec![gj(&a), gj(&inv)], gj(&lhs), gj(&e), note));
        }
    }
    Ok(())
}

fn inverse_oracles(ctx: &mut Ctx) -> Result<()> {
    let mut ss = samplers(&ctx.cfg, ctx.cfg.k)?;
    for i in 0..ctx.cfg.samples {
        let s = &mut ss[i % 3];
        let a = s.sample(&mut ctx.rng)?;
        let rec = a.invert_recursive();
        let closed = a.invert_closed();
        ctx.check(rec == closed, || cx(vec![gj(&a)], gj(&closed), gj(&rec), "closed = recursive"));
        if a.p() != 2 && a.flavor() == Flavor::Base {
            let split = a.invert_split()?;
            ctx.check(split == rec, || cx(vec![gj(&a)], gj(&split), gj(&rec), "split = recursive"));
        }
    }
    Ok(())
}

fn zero_prefix(n: usize) -> Shape {
    Shape {
        zero_prefix: n,
        ..Shape::default()
    }
}

fn commutator_leading(ctx: &mut Ctx) -> Result<()> {
    let k = ctx.cfg.k.max(3);
    let alg = Arc::clone(dual_presentation(&ctx.cfg)?.presentation());
    let mut s = GroupSampler::new(&alg, k, Flavor::Base)?;
    for i in 0..ctx.cfg.samples * 3 {
        let (case, a, b) = match i % 3 {
            0 => (LeadingCase::One, s.sample(&mut ctx.rng)?, s.sample(&mut ctx.rng)?),
            1 => {
                let kc = ctx.rng.gen_range(1..=k - 2);
                (
                    LeadingCase::Two { k: kc },
                    s.sample_shaped(&mut ctx.rng, zero_prefix(kc))?,
                    s.sample(&mut ctx.rng)?,
                )
            }
            _ => {
                let kc = ctx.rng.gen_range(1..=k - 2);
                let l = ctx.rng.gen_range(1..=kc);
                (
                    LeadingCase::Three { k: kc, l },
                    s.sample_shaped(&mut ctx.rng, zero_prefix(kc))?,
                    s.sample_shaped(&mut ctx.rng, zero_prefix(l))?,
                )
            }
        };
        let (p1, p2) = a.commutator_leading(&b, case)?;
        let c = a.commutator(&b)?;
        let at = case.first_index();
        let ok = c.coeff(at) == &p1 && c.coeff(at + 1) == &p2;
        ctx.check(ok, || {
            cx(
                vec![gj(&a), gj(&b), json!(format!("{case:?}"))],
                json!([ej(&p1), ej(&p2)]),
                json!([ej(c.coeff(at)), ej(c.coeff(at + 1))]),
                "predicted leading coefficients = brute-force commutator",
            )
        });
    }
    Ok(())
}

/// Replaces coefficient `i` by its eps-part, landing in stage `i - 1 + 0.5`.
fn eps_part_at(g: &GroupElement, i: usize) -> Result<GroupElement> {
    let mut coeffs = g.coeffs().to_vec();
    if i < coeffs.len() {
        coeffs[i] = &coeffs[i] - &coeffs[i].eps_reduce();
    }
    GroupElement::new(g.flavor(), coeffs)
}

fn stage_sample(s: &mut GroupSampler, rng: &mut ChaCha8Rng, half_steps: u32) -> Result<GroupElement> {
    let m = (half_steps / 2) as usize;
    let g = s.sample_shaped(
        rng,
        Shape {
            zero_prefix: m,
            unit_leading: true,
            ..Shape::default()
        },
    )?;
    if half_steps % 2 == 1 {
        eps_part_at(&g, m + 1)
    } else {
        Ok(g)
    }
}

fn commutator_filtration(ctx: &mut Ctx) -> Result<()> {
    let k = ctx.cfg.k.max(1);
    let alg = Arc::clone(dual_presentation(&ctx.cfg)?.presentation());
    let mut s = GroupSampler::new(&alg, k, Flavor::Base)?;
    let samples = ctx.cfg.samples;
    let level_check = |ctx: &mut Ctx, inputs: Vec<&GroupElement>, c: &GroupElement, need: Filtration, note: &str| {
        let got = c.filtration_level();
        ctx.check(got >= need, || {
            cx(
                inputs.into_iter().map(gj).collect(),
                json!({ "commutator": gj(c), "level": got.to_string() }),
                json!(need.to_string()),
                note,
            )
        });
    };
    for _ in 0..samples {
        // Pairwise inclusions.
        let a = s.sample(&mut ctx.rng)?;
        let b = s.sample(&mut ctx.rng)?;
        let c = a.commutator(&b)?;
        level_check(ctx, vec![&a, &b], &c, Filtration::half(0), "[G,G] in G^(0.5)");

        let a = stage_sample(&mut s, &mut ctx.rng, 1)?;
        let b = stage_sample(&mut s, &mut ctx.rng, 1)?;
        let c = a.commutator(&b)?;
        level_check(ctx, vec![&a, &b], &c, Filtration::integer(2), "[G^(0.5),G^(0.5)] in G^(2)");

        let m = ctx.rng.gen_range(1..=k as u32);
        let a = stage_sample(&mut s, &mut ctx.rng, 2 * m)?;
        let b = stage_sample(&mut s, &mut ctx.rng, 2 * m)?;
        let c = a.commutator(&b)?;
        level_check(ctx, vec![&a, &b], &c, Filtration::integer(m + 2), "[G^(k),G^(k)] in G^(k+2)");

        let m = ctx.rng.gen_range(0..=k as u32);
        let a = stage_sample(&mut s, &mut ctx.rng, 2 * m)?;
        let b = s.sample(&mut ctx.rng)?;
        let c = a.commutator(&b)?;
        level_check(ctx, vec![&a, &b], &c, Filtration::half(m), "[G^(k),G] in G^(k+0.5)");

        let m = ctx.rng.gen_range(0..k as u32);
        let a = stage_sample(&mut s, &mut ctx.rng, 2 * m + 1)?;
        let b = s.sample(&mut ctx.rng)?;
        let c = a.commutator(&b)?;
        level_check(ctx, vec![&a, &b], &c, Filtration::half(m + 1), "[G^(k+0.5),G] in G^(k+1.5)");

        // Nested commutators up to depth 4.
        let mut gamma = s.sample(&mut ctx.rng)?;
        let mut leaves = vec![gamma.clone()];
        for depth in 1..=4u32 {
            let g = s.sample(&mut ctx.rng)?;
            gamma = gamma.commutator(&g)?;
            leaves.push(g);
            level_check(ctx, leaves.iter().collect(), &gamma, Filtration::half(depth - 1), "Gamma_{k+1} in G^(k+0.5)");
        }
        let mut layer: Vec<GroupElement> = (0..8).map(|_| s.sample(&mut ctx.rng)).collect::<Result<_>>()?;
        let leaves = layer.clone();
        for depth in 1..=3u32 {
            layer = layer
                .chunks(2)
                .map(|w| w[0].commutator(&w[1]))
                .collect::<Result<_>>()?;
            let need = if depth == 1 {
                Filtration::half(0)
            } else {
                Filtration::integer(2 * (depth - 1))
            };
            for d in &layer {
                level_check(ctx, leaves.iter().collect(), d, need, "D_{k+1} in G^(2k)");
            }
        }
        if ctx.cfg.p != 2 {
            let ev = Shape {
                even: true,
                ..Shape::default()
            };
            let mut gamma = s.sample_shaped(&mut ctx.rng, ev)?;
            let mut leaves = vec![gamma.clone()];
            for depth in 1..=4u32 {
                let g = s.sample_shaped(&mut ctx.rng, ev)?;
                gamma = gamma.commutator(&g)?;
                leaves.push(g);
                level_check(ctx, leaves.iter().collect(), &gamma, Filtration::integer(depth), "even Gamma_{k+1} in G^(k+1)");
            }
        }
        if ctx.failed() {
            break;
        }
    }
    Ok(())
}

fn gpn_subgroup(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.k;
    let hopf = HopfPresentation::a_n(ctx.cfg.p, n.max(1), ctx.cfg.degree_bound.max(default_degree_bound(ctx.cfg.p)))?;
    let mut s = GroupSampler::new(hopf.presentation(), n, Flavor::Base)?;
    let shape = Shape {
        gpn: Some(n),
        ..Shape::default()
    };
    for _ in 0..ctx.cfg.samples {
        let a = s.sample_shaped(&mut ctx.rng, shape)?;
        let b = s.sample_shaped(&mut ctx.rng, shape)?;
        ctx.check(a.in_gpn(n) && b.in_gpn(n), || {
            cx(vec![gj(&a), gj(&b)], json!(false), json!(true), "sampled elements lie in G_{p,n}")
        });
        let ab = a.compose(&b)?;
        ctx.check(ab.in_gpn(n), || cx(vec![gj(&a), gj(&b)], gj(&ab), json!("in G_{p,n}"), "closed under composition"));
        let inv = a.invert_closed();
        ctx.check(inv.in_gpn(n), || cx(vec![gj(&a)], gj(&inv), json!("in G_{p,n}"), "closed under inversion"));
    }
    Ok(())
}

fn gp0_additive(ctx: &mut Ctx) -> Result<()> {
    if ctx.cfg.p == 2 {
        return Ok(());
    }
    let alg = Arc::clone(dual_presentation(&ctx.cfg)?.presentation());
    let mut s = GroupSampler::new(&alg, 0, Flavor::Base)?;
    for _ in 0..ctx.cfg.samples {
        let a = s.sample(&mut ctx.rng)?;
        let b = s.sample(&mut ctx.rng)?;
        let ab = a.compose(&b)?;
        let one = Element::one(a.presentation());
        let sum = &(&(a.coeff(0) - &one) + &(b.coeff(0) - &one)) + &one;
        ctx.check(ab.coeff(0) == &sum, || {
            cx(vec![gj(&a), gj(&b)], ej(ab.coeff(0)), ej(&sum), "G_{p,0} composes by adding eps-coefficients")
        });
    }
    Ok(())
}

fn od_exponent(ctx: &mut Ctx) -> Result<()> {
    if ctx.cfg.p == 2 {
        return Ok(());
    }
    let alg = Arc::clone(dual_presentation(&ctx.cfg)?.presentation());
    let mut s = GroupSampler::new(&alg, ctx.cfg.k, Flavor::Base)?;
    let od = Shape {
        odd: true,
        ..Shape::default()
    };
    for _ in 0..ctx.cfg.samples {
        let a = s.sample_shaped(&mut ctx.rng, od)?;
        let b = s.sample_shaped(&mut ctx.rng, od)?;
        let pow = a.power(ctx.cfg.p as usize);
        let e = GroupElement::identity(a.presentation(), a.k(), a.flavor())?;
        ctx.check(pow == e, || cx(vec![gj(&a)], gj(&pow), gj(&e), "p-th power of an od element is X"));
        let c = a.commutator(&b)?;
        ctx.check(c == e, || cx(vec![gj(&a), gj(&b)], gj(&c), gj(&e), "od elements commute"));
    }
    Ok(())
}

fn homomorphisms(ctx: &mut Ctx) -> Result<()> {
    let mut ss = samplers(&ctx.cfg, ctx.cfg.k)?;
    let p = ctx.cfg.p;
    for i in 0..ctx.cfg.samples {
        let s = &mut ss[i % 3];
        let a = s.sample(&mut ctx.rng)?;
        let b = s.sample(&mut ctx.rng)?;
        let ab = a.compose(&b)?;
        let lhs = ab.rho();
        let rhs = a.rho().compose(&b.rho())?;
        ctx.check(lhs == rhs, || cx(vec![gj(&a), gj(&b)], gj(&lhs), gj(&rhs), "rho(ab) = rho(a) rho(b)"));

        let kp = ctx.rng.gen_range(0..=a.k());
        let lhs = ab.project(kp)?;
        let rhs = a.project(kp)?.compose(&b.project(kp)?)?;
        ctx.check(lhs == rhs, || cx(vec![gj(&a), gj(&b), json!(kp)], gj(&lhs), gj(&rhs), "project is a homomorphism"));

        if p != 2 && a.flavor() == Flavor::Base {
            let lhs = ab.pi_ev()?;
            let rhs = a.pi_ev()?.compose(&b.pi_ev()?)?;
            ctx.check(lhs == rhs, || cx(vec![gj(&a), gj(&b)], gj(&lhs), gj(&rhs), "pi_ev is a homomorphism"));
        }

        let lhs = ab.half_quotient();
        let rhs = a.half_quotient().star_product(&b.half_quotient())?;
        ctx.check(lhs == rhs, || cx(vec![gj(&a), gj(&b)], gj(&lhs), gj(&rhs), "q(ab) = q(a) * q(b)"));
    }
    Ok(())
}

fn abelian_kernel(ctx: &mut Ctx) -> Result<()> {
    let k = ctx.cfg.k.max(1);
    // Over A/I<0> every element with leading coefficient 1 is in the kernel;
    // the membership test still runs on each sample.
    let hopf = HopfPresentation::a_mod_i(ctx.cfg.p, 0, ctx.cfg.n_max, ctx.cfg.degree_bound)?;
    let mut s = GroupSampler::new(hopf.presentation(), k, Flavor::Base)?;
    let shape = Shape {
        unit_leading: true,
        ..Shape::default()
    };
    let mut kernel = Vec::new();
    for _ in 0..ctx.cfg.samples * 4 {
        let a = s.sample_shaped(&mut ctx.rng, shape)?;
        if a.in_abelian_kernel() {
            kernel.push(a);
        }
        if kernel.len() >= ctx.cfg.samples {
            break;
        }
    }
    for w in kernel.windows(2) {
        let c = w[0].commutator(&w[1])?;
        ctx.check(c.is_identity(), || cx(vec![gj(&w[0]), gj(&w[1])], gj(&c), json!("X"), "kernel of rho is abelian"));
        let ab = w[0].compose(&w[1])?;
        ctx.check(ab.in_abelian_kernel(), || cx(vec![gj(&w[0]), gj(&w[1])], gj(&ab), json!("in kernel"), "kernel is closed"));
    }
    Ok(())
}

fn algebra_laws(ctx: &mut Ctx) -> Result<()> {
    let hopf = dual_presentation(&ctx.cfg)?;
    let alg = hopf.presentation().with_epsilon()?;
    let mut s = ElementSampler::new(&alg);
    let p = ctx.cfg.p;
    let top = 2 * (p as i64).pow(2);
    for _ in 0..ctx.cfg.samples {
        let (dx, dy, dz) = (
            ctx.rng.gen_range(-1..=top),
            ctx.rng.gen_range(-1..=top),
            ctx.rng.gen_range(-1..=top),
        );
        let x = s.sample(dx, &mut ctx.rng)?;
        let y = s.sample(dy, &mut ctx.rng)?;
        let z = s.sample(dz, &mut ctx.rng)?;
        let w = s.sample(dy, &mut ctx.rng)?;
        let inputs = || vec![ej(&x), ej(&y), ej(&z), ej(&w)];
        let lhs = &(&x * &y) * &z;
        let rhs = &x * &(&y * &z);
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "(xy)z = x(yz)"));
        let sign = if (dx * dy).rem_euclid(2) == 1 { -1 } else { 1 };
        let lhs = &x * &y;
        let rhs = (&y * &x).scaled(sign);
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "xy = (-1)^{|x||y|} yx"));
        let lhs = &x * &(&y + &w);
        let rhs = &(&x * &y) + &(&x * &w);
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "x(y+w) = xy + xw"));
        if p != 2 && dx.rem_euclid(2) == 1 {
            let sq = &x * &x;
            ctx.check(sq.is_zero(), || cx(inputs(), ej(&sq), json!("0"), "odd x squares to 0"));
        }
        let j = ctx.rng.gen_range(1..=2);
        let lhs = (&x * &y).frobenius(j);
        let rhs = &x.frobenius(j) * &y.frobenius(j);
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "frobenius is multiplicative"));
        let lhs = (&y + &w).frobenius(j);
        let rhs = &y.frobenius(j) + &w.frobenius(j);
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "frobenius is additive"));
        let lhs = (&x * &y).eps_reduce();
        let rhs = &x.eps_reduce() * &y.eps_reduce();
        ctx.check(lhs == rhs, || cx(inputs(), ej(&lhs), ej(&rhs), "eps_reduce is multiplicative"));
    }
    Ok(())
}

fn component_cardinality(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.cfg.p;
    for n in 1..=3 {
        let hopf = HopfPresentation::a_n(p, n, default_degree_bound(p))?;
        let alg = hopf.presentation();
        for d in 0..=2 * (p as i64).pow(2) {
            let dim = alg.monomials_of_degree(d)?.len() as u32;
            if (p as u128).pow(dim) > 1 << 14 {
                continue;
            }
            let all = enumerate_component(alg, d)?;
            let mut distinct = all.clone();
            distinct.sort();
            distinct.dedup();
            let ok = all.len() as u128 == (p as u128).pow(dim)
                && distinct.len() == all.len()
                && all.iter().all(|x| x.is_homogeneous_of(d));
            ctx.check(ok, || {
                cx(
                    vec![json!(hopf.label()), json!(d)],
                    json!(all.len()),
                    json!(format!("{p}^{dim}")),
                    "component has p^dim distinct homogeneous elements",
                )
            });
        }
    }
    Ok(())
}

fn compositions(ctx: &mut Ctx) -> Result<()> {
    for m in 2..=10usize {
        let mut image = Vec::new();
        for k in 1..m {
            for nu in enumerate_compositions(k)? {
                image.push(extend_f(&nu, m)?);
            }
        }
        let count = image.len();
        image.sort();
        image.dedup();
        let target: Vec<_> = enumerate_compositions(m)?
            .into_iter()
            .filter(|nu| nu.len() >= 2)
            .collect();
        let injective = image.len() == count;
        ctx.check(injective && image == target, || {
            cx(vec![json!(m)], json!(count), json!(target.len()), "F is a bijection onto compositions of length >= 2")
        });
        let lhs: usize = (1..m).map(|k| 1usize << (k - 1)).sum();
        ctx.check(lhs == (1 << (m - 1)) - 1, || {
            cx(vec![json!(m)], json!(lhs), json!((1usize << (m - 1)) - 1), "sum of 2^{k-1} over k < m")
        });
        for nu in enumerate_compositions(m)? {
            let l = nu.len();
            ctx.check(nu.sigma(l) + nu.parts()[l - 1] == m, || {
                cx(vec![json!(nu)], json!(nu.sigma(l) + nu.parts()[l - 1]), json!(m), "sigma(l) + nu(l) = n")
            });
        }
    }
    Ok(())
}

fn finite_groups(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.cfg.p;
    let mut cases: Vec<(usize, Family)> = vec![(1, Family::Full)];
    if p == 2 {
        cases.push((2, Family::Full));
    } else {
        cases.extend([(0, Family::Full), (0, Family::Even), (1, Family::Even), (2, Family::Even)]);
    }
    for (n, family) in cases {
        let hopf = HopfPresentation::a_n(p, n.max(1), default_degree_bound(p))?;
        let g = match FiniteGroupTable::enumerate(hopf.presentation(), n, family) {
            Ok(g) => g,
            Err(Error::LimitExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        let label = json!({ "algebra": hopf.label(), "n": n, "family": family });
        ctx.check(g.is_latin_square(), || cx(vec![label.clone()], json!(false), json!(true), "Latin square"));
        let lcs = lower_central_series(&g);
        ctx.check(lcs.ok, || {
            cx(vec![label.clone()], serde_json::to_value(&lcs).unwrap(), json!({"bound": lcs.bound}), "lower central series within bound")
        });
        let ds = derived_series(&g);
        ctx.check(ds.ok, || {
            cx(vec![label.clone()], serde_json::to_value(&ds).unwrap(), json!({"bound": ds.bound}), "derived series within bound")
        });
    }
    Ok(())
}

fn hopf_generators(ctx: &Ctx) -> Result<Vec<HopfPresentation>> {
    let mut out = vec![dual_presentation(&ctx.cfg)?];
    out.push(HopfPresentation::a_angle(ctx.cfg.p, 1, ctx.cfg.n_max, ctx.cfg.degree_bound)?);
    Ok(out)
}

fn identity_leg(alg: &Arc<Presentation>, m: &Monomial) -> Tensor {
    Tensor::from_element(&Element::monomial(alg, m.clone()).expect("monomial of this presentation"))
}

fn counit_leg(alg: &Arc<Presentation>, m: &Monomial) -> Tensor {
    if m.is_unit() {
        Tensor::unit(alg, 0)
    } else {
        Tensor::zero(alg, 0)
    }
}

/// Axiom checks on the generators of one preset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HopfCheck {
    Coassociativity,
    Counit,
    Antipode,
    Primitivity,
    Cocommutativity,
}

impl HopfCheck {
    pub const ALL: [HopfCheck; 5] = [
        HopfCheck::Antipode,
        HopfCheck::Coassociativity,
        HopfCheck::Cocommutativity,
        HopfCheck::Counit,
        HopfCheck::Primitivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HopfCheck::Coassociativity => "coassociativity",
            HopfCheck::Counit => "counit",
            HopfCheck::Antipode => "antipode",
            HopfCheck::Primitivity => "primitivity",
            HopfCheck::Cocommutativity => "cocommutativity",
        }
    }
}

impl std::str::FromStr for HopfCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HopfCheck::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s}")))
    }
}

/// Runs one check on every generator; returns the number of generator
/// checks and the failures.
pub fn check_hopf(hopf: &HopfPresentation, check: HopfCheck) -> Result<(usize, Vec<Counterexample>)> {
    let alg = Arc::clone(hopf.presentation());
    let iota = hopf.antipode_map().clone();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut record = |ok: bool, c: Counterexample| {
        checked += 1;
        if !ok {
            failures.push(c);
        }
    };
    for i in 0..alg.len() {
        let x = Element::generator(&alg, i);
        let inputs = || vec![json!(hopf.label()), ej(&x)];
        match check {
            HopfCheck::Coassociativity => {
                let mu = hopf.coproduct(&x)?;
                let on = |side: usize| {
                    mu.map_legs_indexed(&|leg, m| {
                        if leg == side {
                            hopf.coproduct_monomial(m)
                        } else {
                            identity_leg(&alg, m)
                        }
                    })
                };
                let (left, right) = (on(0), on(1));
                record(left == right, cx(inputs(), tj(&left), tj(&right), "(mu x 1) mu = (1 x mu) mu"));
            }
            HopfCheck::Counit => {
                let mu = hopf.coproduct(&x)?;
                for side in 0..2 {
                    let y = mu
                        .map_legs_indexed(&|leg, m| {
                            if leg == side {
                                counit_leg(&alg, m)
                            } else {
                                identity_leg(&alg, m)
                            }
                        })
                        .multiply_legs();
                    record(y == x, cx(inputs(), ej(&y), ej(&x), if side == 0 { "(e x 1) mu = id" } else { "(1 x e) mu = id" }));
                }
            }
            HopfCheck::Antipode => {
                let mu = hopf.coproduct(&x)?;
                let unit = Element::scalar(&alg, hopf.counit(&x) as i64);
                for side in 0..2 {
                    let y = mu
                        .map_legs_indexed(&|leg, m| {
                            if leg == side {
                                Tensor::from_element(&iota.apply_monomial(m))
                            } else {
                                identity_leg(&alg, m)
                            }
                        })
                        .multiply_legs();
                    record(y == unit, cx(inputs(), ej(&y), ej(&unit), if side == 0 { "m(i x 1) mu = e" } else { "m(1 x i) mu = e" }));
                }
                let twice = iota.apply(&iota.apply(&x)?)?;
                record(twice == x, cx(inputs(), ej(&twice), ej(&x), "antipode is an involution"));
            }
            HopfCheck::Primitivity => {
                let mu = hopf.coproduct(&x)?;
                let prim = hopf.primitive_tensor(&x);
                record(mu == prim, cx(inputs(), tj(&mu), tj(&prim), "generator is primitive"));
            }
            HopfCheck::Cocommutativity => {
                let mu = hopf.coproduct(&x)?;
                let t = mu.switch();
                record(mu == t, cx(inputs(), tj(&mu), tj(&t), "mu = T mu"));
            }
        }
    }
    Ok((checked, failures))
}

fn hopf_suite(ctx: &mut Ctx, check: HopfCheck) -> Result<()> {
    for hopf in hopf_generators(ctx)? {
        let (checked, failures) = check_hopf(&hopf, check)?;
        ctx.checked += checked;
        if ctx.failure.is_none() {
            ctx.failure = failures.into_iter().next();
        }
    }
    Ok(())
}

fn hopf_coassociativity(ctx: &mut Ctx) -> Result<()> {
    hopf_suite(ctx, HopfCheck::Coassociativity)
}

fn hopf_counit(ctx: &mut Ctx) -> Result<()> {
    hopf_suite(ctx, HopfCheck::Counit)
}

fn hopf_antipode(ctx: &mut Ctx) -> Result<()> {
    hopf_suite(ctx, HopfCheck::Antipode)
}

fn hopf_antipode_recursion(ctx: &mut Ctx) -> Result<()> {
    let hopf = dual_presentation(&ctx.cfg)?;
    let alg = Arc::clone(hopf.presentation());
    let p = ctx.cfg.p;
    let poly = |i: usize| if p == 2 { GenKind::Zeta(i) } else { GenKind::Xi(i) };
    let iota = |x: &Element| hopf.antipode_map().apply(x);
    for n in 1..=hopf.max_index() {
        if hopf.position(poly(n)).is_none() {
            continue;
        }
        let mut right = Element::zero(&alg);
        let mut left = Element::zero(&alg);
        for k in 0..=n {
            right = &right + &(&hopf.gen(poly(n - k)).frobenius(k as u32) * &iota(&hopf.gen(poly(k)))?);
            left = &left + &(&iota(&hopf.gen(poly(n - k)))?.frobenius(k as u32) * &hopf.gen(poly(k)));
        }
        for (sum, note) in [(right, "sum g_{n-k}^{p^k} iota(g_k) = 0"), (left, "sum iota(g_{n-k})^{p^k} g_k = 0")] {
            ctx.check(sum.is_zero(), || cx(vec![json!(n)], ej(&sum), json!("0"), note));
        }
    }
    if p != 2 {
        for n in 0..=hopf.max_index() {
            if hopf.position(GenKind::Tau(n)).is_none() {
                continue;
            }
            let tau = hopf.gen(GenKind::Tau(n));
            let mut right = tau.clone();
            let mut left = iota(&tau)?;
            for k in 0..=n {
                let xi = hopf.gen(GenKind::Xi(n - k)).frobenius(k as u32);
                right = &right + &(&xi * &iota(&hopf.gen(GenKind::Tau(k)))?);
                left = &left + &(&iota(&xi)? * &hopf.gen(GenKind::Tau(k)));
            }
            for (sum, note) in [(right, "tau_n + sum xi_{n-k}^{p^k} iota(tau_k) = 0"), (left, "iota(tau_n) + sum iota(xi_{n-k})^{p^k} tau_k = 0")] {
                ctx.check(sum.is_zero(), || cx(vec![json!(format!("tau{n}"))], ej(&sum), json!("0"), note));
            }
        }
    }
    Ok(())
}

fn hopf_cocommutativity_witness(ctx: &mut Ctx) -> Result<()> {
    let hopf = dual_presentation(&ctx.cfg)?;
    let alg = Arc::clone(hopf.presentation());
    let (name, expected) = if ctx.cfg.p == 2 {
        let z1 = hopf.gen(GenKind::Zeta(1));
        let sq = &z1 * &z1;
        (
            "zeta2",
            &Tensor::pure(&[sq.clone(), z1.clone()]) - &Tensor::pure(&[z1, sq]),
        )
    } else {
        let xi = hopf.gen(GenKind::Xi(1));
        let t0 = hopf.gen(GenKind::Tau(0));
        (
            "tau1",
            &Tensor::pure(&[xi.clone(), t0.clone()]) - &Tensor::pure(&[t0, xi]),
        )
    };
    let d = alg.generators()[alg.index_of(name).expect("preset generator")].degree;
    let defects = hopf.cocommutativity_defect(d)?;
    let got = defects.iter().find(|(n, _)| n == name).map(|(_, t)| t.clone());
    let ok = got.as_ref() == Some(&expected);
    ctx.check(ok, || {
        cx(
            vec![json!(hopf.label()), json!(name)],
            got.as_ref().map_or(json!("0"), tj),
            tj(&expected),
            "mu - T mu is the expected nonzero witness",
        )
    });
    Ok(())
}

fn hopf_ideal_primitivity(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.cfg.p;
    for k in 0..=2 {
        let q = HopfPresentation::a_mod_i(p, k, ctx.cfg.n_max, ctx.cfg.degree_bound)?;
        let bad = q.non_primitive_generators();
        ctx.check(bad.is_empty(), || {
            cx(
                vec![json!(q.label()), json!(k)],
                json!(bad.iter().map(|(n, t)| format!("{n}: {t}")).collect::<Vec<_>>()),
                json!([]),
                "every generator of the quotient is primitive",
            )
        });
    }
    // Caps of the monogenic factors of A/I<0>.
    let q = HopfPresentation::a_mod_i(p, 0, ctx.cfg.n_max, ctx.cfg.degree_bound)?;
    for (g, kind) in q.presentation().generators().iter().zip(q.kinds()) {
        let want = match kind {
            GenKind::Tau(0) => 1,
            GenKind::Tau(_) => 2,
            _ => p,
        };
        ctx.check(g.cap == Some(want), || {
            cx(vec![json!(q.label()), json!(g.name)], json!(g.cap), json!(want), "monogenic factor caps")
        });
    }
    Ok(())
}

fn hopf_quotient_maps(ctx: &mut Ctx) -> Result<()> {
    let src = dual_presentation(&ctx.cfg)?;
    for n in 1..=3 {
        let tgt = HopfPresentation::a_n(ctx.cfg.p, n, ctx.cfg.degree_bound)?;
        let f = src.reduction_to(&tgt)?;
        let ok = is_hopf_map(&src, &tgt, &f)?;
        ctx.check(ok, || cx(vec![json!(src.label()), json!(tgt.label())], json!(ok), json!(true), "reduction is a Hopf map"));
    }
    Ok(())
}

fn milnor_complementarity(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.cfg.p;
    for _ in 0..ctx.cfg.samples {
        let k = ctx.rng.gen_range(0..=2u32);
        let bound = p.pow(k + 2);
        let len = ctx.rng.gen_range(0..=4);
        let r: Vec<u32> = (0..len).map(|_| ctx.rng.gen_range(0..bound)).collect();
        let e: Vec<u32> = if p == 2 {
            vec![]
        } else {
            (0..5).map(|_| ctx.rng.gen_range(0..2)).collect()
        };
        let (e, r) = (SeqB::new(&e)?, Seq::new(&r));
        let j = in_j_basis(&e, &r, k, p);
        let span = in_dual_span(&DualSymbol::dual_of(p, &e, &r), k);
        ctx.check(j != span, || {
            cx(vec![json!(e.to_string()), json!(r.to_string()), json!(k)], json!(j), json!(!span), "in J-basis xor in dual span")
        });
    }
    Ok(())
}

fn milnor_order(ctx: &mut Ctx) -> Result<()> {
    let draw = |rng: &mut ChaCha8Rng| -> Seq {
        let len = rng.gen_range(0..=3);
        let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        Seq::new(&v)
    };
    for _ in 0..ctx.cfg.samples {
        let (r, s, t) = (draw(&mut ctx.rng), draw(&mut ctx.rng), draw(&mut ctx.rng));
        let inputs = || vec![json!(r.to_string()), json!(s.to_string()), json!(t.to_string())];
        ctx.check(seq_leq(&r, &r), || cx(inputs(), json!(false), json!(true), "reflexive"));
        if seq_leq(&r, &s) && seq_leq(&s, &r) {
            ctx.check(r == s, || cx(inputs(), json!(false), json!(true), "antisymmetric"));
        }
        if seq_leq(&r, &s) && seq_leq(&s, &t) {
            ctx.check(seq_leq(&r, &t), || cx(inputs(), json!(false), json!(true), "transitive"));
        }
        if seq_leq(&r, &s) {
            ctx.check(seq_leq(&r.add(&t), &s.add(&t)), || cx(inputs(), json!(false), json!(true), "monotone addition"));
        }
    }
    Ok(())
}

/// A random degree-preserving assignment out of `hopf` into `target`.
pub fn random_assignment(
    hopf: &HopfPresentation,
    target: &mut ElementSampler,
    rng: &mut ChaCha8Rng,
) -> Result<AlgebraMap> {
    let images = hopf
        .presentation()
        .generators()
        .iter()
        .map(|g| target.sample(g.degree, rng))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap::new(hopf.presentation(), target.presentation(), images)
}

fn rho_diagram(ctx: &mut Ctx) -> Result<()> {
    let p = ctx.cfg.p;
    let target = Arc::clone(dual_presentation(&ctx.cfg)?.presentation());
    let mut s = ElementSampler::new(&target);
    for level in 0..=2u32 {
        let hopf = HopfPresentation::a_angle(p, level, ctx.cfg.n_max, ctx.cfg.degree_bound)?;
        for _ in 0..ctx.cfg.samples.div_ceil(3) {
            let phi = random_assignment(&hopf, &mut s, &mut ctx.rng)?;
            let k = ctx.cfg.k;
            let (left, right) = hopf.rho_diagram_sides(&phi, k)?;
            ctx.check(left == right, || {
                cx(
                    vec![json!(hopf.label()), json!(phi.images().iter().map(|x| x.to_string()).collect::<Vec<_>>())],
                    gj(&left),
                    gj(&right),
                    "rho theta_s = theta_{s+1} iota_s^*",
                )
            });
            if ctx.failed() {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_sorted_and_unique() {
        let names = suite_names();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn small_run_is_deterministic() {
        let cfg = VerifyConfig::new(2, 2, 5, 10);
        let names = vec!["associativity".to_string(), "compositions".to_string()];
        let a = run(&cfg, &names).unwrap();
        let b = run(&cfg, &names).unwrap();
        assert!(a.ok, "{a:?}");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
