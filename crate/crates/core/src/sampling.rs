//! Seeded random elements for the property suites: sparse polynomial
//! entries of total degree ≤ 3 with integer coefficients of height ≤ 10.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{EElement, ESpec};
use crate::quatmat::MatE;
use crate::error::Result;
use crate::symfield::{MultiPoly, OrderingSpec, Rat, RatFunc};

pub const MAX_DEGREE: u32 = 3;
pub const MAX_HEIGHT: i64 = 10;

/// Generator for one sample, derived from a suite seed, a stream id and the
/// sample index so that any single sample can be replayed.
pub fn sample_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(index) << 20);
    rng
}

pub struct Sampler<R: Rng> {
    pub rng: R,
    r: usize,
}

impl<R: Rng> Sampler<R> {
    pub fn new(rng: R, r: usize) -> Self {
        Sampler { rng, r }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        let k = self.rng.gen_range(1..=MAX_HEIGHT);
        if self.rng.gen_bool(0.5) {
            k
        } else {
            -k
        }
    }

    pub fn positive_rat(&mut self) -> Rat {
        Rat::new(self.rng.gen_range(1..=MAX_HEIGHT).into(), self.rng.gen_range(1..=MAX_HEIGHT).into())
    }

    fn monomial_exponents(&mut self) -> Vec<u32> {
        let mut e = vec![0u32; self.r];
        let deg = self.rng.gen_range(0..=MAX_DEGREE);
        for _ in 0..deg {
            if self.r > 0 {
                let i = self.rng.gen_range(0..self.r);
                e[i] += 1;
            }
        }
        e
    }

    /// Nonzero polynomial with one to three terms.
    pub fn poly(&mut self) -> RatFunc {
        loop {
            let terms = self.rng.gen_range(1..=3);
            let mut p = MultiPoly::zero();
            for _ in 0..terms {
                let e = self.monomial_exponents();
                let c = Rat::from_integer(self.nonzero_int().into());
                p = p.add(&MultiPoly::monomial(c, &e));
            }
            if !p.is_zero() {
                return RatFunc::from_poly(p);
            }
        }
    }

    /// Positive element at `p`: a positive rational times a Laurent monomial
    /// that is positive at `p`.
    pub fn positive_scalar(&mut self, p: &OrderingSpec) -> RatFunc {
        let mut e = vec![0i64; self.r];
        for (i, k) in e.iter_mut().enumerate() {
            let mut x = self.rng.gen_range(-2..=2i64);
            if x % 2 != 0 && p.eta_at(i) < 0 {
                x += 1;
            }
            *k = x;
        }
        RatFunc::laurent_monomial(self.positive_rat(), &e)
    }

    /// Nonzero element of E with sparse coordinates.
    pub fn element(&mut self, spec: &ESpec) -> EElement {
        let d = spec.dim();
        let keep = self.rng.gen_range(0..d);
        let c = (0..d)
            .map(|k| if k == keep || self.rng.gen_bool(0.4) { self.poly() } else { RatFunc::zero() })
            .collect();
        EElement::new(spec, c).unwrap()
    }

    /// Matrix whose entries are zero with probability `1 − density`.
    pub fn matrix(&mut self, spec: &ESpec, n: usize, density: f64) -> MatE {
        let mut m = MatE::zero(spec, n);
        for i in 0..n {
            for j in 0..n {
                if self.rng.gen_bool(density) {
                    let e = self.element(spec);
                    m.set(i, j, e);
                }
            }
        }
        m
    }

    /// Nonzero matrix.
    pub fn nonzero_matrix(&mut self, spec: &ESpec, n: usize) -> MatE {
        loop {
            let m = self.matrix(spec, n, 0.6);
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// Element with a single nonzero coordinate `c·x^α`.
    pub fn monomial_element(&mut self, spec: &ESpec) -> EElement {
        let mut c = vec![RatFunc::zero(); spec.dim()];
        let k = self.rng.gen_range(0..spec.dim());
        let e = self.monomial_exponents();
        c[k] = RatFunc::monomial(Rat::from_integer(self.nonzero_int().into()), &e);
        EElement::new(spec, c).unwrap()
    }

    /// Nonzero matrix of monomial entries, each present with probability ½.
    pub fn monomial_matrix(&mut self, spec: &ESpec, n: usize) -> MatE {
        loop {
            let mut m = MatE::zero(spec, n);
            for i in 0..n {
                for j in 0..n {
                    if self.rng.gen_bool(0.5) {
                        let e = self.monomial_element(spec);
                        m.set(i, j, e);
                    }
                }
            }
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// Element of ℚ (constant entries) for residue algebras.
    pub fn constant_element(&mut self, spec: &ESpec) -> EElement {
        let d = spec.dim();
        let c = (0..d)
            .map(|_| {
                if self.rng.gen_bool(0.6) {
                    RatFunc::from_int(self.rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT))
                } else {
                    RatFunc::zero()
                }
            })
            .collect();
        EElement::new(spec, c).unwrap()
    }

    pub fn constant_matrix(&mut self, spec: &ESpec, n: usize) -> MatE {
        let mut m = MatE::zero(spec, n);
        for i in 0..n {
            for j in 0..n {
                let e = self.constant_element(spec);
                m.set(i, j, e);
            }
        }
        m
    }

    /// Diagonal form entry `u·x^α·(1 + t)` with `u` a nonzero rational and
    /// `t` of positive valuation; the exponent `α` is drawn from `0..=3`
    /// coordinatewise and then forced even when `even` is set.
    pub fn form_entry(&mut self, even: bool, positive_unit: bool) -> RatFunc {
        let mut e: Vec<u32> = (0..self.r).map(|_| self.rng.gen_range(0..=3)).collect();
        if even {
            for k in e.iter_mut() {
                *k -= *k % 2;
            }
        }
        let mut u = self.positive_rat();
        if !positive_unit && self.rng.gen_bool(0.5) {
            u = -u;
        }
        let lead = MultiPoly::monomial(u, &e);
        let tail = if self.r > 0 && self.rng.gen_bool(0.5) {
            let mut f = e.clone();
            f[0] += 1;
            MultiPoly::monomial(Rat::from_integer(self.nonzero_int().into()), &f)
        } else {
            MultiPoly::zero()
        };
        RatFunc::from_poly(lead.add(&tail))
    }
}

/// Outcome of one sampled condition. Witnesses name the seed, stream and
/// sample index, which replay the sample exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionTally {
    pub name: String,
    pub tried: usize,
    pub vacuous: usize,
    pub violations: Vec<String>,
}

impl ConditionTally {
    pub fn new(name: &str) -> Self {
        ConditionTally { name: name.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of one sampled check: `None` when the hypotheses fail, otherwise
/// pass or a witness description.
pub type Outcome = Result<Option<std::result::Result<(), String>>>;

pub fn outcome(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    Ok(Some(if ok { Ok(()) } else { Err(msg()) }))
}

/// Runs `check` on samples until `count` non-vacuous outcomes are collected
/// (bounded by `20·count` attempts). `check` returns `None` when the
/// sampled instance does not meet the hypotheses.
pub fn run_condition(
    name: &str,
    seed: u64,
    stream: u64,
    count: usize,
    mut check: impl FnMut(&mut Sampler<ChaCha8Rng>) -> Outcome,
    r: usize,
) -> ConditionTally {
    let mut t = ConditionTally::new(name);
    let mut k = 0u64;
    while t.tried < count && k < 20 * count as u64 {
        let mut s = Sampler::new(sample_rng(seed, stream, k), r);
        match check(&mut s) {
            Ok(Some(Ok(()))) => t.tried += 1,
            Ok(Some(Err(w))) => {
                t.tried += 1;
                t.violations.push(format!("seed={seed} stream={stream} sample={k}: {w}"));
            }
            Ok(None) => t.vacuous += 1,
            Err(e) => {
                t.tried += 1;
                t.violations.push(format!("seed={seed} stream={stream} sample={k}: error {e}"));
            }
        }
        k += 1;
    }
    t
}
