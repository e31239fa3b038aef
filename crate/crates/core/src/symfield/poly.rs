//! Sparse multivariate polynomials over ℚ with lex-ordered terms.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the derived
//! lexicographic order on `Vec`-like exponents agrees with lex order on the
//! zero-padded vectors and polynomials need not carry a variable count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Rat;

pub type Exponents = SmallVec<[u32; 4]>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub(crate) fn exp_get(e: &Exponents, i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

fn exp_add(a: &Exponents, b: &Exponents) -> Exponents {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.clone();
    for (o, s) in out.iter_mut().zip(short.iter()) {
        *o += *s;
    }
    out
}

fn exp_sub(a: &Exponents, b: &Exponents) -> Option<Exponents> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.clone();
    for (o, s) in out.iter_mut().zip(b.iter()) {
        if *o < *s {
            return None;
        }
        *o -= *s;
    }
    Some(trim(out))
}

fn exp_min(a: &Exponents, b: &Exponents) -> Exponents {
    let n = a.len().min(b.len());
    trim((0..n).map(|i| a[i].min(b[i])).collect())
}

/// Builds a trimmed exponent vector from a slice.
pub fn exponents(e: &[u32]) -> Exponents {
    trim(e.iter().copied().collect())
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, Rat>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, &[])
    }

    pub fn monomial(c: Rat, e: &[u32]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents(e), c);
        }
        MultiPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(Rat::one(), &e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rat)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                rat_add_assign(o.get_mut(), c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_empty())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(e, c)| e.is_empty() && c.is_one()).unwrap()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant term (coefficient of the zero exponent).
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Exponents::new()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> + '_ {
        self.terms.iter()
    }

    /// Lex-minimal term; this is the valuation-leading term.
    pub fn lowest_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next()
    }

    /// Lex-maximal term; the normalization-leading term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn nvars_used(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| exp_get(e, v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| exp_get(e, v) > 0)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), rat_mul(k, c))).collect(),
        }
    }

    pub fn mul_term(&self, e: &Exponents, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(f, k)| (exp_add(f, e), rat_mul(k, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return MultiPoly::zero();
        }
        if o.terms.len() == 1 {
            let (e, c) = o.terms.iter().next().unwrap();
            return self.mul_term(e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            return o.mul_term(e, c);
        }
        let (da, ia) = self.integer_terms();
        let (db, ib) = o.integer_terms();
        let den = da * db;
        if let (Some(sa), Some(sb)) = (small(&ia), small(&ib)) {
            if let Some(p) = mul_dense(&sa, &sb, &den) {
                return p;
            }
            if let Some(acc) = mul_small(&sa, &sb) {
                return MultiPoly::from_integer_acc(acc.into_iter().map(|(e, c)| (e, BigInt::from(c))), &den);
            }
        }
        let mut acc: HashMap<Exponents, BigInt> = HashMap::with_capacity(ia.len() * ib.len());
        for (e1, c1) in &ia {
            for (e2, c2) in &ib {
                *acc.entry(exp_add(e1, e2)).or_default() += c1 * c2;
            }
        }
        MultiPoly::from_integer_acc(acc, &den)
    }

    /// Common denominator and the integer numerators over it.
    fn integer_terms(&self) -> (BigInt, Vec<(&Exponents, BigInt)>) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e, if c.denom().is_one() { c.numer() * &den } else { c.numer() * (&den / c.denom()) }))
            .collect();
        (den, terms)
    }

    fn from_integer_acc<I: IntoIterator<Item = (Exponents, BigInt)>>(acc: I, den: &BigInt) -> Self {
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, if den.is_one() { Rat::from_integer(c) } else { Rat::new(c, den.clone()) }))
            .collect();
        MultiPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (monomial content).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Exponents::new();
        };
        it.fold(first.clone(), |acc, e| exp_min(&acc, e))
    }

    /// Divides every term by `x^e`; the caller guarantees divisibility.
    pub fn div_monomial(&self, e: &Exponents) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (exp_sub(f, e).expect("monomial divisibility"), c.clone()))
                .collect(),
        }
    }

    /// Makes the lex-leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => MultiPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact division; `None` when `o` does not divide `self`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        assert!(!o.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if o.terms.len() == 1 {
            let (e, c) = o.terms.iter().next().unwrap();
            let inv = c.recip();
            let mut terms = BTreeMap::new();
            for (f, k) in &self.terms {
                terms.insert(exp_sub(f, e)?, k * &inv);
            }
            return Some(MultiPoly { terms });
        }
        let (le, lc) = o.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((e, c)) = rem.leading_term() {
            let qe = exp_sub(e, &le)?;
            let qc = c / &lc;
            rem = rem.sub(&o.mul_term(&qe, &qc));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Coefficients as a polynomial in variable `v` (index = degree).
    pub fn as_univariate(&self, v: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = exp_get(e, v) as usize;
            let mut f = e.clone();
            if v < f.len() {
                f[v] = 0;
            }
            out[k].add_term(trim(f), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MultiPoly], v: usize) -> Self {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; v + 1];
            e[v] = k as u32;
            let m = exponents(&e);
            for (f, x) in &c.terms {
                out.add_term(exp_add(f, &m), x.clone());
            }
        }
        out
    }

    /// Multiplies by a rational so all coefficients become coprime integers
    /// with positive lex-leading coefficient; returns the integer coefficients.
    pub fn integer_primitive(&self) -> (Rat, Vec<(Exponents, BigInt)>) {
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        if g.is_zero() {
            return (Rat::one(), vec![]);
        }
        if self.leading_term().unwrap().1.is_negative() {
            g = -g;
        }
        let factor = Rat::new(den.clone(), g.clone());
        let out = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer() * (&den / c.denom()) / &g))
            .collect();
        (factor, out)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.is_empty() {
                factors.push(a.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                if k == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{k}"));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

/// Normalized gcd (monic in the lex-leading term); gcd(0,0) = 0.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let gm = exp_min(&ma, &mb);
    let mono = MultiPoly::monomial(Rat::one(), &gm);
    if a.is_monomial() || b.is_monomial() {
        return mono;
    }
    let a1 = if ma.is_empty() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_empty() { b.clone() } else { b.div_monomial(&mb) };
    let g = gcd_no_monomial(&a1, &b1);
    g.mul(&mono).monic()
}

/// Rational product skipping the gcd reductions when both are integers.
fn rat_mul(a: &Rat, b: &Rat) -> Rat {
    if a.denom().is_one() && b.denom().is_one() {
        Rat::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn rat_add_assign(a: &mut Rat, b: Rat) {
    if a.denom().is_one() && b.denom().is_one() {
        *a = Rat::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

fn small<'a>(v: &[(&'a Exponents, BigInt)]) -> Option<Vec<(&'a Exponents, i64)>> {
    v.iter().map(|(e, c)| i64::try_from(c).ok().map(|k| (*e, k))).collect()
}

/// Product of integer polynomials in a dense `i128` array over the exponent
/// box, read out in lex order; `None` when the box is large or on overflow.
fn mul_dense(a: &[(&Exponents, i64)], b: &[(&Exponents, i64)], den: &BigInt) -> Option<MultiPoly> {
    const MAX_CELLS: usize = 1 << 14;
    let nv = a.iter().chain(b).map(|(e, _)| e.len()).max().unwrap_or(0);
    let deg = |v: &[(&Exponents, i64)], i: usize| v.iter().map(|(e, _)| exp_get(e, i)).max().unwrap_or(0) as usize;
    let dims: Vec<usize> = (0..nv).map(|i| deg(a, i) + deg(b, i) + 1).collect();
    let mut cells = 1usize;
    for d in &dims {
        cells = cells.checked_mul(*d).filter(|&c| c <= MAX_CELLS)?;
    }
    let index = |e: &Exponents| (0..nv).fold(0usize, |acc, i| acc * dims[i] + exp_get(e, i) as usize);
    let ia: Vec<(usize, i128)> = a.iter().map(|(e, c)| (index(e), i128::from(*c))).collect();
    let ib: Vec<(usize, i128)> = b.iter().map(|(e, c)| (index(e), i128::from(*c))).collect();
    let mut acc = vec![0i128; cells];
    for (ka, ca) in &ia {
        for (kb, cb) in &ib {
            let t = &mut acc[ka + kb];
            *t = t.checked_add(ca * cb)?;
        }
    }
    let mut terms = Vec::new();
    for (k, c) in acc.into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut e: Exponents = SmallVec::from_elem(0, nv);
        let mut r = k;
        for i in (0..nv).rev() {
            e[i] = (r % dims[i]) as u32;
            r /= dims[i];
        }
        let c = BigInt::from(c);
        terms.push((trim(e), if den.is_one() { Rat::from_integer(c) } else { Rat::new(c, den.clone()) }));
    }
    Some(MultiPoly { terms: terms.into_iter().collect() })
}

/// Product of integer polynomials accumulated in `i128`; `None` on overflow.
fn mul_small(a: &[(&Exponents, i64)], b: &[(&Exponents, i64)]) -> Option<HashMap<Exponents, i128>> {
    let mut acc: HashMap<Exponents, i128> = HashMap::with_capacity(a.len() * b.len());
    for (e1, c1) in a {
        for (e2, c2) in b {
            let t = acc.entry(exp_add(e1, e2)).or_insert(0);
            *t = t.checked_add(i128::from(*c1) * i128::from(*c2))?;
        }
    }
    Some(acc)
}

/// Gcd of polynomials with no monomial content.
fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    let n = a.nvars_used().max(b.nvars_used());
    if modular_coprime(a, b, n) {
        return MultiPoly::one();
    }
    // A variable present in only one argument can only enter the gcd
    // through that argument's content with respect to it.
    for v in 0..n {
        let (ua, ub) = (a.uses_var(v), b.uses_var(v));
        if ua && !ub {
            return gcd(&content_in(a, v), b);
        }
        if ub && !ua {
            return gcd(a, &content_in(b, v));
        }
    }
    let v = (0..n)
        .filter(|&v| a.uses_var(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant polynomial uses a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let gp = primitive_prs(&pa, &pb, v);
    gc.mul(&gp).monic()
}

const PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(PRIME)) as u64
}

fn powmod(mut a: u64, mut k: u64) -> u64 {
    let mut acc = 1;
    while k > 0 {
        if k & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        k >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

fn rat_mod(c: &Rat) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = c.numer().mod_floor(&p);
    let d = c.denom().mod_floor(&p);
    let d: u64 = d.try_into().ok()?;
    if d == 0 {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    Some(mulmod(n, invmod(d)))
}

/// Image of `p` in `F_p[x_v]` after substituting `point` for the other
/// variables; `None` when the degree in `x_v` drops or a denominator vanishes.
fn univariate_image(p: &MultiPoly, v: usize, point: &[u64]) -> Option<Vec<u64>> {
    let d = p.degree_in(v) as usize;
    let mut out = vec![0u64; d + 1];
    for (e, c) in &p.terms {
        let mut t = rat_mod(c)?;
        for (i, &x) in point.iter().enumerate() {
            if i != v {
                t = mulmod(t, powmod(x, u64::from(exp_get(e, i))));
            }
        }
        let k = exp_get(e, v) as usize;
        out[k] = (out[k] + t) % PRIME;
    }
    (out[d] != 0).then_some(out)
}

fn poly_mod_rem(mut f: Vec<u64>, g: &[u64]) -> Vec<u64> {
    let dg = g.len() - 1;
    let inv = invmod(g[dg]);
    while f.len() > dg {
        let lead = mulmod(*f.last().unwrap(), inv);
        let shift = f.len() - 1 - dg;
        for (k, &gk) in g.iter().enumerate() {
            f[k + shift] = (f[k + shift] + PRIME - mulmod(lead, gk)) % PRIME;
        }
        f.pop();
        while f.last() == Some(&0) {
            f.pop();
        }
    }
    f
}

fn univariate_gcd_degree(a: Vec<u64>, b: Vec<u64>) -> usize {
    let (mut f, mut g) = (a, b);
    while !g.is_empty() {
        let r = poly_mod_rem(f, &g);
        f = g;
        g = r;
    }
    f.len() - 1
}

/// Proves `gcd(a, b) = 1` when, for every variable, some evaluation of the
/// others keeps both leading coefficients and gives coprime images mod p:
/// the degree of such an image gcd bounds the degree of the true gcd.
fn modular_coprime(a: &MultiPoly, b: &MultiPoly, n: usize) -> bool {
    const POINTS: [u64; 6] = [1_000_003, 7_919, 104_729, 15_485_863, 2_750_159, 613];
    (0..n).all(|v| {
        (0..2).any(|t| {
            let point: Vec<u64> = (0..n).map(|i| POINTS[(i + 3 * t) % POINTS.len()] + i as u64).collect();
            match (univariate_image(a, v, &point), univariate_image(b, v, &point)) {
                (Some(x), Some(y)) => univariate_gcd_degree(x, y) == 0,
                _ => false,
            }
        })
    })
}

/// Gcd of the coefficients of `p` viewed in `K[other vars][x_v]`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = p.as_univariate(v);
    let mut g = MultiPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    if c.is_one() {
        p.clone()
    } else {
        p.exact_div(&c).expect("content divides")
    }
}

/// Pseudo-remainder of `f` by `g` as polynomials in `x_v`.
fn prem(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let mut r = f.as_univariate(v);
    let gc = g.as_univariate(v);
    let dg = gc.len() - 1;
    let lc = gc[dg].clone();
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(&lc);
        }
        for (k, gk) in gc.iter().enumerate() {
            let t = gk.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    MultiPoly::from_univariate(&r, v)
}

fn primitive_prs(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        let r = prem(&f, &g, v);
        if r.is_zero() {
            return primitive_part_in(&g, v).monic();
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        f = g;
        g = primitive_part_in(&r, v).monic();
    }
}
