//! Roots in F of univariate polynomials over F.
//!
//! The polynomial is scaled to a monic one with polynomial coefficients, whose
//! roots in F are then polynomials. Those are found term by term in increasing
//! valuation order: each next term `c·x^γ` has `γ` the negated slope of a
//! Newton segment and `c` a rational root of that segment's residual
//! polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gamma::GammaVal;
use super::poly::{gcd, Exponents, MultiPoly};
use super::polyx::PolyX;
use super::ratfunc::RatFunc;
use super::Rat;
use crate::error::Result;

/// Roots of `p` lying in F, with multiplicities, sorted by canonical string.
pub fn roots_in_field(p: &PolyX) -> Result<Vec<(RatFunc, usize)>> {
    let p = p.monic()?;
    let d = p.degree().unwrap();
    if d == 0 {
        return Ok(vec![]);
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut out: Vec<(RatFunc, usize)> = Vec::new();
    if zeros > 0 {
        out.push((RatFunc::zero(), zeros));
    }
    let shifted = PolyX::new(p.coeffs()[zeros..].to_vec());
    let d = d - zeros;
    if d == 0 {
        return Ok(out);
    }

    let mut den = MultiPoly::one();
    for c in shifted.coeffs() {
        let g = gcd(&den, c.den());
        den = den.mul(&c.den().exact_div(&g).unwrap());
    }
    let den_f = RatFunc::from_poly(den.clone());
    let mut q: Vec<MultiPoly> = Vec::with_capacity(d + 1);
    let mut dpow = RatFunc::one();
    for k in (0..=d).rev() {
        let c = &shifted.coeff(k) * &dpow;
        debug_assert!(c.is_polynomial());
        q.push(c.num().clone());
        dpow = &dpow * &den_f;
    }
    q.reverse();

    let nv = q.iter().map(|c| c.nvars_used()).max().unwrap_or(0);
    let bounds: Vec<u32> = (0..nv)
        .map(|v| (0..d).map(|k| q[k].degree_in(v) / (d - k) as u32).max().unwrap_or(0))
        .collect();
    let mut found: BTreeSet<Vec<(Exponents, Rat)>> = BTreeSet::new();
    search(&q, &MultiPoly::zero(), None, &bounds, &mut found);

    let mut rest = shifted;
    for g in found {
        let g = MultiPoly::from_terms(g);
        let f = &RatFunc::from_poly(g) / &den_f;
        let lin = PolyX::linear_root(&f);
        let mut m = 0;
        loop {
            let (qq, r) = rest.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            rest = qq;
            m += 1;
        }
        if m > 0 {
            out.push((f, m));
        }
    }
    out.sort_by_key(|(f, _)| f.display_with(&[]));
    Ok(out)
}

fn key(g: &MultiPoly) -> Vec<(Exponents, Rat)> {
    g.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

fn search(
    q: &[MultiPoly],
    partial: &MultiPoly,
    last: Option<&GammaVal>,
    bounds: &[u32],
    found: &mut BTreeSet<Vec<(Exponents, Rat)>>,
) {
    let d = q.len() - 1;
    if q[0].is_zero() {
        found.insert(key(partial));
    }
    let vals: Vec<GammaVal> = q
        .iter()
        .map(|c| if c.is_zero() { GammaVal::Inf } else { RatFunc::from_poly(c.clone()).val() })
        .collect();
    let start = (0..=d).find(|&i| !vals[i].is_inf()).unwrap();
    let mut i = start;
    while i < d {
        let mut best: Option<(GammaVal, usize)> = None;
        for j in i + 1..=d {
            if vals[j].is_inf() {
                continue;
            }
            let s = vals[j].sub(&vals[i]).scale(&Rat::new(One::one(), BigInt::from(j - i)));
            best = match best {
                Some((b, k)) if s > b || (s == b && k > j) => Some((b, k)),
                _ => Some((s, j)),
            };
        }
        let (slope, j) = best.unwrap();
        let gamma = slope.neg();
        if let Some(e) = admissible(&gamma, last, bounds) {
            // Residual polynomial over the points on this segment.
            let line = vals[i].add(&gamma.scale(&Rat::from_integer(BigInt::from(i))));
            let mut res: Vec<Rat> = vec![Rat::zero(); j - i + 1];
            for k in i..=j {
                if vals[k].is_inf() {
                    continue;
                }
                if vals[k].add(&gamma.scale(&Rat::from_integer(BigInt::from(k)))) == line {
                    res[k - i] = q[k].lowest_term().unwrap().1.clone();
                }
            }
            for c in rational_roots(&res) {
                if c.is_zero() {
                    continue;
                }
                let t = MultiPoly::monomial(c, &e);
                let shifted = taylor_shift(q, &t);
                search(&shifted, &partial.add(&t), Some(&gamma), bounds, found);
            }
        }
        i = j;
    }
}

fn admissible(gamma: &GammaVal, last: Option<&GammaVal>, bounds: &[u32]) -> Option<Vec<u32>> {
    if gamma.is_inf() || !gamma.is_integral() {
        return None;
    }
    if let Some(l) = last {
        if gamma <= l {
            return None;
        }
    }
    let coords = gamma.coords(bounds.len())?;
    if coords.len() > bounds.len() {
        return None;
    }
    let mut e = Vec::with_capacity(coords.len());
    for (c, b) in coords.iter().zip(bounds) {
        let k = c.to_integer().to_i64()?;
        if k < 0 || k > *b as i64 {
            return None;
        }
        e.push(k as u32);
    }
    Some(e)
}

/// Coefficients of `q(Y + t)`.
fn taylor_shift(q: &[MultiPoly], t: &MultiPoly) -> Vec<MultiPoly> {
    let mut acc: Vec<MultiPoly> = Vec::new();
    for c in q.iter().rev() {
        let mut next = vec![MultiPoly::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].add(a);
            next[k] = next[k].add(&a.mul(t));
        }
        next[0] = next[0].add(c);
        acc = next;
    }
    acc
}

/// Rational roots of `Σ a_k T^k` (without multiplicity).
pub fn rational_roots(a: &[Rat]) -> Vec<Rat> {
    let mut a: Vec<Rat> = a.to_vec();
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    if a.len() < 2 {
        return vec![];
    }
    let mut out = Vec::new();
    let low = a.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        out.push(Rat::zero());
    }
    let a = &a[low..];
    if a.len() < 2 {
        return out;
    }
    let mut l = BigInt::one();
    for c in a {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let ps = divisors(&ints[0].abs());
    let qs = divisors(&ints[ints.len() - 1].abs());
    let mut seen = BTreeSet::new();
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for s in [1i32, -1] {
                let pp = if s > 0 { p.clone() } else { -p.clone() };
                if eval_int(&ints, &pp, q).is_zero() {
                    seen.insert(Rat::new(pp, q.clone()));
                }
            }
        }
    }
    out.extend(seen);
    out
}

fn eval_int(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    // Σ a_k p^k q^(m−k) by homogeneous Horner.
    let m = a.len() - 1;
    let mut acc = a[m].clone();
    let mut qk = BigInt::one();
    for k in (0..m).rev() {
        qk *= q;
        acc = acc * p + &a[k] * &qk;
    }
    acc
}

/// Positive divisors; factors above 10^6 left after trial division are
/// treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut f = BigInt::from(2);
    let cap = BigInt::from(1_000_000);
    while &f * &f <= n && f <= cap {
        let mut e = 0;
        while (&n % &f).is_zero() {
            n /= &f;
            e += 1;
        }
        if e > 0 {
            primes.push((f.clone(), e));
        }
        f += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &p;
            }
        }
        out = next;
    }
    out
}
