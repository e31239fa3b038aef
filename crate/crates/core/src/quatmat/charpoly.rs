//! Characteristic polynomials over commutative splittings.
//!
//! Complex and quaternionic matrices are sent into matrices over the
//! commutative ring `F[t]/(t² − d)` (d = −1, resp. d = a for `(a,b)_F`), where
//! the Faddeev–LeVerrier recurrence applies; it only divides by integers.

use crate::algebra::{EElement, ESpec};
use crate::symfield::{rat, RatFunc};

use super::MatE;

/// Element `re + im·√d` of `F[√d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub re: RatFunc,
    pub im: RatFunc,
}

impl Quad {
    pub fn real(re: RatFunc) -> Self {
        Quad { re, im: RatFunc::zero() }
    }

    pub fn zero() -> Self {
        Self::real(RatFunc::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quad { re: self.re.clone(), im: -&self.im }
    }

    pub fn add(&self, o: &Self) -> Self {
        Quad { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quad { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        Quad { re: &self.re * f, im: &self.im * f }
    }

    pub fn mul(&self, o: &Self, d: &RatFunc) -> Self {
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        Quad {
            re: &(&self.re * &o.re) + &(d * &(&self.im * &o.im)),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

/// Square matrix over `F[√d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMat {
    pub d: RatFunc,
    pub n: usize,
    pub m: Vec<Quad>,
}

impl QuadMat {
    fn get(&self, i: usize, j: usize) -> &Quad {
        &self.m[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Quad::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b, &self.d));
                    }
                }
                m.push(acc);
            }
        }
        QuadMat { d: self.d.clone(), n, m }
    }

    /// Coefficients of `det(X·I − A)`, constant term first.
    pub fn charpoly(&self) -> Vec<Quad> {
        let n = self.n;
        let mut c = vec![Quad::zero(); n + 1];
        c[n] = Quad::real(RatFunc::one());
        // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k.
        let mut mk = QuadMat { d: self.d.clone(), n, m: vec![Quad::zero(); n * n] };
        for k in 1..=n {
            for i in 0..n {
                let idx = i * n + i;
                mk.m[idx] = mk.m[idx].add(&c[n - k + 1]);
            }
            let am = self.mul(&mk);
            let mut tr = Quad::zero();
            for i in 0..n {
                tr = tr.add(am.get(i, i));
            }
            c[n - k] = tr.scale(&RatFunc::from_rat(rat(-1, k as i64)));
            mk = am;
        }
        c
    }
}

/// Image of `M` in matrices over `F[√d]`: the identity embedding for BASE,
/// `√−1 ↦ √d` for COMPLEX, and for `(a,b)_F` the block matrix
/// `[[Z1, Z2], [b·Z̄2, Z̄1]]` with `q = z1 + z2·j`, `z1 = q0 + q1√a`,
/// `z2 = q2 + q3√a`.
pub fn split_embedding(m: &MatE) -> QuadMat {
    let n = m.n();
    match m.spec() {
        ESpec::Base => QuadMat {
            d: RatFunc::from_int(-1),
            n,
            m: m.entries().iter().map(|e| Quad::real(e.coord(0).clone())).collect(),
        },
        ESpec::Complex => QuadMat {
            d: RatFunc::from_int(-1),
            n,
            m: m.entries().iter().map(|e| Quad { re: e.coord(0).clone(), im: e.coord(1).clone() }).collect(),
        },
        ESpec::Quat(p) => {
            let z1 = |e: &EElement| Quad { re: e.coord(0).clone(), im: e.coord(1).clone() };
            let z2 = |e: &EElement| Quad { re: e.coord(2).clone(), im: e.coord(3).clone() };
            let mut out = vec![Quad::zero(); 4 * n * n];
            let w = 2 * n;
            for i in 0..n {
                for j in 0..n {
                    let e = m.get(i, j);
                    out[i * w + j] = z1(e);
                    out[i * w + j + n] = z2(e);
                    out[(i + n) * w + j] = z2(e).conj().scale(&p.b);
                    out[(i + n) * w + j + n] = z1(e).conj();
                }
            }
            QuadMat { d: p.a.clone(), n: w, m: out }
        }
    }
}
