use num_traits::One;

use super::gamma::GammaVal;
use super::ratfunc::RatFunc;
use super::Rat;
use crate::error::{Error, Result};

/// Univariate polynomial over F, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<RatFunc>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: vec![] }
    }

    pub fn constant(c: RatFunc) -> Self {
        PolyX::new(vec![c])
    }

    /// `X − f`.
    pub fn linear_root(f: &RatFunc) -> Self {
        PolyX::new(vec![-f, RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyX::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyX::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyX::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        PolyX::new(out)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        PolyX::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(Error::NotMonicAfterNormalization)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = lc.inv();
        Ok(self.scale(&inv))
    }

    /// Horner evaluation at an element of F.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division over F.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().unwrap().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![RatFunc::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while r.len() > dd {
            let k = r.len() - 1;
            let t = &r[k] * &lc_inv;
            if !t.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[k - dd + i] = &r[k - dd + i] - &(&t * c);
                }
                q[k - dd] = t;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (PolyX::new(q), PolyX::new(r))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.display_with(names);
            let cs = if cs.contains(['+', ' ']) || (cs.contains('-') && k > 0) { format!("({cs})") } else { cs };
            parts.push(match k {
                0 => cs,
                1 if c.is_one() => "X".into(),
                1 => format!("{cs}*X"),
                _ if c.is_one() => format!("X^{k}"),
                _ => format!("{cs}*X^{k}"),
            });
        }
        parts.join(" + ")
    }
}

/// Valuations of the roots of `p` in any valued extension, read off the lower
/// convex hull of `{(i, val(c_i))}`; zero roots appear as `∞`. Sorted ascending.
pub fn newton_root_valuations(p: &PolyX) -> Result<Vec<GammaVal>> {
    let d = p.degree().ok_or(Error::NotMonicAfterNormalization)?;
    let lead = p.leading().unwrap().val();
    let vals: Vec<GammaVal> = p
        .coeffs()
        .iter()
        .map(|c| if c.is_zero() { GammaVal::Inf } else { c.val().sub(&lead) })
        .collect();
    newton_from_vals(&vals, d)
}

/// Root valuations from the coefficient valuations `vals[0..=d]` of a
/// polynomial whose leading coefficient has valuation `vals[d]`.
pub fn newton_from_vals(vals: &[GammaVal], d: usize) -> Result<Vec<GammaVal>> {
    let start = (0..=d).find(|&i| !vals[i].is_inf()).unwrap();
    let mut out: Vec<GammaVal> = Vec::with_capacity(d);
    let mut i = start;
    while i < d {
        let mut best: Option<(GammaVal, usize)> = None;
        for j in i + 1..=d {
            if vals[j].is_inf() {
                continue;
            }
            let slope = vals[j].sub(&vals[i]).scale(&Rat::new(One::one(), ((j - i) as i64).into()));
            best = match best {
                Some((s, _)) if slope < s => Some((slope, j)),
                Some((s, k)) if slope == s => Some((s, j.max(k))),
                Some(b) => Some(b),
                None => Some((slope, j)),
            };
        }
        let (s, j) = best.unwrap();
        let root = s.neg();
        for _ in i..j {
            out.push(root.clone());
        }
        i = j;
    }
    out.sort();
    for _ in 0..start {
        out.push(GammaVal::Inf);
    }
    Ok(out)
}
