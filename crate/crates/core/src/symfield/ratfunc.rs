use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::gamma::GammaVal;
use super::ordering::OrderingSpec;
use super::poly::{exp_get, gcd, Exponents, MultiPoly};
use super::Rat;
use crate::error::{Error, Result};

/// Element of ℚ(x_1,…,x_r) in canonical form: `num/den` coprime with the
/// lex-leading coefficient of `den` equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_rat(c: Rat) -> Self {
        RatFunc { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(MultiPoly::var(i))
    }

    pub fn monomial(c: Rat, e: &[u32]) -> Self {
        Self::from_poly(MultiPoly::monomial(c, e))
    }

    /// `c · x^γ` for an integral, possibly negative, exponent vector.
    pub fn laurent_monomial(c: Rat, e: &[i64]) -> Self {
        let pos: Vec<u32> = e.iter().map(|&k| k.max(0) as u32).collect();
        let neg: Vec<u32> = e.iter().map(|&k| (-k).max(0) as u32).collect();
        RatFunc::from_poly(MultiPoly::monomial(c, &pos))
            .div(&RatFunc::from_poly(MultiPoly::monomial(Rat::one(), &neg)))
    }

    /// Builds a canonical quotient; panics if `den` is zero.
    pub fn from_parts(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Self::normalize_lead(n, d)
    }

    fn normalize_lead(n: MultiPoly, d: MultiPoly) -> Self {
        let lc = d.leading_term().unwrap().1.clone();
        if lc.is_one() {
            RatFunc { num: n, den: d }
        } else {
            let inv = lc.recip();
            RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value when the element is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::normalize_lead(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        RatFunc { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Lex monomial valuation.
    pub fn val(&self) -> GammaVal {
        if self.is_zero() {
            return GammaVal::Inf;
        }
        let a = self.num.lowest_term().unwrap().0;
        let b = self.den.lowest_term().unwrap().0;
        let n = a.len().max(b.len());
        GammaVal::from_ints((0..n).map(|i| exp_get(a, i) as i64 - exp_get(b, i) as i64))
    }

    /// Coefficient and exponent of the valuation-leading monomial of the
    /// expansion: `f = c · x^α · (1 + positive-valuation terms)`.
    pub fn leading_unit(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        let (_, c) = self.num.lowest_term().unwrap();
        let (_, d) = self.den.lowest_term().unwrap();
        Some(c / d)
    }

    /// Sign of `f` under the ordering given by `P`.
    pub fn sign_at(&self, p: &OrderingSpec) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let (a, c) = self.num.lowest_term().unwrap();
        let (b, d) = self.den.lowest_term().unwrap();
        let mut s: i8 = if c.is_negative() != d.is_negative() { -1 } else { 1 };
        for exps in [a, b] {
            for (i, &k) in exps.iter().enumerate() {
                if k % 2 == 1 {
                    s *= p.eta_at(i);
                }
            }
        }
        s
    }

    /// Residue in ℚ; requires `val(f) ≥ 0`.
    pub fn residue(&self) -> Result<Rat> {
        let v = self.val();
        if v.is_inf() {
            return Ok(Rat::zero());
        }
        if v.is_negative() {
            return Err(Error::NegativeValuation);
        }
        if v.is_zero() {
            Ok(self.leading_unit().unwrap())
        } else {
            Ok(Rat::zero())
        }
    }

    /// Multiplies by `x^e` with `e` a nonnegative integral exponent vector.
    pub fn mul_monomial(&self, e: &Exponents) -> Self {
        Self::from_parts(self.num.mul_term(e, &Rat::one()), self.den.clone())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.display_with(names);
        }
        let n = self.num.display_with(names);
        let d = self.den.display_with(names);
        let n = if self.num.num_terms() > 1 || self.num.lowest_term().is_some_and(|(_, c)| c.is_negative()) {
            format!("({n})")
        } else {
            n
        };
        format!("{n}/({d})")
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFunc { num: n, den: self.den.clone() };
            }
            return RatFunc::from_parts(n, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let d = self.den.mul(&o.den);
            if n.is_zero() {
                return RatFunc::zero();
            }
            // Coprime denominators: the sum is already reduced.
            return RatFunc::normalize_lead(n, d);
        }
        let a = self.den.exact_div(&g).unwrap();
        let b = o.den.exact_div(&g).unwrap();
        let n = self.num.mul(&b).add(&o.num.mul(&a));
        if n.is_zero() {
            return RatFunc::zero();
        }
        let d = self.den.mul(&b);
        let g2 = gcd(&n, &g);
        if g2.is_one() {
            RatFunc::normalize_lead(n, d)
        } else {
            RatFunc::normalize_lead(n.exact_div(&g2).unwrap(), d.exact_div(&g2).unwrap())
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: MultiPoly::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let div = |p: &MultiPoly, g: &MultiPoly| if g.is_one() { p.clone() } else { p.exact_div(g).unwrap() };
        let n = div(&self.num, &g1).mul(&div(&o.num, &g2));
        let d = div(&self.den, &g2).mul(&div(&o.den, &g1));
        RatFunc::normalize_lead(n, d)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc { (&self).$m(o) }
        }
        impl<'a> $tr<RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}
