use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::symfield::{GammaVal, RatFunc};

/// Parameters of a quaternion algebra `(a,b)_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatParams {
    pub a: RatFunc,
    pub b: RatFunc,
    /// Coefficients `1, −a, −b, ab` of the reduced norm.
    norm_coeffs: [RatFunc; 4],
    /// Whether leading terms of the norm can never cancel, so that
    /// `½·val(Nrd)` is computable termwise.
    norm_valuable: bool,
}

/// The coefficient algebra E.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ESpec {
    Base,
    Complex,
    Quat(Arc<QuatParams>),
}

impl ESpec {
    pub fn quat(a: RatFunc, b: RatFunc) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::WrongKind("quaternion parameters must be nonzero".into()));
        }
        let ab = &a * &b;
        let norm_coeffs = [RatFunc::one(), -&a, -&b, ab];
        let norm_valuable = norm_classes_coherent(&norm_coeffs);
        Ok(ESpec::Quat(Arc::new(QuatParams { a, b, norm_coeffs, norm_valuable })))
    }

    /// Hamilton quaternions `(−1,−1)_F`.
    pub fn hamilton() -> Self {
        Self::quat(RatFunc::from_int(-1), RatFunc::from_int(-1)).unwrap()
    }

    pub fn dim(&self) -> usize {
        match self {
            ESpec::Base => 1,
            ESpec::Complex => 2,
            ESpec::Quat(_) => 4,
        }
    }

    pub fn quat_params(&self) -> Option<&QuatParams> {
        match self {
            ESpec::Quat(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_hamilton(&self) -> bool {
        matches!(self, ESpec::Quat(p) if p.a == RatFunc::from_int(-1) && p.b == RatFunc::from_int(-1))
    }

    /// BASE, COMPLEX or Hamilton quaternions: the kinds that carry matrix
    /// contexts and positive semidefinite tests.
    pub fn is_matrix_kind(&self) -> bool {
        !matches!(self, ESpec::Quat(_)) || self.is_hamilton()
    }

    pub fn name(&self) -> String {
        match self {
            ESpec::Base => "base".into(),
            ESpec::Complex => "complex".into(),
            ESpec::Quat(_) if self.is_hamilton() => "quaternion".into(),
            ESpec::Quat(p) => format!("quaternion({:?},{:?})", p.a, p.b),
        }
    }

    /// Coefficients `c_k` with `n_E(x) = Σ c_k x_k²`.
    pub fn norm_coeffs(&self) -> Vec<RatFunc> {
        match self {
            ESpec::Base => vec![RatFunc::one()],
            ESpec::Complex => vec![RatFunc::one(), RatFunc::one()],
            ESpec::Quat(p) => p.norm_coeffs.to_vec(),
        }
    }
}

/// Norm terms whose coefficients share a valuation class mod 2Γ_v can have
/// equal valuations; they cannot cancel when their leading units share a sign.
fn norm_classes_coherent(coeffs: &[RatFunc]) -> bool {
    let keyed: Vec<(Vec<u8>, bool)> = coeffs
        .iter()
        .map(|c| (c.val().parity(), c.leading_unit().unwrap().is_positive()))
        .collect();
    keyed.iter().all(|(k, s)| keyed.iter().all(|(k2, s2)| k != k2 || s == s2))
}

/// Element of E in the basis `1 | 1,√−1 | 1,i,j,k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EElement {
    spec: ESpec,
    c: Vec<RatFunc>,
}

impl fmt::Debug for EElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl EElement {
    pub fn new(spec: &ESpec, coords: Vec<RatFunc>) -> Result<Self> {
        if coords.len() != spec.dim() {
            return Err(Error::LengthMismatch(spec.dim(), coords.len()));
        }
        Ok(EElement { spec: spec.clone(), c: coords })
    }

    pub fn zero(spec: &ESpec) -> Self {
        EElement { spec: spec.clone(), c: vec![RatFunc::zero(); spec.dim()] }
    }

    pub fn one(spec: &ESpec) -> Self {
        Self::scalar(spec, RatFunc::one())
    }

    pub fn scalar(spec: &ESpec, f: RatFunc) -> Self {
        let mut c = vec![RatFunc::zero(); spec.dim()];
        c[0] = f;
        EElement { spec: spec.clone(), c }
    }

    /// Basis element `k` (0 = 1).
    pub fn basis(spec: &ESpec, k: usize) -> Self {
        let mut c = vec![RatFunc::zero(); spec.dim()];
        c[k] = RatFunc::one();
        EElement { spec: spec.clone(), c }
    }

    pub fn spec(&self) -> &ESpec {
        &self.spec
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn coord(&self, k: usize) -> &RatFunc {
        &self.c[k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Whether the element lies in F (all imaginary coordinates vanish).
    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.spec == o.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn e_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn e_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        EElement { spec: self.spec.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    fn sub_unchecked(&self, o: &Self) -> Self {
        EElement { spec: self.spec.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let p = &self.c;
        let q = &o.c;
        let c = match &self.spec {
            ESpec::Base => vec![&p[0] * &q[0]],
            ESpec::Complex => {
                if self.is_scalar() {
                    return o.scale(&p[0]);
                }
                if o.is_scalar() {
                    return self.scale(&q[0]);
                }
                vec![&(&p[0] * &q[0]) - &(&p[1] * &q[1]), &(&p[0] * &q[1]) + &(&p[1] * &q[0])]
            }
            ESpec::Quat(par) => {
                if self.is_scalar() {
                    return o.scale(&p[0]);
                }
                if o.is_scalar() {
                    return self.scale(&q[0]);
                }
                let (a, b) = (&par.a, &par.b);
                let m = |x: usize, y: usize| &p[x] * &q[y];
                let ab = &par.norm_coeffs[3];
                let c0 = &(&(&m(0, 0) + &(a * &m(1, 1))) + &(b * &m(2, 2))) - &(ab * &m(3, 3));
                let c1 = &(&m(0, 1) + &m(1, 0)) + &(b * &(&m(3, 2) - &m(2, 3)));
                let c2 = &(&m(0, 2) + &m(2, 0)) + &(a * &(&m(1, 3) - &m(3, 1)));
                let c3 = &(&(&m(0, 3) + &m(3, 0)) + &m(1, 2)) - &m(2, 1);
                vec![c0, c1, c2, c3]
            }
        };
        EElement { spec: self.spec.clone(), c }
    }

    pub fn neg(&self) -> Self {
        EElement { spec: self.spec.clone(), c: self.c.iter().map(|x| -x).collect() }
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, f: &RatFunc) -> Self {
        EElement { spec: self.spec.clone(), c: self.c.iter().map(|x| x * f).collect() }
    }

    /// Canonical conjugation: identity, complex conjugation or quaternion
    /// conjugation.
    pub fn conj(&self) -> Self {
        let mut c = self.c.clone();
        for x in c.iter_mut().skip(1) {
            *x = -&*x;
        }
        EElement { spec: self.spec.clone(), c }
    }

    /// `n_E(x) = x̄x`.
    pub fn norm(&self) -> RatFunc {
        match &self.spec {
            ESpec::Base => &self.c[0] * &self.c[0],
            _ => {
                let coeffs = self.spec.norm_coeffs();
                let mut acc = RatFunc::zero();
                for (x, k) in self.c.iter().zip(&coeffs) {
                    if !x.is_zero() {
                        acc = &acc + &(k * &(x * x));
                    }
                }
                acc
            }
        }
    }

    /// `2·x_0`: the reduced trace for quaternions, the trace of F(√−1)/F for
    /// complex elements.
    pub fn trd(&self) -> RatFunc {
        match &self.spec {
            ESpec::Base => self.c[0].clone(),
            _ => &self.c[0] + &self.c[0],
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.conj().scale(&n.inv()))
    }

    /// Extension `v_E = ½·v∘n_E` of the valuation to E.
    pub fn v_e(&self) -> Result<GammaVal> {
        match &self.spec {
            ESpec::Base => Ok(self.c[0].val()),
            ESpec::Complex => Ok(self.c.iter().map(|x| x.val()).min().unwrap()),
            ESpec::Quat(p) => {
                if !p.norm_valuable {
                    return Err(Error::IndeterminateNorm);
                }
                Ok(self
                    .c
                    .iter()
                    .zip(&p.norm_coeffs)
                    .map(|(x, k)| if x.is_zero() { GammaVal::Inf } else { x.val().add(&k.val().half()) })
                    .min()
                    .unwrap())
            }
        }
    }

    /// Coordinatewise residue, for elements with nonnegative coordinate
    /// valuations.
    pub fn residue(&self) -> Result<Vec<crate::symfield::Rat>> {
        self.c.iter().map(|x| x.residue()).collect()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        const UNITS: [[&str; 4]; 3] = [["", "", "", ""], ["", "I", "", ""], ["", "i", "j", "k"]];
        let row = match self.spec {
            ESpec::Base => 0,
            ESpec::Complex => 1,
            ESpec::Quat(_) => 2,
        };
        let mut parts = Vec::new();
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let s = x.display_with(names);
            if k == 0 {
                parts.push(s);
            } else if x.is_one() {
                parts.push(UNITS[row][k].to_string());
            } else {
                parts.push(format!("({s})*{}", UNITS[row][k]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<'a> Add<&'a EElement> for &'a EElement {
    type Output = EElement;
    fn add(self, o: &EElement) -> EElement {
        debug_assert_eq!(self.spec, o.spec);
        self.add_unchecked(o)
    }
}

impl<'a> Sub<&'a EElement> for &'a EElement {
    type Output = EElement;
    fn sub(self, o: &EElement) -> EElement {
        debug_assert_eq!(self.spec, o.spec);
        self.sub_unchecked(o)
    }
}

impl<'a> Mul<&'a EElement> for &'a EElement {
    type Output = EElement;
    fn mul(self, o: &EElement) -> EElement {
        debug_assert_eq!(self.spec, o.spec);
        self.mul_unchecked(o)
    }
}

impl Neg for &EElement {
    type Output = EElement;
    fn neg(self) -> EElement {
        EElement::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::parse_element;

    fn f(s: &str) -> RatFunc {
        parse_element(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn q(spec: &ESpec, c: [&str; 4]) -> EElement {
        EElement::new(spec, c.iter().map(|s| f(s)).collect()).unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let h = ESpec::hamilton();
        let i = EElement::basis(&h, 1);
        let j = EElement::basis(&h, 2);
        let k = EElement::basis(&h, 3);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, k.neg());
        assert_eq!(q(&h, ["1", "1", "1", "1"]).norm(), RatFunc::from_int(4));
    }

    #[test]
    fn general_quaternion_relations() {
        let s = ESpec::quat(f("x"), f("y")).unwrap();
        let i = EElement::basis(&s, 1);
        let j = EElement::basis(&s, 2);
        assert_eq!(&i * &i, EElement::scalar(&s, f("x")));
        assert_eq!(&j * &j, EElement::scalar(&s, f("y")));
        assert_eq!(i.norm(), f("-x"));
        let k = &i * &j;
        assert_eq!(&k * &k, EElement::scalar(&s, f("-x*y")));
    }

    #[test]
    fn valuation_examples() {
        let c = EElement::new(&ESpec::Complex, vec![f("x"), f("x")]).unwrap();
        assert_eq!(c.v_e().unwrap(), GammaVal::from_ints([1]));
        let h = ESpec::hamilton();
        assert_eq!(q(&h, ["1", "1", "0", "0"]).v_e().unwrap(), GammaVal::zero());
        let s = ESpec::quat(f("x"), f("y")).unwrap();
        assert_eq!(EElement::basis(&s, 1).v_e().unwrap(), GammaVal::from_fracs(&[(1, 2), (0, 1)]));
        assert_eq!(EElement::basis(&s, 2).v_e().unwrap(), GammaVal::from_fracs(&[(0, 1), (1, 2)]));
        assert_eq!(q(&s, ["1", "1", "0", "0"]).v_e().unwrap(), GammaVal::zero());
    }

    #[test]
    fn split_parameters_are_indeterminate() {
        let s = ESpec::quat(f("1"), f("y")).unwrap();
        assert_eq!(EElement::basis(&s, 1).v_e(), Err(Error::IndeterminateNorm));
    }

    #[test]
    fn mismatched_specs() {
        let a = EElement::one(&ESpec::Base);
        let b = EElement::one(&ESpec::Complex);
        assert_eq!(a.e_mul(&b), Err(Error::SpecMismatch));
    }
}
