use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Rat;

/// Element of ℚ^r ∪ {∞} under lex order, coordinate 1 most significant.
///
/// Finite values keep trailing zero coordinates trimmed so that values do
/// not depend on how many variables a context declares.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GammaVal {
    Finite(Vec<Rat>),
    Inf,
}

fn trimmed(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl GammaVal {
    pub fn zero() -> Self {
        GammaVal::Finite(Vec::new())
    }

    pub fn new(coords: Vec<Rat>) -> Self {
        GammaVal::Finite(trimmed(coords))
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self::new(it.into_iter().map(|k| Rat::from_integer(k.into())).collect())
    }

    /// Parses coordinates given as `(numerator, denominator)` pairs.
    pub fn from_fracs(c: &[(i64, i64)]) -> Self {
        Self::new(c.iter().map(|&(n, d)| Rat::new(n.into(), d.into())).collect())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, GammaVal::Inf)
    }

    pub fn coord(&self, i: usize) -> Rat {
        match self {
            GammaVal::Finite(v) => v.get(i).cloned().unwrap_or_else(Rat::zero),
            GammaVal::Inf => panic!("coordinate of infinite value"),
        }
    }

    /// Coordinates padded to length `r`; `None` for ∞.
    pub fn coords(&self, r: usize) -> Option<Vec<Rat>> {
        match self {
            GammaVal::Finite(v) => Some((0..r.max(v.len())).map(|i| self.coord(i)).collect()),
            GammaVal::Inf => None,
        }
    }

    fn len(&self) -> usize {
        match self {
            GammaVal::Finite(v) => v.len(),
            GammaVal::Inf => 0,
        }
    }

    fn sign(&self) -> Ordering {
        match self {
            GammaVal::Inf => Ordering::Greater,
            GammaVal::Finite(v) => match v.first() {
                None => Ordering::Equal,
                Some(c) => {
                    let c = v.iter().find(|c| !c.is_zero()).unwrap_or(c);
                    if c.is_positive() {
                        Ordering::Greater
                    } else if c.is_negative() {
                        Ordering::Less
                    } else {
                        Ordering::Equal
                    }
                }
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GammaVal::Finite(v) if v.is_empty())
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_nonneg(&self) -> bool {
        self.sign() != Ordering::Less
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let n = self.len().max(o.len());
        GammaVal::new((0..n).map(|i| f(&self.coord(i), &o.coord(i))).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_inf() || o.is_inf() {
            return GammaVal::Inf;
        }
        self.zip_with(o, |a, b| a + b)
    }

    /// Difference; `∞ − finite = ∞`, subtracting ∞ panics.
    pub fn sub(&self, o: &Self) -> Self {
        assert!(!o.is_inf(), "subtracting an infinite value");
        if self.is_inf() {
            return GammaVal::Inf;
        }
        self.zip_with(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        GammaVal::zero().sub(self)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        match self {
            GammaVal::Inf => GammaVal::Inf,
            GammaVal::Finite(v) => GammaVal::new(v.iter().map(|c| c * k).collect()),
        }
    }

    pub fn half(&self) -> Self {
        self.scale(&Rat::new(1.into(), 2.into()))
    }

    pub fn is_integral(&self) -> bool {
        match self {
            GammaVal::Inf => false,
            GammaVal::Finite(v) => v.iter().all(|c| c.is_integer()),
        }
    }

    /// Class of an integral value in Γ_v/2Γ_v as a bit vector (trimmed).
    pub fn parity(&self) -> Vec<u8> {
        assert!(self.is_integral(), "parity of a non-integral value");
        let mut bits: Vec<u8> = (0..self.len())
            .map(|i| {
                let c = self.coord(i);
                if c.numer().is_odd_int() {
                    1
                } else {
                    0
                }
            })
            .collect();
        while bits.last() == Some(&0) {
            bits.pop();
        }
        bits
    }

    /// Canonical representative modulo Γ_v = ℤ^r: coordinates in [0,1).
    pub fn reduce_mod_integers(&self) -> Self {
        match self {
            GammaVal::Inf => GammaVal::Inf,
            GammaVal::Finite(v) => GammaVal::new(
                v.iter()
                    .map(|c| {
                        let f = c - c.floor();
                        if f.is_negative() {
                            f + Rat::one()
                        } else {
                            f
                        }
                    })
                    .collect(),
            ),
        }
    }

    pub fn min<'a>(&'a self, o: &'a Self) -> &'a Self {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn display_r(&self, r: usize) -> String {
        match self.coords(r) {
            None => "inf".to_string(),
            Some(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for num_bigint::BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

impl PartialOrd for GammaVal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for GammaVal {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (GammaVal::Inf, GammaVal::Inf) => Ordering::Equal,
            (GammaVal::Inf, _) => Ordering::Greater,
            (_, GammaVal::Inf) => Ordering::Less,
            _ => {
                let n = self.len().max(o.len());
                for i in 0..n {
                    match self.coord(i).cmp(&o.coord(i)) {
                        Ordering::Equal => continue,
                        c => return c,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Debug for GammaVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_r(0))
    }
}

impl fmt::Display for GammaVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_r(0))
    }
}
