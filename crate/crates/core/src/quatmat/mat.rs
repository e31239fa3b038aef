use std::fmt;

use crate::algebra::{EElement, ESpec};
use crate::error::{Error, Result};
use crate::symfield::RatFunc;

/// Square matrix over E, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatE {
    spec: ESpec,
    n: usize,
    entries: Vec<EElement>,
}

impl fmt::Debug for MatE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.get(i, j))).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl MatE {
    pub fn zero(spec: &ESpec, n: usize) -> Self {
        MatE { spec: spec.clone(), n, entries: vec![EElement::zero(spec); n * n] }
    }

    pub fn identity(spec: &ESpec, n: usize) -> Self {
        Self::scalar(spec, n, &RatFunc::one())
    }

    pub fn scalar(spec: &ESpec, n: usize, f: &RatFunc) -> Self {
        let mut m = Self::zero(spec, n);
        for i in 0..n {
            m.entries[i * n + i] = EElement::scalar(spec, f.clone());
        }
        m
    }

    pub fn diag(spec: &ESpec, d: &[RatFunc]) -> Self {
        let n = d.len();
        let mut m = Self::zero(spec, n);
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = EElement::scalar(spec, x.clone());
        }
        m
    }

    pub fn from_fn(spec: &ESpec, n: usize, f: impl Fn(usize, usize) -> EElement) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert_eq!(e.spec(), spec, "entry spec");
                entries.push(e);
            }
        }
        MatE { spec: spec.clone(), n, entries }
    }

    pub fn from_rows(spec: &ESpec, rows: Vec<Vec<EElement>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: r.len() });
            }
            for e in r {
                if e.spec() != spec {
                    return Err(Error::SpecMismatch);
                }
                entries.push(e);
            }
        }
        Ok(MatE { spec: spec.clone(), n, entries })
    }

    /// Matrix with F-valued entries.
    pub fn from_scalars(spec: &ESpec, rows: &[Vec<RatFunc>]) -> Result<Self> {
        Self::from_rows(
            spec,
            rows.iter().map(|r| r.iter().map(|x| EElement::scalar(spec, x.clone())).collect()).collect(),
        )
    }

    /// Single-entry matrix `q·E_ij`.
    pub fn unit(spec: &ESpec, n: usize, i: usize, j: usize, q: EElement) -> Self {
        let mut m = Self::zero(spec, n);
        m.entries[i * n + j] = q;
        m
    }

    pub fn spec(&self) -> &ESpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &EElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: EElement) {
        self.entries[i * self.n + j] = e;
    }

    pub fn entries(&self) -> &[EElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.spec != o.spec {
            return Err(Error::SpecMismatch);
        }
        if self.n != o.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: o.n });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.add(o))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert!(self.check(o).is_ok());
        MatE {
            spec: self.spec.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert!(self.check(o).is_ok());
        MatE {
            spec: self.spec.clone(),
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        MatE { spec: self.spec.clone(), n: self.n, entries: self.entries.iter().map(|a| a.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(self.check(o).is_ok());
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = EElement::zero(&self.spec);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        MatE { spec: self.spec.clone(), n, entries }
    }

    /// Multiplication by a central scalar.
    pub fn scale(&self, f: &RatFunc) -> Self {
        MatE { spec: self.spec.clone(), n: self.n, entries: self.entries.iter().map(|a| a.scale(f)).collect() }
    }

    /// `diag(d)·self`.
    pub fn scale_rows(&self, d: &[RatFunc]) -> Self {
        Self::from_fn(&self.spec, self.n, |i, j| self.get(i, j).scale(&d[i]))
    }

    /// `self·diag(d)`.
    pub fn scale_cols(&self, d: &[RatFunc]) -> Self {
        Self::from_fn(&self.spec, self.n, |i, j| self.get(i, j).scale(&d[j]))
    }

    /// Bar-transpose `āᵗ`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(&self.spec, self.n, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn trace_scalar(&self) -> EElement {
        let mut acc = EElement::zero(&self.spec);
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.spec, self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Gauss–Jordan inverse over the division ring E.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Self::identity(&self.spec, n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.entries.swap(piv * n + j, col * n + j);
                    b.entries.swap(piv * n + j, col * n + j);
                }
            }
            let inv = a.get(col, col).inv().map_err(|_| Error::Singular)?;
            for j in 0..n {
                let x = &inv * a.get(col, j);
                a.set(col, j, x);
                let y = &inv * b.get(col, j);
                b.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &(&f * a.get(col, j));
                    a.set(r, j, x);
                    let y = b.get(r, j) - &(&f * b.get(col, j));
                    b.set(r, j, y);
                }
            }
        }
        Ok(b)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).display_with(names)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}
