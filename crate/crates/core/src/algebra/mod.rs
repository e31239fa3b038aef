//! Coefficient algebras E, the matrix contexts `(M_n(E), ad_h)`, quaternion
//! division algebras with their involutions, and trace forms.

mod element;
mod forms;

pub use element::{EElement, ESpec, QuatParams};
pub use forms::{diag_congruence, same_square_class_form, Congruence, DiagForm};

use crate::error::{Error, Result};
use crate::quatmat::MatE;
use crate::symfield::RatFunc;

/// `(M_n(E), ad_h)` with `h = ⟨e_1,…,e_n⟩`, so `σ(a) = e^{-1} āᵗ e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermContext {
    espec: ESpec,
    e: Vec<RatFunc>,
}

impl HermContext {
    pub fn new(espec: ESpec, e: Vec<RatFunc>) -> Result<Self> {
        if !espec.is_matrix_kind() {
            return Err(Error::WrongKind("matrix contexts use base, complex or (-1,-1) quaternions".into()));
        }
        if e.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if e.iter().any(|x| x.is_zero()) {
            return Err(Error::Singular);
        }
        Ok(HermContext { espec, e })
    }

    pub fn espec(&self) -> &ESpec {
        &self.espec
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn e(&self) -> &[RatFunc] {
        &self.e
    }

    /// `σ(a)_ij = e_j e_i^{-1} ā_ji`.
    pub fn sigma(&self, a: &MatE) -> MatE {
        MatE::from_fn(&self.espec, self.n(), |i, j| a.get(j, i).conj().scale(&(&self.e[j] / &self.e[i])))
    }

    pub fn is_symmetric(&self, a: &MatE) -> bool {
        let n = self.n();
        (0..n).all(|i| (i..n).all(|j| *a.get(i, j) == a.get(j, i).conj().scale(&(&self.e[j] / &self.e[i]))))
    }

    /// Checks that `a` is an `n×n` matrix over this context's E.
    pub fn check(&self, a: &MatE) -> Result<()> {
        if a.spec() != &self.espec {
            return Err(Error::SpecMismatch);
        }
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: a.n() });
        }
        Ok(())
    }

    /// The same involution presented by `−h`.
    pub fn negated(&self) -> Self {
        HermContext { espec: self.espec.clone(), e: self.e.iter().map(|x| -x).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuatInvolution {
    /// Quaternion conjugation γ (symplectic).
    Gamma,
    /// `Int(i)∘γ` (orthogonal).
    IntIGamma,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Matrix(HermContext),
    QuatDiv { a: RatFunc, b: RatFunc, inv: QuatInvolution },
}

impl AlgebraSpec {
    pub fn quat_espec(&self) -> Option<ESpec> {
        match self {
            AlgebraSpec::QuatDiv { a, b, .. } => ESpec::quat(a.clone(), b.clone()).ok(),
            AlgebraSpec::Matrix(_) => None,
        }
    }
}

/// The involution of a quaternion division algebra spec on one element.
pub fn quat_sigma(q: &EElement, inv: QuatInvolution) -> EElement {
    match inv {
        QuatInvolution::Gamma => q.conj(),
        QuatInvolution::IntIGamma => {
            // Conjugation by i fixes 1, i and negates j, k.
            let mut c = q.conj().coords().to_vec();
            c[2] = -&c[2];
            c[3] = -&c[3];
            EElement::new(q.spec(), c).unwrap()
        }
    }
}

/// Gram matrix of `T(x,y) = Trd(σ(x)y)` on the standard F-basis.
pub fn trace_gram(spec: &AlgebraSpec) -> Result<Vec<Vec<RatFunc>>> {
    match spec {
        AlgebraSpec::QuatDiv { a, b, inv } => {
            let e = ESpec::quat(a.clone(), b.clone())?;
            let basis: Vec<EElement> = (0..4).map(|k| EElement::basis(&e, k)).collect();
            Ok(basis
                .iter()
                .map(|s| basis.iter().map(|t| (&quat_sigma(s, *inv) * t).trd()).collect())
                .collect())
        }
        AlgebraSpec::Matrix(ctx) => {
            // σ(q E_ij)·q' E_kl = δ_ik (e_i/e_j) q̄q' E_jl, whose trace vanishes
            // unless (k,l) = (i,j); the Gram matrix is block diagonal by cell.
            let es = ctx.espec();
            let d = es.dim();
            let n = ctx.n();
            let basis: Vec<EElement> = (0..d).map(|k| EElement::basis(es, k)).collect();
            let local: Vec<Vec<RatFunc>> =
                basis.iter().map(|s| basis.iter().map(|t| (&s.conj() * t).trd()).collect()).collect();
            let size = n * n * d;
            let mut g = vec![vec![RatFunc::zero(); size]; size];
            for i in 0..n {
                for j in 0..n {
                    let w = &ctx.e()[i] / &ctx.e()[j];
                    let off = (i * n + j) * d;
                    for s in 0..d {
                        for t in 0..d {
                            if !local[s][t].is_zero() {
                                g[off + s][off + t] = &w * &local[s][t];
                            }
                        }
                    }
                }
            }
            Ok(g)
        }
    }
}

/// A diagonalization of the trace form.
pub fn trace_form(spec: &AlgebraSpec) -> Result<DiagForm> {
    let g = trace_gram(spec)?;
    DiagForm::new(diag_congruence(&g).diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::{enumerate_orderings, parse_element};

    fn f(s: &str) -> RatFunc {
        parse_element(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn form(v: &[&str]) -> DiagForm {
        DiagForm::new(v.iter().map(|s| f(s)).collect()).unwrap()
    }

    #[test]
    fn quaternion_involutions_on_basis() {
        let e = ESpec::quat(f("x"), f("y")).unwrap();
        let b = |k| EElement::basis(&e, k);
        let s = |q: &EElement| quat_sigma(q, QuatInvolution::IntIGamma);
        assert_eq!(s(&b(1)), b(1).neg());
        assert_eq!(s(&b(2)), b(2));
        assert_eq!(s(&b(3)), b(3));
        // Int(i)∘γ computed directly as i·γ(q)·i⁻¹.
        let i_inv = b(1).inv().unwrap();
        let q = EElement::new(&e, vec![f("1+x"), f("y"), f("2"), f("x*y")]).unwrap();
        assert_eq!(s(&q), &(&b(1) * &q.conj()) * &i_inv);
    }

    #[test]
    fn quaternion_trace_forms() {
        let g = AlgebraSpec::QuatDiv { a: f("x"), b: f("y"), inv: QuatInvolution::Gamma };
        let s = AlgebraSpec::QuatDiv { a: f("x"), b: f("y"), inv: QuatInvolution::IntIGamma };
        let h = AlgebraSpec::QuatDiv { a: f("-1"), b: f("-1"), inv: QuatInvolution::Gamma };
        for p in enumerate_orderings(2) {
            let tg = trace_form(&g).unwrap();
            assert!(same_square_class_form(&tg, &form(&["2", "-2*x", "-2*y", "2*x*y"]), &p).unwrap());
            let ts = trace_form(&s).unwrap();
            assert!(same_square_class_form(&ts, &form(&["2", "-2*x", "2*y", "-2*x*y"]), &p).unwrap());
            let th = trace_form(&h).unwrap();
            assert!(same_square_class_form(&th, &form(&["2", "2", "2", "2"]), &p).unwrap());
        }
    }

    #[test]
    fn matrix_trace_form_dimension() {
        let ctx = HermContext::new(ESpec::hamilton(), vec![f("1"), f("x")]).unwrap();
        let t = trace_form(&AlgebraSpec::Matrix(ctx)).unwrap();
        assert_eq!(t.entries().len(), 16);
    }
}
