//! Matrices over E: the complex image χ_M of quaternionic matrices, reduced
//! characteristic polynomials, right eigenvalues, Cayley–Hamilton and exact
//! positive semidefiniteness at an ordering.

mod charpoly;
mod mat;
mod suite;

pub use charpoly::{split_embedding, Quad, QuadMat};
pub use mat::MatE;
pub use suite::{selftest, PSD_VECTORS};

use crate::algebra::{EElement, ESpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::symfield::{roots_in_field, MultiPoly, OrderingSpec, PolyX, Rat, RatFunc};

/// The complex `2n×2n` matrix of a quaternionic one.
pub type ChiMat = MatE;

/// `χ_M = [[M1, M2], [−M̄2, M̄1]]` for `M = M1 + M2·j` over `(−1,−1)_F`.
pub fn chi(m: &MatE) -> Result<ChiMat> {
    if !m.spec().is_hamilton() {
        return Err(Error::WrongKind("chi needs a (-1,-1) quaternion matrix".into()));
    }
    let q = split_embedding(m);
    let c = ESpec::Complex;
    Ok(MatE::from_fn(&c, q.n, |i, j| {
        let z = &q.m[i * q.n + j];
        EElement::new(&c, vec![z.re.clone(), z.im.clone()]).unwrap()
    }))
}

/// Characteristic polynomial of the split image, with coefficients in `F[√d]`.
pub fn split_charpoly(m: &MatE) -> (RatFunc, Vec<Quad>) {
    let q = split_embedding(m);
    let c = q.charpoly();
    (q.d, c)
}

/// Reduced characteristic polynomial: degree n over BASE, 2n over COMPLEX
/// (`c·c̄` for the complex characteristic polynomial `c`) and over quaternions
/// (the characteristic polynomial of χ_M).
pub fn reduced_charpoly(m: &MatE) -> PolyX {
    let Some(c) = monomial_denominator(m) else {
        return reduced_charpoly_direct(m);
    };
    // p_M(X) = c^{−N}·p_{cM}(cX).
    let p = reduced_charpoly_direct(&m.scale(&c));
    let n = p.coeffs().len() - 1;
    let ci = c.inv();
    let coeffs = p.coeffs().iter().enumerate().map(|(k, a)| a * &ci.pow((n - k) as u32)).collect();
    PolyX::new(coeffs)
}

/// `k·x^α` making every entry of `c·M` an integer polynomial, when all
/// denominators are monomials and some clearing is needed.
fn monomial_denominator(m: &MatE) -> Option<RatFunc> {
    let mut alpha: Vec<u32> = Vec::new();
    let mut k = BigInt::one();
    for x in m.entries().iter().flat_map(|e| e.coords()) {
        if !x.den().is_one() {
            if !x.den().is_monomial() {
                return None;
            }
            let (e, _) = x.den().lowest_term().unwrap();
            if alpha.len() < e.len() {
                alpha.resize(e.len(), 0);
            }
            for (a, &b) in alpha.iter_mut().zip(e.iter()) {
                *a = (*a).max(b);
            }
        }
        for (_, c) in x.num().terms() {
            if !c.denom().is_one() {
                k = k.lcm(c.denom());
            }
        }
    }
    if k.is_one() && alpha.iter().all(|&a| a == 0) {
        return None;
    }
    Some(RatFunc::monomial(Rat::from_integer(k), &alpha))
}

/// `(N, c₀)` with `M·N = N·M = c₀·1` and `N` a polynomial in `M`, from the
/// reduced characteristic polynomial; `None` when `M` is singular.
pub fn polynomial_inverse(m: &MatE) -> Option<(MatE, RatFunc)> {
    let p = reduced_charpoly(m);
    let cs = p.coeffs();
    let c0 = cs[0].clone();
    if c0.is_zero() {
        return None;
    }
    let mut q = MatE::zero(m.spec(), m.n());
    for ci in cs[1..].iter().rev() {
        q = q.mul(m).add(&MatE::scalar(m.spec(), m.n(), ci));
    }
    Some((q.neg(), c0))
}

/// Coefficients of the reduced characteristic polynomial in `F[√d]`.
fn reduced_coeffs(m: &MatE) -> Vec<Quad> {
    let (d, c) = split_charpoly(m);
    match m.spec() {
        ESpec::Complex => {
            let cb: Vec<Quad> = c.iter().map(|x| x.conj()).collect();
            let mut out = vec![Quad::zero(); 2 * c.len() - 1];
            for (i, a) in c.iter().enumerate() {
                for (j, b) in cb.iter().enumerate() {
                    out[i + j] = out[i + j].add(&a.mul(b, &d));
                }
            }
            out
        }
        _ => c,
    }
}

/// Whether every coefficient of the reduced characteristic polynomial,
/// computed in the splitting `F[√d]`, lies in F.
pub fn charpoly_in_base_field(m: &MatE) -> bool {
    reduced_coeffs(m).iter().all(|x| x.im.is_zero())
}

fn reduced_charpoly_direct(m: &MatE) -> PolyX {
    let coeffs = reduced_coeffs(m);
    assert!(coeffs.iter().all(|x| x.im.is_zero()), "reduced characteristic polynomial left F");
    PolyX::new(coeffs.into_iter().map(|x| x.re).collect())
}

/// Whether `λ` is a right eigenvalue of `M` (`Mx = xλ` for some `x ≠ 0`).
pub fn is_right_eigenvalue(m: &MatE, lambda: &EElement) -> Result<bool> {
    if lambda.spec() != m.spec() {
        return Err(Error::SpecMismatch);
    }
    match m.spec() {
        ESpec::Base => Ok(reduced_charpoly(m).eval(lambda.coord(0)).is_zero()),
        ESpec::Complex => {
            let (d, c) = split_charpoly(m);
            let l = Quad { re: lambda.coord(0).clone(), im: lambda.coord(1).clone() };
            let mut acc = Quad::zero();
            for k in c.iter().rev() {
                acc = acc.mul(&l, &d).add(k);
            }
            Ok(acc.is_zero())
        }
        ESpec::Quat(_) => {
            // p_M has coefficients in F, so p_M(λ) = 0 iff the minimal
            // polynomial of λ over F divides p_M.
            let p = reduced_charpoly(m);
            let mut acc = EElement::zero(m.spec());
            for k in p.coeffs().iter().rev() {
                acc = &(&acc * lambda) + &EElement::scalar(m.spec(), k.clone());
            }
            Ok(acc.is_zero())
        }
    }
}

/// Evaluates the reduced characteristic polynomial at `M` itself.
pub fn cayley_hamilton_check(m: &MatE) -> bool {
    let p = reduced_charpoly(m);
    let mut acc = MatE::zero(m.spec(), m.n());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).add(&MatE::scalar(m.spec(), m.n(), c));
    }
    acc.is_zero()
}

fn require_hermitian(m: &MatE) -> Result<()> {
    if !m.spec().is_matrix_kind() {
        return Err(Error::WrongKind("hermitian tests need base, complex or (-1,-1) quaternion entries".into()));
    }
    if !m.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    Ok(())
}

/// Whether all roots of a real-rooted polynomial are nonnegative at `P`:
/// the coefficients of `p(−X)` must not change sign.
pub fn real_rooted_nonneg(p: &PolyX, at: &OrderingSpec) -> bool {
    let Some(d) = p.degree() else { return true };
    let lead = p.leading().unwrap().sign_at(at);
    p.coeffs().iter().enumerate().all(|(k, c)| {
        let s = c.sign_at(at) * lead * if (d - k) % 2 == 0 { 1 } else { -1 };
        s >= 0
    })
}

/// Positive semidefiniteness of a hermitian matrix at the ordering `P`.
pub fn psd_at(m: &MatE, at: &OrderingSpec) -> Result<bool> {
    require_hermitian(m)?;
    Ok(real_rooted_nonneg(&reduced_charpoly_direct(&positive_polynomial_multiple(m, at)), at))
}

/// `c·M` with integer polynomial entries for some `c > 0` at `P`; the roots
/// of the characteristic polynomial scale by `c`, so their signs are
/// unchanged, and the Faddeev–LeVerrier recurrence stays integral.
fn positive_polynomial_multiple(m: &MatE, at: &OrderingSpec) -> MatE {
    let mut dens: Vec<&MultiPoly> = Vec::new();
    for x in m.entries().iter().flat_map(|e| e.coords()) {
        if !x.den().is_one() && !dens.contains(&x.den()) {
            dens.push(x.den());
        }
    }
    let m = if dens.is_empty() {
        m.clone()
    } else {
        let l = RatFunc::from_poly(dens.iter().fold(MultiPoly::one(), |acc, d| acc.mul(d)));
        let c = if l.sign_at(at) > 0 { l } else { -l };
        m.scale(&c)
    };
    let mut k = BigInt::one();
    for x in m.entries().iter().flat_map(|e| e.coords()) {
        for (_, c) in x.num().terms() {
            if !c.denom().is_one() {
                k = k.lcm(c.denom());
            }
        }
    }
    if k.is_one() {
        m
    } else {
        m.scale(&RatFunc::from_rat(Rat::from_integer(k)))
    }
}

/// Eigenvalues of a hermitian matrix lying in F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FEigenvalues {
    /// Distinct roots with multiplicity at the matrix size scale.
    pub roots: Vec<(RatFunc, usize)>,
    pub splits: bool,
}

pub fn f_eigenvalues(m: &MatE) -> Result<FEigenvalues> {
    require_hermitian(m)?;
    let p = reduced_charpoly(m);
    let deg = p.degree().unwrap();
    let factor = if matches!(m.spec(), ESpec::Base) { 1 } else { 2 };
    let raw = roots_in_field(&p)?;
    let total: usize = raw.iter().map(|(_, k)| k).sum();
    let roots = raw
        .into_iter()
        .map(|(f, k)| {
            debug_assert_eq!(k % factor, 0);
            (f, k / factor)
        })
        .collect();
    Ok(FEigenvalues { roots, splits: total == deg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfield::{enumerate_orderings, parse_element};

    fn f(s: &str) -> RatFunc {
        parse_element(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn h() -> ESpec {
        ESpec::hamilton()
    }

    fn q(c: [&str; 4]) -> EElement {
        EElement::new(&h(), c.iter().map(|s| f(s)).collect()).unwrap()
    }

    #[test]
    fn chi_of_single_quaternion() {
        let m =MatE::from_rows(&h(), vec![vec![q(["1", "2", "3", "4"])]]).unwrap();
        let c = chi(&m).unwrap();
        let z = |a: &str, b: &str| EElement::new(&ESpec::Complex, vec![f(a), f(b)]).unwrap();
        assert_eq!(*c.get(0, 0), z("1", "2"));
        assert_eq!(*c.get(0, 1), z("3", "4"));
        assert_eq!(*c.get(1, 0), z("-3", "4"));
        assert_eq!(*c.get(1, 1), z("1", "-2"));
        assert!(chi(&MatE::identity(&h(), 3)).unwrap().is_identity());
        assert!(chi(&MatE::identity(&ESpec::Base, 2)).is_err());
    }

    #[test]
    fn reduced_charpoly_examples() {
        let m = MatE::from_rows(&h(), vec![vec![q(["x", "1", "2", "y"])]]).unwrap();
        let p = reduced_charpoly(&m);
        assert_eq!(p.coeffs(), &[f("x^2 + 5 + y^2"), f("-2*x"), f("1")]);
        let j = MatE::from_rows(&h(), vec![vec![q(["0", "0", "1", "0"])]]).unwrap();
        assert_eq!(reduced_charpoly(&j).coeffs(), &[f("1"), f("0"), f("1")]);
        let d = MatE::diag(&ESpec::Base, &[f("1"), f("2")]);
        assert_eq!(reduced_charpoly(&d).coeffs(), &[f("2"), f("-3"), f("1")]);
    }

    #[test]
    fn right_eigenvalues() {
        let j = MatE::from_rows(&h(), vec![vec![q(["0", "0", "1", "0"])]]).unwrap();
        assert!(is_right_eigenvalue(&j, &q(["0", "1", "0", "0"])).unwrap());
        // j(1+k) = (1+k)i
        let x = q(["1", "0", "0", "1"]);
        assert_eq!(&q(["0", "0", "1", "0"]) * &x, &x * &q(["0", "1", "0", "0"]));
        assert!(!is_right_eigenvalue(&j, &EElement::one(&h())).unwrap());
        let d = MatE::diag(&ESpec::Base, &[f("1"), f("2")]);
        assert!(is_right_eigenvalue(&d, &EElement::scalar(&ESpec::Base, f("2"))).unwrap());
        assert_eq!(is_right_eigenvalue(&d, &EElement::one(&h())), Err(Error::SpecMismatch));
    }

    #[test]
    fn cayley_hamilton_examples() {
        let j = MatE::from_rows(&h(), vec![vec![q(["0", "0", "1", "0"])]]).unwrap();
        assert!(cayley_hamilton_check(&j));
        assert!(cayley_hamilton_check(&MatE::diag(&ESpec::Base, &[f("1"), f("2")])));
    }

    fn one_j() -> MatE {
        MatE::from_rows(
            &h(),
            vec![vec![q(["1", "0", "0", "0"]), q(["0", "0", "1", "0"])], vec![q(["0", "0", "-1", "0"]), q(["1", "0", "0", "0"])]],
        )
        .unwrap()
    }

    #[test]
    fn psd_examples() {
        for p in enumerate_orderings(2) {
            assert!(psd_at(&MatE::identity(&h(), 3), &p).unwrap());
            assert!(psd_at(&one_j(), &p).unwrap());
        }
        let p = OrderingSpec::new(vec![-1, 1]);
        assert!(!psd_at(&MatE::diag(&ESpec::Base, &[f("x"), f("1")]), &p).unwrap());
        let nh = MatE::from_scalars(&ESpec::Base, &[vec![f("1"), f("1")], vec![f("0"), f("1")]]).unwrap();
        assert_eq!(psd_at(&nh, &p), Err(Error::NotHermitian));
    }

    #[test]
    fn eigenvalue_examples() {
        let d = f_eigenvalues(&MatE::diag(&ESpec::Base, &[f("1"), f("2")])).unwrap();
        assert_eq!(d, FEigenvalues { roots: vec![(f("1"), 1), (f("2"), 1)], splits: true });
        let e = f_eigenvalues(&one_j()).unwrap();
        assert_eq!(e, FEigenvalues { roots: vec![(f("0"), 1), (f("2"), 1)], splits: true });
        let m = MatE::from_scalars(&ESpec::Base, &[vec![f("0"), f("1")], vec![f("1"), f("x")]]).unwrap();
        let r = f_eigenvalues(&m).unwrap();
        assert!(r.roots.is_empty() && !r.splits);
    }
}
