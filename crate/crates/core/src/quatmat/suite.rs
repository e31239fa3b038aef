use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    cayley_hamilton_check, charpoly_in_base_field, f_eigenvalues, is_right_eigenvalue, psd_at,
    reduced_charpoly, MatE,
};
use crate::algebra::{EElement, ESpec};
use crate::sampling::{outcome, run_condition, ConditionTally, Sampler};
use crate::symfield::{OrderingSpec, Rat, RatFunc};

/// Vectors tried per matrix in the PSD sampling check.
pub const PSD_VECTORS: usize = 500;

/// Entry density falls with the size so that `n = 4` stays cheap.
fn random_matrix(s: &mut Sampler<ChaCha8Rng>, spec: &ESpec, n: usize) -> MatE {
    let density = [0.9, 0.7, 0.5, 0.35][n.clamp(1, 4) - 1];
    loop {
        let m = s.matrix(spec, n, density);
        if !m.is_zero() {
            return m;
        }
    }
}

/// Hermitian matrices are taken over F, `F(√−1)` or `(−1,−1)_F`, where
/// `x̄x` is a sum of squares.
fn hermitian_entries(spec: &ESpec) -> bool {
    match spec {
        ESpec::Base | ESpec::Complex => true,
        ESpec::Quat(q) => q.a == RatFunc::from_int(-1) && q.b == RatFunc::from_int(-1),
    }
}

/// `x̄ᵗ M x` as an element of F.
fn quadratic_value(m: &MatE, x: &[EElement]) -> RatFunc {
    let mut acc = EElement::zero(m.spec());
    for (i, xi) in x.iter().enumerate() {
        let ci = xi.conj();
        for (j, xj) in x.iter().enumerate() {
            acc = &acc + &(&(&ci * m.get(i, j)) * xj);
        }
    }
    acc.coord(0).clone()
}

fn random_vector(s: &mut Sampler<ChaCha8Rng>, spec: &ESpec, n: usize) -> Vec<EElement> {
    let poly = s.coin(0.25);
    (0..n).map(|_| if poly { s.element(spec) } else { s.constant_element(spec) }).collect()
}

/// Unitary matrix with small entries: a permutation with basis units
/// `±1, ±i, ±j, ±k` on its support (only `±1` when those are not unitary), then rational Givens rotations built
/// from Pythagorean triples.
fn small_unitary(s: &mut Sampler<ChaCha8Rng>, spec: &ESpec, n: usize) -> MatE {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, s.rng.gen_range(0..=i));
    }
    let mut u = MatE::zero(spec, n);
    for (i, &j) in perm.iter().enumerate() {
        let k = if hermitian_entries(spec) { s.rng.gen_range(0..spec.dim()) } else { 0 };
        let b = EElement::basis(spec, k);
        u.set(i, j, if s.coin(0.5) { -&b } else { b });
    }
    for _ in 0..if n > 1 { s.rng.gen_range(1..=2) } else { 0 } {
        let i = s.rng.gen_range(0..n);
        let j = (i + s.rng.gen_range(1..n)) % n;
        let (a, b, h) = [(3, 4, 5), (5, 12, 13), (8, 15, 17)][s.rng.gen_range(0..3)];
        let q = |k: i64| EElement::scalar(spec, RatFunc::from_rat(Rat::new(k.into(), h.into())));
        let mut g = MatE::identity(spec, n);
        g.set(i, i, q(a));
        g.set(j, j, q(a));
        g.set(i, j, q(-b));
        g.set(j, i, q(b));
        u = g.mul(&u);
    }
    u
}

/// Hermitian matrix: `Y + Ȳᵗ`, `Ȳᵗ·Y` (PSD by construction) or
/// `U·D·Ūᵗ` with `U` unitary, whose eigenvalues are the entries of D.
fn hermitian(s: &mut Sampler<ChaCha8Rng>, spec: &ESpec, n: usize) -> (MatE, &'static str) {
    match s.rng.gen_range(0..3) {
        0 => {
            let y = random_matrix(s, spec, n);
            (y.add(&y.conj_transpose()), "sum")
        }
        1 => {
            let y = random_matrix(s, spec, n);
            (y.conj_transpose().mul(&y), "gram")
        }
        _ => {
            let d: Vec<RatFunc> = (0..n).map(|_| if s.coin(0.2) { RatFunc::zero() } else { s.poly() }).collect();
            let u = small_unitary(s, spec, n);
            (u.mul(&MatE::diag(spec, &d)).mul(&u.conj_transpose()), "unitary")
        }
    }
}

/// Randomized checks of the quaternionic linear algebra over `spec`:
/// Cayley–Hamilton for `n ≤ 4`, `p_MN = p_NM`, reality of `p_M`, the PSD
/// criterion against vector sampling and eigenvalue agreement, and
/// conjugation closure of right eigenvalues.
pub fn selftest(spec: &ESpec, p: &OrderingSpec, count: usize, seed: u64) -> Vec<ConditionTally> {
    let r = p.r();
    let mut out = Vec::new();

    out.push(run_condition(
        "cayley_hamilton",
        seed,
        70,
        count,
        |s| {
            let n = s.rng.gen_range(1..=4);
            let m = random_matrix(s, spec, n);
            outcome(cayley_hamilton_check(&m), || format!("p_M(M) ≠ 0: M={m:?}"))
        },
        r,
    ));

    out.push(run_condition(
        "charpoly_commutes",
        seed,
        71,
        count,
        |s| {
            let n = s.rng.gen_range(1..=3);
            let a = random_matrix(s, spec, n);
            let b = random_matrix(s, spec, n);
            let ok = reduced_charpoly(&a.mul(&b)) == reduced_charpoly(&b.mul(&a));
            outcome(ok, || format!("p_MN ≠ p_NM: M={a:?} N={b:?}"))
        },
        r,
    ));

    out.push(run_condition(
        "charpoly_in_f",
        seed,
        72,
        count,
        |s| {
            let n = s.rng.gen_range(1..=4);
            let m = random_matrix(s, spec, n);
            outcome(charpoly_in_base_field(&m), || format!("p_M has a coefficient outside F: M={m:?}"))
        },
        r,
    ));

    let positive = hermitian_entries(spec);
    out.push(run_condition(
        "psd_vs_sampling",
        seed,
        73,
        count,
        |s| {
            if !positive {
                return Ok(None);
            }
            let n = s.rng.gen_range(1..=3);
            let (m, kind) = hermitian(s, spec, n);
            let psd = psd_at(&m, p)?;
            if kind == "gram" && !psd {
                return outcome(false, || format!("Ȳᵗ·Y not PSD: M={m:?}"));
            }
            let ev = f_eigenvalues(&m)?;
            if ev.splits && psd != ev.roots.iter().all(|(l, _)| l.sign_at(p) >= 0) {
                return outcome(false, || format!("psd={psd} disagrees with eigenvalues {:?}: M={m:?}", ev.roots));
            }
            if kind == "unitary" && !ev.splits {
                return outcome(false, || format!("U·D·Ūᵗ does not split: M={m:?}"));
            }
            if psd {
                for _ in 0..PSD_VECTORS {
                    let x = random_vector(s, spec, n);
                    let q = quadratic_value(&m, &x);
                    if q.sign_at(p) < 0 {
                        return outcome(false, || format!("psd but x̄ᵗMx={q:?} < 0 at x={x:?}: M={m:?}"));
                    }
                }
            }
            outcome(true, String::new)
        },
        r,
    ));

    out.push(run_condition(
        "eigen_conjugation",
        seed,
        74,
        count,
        |s| {
            // Upper triangular T has T·e₁ = e₁·λ; so does Q·T·Q⁻¹ after
            // moving the eigenvector, with Q = L·U for L unipotent and U
            // unitary, so Q⁻¹ = Ūᵗ·(1 − E + E² − …) exactly.
            let n = s.rng.gen_range(1..=3);
            let lambda = s.element(spec);
            let mut t = random_matrix(s, spec, n);
            for i in 0..n {
                for j in 0..i {
                    t.set(i, j, EElement::zero(spec));
                }
            }
            t.set(0, 0, lambda.clone());
            let mut e = MatE::zero(spec, n);
            for i in 0..n {
                for j in 0..i {
                    e.set(i, j, s.constant_element(spec));
                }
            }
            let one = MatE::identity(spec, n);
            let mut l_inv = one.clone();
            let mut term = one.clone();
            for _ in 1..n {
                term = term.mul(&e).neg();
                l_inv = l_inv.add(&term);
            }
            let u = small_unitary(s, spec, n);
            let q = one.add(&e).mul(&u);
            let qi = u.conj_transpose().mul(&l_inv);
            if !q.mul(&qi).is_identity() {
                return outcome(false, || format!("conjugator inverse failed: Q={q:?}"));
            }
            let m = q.mul(&t).mul(&qi);
            let mu = lambda;
            let c = s.element(spec);
            let conj = &(&c.inv()? * &mu) * &c;
            let ok = is_right_eigenvalue(&m, &mu)? && is_right_eigenvalue(&m, &conj)?;
            outcome(ok, || format!("λ={mu:?} c={c:?}: M={m:?}"))
        },
        r,
    ));

    out
}
