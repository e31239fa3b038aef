use crate::error::{Error, Result};
use crate::symfield::{OrderingSpec, RatFunc};

/// Diagonal form `⟨a_1,…,a_m⟩` with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagForm {
    entries: Vec<RatFunc>,
}

impl DiagForm {
    pub fn new(entries: Vec<RatFunc>) -> Result<Self> {
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::Singular);
        }
        Ok(DiagForm { entries })
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sign shared by all entries at `p`, if any.
    pub fn definite_sign(&self, p: &OrderingSpec) -> Option<i8> {
        let first = self.entries.first()?.sign_at(p);
        self.entries.iter().all(|e| e.sign_at(p) == first).then_some(first)
    }
}

/// Result of symmetric Gaussian congruence: `Cᵗ G C = diag(diag)`.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub diag: Vec<RatFunc>,
    pub transform: Vec<Vec<RatFunc>>,
}

/// Diagonalizes a symmetric matrix by congruence; zero rows give zero entries.
pub fn diag_congruence(g: &[Vec<RatFunc>]) -> Congruence {
    let n = g.len();
    let mut a: Vec<Vec<RatFunc>> = g.to_vec();
    let mut c: Vec<Vec<RatFunc>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect();

    // Column op col_i += f·col_j together with row op row_i += f·row_j.
    fn add_multiple(a: &mut [Vec<RatFunc>], c: &mut [Vec<RatFunc>], i: usize, j: usize, f: &RatFunc) {
        let n = a.len();
        for r in 0..n {
            if !a[r][j].is_zero() {
                let t = f * &a[r][j];
                a[r][i] = &a[r][i] + &t;
            }
        }
        for col in 0..n {
            if !a[j][col].is_zero() {
                let t = f * &a[j][col];
                a[i][col] = &a[i][col] + &t;
            }
        }
        for r in 0..n {
            if !c[r][j].is_zero() {
                let t = f * &c[r][j];
                c[r][i] = &c[r][i] + &t;
            }
        }
    }

    fn swap(a: &mut [Vec<RatFunc>], c: &mut [Vec<RatFunc>], i: usize, j: usize) {
        a.swap(i, j);
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in c.iter_mut() {
            row.swap(i, j);
        }
    }

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap(&mut a, &mut c, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a_kk becomes 2·a_kj ≠ 0.
                add_multiple(&mut a, &mut c, k, j, &RatFunc::one());
            } else {
                continue;
            }
        }
        let pivot_inv = a[k][k].inv();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = -&(&a[i][k] * &pivot_inv);
            add_multiple(&mut a, &mut c, i, k, &f);
        }
    }
    Congruence { diag: (0..n).map(|i| a[i][i].clone()).collect(), transform: c }
}

/// Whether the entries match pairwise by sign at `p` and valuation class
/// mod 2Γ_v.
pub fn same_square_class_form(d1: &DiagForm, d2: &DiagForm, p: &OrderingSpec) -> Result<bool> {
    if d1.len() != d2.len() {
        return Err(Error::LengthMismatch(d1.len(), d2.len()));
    }
    let keys = |d: &DiagForm| {
        let mut k: Vec<(i8, Vec<u8>)> = d.entries().iter().map(|e| (e.sign_at(p), e.val().parity())).collect();
        k.sort();
        k
    };
    Ok(keys(d1) == keys(d2))
}
