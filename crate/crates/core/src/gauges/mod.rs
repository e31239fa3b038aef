//! The gauge `w(a) = min v_E(a_ij) + ½v(e_i) − ½v(e_j)` on `(M_n(E), ad_h)`,
//! its ring and ideal, value set, residue algebra, st(w), and the
//! eigenvalue-valuation description of w on symmetric elements.

mod suite;

pub use suite::gauge_suite;

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::algebra::{EElement, ESpec, HermContext};
use crate::error::{Error, Result};
use crate::quatmat::{reduced_charpoly, MatE};
use crate::symfield::{newton_root_valuations, GammaVal, OrderingSpec, Rat, RatFunc};

/// A matrix context at an ordering where `h` is definite, with `h` replaced
/// by `−h` if needed so that every `e_i` is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeContext {
    ctx: HermContext,
    p: OrderingSpec,
    normalized_sign: i8,
    vals: Vec<GammaVal>,
}

impl GaugeContext {
    pub fn new(ctx: HermContext, p: OrderingSpec) -> Result<Self> {
        let s = ctx.e()[0].sign_at(&p);
        if ctx.e().iter().any(|e| e.sign_at(&p) != s) {
            return Err(Error::NotDefinite);
        }
        let ctx = if s < 0 { ctx.negated() } else { ctx };
        let vals = ctx.e().iter().map(|e| e.val()).collect();
        Ok(GaugeContext { ctx, p, normalized_sign: s, vals })
    }

    pub fn ctx(&self) -> &HermContext {
        &self.ctx
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.p
    }

    /// +1 if `h` was used as given, −1 if it was negated.
    pub fn normalized_sign(&self) -> i8 {
        self.normalized_sign
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn espec(&self) -> &ESpec {
        self.ctx.espec()
    }

    pub fn e_vals(&self) -> &[GammaVal] {
        &self.vals
    }

    /// `½(v(e_i) − v(e_j))`.
    pub fn shift(&self, i: usize, j: usize) -> GammaVal {
        self.vals[i].sub(&self.vals[j]).half()
    }

    pub fn sigma(&self, a: &MatE) -> MatE {
        self.ctx.sigma(a)
    }
}

/// `x^g` for an integral exponent vector `g`.
pub fn x_pow(g: &GammaVal) -> RatFunc {
    assert!(g.is_integral(), "monomial with fractional exponent");
    let GammaVal::Finite(c) = g else { panic!("monomial with infinite exponent") };
    let e: Vec<i64> = c.iter().map(|k| k.to_integer().to_i64().expect("exponent overflow")).collect();
    RatFunc::laurent_monomial(Rat::from_integer(1.into()), &e)
}

pub fn gauge_value(a: &MatE, g: &GaugeContext) -> Result<GammaVal> {
    g.ctx.check(a)?;
    let n = g.n();
    let mut best = GammaVal::Inf;
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let v = x.v_e()?.add(&g.shift(i, j));
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

pub fn in_gauge_ring(a: &MatE, g: &GaugeContext) -> Result<bool> {
    Ok(gauge_value(a, g)?.is_nonneg())
}

pub fn in_gauge_ideal(a: &MatE, g: &GaugeContext) -> Result<bool> {
    Ok(gauge_value(a, g)?.is_positive())
}

/// Valuations of the eigenvalues of `σ(a)a`; their minimum is `2w(a)`.
pub fn norm_eigen_valuations(a: &MatE, g: &GaugeContext) -> Result<Vec<GammaVal>> {
    g.ctx.check(a)?;
    newton_root_valuations(&reduced_charpoly(&g.sigma(a).mul(a)))
}

/// Gauge-ring membership decided from eigenvalue valuations alone.
pub fn oracle_in_ring(a: &MatE, g: &GaugeContext) -> Result<bool> {
    Ok(norm_eigen_valuations(a, g)?.iter().all(|v| v.is_nonneg()))
}

pub fn oracle_in_ideal(a: &MatE, g: &GaugeContext) -> Result<bool> {
    Ok(norm_eigen_valuations(a, g)?.iter().all(|v| v.is_positive()))
}

/// A union of cosets of Γ_v inside ½Γ_v, by canonical representatives with
/// coordinates in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSet {
    pub reps: BTreeSet<GammaVal>,
}

impl CosetSet {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// Cosets `½(v(e_i) − v(e_j)) + Γ_v` over all pairs.
pub fn form_coset_set(e: &[RatFunc]) -> CosetSet {
    let vals: Vec<GammaVal> = e.iter().map(|x| x.val()).collect();
    let mut reps = BTreeSet::new();
    for a in &vals {
        for b in &vals {
            reps.insert(a.sub(b).half().reduce_mod_integers());
        }
    }
    CosetSet { reps }
}

pub fn value_coset_set(g: &GaugeContext) -> CosetSet {
    form_coset_set(g.ctx.e())
}

pub fn coset_index(g: &GaugeContext) -> usize {
    value_coset_set(g).index()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueBlock {
    /// Class of `v(e_i)` in Γ_v/2Γ_v as 0/1 coordinates.
    pub class_rep: GammaVal,
    pub indices: Vec<usize>,
    /// Residues of `e_j·x^{−v(e_j)}`.
    pub residue_form: Vec<Rat>,
    /// Sign of `x^{class_rep}` at the ordering; `sign·residue_form` is
    /// positive definite.
    pub ordering_sign: i8,
}

impl ResidueBlock {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDecomposition {
    pub blocks: Vec<ResidueBlock>,
    pub residue_espec: ESpec,
}

impl ResidueDecomposition {
    /// `Σ n_ℓ²·dim E₀`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.size() * b.size()).sum::<usize>() * self.residue_espec.dim()
    }

    pub fn block_of(&self, i: usize) -> (usize, usize) {
        for (l, b) in self.blocks.iter().enumerate() {
            if let Some(pos) = b.indices.iter().position(|&k| k == i) {
                return (l, pos);
            }
        }
        panic!("index {i} outside the decomposition")
    }
}

fn class_of(v: &GammaVal) -> GammaVal {
    GammaVal::from_ints(v.parity().into_iter().map(i64::from))
}

pub fn residue_decomposition(g: &GaugeContext) -> ResidueDecomposition {
    let mut blocks: Vec<ResidueBlock> = Vec::new();
    for (i, e) in g.ctx.e().iter().enumerate() {
        let class = class_of(&g.vals[i]);
        let u = e.leading_unit().unwrap();
        match blocks.iter_mut().find(|b| b.class_rep == class) {
            Some(b) => {
                b.indices.push(i);
                b.residue_form.push(u);
            }
            None => {
                let ordering_sign = x_pow(&class).sign_at(&g.p);
                blocks.push(ResidueBlock { class_rep: class, indices: vec![i], residue_form: vec![u], ordering_sign });
            }
        }
    }
    ResidueDecomposition { blocks, residue_espec: g.espec().clone() }
}

pub fn is_dubrovin(g: &GaugeContext) -> bool {
    residue_decomposition(g).blocks.len() == 1
}

/// Number of entries of A whose shifted valuation class is integral, times
/// `dim E`: the dimension of A₀ counted cell by cell.
pub fn surviving_cells(g: &GaugeContext) -> usize {
    let n = g.n();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            if g.shift(i, j).is_integral() {
                count += 1;
            }
        }
    }
    count * g.espec().dim()
}

/// Root valuations of the reduced characteristic polynomial of a symmetric
/// `b`; similarity invariance lets `b` stand in for `√e·b·√e⁻¹`.
pub fn eigen_valuations(b: &MatE, g: &GaugeContext) -> Result<Vec<GammaVal>> {
    g.ctx.check(b)?;
    if !g.ctx.is_symmetric(b) {
        return Err(Error::NotSymmetric);
    }
    newton_root_valuations(&reduced_charpoly(b))
}

/// Whether `a` lies in st(w), decided by the eigenvalue valuations of `σ(a)a`.
pub fn in_st(a: &MatE, g: &GaugeContext) -> Result<bool> {
    g.ctx.check(a)?;
    let vals = norm_eigen_valuations(a, g)?;
    if vals.iter().any(|v| v.is_inf()) {
        return Err(Error::Singular);
    }
    Ok(vals.windows(2).all(|w| w[0] == w[1]))
}

/// `π_w(a)` as one matrix over E₀ per residue block.
pub fn residue_element(a: &MatE, g: &GaugeContext) -> Result<Vec<MatE>> {
    if !in_gauge_ring(a, g)? {
        return Err(Error::NotInRing);
    }
    let dec = residue_decomposition(g);
    let es = g.espec();
    let mut out = Vec::with_capacity(dec.blocks.len());
    for b in &dec.blocks {
        let m = MatE::from_fn(es, b.size(), |s, t| {
            let (i, j) = (b.indices[s], b.indices[t]);
            let shifted = a.get(i, j).scale(&x_pow(&g.shift(i, j)));
            let c: Vec<RatFunc> =
                shifted.coords().iter().map(|x| RatFunc::from_rat(x.residue().expect("entry in gauge ring"))).collect();
            EElement::new(es, c).unwrap()
        });
        out.push(m);
    }
    Ok(out)
}

/// A preimage under `π_w` of a blockwise element, of the form `e⁻¹·H` with
/// `H` hermitian when the blocks are σ₀-symmetric.
pub fn residue_lift(blocks: &[MatE], g: &GaugeContext) -> Result<MatE> {
    let dec = residue_decomposition(g);
    if blocks.len() != dec.blocks.len() {
        return Err(Error::LengthMismatch(blocks.len(), dec.blocks.len()));
    }
    let es = g.espec();
    let mut a = MatE::zero(es, g.n());
    for (b, m) in dec.blocks.iter().zip(blocks) {
        if m.spec() != es {
            return Err(Error::SpecMismatch);
        }
        if m.n() != b.size() {
            return Err(Error::DimensionMismatch { expected: b.size(), got: m.n() });
        }
        for (s, &i) in b.indices.iter().enumerate() {
            let ui = RatFunc::from_rat(b.residue_form[s].clone());
            let row = &(&ui * &x_pow(&g.vals[i])) / &g.ctx.e()[i];
            for (t, &j) in b.indices.iter().enumerate() {
                // a_ij = u_i·B_st·x^{(v_i+v_j)/2} / e_i
                let m_ij = &row * &x_pow(&g.vals[j].sub(&g.vals[i]).half());
                a.set(i, j, m.get(s, t).scale(&m_ij));
            }
        }
    }
    Ok(a)
}

/// Gauge on `(a,b)_F`: `w(q) = ½v(Nrd(q)) = v_E(q)`.
pub fn quat_division_gauge(q: &EElement) -> Result<GammaVal> {
    if !matches!(q.spec(), ESpec::Quat(_)) {
        return Err(Error::WrongKind("quaternion element expected".into()));
    }
    q.v_e()
}

/// `w_n((a_ij)) = min w(a_ij)` for an entry gauge `w`.
pub fn min_gauge_matrix(m: &MatE, w: impl Fn(&EElement) -> Result<GammaVal>) -> Result<GammaVal> {
    let mut best = GammaVal::Inf;
    for x in m.entries() {
        if x.is_zero() {
            continue;
        }
        let v = w(x)?;
        if v < best {
            best = v;
        }
    }
    Ok(best)
}
