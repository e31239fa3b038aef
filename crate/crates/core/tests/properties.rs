use proptest::prelude::*;

use realgauge::algebra::{diag_congruence, EElement, ESpec, HermContext};
use realgauge::cones::{cone_member, ConeSpec};
use realgauge::gauges::{gauge_value, GaugeContext};
use realgauge::quatmat::{chi, MatE};
use realgauge::symfield::{newton_root_valuations, GammaVal, MultiPoly, OrderingSpec, PolyX, Rat, RatFunc};

const R: usize = 2;

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop_oneof![-6i64..=-1, 1i64..=6], prop::collection::vec(0u32..=3, R)), 1..=3).prop_map(|terms| {
        terms.iter().fold(MultiPoly::zero(), |acc, (c, e)| acc.add(&MultiPoly::monomial(Rat::from_integer((*c).into()), e)))
    })
}

/// Nonzero element of `ℚ(x, y)`, sometimes with a non-monomial denominator.
fn rf() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), prop::option::of(poly_strategy()))
        .prop_filter("nonzero", |(n, d)| !n.is_zero() && d.as_ref().is_none_or(|d| !d.is_zero()))
        .prop_map(|(n, d)| match d {
            None => RatFunc::from_poly(n),
            Some(d) => &RatFunc::from_poly(n) / &RatFunc::from_poly(d),
        })
}

fn ordering() -> impl Strategy<Value = OrderingSpec> {
    prop::collection::vec(prop_oneof![Just(-1i8), Just(1i8)], R).prop_map(OrderingSpec::new)
}

fn espec() -> impl Strategy<Value = ESpec> {
    prop_oneof![Just(ESpec::Base), Just(ESpec::Complex), Just(ESpec::hamilton())]
}

fn element(spec: ESpec) -> impl Strategy<Value = EElement> {
    prop::collection::vec(prop::option::of(rf()), spec.dim())
        .prop_filter("nonzero", |c| c.iter().any(|x| x.is_some()))
        .prop_map(move |c| EElement::new(&spec, c.into_iter().map(|x| x.unwrap_or_else(RatFunc::zero)).collect()).unwrap())
}

fn poly_element(spec: ESpec) -> impl Strategy<Value = EElement> {
    prop::collection::vec(poly_strategy(), spec.dim())
        .prop_map(move |c| EElement::new(&spec, c.into_iter().map(RatFunc::from_poly).collect()).unwrap())
}

fn matrix(spec: ESpec, n: usize) -> impl Strategy<Value = MatE> {
    prop::collection::vec(prop::option::of(element(spec.clone())), n * n)
        .prop_map(move |es| MatE::from_fn(&spec, n, |i, j| es[i * n + j].clone().unwrap_or_else(|| EElement::zero(&spec))))
}

/// Sign of `c·x^α` at `P`.
fn monomial_sign(p: &MultiPoly, at: &OrderingSpec) -> i8 {
    let (e, c) = p.lowest_term().unwrap();
    let s: i8 = e.iter().enumerate().map(|(k, a)| if a % 2 == 1 { at.eta_at(k) } else { 1 }).product();
    if *c > Rat::from_integer(0.into()) {
        s
    } else {
        -s
    }
}

/// A form `⟨e_1,…,e_n⟩` of monomials positive at `P`.
fn positive_form(at: &OrderingSpec, exps: &[(u32, u32, i64)]) -> Vec<RatFunc> {
    exps.iter()
        .map(|&(a, b, u)| {
            let m = MultiPoly::monomial(Rat::from_integer(u.into()), &[a, b]);
            let s = monomial_sign(&m, at);
            RatFunc::from_poly(m.scale(&Rat::from_integer(s.into())))
        })
        .collect()
}

/// Rational points at which identities in `ℚ(x, y)` are checked.
const POINTS: [(i64, i64, i64, i64); 4] = [(2, 1, 3, 1), (-5, 3, 7, 2), (11, 4, -2, 9), (1, 13, -17, 5)];

fn eval_poly(p: &MultiPoly, &(a, b, c, d): &(i64, i64, i64, i64)) -> Rat {
    let x = [Rat::new(a.into(), b.into()), Rat::new(c.into(), d.into())];
    let mut acc = Rat::from_integer(0.into());
    for (e, coef) in p.terms() {
        let mut t = coef.clone();
        for (k, &a) in e.iter().enumerate() {
            for _ in 0..a {
                t *= &x[k];
            }
        }
        acc += t;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_axioms(f in rf(), g in rf()) {
        prop_assert_eq!((&f * &g).val(), f.val().add(&g.val()));
        let s = &f + &g;
        let m = std::cmp::min(f.val(), g.val());
        prop_assert!(s.val() >= m);
        if f.val() != g.val() {
            prop_assert_eq!(s.val(), m);
        }
    }

    #[test]
    fn sign_is_multiplicative_and_leading(f in rf(), g in rf(), p in ordering()) {
        prop_assert_eq!((&f * &g).sign_at(&p), f.sign_at(&p) * g.sign_at(&p));
        prop_assert_eq!(f.sign_at(&p), monomial_sign(f.num(), &p) * monomial_sign(f.den(), &p));
    }

    #[test]
    fn positive_elements_are_compatible(f in rf(), g in rf(), p in ordering()) {
        let f = if f.sign_at(&p) > 0 { f } else { -f };
        let g = if g.sign_at(&p) > 0 { g } else { -g };
        prop_assert_eq!((&f + &g).val(), std::cmp::min(f.val(), g.val()));
    }

    #[test]
    fn newton_recovers_root_valuations(roots in prop::collection::vec(rf(), 1..=4)) {
        let p = roots.iter().fold(PolyX::new(vec![RatFunc::one()]), |acc, r| acc.mul(&PolyX::new(vec![-r, RatFunc::one()])));
        let mut want: Vec<GammaVal> = roots.iter().map(|r| r.val()).collect();
        want.sort();
        prop_assert_eq!(newton_root_valuations(&p).unwrap(), want);
    }

    #[test]
    fn newton_of_product_is_union(a in prop::collection::vec(rf(), 1..=3), b in prop::collection::vec(rf(), 1..=3)) {
        let monic = |c: &[RatFunc]| PolyX::new(c.iter().cloned().chain([RatFunc::one()]).collect());
        let (p, q) = (monic(&a), monic(&b));
        let mut want = newton_root_valuations(&p).unwrap();
        want.extend(newton_root_valuations(&q).unwrap());
        want.sort();
        prop_assert_eq!(newton_root_valuations(&p.mul(&q)).unwrap(), want);
    }

    #[test]
    fn norm_is_multiplicative(spec in prop_oneof![
        espec().prop_flat_map(|s| (element(s.clone()), element(s))).boxed(),
        (poly_strategy(), poly_strategy())
            .prop_map(|(a, b)| ESpec::quat(RatFunc::from_poly(a), RatFunc::from_poly(b)).unwrap())
            .prop_flat_map(|s| (poly_element(s.clone()), poly_element(s)))
            .boxed(),
    ]) {
        let (x, y) = spec;
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn v_e_extends_val(f in rf(), spec in espec()) {
        prop_assert_eq!(EElement::scalar(&spec, f.clone()).v_e().unwrap(), f.val());
    }

    #[test]
    fn sum_of_norms(xs in espec().prop_flat_map(|s| prop::collection::vec(element(s), 1..=4))) {
        let total = xs.iter().fold(RatFunc::zero(), |acc, x| &acc + &x.norm());
        let m = xs.iter().map(|x| x.v_e().unwrap()).min().unwrap();
        prop_assert_eq!(total.val(), m.add(&m));
    }

    #[test]
    fn congruence_diagonalizes(n in 1usize..=4, entries in prop::collection::vec(prop::option::weighted(0.5, poly_strategy()), 16)) {
        let mut g = vec![vec![RatFunc::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let x = entries[i * 4 + j].clone().map_or_else(RatFunc::zero, RatFunc::from_poly);
                g[i][j] = x.clone();
                g[j][i] = x;
            }
        }
        let c = diag_congruence(&g);
        for pt in POINTS {
            let ev = |f: &RatFunc| Some(eval_poly(f.num(), &pt) / Some(eval_poly(f.den(), &pt)).filter(|d| *d != Rat::from_integer(0.into()))?);
            let (Some(gv), Some(tv), Some(dv)) = (
                g.iter().map(|r| r.iter().map(ev).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>(),
                c.transform.iter().map(|r| r.iter().map(ev).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>(),
                c.diag.iter().map(ev).collect::<Option<Vec<_>>>(),
            ) else {
                continue;
            };
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rat::from_integer(0.into());
                    for k in 0..n {
                        for l in 0..n {
                            acc += &tv[k][i] * &gv[k][l] * &tv[l][j];
                        }
                    }
                    let want = if i == j { dv[i].clone() } else { Rat::from_integer(0.into()) };
                    prop_assert_eq!(acc, want);
                }
            }
        }
    }

    #[test]
    fn chi_is_a_morphism((a, b) in (1usize..=3).prop_flat_map(|n| (matrix(ESpec::hamilton(), n), matrix(ESpec::hamilton(), n)))) {
        prop_assert_eq!(chi(&a.add(&b)).unwrap(), chi(&a).unwrap().add(&chi(&b).unwrap()));
        prop_assert_eq!(chi(&a.mul(&b)).unwrap(), chi(&a).unwrap().mul(&chi(&b).unwrap()));
    }
}

fn gauge_context() -> impl Strategy<Value = GaugeContext> {
    (espec(), ordering(), prop::collection::vec((0u32..=3, 0u32..=3, 1i64..=4), 1..=3)).prop_map(|(es, p, exps)| {
        let h = HermContext::new(es, positive_form(&p, &exps)).unwrap();
        GaugeContext::new(h, p).unwrap()
    })
}

fn gauge_case() -> impl Strategy<Value = (GaugeContext, MatE, MatE)> {
    gauge_context().prop_flat_map(|g| {
        let (es, n) = (g.espec().clone(), g.n());
        (Just(g), matrix(es.clone(), n), matrix(es, n))
    })
}

/// Context with a polynomial matrix, keeping characteristic polynomials small.
fn cone_case() -> impl Strategy<Value = (GaugeContext, MatE)> {
    gauge_context().prop_flat_map(|g| {
        let (es, n) = (g.espec().clone(), g.n());
        let m = prop::collection::vec(prop::option::of(poly_element(es.clone())), n * n)
            .prop_map(move |xs| MatE::from_fn(&es, n, |i, j| xs[i * n + j].clone().unwrap_or_else(|| EElement::zero(&es))));
        (Just(g), m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauge_is_surmultiplicative((g, x, y) in gauge_case()) {
        let w = |a: &MatE| gauge_value(a, &g).unwrap();
        prop_assert!(w(&x.mul(&y)) >= w(&x).add(&w(&y)));
        prop_assert!(w(&MatE::identity(g.espec(), g.n())).is_zero());
        prop_assert_eq!(w(&x).is_inf(), x.is_zero());
    }

    /// On the basis `q_ℓ·E_ij` with `q_ℓ` the units of E, the gauge of a
    /// combination is the minimum of `val(λ) + ½(v(e_i) − v(e_j))`.
    #[test]
    fn gauge_splits_on_the_standard_basis((g, x, _) in gauge_case()) {
        let mut want = GammaVal::Inf;
        for i in 0..g.n() {
            for j in 0..g.n() {
                for c in x.get(i, j).coords() {
                    if !c.is_zero() {
                        want = std::cmp::min(want, c.val().add(&g.e_vals()[i].sub(&g.e_vals()[j]).half()));
                    }
                }
            }
        }
        prop_assert_eq!(gauge_value(&x, &g).unwrap(), want);
    }

    #[test]
    fn cone_contains_one_and_is_pointed((g, x) in cone_case()) {
        let c = ConeSpec::matrix(g.ctx().clone(), g.ordering().clone()).unwrap();
        prop_assert!(c.is_valid());
        prop_assert!(cone_member(&MatE::identity(g.espec(), g.n()), &c).unwrap());
        let flipped = ConeSpec::matrix(g.ctx().negated(), g.ordering().clone()).unwrap();
        let b = x.add(&g.sigma(&x));
        let (pos, neg) = (cone_member(&b, &c).unwrap(), cone_member(&b.neg(), &c).unwrap());
        prop_assert_eq!(pos, cone_member(&b, &flipped).unwrap());
        if pos && neg {
            prop_assert!(b.is_zero());
        }
    }
}
