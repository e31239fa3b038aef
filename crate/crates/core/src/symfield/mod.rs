//! Exact arithmetic in F = ℚ(x_1,…,x_r) with its lex monomial valuation,
//! the orderings compatible with it, and univariate polynomials over F.

mod gamma;
mod ordering;
mod parse;
mod poly;
mod polyx;
mod ratfunc;
mod roots;

pub use gamma::GammaVal;
pub use ordering::{enumerate_orderings, OrderingSpec};
pub use parse::parse_element;
pub use poly::{exponents, gcd, Exponents, MultiPoly};
pub use polyx::{newton_from_vals, newton_root_valuations, PolyX};
pub use ratfunc::RatFunc;
pub use roots::{rational_roots, roots_in_field};

pub type Rat = num_rational::BigRational;

/// Convenience constructor for a rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn val(f: &RatFunc) -> GammaVal {
    f.val()
}

pub fn sign_at(f: &RatFunc, p: &OrderingSpec) -> i8 {
    f.sign_at(p)
}

pub fn residue(f: &RatFunc) -> crate::error::Result<Rat> {
    f.residue()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(s: &str) -> RatFunc {
        parse_element(s, &vars()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(val(&p("x")), GammaVal::from_ints([1, 0]));
        assert_eq!(val(&p("x^2*y + x^3")), GammaVal::from_ints([2, 1]));
        assert_eq!(val(&p("1/x")), GammaVal::from_ints([-1, 0]));
        assert_eq!(val(&RatFunc::zero()), GammaVal::Inf);
    }

    #[test]
    fn sign_examples() {
        let eta = OrderingSpec::new(vec![-1, 1]);
        assert_eq!(sign_at(&p("x"), &eta), -1);
        assert_eq!(sign_at(&p("-2*x + x^2"), &eta), 1);
        for e in enumerate_orderings(2) {
            assert_eq!(sign_at(&p("2 + y"), &e), 1);
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(&p("(2+x)/(1+y)")).unwrap(), rat(2, 1));
        assert_eq!(residue(&p("5")).unwrap(), rat(5, 1));
        assert_eq!(residue(&p("x")).unwrap(), rat(0, 1));
        assert_eq!(residue(&p("1/y")), Err(crate::error::Error::NegativeValuation));
    }

    #[test]
    fn ordering_enumeration() {
        assert_eq!(enumerate_orderings(0).len(), 1);
        assert_eq!(enumerate_orderings(4).len(), 16);
        let two = enumerate_orderings(2);
        assert_eq!(two[0].eta(), &[-1, -1]);
        assert_eq!(two[1].eta(), &[-1, 1]);
        assert_eq!(two[3].eta(), &[1, 1]);
    }
}
