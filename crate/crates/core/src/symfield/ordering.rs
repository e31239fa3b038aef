use serde::{Deserialize, Serialize};

/// Ordering of ℚ(x_1,…,x_r) compatible with the lex valuation, determined by
/// the signs of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderingSpec {
    eta: Vec<i8>,
}

impl OrderingSpec {
    /// Panics unless every sign is ±1.
    pub fn new(eta: Vec<i8>) -> Self {
        assert!(eta.iter().all(|&s| s == 1 || s == -1), "signs must be +1 or -1");
        OrderingSpec { eta }
    }

    pub fn all_positive(r: usize) -> Self {
        OrderingSpec { eta: vec![1; r] }
    }

    pub fn eta(&self) -> &[i8] {
        &self.eta
    }

    pub fn r(&self) -> usize {
        self.eta.len()
    }

    /// Sign of variable `i`; panics if the ordering does not cover it.
    pub fn eta_at(&self, i: usize) -> i8 {
        *self
            .eta
            .get(i)
            .unwrap_or_else(|| panic!("ordering has {} signs, variable index {i}", self.eta.len()))
    }

    /// Ordering with every variable sign flipped.
    pub fn flipped(&self) -> Self {
        OrderingSpec { eta: self.eta.iter().map(|s| -s).collect() }
    }

    pub fn label(&self) -> String {
        let s: Vec<&str> = self.eta.iter().map(|&e| if e > 0 { "+" } else { "-" }).collect();
        format!("({})", s.join(","))
    }
}

/// All 2^r orderings, lexicographic on sign vectors with −1 before +1.
pub fn enumerate_orderings(r: usize) -> Vec<OrderingSpec> {
    (0..1usize << r)
        .map(|m| {
            OrderingSpec::new(
                (0..r).map(|i| if (m >> (r - 1 - i)) & 1 == 1 { 1 } else { -1 }).collect(),
            )
        })
        .collect()
}
