//! Right-continuous bounded-variation functions and centred distribution
//! functions.
//!
//! A [`BVFunction`] is stored as `(offset, mu)` where the function value is
//! `F(x) = offset + mu((-inf, x])`. With kernel measures the total variation
//! is always finite and right-continuity holds by construction, so this
//! representation realizes the correspondence between right-continuous BV
//! functions and finite signed measures in both directions.

use serde::{Deserialize, Serialize};

use crate::calculus::variation;
use crate::measure::Measure;
use crate::scalar::Scalar;
use crate::set::RealSet;

/// A centring point: a rational, or one of the symbols `-inf` / `+inf`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Centre {
    NegInf,
    Finite(Scalar),
    PosInf,
}

impl std::fmt::Display for Centre {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Centre::NegInf => write!(f, "-inf"),
            Centre::PosInf => write!(f, "+inf"),
            Centre::Finite(x) => write!(f, "{}", x),
        }
    }
}

/// A right-continuous BV function `F(x) = offset + mu((-inf, x])`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BVFunction {
    offset: Scalar,
    mu: Measure,
}

impl BVFunction {
    pub fn new(offset: Scalar, mu: Measure) -> Self {
        BVFunction { offset, mu }
    }

    /// Value at `-inf`.
    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn measure(&self) -> &Measure {
        &self.mu
    }

    /// Exact evaluation; `Centre` doubles as the evaluation-point type so
    /// the two limits at `+-inf` are reachable (finite because the support
    /// is compact).
    pub fn eval(&self, x: &Centre) -> Scalar {
        match x {
            Centre::NegInf => self.offset.clone(),
            Centre::PosInf => &self.offset + &self.mu.total_mass(),
            Centre::Finite(x) => {
                &self.offset + &self.mu.measure_of_set(&RealSet::below(x.clone(), true))
            }
        }
    }

    pub fn eval_at(&self, x: &Scalar) -> Scalar {
        self.eval(&Centre::Finite(x.clone()))
    }

    /// The total-variation function `V_F`, computed through the identity
    /// between the variation of `F` and the measure of `|mu|`: offset zero,
    /// measure `|mu|`. Nondecreasing.
    pub fn variation_function(&self) -> BVFunction {
        BVFunction::new(Scalar::zero(), variation(&self.mu))
    }

    /// The nondecreasing parts `(F_up, F_down)` with
    /// `F_up - F_down = F - F(-inf)` and `F_up + F_down = V_F`.
    pub fn updown_parts(&self) -> (BVFunction, BVFunction) {
        let (p, n) = crate::calculus::jordan(&self.mu);
        (
            BVFunction::new(Scalar::zero(), p),
            BVFunction::new(Scalar::zero(), n),
        )
    }
}

/// The distribution function of `mu` centred at `centre`:
/// `mu((alpha, x])` for `x >= alpha` and `-mu((x, alpha])` for `x < alpha`;
/// `mu((-inf, x])` for centre `-inf` and `-mu((x, inf))` for centre `+inf`.
pub fn distribution_function(mu: &Measure, centre: &Centre) -> BVFunction {
    let offset = match centre {
        Centre::NegInf => Scalar::zero(),
        Centre::PosInf => -mu.total_mass(),
        Centre::Finite(alpha) => {
            -mu.measure_of_set(&RealSet::below(alpha.clone(), true))
        }
    };
    BVFunction::new(offset, mu.clone())
}

/// The inverse direction: the unique measure with
/// `mu((a, b]) = F(b) - F(a)`. For this representation it is the stored
/// measure itself.
pub fn measure_from_bv(f: &BVFunction) -> Measure {
    f.mu.clone()
}

/// Sample `F` on the grid `from, from + step, ...` up to `to` inclusive,
/// as `(x, F(x))` pairs.
pub fn sample_bv(f: &BVFunction, from: &Scalar, to: &Scalar, step: &Scalar) -> Vec<(Scalar, Scalar)> {
    assert!(step.is_positive(), "step must be positive");
    let mut rows = Vec::new();
    let mut x = from.clone();
    while &x <= to {
        rows.push((x.clone(), f.eval_at(&x)));
        x = &x + step;
    }
    rows
}
