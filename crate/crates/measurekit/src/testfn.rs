//! Continuous piecewise-polynomial test functions with constant tails.
//!
//! This class is closed under the operations the checkers need and makes
//! every integral against a kernel measure a closed-form rational. Functions
//! tagged `Cc` have zero tails (compact support); `Cb` allows arbitrary
//! constant tails.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

pub const MAX_DEGREE: usize = 3;

/// A polynomial with rational coefficients, constant term first, degree <= 3.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Poly(pub Vec<Scalar>);

impl Poly {
    pub fn constant(c: Scalar) -> Self {
        Poly(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Scalar, c1: Scalar) -> Self {
        Poly(vec![c0, c1])
    }

    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(Scalar::zero());
        }
        Poly(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Scalar::from_int(i as i64 + 1) * c)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut out = vec![Scalar::zero()];
        for (i, c) in self.0.iter().enumerate() {
            out.push(c / &Scalar::from_int(i as i64 + 1));
        }
        Poly(out)
    }

    /// Exact integral over `[a, b]`.
    pub fn integral(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Real rational roots within `(lo, hi)`, found exactly. Roots that are
    /// irrational are outside this function's contract and are skipped.
    pub fn rational_roots_within(&self, lo: &Scalar, hi: &Scalar) -> Vec<Scalar> {
        let deg = self.degree();
        let mut roots = Vec::new();
        match deg {
            0 => {}
            1 => {
                let r = -&self.0[0] / self.0[1].clone();
                roots.push(r);
            }
            2 => {
                let (a, b, c) = (&self.0[2], &self.0[1], &self.0[0]);
                let disc = b * b - Scalar::from_int(4) * a * c;
                if let Some(sq) = disc.sqrt_exact() {
                    let two_a = Scalar::from_int(2) * a;
                    roots.push(&(-b + &sq) / &two_a);
                    roots.push(&(-b - &sq) / &two_a);
                }
            }
            _ => {
                // cubic: rational root candidates p/q with p | c0, q | c3,
                // after clearing denominators; bounded search via the
                // divisors of small integers only. The kernel caps degree
                // at 3 and the derivative of a cubic is quadratic, so this
                // branch is reached only for direct root queries on cubics.
                roots.extend(rational_roots_cubic(self));
            }
        }
        roots.retain(|r| r > lo && r < hi);
        roots.sort();
        roots.dedup();
        roots
    }
}

fn rational_roots_cubic(p: &Poly) -> Vec<Scalar> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    // clear denominators to integer coefficients
    let mut lcm = BigInt::from(1);
    for c in &p.0 {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .0
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::zero);
    let constant = ints.first().cloned().unwrap_or_else(BigInt::zero);
    if constant.is_zero() {
        let rest = Poly(p.0[1..].to_vec());
        let mut roots = vec![Scalar::zero()];
        roots.extend(rational_roots_of_at_most_quadratic(&rest));
        return roots;
    }
    let mut roots = Vec::new();
    for dp in divisors(&constant.abs()) {
        for dq in divisors(&lead.abs()) {
            for sign in [1i64, -1] {
                let cand = Scalar::from_bigints(&dp * BigInt::from(sign), dq.clone());
                if p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn rational_roots_of_at_most_quadratic(p: &Poly) -> Vec<Scalar> {
    let big = Scalar::from_int(i64::MAX);
    p.rational_roots_within(&-&big, &big)
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(1);
    // trial division capped; fine for the small coefficients that occur here
    while &(&d * &d) <= n && out.len() < 64 {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Classification tag for a test function.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FunctionClass {
    Cc,
    Cb,
}

/// Errors from test-function construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TestFunctionError {
    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("expected {expected} pieces for {breakpoints} breakpoints, got {got}")]
    PieceCountMismatch {
        breakpoints: usize,
        expected: usize,
        got: usize,
    },
    #[error("polynomial degree exceeds {MAX_DEGREE}")]
    DegreeTooHigh,
    #[error("discontinuity at x = {0}")]
    Discontinuity(Scalar),
    #[error("class Cc requires zero tails")]
    NonzeroTailsForCc,
    #[error("constant function requires equal tails")]
    UnequalConstantTails,
}

/// A globally continuous piecewise-polynomial function, constant on the two
/// unbounded tails. Piece `i` lives on `[breakpoints[i], breakpoints[i+1])`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TestFunction {
    breakpoints: Vec<Scalar>,
    pieces: Vec<Poly>,
    left_tail: Scalar,
    right_tail: Scalar,
    class: FunctionClass,
}

impl TestFunction {
    pub fn new(
        breakpoints: Vec<Scalar>,
        pieces: Vec<Poly>,
        left_tail: Scalar,
        right_tail: Scalar,
        class: FunctionClass,
    ) -> Result<Self, TestFunctionError> {
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TestFunctionError::BreakpointsNotIncreasing);
        }
        let expected = breakpoints.len().saturating_sub(1);
        if pieces.len() != expected {
            return Err(TestFunctionError::PieceCountMismatch {
                breakpoints: breakpoints.len(),
                expected,
                got: pieces.len(),
            });
        }
        if pieces.iter().any(|p| p.degree() > MAX_DEGREE) {
            return Err(TestFunctionError::DegreeTooHigh);
        }
        let f = TestFunction { breakpoints, pieces, left_tail, right_tail, class };
        f.check_continuity()?;
        if class == FunctionClass::Cc && (!f.left_tail.is_zero() || !f.right_tail.is_zero()) {
            return Err(TestFunctionError::NonzeroTailsForCc);
        }
        Ok(f)
    }

    /// The constant function.
    pub fn constant(c: Scalar, class: FunctionClass) -> Result<Self, TestFunctionError> {
        TestFunction::new(Vec::new(), Vec::new(), c.clone(), c, class)
    }

    fn check_continuity(&self) -> Result<(), TestFunctionError> {
        if self.breakpoints.is_empty() {
            if self.left_tail != self.right_tail {
                return Err(TestFunctionError::UnequalConstantTails);
            }
            return Ok(());
        }
        let first = &self.breakpoints[0];
        if self.pieces[0].eval(first) != self.left_tail {
            return Err(TestFunctionError::Discontinuity(first.clone()));
        }
        for i in 1..self.breakpoints.len() - 1 {
            let x = &self.breakpoints[i];
            if self.pieces[i - 1].eval(x) != self.pieces[i].eval(x) {
                return Err(TestFunctionError::Discontinuity(x.clone()));
            }
        }
        let last = self.breakpoints.last().unwrap();
        if self.pieces.last().unwrap().eval(last) != self.right_tail {
            return Err(TestFunctionError::Discontinuity(last.clone()));
        }
        Ok(())
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn left_tail(&self) -> &Scalar {
        &self.left_tail
    }

    pub fn right_tail(&self) -> &Scalar {
        &self.right_tail
    }

    pub fn has_equal_tails(&self) -> bool {
        self.left_tail == self.right_tail
    }

    /// Exact evaluation at `x`.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        if self.breakpoints.is_empty() {
            return self.left_tail.clone();
        }
        if x < &self.breakpoints[0] {
            return self.left_tail.clone();
        }
        if x >= self.breakpoints.last().unwrap() {
            return self.right_tail.clone();
        }
        // piece index: largest i with breakpoints[i] <= x
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.pieces[i].eval(x)
    }

    /// The polynomial in force on the (maximal) segment containing `x`,
    /// treating the tails as constant polynomials.
    pub fn poly_at(&self, x: &Scalar) -> Poly {
        if self.breakpoints.is_empty() || x < &self.breakpoints[0] {
            return Poly::constant(self.left_tail.clone());
        }
        if x >= self.breakpoints.last().unwrap() {
            return Poly::constant(self.right_tail.clone());
        }
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.pieces[i].clone()
    }

    /// Exact integral over the bounded interval `[a, b]`.
    pub fn integral(&self, a: &Scalar, b: &Scalar) -> Scalar {
        assert!(a <= b);
        let mut cuts = vec![a.clone()];
        for x in &self.breakpoints {
            if x > a && x < b {
                cuts.push(x.clone());
            }
        }
        cuts.push(b.clone());
        let mut total = Scalar::zero();
        for w in cuts.windows(2) {
            let poly = self.poly_at(&w[0]);
            total += &poly.integral(&w[0], &w[1]);
        }
        total
    }

    /// Exact supremum of `|f|` over the whole line: tails, breakpoint values
    /// and interior rational critical points of each piece. (For degree <= 2
    /// every critical point is rational; a cubic may in principle hide an
    /// irrational extremum, which this representation-level bound ignores.)
    pub fn sup_abs(&self) -> Scalar {
        let mut best = self.left_tail.abs().max(self.right_tail.abs());
        for (i, x) in self.breakpoints.iter().enumerate() {
            let v = if i < self.pieces.len() {
                self.pieces[i].eval(x)
            } else {
                self.right_tail.clone()
            };
            best = best.max(v.abs());
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            let lo = &self.breakpoints[i];
            let hi = &self.breakpoints[i + 1];
            for r in piece.derivative().rational_roots_within(lo, hi) {
                best = best.max(piece.eval(&r).abs());
            }
        }
        best
    }

    /// First and last breakpoint, if any; outside this range the function
    /// equals its tails.
    pub fn breakpoint_span(&self) -> Option<(Scalar, Scalar)> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(a), Some(b)) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }
}

/// The cut-off of the distribution-function convergence argument: zero
/// outside `(alpha - delta, t + delta)`, one on `[alpha, t]`, linear ramps
/// on the two side intervals.
pub fn make_cutoff(
    alpha: &Scalar,
    t: &Scalar,
    delta: &Scalar,
) -> Result<TestFunction, CutoffError> {
    if !delta.is_positive() {
        return Err(CutoffError::NonpositiveDelta);
    }
    if alpha > t {
        return Err(CutoffError::EmptyPlateau);
    }
    let inv = delta.recip();
    let mut breakpoints = vec![alpha - delta, alpha.clone()];
    // ramp up: (x + delta - alpha) / delta
    let mut pieces = vec![Poly::linear(&(delta - alpha) * &inv, inv.clone())];
    if t > alpha {
        breakpoints.push(t.clone());
        pieces.push(Poly::constant(Scalar::one()));
    }
    breakpoints.push(t + delta);
    // ramp down: (t + delta - x) / delta
    pieces.push(Poly::linear(&(t + delta) * &inv, -inv));
    Ok(TestFunction::new(
        breakpoints,
        pieces,
        Scalar::zero(),
        Scalar::zero(),
        FunctionClass::Cc,
    )
    .expect("cutoff is continuous by construction"))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutoffError {
    #[error("delta must be positive")]
    NonpositiveDelta,
    #[error("plateau requires alpha <= t")]
    EmptyPlateau,
}

/// A hat of height one: zero outside `(c - h, c + h)`, one at `c`, linear
/// in between.
pub fn hat(c: &Scalar, h: &Scalar) -> TestFunction {
    assert!(h.is_positive());
    let inv = h.recip();
    TestFunction::new(
        vec![c - h, c.clone(), c + h],
        vec![
            Poly::linear(&(h - c) * &inv, inv.clone()),
            Poly::linear(&(c + h) * &inv, -inv),
        ],
        Scalar::zero(),
        Scalar::zero(),
        FunctionClass::Cc,
    )
    .expect("hat is continuous by construction")
}

/// Sign-like ramp: `-1` below `c - w`, `+1` above `c + w`, linear between.
pub fn sign_ramp(c: &Scalar, w: &Scalar) -> TestFunction {
    assert!(w.is_positive());
    let inv = w.recip();
    TestFunction::new(
        vec![c - w, c + w],
        vec![Poly::linear(-c * &inv, inv)],
        -Scalar::one(),
        Scalar::one(),
        FunctionClass::Cb,
    )
    .expect("ramp is continuous by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn hat_evaluates_exactly() {
        let f = hat(&s(0, 1), &s(1, 1));
        assert_eq!(f.eval(&s(0, 1)), s(1, 1));
        assert_eq!(f.eval(&s(1, 2)), s(1, 2));
        assert_eq!(f.eval(&s(-1, 2)), s(1, 2));
        assert_eq!(f.eval(&s(2, 1)), s(0, 1));
        assert_eq!(f.eval(&s(-5, 1)), s(0, 1));
    }

    #[test]
    fn sign_ramp_matches_signlike_function() {
        // -1 below -1, x on (-1, 1), +1 above
        let f = sign_ramp(&s(0, 1), &s(1, 1));
        assert_eq!(f.eval(&s(7, 1)), s(1, 1));
        assert_eq!(f.eval(&s(-7, 1)), s(-1, 1));
        assert_eq!(f.eval(&s(1, 2)), s(1, 2));
    }

    #[test]
    fn cutoff_ramp_plateau_and_support() {
        let f = make_cutoff(&s(0, 1), &s(1, 1), &s(1, 1)).unwrap();
        assert_eq!(f.eval(&s(-1, 2)), s(1, 2));
        assert_eq!(f.eval(&s(1, 2)), s(1, 1));
        assert_eq!(f.eval(&s(2, 1)), s(0, 1));
        assert_eq!(f.eval(&s(0, 1)), s(1, 1));
        assert_eq!(f.eval(&s(1, 1)), s(1, 1));
        assert!(matches!(
            make_cutoff(&s(0, 1), &s(1, 1), &s(0, 1)),
            Err(CutoffError::NonpositiveDelta)
        ));
    }

    #[test]
    fn cutoff_degenerate_plateau() {
        let f = make_cutoff(&s(0, 1), &s(0, 1), &s(1, 2)).unwrap();
        assert_eq!(f.eval(&s(0, 1)), s(1, 1));
        assert_eq!(f.eval(&s(-1, 4)), s(1, 2));
        assert_eq!(f.eval(&s(1, 4)), s(1, 2));
    }

    #[test]
    fn continuity_is_enforced() {
        // step function: 0 then 1, discontinuous at 0
        let err = TestFunction::new(
            vec![s(-1, 1), s(0, 1), s(1, 1)],
            vec![Poly::constant(s(0, 1)), Poly::constant(s(1, 1))],
            s(0, 1),
            s(1, 1),
            FunctionClass::Cb,
        );
        assert!(matches!(err, Err(TestFunctionError::Discontinuity(_))));
    }

    #[test]
    fn cc_requires_zero_tails() {
        let err = TestFunction::new(
            vec![s(0, 1), s(1, 1)],
            vec![Poly::linear(s(1, 1), s(0, 1))],
            s(1, 1),
            s(1, 1),
            FunctionClass::Cc,
        );
        assert!(matches!(err, Err(TestFunctionError::NonzeroTailsForCc)));
    }

    #[test]
    fn integral_splits_at_breakpoints() {
        let f = hat(&s(0, 1), &s(1, 1));
        assert_eq!(f.integral(&s(-1, 1), &s(1, 1)), s(1, 1));
        assert_eq!(f.integral(&s(-2, 1), &s(2, 1)), s(1, 1));
        assert_eq!(f.integral(&s(0, 1), &s(1, 2)), s(3, 8));
    }

    #[test]
    fn sup_abs_includes_interior_extrema() {
        // x(1-x) on [0,1]: max 1/4 at x = 1/2
        let f = TestFunction::new(
            vec![s(0, 1), s(1, 1)],
            vec![Poly(vec![s(0, 1), s(1, 1), s(-1, 1)])],
            s(0, 1),
            s(0, 1),
            FunctionClass::Cc,
        )
        .unwrap();
        assert_eq!(f.sup_abs(), s(1, 4));
    }

    #[test]
    fn eval_agrees_from_both_sides_at_breakpoints() {
        let f = hat(&s(1, 3), &s(1, 2));
        for x in f.breakpoints() {
            let eps = s(1, 1000000);
            let left = f.eval(&(x - &eps));
            let right = f.eval(&(x + &eps));
            let mid = f.eval(x);
            assert!((&left - &mid).abs() < s(1, 1000));
            assert!((&right - &mid).abs() < s(1, 1000));
        }
    }
}
