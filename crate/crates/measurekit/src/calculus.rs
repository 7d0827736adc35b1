//! Exact integration and the Hahn-Jordan calculus of kernel measures.

use crate::measure::{DensityPiece, Measure};
use crate::scalar::Scalar;
use crate::set::RealSet;
use crate::testfn::TestFunction;

/// `I_mu(f)`: the exact integral of `f` against `mu`. Linear in both
/// arguments.
pub fn integrate(mu: &Measure, f: &TestFunction) -> Scalar {
    let mut total = Scalar::zero();
    for atom in mu.atoms() {
        total += &(&atom.w * &f.eval(&atom.x));
    }
    // pieces entirely outside the span of a compactly supported f
    // contribute nothing
    let span = match f.class() {
        crate::testfn::FunctionClass::Cc => f.breakpoint_span(),
        crate::testfn::FunctionClass::Cb => None,
    };
    for piece in mu.density() {
        if let Some((lo, hi)) = &span {
            if &piece.b <= lo || &piece.a >= hi {
                continue;
            }
        }
        total += &(&piece.value * &f.integral(&piece.a, &piece.b));
    }
    total
}

/// Hahn-Jordan decomposition `(mu_plus, mu_minus)`. For this representation
/// the pointwise sign split is the minimal decomposition: atoms and density
/// pieces carry explicit signs and are mutually singular.
pub fn jordan(mu: &Measure) -> (Measure, Measure) {
    let mut plus_atoms = Vec::new();
    let mut minus_atoms = Vec::new();
    for a in mu.atoms() {
        if a.w.is_positive() {
            plus_atoms.push(a.clone());
        } else {
            let mut a = a.clone();
            a.w = -a.w;
            minus_atoms.push(a);
        }
    }
    let mut plus_density = Vec::new();
    let mut minus_density = Vec::new();
    for p in mu.density() {
        if p.value.is_positive() {
            plus_density.push(p.clone());
        } else {
            minus_density.push(DensityPiece {
                a: p.a.clone(),
                b: p.b.clone(),
                value: -&p.value,
            });
        }
    }
    (
        Measure::new(plus_atoms, plus_density),
        Measure::new(minus_atoms, minus_density),
    )
}

/// The variation measure `|mu| = mu_plus + mu_minus`.
pub fn variation(mu: &Measure) -> Measure {
    let (p, n) = jordan(mu);
    p.add(&n)
}

/// Total variation norm `||mu|| = |mu|(R)`.
pub fn tv_norm(mu: &Measure) -> Scalar {
    let mut total = Scalar::zero();
    for a in mu.atoms() {
        total += &a.w.abs();
    }
    for p in mu.density() {
        total += &(&p.value.abs() * &(&p.b - &p.a));
    }
    total
}

/// `mu(A)` for a normalized `A`.
pub fn measure_of_set(mu: &Measure, set: &RealSet) -> Scalar {
    mu.measure_of_set(set)
}

/// Restriction of `mu` to `A`.
pub fn restrict(mu: &Measure, set: &RealSet) -> Measure {
    mu.restrict(set)
}
