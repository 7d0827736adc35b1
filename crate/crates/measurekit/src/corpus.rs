//! Built-in example sequences, each bundled with closed-form facts and the
//! verdicts the default configuration is expected to reproduce.

use std::sync::Arc;

use crate::bv::{distribution_function, Centre};
use crate::calculus::{integrate, tv_norm};
use crate::measure::Measure;
use crate::scalar::Scalar;
use crate::sequences::MeasureSequence;
use crate::testfn::TestFunction;
use crate::verdict::{Schedule, Status};

/// A closed-form identity `observed(n) == expected(n)` valid for `n >= min_n`.
#[derive(Clone)]
pub struct ExactFact {
    pub description: String,
    pub min_n: u64,
    pub expected: Arc<dyn Fn(u64) -> Scalar + Send + Sync>,
    pub observed: Arc<dyn Fn(u64) -> Scalar + Send + Sync>,
}

impl ExactFact {
    fn new(
        description: &str,
        min_n: u64,
        expected: impl Fn(u64) -> Scalar + Send + Sync + 'static,
        observed: impl Fn(u64) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        ExactFact {
            description: description.to_string(),
            min_n,
            expected: Arc::new(expected),
            observed: Arc::new(observed),
        }
    }

    /// Checks the identity at one index; returns the shared value, or the
    /// disagreeing pair.
    pub fn verify(&self, n: u64) -> Result<Scalar, (Scalar, Scalar)> {
        let want = (self.expected)(n);
        let got = (self.observed)(n);
        if want == got {
            Ok(want)
        } else {
            Err((want, got))
        }
    }
}

pub struct CorpusEntry {
    pub id: &'static str,
    pub sequence: MeasureSequence,
    pub limit: Measure,
    pub schedule: Schedule,
    pub expected: Vec<(&'static str, Status)>,
    pub facts: Vec<ExactFact>,
}

fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// `delta_n - delta_{-n}`: vague limit zero with preserved signed mass, but
/// all variation mass escapes to infinity.
pub fn example_2_1(n: u64) -> Measure {
    let n = Scalar::from_int(n as i64);
    Measure::dirac(n.clone()).sub(&Measure::dirac(-n))
}

/// `delta_{1/n}`: converges weakly to `delta_0`, but the distribution
/// functions centred at the limiting atom do not converge left of it.
pub fn remark_3_2a(n: u64) -> Measure {
    Measure::dirac(s(1, n as i64))
}

/// Derivative of the spike supported on `[0, 2/n]` with peak height `2^n`
/// at `1/n`: density `n 2^n` on `[0, 1/n)` and `-n 2^n` on `[1/n, 2/n)`.
pub fn example_3_3(n: u64) -> Measure {
    let slope = Scalar::from_int(n as i64) * Scalar::two_pow(n as i64);
    Measure::from_density(vec![
        (Scalar::zero(), s(1, n as i64), slope.clone()),
        (s(1, n as i64), s(2, n as i64), -slope),
    ])
}

/// `delta_0 - delta_{1/n}`: converges weakly to zero while keeping total
/// variation norm 2 and persistent mass at the origin.
pub fn example_3_4(n: u64) -> Measure {
    Measure::dirac(Scalar::zero()).sub(&Measure::dirac(s(1, n as i64)))
}

fn sawtooth(n: u64, grid_exp: i64, extent_exp: i64) -> Measure {
    // derivative of the sawtooth that is linear between k*2^{-grid_exp}
    // with heights (k mod 2)*2^{-n}; slopes alternate by parity of k
    let step = Scalar::two_pow(-grid_exp);
    let slope = Scalar::two_pow(grid_exp - n as i64);
    let k_max: i64 = 1 << extent_exp;
    let mut pieces = Vec::with_capacity((2 * k_max) as usize);
    for k in -k_max..k_max {
        let a = Scalar::from_int(k) * step.clone();
        let b = Scalar::from_int(k + 1) * step.clone();
        let value = if k.rem_euclid(2) == 0 { slope.clone() } else { -slope.clone() };
        pieces.push((a, b, value));
    }
    Measure::from_density(pieces)
}

/// Sawtooth derivative on `[-2^{-n}, 2^{-n}]` with teeth of width `2^{-2n}`
/// and height `2^{-n}`: density alternates between `2^n` and `-2^n`.
pub fn example_3_8(n: u64) -> Measure {
    sawtooth(n, 2 * n as i64, n as i64)
}

/// Sawtooth derivative on `[-1, 1]` with teeth of width `2^{-n}` and height
/// `2^{-n}`: density alternates between `1` and `-1`, so `|mu_n|` is
/// Lebesgue measure on `[-1, 1)` for every n.
pub fn example_3_10(n: u64) -> Measure {
    sawtooth(n, n as i64, n as i64)
}

/// Sup of `|F| ` for the centred distribution function of a purely
/// continuous measure: attained at a density piece endpoint or a tail.
fn sup_abs_distfun(m: &Measure) -> Scalar {
    assert!(m.atoms().is_empty(), "sup search assumes a continuous measure");
    let f = distribution_function(m, &Centre::Finite(Scalar::zero()));
    let mut best = f.eval(&Centre::NegInf).abs();
    // F is linear on each piece, so its extrema over the support sit at
    // piece endpoints; accumulate them in one pass
    let mut value = match m.density().first() {
        Some(first) => f.eval_at(&first.a),
        None => return best,
    };
    best = best.max(value.abs());
    for piece in m.density() {
        value = value + piece.value.clone() * (&piece.b - &piece.a);
        best = best.max(value.abs());
    }
    best
}

fn unit_hat() -> TestFunction {
    crate::testfn::hat(&Scalar::zero(), &Scalar::one())
}

pub fn all() -> Vec<CorpusEntry> {
    use Status::{Fails, Holds};
    let full = Schedule::default_full;
    let dyadic = Schedule::default_dyadic;
    let two = || Scalar::from_int(2);
    let zero = |_: u64| Scalar::zero();

    vec![
        CorpusEntry {
            id: "example_2_1",
            sequence: MeasureSequence::new("delta_n - delta_{-n}", example_2_1),
            limit: Measure::zero(),
            schedule: full(),
            expected: vec![
                ("vague", Holds),
                ("weak", Fails),
                ("compactified_weak", Holds),
                ("tightness", Fails),
                ("signed_mass", Holds),
                ("norm_limsup", Fails),
                ("bounded_on_compacts", Holds),
                ("no_mass[0]", Holds),
                ("no_mass[+inf]", Fails),
                ("distfun[centre=0]", Holds),
                ("jordan_vague", Holds),
                ("jordan_weak", Fails),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 2", 1, move |_| two(), |n| {
                    tv_norm(&example_2_1(n))
                }),
                ExactFact::new("mu_n(R) = 0", 1, zero, |n| example_2_1(n).total_mass()),
                ExactFact::new("I_{mu_n}(sign ramp at 0) = 2", 2, |_| Scalar::from_int(2), |n| {
                    integrate(&example_2_1(n), &crate::testfn::sign_ramp(&Scalar::zero(), &Scalar::one()))
                }),
                ExactFact::new("I_{mu_n}(unit hat) = 0", 2, zero, |n| {
                    integrate(&example_2_1(n), &unit_hat())
                }),
            ],
        },
        CorpusEntry {
            id: "remark_3_2a",
            sequence: MeasureSequence::new("delta_{1/n}", remark_3_2a),
            limit: Measure::dirac(Scalar::zero()),
            schedule: full(),
            expected: vec![
                ("vague", Holds),
                ("weak", Holds),
                ("compactified_weak", Holds),
                ("tightness", Holds),
                ("signed_mass", Holds),
                ("norm_limsup", Holds),
                ("bounded_on_compacts", Holds),
                ("no_mass[0]", Fails),
                ("no_mass[+inf]", Holds),
                ("distfun[centre=0]", Fails),
                ("jordan_vague", Holds),
                ("jordan_weak", Holds),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 1", 1, |_| Scalar::one(), |n| {
                    tv_norm(&remark_3_2a(n))
                }),
                ExactFact::new("F^(0)(-1) = 0", 1, zero, |n| {
                    distribution_function(&remark_3_2a(n), &Centre::Finite(Scalar::zero()))
                        .eval_at(&s(-1, 1))
                }),
            ],
        },
        CorpusEntry {
            id: "example_3_3",
            sequence: MeasureSequence::new("spike derivative on [0, 2/n]", example_3_3),
            limit: Measure::zero(),
            schedule: full(),
            expected: vec![
                ("vague", Fails),
                ("weak", Fails),
                ("compactified_weak", Fails),
                ("tightness", Holds),
                ("signed_mass", Holds),
                ("norm_limsup", Fails),
                ("bounded_on_compacts", Fails),
                ("no_mass[0]", Fails),
                ("no_mass[+inf]", Holds),
                ("distfun[centre=0]", Holds),
                ("jordan_vague", Fails),
                ("jordan_weak", Fails),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 2^{n+1}", 1, |n| Scalar::two_pow(n as i64 + 1), |n| {
                    tv_norm(&example_3_3(n))
                }),
                ExactFact::new("F^(0)(1/n) = 2^n", 1, |n| Scalar::two_pow(n as i64), |n| {
                    distribution_function(&example_3_3(n), &Centre::Finite(Scalar::zero()))
                        .eval_at(&s(1, n as i64))
                }),
                ExactFact::new("I_{mu_n}(unit hat) = 2^n/n", 2, |n| {
                    Scalar::two_pow(n as i64) / Scalar::from_int(n as i64)
                }, |n| integrate(&example_3_3(n), &unit_hat())),
                ExactFact::new("mu_n(R) = 0", 1, zero, |n| example_3_3(n).total_mass()),
            ],
        },
        CorpusEntry {
            id: "example_3_4",
            sequence: MeasureSequence::new("delta_0 - delta_{1/n}", example_3_4),
            limit: Measure::zero(),
            schedule: full(),
            expected: vec![
                ("vague", Holds),
                ("weak", Holds),
                ("compactified_weak", Holds),
                ("tightness", Holds),
                ("signed_mass", Holds),
                ("norm_limsup", Fails),
                ("bounded_on_compacts", Holds),
                ("no_mass[0]", Fails),
                ("no_mass[+inf]", Holds),
                ("distfun[centre=0]", Fails),
                ("jordan_vague", Fails),
                ("jordan_weak", Fails),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 2", 1, move |_| two(), |n| {
                    tv_norm(&example_3_4(n))
                }),
                ExactFact::new("mu_n(R) = 0", 1, zero, |n| example_3_4(n).total_mass()),
                ExactFact::new("F^(0)(1) = -1", 1, |_| -Scalar::one(), |n| {
                    distribution_function(&example_3_4(n), &Centre::Finite(Scalar::zero()))
                        .eval_at(&Scalar::one())
                }),
            ],
        },
        CorpusEntry {
            id: "example_3_8",
            sequence: MeasureSequence::new("sawtooth derivative on [-2^-n, 2^-n]", example_3_8),
            limit: Measure::zero(),
            schedule: dyadic(),
            expected: vec![
                ("vague", Holds),
                ("weak", Holds),
                ("compactified_weak", Holds),
                ("tightness", Holds),
                ("signed_mass", Holds),
                ("norm_limsup", Fails),
                ("bounded_on_compacts", Holds),
                ("no_mass[0]", Fails),
                ("no_mass[+inf]", Holds),
                ("distfun[centre=0]", Holds),
                ("jordan_vague", Fails),
                ("jordan_weak", Fails),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 2", 1, move |_| two(), |n| {
                    tv_norm(&example_3_8(n))
                }),
                ExactFact::new("sup |F^(0)| = 2^-n", 1, |n| Scalar::two_pow(-(n as i64)), |n| {
                    sup_abs_distfun(&example_3_8(n))
                }),
                ExactFact::new("mu_n(R) = 0", 1, zero, |n| example_3_8(n).total_mass()),
            ],
        },
        CorpusEntry {
            id: "example_3_10",
            sequence: MeasureSequence::new("sawtooth derivative on [-1, 1]", example_3_10),
            limit: Measure::zero(),
            schedule: dyadic(),
            expected: vec![
                ("vague", Holds),
                ("weak", Holds),
                ("compactified_weak", Holds),
                ("tightness", Holds),
                ("signed_mass", Holds),
                ("norm_limsup", Fails),
                ("bounded_on_compacts", Holds),
                ("no_mass[0]", Holds),
                ("no_mass[+inf]", Holds),
                ("distfun[centre=0]", Holds),
                ("jordan_vague", Fails),
                ("jordan_weak", Fails),
            ],
            facts: vec![
                ExactFact::new("||mu_n|| = 2", 1, move |_| two(), |n| {
                    tv_norm(&example_3_10(n))
                }),
                ExactFact::new("sup |F^(0)| = 2^-n", 1, |n| Scalar::two_pow(-(n as i64)), |n| {
                    sup_abs_distfun(&example_3_10(n))
                }),
                ExactFact::new("|mu_n|(B_{1/8}(0)) = 1/4", 3, |_| s(1, 4), |n| {
                    crate::calculus::variation(&example_3_10(n))
                        .measure_of_set(&crate::set::RealSet::ball(&Scalar::zero(), &s(1, 8)))
                }),
                ExactFact::new("mu_n(R) = 0", 1, zero, |n| example_3_10(n).total_mass()),
            ],
        },
    ]
}

pub fn by_id(id: &str) -> Option<CorpusEntry> {
    all().into_iter().find(|e| e.id == id)
}

pub fn ids() -> Vec<&'static str> {
    all().iter().map(|e| e.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::variation;
    use crate::set::RealSet;

    #[test]
    fn generators_match_closed_forms() {
        // atoms of delta_n - delta_{-n}
        let m = example_2_1(1);
        assert_eq!(m.atoms().len(), 2);
        assert_eq!(m.atoms()[0].x, s(-1, 1));
        assert_eq!(m.atoms()[0].w, s(-1, 1));
        assert_eq!(m.atoms()[1].x, Scalar::one());
        assert_eq!(m.atoms()[1].w, Scalar::one());

        let m = remark_3_2a(2);
        assert_eq!(m.atoms()[0].x, s(1, 2));
        assert_eq!(m.atoms()[0].w, Scalar::one());

        let m = example_3_3(2);
        assert_eq!(m.density().len(), 2);
        assert_eq!(m.density()[0].value, Scalar::from_int(8));
        assert_eq!(m.density()[1].value, Scalar::from_int(-8));
        assert_eq!(m.density()[0].b, s(1, 2));

        let m = example_3_4(3);
        assert_eq!(m.atoms()[0].w, Scalar::one());
        assert_eq!(m.atoms()[1].x, s(1, 3));
        assert_eq!(m.atoms()[1].w, s(-1, 1));
    }

    #[test]
    fn sawtooth_support_and_slopes() {
        let m = example_3_8(3);
        let pieces = m.density();
        assert_eq!(pieces.len(), 16);
        assert_eq!(pieces[0].a, s(-1, 8));
        assert_eq!(pieces.last().unwrap().b, s(1, 8));
        assert!(pieces.iter().all(|p| p.value.abs() == Scalar::from_int(8)));

        // |mu_n| of the wide sawtooth is Lebesgue measure on [-1, 1)
        for n in 1..=5 {
            let v = variation(&example_3_10(n));
            assert!(v.atoms().is_empty());
            assert_eq!(v.density().len(), 1);
            assert_eq!(v.density()[0].a, s(-1, 1));
            assert_eq!(v.density()[0].b, Scalar::one());
            assert_eq!(v.density()[0].value, Scalar::one());
        }
    }

    #[test]
    fn exact_facts_hold_on_small_indices() {
        for entry in all() {
            for fact in &entry.facts {
                for n in entry.schedule.indices.iter().filter(|&&n| n >= fact.min_n && n <= 64) {
                    if let Err((want, got)) = fact.verify(*n) {
                        panic!(
                            "{} / {} at n={}: expected {}, got {}",
                            entry.id, fact.description, n, want, got
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn escaping_neighbourhood_mass() {
        // mass of the wide sawtooth near any point is the window width
        let v = variation(&example_3_10(4));
        let ball = RealSet::ball(&s(1, 3), &s(1, 4));
        assert_eq!(v.measure_of_set(&ball), s(1, 2));
    }
}
