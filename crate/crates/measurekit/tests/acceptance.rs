//! End-to-end acceptance checks: exact closed-form values on the built-in
//! corpus, structural round trips, randomized algebraic identities against
//! independent oracles, golden classification reports, implication audits,
//! and determinism.
//!
//! Golden files live in tests/golden; regenerate with UPDATE_GOLDEN=1.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use measurekit::bv::sample_bv;
use measurekit::corpus::{self, example_2_1, example_3_10, example_3_3, example_3_4, example_3_8};
use measurekit::sequences::{audit_implications, classify, run_checks, CheckParams};
use measurekit::testfn::{hat, sign_ramp};
use measurekit::{
    distribution_function, integrate, jordan, measure_from_bv, tv_norm, variation, Centre,
    Measure, RealSet, Scalar, Schedule, TestFamily, TestFunction,
};

fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

// -------------------------------------------------------------------------
// 1. exact closed-form values
// -------------------------------------------------------------------------

#[test]
fn exact_values_spike_sequence() {
    // the spike derivative against the unit hat grows like 2^n/n
    let f = hat(&Scalar::zero(), &Scalar::one());
    for n in 2..=10u64 {
        let value = integrate(&example_3_3(n), &f);
        assert_eq!(value, Scalar::two_pow(n as i64) / Scalar::from_int(n as i64));
        // cross-check with the integration-by-parts oracle
        assert_eq!(value, ibp_oracle(&example_3_3(n), &f, &Centre::Finite(Scalar::zero())));
    }
    assert_eq!(integrate(&example_3_3(2), &f), Scalar::from_int(2));
}

#[test]
fn exact_values_escaping_dipole() {
    let sign = sign_ramp(&Scalar::zero(), &Scalar::one());
    let f = hat(&Scalar::zero(), &Scalar::one());
    for n in 2..=12u64 {
        assert_eq!(integrate(&example_2_1(n), &sign), Scalar::from_int(2));
        assert_eq!(integrate(&example_2_1(n), &f), Scalar::zero());
    }
}

#[test]
fn exact_values_distribution_functions() {
    // delta_0 - delta_{1/n}: F centred at 0 equals -1 from 1/n onwards
    for (n, x) in [(1u64, s(1, 1)), (2, s(1, 1)), (3, s(1, 2)), (10, s(1, 5)), (7, s(1, 7))] {
        assert!(Scalar::from_int(n as i64) >= x.clone().recip());
        let f = distribution_function(&example_3_4(n), &Centre::Finite(Scalar::zero()));
        assert_eq!(f.eval_at(&x), -Scalar::one());
    }
}

#[test]
fn exact_values_narrow_sawtooth() {
    for n in 1..=10u64 {
        let m = example_3_8(n);
        assert_eq!(tv_norm(&m), Scalar::from_int(2));
        let f = distribution_function(&m, &Centre::Finite(Scalar::zero()));
        // peak of |F| sits at the odd grid points
        let peak = f.eval_at(&Scalar::two_pow(-2 * (n as i64)));
        assert_eq!(peak.abs(), Scalar::two_pow(-(n as i64)));
        // sup |F|: accumulate F across the consecutive pieces
        let mut value = f.eval_at(&m.density()[0].a);
        let mut sup = value.abs();
        for p in m.density() {
            value = value + p.value.clone() * (&p.b - &p.a);
            sup = sup.max(value.abs());
        }
        assert_eq!(sup, Scalar::two_pow(-(n as i64)));
    }
}

#[test]
fn exact_values_wide_sawtooth_neighbourhood_mass() {
    for n in 3..=10u64 {
        let v = variation(&example_3_10(n));
        for eps in [s(1, 4), s(1, 2), Scalar::one()] {
            let half = eps.clone() / Scalar::from_int(2);
            let ball = RealSet::ball(&Scalar::zero(), &half);
            assert_eq!(v.measure_of_set(&ball), eps);
        }
    }
}

// -------------------------------------------------------------------------
// 2. distribution-function round trip
// -------------------------------------------------------------------------

fn corpus_measures() -> Vec<Measure> {
    let mut out = Vec::new();
    for n in [1u64, 2, 3, 5, 8] {
        out.push(example_2_1(n));
        out.push(corpus::remark_3_2a(n));
        out.push(example_3_3(n));
        out.push(example_3_4(n));
        out.push(example_3_8(n));
        out.push(example_3_10(n));
    }
    out.push(Measure::zero());
    out
}

#[test]
fn bv_round_trip_and_variation_identity() {
    let centres = [
        Centre::NegInf,
        Centre::Finite(Scalar::zero()),
        Centre::Finite(s(1, 3)),
        Centre::PosInf,
    ];
    for m in corpus_measures() {
        for centre in &centres {
            let f = distribution_function(&m, centre);
            assert_eq!(measure_from_bv(&f), m);
            // the measure of the variation function is the variation measure
            assert_eq!(f.variation_function().measure(), &variation(&m));
            // and the up/down parts carry the Jordan parts
            let (up, down) = f.updown_parts();
            let (plus, minus) = jordan(&m);
            assert_eq!(up.measure(), &plus);
            assert_eq!(down.measure(), &minus);
        }
    }
}

// -------------------------------------------------------------------------
// 3. Jordan identities on random measures
// -------------------------------------------------------------------------

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-48..=48i64);
    let den = rng.gen_range(1..=16i64);
    s(num, den)
}

/// Random atoms plus a random sawtooth-style density: consecutive pieces
/// with signed slopes over a random grid.
fn random_measure(rng: &mut ChaCha8Rng) -> Measure {
    let mut atoms = Vec::new();
    for _ in 0..rng.gen_range(0..5usize) {
        let w = random_scalar(rng);
        if !w.is_zero() {
            atoms.push((random_scalar(rng), w));
        }
    }
    let mut pieces = Vec::new();
    let mut x = random_scalar(rng);
    for _ in 0..rng.gen_range(0..6usize) {
        let width = s(rng.gen_range(1..=8i64), rng.gen_range(1..=8i64));
        let next = &x + &width;
        let slope = random_scalar(rng);
        if !slope.is_zero() {
            pieces.push((x.clone(), next.clone(), slope));
        }
        x = next;
    }
    Measure::from_atoms(atoms).add(&Measure::from_density(pieces))
}

#[test]
fn jordan_identities_on_random_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a6f7264616e);
    let half = s(1, 2);
    for _ in 0..200 {
        let m = random_measure(&mut rng);
        let (plus, minus) = jordan(&m);
        let var = variation(&m);
        assert!(plus.is_positive());
        assert!(minus.is_positive());
        assert_eq!(plus.sub(&minus), m);
        assert_eq!(plus.add(&minus), var);
        assert_eq!(tv_norm(&m), tv_norm(&plus) + tv_norm(&minus));
        // half-sum identities
        assert_eq!(plus, var.add(&m).scale(&half));
        assert_eq!(minus, var.sub(&m).scale(&half));
    }
}

// -------------------------------------------------------------------------
// 4. integration by parts
// -------------------------------------------------------------------------

/// Independent oracle: -int f' F over the support of f, computed from
/// scratch by splitting at breakpoints, atoms, and density endpoints.
/// Valid for piecewise-linear compactly supported f.
fn ibp_oracle(m: &Measure, f: &TestFunction, centre: &Centre) -> Scalar {
    let bv = distribution_function(m, centre);
    let mut cuts: Vec<Scalar> = f.breakpoints().to_vec();
    for a in m.atoms() {
        cuts.push(a.x.clone());
    }
    for p in m.density() {
        cuts.push(p.a.clone());
        cuts.push(p.b.clone());
    }
    cuts.sort();
    cuts.dedup();
    let mut total = Scalar::zero();
    for w in cuts.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let mid_num = p + q;
        let mid = mid_num / Scalar::from_int(2);
        let slope = f.poly_at(&mid).derivative().eval(&mid);
        if slope.is_zero() {
            continue;
        }
        // F is linear on (p, q) with slope equal to the density value there
        let v = m
            .density()
            .iter()
            .find(|piece| piece.a <= mid && mid < piece.b)
            .map(|piece| piece.value.clone())
            .unwrap_or_else(Scalar::zero);
        let len = q - p;
        let seg = bv.eval_at(p) * len.clone() + v * len.clone() * len / Scalar::from_int(2);
        total = total + slope * seg;
    }
    -total
}

/// Random piecewise-linear compactly supported test function: a continuous
/// broken line through random rational knots, clamped to zero at the ends.
fn random_cc_function(rng: &mut ChaCha8Rng) -> TestFunction {
    let knots = rng.gen_range(2..6usize);
    let mut xs = Vec::new();
    let mut x = random_scalar(rng);
    xs.push(x.clone());
    for _ in 0..knots {
        x = &x + &s(rng.gen_range(1..=9i64), rng.gen_range(1..=4i64));
        xs.push(x.clone());
    }
    let mut ys = vec![Scalar::zero()];
    for _ in 1..knots {
        ys.push(random_scalar(rng));
    }
    ys.push(Scalar::zero());
    let mut pieces = Vec::new();
    for i in 0..knots {
        let slope = (&ys[i + 1] - &ys[i]) / (&xs[i + 1] - &xs[i]);
        // value at x: y_i + slope (x - x_i)
        let c0 = &ys[i] - &(slope.clone() * xs[i].clone());
        pieces.push(measurekit::Poly(vec![c0, slope]));
    }
    TestFunction::new(
        xs,
        pieces,
        Scalar::zero(),
        Scalar::zero(),
        measurekit::FunctionClass::Cc,
    )
    .expect("random broken line is a valid test function")
}

#[test]
fn integration_by_parts_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x696270);
    let measures = corpus_measures();
    for i in 0..100 {
        let m = &measures[rng.gen_range(0..measures.len())];
        let f = random_cc_function(&mut rng);
        let centre = if i % 2 == 0 {
            Centre::NegInf
        } else {
            Centre::Finite(random_scalar(&mut rng))
        };
        assert_eq!(integrate(m, &f), ibp_oracle(m, &f, &centre));
    }
}

// -------------------------------------------------------------------------
// 5. classification reports against golden files
// -------------------------------------------------------------------------

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn render_report(id: &str) -> String {
    let entry = corpus::by_id(id).expect("known corpus id");
    let family = TestFamily::default_family();
    let params = CheckParams::default();
    let report = classify(
        entry.id,
        &entry.sequence,
        &entry.limit,
        &family,
        &entry.schedule,
        &params,
    );
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    text
}

#[test]
fn classification_matches_golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for entry in corpus::all() {
        let text = render_report(entry.id);

        // the report must reproduce the expected verdicts
        let report: measurekit::ClassifyReport = serde_json::from_str(&text).unwrap();
        for (name, status) in &entry.expected {
            let found = report
                .checks
                .iter()
                .find(|c| c.name == *name)
                .unwrap_or_else(|| panic!("{}: missing check {}", entry.id, name));
            assert_eq!(
                &found.verdict.status, status,
                "{}: check {} expected {:?}",
                entry.id, name, status
            );
        }
        for row in &report.table1 {
            assert!(row.consistent, "{}: table row {} inconsistent", entry.id, row.row);
        }
        assert!(report.defects.is_empty(), "{}: defects {:?}", entry.id, report.defects);

        let path = golden_path(&format!("{}.json", entry.id));
        if update {
            std::fs::write(&path, &text).unwrap();
        } else {
            let want = std::fs::read_to_string(&path)
                .unwrap_or_else(|_| panic!("missing golden file {:?}; run with UPDATE_GOLDEN=1", path));
            assert_eq!(text, want, "{}: report drifted from golden file", entry.id);
        }
    }
}

// -------------------------------------------------------------------------
// 6. implication audits
// -------------------------------------------------------------------------

/// Random positive sequences with known limits: shrinking perturbations,
/// drifting translates, and escaping mass.
fn random_positive_sequence(
    rng: &mut ChaCha8Rng,
) -> (measurekit::MeasureSequence, Measure) {
    let base = {
        let m = random_measure(rng);
        variation(&m)
    };
    let noise = {
        let m = random_measure(rng);
        variation(&m).scale(&s(1, 4))
    };
    match rng.gen_range(0..3u8) {
        0 => {
            // base + noise/n
            let limit = base.clone();
            let seq = measurekit::MeasureSequence::new("base+noise/n", move |n| {
                base.add(&noise.scale(&s(1, n as i64)))
            });
            (seq, limit)
        }
        1 => {
            // translate of base by 1/n
            let limit = base.clone();
            let seq = measurekit::MeasureSequence::new("translate", move |n| {
                let shift = s(1, n as i64);
                let atoms = base
                    .atoms()
                    .iter()
                    .map(|a| (&a.x + &shift, a.w.clone()))
                    .collect();
                let density = base
                    .density()
                    .iter()
                    .map(|p| (&p.a + &shift, &p.b + &shift, p.value.clone()))
                    .collect();
                Measure::from_atoms(atoms).add(&Measure::from_density(density))
            });
            (seq, limit)
        }
        _ => {
            // base + an escaping unit atom
            let limit = base.clone();
            let seq = measurekit::MeasureSequence::new("escape", move |n| {
                base.add(&Measure::dirac(Scalar::from_int(n as i64)))
            });
            (seq, limit)
        }
    }
}

#[test]
fn implication_audits_on_corpus() {
    let family = TestFamily::default_family();
    let params = CheckParams::default();
    for entry in corpus::all() {
        let set = run_checks(&entry.sequence, &entry.limit, &family, &entry.schedule, &params);
        let findings = audit_implications(&set);
        assert!(findings.is_empty(), "{}: {:?}", entry.id, findings);
    }
}

#[test]
fn implication_audits_on_random_positive_sequences() {
    let family = TestFamily::default_family();
    let params = CheckParams::default();
    let schedule = Schedule::default_full();
    let mut rng = ChaCha8Rng::seed_from_u64(0x706f73);
    for i in 0..50 {
        let (seq, limit) = random_positive_sequence(&mut rng);
        let set = run_checks(&seq, &limit, &family, &schedule, &params);
        let findings = audit_implications(&set);
        assert!(findings.is_empty(), "case {} ({}): {:?}", i, seq.label, findings);
        assert!(set.positive);
    }
}

// -------------------------------------------------------------------------
// 7. determinism
// -------------------------------------------------------------------------

#[test]
fn reports_are_deterministic() {
    for id in ["example_2_1", "example_3_4"] {
        assert_eq!(render_report(id), render_report(id));
    }
}

#[test]
fn corpus_facts_all_hold_on_schedule() {
    for entry in corpus::all() {
        for fact in &entry.facts {
            for n in entry.schedule.indices.iter().filter(|&&n| n >= fact.min_n) {
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
fn bv_sampler_reproduces_figures() {
    // the spike at n=1 has F(1) = 2
    let f = distribution_function(&example_3_3(1), &Centre::Finite(Scalar::zero()));
    let rows = sample_bv(&f, &Scalar::zero(), &Scalar::from_int(2), &Scalar::one());
    assert_eq!(rows[1], (Scalar::one(), Scalar::from_int(2)));
    // narrow sawtooth at n=2 stays within [-1/4, 1/4]
    let f = distribution_function(&example_3_8(2), &Centre::Finite(Scalar::zero()));
    for (_, y) in sample_bv(&f, &s(-1, 4), &s(1, 4), &s(1, 64)) {
        assert!(y.abs() <= s(1, 4));
    }
}
