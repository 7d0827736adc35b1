//! Randomized structural invariants of the kernel types.

use proptest::prelude::*;

use measurekit::testfn::hat;
use measurekit::{
    distribution_function, integrate, jordan, measure_from_bv, tv_norm, variation, Centre,
    Measure, RealSet, Scalar,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-64i64..=64, 1i64..=12).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn measure() -> impl Strategy<Value = Measure> {
    let atoms = prop::collection::vec((scalar(), scalar()), 0..4)
        .prop_map(|pairs| Measure::from_atoms(pairs.into_iter().filter(|(_, w)| !w.is_zero()).collect()));
    let density = prop::collection::vec((scalar(), 1i64..=6, scalar()), 0..4).prop_map(|triples| {
        let pieces = triples
            .into_iter()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(a, w, v)| {
                let b = &a + &Scalar::ratio(w, 2);
                (a, b, v)
            })
            .collect();
        Measure::from_density(pieces)
    });
    (atoms, density).prop_map(|(a, d)| a.add(&d))
}

fn bounded_interval() -> impl Strategy<Value = RealSet> {
    (scalar(), 1i64..=10, any::<bool>(), any::<bool>()).prop_map(|(a, w, lc, hc)| {
        let b = &a + &Scalar::from_int(w);
        RealSet::interval(
            measurekit::Endpoint::Finite(a),
            lc,
            measurekit::Endpoint::Finite(b),
            hc,
        )
    })
}

proptest! {
    #[test]
    fn de_morgan(a in bounded_interval(), b in bounded_interval()) {
        let lhs = a.union(&b).complement();
        let rhs = a.complement().intersect(&b.complement());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn complement_involution(a in bounded_interval(), b in bounded_interval()) {
        let set = a.union(&b);
        prop_assert_eq!(set.complement().complement(), set);
    }

    #[test]
    fn additivity_on_partition(m in measure(), set in bounded_interval()) {
        let inside = m.measure_of_set(&set);
        let outside = m.measure_of_set(&set.complement());
        prop_assert_eq!(inside + outside, m.total_mass());
    }

    #[test]
    fn measure_algebra(m in measure(), n in measure(), c in scalar()) {
        prop_assert_eq!(m.add(&n), n.add(&m));
        prop_assert_eq!(m.sub(&m), Measure::zero());
        prop_assert_eq!(m.add(&n).scale(&c), m.scale(&c).add(&n.scale(&c)));
        let combo = Measure::linear_combine(
            &[Scalar::one(), c.clone()],
            &[&m, &n],
        );
        prop_assert_eq!(combo, m.add(&n.scale(&c)));
    }

    #[test]
    fn jordan_split_is_minimal(m in measure()) {
        let (plus, minus) = jordan(&m);
        prop_assert_eq!(plus.sub(&minus), m.clone());
        prop_assert_eq!(plus.add(&minus), variation(&m));
        prop_assert_eq!(tv_norm(&m), tv_norm(&plus) + tv_norm(&minus));
    }

    #[test]
    fn bv_round_trip(m in measure(), alpha in scalar()) {
        let f = distribution_function(&m, &Centre::Finite(alpha));
        prop_assert_eq!(measure_from_bv(&f), m);
    }

    #[test]
    fn distribution_increments(m in measure(), a in scalar(), w in 1i64..=10) {
        // F(b) - F(a) = mu((a, b]) regardless of the centring
        let b = &a + &Scalar::from_int(w);
        let f = distribution_function(&m, &Centre::NegInf);
        let interval = RealSet::left_open(a.clone(), b.clone());
        prop_assert_eq!(f.eval_at(&b) - f.eval_at(&a), m.measure_of_set(&interval));
    }

    #[test]
    fn centring_antisymmetry(m in measure(), alpha in scalar(), t in scalar()) {
        let f_alpha = distribution_function(&m, &Centre::Finite(alpha.clone()));
        let f_t = distribution_function(&m, &Centre::Finite(t.clone()));
        prop_assert_eq!(f_alpha.eval_at(&t), -f_t.eval_at(&alpha));
    }

    #[test]
    fn integration_linear_and_bounded(m in measure(), n in measure(), c in scalar(), h in 1i64..=4) {
        let f = hat(&c, &Scalar::from_int(h));
        let lhs = integrate(&m.add(&n), &f);
        prop_assert_eq!(lhs, integrate(&m, &f) + integrate(&n, &f));
        let bound = f.sup_abs() * tv_norm(&m);
        prop_assert!(integrate(&m, &f).abs() <= bound);
    }

    #[test]
    fn restriction_is_idempotent(m in measure(), set in bounded_interval()) {
        let r = m.restrict(&set);
        prop_assert_eq!(r.restrict(&set), r.clone());
        prop_assert_eq!(r.total_mass(), m.measure_of_set(&set));
    }
}
