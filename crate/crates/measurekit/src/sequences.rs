//! Measure sequences and empirical convergence diagnostics.
//!
//! Each checker samples a sequence on a finite [`Schedule`] and certifies a
//! [`Verdict`]. Limit superior / inferior over n are estimated by tail-window
//! max / min; a `fails` verdict additionally requires a monotone-trend
//! certificate on the tail, and anything without a certificate is
//! `inconclusive`. Verdicts are evidence, never proofs.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bv::{distribution_function, Centre};
use crate::calculus::{integrate, jordan, tv_norm, variation};
use crate::family::TestFamily;
use crate::measure::Measure;
use crate::scalar::Scalar;
use crate::set::RealSet;
use crate::verdict::{limit_diagnostic, Sample, Schedule, Status, Verdict};

/// An indexed measure sequence `n |-> mu_n` (n >= 1) with a display label
/// and an optional declared limit.
#[derive(Clone)]
pub struct MeasureSequence {
    pub label: String,
    generator: Arc<dyn Fn(u64) -> Measure + Send + Sync>,
    pub declared_limit: Option<Measure>,
}

impl MeasureSequence {
    pub fn new(
        label: impl Into<String>,
        generator: impl Fn(u64) -> Measure + Send + Sync + 'static,
    ) -> Self {
        MeasureSequence {
            label: label.into(),
            generator: Arc::new(generator),
            declared_limit: None,
        }
    }

    pub fn with_limit(mut self, limit: Measure) -> Self {
        self.declared_limit = Some(limit);
        self
    }

    pub fn at(&self, n: u64) -> Measure {
        (self.generator)(n)
    }

    /// Evaluates the generator over the whole schedule (in parallel; the
    /// collected order is the schedule order, so results are deterministic).
    pub fn materialize(&self, schedule: &Schedule) -> SequenceRun {
        let measures: Vec<(u64, Measure)> = schedule
            .indices
            .par_iter()
            .map(|&n| (n, self.at(n)))
            .collect();
        let variations: Vec<(u64, Measure)> = measures
            .par_iter()
            .map(|(n, m)| (*n, variation(m)))
            .collect();
        SequenceRun {
            label: self.label.clone(),
            schedule: schedule.clone(),
            measures,
            variations,
        }
    }
}

/// A sequence evaluated on a schedule: the raw measures and their variation
/// measures, ready for the individual checkers.
pub struct SequenceRun {
    pub label: String,
    pub schedule: Schedule,
    pub measures: Vec<(u64, Measure)>,
    pub variations: Vec<(u64, Measure)>,
}

fn tail_slice<T>(items: &[T], window: usize) -> &[T] {
    &items[items.len() - window.min(items.len())..]
}

/// Conjunction of named verdicts: fails if any fails (the first failure is
/// the witness), holds if all hold, inconclusive otherwise.
fn aggregate(parts: Vec<(String, Verdict)>, what: &str) -> Verdict {
    if let Some((name, v)) = parts.iter().find(|(_, v)| v.is_fails()) {
        return Verdict::fails(
            format!("{what}: witness {name}"),
            v.evidence.clone(),
        );
    }
    if parts.iter().all(|(_, v)| v.is_holds()) {
        let evidence = parts
            .last()
            .map(|(_, v)| v.evidence.clone())
            .unwrap_or_default();
        return Verdict::holds(format!("{what}: all members agree"), evidence);
    }
    let (name, v) = parts
        .iter()
        .find(|(_, v)| !v.is_conclusive())
        .expect("some member is inconclusive");
    Verdict::inconclusive(
        format!("{what}: no certificate for {name}"),
        v.evidence.clone(),
    )
}

impl SequenceRun {
    fn tail_of<'a>(&self, values: &'a [(u64, Scalar)]) -> &'a [(u64, Scalar)] {
        tail_slice(values, self.schedule.tail_window)
    }

    fn samples_against<'a>(
        &self,
        source: &[(u64, Measure)],
        f: impl Fn(&Measure) -> Scalar + Sync,
    ) -> Vec<(u64, Scalar)> {
        source
            .par_iter()
            .map(|(n, m)| (*n, f(m)))
            .collect()
    }

    /// Convergence of `I_{mu_n}(f) -> I_mu(f)` over the given members.
    fn test_function_convergence<'a>(
        &self,
        limit: &Measure,
        members: impl Iterator<Item = &'a crate::family::FamilyMember>,
        what: &str,
    ) -> Verdict {
        let members: Vec<_> = members.collect();
        let parts: Vec<(String, Verdict)> = members
            .par_iter()
            .map(|m| {
                let samples = self.samples_against(&self.measures, |mu| integrate(mu, &m.f));
                let target = integrate(limit, &m.f);
                (m.name.clone(), limit_diagnostic(&samples, &target, &self.schedule))
            })
            .collect();
        aggregate(parts, what)
    }

    /// Vague convergence: `I_{mu_n}(f) -> I_mu(f)` over the compactly
    /// supported family members.
    pub fn check_vague(&self, limit: &Measure, family: &TestFamily) -> Verdict {
        self.test_function_convergence(limit, family.cc_members(), "vague")
    }

    /// Weak convergence: the same over every (bounded continuous) member.
    pub fn check_weak(&self, limit: &Measure, family: &TestFamily) -> Verdict {
        self.test_function_convergence(limit, family.cb_members(), "weak")
    }

    /// Weak convergence of the canonical extensions: members that extend
    /// continuously to the one-point compactification (equal tails).
    pub fn check_compactified_weak(&self, limit: &Measure, family: &TestFamily) -> Verdict {
        self.test_function_convergence(limit, family.equal_tail_members(), "compactified-weak")
    }

    /// Tightness: for each epsilon there is a radius M with tail-window
    /// max of `|mu_n|([-M, M]^c) <= epsilon`.
    pub fn check_tightness(&self, epsilons: &[Scalar], radii: &[Scalar]) -> Verdict {
        let per_eps: Vec<(String, Verdict)> = epsilons
            .iter()
            .map(|eps| {
                let v = self.escape_search(eps, radii, |radius| {
                    RealSet::closed(-radius, radius.clone()).complement()
                });
                (format!("eps={}", eps), v)
            })
            .collect();
        aggregate(per_eps, "tightness")
    }

    /// No mass at a point (finite or +-inf): for each epsilon there is a
    /// neighbourhood with tail-window max of `|mu_n|(N) <= epsilon`.
    /// Neighbourhoods of `+-inf` are realized as `(1/delta, inf)` and
    /// `(-inf, -1/delta)`.
    pub fn check_no_mass_at(
        &self,
        x: &Centre,
        epsilons: &[Scalar],
        deltas: &[Scalar],
    ) -> Verdict {
        let per_eps: Vec<(String, Verdict)> = epsilons
            .iter()
            .map(|eps| {
                let v = self.escape_search(eps, deltas, |delta| match x {
                    Centre::Finite(x) => RealSet::ball(x, delta),
                    Centre::PosInf => RealSet::above(delta.recip(), false),
                    Centre::NegInf => RealSet::below(-delta.recip(), false),
                });
                (format!("eps={}", eps), v)
            })
            .collect();
        aggregate(per_eps, &format!("no-mass[{}]", x))
    }

    // Shared search: find a parameter whose region keeps the tail variation
    // mass at or below eps. Fails only when every candidate shows an
    // out-of-bound nondecreasing tail.
    fn escape_search(
        &self,
        eps: &Scalar,
        params: &[Scalar],
        region: impl Fn(&Scalar) -> RealSet,
    ) -> Verdict {
        let mut all_fail = true;
        let mut last_evidence = Vec::new();
        for p in params {
            let set = region(p);
            let samples = self.samples_against(&self.variations, |v| v.measure_of_set(&set));
            let tail = self.tail_of(&samples);
            let evidence: Vec<Sample> = tail
                .iter()
                .map(|(n, v)| Sample { n: *n, value: v.clone() })
                .collect();
            if tail.iter().all(|(_, v)| v <= eps) {
                return Verdict::holds(
                    format!("witness region {}", set),
                    evidence,
                );
            }
            let exceeds = tail.iter().all(|(_, v)| v > eps);
            let nondecreasing = tail.windows(2).all(|w| w[0].1 <= w[1].1);
            if !(exceeds && nondecreasing) {
                all_fail = false;
            }
            last_evidence = evidence;
        }
        if all_fail {
            Verdict::fails("every candidate region keeps tail mass above eps", last_evidence)
        } else {
            Verdict::inconclusive("no region certified either way", last_evidence)
        }
    }

    /// Preservation of signed mass: `mu_n(R) -> mu(R)`.
    pub fn check_signed_mass_preservation(&self, limit: &Measure) -> Verdict {
        let samples = self.samples_against(&self.measures, |m| m.total_mass());
        limit_diagnostic(&samples, &limit.total_mass(), &self.schedule)
    }

    /// Compact upper bound: tail-window max of `|mu_n|(K)` at most
    /// `|mu|(K)` plus tolerance.
    pub fn check_compact_limsup(&self, limit: &Measure, compact: &RealSet) -> Verdict {
        let bound = variation(limit).measure_of_set(compact) + self.schedule.tolerance.clone();
        self.upper_bound_check(
            self.samples_against(&self.variations, |v| v.measure_of_set(compact)),
            &bound,
            &format!("|mu_n|({})", compact),
        )
    }

    /// Norm upper bound: tail-window max of `||mu_n||` at most `||mu||`
    /// plus tolerance.
    pub fn check_norm_limsup(&self, limit: &Measure) -> Verdict {
        let bound = tv_norm(limit) + self.schedule.tolerance.clone();
        self.upper_bound_check(
            self.samples_against(&self.measures, tv_norm),
            &bound,
            "||mu_n||",
        )
    }

    fn upper_bound_check(
        &self,
        samples: Vec<(u64, Scalar)>,
        bound: &Scalar,
        what: &str,
    ) -> Verdict {
        let tail = self.tail_of(&samples);
        let evidence: Vec<Sample> = tail
            .iter()
            .map(|(n, v)| Sample { n: *n, value: v.clone() })
            .collect();
        if tail.iter().all(|(_, v)| v <= bound) {
            return Verdict::holds(format!("{what} within bound on tail"), evidence);
        }
        let exceeds = tail.iter().all(|(_, v)| v > bound);
        let nondecreasing = tail.windows(2).all(|w| w[0].1 <= w[1].1);
        if exceeds && nondecreasing {
            return Verdict::fails(format!("{what} exceeds bound on tail"), evidence);
        }
        Verdict::inconclusive(format!("{what}: no certificate"), evidence)
    }

    /// Open lower bound: tail-window min of `|mu_n|(Theta)` at least
    /// `|mu|(Theta)` minus tolerance.
    pub fn check_open_liminf(&self, limit: &Measure, open: &RealSet) -> Verdict {
        let bound = variation(limit).measure_of_set(open) - self.schedule.tolerance.clone();
        let samples = self.samples_against(&self.variations, |v| v.measure_of_set(open));
        let tail = self.tail_of(&samples);
        let evidence: Vec<Sample> = tail
            .iter()
            .map(|(n, v)| Sample { n: *n, value: v.clone() })
            .collect();
        let what = format!("|mu_n|({})", open);
        if tail.iter().all(|(_, v)| v >= &bound) {
            return Verdict::holds(format!("{what} above bound on tail"), evidence);
        }
        let below = tail.iter().all(|(_, v)| v < &bound);
        let nonincreasing = tail.windows(2).all(|w| w[0].1 >= w[1].1);
        if below && nonincreasing {
            return Verdict::fails(format!("{what} below bound on tail"), evidence);
        }
        Verdict::inconclusive(format!("{what}: no certificate"), evidence)
    }

    /// Bounded on compacts: for each compact the tail stays inside the
    /// envelope established by the earlier samples.
    pub fn check_bounded_on_compacts(&self, compacts: &[RealSet]) -> Verdict {
        let parts: Vec<(String, Verdict)> = compacts
            .iter()
            .map(|k| (format!("K={}", k), self.bounded_on(k)))
            .collect();
        aggregate(parts, "bounded-on-compacts")
    }

    fn bounded_on(&self, compact: &RealSet) -> Verdict {
        let samples = self.samples_against(&self.variations, |v| v.measure_of_set(compact));
        let window = self.schedule.tail_window.min(samples.len().saturating_sub(1));
        let (head, tail) = samples.split_at(samples.len() - window);
        let evidence: Vec<Sample> = tail
            .iter()
            .map(|(n, v)| Sample { n: *n, value: v.clone() })
            .collect();
        let head_max = head
            .iter()
            .map(|(_, v)| v)
            .max()
            .cloned()
            .unwrap_or_else(Scalar::zero);
        let tail_max = tail
            .iter()
            .map(|(_, v)| v)
            .max()
            .cloned()
            .unwrap_or_else(Scalar::zero);
        if tail_max <= head_max {
            return Verdict::holds("tail stays inside the earlier envelope", evidence);
        }
        // strict growth alone can still saturate below a finite bound;
        // demand nondecreasing increments before certifying divergence
        let strictly_growing = tail.windows(2).all(|w| w[0].1 < w[1].1);
        let accelerating = tail
            .windows(3)
            .all(|w| &w[1].1 - &w[0].1 <= &w[2].1 - &w[1].1);
        if strictly_growing && accelerating {
            return Verdict::fails("monotone growth past the earlier envelope", evidence);
        }
        Verdict::inconclusive("envelope not yet stabilized", evidence)
    }

    /// Pointwise convergence of centred distribution functions at the given
    /// points. The centre (if finite) and every point must be continuity
    /// points of the limit.
    pub fn check_distfun_convergence(
        &self,
        limit: &Measure,
        centre: &Centre,
        points: &[Scalar],
    ) -> Result<Verdict, DistfunError> {
        if let Centre::Finite(alpha) = centre {
            if !limit.is_continuity_point(alpha) {
                return Err(DistfunError::CentreIsAtom(alpha.clone()));
            }
        }
        for x in points {
            if !limit.is_continuity_point(x) {
                return Err(DistfunError::PointIsAtom(x.clone()));
            }
        }
        let target_f = distribution_function(limit, centre);
        let parts: Vec<(String, Verdict)> = points
            .par_iter()
            .map(|x| {
                let samples = self.samples_against(&self.measures, |m| {
                    distribution_function(m, centre).eval_at(x)
                });
                let target = target_f.eval_at(x);
                (format!("x={}", x), limit_diagnostic(&samples, &target, &self.schedule))
            })
            .collect();
        Ok(aggregate(parts, &format!("distfun[centre={}]", centre)))
    }

    /// The sequence of positive (resp. negative) Hahn-Jordan parts as a new
    /// run over the same schedule.
    pub fn jordan_parts(&self) -> (SequenceRun, SequenceRun) {
        let split: Vec<(u64, (Measure, Measure))> = self
            .measures
            .par_iter()
            .map(|(n, m)| (*n, jordan(m)))
            .collect();
        let mk = |pick: fn(&(Measure, Measure)) -> &Measure, tag: &str| {
            let measures: Vec<(u64, Measure)> = split
                .iter()
                .map(|(n, pair)| (*n, pick(pair).clone()))
                .collect();
            // positive parts are their own variations
            let variations = measures.clone();
            SequenceRun {
                label: format!("{}{}", self.label, tag),
                schedule: self.schedule.clone(),
                measures,
                variations,
            }
        };
        (mk(|p| &p.0, "+"), mk(|p| &p.1, "-"))
    }

    /// True if every sampled measure is positive.
    pub fn is_positive(&self) -> bool {
        self.measures.iter().all(|(_, m)| m.is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistfunError {
    #[error("centre {0} is an atom of the limit; hypothesis requires a continuity point")]
    CentreIsAtom(Scalar),
    #[error("probe point {0} is an atom of the limit; hypothesis requires a continuity point")]
    PointIsAtom(Scalar),
}

/// Grids and probe points for the full battery of checks.
#[derive(Clone, Debug)]
pub struct CheckParams {
    pub epsilons: Vec<Scalar>,
    pub tight_radii: Vec<Scalar>,
    pub deltas: Vec<Scalar>,
    pub compact_grid: Vec<RealSet>,
    pub open_grid: Vec<RealSet>,
    pub probe_points: Vec<Scalar>,
    pub centre: Centre,
}

impl Default for CheckParams {
    fn default() -> Self {
        let s = Scalar::ratio;
        CheckParams {
            epsilons: vec![s(1, 1), s(1, 2), s(1, 4)],
            tight_radii: [1, 2, 4, 8, 16]
                .iter()
                .map(|&m| Scalar::from_int(m))
                .collect(),
            deltas: vec![s(1, 2), s(1, 4), s(1, 8), s(1, 16)],
            compact_grid: vec![
                RealSet::closed(s(-1, 1), s(1, 1)),
                RealSet::closed(s(-2, 1), s(2, 1)),
                RealSet::closed(s(-4, 1), s(4, 1)),
            ],
            open_grid: vec![
                RealSet::open(s(-2, 1), s(2, 1)),
                RealSet::open(s(0, 1), s(1, 1)),
            ],
            probe_points: vec![s(-1, 1), s(-1, 2), s(0, 1), s(1, 3), s(1, 1)],
            centre: Centre::Finite(Scalar::zero()),
        }
    }
}

/// Every verdict the classifier derives for one sequence, kept separately so
/// the implication audits can cross-examine them.
pub struct CheckSet {
    pub label: String,
    pub vague: Verdict,
    pub weak: Verdict,
    pub compactified_weak: Verdict,
    pub tightness: Verdict,
    pub signed_mass: Verdict,
    pub norm_limsup: Verdict,
    pub bounded_on_compacts: Verdict,
    pub compact_limsup: Vec<(String, Verdict)>,
    pub open_liminf: Vec<(String, Verdict)>,
    pub no_mass: Vec<(Centre, Verdict)>,
    pub distfun: Result<Verdict, DistfunError>,
    pub jordan_vague: Verdict,
    pub jordan_weak: Verdict,
    pub positive: bool,
}

impl CheckSet {
    pub fn compact_limsup_all(&self) -> Verdict {
        aggregate(self.compact_limsup.clone(), "compact-limsup")
    }

    pub fn open_liminf_all(&self) -> Verdict {
        aggregate(self.open_liminf.clone(), "open-liminf")
    }

    pub fn no_mass_finite_all(&self) -> Verdict {
        let parts: Vec<(String, Verdict)> = self
            .no_mass
            .iter()
            .filter(|(c, _)| matches!(c, Centre::Finite(_)))
            .map(|(c, v)| (format!("x={}", c), v.clone()))
            .collect();
        aggregate(parts, "no-mass-at-finite-probes")
    }

    pub fn no_mass_at(&self, c: &Centre) -> Option<&Verdict> {
        self.no_mass.iter().find(|(p, _)| p == c).map(|(_, v)| v)
    }
}

/// Runs the full battery of checks for a sequence against a declared limit.
pub fn run_checks(
    seq: &MeasureSequence,
    limit: &Measure,
    family: &TestFamily,
    schedule: &Schedule,
    params: &CheckParams,
) -> CheckSet {
    let run = seq.materialize(schedule);
    let (plus_run, minus_run) = run.jordan_parts();
    let (limit_plus, limit_minus) = jordan(limit);

    let vague = run.check_vague(limit, family);
    let weak = run.check_weak(limit, family);
    let compactified_weak = run.check_compactified_weak(limit, family);
    let tightness = run.check_tightness(&params.epsilons, &params.tight_radii);
    let signed_mass = run.check_signed_mass_preservation(limit);
    let norm_limsup = run.check_norm_limsup(limit);
    let bounded_on_compacts = run.check_bounded_on_compacts(&params.compact_grid);
    let compact_limsup: Vec<(String, Verdict)> = params
        .compact_grid
        .iter()
        .map(|k| (format!("{}", k), run.check_compact_limsup(limit, k)))
        .collect();
    let open_liminf: Vec<(String, Verdict)> = params
        .open_grid
        .iter()
        .map(|t| (format!("{}", t), run.check_open_liminf(limit, t)))
        .collect();
    let mut no_mass: Vec<(Centre, Verdict)> = params
        .probe_points
        .iter()
        .map(|x| {
            let c = Centre::Finite(x.clone());
            let v = run.check_no_mass_at(&c, &params.epsilons, &params.deltas);
            (c, v)
        })
        .collect();
    for c in [Centre::NegInf, Centre::PosInf] {
        let v = run.check_no_mass_at(&c, &params.epsilons, &params.deltas);
        no_mass.push((c, v));
    }
    // distribution functions are probed only at continuity points of the limit
    let distfun_points: Vec<Scalar> = params
        .probe_points
        .iter()
        .filter(|x| limit.is_continuity_point(x))
        .cloned()
        .collect();
    let distfun = run.check_distfun_convergence(limit, &params.centre, &distfun_points);

    let jordan_vague = aggregate(
        vec![
            ("mu_n+".to_string(), plus_run.check_vague(&limit_plus, family)),
            ("mu_n-".to_string(), minus_run.check_vague(&limit_minus, family)),
        ],
        "jordan-vague",
    );
    let jordan_weak = aggregate(
        vec![
            ("mu_n+".to_string(), plus_run.check_weak(&limit_plus, family)),
            ("mu_n-".to_string(), minus_run.check_weak(&limit_minus, family)),
        ],
        "jordan-weak",
    );
    let positive = run.is_positive() && limit.is_positive() || limit.is_zero() && run.is_positive();

    CheckSet {
        label: seq.label.clone(),
        vague,
        weak,
        compactified_weak,
        tightness,
        signed_mass,
        norm_limsup,
        bounded_on_compacts,
        compact_limsup,
        open_liminf,
        no_mass,
        distfun,
        jordan_vague,
        jordan_weak,
        positive,
    }
}

/// One finding of an implication audit: an empirical violation of a known
/// theorem-level implication, which the classifier reports as a defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditFinding {
    pub rule: String,
    pub detail: String,
}

/// Cross-examines a [`CheckSet`] against the implications the theory
/// guarantees. Inconclusive premises are skipped. An empty result means no
/// violation was observed.
pub fn audit_implications(set: &CheckSet) -> Vec<AuditFinding> {
    let mut findings = Vec::new();
    fn implied(
        findings: &mut Vec<AuditFinding>,
        label: &str,
        rule: &str,
        premise: Option<bool>,
        conclusion: Option<bool>,
    ) {
        if let (Some(true), Some(false)) = (premise, conclusion) {
            findings.push(AuditFinding {
                rule: rule.to_string(),
                detail: format!("{}: premise certified but conclusion fails", label),
            });
        }
    }
    let as_bool = |v: &Verdict| -> Option<bool> {
        match v.status {
            Status::Holds => Some(true),
            Status::Fails => Some(false),
            Status::Inconclusive => None,
        }
    };
    let and = |a: Option<bool>, b: Option<bool>| match (a, b) {
        (Some(x), Some(y)) => Some(x && y),
        (Some(false), _) | (_, Some(false)) => Some(false),
        _ => None,
    };

    let vague = as_bool(&set.vague);
    let weak = as_bool(&set.weak);
    let tight = as_bool(&set.tightness);
    let mass = as_bool(&set.signed_mass);
    let norm = as_bool(&set.norm_limsup);
    let compact = as_bool(&set.compact_limsup_all());
    let bounded = as_bool(&set.bounded_on_compacts);
    let no_mass_finite = as_bool(&set.no_mass_finite_all());
    let jordan_vague = as_bool(&set.jordan_vague);
    let jordan_weak = as_bool(&set.jordan_weak);
    let compactified = as_bool(&set.compactified_weak);
    let distfun = set.distfun.as_ref().ok().and_then(as_bool);

    // (i) weak implies vague
    implied(&mut findings, &set.label, "weak=>vague", weak, vague);
    // (ii) vague plus tightness implies weak
    implied(&mut findings, &set.label, "vague+tight=>weak", and(vague, tight), weak);
    // (iii) vague plus compact upper bounds implies vague Jordan parts
    implied(&mut findings, &set.label, "vague+compact-limsup=>jordan-vague", and(vague, compact), jordan_vague);
    // (iv) vague plus norm upper bound implies weak Jordan parts
    implied(&mut findings, &set.label, "vague+norm-limsup=>jordan-weak", and(vague, norm), jordan_weak);
    // (v) vague plus signed-mass preservation is the compactified weak check
    if let (Some(a), Some(b)) = (and(vague, mass), compactified) {
        if a != b {
            findings.push(AuditFinding {
                rule: "vague+signed-mass<=>compactified-weak".to_string(),
                detail: format!("{}: sides disagree ({} vs {})", set.label, a, b),
            });
        }
    }
    // (vi) distribution-function convergence plus boundedness implies vague
    implied(&mut findings, &set.label, "distfun+bounded=>vague", and(distfun, bounded), vague);
    // (vii) vague plus no mass at the probe points implies distfun there
    implied(
        &mut findings,
        &set.label,
        "vague+no-mass=>distfun",
        and(vague, no_mass_finite),
        distfun,
    );
    // (viii) no mass at every probe point implies bounded on compacts
    implied(&mut findings, &set.label, "no-mass=>bounded", no_mass_finite, bounded);
    // tightness is equivalent to no mass at either infinity
    let at_infs = and(
        set.no_mass_at(&Centre::NegInf).and_then(as_bool),
        set.no_mass_at(&Centre::PosInf).and_then(as_bool),
    );
    if let (Some(a), Some(b)) = (tight, at_infs) {
        if a != b {
            findings.push(AuditFinding {
                rule: "tight<=>no-mass-at-inf".to_string(),
                detail: format!("{}: sides disagree ({} vs {})", set.label, a, b),
            });
        }
    }
    // positive-measure specialization: distfun is equivalent to vague
    if set.positive {
        if let (Some(a), Some(b)) = (distfun, vague) {
            if a != b {
                findings.push(AuditFinding {
                    rule: "positive: distfun<=>vague".to_string(),
                    detail: format!("{}: sides disagree ({} vs {})", set.label, a, b),
                });
            }
        }
    }
    findings
}

// ---------------------------------------------------------------------------
// Table 1 classification report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub row: u8,
    pub condition_a: Vec<NamedVerdict>,
    pub a_status: Status,
    pub condition_b: Vec<NamedVerdict>,
    pub b_status: Status,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub id: String,
    pub label: String,
    pub checks: Vec<NamedVerdict>,
    pub table1: Vec<Table1Row>,
    pub defects: Vec<AuditFinding>,
}

fn status_conj(parts: &[NamedVerdict]) -> Status {
    if parts.iter().any(|p| p.verdict.is_fails()) {
        Status::Fails
    } else if parts.iter().all(|p| p.verdict.is_holds()) {
        Status::Holds
    } else {
        Status::Inconclusive
    }
}

fn table1_row(row: u8, a: Vec<NamedVerdict>, b: Vec<NamedVerdict>) -> Table1Row {
    let a_status = status_conj(&a);
    let b_status = status_conj(&b);
    // on the real line every row is an equivalence, so conclusive sides
    // must agree
    let consistent = !(a_status != Status::Inconclusive
        && b_status != Status::Inconclusive
        && a_status != b_status);
    Table1Row { row, condition_a: a, a_status, condition_b: b, b_status, consistent }
}

/// Runs the full battery and assembles the three-row Table 1 report plus
/// the individual section-3 checks, flagging audit findings as defects.
pub fn classify(
    id: &str,
    seq: &MeasureSequence,
    limit: &Measure,
    family: &TestFamily,
    schedule: &Schedule,
    params: &CheckParams,
) -> ClassifyReport {
    let set = run_checks(seq, limit, family, schedule, params);
    let nv = |name: &str, v: &Verdict| NamedVerdict { name: name.to_string(), verdict: v.clone() };

    let mut checks = vec![
        nv("vague", &set.vague),
        nv("weak", &set.weak),
        nv("compactified_weak", &set.compactified_weak),
        nv("tightness", &set.tightness),
        nv("signed_mass", &set.signed_mass),
        nv("norm_limsup", &set.norm_limsup),
        nv("bounded_on_compacts", &set.bounded_on_compacts),
    ];
    for (name, v) in &set.compact_limsup {
        checks.push(nv(&format!("compact_limsup[{}]", name), v));
    }
    for (name, v) in &set.open_liminf {
        checks.push(nv(&format!("open_liminf[{}]", name), v));
    }
    for (c, v) in &set.no_mass {
        checks.push(nv(&format!("no_mass[{}]", c), v));
    }
    match &set.distfun {
        Ok(v) => checks.push(nv(&format!("distfun[centre={}]", params.centre), v)),
        Err(e) => checks.push(NamedVerdict {
            name: format!("distfun[centre={}]", params.centre),
            verdict: Verdict::fails(format!("rejected: {}", e), vec![Sample { n: 0, value: Scalar::zero() }]),
        }),
    }
    checks.push(nv("jordan_vague", &set.jordan_vague));
    checks.push(nv("jordan_weak", &set.jordan_weak));

    let table1 = vec![
        table1_row(
            1,
            vec![nv("vague", &set.vague), nv("tightness", &set.tightness)],
            vec![nv("weak", &set.weak)],
        ),
        table1_row(
            2,
            {
                let mut a = vec![nv("vague", &set.vague)];
                for (name, v) in &set.compact_limsup {
                    a.push(nv(&format!("compact_limsup[{}]", name), v));
                }
                a
            },
            vec![nv("jordan_vague", &set.jordan_vague)],
        ),
        table1_row(
            3,
            vec![nv("vague", &set.vague), nv("norm_limsup", &set.norm_limsup)],
            vec![nv("jordan_weak", &set.jordan_weak)],
        ),
    ];

    let defects = audit_implications(&set);

    ClassifyReport {
        id: id.to_string(),
        label: seq.label.clone(),
        checks,
        table1,
        defects,
    }
}
