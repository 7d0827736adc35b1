//! Empirical diagnostic outcomes.
//!
//! A [`Verdict`] is evidence, not proof: `holds` and `fails` are certified
//! only against the finite evaluation schedule, and anything without a
//! certificate is `inconclusive`.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Holds => write!(f, "holds"),
            Status::Fails => write!(f, "fails"),
            Status::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// One sampled data point: the sequence index and the measured value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Sample {
    pub n: u64,
    pub value: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Vec<Sample>,
    pub note: String,
}

impl Verdict {
    pub fn holds(note: impl Into<String>, evidence: Vec<Sample>) -> Self {
        Verdict { status: Status::Holds, evidence, note: note.into() }
    }

    pub fn fails(note: impl Into<String>, evidence: Vec<Sample>) -> Self {
        let v = Verdict { status: Status::Fails, evidence, note: note.into() };
        debug_assert!(!v.evidence.is_empty(), "fails requires a violating sample");
        v
    }

    pub fn inconclusive(note: impl Into<String>, evidence: Vec<Sample>) -> Self {
        Verdict { status: Status::Inconclusive, evidence, note: note.into() }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_conclusive(&self) -> bool {
        self.status != Status::Inconclusive
    }
}

/// The finite surrogate for `n -> infinity`: which indices to evaluate, how
/// many trailing ones form the limit-estimation window, and the numeric
/// tolerance for declaring a sample "at" its target.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Schedule {
    pub indices: Vec<u64>,
    pub tail_window: usize,
    pub tolerance: Scalar,
}

impl Schedule {
    pub fn new(mut indices: Vec<u64>, tail_window: usize, tolerance: Scalar) -> Self {
        indices.sort_unstable();
        indices.dedup();
        assert!(!indices.is_empty(), "empty schedule");
        assert!(tail_window >= 1 && tail_window <= indices.len());
        assert!(!tolerance.is_negative());
        Schedule { indices, tail_window, tolerance }
    }

    /// Default schedule: n in {1..16} union {2^k : k <= 14}, tail window 4.
    /// The tolerance must absorb sampling at finite n of sequences whose
    /// members converge without being eventually constant.
    pub fn default_full() -> Self {
        let mut indices: Vec<u64> = (1..=16).collect();
        indices.extend((5..=14).map(|k| 1u64 << k));
        Schedule::new(indices, 4, Scalar::ratio(1, 32))
    }

    /// Capped schedule for sequences whose representation size grows like
    /// 2^n (the sawtooth corpus entries): n in {1..12}.
    pub fn default_dyadic() -> Self {
        Schedule::new((1..=12).collect(), 4, Scalar::ratio(1, 32))
    }

    /// The indices of the tail window.
    pub fn tail(&self) -> &[u64] {
        &self.indices[self.indices.len() - self.tail_window..]
    }

    pub fn contains(&self, n: u64) -> bool {
        self.indices.binary_search(&n).is_ok()
    }
}

/// Sampled values in schedule order, judged against a target limit.
///
/// `holds` when every tail-window sample is within tolerance of the target;
/// `fails` when the last sample is out of tolerance and the tail distances
/// are nondecreasing (a trend certificate); `inconclusive` otherwise.
pub fn limit_diagnostic(
    samples: &[(u64, Scalar)],
    target: &Scalar,
    schedule: &Schedule,
) -> Verdict {
    assert!(!samples.is_empty(), "limit_diagnostic requires samples");
    let tail_len = schedule.tail_window.min(samples.len());
    let tail = &samples[samples.len() - tail_len..];
    let distances: Vec<Scalar> = tail.iter().map(|(_, v)| (v - target).abs()).collect();
    let evidence: Vec<Sample> = tail
        .iter()
        .map(|(n, v)| Sample { n: *n, value: v.clone() })
        .collect();
    if distances.iter().all(|d| d <= &schedule.tolerance) {
        return Verdict::holds("tail within tolerance of target", evidence);
    }
    let last = distances.last().unwrap();
    let nondecreasing = distances.windows(2).all(|w| w[0] <= w[1]);
    // oscillation across the target is not a divergence certificate
    let residual_signs: Vec<i32> = tail.iter().map(|(_, v)| (v - target).signum()).collect();
    let one_sided = residual_signs.windows(2).all(|w| w[0] == w[1]);
    if last > &schedule.tolerance && nondecreasing && one_sided {
        return Verdict::fails("tail distance to target exceeds tolerance and is nondecreasing", evidence);
    }
    Verdict::inconclusive("no convergence or divergence certificate on the tail", evidence)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched() -> Schedule {
        Schedule::new((1..=8).collect(), 3, Scalar::zero())
    }

    fn samples(vals: &[i64]) -> Vec<(u64, Scalar)> {
        vals.iter()
            .enumerate()
            .map(|(i, v)| (i as u64 + 1, Scalar::from_int(*v)))
            .collect()
    }

    #[test]
    fn constant_on_target_holds() {
        let v = limit_diagnostic(&samples(&[0; 8]), &Scalar::zero(), &sched());
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn monotone_growth_fails() {
        // 2^{n+1}/n^2 style growth
        let vals: Vec<(u64, Scalar)> = (1..=8u64)
            .map(|n| {
                (
                    n,
                    Scalar::two_pow(n as i64 + 1) / Scalar::from_int((n * n) as i64),
                )
            })
            .collect();
        let v = limit_diagnostic(&vals, &Scalar::zero(), &sched());
        assert_eq!(v.status, Status::Fails);
        assert!(!v.evidence.is_empty());
    }

    #[test]
    fn oscillation_is_inconclusive() {
        let vals: Vec<(u64, Scalar)> = (1..=8u64)
            .map(|n| (n, if n % 2 == 0 { Scalar::one() } else { -Scalar::one() }))
            .collect();
        let schedule = Schedule::new((1..=8).collect(), 3, Scalar::ratio(1, 2));
        let v = limit_diagnostic(&vals, &Scalar::zero(), &schedule);
        assert_eq!(v.status, Status::Inconclusive);
    }

    #[test]
    #[should_panic]
    fn empty_samples_rejected() {
        limit_diagnostic(&[], &Scalar::zero(), &sched());
    }
}
