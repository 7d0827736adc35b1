//! Finite signed Radon measures on the real line.
//!
//! A [`Measure`] is a finite list of atoms (point masses) plus a compactly
//! supported piecewise-constant density. Both parts are kept in a canonical
//! normal form, so the zero measure has a unique representation and
//! structural equality decides measure equality.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::set::RealSet;

/// A point mass: weight `w` at location `x`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Atom {
    pub x: Scalar,
    pub w: Scalar,
}

/// A density piece: constant `value` on the half-open interval `[a, b)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DensityPiece {
    pub a: Scalar,
    pub b: Scalar,
    pub value: Scalar,
}

/// A finite signed Radon measure: atoms at strictly increasing locations
/// with nonzero weights, plus disjoint density pieces with nonzero values,
/// adjacent equal-valued pieces merged.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Measure {
    atoms: Vec<Atom>,
    density: Vec<DensityPiece>,
}

impl Measure {
    pub fn zero() -> Self {
        Measure::default()
    }

    /// The Dirac measure at `x`.
    pub fn dirac(x: Scalar) -> Self {
        Measure {
            atoms: vec![Atom { x, w: Scalar::one() }],
            density: Vec::new(),
        }
    }

    /// Builds a measure from raw parts; atoms at equal locations merge,
    /// overlapping density pieces are resolved by summation, zeros dropped.
    pub fn new(atoms: Vec<Atom>, density: Vec<DensityPiece>) -> Self {
        let mut m = Measure { atoms, density };
        m.normalize();
        m
    }

    pub fn from_atoms(atoms: Vec<(Scalar, Scalar)>) -> Self {
        Measure::new(
            atoms.into_iter().map(|(x, w)| Atom { x, w }).collect(),
            Vec::new(),
        )
    }

    pub fn from_density(pieces: Vec<(Scalar, Scalar, Scalar)>) -> Self {
        Measure::new(
            Vec::new(),
            pieces
                .into_iter()
                .map(|(a, b, value)| DensityPiece { a, b, value })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density(&self) -> &[DensityPiece] {
        &self.density
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.density.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.w.is_positive())
            && self.density.iter().all(|p| p.value.is_positive())
    }

    /// The weight of the atom at `x`, zero if there is none.
    pub fn atom_weight(&self, x: &Scalar) -> Scalar {
        match self.atoms.binary_search_by(|a| a.x.cmp(x)) {
            Ok(i) => self.atoms[i].w.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// True if `mu({x}) = 0`.
    pub fn is_continuity_point(&self, x: &Scalar) -> bool {
        self.atom_weight(x).is_zero()
    }

    fn normalize(&mut self) {
        // atoms: sort, merge coincident, drop zeros
        self.atoms.sort_by(|p, q| p.x.cmp(&q.x));
        let mut atoms: Vec<Atom> = Vec::with_capacity(self.atoms.len());
        for a in self.atoms.drain(..) {
            match atoms.last_mut() {
                Some(last) if last.x == a.x => last.w += &a.w,
                _ => atoms.push(a),
            }
        }
        atoms.retain(|a| !a.w.is_zero());
        self.atoms = atoms;

        // density: sweep over endpoint events to resolve overlaps, then
        // merge adjacent equal values
        self.density.retain(|p| p.a < p.b && !p.value.is_zero());
        if !self.density.is_empty() {
            let mut events: Vec<(Scalar, Scalar)> = Vec::with_capacity(self.density.len() * 2);
            for p in self.density.drain(..) {
                events.push((p.a, p.value.clone()));
                events.push((p.b, -p.value));
            }
            events.sort_by(|p, q| p.0.cmp(&q.0));
            let mut merged: Vec<DensityPiece> = Vec::new();
            let mut level = Scalar::zero();
            let mut prev: Option<Scalar> = None;
            let mut i = 0;
            while i < events.len() {
                let x = events[i].0.clone();
                if let Some(p) = prev.take() {
                    if !level.is_zero() && p < x {
                        match merged.last_mut() {
                            Some(last) if last.b == p && last.value == level => {
                                last.b = x.clone()
                            }
                            _ => merged.push(DensityPiece {
                                a: p,
                                b: x.clone(),
                                value: level.clone(),
                            }),
                        }
                    }
                }
                while i < events.len() && events[i].0 == x {
                    level += &events[i].1;
                    i += 1;
                }
                prev = Some(x);
            }
            debug_assert!(level.is_zero());
            self.density = merged;
        }
    }

    /// `sum_i coeffs[i] * measures[i]`; panics if the lists differ in length.
    pub fn linear_combine(coeffs: &[Scalar], measures: &[&Measure]) -> Measure {
        assert_eq!(coeffs.len(), measures.len(), "length mismatch");
        let mut atoms = Vec::new();
        let mut density = Vec::new();
        for (c, m) in coeffs.iter().zip(measures) {
            if c.is_zero() {
                continue;
            }
            for a in &m.atoms {
                atoms.push(Atom { x: a.x.clone(), w: c * &a.w });
            }
            for p in &m.density {
                density.push(DensityPiece {
                    a: p.a.clone(),
                    b: p.b.clone(),
                    value: c * &p.value,
                });
            }
        }
        Measure::new(atoms, density)
    }

    pub fn scale(&self, c: &Scalar) -> Measure {
        Measure::linear_combine(std::slice::from_ref(c), &[self])
    }

    pub fn add(&self, other: &Measure) -> Measure {
        Measure::linear_combine(&[Scalar::one(), Scalar::one()], &[self, other])
    }

    pub fn sub(&self, other: &Measure) -> Measure {
        Measure::linear_combine(&[Scalar::one(), -Scalar::one()], &[self, other])
    }

    pub fn neg(&self) -> Measure {
        self.scale(&-Scalar::one())
    }

    /// Smallest closed interval containing the support, if nonzero.
    pub fn support_bounds(&self) -> Option<(Scalar, Scalar)> {
        let mut bounds: Option<(Scalar, Scalar)> = None;
        let mut extend = |lo: &Scalar, hi: &Scalar| match &mut bounds {
            None => bounds = Some((lo.clone(), hi.clone())),
            Some((a, b)) => {
                if lo < a {
                    *a = lo.clone();
                }
                if hi > b {
                    *b = hi.clone();
                }
            }
        };
        for a in &self.atoms {
            extend(&a.x, &a.x);
        }
        for p in &self.density {
            extend(&p.a, &p.b);
        }
        bounds
    }

    /// `mu(A)`: atoms counted per endpoint inclusion flags, density
    /// integrated over `A` (flags irrelevant for the density part).
    pub fn measure_of_set(&self, set: &RealSet) -> Scalar {
        let mut total = Scalar::zero();
        for a in &self.atoms {
            if set.contains(&a.x) {
                total += &a.w;
            }
        }
        for p in &self.density {
            for iv in set.intervals() {
                total += &(&p.value * &iv.overlap_len(&p.a, &p.b));
            }
        }
        total
    }

    /// `mu(R)`: the signed mass.
    pub fn total_mass(&self) -> Scalar {
        let mut total = Scalar::zero();
        for a in &self.atoms {
            total += &a.w;
        }
        for p in &self.density {
            total += &(&p.value * &(&p.b - &p.a));
        }
        total
    }

    /// Restriction of the measure to `A`.
    pub fn restrict(&self, set: &RealSet) -> Measure {
        let atoms = self
            .atoms
            .iter()
            .filter(|a| set.contains(&a.x))
            .cloned()
            .collect();
        let mut density = Vec::new();
        for p in &self.density {
            for iv in set.intervals() {
                let lo = match &iv.lo {
                    crate::set::Endpoint::NegInf => p.a.clone(),
                    crate::set::Endpoint::PosInf => continue,
                    crate::set::Endpoint::Finite(x) => x.clone().max(p.a.clone()),
                };
                let hi = match &iv.hi {
                    crate::set::Endpoint::NegInf => continue,
                    crate::set::Endpoint::PosInf => p.b.clone(),
                    crate::set::Endpoint::Finite(x) => x.clone().min(p.b.clone()),
                };
                if hi > lo {
                    density.push(DensityPiece { a: lo, b: hi, value: p.value.clone() });
                }
            }
        }
        Measure::new(atoms, density)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn dirac_is_single_unit_atom() {
        let m = Measure::dirac(Scalar::zero());
        assert_eq!(m.atoms(), &[Atom { x: s(0, 1), w: s(1, 1) }]);
        assert!(m.density().is_empty());
    }

    #[test]
    fn dirac_difference() {
        let m = Measure::dirac(s(0, 1)).sub(&Measure::dirac(s(1, 3)));
        assert_eq!(
            m.atoms(),
            &[
                Atom { x: s(0, 1), w: s(1, 1) },
                Atom { x: s(1, 3), w: s(-1, 1) }
            ]
        );
    }

    #[test]
    fn coincident_atoms_merge() {
        let m = Measure::dirac(s(5, 1)).add(&Measure::dirac(s(5, 1)));
        assert_eq!(m.atoms(), &[Atom { x: s(5, 1), w: s(2, 1) }]);
    }

    #[test]
    fn zero_measure_is_canonical() {
        let m = Measure::dirac(s(2, 1));
        assert!(m.sub(&m).is_zero());
        assert!(m.scale(&Scalar::zero()).is_zero());
        assert_eq!(m.sub(&m), Measure::zero());
    }

    #[test]
    fn overlapping_density_sums() {
        let m = Measure::from_density(vec![
            (s(0, 1), s(2, 1), s(1, 1)),
            (s(1, 1), s(3, 1), s(1, 1)),
        ]);
        assert_eq!(
            m.density(),
            &[
                DensityPiece { a: s(0, 1), b: s(1, 1), value: s(1, 1) },
                DensityPiece { a: s(1, 1), b: s(2, 1), value: s(2, 1) },
                DensityPiece { a: s(2, 1), b: s(3, 1), value: s(1, 1) },
            ]
        );
    }

    #[test]
    fn equal_adjacent_density_merges() {
        let m = Measure::from_density(vec![
            (s(0, 1), s(1, 1), s(3, 1)),
            (s(1, 1), s(2, 1), s(3, 1)),
        ]);
        assert_eq!(
            m.density(),
            &[DensityPiece { a: s(0, 1), b: s(2, 1), value: s(3, 1) }]
        );
    }

    #[test]
    fn normalization_is_idempotent() {
        let m = Measure::new(
            vec![
                Atom { x: s(1, 1), w: s(1, 2) },
                Atom { x: s(-1, 1), w: s(1, 3) },
            ],
            vec![DensityPiece { a: s(0, 1), b: s(1, 1), value: s(2, 1) }],
        );
        let again = Measure::new(m.atoms().to_vec(), m.density().to_vec());
        assert_eq!(m, again);
    }

    #[test]
    fn measure_of_set_endpoint_semantics() {
        let d0 = Measure::dirac(s(0, 1));
        assert_eq!(d0.measure_of_set(&RealSet::left_open(s(0, 1), s(1, 1))), s(0, 1));
        assert_eq!(d0.measure_of_set(&RealSet::closed(s(0, 1), s(1, 1))), s(1, 1));
    }

    #[test]
    fn restrict_matches_measure_of_set() {
        let m = Measure::new(
            vec![
                Atom { x: s(0, 1), w: s(1, 1) },
                Atom { x: s(1, 1), w: s(1, 1) },
            ],
            vec![DensityPiece { a: s(0, 1), b: s(2, 1), value: s(1, 2) }],
        );
        let a = RealSet::above(s(1, 2), false);
        let r = m.restrict(&a);
        assert_eq!(r.measure_of_set(&RealSet::full()), m.measure_of_set(&a));
        assert_eq!(
            Measure::dirac(s(0, 1))
                .add(&Measure::dirac(s(1, 1)))
                .restrict(&a),
            Measure::dirac(s(1, 1))
        );
        assert_eq!(m.restrict(&RealSet::full()), m);
    }

    #[test]
    fn total_mass_and_support() {
        let m = Measure::new(
            vec![Atom { x: s(-3, 1), w: s(2, 1) }],
            vec![DensityPiece { a: s(0, 1), b: s(2, 1), value: s(-1, 2) }],
        );
        assert_eq!(m.total_mass(), s(1, 1));
        assert_eq!(m.support_bounds(), Some((s(-3, 1), s(2, 1))));
    }
}
