use num_traits::{One, Signed};

use crate::algebra::GeneratorSet;
use crate::error::{Error, Result};
use crate::measure::CylinderMeasure;
use crate::orbit::OrbitAutomaton;
use crate::pattern::Pattern;
use crate::rational::{format_rational, int, zero, Rational};

/// Convex combination of uniform measures on periodic orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicMeasure {
    gs: GeneratorSet,
    alphabet_size: usize,
    /// Minimized orbits with their weights.
    orbits: Vec<(OrbitAutomaton, Rational)>,
}

impl PeriodicMeasure {
    pub fn new(orbits: Vec<(OrbitAutomaton, Rational)>) -> Result<Self> {
        let (first, _) = orbits
            .first()
            .ok_or_else(|| Error::Validation("periodic measure needs at least one orbit".into()))?;
        let gs = first.gs().clone();
        let alphabet_size = first.alphabet().len();
        let mut total = zero();
        let mut minimized = Vec::with_capacity(orbits.len());
        for (i, (o, w)) in orbits.iter().enumerate() {
            if o.gs() != &gs || o.alphabet().len() != alphabet_size {
                return Err(Error::Validation(format!(
                    "orbit {i} has a different generating set or alphabet"
                )));
            }
            if !w.is_positive() {
                return Err(Error::Validation(format!(
                    "orbit {i} has non-positive weight {}",
                    format_rational(w)
                )));
            }
            if !o.is_periodic() {
                return Err(Error::NotPeriodic);
            }
            total += w;
            minimized.push((o.minimize(), w.clone()));
        }
        if !total.is_one() {
            return Err(Error::Validation(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(PeriodicMeasure {
            gs,
            alphabet_size,
            orbits: minimized,
        })
    }

    /// Uniform measure on a single periodic orbit.
    pub fn uniform(orbit: OrbitAutomaton) -> Result<Self> {
        PeriodicMeasure::new(vec![(orbit, Rational::one())])
    }

    pub fn orbits(&self) -> &[(OrbitAutomaton, Rational)] {
        &self.orbits
    }
}

impl CylinderMeasure for PeriodicMeasure {
    fn generators(&self) -> &GeneratorSet {
        &self.gs
    }

    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `Σ_i w_i · |{y ∈ Sx_i : y ∈ [x; F]}| / |Sx_i|`.
    fn eval(&self, pattern: &Pattern) -> Result<Rational> {
        pattern.check_members(&self.gs)?;
        pattern.check_alphabet(self.alphabet_size)?;
        let mut total = zero();
        for (orbit, weight) in &self.orbits {
            let mut hits = 0i64;
            for q in 0..orbit.num_states() {
                let mut matches = true;
                for (w, s) in pattern.iter() {
                    if orbit.readout_from(q, w)? != s {
                        matches = false;
                        break;
                    }
                }
                hits += matches as i64;
            }
            total += weight * int(hits) / int(orbit.num_states() as i64);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::fixtures::{constant_orbit, example_orbit, swap_orbit};
    use crate::rational::ratio;

    fn pat(entries: &[(&str, usize)]) -> Pattern {
        entries.iter().map(|(w, s)| (w.parse().unwrap(), *s)).collect()
    }

    #[test]
    fn swap_orbit_values() {
        let m = PeriodicMeasure::uniform(swap_orbit()).unwrap();
        assert_eq!(m.eval(&pat(&[("e", 0)])).unwrap(), ratio(1, 2));
        assert_eq!(m.eval(&pat(&[("e", 0), ("a1", 0)])).unwrap(), ratio(0, 1));
        assert_eq!(m.eval(&Pattern::new()).unwrap(), ratio(1, 1));
    }

    #[test]
    fn mixtures() {
        let m = PeriodicMeasure::new(vec![
            (swap_orbit(), ratio(1, 2)),
            (constant_orbit(), ratio(1, 2)),
        ])
        .unwrap();
        assert_eq!(m.eval(&pat(&[("e", 0)])).unwrap(), ratio(3, 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            PeriodicMeasure::uniform(example_orbit()).unwrap_err(),
            Error::NotPeriodic
        );
        assert!(PeriodicMeasure::new(vec![(swap_orbit(), ratio(1, 3))]).is_err());
        assert!(PeriodicMeasure::new(vec![]).is_err());
    }
}
