//! Invariant measures `μ = Σ a_n / |O_n| Σ_{x ∈ O_n} δ_x` built from finite
//! shift orbits of periodic points.

use std::collections::HashSet;

use num_rational::Rational64;

use super::{check_dim, Pattern, TorusConfig};
use crate::error::{Error, Result};

/// The shift orbit of a periodic point, in breadth-first order over the
/// unit coordinate shifts; members are stored reduced.
pub fn orbit_of(y: &TorusConfig) -> Vec<TorusConfig> {
    let d = y.dim();
    let start = y.reduced();
    let mut seen: HashSet<TorusConfig> = HashSet::from([start.clone()]);
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        for axis in 0..d {
            let mut e = vec![0; d];
            e[axis] = 1;
            let next = out[i].translate(&e);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMeasureSpec {
    d: usize,
    orbits: Vec<Vec<TorusConfig>>,
    weights: Vec<Rational64>,
}

impl OrbitMeasureSpec {
    /// Checks that orbits are shift-closed and pairwise disjoint, and that
    /// the weights are positive with sum exactly 1.
    pub fn new(orbits: Vec<Vec<TorusConfig>>, weights: Vec<Rational64>) -> Result<Self> {
        if orbits.is_empty() || orbits.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} orbits with {} weights",
                orbits.len(),
                weights.len()
            )));
        }
        let d = orbits
            .iter()
            .flatten()
            .next()
            .ok_or_else(|| Error::InvalidMeasure("empty orbit".into()))?
            .dim();
        let mut all: HashSet<TorusConfig> = HashSet::new();
        for orbit in &orbits {
            if orbit.is_empty() {
                return Err(Error::InvalidMeasure("empty orbit".into()));
            }
            let members: HashSet<&TorusConfig> = orbit.iter().collect();
            if members.len() != orbit.len() {
                return Err(Error::InvalidMeasure("orbit lists a point twice".into()));
            }
            for y in orbit {
                check_dim(d, y.dim())?;
                for axis in 0..d {
                    let mut e = vec![0; d];
                    e[axis] = 1;
                    if !members.contains(&y.translate(&e)) {
                        return Err(Error::InvalidMeasure("orbit is not shift-closed".into()));
                    }
                }
                if !all.insert(y.clone()) {
                    return Err(Error::InvalidMeasure("orbits overlap".into()));
                }
            }
        }
        let zero = Rational64::from_integer(0);
        if weights.iter().any(|w| *w <= zero) {
            return Err(Error::InvalidMeasure("weights must be positive".into()));
        }
        if weights.iter().sum::<Rational64>() != Rational64::from_integer(1) {
            return Err(Error::InvalidMeasure("weights must sum to 1".into()));
        }
        Ok(Self { d, orbits, weights })
    }

    /// One orbit per generator point.
    pub fn from_points(points: &[TorusConfig], weights: Vec<Rational64>) -> Result<Self> {
        Self::new(points.iter().map(orbit_of).collect(), weights)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn orbits(&self) -> &[Vec<TorusConfig>] {
        &self.orbits
    }

    pub fn weights(&self) -> &[Rational64] {
        &self.weights
    }
}

/// `μ([p]) = Σ_n a_n · |{x ∈ O_n : x|_supp = p}| / |O_n|`.
pub fn measure_from_orbits(spec: &OrbitMeasureSpec, cylinder: &Pattern) -> Result<Rational64> {
    check_dim(spec.d, cylinder.dim())?;
    Ok(spec
        .orbits
        .iter()
        .zip(&spec.weights)
        .map(|(orbit, w)| {
            let hits = orbit.iter().filter(|y| y.matches(cylinder)).count() as i64;
            w * Rational64::new(hits, orbit.len() as i64)
        })
        .sum())
}
