//! Cellular automata on ℤ^d restricted to lattice-periodic points.

use std::collections::HashSet;

use super::solve::enumerate_torus;
use super::{add, check_dim, Cell, PeriodLattice, SftZd, TorusConfig};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol};

/// `y(g) = rule(x(g + w_1), …, x(g + w_k))` for a finite window `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRuleZd {
    d: usize,
    source: Alphabet,
    target: Alphabet,
    window: Vec<Cell>,
    // indexed by the window values read as a base-|source| number
    table: Vec<Symbol>,
}

impl LocalRuleZd {
    pub fn from_fn(
        d: usize,
        source: Alphabet,
        target: Alphabet,
        window: Vec<Cell>,
        rule: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        for c in &window {
            check_dim(d, c.len())?;
        }
        let mut table = Vec::new();
        for w in source.words_of_length(window.len()) {
            let s = rule(&w);
            if s as usize >= target.len() {
                return Err(Error::UnknownSymbol(format!("rule output {s}")));
            }
            table.push(s);
        }
        Ok(Self {
            d,
            source,
            target,
            window,
            table,
        })
    }

    pub fn identity(alphabet: Alphabet, d: usize) -> Self {
        Self::from_fn(d, alphabet.clone(), alphabet, vec![vec![0; d]], |w| w[0]).expect("identity")
    }

    /// `y(g) = x(g − e_axis)`.
    pub fn shift(alphabet: Alphabet, d: usize, axis: usize) -> Result<Self> {
        if axis >= d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: axis + 1,
            });
        }
        let mut w = vec![0; d];
        w[axis] = -1;
        Self::from_fn(d, alphabet.clone(), alphabet, vec![w], |v| v[0])
    }

    pub fn constant(alphabet: Alphabet, d: usize, value: Symbol) -> Result<Self> {
        Self::from_fn(d, alphabet.clone(), alphabet, vec![vec![0; d]], |_| value)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn apply_torus(&self, y: &TorusConfig) -> Result<TorusConfig> {
        check_dim(self.d, y.dim())?;
        let k = self.source.len();
        Ok(TorusConfig::from_fn(y.lattice().clone(), |g| {
            let idx = self
                .window
                .iter()
                .fold(0usize, |acc, w| acc * k + y.at(&add(g, w)) as usize);
            self.table[idx]
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusEndoReport {
    pub lattice: PeriodLattice,
    pub points: Vec<TorusConfig>,
    pub images: Vec<TorusConfig>,
    pub self_map: bool,
    /// First point whose image leaves the point set, with that image.
    pub escape: Option<(TorusConfig, TorusConfig)>,
    pub injective: bool,
    /// Claimed only for injective self-maps.
    pub permutation: bool,
    /// The rule commutes with every coordinate shift on these points.
    pub shift_equivariant: bool,
}

/// Applies `rule` to every point of `X` fixed by `lattice`.
pub fn endo_check_torus(
    rule: &LocalRuleZd,
    x: &SftZd,
    lattice: &PeriodLattice,
    cap: usize,
) -> Result<TorusEndoReport> {
    check_dim(x.dim(), rule.d)?;
    if rule.source != *x.alphabet() || rule.target != *x.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let points = enumerate_torus(x, lattice, cap)?;
    let set: HashSet<&[Symbol]> = points.iter().map(|p| p.cells()).collect();
    let mut images = Vec::with_capacity(points.len());
    let mut escape = None;
    let mut shift_equivariant = true;
    for p in &points {
        let y = rule.apply_torus(p)?;
        if escape.is_none() && !set.contains(y.cells()) {
            escape = Some((p.clone(), y.clone()));
        }
        for axis in 0..x.dim() {
            let mut e = vec![0; x.dim()];
            e[axis] = 1;
            if rule.apply_torus(&p.translate(&e))?.cells() != y.translate(&e).cells() {
                shift_equivariant = false;
            }
        }
        images.push(y);
    }
    let distinct: HashSet<&[Symbol]> = images.iter().map(|y| y.cells()).collect();
    let injective = distinct.len() == images.len();
    let self_map = escape.is_none();
    Ok(TorusEndoReport {
        lattice: lattice.clone(),
        permutation: self_map && injective,
        self_map,
        escape,
        injective,
        shift_equivariant,
        points,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn hard_square_reports() {
        let x = zoo::hard_square();
        let a = x.alphabet().clone();
        let l = PeriodLattice::new(vec![2, 2]).unwrap();
        let id = endo_check_torus(&LocalRuleZd::identity(a.clone(), 2), &x, &l, 36).unwrap();
        assert_eq!(id.points.len(), 7);
        assert!(id.permutation && id.shift_equivariant);
        for axis in 0..2 {
            let sh = endo_check_torus(&LocalRuleZd::shift(a.clone(), 2, axis).unwrap(), &x, &l, 36)
                .unwrap();
            assert!(sh.permutation && sh.shift_equivariant);
        }
        let zero = endo_check_torus(&LocalRuleZd::constant(a, 2, 0).unwrap(), &x, &l, 36).unwrap();
        assert!(zero.self_map && !zero.injective && !zero.permutation);
    }
}
