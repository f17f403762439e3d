//! Backtracking over torus and box domains.
//!
//! Cells are assigned in row-major order and symbols in alphabet order; each
//! window is checked as soon as its last cell (in that order) is assigned.

use std::fmt;

use super::{
    add, check_dim, for_each_in_box, minkowski_nbhd, sub, Cell, CellSet, Pattern, PeriodLattice,
    SftZd, TorusConfig,
};
use crate::error::{Error, Result};
use crate::word::Symbol;

/// Largest fundamental domain [`enumerate_torus`] accepts by default.
pub const DEFAULT_TORUS_CAP: usize = 36;

/// Node budget shared by the searches of one bounded check.
pub const SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchEnd {
    /// The callback asked to stop.
    Stopped,
    Exhausted,
    OutOfBudget,
}

struct Csp<'a> {
    x: &'a SftZd,
    fixed: Vec<Option<Symbol>>,
    constraints: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
    pinned: Vec<usize>,
}

impl<'a> Csp<'a> {
    fn new(x: &'a SftZd, fixed: Vec<Option<Symbol>>, constraints: Vec<Vec<usize>>) -> Self {
        // a window is checked once its last free cell is assigned; windows
        // made of fixed cells only are checked before the search starts
        let mut by_last = vec![Vec::new(); fixed.len()];
        let mut pinned = Vec::new();
        for (i, c) in constraints.iter().enumerate() {
            match c.iter().filter(|&&j| fixed[j].is_none()).max() {
                Some(&last) => by_last[last].push(i),
                None => pinned.push(i),
            }
        }
        Self {
            x,
            fixed,
            constraints,
            by_last,
            pinned,
        }
    }

    fn torus(x: &'a SftZd, lattice: &PeriodLattice, fixed: Vec<Option<Symbol>>) -> Self {
        let constraints = lattice
            .cells()
            .map(|g| {
                x.window()
                    .iter()
                    .map(|w| lattice.index(&add(&g, w)))
                    .collect()
            })
            .collect();
        Self::new(x, fixed, constraints)
    }

    /// A partly fixed window that no allowed pattern agrees with.
    fn unsupported(&self) -> Option<usize> {
        self.constraints.iter().position(|c| {
            c.iter().any(|&j| self.fixed[j].is_some())
                && !self.x.allowed().iter().any(|row| {
                    c.iter()
                        .zip(row)
                        .all(|(&j, &s)| self.fixed[j].is_none_or(|f| f == s))
                })
        })
    }

    /// Runs the search; `on_solution` returns `false` to stop. The second
    /// component is the last window that rejected an assignment.
    fn search(
        &self,
        budget: &mut u64,
        mut on_solution: impl FnMut(&[Symbol]) -> bool,
    ) -> (SearchEnd, Option<usize>) {
        let n = self.fixed.len();
        let k = self.x.alphabet().len();
        let mut vals: Vec<Symbol> = self.fixed.iter().map(|f| f.unwrap_or(0)).collect();
        let mut cursor = vec![0usize; n + 1];
        let mut buf = Vec::with_capacity(self.x.window().len());
        let violated = |ci: usize, vals: &[Symbol], buf: &mut Vec<Symbol>| {
            buf.clear();
            buf.extend(self.constraints[ci].iter().map(|&j| vals[j]));
            !self.x.admits(buf)
        };
        if let Some(&ci) = self
            .pinned
            .iter()
            .find(|&&ci| violated(ci, &vals, &mut buf))
        {
            return (SearchEnd::Exhausted, Some(ci));
        }
        if let Some(ci) = self.unsupported() {
            return (SearchEnd::Exhausted, Some(ci));
        }
        let mut conflict = None;
        let mut i = 0usize;
        loop {
            if i == n {
                if !on_solution(&vals) {
                    return (SearchEnd::Stopped, conflict);
                }
                if n == 0 {
                    return (SearchEnd::Exhausted, conflict);
                }
                i -= 1;
                continue;
            }
            let options = if self.fixed[i].is_some() { 1 } else { k };
            let mut placed = false;
            while cursor[i] < options {
                if *budget == 0 {
                    return (SearchEnd::OutOfBudget, conflict);
                }
                *budget -= 1;
                vals[i] = self.fixed[i].unwrap_or(cursor[i] as Symbol);
                cursor[i] += 1;
                let bad = self.by_last[i]
                    .iter()
                    .find(|&&ci| violated(ci, &vals, &mut buf));
                match bad {
                    Some(&ci) => conflict = Some(ci),
                    None => {
                        placed = true;
                        break;
                    }
                }
            }
            if placed {
                i += 1;
                cursor[i] = 0;
            } else {
                cursor[i] = 0;
                if i == 0 {
                    return (SearchEnd::Exhausted, conflict);
                }
                i -= 1;
            }
        }
    }
}

fn check_symbols(x: &SftZd, cells: &[Symbol]) -> Result<()> {
    match cells.iter().find(|&&s| s as usize >= x.alphabet().len()) {
        Some(s) => Err(Error::UnknownSymbol(s.to_string())),
        None => Ok(()),
    }
}

/// Whether the lattice-periodic configuration lies in `X`: every window
/// translate over the fundamental domain reads an allowed pattern.
pub fn torus_valid(x: &SftZd, y: &TorusConfig) -> Result<bool> {
    check_dim(x.dim(), y.dim())?;
    check_symbols(x, y.cells())?;
    let mut buf = Vec::with_capacity(x.window().len());
    Ok(y.lattice().cells().all(|g| {
        buf.clear();
        buf.extend(x.window().iter().map(|w| y.at(&add(&g, w))));
        x.admits(&buf)
    }))
}

/// All points of `X` fixed by the lattice, in lexicographic order of their
/// row-major cell vectors.
pub fn enumerate_torus(x: &SftZd, lattice: &PeriodLattice, cap: usize) -> Result<Vec<TorusConfig>> {
    check_dim(x.dim(), lattice.dim())?;
    if lattice.volume() > cap {
        return Err(Error::CapExceeded(format!(
            "fundamental domain of {} cells exceeds cap {cap}",
            lattice.volume()
        )));
    }
    let csp = Csp::torus(x, lattice, vec![None; lattice.volume()]);
    let mut out = Vec::new();
    let mut budget = u64::MAX;
    csp.search(&mut budget, |vals| {
        out.push(TorusConfig {
            lattice: lattice.clone(),
            cells: vals.to_vec(),
        });
        true
    });
    Ok(out)
}

/// Answer of a bounded extendability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extendable {
    /// A periodic point of `X` carrying the pattern was found.
    Yes,
    /// No locally admissible fill of the surrounding box exists.
    No,
    Unknown,
}

impl fmt::Display for Extendable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extendable::Yes => "yes",
            Extendable::No => "no",
            Extendable::Unknown => "unknown",
        })
    }
}

/// Searches for a fill of the box `[lo, hi]` extending `p` in which every
/// window translate inside the box is allowed.
fn box_fill(x: &SftZd, p: &Pattern, lo: &[i64], hi: &[i64], budget: &mut u64) -> SearchEnd {
    let periods: Vec<usize> = lo
        .iter()
        .zip(hi)
        .map(|(l, h)| (h - l + 1) as usize)
        .collect();
    let frame = PeriodLattice::new(periods).expect("nonempty box");
    let mut fixed = vec![None; frame.volume()];
    for (c, s) in p.iter() {
        fixed[frame.index(&sub(c, lo))] = Some(s);
    }
    let span_lo: Vec<i64> = (0..x.dim())
        .map(|i| x.window().iter().map(|w| w[i]).min().unwrap_or(0))
        .collect();
    let span_hi: Vec<i64> = (0..x.dim())
        .map(|i| x.window().iter().map(|w| w[i]).max().unwrap_or(0))
        .collect();
    let inside = |c: &[i64]| {
        c.iter()
            .zip(lo.iter().zip(hi))
            .all(|(v, (l, h))| l <= v && v <= h)
    };
    let mut constraints = Vec::new();
    for_each_in_box(&sub(lo, &span_lo), &sub(hi, &span_hi), |g| {
        let cells: Vec<Cell> = x.window().iter().map(|w| add(g, w)).collect();
        if cells.iter().all(|c| inside(c)) {
            constraints.push(cells.iter().map(|c| frame.index(&sub(c, lo))).collect());
        }
    });
    let csp = Csp::new(x, fixed, constraints);
    csp.search(budget, |_| false).0
}

fn lattices_by_volume(lo: &[usize], hi: &[usize]) -> Vec<PeriodLattice> {
    let lo_i: Vec<i64> = lo.iter().map(|&v| v as i64).collect();
    let hi_i: Vec<i64> = hi.iter().map(|&v| v as i64).collect();
    let mut out = Vec::new();
    for_each_in_box(&lo_i, &hi_i, |c| {
        out.push(PeriodLattice::new(c.iter().map(|&v| v as usize).collect()).expect("positive"));
    });
    out.sort_by_key(|l| l.volume());
    out
}

/// Bounded check that some `x ∈ X` carries `p`.
///
/// Answers `No` when the bounding box of `p` inflated by `margin` admits no
/// locally valid fill, and `Yes` when a periodic point carrying `p` exists
/// on a diagonal lattice with periods between the extent of `p` and the
/// extent plus `margin` plus the window span (this covers constant padding
/// around the box). Otherwise `Unknown`.
pub fn pattern_extendable(x: &SftZd, p: &Pattern, margin: usize) -> Result<Extendable> {
    check_dim(x.dim(), p.dim())?;
    check_symbols(x, &p.symbols())?;
    let d = x.dim();
    let (lo, hi) = p
        .support()
        .bounding_box()
        .unwrap_or((vec![0; d], vec![0; d]));
    let m = margin as i64;
    let mut budget = SEARCH_BUDGET;
    let local = box_fill(
        x,
        p,
        &lo.iter().map(|v| v - m).collect::<Vec<_>>(),
        &hi.iter().map(|v| v + m).collect::<Vec<_>>(),
        &mut budget,
    );
    if local == SearchEnd::Exhausted {
        return Ok(Extendable::No);
    }
    let ext: Vec<usize> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| (h - l + 1) as usize)
        .collect();
    let top: Vec<usize> = ext
        .iter()
        .zip(x.window_span())
        .map(|(e, s)| e + margin + s)
        .collect();
    for lattice in lattices_by_volume(&ext, &top) {
        let mut fixed = vec![None; lattice.volume()];
        for (c, s) in p.iter() {
            fixed[lattice.index(&sub(c, &lo))] = Some(s);
        }
        match Csp::torus(x, &lattice, fixed)
            .search(&mut budget, |_| false)
            .0
        {
            SearchEnd::Stopped => return Ok(Extendable::Yes),
            SearchEnd::Exhausted => continue,
            SearchEnd::OutOfBudget => break,
        }
    }
    Ok(Extendable::Unknown)
}

/// Output of [`theorem11_periodicize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPeriodization {
    pub torus: TorusConfig,
    /// `Ω₁ = Ω^{+Δ}`.
    pub omega1: CellSet,
    /// `Ω₂ = Ω₁^{+Δ⁻¹Δ}`.
    pub omega2: CellSet,
    /// Periods `N_i` (extent of `Ω₂`), injective on `Ω₂`.
    pub l: PeriodLattice,
    /// `H = K ∩ L` with `K` the lattice of `x0`.
    pub h: PeriodLattice,
    /// `torus_valid` holds and the torus carries the pattern.
    pub verified: bool,
}

/// Periodic point of `X` agreeing with `p` on its support and with `x0`
/// away from the reduction of `Ω₂`, on the lattice `H = K ∩ L`.
///
/// Solvability is guaranteed when `X` is Δ-irreducible and `p` extends to a
/// point of `X`; a failed search is reported as a hypothesis violation
/// naming the last conflicting window.
pub fn theorem11_periodicize(
    x: &SftZd,
    delta: &CellSet,
    x0: &TorusConfig,
    p: &Pattern,
) -> Result<TorusPeriodization> {
    let d = x.dim();
    check_dim(d, delta.dim())?;
    check_dim(d, x0.dim())?;
    check_dim(d, p.dim())?;
    check_symbols(x, &p.symbols())?;
    if !delta.contains(&vec![0; d]) {
        return Err(Error::Precondition("Δ must contain the origin".into()));
    }
    if let Some(w) = x.window().iter().find(|w| !delta.contains(w)) {
        return Err(Error::Precondition(format!(
            "Δ must contain the defining window; {} is missing",
            super::fmt_cell(w)
        )));
    }
    if !torus_valid(x, x0)? {
        return Err(Error::Precondition("x0 is not a point of X".into()));
    }
    if p.is_empty() {
        return Ok(TorusPeriodization {
            torus: x0.clone(),
            omega1: CellSet::empty(d),
            omega2: CellSet::empty(d),
            l: PeriodLattice::new(vec![1; d])?,
            h: x0.lattice().clone(),
            verified: true,
        });
    }
    let omega = p.support();
    let omega1 = minkowski_nbhd(&omega, delta)?;
    let omega2 = minkowski_nbhd(&omega1, &delta.difference_set())?;
    let l = PeriodLattice::new(omega2.extent())?;
    let h = x0.lattice().intersect(&l)?;

    let mut in_omega2 = vec![false; h.volume()];
    for c in omega2.iter() {
        let idx = h.index(c);
        if in_omega2[idx] {
            return Err(Error::Precondition(format!(
                "reduction mod {h} is not injective on Ω₂"
            )));
        }
        in_omega2[idx] = true;
    }
    let mut fixed: Vec<Option<Symbol>> = (0..h.volume())
        .map(|i| (!in_omega2[i]).then(|| x0.at(&h.cell(i))))
        .collect();
    for (c, s) in p.iter() {
        fixed[h.index(c)] = Some(s);
    }
    let csp = Csp::torus(x, &h, fixed);
    let mut solution = None;
    let mut budget = SEARCH_BUDGET.saturating_mul(16);
    let (end, conflict) = csp.search(&mut budget, |vals| {
        solution = Some(vals.to_vec());
        false
    });
    let cells = match (end, solution) {
        (SearchEnd::Stopped, Some(cells)) => cells,
        (SearchEnd::OutOfBudget, _) => {
            return Err(Error::CapExceeded(format!(
                "torus search on {h} ran out of budget"
            )))
        }
        _ => {
            let at = conflict
                .map(|ci| super::fmt_cell(&h.cell(ci)))
                .unwrap_or_else(|| "-".into());
            return Err(Error::HypothesisViolation(format!(
                "no point of X on lattice {h} carries the pattern and agrees with x0 off Ω₂ \
                 (last conflicting window at {at}); X may fail Δ-irreducibility or the pattern \
                 may not occur in X"
            )));
        }
    };
    let torus = TorusConfig {
        lattice: h.clone(),
        cells,
    };
    let verified = torus_valid(x, &torus)? && torus.matches(p);
    Ok(TorusPeriodization {
        torus,
        omega1,
        omega2,
        l,
        h,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn lat(p: &[usize]) -> PeriodLattice {
        PeriodLattice::new(p.to_vec()).unwrap()
    }

    fn golden_zd() -> SftZd {
        zoo::golden().to_zd()
    }

    fn at(d: usize, cells: &[(&[i64], Symbol)]) -> Pattern {
        Pattern::new(d, cells.iter().map(|(c, s)| (c.to_vec(), *s))).unwrap()
    }

    #[test]
    fn torus_validity() {
        let hs = zoo::hard_square();
        let single = TorusConfig::new(lat(&[2, 2]), vec![1, 0, 0, 0]).unwrap();
        assert!(torus_valid(&hs, &single).unwrap());
        let one = TorusConfig::new(lat(&[1, 1]), vec![1]).unwrap();
        assert!(!torus_valid(&hs, &one).unwrap());
        let led = zoo::ledrappier();
        assert!(torus_valid(&led, &TorusConfig::constant(lat(&[3, 4]), 0)).unwrap());
    }

    #[test]
    fn torus_enumeration() {
        assert_eq!(
            enumerate_torus(&zoo::hard_square(), &lat(&[2, 2]), 36)
                .unwrap()
                .len(),
            7
        );
        let full = zoo::full().to_zd();
        assert_eq!(enumerate_torus(&full, &lat(&[1]), 36).unwrap().len(), 2);
        let g: Vec<Vec<Symbol>> = enumerate_torus(&golden_zd(), &lat(&[3]), 36)
            .unwrap()
            .into_iter()
            .map(|t| t.cells().to_vec())
            .collect();
        assert_eq!(
            g,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert!(enumerate_torus(&golden_zd(), &lat(&[40]), 36).is_err());
    }

    #[test]
    fn periodize_golden_word() {
        let x = golden_zd();
        let delta = CellSet::cube(1, 1);
        let x0 = TorusConfig::constant(lat(&[1]), 0);
        let r = theorem11_periodicize(&x, &delta, &x0, &Pattern::from_word(&[1, 0, 1])).unwrap();
        assert_eq!(r.omega1, CellSet::box_between(&[-1], &[3]));
        assert_eq!(r.omega2, CellSet::box_between(&[-3], &[5]));
        assert_eq!(r.h.periods(), &[9]);
        assert_eq!(r.torus.cells(), &[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert!(r.verified);
    }

    #[test]
    fn periodize_hard_square_single_one() {
        let x = zoo::hard_square();
        let x0 = TorusConfig::constant(lat(&[1, 1]), 0);
        let r =
            theorem11_periodicize(&x, &CellSet::cube(2, 1), &x0, &at(2, &[(&[0, 0], 1)])).unwrap();
        assert_eq!(r.h.periods(), &[7, 7]);
        assert_eq!(r.torus.cells().iter().filter(|&&s| s == 1).count(), 1);
        assert!(r.verified);
    }

    #[test]
    fn periodize_preconditions() {
        let x = zoo::hard_square();
        let x0 = TorusConfig::constant(lat(&[2, 2]), 0);
        let r = theorem11_periodicize(&x, &CellSet::cube(2, 1), &x0, &Pattern::empty(2)).unwrap();
        assert_eq!(r.torus, x0);
        let small = CellSet::new(2, [vec![0, 0]]).unwrap();
        assert!(theorem11_periodicize(&x, &small, &x0, &Pattern::empty(2)).is_err());
        let bad = TorusConfig::constant(lat(&[1, 1]), 1);
        assert!(theorem11_periodicize(&x, &CellSet::cube(2, 1), &bad, &Pattern::empty(2)).is_err());
    }

    #[test]
    fn ledrappier_is_not_delta_irreducible() {
        // (0,0) ↦ 1 with (2,0), (0,2) ↦ 0 violates the two-step parity identity
        let x = zoo::ledrappier();
        let x0 = TorusConfig::constant(lat(&[1, 1]), 0);
        let p = at(2, &[(&[0, 0], 1), (&[2, 0], 0), (&[0, 2], 0)]);
        let r = theorem11_periodicize(&x, &CellSet::cube(2, 1), &x0, &p);
        assert!(matches!(r, Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn extendability() {
        let hs = zoo::hard_square();
        assert_eq!(
            pattern_extendable(&hs, &at(2, &[(&[0, 0], 1)]), 1).unwrap(),
            Extendable::Yes
        );
        let g = golden_zd();
        assert_eq!(
            pattern_extendable(&g, &Pattern::from_word(&[1, 1]), 2).unwrap(),
            Extendable::No
        );
        let led = zoo::ledrappier();
        let p = at(2, &[(&[0, 0], 1), (&[2, 0], 0), (&[0, 2], 0)]);
        assert_eq!(pattern_extendable(&led, &p, 3).unwrap(), Extendable::No);
        assert_eq!(
            pattern_extendable(&led, &at(2, &[(&[0, 0], 1)]), 2).unwrap(),
            Extendable::Yes
        );
    }
}
