//! Subshifts of finite type over ℤ^d, finite patterns and torus
//! configurations on diagonal period lattices.
//!
//! Cells are integer vectors. Fundamental domains `[0,n_1)×…×[0,n_d)` are
//! stored row-major with the first coordinate varying slowest.

mod checks;
mod endo;
mod linear;
mod measure;
mod solve;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol};

pub use checks::{
    check_delta_propagation_1d, check_delta_propagation_zd, check_gluing, delta_irreducible_search,
    prop28_window_check, restricted_member_1d, GluingVerdict, IrreducibilityVerdict, Prop28Verdict,
    PropagationVerdict,
};
pub use endo::{endo_check_torus, LocalRuleZd, TorusEndoReport};
pub use linear::{ledrappier_fixed_points, LedrappierKernel};
pub use measure::{measure_from_orbits, orbit_of, OrbitMeasureSpec};
pub use solve::{
    enumerate_torus, pattern_extendable, theorem11_periodicize, torus_valid, Extendable,
    TorusPeriodization, DEFAULT_TORUS_CAP, SEARCH_BUDGET,
};

pub type Cell = Vec<i64>;

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A finite set of cells of ℤ^d, kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSet {
    d: usize,
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new(d: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        if d == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut set = BTreeSet::new();
        for c in cells {
            check_dim(d, c.len())?;
            set.insert(c);
        }
        Ok(Self { d, cells: set })
    }

    pub fn empty(d: usize) -> Self {
        Self {
            d,
            cells: BTreeSet::new(),
        }
    }

    /// The box `[lo, hi]` (inclusive on every axis).
    pub fn box_between(lo: &[i64], hi: &[i64]) -> Self {
        let d = lo.len();
        let mut cells = BTreeSet::new();
        for_each_in_box(lo, hi, |c| {
            cells.insert(c.to_vec());
        });
        Self { d, cells }
    }

    /// `{−r, …, r}^d`.
    pub fn cube(d: usize, r: i64) -> Self {
        Self::box_between(&vec![-r; d], &vec![r; d])
    }

    /// `{0, …, n−1}` in dimension one.
    pub fn interval(n: usize) -> Self {
        Self::box_between(&[0], &[n as i64 - 1])
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        self.cells.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.cells.is_disjoint(&other.cells)
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet {
            d: self.d,
            cells: self.cells.union(&other.cells).cloned().collect(),
        }
    }

    /// `{a − b : a, b ∈ self}`.
    pub fn difference_set(&self) -> CellSet {
        let mut cells = BTreeSet::new();
        for a in &self.cells {
            for b in &self.cells {
                cells.insert(sub(a, b));
            }
        }
        CellSet { d: self.d, cells }
    }

    pub fn translate(&self, v: &[i64]) -> CellSet {
        CellSet {
            d: self.d,
            cells: self.cells.iter().map(|c| add(c, v)).collect(),
        }
    }

    /// Inclusive bounding box, `None` when empty.
    pub fn bounding_box(&self) -> Option<(Cell, Cell)> {
        let first = self.cells.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for c in &self.cells {
            for i in 0..self.d {
                lo[i] = lo[i].min(c[i]);
                hi[i] = hi[i].max(c[i]);
            }
        }
        Some((lo, hi))
    }

    /// `max − min + 1` per axis; zeros when empty.
    pub fn extent(&self) -> Vec<usize> {
        match self.bounding_box() {
            Some((lo, hi)) => lo
                .iter()
                .zip(&hi)
                .map(|(l, h)| (h - l + 1) as usize)
                .collect(),
            None => vec![0; self.d],
        }
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_cell(c))?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn fmt_cell(c: &[i64]) -> String {
    if c.len() == 1 {
        c[0].to_string()
    } else {
        let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Cell {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Cell {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Calls `f` on every cell of the inclusive box `[lo, hi]`, row-major.
pub(crate) fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut c = lo.to_vec();
    loop {
        f(&c);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < hi[i] {
                c[i] += 1;
                break;
            }
            c[i] = lo[i];
        }
    }
}

/// `Ω^{+Δ} = {ω − δ : ω ∈ Ω, δ ∈ Δ}`: the cells `g` whose translate `g + Δ`
/// meets `Ω`.
pub fn minkowski_nbhd(omega: &CellSet, delta: &CellSet) -> Result<CellSet> {
    check_dim(omega.d, delta.d)?;
    let mut cells = BTreeSet::new();
    for w in &omega.cells {
        for dl in &delta.cells {
            cells.insert(sub(w, dl));
        }
    }
    Ok(CellSet { d: omega.d, cells })
}

/// A finite pattern: a symbol on each cell of its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    d: usize,
    values: BTreeMap<Cell, Symbol>,
}

impl Pattern {
    pub fn new(d: usize, entries: impl IntoIterator<Item = (Cell, Symbol)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (c, s) in entries {
            check_dim(d, c.len())?;
            if values.insert(c.clone(), s).is_some_and(|old| old != s) {
                return Err(Error::Precondition(format!(
                    "cell {} assigned twice",
                    fmt_cell(&c)
                )));
            }
        }
        Ok(Self { d, values })
    }

    pub fn empty(d: usize) -> Self {
        Self {
            d,
            values: BTreeMap::new(),
        }
    }

    /// Assigns `symbols` to the cells of `support` in lexicographic order.
    pub fn on(support: &CellSet, symbols: &[Symbol]) -> Result<Self> {
        if support.len() != symbols.len() {
            return Err(Error::Precondition(format!(
                "{} values for {} cells",
                symbols.len(),
                support.len()
            )));
        }
        Ok(Self {
            d: support.d,
            values: support
                .cells
                .iter()
                .cloned()
                .zip(symbols.iter().copied())
                .collect(),
        })
    }

    /// A word placed on `{0, …, |w|−1}`.
    pub fn from_word(w: &[Symbol]) -> Self {
        Self {
            d: 1,
            values: w
                .iter()
                .enumerate()
                .map(|(i, &s)| (vec![i as i64], s))
                .collect(),
        }
    }

    /// Every pattern on `support` over `alphabet`, lexicographic with the
    /// least cell most significant.
    pub fn all_on(support: &CellSet, alphabet: &Alphabet) -> Vec<Pattern> {
        alphabet
            .words_of_length(support.len())
            .into_iter()
            .map(|w| Pattern::on(support, &w).expect("sizes agree"))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, c: &[i64]) -> Option<Symbol> {
        self.values.get(c).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, Symbol)> {
        self.values.iter().map(|(c, &s)| (c, s))
    }

    pub fn support(&self) -> CellSet {
        CellSet {
            d: self.d,
            cells: self.values.keys().cloned().collect(),
        }
    }

    /// Values in lexicographic cell order.
    pub fn symbols(&self) -> Vec<Symbol> {
        self.values.values().copied().collect()
    }

    pub fn restrict(&self, cells: &CellSet) -> Pattern {
        Pattern {
            d: self.d,
            values: self
                .values
                .iter()
                .filter(|(c, _)| cells.contains(c))
                .map(|(c, &s)| (c.clone(), s))
                .collect(),
        }
    }

    pub fn translate(&self, v: &[i64]) -> Pattern {
        Pattern {
            d: self.d,
            values: self.values.iter().map(|(c, &s)| (add(c, v), s)).collect(),
        }
    }

    /// Union of two patterns agreeing on their common cells.
    pub fn merge(&self, other: &Pattern) -> Result<Pattern> {
        check_dim(self.d, other.d)?;
        Pattern::new(
            self.d,
            self.values
                .iter()
                .chain(other.values.iter())
                .map(|(c, &s)| (c.clone(), s)),
        )
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(c, &s)| format!("{}:{}", fmt_cell(c), alphabet.token(s)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// The diagonal lattice `n_1ℤ × … × n_dℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodLattice {
    periods: Vec<usize>,
}

impl PeriodLattice {
    pub fn new(periods: Vec<usize>) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if periods.contains(&0) {
            return Err(Error::Precondition("periods must be positive".into()));
        }
        Ok(Self { periods })
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn dim(&self) -> usize {
        self.periods.len()
    }

    /// Number of cells in the fundamental domain.
    pub fn volume(&self) -> usize {
        self.periods.iter().product()
    }

    /// The intersection with another diagonal lattice.
    pub fn intersect(&self, other: &PeriodLattice) -> Result<PeriodLattice> {
        check_dim(self.dim(), other.dim())?;
        Ok(PeriodLattice {
            periods: self
                .periods
                .iter()
                .zip(&other.periods)
                .map(|(a, b)| a.lcm(b))
                .collect(),
        })
    }

    /// Row-major index of the residue class of `g`.
    pub fn index(&self, g: &[i64]) -> usize {
        let mut idx = 0usize;
        for (x, &n) in g.iter().zip(&self.periods) {
            idx = idx * n + x.rem_euclid(n as i64) as usize;
        }
        idx
    }

    /// Representative of index `idx` in the fundamental domain.
    pub fn cell(&self, mut idx: usize) -> Cell {
        let mut c = vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let n = self.periods[i];
            c[i] = (idx % n) as i64;
            idx /= n;
        }
        c
    }

    /// Fundamental domain cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.volume()).map(|i| self.cell(i))
    }
}

impl fmt::Display for PeriodLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.periods.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A configuration periodic under a diagonal lattice, stored on the
/// fundamental domain.
///
/// Equality is equality of configurations: two values compare equal when
/// they describe the same point of `A^{ℤ^d}`, whatever lattice stores them.
#[derive(Debug, Clone)]
pub struct TorusConfig {
    lattice: PeriodLattice,
    cells: Vec<Symbol>,
}

impl TorusConfig {
    pub fn new(lattice: PeriodLattice, cells: Vec<Symbol>) -> Result<Self> {
        if cells.len() != lattice.volume() {
            return Err(Error::Precondition(format!(
                "{} cells for a domain of {}",
                cells.len(),
                lattice.volume()
            )));
        }
        Ok(Self { lattice, cells })
    }

    pub fn constant(lattice: PeriodLattice, s: Symbol) -> Self {
        let n = lattice.volume();
        Self {
            lattice,
            cells: vec![s; n],
        }
    }

    pub fn from_fn(lattice: PeriodLattice, f: impl Fn(&[i64]) -> Symbol) -> Self {
        let cells = lattice.cells().map(|c| f(&c)).collect();
        Self { lattice, cells }
    }

    /// `w^∞` with `w` on positions `0, …, |w|−1`.
    pub fn from_word(w: &[Symbol]) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        Self::new(PeriodLattice::new(vec![w.len()])?, w.to_vec())
    }

    pub fn lattice(&self) -> &PeriodLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Fundamental domain values, row-major.
    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn at(&self, g: &[i64]) -> Symbol {
        self.cells[self.lattice.index(g)]
    }

    /// The configuration `y'(g) = y(g − v)`.
    pub fn translate(&self, v: &[i64]) -> TorusConfig {
        TorusConfig::from_fn(self.lattice.clone(), |g| self.at(&sub(g, v)))
    }

    /// The same configuration stored on its smallest diagonal lattice.
    pub fn reduced(&self) -> TorusConfig {
        let d = self.dim();
        let mut periods = self.lattice.periods.clone();
        for i in 0..d {
            let n = periods[i];
            for t in (1..=n).filter(|t| n.is_multiple_of(*t)) {
                let mut e = vec![0i64; d];
                e[i] = t as i64;
                if self
                    .lattice
                    .cells()
                    .all(|g| self.at(&g) == self.at(&add(&g, &e)))
                {
                    periods[i] = t;
                    break;
                }
            }
        }
        let lattice = PeriodLattice { periods };
        TorusConfig::from_fn(lattice, |g| self.at(g))
    }

    /// Lifts to a coarser lattice (every period of `lattice` a multiple of
    /// the current one).
    pub fn lift(&self, lattice: &PeriodLattice) -> Result<TorusConfig> {
        check_dim(self.dim(), lattice.dim())?;
        if lattice
            .periods
            .iter()
            .zip(&self.lattice.periods)
            .any(|(m, n)| m % n != 0)
        {
            return Err(Error::Precondition(format!(
                "lattice {lattice} is not contained in {}",
                self.lattice
            )));
        }
        Ok(TorusConfig::from_fn(lattice.clone(), |g| self.at(g)))
    }

    pub fn matches(&self, p: &Pattern) -> bool {
        p.d == self.dim() && p.iter().all(|(c, s)| self.at(c) == s)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let sep = if alphabet.tokens().iter().all(|t| t.chars().count() == 1) {
            ""
        } else {
            " "
        };
        let row = *self.lattice.periods.last().expect("d ≥ 1");
        self.cells
            .chunks(row)
            .map(|chunk| {
                chunk
                    .iter()
                    .map(|&s| alphabet.token(s))
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl PartialEq for TorusConfig {
    fn eq(&self, other: &Self) -> bool {
        if self.lattice == other.lattice {
            return self.cells == other.cells;
        }
        if self.dim() != other.dim() {
            return false;
        }
        let a = self.reduced();
        let b = other.reduced();
        a.lattice == b.lattice && a.cells == b.cells
    }
}

impl Eq for TorusConfig {}

impl std::hash::Hash for TorusConfig {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.lattice.hash(state);
        r.cells.hash(state);
    }
}

#[derive(Debug, Clone)]
enum AllowedTable {
    Dense(Vec<bool>),
    Sparse(HashSet<Vec<Symbol>>),
}

const DENSE_TABLE_LIMIT: usize = 1 << 20;

/// `X(Δ₀, P)`: configurations whose every translate reads an allowed pattern
/// on the window `Δ₀`.
#[derive(Debug, Clone)]
pub struct SftZd {
    d: usize,
    alphabet: Alphabet,
    window: Vec<Cell>,
    allowed: Vec<Vec<Symbol>>,
    table: AllowedTable,
}

impl PartialEq for SftZd {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.alphabet == other.alphabet
            && self.window == other.window
            && self.allowed == other.allowed
    }
}

impl Eq for SftZd {}

impl SftZd {
    /// Allowed rows list the symbols on `window` in the given cell order.
    pub fn new(
        d: usize,
        alphabet: Alphabet,
        window: Vec<Cell>,
        allowed: Vec<Vec<Symbol>>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for c in &window {
            check_dim(d, c.len())?;
        }
        if window.iter().collect::<HashSet<_>>().len() != window.len() {
            return Err(Error::InvalidSubshift("window has repeated cells".into()));
        }
        if !window.iter().any(|c| c.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidSubshift(
                "window must contain the origin".into(),
            ));
        }
        let k = alphabet.len();
        for row in &allowed {
            if row.len() != window.len() {
                return Err(Error::InvalidSubshift(format!(
                    "allowed pattern of size {} for a window of {}",
                    row.len(),
                    window.len()
                )));
            }
            if let Some(&s) = row.iter().find(|&&s| s as usize >= k) {
                return Err(Error::UnknownSymbol(s.to_string()));
            }
        }
        let mut allowed = allowed;
        allowed.sort();
        allowed.dedup();
        let size = (k as u128).checked_pow(window.len() as u32);
        let table = match size {
            Some(n) if n <= DENSE_TABLE_LIMIT as u128 => {
                let mut t = vec![false; n as usize];
                for row in &allowed {
                    t[encode(k, row)] = true;
                }
                AllowedTable::Dense(t)
            }
            _ => AllowedTable::Sparse(allowed.iter().cloned().collect()),
        };
        Ok(Self {
            d,
            alphabet,
            window,
            allowed,
            table,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window(&self) -> &[Cell] {
        &self.window
    }

    pub fn window_set(&self) -> CellSet {
        CellSet {
            d: self.d,
            cells: self.window.iter().cloned().collect(),
        }
    }

    /// Allowed window patterns, sorted.
    pub fn allowed(&self) -> &[Vec<Symbol>] {
        &self.allowed
    }

    /// Whether `values` (read on the window cells in order) is allowed.
    pub fn admits(&self, values: &[Symbol]) -> bool {
        match &self.table {
            AllowedTable::Dense(t) => t[encode(self.alphabet.len(), values)],
            AllowedTable::Sparse(s) => s.contains(values),
        }
    }

    /// `max − min` of the window along each axis.
    pub fn window_span(&self) -> Vec<usize> {
        (0..self.d)
            .map(|i| {
                let lo = self.window.iter().map(|c| c[i]).min().unwrap_or(0);
                let hi = self.window.iter().map(|c| c[i]).max().unwrap_or(0);
                (hi - lo) as usize
            })
            .collect()
    }

    /// Symbols `a` whose constant configuration lies in the shift.
    pub fn quiescent_symbols(&self) -> Vec<Symbol> {
        self.alphabet
            .symbols()
            .filter(|&a| self.admits(&vec![a; self.window.len()]))
            .collect()
    }

    /// Whether the pattern is locally admissible: every window translate
    /// contained in its support reads an allowed pattern.
    pub fn locally_admissible(&self, p: &Pattern) -> bool {
        let mut buf = Vec::with_capacity(self.window.len());
        p.iter().all(|(c, _)| {
            // each contained translate is visited from its first window cell
            let g = sub(c, &self.window[0]);
            buf.clear();
            for w in &self.window {
                match p.get(&add(&g, w)) {
                    Some(s) => buf.push(s),
                    None => return true,
                }
            }
            self.admits(&buf)
        })
    }
}

fn encode(k: usize, values: &[Symbol]) -> usize {
    values.iter().fold(0usize, |acc, &s| acc * k + s as usize)
}
