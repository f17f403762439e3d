//! Sliding block codes and their action on period-`n` points.

use std::collections::BTreeSet;

use super::LabeledGraph;
use crate::error::{Error, Result};
use crate::word::{power_expand, Alphabet, Symbol, Word};

/// A sliding block code `y(i) = rule(x(i − memory) … x(i + anticipation))`.
#[derive(Clone, PartialEq, Eq)]
pub struct SlidingBlockCode {
    source: Alphabet,
    target: Alphabet,
    memory: usize,
    anticipation: usize,
    // indexed by the window read as a base-|source| number, most significant first
    table: Vec<Symbol>,
}

impl std::fmt::Debug for SlidingBlockCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SlidingBlockCode")
            .field("memory", &self.memory)
            .field("anticipation", &self.anticipation)
            .finish_non_exhaustive()
    }
}

impl SlidingBlockCode {
    pub fn from_fn(
        source: Alphabet,
        target: Alphabet,
        memory: usize,
        anticipation: usize,
        rule: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self> {
        let width = memory + anticipation + 1;
        let mut table = Vec::new();
        for w in source.words_of_length(width) {
            let s = rule(&w);
            if s as usize >= target.len() {
                return Err(Error::UnknownSymbol(format!("rule output {s}")));
            }
            table.push(s);
        }
        Ok(Self {
            source,
            target,
            memory,
            anticipation,
            table,
        })
    }

    /// Builds a code from an explicit table; every window must be listed.
    pub fn from_table(
        source: Alphabet,
        target: Alphabet,
        memory: usize,
        anticipation: usize,
        entries: &[(Word, Symbol)],
    ) -> Result<Self> {
        let width = memory + anticipation + 1;
        let mut table = Vec::new();
        for w in source.words_of_length(width) {
            let hit = entries
                .iter()
                .find(|(k, _)| *k == w)
                .ok_or_else(|| Error::Precondition(format!("rule undefined on {w:?}")))?;
            if hit.1 as usize >= target.len() {
                return Err(Error::UnknownSymbol(format!("rule output {}", hit.1)));
            }
            table.push(hit.1);
        }
        Ok(Self {
            source,
            target,
            memory,
            anticipation,
            table,
        })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet.clone(), alphabet, 0, 0, |w| w[0]).expect("identity")
    }

    /// `y(i) = x(i − 1)`, the action of the generator of ℤ.
    pub fn shift(alphabet: Alphabet) -> Self {
        Self::from_fn(alphabet.clone(), alphabet, 1, 0, |w| w[0]).expect("shift")
    }

    pub fn constant(alphabet: Alphabet, value: Symbol) -> Result<Self> {
        Self::from_fn(alphabet.clone(), alphabet, 0, 0, |_| value)
    }

    /// The factor map from the golden mean shift onto the even shift that
    /// replaces each `10` by `11`: `y(i) = 1` iff `x(i) = 1` or `x(i−1) = 1`.
    pub fn ten_to_eleven() -> Self {
        let a = Alphabet::digits(2);
        Self::from_fn(a.clone(), a, 1, 0, |w| (w[0] == 1 || w[1] == 1) as Symbol)
            .expect("binary rule")
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    fn lookup(&self, window: &[Symbol]) -> Symbol {
        let k = self.source.len();
        let idx = window.iter().fold(0usize, |acc, &s| acc * k + s as usize);
        self.table[idx]
    }

    /// Image of a finite word; the output is `memory + anticipation` shorter.
    pub fn apply_word(&self, w: &[Symbol]) -> Result<Word> {
        let width = self.window();
        if w.len() < width {
            return Err(Error::WordTooShort {
                needed: width,
                got: w.len(),
            });
        }
        Ok(Word(w.windows(width).map(|win| self.lookup(win)).collect()))
    }

    /// Image of `p^∞`, returned as the period-`|p|` word `y(1) … y(n)`.
    pub fn apply_periodic(&self, p: &[Symbol]) -> Result<Word> {
        if p.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = p.len() as i64;
        let span = power_expand(p, 1 - self.memory as i64, n + self.anticipation as i64)?;
        self.apply_word(&span)
    }
}

/// All length-`n` words `p` with `p^∞` in the shift presented by `graph`,
/// in lexicographic order. Each torus configuration appears once; rotations
/// are distinct points.
pub fn fixed_points_1d(graph: &LabeledGraph, n: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    let mut out = Vec::new();
    if graph.is_empty() {
        return Ok(out);
    }
    let all = vec![true; graph.vertex_count()];
    let mut prefix = Vec::with_capacity(n);
    extend_points(graph, &all, &mut prefix, n, &mut out);
    Ok(out)
}

fn extend_points(
    graph: &LabeledGraph,
    reach: &[bool],
    prefix: &mut Vec<Symbol>,
    n: usize,
    out: &mut Vec<Word>,
) {
    if prefix.len() == n {
        if graph.verify_cycle(prefix) {
            out.push(Word(prefix.clone()));
        }
        return;
    }
    for a in graph.alphabet().symbols() {
        let next = graph.sweep(reach, &[a]);
        if next.iter().any(|&b| b) {
            prefix.push(a);
            extend_points(graph, &next, prefix, n, out);
            prefix.pop();
        }
    }
}

/// Behaviour of a code restricted to a finite set of period-`n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoReport {
    pub period: usize,
    pub points: Vec<Word>,
    pub images: Vec<Word>,
    /// Every image lies in the target point set.
    pub self_map: bool,
    /// First point whose image leaves the target set, with that image.
    pub escape: Option<(Word, Word)>,
    pub injective: bool,
    /// Claimed only for injective self-maps.
    pub permutation: bool,
    /// `code(σp) = σ code(p)` on every point.
    pub shift_equivariant: bool,
}

/// Applies `code` to the period-`n` points of `source` and checks whether the
/// images are period-`n` points of `target`.
pub fn image_check(
    code: &SlidingBlockCode,
    source: &LabeledGraph,
    target: &LabeledGraph,
    n: usize,
) -> Result<EndoReport> {
    if code.source() != source.alphabet() || code.target() != target.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let points = fixed_points_1d(source, n)?;
    let targets: BTreeSet<Word> = fixed_points_1d(target, n)?.into_iter().collect();
    let mut images = Vec::with_capacity(points.len());
    let mut escape = None;
    let mut shift_equivariant = true;
    let shift = |w: &[Symbol]| power_expand(w, 0, n as i64 - 1).expect("nonempty");
    for p in &points {
        let y = code.apply_periodic(p)?;
        if escape.is_none() && !targets.contains(&y) {
            escape = Some((p.clone(), y.clone()));
        }
        if code.apply_periodic(&shift(p))? != shift(&y) {
            shift_equivariant = false;
        }
        images.push(y);
    }
    let distinct: BTreeSet<&Word> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let self_map = escape.is_none();
    Ok(EndoReport {
        period: n,
        self_map,
        escape,
        injective,
        permutation: self_map && injective && source == target,
        shift_equivariant,
        points,
        images,
    })
}

/// [`image_check`] with the target equal to the source.
pub fn endo_check_on_fixed_points(
    code: &SlidingBlockCode,
    graph: &LabeledGraph,
    n: usize,
) -> Result<EndoReport> {
    image_check(code, graph, graph, n)
}
