//! Filler-length conditions for subshifts over ℤ and the periodicization of
//! language words.
//!
//! A subshift is *W* when some `n0` bounds the fillers needed to glue any two
//! language words (`check_condition_a`), equivalently when it is irreducible
//! and every word glues to itself with a filler of length `≤ n0`
//! (`check_condition_b`). Given such an `n0`, [`periodicize_w`] embeds any
//! language word into a periodic point: pick `u0` whose filler set
//! `F(u0) = {c : |c| ≤ n0, u0 c u0 ∈ L}` has minimal size, glue
//! `u0 · u1 w u2 · u0`, and close the cycle with any `c0 ∈ F(u0)`.
//!
//! Bounded searches over an oracle only see words up to a depth; results
//! carry a [`Scope`] saying whether they are exact or depth-limited.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::language::{language_enum, Language, PeriodicVerdict};
use crate::word::{is_factor, PeriodicWord, Symbol, Word};

/// Default cap on `n0` for oracle certificate searches.
pub const DEFAULT_N0_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Exact for the sofic presentation.
    ExactSofic,
    /// Verified only for words up to the given length.
    Bounded(usize),
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scope::ExactSofic => write!(f, "exact-sofic"),
            Scope::Bounded(k) => write!(f, "bounded({k})"),
        }
    }
}

/// A filler bound `n0` with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WCertificate {
    pub n0: usize,
    pub scope: Scope,
    /// Search depth the certificate was produced at.
    pub depth: usize,
    /// Presentation bound `max N(v1, v2)`, when a presentation exists.
    pub exact_bound: Option<usize>,
    /// Pair that defeats `n0 − 1`.
    pub evidence: Option<(Word, Word)>,
}

/// The pair `(u0, c0)` driving the periodicization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerResult {
    pub u0: Word,
    pub c0: Word,
    pub fsize: usize,
    pub fset: Vec<Word>,
    pub scope: Scope,
    /// Restarts taken by the bounded stabilization check.
    pub restarts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionVerdict {
    Pass,
    Fail { u: Word, v: Word },
}

impl ConditionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionVerdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionBVerdict {
    /// Bounded irreducibility held with fillers up to `glue_cap` and every
    /// word glued to itself.
    Pass {
        glue_cap: usize,
    },
    NotIrreducible {
        u: Word,
        v: Word,
        glue_cap: usize,
    },
    NoSelfFiller {
        u: Word,
    },
}

impl ConditionBVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ConditionBVerdict::Pass { .. })
    }
}

fn require_in_language(x: &dyn Language, u: &[Symbol]) -> Result<()> {
    if x.contains(u) {
        Ok(())
    } else {
        Err(Error::NotInLanguage(x.alphabet().render(u)))
    }
}

/// `F(u) = {c : |c| ≤ n0, u c u ∈ L(X)}`, shortlex-sorted.
pub fn f_set(x: &dyn Language, u: &[Symbol], n0: usize) -> Result<Vec<Word>> {
    require_in_language(x, u)?;
    Ok(f_set_unchecked(x, u, &x.alphabet().words_up_to(n0)))
}

fn f_set_unchecked(x: &dyn Language, u: &[Symbol], candidates: &[Word]) -> Vec<Word> {
    let mut buf = Vec::with_capacity(2 * u.len() + 8);
    candidates
        .iter()
        .filter(|c| {
            buf.clear();
            buf.extend_from_slice(u);
            buf.extend_from_slice(c);
            buf.extend_from_slice(u);
            x.contains(&buf)
        })
        .cloned()
        .collect()
}

/// Words of `words` that are not a proper suffix of another member, i.e.
/// have no left extension inside the depth.
fn left_maximal(x: &dyn Language, words: &[Word], depth: usize) -> Vec<Word> {
    words
        .iter()
        .filter(|u| {
            u.len() == depth
                || !x
                    .alphabet()
                    .symbols()
                    .any(|a| x.contains(&Word::concat(&[&[a], u])))
        })
        .cloned()
        .collect()
}

fn right_maximal(x: &dyn Language, words: &[Word], depth: usize) -> Vec<Word> {
    words
        .iter()
        .filter(|v| {
            v.len() == depth
                || !x
                    .alphabet()
                    .symbols()
                    .any(|b| x.contains(&Word::concat(&[v, &[b]])))
        })
        .cloned()
        .collect()
}

fn glues_with(
    x: &dyn Language,
    u: &[Symbol],
    v: &[Symbol],
    fillers: &[Word],
    buf: &mut Vec<Symbol>,
) -> bool {
    fillers.iter().any(|c| {
        buf.clear();
        buf.extend_from_slice(u);
        buf.extend_from_slice(c);
        buf.extend_from_slice(v);
        x.contains(buf)
    })
}

fn first_failure(
    x: &dyn Language,
    us: &[Word],
    vs: &[Word],
    fillers: &[Word],
) -> Option<(Word, Word)> {
    let mut buf = Vec::new();
    for u in us {
        for v in vs {
            if !glues_with(x, u, v, fillers, &mut buf) {
                return Some((u.clone(), v.clone()));
            }
        }
    }
    None
}

/// Condition (a) at depth `ℓ`: every `u, v ∈ L(X)` with `|u|, |v| ≤ ℓ` glue
/// as `ucv ∈ L(X)` for some `|c| ≤ n0`. On failure, returns the first
/// failing pair in shortlex product order.
pub fn check_condition_a(x: &dyn Language, n0: usize, depth: usize) -> ConditionVerdict {
    let words = language_enum(x, depth);
    let fillers: Vec<Word> = x
        .alphabet()
        .words_up_to(n0)
        .into_iter()
        .filter(|c| x.contains(c))
        .collect();
    // Gluing passes to suffixes of u and prefixes of v, so maximal words decide.
    let us = left_maximal(x, &words, depth);
    let vs = right_maximal(x, &words, depth);
    if first_failure(x, &us, &vs, &fillers).is_none() {
        return ConditionVerdict::Pass;
    }
    match first_failure(x, &words, &words, &fillers) {
        Some((u, v)) => ConditionVerdict::Fail { u, v },
        None => ConditionVerdict::Pass,
    }
}

/// Shortlex BFS over fillers `w` with `u w ∈ L`, resolving each `v` in
/// `targets` by the first `w` with `u w v ∈ L`. Returns the index of the
/// first target left unresolved.
fn glue_targets(x: &dyn Language, u: &[Symbol], targets: &[Word], max_len: usize) -> Option<usize> {
    let mut open: Vec<bool> = vec![true; targets.len()];
    let mut remaining = targets.len();
    let mut level = vec![Word::empty()];
    let mut buf = Vec::new();
    for len in 0..=max_len {
        for w in &level {
            for (i, v) in targets.iter().enumerate() {
                if open[i] {
                    buf.clear();
                    buf.extend_from_slice(u);
                    buf.extend_from_slice(w);
                    buf.extend_from_slice(v);
                    if x.contains(&buf) {
                        open[i] = false;
                        remaining -= 1;
                    }
                }
            }
            if remaining == 0 {
                return None;
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &level {
            for a in x.alphabet().symbols() {
                let uwa = Word::concat(&[u, w, &[a]]);
                if x.contains(&uwa) {
                    next.push(Word::concat(&[w, &[a]]));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    open.iter().position(|&o| o)
}

/// Filler length cap used by the bounded irreducibility check.
pub fn glue_cap(n0: usize, depth: usize) -> usize {
    2 * depth + n0 + 2
}

/// Condition (b) at depth `ℓ`: bounded irreducibility with fillers up to
/// `2ℓ + n0 + 2`, and `ucu ∈ L(X)` for some `|c| ≤ n0` for every `|u| ≤ ℓ`.
pub fn check_condition_b(x: &dyn Language, n0: usize, depth: usize) -> ConditionBVerdict {
    let words = language_enum(x, depth);
    let candidates = x.alphabet().words_up_to(n0);
    for u in &words {
        if f_set_unchecked(x, u, &candidates).is_empty() {
            return ConditionBVerdict::NoSelfFiller { u: u.clone() };
        }
    }
    let cap = glue_cap(n0, depth);
    let us = left_maximal(x, &words, depth);
    let vs = right_maximal(x, &words, depth);
    if us.iter().all(|u| glue_targets(x, u, &vs, cap).is_none()) {
        return ConditionBVerdict::Pass { glue_cap: cap };
    }
    for u in &words {
        if let Some(i) = glue_targets(x, u, &words, cap) {
            return ConditionBVerdict::NotIrreducible {
                u: u.clone(),
                v: words[i].clone(),
                glue_cap: cap,
            };
        }
    }
    ConditionBVerdict::Pass { glue_cap: cap }
}

/// Finds a filler bound. With a strongly connected presentation, starts from
/// the presentation bound `max N(v1, v2)` and lowers it while condition (a)
/// still holds at `depth`; otherwise searches `n0 = 0, 1, …, cap`.
pub fn find_w_certificate(x: &dyn Language, depth: usize, cap: usize) -> Result<WCertificate> {
    if let Some(g) = x.presentation() {
        if g.is_empty() {
            return Err(Error::NotCertified {
                depth,
                reason: "empty subshift".into(),
            });
        }
        if !g.is_strongly_connected() {
            return Err(Error::NotCertified {
                depth,
                reason: "presentation is not strongly connected".into(),
            });
        }
        let bound = g.lemma43_n0()?;
        let mut n0 = bound;
        let mut evidence = None;
        while n0 > 0 {
            match check_condition_a(x, n0 - 1, depth) {
                ConditionVerdict::Pass => n0 -= 1,
                ConditionVerdict::Fail { u, v } => {
                    evidence = Some((u, v));
                    break;
                }
            }
        }
        return Ok(WCertificate {
            n0,
            scope: if n0 == bound {
                Scope::ExactSofic
            } else {
                Scope::Bounded(depth)
            },
            depth,
            exact_bound: Some(bound),
            evidence,
        });
    }
    let mut evidence = None;
    for n0 in 0..=cap {
        match check_condition_a(x, n0, depth) {
            ConditionVerdict::Pass => {
                return Ok(WCertificate {
                    n0,
                    scope: Scope::Bounded(depth),
                    depth,
                    exact_bound: None,
                    evidence,
                })
            }
            ConditionVerdict::Fail { u, v } => evidence = Some((u, v)),
        }
    }
    let (u, v) = evidence.expect("at least one failure");
    Err(Error::NotCertified {
        depth,
        reason: format!(
            "no n0 ≤ {cap} passes; ({}, {}) fails at n0 = {cap}",
            x.alphabet().render(&u),
            x.alphabet().render(&v)
        ),
    })
}

/// Bit set over vertex pairs `(i, j)`: "some path `i → j` spells `u`".
#[derive(Clone, PartialEq, Eq, Hash)]
struct Relation {
    bits: Vec<u64>,
}

impl Relation {
    fn new(n: usize) -> Self {
        Self {
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    fn set(&mut self, n: usize, i: usize, j: usize) {
        let k = i * n + j;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, n: usize, i: usize, j: usize) -> bool {
        let k = i * n + j;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

fn relation_step(g: &LabeledGraph, r: &Relation, a: Symbol) -> Relation {
    let n = g.vertex_count();
    let mut out = Relation::new(n);
    for i in 0..n {
        for j in 0..n {
            if r.get(n, i, j) {
                for &k in g.successors(j, a) {
                    out.set(n, i, k);
                }
            }
        }
    }
    out
}

fn relation_fset(g: &LabeledGraph, r: &Relation, candidates: &[Word]) -> Vec<Word> {
    let n = g.vertex_count();
    let ends: Vec<bool> = (0..n).map(|j| (0..n).any(|i| r.get(n, i, j))).collect();
    let starts: Vec<bool> = (0..n).map(|k| (0..n).any(|l| r.get(n, k, l))).collect();
    candidates
        .iter()
        .filter(|c| {
            g.sweep(&ends, c)
                .iter()
                .zip(&starts)
                .any(|(&reach, &start)| reach && start)
        })
        .cloned()
        .collect()
}

/// Exact global minimum of `|F(u)|` over `u ∈ L(X)` for the shift presented
/// by `g`. `F(u)` depends on `u` only through its path relation, so a
/// breadth-first closure over relations (in shortlex order of their first
/// word) visits every case.
pub fn min_fset_sofic(g: &LabeledGraph, n0: usize) -> Result<MinimizerResult> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.vertex_count();
    let candidates = g.alphabet().words_up_to(n0);
    let mut identity = Relation::new(n);
    for i in 0..n {
        identity.set(n, i, i);
    }
    let mut seen: HashMap<Relation, ()> = HashMap::new();
    let mut queue = VecDeque::from([(identity.clone(), Word::empty())]);
    seen.insert(identity, ());
    let mut best: Option<(Word, Vec<Word>)> = None;
    while let Some((rel, word)) = queue.pop_front() {
        let fset = relation_fset(g, &rel, &candidates);
        let better = match &best {
            None => true,
            Some((_, f)) => fset.len() < f.len(),
        };
        if better {
            best = Some((word.clone(), fset));
        }
        for a in g.alphabet().symbols() {
            let next = relation_step(g, &rel, a);
            if next.is_empty() || seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), ());
            queue.push_back((next, Word::concat(&[&word, &[a]])));
        }
    }
    let (u0, fset) = best.expect("identity relation visited");
    let c0 = fset.first().cloned().ok_or_else(|| {
        Error::Precondition(format!(
            "F(u0) is empty: n0 = {n0} is not a valid filler bound"
        ))
    })?;
    Ok(MinimizerResult {
        u0,
        c0,
        fsize: fset.len(),
        fset,
        scope: Scope::ExactSofic,
        restarts: 0,
    })
}

/// Bounded minimizer for oracles: searches `|u| ≤ depth` for the smallest
/// `F(u)`, then checks `F(u0 v u0) = F(u0)` for every `|v| ≤ depth` with
/// `u0 v u0 ∈ L(X)`, restarting from any word that shrinks the set.
pub fn min_fset_bounded(x: &dyn Language, n0: usize, depth: usize) -> Result<MinimizerResult> {
    let candidates = x.alphabet().words_up_to(n0);
    let words = language_enum(x, depth);
    if words.is_empty() {
        return Err(Error::NotInLanguage("ε".into()));
    }
    let mut best: Option<(Word, Vec<Word>)> = None;
    for u in &words {
        let f = f_set_unchecked(x, u, &candidates);
        if best.as_ref().is_none_or(|(_, bf)| f.len() < bf.len()) {
            best = Some((u.clone(), f));
        }
    }
    let (mut u0, mut f0) = best.expect("nonempty language");
    let mut restarts = 0;
    'stabilize: loop {
        if f0.is_empty() {
            return Err(Error::Precondition(format!(
                "F(u0) is empty: n0 = {n0} is not a valid filler bound"
            )));
        }
        for v in &words {
            let w = Word::concat(&[&u0, v, &u0]);
            if !x.contains(&w) {
                continue;
            }
            let f = f_set_unchecked(x, &w, &candidates);
            if f != f0 {
                if f.len() >= f0.len() || !f.iter().all(|c| f0.contains(c)) {
                    return Err(Error::Unstable(depth));
                }
                u0 = w;
                f0 = f;
                restarts += 1;
                continue 'stabilize;
            }
        }
        break;
    }
    Ok(MinimizerResult {
        c0: f0[0].clone(),
        fsize: f0.len(),
        u0,
        fset: f0,
        scope: Scope::Bounded(depth),
        restarts,
    })
}

/// Minimizer appropriate for `x`: exact when a strongly connected
/// presentation is available, bounded otherwise.
pub fn minimizer(x: &dyn Language, cert: &WCertificate) -> Result<MinimizerResult> {
    match x.presentation() {
        Some(g) if g.is_strongly_connected() => min_fset_sofic(g, cert.n0),
        _ => min_fset_bounded(x, cert.n0, cert.depth),
    }
}

/// Output of [`periodicize_w`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodization {
    /// Raw period word `u0 · u1 w u2 · u0 · c0`.
    pub p: Word,
    pub periodic: PeriodicWord,
    pub u0: Word,
    pub u1: Word,
    pub u2: Word,
    pub c0: Word,
    /// The word actually embedded; differs from the input only for `ε`.
    pub embedded: Word,
    pub verdict: PeriodicVerdict,
    pub glue_cap: usize,
    pub minimizer: MinimizerResult,
}

/// Shortlex-least `s` with `|s| ≤ max_len`, `prefix · s · suffix ∈ L(X)`,
/// pruning on `prefix · s ∈ L(X)`.
fn shortlex_glue(
    x: &dyn Language,
    prefix: &[Symbol],
    suffix: &[Symbol],
    max_len: usize,
) -> Option<Word> {
    let mut level = vec![Word::empty()];
    for len in 0..=max_len {
        for s in &level {
            if x.contains(&Word::concat(&[prefix, s, suffix])) {
                return Some(s.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for s in &level {
            for a in x.alphabet().symbols() {
                let sa = Word::concat(&[s, &[a]]);
                if x.contains(&Word::concat(&[prefix, &sa])) {
                    next.push(sa);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    None
}

/// Embeds `w ∈ L(X)` into a periodic point `p^∞ ∈ X` with
/// `p = u0 · u1 w u2 · u0 · c0`, and verifies the result.
pub fn periodicize_w(x: &dyn Language, w: &[Symbol], cert: &WCertificate) -> Result<Periodization> {
    require_in_language(x, w)?;
    let m = minimizer(x, cert)?;
    periodicize_with(x, w, cert, &m)
}

/// [`periodicize_w`] with a precomputed minimizer, for embedding many words.
pub fn periodicize_with(
    x: &dyn Language,
    w: &[Symbol],
    cert: &WCertificate,
    m: &MinimizerResult,
) -> Result<Periodization> {
    require_in_language(x, w)?;
    let embedded = if w.is_empty() {
        // ε occurs everywhere; embed the least nonempty word instead
        x.alphabet()
            .symbols()
            .map(|a| Word(vec![a]))
            .find(|a| x.contains(a))
            .ok_or_else(|| Error::NotInLanguage("ε".into()))?
    } else {
        Word::from_symbols(w)
    };
    let cap = glue_cap(cert.n0, cert.depth);
    let u0 = &m.u0;
    let u1 = shortlex_glue(x, u0, &embedded, cap).ok_or(Error::GluingExhausted(cap))?;
    let head = Word::concat(&[u0, &u1, &embedded]);
    let u2 = shortlex_glue(x, &head, u0, cap).ok_or(Error::GluingExhausted(cap))?;
    let p = Word::concat(&[u0, &u1, &embedded, &u2, u0, &m.c0]);
    if p.is_empty() {
        return Err(Error::EmptyWord);
    }
    let verdict = x.periodic_contains(&p);
    if !verdict.accepted() {
        return Err(Error::VerificationFailed(format!(
            "({})^∞ rejected",
            x.alphabet().render(&p)
        )));
    }
    let periodic = PeriodicWord::new(p.clone())?;
    debug_assert!(periodic.contains_subword(w));
    Ok(Periodization {
        periodic,
        p,
        u0: m.u0.clone(),
        u1,
        u2,
        c0: m.c0.clone(),
        embedded,
        verdict,
        glue_cap: cap,
        minimizer: m.clone(),
    })
}

/// Checks `v_j = (u0 v u0 c0)^{2^{j-1} − 1} u0 v u0` for `j = 1..=k`, where
/// `v_1 = u0 v u0` and `v_{j+1} = v_j c0 v_j`.
pub fn doubling_identity_check(u0: &[Symbol], v: &[Symbol], c0: &[Symbol], k: u32) -> bool {
    let base = Word::concat(&[u0, v, u0]);
    let block = Word::concat(&[&base, c0]);
    let mut vj = base.clone();
    for j in 1..=k.max(1) {
        let reps = (1usize << (j - 1)) - 1;
        let mut closed = Vec::with_capacity(reps * block.len() + base.len());
        for _ in 0..reps {
            closed.extend_from_slice(&block);
        }
        closed.extend_from_slice(&base);
        if vj.0 != closed {
            return false;
        }
        vj = Word::concat(&[&vj, c0, &vj]);
    }
    true
}

/// Bounded mixing evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixingEvidence {
    pub depth: usize,
    pub max_gap: usize,
    /// Least `N` such that every pair glues at every exact gap in
    /// `N..=max_gap`; `None` when even `max_gap` fails.
    pub transition: Option<usize>,
}

impl MixingEvidence {
    /// At least `depth + 1` consecutive gap lengths glue every pair.
    pub fn mixing(&self) -> bool {
        self.transition
            .is_some_and(|n| n + self.depth <= self.max_gap)
    }
}

fn glue_exact(
    x: &dyn Language,
    u: &[Symbol],
    v: &[Symbol],
    gap: usize,
    buf: &mut Vec<Symbol>,
) -> bool {
    if buf.len() == u.len() + gap {
        let ok = {
            buf.extend_from_slice(v);
            let r = x.contains(buf);
            buf.truncate(u.len() + gap);
            r
        };
        return ok;
    }
    for a in x.alphabet().symbols() {
        buf.push(a);
        if x.contains(buf) && glue_exact(x, u, v, gap, buf) {
            buf.pop();
            return true;
        }
        buf.pop();
    }
    false
}

/// Checks gluing with fillers of every exact length, for all pairs with
/// `|u| + |v| = depth` (which covers every shorter pair by extension).
pub fn mixing_evidence(x: &dyn Language, depth: usize) -> MixingEvidence {
    let max_gap = 2 * depth;
    let words = language_enum(x, depth);
    let mut pairs = Vec::new();
    for u in &words {
        for v in words.iter().filter(|v| v.len() + u.len() == depth) {
            pairs.push((u, v));
        }
    }
    let mut transition = None;
    let mut buf = Vec::new();
    for gap in (0..=max_gap).rev() {
        let all = pairs.iter().all(|(u, v)| {
            buf.clear();
            buf.extend_from_slice(u);
            glue_exact(x, u, v, gap, &mut buf)
        });
        if !all {
            break;
        }
        transition = Some(gap);
    }
    MixingEvidence {
        depth,
        max_gap,
        transition,
    }
}

/// True iff `w` is a factor of `p^k` for the periodicization output.
pub fn occurs_in_power(w: &[Symbol], p: &[Symbol]) -> bool {
    let reps = w.len() / p.len().max(1) + 2;
    let span: Vec<Symbol> = p.iter().copied().cycle().take(reps * p.len()).collect();
    is_factor(w, &span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;
    use crate::zoo;

    fn bin() -> Alphabet {
        Alphabet::digits(2)
    }

    fn w(s: &str) -> Word {
        bin().parse(s).unwrap()
    }

    fn sigma2() -> crate::language::Oracle1d {
        zoo::sigma(zoo::SigmaSpec::new(vec![], vec![2]).unwrap())
    }

    #[test]
    fn filler_sets() {
        let g = zoo::golden();
        assert_eq!(f_set(&g, &w("1"), 1).unwrap(), vec![w("0")]);
        assert_eq!(f_set(&g, &w("0"), 1).unwrap(), vec![w(""), w("0"), w("1")]);
        assert_eq!(f_set(&zoo::full(), &w("0110"), 0).unwrap(), vec![w("")]);
        assert!(matches!(
            f_set(&g, &w("11"), 1),
            Err(Error::NotInLanguage(_))
        ));
    }

    #[test]
    fn condition_a_examples() {
        assert!(check_condition_a(&zoo::full(), 0, 6).passed());
        assert_eq!(
            check_condition_a(&zoo::golden(), 0, 2),
            ConditionVerdict::Fail {
                u: w("1"),
                v: w("1")
            }
        );
        assert!(check_condition_a(&zoo::golden(), 1, 6).passed());
    }

    #[test]
    fn condition_b_examples() {
        assert!(check_condition_b(&zoo::two_point(), 1, 4).passed());
        assert_eq!(
            check_condition_b(&zoo::two_point(), 0, 1),
            ConditionBVerdict::NoSelfFiller { u: w("0") }
        );
        assert!(check_condition_b(&sigma2(), 3, 6).passed());
        let weiss = zoo::weiss_monotone();
        assert_eq!(
            check_condition_b(&weiss, 2, 2),
            ConditionBVerdict::NoSelfFiller { u: w("01") }
        );
    }

    #[test]
    fn certificates() {
        let c = find_w_certificate(&zoo::golden(), 6, DEFAULT_N0_CAP).unwrap();
        assert_eq!((c.n0, c.scope), (1, Scope::ExactSofic));
        assert_eq!(c.evidence, Some((w("1"), w("1"))));
        assert_eq!(
            find_w_certificate(&zoo::two_point(), 6, DEFAULT_N0_CAP)
                .unwrap()
                .n0,
            1
        );
        assert_eq!(
            find_w_certificate(&zoo::full(), 6, DEFAULT_N0_CAP)
                .unwrap()
                .n0,
            0
        );
        let s = find_w_certificate(&sigma2(), 8, DEFAULT_N0_CAP).unwrap();
        assert_eq!(s.scope, Scope::Bounded(8));
        assert!(s.n0 <= 3);
        assert!(matches!(
            find_w_certificate(&zoo::weiss_monotone(), 6, DEFAULT_N0_CAP),
            Err(Error::NotCertified { .. })
        ));
    }

    #[test]
    fn sofic_minimizer() {
        let g = zoo::golden();
        let m = min_fset_sofic(g.presentation().unwrap(), 1).unwrap();
        assert_eq!((m.u0, m.c0, m.fsize), (w("1"), w("0"), 1));
        let t = zoo::two_point();
        let m = min_fset_sofic(t.presentation().unwrap(), 1).unwrap();
        assert_eq!((m.u0, m.c0, m.fsize), (w("0"), w("1"), 1));
        let f = zoo::full();
        let m = min_fset_sofic(f.presentation().unwrap(), 0).unwrap();
        assert_eq!((m.u0, m.c0, m.fsize), (w(""), w(""), 1));
    }

    #[test]
    fn bounded_minimizer() {
        let m = min_fset_bounded(&sigma2(), 3, 6).unwrap();
        // 00 is forbidden, so 0c0 needs odd 1-runs throughout: 1, 101, 111
        assert_eq!((m.u0.clone(), m.c0.clone(), m.fsize), (w("0"), w("1"), 3));
        assert_eq!(m.fset, vec![w("1"), w("101"), w("111")]);
        let full = crate::language::Oracle1d::full(bin());
        let m = min_fset_bounded(&full, 0, 4).unwrap();
        assert_eq!((m.u0, m.c0), (w(""), w("")));
    }

    #[test]
    fn periodicize_examples() {
        let g = zoo::golden();
        let cert = find_w_certificate(&g, 6, DEFAULT_N0_CAP).unwrap();
        let r = periodicize_w(&g, &w("00"), &cert).unwrap();
        assert_eq!(r.p, w("10010"));
        assert_eq!(r.verdict, PeriodicVerdict::Exact(true));

        let t = zoo::two_point();
        let cert = find_w_certificate(&t, 6, DEFAULT_N0_CAP).unwrap();
        let r = periodicize_w(&t, &w("01"), &cert).unwrap();
        assert_eq!(
            (r.u0.clone(), r.u1.clone(), r.u2.clone(), r.c0.clone()),
            (w("0"), w("1"), w(""), w("1"))
        );
        assert_eq!(r.p, w("010101"));
        assert_eq!(r.periodic.canonical(), w("01"));

        let f = zoo::full();
        let cert = find_w_certificate(&f, 6, DEFAULT_N0_CAP).unwrap();
        assert_eq!(periodicize_w(&f, &w("0110"), &cert).unwrap().p, w("0110"));
        assert!(matches!(
            periodicize_w(&g, &w("11"), &cert),
            Err(Error::NotInLanguage(_))
        ));
    }

    #[test]
    fn doubling_identity() {
        assert!(doubling_identity_check(&w("1"), &w("00"), &w("0"), 3));
        assert!(doubling_identity_check(&w("1"), &w("0"), &w(""), 2));
        assert!(doubling_identity_check(&[], &[], &[], 4));
    }

    #[test]
    fn mixing_evidence_separates_periodic_gluing() {
        assert!(mixing_evidence(&zoo::golden(), 4).mixing());
        assert!(!mixing_evidence(&zoo::two_point(), 4).mixing());
        assert!(!mixing_evidence(&sigma2(), 4).mixing());
    }
}
