//! Bounded evidence for Δ-propagation, Δ-irreducibility and the window
//! description `X = X(Δ, X|_Δ)` of propagating shifts.

use std::collections::HashMap;

use super::solve::{pattern_extendable, Extendable};
use super::{check_dim, minkowski_nbhd, sub, Cell, CellSet, Pattern, SftZd};
use crate::error::{Error, Result};
use crate::language::Language;
use crate::word::Symbol;

/// Whether the one-dimensional pattern is the restriction of some word of
/// `L(X)` spanning its support (gaps are filled by search).
pub fn restricted_member_1d(x: &dyn Language, p: &Pattern) -> Result<bool> {
    check_dim(1, p.dim())?;
    let Some((lo, hi)) = p.support().bounding_box() else {
        return Ok(x.contains(&[]));
    };
    let span: Vec<Option<Symbol>> = (lo[0]..=hi[0]).map(|i| p.get(&[i])).collect();
    let mut buf = Vec::with_capacity(span.len());
    Ok(fill_gaps(x, &span, &mut buf))
}

fn fill_gaps(x: &dyn Language, span: &[Option<Symbol>], buf: &mut Vec<Symbol>) -> bool {
    if buf.len() == span.len() {
        return true;
    }
    let choices: Vec<Symbol> = match span[buf.len()] {
        Some(s) => vec![s],
        None => x.alphabet().symbols().collect(),
    };
    for a in choices {
        buf.push(a);
        // prefixes of language words stay in the language
        if x.contains(buf) && fill_gaps(x, span, buf) {
            buf.pop();
            return true;
        }
        buf.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagationVerdict {
    /// No violation among `patterns` patterns whose windows all restrict to
    /// the shift; `inconclusive` of them could not be decided.
    Pass {
        patterns: usize,
        inconclusive: usize,
    },
    /// Every `Ω ∩ (g + Δ)` restriction of `pattern` occurs in the shift but
    /// the pattern itself does not.
    Fail { omega: CellSet, pattern: Pattern },
}

impl PropagationVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PropagationVerdict::Pass { .. })
    }
}

/// Runs the Δ-propagation test over every pattern on every sample set.
/// `member` answers "is this pattern a restriction of a point of `X`".
fn propagation(
    alphabet: &crate::word::Alphabet,
    delta: &CellSet,
    samples: &[CellSet],
    mut member: impl FnMut(&Pattern) -> Result<Extendable>,
) -> Result<PropagationVerdict> {
    let mut cache: HashMap<Pattern, Extendable> = HashMap::new();
    let mut patterns = 0;
    let mut inconclusive = 0;
    for omega in samples {
        check_dim(delta.dim(), omega.dim())?;
        let translates: Vec<CellSet> = minkowski_nbhd(omega, delta)?
            .iter()
            .map(|g| delta.translate(g))
            .collect();
        'patterns: for p in Pattern::all_on(omega, alphabet) {
            let mut undecided = false;
            for t in &translates {
                let r = p.restrict(t);
                let v = match cache.get(&r) {
                    Some(&v) => v,
                    None => {
                        let v = member(&r)?;
                        cache.insert(r, v);
                        v
                    }
                };
                match v {
                    Extendable::No => continue 'patterns,
                    Extendable::Unknown => undecided = true,
                    Extendable::Yes => {}
                }
            }
            patterns += 1;
            if undecided {
                inconclusive += 1;
                continue;
            }
            match member(&p)? {
                Extendable::No => {
                    return Ok(PropagationVerdict::Fail {
                        omega: omega.clone(),
                        pattern: p,
                    })
                }
                Extendable::Unknown => inconclusive += 1,
                Extendable::Yes => {}
            }
        }
    }
    Ok(PropagationVerdict::Pass {
        patterns,
        inconclusive,
    })
}

/// Δ-propagation over ℤ, decided exactly through the language.
pub fn check_delta_propagation_1d(
    x: &dyn Language,
    delta: &CellSet,
    samples: &[CellSet],
) -> Result<PropagationVerdict> {
    check_dim(1, delta.dim())?;
    propagation(x.alphabet(), delta, samples, |p| {
        Ok(if restricted_member_1d(x, p)? {
            Extendable::Yes
        } else {
            Extendable::No
        })
    })
}

/// Δ-propagation over ℤ^d, using [`pattern_extendable`] with `margin`.
pub fn check_delta_propagation_zd(
    x: &SftZd,
    delta: &CellSet,
    samples: &[CellSet],
    margin: usize,
) -> Result<PropagationVerdict> {
    check_dim(x.dim(), delta.dim())?;
    propagation(x.alphabet(), delta, samples, |p| {
        pattern_extendable(x, p, margin)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GluingVerdict {
    Glues,
    Fails,
    Unknown,
    /// `Ω₁^{+Δ}` meets `Ω₂`.
    NotSeparated,
    /// One of the two patterns is not known to occur in the shift.
    InvalidPattern,
}

/// Tests Δ-irreducibility on one instance: can `p1` on `Ω₁` and `p2` on
/// `Ω₂` be realized by a single point when `Ω₁^{+Δ} ∩ Ω₂ = ∅`?
pub fn check_gluing(
    x: &SftZd,
    delta: &CellSet,
    p1: &Pattern,
    p2: &Pattern,
    margin: usize,
) -> Result<GluingVerdict> {
    let near = minkowski_nbhd(&p1.support(), delta)?;
    if !near.is_disjoint(&p2.support()) {
        return Ok(GluingVerdict::NotSeparated);
    }
    for p in [p1, p2] {
        if pattern_extendable(x, p, margin)? != Extendable::Yes {
            return Ok(GluingVerdict::InvalidPattern);
        }
    }
    Ok(match pattern_extendable(x, &p1.merge(p2)?, margin)? {
        Extendable::Yes => GluingVerdict::Glues,
        Extendable::No => GluingVerdict::Fails,
        Extendable::Unknown => GluingVerdict::Unknown,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    /// Evidence only: every separated pair at this bound glued or stayed
    /// undecided.
    NoCounterexample { pairs: usize, inconclusive: usize },
    Counterexample {
        omega1: CellSet,
        omega2: CellSet,
        p1: Pattern,
        p2: Pattern,
    },
}

/// Subsets of `cells` with 1 to `maxsize` elements, by size then
/// lexicographically.
fn small_subsets(d: usize, cells: &[Cell], maxsize: usize) -> Vec<CellSet> {
    fn rec(cells: &[Cell], start: usize, k: usize, cur: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..cells.len() {
            cur.push(cells[i].clone());
            rec(cells, i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=maxsize.min(cells.len()) {
        let mut sets = Vec::new();
        rec(cells, 0, k, &mut Vec::new(), &mut sets);
        out.extend(
            sets.into_iter()
                .map(|s| CellSet::new(d, s).expect("same dimension")),
        );
    }
    out
}

/// Searches pairs `Ω₁ ∋ 0`, `Ω₂` inside `{−r, …, r}^d` with at most
/// `maxsize` cells and `Ω₁^{+Δ} ∩ Ω₂ = ∅`, and patterns occurring in `X` on
/// each, for a pair that cannot be glued. Sets are visited by size then
/// lexicographically, patterns lexicographically.
pub fn delta_irreducible_search(
    x: &SftZd,
    delta: &CellSet,
    radius: i64,
    maxsize: usize,
    margin: usize,
) -> Result<IrreducibilityVerdict> {
    let d = x.dim();
    check_dim(d, delta.dim())?;
    let frame: Vec<Cell> = CellSet::cube(d, radius).iter().cloned().collect();
    let origin = vec![0i64; d];
    let sets = small_subsets(d, &frame, maxsize);
    let mut valid: HashMap<CellSet, Vec<Pattern>> = HashMap::new();
    let mut occurring = |s: &CellSet| -> Result<Vec<Pattern>> {
        if let Some(v) = valid.get(s) {
            return Ok(v.clone());
        }
        let mut v = Vec::new();
        for p in Pattern::all_on(s, x.alphabet()) {
            if pattern_extendable(x, &p, margin)? == Extendable::Yes {
                v.push(p);
            }
        }
        valid.insert(s.clone(), v.clone());
        Ok(v)
    };
    let mut pairs = 0;
    let mut inconclusive = 0;
    for omega1 in sets.iter().filter(|s| s.contains(&origin)) {
        let near = minkowski_nbhd(omega1, delta)?;
        let p1s = occurring(omega1)?;
        for omega2 in sets.iter().filter(|s| s.is_disjoint(&near)) {
            let p2s = occurring(omega2)?;
            for p1 in &p1s {
                for p2 in &p2s {
                    pairs += 1;
                    match pattern_extendable(x, &p1.merge(p2)?, margin)? {
                        Extendable::No => {
                            return Ok(IrreducibilityVerdict::Counterexample {
                                omega1: omega1.clone(),
                                omega2: omega2.clone(),
                                p1: p1.clone(),
                                p2: p2.clone(),
                            })
                        }
                        Extendable::Unknown => inconclusive += 1,
                        Extendable::Yes => {}
                    }
                }
            }
        }
    }
    Ok(IrreducibilityVerdict::NoCounterexample {
        pairs,
        inconclusive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop28Verdict {
    Pass {
        patterns: usize,
        inconclusive: usize,
    },
    /// A box pattern on which local admissibility for `X(Δ, X|_Δ)` and
    /// occurrence in `X` disagree.
    Fail {
        frame: CellSet,
        pattern: Pattern,
        locally_admissible: bool,
        extendable: Extendable,
    },
}

impl Prop28Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Prop28Verdict::Pass { .. })
    }
}

/// Compares, on each box, the patterns admissible for `X(Δ, X|_Δ)` with the
/// patterns occurring in `X`.
pub fn prop28_window_check(
    x: &SftZd,
    delta: &CellSet,
    boxes: &[CellSet],
    margin: usize,
) -> Result<Prop28Verdict> {
    check_dim(x.dim(), delta.dim())?;
    if delta.is_empty() {
        return Err(Error::Precondition("Δ must be nonempty".into()));
    }
    let mut inconclusive = 0;
    let mut window_patterns: Vec<Pattern> = Vec::new();
    for p in Pattern::all_on(delta, x.alphabet()) {
        match pattern_extendable(x, &p, margin)? {
            Extendable::Yes => window_patterns.push(p),
            Extendable::Unknown => inconclusive += 1,
            Extendable::No => {}
        }
    }
    let mut patterns = 0;
    for frame in boxes {
        check_dim(x.dim(), frame.dim())?;
        // every translate meeting the box must agree with some window pattern
        let offsets: Vec<Cell> = minkowski_nbhd(frame, delta)?.iter().cloned().collect();
        let mut seen: HashMap<Pattern, bool> = HashMap::new();
        for q in Pattern::all_on(frame, x.alphabet()) {
            patterns += 1;
            let local = offsets.iter().all(|g| {
                let r = q
                    .restrict(&delta.translate(g))
                    .translate(&sub(&vec![0; g.len()], g));
                *seen.entry(r).or_insert_with_key(|r| {
                    window_patterns
                        .iter()
                        .any(|w| r.iter().all(|(c, s)| w.get(c) == Some(s)))
                })
            });
            let ext = pattern_extendable(x, &q, margin)?;
            let agree = match ext {
                Extendable::Yes => local,
                Extendable::No => !local,
                Extendable::Unknown => {
                    inconclusive += 1;
                    true
                }
            };
            if !agree {
                return Ok(Prop28Verdict::Fail {
                    frame: frame.clone(),
                    pattern: q,
                    locally_admissible: local,
                    extendable: ext,
                });
            }
        }
    }
    Ok(Prop28Verdict::Pass {
        patterns,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn ints(v: &[i64]) -> CellSet {
        CellSet::new(1, v.iter().map(|&i| vec![i])).unwrap()
    }

    #[test]
    fn gap_filling_membership() {
        let g = zoo::golden();
        let p = Pattern::new(1, [(vec![0], 1), (vec![2], 1)]).unwrap();
        assert!(restricted_member_1d(&g, &p).unwrap());
        let q = Pattern::new(1, [(vec![0], 1), (vec![1], 1)]).unwrap();
        assert!(!restricted_member_1d(&g, &q).unwrap());
        let e = zoo::even();
        let r = Pattern::new(1, [(vec![0], 0), (vec![1], 1), (vec![3], 0)]).unwrap();
        assert!(restricted_member_1d(&e, &r).unwrap());
        let s = Pattern::new(1, [(vec![0], 0), (vec![1], 1), (vec![3], 1), (vec![4], 0)]).unwrap();
        assert!(!restricted_member_1d(&e, &s).unwrap());
    }

    #[test]
    fn propagation_examples() {
        let samples: Vec<CellSet> = (1..=6).map(CellSet::interval).collect();
        let golden = check_delta_propagation_1d(&zoo::golden(), &ints(&[0, 1]), &samples).unwrap();
        assert!(golden.passed());
        let even =
            check_delta_propagation_1d(&zoo::even(), &ints(&[0, 1, 2]), &[CellSet::interval(5)])
                .unwrap();
        assert_eq!(
            even,
            PropagationVerdict::Fail {
                omega: CellSet::interval(5),
                pattern: Pattern::from_word(&[0, 1, 1, 1, 0]),
            }
        );
        let full = check_delta_propagation_1d(&zoo::full(), &ints(&[0]), &samples[..4]).unwrap();
        assert!(full.passed());
    }

    #[test]
    fn golden_gluing_counterexample() {
        let x = zoo::golden().to_zd();
        let v = delta_irreducible_search(&x, &ints(&[0, 1]), 4, 2, 2).unwrap();
        assert_eq!(
            v,
            IrreducibilityVerdict::Counterexample {
                omega1: ints(&[0]),
                omega2: ints(&[1]),
                p1: Pattern::from_word(&[1]),
                p2: Pattern::new(1, [(vec![1], 1)]).unwrap(),
            }
        );
        let wide = delta_irreducible_search(&x, &ints(&[-1, 0, 1]), 4, 2, 2).unwrap();
        assert!(matches!(
            wide,
            IrreducibilityVerdict::NoCounterexample {
                inconclusive: 0,
                ..
            }
        ));
    }

    #[test]
    fn ledrappier_parity_gluing() {
        let x = zoo::ledrappier();
        let p1 = Pattern::new(2, [(vec![0, 0], 1)]).unwrap();
        let p2 = Pattern::new(2, [(vec![2, 0], 0), (vec![0, 2], 0)]).unwrap();
        assert_eq!(
            check_gluing(&x, &CellSet::cube(2, 1), &p1, &p2, 3).unwrap(),
            GluingVerdict::Fails
        );
        let near = Pattern::new(2, [(vec![1, 0], 0)]).unwrap();
        assert_eq!(
            check_gluing(&x, &CellSet::cube(2, 1), &p1, &near, 3).unwrap(),
            GluingVerdict::NotSeparated
        );
    }

    #[test]
    fn window_description() {
        let g = zoo::golden().to_zd();
        let boxes: Vec<CellSet> = (1..=6).map(CellSet::interval).collect();
        assert!(prop28_window_check(&g, &ints(&[0, 1]), &boxes, 2)
            .unwrap()
            .passed());
        let hs = zoo::hard_square();
        let b = CellSet::box_between(&[0, 0], &[2, 2]);
        let v = prop28_window_check(&hs, &hs.window_set(), &[b], 1).unwrap();
        assert!(v.passed(), "{v:?}");
    }
}
