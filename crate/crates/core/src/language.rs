//! Subshift handles over ℤ and their languages.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{debruijn_presentation, locally_admissible, LabeledGraph};
use crate::lattice::SftZd;
use crate::word::{power_expand, Alphabet, Symbol, Word};
use crate::zoo::SigmaSpec;

/// Outcome of a periodic-membership test `p^∞ ∈ X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodicVerdict {
    /// Decided exactly.
    Exact(bool),
    /// Only `p^k ∈ L(X)` for `k ≤ reps` was checked.
    Bounded { accepted: bool, reps: usize },
}

impl PeriodicVerdict {
    pub fn accepted(self) -> bool {
        match self {
            PeriodicVerdict::Exact(b) => b,
            PeriodicVerdict::Bounded { accepted, .. } => accepted,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, PeriodicVerdict::Exact(_))
    }
}

/// Repetitions checked by the bounded periodic fallback.
pub const BOUNDED_PERIODIC_REPS: usize = 4;

/// The language `L(X)` of a one-dimensional subshift.
pub trait Language: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// `w ∈ L(X)`.
    fn contains(&self, w: &[Symbol]) -> bool;

    /// `p^∞ ∈ X` for a nonempty `p`.
    fn periodic_contains(&self, p: &[Symbol]) -> PeriodicVerdict;

    /// Trimmed presentation, when the shift is sofic by construction.
    fn presentation(&self) -> Option<&LabeledGraph> {
        None
    }

    fn describe(&self) -> String;
}

/// One-dimensional SFT given by forbidden words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft1d {
    alphabet: Alphabet,
    forbidden: Vec<Word>,
    presentation: LabeledGraph,
}

impl Sft1d {
    /// An empty forbidden list gives the full shift.
    pub fn new(alphabet: Alphabet, mut forbidden: Vec<Word>) -> Result<Self> {
        if forbidden.iter().any(|f| f.is_empty()) {
            return Err(Error::InvalidSubshift(
                "forbidden words must be nonempty".into(),
            ));
        }
        if forbidden
            .iter()
            .any(|f| f.iter().any(|&s| s as usize >= alphabet.len()))
        {
            return Err(Error::AlphabetMismatch);
        }
        forbidden.sort();
        forbidden.dedup();
        let presentation = debruijn_presentation(&alphabet, &forbidden).trim();
        Ok(Self {
            alphabet,
            forbidden,
            presentation,
        })
    }

    pub fn from_tokens(alphabet: Alphabet, forbidden: &[&str]) -> Result<Self> {
        let words = forbidden
            .iter()
            .map(|f| alphabet.parse(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, words)
    }

    pub fn forbidden(&self) -> &[Word] {
        &self.forbidden
    }

    /// `(max forbidden length) − 1`, or 0 for the full shift.
    pub fn memory(&self) -> usize {
        self.forbidden.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    /// Necessary but not sufficient for `w ∈ L(X)`.
    pub fn locally_admissible(&self, w: &[Symbol]) -> bool {
        locally_admissible(&self.forbidden, w)
    }

    /// Untrimmed higher-block presentation.
    pub fn debruijn(&self) -> LabeledGraph {
        debruijn_presentation(&self.alphabet, &self.forbidden)
    }

    /// The same shift as a ℤ¹ SFT with window `{0, …, memory}`.
    pub fn to_zd(&self) -> SftZd {
        let m = self.memory();
        let window: Vec<Vec<i64>> = (0..=m as i64).map(|i| vec![i]).collect();
        let allowed = self
            .alphabet
            .words_of_length(m + 1)
            .into_iter()
            .filter(|w| self.locally_admissible(w))
            .map(Word::into_inner)
            .collect();
        SftZd::new(1, self.alphabet.clone(), window, allowed).expect("valid window")
    }

    /// Exact cyclic scan: no forbidden word occurs in `p^∞`.
    pub fn cyclic_scan(&self, p: &[Symbol]) -> bool {
        if p.is_empty() {
            return false;
        }
        let n = p.len() as i64;
        let longest = self.forbidden.iter().map(|f| f.len()).max().unwrap_or(1) as i64;
        let span = power_expand(p, 1, n + longest - 1).expect("nonempty");
        self.locally_admissible(&span)
    }
}

impl Language for Sft1d {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &[Symbol]) -> bool {
        self.presentation.accepts(w)
    }

    fn periodic_contains(&self, p: &[Symbol]) -> PeriodicVerdict {
        PeriodicVerdict::Exact(self.cyclic_scan(p))
    }

    fn presentation(&self) -> Option<&LabeledGraph> {
        Some(&self.presentation)
    }

    fn describe(&self) -> String {
        let fs: Vec<String> = self
            .forbidden
            .iter()
            .map(|f| self.alphabet.render(f))
            .collect();
        format!("sft1d forbidden {{{}}}", fs.join(","))
    }
}

/// Sofic shift presented by a labeled graph; the graph is trimmed on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sofic1d {
    graph: LabeledGraph,
    removed: Vec<String>,
}

impl Sofic1d {
    pub fn new(graph: LabeledGraph) -> Self {
        let (graph, removed) = graph.trim_with_report();
        Self { graph, removed }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// Vertices dropped by trimming.
    pub fn removed_vertices(&self) -> &[String] {
        &self.removed
    }
}

impl Language for Sofic1d {
    fn alphabet(&self) -> &Alphabet {
        self.graph.alphabet()
    }

    fn contains(&self, w: &[Symbol]) -> bool {
        self.graph.accepts(w)
    }

    fn periodic_contains(&self, p: &[Symbol]) -> PeriodicVerdict {
        PeriodicVerdict::Exact(self.graph.verify_cycle(p))
    }

    fn presentation(&self) -> Option<&LabeledGraph> {
        Some(&self.graph)
    }

    fn describe(&self) -> String {
        format!(
            "sofic1d with {} vertices, {} edges",
            self.graph.vertex_count(),
            self.graph.edges().len()
        )
    }
}

type Predicate = Arc<dyn Fn(&[Symbol]) -> bool + Send + Sync>;

#[derive(Clone)]
enum OracleImpl {
    Full,
    Example47,
    Sigma(SigmaSpec),
    Custom {
        contains: Predicate,
        periodic: Option<Predicate>,
    },
}

/// Subshift given by a language membership predicate.
#[derive(Clone)]
pub struct Oracle1d {
    name: String,
    alphabet: Alphabet,
    imp: OracleImpl,
}

impl fmt::Debug for Oracle1d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle1d")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .finish()
    }
}

/// Exact membership test for `p^∞`, given `p`.
pub type PeriodicPredicate = dyn Fn(&[Symbol]) -> bool + Send + Sync;

impl Oracle1d {
    /// Full shift as an oracle.
    pub fn full(alphabet: Alphabet) -> Self {
        Self {
            name: "full".into(),
            alphabet,
            imp: OracleImpl::Full,
        }
    }

    /// Configurations over `{0,1,2}` with no factor `0 1^m 2^n 0`, `m ≠ n`.
    pub fn example47() -> Self {
        Self {
            name: "example47".into(),
            alphabet: Alphabet::digits(3),
            imp: OracleImpl::Example47,
        }
    }

    /// `X_σ`: configurations over `{0,1}` with no factor `0 1^m 0`,
    /// `m ∉ S(σ)`.
    pub fn sigma(spec: SigmaSpec) -> Self {
        Self {
            name: format!("sigma{spec}"),
            alphabet: Alphabet::digits(2),
            imp: OracleImpl::Sigma(spec),
        }
    }

    /// A user predicate. Without an exact periodic routine the oracle is
    /// flagged bounded-verification only.
    pub fn custom(
        name: impl Into<String>,
        alphabet: Alphabet,
        contains: impl Fn(&[Symbol]) -> bool + Send + Sync + 'static,
        periodic: Option<Box<PeriodicPredicate>>,
    ) -> Self {
        Self {
            name: name.into(),
            alphabet,
            imp: OracleImpl::Custom {
                contains: Arc::new(contains),
                periodic: periodic.map(Arc::from),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_exact_periodic(&self) -> bool {
        !matches!(self.imp, OracleImpl::Custom { periodic: None, .. })
    }
}

/// Lengths of the maximal blocks strictly between consecutive zeros of a
/// finite word.
fn bounded_blocks(w: &[Symbol]) -> impl Iterator<Item = &[Symbol]> {
    let zeros: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 0).collect();
    let pairs: Vec<(usize, usize)> = zeros.windows(2).map(|z| (z[0], z[1])).collect();
    pairs.into_iter().map(move |(i, j)| &w[i + 1..j])
}

/// Blocks between consecutive zeros of `p^∞`, one per zero of `p`.
fn cyclic_blocks(p: &[Symbol]) -> Vec<Vec<Symbol>> {
    let n = p.len();
    let zeros: Vec<usize> = (0..n).filter(|&i| p[i] == 0).collect();
    let mut out = Vec::new();
    for (k, &z) in zeros.iter().enumerate() {
        let next = if k + 1 < zeros.len() {
            zeros[k + 1]
        } else {
            zeros[0] + n
        };
        out.push(((z + 1)..next).map(|i| p[i % n]).collect());
    }
    out
}

/// `1^m 2^n` with `m ≠ n`.
fn unbalanced_block(block: &[Symbol]) -> bool {
    let m = block.iter().take_while(|&&s| s == 1).count();
    let n = block[m..].iter().take_while(|&&s| s == 2).count();
    m + n == block.len() && m != n
}

fn sigma_block_ok(spec: &SigmaSpec, block: &[Symbol]) -> bool {
    // binary alphabet: a block between zeros is 1^m
    spec.contains(block.len())
}

impl Language for Oracle1d {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn contains(&self, w: &[Symbol]) -> bool {
        if w.iter().any(|&s| s as usize >= self.alphabet.len()) {
            return false;
        }
        match &self.imp {
            OracleImpl::Full => true,
            OracleImpl::Example47 => !bounded_blocks(w).any(unbalanced_block),
            OracleImpl::Sigma(spec) => bounded_blocks(w).all(|b| sigma_block_ok(spec, b)),
            OracleImpl::Custom { contains, .. } => contains(w),
        }
    }

    fn periodic_contains(&self, p: &[Symbol]) -> PeriodicVerdict {
        if p.is_empty() {
            return PeriodicVerdict::Exact(false);
        }
        match &self.imp {
            OracleImpl::Full => PeriodicVerdict::Exact(self.contains(p)),
            OracleImpl::Example47 => PeriodicVerdict::Exact(
                self.contains(p) && !cyclic_blocks(p).iter().any(|b| unbalanced_block(b)),
            ),
            OracleImpl::Sigma(spec) => PeriodicVerdict::Exact(
                self.contains(p) && cyclic_blocks(p).iter().all(|b| sigma_block_ok(spec, b)),
            ),
            OracleImpl::Custom {
                periodic: Some(f), ..
            } => PeriodicVerdict::Exact(f(p)),
            OracleImpl::Custom {
                contains,
                periodic: None,
            } => {
                let mut acc = Vec::new();
                let mut ok = true;
                for _ in 0..BOUNDED_PERIODIC_REPS {
                    acc.extend_from_slice(p);
                    ok &= contains(&acc);
                }
                PeriodicVerdict::Bounded {
                    accepted: ok,
                    reps: BOUNDED_PERIODIC_REPS,
                }
            }
        }
    }

    fn describe(&self) -> String {
        format!("oracle {}", self.name)
    }
}

/// Uniform handle over the supported subshift kinds.
#[derive(Debug, Clone)]
pub enum SubshiftHandle {
    Sft1d(Sft1d),
    Sofic1d(Sofic1d),
    Oracle1d(Oracle1d),
    SftZd(SftZd),
}

impl SubshiftHandle {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            SubshiftHandle::Sft1d(x) => x.alphabet(),
            SubshiftHandle::Sofic1d(x) => x.alphabet(),
            SubshiftHandle::Oracle1d(x) => x.alphabet(),
            SubshiftHandle::SftZd(x) => x.alphabet(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SubshiftHandle::Sft1d(_) => "sft1d",
            SubshiftHandle::Sofic1d(_) => "sofic1d",
            SubshiftHandle::Oracle1d(_) => "oracle",
            SubshiftHandle::SftZd(_) => "sft_zd",
        }
    }

    pub fn language(&self) -> Result<&dyn Language> {
        match self {
            SubshiftHandle::Sft1d(x) => Ok(x),
            SubshiftHandle::Sofic1d(x) => Ok(x),
            SubshiftHandle::Oracle1d(x) => Ok(x),
            SubshiftHandle::SftZd(_) => Err(Error::NotOneDimensional),
        }
    }

    /// The ℤ^d view: native for `SftZd`, the window form for `Sft1d`.
    pub fn zd(&self) -> Result<SftZd> {
        match self {
            SubshiftHandle::SftZd(x) => Ok(x.clone()),
            SubshiftHandle::Sft1d(x) => Ok(x.to_zd()),
            _ => Err(Error::NotZd),
        }
    }
}

/// All words of `L(X)` of length ≤ `n`, shortlex-sorted.
pub fn language_enum(x: &dyn Language, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if !x.contains(&[]) {
        return out;
    }
    let mut level = vec![Word::empty()];
    out.push(Word::empty());
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for a in x.alphabet().symbols() {
                let mut wa = w.0.clone();
                wa.push(a);
                if x.contains(&wa) {
                    next.push(Word(wa));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Words of `L(X)` of length exactly `n`, in lexicographic order.
pub fn language_level(x: &dyn Language, n: usize) -> Vec<Word> {
    language_enum(x, n)
        .into_iter()
        .filter(|w| w.len() == n)
        .collect()
}

/// Verdict of [`oracle_contract_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractViolation {
    /// An accepted word with a rejected factor.
    RejectedFactor { word: Word, factor: Word },
    /// An accepted word with no accepted one-symbol two-sided extension.
    NotExtendable { word: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractReport {
    pub depth: usize,
    pub violation: Option<ContractViolation>,
}

impl ContractReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that an oracle behaves like a subshift language up to length
/// `depth`: accepted words have accepted factors, and accepted words shorter
/// than `depth` extend by one symbol on each side.
pub fn oracle_contract_check(x: &dyn Language, depth: usize) -> ContractReport {
    let alphabet = x.alphabet();
    for w in alphabet.words_up_to(depth) {
        if !x.contains(&w) {
            continue;
        }
        if !w.is_empty() {
            for factor in [&w[..w.len() - 1], &w[1..]] {
                if !x.contains(factor) {
                    return ContractReport {
                        depth,
                        violation: Some(ContractViolation::RejectedFactor {
                            word: w.clone(),
                            factor: Word::from_symbols(factor),
                        }),
                    };
                }
            }
        }
        if w.len() < depth {
            let extendable = alphabet.symbols().any(|a| {
                alphabet
                    .symbols()
                    .any(|b| x.contains(&Word::concat(&[&[a], &w, &[b]])))
            });
            if !extendable {
                return ContractReport {
                    depth,
                    violation: Some(ContractViolation::NotExtendable { word: w }),
                };
            }
        }
    }
    ContractReport {
        depth,
        violation: None,
    }
}

/// `p^∞ ∈ X`: exact for SFTs (cyclic scan), sofic shifts (cycle test) and
/// built-in oracles; bounded for foreign oracles.
pub fn verify_periodic_membership(x: &dyn Language, p: &[Symbol]) -> PeriodicVerdict {
    x.periodic_contains(p)
}
