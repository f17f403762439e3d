//! Alphabets, finite words and periodic words over ℤ.
//!
//! Symbols are stored as indices into an [`Alphabet`]; comparing indices
//! therefore follows the alphabet's declared order. Positions of a periodic
//! configuration `w^∞` follow the 1-based convention `w^∞(i + kn) = a_i`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol in its alphabet.
pub type Symbol = u8;

/// Ordered list of distinct printable tokens.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be nonempty".into()));
        }
        if symbols.len() > Symbol::MAX as usize + 1 {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!(
                    "token {s:?} is not printable"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate token {s:?}")));
            }
        }
        Ok(Self {
            symbols: symbols.into(),
        })
    }

    /// `{0, 1, …, k-1}` rendered as decimal digits.
    pub fn digits(k: usize) -> Self {
        Self::new((0..k).map(|i| i.to_string())).expect("digit alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.symbols
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn symbol(&self, token: &str) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|t| t == token)
            .map(|i| i as Symbol)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.symbols.len()).map(|i| i as Symbol)
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one symbol per
    /// character; otherwise tokens are separated by whitespace.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let symbols = if self.single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.symbol(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split_whitespace()
                .map(|t| self.symbol(t))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let k = self.len();
        let mut out = Vec::new();
        let mut cur = vec![0 as Symbol; n];
        loop {
            out.push(Word(cur.clone()));
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if (cur[i] as usize) + 1 < k {
                    cur[i] += 1;
                    cur[i + 1..].iter_mut().for_each(|s| *s = 0);
                    break;
                }
            }
        }
    }

    /// All words of length ≤ `n`, shortlex-sorted.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|l| self.words_of_length(l)).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// A finite word. Ordering is shortlex: shorter words first, then
/// lexicographic in alphabet order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        Word(symbols.to_vec())
    }

    pub fn concat(parts: &[&[Symbol]]) -> Self {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// Symbols of `w^∞` at positions `lo..=hi`.
    pub fn power_expand(&self, lo: i64, hi: i64) -> Result<Word> {
        power_expand(self, lo, hi)
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Symbols of `w^∞` at positions `lo..=hi`, where position `j` carries
/// `a_{((j-1) mod n) + 1}`.
pub fn power_expand(w: &[Symbol], lo: i64, hi: i64) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let n = w.len() as i64;
    Ok(Word(
        (lo..=hi)
            .map(|j| w[(j - 1).rem_euclid(n) as usize])
            .collect(),
    ))
}

/// True iff `needle` is a factor of `hay`. The empty word is a factor of
/// everything.
pub fn is_factor(needle: &[Symbol], hay: &[Symbol]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// The periodic configuration `w^∞` for a nonempty word `w`.
///
/// Two periodic words are equal when they denote the same configuration,
/// i.e. when their primitive roots coincide: `(01)^∞ == (0101)^∞` but
/// `(01)^∞ != (10)^∞`. Use [`PeriodicWord::same_orbit`] to compare up to the
/// shift.
#[derive(Clone)]
pub struct PeriodicWord {
    word: Word,
}

impl PeriodicWord {
    pub fn new(word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self { word })
    }

    /// The stored period word (positions `1..=n`).
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    /// Shortest word `r` with `r^∞ = w^∞`.
    pub fn root(&self) -> Word {
        Word(primitive_root(&self.word).to_vec())
    }

    /// Orbit representative: least rotation of the primitive root.
    pub fn canonical(&self) -> Word {
        least_rotation(&self.root())
    }

    pub fn is_canonical(&self) -> bool {
        self.word == self.canonical()
    }

    /// The configuration `k·w^∞`, i.e. `y(j) = w^∞(j − k)`.
    pub fn shift(&self, k: i64) -> PeriodicWord {
        let n = self.word.len() as i64;
        let word = power_expand(&self.word, 1 - k, n - k).expect("nonempty");
        PeriodicWord { word }
    }

    pub fn same_orbit(&self, other: &PeriodicWord) -> bool {
        self.canonical() == other.canonical()
    }

    /// Symbol at position `j` (1-based convention).
    pub fn at(&self, j: i64) -> Symbol {
        let n = self.word.len() as i64;
        self.word[(j - 1).rem_euclid(n) as usize]
    }

    /// True iff `w` appears as a subword of this configuration.
    pub fn contains_subword(&self, w: &[Symbol]) -> bool {
        subword_occurs(w, self)
    }
}

impl PartialEq for PeriodicWord {
    fn eq(&self, other: &Self) -> bool {
        primitive_root(&self.word) == primitive_root(&other.word)
    }
}

impl Eq for PeriodicWord {}

impl std::hash::Hash for PeriodicWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        primitive_root(&self.word).hash(state)
    }
}

impl fmt::Debug for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})^∞", self.word)
    }
}

/// Rotation of `p` by `k`: the period word of `k·p^∞`.
pub fn shift_rotate(p: &PeriodicWord, k: i64) -> PeriodicWord {
    p.shift(k)
}

/// True iff `w` occurs in `p^∞`, scanning one period plus `|w|-1` positions.
pub fn subword_occurs(w: &[Symbol], p: &PeriodicWord) -> bool {
    if w.is_empty() {
        return true;
    }
    let n = p.period() as i64;
    let span = power_expand(p.word(), 1, n + w.len() as i64 - 1).expect("nonempty");
    is_factor(w, &span)
}

pub fn primitive_root(w: &[Symbol]) -> &[Symbol] {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]) {
            return &w[..d];
        }
    }
    w
}

pub fn least_rotation(w: &[Symbol]) -> Word {
    let n = w.len();
    (0..n.max(1))
        .map(|r| Word(w[r..].iter().chain(&w[..r]).copied().collect()))
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::digits(2)
    }

    #[test]
    fn power_expand_follows_one_based_formula() {
        let a = bin();
        let w = a.parse("01").unwrap();
        assert_eq!(power_expand(&w, 1, 4).unwrap(), a.parse("0101").unwrap());
        assert_eq!(power_expand(&w, 0, 2).unwrap(), a.parse("101").unwrap());
        let c = Alphabet::new(["a"]).unwrap();
        let aw = c.parse("a").unwrap();
        assert_eq!(c.render(&power_expand(&aw, -3, 3).unwrap()), "aaaaaaa");
        assert_eq!(power_expand(&[], 0, 1), Err(Error::EmptyWord));
        assert!(matches!(
            power_expand(&w, 2, 1),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn shift_rotate_examples() {
        let a = bin();
        let p = PeriodicWord::new(a.parse("01").unwrap()).unwrap();
        assert_eq!(shift_rotate(&p, 1).word(), &a.parse("10").unwrap());
        assert_eq!(shift_rotate(&p, 2).word(), p.word());
        let q = PeriodicWord::new(a.parse("100").unwrap()).unwrap();
        assert_eq!(shift_rotate(&q, 2).word(), &a.parse("001").unwrap());
        assert_eq!(shift_rotate(&q, -1).word(), &a.parse("001").unwrap());
    }

    #[test]
    fn periodic_equality_is_configuration_equality() {
        let a = bin();
        let p = PeriodicWord::new(a.parse("01").unwrap()).unwrap();
        let pp = PeriodicWord::new(a.parse("0101").unwrap()).unwrap();
        let q = PeriodicWord::new(a.parse("10").unwrap()).unwrap();
        assert_eq!(p, pp);
        assert_ne!(p, q);
        assert!(p.same_orbit(&q));
        assert_eq!(pp.canonical(), a.parse("01").unwrap());
        assert!(p.is_canonical());
        assert!(!q.is_canonical());
        assert!(PeriodicWord::new(Word::empty()).is_err());
    }

    #[test]
    fn subword_occurrence() {
        let a = bin();
        let p = PeriodicWord::new(a.parse("10010").unwrap()).unwrap();
        assert!(subword_occurs(&a.parse("00").unwrap(), &p));
        assert!(subword_occurs(&[], &p));
        let alt = PeriodicWord::new(a.parse("10").unwrap()).unwrap();
        assert!(!subword_occurs(&a.parse("11").unwrap(), &alt));
        // longer than the period, wrapping twice
        assert!(subword_occurs(&a.parse("0101010").unwrap(), &alt));
    }

    #[test]
    fn shortlex_order() {
        let a = bin();
        let mut ws = vec![
            a.parse("1").unwrap(),
            a.parse("00").unwrap(),
            Word::empty(),
            a.parse("0").unwrap(),
        ];
        ws.sort();
        assert_eq!(
            ws,
            a.words_up_to(1)
                .into_iter()
                .chain([a.parse("00").unwrap()])
                .collect::<Vec<_>>()
        );
        assert_eq!(a.words_up_to(2).len(), 7);
    }

    #[test]
    fn multi_char_tokens() {
        let a = Alphabet::new(["ab", "c"]).unwrap();
        let w = a.parse("ab c ab").unwrap();
        assert_eq!(w.0, vec![0, 1, 0]);
        assert_eq!(a.render(&w), "ab c ab");
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(a.parse("d").is_err());
    }
}
