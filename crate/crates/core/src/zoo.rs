//! Built-in example subshifts.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::language::{Oracle1d, Sft1d, Sofic1d, SubshiftHandle};
use crate::lattice::SftZd;
use crate::word::{Alphabet, Symbol};

/// Eventually periodic `σ ∈ {2,4}^ℕ`, defining the odd set
/// `S(σ) = {1 + σ(0) + … + σ(n−1) : n ≥ 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaSpec {
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

impl SigmaSpec {
    pub fn new(preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSigma("period must be nonempty".into()));
        }
        if let Some(bad) = preperiod.iter().chain(&period).find(|&&s| s != 2 && s != 4) {
            return Err(Error::InvalidSigma(format!("entry {bad} not in {{2,4}}")));
        }
        Ok(Self { preperiod, period })
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// `σ(k)`.
    pub fn at(&self, k: usize) -> u8 {
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// `m ∈ S(σ)`.
    pub fn contains(&self, m: usize) -> bool {
        let mut s = 1usize;
        let mut k = 0;
        while s < m {
            s += self.at(k) as usize;
            k += 1;
        }
        s == m
    }

    /// Least `p ∈ {0,1,2,3}` with `m + p ∈ S(σ)`.
    pub fn p_m(&self, m: usize) -> u8 {
        (0..=3u8)
            .find(|&p| self.contains(m + p as usize))
            .expect("consecutive elements of S differ by at most 4")
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "(({}),({}))", join(&self.preperiod), join(&self.period))
    }
}

fn bin() -> Alphabet {
    Alphabet::digits(2)
}

/// Full shift on `{0,1}`.
pub fn full() -> Sft1d {
    Sft1d::new(bin(), vec![]).expect("full shift")
}

/// No two consecutive 1's.
pub fn golden() -> Sft1d {
    Sft1d::from_tokens(bin(), &["11"]).expect("golden mean")
}

/// The two points `(01)^∞` and `(10)^∞`.
pub fn two_point() -> Sft1d {
    Sft1d::from_tokens(bin(), &["00", "11"]).expect("two point")
}

/// Strongly irreducible SFT without bounded propagation.
pub fn fiorenzi() -> Sft1d {
    Sft1d::from_tokens(bin(), &["010", "111"]).expect("fiorenzi")
}

/// Over `{0,1,2}`, allowed 2-words `00, 01, 11, 12, 22` only.
pub fn weiss_monotone() -> Sft1d {
    Sft1d::from_tokens(Alphabet::digits(3), &["02", "10", "20", "21"]).expect("weiss")
}

/// Every 1-run bounded by 0's has even length.
pub fn even() -> Sofic1d {
    Sofic1d::new(
        LabeledGraph::from_tokens(
            bin(),
            &["E", "O"],
            &[("E", "E", "0"), ("E", "O", "1"), ("O", "E", "1")],
        )
        .expect("even shift graph"),
    )
}

/// Every 1-run bounded by 0's has odd length.
pub fn odd() -> Sofic1d {
    Sofic1d::new(
        LabeledGraph::from_tokens(
            bin(),
            &["E", "O"],
            &[("E", "O", "1"), ("O", "E", "1"), ("O", "E", "0")],
        )
        .expect("odd shift graph"),
    )
}

pub fn example47() -> Oracle1d {
    Oracle1d::example47()
}

pub fn sigma(spec: SigmaSpec) -> Oracle1d {
    Oracle1d::sigma(spec)
}

/// Generalized hard-sphere model on `ℤ^d` over `{0, …, m}`: for each axis
/// `i`, `x(g) = 0` or `x(g + e_i) = 0`. Window `{0, e_1, …, e_d}`.
pub fn hard_sphere(d: usize, m: usize) -> Result<SftZd> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidSubshift(
            "hard_sphere needs d ≥ 1 and m ≥ 1".into(),
        ));
    }
    let alphabet = Alphabet::digits(m + 1);
    let mut window = vec![vec![0i64; d]];
    for i in 0..d {
        let mut e = vec![0i64; d];
        e[i] = 1;
        window.push(e);
    }
    let allowed = alphabet
        .words_of_length(d + 1)
        .into_iter()
        .filter(|w| w[0] == 0 || w[1..].iter().all(|&s| s == 0))
        .map(|w| w.into_inner())
        .collect();
    SftZd::new(d, alphabet, window, allowed)
}

/// Hard-square model: `hard_sphere(2, 1)`.
pub fn hard_square() -> SftZd {
    hard_sphere(2, 1).expect("hard square")
}

/// `x(m,n) + x(m+1,n) + x(m,n+1)` even, window `{(0,0), (1,0), (0,1)}`.
pub fn ledrappier() -> SftZd {
    let alphabet = bin();
    let window = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
    let allowed = alphabet
        .words_of_length(3)
        .into_iter()
        .filter(|w| w.iter().map(|&s| s as u32).sum::<u32>() % 2 == 0)
        .map(|w| w.into_inner())
        .collect();
    SftZd::new(2, alphabet, window, allowed).expect("ledrappier")
}

/// Names accepted by [`make_zoo`], with a one-line description each.
pub const ZOO: &[(&str, &str)] = &[
    ("full", "full shift on {0,1} (sft1d)"),
    ("golden", "golden mean shift, forbidden {11} (sft1d)"),
    ("even", "even shift (sofic1d)"),
    ("odd", "odd shift (sofic1d)"),
    ("two_point", "{(01)^∞, (10)^∞}, forbidden {00,11} (sft1d)"),
    ("fiorenzi", "forbidden {010,111} (sft1d)"),
    (
        "example47",
        "no 0 1^m 2^n 0 with m ≠ n over {0,1,2} (oracle)",
    ),
    (
        "sigma(P,Q)",
        "X_σ for σ = P Q Q Q…, e.g. sigma((),(2)) (oracle)",
    ),
    ("weiss_monotone", "allowed 2-words 00,01,11,12,22 (sft1d)"),
    ("hard_square", "hard-square model on Z^2 (sft_zd)"),
    ("hard_sphere(d,m)", "generalized hard-sphere model (sft_zd)"),
    ("ledrappier", "Ledrappier parity shift on Z^2 (sft_zd)"),
];

fn parse_list(s: &str) -> Result<Vec<u8>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| Error::InvalidSigma(format!("bad entry {t:?}")))
        })
        .collect()
}

/// Parses `"(a,b),(c,d)"` into the two sigma lists.
fn parse_sigma_args(args: &str) -> Result<SigmaSpec> {
    let args = args.trim();
    let mut depth = 0;
    let mut split = None;
    for (i, ch) in args.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    let i = split.ok_or_else(|| Error::InvalidSigma(format!("expected (pre),(period): {args}")))?;
    SigmaSpec::new(parse_list(&args[..i])?, parse_list(&args[i + 1..])?)
}

/// Builds a zoo shift by name, e.g. `golden`, `sigma((2,4),(2,4))`,
/// `hard_sphere(2,2)`.
pub fn make_zoo(name: &str) -> Result<SubshiftHandle> {
    let name = name.trim();
    let (base, args) = match name.find('(') {
        Some(i) if name.ends_with(')') => (&name[..i], Some(&name[i + 1..name.len() - 1])),
        Some(_) => return Err(Error::UnknownZoo(name.into())),
        None => (name, None),
    };
    let handle = match (base, args) {
        ("full", None) => SubshiftHandle::Sft1d(full()),
        ("golden", None) => SubshiftHandle::Sft1d(golden()),
        ("even", None) => SubshiftHandle::Sofic1d(even()),
        ("odd", None) => SubshiftHandle::Sofic1d(odd()),
        ("two_point", None) => SubshiftHandle::Sft1d(two_point()),
        ("fiorenzi", None) => SubshiftHandle::Sft1d(fiorenzi()),
        ("weiss_monotone", None) => SubshiftHandle::Sft1d(weiss_monotone()),
        ("example47", None) => SubshiftHandle::Oracle1d(example47()),
        ("sigma", Some(a)) => SubshiftHandle::Oracle1d(sigma(parse_sigma_args(a)?)),
        ("hard_square", None) => SubshiftHandle::SftZd(hard_square()),
        ("ledrappier", None) => SubshiftHandle::SftZd(ledrappier()),
        ("hard_sphere", Some(a)) => {
            let nums: Vec<usize> = a
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownZoo(name.into()))?;
            match nums[..] {
                [d, m] => SubshiftHandle::SftZd(hard_sphere(d, m)?),
                _ => return Err(Error::UnknownZoo(name.into())),
            }
        }
        _ => return Err(Error::UnknownZoo(name.into())),
    };
    Ok(handle)
}

/// `1` repeated `m` times, bracketed by zeros: `0 1^m 0`.
pub fn zero_run_zero(m: usize) -> Vec<Symbol> {
    std::iter::once(0)
        .chain(std::iter::repeat_n(1, m))
        .chain(std::iter::once(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_sets() {
        let odd = SigmaSpec::new(vec![], vec![2]).unwrap();
        assert!((0..20).all(|m| odd.contains(m) == (m % 2 == 1)));
        let s = SigmaSpec::new(vec![2, 4], vec![2, 4]).unwrap();
        // 1, 3, 7, 9, 13, ...
        let members: Vec<usize> = (0..15).filter(|&m| s.contains(m)).collect();
        assert_eq!(members, [1, 3, 7, 9, 13]);
        assert!((0..40).all(|m| s.p_m(m) <= 3));
        assert!(SigmaSpec::new(vec![3], vec![2]).is_err());
        assert!(SigmaSpec::new(vec![2], vec![]).is_err());
    }

    #[test]
    fn zoo_kinds() {
        match make_zoo("golden").unwrap() {
            SubshiftHandle::Sft1d(g) => {
                assert_eq!(g.forbidden(), [Alphabet::digits(2).parse("11").unwrap()])
            }
            other => panic!("{other:?}"),
        }
        match make_zoo("ledrappier").unwrap() {
            SubshiftHandle::SftZd(l) => assert_eq!(l.allowed().len(), 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(make_zoo("even").unwrap().kind(), "sofic1d");
        assert_eq!(make_zoo("sigma((2,4),(2,4))").unwrap().kind(), "oracle");
        assert_eq!(make_zoo("hard_sphere(3,2)").unwrap().kind(), "sft_zd");
        assert!(matches!(make_zoo("nope"), Err(Error::UnknownZoo(_))));
        assert!(matches!(
            make_zoo("sigma((3),(2))"),
            Err(Error::InvalidSigma(_))
        ));
    }

    #[test]
    fn sigma_membership_by_run_length() {
        let h = make_zoo("sigma((),(2))").unwrap();
        let x = h.language().unwrap();
        assert!(!x.contains(&Alphabet::digits(2).parse("0110").unwrap()));
        assert!(x.contains(&zero_run_zero(5)));
        assert!(!x.contains(&zero_run_zero(0)));
    }

    #[test]
    fn hard_sphere_counts() {
        assert_eq!(hard_square().allowed().len(), 5);
        // m = 2, d = 2: centre 0 (9) or centre nonzero with zero neighbours (2)
        assert_eq!(hard_sphere(2, 2).unwrap().allowed().len(), 11);
    }
}
