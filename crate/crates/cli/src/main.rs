//! `symdyn`: periodic points and periodicization for subshifts from the
//! command line.
//!
//! Exit status: 0 when the computation finished, 1 on bad input, 2 when a
//! check found a counterexample or a hypothesis failed.

mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use symdyn::graph::fixed_points_1d;
use symdyn::lattice::{
    check_delta_propagation_1d, check_delta_propagation_zd, delta_irreducible_search,
    enumerate_torus, measure_from_orbits, theorem11_periodicize, torus_valid,
    IrreducibilityVerdict, PropagationVerdict, DEFAULT_TORUS_CAP,
};
use symdyn::wdensity::{
    check_condition_a, check_condition_b, find_w_certificate, minimizer, mixing_evidence,
    periodicize_w, ConditionBVerdict, ConditionVerdict, Scope, WCertificate, DEFAULT_N0_CAP,
};
use symdyn::zoo::{make_zoo, ZOO};
use symdyn::{
    Alphabet, CellSet, Error, Language, Pattern, PeriodLattice, SubshiftHandle, TorusConfig,
};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Violation(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::HypothesisViolation(_)
            | Error::NotCertified { .. }
            | Error::VerificationFailed(_) => CliError::Violation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "symdyn",
    version,
    about = "Periodic points and periodicization for subshifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in shift, e.g. golden, sigma((2,4),(2,4)), hard_sphere(2,2)
    #[arg(long)]
    zoo: Option<String>,
    /// JSON subshift document
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Word-length bound for bounded searches
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// Write a JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducibility, mixing and the W filler bound of a 1D shift
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Find (or check a given) filler bound n0
    CertifyW {
        #[command(flatten)]
        common: Common,
        /// Check conditions (a) and (b) at this n0 instead of searching
        #[arg(long)]
        n0: Option<usize>,
    },
    /// Embed a word into a periodic point of a 1D shift
    Periodize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
        /// Use this n0 (checked with condition (a)) instead of searching
        #[arg(long)]
        n0: Option<usize>,
    },
    /// Extend a finite pattern to a periodic point of an SFT on Z^d
    PeriodizeZd {
        #[command(flatten)]
        common: Common,
        /// Pattern document (inline JSON or path)
        #[arg(long, conflicts_with = "word")]
        pattern: Option<String>,
        /// 1D pattern given as a word starting at 0
        #[arg(long)]
        word: Option<String>,
        /// boxR or a JSON cell list
        #[arg(long, default_value = "box1")]
        delta: String,
    },
    /// List the points fixed by a period lattice
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated periods, one per dimension
        #[arg(long)]
        periods: String,
        /// Largest fundamental domain accepted on Z^d
        #[arg(long, default_value_t = DEFAULT_TORUS_CAP)]
        cap: usize,
    },
    /// Evaluate an orbit measure on a cylinder
    Measure {
        #[command(flatten)]
        common: Common,
        /// Measure document (inline JSON or path)
        #[arg(long)]
        orbits: String,
        /// Cylinder pattern document (inline JSON or path)
        #[arg(long)]
        pattern: String,
    },
    /// Bounded search for a Δ-propagation violation
    CheckPropagation {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        /// Largest sample box side on Z^d (1D samples are intervals up to --depth)
        #[arg(long = "box", default_value_t = 3)]
        box_side: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
    },
    /// Bounded search for a Δ-irreducibility counterexample
    CheckIrreducible {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long, default_value_t = 2)]
        maxsize: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
    },
    /// List the built-in shifts
    Zoo,
}

struct Report {
    lines: Vec<String>,
    doc: Value,
    /// Set when a check failed; the report is still printed.
    violation: bool,
}

impl Report {
    fn ok(lines: Vec<String>, doc: Value) -> Self {
        Self {
            lines,
            doc,
            violation: false,
        }
    }
}

fn load(source: &Source) -> Result<SubshiftHandle, CliError> {
    match (&source.zoo, &source.spec) {
        (Some(name), _) => Ok(make_zoo(name)?),
        (_, Some(path)) => spec::load_spec(path),
        _ => Err(CliError::Input("one of --zoo or --spec is required".into())),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render(a: &Alphabet, w: &[symdyn::Symbol]) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        a.render(w)
    }
}

fn classify(x: &SubshiftHandle, depth: usize) -> Result<Report, CliError> {
    let Ok(lang) = x.language() else {
        let zd = x.zd()?;
        let q: Vec<&str> = zd
            .quiescent_symbols()
            .iter()
            .map(|&s| zd.alphabet().token(s))
            .collect();
        return Ok(Report::ok(
            vec![format!(
                "dimension: {}; window: {}; allowed patterns: {}; quiescent symbols: {}",
                zd.dim(),
                zd.window_set(),
                zd.allowed().len(),
                if q.is_empty() {
                    "none".into()
                } else {
                    q.join(",")
                }
            )],
            json!({"dimension": zd.dim(), "quiescent": q}),
        ));
    };
    let cert = find_w_certificate(lang, depth, DEFAULT_N0_CAP);
    let n0_text = match &cert {
        Ok(c) if c.scope == Scope::ExactSofic => c.n0.to_string(),
        Ok(c) => format!("{} ({})", c.n0, c.scope),
        Err(_) => "none".into(),
    };
    let mut lines = Vec::new();
    let doc = match lang.presentation() {
        Some(g) => {
            let cls = g.classify();
            lines.push(format!(
                "irreducible: {}; mixing: {}; W n0: {n0_text}",
                yes(cls.irreducible),
                yes(cls.mixing)
            ));
            if let Some(p) = cls.period {
                lines.push(format!("period: {p}"));
            }
            json!({
                "irreducible": cls.irreducible,
                "mixing": cls.mixing,
                "period": cls.period,
                "n0": cert.as_ref().ok().map(|c| c.n0),
                "scope": "exact",
            })
        }
        None => {
            let irreducible = match &cert {
                Ok(c) => check_condition_b(lang, c.n0, depth).passed(),
                Err(_) => false,
            };
            let ev = mixing_evidence(lang, depth);
            lines.push(format!(
                "irreducible: {} (bounded({depth})); mixing: {} (bounded({depth})); W n0: {n0_text}",
                yes(irreducible),
                yes(ev.mixing())
            ));
            if let Some(t) = ev.transition {
                lines.push(format!("glues at every gap in {t}..={}", ev.max_gap));
            }
            json!({
                "irreducible": irreducible,
                "mixing": ev.mixing(),
                "n0": cert.as_ref().ok().map(|c| c.n0),
                "scope": format!("bounded({depth})"),
            })
        }
    };
    Ok(Report::ok(lines, doc))
}

fn condition_lines(lang: &dyn Language, n0: usize, depth: usize) -> (Vec<String>, bool) {
    let a = lang.alphabet();
    let mut ok = true;
    let line_a = match check_condition_a(lang, n0, depth) {
        ConditionVerdict::Pass => "pass".to_string(),
        ConditionVerdict::Fail { u, v } => {
            ok = false;
            format!("fail at u = {}, v = {}", render(a, &u), render(a, &v))
        }
    };
    let line_b = match check_condition_b(lang, n0, depth) {
        ConditionBVerdict::Pass { glue_cap } => format!("pass (fillers up to {glue_cap})"),
        ConditionBVerdict::NotIrreducible { u, v, glue_cap } => {
            ok = false;
            format!(
                "fail: {} cannot reach {} within {glue_cap}",
                render(a, &u),
                render(a, &v)
            )
        }
        ConditionBVerdict::NoSelfFiller { u } => {
            ok = false;
            format!("fail: no self-filler for {}", render(a, &u))
        }
    };
    (
        vec![
            format!("condition (a) at n0 = {n0}, depth {depth}: {line_a}"),
            format!("condition (b) at n0 = {n0}, depth {depth}: {line_b}"),
        ],
        ok,
    )
}

fn certificate(
    lang: &dyn Language,
    n0: Option<usize>,
    depth: usize,
) -> Result<WCertificate, CliError> {
    match n0 {
        None => Ok(find_w_certificate(lang, depth, DEFAULT_N0_CAP)?),
        Some(n0) => match check_condition_a(lang, n0, depth) {
            ConditionVerdict::Pass => Ok(WCertificate {
                n0,
                scope: Scope::Bounded(depth),
                depth,
                exact_bound: lang.presentation().and_then(|g| g.lemma43_n0().ok()),
                evidence: None,
            }),
            ConditionVerdict::Fail { u, v } => Err(CliError::Violation(format!(
                "condition (a) fails at n0 = {n0}: u = {}, v = {}",
                render(lang.alphabet(), &u),
                render(lang.alphabet(), &v)
            ))),
        },
    }
}

fn certify_w(x: &SubshiftHandle, n0: Option<usize>, depth: usize) -> Result<Report, CliError> {
    let lang = x.language()?;
    let a = lang.alphabet();
    if let Some(n0) = n0 {
        let (lines, ok) = condition_lines(lang, n0, depth);
        return Ok(Report {
            doc: json!({"n0": n0, "depth": depth, "passed": ok}),
            lines,
            violation: !ok,
        });
    }
    let cert = match find_w_certificate(lang, depth, DEFAULT_N0_CAP) {
        Ok(c) => c,
        Err(e @ Error::NotCertified { .. }) => {
            return Ok(Report {
                lines: vec![format!("W n0: none; {e}")],
                doc: json!({"n0": null, "reason": e.to_string()}),
                violation: true,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut lines = vec![format!("W n0: {}; scope: {}", cert.n0, cert.scope)];
    if let Some(b) = cert.exact_bound {
        lines.push(format!("presentation bound: {b}"));
    }
    if let Some((u, v)) = &cert.evidence {
        lines.push(format!(
            "n0 - 1 fails at u = {}, v = {}",
            render(a, u),
            render(a, v)
        ));
    }
    let m = minimizer(lang, &cert)?;
    lines.push(format!(
        "minimizer: u0 = {}, c0 = {}, |F(u0)| = {} ({})",
        render(a, &m.u0),
        render(a, &m.c0),
        m.fsize,
        m.scope
    ));
    let doc = json!({
        "n0": cert.n0,
        "scope": cert.scope.to_string(),
        "exact_bound": cert.exact_bound,
        "u0": a.render(&m.u0),
        "c0": a.render(&m.c0),
        "fset": m.fset.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
    });
    Ok(Report::ok(lines, doc))
}

fn periodize(
    x: &SubshiftHandle,
    word: &str,
    n0: Option<usize>,
    depth: usize,
) -> Result<Report, CliError> {
    let lang = x.language()?;
    let a = lang.alphabet();
    let w = a.parse(word)?;
    if !lang.contains(&w) {
        return Err(CliError::Input(format!(
            "word {word:?} is not in the language"
        )));
    }
    let cert = certificate(lang, n0, depth)?;
    let r = periodicize_w(lang, &w, &cert)?;
    let verified = match r.verdict {
        symdyn::PeriodicVerdict::Exact(b) => format!("verified exact: {}", yes(b)),
        symdyn::PeriodicVerdict::Bounded { accepted, reps } => {
            format!("verified: {} (bounded({reps}))", yes(accepted))
        }
    };
    let lines = vec![
        format!("p = {}; {verified}", a.render(&r.p)),
        format!(
            "u0 = {}; u1 = {}; u2 = {}; c0 = {}; n0 = {} ({})",
            render(a, &r.u0),
            render(a, &r.u1),
            render(a, &r.u2),
            render(a, &r.c0),
            cert.n0,
            cert.scope
        ),
    ];
    let doc = json!({
        "p": a.render(&r.p),
        "u0": a.render(&r.u0),
        "u1": a.render(&r.u1),
        "u2": a.render(&r.u2),
        "c0": a.render(&r.c0),
        "exact": r.verdict.is_exact(),
        "verified": r.verdict.accepted(),
    });
    Ok(Report::ok(lines, doc))
}

fn periodize_zd(
    x: &SubshiftHandle,
    pattern: Option<&str>,
    word: Option<&str>,
    delta: &str,
) -> Result<Report, CliError> {
    let zd = x.zd()?;
    let a = zd.alphabet();
    let p = match (pattern, word) {
        (Some(doc), _) => spec::load_pattern(doc, a, zd.dim())?,
        (None, Some(w)) if zd.dim() == 1 => Pattern::from_word(&a.parse(w)?),
        (None, Some(_)) => return Err(CliError::Input("--word needs a 1D shift".into())),
        (None, None) => {
            return Err(CliError::Input(
                "one of --pattern or --word is required".into(),
            ))
        }
    };
    let delta = spec::parse_delta(delta, zd.dim())?;
    let Some(&q) = zd.quiescent_symbols().first() else {
        return Err(CliError::Violation(
            "the shift has no constant point to pad with".into(),
        ));
    };
    let x0 = TorusConfig::constant(PeriodLattice::new(vec![1; zd.dim()])?, q);
    let r = theorem11_periodicize(&zd, &delta, &x0, &p)?;
    let mut lines = vec![
        format!("pattern: {}", p.render(a)),
        format!("Ω1 = {}; Ω2 extent: {}", extent_text(&r.omega1), r.l),
        format!("H = {}; padding: {}", r.h, a.token(q)),
    ];
    lines.extend(r.torus.render(a).lines().map(String::from));
    lines.push(format!("verified: {}", yes(r.verified)));
    let doc = json!({
        "torus": spec::torus_json(&r.torus, a),
        "verified": r.verified,
    });
    Ok(Report {
        lines,
        doc,
        violation: !r.verified,
    })
}

fn extent_text(s: &CellSet) -> String {
    match s.bounding_box() {
        Some((lo, hi)) => {
            let side = |v: &[i64]| {
                v.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("box ({})..({})", side(&lo), side(&hi))
        }
        None => "∅".into(),
    }
}

fn parse_periods(s: &str) -> Result<PeriodLattice, CliError> {
    let periods = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            CliError::Input(format!(
                "--periods: expected comma-separated integers, got {s:?}"
            ))
        })?;
    Ok(PeriodLattice::new(periods)?)
}

fn enumerate(x: &SubshiftHandle, periods: &str, cap: usize) -> Result<Report, CliError> {
    let lattice = parse_periods(periods)?;
    let a = x.alphabet().clone();
    let (points, exact): (Vec<String>, bool) = match x {
        SubshiftHandle::SftZd(zd) => (
            enumerate_torus(zd, &lattice, cap)?
                .iter()
                .map(|y| y.render(&a).replace('\n', "/"))
                .collect(),
            true,
        ),
        _ => {
            let lang = x.language()?;
            let [n] = lattice.periods()[..] else {
                return Err(CliError::Input("a 1D shift takes one period".into()));
            };
            match lang.presentation() {
                Some(g) => (
                    fixed_points_1d(g, n)?.iter().map(|w| a.render(w)).collect(),
                    true,
                ),
                None => {
                    let mut exact = true;
                    let pts = a
                        .words_of_length(n)
                        .into_iter()
                        .filter(|w| {
                            let v = lang.periodic_contains(w);
                            exact &= v.is_exact();
                            v.accepted()
                        })
                        .map(|w| a.render(&w))
                        .collect();
                    (pts, exact)
                }
            }
        }
    };
    let mut lines = vec![format!(
        "lattice {lattice}: {} points{}",
        points.len(),
        if exact {
            ""
        } else {
            " (bounded periodic check)"
        }
    )];
    lines.extend(points.iter().cloned());
    Ok(Report::ok(
        lines,
        json!({"periods": lattice.periods(), "points": points, "exact": exact}),
    ))
}

fn measure(x: &SubshiftHandle, orbits: &str, pattern: &str) -> Result<Report, CliError> {
    let a = x.alphabet().clone();
    let (points, spec) = spec::load_measure(orbits, &a)?;
    for y in &points {
        let inside = match x {
            SubshiftHandle::SftZd(zd) => torus_valid(zd, y)?,
            _ => {
                if y.dim() != 1 {
                    return Err(CliError::Input("1D shift needs 1D points".into()));
                }
                x.language()?.periodic_contains(y.cells()).accepted()
            }
        };
        if !inside {
            return Err(CliError::Input(format!(
                "point {} is not in the shift",
                y.render(&a).replace('\n', "/")
            )));
        }
    }
    let p = spec::load_pattern(pattern, &a, spec.dim())?;
    let mu = measure_from_orbits(&spec, &p)?;
    Ok(Report::ok(
        vec![format!("mu({}) = {mu}", p.render(&a))],
        json!({"cylinder": p.render(&a), "mu": mu.to_string()}),
    ))
}

fn check_propagation(
    x: &SubshiftHandle,
    delta: &str,
    depth: usize,
    side: usize,
    margin: usize,
) -> Result<Report, CliError> {
    let a = x.alphabet().clone();
    let (verdict, samples) = match x.language() {
        Ok(lang) => {
            let delta = spec::parse_delta(delta, 1)?;
            let samples: Vec<CellSet> = (1..=depth).map(CellSet::interval).collect();
            (
                check_delta_propagation_1d(lang, &delta, &samples)?,
                format!("intervals up to {depth}"),
            )
        }
        Err(_) => {
            let zd = x.zd()?;
            let delta = spec::parse_delta(delta, zd.dim())?;
            let mut samples = Vec::new();
            let hi = vec![side as i64 - 1; zd.dim()];
            symdyn_boxes(&hi, &mut samples);
            (
                check_delta_propagation_zd(&zd, &delta, &samples, margin)?,
                format!("boxes up to side {side}, margin {margin}"),
            )
        }
    };
    Ok(match verdict {
        PropagationVerdict::Pass { patterns, inconclusive } => Report::ok(
            vec![format!(
                "propagation: no violation ({patterns} patterns, {inconclusive} inconclusive; {samples})"
            )],
            json!({"violation": null, "patterns": patterns, "inconclusive": inconclusive}),
        ),
        PropagationVerdict::Fail { omega, pattern } => Report {
            lines: vec![format!(
                "propagation: violated on Ω = {omega} by {}",
                pattern.render(&a)
            )],
            doc: json!({"violation": {"omega": omega.to_string(), "pattern": pattern.render(&a)}}),
            violation: true,
        },
    })
}

/// Boxes `[0, s_1) × … × [0, s_d)` with every `s_i ≤ hi_i + 1`.
fn symdyn_boxes(hi: &[i64], out: &mut Vec<CellSet>) {
    let d = hi.len();
    let mut side = vec![0i64; d];
    loop {
        out.push(CellSet::box_between(&vec![0; d], &side));
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if side[i] < hi[i] {
                side[i] += 1;
                break;
            }
            side[i] = 0;
        }
    }
}

fn check_irreducible(
    x: &SubshiftHandle,
    delta: &str,
    radius: i64,
    maxsize: usize,
    margin: usize,
) -> Result<Report, CliError> {
    let zd = x.zd()?;
    let a = zd.alphabet();
    let delta = spec::parse_delta(delta, zd.dim())?;
    Ok(match delta_irreducible_search(&zd, &delta, radius, maxsize, margin)? {
        IrreducibilityVerdict::NoCounterexample { pairs, inconclusive } => Report::ok(
            vec![format!(
                "Δ-irreducibility: no counterexample ({pairs} pairs, {inconclusive} inconclusive; radius {radius}, at most {maxsize} cells)"
            )],
            json!({"counterexample": null, "pairs": pairs, "inconclusive": inconclusive}),
        ),
        IrreducibilityVerdict::Counterexample { omega1, omega2, p1, p2 } => Report {
            lines: vec![
                format!("Δ-irreducibility: counterexample on Ω1 = {omega1}, Ω2 = {omega2}"),
                format!("p1 = {}; p2 = {}", p1.render(a), p2.render(a)),
            ],
            doc: json!({"counterexample": {
                "omega1": omega1.to_string(),
                "omega2": omega2.to_string(),
                "p1": p1.render(a),
                "p2": p2.render(a),
            }}),
            violation: true,
        },
    })
}

fn run(cli: Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    let (report, common) = match cli.command {
        Command::Zoo => {
            let lines = ZOO.iter().map(|(n, d)| format!("{n:<18} {d}")).collect();
            let doc = json!(ZOO.iter().map(|(n, _)| *n).collect::<Vec<_>>());
            return Ok((Report::ok(lines, doc), None));
        }
        Command::Classify { common } => (classify(&load(&common.source)?, common.depth)?, common),
        Command::CertifyW { common, n0 } => {
            (certify_w(&load(&common.source)?, n0, common.depth)?, common)
        }
        Command::Periodize { common, word, n0 } => (
            periodize(&load(&common.source)?, &word, n0, common.depth)?,
            common,
        ),
        Command::PeriodizeZd {
            common,
            pattern,
            word,
            delta,
        } => (
            periodize_zd(
                &load(&common.source)?,
                pattern.as_deref(),
                word.as_deref(),
                &delta,
            )?,
            common,
        ),
        Command::Enumerate {
            common,
            periods,
            cap,
        } => (enumerate(&load(&common.source)?, &periods, cap)?, common),
        Command::Measure {
            common,
            orbits,
            pattern,
        } => (measure(&load(&common.source)?, &orbits, &pattern)?, common),
        Command::CheckPropagation {
            common,
            delta,
            box_side,
            margin,
        } => (
            check_propagation(
                &load(&common.source)?,
                &delta,
                common.depth,
                box_side,
                margin,
            )?,
            common,
        ),
        Command::CheckIrreducible {
            common,
            delta,
            radius,
            maxsize,
            margin,
        } => (
            check_irreducible(&load(&common.source)?, &delta, radius, maxsize, margin)?,
            common,
        ),
    };
    Ok((report, common.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, out)) => {
            let mut stdout = std::io::stdout().lock();
            for line in &report.lines {
                if writeln!(stdout, "{line}").is_err() {
                    // reader went away, e.g. `| head`
                    break;
                }
            }
            if let Some(path) = out {
                let text =
                    serde_json::to_string_pretty(&report.doc).expect("json values serialize");
                if let Err(e) = std::fs::write(&path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if report.violation { 2 } else { 0 })
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Violation(msg)) => {
            println!("violation: {msg}");
            ExitCode::from(2)
        }
    }
}
