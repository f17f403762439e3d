//! Python bindings: `symdyn_py.Subshift` and friends.

use num_rational::Rational64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use symdyn::graph::fixed_points_1d;
use symdyn::language::language_enum;
use symdyn::lattice::{
    enumerate_torus, measure_from_orbits, theorem11_periodicize, OrbitMeasureSpec,
};
use symdyn::wdensity::{
    check_condition_b, find_w_certificate, mixing_evidence, periodicize_w, DEFAULT_N0_CAP,
};
use symdyn::zoo::{make_zoo, ZOO};
use symdyn::{CellSet, Pattern, PeriodLattice, SubshiftHandle, Symbol, TorusConfig};

create_exception!(symdyn_py, SymdynError, PyValueError);

fn err(e: symdyn::Error) -> PyErr {
    SymdynError::new_err(e.to_string())
}

#[pyclass(frozen, get_all)]
struct Classification {
    irreducible: bool,
    mixing: bool,
    /// Smallest filler bound found, if any.
    n0: Option<usize>,
    /// `"exact"` for presented shifts, `"bounded(depth)"` otherwise.
    scope: String,
}

#[pyclass(frozen, get_all)]
struct WPeriodization {
    p: String,
    u0: String,
    u1: String,
    u2: String,
    c0: String,
    n0: usize,
    exact: bool,
    verified: bool,
}

#[pyclass(frozen, get_all)]
struct TorusPoint {
    periods: Vec<usize>,
    /// Row-major symbol tokens.
    cells: Vec<String>,
    verified: bool,
}

#[pymethods]
impl TorusPoint {
    fn __repr__(&self) -> String {
        format!(
            "TorusPoint(periods={:?}, cells={:?}, verified={})",
            self.periods, self.cells, self.verified
        )
    }
}

#[pyclass(frozen, unsendable)]
struct Subshift {
    inner: SubshiftHandle,
}

impl Subshift {
    fn symbols(&self, tokens: &[String]) -> PyResult<Vec<Symbol>> {
        let a = self.inner.alphabet();
        tokens.iter().map(|t| a.symbol(t).map_err(err)).collect()
    }

    fn tokens(&self, w: &[Symbol]) -> Vec<String> {
        let a = self.inner.alphabet();
        w.iter().map(|&s| a.token(s).to_string()).collect()
    }

    fn render(&self, w: &[Symbol]) -> String {
        self.inner.alphabet().render(w)
    }

    fn pattern(&self, support: Vec<Vec<i64>>, values: &[String]) -> PyResult<Pattern> {
        let d = support.first().map_or(1, Vec::len);
        let support = CellSet::new(d, support).map_err(err)?;
        Pattern::on(&support, &self.symbols(values)?).map_err(err)
    }

    fn torus_point(&self, y: &TorusConfig, verified: bool) -> TorusPoint {
        TorusPoint {
            periods: y.lattice().periods().to_vec(),
            cells: self.tokens(y.cells()),
            verified,
        }
    }
}

#[pymethods]
impl Subshift {
    /// Built-in shift by name, e.g. `"golden"` or `"sigma((2,4),(2,4))"`.
    #[staticmethod]
    fn zoo(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: make_zoo(name).map_err(err)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().tokens().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Subshift({})", self.inner.kind())
    }

    fn contains(&self, word: &str) -> PyResult<bool> {
        let x = self.inner.language().map_err(err)?;
        let w = x.alphabet().parse(word).map_err(err)?;
        Ok(x.contains(&w))
    }

    /// Words of length at most `n`, shortlex.
    fn words(&self, n: usize) -> PyResult<Vec<String>> {
        let x = self.inner.language().map_err(err)?;
        Ok(language_enum(x, n).iter().map(|w| self.render(w)).collect())
    }

    #[pyo3(signature = (depth = 6))]
    fn classify(&self, depth: usize) -> PyResult<Classification> {
        let x = self.inner.language().map_err(err)?;
        let n0 = find_w_certificate(x, depth, DEFAULT_N0_CAP)
            .ok()
            .map(|c| c.n0);
        Ok(match x.presentation() {
            Some(g) => {
                let c = g.classify();
                Classification {
                    irreducible: c.irreducible,
                    mixing: c.mixing,
                    n0,
                    scope: "exact".into(),
                }
            }
            None => Classification {
                irreducible: n0.is_some_and(|n| check_condition_b(x, n, depth).passed()),
                mixing: mixing_evidence(x, depth).mixing(),
                n0,
                scope: format!("bounded({depth})"),
            },
        })
    }

    /// Periodic point containing `word`.
    #[pyo3(signature = (word, depth = 6))]
    fn periodize(&self, word: &str, depth: usize) -> PyResult<WPeriodization> {
        let x = self.inner.language().map_err(err)?;
        let w = x.alphabet().parse(word).map_err(err)?;
        let cert = find_w_certificate(x, depth, DEFAULT_N0_CAP).map_err(err)?;
        let r = periodicize_w(x, &w, &cert).map_err(err)?;
        Ok(WPeriodization {
            p: self.render(&r.p),
            u0: self.render(&r.u0),
            u1: self.render(&r.u1),
            u2: self.render(&r.u2),
            c0: self.render(&r.c0),
            n0: cert.n0,
            exact: r.verdict.is_exact(),
            verified: r.verdict.accepted(),
        })
    }

    /// Points fixed by the period lattice, as torus points.
    #[pyo3(signature = (periods, cap = 16))]
    fn fixed_points(&self, periods: Vec<usize>, cap: usize) -> PyResult<Vec<TorusPoint>> {
        let l = PeriodLattice::new(periods).map_err(err)?;
        let points: Vec<TorusConfig> = match &self.inner {
            SubshiftHandle::SftZd(x) => enumerate_torus(x, &l, cap).map_err(err)?,
            _ => {
                let x = self.inner.language().map_err(err)?;
                let n = l.periods()[0];
                let words = match x.presentation() {
                    Some(g) => fixed_points_1d(g, n).map_err(err)?,
                    None => x
                        .alphabet()
                        .words_of_length(n)
                        .into_iter()
                        .filter(|w| x.periodic_contains(w).accepted())
                        .collect(),
                };
                words
                    .iter()
                    .map(|w| TorusConfig::from_word(w))
                    .collect::<Result<_, _>>()
                    .map_err(err)?
            }
        };
        Ok(points.iter().map(|y| self.torus_point(y, true)).collect())
    }

    /// Periodic point carrying the pattern, padded with a constant point,
    /// for Δ the cube of the given radius.
    #[pyo3(signature = (support, values, radius = 1))]
    fn periodize_zd(
        &self,
        support: Vec<Vec<i64>>,
        values: Vec<String>,
        radius: i64,
    ) -> PyResult<TorusPoint> {
        let x = self.inner.zd().map_err(err)?;
        let p = self.pattern(support, &values)?;
        let q = *x
            .quiescent_symbols()
            .first()
            .ok_or_else(|| SymdynError::new_err("the shift has no constant point"))?;
        let lattice = PeriodLattice::new(vec![1; x.dim()]).map_err(err)?;
        let x0 = TorusConfig::constant(lattice, q);
        let r = theorem11_periodicize(&x, &CellSet::cube(x.dim(), radius), &x0, &p).map_err(err)?;
        Ok(self.torus_point(&r.torus, r.verified))
    }

    /// Weighted orbit measure of a cylinder, as `"p/q"`.
    /// `points` are `(periods, cells)` pairs, `weights` are `"p/q"` strings.
    fn measure(
        &self,
        points: Vec<(Vec<usize>, Vec<String>)>,
        weights: Vec<String>,
        support: Vec<Vec<i64>>,
        values: Vec<String>,
    ) -> PyResult<String> {
        let points = points
            .into_iter()
            .map(|(periods, cells)| {
                let l = PeriodLattice::new(periods).map_err(err)?;
                TorusConfig::new(l, self.symbols(&cells)?).map_err(err)
            })
            .collect::<PyResult<Vec<_>>>()?;
        let weights = weights
            .iter()
            .map(|w| {
                w.parse::<Rational64>()
                    .map_err(|e| SymdynError::new_err(format!("weight {w:?}: {e}")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let spec = OrbitMeasureSpec::from_points(&points, weights).map_err(err)?;
        let p = self.pattern(support, &values)?;
        Ok(measure_from_orbits(&spec, &p).map_err(err)?.to_string())
    }
}

#[pyfunction]
fn zoo_names() -> Vec<&'static str> {
    ZOO.iter().map(|(n, _)| *n).collect()
}

#[pymodule]
fn symdyn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Subshift>()?;
    m.add_class::<Classification>()?;
    m.add_class::<WPeriodization>()?;
    m.add_class::<TorusPoint>()?;
    m.add_function(wrap_pyfunction!(zoo_names, m)?)?;
    m.add("SymdynError", m.py().get_type::<SymdynError>())?;
    Ok(())
}
