//! Python bindings for the exact-real core and the reduction harness.
//!
//! Numbers cross the boundary as exact dyadic strings `"m*2^e"`, so no
//! precision is lost in either direction.

// the conversion lint fires inside the #[pymethods] expansion
#![allow(clippy::useless_conversion)]

use std::str::FromStr;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wlab::constructions;
use wlab::exact::{CReal, CRealSeq, Dyadic as CoreDyadic};
use wlab::functions::{CFunc, PLFunc as CorePlf};
use wlab::machines::{self, StagePair, StageSet};
use wlab::reductions;
use wlab::weihrauch::{self, reduce_check, Verdict};

fn parse_dyadic(s: &str) -> PyResult<CoreDyadic> {
    CoreDyadic::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Exact dyadic rational `mantissa * 2^exponent`.
#[pyclass(frozen)]
#[derive(Clone)]
struct Dyadic {
    inner: CoreDyadic,
}

#[pymethods]
impl Dyadic {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Dyadic {
            inner: parse_dyadic(text)?,
        })
    }

    #[staticmethod]
    fn from_parts(mantissa: i64, exponent: i64) -> Self {
        Dyadic {
            inner: CoreDyadic::new(mantissa, exponent),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Dyadic({})", self.inner)
    }

    fn __add__(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> Dyadic {
        Dyadic {
            inner: -&self.inner,
        }
    }

    fn __richcmp__(&self, other: &Dyadic, op: pyo3::basic::CompareOp) -> bool {
        op.matches(self.inner.cmp(&other.inner))
    }

    fn abs(&self) -> Dyadic {
        Dyadic {
            inner: self.inner.abs(),
        }
    }

    /// Lossy float view for plotting and quick inspection.
    fn to_float(&self) -> f64 {
        self.inner.to_f64_lossy()
    }
}

/// A computable real given by its rapid Cauchy name.
#[pyclass(frozen)]
#[derive(Clone)]
struct Real {
    inner: CReal,
}

#[pymethods]
impl Real {
    #[new]
    fn new(dyadic: &str) -> PyResult<Self> {
        Ok(Real {
            inner: CReal::from_dyadic(parse_dyadic(dyadic)?),
        })
    }

    /// Dyadic within `2^-level` of the value.
    fn approx(&self, level: u32) -> Dyadic {
        Dyadic {
            inner: self.inner.approx(level),
        }
    }

    fn add(&self, other: &Real) -> Real {
        Real {
            inner: self.inner.add(&other.inner),
        }
    }

    fn sub(&self, other: &Real) -> Real {
        Real {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn mul(&self, other: &Real) -> PyResult<Real> {
        self.inner
            .mul(&other.inner)
            .map(|inner| Real { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn neg(&self) -> Real {
        Real {
            inner: self.inner.neg(),
        }
    }

    fn abs(&self) -> Real {
        Real {
            inner: self.inner.abs(),
        }
    }

    /// Finite-precision comparison: "less", "greater", or "unknown".
    fn cmp(&self, other: &Real, level: u32) -> &'static str {
        match wlab::exact::cmp_partial(&self.inner, &other.inner, level) {
            wlab::exact::PartialOrder::Less => "less",
            wlab::exact::PartialOrder::Greater => "greater",
            wlab::exact::PartialOrder::Unknown => "unknown",
        }
    }
}

/// Piecewise-linear function on `[0,1]` with exact dyadic breakpoints.
#[pyclass(frozen)]
struct PLFunc {
    inner: CorePlf,
}

#[pymethods]
impl PLFunc {
    /// Breakpoints as `[x, y]` dyadic-string pairs.
    #[new]
    fn new(breakpoints: Vec<(String, String)>) -> PyResult<Self> {
        let points = breakpoints
            .iter()
            .map(|(x, y)| Ok((parse_dyadic(x)?, parse_dyadic(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        CorePlf::new(points)
            .map(|inner| PLFunc { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        CorePlf::from_json(text)
            .map(|inner| PLFunc { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Name of `f(x)` for a point of `[0,1]`.
    fn eval(&self, x: &Real) -> PyResult<Real> {
        wlab::functions::plf_eval(&self.inner, &x.inner)
            .map(|inner| Real { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Exact range over a dyadic subinterval, as two dyadic strings.
    fn range(&self, lo: &str, hi: &str) -> PyResult<(String, String)> {
        let interval = wlab::exact::Interval::new(parse_dyadic(lo)?, parse_dyadic(hi)?);
        let out = wlab::functions::plf_range(&self.inner, &interval)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok((out.lo().to_string(), out.hi().to_string()))
    }

    /// Certified zero interval at `2^-level`, endpoints as strings.
    fn trisect_zero(&self, level: u32) -> PyResult<(String, String)> {
        let out = constructions::ivt_trisect(&CFunc::from_plf(&self.inner), level)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok((out.lo().to_string(), out.hi().to_string()))
    }

    /// Dyadic within `2^-level` of the maximum over `[0,1]`.
    fn max_value(&self, level: u32) -> Dyadic {
        Dyadic {
            inner: constructions::max_value(&CFunc::from_plf(&self.inner), level),
        }
    }

    /// Approximate fixed point for maps into `[0,1]`.
    fn fixed_point(&self, level: u32) -> Dyadic {
        Dyadic {
            inner: constructions::brouwer_dim1(&CFunc::from_plf(&self.inner), level),
        }
    }
}

fn stage_set(events: Vec<(u64, Vec<u64>)>) -> StageSet {
    StageSet::injected(&events)
}

/// Counter-machine interpreter: returns the halt bit or None while running.
#[pyfunction]
fn run_machine(program: &str, input: u64, steps: u64) -> PyResult<Option<u8>> {
    let p: machines::MachineProgram = program
        .parse()
        .map_err(|e: wlab::MachineError| PyValueError::new_err(e.to_string()))?;
    Ok(match machines::run_bounded(&p, input, steps) {
        machines::RunOutcome::Halted(v) => Some(v),
        machines::RunOutcome::Running => None,
    })
}

/// Program text of the `i`-th machine in the fixed enumeration.
#[pyfunction]
fn godel_program(i: u64) -> String {
    machines::godel(i).to_string()
}

/// Stage `t` of the diagonal halting set.
#[pyfunction]
fn halting_stage(t: u64) -> Vec<u64> {
    machines::halting_stage(t).into_iter().collect()
}

/// Stage `t` of the inseparable pair.
#[pyfunction]
fn inseparable_stage(t: u64) -> (Vec<u64>, Vec<u64>) {
    let (a, b) = machines::inseparable_stage(t);
    (a.into_iter().collect(), b.into_iter().collect())
}

/// Partial sum of the Specker sequence of an injected stage set.
#[pyfunction]
fn specker_term(events: Vec<(u64, Vec<u64>)>, stage: u64) -> Dyadic {
    Dyadic {
        inner: constructions::specker_term(&stage_set(events), stage),
    }
}

/// Membership in the Kleene tree of an injected pair; the word is a string
/// of 0s and 1s.
#[pyfunction]
fn kleene_member(
    a_events: Vec<(u64, Vec<u64>)>,
    b_events: Vec<(u64, Vec<u64>)>,
    word: &str,
) -> PyResult<bool> {
    let bits: Vec<bool> = word
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(PyValueError::new_err("word must be over {0,1}")),
        })
        .collect::<PyResult<_>>()?;
    let pair = StagePair::new(stage_set(a_events), stage_set(b_events));
    Ok(constructions::kleene_tree(&pair).member(&bits))
}

/// Zero location of the `n`-th counterexample family member.
#[pyfunction]
fn family_zero(
    a_events: Vec<(u64, Vec<u64>)>,
    b_events: Vec<(u64, Vec<u64>)>,
    n: u64,
    level: u32,
) -> Dyadic {
    let pair = StagePair::new(stage_set(a_events), stage_set(b_events));
    Dyadic {
        inner: constructions::zero_point(&constructions::ivt_family(&pair, n), level),
    }
}

/// Stage-truncated cluster point of a sequence of dyadic values; the last
/// value repeats beyond the list.
#[pyfunction]
fn bwt_cluster(values: Vec<String>, stage: usize, level: u32) -> PyResult<Dyadic> {
    let parsed: Vec<CoreDyadic> = values
        .iter()
        .map(|s| parse_dyadic(s))
        .collect::<PyResult<_>>()?;
    let parsed = Arc::new(parsed);
    let seq: CRealSeq = Arc::new(move |n| {
        CReal::from_dyadic(
            parsed
                .get(n.min(parsed.len().saturating_sub(1)))
                .cloned()
                .unwrap_or_else(CoreDyadic::zero),
        )
    });
    Ok(Dyadic {
        inner: constructions::bwt_cluster_stage(&seq, stage, level),
    })
}

/// Choice on the naturals over an explicit report stream
/// (`0` = no report, `n+1` excludes `n`): `(answer, mind_changes)`.
#[pyfunction]
fn cn_solve(reports: Vec<u64>, stage: u64) -> (u64, u64) {
    let stream = weihrauch::Name::from_values(reports, 0);
    let out = weihrauch::cn_solve(&stream, stage);
    (out.answer, out.mind_changes)
}

/// Inverts a positive diagonal operator at `y`:
/// `(coords, chosen_level, mind_changes)`.
#[pyfunction]
fn bim_invert(
    diag: Vec<String>,
    tail: String,
    y: Vec<String>,
    level: u32,
) -> PyResult<(Vec<String>, u64, u64)> {
    let prefix: Vec<CoreDyadic> = diag.iter().map(|s| parse_dyadic(s)).collect::<PyResult<_>>()?;
    let tail = parse_dyadic(&tail)?;
    if prefix.iter().chain([&tail]).any(|d| d.signum() <= 0) {
        return Err(PyValueError::new_err("diagonal entries must be positive"));
    }
    let yv: Vec<CoreDyadic> = y.iter().map(|s| parse_dyadic(s)).collect::<PyResult<_>>()?;
    let count = yv.len() + 2;
    let t = reductions::DiagonalOperator::new(prefix, tail);
    let out = reductions::bim_via_cn(&t, &wlab::functions::EllTwoVec::finite(yv), level);
    let coords = (0..count)
        .map(|n| out.inverse.coeff(n).to_string())
        .collect();
    Ok((coords, out.chosen_level, out.mind_changes))
}

/// Runs a named reduction witness over its bundled corpus; returns
/// per-instance verdicts as strings.
#[pyfunction]
fn check_reduction(witness: &str, level: u32, stage: u64) -> PyResult<Vec<String>> {
    let report = match witness {
        "zero<=max" => {
            let (w, _) = reductions::max_equiv_zero_witnesses();
            let instances: Vec<weihrauch::Name> = wlab::corpus::crossing_corpus(6, 1)
                .iter()
                .map(|f| weihrauch::cfunc_to_name(&CFunc::from_plf(f)))
                .collect();
            reduce_check(
                &weihrauch::zero_problem(),
                &weihrauch::max_problem(),
                &w,
                &instances,
                level,
                stage,
            )
        }
        "max<=zero" => {
            let (_, w) = reductions::max_equiv_zero_witnesses();
            let instances = wlab::corpus::max_zero_corpus(6, 1);
            reduce_check(
                &weihrauch::max_problem(),
                &weihrauch::zero_problem(),
                &w,
                &instances,
                level,
                stage,
            )
        }
        "ec<=frr" => {
            let sets: Vec<Vec<u64>> = vec![vec![1, 3], vec![], vec![0, 2]];
            let instances: Vec<weihrauch::Name> = sets
                .iter()
                .map(|a| reductions::enumeration_of_set(a))
                .collect();
            reduce_check(
                &reductions::ec_problem(),
                &reductions::frr_problem(),
                &reductions::ec_via_frr_witness(),
                &instances,
                level.min(15),
                stage,
            )
        }
        "cn<=lim" => {
            let (w, _) = reductions::lim_cnpar_witnesses();
            let instances = vec![
                weihrauch::Name::from_values(vec![1, 2, 3], 0),
                weihrauch::Name::from_values(vec![], 0),
            ];
            reduce_check(
                &weihrauch::cn_problem(),
                &weihrauch::lim_problem(),
                &w,
                &instances,
                level,
                stage,
            )
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown witness {other:?}; use zero<=max, max<=zero, ec<=frr, or cn<=lim"
            )))
        }
    };
    Ok(report
        .rows
        .iter()
        .map(|row| match row.verdict {
            Some(Verdict::Accepted) => "accepted".to_string(),
            Some(Verdict::Rejected) => "rejected".to_string(),
            Some(Verdict::Unknown) => "unknown".to_string(),
            None => "skipped".to_string(),
        })
        .collect())
}

#[pymodule]
fn wlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Dyadic>()?;
    m.add_class::<Real>()?;
    m.add_class::<PLFunc>()?;
    m.add_function(wrap_pyfunction!(run_machine, m)?)?;
    m.add_function(wrap_pyfunction!(godel_program, m)?)?;
    m.add_function(wrap_pyfunction!(halting_stage, m)?)?;
    m.add_function(wrap_pyfunction!(inseparable_stage, m)?)?;
    m.add_function(wrap_pyfunction!(specker_term, m)?)?;
    m.add_function(wrap_pyfunction!(kleene_member, m)?)?;
    m.add_function(wrap_pyfunction!(family_zero, m)?)?;
    m.add_function(wrap_pyfunction!(bwt_cluster, m)?)?;
    m.add_function(wrap_pyfunction!(cn_solve, m)?)?;
    m.add_function(wrap_pyfunction!(bim_invert, m)?)?;
    m.add_function(wrap_pyfunction!(check_reduction, m)?)?;
    Ok(())
}
