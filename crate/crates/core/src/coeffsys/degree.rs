use serde::Serialize;

use super::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactOnWindow,
    Inconsistent,
    NoFiniteDegreeOnWindow,
}

/// One recursion level. For `r = −1` only `dims` and `n` matter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub r: i64,
    pub window: usize,
    pub dims: Vec<usize>,
    pub kernel_vanishes_from: Option<usize>,
    pub cokernel_at: Option<usize>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub system: String,
    pub verdict: Verdict,
    pub split: bool,
    pub degree: Option<i64>,
    pub at: Option<usize>,
    pub window: usize,
    pub trace: Vec<TraceStep>,
}

impl DegreeReport {
    /// Recomputes every level of the trace from the recorded data and checks
    /// the verdict against the top level.
    pub fn replays(&self) -> bool {
        for (k, step) in self.trace.iter().enumerate() {
            let expected = if step.r < 0 {
                vanishing_from(&step.dims)
            } else if step.window == 0 {
                None
            } else {
                let below = self.trace.get(k + 1).filter(|s| s.depth == step.depth + 1);
                if below.map(|s| s.n) != Some(step.cokernel_at) {
                    return false;
                }
                combine(step.kernel_vanishes_from, step.cokernel_at)
            };
            if expected != step.n {
                return false;
            }
        }
        let top = self.trace.first();
        match self.verdict {
            Verdict::ExactOnWindow => top.is_some_and(|s| s.n == self.at && Some(s.r) == self.degree),
            Verdict::NoFiniteDegreeOnWindow => top.is_none_or(|s| s.n.is_none()),
            Verdict::Inconsistent => self.trace.is_empty(),
        }
    }
}

fn vanishing_from(dims: &[usize]) -> Option<usize> {
    if dims.last().is_some_and(|&d| d != 0) {
        return None;
    }
    Some(dims.iter().rposition(|&d| d != 0).map_or(0, |p| p + 1))
}

fn combine(kernel: Option<usize>, coker: Option<usize>) -> Option<usize> {
    let (a, c) = (kernel?, coker?);
    Some(a.max(if c > 0 { c + 1 } else { 0 }))
}

fn min_n<F: Field>(f: &CoefficientSystem<F>, r: i64, depth: usize, trace: &mut Vec<TraceStep>) -> Result<Option<usize>> {
    let pos = trace.len();
    trace.push(TraceStep {
        depth,
        r,
        window: f.window(),
        dims: f.dims().to_vec(),
        kernel_vanishes_from: None,
        cokernel_at: None,
        n: None,
    });
    if r < 0 {
        let n = vanishing_from(f.dims());
        trace[pos].n = n;
        return Ok(n);
    }
    if f.window() == 0 {
        return Ok(None);
    }
    let a = vanishing_from(f.kernel()?.dims());
    let c = min_n(&f.cokernel()?, r - 1, depth + 1, trace)?;
    let n = combine(a, c);
    trace[pos].kernel_vanishes_from = a;
    trace[pos].cokernel_at = c;
    trace[pos].n = n;
    Ok(n)
}

fn finish<F: Field>(
    f: &CoefficientSystem<F>,
    r_max: i64,
    split: bool,
    mut attempt: impl FnMut(i64, &mut Vec<TraceStep>) -> Result<Option<usize>>,
) -> Result<DegreeReport> {
    let mut report = DegreeReport {
        system: f.name().to_string(),
        verdict: Verdict::Inconsistent,
        split,
        degree: None,
        at: None,
        window: f.window(),
        trace: Vec::new(),
    };
    if !f.validate().valid {
        return Ok(report);
    }
    report.verdict = Verdict::NoFiniteDegreeOnWindow;
    for r in -1..=r_max {
        let mut trace = Vec::new();
        let n = attempt(r, &mut trace)?;
        report.trace = trace;
        if let Some(n) = n {
            report.verdict = Verdict::ExactOnWindow;
            report.degree = Some(r);
            report.at = Some(n);
            break;
        }
    }
    Ok(report)
}

/// Smallest `(r, N)` with `r ≤ r_max` for which the degree recursion holds on
/// degrees `0..=n_max`.
pub fn degree_report<F: Field>(f: &CoefficientSystem<F>, r_max: i64, n_max: usize) -> Result<DegreeReport> {
    let g = f.truncate(n_max);
    finish(&g, r_max, false, |r, trace| min_n(&g, r, 0, trace))
}

/// Checks that `retraction[n] : F_{n+1} → F_n` is a morphism `ΣF → F` of
/// coefficient systems with `R_n S_n = I`.
pub fn verify_retraction<F: Field>(f: &CoefficientSystem<F>, retraction: &[Matrix<F>]) -> Result<()> {
    let top = f.window();
    if retraction.len() < top {
        return Err(Error::InvalidRetraction(format!("{} maps given, {} needed", retraction.len(), top)));
    }
    for (n, r) in retraction.iter().take(top).enumerate() {
        if r.rows() != f.dim(n) || r.cols() != f.dim(n + 1) {
            return Err(Error::InvalidRetraction(format!("R_{} is not {}x{}", n, f.dim(n), f.dim(n + 1))));
        }
    }
    for n in 0..top {
        let r = &retraction[n];
        for i in 1..n {
            if r.mul(f.rho(n + 1, i)) != f.rho(n, i).mul(r) {
                return Err(Error::InvalidRetraction(format!("equivariance fails in degree {} for s{}", n, i)));
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        let lhs = retraction[n + 1].mul(f.rho(n + 2, n + 1)).mul(f.structure(n + 1));
        if lhs != f.structure(n).mul(&retraction[n]) {
            return Err(Error::InvalidRetraction(format!("naturality fails between degrees {} and {}", n, n + 1)));
        }
    }
    for n in 0..top {
        if !retraction[n].mul(f.structure(n)).is_identity() {
            return Err(Error::InvalidRetraction(format!("R_{} S_{} is not the identity", n, n)));
        }
    }
    Ok(())
}

fn split_min_n<F: Field>(
    f: &CoefficientSystem<F>,
    r: i64,
    depth: usize,
    retractions: &[Vec<Matrix<F>>],
    trace: &mut Vec<TraceStep>,
) -> Result<Option<usize>> {
    let pos = trace.len();
    trace.push(TraceStep {
        depth,
        r,
        window: f.window(),
        dims: f.dims().to_vec(),
        kernel_vanishes_from: None,
        cokernel_at: None,
        n: None,
    });
    if r < 0 {
        let n = vanishing_from(f.dims());
        trace[pos].n = n;
        return Ok(n);
    }
    if f.window() == 0 {
        return Ok(None);
    }
    if !f.is_zero() {
        let ret = retractions.get(depth).ok_or(Error::MissingRetraction { level: depth })?;
        verify_retraction(f, ret)?;
    }
    let c = split_min_n(&f.cokernel()?, r - 1, depth + 1, retractions, trace)?;
    let n = combine(Some(0), c);
    trace[pos].kernel_vanishes_from = Some(0);
    trace[pos].cokernel_at = c;
    trace[pos].n = n;
    Ok(n)
}

/// Split degree with caller-supplied retractions, one list per recursion depth
/// (`retractions[0]` for `F`, `retractions[1]` for `coker F`, ...).
pub fn split_degree_report<F: Field>(
    f: &CoefficientSystem<F>,
    retractions: &[Vec<Matrix<F>>],
    r_max: i64,
    n_max: usize,
) -> Result<DegreeReport> {
    let g = f.truncate(n_max);
    finish(&g, r_max, true, |r, trace| split_min_n(&g, r, 0, retractions, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffsys::{make_burau, make_constant, make_sign_zero, make_specht_pullback};
    use crate::linalg::{rat, RatFunc};

    #[test]
    fn vanishing() {
        assert_eq!(vanishing_from(&[1, 2, 0, 0]), Some(2));
        assert_eq!(vanishing_from(&[0, 0]), Some(0));
        assert_eq!(vanishing_from(&[0, 1]), None);
        assert_eq!(combine(Some(2), Some(0)), Some(2));
        assert_eq!(combine(Some(0), Some(3)), Some(4));
    }

    #[test]
    fn preset_degrees() {
        let c = degree_report(&make_constant(1, 6), 3, 6).unwrap();
        assert_eq!((c.verdict, c.degree, c.at), (Verdict::ExactOnWindow, Some(0), Some(0)));
        assert!(c.replays());
        let b = degree_report(&make_burau(6), 3, 6).unwrap();
        assert_eq!((b.verdict, b.degree, b.at), (Verdict::ExactOnWindow, Some(1), Some(0)));
        assert!(b.replays());
        let s = degree_report(&make_sign_zero(6), 3, 6).unwrap();
        assert_eq!(s.verdict, Verdict::NoFiniteDegreeOnWindow);
        assert!(s.replays());
        let v = degree_report(&make_specht_pullback(&"1".parse().unwrap(), 8).unwrap(), 3, 8).unwrap();
        assert_eq!(v.verdict, Verdict::ExactOnWindow);
        assert!(v.degree.unwrap() <= 2 && v.at.unwrap() <= 5, "{:?}", v);
        assert!(v.replays());
        for w in 0..4 {
            assert!(degree_report(&make_sign_zero(6), 3, w).unwrap().replays());
            assert!(degree_report(&make_specht_pullback(&"1".parse().unwrap(), 6).unwrap(), 3, w).unwrap().replays());
        }
    }

    #[test]
    fn invalid_system_is_inconsistent() {
        let f = make_sign_zero(4);
        let bad = CoefficientSystem::new(
            "sign-id",
            f.kind(),
            f.dims().to_vec(),
            (0..=4).map(|n| (1..n).map(|i| f.rho(n, i).clone()).collect()).collect(),
            (0..4).map(|_| Matrix::from_i64(&[&[1]])).collect(),
        )
        .unwrap();
        let r = degree_report(&bad, 2, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Inconsistent);
        assert!(r.replays());
    }

    #[test]
    fn split_constant() {
        let c = make_constant(1, 5);
        let ret = vec![vec![Matrix::identity(1); 5]];
        let r = split_degree_report(&c, &ret, 2, 5).unwrap();
        assert_eq!((r.degree, r.at), (Some(0), Some(0)));
        assert!(r.replays());
        let two = make_constant(1, 5).direct_sum(&make_constant(1, 5)).unwrap();
        let ret2 = vec![vec![Matrix::identity(2); 5]];
        let r2 = split_degree_report(&two, &ret2, 2, 5).unwrap();
        assert_eq!((r2.degree, r2.at), (Some(0), Some(0)));
    }

    #[test]
    fn split_errors() {
        let c = make_constant(1, 5);
        assert_eq!(split_degree_report(&c, &[], 2, 5).unwrap_err(), Error::MissingRetraction { level: 0 });
        let half = vec![vec![Matrix::scalar(1, rat(1, 2)); 5]];
        assert!(matches!(split_degree_report(&c, &half, 2, 5), Err(Error::InvalidRetraction(_))));
        let b = make_burau(5);
        // drops the last coordinate: equivariant but not natural
        let drop: Vec<Matrix<RatFunc>> =
            (0..5).map(|n| Matrix::<RatFunc>::identity(n + 1).select_rows(&(0..n).collect::<Vec<_>>())).collect();
        assert!(matches!(split_degree_report(&b, &[drop], 2, 5), Err(Error::InvalidRetraction(_))));
        let shear: Vec<Matrix<RatFunc>> = (0..5)
            .map(|n| {
                let mut m = Matrix::<RatFunc>::identity(n + 1).select_rows(&(0..n).collect::<Vec<_>>());
                if n > 0 {
                    m.set(0, n, RatFunc::from_rational(rat(1, 1)));
                }
                m
            })
            .collect();
        let err = split_degree_report(&b, &[shear], 2, 5).unwrap_err();
        assert!(err.to_string().contains("equivariance"), "{}", err);
    }
}
