use std::collections::HashMap;

use super::{CoefficientSystem, GroupKind};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, RatFunc, Rational};
use crate::reptheory::{contents, hook_dim, pad, seminormal_matrices, standard_tableaux, Partition};

/// Recorded in the Burau preset's metadata.
pub const BURAU_VARIANT: &str = "block [[1-t, t], [1, 0]] at (i, i+1); S_n appends a zero coordinate";

/// The constant system `F_n = Q^dim` with identity structure maps.
pub fn make_constant(dim: usize, window: usize) -> CoefficientSystem<Rational> {
    let rho = (0..=window).map(|n| vec![Matrix::identity(dim); n.saturating_sub(1)]).collect();
    let structure = (0..window).map(|_| Matrix::identity(dim)).collect();
    CoefficientSystem::new("constant", GroupKind::Braid, vec![dim; window + 1], rho, structure).expect("shapes agree")
}

/// Unreduced Burau representation over `Q(t)`, `F_n = Q(t)^n`.
pub fn make_burau(window: usize) -> CoefficientSystem<RatFunc> {
    let one = RatFunc::one();
    let t = RatFunc::t();
    let rho = (0..=window)
        .map(|n| {
            (1..n)
                .map(|i| {
                    let mut m = Matrix::identity(n);
                    m.set(i - 1, i - 1, one.sub(&t));
                    m.set(i - 1, i, t.clone());
                    m.set(i, i - 1, one.clone());
                    m.set(i, i, RatFunc::zero());
                    m
                })
                .collect()
        })
        .collect();
    let structure = (0..window)
        .map(|n| {
            let mut s = Matrix::zeros(n + 1, n);
            for k in 0..n {
                s.set(k, k, one.clone());
            }
            s
        })
        .collect();
    CoefficientSystem::new("burau", GroupKind::Braid, (0..=window).collect(), rho, structure)
        .expect("shapes agree")
        .with_metadata("variant", BURAU_VARIANT)
}

/// The sign representation of `Σ_n` with zero structure maps.
pub fn make_sign_zero(window: usize) -> CoefficientSystem<Rational> {
    let rho = (0..=window).map(|n| vec![Matrix::from_i64(&[&[-1]]); n.saturating_sub(1)]).collect();
    let structure = (0..window).map(|_| Matrix::zeros(1, 1)).collect();
    CoefficientSystem::new("sign-zero", GroupKind::Symmetric, vec![1; window + 1], rho, structure).expect("shapes agree")
}

/// `V_{λ[n]}` pulled back along `B_n → Σ_n`, zero below `|λ| + λ_1`, with the
/// structure maps solved from the intertwiner equations.
pub fn make_specht_pullback(lambda: &Partition, window: usize) -> Result<CoefficientSystem<Rational>> {
    let start = lambda.size() + lambda.first();
    if window < start {
        return Err(Error::PadBelowThreshold { partition: lambda.to_string(), n: window, needed: start });
    }
    let shapes: Vec<Option<Partition>> = (0..=window).map(|n| pad(lambda, n).ok()).collect();
    let dims: Vec<usize> = shapes.iter().map(|s| s.as_ref().map_or(0, |p| hook_dim(p) as usize)).collect();
    let rho: Vec<Vec<Matrix<Rational>>> = shapes
        .iter()
        .enumerate()
        .map(|(n, s)| match s {
            Some(p) => seminormal_matrices(p),
            None => vec![Matrix::zeros(0, 0); n.saturating_sub(1)],
        })
        .collect();
    let mut structure = Vec::with_capacity(window);
    for n in 0..window {
        let s = match (&shapes[n], &shapes[n + 1]) {
            (Some(a), Some(b)) => intertwiner(a, b, &rho[n], &rho[n + 1], n)?,
            _ => Matrix::zeros(dims[n + 1], dims[n]),
        };
        structure.push(s);
    }
    Ok(CoefficientSystem::new(&format!("specht{}", lambda), GroupKind::Braid, dims, rho, structure)?
        .with_metadata("partition", &lambda.to_string()))
}

/// The unique-up-to-scalar `Σ_n`-map `V_small → Res V_big`.
///
/// Any such map preserves joint eigenspaces of the Jucys–Murphy elements, so
/// `v_T` can only reach `v_U` with the same contents on `1..n`; those entries
/// are the unknowns.
fn intertwiner(
    small: &Partition,
    big: &Partition,
    rho_small: &[Matrix<Rational>],
    rho_big: &[Matrix<Rational>],
    n: usize,
) -> Result<Matrix<Rational>> {
    let ts = standard_tableaux(small);
    let tb = standard_tableaux(big);
    let mut by_prefix: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (u, tab) in tb.iter().enumerate() {
        let mut c = contents(tab);
        c.truncate(n);
        by_prefix.entry(c).or_default().push(u);
    }
    let unknowns: Vec<(usize, usize)> = ts
        .iter()
        .enumerate()
        .flat_map(|(t, tab)| by_prefix.get(&contents(tab)).cloned().unwrap_or_default().into_iter().map(move |u| (u, t)))
        .collect();
    let slot: HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, &p)| (p, k)).collect();

    // entry (u, t) of ρ_big(s_i) S − S ρ_small(s_i), as a combination of unknowns
    let mut eqs: HashMap<(usize, usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (&rho_big[i], &rho_small[i]);
        for (k, &(u2, t2)) in unknowns.iter().enumerate() {
            for u in 0..tb.len() {
                let c = a.get(u, u2);
                if !c.is_zero() {
                    eqs.entry((i, u, t2)).or_default().push((k, c.clone()));
                }
            }
            for t in 0..ts.len() {
                let c = b.get(t2, t);
                if !c.is_zero() {
                    eqs.entry((i, u2, t)).or_default().push((k, c.neg()));
                }
            }
        }
    }
    let mut keys: Vec<_> = eqs.keys().copied().collect();
    keys.sort_unstable();
    let mut system: Matrix<Rational> = Matrix::zeros(keys.len(), unknowns.len());
    for (row, key) in keys.iter().enumerate() {
        for (k, c) in &eqs[key] {
            let v = system.get(row, *k).add(c);
            system.set(row, *k, v);
        }
    }
    let sol = system.kernel();
    if sol.cols() != 1 {
        return Err(Error::IntertwinerDimension { degree: n, dim: sol.cols() });
    }
    let mut s = Matrix::zeros(tb.len(), ts.len());
    for (&(u, t), &k) in &slot {
        s.set(u, t, sol.get(k, 0).clone());
    }
    Ok(s)
}

/// A coefficient system over either scalar field.
#[derive(Clone, Debug)]
pub enum AnySystem {
    Rational(CoefficientSystem<Rational>),
    RatFunc(CoefficientSystem<RatFunc>),
}

pub fn preset_names() -> &'static [&'static str] {
    &["constant", "burau", "sign-zero", "specht"]
}

impl AnySystem {
    /// `constant[:dim]`, `burau`, `sign-zero`, `specht:<partition>`.
    pub fn preset(text: &str, window: usize) -> Result<Self> {
        let (name, arg) = text.split_once(':').map_or((text, None), |(a, b)| (a, Some(b)));
        match (name, arg) {
            ("constant", a) => {
                let dim = a.map_or(Ok(1), |d| d.parse().map_err(|_| Error::InvalidQuery(format!("bad dimension {:?}", d))))?;
                Ok(AnySystem::Rational(make_constant(dim, window)))
            }
            ("burau", None) => Ok(AnySystem::RatFunc(make_burau(window))),
            ("sign-zero", None) => Ok(AnySystem::Rational(make_sign_zero(window))),
            ("specht", Some(p)) => Ok(AnySystem::Rational(make_specht_pullback(&p.parse()?, window)?)),
            _ => Err(Error::InvalidQuery(format!(
                "unknown coefficient system {:?}; known: constant[:dim], burau, sign-zero, specht:<partition>",
                text
            ))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AnySystem::Rational(f) => f.to_json(),
            AnySystem::RatFunc(f) => f.to_json(),
        }
    }

    pub fn degree_report(&self, r_max: i64, n_max: usize) -> Result<super::DegreeReport> {
        match self {
            AnySystem::Rational(f) => super::degree_report(f, r_max, n_max),
            AnySystem::RatFunc(f) => super::degree_report(f, r_max, n_max),
        }
    }
}
