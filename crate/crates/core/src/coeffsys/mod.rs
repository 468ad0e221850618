//! Coefficient systems on braid and symmetric groups: validation,
//! suspension, kernel and cokernel, and degree computations.
//!
//! Matrices act on column vectors and `ρ(ab) = ρ(a)ρ(b)`.

mod degree;
mod presets;

pub use degree::{degree_report, split_degree_report, verify_retraction, DegreeReport, TraceStep, Verdict};
pub use presets::{make_burau, make_constant, make_sign_zero, make_specht_pullback, preset_names, AnySystem, BURAU_VARIANT};

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::braid::{block_braiding, BraidWord};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Braid,
    Symmetric,
}

/// Degrees `0..=window`, one matrix per generator `σ_1..σ_{n−1}` in degree `n`,
/// and structure maps `S_n : F_n → F_{n+1}` for `n < window`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSystem<F> {
    name: String,
    kind: GroupKind,
    dims: Vec<usize>,
    rho: Vec<Vec<Matrix<F>>>,
    structure: Vec<Matrix<F>>,
    metadata: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub generator: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub invariant: &'static str,
    pub pass: bool,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn first_violation(&self) -> Option<(&'static str, &Violation)> {
        self.checks.iter().find_map(|c| c.violation.as_ref().map(|v| (c.invariant, v)))
    }
}

impl<F: Field> CoefficientSystem<F> {
    pub fn new(
        name: &str,
        kind: GroupKind,
        dims: Vec<usize>,
        rho: Vec<Vec<Matrix<F>>>,
        structure: Vec<Matrix<F>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyWindow("a coefficient system needs degree 0".into()));
        }
        let top = dims.len() - 1;
        if rho.len() != dims.len() || structure.len() != top {
            return Err(Error::InvalidSystem(format!(
                "{} degrees need {} action lists and {} structure maps, got {} and {}",
                dims.len(),
                dims.len(),
                top,
                rho.len(),
                structure.len()
            )));
        }
        for (n, mats) in rho.iter().enumerate() {
            if mats.len() != n.saturating_sub(1) {
                return Err(Error::InvalidSystem(format!("degree {} needs {} generator matrices", n, n.saturating_sub(1))));
            }
            if let Some(i) = mats.iter().position(|m| m.rows() != dims[n] || m.cols() != dims[n]) {
                return Err(Error::InvalidSystem(format!("rho_{}(s{}) is not {}x{}", n, i + 1, dims[n], dims[n])));
            }
        }
        for (n, s) in structure.iter().enumerate() {
            if s.rows() != dims[n + 1] || s.cols() != dims[n] {
                return Err(Error::InvalidSystem(format!("S_{} is not {}x{}", n, dims[n + 1], dims[n])));
            }
        }
        Ok(CoefficientSystem { name: name.to_string(), kind, dims, rho, structure, metadata: BTreeMap::new() })
    }

    pub fn zero(kind: GroupKind, window: usize) -> Self {
        let rho = (0..=window).map(|n| vec![Matrix::zeros(0, 0); n.saturating_sub(1)]).collect();
        let structure = (0..window).map(|_| Matrix::zeros(0, 0)).collect();
        CoefficientSystem::new("zero", kind, vec![0; window + 1], rho, structure).expect("shapes agree")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn window(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `ρ_n(σ_i)`, `1 ≤ i < n`.
    pub fn rho(&self, n: usize, i: usize) -> &Matrix<F> {
        &self.rho[n][i - 1]
    }

    pub fn structure(&self, n: usize) -> &Matrix<F> {
        &self.structure[n]
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn with_metadata(mut self, key: &str, value: &str) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// `ρ_n` of a braid word on `n` strands.
    pub fn rho_word(&self, n: usize, w: &BraidWord) -> Result<Matrix<F>> {
        if w.strands() != n {
            return Err(Error::StrandMismatch { left: n, right: w.strands() });
        }
        let mut acc = Matrix::identity(self.dims[n]);
        for &l in w.letters() {
            let m = self.rho(n, l.unsigned_abs() as usize);
            acc = if l > 0 {
                acc.mul(m)
            } else {
                acc.mul(&m.inverse().ok_or_else(|| Error::InvalidSystem(format!("rho_{}(s{}) is singular", n, l.abs())))?)
            };
        }
        Ok(acc)
    }

    /// The same system on degrees `0..=window`.
    pub fn truncate(&self, window: usize) -> Self {
        let w = window.min(self.window());
        CoefficientSystem {
            name: self.name.clone(),
            kind: self.kind,
            dims: self.dims[..=w].to_vec(),
            rho: self.rho[..=w].to_vec(),
            structure: self.structure[..w].to_vec(),
            metadata: self.metadata.clone(),
        }
    }

    /// Composite `S_{n+m−1} ⋯ S_n`.
    pub fn structure_power(&self, n: usize, m: usize) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dims[n]);
        for k in n..n + m {
            acc = self.structure[k].mul(&acc);
        }
        acc
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |invariant, violation: Option<Violation>| {
            checks.push(InvariantCheck { invariant, pass: violation.is_none(), violation });
        };
        push("invertible", self.invertibility_violation());
        push("relations", self.relation_violation());
        push("equivariance", self.equivariance_violation());
        push("triviality", self.triviality_violation(2));
        let valid = checks.iter().all(|c| c.pass);
        ValidationReport { valid, checks }
    }

    fn invertibility_violation(&self) -> Option<Violation> {
        for (n, mats) in self.rho.iter().enumerate() {
            for (k, m) in mats.iter().enumerate() {
                if m.inverse().is_none() {
                    return Some(Violation { n, generator: Some(k + 1) });
                }
            }
        }
        None
    }

    fn relation_violation(&self) -> Option<Violation> {
        for (n, mats) in self.rho.iter().enumerate() {
            let g = mats.len();
            for i in 0..g {
                if self.kind == GroupKind::Symmetric && !mats[i].mul(&mats[i]).is_identity() {
                    return Some(Violation { n, generator: Some(i + 1) });
                }
                for j in i + 1..g {
                    let (a, b) = (&mats[i], &mats[j]);
                    let ok = if j == i + 1 {
                        a.mul(b).mul(a) == b.mul(a).mul(b)
                    } else {
                        a.mul(b) == b.mul(a)
                    };
                    if !ok {
                        return Some(Violation { n, generator: Some(i + 1) });
                    }
                }
            }
        }
        None
    }

    fn equivariance_violation(&self) -> Option<Violation> {
        for (n, s) in self.structure.iter().enumerate() {
            for i in 1..n {
                if s.mul(self.rho(n, i)) != self.rho(n + 1, i).mul(s) {
                    return Some(Violation { n, generator: Some(i) });
                }
            }
        }
        None
    }

    /// First `(n, σ_k)` with `n < k < n+m` where `σ_k` moves the image of
    /// `S_{n+m−1}⋯S_n`.
    pub fn triviality_violation(&self, m: usize) -> Option<Violation> {
        let top = self.window();
        for n in 0..=top.saturating_sub(m) {
            if n + m > top {
                break;
            }
            let comp = self.structure_power(n, m);
            for k in n + 1..n + m {
                if self.rho(n + m, k).mul(&comp) != comp {
                    return Some(Violation { n, generator: Some(k) });
                }
            }
        }
        None
    }

    /// `(ΣF)_n = F_{n+1}`, `S^Σ_n = ρ_{n+2}(σ_{n+1}) S_{n+1}`.
    pub fn suspend(&self) -> Result<Self> {
        let top = self.window();
        if top == 0 {
            return Err(Error::EmptyWindow("suspension needs degrees 0 and 1".into()));
        }
        let dims = self.dims[1..].to_vec();
        let rho = (0..top).map(|n| self.rho[n + 1][..n.saturating_sub(1)].to_vec()).collect();
        let structure = (0..top - 1).map(|n| self.rho(n + 2, n + 1).mul(&self.structure[n + 1])).collect();
        let mut out = CoefficientSystem::new(&format!("S({})", self.name), self.kind, dims, rho, structure)?;
        out.metadata = self.metadata.clone();
        Ok(out)
    }

    pub fn suspend_times(&self, i: usize) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..i {
            out = out.suspend()?;
        }
        Ok(out)
    }

    /// `ρ_{n+i+1}(σ_{n+1}⋯σ_{n+i}) S_{n+i}`, the structure map of `Σ^i F` in degree `n`.
    pub fn iterated_structure(&self, i: usize, n: usize) -> Result<Matrix<F>> {
        Ok(self.braiding(i, n)?.mul(&self.structure[n + i]))
    }

    /// `ρ_{n+i+1}` of `β_{i,1}` placed after the first `n` strands.
    pub fn braiding(&self, i: usize, n: usize) -> Result<Matrix<F>> {
        let w = block_braiding(i, 1).shift(n, n + i + 1)?;
        self.rho_word(n + i + 1, &w)
    }

    /// Degreewise kernel of `S_n`; the structure maps vanish.
    pub fn kernel(&self) -> Result<Self> {
        let top = self.window();
        if top == 0 {
            return Err(Error::EmptyWindow("kernel needs degrees 0 and 1".into()));
        }
        let bases: Vec<Matrix<F>> = (0..top).map(|n| self.structure[n].kernel()).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut rho = Vec::with_capacity(top);
        for n in 0..top {
            let b = &bases[n];
            let mut mats = Vec::with_capacity(n.saturating_sub(1));
            for i in 1..n {
                let x = b
                    .solve(&self.rho(n, i).mul(b))
                    .ok_or_else(|| Error::InvalidSystem(format!("kernel in degree {} is not s{}-stable", n, i)))?;
                mats.push(x);
            }
            rho.push(mats);
        }
        let structure = (0..top - 1).map(|n| Matrix::zeros(dims[n + 1], dims[n])).collect();
        let mut out = CoefficientSystem::new(&format!("ker({})", self.name), self.kind, dims, rho, structure)?;
        out.metadata = self.metadata.clone();
        Ok(out)
    }

    /// Basis of `ker S_n` as columns.
    pub fn kernel_basis(&self, n: usize) -> Matrix<F> {
        self.structure[n].kernel()
    }

    pub fn cokernel(&self) -> Result<Self> {
        Ok(self.cokernel_with_maps()?.system)
    }

    /// `coker(F)_n = F_{n+1} / im S_n` together with the chosen projections and lifts.
    pub fn cokernel_with_maps(&self) -> Result<Cokernel<F>> {
        let top = self.window();
        if top == 0 {
            return Err(Error::EmptyWindow("cokernel needs degrees 0 and 1".into()));
        }
        let maps: Vec<(Matrix<F>, Matrix<F>)> = (0..top).map(|n| quotient_maps(&self.structure[n])).collect();
        let dims: Vec<usize> = maps.iter().map(|(q, _)| q.rows()).collect();
        let mut rho = Vec::with_capacity(top);
        for (n, (q, l)) in maps.iter().enumerate() {
            rho.push((1..n).map(|i| q.mul(self.rho(n + 1, i)).mul(l)).collect());
        }
        let structure = (0..top - 1)
            .map(|n| {
                let (q1, _) = &maps[n + 1];
                let (_, l0) = &maps[n];
                q1.mul(self.rho(n + 2, n + 1)).mul(&self.structure[n + 1]).mul(l0)
            })
            .collect();
        let mut system = CoefficientSystem::new(&format!("coker({})", self.name), self.kind, dims, rho, structure)?;
        system.metadata = self.metadata.clone();
        let (projections, lifts) = maps.into_iter().unzip();
        Ok(Cokernel { system, projections, lifts })
    }

    /// `P_n ρ P_n⁻¹` and `P_{n+1} S_n P_n⁻¹`.
    pub fn conjugated(&self, p: &[Matrix<F>]) -> Result<Self> {
        if p.len() != self.dims.len() {
            return Err(Error::InvalidSystem(format!("need {} change-of-basis matrices", self.dims.len())));
        }
        let mut inv = Vec::with_capacity(p.len());
        for (n, m) in p.iter().enumerate() {
            if m.rows() != self.dims[n] || m.cols() != self.dims[n] {
                return Err(Error::InvalidSystem(format!("change of basis in degree {} has the wrong shape", n)));
            }
            inv.push(m.inverse().ok_or_else(|| Error::InvalidSystem(format!("change of basis in degree {} is singular", n)))?);
        }
        let rho = self
            .rho
            .iter()
            .enumerate()
            .map(|(n, mats)| mats.iter().map(|m| p[n].mul(m).mul(&inv[n])).collect())
            .collect();
        let structure = self.structure.iter().enumerate().map(|(n, s)| p[n + 1].mul(s).mul(&inv[n])).collect();
        let mut out = CoefficientSystem::new(&self.name, self.kind, self.dims.clone(), rho, structure)?;
        out.metadata = self.metadata.clone();
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind || self.window() != other.window() {
            return Err(Error::InvalidSystem("direct sum needs equal kinds and windows".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let rho = (0..self.dims.len())
            .map(|n| (1..n).map(|i| block_diag(self.rho(n, i), other.rho(n, i))).collect())
            .collect();
        let structure = self.structure.iter().zip(&other.structure).map(|(a, b)| block_diag(a, b)).collect();
        CoefficientSystem::new(&format!("{}+{}", self.name, other.name), self.kind, dims, rho, structure)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rho: Vec<Vec<Vec<Vec<String>>>> =
            self.rho.iter().map(|mats| mats.iter().map(Matrix::to_strings).collect()).collect();
        let structure: Vec<Vec<Vec<String>>> = self.structure.iter().map(Matrix::to_strings).collect();
        json!({
            "name": self.name,
            "kind": self.kind,
            "field": F::NAME,
            "window": self.window(),
            "dims": self.dims,
            "rho": rho,
            "structure": structure,
            "metadata": self.metadata,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel<F> {
    pub system: CoefficientSystem<F>,
    /// `Q_n : F_{n+1} → coker(F)_n`.
    pub projections: Vec<Matrix<F>>,
    /// `L_n : coker(F)_n → F_{n+1}` with `Q_n L_n = I`.
    pub lifts: Vec<Matrix<F>>,
}

fn block_diag<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    m
}

/// `(Q, L)` with `Q S = 0`, `Q L = I` and `[im S | L]` a basis.
pub fn quotient_maps<F: Field>(s: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    let d = s.rows();
    let (_, pivots) = s.rref();
    let image = s.select_cols(&pivots);
    let r = pivots.len();
    let (_, ext) = Matrix::hstack(&[image.clone(), Matrix::identity(d)]).rref();
    let extra: Vec<usize> = ext.iter().filter(|&&c| c >= r).map(|&c| c - r).collect();
    let lift = Matrix::<F>::identity(d).select_cols(&extra);
    let full = Matrix::hstack(&[image, lift.clone()]);
    let inv = full.inverse().expect("image plus complement is a basis");
    let rows: Vec<usize> = (r..d).collect();
    (inv.select_rows(&rows), lift)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub closed_form: bool,
    pub phi_identity: bool,
    pub kernel_dims: (usize, usize),
    pub kernels_equal: bool,
    pub cokernel_dims: (usize, usize),
    pub psi_invertible: bool,
    pub psi_equivariant: bool,
    pub psi_natural: bool,
}

impl ComparisonRow {
    pub fn pass(&self) -> bool {
        self.closed_form
            && self.phi_identity
            && self.kernels_equal
            && self.kernel_dims.0 == self.kernel_dims.1
            && self.cokernel_dims.0 == self.cokernel_dims.1
            && self.psi_invertible
            && self.psi_equivariant
            && self.psi_natural
    }
}

/// Compares `Σ^i ker F` with `ker Σ^i F` and `Σ^i coker F` with
/// `coker Σ^i F` through `Φ_n = ρ_{n+i+1}(σ_{n+1}⋯σ_{n+i})⁻¹`.
pub fn compare_suspensions<F: Field>(f: &CoefficientSystem<F>, i: usize) -> Result<Vec<ComparisonRow>> {
    let si = f.suspend_times(i)?;
    if si.window() == 0 {
        return Ok(Vec::new());
    }
    let ker_si = si.kernel()?;
    let si_ker = f.kernel()?.suspend_times(i)?;
    let coker_si = si.cokernel_with_maps()?;
    let coker_f = f.cokernel_with_maps()?;
    let si_coker = coker_f.system.suspend_times(i)?;
    let top = si.window() - 1;
    let phis: Vec<Matrix<F>> = (0..=top)
        .map(|n| {
            f.braiding(i, n)?
                .inverse()
                .ok_or_else(|| Error::InvalidSystem(format!("braiding in degree {} is singular", n + i + 1)))
        })
        .collect::<Result<_>>()?;
    let psis: Vec<Matrix<F>> =
        (0..=top).map(|n| coker_f.projections[n + i].mul(&phis[n]).mul(&coker_si.lifts[n])).collect();
    let mut rows = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let t = si.structure(n);
        let s = f.structure(n + i);
        let closed = f.iterated_structure(i, n)? == *t;
        let phi_identity = phis[n].mul(t) == *s;
        let kt = si.kernel_basis(n);
        let ks = f.kernel_basis(n + i);
        let kernels_equal = kt.cols() == ks.cols() && Matrix::hstack(&[kt.clone(), ks.clone()]).rank() == kt.cols();
        let psi = &psis[n];
        let psi_invertible = psi.rows() == psi.cols() && psi.inverse().is_some();
        let psi_equivariant = (1..n).all(|j| si_coker.rho(n, j).mul(psi) == psi.mul(coker_si.system.rho(n, j)));
        let psi_natural =
            n == top || si_coker.structure(n).mul(psi) == psis[n + 1].mul(coker_si.system.structure(n));
        rows.push(ComparisonRow {
            n,
            closed_form: closed,
            phi_identity,
            kernel_dims: (si_ker.dim(n), ker_si.dim(n)),
            kernels_equal,
            cokernel_dims: (si_coker.dim(n), coker_si.system.dim(n)),
            psi_invertible,
            psi_equivariant,
            psi_natural,
        });
    }
    Ok(rows)
}
