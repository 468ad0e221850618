//! Fox calculus and twisted `H₀`, `H₁` of finitely presented groups.
//!
//! Coefficients are right modules: row vectors with `v·g = v·ρ(g)` and
//! `ρ(gh) = ρ(g)ρ(h)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::braid::{braid_equal, BraidWord};
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    gens: usize,
    relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn new(gens: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        for (k, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::Parse(format!("relator {} is empty", k)));
            }
            if let Some(&l) = r.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > gens) {
                return Err(Error::GeneratorOutOfRange { index: l.unsigned_abs() as usize, rank: gens });
            }
        }
        Ok(GroupPresentation { gens, relators })
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.gens)?;
        for r in &self.relators {
            let toks: Vec<String> = r
                .iter()
                .map(|&l| if l > 0 { format!("s{}", l) } else { format!("S{}", -l) })
                .collect();
            write!(f, "; rel: {}", toks.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for GroupPresentation {
    type Err = Error;

    /// `gens: 2; rel: s1 s2 s1 S2 S1 S2; rel: ...`, capitals for inverses.
    fn from_str(s: &str) -> Result<Self> {
        let mut gens = None;
        let mut relators = Vec::new();
        for seg in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, val) = seg
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected 'key: value' in {:?}", seg)))?;
            match key.trim() {
                "gens" => {
                    gens = Some(val.trim().parse().map_err(|_| Error::Parse(format!("bad generator count {:?}", val)))?);
                }
                "rel" => {
                    let mut word = Vec::new();
                    for tok in val.split_whitespace() {
                        let (sign, rest) = match tok.strip_prefix('s') {
                            Some(r) => (1, r),
                            None => (-1, tok.strip_prefix('S').ok_or_else(|| Error::Parse(format!("bad letter {:?}", tok)))?),
                        };
                        let i: i32 = rest.parse().map_err(|_| Error::Parse(format!("bad letter {:?}", tok)))?;
                        word.push(sign * i);
                    }
                    relators.push(word);
                }
                other => return Err(Error::Parse(format!("unknown key {:?}", other))),
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing 'gens'".into()))?;
        GroupPresentation::new(gens, relators)
    }
}

/// `B_n` on `σ_1..σ_{n−1}` with braid and commutation relators.
pub fn braid_presentation(n: usize) -> GroupPresentation {
    let g = n.saturating_sub(1);
    let mut rels = Vec::new();
    for i in 1..=g as i32 {
        for j in i + 1..=g as i32 {
            if j == i + 1 {
                rels.push(vec![i, j, i, -j, -i, -j]);
            } else {
                rels.push(vec![i, j, -i, -j]);
            }
        }
    }
    GroupPresentation { gens: g, relators: rels }
}

/// `Σ_n`: the braid presentation plus `σ_i²`.
pub fn symmetric_presentation(n: usize) -> GroupPresentation {
    let mut p = braid_presentation(n);
    for i in 1..=p.gens as i32 {
        p.relators.push(vec![i, i]);
    }
    p
}

/// Index of `A_ij` (1-based, `i < j`) among the pure braid generators.
pub fn pure_generator_index(n: usize, i: usize, j: usize) -> usize {
    let mut k = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            k += 1;
            if (a, b) == (i, j) {
                return k;
            }
        }
    }
    panic!("no generator A_{}{} in P_{}", i, j, n)
}

/// `A_ij = σ_{j−1}⋯σ_{i+1} σ_i² σ_{i+1}⁻¹⋯σ_{j−1}⁻¹` in `B_n`.
pub fn pure_generator_braid(n: usize, i: usize, j: usize) -> BraidWord {
    let mut w: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
    w.push(i as i32);
    w.push(i as i32);
    w.extend((i + 1..j).map(|k| -(k as i32)));
    BraidWord::new(n, w).expect("indices in range")
}

/// `P_n` on `A_ij` with the conjugation relators `A_rs⁻¹ A_ij A_rs = …`.
pub fn pure_braid_presentation(n: usize) -> GroupPresentation {
    let a = |i: usize, j: usize| pure_generator_index(n, i, j) as i32;
    let mut rels = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    for &(r, s) in &pairs {
        for &(i, j) in &pairs {
            if (r, s) >= (i, j) {
                continue;
            }
            // right-hand side as a word in the generators
            let rhs: Vec<i32> = if s < i || (i < r && s < j) {
                vec![a(i, j)]
            } else if s == i {
                vec![a(r, j), a(i, j), -a(r, j)]
            } else if i == r && s < j {
                vec![a(r, j), a(s, j), a(i, j), -a(s, j), -a(r, j)]
            } else if r < i && i < s && s < j {
                vec![a(r, j), a(s, j), -a(r, j), -a(s, j), a(i, j), a(s, j), a(r, j), -a(s, j), -a(r, j)]
            } else {
                continue;
            };
            let mut rel = vec![-a(r, s), a(i, j), a(r, s)];
            rel.extend(rhs.iter().rev().map(|&l| -l));
            rels.push(reduce(&rel));
        }
    }
    GroupPresentation { gens: n * n.saturating_sub(1) / 2, relators: rels }
}

fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Checks every pure braid relator in `B_n` through the generator map.
pub fn verify_pure_braid_relators(n: usize) -> Result<()> {
    let p = pure_braid_presentation(n);
    let images: Vec<BraidWord> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .map(|(i, j)| pure_generator_braid(n, i, j))
        .collect();
    for (k, r) in p.relators.iter().enumerate() {
        let mut w = BraidWord::identity(n);
        for &l in r {
            let g = &images[l.unsigned_abs() as usize - 1];
            w = w.mul(&if l > 0 { g.clone() } else { g.inverse() })?;
        }
        if !braid_equal(&w, &BraidWord::identity(n))? {
            return Err(Error::RelatorNotKilled { index: k });
        }
    }
    Ok(())
}

/// `∂w/∂x_j` as a formal sum of reduced group words.
pub fn fox_derivative(w: &[i32], j: usize) -> BTreeMap<Vec<i32>, i64> {
    let mut out: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    let mut prefix: Vec<i32> = Vec::new();
    for &l in w {
        if l.unsigned_abs() as usize == j {
            if l > 0 {
                *out.entry(prefix.clone()).or_insert(0) += 1;
            } else {
                let mut p = prefix.clone();
                p.push(l);
                *out.entry(reduce(&p)).or_insert(0) -= 1;
            }
        }
        prefix.push(l);
        prefix = reduce(&prefix);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// A finite-dimensional rational representation given on generators.
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    mats: Vec<Matrix<Rational>>,
    inverses: Vec<Matrix<Rational>>,
}

impl Representation {
    pub fn new(dim: usize, mats: Vec<Matrix<Rational>>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(mats.len());
        for (k, m) in mats.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!("generator {} is not {}x{}", k + 1, dim, dim)));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::InvalidRepresentation(format!("generator {} is singular", k + 1)))?;
            inverses.push(inv);
        }
        Ok(Representation { dim, mats, inverses })
    }

    pub fn trivial(gens: usize) -> Self {
        Representation::scalar(gens, rat(1, 1))
    }

    /// Every generator acts by the scalar `c`.
    pub fn scalar(gens: usize, c: Rational) -> Self {
        let m = Matrix::scalar(1, c);
        Representation::new(1, vec![m; gens]).expect("nonzero scalar")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> usize {
        self.mats.len()
    }

    fn letter(&self, l: i32) -> &Matrix<Rational> {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.mats[k]
        } else {
            &self.inverses[k]
        }
    }

    pub fn eval(&self, w: &[i32]) -> Matrix<Rational> {
        let mut acc = Matrix::identity(self.dim);
        for &l in w {
            acc = acc.mul(self.letter(l));
        }
        acc
    }
}

pub fn check_relators(p: &GroupPresentation, rho: &Representation) -> Result<()> {
    if rho.generators() != p.gens {
        return Err(Error::InvalidRepresentation(format!(
            "{} generator matrices for {} generators",
            rho.generators(),
            p.gens
        )));
    }
    for (k, r) in p.relators.iter().enumerate() {
        if !rho.eval(r).is_identity() {
            return Err(Error::RelatorNotKilled { index: k });
        }
    }
    Ok(())
}

/// `ρ(∂r/∂x_j)` for every `j`, evaluating prefixes incrementally.
fn fox_jacobian_row(r: &[i32], rho: &Representation) -> Vec<Matrix<Rational>> {
    let d = rho.dim;
    let mut blocks = vec![Matrix::zeros(d, d); rho.generators()];
    let mut prefix = Matrix::identity(d);
    for &l in r {
        let j = l.unsigned_abs() as usize - 1;
        if l > 0 {
            blocks[j] = blocks[j].add(&prefix);
            prefix = prefix.mul(rho.letter(l));
        } else {
            prefix = prefix.mul(rho.letter(l));
            blocks[j] = blocks[j].sub(&prefix);
        }
    }
    blocks
}

/// `dim H_i(G; ρ)` for `i ∈ {0, 1}`.
pub fn twisted_homology(p: &GroupPresentation, rho: &Representation, i: usize) -> Result<usize> {
    check_relators(p, rho)?;
    let d = rho.dim;
    let g = p.gens;
    let id = Matrix::identity(d);
    let blocks: Vec<Matrix<Rational>> = rho.mats.iter().map(|m| m.sub(&id)).collect();
    let rank_d1 = if g == 0 { 0 } else { Matrix::vstack(&blocks).rank() };
    match i {
        0 => Ok(d - rank_d1),
        1 => {
            let rank_d2 = if p.relators.is_empty() || g == 0 {
                0
            } else {
                let rows: Vec<Matrix<Rational>> =
                    p.relators.iter().map(|r| Matrix::hstack(&fox_jacobian_row(r, rho))).collect();
                Matrix::vstack(&rows).rank()
            };
            Ok(g * d - rank_d1 - rank_d2)
        }
        _ => Err(Error::InvalidQuery(format!("only H_0 and H_1 are computed, asked for H_{}", i))),
    }
}

/// `g − rank` of the exponent-sum matrix: the free rank of `G^ab`.
pub fn abelianization_rank(p: &GroupPresentation) -> usize {
    if p.gens == 0 {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = p
        .relators
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); p.gens];
            for &l in r {
                v[l.unsigned_abs() as usize - 1] += rat(l.signum() as i64, 1);
            }
            v
        })
        .collect();
    if rows.is_empty() {
        return p.gens;
    }
    p.gens - Matrix::from_rows(rows).rank()
}

/// `(dim H₁(B_n; ℚ), dim H₁(B_n; ℚ^sign))`, the sign pulled back along `B_n → Σ_n`.
pub fn oriented_h1(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidQuery(format!("oriented summands need n >= 2, got {}", n)));
    }
    let p = braid_presentation(n);
    let triv = twisted_homology(&p, &Representation::trivial(p.gens), 1)?;
    let sign = twisted_homology(&p, &Representation::scalar(p.gens, rat(-1, 1)), 1)?;
    Ok((triv, sign))
}

/// Matrices of a representation as exact strings, for reports.
pub fn matrices_as_strings(rho: &Representation) -> Vec<Vec<Vec<String>>> {
    rho.mats.iter().map(|m| m.to_strings()).collect()
}

impl Representation {
    pub fn matrix(&self, k: usize) -> &Matrix<Rational> {
        &self.mats[k]
    }
}
