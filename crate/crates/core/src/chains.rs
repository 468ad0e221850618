//! Integer chain complexes, Smith normal form, and homological connectivity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::destab::SemiSimplicialSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols, "entry count mismatch");
        IntegerMatrix { rows, cols, data: vals.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        IntegerMatrix::from_i64(r, c, &flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = IntegerMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * m.get(n - 1, n - 1)
    }

    /// Reorder rows and columns: new row `r` is old row `row_perm[r]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for (r, &rr) in row_perm.iter().enumerate() {
            for (c, &cc) in col_perm.iter().enumerate() {
                out.set(r, c, self.get(rr, cc).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// `U·M·V = D` with unimodular `U`, `V` and `d₁ | d₂ | …` on the diagonal.
pub fn smith_normal_form(m: &IntegerMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let r = m.rows.min(m.cols);
    for t in 0..r {
        loop {
            // least nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..d.rows {
                let x = d.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_floor(&p);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                let x = d.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_floor(&p);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { d, u, v }
}

/// Nonzero invariant factors of `m` in divisibility order.
///
/// Eliminates unit pivots sparsely in machine integers, then finishes the
/// remaining block with the full algorithm. Falls back to the full algorithm
/// on overflow.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    match sparse_unit_elimination(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            if rest.rows > 0 && rest.cols > 0 {
                out.extend(smith_normal_form(&rest).diagonal());
            }
            out
        }
        None => smith_normal_form(m).diagonal(),
    }
}

type SparseRow = Vec<(usize, i64)>;

fn sparse_unit_elimination(m: &IntegerMatrix) -> Option<(usize, IntegerMatrix)> {
    let mut rows: Vec<SparseRow> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::new();
        for j in 0..m.cols {
            let x = m.get(i, j);
            if !x.is_zero() {
                row.push((j, x.to_i64()?));
            }
        }
        rows.push(row);
    }
    let mut col_rows: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); m.cols];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            col_rows[j].insert(i);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut units = 0;
    loop {
        // unit pivot of least Markowitz cost
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row_alive[i] {
                continue;
            }
            for &(j, x) in row {
                if x == 1 || x == -1 {
                    let cost = (row.len() - 1) * (col_rows[j].len() - 1);
                    if best.map_or(true, |b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let prow = std::mem::take(&mut rows[pi]);
        let pval = prow.iter().find(|e| e.0 == pj).map(|e| e.1)?;
        let targets: Vec<usize> = col_rows[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in targets {
            let a = rows[i].iter().find(|e| e.0 == pj).map(|e| e.1)?;
            // row_i -= (a / pval) * prow, pval = ±1
            let f = a.checked_mul(pval)?;
            let merged = merge_sub(&rows[i], &prow, f)?;
            for &(j, _) in &rows[i] {
                col_rows[j].remove(&i);
            }
            for &(j, _) in &merged {
                col_rows[j].insert(i);
            }
            rows[i] = merged;
        }
        for &(j, _) in &prow {
            col_rows[j].remove(&pi);
        }
        row_alive[pi] = false;
        col_alive[pj] = false;
        units += 1;
    }
    // pivot column entries are gone from every other row; the pivot row is
    // cleared by column operations that touch nothing else
    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| col_alive[j]).collect();
    let mut col_pos = vec![usize::MAX; m.cols];
    for (k, &j) in live_cols.iter().enumerate() {
        col_pos[j] = k;
    }
    let mut rest = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    for (r, &i) in live_rows.iter().enumerate() {
        for &(j, x) in &rows[i] {
            if col_pos[j] == usize::MAX {
                return None;
            }
            rest.set(r, col_pos[j], BigInt::from(x));
        }
    }
    Some((units, rest))
}

fn merge_sub(a: &SparseRow, p: &SparseRow, f: i64) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(a.len() + p.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < p.len() {
        let ja = a.get(x).map_or(usize::MAX, |e| e.0);
        let jp = p.get(y).map_or(usize::MAX, |e| e.0);
        if ja < jp {
            out.push(a[x]);
            x += 1;
        } else if jp < ja {
            out.push((jp, p[y].1.checked_mul(f)?.checked_neg()?));
            y += 1;
        } else {
            let v = a[x].1.checked_sub(p[y].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((ja, v));
            }
            x += 1;
            y += 1;
        }
    }
    Some(out)
}

/// Rank over ℚ.
pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    /// `boundaries[k]` maps degree `min_degree + k` to the degree below.
    boundaries: Vec<IntegerMatrix>,
    reduced: bool,
}

impl ChainComplex {
    /// `boundaries[k]` is `∂` out of degree `min_degree + k`; the lowest one
    /// must have zero rows.
    pub fn new(min_degree: i64, ranks: Vec<usize>, boundaries: Vec<IntegerMatrix>, reduced: bool) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::DegreeMismatch("one boundary per degree required".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if b.cols != ranks[k] || b.rows != below {
                return Err(Error::DegreeMismatch(format!(
                    "boundary out of degree {} has shape {}x{}, expected {}x{}",
                    min_degree + k as i64,
                    b.rows,
                    b.cols,
                    below,
                    ranks[k]
                )));
            }
        }
        Ok(ChainComplex { min_degree, ranks, boundaries, reduced })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |k| self.ranks[k])
    }

    pub fn boundary(&self, degree: i64) -> Option<&IntegerMatrix> {
        self.index(degree).map(|k| &self.boundaries[k])
    }

    fn index(&self, degree: i64) -> Option<usize> {
        let k = degree - self.min_degree;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.ranks.len())
            .map(|k| {
                let sign = if (self.min_degree + k as i64).rem_euclid(2) == 0 { 1 } else { -1 };
                sign * self.ranks[k] as i64
            })
            .sum()
    }

    pub fn check_chain_condition(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let prod = self.boundaries[k - 1].mul(&self.boundaries[k]);
            if !prod.is_zero() {
                return Err(Error::ChainCondition { degree: self.min_degree + k as i64 });
            }
        }
        Ok(())
    }
}

/// Alternating-face boundary; `reduced` adds the augmentation to degree −1.
pub fn boundary_from_sss(s: &SemiSimplicialSet, reduced: bool) -> ChainComplex {
    let top = s.top_degree();
    let mut ranks = Vec::new();
    let mut boundaries = Vec::new();
    if reduced {
        ranks.push(1);
        boundaries.push(IntegerMatrix::zeros(0, 1));
    }
    if let Some(top) = top {
        for p in 0..=top {
            let n = s.count(p);
            let b = if p == 0 {
                let mut aug = IntegerMatrix::zeros(if reduced { 1 } else { 0 }, n);
                if reduced {
                    for c in 0..n {
                        aug.set(0, c, BigInt::one());
                    }
                }
                aug
            } else {
                let below = s.count(p - 1);
                let mut acc = vec![0i64; below * n];
                for i in 0..=p {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (c, &f) in s.face_table(p, i).iter().enumerate() {
                        acc[f * n + c] += sign;
                    }
                }
                IntegerMatrix::from_i64(below, n, &acc)
            };
            ranks.push(n);
            boundaries.push(b);
        }
    }
    let min_degree = if reduced { -1 } else { 0 };
    ChainComplex { min_degree, ranks, boundaries, reduced }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Homology in every degree of the complex (reduced iff the complex is).
pub fn reduced_homology(c: &ChainComplex) -> Result<Vec<HomologyGroup>> {
    c.check_chain_condition()?;
    let factors: Vec<Vec<BigInt>> = c.boundaries.iter().map(invariant_factors).collect();
    let mut out = Vec::with_capacity(c.ranks.len());
    for k in 0..c.ranks.len() {
        let rk_out = factors[k].len();
        let into = factors.get(k + 1);
        let rk_in = into.map_or(0, Vec::len);
        let free = c.ranks[k]
            .checked_sub(rk_out + rk_in)
            .ok_or_else(|| Error::Internal("negative homology rank".into()))?;
        let torsion = into
            .map(|f| {
                f.iter()
                    .filter(|x| !x.is_one())
                    .map(|x| x.to_u64().ok_or_else(|| Error::Internal(format!("torsion {} too large", x))))
                    .collect::<Result<Vec<u64>>>()
            })
            .transpose()?
            .unwrap_or_default();
        out.push(HomologyGroup { degree: c.min_degree + k as i64, free_rank: free, torsion });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Connectivity {
    Finite(i64),
    AllVanishing,
}

impl Connectivity {
    pub fn at_least(&self, c: i64) -> bool {
        match self {
            Connectivity::AllVanishing => true,
            Connectivity::Finite(x) => *x >= c,
        }
    }
}

/// Largest `c` with `H̃_i = 0` for all `i ≤ c`. Homological only.
pub fn homological_connectivity(s: &SemiSimplicialSet) -> Result<Connectivity> {
    let h = reduced_homology(&boundary_from_sss(s, true))?;
    Ok(connectivity_of(&h))
}

pub fn connectivity_of(h: &[HomologyGroup]) -> Connectivity {
    match h.iter().find(|g| !g.is_zero()) {
        Some(g) => Connectivity::Finite(g.degree - 1),
        None => Connectivity::AllVanishing,
    }
}

pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityRow {
    pub n: usize,
    pub phi_floor: i64,
    pub required: i64,
    pub connectivity: Connectivity,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityVerdict {
    pub k: u32,
    pub a: i64,
    pub m: usize,
    pub rows: Vec<ConnectivityRow>,
    pub pass: bool,
}

/// Tests `H̃`-connectivity `≥ ⌊(n−a)/k⌋ − 1` for each member with `n ≥ m`.
pub fn check_graded_connectivity(family: &[(usize, SemiSimplicialSet)], k: u32, a: i64, m: usize) -> Result<ConnectivityVerdict> {
    if k == 0 {
        return Err(Error::InvalidQuery("slope k must be positive".into()));
    }
    let mut rows = Vec::new();
    for (n, s) in family.iter().filter(|(n, _)| *n >= m) {
        let phi_floor = floor_div(*n as i64 - a, k as i64);
        let required = phi_floor - 1;
        let connectivity = homological_connectivity(s)?;
        rows.push(ConnectivityRow { n: *n, phi_floor, required, connectivity, pass: connectivity.at_least(required) });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(ConnectivityVerdict { k, a, m, rows, pass })
}

/// Degree ↦ homology, for reports.
pub fn homology_map(h: &[HomologyGroup]) -> BTreeMap<i64, HomologyGroup> {
    h.iter().map(|g| (g.degree, g.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_snf(m: &IntegerMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let r = s.d.rows.min(s.d.cols);
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<BigInt> = (0..r).map(|i| s.d.get(i, i).clone()).collect();
        for w in diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero() && w[1].is_multiple_of(&w[0]), "chain broken: {:?}", diag);
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
        assert_eq!(invariant_factors(m), s.diagonal());
    }

    #[test]
    fn snf_examples() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&m);
        let z = IntegerMatrix::zeros(3, 2);
        assert!(smith_normal_form(&z).d.is_zero());
        check_snf(&z);
        let i = IntegerMatrix::identity(4);
        assert_eq!(smith_normal_form(&i).d, i);
        check_snf(&IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
    }

    #[test]
    fn snf_random_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let r = rng.gen_range(0..7);
            let c = rng.gen_range(0..7);
            let vals: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
            check_snf(&IntegerMatrix::from_i64(r, c, &vals));
        }
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(18));
        let s = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let m = IntegerMatrix::from_rows(&[vec![1, big, 0], vec![big, 1, 3], vec![0, 7, big]]);
        check_snf(&m);
    }

    #[test]
    fn empty_and_point() {
        let empty = SemiSimplicialSet::empty();
        let c = boundary_from_sss(&empty, false);
        assert_eq!(c.ranks.len(), 0);
        assert_eq!(homological_connectivity(&empty).unwrap(), Connectivity::Finite(-2));
        let point = SemiSimplicialSet::discrete(1);
        assert_eq!(homological_connectivity(&point).unwrap(), Connectivity::AllVanishing);
        let two = SemiSimplicialSet::discrete(2);
        assert_eq!(homological_connectivity(&two).unwrap(), Connectivity::Finite(-1));
    }

    #[test]
    fn floors_toward_negative_infinity() {
        assert_eq!(floor_div(-1, 2), -1);
        assert_eq!(floor_div(-3, 3), -1);
        assert_eq!(floor_div(-4, 3), -2);
        assert_eq!(floor_div(5, 2), 2);
    }
}
