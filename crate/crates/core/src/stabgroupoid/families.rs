//! Automorphism-group families: symmetric, braid, wreath, and table-driven toys.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::braid::{braid_equal, BraidWord};
use crate::error::{Error, Result};

/// The groups `Aut(n)` of a stabilized module together with stabilization
/// `s: Aut(n) → Aut(n+1)` and the images of braid words.
///
/// Products read left factor first. For finite groups, `Elem` equality is
/// group equality and `Ord` gives canonical coset representatives.
pub trait AutFamily: Send + Sync {
    type Elem: Clone + Debug + Eq + Ord + Hash + Send + Sync;

    fn name(&self) -> String;

    /// Largest degree the family is defined in, `None` if unbounded.
    fn max_degree(&self) -> Option<usize> {
        None
    }

    fn identity(&self, n: usize) -> Self::Elem;
    fn mul(&self, n: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, n: usize, a: &Self::Elem) -> Self::Elem;

    /// The equality oracle.
    fn same(&self, _n: usize, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn generators(&self, n: usize) -> Vec<Self::Elem>;
    fn stabilize(&self, n: usize, a: &Self::Elem) -> Self::Elem;

    /// Image of `1^offset ⊕ w ⊕ 1^rest` in `Aut(n)`.
    fn braid(&self, n: usize, offset: usize, w: &BraidWord) -> Result<Self::Elem>;

    /// All elements in ascending order, `None` when `Aut(n)` is infinite.
    fn elements(&self, n: usize) -> Option<Vec<Self::Elem>>;

    fn random_element(&self, n: usize, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn is_finite(&self, n: usize) -> bool {
        self.elements(n).is_some()
    }
}

fn check_braid_fits(n: usize, offset: usize, w: &BraidWord) -> Result<()> {
    if offset + w.strands() > n {
        return Err(Error::StrandMismatch { left: offset + w.strands(), right: n });
    }
    Ok(())
}

/// Symmetric groups; an element is the array `t ↦ a(t)` and `a·b = a∘b`.
#[derive(Clone, Debug, Default)]
pub struct SymmetricFamily;

pub type Perm = Vec<u8>;

pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut cur: Perm = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap_or(i);
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&t| a[t as usize]).collect()
}

fn invert(a: &[u8]) -> Perm {
    let mut out = vec![0; a.len()];
    for (t, &v) in a.iter().enumerate() {
        out[v as usize] = t as u8;
    }
    out
}

impl AutFamily for SymmetricFamily {
    type Elem = Perm;

    fn name(&self) -> String {
        "symmetric".into()
    }

    fn identity(&self, n: usize) -> Perm {
        (0..n as u8).collect()
    }

    fn mul(&self, _n: usize, a: &Perm, b: &Perm) -> Perm {
        compose(a, b)
    }

    fn inv(&self, _n: usize, a: &Perm) -> Perm {
        invert(a)
    }

    fn generators(&self, n: usize) -> Vec<Perm> {
        (0..n.saturating_sub(1))
            .map(|k| {
                let mut p = self.identity(n);
                p.swap(k, k + 1);
                p
            })
            .collect()
    }

    fn stabilize(&self, n: usize, a: &Perm) -> Perm {
        let mut p = a.clone();
        p.push(n as u8);
        p
    }

    fn braid(&self, n: usize, offset: usize, w: &BraidWord) -> Result<Perm> {
        check_braid_fits(n, offset, w)?;
        let mut acc = self.identity(n);
        for &l in w.letters() {
            let k = offset + l.unsigned_abs() as usize - 1;
            let mut t = self.identity(n);
            t.swap(k, k + 1);
            acc = compose(&acc, &t);
        }
        Ok(acc)
    }

    fn elements(&self, n: usize) -> Option<Vec<Perm>> {
        Some(all_permutations(n))
    }

    fn random_element(&self, n: usize, rng: &mut ChaCha8Rng) -> Perm {
        let mut p = self.identity(n);
        p.shuffle(rng);
        p
    }
}

/// Braid groups with the Artin-action equality oracle; infinite for `n ≥ 2`.
#[derive(Clone, Debug, Default)]
pub struct BraidFamily {
    /// Length of sampled random words.
    pub sample_length: usize,
}

impl AutFamily for BraidFamily {
    type Elem = BraidWord;

    fn name(&self) -> String {
        "braid".into()
    }

    fn identity(&self, n: usize) -> BraidWord {
        BraidWord::identity(n)
    }

    fn mul(&self, _n: usize, a: &BraidWord, b: &BraidWord) -> BraidWord {
        a.mul(b).expect("braid words in one degree")
    }

    fn inv(&self, _n: usize, a: &BraidWord) -> BraidWord {
        a.inverse()
    }

    fn same(&self, _n: usize, a: &BraidWord, b: &BraidWord) -> bool {
        braid_equal(a, b).unwrap_or(false)
    }

    fn generators(&self, n: usize) -> Vec<BraidWord> {
        (1..n).map(|i| BraidWord::new(n, vec![i as i32]).expect("generator in range")).collect()
    }

    fn stabilize(&self, _n: usize, a: &BraidWord) -> BraidWord {
        a.pad(1)
    }

    fn braid(&self, n: usize, offset: usize, w: &BraidWord) -> Result<BraidWord> {
        check_braid_fits(n, offset, w)?;
        w.shift(offset, n)
    }

    fn elements(&self, n: usize) -> Option<Vec<BraidWord>> {
        (n <= 1).then(|| vec![BraidWord::identity(n)])
    }

    fn random_element(&self, n: usize, rng: &mut ChaCha8Rng) -> BraidWord {
        let len = rng.gen_range(0..=self.sample_length.max(1));
        BraidWord::random(n, len, rng)
    }
}

/// A finite group given by its multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<u8>>,
    inverse: Vec<u8>,
}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<u8>>) -> Result<Self> {
        let inverse = check_group_table(&table)?;
        Ok(FiniteGroup { name: name.to_string(), table, inverse })
    }

    pub fn cyclic(k: usize) -> Self {
        let table = (0..k).map(|a| (0..k).map(|b| ((a + b) % k) as u8).collect()).collect();
        FiniteGroup::from_table(&format!("Z{}", k), table).expect("cyclic table")
    }

    pub fn klein() -> Self {
        let table = (0..4u8).map(|a| (0..4u8).map(|b| a ^ b).collect()).collect();
        FiniteGroup::from_table("Z2xZ2", table).expect("klein table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.table[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inverse[a as usize]
    }
}

/// Checks identity 0, Latin square and associativity; returns inverses.
fn check_group_table<T: Copy + Into<usize> + PartialEq>(table: &[Vec<T>]) -> Result<Vec<T>> {
    let k = table.len();
    let bad = |msg: String| Err(Error::Parse(msg));
    if k == 0 {
        return bad("empty group table".into());
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != k {
            return bad(format!("row {} has length {}", a, row.len()));
        }
        if row.iter().any(|&x| x.into() >= k) {
            return bad(format!("row {} has an entry out of range", a));
        }
        if row[0].into() != a || table[0][a].into() != a {
            return bad(format!("element 0 is not an identity at {}", a));
        }
    }
    let mut inverse = Vec::with_capacity(k);
    for a in 0..k {
        let Some(b) = (0..k).find(|&b| table[a][b].into() == 0) else {
            return bad(format!("element {} has no inverse", a));
        };
        inverse.push(table[0][b]);
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let ab = table[a][b].into();
                let bc = table[b][c].into();
                if table[ab][c] != table[a][bc] {
                    return bad(format!("not associative at ({}, {}, {})", a, b, c));
                }
            }
        }
    }
    Ok(inverse)
}

/// `G ≀ Σ_n` acting on labeled positions `(t, x) ↦ (π(t), c_t·x)`.
#[derive(Clone, Debug)]
pub struct WreathFamily {
    group: FiniteGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElem {
    pub perm: Perm,
    pub labels: Vec<u8>,
}

impl WreathFamily {
    pub fn new(group: FiniteGroup) -> Self {
        WreathFamily { group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl AutFamily for WreathFamily {
    type Elem = WreathElem;

    fn name(&self) -> String {
        format!("wreath-{}", self.group.name())
    }

    fn identity(&self, n: usize) -> WreathElem {
        WreathElem { perm: (0..n as u8).collect(), labels: vec![0; n] }
    }

    fn mul(&self, _n: usize, a: &WreathElem, b: &WreathElem) -> WreathElem {
        let perm = compose(&a.perm, &b.perm);
        let labels = (0..b.perm.len())
            .map(|t| self.group.mul(a.labels[b.perm[t] as usize], b.labels[t]))
            .collect();
        WreathElem { perm, labels }
    }

    fn inv(&self, _n: usize, a: &WreathElem) -> WreathElem {
        let perm = invert(&a.perm);
        let labels = perm.iter().map(|&s| self.group.inv(a.labels[s as usize])).collect();
        WreathElem { perm, labels }
    }

    fn generators(&self, n: usize) -> Vec<WreathElem> {
        let mut gens: Vec<WreathElem> = SymmetricFamily
            .generators(n)
            .into_iter()
            .map(|perm| WreathElem { perm, labels: vec![0; n] })
            .collect();
        if n > 0 {
            for g in 1..self.group.order() as u8 {
                let mut e = self.identity(n);
                e.labels[0] = g;
                gens.push(e);
            }
        }
        gens
    }

    fn stabilize(&self, n: usize, a: &WreathElem) -> WreathElem {
        let mut e = a.clone();
        e.perm.push(n as u8);
        e.labels.push(0);
        e
    }

    fn braid(&self, n: usize, offset: usize, w: &BraidWord) -> Result<WreathElem> {
        let perm = SymmetricFamily.braid(n, offset, w)?;
        Ok(WreathElem { perm, labels: vec![0; n] })
    }

    fn elements(&self, n: usize) -> Option<Vec<WreathElem>> {
        let k = self.group.order();
        let perms = all_permutations(n);
        let count = k.checked_pow(n as u32)?;
        let mut out = Vec::with_capacity(perms.len() * count);
        for perm in perms {
            for code in 0..count {
                let mut labels = vec![0u8; n];
                let mut c = code;
                for slot in labels.iter_mut().rev() {
                    *slot = (c % k) as u8;
                    c /= k;
                }
                out.push(WreathElem { perm: perm.clone(), labels });
            }
        }
        Some(out)
    }

    fn random_element(&self, n: usize, rng: &mut ChaCha8Rng) -> WreathElem {
        let perm = SymmetricFamily.random_element(n, rng);
        let labels = (0..n).map(|_| rng.gen_range(0..self.group.order()) as u8).collect();
        WreathElem { perm, labels }
    }
}

/// One degree of a table-driven family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableGroup {
    pub mul: Vec<Vec<usize>>,
    /// Stabilization into the next degree; empty in the top degree.
    pub stab: Vec<usize>,
    /// Images of `σ_1 .. σ_{n−1}`.
    pub sigma: Vec<usize>,
}

/// A finite toy family given degree by degree.
#[derive(Clone, Debug)]
pub struct TableFamily {
    name: String,
    degrees: Vec<TableGroup>,
    inverses: Vec<Vec<usize>>,
}

impl TableFamily {
    pub fn new(name: &str, degrees: Vec<TableGroup>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(degrees.len());
        for (n, g) in degrees.iter().enumerate() {
            let inv = check_group_table(&g.mul).map_err(|e| Error::Parse(format!("degree {}: {}", n, e)))?;
            inverses.push(inv);
            if g.sigma.len() != n.saturating_sub(1) {
                return Err(Error::Parse(format!("degree {} needs {} sigma images", n, n.saturating_sub(1))));
            }
            if g.sigma.iter().any(|&s| s >= g.mul.len()) {
                return Err(Error::Parse(format!("degree {}: sigma image out of range", n)));
            }
        }
        for n in 0..degrees.len() {
            let g = &degrees[n];
            if n + 1 == degrees.len() {
                if !g.stab.is_empty() {
                    return Err(Error::Parse(format!("top degree {} cannot stabilize", n)));
                }
                continue;
            }
            let h = &degrees[n + 1];
            if g.stab.len() != g.mul.len() || g.stab.iter().any(|&x| x >= h.mul.len()) {
                return Err(Error::Parse(format!("degree {}: stabilization map malformed", n)));
            }
            for a in 0..g.mul.len() {
                for b in 0..g.mul.len() {
                    if g.stab[g.mul[a][b]] != h.mul[g.stab[a]][g.stab[b]] {
                        return Err(Error::Parse(format!("degree {}: stabilization is not a homomorphism", n)));
                    }
                }
            }
        }
        Ok(TableFamily { name: name.to_string(), degrees, inverses })
    }

    pub fn degrees(&self) -> &[TableGroup] {
        &self.degrees
    }

    /// Trivial groups except `Aut(1) = ℤ/2`, which dies in `Aut(2)`.
    pub fn broken_injectivity() -> Self {
        let trivial = |sigmas: usize, stab: Vec<usize>| TableGroup { mul: vec![vec![0]], stab, sigma: vec![0; sigmas] };
        let degrees = vec![
            trivial(0, vec![0]),
            TableGroup { mul: vec![vec![0, 1], vec![1, 0]], stab: vec![0, 0], sigma: vec![] },
            trivial(1, vec![0]),
            trivial(2, vec![]),
        ];
        TableFamily::new("broken", degrees).expect("broken preset")
    }

    /// Trivial automorphism groups in degrees `0..=top`.
    pub fn trivial(top: usize) -> Self {
        let degrees = (0..=top)
            .map(|n| TableGroup {
                mul: vec![vec![0]],
                stab: if n == top { vec![] } else { vec![0] },
                sigma: vec![0; n.saturating_sub(1)],
            })
            .collect();
        TableFamily::new("trivial", degrees).expect("trivial preset")
    }
}

impl AutFamily for TableFamily {
    type Elem = usize;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn max_degree(&self) -> Option<usize> {
        Some(self.degrees.len() - 1)
    }

    fn identity(&self, _n: usize) -> usize {
        0
    }

    fn mul(&self, n: usize, a: &usize, b: &usize) -> usize {
        self.degrees[n].mul[*a][*b]
    }

    fn inv(&self, n: usize, a: &usize) -> usize {
        self.inverses[n][*a]
    }

    fn generators(&self, n: usize) -> Vec<usize> {
        (1..self.degrees[n].mul.len()).collect()
    }

    fn stabilize(&self, n: usize, a: &usize) -> usize {
        self.degrees[n].stab[*a]
    }

    fn braid(&self, n: usize, offset: usize, w: &BraidWord) -> Result<usize> {
        check_braid_fits(n, offset, w)?;
        let g = self.degrees.get(n).ok_or_else(|| Error::IndexOutOfRange(format!("degree {} not in table", n)))?;
        let mut acc = 0;
        for &l in w.letters() {
            let s = g.sigma[offset + l.unsigned_abs() as usize - 1];
            let s = if l > 0 { s } else { self.inverses[n][s] };
            acc = g.mul[acc][s];
        }
        Ok(acc)
    }

    fn elements(&self, n: usize) -> Option<Vec<usize>> {
        self.degrees.get(n).map(|g| (0..g.mul.len()).collect())
    }

    fn random_element(&self, n: usize, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.degrees[n].mul.len())
    }
}

/// Index of every element of `Aut(n)`, for finite families.
pub fn element_index<F: AutFamily>(family: &F, n: usize) -> Option<HashMap<F::Elem, usize>> {
    Some(family.elements(n)?.into_iter().enumerate().map(|(i, e)| (e, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::permutation_of;
    use rand::SeedableRng;

    #[test]
    fn permutations_lexicographic() {
        let all = all_permutations(3);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(0), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn symmetric_image_is_start_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let w = BraidWord::random(5, 7, &mut rng);
            let img = SymmetricFamily.braid(5, 0, &w).unwrap();
            let start = permutation_of(&w).inverse();
            let expect: Vec<u8> = start.as_slice0().iter().map(|&v| v as u8).collect();
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn wreath_group_laws() {
        let f = WreathFamily::new(FiniteGroup::cyclic(3));
        let els = f.elements(2).unwrap();
        assert_eq!(els.len(), 18);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let a = f.random_element(3, &mut rng);
            let b = f.random_element(3, &mut rng);
            let c = f.random_element(3, &mut rng);
            assert_eq!(f.mul(3, &f.mul(3, &a, &b), &c), f.mul(3, &a, &f.mul(3, &b, &c)));
            assert_eq!(f.mul(3, &a, &f.inv(3, &a)), f.identity(3));
            assert_eq!(f.mul(3, &f.inv(3, &a), &a), f.identity(3));
            let sab = f.stabilize(3, &f.mul(3, &a, &b));
            assert_eq!(sab, f.mul(4, &f.stabilize(3, &a), &f.stabilize(3, &b)));
        }
    }

    #[test]
    fn group_tables() {
        assert_eq!(FiniteGroup::klein().order(), 4);
        assert_eq!(FiniteGroup::cyclic(4).inv(1), 3);
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("bad", vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn table_family_validation() {
        let f = TableFamily::broken_injectivity();
        assert_eq!(f.max_degree(), Some(3));
        assert_eq!(f.stabilize(1, &1), 0);
        let bad = TableGroup { mul: vec![vec![0]], stab: vec![5], sigma: vec![] };
        assert!(TableFamily::new("x", vec![bad, TableGroup { mul: vec![vec![0]], stab: vec![], sigma: vec![] }]).is_err());
    }

    #[test]
    fn braid_family_oracle() {
        let f = BraidFamily { sample_length: 6 };
        let a = BraidWord::new(3, vec![1, 2, 1]).unwrap();
        let b = BraidWord::new(3, vec![2, 1, 2]).unwrap();
        assert!(f.same(3, &a, &b));
        assert!(!f.is_finite(3));
        assert!(f.is_finite(1));
        assert_eq!(f.braid(4, 2, &BraidWord::new(2, vec![-1]).unwrap()).unwrap().letters(), &[-3]);
    }
}
