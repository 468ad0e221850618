//! Semi-simplicial sets of destabilizations.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::block_braiding;
use crate::error::{Error, Result};
use crate::stabgroupoid::AutFamily;

/// Finite semi-simplicial set with face tables `faces[p][i][idx]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiSimplicialSet {
    degrees: Vec<usize>,
    simplices: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialSet {
    pub fn empty() -> Self {
        SemiSimplicialSet { degrees: Vec::new(), simplices: Vec::new(), faces: Vec::new() }
    }

    /// `k` vertices and nothing else.
    pub fn discrete(k: usize) -> Self {
        SemiSimplicialSet {
            degrees: vec![0],
            simplices: vec![(0..k).map(|v| v.to_string()).collect()],
            faces: vec![vec![]],
        }
    }

    /// Validates shapes and indices; `faces[p]` must hold `p+1` tables for `p ≥ 1`.
    pub fn from_parts(simplices: Vec<Vec<String>>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if simplices.len() != faces.len() {
            return Err(Error::DegreeMismatch("one face list per degree required".into()));
        }
        for (p, fp) in faces.iter().enumerate() {
            let expect = if p == 0 { 0 } else { p + 1 };
            if fp.len() != expect {
                return Err(Error::DegreeMismatch(format!("degree {} has {} face maps, expected {}", p, fp.len(), expect)));
            }
            for (i, table) in fp.iter().enumerate() {
                if table.len() != simplices[p].len() {
                    return Err(Error::IndexOutOfRange(format!("face d_{} in degree {} has wrong length", i, p)));
                }
                if let Some(bad) = table.iter().find(|&&x| x >= simplices[p - 1].len()) {
                    return Err(Error::IndexOutOfRange(format!("face d_{} in degree {} hits {}", i, p, bad)));
                }
            }
        }
        let degrees = (0..simplices.len()).collect();
        Ok(SemiSimplicialSet { degrees, simplices, faces })
    }

    /// Top degree, `None` when empty.
    pub fn top_degree(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, p: usize) -> &[String] {
        &self.simplices[p]
    }

    pub fn face_table(&self, p: usize, i: usize) -> &[usize] {
        &self.faces[p][i]
    }

    pub fn face(&self, p: usize, i: usize, idx: usize) -> Result<usize> {
        if p == 0 {
            return Err(Error::IndexOutOfRange("vertices have no faces".into()));
        }
        if p >= self.simplices.len() || i > p || idx >= self.simplices[p].len() {
            return Err(Error::IndexOutOfRange(format!("face d_{} of simplex {} in degree {}", i, idx, p)));
        }
        Ok(self.faces[p][i][idx])
    }

    /// First `(p, i, j, idx)` with `d_i d_j ≠ d_{j−1} d_i`, `i < j`.
    pub fn face_relation_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for p in 2..self.simplices.len() {
            for j in 1..=p {
                for i in 0..j {
                    for idx in 0..self.simplices[p].len() {
                        let a = self.faces[p - 1][i][self.faces[p][j][idx]];
                        let b = self.faces[p - 1][j - 1][self.faces[p][i][idx]];
                        if a != b {
                            return Some((p, i, j, idx));
                        }
                    }
                }
            }
        }
        None
    }

    /// Relabel simplices: new index of old simplex `k` in degree `p` is
    /// `perms[p][k]`.
    pub fn relabeled(&self, perms: &[Vec<usize>]) -> SemiSimplicialSet {
        let mut simplices = self.simplices.clone();
        for (p, perm) in perms.iter().enumerate() {
            for (old, &new) in perm.iter().enumerate() {
                simplices[p][new] = self.simplices[p][old].clone();
            }
        }
        let mut faces = self.faces.clone();
        for p in 1..self.faces.len() {
            for i in 0..=p {
                for (old, &new) in perms[p].iter().enumerate() {
                    faces[p][i][new] = perms[p - 1][self.faces[p][i][old]];
                }
            }
        }
        SemiSimplicialSet { degrees: self.degrees.clone(), simplices, faces }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepChoice {
    /// Least element of each coset.
    Canonical,
    /// A pseudo-random element of each coset; labels become `#k`.
    Shuffled(u64),
}

/// `W^RW_•` of the degree-`n` object, up to `p_max` (default `n − 1`).
pub fn build_wrw<F: AutFamily>(family: &F, n: usize, p_max: Option<usize>) -> Result<SemiSimplicialSet> {
    build_wrw_with(family, n, p_max, RepChoice::Canonical)
}

pub fn build_wrw_with<F: AutFamily>(family: &F, n: usize, p_max: Option<usize>, choice: RepChoice) -> Result<SemiSimplicialSet> {
    if n == 0 {
        return Ok(SemiSimplicialSet::empty());
    }
    let top = p_max.unwrap_or(n - 1);
    if top >= n {
        return Err(Error::IndexOutOfRange(format!("p_max {} needs objects below degree 0 at n = {}", top, n)));
    }
    if family.max_degree().is_some_and(|m| m < n) {
        return Err(Error::IndexOutOfRange(format!("degree {} beyond the family", n)));
    }
    let group = family.elements(n).ok_or(Error::InfiniteCoset { degree: n })?;
    let mut rng = match choice {
        RepChoice::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        RepChoice::Canonical => None,
    };

    let mut levels: Vec<HashMap<F::Elem, usize>> = Vec::with_capacity(top + 1);
    let mut reps: Vec<Vec<F::Elem>> = Vec::with_capacity(top + 1);
    let mut simplices = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let m = n - p - 1;
        let sub = family.elements(m).ok_or(Error::InfiniteCoset { degree: m })?;
        let h: Vec<F::Elem> = sub
            .iter()
            .map(|g| {
                let mut x = g.clone();
                for d in m..n {
                    x = family.stabilize(d, &x);
                }
                x
            })
            .collect();
        let mut index = HashMap::with_capacity(group.len());
        let mut level_reps = Vec::new();
        for g in &group {
            if index.contains_key(g) {
                continue;
            }
            let mut coset: Vec<F::Elem> = h.iter().map(|x| family.mul(n, g, x)).collect();
            coset.sort();
            let k = level_reps.len();
            for x in &coset {
                index.insert(x.clone(), k);
            }
            let rep = match rng.as_mut() {
                Some(r) => coset.choose(r).expect("cosets are nonempty").clone(),
                None => coset[0].clone(),
            };
            level_reps.push(rep);
        }
        simplices.push(match choice {
            RepChoice::Canonical => level_reps.iter().map(|r| format!("{:?}", r)).collect(),
            RepChoice::Shuffled(_) => (0..level_reps.len()).map(|k| format!("#{}", k)).collect::<Vec<_>>(),
        });
        levels.push(index);
        reps.push(level_reps);
    }

    let mut faces = vec![Vec::new()];
    for p in 1..=top {
        let m = n - p - 1;
        let mut fp = Vec::with_capacity(p + 1);
        for i in 0..=p {
            let b = family.braid(n, m, &block_braiding(i, 1).inverse())?;
            let table = reps[p]
                .iter()
                .map(|f| {
                    let g = family.mul(n, f, &b);
                    levels[p - 1]
                        .get(&g)
                        .copied()
                        .ok_or_else(|| Error::Internal(format!("face lands outside degree {}", p - 1)))
                })
                .collect::<Result<Vec<usize>>>()?;
            fp.push(table);
        }
        faces.push(fp);
    }
    SemiSimplicialSet::from_parts(simplices, faces)
}

/// Face of a representative recomputed from the coset formula.
pub fn face_from_scratch<F: AutFamily>(family: &F, n: usize, p: usize, i: usize, f: &F::Elem) -> Result<F::Elem> {
    if p == 0 || p >= n || i > p {
        return Err(Error::IndexOutOfRange(format!("face d_{} in degree {} at n = {}", i, p, n)));
    }
    let b = family.braid(n, n - p - 1, &block_braiding(i, 1).inverse())?;
    Ok(family.mul(n, f, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabgroupoid::{BraidFamily, FiniteGroup, SymmetricFamily, WreathFamily};

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn symmetric_counts() {
        let s = build_wrw(&SymmetricFamily, 3, Some(2)).unwrap();
        assert_eq!(s.counts(), vec![3, 6, 6]);
        let one = build_wrw(&SymmetricFamily, 1, None).unwrap();
        assert_eq!(one.counts(), vec![1]);
        for n in 1..=6 {
            let s = build_wrw(&SymmetricFamily, n, None).unwrap();
            for p in 0..n {
                assert_eq!(s.count(p), fact(n) / fact(n - p - 1));
            }
        }
    }

    fn parse_rep(label: &str) -> Vec<u8> {
        label
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().unwrap())
            .collect()
    }

    #[test]
    fn symmetric_faces_delete_letters() {
        let n = 4;
        let s = build_wrw(&SymmetricFamily, n, None).unwrap();
        let word = |p: usize, idx: usize| parse_rep(&s.labels(p)[idx])[n - p - 1..].to_vec();
        for p in 1..n {
            for i in 0..=p {
                for idx in 0..s.count(p) {
                    let mut d = word(p, idx);
                    d.remove(i);
                    assert_eq!(word(p - 1, s.face(p, i, idx).unwrap()), d);
                }
            }
        }
    }

    #[test]
    fn n2_faces_cover_vertices() {
        let s = build_wrw(&SymmetricFamily, 2, None).unwrap();
        let mut hit = vec![false; 2];
        for idx in 0..2 {
            for i in 0..2 {
                hit[s.face(1, i, idx).unwrap()] = true;
            }
            assert_ne!(s.face(1, 0, idx).unwrap(), s.face(1, 1, idx).unwrap());
        }
        assert!(hit.iter().all(|&x| x));
        assert!(s.face(0, 0, 0).is_err());
        assert!(s.face(1, 2, 0).is_err());
    }

    #[test]
    fn wreath_vertex_count() {
        let s = build_wrw(&WreathFamily::new(FiniteGroup::cyclic(2)), 2, Some(0)).unwrap();
        assert_eq!(s.counts(), vec![4]);
    }

    #[test]
    fn braid_is_infinite() {
        let e = build_wrw(&BraidFamily::default(), 3, None).unwrap_err();
        assert_eq!(e, Error::InfiniteCoset { degree: 3 });
    }

    #[test]
    fn face_relations_hold() {
        for n in 1..=5 {
            let s = build_wrw(&SymmetricFamily, n, None).unwrap();
            assert_eq!(s.face_relation_violation(), None, "n = {}", n);
        }
        let w = build_wrw(&WreathFamily::new(FiniteGroup::cyclic(3)), 3, None).unwrap();
        assert_eq!(w.face_relation_violation(), None);
    }

    #[test]
    fn bad_parts_rejected() {
        let simplices = vec![vec!["a".to_string()], vec!["e".to_string()]];
        assert!(SemiSimplicialSet::from_parts(simplices.clone(), vec![vec![], vec![vec![0], vec![1]]]).is_err());
        assert!(SemiSimplicialSet::from_parts(simplices, vec![vec![], vec![vec![0]]]).is_err());
    }
}
