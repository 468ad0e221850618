//! Morphisms of the braid category `UB` and the functor to injections.

use std::fmt;

use serde::Serialize;

use crate::braid::{block_braiding, parabolic_coset_equal, permutation_of, BraidWord};
use crate::error::{Error, Result};

/// A morphism `[q] → [p]`: the coset `b·B_{p−q}` of a braid `b ∈ B_{p+1}`.
#[derive(Clone, Debug)]
pub struct UBMorphism {
    source: usize,
    target: usize,
    rep: BraidWord,
}

impl UBMorphism {
    pub fn new(source: usize, target: usize, rep: BraidWord) -> Result<Self> {
        if source > target {
            return Err(Error::DegreeMismatch(format!("no morphism [{}] -> [{}]", source, target)));
        }
        if rep.strands() != target + 1 {
            return Err(Error::StrandMismatch { left: rep.strands(), right: target + 1 });
        }
        Ok(UBMorphism { source, target, rep })
    }

    pub fn identity(q: usize) -> Self {
        UBMorphism { source: q, target: q, rep: BraidWord::identity(q + 1) }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn representative(&self) -> &BraidWord {
        &self.rep
    }

    /// Size of the parabolic the coset is taken over.
    pub fn parabolic(&self) -> usize {
        self.target - self.source
    }

    pub fn coset_equal(&self, other: &UBMorphism) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DegreeMismatch(format!(
                "comparing [{}]->[{}] with [{}]->[{}]",
                self.source, self.target, other.source, other.target
            )));
        }
        parabolic_coset_equal(&self.rep, &other.rep, self.target + 1, self.parabolic())
    }
}

impl fmt::Display for UBMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] {}", self.source, self.target, self.rep)
    }
}

/// `f: [l]→[q]` then `g: [q]→[p]`, represented by `b'·(1^{p−q} ⊕ b)`.
pub fn ub_compose(f: &UBMorphism, g: &UBMorphism) -> Result<UBMorphism> {
    if f.target != g.source {
        return Err(Error::DegreeMismatch(format!(
            "cannot compose [{}]->[{}] with [{}]->[{}]",
            f.source, f.target, g.source, g.target
        )));
    }
    let shifted = f.rep.shift(g.target - g.source, g.target + 1)?;
    let rep = g.rep.mul(&shifted)?;
    Ok(UBMorphism { source: f.source, target: g.target, rep })
}

/// A partially defined injection `{0..source} ⇀ {0..target}` (0-indexed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PartialInjection {
    pub source: usize,
    pub target: usize,
    pub map: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn new(target: usize, map: Vec<Option<usize>>) -> Result<Self> {
        let mut seen = vec![false; target];
        for v in map.iter().flatten() {
            if *v >= target || seen[*v] {
                return Err(Error::IndexOutOfRange(format!("not an injection into {}: {:?}", target, map)));
            }
            seen[*v] = true;
        }
        Ok(PartialInjection { source: map.len(), target, map })
    }

    pub fn total(target: usize, map: &[usize]) -> Result<Self> {
        PartialInjection::new(target, map.iter().map(|&v| Some(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        PartialInjection { source: n, target: n, map: (0..n).map(Some).collect() }
    }

    /// The order-preserving injection `{0..p−1} → {0..p}` missing `i`.
    pub fn coface(p: usize, i: usize) -> Self {
        let map = (0..p).map(|s| Some(if s < i { s } else { s + 1 })).collect();
        PartialInjection { source: p, target: p + 1, map }
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn apply(&self, s: usize) -> Option<usize> {
        self.map.get(s).copied().flatten()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &PartialInjection) -> Result<PartialInjection> {
        if self.target != other.source {
            return Err(Error::DegreeMismatch(format!("injection targets {} but next starts at {}", self.target, other.source)));
        }
        let map = self.map.iter().map(|v| v.and_then(|x| other.apply(x))).collect();
        Ok(PartialInjection { source: self.source, target: other.target, map })
    }
}

/// Follow the last `q+1` strands back to where they start.
pub fn ub_to_fi(f: &UBMorphism) -> PartialInjection {
    let start = permutation_of(&f.rep).inverse();
    let off = f.parabolic();
    let map = (0..=f.source).map(|s| Some(start.as_slice0()[off + s])).collect();
    PartialInjection { source: f.source + 1, target: f.target + 1, map }
}

/// The class of `β_{i,1}⁻¹ ⊕ 1^{p−i}` as a morphism `[p−1] → [p]`.
pub fn delta_section(p: usize, i: usize) -> Result<UBMorphism> {
    if p == 0 || i > p {
        return Err(Error::IndexOutOfRange(format!("coface {} of degree {}", i, p)));
    }
    let rep = block_braiding(i, 1).inverse().pad(p - i);
    Ok(UBMorphism { source: p - 1, target: p, rep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = UBMorphism::new(0, 2, bw(3, &[1])).unwrap();
        let g = UBMorphism::new(2, 4, BraidWord::identity(5)).unwrap();
        let h = ub_compose(&f, &g).unwrap();
        assert_eq!(h.representative().letters(), &[3]);
        let id = UBMorphism::identity(2);
        assert!(ub_compose(&f, &id).unwrap().coset_equal(&f).unwrap());
        assert!(ub_compose(&UBMorphism::identity(0), &f).unwrap().coset_equal(&f).unwrap());
        assert!(ub_compose(&g, &f).is_err());
    }

    #[test]
    fn fi_examples() {
        assert_eq!(ub_to_fi(&UBMorphism::identity(3)), PartialInjection::identity(4));
        let swap = UBMorphism::new(1, 1, bw(2, &[1])).unwrap();
        assert_eq!(ub_to_fi(&swap).map, vec![Some(1), Some(0)]);
        let e = UBMorphism::new(0, 1, BraidWord::identity(2)).unwrap();
        assert_eq!(ub_to_fi(&e).map, vec![Some(1)]);
    }

    #[test]
    fn delta_examples() {
        let d0 = delta_section(1, 0).unwrap();
        assert!(d0.representative().is_empty());
        assert_eq!(ub_to_fi(&d0), PartialInjection::coface(1, 0));
        let d1 = delta_section(1, 1).unwrap();
        assert_eq!(d1.representative().letters(), &[-1]);
        assert_eq!(ub_to_fi(&d1), PartialInjection::coface(1, 1));
        assert!(delta_section(2, 3).is_err());
    }

    #[test]
    fn partial_injection_checks() {
        assert!(PartialInjection::total(2, &[0, 0]).is_err());
        assert!(PartialInjection::total(2, &[2]).is_err());
        let p = PartialInjection::new(3, vec![Some(2), None]).unwrap();
        assert!(!p.is_total());
        let q = PartialInjection::total(4, &[3, 1, 0]).unwrap();
        assert_eq!(p.then(&q).unwrap().map, vec![Some(0), None]);
    }
}
