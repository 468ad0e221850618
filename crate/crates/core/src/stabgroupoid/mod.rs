//! Stabilized modules over braided groupoids: automorphism families, object
//! tables, genus, and the injectivity and cancellation conditions.

mod descriptor;
mod families;
mod ub;

pub use descriptor::{parse_descriptor, AnyFamily, ModuleDescriptor, PRESETS};
pub use families::{
    all_permutations, element_index, AutFamily, BraidFamily, FiniteGroup, Perm, SymmetricFamily, TableFamily,
    TableGroup, WreathElem, WreathFamily,
};
pub use ub::{delta_section, ub_compose, ub_to_fi, PartialInjection, UBMorphism};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Grade {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Object {
    pub name: String,
    pub grade: Grade,
    /// `A ⊕ X`, when it lies in the table.
    pub plus_x: Option<usize>,
}

/// Isomorphism classes of objects; distinct entries are non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectTable {
    objects: Vec<Object>,
}

impl ObjectTable {
    pub fn new(objects: Vec<Object>) -> Result<Self> {
        for (i, o) in objects.iter().enumerate() {
            if let Some(j) = o.plus_x {
                let Some(t) = objects.get(j) else {
                    return Err(Error::IndexOutOfRange(format!("object {} stabilizes to missing {}", o.name, j)));
                };
                let ok = match (o.grade, t.grade) {
                    (Grade::Finite(a), Grade::Finite(b)) => b == a + 1,
                    (Grade::Infinite, Grade::Infinite) => true,
                    _ => false,
                };
                if !ok {
                    return Err(Error::DegreeMismatch(format!(
                        "grading not additive at {} -> {}",
                        objects[i].name, t.name
                    )));
                }
            }
        }
        Ok(ObjectTable { objects })
    }

    /// Objects `0..=window`, one per degree.
    pub fn one_per_degree(window: usize) -> Self {
        let objects = (0..=window)
            .map(|n| Object {
                name: n.to_string(),
                grade: Grade::Finite(n as u32),
                plus_x: (n < window).then_some(n + 1),
            })
            .collect();
        ObjectTable { objects }
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn grade(&self, a: usize) -> Grade {
        self.objects[a].grade
    }

    pub fn plus_x(&self, a: usize) -> Option<usize> {
        self.objects[a].plus_x
    }

    /// `A ⊕ X^k`, if it stays in the table.
    pub fn plus_x_pow(&self, a: usize, k: usize) -> Option<usize> {
        let mut cur = a;
        for _ in 0..k {
            cur = self.objects[cur].plus_x?;
        }
        Some(cur)
    }

    fn check(&self, a: usize) -> Result<()> {
        if a >= self.objects.len() {
            return Err(Error::IndexOutOfRange(format!("object {} of {}", a, self.objects.len())));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum GenusValue {
    Finite(u32),
    /// The search reached its bound.
    AtLeast(u32),
    Infinite,
}

/// Largest `k ≤ bound` with some `B ⊕ X^k ≅ A`; `AtLeast(bound)` when
/// `k = bound + 1` would also succeed.
pub fn genus(objects: &ObjectTable, a: usize, bound: u32) -> Result<GenusValue> {
    objects.check(a)?;
    if objects.grade(a) == Grade::Infinite {
        return Ok(GenusValue::Infinite);
    }
    for k in (0..=bound).rev() {
        let hit = (0..objects.len()).any(|b| objects.plus_x_pow(b, k as usize) == Some(a));
        if hit {
            let more = k == bound && (0..objects.len()).any(|b| objects.plus_x_pow(b, k as usize + 1) == Some(a));
            return Ok(if more { GenusValue::AtLeast(k) } else { GenusValue::Finite(k) });
        }
    }
    Err(Error::Internal("genus search found nothing at k = 0".into()))
}

/// `sup_k genus(A ⊕ X^k) − k` over `k ≤ bound` with `A ⊕ X^k` in the table.
///
/// Each genus is searched up to `bound + k` so that saturation means the same
/// thing at every `k`.
pub fn stable_genus(objects: &ObjectTable, a: usize, bound: u32) -> Result<GenusValue> {
    objects.check(a)?;
    if objects.grade(a) == Grade::Infinite {
        return Ok(GenusValue::Infinite);
    }
    let mut best: Option<GenusValue> = None;
    for k in 0..=bound {
        let Some(ak) = objects.plus_x_pow(a, k as usize) else { break };
        let v = match genus(objects, ak, bound + k)? {
            GenusValue::Finite(g) => GenusValue::Finite(g - k),
            GenusValue::AtLeast(g) => GenusValue::AtLeast(g - k),
            GenusValue::Infinite => GenusValue::Infinite,
        };
        best = Some(match (best, v) {
            (None, v) => v,
            (Some(GenusValue::Infinite), _) | (_, GenusValue::Infinite) => GenusValue::Infinite,
            (Some(x), y) => {
                let (gx, gy) = (genus_number(x), genus_number(y));
                let sat = matches!(x, GenusValue::AtLeast(_)) || matches!(y, GenusValue::AtLeast(_));
                let g = gx.max(gy);
                if sat {
                    GenusValue::AtLeast(g)
                } else {
                    GenusValue::Finite(g)
                }
            }
        });
    }
    best.ok_or_else(|| Error::Internal("stable genus over an empty range".into()))
}

fn genus_number(g: GenusValue) -> u32 {
    match g {
        GenusValue::Finite(x) | GenusValue::AtLeast(x) => x,
        GenusValue::Infinite => u32::MAX,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityRow {
    pub degree: usize,
    pub mode: CheckMode,
    pub checked: usize,
    pub injective: bool,
    /// Debug rendering of a nontrivial element in the kernel.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub family: String,
    pub rows: Vec<InjectivityRow>,
    pub injective: bool,
    pub exact: bool,
}

/// Tests `s: Aut(n) → Aut(n+1)` for `n < n_max`: exactly on finite groups,
/// by `sample_budget` random elements otherwise.
pub fn check_injectivity<F: AutFamily>(family: &F, n_max: usize, sample_budget: usize, seed: u64) -> InjectivityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = family.max_degree().map_or(n_max, |m| m.min(n_max));
    let mut rows = Vec::new();
    for n in 0..top {
        let id_next = family.identity(n + 1);
        let id = family.identity(n);
        let in_kernel = |g: &F::Elem| family.same(n + 1, &family.stabilize(n, g), &id_next) && !family.same(n, g, &id);
        let (mode, checked, witness) = match family.elements(n) {
            Some(els) => {
                let w = els.iter().find(|g| in_kernel(g));
                (CheckMode::Exact, els.len(), w.map(|g| format!("{:?}", g)))
            }
            None => {
                let mut witness = None;
                for s in 0..sample_budget {
                    let mut g = family.random_element(n, &mut rng);
                    if s % 4 == 3 {
                        // a nontrivial-looking word for the identity
                        let h = family.random_element(n, &mut rng);
                        g = family.mul(n, &family.mul(n, &h, &g), &family.inv(n, &h));
                        g = family.mul(n, &g, &family.inv(n, &g));
                    }
                    if in_kernel(&g) {
                        witness = Some(format!("{:?}", g));
                        break;
                    }
                }
                (CheckMode::Sampled, sample_budget, witness)
            }
        };
        rows.push(InjectivityRow { degree: n, mode, checked, injective: witness.is_none(), witness });
    }
    let injective = rows.iter().all(|r| r.injective);
    let exact = rows.iter().all(|r| r.mode == CheckMode::Exact);
    InjectivityReport { family: family.name(), rows, injective, exact }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationFailure {
    pub y: String,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationReport {
    pub object: String,
    pub checked: usize,
    pub holds: bool,
    pub failure: Option<CancellationFailure>,
}

/// `Y ⊕ X^m ≅ A ⊕ X^n ⟹ Y ≅ A ⊕ X^{n−m}` for `1 ≤ m ≤ n ≤ n_max`.
pub fn check_local_cancellation(objects: &ObjectTable, a: usize, n_max: usize) -> Result<CancellationReport> {
    objects.check(a)?;
    let mut checked = 0;
    for n in 1..=n_max {
        let Some(an) = objects.plus_x_pow(a, n) else { break };
        for m in 1..=n {
            for y in 0..objects.len() {
                if objects.plus_x_pow(y, m) != Some(an) {
                    continue;
                }
                checked += 1;
                if objects.plus_x_pow(a, n - m) != Some(y) {
                    let failure = CancellationFailure { y: objects.objects[y].name.clone(), m, n };
                    return Ok(CancellationReport {
                        object: objects.objects[a].name.clone(),
                        checked,
                        holds: false,
                        failure: Some(failure),
                    });
                }
            }
        }
    }
    Ok(CancellationReport { object: objects.objects[a].name.clone(), checked, holds: true, failure: None })
}

/// An automorphism family paired with its objects.
#[derive(Clone, Debug)]
pub struct StabilizedModule<F> {
    pub family: F,
    pub objects: ObjectTable,
}

impl<F: AutFamily> StabilizedModule<F> {
    pub fn new(family: F, objects: ObjectTable) -> Self {
        StabilizedModule { family, objects }
    }

    /// Degree of an object of a one-object-per-degree module.
    pub fn degree_of(&self, a: usize) -> Result<usize> {
        match self.objects.grade(a) {
            Grade::Finite(g) => Ok(g as usize),
            Grade::Infinite => Err(Error::DegreeMismatch(format!("object {} has infinite grade", a))),
        }
    }
}

pub fn symmetric_module(window: usize) -> StabilizedModule<SymmetricFamily> {
    StabilizedModule::new(SymmetricFamily, ObjectTable::one_per_degree(window))
}

pub fn braid_module(window: usize) -> StabilizedModule<BraidFamily> {
    StabilizedModule::new(BraidFamily { sample_length: 10 }, ObjectTable::one_per_degree(window))
}

pub fn wreath_module(group: FiniteGroup, window: usize) -> StabilizedModule<WreathFamily> {
    StabilizedModule::new(WreathFamily::new(group), ObjectTable::one_per_degree(window))
}

/// Objects `A ⊕ X^k` only, with `A` in grade `base`.
pub fn chain_toy(base: u32, len: usize) -> ObjectTable {
    let objects = (0..len)
        .map(|k| Object {
            name: format!("A+{}X", k),
            grade: Grade::Finite(base + k as u32),
            plus_x: (k + 1 < len).then_some(k + 1),
        })
        .collect();
    ObjectTable { objects }
}

/// Degrees `0..=window` plus a localized part of grade ∞ closed under `⊕ X`.
pub fn localized_toy(window: usize) -> ObjectTable {
    let mut objects = ObjectTable::one_per_degree(window).objects;
    let base = objects.len();
    objects.push(Object { name: "L".into(), grade: Grade::Infinite, plus_x: Some(base) });
    ObjectTable { objects }
}

/// `P ⊕ X ≅ Q ⊕ X` with `P ≇ Q`, both of grade 0.
pub fn uncancellative_toy(window: usize) -> ObjectTable {
    let mut objects = vec![
        Object { name: "P".into(), grade: Grade::Finite(0), plus_x: Some(2) },
        Object { name: "Q".into(), grade: Grade::Finite(0), plus_x: Some(2) },
    ];
    for k in 1..=window {
        objects.push(Object {
            name: format!("R{}", k),
            grade: Grade::Finite(k as u32),
            plus_x: (k < window).then_some(k + 2),
        });
    }
    ObjectTable { objects }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        let t = ObjectTable::one_per_degree(8);
        assert_eq!(genus(&t, 3, 8).unwrap(), GenusValue::Finite(3));
        assert_eq!(genus(&t, 3, 2).unwrap(), GenusValue::AtLeast(2));
        let c = chain_toy(4, 5);
        assert_eq!(genus(&c, 0, 10).unwrap(), GenusValue::Finite(0));
        assert_eq!(genus(&c, 3, 10).unwrap(), GenusValue::Finite(3));
        let b = braid_module(6);
        assert_eq!(genus(&b.objects, 5, 6).unwrap(), GenusValue::Finite(5));
    }

    #[test]
    fn stable_genus_examples() {
        let t = ObjectTable::one_per_degree(10);
        assert_eq!(stable_genus(&t, 4, 5).unwrap(), GenusValue::Finite(4));
        let l = localized_toy(4);
        let li = l.find("L").unwrap();
        assert_eq!(stable_genus(&l, li, 5).unwrap(), GenusValue::Infinite);
        assert_eq!(stable_genus(&l, 2, 2).unwrap(), GenusValue::Finite(2));
    }

    #[test]
    fn grading_must_be_additive() {
        let objects = vec![
            Object { name: "a".into(), grade: Grade::Finite(0), plus_x: Some(1) },
            Object { name: "b".into(), grade: Grade::Finite(2), plus_x: None },
        ];
        assert!(ObjectTable::new(objects).is_err());
    }

    #[test]
    fn injectivity_examples() {
        let r = check_injectivity(&SymmetricFamily, 6, 0, 1);
        assert!(r.injective && r.exact);
        let b = check_injectivity(&BraidFamily { sample_length: 8 }, 6, 100, 1);
        assert!(b.injective && !b.exact);
        let broken = check_injectivity(&TableFamily::broken_injectivity(), 6, 0, 1);
        assert!(!broken.injective);
        assert_eq!(broken.rows[1].witness.as_deref(), Some("1"));
    }

    #[test]
    fn cancellation_examples() {
        let t = ObjectTable::one_per_degree(8);
        assert!(check_local_cancellation(&t, 0, 6).unwrap().holds);
        assert!(check_local_cancellation(&t, 3, 4).unwrap().holds);
        let u = uncancellative_toy(5);
        let p = u.find("P").unwrap();
        let rep = check_local_cancellation(&u, p, 4).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.failure.unwrap().y, "Q");
    }
}
