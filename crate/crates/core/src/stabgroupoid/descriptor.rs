//! Named presets and the line-based module descriptor format.
//!
//! ```text
//! # a preset, optionally with its object window
//! preset wreath-z2 window 6
//!
//! # or an explicit family: degree, multiplication table rows split by '/',
//! # stabilization images into the next degree
//! name toy
//! aut 0 mul 0 stab 0
//! aut 1 mul 0 1 / 1 0 stab 0
//! aut 2 mul 0
//! sigma 2 1 0
//! object P grade 0 plus-x R
//! object R grade 1 plus-x -
//! ```
//!
//! Objects default to one per degree. `grade inf` marks a localized object.

use super::families::{BraidFamily, FiniteGroup, SymmetricFamily, TableFamily, TableGroup, WreathFamily};
use super::{chain_toy, localized_toy, uncancellative_toy, Grade, Object, ObjectTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum AnyFamily {
    Symmetric(SymmetricFamily),
    Braid(BraidFamily),
    Wreath(WreathFamily),
    Table(TableFamily),
}

impl AnyFamily {
    pub fn name(&self) -> String {
        use super::AutFamily;
        match self {
            AnyFamily::Symmetric(f) => f.name(),
            AnyFamily::Braid(f) => f.name(),
            AnyFamily::Wreath(f) => f.name(),
            AnyFamily::Table(f) => f.name(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuleDescriptor {
    pub family: AnyFamily,
    pub objects: ObjectTable,
}

pub const PRESETS: &[&str] = &[
    "sym",
    "braid",
    "wreath-z2",
    "wreath-z3",
    "wreath-z4",
    "wreath-z2xz2",
    "chain",
    "localized",
    "uncancellative",
    "broken",
];

impl ModuleDescriptor {
    pub fn preset(name: &str, window: usize) -> Result<Self> {
        let per_degree = ObjectTable::one_per_degree(window);
        let (family, objects) = match name {
            "sym" | "symmetric" => (AnyFamily::Symmetric(SymmetricFamily), per_degree),
            "braid" => (AnyFamily::Braid(BraidFamily { sample_length: 10 }), per_degree),
            "wreath-z2" => (AnyFamily::Wreath(WreathFamily::new(FiniteGroup::cyclic(2))), per_degree),
            "wreath-z3" => (AnyFamily::Wreath(WreathFamily::new(FiniteGroup::cyclic(3))), per_degree),
            "wreath-z4" => (AnyFamily::Wreath(WreathFamily::new(FiniteGroup::cyclic(4))), per_degree),
            "wreath-z2xz2" => (AnyFamily::Wreath(WreathFamily::new(FiniteGroup::klein())), per_degree),
            "chain" => (AnyFamily::Table(TableFamily::trivial(window + 2)), chain_toy(2, window + 1)),
            "localized" => (AnyFamily::Table(TableFamily::trivial(window)), localized_toy(window)),
            "uncancellative" => (AnyFamily::Table(TableFamily::trivial(window)), uncancellative_toy(window)),
            "broken" => {
                let f = TableFamily::broken_injectivity();
                let top = f.degrees().len() - 1;
                (AnyFamily::Table(f), ObjectTable::one_per_degree(top))
            }
            _ => {
                return Err(Error::Parse(format!("unknown module preset {:?}; known: {}", name, PRESETS.join(", "))));
            }
        };
        Ok(ModuleDescriptor { family, objects })
    }
}

pub fn parse_descriptor(text: &str, default_window: usize) -> Result<ModuleDescriptor> {
    let mut preset: Option<(String, usize)> = None;
    let mut name = "table".to_string();
    let mut auts: Vec<Option<(Vec<Vec<usize>>, Vec<usize>)>> = Vec::new();
    let mut sigmas: Vec<(usize, usize, usize)> = Vec::new();
    let mut objects: Vec<(String, Grade, Option<String>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {}", lineno + 1, m));
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "preset" => {
                let p = toks.get(1).ok_or_else(|| err("preset needs a name"))?;
                let window = match toks.get(2..) {
                    Some(["window", w]) => w.parse().map_err(|_| err("bad window"))?,
                    Some([]) | None => default_window,
                    _ => return Err(err("expected 'preset <name> [window <w>]'")),
                };
                preset = Some((p.to_string(), window));
            }
            "name" => {
                name = toks.get(1).ok_or_else(|| err("name needs a value"))?.to_string();
            }
            "aut" => {
                let n: usize = toks.get(1).and_then(|t| t.parse().ok()).ok_or_else(|| err("aut needs a degree"))?;
                if toks.get(2) != Some(&"mul") {
                    return Err(err("expected 'aut <n> mul ...'"));
                }
                let stab_pos = toks.iter().position(|&t| t == "stab").unwrap_or(toks.len());
                let mut rows = vec![Vec::new()];
                for t in &toks[3..stab_pos] {
                    if *t == "/" {
                        rows.push(Vec::new());
                    } else {
                        let v = t.parse().map_err(|_| err("bad table entry"))?;
                        rows.last_mut().expect("nonempty").push(v);
                    }
                }
                let stab = toks
                    .get(stab_pos + 1..)
                    .unwrap_or(&[])
                    .iter()
                    .map(|t| t.parse().map_err(|_| err("bad stab entry")))
                    .collect::<Result<Vec<usize>>>()?;
                if auts.len() <= n {
                    auts.resize(n + 1, None);
                }
                if auts[n].is_some() {
                    return Err(err("degree given twice"));
                }
                auts[n] = Some((rows, stab));
            }
            "sigma" => {
                let v: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| err("bad sigma entry")))
                    .collect::<Result<_>>()?;
                let [n, k, e] = v[..] else {
                    return Err(err("expected 'sigma <n> <k> <element>'"));
                };
                sigmas.push((n, k, e));
            }
            "object" => {
                let (Some(obj), Some(&"grade"), Some(g), Some(&"plus-x"), Some(px)) =
                    (toks.get(1), toks.get(2), toks.get(3), toks.get(4), toks.get(5))
                else {
                    return Err(err("expected 'object <name> grade <g|inf> plus-x <name|->'"));
                };
                let grade = if *g == "inf" {
                    Grade::Infinite
                } else {
                    Grade::Finite(g.parse().map_err(|_| err("bad grade"))?)
                };
                let px = (*px != "-").then(|| px.to_string());
                objects.push((obj.to_string(), grade, px));
            }
            other => return Err(err(&format!("unknown directive {:?}", other))),
        }
    }

    let mut desc = match preset {
        Some((p, window)) => {
            if !auts.is_empty() || !sigmas.is_empty() {
                return Err(Error::Parse("a preset cannot be combined with aut/sigma lines".into()));
            }
            ModuleDescriptor::preset(&p, window)?
        }
        None => {
            if auts.is_empty() {
                return Err(Error::Parse("descriptor has neither a preset nor aut lines".into()));
            }
            let mut degrees = Vec::with_capacity(auts.len());
            for (n, a) in auts.into_iter().enumerate() {
                let (mul, stab) = a.ok_or_else(|| Error::Parse(format!("degree {} missing", n)))?;
                degrees.push(TableGroup { mul, stab, sigma: vec![0; n.saturating_sub(1)] });
            }
            for (n, k, e) in sigmas {
                let g = degrees
                    .get_mut(n)
                    .ok_or_else(|| Error::Parse(format!("sigma for missing degree {}", n)))?;
                if k == 0 || k >= n.max(1) {
                    return Err(Error::Parse(format!("sigma index {} out of range in degree {}", k, n)));
                }
                g.sigma[k - 1] = e;
            }
            let family = TableFamily::new(&name, degrees)?;
            let top = family.degrees().len() - 1;
            ModuleDescriptor { family: AnyFamily::Table(family), objects: ObjectTable::one_per_degree(top) }
        }
    };

    if !objects.is_empty() {
        let names: Vec<String> = objects.iter().map(|o| o.0.clone()).collect();
        let mut table = Vec::with_capacity(objects.len());
        for (n, grade, px) in objects {
            let plus_x = match px {
                None => None,
                Some(p) => Some(
                    names
                        .iter()
                        .position(|x| *x == p)
                        .ok_or_else(|| Error::Parse(format!("object {} stabilizes to unknown {}", n, p)))?,
                ),
            };
            table.push(Object { name: n, grade, plus_x });
        }
        desc.objects = ObjectTable::new(table)?;
    }
    Ok(desc)
}
