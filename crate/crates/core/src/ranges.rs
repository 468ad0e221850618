//! Stability ranges as closed formulas.
//!
//! Every answer is a pair of largest homological degrees: up to `iso_max` the
//! stabilization map is an isomorphism, up to `epi_max` an epimorphism. `−1`
//! encodes an empty range.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chains::floor_div;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Selector {
    #[serde(rename = "A-constant")]
    AConstant,
    #[serde(rename = "A-abelian")]
    AAbelian,
    #[serde(rename = "B-twisted")]
    BTwisted,
    #[serde(rename = "B-split")]
    BSplit,
    #[serde(rename = "C-config")]
    CConfig,
    #[serde(rename = "D-oriented")]
    DOriented,
    #[serde(rename = "F-manifold")]
    FManifold,
}

pub const SELECTORS: &[&str] = &["A-constant", "A-abelian", "B-twisted", "B-split", "C-config", "D-oriented", "F-manifold"];

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Selector::AConstant => "A-constant",
            Selector::AAbelian => "A-abelian",
            Selector::BTwisted => "B-twisted",
            Selector::BSplit => "B-split",
            Selector::CConfig => "C-config",
            Selector::DOriented => "D-oriented",
            Selector::FManifold => "F-manifold",
        };
        f.write_str(s)
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A-constant" => Selector::AConstant,
            "A-abelian" => Selector::AAbelian,
            "B-twisted" => Selector::BTwisted,
            "B-split" => Selector::BSplit,
            "C-config" => Selector::CConfig,
            "D-oriented" => Selector::DOriented,
            "F-manifold" => Selector::FManifold,
            _ => return Err(Error::InvalidQuery(format!("unknown selector {:?}; known: {}", s, SELECTORS.join(", ")))),
        })
    }
}

/// Coefficients for configuration spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Constant,
    Abelian,
    Twisted,
    Split,
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "constant" => Coefficients::Constant,
            "abelian" => Coefficients::Abelian,
            "twisted" => Coefficients::Twisted,
            "split" => Coefficients::Split,
            _ => return Err(Error::InvalidQuery(format!("unknown coefficients {:?}", s))),
        })
    }
}

/// `n` is the genus for `F-manifold`. `big_n` is the degree threshold `N`.
/// `m` is the connectivity shift for `A-*` and the number of generators of
/// `π_q(S^p)` for `F-manifold`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RangeQuery {
    pub selector: Selector,
    pub n: Option<i64>,
    pub k: Option<i64>,
    pub r: Option<i64>,
    #[serde(rename = "N")]
    pub big_n: Option<i64>,
    pub u: Option<i64>,
    pub m: Option<i64>,
    pub coefficients: Option<Coefficients>,
    pub improved: bool,
}

impl RangeQuery {
    pub fn new(selector: Selector) -> Self {
        RangeQuery { selector, n: None, k: None, r: None, big_n: None, u: None, m: None, coefficients: None, improved: false }
    }

    pub fn n(mut self, v: i64) -> Self {
        self.n = Some(v);
        self
    }

    pub fn k(mut self, v: i64) -> Self {
        self.k = Some(v);
        self
    }

    pub fn r(mut self, v: i64) -> Self {
        self.r = Some(v);
        self
    }

    pub fn big_n(mut self, v: i64) -> Self {
        self.big_n = Some(v);
        self
    }

    pub fn u(mut self, v: i64) -> Self {
        self.u = Some(v);
        self
    }

    pub fn m(mut self, v: i64) -> Self {
        self.m = Some(v);
        self
    }

    pub fn coefficients(mut self, c: Coefficients) -> Self {
        self.coefficients = Some(c);
        self
    }

    pub fn improved(mut self, on: bool) -> Self {
        self.improved = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeAnswer {
    pub iso_max: i64,
    pub epi_max: i64,
    pub note: String,
}

fn need(v: Option<i64>, name: &str, sel: Selector) -> Result<i64> {
    v.ok_or_else(|| Error::InvalidQuery(format!("{} needs parameter {}", sel, name)))
}

fn forbid(v: Option<i64>, name: &str, sel: Selector) -> Result<()> {
    match v {
        Some(_) => Err(Error::InvalidQuery(format!("{} does not take parameter {}", sel, name))),
        None => Ok(()),
    }
}

fn nonneg(v: i64, name: &str) -> Result<i64> {
    if v < 0 {
        return Err(Error::InvalidQuery(format!("{} must be nonnegative, got {}", name, v)));
    }
    Ok(v)
}

fn answer(iso_num: i64, iso_den: i64, epi_num: i64, epi_den: i64, note: String) -> RangeAnswer {
    RangeAnswer {
        iso_max: floor_div(iso_num, iso_den).max(-1),
        epi_max: floor_div(epi_num, epi_den).max(-1),
        note,
    }
}

fn empty(note: String) -> RangeAnswer {
    RangeAnswer { iso_max: -1, epi_max: -1, note }
}

pub fn evaluate(q: &RangeQuery) -> Result<RangeAnswer> {
    let sel = q.selector;
    if sel != Selector::CConfig && q.coefficients.is_some() {
        return Err(Error::InvalidQuery(format!("{} does not take coefficients", sel)));
    }
    match sel {
        Selector::AConstant | Selector::AAbelian => {
            let n = nonneg(need(q.n, "n", sel)?, "n")?;
            let k = need(q.k, "k", sel)?;
            forbid(q.r, "r", sel)?;
            forbid(q.big_n, "N", sel)?;
            forbid(q.u, "u", sel)?;
            let abelian = sel == Selector::AAbelian;
            if k < 2 || (abelian && k < 3) {
                return Err(Error::InvalidQuery(format!("{} needs k >= {}, got {}", sel, if abelian { 3 } else { 2 }, k)));
            }
            let m = q.m.unwrap_or(2);
            if m < 2 {
                return Err(Error::InvalidQuery(format!("connectivity shift m must be >= 2, got {}", m)));
            }
            // regrading by m − 2 shifts n
            let s = n - (m - 2);
            if !abelian {
                if !q.improved {
                    return Ok(answer(s - 1, k, s - 2 + k, k, format!("constant coefficients, k={}, m={}", k, m)));
                }
                if m >= 3 {
                    return Ok(answer(s - 1, k, n - m + k + 1, k, format!("constant, improved epimorphism range, m={}", m)));
                }
                if k != 2 {
                    return Err(Error::InvalidQuery("the improved isomorphism range needs k = 2".into()));
                }
                Ok(answer(n, 2, n, 2, "constant, improved isomorphism range n/2 (needs (g-1)-connectivity in degrees >= 1)".into()))
            } else {
                if !q.improved {
                    return Ok(answer(s + 1 - k, k, s, k, format!("abelian coefficients, k={}, m={}", k, m)));
                }
                if m < 3 {
                    return Err(Error::InvalidQuery("the improved abelian epimorphism range needs m >= 3".into()));
                }
                Ok(answer(s + 1 - k, k, n - m + 3, k, format!("abelian, improved epimorphism range, m={}", m)))
            }
        }
        Selector::BTwisted | Selector::BSplit => {
            let n = nonneg(need(q.n, "n", sel)?, "n")?;
            let k = need(q.k, "k", sel)?;
            let r = nonneg(need(q.r, "r", sel)?, "r")?;
            let big_n = nonneg(need(q.big_n, "N", sel)?, "N")?;
            forbid(q.u, "u", sel)?;
            forbid(q.m, "m", sel)?;
            if q.improved {
                return Err(Error::InvalidQuery(format!("{} has no improved range", sel)));
            }
            if k < 2 {
                return Err(Error::InvalidQuery(format!("{} needs k >= 2, got {}", sel, k)));
            }
            if n <= big_n {
                return Ok(empty(format!("needs n > N, got n={} N={}", n, big_n)));
            }
            if sel == Selector::BTwisted {
                Ok(answer(n - r * k - k, k, n - r * k, k, format!("degree {} at {}, k={}", r, big_n, k)))
            } else {
                Ok(answer(n - r - k, k, n - r, k, format!("split degree {} at {}, k={}", r, big_n, k)))
            }
        }
        Selector::CConfig => {
            let n = nonneg(need(q.n, "n", sel)?, "n")?;
            forbid(q.k, "k", sel)?;
            forbid(q.u, "u", sel)?;
            forbid(q.m, "m", sel)?;
            let c = q.coefficients.unwrap_or_default();
            let needs_degree = matches!(c, Coefficients::Twisted | Coefficients::Split);
            if !needs_degree {
                forbid(q.r, "r", sel)?;
                forbid(q.big_n, "N", sel)?;
            }
            if q.improved && c != Coefficients::Constant {
                return Err(Error::InvalidQuery("only constant coefficients have an improved range here".into()));
            }
            match c {
                Coefficients::Constant if q.improved => Ok(answer(n, 2, n, 2, "constant, improved isomorphism range n/2".into())),
                Coefficients::Constant => Ok(answer(n - 1, 2, n, 2, "constant coefficients".into())),
                Coefficients::Abelian => Ok(answer(n - 2, 3, n, 3, "abelian coefficients".into())),
                Coefficients::Twisted | Coefficients::Split => {
                    let r = nonneg(need(q.r, "r", sel)?, "r")?;
                    let big_n = nonneg(need(q.big_n, "N", sel)?, "N")?;
                    if n <= big_n {
                        return Ok(empty(format!("needs n > N, got n={} N={}", n, big_n)));
                    }
                    if c == Coefficients::Twisted {
                        Ok(answer(n - 2 * r - 2, 2, n - 2 * r, 2, format!("degree {} at {}", r, big_n)))
                    } else {
                        Ok(answer(n - r - 2, 2, n - r, 2, format!("split degree {} at {}", r, big_n)))
                    }
                }
            }
        }
        Selector::DOriented => {
            let n = nonneg(need(q.n, "n", sel)?, "n")?;
            for (v, name) in [(q.k, "k"), (q.r, "r"), (q.big_n, "N"), (q.u, "u"), (q.m, "m")] {
                forbid(v, name, sel)?;
            }
            if q.improved {
                return Err(Error::InvalidQuery("D-oriented has no improved range".into()));
            }
            Ok(answer(n - 2, 3, n, 3, "oriented configurations, integral coefficients".into()))
        }
        Selector::FManifold => {
            let g = nonneg(need(q.n, "n (genus)", sel)?, "genus")?;
            let r = nonneg(need(q.r, "r", sel)?, "r")?;
            forbid(q.k, "k", sel)?;
            if q.improved {
                return Err(Error::InvalidQuery("F-manifold has no improved range".into()));
            }
            if let Some(big_n) = q.big_n {
                if g <= nonneg(big_n, "N")? {
                    return Ok(empty(format!("needs g > N, got g={} N={}", g, big_n)));
                }
            }
            match (q.u, q.m) {
                (Some(u), None) => {
                    if u < 1 {
                        return Err(Error::InvalidQuery(format!("u must be >= 1, got {}", u)));
                    }
                    Ok(answer(g - 2 * r - u - 3, 2, g - 2 * r - u - 1, 2, format!("p = q >= 3, r={}, u={}", r, u)))
                }
                (None, Some(m)) => {
                    let m = nonneg(m, "m")?;
                    Ok(answer(g - 2 * r - m - 4, 2, g - 2 * r - m - 2, 2, format!("0 < p < q < 2p-2, r={}, m={}", r, m)))
                }
                _ => Err(Error::InvalidQuery("F-manifold needs exactly one of u (case p = q) or m (case p < q)".into())),
            }
        }
    }
}

/// A parameter that can be swept over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    N,
    K,
    R,
    BigN,
    U,
    M,
}

impl Axis {
    fn set(self, q: &mut RangeQuery, v: i64) {
        match self {
            Axis::N => q.n = Some(v),
            Axis::K => q.k = Some(v),
            Axis::R => q.r = Some(v),
            Axis::BigN => q.big_n = Some(v),
            Axis::U => q.u = Some(v),
            Axis::M => q.m = Some(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub query: RangeQuery,
    pub answer: Option<RangeAnswer>,
    pub error: Option<String>,
}

/// Cartesian product of the axes, first axis outermost.
pub fn sweep(base: &RangeQuery, grid: &[(Axis, Vec<i64>)]) -> Vec<SweepRow> {
    if grid.is_empty() || grid.iter().any(|(_, vs)| vs.is_empty()) {
        return Vec::new();
    }
    let mut queries = vec![base.clone()];
    for (axis, values) in grid {
        let mut next = Vec::with_capacity(queries.len() * values.len());
        for q in &queries {
            for &v in values {
                let mut q2 = q.clone();
                axis.set(&mut q2, v);
                next.push(q2);
            }
        }
        queries = next;
    }
    queries
        .into_iter()
        .map(|q| match evaluate(&q) {
            Ok(a) => SweepRow { query: q, answer: Some(a), error: None },
            Err(e) => SweepRow { query: q, answer: None, error: Some(e.to_string()) },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(q: RangeQuery) -> (i64, i64) {
        let a = evaluate(&q).unwrap();
        (a.iso_max, a.epi_max)
    }

    #[test]
    fn documented_values() {
        assert_eq!(pair(RangeQuery::new(Selector::AConstant).n(10).k(2)), (4, 5));
        assert_eq!(pair(RangeQuery::new(Selector::AAbelian).n(10).k(3)), (2, 3));
        assert_eq!(pair(RangeQuery::new(Selector::BTwisted).n(10).k(2).r(1).big_n(0)), (3, 4));
        assert_eq!(pair(RangeQuery::new(Selector::CConfig).n(7).improved(true)), (3, 3));
        assert_eq!(pair(RangeQuery::new(Selector::DOriented).n(8)), (2, 2));
        assert_eq!(pair(RangeQuery::new(Selector::FManifold).n(20).r(0).u(1)), (8, 9));
        assert_eq!(pair(RangeQuery::new(Selector::BTwisted).n(0).k(2).r(0).big_n(3)), (-1, -1));
    }

    #[test]
    fn invalid_queries() {
        assert!(evaluate(&RangeQuery::new(Selector::AConstant).n(5).k(1)).is_err());
        assert!(evaluate(&RangeQuery::new(Selector::AAbelian).n(5).k(2)).is_err());
        assert!(evaluate(&RangeQuery::new(Selector::AConstant).k(2)).is_err());
        assert!(evaluate(&RangeQuery::new(Selector::DOriented).n(5).k(2)).is_err());
        assert!(evaluate(&RangeQuery::new(Selector::FManifold).n(5).r(0).u(1).m(1)).is_err());
        assert!(evaluate(&RangeQuery::new(Selector::AConstant).n(5).k(3).improved(true)).is_err());
        assert!("Z-nope".parse::<Selector>().is_err());
    }

    #[test]
    fn improvements() {
        assert_eq!(pair(RangeQuery::new(Selector::AConstant).n(10).k(2).improved(true)), (5, 5));
        assert_eq!(pair(RangeQuery::new(Selector::AConstant).n(10).k(2).m(3)), (4, 4));
        assert_eq!(pair(RangeQuery::new(Selector::AConstant).n(10).k(2).m(3).improved(true)), (4, 5));
        assert_eq!(pair(RangeQuery::new(Selector::AAbelian).n(10).k(3).m(3).improved(true)), (2, 3));
    }

    #[test]
    fn sweep_rows() {
        let rows = sweep(&RangeQuery::new(Selector::AConstant).k(2), &[(Axis::N, (0..=12).collect())]);
        assert_eq!(rows.len(), 13);
        for (n, row) in (0..=12).zip(&rows) {
            assert_eq!(row.answer.as_ref().unwrap().iso_max, floor_div(n - 1, 2).max(-1));
        }
        assert!(sweep(&RangeQuery::new(Selector::AConstant), &[]).is_empty());
        let mixed = sweep(&RangeQuery::new(Selector::AConstant).n(6), &[(Axis::K, vec![1, 2])]);
        assert!(mixed[0].error.is_some() && mixed[1].answer.is_some());
    }
}
