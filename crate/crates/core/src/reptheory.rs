//! Partitions, Specht modules in Young's seminormal form, characters and
//! multiplicities in the cohomology of configuration spaces of the disc.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::foxhom::{braid_presentation, twisted_homology, Representation};
use crate::linalg::{rat, Matrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{:?} has a zero part", parts)));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{:?} is not weakly decreasing", parts)));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(i, j)` with `j < λ_i`, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j)))
    }

    pub fn conjugate(&self) -> Partition {
        let mut c = vec![0; self.first()];
        for &l in &self.0 {
            for x in c.iter_mut().take(l) {
                *x += 1;
            }
        }
        Partition(c)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `1,1`, `(2,1)`, `()` or the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad part {:?} in {:?}", p, s))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// `λ[n] = (n − |λ|, λ_1, …, λ_k)`.
pub fn pad(lambda: &Partition, n: usize) -> Result<Partition> {
    let needed = lambda.size() + lambda.first();
    if n < needed {
        return Err(Error::PadBelowThreshold { partition: lambda.to_string(), n, needed });
    }
    let mut parts = vec![n - lambda.size()];
    parts.extend_from_slice(lambda.parts());
    parts.retain(|&p| p > 0);
    Partition::new(parts)
}

/// Hook length formula.
pub fn hook_dim(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut num: u128 = 1;
    let mut hooks: Vec<u128> = Vec::new();
    for (k, (i, j)) in lambda.cells().enumerate() {
        num *= (k + 1) as u128;
        hooks.push((lambda.0[i] - j + conj.0[j] - i - 1) as u128);
        // keep the running quotient small
        for h in hooks.iter_mut() {
            if *h > 1 && num % *h == 0 {
                num /= *h;
                *h = 1;
            }
        }
    }
    hooks.iter().fold(num, |acc, &h| acc / h)
}

/// A standard tableau recorded by the row of each entry `1..=n`.
pub type Tableau = Vec<usize>;

pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    fn go(shape: &[usize], filled: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Tableau>) {
        if word.len() == shape.iter().sum::<usize>() {
            out.push(word.clone());
            return;
        }
        for r in 0..shape.len() {
            let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
            if ok {
                filled[r] += 1;
                word.push(r);
                go(shape, filled, word, out);
                word.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&lambda.0, &mut vec![0; lambda.len()], &mut Vec::new(), &mut out);
    out
}

/// Content `col − row` of each entry.
pub fn contents(t: &Tableau) -> Vec<i64> {
    let mut filled: Vec<i64> = Vec::new();
    t.iter()
        .map(|&r| {
            if filled.len() <= r {
                filled.resize(r + 1, 0);
            }
            let c = filled[r] - r as i64;
            filled[r] += 1;
            c
        })
        .collect()
}

/// Young's seminormal matrices for `s_1, …, s_{n−1}`, acting on column vectors
/// indexed by [`standard_tableaux`].
pub fn seminormal_matrices(lambda: &Partition) -> Vec<Matrix<Rational>> {
    let tabs = standard_tableaux(lambda);
    let index: HashMap<&Tableau, usize> = tabs.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let n = lambda.size();
    let d = tabs.len();
    let cont: Vec<Vec<i64>> = tabs.iter().map(contents).collect();
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut m = Matrix::zeros(d, d);
            for (k, t) in tabs.iter().enumerate() {
                let c = &cont[k];
                if t[i] == t[i + 1] {
                    m.set(k, k, rat(1, 1));
                } else if t[i + 1] == t[i] + 1 && c[i + 1] == c[i] - 1 {
                    m.set(k, k, rat(-1, 1));
                } else {
                    let a = rat(1, c[i + 1] - c[i]);
                    let mut sw = t.clone();
                    sw.swap(i, i + 1);
                    let k2 = index[&sw];
                    m.set(k, k, a.clone());
                    if t[i + 1] > t[i] {
                        m.set(k2, k, rat(1, 1));
                    } else {
                        m.set(k2, k, rat(1, 1) - a.clone() * a);
                    }
                }
            }
            m
        })
        .collect()
}

/// `χ_λ` on the class of cycle type `mu` by Murnaghan–Nakayama.
pub fn mn_character(lambda: &Partition, mu: &[usize]) -> i64 {
    let k = lambda.len();
    let beta: Vec<usize> = lambda.0.iter().enumerate().map(|(j, &l)| l + k - 1 - j).collect();
    let mut memo = HashMap::new();
    mn_beta(beta, mu, &mut memo)
}

fn mn_beta(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(nb, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A permutation of cycle type `mu` as a word in `s_1, …, s_{n−1}`.
pub fn class_representative_word(mu: &[usize]) -> Vec<usize> {
    let mut w = Vec::new();
    let mut start = 1;
    for &m in mu {
        w.extend(start..start + m - 1);
        start += m;
    }
    w
}

/// `tr ρ_λ(w)` for a word in the adjacent transpositions.
pub fn trace_character(mats: &[Matrix<Rational>], dim: usize, word: &[usize]) -> Rational {
    let mut acc = Matrix::identity(dim);
    for &i in word {
        acc = acc.mul(&mats[i - 1]);
    }
    acc.trace()
}

fn centralizer_order(mu: &[usize]) -> u128 {
    let mut counts: HashMap<usize, u32> = HashMap::new();
    for &m in mu {
        *counts.entry(m).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(m, c)| (m as u128).pow(c) * (1..=c as u128).product::<u128>())
        .product()
}

/// Multiplicity of `V_{λ[n]}` in the permutation module on 2-element subsets
/// of `{1..n}`, by character inner product.
pub fn multiplicity_oracle(lambda: &Partition, n: usize) -> Result<usize> {
    let mu = pad(lambda, n)?;
    let mut total = Rational::zero();
    for nu in partitions_of(n) {
        let fixed = nu.0.iter().filter(|&&c| c == 1).count() as i64;
        let two = nu.0.iter().filter(|&&c| c == 2).count() as i64;
        let perm = fixed * (fixed - 1) / 2 + two;
        total += rat(perm * mn_character(&mu, &nu.0), 1) / rat(centralizer_order(&nu.0) as i64, 1);
    }
    if !total.is_integer() || total < Rational::zero() {
        return Err(Error::Internal(format!("inner product {} is not a multiplicity", total)));
    }
    Ok(total.to_integer().to_usize().expect("small"))
}

/// `dim H_i(B_n; V_{λ[n]})` with `B_n` acting through `Σ_n`.
pub fn multiplicity_h(lambda: &Partition, n: usize, i: usize) -> Result<usize> {
    let mu = pad(lambda, n)?;
    let d = hook_dim(&mu) as usize;
    let rho = Representation::new(d, seminormal_matrices(&mu))?;
    twisted_homology(&braid_presentation(n), &rho, i)
}

/// Least `n` with `i ≤ n/2 − (|λ| + λ_1 + 1)`.
pub fn stabilization_onset(lambda: &Partition, i: usize) -> usize {
    2 * (i + lambda.size() + lambda.first() + 1)
}

/// Least `n` in the sweep from which the values stay constant to its end.
pub fn observed_onset(values: &[(usize, usize)]) -> Option<usize> {
    let (_, last) = *values.last()?;
    let mut onset = values.last()?.0;
    for &(n, v) in values.iter().rev() {
        if v != last {
            break;
        }
        onset = n;
    }
    Some(onset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn padding() {
        assert_eq!(pad(&p("1,1"), 5).unwrap(), p("3,1,1"));
        assert_eq!(pad(&p(""), 4).unwrap(), p("4"));
        assert_eq!(pad(&p(""), 0).unwrap(), p(""));
        assert!(matches!(pad(&p("2"), 3), Err(Error::PadBelowThreshold { needed: 4, .. })));
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_dim(&p("5")), 1);
        assert_eq!(hook_dim(&p("2,1")), 2);
        assert_eq!(hook_dim(&p("3,1,1")), 6);
        assert_eq!(hook_dim(&p("")), 1);
        for n in 1..=8 {
            let sum: u128 = partitions_of(n).iter().map(|l| hook_dim(l).pow(2)).sum();
            assert_eq!(sum, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn parse_partitions() {
        assert_eq!(p("(2,1)"), Partition::new(vec![2, 1]).unwrap());
        assert_eq!(p("()"), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn seminormal_small() {
        for m in seminormal_matrices(&p("3")) {
            assert_eq!(m, Matrix::from_i64(&[&[1]]));
        }
        assert_eq!(seminormal_matrices(&p("1,1")), vec![Matrix::from_i64(&[&[-1]])]);
        let m = seminormal_matrices(&p("2,1"));
        let id = Matrix::identity(2);
        assert_eq!(m[0].mul(&m[0]), id);
        assert_eq!(m[1].mul(&m[1]), id);
        assert_eq!(m[0].mul(&m[1]).mul(&m[0]), m[1].mul(&m[0]).mul(&m[1]));
    }

    #[test]
    fn characters_match_traces() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                let mats = seminormal_matrices(&lambda);
                let d = hook_dim(&lambda) as usize;
                for nu in partitions_of(n) {
                    let w = class_representative_word(&nu.0);
                    assert_eq!(trace_character(&mats, d, &w), rat(mn_character(&lambda, &nu.0), 1), "{} {}", lambda, nu);
                }
            }
        }
    }

    #[test]
    fn oracle_values() {
        assert_eq!(multiplicity_oracle(&p(""), 5).unwrap(), 1);
        assert_eq!(multiplicity_oracle(&p("1"), 5).unwrap(), 1);
        assert_eq!(multiplicity_oracle(&p("1,1"), 5).unwrap(), 0);
        assert_eq!(multiplicity_oracle(&p("2"), 5).unwrap(), 1);
    }

    #[test]
    fn homology_values() {
        assert_eq!(multiplicity_h(&p(""), 4, 0).unwrap(), 1);
        assert_eq!(multiplicity_h(&p("1"), 3, 0).unwrap(), 0);
        assert_eq!(multiplicity_h(&p("2"), 5, 1).unwrap(), 1);
    }

    #[test]
    fn onsets() {
        assert_eq!(stabilization_onset(&p("1"), 1), 8);
        assert_eq!(stabilization_onset(&p(""), 0), 2);
        assert_eq!(stabilization_onset(&p("1,1"), 1), 10);
        assert_eq!(observed_onset(&[(3, 0), (4, 1), (5, 1)]), Some(4));
        assert_eq!(observed_onset(&[]), None);
    }
}
