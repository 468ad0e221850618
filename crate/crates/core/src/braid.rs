//! Braid words, the Artin action on free groups, and the oracle-based word
//! and parabolic coset problems.
//!
//! Letters are signed integers: `+i` is `σ_i`, `-i` is `σ_i⁻¹`. Free group
//! letters use the same encoding with `x_j` in place of `σ_i`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, j: usize) -> Self {
        FreeWord { rank, letters: vec![j as i32] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = self.letters.clone();
        push_reduced(&mut out, &other.letters);
        FreeWord { rank: self.rank.max(other.rank), letters: out }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("x{}", l) } else { format!("x{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn push_reduced(acc: &mut Vec<i32>, letters: &[i32]) {
    for &l in letters {
        if acc.last() == Some(&-l) {
            acc.pop();
        } else {
            acc.push(l);
        }
    }
}

/// Freely reduce a signed-letter sequence over the free group of the given rank.
pub fn free_reduce(rank: usize, letters: &[i32]) -> Result<FreeWord> {
    for &l in letters {
        let j = l.unsigned_abs() as usize;
        if l == 0 || j > rank {
            return Err(Error::GeneratorOutOfRange { index: j, rank });
        }
    }
    let mut out = Vec::with_capacity(letters.len());
    push_reduced(&mut out, letters);
    Ok(FreeWord { rank, letters: out })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::LetterOutOfRange { index: i, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn sigma(strands: usize, i: usize) -> Result<Self> {
        BraidWord::new(strands, vec![i as i32])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Juxtaposition: `self` first, then `other`.
    pub fn mul(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// `1^offset ⊕ self` inside `B_total`.
    pub fn shift(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.strands > total {
            return Err(Error::StrandMismatch { left: offset + self.strands, right: total });
        }
        let letters = self
            .letters
            .iter()
            .map(|&l| l.signum() * (l.abs() + offset as i32))
            .collect();
        Ok(BraidWord { strands: total, letters })
    }

    /// `self ⊕ 1^extra`.
    pub fn pad(&self, extra: usize) -> Self {
        BraidWord { strands: self.strands + extra, letters: self.letters.clone() }
    }

    pub fn random(strands: usize, len: usize, rng: &mut impl Rng) -> Self {
        if strands < 2 {
            return BraidWord::identity(strands);
        }
        let letters = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    i
                } else {
                    -i
                }
            })
            .collect();
        BraidWord { strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for &l in &self.letters {
            if l > 0 {
                write!(f, " s{}", l)?;
            } else {
                write!(f, " s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses `B<n>: s1 s2^-1 ...`; an empty body is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing strand prefix in {:?}", s)))?;
        let strands: usize = head
            .trim()
            .strip_prefix('B')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad strand prefix {:?}", head)))?;
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let rest = tok
                .strip_prefix('s')
                .ok_or_else(|| Error::Parse(format!("bad letter {:?}", tok)))?;
            let (idx, sign) = match rest.split_once('^') {
                Some((i, "-1")) => (i, -1),
                Some((i, "1")) => (i, 1),
                Some(_) => return Err(Error::Parse(format!("bad exponent in {:?}", tok))),
                None => (rest, 1),
            };
            let i: i32 = idx.parse().map_err(|_| Error::Parse(format!("bad index in {:?}", tok)))?;
            letters.push(sign * i);
        }
        BraidWord::new(strands, letters)
    }
}

/// Images of `x_1..x_n` under the action of `b`, index 0 holding `x_1`.
///
/// The table is updated as `T ← T ∘ φ_a` per letter, so the word acts as
/// `φ_{a_1} ∘ ... ∘ φ_{a_k}`.
pub fn artin_images(b: &BraidWord) -> Vec<FreeWord> {
    let n = b.strands;
    let mut table: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
    for &l in &b.letters {
        let a = l.unsigned_abs() as usize - 1;
        let ta = std::mem::take(&mut table[a]);
        let tb = std::mem::take(&mut table[a + 1]);
        if l > 0 {
            let mut img = ta.clone();
            push_reduced(&mut img, &tb);
            push_reduced(&mut img, &invert(&ta));
            table[a] = img;
            table[a + 1] = ta;
        } else {
            let mut img = invert(&tb);
            push_reduced(&mut img, &ta);
            push_reduced(&mut img, &tb);
            table[a + 1] = img;
            table[a] = tb;
        }
    }
    table.into_iter().map(|letters| FreeWord { rank: n, letters }).collect()
}

fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn artin_image(b: &BraidWord, j: usize) -> Result<FreeWord> {
    if j == 0 || j > b.strands {
        return Err(Error::GeneratorOutOfRange { index: j, rank: b.strands });
    }
    Ok(artin_images(b).swap_remove(j - 1))
}

pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> Result<bool> {
    if b1.strands != b2.strands {
        return Err(Error::StrandMismatch { left: b1.strands, right: b2.strands });
    }
    Ok(artin_images(b1) == artin_images(b2))
}

/// Decides `b1·B_k = b2·B_k` with `B_k` the parabolic on the first `k` strands.
pub fn parabolic_coset_equal(b1: &BraidWord, b2: &BraidWord, n: usize, k: usize) -> Result<bool> {
    if k > n {
        return Err(Error::ParabolicTooLarge { k, n });
    }
    if b1.strands != n || b2.strands != n {
        let off = if b1.strands != n { b1.strands } else { b2.strands };
        return Err(Error::StrandMismatch { left: off, right: n });
    }
    Ok(coset_key(b1, k) == coset_key(b2, k))
}

/// Images of `x_{k+1}..x_n`; a complete invariant of the coset `b·B_k`.
pub fn coset_key(b: &BraidWord, k: usize) -> Vec<FreeWord> {
    let mut imgs = artin_images(b);
    imgs.drain(..k.min(imgs.len()));
    imgs
}

/// A bijection of `{1..n}`, stored 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// From a 1-based image array.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Parse(format!("not a permutation: {:?}", images)));
            }
            seen[v - 1] = true;
            image.push(v - 1);
        }
        Ok(Permutation { image })
    }

    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.image.swap(i - 1, i);
        p
    }

    /// Moves `1..=i` to `j+1..=i+j` and `i+1..=i+j` to `1..=j`.
    pub fn block_swap(i: usize, j: usize) -> Self {
        let image = (0..i + j).map(|t| if t < i { t + j } else { t - i }).collect();
        Permutation { image }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// 1-based evaluation.
    pub fn apply(&self, t: usize) -> usize {
        self.image[t - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    pub fn as_slice0(&self) -> &[usize] {
        &self.image
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { image: self.image.iter().map(|&v| other.image[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (t, &v) in self.image.iter().enumerate() {
            inv[v] = t;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(t, &v)| t == v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

/// Where each strand ends: `apply(t)` is the final position of the strand
/// that starts at position `t`.
pub fn permutation_of(b: &BraidWord) -> Permutation {
    // track the content of each position
    let mut at: Vec<usize> = (0..b.strands).collect();
    for &l in &b.letters {
        let a = l.unsigned_abs() as usize - 1;
        at.swap(a, a + 1);
    }
    Permutation { image: at }.inverse()
}

/// `β_{i,j} ∈ B_{i+j}`, the braiding of a block of `i` strands past `j` strands.
///
/// `β_{i,1} = σ_1⋯σ_i` and `β_{i,j} = shift_{j−1}(β_{i,1})·(β_{i,j−1} ⊕ 1)`.
/// Either block may be empty, giving the identity.
pub fn block_braiding(i: usize, j: usize) -> BraidWord {
    let n = i + j;
    if i == 0 || j == 0 {
        return BraidWord::identity(n);
    }
    let base: Vec<i32> = (1..=i as i32).collect();
    let mut acc = base.clone();
    for step in 2..=j {
        let mut next: Vec<i32> = base.iter().map(|&l| l + (step as i32 - 1)).collect();
        next.extend_from_slice(&acc);
        acc = next;
    }
    BraidWord { strands: n, letters: acc }
}
