use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homstab::braid::free_reduce;
use homstab::foxhom::{
    abelianization_rank, braid_presentation, check_relators, fox_derivative, pure_braid_presentation,
    pure_generator_braid, symmetric_presentation, twisted_homology, GroupPresentation, Representation,
};
use homstab::linalg::{rat, Matrix, Rational};
use homstab::reptheory::{
    hook_dim, mn_character, multiplicity_h, multiplicity_oracle, partitions_of, seminormal_matrices, trace_character,
    Partition,
};

fn reduced(rank: usize, w: &[i32]) -> Vec<i32> {
    free_reduce(rank, w).unwrap().letters().to_vec()
}

/// `Σ_j (∂r/∂x_j)(x_j − 1)` as a formal sum of reduced words.
fn fox_sum(rank: usize, r: &[i32]) -> BTreeMap<Vec<i32>, i64> {
    let mut out: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
    for j in 1..=rank {
        for (w, c) in fox_derivative(r, j) {
            let mut wx = w.clone();
            wx.push(j as i32);
            *out.entry(reduced(rank, &wx)).or_insert(0) += c;
            *out.entry(reduced(rank, &w)).or_insert(0) -= c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn expected_fox_sum(rank: usize, r: &[i32]) -> BTreeMap<Vec<i32>, i64> {
    let mut out = BTreeMap::new();
    let red = reduced(rank, r);
    if !red.is_empty() {
        out.insert(red, 1);
        out.insert(vec![], -1);
    }
    out
}

fn shipped_presentations() -> Vec<(String, GroupPresentation)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("braid {}", n), braid_presentation(n)));
        out.push((format!("symmetric {}", n), symmetric_presentation(n)));
        out.push((format!("pure {}", n), pure_braid_presentation(n)));
    }
    out
}

#[test]
fn fundamental_formula_on_shipped_relators() {
    for (name, p) in shipped_presentations() {
        for r in p.relators() {
            assert_eq!(fox_sum(p.generators(), r), expected_fox_sum(p.generators(), r), "{}: {:?}", name, r);
        }
    }
}

#[test]
fn fundamental_formula_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..300 {
        let rank = rng.gen_range(1..5);
        let len = rng.gen_range(0..15);
        let w: Vec<i32> = (0..len).map(|_| rng.gen_range(1..=rank as i32) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        assert_eq!(fox_sum(rank, &w), expected_fox_sum(rank, &w), "{:?}", w);
    }
}

fn burau_at(n: usize, t: Rational) -> Vec<Matrix<Rational>> {
    (1..n)
        .map(|i| {
            let mut m = Matrix::identity(n);
            m.set(i - 1, i - 1, rat(1, 1) - t.clone());
            m.set(i - 1, i, t.clone());
            m.set(i, i - 1, rat(1, 1));
            m.set(i, i, rat(0, 1));
            m
        })
        .collect()
}

#[test]
fn relators_die_in_shipped_representations() {
    for n in 2..=6 {
        let b = braid_presentation(n);
        let s = symmetric_presentation(n);
        let g = n - 1;
        for p in [&b, &s] {
            check_relators(p, &Representation::trivial(g)).unwrap();
            check_relators(p, &Representation::scalar(g, rat(-1, 1))).unwrap();
        }
        let burau = Representation::new(n, burau_at(n, rat(2, 1))).unwrap();
        check_relators(&b, &burau).unwrap();
        assert!(check_relators(&s, &burau).is_err());
        for lam in partitions_of(n) {
            let rho = Representation::new(hook_dim(&lam) as usize, seminormal_matrices(&lam)).unwrap();
            check_relators(&s, &rho).unwrap();
        }
        let pure = pure_braid_presentation(n);
        let mut mats = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let w = pure_generator_braid(n, i, j);
                let letters: Vec<i32> = w.letters().to_vec();
                mats.push(burau.eval(&letters));
            }
        }
        check_relators(&pure, &Representation::new(n, mats).unwrap()).unwrap();
    }
}

#[test]
fn trivial_homology_matches_abelianization() {
    for (name, p) in shipped_presentations() {
        let triv = Representation::trivial(p.generators());
        assert_eq!(twisted_homology(&p, &triv, 0).unwrap(), 1, "{}", name);
        assert_eq!(twisted_homology(&p, &triv, 1).unwrap(), abelianization_rank(&p), "{}", name);
    }
    assert_eq!(abelianization_rank(&braid_presentation(5)), 1);
    assert_eq!(abelianization_rank(&symmetric_presentation(5)), 0);
    assert_eq!(abelianization_rank(&pure_braid_presentation(5)), 10);
}

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Bubble sort, recording the adjacent swaps (1-based).
fn adjacent_word(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut w = Vec::new();
    for pass in 0..p.len() {
        for k in 0..p.len().saturating_sub(1 + pass) {
            if p[k] > p[k + 1] {
                p.swap(k, k + 1);
                w.push(k + 1);
            }
        }
    }
    w
}

#[test]
fn seminormal_form_is_a_representation_with_the_right_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 1..=8 {
        let mut square_sum = 0u128;
        for lam in partitions_of(n) {
            let d = hook_dim(&lam) as usize;
            square_sum += (d * d) as u128;
            let mats = seminormal_matrices(&lam);
            assert_eq!(mats.len(), n - 1);
            for i in 0..mats.len() {
                assert!(mats[i].mul(&mats[i]).is_identity());
                for j in i + 1..mats.len() {
                    if j == i + 1 {
                        assert_eq!(mats[i].mul(&mats[j]).mul(&mats[i]), mats[j].mul(&mats[i]).mul(&mats[j]));
                    } else {
                        assert_eq!(mats[i].mul(&mats[j]), mats[j].mul(&mats[i]));
                    }
                }
            }
            for _ in 0..3 {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let tr = trace_character(&mats, d, &adjacent_word(&perm));
                assert_eq!(tr, rat(mn_character(&lam, &cycle_type(&perm)), 1), "{} on {:?}", lam, perm);
            }
        }
        assert_eq!(square_sum, (1..=n as u128).product::<u128>());
    }
}

#[test]
fn characters_are_orthonormal() {
    for n in 1..=7 {
        let parts = partitions_of(n);
        let classes: Vec<(Vec<usize>, Rational)> = parts
            .iter()
            .map(|nu| {
                let mut z = rat(1, 1);
                let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
                for &m in nu.parts() {
                    *counts.entry(m).or_insert(0) += 1;
                }
                for (m, c) in counts {
                    for k in 1..=c {
                        z = z * rat(m as i64 * k, 1);
                    }
                }
                (nu.parts().to_vec(), z)
            })
            .collect();
        for a in &parts {
            for b in &parts {
                let ip: Rational = classes
                    .iter()
                    .map(|(nu, z)| rat(mn_character(a, nu) * mn_character(b, nu), 1) / z.clone())
                    .fold(rat(0, 1), |x, y| x + y);
                assert_eq!(ip, rat((a == b) as i64, 1), "{} vs {}", a, b);
            }
        }
    }
}

#[test]
fn first_homology_multiplicities_match_the_oracle() {
    for (lam, stable) in [("1", 1), ("2", 1), ("1,1", 0)] {
        let lambda: Partition = lam.parse().unwrap();
        for n in lambda.size() + lambda.first()..=7 {
            let h = multiplicity_h(&lambda, n, 1).unwrap();
            assert_eq!(h, multiplicity_oracle(&lambda, n).unwrap(), "({}) n = {}", lam, n);
            if n >= 4 {
                assert_eq!(h, stable, "({}) n = {}", lam, n);
            }
        }
    }
}
