use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homstab::coeffsys::{
    compare_suspensions, degree_report, make_burau, make_constant, make_sign_zero, make_specht_pullback, quotient_maps,
    AnySystem, CoefficientSystem, Verdict,
};
use homstab::linalg::{rat, Matrix, Rational};

/// `L·U` with unit diagonals and sparse entries in {-1, 0, 1}.
fn random_invertible(dim: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut lower = Matrix::identity(dim);
    let mut upper = Matrix::identity(dim);
    for i in 0..dim {
        for j in 0..i {
            if rng.gen_bool(0.3) {
                lower.set(i, j, rat(rng.gen_range(-1..=1), 1));
            }
            if rng.gen_bool(0.3) {
                upper.set(j, i, rat(rng.gen_range(-1..=1), 1));
            }
        }
    }
    lower.mul(&upper)
}

fn random_conjugate(f: &CoefficientSystem<Rational>, rng: &mut ChaCha8Rng) -> CoefficientSystem<Rational> {
    let p: Vec<Matrix<Rational>> = f.dims().iter().map(|&d| random_invertible(d, rng)).collect();
    f.conjugated(&p).unwrap()
}

fn rational_presets(window: usize) -> Vec<CoefficientSystem<Rational>> {
    let mut out = vec![make_constant(1, window), make_constant(2, window), make_sign_zero(window)];
    for lam in ["1", "2", "1,1"] {
        if let Ok(f) = make_specht_pullback(&lam.parse().unwrap(), window) {
            out.push(f);
        }
    }
    out
}

fn key(v: Verdict, degree: Option<i64>, at: Option<usize>) -> (i64, usize) {
    match v {
        Verdict::ExactOnWindow => (degree.unwrap(), at.unwrap()),
        _ => (i64::MAX, usize::MAX),
    }
}

#[test]
fn conjugation_preserves_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for f in rational_presets(6) {
        let base = degree_report(&f, 3, 6).unwrap();
        for _ in 0..3 {
            let g = random_conjugate(&f, &mut rng);
            assert!(g.validate().valid, "{}", f.name());
            assert!(g.suspend().unwrap().validate().valid);
            assert_eq!(g.triviality_violation(3), None);
            let r = degree_report(&g, 3, 6).unwrap();
            assert_eq!((r.verdict, r.degree, r.at), (base.verdict, base.degree, base.at), "{}", f.name());
            assert_eq!(g.kernel().unwrap().dims(), f.kernel().unwrap().dims());
            assert_eq!(g.cokernel().unwrap().dims(), f.cokernel().unwrap().dims());
        }
    }
}

#[test]
fn direct_sums_take_the_worse_degree() {
    let presets = rational_presets(6);
    for a in &presets {
        for b in &presets {
            if a.kind() != b.kind() {
                assert!(a.direct_sum(b).is_err());
                continue;
            }
            let s = a.direct_sum(b).unwrap();
            assert!(s.validate().valid);
            assert!(s.suspend().unwrap().validate().valid);
            let ra = degree_report(a, 3, 6).unwrap();
            let rb = degree_report(b, 3, 6).unwrap();
            let rs = degree_report(&s, 3, 6).unwrap();
            let (ka, kb, ks) = (key(ra.verdict, ra.degree, ra.at), key(rb.verdict, rb.degree, rb.at), key(rs.verdict, rs.degree, rs.at));
            assert_eq!(ks.0, ka.0.max(kb.0), "{} + {}", a.name(), b.name());
        }
    }
}

#[test]
fn degree_is_monotone_in_the_window() {
    for f in rational_presets(8) {
        let mut last: Option<usize> = None;
        for w in 2..=8 {
            let r = degree_report(&f, 3, w).unwrap();
            assert!(r.replays());
            if r.verdict == Verdict::ExactOnWindow {
                let at = r.at.unwrap();
                assert!(last.is_none_or(|prev| prev <= at), "{} at {}: {:?} then {}", f.name(), w, last, at);
                last = Some(at);
            }
        }
    }
}

#[test]
fn suspensions_of_presets_compare() {
    for f in rational_presets(7) {
        for i in 1..=3 {
            let rows = compare_suspensions(&f, i).unwrap();
            assert!(rows.iter().all(|r| r.pass()), "{} i={}: {:?}", f.name(), i, rows);
        }
    }
    let b = make_burau(6);
    for i in 1..=2 {
        assert!(compare_suspensions(&b, i).unwrap().iter().all(|r| r.pass()));
    }
}

#[test]
fn suspension_keeps_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for f in rational_presets(7) {
        let mut g = random_conjugate(&f, &mut rng);
        for _ in 0..4 {
            g = g.suspend().unwrap();
            assert!(g.validate().valid);
            assert_eq!(g.triviality_violation(3), None);
        }
    }
}

#[test]
fn quotient_maps_split_the_cokernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let r = rng.gen_range(1..6);
        let c = rng.gen_range(0..=r);
        let rows = (0..r).map(|_| (0..c).map(|_| rat(rng.gen_range(-2..=2), 1)).collect()).collect();
        let s = Matrix::from_rows(rows);
        let (q, l) = quotient_maps(&s);
        assert!(q.mul(&s).is_zero());
        assert!(q.mul(&l).is_identity());
        assert_eq!(q.rows(), r - s.rank());
    }
}

#[test]
fn preset_lookup_and_json() {
    let b = AnySystem::preset("burau", 4).unwrap();
    assert_eq!(b.to_json()["name"], "burau");
    let r = b.degree_report(3, 4).unwrap();
    assert_eq!((r.degree, r.at), (Some(1), Some(0)));
    assert!(AnySystem::preset("specht:2", 3).is_err());
    assert!(AnySystem::preset("constant:x", 3).is_err());
}

#[test]
fn broken_systems_are_flagged() {
    let f = make_constant(1, 4);
    let rho = (0..=4).map(|n| (1..n).map(|_| Matrix::<Rational>::from_i64(&[&[2]])).collect()).collect();
    let structure = (0..4).map(|_| Matrix::identity(1)).collect();
    let bad = CoefficientSystem::new("bad", f.kind(), f.dims().to_vec(), rho, structure).unwrap();
    let v = bad.validate();
    assert!(!v.valid);
    assert!(v.first_violation().is_some());
    assert_eq!(degree_report(&bad, 3, 4).unwrap().verdict, Verdict::Inconsistent);
}
