use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homstab::braid::BraidWord;
use homstab::stabgroupoid::{
    check_injectivity, check_local_cancellation, delta_section, genus, stable_genus, ub_compose, ub_to_fi, AnyFamily,
    BraidFamily, FiniteGroup, GenusValue, ModuleDescriptor, PartialInjection, SymmetricFamily, TableFamily,
    UBMorphism, WreathFamily, PRESETS,
};

fn random_braid(strands: usize, rng: &mut ChaCha8Rng) -> BraidWord {
    if strands < 2 {
        return BraidWord::identity(strands.max(1));
    }
    let len = rng.gen_range(0..8);
    BraidWord::random(strands, len, rng)
}

fn random_morphism(source: usize, target: usize, rng: &mut ChaCha8Rng) -> UBMorphism {
    UBMorphism::new(source, target, random_braid(target + 1, rng)).unwrap()
}

/// Same coset, different representative: right multiply by the parabolic.
fn reselect(f: &UBMorphism, rng: &mut ChaCha8Rng) -> UBMorphism {
    let k = f.parabolic();
    let h = if k >= 2 { random_braid(k, rng).pad(f.source() + 1) } else { BraidWord::identity(f.target() + 1) };
    UBMorphism::new(f.source(), f.target(), f.representative().mul(&h).unwrap()).unwrap()
}

#[test]
fn composition_is_well_defined_on_cosets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let l = rng.gen_range(0..3);
        let q = l + rng.gen_range(0..3);
        let p = q + rng.gen_range(0..3);
        let f = random_morphism(l, q, &mut rng);
        let g = random_morphism(q, p, &mut rng);
        let (f2, g2) = (reselect(&f, &mut rng), reselect(&g, &mut rng));
        assert!(f.coset_equal(&f2).unwrap());
        let a = ub_compose(&f, &g).unwrap();
        let b = ub_compose(&f2, &g2).unwrap();
        assert!(a.coset_equal(&b).unwrap(), "{} vs {}", a, b);
        assert_eq!(ub_to_fi(&f), ub_to_fi(&f2));
    }
}

#[test]
fn composition_is_associative_and_unital() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let a = rng.gen_range(0..2);
        let b = a + rng.gen_range(0..2);
        let c = b + rng.gen_range(0..2);
        let d = c + rng.gen_range(0..2);
        let f = random_morphism(a, b, &mut rng);
        let g = random_morphism(b, c, &mut rng);
        let h = random_morphism(c, d, &mut rng);
        let left = ub_compose(&ub_compose(&f, &g).unwrap(), &h).unwrap();
        let right = ub_compose(&f, &ub_compose(&g, &h).unwrap()).unwrap();
        assert!(left.coset_equal(&right).unwrap());
        assert!(ub_compose(&UBMorphism::identity(a), &f).unwrap().coset_equal(&f).unwrap());
        assert!(ub_compose(&f, &UBMorphism::identity(b)).unwrap().coset_equal(&f).unwrap());
    }
}

#[test]
fn forgetful_functor_respects_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let l = rng.gen_range(0..3);
        let q = l + rng.gen_range(0..3);
        let p = q + rng.gen_range(0..3);
        let f = random_morphism(l, q, &mut rng);
        let g = random_morphism(q, p, &mut rng);
        let fg = ub_compose(&f, &g).unwrap();
        assert_eq!(ub_to_fi(&fg), ub_to_fi(&f).then(&ub_to_fi(&g)).unwrap());
        assert!(ub_to_fi(&f).is_total());
    }
    assert_eq!(ub_to_fi(&UBMorphism::identity(3)), PartialInjection::identity(4));
}

#[test]
fn delta_sections_lift_cofaces() {
    for p in 1..=5 {
        for i in 0..=p {
            let d = delta_section(p, i).unwrap();
            assert_eq!((d.source(), d.target()), (p - 1, p));
            assert_eq!(ub_to_fi(&d), PartialInjection::coface(p, i), "p = {}, i = {}", p, i);
        }
    }
    assert!(delta_section(0, 0).is_err());
    assert!(delta_section(3, 4).is_err());
}

#[test]
fn mismatched_composition_is_rejected() {
    let f = UBMorphism::identity(1);
    let g = UBMorphism::identity(2);
    assert!(ub_compose(&f, &g).is_err());
    assert!(UBMorphism::new(3, 2, BraidWord::identity(3)).is_err());
    assert!(UBMorphism::new(1, 2, BraidWord::identity(4)).is_err());
}

#[test]
fn shipped_families_are_injective() {
    assert!(check_injectivity(&SymmetricFamily, 6, 0, 1).injective);
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein()] {
        let r = check_injectivity(&WreathFamily::new(g), 5, 0, 1);
        assert!(r.injective && r.exact, "{}", r.family);
    }
    let b = check_injectivity(&BraidFamily { sample_length: 10 }, 6, 200, 7);
    assert!(b.injective && !b.exact);
    assert!(check_injectivity(&TableFamily::trivial(6), 6, 0, 1).injective);
    let broken = check_injectivity(&TableFamily::broken_injectivity(), 6, 0, 1);
    assert!(!broken.injective);
    assert_eq!(broken.rows.iter().find(|r| !r.injective).unwrap().degree, 1);
}

fn cancels(name: &str, window: usize) -> bool {
    let d = ModuleDescriptor::preset(name, window).unwrap();
    (0..d.objects.len()).all(|a| check_local_cancellation(&d.objects, a, 6).unwrap().holds)
}

#[test]
fn shipped_object_tables_cancel() {
    for name in PRESETS.iter().filter(|&&p| p != "uncancellative") {
        assert!(cancels(name, 6), "{}", name);
    }
    assert!(!cancels("uncancellative", 6));
    let d = ModuleDescriptor::preset("uncancellative", 4).unwrap();
    let p = d.objects.find("P").unwrap();
    let r = check_local_cancellation(&d.objects, p, 4).unwrap();
    assert!(!r.holds);
    assert_eq!(r.failure.unwrap().y, "Q");
}

#[test]
fn genus_of_degree_objects() {
    let d = ModuleDescriptor::preset("sym", 6).unwrap();
    for n in 0..=6 {
        assert_eq!(genus(&d.objects, n, 10).unwrap(), GenusValue::Finite(n as u32));
    }
    assert_eq!(genus(&d.objects, 5, 3).unwrap(), GenusValue::AtLeast(3));
    assert_eq!(stable_genus(&d.objects, 2, 3).unwrap(), GenusValue::Finite(2));

    let chain = ModuleDescriptor::preset("chain", 4).unwrap();
    for k in 0..chain.objects.len() {
        assert_eq!(genus(&chain.objects, k, 10).unwrap(), GenusValue::Finite(k as u32));
    }
    let loc = ModuleDescriptor::preset("localized", 4).unwrap();
    let l = loc.objects.find("L").unwrap();
    assert_eq!(genus(&loc.objects, l, 5).unwrap(), GenusValue::Infinite);
    assert!(genus(&loc.objects, 99, 5).is_err());
    assert!(matches!(d.family, AnyFamily::Symmetric(_)));
}
