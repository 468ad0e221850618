use proptest::prelude::*;

use homstab::braid::{block_braiding, braid_equal, permutation_of, BraidWord, Permutation};

fn word(strands: usize) -> impl Strategy<Value = BraidWord> {
    let g = strands as i32 - 1;
    prop::collection::vec((1..=g, any::<bool>()), 0..10)
        .prop_map(move |v| BraidWord::new(strands, v.into_iter().map(|(a, s)| if s { a } else { -a }).collect()).unwrap())
}

fn sized_word() -> impl Strategy<Value = BraidWord> {
    (2usize..7).prop_flat_map(word)
}

/// Applies one braid relation somewhere in `w`, if it fits.
fn apply_relation(w: &[i32], kind: u8, at: usize, gen: i32, strands: usize) -> Vec<i32> {
    let g = strands as i32 - 1;
    let pos = at % (w.len() + 1);
    let mut out = w.to_vec();
    let a = 1 + (gen.rem_euclid(g));
    match kind % 3 {
        0 => {
            out.splice(pos..pos, [a, -a]);
        }
        1 if a < g => {
            out.splice(pos..pos, [a, a + 1, a, -(a + 1), -a, -(a + 1)]);
        }
        2 if a + 2 <= g => {
            out.splice(pos..pos, [a, a + 2, -a, -(a + 2)]);
        }
        _ => {
            out.splice(pos..pos, [-a, a]);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relation_insertion_preserves_braid(b in sized_word(), kind in any::<u8>(), at in any::<usize>(), gen in any::<i32>()) {
        let w = apply_relation(b.letters(), kind, at, gen, b.strands());
        let b2 = BraidWord::new(b.strands(), w).unwrap();
        prop_assert!(braid_equal(&b, &b2).unwrap());
    }

    #[test]
    fn inverse_cancels(b in sized_word()) {
        let id = BraidWord::identity(b.strands());
        prop_assert!(braid_equal(&b.mul(&b.inverse()).unwrap(), &id).unwrap());
        prop_assert!(braid_equal(&b.inverse().mul(&b).unwrap(), &id).unwrap());
    }

    #[test]
    fn sigma_squared_is_not_trivial(b in sized_word()) {
        let s = BraidWord::sigma(b.strands(), 1).unwrap();
        let c = b.mul(&s).unwrap().mul(&s).unwrap();
        prop_assert!(!braid_equal(&b, &c).unwrap());
        prop_assert_eq!(permutation_of(&b), permutation_of(&c));
    }

    #[test]
    fn permutation_is_multiplicative((a, b) in (2usize..7).prop_flat_map(|n| (word(n), word(n)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(permutation_of(&ab), permutation_of(&a).then(&permutation_of(&b)));
    }

    #[test]
    fn shift_and_pad_are_homomorphisms((a, b) in (2usize..5).prop_flat_map(|n| (word(n), word(n))), off in 0usize..3) {
        let n = a.strands();
        let ab = a.mul(&b).unwrap();
        let lhs = ab.shift(off, n + off + 1).unwrap();
        let rhs = a.shift(off, n + off + 1).unwrap().mul(&b.shift(off, n + off + 1).unwrap()).unwrap();
        prop_assert!(braid_equal(&lhs, &rhs).unwrap());
        prop_assert!(braid_equal(&ab.pad(off), &a.pad(off).mul(&b.pad(off)).unwrap()).unwrap());
    }

    #[test]
    fn hexagons(i in 0usize..5, j in 0usize..5, k in 1usize..5) {
        let tot = i + j + k;
        let lhs = block_braiding(i + k, j);
        let rhs = block_braiding(k, j).pad(i).mul(&block_braiding(i, j).shift(k, tot).unwrap()).unwrap();
        prop_assert!(braid_equal(&lhs, &rhs).unwrap());
        let lhs = block_braiding(i, j + k);
        let rhs = block_braiding(i, k).shift(j, tot).unwrap().mul(&block_braiding(i, j).pad(k)).unwrap();
        prop_assert!(braid_equal(&lhs, &rhs).unwrap());
    }
}

#[test]
fn braiding_realizes_block_swap() {
    for i in 0..=5 {
        for j in 0..=5 {
            assert_eq!(permutation_of(&block_braiding(i, j)).inverse(), Permutation::block_swap(i, j), "({}, {})", i, j);
        }
    }
}

#[test]
fn braiding_with_one_strand_extends() {
    for i in 1..=6 {
        let lhs = BraidWord::sigma(i + 2, 1).unwrap().mul(&block_braiding(i, 1).shift(1, i + 2).unwrap()).unwrap();
        assert!(braid_equal(&lhs, &block_braiding(i + 1, 1)).unwrap(), "i = {}", i);
    }
}

#[test]
fn braiding_with_empty_block_is_trivial() {
    for i in 0..=4 {
        assert!(block_braiding(i, 0).is_empty());
        assert!(block_braiding(0, i).is_empty());
    }
}

#[test]
fn strand_mismatch_is_an_error() {
    let a = BraidWord::sigma(3, 1).unwrap();
    let b = BraidWord::sigma(4, 1).unwrap();
    assert!(a.mul(&b).is_err());
    assert!(braid_equal(&a, &b).is_err());
    assert!(BraidWord::new(3, vec![3]).is_err());
    assert!(BraidWord::new(3, vec![0]).is_err());
}
