mod support;

use dendric::{is_basis_of_free_group, is_free_family, Alphabet, GroupWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::nielsen::{group, nielsen};

fn check(family: &[Vec<i32>], k: usize) {
    let alphabet = Alphabet::from_chars(&"abc"[..k]).unwrap();
    let gens: Vec<GroupWord> = family.iter().map(|w| group(w)).collect();
    let expected = nielsen(family, k);
    assert_eq!(
        is_free_family(&gens, &alphabet),
        expected.free,
        "free {family:?} over {k}"
    );
    assert_eq!(
        is_basis_of_free_group(&gens, &alphabet),
        expected.basis,
        "basis {family:?} over {k}"
    );
}

#[test]
fn agrees_with_nielsen_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1500 {
        let k = rand::Rng::random_range(&mut rng, 1..=3);
        let family = support::random::family(&mut rng, k, 3, 10);
        check(&family, k);
    }
}

#[test]
fn known_families() {
    // {ab, aba, abac}
    check(&[vec![1, 2], vec![1, 2, 1], vec![1, 2, 1, 3]], 3);
    // {ab, ba} is free of rank 2 but misses a
    check(&[vec![1, 2], vec![2, 1]], 2);
    // {aa, ab, ba} is not free
    check(&[vec![1, 1], vec![1, 2], vec![2, 1]], 2);
    // a with a^-1 is dependent
    check(&[vec![1], vec![-1]], 1);
    check(&[vec![]], 1);
}
