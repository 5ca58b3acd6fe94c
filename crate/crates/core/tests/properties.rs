use gluecount::formula::count_closed;
use gluecount::gluing::{count_brute, glue, GluingWord, Slot};
use gluecount::recursion::{count_recursive, CountTable};
use gluecount::{Execution, SurfaceSignature};
use proptest::prelude::*;

/// A random valid word: `size` slots, `free` of them labelled 1..=free,
/// the rest paired according to a shuffled order.
fn word_strategy() -> impl Strategy<Value = GluingWord> {
    (1usize..=10)
        .prop_flat_map(|size| {
            let free = (0..=size).prop_filter("parity", move |f| (size - f) % 2 == 0);
            (Just(size), free)
        })
        .prop_flat_map(|(size, free)| {
            let order = Just((0..size).collect::<Vec<_>>()).prop_shuffle();
            (Just(size), Just(free), order)
        })
        .prop_map(|(size, free, order)| {
            let mut slots = vec![Slot::Free(0); size];
            for (k, &pos) in order[..free].iter().enumerate() {
                slots[pos] = Slot::Free(k as u16 + 1);
            }
            for (k, pair) in order[free..].chunks(2).enumerate() {
                slots[pair[0]] = Slot::Glued(k as u16);
                slots[pair[1]] = Slot::Glued(k as u16);
            }
            GluingWord::new(slots).expect("valid by construction")
        })
}

fn signature_strategy() -> impl Strategy<Value = SurfaceSignature> {
    (0usize..=2, prop::collection::vec(0usize..=5, 1..=4))
        .prop_filter("needs an edge", |(_, ns)| ns.iter().any(|&n| n > 0))
        .prop_map(|(g, ns)| SurfaceSignature::new(g, ns).unwrap())
}

proptest! {
    #[test]
    fn glue_is_rotation_invariant(word in word_strategy(), shift in 0usize..10) {
        let a = glue(&word).unwrap();
        let b = glue(&word.rotated(shift)).unwrap();
        prop_assert_eq!(a.genus, b.genus);
        prop_assert_eq!(a.puncture_count, b.puncture_count);
        prop_assert_eq!(a.euler_char, b.euler_char);
        prop_assert_eq!(&a.boundary_cycles, &b.boundary_cycles);
        prop_assert_eq!(a.implied_polygon_size(), word.len());
    }

    #[test]
    fn counts_are_symmetric(sig in signature_strategy(), seed in any::<u64>()) {
        let mut ns = sig.boundary_sizes().to_vec();
        let k = ns.len();
        ns.rotate_left(seed as usize % k);
        let other = SurfaceSignature::new(sig.genus(), ns).unwrap();
        prop_assert_eq!(count_closed(&sig).unwrap(), count_closed(&other).unwrap());
    }

    #[test]
    fn persisted_memo_is_transparent(sigs in prop::collection::vec(signature_strategy(), 1..6)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.txt");
        let mut memo = CountTable::new();
        let first: Vec<_> = sigs.iter().map(|s| count_recursive(s, &mut memo).unwrap()).collect();
        memo.save(&path).unwrap();
        let mut reloaded = CountTable::load_verified(&path).unwrap();
        prop_assert_eq!(&reloaded, &memo);
        for (sig, value) in sigs.iter().zip(&first) {
            prop_assert_eq!(&count_recursive(sig, &mut reloaded).unwrap(), value);
            prop_assert_eq!(&count_closed(sig).unwrap(), value);
        }
    }
}

#[test]
fn three_way_agreement_on_asymmetric_targets() {
    for (g, ns) in [
        (0, vec![1, 3]),
        (0, vec![3, 1]),
        (0, vec![2, 1, 1]),
        (1, vec![2, 1]),
        (0, vec![4, 1, 0]),
    ] {
        let sig = SurfaceSignature::new(g, ns).unwrap();
        let closed = count_closed(&sig).unwrap();
        let rec = count_recursive(&sig, &mut CountTable::new()).unwrap();
        let brute = count_brute(&sig, 12, Execution::Sequential).unwrap();
        assert_eq!(closed, rec, "{sig}");
        assert_eq!(closed, brute, "{sig}");
    }
}
