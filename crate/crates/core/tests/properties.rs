//! Randomized invariants of the partition, Levi and matrix layers.

use orbit_resolve::exact::{int, ExactMatrix};
use orbit_resolve::oracle::{build_algebra, jordan_type, nilpotent_of_jordan_type};
use orbit_resolve::partitions::{all_partitions, dual_partition, is_valid_nilpotent_partition};
use orbit_resolve::polarizations::{compositions, levi_class_of, levi_to_pai, pai_membership, pai_q, FlagType};
use orbit_resolve::{Family, LeviClass, LieTypeRank, Partition};
use proptest::prelude::*;

fn partition(max_total: usize) -> impl Strategy<Value = Partition> {
    (1..=max_total)
        .prop_flat_map(|n| proptest::sample::select(all_partitions(n)))
}

fn partition_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (1usize..=12).prop_flat_map(|n| {
        let all = all_partitions(n);
        (proptest::sample::select(all.clone()), proptest::sample::select(all))
    })
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=12).map(|n| all_partitions(n).len()).collect();
    assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

#[test]
fn dual_is_an_antitone_involution_exhaustively() {
    for n in 1..=12 {
        let all = all_partitions(n);
        for a in &all {
            let da = dual_partition(a);
            assert_eq!(da.total(), n);
            assert_eq!(&dual_partition(&da), a);
            for b in &all {
                if a.dominates(b) {
                    assert!(dual_partition(b).dominates(&da), "{a} >= {b}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn dual_involution(p in partition(16)) {
        let d = dual_partition(&p);
        prop_assert_eq!(d.total(), p.total());
        prop_assert_eq!(d.len(), p.largest());
        prop_assert_eq!(dual_partition(&d), p);
    }

    #[test]
    fn dominance_antitone((a, b) in partition_pair()) {
        if a.dominates(&b) {
            prop_assert!(dual_partition(&b).dominates(&dual_partition(&a)));
        }
        if a.dominates(&b) && b.dominates(&a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn text_round_trip(p in partition(10), fam in 0usize..4, rank in 2usize..9) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p.clone());
        let family = [Family::A, Family::B, Family::C, Family::D][fam];
        let t = LieTypeRank::new(family, rank).unwrap();
        prop_assert_eq!(t.to_string().parse::<LieTypeRank>().unwrap(), t);
        let ft = FlagType::new(p.parts().to_vec(), false).unwrap();
        prop_assert_eq!(ft.to_string().parse::<FlagType>().unwrap(), ft);
    }

    #[test]
    fn type_a_levi_ignores_block_order(n in 1usize..8, pick in any::<proptest::sample::Index>(), seed in any::<u64>()) {
        let t = LieTypeRank::new(Family::A, n.max(2) - 1).unwrap();
        let comps = compositions(t.ambient_dim());
        let ft = pick.get(&comps).clone();
        let mut blocks = ft.blocks().to_vec();
        // Deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..blocks.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            blocks.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = FlagType::new(blocks, false).unwrap();
        prop_assert_eq!(levi_class_of(t, &ft), levi_class_of(t, &shuffled));
    }

    #[test]
    fn symplectic_levi_encoding(gl in proptest::collection::vec(1usize..4, 0..4), r in 0usize..4) {
        let n = gl.iter().sum::<usize>() + r;
        prop_assume!(n >= 1);
        let t = LieTypeRank::new(Family::C, n).unwrap();
        let mut gl_blocks = gl.clone();
        gl_blocks.sort_unstable_by(|a, b| b.cmp(a));
        let lc = LeviClass { gl_blocks, residual_rank: r };
        let pi = levi_to_pai(t, &lc);
        prop_assert_eq!(pi.iter().sum::<usize>(), 2 * n);
        prop_assert_eq!(pai_q(t, &pi), 2 * r);
        prop_assert!(pai_membership(2 * n, 2 * r, &pi).unwrap());
        let mut reversed = pi.clone();
        reversed.reverse();
        prop_assert!(pai_membership(2 * n, 2 * r, &reversed).unwrap());
    }

    #[test]
    fn jordan_type_is_conjugation_invariant(
        p in partition(6),
        entries in proptest::collection::vec(-3i64..=3, 36),
    ) {
        let n = p.total();
        let x = ExactMatrix::nilpotent_jordan(p.parts());
        let s = ExactMatrix::from_fn(n, |i, j| int(entries[i * 6 + j] + if i == j { 7 } else { 0 }));
        let Some(inv) = s.inverse() else { return Ok(()); };
        let y = &(&s * &x) * &inv;
        prop_assert_eq!(jordan_type(&y).unwrap(), p);
    }

    #[test]
    fn constructed_nilpotents_have_requested_type(fam in 1usize..4, rank in 1usize..5, pick in any::<proptest::sample::Index>()) {
        let family = [Family::A, Family::B, Family::C, Family::D][fam];
        prop_assume!(!(family == Family::D && rank < 2));
        let t = LieTypeRank::new(family, rank).unwrap();
        let alg = build_algebra(t);
        let all = all_partitions(t.ambient_dim());
        let d = pick.get(&all);
        let x = nilpotent_of_jordan_type(&alg, d.parts());
        prop_assert_eq!(x.is_some(), is_valid_nilpotent_partition(t, d).unwrap());
        if let Some(x) = x {
            prop_assert_eq!(&jordan_type(&x).unwrap(), d);
        }
    }
}
