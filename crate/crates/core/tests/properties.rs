use proptest::prelude::*;

use minlab::alphabet::{kmers, one_hot, Alphabet, Kmer, Sequence};
use minlab::conv::{conv_layer, maxpool_layer, pool_layer, Pooling};
use minlab::hashing::{Extremum, GaussianFilter, KmerOrdering, MultiplyShiftHasher, SchemeKind};
use minlab::metrics::hamming;
use minlab::minimizer::{density, select_minimizers, TiePolicy};
use minlab::simulation::{tandem_repeat_of_unit, Substitution};

fn dna_seq(min: usize, max: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0u8..4, min..max).prop_map(|v| Sequence::from_indices(v, 4).unwrap())
}

fn gapped_seq(min: usize, max: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(prop::option::weighted(0.97, 0u8..4), min..max)
        .prop_map(|v| Sequence::from_options(v, 4).unwrap())
}

fn kmer(k: usize) -> impl Strategy<Value = Kmer> {
    prop::collection::vec(0u8..4, k).prop_map(|v| Kmer::new(v, 0))
}

fn ties() -> impl Strategy<Value = TiePolicy> {
    prop_oneof![
        Just(TiePolicy::Leftmost),
        Just(TiePolicy::Rightmost),
        Just(TiePolicy::PreferPrevious)
    ]
}

fn scheme() -> impl Strategy<Value = SchemeKind> {
    prop_oneof![
        Just(SchemeKind::MultiplyShiftMin),
        Just(SchemeKind::GaussianMax),
        Just(SchemeKind::LexicographicMin)
    ]
}

proptest! {
    #[test]
    fn one_hot_layout_and_injectivity(x in kmer(5), y in kmer(5)) {
        let a = Alphabet::dna();
        let (ex, ey) = (one_hot(&x, &a), one_hot(&y, &a));
        prop_assert_eq!(ex.ones(), 5);
        for (j, block) in ex.bits().chunks(4).enumerate() {
            prop_assert_eq!(block.iter().filter(|&&b| b).count(), 1);
            prop_assert!(block[x.symbols()[j] as usize]);
        }
        prop_assert_eq!(ex == ey, x.symbols() == y.symbols());
        prop_assert_eq!(ex.l1(&ey).unwrap(), 2 * hamming(&x, &y).unwrap());
    }

    #[test]
    fn hamming_is_a_metric(x in kmer(6), y in kmer(6), z in kmer(6)) {
        let d = |a: &Kmer, b: &Kmer| hamming(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y) == 0, x.symbols() == y.symbols());
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }

    #[test]
    fn kmer_count_on_gap_free(seq in dna_seq(0, 60), k in 1usize..8) {
        prop_assert_eq!(kmers(&seq, k).len(), (seq.len() + 1).saturating_sub(k));
    }

    #[test]
    fn windows_pick_an_extremum(seq in gapped_seq(30, 120), k in 1usize..6, w in 1usize..12,
                                s in scheme(), t in ties(), seed in any::<u64>()) {
        let o = s.ordering(4, k, seed);
        let Ok(sel) = select_minimizers(&seq, k, w, &o, t) else { return Ok(()) };
        let scores = o.scores(&seq, k).unwrap();
        for p in sel.picks() {
            prop_assert!(p.window <= p.position && p.position < p.window + w);
            prop_assert_eq!(scores[p.position], Some(p.score));
            for s in scores[p.window..p.window + w].iter().flatten() {
                prop_assert!(!o.sense().beats(s, &p.score));
            }
        }
        let mut pos: Vec<_> = sel.picks().iter().map(|p| p.position).collect();
        pos.sort_unstable();
        pos.dedup();
        prop_assert_eq!(sel.distinct_positions(), pos.as_slice());
    }

    #[test]
    fn density_bounds_on_gap_free(seq in dna_seq(40, 200), k in 1usize..8, w in 1usize..20,
                                  s in scheme(), t in prop_oneof![Just(TiePolicy::Leftmost), Just(TiePolicy::PreferPrevious)],
                                  seed in any::<u64>()) {
        prop_assume!(seq.len() >= k + w - 1);
        let sel = select_minimizers(&seq, k, w, &s.ordering(4, k, seed), t).unwrap();
        let d = density(&sel);
        // every window holds a pick and a pick covers at most w windows
        prop_assert!(d.distinct * w >= d.windows);
        prop_assert!(d.density <= 1.0);
    }

    #[test]
    fn dropping_first_symbol_only_changes_first_window(seq in dna_seq(60, 200), k in 2usize..8, w in 2usize..15,
                                                       hashed in any::<bool>(), t in prop_oneof![Just(TiePolicy::Leftmost), Just(TiePolicy::Rightmost)],
                                                       seed in any::<u64>()) {
        let o = if hashed { SchemeKind::MultiplyShiftMin } else { SchemeKind::GaussianMax }.ordering(4, k, seed);
        let full = select_minimizers(&seq, k, w, &o, t).unwrap();
        let tail = select_minimizers(&seq.slice(1, seq.len()), k, w, &o, t).unwrap();
        let a: Vec<usize> = full.distinct_positions().to_vec();
        let b: Vec<usize> = tail.distinct_positions().iter().map(|p| p + 1).collect();
        let first = full.picks()[0].position;
        for p in &a {
            prop_assert!(b.contains(p) || *p == first, "{p} lost");
        }
        prop_assert!(b.iter().all(|p| a.contains(p)));
    }

    #[test]
    fn negation_flips_extremum_but_keeps_selection(seq in gapped_seq(30, 120), k in 1usize..6, w in 1usize..12,
                                                   s in scheme(), t in ties(), seed in any::<u64>()) {
        let o = s.ordering(4, k, seed);
        let n = o.negated();
        prop_assert_eq!(n.sense(), o.sense().flipped());
        let (Ok(a), Ok(b)) = (select_minimizers(&seq, k, w, &o, t), select_minimizers(&seq, k, w, &n, t)) else {
            return Ok(());
        };
        let pa: Vec<_> = a.picks().iter().map(|p| (p.window, p.position)).collect();
        let pb: Vec<_> = b.picks().iter().map(|p| (p.window, p.position)).collect();
        prop_assert_eq!(pa, pb);
    }

    #[test]
    fn strided_pool_is_a_subsequence(seq in gapped_seq(30, 150), k in 1usize..6, w in 1usize..10,
                                     stride in 1usize..8, t in ties(), seed in any::<u64>()) {
        let f = GaussianFilter::new(4 * k, seed);
        let c = conv_layer(&seq, &f, k).unwrap();
        prop_assume!(c.scores.len() >= w);
        let one = maxpool_layer(&c, w, 1, TiePolicy::Leftmost).unwrap();
        let s = maxpool_layer(&c, w, stride, TiePolicy::Leftmost).unwrap();
        let expect: Vec<_> = one.windows.iter().filter(|p| p.start % stride == 0).copied().collect();
        prop_assert_eq!(s.windows, expect);
        // tie policies never change the pooled values
        let v = maxpool_layer(&c, w, 1, t).unwrap();
        prop_assert_eq!(v.maxima(), one.maxima());
    }

    #[test]
    fn negated_filter_min_pool_keeps_argmax(seq in gapped_seq(30, 150), k in 1usize..6, w in 1usize..10,
                                            t in ties(), seed in any::<u64>()) {
        let f = GaussianFilter::new(4 * k, seed);
        let c = conv_layer(&seq, &f, k).unwrap();
        prop_assume!(c.scores.len() >= w);
        let max = maxpool_layer(&c, w, 1, t).unwrap();
        let min = pool_layer(&conv_layer(&seq, &f.negated(), k).unwrap(), w, 1, t, Pooling::Min).unwrap();
        prop_assert_eq!(max.argmax(), min.argmax());
    }

    #[test]
    fn conv_maxpool_equals_gaussian_minimizers(seq in gapped_seq(30, 150), k in 1usize..9, w in 1usize..20,
                                               t in ties(), seed in any::<u64>()) {
        let f = GaussianFilter::new(4 * k, seed);
        match minlab::conv::equivalence_check(&seq, k, w, &f, t) {
            Ok(r) => prop_assert!(r.passed(), "{r:?}"),
            Err(minlab::error::Error::NoValidWindow { .. } | minlab::error::Error::InvalidParameter(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn other_symbol_substitution_always_changes(unit in prop::collection::vec(0u8..4, 1..10), seed in any::<u64>()) {
        let s = tandem_repeat_of_unit(&unit, 300, 1.0, Substitution::OtherSymbol, 4, seed).unwrap();
        for (i, c) in s.iter().enumerate() {
            prop_assert_ne!(c.unwrap(), unit[i % unit.len()]);
        }
    }

    #[test]
    fn orderings_are_deterministic(x in kmer(8), seed in any::<u64>()) {
        let a = Alphabet::dna();
        for s in [SchemeKind::MultiplyShiftMin, SchemeKind::GaussianMax] {
            let (o1, o2) = (s.ordering(4, 8, seed), s.ordering(4, 8, seed));
            prop_assert_eq!(o1.score(&x, &a).unwrap(), o2.score(&x, &a).unwrap());
        }
    }
}

#[test]
fn poly_a_picks_follow_tie_rules() {
    // every 3-mer of a poly-A run ties; 12 slots, w=4 -> 9 windows
    let seq = Sequence::from_indices(vec![0; 14], 4).unwrap();
    let o = KmerOrdering::gaussian(GaussianFilter::new(12, 5));
    let pos = |t| {
        select_minimizers(&seq, 3, 4, &o, t)
            .unwrap()
            .picks()
            .iter()
            .map(|p| p.position)
            .collect::<Vec<_>>()
    };
    assert_eq!(pos(TiePolicy::Leftmost), (0..9).collect::<Vec<_>>());
    assert_eq!(pos(TiePolicy::Rightmost), (3..12).collect::<Vec<_>>());
    assert_eq!(pos(TiePolicy::PreferPrevious), [3, 3, 3, 3, 7, 7, 7, 7, 11]);
    for t in [TiePolicy::Leftmost, TiePolicy::Rightmost, TiePolicy::PreferPrevious] {
        let r = minlab::conv::equivalence_check(&seq, 3, 4, &GaussianFilter::new(12, 5), t).unwrap();
        assert!(r.passed());
    }
}

#[test]
fn constant_sequence_density_per_policy() {
    // 49 A's, k=8: 42 k-mers, 24 windows
    let seq = Sequence::from_indices(vec![0; 49], 4).unwrap();
    let o = KmerOrdering::multiply_shift(MultiplyShiftHasher::new(8, 1));
    let d = |t| density(&select_minimizers(&seq, 8, 19, &o, t).unwrap()).distinct;
    assert_eq!(d(TiePolicy::Leftmost), 24);
    assert_eq!(d(TiePolicy::Rightmost), 24);
    // picks 18 for windows 0..=18, then 37 for windows 19..=23
    assert_eq!(d(TiePolicy::PreferPrevious), 2);
}

#[test]
fn extremum_flip_round_trips() {
    assert_eq!(Extremum::Min.flipped().flipped(), Extremum::Min);
}
