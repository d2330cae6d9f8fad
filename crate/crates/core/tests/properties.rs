mod common;

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;

use symdyn_core::avoidance::{bookkeeping, solve_prefix, AvoidanceInstance, SolveOutcome};
use symdyn_core::construct::{proximal_k_point, verify_syndetic_zeros, KExampleParams};
use symdyn_core::independence::{is_independence_set, sequence_entropy_bracket, Budget, CylinderTuple};
use symdyn_core::sets::{
    block_witness, densities, difference_set, find_translate, fss_construct, ip_generate, BlockWitness, SubsetWindow,
};
use symdyn_core::subshift::{Cylinder, Subshift, SubshiftSpec};
use symdyn_core::syndetic::{build_obstruction, derive_sets, DEFAULT_SCALE};
use symdyn_core::word::{code_word, Word};

fn window(elements: BTreeSet<u64>, horizon: u64) -> SubsetWindow {
    SubsetWindow::new(elements.into_iter().filter(|&e| e < horizon).collect(), horizon).unwrap()
}

fn word_strategy(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 2..=max)
}

fn sft_strategy() -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(word_strategy(3), 1..=3)
}

fn sft(forbidden: &[Vec<u8>]) -> Option<Subshift> {
    let words = forbidden.iter().map(|w| Word::new(w.clone())).collect();
    Subshift::new(SubshiftSpec::Sft { p: 2, forbidden: words }).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn window_text_round_trips(elements in prop::collection::btree_set(0u64..200, 0..30), extra in 0u64..20) {
        let h = elements.iter().max().map_or(0, |m| m + 1) + extra;
        let w = window(elements, h);
        prop_assert_eq!(w.to_string().parse::<SubsetWindow>().unwrap(), w);
    }

    #[test]
    fn arithmetic_density_is_exact(step in 1u64..12, offset in 0u64..12, reps in 2u64..20) {
        let h = step * reps;
        let offset = offset % step;
        let s = SubsetWindow::arithmetic(step, offset, h).unwrap();
        let r = densities(&s, step).unwrap();
        let d = Ratio::new(1, step);
        prop_assert_eq!((r.lower, r.upper, r.banach_upper), (d, d, d));
    }

    #[test]
    fn ip_recursion(gens in prop::collection::vec(1u64..500, 1..=9), a in 1u64..500) {
        let base = ip_generate(&gens).unwrap();
        let mut with_a = gens.clone();
        with_a.insert(0, a);
        let grown: BTreeSet<u64> = ip_generate(&with_a).unwrap().iter().collect();
        prop_assert!(base.iter().all(|s| grown.contains(&s)));
        prop_assert!(base.iter().all(|s| grown.contains(&(s + a))));
        prop_assert!(grown.contains(&a));
    }

    #[test]
    fn difference_set_ignores_translation(elements in prop::collection::btree_set(0u64..100, 1..15), m in 0u64..100) {
        let f = window(elements, 100);
        let shifted = f.translate(m);
        let (a, b) = (difference_set(&f).unwrap(), difference_set(&shifted).unwrap());
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn translate_guarantee_holds(seed in any::<u64>(), k in 1u64..8) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let elements: Vec<u64> = (0..400).filter(|_| rng.gen_bool(0.5)).collect();
        let s = SubsetWindow::new(elements, 400).unwrap();
        let f = SubsetWindow::interval(0..20);
        let r = find_translate(&s, 0..400, &f, k).unwrap();
        if r.guaranteed {
            prop_assert!(r.success);
        }
        let p = r.translate;
        let recount = f.iter().filter(|&x| {
            let y = x as i64 + p;
            (0..400).contains(&y) && s.contains(y as u64)
        }).count() as u64;
        prop_assert_eq!(recount, r.count);
    }

    #[test]
    fn block_translates_recheck(elements in prop::collection::btree_set(0u64..150, 0..80), depth in 1usize..5) {
        let s = window(elements, 150);
        let f = SubsetWindow::new(vec![0, 2, 3, 7, 8], 9).unwrap();
        if let BlockWitness::Found(b) = block_witness(&s, &f, depth).unwrap() {
            prop_assert!(b.windows(2).all(|w| w[0] <= w[1]));
            for (j, &bj) in b.iter().enumerate() {
                for &p in &f.elements()[..=j] {
                    let x = bj + p as i64;
                    prop_assert!(x >= 0 && s.contains(x as u64));
                }
            }
        }
    }

    #[test]
    fn sft_language_is_factorial_and_extendable(forbidden in sft_strategy(), n in 1usize..8) {
        let Some(shift) = sft(&forbidden) else { return Ok(()) };
        let long = shift.language(n + 1).unwrap();
        let short: BTreeSet<Word> = shift.language(n).unwrap().into_iter().collect();
        let prefixes: BTreeSet<Word> = long.iter().map(|w| Word::new(w.symbols()[..n].to_vec())).collect();
        let suffixes: BTreeSet<Word> = long.iter().map(|w| w.shifted(1)).collect();
        prop_assert_eq!(&prefixes, &short);
        prop_assert!(suffixes.is_subset(&short));
        let oracle: BTreeSet<Word> = common::sft_words(2, &forbidden, n).into_iter().map(Word::new).collect();
        prop_assert_eq!(&short, &oracle);
    }

    #[test]
    fn zero_is_a_return_time(forbidden in sft_strategy(), u in word_strategy(4)) {
        let Some(shift) = sft(&forbidden) else { return Ok(()) };
        let u = Word::new(u);
        if !shift.is_allowed(&u).unwrap() {
            return Ok(());
        }
        let c = Cylinder::at_zero(u);
        prop_assert!(shift.return_times(&c, &c, 4).unwrap().contains(0));
    }

    #[test]
    fn full_shift_returns_after_the_base(u in word_strategy(4), v in word_strategy(4)) {
        let shift = Subshift::new(SubshiftSpec::full(2)).unwrap();
        let n = u.len() as u64;
        let times = shift
            .return_times(&Cylinder::at_zero(Word::new(u)), &Cylinder::at_zero(Word::new(v)), 12)
            .unwrap();
        prop_assert_eq!(times.count_in(n..12), 12 - n);
    }

    #[test]
    fn minimality_is_monotone(n in 1usize..4, r in 1usize..10, extra in 1usize..4) {
        let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
        let r = r.max(n);
        if fib.is_minimal_window(n, r).unwrap() {
            prop_assert!(fib.is_minimal_window(n, r + extra).unwrap());
        }
    }

    #[test]
    fn hereditary_and_translation_invariant(forbidden in sft_strategy(), f in prop::collection::btree_set(0u64..8, 1..5), mask in any::<u8>(), m in 0u64..4) {
        let Some(shift) = sft(&forbidden) else { return Ok(()) };
        let Ok(tuple) = CylinderTuple::new(shift, vec![vec![Word::new(vec![0])], vec![Word::new(vec![1])]]) else {
            return Ok(());
        };
        let f: Vec<u64> = f.into_iter().collect();
        let set = SubsetWindow::new(f.clone(), 12).unwrap();
        let verdict = is_independence_set(&tuple, &set, Budget::default()).unwrap().is_independent();
        if verdict {
            let sub: Vec<u64> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            let sub = SubsetWindow::new(sub, 12).unwrap();
            prop_assert!(is_independence_set(&tuple, &sub, Budget::default()).unwrap().is_independent());
        }
        let moved = SubsetWindow::new(f.iter().map(|x| x + m).collect(), 12).unwrap();
        prop_assert_eq!(is_independence_set(&tuple, &moved, Budget::default()).unwrap().is_independent(), verdict);
    }

    #[test]
    fn reduction_matches_literal_definition(
        forbidden in sft_strategy(),
        f in prop::collection::btree_set(0u64..6, 1..=5),
        targets in prop::collection::vec(prop::collection::vec(word_strategy(2), 1..=2), 1..=2),
    ) {
        let Some(shift) = sft(&forbidden) else { return Ok(()) };
        let words: Vec<Vec<Word>> = targets.iter().map(|t| t.iter().map(|w| Word::new(w.clone())).collect()).collect();
        let Ok(tuple) = CylinderTuple::new(shift, words) else { return Ok(()) };
        let f: Vec<u64> = f.into_iter().collect();
        let span = *f.last().unwrap() as usize + 2;
        let language = common::sft_words(2, &forbidden, span);
        let expected = common::literal_independent(&language, &targets, &f);
        let set = SubsetWindow::new(f, span as u64).unwrap();
        prop_assert_eq!(is_independence_set(&tuple, &set, Budget::default()).unwrap().is_independent(), expected);
    }

    #[test]
    fn entropy_bracket_is_ordered(forbidden in sft_strategy(), depth in 1usize..7) {
        let Some(shift) = sft(&forbidden) else { return Ok(()) };
        let f = SubsetWindow::arithmetic(2, 0, 14).unwrap();
        let cyl = [Word::new(vec![0]), Word::new(vec![1])];
        if let Ok(r) = sequence_entropy_bracket(&shift, &cyl, &f, depth, Budget::default()) {
            prop_assert!(r.lower <= r.upper + 1e-12);
        }
    }

    #[test]
    fn full_shift_entropy_upper_is_log_n(p in 2usize..4, depth in 1usize..6) {
        let shift = Subshift::new(SubshiftSpec::full(p)).unwrap();
        let cyl: Vec<Word> = (0..p as u8).map(|c| Word::new(vec![c])).collect();
        let f = SubsetWindow::interval(0..8);
        let r = sequence_entropy_bracket(&shift, &cyl, &f, depth, Budget::default()).unwrap();
        prop_assert!((r.upper - (p as f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn solver_output_scans_clean(seed in any::<u64>(), l in 1usize..3) {
        let m = 4 * l + 2;
        let len = 300;
        let inst = AvoidanceInstance::generated(2, m, l, len - m + 1, seed).unwrap();
        let SolveOutcome::Solved { x, .. } = solve_prefix(&inst, len, 2 * m).unwrap() else {
            return Err(TestCaseError::fail("guaranteed instance exhausted"));
        };
        for n in 0..inst.positions() {
            let w = &x.symbols()[n..n + m];
            prop_assert!(inst.words_at(n).iter().all(|f| f.symbols() != w));
        }
        let again = solve_prefix(&inst, len, 2 * m).unwrap();
        prop_assert_eq!(again.word(), Some(&x));
        let bk = bookkeeping(&inst, 60).unwrap();
        prop_assert!(bk.b.iter().all(|b| !b.is_full()));
    }

    #[test]
    fn bookkeeping_matches_no_valid_past(seed in any::<u64>(), m in 1usize..=4, l in 1usize..=2) {
        let n_max = 8;
        let inst = AvoidanceInstance::generated(2, m, l, n_max + 1, seed).unwrap();
        let bk = bookkeeping(&inst, n_max + 1).unwrap();
        let forbidden: Vec<Vec<Vec<u8>>> =
            (0..=n_max).map(|n| inst.words_at(n).into_iter().map(Word::into_symbols).collect()).collect();
        for n in 0..=n_max {
            let got: BTreeSet<Vec<u8>> = bk.b[n].iter().map(|c| code_word(c, m, 2).into_symbols()).collect();
            prop_assert_eq!(got, common::no_valid_past(2, m, &forbidden, n));
        }
    }

    #[test]
    fn obstruction_sets_have_at_most_l_words(a in prop::collection::vec(0u8..2, 12), gaps in prop::collection::vec(1u64..3, 3)) {
        let mut f = vec![0u64];
        for g in &gaps {
            f.push(f.last().unwrap() + g);
        }
        let (l, m) = (2, 6);
        let sets = derive_sets(&Word::new(a), &f, l, m).unwrap();
        prop_assert!(sets.iter().all(|s| s.len() <= l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fss_has_no_three_ap(blocks in 1usize..=6, growth in 3u64..6) {
        let r = fss_construct(blocks, growth).unwrap();
        prop_assert!(!common::has_three_ap(r.set.elements()));
    }

    #[test]
    fn k_runs_keep_their_invariants(run_len in 0usize..6, tail in 1500usize..1800, second in 1u8..3) {
        let mut y = vec![1u8, second];
        y.extend(std::iter::repeat_n(0, run_len));
        y.extend([2, 1]);
        y.extend(std::iter::repeat_n(0, tail));
        let mut params = KExampleParams::toy();
        params.y = Word::new(y);
        params.depth = 3;
        let run = proximal_k_point(&params).unwrap();
        prop_assert_eq!(run.level(1).unwrap().a.to_string(), "10");
        for pair in run.levels.windows(2) {
            let s = pair[0].step.as_ref().unwrap();
            let n = pair[0].n();
            let n_m = run.level(s.m).unwrap().n();
            prop_assert_eq!(pair[1].n(), 4 * n + (s.b - s.t + 1) * 2 * n_m);
        }
        prop_assert!(verify_syndetic_zeros(run.x_prefix(), &run.levels).iter().all(|r| r.passed()));
    }
}

#[test]
fn certificates_are_deterministic() {
    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    let evens = SubsetWindow::arithmetic(2, 0, 40).unwrap();
    let a = build_obstruction(&fib, &evens, DEFAULT_SCALE, 20).unwrap();
    let b = build_obstruction(&fib, &evens, DEFAULT_SCALE, 20).unwrap();
    assert_eq!(a.to_string(), b.to_string());
}
