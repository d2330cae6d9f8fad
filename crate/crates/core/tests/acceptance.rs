//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p symdyn-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use symdyn_core::avoidance::{bookkeeping, solve_prefix, verify_bounds, AvoidanceInstance, SolveOutcome};
use symdyn_core::construct::{c_block, proximal_k_point, verify_syndetic_zeros, KExampleParams};
use symdyn_core::independence::{
    ip_independence_builder, is_independence_set, max_independence_within, sequence_entropy_bracket, Budget,
    CylinderTuple,
};
use symdyn_core::sets::{anti_ss_sparse, fss_construct, SubsetWindow};
use symdyn_core::subshift::{Subshift, SubshiftSpec};
use symdyn_core::syndetic::{build_obstruction, verify_certificate, ObstructionCertificate, Status, DEFAULT_SCALE};
use symdyn_core::word::{code_word, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn binary_tuple(spec: SubshiftSpec) -> CylinderTuple {
    CylinderTuple::new(Subshift::new(spec).unwrap(), vec![vec![w("0")], vec![w("1")]]).unwrap()
}

fn instances() -> Vec<AvoidanceInstance> {
    (0..100)
        .map(|seed| AvoidanceInstance::generated(2, 6, 1, 5000 - 6 + 1, seed).unwrap())
        .collect()
}

fn criterion_1() -> String {
    let start = Instant::now();
    for inst in instances() {
        let SolveOutcome::Solved { x, backtracks } = solve_prefix(&inst, 5000, 12).unwrap() else {
            panic!("seed {:?} exhausted", inst.seed());
        };
        assert_eq!(backtracks, 0, "seed {:?} needed backtracking", inst.seed());
        assert_eq!(x.len(), 5000);
        for n in 0..inst.positions() {
            let window = &x.symbols()[n..n + 6];
            assert!(
                inst.words_at(n).iter().all(|f| f.symbols() != window),
                "seed {:?}: forbidden window at {n}",
                inst.seed()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    format!("100 instances solved in {elapsed:.2?}")
}

fn criterion_2() -> String {
    for inst in instances() {
        let bk = bookkeeping(&inst, 500).unwrap();
        let (p, l, m) = (2, 1, 6);
        for n in 0..500 {
            assert!(p * bk.c[n].count() <= (n + 1) * l, "|C_{n}| too large");
            for k in 1..m {
                assert!(bk.d_count(n, m - k) <= (1 << (k - 1)) * l, "|D_{{{n},{}}}| too large", m - k);
            }
        }
        verify_bounds(&bk, &inst).unwrap();
    }
    let mut compared = 0;
    for m in 1..=4 {
        for l in 1..=2 {
            for seed in 0..6 {
                let inst = AvoidanceInstance::generated(2, m, l, 13, seed).unwrap();
                let bk = bookkeeping(&inst, 13).unwrap();
                let forbidden: Vec<Vec<Vec<u8>>> = (0..13)
                    .map(|n| inst.words_at(n).into_iter().map(Word::into_symbols).collect())
                    .collect();
                for n in 0..=12 {
                    let oracle = common::no_valid_past(2, m, &forbidden, n);
                    let got: std::collections::BTreeSet<Vec<u8>> =
                        bk.b[n].iter().map(|c| code_word(c, m, 2).into_symbols()).collect();
                    assert_eq!(got, oracle, "B_{n} differs for m={m} l={l} seed={seed}");
                    compared += 1;
                }
            }
        }
    }
    format!("bounds hold on 100 instances, {compared} B_n tables match the oracle")
}

fn criterion_3() -> String {
    let start = Instant::now();
    let full = max_independence_within(&binary_tuple(SubshiftSpec::full(2)), 14, Budget::default()).unwrap();
    assert_eq!(full.a, (1..=14).collect::<Vec<u64>>());
    let golden = max_independence_within(&binary_tuple(SubshiftSpec::golden_mean()), 14, Budget::default()).unwrap();
    let forbidden = vec![vec![1u8, 1]];
    for k in 1..=14usize {
        assert_eq!(golden.a[k - 1], k.div_ceil(2) as u64, "golden a_{k}");
        let words = common::sft_words(2, &forbidden, k);
        assert_eq!(golden.a[k - 1] as usize, common::binary_profile(&words, k), "oracle a_{k}");
    }
    for r in [&full, &golden] {
        for j in 1..=14 {
            for k in 1..=14 - j {
                assert!(r.a[j + k - 1] <= r.a[j - 1] + r.a[k - 1]);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    format!("profiles exact and subadditive in {elapsed:.2?}")
}

fn criterion_4() -> String {
    let mut gens = Vec::new();
    for spec in [SubshiftSpec::full(2), SubshiftSpec::golden_mean()] {
        let tuple = binary_tuple(spec);
        let r = ip_independence_builder(&tuple, 4, 16, Budget::default()).unwrap();
        assert_eq!(r.generators.len(), 4, "{:?}", r.exhausted_at);
        let mut sums = vec![0u64];
        for mask in 1u32..16 {
            sums.push((0..4).filter(|i| mask >> i & 1 == 1).map(|i| r.generators[i]).sum());
        }
        sums.sort_unstable();
        sums.dedup();
        assert_eq!(sums.len(), 16, "subset sums collide");
        let set = SubsetWindow::new(sums.clone(), sums[15] + 1).unwrap();
        assert!(is_independence_set(&tuple, &set, Budget::default()).unwrap().is_independent());
        gens.push(format!("{:?}", r.generators));
    }
    format!("generators {}", gens.join(" and "))
}

fn tampered(cert: &ObstructionCertificate, shift: &Subshift, f: &SubsetWindow) -> [bool; 2] {
    let mut x_flip = cert.clone();
    let mut xs = x_flip.x.symbols().to_vec();
    let last = xs.len() - 1;
    xs[last] ^= 1;
    x_flip.x = Word::new(xs);
    let mut a_flip = cert.clone();
    let mut asg = a_flip.assignment.symbols().to_vec();
    asg[0] ^= 1;
    a_flip.assignment = Word::new(asg);
    [x_flip, a_flip].map(|c| verify_certificate(&c, shift, f).unwrap().passed())
}

fn criterion_5() -> String {
    let tm = Subshift::new(SubshiftSpec::thue_morse()).unwrap();
    let all = SubsetWindow::interval(0..40);
    let cert = build_obstruction(&tm, &all, DEFAULT_SCALE, 40).unwrap();
    assert_eq!(cert.status, Status::Refuted);
    assert!(cert.depth <= 3, "depth {}", cert.depth);
    assert!(!tm.is_allowed(&w("000")).unwrap());
    assert!(verify_certificate(&cert, &tm, &all).unwrap().passed());
    assert_eq!(tampered(&cert, &tm, &all), [false, false]);

    let fib = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
    let evens = SubsetWindow::arithmetic(2, 0, 40).unwrap();
    let fcert = build_obstruction(&fib, &evens, DEFAULT_SCALE, 20).unwrap();
    assert_eq!(fcert.status, Status::Refuted);
    assert!(verify_certificate(&fcert, &fib, &evens).unwrap().passed());
    assert_eq!(tampered(&fcert, &fib, &evens), [false, false]);
    format!(
        "Thue-Morse refuted at depth {}, Fibonacci/evens at depth {}",
        cert.depth, fcert.depth
    )
}

fn criterion_6() -> String {
    let params = KExampleParams::toy();
    let run = proximal_k_point(&params).unwrap();
    let a1 = &run.level(1).unwrap().a;
    assert_eq!(a1.to_string(), "10");
    assert_eq!(c_block(a1, 0).to_string(), "0000");
    assert_eq!(c_block(a1, 1).to_string(), "1000");
    let report = verify_syndetic_zeros(run.x_prefix(), &run.levels);
    assert_eq!(report.len(), 3);
    assert!(report.iter().all(|r| r.passed()), "{report:?}");
    for pair in run.levels.windows(2) {
        let (lvl, next) = (&pair[0], &pair[1]);
        let s = lvl.step.as_ref().unwrap();
        let n_m = run.level(s.m).unwrap().n();
        assert_eq!(next.n(), lvl.n() + lvl.n() + (s.b - s.t + 1) * 2 * n_m + 2 * lvl.n());
        let y = params.y.symbols();
        for (i, &f) in s.f_values.iter().enumerate() {
            let read = &y[i..=i + s.t];
            let expected = params.z[&s.m].iter().position(|z| z.symbols() == read).map_or(0, |j| j + 1);
            assert_eq!(f, expected, "f_{}(y[{i}..]) at level {}", s.m, lvl.k);
        }
    }
    let lengths: Vec<usize> = run.levels.iter().map(|l| l.n()).collect();
    format!("K=4 lengths {lengths:?}")
}

fn criterion_7() -> String {
    let full = Subshift::new(SubshiftSpec::full(2)).unwrap();
    let f = SubsetWindow::interval(0..12);
    let r = sequence_entropy_bracket(&full, &[w("0"), w("1")], &f, 12, Budget::default()).unwrap();
    assert_eq!(r.upper, 2f64.ln());
    let words = common::all_words(2, 12);
    for m in 1..=12 {
        let patterns: std::collections::BTreeSet<&[u8]> = words.iter().map(|x| &x[..m]).collect();
        assert_eq!(patterns.len() as u128, 1 << m);
        assert_eq!(r.pattern_counts[m - 1], 1 << m);
    }
    assert!(r.lower >= 0.34, "lower {}", r.lower);
    assert!(r.lower <= r.upper);
    format!("lower {:.4}, upper {:.4}", r.lower, r.upper)
}

fn criterion_8() -> String {
    let fss = fss_construct(5, 3).unwrap();
    assert!(!common::has_three_ap(fss.set.elements()));
    let squares = SubsetWindow::from_unsorted((0..=100u64).map(|n| n * n).collect(), 10_001);
    let r = anti_ss_sparse(&squares, 10).unwrap();
    assert!(r.complete);
    assert_eq!(r.set.len(), 10);
    let hits = common::max_translate_hits(r.set.elements(), squares.elements());
    assert!(hits <= 2, "{hits}");
    format!("F_ss with {} elements, anti-F_ss hits {hits}", fss.set.len())
}

fn cli_binary() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let bin = dir.join(format!("symdyn{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "-p", "symdyn-cli", "--bin", "symdyn"])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .unwrap();
        assert!(status.success(), "could not build the CLI");
    }
    bin
}

fn criterion_9() -> String {
    let bin = cli_binary();
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("golden.sft");
    std::fs::write(&spec, SubshiftSpec::golden_mean().to_string()).unwrap();
    let spec = spec.to_str().unwrap().to_string();
    let cert = dir.path().join("tm.cert");
    let cert = cert.to_str().unwrap().to_string();
    let runs: Vec<Vec<String>> = [
        vec!["families", "ip", "--gens", "1,10,100"],
        vec!["families", "densities", "--set", "arith:2,0@100", "--window", "10"],
        vec!["families", "fss", "--blocks", "5"],
        vec!["families", "anti-ss", "--set", "sq", "--n", "10"],
        vec!["subshift", "info", "--spec", &spec, "--n", "10"],
        vec!["indep", "density", "--spec", &spec, "--targets", "0,1", "--K", "14"],
        vec!["indep", "ip", "--spec", &spec, "--targets", "0,1", "--depth", "3"],
        vec!["indep", "entropy", "--spec", "builtin:full2", "--cylinders", "0,1", "--f", "12;0,1,2,3,4,5,6,7,8,9,10,11", "--depth", "12"],
        vec!["avoid", "--p", "2", "--m", "6", "--l", "1", "--seed", "42", "--len", "5000"],
        vec!["obstruct", "build", "--spec", "builtin:thue-morse", "--f", "0..40"],
        vec!["construct", "k-example", "--ie-j", "1"],
        vec!["construct", "bernoulli", "--targets", "010,11"],
        vec!["explore", "--trials", "5", "--len", "300", "--seed", "7"],
        vec!["selfcheck"],
    ]
    .into_iter()
    .map(|r| r.into_iter().map(String::from).collect())
    .collect();
    let squares: Vec<String> = (0..=100u64).map(|n| (n * n).to_string()).collect();
    let sq_path = dir.path().join("squares.txt");
    std::fs::write(&sq_path, format!("10001;{}\n", squares.join(","))).unwrap();
    let sq_arg = format!("@{}", sq_path.display());
    for (i, args) in runs.iter().enumerate() {
        let args: Vec<String> = args.iter().map(|a| if a == "sq" { sq_arg.clone() } else { a.clone() }).collect();
        let mut outputs = Vec::new();
        for rep in 0..3 {
            let out = dir.path().join(format!("run{i}_{rep}.out"));
            let status = Command::new(&bin)
                .args(&args)
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap();
            assert_eq!(status.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&status.stderr));
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert!(!outputs[0].is_empty(), "{args:?} wrote nothing");
        assert!(outputs.iter().all(|o| *o == outputs[0]), "{args:?} not deterministic");
        if args[0] == "obstruct" {
            std::fs::write(&cert, &outputs[0]).unwrap();
        }
    }
    let mut verified = Vec::new();
    for _ in 0..3 {
        let o = Command::new(&bin).args(["obstruct", "verify", "--cert", &cert]).output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        verified.push(o.stdout);
    }
    assert!(verified.iter().all(|v| *v == verified[0]));
    format!("{} invocations byte-identical across 3 runs", runs.len() + 1)
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 avoidance guarantee", criterion_1),
        ("2 avoidance bookkeeping", criterion_2),
        ("3 independence profiles", criterion_3),
        ("4 IP builder", criterion_4),
        ("5 syndetic obstruction", criterion_5),
        ("6 K-example literals", criterion_6),
        ("7 sequence entropy bracket", criterion_7),
        ("8 3-AP-free and sparse constructions", criterion_8),
        ("9 CLI determinism", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
