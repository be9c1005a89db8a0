//! The acceptance suite: one test per criterion, each printing a PASS line.
//! Everything here is exact — rational equalities carry no tolerances, and
//! the randomized corpora are seed-pinned so reruns are deterministic.

use std::collections::BTreeMap;
use std::process::Command;

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schreier::builders::{
    cayley_ball, cycle_graph, path_graph, random_involution_schreier, random_schreier,
    schreier_from_permutations, GroupFamily,
};
use schreier::coloring::{
    adaptive_color, exhaustive_min_alphabet, find_repetitive_path, is_nonrepetitive,
    is_repetitive_path, lll_check, lll_threshold, paper_constant, LllParameters,
};
use schreier::dynamics::{colored_automorphisms, extract_repetition, Automorphism, Word};
use schreier::graph::{Coloring, GeneratorSet, GraphBuilder, Rooted, SchreierGraph};
use schreier::measures::{
    clopen_u_fraction, clopen_v_fraction, empirical_measure, gamma_r_vertex_fraction, tv_distance,
};
use schreier::BallDistance;

fn pass(number: u32, name: &str) {
    println!("criterion {number:02} ({name}): PASS");
}

/// Naive oracle: list every simple path of each even length and test the
/// definition directly; independent of the search implementation.
fn naive_shortest_repetitive(g: &SchreierGraph, c: &Coloring, max_half: usize) -> Option<usize> {
    let adj = g.simple_adjacency();
    let n = adj.len();
    for half in 1..=max_half {
        if 2 * half > n {
            break;
        }
        let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while let Some(p) = stack.pop() {
            if p.len() == 2 * half {
                if (0..half).all(|i| c.color(p[i]) == c.color(p[i + half])) {
                    return Some(half);
                }
                continue;
            }
            for &w in &adj[*p.last().unwrap()] {
                if !p.contains(&w) {
                    let mut q = p.clone();
                    q.push(w);
                    stack.push(q);
                }
            }
        }
    }
    None
}

fn cycle_with_chords(chords: &[(usize, usize)]) -> SchreierGraph {
    let gens = GeneratorSet::from_pairs(&[(0, 1), (2, 2)]).unwrap();
    let mut b = GraphBuilder::new(gens, 4);
    for i in 0..4 {
        b.add_edge(0, i, (i + 1) % 4).unwrap();
    }
    for &(u, v) in chords {
        b.add_edge(2, u, v).unwrap();
    }
    b.build()
}

fn random_coloring(n: usize, alphabet: u32, rng: &mut ChaCha8Rng) -> Coloring {
    Coloring::new(alphabet, (0..n).map(|_| rng.gen_range(0..alphabet)).collect()).unwrap()
}

#[test]
fn c01_oracle_equivalence() {
    let mut corpus: Vec<SchreierGraph> = Vec::new();
    for n in 2..=8 {
        corpus.push(path_graph(n).graph().clone());
    }
    for n in 3..=8 {
        corpus.push(cycle_graph(n).graph().clone());
    }
    corpus.push(cycle_with_chords(&[(0, 2)]));
    corpus.push(cycle_with_chords(&[(0, 2), (1, 3)]));
    for seed in 0..4 {
        for n in [5, 7, 8] {
            corpus.push(random_schreier(n, 2, seed));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(20_250_101);
    let mut cases = 0usize;
    while cases < 10_000 {
        for g in &corpus {
            let n = g.n_vertices();
            let alphabet = rng.gen_range(1..=3);
            let c = random_coloring(n, alphabet, &mut rng);
            let max_half = n / 2;
            let mine = find_repetitive_path(g, &c, max_half.max(1), u64::MAX).unwrap();
            let naive = naive_shortest_repetitive(g, &c, max_half.max(1));
            assert_eq!(
                mine.as_ref().map(|w| w.half_length()),
                naive,
                "disagreement on {n}-vertex graph"
            );
            if let Some(w) = mine {
                w.validate_against(g).unwrap();
                assert!(is_repetitive_path(&c, &w));
            }
            cases += 1;
        }
    }
    assert!(cases >= 10_000);
    pass(1, &format!("oracle equivalence on {cases} random colorings"));
}

#[test]
fn c02_thue_reproduction() {
    assert_eq!(exhaustive_min_alphabet(path_graph(2).graph(), None).unwrap(), 2);
    assert_eq!(exhaustive_min_alphabet(path_graph(3).graph(), None).unwrap(), 2);
    for n in 4..=12 {
        assert_eq!(
            exhaustive_min_alphabet(path_graph(n).graph(), None).unwrap(),
            3,
            "P_{n}"
        );
    }
    pass(2, "minimum nonrepetitive alphabet of segments");
}

#[test]
fn c03_engine_soundness() {
    let stages: Vec<(&str, SchreierGraph, u64)> = vec![
        ("path-2000", path_graph(2000).graph().clone(), 41),
        ("cycle-2000", cycle_graph(2000).graph().clone(), 42),
        ("path-500", path_graph(500).graph().clone(), 43),
        (
            "cubic-500",
            random_involution_schreier(500, 3, 7).unwrap(),
            44,
        ),
        (
            "cubic-200",
            random_involution_schreier(200, 3, 8).unwrap(),
            45,
        ),
    ];
    for (name, g, seed) in stages {
        let report = adaptive_color(&g, 4, 4, seed, 1_000_000).unwrap();
        assert!(
            report.resamples <= 1_000_000,
            "{name}: {} resamples",
            report.resamples
        );
        assert!(
            is_nonrepetitive(&g, &report.coloring, 4, u64::MAX).unwrap(),
            "{name} output fails the checker"
        );
    }
    pass(3, "resampling engine on paths, cycles, cubic stages");
}

#[test]
fn c04_constants() {
    assert_eq!(paper_constant(2), 71_088_885);
    for d in [2usize, 3, 4] {
        let t = lll_threshold(d, 64);
        let params = LllParameters::geometric(d, 64);
        assert!(lll_check(&params, t), "threshold fails its own inequality");
        assert!(!lll_check(&params, t - 1), "threshold is not minimal");
        assert!(t <= paper_constant(d as u64));
    }
    assert_eq!(lll_threshold(2, 64), 27_816);
    pass(4, "avoidance constants");
}

fn min_displacement(g: &SchreierGraph, theta: &Automorphism) -> usize {
    (0..g.n_vertices())
        .map(|v| g.bfs_distances(v)[theta.apply(v)].expect("connected"))
        .min()
        .expect("nonempty")
}

#[test]
fn c05_rigidity_mechanism() {
    let mut instances: Vec<(SchreierGraph, Coloring)> = Vec::new();

    // every 2-coloring of the small cycles
    for n in 3..=6 {
        let g = cycle_graph(n).graph().clone();
        for bits in 0..(1u32 << n) {
            let colors = (0..n).map(|i| (bits >> i) & 1).collect();
            instances.push((g.clone(), Coloring::new(2, colors).unwrap()));
        }
    }

    // randomized corpus: random stages plus structured periodic colorings
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut randomized = 0;
    let mut seed = 0u64;
    while randomized < 90 {
        let g = random_schreier(4 + (randomized % 12), 2, seed);
        seed += 1;
        if !g.is_connected() {
            continue;
        }
        let alphabet = rng.gen_range(2..=3);
        let c = random_coloring(g.n_vertices(), alphabet, &mut rng);
        instances.push((g, c));
        randomized += 1;
    }
    for n in [6usize, 8, 10, 12] {
        for period in [1, 2, 3] {
            if n % period != 0 {
                continue;
            }
            let g = cycle_graph(n).graph().clone();
            let colors = (0..n).map(|i| (i % period) as u32).collect();
            instances.push((g, Coloring::new(3, colors).unwrap()));
            randomized += 1;
        }
    }
    assert!(randomized >= 100, "only {randomized} randomized instances");

    let mut with_symmetry = 0usize;
    assert!(instances.len() >= 220);
    for (g, c) in &instances {
        let auts = colored_automorphisms(g, Some(c)).unwrap();
        for theta in auts.iter().filter(|a| !a.is_identity()) {
            with_symmetry += 1;
            let disp = min_displacement(g, theta);
            let w = extract_repetition(g, c, theta).unwrap();
            w.validate_against(g).unwrap();
            assert!(is_repetitive_path(c, &w));
            assert_eq!(w.half_length(), disp);

            // contrapositive: a nontrivial automorphism at displacement m
            // forces a repetitive path within half-length m
            assert!(
                !is_nonrepetitive(g, c, disp, u64::MAX).unwrap(),
                "claimed nonrepetitive despite symmetry at displacement {disp}"
            );
        }
    }
    assert!(with_symmetry > 50, "corpus exercised {with_symmetry} symmetries");
    pass(5, "repetition extraction from nontrivial automorphisms");
}

#[test]
fn c06_metric_action_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let make = |seed: u64, rng: &mut ChaCha8Rng| -> Rooted {
        let n = rng.gen_range(1..=8);
        let g = random_schreier(n, 2, seed);
        let c = random_coloring(n, 2, rng);
        Rooted::new(g, 0).unwrap().with_coloring(c).unwrap()
    };

    // ultrametric inequality, symmetry, identity on 1000 triples
    for i in 0..1000u64 {
        let x = make(3 * i, &mut rng);
        let y = make(3 * i + 1, &mut rng);
        let z = make(3 * i + 2, &mut rng);
        let r_max = 4;
        let d = |a: &Rooted, b: &Rooted| a.distance(b, r_max).unwrap();
        assert_eq!(d(&x, &x), BallDistance::Zero);
        assert_eq!(d(&x, &y), d(&y, &x));
        assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
    }

    // action compatibility and color-forgetting equivariance
    for i in 0..1000u64 {
        let x = make(50_000 + i, &mut rng);
        let letters = |rng: &mut ChaCha8Rng| -> Word {
            let len = rng.gen_range(0..4);
            Word::new((0..len).map(|_| rng.gen_range(0..4)).collect())
        };
        let u = letters(&mut rng);
        let v = letters(&mut rng);
        let chained = x.apply_word(&u).and_then(|y| y.apply_word(&v));
        assert_eq!(chained, x.apply_word(&u.concat(&v)));
        let w = u.concat(&v);
        assert_eq!(
            x.apply_word(&w).map(|y| y.forget_colors()),
            x.forget_colors().apply_word(&w)
        );
    }

    // word locality: pattern agreement at radius |w| decides root-fixing,
    // truncation outcome included
    let mut corpus: Vec<Rooted> = Vec::new();
    for n in 2..12 {
        corpus.push(cycle_graph(n));
        for root in 0..n {
            corpus.push(path_graph(n).with_root(root).unwrap());
        }
    }
    let mut words = vec![Word::empty()];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..2usize {
                let mut l = w.clone();
                l.push(s);
                next.push(l);
            }
        }
        words.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    let mut agreements = 0usize;
    for x in &corpus {
        for y in &corpus {
            for w in &words {
                if x.pattern(w.len()) == y.pattern(w.len()) {
                    assert_eq!(x.fixes_root(w), y.fixes_root(w));
                    agreements += 1;
                }
            }
        }
    }
    assert!(agreements > 1000);
    pass(6, "metric and action laws");
}

#[test]
fn c07_conjugation_correspondence() {
    // S3 on 3 points and S4 on 4 points, symmetric generating sets
    let s3: Vec<Vec<usize>> = vec![vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1]];
    let s4: Vec<Vec<usize>> = vec![
        vec![1, 0, 2, 3],       // (12)
        vec![1, 2, 3, 0],       // (1234)
        vec![3, 0, 1, 2],       // (1432)
    ];
    for (perms, pairing) in [(&s3, vec![0, 2, 1]), (&s4, vec![0, 2, 1])] {
        let m = perms[0].len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..3 {
            let longest = words.iter().map(Vec::len).max().unwrap();
            let extend: Vec<Vec<usize>> = words
                .iter()
                .filter(|w| w.len() == longest)
                .flat_map(|w| {
                    (0..perms.len()).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
            words.extend(extend);
        }
        assert_eq!(words.len(), 1 + 3 + 9 + 27);

        for base in 0..m {
            let x = schreier_from_permutations(perms, &pairing, base).unwrap();
            for letters in &words {
                let w = Word::new(letters.clone());
                let moved = x.apply_word(&w).expect("complete graph");
                let mut point = base;
                for &s in letters {
                    point = perms[s][point];
                }
                let rebuilt = schreier_from_permutations(perms, &pairing, point).unwrap();
                let radius = x.graph().n_vertices();
                assert!(
                    moved.is_isomorphic_to(&rebuilt, radius).unwrap(),
                    "base {base}, word {letters:?}"
                );
            }
        }
    }
    pass(7, "conjugation correspondence over S3 and S4");
}

#[test]
fn c08_sofic_statistics() {
    for r in 1..=5usize {
        let reference = cayley_ball(&GroupFamily::Integers, r).unwrap();
        for n in 1..=30usize {
            let fraction = gamma_r_vertex_fraction(cycle_graph(n).graph(), &reference, r).unwrap();
            if n >= 2 * r + 2 {
                assert!(fraction.is_one(), "C_{n} at r={r}: {fraction}");
            } else {
                assert!(fraction < BigRational::one(), "C_{n} at r={r}: {fraction}");
            }
        }
    }

    let g = random_schreier(1000, 2, 7);
    let reference = cayley_ball(&GroupFamily::Free { rank: 2 }, 1).unwrap();
    let fraction = gamma_r_vertex_fraction(&g, &reference, 1).unwrap();
    let threshold = BigRational::new(BigInt::from(95), BigInt::from(100));
    assert!(fraction >= threshold, "(Γ,1)-fraction {fraction}");
    pass(8, "reference-ball vertex fractions");
}

#[test]
fn c09_measure_equalities() {
    use schreier::measures::invariance_defect;

    // exact invariance on complete graphs
    let s4_perms: Vec<Vec<usize>> = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0], vec![3, 0, 1, 2]];
    let complete: Vec<SchreierGraph> = vec![
        cycle_graph(1).graph().clone(),
        cycle_graph(4).graph().clone(),
        cycle_graph(9).graph().clone(),
        random_schreier(30, 2, 13),
        random_involution_schreier(20, 3, 14).unwrap(),
        schreier_from_permutations(&s4_perms, &[0, 2, 1], 0)
            .unwrap()
            .graph()
            .clone(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for g in &complete {
        let coloring = random_coloring(g.n_vertices(), 3, &mut rng);
        for with_colors in [None, Some(&coloring)] {
            for symbol in 0..g.gens().count() {
                for r in 0..=3 {
                    let d = invariance_defect(g, with_colors, r, symbol).unwrap();
                    assert!(d.defect.is_zero());
                    assert!(d.deficiency.is_zero());
                }
            }
        }
    }

    // engine-colored stages: the repetitive clopen set is exactly empty and
    // the reference-ball complement is exact
    let stages = [random_schreier(40, 2, 21), random_schreier(60, 2, 22)];
    let reference_rank2 = |r: usize| cayley_ball(&GroupFamily::Free { rank: 2 }, r).unwrap();
    for g in &stages {
        let report = adaptive_color(g, 4, 3, 99, 200_000).unwrap();
        for r in 1..=3usize {
            let v = clopen_v_fraction(g, &report.coloring, r, u64::MAX).unwrap();
            assert!(v.is_zero(), "V_{r} = {v}");
            let reference = reference_rank2(r);
            let u = clopen_u_fraction(g, &reference, r).unwrap();
            let gamma = gamma_r_vertex_fraction(g, &reference, r).unwrap();
            assert_eq!(u + gamma, BigRational::one());
        }
        // weights sum to exactly one
        for r in 0..=3usize {
            let mu = empirical_measure(g, Some(&report.coloring), r).unwrap();
            assert!(mu.total().is_one());
        }
    }

    // uncolored cycle stages share their single ball type
    for r in 1..=3usize {
        let sizes = [2 * r + 2, 2 * r + 5, 30];
        for &n in &sizes {
            for &m in &sizes {
                let a = empirical_measure(cycle_graph(n).graph(), None, r).unwrap();
                let b = empirical_measure(cycle_graph(m).graph(), None, r).unwrap();
                assert!(tv_distance(&a, &b).unwrap().is_zero());
            }
        }
    }
    pass(9, "exact measure equalities");
}

fn run_cli(dir: &std::path::Path, args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_schreier"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn c10_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let pipeline: Vec<Vec<&str>> = vec![
        vec!["build", "random", "--n", "60", "--rank", "2", "--seed", "5", "--out", "g.json"],
        vec![
            "color", "--graph", "g.json", "--alphabet", "4", "--half-length", "3", "--seed", "7",
            "--adaptive", "--max-resamples", "200000", "--out", "colored.json",
        ],
        vec!["check", "--graph", "colored.json", "--half-length", "3"],
        vec!["rigidity", "--graph", "colored.json"],
        vec![
            "sofic-stats", "--graph", "g.json", "--family", "free:2", "--radius", "1",
            "--epsilon", "0.05",
        ],
        vec![
            "measure", "--graph", "colored.json", "--radius", "2", "--out", "mu.json", "--csv",
            "mu.csv",
        ],
        vec!["converge", "--radius", "1", "g.json", "colored.json"],
    ];

    let mut first_outputs: Vec<Vec<u8>> = Vec::new();
    let mut first_files: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    for round in 0..2 {
        for (i, args) in pipeline.iter().enumerate() {
            let (stdout, code) = run_cli(d, args);
            assert_eq!(code, 0, "step {i} failed: {}", String::from_utf8_lossy(&stdout));
            if round == 0 {
                first_outputs.push(stdout);
            } else {
                assert_eq!(stdout, first_outputs[i], "report {i} not byte-identical");
            }
        }
        for name in ["g.json", "colored.json", "mu.json", "mu.csv"] {
            let bytes = std::fs::read(d.join(name)).unwrap();
            if round == 0 {
                first_files.insert(name.into(), bytes);
            } else {
                assert_eq!(&bytes, &first_files[name], "{name} not byte-identical");
            }
        }
    }

    // the colored artifact really is a nonrepetitive coloring
    let colored = schreier::io::read_graph(d.join("colored.json")).unwrap();
    assert!(is_nonrepetitive(
        colored.graph(),
        colored.coloring().unwrap(),
        3,
        u64::MAX
    )
    .unwrap());
    pass(10, "seeded CLI pipelines are byte-identical");
}
