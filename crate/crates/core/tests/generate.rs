mod common;

use common::*;
use proptest::prelude::*;
use shadowmin::experiment::{experiment_csv, run_experiment, ExperimentSpec, CSV_HEADER};
use shadowmin::generate::random_noncrossing_word;
use shadowmin::{classify, generate, validate_shadow, GeneratorKind, GeneratorSpec, Kind};

fn spec(kind: GeneratorKind, seed: u64) -> GeneratorSpec {
    GeneratorSpec::new(kind, seed)
}

#[test]
fn curl_chain_has_one_double_point_per_curl() {
    let s = gen(GeneratorKind::CurlChain { m: 3 }, 7);
    assert_eq!((s.vertex_count(), s.arc_count(), s.polygon_count()), (3, 6, 4));
    assert_eq!(classify(&s).kind, Kind::TreeLike);
}

#[test]
fn plain_necklace_is_a_single_cycle() {
    let s = gen(GeneratorKind::Necklace { m: 5, attach: Default::default() }, 0);
    let c = classify(&s);
    assert_eq!(c.kind, Kind::TreeNecklace);
    assert_eq!(c.necklace_cycles.len(), 1);
    assert_eq!(c.necklace_cycles[0].vertices().count(), 5);
    assert_eq!(s.vertex_count(), 5);
}

#[test]
fn even_necklaces_are_refused() {
    assert!(generate(&spec(GeneratorKind::Necklace { m: 4, attach: Default::default() }, 0)).is_err());
}

#[test]
fn attachments_add_their_double_points() {
    let s = decorated_necklace(3, vec![2, 4], 3, 9);
    assert_eq!(s.vertex_count(), 3 + (2 + 1) + (4 + 1) + 3);
    assert_eq!(classify(&s).kind, Kind::TreeNecklace);
}

#[test]
fn generation_is_deterministic() {
    let g = spec(GeneratorKind::TreeLikeRandom { n: 8 }, 1);
    assert_eq!(generate(&g).unwrap().to_json(), generate(&g).unwrap().to_json());
    let other = spec(GeneratorKind::TreeLikeRandom { n: 8 }, 2);
    assert_ne!(generate(&g).unwrap().to_json(), generate(&other).unwrap().to_json());
}

#[test]
fn spec_json_round_trips() {
    let g: GeneratorSpec =
        serde_json::from_str(r#"{"kind": "Necklace", "m": 3, "attach": {"trees": [2]}, "seed": 5}"#).unwrap();
    assert_eq!(g.seed, 5);
    assert_eq!(serde_json::from_str::<GeneratorSpec>(&serde_json::to_string(&g).unwrap()).unwrap(), g);
    assert!(serde_json::from_str::<GeneratorSpec>(r#"{"kind": "Necklace", "m": 3, "bogus": 1}"#).is_err());
}

#[test]
fn empty_experiment_is_just_the_header() {
    let csv = experiment_csv(&ExperimentSpec::default()).unwrap();
    assert_eq!(csv.trim_end(), CSV_HEADER.join(","));
}

#[test]
fn experiment_rows_follow_the_spec() {
    let s = ExperimentSpec::from_json(
        r#"{"instances": [{"kind": "CurlChain", "m": 4, "seed": 3, "count": 2},
                          {"kind": "Necklace", "m": 5, "attach": {"trees": [1, 2, 2]}, "seed": 195}]}"#,
    )
    .unwrap();
    let rows = run_experiment(&s).unwrap();
    assert_eq!(rows.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![3, 4, 195]);
    assert_eq!(rows[0].gap, Some(0));
    assert_eq!((rows[2].mu_loc, rows[2].mu_necklace, rows[2].gap), (4, Some(6), Some(2)));
    assert!(rows.iter().all(|r| r.wall_ms == 0.0));
    let csv = experiment_csv(&s).unwrap();
    assert_eq!(csv, experiment_csv(&s).unwrap());
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().nth(3).unwrap().starts_with("195,13,26,TreeNecklace,4,6,2,"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_files_validate(n in 0usize..12, seed in any::<u64>()) {
        let f = generate(&spec(GeneratorKind::TreeLikeRandom { n }, seed)).unwrap();
        let s = validate_shadow(&f).unwrap();
        prop_assert_eq!(s.vertex_count(), n);
        prop_assert_eq!(classify(&s).kind, Kind::TreeLike);
    }

    #[test]
    fn noncrossing_words_are_noncrossing(n in 0usize..30, seed in any::<u64>()) {
        use rand::SeedableRng;
        let w = random_noncrossing_word(n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(w.len(), 2 * n);
        let mut stack = Vec::new();
        for &x in &w {
            if stack.last() == Some(&x) { stack.pop(); } else { stack.push(x); }
        }
        prop_assert!(stack.is_empty());
    }
}
