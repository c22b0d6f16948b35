//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    closure_component, connected_graph, exact_distribution, exact_tail, grid_document,
    random_series, triangulated_grid,
};
use moran_core::density::{kde_silverman, DEFAULT_GRID_SIZE};
use moran_core::geo::parse_regions_value;
use moran_core::plots::same_label_component;
use moran_core::{
    analyze, build_contiguity, global_moran, local_moran, row_normalize, zscore_normalize,
    AnalysisBundle, AnalysisConfig, AttributeSeries, BundleConfig, ColorMode, ContiguityRule,
    Label, LocalMoranResult, RegionGeometry, SpatialWeights,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_statistics() -> Result<String, String> {
    let ids = (1..=5).map(|i| i.to_string()).collect();
    let series =
        AttributeSeries::new(ids, vec![1.0, 2.0, 3.0, 4.0, 5.0]).map_err(|e| e.to_string())?;
    let w =
        SpatialWeights::from_neighbors(vec![vec![1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3]])
            .map_err(|e| e.to_string())?;
    let config = AnalysisConfig {
        permutations: 999,
        seed: 42,
        alpha: 0.05,
    };
    let results = analyze(&series, &w, &config).map_err(|e| e.to_string())?;
    let expected = [0.2, 0.1, 0.0, 0.1, 0.2];
    let mut worst = 0.0f64;
    for (r, e) in results.iter().zip(expected) {
        let s = r.statistic.ok_or("missing statistic")?;
        worst = worst.max((s - e).abs());
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn sum_of_local() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for instance in 0..200 {
        let n = rng.random_range(5..=200);
        let extra = rng.random_range(0..=2 * n);
        let w = row_normalize(&connected_graph(&mut rng, n, extra)).map_err(|e| e.to_string())?;
        let z = zscore_normalize(random_series(&mut rng, n).values()).map_err(|e| e.to_string())?;
        let local: f64 = local_moran(&z, &w)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|s| s.expect("connected graph"))
            .sum();
        let global = global_moran(&z, &w).map_err(|e| e.to_string())?;
        let diff = (local - global).abs();
        ensure(diff <= 1e-10, || {
            format!("instance {instance}: |diff| = {diff:e}")
        })?;
        worst = worst.max(diff);
    }
    Ok(format!("200 instances, max |diff| {worst:.1e}"))
}

fn exhaustive_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut checked = 0;
    for instance in 0..50 {
        let n = rng.random_range(3..=7);
        let extra = rng.random_range(0..n);
        let raw = connected_graph(&mut rng, n, extra);
        let series = random_series(&mut rng, n);
        let config = AnalysisConfig {
            permutations: 9999,
            seed: rng.random(),
            alpha: 0.05,
        };
        let results = analyze(&series, &raw, &config).map_err(|e| e.to_string())?;
        let w = row_normalize(&raw).map_err(|e| e.to_string())?;
        let z = zscore_normalize(series.values()).map_err(|e| e.to_string())?;
        for (focal, r) in results.iter().enumerate() {
            let exact = exact_tail(r.statistic.unwrap(), &exact_distribution(focal, &z, &w));
            let diff = (r.pseudo_p().unwrap() - exact).abs();
            ensure(diff <= 0.02, || {
                format!(
                    "instance {instance} focal {focal}: p {} vs exact {exact}",
                    r.pseudo_p().unwrap()
                )
            })?;
            worst = worst.max(diff);
            checked += 1;
        }
    }
    Ok(format!("{checked} locations, max |p - exact| {worst:.4}"))
}

fn grid_values(n: usize, seed: u64) -> (Vec<String>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids = (0..n).map(|i| i.to_string()).collect();
    let values = (0..n)
        .map(|i| (i % 60) as f64 * 0.1 + rng.random_range(-1.0..1.0))
        .collect();
    (ids, values)
}

fn determinism() -> Result<String, String> {
    let (rows, cols) = (50, 60);
    let document = grid_document(rows, cols);
    let (ids, values) = grid_values(rows * cols, 11);
    let config = BundleConfig {
        permutations: 999,
        seed: 2024,
        ..BundleConfig::default()
    };
    let mut outputs = Vec::new();
    for threads in [1, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        let bytes = pool.install(|| {
            AnalysisBundle::compute("grid", document.clone(), &ids, &values, config.clone())
                .and_then(|b| b.to_json_bytes())
                .map_err(|e| e.to_string())
        })?;
        outputs.push(bytes);
    }
    ensure(outputs[0] == outputs[1] && outputs[0] == outputs[2], || {
        "bundle bytes differ across thread counts".into()
    })?;
    Ok(format!(
        "n = {}, {} bytes identical at 1/4/8 threads",
        rows * cols,
        outputs[0].len()
    ))
}

fn contiguity_fixtures() -> Result<String, String> {
    let regions = parse_regions_value(&grid_document(10, 10), "id").map_err(|e| e.to_string())?;
    let rook = build_contiguity(&regions, ContiguityRule::rook());
    let queen = build_contiguity(&regions, ContiguityRule::queen());
    for r in 1..9 {
        for c in 1..9 {
            let i = r * 10 + c;
            ensure(rook.degree(i) == 4, || {
                format!("cell {i}: rook degree {}", rook.degree(i))
            })?;
            ensure(queen.degree(i) == 8, || {
                format!("cell {i}: queen degree {}", queen.degree(i))
            })?;
        }
    }

    let square = |id: &str, x: f64, y: f64| {
        RegionGeometry::from_ring(
            id,
            vec![[x, y], [x + 1.0, y], [x + 1.0, y + 1.0], [x, y + 1.0]],
        )
        .map_err(|e| e.to_string())
    };
    let pair = vec![square("a", 0.0, 0.0)?, square("b", 1.0, 1.0)?];
    let rook = build_contiguity(&pair, ContiguityRule::rook());
    let queen = build_contiguity(&pair, ContiguityRule::queen());
    ensure(queen.has_edge(0, 1) && !rook.has_edge(0, 1), || {
        "corner-touching pair is not queen-only".into()
    })?;
    Ok("interior 4 rook / 8 queen; corner pair queen-only".into())
}

fn kde_mass() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for set in 0..100 {
        let n = rng.random_range(2..=1000);
        let samples: Vec<f64> = match set % 4 {
            0 => (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(),
            // Approximately normal: sum of uniforms.
            1 => (0..n)
                .map(|_| (0..12).map(|_| rng.random::<f64>()).sum::<f64>() - 6.0)
                .collect(),
            // Tight cluster plus far outliers.
            2 => (0..n)
                .map(|i| {
                    if i % 50 == 0 {
                        rng.random_range(-1e3..1e3)
                    } else {
                        rng.random_range(0.0..0.01)
                    }
                })
                .collect(),
            // Heavy repetition of a few values.
            _ => (0..n)
                .map(|_| rng.random_range(0..5) as f64 * 0.25)
                .collect(),
        };
        let curve =
            kde_silverman(&samples, DEFAULT_GRID_SIZE).map_err(|e| format!("set {set}: {e}"))?;
        let mass = curve.integral();
        ensure((0.98..=1.0).contains(&mass), || {
            format!("set {set}: integral {mass}")
        })?;
        lo = lo.min(mass);
        hi = hi.max(mass);
    }
    Ok(format!("100 sets, integral in [{lo:.5}, {hi:.5}]"))
}

fn component_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let palette = Label::ALL;
    for graph in 0..100 {
        let n = rng.random_range(1..=50);
        let p = rng.random_range(0.02..0.3);
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        let w = SpatialWeights::from_neighbors(adjacency.clone()).map_err(|e| e.to_string())?;
        let labels: Vec<u8> = (0..n)
            .map(|i| {
                if adjacency[i].is_empty() {
                    5
                } else {
                    rng.random_range(0..5)
                }
            })
            .collect();
        let results: Vec<LocalMoranResult> = (0..n)
            .map(|i| {
                let label = palette[labels[i] as usize];
                let defined = label != Label::Isolated;
                LocalMoranResult {
                    id: format!("g{i}"),
                    z: 0.0,
                    lag: defined.then_some(0.0),
                    statistic: defined.then_some(0.0),
                    permutation: None,
                    label,
                }
            })
            .collect();
        let significant: Vec<bool> = results.iter().map(|r| r.label.is_significant()).collect();
        for focal in 0..n {
            let got = same_label_component(&results[focal].id, &results, &w)
                .map_err(|e| e.to_string())?;
            let expected: Vec<String> = closure_component(focal, &labels, &significant, &adjacency)
                .into_iter()
                .map(|i| format!("g{i}"))
                .collect();
            ensure(got.ids == expected, || {
                format!("graph {graph} focal {focal}: {:?} vs {expected:?}", got.ids)
            })?;
        }
    }
    Ok("100 graphs agree with closure oracle".into())
}

fn round_trip() -> Result<String, String> {
    let err = |e: moran_core::MoranError| e.to_string();
    let (rows, cols) = (8, 9);
    let (ids, values) = grid_values(rows * cols, 5);
    let bundle = AnalysisBundle::compute(
        "round-trip",
        grid_document(rows, cols),
        &ids,
        &values,
        BundleConfig::default(),
    )
    .and_then(AnalysisBundle::with_payload_cache)
    .map_err(err)?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for name in ["bundle.json", "bundle.json.gz"] {
        let path = dir.path().join(name);
        bundle.write(&path).map_err(err)?;
        let back = AnalysisBundle::read(&path).map_err(err)?;
        ensure(back == bundle, || format!("{name}: bundle differs"))?;
        ensure(back.meta() == bundle.meta(), || {
            format!("{name}: meta differs")
        })?;
        ensure(
            back.network().map_err(err)? == bundle.network().map_err(err)?,
            || format!("{name}: network differs"),
        )?;
        ensure(back.cluster_map() == bundle.cluster_map(), || {
            format!("{name}: cluster map differs")
        })?;
        ensure(
            back.geometry_document().map_err(err)? == bundle.geometry_document().map_err(err)?,
            || format!("{name}: geometry differs"),
        )?;
        for id in &ids {
            for mode in [ColorMode::Label, ColorMode::Autocorrelation] {
                ensure(
                    back.dual_density(id, mode).map_err(err)?
                        == bundle.dual_density(id, mode).map_err(err)?,
                    || format!("{name}: dual density {id} differs"),
                )?;
            }
            ensure(
                back.radial(id).map_err(err)? == bundle.radial(id).map_err(err)?,
                || format!("{name}: radial {id} differs"),
            )?;
            ensure(
                back.component(id).map_err(err)? == bundle.component(id).map_err(err)?,
                || format!("{name}: component {id} differs"),
            )?;
        }
    }
    Ok(format!("{} regions via .json and .json.gz", ids.len()))
}

fn throughput() -> Result<String, String> {
    let (rows, cols) = (50, 60);
    let w = triangulated_grid(rows, cols);
    let n = rows * cols;
    let mean_degree = (0..n).map(|i| w.degree(i)).sum::<usize>() as f64 / n as f64;
    let (ids, values) = grid_values(n, 3);
    let series = AttributeSeries::new(ids, values).map_err(|e| e.to_string())?;
    let config = AnalysisConfig {
        permutations: 999,
        seed: 1,
        alpha: 0.05,
    };
    let start = Instant::now();
    analyze(&series, &w, &config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("analyze took {elapsed:.2?}")
    })?;
    Ok(format!(
        "n = {n}, mean degree {mean_degree:.2}, {} threads, analyze {elapsed:.2?}",
        rayon::current_num_threads()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Option<Duration>); 9] = [
        (
            "fixture statistics",
            fixture_statistics,
            Some(Duration::from_secs(1)),
        ),
        (
            "sum-of-local identity",
            sum_of_local,
            Some(Duration::from_secs(10)),
        ),
        (
            "exhaustive permutation oracle",
            exhaustive_oracle,
            Some(Duration::from_secs(60)),
        ),
        (
            "determinism across thread counts",
            determinism,
            Some(Duration::from_secs(30)),
        ),
        (
            "contiguity fixtures",
            contiguity_fixtures,
            Some(Duration::from_secs(1)),
        ),
        ("kde mass", kde_mass, Some(Duration::from_secs(5))),
        (
            "component oracle",
            component_oracle,
            Some(Duration::from_secs(5)),
        ),
        ("bundle round-trip", round_trip, None),
        ("throughput", throughput, None),
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(result) => result,
            Err(payload) => Err(payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(limit)) if elapsed >= limit => {
                Err(format!("runtime {elapsed:.2?} exceeds {limit:?}"))
            }
            (other, _) => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
