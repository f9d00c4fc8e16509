//! Random graph generators and the MST timing harness.

use std::io::{Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use umst_core::mst::{boruvka_msf, kruskal_msf, randomized_msf};
use umst_core::{RandomSource, SpanningForest, UndirectedGraph};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Algorithm {
    Kruskal,
    Boruvka,
    Randomized,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Kruskal, Algorithm::Boruvka, Algorithm::Randomized];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Kruskal => "kruskal",
            Algorithm::Boruvka => "boruvka",
            Algorithm::Randomized => "randomized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == name)
    }

    /// Runs the algorithm; the randomized one draws from `seed`.
    pub fn run(self, graph: &UndirectedGraph, seed: u64) -> SpanningForest {
        match self {
            Algorithm::Kruskal => kruskal_msf(graph),
            Algorithm::Boruvka => boruvka_msf(graph),
            Algorithm::Randomized => randomized_msf(graph, &mut RandomSource::new(seed)),
        }
    }
}

/// Connected graph with `n` vertices and `m >= n - 1` edges: a random
/// recursive tree plus uniformly random extra edges (parallel edges
/// allowed, self edges not). Weights are uniform in [0, 1).
pub fn random_connected_graph(n: usize, m: usize, rng: &mut RandomSource) -> UndirectedGraph {
    assert!(n >= 1 && m + 1 >= n, "a connected graph on {n} vertices needs at least {} edges", n - 1);
    let mut g = UndirectedGraph::with_capacity(n, m);
    let mut order: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut order);
    for k in 1..n {
        let parent = order[rng.below(k as u64) as usize];
        g.add_edge(parent, order[k], rng.unit());
    }
    if n >= 2 {
        while g.n_edges() < m {
            let u = rng.below(n as u64) as u32;
            let v = rng.below(n as u64) as u32;
            if u != v {
                g.add_edge(u, v, rng.unit());
            }
        }
    }
    g
}

/// Erdos-Renyi style graph: each of the `n (n - 1) / 2` pairs is present
/// with probability `p`. Possibly disconnected.
pub fn random_gnp_graph(n: usize, p: f64, rng: &mut RandomSource) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(n);
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.unit() < p {
                g.add_edge(u, v, rng.unit());
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub wall_time_ns: u128,
    pub total_weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    /// Edge counts.
    pub sizes: Vec<usize>,
    /// Average vertex degrees `2m / n`.
    pub densities: Vec<f64>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            sizes: vec![10_000, 100_000, 1_000_000],
            densities: vec![8.0],
            seeds: vec![0, 1, 2],
            algorithms: Algorithm::ALL.to_vec(),
        }
    }
}

/// Vertex count giving average degree `density` with `m` edges, clamped so
/// the graph can be connected and is not a multigraph by necessity.
pub fn vertices_for(m: usize, density: f64) -> usize {
    let n = (2.0 * m as f64 / density).round() as usize;
    n.clamp(2, m + 1)
}

/// Times every algorithm on one graph. All algorithms must return the same
/// forest; a disagreement is reported as an invariant violation.
pub fn bench_graph(graph: &UndirectedGraph, seed: u64, algorithms: &[Algorithm]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(algorithms.len());
    let mut reference: Option<(Algorithm, SpanningForest)> = None;
    for &algorithm in algorithms {
        let start = Instant::now();
        let forest = algorithm.run(graph, seed);
        let wall_time_ns = start.elapsed().as_nanos();
        match &reference {
            Some((a, f)) if *f != forest => {
                return Err(Error::Invariant(format!(
                    "{} and {} disagree on a graph with n={} m={} (seed {seed})",
                    a.name(),
                    algorithm.name(),
                    graph.n_vertices(),
                    graph.n_edges()
                )))
            }
            Some(_) => {}
            None => reference = Some((algorithm, forest.clone())),
        }
        rows.push(BenchRow {
            algorithm: algorithm.name().into(),
            n: graph.n_vertices(),
            m: graph.n_edges(),
            seed,
            wall_time_ns,
            total_weight: forest.total_weight,
        });
    }
    Ok(rows)
}

/// Generates one random connected graph per (size, density, seed) and
/// times each algorithm on it.
pub fn run_bench(spec: &BenchSpec, mut progress: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &m in &spec.sizes {
        for &density in &spec.densities {
            if density <= 0.0 {
                return Err(Error::Config(format!("density {density} must be positive")));
            }
            for &seed in &spec.seeds {
                let n = vertices_for(m, density);
                let mut rng = RandomSource::for_item(seed, m as u64);
                let graph = random_connected_graph(n, m, &mut rng);
                for row in bench_graph(&graph, seed, &spec.algorithms)? {
                    progress(&row);
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(w: W, rows: &[BenchRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row).map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_bench_csv<R: Read>(r: R) -> Result<Vec<BenchRow>> {
    csv::Reader::from_reader(r).deserialize().collect::<std::result::Result<_, _>>().map_err(csv_error)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("bench CSV: {other:?}")),
    }
}

/// Median wall time per edge count for one algorithm, ascending in `m`.
pub fn median_times(rows: &[BenchRow], algorithm: Algorithm) -> Vec<(usize, f64)> {
    let mut by_m: std::collections::BTreeMap<usize, Vec<u128>> = Default::default();
    for row in rows.iter().filter(|r| r.algorithm == algorithm.name()) {
        by_m.entry(row.m).or_default().push(row.wall_time_ns);
    }
    by_m.into_iter()
        .map(|(m, mut t)| {
            t.sort_unstable();
            let k = t.len();
            let median = if k % 2 == 1 { t[k / 2] as f64 } else { (t[k / 2 - 1] + t[k / 2]) as f64 / 2.0 };
            (m, median)
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(x, y)| ((x as f64).ln(), y.ln())).collect();
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shape() {
        let mut rng = RandomSource::new(3);
        let g = random_connected_graph(50, 200, &mut rng);
        assert_eq!((g.n_vertices(), g.n_edges()), (50, 200));
        assert!(g.edges().iter().all(|e| !e.is_self_edge()));
        assert_eq!(kruskal_msf(&g).len(), 49);
    }

    #[test]
    fn tiny_bench_has_one_row_per_algorithm_and_seed() {
        let spec =
            BenchSpec { sizes: vec![40], densities: vec![4.0], seeds: vec![7, 8], algorithms: Algorithm::ALL.to_vec() };
        let rows = run_bench(&spec, |_| {}).unwrap();
        assert_eq!(rows.len(), 6);
        for pair in rows.chunks(3) {
            assert!(pair.iter().all(|r| r.total_weight == pair[0].total_weight && r.m == 40 && r.n == 20));
        }
        let mut csv = Vec::new();
        write_bench_csv(&mut csv, &rows).unwrap();
        let text = String::from_utf8(csv.clone()).unwrap();
        assert!(text.starts_with("algorithm,n,m,seed,wall_time_ns,total_weight\n"));
        assert_eq!(read_bench_csv(csv.as_slice()).unwrap(), rows);
    }

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(usize, f64)> = [10usize, 100, 1000].iter().map(|&m| (m, 3.0 * (m as f64).powf(1.5))).collect();
        assert!((loglog_slope(&pts).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(loglog_slope(&pts[..1]), None);
    }

    #[test]
    fn medians() {
        let row = |m, t| BenchRow { algorithm: "kruskal".into(), n: 2, m, seed: 0, wall_time_ns: t, total_weight: 0.0 };
        let rows = [row(10, 5), row(10, 1), row(10, 3), row(20, 2), row(20, 4)];
        assert_eq!(median_times(&rows, Algorithm::Kruskal), [(10, 3.0), (20, 3.0)]);
    }
}
