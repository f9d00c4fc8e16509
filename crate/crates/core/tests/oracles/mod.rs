//! Brute-force reference implementations used by the property tests.
//!
//! None of these call into the algorithms they check; they only share the
//! plain data types.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::VecDeque;

use umst_core::graph::{UndirectedEdge, UndirectedGraph};
use umst_core::inference::DirectedScoreTable;
use umst_core::RandomSource;

/// Random graph with `n` vertices: a random spanning tree when `connected`,
/// plus each remaining pair with probability `density`. Weights are uniform
/// in [0, 1) and, with `ties`, rounded to a coarse grid so ties occur.
pub fn random_graph(rng: &mut RandomSource, n: usize, density: f64, connected: bool, ties: bool) -> UndirectedGraph {
    let mut g = UndirectedGraph::new(n);
    let weight = |rng: &mut RandomSource| {
        let w = rng.unit();
        if ties {
            (w * 8.0).floor()
        } else {
            w
        }
    };
    let mut in_tree = vec![vec![false; n]; n];
    if connected {
        for v in 1..n {
            let u = rng.below(v as u64) as usize;
            in_tree[u][v] = true;
            let w = weight(rng);
            g.add_edge(u as u32, v as u32, w);
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !in_tree[u][v] && rng.unit() < density {
                let w = weight(rng);
                if rng.coin_flip() {
                    g.add_edge(u as u32, v as u32, w);
                } else {
                    g.add_edge(v as u32, u as u32, w);
                }
            }
        }
    }
    g
}

/// Component label of every vertex by breadth-first search, numbered in
/// order of each component's smallest vertex.
pub fn bfs_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    label
}

pub fn endpoints(edges: &[UndirectedEdge]) -> Vec<(usize, usize)> {
    edges.iter().map(|e| (e.u as usize, e.v as usize)).collect()
}

/// Minimum total weight over all spanning forests, by enumerating every
/// acyclic edge subset of size `n - components`.
pub fn exhaustive_msf_weight(graph: &UndirectedGraph) -> f64 {
    let n = graph.n_vertices();
    let edges: Vec<&UndirectedEdge> = graph.edges().iter().filter(|e| e.u != e.v).collect();
    let labels = bfs_components(n, &endpoints(graph.edges()));
    let components = labels.iter().max().map_or(0, |m| m + 1);
    let target = n - components;

    fn root(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }

    fn go(
        edges: &[&UndirectedEdge],
        i: usize,
        chosen: usize,
        target: usize,
        parent: &mut Vec<usize>,
        weight: f64,
        best: &mut f64,
    ) {
        if chosen == target {
            if weight < *best {
                *best = weight;
            }
            return;
        }
        if chosen + (edges.len() - i) < target {
            return;
        }
        let e = edges[i];
        let (ru, rv) = (root(parent, e.u as usize), root(parent, e.v as usize));
        if ru != rv {
            parent[ru] = rv;
            go(edges, i + 1, chosen + 1, target, parent, weight + e.weight, best);
            parent[ru] = ru;
        }
        go(edges, i + 1, chosen, target, parent, weight, best);
    }

    let mut best = f64::INFINITY;
    let mut parent: Vec<usize> = (0..n).collect();
    go(&edges, 0, 0, target, &mut parent, 0.0, &mut best);
    if target == 0 {
        0.0
    } else {
        best
    }
}

/// Maximum edge weight on the forest path between `u` and `v`, or `None`
/// when they are in different trees.
pub fn path_max_bfs(n: usize, forest: &[UndirectedEdge], u: usize, v: usize) -> Option<f64> {
    let mut adj = vec![Vec::new(); n];
    for e in forest {
        adj[e.u as usize].push((e.v as usize, e.weight));
        adj[e.v as usize].push((e.u as usize, e.weight));
    }
    let mut best = vec![None; n];
    best[u] = Some(f64::NEG_INFINITY);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let here = best[x].unwrap();
        for &(y, w) in &adj[x] {
            if best[y].is_none() {
                best[y] = Some(if w > here { w } else { here });
                queue.push_back(y);
            }
        }
    }
    best[v]
}

/// Whether `heads` (1-based tokens, 0 = root) is a tree: every token walks
/// up to the root within `n` steps.
pub fn is_tree(heads: &[usize]) -> bool {
    let n = heads.len();
    (1..=n).all(|start| {
        let mut x = start;
        for _ in 0..=n {
            if x == 0 {
                return true;
            }
            let h = heads[x - 1];
            if h > n || h == x {
                return false;
            }
            x = h;
        }
        false
    })
}

/// Best total score over every head assignment that forms a tree. Partial
/// assignments that already close a cycle are cut off early.
pub fn exhaustive_arborescence(table: &DirectedScoreTable) -> (f64, Vec<usize>) {
    let n = table.n_tokens();
    let mut heads = vec![0usize; n];
    let mut best = (f64::NEG_INFINITY, heads.clone());

    fn closes_cycle(heads: &[usize], k: usize) -> bool {
        // Tokens 1..=k+1 are assigned; follow heads from token k+1.
        let me = k + 1;
        let mut x = heads[k];
        for _ in 0..=heads.len() {
            if x == me {
                return true;
            }
            if x == 0 || x > me {
                return false;
            }
            x = heads[x - 1];
        }
        true
    }

    fn go(table: &DirectedScoreTable, k: usize, heads: &mut Vec<usize>, best: &mut (f64, Vec<usize>)) {
        let n = heads.len();
        if k == n {
            assert!(is_tree(heads));
            let s: f64 = (0..n).map(|i| table.get_or_neg_inf(heads[i], i + 1)).sum();
            if s > best.0 {
                *best = (s, heads.clone());
            }
            return;
        }
        for h in 0..=n {
            if h != k + 1 {
                heads[k] = h;
                if !closes_cycle(heads, k) {
                    go(table, k + 1, heads, best);
                }
            }
        }
    }

    go(table, 0, &mut heads, &mut best);
    best
}

/// Every orientation of the tree `edges` (over `n` vertices) in which the
/// root has no incoming edge and every other vertex exactly one. Returned
/// as parent arrays.
pub fn valid_orientations(n: usize, edges: &[(usize, usize)], root: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let mut parent = vec![None; n];
        let mut indegree = vec![0; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (from, to) = if mask >> i & 1 == 1 { (v, u) } else { (u, v) };
            parent[to] = Some(from);
            indegree[to] += 1;
        }
        if indegree[root] == 0 && (0..n).all(|x| x == root || indegree[x] == 1) {
            out.push(parent);
        }
    }
    out
}

/// Uniformly random labelled tree over `n` vertices as an edge list.
pub fn random_tree(rng: &mut RandomSource, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    (1..n)
        .map(|k| {
            let p = order[rng.below(k as u64) as usize];
            if rng.coin_flip() {
                (p, order[k])
            } else {
                (order[k], p)
            }
        })
        .collect()
}

/// Random dependency tree over `n` tokens.
pub fn random_dependency_tree(rng: &mut RandomSource, n: usize) -> Vec<usize> {
    let edges = random_tree(rng, n + 1);
    // Orient by BFS from vertex 0 without using the library.
    let mut adj = vec![Vec::new(); n + 1];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut heads = vec![usize::MAX; n + 1];
    heads[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if heads[y] == usize::MAX {
                heads[y] = x;
                queue.push_back(y);
            }
        }
    }
    heads[1..].to_vec()
}
