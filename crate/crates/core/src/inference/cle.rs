//! Chu-Liu-Edmonds maximum spanning arborescence over a dense score table.

use alloc::vec;
use alloc::vec::Vec;

use super::DirectedScoreTable;
use crate::conll::DependencyTree;

/// Highest-scoring dependency tree rooted at vertex 0. Absent arcs are never
/// used as long as some tree avoids them; arcs out of the root should
/// therefore be present.
pub fn cle_directed_mst(scores: &DirectedScoreTable) -> DependencyTree {
    let n = scores.n_tokens();
    let mut w = vec![vec![f64::NEG_INFINITY; n + 1]; n + 1];
    for (h, row) in w.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = scores.get_or_neg_inf(h, m);
        }
    }
    let parent = chu_liu_edmonds(&w, 0);
    DependencyTree::new(parent[1..].iter().map(|p| p.expect("every token gets a head")).collect())
}

fn chu_liu_edmonds(w: &[Vec<f64>], root: usize) -> Vec<Option<usize>> {
    let n = w.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for v in (0..n).filter(|&v| v != root) {
        let mut best = if v == 0 { 1 } else { 0 };
        for u in 0..n {
            if u != v && w[u][v] > w[best][v] {
                best = u;
            }
        }
        parent[v] = Some(best);
    }

    let Some(cycle) = find_cycle(&parent) else {
        return parent;
    };

    let mut in_cycle = vec![false; n];
    for &v in &cycle {
        in_cycle[v] = true;
    }
    let mut new_index = vec![0usize; n];
    let mut old_of = Vec::with_capacity(n);
    for v in 0..n {
        if !in_cycle[v] {
            new_index[v] = old_of.len();
            old_of.push(v);
        }
    }
    let c = old_of.len();
    for &v in &cycle {
        new_index[v] = c;
    }

    // Arcs entering the cycle are rescored by what they displace; arcs
    // leaving it keep their score. Remember which cycle vertex realizes each.
    let size = c + 1;
    let mut contracted = vec![vec![f64::NEG_INFINITY; size]; size];
    let mut enters_at = vec![usize::MAX; size];
    let mut leaves_from = vec![usize::MAX; size];
    for u in 0..n {
        for v in 0..n {
            if u == v || w[u][v] == f64::NEG_INFINITY {
                continue;
            }
            let (nu, nv) = (new_index[u], new_index[v]);
            match (in_cycle[u], in_cycle[v]) {
                (false, false) => contracted[nu][nv] = w[u][v],
                (false, true) => {
                    let displaced = w[parent[v].expect("cycle vertex has a parent")][v];
                    let s = w[u][v] - displaced;
                    if s > contracted[nu][c] {
                        contracted[nu][c] = s;
                        enters_at[nu] = v;
                    }
                }
                (true, false) => {
                    if w[u][v] > contracted[c][nv] {
                        contracted[c][nv] = w[u][v];
                        leaves_from[nv] = u;
                    }
                }
                (true, true) => {}
            }
        }
    }

    let sub = chu_liu_edmonds(&contracted, new_index[root]);
    let mut result = parent;
    for v in (0..n).filter(|&v| !in_cycle[v] && v != root) {
        let nv = new_index[v];
        let p = sub[nv].expect("contracted vertex has a parent");
        result[v] = Some(if p == c { leaves_from[nv] } else { old_of[p] });
    }
    let from = sub[c].expect("contracted cycle has a parent");
    if enters_at[from] != usize::MAX {
        result[enters_at[from]] = Some(old_of[from]);
    } else {
        // Only absent arcs enter the cycle; break it at its first vertex.
        result[cycle[0]] = Some(old_of[from]);
    }
    result
}

/// Vertices of some cycle in the parent map, if any.
fn find_cycle(parent: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = parent.len();
    // 0 = unseen, 1 = on the current walk, 2 = finished.
    let mut state = vec![0u8; n];
    let mut walk = Vec::new();
    for start in 0..n {
        let mut x = start;
        walk.clear();
        while state[x] == 0 {
            state[x] = 1;
            walk.push(x);
            match parent[x] {
                Some(p) => x = p,
                None => break,
            }
        }
        if state[x] == 1 && parent[x].is_some() {
            let pos = walk.iter().position(|&y| y == x).expect("x is on the walk");
            return Some(walk[pos..].to_vec());
        }
        for &y in &walk {
            state[y] = 2;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_token() {
        let s = DirectedScoreTable::from_fn(1, |_, _| Some(1.0));
        assert_eq!(cle_directed_mst(&s).heads, vec![0]);
    }

    #[test]
    fn dominant_chain() {
        let s = DirectedScoreTable::from_fn(2, |h, m| Some(if m == h + 1 { 10.0 } else { 0.0 }));
        assert_eq!(cle_directed_mst(&s).heads, vec![0, 1]);
    }

    #[test]
    fn breaks_a_two_cycle() {
        // 1 and 2 prefer each other; the root arc into 2 is the cheaper loss.
        let mut s = DirectedScoreTable::from_fn(2, |_, _| Some(0.0));
        s.set(1, 2, 10.0);
        s.set(2, 1, 10.0);
        s.set(0, 1, 1.0);
        s.set(0, 2, 5.0);
        let tree = cle_directed_mst(&s);
        assert_eq!(tree.heads, vec![2, 0]);
        assert_eq!(s.tree_score(&tree), 15.0);
    }

    #[test]
    fn cycle_detection() {
        assert_eq!(find_cycle(&[None, Some(0), Some(1)]), None);
        let mut c = find_cycle(&[None, Some(3), Some(1), Some(2)]).unwrap();
        c.sort();
        assert_eq!(c, vec![1, 2, 3]);
    }
}
