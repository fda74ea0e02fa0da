//! Reverse Cuthill–McKee ordering.

use std::collections::VecDeque;

use crate::matrix::SimilarityMatrix;

/// Symmetrized off-diagonal adjacency lists, each sorted.
fn adjacency(s: &SimilarityMatrix) -> Vec<Vec<usize>> {
    let n = s.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, _) in s.triplets() {
        if i != j {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// BFS level sets from `root`, restricted to unvisited nodes.
fn levels(adj: &[Vec<usize>], root: usize, visited: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = visited.to_vec();
    seen[root] = true;
    let mut out = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        for &u in out.last().unwrap() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            return out;
        }
        out.push(next);
    }
}

/// George–Liu pseudo-peripheral node search inside the component of `start`.
fn pseudo_peripheral(adj: &[Vec<usize>], start: usize, visited: &[bool]) -> usize {
    let by_degree = |u: &&usize| (adj[**u].len(), **u);
    let component: Vec<usize> = levels(adj, start, visited).concat();
    let mut root = *component.iter().min_by_key(by_degree).unwrap();
    let mut ls = levels(adj, root, visited);
    loop {
        let candidate = *ls.last().unwrap().iter().min_by_key(by_degree).unwrap();
        let cand_ls = levels(adj, candidate, visited);
        if cand_ls.len() > ls.len() {
            root = candidate;
            ls = cand_ls;
        } else {
            return root;
        }
    }
}

/// Reverse Cuthill–McKee ordering of the sparsity graph of `s`.
///
/// Returns `perm` with `perm[new] = old`. Components are ordered by their
/// lowest original index and reversed individually, so a diagonal matrix
/// yields the identity.
pub fn rcm_order(s: &SimilarityMatrix) -> Vec<usize> {
    let n = s.n();
    let adj = adjacency(s);
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let root = pseudo_peripheral(&adj, start, &visited);
        let first = order.len();
        let mut queue = VecDeque::from([root]);
        visited[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut nbrs: Vec<usize> = adj[u].iter().copied().filter(|&v| !visited[v]).collect();
            nbrs.sort_unstable_by_key(|&v| (adj[v].len(), v));
            for v in nbrs {
                visited[v] = true;
                queue.push_back(v);
            }
        }
        order[first..].reverse();
    }
    order
}

/// Maximum `|i − j|` over stored entries after relabeling with `perm`
/// (`perm[new] = old`).
pub fn bandwidth(s: &SimilarityMatrix, perm: &[usize]) -> usize {
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    s.triplets().map(|(i, j, _)| inv[i].abs_diff(inv[j])).max().unwrap_or(0)
}
