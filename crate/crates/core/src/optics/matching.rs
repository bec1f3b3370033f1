//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

/// Returns, for each left vertex, the right vertex it is matched to.
///
/// `adj[u]` lists the right-hand neighbours of left vertex `u`.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..adj.len() {
        let mut visited = vec![false; n_right];
        augment(u, adj, &mut visited, &mut match_right);
    }
    let mut match_left = vec![None; adj.len()];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = *u {
            match_left[u] = Some(v);
        }
    }
    match_left
}

fn augment(u: usize, adj: &[Vec<usize>], visited: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, adj, visited, match_right),
        };
        if free {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}
