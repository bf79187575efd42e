//! Hopcroft–Karp maximum bipartite matching.
//!
//! Used by the transversal matroid oracle, by the large-gift assignment of the
//! Santa pipeline and by the exchange-graph checks.

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// Maximum matching between the `active` left vertices and the right side.
///
/// `adj[u]` lists the right neighbours of left vertex `u`. Left vertices not in
/// `active` are ignored. Returns `mate[u]` for every left vertex (`None` for
/// inactive or unmatched vertices).
pub fn maximum_matching(
    adj: &[Vec<usize>],
    right_count: usize,
    active: &[usize],
) -> Vec<Option<usize>> {
    let mut hk = HopcroftKarp::new(adj, right_count, active);
    hk.run();
    hk.mate_left
        .iter()
        .map(|&r| if r == UNMATCHED { None } else { Some(r) })
        .collect()
}

/// Size of a maximum matching restricted to `active` left vertices.
pub fn matching_size(adj: &[Vec<usize>], right_count: usize, active: &[usize]) -> usize {
    let mut hk = HopcroftKarp::new(adj, right_count, active);
    hk.run()
}

/// True iff every active left vertex can be matched simultaneously.
pub fn saturates(adj: &[Vec<usize>], right_count: usize, active: &[usize]) -> bool {
    if active.len() > right_count {
        return false;
    }
    matching_size(adj, right_count, active) == active.len()
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    active: &'a [usize],
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
    dist: Vec<u32>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(adj: &'a [Vec<usize>], right_count: usize, active: &'a [usize]) -> Self {
        Self {
            adj,
            active,
            mate_left: vec![UNMATCHED; adj.len()],
            mate_right: vec![UNMATCHED; right_count],
            dist: vec![INF; adj.len()],
        }
    }

    fn run(&mut self) -> usize {
        let mut size = 0;
        while self.bfs() {
            for idx in 0..self.active.len() {
                let u = self.active[idx];
                if self.mate_left[u] == UNMATCHED && self.dfs(u) {
                    size += 1;
                }
            }
        }
        size
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for d in self.dist.iter_mut() {
            *d = INF;
        }
        for &u in self.active {
            if self.mate_left[u] == UNMATCHED {
                self.dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = self.mate_right[v];
                if w == UNMATCHED {
                    found = true;
                } else if self.dist[w] == INF {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let w = self.mate_right[v];
            let ok = if w == UNMATCHED {
                true
            } else if self.dist[w] == self.dist[u] + 1 {
                self.dfs(w)
            } else {
                false
            };
            if ok {
                self.mate_left[u] = v;
                self.mate_right[v] = u;
                return true;
            }
        }
        self.dist[u] = INF;
        false
    }
}
