//! Integer max-flow (Dinic) used by the connectivity test and the exact
//! density search.

use crate::graph::Graph;

const INF: i64 = i64::MAX / 4;

pub struct Dinic {
    to: Vec<u32>,
    cap: Vec<i64>,
    head: Vec<Vec<u32>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Dinic {
    pub fn new(n: usize) -> Self {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); n],
            level: vec![-1; n],
            cursor: vec![0; n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        let id = self.to.len() as u32;
        self.to.push(v as u32);
        self.cap.push(cap);
        self.to.push(u as u32);
        self.cap.push(0);
        self.head[u].push(id);
        self.head[v].push(id + 1);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.cursor[u] < self.head[u].len() {
            let e = self.head[u][self.cursor[u]] as usize;
            let v = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Max flow from `s` to `t`, stopping early once `limit` is reached.
    pub fn max_flow_capped(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.cursor.fill(0);
            loop {
                let pushed = self.dfs(s, t, limit - flow);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        self.max_flow_capped(s, t, INF)
    }

    /// Vertices reachable from `s` in the residual network; call after a
    /// max-flow run to read off the minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Number of internally vertex-disjoint paths between the non-adjacent pair
/// `(s, t)`, capped at `limit`. Uses the standard split-vertex construction:
/// every vertex other than the endpoints becomes an in/out pair joined by a
/// unit-capacity arc.
pub fn vertex_disjoint_paths(g: &Graph, s: u32, t: u32, limit: usize) -> i64 {
    let n = g.vertex_count();
    // Node layout: v_in = 2v, v_out = 2v + 1.
    let mut net = Dinic::new(2 * n);
    for v in 0..n as u32 {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_edge(2 * v as usize, 2 * v as usize + 1, cap);
    }
    for (u, v) in g.edges() {
        net.add_edge(2 * u as usize + 1, 2 * v as usize, INF);
        net.add_edge(2 * v as usize + 1, 2 * u as usize, INF);
    }
    net.max_flow_capped(2 * s as usize + 1, 2 * t as usize, limit as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_capacity_paths() {
        // C4: two disjoint paths between opposite corners.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(vertex_disjoint_paths(&g, 0, 2, 10), 2);
    }

    #[test]
    fn path_graph_has_single_route() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(vertex_disjoint_paths(&g, 0, 2, 10), 1);
    }

    #[test]
    fn disconnected_pair_has_no_route() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_disjoint_paths(&g, 0, 2, 10), 0);
    }
}
