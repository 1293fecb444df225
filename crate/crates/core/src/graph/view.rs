//! Simple-graph views with parallel edges collapsed and self-loops dropped.

/// Undirected simple graph over nodes `0..n`. Adjacency lists are sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

impl SimpleGraph {
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in pairs {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    #[inline]
    pub fn degree(&self, u: u32) -> usize {
        self.adj[u as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// Nodes reachable from `start`, sorted, using only nodes for which
    /// `allowed` holds. `start` itself must be allowed.
    pub fn component_of(&self, start: u32, allowed: impl Fn(u32) -> bool) -> Vec<u32> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start as usize] = true;
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            out.push(u);
            for &v in self.neighbors(u) {
                if !seen[v as usize] && allowed(v) {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether the subgraph induced by `nodes` is connected. Empty is not.
    pub fn is_connected_subset(&self, nodes: &[u32]) -> bool {
        let Some(&first) = nodes.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &u in nodes {
            inside[u as usize] = true;
        }
        self.component_of(first, |v| inside[v as usize]).len()
            == nodes.iter().filter(|&&u| inside[u as usize]).count()
    }
}

/// Directed simple graph over nodes `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleDigraph {
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
}

impl SimpleDigraph {
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u != v {
                out[u as usize].push(v);
                inc[v as usize].push(u);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        SimpleDigraph { out, inc }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        &self.out[u as usize]
    }

    pub fn in_neighbors(&self, u: u32) -> &[u32] {
        &self.inc[u as usize]
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u as u32, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::rec;
    use crate::graph::TemporalMultigraph;

    #[test]
    fn parallel_and_reverse_collapse() {
        let mut rs = vec![rec(0, 1, 0, 1); 5];
        rs.push(rec(1, 0, 1, 1));
        rs.push(rec(1, 0, 2, -1));
        let g = TemporalMultigraph::from_records(rs);
        let u = g.to_simple_undirected();
        assert_eq!(u.n_edges(), 1);
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let d = g.to_simple_directed();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn self_loops_dropped() {
        let g = TemporalMultigraph::from_records([rec(0, 0, 0, 1), rec(1, 1, 0, 1), rec(1, 1, 3, 0)]);
        assert_eq!(g.to_simple_undirected().n_edges(), 0);
        assert_eq!(g.to_simple_directed().n_arcs(), 0);
    }

    #[test]
    fn twelve_event_fixture_collapses_to_four_edges() {
        // pairs: {0,1} x4 (both directions), {1,2} x3, {2,3} x2, {0,3} x1, self-loops x2
        let rs = vec![
            rec(0, 1, 0, 1),
            rec(1, 0, 1, 1),
            rec(0, 1, 2, 0),
            rec(1, 0, 3, -1),
            rec(1, 2, 4, 1),
            rec(2, 1, 5, 1),
            rec(1, 2, 6, 0),
            rec(2, 3, 7, 1),
            rec(3, 2, 8, 1),
            rec(0, 3, 9, 1),
            rec(2, 2, 10, 1),
            rec(3, 3, 11, 0),
        ];
        let g = TemporalMultigraph::from_records(rs.clone());
        // exhaustive collapse oracle
        let mut pairs: Vec<(u64, u64)> = rs
            .iter()
            .filter(|r| r.src != r.dst)
            .map(|r| (r.src.min(r.dst), r.src.max(r.dst)))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 4);
        assert_eq!(g.to_simple_undirected().n_edges(), 4);
    }

    #[test]
    fn connectivity_of_subsets() {
        let g = SimpleGraph::from_pairs(5, [(0, 1), (1, 2), (3, 4)]);
        assert!(g.is_connected_subset(&[0, 1, 2]));
        assert!(!g.is_connected_subset(&[0, 2]));
        assert!(!g.is_connected_subset(&[]));
        assert!(g.is_connected_subset(&[3]));
        assert_eq!(g.component_of(0, |_| true), vec![0, 1, 2]);
    }
}
