use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::TemporalMultigraph;

/// How many incidences a self-loop adds to its user's degree.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfLoopDegree {
    /// Activity-count semantics: one post, one incidence.
    #[default]
    Once,
    Twice,
    Ignore,
}

impl SelfLoopDegree {
    pub fn weight(self) -> usize {
        match self {
            SelfLoopDegree::Once => 1,
            SelfLoopDegree::Twice => 2,
            SelfLoopDegree::Ignore => 0,
        }
    }
}

/// Dataset summary. Density is measured on the simple undirected view;
/// `deg_avg` counts every event incidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n_users: usize,
    pub n_events: usize,
    pub n_timestamps: usize,
    pub density: f64,
    pub deg_avg: f64,
    pub self_loop_degree: SelfLoopDegree,
}

pub const DENSITY_CONVENTION: &str = "2|E_simple| / (n(n-1)) on the simple undirected view";

pub fn stats(g: &TemporalMultigraph) -> GraphStats {
    stats_with(g, SelfLoopDegree::default())
}

pub fn stats_with(g: &TemporalMultigraph, self_loops: SelfLoopDegree) -> GraphStats {
    let n = g.n_users();
    let n_timestamps = g.events().iter().map(|e| e.t).collect::<BTreeSet<_>>().len();
    let incidences: usize = g
        .events()
        .iter()
        .map(|e| if e.is_self_loop() { self_loops.weight() } else { 2 })
        .sum();
    let density = if n < 2 {
        0.0
    } else {
        let simple = g.to_simple_undirected().n_edges();
        2.0 * simple as f64 / (n as f64 * (n as f64 - 1.0))
    };
    GraphStats {
        n_users: n,
        n_events: g.n_events(),
        n_timestamps,
        density,
        deg_avg: if n == 0 { 0.0 } else { incidences as f64 / n as f64 },
        self_loop_degree: self_loops,
    }
}
