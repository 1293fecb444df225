//! Classical structural cohesiveness of a community: diameter, size,
//! multigraph minimum degree and whole-community core/truss labels.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Community, SimpleGraph, TemporalMultigraph};

/// Longest shortest path, or `INF` when the community is disconnected.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diameter {
    Finite(u32),
    Infinite,
}

pub const INF: &str = "INF";

impl Diameter {
    pub fn as_f64(self) -> f64 {
        match self {
            Diameter::Finite(d) => f64::from(d),
            Diameter::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str(INF),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u32(*d),
            Diameter::Infinite => s.serialize_str(INF),
        }
    }
}

impl<'de> Deserialize<'de> for Diameter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Diameter::Finite(n)),
            Raw::Str(s) if s == INF => Ok(Diameter::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad diameter {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructScores {
    pub diameter: Diameter,
    pub size: usize,
    pub deg_min: usize,
    pub core: usize,
    pub truss: usize,
}

fn bfs_eccentricity(view: &SimpleGraph, src: u32, dist: &mut [u32], queue: &mut VecDeque<u32>) -> Option<u32> {
    dist.fill(u32::MAX);
    dist[src as usize] = 0;
    queue.clear();
    queue.push_back(src);
    let mut reached = 1;
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        far = far.max(du);
        for &v in view.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    (reached == view.n()).then_some(far)
}

/// Diameter of a simple undirected graph.
pub fn simple_diameter(view: &SimpleGraph) -> Diameter {
    let mut dist = vec![0u32; view.n()];
    let mut queue = VecDeque::new();
    let mut best = 0;
    for u in 0..view.n() as u32 {
        match bfs_eccentricity(view, u, &mut dist, &mut queue) {
            Some(ecc) => best = best.max(ecc),
            None => return Diameter::Infinite,
        }
    }
    Diameter::Finite(best)
}

pub fn diameter(g: &TemporalMultigraph, community: &Community) -> Result<Diameter> {
    community.check_parent(g)?;
    if community.is_empty() {
        return Err(Error::Contract("diameter of an empty community".into()));
    }
    Ok(simple_diameter(&community.simple_undirected(g)))
}

/// Smallest event-incidence count over members; self-loops and parallel
/// events count.
pub fn min_degree_multigraph(g: &TemporalMultigraph, community: &Community) -> Result<usize> {
    community.check_parent(g)?;
    Ok(community.multigraph_degrees(g).into_iter().min().unwrap_or(0))
}

/// Number of common neighbours of `u` and `v`.
pub(crate) fn support(view: &SimpleGraph, u: u32, v: u32) -> usize {
    let (a, b) = (view.neighbors(u), view.neighbors(v));
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Largest `k` for which the whole view is a k-core.
pub fn simple_core_label(view: &SimpleGraph) -> usize {
    (0..view.n() as u32).map(|u| view.degree(u)).min().unwrap_or(0)
}

/// Largest `k` for which the whole view is a k-truss; 2 when edgeless.
pub fn simple_truss_label(view: &SimpleGraph) -> usize {
    view.edges().map(|(u, v)| support(view, u, v) + 2).min().unwrap_or(2)
}

pub fn core_number(g: &TemporalMultigraph, community: &Community) -> Result<usize> {
    community.check_parent(g)?;
    Ok(simple_core_label(&community.simple_undirected(g)))
}

pub fn truss_number(g: &TemporalMultigraph, community: &Community) -> Result<usize> {
    community.check_parent(g)?;
    Ok(simple_truss_label(&community.simple_undirected(g)))
}

pub fn measure(g: &TemporalMultigraph, community: &Community) -> Result<StructScores> {
    community.check_parent(g)?;
    if community.is_empty() {
        return Err(Error::Contract("structural scores of an empty community".into()));
    }
    let view = community.simple_undirected(g);
    Ok(StructScores {
        diameter: simple_diameter(&view),
        size: community.size(),
        deg_min: min_degree_multigraph(g, community)?,
        core: simple_core_label(&view),
        truss: simple_truss_label(&view),
    })
}
