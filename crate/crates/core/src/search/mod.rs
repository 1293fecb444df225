//! Reference community-search algorithms from the k-core and k-truss
//! families.
//!
//! Each searcher takes a single query node and either returns a connected
//! member set containing it or a [`NotFoundReason`]. Searchers run on simple
//! views of the multigraph; the harness maps results back with
//! [`induce`](crate::graph::induce).

mod cores;
mod truss;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleDigraph, SimpleGraph, TemporalMultigraph, UserId};

pub use cores::{core_numbers, kl_core_search, kl_core_survivors, max_core_search};
pub use truss::{size_bounded_truss_search, truss_search, truss_survivors, EdgeIndex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Connected component of the query in its maximum core.
    MaxCore,
    /// Directed (k, l)-core on the simple digraph.
    KlCore,
    /// Edge-connected k-truss component of the query.
    Truss,
    /// Greedy size-bounded maximum-support expansion. Heuristic.
    StTruss,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::MaxCore, Algorithm::KlCore, Algorithm::Truss, Algorithm::StTruss];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::MaxCore => "max-core",
            Algorithm::KlCore => "kl-core",
            Algorithm::Truss => "truss",
            Algorithm::StTruss => "st-truss",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Algorithm::MaxCore => &[],
            Algorithm::KlCore => &["k", "l"],
            Algorithm::Truss => &["k"],
            Algorithm::StTruss => &["l", "h"],
        }
    }

    pub fn is_heuristic(self) -> bool {
        self == Algorithm::StTruss
    }

    /// Checks that `params` has exactly the keys this algorithm reads and
    /// that their values are in range.
    pub fn validate_params(self, params: &Params) -> Result<()> {
        let names = self.param_names();
        if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::InvalidParams(format!("{} does not take parameter {extra:?}", self.id())));
        }
        if let Some(missing) = names.iter().find(|n| !params.contains_key(**n)) {
            return Err(Error::InvalidParams(format!("{} needs parameter {missing:?}", self.id())));
        }
        match self {
            Algorithm::Truss if params["k"] < 2 => {
                Err(Error::InvalidParams(format!("truss k must be at least 2, got {}", params["k"])))
            }
            Algorithm::StTruss if !(1 <= params["l"] && params["l"] <= params["h"]) => Err(Error::InvalidParams(
                format!("size bounds need 1 <= l <= h, got [{}, {}]", params["l"], params["h"]),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown algorithm {s:?}")))
    }
}

/// Named integer parameters of one search.
pub type Params = BTreeMap<String, u32>;

pub fn format_params(params: &Params) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRequest {
    pub query: UserId,
    pub algorithm: Algorithm,
    pub params: Params,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotFoundReason {
    QueryPeeled,
    NoSurvivingEdge,
    ComponentTooSmall,
    InvalidResult,
    QueryAbsent,
    TimedOut,
}

impl NotFoundReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotFoundReason::QueryPeeled => "query peeled",
            NotFoundReason::NoSurvivingEdge => "no surviving edge",
            NotFoundReason::ComponentTooSmall => "component too small",
            NotFoundReason::InvalidResult => "invalid result",
            NotFoundReason::QueryAbsent => "query absent",
            NotFoundReason::TimedOut => "timed out",
        }
    }
}

impl fmt::Display for NotFoundReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        /// Sorted ascending.
        members: Vec<UserId>,
        note: Option<&'static str>,
    },
    NotFound(NotFoundReason),
}

impl SearchOutcome {
    pub(crate) fn found(nodes: Vec<u32>) -> Self {
        SearchOutcome::Found {
            members: nodes.into_iter().map(UserId).collect(),
            note: None,
        }
    }

    pub fn members(&self) -> Option<&[UserId]> {
        match self {
            SearchOutcome::Found { members, .. } => Some(members),
            SearchOutcome::NotFound(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// Rejects results that do not contain the query or are not connected in
/// `view`.
pub fn validate(outcome: SearchOutcome, query: UserId, view: &SimpleGraph) -> SearchOutcome {
    match &outcome {
        SearchOutcome::Found { members, .. } => {
            if !members.contains(&query) {
                return SearchOutcome::NotFound(NotFoundReason::QueryAbsent);
            }
            let nodes: Vec<u32> = members.iter().map(|u| u.0).collect();
            if nodes.iter().any(|&u| u as usize >= view.n()) || !view.is_connected_subset(&nodes) {
                return SearchOutcome::NotFound(NotFoundReason::InvalidResult);
            }
            outcome
        }
        SearchOutcome::NotFound(_) => outcome,
    }
}

/// Simple views of one multigraph plus peeling results shared across
/// queries. Safe to share between worker threads.
type PeelCache<K> = Mutex<HashMap<K, Arc<Vec<bool>>>>;

pub struct GraphViews {
    undirected: SimpleGraph,
    directed: SimpleDigraph,
    cores: OnceLock<Vec<u32>>,
    edge_index: OnceLock<EdgeIndex>,
    kl_cache: PeelCache<(u32, u32)>,
    truss_cache: PeelCache<u32>,
}

impl GraphViews {
    pub fn new(g: &TemporalMultigraph) -> Self {
        GraphViews {
            undirected: g.to_simple_undirected(),
            directed: g.to_simple_directed(),
            cores: OnceLock::new(),
            edge_index: OnceLock::new(),
            kl_cache: Mutex::new(HashMap::new()),
            truss_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn undirected(&self) -> &SimpleGraph {
        &self.undirected
    }

    pub fn directed(&self) -> &SimpleDigraph {
        &self.directed
    }

    pub fn core_numbers(&self) -> &[u32] {
        self.cores.get_or_init(|| core_numbers(&self.undirected))
    }

    pub fn edge_index(&self) -> &EdgeIndex {
        self.edge_index.get_or_init(|| EdgeIndex::new(&self.undirected))
    }

    fn kl_survivors(&self, k: u32, l: u32) -> Arc<Vec<bool>> {
        if let Some(hit) = self.kl_cache.lock().expect("cache lock").get(&(k, l)) {
            return hit.clone();
        }
        let alive = Arc::new(kl_core_survivors(self.directed(), k, l));
        self.kl_cache.lock().expect("cache lock").insert((k, l), alive.clone());
        alive
    }

    fn truss_alive(&self, k: u32) -> Arc<Vec<bool>> {
        if let Some(hit) = self.truss_cache.lock().expect("cache lock").get(&k) {
            return hit.clone();
        }
        let alive = Arc::new(truss_survivors(&self.undirected, self.edge_index(), k));
        self.truss_cache.lock().expect("cache lock").insert(k, alive.clone());
        alive
    }

    /// Runs and validates one search.
    pub fn search(&self, request: &SearchRequest) -> Result<SearchOutcome> {
        let q = request.query;
        if q.index() >= self.undirected.n() {
            return Err(Error::UnknownUser(q));
        }
        request.algorithm.validate_params(&request.params)?;
        let p = |name: &str| request.params[name];
        let outcome = match request.algorithm {
            Algorithm::MaxCore => cores::max_core_from_numbers(&self.undirected, self.core_numbers(), q.0),
            Algorithm::KlCore => {
                let alive = self.kl_survivors(p("k"), p("l"));
                cores::weak_component_of(self.directed(), &alive, q.0)
            }
            Algorithm::Truss => {
                let alive = self.truss_alive(p("k"));
                truss::edge_component_of(&self.undirected, self.edge_index(), &alive, q.0)
            }
            Algorithm::StTruss => size_bounded_truss_search(&self.undirected, q, p("l"), p("h"))?,
        };
        Ok(validate(outcome, q, &self.undirected))
    }
}
