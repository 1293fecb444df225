//! Temporal directed multigraph of users and time-stamped, sentiment-labeled events.
//!
//! Events are either interactions (`src != dst`) or individual activity
//! (self-loops). Parallel events between the same pair are kept. After
//! construction a graph is immutable; every derived structure (communities,
//! simple views, statistics) borrows or copies from it.

mod community;
mod components;
mod stats;
mod view;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use community::{induce, Community};
pub use components::{largest_weak_component, weak_components};
pub use stats::{stats, stats_with, GraphStats, SelfLoopDegree, DENSITY_CONVENTION};
pub use view::{SimpleDigraph, SimpleGraph};

/// Integer epoch seconds.
pub type Timestamp = i64;

/// Dense user index, `0..n_users`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub u32);

impl UserId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Three-class sentiment polarity of an event.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sentiment {
    Negative,
    Neutral,
    Positive,
}

impl Sentiment {
    #[inline]
    pub fn polarity(self) -> i8 {
        match self {
            Sentiment::Negative => -1,
            Sentiment::Neutral => 0,
            Sentiment::Positive => 1,
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        f64::from(self.polarity())
    }

    pub fn negated(self) -> Self {
        match self {
            Sentiment::Negative => Sentiment::Positive,
            Sentiment::Neutral => Sentiment::Neutral,
            Sentiment::Positive => Sentiment::Negative,
        }
    }
}

impl TryFrom<i64> for Sentiment {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, Self::Error> {
        match v {
            -1 => Ok(Sentiment::Negative),
            0 => Ok(Sentiment::Neutral),
            1 => Ok(Sentiment::Positive),
            other => Err(format!("sentiment {other} is not one of -1, 0, 1")),
        }
    }
}

impl From<Sentiment> for i64 {
    fn from(s: Sentiment) -> i64 {
        i64::from(s.polarity())
    }
}

/// One directed, time-stamped activity. `id` is the ingestion ordinal and
/// breaks ties between events sharing a timestamp.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub id: u32,
    pub src: UserId,
    pub dst: UserId,
    pub t: Timestamp,
    pub sentiment: Sentiment,
}

impl Event {
    #[inline]
    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }

    /// Total order used everywhere events are sequenced.
    #[inline]
    pub fn order_key(&self) -> (Timestamp, u32) {
        (self.t, self.id)
    }

    #[inline]
    pub fn precedes(&self, other: &Event) -> bool {
        self.order_key() < other.order_key()
    }

    /// The endpoint opposite `u`, if `u` takes part in this event and it is
    /// not a self-loop.
    #[inline]
    pub fn partner_of(&self, u: UserId) -> Option<UserId> {
        if self.is_self_loop() {
            None
        } else if self.src == u {
            Some(self.dst)
        } else if self.dst == u {
            Some(self.src)
        } else {
            None
        }
    }
}

/// Opaque identity of a constructed graph. Clones share it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphId(u64);

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

impl GraphId {
    fn fresh() -> Self {
        GraphId(NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Raw edge record in external ids, as read from an edge list.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub src: u64,
    pub dst: u64,
    pub timestamp: Timestamp,
    pub sentiment: Sentiment,
}

#[derive(Clone, Debug)]
pub struct TemporalMultigraph {
    id: GraphId,
    /// `external[u]` is the original id of user `u`; strictly ascending.
    external: Vec<u64>,
    /// Sorted by `(t, id)`.
    events: Vec<Event>,
    /// Per-user indices into `events`, ascending. Self-loops appear once.
    incident: Vec<Vec<u32>>,
}

impl Default for TemporalMultigraph {
    fn default() -> Self {
        Self::from_records(std::iter::empty())
    }
}

impl TemporalMultigraph {
    /// Builds a graph from external-id records. Users are renumbered densely
    /// in ascending external-id order; event ids are the record ordinals.
    pub fn from_records(records: impl IntoIterator<Item = EdgeRecord>) -> Self {
        let records: Vec<EdgeRecord> = records.into_iter().collect();
        let mut external: Vec<u64> = records.iter().flat_map(|r| [r.src, r.dst]).collect();
        external.sort_unstable();
        external.dedup();

        let lookup = |x: u64| UserId(external.binary_search(&x).expect("collected above") as u32);
        let events = records
            .iter()
            .enumerate()
            .map(|(i, r)| Event {
                id: i as u32,
                src: lookup(r.src),
                dst: lookup(r.dst),
                t: r.timestamp,
                sentiment: r.sentiment,
            })
            .collect();
        Self::from_parts(external, events)
    }

    fn from_parts(external: Vec<u64>, mut events: Vec<Event>) -> Self {
        events.sort_by_key(Event::order_key);
        let mut incident = vec![Vec::new(); external.len()];
        for (idx, e) in events.iter().enumerate() {
            incident[e.src.index()].push(idx as u32);
            if !e.is_self_loop() {
                incident[e.dst.index()].push(idx as u32);
            }
        }
        TemporalMultigraph {
            id: GraphId::fresh(),
            external,
            events,
            incident,
        }
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn n_users(&self) -> usize {
        self.external.len()
    }

    pub fn n_events(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.external.is_empty()
    }

    pub fn users(&self) -> impl ExactSizeIterator<Item = UserId> + '_ {
        (0..self.external.len() as u32).map(UserId)
    }

    pub fn contains(&self, u: UserId) -> bool {
        u.index() < self.external.len()
    }

    pub fn check_user(&self, u: UserId) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::UnknownUser(u))
        }
    }

    /// All events in `(t, id)` order.
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Positions (into [`events`](Self::events)) of events touching `u`.
    pub fn incident(&self, u: UserId) -> &[u32] {
        &self.incident[u.index()]
    }

    pub fn incident_events(&self, u: UserId) -> impl Iterator<Item = &Event> + '_ {
        self.incident[u.index()]
            .iter()
            .map(move |&i| &self.events[i as usize])
    }

    pub fn external_id(&self, u: UserId) -> u64 {
        self.external[u.index()]
    }

    pub fn user_by_external(&self, ext: u64) -> Option<UserId> {
        self.external
            .binary_search(&ext)
            .ok()
            .map(|i| UserId(i as u32))
    }

    pub fn min_timestamp(&self) -> Option<Timestamp> {
        self.events.first().map(|e| e.t)
    }

    pub fn max_timestamp(&self) -> Option<Timestamp> {
        self.events.last().map(|e| e.t)
    }

    /// Event-incidence degree of `u`.
    pub fn degree(&self, u: UserId, self_loops: SelfLoopDegree) -> usize {
        let loops = self
            .incident_events(u)
            .filter(|e| e.is_self_loop())
            .count();
        self.incident[u.index()].len() - loops + loops * self_loops.weight()
    }

    /// Edge records in external ids, in event order.
    pub fn records(&self) -> impl Iterator<Item = EdgeRecord> + '_ {
        self.events.iter().map(|e| EdgeRecord {
            src: self.external[e.src.index()],
            dst: self.external[e.dst.index()],
            timestamp: e.t,
            sentiment: e.sentiment,
        })
    }

    /// Copy of this graph with every sentiment passed through `f`. The copy
    /// has a new identity.
    pub fn map_sentiments(&self, mut f: impl FnMut(&Event) -> Sentiment) -> Self {
        let events = self
            .events
            .iter()
            .map(|e| Event {
                sentiment: f(e),
                ..*e
            })
            .collect();
        TemporalMultigraph {
            id: GraphId::fresh(),
            external: self.external.clone(),
            events,
            incident: self.incident.clone(),
        }
    }

    /// Copy with every sentiment negated.
    pub fn negated(&self) -> Self {
        self.map_sentiments(|e| e.sentiment.negated())
    }

    /// Subgraph induced by `users`, renumbered densely. Event ordinals are
    /// reassigned in the existing event order, so ties keep their order.
    pub fn subgraph(&self, users: &[UserId]) -> Result<Self> {
        let mut keep = vec![u32::MAX; self.n_users()];
        let mut sorted = users.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &u in &sorted {
            self.check_user(u)?;
        }
        let external: Vec<u64> = sorted.iter().map(|&u| self.external_id(u)).collect();
        for (new, &u) in sorted.iter().enumerate() {
            keep[u.index()] = new as u32;
        }
        let events = self
            .events
            .iter()
            .filter(|e| keep[e.src.index()] != u32::MAX && keep[e.dst.index()] != u32::MAX)
            .enumerate()
            .map(|(i, e)| Event {
                id: i as u32,
                src: UserId(keep[e.src.index()]),
                dst: UserId(keep[e.dst.index()]),
                ..*e
            })
            .collect();
        Ok(Self::from_parts(external, events))
    }

    pub fn to_simple_undirected(&self) -> SimpleGraph {
        SimpleGraph::from_pairs(
            self.n_users(),
            self.events.iter().map(|e| (e.src.0, e.dst.0)),
        )
    }

    pub fn to_simple_directed(&self) -> SimpleDigraph {
        SimpleDigraph::from_arcs(
            self.n_users(),
            self.events.iter().map(|e| (e.src.0, e.dst.0)),
        )
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn rec(src: u64, dst: u64, t: i64, s: i64) -> EdgeRecord {
        EdgeRecord {
            src,
            dst,
            timestamp: t,
            sentiment: Sentiment::try_from(s).unwrap(),
        }
    }

    #[test]
    fn three_records_two_users() {
        let g = TemporalMultigraph::from_records([rec(10, 20, 5, 1), rec(20, 10, 3, 0), rec(10, 20, 5, -1)]);
        assert_eq!(g.n_users(), 2);
        assert_eq!(g.n_events(), 3);
        let order: Vec<_> = g.events().iter().map(|e| e.id).collect();
        assert_eq!(order, vec![1, 0, 2]);
    }

    #[test]
    fn users_renumbered_by_external_order() {
        let g = TemporalMultigraph::from_records([rec(900, 7, 0, 1), rec(42, 42, 1, 0)]);
        assert_eq!(g.external_id(UserId(0)), 7);
        assert_eq!(g.external_id(UserId(1)), 42);
        assert_eq!(g.external_id(UserId(2)), 900);
        assert_eq!(g.user_by_external(42), Some(UserId(1)));
        assert_eq!(g.user_by_external(43), None);
    }

    #[test]
    fn self_loops_listed_once_in_incidence() {
        let g = TemporalMultigraph::from_records([rec(1, 1, 0, 1), rec(1, 2, 1, 1)]);
        assert_eq!(g.incident(UserId(0)).len(), 2);
        assert_eq!(g.degree(UserId(0), SelfLoopDegree::Once), 2);
        assert_eq!(g.degree(UserId(0), SelfLoopDegree::Twice), 3);
        assert_eq!(g.degree(UserId(0), SelfLoopDegree::Ignore), 1);
    }

    #[test]
    fn negation_is_new_identity() {
        let g = TemporalMultigraph::from_records([rec(1, 2, 0, 1), rec(2, 1, 1, 0)]);
        let n = g.negated();
        assert_ne!(g.id(), n.id());
        assert_eq!(n.events()[0].sentiment, Sentiment::Negative);
        assert_eq!(n.events()[1].sentiment, Sentiment::Neutral);
        assert_eq!(g.clone().id(), g.id());
    }

    #[test]
    fn sentiment_conversion_rejects_out_of_range() {
        assert!(Sentiment::try_from(2).is_err());
        assert_eq!(i64::from(Sentiment::Negative), -1);
    }
}
