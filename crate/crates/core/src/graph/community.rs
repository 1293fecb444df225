use super::{Event, GraphId, SimpleGraph, TemporalMultigraph, UserId};
use crate::error::{Error, Result};

/// A user subset of a parent graph together with every parent event whose
/// endpoints both lie in the subset.
#[derive(Clone, Debug)]
pub struct Community {
    parent: GraphId,
    members: Vec<UserId>,
    mask: Vec<bool>,
    events: Vec<u32>,
}

/// Maps a member set back onto `g`, collecting all events among members
/// (self-loops and parallel events included).
pub fn induce(g: &TemporalMultigraph, members: impl IntoIterator<Item = UserId>) -> Result<Community> {
    let mut members: Vec<UserId> = members.into_iter().collect();
    members.sort_unstable();
    members.dedup();
    let mut mask = vec![false; g.n_users()];
    for &u in &members {
        g.check_user(u)?;
        mask[u.index()] = true;
    }
    let mut events = Vec::new();
    for &u in &members {
        // each event is seen exactly once, from its source
        for &pos in g.incident(u) {
            let e = &g.events()[pos as usize];
            if e.src == u && mask[e.dst.index()] {
                events.push(pos);
            }
        }
    }
    events.sort_unstable();
    Ok(Community {
        parent: g.id(),
        members,
        mask,
        events,
    })
}

impl Community {
    pub fn parent(&self) -> GraphId {
        self.parent
    }

    pub fn check_parent(&self, g: &TemporalMultigraph) -> Result<()> {
        if self.parent == g.id() {
            Ok(())
        } else {
            Err(Error::ForeignCommunity)
        }
    }

    /// Members in ascending id order.
    pub fn members(&self) -> &[UserId] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, u: UserId) -> bool {
        self.mask.get(u.index()).copied().unwrap_or(false)
    }

    pub fn check_member(&self, u: UserId) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::Contract(format!("user {u} is not a community member")))
        }
    }

    /// Positions of the community's events in the parent's event list.
    pub fn event_positions(&self) -> &[u32] {
        &self.events
    }

    pub fn n_events(&self) -> usize {
        self.events.len()
    }

    /// Community events in `(t, id)` order. `g` must be the parent.
    pub fn events<'g>(&'g self, g: &'g TemporalMultigraph) -> impl Iterator<Item = &'g Event> + 'g {
        debug_assert_eq!(self.parent, g.id());
        self.events.iter().map(move |&p| &g.events()[p as usize])
    }

    /// Position of `u` in [`members`](Self::members).
    pub fn local_index(&self, u: UserId) -> Option<usize> {
        self.members.binary_search(&u).ok()
    }

    /// Simple undirected view over local indices `0..size()`.
    pub fn simple_undirected(&self, g: &TemporalMultigraph) -> SimpleGraph {
        let local = |u: UserId| self.local_index(u).expect("event endpoint is a member") as u32;
        SimpleGraph::from_pairs(self.size(), self.events(g).map(|e| (local(e.src), local(e.dst))))
    }

    /// Event-incidence degree of every member inside the community, in
    /// member order. Self-loops count once.
    pub fn multigraph_degrees(&self, g: &TemporalMultigraph) -> Vec<usize> {
        let mut deg = vec![0usize; self.size()];
        for e in self.events(g) {
            deg[self.local_index(e.src).expect("member")] += 1;
            if !e.is_self_loop() {
                deg[self.local_index(e.dst).expect("member")] += 1;
            }
        }
        deg
    }
}
