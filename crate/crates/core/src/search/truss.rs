use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{NotFoundReason, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, UserId};
use crate::structural::support;

/// Dense ids for the edges of a [`SimpleGraph`]. Edge `(u, v)` with `u < v`
/// is numbered in lexicographic order.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    base: Vec<usize>,
    first_upper: Vec<usize>,
    edges: Vec<(u32, u32)>,
}

impl EdgeIndex {
    pub fn new(view: &SimpleGraph) -> Self {
        let mut base = Vec::with_capacity(view.n());
        let mut first_upper = Vec::with_capacity(view.n());
        let mut edges = Vec::with_capacity(view.n_edges());
        for u in 0..view.n() as u32 {
            let adj = view.neighbors(u);
            let start = adj.partition_point(|&v| v < u);
            base.push(edges.len());
            first_upper.push(start);
            edges.extend(adj[start..].iter().map(|&v| (u, v)));
        }
        EdgeIndex { base, first_upper, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn endpoints(&self, e: usize) -> (u32, u32) {
        self.edges[e]
    }

    pub fn id(&self, view: &SimpleGraph, u: u32, v: u32) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let pos = view.neighbors(a).binary_search(&b).ok()?;
        Some(self.base[a as usize] + pos - self.first_upper[a as usize])
    }
}

/// Edges surviving support peeling at threshold `k - 2`, indexed by
/// [`EdgeIndex`]. `k` below 2 is treated as 2.
pub fn truss_survivors(view: &SimpleGraph, index: &EdgeIndex, k: u32) -> Vec<bool> {
    let need = k.saturating_sub(2) as usize;
    let m = index.len();
    let mut sup: Vec<usize> = (0..m)
        .map(|e| {
            let (u, v) = index.endpoints(e);
            support(view, u, v)
        })
        .collect();
    let mut dead = vec![false; m];
    let mut queued = vec![false; m];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for e in 0..m {
        if sup[e] < need {
            queued[e] = true;
            queue.push_back(e);
        }
    }
    let mut common = Vec::new();
    while let Some(e) = queue.pop_front() {
        dead[e] = true;
        let (u, v) = index.endpoints(e);
        common.clear();
        common.extend(
            view.neighbors(u)
                .iter()
                .copied()
                .filter(|&w| view.neighbors(v).binary_search(&w).is_ok()),
        );
        for &w in &common {
            let e1 = index.id(view, u, w).expect("edge exists");
            let e2 = index.id(view, v, w).expect("edge exists");
            if dead[e1] || dead[e2] {
                // triangle already broken
                continue;
            }
            for f in [e1, e2] {
                sup[f] -= 1;
                if sup[f] < need && !queued[f] {
                    queued[f] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    dead.iter().map(|d| !d).collect()
}

pub(super) fn edge_component_of(view: &SimpleGraph, index: &EdgeIndex, alive: &[bool], q: u32) -> SearchOutcome {
    let live = |u: u32, v: u32| alive[index.id(view, u, v).expect("edge exists")];
    if !view.neighbors(q).iter().any(|&v| live(q, v)) {
        return SearchOutcome::NotFound(NotFoundReason::NoSurvivingEdge);
    }
    let mut seen = vec![false; view.n()];
    seen[q as usize] = true;
    let mut stack = vec![q];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &v in view.neighbors(u) {
            if !seen[v as usize] && live(u, v) {
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    out.sort_unstable();
    SearchOutcome::found(out)
}

/// Nodes reachable from `q` over edges of the k-truss.
pub fn truss_search(view: &SimpleGraph, q: UserId, k: u32) -> Result<SearchOutcome> {
    if q.index() >= view.n() {
        return Err(Error::UnknownUser(q));
    }
    if k < 2 {
        return Err(Error::InvalidParams(format!("truss k must be at least 2, got {k}")));
    }
    let index = EdgeIndex::new(view);
    let alive = truss_survivors(view, &index, k);
    Ok(edge_component_of(view, &index, &alive, q.0))
}

fn key(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Greedy state for one size-bounded expansion.
struct Expansion<'a> {
    view: &'a SimpleGraph,
    order: Vec<u32>,
    inside: Vec<bool>,
    /// candidate -> its neighbours already inside
    frontier: BTreeMap<u32, Vec<u32>>,
    /// support of each inside edge, counted inside
    edge_sup: HashMap<(u32, u32), u32>,
    min_sup: Option<u32>,
    at_min: usize,
}

impl<'a> Expansion<'a> {
    fn new(view: &'a SimpleGraph, q: u32) -> Self {
        let mut s = Expansion {
            view,
            order: Vec::new(),
            inside: vec![false; view.n()],
            frontier: BTreeMap::new(),
            edge_sup: HashMap::new(),
            min_sup: None,
            at_min: 0,
        };
        s.admit(q, Vec::new());
        s
    }

    /// Min support among new edges `(c, x)`, `x` in `attach`.
    fn new_edge_min(&self, attach: &[u32]) -> u32 {
        attach
            .iter()
            .map(|&x| attach.iter().filter(|&&y| y != x && self.view.has_edge(x, y)).count() as u32)
            .min()
            .unwrap_or(u32::MAX)
    }

    /// Min edge support of the inside set after adding a node attached to `attach`.
    fn score(&self, attach: &[u32]) -> u32 {
        let fresh = self.new_edge_min(attach);
        let Some(m) = self.min_sup else {
            return fresh;
        };
        let mut bumped_at_min = 0;
        for (i, &x) in attach.iter().enumerate() {
            for &y in &attach[i + 1..] {
                if self.edge_sup.get(&key(x, y)) == Some(&m) {
                    bumped_at_min += 1;
                }
            }
        }
        let old = if bumped_at_min < self.at_min {
            m
        } else {
            // every minimum edge gains a triangle: rescan
            self.edge_sup
                .iter()
                .map(|(&(x, y), &s)| {
                    let both = attach.contains(&x) && attach.contains(&y);
                    s + u32::from(both)
                })
                .min()
                .unwrap_or(u32::MAX)
        };
        fresh.min(old)
    }

    fn admit(&mut self, c: u32, attach: Vec<u32>) {
        for (i, &x) in attach.iter().enumerate() {
            for &y in &attach[i + 1..] {
                if let Some(s) = self.edge_sup.get_mut(&key(x, y)) {
                    *s += 1;
                }
            }
        }
        for &x in &attach {
            let s = attach.iter().filter(|&&y| y != x && self.view.has_edge(x, y)).count() as u32;
            self.edge_sup.insert(key(c, x), s);
        }
        self.inside[c as usize] = true;
        self.order.push(c);
        self.frontier.remove(&c);
        for &w in self.view.neighbors(c) {
            if !self.inside[w as usize] {
                self.frontier.entry(w).or_default().push(c);
            }
        }
        self.min_sup = self.edge_sup.values().copied().min();
        self.at_min = match self.min_sup {
            Some(m) => self.edge_sup.values().filter(|&&s| s == m).count(),
            None => 0,
        };
    }

    /// Next node by (support after adding, links into the set, smallest id).
    fn best_candidate(&self) -> Option<u32> {
        let mut best: Option<(u32, usize, Reverse<u32>)> = None;
        for (&c, attach) in &self.frontier {
            // cheap upper bound before the exact score
            let bound = self
                .new_edge_min(attach)
                .min(self.min_sup.map_or(u32::MAX, |m| m.saturating_add(1)));
            if let Some((b, links, _)) = best {
                if bound < b || (bound == b && attach.len() <= links) {
                    continue;
                }
            }
            let cand = (self.score(attach), attach.len(), Reverse(c));
            if best.is_none_or(|b| cand > b) {
                best = Some(cand);
            }
        }
        best.map(|(_, _, Reverse(c))| c)
    }

    /// Edge-support score of the current set; an edgeless set scores 0.
    fn current_score(&self) -> u32 {
        self.min_sup.unwrap_or(0)
    }
}

/// Greedy size-bounded search for a high minimum-support community
/// containing `q`.
///
/// Starting from `q`, repeatedly adds the frontier node that keeps the
/// minimum edge support highest (ties: more links into the set, then the
/// smaller id) until `h` nodes are reached or the component is exhausted.
/// Among the prefixes with size in `[l, h]` the one with the best support
/// is returned, larger prefixes winning ties. Not an exact search.
pub fn size_bounded_truss_search(view: &SimpleGraph, q: UserId, l: u32, h: u32) -> Result<SearchOutcome> {
    if q.index() >= view.n() {
        return Err(Error::UnknownUser(q));
    }
    if !(1 <= l && l <= h) {
        return Err(Error::InvalidParams(format!("size bounds need 1 <= l <= h, got [{l}, {h}]")));
    }
    let (l, h) = (l as usize, h as usize);

    let mut exp = Expansion::new(view, q.0);
    let mut best: Option<(u32, usize)> = None;
    loop {
        let size = exp.order.len();
        if size >= l {
            let cand = (exp.current_score(), size);
            if best.is_none_or(|b| cand > b) {
                best = Some(cand);
            }
        }
        if size >= h {
            break;
        }
        match exp.best_candidate() {
            Some(c) => {
                let attach = exp.frontier.get(&c).cloned().unwrap_or_default();
                exp.admit(c, attach);
            }
            None => break,
        }
    }
    Ok(match best {
        Some((_, size)) => {
            let mut members = exp.order[..size].to_vec();
            members.sort_unstable();
            SearchOutcome::found(members)
        }
        None => SearchOutcome::NotFound(NotFoundReason::ComponentTooSmall),
    })
}
