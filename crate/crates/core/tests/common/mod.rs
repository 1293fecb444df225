//! Independent reference evaluators shared by the integration tests.
//!
//! Nothing here calls into the crate's kernels, measures or searchers; the
//! crate is only used for plain data types and to build inputs.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cohesion::decay::DecayKind;
use cohesion::graph::{EdgeRecord, Sentiment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|a - b| <= tol * max(|a|, |b|, 1)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn rec(src: u64, dst: u64, t: i64, s: i64) -> EdgeRecord {
    EdgeRecord {
        src,
        dst,
        timestamp: t,
        sentiment: Sentiment::try_from(s).unwrap(),
    }
}

pub fn random_sentiment(rng: &mut ChaCha8Rng) -> Sentiment {
    [Sentiment::Negative, Sentiment::Neutral, Sentiment::Positive][rng.random_range(0..3)]
}

/// Edge list with `n_users` external ids `0..n_users`, coarse timestamps
/// (so ties occur) and some self-loops.
pub fn random_records(rng: &mut ChaCha8Rng, n_users: u64, n_events: usize, t_max: i64) -> Vec<EdgeRecord> {
    (0..n_events)
        .map(|_| {
            let src = rng.random_range(0..n_users);
            let dst = if rng.random_bool(0.1) { src } else { rng.random_range(0..n_users) };
            EdgeRecord {
                src,
                dst,
                timestamp: rng.random_range(0..=t_max),
                sentiment: random_sentiment(rng),
            }
        })
        .collect()
}

// ---- sentiment kernel -------------------------------------------------

/// Event as seen by the oracle: ingestion ordinal plus raw fields.
#[derive(Copy, Clone, Debug)]
pub struct Ev {
    pub id: usize,
    pub src: u64,
    pub dst: u64,
    pub t: i64,
    pub s: f64,
}

pub fn evs(records: &[EdgeRecord]) -> Vec<Ev> {
    records
        .iter()
        .enumerate()
        .map(|(id, r)| Ev {
            id,
            src: r.src,
            dst: r.dst,
            t: r.timestamp,
            s: f64::from(r.sentiment.polarity()),
        })
        .collect()
}

#[derive(Copy, Clone, Debug)]
pub struct Kernel {
    pub kind: DecayKind,
    pub rate: f64,
    pub lambda0: f64,
}

impl Kernel {
    pub fn phi(&self, age: f64) -> f64 {
        assert!(age >= 0.0);
        match self.kind {
            DecayKind::Exponential => (-self.rate * age).exp(),
            DecayKind::Polynomial => 1.0 / (age + 1.0).powf(self.rate),
        }
    }

    /// Excitation of `cur` from every event in `scope` strictly before it
    /// by `(t, id)`.
    pub fn excitation(&self, cur: &Ev, scope: &[Ev]) -> f64 {
        let mut x = self.lambda0;
        for h in scope {
            if (h.t, h.id) < (cur.t, cur.id) {
                x += h.s * cur.s * self.phi((cur.t - h.t) as f64);
            }
        }
        if x < 0.0 {
            0.0
        } else {
            x
        }
    }

    pub fn esenti(&self, cur: &Ev, scope: &[Ev]) -> f64 {
        cur.s * self.excitation(cur, scope)
    }

    /// Decayed sum of elicited sentiment over `scope` (any order) at `t_cur`.
    pub fn scoped_sum(&self, scope: &[Ev], t_cur: i64) -> f64 {
        scope
            .iter()
            .filter(|e| e.t <= t_cur)
            .map(|e| self.esenti(e, scope) * self.phi((t_cur - e.t) as f64))
            .sum()
    }
}

// ---- measures -------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Scores {
    pub ei: f64,
    pub sit: f64,
    pub ced: f64,
    pub gip: f64,
    pub gid: Option<f64>,
}

/// Definition-level evaluation of the five measures. `members` are
/// external ids; `window` is the window length `W` if any.
pub fn measures(all: &[Ev], members: &BTreeSet<u64>, t_cur: i64, k: &Kernel, window: Option<f64>) -> Scores {
    let live: Vec<Ev> = all.iter().copied().filter(|e| e.t <= t_cur).collect();
    let inside = |e: &Ev| members.contains(&e.src) && members.contains(&e.dst);
    let n = members.len() as f64;

    let (mut ei, mut sit, mut ced) = (0.0, 0.0, 0.0);
    for &i in members {
        let with = |e: &Ev, keep: &dyn Fn(u64) -> bool| {
            e.src != e.dst && ((e.src == i && keep(e.dst)) || (e.dst == i && keep(e.src)))
        };
        let in_scope: Vec<Ev> = live.iter().copied().filter(|e| with(e, &|p| members.contains(&p))).collect();
        let out_scope: Vec<Ev> = live.iter().copied().filter(|e| with(e, &|p| !members.contains(&p))).collect();
        let ei_i = k.scoped_sum(&in_scope, t_cur);
        ei += ei_i;
        ced += ei_i - k.scoped_sum(&out_scope, t_cur);
        for &j in members {
            if j == i {
                continue;
            }
            let ij = live.iter().any(|e| e.src == i && e.dst == j);
            let ji = live.iter().any(|e| e.src == j && e.dst == i);
            if ij && ji {
                let pair: Vec<Ev> = live
                    .iter()
                    .copied()
                    .filter(|e| (e.src == i && e.dst == j) || (e.src == j && e.dst == i))
                    .collect();
                sit += k.scoped_sum(&pair, t_cur);
            }
        }
    }
    let total = live.iter().filter(|e| inside(e)).count();
    let inter = live.iter().filter(|e| inside(e) && e.src != e.dst).count();
    Scores {
        ei: if n > 0.0 { ei / n } else { 0.0 },
        sit: if n > 0.0 { sit / n } else { 0.0 },
        ced: if n > 0.0 { ced / n } else { 0.0 },
        gip: if total == 0 { 0.0 } else { inter as f64 / total as f64 },
        gid: (members.len() >= 2).then(|| inter as f64 / (n * (n - 1.0) * window.unwrap_or(1.0))),
    }
}

// ---- search fixpoints -------------------------------------------------

/// Undirected simple adjacency matrix from arbitrary pairs (loops dropped).
pub fn adjacency(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        if a != b {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    adj
}

fn degree_in(adj: &[Vec<bool>], alive: &[bool], u: usize) -> usize {
    (0..adj.len()).filter(|&v| alive[v] && adj[u][v]).count()
}

/// Delete every node of degree `< k`, rescanning until nothing changes.
pub fn k_core(adj: &[Vec<bool>], k: usize) -> Vec<bool> {
    let mut alive = vec![true; adj.len()];
    loop {
        let doomed: Vec<usize> = (0..adj.len()).filter(|&u| alive[u] && degree_in(adj, &alive, u) < k).collect();
        if doomed.is_empty() {
            return alive;
        }
        for u in doomed {
            alive[u] = false;
        }
    }
}

/// Nodes reachable from `q` over edges accepted by `edge`.
pub fn reach(n: usize, q: usize, edge: impl Fn(usize, usize) -> bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([q]);
    let mut frontier = vec![q];
    while let Some(u) = frontier.pop() {
        for v in 0..n {
            if edge(u, v) && seen.insert(v) {
                frontier.push(v);
            }
        }
    }
    seen
}

/// Component of `q` in the deepest k-core holding it; an isolated `q`
/// comes back alone.
pub fn max_core_oracle(adj: &[Vec<bool>], q: usize) -> BTreeSet<usize> {
    let best = (1..adj.len()).rev().find(|&k| k_core(adj, k)[q]);
    match best {
        None => BTreeSet::from([q]),
        Some(k) => {
            let alive = k_core(adj, k);
            reach(adj.len(), q, |u, v| alive[u] && alive[v] && adj[u][v])
        }
    }
}

/// Largest minimum degree over connected node sets containing `q`,
/// by enumeration.
pub fn best_min_degree(adj: &[Vec<bool>], q: usize) -> usize {
    let n = adj.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        if mask & (1 << q) == 0 {
            continue;
        }
        let inside = |u: usize| mask & (1 << u) != 0;
        let comp = reach(n, q, |u, v| inside(u) && inside(v) && adj[u][v]);
        if comp.len() != mask.count_ones() as usize {
            continue;
        }
        let md = comp
            .iter()
            .map(|&u| (0..n).filter(|&v| inside(v) && adj[u][v]).count())
            .min()
            .unwrap();
        best = best.max(md);
    }
    best
}

/// Directed (k, l)-core by rescanning; `None` when `q` is peeled.
pub fn kl_core_oracle(n: usize, arcs: &BTreeSet<(usize, usize)>, q: usize, k: usize, l: usize) -> Option<BTreeSet<usize>> {
    let mut alive = vec![true; n];
    loop {
        let doomed: Vec<usize> = (0..n)
            .filter(|&u| {
                alive[u] && {
                    let ind = arcs.iter().filter(|&&(a, b)| b == u && alive[a]).count();
                    let outd = arcs.iter().filter(|&&(a, b)| a == u && alive[b]).count();
                    ind < k || outd < l
                }
            })
            .collect();
        if doomed.is_empty() {
            break;
        }
        for u in doomed {
            alive[u] = false;
        }
    }
    if !alive[q] {
        return None;
    }
    Some(reach(n, q, |u, v| {
        alive[u] && alive[v] && (arcs.contains(&(u, v)) || arcs.contains(&(v, u)))
    }))
}

/// Edges kept by support peeling at threshold `k - 2`, rescanning until
/// stable; `None` when `q` keeps no edge.
pub fn truss_oracle(adj: &[Vec<bool>], q: usize, k: usize) -> Option<BTreeSet<usize>> {
    let n = adj.len();
    let mut live = adj.to_vec();
    loop {
        let mut doomed = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if live[u][v] {
                    let support = (0..n).filter(|&w| live[u][w] && live[v][w]).count();
                    if support + 2 < k {
                        doomed.push((u, v));
                    }
                }
            }
        }
        if doomed.is_empty() {
            break;
        }
        for (u, v) in doomed {
            live[u][v] = false;
            live[v][u] = false;
        }
    }
    if !(0..n).any(|v| live[q][v]) {
        return None;
    }
    Some(reach(n, q, |u, v| live[u][v]))
}

/// Random undirected graph on `n` nodes with edge probability `p`.
pub fn random_pairs(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Planted-community membership: external id to community.
pub fn membership_groups(map: &BTreeMap<u64, usize>) -> BTreeMap<usize, Vec<u64>> {
    let mut out: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (&u, &c) in map {
        out.entry(c).or_default().push(u);
    }
    out
}
