use std::collections::VecDeque;

use super::SearchOutcome;
use crate::error::{Error, Result};
use crate::graph::{SimpleDigraph, SimpleGraph, UserId};

/// Core number of every node (bucket-sort peeling).
pub fn core_numbers(view: &SimpleGraph) -> Vec<u32> {
    let n = view.n();
    let mut deg: Vec<u32> = (0..n as u32).map(|u| view.degree(u) as u32).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0) as usize;

    // bin[d] = first position of degree-d nodes in `vert`
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d as usize + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    let mut next = bin.clone();
    for u in 0..n {
        let d = deg[u] as usize;
        pos[u] = next[d];
        vert[pos[u]] = u as u32;
        next[d] += 1;
    }

    for i in 0..n {
        let v = vert[i];
        for &u in view.neighbors(v) {
            let du = deg[u as usize];
            if du > deg[v as usize] {
                // move u to the front of its bin, then shrink its degree
                let pu = pos[u as usize];
                let pw = bin[du as usize];
                let w = vert[pw];
                if u != w {
                    vert.swap(pu, pw);
                    pos[u as usize] = pw;
                    pos[w as usize] = pu;
                }
                bin[du as usize] += 1;
                deg[u as usize] -= 1;
            }
        }
    }
    deg
}

pub(super) fn max_core_from_numbers(view: &SimpleGraph, cores: &[u32], q: u32) -> SearchOutcome {
    let k = cores[q as usize];
    if k == 0 {
        return SearchOutcome::Found {
            members: vec![UserId(q)],
            note: Some("isolated"),
        };
    }
    SearchOutcome::found(view.component_of(q, |v| cores[v as usize] >= k))
}

/// Connected component of `q` inside the deepest core that contains it.
/// An isolated `q` yields itself, annotated `"isolated"`.
pub fn max_core_search(view: &SimpleGraph, q: UserId) -> Result<SearchOutcome> {
    if q.index() >= view.n() {
        return Err(Error::UnknownUser(q));
    }
    Ok(max_core_from_numbers(view, &core_numbers(view), q.0))
}

/// Nodes left after repeatedly removing those with in-degree `< k` or
/// out-degree `< l`.
pub fn kl_core_survivors(view: &SimpleDigraph, k: u32, l: u32) -> Vec<bool> {
    let n = view.n();
    let mut indeg: Vec<u32> = (0..n as u32).map(|u| view.in_neighbors(u).len() as u32).collect();
    let mut outdeg: Vec<u32> = (0..n as u32).map(|u| view.out_neighbors(u).len() as u32).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<u32> = (0..n as u32).filter(|&u| indeg[u as usize] < k || outdeg[u as usize] < l).collect();
    for &u in &queue {
        alive[u as usize] = false;
    }
    while let Some(u) = queue.pop_front() {
        for &w in view.out_neighbors(u) {
            let w_ = w as usize;
            if alive[w_] {
                indeg[w_] -= 1;
                if indeg[w_] < k {
                    alive[w_] = false;
                    queue.push_back(w);
                }
            }
        }
        for &w in view.in_neighbors(u) {
            let w_ = w as usize;
            if alive[w_] {
                outdeg[w_] -= 1;
                if outdeg[w_] < l {
                    alive[w_] = false;
                    queue.push_back(w);
                }
            }
        }
    }
    alive
}

pub(super) fn weak_component_of(view: &SimpleDigraph, alive: &[bool], q: u32) -> SearchOutcome {
    if !alive[q as usize] {
        return SearchOutcome::NotFound(super::NotFoundReason::QueryPeeled);
    }
    let mut seen = vec![false; view.n()];
    seen[q as usize] = true;
    let mut stack = vec![q];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &v in view.out_neighbors(u).iter().chain(view.in_neighbors(u)) {
            if alive[v as usize] && !seen[v as usize] {
                seen[v as usize] = true;
                stack.push(v);
            }
        }
    }
    out.sort_unstable();
    SearchOutcome::found(out)
}

/// Weakly connected component of `q` in the directed (k, l)-core.
pub fn kl_core_search(view: &SimpleDigraph, q: UserId, k: u32, l: u32) -> Result<SearchOutcome> {
    if q.index() >= view.n() {
        return Err(Error::UnknownUser(q));
    }
    Ok(weak_component_of(view, &kl_core_survivors(view, k, l), q.0))
}
