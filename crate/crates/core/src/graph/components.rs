use super::{TemporalMultigraph, UserId};

/// Weakly connected user sets, each sorted, ordered by their smallest id.
pub fn weak_components(g: &TemporalMultigraph) -> Vec<Vec<UserId>> {
    let n = g.n_users();
    let mut parent: Vec<u32> = (0..n as u32).collect();

    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }

    for e in g.events() {
        let a = find(&mut parent, e.src.0);
        let b = find(&mut parent, e.dst.0);
        if a != b {
            // keep the smaller id as root
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi as usize] = lo;
        }
    }

    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<UserId>> = Vec::new();
    for u in 0..n as u32 {
        let r = find(&mut parent, u) as usize;
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(UserId(u));
    }
    out
}

/// Subgraph induced by the largest weakly connected component. Ties go to
/// the component holding the smallest user id.
pub fn largest_weak_component(g: &TemporalMultigraph) -> TemporalMultigraph {
    let comps = weak_components(g);
    // components arrive ordered by min id, so the first maximum wins ties
    let Some(best) = comps.iter().reduce(|a, b| if b.len() > a.len() { b } else { a }) else {
        return g.clone();
    };
    if best.len() == g.n_users() {
        return g.clone();
    }
    g.subgraph(best).expect("component users belong to the graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::rec;

    #[test]
    fn picks_larger_component() {
        let g = TemporalMultigraph::from_records([
            rec(0, 1, 0, 1),
            rec(1, 2, 1, 1),
            rec(2, 3, 2, 1),
            rec(3, 4, 3, 1),
            rec(10, 11, 4, 1),
            rec(11, 12, 5, 1),
        ]);
        let lc = largest_weak_component(&g);
        assert_eq!(lc.n_users(), 5);
        assert_eq!(lc.n_events(), 4);
        assert_eq!(lc.external_id(UserId(4)), 4);
    }

    #[test]
    fn connected_graph_is_identical() {
        let g = TemporalMultigraph::from_records([rec(0, 1, 0, 1), rec(2, 1, 1, -1), rec(2, 2, 2, 0)]);
        let lc = largest_weak_component(&g);
        assert_eq!(lc.id(), g.id());
        assert_eq!(lc.events(), g.events());
    }

    #[test]
    fn tie_goes_to_smallest_min_id() {
        // two 4-user components; external ids 0..3 and 7..10 map to dense 0..3 and 4..7
        let g = TemporalMultigraph::from_records([
            rec(8, 7, 0, 1),
            rec(9, 10, 1, 1),
            rec(10, 7, 2, 1),
            rec(3, 2, 3, 1),
            rec(1, 0, 4, 1),
            rec(2, 1, 5, 1),
        ]);
        let comps = weak_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 4);
        assert_eq!(comps[1].len(), 4);
        let lc = largest_weak_component(&g);
        assert_eq!(lc.n_users(), 4);
        assert_eq!(lc.user_by_external(0), Some(UserId(0)));
        assert_eq!(lc.user_by_external(7), None);
    }

    #[test]
    fn empty_graph() {
        let g = TemporalMultigraph::default();
        assert!(largest_weak_component(&g).is_empty());
    }

    #[test]
    fn subgraph_reorders_event_ids_stably() {
        let g = TemporalMultigraph::from_records([
            rec(0, 1, 5, 1),
            rec(5, 6, 5, 1),
            rec(1, 0, 5, -1),
            rec(1, 2, 1, 1),
            rec(2, 0, 9, 1),
        ]);
        let lc = largest_weak_component(&g);
        let ts: Vec<_> = lc.events().iter().map(|e| (e.t, e.sentiment.polarity())).collect();
        assert_eq!(ts, vec![(1, 1), (5, 1), (5, -1), (9, 1)]);
        assert!(lc.events().windows(2).all(|w| w[0].precedes(&w[1])));
    }
}
