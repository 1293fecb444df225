//! Diameter, size, minimum degree and core/truss labels of communities.

use cohesion::graph::{induce, EdgeRecord, Sentiment, TemporalMultigraph, UserId};
use cohesion::structural::measure;

fn main() -> cohesion::Result<()> {
    // a 4-clique {0..3} with a tail 3-4-5, plus a stray pair 6-7
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (6, 7), (1, 1)];
    let g = TemporalMultigraph::from_records(pairs.iter().enumerate().map(|(t, &(a, b))| EdgeRecord {
        src: a,
        dst: b,
        timestamp: t as i64,
        sentiment: Sentiment::Neutral,
    }));
    let groups: [&[u32]; 3] = [&[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5], &[0, 1, 6, 7]];
    for group in groups {
        let c = induce(&g, group.iter().map(|&u| UserId(u)))?;
        let s = measure(&g, &c)?;
        println!(
            "{:?}: d={} size={} deg_min={} core={} truss={}",
            group, s.diameter, s.size, s.deg_min, s.core, s.truss
        );
    }
    Ok(())
}
