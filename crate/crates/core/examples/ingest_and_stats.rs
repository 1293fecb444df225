//! Load an edge list and print dataset statistics.
//!
//! ```text
//! cargo run --example ingest_and_stats -- path/to/edges.csv
//! ```
//! Without an argument a small inline edge list is used.

use cohesion::graph::{largest_weak_component, stats, weak_components};
use cohesion::ingest::{parse_csv, read_edge_file};
use cohesion::graph::TemporalMultigraph;

const SAMPLE: &str = "\
src,dst,timestamp,sentiment
# alice and bob talk, carol posts alone
10,20,1000,1
20,10,1010,1
10,20,1100,-1
30,30,1200,0
40,50,1300,1
";

fn main() -> cohesion::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_edge_file(path)?,
        None => TemporalMultigraph::from_records(parse_csv(SAMPLE.as_bytes())?),
    };
    let s = stats(&g);
    println!("users {}  events {}  timestamps {}", s.n_users, s.n_events, s.n_timestamps);
    println!("density {:.4}  deg_avg {:.3}", s.density, s.deg_avg);

    let comps = weak_components(&g);
    println!("{} weak components, sizes {:?}", comps.len(), comps.iter().map(Vec::len).collect::<Vec<_>>());
    let big = largest_weak_component(&g);
    let ext: Vec<u64> = big.users().map(|u| big.external_id(u)).collect();
    println!("largest component: {ext:?}");
    Ok(())
}
