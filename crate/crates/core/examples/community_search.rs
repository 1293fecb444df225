//! Run every reference searcher for a few queries on a planted graph.

use cohesion::fixtures::{generate, FixtureSpec};
use cohesion::search::{Algorithm, GraphViews, Params, SearchOutcome, SearchRequest};
use cohesion::graph::UserId;

fn params(kv: &[(&str, u32)]) -> Params {
    kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn main() -> cohesion::Result<()> {
    let fx = generate(&FixtureSpec::planted(3))?;
    let views = GraphViews::new(&fx.graph);
    let runs = [
        (Algorithm::MaxCore, params(&[])),
        (Algorithm::KlCore, params(&[("k", 3), ("l", 3)])),
        (Algorithm::Truss, params(&[("k", 4)])),
        (Algorithm::StTruss, params(&[("l", 4), ("h", 8)])),
    ];
    for q in [UserId(0), UserId(9)] {
        for (algorithm, params) in &runs {
            let out = views.search(&SearchRequest {
                query: q,
                algorithm: *algorithm,
                params: params.clone(),
            })?;
            let shown = match &out {
                SearchOutcome::Found { members, .. } => {
                    let ext: Vec<u64> = members.iter().map(|&u| fx.graph.external_id(u)).collect();
                    format!("{} members {ext:?}", ext.len())
                }
                SearchOutcome::NotFound(reason) => format!("not found ({reason})"),
            };
            println!("q={} {:<9} {shown}", fx.graph.external_id(q), algorithm.id());
        }
    }
    Ok(())
}
