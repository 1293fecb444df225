//! Generate a planted-community dataset and write it with its membership map.
//!
//! ```text
//! cargo run --example planted_fixture -- /tmp/planted.csv
//! ```

use cohesion::fixtures::{generate, write_fixture, FixtureSpec};
use cohesion::graph::{induce, stats};
use cohesion::ingest::EdgeFormat;
use cohesion::structural;

fn main() -> cohesion::Result<()> {
    let spec = FixtureSpec::planted(42);
    let fx = generate(&spec)?;
    let s = stats(&fx.graph);
    println!("{} users, {} events, density {:.3}", s.n_users, s.n_events, s.density);
    for c in 0..spec.n_communities {
        let com = induce(&fx.graph, fx.community(c))?;
        let st = structural::measure(&fx.graph, &com)?;
        println!("community {c}: {} events, d={} core={}", com.n_events(), st.diameter, st.core);
    }
    if let Some(path) = std::env::args().nth(1) {
        let members = write_fixture(&fx, &path, EdgeFormat::from_path(path.as_ref()))?;
        println!("wrote {path} and {}", members.display());
    }
    Ok(())
}
