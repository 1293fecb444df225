//! Score a community with the five sentiment and interaction measures.

use cohesion::decay::DecaySpec;
use cohesion::dynamics::ExcitationConfig;
use cohesion::graph::{induce, EdgeRecord, Sentiment, TemporalMultigraph};
use cohesion::psych::{measure, PsychConfig, Window};

fn rec(src: u64, dst: u64, t: i64, s: Sentiment) -> EdgeRecord {
    EdgeRecord {
        src,
        dst,
        timestamp: t,
        sentiment: s,
    }
}

fn main() -> cohesion::Result<()> {
    use Sentiment::*;
    let g = TemporalMultigraph::from_records([
        rec(1, 2, 0, Positive),
        rec(2, 1, 10, Positive),
        rec(2, 3, 20, Positive),
        rec(3, 1, 30, Neutral),
        rec(1, 1, 40, Positive),
        rec(3, 9, 50, Negative),
        rec(9, 3, 55, Negative),
    ]);
    let members = [1, 2, 3].map(|x| g.user_by_external(x).expect("present"));
    let c = induce(&g, members)?;
    let t_cur = 60;
    let cfg = PsychConfig {
        excitation: ExcitationConfig::new(1.0, DecaySpec::exponential(0.01)?)?,
        window: Some(Window { start: 0, unit: 10.0 }),
    };
    let s = measure(&g, &c, t_cur, &cfg)?;
    println!("EI {:.4}  SIT {:.4}  CED {:.4}", s.ei, s.sit, s.ced);
    println!("GIP {:.4}  GID per 10s {:?}", s.gip, s.gid);
    for u in &s.per_user {
        println!("  user {}: ei {:+.4} sit {:+.4} ced {:+.4}", g.external_id(u.user), u.ei, u.sit, u.ced);
    }
    Ok(())
}
