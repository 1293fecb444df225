//! Sweep decay rates for both kernels; searches are shared across rates.

use cohesion::decay::{DecayKind, SWEEP_RATES};
use cohesion::fixtures::{generate, FixtureSpec};
use cohesion::harness::{sweep_decay_on_graph, EvalPlan};
use cohesion::search::{Algorithm, Params};

fn main() -> cohesion::Result<()> {
    let fx = generate(&FixtureSpec::planted(7))?;
    let grid: Vec<Params> = vec![[("k".to_string(), 3)].into_iter().collect()];
    let mut plan = EvalPlan::new("planted.csv", Algorithm::Truss, grid, 7);
    plan.n_queries = 8;

    for kind in [DecayKind::Exponential, DecayKind::Polynomial] {
        plan.decay.kind = kind;
        let rates: &[f64] = match kind {
            DecayKind::Exponential => &SWEEP_RATES,
            DecayKind::Polynomial => &[0.1, 0.5, 1.0],
        };
        for r in sweep_decay_on_graph(&plan, &fx.graph, rates)? {
            let m = r.aggregate.expect("planted graph has hits");
            println!(
                "{:?} {:<7} EI {:+.5} SIT {:+.5} CED {:+.5} GIP {:.4} size {:.2}",
                kind, r.plan.decay.rate, m.ei, m.sit, m.ced, m.gip, m.size
            );
        }
    }
    Ok(())
}
