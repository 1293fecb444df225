//! End-to-end evaluation run on a generated dataset, written as CSV.
//!
//! ```text
//! cargo run --release --example chase_pipeline -- out.csv
//! ```

use cohesion::fixtures::{generate, FixtureSpec};
use cohesion::harness::{run_on_graph, EvalPlan};
use cohesion::report::{write_csv, emit_report, ReportFormat};
use cohesion::search::{Algorithm, Params};

fn main() -> cohesion::Result<()> {
    let fx = generate(&FixtureSpec::planted(42))?;
    let grid: Vec<Params> = [2, 3, 4]
        .iter()
        .map(|&k| [("k".to_string(), k), ("l".to_string(), k)].into_iter().collect())
        .collect();
    let mut plan = EvalPlan::new("planted.csv", Algorithm::KlCore, grid, 42);
    plan.n_queries = 10;
    let report = run_on_graph(&plan, &fx.graph)?;

    println!("Q_hit {:.1}%", report.q_hit);
    if let Some(m) = &report.aggregate {
        println!("mean d {}  size {:.2}  deg_min {:.2}", m.d, m.size, m.deg_min);
        println!("mean EI {:.4}  SIT {:.4}  CED {:.4}  GIP {:.4}", m.ei, m.sit, m.ced, m.gip);
    }
    match std::env::args().nth(1) {
        Some(path) => emit_report(&report, ReportFormat::Csv, path)?,
        None => write_csv(std::slice::from_ref(&report), std::io::stdout().lock())?,
    }
    Ok(())
}
