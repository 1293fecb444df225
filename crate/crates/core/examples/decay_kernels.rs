//! Compare the exponential and polynomial decay kernels over an hour.

use cohesion::decay::{DecaySpec, SWEEP_RATES};

fn main() -> cohesion::Result<()> {
    let ages = [0.0, 60.0, 600.0, 3600.0];
    println!("{:<24}{}", "kernel", ages.map(|a| format!("{a:>10}")).join(""));
    for &rate in &SWEEP_RATES {
        let spec = DecaySpec::exponential(rate)?;
        let row: Vec<String> = ages.iter().map(|&a| format!("{:>10.4}", spec.phi_unchecked(a))).collect();
        println!("{:<24}{}", format!("exponential {rate}"), row.join(""));
    }
    for mu in [0.1, 0.5, 1.0] {
        let spec = DecaySpec::polynomial(mu)?;
        let row: Vec<String> = ages.iter().map(|&a| format!("{:>10.4}", spec.phi_unchecked(a))).collect();
        println!("{:<24}{}", format!("polynomial {mu}"), row.join(""));
    }
    Ok(())
}
