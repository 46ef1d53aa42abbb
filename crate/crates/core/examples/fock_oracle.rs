//! The truncated Fock space as an independent check of the engine.

use lambda_qhr::fockoracle::{crosscheck, TruncatedFockSpace};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = BigRational::from_integer(1.into());
    let space = TruncatedFockSpace::new(&k, 6)?;
    println!("cutoff 3: dim {}, by half-degree {:?}", space.dim(), space.dims_by_degree());
    let c = crosscheck(&k, 6)?;
    println!(
        "{} products compared, {} beyond the cutoff, {} commutators, max relative error {:.1e}: {}",
        c.cases,
        c.beyond_cutoff,
        c.commutators,
        c.max_relative_error,
        if c.pass() { "PASS" } else { "FAIL" }
    );
    Ok(())
}
