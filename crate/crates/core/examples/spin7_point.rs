//! At k = 1/3 the central charge is 12. The brackets are recomputed in
//! complex arithmetic and compared with the symbolic ones.

use lambda_qhr::reduction::{quadruple, spin7_instance, verify_sw32_at, Mode};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = quadruple(Mode::Free)?;
    let k = BigRational::new(1.into(), 3.into());
    print!("{}", verify_sw32_at(&quad, &k)?.to_text());
    println!();
    print!("{}", spin7_instance(&quad)?.to_text());
    Ok(())
}
