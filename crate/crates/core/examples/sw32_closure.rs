//! G, L, W, U from the reduction close on SW(3/2,2) with c = 6+18k, in the
//! free-field algebra and in the full reduced algebra.

use lambda_qhr::reduction::{quadruple, verify_sw32, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for mode in [Mode::Free, Mode::Full] {
        let quad = quadruple(mode)?;
        let report = verify_sw32(&quad)?;
        print!("{}", report.to_text());
        println!();
    }
    Ok(())
}
