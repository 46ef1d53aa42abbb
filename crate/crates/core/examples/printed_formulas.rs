//! Audit of the printed generator formulas against each other and against
//! L = G_(0)G/2.

use lambda_qhr::reduction::{verify_formulas, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for mode in [Mode::Full, Mode::Free] {
        print!("{}", verify_formulas(mode)?.to_text());
        println!();
    }
    Ok(())
}
