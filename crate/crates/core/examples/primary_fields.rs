//! Primarity of G, W, U and the normalization products G_(j)W, W_(3)W.

use lambda_qhr::reduction::{quadruple, verify_primary, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quad = quadruple(Mode::Free)?;
    print!("{}", verify_primary(&quad)?.to_text());
    Ok(())
}
