//! The osp(3|2) data: structure constants, grading by x = h_1 - h_2 and the
//! centralizer of f.

use lambda_qhr::reduction::verify_liealg;
use lambda_qhr::superlie::Osp32;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let osp = Osp32::new()?;
    print!("{}", osp.g.structure_constants_text());
    println!();
    print!("{}", osp.grading);
    println!("centralizer dims by 2j: {:?}", osp.centralizer.dims());
    println!("h^∨ = {}", osp.g.check_dual_coxeter()?);
    println!();
    print!("{}", verify_liealg()?.to_text());
    Ok(())
}
