//! Zero modes of the screening operators on the free-field generators.

use lambda_qhr::screening::FreeField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ff = FreeField::new()?;
    for q in ff.screening_operators()?.iter().chain([ff.corrected_q2()?].iter()) {
        println!("{} = {}  (weight {})", q.name, ff.fmt_charged(&q.state), ff.conformal_weight(&q.state));
    }
    println!();
    print!("{}", ff.kernel_suite(None)?.to_text());
    Ok(())
}
