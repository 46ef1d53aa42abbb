//! The engine on its own: a Heisenberg field and a neutral fermion, their
//! Sugawara-type Virasoro fields, and a few n-th products.

use std::sync::Arc;

use lambda_qhr::vertexcore::{fmt_lambda_poly, fmt_state, AlgebraConfig, Engine, Parity};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = AlgebraConfig::default();
    cfg.generator("a", Parity::Even, "1")
        .generator("\\psi", Parity::Odd, "1/2")
        .bracket("a", "a", "\\lambda")
        .bracket("\\psi", "\\psi", "1");
    let alg = Arc::new(cfg.build()?);
    let e = Engine::symbolic(alg.clone());
    let names = alg.names();

    let a = e.gen("a")?;
    let psi = e.gen("\\psi")?;
    let half = BigRational::new(1.into(), 2.into());

    let l_a = e.nprod(&a, &a).scale_ratio(&half);
    let l_psi = e.nprod(&e.derivative(&psi), &psi).scale_ratio(&half);
    let l = l_a.add(&l_psi);
    println!("L = {}", fmt_state(names, &l));
    println!("[L_λ L] = {}", fmt_lambda_poly(names, &e.bracket(&l, &l)));
    println!("[L_λ a] = {}", fmt_lambda_poly(names, &e.bracket(&l, &a)));
    println!("[L_λ ψ] = {}", fmt_lambda_poly(names, &e.bracket(&l, &psi)));
    println!("L_(3)L = {}", fmt_state(names, &e.nth_product(&l, 3, &l)));
    println!(":ψψ: = {}", fmt_state(names, &e.nprod(&psi, &psi)));
    println!(":a∂a: - :∂a a: = {}", fmt_state(names, &e.nprod(&a, &e.derivative(&a)).sub(&e.nprod(&e.derivative(&a), &a))));
    Ok(())
}
