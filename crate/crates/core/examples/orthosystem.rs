//! Orthonormal polynomials P_{k,l} by two constructions, and the α-table
//! read off from the recurrence z·P_{k,l} = α_{k,l} P_{k+1,l} + α_{l-1,k} P_{k,l-1}.
//!
//!     cargo run --example orthosystem

use normal_field::orthosystem::compare_systems;
use normal_field::{
    extract_alphas, gram_schmidt, radial_moments, sector_cholesky, verify_recurrence, verify_relations,
    MeasureSpec, Scalar, Surd, Tolerance,
};

fn main() -> normal_field::Result<()> {
    let m = radial_moments::<Surd>(&MeasureSpec::uniform_disc(1), 4)?;
    let sys = gram_schmidt(&m, 4)?;
    for (&(k, l), p) in sys.iter().filter(|((k, l), _)| k + l <= 3) {
        println!("P_{{{k},{l}}} = {}", p.to_text());
    }

    let chol = sector_cholesky(&m, 4)?;
    let agreement = compare_systems(&sys, &chol, Tolerance::default());
    println!("gram-schmidt and sector cholesky identical: {}", agreement.identical);

    let alphas = extract_alphas(&sys, &m)?;
    for (&(k, l), a) in alphas.iter() {
        println!("α_{{{k},{l}}} = {:<16} α² = {}", a.to_text(), (a.clone() * a.clone()).to_text());
    }
    let rec = verify_recurrence(&sys, &alphas);
    let rel = verify_relations(&alphas);
    println!(
        "recurrences: {} checked, exact zero {}; relations exact zero {}",
        rec.checked, rec.exact_zero, rel.exact_zero
    );

    // Floating mode for an irrational width.
    let m = radial_moments::<f64>(&MeasureSpec::gaussian(normal_field::Param::parse("0.8")?), 6)?;
    let alphas = extract_alphas(&gram_schmidt(&m, 6)?, &m)?;
    println!("gaussian σ=0.8: α_{{2,1}} = {:.12}", alphas.get(2, 1).unwrap());
    Ok(())
}
