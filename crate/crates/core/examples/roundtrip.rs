//! Closed form -> ladder -> vacuum moments -> orthonormal polynomials -> α.
//!
//!     cargo run --example roundtrip

use normal_field::{
    closed_form_alphas, extract_alphas, gram_schmidt, radial_moments, MeasureSpec, Param, Scalar, Surd,
};

fn main() -> normal_field::Result<()> {
    const N: usize = 6;
    let spec = MeasureSpec::from_closed_form(Param::parse("1/2")?, Param::parse("1")?);
    let m = radial_moments::<Surd>(&spec, N)?;
    println!("vacuum moments: {:?}", m.as_slice().iter().map(Scalar::to_text).collect::<Vec<_>>());

    let recovered = extract_alphas(&gram_schmidt(&m, N)?, &m)?;
    let q = Param::parse("1/2")?.to_scalar::<Surd>()?;
    let input = closed_form_alphas(&q, &Surd::from_i64(1), N)?;
    let identical = input.iter().all(|(&(k, l), a)| recovered.get(k, l) == Some(a));
    println!("{} entries, recovered exactly: {identical}", input.len());

    let m = radial_moments::<f64>(&spec, N)?;
    let recovered = extract_alphas(&gram_schmidt(&m, N)?, &m)?;
    let input = closed_form_alphas(&0.5, &1.0, N)?;
    let worst = input
        .iter()
        .map(|(&(k, l), a)| (recovered.get(k, l).unwrap() - a).abs() / a)
        .fold(0.0, f64::max);
    println!("floating round trip, worst relative error {worst:.2e}");
    Ok(())
}
