//! Radial moments of the built-in measures, plus a quadrature cross-check.
//!
//!     cargo run --example moments

use normal_field::measures::{check_nondegenerate, quadrature_oracle_moments};
use normal_field::{radial_moments, MeasureSpec, Param, Scalar, Surd};

fn main() -> normal_field::Result<()> {
    let specs = [
        MeasureSpec::gaussian(1),
        MeasureSpec::uniform_disc(1),
        MeasureSpec::from_closed_form(Param::parse("1/2")?, Param::parse("1")?),
    ];
    for spec in &specs {
        let m = radial_moments::<Surd>(spec, 6)?;
        let text: Vec<String> = m.as_slice().iter().map(Scalar::to_text).collect();
        println!("{:<40} {}", spec.to_json().to_string(), text.join(", "));
    }

    // Planar density of the unit disc is 1/π on r ≤ 1.
    let oracle = quadrature_oracle_moments(|_| std::f64::consts::FRAC_1_PI, 1.0, 6, 256)?;
    let exact = radial_moments::<f64>(&MeasureSpec::uniform_disc(1), 6)?;
    for (n, (a, b)) in oracle.as_slice().iter().zip(exact.as_slice()).enumerate() {
        println!("disc m_{n}: quadrature {a:.15} closed form {b:.15}");
    }

    let circle = radial_moments::<Surd>(&MeasureSpec::UnitCircle, 4)?;
    match check_nondegenerate(&circle, 4) {
        Err(e) => println!("unit circle: {e}"),
        Ok(_) => unreachable!("the circle supports a nonzero polynomial"),
    }
    Ok(())
}
