//! Factorization test α_{k,l} = f_k g_l and the deformed oscillators it implies.
//!
//!     cargo run --example factorize

use normal_field::factorize::DEFAULT_DETECTION_TOL;
use normal_field::{
    build_ladder_rep, closed_form_alphas, detect_factorization, extract_alphas, gram_schmidt, q_fock_operators,
    radial_moments, verify_q_relations, MeasureSpec, Rational, Scalar, Surd,
};

fn main() -> normal_field::Result<()> {
    for spec in [MeasureSpec::gaussian(1), MeasureSpec::uniform_disc(1)] {
        let m = radial_moments::<Surd>(&spec, 6)?;
        let alphas = extract_alphas(&gram_schmidt(&m, 6)?, &m)?;
        let verdict = detect_factorization(&alphas, DEFAULT_DETECTION_TOL)?;
        println!(
            "{}: factorizable {}, q = {}, c = {}, log residual {:.6} at {:?}",
            spec.to_json(),
            verdict.factorizable,
            verdict.q.to_text(),
            verdict.c.to_text(),
            verdict.log_residual,
            verdict.worst_entry
        );
    }

    let q = Surd::from_rational(Rational::new(1.into(), 2.into()));
    let c = Surd::from_i64(1);
    let table = closed_form_alphas(&q, &c, 6)?;
    for k in 0..3 {
        println!("α_{{{k},0}} = {}", table.get(k, 0).unwrap().to_text());
    }
    let verdict = detect_factorization(&table, DEFAULT_DETECTION_TOL)?;
    println!("closed form recovered: q = {}, c = {}", verdict.q.to_text(), verdict.c.to_text());

    let rep = build_ladder_rep(&table, 3)?;
    let ops = q_fock_operators(&q, &c, 3)?;
    let report = verify_q_relations(&ops, &rep)?;
    for (name, r) in &report.residuals {
        println!("{name:<28} {r}");
    }
    Ok(())
}
