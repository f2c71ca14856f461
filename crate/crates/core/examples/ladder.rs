//! Truncated ladder representation Φ = K* + Λ on the grid k, l ≤ M.
//!
//!     cargo run --example ladder

use normal_field::ladder::split_phi;
use normal_field::{
    build_ladder_rep, closed_form_alphas, extract_alphas, gram_schmidt, radial_moments, vacuum_moment,
    verify_normality_interior, MeasureSpec, Scalar, Surd,
};

fn main() -> normal_field::Result<()> {
    const M: usize = 4;
    let m = radial_moments::<Surd>(&MeasureSpec::gaussian(1), 2 * M)?;
    let alphas = extract_alphas(&gram_schmidt(&m, 2 * M)?, &m)?;
    let rep = build_ladder_rep(&alphas, M)?;
    println!("grid {}x{}, dimension {}", M + 1, M + 1, rep.dim());

    let split = split_phi(&rep);
    let e01 = rep.index(0, 1);
    for (name, op) in [("K*", &split.k_star), ("Λ", &split.lambda)] {
        for (row, _, v) in op.nonzeros().filter(|&(_, c, _)| c == e01) {
            println!("{name} e_{{0,1}} -> {} e_{:?}", v.to_text(), rep.state(row));
        }
    }

    for n in 0..=M / 2 {
        println!("⟨e_00, Φ^{n} Φ*^{n} e_00⟩ = {}  (m_{n} = {})", vacuum_moment(&rep, n, n)?.to_text(), m.get(n)?.to_text());
    }
    let normal = verify_normality_interior(&rep);
    println!("[Φ, Φ*] vanishes on the interior: {}", normal.exact_zero);

    // A table that breaks the relations is caught by the commutator.
    let broken = closed_form_alphas(&Surd::from_i64(1), &Surd::from_i64(1), 2 * M)?.perturbed(1, 1, Surd::from_i64(1));
    let report = verify_normality_interior(&build_ladder_rep(&broken, M)?);
    println!("perturbed α_{{1,1}}: residual {:.3} at {:?}", report.max_residual, report.worst);
    Ok(())
}
