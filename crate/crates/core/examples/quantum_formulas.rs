//! The density-matrix backend on its own: expectation values, projector
//! action and a check of a projector family.
//!
//!     cargo run --example quantum_formulas

use gqt::quantum::{
    act_projector, c, expectation, states_equal, validate_projector_family, CMatrix, DensityState,
    Projector, ProjectorFamily, Tolerance,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityState::pure_real(&[s, s], tol)?;
    let z0 = Projector::onto_real(&[1.0, 0.0], tol)?;

    println!("<+|P0|+> = {:.3}", expectation(&plus, z0.matrix(), tol)?);
    let after = act_projector(&plus, &z0, tol)?.expect("possible");
    let zero = DensityState::pure_real(&[1.0, 0.0], tol)?;
    println!("P0 |+> is |0>: {}", states_equal(&after, &zero, tol)?);
    println!(
        "P1 P0 |+> is impossible: {}",
        act_projector(&after, &z0.complement(), tol)?.is_none()
    );

    let y = CMatrix::from_rows(vec![
        vec![c(0.5, 0.0), c(0.0, -0.5)],
        vec![c(0.0, 0.5), c(0.5, 0.0)],
    ])?;
    let family = ProjectorFamily::new(vec![
        ("y+".into(), y.clone()),
        ("0".into(), z0.matrix().clone()),
    ])?;
    for v in validate_projector_family(&family, tol) {
        println!("family problem: {v}");
    }
    println!(
        "[P0, Y+] norm = {:.3}",
        z0.commutator_norm(&Projector::new(y, tol)?)
    );
    Ok(())
}
