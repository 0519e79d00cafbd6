//! Uncertainty inequalities over part of the standard suite.

use woclct::inequality::{pitt_constant, Evaluated, K0Prime, Region};
use woclct::suite::standard_suite;

fn main() -> woclct::Result<()> {
    for beta in [0.0, 1.0, 2.0] {
        println!("M_{beta} = {:.12}", pitt_constant(beta)?.m_beta);
    }
    let k = K0Prime::new(1.0)?;
    println!(
        "K0' = {:.10} (finite difference {:.10})",
        k.analytic, k.finite_difference
    );

    for case in standard_suite(8)?.iter().step_by(7) {
        let e = Evaluated::new(&case.f, &case.w, &case.params, &case.grids)?;
        println!("{} / {}", case.triple, case.signal.label());
        let sigma = Region::boxed(case.f.grid, [0.0; 3], [2.0; 3]);
        let tau = Region::boxed(case.grids.omega, [0.0; 3], [2.5; 3]);
        let reports = [
            e.pitt(0.5)?,
            e.pitt_sharp(0.5)?,
            e.log_uncertainty()?,
            e.young_hausdorff(1.5)?,
            e.heisenberg()?,
            e.donoho_stark(&sigma, &tau)?,
        ];
        for r in reports {
            let tag = if r.satisfied { "ok  " } else { "FAIL" };
            println!(
                "  {tag} {:24} lhs {:10.4e} rhs {:10.4e}",
                r.name, r.lhs, r.rhs
            );
        }
    }
    Ok(())
}
