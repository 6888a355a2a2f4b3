//! Limiting cherry densities: closed forms at a point, finite constructions
//! approaching them, and a small scan written as CSV to stdout.

use cherries::density::{
    convergence, fact13_bounds, scan, thm_value, Axis, ConstructionFamily, DensityPoint,
    DensityTheorem, GridSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = DensityPoint::new(0.69, 0.3, 0.2)?;
    let b = fact13_bounds(p)?;
    println!(
        "at {p:?}: quasi-star {:.6}, g1 {:?}, g2 {:.6}, best {}",
        b.quasi_star, b.g1, b.g2, b.argmax
    );
    let t = thm_value(p, DensityTheorem::FifthFloor)?;
    println!(
        "fifth-floor value {:.6} (in range: {})",
        t.value, t.in_range
    );

    let q = DensityPoint::new(0.44, 0.2, 0.2)?;
    for family in [
        ConstructionFamily::QuasiStar,
        ConstructionFamily::G1,
        ConstructionFamily::G2,
    ] {
        let rep = convergence(family, q, &[100, 1_000, 10_000, 100_000])?;
        let last = rep.rows.last().unwrap();
        println!(
            "{:<10} error at n={} is {:.2e}, fitted C {:.3}, monotone {}",
            family.label(),
            last.n,
            last.error,
            rep.fitted_c,
            rep.monotone
        );
    }

    let grid = GridSpec {
        rho: Axis {
            start: 0.68,
            end: 0.70,
            step: 0.01,
        },
        alpha: Axis {
            start: 0.2,
            end: 0.4,
            step: 0.1,
        },
        beta: None,
    };
    let mut out = csv::Writer::from_writer(std::io::stdout());
    for row in scan(&grid)? {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
