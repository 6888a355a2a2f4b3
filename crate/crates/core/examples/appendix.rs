//! Runs the grid checks behind the five auxiliary inequalities and the
//! interior constants.

use cherries::appendix::{check_lemma, interior_bounds_check, Lemma};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let steps = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(60);
    for lemma in Lemma::ALL {
        let r = check_lemma(lemma, steps)?;
        println!(
            "{}: min margin {:.3e} at {:?}, refined {:.3e}, residual {:.1e}, passed {}",
            lemma.label(),
            r.min_margin,
            r.argmin,
            r.refined_min_margin,
            r.max_residual,
            r.passed
        );
        for d in &r.derivative_checks {
            println!("    {:?}: {} nodes, {} failed", d.claim, d.nodes, d.failed);
        }
    }
    for c in interior_bounds_check() {
        println!(
            "{:<40} {:.9} {} {:.9}  {}",
            c.name, c.value, c.relation, c.bound, c.passed
        );
    }
    Ok(())
}
