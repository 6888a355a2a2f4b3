//! Exhaustive maxima on small parameter tuples next to the predicted values.

use cherries::constructions::BipartiteFamilyParams;
use cherries::oracle::{
    self, max_cherries_general, phi_bipartite, Mode, Theorem, DEFAULT_EDGE_CAP,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = BipartiteFamilyParams::new(4, 3, 7, 2, 2)?;
    for mode in [Mode::Full, Mode::Shifted] {
        let rep = phi_bipartite(&p, mode, DEFAULT_EDGE_CAP)?;
        println!(
            "{mode:?}: optimum z1 {:?}, predicted {:?} ({}), {} graphs enumerated",
            rep.optimum_z1,
            rep.predicted_z1,
            rep.branch.as_deref().unwrap_or("-"),
            rep.enumerated
        );
    }

    let rep = max_cherries_general(7, 9, 3, 2, DEFAULT_EDGE_CAP)?;
    println!(
        "general n=7 m=9 l=3 k=2: optimum cherries {:?}",
        rep.optimum_cherries
    );
    for c in &rep.candidates {
        println!("  {:<12} feasible={} z1={:?}", c.name, c.feasible, c.z1);
    }

    let rows = oracle::verify_theorem(Theorem::BipartiteLeft, 9, Mode::Shifted, DEFAULT_EDGE_CAP)?;
    let bad = rows.iter().filter(|r| !r.matches).count();
    println!(
        "left-witness sweep up to rs=9: {} tuples, {bad} mismatches",
        rows.len()
    );
    Ok(())
}
