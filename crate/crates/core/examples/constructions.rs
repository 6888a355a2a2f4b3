//! Builds each extremal construction and checks its constraint witness.

use cherries::constructions::{
    ak_bipartite, b1_family, b2_family, g1_family, g2_family, quasi_clique, quasi_star,
    BipartiteFamilyParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, m) = (8, 12);
    let clique = quasi_clique(n, m)?;
    let star = quasi_star(n, m)?;
    println!("quasi-clique n={n} m={m}: z1 = {}", clique.z1_index());
    println!("quasi-star   n={n} m={m}: z1 = {}", star.z1_index());

    let b = ak_bipartite(5, 4, 11)?;
    println!(
        "B(5,4,11): left degrees {:?}, z1 = {}",
        b.left_degrees(),
        b.z1_index()
    );

    for (r, s, m, ell, k) in [(6, 4, 10, 2, 2), (5, 4, 9, 4, 2)] {
        let p = BipartiteFamilyParams::new(r, s, m, ell, k)?;
        let built = if k + ell <= r {
            b1_family(&p)?
        } else {
            b2_family(&p)?
        };
        built.witness.verify_left(&built.graph)?;
        let name = if k + ell <= r { "B1" } else { "B2" };
        println!(
            "{name}{:?}: z1 = {}",
            (r, s, m, ell, k),
            built.graph.z1_index()
        );
    }

    let (n, m, ell, k) = (10, 20, 3, 2);
    for (name, built) in [
        ("G1", g1_family(n, m, ell, k)?),
        ("G2", g2_family(n, m, ell, k)?),
    ] {
        built.witness.verify(&built.graph)?;
        println!(
            "{name}(n={n}, m={m}, l={ell}, k={k}): witness {:?}, cherries = {}",
            built.witness.vertices,
            built.graph.count_cherries()
        );
    }
    Ok(())
}
