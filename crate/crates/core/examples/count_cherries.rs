//! Cherry counts, the first Zagreb index and densities of a few small graphs.

use cherries::graph::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("triangle", Graph::complete(3)?),
        ("path P4", Graph::new(4, [(0, 1), (1, 2), (2, 3)])?),
        ("star K1,4", Graph::new(5, (1..5).map(|v| (0, v)))?),
        ("K5", Graph::complete(5)?),
    ];
    println!(
        "{:<10} {:>5} {:>8} {:>4} {:>10} {:>10}",
        "graph", "edges", "cherries", "z1", "rho", "cherry"
    );
    for (name, g) in &graphs {
        let dens = g.densities()?;
        println!(
            "{name:<10} {:>5} {:>8} {:>4} {:>10} {:>10}",
            g.edge_count(),
            g.count_cherries(),
            g.z1_index(),
            dens.edge.to_string(),
            dens.cherry.to_string(),
        );
        assert_eq!(
            g.z1_index(),
            2 * g.count_cherries() + 2 * g.edge_count() as u64
        );
    }
    Ok(())
}
