//! Left compression of a bipartite graph and shifting of a general graph,
//! printing every logged swap and its Z1 gain.

use cherries::graph::{BipartiteGraph, ConstraintWitness, Graph};
use cherries::shifting::{analyze_omega, left_compress, shift_general, swap_sides};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = BipartiteGraph::new(
        5,
        4,
        [
            (0, 1),
            (0, 3),
            (1, 0),
            (1, 2),
            (2, 3),
            (3, 1),
            (4, 2),
            (4, 0),
        ],
    )?;
    let rows: Vec<usize> = (0..b.r())
        .filter(|&i| b.left_degree(i) >= 2)
        .take(2)
        .collect();
    let w = ConstraintWitness::new(rows, 2, 2);
    w.verify_left(&b)?;
    let c = left_compress(&b, &w)?;
    println!("bipartite z1 {} -> {}", b.z1_index(), c.graph.z1_index());
    for m in &c.moves {
        println!(
            "  remove {:?} add {:?}  delta {}",
            m.mv.remove, m.mv.add, m.delta
        );
    }
    let swapped = swap_sides(&c.graph, &c.witness)?;
    println!("swap sides: {:?}", swapped.branch);

    let g = Graph::new(
        7,
        [
            (0, 3),
            (0, 4),
            (1, 5),
            (1, 6),
            (2, 3),
            (3, 5),
            (4, 6),
            (5, 6),
        ],
    )?;
    let w = g
        .find_constraint_witness(3, 2)?
        .ok_or("no independent 3-set of min degree 2")?;
    let s = shift_general(&g, &w)?;
    println!(
        "general z1 {} -> {} in {} moves",
        g.z1_index(),
        s.graph.z1_index(),
        s.moves.len()
    );
    let omega = analyze_omega(&s.graph, &s.witness)?;
    println!(
        "omega = {}, clique part {:?}, independent part {:?}",
        omega.omega, omega.v1, omega.v2
    );
    Ok(())
}
