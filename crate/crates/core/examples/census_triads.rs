//! Counts 3- and 4-node subgraphs of an edge list.
//!
//! `cargo run --example census_triads -- [path]`

use netmotifs::census::{census, MotifSize};
use netmotifs::graphio::{normalize, read_edge_list};

fn main() -> netmotifs::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/deps.txt").into());
    let (g, norm) = normalize(&read_edge_list(&path)?)?;
    println!(
        "{path}: {} nodes, {} edges ({} self-loops, {} duplicates dropped)",
        g.node_count(),
        g.edge_count(),
        norm.self_loops_removed,
        norm.duplicates_removed
    );
    for size in MotifSize::ALL {
        let c = census(&g, size, true)?;
        println!("\n{size}-node subgraphs: {}", c.total());
        let mut top: Vec<_> = c.counts.iter().collect();
        top.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        for (m, n) in top.into_iter().take(6) {
            println!("  motif {:>5}  count {:>6}  uniqueness {:>4}", m.id, n, c.uniqueness(*m).unwrap_or(0));
        }
    }
    Ok(())
}
