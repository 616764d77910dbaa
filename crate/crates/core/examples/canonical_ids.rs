//! Lists every 3-node motif class with its canonical ID, and shows that
//! relabeling a subgraph does not change the ID.

use netmotifs::census::{canonical_id, ClassTable, MotifSize};
use netmotifs::stability::stability_profile;

fn main() -> netmotifs::Result<()> {
    println!("id   edges  class  adjacency");
    for m in ClassTable::get(MotifSize::Three).classes_by_edges() {
        let adj = m.adjacency();
        let rows: Vec<String> = (0..3)
            .map(|i| (0..3).map(|j| if adj.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        let s = stability_profile(m);
        println!("{:<4} {:<6} {:<6} {}", m.id, m.edge_count(), s.stability_class, rows.join(" "));
    }

    // Feed-forward loop written with two different labelings.
    let a = [[false, true, true], [false, false, true], [false, false, false]];
    let b = [[false, false, false], [true, false, false], [true, true, false]];
    println!("\nfeed-forward loop: {} == {}", canonical_id(&a)?.id, canonical_id(&b)?.id);
    println!("4-node classes: {}", ClassTable::get(MotifSize::Four).len());
    Ok(())
}
