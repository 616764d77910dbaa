//! Z-scores, Mfactor and the normalized significance profile for triads.

use netmotifs::census::{census, MotifSize};
use netmotifs::graphio::{normalize, read_edge_list};
use netmotifs::nullmodel::{ensemble_census, RandomizationConfig};
use netmotifs::significance::{motif_filter, normalized_profile, z_scores, FilterThresholds, Mfactor};

fn main() -> netmotifs::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/deps.txt");
    let (g, _) = normalize(&read_edge_list(path)?)?;
    let cfg = RandomizationConfig {
        replicates: 100,
        master_seed: 1,
        ..Default::default()
    };
    let real = census(&g, MotifSize::Three, true)?;
    let ens = ensemble_census(&g, &cfg, MotifSize::Three)?;
    let records = z_scores(&real, &ens)?;
    let profile = normalized_profile(&records);
    let selected = motif_filter(&records, &FilterThresholds::default())?;

    println!("motif  n_real  mean     z        mfactor  n_z     motif?");
    for r in &records {
        let z = r.z.map_or("-".to_string(), |z| format!("{z:.2}"));
        let mf = match r.mfactor {
            Mfactor::Finite(x) => format!("{x:.2}"),
            Mfactor::Infinite => "inf".into(),
        };
        println!(
            "{:<6} {:<7} {:<8.2} {:<8} {:<8} {:<7.3} {}",
            r.motif.id,
            r.n_real,
            r.rand_mean,
            z,
            mf,
            profile.get(r.motif),
            selected.contains(&r.motif)
        );
    }
    Ok(())
}
