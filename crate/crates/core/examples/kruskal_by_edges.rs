//! Rank statistics used to relate significance and stability.

use netmotifs::stats::{box_whisker, chi_squared_sf, kruskal_wallis, spearman};

fn main() -> netmotifs::Result<()> {
    let class_i = [3.1, 4.7, 2.2, 5.0, 3.9];
    let class_ii = [1.2, 0.4, 2.0, 1.1];
    let class_iii = [-0.5, 0.3, -1.2, 0.0, 0.8];

    let kw = kruskal_wallis(&[&class_i[..], &class_ii[..], &class_iii[..]])?;
    println!("Kruskal-Wallis H = {:.4}, df = {}, p = {:.5}", kw.h, kw.df, kw.p);
    println!("chi-squared sf(5.99, 2) = {:.5}", chi_squared_sf(5.99, 2));

    for (name, v) in [("I", &class_i[..]), ("II", &class_ii[..]), ("III", &class_iii[..])] {
        let b = box_whisker(v)?;
        println!(
            "class {name:<3} median {:.2}  iqr [{:.2}, {:.2}]  whiskers [{:.2}, {:.2}]",
            b.median, b.q1, b.q3, b.whisker_low, b.whisker_high
        );
    }

    let sss = [1.0, 0.5, 0.5, 0.25, 0.0, 0.0];
    let log_occ = [3.2, 2.1, 2.5, 1.0, 0.3, 0.0];
    println!("spearman(sss, log occurrence) = {:?}", spearman(&sss, &log_occ)?);
    Ok(())
}
