//! Rank statistics and box-plot summaries used to relate Z scores to stability classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::MotifSize;
use crate::error::{Error, Result};
use crate::stability::StabilityClass;

/// Z scores keyed by (motif size, edge count), then by stability class.
pub type GroupedScores = BTreeMap<(MotifSize, u32), BTreeMap<StabilityClass, Vec<f64>>>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KruskalWallis {
    pub h: f64,
    pub df: usize,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxSummary {
    pub n: usize,
    pub q1: f64,
    pub q3: f64,
    pub median: f64,
    pub mean: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

/// Midranks (1-based) plus the sizes of tie groups longer than one.
pub fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        if end - start > 1 {
            ties.push(end - start);
        }
        start = end;
    }
    (ranks, ties)
}

/// Kruskal-Wallis H test with tie correction and a chi-squared p-value.
pub fn kruskal_wallis<G: AsRef<[f64]>>(groups: &[G]) -> Result<KruskalWallis> {
    let groups: Vec<&[f64]> = groups.iter().map(|g| g.as_ref()).filter(|g| !g.is_empty()).collect();
    if groups.len() < 2 {
        return Err(Error::InvalidArgument(
            "Kruskal-Wallis needs at least 2 non-empty groups".into(),
        ));
    }
    let pooled: Vec<f64> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    let n = pooled.len();
    if n < 3 {
        return Err(Error::InvalidArgument(
            "Kruskal-Wallis needs at least 3 observations".into(),
        ));
    }
    if pooled.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("NaN in Kruskal-Wallis sample".into()));
    }
    let df = groups.len() - 1;
    let (ranks, ties) = midranks(&pooled);
    let nf = n as f64;
    let correction = 1.0
        - ties
            .iter()
            .map(|&t| {
                let t = t as f64;
                t * t * t - t
            })
            .sum::<f64>()
            / (nf * nf * nf - nf);
    if correction <= 0.0 {
        return Ok(KruskalWallis { h: 0.0, df, p: 1.0 });
    }

    let mut offset = 0;
    let mut sum = 0.0;
    for g in &groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let h = ((12.0 / (nf * (nf + 1.0)) * sum - 3.0 * (nf + 1.0)) / correction).max(0.0);
    Ok(KruskalWallis {
        h,
        df,
        p: chi_squared_sf(h, df),
    })
}

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7, n = 9).
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let mut a = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let prefactor = (-x + a * x.ln() - ln_gamma(a)).exp();
    if x < a + 1.0 {
        // series for P(a, x)
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..1000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        (1.0 - sum * prefactor).clamp(0.0, 1.0)
    } else {
        // Lentz continued fraction for Q(a, x)
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (prefactor * h).clamp(0.0, 1.0)
    }
}

/// Survival function of the chi-squared distribution.
pub fn chi_squared_sf(x: f64, df: usize) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_q(df as f64 / 2.0, x / 2.0)
}

fn median_sorted(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Tukey-hinge box summary with whiskers at one interquartile range.
pub fn box_whisker(samples: &[f64]) -> Result<BoxSummary> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("box summary of an empty sample".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let n = xs.len();
    let half = n.div_ceil(2);
    let q1 = median_sorted(&xs[..half]);
    let q3 = median_sorted(&xs[n - half..]);
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - iqr, q3 + iqr);
    let inside: Vec<f64> = xs.iter().copied().filter(|&x| x >= lo && x <= hi).collect();
    let outliers: Vec<f64> = xs.iter().copied().filter(|&x| x < lo || x > hi).collect();
    Ok(BoxSummary {
        n,
        q1,
        q3,
        median: median_sorted(&xs),
        mean: xs.iter().sum::<f64>() / n as f64,
        whisker_low: inside[0],
        whisker_high: inside[inside.len() - 1],
        outliers,
    })
}

/// Spearman rank correlation; `None` when either ranking is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument(
            "Spearman correlation needs two equal-length samples of size >= 2".into(),
        ));
    }
    let (rx, _) = midranks(x);
    let (ry, _) = midranks(y);
    Ok(pearson(&rx, &ry))
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kruskal_examples() {
        let r = kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        assert!((r.h - 27.0 / 7.0).abs() < 1e-12);
        assert_eq!(r.df, 1);
        assert!((r.p - 0.049_534_613).abs() < 1e-6, "{}", r.p);

        let r = kruskal_wallis(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        assert!((r.h - 2.0).abs() < 1e-12);
        assert_eq!(r.df, 2);
        assert!((r.p - (-1.0f64).exp()).abs() < 1e-12);

        let r = kruskal_wallis(&[vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert!(r.h.abs() < 1e-12);
        assert!((r.p - 1.0).abs() < 1e-12);

        let r = kruskal_wallis(&[vec![4.0, 4.0], vec![4.0]]).unwrap();
        assert_eq!((r.h, r.p), (0.0, 1.0));
    }

    #[test]
    fn kruskal_errors() {
        assert!(kruskal_wallis(&[vec![1.0, 2.0, 3.0]]).is_err());
        assert!(kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![]]).is_err());
        assert!(kruskal_wallis(&[vec![1.0], vec![2.0]]).is_err());
    }

    #[test]
    fn chi_squared_examples() {
        for k in 1..=10 {
            assert_eq!(chi_squared_sf(0.0, k), 1.0);
        }
        assert!((chi_squared_sf(2.0, 2) - (-1.0f64).exp()).abs() < 1e-14);
        assert!((chi_squared_sf(27.0 / 7.0, 1) - 0.049_534_613).abs() < 1e-6);
    }

    #[test]
    fn ln_gamma_at_integers() {
        let mut fact = 1.0f64;
        for n in 1..20 {
            assert!((ln_gamma(n as f64) - fact.ln()).abs() < 1e-12, "n = {n}");
            fact *= n as f64;
        }
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
    }

    #[test]
    fn box_examples() {
        let b = box_whisker(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((b.q1, b.q3, b.mean), (2.0, 4.0, 3.0));
        assert_eq!((b.whisker_low, b.whisker_high), (1.0, 5.0));
        assert!(b.outliers.is_empty());

        let b = box_whisker(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        assert_eq!((b.q1, b.q3, b.whisker_high), (2.0, 4.0, 4.0));
        assert_eq!(b.outliers, vec![100.0]);

        let b = box_whisker(&[5.0]).unwrap();
        assert_eq!((b.q1, b.q3, b.mean, b.whisker_low, b.whisker_high), (5.0, 5.0, 5.0, 5.0, 5.0));
        assert!(b.outliers.is_empty());

        let b = box_whisker(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((b.q1, b.q3), (1.5, 3.5));
        assert!(box_whisker(&[]).is_err());
    }

    #[test]
    fn spearman_examples() {
        let x = [1.0, 2.0, 3.0];
        assert_eq!(spearman(&x, &[2.0, 4.0, 6.0]).unwrap(), Some(1.0));
        assert_eq!(spearman(&x, &[6.0, 4.0, 2.0]).unwrap(), Some(-1.0));
        assert_eq!(spearman(&x, &[1.0, 3.0, 2.0]).unwrap(), Some(0.5));
        assert_eq!(spearman(&x, &[1.0, 1.0, 1.0]).unwrap(), None);
        assert!(spearman(&x, &[1.0]).is_err());
    }

    #[test]
    fn midrank_ties() {
        let (r, t) = midranks(&[3.0, 1.0, 3.0, 2.0]);
        assert_eq!(r, vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(t, vec![2]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn groups() -> impl Strategy<Value = Vec<Vec<f64>>> {
            proptest::collection::vec(
                proptest::collection::vec((-20i32..20).prop_map(|x| x as f64 / 4.0), 1..8),
                2..5,
            )
        }

        proptest! {
            #[test]
            fn kruskal_is_rank_based_and_order_free(gs in groups()) {
                let total: usize = gs.iter().map(Vec::len).sum();
                prop_assume!(total >= 3);
                let r = kruskal_wallis(&gs).unwrap();
                prop_assert!(r.h >= 0.0);
                let exp: Vec<Vec<f64>> = gs.iter().map(|g| g.iter().map(|x| x.exp()).collect()).collect();
                let re = kruskal_wallis(&exp).unwrap();
                prop_assert!((r.h - re.h).abs() < 1e-9);
                let mut rev = gs.clone();
                rev.reverse();
                let rr = kruskal_wallis(&rev).unwrap();
                prop_assert!((r.h - rr.h).abs() < 1e-9);
                prop_assert_eq!(r.df, rr.df);
                prop_assert!((r.p - rr.p).abs() < 1e-12);
            }

            #[test]
            fn box_partitions_samples(xs in proptest::collection::vec(-100.0f64..100.0, 1..40)) {
                let b = box_whisker(&xs).unwrap();
                let lo = b.q1 - (b.q3 - b.q1);
                let hi = b.q3 + (b.q3 - b.q1);
                let inside = xs.iter().filter(|&&x| x >= lo && x <= hi).count();
                prop_assert_eq!(inside + b.outliers.len(), xs.len());
                prop_assert!(b.outliers.iter().all(|&x| x < lo || x > hi));
                if xs.len() >= 2 {
                    prop_assert!(b.whisker_low <= b.q1 && b.q1 <= b.q3 && b.q3 <= b.whisker_high);
                }
            }

            #[test]
            fn spearman_depends_only_on_ranks(
                pairs in proptest::collection::vec((-50i32..50, -50i32..50), 2..30)
            ) {
                let x: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
                let y: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
                let rho = spearman(&x, &y).unwrap();
                let rr = spearman(&midranks(&x).0, &midranks(&y).0).unwrap();
                match (rho, rr) {
                    (Some(a), Some(b)) => {
                        prop_assert!((a - b).abs() < 1e-12);
                        prop_assert!(a.abs() <= 1.0);
                    }
                    (None, None) => {}
                    other => prop_assert!(false, "{:?}", other),
                }
            }
        }
    }
}
