use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Compensated (Neumaier) summation.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    /// Asymptotic critical value at the 1% level.
    pub critical: f64,
    pub reject: bool,
}

/// Two-sample Kolmogorov–Smirnov test at the 1% level.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InsufficientData("both samples must be non-empty".into()));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::Numerical("NaN in KS sample".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let critical = 1.628 * ((n + m) / (n * m)).sqrt();
    Ok(KsTest {
        statistic: d,
        critical,
        reject: d > critical,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: usize,
    /// 99% quantile of `χ²(df)`.
    pub critical: f64,
    pub p_value: f64,
    pub reject: bool,
}

/// Pearson test of uniformity on `[0, 1]` over `bins` equal bins, 1% level.
pub fn chi_square_uniform(samples: &[f64], bins: usize) -> Result<ChiSquareTest> {
    if bins < 2 {
        return Err(Error::Config("at least two bins are required".into()));
    }
    if samples.len() < 5 * bins {
        return Err(Error::InsufficientData(format!(
            "{} samples are too few for {bins} bins",
            samples.len()
        )));
    }
    let mut counts = vec![0usize; bins];
    for &x in samples {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::OutOfRange(x));
        }
        counts[((x * bins as f64) as usize).min(bins - 1)] += 1;
    }
    let expected = samples.len() as f64 / bins as f64;
    let statistic = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum::<f64>();
    let df = bins - 1;
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::Numerical(e.to_string()))?;
    let critical = dist.inverse_cdf(0.99);
    Ok(ChiSquareTest {
        statistic,
        df,
        critical,
        p_value: dist.sf(statistic),
        reject: statistic > critical,
    })
}
