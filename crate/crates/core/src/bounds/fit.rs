use serde::Serialize;

use crate::error::{invalid, Result};

/// Least-squares line through `(ln n, ln count)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub samples: Vec<(f64, f64)>,
}

pub fn fit_growth_exponent(samples: &[(f64, f64)]) -> Result<FitReport> {
    if samples.len() < 3 {
        return Err(invalid(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(invalid("sample sizes must be strictly increasing"));
    }
    if let Some(&(n, c)) = samples
        .iter()
        .find(|&&(n, c)| !(n > 0.0 && c > 0.0 && c.is_finite()))
    {
        return Err(invalid(format!("nonpositive sample ({n}, {c})")));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(FitReport {
        slope,
        intercept,
        r_squared,
        samples: samples.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_law() {
        let s: Vec<_> = [10.0, 20.0, 40.0, 80.0]
            .iter()
            .map(|&n| (n, n * n))
            .collect();
        let f = fit_growth_exponent(&s).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_factor_goes_to_intercept() {
        let s: Vec<_> = [3.0, 7.0, 19.0]
            .iter()
            .map(|&n: &f64| (n, 17.0 * n.powf(2.5)))
            .collect();
        let f = fit_growth_exponent(&s).unwrap();
        assert!((f.slope - 2.5).abs() < 1e-9);
        assert!((f.intercept - 17f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(fit_growth_exponent(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_growth_exponent(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_growth_exponent(&[(1.0, 1.0), (1.0, 2.0), (3.0, 1.0)]).is_err());
        assert!(fit_growth_exponent(&[(1.0, 1.0), (2.0, -2.0), (3.0, 1.0)]).is_err());
    }
}
