//! Scalar maximization on a logarithmic axis.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximumLocation {
    Interior,
    LowerEndpoint,
    UpperEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub location: MaximumLocation,
    pub evaluations: usize,
}

/// `n` points from `lo` to `hi` (inclusive), evenly spaced in ln x.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// Maximize `f` over [lo, hi] on a log axis.
///
/// A coarse scan of `coarse_points` log-spaced samples locates the best
/// sample. If that sample is an endpoint the endpoint is reported as such;
/// otherwise golden-section search on ln x over the neighbouring samples
/// narrows the bracket to a relative width `rel_width`. Golden-section
/// assumes the function is unimodal inside that bracket.
pub fn maximize_log<F>(mut f: F, lo: f64, hi: f64, coarse_points: usize, rel_width: f64) -> Result<Maximum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("bracket", format!("need 0 < lo < hi, got ({lo}, {hi})")));
    }
    if coarse_points < 3 {
        return Err(Error::invalid("coarse_points", "need at least 3 samples"));
    }
    if !(rel_width > 0.0) {
        return Err(Error::invalid("rel_width", "must be positive"));
    }

    let xs = log_spaced(lo, hi, coarse_points);
    let mut values = Vec::with_capacity(xs.len());
    for &x in &xs {
        values.push(f(x)?);
    }
    let mut evaluations = xs.len();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |b, (i, &v)| if v > values[b] { i } else { b });

    if best == 0 || best == xs.len() - 1 {
        let location = if best == 0 {
            MaximumLocation::LowerEndpoint
        } else {
            MaximumLocation::UpperEndpoint
        };
        return Ok(Maximum {
            x: xs[best],
            value: values[best],
            location,
            evaluations,
        });
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (xs[best - 1].ln(), xs[best + 1].ln());
    let mut top = (xs[best], values[best]);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c.exp())?;
    let mut fd = f(d.exp())?;
    evaluations += 2;
    let target = rel_width.ln_1p();
    loop {
        for (u, fu) in [(c, fc), (d, fd)] {
            if fu > top.1 {
                top = (u.exp(), fu);
            }
        }
        if b - a <= target {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c.exp())?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d.exp())?;
        }
        evaluations += 1;
    }
    Ok(Maximum {
        x: top.0,
        value: top.1,
        location: MaximumLocation::Interior,
        evaluations,
    })
}
