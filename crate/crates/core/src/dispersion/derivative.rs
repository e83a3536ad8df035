use crate::{Error, Result};

const MAX_HALVINGS: usize = 12;
const AGREEMENT: f64 = 1e-4;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `order`-th derivative of `f` at `x` by central differences with
/// Richardson extrapolation in `h²`.
///
/// The step starts at `h0` and is halved; the extrapolated diagonal of the
/// tableau is tracked until successive entries stop improving. The best
/// estimate is returned if two successive entries agree to `1e-4` relative,
/// otherwise a convergence error carries the history.
pub fn richardson_derivative<F>(f: F, x: f64, order: usize, h0: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if order == 0 {
        return f(x);
    }
    let stencil = |h: f64| -> Result<f64> {
        let half = order as f64 / 2.0;
        let mut acc = 0.0;
        for k in 0..=order {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(order, k) * f(x + (half - k as f64) * h)?;
        }
        Ok(acc / h.powi(order as i32))
    };

    let mut previous_row: Vec<f64> = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    let mut history = Vec::new();
    let mut h = h0;
    for level in 0..=MAX_HALVINGS {
        let mut row = vec![stencil(h)?];
        for j in 1..=level {
            let factor = 4f64.powi(j as i32);
            let value = row[j - 1] + (row[j - 1] - previous_row[j - 1]) / (factor - 1.0);
            row.push(value);
        }
        if level > 0 {
            let estimate = row[level];
            let change = (estimate - previous_row[level - 1]).abs();
            history.push((h, estimate, change));
            match best {
                Some((_, best_change)) if change >= best_change => {
                    // roundoff now dominates; stop once it has clearly set in
                    if change > 4.0 * best_change {
                        break;
                    }
                }
                _ => best = Some((estimate, change)),
            }
            if change <= 1e-13 * estimate.abs() {
                break;
            }
        }
        previous_row = row;
        h *= 0.5;
    }
    match best {
        Some((estimate, change)) if change <= AGREEMENT * estimate.abs().max(f64::MIN_POSITIVE) => {
            Ok(estimate)
        }
        _ => Err(Error::Convergence(format!(
            "derivative of order {order} at {x} did not converge from h0 = {h0}; \
             (step, estimate, change) history: {history:?}"
        ))),
    }
}
