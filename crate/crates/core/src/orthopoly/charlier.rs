use crate::error::{domain, Result};
use crate::special::{ln_factorial, ScaledPair, SignedLog};

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return domain(format!("Charlier parameter must be positive, got {theta}"));
    }
    Ok(())
}

/// `ln W(x) = x ln θ − ln x!`.
pub fn charlier_ln_weight(x: usize, theta: f64) -> f64 {
    x as f64 * theta.ln() - ln_factorial(x)
}

/// Lattice cutoff beyond which the Poisson(θ) mass is negligible (< 1e−14).
pub fn charlier_lattice_cutoff(theta: f64) -> usize {
    ((theta + 12.0 * theta.sqrt() + 50.0).ceil() as usize).max(80)
}

/// `ln(θ^x e^{−θ}/x! · θ^m/m!)`, which is symmetric in `m` and `x`.
fn ln_normalizer(m: usize, x: usize, theta: f64) -> f64 {
    charlier_ln_weight(x, theta) + charlier_ln_weight(m, theta) - theta
}

/// Forward degree recurrence for `C̃_0..=C̃_deg` at lattice point `x`.
///
/// With `c_m = C_m θ^{m/2} / √(m!)`:
/// `c_{m+1} = [(m + θ − x) c_m / √θ − √m c_{m−1}] / √(m+1)` and
/// `C̃_m(x) = (θ^x e^{−θ} / x!)^{1/2} c_m(x)`.
fn forward(x: usize, theta: f64, count: usize, mut sink: impl FnMut(SignedLog)) {
    if count == 0 {
        return;
    }
    let ln_w = 0.5 * (charlier_ln_weight(x, theta) - theta);
    let sqrt_theta = theta.sqrt();
    let xf = x as f64;
    let mut pair = ScaledPair::new(0.0, 1.0);
    sink(pair.current().scale(ln_w));
    for m in 1..count {
        let k = (m - 1) as f64;
        let next = ((k + theta - xf) * pair.cur / sqrt_theta - k.sqrt() * pair.prev) / (k + 1.0).sqrt();
        pair.push(next);
        sink(pair.current().scale(ln_w));
    }
}

fn forward_single(deg: usize, x: usize, theta: f64) -> SignedLog {
    let mut last = SignedLog::ZERO;
    forward(x, theta, deg + 1, |v| last = v);
    last
}

/// The forward recurrence in `m` at a lattice point `x` is reliable up to the
/// centre `θ + x` of its oscillatory band; beyond it the normalized values
/// decay and the recurrence is unstable. The self-duality `C̃_m(x) = C̃_x(m)`
/// covers the other side.
fn stable_in_degree(m: usize, x: usize, theta: f64) -> bool {
    (m as f64) <= theta + x as f64
}

fn normalized_log(m: usize, x: usize, theta: f64) -> SignedLog {
    if stable_in_degree(m, x, theta) {
        forward_single(m, x, theta)
    } else {
        forward_single(x, m, theta)
    }
}

/// Charlier polynomial `C_m(x; θ)` normalized by `C_m(0) = 1`.
pub fn charlier(m: usize, x: usize, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(normalized_log(m, x, theta)
        .scale(-0.5 * ln_normalizer(m, x, theta))
        .to_f64())
}

/// `C̃_0(x), …, C̃_{count−1}(x)` with
/// `C̃_m(x) = W(x)^{1/2} C_m(x; θ) / ‖C_m‖`, `‖C_m‖² = θ^{−m} e^θ m!`.
pub fn charlier_normalized_row(x: usize, theta: f64, count: usize) -> Result<Vec<f64>> {
    check_theta(theta)?;
    let mut out = Vec::with_capacity(count);
    let prefix = (0..count).take_while(|&m| stable_in_degree(m, x, theta)).count();
    forward(x, theta, prefix, |v| out.push(v.to_f64()));
    for m in prefix..count {
        out.push(forward_single(x, m, theta).to_f64());
    }
    Ok(out)
}
