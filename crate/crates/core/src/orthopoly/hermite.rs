use crate::error::{domain, Result};
use crate::special::{ScaledPair, SignedLog};

/// Largest degree accepted by [`hermite`].
pub const HERMITE_MAX_DEGREE: usize = 400;

/// Physicists' Hermite polynomial `H_n(t)` from
/// `H_{n+1} = 2t H_n − 2n H_{n−1}`, `H_0 = 1`, `H_1 = 2t`.
pub fn hermite(n: usize, t: f64) -> Result<f64> {
    if n > HERMITE_MAX_DEGREE {
        return domain(format!("Hermite degree {n} exceeds {HERMITE_MAX_DEGREE}"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, 2.0 * t);
    for k in 1..n {
        let next = 2.0 * t * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `ĥ_n(a) = H_n(a) / sqrt(2^n n!)` for `n = 0..=n_max`, in log-space.
///
/// The normalized recurrence is `ĥ_{n+1} = (√2 a ĥ_n − √n ĥ_{n−1}) / √(n+1)`.
pub fn normalized_hermite_table(a: f64, n_max: usize) -> Vec<SignedLog> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(SignedLog::from_f64(1.0));
    if n_max == 0 {
        return out;
    }
    let mut pair = ScaledPair::new(1.0, std::f64::consts::SQRT_2 * a);
    out.push(pair.current());
    for n in 1..n_max {
        let nf = n as f64;
        let next = (std::f64::consts::SQRT_2 * a * pair.cur - nf.sqrt() * pair.prev) / (nf + 1.0).sqrt();
        pair.push(next);
        out.push(pair.current());
    }
    out
}
