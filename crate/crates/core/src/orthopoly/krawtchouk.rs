use crate::error::{domain, Result};
use crate::special::{ln_binomial, ScaledPair, SignedLog};

fn check(p: f64, l: usize) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("Krawtchouk parameter p must lie in (0,1), got {p}"));
    }
    if l == 0 {
        return domain("Krawtchouk lattice size L must be positive");
    }
    Ok(())
}

/// `ln W(x) = ln C(L, x) + x ln p + (L − x) ln(1 − p)`.
pub fn krawtchouk_ln_weight(x: usize, p: f64, l: usize) -> f64 {
    ln_binomial(l, x) + x as f64 * p.ln() + (l - x) as f64 * (1.0 - p).ln()
}

/// `ln(‖K_m‖^{−2}) = ln C(L, m) + m ln(p/(1−p))`.
fn ln_inverse_norm2(m: usize, p: f64, l: usize) -> f64 {
    ln_binomial(l, m) + m as f64 * (p / (1.0 - p)).ln()
}

/// Forward degree recurrence for `K̃_0..K̃_{count−1}` at lattice point `x`.
///
/// With `‖K_m‖² = ((1−p)/p)^m / C(L, m)` the rescaled `k_m = K_m / ‖K_m‖`
/// satisfies the symmetric recurrence
/// `√((m+1)(L−m)pq) k_{m+1} = [p(L−m) + mq − x] k_m − √(m(L−m+1)pq) k_{m−1}`.
fn forward(x: usize, p: f64, l: usize, count: usize, mut sink: impl FnMut(SignedLog)) {
    if count == 0 {
        return;
    }
    let q = 1.0 - p;
    let pq = p * q;
    let ln_w = 0.5 * krawtchouk_ln_weight(x, p, l);
    let xf = x as f64;
    let mut pair = ScaledPair::new(0.0, 1.0);
    sink(pair.current().scale(ln_w));
    for m in 1..count {
        let k = m - 1;
        let kf = k as f64;
        let diag = p * (l - k) as f64 + kf * q - xf;
        let back = (kf * (l - k + 1) as f64 * pq).sqrt();
        let fwd = ((kf + 1.0) * (l - k) as f64 * pq).sqrt();
        pair.push((diag * pair.cur - back * pair.prev) / fwd);
        sink(pair.current().scale(ln_w));
    }
}

/// Degree at which the forward recurrence at `x` passes the centre of its
/// oscillatory band. Beyond it the normalized values decay and the
/// recurrence is unstable.
fn turning_degree(x: usize, p: f64, l: usize) -> f64 {
    let q = 1.0 - p;
    2.0 * p * q * (l as f64 - 1.0) - (q - p) * (p * l as f64 - x as f64)
}

/// One of the eight equivalent ways of writing `K̃_m(x; p)`, obtained from
/// `K̃_m(x) = K̃_x(m)`, `K̃_m(L−x; p) = (−1)^m K̃_m(x; 1−p)` and
/// `K̃_{L−m}(x; p) = (−1)^x K̃_m(x; 1−p)`.
#[derive(Clone, Copy)]
struct Representation {
    degree: usize,
    point: usize,
    p: f64,
    negate: bool,
}

fn best_representation(m: usize, x: usize, p: f64, l: usize) -> Representation {
    let q = 1.0 - p;
    let (mm, xx) = (l - m, l - x);
    let odd = |k: usize| k % 2 == 1;
    let candidates = [
        (m, x, p, false),
        (x, m, p, false),
        (m, xx, q, odd(m)),
        (mm, x, q, odd(x)),
        (mm, xx, p, odd(m + xx)),
        (xx, m, q, odd(m)),
        (x, mm, q, odd(x)),
        (xx, mm, p, odd(m + xx)),
    ];
    let margin = |&(d, y, pp, _): &(usize, usize, f64, bool)| turning_degree(y, pp, l) - d as f64;
    let (degree, point, p, negate) = candidates
        .into_iter()
        .max_by(|a, b| margin(a).total_cmp(&margin(b)).then(b.0.cmp(&a.0)))
        .expect("non-empty");
    Representation {
        degree,
        point,
        p,
        negate,
    }
}

fn normalized_log(m: usize, x: usize, p: f64, l: usize) -> SignedLog {
    let r = best_representation(m, x, p, l);
    let mut last = SignedLog::ZERO;
    forward(r.point, r.p, l, r.degree + 1, |v| last = v);
    if r.negate {
        last.sign = -last.sign;
    }
    last
}

/// Krawtchouk polynomial `K_m(x; p, L)` normalized by `K_m(0) = 1`.
pub fn krawtchouk(m: usize, x: usize, p: f64, l: usize) -> Result<f64> {
    check(p, l)?;
    if m > l || x > l {
        return domain(format!("need m, x ≤ L = {l}; got m = {m}, x = {x}"));
    }
    let ln_factor = 0.5 * (krawtchouk_ln_weight(x, p, l) + ln_inverse_norm2(m, p, l));
    Ok(normalized_log(m, x, p, l).scale(-ln_factor).to_f64())
}

/// `K̃_0(x), …, K̃_{count−1}(x)` with `K̃_m(x) = W(x)^{1/2} K_m(x) / ‖K_m‖`.
pub fn krawtchouk_normalized_row(x: usize, p: f64, l: usize, count: usize) -> Result<Vec<f64>> {
    check(p, l)?;
    if x > l || count > l + 1 {
        return domain(format!(
            "need x ≤ L and count ≤ L+1 (L = {l}); got x = {x}, count = {count}"
        ));
    }
    let turn = turning_degree(x, p, l);
    let prefix = (0..count).take_while(|&m| m as f64 <= turn).count();
    let mut out = Vec::with_capacity(count);
    forward(x, p, l, prefix, |v| out.push(v.to_f64()));
    for m in prefix..count {
        out.push(normalized_log(m, x, p, l).to_f64());
    }
    Ok(out)
}
