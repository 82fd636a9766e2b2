//! Reference computations that share no code with the library.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Number of standard Young tableaux of shape `parts`, by peeling off the
/// cell holding the largest entry in every possible way.
pub fn syt_count(parts: &[usize]) -> BigUint {
    fn go(shape: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if shape.iter().all(|&r| r == 0) {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&shape) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..shape.len() {
            let below = shape.get(i + 1).copied().unwrap_or(0);
            if shape[i] > below {
                let mut smaller = shape.clone();
                smaller[i] -= 1;
                total += go(smaller, memo);
            }
        }
        memo.insert(shape, total.clone());
        total
    }
    go(parts.to_vec(), &mut HashMap::new())
}

/// All partitions of `n`, largest first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// `K_m(x; p, L) = ₂F₁(−m, −x; −L; 1/p)`, exactly.
pub fn krawtchouk_exact(m: usize, x: usize, p: &BigRational, l: usize) -> BigRational {
    let step = -BigRational::one() / p;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..m.min(x) {
        let num = BigRational::from_integer(((m - k) * (x - k)).into());
        let den = BigRational::from_integer(((l - k) * (k + 1)).into());
        term = term * num / den * &step;
        sum += &term;
    }
    sum
}

/// `C_m(x; θ) = ₂F₀(−m, −x; ; −1/θ)`, exactly.
pub fn charlier_exact(m: usize, x: usize, theta: &BigRational) -> BigRational {
    let step = -BigRational::one() / theta;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..m.min(x) {
        let num = BigRational::from_integer(((m - k) * (x - k)).into());
        let den = BigRational::from_integer((k + 1).into());
        term = term * num / den * &step;
        sum += &term;
    }
    sum
}

/// Orthonormal Hermite functions `φ_0(t), …, φ_n(t)` on the real line,
/// `φ_n(t) = (2π)^{−1/4} e^{−t²/4} He_n(t) / √n!`.
pub fn hermite_functions(t: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push((2.0 * std::f64::consts::PI).powf(-0.25) * (-t * t / 4.0).exp());
    if n > 0 {
        out.push(t * out[0]);
    }
    for k in 1..n {
        let next = (t * out[k] - (k as f64).sqrt() * out[k - 1]) / ((k + 1) as f64).sqrt();
        out.push(next);
    }
    out
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, by Newton iteration.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(order);
    for i in 0..order {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// `∫_s^∞ φ_x(t) φ_y(t) dt` for all `x, y ≤ n`, by composite Gauss–Legendre
/// with panel doubling until the table settles.
pub fn hermite_kernel_quadrature(s: f64, n: usize) -> Vec<Vec<f64>> {
    let upper = s.max(0.0) + 24.0;
    let rule = gauss_legendre(20);
    let table = |panels: usize| {
        let mut acc = vec![vec![0.0; n + 1]; n + 1];
        let h = (upper - s) / panels as f64;
        for j in 0..panels {
            let mid = s + (j as f64 + 0.5) * h;
            for &(node, weight) in &rule {
                let phi = hermite_functions(mid + 0.5 * h * node, n);
                let w = 0.5 * h * weight;
                for x in 0..=n {
                    for y in 0..=n {
                        acc[x][y] += w * phi[x] * phi[y];
                    }
                }
            }
        }
        acc
    };
    let mut panels = 32;
    let mut prev = table(panels);
    loop {
        panels *= 2;
        let next = table(panels);
        let change = prev
            .iter()
            .flatten()
            .zip(next.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if change < 1e-14 || panels > 4096 {
            return next;
        }
        prev = next;
    }
}

/// Largest entrywise gap between two equally shaped matrices.
pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
