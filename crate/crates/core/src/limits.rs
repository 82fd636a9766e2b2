//! Edge and bulk limit regimes, and the limit-shape curves.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{domain, numeric, Result};
use crate::exec::Strategy;
use crate::kernels::{phi_from_cp, Kernel};
use crate::partitions::ParticleConfiguration;
use crate::quad::integrate;

/// Largest `N` accepted by the sweeps.
pub const MAX_SWEEP_N: usize = 10_000;
/// Largest comparison window accepted by the sweeps.
pub const MAX_SWEEP_WINDOW: usize = 30;
/// Default edge grid.
pub const EDGE_GRID: [usize; 4] = [100, 400, 1600, 6400];
/// Default bulk grid.
pub const BULK_GRID: [usize; 3] = [25, 100, 400];

const CURVE_TOL: f64 = 1e-12;

/// A limit regime together with the `N`-grid and comparison window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeSpec {
    pub regime: Regime,
    pub grid: Vec<usize>,
    pub window: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    /// `θ(N) = N + s√N`, compared with the discrete Hermite kernel.
    CharlierEdge { s: f64 },
    /// `L = 2N − 1`, window centred at `N + round(cN)`, compared with the
    /// discrete sine kernel.
    KrawtchoukBulk { c: f64, p: f64 },
}

impl RegimeSpec {
    /// Edge regime with the default window `{0..10}` and grid.
    pub fn edge(s: f64) -> Self {
        RegimeSpec {
            regime: Regime::CharlierEdge { s },
            grid: EDGE_GRID.to_vec(),
            window: (0..=10).collect(),
        }
    }

    /// Bulk regime with the default offsets `{−5..5}` and grid.
    pub fn bulk(c: f64, p: f64) -> Self {
        RegimeSpec {
            regime: Regime::KrawtchoukBulk { c, p },
            grid: BULK_GRID.to_vec(),
            window: (-5..=5).collect(),
        }
    }

    /// Run the sweep.
    pub fn run(&self, strategy: Strategy) -> Result<ConvergenceReport> {
        match self.regime {
            Regime::CharlierEdge { s } => charlier_edge_sweep(s, &self.grid, &self.window, strategy),
            Regime::KrawtchoukBulk { c, p } => krawtchouk_bulk_sweep(c, p, &self.grid, &self.window, strategy),
        }
    }
}

/// Sup-norm distances to the limit kernel along an `N`-grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub regime: String,
    pub params: BTreeMap<String, f64>,
    pub window: Vec<i64>,
    pub limit: String,
    pub entries: Vec<(usize, f64)>,
    /// `distance(N_max) < distance(N_min) / 2`, all distances finite.
    pub passed: bool,
}

impl ConvergenceReport {
    fn new(regime: &str, params: &[(&str, f64)], window: &[i64], limit: String, entries: Vec<(usize, f64)>) -> Self {
        let finite = entries.iter().all(|(_, d)| d.is_finite());
        let passed = finite
            && match (entries.first(), entries.last()) {
                (Some(first), Some(last)) if entries.len() > 1 => last.1 < first.1 / 2.0,
                _ => false,
            };
        ConvergenceReport {
            regime: regime.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            window: window.to_vec(),
            limit,
            entries,
            passed,
        }
    }

    pub fn distances(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.1).collect()
    }

    /// Whether the distances strictly decrease along the grid.
    pub fn is_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[1].1 < w[0].1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

fn check_grid(grid: &[usize]) -> Result<()> {
    if grid.is_empty() {
        return domain("the N-grid is empty");
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return domain(format!("the N-grid must increase strictly, got {grid:?}"));
    }
    if let Some(&n) = grid.iter().find(|&&n| n == 0 || n > MAX_SWEEP_N) {
        return domain(format!("grid entries must lie in 1..={MAX_SWEEP_N}, got {n}"));
    }
    Ok(())
}

fn check_window(window: &[i64]) -> Result<()> {
    if window.is_empty() || window.len() > MAX_SWEEP_WINDOW {
        return domain(format!(
            "window must have 1..={MAX_SWEEP_WINDOW} points, got {}",
            window.len()
        ));
    }
    Ok(())
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `θ(N) = N + s√N`.
pub fn edge_theta(n: usize, s: f64) -> f64 {
    n as f64 + s * (n as f64).sqrt()
}

/// `ν(N) = N θ(N) = N² + s N^{3/2}`.
pub fn edge_nu(n: usize, s: f64) -> f64 {
    n as f64 * edge_theta(n, s)
}

/// Left end `(θ − N + 1)/√θ` of the spectral interval of the Charlier operator
/// at `θ = θ(N)`.
pub fn spectral_left_end(s: f64, n: usize) -> Result<f64> {
    let theta = edge_theta(n, s);
    if !(theta > 0.0) {
        return domain(format!("θ(N) = N + s√N must be positive; got {theta} at N = {n}"));
    }
    Ok((theta - n as f64 + 1.0) / theta.sqrt())
}

/// `max_{x,y ∈ window} |K^ch_{N, θ(N)}(x,y) − K^he_s(x,y)|` along the grid.
pub fn charlier_edge_sweep(s: f64, grid: &[usize], window: &[i64], strategy: Strategy) -> Result<ConvergenceReport> {
    check_grid(grid)?;
    check_window(window)?;
    if window.iter().any(|&x| x < 0) {
        return domain("edge windows lie in Z_+");
    }
    let limit = Kernel::hermite(s)?.matrix(window)?;
    let entries = strategy.try_map_range(grid.len(), |i| {
        let n = grid[i];
        let theta = edge_theta(n, s);
        if !(theta > 0.0) {
            return domain(format!("θ(N) = N + s√N must be positive; got {theta} at N = {n}"));
        }
        let k = Kernel::charlier(n, theta)?.matrix(window)?;
        Ok((n, sup_distance(&k, &limit)))
    })?;
    Ok(ConvergenceReport::new(
        "charlier_edge",
        &[("s", s)],
        window,
        format!("hermite(s={s})"),
        entries,
    ))
}

/// `max_{x′,y′} |K^kr_{N,p,2N−1}(N+a_N+x′, N+a_N+y′) − K^dsine_φ(x′,y′)|` along
/// the grid, with `a_N = round(cN)`.
pub fn krawtchouk_bulk_sweep(
    c: f64,
    p: f64,
    grid: &[usize],
    offsets: &[i64],
    strategy: Strategy,
) -> Result<ConvergenceReport> {
    check_grid(grid)?;
    check_window(offsets)?;
    let phi = phi_from_cp(c, p)?;
    let limit = Kernel::sine(phi)?.matrix(offsets)?;
    let entries = strategy.try_map_range(grid.len(), |i| {
        let n = grid[i];
        let l = 2 * n - 1;
        let centre = n as i64 + (c * n as f64).round() as i64;
        let sites: Vec<i64> = offsets.iter().map(|x| centre + x).collect();
        if sites.iter().any(|&x| x < 0 || x > l as i64) {
            return domain(format!("shifted window leaves {{0..{l}}} at N = {n}"));
        }
        let k = Kernel::krawtchouk(n, p, l)?.matrix(&sites)?;
        Ok((n, sup_distance(&k, &limit)))
    })?;
    Ok(ConvergenceReport::new(
        "krawtchouk_bulk",
        &[("c", c), ("p", p)],
        offsets,
        format!("sine(phi={phi})"),
        entries,
    ))
}

fn check_omega_domain(u: f64) -> Result<()> {
    if !(u.abs() <= 2.0) {
        return domain(format!("Ω is defined on [−2, 2], got {u}"));
    }
    Ok(())
}

/// `Ω(u) = (2/π)(u arcsin(u/2) + √(4 − u²))`.
pub fn omega(u: f64) -> Result<f64> {
    check_omega_domain(u)?;
    Ok(2.0 / PI * (u * (u / 2.0).asin() + (4.0 - u * u).max(0.0).sqrt()))
}

/// `Ω′(u) = (2/π) arcsin(u/2)`.
pub fn omega_derivative(u: f64) -> Result<f64> {
    check_omega_domain(u)?;
    Ok(2.0 / PI * (u / 2.0).asin())
}

/// `(1 + Ω′(u)) / 2`.
pub fn omega_density(u: f64) -> Result<f64> {
    Ok(0.5 * (1.0 + omega_derivative(u)?))
}

/// `c_max = 2√(p(1−p))`.
pub fn c_max(p: f64) -> f64 {
    2.0 * (p * (1.0 - p)).sqrt()
}

fn check_p(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("p must lie in (0,1), got {p}"));
    }
    Ok(())
}

/// `F′(c) = 1 − (2/π) arccos(c(1−2p) / (2√((1−c²)p(1−p))))` on `|c| ≤ c_max`.
pub fn mixf_derivative(c: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    let cm = c_max(p);
    if !(c.abs() <= cm) {
        return domain(format!("need |c| ≤ {cm}, got {c}"));
    }
    let pq = p * (1.0 - p);
    let denom = 2.0 * ((1.0 - c * c) * pq).sqrt();
    let t = if denom > 0.0 { c * (1.0 - 2.0 * p) / denom } else { 0.0 };
    Ok(1.0 - 2.0 / PI * t.clamp(-1.0, 1.0).acos())
}

/// `F(−c_max)`. For `p ≤ 1/2` the left endpoint sits on `v = |u|`; for
/// `p > 1/2` the diagram fills the corners of the square and the endpoint
/// sits on `v = 2 − |u|`.
pub fn mixf_anchor(p: f64) -> f64 {
    if p <= 0.5 {
        c_max(p)
    } else {
        2.0 - c_max(p)
    }
}

fn fprime_unchecked(c: f64, p: f64) -> f64 {
    mixf_derivative(c, p).unwrap_or(if c > 0.0 { 1.0 } else { -1.0 })
}

fn integrate_fprime(p: f64, a: f64, b: f64) -> Result<f64> {
    integrate(|c| fprime_unchecked(c, p), a, b, CURVE_TOL)
}

/// Enclosed area `(1/2)∫_{−1}^{1} (v(u) − |u|) du` of the curve `F(p)`, with
/// `v` extended by `|u|` (or `2 − |u|` for `p > 1/2`) outside `[−c_max, c_max]`.
pub fn mixf_area(p: f64) -> Result<f64> {
    check_p(p)?;
    let cm = c_max(p);
    // ∫ F = [uF] − ∫ u F′ over [−c_max, c_max]
    let moment = integrate(|c| c * fprime_unchecked(c, p), -cm, cm, CURVE_TOL)?;
    let inner = 2.0 * cm * mixf_anchor(p) - moment - cm * cm;
    let corners = if p > 0.5 { 2.0 * (1.0 - cm) * (1.0 - cm) } else { 0.0 };
    Ok(0.5 * (inner + corners))
}

/// Which limit curve a [`LimitCurve`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CurveKind {
    PlancherelOmega,
    MixF { p: f64 },
}

/// A sampled limit curve `v(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCurve {
    pub kind: CurveKind,
    pub points: Vec<(f64, f64)>,
}

impl LimitCurve {
    /// CSV with header `u,v`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v\n");
        for (u, v) in &self.points {
            let _ = writeln!(out, "{u},{v}");
        }
        out
    }

    /// Admissible range of the abscissa.
    pub fn range(&self) -> (f64, f64) {
        match self.kind {
            CurveKind::PlancherelOmega => (-2.0, 2.0),
            CurveKind::MixF { p } => (-c_max(p), c_max(p)),
        }
    }
}

fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// `Ω` on `points` equally spaced abscissae in `[−2, 2]`.
pub fn plancherel_omega_curve(points: usize) -> Result<LimitCurve> {
    if points < 2 {
        return domain("a curve needs at least 2 points");
    }
    let pts = uniform_grid(-2.0, 2.0, points)
        .into_iter()
        .map(|u| Ok((u, omega(u)?)))
        .collect::<Result<_>>()?;
    Ok(LimitCurve {
        kind: CurveKind::PlancherelOmega,
        points: pts,
    })
}

/// The curve `F` for the binomial mixture of square-box measures, sampled at
/// `resolution` equally spaced abscissae in `[−c_max, c_max]`.
pub fn limit_shape_f(p: f64, resolution: usize) -> Result<LimitCurve> {
    check_p(p)?;
    if resolution < 100 {
        return domain(format!("resolution must be at least 100, got {resolution}"));
    }
    let cm = c_max(p);
    let grid = uniform_grid(-cm, cm, resolution);
    let mut points = Vec::with_capacity(resolution);
    let mut value = mixf_anchor(p);
    points.push((grid[0], value));
    for w in grid.windows(2) {
        value += integrate_fprime(p, w[0], w[1])?;
        points.push((w[1], value));
    }
    let drift = (value - mixf_anchor(p)).abs();
    if drift > 1e-6 {
        return numeric(format!("F failed to return to its anchor: drift {drift:e}"));
    }
    Ok(LimitCurve {
        kind: CurveKind::MixF { p },
        points,
    })
}

/// The scaled boundary `v(u) = ω(Nu)/N` of the diagram encoded by a
/// configuration, as a piecewise-linear function.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    /// Breakpoints `(u, v)` with `u` increasing in steps of `1/N`.
    nodes: Vec<(f64, f64)>,
}

impl Profile {
    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    /// `v(u)`; equal to `|u|` outside the breakpoints.
    pub fn eval(&self, u: f64) -> f64 {
        let first = self.nodes[0];
        let last = self.nodes[self.nodes.len() - 1];
        if u <= first.0 || u >= last.0 {
            return u.abs();
        }
        let i = self.nodes.partition_point(|n| n.0 <= u);
        let (a, b) = (self.nodes[i - 1], self.nodes[i]);
        a.1 + (b.1 - a.1) * (u - a.0) / (b.0 - a.0)
    }
}

/// Profile of the diagram `λ` with `x_i = λ_i + N − i`. Each site `x` covers
/// the unscaled interval `(x − N, x − N + 1)`, with slope `−1` where `x` is
/// occupied and `+1` where it is empty, starting from `ω(−N) = N`.
pub fn profile_from_sample(config: &ParticleConfiguration, n: usize) -> Result<Profile> {
    if config.len() != n {
        return domain(format!("expected {n} particles, got {}", config.len()));
    }
    if n == 0 {
        return domain("N must be positive");
    }
    let pts = config.points();
    if pts.iter().any(|&x| x < 0) {
        return domain("configuration must lie in Z_+");
    }
    let top = pts.iter().copied().max().unwrap_or(0).max(2 * n as i64 - 1);
    let scale = 1.0 / n as f64;
    let mut nodes = Vec::with_capacity(top as usize + 2);
    let mut v = n as i64;
    nodes.push((-(n as f64) * scale, v as f64 * scale));
    for x in 0..=top {
        v += if pts.contains(&x) { -1 } else { 1 };
        nodes.push(((x + 1 - n as i64) as f64 * scale, v as f64 * scale));
    }
    Ok(Profile { nodes })
}

/// Pointwise mean of several profiles on `grid`.
pub fn mean_profile(profiles: &[Profile], grid: &[f64]) -> Vec<f64> {
    grid.iter()
        .map(|&u| profiles.iter().map(|p| p.eval(u)).sum::<f64>() / profiles.len().max(1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{to_config, Partition};

    #[test]
    fn omega_values() {
        assert!((omega(0.0).unwrap() - 4.0 / PI).abs() < 1e-15);
        assert!((omega(2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((omega(-2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(omega_density(2.0).unwrap() == 1.0);
        assert!(omega_density(-2.0).unwrap() == 0.0);
        assert!(omega_density(0.0).unwrap() == 0.5);
        assert!(omega(2.1).is_err());
        for i in 1..40 {
            let u = -1.95 + 0.1 * i as f64;
            let h = 1e-5;
            let fd = (omega(u + h).unwrap() - omega(u - h).unwrap()) / (2.0 * h);
            assert!((fd - omega_derivative(u).unwrap()).abs() < 1e-8, "u={u}");
        }
    }

    #[test]
    fn mixf_flat_at_half() {
        let curve = limit_shape_f(0.5, 101).unwrap();
        assert!(curve.points.iter().all(|(_, v)| (v - 1.0).abs() < 1e-8));
        assert!((mixf_area(0.5).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mixf_anchor_and_area() {
        for p in [0.2, 0.3, 0.7, 0.8] {
            let curve = limit_shape_f(p, 200).unwrap();
            let (u0, v0) = curve.points[0];
            let (u1, v1) = *curve.points.last().unwrap();
            assert!((u0 + c_max(p)).abs() < 1e-15 && (u1 - c_max(p)).abs() < 1e-15);
            assert!((v1 - v0).abs() < 1e-6, "p={p}");
            assert!(
                (mixf_area(p).unwrap() - p).abs() < 1e-5,
                "p={p}: {}",
                mixf_area(p).unwrap()
            );
        }
        let last = *limit_shape_f(0.3, 100).unwrap().points.last().unwrap();
        assert!((last.1 - 2.0 * 0.21f64.sqrt()).abs() < 1e-6);
        assert!(limit_shape_f(0.3, 99).is_err());
    }

    #[test]
    fn mixf_oddness() {
        for p in [0.1, 0.35, 0.5, 0.9] {
            for i in 0..50 {
                let c = c_max(p) * (i as f64 / 50.0);
                let a = mixf_derivative(c, p).unwrap();
                let b = mixf_derivative(-c, p).unwrap();
                assert!((a + b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mixf_density_matches_sine_parameter() {
        let (p, c) = (0.3, 0.4);
        let phi = phi_from_cp(c, p).unwrap();
        let density = (1.0 - mixf_derivative(c, p).unwrap()) / 2.0;
        assert!((density - phi / PI).abs() < 1e-14);
    }

    #[test]
    fn profiles() {
        let n = 5;
        let empty = to_config(&Partition::empty(), n).unwrap();
        let prof = profile_from_sample(&empty, n).unwrap();
        for i in -30..=30 {
            let u = i as f64 / 10.0;
            assert!((prof.eval(u) - u.abs()).abs() < 1e-15, "u={u}");
        }
        let square = to_config(&Partition::rectangle(n, n), n).unwrap();
        let prof = profile_from_sample(&square, n).unwrap();
        assert!((prof.eval(0.0) - 2.0).abs() < 1e-15);
        for i in -10..=10 {
            let u = i as f64 / 10.0;
            assert!((prof.eval(u) - (2.0 - u.abs())).abs() < 1e-15, "u={u}");
        }
        assert!(profile_from_sample(&empty, 4).is_err());
    }

    #[test]
    fn spectral_left_end_tends_to_s() {
        for s in [-3.0, -0.5, 0.0, 1.0, 4.0] {
            for n in [100usize, 400, 2500, 10_000] {
                let e = spectral_left_end(s, n).unwrap();
                let bound = 2.0 * s * s / (n as f64).sqrt() + 2.0 / (n as f64).sqrt();
                assert!((e - s).abs() < bound, "s={s} N={n}");
            }
        }
        assert!(spectral_left_end(-20.0, 100).is_err());
        assert_eq!(edge_nu(100, 1.0), 100.0 * 110.0);
    }

    #[test]
    fn small_sweeps() {
        let r = charlier_edge_sweep(0.0, &[50, 200], &[0, 1, 2, 3], Strategy::default()).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert!(r.entries[1].1 < r.entries[0].1);
        let r = krawtchouk_bulk_sweep(0.0, 0.5, &[25, 100], &[-2, -1, 0, 1, 2], Strategy::Sequential).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(krawtchouk_bulk_sweep(1.0, 0.5, &[25], &[0], Strategy::Sequential).is_err());
        assert!(charlier_edge_sweep(0.0, &[100, 50], &[0], Strategy::Sequential).is_err());
        assert!(charlier_edge_sweep(0.0, &[100], &[-1], Strategy::Sequential).is_err());
        let json = r.to_json();
        assert!(json.contains("\"entries\"") && json.contains("\"passed\": true"));
    }
}
