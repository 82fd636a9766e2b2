//! Determinantal point processes: correlation functions, finite-window
//! distributions, exact sampling of projection kernels, and brute-force
//! ensemble oracles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, numeric, Result};
use crate::exec::Strategy;
use crate::kernels::{Basis, Kernel};
use crate::linalg::determinant;
use crate::partitions::{binomial, partitions_in_box, to_config, MeasureSpec, Param, ParticleConfiguration, Partition};
use crate::special::{ln_binomial, ln_factorial};

/// Largest window accepted by [`window_distribution`].
pub const MAX_WINDOW: usize = 20;
/// Largest number of `N`-point subsets [`enumerate_ensemble`] will visit.
pub const MAX_CONFIGURATIONS: u64 = 1_000_000;
/// Default seed of every sampling entry point.
pub const DEFAULT_SEED: u64 = 0xD1CE;

const NEGATIVE_TOLERANCE: f64 = 1e-12;

fn check_distinct(points: &[i64]) -> Result<Vec<i64>> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return domain(format!("points must be pairwise distinct, got {points:?}"));
    }
    Ok(sorted)
}

/// `ρ_k(x_1, …, x_k) = det[K(x_i, x_j)]`.
pub fn correlation(kernel: &Kernel, points: &[i64]) -> Result<f64> {
    check_distinct(points)?;
    let m = kernel.matrix(points)?;
    Ok(determinant(m, points.len()))
}

/// Law of `X ∩ A` for a finite window `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowDistribution {
    window: Vec<i64>,
    /// Indexed by bitmask over `window`.
    probabilities: Vec<f64>,
}

impl WindowDistribution {
    /// The window, sorted increasingly.
    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `P(X ∩ A = S)`; `None` if `S ⊄ A`.
    pub fn probability(&self, subset: &[i64]) -> Option<f64> {
        let mut mask = 0usize;
        for x in subset {
            let i = self.window.binary_search(x).ok()?;
            mask |= 1 << i;
        }
        Some(self.probabilities[mask])
    }

    /// `(S, P(X ∩ A = S))` for all subsets, in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(mask, &p)| (self.subset(mask), p))
    }

    fn subset(&self, mask: usize) -> Vec<i64> {
        (0..self.window.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.window[i])
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// `P(|X ∩ A| = k)` for `k = 0..=|A|`.
    pub fn count_distribution(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.window.len() + 1];
        for (mask, p) in self.probabilities.iter().enumerate() {
            out[mask.count_ones() as usize] += p;
        }
        out
    }

    /// `E|X ∩ A|`.
    pub fn mean_count(&self) -> f64 {
        self.count_distribution()
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    /// JSON object keyed by the comma-separated increasing subset (`""` for ∅).
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, f64> = self
            .iter()
            .map(|(s, p)| {
                let key = s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (key, p)
            })
            .collect();
        serde_json::to_value(map).expect("string keys")
    }
}

/// `P(X ∩ A = S) = Σ_{S ⊆ T ⊆ A} (−1)^{|T∖S|} ρ_{|T|}(T)`.
pub fn window_distribution(kernel: &Kernel, window: &[i64], strategy: Strategy) -> Result<WindowDistribution> {
    if window.len() > MAX_WINDOW {
        return domain(format!(
            "window of {} points exceeds the limit {MAX_WINDOW}",
            window.len()
        ));
    }
    let window = check_distinct(window)?;
    let k = window.len();
    let gram = kernel.matrix(&window)?;
    let mut f = strategy.map_range(1usize << k, |mask| {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let n = idx.len();
        let mut sub = Vec::with_capacity(n * n);
        for &i in &idx {
            for &j in &idx {
                sub.push(gram[i * k + j]);
            }
        }
        determinant(sub, n)
    });
    for bit in 0..k {
        let b = 1usize << bit;
        for mask in 0..f.len() {
            if mask & b == 0 {
                f[mask] -= f[mask | b];
            }
        }
    }
    for (mask, v) in f.iter_mut().enumerate() {
        if *v < 0.0 {
            if *v < -NEGATIVE_TOLERANCE {
                return numeric(format!("negative window probability {v:e} for subset mask {mask:#b}"));
            }
            *v = 0.0;
        }
    }
    Ok(WindowDistribution {
        window,
        probabilities: f,
    })
}

/// Sequential sampler for a finite-rank projection kernel.
///
/// With `V` the basis matrix (rows indexed by sites), each step draws a site
/// with probability proportional to the squared norm of its row projected off
/// the rows already chosen, then adds that direction to the orthonormal set.
#[derive(Debug, Clone)]
pub struct Sampler {
    basis: Basis,
    row_norms: Vec<f64>,
}

impl Sampler {
    pub fn new(kernel: &Kernel) -> Result<Self> {
        let basis = kernel.basis()?;
        if basis.rank == 0 {
            return domain("cannot sample from a rank-zero kernel");
        }
        let row_norms = (0..basis.sites.len())
            .map(|i| basis.row(i).iter().map(|v| v * v).sum())
            .collect();
        Ok(Sampler { basis, row_norms })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    /// One configuration of exactly `rank` points.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ParticleConfiguration> {
        let n = self.basis.rank;
        let sites = self.basis.sites.len();
        let mut residual = self.row_norms.clone();
        let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut chosen = Vec::with_capacity(n);
        for _ in 0..n {
            let total: f64 = residual.iter().map(|d| d.max(0.0)).sum();
            if !(total >= NEGATIVE_TOLERANCE) {
                return numeric(format!("conditional density mass {total:e} is degenerate"));
            }
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, d) in residual.iter().enumerate() {
                if *d <= 0.0 {
                    continue;
                }
                acc += d;
                pick = Some(i);
                if acc > target {
                    break;
                }
            }
            let pick = pick.expect("positive total mass");
            let mut u = self.basis.row(pick).to_vec();
            for _ in 0..2 {
                for f in &frame {
                    let c: f64 = u.iter().zip(f).map(|(a, b)| a * b).sum();
                    u.iter_mut().zip(f).for_each(|(a, b)| *a -= c * b);
                }
            }
            let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 1e-300) {
                return numeric("sampler lost orthogonality");
            }
            u.iter_mut().for_each(|v| *v /= norm);
            for (i, d) in residual.iter_mut().enumerate() {
                let c: f64 = self.basis.row(i).iter().zip(&u).map(|(a, b)| a * b).sum();
                *d -= c * c;
            }
            residual[pick] = 0.0;
            chosen.push(self.basis.sites[pick]);
            frame.push(u);
        }
        debug_assert_eq!(chosen.len(), n.min(sites));
        ParticleConfiguration::new(chosen)
    }

    /// `count` independent draws; draw `i` uses stream `i` of the ChaCha8
    /// generator seeded with `seed`, so the result does not depend on the
    /// strategy.
    pub fn draw_many(&self, count: usize, seed: u64, strategy: Strategy) -> Result<Vec<ParticleConfiguration>> {
        strategy.try_map_range(count, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            self.draw(&mut rng)
        })
    }
}

/// Draw one configuration from a finite-rank projection kernel.
pub fn sample<R: Rng + ?Sized>(kernel: &Kernel, rng: &mut R) -> Result<ParticleConfiguration> {
    Sampler::new(kernel)?.draw(rng)
}

/// The orthogonal polynomial ensembles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleSpec {
    /// `∏ θ^{x_i}/x_i! · ∏ (x_i − x_j)²` on `Z_+`.
    Charlier { n: usize, theta: f64 },
    /// `∏ C(L, x_i) p^{x_i} (1−p)^{L−x_i} · ∏ (x_i − x_j)²` on `{0..L}`.
    Krawtchouk { n: usize, p: f64, l: usize },
}

impl EnsembleSpec {
    /// The Krawtchouk ensemble with its natural size `L = 2N − 1`.
    pub fn krawtchouk(n: usize, p: f64) -> Self {
        EnsembleSpec::Krawtchouk {
            n,
            p,
            l: (2 * n).saturating_sub(1),
        }
    }

    pub fn particles(&self) -> usize {
        match *self {
            EnsembleSpec::Charlier { n, .. } | EnsembleSpec::Krawtchouk { n, .. } => n,
        }
    }

    /// The correlation kernel of the ensemble.
    pub fn kernel(&self) -> Result<Kernel> {
        match *self {
            EnsembleSpec::Charlier { n, theta } => Kernel::charlier(n, theta),
            EnsembleSpec::Krawtchouk { n, p, l } => Kernel::krawtchouk(n, p, l),
        }
    }

    fn ln_site_weight(&self, x: i64) -> f64 {
        match *self {
            EnsembleSpec::Charlier { theta, .. } => x as f64 * theta.ln() - ln_factorial(x as usize),
            EnsembleSpec::Krawtchouk { p, l, .. } => {
                let x = x as usize;
                ln_binomial(l, x) + x as f64 * p.ln() + (l - x) as f64 * (1.0 - p).ln()
            }
        }
    }

    /// Unnormalized log-weight of a configuration.
    pub fn ln_weight(&self, points: &[i64]) -> f64 {
        let mut ln = points.iter().map(|&x| self.ln_site_weight(x)).sum::<f64>();
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                ln += 2.0 * ((a - b).abs() as f64).ln();
            }
        }
        ln
    }
}

/// Exact law of an ensemble over all `N`-point subsets of a finite lattice.
#[derive(Debug, Clone)]
pub struct EnsembleTable {
    /// Configurations as increasing point lists.
    pub configurations: Vec<Vec<i64>>,
    pub probabilities: Vec<f64>,
}

impl EnsembleTable {
    /// `P(points ⊆ X)`.
    pub fn correlation(&self, points: &[i64]) -> f64 {
        self.configurations
            .iter()
            .zip(&self.probabilities)
            .filter(|(c, _)| points.iter().all(|x| c.binary_search(x).is_ok()))
            .map(|(_, p)| p)
            .sum()
    }
}

fn next_combination(c: &mut [usize], g: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < g - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Brute-force enumeration of an ensemble. Charlier ensembles are restricted
/// to `{0..=truncation}`; Krawtchouk ensembles use their full lattice and
/// ignore `truncation`.
pub fn enumerate_ensemble(spec: &EnsembleSpec, truncation: usize) -> Result<EnsembleTable> {
    let (n, g) = match *spec {
        EnsembleSpec::Charlier { n, theta } => {
            if !(theta > 0.0 && theta.is_finite()) {
                return domain(format!("θ must be positive, got {theta}"));
            }
            (n, truncation + 1)
        }
        EnsembleSpec::Krawtchouk { n, p, l } => {
            if !(p > 0.0 && p < 1.0) {
                return domain(format!("p must lie in (0,1), got {p}"));
            }
            (n, l + 1)
        }
    };
    if n == 0 || n > g {
        return domain(format!("need 1 ≤ N ≤ {g} lattice sites, got N = {n}"));
    }
    let count = binomial(g, n);
    if count > MAX_CONFIGURATIONS.into() {
        return domain(format!(
            "C({g}, {n}) = {count} configurations exceeds {MAX_CONFIGURATIONS}"
        ));
    }
    let mut configurations = Vec::new();
    let mut logs = Vec::new();
    let mut c: Vec<usize> = (0..n).collect();
    loop {
        let pts: Vec<i64> = c.iter().map(|&x| x as i64).collect();
        logs.push(spec.ln_weight(&pts));
        configurations.push(pts);
        if !next_combination(&mut c, g) {
            break;
        }
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
    let z: f64 = raw.iter().sum();
    Ok(EnsembleTable {
        configurations,
        probabilities: raw.into_iter().map(|w| w / z).collect(),
    })
}

/// Ratios of a measure on diagrams to an ensemble weight, one per diagram.
#[derive(Debug, Clone)]
pub struct ProportionalityReport {
    pub ratios: Vec<(Partition, BigRational)>,
}

impl ProportionalityReport {
    /// Whether every ratio equals the first.
    pub fn is_constant(&self) -> bool {
        self.ratios.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn constant(&self) -> Option<&BigRational> {
        if self.is_constant() {
            self.ratios.first().map(|r| &r.1)
        } else {
            None
        }
    }
}

fn exact_vandermonde_squared(points: &[i64]) -> BigRational {
    let mut acc = BigInt::one();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let d = BigInt::from(a - b);
            acc *= &d * &d;
        }
    }
    BigRational::from_integer(acc)
}

fn exact_factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Poissonized Schur–Weyl weights (without `e^{−ν}`) against the Charlier
/// ensemble with `θ = ν/N`, over all `λ` with at most `N` rows and `|λ| ≤ max_size`.
pub fn charlier_equivalence(nu: &BigRational, n: usize, max_size: usize) -> Result<ProportionalityReport> {
    if nu <= &BigRational::zero() || n == 0 {
        return domain("need ν > 0 and N ≥ 1");
    }
    let measure = MeasureSpec::PoissonSchurWeyl {
        nu: Param::Exact(nu.clone()),
        rows: n,
    };
    let theta = nu / BigRational::from_integer(n.into());
    let ratios = measure
        .support(max_size)
        .into_iter()
        .map(|lambda| {
            let lhs = measure.exact_weight(&lambda)?;
            let config = to_config(&lambda, n)?;
            let mut rhs = exact_vandermonde_squared(config.points());
            for &x in config.points() {
                let x = x as usize;
                rhs *= num_traits::pow(theta.clone(), x) / BigRational::from_integer(exact_factorial(x));
            }
            Ok((lambda, lhs / rhs))
        })
        .collect::<Result<_>>()?;
    Ok(ProportionalityReport { ratios })
}

/// Binomial mixture of the square-box measures against the Krawtchouk
/// ensemble with `L = 2N − 1`, over all `λ ⊆ (N^N)`.
pub fn krawtchouk_equivalence(p: &BigRational, n: usize) -> Result<ProportionalityReport> {
    if p <= &BigRational::zero() || p >= &BigRational::one() || n == 0 {
        return domain("need 0 < p < 1 and N ≥ 1");
    }
    let measure = MeasureSpec::MixKrawtchouk {
        p: Param::Exact(p.clone()),
        rows: n,
    };
    let q = BigRational::one() - p;
    let l = 2 * n - 1;
    let ratios = partitions_in_box(n, n)
        .into_iter()
        .map(|lambda| {
            let lhs = measure.exact_weight(&lambda)?;
            let config = to_config(&lambda, n)?;
            let mut rhs = exact_vandermonde_squared(config.points());
            for &x in config.points() {
                let x = x as usize;
                rhs *= BigRational::from_integer(binomial(l, x).into())
                    * num_traits::pow(p.clone(), x)
                    * num_traits::pow(q.clone(), l - x);
            }
            Ok((lambda, lhs / rhs))
        })
        .collect::<Result<_>>()?;
    Ok(ProportionalityReport { ratios })
}
