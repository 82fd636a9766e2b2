//! Correlation kernels: Charlier, Krawtchouk, discrete Hermite, discrete
//! sine, and spectral projections of truncated Jacobi operators.
//!
//! Every kernel is immutable once built. Evaluation orders its arguments
//! canonically, so `evaluate(x, y)` and `evaluate(y, x)` are bit-identical.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::orthopoly::{
    charlier_lattice_cutoff, charlier_normalized_row, krawtchouk_normalized_row, normalized_hermite_table,
    JacobiFamily, JacobiOperator,
};
use crate::special::{ln_factorial, signed_log_sum, SignedLog};

/// Largest `|s|` accepted by the discrete Hermite kernel.
pub const HERMITE_MAX_S: f64 = 40.0;
/// Largest lattice site accepted by the discrete Hermite kernel.
pub const HERMITE_MAX_SITE: i64 = 300;

/// Where a kernel lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundSet {
    /// `Z_+`; sites at or beyond `cutoff` carry negligible mass.
    NonNegative { cutoff: usize },
    /// `{origin, …, origin + size − 1}`.
    Finite { origin: i64, size: usize },
    /// All of `Z`.
    Integers,
}

impl GroundSet {
    pub fn contains(&self, x: i64) -> bool {
        match *self {
            GroundSet::NonNegative { .. } => x >= 0,
            GroundSet::Finite { origin, size } => x >= origin && x < origin + size as i64,
            GroundSet::Integers => true,
        }
    }

    /// The finite or truncated list of sites, or `None` for `Z`.
    pub fn sites(&self) -> Option<Vec<i64>> {
        match *self {
            GroundSet::NonNegative { cutoff } => Some((0..cutoff as i64).collect()),
            GroundSet::Finite { origin, size } => Some((origin..origin + size as i64).collect()),
            GroundSet::Integers => None,
        }
    }
}

/// Family tag and parameters of a [`Kernel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    Charlier { n: usize, theta: f64 },
    Krawtchouk { n: usize, p: f64, l: usize },
    Hermite { s: f64 },
    Sine { phi: f64 },
    Spectral { operator: JacobiFamily, lo: f64, hi: f64 },
}

#[derive(Debug, Clone)]
enum Repr {
    Charlier,
    Krawtchouk,
    Hermite {
        a: f64,
        erfc_half: f64,
    },
    Sine,
    /// Row-major `sites × rank` matrix of selected eigenvectors.
    Spectral {
        rows: Arc<Vec<f64>>,
    },
}

/// A real symmetric correlation kernel.
#[derive(Debug, Clone)]
pub struct Kernel {
    family: KernelFamily,
    ground: GroundSet,
    rank: Option<usize>,
    repr: Repr,
}

/// Orthonormal columns spanning the range of a finite-rank projection,
/// one row per ground-set site.
#[derive(Debug, Clone)]
pub struct Basis {
    pub sites: Vec<i64>,
    pub rank: usize,
    /// Row-major, `sites.len() × rank`.
    pub rows: Vec<f64>,
}

impl Basis {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.rank..(i + 1) * self.rank]
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

fn site_index(x: i64) -> Result<usize> {
    usize::try_from(x).map_err(|_| crate::Error::Domain(format!("site {x} is negative")))
}

impl Kernel {
    /// `Σ_{m<N} C̃_m(x; θ) C̃_m(y; θ)` on `Z_+`.
    pub fn charlier(n: usize, theta: f64) -> Result<Kernel> {
        if n == 0 {
            return domain("Charlier kernel needs N ≥ 1");
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return domain(format!("Charlier parameter must be positive, got {theta}"));
        }
        // the rank-N diagonal lives below (√N + √θ)², the outer edge of C̃_{N−1}
        let reach = (n as f64).sqrt() + theta.sqrt();
        let edge = (reach * reach + 12.0 * reach + 50.0).ceil() as usize;
        Ok(Kernel {
            family: KernelFamily::Charlier { n, theta },
            ground: GroundSet::NonNegative {
                cutoff: charlier_lattice_cutoff(theta).max(edge),
            },
            rank: Some(n),
            repr: Repr::Charlier,
        })
    }

    /// `Σ_{m<N} K̃_m(x; p, L) K̃_m(y; p, L)` on `{0..L}`.
    pub fn krawtchouk(n: usize, p: f64, l: usize) -> Result<Kernel> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("p must lie in (0,1), got {p}"));
        }
        if l == 0 || n == 0 || n > l + 1 {
            return domain(format!("need 1 ≤ N ≤ L+1 with L ≥ 1; got N = {n}, L = {l}"));
        }
        Ok(Kernel {
            family: KernelFamily::Krawtchouk { n, p, l },
            ground: GroundSet::Finite { origin: 0, size: l + 1 },
            rank: Some(n),
            repr: Repr::Krawtchouk,
        })
    }

    /// Discrete Hermite kernel: the spectral projection of the Hermite
    /// operator onto `[s, ∞)`.
    pub fn hermite(s: f64) -> Result<Kernel> {
        if !(s.abs() <= HERMITE_MAX_S) {
            return domain(format!("|s| must not exceed {HERMITE_MAX_S}, got {s}"));
        }
        let a = s / std::f64::consts::SQRT_2;
        Ok(Kernel {
            family: KernelFamily::Hermite { s },
            ground: GroundSet::NonNegative {
                cutoff: HERMITE_MAX_SITE as usize + 1,
            },
            rank: None,
            repr: Repr::Hermite {
                a,
                erfc_half: 0.5 * libm::erfc(a),
            },
        })
    }

    /// `sin(φ(x−y)) / (π(x−y))` on `Z`, with diagonal `φ/π`.
    pub fn sine(phi: f64) -> Result<Kernel> {
        if !(0.0..=PI).contains(&phi) {
            return domain(format!("φ must lie in [0, π], got {phi}"));
        }
        Ok(Kernel {
            family: KernelFamily::Sine { phi },
            ground: GroundSet::Integers,
            rank: None,
            repr: Repr::Sine,
        })
    }

    /// `Σ_{μ_i ∈ [lo, hi]} v_i v_iᵀ` for the eigenpairs of `op`. Site `i` of
    /// the operator is lattice point `op.origin() + i`.
    pub fn spectral_projection(op: &JacobiOperator, lo: f64, hi: f64) -> Result<Kernel> {
        if lo.is_nan() || hi.is_nan() {
            return domain("spectral interval endpoints must not be NaN");
        }
        let eig = op.eigensystem()?;
        let chosen: Vec<usize> = (0..eig.len())
            .filter(|&i| {
                let mu = eig.values()[i];
                lo <= mu && mu <= hi
            })
            .collect();
        let size = op.cutoff();
        let rank = chosen.len();
        let mut rows = vec![0.0; size * rank];
        for (col, &i) in chosen.iter().enumerate() {
            for (x, v) in eig.vector(i).iter().enumerate() {
                rows[x * rank + col] = *v;
            }
        }
        Ok(Kernel {
            family: KernelFamily::Spectral {
                operator: op.family(),
                lo,
                hi,
            },
            ground: GroundSet::Finite {
                origin: op.origin(),
                size,
            },
            rank: Some(rank),
            repr: Repr::Spectral { rows: Arc::new(rows) },
        })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Rank of a finite-rank projection kernel.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    fn check_site(&self, x: i64) -> Result<()> {
        if !self.ground.contains(x) {
            return domain(format!("site {x} is outside the ground set {:?}", self.ground));
        }
        if matches!(self.repr, Repr::Hermite { .. }) && x > HERMITE_MAX_SITE {
            return domain(format!(
                "Hermite kernel sites are limited to {HERMITE_MAX_SITE}, got {x}"
            ));
        }
        Ok(())
    }

    /// Basis row `(v_0(x), …, v_{N−1}(x))` of a finite-rank kernel.
    fn row(&self, x: i64) -> Result<Vec<f64>> {
        match (&self.repr, self.family) {
            (Repr::Charlier, KernelFamily::Charlier { n, theta }) => charlier_normalized_row(site_index(x)?, theta, n),
            (Repr::Krawtchouk, KernelFamily::Krawtchouk { n, p, l }) => {
                krawtchouk_normalized_row(site_index(x)?, p, l, n)
            }
            (Repr::Spectral { rows }, _) => {
                let rank = self.rank.unwrap_or(0);
                let GroundSet::Finite { origin, .. } = self.ground else {
                    unreachable!("spectral kernels live on finite sets")
                };
                let i = (x - origin) as usize;
                Ok(rows[i * rank..(i + 1) * rank].to_vec())
            }
            _ => domain("kernel has no finite basis"),
        }
    }

    /// `K(x, y)`.
    pub fn evaluate(&self, x: i64, y: i64) -> Result<f64> {
        self.check_site(x)?;
        self.check_site(y)?;
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        match self.repr {
            Repr::Hermite { a, erfc_half } => {
                let table = normalized_hermite_table(a, hi as usize + 1);
                Ok(hermite_from_table(&table, a, erfc_half, hi as usize, lo as usize))
            }
            Repr::Sine => Ok(self.sine_value(hi - lo)),
            _ => {
                let (rx, ry) = (self.row(lo)?, self.row(hi)?);
                Ok(dot(&rx, &ry))
            }
        }
    }

    fn sine_value(&self, d: i64) -> f64 {
        let KernelFamily::Sine { phi } = self.family else {
            unreachable!()
        };
        if d == 0 {
            phi / PI
        } else if phi == PI || phi == 0.0 {
            0.0
        } else {
            (phi * d as f64).sin() / (PI * d as f64)
        }
    }

    /// Row-major Gram matrix `[K(x_i, x_j)]`.
    pub fn matrix(&self, points: &[i64]) -> Result<Vec<f64>> {
        for &x in points {
            self.check_site(x)?;
        }
        let n = points.len();
        let mut out = vec![0.0; n * n];
        match self.repr {
            Repr::Hermite { a, erfc_half } => {
                let top = points.iter().copied().max().unwrap_or(0) as usize;
                let table = normalized_hermite_table(a, top + 1);
                for i in 0..n {
                    for j in 0..=i {
                        let (lo, hi) = order(points[i], points[j]);
                        let v = hermite_from_table(&table, a, erfc_half, hi as usize, lo as usize);
                        out[i * n + j] = v;
                        out[j * n + i] = v;
                    }
                }
            }
            Repr::Sine => {
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = self.sine_value((points[i] - points[j]).abs());
                    }
                }
            }
            _ => {
                let rows = points.iter().map(|&x| self.row(x)).collect::<Result<Vec<_>>>()?;
                for i in 0..n {
                    for j in 0..=i {
                        let v = dot(&rows[i], &rows[j]);
                        out[i * n + j] = v;
                        out[j * n + i] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Orthonormal basis of a finite-rank kernel over its (truncated) ground set.
    pub fn basis(&self) -> Result<Basis> {
        let Some(rank) = self.rank else {
            return domain("only finite-rank projection kernels have a basis");
        };
        let Some(sites) = self.ground.sites() else {
            return domain("basis requires a finite or truncated ground set");
        };
        let mut rows = Vec::with_capacity(sites.len() * rank);
        for &x in &sites {
            rows.extend(self.row(x)?);
        }
        Ok(Basis { sites, rank, rows })
    }

    /// `Σ_x K(x, x)` over the (truncated) ground set.
    pub fn trace(&self) -> Result<f64> {
        let Some(sites) = self.ground.sites() else {
            return domain("trace requires a finite or truncated ground set");
        };
        let mut total = 0.0;
        for &x in &sites {
            total += if self.rank.is_some() {
                let r = self.row(x)?;
                dot(&r, &r)
            } else {
                self.evaluate(x, x)?
            };
        }
        Ok(total)
    }

    /// CSV dump with header `x,y,value`, row-major over `window`.
    pub fn window_csv(&self, window: &[i64]) -> Result<String> {
        let m = self.matrix(window)?;
        let n = window.len();
        let mut out = String::from("x,y,value\n");
        for i in 0..n {
            for j in 0..n {
                let _ = writeln!(out, "{},{},{}", window[i], window[j], m[i * n + j]);
            }
        }
        Ok(out)
    }
}

fn order(x: i64, y: i64) -> (i64, i64) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Discrete Hermite kernel at `(x, y)`, `x ≥ y`, from the table `ĥ_n(a)`,
/// `ĥ_n = H_n / √(2^n n!)`.
///
/// Unrolling `I(x,y) = e^{−a²} H_{x−1} H_y + 2y I(x−1, y−1)` down to
/// `I(x−y, 0)` gives, after normalization,
/// `K(x,y) = e^{−a²}/√(2π) Σ_k ĥ_{x−1−k} ĥ_{y−k} √(y!(x−1−k)! / ((y−k)! x!))`
/// plus `erfc(a)/2` on the diagonal, where the `k = y` term is absent.
fn hermite_from_table(table: &[SignedLog], a: f64, erfc_half: f64, x: usize, y: usize) -> f64 {
    debug_assert!(x >= y);
    let ln_pref = -a * a - 0.5 * (2.0 * PI).ln();
    let last = if x == y { y } else { y + 1 };
    let mut terms: Vec<SignedLog> = (0..last)
        .map(|k| {
            let ln_ratio = 0.5 * (ln_factorial(y) + ln_factorial(x - 1 - k) - ln_factorial(y - k) - ln_factorial(x));
            table[x - 1 - k].times(table[y - k]).scale(ln_pref + ln_ratio)
        })
        .collect();
    if x == y {
        terms.push(SignedLog::from_f64(erfc_half));
    }
    signed_log_sum(&terms).to_f64()
}

/// Closed expressions of the discrete Hermite kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiteForm {
    /// The integral recursion; valid on and off the diagonal.
    Integral,
    /// `(π x!y!2^{x+y})^{−1/2} e^{−s²/2} [x H_{x−1} H_y − y H_x H_{y−1}] / (x−y)`.
    ChristoffelDarboux,
    /// `(4π x!y!2^{x+y})^{−1/2} e^{−s²/2} [H_x H_{y+1} − H_{x+1} H_y] / (x−y)`.
    ShiftedChristoffelDarboux,
    /// The same expression with the numerator `H_{x+1} H_y − H_x H_{y+1}`.
    /// It has the wrong sign and is kept only as a reference.
    ShiftedSignFlipped,
}

/// The discrete Hermite kernel `K^he_s(x, y)` through the chosen expression.
pub fn hermite_kernel_form(s: f64, x: usize, y: usize, form: HermiteForm) -> Result<f64> {
    let kernel = Kernel::hermite(s)?;
    if form == HermiteForm::Integral {
        return kernel.evaluate(x as i64, y as i64);
    }
    if x == y {
        return domain("Christoffel–Darboux forms require x ≠ y");
    }
    kernel.check_site(x.max(y) as i64)?;
    let a = s / std::f64::consts::SQRT_2;
    let h = normalized_hermite_table(a, x.max(y) + 1);
    let term = |c: f64, i: usize, j: usize| h[i].times(h[j]).scale(c.ln());
    let (xf, yf) = (x as f64, y as f64);
    let (ln_pref, numerator) = match form {
        HermiteForm::ChristoffelDarboux => {
            let mut t = Vec::with_capacity(2);
            if x > 0 {
                t.push(term((xf / 2.0).sqrt(), x - 1, y));
            }
            if y > 0 {
                let mut v = term((yf / 2.0).sqrt(), x, y - 1);
                v.sign = -v.sign;
                t.push(v);
            }
            (-0.5 * PI.ln(), t)
        }
        HermiteForm::ShiftedChristoffelDarboux | HermiteForm::ShiftedSignFlipped => {
            let mut hi = term((yf + 1.0).sqrt(), x, y + 1);
            let mut lo = term((xf + 1.0).sqrt(), x + 1, y);
            if form == HermiteForm::ShiftedChristoffelDarboux {
                lo.sign = -lo.sign;
            } else {
                hi.sign = -hi.sign;
            }
            (-0.5 * (2.0 * PI).ln(), vec![hi, lo])
        }
        HermiteForm::Integral => unreachable!(),
    };
    Ok(signed_log_sum(&numerator).scale(ln_pref - a * a).to_f64() / (xf - yf))
}

/// `φ = arccos(c(1−2p) / (2√((1−c²)p(1−p))))` for `|c| < 2√(p(1−p))`.
pub fn phi_from_cp(c: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("p must lie in (0,1), got {p}"));
    }
    let pq = p * (1.0 - p);
    let c_max = 2.0 * pq.sqrt();
    if !(c.abs() < c_max) {
        return domain(format!("need |c| < 2√(p(1−p)) = {c_max}, got {c}"));
    }
    let t = c * (1.0 - 2.0 * p) / (2.0 * ((1.0 - c * c) * pq).sqrt());
    Ok(t.clamp(-1.0, 1.0).acos())
}
