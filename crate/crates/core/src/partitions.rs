//! Partitions, their particle encodings, exact dimensions, and the
//! probability measures on partitions.
//!
//! A partition is stored as its nonzero parts only. Two particle encodings
//! are supported: the finite one `x_i = λ_i + N − i` on `Z_+` (with a fixed
//! number `N ≥ ℓ(λ)` of particles), and the infinite half-integer one
//! `λ_i − i + 1/2`, of which only finite windows are materialised.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::special::{ln_binomial, ln_factorial};

/// A weakly decreasing finite sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Build from parts; trailing zeros are stripped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts {parts:?} are not weakly decreasing"));
        }
        if parts.contains(&0) {
            return domain("zero part before a positive part");
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle `(cols^rows)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`, the number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Whether the diagram fits in the `rows × cols` rectangle.
    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(1) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"3,1,1"`; the empty string is `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    bounded_partitions(n, n, usize::MAX)
}

/// All partitions of `n` with at most `rows` parts, each at most `cols`.
pub fn bounded_partitions(n: usize, cols: usize, rows: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, rows: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, cols, rows, &mut Vec::new(), &mut out);
    out
}

/// All partitions fitting in the `rows × cols` rectangle, by increasing size.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    (0..=rows * cols)
        .flat_map(|n| bounded_partitions(n, cols, rows))
        .collect()
}

/// Which lattice a [`ParticleConfiguration`] lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Plain integers.
    Integer,
    /// Half-integers `k + 1/2`, stored doubled (odd integers).
    HalfInteger,
}

/// A strictly decreasing finite point set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParticleConfiguration {
    points: Vec<i64>,
    lattice: Lattice,
}

impl ParticleConfiguration {
    /// Integer points; sorted into decreasing order, duplicates rejected.
    pub fn new(mut points: Vec<i64>) -> Result<Self> {
        points.sort_unstable_by(|a, b| b.cmp(a));
        if points.windows(2).any(|w| w[0] == w[1]) {
            return domain("configuration points must be distinct");
        }
        Ok(ParticleConfiguration {
            points,
            lattice: Lattice::Integer,
        })
    }

    /// Half-integer points, given doubled (each must be odd).
    pub fn from_doubled_half_integers(mut doubled: Vec<i64>) -> Result<Self> {
        if doubled.iter().any(|d| d.rem_euclid(2) != 1) {
            return domain("doubled half-integers must be odd");
        }
        doubled.sort_unstable_by(|a, b| b.cmp(a));
        if doubled.windows(2).any(|w| w[0] == w[1]) {
            return domain("configuration points must be distinct");
        }
        Ok(ParticleConfiguration {
            points: doubled,
            lattice: Lattice::HalfInteger,
        })
    }

    /// Raw stored points (doubled for the half-integer lattice), decreasing.
    pub fn points(&self) -> &[i64] {
        &self.points
    }

    /// Points as reals.
    pub fn values(&self) -> Vec<f64> {
        let div = match self.lattice {
            Lattice::Integer => 1.0,
            Lattice::HalfInteger => 2.0,
        };
        self.points.iter().map(|&p| p as f64 / div).collect()
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl fmt::Display for ParticleConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lattice {
            Lattice::Integer => {
                let s: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
                f.write_str(&s.join(","))
            }
            Lattice::HalfInteger => {
                let s: Vec<String> = self.points.iter().map(|p| format!("{p}/2")).collect();
                f.write_str(&s.join(","))
            }
        }
    }
}

impl FromStr for ParticleConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return ParticleConfiguration::new(Vec::new());
        }
        let pts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ParticleConfiguration::new(pts)
    }
}

/// `x_i = λ_i + N − i`, `i = 1..N`.
pub fn to_config(lambda: &Partition, n: usize) -> Result<ParticleConfiguration> {
    if n == 0 {
        return domain("particle count must be positive");
    }
    if lambda.len() > n {
        return domain(format!(
            "partition of length {} does not fit in {n} particles",
            lambda.len()
        ));
    }
    let points = (1..=n).map(|i| (lambda.part(i) + n - i) as i64).collect();
    Ok(ParticleConfiguration {
        points,
        lattice: Lattice::Integer,
    })
}

/// Inverse of [`to_config`]: `λ_i = x_i − N + i`.
pub fn from_config(config: &ParticleConfiguration) -> Result<Partition> {
    if config.lattice != Lattice::Integer {
        return domain("expected an integer-lattice configuration");
    }
    let n = config.len();
    if config.points.last().is_some_and(|&x| x < 0) {
        return domain("configuration has negative points");
    }
    let parts = config
        .points
        .iter()
        .enumerate()
        .map(|(i, &x)| (x as usize) + i + 1 - n)
        .collect();
    Partition::new(parts)
}

/// The half-integer configuration `{λ_i − i + 1/2}` restricted to the window
/// `[lo/2, hi/2]` (bounds given doubled).
pub fn frontier(lambda: &Partition, lo_doubled: i64, hi_doubled: i64) -> ParticleConfiguration {
    let mut points = Vec::new();
    let mut i: i64 = 1;
    loop {
        let p = 2 * lambda.part(i as usize) as i64 - 2 * i + 1;
        if p < lo_doubled {
            break;
        }
        if p <= hi_doubled {
            points.push(p);
        }
        i += 1;
    }
    ParticleConfiguration {
        points,
        lattice: Lattice::HalfInteger,
    }
}

/// Holes of a half-integer configuration within `[lo/2, hi/2]`, reflected
/// about zero.
pub fn reflected_holes(config: &ParticleConfiguration, lo_doubled: i64, hi_doubled: i64) -> ParticleConfiguration {
    let first = if lo_doubled.rem_euclid(2) == 1 {
        lo_doubled
    } else {
        lo_doubled + 1
    };
    let mut points: Vec<i64> = (first..=hi_doubled)
        .step_by(2)
        .filter(|k| !config.points.contains(k))
        .map(|k| -k)
        .collect();
    points.sort_unstable_by(|a, b| b.cmp(a));
    ParticleConfiguration {
        points,
        lattice: Lattice::HalfInteger,
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn vandermonde(xs: &[i64]) -> BigInt {
    let mut v = BigInt::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            v *= BigInt::from(xs[i] - xs[j]);
        }
    }
    v
}

/// `dim λ` from the Frobenius formula
/// `dim λ / |λ|! = ∏_{i<j}(x_i − x_j) / ∏ x_i!` with `N` particles.
pub fn dim_sym_with(lambda: &Partition, n: usize) -> Result<BigUint> {
    let cfg = to_config(lambda, n)?;
    let num = BigInt::from(factorial(lambda.size())) * vandermonde(cfg.points());
    let den = cfg
        .points()
        .iter()
        .fold(BigUint::one(), |acc, &x| acc * factorial(x as usize));
    let (q, r) = num.div_rem(&BigInt::from(den));
    debug_assert!(r.is_zero(), "Frobenius quotient must be integral");
    Ok(q.to_biguint().expect("dimension is positive"))
}

/// Number of standard Young tableaux of shape `λ`.
pub fn dim_sym(lambda: &Partition) -> BigUint {
    dim_sym_with(lambda, lambda.len().max(1)).expect("length always fits")
}

/// `Dim_N λ = ∏_{i<j}(x_i − x_j)/(j − i)`, the dimension of the polynomial
/// `U(N)`-module with highest weight `λ`.
pub fn dim_un(lambda: &Partition, n: usize) -> Result<BigUint> {
    let cfg = to_config(lambda, n)?;
    let num = vandermonde(cfg.points());
    let staircase: Vec<i64> = (0..n as i64).rev().collect();
    let den = vandermonde(&staircase);
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "Weyl quotient must be integral");
    Ok(q.to_biguint().expect("dimension is positive"))
}

/// `ln dim λ`, computed in floating point.
pub fn ln_dim_sym(lambda: &Partition) -> f64 {
    let n = lambda.len().max(1);
    let xs: Vec<i64> = (1..=n).map(|i| (lambda.part(i) + n - i) as i64).collect();
    let mut acc = ln_factorial(lambda.size());
    for i in 0..n {
        acc -= ln_factorial(xs[i] as usize);
        for j in i + 1..n {
            acc += ((xs[i] - xs[j]) as f64).ln();
        }
    }
    acc
}

/// `ln Dim_N λ`, computed in floating point.
pub fn ln_dim_un(lambda: &Partition, n: usize) -> Result<f64> {
    let cfg = to_config(lambda, n)?;
    let xs = cfg.points();
    let mut acc = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            acc += ((xs[i] - xs[j]) as f64).ln() - ((j - i) as f64).ln();
        }
    }
    Ok(acc)
}

/// Complement of `λ` in the rectangle `(M^N)`, read from the opposite
/// corner: `λ̂_i = M − λ_{N+1−i}`.
pub fn hat(lambda: &Partition, rows: usize, cols: usize) -> Result<Partition> {
    if !lambda.fits_in(rows, cols) {
        return domain(format!("{lambda:?} does not fit in the {rows}x{cols} rectangle"));
    }
    let parts = (1..=rows).map(|i| cols - lambda.part(rows + 1 - i)).collect();
    Partition::new(parts)
}

/// A real parameter that is either an exact rational or a binary64 value.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(BigRational),
    Float(f64),
}

impl Param {
    pub fn ratio(num: i64, den: i64) -> Self {
        Param::Exact(BigRational::new(num.into(), den.into()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Param::Float(v) => *v,
        }
    }

    /// Exact rational value; floats convert exactly from their binary form.
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Param::Exact(r) => Ok(r.clone()),
            Param::Float(v) => {
                BigRational::from_float(*v).ok_or_else(|| Error::Domain(format!("parameter {v} is not finite")))
            }
        }
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Float(v)
    }
}

/// The measures on partitions.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// `(dim λ)² / n!` on partitions of `n`.
    Plancherel { n: usize },
    /// `dim λ · Dim_N λ / N^n` on partitions of `n` with at most `N` rows.
    SchurWeyl { n: usize, rows: usize },
    /// Poisson(ν) mixture of the Schur–Weyl measures over `n`.
    PoissonSchurWeyl { nu: Param, rows: usize },
    /// `dim λ · dim λ̂ / dim(M^N)` on partitions of `n` inside `(M^N)`.
    Rectangle { n: usize, rows: usize, cols: usize },
    /// Binomial(N², p) mixture of the square-box measures over `n`.
    MixKrawtchouk { p: Param, rows: usize },
}

impl MeasureSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Plancherel { .. } => Ok(()),
            MeasureSpec::SchurWeyl { rows, .. } if *rows == 0 => domain("N must be positive"),
            MeasureSpec::SchurWeyl { .. } => Ok(()),
            MeasureSpec::PoissonSchurWeyl { nu, rows } => {
                if *rows == 0 {
                    return domain("N must be positive");
                }
                let v = nu.to_f64();
                if !(v > 0.0 && v.is_finite()) {
                    return domain(format!("ν must be positive, got {v}"));
                }
                Ok(())
            }
            MeasureSpec::Rectangle { n, rows, cols } => {
                if *rows == 0 || *cols == 0 {
                    return domain("N and M must be positive");
                }
                if *n > rows * cols {
                    return domain(format!("n = {n} exceeds N·M = {}", rows * cols));
                }
                Ok(())
            }
            MeasureSpec::MixKrawtchouk { p, rows } => {
                if *rows == 0 {
                    return domain("N must be positive");
                }
                let v = p.to_f64();
                if !(v > 0.0 && v < 1.0) {
                    return domain(format!("p must lie in (0,1), got {v}"));
                }
                Ok(())
            }
        }
    }

    /// Whether `λ` lies in the support of the measure.
    pub fn supports(&self, lambda: &Partition) -> bool {
        match self {
            MeasureSpec::Plancherel { n } => lambda.size() == *n,
            MeasureSpec::SchurWeyl { n, rows } => lambda.size() == *n && lambda.len() <= *rows,
            MeasureSpec::PoissonSchurWeyl { rows, .. } => lambda.len() <= *rows,
            MeasureSpec::Rectangle { n, rows, cols } => lambda.size() == *n && lambda.fits_in(*rows, *cols),
            MeasureSpec::MixKrawtchouk { rows, .. } => lambda.fits_in(*rows, *rows),
        }
    }

    /// The support, truncated to `|λ| ≤ max_size` for the Poisson mixture
    /// (ignored otherwise).
    pub fn support(&self, max_size: usize) -> Vec<Partition> {
        match self {
            MeasureSpec::Plancherel { n } => partitions_of(*n),
            MeasureSpec::SchurWeyl { n, rows } => bounded_partitions(*n, *n, *rows),
            MeasureSpec::PoissonSchurWeyl { rows, .. } => {
                (0..=max_size).flat_map(|n| bounded_partitions(n, n, *rows)).collect()
            }
            MeasureSpec::Rectangle { n, rows, cols } => bounded_partitions(*n, *cols, *rows),
            MeasureSpec::MixKrawtchouk { rows, .. } => partitions_in_box(*rows, *rows),
        }
    }

    fn check_support(&self, lambda: &Partition) -> Result<()> {
        self.validate()?;
        if !self.supports(lambda) {
            return domain(format!("{lambda:?} is outside the support of {self:?}"));
        }
        Ok(())
    }

    /// Exact weight of `λ`. For the Poisson mixture the global factor `e^{−ν}`
    /// is dropped, so the result is `ν^n/n! · M^SW_{n,N}(λ)`.
    pub fn exact_weight(&self, lambda: &Partition) -> Result<BigRational> {
        self.check_support(lambda)?;
        let big = |u: BigUint| BigInt::from(u);
        let w = match self {
            MeasureSpec::Plancherel { n } => {
                let d = big(dim_sym(lambda));
                BigRational::new(&d * &d, big(factorial(*n)))
            }
            MeasureSpec::SchurWeyl { n, rows } => schur_weyl_exact(lambda, *n, *rows)?,
            MeasureSpec::PoissonSchurWeyl { nu, rows } => {
                let n = lambda.size();
                let nu = nu.to_rational()?;
                let pois = pow(&nu, n) / BigRational::from_integer(big(factorial(n)));
                pois * schur_weyl_exact(lambda, n, *rows)?
            }
            MeasureSpec::Rectangle { rows, cols, .. } => rectangle_exact(lambda, *rows, *cols)?,
            MeasureSpec::MixKrawtchouk { p, rows } => {
                let p = p.to_rational()?;
                let q = BigRational::one() - &p;
                let total = rows * rows;
                let n = lambda.size();
                let binom = BigRational::from_integer(big(binomial(total, n)));
                binom * pow(&p, n) * pow(&q, total - n) * rectangle_exact(lambda, *rows, *rows)?
            }
        };
        Ok(w)
    }

    /// Floating-point weight of `λ`, computed in log-space.
    pub fn weight(&self, lambda: &Partition) -> Result<f64> {
        self.check_support(lambda)?;
        let ln = match self {
            MeasureSpec::Plancherel { n } => 2.0 * ln_dim_sym(lambda) - ln_factorial(*n),
            MeasureSpec::SchurWeyl { n, rows } => {
                ln_dim_sym(lambda) + ln_dim_un(lambda, *rows)? - *n as f64 * (*rows as f64).ln()
            }
            MeasureSpec::PoissonSchurWeyl { nu, rows } => {
                let n = lambda.size();
                let nu = nu.to_f64();
                -nu + n as f64 * nu.ln() - ln_factorial(n) + ln_dim_sym(lambda) + ln_dim_un(lambda, *rows)?
                    - n as f64 * (*rows as f64).ln()
            }
            MeasureSpec::Rectangle { rows, cols, .. } => ln_rectangle(lambda, *rows, *cols)?,
            MeasureSpec::MixKrawtchouk { p, rows } => {
                let p = p.to_f64();
                let total = rows * rows;
                let n = lambda.size();
                ln_binomial(total, n)
                    + n as f64 * p.ln()
                    + (total - n) as f64 * (1.0 - p).ln()
                    + ln_rectangle(lambda, *rows, *rows)?
            }
        };
        Ok(ln.exp())
    }
}

fn schur_weyl_exact(lambda: &Partition, n: usize, rows: usize) -> Result<BigRational> {
    let num = BigInt::from(dim_sym(lambda)) * BigInt::from(dim_un(lambda, rows)?);
    let den = num_traits::pow(BigInt::from(rows), n);
    Ok(BigRational::new(num, den))
}

fn rectangle_exact(lambda: &Partition, rows: usize, cols: usize) -> Result<BigRational> {
    let comp = hat(lambda, rows, cols)?;
    let num = BigInt::from(dim_sym(lambda)) * BigInt::from(dim_sym(&comp));
    let den = BigInt::from(dim_sym(&Partition::rectangle(rows, cols)));
    Ok(BigRational::new(num, den))
}

fn ln_rectangle(lambda: &Partition, rows: usize, cols: usize) -> Result<f64> {
    let comp = hat(lambda, rows, cols)?;
    Ok(ln_dim_sym(lambda) + ln_dim_sym(&comp) - ln_dim_sym(&Partition::rectangle(rows, cols)))
}

fn pow(r: &BigRational, k: usize) -> BigRational {
    num_traits::pow(r.clone(), k)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Smallest `n_max` such that the Poisson(ν) mass beyond `n_max` is below `tail`.
pub fn poisson_truncation(nu: f64, tail: f64) -> usize {
    let mut n = 0usize;
    let mut ln_term = -nu;
    let mut cdf = ln_term.exp();
    while 1.0 - cdf >= tail || (n as f64) < nu {
        n += 1;
        ln_term += nu.ln() - (n as f64).ln();
        cdf += ln_term.exp();
        // past the mode the remaining tail is bounded by a geometric series
        if n as f64 > nu {
            let ratio = nu / (n as f64 + 1.0);
            let bound = ln_term.exp() * ratio / (1.0 - ratio);
            if bound < tail {
                break;
            }
        }
    }
    n
}
