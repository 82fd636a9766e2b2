use crate::error::{domain, Result};
use crate::linalg::{tridiagonal_eigen, TridiagonalEigen};

/// Which difference operator a [`JacobiOperator`] realises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobiFamily {
    /// `b_x = 0`, `a_x = √(x+1)`.
    Hermite,
    /// `b_x = −x/√θ`, `a_x = √(x+1)`.
    Charlier { theta: f64 },
    /// Normalized Krawtchouk difference operator on `{0..L}`.
    KrawtchoukDiff { p: f64, l: usize },
    /// `f(x+1) + f(x−1)` on the integer window starting at `origin`.
    FreeShift { origin: i64 },
}

/// A finite symmetric tridiagonal operator on consecutive lattice sites.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    diag: Vec<f64>,
    off: Vec<f64>,
    family: JacobiFamily,
}

impl JacobiOperator {
    /// Upper-left `cutoff × cutoff` corner of the family's operator. For
    /// `KrawtchoukDiff` the operator is finite and `cutoff` must be `L + 1`.
    pub fn new(family: JacobiFamily, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return domain(format!("cutoff must be at least 2, got {cutoff}"));
        }
        let sites = 0..cutoff;
        let (diag, off): (Vec<f64>, Vec<f64>) = match family {
            JacobiFamily::Hermite => (
                vec![0.0; cutoff],
                (0..cutoff - 1).map(|x| ((x + 1) as f64).sqrt()).collect(),
            ),
            JacobiFamily::Charlier { theta } => {
                if !(theta > 0.0 && theta.is_finite()) {
                    return domain(format!("Charlier parameter must be positive, got {theta}"));
                }
                let s = theta.sqrt();
                (
                    sites.map(|x| -(x as f64) / s).collect(),
                    (0..cutoff - 1).map(|x| ((x + 1) as f64).sqrt()).collect(),
                )
            }
            JacobiFamily::KrawtchoukDiff { p, l } => {
                if !(p > 0.0 && p < 1.0) {
                    return domain(format!("p must lie in (0,1), got {p}"));
                }
                if cutoff != l + 1 {
                    return domain(format!("Krawtchouk operator has exactly L+1 = {} sites", l + 1));
                }
                let lf = l as f64;
                let denom = lf * (p * (1.0 - p)).sqrt();
                (
                    sites.map(|x| x as f64 * (2.0 * p - 1.0) / denom).collect(),
                    (0..l).map(|x| (((l - x) * (x + 1)) as f64).sqrt() / lf).collect(),
                )
            }
            JacobiFamily::FreeShift { .. } => (vec![0.0; cutoff], vec![1.0; cutoff - 1]),
        };
        Ok(JacobiOperator { diag, off, family })
    }

    /// The Krawtchouk operator on its natural lattice `{0..L}`.
    pub fn krawtchouk(p: f64, l: usize) -> Result<Self> {
        Self::new(JacobiFamily::KrawtchoukDiff { p, l }, l + 1)
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off
    }

    pub fn family(&self) -> JacobiFamily {
        self.family
    }

    pub fn cutoff(&self) -> usize {
        self.diag.len()
    }

    /// Lattice label of the first site.
    pub fn origin(&self) -> i64 {
        match self.family {
            JacobiFamily::FreeShift { origin } => origin,
            _ => 0,
        }
    }

    /// `(J v)` for a vector on the truncated lattice.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.cutoff();
        (0..n)
            .map(|x| {
                let mut s = self.diag[x] * v[x];
                if x > 0 {
                    s += self.off[x - 1] * v[x - 1];
                }
                if x + 1 < n {
                    s += self.off[x] * v[x + 1];
                }
                s
            })
            .collect()
    }

    /// Row-sum bound on the operator norm.
    pub fn norm_bound(&self) -> f64 {
        let n = self.cutoff();
        (0..n)
            .map(|x| {
                let mut s = self.diag[x].abs();
                if x > 0 {
                    s += self.off[x - 1].abs();
                }
                if x + 1 < n {
                    s += self.off[x].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn eigensystem(&self) -> Result<Eigensystem> {
        if self.cutoff() > 20_000 {
            return domain("eigensystem limited to 20000 sites");
        }
        Ok(Eigensystem {
            inner: tridiagonal_eigen(&self.diag, &self.off)?,
        })
    }
}

/// Eigenvalues (decreasing) with orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    inner: TridiagonalEigen,
}

impl Eigensystem {
    pub fn values(&self) -> &[f64] {
        &self.inner.values
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        self.inner.vector(i)
    }

    pub fn len(&self) -> usize {
        self.inner.n
    }

    pub fn is_empty(&self) -> bool {
        self.inner.n == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{charlier_normalized_row, krawtchouk_normalized_row};

    #[test]
    fn entries() {
        let h = JacobiOperator::new(JacobiFamily::Hermite, 3).unwrap();
        assert_eq!(h.diagonal(), &[0.0, 0.0, 0.0]);
        assert_eq!(h.off_diagonal(), &[1.0, 2f64.sqrt()]);

        let c = JacobiOperator::new(JacobiFamily::Charlier { theta: 4.0 }, 3).unwrap();
        assert_eq!(c.diagonal(), &[0.0, -0.5, -1.0]);
        assert_eq!(c.off_diagonal(), &[1.0, 2f64.sqrt()]);

        let k = JacobiOperator::krawtchouk(0.5, 1).unwrap();
        assert_eq!(k.diagonal(), &[0.0, 0.0]);
        assert_eq!(k.off_diagonal(), &[1.0]);

        assert!(JacobiOperator::new(JacobiFamily::Hermite, 1).is_err());
        assert!(JacobiOperator::new(JacobiFamily::KrawtchoukDiff { p: 0.5, l: 3 }, 3).is_err());
        assert!(JacobiOperator::new(JacobiFamily::Charlier { theta: -1.0 }, 3).is_err());
    }

    #[test]
    fn free_shift_two_sites() {
        let j = JacobiOperator::new(JacobiFamily::FreeShift { origin: -1 }, 2).unwrap();
        let e = j.eigensystem().unwrap();
        assert!((e.values()[0] - 1.0).abs() < 1e-15);
        assert!((e.values()[1] + 1.0).abs() < 1e-15);
        assert_eq!(j.origin(), -1);
    }

    #[test]
    fn krawtchouk_spectrum_and_eigenvectors() {
        let k = JacobiOperator::krawtchouk(0.5, 3).unwrap();
        let vals = k.eigensystem().unwrap().values().to_vec();
        for (v, e) in vals.iter().zip([1.0, 1.0 / 3.0, -1.0 / 3.0, -1.0]) {
            assert!((v - e).abs() < 1e-12);
        }

        for &(p, l) in &[(0.3, 20usize), (0.5, 31), (0.7, 40)] {
            let j = JacobiOperator::krawtchouk(p, l).unwrap();
            let es = j.eigensystem().unwrap();
            let denom = l as f64 * (p * (1.0 - p)).sqrt();
            let rows: Vec<Vec<f64>> = (0..=l)
                .map(|x| krawtchouk_normalized_row(x, p, l, l + 1).unwrap())
                .collect();
            for m in 0..=l {
                let expect = (p * l as f64 - m as f64) / denom;
                assert!((es.values()[m] - expect).abs() < 1e-9);
                let v = es.vector(m);
                let sign = if v.iter().zip(&rows).map(|(a, r)| a * r[m]).sum::<f64>() >= 0.0 {
                    1.0
                } else {
                    -1.0
                };
                let err = v
                    .iter()
                    .zip(&rows)
                    .map(|(a, r)| (a - sign * r[m]).abs())
                    .fold(0.0, f64::max);
                assert!(err < 1e-8, "p={p} L={l} m={m}: {err:e}");
            }
        }
    }

    #[test]
    fn residuals_within_tolerance() {
        let j = JacobiOperator::new(JacobiFamily::Charlier { theta: 25.0 }, 400).unwrap();
        let es = j.eigensystem().unwrap();
        let norm = j.norm_bound();
        for i in 0..es.len() {
            let v = es.vector(i);
            let jv = j.apply(v);
            let r = jv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - es.values()[i] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(r < 1e-10 * norm, "i={i}: {r:e}");
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn charlier_truncation_recovers_point_spectrum() {
        let theta = 25.0;
        let j = JacobiOperator::new(JacobiFamily::Charlier { theta }, 400).unwrap();
        let es = j.eigensystem().unwrap();
        let rows: Vec<Vec<f64>> = (0..200)
            .map(|x| charlier_normalized_row(x, theta, 11).unwrap())
            .collect();
        for m in 0..=10 {
            let expect = (theta - m as f64) / theta.sqrt();
            assert!((es.values()[m] - expect).abs() < 1e-6);
            let v = es.vector(m);
            let dot: f64 = (0..200).map(|x| v[x] * rows[x][m]).sum();
            let sign = dot.signum();
            let err = (0..200).map(|x| (v[x] - sign * rows[x][m]).abs()).fold(0.0, f64::max);
            assert!(err < 1e-6, "m={m}: {err:e}");
        }
    }
}
