//! Log-space helpers shared by the polynomial and kernel code.

/// `ln(n!)`.
pub fn ln_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// A real number stored as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        ln_abs: f64::NEG_INFINITY,
        sign: 0.0,
    };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            SignedLog {
                ln_abs: v.abs().ln(),
                sign: v.signum(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    pub fn times(self, other: SignedLog) -> Self {
        SignedLog {
            ln_abs: self.ln_abs + other.ln_abs,
            sign: self.sign * other.sign,
        }
    }

    /// Multiply by `exp(ln_factor)`.
    pub fn scale(self, ln_factor: f64) -> Self {
        SignedLog {
            ln_abs: self.ln_abs + ln_factor,
            sign: self.sign,
        }
    }
}

/// Sum of signed log-space terms, evaluated relative to the largest term.
pub fn signed_log_sum(terms: &[SignedLog]) -> SignedLog {
    let max = terms
        .iter()
        .filter(|t| t.sign != 0.0)
        .map(|t| t.ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return SignedLog::ZERO;
    }
    let acc: f64 = terms
        .iter()
        .filter(|t| t.sign != 0.0)
        .map(|t| t.sign * (t.ln_abs - max).exp())
        .sum();
    let mut out = SignedLog::from_f64(acc);
    out.ln_abs += max;
    out
}

const RESCALE_HI: f64 = 1e150;
const RESCALE_LO: f64 = 1e-150;

/// Running state of a three-term recurrence `(prev, cur)` carried with a
/// shared exponent so that neither value over- or underflows.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPair {
    pub prev: f64,
    pub cur: f64,
    pub ln_scale: f64,
}

impl ScaledPair {
    pub fn new(prev: f64, cur: f64) -> Self {
        let mut p = ScaledPair {
            prev,
            cur,
            ln_scale: 0.0,
        };
        p.renormalize();
        p
    }

    /// Shift in `next`, then rescale if needed.
    pub fn push(&mut self, next: f64) {
        self.prev = self.cur;
        self.cur = next;
        self.renormalize();
    }

    pub fn current(&self) -> SignedLog {
        SignedLog::from_f64(self.cur).scale(self.ln_scale)
    }

    fn renormalize(&mut self) {
        let m = self.cur.abs().max(self.prev.abs());
        if m > RESCALE_HI || (m < RESCALE_LO && m > 0.0) {
            let k = m.ln().round();
            let f = (-k).exp();
            self.cur *= f;
            self.prev *= f;
            self.ln_scale += k;
        }
    }
}
