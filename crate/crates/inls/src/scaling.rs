//! Exact-rational scaling scaffold: the exponents rho, s, q, r, alpha, beta
//! attached to a nonlinearity power p, and the identities relating them.
//!
//! Everything here is computed in exact rational arithmetic; floating point
//! enters only through the `as_f64` accessors used at the norm-evaluation
//! boundary, plus an explicit float fallback for irrational p.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::error::InlsError;

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Nonlinearity power p > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Power(Rational64);

impl Power {
    pub fn new(p: Rational64) -> Result<Self, InlsError> {
        if p <= Rational64::zero() {
            return Err(InlsError::Validation(format!(
                "nonlinearity power must be positive, got {p}"
            )));
        }
        Ok(Power(p))
    }

    pub fn from_ints(num: i64, den: i64) -> Result<Self, InlsError> {
        if den == 0 {
            return Err(InlsError::Validation("power denominator is zero".into()));
        }
        Self::new(Rational64::new(num, den))
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        ratio_to_f64(self.0)
    }
}

impl FromStr for Power {
    type Err = InlsError;

    /// Accepts "3", "1/2", "0.7".
    fn from_str(s: &str) -> Result<Self, InlsError> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| InlsError::Validation(format!("bad rational '{s}'")))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| InlsError::Validation(format!("bad rational '{s}'")))?;
            return Power::from_ints(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            let digits = frac.len() as u32;
            if digits > 12 {
                return Err(InlsError::Validation(format!("too many decimals in '{s}'")));
            }
            let den = 10i64.pow(digits);
            let int: i64 = if int.is_empty() {
                0
            } else {
                int.parse()
                    .map_err(|_| InlsError::Validation(format!("bad decimal '{s}'")))?
            };
            let frac: i64 = frac
                .parse()
                .map_err(|_| InlsError::Validation(format!("bad decimal '{s}'")))?;
            return Power::new(Rational64::from(int) + Rational64::new(frac, den));
        }
        let n: i64 = s
            .parse()
            .map_err(|_| InlsError::Validation(format!("bad rational '{s}'")))?;
        Power::from_ints(n, 1)
    }
}

impl fmt::Display for Power {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn ratio_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A rational exponent with an explicit infinity sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Finite(Rational64),
    Infinity,
}

impl Exponent {
    /// 1/e, with 1/infinity := 0.
    pub fn recip(&self) -> Rational64 {
        match self {
            Exponent::Finite(r) => r.recip(),
            Exponent::Infinity => Rational64::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Exponent::Finite(_))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Finite(r) => ratio_to_f64(*r),
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{r}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// All scaling exponents attached to one power p.
#[derive(Clone, Debug)]
pub struct ExponentProfile {
    pub p: Power,
    pub rho: Exponent,
    pub s: Rational64,
    pub q: Rational64,
    pub r: Rational64,
    pub alpha: Rational64,
    pub beta: Rational64,
}

/// The unique exponent profile for p (spatial dimension two).
pub fn exponent_profile(p: &Power) -> ExponentProfile {
    let pv = p.value();
    let one = Rational64::one();
    let two = rat(2, 1);
    let four = rat(4, 1);
    let supercritical = pv > two;

    let rho = if supercritical {
        Exponent::Infinity
    } else {
        Exponent::Finite(four / (four - pv))
    };
    let s = if supercritical {
        one - two / pv
    } else {
        rat(1, 2)
    };
    let q = if supercritical {
        (pv * pv + two * pv) / two
    } else {
        two * pv + four
    };
    let r = if supercritical {
        pv + two
    } else {
        (four * pv + rat(8, 1)) / pv
    };
    let alpha = if supercritical {
        (pv * pv + two * pv) / (two * pv + two)
    } else {
        (two * pv + four) / (pv + one)
    };
    let beta = if supercritical {
        (pv + two) / (pv + one)
    } else {
        (four * pv + rat(8, 1)) / (rat(3, 1) * pv + rat(8, 1))
    };

    ExponentProfile {
        p: *p,
        rho,
        s,
        q,
        r,
        alpha,
        beta,
    }
}

/// A candidate Strichartz pair in dimension d.
#[derive(Clone, Copy, Debug)]
pub struct StrichartzPair {
    pub alpha: Exponent,
    pub beta: Exponent,
    pub dim: u32,
}

/// True iff 2 <= alpha, beta <= inf, 2/alpha + d/beta = d/2, and
/// (alpha, beta, d) != (2, inf, 2).
pub fn is_admissible_pair(pair: &StrichartzPair) -> bool {
    let two = rat(2, 1);
    let ge_two = |e: &Exponent| match e {
        Exponent::Finite(r) => *r >= two,
        Exponent::Infinity => true,
    };
    if !ge_two(&pair.alpha) || !ge_two(&pair.beta) {
        return false;
    }
    let d = Rational64::from(pair.dim as i64);
    if two * pair.alpha.recip() + d * pair.beta.recip() != d / two {
        return false;
    }
    let forbidden = pair.dim == 2
        && pair.alpha == Exponent::Finite(two)
        && pair.beta == Exponent::Infinity;
    !forbidden
}

/// One identity outcome inside an [`IdentityReport`].
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of evaluating every profile invariant in exact arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub p: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluates every invariant of the exponent profile exactly.
pub fn verify_identities(p: &Power) -> IdentityReport {
    let prof = exponent_profile(p);
    let pv = p.value();
    let one = Rational64::one();
    let two = rat(2, 1);
    let half = rat(1, 2);
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(IdentityCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    // rho branch
    let rho_ok = if pv > two {
        prof.rho == Exponent::Infinity
    } else {
        prof.rho == Exponent::Finite(rat(4, 1) / (rat(4, 1) - pv))
    };
    push("rho_branch", rho_ok, format!("rho = {}", prof.rho));

    // s branch and range
    let s_branch = if pv > two {
        prof.s == one - two / pv
    } else {
        prof.s == half
    };
    let s_range = prof.s > Rational64::zero() && prof.s < one;
    push(
        "s_branch_and_range",
        s_branch && s_range,
        format!("s = {}", prof.s),
    );

    // criticality of X: 2/q + 2/r = 1 - s
    let lhs = two / prof.q + two / prof.r;
    let rhs = one - prof.s;
    push(
        "criticality_2q_2r",
        lhs == rhs,
        format!("2/q + 2/r = {lhs}, 1 - s = {rhs}"),
    );

    // Hoelder bookkeeping: 1/alpha = (p+1)/q
    let lhs = prof.alpha.recip();
    let rhs = (pv + one) / prof.q;
    push(
        "holder_alpha",
        lhs == rhs,
        format!("1/alpha = {lhs}, (p+1)/q = {rhs}"),
    );

    // Hoelder bookkeeping: 1/beta = 1/rho + (p+1)/r
    let lhs = prof.beta.recip();
    let rhs = prof.rho.recip() + (pv + one) / prof.r;
    push(
        "holder_beta",
        lhs == rhs,
        format!("1/beta = {lhs}, 1/rho + (p+1)/r = {rhs}"),
    );

    // 1/q + 1/r < 1/2 and the equivalent q > 2r/(r-2)
    let sum = prof.q.recip() + prof.r.recip();
    push("subendpoint", sum < half, format!("1/q + 1/r = {sum}"));
    let q_gt = prof.q > two * prof.r / (prof.r - two);
    push(
        "q_above_dual",
        q_gt,
        format!("q = {}, 2r/(r-2) = {}", prof.q, two * prof.r / (prof.r - two)),
    );

    // q, r > 4 for every p (needed for the auxiliary space with exponents q/2, r/2)
    push(
        "q_r_above_four",
        prof.q > rat(4, 1) && prof.r > rat(4, 1),
        format!("q = {}, r = {}", prof.q, prof.r),
    );

    // heuristic scaling identity s = 1 - 2/p + 2/(rho p)
    let rhs = one - two / pv + two * prof.rho.recip() / pv;
    push(
        "heuristic_scaling",
        prof.s == rhs,
        format!("s = {}, 1 - 2/p + 2/(rho p) = {rhs}", prof.s),
    );

    // alpha, beta are Lebesgue exponents >= 1
    push(
        "alpha_beta_at_least_one",
        prof.alpha >= one && prof.beta >= one,
        format!("alpha = {}, beta = {}", prof.alpha, prof.beta),
    );

    IdentityReport {
        p: format!("{p}"),
        checks,
    }
}

/// Float fallback for irrational p. Same branch formulas evaluated in f64.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExponentProfileF64 {
    pub p: f64,
    pub rho: f64,
    pub s: f64,
    pub q: f64,
    pub r: f64,
    pub alpha: f64,
    pub beta: f64,
}

pub fn exponent_profile_f64(p: f64) -> Result<ExponentProfileF64, InlsError> {
    if !(p > 0.0) {
        return Err(InlsError::Validation(format!(
            "nonlinearity power must be positive, got {p}"
        )));
    }
    let prof = if p > 2.0 {
        ExponentProfileF64 {
            p,
            rho: f64::INFINITY,
            s: 1.0 - 2.0 / p,
            q: (p * p + 2.0 * p) / 2.0,
            r: p + 2.0,
            alpha: (p * p + 2.0 * p) / (2.0 * p + 2.0),
            beta: (p + 2.0) / (p + 1.0),
        }
    } else {
        ExponentProfileF64 {
            p,
            rho: 4.0 / (4.0 - p),
            s: 0.5,
            q: 2.0 * p + 4.0,
            r: (4.0 * p + 8.0) / p,
            alpha: (2.0 * p + 4.0) / (p + 1.0),
            beta: (4.0 * p + 8.0) / (3.0 * p + 8.0),
        }
    };
    // identity checks to 1e-12
    let inv_rho = if prof.rho.is_finite() { 1.0 / prof.rho } else { 0.0 };
    let checks = [
        (2.0 / prof.q + 2.0 / prof.r) - (1.0 - prof.s),
        1.0 / prof.alpha - (p + 1.0) / prof.q,
        1.0 / prof.beta - (inv_rho + (p + 1.0) / prof.r),
    ];
    for (i, c) in checks.iter().enumerate() {
        if c.abs() > 1e-12 {
            return Err(InlsError::Numerical(format!(
                "float exponent identity {i} failed at p = {p}: residual {c:e}"
            )));
        }
    }
    Ok(prof)
}

impl ExponentProfile {
    pub fn to_f64(&self) -> ExponentProfileF64 {
        ExponentProfileF64 {
            p: self.p.as_f64(),
            rho: self.rho.as_f64(),
            s: ratio_to_f64(self.s),
            q: ratio_to_f64(self.q),
            r: ratio_to_f64(self.r),
            alpha: ratio_to_f64(self.alpha),
            beta: ratio_to_f64(self.beta),
        }
    }
}
