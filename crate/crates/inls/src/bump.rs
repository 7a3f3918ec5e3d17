//! The fixed C-infinity transition profile used by every smooth cutoff in the
//! crate: Littlewood-Paley multipliers, annular and triangular spatial cutoffs,
//! and test-field envelopes all compose this one function.

/// `exp(-1/t)` for `t > 0`, zero otherwise. Smooth at the origin with all
/// derivatives vanishing.
fn h(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

fn h_prime(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp() / (t * t)
    } else {
        0.0
    }
}

fn h_second(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp() * (1.0 / t.powi(4) - 2.0 / t.powi(3))
    } else {
        0.0
    }
}

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`, strictly increasing in between.
pub fn step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = h(t);
        let b = h(1.0 - t);
        a / (a + b)
    }
}

/// First derivative of [`step`].
pub fn step_prime(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let a = h(t);
    let b = h(1.0 - t);
    let ap = h_prime(t);
    let bp = -h_prime(1.0 - t);
    (ap * b - a * bp) / (a + b).powi(2)
}

/// Second derivative of [`step`].
pub fn step_second(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let a = h(t);
    let b = h(1.0 - t);
    let ap = h_prime(t);
    let bp = -h_prime(1.0 - t);
    let app = h_second(t);
    let bpp = h_second(1.0 - t);
    let s = a + b;
    let num = ap * b - a * bp;
    // d/dt [num / s^2] = num'/s^2 - 2 num s'/s^3
    let num_p = app * b - a * bpp;
    num_p / (s * s) - 2.0 * num * (ap + bp) / s.powi(3)
}

/// Frequency-side cutoff: 1 for `lambda <= 1`, 0 for `lambda >= 2`.
/// Dyadic annulus multipliers are differences of dilates of this profile.
pub fn freq_cutoff(lambda: f64) -> f64 {
    1.0 - step(lambda - 1.0)
}
