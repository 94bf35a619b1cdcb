//! Scalar special functions on top of `libm`.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn cbrt(x: f64) -> f64 {
    libm::cbrt(x)
}

#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln(1 + e^x)` without overflow.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + ln_1p(exp(-x))
    } else {
        ln_1p(exp(x))
    }
}

/// Logistic function.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + exp(-x))
    } else {
        let e = exp(x);
        e / (1.0 + e)
    }
}

/// `ρ(1-ρ)` for the logistic `ρ`, evaluated as `e^{-|x|} / (1 + e^{-|x|})²`.
pub fn logistic_variance(x: f64) -> f64 {
    let e = exp(-x.abs());
    e / ((1.0 + e) * (1.0 + e))
}

/// Scaled complementary error function `e^{t²} erfc(t)`.
pub fn erfcx(t: f64) -> f64 {
    if t < 0.0 {
        // erfc(t) = 2 - erfc(-t)
        2.0 * exp(t * t) - erfcx(-t)
    } else if t < 26.0 {
        exp(t * t) * libm::erfc(t)
    } else {
        // asymptotic series, relative error below 1e-16 in this range
        let inv2 = 1.0 / (2.0 * t * t);
        let series = 1.0 - inv2 + 3.0 * inv2 * inv2 - 15.0 * inv2 * inv2 * inv2;
        series / (t * sqrt(PI))
    }
}

/// Standard normal density.
#[cfg(test)]
pub fn norm_pdf(x: f64) -> f64 {
    exp(-0.5 * x * x) / sqrt(2.0 * PI)
}

/// `ln Φ(x)`, accurate far into the lower tail.
pub fn ln_norm_cdf(x: f64) -> f64 {
    if x < 0.0 {
        let t = -x * FRAC_1_SQRT_2;
        ln(0.5 * erfcx(t)) - t * t
    } else {
        ln_1p(-0.5 * libm::erfc(x * FRAC_1_SQRT_2))
    }
}

/// Inverse Mills ratio `φ(x) / Φ(x)`.
pub fn mills_ratio(x: f64) -> f64 {
    let t = -x * FRAC_1_SQRT_2;
    let s = erfcx(t);
    if s.is_infinite() {
        0.0
    } else {
        sqrt(2.0 / PI) / s
    }
}

/// Digamma function.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + ln(x) - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
}

/// Trigamma function.
pub fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + inv
        + 0.5 * inv2
        + inv * inv2
            * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * 5.0 / 66.0))))
}
