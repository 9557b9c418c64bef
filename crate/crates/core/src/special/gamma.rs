//! Log-gamma and the Stirling remainder.

// coefficients are quoted to their published digits
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

use super::HALF_LN_2PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ζ(k) for k = 2, 3, ..., 26.
const ZETA: [f64; 25] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_369_9,
    1.017_343_061_984_449_1,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818_1,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308_1,
    1.000_122_713_347_578_5,
    1.000_061_248_135_058_7,
    1.000_030_588_236_307,
    1.000_015_282_259_408_7,
    1.000_007_637_197_637_9,
    1.000_003_817_293_265,
    1.000_001_908_212_716_6,
    1.000_000_953_962_033_9,
    1.000_000_476_932_986_8,
    1.000_000_238_450_502_7,
    1.000_000_119_219_926,
    1.000_000_059_608_189,
    1.000_000_029_803_503_5,
    1.000_000_014_901_554_8,
];

/// Lanczos coefficients, g = 671/128, 14 terms.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

/// Above this the Stirling series is used for both ln Γ and its remainder.
const STIRLING_CUTOFF: f64 = 10.0;

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Near the zeros at 1 and 2 the Taylor series of ln Γ(1 + z) is used so that
/// the result keeps its relative accuracy; large arguments go through the
/// Stirling series, everything else through a Lanczos sum.
pub fn log_gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() || x <= T::zero() {
        return Err(Error::domain("x", to_f64(x), "log_gamma requires a finite x > 0"));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked<T: Real>(x: T) -> T {
    let one = T::one();
    let two = one + one;
    let near = lit::<T>(0.2);
    if (x - one).abs() <= near {
        return log_gamma_1p_series(x - one);
    }
    if (x - two).abs() <= near {
        let z = x - two;
        return log_gamma_1p_series(z) + z.ln_1p();
    }
    if x >= lit(STIRLING_CUTOFF) {
        return (x - lit(0.5)) * x.ln() - x + lit(HALF_LN_2PI) + stirling_series(x);
    }
    lanczos(x)
}

/// ln Γ(1 + z) = −γz + Σ_{k≥2} (−1)^k ζ(k) z^k / k, used for |z| ≤ 0.2.
fn log_gamma_1p_series<T: Real>(z: T) -> T {
    let mut sum = T::zero();
    // Horner from the highest order term down.
    for (i, &zeta) in ZETA.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if (i + 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum = (sum + lit(sign * zeta / k)) * z;
    }
    (sum - lit(EULER_GAMMA)) * z
}

fn lanczos<T: Real>(x: T) -> T {
    let mut y = x;
    let tmp = x + lit(LANCZOS_G);
    let tmp = (x + lit(0.5)) * tmp.ln() - tmp;
    let mut ser: T = lit(LANCZOS_C0);
    for &c in LANCZOS.iter() {
        y = y + T::one();
        ser = ser + lit::<T>(c) / y;
    }
    tmp + (lit::<T>(2.506_628_274_631_000_5) * ser / x).ln()
}

/// Asymptotic series for δ(x) = ln Γ(x) − [(x − ½) ln x − x + ½ ln 2π].
fn stirling_series<T: Real>(x: T) -> T {
    const COEF: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut acc = T::zero();
    for &c in COEF.iter().rev() {
        acc = acc * inv2 + lit(c);
    }
    acc * inv
}

/// Stirling remainder δ(x) = ln Γ(x) − (x − ½) ln x + x − ½ ln 2π.
///
/// Below the series cutoff the recurrence δ(x) = δ(x + 1) + (x + ½) ln(1 + 1/x) − 1
/// walks up to it, which avoids subtracting large log-gamma values.
pub(crate) fn stirling_error<T: Real>(x: T) -> T {
    let one = T::one();
    let cutoff = lit::<T>(STIRLING_CUTOFF);
    let mut z = x;
    let mut acc = T::zero();
    while z < cutoff {
        acc = acc + recurrence_step(z);
        z = z + one;
    }
    acc + stirling_series(z)
}

/// (z + ½) ln(1 + 1/z) − 1.
///
/// With w = 1/(2z + 1) this equals Σ_{k≥1} w^{2k}/(2k + 1), which is summed
/// directly whenever it converges quickly.
fn recurrence_step<T: Real>(z: T) -> T {
    let one = T::one();
    let half = lit::<T>(0.5);
    let w = (z + z + one).recip();
    if w > half {
        return (z + half) * z.recip().ln_1p() - one;
    }
    let w2 = w * w;
    let mut term = w2;
    let mut sum = T::zero();
    let mut k = 3.0;
    loop {
        let add = term / lit(k);
        sum = sum + add;
        if add <= sum * T::epsilon() * lit(0.25) {
            return sum;
        }
        term = term * w2;
        k += 2.0;
    }
}

/// ln(1 + u) − u without cancellation for small |u|.
pub(crate) fn log1pmx<T: Real>(u: T) -> T {
    let half = lit::<T>(0.5);
    if u.abs() > half {
        return u.ln_1p() - u;
    }
    // ln(1 + u) = 2 atanh(r), r = u / (2 + u); 2r − u = −r u.
    let two = T::one() + T::one();
    let r = u / (two + u);
    let y = r * r;
    let mut term = T::one();
    let mut sum = T::zero();
    let mut k = 3.0;
    loop {
        let add = term / lit(k);
        sum = sum + add;
        if add <= T::epsilon() * sum * lit(0.25) {
            break;
        }
        term = term * y;
        k += 2.0;
    }
    r * (two * y * sum - u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma(1.0_f64).unwrap().abs() < 1e-16);
        assert!(log_gamma(2.0_f64).unwrap().abs() < 1e-16);
        assert!(rel(log_gamma(0.5_f64).unwrap(), std::f64::consts::PI.sqrt().ln()) < 1e-15);
        assert!(rel(log_gamma(10.0_f64).unwrap(), 362_880.0_f64.ln()) < 1e-15);
    }

    #[test]
    fn domain_errors() {
        for x in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(log_gamma(x), Err(Error::Domain { .. })));
        }
    }

    #[test]
    fn stirling_error_matches_definition() {
        for x in [0.3, 1.0, 4.0, 9.99, 10.0, 55.5, 1e6] {
            let d: f64 = stirling_error(x);
            let direct = log_gamma(x).unwrap() - (x - 0.5) * x.ln() + x - HALF_LN_2PI;
            assert!((d - direct).abs() < 1e-14 * (1.0 + (x * x.ln()).abs()), "{x}");
        }
    }

    #[test]
    fn log1pmx_against_direct_and_series() {
        for u in [-0.9, -0.5, -0.2, 0.2, 0.5, 2.0, 100.0] {
            let got: f64 = log1pmx(u);
            assert!(rel(got, u.ln_1p() - u) < 1e-13, "{u}");
        }
        for u in [-1e-3, -1e-8, 1e-8, 1e-3] {
            let got: f64 = log1pmx(u);
            let series: f64 = (2..12).map(|k| -(-u).powi(k) / k as f64).sum();
            assert!(rel(got, series) < 1e-14, "{u}");
        }
        assert_eq!(log1pmx(0.0_f64), 0.0);
    }

    #[test]
    fn single_precision_works() {
        let v = log_gamma(10.0_f32).unwrap();
        assert!((v - 362_880.0_f32.ln()).abs() < 1e-5);
    }
}
