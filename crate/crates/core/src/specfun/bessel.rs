//! Cylinder functions J_n, Y_n and the outgoing Hankel function H_n^{(1)}.
//!
//! Strategy: ascending power series up to x = 12 (with harmonic-number sums
//! for the Y functions), Hankel asymptotic expansions beyond. Higher integer
//! orders come from Miller's downward recurrence for J (normalised by the
//! even-order sum rule) and stable upward recurrence for Y. Worst-case
//! accuracy is ~1e−10 near the series/asymptotic switch; elsewhere ~1e−13.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::legendre::SpecFunError;
use crate::fmath;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 12.0;

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if fmath::abs(term) < 1e-18 * fmath::abs(sum).max(1e-30) {
            break;
        }
    }
    sum
}

fn j1_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if fmath::abs(term) < 1e-18 * fmath::abs(sum).max(1e-30) {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    // Y0 = (2/π)[(ln(x/2)+γ)J0 + Σ_{k≥1} (−1)^{k+1} H_k (x²/4)^k / (k!)²]
    let q = 0.25 * x * x;
    let mut term = 1.0f64; // (x²/4)^k/(k!)², starts at k=0
    let mut h = 0.0f64;
    let mut s = 0.0f64;
    let mut sign = 1.0f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        h += 1.0 / kf;
        s += sign * h * term;
        sign = -sign;
        if term * h < 1e-18 * fmath::abs(s).max(1e-30) {
            break;
        }
    }
    core::f64::consts::FRAC_2_PI * ((fmath::ln(0.5 * x) + EULER_GAMMA) * j0_series(x) + s)
}

fn y1_series(x: f64) -> f64 {
    // Y1 = (2/π)(ln(x/2)+γ)J1 − 2/(πx)
    //      − (1/π) Σ_{k≥0} (−1)^k (H_k + H_{k+1}) (x/2)^{2k+1} / (k!(k+1)!)
    let q = -0.25 * x * x;
    let mut term = 0.5 * x;
    let mut hk = 0.0f64;
    let mut hk1 = 1.0f64;
    let mut s = term * (hk + hk1);
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        hk += 1.0 / kf;
        hk1 += 1.0 / (kf + 1.0);
        let add = term * (hk + hk1);
        s += add;
        if fmath::abs(add) < 1e-18 * fmath::abs(s).max(1e-30) {
            break;
        }
    }
    let pi = core::f64::consts::PI;
    (2.0 / pi) * (fmath::ln(0.5 * x) + EULER_GAMMA) * j1_series(x) - 2.0 / (pi * x) - s / pi
}

/// (P, Q) of the Hankel asymptotic expansion for order ν at large x.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let four_nu2 = 4.0 * nu * nu;
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut t = 1.0f64;
    let mut prev = f64::INFINITY;
    for m in 1..60u32 {
        let mf = m as f64;
        let odd = 2.0 * mf - 1.0;
        t *= (four_nu2 - odd * odd) / (8.0 * mf * x);
        if fmath::abs(t) >= prev {
            break; // divergence onset: stop at the smallest term
        }
        prev = fmath::abs(t);
        match m % 4 {
            1 => q += t,
            2 => p -= t,
            3 => q -= t,
            _ => p += t,
        }
        if fmath::abs(t) < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn asymptotic_jy(nu: f64, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(nu, x);
    let chi = x - (0.5 * nu + 0.25) * core::f64::consts::PI;
    let (s, c) = (fmath::sin(chi), fmath::cos(chi));
    let amp = fmath::sqrt(2.0 / (core::f64::consts::PI * x));
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// J_0(x) for x ≥ 0.
pub fn bessel_j0(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        j0_series(x)
    } else {
        asymptotic_jy(0.0, x).0
    }
}

/// J_1(x) for x ≥ 0.
pub fn bessel_j1(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        j1_series(x)
    } else {
        asymptotic_jy(1.0, x).0
    }
}

fn require_positive(x: f64, who: &str) -> Result<(), SpecFunError> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(SpecFunError::Domain(format!("{who} requires x > 0, got {x}")))
    }
}

/// Y_0(x) for x > 0.
pub fn bessel_y0(x: f64) -> Result<f64, SpecFunError> {
    require_positive(x, "Y0")?;
    Ok(if x <= SERIES_LIMIT { y0_series(x) } else { asymptotic_jy(0.0, x).1 })
}

/// Y_1(x) for x > 0.
pub fn bessel_y1(x: f64) -> Result<f64, SpecFunError> {
    require_positive(x, "Y1")?;
    Ok(if x <= SERIES_LIMIT { y1_series(x) } else { asymptotic_jy(1.0, x).1 })
}

/// J_0..J_nmax by Miller's downward recurrence with sum-rule normalisation
/// J_0 + 2ΣJ_{2k} = 1. Exact at x = 0.
pub fn bessel_jn_array(nmax: u32, x: f64) -> Result<Vec<f64>, SpecFunError> {
    if x < 0.0 {
        return Err(SpecFunError::Domain(format!("J_n requires x ≥ 0, got {x}")));
    }
    let n = nmax as usize;
    if x == 0.0 {
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    let base = (nmax as f64).max(x) as usize;
    let start = base + 20 + (2.0 * fmath::sqrt(base as f64 + 1.0)) as usize;
    let mut out = vec![0.0; n + 1];
    let mut fp = 0.0f64; // f_{k+1}
    let mut fc = 1e-30f64; // f_k
    let mut norm = 0.0f64;
    for k in (0..=start).rev() {
        let fm = 2.0 * (k as f64 + 1.0) / x * fc - fp;
        fp = fc;
        fc = fm;
        if k <= n {
            out[k] = fc;
        }
        if k > 0 && k % 2 == 0 {
            norm += 2.0 * fc;
        }
        if fmath::abs(fc) > 1e250 {
            fc *= 1e-250;
            fp *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += fc;
    for v in out.iter_mut() {
        *v /= norm;
    }
    Ok(out)
}

/// J_n(x) for n ≥ 0, x ≥ 0.
pub fn bessel_jn(n: u32, x: f64) -> Result<f64, SpecFunError> {
    match n {
        0 => {
            if x < 0.0 {
                return Err(SpecFunError::Domain(format!("J_n requires x ≥ 0, got {x}")));
            }
            Ok(bessel_j0(x))
        }
        1 => {
            if x < 0.0 {
                return Err(SpecFunError::Domain(format!("J_n requires x ≥ 0, got {x}")));
            }
            Ok(bessel_j1(x))
        }
        _ => Ok(bessel_jn_array(n, x)?[n as usize]),
    }
}

/// Y_0..Y_nmax by upward recurrence (stable since |Y_n| grows).
pub fn bessel_yn_array(nmax: u32, x: f64) -> Result<Vec<f64>, SpecFunError> {
    require_positive(x, "Y_n")?;
    let n = nmax as usize;
    let mut out = vec![0.0; n + 1];
    out[0] = bessel_y0(x)?;
    if n >= 1 {
        out[1] = bessel_y1(x)?;
        for k in 1..n {
            out[k + 1] = 2.0 * k as f64 / x * out[k] - out[k - 1];
        }
    }
    Ok(out)
}

pub fn bessel_yn(n: u32, x: f64) -> Result<f64, SpecFunError> {
    Ok(bessel_yn_array(n, x)?[n as usize])
}

/// d/dx J_n(x); uses J_n' = J_{n−1} − (n/x)J_n, with the x = 0 limits.
pub fn bessel_jn_prime(n: u32, x: f64) -> Result<f64, SpecFunError> {
    if x < 0.0 {
        return Err(SpecFunError::Domain(format!("J_n' requires x ≥ 0, got {x}")));
    }
    if n == 0 {
        return Ok(-bessel_j1(x));
    }
    if x == 0.0 {
        return Ok(if n == 1 { 0.5 } else { 0.0 });
    }
    let row = bessel_jn_array(n, x)?;
    Ok(row[n as usize - 1] - n as f64 / x * row[n as usize])
}

/// d/dx Y_n(x) for x > 0.
pub fn bessel_yn_prime(n: u32, x: f64) -> Result<f64, SpecFunError> {
    require_positive(x, "Y_n'")?;
    if n == 0 {
        return Ok(-bessel_y1(x)?);
    }
    let row = bessel_yn_array(n, x)?;
    Ok(row[n as usize - 1] - n as f64 / x * row[n as usize])
}

/// Outgoing Hankel function H_n^{(1)}(x) = J_n(x) + iY_n(x), x > 0.
pub fn hankel1(n: u32, x: f64) -> Result<Complex64, SpecFunError> {
    Ok(Complex64::new(bessel_jn(n, x)?, bessel_yn(n, x)?))
}

/// d/dx H_n^{(1)}(x).
pub fn hankel1_prime(n: u32, x: f64) -> Result<Complex64, SpecFunError> {
    Ok(Complex64::new(bessel_jn_prime(n, x)?, bessel_yn_prime(n, x)?))
}

/// H_0^{(1)}(x) for x > 0, the 2D outgoing fundamental-solution kernel.
pub fn cylinder_hankel0(x: f64) -> Result<Complex64, SpecFunError> {
    hankel1(0, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen high-precision reference values (40-digit arithmetic, rounded).
    const REF_J0: &[(f64, f64)] = &[
        (0.5, 0.938_469_807_240_812_9),
        (1.0, 0.765_197_686_557_966_55),
        (2.5, -0.048_383_776_468_197_996),
        (5.0, -0.177_596_771_314_338_3),
        (11.5, -0.067_653_948_111_665_228),
        (12.5, 0.146_884_054_700_421_1),
        (20.0, 0.167_024_664_340_583_15),
        (30.0, -0.086_367_983_581_040_211),
    ];
    const REF_Y0: &[(f64, f64)] = &[
        (0.5, -0.444_518_733_506_706_56),
        (1.0, 0.088_256_964_215_676_958),
        (2.5, 0.498_070_359_615_231_89),
        (5.0, -0.308_517_625_249_033_78),
        (11.5, -0.225_232_111_691_187_87),
        (12.5, -0.171_214_306_844_669_29),
        (20.0, 0.062_640_596_809_383_831),
        (30.0, -0.117_295_731_686_664_03),
    ];
    const REF_J1: &[(f64, f64)] = &[
        (0.5, 0.242_268_457_674_873_89),
        (1.0, 0.440_050_585_744_933_52),
        (2.5, 0.497_094_102_464_274_04),
        (5.0, -0.327_579_137_591_465_22),
        (11.5, -0.228_378_620_665_323_47),
        (12.5, -0.165_483_804_614_759_72),
        (20.0, 0.066_833_124_175_850_046),
        (30.0, -0.118_751_062_616_622_94),
    ];
    const REF_Y1: &[(f64, f64)] = &[
        (0.5, -1.471_472_392_670_243_1),
        (1.0, -0.781_212_821_300_288_72),
        (2.5, 0.145_918_137_966_785_8),
        (5.0, 0.147_863_143_391_226_84),
        (11.5, 0.057_942_547_143_000_822),
        (12.5, -0.153_838_256_537_501_18),
        (20.0, -0.165_511_614_362_521_3),
        (30.0, 0.084_425_570_661_747_235),
    ];

    fn check(table: &[(f64, f64)], f: impl Fn(f64) -> f64, label: &str) {
        for &(x, expect) in table {
            let got = f(x);
            // Series rounding grows with the peak-term/result ratio; beyond
            // the switch the asymptotic truncation floor (~e^{−2x}) dominates.
            let tol = if x <= 10.0 {
                5e-13
            } else if x <= SERIES_LIMIT {
                5e-12
            } else {
                5e-10
            };
            assert!(
                (got - expect).abs() <= tol,
                "{label}({x}): got {got}, expect {expect}"
            );
        }
    }

    #[test]
    fn reference_values() {
        check(REF_J0, bessel_j0, "J0");
        check(REF_Y0, |x| bessel_y0(x).unwrap(), "Y0");
        check(REF_J1, bessel_j1, "J1");
        check(REF_Y1, |x| bessel_y1(x).unwrap(), "Y1");
    }

    #[test]
    fn higher_orders() {
        let cases: &[(u32, f64, f64, f64)] = &[
            (5, 2.0, 0.007_039_629_755_871_685_5, -9.935_989_128_481_975),
            (7, 3.0, 0.002_547_294_451_804_693_8, -19.839_935_408_986_418),
            (12, 30.0, 0.148_253_351_099_660_1, 0.034_143_171_346_460_225),
            (9, 4.0, 0.000_938_601_861_217_564_05, -42.178_143_974_323_413),
            (3, 0.1, 2.082_031_575_475_626_1e-5, -5_099.332_378_612_904_9),
            (20, 12.5, 0.000_484_337_759_758_654_39, -42.202_052_321_748_141),
        ];
        for &(n, x, jref, yref) in cases {
            let j = bessel_jn(n, x).unwrap();
            let y = bessel_yn(n, x).unwrap();
            assert!(
                (j - jref).abs() <= 1e-12 * jref.abs().max(1e-10),
                "J_{n}({x}): {j} vs {jref}"
            );
            assert!(
                (y - yref).abs() <= 1e-9 * yref.abs(),
                "Y_{n}({x}): {y} vs {yref}"
            );
        }
    }

    #[test]
    fn wronskian_identity() {
        // J_{n+1} Y_n − J_n Y_{n+1} = 2/(πx) across both evaluation branches.
        for &x in &[0.3, 2.0, 7.5, 11.9, 12.1, 25.0] {
            for n in [0u32, 1, 4, 9] {
                let j0 = bessel_jn(n, x).unwrap();
                let j1 = bessel_jn(n + 1, x).unwrap();
                let y0 = bessel_yn(n, x).unwrap();
                let y1 = bessel_yn(n + 1, x).unwrap();
                let w = j1 * y0 - j0 * y1;
                let expect = 2.0 / (core::f64::consts::PI * x);
                assert!(
                    (w - expect).abs() <= 1e-9 * expect.abs().max(1.0),
                    "x={x} n={n}: {w} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn sum_rule() {
        for &x in &[1.0, 5.5, 10.0] {
            let row = bessel_jn_array(60, x).unwrap();
            let mut s = row[0];
            for k in (2..=60).step_by(2) {
                s += 2.0 * row[k];
            }
            assert!((s - 1.0).abs() < 1e-12, "x={x}: sum {s}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        for &x in &[0.7, 3.3, 15.0] {
            for n in [0u32, 1, 3, 6] {
                let d = bessel_jn_prime(n, x).unwrap();
                let fd = (bessel_jn(n, x + h).unwrap() - bessel_jn(n, x - h).unwrap()) / (2.0 * h);
                assert!((d - fd).abs() < 2e-8, "J'_{n}({x}): {d} vs {fd}");
                let d = bessel_yn_prime(n, x).unwrap();
                let fd = (bessel_yn(n, x + h).unwrap() - bessel_yn(n, x - h).unwrap()) / (2.0 * h);
                assert!((d - fd).abs() < 2e-7 * d.abs().max(1.0), "Y'_{n}({x}): {d} vs {fd}");
            }
        }
    }

    #[test]
    fn hankel_assembly_and_domains() {
        let h = cylinder_hankel0(1.0).unwrap();
        assert!((h.re - 0.765_197_686_557_966_55).abs() < 1e-12);
        assert!((h.im - 0.088_256_964_215_676_958).abs() < 1e-12);
        assert!(bessel_y0(0.0).is_err());
        assert!(bessel_y0(-1.0).is_err());
        assert!(cylinder_hankel0(-2.0).is_err());
        assert_eq!(bessel_jn(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_jn(4, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_jn_prime(1, 0.0).unwrap(), 0.5);
    }
}
