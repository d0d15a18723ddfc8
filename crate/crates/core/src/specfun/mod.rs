//! Special functions: real-degree associated Legendre functions, spherical
//! harmonics, and cylinder (Bessel/Hankel) functions.

pub mod bessel;
pub mod gamma;
pub mod legendre;

pub use bessel::{
    bessel_j0, bessel_j1, bessel_jn, bessel_jn_array, bessel_jn_prime, bessel_y0, bessel_y1,
    bessel_yn, bessel_yn_array, bessel_yn_prime, cylinder_hankel0, hankel1, hankel1_prime,
};
pub use gamma::{digamma, recip_gamma};
pub use legendre::{
    eval_p, eval_p_dt, legendre_p, legendre_p_d2t, legendre_p_dlambda, legendre_p_dt,
    spherical_harmonic, wronskian_det, LegendreArg, SpecFunError, SphericalHarmonicIndex,
};

#[cfg(test)]
mod tests {
    use super::*;

    /// Frozen 40-digit reference values for P_λ^m(t) (no Condon–Shortley
    /// phase), including points deep inside the t → −1 connection zone.
    #[test]
    fn legendre_reference_values() {
        let cases: &[(f64, u32, f64, f64)] = &[
            (0.5, 0, 0.3, 0.700_938_530_969_655_09),
            (1.37, 1, -0.9995, -18.560_790_334_611_931),
            (2.55, 2, -0.9995, -1_260.113_414_973_595_8),
            (-0.45, 0, -0.9995, 3.492_782_182_105_055_5),
            (0.6, 0, -0.9995, -2.393_286_101_282_102_2),
            (0.5, 0, -0.999_999, -4.227_550_066_085_001_7),
            (3.44, 2, 0.5, 5.961_812_300_993_120_6),
            (2.7, 1, -0.4, -1.052_129_953_057_854_4),
            (-1.3, 2, -0.6, -1.093_130_145_289_754_9),
            (4.2, 3, 0.7, 33.432_851_709_279_974),
        ];
        for &(lambda, m, t, expect) in cases {
            let got = eval_p(lambda, m, t).unwrap();
            assert!(
                (got - expect).abs() <= 1e-11 * expect.abs().max(1.0),
                "P_{lambda}^{m}({t}): got {got}, expect {expect}"
            );
        }
    }
}
