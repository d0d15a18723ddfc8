//! Exact arithmetic in real quadratic extensions ℚ(√s), s ∈ {2, 3}, with
//! plain rationals as the degenerate case. Angles that are rational multiples
//! of π with denominator in {1, 2, 3, 4, 6} have sines and cosines in one of
//! these fields, which makes the corresponding boundary systems exactly
//! solvable.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// a + b√s. `radicand` 0 encodes a plain rational (b must then be 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    pub radicand: u32,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QuadExt {
    pub fn from_rational(a: BigRational) -> Self {
        QuadExt { a, b: BigRational::zero(), radicand: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn new(a: BigRational, b: BigRational, radicand: u32) -> Self {
        if b.is_zero() {
            Self::from_rational(a)
        } else {
            assert!(radicand == 2 || radicand == 3, "radicand must be 2 or 3");
            QuadExt { a, b, radicand }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn joint_radicand(&self, other: &Self) -> u32 {
        match (self.radicand, other.radicand) {
            (0, s) | (s, 0) => s,
            (s, t) => {
                assert!(s == t, "mixed radicands √{s} and √{t}");
                s
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.joint_radicand(other);
        Self::new(&self.a + &other.a, &self.b + &other.b, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let s = self.joint_radicand(other);
        Self::new(&self.a - &other.a, &self.b - &other.b, s)
    }

    pub fn neg(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, radicand: self.radicand }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.joint_radicand(other);
        let srat = rat(s.max(1) as i64, 1);
        let a = &self.a * &other.a + &srat * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, s)
    }

    /// Exact inverse; s = 2, 3 are irrational so a² − s·b² = 0 only at 0.
    pub fn inv(&self) -> Result<Self, String> {
        if self.is_zero() {
            return Err(String::from("division by zero in quadratic field"));
        }
        let s = self.radicand;
        let srat = rat(s.max(1) as i64, 1);
        let norm = &self.a * &self.a - &srat * &self.b * &self.b;
        assert!(!norm.is_zero(), "field norm vanished for nonzero element");
        Ok(Self::new(&self.a / &norm, -&self.b / &norm, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self, String> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        let sq = match self.radicand {
            0 => 0.0,
            2 => core::f64::consts::SQRT_2,
            3 => 1.732_050_807_568_877_2,
            _ => unreachable!(),
        };
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * sq
    }

    pub fn is_positive_val(&self) -> bool {
        if self.b.is_zero() {
            return self.a.is_positive();
        }
        // sign(a + b√s): compare a² and s·b² taking signs into account.
        let srat = rat(self.radicand as i64, 1);
        let a2 = &self.a * &self.a;
        let sb2 = &srat * &self.b * &self.b;
        if self.a.is_positive() || self.a.is_zero() {
            if self.b.is_positive() {
                true
            } else {
                a2 > sb2
            }
        } else if self.b.is_positive() {
            sb2 > a2
        } else {
            false
        }
    }
}

/// A recognised angle ω = p·π/q with q ∈ {1, 2, 3, 4, 6}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalAngle {
    pub p: i64,
    pub q: u32,
}

/// Match ω against p·π/q within 1e−12 (smallest q wins).
pub fn recognize_angle(omega: f64) -> Option<RationalAngle> {
    for q in [1u32, 2, 3, 4, 6] {
        let p = libm::round(omega * q as f64 / core::f64::consts::PI) as i64;
        if p == 0 {
            continue;
        }
        let approx = p as f64 * core::f64::consts::PI / q as f64;
        if libm::fabs(omega - approx) <= 1e-12 {
            return Some(RationalAngle { p, q });
        }
    }
    None
}

/// Exact (cos θ, sin θ) for θ = p·π/q.
pub fn exact_cos_sin(angle: RationalAngle) -> (QuadExt, QuadExt) {
    let RationalAngle { p, q } = angle;
    let period = 2 * q as i64;
    let k = p.rem_euclid(period) as usize;
    let half = |n: i64| QuadExt::from_rational(rat(n, 2));
    let root_half = |s: u32, sign: i64| QuadExt::new(rat(0, 1), rat(sign, 2), s);
    match q {
        1 => {
            // cos(kπ) = ±1
            let c = if k % 2 == 0 { 1 } else { -1 };
            (QuadExt::from_int(c), QuadExt::zero())
        }
        2 => {
            let (c, s) = [(1, 0), (0, 1), (-1, 0), (0, -1)][k];
            (QuadExt::from_int(c), QuadExt::from_int(s))
        }
        3 => {
            let cos_n = [2i64, 1, -1, -2, -1, 1][k];
            let sin_sign = [0i64, 1, 1, 0, -1, -1][k];
            (half(cos_n), root_half(3, sin_sign))
        }
        4 => {
            let cos_sign = [2i64, 1, 0, -1, -2, -1, 0, 1][k];
            let sin_sign = [0i64, 1, 2, 1, 0, -1, -2, -1][k];
            let conv = |v: i64| match v {
                2 => QuadExt::from_int(1),
                -2 => QuadExt::from_int(-1),
                0 => QuadExt::zero(),
                v => root_half(2, v),
            };
            (conv(cos_sign), conv(sin_sign))
        }
        6 => {
            // entries: 2·value when rational/2, ±3 marking ±√3/2
            let cos_tab = [2i64, 3, 1, 0, -1, -3, -2, -3, -1, 0, 1, 3][k];
            let sin_tab = [0i64, 1, 3, 2, 3, 1, 0, -1, -3, -2, -3, -1][k];
            let conv = |v: i64| match v {
                3 => root_half(3, 1),
                -3 => root_half(3, -1),
                v => half(v),
            };
            (conv(cos_tab), conv(sin_tab))
        }
        _ => unreachable!(),
    }
}

/// cos(jθ), sin(jθ) for j = 0..=jmax via the angle-addition formulas,
/// staying inside the field of θ.
pub fn multiple_angles(angle: RationalAngle, jmax: u32) -> Vec<(QuadExt, QuadExt)> {
    let (c1, s1) = exact_cos_sin(angle);
    let mut out = Vec::with_capacity(jmax as usize + 1);
    out.push((QuadExt::one(), QuadExt::zero()));
    for j in 1..=jmax {
        let (cp, sp) = &out[j as usize - 1];
        let c = cp.mul(&c1).sub(&sp.mul(&s1));
        let s = sp.mul(&c1).add(&cp.mul(&s1));
        out.push((c, s));
    }
    out
}
