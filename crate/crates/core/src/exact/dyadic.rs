//! Arbitrary-precision dyadic numbers m·2^e and outward-rounded interval
//! arithmetic on them, including certified sin/cos enclosures.
//!
//! All interval operations compute exactly and then round the lower endpoint
//! toward −∞ and the upper toward +∞ at a caller-chosen precision, so every
//! enclosure is rigorous at any precision (tiny precisions merely produce
//! uselessly wide — but still correct — intervals).

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::fmath;

/// Default working precision (bits) for certified interval computations.
pub const DEFAULT_PREC: u32 = 240;

/// m · 2^e with arbitrary-precision integer mantissa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    /// Every finite f64 is exactly a dyadic number.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic conversion needs a finite value");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac as i64, -1074) // subnormal
        } else {
            ((frac | (1u64 << 52)) as i64, biased - 1075)
        };
        Dyadic { mant: BigInt::from(sign * mant), exp }
    }

    /// Nearest-ish f64 (for diagnostics; not used in certified paths).
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 53;
        let (reduced, exp) = if shift > 0 {
            (&self.mant >> (shift as u64), self.exp + shift)
        } else {
            (self.mant.clone(), self.exp)
        };
        let (sign, digits) = reduced.to_u64_digits();
        let mag = digits.first().copied().unwrap_or(0) as f64;
        let signed = if sign == Sign::Minus { -mag } else { mag };
        fmath::scalbn(signed, exp as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let exp = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - exp) as u64);
        let b = &other.mant << ((other.exp - exp) as u64);
        (a, b, exp)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Dyadic { mant: a + b, exp }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, exp) = self.aligned(other);
        Dyadic { mant: a - b, exp }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn cmp_val(&self, other: &Self) -> core::cmp::Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// Round to at most `prec` mantissa bits; `up` rounds toward +∞,
    /// otherwise toward −∞.
    pub fn round_dir(&self, prec: u32, up: bool) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let two_k = BigInt::from(1) << k;
        let q = &self.mant / &two_k; // truncates toward zero
        let r = &self.mant % &two_k;
        let mant = if r.is_zero() {
            q
        } else if up && !self.mant.is_negative() {
            q + 1
        } else if !up && self.mant.is_negative() {
            q - 1
        } else {
            q
        };
        Dyadic { mant, exp: self.exp + k as i64 }
    }

    /// Directed-rounding division to `prec` significant bits.
    pub fn div_dir(&self, other: &Self, prec: u32, up: bool) -> Self {
        assert!(!other.is_zero(), "division by zero dyadic");
        let shift = prec as u64 + other.mant.bits() + 2;
        let num = &self.mant << shift;
        let q = &num / &other.mant; // toward zero
        let r = &num % &other.mant;
        let negative = (num.sign() == Sign::Minus) != (other.mant.sign() == Sign::Minus);
        let q = if r.is_zero() {
            q
        } else if up && !negative {
            q + 1
        } else if !up && negative {
            q - 1
        } else {
            q
        };
        Dyadic { mant: q, exp: self.exp - other.exp - shift as i64 }.round_dir(prec, up)
    }
}

/// Closed interval [lo, hi] of dyadic numbers; invariant lo ≤ hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyadicInterval {
    pub fn point(x: Dyadic) -> Self {
        DyadicInterval { lo: x.clone(), hi: x }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::point(Dyadic::from_f64(x))
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo.cmp_val(&hi) != core::cmp::Ordering::Greater);
        DyadicInterval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn certainly_nonzero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    /// min |x| over the interval; zero if the interval contains zero.
    pub fn mignitude(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            self.hi.neg()
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn neg(&self) -> Self {
        DyadicInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        DyadicInterval {
            lo: self.lo.add(&other.lo).round_dir(prec, false),
            hi: self.hi.add(&other.hi).round_dir(prec, true),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        DyadicInterval {
            lo: self.lo.sub(&other.hi).round_dir(prec, false),
            hi: self.hi.sub(&other.lo).round_dir(prec, true),
        }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p.cmp_val(&lo) == core::cmp::Ordering::Less {
                lo = p.clone();
            }
            if p.cmp_val(&hi) == core::cmp::Ordering::Greater {
                hi = p.clone();
            }
        }
        DyadicInterval { lo: lo.round_dir(prec, false), hi: hi.round_dir(prec, true) }
    }

    /// Division; requires the divisor to exclude zero.
    pub fn div(&self, other: &Self, prec: u32) -> Result<Self, String> {
        if !other.certainly_nonzero() {
            return Err(String::from("interval division by interval containing zero"));
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for num in [&self.lo, &self.hi] {
            for den in [&other.lo, &other.hi] {
                let down = num.div_dir(den, prec, false);
                let upv = num.div_dir(den, prec, true);
                lo = Some(match lo {
                    None => down.clone(),
                    Some(ref cur) if down.cmp_val(cur) == core::cmp::Ordering::Less => down.clone(),
                    Some(cur) => cur,
                });
                hi = Some(match hi {
                    None => upv.clone(),
                    Some(ref cur) if upv.cmp_val(cur) == core::cmp::Ordering::Greater => upv.clone(),
                    Some(cur) => cur,
                });
            }
        }
        Ok(DyadicInterval { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    pub fn scale_int(&self, n: i64, prec: u32) -> Self {
        self.mul(&DyadicInterval::from_int(n), prec)
    }

    pub fn to_f64_mid(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }
}

/// floor(π·2^268); with +1 it brackets π to ~2^−268.
const PI_MANT_LO: &str =
    "1490008378948674864251842325617581517428299273537095393111130730979077711733494866";
const PI_EXP: i64 = -268;

/// Rigorous enclosure of π.
pub fn pi_interval() -> DyadicInterval {
    let lo: BigInt = PI_MANT_LO.parse().unwrap();
    let hi = &lo + 1;
    DyadicInterval { lo: Dyadic::new(lo, PI_EXP), hi: Dyadic::new(hi, PI_EXP) }
}

/// Certified (sin x, cos x) enclosures for a dyadic interval argument.
///
/// The argument is reduced modulo 2π with the frozen π enclosure, then both
/// series are summed in interval arithmetic with an alternating-series tail
/// bound. Arguments up to a few hundred in magnitude are supported.
pub fn sin_cos_enclosure(x: &DyadicInterval, prec: u32) -> (DyadicInterval, DyadicInterval) {
    let two_pi = pi_interval().scale_int(2, prec + 40);
    // k = nearest integer to mid(x)/2π, computed in f64: correctness does not
    // depend on the choice of k, only enclosure width does.
    let k = fmath::round(x.to_f64_mid() / (2.0 * core::f64::consts::PI)) as i64;
    let reduced = x.sub(&two_pi.scale_int(k, prec + 40), prec + 40);
    sin_cos_series(&reduced, prec)
}

fn sin_cos_series(x: &DyadicInterval, prec: u32) -> (DyadicInterval, DyadicInterval) {
    let wp = prec + 30;
    let x2 = x.mul(x, wp);
    // |x| ≤ 4 after reduction; we still bound the tail rigorously using the
    // magnitude of the last included term once terms are decreasing.
    let mut sin_terms: Vec<DyadicInterval> = Vec::new();
    let mut cos_terms: Vec<DyadicInterval> = Vec::new();
    let mut term_s = x.clone(); // x^{2k+1}/(2k+1)!
    let mut term_c = DyadicInterval::from_int(1); // x^{2k}/(2k)!
    let limit = Dyadic::new(BigInt::from(1), -(prec as i64) - 10);
    let mut tail = Dyadic::zero();
    for k in 0..200u32 {
        sin_terms.push(if k % 2 == 0 { term_s.clone() } else { term_s.neg() });
        cos_terms.push(if k % 2 == 0 { term_c.clone() } else { term_c.neg() });
        let n = 2 * (k as i64) + 1;
        // cos: x^{2k}/(2k)! → x^{2k+2}/(2k+2)!, sin: x^{2k+1}/(2k+1)! → x^{2k+3}/(2k+3)!
        term_c = term_c
            .mul(&x2, wp)
            .div(&DyadicInterval::from_int(n * (n + 1)), wp)
            .unwrap();
        term_s = term_s
            .mul(&x2, wp)
            .div(&DyadicInterval::from_int((n + 1) * (n + 2)), wp)
            .unwrap();
        let mag = term_s
            .hi
            .abs()
            .add(&term_s.lo.abs())
            .add(&term_c.hi.abs())
            .add(&term_c.lo.abs());
        // After reduction |x| < 4 < 2k+2 for k ≥ 1, so terms are decreasing
        // and the alternating tail is bounded by the next term.
        if k >= 2 && mag.cmp_val(&limit) == core::cmp::Ordering::Less {
            tail = mag;
            break;
        }
        if k == 199 {
            tail = mag; // conservative; only reachable for huge arguments
        }
    }
    let pad = DyadicInterval::new(tail.neg(), tail);
    let mut s = pad.clone();
    for t in sin_terms.iter().rev() {
        s = s.add(t, wp);
    }
    let mut c = pad;
    for t in cos_terms.iter().rev() {
        c = c.add(t, wp);
    }
    (s.clamp_unit(prec), c.clamp_unit(prec))
}

impl DyadicInterval {
    /// Intersect with [−1, 1] (valid for sine/cosine values) and round.
    fn clamp_unit(&self, prec: u32) -> Self {
        let one = Dyadic::from_int(1);
        let neg_one = Dyadic::from_int(-1);
        let lo = if self.lo.cmp_val(&neg_one) == core::cmp::Ordering::Less {
            neg_one.clone()
        } else {
            self.lo.round_dir(prec, false)
        };
        let hi = if self.hi.cmp_val(&one) == core::cmp::Ordering::Greater {
            one
        } else {
            self.hi.round_dir(prec, true)
        };
        DyadicInterval { lo, hi }
    }
}
