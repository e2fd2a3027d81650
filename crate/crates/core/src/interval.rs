//! Rational intervals with outward rounding, decimal parsing/printing and
//! certified enclosures of sqrt, log, exp and rational powers.
//!
//! All endpoints are exact `BigRational`s, so ordinary arithmetic introduces
//! no rounding at all; widening only happens where a genuinely irrational
//! quantity (a square root, a power x^s) is enclosed by a truncated series
//! with an explicit remainder bound.

use num::bigint::BigInt;

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("malformed decimal literal: {0}")]
    BadDecimal(String),
    #[error("square root of negative number")]
    NegativeSqrt,
}

/// Parse an exact decimal literal like `3.70969985975033` into a rational.
pub fn parse_decimal(s: &str) -> Result<Rat, NumError> {
    let t = s.trim();
    let (sign, t) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let (int_part, frac_part) = match t.split_once('.') {
        Some((a, b)) => (a, b),
        None => (t, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(NumError::BadDecimal(s.into()));
    }
    let digits: String = format!("{}{}", int_part, frac_part);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(NumError::BadDecimal(s.into()));
    }
    let num: BigInt = digits.parse().map_err(|_| NumError::BadDecimal(s.into()))?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(num * sign, den))
}

/// Largest multiple of 10^-digits that is <= x, rendered as a decimal string.
pub fn dec_floor(x: &Rat, digits: u32) -> String {
    dec_dir(x, digits, false)
}

/// Smallest multiple of 10^-digits that is >= x, rendered as a decimal string.
pub fn dec_ceil(x: &Rat, digits: u32) -> String {
    dec_dir(x, digits, true)
}

fn dec_dir(x: &Rat, digits: u32, ceil: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * Rat::from_integer(scale.clone());
    let q = if ceil { scaled.ceil() } else { scaled.floor() };
    let q = q.to_integer();
    let neg = q.is_negative();
    let mut mag = q.abs().to_string();
    let d = digits as usize;
    if mag.len() <= d {
        mag = format!("{}{}", "0".repeat(d + 1 - mag.len()), mag);
    }
    let split = mag.len() - d;
    let (ip, fp) = mag.split_at(split);
    let body = if d == 0 {
        ip.to_string()
    } else {
        format!("{}.{}", ip, fp)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

/// True when the decimal expansion of `x` starts with the printed prefix,
/// i.e. prefix <= x < prefix + 10^-(fractional digits of prefix).
pub fn has_decimal_prefix(x: &Rat, prefix: &str) -> bool {
    let p = match parse_decimal(prefix) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let frac_digits = prefix.split_once('.').map_or(0, |(_, f)| f.len());
    let ulp = Rat::new(BigInt::one(), BigInt::from(10u32).pow(frac_digits as u32));
    *x >= p && *x < p + ulp
}

pub fn pow2_inv(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << k)
}

/// Closed rational interval [lo, hi]; the invariant lo <= hi is enforced on
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct RInterval {
    lo: Rat,
    hi: Rat,
}

impl RInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &RInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &RInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certified strict comparison: every point of self is below `x`.
    pub fn lt(&self, x: &Rat) -> bool {
        self.hi < *x
    }

    /// Certified strict comparison: every point of self is above `x`.
    pub fn gt(&self, x: &Rat) -> bool {
        self.lo > *x
    }

    pub fn add(&self, other: &RInterval) -> RInterval {
        RInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn add_rat(&self, x: &Rat) -> RInterval {
        RInterval::new(&self.lo + x, &self.hi + x)
    }

    pub fn neg(&self) -> RInterval {
        RInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn sub(&self, other: &RInterval) -> RInterval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RInterval) -> RInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RInterval::new(lo, hi)
    }

    pub fn scale(&self, x: &Rat) -> RInterval {
        if x.is_negative() {
            RInterval::new(&self.hi * x, &self.lo * x)
        } else {
            RInterval::new(&self.lo * x, &self.hi * x)
        }
    }

    /// Reciprocal; requires the interval not to contain zero.
    pub fn recip(&self) -> RInterval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of interval containing zero"
        );
        RInterval::new(self.hi.recip(), self.lo.recip())
    }

    /// Widen both endpoints outward by `eps`.
    pub fn widen(&self, eps: &Rat) -> RInterval {
        RInterval::new(&self.lo - eps, &self.hi + eps)
    }

    /// Round endpoints outward onto the 10^-digits grid. Keeps rational
    /// complexity in check inside long enclosure chains.
    pub fn outward_round(&self, digits: u32) -> RInterval {
        let scale = Rat::from_integer(BigInt::from(10u32).pow(digits));
        let lo = (&self.lo * &scale).floor() / scale.clone();
        let hi = (&self.hi * &scale).ceil() / scale;
        RInterval::new(lo, hi)
    }

    /// Pointwise maximum (encloses max over both sets of values).
    pub fn max(&self, other: &RInterval) -> RInterval {
        RInterval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Render as a pair of decimal strings enclosing the interval.
    pub fn to_decimal_strings(&self, digits: u32) -> (String, String) {
        (dec_floor(&self.lo, digits), dec_ceil(&self.hi, digits))
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_strings(17);
        write!(f, "[{}, {}]", lo, hi)
    }
}

/// Enclosure of sqrt(x) with width <= tol.
pub fn sqrt_rat(x: &Rat, tol: &Rat) -> Result<RInterval, NumError> {
    if x.is_negative() {
        return Err(NumError::NegativeSqrt);
    }
    if x.is_zero() {
        return Ok(RInterval::point(Rat::zero()));
    }
    // Scale so the integer square root carries enough digits.
    let mut n: u32 = 1;
    loop {
        let scale = BigInt::from(10u32).pow(n);
        let grid = Rat::new(BigInt::one(), scale.clone());
        if &grid * Rat::from_integer(BigInt::from(2)) <= *tol {
            let scaled = x * Rat::from_integer(scale.clone() * scale.clone());
            let floor = scaled.floor().to_integer();
            let s = floor.sqrt();
            let lo = Rat::new(s.clone(), scale.clone());
            let mut hi = Rat::new(s + BigInt::one(), scale);
            while &hi * &hi < *x {
                hi += &grid;
            }
            return Ok(RInterval::new(lo, hi));
        }
        n += 1;
    }
}

fn ln2_enclosure(eps: &Rat) -> RInterval {
    // ln 2 = 2 atanh(1/3)
    atanh_series(&Rat::new(BigInt::one(), BigInt::from(3)), eps)
}

/// 2*atanh(z) = ln((1+z)/(1-z)) for |z| < 1/2, via the odd series with a
/// geometric remainder bound.
fn atanh_series(z: &Rat, eps: &Rat) -> RInterval {
    let z2 = z * z;
    let mut term = z.clone(); // z^(2k+1)
    let mut sum = Rat::zero();
    let mut k: u32 = 0;
    loop {
        sum += &term / Rat::from_integer(BigInt::from(2 * k + 1));
        term *= &z2;
        k += 1;
        // Remainder of sum_{j>=k} z^(2j+1)/(2j+1) is bounded by
        // |z|^(2k+1) / ((2k+1)(1-z^2)).
        let rem = term.abs() / (Rat::from_integer(BigInt::from(2 * k + 1)) * (Rat::one() - &z2));
        if &rem * Rat::from_integer(BigInt::from(4)) < *eps {
            let two = Rat::from_integer(BigInt::from(2));
            let lo = (&sum - &rem) * &two;
            let hi = (&sum + &rem) * &two;
            return RInterval::new(lo, hi);
        }
    }
}

/// Enclosure of ln(x) for rational x > 0, width <= eps.
pub fn ln_rat(x: &Rat, eps: &Rat) -> RInterval {
    assert!(x.is_positive(), "log of non-positive number");
    let two = Rat::from_integer(BigInt::from(2));
    let four_thirds = Rat::new(BigInt::from(4), BigInt::from(3));
    let two_thirds = Rat::new(BigInt::from(2), BigInt::from(3));
    let mut m = x.clone();
    let mut e: i64 = 0;
    while m > four_thirds {
        m /= &two;
        e += 1;
    }
    while m < two_thirds {
        m *= &two;
        e -= 1;
    }
    let sub_eps = eps / Rat::from_integer(BigInt::from(4 * (e.unsigned_abs().max(1))));
    // ln m = 2 atanh((m-1)/(m+1)); |z| <= 1/5 on [2/3, 4/3]... (1/3-1)/... fine
    let z = (&m - Rat::one()) / (&m + Rat::one());
    let ln_m = atanh_series(&z, &sub_eps);
    if e == 0 {
        return ln_m;
    }
    let ln2 = ln2_enclosure(&sub_eps);
    let shift = ln2.scale(&Rat::from_integer(BigInt::from(e)));
    ln_m.add(&shift)
}

/// Enclosure of exp(t) for an interval argument, width controlled by eps
/// relative to the magnitude of the result.
pub fn exp_interval(t: &RInterval, eps: &Rat) -> RInterval {
    let lo = exp_rat_point(t.lo(), eps);
    let hi = exp_rat_point(t.hi(), eps);
    RInterval::new(lo.lo().clone(), hi.hi().clone())
}

fn exp_rat_point(t: &Rat, eps: &Rat) -> RInterval {
    // Argument reduction: exp(t) = exp(t/2^j)^(2^j) with |t/2^j| <= 1/2.
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut j: u32 = 0;
    let mut u = t.clone();
    while u.abs() > half {
        u /= Rat::from_integer(BigInt::from(2));
        j += 1;
    }
    // Tighter series tolerance: squaring j times roughly doubles relative
    // error each time, and |exp(t)| can be large when t > 0.
    let mut sub_eps = eps.clone();
    for _ in 0..(j + 2) {
        sub_eps /= Rat::from_integer(BigInt::from(4));
    }
    let mut core = exp_series_half(&u, &sub_eps);
    for _ in 0..j {
        core = core.mul(&core);
        // Keep rationals from snowballing across repeated squarings.
        core = core.outward_round(60);
    }
    core
}

/// exp(u) for |u| <= 1/2 by Taylor series with remainder bound 2*|u|^(K+1)/(K+1)!.
fn exp_series_half(u: &Rat, eps: &Rat) -> RInterval {
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut k: u32 = 1;
    loop {
        term = &term * u / Rat::from_integer(BigInt::from(k));
        sum += &term;
        let rem = term.abs() * Rat::from_integer(BigInt::from(2));
        if &rem * Rat::from_integer(BigInt::from(2)) < *eps && k >= 2 {
            return RInterval::new(&sum - &rem, &sum + &rem);
        }
        k += 1;
    }
}

/// Certified enclosure of x^s for rational x in (0, 1] and rational s in [0, 1].
pub fn pow_rat(x: &Rat, s: &Rat, eps: &Rat) -> RInterval {
    assert!(x.is_positive() && *x <= Rat::one());
    if s.is_zero() {
        return RInterval::point(Rat::one());
    }
    if x.is_one() {
        return RInterval::point(Rat::one());
    }
    let ln_eps = eps / Rat::from_integer(BigInt::from(16));
    let lnx = ln_rat(x, &ln_eps);
    let t = lnx.scale(s);
    exp_interval(&t, eps)
}

/// x^s where x is itself an enclosure (x subset of (0,1]); monotone in x.
pub fn pow_interval(x: &RInterval, s: &Rat, eps: &Rat) -> RInterval {
    let lo = pow_rat(x.lo(), s, eps);
    let hi = pow_rat(x.hi(), s, eps);
    RInterval::new(lo.lo().clone(), hi.hi().clone())
}

pub fn rat_cmp(a: &Rat, b: &Rat) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_roundtrip() {
        let x = parse_decimal("3.70969985975033").unwrap();
        assert_eq!(dec_floor(&x, 14), "3.70969985975033");
        assert_eq!(dec_ceil(&x, 14), "3.70969985975033");
        assert_eq!(dec_ceil(&x, 10), "3.7096998598");
        assert_eq!(dec_floor(&x, 10), "3.7096998597");
    }

    #[test]
    fn decimal_prefix() {
        let x = parse_decimal("3.822020185432").unwrap();
        assert!(has_decimal_prefix(&x, "3.822020185"));
        assert!(!has_decimal_prefix(&x, "3.822020186"));
    }

    #[test]
    fn sqrt_encloses() {
        let tol = rat(1, 1_000_000_000_000);
        let s = sqrt_rat(&rat(2, 1), &tol).unwrap();
        assert!(s.width() <= tol);
        // 1.41421356237309 < sqrt(2) < 1.41421356237310
        assert!(s.gt(&parse_decimal("1.41421356237").unwrap()));
        assert!(s.lt(&parse_decimal("1.41421356238").unwrap()));
    }

    #[test]
    fn ln_and_exp() {
        let eps = rat(1, 1_000_000_000_000);
        let l = ln_rat(&rat(2, 1), &eps);
        assert!(l.gt(&parse_decimal("0.6931471805").unwrap()));
        assert!(l.lt(&parse_decimal("0.6931471806").unwrap()));
        let e = exp_interval(&RInterval::point(Rat::one()), &eps);
        assert!(e.gt(&parse_decimal("2.7182818284").unwrap()));
        assert!(e.lt(&parse_decimal("2.7182818285").unwrap()));
    }

    #[test]
    fn pow_matches_known_value() {
        // (1/35)^0.174813 + (1/81.98)^0.174813 < 1 is the hinge of one of the
        // covering systems; sanity check the power enclosure against f64.
        let eps = rat(1, 1_000_000_000_000);
        let s = parse_decimal("0.174813").unwrap();
        let p = pow_rat(&rat(1, 35), &s, &eps);
        let f = (1.0f64 / 35.0).powf(0.174813);
        assert!((p.to_f64() - f).abs() < 1e-9);
    }
}
