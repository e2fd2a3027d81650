//! Exact quadratic surds (p + q√d)/r, the values of purely periodic continued
//! fractions.
//!
//! A purely periodic tail satisfies a Möbius fixed-point equation with integer
//! coefficients; its value is kept exact here and only widened into an
//! `RInterval` on demand, so threshold comparisons at the 10⁻¹¹ scale never
//! lose to rounding.

use crate::digits::Word;
use crate::interval::{sqrt_rat, RInterval, Rat};
use num::bigint::BigInt;
use num::integer::gcd;
use num::{One, Signed, Zero};
use std::cmp::Ordering;

/// (p + q·√d)/r with r > 0 and d squarefree up to small prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl Surd {
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Surd {
        assert!(!r.is_zero(), "zero denominator");
        assert!(!d.is_negative(), "negative radicand");
        let mut s = Surd { p, q, d, r };
        s.normalize();
        s
    }

    pub fn from_rat(x: &Rat) -> Surd {
        Surd::new(x.numer().clone(), BigInt::zero(), BigInt::zero(), x.denom().clone())
    }

    pub fn from_int(n: i64) -> Surd {
        Surd::from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    /// √n as a surd.
    pub fn sqrt_int(n: u64) -> Surd {
        Surd::new(BigInt::zero(), BigInt::one(), BigInt::from(n), BigInt::one())
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(Rat::new(self.p.clone(), self.r.clone()))
        } else {
            None
        }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    fn normalize(&mut self) {
        if self.r.is_negative() {
            self.p = -self.p.clone();
            self.q = -self.q.clone();
            self.r = -self.r.clone();
        }
        if self.q.is_zero() || self.d.is_zero() {
            self.q = BigInt::zero();
            self.d = BigInt::zero();
        } else {
            // Pull square factors out of d by trial division with small
            // primes; a full squarefree factorization is unnecessary for the
            // discriminants that arise here.
            for &f in small_primes() {
                let fb = BigInt::from(f);
                let f2 = &fb * &fb;
                if &f2 > &self.d {
                    break;
                }
                while (&self.d % &f2).is_zero() {
                    self.d /= &f2;
                    self.q *= &fb;
                }
            }
            let s = self.d.sqrt();
            if &s * &s == self.d {
                self.p += &self.q * s;
                self.q = BigInt::zero();
                self.d = BigInt::zero();
            }
        }
        let mut g = gcd(self.p.clone(), gcd(self.q.clone(), self.r.clone()));
        if g.is_zero() {
            g = BigInt::one();
        }
        self.p /= &g;
        self.q /= &g;
        self.r /= &g;
    }

    pub fn add_rat(&self, x: &Rat) -> Surd {
        let r = &self.r * x.denom();
        let p = &self.p * x.denom() + x.numer() * &self.r;
        Surd::new(p, &self.q * x.denom(), self.d.clone(), r)
    }

    pub fn neg(&self) -> Surd {
        Surd::new(-self.p.clone(), -self.q.clone(), self.d.clone(), self.r.clone())
    }

    /// Sum of two surds over the same radicand (or with a rational operand).
    pub fn add(&self, other: &Surd) -> Option<Surd> {
        if other.is_rational() {
            return Some(self.add_rat(&other.as_rat().unwrap()));
        }
        if self.is_rational() {
            return Some(other.add_rat(&self.as_rat().unwrap()));
        }
        if self.d != other.d {
            return None;
        }
        Some(Surd::new(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            self.d.clone(),
            &self.r * &other.r,
        ))
    }

    /// 1/x, exact: r(p − q√d)/(p² − q²d).
    pub fn recip(&self) -> Surd {
        let denom = &self.p * &self.p - &self.q * &self.q * &self.d;
        assert!(!denom.is_zero(), "reciprocal of zero");
        Surd::new(
            &self.r * &self.p,
            -(&self.r * &self.q),
            self.d.clone(),
            denom,
        )
    }

    pub fn mul_rat(&self, x: &Rat) -> Surd {
        Surd::new(
            &self.p * x.numer(),
            &self.q * x.numer(),
            self.d.clone(),
            &self.r * x.denom(),
        )
    }

    /// Exact comparison with a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        // (p + q√d)/r vs x  <=>  q√d vs x·r − p  (r > 0)
        let t = x * Rat::from_integer(self.r.clone()) - Rat::from_integer(self.p.clone());
        if self.q.is_zero() {
            return Rat::zero().cmp(&t);
        }
        let q = Rat::from_integer(self.q.clone());
        let lhs_sign = self.q.sign();
        let rhs_sign = t.numer().sign();
        use num::bigint::Sign::*;
        match (lhs_sign, rhs_sign) {
            (Plus, Minus) | (Plus, NoSign) => Ordering::Greater,
            (Minus, Plus) | (Minus, NoSign) => Ordering::Less,
            (Plus, Plus) => {
                // q√d vs t, both positive: compare q²d vs t².
                let l = &q * &q * Rat::from_integer(self.d.clone());
                l.cmp(&(&t * &t))
            }
            (Minus, Minus) => {
                let l = &q * &q * Rat::from_integer(self.d.clone());
                (&t * &t).cmp(&l)
            }
            (NoSign, _) => unreachable!(),
        }
    }

    /// Exact comparison when the radicands agree; None otherwise.
    pub fn try_cmp(&self, other: &Surd) -> Option<Ordering> {
        if other.is_rational() {
            return Some(self.cmp_rat(&other.as_rat().unwrap()));
        }
        if self.is_rational() {
            return Some(other.cmp_rat(&self.as_rat().unwrap()).reverse());
        }
        if self.d != other.d {
            return None;
        }
        let diff = self.add(&other.neg()).unwrap();
        Some(diff.cmp_rat(&Rat::zero()))
    }

    /// Enclosure of width <= tol.
    pub fn to_interval(&self, tol: &Rat) -> RInterval {
        if self.q.is_zero() {
            return RInterval::point(Rat::new(self.p.clone(), self.r.clone()));
        }
        let scale = Rat::new(self.q.clone(), self.r.clone()).abs();
        let sub_tol = tol / (&scale * Rat::from_integer(BigInt::from(2)));
        let root = sqrt_rat(&Rat::from_integer(self.d.clone()), &sub_tol).expect("d >= 0");
        let base = Rat::new(self.p.clone(), self.r.clone());
        root.scale(&Rat::new(self.q.clone(), self.r.clone())).add_rat(&base)
    }

    /// Check A·x² + B·x + C = 0 exactly in integer arithmetic.
    pub fn satisfies_quadratic(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
        // x = (p + q√d)/r. Substitute and separate rational and √d parts:
        // A(p² + q²d) + B p r + C r² = 0  and  q(2Ap + Br) = 0.
        let rational = a * (&self.p * &self.p + &self.q * &self.q * &self.d)
            + b * &self.p * &self.r
            + c * &self.r * &self.r;
        let irrational = &self.q * (a * BigInt::from(2) * &self.p + b * &self.r);
        rational.is_zero() && irrational.is_zero()
    }
}

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = 2048usize;
        let mut sieve = vec![true; n];
        let mut out = Vec::new();
        for p in 2..n {
            if sieve[p] {
                out.push(p as u32);
                let mut m = p * p;
                while m < n {
                    sieve[m] = false;
                    m += p;
                }
            }
        }
        out
    })
}

/// The value x = [0; w, w, w, …] of a purely periodic continued fraction,
/// obtained as the fixed point in (0, 1) of the convergent Möbius map.
pub fn periodic_cf_value(w: &Word) -> Surd {
    assert!(!w.is_empty());
    // Convergents of [0; w]: x = (h_{n-1} x + h_n···)… track the Möbius map
    // M(x) = [0; w + x] = (a x + b)/(c x + d) built digit by digit from the
    // innermost position outward.
    let (mut a, mut b, mut c, mut dd) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &digit in w.iter().rev() {
        // Prepend 1/(digit + ·): M ← (c x + d)/((digit·c + a) x + digit·d + b)
        let na = c.clone();
        let nb = dd.clone();
        let nc = BigInt::from(digit) * &c + &a;
        let nd = BigInt::from(digit) * &dd + &b;
        a = na;
        b = nb;
        c = nc;
        dd = nd;
    }
    // Fixed point of (a x + b)/(c x + d): c x² + (d − a) x − b = 0, positive root.
    let disc = (&a - &dd) * (&a - &dd) + BigInt::from(4) * &b * &c;
    let x = Surd::new(&a - &dd, BigInt::one(), disc, BigInt::from(2) * &c);
    debug_assert!(x.cmp_rat(&Rat::zero()) == Ordering::Greater);
    debug_assert!(x.cmp_rat(&Rat::one()) == Ordering::Less);
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::parse_decimal;

    #[test]
    fn sqrt2_minus_one() {
        // [0; 2, 2, 2, …] = √2 − 1.
        let x = periodic_cf_value(&vec![2]);
        // Satisfies x² + 2x − 1 = 0.
        assert!(x.satisfies_quadratic(&BigInt::one(), &BigInt::from(2), &BigInt::from(-1)));
        let expected = Surd::sqrt_int(2).add_rat(&Rat::from_integer(BigInt::from(-1)));
        assert_eq!(x.try_cmp(&expected), Some(Ordering::Equal));
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        // [2; 2,2,2,…] + [0; 1,2,1,2,…] = √2 + √3.
        let right = periodic_cf_value(&vec![2]).add_rat(&Rat::from_integer(BigInt::from(2)));
        let left = periodic_cf_value(&vec![1, 2]);
        // [2; 2,2,…] = 1 + √2.
        let sqrt2_plus_1 = Surd::sqrt_int(2).add_rat(&Rat::from_integer(BigInt::one()));
        assert_eq!(right.try_cmp(&sqrt2_plus_1), Some(Ordering::Equal));
        assert_eq!(left.radicand(), &BigInt::from(3));
        let m1 = Rat::from_integer(BigInt::from(-1));
        let shifted = Surd::sqrt_int(3).add_rat(&m1);
        assert_eq!(left.try_cmp(&shifted), Some(Ordering::Equal));
    }

    #[test]
    fn golden_tail() {
        // [0; 1, 1, 1, …] = (√5 − 1)/2.
        let x = periodic_cf_value(&vec![1]);
        assert!(x.satisfies_quadratic(&BigInt::one(), &BigInt::one(), &BigInt::from(-1)));
        let tol = parse_decimal("0.0000000001").unwrap();
        let iv = x.to_interval(&tol);
        assert!(iv.gt(&parse_decimal("0.6180339886").unwrap()));
        assert!(iv.lt(&parse_decimal("0.6180339888").unwrap()));
    }

    #[test]
    fn interval_width_contract() {
        let x = periodic_cf_value(&vec![2, 1, 2, 2, 2, 3, 3]);
        let tol = parse_decimal("0.000000000000001").unwrap();
        let iv = x.to_interval(&tol);
        assert!(iv.width() <= tol);
        assert!(x.cmp_rat(iv.lo()) != Ordering::Less);
        assert!(x.cmp_rat(iv.hi()) != Ordering::Greater);
    }

    #[test]
    fn rational_comparisons() {
        let x = periodic_cf_value(&vec![2]); // √2 − 1 ≈ 0.41421
        assert_eq!(x.cmp_rat(&Rat::new(BigInt::from(2), BigInt::from(5))), Ordering::Greater);
        assert_eq!(x.cmp_rat(&Rat::new(BigInt::from(1), BigInt::from(2))), Ordering::Less);
    }
}
