//! Fixed-point ball arithmetic on big integers.
//!
//! A [`Ball`] at precision `prec` denotes the closed interval
//! `[(mid - rad) / 2^prec, (mid + rad) / 2^prec]`. Every operation widens the
//! radius enough to keep the true value inside; nothing here is stateful, so
//! evaluation is re-entrant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Ball {
    pub mid: BigInt,
    pub rad: BigInt,
}

impl Ball {
    pub fn exact(mid: BigInt) -> Self {
        Ball { mid, rad: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Ball::exact(BigInt::zero())
    }

    pub fn one(prec: u32) -> Self {
        Ball::exact(BigInt::one() << prec)
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        let scaled = x.numer() << prec;
        let mid = scaled.div_floor(x.denom());
        let rad = if (&mid * x.denom()) == scaled { BigInt::zero() } else { BigInt::one() };
        Ball { mid, rad }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        Ball { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        Ball { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad }
    }

    pub fn mul(&self, o: &Ball, prec: u32) -> Ball {
        let mid = (&self.mid * &o.mid) >> prec;
        let spread = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        Ball { mid, rad: (spread >> prec) + 2 }
    }

    pub fn div_small(&self, n: u64) -> Ball {
        let n = BigInt::from(n);
        Ball { mid: self.mid.div_floor(&n), rad: &self.rad / &n + 1 }
    }

    /// Upper bound on `|value| * 2^prec`.
    pub fn mag(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    /// `Some(sign)` if the ball excludes zero.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        if self.mid.abs() > self.rad {
            Some(if self.mid.is_positive() { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less })
        } else {
            None
        }
    }

    pub fn lo(&self, prec: u32) -> BigRational {
        BigRational::new(&self.mid - &self.rad, BigInt::one() << prec)
    }

    pub fn hi(&self, prec: u32) -> BigRational {
        BigRational::new(&self.mid + &self.rad, BigInt::one() << prec)
    }

    pub fn mid_f64(&self, prec: u32) -> f64 {
        use num_traits::ToPrimitive;
        BigRational::new(self.mid.clone(), BigInt::one() << prec).to_f64().unwrap_or(f64::NAN)
    }
}

/// `atan(1/x)` by its alternating series. Each nested floor division equals
/// the floor of the exact quotient, so every term is off by less than 2 ulps.
fn atan_inv(x: u64, prec: u32) -> Ball {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut t = (BigInt::one() << prec) / &x;
    let mut sum = t.clone();
    let mut k: u64 = 1;
    loop {
        t /= &x2;
        if t.is_zero() {
            break;
        }
        let term = &t / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    Ball { mid: sum, rad: BigInt::from(2 * k + 4) }
}

/// π by Machin's formula.
pub fn pi(prec: u32) -> Ball {
    let a = atan_inv(5, prec);
    let b = atan_inv(239, prec);
    Ball {
        mid: a.mid * 16 - b.mid * 4,
        rad: a.rad * 16 + b.rad * 4,
    }
}

/// `(cos θ, sin θ)` by Taylor series, for `|θ| ≤ 1`.
pub fn cos_sin(theta: &Ball, prec: u32) -> (Ball, Ball) {
    let theta2 = theta.mul(theta, prec);
    let eps = BigInt::from(4);

    let mut cos = Ball::one(prec);
    let mut term = Ball::one(prec);
    let mut n: u64 = 1;
    loop {
        term = term.mul(&theta2, prec).div_small((2 * n - 1) * (2 * n));
        cos = if n % 2 == 1 { cos.sub(&term) } else { cos.add(&term) };
        n += 1;
        if term.mag() < eps {
            break;
        }
    }
    cos.rad += term.mag();

    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut n: u64 = 1;
    loop {
        term = term.mul(&theta2, prec).div_small((2 * n) * (2 * n + 1));
        sin = if n % 2 == 1 { sin.sub(&term) } else { sin.add(&term) };
        n += 1;
        if term.mag() < eps {
            break;
        }
    }
    sin.rad += term.mag();
    (cos, sin)
}

/// Balls around `(cos(2πj/m), sin(2πj/m))` for `j = 0..count`, at precision `prec`.
///
/// Computed by repeated complex multiplication from the primitive root, so
/// `prec` should carry `2·log2(count)` guard bits beyond what the caller needs.
pub fn roots_of_unity(m: usize, count: usize, prec: u32) -> Vec<(Ball, Ball)> {
    let theta = pi(prec).mul(&Ball::exact(BigInt::from(2) << prec), prec).div_small(m as u64);
    let (c, s) = cos_sin(&theta, prec);
    let mut out = Vec::with_capacity(count);
    let mut cur = (Ball::one(prec), Ball::zero());
    for _ in 0..count {
        let next = (
            cur.0.mul(&c, prec).sub(&cur.1.mul(&s, prec)),
            cur.0.mul(&s, prec).add(&cur.1.mul(&c, prec)),
        );
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(200);
        let v = p.mid_f64(200);
        assert!((v - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.rad < BigInt::from(10_000));
    }

    #[test]
    fn twelfth_root_of_unity() {
        let r = roots_of_unity(12, 4, 128);
        let (c, s) = &r[1];
        assert!((c.mid_f64(128) - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((s.mid_f64(128) - 0.5).abs() < 1e-15);
        // cos(2π·3/12) = 0 must be enclosed
        let (c3, _) = &r[3];
        assert!(c3.lo(128) <= BigRational::zero() && c3.hi(128) >= BigRational::zero());
    }
}
