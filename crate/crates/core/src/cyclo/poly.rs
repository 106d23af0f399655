//! Dense univariate polynomials used by the field layer: integer cyclotomic
//! polynomials and the rational extended Euclidean algorithm behind inversion.
//!
//! Coefficients are stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The `n`-th cyclotomic polynomial, computed by exact division of
/// `x^n - 1` by all `Φ_d` with `d | n`, `d < n`.
///
/// # Panics
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial requires n >= 1");
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (quot, rem) = div_rem_monic(&num, &cyclotomic_polynomial(d));
        debug_assert!(rem.iter().all(Zero::is_zero));
        num = quot;
    }
    num
}

/// Euler's totient.
pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Divides `a` by the monic integer polynomial `b`, returning `(quotient, remainder)`.
pub fn div_rem_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    if a.len() <= db {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let t = &c * bj;
            rem[dr - db + j] -= t;
        }
        quot[dr - db] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Solves `s·a ≡ 1 (mod modulus)` over `Q[x]`. Returns `None` when `a` and
/// `modulus` are not coprime (in particular when `a` is zero).
pub fn inverse_mod(a: &[BigRational], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    let modulus: Vec<BigRational> = modulus.iter().cloned().map(BigRational::from_integer).collect();
    let mut r0 = modulus.clone();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    degree(&r1)?;
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].recip();
    let (_, mut s) = poly_divmod(&s0, &modulus);
    for x in s.iter_mut() {
        *x *= &c;
    }
    Some(s)
}

/// Evaluates an integer polynomial at a complex `f64` point.
pub fn eval_f64(p: &[BigInt], re: f64, im: f64) -> (f64, f64) {
    use num_traits::ToPrimitive;
    let (mut ar, mut ai) = (0.0, 0.0);
    for c in p.iter().rev() {
        let (nr, ni) = (ar * re - ai * im, ar * im + ai * re);
        ar = nr + c.to_f64().unwrap_or(f64::NAN);
        ai = ni;
    }
    (ar, ai)
}

pub(crate) fn to_i64_vec(p: &[BigInt]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    p.iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn degree_is_totient() {
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn inverse_of_x_mod_x2_plus_1() {
        let a = vec![BigRational::zero(), BigRational::one()];
        let inv = inverse_mod(&a, &ints(&[1, 0, 1])).unwrap();
        // 1/x = -x mod x^2+1
        assert_eq!(inv, vec![BigRational::zero(), -BigRational::one()]);
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(inverse_mod(&[BigRational::zero()], &ints(&[1, 0, 1])).is_none());
    }
}
