//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`, `m = lcm(4, q)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{d-1}` (`d = φ(m)`)
//! reduced modulo `Φ_m`, as an integer numerator vector over one positive
//! common denominator kept in lowest terms. That form is canonical, so field
//! equality is plain vector equality.
//!
//! Signs of real elements are decided exactly: a zero test on the
//! coefficients, then interval evaluation at `ζ = e^{2πi/m}` with a certified
//! `f64` filter followed by big-integer balls at doubling precision.

mod ball;
mod fmt;
pub mod poly;

use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use self::fmt::{parse_rational_str, PhiForm};
pub use self::poly::{cyclotomic_polynomial, euler_phi};
use crate::error::{Error, Result};

/// Exact sign of a real field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn from_ordering(o: std::cmp::Ordering) -> Sign {
        match o {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

pub(crate) struct FieldData {
    p: u32,
    q: u32,
    m: usize,
    d: usize,
    phi: Vec<BigInt>,
    /// `ζ^e` reduced, for `e in 0..m`.
    powers: Vec<Vec<i64>>,
    lambda_exp: usize,
    cos_tab: Vec<f64>,
    sin_tab: Vec<f64>,
}

/// The immutable context of one rotation `λ = e^{2πip/q}`: the field
/// `Q(ζ_m)` and its cached reduction tables. Cheap to clone and `Send + Sync`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Field(p={}, q={}, m={}, d={})", self.0.p, self.0.q, self.0.m, self.0.d)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.q == other.0.q)
    }
}
impl Eq for Field {}

/// Builds the context for the rotation angle `2πp/q`.
pub fn make_field(p: u32, q: u32) -> Result<Field> {
    Field::new(p, q)
}

impl Field {
    pub fn new(p: u32, q: u32) -> Result<Field> {
        if q < 3 {
            return Err(Error::Parameter(format!("q must be >= 3, got {q}")));
        }
        if p == 0 || p >= q {
            return Err(Error::Parameter(format!("need 0 < p < q, got p={p}, q={q}")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::Parameter(format!("p and q must be coprime, got p={p}, q={q}")));
        }
        let m = (q as usize).lcm(&4);
        let phi = poly::cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        let phi_small = poly::to_i64_vec(&phi)
            .ok_or_else(|| Error::Parameter(format!("conductor {m} too large")))?;

        let mut powers = Vec::with_capacity(m);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by ζ: shift, then fold x^d = -Σ φ_i x^i
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..d {
                    cur[i] = top
                        .checked_mul(phi_small[i])
                        .and_then(|t| cur[i].checked_sub(t))
                        .ok_or_else(|| Error::Parameter(format!("conductor {m} too large")))?;
                }
            }
        }
        debug_assert!(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0), "ζ^m must reduce to 1");

        let prec = 128;
        let roots = ball::roots_of_unity(m, d, prec);
        let cos_tab = roots.iter().map(|(c, _)| c.mid_f64(prec)).collect();
        let sin_tab = roots.iter().map(|(_, s)| s.mid_f64(prec)).collect();

        Ok(Field(Arc::new(FieldData {
            p,
            q,
            m,
            d,
            phi,
            powers,
            lambda_exp: m * p as usize / q as usize,
            cos_tab,
            sin_tab,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Conductor `m = lcm(4, q)`.
    pub fn conductor(&self) -> usize {
        self.0.m
    }
    /// Degree `d = φ(m)`.
    pub fn degree(&self) -> usize {
        self.0.d
    }
    /// `Φ_m`, low degree first.
    pub fn phi_m(&self) -> &[BigInt] {
        &self.0.phi
    }
    /// Exponent `t` with `λ = ζ_m^t`.
    pub fn lambda_exponent(&self) -> usize {
        self.0.lambda_exp
    }

    pub(crate) fn power_table(&self, e: usize) -> &[i64] {
        &self.0.powers[e % self.0.m]
    }
    pub(crate) fn cos_tab(&self) -> &[f64] {
        &self.0.cos_tab
    }
    pub(crate) fn sin_tab(&self) -> &[f64] {
        &self.0.sin_tab
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum { field: self.clone(), num: vec![BigInt::zero(); self.0.d], den: BigInt::one() }
    }

    pub fn one(&self) -> CycloNum {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> CycloNum {
        let mut z = self.zero();
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(&self, x: &BigRational) -> CycloNum {
        let mut num = vec![BigInt::zero(); self.0.d];
        num[0] = x.numer().clone();
        CycloNum::from_parts(self, num, x.denom().clone())
    }

    /// `ζ_m^e`.
    pub fn zeta_pow(&self, e: i64) -> CycloNum {
        let e = e.rem_euclid(self.0.m as i64) as usize;
        let num = self.power_table(e).iter().map(|&c| BigInt::from(c)).collect();
        CycloNum { field: self.clone(), num, den: BigInt::one() }
    }

    /// `λ = ζ_m^{mp/q}`.
    pub fn lambda(&self) -> CycloNum {
        self.lambda_pow(1)
    }

    /// `λ^t` for any integer `t`.
    pub fn lambda_pow(&self, t: i64) -> CycloNum {
        self.zeta_pow(t.rem_euclid(self.0.q as i64) * self.0.lambda_exp as i64)
    }

    /// `i = ζ_m^{m/4}`.
    pub fn i_unit(&self) -> CycloNum {
        self.zeta_pow((self.0.m / 4) as i64)
    }

    /// The planar point `x + i·y`.
    pub fn embed_rational_point(&self, x: &BigRational, y: &BigRational) -> CycloNum {
        &self.from_rational(x) + &(&self.i_unit() * &self.from_rational(y))
    }

    /// Builds an element from `d` rational coefficients of the power basis.
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> Result<CycloNum> {
        if coeffs.len() != self.0.d {
            return Err(Error::Parameter(format!(
                "expected {} coefficients, got {}",
                self.0.d,
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloNum::from_parts(self, num, den))
    }

    /// Builds an element from an integer numerator vector and a denominator,
    /// normalizing to lowest terms. The vector may be longer than `d`; higher
    /// powers are reduced.
    pub fn from_int_parts(&self, num: &[BigInt], den: BigInt) -> CycloNum {
        if num.len() == self.0.d {
            return CycloNum::from_parts(self, num.to_vec(), den);
        }
        let mut acc = vec![BigInt::zero(); self.0.d];
        for (e, c) in num.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&mut acc, self.power_table(e), c);
            }
        }
        CycloNum::from_parts(self, acc, den)
    }

    fn check(&self, other: &Field) {
        assert!(self == other, "operands live in different fields: {self:?} vs {other:?}");
    }
}

fn add_scaled_power(acc: &mut [BigInt], power: &[i64], c: &BigInt) {
    for (a, &t) in acc.iter_mut().zip(power) {
        if t != 0 {
            *a += c * t;
        }
    }
}

/// An element of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycloNum {
    fn from_parts(field: &Field, mut num: Vec<BigInt>, mut den: BigInt) -> CycloNum {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        CycloNum { field: field.clone(), num, den }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Power-basis coefficients as rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// Integer numerators over [`CycloNum::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element is the rational constant `r`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycloNum {
        let m = self.field.0.m;
        let mut acc = vec![BigInt::zero(); self.field.0.d];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&mut acc, self.field.power_table((m - j) % m), c);
            }
        }
        CycloNum { field: self.field.clone(), num: acc, den: self.den.clone() }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `(a + conj a) / 2`.
    pub fn real_part(&self) -> CycloNum {
        let s = self + &self.conj();
        s.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `(a - conj a) / (2i)`.
    pub fn imag_part(&self) -> CycloNum {
        let diff = self - &self.conj();
        // 1/(2i) = -i/2
        let minus_half_i = self
            .field
            .i_unit()
            .scale_rational(&BigRational::new(BigInt::from(-1), BigInt::from(2)));
        &diff * &minus_half_i
    }

    /// `|a|²` as the real element `a·conj(a)`.
    pub fn norm_sq(&self) -> CycloNum {
        self * &self.conj()
    }

    pub fn scale_rational(&self, r: &BigRational) -> CycloNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloNum::from_parts(&self.field, num, &self.den * r.denom())
    }

    /// Multiplication by `ζ^e`: a permutation of terms plus `Φ_m` folding.
    pub fn mul_zeta_pow(&self, e: usize) -> CycloNum {
        let mut acc = vec![BigInt::zero(); self.field.0.d];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&mut acc, self.field.power_table(j + e), c);
            }
        }
        CycloNum { field: self.field.clone(), num: acc, den: self.den.clone() }
    }

    /// Multiplication by `λ^t`.
    pub fn mul_lambda_pow(&self, t: i64) -> CycloNum {
        let f = &self.field.0;
        let e = t.rem_euclid(f.q as i64) as usize * f.lambda_exp;
        self.mul_zeta_pow(e)
    }

    pub fn pow(&self, mut n: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_m`.
    pub fn inverse(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let a: Vec<BigRational> =
            self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let s = poly::inverse_mod(&a, &self.field.0.phi)
            .ok_or_else(|| Error::Domain("element not invertible".into()))?;
        let mut coeffs = s;
        coeffs.resize(self.field.0.d, BigRational::zero());
        let inv_num = self.field.from_coeffs(&coeffs)?;
        // a = num/den  ⇒  1/a = den · (1/num)
        Ok(inv_num.scale_rational(&BigRational::from_integer(self.den.clone())))
    }

    pub fn div(&self, other: &CycloNum) -> Result<CycloNum> {
        Ok(self * &other.inverse()?)
    }

    /// Exact sign of a real element.
    pub fn sign_of_real(&self) -> Result<Sign> {
        if !self.is_real() {
            return Err(Error::Domain("sign of a non-real element".into()));
        }
        Ok(self.sign_re())
    }

    /// Exact sign of `Re(a)`.
    pub fn sign_re(&self) -> Sign {
        self.sign_component(false)
    }

    /// Exact sign of `Im(a)`.
    pub fn sign_im(&self) -> Sign {
        self.sign_component(true)
    }

    fn sign_component(&self, imag: bool) -> Sign {
        let tab = if imag { self.field.sin_tab() } else { self.field.cos_tab() };
        if let Some(s) = certified_f64_sign(self.num.iter().map(|c| c.to_f64()), tab) {
            return s;
        }
        let conj = self.conj();
        let zero = if imag { conj == *self } else { conj == -self };
        if zero {
            return Sign::Zero;
        }
        // Nonzero, so doubling the precision terminates.
        let mut prec = 64u32;
        loop {
            let guard = 16 + 2 * (usize::BITS - self.field.0.d.leading_zeros());
            let roots = ball::roots_of_unity(self.field.0.m, self.field.0.d, prec + guard);
            let mut acc = ball::Ball::zero();
            for (c, (re, im)) in self.num.iter().zip(&roots) {
                let r = if imag { im } else { re };
                acc = acc.add(&ball::Ball { mid: c * &r.mid, rad: c.abs() * &r.rad });
            }
            if let Some(o) = acc.sign() {
                return Sign::from_ordering(o);
            }
            prec *= 2;
        }
    }

    /// An interval enclosure of the complex embedding at `ζ = e^{2πi/m}` whose
    /// width in each coordinate is at most `2^{1-bits}`.
    pub fn approx(&self, bits: u32) -> ComplexInterval {
        let bits = bits.max(16);
        let guard = 16 + 2 * (usize::BITS - self.field.0.d.leading_zeros());
        let mut extra = 0u32;
        loop {
            let prec = bits + guard + extra;
            let roots = ball::roots_of_unity(self.field.0.m, self.field.0.d, prec);
            let (mut re, mut im) = (ball::Ball::zero(), ball::Ball::zero());
            for (c, (cr, ci)) in self.coeffs().iter().zip(&roots) {
                let cb = ball::Ball::from_rational(c, prec);
                re = re.add(&cb.mul(cr, prec));
                im = im.add(&cb.mul(ci, prec));
            }
            let limit = BigInt::one() << (prec - bits);
            if re.rad <= limit && im.rad <= limit {
                return ComplexInterval {
                    re_lo: re.lo(prec),
                    re_hi: re.hi(prec),
                    im_lo: im.lo(prec),
                    im_hi: im.hi(prec),
                };
            }
            extra += 32;
        }
    }

    /// Non-certified `f64` shadow of the embedding; for rendering only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for ((c, cr), ci) in self.num.iter().zip(self.field.cos_tab()).zip(self.field.sin_tab()) {
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * cr;
            im += c * ci;
        }
        if den.is_finite() && re.is_finite() {
            (re / den, im / den)
        } else {
            let a = self.approx(64);
            (a.re_mid_f64(), a.im_mid_f64())
        }
    }
}

impl CycloNum {
    /// `(re, im, err)` with both coordinates of the embedding within `err` of
    /// the `f64` values, or `None` when the data does not fit in `f64`.
    pub(crate) fn enclosure(&self) -> Option<(f64, f64, f64)> {
        let den = self.den.to_f64()?;
        let (mut re, mut im, mut abs) = (0.0f64, 0.0f64, 0.0f64);
        let n = self.num.len();
        for ((c, cr), ci) in self.num.iter().zip(self.field.cos_tab()).zip(self.field.sin_tab()) {
            let c = c.to_f64()?;
            re += c * cr;
            im += c * ci;
            abs += c.abs();
        }
        if !(abs.is_finite() && den.is_finite() && den > 0.0) {
            return None;
        }
        let sum_err = abs * (2 * n + 8) as f64 * f64::EPSILON;
        let err = 2.0 * (sum_err + 4.0 * f64::EPSILON * abs) / den + f64::MIN_POSITIVE;
        Some((re / den, im / den, err))
    }
}

/// Decides the sign of `Σ c_j·t_j` from `f64` data when a rigorous rounding
/// bound allows it. The table entries are within `2^-52` of the true values
/// and bounded by 1 in magnitude.
pub(crate) fn certified_f64_sign(
    coeffs: impl Iterator<Item = Option<f64>>,
    tab: &[f64],
) -> Option<Sign> {
    let mut sum = 0.0f64;
    let mut abs = 0.0f64;
    let mut n = 0usize;
    for (c, t) in coeffs.zip(tab) {
        let c = c?;
        if !c.is_finite() {
            return None;
        }
        sum += c * t;
        abs += c.abs();
        n += 1;
    }
    if !abs.is_finite() || abs == 0.0 {
        return None;
    }
    let bound = abs * (2 * n + 8) as f64 * f64::EPSILON;
    if sum > bound {
        Some(Sign::Positive)
    } else if sum < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// A rectangle in the complex plane with rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
}

impl ComplexInterval {
    pub fn contains_zero(&self) -> bool {
        let z = BigRational::zero();
        self.re_lo <= z && z <= self.re_hi && self.im_lo <= z && z <= self.im_hi
    }

    pub fn re_mid_f64(&self) -> f64 {
        ((&self.re_lo + &self.re_hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn im_mid_f64(&self) -> f64 {
        ((&self.im_lo + &self.im_hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        let w = &self.re_hi - &self.re_lo;
        let h = &self.im_hi - &self.im_lo;
        if w > h {
            w
        } else {
            h
        }
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        &self.re_lo <= re && re <= &self.re_hi && &self.im_lo <= im && im <= &self.im_hi
    }

    /// Interval product, rounded outward to the exact rational corners.
    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        fn range(a: (&BigRational, &BigRational), b: (&BigRational, &BigRational)) -> (BigRational, BigRational) {
            let ps = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
            let lo = ps.iter().min().unwrap().clone();
            let hi = ps.iter().max().unwrap().clone();
            (lo, hi)
        }
        let rr = range((&self.re_lo, &self.re_hi), (&o.re_lo, &o.re_hi));
        let ii = range((&self.im_lo, &self.im_hi), (&o.im_lo, &o.im_hi));
        let ri = range((&self.re_lo, &self.re_hi), (&o.im_lo, &o.im_hi));
        let ir = range((&self.im_lo, &self.im_hi), (&o.re_lo, &o.re_hi));
        ComplexInterval {
            re_lo: &rr.0 - &ii.1,
            re_hi: &rr.1 - &ii.0,
            im_lo: &ri.0 + &ir.0,
            im_hi: &ri.1 + &ir.1,
        }
    }

    pub fn overlaps(&self, o: &ComplexInterval) -> bool {
        self.re_lo <= o.re_hi && o.re_lo <= self.re_hi && self.im_lo <= o.im_hi && o.im_lo <= self.im_hi
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.field.check(&o.field);
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return CycloNum::from_parts(&self.field, num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        CycloNum::from_parts(&self.field, num, &self.den * &o.den)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self + &(-o)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        self.num.iter_mut().for_each(|c| *c = -&*c);
        self
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.field.check(&o.field);
        let d = self.field.0.d;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut acc: Vec<BigInt> = prod[..d].to_vec();
        for (e, c) in prod.iter().enumerate().skip(d) {
            if !c.is_zero() {
                add_scaled_power(&mut acc, self.field.power_table(e), c);
            }
        }
        CycloNum::from_parts(&self.field, acc, &self.den * &o.den)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: &CycloNum) -> CycloNum {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn field_parameters() {
        let f = make_field(4, 5).unwrap();
        assert_eq!((f.conductor(), f.degree(), f.lambda_exponent()), (20, 8, 16));
        let g = make_field(11, 12).unwrap();
        assert_eq!((g.conductor(), g.degree(), g.lambda_exponent()), (12, 4, 11));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(2, 4), Err(Error::Parameter(_))));
        assert!(matches!(make_field(1, 2), Err(Error::Parameter(_))));
        assert!(matches!(make_field(5, 5), Err(Error::Parameter(_))));
        assert!(matches!(make_field(0, 7), Err(Error::Parameter(_))));
    }

    #[test]
    fn unit_identities() {
        for (p, q) in [(4, 5), (11, 12), (3, 7), (1, 3), (5, 8)] {
            let f = make_field(p, q).unwrap();
            let i = f.i_unit();
            assert_eq!(&i * &i, -f.one());
            let l = f.lambda();
            assert_eq!(&l * &l.conj(), f.one());
            assert_eq!(l.conj(), l.inverse().unwrap());
            assert_eq!(l.pow(q), f.one());
            for j in 1..q {
                assert_ne!(l.pow(j), f.one());
            }
        }
    }

    #[test]
    fn conj_examples() {
        let f = make_field(4, 5).unwrap();
        assert_eq!(f.i_unit().conj(), -f.i_unit());
        let a = f.embed_rational_point(&rat(3, 1), &rat(-2, 1));
        assert_eq!(a.conj(), f.embed_rational_point(&rat(3, 1), &rat(2, 1)));
    }

    #[test]
    fn real_and_imag_parts() {
        let f = make_field(4, 5).unwrap();
        let a = f.embed_rational_point(&rat(3, 1), &rat(-7, 2));
        assert_eq!(a.imag_part(), f.from_rational(&rat(-7, 2)));
        assert_eq!(a.real_part(), f.from_rational(&rat(3, 1)));
        let half = f.from_rational(&rat(1, 2));
        assert_eq!(half.imag_part(), f.zero());
        assert_eq!(half.real_part(), half);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = make_field(3, 7).unwrap();
        assert!(matches!(f.zero().inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn signs() {
        let f = make_field(4, 5).unwrap();
        assert_eq!(f.zero().sign_of_real().unwrap(), Sign::Zero);
        assert_eq!(f.from_integer(-3).sign_of_real().unwrap(), Sign::Negative);
        assert!(f.i_unit().sign_of_real().is_err());
        assert_eq!(f.i_unit().sign_im(), Sign::Positive);
        assert_eq!(f.lambda().sign_im(), Sign::Negative);
        assert_eq!(f.lambda().sign_re(), Sign::Positive);
    }

    #[test]
    fn tiny_values_fall_through_to_balls() {
        // (1/2 - cos 72°·...) style cancellations: x - x' where x' differs by 2^-80
        let f = make_field(4, 5).unwrap();
        let l = f.lambda();
        let big = BigRational::new(BigInt::one(), BigInt::one() << 80);
        let a = &l.real_part() + &f.from_rational(&big);
        let b = l.real_part();
        assert_eq!((&a - &b).sign_of_real().unwrap(), Sign::Positive);
        assert_eq!((&b - &a).sign_of_real().unwrap(), Sign::Negative);
    }

    #[test]
    fn approx_width() {
        let f = make_field(4, 5).unwrap();
        let half = f.from_rational(&rat(1, 2));
        let a = half.approx(64);
        let half_r = rat(1, 2);
        assert!(a.contains(&half_r, &BigRational::zero()));
        assert!(a.width() <= BigRational::new(3.into(), BigInt::one() << 64));
    }
}
