//! Integer orbit engine.
//!
//! Along an orbit the denominator never changes: `z ↦ λ(z ∓ 1)` only adds
//! the integer `±D` to the constant numerator and multiplies by the integer
//! matrix of `λ`. So the state is a numerator vector over a fixed `D`, and
//! exact return is plain vector equality. Lanes run in `i128` with checked
//! arithmetic and restart on `BigInt` on overflow.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{certified_f64_sign, CycloNum, Field, Sign};

pub(crate) trait Lane: Clone + Eq + Sized {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn to_f64(&self) -> Option<f64>;
    fn zero() -> Self;
    /// `acc += x * c`, `None` on overflow.
    fn mul_add(acc: &mut Self, x: &Self, c: i64) -> Option<()>;
    fn add(acc: &mut Self, x: &Self) -> Option<()>;
    fn sub(acc: &mut Self, x: &Self) -> Option<()>;
    fn is_zero(&self) -> bool;
}

impl Lane for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn to_f64(&self) -> Option<f64> {
        Some(*self as f64)
    }
    fn zero() -> Self {
        0
    }
    fn mul_add(acc: &mut Self, x: &Self, c: i64) -> Option<()> {
        *acc = acc.checked_add(x.checked_mul(c as i128)?)?;
        Some(())
    }
    fn add(acc: &mut Self, x: &Self) -> Option<()> {
        *acc = acc.checked_add(*x)?;
        Some(())
    }
    fn sub(acc: &mut Self, x: &Self) -> Option<()> {
        *acc = acc.checked_sub(*x)?;
        Some(())
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Lane for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn to_f64(&self) -> Option<f64> {
        ToPrimitive::to_f64(self)
    }
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn mul_add(acc: &mut Self, x: &Self, c: i64) -> Option<()> {
        *acc += x * c;
        Some(())
    }
    fn add(acc: &mut Self, x: &Self) -> Option<()> {
        *acc += x;
        Some(())
    }
    fn sub(acc: &mut Self, x: &Self) -> Option<()> {
        *acc -= x;
        Some(())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Outcome of an integer-engine run.
#[derive(Clone, Debug)]
pub(crate) struct FastRun {
    /// First `n ≥ 1` with `F^n(start) = start`, if seen.
    pub period: Option<u64>,
    /// Indices `i` (with values) where `Im F^i(start) = 0`.
    pub touches: Vec<(u64, CycloNum)>,
    pub steps: u64,
}

struct Engine<L: Lane> {
    field: Field,
    /// sparse `λ` matrix: `(source index, target index, coefficient)`
    lam: Vec<(usize, usize, i64)>,
    den: L,
    cur: Vec<L>,
    scratch: Vec<L>,
}

impl<L: Lane> Engine<L> {
    fn new(start: &CycloNum) -> Option<Self> {
        let field = start.field().clone();
        let d = field.degree();
        let t = field.lambda_exponent();
        let mut lam = Vec::new();
        for j in 0..d {
            for (k, &c) in field.power_table(j + t).iter().enumerate() {
                if c != 0 {
                    lam.push((j, k, c));
                }
            }
        }
        let cur: Vec<L> = start.numerators().iter().map(L::from_big).collect::<Option<_>>()?;
        let den = L::from_big(start.denominator())?;
        Some(Engine { field, lam, den, scratch: vec![L::zero(); d], cur })
    }

    fn value(&self) -> CycloNum {
        let num: Vec<BigInt> = self.cur.iter().map(L::to_big).collect();
        self.field.from_int_parts(&num, self.den.to_big())
    }

    fn sign_im(&self) -> Sign {
        certified_f64_sign(self.cur.iter().map(L::to_f64), self.field.sin_tab())
            .unwrap_or_else(|| self.value().sign_im())
    }

    /// One application of the map; `None` on overflow.
    fn step(&mut self, upper: bool) -> Option<()> {
        if upper {
            L::sub(&mut self.cur[0], &self.den)?;
        } else {
            L::add(&mut self.cur[0], &self.den)?;
        }
        for s in self.scratch.iter_mut() {
            *s = L::zero();
        }
        for &(j, k, c) in &self.lam {
            if !self.cur[j].is_zero() {
                L::mul_add(&mut self.scratch[k], &self.cur[j], c)?;
            }
        }
        std::mem::swap(&mut self.cur, &mut self.scratch);
        Some(())
    }

    fn run(&mut self, max_steps: u64, stop_on_return: bool, record_touches: bool) -> Option<FastRun> {
        let start = self.cur.clone();
        let mut touches = Vec::new();
        let mut period = None;
        let mut i = 0u64;
        while i < max_steps {
            let s = self.sign_im();
            if s == Sign::Zero && record_touches {
                touches.push((i, self.value()));
            }
            self.step(s != Sign::Negative)?;
            i += 1;
            if period.is_none() && self.cur == start {
                period = Some(i);
                if stop_on_return {
                    break;
                }
            }
        }
        if !stop_on_return && record_touches && i == max_steps && self.sign_im() == Sign::Zero {
            touches.push((i, self.value()));
        }
        Some(FastRun { period, touches, steps: i })
    }
}

/// Iterates `start` up to `max_steps` times. With `stop_on_return` the run ends
/// at the first exact return; otherwise all `max_steps` steps are taken and the
/// final iterate is also checked for a line touch.
pub(crate) fn run(start: &CycloNum, max_steps: u64, stop_on_return: bool, record_touches: bool) -> FastRun {
    if let Some(mut e) = Engine::<i128>::new(start) {
        if let Some(r) = e.run(max_steps, stop_on_return, record_touches) {
            return r;
        }
    }
    let mut e = Engine::<BigInt>::new(start).expect("BigInt lanes never overflow");
    e.run(max_steps, stop_on_return, record_touches).expect("BigInt lanes never overflow")
}

/// Signs of `Im F^i(start)` for `i = 0..n`, stopping after the first zero.
pub(crate) fn address_signs(start: &CycloNum, n: usize) -> Vec<Sign> {
    fn go<L: Lane>(start: &CycloNum, n: usize) -> Option<Vec<Sign>> {
        let mut e = Engine::<L>::new(start)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s = e.sign_im();
            out.push(s);
            if s == Sign::Zero {
                break;
            }
            if i + 1 < n {
                e.step(s != Sign::Negative)?;
            }
        }
        Some(out)
    }
    go::<i128>(start, n).unwrap_or_else(|| go::<BigInt>(start, n).expect("BigInt lanes never overflow"))
}

/// The `n`-th iterate, computed on the integer engine.
pub(crate) fn iterate_n(start: &CycloNum, n: u64) -> CycloNum {
    fn go<L: Lane>(start: &CycloNum, n: u64) -> Option<CycloNum> {
        let mut e = Engine::<L>::new(start)?;
        for _ in 0..n {
            let s = e.sign_im();
            e.step(s != Sign::Negative)?;
        }
        Some(e.value())
    }
    go::<i128>(start, n).unwrap_or_else(|| go::<BigInt>(start, n).expect("BigInt lanes never overflow"))
}
