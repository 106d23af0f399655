//! The map `F(z) = λ(z − H(z))`, its inverse, symbolic addresses, and the
//! affine calculus of branch compositions.

pub(crate) mod fast;

use std::fmt;

use num_integer::Integer;

use crate::cyclo::{CycloNum, Field, Sign};
use crate::error::{Error, Result};

/// Which side of the critical line a point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Address {
    Plus,
    Minus,
    OnLine,
}

impl Address {
    pub fn as_char(self) -> char {
        match self {
            Address::Plus => '+',
            Address::Minus => '-',
            Address::OnLine => '0',
        }
    }
}

/// A letter of the itinerary alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Plus,
    Minus,
}

impl Symbol {
    /// `H` on this branch: `+1` or `-1`.
    pub fn h(self) -> i64 {
        match self {
            Symbol::Plus => 1,
            Symbol::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }

    /// Sign this symbol demands of the imaginary part.
    pub fn sign(self) -> Sign {
        match self {
            Symbol::Plus => Sign::Positive,
            Symbol::Minus => Sign::Negative,
        }
    }
}

/// A finite word of addresses, optionally known to be one period of a
/// periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itinerary {
    pub word: Vec<Symbol>,
    /// Minimal shift period when the word is a detected repeating block.
    pub period: Option<usize>,
}

impl Itinerary {
    pub fn new(word: Vec<Symbol>) -> Itinerary {
        Itinerary { word, period: None }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Parses a word over `+`/`-`; also accepts the Unicode minus.
    pub fn parse(s: &str) -> Result<Itinerary> {
        s.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| match c {
                '+' => Ok(Symbol::Plus),
                '-' | '−' => Ok(Symbol::Minus),
                _ => Err(Error::Parse { pos: i, msg: format!("unexpected '{c}' in itinerary") }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Itinerary::new)
    }

    /// The lexicographically least cyclic rotation (with `+ < -`).
    pub fn least_rotation(&self) -> Vec<Symbol> {
        let n = self.word.len();
        (0..n)
            .map(|s| self.word[s..].iter().chain(&self.word[..s]).copied().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.word {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// `w ↦ λ^power · w + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    /// Exponent of `λ`, reduced mod `q`.
    pub power: u32,
    pub offset: CycloNum,
}

impl AffineMap {
    pub fn identity(field: &Field) -> AffineMap {
        AffineMap { power: 0, offset: field.zero() }
    }

    pub fn apply(&self, w: &CycloNum) -> CycloNum {
        &w.mul_lambda_pow(self.power as i64) + &self.offset
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let q = self.offset.field().q();
        AffineMap {
            power: (self.power + inner.power) % q,
            offset: &inner.offset.mul_lambda_pow(self.power as i64) + &self.offset,
        }
    }

    /// Appends one branch step `w ↦ λ(w − h)` after this map.
    pub fn then_branch(&self, s: Symbol) -> AffineMap {
        let field = self.offset.field();
        let shifted = &self.offset - &field.from_integer(s.h());
        AffineMap { power: (self.power + 1) % field.q(), offset: shifted.mul_lambda_pow(1) }
    }

    pub fn linear_part(&self) -> CycloNum {
        self.offset.field().lambda_pow(self.power as i64)
    }
}

/// Result of an exact period search.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub start: CycloNum,
    /// Minimal `n` with `F^n(start) = start`, if found within budget.
    pub period: Option<u64>,
    /// Every index `i < period` (or `< budget`) with `Im F^i(start) = 0`.
    pub iterates_on_line: Vec<(u64, CycloNum)>,
    pub budget_used: u64,
}

/// `k = q / gcd(ℓ, q)`: the order of `λ^ℓ`.
pub fn rotation_order(ell: u64, q: u32) -> u64 {
    q as u64 / ell.gcd(&(q as u64))
}

/// Minimal `ℓ ≥ 1` whose cyclic shift fixes `word`. Always divides `word.len()`.
pub fn itinerary_period(word: &[Symbol]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|l| n.is_multiple_of(*l))
        .find(|&l| (0..n).all(|i| word[i] == word[(i + l) % n]))
        .unwrap_or(n)
}

/// The piecewise rotation `F_λ` over a fixed field.
#[derive(Clone, Debug)]
pub struct PiecewiseRotation {
    field: Field,
}

impl PiecewiseRotation {
    pub fn new(field: Field) -> Self {
        PiecewiseRotation { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn address(&self, z: &CycloNum) -> Address {
        match z.sign_im() {
            Sign::Positive => Address::Plus,
            Sign::Negative => Address::Minus,
            Sign::Zero => Address::OnLine,
        }
    }

    /// `F(z)`. The line `Im z = 0` takes the `+` branch.
    pub fn step(&self, z: &CycloNum) -> CycloNum {
        let h = if z.sign_im() == Sign::Negative { -1 } else { 1 };
        (z - &self.field.from_integer(h)).mul_lambda_pow(1)
    }

    /// `F^{-1}(z) = z/λ + H(z/λ)`.
    pub fn inverse_step(&self, z: &CycloNum) -> CycloNum {
        let w = z.mul_lambda_pow(-1);
        let h = if w.sign_im() == Sign::Negative { -1 } else { 1 };
        &w + &self.field.from_integer(h)
    }

    /// `[z, F(z), …, F^n(z)]`.
    pub fn orbit(&self, z: &CycloNum, n: usize) -> Vec<CycloNum> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(z.clone());
        for i in 0..n {
            let next = self.step(&out[i]);
            out.push(next);
        }
        out
    }

    /// `F^n(z)`, streamed on the integer engine.
    pub fn iterate(&self, z: &CycloNum, n: u64) -> CycloNum {
        fast::iterate_n(z, n)
    }

    /// Iterates until the first exact return or `budget` steps.
    pub fn minimal_period(&self, z: &CycloNum, budget: u64) -> Result<OrbitRecord> {
        if budget == 0 {
            return Err(Error::Parameter("budget must be >= 1".into()));
        }
        let run = fast::run(z, budget, true, true);
        Ok(OrbitRecord {
            start: z.clone(),
            period: run.period,
            iterates_on_line: run.touches,
            budget_used: run.steps,
        })
    }

    /// Indices in `0..=n` where the orbit of `z` meets the critical line.
    pub fn line_returns(&self, z: &CycloNum, n: u64) -> Vec<(u64, CycloNum)> {
        fast::run(z, n, false, true).touches
    }

    /// The length-`n` address word of `z`. Fails at the first iterate on the line.
    pub fn itinerary(&self, z: &CycloNum, n: usize) -> Result<Itinerary> {
        let mut word = Vec::with_capacity(n);
        for (index, s) in fast::address_signs(z, n).into_iter().enumerate() {
            match s {
                Sign::Positive => word.push(Symbol::Plus),
                Sign::Negative => word.push(Symbol::Minus),
                Sign::Zero => return Err(Error::OnCriticalLine { index }),
            }
        }
        Ok(Itinerary::new(word))
    }

    /// The composition of branch maps along `word`: agrees with `F^n` on every
    /// point whose length-`n` itinerary is `word`.
    pub fn affine_along(&self, word: &[Symbol]) -> AffineMap {
        word.iter().fold(AffineMap::identity(&self.field), |g, &s| g.then_branch(s))
    }

    /// The fixed point `b / (1 − λ^t)` of a rotation.
    pub fn rotation_center(&self, g: &AffineMap) -> Result<CycloNum> {
        if g.power.is_multiple_of(self.field.q()) {
            return Err(Error::DegenerateRotation);
        }
        let denom = &self.field.one() - &g.linear_part();
        g.offset.div(&denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;
    use num_rational::BigRational;

    fn pt(f: &Field, x: i64, y: i64) -> CycloNum {
        f.embed_rational_point(&BigRational::from_integer(x.into()), &BigRational::from_integer(y.into()))
    }

    #[test]
    fn origin_maps_to_minus_lambda() {
        for (p, q) in [(4, 5), (11, 12), (3, 7)] {
            let f = make_field(p, q).unwrap();
            let map = PiecewiseRotation::new(f.clone());
            assert_eq!(map.step(&f.zero()), -f.lambda());
            assert_eq!(map.inverse_step(&-f.lambda()), f.zero());
        }
    }

    #[test]
    fn round_trip_rational_point() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        let z = pt(&f, 3, 2);
        assert_eq!(map.inverse_step(&map.step(&z)), z);
        assert_eq!(map.step(&map.inverse_step(&z)), z);
    }

    #[test]
    fn affine_single_letters() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        let plus = map.affine_along(&[Symbol::Plus]);
        assert_eq!(plus, AffineMap { power: 1, offset: -f.lambda() });
        let minus = map.affine_along(&[Symbol::Minus]);
        assert_eq!(minus, AffineMap { power: 1, offset: f.lambda() });
        // q equal letters: the offsets sum over all q-th roots of unity and cancel
        let pure = map.affine_along(&[Symbol::Plus; 5]);
        assert_eq!(pure, AffineMap::identity(&f));
        let mixed = map.affine_along(&[Symbol::Plus, Symbol::Plus, Symbol::Plus, Symbol::Plus, Symbol::Minus]);
        assert_eq!(mixed.power, 0);
        assert!(!mixed.offset.is_zero());
    }

    #[test]
    fn center_of_plus_branch_is_fixed() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        let g = map.affine_along(&[Symbol::Plus]);
        let c = map.rotation_center(&g).unwrap();
        let expect = (-f.lambda()).div(&(&f.one() - &f.lambda())).unwrap();
        assert_eq!(c, expect);
        assert_eq!(map.step(&c), c);
        assert_eq!(map.rotation_center(&map.affine_along(&[Symbol::Plus; 5])), Err(Error::DegenerateRotation));
    }

    #[test]
    fn itinerary_periods() {
        use Symbol::*;
        assert_eq!(itinerary_period(&[Plus; 5]), 1);
        assert_eq!(itinerary_period(&[Plus, Minus, Plus, Minus]), 2);
        assert_eq!(itinerary_period(&[Plus, Minus, Minus]), 3);
    }

    #[test]
    fn rotation_orders() {
        assert_eq!(rotation_order(7, 5), 5);
        assert_eq!(rotation_order(20, 12), 3);
        assert_eq!(rotation_order(12, 12), 1);
        assert_eq!(rotation_order(5, 5), 1);
    }

    #[test]
    fn itinerary_rejects_line() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        assert_eq!(map.itinerary(&pt(&f, 2, 0), 3), Err(Error::OnCriticalLine { index: 0 }));
    }

    #[test]
    fn fast_engine_agrees_with_exact_steps() {
        let f = make_field(3, 7).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        let z = f.embed_rational_point(&BigRational::new(1.into(), 3.into()), &BigRational::new(2.into(), 7.into()));
        let orb = map.orbit(&z, 40);
        assert_eq!(map.iterate(&z, 40), orb[40]);
    }

    #[test]
    fn budget_zero_rejected() {
        let f = make_field(4, 5).unwrap();
        let map = PiecewiseRotation::new(f.clone());
        assert!(map.minimal_period(&f.zero(), 0).is_err());
    }
}
