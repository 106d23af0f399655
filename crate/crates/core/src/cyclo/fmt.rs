//! Text forms for field elements.
//!
//! The generic form is `c0 + c1*z + c2*z^2 + …` with `z = ζ_m`. For `q = 5`
//! fields there is also the golden-ratio form
//! `a + b*phi + (c + d*phi)*sqrt(2+phi)*i`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CycloNum, Field};
use crate::error::{Error, Result};

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_rat(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = if j > 0 && mag == "1" { String::new() } else { format!("{mag}*") };
            match j {
                0 => write!(f, "{}", fmt_rat(&c.abs()))?,
                1 => write!(f, "{mag}z")?,
                _ => write!(f, "{mag}z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{self}]")
    }
}

fn parse_rational(s: &str, pos: usize) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse { pos, msg: format!("bad rational '{s}'") };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::Parse { pos, msg: "zero denominator".into() });
        }
        Ok(BigRational::new(n, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        let digits = format!("{ip}{fp}");
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| err())?))
    }
}

/// Parses a rational written as `n`, `n/d` or a finite decimal.
pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    parse_rational(s, 0)
}

impl Field {
    /// Parses the text form produced by `Display` for [`CycloNum`].
    pub fn parse_coeff_text(&self, text: &str) -> Result<CycloNum> {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        let mut terms: Vec<(usize, String, bool)> = Vec::new();
        let mut cur = String::new();
        let mut start = 0;
        let mut neg = false;
        for (i, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('^') {
                terms.push((start, std::mem::take(&mut cur), neg));
                neg = ch == '-';
                start = i + 1;
            } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
                neg ^= ch == '-';
                start = i + 1;
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            terms.push((start, cur, neg));
        }
        if terms.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
        }
        for (pos, term, neg) in terms {
            let term = term.trim();
            let (coef, power) = if let Some(idx) = term.find('z') {
                let c = term[..idx].trim().trim_end_matches('*').trim();
                let c = if c.is_empty() { BigRational::one() } else { parse_rational(c, pos)? };
                let rest = term[idx + 1..].trim();
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.trim_start_matches('^')
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse { pos: pos + idx, msg: format!("bad exponent in '{term}'") })?
                };
                (c, e)
            } else {
                (parse_rational(term, pos)?, 0)
            };
            let coef = if neg { -coef } else { coef };
            let z = self.zeta_pow(power as i64).scale_rational(&coef);
            for (acc, c) in coeffs.iter_mut().zip(z.coeffs()) {
                *acc += c;
            }
        }
        self.from_coeffs(&coeffs)
    }

    /// `φ = (1+√5)/2 = 1 + ζ₅ + ζ₅⁻¹`; only in `q = 5` fields.
    pub fn golden(&self) -> Result<CycloNum> {
        self.require_q5()?;
        Ok(&(&self.one() + &self.zeta_pow(4)) + &self.zeta_pow(16))
    }

    /// `√(2+φ) = (ζ₅ − ζ₅⁻¹)/i`; only in `q = 5` fields.
    pub fn sqrt_two_plus_phi(&self) -> Result<CycloNum> {
        self.require_q5()?;
        let i_s = &self.zeta_pow(4) - &self.zeta_pow(16);
        Ok(&i_s * &self.i_unit().conj())
    }

    /// `√3 = ζ₁₂ + ζ₁₂⁻¹`; requires `12 | m`.
    pub fn sqrt3(&self) -> Result<CycloNum> {
        let m = self.conductor() as i64;
        if m % 12 != 0 {
            return Err(Error::WrongContext(format!("√3 needs 12 | m, have m = {m}")));
        }
        Ok(&self.zeta_pow(m / 12) + &self.zeta_pow(-(m / 12)))
    }

    fn require_q5(&self) -> Result<()> {
        if self.q() != 5 {
            return Err(Error::WrongContext(format!("golden-ratio constants need q = 5, have q = {}", self.q())));
        }
        Ok(())
    }
}

/// An element written as `a + bφ + i(c + dφ)√(2+φ)` with rational `a, b, c, d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhiForm {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl PhiForm {
    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> PhiForm {
        let r = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        PhiForm { a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    pub fn to_cyclo(&self, field: &Field) -> Result<CycloNum> {
        let basis = phi_basis(field)?;
        let parts = [&self.a, &self.b, &self.c, &self.d];
        Ok(basis
            .iter()
            .zip(parts)
            .fold(field.zero(), |acc, (v, c)| &acc + &v.scale_rational(c)))
    }

    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }
}

fn phi_basis(field: &Field) -> Result<[CycloNum; 4]> {
    let phi = field.golden()?;
    let i_s = &field.i_unit() * &field.sqrt_two_plus_phi()?;
    let i_s_phi = &i_s * &phi;
    Ok([field.one(), phi, i_s, i_s_phi])
}

impl CycloNum {
    /// Coordinates in the basis `1, φ, i√(2+φ), iφ√(2+φ)` of `Q(ζ₅)`.
    /// `Ok(None)` when the element lies outside `Q(ζ₅)`.
    pub fn to_phi_form(&self) -> Result<Option<PhiForm>> {
        let basis = phi_basis(self.field())?;
        let cols: Vec<Vec<BigRational>> = basis.iter().map(CycloNum::coeffs).collect();
        let target = self.coeffs();
        let rows = target.len();
        // augmented rows × 5 system, Gaussian elimination
        let mut mat: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..4 {
            let Some(pr) = (pivot_row..rows).find(|&r| !mat[r][col].is_zero()) else { continue };
            mat.swap(pivot_row, pr);
            let inv = mat[pivot_row][col].recip();
            for x in mat[pivot_row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in 0..5 {
                        let t = &f * &mat[pivot_row][c];
                        mat[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if mat[pivot_row..].iter().any(|row| !row[4].is_zero()) {
            return Ok(None);
        }
        let mut sol = vec![BigRational::zero(); 4];
        for (r, &col) in pivots.iter().enumerate() {
            sol[col] = mat[r][4].clone();
        }
        let [a, b, c, d]: [BigRational; 4] = sol.try_into().expect("four unknowns");
        Ok(Some(PhiForm { a, b, c, d }))
    }

    /// Golden-ratio text if the element lies in `Q(ζ₅)`, coefficient text otherwise.
    pub fn format_phi(&self) -> String {
        match self.to_phi_form() {
            Ok(Some(p)) => p.to_string(),
            _ => self.to_string(),
        }
    }
}

fn lin(c0: &BigRational, c1: &BigRational, sym: &str) -> String {
    match (c0.is_zero(), c1.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => fmt_rat(c0),
        (true, false) => coef_sym(c1, sym),
        (false, false) => {
            let s = coef_sym(&c1.abs(), sym);
            format!("{} {} {}", fmt_rat(c0), if c1.is_negative() { "-" } else { "+" }, s)
        }
    }
}

fn coef_sym(c: &BigRational, sym: &str) -> String {
    if c.is_one() {
        sym.to_string()
    } else if *c == -BigRational::one() {
        format!("-{sym}")
    } else {
        format!("{}*{sym}", fmt_rat(c))
    }
}

impl fmt::Display for PhiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let real = lin(&self.a, &self.b, "phi");
        if self.is_real() {
            return write!(f, "{real}");
        }
        let imag = lin(&self.c, &self.d, "phi");
        if self.a.is_zero() && self.b.is_zero() {
            write!(f, "({imag})*sqrt(2+phi)*i")
        } else {
            write!(f, "{real} + ({imag})*sqrt(2+phi)*i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;

    #[test]
    fn coefficient_text_round_trip() {
        let f = make_field(4, 5).unwrap();
        let z = &f.lambda() + &f.from_rational(&BigRational::new((-7).into(), 3.into()));
        let text = z.to_string();
        assert_eq!(f.parse_coeff_text(&text).unwrap(), z);
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.parse_coeff_text("0").unwrap(), f.zero());
        assert_eq!(f.parse_coeff_text("-1/2*z^3 + z").unwrap().to_string(), "z - 1/2*z^3");
    }

    #[test]
    fn golden_identity() {
        let f = make_field(4, 5).unwrap();
        let phi = f.golden().unwrap();
        assert_eq!(&phi * &phi, &phi + &f.one());
        let s = f.sqrt_two_plus_phi().unwrap();
        assert!(s.is_real());
        assert_eq!(&s * &s, &phi + &f.from_integer(2));
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let f = make_field(11, 12).unwrap();
        let s = f.sqrt3().unwrap();
        assert_eq!(&s * &s, f.from_integer(3));
        assert!(make_field(4, 5).unwrap().sqrt3().is_err());
    }

    #[test]
    fn phi_form_round_trip_and_rejection() {
        let f = make_field(4, 5).unwrap();
        let pf = PhiForm::from_ints((1, 2), (-3, 1), (0, 1), (5, 7));
        let z = pf.to_cyclo(&f).unwrap();
        assert_eq!(z.to_phi_form().unwrap(), Some(pf));
        // i itself is not in Q(ζ5)
        assert_eq!(f.i_unit().to_phi_form().unwrap(), None);
        assert!(make_field(11, 12).unwrap().one().to_phi_form().is_err());
    }

    #[test]
    fn lambda_in_phi_basis() {
        // λ = e^{-2πi/5} = (φ-1)/2 - i√(φ+2)/2
        let f = make_field(4, 5).unwrap();
        let expect = PhiForm::from_ints((-1, 2), (1, 2), (-1, 2), (0, 1));
        assert_eq!(f.lambda().to_phi_form().unwrap(), Some(expect));
    }
}
