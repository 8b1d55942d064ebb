//! Exact Laurent polynomials in one variable `v` over the integers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A Laurent polynomial `Σ c_k v^k` with arbitrary-precision coefficients.
///
/// Terms are kept sorted by exponent and zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse Laurent polynomial {input:?}: {reason}")]
pub struct ParseLaurentError {
    pub input: String,
    pub reason: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `v⁻¹ − v`, the off-diagonal coefficient of the quadratic relation.
    pub fn quadratic_coeff() -> Self {
        Self::from_terms([(-1, 1), (1, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining
    /// repeated exponents.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p += &Self::monomial(c, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Lowest and highest exponent, `None` for the zero polynomial.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The ring involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluates at `v = ±1`.
    pub fn eval_at_unit(&self, sign: i32) -> BigInt {
        assert!(sign == 1 || sign == -1);
        self.terms
            .iter()
            .map(|(e, c)| {
                if sign == -1 && e.rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .sum()
    }

    /// `self += c · v^k · other` for a small integer `c`, merging in place.
    pub fn add_scaled_shift(&mut self, other: &Self, k: i32, c: i64) {
        if c == 0 || other.is_zero() {
            return;
        }
        let c = BigInt::from(c);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut lhs = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut rhs = other.terms.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (e, x) = rhs.next().unwrap();
                    out.push((e + k, x * &c));
                }
                (Some((e1, _)), Some((e2, _))) => {
                    let e2 = e2 + k;
                    if *e1 < e2 {
                        out.push(lhs.next().unwrap());
                    } else if *e1 > e2 {
                        let (_, x) = rhs.next().unwrap();
                        out.push((e2, x * &c));
                    } else {
                        let (e, a) = lhs.next().unwrap();
                        let (_, b) = rhs.next().unwrap();
                        let s = a + b * &c;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                    }
                }
            }
        }
        self.terms = out;
    }

    /// `self += (v⁻¹ − v) · other`.
    pub fn add_quadratic_multiple(&mut self, other: &Self) {
        self.add_scaled_shift(other, -1, 1);
        self.add_scaled_shift(other, 1, -1);
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shift(rhs, 0, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shift(rhs, 0, -1);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: std::collections::BTreeMap<i32, BigInt> = Default::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

const MINUS: char = '\u{2212}';

fn fmt_monomial(f: &mut fmt::Formatter<'_>, exp: i32, mag: &BigInt) -> fmt::Result {
    let unit = mag.is_one();
    match (exp, unit) {
        (0, _) => write!(f, "{mag}"),
        (1, true) => write!(f, "v"),
        (1, false) => write!(f, "{mag}v"),
        (_, true) => write!(f, "v^{exp}"),
        (_, false) => write!(f, "{mag}v^{exp}"),
    }
}

/// Ascending exponents, e.g. `v^-1 − v` or `−2v^-2 + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "{MINUS}")?,
                (0, false) => {}
                (_, true) => write!(f, " {MINUS} ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_monomial(f, *e, &c.abs())?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseLaurentError;

    /// Accepts the `Display` rendering; ASCII `-` is accepted for `−` and
    /// optional `*` between coefficient and `v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseLaurentError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == MINUS { '-' } else { c })
            .collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut pos = 0;
        let mut out = LaurentPoly::zero();
        let read_int = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect())
        };
        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            match chars[pos] {
                '+' if !first => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err("expected '+' or '-' between terms")),
            }
            first = false;
            let coeff = read_int(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let mut exp = 0;
            if pos < chars.len() && chars[pos] == 'v' {
                pos += 1;
                exp = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let neg_exp = pos < chars.len() && chars[pos] == '-';
                    if neg_exp {
                        pos += 1;
                    }
                    let digits = read_int(&mut pos).ok_or_else(|| err("missing exponent"))?;
                    exp = digits.parse::<i32>().map_err(|_| err("exponent out of range"))?;
                    if neg_exp {
                        exp = -exp;
                    }
                }
            } else if coeff.is_none() {
                return Err(err("expected a coefficient or 'v'"));
            }
            let mut c: BigInt = match coeff {
                Some(d) => d.parse().map_err(|_| err("bad coefficient"))?,
                None => BigInt::one(),
            };
            if negative {
                c = -c;
            }
            out += &LaurentPoly::monomial(c, exp);
        }
        Ok(out)
    }
}
