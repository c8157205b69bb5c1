//! Ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is a finite sum `ω^{e₀}·c₀ + ω^{e₁}·c₁ + …` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! The empty sum is `0`.
//!
//! Text syntax: `0`, a bare integer for finite ordinals, and `w^{E}*c`
//! terms joined by ` + `, e.g. `w^{w^{1}*1}*2 + w^{1}*1 + 3`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An ordinal below ε₀, stored as its Cantor normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CnfOrdinal {
    terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Term {
    exponent: CnfOrdinal,
    coefficient: BigUint,
}

impl CnfOrdinal {
    pub fn zero() -> Self {
        CnfOrdinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return Self::zero();
        }
        CnfOrdinal {
            terms: vec![Term {
                exponent: Self::zero(),
                coefficient: n,
            }],
        }
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: CnfOrdinal) -> Self {
        CnfOrdinal {
            terms: vec![Term {
                exponent,
                coefficient: BigUint::one(),
            }],
        }
    }

    /// `ω^exponent · coefficient`.
    pub fn monomial(exponent: CnfOrdinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Self::zero();
        }
        CnfOrdinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not in Cantor normal form.
    pub fn from_terms(terms: Vec<(CnfOrdinal, BigUint)>) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (exponent, coefficient) in terms {
            if coefficient.is_zero() {
                return Err(Error::Malformed("zero coefficient in Cantor normal form".into()));
            }
            if let Some(prev) = out.last() {
                let prev: &Term = prev;
                if prev.exponent.cmp(&exponent) != Ordering::Greater {
                    return Err(Error::Malformed(
                        "exponents must be strictly decreasing".into(),
                    ));
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(CnfOrdinal { terms: out })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CnfOrdinal, &BigUint)> {
        self.terms.iter().map(|t| (&t.exponent, &t.coefficient))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The value as a machine integer when the ordinal is finite and fits.
    pub fn as_u64(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => t.coefficient.to_u64(),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Leading exponent, or `None` for zero.
    pub fn degree(&self) -> Option<&CnfOrdinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Nesting depth of the exponent tower (0 for finite ordinals).
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.exponent.is_zero() {
                    0
                } else {
                    1 + t.exponent.height()
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &CnfOrdinal) -> CnfOrdinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut carry = BigUint::zero();
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => carry = t.coefficient.clone(),
                Ordering::Less => break,
            }
        }
        let mut rest = rhs.terms.iter();
        let first = rest.next().expect("non-empty");
        terms.push(Term {
            exponent: first.exponent.clone(),
            coefficient: &first.coefficient + carry,
        });
        terms.extend(rest.cloned());
        CnfOrdinal { terms }
    }

    pub fn mul(&self, rhs: &CnfOrdinal) -> CnfOrdinal {
        if self.is_zero() || rhs.is_zero() {
            return CnfOrdinal::zero();
        }
        let lead = &self.terms[0];
        let mut acc = CnfOrdinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent.is_zero() {
                // self · n: only the leading coefficient is scaled.
                let mut terms = self.terms.clone();
                terms[0].coefficient = &lead.coefficient * &t.coefficient;
                CnfOrdinal { terms }
            } else {
                CnfOrdinal::monomial(lead.exponent.add(&t.exponent), t.coefficient.clone())
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// `ω^self`.
    pub fn pow_omega(&self) -> CnfOrdinal {
        CnfOrdinal::omega_pow(self.clone())
    }

    /// Ordinal exponentiation `self^rhs`. Fails with a resource error when
    /// the finite part of `rhs` would force an enormous normal form.
    pub fn pow(&self, rhs: &CnfOrdinal) -> Result<CnfOrdinal> {
        if rhs.is_zero() {
            return Ok(CnfOrdinal::one());
        }
        if self.is_zero() || *self == CnfOrdinal::one() {
            return Ok(self.clone());
        }
        // rhs = ω·q + n
        let (n, q) = match rhs.terms.last() {
            Some(t) if t.exponent.is_zero() => (
                t.coefficient.clone(),
                CnfOrdinal { terms: rhs.terms[..rhs.terms.len() - 1].to_vec() },
            ),
            _ => (BigUint::zero(), rhs.clone()),
        };
        let limit_part = if q.is_zero() {
            CnfOrdinal::one()
        } else if self.is_finite() {
            // a^(ω·q) = ω^q, where q divides the exponents of rhs by ω.
            let terms = q
                .terms
                .iter()
                .map(|t| {
                    let e = if t.exponent.is_finite() {
                        CnfOrdinal::finite(&t.exponent.terms[0].coefficient - 1u32)
                    } else {
                        t.exponent.clone()
                    };
                    (e, t.coefficient.clone())
                })
                .collect();
            CnfOrdinal::omega_pow(CnfOrdinal::from_terms(terms)?)
        } else {
            CnfOrdinal::omega_pow(self.terms[0].exponent.mul(&q))
        };
        let n = n
            .to_u32()
            .ok_or_else(|| Error::ResourceLimit("finite exponent too large".into()))?;
        if self.is_finite() {
            let base = self.terms[0].coefficient.pow(n);
            return Ok(limit_part.mul(&CnfOrdinal::finite(base)));
        }
        if self.terms.len() > 1 && n > 4096 {
            return Err(Error::ResourceLimit("finite exponent too large".into()));
        }
        let mut acc = CnfOrdinal::one();
        for bit in (0..32).rev() {
            acc = acc.mul(&acc);
            if n >> bit & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        Ok(limit_part.mul(&acc))
    }

    /// Natural (Hessenberg) sum: merge terms, adding coefficients.
    pub fn natural_add(&self, rhs: &CnfOrdinal) -> CnfOrdinal {
        let mut terms: Vec<Term> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let pick = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => a.exponent.cmp(&b.exponent),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match pick {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: self.terms[i].exponent.clone(),
                        coefficient: &self.terms[i].coefficient + &rhs.terms[j].coefficient,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        CnfOrdinal { terms }
    }
}

impl Ord for CnfOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for CnfOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for CnfOrdinal {
    fn from(n: u64) -> Self {
        CnfOrdinal::finite(n)
    }
}

impl fmt::Display for CnfOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
            } else {
                write!(f, "w^{{{}}}*{}", t.exponent, t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for CnfOrdinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("ordinal: {what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn term(&mut self) -> Result<(CnfOrdinal, BigUint)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exponent = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.expect(b'{')?;
                    let e = self.expr()?;
                    self.expect(b'}')?;
                    e
                } else {
                    CnfOrdinal::one()
                };
                let coefficient = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.int()?
                } else {
                    BigUint::one()
                };
                Ok((exponent, coefficient))
            }
            Some(c) if c.is_ascii_digit() => Ok((CnfOrdinal::zero(), self.int()?)),
            _ => Err(self.err("expected term")),
        }
    }

    fn expr(&mut self) -> Result<CnfOrdinal> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if terms.len() == 1 && terms[0].0.is_zero() && terms[0].1.is_zero() {
            return Ok(CnfOrdinal::zero());
        }
        CnfOrdinal::from_terms(terms)
    }
}
