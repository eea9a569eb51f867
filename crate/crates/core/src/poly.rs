//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in a fixed number of variables.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
/// The `BTreeMap` order on exponent vectors is the lexicographic monomial
/// order with variable 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Self::monomial(nvars, exps, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `Σ_j coeffs[j]·x_j`; `coeffs` may be shorter than `nvars`.
    pub fn linear_form(nvars: usize, coeffs: &[i64]) -> Self {
        assert!(coeffs.len() <= nvars);
        let mut p = Self::zero(nvars);
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut exps = vec![0; nvars];
                exps[j] = 1;
                p.terms.insert(exps, rat(c));
            }
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Exponents)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common total degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Smallest exponent of `var` over all terms.
    pub fn min_degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `x_j ↦ images[j]` for every variable. All images must share
    /// the same number of variables, which becomes the result's.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out += &term;
        }
        out
    }

    /// Sets `x_var = value`, keeping the variable count (the variable simply
    /// no longer occurs).
    pub fn specialize(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (exps, c) in &self.terms {
            let mut e = exps.clone();
            let k = std::mem::replace(&mut e[var], 0);
            let factor = num_traits::pow::pow(value.clone(), k as usize);
            out.add_term(e, c * factor);
        }
        out
    }

    /// Appends `extra` variables that do not occur.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(self.nvars + extra, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables; panics if any of them occurs.
    pub fn truncate_vars(&self, nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(e[nvars..].iter().all(|&x| x == 0), "dropped variable occurs");
                    (e[..nvars].to_vec(), c.clone())
                })
                .collect(),
        }
    }

    /// Divides every term by `x_var^k`; `None` if some term is not divisible.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Option<Poly> {
        let mut out = Poly::zero(self.nvars);
        for (exps, c) in &self.terms {
            if exps[var] < k {
                return None;
            }
            let mut e = exps.clone();
            e[var] -= k;
            out.terms.insert(e, c.clone());
        }
        Some(out)
    }

    fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lead_e, lead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let step = Poly::monomial(self.nvars, qe, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Human-readable rendering, highest total degree first.
    pub fn display_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (Reverse(e.iter().sum::<u32>()), Reverse((*e).clone())));
        let mut out = String::new();
        for (i, (exps, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, n)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(out, "{abs}").unwrap();
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                write!(out, "{abs}*{}", mono.join("*")).unwrap();
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Parses expressions such as `w^2 - 2*w*hbar + 1/2` or `(w1 - w2)^3`
/// over the given variable names.
pub fn parse_poly(text: &str, names: &[&str]) -> Result<Poly> {
    let mut p = Parser {
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        names,
    };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            if op == '*' {
                acc = &acc * &f;
            } else {
                if !f.is_constant() || f.is_zero() {
                    return Err(self.error("division by a non-constant or zero"));
                }
                acc = acc.scale(&(Rational::one() / f.constant_term()));
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.unary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.error("expected a non-negative exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some('+') => {
                self.pos += 1;
                self.power()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let value: BigInt = digits.parse().map_err(|_| self.error("bad number"))?;
                Ok(Poly::constant(n, Rational::from_integer(value)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self
                    .names
                    .iter()
                    .position(|&v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(Poly::var(n, idx))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}
