//! ħ-difference operators with polynomial coefficients on the Lie algebra of
//! a rank-`k` torus.
//!
//! An operator is a finite sum `Σ_λ f_λ(w, ħ)·e^λ`, coefficients written to
//! the left of shifts. The shift `e^λ` acts on functions of `w` by
//! `f ↦ f(w + λħ)`, so that
//!
//! ```text
//! (f e^λ)(g e^μ) = f · g(w + λħ) · e^{λ+μ}.
//! ```
//!
//! Coefficient polynomials have `k + 1` variables: `w_1..w_k` then `ħ`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::Coweight;
use crate::poly::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceOperator {
    rank: usize,
    terms: BTreeMap<Coweight, Poly>,
}

impl DifferenceOperator {
    pub fn zero(rank: usize) -> Self {
        DifferenceOperator {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::shift(&Coweight::zero(rank))
    }

    /// The pure shift `e^λ`.
    pub fn shift(lam: &Coweight) -> Self {
        let rank = lam.rank();
        Self::term(lam.clone(), Poly::one(rank + 1))
    }

    /// `f·e^0`.
    pub fn multiplication(f: Poly) -> Self {
        assert!(f.nvars() >= 1);
        let rank = f.nvars() - 1;
        Self::term(Coweight::zero(rank), f)
    }

    /// `f·e^λ`.
    pub fn term(lam: Coweight, f: Poly) -> Self {
        let rank = lam.rank();
        assert_eq!(f.nvars(), rank + 1, "coefficient must have rank + 1 variables");
        let mut op = Self::zero(rank);
        op.add_term(lam, f);
        op
    }

    /// The coordinate function `w_j` as a multiplication operator.
    pub fn w(rank: usize, j: usize) -> Self {
        Self::multiplication(Poly::var(rank + 1, j))
    }

    pub fn hbar(rank: usize) -> Self {
        Self::multiplication(Poly::var(rank + 1, rank))
    }

    /// Index of the ħ variable in coefficient polynomials.
    pub fn hbar_var(&self) -> usize {
        self.rank
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lam: &Coweight) -> Poly {
        self.terms.get(lam).cloned().unwrap_or_else(|| Poly::zero(self.rank + 1))
    }

    fn add_term(&mut self, lam: Coweight, f: Poly) {
        if f.is_zero() {
            return;
        }
        let entry = self.terms.entry(lam);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::Dimension(format!(
                "operators of rank {} and {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    /// `g(w + λħ, ħ)`.
    fn shift_coefficient(&self, g: &Poly, lam: &Coweight) -> Poly {
        if lam.is_zero() {
            return g.clone();
        }
        let n = self.rank + 1;
        let hbar = Poly::var(n, self.rank);
        let mut images: Vec<Poly> = (0..self.rank)
            .map(|j| &Poly::var(n, j) + &hbar.scale(&crate::poly::rat(lam.0[j])))
            .collect();
        images.push(hbar);
        g.substitute(&images)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (lam, f) in &self.terms {
            for (mu, g) in &other.terms {
                let coeff = f * &self.shift_coefficient(g, lam);
                out.add_term(lam.add(mu), coeff);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.multiply(other)? - &other.multiply(self)?)
    }

    pub fn specialize_hbar(&self, value: &Rational) -> Self {
        let mut out = Self::zero(self.rank);
        for (lam, f) in &self.terms {
            out.add_term(lam.clone(), f.specialize(self.rank, value));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rank);
        for (lam, f) in &self.terms {
            out.add_term(lam.clone(), f.scale(c));
        }
        out
    }

    /// True if no coefficient involves ħ.
    pub fn is_hbar_free(&self) -> bool {
        self.terms.values().all(|f| f.degree_in(self.rank) == Some(0))
    }

    /// Divides every coefficient by ħ; `None` if some coefficient has a
    /// ħ-free term.
    pub fn divide_by_hbar(&self) -> Option<Self> {
        let mut out = Self::zero(self.rank);
        for (lam, f) in &self.terms {
            out.add_term(lam.clone(), f.divide_by_var_power(self.rank, 1)?);
        }
        Some(out)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = variable_names(self.rank, true);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        self.terms
            .iter()
            .map(|(lam, f)| {
                let poly = f.display_with(&names);
                if lam.is_zero() {
                    format!("({poly})")
                } else {
                    format!("({poly})*e^{}", format_coweight(lam))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `{a, b} = ((a·b − b·a)/ħ)|_{ħ=0}` for lifts `a`, `b` of classical elements.
pub fn poisson_from_lifts(a_lift: &DifferenceOperator, b_lift: &DifferenceOperator) -> Result<DifferenceOperator> {
    let comm = a_lift.commutator(b_lift)?;
    let divided = comm
        .divide_by_hbar()
        .ok_or_else(|| Error::Lift("commutator of the lifts is not divisible by hbar".into()))?;
    Ok(divided.specialize_hbar(&Rational::zero()))
}

/// `w` for rank 1, otherwise `w1, w2, …`; optionally followed by `hbar`.
pub fn variable_names(rank: usize, with_hbar: bool) -> Vec<String> {
    let mut names: Vec<String> = if rank == 1 {
        vec!["w".to_string()]
    } else {
        (1..=rank).map(|j| format!("w{j}")).collect()
    };
    if with_hbar {
        names.push("hbar".to_string());
    }
    names
}

pub(crate) fn format_coweight(lam: &Coweight) -> String {
    if lam.rank() == 1 {
        lam.0[0].to_string()
    } else {
        let parts: Vec<String> = lam.0.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl Add for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn add(self, rhs: &DifferenceOperator) -> DifferenceOperator {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (lam, f) in &rhs.terms {
            out.add_term(lam.clone(), f.clone());
        }
        out
    }
}

impl Neg for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn neg(self) -> DifferenceOperator {
        DifferenceOperator {
            rank: self.rank,
            terms: self.terms.iter().map(|(l, f)| (l.clone(), -f)).collect(),
        }
    }
}

impl Sub for &DifferenceOperator {
    type Output = DifferenceOperator;
    fn sub(self, rhs: &DifferenceOperator) -> DifferenceOperator {
        self + &(-rhs)
    }
}
