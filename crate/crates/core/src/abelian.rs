//! Coulomb branch algebras of abelian gauge theories `(T, N)`.
//!
//! As a module over `ℚ[w_1..w_k] = H^*_T(pt)` the algebra is free on the
//! monopole classes `r^λ`, one per cocharacter `λ` of `T`. With `ρ_i` the
//! weights of `N` and `p_i = ⟨ρ_i, λ⟩`, `q_i = ⟨ρ_i, μ⟩`:
//!
//! ```text
//! r^λ ∗ r^μ = ∏_i ⟨ρ_i, w⟩^{(|p_i| + |q_i| − |p_i + q_i|)/2} · r^{λ+μ}
//! ```
//!
//! The quantization sends `f(w)·r^λ` to `f(w)·u_λ`, where
//!
//! ```text
//! u_λ = ∏_{i: p_i > 0} ∏_{j=0}^{p_i − 1} (⟨ρ_i, w⟩ − jħ) · e^λ.
//! ```
//!
//! This ordering convention is frozen: `x = w^ℓ r^1` and `yx = (w − ħ)^ℓ`
//! for `ℓ` weight-one characters of `ℂ^×`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, ToPrimitive};

use crate::cancel::CancelToken;
use crate::difference::{format_coweight, poisson_from_lifts, variable_names, DifferenceOperator};
use crate::error::{Error, Result};
use crate::graded::{GradedDims, HalfInt};
use crate::lattice::{pairing, Character, Coweight, IntMatrix};
use crate::linalg;
use crate::poly::{rat, Poly, Rational};

/// A torus `T` of rank `k` acting on `N = ⊕ ℂ_{ρ_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianTheory {
    rank: usize,
    characters: Vec<Character>,
    names: Vec<String>,
}

impl AbelianTheory {
    pub fn new(rank: usize, characters: Vec<Character>) -> Result<Self> {
        if let Some((i, c)) = characters.iter().enumerate().find(|(_, c)| c.rank() != rank) {
            return Err(Error::Dimension(format!(
                "character {i} has length {}, torus has rank {rank}",
                c.rank()
            )));
        }
        let names = variable_names(rank, false);
        Ok(AbelianTheory {
            rank,
            characters,
            names,
        })
    }

    /// `ℓ` copies of the weight-one character of `ℂ^×`.
    pub fn cyclic(ell: usize) -> Self {
        Self::new(1, vec![Character(vec![1]); ell]).expect("rank-1 characters")
    }

    /// The restriction of the standard representation of `(ℂ^×)^n` along the
    /// cocharacter inclusion `A: ℤ^k → ℤ^n`: the characters are the rows of `A`.
    pub fn from_inclusion(a: &IntMatrix) -> Result<Self> {
        let rows = a
            .to_i64_rows()
            .ok_or_else(|| Error::Domain("inclusion matrix entries exceed 64 bits".into()))?;
        Self::new(a.cols(), rows.into_iter().map(Character).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    fn pairings(&self, lam: &Coweight) -> Vec<i64> {
        self.characters
            .iter()
            .map(|rho| pairing(lam, rho).expect("ranks checked"))
            .collect()
    }

    /// `⟨ρ_i, w⟩` as a polynomial in `nvars ≥ rank` variables.
    fn linear_form(&self, i: usize, nvars: usize) -> Poly {
        Poly::linear_form(nvars, &self.characters[i].0)
    }

    /// Twice the monopole degree, `Σ_i |⟨ρ_i, λ⟩|`.
    pub fn twice_monopole_degree(&self, lam: &Coweight) -> i64 {
        self.pairings(lam).iter().map(|p| p.abs()).sum()
    }

    fn check_coweight(&self, lam: &Coweight) -> Result<()> {
        if lam.rank() != self.rank {
            return Err(Error::Dimension(format!(
                "coweight of length {} for a rank-{} torus",
                lam.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    fn check_element(&self, a: &CoulombElement) -> Result<()> {
        if a.rank != self.rank {
            return Err(Error::Dimension(format!(
                "element of rank {} for a rank-{} torus",
                a.rank, self.rank
            )));
        }
        Ok(())
    }

    /// `∏_i ⟨ρ_i, w⟩^{d_i}`, the structure constant of `r^λ ∗ r^μ`.
    fn product_factor(&self, lam: &Coweight, mu: &Coweight) -> Poly {
        let p = self.pairings(lam);
        let q = self.pairings(mu);
        let mut out = Poly::one(self.rank);
        for (i, (a, b)) in p.iter().zip(&q).enumerate() {
            let d = (a.abs() + b.abs() - (a + b).abs()) / 2;
            if d > 0 {
                out = &out * &self.linear_form(i, self.rank).pow(d as u32);
            }
        }
        out
    }

    /// `∏_{i: p_i>0} ⟨ρ_i, w⟩^{p_i}`: the `ħ = 0` prefactor of `u_λ`.
    fn classical_prefactor(&self, lam: &Coweight) -> Poly {
        let mut out = Poly::one(self.rank);
        for (i, p) in self.pairings(lam).into_iter().enumerate() {
            if p > 0 {
                out = &out * &self.linear_form(i, self.rank).pow(p as u32);
            }
        }
        out
    }

    /// The prefactor of `u_λ` in `w_1..w_k, ħ`.
    fn quantum_prefactor(&self, lam: &Coweight) -> Poly {
        let n = self.rank + 1;
        let hbar = Poly::var(n, self.rank);
        let mut out = Poly::one(n);
        for (i, p) in self.pairings(lam).into_iter().enumerate() {
            let form = self.linear_form(i, n);
            for j in 0..p.max(0) {
                out = &out * &(&form - &hbar.scale(&rat(j)));
            }
        }
        out
    }

    /// The quantized monopole operator `u_λ`.
    pub fn monopole_operator(&self, lam: &Coweight) -> Result<DifferenceOperator> {
        self.check_coweight(lam)?;
        Ok(DifferenceOperator::term(lam.clone(), self.quantum_prefactor(lam)))
    }
}

/// A finite sum `Σ_λ f_λ(w)·r^λ`. The key `λ` is the `π₁(T)`-degree of a term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoulombElement {
    rank: usize,
    terms: BTreeMap<Coweight, Poly>,
}

impl CoulombElement {
    pub fn zero(rank: usize) -> Self {
        CoulombElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monopole(&Coweight::zero(rank))
    }

    /// `r^λ`.
    pub fn monopole(lam: &Coweight) -> Self {
        Self::term(lam.clone(), Poly::one(lam.rank()))
    }

    /// `f(w)·r^λ`.
    pub fn term(lam: Coweight, f: Poly) -> Self {
        assert_eq!(f.nvars(), lam.rank(), "coefficient must have one variable per torus coordinate");
        let mut e = Self::zero(lam.rank());
        e.add_term(lam, f);
        e
    }

    /// The equivariant parameter `w_j`.
    pub fn w(rank: usize, j: usize) -> Self {
        Self::term(Coweight::zero(rank), Poly::var(rank, j))
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
        self.terms.get(lam).cloned().unwrap_or_else(|| Poly::zero(self.rank))
    }

    /// The `π₁(T)`-degrees occurring in this element.
    pub fn pi1_support(&self) -> Vec<Coweight> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, lam: Coweight, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(lam) {
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

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rank);
        for (lam, f) in &self.terms {
            out.add_term(lam.clone(), f.scale(c));
        }
        out
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = variable_names(self.rank, false);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        self.terms
            .iter()
            .map(|(lam, f)| {
                let poly = f.display_with(&names);
                match (lam.is_zero(), f.is_constant() && f.constant_term() == rat(1)) {
                    (true, _) => poly,
                    (false, true) => format!("r^{}", format_coweight(lam)),
                    (false, false) => format!("({poly})*r^{}", format_coweight(lam)),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &CoulombElement {
    type Output = CoulombElement;
    fn add(self, rhs: &CoulombElement) -> CoulombElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (lam, f) in &rhs.terms {
            out.add_term(lam.clone(), f.clone());
        }
        out
    }
}

impl Neg for &CoulombElement {
    type Output = CoulombElement;
    fn neg(self) -> CoulombElement {
        CoulombElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(l, f)| (l.clone(), -f)).collect(),
        }
    }
}

impl Sub for &CoulombElement {
    type Output = CoulombElement;
    fn sub(self, rhs: &CoulombElement) -> CoulombElement {
        self + &(-rhs)
    }
}

/// The commutative product on the monopole basis, extended bilinearly.
pub fn classical_product(th: &AbelianTheory, a: &CoulombElement, b: &CoulombElement) -> Result<CoulombElement> {
    th.check_element(a)?;
    th.check_element(b)?;
    let mut out = CoulombElement::zero(th.rank);
    for (lam, f) in &a.terms {
        for (mu, g) in &b.terms {
            let coeff = &(f * g) * &th.product_factor(lam, mu);
            out.add_term(lam.add(mu), coeff);
        }
    }
    Ok(out)
}

/// `f(w)·r^λ ↦ f(w)·u_λ`, extended linearly.
pub fn quantize(th: &AbelianTheory, a: &CoulombElement) -> Result<DifferenceOperator> {
    th.check_element(a)?;
    let mut out = DifferenceOperator::zero(th.rank);
    for (lam, f) in &a.terms {
        let coeff = &f.extend_vars(1) * &th.quantum_prefactor(lam);
        out = &out + &DifferenceOperator::term(lam.clone(), coeff);
    }
    Ok(out)
}

/// `(u_λ·u_{−λ}, u_{−λ}·u_λ)`.
pub fn quantum_relation(th: &AbelianTheory, lam: &Coweight) -> Result<(DifferenceOperator, DifferenceOperator)> {
    let plus = th.monopole_operator(lam)?;
    let minus = th.monopole_operator(&lam.neg())?;
    Ok((plus.multiply(&minus)?, minus.multiply(&plus)?))
}

/// Inverts the `ħ = 0` embedding `f·r^λ ↦ f·∏⟨ρ_i,w⟩^{max(p_i,0)}·e^λ`.
pub fn classical_preimage(th: &AbelianTheory, op: &DifferenceOperator) -> Result<CoulombElement> {
    if op.rank() != th.rank {
        return Err(Error::Dimension(format!(
            "operator of rank {} for a rank-{} torus",
            op.rank(),
            th.rank
        )));
    }
    if !op.is_hbar_free() {
        return Err(Error::Domain("operator depends on hbar".into()));
    }
    let mut out = CoulombElement::zero(th.rank);
    for (lam, g) in op.terms() {
        let g = g.truncate_vars(th.rank);
        let f = g.div_exact(&th.classical_prefactor(lam)).ok_or_else(|| {
            Error::Domain(format!(
                "coefficient of e^{} is not in the monopole span",
                format_coweight(lam)
            ))
        })?;
        out.add_term(lam.clone(), f);
    }
    Ok(out)
}

/// The Poisson bracket induced by the quantization.
pub fn poisson(th: &AbelianTheory, a: &CoulombElement, b: &CoulombElement) -> Result<CoulombElement> {
    let bracket = poisson_from_lifts(&quantize(th, a)?, &quantize(th, b)?)?;
    classical_preimage(th, &bracket)
}

/// `deg(w^m r^λ) = m + ½ Σ_i |⟨ρ_i, λ⟩|` for a homogeneous nonzero element.
pub fn grading_degree(th: &AbelianTheory, a: &CoulombElement) -> Result<HalfInt> {
    th.check_element(a)?;
    let mut degree: Option<HalfInt> = None;
    for (lam, f) in &a.terms {
        let m = f
            .homogeneous_degree()
            .ok_or_else(|| Error::Domain("element is not homogeneous".into()))?;
        let d = HalfInt::from_int(m as i64) + HalfInt::from_twice(th.twice_monopole_degree(lam));
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => return Err(Error::Domain("element is not homogeneous".into())),
            Some(_) => {}
        }
    }
    degree.ok_or_else(|| Error::Domain("the zero element has no degree".into()))
}

/// `r^λ ∗ r^{−λ} = ∏_i ⟨ρ_i, w⟩^{|⟨ρ_i, λ⟩|}`.
pub fn birationality_witness(th: &AbelianTheory, lam: &Coweight) -> Result<Poly> {
    th.check_coweight(lam)?;
    let prod = classical_product(th, &CoulombElement::monopole(lam), &CoulombElement::monopole(&lam.neg()))?;
    Ok(prod.coefficient(&Coweight::zero(th.rank)))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Per-coordinate bounds `|λ_j| ≤ B_j` on every coweight of degree `≤ max_deg`.
fn coweight_box(th: &AbelianTheory, max_deg: HalfInt) -> Result<Vec<i64>> {
    let rows: Vec<Vec<i64>> = th.characters.iter().map(|c| c.0.clone()).collect();
    let rational = linalg::to_rational(&rows);
    if linalg::rank(&rational) < th.rank {
        return Err(Error::ImproperDegree(format!(
            "the characters span a sublattice of rank < {}; infinitely many monopoles have degree 0",
            th.rank
        )));
    }
    // k linearly independent characters S; λ = S⁻¹(Sλ) and |(Sλ)_i| ≤ 2·deg(λ).
    let mut basis = linalg::EchelonBasis::new(th.rank);
    let mut chosen = Vec::new();
    for row in &rational {
        if basis.insert(row.clone()) {
            chosen.push(row.clone());
        }
    }
    let inv = linalg::inverse(&chosen).expect("independent rows");
    let twice = rat(max_deg.twice().max(0));
    Ok(inv
        .iter()
        .map(|row| {
            let s: Rational = row.iter().map(|x| x.abs()).sum();
            (s * &twice).floor().to_integer().to_i64().expect("bounded")
        })
        .collect())
}

/// Graded dimensions of the Coulomb branch algebra: the coefficients of
/// `Σ_λ t^{½Σ|⟨ρ_i,λ⟩|} / (1 − t)^k` up to `max_deg`.
pub fn hilbert_series(th: &AbelianTheory, max_deg: HalfInt, cancel: &CancelToken) -> Result<GradedDims> {
    let bounds = coweight_box(th, max_deg)?;
    let mut out = GradedDims::zeros(max_deg);
    let top = max_deg.twice();
    let k = th.rank as u64;
    let mut lam = bounds.iter().map(|b| -b).collect::<Vec<_>>();
    loop {
        cancel.check()?;
        let d = th.twice_monopole_degree(&Coweight(lam.clone()));
        if d <= top {
            // dressing by polynomials in w: C(e + k − 1, k − 1) in degree d + 2e
            for (e, slot) in (d..=top).step_by(2).enumerate() {
                let count = if k == 0 {
                    u64::from(e == 0)
                } else {
                    binomial(e as u64 + k - 1, k - 1)
                };
                out.add_at(slot as usize, count);
            }
        }
        // odometer over the box
        let mut j = 0;
        loop {
            if j == lam.len() {
                return Ok(out);
            }
            if lam[j] < bounds[j] {
                lam[j] += 1;
                break;
            }
            lam[j] = -bounds[j];
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn w(rank: usize) -> Poly {
        Poly::var(rank, 0)
    }

    #[test]
    fn pure_torus_product() {
        let th = AbelianTheory::new(2, vec![]).unwrap();
        let a = CoulombElement::monopole(&cw(&[1, -2]));
        let b = CoulombElement::monopole(&cw(&[3, 5]));
        assert_eq!(classical_product(&th, &a, &b).unwrap(), CoulombElement::monopole(&cw(&[4, 3])));
    }

    #[test]
    fn cyclic_products() {
        for ell in 1..=4 {
            let th = AbelianTheory::cyclic(ell);
            let x = CoulombElement::monopole(&cw(&[1]));
            let y = CoulombElement::monopole(&cw(&[-1]));
            let xy = classical_product(&th, &x, &y).unwrap();
            assert_eq!(xy, CoulombElement::term(cw(&[0]), w(1).pow(ell as u32)));
        }
        let th = AbelianTheory::cyclic(2);
        let xy = classical_product(&th, &CoulombElement::monopole(&cw(&[1])), &CoulombElement::monopole(&cw(&[-1])));
        assert_eq!(xy.unwrap().display(), "w^2");
    }

    #[test]
    fn product_rank_mismatch() {
        let th = AbelianTheory::cyclic(1);
        let a = CoulombElement::one(2);
        assert!(matches!(classical_product(&th, &a, &a), Err(Error::Dimension(_))));
    }

    #[test]
    fn quantize_generators() {
        let th = AbelianTheory::cyclic(3);
        let x = quantize(&th, &CoulombElement::monopole(&cw(&[1]))).unwrap();
        assert_eq!(x, DifferenceOperator::term(cw(&[1]), Poly::var(2, 0).pow(3)));
        let y = quantize(&th, &CoulombElement::monopole(&cw(&[-1]))).unwrap();
        assert_eq!(y, DifferenceOperator::shift(&cw(&[-1])));

        let torus = AbelianTheory::new(2, vec![]).unwrap();
        let lam = cw(&[2, -1]);
        assert_eq!(
            quantize(&torus, &CoulombElement::monopole(&lam)).unwrap(),
            DifferenceOperator::shift(&lam)
        );
    }

    #[test]
    fn quantum_relations_cyclic() {
        for ell in 1..=5u32 {
            let th = AbelianTheory::cyclic(ell as usize);
            let (xy, yx) = quantum_relation(&th, &cw(&[1])).unwrap();
            let wq = Poly::var(2, 0);
            let h = Poly::var(2, 1);
            assert_eq!(xy, DifferenceOperator::multiplication(wq.pow(ell)));
            assert_eq!(yx, DifferenceOperator::multiplication((&wq - &h).pow(ell)));
        }
        let torus = AbelianTheory::new(1, vec![]).unwrap();
        let (a, b) = quantum_relation(&torus, &cw(&[3])).unwrap();
        assert_eq!(a, DifferenceOperator::one(1));
        assert_eq!(b, DifferenceOperator::one(1));
    }

    #[test]
    fn quantum_relation_opposite_characters() {
        // u_1 = w e^1, u_{-1} = (−w) e^{−1}
        let th = AbelianTheory::new(1, vec![Character(vec![1]), Character(vec![-1])]).unwrap();
        let (left, right) = quantum_relation(&th, &cw(&[1])).unwrap();
        let wq = Poly::var(2, 0);
        let h = Poly::var(2, 1);
        assert_eq!(left, DifferenceOperator::multiplication(-&(&wq.pow(2) + &(&h * &wq))));
        assert_eq!(right, DifferenceOperator::multiplication(&(&h * &wq) - &wq.pow(2)));
    }

    #[test]
    fn poisson_examples() {
        for ell in 1..=5u32 {
            let th = AbelianTheory::cyclic(ell as usize);
            let br = poisson(&th, &CoulombElement::monopole(&cw(&[1])), &CoulombElement::monopole(&cw(&[-1]))).unwrap();
            assert_eq!(br, CoulombElement::term(cw(&[0]), w(1).pow(ell - 1).scale(&rat(ell as i64))));
        }
        let th = AbelianTheory::new(2, vec![Character(vec![1, 0])]).unwrap();
        assert!(poisson(&th, &CoulombElement::w(2, 0), &CoulombElement::w(2, 1)).unwrap().is_zero());

        let torus = AbelianTheory::new(2, vec![]).unwrap();
        let lam = cw(&[2, -3]);
        let br = poisson(&torus, &CoulombElement::monopole(&lam), &CoulombElement::w(2, 0)).unwrap();
        assert_eq!(br, CoulombElement::monopole(&lam).scale(&rat(2)));
    }

    #[test]
    fn grading_examples() {
        let th = AbelianTheory::cyclic(2);
        assert_eq!(grading_degree(&th, &CoulombElement::one(1)).unwrap(), HalfInt::ZERO);
        assert_eq!(
            grading_degree(&th, &CoulombElement::monopole(&cw(&[1]))).unwrap(),
            HalfInt::from_int(1)
        );
        assert_eq!(grading_degree(&th, &CoulombElement::w(1, 0)).unwrap(), HalfInt::from_int(1));
        let mixed = &CoulombElement::w(1, 0) + &CoulombElement::one(1);
        assert!(matches!(grading_degree(&th, &mixed), Err(Error::Domain(_))));
        // x and w are both degree 1 for ℓ = 2, so their sum is homogeneous
        let sum = &CoulombElement::w(1, 0) + &CoulombElement::monopole(&cw(&[1]));
        assert_eq!(grading_degree(&th, &sum).unwrap(), HalfInt::from_int(1));
    }

    #[test]
    fn hilbert_examples() {
        let cancel = CancelToken::new();
        let h = hilbert_series(&AbelianTheory::cyclic(2), HalfInt::from_int(3), &cancel).unwrap();
        assert_eq!(h.coefficients(), &[1, 0, 3, 0, 5, 0, 7]);
        let h = hilbert_series(&AbelianTheory::cyclic(1), HalfInt::from_int(1), &cancel).unwrap();
        assert_eq!(h.coefficients(), &[1, 2, 3]);
        let torus = AbelianTheory::new(1, vec![]).unwrap();
        assert!(matches!(
            hilbert_series(&torus, HalfInt::from_int(1), &cancel),
            Err(Error::ImproperDegree(_))
        ));
        let trivial = AbelianTheory::new(0, vec![]).unwrap();
        assert_eq!(
            hilbert_series(&trivial, HalfInt::from_int(1), &cancel).unwrap().coefficients(),
            &[1, 0, 0]
        );
    }

    #[test]
    fn hilbert_respects_cancellation() {
        let cancel = CancelToken::new();
        cancel.cancel();
        assert_eq!(
            hilbert_series(&AbelianTheory::cyclic(1), HalfInt::from_int(2), &cancel),
            Err(Error::Cancelled)
        );
    }

    #[test]
    fn birationality_examples() {
        let th = AbelianTheory::cyclic(1);
        assert_eq!(birationality_witness(&th, &cw(&[0])).unwrap(), Poly::one(1));
        assert_eq!(birationality_witness(&th, &cw(&[1])).unwrap(), w(1));
        let th = AbelianTheory::new(2, vec![Character(vec![1, 0]), Character(vec![1, 1])]).unwrap();
        assert_eq!(birationality_witness(&th, &cw(&[1, -1])).unwrap(), Poly::var(2, 0));
    }
}
