//! Hamiltonian reduction of `ℂ^n ⊕ (ℂ^n)^*` by a torus, computed by exact
//! invariant theory, and its comparison with the abelian Coulomb branch.
//!
//! Coordinates are `x_1..x_n, y_1..y_n`, all of degree ½. The reducing torus
//! acts on `x_i` with weight `B_i` (row `i` of the charge matrix) and on
//! `y_i` with `−B_i`.

use std::collections::BTreeMap;

use crate::abelian::{self, AbelianTheory};
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::graded::{GradedDims, HalfInt};
use crate::lattice::{dual_sequence, IntMatrix};
use crate::linalg::{self, EchelonBasis};
use crate::poly::{rat, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiggsTheory {
    charges: Vec<Vec<i64>>,
    m: usize,
}

impl HiggsTheory {
    /// `charges` is the `n×m` matrix `B`; its columns must be linearly independent.
    pub fn new(b: &IntMatrix) -> Result<Self> {
        let charges = b
            .to_i64_rows()
            .ok_or_else(|| Error::Domain("charge matrix entries exceed 64 bits".into()))?;
        if b.cols() > 0 && linalg::rank(&linalg::to_rational(&charges)) != b.cols() {
            return Err(Error::Domain("charge matrix columns are linearly dependent".into()));
        }
        Ok(HiggsTheory { charges, m: b.cols() })
    }

    pub fn n(&self) -> usize {
        self.charges.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.m
    }

    pub fn charges(&self) -> &[Vec<i64>] {
        &self.charges
    }

    fn weight(&self, exps: &[u32]) -> Vec<i64> {
        let n = self.n();
        let mut w = vec![0i64; self.m];
        for i in 0..n {
            let c = exps[i] as i64 - exps[n + i] as i64;
            if c != 0 {
                for (wj, bij) in w.iter_mut().zip(&self.charges[i]) {
                    *wj += c * bij;
                }
            }
        }
        w
    }
}

/// `μ_j = Σ_i B_ij x_i y_i`, one per coordinate of the reducing torus.
pub fn moment_ideal_generators(th: &HiggsTheory) -> Vec<Poly> {
    let n = th.n();
    (0..th.m)
        .map(|j| {
            let mut p = Poly::zero(2 * n);
            for i in 0..n {
                let mut e = vec![0; 2 * n];
                e[i] = 1;
                e[n + i] = 1;
                p = &p + &Poly::monomial(2 * n, e, rat(th.charges[i][j]));
            }
            p
        })
        .collect()
}

/// All exponent vectors of length `len` with entries summing to `total`.
pub(crate) fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == len {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=total).rev() {
            prefix.push(k);
            rec(len, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(len, total, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Weight-zero monomials of a given half-degree, grouped by their weight
/// `a − b ∈ ℤ^n` under the full torus `(ℂ^×)^n`.
fn invariant_blocks(th: &HiggsTheory, half_degree: u32) -> BTreeMap<Vec<i64>, Vec<Vec<u32>>> {
    let n = th.n();
    let mut blocks: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for exps in compositions(2 * n, half_degree) {
        if th.weight(&exps).iter().all(|&w| w == 0) {
            let c: Vec<i64> = (0..n).map(|i| exps[i] as i64 - exps[n + i] as i64).collect();
            blocks.entry(c).or_default().push(exps);
        }
    }
    for v in blocks.values_mut() {
        v.sort();
    }
    blocks
}

/// Graded dimensions of `(ℚ[x, y] / (μ_1..μ_m))^T` up to `max_deg`.
///
/// In each degree this is the number of weight-zero monomials minus the rank
/// of the weight-zero part of the ideal, `Σ_j μ_j · (weight-zero monomials of
/// degree d − 1)`. Every `μ_j` is invariant under the full torus `(ℂ^×)^n`, so
/// the rank computation splits exactly into blocks of fixed `(ℂ^×)^n`-weight.
pub fn invariant_hilbert(th: &HiggsTheory, max_deg: HalfInt, cancel: &CancelToken) -> Result<GradedDims> {
    let n = th.n();
    let gens = moment_ideal_generators(th);
    let mut out = GradedDims::zeros(max_deg);
    let top = max_deg.twice();
    if top < 0 {
        return Ok(out);
    }
    let mut previous: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut lower: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for d2 in 0..=top as u32 {
        cancel.check()?;
        let blocks = invariant_blocks(th, d2);
        let mut dim = 0u64;
        for (c, monos) in &blocks {
            let index: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut span = EchelonBasis::new(monos.len());
            if let Some(src) = lower.get(c) {
                for m in src {
                    for g in &gens {
                        let mut v = vec![Rational::from_integer(0.into()); monos.len()];
                        let mp = Poly::monomial(2 * n, m.clone(), rat(1));
                        for (e, coef) in (&mp * g).terms() {
                            v[index[e]] += coef;
                        }
                        span.insert(v);
                    }
                }
            }
            dim += (monos.len() - span.rank()) as u64;
        }
        out.add_at(d2 as usize, dim);
        lower = std::mem::replace(&mut previous, blocks);
    }
    Ok(out)
}

/// Graded comparison of the Coulomb branch of `(T, N)` with the Higgs branch
/// of the dual flavor torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub coulomb: GradedDims,
    pub higgs: GradedDims,
    /// Largest degree up to which the two tables agree.
    pub equal_up_to: Option<HalfInt>,
    pub verdict: bool,
    /// The charge matrix of the dual torus, `n × (n − k)`.
    pub dual_charges: IntMatrix,
}

/// `A` is the `n×k` cocharacter inclusion of `T` into `(ℂ^×)^n`.
pub fn coulomb_higgs_compare(a: &IntMatrix, max_deg: HalfInt, cancel: &CancelToken) -> Result<CompareReport> {
    let b = dual_sequence(a)?;
    let coulomb_side = AbelianTheory::from_inclusion(a)?;
    let higgs_side = HiggsTheory::new(&b)?;
    let coulomb = abelian::hilbert_series(&coulomb_side, max_deg, cancel)?;
    let higgs = invariant_hilbert(&higgs_side, max_deg, cancel)?;
    let equal_up_to = coulomb.agree_up_to(&higgs);
    let verdict = coulomb == higgs;
    Ok(CompareReport {
        coulomb,
        higgs,
        equal_up_to,
        verdict,
        dual_charges: b,
    })
}
