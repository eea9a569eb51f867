//! Quiver gauge theories: gauge data, slice parameters `(λ, μ)` and the
//! combinatorial shadows attached to them.

use std::collections::BTreeMap;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::graded::{GradedDims, HalfInt};
use crate::kac_moody::{
    level, null_root, root_difference, weight_multiplicity, CartanMatrix, Weight, WeightSystem,
};
use crate::lattice::{pairing, Character, Coweight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= vertices || b >= vertices {
                return Err(Error::Structural(format!(
                    "edge {k} ({a}→{b}) has an endpoint outside 0..{vertices}"
                )));
            }
        }
        Ok(Quiver { vertices, edges })
    }

    /// One vertex with one loop.
    pub fn jordan() -> Self {
        Quiver {
            vertices: 1,
            edges: vec![(0, 0)],
        }
    }

    /// The path `0 → 1 → ... → n-1`.
    pub fn linear(n: usize) -> Self {
        Quiver {
            vertices: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// Cartan matrix of the underlying graph, `a_ij = −#{edges between i and j}`.
    pub fn cartan_matrix(&self) -> Result<CartanMatrix> {
        if self.has_loops() {
            return Err(Error::Unsupported("a quiver with loops has no Cartan matrix".into()));
        }
        let n = self.vertices;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &self.edges {
            a[i][j] -= 1;
            a[j][i] -= 1;
        }
        CartanMatrix::from_rows(a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVectors {
    pub v: Vec<u64>,
    pub w: Vec<u64>,
}

impl DimVectors {
    pub fn new(v: Vec<u64>, w: Vec<u64>) -> Self {
        DimVectors { v, w }
    }

    fn check(&self, q: &Quiver) -> Result<()> {
        if self.v.len() != q.vertices() || self.w.len() != q.vertices() {
            return Err(Error::Dimension(format!(
                "dimension vectors of lengths {} and {} for {} vertices",
                self.v.len(),
                self.w.len(),
                q.vertices()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummandKind {
    /// `Hom(V_out, V_in)` for the edge with this index.
    Edge(usize),
    /// `Hom(W_i, V_i)` at this vertex.
    Framing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub kind: SummandKind,
    pub source_dim: u64,
    pub target_dim: u64,
}

impl Summand {
    pub fn dim(&self) -> u64 {
        self.source_dim * self.target_dim
    }
}

/// `G = Π GL(V_i)` and `N = ⊕_h Hom(V_out, V_in) ⊕ ⊕_i Hom(W_i, V_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeData {
    pub ranks: Vec<u64>,
    pub summands: Vec<Summand>,
    pub dim_g: u64,
    pub dim_n: u64,
}

pub fn gauge_data(q: &Quiver, d: &DimVectors) -> Result<GaugeData> {
    d.check(q)?;
    let mut summands: Vec<Summand> = q
        .edges()
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| Summand {
            kind: SummandKind::Edge(k),
            source_dim: d.v[a],
            target_dim: d.v[b],
        })
        .collect();
    summands.extend((0..q.vertices()).map(|i| Summand {
        kind: SummandKind::Framing(i),
        source_dim: d.w[i],
        target_dim: d.v[i],
    }));
    Ok(GaugeData {
        ranks: d.v.clone(),
        dim_g: d.v.iter().map(|x| x * x).sum(),
        dim_n: summands.iter().map(Summand::dim).sum(),
        summands,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceParams {
    pub lam: Weight,
    pub mu: Weight,
    pub dims: DimVectors,
    pub mu_dominant: bool,
}

/// `λ = Σ w_i ϖ_i` and `μ = λ − Σ v_i α_i` for the Cartan matrix of the
/// underlying graph.
pub fn slice_params(q: &Quiver, d: &DimVectors) -> Result<SliceParams> {
    d.check(q)?;
    let gcm = q.cartan_matrix()?;
    let lam = Weight::finite(d.w.iter().map(|&x| x as i64).collect());
    let v: Vec<i64> = d.v.iter().map(|&x| x as i64).collect();
    let mu = lam.sub(&gcm.root_combination(&v));
    Ok(SliceParams {
        mu_dominant: mu.is_dominant(),
        lam,
        mu,
        dims: d.clone(),
    })
}

/// Inverse of [`slice_params`]: `w_i = ⟨λ, α_i^∨⟩` and `λ − μ = Σ v_i α_i`.
pub fn dims_from_weights(gcm: &CartanMatrix, lam: &Weight, mu: &Weight) -> Result<DimVectors> {
    if !lam.is_dominant() {
        return Err(Error::Domain(format!("{lam} is not dominant")));
    }
    let v = root_difference(gcm, lam, mu)?
        .filter(|v| v.iter().all(|&x| x >= 0))
        .ok_or_else(|| Error::InvalidSlice(format!("{lam} − {mu} is not a non-negative sum of simple roots")))?;
    Ok(DimVectors {
        v: v.into_iter().map(|x| x as u64).collect(),
        w: lam.fund.iter().map(|&x| x as u64).collect(),
    })
}

/// `Σ v_i` where `λ − μ = Σ v_i α_i`.
pub fn mv_dimension(gcm: &CartanMatrix, lam: &Weight, mu: &Weight) -> Result<u64> {
    let v = root_difference(gcm, lam, mu)?
        .ok_or_else(|| Error::Domain(format!("{lam} − {mu} is not in the root lattice")))?;
    if v.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("{lam} − {mu} has a negative simple-root coefficient")));
    }
    Ok(v.iter().sum::<i64>() as u64)
}

/// Whether `μ` is a weight of `V(λ)` for the Langlands dual matrix.
pub fn fixed_point_nonempty(gcm: &CartanMatrix, lam: &Weight, mu: &Weight, cancel: &CancelToken) -> Result<bool> {
    Ok(weight_multiplicity(&gcm.langlands_dual(), lam, mu, cancel)? > 0)
}

/// Dominant `κ` with `λ ≥ κ ≥ μ`, from `λ` downwards.
pub fn strata_finite(gcm: &CartanMatrix, lam: &Weight, mu: &Weight, cancel: &CancelToken) -> Result<Vec<Weight>> {
    if !gcm.is_finite() {
        return Err(Error::Unsupported(format!("finite-type strata requested for {} type", gcm.kind())));
    }
    if !lam.is_dominant() {
        return Err(Error::Domain(format!("{lam} is not dominant")));
    }
    dominant_between(gcm, lam, mu, cancel)
}

/// Dominant weights in the interval `[μ, top]`, ordered by depth below `top`.
fn dominant_between(gcm: &CartanMatrix, top: &Weight, mu: &Weight, cancel: &CancelToken) -> Result<Vec<Weight>> {
    let Some(span) = root_difference(gcm, top, mu)?.filter(|v| v.iter().all(|&x| x >= 0)) else {
        return Ok(Vec::new());
    };
    let mut found: Vec<(i64, Vec<i64>, Weight)> = Vec::new();
    let mut beta = vec![0i64; span.len()];
    loop {
        cancel.check()?;
        let kappa = top.sub(&gcm.root_combination(&beta));
        if kappa.is_dominant() {
            found.push((beta.iter().sum(), beta.clone(), kappa));
        }
        // odometer over the box 0 ≤ β ≤ span
        let mut i = 0;
        while i < beta.len() && beta[i] == span[i] {
            beta[i] = 0;
            i += 1;
        }
        if i == beta.len() {
            break;
        }
        beta[i] += 1;
    }
    found.sort();
    Ok(found.into_iter().map(|(_, _, k)| k).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub kappa: Weight,
    /// Non-increasing positive parts.
    pub partition: Vec<u32>,
}

impl Stratum {
    pub fn size(&self) -> u32 {
        self.partition.iter().sum()
    }
}

/// Pairs `(κ, k̲)` with `κ` dominant, `λ − |k̲|δ ≥ κ ≥ μ` and `|k̲| ≤ bound`.
pub fn strata_affine(
    gcm: &CartanMatrix,
    lam: &Weight,
    mu: &Weight,
    bound: u32,
    cancel: &CancelToken,
) -> Result<Vec<Stratum>> {
    if !gcm.is_affine() {
        return Err(Error::Unsupported(format!("affine strata requested for {} type", gcm.kind())));
    }
    if !lam.is_dominant() {
        return Err(Error::Domain(format!("{lam} is not dominant")));
    }
    if level(gcm, lam)? < 1 {
        return Err(Error::Domain(format!("{lam} has level below 1")));
    }
    let delta = null_root(gcm)?;
    let mut out = Vec::new();
    for k in 0..=bound {
        let top = lam.sub(&delta.scale(k as i64));
        let kappas = dominant_between(gcm, &top, mu, cancel)?;
        if kappas.is_empty() {
            continue;
        }
        let parts = partitions(k);
        for kappa in kappas {
            for p in &parts {
                out.push(Stratum {
                    kappa: kappa.clone(),
                    partition: p.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Partitions of `n` in reverse lexicographic order: `[n]` first, `[1,…,1]` last.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Numbers of weights pairing negatively, trivially and positively with `μ`.
pub fn cocharacter_split(weights: &[Character], mu: &Coweight) -> Result<(usize, usize, usize)> {
    let mut counts = (0, 0, 0);
    for w in weights {
        match pairing(mu, w)?.signum() {
            -1 => counts.0 += 1,
            0 => counts.1 += 1,
            _ => counts.2 += 1,
        }
    }
    Ok(counts)
}

/// `dim G/P_μ` for `G = Π GL(n_k)`: pairs within a block with different entries.
pub fn parabolic_codim(gl_ranks: &[usize], mu_blocks: &[Vec<i64>]) -> Result<u64> {
    if gl_ranks.len() != mu_blocks.len() {
        return Err(Error::Dimension(format!(
            "{} GL factors but {} cocharacter blocks",
            gl_ranks.len(),
            mu_blocks.len()
        )));
    }
    let mut total = 0u64;
    for (k, (&n, block)) in gl_ranks.iter().zip(mu_blocks).enumerate() {
        if block.len() != n {
            return Err(Error::Dimension(format!("block {k} has {} entries for GL({n})", block.len())));
        }
        let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
        for &x in block {
            *counts.entry(x).or_default() += 1;
        }
        let n = n as u64;
        let same: u64 = counts.values().map(|c| c * (c - 1) / 2).sum();
        total += n * n.saturating_sub(1) / 2 - same;
    }
    Ok(total)
}

/// Graded dimensions of `ℂ[Symⁿ(S_ℓ)]`, `S_ℓ = {xy = z^ℓ}`, with `deg z = 1`
/// and `deg x = deg y = ℓ/2`.
pub fn jordan_coulomb_hilbert(n: usize, ell: u32, max_deg: HalfInt, cancel: &CancelToken) -> Result<GradedDims> {
    if ell == 0 {
        return Err(Error::Unsupported("ℓ = 0 gives a degenerate grading".into()));
    }
    let top = max_deg.twice();
    if top < 0 {
        return Ok(GradedDims::zeros(max_deg));
    }
    let top = top as usize;
    let ell = ell as usize;
    // twice-degrees of the basis x^a z^c and y^b z^c (b > 0)
    let mut basis = Vec::new();
    for c in 0..=top / 2 {
        let mut a = 0;
        while a * ell + 2 * c <= top {
            basis.push(a * ell + 2 * c);
            if a > 0 {
                basis.push(a * ell + 2 * c);
            }
            a += 1;
        }
    }
    // dp[s][t]: multisets of size s from the basis seen so far, twice-degree t
    let mut dp = vec![vec![0u64; top + 1]; n + 1];
    dp[0][0] = 1;
    for &deg in &basis {
        cancel.check()?;
        for s in 1..=n {
            for t in deg..=top {
                dp[s][t] += dp[s - 1][t - deg];
            }
        }
    }
    Ok(GradedDims::from_coefficients(dp[n].clone()))
}

/// Pairs `(μ¹, μ²)` with `μ¹ + μ² = μ`, each a weight of `V(λ^a)` for the
/// Langlands dual matrix, with both depths at most `depth`.
pub fn tensor_fixed_components(
    gcm: &CartanMatrix,
    lam1: &Weight,
    lam2: &Weight,
    mu: &Weight,
    depth: Option<usize>,
    cancel: &CancelToken,
) -> Result<Vec<(Weight, Weight)>> {
    let dual = gcm.langlands_dual();
    let Some(beta) = root_difference(&dual, &lam1.add(lam2), mu)?.filter(|b| b.iter().all(|&x| x >= 0)) else {
        return Ok(Vec::new());
    };
    let h = beta.iter().sum::<i64>() as usize;
    let limit = depth.map_or(h, |d| d.min(h));
    let ws1 = WeightSystem::new(&dual, lam1, Some(limit), cancel)?;
    let ws2 = WeightSystem::new(&dual, lam2, Some(limit), cancel)?;
    let mut out = Vec::new();
    for b1 in ws1.by_root_coordinates().keys() {
        if b1.iter().zip(&beta).any(|(x, y)| x > y) {
            continue;
        }
        let b2: Vec<i64> = beta.iter().zip(b1).map(|(x, y)| x - y).collect();
        if b2.iter().sum::<i64>() as usize <= limit && ws2.at_depth(&b2) > 0 {
            out.push((
                lam1.sub(&dual.root_combination(b1)),
                lam2.sub(&dual.root_combination(&b2)),
            ));
        }
    }
    Ok(out)
}
