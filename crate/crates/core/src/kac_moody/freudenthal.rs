use std::collections::{BTreeMap, BTreeSet};

use crate::cancel::CancelToken;
use crate::error::{Error, Result};

use super::cartan::CartanMatrix;
use super::roots::root_multiplicities;
use super::weight::{root_difference, Weight};

/// Weight multiplicities of the integrable module `V(λ)`, indexed by
/// `β = λ − μ` in simple-root coordinates, down to a depth (height of β).
#[derive(Debug, Clone)]
pub struct WeightSystem {
    gcm: CartanMatrix,
    highest: Weight,
    depth: usize,
    complete: bool,
    mults: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    /// Runs Freudenthal's recursion to `depth` simple-root subtractions.
    /// `depth = None` asks for the whole (finite) support and is only
    /// accepted for finite type.
    pub fn new(gcm: &CartanMatrix, lam: &Weight, depth: Option<usize>, cancel: &CancelToken) -> Result<Self> {
        if lam.rank() != gcm.size() {
            return Err(Error::Dimension(format!(
                "weight of length {} for a rank-{} Cartan matrix",
                lam.rank(),
                gcm.size()
            )));
        }
        if !lam.is_dominant() {
            return Err(Error::Domain(format!("highest weight {lam} is not dominant")));
        }
        let limit = match depth {
            Some(d) => d,
            None if gcm.is_finite() => usize::MAX,
            None => {
                return Err(Error::Domain(format!(
                    "the weight support is infinite for {} type; a depth bound is required",
                    gcm.kind()
                )))
            }
        };
        let n = gcm.size();
        let root_height = if gcm.is_finite() { 4 * n * n + 4 } else { limit };
        let roots = root_multiplicities(gcm, root_height.max(1), cancel)?;
        let pos_roots: Vec<(Vec<i64>, u64)> = roots.iter().map(|(k, m)| (k.clone(), m)).collect();

        let mut mults: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        mults.insert(vec![0; n], 1);
        let mut frontier: Vec<Vec<i64>> = vec![vec![0; n]];
        let mut h = 0usize;
        let mut complete = false;
        while h < limit {
            cancel.check()?;
            h += 1;
            let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
            for b in &frontier {
                for i in 0..n {
                    let mut c = b.clone();
                    c[i] += 1;
                    candidates.insert(c);
                }
            }
            let mut next = Vec::new();
            for beta in candidates {
                cancel.check()?;
                let m = freudenthal_step(gcm, lam, &beta, &pos_roots, &mults);
                if m > 0 {
                    mults.insert(beta.clone(), m);
                    next.push(beta);
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            frontier = next;
        }
        Ok(WeightSystem {
            gcm: gcm.clone(),
            highest: lam.clone(),
            depth: h,
            complete,
            mults,
        })
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    /// Height bound actually explored.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// True when the computed support is the whole support.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Multiplicity at `β = λ − μ` given in root coordinates.
    pub fn at_depth(&self, beta: &[i64]) -> u64 {
        self.mults.get(beta).copied().unwrap_or(0)
    }

    /// `dim V_μ(λ)`, or a bound error when μ is deeper than the explored range.
    pub fn multiplicity(&self, mu: &Weight) -> Result<u64> {
        let Some(beta) = root_difference(&self.gcm, &self.highest, mu)? else {
            return Ok(0);
        };
        if beta.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        let h: i64 = beta.iter().sum();
        if !self.complete && h as usize > self.depth {
            return Err(Error::Domain(format!(
                "weight {mu} lies at depth {h}, beyond the computed depth {}",
                self.depth
            )));
        }
        Ok(self.at_depth(&beta))
    }

    /// `(μ, dim V_μ(λ))` over the computed support, sorted by depth then coordinates.
    pub fn weights(&self) -> Vec<(Weight, u64)> {
        let mut entries: Vec<(&Vec<i64>, u64)> = self.mults.iter().map(|(k, &v)| (k, v)).collect();
        entries.sort_by_key(|(k, _)| (k.iter().sum::<i64>(), (*k).clone()));
        entries
            .into_iter()
            .map(|(beta, m)| (self.highest.sub(&self.gcm.root_combination(beta)), m))
            .collect()
    }

    /// Raw `β ↦ multiplicity` table.
    pub fn by_root_coordinates(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.mults
    }

    /// Total dimension of the computed part.
    pub fn dimension(&self) -> u64 {
        self.mults.values().sum()
    }
}

/// Freudenthal at `μ = λ − β`:
/// `((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)) m_μ = 2 Σ_α mult(α) Σ_{k≥1} (μ+kα, α) m_{μ+kα}`,
/// with the left factor equal to `2(λ+ρ, β) − (β, β)`.
fn freudenthal_step(
    gcm: &CartanMatrix,
    lam: &Weight,
    beta: &[i64],
    roots: &[(Vec<i64>, u64)],
    mults: &BTreeMap<Vec<i64>, u64>,
) -> u64 {
    let lam_rho_beta: i128 = beta
        .iter()
        .zip(gcm.symmetrizers())
        .zip(&lam.fund)
        .map(|((&b, &d), &l)| (b * d * (l + 1)) as i128)
        .sum();
    let denom = 2 * lam_rho_beta - gcm.form(beta, beta) as i128;
    let mut num: i128 = 0;
    for (alpha, ma) in roots {
        if alpha.iter().zip(beta).any(|(a, b)| a > b) {
            continue;
        }
        // γ = β − kα, weight λ − γ; (λ − γ, α) = (λ, α) − (γ, α)
        let lam_alpha = gcm.weight_form(lam, alpha) as i128;
        let mut gamma: Vec<i64> = beta.to_vec();
        loop {
            for (g, a) in gamma.iter_mut().zip(alpha) {
                *g -= a;
            }
            if gamma.iter().any(|&g| g < 0) {
                break;
            }
            let Some(&m) = mults.get(&gamma) else { continue };
            num += *ma as i128 * (lam_alpha - gcm.form(&gamma, alpha) as i128) * m as i128;
        }
    }
    num *= 2;
    if num == 0 {
        return 0;
    }
    assert!(denom > 0, "Freudenthal denominator vanished at {beta:?}");
    assert!(num % denom == 0, "Freudenthal quotient not integral at {beta:?}");
    let m = num / denom;
    assert!(m >= 0, "negative multiplicity at {beta:?}");
    m as u64
}

/// `dim V_μ(λ)`; explores exactly as deep as μ requires.
pub fn weight_multiplicity(gcm: &CartanMatrix, lam: &Weight, mu: &Weight, cancel: &CancelToken) -> Result<u64> {
    if !lam.is_dominant() {
        return Err(Error::Domain(format!("highest weight {lam} is not dominant")));
    }
    let Some(beta) = root_difference(gcm, lam, mu)? else {
        return Ok(0);
    };
    if beta.iter().any(|&x| x < 0) {
        return Ok(0);
    }
    let h = beta.iter().sum::<i64>() as usize;
    let ws = WeightSystem::new(gcm, lam, Some(h), cancel)?;
    Ok(ws.at_depth(&beta))
}
