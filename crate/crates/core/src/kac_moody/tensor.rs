use std::collections::BTreeMap;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};

use super::cartan::CartanMatrix;
use super::freudenthal::WeightSystem;
use super::weight::{root_difference, Weight};

/// Coordinates of `λ¹ + λ² − μ` when μ is below `λ¹ + λ²`.
fn depth_of(gcm: &CartanMatrix, lam1: &Weight, lam2: &Weight, mu: &Weight) -> Result<Option<Vec<i64>>> {
    Ok(root_difference(gcm, &lam1.add(lam2), mu)?.filter(|b| b.iter().all(|&x| x >= 0)))
}

/// Pairs `(μ¹, μ²)` with `μ¹ + μ² = μ` and both multiplicities positive,
/// together with the product of those multiplicities.
pub fn tensor_weight_pairs(
    gcm: &CartanMatrix,
    lam1: &Weight,
    lam2: &Weight,
    mu: &Weight,
    cancel: &CancelToken,
) -> Result<Vec<(Weight, Weight, u64)>> {
    let Some(beta) = depth_of(gcm, lam1, lam2, mu)? else {
        return Ok(Vec::new());
    };
    let h = beta.iter().sum::<i64>() as usize;
    let ws1 = WeightSystem::new(gcm, lam1, Some(h), cancel)?;
    let ws2 = WeightSystem::new(gcm, lam2, Some(h), cancel)?;
    let mut out = Vec::new();
    for (b1, &m1) in ws1.by_root_coordinates() {
        if b1.iter().zip(&beta).any(|(x, y)| x > y) {
            continue;
        }
        let b2: Vec<i64> = beta.iter().zip(b1).map(|(x, y)| x - y).collect();
        let m2 = ws2.at_depth(&b2);
        if m2 > 0 {
            out.push((
                lam1.sub(&gcm.root_combination(b1)),
                lam2.sub(&gcm.root_combination(&b2)),
                m1 * m2,
            ));
        }
    }
    Ok(out)
}

/// `dim (V(λ¹) ⊗ V(λ²))_μ`.
pub fn tensor_weight_mult(gcm: &CartanMatrix, lam1: &Weight, lam2: &Weight, mu: &Weight, cancel: &CancelToken) -> Result<u64> {
    Ok(tensor_weight_pairs(gcm, lam1, lam2, mu, cancel)?.iter().map(|(_, _, m)| m).sum())
}

/// Irreducible decomposition of `V(λ¹) ⊗ V(λ²)` for finite type, as
/// highest weight ↦ multiplicity.
pub fn tensor_decompose(
    gcm: &CartanMatrix,
    lam1: &Weight,
    lam2: &Weight,
    cancel: &CancelToken,
) -> Result<BTreeMap<Weight, u64>> {
    if !gcm.is_finite() {
        return Err(Error::Unsupported(format!(
            "tensor decomposition needs finite type, got {}",
            gcm.kind()
        )));
    }
    let ws1 = WeightSystem::new(gcm, lam1, None, cancel)?;
    let ws2 = WeightSystem::new(gcm, lam2, None, cancel)?;
    // character of the product, indexed by depth below λ¹ + λ²
    let mut remaining: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (b1, &m1) in ws1.by_root_coordinates() {
        for (b2, &m2) in ws2.by_root_coordinates() {
            let b: Vec<i64> = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
            *remaining.entry(b).or_default() += (m1 * m2) as i64;
        }
    }
    let top = lam1.add(lam2);
    let mut out = BTreeMap::new();
    loop {
        cancel.check()?;
        remaining.retain(|_, m| *m != 0);
        let Some(beta) = remaining
            .keys()
            .min_by_key(|b| (b.iter().sum::<i64>(), (*b).clone()))
            .cloned()
        else {
            break;
        };
        let m = remaining[&beta];
        assert!(m > 0, "negative remainder while peeling {beta:?}");
        let nu = top.sub(&gcm.root_combination(&beta));
        assert!(nu.is_dominant(), "maximal remaining weight {nu} is not dominant");
        let ws = WeightSystem::new(gcm, &nu, None, cancel)?;
        for (b, &k) in ws.by_root_coordinates() {
            let shifted: Vec<i64> = beta.iter().zip(b).map(|(x, y)| x + y).collect();
            *remaining.entry(shifted).or_default() -= m * k as i64;
        }
        out.insert(nu, m as u64);
    }
    Ok(out)
}
