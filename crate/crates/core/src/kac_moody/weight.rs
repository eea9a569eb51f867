use std::fmt;

use crate::error::{Error, Result};

use super::cartan::CartanMatrix;

/// An integral weight `Σ fund_i ϖ_i + delta·δ`. The δ part is carried only
/// for affine matrices and pairs to zero with every simple coroot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub fund: Vec<i64>,
    pub delta: i64,
}

impl Weight {
    pub fn new(fund: Vec<i64>, delta: i64) -> Self {
        Weight { fund, delta }
    }

    pub fn finite(fund: Vec<i64>) -> Self {
        Weight { fund, delta: 0 }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::finite(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut fund = vec![0; rank];
        fund[i] = 1;
        Weight::finite(fund)
    }

    pub fn rank(&self) -> usize {
        self.fund.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.fund.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&other.fund).map(|(a, b)| a + b).collect(),
            delta: self.delta + other.delta,
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            fund: self.fund.iter().zip(&other.fund).map(|(a, b)| a - b).collect(),
            delta: self.delta - other.delta,
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight {
            fund: self.fund.iter().map(|a| a * k).collect(),
            delta: self.delta * k,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fund.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))?;
        if self.delta != 0 {
            write!(f, "{:+}δ", self.delta)?;
        }
        Ok(())
    }
}

fn check_rank(gcm: &CartanMatrix, w: &Weight) -> Result<()> {
    if w.rank() != gcm.size() {
        return Err(Error::Dimension(format!(
            "weight of length {} for a rank-{} Cartan matrix",
            w.rank(),
            gcm.size()
        )));
    }
    Ok(())
}

/// Simple-root coordinates of `lam − mu` when it lies in the root lattice.
pub fn root_difference(gcm: &CartanMatrix, lam: &Weight, mu: &Weight) -> Result<Option<Vec<i64>>> {
    check_rank(gcm, lam)?;
    check_rank(gcm, mu)?;
    gcm.root_coordinates(&lam.sub(mu))
}

/// `mu ≤ lam` in the dominance order.
pub fn dominance_leq(gcm: &CartanMatrix, mu: &Weight, lam: &Weight) -> Result<bool> {
    Ok(root_difference(gcm, lam, mu)?.is_some_and(|c| c.iter().all(|&x| x >= 0)))
}

/// Pairing with the canonical central element `Σ a_i^∨ α_i^∨`.
pub fn level(gcm: &CartanMatrix, lam: &Weight) -> Result<i64> {
    check_rank(gcm, lam)?;
    let labels = gcm
        .dual_kac_labels()
        .ok_or_else(|| Error::Unsupported(format!("level is defined for affine matrices, not {}", gcm.kind())))?;
    Ok(labels.iter().zip(&lam.fund).map(|(a, l)| a * l).sum())
}

/// The null root `δ = Σ a_i α_i`.
pub fn null_root(gcm: &CartanMatrix) -> Result<Weight> {
    let labels = gcm
        .kac_labels()
        .ok_or_else(|| Error::Unsupported(format!("{} matrices have no null root", gcm.kind())))?;
    Ok(gcm.root_combination(labels))
}

/// `s_i(mu) = mu − ⟨mu, α_i^∨⟩ α_i`.
pub fn reflect(gcm: &CartanMatrix, i: usize, mu: &Weight) -> Weight {
    mu.sub(&gcm.simple_root(i).scale(mu.fund[i]))
}

/// Height of a root-lattice vector in simple-root coordinates.
pub fn height(coords: &[i64]) -> i64 {
    coords.iter().sum()
}
