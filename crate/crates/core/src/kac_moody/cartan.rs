//! Generalized Cartan matrices, their symmetrizers and classification.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, IntMatrix};
use crate::linalg;
use crate::poly::{rat, Rational};

use super::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanKind {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanKind::Finite => "finite",
            CartanKind::Affine => "affine",
            CartanKind::Indefinite => "indefinite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct AffineData {
    /// Kac labels `a`: the positive primitive vector with `A·a = 0`.
    pub labels: Vec<i64>,
    /// Dual Kac labels `a^∨`: `Aᵀ·a^∨ = 0`.
    pub dual_labels: Vec<i64>,
    /// A node with Kac label 1; `⟨d, α_j⟩ = [j = special]`.
    pub special: usize,
}

/// A symmetrizable generalized Cartan matrix, `a_ij = ⟨α_i^∨, α_j⟩`.
///
/// The invariant form on the root lattice is `(α_i, α_j) = d_i·a_ij`, so
/// `(α_i, α_i) = 2d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    kind: CartanKind,
    affine: Option<AffineData>,
    /// Inverse of `A` when it is nonsingular.
    inverse: Option<Vec<Vec<Rational>>>,
}

/// Checks the GCM axioms, computes minimal symmetrizers and classifies.
pub fn validate_and_symmetrize(raw: &IntMatrix) -> Result<CartanMatrix> {
    if raw.rows() != raw.cols() {
        return Err(Error::Structural(format!("{}x{} matrix is not square", raw.rows(), raw.cols())));
    }
    let a = raw
        .to_i64_rows()
        .ok_or_else(|| Error::Structural("entries exceed 64 bits".into()))?;
    CartanMatrix::from_rows(a)
}

impl CartanMatrix {
    pub fn from_rows(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::Structural(format!("diagonal entry a_{i}{i} = {} is not 2", row[i])));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if x > 0 {
                    return Err(Error::Structural(format!("off-diagonal entry a_{i}{j} = {x} is positive")));
                }
                if (x == 0) != (a[j][i] == 0) {
                    return Err(Error::Structural(format!("a_{i}{j} and a_{j}{i} must vanish together")));
                }
            }
        }
        let d = symmetrizers(&a)?;
        let mut gcm = CartanMatrix {
            a,
            d,
            kind: CartanKind::Indefinite,
            affine: None,
            inverse: None,
        };
        gcm.inverse = linalg::inverse(&linalg::to_rational(&gcm.a));
        gcm.classify();
        Ok(gcm)
    }

    fn classify(&mut self) {
        let n = self.a.len();
        let sym = self.symmetrized();
        let all: Vec<usize> = (0..n).collect();
        if is_positive_definite(&sym, &all) {
            self.kind = CartanKind::Finite;
            return;
        }
        if n == 0 || self.components().len() != 1 || self.inverse.is_some() {
            return;
        }
        let proper_finite = (0..n).all(|skip| {
            let idx: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
            is_positive_definite(&sym, &idx)
        });
        if !proper_finite {
            return;
        }
        let labels = positive_kernel_vector(&self.a);
        let dual_labels = positive_kernel_vector(&transpose(&self.a));
        let (Some(labels), Some(dual_labels)) = (labels, dual_labels) else {
            return;
        };
        let Some(special) = labels.iter().position(|&x| x == 1) else {
            return;
        };
        self.kind = CartanKind::Affine;
        self.affine = Some(AffineData {
            labels,
            dual_labels,
            special,
        });
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == CartanKind::Finite
    }

    pub fn is_affine(&self) -> bool {
        self.kind == CartanKind::Affine
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size()).all(|i| (0..self.size()).all(|j| self.a[i][j] == self.a[j][i]))
    }

    /// Kac labels of an affine matrix.
    pub fn kac_labels(&self) -> Option<&[i64]> {
        self.affine.as_ref().map(|a| a.labels.as_slice())
    }

    /// Dual Kac labels: coefficients of the canonical central element on the simple coroots.
    pub fn dual_kac_labels(&self) -> Option<&[i64]> {
        self.affine.as_ref().map(|a| a.dual_labels.as_slice())
    }

    /// `B = D·A`, the symmetric matrix of the invariant form on simple roots.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        self.a
            .iter()
            .zip(&self.d)
            .map(|(row, &di)| row.iter().map(|&x| di * x).collect())
            .collect()
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && self.a[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `(β, γ)` for root-lattice vectors in simple-root coordinates.
    pub fn form(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &bi) in beta.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            let di = self.d[i];
            for (j, &gj) in gamma.iter().enumerate() {
                s += bi * gj * di * self.a[i][j];
            }
        }
        s
    }

    /// `(λ, β)` for a weight `λ` and a root-lattice vector `β`; the δ part of
    /// `λ` pairs trivially with every simple root.
    pub fn weight_form(&self, lam: &Weight, beta: &[i64]) -> i64 {
        beta.iter()
            .zip(&self.d)
            .zip(&lam.fund)
            .map(|((b, d), l)| b * d * l)
            .sum()
    }

    /// `(ρ, β) = Σ_j β_j d_j`.
    pub fn rho_form(&self, beta: &[i64]) -> i64 {
        beta.iter().zip(&self.d).map(|(b, d)| b * d).sum()
    }

    /// The weight `Σ_j c_j α_j`.
    pub fn root_combination(&self, coeffs: &[i64]) -> Weight {
        let fund = self
            .a
            .iter()
            .map(|row| row.iter().zip(coeffs).map(|(a, c)| a * c).sum())
            .collect();
        let delta = self.affine.as_ref().map_or(0, |af| coeffs[af.special]);
        Weight { fund, delta }
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        let mut e = vec![0; self.size()];
        e[j] = 1;
        self.root_combination(&e)
    }

    /// Writes a weight in the root lattice as `Σ_j c_j α_j`. Returns
    /// `Ok(None)` when the weight lies outside the root lattice.
    pub fn root_coordinates(&self, diff: &Weight) -> Result<Option<Vec<i64>>> {
        if diff.fund.len() != self.size() {
            return Err(Error::Dimension(format!(
                "weight of length {} for a rank-{} Cartan matrix",
                diff.fund.len(),
                self.size()
            )));
        }
        let coords: Vec<Rational> = if let Some(inv) = &self.inverse {
            if self.kind != CartanKind::Finite && diff.delta != 0 {
                return Ok(None);
            }
            inv.iter()
                .map(|row| row.iter().zip(&diff.fund).map(|(x, &f)| x * rat(f)).sum())
                .collect()
        } else if let Some(af) = &self.affine {
            // fix c_s = δ-coordinate, solve the remaining finite-type system,
            // then check the row that was dropped
            let s = af.special;
            let idx: Vec<usize> = (0..self.size()).filter(|&i| i != s).collect();
            let sub: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| rat(self.a[i][j])).collect())
                .collect();
            let rhs: Vec<Rational> = idx.iter().map(|&i| rat(diff.fund[i] - self.a[i][s] * diff.delta)).collect();
            let sol = linalg::solve(&sub, &rhs).expect("proper principal submatrix of an affine matrix is invertible");
            let mut c = vec![rat(0); self.size()];
            c[s] = rat(diff.delta);
            for (k, &i) in idx.iter().enumerate() {
                c[i] = sol[k].clone();
            }
            let check: Rational = (0..self.size()).map(|j| rat(self.a[s][j]) * &c[j]).sum();
            if check != rat(diff.fund[s]) {
                return Ok(None);
            }
            c
        } else {
            return Err(Error::Unsupported(
                "root coordinates for a singular non-affine Cartan matrix need an extended realization".into(),
            ));
        };
        if coords.iter().any(|c| !c.is_integer()) {
            return Ok(None);
        }
        Ok(Some(coords.iter().map(|c| c.to_integer().to_i64().expect("small")).collect()))
    }

    /// Same matrix with entries `a_ji`.
    pub fn langlands_dual(&self) -> CartanMatrix {
        CartanMatrix::from_rows(transpose(&self.a)).expect("transpose of a symmetrizable GCM is one")
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.a).expect("square")
    }
}

/// Free function form of [`CartanMatrix::langlands_dual`].
pub fn langlands_dual(gcm: &CartanMatrix) -> CartanMatrix {
    gcm.langlands_dual()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Minimal positive integers with `d_i a_ij = d_j a_ji`, normalized per
/// connected component.
fn symmetrizers(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(rat(1));
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                // d_j = d_i a_ij / a_ji
                let dj = &di * rat(a[i][j]) / rat(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(Error::Symmetrizability(format!(
                            "inconsistent ratios around the cycle through nodes {i} and {j}"
                        )));
                    }
                    Some(_) => {}
                }
            }
            k += 1;
        }
        comps.push(comp);
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let mut out = vec![0i64; n];
    for comp in comps {
        let lcm = comp.iter().fold(num_bigint::BigInt::from(1), |acc, &i| acc.lcm(d[i].denom()));
        let ints: Vec<num_bigint::BigInt> = comp.iter().map(|&i| (&d[i] * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, x) in comp.iter().zip(&ints) {
            out[i] = (x / &g).abs().to_i64().ok_or_else(|| Error::Symmetrizability("symmetrizer overflow".into()))?;
        }
    }
    Ok(out)
}

/// Sylvester's criterion on the principal submatrix indexed by `idx`.
fn is_positive_definite(sym: &[Vec<i64>], idx: &[usize]) -> bool {
    (1..=idx.len()).all(|k| {
        let rows: Vec<Vec<i64>> = idx[..k].iter().map(|&i| idx[..k].iter().map(|&j| sym[i][j]).collect()).collect();
        IntMatrix::from_rows(&rows)
            .expect("square")
            .determinant()
            .expect("square")
            .is_positive()
    })
}

/// The primitive kernel vector with positive entries, when the kernel is a line
/// spanned by such a vector.
fn positive_kernel_vector(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let k = kernel_basis(&IntMatrix::from_rows(a).ok()?);
    if k.cols() != 1 {
        return None;
    }
    let v: Vec<i64> = k.column(0).iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let sign = if v.iter().all(|&x| x > 0) {
        1
    } else if v.iter().all(|&x| x < 0) {
        -1
    } else {
        return None;
    };
    Some(v.into_iter().map(|x| sign * x).collect())
}
