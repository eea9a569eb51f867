use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::cancel::CancelToken;
use crate::error::Result;
use crate::poly::{rat, Rational};

use super::cartan::CartanMatrix;

/// Positive roots up to a height bound, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    height: usize,
    roots: BTreeMap<Vec<i64>, u64>,
    complete: bool,
}

impl RootTable {
    pub fn height_bound(&self) -> usize {
        self.height
    }

    /// True when the table holds every positive root (finite type).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn multiplicity(&self, beta: &[i64]) -> u64 {
        self.roots.get(beta).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, u64)> {
        self.roots.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// All positive roots of height at most `height`, by Peterson's recursion
/// on `c_β = Σ_{n≥1} mult(β/n)/n`:
///
/// `((β, β) − 2(ρ, β)) c_β = Σ_{β'+β''=β} (β', β'') c_β' c_β''`.
pub fn root_multiplicities(gcm: &CartanMatrix, height: usize, cancel: &CancelToken) -> Result<RootTable> {
    let n = gcm.size();
    let mut roots: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    // nonzero c_β grouped by height
    let mut c_by_height: Vec<Vec<(Vec<i64>, Rational)>> = vec![Vec::new(); height + 1];
    let mut c_lookup: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut level_roots: Vec<Vec<i64>> = Vec::new();
    let mut complete = false;

    for h in 1..=height {
        cancel.check()?;
        let mut candidates: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
        if h == 1 {
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                candidates.insert(e);
            }
        } else {
            for r in &level_roots {
                for i in 0..n {
                    let mut b = r.clone();
                    b[i] += 1;
                    candidates.insert(b);
                }
            }
            for r in roots.keys() {
                let hr = r.iter().sum::<i64>() as usize;
                if hr > 0 && h % hr == 0 && h / hr >= 2 {
                    candidates.insert(r.iter().map(|x| x * (h / hr) as i64).collect());
                }
            }
        }

        let mut next_level = Vec::new();
        for beta in candidates {
            let s = multiple_sum(&beta, &roots);
            let (mult, c) = if h == 1 {
                (1u64, rat(1))
            } else {
                let coef = gcm.form(&beta, &beta) - 2 * gcm.rho_form(&beta);
                if coef == 0 {
                    (0, s)
                } else {
                    let mut rhs = Rational::zero();
                    for level in c_by_height.iter().take(h).skip(1) {
                        for (b1, c1) in level {
                            if b1.iter().zip(&beta).any(|(x, y)| x > y) {
                                continue;
                            }
                            let b2: Vec<i64> = beta.iter().zip(b1).map(|(x, y)| x - y).collect();
                            if let Some(c2) = c_lookup.get(&b2) {
                                rhs += rat(gcm.form(b1, &b2)) * c1 * c2;
                            }
                        }
                    }
                    let c = rhs / rat(coef);
                    let m = &c - &s;
                    assert!(
                        m.is_integer() && m >= rat(0),
                        "root multiplicity of {beta:?} is not a non-negative integer: {m}"
                    );
                    (m.to_integer().to_u64().expect("fits"), c)
                }
            };
            if mult > 0 {
                roots.insert(beta.clone(), mult);
                next_level.push(beta.clone());
            }
            if !c.is_zero() {
                c_lookup.insert(beta.clone(), c.clone());
                c_by_height[h].push((beta, c));
            }
        }
        if next_level.is_empty() {
            complete = true;
            break;
        }
        level_roots = next_level;
    }
    Ok(RootTable {
        height,
        roots,
        complete,
    })
}

/// `Σ_{n≥2} mult(β/n)/n`.
fn multiple_sum(beta: &[i64], roots: &BTreeMap<Vec<i64>, u64>) -> Rational {
    let g = beta.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    let mut s = Rational::zero();
    for k in 2..=g {
        if g % k == 0 {
            let sub: Vec<i64> = beta.iter().map(|x| x / k).collect();
            if let Some(&m) = roots.get(&sub) {
                s += rat(m as i64) / rat(k);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kac_moody::registry::named;

    fn table(name: &str, h: usize) -> RootTable {
        root_multiplicities(&named(name).unwrap(), h, &CancelToken::new()).unwrap()
    }

    #[test]
    fn a2_roots() {
        let t = table("A2", 3);
        let got: Vec<(Vec<i64>, u64)> = t.iter().map(|(k, v)| (k.clone(), v)).collect();
        assert_eq!(got, vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]);
        assert!(t.is_complete());
    }

    #[test]
    fn classical_root_counts() {
        for (name, count) in [
            ("A1", 1),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
        ] {
            let t = table(name, 40);
            assert!(t.is_complete(), "{name}");
            assert_eq!(t.len(), count, "{name}");
            assert!(t.iter().all(|(_, m)| m == 1), "{name}");
        }
    }

    #[test]
    fn height_one_is_simple_roots() {
        let t = table("A1~", 1);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|(k, m)| m == 1 && k.iter().sum::<i64>() == 1));
    }

    #[test]
    fn affine_a1_imaginary_roots() {
        let t = table("A1~", 6);
        assert_eq!(t.multiplicity(&[1, 1]), 1);
        assert_eq!(t.multiplicity(&[2, 2]), 1);
        assert_eq!(t.multiplicity(&[3, 3]), 1);
        assert_eq!(t.multiplicity(&[1, 2]), 1);
        assert_eq!(t.multiplicity(&[2, 1]), 1);
        assert_eq!(t.multiplicity(&[0, 2]), 0);
        assert!(!t.is_complete());
    }

    #[test]
    fn affine_imaginary_multiplicity_is_finite_rank() {
        let t = table("A2~", 6);
        assert_eq!(t.multiplicity(&[1, 1, 1]), 2);
        assert_eq!(t.multiplicity(&[2, 2, 2]), 2);
        let t = table("D4~", 12);
        assert_eq!(t.multiplicity(&[1, 1, 2, 1, 1]), 4);
    }

    #[test]
    fn hyperbolic_matches_free_lie_algebra() {
        // below the Serre degrees (4,1) and (1,4) the positive part is free,
        // so multiplicities are Witt-formula dimensions
        let g = crate::kac_moody::CartanMatrix::from_rows(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        let t = root_multiplicities(&g, 6, &CancelToken::new()).unwrap();
        assert_eq!(t.multiplicity(&[1, 1]), 1);
        assert_eq!(t.multiplicity(&[1, 2]), 1);
        assert_eq!(t.multiplicity(&[2, 2]), 1);
        assert_eq!(t.multiplicity(&[2, 3]), 2);
        assert_eq!(t.multiplicity(&[3, 3]), 3);
        assert_eq!(t.multiplicity(&[1, 3]), 1);
    }
}
