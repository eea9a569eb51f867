//! Built-in Cartan matrices by name: `A3`, `B2`, `E8`, `A1~`, `D4~`, ...
//!
//! Nodes are 0-indexed. In the untwisted affine types node 0 is the extra node.
//! `B_n` has `a_{n-2,n-1} = -2`, so `B2 = [[2,-2],[-1,2]]`, and `C_n` is its
//! transpose.

use crate::error::{Error, Result};

use super::cartan::CartanMatrix;

pub fn named(name: &str) -> Result<CartanMatrix> {
    let rows = named_rows(name.trim())?;
    CartanMatrix::from_rows(rows)
}

/// Names the registry recognizes, as patterns.
pub const NAMES: &[&str] = &[
    "An", "Bn", "Cn", "Dn", "E6", "E7", "E8", "F4", "G2", "An~", "Dn~", "E6~", "E7~", "E8~",
];

fn unknown(name: &str) -> Error {
    Error::Structural(format!("unknown Cartan type {name:?}"))
}

fn named_rows(name: &str) -> Result<Vec<Vec<i64>>> {
    let (base, affine) = match name.strip_suffix('~') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let mut chars = base.chars();
    let family = chars.next().ok_or_else(|| unknown(name))?.to_ascii_uppercase();
    let rest: &str = chars.as_str().trim_start_matches('_');
    let n: usize = rest.parse().map_err(|_| unknown(name))?;

    let rows = match (family, affine) {
        ('A', false) if n >= 1 => simply_laced(n, &chain(0, n)),
        ('A', true) if n == 1 => vec![vec![2, -2], vec![-2, 2]],
        ('A', true) if n >= 2 => {
            let mut edges = chain(0, n + 1);
            edges.push((n, 0));
            simply_laced(n + 1, &edges)
        }
        ('B', false) if n >= 2 => {
            let mut a = simply_laced(n, &chain(0, n));
            a[n - 2][n - 1] = -2;
            a
        }
        ('C', false) if n >= 2 => {
            let mut a = simply_laced(n, &chain(0, n));
            a[n - 1][n - 2] = -2;
            a
        }
        ('D', false) if n >= 3 => {
            let mut edges = chain(0, n - 1);
            edges.push((n - 3, n - 1));
            simply_laced(n, &edges)
        }
        ('D', true) if n >= 4 => {
            let mut edges = vec![(0, 2)];
            edges.extend(chain(1, n));
            edges.push((n - 2, n));
            simply_laced(n + 1, &edges)
        }
        ('E', false) if (6..=8).contains(&n) => simply_laced(n, &e_edges(n, 0)),
        ('E', true) if (6..=8).contains(&n) => {
            let mut edges = e_edges(n, 1);
            // the extra node attaches to the end of the longest arm
            edges.push(match n {
                6 => (0, 2),
                7 => (0, 1),
                _ => (0, 8),
            });
            simply_laced(n + 1, &edges)
        }
        ('F', false) if n == 4 => {
            let mut a = simply_laced(4, &chain(0, 4));
            a[1][2] = -2;
            a
        }
        ('G', false) if n == 2 => vec![vec![2, -3], vec![-1, 2]],
        _ => return Err(unknown(name)),
    };
    Ok(rows)
}

/// Edges of the path on nodes `start..end`.
fn chain(start: usize, end: usize) -> Vec<(usize, usize)> {
    (start..end.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// Bourbaki E_n edges (1-3-4-...-n with 2 on 4), shifted by `offset`.
fn e_edges(n: usize, offset: usize) -> Vec<(usize, usize)> {
    let mut edges = vec![(0, 2), (1, 3)];
    edges.extend((2..n - 1).map(|i| (i, i + 1)));
    edges.into_iter().map(|(a, b)| (a + offset, b + offset)).collect()
}

fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kac_moody::CartanKind;

    #[test]
    fn named_shapes() {
        assert_eq!(named("A2").unwrap().rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(named("B2").unwrap().rows(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(named("C2").unwrap().rows(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(named("A1~").unwrap().rows(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(named("B3").unwrap().langlands_dual(), named("C3").unwrap());
    }

    #[test]
    fn kinds_and_determinants() {
        for (name, det) in [("A4", 5), ("B4", 2), ("C4", 2), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)] {
            let g = named(name).unwrap();
            assert_eq!(g.kind(), CartanKind::Finite, "{name}");
            assert_eq!(g.to_int_matrix().determinant().unwrap(), det.into(), "{name}");
        }
        for name in ["A1~", "A3~", "D4~", "D6~", "E6~", "E7~", "E8~"] {
            assert_eq!(named(name).unwrap().kind(), CartanKind::Affine, "{name}");
        }
        assert_eq!(named("E8~").unwrap().kac_labels().unwrap().iter().sum::<i64>(), 30);
        assert_eq!(named("E7~").unwrap().kac_labels().unwrap().iter().sum::<i64>(), 18);
        assert_eq!(named("E6~").unwrap().kac_labels().unwrap().iter().sum::<i64>(), 12);
    }

    #[test]
    fn unknown_names() {
        for bad in ["", "X3", "A0", "B1", "E9", "A", "F5~"] {
            assert!(named(bad).is_err(), "{bad}");
        }
    }
}
