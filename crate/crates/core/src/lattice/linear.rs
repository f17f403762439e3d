//! Periodic points of the Ledrappier shift as the kernel of a linear map
//! over the two-element field.

use super::{PeriodLattice, TorusConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedrappierKernel {
    pub lattice: PeriodLattice,
    pub dimension: usize,
    /// `2^dimension`.
    pub count: u128,
    pub basis: Vec<TorusConfig>,
}

/// Solves `y(m,n) + y(m+1,n) + y(m,n+1) = 0` on the `n1 × n2` torus.
pub fn ledrappier_fixed_points(n1: usize, n2: usize, cap: usize) -> Result<LedrappierKernel> {
    let lattice = PeriodLattice::new(vec![n1, n2])?;
    let n = lattice.volume();
    if n > cap {
        return Err(Error::CapExceeded(format!("{n} cells exceeds cap {cap}")));
    }
    let words = n.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = lattice
        .cells()
        .map(|g| {
            let mut row = vec![0u64; words];
            for c in [g.clone(), vec![g[0] + 1, g[1]], vec![g[0], g[1] + 1]] {
                let j = lattice.index(&c);
                row[j / 64] ^= 1 << (j % 64);
            }
            row
        })
        .collect();

    let bit = |row: &[u64], j: usize| row[j / 64] >> (j % 64) & 1 == 1;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, col) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let pivot_cols: Vec<bool> = {
        let mut v = vec![false; n];
        for &(_, c) in &pivots {
            v[c] = true;
        }
        v
    };
    let free: Vec<usize> = (0..n).filter(|&c| !pivot_cols[c]).collect();
    let dimension = free.len();
    if dimension >= 128 {
        return Err(Error::CapExceeded(format!("kernel dimension {dimension}")));
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut cells = vec![0u8; n];
            cells[f] = 1;
            for &(row, col) in &pivots {
                cells[col] = bit(&rows[row], f) as u8;
            }
            TorusConfig::new(lattice.clone(), cells).expect("sizes agree")
        })
        .collect();
    Ok(LedrappierKernel {
        lattice,
        dimension,
        count: 1u128 << dimension,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::torus_valid;
    use crate::zoo;

    #[test]
    fn small_tori() {
        assert_eq!(ledrappier_fixed_points(2, 2, 64).unwrap().count, 1);
        assert_eq!(ledrappier_fixed_points(1, 1, 64).unwrap().count, 1);
        assert_eq!(ledrappier_fixed_points(1, 2, 64).unwrap().count, 1);
        let k = ledrappier_fixed_points(3, 3, 64).unwrap();
        assert_eq!(k.count, 4);
        let x = zoo::ledrappier();
        assert!(k.basis.iter().all(|b| torus_valid(&x, b).unwrap()));
        assert!(ledrappier_fixed_points(10, 10, 64).is_err());
    }
}
