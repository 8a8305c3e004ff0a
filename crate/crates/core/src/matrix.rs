//! Coxeter matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of a product `st` of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    /// True when the two generators are joined by an edge of the Coxeter diagram.
    pub fn is_edge(self) -> bool {
        !matches!(self, Order::Finite(1) | Order::Finite(2))
    }
}

/// Symmetric matrix `m(s,t)` with ones on the diagonal. The entry `0` encodes `m = ∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<u32>,
}

impl CoxeterMatrix {
    /// Builds a matrix from rows, checking every invariant.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        validate_matrix(&rows)?;
        let rank = rows.len();
        let entries = rows.into_iter().flatten().map(|x| x as u32).collect();
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Rank-2 system with `m(s,t) = m` (`None` for ∞).
    pub fn dihedral(m: Option<u32>) -> Self {
        let m = m.map(i64::from).unwrap_or(0);
        Self::new(vec![vec![1, m], vec![m, 1]]).expect("valid dihedral matrix")
    }

    /// Type `A_n` with generators numbered along the path.
    pub fn type_a(n: usize) -> Self {
        Self::path(n, |_| 3)
    }

    /// Type `B_n`; the order-4 bond joins generators 0 and 1.
    pub fn type_b(n: usize) -> Self {
        Self::path(n, |i| if i == 0 { 4 } else { 3 })
    }

    fn path(n: usize, bond: impl Fn(usize) -> i64) -> Self {
        let mut rows = vec![vec![2i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for i in 0..n.saturating_sub(1) {
            rows[i][i + 1] = bond(i);
            rows[i + 1][i] = bond(i);
        }
        Self::new(rows).expect("valid path matrix")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Order {
        match self.entries[i * self.rank + j] {
            0 => Order::Infinite,
            m => Order::Finite(m),
        }
    }

    /// Raw entry with the `0 = ∞` sentinel.
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.rank)
            .map(|r| r.iter().map(|&x| i64::from(x)).collect())
            .collect()
    }

    /// True when `s` and `t` commute (distinct generators with `m = 2`).
    pub fn commute(&self, s: usize, t: usize) -> bool {
        s != t && self.raw(s, t) == 2
    }
}

impl TryFrom<Vec<Vec<i64>>> for CoxeterMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        CoxeterMatrix::new(rows)
    }
}

impl From<CoxeterMatrix> for Vec<Vec<i64>> {
    fn from(m: CoxeterMatrix) -> Self {
        m.rows()
    }
}

/// Checks the Coxeter matrix invariants on raw rows.
pub fn validate_matrix(rows: &[Vec<i64>]) -> Result<()> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::BadShape { rows: 0, row: 0, cols: 0 });
    }
    if n > 255 {
        return Err(Error::RankTooLarge(n));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadShape { rows: n, row: i, cols: row.len() });
        }
    }
    for i in 0..n {
        if rows[i][i] != 1 {
            return Err(Error::BadDiagonal { i });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = rows[i][j];
            if v != 0 && v < 2 || v > i64::from(u32::MAX) {
                return Err(Error::BadOrder { i, j, value: v });
            }
            if rows[j][i] != v {
                return Err(Error::Asymmetric { i: i.min(j), j: i.max(j) });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_a2_and_infinite_dihedral() {
        assert!(validate_matrix(&[vec![1, 3], vec![3, 1]]).is_ok());
        assert!(validate_matrix(&[vec![1, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            validate_matrix(&[vec![1, 3], vec![2, 1]]),
            Err(Error::Asymmetric { i: 0, j: 1 })
        );
        assert_eq!(validate_matrix(&[vec![2, 3], vec![3, 1]]), Err(Error::BadDiagonal { i: 0 }));
        assert_eq!(
            validate_matrix(&[vec![1, 1], vec![1, 1]]),
            Err(Error::BadOrder { i: 0, j: 1, value: 1 })
        );
        assert_eq!(
            validate_matrix(&[vec![1, -1], vec![-1, 1]]),
            Err(Error::BadOrder { i: 0, j: 1, value: -1 })
        );
        assert!(matches!(validate_matrix(&[vec![1, 3]]), Err(Error::BadShape { .. })));
        assert!(matches!(validate_matrix(&[]), Err(Error::BadShape { .. })));
    }

    #[test]
    fn serde_uses_rows() {
        let m = CoxeterMatrix::type_b(2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,4],[4,1]]");
        let back: CoxeterMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CoxeterMatrix>("[[1,3],[2,1]]").is_err());
    }
}
