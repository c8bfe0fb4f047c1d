//! Production matrices of the succession rules.
//!
//! Row and column `i` (1-based) stand for label `(i)`; entry `(i, j)` is how
//! many children labelled `(j)` a node labelled `(i)` has.

use std::fmt;

use thiserror::Error;

use crate::eco::{Label, SuccessionRule};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProdMatError {
    #[error("height bound must be at least 2, got {0}")]
    InvalidHeight(usize),
    #[error("rule labels are not the contiguous range 1..={expected_max}; found {found}")]
    NonContiguousLabels { expected_max: usize, found: Label },
    #[error("axiom {axiom} is outside a matrix of dimension {dim}")]
    AxiomOutOfRange { axiom: Label, dim: usize },
}

/// Square matrix with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionMatrix<T> {
    rows: Vec<Vec<T>>,
}

/// Row vector of label multiplicities; index `i` is label `(i + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelVector<T>(pub Vec<T>);

impl<T: Scalar> LevelVector<T> {
    pub fn unit(dim: usize, axiom: Label) -> Self {
        let mut v = vec![T::zero(); dim];
        v[axiom.0 - 1] = T::one();
        Self(v)
    }

    pub fn total(&self) -> T {
        self.0.iter().cloned().sum()
    }

    pub fn get(&self, label: Label) -> T {
        self.0.get(label.0 - 1).cloned().unwrap_or_else(T::zero)
    }
}

impl<T: Scalar> ProductionMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "matrix must be square");
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Entry for parent label `(i)` and child label `(j)`.
    pub fn entry(&self, i: Label, j: Label) -> &T {
        &self.rows[i.0 - 1][j.0 - 1]
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.rows.iter().map(|r| r.iter().cloned().sum()).collect()
    }

    /// `v * self`.
    pub fn apply(&self, v: &LevelVector<T>) -> LevelVector<T> {
        let d = self.dim();
        let mut out = vec![T::zero(); d];
        for (i, vi) in v.0.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = slot.clone() + vi.clone() * self.rows[i][j].clone();
            }
        }
        LevelVector(out)
    }
}

impl<T: Scalar> fmt::Display for ProductionMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `P_2 = [[0,1],[1,1]]` and, for `h >= 3`,
/// `P_h = [[0, u^t], [0, P_{h-1} + e u^t]]` with `u = (1,0,...,0)` and
/// `e = (1,...,1)`.
pub fn build_block<T: Scalar>(h: usize) -> Result<ProductionMatrix<T>, ProdMatError> {
    if h < 2 {
        return Err(ProdMatError::InvalidHeight(h));
    }
    let o = || T::zero();
    let l = || T::one();
    let mut rows = vec![vec![o(), l()], vec![l(), l()]];
    for d in 3..=h {
        let mut next = Vec::with_capacity(d);
        let mut top = vec![o(); d];
        top[1] = l();
        next.push(top);
        for mut row in rows.drain(..) {
            row[0] = row[0].clone() + l();
            row.insert(0, o());
            next.push(row);
        }
        rows = next;
    }
    Ok(ProductionMatrix { rows })
}

/// Reads a rule row by row: entry `(i, j)` counts `(j)` in the production
/// of `(i)`.
pub fn build_from_rule<T: Scalar>(rule: &SuccessionRule) -> Result<ProductionMatrix<T>, ProdMatError> {
    let dim = rule.productions.len();
    for (k, label) in rule.productions.keys().enumerate() {
        if label.0 != k + 1 {
            return Err(ProdMatError::NonContiguousLabels {
                expected_max: dim,
                found: *label,
            });
        }
    }
    let mut rows = vec![vec![T::zero(); dim]; dim];
    for (parent, kids) in &rule.productions {
        for child in kids {
            if child.0 == 0 || child.0 > dim {
                return Err(ProdMatError::NonContiguousLabels {
                    expected_max: dim,
                    found: *child,
                });
            }
            let slot = &mut rows[parent.0 - 1][child.0 - 1];
            *slot = slot.clone() + T::one();
        }
    }
    Ok(ProductionMatrix { rows })
}

/// Label vector at level `n` of the generating tree and its total,
/// by `n` successive vector-matrix products from the axiom.
pub fn level_count<T: Scalar>(
    m: &ProductionMatrix<T>,
    axiom: Label,
    n: usize,
) -> Result<(T, LevelVector<T>), ProdMatError> {
    if axiom.0 == 0 || axiom.0 > m.dim() {
        return Err(ProdMatError::AxiomOutOfRange { axiom, dim: m.dim() });
    }
    let mut v = LevelVector::unit(m.dim(), axiom);
    for _ in 0..n {
        v = m.apply(&v);
    }
    Ok((v.total(), v))
}

/// `level_count` for every level `0..=n`.
pub fn level_totals<T: Scalar>(m: &ProductionMatrix<T>, axiom: Label, n: usize) -> Result<Vec<T>, ProdMatError> {
    let (_, mut v) = level_count(m, axiom, 0)?;
    let mut out = vec![v.total()];
    for _ in 0..n {
        v = m.apply(&v);
        out.push(v.total());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eco::{omega, omega2, symbolic_counts};
    use crate::genfunc::count_sequence;
    use num_bigint::BigInt;

    fn rows(m: &ProductionMatrix<i64>) -> Vec<Vec<i64>> {
        m.rows().to_vec()
    }

    #[test]
    fn block_examples() {
        assert_eq!(rows(&build_block(2).unwrap()), [[0, 1], [1, 1]]);
        assert_eq!(rows(&build_block(3).unwrap()), [[0, 1, 0], [0, 1, 1], [0, 2, 1]]);
        assert_eq!(
            rows(&build_block(4).unwrap()),
            [[0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 1, 1], [0, 1, 2, 1]]
        );
        assert!(build_block::<i64>(1).is_err());
    }

    #[test]
    fn from_rule_examples() {
        assert_eq!(rows(&build_from_rule(&omega2()).unwrap()), [[0, 1], [1, 1]]);
        assert_eq!(rows(&build_from_rule(&omega(3).unwrap()).unwrap()), [[0, 1, 0], [0, 1, 1], [0, 2, 1]]);
        for h in 3..=10 {
            let from_rule: ProductionMatrix<i64> = build_from_rule(&omega(h).unwrap()).unwrap();
            assert_eq!(from_rule, build_block(h).unwrap(), "h={h}");
            let sums = from_rule.row_sums();
            for (i, s) in sums.iter().enumerate() {
                assert_eq!(*s, i as i64 + 1);
            }
            assert_eq!(from_rule.dim(), h);
        }
    }

    #[test]
    fn non_contiguous_rule() {
        let mut rule = omega(4).unwrap();
        rule.productions.remove(&Label(3));
        assert!(matches!(
            build_from_rule::<i64>(&rule),
            Err(ProdMatError::NonContiguousLabels { .. })
        ));
    }

    #[test]
    fn counting_examples() {
        let p2 = build_block::<i64>(2).unwrap();
        assert_eq!(level_count(&p2, Label(1), 6).unwrap().0, 13);
        let p3 = build_block::<i64>(3).unwrap();
        assert_eq!(level_count(&p3, Label(1), 4).unwrap().0, 12);
        for h in 2..6 {
            let m = build_block::<i64>(h).unwrap();
            assert_eq!(level_count(&m, Label(2), 0).unwrap().0, 1);
        }
        assert!(level_count(&p3, Label(4), 1).is_err());
    }

    #[test]
    fn matrix_matches_recurrence() {
        for h in 2..=7 {
            let m = build_block::<BigInt>(h).unwrap();
            assert_eq!(level_totals(&m, Label(1), 16).unwrap(), count_sequence::<BigInt>(h, 16).unwrap());
        }
    }

    #[test]
    fn matrix_matches_symbolic_labels() {
        for h in 3..=6 {
            let rule = omega(h).unwrap();
            let m = build_from_rule::<i64>(&rule).unwrap();
            for n in 0..=10 {
                let (_, v) = level_count(&m, Label(1), n).unwrap();
                let (_, per) = symbolic_counts::<i64>(&rule, n);
                for k in 1..=h {
                    assert_eq!(v.get(Label(k)), per.get(&Label(k)).copied().unwrap_or(0));
                }
            }
        }
    }

    #[test]
    fn display_is_aligned() {
        let m = build_block::<i64>(3).unwrap();
        assert_eq!(m.to_string(), "0 1 0\n0 1 1\n0 2 1\n");
    }
}
