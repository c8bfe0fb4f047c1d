//! Permutations in one-line notation and the 312-avoiding classes.
//!
//! Positions and values are 1-based here, so the excess of a left-to-right
//! maximum is literally `value - index`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("token {token:?} is not a positive integer")]
    InvalidToken { token: String },
    #[error("not a permutation: value {value} is duplicated or out of range")]
    NotAPermutation { value: usize },
}

/// A rearrangement of `1..=n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<usize>,
}

/// A left-to-right maximum, with 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LrMaximum {
    pub index: usize,
    pub value: usize,
}

impl LrMaximum {
    /// `value - index`; never negative for a left-to-right maximum.
    pub fn excess(&self) -> usize {
        self.value - self.index
    }
}

impl Permutation {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n).collect(),
        }
    }

    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation { value: v });
            }
            seen[v] = true;
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.entries.first().copied()
    }

    /// True iff no `a < b < c` has `π_b < π_c < π_a`.
    pub fn avoids_312(&self) -> bool {
        // Right-to-left scan. A value v is popped by a smaller x lying to
        // its left, so any earlier y > v completes the pattern y x v.
        // `floor` is the smallest value popped so far.
        let mut stack: Vec<usize> = Vec::with_capacity(self.entries.len());
        let mut floor = usize::MAX;
        for &x in self.entries.iter().rev() {
            if x > floor {
                return false;
            }
            while let Some(&top) = stack.last() {
                if top <= x {
                    break;
                }
                floor = floor.min(top);
                stack.pop();
            }
            stack.push(x);
        }
        true
    }

    pub fn left_to_right_maxima(&self) -> Vec<LrMaximum> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.entries.iter().enumerate() {
            if v > best {
                best = v;
                out.push(LrMaximum { index: i + 1, value: v });
            }
        }
        out
    }

    /// Membership in S^(h)(312): 312-avoiding with every left-to-right
    /// maximum of excess at most `h - 1`.
    pub fn in_s_h(&self, h: usize) -> bool {
        self.avoids_312() && self.left_to_right_maxima().iter().all(|m| m.excess() < h)
    }

    /// Membership in S^(h,2)(312): in S^(h)(312) and no left-to-right maximum
    /// of excess `h - 1` is immediately followed, at the next position, by a
    /// maximum exactly one larger.
    ///
    /// The adjacency of positions matters: `3 2 1 4` has maxima `3` and `4`
    /// with excess 2 and values one apart, yet its path `UUUDDDUD` has no
    /// valley at height 2.
    pub fn in_s_h2(&self, h: usize) -> bool {
        if !self.in_s_h(h) {
            return false;
        }
        !self
            .left_to_right_maxima()
            .iter()
            .tuple_windows()
            .any(|(m, next)| m.excess() + 1 == h && next.index == m.index + 1 && next.value == m.value + 1)
    }

    /// `ℓ` followed by `self`, with every entry `>= ℓ` shifted up by one.
    pub(crate) fn prepend_rescaled(&self, ell: usize) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(ell);
        entries.extend(self.entries.iter().map(|&v| if v >= ell { v + 1 } else { v }));
        Self { entries }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(" "))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_perm(s)
    }
}

/// Parses integers separated by spaces and/or commas; blank input is the
/// empty permutation.
pub fn parse_perm(text: &str) -> Result<Permutation, PermError> {
    let entries = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>().map_err(|_| PermError::InvalidToken { token: t.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::new(entries)
}

/// Every permutation of length `n`, lexicographically.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(Permutation::from_entries_unchecked)
}

/// Every 312-avoiding permutation of length `n`, found by filtering all `n!`.
pub fn avoiders_312(n: usize) -> impl Iterator<Item = Permutation> {
    all_permutations(n).filter(Permutation::avoids_312)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::catalan;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn contains_312_cubic(p: &Permutation) -> bool {
        let e = p.entries();
        let n = e.len();
        (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| e[a] > e[c] && e[c] > e[b])))
    }

    #[test]
    fn parsing() {
        assert_eq!(perm("2 3 1").entries(), &[2, 3, 1]);
        assert_eq!(perm("2,3, 1").entries(), &[2, 3, 1]);
        assert_eq!(parse_perm("1 1"), Err(PermError::NotAPermutation { value: 1 }));
        assert_eq!(parse_perm("1 3"), Err(PermError::NotAPermutation { value: 3 }));
        assert_eq!(parse_perm("0"), Err(PermError::NotAPermutation { value: 0 }));
        assert!(matches!(parse_perm("1 x"), Err(PermError::InvalidToken { .. })));
        assert_eq!(perm(""), Permutation::empty());
        assert_eq!(perm("2 3 1").to_string(), "2 3 1");
    }

    #[test]
    fn pattern_examples() {
        assert!(!perm("3 5 2 1 6 4").avoids_312());
        assert!(perm("3 4 2 5 1").avoids_312());
        assert!(Permutation::empty().avoids_312());
        assert!(!perm("3 1 2").avoids_312());
    }

    #[test]
    fn stack_scan_matches_cubic() {
        for n in 0..=8 {
            for p in all_permutations(n) {
                assert_eq!(p.avoids_312(), !contains_312_cubic(&p), "{p}");
            }
        }
    }

    #[test]
    fn avoiders_are_catalan() {
        for n in 0..=9usize {
            assert_eq!(avoiders_312(n).count() as i64, catalan::<i64>(n as u32));
        }
    }

    #[test]
    fn maxima() {
        let lrm = |s: &str| -> Vec<(usize, usize)> {
            perm(s).left_to_right_maxima().iter().map(|m| (m.index, m.value)).collect()
        };
        assert_eq!(lrm("2 3 1"), [(1, 2), (2, 3)]);
        assert_eq!(lrm("1 2 3"), [(1, 1), (2, 2), (3, 3)]);
        assert_eq!(lrm("3 2 1"), [(1, 3)]);
        assert!(lrm("").is_empty());
    }

    #[test]
    fn restricted_classes() {
        assert!(perm("2 3 1").in_s_h(2));
        assert!(!perm("3 1 2").in_s_h(2));
        for n in 0..6 {
            assert!(Permutation::identity(n).in_s_h(1));
            // (UD)^n has valleys at height 0
            assert_eq!(Permutation::identity(n).in_s_h2(1), n < 2);
        }
        // image of UUUDUDDD: maxima (1,3), (2,4)
        assert!(!perm("3 4 2 1").in_s_h2(3));
        assert!(perm("3 4 2 1").in_s_h(3));
        // contains 312, so outside every class
        assert!(!perm("3 1 2 4").in_s_h2(3));
        assert!(!perm("3 1 4 2").in_s_h2(3));
        // maxima 3 and 4 are not adjacent: the path UUUDDDUD is in the class
        assert!(perm("3 2 1 4").in_s_h2(3));
        assert!(Permutation::empty().in_s_h2(1));
    }

    proptest! {
        #[test]
        fn s_h_monotone(entries in Just((1..=7usize).collect::<Vec<_>>()).prop_shuffle(), h in 1usize..8) {
            let p = Permutation::new(entries).unwrap();
            if p.in_s_h(h) {
                prop_assert!(p.in_s_h(h + 1));
            }
        }

        #[test]
        fn display_parse_round_trip(entries in Just((1..=9usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::new(entries).unwrap();
            prop_assert_eq!(parse_perm(&p.to_string()).unwrap(), p);
        }
    }
}
