//! Dyck paths as explicit U/D step sequences.
//!
//! Positions are 0-based step indices. Heights are ordinates: the height of
//! a step is the ordinate of its end point, so a valley `DU` has the height
//! reached by its `D` and a peak `UD` the height reached by its `U`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

/// Largest semilength the exhaustive enumerator accepts by default.
pub const DEFAULT_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid character {found:?} at index {index}")]
    InvalidCharacter { index: usize, found: char },
    #[error("unbalanced path: up step at index {index} is never matched")]
    Unbalanced { index: usize },
    #[error("prefix ending at index {index} goes below the axis")]
    NegativePrefix { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("semilength {n} exceeds the enumeration cap {cap}")]
pub struct CapExceeded {
    pub n: usize,
    pub cap: usize,
}

/// An occurrence of the factor `DU`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValleyOccurrence {
    /// Index of the `D`.
    pub position: usize,
    /// Ordinate reached by the `D`.
    pub height: usize,
}

/// An occurrence of the factor `UD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakOccurrence {
    /// Index of the `U`.
    pub position: usize,
    /// Ordinate reached by the `U`.
    pub height: usize,
}

/// A maximal run of consecutive down steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DownRun {
    pub start: usize,
    pub len: usize,
    /// Ordinate reached by the first step of the run.
    pub height: usize,
}

/// A balanced sequence of up and down steps that never dips below the axis.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// The empty path ε.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates a step sequence.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, PathError> {
        let mut open: Vec<usize> = Vec::new();
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::Up => open.push(i),
                Step::Down => {
                    if open.pop().is_none() {
                        return Err(PathError::NegativePrefix { index: i });
                    }
                }
            }
        }
        match open.first() {
            Some(&index) => Err(PathError::Unbalanced { index }),
            None => Ok(Self { steps }),
        }
    }

    /// Builds a path without validation; callers guarantee the invariants.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(Self::from_steps(steps.clone()).is_ok());
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Ordinate after each step.
    fn ordinates(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().scan(0usize, |y, s| {
            match s {
                Step::Up => *y += 1,
                Step::Down => *y -= 1,
            }
            Some(*y)
        })
    }

    /// Maximum ordinate reached; 0 for ε.
    pub fn height(&self) -> usize {
        self.ordinates().max().unwrap_or(0)
    }

    /// Number of up steps before the first down step.
    pub fn initial_rise(&self) -> usize {
        self.steps.iter().take_while(|s| **s == Step::Up).count()
    }

    pub fn valleys(&self) -> Vec<ValleyOccurrence> {
        self.ordinates()
            .zip(self.steps.windows(2))
            .enumerate()
            .filter(|(_, (_, w))| w == &[Step::Down, Step::Up])
            .map(|(position, (height, _))| ValleyOccurrence { position, height })
            .collect()
    }

    pub fn peaks(&self) -> Vec<PeakOccurrence> {
        self.ordinates()
            .zip(self.steps.windows(2))
            .enumerate()
            .filter(|(_, (_, w))| w == &[Step::Up, Step::Down])
            .map(|(position, (height, _))| PeakOccurrence { position, height })
            .collect()
    }

    /// Maximal runs of down steps, left to right.
    pub fn down_runs(&self) -> Vec<DownRun> {
        let mut runs: Vec<DownRun> = Vec::new();
        let mut prev = Step::Up;
        for (i, (s, y)) in self.steps.iter().zip(self.ordinates()).enumerate() {
            if *s == Step::Down {
                if prev == Step::Down {
                    if let Some(run) = runs.last_mut() {
                        run.len += 1;
                    }
                } else {
                    runs.push(DownRun {
                        start: i,
                        len: 1,
                        height: y,
                    });
                }
            }
            prev = *s;
        }
        runs
    }

    /// Membership in D^(h,k): height at most `h` and no factor `(DU)^(k-1)`
    /// whose valleys all sit at height `h - 1`.
    ///
    /// For `k = 2` this forbids any valley at height `h - 1`.
    ///
    /// # Panics
    ///
    /// If `h == 0` or `k < 2`.
    pub fn in_class(&self, h: usize, k: usize) -> bool {
        assert!(h >= 1, "height bound must be positive");
        assert!(k >= 2, "k must be at least 2");
        if self.height() > h {
            return false;
        }
        let run = k - 1;
        // Consecutive valleys of a (DU)^run factor sit two steps apart, and
        // every D in it returns to the same ordinate.
        let valleys = self.valleys();
        let mut streak = 0usize;
        let mut last: Option<usize> = None;
        for v in valleys {
            if v.height + 1 == h {
                streak = match last {
                    Some(p) if p + 2 == v.position => streak + 1,
                    _ => 1,
                };
                last = Some(v.position);
                if streak >= run {
                    return false;
                }
            } else {
                streak = 0;
                last = None;
            }
        }
        true
    }

    /// Inserts the factor `UD` before step `site`.
    pub(crate) fn with_peak_at(&self, site: usize) -> Self {
        let mut steps = Vec::with_capacity(self.steps.len() + 2);
        steps.extend_from_slice(&self.steps[..site]);
        steps.push(Step::Up);
        steps.push(Step::Down);
        steps.extend_from_slice(&self.steps[site..]);
        Self { steps }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_path(s)
    }
}

/// Parses a string over `{U, D}`; the empty string is ε.
pub fn parse_path(text: &str) -> Result<DyckPath, PathError> {
    let steps = text
        .chars()
        .enumerate()
        .map(|(index, c)| match c {
            'U' => Ok(Step::Up),
            'D' => Ok(Step::Down),
            found => Err(PathError::InvalidCharacter { index, found }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    DyckPath::from_steps(steps)
}

/// Calls `visit` on every Dyck path of semilength `n`, in lexicographic
/// order of the U/D strings (`D < U`).
pub fn for_each_dyck<F: FnMut(&DyckPath)>(n: usize, cap: usize, mut visit: F) -> Result<(), CapExceeded> {
    if n > cap {
        return Err(CapExceeded { n, cap });
    }
    fn go<F: FnMut(&DyckPath)>(buf: &mut DyckPath, ups: usize, downs: usize, n: usize, visit: &mut F) {
        if downs == n {
            visit(buf);
            return;
        }
        if downs < ups {
            buf.steps.push(Step::Down);
            go(buf, ups, downs + 1, n, visit);
            buf.steps.pop();
        }
        if ups < n {
            buf.steps.push(Step::Up);
            go(buf, ups + 1, downs, n, visit);
            buf.steps.pop();
        }
    }
    let mut buf = DyckPath {
        steps: Vec::with_capacity(2 * n),
    };
    go(&mut buf, 0, 0, n, &mut visit);
    Ok(())
}

/// All Dyck paths of semilength `n` in lexicographic order, with the default cap.
pub fn enumerate_dyck(n: usize) -> Result<Vec<DyckPath>, CapExceeded> {
    enumerate_dyck_with_cap(n, DEFAULT_CAP)
}

pub fn enumerate_dyck_with_cap(n: usize, cap: usize) -> Result<Vec<DyckPath>, CapExceeded> {
    let mut out = Vec::new();
    for_each_dyck(n, cap, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Brute-force |D_n^(h,k)|: filters every Dyck path of semilength `n`.
pub fn count_brute(n: usize, h: usize, k: usize) -> Result<BigUint, CapExceeded> {
    count_brute_with_cap(n, h, k, DEFAULT_CAP)
}

pub fn count_brute_with_cap(n: usize, h: usize, k: usize, cap: usize) -> Result<BigUint, CapExceeded> {
    let mut count = 0u64;
    for_each_dyck(n, cap, |p| {
        if p.in_class(h, k) {
            count += 1;
        }
    })?;
    Ok(count.into())
}
