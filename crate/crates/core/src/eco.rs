//! Growth of D^(h,2) by inserting a peak `UD` among the initial up steps,
//! the matching growth of S^(h,2)(312), and the succession rules that
//! describe both generating trees.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::dyck::DyckPath;
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// Deepest level the tree generators build by default.
pub const DEFAULT_LEVEL_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcoError {
    #[error("height bound {h} is below the minimum {min} for this operator")]
    InvalidHeight { h: usize, min: usize },
    #[error("{object} is not in the class for h = {h}")]
    NotInClass { object: String, h: usize },
    #[error("level {n} exceeds the generation cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub usize);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// An axiom plus one production per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessionRule {
    pub axiom: Label,
    pub productions: BTreeMap<Label, Vec<Label>>,
}

impl SuccessionRule {
    pub fn children(&self, label: Label) -> &[Label] {
        self.productions.get(&label).map_or(&[], Vec::as_slice)
    }

    /// True when every label `(k)` has exactly `k` children and every
    /// produced label has a production of its own.
    pub fn is_well_formed(&self) -> bool {
        self.productions.contains_key(&self.axiom)
            && self.productions.iter().all(|(k, kids)| {
                kids.len() == k.0 && kids.iter().all(|c| self.productions.contains_key(c))
            })
    }
}

impl fmt::Display for SuccessionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.axiom)?;
        for (k, kids) in &self.productions {
            write!(f, "{k} ~>")?;
            for c in kids {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The rule for D^(h,2), `h >= 3`:
/// `(1) ~> (2)`, `(k) ~> (2)(3)...(k+1)` for `2 <= k < h`, and
/// `(h) ~> (2)(3)...(h-1)(h-1)(h)`.
pub fn omega(h: usize) -> Result<SuccessionRule, EcoError> {
    if h < 3 {
        return Err(EcoError::InvalidHeight { h, min: 3 });
    }
    let mut productions = BTreeMap::new();
    productions.insert(Label(1), vec![Label(2)]);
    for k in 2..h {
        productions.insert(Label(k), (2..=k + 1).map(Label).collect());
    }
    let mut top: Vec<Label> = (2..h).map(Label).collect();
    top.push(Label(h - 1));
    top.push(Label(h));
    productions.insert(Label(h), top);
    Ok(SuccessionRule {
        axiom: Label(1),
        productions,
    })
}

/// The Fibonacci rule for D^(2,2): `(1) ~> (2)`, `(2) ~> (1)(2)`.
pub fn omega2() -> SuccessionRule {
    SuccessionRule {
        axiom: Label(1),
        productions: BTreeMap::from([
            (Label(1), vec![Label(2)]),
            (Label(2), vec![Label(1), Label(2)]),
        ]),
    }
}

fn next_level<T: Scalar>(rule: &SuccessionRule, level: &BTreeMap<Label, T>) -> BTreeMap<Label, T> {
    let mut next: BTreeMap<Label, T> = BTreeMap::new();
    for (label, mult) in level {
        for child in rule.children(*label) {
            let slot = next.entry(*child).or_insert_with(T::zero);
            *slot = slot.clone() + mult.clone();
        }
    }
    next
}

/// Label multiset at level `n` of the rule's generating tree, with its total.
pub fn symbolic_counts<T: Scalar>(rule: &SuccessionRule, n: usize) -> (T, BTreeMap<Label, T>) {
    let mut level = BTreeMap::from([(rule.axiom, T::one())]);
    for _ in 0..n {
        level = next_level(rule, &level);
    }
    let total = level.values().cloned().sum();
    (total, level)
}

/// Level totals `0..=n` of the rule's generating tree.
pub fn symbolic_totals<T: Scalar>(rule: &SuccessionRule, n: usize) -> Vec<T> {
    let mut level = BTreeMap::from([(rule.axiom, T::one())]);
    let mut totals = vec![T::one()];
    for _ in 0..n {
        level = next_level(rule, &level);
        totals.push(level.values().cloned().sum());
    }
    totals
}

fn check_height(h: usize) -> Result<(), EcoError> {
    if h < 3 {
        Err(EcoError::InvalidHeight { h, min: 3 })
    } else {
        Ok(())
    }
}

fn ensure_path(p: &DyckPath, h: usize) -> Result<(), EcoError> {
    check_height(h)?;
    if p.in_class(h, 2) {
        Ok(())
    } else {
        Err(EcoError::NotInClass {
            object: p.to_string(),
            h,
        })
    }
}

fn ensure_perm(p: &Permutation, h: usize) -> Result<(), EcoError> {
    check_height(h)?;
    if p.in_s_h2(h) {
        Ok(())
    } else {
        Err(EcoError::NotInClass {
            object: p.to_string(),
            h,
        })
    }
}

/// Label from the initial rise `t`: ε is `(1)`, `t < h` gives `(t+1)`,
/// `t = h` gives `(h-1)`.
fn label_from_rise(t: usize, h: usize) -> Label {
    match t {
        0 => Label(1),
        t if t < h => Label(t + 1),
        _ => Label(h - 1),
    }
}

/// Number of children for initial rise `t`.
fn active_sites(t: usize, h: usize) -> usize {
    if t < h {
        t + 1
    } else {
        h - 1
    }
}

/// Children of `p` in the generating tree of D^(h,2).
///
/// With `p = U^t D P'`, a peak `UD` is inserted before each of the first
/// `t` up steps and after the last one; when `t = h` only the first `h - 1`
/// sites are active. ε produces `UD`.
pub fn theta(p: &DyckPath, h: usize) -> Result<Vec<DyckPath>, EcoError> {
    ensure_path(p, h)?;
    let t = p.initial_rise();
    let sites = if p.is_empty() { 1 } else { active_sites(t, h) };
    Ok((0..sites).map(|site| p.with_peak_at(site)).collect())
}

pub fn label_of(p: &DyckPath, h: usize) -> Result<Label, EcoError> {
    ensure_path(p, h)?;
    Ok(label_from_rise(p.initial_rise(), h))
}

/// Children of `π` in the generating tree of S^(h,2)(312): for each
/// admissible `ℓ`, `ℓ` is put in front and larger-or-equal entries shift up.
pub fn theta_perm(p: &Permutation, h: usize) -> Result<Vec<Permutation>, EcoError> {
    ensure_perm(p, h)?;
    let sites = match p.first() {
        None => 1,
        Some(first) => active_sites(first, h),
    };
    Ok((1..=sites).map(|ell| p.prepend_rescaled(ell)).collect())
}

/// `π₁ + 1` when `π₁ != h`, `h - 1` when `π₁ = h`, and `(1)` for the empty
/// permutation.
pub fn label_of_perm(p: &Permutation, h: usize) -> Result<Label, EcoError> {
    ensure_perm(p, h)?;
    Ok(label_from_rise(p.first().unwrap_or(0), h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode<O> {
    pub object: O,
    pub label: Label,
    pub level: usize,
}

/// A concrete ECO operator: a root object, a labelling and an expansion.
pub trait Growth {
    type Object: Clone;

    fn root(&self) -> Self::Object;
    fn expand(&self, object: &Self::Object) -> Result<Vec<Self::Object>, EcoError>;
    fn label(&self, object: &Self::Object) -> Result<Label, EcoError>;
}

/// Path growth for D^(h,2).
#[derive(Debug, Clone, Copy)]
pub struct PathGrowth {
    pub h: usize,
}

/// Permutation growth for S^(h,2)(312).
#[derive(Debug, Clone, Copy)]
pub struct PermGrowth {
    pub h: usize,
}

impl Growth for PathGrowth {
    type Object = DyckPath;

    fn root(&self) -> DyckPath {
        DyckPath::empty()
    }

    fn expand(&self, object: &DyckPath) -> Result<Vec<DyckPath>, EcoError> {
        theta(object, self.h)
    }

    fn label(&self, object: &DyckPath) -> Result<Label, EcoError> {
        label_of(object, self.h)
    }
}

impl Growth for PermGrowth {
    type Object = Permutation;

    fn root(&self) -> Permutation {
        Permutation::empty()
    }

    fn expand(&self, object: &Permutation) -> Result<Vec<Permutation>, EcoError> {
        theta_perm(object, self.h)
    }

    fn label(&self, object: &Permutation) -> Result<Label, EcoError> {
        label_of_perm(object, self.h)
    }
}

/// Levels `0..=depth` of the generating tree, breadth first. Within a level
/// nodes follow their parents' order, then the insertion-site order.
pub fn generate_tree<G: Growth>(growth: &G, depth: usize, cap: usize) -> Result<Vec<Vec<TreeNode<G::Object>>>, EcoError> {
    if depth > cap {
        return Err(EcoError::CapExceeded { n: depth, cap });
    }
    let root = growth.root();
    let mut levels = vec![vec![TreeNode {
        label: growth.label(&root)?,
        object: root,
        level: 0,
    }]];
    for level in 1..=depth {
        let mut next = Vec::new();
        for parent in &levels[level - 1] {
            for object in growth.expand(&parent.object)? {
                next.push(TreeNode {
                    label: growth.label(&object)?,
                    object,
                    level,
                });
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

pub fn generate_level_with<G: Growth>(growth: &G, n: usize, cap: usize) -> Result<Vec<TreeNode<G::Object>>, EcoError> {
    if n > cap {
        return Err(EcoError::CapExceeded { n, cap });
    }
    let root = growth.root();
    let mut level = vec![TreeNode {
        label: growth.label(&root)?,
        object: root,
        level: 0,
    }];
    for depth in 1..=n {
        let mut next = Vec::new();
        for parent in &level {
            for object in growth.expand(&parent.object)? {
                next.push(TreeNode {
                    label: growth.label(&object)?,
                    object,
                    level: depth,
                });
            }
        }
        level = next;
    }
    Ok(level)
}

/// D_n^(h,2) with labels, grown from ε.
pub fn generate_level(h: usize, n: usize) -> Result<Vec<TreeNode<DyckPath>>, EcoError> {
    check_height(h)?;
    generate_level_with(&PathGrowth { h }, n, DEFAULT_LEVEL_CAP)
}

/// S_n^(h,2)(312) with labels, grown from the empty permutation.
pub fn generate_level_perms(h: usize, n: usize) -> Result<Vec<TreeNode<Permutation>>, EcoError> {
    check_height(h)?;
    generate_level_with(&PermGrowth { h }, n, DEFAULT_LEVEL_CAP)
}
