//! Cross-module consistency checks, grouped by scope, reported as named
//! pass/fail entries. This is what `bdyck verify` runs.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bijection::{lrm_heights, path_to_perm, perm_to_path};
use crate::dyck::{enumerate_dyck_with_cap, DyckPath, DEFAULT_CAP};
use crate::eco::{generate_level_with, label_of, omega, symbolic_counts, theta, theta_perm, Label, PathGrowth};
use crate::genfunc::{a_coeff, catalan_identity, continued_fraction_series, count_sequence, gf, q_degree, q_poly};
use crate::perm::{all_permutations, Permutation};
use crate::prodmat::{build_block, build_from_rule, level_count, level_totals};
use crate::scalar::catalan;

/// The published `a_{h,j}` table, `h = 1..=14`, `j = 1..=8`.
pub const TABLE_1: [[i64; 8]; 14] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [2, 1, 0, 0, 0, 0, 0, 0],
    [3, 0, -1, 0, 0, 0, 0, 0],
    [4, -2, -2, 0, 0, 0, 0, 0],
    [5, -5, -2, 1, 0, 0, 0, 0],
    [6, -9, 0, 3, 0, 0, 0, 0],
    [7, -14, 5, 5, -1, 0, 0, 0],
    [8, -20, 14, 5, -4, 0, 0, 0],
    [9, -27, 28, 0, -9, 1, 0, 0],
    [10, -35, 48, -14, -14, 5, 0, 0],
    [11, -44, 75, -42, -14, 14, -1, 0],
    [12, -54, 110, -90, 0, 28, -6, 0],
    [13, -65, 154, -165, 42, 42, -20, 1],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scope {
    All,
    Bijection,
    Identities,
    Eco,
    Matrix,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Bijection => "bijection",
            Scope::Identities => "identities",
            Scope::Eco => "eco",
            Scope::Matrix => "matrix",
        }
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Scope::All),
            "bijection" => Ok(Scope::Bijection),
            "identities" => Ok(Scope::Identities),
            "eco" => Ok(Scope::Eco),
            "matrix" => Ok(Scope::Matrix),
            other => Err(format!("unknown scope {other:?}")),
        }
    }
}

/// Upper limits for the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest size checked by exhaustive sweeps.
    pub n_max: usize,
    /// Largest height bound for the tree and matrix sweeps.
    pub h_max: usize,
    /// Largest offset in the Catalan identity sweep.
    pub alpha_max: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            n_max: 9,
            h_max: 5,
            alpha_max: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} bound {value} exceeds the limit {limit}")]
pub struct BoundsExceeded {
    pub what: &'static str,
    pub value: usize,
    pub limit: usize,
}

/// Largest `n_max` accepted: the bijection sweep filters all `n!` permutations
/// and the tree sweep builds level `n_max + 1`.
pub const MAX_VERIFY_N: usize = 10;
pub const MAX_VERIFY_H: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub scope: Scope,
    pub name: &'static str,
    pub passed: bool,
    /// First counterexample, empty on success.
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, scope: Scope, name: &'static str, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(CheckResult {
            scope,
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {}/{}", c.scope.name(), c.name)?;
            if !c.passed {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

pub fn run(scope: Scope, bounds: Bounds) -> Result<Report, BoundsExceeded> {
    if bounds.n_max > MAX_VERIFY_N {
        return Err(BoundsExceeded {
            what: "n",
            value: bounds.n_max,
            limit: MAX_VERIFY_N,
        });
    }
    if bounds.h_max > MAX_VERIFY_H {
        return Err(BoundsExceeded {
            what: "h",
            value: bounds.h_max,
            limit: MAX_VERIFY_H,
        });
    }
    let mut report = Report::default();
    let wants = |s: Scope| scope == Scope::All || scope == s;
    if wants(Scope::Bijection) {
        bijection_checks(&mut report, bounds);
    }
    if wants(Scope::Identities) {
        identity_checks(&mut report, bounds);
    }
    if wants(Scope::Eco) {
        eco_checks(&mut report, bounds);
    }
    if wants(Scope::Matrix) {
        matrix_checks(&mut report, bounds);
    }
    Ok(report)
}

fn paths(n: usize) -> Vec<DyckPath> {
    enumerate_dyck_with_cap(n, DEFAULT_CAP).expect("verify bounds sit below the enumeration cap")
}

fn contains_312_cubic(p: &Permutation) -> bool {
    let e = p.entries();
    let n = e.len();
    (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| e[a] > e[c] && e[c] > e[b])))
}

fn bijection_checks(report: &mut Report, b: Bounds) {
    let s = Scope::Bijection;
    let mut avoiders: Vec<Vec<Permutation>> = Vec::new();
    let mut cubic = Ok(());
    for n in 0..=b.n_max {
        let mut level = Vec::new();
        for p in all_permutations(n) {
            let fast = p.avoids_312();
            if n <= 8 && cubic.is_ok() && fast == contains_312_cubic(&p) {
                cubic = Err(format!("stack scan and cubic search disagree on {p}"));
            }
            if fast {
                level.push(p);
            }
        }
        avoiders.push(level);
    }
    report.record(s, "avoids_312_stack_vs_cubic", cubic);

    report.record(
        s,
        "catalan_counts",
        (0..=b.n_max).try_for_each(|n| {
            let c = catalan::<BigInt>(n as u32);
            ensure(BigInt::from(paths(n).len()) == c, || format!("{n}: path count"))?;
            ensure(BigInt::from(avoiders[n].len()) == c, || format!("{n}: 312-avoider count"))
        }),
    );

    report.record(
        s,
        "path_round_trip",
        (0..=b.n_max).try_for_each(|n| {
            paths(n).iter().try_for_each(|p| {
                let image = path_to_perm(p);
                ensure(image.avoids_312(), || format!("image of {p} contains 312"))?;
                ensure(perm_to_path(&image).as_ref() == Ok(p), || format!("{p} does not round trip"))
            })
        }),
    );

    report.record(
        s,
        "perm_round_trip",
        avoiders.iter().flatten().try_for_each(|p| {
            let back = perm_to_path(p).map_err(|e| e.to_string())?;
            ensure(&path_to_perm(&back) == p, || format!("{p} does not round trip"))
        }),
    );

    report.record(
        s,
        "maxima_heights",
        (0..=b.n_max).try_for_each(|n| {
            paths(n).iter().try_for_each(|p| {
                let runs = p.down_runs();
                let maxima = lrm_heights(&path_to_perm(p)).map_err(|e| e.to_string())?;
                ensure(runs.len() == maxima.len(), || format!("{p}: run/maximum count"))?;
                runs.iter().zip(&maxima).try_for_each(|(run, (m, h))| {
                    ensure(run.height == *h, || {
                        format!("{p}: maximum {} at {} has excess {h}, run height {}", m.value, m.index, run.height)
                    })
                })
            })
        }),
    );

    report.record(
        s,
        "image_characterizations",
        (0..=b.n_max).try_for_each(|n| {
            let all = paths(n);
            (1..=n + 1).try_for_each(|h| {
                let bounded: BTreeSet<Permutation> =
                    all.iter().filter(|p| p.height() <= h).map(path_to_perm).collect();
                let s_h: BTreeSet<Permutation> = avoiders[n].iter().filter(|p| p.in_s_h(h)).cloned().collect();
                ensure(bounded == s_h, || format!("n={n} h={h}: height-bounded image differs"))?;
                let restricted: BTreeSet<Permutation> =
                    all.iter().filter(|p| p.in_class(h, 2)).map(path_to_perm).collect();
                let s_h2: BTreeSet<Permutation> = avoiders[n].iter().filter(|p| p.in_s_h2(h)).cloned().collect();
                ensure(restricted == s_h2, || format!("n={n} h={h}: valley-restricted image differs"))
            })
        }),
    );
}

fn identity_checks(report: &mut Report, b: Bounds) {
    let s = Scope::Identities;
    report.record(
        s,
        "table_1",
        TABLE_1.iter().enumerate().try_for_each(|(i, row)| {
            row.iter().enumerate().try_for_each(|(k, want)| {
                let (h, j) = (i + 1, k + 1);
                let got = a_coeff::<i64>(h, j).map_err(|e| e.to_string())?;
                ensure(got == *want, || format!("a({h},{j}) = {got}, table has {want}"))
            })
        }),
    );
    report.record(
        s,
        "coefficient_recurrence",
        (3..=14usize).try_for_each(|h| {
            let a = |h, j| a_coeff::<i64>(h, j).unwrap();
            ensure(a(h, 1) == a(h - 1, 1) + 1, || format!("j=1 case fails at h={h}"))?;
            (2..=q_degree(h)).try_for_each(|j| {
                ensure(a(h, j) == a(h - 1, j) - a(h - 2, j - 1), || format!("h={h} j={j}"))
            })
        }),
    );
    report.record(
        s,
        "polynomial_coefficients",
        (2..=14usize).try_for_each(|h| {
            let q = q_poly::<i64>(h).unwrap();
            ensure(q.degree() == Some(q_degree(h)), || format!("deg q_{h}"))?;
            ensure(q.coeff(0) == 1, || format!("q_{h}(0)"))?;
            (1..=10).try_for_each(|j| ensure(-q.coeff(j) == a_coeff::<i64>(h, j).unwrap(), || format!("h={h} j={j}")))
        }),
    );
    report.record(s, "fibonacci", {
        let got = gf::<BigInt>(2).unwrap().series(16).unwrap();
        let mut fib = vec![BigInt::from(1), BigInt::from(1)];
        while fib.len() < 17 {
            let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
            fib.push(next);
        }
        ensure(got == fib, || "series of f_2 is not Fibonacci".into())
    });
    report.record(s, "degenerate_h1", {
        let got = gf::<i64>(1).unwrap().series(10).unwrap();
        ensure(got.iter().enumerate().all(|(n, v)| *v == i64::from(n <= 1)), || format!("{got:?}"))
    });
    report.record(
        s,
        "continued_fraction",
        (2..=7usize).try_for_each(|h| {
            let a = continued_fraction_series::<BigInt>(h, 12).unwrap();
            let b = gf::<BigInt>(h).unwrap().series(12).unwrap();
            ensure(a == b, || format!("h={h}"))
        }),
    );
    report.record(
        s,
        "catalan_cutoff",
        (2..=12usize).try_for_each(|h| {
            let seq = count_sequence::<BigInt>(h, h).unwrap();
            seq.iter().enumerate().try_for_each(|(n, v)| {
                ensure(*v == catalan::<BigInt>(n as u32), || format!("h={h} n={n}"))
            })
        }),
    );
    report.record(
        s,
        "catalan_identity",
        (1..=b.n_max.max(1) as u32).try_for_each(|n| {
            (0..=b.alpha_max).try_for_each(|alpha| match catalan_identity::<BigInt>(n, alpha) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("n={n} alpha={alpha}: sides differ")),
                Err(e) => Err(format!("n={n} alpha={alpha}: {e}")),
            })
        }),
    );
}

fn eco_checks(report: &mut Report, b: Bounds) {
    let s = Scope::Eco;
    let n_max = b.n_max.min(MAX_VERIFY_N);
    let mut sound = Ok(());
    let mut disjoint = Ok(());
    let mut complete = Ok(());
    let mut coherent = Ok(());
    let mut commute = Ok(());
    for h in 3..=b.h_max.max(3) {
        let rule = omega(h).unwrap();
        let growth = PathGrowth { h };
        for n in 0..=n_max {
            let level = generate_level_with(&growth, n, n_max).unwrap();
            let mut seen = HashSet::new();
            for node in &level {
                let kids = theta(&node.object, h).unwrap();
                for child in &kids {
                    if sound.is_ok() && !(child.in_class(h, 2) && child.semilength() == n + 1) {
                        sound = Err(format!("h={h}: child {child} of {} leaves the class", node.object));
                    }
                    if !seen.insert(child.clone()) && disjoint.is_ok() {
                        disjoint = Err(format!("h={h}: {child} produced twice"));
                    }
                }
                let mut labels: Vec<Label> = kids.iter().map(|c| label_of(c, h).unwrap()).collect();
                labels.sort();
                let mut want = rule.children(node.label).to_vec();
                want.sort();
                if labels != want && coherent.is_ok() {
                    coherent = Err(format!("h={h}: children of {} disagree with the rule", node.object));
                }
                if n + 1 <= 8 && commute.is_ok() {
                    let image = path_to_perm(&node.object);
                    let a: BTreeSet<Permutation> = kids.iter().map(path_to_perm).collect();
                    let b: BTreeSet<Permutation> = theta_perm(&image, h).unwrap().into_iter().collect();
                    if a != b {
                        commute = Err(format!("h={h}: growth of {image} differs from its path"));
                    }
                }
            }
            if complete.is_ok() {
                let expected: HashSet<DyckPath> = paths(n + 1).into_iter().filter(|p| p.in_class(h, 2)).collect();
                if expected != seen {
                    complete = Err(format!("h={h} n={}: next level not covered exactly", n + 1));
                }
            }
        }
    }
    report.record(s, "theta_sound", sound);
    report.record(s, "theta_disjoint", disjoint);
    report.record(s, "theta_complete", complete);
    report.record(s, "label_coherence", coherent);
    report.record(s, "perm_growth_commutes", commute);

    report.record(
        s,
        "symbolic_vs_concrete",
        (3..=b.h_max.max(3)).try_for_each(|h| {
            let rule = omega(h).unwrap();
            (0..=n_max).try_for_each(|n| {
                let level = generate_level_with(&PathGrowth { h }, n, n_max).unwrap();
                let (total, per) = symbolic_counts::<BigInt>(&rule, n);
                let mut grouped: BTreeMap<Label, BigInt> = BTreeMap::new();
                for node in &level {
                    *grouped.entry(node.label).or_default() += 1;
                }
                ensure(total == BigInt::from(level.len()) && grouped == per, || format!("h={h} n={n}"))
            })
        }),
    );
}

fn matrix_checks(report: &mut Report, b: Bounds) {
    let s = Scope::Matrix;
    let h_top = b.h_max.max(3);
    report.record(
        s,
        "rule_vs_block",
        (3..=h_top.max(10)).try_for_each(|h| {
            let from_rule = build_from_rule::<BigInt>(&omega(h).unwrap()).unwrap();
            ensure(from_rule == build_block(h).unwrap(), || format!("h={h}"))?;
            from_rule.row_sums().iter().enumerate().try_for_each(|(i, sum)| {
                ensure(*sum == BigInt::from(i + 1), || format!("h={h}: row {} sums to {sum}", i + 1))
            })
        }),
    );
    report.record(
        s,
        "matrix_vs_symbolic",
        (3..=h_top).try_for_each(|h| {
            let rule = omega(h).unwrap();
            let m = build_from_rule::<BigInt>(&rule).unwrap();
            (0..=b.n_max).try_for_each(|n| {
                let (_, v) = level_count(&m, Label(1), n).unwrap();
                let (_, per) = symbolic_counts::<BigInt>(&rule, n);
                (1..=h).try_for_each(|k| {
                    let want = per.get(&Label(k)).cloned().unwrap_or_default();
                    ensure(v.get(Label(k)) == want, || format!("h={h} n={n} label ({k})"))
                })
            })
        }),
    );
    report.record(
        s,
        "count_agreement",
        (2..=h_top).try_for_each(|h| {
            let rec = count_sequence::<BigInt>(h, b.n_max).unwrap();
            let ser = gf::<BigInt>(h).unwrap().series(b.n_max).unwrap();
            let mat = level_totals(&build_block::<BigInt>(h).unwrap(), Label(1), b.n_max).unwrap();
            (0..=b.n_max).try_for_each(|n| {
                let brute = BigInt::from(paths(n).iter().filter(|p| p.in_class(h, 2)).count());
                let mut values = vec![("recurrence", &rec[n]), ("series", &ser[n]), ("matrix", &mat[n]), ("brute", &brute)];
                let eco;
                if h >= 3 {
                    eco = symbolic_counts::<BigInt>(&omega(h).unwrap(), n).0;
                    values.push(("eco", &eco));
                }
                ensure(values.iter().all(|(_, v)| *v == values[0].1), || format!("h={h} n={n}: {values:?}"))
            })
        }),
    );
}
