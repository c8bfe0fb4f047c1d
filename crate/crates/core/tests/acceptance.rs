//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any fails.
//!
//! Oracles here are written independently of the library: paths are
//! generated from strings, counts come from a height/last-step DP, Catalan
//! numbers from the convolution, and 312 containment from the cubic search.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use bounded_dyck::eco::{generate_level_with, PathGrowth};
use bounded_dyck::perm::all_permutations;
use bounded_dyck::prodmat::level_totals;
use bounded_dyck::{
    a_coeff, build_block, build_from_rule, catalan_identity, count_brute, count_recurrence, count_sequence, gf,
    label_of, omega, parse_path, path_to_perm, perm_to_path, series, symbolic_counts, theta, BigInt, DyckPath, Label,
    Permutation,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

const TABLE: [[i64; 8]; 14] = [
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

// ---- oracles ---------------------------------------------------------------

/// C_0..=C_n from C_{m+1} = sum C_i C_{m-i}.
fn catalans(n: usize) -> Vec<i64> {
    let mut c = vec![1i64];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c
}

/// Every Dyck word of semilength `n`, built character by character.
fn dyck_words(n: usize) -> Vec<String> {
    fn go(up: usize, down: usize, n: usize, cur: &mut String, out: &mut Vec<String>) {
        if up == n && down == n {
            out.push(cur.clone());
            return;
        }
        if up < n {
            cur.push('U');
            go(up + 1, down, n, cur, out);
            cur.pop();
        }
        if down < up {
            cur.push('D');
            go(up, down + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut String::new(), &mut out);
    out
}

fn ordinates(word: &str) -> Vec<i64> {
    word.chars()
        .scan(0i64, |y, c| {
            *y += if c == 'U' { 1 } else { -1 };
            Some(*y)
        })
        .collect()
}

/// Height at most `h`, and no `DU` whose middle vertex is at `h - 1`.
fn word_in_class(word: &str, h: usize) -> bool {
    let ys = ordinates(word);
    let b = word.as_bytes();
    ys.iter().all(|&y| y <= h as i64) && (0..b.len().saturating_sub(1)).all(|i| !(b[i] == b'D' && b[i + 1] == b'U' && ys[i] == h as i64 - 1))
}

/// |D_n^(h,2)| for n = 0..=n_max, by a DP over (ordinate, last step was D).
fn dp_counts(h: usize, n_max: usize) -> Vec<i64> {
    let h = h as i64;
    (0..=n_max)
        .map(|n| {
            // state[y][last_down]
            let mut state = vec![[0i64; 2]; h as usize + 1];
            state[0][0] = 1;
            for _ in 0..2 * n {
                let mut next = vec![[0i64; 2]; h as usize + 1];
                for y in 0..=h {
                    for last_down in 0..2 {
                        let c = state[y as usize][last_down];
                        if c == 0 {
                            continue;
                        }
                        let valley_here = last_down == 1 && y == h - 1;
                        if y < h && !valley_here {
                            next[y as usize + 1][0] += c;
                        }
                        if y > 0 {
                            next[y as usize - 1][1] += c;
                        }
                    }
                }
                state = next;
            }
            state[0][0] + state[0][1]
        })
        .collect()
}

fn contains_312(p: &[usize]) -> bool {
    let n = p.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| p[j] < p[k] && p[k] < p[i])))
}

/// (1-based index, value) of each left-to-right maximum.
fn maxima(p: &[usize]) -> Vec<(usize, usize)> {
    let mut best = 0;
    let mut out = Vec::new();
    for (i, &v) in p.iter().enumerate() {
        if v > best {
            best = v;
            out.push((i + 1, v));
        }
    }
    out
}

/// Ordinate after the first step of each maximal run of down steps.
fn run_heights(word: &str) -> Vec<i64> {
    let ys = ordinates(word);
    let b = word.as_bytes();
    (0..b.len())
        .filter(|&i| b[i] == b'D' && (i == 0 || b[i - 1] == b'U'))
        .map(|i| ys[i])
        .collect()
}

fn avoiders(n: usize) -> Vec<Permutation> {
    all_permutations(n).filter(|p| p.avoids_312()).collect()
}

fn path(word: &str) -> DyckPath {
    parse_path(word).expect("oracle words are Dyck words")
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

// ---- criteria --------------------------------------------------------------

fn table_regression() -> Outcome {
    for (i, row) in TABLE.iter().enumerate() {
        for (k, &want) in row.iter().enumerate() {
            let (h, j) = (i + 1, k + 1);
            let got = a_coeff::<BigInt>(h, j).map_err(|e| e.to_string())?;
            ensure(got == big(want), || format!("a({h},{j}) = {got}, table says {want}"))?;
        }
    }
    Ok(())
}

fn fibonacci() -> Outcome {
    let mut fib = vec![1i64, 1];
    while fib.len() < 17 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let got = series(&gf::<i64>(2).map_err(|e| e.to_string())?, 16).map_err(|e| e.to_string())?;
    ensure(got == fib, || format!("{got:?}"))
}

fn degenerate_h1() -> Outcome {
    let got = series(&gf::<i64>(1).map_err(|e| e.to_string())?, 10).map_err(|e| e.to_string())?;
    let mut want = vec![0i64; 11];
    want[0] = 1;
    want[1] = 1;
    ensure(got == want, || format!("{got:?}"))
}

fn catalan_cutoff() -> Outcome {
    let c = catalans(12);
    for h in 1..=12 {
        for n in 0..=h {
            // the recurrence starts at h = 2; the h = 1 row comes from the series
            let got: BigInt = if h == 1 {
                series(&gf::<BigInt>(1).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?[n].clone()
            } else {
                count_recurrence(h, n).map_err(|e| e.to_string())?
            };
            ensure(got == big(c[n]), || format!("h={h} n={n}: {got} vs C_n = {}", c[n]))?;
        }
    }
    Ok(())
}

fn catalan_identity_sweep() -> Outcome {
    for n in 1..=12u32 {
        for alpha in 0..=6u32 {
            let ok = catalan_identity::<BigInt>(n, alpha).map_err(|e| e.to_string())?;
            ensure(ok, || format!("n={n} alpha={alpha}"))?;
        }
    }
    Ok(())
}

fn four_way_agreement() -> Outcome {
    const N: usize = 12;
    for h in 2..=7 {
        let oracle = dp_counts(h, N);
        let rec: Vec<BigInt> = count_sequence(h, N).map_err(|e| e.to_string())?;
        let ser: Vec<BigInt> = series(&gf::<BigInt>(h).map_err(|e| e.to_string())?, N).map_err(|e| e.to_string())?;
        let m = build_block::<BigInt>(h).map_err(|e| e.to_string())?;
        let mat = level_totals(&m, Label(1), N).map_err(|e| e.to_string())?;
        for n in 0..=N {
            let want = big(oracle[n]);
            let brute = BigInt::from(count_brute(n, h, 2).map_err(|e| e.to_string())?);
            ensure(brute == want, || format!("h={h} n={n}: brute {brute} vs {want}"))?;
            ensure(rec[n] == want, || format!("h={h} n={n}: recurrence {} vs {want}", rec[n]))?;
            ensure(ser[n] == want, || format!("h={h} n={n}: series {} vs {want}", ser[n]))?;
            ensure(mat[n] == want, || format!("h={h} n={n}: matrix {} vs {want}", mat[n]))?;
            if h >= 3 {
                let tree = generate_level_with(&PathGrowth { h }, n, N).map_err(|e| e.to_string())?;
                ensure(big(tree.len() as i64) == want, || format!("h={h} n={n}: tree {} vs {want}", tree.len()))?;
            }
        }
    }
    Ok(())
}

fn round_trips() -> Outcome {
    let c = catalans(10);
    for n in 0..=10 {
        let words = dyck_words(n);
        ensure(words.len() as i64 == c[n], || format!("oracle produced {} words at n={n}", words.len()))?;
        for w in &words {
            let p = path(w);
            let back = perm_to_path(&path_to_perm(&p)).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("{w} -> {back}"))?;
        }
    }
    for n in 0..=8 {
        for p in all_permutations(n) {
            ensure(p.avoids_312() != contains_312(p.entries()), || format!("stack scan wrong on {p}"))?;
        }
    }
    for n in 0..=9 {
        let level = avoiders(n);
        ensure(level.len() as i64 == c[n], || format!("{} avoiders at n={n}", level.len()))?;
        for p in &level {
            let back = path_to_perm(&perm_to_path(p).map_err(|e| e.to_string())?);
            ensure(&back == p, || format!("{p} -> {back}"))?;
        }
    }
    Ok(())
}

fn maxima_heights() -> Outcome {
    for n in 0..=9 {
        for w in dyck_words(n) {
            let image = path_to_perm(&path(&w));
            let m = maxima(image.entries());
            let runs = run_heights(&w);
            ensure(m.len() == runs.len(), || format!("{w}: {} maxima, {} runs", m.len(), runs.len()))?;
            for ((index, value), height) in m.iter().zip(&runs) {
                ensure((*value as i64 - *index as i64) == *height, || {
                    format!("{w}: maximum {value} at {index}, run height {height}")
                })?;
            }
        }
    }
    Ok(())
}

fn image_characterizations() -> Outcome {
    for n in 0..=9 {
        let words = dyck_words(n);
        let level = avoiders(n);
        for h in 1..=n + 1 {
            let bounded: BTreeSet<Permutation> = words
                .iter()
                .filter(|w| ordinates(w).iter().all(|&y| y <= h as i64))
                .map(|w| path_to_perm(&path(w)))
                .collect();
            let s_h: BTreeSet<Permutation> = level.iter().filter(|p| p.in_s_h(h)).cloned().collect();
            ensure(bounded == s_h, || format!("n={n} h={h}: height-bounded image"))?;
            // the height predicate itself, read straight off the maxima
            let by_maxima: BTreeSet<Permutation> = level
                .iter()
                .filter(|p| maxima(p.entries()).iter().all(|(i, v)| v - i < h))
                .cloned()
                .collect();
            ensure(by_maxima == s_h, || format!("n={n} h={h}: excess bound"))?;

            let restricted: BTreeSet<Permutation> = words
                .iter()
                .filter(|w| word_in_class(w, h))
                .map(|w| path_to_perm(&path(w)))
                .collect();
            let s_h2: BTreeSet<Permutation> = level.iter().filter(|p| p.in_s_h2(h)).cloned().collect();
            ensure(restricted == s_h2, || format!("n={n} h={h}: valley-restricted image"))?;
        }
    }
    Ok(())
}

fn eco_soundness() -> Outcome {
    for h in 3..=5 {
        for n in 0..=9 {
            let parents: Vec<String> = dyck_words(n).into_iter().filter(|w| word_in_class(w, h)).collect();
            let expected: HashSet<String> = dyck_words(n + 1).into_iter().filter(|w| word_in_class(w, h)).collect();
            let mut seen = HashSet::new();
            for w in &parents {
                for child in theta(&path(w), h).map_err(|e| e.to_string())? {
                    let s = child.to_string();
                    ensure(expected.contains(&s), || format!("h={h}: {s} from {w} is outside the class"))?;
                    ensure(seen.insert(s.clone()), || format!("h={h}: {s} produced twice"))?;
                }
            }
            ensure(seen == expected, || format!("h={h} n={}: {} of {} covered", n + 1, seen.len(), expected.len()))?;
        }
    }
    Ok(())
}

fn rule_matrix_coherence() -> Outcome {
    for h in 3..=10 {
        let rule = omega(h).map_err(|e| e.to_string())?;
        let from_rule = build_from_rule::<BigInt>(&rule).map_err(|e| e.to_string())?;
        let block = build_block::<BigInt>(h).map_err(|e| e.to_string())?;
        ensure(from_rule == block, || format!("h={h}:\n{from_rule}vs\n{block}"))?;
    }
    for h in 3..=6 {
        let rule = omega(h).map_err(|e| e.to_string())?;
        let m = build_block::<BigInt>(h).map_err(|e| e.to_string())?;
        for n in 0..=10 {
            let (total, per) = symbolic_counts::<BigInt>(&rule, n);
            let (mat_total, vec) = bounded_dyck::level_count(&m, Label(1), n).map_err(|e| e.to_string())?;
            ensure(total == mat_total, || format!("h={h} n={n}: totals {total} vs {mat_total}"))?;
            for l in 1..=h {
                let want = per.get(&Label(l)).cloned().unwrap_or_default();
                ensure(vec.get(Label(l)) == want, || format!("h={h} n={n} label {l}"))?;
            }
            // labels of the concrete level agree with the symbolic split
            if n <= 8 {
                let mut counted = vec![0i64; h + 1];
                for w in dyck_words(n).iter().filter(|w| word_in_class(w, h)) {
                    counted[label_of(&path(w), h).map_err(|e| e.to_string())?.0] += 1;
                }
                for l in 1..=h {
                    let want = per.get(&Label(l)).cloned().unwrap_or_default();
                    ensure(big(counted[l]) == want, || format!("h={h} n={n} label {l}: concrete {}", counted[l]))?;
                }
            }
        }
    }
    Ok(())
}

fn coefficient_recurrence() -> Outcome {
    let a = |h: usize, j: usize| a_coeff::<BigInt>(h, j).map_err(|e| e.to_string());
    for h in 3..=14 {
        ensure(a(h, 1)? == a(h - 1, 1)? + 1, || format!("a({h},1)"))?;
        for j in 2..=8 {
            ensure(a(h, j)? == a(h - 1, j)? - a(h - 2, j - 1)?, || format!("a({h},{j})"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("table_regression", table_regression),
        ("fibonacci", fibonacci),
        ("degenerate_h1", degenerate_h1),
        ("catalan_cutoff", catalan_cutoff),
        ("catalan_identity_sweep", catalan_identity_sweep),
        ("four_way_count_agreement", four_way_agreement),
        ("bijection_round_trips", round_trips),
        ("maxima_match_run_heights", maxima_heights),
        ("image_characterizations", image_characterizations),
        ("eco_soundness", eco_soundness),
        ("rule_matrix_coherence", rule_matrix_coherence),
        ("coefficient_recurrence", coefficient_recurrence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {name} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
