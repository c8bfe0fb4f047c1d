use std::fmt::{Display, Write as _};

use bounded_dyck::dyck::{count_brute_with_cap, for_each_dyck};
use bounded_dyck::eco::{generate_level_with, symbolic_totals, Growth, PathGrowth, PermGrowth};
use bounded_dyck::prodmat::level_totals;
use bounded_dyck::verify::{self, Bounds, Scope};
use bounded_dyck::{
    a_coeff, build_block, count_sequence, gf, omega, omega2, parse_path, parse_perm, path_to_perm, perm_to_path,
    BigInt, Label, SuccessionRule,
};
use serde_json::{json, Value};

use crate::output::{big, bigs, csv_table, record, show_path, Format};
use crate::{usage, CliError, Direction, Kind, Method, Outcome, VerifyScope};

/// Polynomial-time counting methods accept sizes up to this bound.
pub const MAX_COUNT_N: usize = 512;

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recurrence => "recurrence",
        Method::Series => "series",
        Method::Matrix => "matrix",
        Method::Brute => "brute",
        Method::Eco => "eco",
        Method::All => "all",
    }
}

fn require_h(h: usize, min: usize, what: &str) -> Result<(), CliError> {
    if h < min {
        Err(usage(format!("{what} needs h >= {min}, got {h}")))
    } else {
        Ok(())
    }
}

fn run_method(method: Method, h: usize, n_max: usize, cap: usize) -> Result<Vec<BigInt>, CliError> {
    match method {
        Method::Recurrence => {
            require_h(h, 2, "the recurrence")?;
            count_sequence(h, n_max).map_err(usage)
        }
        Method::Series => gf::<BigInt>(h).and_then(|f| f.series(n_max)).map_err(usage),
        Method::Matrix => {
            require_h(h, 2, "the production matrix")?;
            let m = build_block::<BigInt>(h).map_err(usage)?;
            level_totals(&m, Label(1), n_max).map_err(usage)
        }
        Method::Brute => (0..=n_max)
            .map(|n| count_brute_with_cap(n, h, 2, cap).map(BigInt::from).map_err(usage))
            .collect(),
        Method::Eco => {
            require_h(h, 3, "the ECO rule")?;
            Ok(symbolic_totals(&omega(h).map_err(usage)?, n_max))
        }
        Method::All => unreachable!("expanded by the caller"),
    }
}

pub fn count(h: usize, n_max: usize, method: Method, cap: usize, fmt: Format) -> Result<Outcome, CliError> {
    require_h(h, 1, "counting")?;
    if n_max > MAX_COUNT_N {
        return Err(usage(format!("n-max {n_max} exceeds {MAX_COUNT_N}")));
    }
    let methods: Vec<Method> = if method == Method::All {
        let mut ms = vec![Method::Series];
        if h >= 2 {
            ms.insert(0, Method::Recurrence);
            ms.push(Method::Matrix);
        }
        if n_max <= cap {
            ms.push(Method::Brute);
        }
        if h >= 3 {
            ms.push(Method::Eco);
        }
        ms
    } else {
        if method == Method::Brute && n_max > cap {
            return Err(usage(format!("brute force is capped at n = {cap}, asked for {n_max}")));
        }
        vec![method]
    };
    let results = methods
        .iter()
        .map(|&m| run_method(m, h, n_max, cap))
        .collect::<Result<Vec<_>, _>>()?;

    let values = &results[0];
    for n in 0..=n_max {
        if results.iter().any(|r| r[n] != values[n]) {
            let detail: Vec<String> = methods
                .iter()
                .zip(&results)
                .map(|(m, r)| format!("{}={}", method_name(*m), r[n]))
                .collect();
            return Err(CliError::Verification(format!(
                "methods disagree at n = {n}: {}",
                detail.join(", ")
            )));
        }
    }

    let names: Vec<&str> = methods.iter().map(|m| method_name(*m)).collect();
    let stdout = match fmt {
        Format::Text => {
            let mut s = values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            s.push('\n');
            if method == Method::All {
                let _ = writeln!(s, "# agreement: {}", names.join(","));
            }
            s
        }
        Format::Csv => {
            let mut header = vec!["n"];
            header.extend(&names);
            let rows: Vec<Vec<String>> = (0..=n_max)
                .map(|n| {
                    let mut row = vec![n.to_string()];
                    row.extend(results.iter().map(|r| r[n].to_string()));
                    row
                })
                .collect();
            csv_table(&header, &rows)
        }
        Format::Json => record(
            "count",
            json!({
                "h": h,
                "n_max": n_max,
                "method": method_name(method),
                "methods": names,
                "values": bigs(values),
            }),
        ),
    };
    Ok(Outcome::ok(stdout))
}

struct Listed {
    object: String,
    label: Option<Label>,
}

fn listed_objects(h: usize, n: usize, kind: Kind, cap: usize) -> Result<Vec<Listed>, CliError> {
    if h >= 3 {
        let items = match kind {
            Kind::Paths => generate_level_with(&PathGrowth { h }, n, cap)
                .map_err(usage)?
                .into_iter()
                .map(|node| Listed {
                    object: node.object.to_string(),
                    label: Some(node.label),
                })
                .collect(),
            Kind::Perms => generate_level_with(&PermGrowth { h }, n, cap)
                .map_err(usage)?
                .into_iter()
                .map(|node| Listed {
                    object: node.object.to_string(),
                    label: Some(node.label),
                })
                .collect(),
        };
        return Ok(items);
    }
    // no ECO operator below h = 3: filter in lexicographic path order
    let mut items = Vec::new();
    for_each_dyck(n, cap, |p| {
        if p.in_class(h, 2) {
            let object = match kind {
                Kind::Paths => p.to_string(),
                Kind::Perms => path_to_perm(p).to_string(),
            };
            items.push(Listed { object, label: None });
        }
    })
    .map_err(usage)?;
    Ok(items)
}

pub fn list(h: usize, n: usize, kind: Kind, cap: usize, fmt: Format) -> Result<Outcome, CliError> {
    require_h(h, 1, "listing")?;
    let items = listed_objects(h, n, kind, cap)?;
    let stdout = match fmt {
        Format::Text => items
            .iter()
            .map(|it| match it.label {
                Some(l) => format!("{} {l}\n", show_path(&it.object)),
                None => format!("{}\n", show_path(&it.object)),
            })
            .collect(),
        Format::Csv => csv_table(
            &["object", "label"],
            &items
                .iter()
                .map(|it| vec![it.object.clone(), it.label.map(|l| l.0.to_string()).unwrap_or_default()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => record(
            "list",
            json!({
                "h": h,
                "n": n,
                "kind": if kind == Kind::Paths { "paths" } else { "perms" },
                "count": items.len(),
                "items": items
                    .iter()
                    .map(|it| json!({"object": it.object, "label": it.label.map(|l| l.0)}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Outcome::ok(stdout))
}

/// Per-line results: rendered output or an error message.
fn render_lines(command: &str, inputs: &[String], results: &[Result<String, String>], fmt: Format) -> Outcome {
    let mut stderr = String::new();
    for (i, r) in results.iter().enumerate() {
        if let Err(e) = r {
            let _ = writeln!(stderr, "line {}: {e}", i + 1);
        }
    }
    let stdout = match fmt {
        Format::Text => results
            .iter()
            .map(|r| match r {
                Ok(s) => format!("{s}\n"),
                Err(e) => format!("error: {e}\n"),
            })
            .collect(),
        Format::Csv => csv_table(
            &["input", "output", "error"],
            &inputs
                .iter()
                .zip(results)
                .map(|(input, r)| match r {
                    Ok(s) => vec![input.clone(), s.clone(), String::new()],
                    Err(e) => vec![input.clone(), String::new(), e.clone()],
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => record(
            command,
            json!({
                "items": inputs
                    .iter()
                    .zip(results)
                    .map(|(input, r)| match r {
                        Ok(s) => json!({"input": input, "output": s, "error": null}),
                        Err(e) => json!({"input": input, "output": null, "error": e}),
                    })
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    let code = if results.iter().any(Result::is_err) { 2 } else { 0 };
    Outcome { stdout, stderr, code }
}

pub fn map(direction: Direction, inputs: &[String], fmt: Format) -> Outcome {
    let results: Vec<Result<String, String>> = inputs
        .iter()
        .map(|line| {
            let line = line.trim();
            let to_perm = match direction {
                Direction::ToPerm => true,
                Direction::ToPath => false,
                Direction::Auto => line.chars().all(|c| c == 'U' || c == 'D'),
            };
            if to_perm {
                parse_path(line).map(|p| path_to_perm(&p).to_string()).map_err(|e| e.to_string())
            } else {
                parse_perm(line)
                    .map_err(|e| e.to_string())
                    .and_then(|p| perm_to_path(&p).map_err(|e| e.to_string()))
                    .map(|p| p.to_string())
            }
        })
        .collect();
    render_lines("map", inputs, &results, fmt)
}

pub fn classify(h: usize, k: usize, inputs: &[String], fmt: Format) -> Result<Outcome, CliError> {
    require_h(h, 1, "membership")?;
    if k < 2 {
        return Err(usage(format!("k must be at least 2, got {k}")));
    }
    let results: Vec<Result<String, String>> = inputs
        .iter()
        .map(|line| {
            parse_path(line.trim())
                .map(|p| p.in_class(h, k).to_string())
                .map_err(|e| e.to_string())
        })
        .collect();
    Ok(render_lines("classify", inputs, &results, fmt))
}

struct TreeWalk<'a, G: Growth> {
    growth: &'a G,
    depth: usize,
    text: String,
    rows: Vec<Vec<String>>,
}

impl<G: Growth> TreeWalk<'_, G>
where
    G::Object: Display,
{
    fn visit(&mut self, object: &G::Object, level: usize, parent: Option<usize>) -> Result<Value, CliError> {
        let label = self.growth.label(object).map_err(usage)?;
        let shown = object.to_string();
        let id = self.rows.len();
        let _ = writeln!(self.text, "{}{} {label}", "  ".repeat(level), show_path(&shown));
        self.rows.push(vec![
            id.to_string(),
            parent.map(|p| p.to_string()).unwrap_or_default(),
            level.to_string(),
            shown.clone(),
            label.0.to_string(),
        ]);
        let mut children = Vec::new();
        if level < self.depth {
            for child in self.growth.expand(object).map_err(usage)? {
                children.push(self.visit(&child, level + 1, Some(id))?);
            }
        }
        Ok(json!({"object": shown, "label": label.0, "children": children}))
    }
}

fn walk<G: Growth>(growth: &G, h: usize, depth: usize, fmt: Format) -> Result<String, CliError>
where
    G::Object: Display,
{
    let mut w = TreeWalk {
        growth,
        depth,
        text: String::new(),
        rows: Vec::new(),
    };
    let root = w.visit(&growth.root(), 0, None)?;
    Ok(match fmt {
        Format::Text => w.text,
        Format::Csv => csv_table(&["id", "parent", "level", "object", "label"], &w.rows),
        Format::Json => record("tree", json!({"h": h, "depth": depth, "root": root})),
    })
}

pub fn tree(h: usize, depth: usize, kind: Kind, cap: usize, fmt: Format) -> Result<Outcome, CliError> {
    require_h(h, 3, "the generating tree")?;
    if depth > cap {
        return Err(usage(format!("depth {depth} exceeds the cap {cap}")));
    }
    let stdout = match kind {
        Kind::Paths => walk(&PathGrowth { h }, h, depth, fmt)?,
        Kind::Perms => walk(&PermGrowth { h }, h, depth, fmt)?,
    };
    Ok(Outcome::ok(stdout))
}

fn rule_for(h: usize) -> Result<SuccessionRule, CliError> {
    match h {
        2 => Ok(omega2()),
        _ => omega(h).map_err(usage),
    }
}

pub fn rule(h: usize, fmt: Format) -> Result<Outcome, CliError> {
    let r = rule_for(h)?;
    let stdout = match fmt {
        Format::Text => r.to_string(),
        Format::Csv => csv_table(
            &["label", "children"],
            &r.productions
                .iter()
                .map(|(k, kids)| {
                    vec![
                        k.0.to_string(),
                        kids.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => record(
            "rule",
            json!({
                "h": h,
                "axiom": r.axiom.0,
                "productions": r
                    .productions
                    .iter()
                    .map(|(k, kids)| json!({"label": k.0, "children": kids.iter().map(|c| c.0).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Outcome::ok(stdout))
}

pub fn matrix(h: usize, fmt: Format) -> Result<Outcome, CliError> {
    let m = build_block::<BigInt>(h).map_err(usage)?;
    let stdout = match fmt {
        Format::Text => m.to_string(),
        Format::Csv => {
            let mut header = vec!["label".to_string()];
            header.extend((1..=m.dim()).map(|j| j.to_string()));
            let rows: Vec<Vec<String>> = m
                .rows()
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut out = vec![(i + 1).to_string()];
                    out.extend(row.iter().map(ToString::to_string));
                    out
                })
                .collect();
            csv_table(&header, &rows)
        }
        Format::Json => record(
            "matrix",
            json!({"h": h, "rows": m.rows().iter().map(|r| bigs(r)).collect::<Vec<_>>()}),
        ),
    };
    Ok(Outcome::ok(stdout))
}

pub fn generating_function(h: usize, fmt: Format) -> Result<Outcome, CliError> {
    let f = gf::<BigInt>(h).map_err(usage)?;
    let stdout = match fmt {
        Format::Text => format!("f_{h}(x) = ({}) / ({})\n", f.numerator, f.denominator),
        Format::Csv => {
            let top = f.numerator.coeffs().len().max(f.denominator.coeffs().len());
            let rows: Vec<Vec<String>> = (0..top)
                .map(|i| vec![i.to_string(), f.numerator.coeff(i).to_string(), f.denominator.coeff(i).to_string()])
                .collect();
            csv_table(&["power", "numerator", "denominator"], &rows)
        }
        Format::Json => record(
            "gf",
            json!({
                "h": h,
                "numerator": bigs(f.numerator.coeffs()),
                "denominator": bigs(f.denominator.coeffs()),
            }),
        ),
    };
    Ok(Outcome::ok(stdout))
}

pub fn table(h_max: usize, j_max: usize, fmt: Format) -> Result<Outcome, CliError> {
    if h_max == 0 || j_max == 0 {
        return Err(usage("h-max and j-max must be positive"));
    }
    let rows: Vec<Vec<BigInt>> = (1..=h_max)
        .map(|h| (1..=j_max).map(|j| a_coeff::<BigInt>(h, j)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let stdout = match fmt {
        Format::Text => {
            let width = rows
                .iter()
                .flatten()
                .map(|v| v.to_string().len())
                .chain([h_max.to_string().len(), 3])
                .max()
                .unwrap_or(1);
            let mut s = format!("{:>width$}", "h/j");
            for j in 1..=j_max {
                let _ = write!(s, " {j:>width$}");
            }
            s.push('\n');
            for (i, row) in rows.iter().enumerate() {
                let _ = write!(s, "{:>width$}", i + 1);
                for v in row {
                    let _ = write!(s, " {:>width$}", v.to_string());
                }
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let mut header = vec!["h".to_string()];
            header.extend((1..=j_max).map(|j| j.to_string()));
            let body: Vec<Vec<String>> = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut out = vec![(i + 1).to_string()];
                    out.extend(row.iter().map(ToString::to_string));
                    out
                })
                .collect();
            csv_table(&header, &body)
        }
        Format::Json => record(
            "table",
            json!({
                "h_max": h_max,
                "j_max": j_max,
                "rows": rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| json!({"h": i + 1, "a": row.iter().map(big).collect::<Vec<_>>()}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Outcome::ok(stdout))
}

pub fn verify(scope: VerifyScope, n_max: usize, h_max: usize, alpha_max: u32, fmt: Format) -> Result<Outcome, CliError> {
    let scope = match scope {
        VerifyScope::All => Scope::All,
        VerifyScope::Bijection => Scope::Bijection,
        VerifyScope::Identities => Scope::Identities,
        VerifyScope::Eco => Scope::Eco,
        VerifyScope::Matrix => Scope::Matrix,
    };
    let bounds = Bounds {
        n_max,
        h_max,
        alpha_max,
    };
    let report = verify::run(scope, bounds).map_err(usage)?;
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let stdout = match fmt {
        Format::Text => format!("{report}{passed}/{} checks passed\n", report.checks.len()),
        Format::Csv => csv_table(
            &["scope", "name", "passed", "detail"],
            &report
                .checks
                .iter()
                .map(|c| vec![c.scope.name().into(), c.name.into(), c.passed.to_string(), c.detail.clone()])
                .collect::<Vec<_>>(),
        ),
        Format::Json => record(
            "verify",
            json!({
                "scope": scope.name(),
                "bounds": {"n_max": n_max, "h_max": h_max, "alpha_max": alpha_max},
                "passed": report.all_passed(),
                "checks": report
                    .checks
                    .iter()
                    .map(|c| json!({"scope": c.scope.name(), "name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if report.all_passed() { 0 } else { 1 },
    })
}
