use std::collections::BTreeMap;

use compjac::cabled::{cabled_count, enumerate_patterns, pattern_weight, piontkowski_chi, Family};
use compjac::classes::{
    build_bicolored, minimal_point, monotone_path, normalize, ClassDecomposition,
};
use compjac::dyck::{bizley_table, count_paths, poincare, qt_catalan};
use compjac::invariant::{admissible_subsets, enumerate_bounded, CurveParams, InvariantSubset};
use compjac::shuffle::verify_identity;
use compjac::verify::{run_all, Suite, VerifyConfig};
use compjac::{Error, Result};
use serde_json::{json, Value};

use crate::output::{join, latex_polynomial, latex_tabular, Output, Table};

fn single(json: Value, header: &str, value: String, latex: String) -> Output {
    let mut table = Table::new([header]);
    table.push([value.clone()]);
    Output {
        json,
        table,
        latex,
        plain: value,
        success: true,
    }
}

pub fn poincare_cmd(n: u32, m: u32, d: u32, cohomological: bool) -> Result<Output> {
    let p = poincare(n, m, d, cohomological)?;
    let mut table = Table::new(["degree", "coefficient"]);
    for (e, c) in p.terms() {
        table.push([e.to_string(), c.to_string()]);
    }
    Ok(Output {
        json: json!({"n": n, "m": m, "d": d, "cohomological": cohomological, "polynomial": p}),
        table,
        latex: format!("${}$", latex_polynomial(&p.to_string())),
        plain: p.to_string(),
        success: true,
    })
}

pub fn qt_catalan_cmd(a: u32, b: u32) -> Result<Output> {
    let c = qt_catalan(a, b)?;
    let mut table = Table::new(["q", "t", "coefficient"]);
    for ((i, j), coefficient) in c.terms() {
        table.push([i.to_string(), j.to_string(), coefficient.to_string()]);
    }
    Ok(Output {
        json: json!({"a": a, "b": b, "polynomial": c}),
        table,
        latex: format!(
            "$C_{{{a},{b}}}(q,t) = {}$",
            latex_polynomial(&c.to_string())
        ),
        plain: c.to_string(),
        success: true,
    })
}

pub fn count_cmd(a: u32, b: u32) -> Result<Output> {
    let c = count_paths(a, b)?.to_string();
    Ok(single(
        json!({"a": a, "b": b, "count": c}),
        "count",
        c.clone(),
        format!("$c_{{{a},{b}}} = {c}$"),
    ))
}

fn gaps_text(x: &InvariantSubset) -> String {
    join(&x.gaps(0), ",")
}

pub fn admissible_cmd(params: CurveParams, bound: Option<i64>) -> Result<Output> {
    let subsets = admissible_subsets(params, bound)?;
    let mut table = Table::new(["dim", "gens", "gaps"]);
    let mut by_dim: BTreeMap<u64, Vec<String>> = BTreeMap::new();
    let mut rows = Vec::new();
    for x in &subsets {
        let dim = x.dim();
        table.push([dim.to_string(), join(x.gens(), " "), gaps_text(x)]);
        by_dim
            .entry(dim)
            .or_default()
            .push(format!("\\{{{}\\}}", gaps_text(x)));
        rows.push(json!({"subset": x, "dim": dim}));
    }
    let mut latex = Table::new([
        "$\\dim$",
        "$\\#$",
        "$\\mathbb{Z}_{\\ge 0}\\setminus\\Delta$",
    ]);
    for (dim, gaps) in &by_dim {
        latex.push([
            dim.to_string(),
            gaps.len().to_string(),
            format!("${}$", gaps.join(",\\ ")),
        ]);
    }
    let plain = std::iter::once("dim\tgens\tgaps".to_string())
        .chain(table.rows.iter().map(|r| r.join("\t")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        json: Value::Array(rows),
        latex: latex_tabular("c|c|l", &latex),
        table,
        plain,
        success: true,
    })
}

pub fn classes_cmd(
    params: CurveParams,
    gens: Option<Vec<i64>>,
    bound: Option<i64>,
) -> Result<Output> {
    match gens {
        Some(gens) => class_of(InvariantSubset::from_generators(params, gens)?),
        None => class_list(params, bound),
    }
}

fn class_of(x: InvariantSubset) -> Result<Output> {
    let dec = ClassDecomposition::decompose(&x);
    let minimal = minimal_point(&dec)?;
    let graph = build_bicolored(&minimal, &dec)?;
    let path = monotone_path(&graph);
    let normal = normalize(&x)?;
    let mut table = Table::new(["from", "to", "color"]);
    for e in graph.edges() {
        table.push([
            e.from.to_string(),
            e.to.to_string(),
            format!("{:?}", e.color).to_lowercase(),
        ]);
    }
    let mut plain = vec![
        format!("subset gens {} gaps {}", join(x.gens(), ","), gaps_text(&x)),
        format!("admissible {}", x.is_admissible()),
    ];
    for (k, c) in dec.components().iter().enumerate() {
        plain.push(format!(
            "component {k}: theta gens {} shift {} residue {}",
            join(c.theta.gens(), ","),
            c.shift,
            c.residue
        ));
    }
    plain.push(format!(
        "minimal shifts {}",
        join(
            &minimal
                .components()
                .iter()
                .map(|c| c.shift)
                .collect::<Vec<_>>(),
            ","
        )
    ));
    plain.extend(
        table
            .rows
            .iter()
            .map(|r| format!("edge {} -> {} {}", r[0], r[1], r[2])),
    );
    plain.push(format!("path {}", join(&path, ",")));
    plain.push(format!(
        "normalized gens {} gaps {} dim {}",
        join(normal.gens(), ","),
        gaps_text(&normal),
        normal.dim()
    ));
    Ok(Output {
        json: json!({
            "subset": x,
            "admissible": x.is_admissible(),
            "decomposition": dec,
            "minimal": minimal,
            "graph": graph,
            "path": path,
            "normalized": normal,
            "dim": normal.dim(),
        }),
        latex: latex_tabular("c|c|c", &table),
        table,
        plain: plain.join("\n"),
        success: true,
    })
}

fn class_list(params: CurveParams, bound: Option<i64>) -> Result<Output> {
    let all = enumerate_bounded(params, bound.unwrap_or_else(|| params.default_bound()))?;
    let mut classes: BTreeMap<Vec<i64>, (InvariantSubset, usize)> = BTreeMap::new();
    for x in &all {
        let normal = normalize(x)?;
        classes
            .entry(normal.gens().to_vec())
            .or_insert((normal, 0))
            .1 += 1;
    }
    let mut table = Table::new(["dim", "gens", "gaps", "members"]);
    let mut rows = Vec::new();
    for (rep, size) in classes.values() {
        table.push([
            rep.dim().to_string(),
            join(rep.gens(), " "),
            gaps_text(rep),
            size.to_string(),
        ]);
        rows.push(json!({"representative": rep, "dim": rep.dim(), "members": size}));
    }
    let plain = std::iter::once("dim\tgens\tgaps\tmembers".to_string())
        .chain(table.rows.iter().map(|r| r.join("\t")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        json: Value::Array(rows),
        latex: latex_tabular("c|l|l|c", &table),
        table,
        plain,
        success: true,
    })
}

pub fn cabled_count_cmd(params: CurveParams) -> Result<Output> {
    let (n, m, d, s) = (params.n(), params.m(), params.d(), params.s());
    let total = cabled_count(n, m, d, s)?;
    let mut table = Table::new(["v", "h", "weight"]);
    let mut patterns = Vec::new();
    for p in enumerate_patterns(d, s)? {
        let w = pattern_weight(params, &p)?;
        table.push([
            join(p.vertical_runs(), " "),
            join(p.horizontal_runs(), " "),
            w.to_string(),
        ]);
        patterns.push(json!({"pattern": p, "weight": w.to_string()}));
    }
    let latex = Table {
        header: vec!["$v$".into(), "$h$".into(), "weight".into()],
        rows: table.rows.clone(),
    };
    Ok(Output {
        json: json!({"n": n, "m": m, "d": d, "s": s, "count": total.to_string(), "patterns": patterns}),
        latex: latex_tabular("c|c|r", &latex),
        table,
        plain: total.to_string(),
        success: true,
    })
}

fn family(n: u32, m: u32) -> Result<Family> {
    match (n, m) {
        (2, q) => Ok(Family::TwoQ(q)),
        (3, 4) => Ok(Family::ThreeFour),
        (3, 5) => Ok(Family::ThreeFive),
        _ => Err(Error::InvalidFamily(format!(
            "no closed form for (n, m) = ({n}, {m})"
        ))),
    }
}

pub fn piontkowski_cmd(n: u32, m: u32, s: u32) -> Result<Output> {
    let chi = piontkowski_chi(family(n, m)?, s)?;
    let count = cabled_count(n, m, 2, s)?;
    let agree = chi.is_integer() && chi.to_integer() == count.clone().into();
    let mut table = Table::new(["n", "m", "s", "chi", "cabled_count", "agree"]);
    table.push([
        n.to_string(),
        m.to_string(),
        s.to_string(),
        chi.to_string(),
        count.to_string(),
        agree.to_string(),
    ]);
    let latex = Table {
        header: vec!["$(n,m)$".into(), "$s$".into(), "$\\chi$".into()],
        rows: vec![vec![format!("$({n},{m})$"), s.to_string(), chi.to_string()]],
    };
    Ok(Output {
        json: json!({"n": n, "m": m, "d": 2, "s": s, "chi": chi.to_string(), "cabled_count": count.to_string(), "agree": agree}),
        latex: latex_tabular("c|c|r", &latex),
        table,
        plain: chi.to_string(),
        success: agree,
    })
}

pub fn bizley_cmd(n: u32, m: u32, d_max: u32) -> Result<Output> {
    let rows = bizley_table(n, m, d_max)?;
    let mut table = Table::new(["d", "series_coefficient", "path_count", "holds"]);
    for r in &rows {
        table.push([
            r.d.to_string(),
            r.series_coefficient.to_string(),
            r.path_count.to_string(),
            r.holds().to_string(),
        ]);
    }
    let plain = std::iter::once("d\tseries\tcount\tholds".to_string())
        .chain(table.rows.iter().map(|r| r.join("\t")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        json: json!({"n": n, "m": m, "rows": rows}),
        latex: latex_tabular("c|r|r|c", &table),
        success: rows.iter().all(|r| r.holds()),
        table,
        plain,
    })
}

pub fn identity_cmd(n: u32, m: u32, d: u32, trials: usize, seed: u64) -> Result<Output> {
    let report = verify_identity(n, m, d, trials, seed)?;
    let mut table = Table::new(["q0", "t0", "lhs", "rhs"]);
    for ((p, l), r) in report.points.iter().zip(&report.lhs).zip(&report.rhs) {
        table.push([
            p.q0.to_string(),
            p.t0.to_string(),
            l.to_string(),
            r.to_string(),
        ]);
    }
    let status = if report.pass { "PASS" } else { "FAIL" };
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        latex: latex_tabular("r|r|r|r", &table),
        plain: format!(
            "{status} {} ({n},{m},{d}) at {} points",
            report.identity,
            report.points.len()
        ),
        success: report.pass,
        table,
    })
}

pub fn verify_cmd(suite: &str, config: &VerifyConfig) -> Result<Output> {
    let reports = if suite == "all" {
        run_all(config)?
    } else {
        let suite: Suite = suite
            .parse()
            .expect("suite names are validated by the parser");
        vec![suite.run(config)?]
    };
    let mut table = Table::new(["suite", "check", "pass", "detail"]);
    let mut plain = Vec::new();
    for r in &reports {
        plain.push(format!(
            "{} {} ({} checks)",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.checks.len()
        ));
        for c in &r.checks {
            table.push([
                r.suite.clone(),
                c.name.clone(),
                c.pass.to_string(),
                c.detail.clone(),
            ]);
            if !c.pass {
                plain.push(format!("  FAIL {}: {}", c.name, c.detail));
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Output {
        json: json!({"pass": pass, "max_size": config.max_size, "seed": config.seed, "trials": config.trials, "suites": reports}),
        latex: latex_tabular("l|l|c|l", &table),
        table,
        plain: plain.join("\n"),
        success: pass,
    })
}
