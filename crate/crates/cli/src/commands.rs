use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;
use toricdeg::bott::{
    bott_polytope as polytope_of, decide_symplectomorphic, hirzebruch_classify, is_hypercube, is_q_trivial,
    standard_form, verify_degeneration, verify_degeneration_move, BottData, Decision,
};
use toricdeg::gromov::{best_simplex_lb, heuristic_simplex_lb, RootFamily, RootSystemSpec};
use toricdeg::io::{
    self, bott_json, cone_json, decision_json, degeneration_json, direction_json, fit_json,
    points_json, polytope_json, q_json, qvec_json, saturation_json, standard_form_json, SlideRequest,
};
use toricdeg::rational::{fmt_q, parse_q};
use toricdeg::valuation::{
    build_semigroup, check_cone_condition, check_saturation, monomial_expansions, okounkov_approx,
    valuation_image, GradedSemigroup,
};
use toricdeg::{hull_of_lattice_points, HPolytope, LatticePointSet};

use crate::svg::{self, Panel};
use crate::Mode;

const DEFAULT_MAX_LEVEL: usize = 6;
const MAX_LEVEL_ENV: &str = "TORICDEG_MAX_LEVEL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: at {pointer}: {message}")]
    Schema { path: String, pointer: String, message: String },
    #[error("{0}")]
    Math(toricdeg::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 3,
            _ => 2,
        }
    }

    fn schema(path: &str, pointer: &str, message: impl Into<String>) -> Self {
        CliError::Schema { path: path.into(), pointer: pointer.into(), message: message.into() }
    }
}

impl From<toricdeg::Error> for CliError {
    fn from(e: toricdeg::Error) -> Self {
        match e {
            toricdeg::Error::Schema { pointer, message } => CliError::Schema { path: "<input>".into(), pointer, message },
            e => CliError::Math(e),
        }
    }
}

/// Attaches the file name to schema errors raised while parsing it.
fn in_file<T>(path: &Path, r: toricdeg::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        toricdeg::Error::Schema { pointer, message } => {
            CliError::Schema { path: path.display().to_string(), pointer, message }
        }
        e => CliError::Math(e),
    })
}

pub enum Output {
    Json { value: Value, summary: String },
    Svg { text: String, summary: String },
}

impl Output {
    fn json(value: Value, summary: impl Into<String>) -> Self {
        Output::Json { value, summary: summary.into() }
    }

    pub fn emit(&self, path: Option<&Path>, quiet: bool) -> Result<(), CliError> {
        let (text, summary) = match self {
            Output::Json { value, summary } => {
                let mut text = String::new();
                write_json(&mut text, value, 0);
                text.push('\n');
                (text, summary)
            }
            Output::Svg { text, summary } => (text.clone(), summary),
        };
        match path {
            Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source })?,
            None => print!("{text}"),
        }
        if !quiet {
            eprintln!("{summary}");
        }
        Ok(())
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Indented JSON that keeps arrays of scalars (points, matrix rows) on one line.
fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: name, source })
}

fn read_polytope(path: &Path) -> Result<HPolytope, CliError> {
    let v = read_json(path)?;
    in_file(path, io::parse_polytope(&v, ""))
}

fn read_bott(path: &Path) -> Result<BottData, CliError> {
    let v = read_json(path)?;
    in_file(path, io::parse_bott(&v, ""))
}

fn read_request(path: &Path) -> Result<SlideRequest, CliError> {
    let v = read_json(path)?;
    in_file(path, io::parse_slide_request(&v))
}

/// Level budget: the flag, then the request, then `TORICDEG_MAX_LEVEL`, then
/// 6. An explicitly set environment value also caps the other two.
fn resolve_max_level(flag: Option<usize>, request: Option<usize>) -> Result<usize, CliError> {
    let env = match std::env::var(MAX_LEVEL_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| CliError::schema(MAX_LEVEL_ENV, "", format!("expected a positive integer, got {s:?}")))?,
        ),
        Err(_) => None,
    };
    let wanted = flag.or(request).or(env).unwrap_or(DEFAULT_MAX_LEVEL);
    if wanted == 0 {
        return Err(CliError::schema("--max-level", "", "must be at least 1"));
    }
    Ok(match env {
        Some(cap) if wanted > cap => {
            eprintln!("note: max level {wanted} capped to {cap} by {MAX_LEVEL_ENV}");
            cap
        }
        _ => wanted,
    })
}

pub fn vertices(path: &Path) -> Result<Output, CliError> {
    let p = read_polytope(path)?;
    let v = p.vertices()?;
    let summary = format!("{} vertices", v.vertices.len());
    Ok(Output::json(
        json!({ "dim": p.dim(), "vertices": v.vertices.iter().map(|x| qvec_json(x)).collect::<Vec<_>>() }),
        summary,
    ))
}

pub fn lattice_points(path: &Path) -> Result<Output, CliError> {
    let p = read_polytope(path)?;
    let pts = p.lattice_points()?;
    Ok(Output::json(
        json!({ "count": pts.len(), "points": points_json(&pts) }),
        format!("{} lattice points", pts.len()),
    ))
}

pub fn normal_check(path: &Path, max_level: Option<usize>) -> Result<Output, CliError> {
    let p = read_polytope(path)?;
    let m = max_level.unwrap_or_else(|| p.dim().saturating_sub(1).max(2));
    let check = p.is_normal(m)?;
    let summary = match &check.counterexample {
        None => format!("normal up to level {m}"),
        Some((l, x)) => format!("not normal: {x:?} in level {l} is not a sum of lattice points"),
    };
    Ok(Output::json(
        json!({
            "normal": check.is_normal(),
            "max_level": m,
            "counterexample": check.counterexample.as_ref().map(|(l, x)| json!({ "level": l, "point": x })),
        }),
        summary,
    ))
}

pub fn smooth_check(path: &Path) -> Result<Output, CliError> {
    let p = read_polytope(path)?;
    let check = p.is_delzant_smooth()?;
    let summary = match &check.offending {
        None => "Delzant smooth".to_string(),
        Some(v) => format!("not smooth at vertex ({})", v.iter().map(fmt_q).collect::<Vec<_>>().join(", ")),
    };
    Ok(Output::json(
        json!({ "smooth": check.is_smooth(), "offending_vertex": check.offending.as_ref().map(|v| qvec_json(v)) }),
        summary,
    ))
}

pub fn slide(path: &Path) -> Result<Output, CliError> {
    let req = read_request(path)?;
    let d = req
        .direction
        .ok_or_else(|| CliError::schema(&path.display().to_string(), "/c", "slide needs k, l and c"))?;
    d.validate_coordinates(req.polytope.dim())?;
    let pts = req.polytope.lattice_points()?;
    let image = toricdeg::valuation::slide(&pts, &d)?;
    let oracle = valuation_image(&monomial_expansions(&pts, &d)?)?;
    let hull = hull_of_lattice_points(&image)?;
    let moved: BTreeSet<&Vec<i64>> = image.iter().filter(|x| !pts.contains(x)).collect();
    let summary = format!(
        "{} points slid, {} moved; valuation oracle {}",
        image.len(),
        moved.len(),
        if oracle == image { "agrees" } else { "DISAGREES" }
    );
    Ok(Output::json(
        json!({
            "direction": direction_json(&d),
            "points": points_json(&pts),
            "image": points_json(&image),
            "moved": moved,
            "hull": polytope_json(&hull),
            "oracle_agrees": oracle == image,
        }),
        summary,
    ))
}

fn semigroup_of(path: &Path, flag: Option<usize>) -> Result<(SlideRequest, GradedSemigroup), CliError> {
    let req = read_request(path)?;
    let m = resolve_max_level(flag, req.max_level)?;
    let s = build_semigroup(&req.polytope, req.direction.as_ref(), m)?;
    Ok((req, s))
}

pub fn semigroup(path: &Path, flag: Option<usize>) -> Result<Output, CliError> {
    let (req, s) = semigroup_of(path, flag)?;
    let levels = (1..=s.max_level())
        .map(|m| -> Result<Value, CliError> {
            let l = s.level(m)?;
            Ok(json!({ "m": m, "count": l.len(), "points": points_json(l), "hull": polytope_json(&hull_of_lattice_points(l)?) }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let target = match req.target {
        Some(t) => t,
        None => hull_of_lattice_points(s.level(1)?)?,
    };
    let cone = check_cone_condition(&s, &target)?;
    let sat = check_saturation(&s);
    let summary = format!(
        "{} levels; cone condition {}; {}",
        s.max_level(),
        if cone.holds() { "holds" } else { "fails" },
        if sat.is_saturated() { "no saturation failure found" } else { "not saturated" }
    );
    Ok(Output::json(
        json!({
            "direction": req.direction.as_ref().map(direction_json),
            "max_level": s.max_level(),
            "levels": levels,
            "target": polytope_json(&target),
            "cone_condition": cone_json(&cone),
            "saturation": saturation_json(&sat),
        }),
        summary,
    ))
}

pub fn okounkov(path: &Path, flag: Option<usize>) -> Result<Output, CliError> {
    let (_, s) = semigroup_of(path, flag)?;
    let approx = (1..=s.max_level())
        .map(|m| -> Result<Value, CliError> {
            let p = okounkov_approx(&s, m)?;
            Ok(json!({ "m": m, "volume": q_json(&p.volume()), "polytope": polytope_json(&p) }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output::json(
        json!({ "max_level": s.max_level(), "approximations": approx }),
        format!("{} Okounkov body approximations", s.max_level()),
    ))
}

pub fn saturation(path: &Path, flag: Option<usize>) -> Result<Output, CliError> {
    let (_, s) = semigroup_of(path, flag)?;
    let sat = check_saturation(&s);
    let summary = match &sat.witness {
        None => format!("no saturation failure up to level {}", s.max_level()),
        Some(w) => format!(
            "not saturated: ({}, {:?}) missing while {} times it is present",
            w.level, w.point, w.multiple
        ),
    };
    Ok(Output::json(saturation_json(&sat), summary))
}

pub fn gw_formula(family: &str, rank: usize, lambda: &str) -> Result<Output, CliError> {
    let fam: RootFamily =
        family.parse().map_err(|_| CliError::schema("--family", "", format!("unknown family {family:?}")))?;
    let lam = lambda
        .split(',')
        .enumerate()
        .map(|(i, s)| {
            parse_q(s.trim())
                .map_err(|_| CliError::schema("--lambda", &format!("/{i}"), format!("not a rational: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    // Type A is realized in rank + 1 coordinates; accept either count.
    let lie_rank = if fam == RootFamily::A && lam.len() == rank && rank >= 2 { rank - 1 } else { rank };
    let spec = RootSystemSpec::new(fam, lie_rank)?;
    let gw = toricdeg::gromov::gw_formula(&spec, &lam)?;
    Ok(Output::json(q_json(&gw), format!("{fam}{lie_rank}: Gromov width lower bound {gw}")))
}

pub fn gw_simplex(path: &Path, bound: i64, mode: Mode, seed: u64, restarts: usize) -> Result<Output, CliError> {
    let p = read_polytope(path)?;
    let (fit, label) = match mode {
        Mode::Exhaustive => (best_simplex_lb(&p, bound)?, format!("certified maximum over |entries| <= {bound}")),
        Mode::Heuristic => (heuristic_simplex_lb(&p, seed, restarts)?, format!("heuristic, seed {seed}, not certified optimal")),
    };
    let summary = format!("simplex size {} ({label})", fit.a);
    Ok(Output::json(fit_json(&fit), summary))
}

pub fn bott_polytope(path: &Path) -> Result<Output, CliError> {
    let b = read_bott(path)?;
    let p = polytope_of(&b);
    Ok(Output::json(
        json!({ "polytope": polytope_json(&p), "hypercube": is_hypercube(&b), "q_trivial": is_q_trivial(&b) }),
        format!("{} facets, {} vertices", p.halfspaces().len(), p.vertices().map(|v| v.vertices.len()).unwrap_or(0)),
    ))
}

pub fn bott_reduce(path: &Path) -> Result<Output, CliError> {
    let b = read_bott(path)?;
    let s = standard_form(&b)?;
    let mut v = standard_form_json(&s);
    v["input"] = bott_json(&b);
    Ok(Output::json(v, format!("standard form with block sizes {:?} after {} moves", s.partition(), s.trace.len())))
}

pub fn bott_equiv(first: &Path, second: &Path) -> Result<Output, CliError> {
    let (b, bt) = (read_bott(first)?, read_bott(second)?);
    let d = decide_symplectomorphic(&b, &bt)?;
    let summary = match &d {
        Decision::Yes(_) => "Yes: symplectomorphic".to_string(),
        Decision::No(r) => format!("No: {r}"),
    };
    Ok(Output::json(decision_json(&d), summary))
}

pub fn bott_verify_move(
    path: &Path,
    k: usize,
    l: usize,
    flag: Option<usize>,
    target_entry: Option<i64>,
    target: Option<&Path>,
) -> Result<Output, CliError> {
    let b = read_bott(path)?;
    let n = b.n();
    if k == 0 || l == 0 {
        return Err(CliError::schema("--k/--l", "", "indices are 1-based"));
    }
    let m = resolve_max_level(flag, None)?;
    let r = match target {
        Some(t) => verify_degeneration(&b, &read_bott(t)?, k - 1, l - 1, m)?,
        None => {
            if !(k < l && l <= n) {
                return Err(CliError::schema("--k/--l", "", format!("need 1 <= k < l <= {n}")));
            }
            verify_degeneration_move(&b, k - 1, l - 1, target_entry, m)?
        }
    };
    let summary = if r.passed() {
        format!("move verified: semigroup matches the target polytope at every level <= {m}")
    } else {
        let c = r.certificate.as_ref().expect("failed report carries a certificate");
        format!("move fails at level {}: {:?} point {:?}", c.level, c.kind, c.point)
    };
    Ok(Output::json(degeneration_json(&r), summary))
}

pub fn hirzebruch(first: &Path, second: &Path) -> Result<Output, CliError> {
    let (b, bt) = (read_bott(first)?, read_bott(second)?);
    let classify = hirzebruch_classify(&b, &bt)?;
    let d = decide_symplectomorphic(&b, &bt)?;
    let agree = classify == d.is_yes();
    Ok(Output::json(
        json!({ "symplectomorphic": classify, "decision": decision_json(&d), "agree": agree }),
        format!("criterion says {}; decision procedure {}", classify, if agree { "agrees" } else { "DISAGREES" }),
    ))
}

fn require_2d(path: &Path, dim: usize) -> Result<(), CliError> {
    if dim != 2 {
        return Err(CliError::schema(&path.display().to_string(), "/dim", format!("render needs dim 2, got {dim}")));
    }
    Ok(())
}

fn panel(title: String, p: &HPolytope, points: &LatticePointSet, highlighted: BTreeSet<Vec<i64>>) -> Panel {
    Panel {
        title,
        vertices: p.vertices().map(|v| v.vertices).unwrap_or_default(),
        points: points.iter().cloned().collect(),
        highlighted,
    }
}

pub fn render(path: &Path) -> Result<Output, CliError> {
    let v = read_json(path)?;
    let panels = if v.get("polytope").is_some() {
        let req = in_file(path, io::parse_slide_request(&v))?;
        require_2d(path, req.polytope.dim())?;
        let pts = req.polytope.lattice_points()?;
        match req.direction {
            None => vec![panel("P".into(), &req.polytope, &pts, BTreeSet::new())],
            Some(d) => {
                let image = toricdeg::valuation::slide(&pts, &d)?;
                let leaving = pts.iter().filter(|x| !image.contains(x)).cloned().collect();
                let arriving = image.iter().filter(|x| !pts.contains(x)).cloned().collect();
                let title = format!("slid, k={} l={} c={}", d.k + 1, d.l + 1, d.c);
                vec![
                    panel("P".into(), &req.polytope, &pts, leaving),
                    panel(title, &hull_of_lattice_points(&image)?, &image, arriving),
                ]
            }
        }
    } else {
        let p = in_file(path, io::parse_polytope(&v, ""))?;
        require_2d(path, p.dim())?;
        let pts = if p.is_empty() { LatticePointSet::new(2) } else { p.lattice_points()? };
        vec![panel("P".into(), &p, &pts, BTreeSet::new())]
    };
    let n = panels.len();
    Ok(Output::Svg { text: svg::render(&panels), summary: format!("rendered {n} panel(s)") })
}
