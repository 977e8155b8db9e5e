//! JSON formats for polytopes, lattice-point sets, slide requests and Bott
//! data. Rationals are written as strings (`"5/2"`, `"3"`); on input both
//! strings and JSON integers are accepted. Indices in JSON are 1-based, so
//! every index is shifted on the way in and out.

use serde_json::{json, Map, Value};

use crate::bott::{BottData, Certificate, Decision, DegenerationReport, Move, RingMapCheck, StandardForm};
use crate::error::{Error, Result};
use crate::polytope::{hull, HPolytope, LatticePointSet};
use crate::rational::{fmt_q, parse_q, Q};
use crate::gromov::SimplexFit;
use crate::valuation::{ConeCheck, SaturationCheck, SlideDirection};

fn schema(pointer: &str, message: impl Into<String>) -> Error {
    Error::Schema { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
}

fn object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(ptr, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(&format!("{ptr}/{key}"), "missing field"))
}

fn array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

pub fn parse_usize(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

pub fn parse_i64(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(ptr, "expected an integer"))
}

/// A rational given as a JSON integer or a `"p/q"` string.
pub fn parse_rational(v: &Value, ptr: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|_| schema(ptr, format!("not a rational: {s:?}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(crate::rational::q(i)),
            None => Err(schema(ptr, "floating-point numbers are not accepted; use \"p/q\"")),
        },
        _ => Err(schema(ptr, "expected a rational (integer or \"p/q\" string)")),
    }
}

fn rational_vec(v: &Value, ptr: &str, len: Option<usize>) -> Result<Vec<Q>> {
    let arr = array(v, ptr)?;
    if let Some(len) = len {
        if arr.len() != len {
            return Err(schema(ptr, format!("expected {len} entries, got {}", arr.len())));
        }
    }
    arr.iter().enumerate().map(|(i, x)| parse_rational(x, &format!("{ptr}/{i}"))).collect()
}

/// Parses `{"dim", "inequalities": [[a_1..a_n, b], ...]}` (meaning
/// `Σ a_i p_i <= b`) or `{"dim", "vertices": [[..], ...]}`.
pub fn parse_polytope(v: &Value, ptr: &str) -> Result<HPolytope> {
    let obj = object(v, ptr)?;
    let dim = parse_usize(field(obj, "dim", ptr)?, &format!("{ptr}/dim"))?;
    if dim == 0 {
        return Err(schema(&format!("{ptr}/dim"), "dimension must be positive"));
    }
    match (obj.get("inequalities"), obj.get("vertices")) {
        (Some(ineqs), None) => {
            let p = format!("{ptr}/inequalities");
            let mut hs = Vec::new();
            for (i, row) in array(ineqs, &p)?.iter().enumerate() {
                let rp = format!("{p}/{i}");
                let r = rational_vec(row, &rp, Some(dim + 1))?;
                hs.push(
                    crate::polytope::HalfSpace::from_rational(&r[..dim], &r[dim])
                        .map_err(|e| schema(&rp, e.to_string()))?,
                );
            }
            HPolytope::new(dim, hs)
        }
        (None, Some(verts)) => {
            let p = format!("{ptr}/vertices");
            let pts = array(verts, &p)?
                .iter()
                .enumerate()
                .map(|(i, x)| rational_vec(x, &format!("{p}/{i}"), Some(dim)))
                .collect::<Result<Vec<_>>>()?;
            hull(dim, &pts)
        }
        (Some(_), Some(_)) => Err(schema(ptr, "give either \"inequalities\" or \"vertices\", not both")),
        (None, None) => Err(schema(ptr, "missing \"inequalities\" or \"vertices\"")),
    }
}

pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn qvec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

pub fn polytope_json(p: &HPolytope) -> Value {
    let ineqs: Vec<Value> = p
        .halfspaces()
        .iter()
        .map(|h| {
            let mut row: Vec<Value> = h.normal.iter().map(|&a| json!(a)).collect();
            row.push(q_json(&h.rhs));
            Value::Array(row)
        })
        .collect();
    let verts = p.vertices().map(|v| v.vertices).unwrap_or_default();
    json!({
        "dim": p.dim(),
        "inequalities": ineqs,
        "vertices": verts.iter().map(|v| qvec_json(v)).collect::<Vec<_>>(),
        "full_dimensional": p.is_full_dimensional(),
    })
}

pub fn points_json(s: &LatticePointSet) -> Value {
    Value::Array(s.iter().map(|p| json!(p)).collect())
}

pub fn parse_points(v: &Value, ptr: &str) -> Result<LatticePointSet> {
    let arr = array(v, ptr)?;
    let pts = arr
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{ptr}/{i}");
            array(row, &rp)?.iter().enumerate().map(|(j, x)| parse_i64(x, &format!("{rp}/{j}"))).collect()
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let dim = pts.first().map_or(0, Vec::len);
    LatticePointSet::from_points(dim, pts).map_err(|e| schema(ptr, e.to_string()))
}

/// Request for `slide`, `semigroup`, `okounkov` and `saturation`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlideRequest {
    pub polytope: HPolytope,
    /// `None` when `c` is omitted: the monomial valuation (identity slide).
    pub direction: Option<SlideDirection>,
    pub max_level: Option<usize>,
    /// Polytope the levels are compared against; defaults to the hull of level 1.
    pub target: Option<HPolytope>,
}

/// Parses `{"polytope": ..., "k": 1, "l": 2, "c": 2, "max_level": 5}`;
/// `c`, `max_level` and `target` are optional.
pub fn parse_slide_request(v: &Value) -> Result<SlideRequest> {
    let obj = object(v, "")?;
    let polytope = parse_polytope(field(obj, "polytope", "")?, "/polytope")?;
    let n = polytope.dim();
    let direction = match obj.get("c") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let c = parse_usize(c, "/c")? as u32;
            let k = parse_usize(field(obj, "k", "")?, "/k")?;
            let l = parse_usize(field(obj, "l", "")?, "/l")?;
            if !(1 <= k && k < l && l <= n) {
                return Err(schema("/l", format!("need 1 <= k < l <= {n}, got k={k}, l={l}")));
            }
            Some(SlideDirection::new(k - 1, l - 1, c))
        }
    };
    let max_level = obj.get("max_level").map(|m| parse_usize(m, "/max_level")).transpose()?;
    let target = obj.get("target").map(|t| parse_polytope(t, "/target")).transpose()?;
    if let Some(t) = &target {
        if t.dim() != n {
            return Err(schema("/target/dim", format!("expected dimension {n}, got {}", t.dim())));
        }
    }
    Ok(SlideRequest { polytope, direction, max_level, target })
}

/// Parses `{"n": 3, "A": [[..]], "lambda": ["1", "5/2", "3"]}`; `n` is optional.
pub fn parse_bott(v: &Value, ptr: &str) -> Result<BottData> {
    let obj = object(v, ptr)?;
    let ap = format!("{ptr}/A");
    let rows = array(field(obj, "A", ptr)?, &ap)?;
    let n = rows.len();
    if let Some(nv) = obj.get("n") {
        let declared = parse_usize(nv, &format!("{ptr}/n"))?;
        if declared != n {
            return Err(schema(&format!("{ptr}/n"), format!("n = {declared} but A has {n} rows")));
        }
    }
    let a = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let rp = format!("{ap}/{i}");
            let row = array(r, &rp)?;
            if row.len() != n {
                return Err(schema(&rp, format!("expected {n} entries, got {}", row.len())));
            }
            row.iter().enumerate().map(|(j, x)| parse_i64(x, &format!("{rp}/{j}"))).collect()
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    let lp = format!("{ptr}/lambda");
    let lambda = rational_vec(field(obj, "lambda", ptr)?, &lp, Some(n))?;
    BottData::new(a, lambda)
}

pub fn bott_json(b: &BottData) -> Value {
    json!({ "n": b.n(), "A": b.a, "lambda": qvec_json(&b.lambda) })
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn direction_json(d: &SlideDirection) -> Value {
    json!({ "k": d.k + 1, "l": d.l + 1, "c": d.c })
}

pub fn cone_json(c: &ConeCheck) -> Value {
    json!({
        "holds": c.holds(),
        "max_level": c.max_level,
        "certificate": c.certificate,
    })
}

pub fn saturation_json(s: &SaturationCheck) -> Value {
    json!({
        "saturated": s.is_saturated(),
        "max_level": s.max_level,
        "witness": s.witness,
    })
}

pub fn ring_check_json(c: &RingMapCheck) -> Value {
    json!({
        "valid": c.is_valid(),
        "descends": c.descends,
        "invertible": c.invertible,
        "inverse_descends": c.inverse_descends,
        "preserves_omega": c.preserves_omega,
    })
}

pub fn moves_json(trace: &[Move]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|m| {
                json!({
                    "k": m.k + 1,
                    "l": m.l + 1,
                    "delta": m.delta,
                    "certified": m.certified(),
                    "target": bott_json(&m.target),
                })
            })
            .collect(),
    )
}

pub fn standard_form_json(s: &StandardForm) -> Value {
    let blocks: Vec<Value> = s
        .blocks
        .iter()
        .map(|b| json!({ "members": one_based(&b.members), "terminal": b.terminal + 1 }))
        .collect();
    let invariant: Vec<Value> = s
        .invariant()
        .iter()
        .map(|(size, members, terminal)| {
            json!({ "size": size, "members": qvec_json(members), "terminal": q_json(terminal) })
        })
        .collect();
    json!({
        "standard": bott_json(&s.data),
        "blocks": blocks,
        "partition": s.partition(),
        "invariant": invariant,
        "map": s.map.matrix,
        "permutation": one_based(&s.permutation),
        "trace": moves_json(&s.trace),
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    json!({
        "map": c.map.matrix,
        "sigma": one_based(&c.sigma),
        "lambda_matrix": c.lambda_matrix,
        "std_source": standard_form_json(&c.std_source),
        "std_target": standard_form_json(&c.std_target),
    })
}

pub fn degeneration_json(r: &DegenerationReport) -> Value {
    json!({
        "passed": r.passed(),
        "source": bott_json(&r.source),
        "target": bott_json(&r.target),
        "slide": r.slide.as_ref().map(direction_json),
        "dilation": r.dilation,
        "ring_map": ring_check_json(&r.ring_map),
        "levels": r.levels,
        "certificate": r.certificate,
    })
}

pub fn decision_json(d: &Decision) -> Value {
    match d {
        Decision::Yes(c) => json!({ "verdict": "Yes", "certificate": certificate_json(c) }),
        Decision::No(reason) => json!({ "verdict": "No", "reason": reason }),
    }
}

pub fn fit_json(fit: &SimplexFit) -> Value {
    json!({ "a": q_json(&fit.a), "psi": fit.psi, "x": qvec_json(&fit.x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn polytope_round_trip() {
        let v = json!({"dim": 2, "inequalities": [[-1, 0, 0], [0, -1, 0], [1, 0, 1], [4, 1, "5"]]});
        let p = parse_polytope(&v, "").unwrap();
        assert_eq!(p.vertices().unwrap().vertices.len(), 4);
        let out = polytope_json(&p);
        assert_eq!(parse_polytope(&json!({"dim": 2, "inequalities": out["inequalities"]}), "").unwrap(), p);
        let vf = json!({"dim": 2, "vertices": [[0, 0], [1, 0], ["1", "1"], [0, 5]]});
        assert_eq!(parse_polytope(&vf, "").unwrap(), p);
    }

    #[test]
    fn schema_pointers() {
        let v = json!({"dim": 2, "inequalities": [[1, 0, 1], [1, 0.5, 2]]});
        match parse_polytope(&v, "") {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/inequalities/1/1"),
            other => panic!("{other:?}"),
        }
        match parse_polytope(&json!({"inequalities": []}), "") {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/dim"),
            other => panic!("{other:?}"),
        }
        match parse_bott(&json!({"A": [[0, 1], [0]], "lambda": [1, 1]}), "") {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/A/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bott_format() {
        let v = json!({"n": 2, "A": [[0, 4], [0, 0]], "lambda": ["1", "5/2"]});
        let b = parse_bott(&v, "").unwrap();
        assert_eq!(b.lambda, vec![q(1), q_frac(5, 2)]);
        assert_eq!(bott_json(&b), v);
    }

    #[test]
    fn slide_requests() {
        let v = json!({"polytope": {"dim": 2, "vertices": [[0, 0], [1, 0], [1, 3], [0, 3]]}, "k": 1, "l": 2, "c": 2});
        let r = parse_slide_request(&v).unwrap();
        assert_eq!(r.direction, Some(SlideDirection::new(0, 1, 2)));
        assert_eq!(r.max_level, None);
        let bad = json!({"polytope": {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}, "k": 2, "l": 1, "c": 2});
        assert!(matches!(parse_slide_request(&bad), Err(Error::Schema { .. })));
    }
}
