//! The JSON wire format for models.
//!
//! A document is `{"schema": 1, "model": <expr>}` where `<expr>` is one of:
//!
//! - `{"kind": "finite", "size": n, "one": i, "sum": [[i,j,k], ...],
//!    "perp": [...], "product": [[i,j,k], ...]}` — `sum` lists each defined
//!   unordered pair once, `product` (optional) lists every ordered pair;
//! - `{"kind": "boolean", "atoms": n}`;
//! - `{"kind": "interval"}` / `{"kind": "matrix_interval"}`;
//! - `{"kind": "direct_sum", "parts": [...]}` /
//!   `{"kind": "horizontal_sum", "parts": [...]}`;
//! - `{"kind": "corner", "base": <expr>, "idempotent": <elem>}`.
//!
//! Elements serialize as `"zero"`, `"one"`, `{"idx": i}`, `{"bits": [atom
//! indices]}`, `{"rat": "p/q"}`, `{"mat": [["p/q", ...], ...]}`,
//! `{"branch": k, "inner": <elem>}`, or `{"tuple": [...]}`. Rationals are
//! written in lowest terms with a positive denominator; emission always
//! produces the canonical spelling.

use seqea::rational::{format_rat, parse_rat};
use seqea::{Elem, FiniteEaTable, Mat2, ModelExpr, Rat};
use serde_json::{json, Value};

/// A parse failure, carrying the JSON path at which it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub at: String,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at {}: {}", self.at, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(at: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { at: at.to_string(), message: message.into() })
}

/// Parses a full document into a model.
pub fn parse_document(text: &str) -> Result<ModelExpr, ParseError> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return err("document", format!("not valid JSON: {e}")),
    };
    let Some(obj) = value.as_object() else {
        return err("document", "expected a JSON object");
    };
    match obj.get("schema").and_then(Value::as_u64) {
        Some(1) => {}
        Some(v) => return err("schema", format!("unsupported schema version {v}")),
        None => return err("schema", "missing or non-integer schema version"),
    }
    let Some(model) = obj.get("model") else {
        return err("document", "missing \"model\"");
    };
    parse_model(model, "model")
}

/// Emits the canonical document for a model: pretty-printed JSON with
/// sorted keys and a trailing newline.
pub fn emit_document(m: &ModelExpr) -> String {
    let doc = json!({ "schema": 1, "model": model_to_value(m) });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON emission cannot fail");
    text.push('\n');
    text
}

/// Parses an element given on the command line (a bare JSON value).
pub fn parse_element_text(text: &str) -> Result<Elem, ParseError> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return err("element", format!("not valid JSON: {e}")),
    };
    parse_element(&value, "element")
}

fn parse_model(v: &Value, at: &str) -> Result<ModelExpr, ParseError> {
    let Some(obj) = v.as_object() else {
        return err(at, "expected a model object");
    };
    let Some(kind) = obj.get("kind").and_then(Value::as_str) else {
        return err(at, "missing \"kind\"");
    };
    match kind {
        "finite" => parse_finite(obj, at),
        "boolean" => {
            let atoms = require_u64(obj, "atoms", at)?;
            if !(1..=16).contains(&atoms) {
                return err(&format!("{at}.atoms"), "supported atom range is 1..=16");
            }
            ModelExpr::boolean(atoms as u32).map_err(|e| ParseError {
                at: at.to_string(),
                message: e.to_string(),
            })
        }
        "interval" => Ok(ModelExpr::interval()),
        "matrix_interval" => Ok(ModelExpr::matrix_interval()),
        "direct_sum" | "horizontal_sum" => {
            let parts = parse_parts(obj, at)?;
            let built = if kind == "direct_sum" {
                ModelExpr::direct_sum(parts)
            } else {
                ModelExpr::horizontal_sum(parts)
            };
            built.map_err(|e| ParseError { at: at.to_string(), message: e.to_string() })
        }
        "corner" => {
            let Some(base) = obj.get("base") else {
                return err(at, "corner needs a \"base\" model");
            };
            let base = parse_model(base, &format!("{at}.base"))?;
            let Some(idem) = obj.get("idempotent") else {
                return err(at, "corner needs an \"idempotent\" element");
            };
            let idem = parse_element(idem, &format!("{at}.idempotent"))?;
            ModelExpr::corner(base, idem)
                .map_err(|e| ParseError { at: at.to_string(), message: e.to_string() })
        }
        other => err(at, format!("unknown model kind \"{other}\"")),
    }
}

fn parse_parts(
    obj: &serde_json::Map<String, Value>,
    at: &str,
) -> Result<Vec<ModelExpr>, ParseError> {
    let Some(parts) = obj.get("parts").and_then(Value::as_array) else {
        return err(at, "missing \"parts\" array");
    };
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| parse_model(p, &format!("{at}.parts[{i}]")))
        .collect()
}

fn require_u64(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    at: &str,
) -> Result<u64, ParseError> {
    match obj.get(key).and_then(Value::as_u64) {
        Some(v) => Ok(v),
        None => err(at, format!("missing or non-integer \"{key}\"")),
    }
}

fn parse_index_triples(v: &Value, at: &str) -> Result<Vec<(usize, usize, usize)>, ParseError> {
    let Some(rows) = v.as_array() else {
        return err(at, "expected an array of [i, j, k] triples");
    };
    let mut out = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        let here = format!("{at}[{n}]");
        let Some(triple) = row.as_array() else {
            return err(&here, "expected an [i, j, k] triple");
        };
        if triple.len() != 3 {
            return err(&here, format!("expected 3 entries, found {}", triple.len()));
        }
        let mut nums = [0usize; 3];
        for (slot, cell) in nums.iter_mut().zip(triple) {
            match cell.as_u64() {
                Some(x) => *slot = x as usize,
                None => return err(&here, "indices must be non-negative integers"),
            }
        }
        out.push((nums[0], nums[1], nums[2]));
    }
    Ok(out)
}

fn parse_finite(
    obj: &serde_json::Map<String, Value>,
    at: &str,
) -> Result<ModelExpr, ParseError> {
    let size = require_u64(obj, "size", at)? as usize;
    let one = require_u64(obj, "one", at)? as usize;
    let Some(sum) = obj.get("sum") else {
        return err(at, "missing \"sum\" triples");
    };
    let sum = parse_index_triples(sum, &format!("{at}.sum"))?;
    let Some(perp) = obj.get("perp").and_then(Value::as_array) else {
        return err(at, "missing \"perp\" array");
    };
    let perp = perp
        .iter()
        .enumerate()
        .map(|(i, p)| match p.as_u64() {
            Some(x) => Ok(x as usize),
            None => err(&format!("{at}.perp[{i}]"), "expected a non-negative integer"),
        })
        .collect::<Result<Vec<usize>, ParseError>>()?;
    let table = FiniteEaTable::new(size, one, &sum, perp)
        .map_err(|e| ParseError { at: at.to_string(), message: e.to_string() })?;

    let Some(product) = obj.get("product") else {
        return Ok(ModelExpr::finite(table));
    };
    let triples = parse_index_triples(product, &format!("{at}.product"))?;
    let mut grid: Vec<Option<usize>> = vec![None; size * size];
    for (i, j, k) in triples {
        if i >= size || j >= size {
            return err(
                &format!("{at}.product"),
                format!("pair ({i},{j}) out of range for size {size}"),
            );
        }
        let cell = &mut grid[i * size + j];
        if let Some(prev) = *cell {
            if prev != k {
                return err(
                    &format!("{at}.product"),
                    format!("pair ({i},{j}) given as both {prev} and {k}"),
                );
            }
        }
        *cell = Some(k);
    }
    let mut flat = Vec::with_capacity(size * size);
    for (pos, cell) in grid.iter().enumerate() {
        match cell {
            Some(k) => flat.push(*k),
            None => {
                return err(
                    &format!("{at}.product"),
                    format!("pair ({},{}) is missing; the product must be total", pos / size, pos % size),
                )
            }
        }
    }
    ModelExpr::finite_with_product(table, flat)
        .map_err(|e| ParseError { at: at.to_string(), message: e.to_string() })
}

fn parse_element(v: &Value, at: &str) -> Result<Elem, ParseError> {
    match v {
        Value::String(s) if s == "zero" => return Ok(Elem::Zero),
        Value::String(s) if s == "one" => return Ok(Elem::One),
        Value::String(s) => return err(at, format!("unknown element name \"{s}\"")),
        _ => {}
    }
    let Some(obj) = v.as_object() else {
        return err(at, "expected \"zero\", \"one\", or an element object");
    };
    if let Some(idx) = obj.get("idx") {
        let Some(i) = idx.as_u64() else {
            return err(&format!("{at}.idx"), "expected a non-negative integer");
        };
        return Ok(Elem::Idx(i as usize));
    }
    if let Some(bits) = obj.get("bits") {
        let Some(list) = bits.as_array() else {
            return err(&format!("{at}.bits"), "expected an array of atom indices");
        };
        let mut mask = 0u64;
        for (n, b) in list.iter().enumerate() {
            match b.as_u64() {
                Some(i) if i < 64 => mask |= 1 << i,
                _ => return err(&format!("{at}.bits[{n}]"), "atom indices must be in 0..64"),
            }
        }
        return Ok(Elem::Bits(mask));
    }
    if let Some(ratv) = obj.get("rat") {
        return Ok(Elem::Rat(parse_rat_value(ratv, &format!("{at}.rat"))?));
    }
    if let Some(mat) = obj.get("mat") {
        let Some(rows) = mat.as_array() else {
            return err(&format!("{at}.mat"), "expected a 2x2 array of rationals");
        };
        if rows.len() != 2 {
            return err(&format!("{at}.mat"), "expected exactly 2 rows");
        }
        let mut cells = Vec::with_capacity(4);
        for (rn, row) in rows.iter().enumerate() {
            let Some(cols) = row.as_array() else {
                return err(&format!("{at}.mat[{rn}]"), "expected a row of 2 rationals");
            };
            if cols.len() != 2 {
                return err(&format!("{at}.mat[{rn}]"), "expected exactly 2 columns");
            }
            for (cn, cell) in cols.iter().enumerate() {
                cells.push(parse_rat_value(cell, &format!("{at}.mat[{rn}][{cn}]"))?);
            }
        }
        let d = cells.pop().expect("4 cells");
        let c = cells.pop().expect("4 cells");
        let b = cells.pop().expect("4 cells");
        let a = cells.pop().expect("4 cells");
        return Ok(Elem::Mat(Mat2::new(a, b, c, d)));
    }
    if let Some(branch) = obj.get("branch") {
        let Some(k) = branch.as_u64() else {
            return err(&format!("{at}.branch"), "expected a part index");
        };
        let Some(inner) = obj.get("inner") else {
            return err(at, "branch elements need an \"inner\" element");
        };
        let inner = parse_element(inner, &format!("{at}.inner"))?;
        return Ok(Elem::branch(k as usize, inner));
    }
    if let Some(tuple) = obj.get("tuple") {
        let Some(list) = tuple.as_array() else {
            return err(&format!("{at}.tuple"), "expected an array of elements");
        };
        let comps = list
            .iter()
            .enumerate()
            .map(|(i, e)| parse_element(e, &format!("{at}.tuple[{i}]")))
            .collect::<Result<Vec<Elem>, ParseError>>()?;
        return Ok(Elem::Tuple(comps));
    }
    err(at, "expected one of idx/bits/rat/mat/branch/tuple")
}

fn parse_rat_value(v: &Value, at: &str) -> Result<Rat, ParseError> {
    let Some(s) = v.as_str() else {
        return err(at, "rationals are strings like \"3/4\"");
    };
    match parse_rat(s) {
        Some(q) => Ok(q),
        None => err(at, format!("\"{s}\" is not a rational (zero denominator or bad digits)")),
    }
}

fn model_to_value(m: &ModelExpr) -> Value {
    match m {
        ModelExpr::Finite { table, product } => {
            let sums: Vec<Value> = table
                .sum_triples()
                .into_iter()
                .map(|(i, j, k)| json!([i, j, k]))
                .collect();
            let mut doc = json!({
                "kind": "finite",
                "size": table.size(),
                "one": table.one(),
                "sum": sums,
                "perp": table.perp_map(),
            });
            if let Some(p) = product {
                let n = table.size();
                let triples: Vec<Value> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| json!([i, j, p[i * n + j]]))
                    .collect();
                doc.as_object_mut()
                    .expect("finite doc is an object")
                    .insert("product".into(), Value::Array(triples));
            }
            doc
        }
        ModelExpr::Boolean { atoms } => json!({ "kind": "boolean", "atoms": atoms }),
        ModelExpr::Interval => json!({ "kind": "interval" }),
        ModelExpr::MatrixInterval => json!({ "kind": "matrix_interval" }),
        ModelExpr::HorizontalSum { parts } => json!({
            "kind": "horizontal_sum",
            "parts": parts.iter().map(model_to_value).collect::<Vec<Value>>(),
        }),
        ModelExpr::DirectSum { parts } => json!({
            "kind": "direct_sum",
            "parts": parts.iter().map(model_to_value).collect::<Vec<Value>>(),
        }),
        ModelExpr::Corner { base, idempotent } => json!({
            "kind": "corner",
            "base": model_to_value(base),
            "idempotent": element_to_value(idempotent),
        }),
    }
}

/// The canonical JSON form of an element.
pub fn element_to_value(e: &Elem) -> Value {
    match e {
        Elem::Zero => json!("zero"),
        Elem::One => json!("one"),
        Elem::Idx(i) => json!({ "idx": i }),
        Elem::Bits(mask) => {
            let atoms: Vec<u64> = (0..64).filter(|i| mask & (1 << i) != 0).collect();
            json!({ "bits": atoms })
        }
        Elem::Rat(q) => json!({ "rat": format_rat(q) }),
        Elem::Mat(m) => json!({
            "mat": [
                [format_rat(&m.a), format_rat(&m.b)],
                [format_rat(&m.c), format_rat(&m.d)],
            ]
        }),
        Elem::Branch(k, inner) => json!({ "branch": k, "inner": element_to_value(inner) }),
        Elem::Tuple(es) => json!({
            "tuple": es.iter().map(element_to_value).collect::<Vec<Value>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqea::rational::rat;

    #[test]
    fn documents_roundtrip() {
        let models = vec![
            ModelExpr::boolean(2).expect("atoms"),
            ModelExpr::interval(),
            ModelExpr::matrix_interval(),
            ModelExpr::horizontal_sum(vec![ModelExpr::interval(), ModelExpr::interval()])
                .expect("parts"),
            ModelExpr::direct_sum(vec![
                ModelExpr::boolean(1).expect("atoms"),
                ModelExpr::interval(),
            ])
            .expect("parts"),
            ModelExpr::corner(ModelExpr::boolean(3).expect("atoms"), Elem::Bits(0b101))
                .expect("idempotent"),
            ModelExpr::finite(FiniteEaTable::chain(3)),
        ];
        for m in models {
            let text = emit_document(&m);
            let back = parse_document(&text).expect("own emission parses");
            assert_eq!(back, m);
            assert_eq!(emit_document(&back), text, "emission is a fixed point");
        }
    }

    #[test]
    fn elements_roundtrip() {
        let elems = vec![
            Elem::Zero,
            Elem::One,
            Elem::Idx(3),
            Elem::Bits(0b1011),
            Elem::Rat(rat(3, 4)),
            Elem::Mat(Mat2::scalar(&rat(1, 3))),
            Elem::branch(1, Elem::Rat(rat(1, 2))),
            Elem::Tuple(vec![Elem::One, Elem::Rat(rat(2, 5))]),
        ];
        for e in elems {
            let text = serde_json::to_string(&element_to_value(&e)).expect("emit");
            assert_eq!(parse_element_text(&text).expect("parse"), e);
        }
    }

    #[test]
    fn zero_denominators_are_rejected() {
        let got = parse_element_text(r#"{"rat": "2/0"}"#);
        assert!(got.is_err());
        let doc = r#"{"schema": 1, "model": {"kind": "corner",
            "base": {"kind": "interval"}, "idempotent": {"rat": "2/0"}}}"#;
        let got = parse_document(doc);
        assert!(got.unwrap_err().at.contains("idempotent"));
    }

    #[test]
    fn partial_products_are_rejected() {
        let doc = r#"{"schema": 1, "model": {"kind": "finite", "size": 2, "one": 1,
            "sum": [[0,0,0],[0,1,1]], "perp": [1,0], "product": [[1,1,1]]}}"#;
        let got = parse_document(doc);
        assert!(got.unwrap_err().message.contains("total"));
    }

    #[test]
    fn schema_versions_are_enforced() {
        assert!(parse_document(r#"{"model": {"kind": "interval"}}"#).is_err());
        assert!(parse_document(r#"{"schema": 2, "model": {"kind": "interval"}}"#).is_err());
    }
}
