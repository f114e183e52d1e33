//! File formats: UTF-8 JSON documents for semigroups, pseudometrics,
//! window functions, measures and ambit witnesses.
//!
//! Rationals travel as `p/q` strings in lowest terms with positive
//! denominator. Elements appear as JSON numbers (table indices,
//! naturals) or strings (free words); string forms are accepted
//! everywhere, and map keys are always the string form. Writers emit
//! canonical documents -- sorted supports, reduced rationals, stable
//! key order -- so identical data produces identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::ambit::{AmbitWitness, BasicNeighborhood};
use crate::error::{Error, Result};
use crate::measure::MolecularMeasure;
use crate::rat::{format_rat, parse_rat, Rat};
use crate::semigroup::{Element, Semigroup, Window};
use crate::uniform::{MetricTable, Pseudometric, WindowFunction};

fn parse_error(context: &str, reason: impl ToString) -> Error {
    Error::Parse {
        context: context.to_string(),
        reason: reason.to_string(),
    }
}

fn as_object<'v>(v: &'v Value, context: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_error(context, "expected a JSON object"))
}

fn as_array<'v>(v: &'v Value, context: &str) -> Result<&'v [Value]> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| parse_error(context, "expected a JSON array"))
}

fn as_str<'v>(v: &'v Value, context: &str) -> Result<&'v str> {
    v.as_str()
        .ok_or_else(|| parse_error(context, "expected a JSON string"))
}

fn field<'v>(obj: &'v Map<String, Value>, name: &str, context: &str) -> Result<&'v Value> {
    obj.get(name)
        .ok_or_else(|| parse_error(context, format!("missing field {name:?}")))
}

fn rat_from_value(v: &Value, context: &str) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::rat::rat_int(i))
            } else {
                Err(parse_error(context, "rationals must be strings or integers"))
            }
        }
        _ => Err(parse_error(context, "rationals must be strings or integers")),
    }
}

// ---------------------------------------------------------------------
// Semigroups

/// Serialize a semigroup as its document form.
pub fn semigroup_to_json(s: &Semigroup) -> Value {
    match s.family() {
        crate::semigroup::Family::Cayley => json!({
            "kind": "cayley",
            "elements": s.cayley_labels().expect("cayley handle"),
            "table": s.cayley_table().expect("cayley handle"),
        }),
        crate::semigroup::Family::Free => json!({
            "kind": "free",
            "generators": s
                .free_alphabet()
                .expect("free handle")
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        }),
        crate::semigroup::Family::NatPlus => json!({ "kind": "nat-plus" }),
        crate::semigroup::Family::NatTimes => json!({ "kind": "nat-times" }),
        crate::semigroup::Family::LeftZero => match s.carrier_size() {
            Some(n) => json!({ "kind": "left-zero", "size": n }),
            None => json!({ "kind": "left-zero" }),
        },
        crate::semigroup::Family::RightZero => match s.carrier_size() {
            Some(n) => json!({ "kind": "right-zero", "size": n }),
            None => json!({ "kind": "right-zero" }),
        },
    }
}

/// Parse a semigroup document; table semigroups are associativity
/// checked at construction.
pub fn semigroup_from_json(v: &Value) -> Result<Semigroup> {
    let ctx = "semigroup";
    let obj = as_object(v, ctx)?;
    match as_str(field(obj, "kind", ctx)?, ctx)? {
        "cayley" => {
            let labels = as_array(field(obj, "elements", ctx)?, ctx)?
                .iter()
                .map(|l| Ok(as_str(l, ctx)?.to_string()))
                .collect::<Result<Vec<_>>>()?;
            let table = as_array(field(obj, "table", ctx)?, ctx)?
                .iter()
                .map(|row| {
                    as_array(row, ctx)?
                        .iter()
                        .map(|e| {
                            e.as_u64()
                                .map(|i| i as usize)
                                .ok_or_else(|| parse_error(ctx, "table entries must be indices"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Semigroup::cayley(labels, table)
        }
        "free" => {
            let generators = as_array(field(obj, "generators", ctx)?, ctx)?
                .iter()
                .map(|g| {
                    let text = as_str(g, ctx)?;
                    let mut chars = text.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(parse_error(ctx, "generators must be single characters")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Semigroup::free(&generators)
        }
        "nat-plus" => Ok(Semigroup::nat_plus()),
        "nat-times" => Ok(Semigroup::nat_times()),
        "left-zero" => Semigroup::left_zero(obj.get("size").and_then(Value::as_u64)),
        "right-zero" => Semigroup::right_zero(obj.get("size").and_then(Value::as_u64)),
        other => Err(parse_error(ctx, format!("unknown kind {other:?}"))),
    }
}

/// Resolve a builtin name: `free2`, `nat-plus`, `nat-times`,
/// `left-zero:<n>`, `right-zero:<n>`.
pub fn builtin_semigroup(name: &str) -> Option<Result<Semigroup>> {
    match name {
        "free2" => Some(Semigroup::free(&['a', 'b'])),
        "nat-plus" => Some(Ok(Semigroup::nat_plus())),
        "nat-times" => Some(Ok(Semigroup::nat_times())),
        _ => {
            let (kind, size) = name.split_once(':')?;
            let size: u64 = size.parse().ok()?;
            match kind {
                "left-zero" => Some(Semigroup::left_zero(Some(size))),
                "right-zero" => Some(Semigroup::right_zero(Some(size))),
                _ => None,
            }
        }
    }
}

/// Resolve a builtin name or a file path to a semigroup.
pub fn semigroup_from_spec(spec: &str, base: &Path) -> Result<Semigroup> {
    if let Some(builtin) = builtin_semigroup(spec) {
        return builtin;
    }
    let path = base.join(spec);
    let text = fs::read_to_string(&path)
        .map_err(|e| parse_error(&path.display().to_string(), e))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| parse_error(&path.display().to_string(), e))?;
    semigroup_from_json(&value)
}

// ---------------------------------------------------------------------
// Elements and windows

/// Element as a JSON value: numbers for indices and naturals, strings
/// for words.
pub fn element_to_json(s: &Semigroup, e: &Element) -> Value {
    match s.family() {
        crate::semigroup::Family::Free => Value::String(s.display_element(e)),
        _ => {
            let text = s.display_element(e);
            match text.parse::<u64>() {
                Ok(n) => json!(n),
                Err(_) => Value::String(text),
            }
        }
    }
}

/// Parse an element from a JSON value (number or string form).
pub fn element_from_json(s: &Semigroup, v: &Value) -> Result<Element> {
    match v {
        Value::String(text) => s.parse_element(text),
        Value::Number(n) => {
            let n = n
                .as_u64()
                .ok_or_else(|| parse_error("element", "expected a non-negative integer"))?;
            s.parse_element(&n.to_string())
        }
        _ => Err(parse_error("element", "expected a number or string")),
    }
}

/// Window as a JSON array of elements, in window order.
pub fn window_to_json(w: &Window) -> Value {
    Value::Array(
        w.iter()
            .map(|e| element_to_json(w.semigroup(), e))
            .collect(),
    )
}

pub fn window_from_json(s: &Semigroup, v: &Value) -> Result<Window> {
    let elements = as_array(v, "window")?
        .iter()
        .map(|e| element_from_json(s, e))
        .collect::<Result<Vec<_>>>()?;
    Window::new(s, elements)
}

// ---------------------------------------------------------------------
// Pseudometrics and window functions

pub fn pseudometric_to_json(d: &Pseudometric) -> Value {
    match d {
        Pseudometric::Discrete => json!({ "kind": "discrete" }),
        Pseudometric::Table(t) => json!({
            "kind": "table",
            "window": window_to_json(t.window()),
            "matrix": t
                .matrix()
                .iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    }
}

pub fn pseudometric_from_json(s: &Semigroup, v: &Value) -> Result<Pseudometric> {
    let ctx = "pseudometric";
    let obj = as_object(v, ctx)?;
    match as_str(field(obj, "kind", ctx)?, ctx)? {
        "discrete" => Ok(Pseudometric::Discrete),
        "table" => {
            let window = window_from_json(s, field(obj, "window", ctx)?)?;
            let matrix = as_array(field(obj, "matrix", ctx)?, ctx)?
                .iter()
                .map(|row| {
                    as_array(row, ctx)?
                        .iter()
                        .map(|e| rat_from_value(e, ctx))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Pseudometric::Table(MetricTable::new(window, matrix)?))
        }
        other => Err(parse_error(ctx, format!("unknown kind {other:?}"))),
    }
}

/// Window function as `{"window": [...], "values": {...}, "default": "p/q"}`
/// with value keys in deterministic (string-sorted) order.
pub fn window_function_to_json(f: &WindowFunction) -> Value {
    let s = f.window().semigroup();
    let mut values = Map::new();
    for (e, v) in f.values() {
        values.insert(s.display_element(e), Value::String(format_rat(v)));
    }
    json!({
        "window": window_to_json(f.window()),
        "values": values,
        "default": format_rat(f.default_value()),
    })
}

pub fn window_function_from_json(s: &Semigroup, v: &Value) -> Result<WindowFunction> {
    let ctx = "window function";
    let obj = as_object(v, ctx)?;
    let values = values_map_from_json(s, field(obj, "values", ctx)?, ctx)?;
    let window = match obj.get("window") {
        Some(w) => window_from_json(s, w)?,
        // Window omitted: the keyed support is the window.
        None => Window::new(s, values.keys().cloned().collect())?,
    };
    let default = match obj.get("default") {
        Some(d) => rat_from_value(d, ctx)?,
        None => crate::rat::rat_int(0),
    };
    WindowFunction::new(window, values, default)
}

fn values_map_from_json(
    s: &Semigroup,
    v: &Value,
    ctx: &str,
) -> Result<BTreeMap<Element, Rat>> {
    let obj = as_object(v, ctx)?;
    let mut values = BTreeMap::new();
    for (key, val) in obj {
        values.insert(s.parse_element(key)?, rat_from_value(val, ctx)?);
    }
    Ok(values)
}

// ---------------------------------------------------------------------
// Measures

/// Measure document: an inline semigroup plus canonical terms
/// `[[element, "p/q"], ...]` with string element keys in support order.
pub fn measure_to_json(mu: &MolecularMeasure) -> Value {
    let s = mu.handle();
    let terms: Vec<Value> = mu
        .terms()
        .iter()
        .map(|(e, c)| {
            json!([
                Value::String(s.display_element(e)),
                Value::String(format_rat(c))
            ])
        })
        .collect();
    json!({
        "semigroup": semigroup_to_json(s),
        "terms": terms,
    })
}

/// Parse a measure document. The `semigroup` field may be an inline
/// object, a builtin name, or a file path resolved against `base`.
/// Duplicate support entries coalesce; a note is pushed per coalesced
/// or dropped-zero entry so callers can surface warnings.
pub fn measure_from_json(
    v: &Value,
    base: &Path,
    warnings: &mut Vec<String>,
) -> Result<MolecularMeasure> {
    let ctx = "measure";
    let obj = as_object(v, ctx)?;
    let s = match field(obj, "semigroup", ctx)? {
        Value::String(spec) => semigroup_from_spec(spec, base)?,
        inline => semigroup_from_json(inline)?,
    };
    let mut terms = Vec::new();
    for entry in as_array(field(obj, "terms", ctx)?, ctx)? {
        let pair = as_array(entry, ctx)?;
        if pair.len() != 2 {
            return Err(parse_error(ctx, "terms must be [element, coefficient] pairs"));
        }
        let e = element_from_json(&s, &pair[0])?;
        let c = rat_from_value(&pair[1], ctx)?;
        terms.push((e, c));
    }
    let raw_len = terms.len();
    let mu = MolecularMeasure::from_terms(&s, terms)?;
    if mu.support_size() != raw_len {
        warnings.push(format!(
            "measure had {} raw terms, coalesced to {}",
            raw_len,
            mu.support_size()
        ));
    }
    Ok(mu)
}

// ---------------------------------------------------------------------
// Ambit witnesses

/// Witness document: neighborhoods with their windows, patterns and
/// tolerances, the selected elements, and the piecewise function (whose
/// window is implicit in its keyed support). Round-trips bit-exactly.
pub fn witness_to_json(w: &AmbitWitness) -> Value {
    let neighborhoods: Vec<Value> = w
        .neighborhoods
        .iter()
        .map(|nb| {
            let s = nb.window().semigroup();
            let mut pattern = Map::new();
            // Sparse form: zero pattern values are implied by the
            // window, exactly as in the in-memory representation.
            for (z, v) in nb.pattern().values() {
                pattern.insert(s.display_element(z), Value::String(format_rat(v)));
            }
            json!({
                "F": window_to_json(nb.window()),
                "h": pattern,
                "eps": format_rat(nb.epsilon()),
            })
        })
        .collect();
    let s = w.function.window().semigroup();
    let selections: Vec<Value> = w
        .selections
        .iter()
        .map(|x| element_to_json(s, x))
        .collect();
    let mut f_values = Map::new();
    for (e, v) in w.function.values() {
        f_values.insert(s.display_element(e), Value::String(format_rat(v)));
    }
    json!({
        "neighborhoods": neighborhoods,
        "selections": selections,
        "f": {
            "values": f_values,
            "default": format_rat(w.function.default_value()),
        },
    })
}

pub fn witness_from_json(s: &Semigroup, v: &Value) -> Result<AmbitWitness> {
    let ctx = "witness";
    let obj = as_object(v, ctx)?;
    let mut neighborhoods = Vec::new();
    for nb in as_array(field(obj, "neighborhoods", ctx)?, ctx)? {
        let nb_obj = as_object(nb, ctx)?;
        let window = window_from_json(s, field(nb_obj, "F", ctx)?)?;
        let values = values_map_from_json(s, field(nb_obj, "h", ctx)?, ctx)?;
        let pattern = WindowFunction::new(window.clone(), values, crate::rat::rat_int(0))?;
        let eps = rat_from_value(field(nb_obj, "eps", ctx)?, ctx)?;
        neighborhoods.push(BasicNeighborhood::new(window, pattern, eps)?);
    }
    let selections = as_array(field(obj, "selections", ctx)?, ctx)?
        .iter()
        .map(|x| element_from_json(s, x))
        .collect::<Result<Vec<_>>>()?;
    let function = window_function_from_json(s, field(obj, "f", ctx)?)?;
    Ok(AmbitWitness {
        neighborhoods,
        selections,
        function,
    })
}

// ---------------------------------------------------------------------
// Canonical text and file helpers

/// Canonical document text: pretty JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    text.push('\n');
    text
}

pub fn value_from_str(text: &str, context: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_error(context, e))
}

pub fn read_value(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| parse_error(&path.display().to_string(), e))?;
    value_from_str(&text, &path.display().to_string())
}

pub fn write_value(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, to_canonical_string(v))
        .map_err(|e| parse_error(&path.display().to_string(), e))
}

pub fn read_measure(path: &Path, warnings: &mut Vec<String>) -> Result<MolecularMeasure> {
    let value = read_value(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    measure_from_json(&value, base, warnings)
}
