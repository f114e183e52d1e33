//! Right translations, orbit traces, and the measure-to-function map
//! that sends a measure to the weighted mixture of right translates.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::measure::MolecularMeasure;
use crate::rat::{rat_int, Rat};
use crate::semigroup::{Element, Window};
use crate::uniform::WindowFunction;

/// The right translate of `f` by `x`, materialized on `out`:
/// `g(z) = f(z * x)` for every `z` in the output window.
///
/// The result is total like every window function, but only the values
/// on `out` are computed; off the window it falls back to default 0.
pub fn right_translate(f: &WindowFunction, x: &Element, out: &Window) -> Result<WindowFunction> {
    let s = out.semigroup();
    if f.window().semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    if !s.contains(x) {
        return Err(Error::InvalidElement {
            element: format!("{x:?}"),
        });
    }
    let mut values = BTreeMap::new();
    for z in out.iter() {
        values.insert(z.clone(), f.value(&s.product(z, x)?));
    }
    WindowFunction::new(out.clone(), values, rat_int(0))
}

/// The set of restriction vectors traced out by right translates of a
/// base function over a search window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTrace {
    /// The translated base function.
    pub base: WindowFunction,
    /// The probe window whose coordinates each vector records.
    pub probe: Window,
    /// Deduplicated vectors `(f(z * x)) for z in probe`, one per
    /// distinct restriction over the search window.
    pub vectors: BTreeSet<Vec<Rat>>,
}

/// Trace the right orbit of `f` through the coordinates of a probe
/// window, translating by every element of `search`.
pub fn orbit_trace(f: &WindowFunction, probe: &Window, search: &Window) -> Result<OrbitTrace> {
    let s = probe.semigroup();
    if f.window().semigroup() != s || search.semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    let mut vectors = BTreeSet::new();
    for x in search.iter() {
        let mut vector = Vec::with_capacity(probe.len());
        for z in probe.iter() {
            vector.push(f.value(&s.product(z, x)?));
        }
        vectors.insert(vector);
    }
    Ok(OrbitTrace {
        base: f.clone(),
        probe: probe.clone(),
        vectors,
    })
}

/// First element of `search` (in window order) whose right translate of
/// `f` lies within `target.epsilon()` of the target pattern on the
/// target's window, or `None` when the search window is exhausted.
pub fn find_approximant(
    f: &WindowFunction,
    target: &crate::ambit::BasicNeighborhood,
    search: &Window,
) -> Result<Option<Element>> {
    let s = search.semigroup();
    if f.window().semigroup() != s || target.window().semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    'candidates: for x in search.iter() {
        for z in target.window().iter() {
            let gap = f.value(&s.product(z, x)?) - target.pattern().value(z);
            let gap = if gap < rat_int(0) { -gap } else { gap };
            if &gap >= target.epsilon() {
                continue 'candidates;
            }
        }
        return Ok(Some(x.clone()));
    }
    Ok(None)
}

/// The function a measure induces through a base function: the measure
/// applied to `y -> f(x * y)` as `x` ranges over the output window.
///
/// `g(x) = sum of c_j * f(x * y_j)` over the terms `(y_j, c_j)` of the
/// measure; a point mass reduces to the right translate by its point.
pub fn phi_map(
    f: &WindowFunction,
    nu: &MolecularMeasure,
    out: &Window,
) -> Result<WindowFunction> {
    let s = out.semigroup();
    if f.window().semigroup() != s || nu.handle() != s {
        return Err(Error::HandleMismatch);
    }
    let mut values = BTreeMap::new();
    for x in out.iter() {
        let mut acc = rat_int(0);
        for (y, c) in nu.terms() {
            acc = acc + c * &f.value(&s.product(x, y)?);
        }
        values.insert(x.clone(), acc);
    }
    WindowFunction::new(out.clone(), values, rat_int(0))
}
