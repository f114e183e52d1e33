//! The ambit-witness construction: a deterministic stream of finite
//! pattern neighborhoods, a greedy selector that claims disjoint
//! product sets for them, and the piecewise function whose right orbit
//! then hits every enumerated pattern exactly.
//!
//! A [`BasicNeighborhood`] prescribes a rational pattern `h` on a
//! finite window `F` up to a tolerance `eps`. [`greedy_select`] picks,
//! for each neighborhood in order, the first element `x` of the
//! canonical enumeration such that `z -> z * x` is injective on `F` and
//! the claimed product set `F * x` misses everything claimed before.
//! [`build_ambit_function`] then defines `f(z * x_U) = h_U(z)` and 0
//! elsewhere, which is well defined exactly because of those two
//! guarantees; [`verify_ambit`] rechecks everything from scratch.

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::orbit::right_translate;
use crate::rat::{format_rat, rat_int, Rat};
use crate::semigroup::{Element, Semigroup, Window};
use crate::uniform::WindowFunction;

/// A finite pattern neighborhood: functions within `epsilon` of the
/// pattern `h` on the window `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicNeighborhood {
    window: Window,
    pattern: WindowFunction,
    epsilon: Rat,
}

impl BasicNeighborhood {
    /// Build a neighborhood: `window` non-empty, pattern values within
    /// `[0, 1]` on the window, `epsilon` positive.
    pub fn new(window: Window, pattern: WindowFunction, epsilon: Rat) -> Result<Self> {
        if window.is_empty() {
            return Err(Error::Invalid("neighborhood window must be non-empty".into()));
        }
        if pattern.window() != &window {
            return Err(Error::WindowMismatch {
                reason: "pattern window differs from the neighborhood window".to_string(),
            });
        }
        for z in window.iter() {
            let v = pattern.value(z);
            if v < rat_int(0) || v > rat_int(1) {
                return Err(Error::Invalid(format!(
                    "pattern value {} at {} outside [0, 1]",
                    format_rat(&v),
                    window.semigroup().display_element(z)
                )));
            }
        }
        if epsilon <= rat_int(0) {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        Ok(Self {
            window,
            pattern,
            epsilon,
        })
    }

    /// The finite window the pattern lives on.
    pub fn window(&self) -> &Window {
        &self.window
    }

    /// The prescribed pattern values.
    pub fn pattern(&self) -> &WindowFunction {
        &self.pattern
    }

    /// The tolerance.
    pub fn epsilon(&self) -> &Rat {
        &self.epsilon
    }
}

/// Tolerance schedule for the neighborhood stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsilonRule {
    /// `1/2^j` for the `j`-th neighborhood (1-based). The default.
    Halving,
    /// A fixed positive tolerance.
    Constant(Rat),
}

impl EpsilonRule {
    fn at(&self, position: usize) -> Rat {
        match self {
            EpsilonRule::Halving => {
                Rat::new(BigInt::from(1), BigInt::from(2).pow(position as u32))
            }
            EpsilonRule::Constant(eps) => eps.clone(),
        }
    }
}

/// Deterministic stream of pattern neighborhoods.
///
/// Windows are enumeration prefixes of sizes `1..=max_window`, visited
/// round-robin; for each size the patterns walk the rational grid
/// `{0, 1/m, ..., 1}` per window element, in base-`(m+1)` counting
/// order with the first window element as the least significant digit.
/// A size whose grid is exhausted is skipped; if every size is
/// exhausted all counters reset and the walk continues (the shrinking
/// tolerance keeps the triples distinct). Same inputs, same list, and
/// extending `count` extends the list.
pub fn enumerate_neighborhoods(
    s: &Semigroup,
    count: usize,
    max_window: usize,
    grid_denominator: u64,
    epsilon_rule: &EpsilonRule,
) -> Result<Vec<BasicNeighborhood>> {
    if max_window == 0 {
        return Err(Error::Invalid("max window size must be at least 1".into()));
    }
    if grid_denominator == 0 {
        return Err(Error::Invalid("grid denominator must be at least 1".into()));
    }
    let max_window = match s.carrier_size() {
        Some(n) => max_window.min(n as usize),
        None => max_window,
    };
    let prefixes: Vec<Window> = (1..=max_window).map(|k| s.enumerate(k)).collect::<Result<_>>()?;
    let base = grid_denominator + 1;
    // Grid capacity per window size; None means more than u64 can count.
    let capacities: Vec<Option<u64>> = (1..=max_window)
        .map(|k| {
            let mut cap: Option<u64> = Some(1);
            for _ in 0..k {
                cap = cap.and_then(|c| c.checked_mul(base));
            }
            cap
        })
        .collect();
    let mut counters = vec![0u64; max_window];
    let mut cursor = 0usize;
    let mut out = Vec::with_capacity(count);

    for position in 1..=count {
        let mut hops = 0;
        while capacities[cursor].is_some_and(|cap| counters[cursor] >= cap) {
            cursor = (cursor + 1) % max_window;
            hops += 1;
            if hops > max_window {
                // Whole grid space exhausted: restart the walk.
                counters.iter_mut().for_each(|c| *c = 0);
                break;
            }
        }
        let window = prefixes[cursor].clone();
        let mut digits = counters[cursor];
        let mut values = BTreeMap::new();
        for z in window.iter() {
            let digit = digits % base;
            digits /= base;
            if digit != 0 {
                values.insert(
                    z.clone(),
                    Rat::new(BigInt::from(digit), BigInt::from(grid_denominator)),
                );
            }
        }
        let pattern = WindowFunction::new(window.clone(), values, rat_int(0))?;
        out.push(BasicNeighborhood::new(
            window,
            pattern,
            epsilon_rule.at(position),
        )?);
        counters[cursor] += 1;
        cursor = (cursor + 1) % max_window;
    }
    Ok(out)
}

/// Greedily pick one translating element per neighborhood.
///
/// For each neighborhood in order, the first element of the canonical
/// enumeration (scanning at most `search_budget` candidates) such that
/// translation by it is injective on the neighborhood window and the
/// resulting product set is disjoint from every previously claimed one.
/// Fails with [`Error::BudgetExhausted`] naming the neighborhood at
/// which no admissible candidate exists within the budget -- which is
/// the expected outcome on carriers without the cancellation
/// properties, such as right-zero semigroups at window size 2.
pub fn greedy_select(
    s: &Semigroup,
    neighborhoods: &[BasicNeighborhood],
    search_budget: u64,
) -> Result<Vec<Element>> {
    let mut claimed: BTreeSet<Element> = BTreeSet::new();
    let mut selections = Vec::with_capacity(neighborhoods.len());
    for (index, nb) in neighborhoods.iter().enumerate() {
        if nb.window().semigroup() != s {
            return Err(Error::HandleMismatch);
        }
        let mut chosen: Option<(Element, BTreeSet<Element>)> = None;
        let mut scanned = 0u64;
        while scanned < search_budget {
            let Some(candidate) = s.element_at(scanned) else {
                break; // finite carrier exhausted
            };
            scanned += 1;
            let mut products = BTreeSet::new();
            let mut admissible = true;
            for z in nb.window().iter() {
                let p = s.product(z, &candidate)?;
                if claimed.contains(&p) || !products.insert(p) {
                    admissible = false;
                    break;
                }
            }
            if admissible {
                chosen = Some((candidate, products));
                break;
            }
        }
        match chosen {
            Some((x, products)) => {
                claimed.extend(products);
                selections.push(x);
            }
            None => return Err(Error::BudgetExhausted { index, scanned }),
        }
    }
    Ok(selections)
}

/// An ambit witness: the selected translating elements together with
/// the piecewise function they define.
///
/// Fields are plain data so that witnesses can be loaded from files and
/// tampered with in tests; [`verify_ambit`] never trusts them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbitWitness {
    pub neighborhoods: Vec<BasicNeighborhood>,
    pub selections: Vec<Element>,
    /// The piecewise function: pattern value at claimed products,
    /// default 0 elsewhere.
    pub function: WindowFunction,
}

/// Assemble the piecewise orbit function from neighborhoods and
/// selections.
///
/// Re-verifies per-neighborhood injectivity and cross-neighborhood
/// disjointness instead of trusting the selections: any point that
/// would receive two values aborts with [`Error::IllFormedSelection`]
/// naming the two claiming neighborhoods.
pub fn build_ambit_function(
    s: &Semigroup,
    neighborhoods: Vec<BasicNeighborhood>,
    selections: Vec<Element>,
) -> Result<AmbitWitness> {
    if neighborhoods.len() != selections.len() {
        return Err(Error::Invalid(format!(
            "{} neighborhoods but {} selections",
            neighborhoods.len(),
            selections.len()
        )));
    }
    let mut claims: BTreeMap<Element, usize> = BTreeMap::new();
    let mut values: BTreeMap<Element, Rat> = BTreeMap::new();
    for (index, (nb, x)) in neighborhoods.iter().zip(&selections).enumerate() {
        if nb.window().semigroup() != s {
            return Err(Error::HandleMismatch);
        }
        for z in nb.window().iter() {
            let point = s.product(z, x)?;
            if let Some(&first) = claims.get(&point) {
                return Err(Error::IllFormedSelection {
                    point: s.display_element(&point),
                    first,
                    second: index,
                });
            }
            claims.insert(point.clone(), index);
            let v = nb.pattern().value(z);
            if !v.is_zero() {
                values.insert(point.clone(), v);
            }
        }
    }
    let support: Vec<Element> = claims.into_keys().collect();
    let window = Window::new(s, support)?;
    let function = WindowFunction::new(window, values, rat_int(0))?;
    Ok(AmbitWitness {
        neighborhoods,
        selections,
        function,
    })
}

/// One verified condition of an ambit witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Full verification report for an ambit witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub checks: Vec<WitnessCheck>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Verify an ambit witness exhaustively, from scratch.
///
/// Checks, in order: the selection count matches the neighborhoods;
/// translation by each selection is injective on its window; claimed
/// product sets are pairwise disjoint; the function follows the
/// piecewise formula (pattern values on claimed products, zero
/// elsewhere, zero default); and each right translate reproduces its
/// pattern exactly, with zero deviation, hence inside every tolerance.
/// Failures are report entries, not errors; a zero-neighborhood
/// witness passes vacuously.
pub fn verify_ambit(s: &Semigroup, witness: &AmbitWitness) -> Result<WitnessReport> {
    let mut checks = Vec::new();
    let shape_ok = witness.neighborhoods.len() == witness.selections.len();
    checks.push(WitnessCheck {
        name: "shape",
        passed: shape_ok,
        detail: format!(
            "{} neighborhoods, {} selections",
            witness.neighborhoods.len(),
            witness.selections.len()
        ),
    });
    if !shape_ok {
        return Ok(WitnessReport { checks });
    }

    let pairs = || witness.neighborhoods.iter().zip(&witness.selections);

    // Injectivity of z -> z * x on each neighborhood window.
    let mut injective_failures = Vec::new();
    let mut claimed_sets: Vec<BTreeSet<Element>> = Vec::new();
    for (index, (nb, x)) in pairs().enumerate() {
        let mut products = BTreeSet::new();
        for z in nb.window().iter() {
            if !products.insert(s.product(z, x)?) {
                injective_failures.push(index);
                break;
            }
        }
        claimed_sets.push(products);
    }
    checks.push(WitnessCheck {
        name: "translation-injective",
        passed: injective_failures.is_empty(),
        detail: if injective_failures.is_empty() {
            format!("all {} selections injective", witness.selections.len())
        } else {
            format!("collisions inside neighborhoods {injective_failures:?}")
        },
    });

    // Pairwise disjointness of the claimed product sets.
    let mut overlap: Option<(usize, usize)> = None;
    'outer: for i in 0..claimed_sets.len() {
        for j in i + 1..claimed_sets.len() {
            if claimed_sets[i].intersection(&claimed_sets[j]).next().is_some() {
                overlap = Some((i, j));
                break 'outer;
            }
        }
    }
    checks.push(WitnessCheck {
        name: "claims-disjoint",
        passed: overlap.is_none(),
        detail: match overlap {
            None => "all claimed product sets pairwise disjoint".to_string(),
            Some((i, j)) => format!("neighborhoods {i} and {j} claim a common point"),
        },
    });

    // The piecewise formula: pattern values on claims, zero elsewhere.
    let mut formula_failures = Vec::new();
    if !witness.function.default_value().is_zero() {
        formula_failures.push("nonzero default".to_string());
    }
    let union: BTreeSet<&Element> = claimed_sets.iter().flatten().collect();
    for (index, (nb, x)) in pairs().enumerate() {
        for z in nb.window().iter() {
            let point = s.product(z, x)?;
            if witness.function.value(&point) != nb.pattern().value(z) {
                formula_failures.push(format!(
                    "value at {} differs from pattern {index}",
                    s.display_element(&point)
                ));
            }
        }
    }
    for (point, value) in witness.function.values() {
        if !union.contains(point) && !value.is_zero() {
            formula_failures.push(format!(
                "nonzero value at unclaimed point {}",
                s.display_element(point)
            ));
        }
    }
    checks.push(WitnessCheck {
        name: "piecewise-formula",
        passed: formula_failures.is_empty(),
        detail: if formula_failures.is_empty() {
            "function matches the piecewise formula".to_string()
        } else {
            formula_failures.join("; ")
        },
    });

    // Exact orbit density on the enumerated patterns: translating by
    // each selection reproduces its pattern with zero deviation.
    let mut worst_deviation = rat_int(0);
    let mut translate_failures = Vec::new();
    for (index, (nb, x)) in pairs().enumerate() {
        let translated = right_translate(&witness.function, x, nb.window())?;
        for z in nb.window().iter() {
            let gap = translated.value(z) - nb.pattern().value(z);
            let gap = if gap < rat_int(0) { -gap } else { gap };
            if gap > worst_deviation {
                worst_deviation = gap.clone();
            }
            if !gap.is_zero() {
                translate_failures.push(index);
                break;
            }
        }
    }
    checks.push(WitnessCheck {
        name: "translate-match",
        passed: translate_failures.is_empty(),
        detail: if translate_failures.is_empty() {
            format!(
                "all {} neighborhoods matched exactly (max deviation 0)",
                witness.neighborhoods.len()
            )
        } else {
            format!(
                "deviation {} on neighborhoods {translate_failures:?}",
                format_rat(&worst_deviation)
            )
        },
    });

    Ok(WitnessReport { checks })
}
