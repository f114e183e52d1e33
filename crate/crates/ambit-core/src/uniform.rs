//! Pseudometrics on finite windows, Lipschitz-ball membership, and
//! quantitative equicontinuity reports.
//!
//! On a finite window every bounded function is uniformly continuous,
//! so the interesting questions are quantitative: the best Lipschitz
//! constants of the translation families, and whether translations
//! respect zero distances. All values are exact rationals.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};
use crate::semigroup::{Element, Semigroup, Window};

/// A pseudometric usable on finite windows: either the discrete metric
/// (1 between distinct points) or an explicit distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pseudometric {
    Discrete,
    Table(MetricTable),
}

/// Symmetric rational distance matrix over a window, validated at
/// construction: zero diagonal, symmetry, non-negativity, and the
/// triangle inequality over all window triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTable {
    window: Window,
    matrix: Vec<Vec<Rat>>,
}

/// Outcome of validating a raw distance matrix. Indices refer to
/// positions in the accompanying window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixCheck {
    Ok,
    NotSquare { row: usize, len: usize },
    NonzeroDiagonal { at: usize },
    Asymmetric { i: usize, j: usize },
    Negative { i: usize, j: usize },
    TriangleViolation { i: usize, j: usize, k: usize },
}

/// Validate the pseudometric axioms on a raw matrix; reports the first
/// violation in scan order.
pub fn check_distance_matrix(matrix: &[Vec<Rat>]) -> MatrixCheck {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return MatrixCheck::NotSquare { row: i, len: row.len() };
        }
    }
    for i in 0..n {
        if !matrix[i][i].is_zero() {
            return MatrixCheck::NonzeroDiagonal { at: i };
        }
        for j in 0..n {
            if matrix[i][j] < rat_int(0) {
                return MatrixCheck::Negative { i, j };
            }
            if matrix[i][j] != matrix[j][i] {
                return MatrixCheck::Asymmetric { i, j };
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if matrix[i][k] > &matrix[i][j] + &matrix[j][k] {
                    return MatrixCheck::TriangleViolation { i, j, k };
                }
            }
        }
    }
    MatrixCheck::Ok
}

impl MetricTable {
    pub fn new(window: Window, matrix: Vec<Vec<Rat>>) -> Result<Self> {
        if matrix.len() != window.len() {
            return Err(Error::MalformedMatrix {
                reason: format!(
                    "matrix of order {} over a window of size {}",
                    matrix.len(),
                    window.len()
                ),
            });
        }
        match check_distance_matrix(&matrix) {
            MatrixCheck::Ok => Ok(Self { window, matrix }),
            violation => Err(Error::InvalidPseudometric {
                reason: format!("{violation:?}"),
            }),
        }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    fn position(&self, e: &Element) -> Option<usize> {
        self.window.elements().iter().position(|x| x == e)
    }
}

/// Validate a pseudometric. Tables are rechecked against the axioms;
/// the discrete metric is an axiom-satisfying constant.
pub fn validate_pseudometric(d: &Pseudometric) -> MatrixCheck {
    match d {
        Pseudometric::Discrete => MatrixCheck::Ok,
        Pseudometric::Table(t) => check_distance_matrix(&t.matrix),
    }
}

impl Pseudometric {
    /// Exact distance between two elements. Table metrics require both
    /// elements to lie in the table's window.
    pub fn distance(&self, x: &Element, y: &Element) -> Result<Rat> {
        match self {
            Pseudometric::Discrete => Ok(if x == y { rat_int(0) } else { rat_int(1) }),
            Pseudometric::Table(t) => {
                let (i, j) = match (t.position(x), t.position(y)) {
                    (Some(i), Some(j)) => (i, j),
                    _ => {
                        return Err(Error::WindowMismatch {
                            reason: "element has no recorded distance".to_string(),
                        })
                    }
                };
                Ok(t.matrix[i][j].clone())
            }
        }
    }

    /// True when the metric covers every element of `window`.
    pub fn covers(&self, window: &Window) -> bool {
        match self {
            Pseudometric::Discrete => true,
            Pseudometric::Table(t) => window.iter().all(|e| t.window.contains(e)),
        }
    }
}

/// A rational-valued function given by explicit values on a window and
/// a default value everywhere else; total by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowFunction {
    window: Window,
    values: BTreeMap<Element, Rat>,
    default: Rat,
}

impl WindowFunction {
    /// Build a function; every keyed element must lie in the window.
    /// Keyed values equal to the default are dropped, so structural
    /// equality coincides with pointwise equality and serialized forms
    /// are unique.
    pub fn new(window: Window, mut values: BTreeMap<Element, Rat>, default: Rat) -> Result<Self> {
        for key in values.keys() {
            if !window.contains(key) {
                return Err(Error::WindowMismatch {
                    reason: format!(
                        "value keyed at {} outside the window",
                        window.semigroup().display_element(key)
                    ),
                });
            }
        }
        values.retain(|_, v| *v != default);
        Ok(Self { window, values, default })
    }

    /// The constant function on a window.
    pub fn constant(window: Window, value: Rat) -> Self {
        Self {
            window,
            values: BTreeMap::new(),
            default: value,
        }
    }

    /// Indicator of a set of marked elements (1 on them, 0 elsewhere).
    pub fn indicator(window: Window, marked: &[Element]) -> Result<Self> {
        let values = marked
            .iter()
            .map(|e| (e.clone(), rat_int(1)))
            .collect::<BTreeMap<_, _>>();
        Self::new(window, values, rat_int(0))
    }

    /// Value at any element: the keyed value inside the window, the
    /// default elsewhere.
    pub fn value(&self, e: &Element) -> Rat {
        self.values.get(e).cloned().unwrap_or_else(|| self.default.clone())
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &BTreeMap<Element, Rat> {
        &self.values
    }

    pub fn default_value(&self) -> &Rat {
        &self.default
    }

    /// The values on the window in window order.
    pub fn window_values(&self) -> Vec<Rat> {
        self.window.iter().map(|e| self.value(e)).collect()
    }

    /// Pointwise equality on this function's window.
    pub fn agrees_on_window(&self, other: &WindowFunction) -> bool {
        self.window
            .iter()
            .all(|e| self.value(e) == other.value(e))
    }
}

/// Outcome of a Lipschitz-ball membership check; reports the first
/// violated constraint in window order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LipCheck {
    Ok,
    /// A window value falls outside `[-1, 1]`.
    OutOfRange(Element),
    /// `|f(x) - f(y)| > d(x, y)` for a window pair.
    NotLipschitz(Element, Element),
    /// A negative value under the positivity flag.
    Negative(Element),
}

impl LipCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, LipCheck::Ok)
    }
}

/// Membership of `f` in the Lipschitz ball of `d` on `f`'s window:
/// values in `[-1, 1]`, pairwise differences bounded by the distance,
/// and (with `positive`) no negative values.
///
/// Under the discrete metric the positive ball is exactly the functions
/// into `[0, 1]`.
pub fn lip_membership(f: &WindowFunction, d: &Pseudometric, positive: bool) -> Result<LipCheck> {
    if !d.covers(f.window()) {
        return Err(Error::WindowMismatch {
            reason: "function window not covered by the metric".to_string(),
        });
    }
    let one = rat_int(1);
    for x in f.window().iter() {
        let v = f.value(x);
        if v > one || v < -&one {
            return Ok(LipCheck::OutOfRange(x.clone()));
        }
        if positive && v < rat_int(0) {
            return Ok(LipCheck::Negative(x.clone()));
        }
    }
    let elements = f.window().elements();
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i + 1..] {
            let gap = f.value(x) - f.value(y);
            let gap = if gap < rat_int(0) { -gap } else { gap };
            if gap > d.distance(x, y)? {
                return Ok(LipCheck::NotLipschitz(x.clone(), y.clone()));
            }
        }
    }
    Ok(LipCheck::Ok)
}

/// Quantitative equicontinuity data for the translation families of a
/// sampled semigroup under a pseudometric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquicontinuityReport {
    /// Largest observed ratio `d(x*y, x'*y) / d(x, x')` over sampled
    /// `x, x', y` with `d(x, x') > 0`; zero when no such pair exists.
    /// This is the best Lipschitz constant for the right-translation
    /// family on the sample.
    pub right_family_constant: Rat,
    /// Per sampled `x`, the largest ratio `d(x*y, x*y') / d(y, y')`
    /// over sampled pairs with `d(y, y') > 0`, in sample order.
    pub left_constants: Vec<(Element, Rat)>,
    /// Triples `(x, x', y)` with `d(x, x') = 0` but `d(x*y, x'*y) > 0`.
    /// Empty exactly when right translations respect zero distances,
    /// the finite-scale form of uniform equicontinuity of the family.
    pub zero_distance_violations: Vec<(Element, Element, Element)>,
}

/// Equicontinuity report over a sample of a semigroup; the metric must
/// cover all pairwise products of sampled elements.
pub fn equicontinuity_report(
    s: &Semigroup,
    d: &Pseudometric,
    sample: &Window,
) -> Result<EquicontinuityReport> {
    if sample.semigroup() != s {
        return Err(Error::HandleMismatch);
    }
    let s = s.clone();
    equicontinuity_report_with(
        move |x: &Element, y: &Element| s.product(x, y),
        d,
        sample.elements(),
    )
}

/// Equicontinuity report driven by an arbitrary product oracle, for
/// sampled structures that are not backed by a built-in handle (for
/// example rational samples of a ball in a normed algebra). The oracle
/// must be total on sample pairs and its products must carry distances.
pub fn equicontinuity_report_with<P>(
    product: P,
    d: &Pseudometric,
    sample: &[Element],
) -> Result<EquicontinuityReport>
where
    P: Fn(&Element, &Element) -> Result<Element>,
{
    let zero = rat_int(0);
    let prod = |x: &Element, y: &Element| -> Result<Element> {
        let p = product(x, y)?;
        if let Pseudometric::Table(t) = d {
            if t.position(&p).is_none() {
                return Err(Error::ProductOutsideWindow {
                    x: format!("{x:?}"),
                    y: format!("{y:?}"),
                });
            }
        }
        Ok(p)
    };

    let mut right_constant = zero.clone();
    let mut violations = Vec::new();
    for (i, x) in sample.iter().enumerate() {
        for x2 in &sample[i + 1..] {
            let base = d.distance(x, x2)?;
            for y in sample {
                let image = d.distance(&prod(x, y)?, &prod(x2, y)?)?;
                if base.is_zero() {
                    if !image.is_zero() {
                        violations.push((x.clone(), x2.clone(), y.clone()));
                    }
                } else {
                    let ratio = image / &base;
                    if ratio > right_constant {
                        right_constant = ratio;
                    }
                }
            }
        }
    }

    let mut left_constants = Vec::with_capacity(sample.len());
    for x in sample {
        let mut best = zero.clone();
        for (j, y) in sample.iter().enumerate() {
            for y2 in &sample[j + 1..] {
                let base = d.distance(y, y2)?;
                if base.is_zero() {
                    continue;
                }
                let image = d.distance(&prod(x, y)?, &prod(x, y2)?)?;
                let ratio = image / &base;
                if ratio > best {
                    best = ratio;
                }
            }
        }
        left_constants.push((x.clone(), best));
    }

    Ok(EquicontinuityReport {
        right_family_constant: right_constant,
        left_constants,
        zero_distance_violations: violations,
    })
}
