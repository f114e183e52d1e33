//! Finitely supported measures with exact rational coefficients, their
//! convolution algebra, and the Lipschitz-dual distance.
//!
//! A molecular measure is a finite linear combination of point masses.
//! Convolution is the bilinear extension of "point mass at x times
//! point mass at y is the point mass at x*y"; everything else (norm,
//! positivity, pairing against window functions) reads directly off the
//! coalesced term list. The term list is kept canonical -- sorted,
//! coalesced, zero-free -- so structural equality decides measure
//! equality and serialized forms are unique.

use std::collections::BTreeMap;

use num::traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp;
use crate::rat::{rat_int, Rat};
use crate::semigroup::{Element, Semigroup, Window};
use crate::uniform::{Pseudometric, WindowFunction};

/// A finitely supported measure over a semigroup carrier: a canonical
/// coalesced list of `(element, coefficient)` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolecularMeasure {
    handle: Semigroup,
    terms: Vec<(Element, Rat)>,
}

impl MolecularMeasure {
    /// The zero measure.
    pub fn zero(handle: &Semigroup) -> Self {
        Self {
            handle: handle.clone(),
            terms: Vec::new(),
        }
    }

    /// The unit point mass at `x`.
    pub fn dirac(handle: &Semigroup, x: &Element) -> Result<Self> {
        Self::from_terms(handle, [(x.clone(), rat_int(1))])
    }

    /// Build a measure from raw terms: coefficients at equal elements
    /// are summed, zero coefficients dropped, and the support sorted
    /// into canonical order.
    pub fn from_terms<I>(handle: &Semigroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, Rat)>,
    {
        let mut acc: BTreeMap<Element, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if !handle.contains(&e) {
                return Err(Error::InvalidElement {
                    element: format!("{e:?}"),
                });
            }
            let slot = acc.entry(e).or_insert_with(|| rat_int(0));
            *slot = &*slot + &c;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            handle: handle.clone(),
            terms: acc.into_iter().collect(),
        })
    }

    pub fn handle(&self) -> &Semigroup {
        &self.handle
    }

    /// Canonical term list: sorted support, no zero coefficients.
    pub fn terms(&self) -> &[(Element, Rat)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.terms.iter().map(|(e, _)| e)
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at an element (zero off the support).
    pub fn coefficient(&self, e: &Element) -> Rat {
        match self.terms.binary_search_by(|(x, _)| x.cmp(e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => rat_int(0),
        }
    }

    /// Total-variation norm: the sum of absolute coefficients of the
    /// coalesced terms. On a discrete carrier every bounded function is
    /// uniformly continuous, so this is the exact dual norm.
    pub fn norm(&self) -> Rat {
        self.terms
            .iter()
            .fold(rat_int(0), |acc, (_, c)| acc + c.abs())
    }

    /// True when every coefficient is non-negative, which on a discrete
    /// carrier is exactly positivity against non-negative functions.
    pub fn is_positive(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Pairing with a window function: the coefficient-weighted sum of
    /// function values over the support. Exact; the function's default
    /// value covers support points outside its window.
    pub fn evaluate(&self, f: &WindowFunction) -> Result<Rat> {
        if f.window().semigroup() != &self.handle {
            return Err(Error::HandleMismatch);
        }
        Ok(self
            .terms
            .iter()
            .fold(rat_int(0), |acc, (e, c)| acc + c * &f.value(e)))
    }

    /// Scalar multiple.
    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero(&self.handle);
        }
        Self {
            handle: self.handle.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), r * c)).collect(),
        }
    }

    /// Convolution: the bilinear extension of point-mass products,
    /// coalesced into canonical form.
    pub fn convolve(&self, other: &MolecularMeasure) -> Result<MolecularMeasure> {
        if self.handle != other.handle {
            return Err(Error::HandleMismatch);
        }
        let mut acc: BTreeMap<Element, Rat> = BTreeMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let e = self.handle.product(x, y)?;
                let slot = acc.entry(e).or_insert_with(|| rat_int(0));
                *slot = &*slot + &(a * b);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MolecularMeasure {
            handle: self.handle.clone(),
            terms: acc.into_iter().collect(),
        })
    }
}

/// `r*mu + t*nu` in canonical form.
pub fn linear_combine(
    r: &Rat,
    mu: &MolecularMeasure,
    t: &Rat,
    nu: &MolecularMeasure,
) -> Result<MolecularMeasure> {
    if mu.handle != nu.handle {
        return Err(Error::HandleMismatch);
    }
    let terms = mu
        .terms
        .iter()
        .map(|(e, c)| (e.clone(), r * c))
        .chain(nu.terms.iter().map(|(e, c)| (e.clone(), t * c)));
    MolecularMeasure::from_terms(&mu.handle, terms)
}

/// `mu - nu`.
pub fn difference(mu: &MolecularMeasure, nu: &MolecularMeasure) -> Result<MolecularMeasure> {
    linear_combine(&rat_int(1), mu, &rat_int(-1), nu)
}

/// A semigroup acting on a carrier space: `apply(s, y)` must satisfy
/// `apply(s, apply(s', y)) = apply(s*s', y)`.
pub trait SemigroupAction {
    /// The acting semigroup.
    fn acting(&self) -> &Semigroup;
    /// The carrier the action moves.
    fn carrier(&self) -> &Semigroup;
    /// The action map.
    fn apply(&self, s: &Element, y: &Element) -> Result<Element>;
}

/// A semigroup acting on itself by multiplication.
pub struct SelfAction(pub Semigroup);

impl SemigroupAction for SelfAction {
    fn acting(&self) -> &Semigroup {
        &self.0
    }

    fn carrier(&self) -> &Semigroup {
        &self.0
    }

    fn apply(&self, s: &Element, y: &Element) -> Result<Element> {
        self.0.product(s, y)
    }
}

/// An action given by an arbitrary closure over fixed spaces.
pub struct FnAction<F> {
    pub acting: Semigroup,
    pub carrier: Semigroup,
    pub map: F,
}

impl<F> SemigroupAction for FnAction<F>
where
    F: Fn(&Element, &Element) -> Result<Element>,
{
    fn acting(&self) -> &Semigroup {
        &self.acting
    }

    fn carrier(&self) -> &Semigroup {
        &self.carrier
    }

    fn apply(&self, s: &Element, y: &Element) -> Result<Element> {
        (self.map)(s, y)
    }
}

// How many support elements per side feed the opportunistic action-law
// check. The law is a precondition the library cannot decide in
// general; the check catches blatant violations deterministically.
const ACTION_LAW_SAMPLE: usize = 4;

/// Convolution of a measure over the acting semigroup with a measure
/// over the carrier: the bilinear extension of `(s, y) -> apply(s, y)`.
///
/// The action law is spot-checked on a bounded deterministic sample of
/// support triples before any term is computed; a failing triple aborts
/// with [`Error::ActionLawViolation`]. With [`SelfAction`] this
/// specializes to [`MolecularMeasure::convolve`].
pub fn action_convolve(
    mu: &MolecularMeasure,
    nu: &MolecularMeasure,
    action: &dyn SemigroupAction,
) -> Result<MolecularMeasure> {
    if &mu.handle != action.acting() || &nu.handle != action.carrier() {
        return Err(Error::HandleMismatch);
    }
    let xs: Vec<&Element> = mu.support().take(ACTION_LAW_SAMPLE).collect();
    let ys: Vec<&Element> = nu.support().take(ACTION_LAW_SAMPLE).collect();
    for &s in &xs {
        for &s2 in &xs {
            for &y in &ys {
                let nested = action.apply(s, &action.apply(s2, y)?)?;
                let fused = action.apply(&mu.handle.product(s, s2)?, y)?;
                if nested != fused {
                    return Err(Error::ActionLawViolation {
                        s: mu.handle.display_element(s),
                        s2: mu.handle.display_element(s2),
                        y: nu.handle.display_element(y),
                    });
                }
            }
        }
    }
    let mut acc: BTreeMap<Element, Rat> = BTreeMap::new();
    for (x, a) in &mu.terms {
        for (y, b) in &nu.terms {
            let e = action.apply(x, y)?;
            if !action.carrier().contains(&e) {
                return Err(Error::InvalidElement {
                    element: format!("{e:?}"),
                });
            }
            let slot = acc.entry(e).or_insert_with(|| rat_int(0));
            *slot = &*slot + &(a * b);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(MolecularMeasure {
        handle: nu.handle.clone(),
        terms: acc.into_iter().collect(),
    })
}

/// Exact distance between two measures in the dual of the Lipschitz
/// ball of `d` over a window: the maximum of `|(mu - nu)(f)|` over all
/// `f` with values in `[-1, 1]` and `|f(x) - f(y)| <= d(x, y)` on the
/// window.
///
/// Solved as an exact rational linear program over the Lipschitz
/// polytope. Both supports must lie inside `window`, and a table metric
/// must cover it. Enlarging the window beyond the supports never
/// changes the value: a Lipschitz function on the support extends to
/// any larger window without leaving the ball.
pub fn ueb_distance(
    mu: &MolecularMeasure,
    nu: &MolecularMeasure,
    d: &Pseudometric,
    window: &Window,
) -> Result<Rat> {
    if mu.handle != nu.handle || window.semigroup() != &mu.handle {
        return Err(Error::HandleMismatch);
    }
    if !d.covers(window) {
        return Err(Error::WindowMismatch {
            reason: "metric does not cover the window".to_string(),
        });
    }
    let diff = difference(mu, nu)?;
    for e in diff.support() {
        if !window.contains(e) {
            return Err(Error::WindowMismatch {
                reason: format!(
                    "support element {} outside the window",
                    mu.handle.display_element(e)
                ),
            });
        }
    }
    let elements = window.elements();
    let n = elements.len();
    if n == 0 {
        return Ok(rat_int(0));
    }

    // Substitute u = f + 1, so u ranges over [0, 2] and the slack basis
    // is feasible. The Lipschitz ball is symmetric, so the maximum of
    // the pairing equals the maximum of its absolute value.
    let coeffs: Vec<Rat> = elements.iter().map(|e| diff.coefficient(e)).collect();
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::with_capacity(n + n * (n - 1));
    for i in 0..n {
        let mut row = vec![rat_int(0); n];
        row[i] = rat_int(1);
        rows.push((row, rat_int(2)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut row = vec![rat_int(0); n];
                row[i] = rat_int(1);
                row[j] = rat_int(-1);
                rows.push((row, d.distance(&elements[i], &elements[j])?));
            }
        }
    }
    let (value, _) = lp::maximize(&coeffs, &rows)
        .expect("objective bounded: every variable is capped at 2");
    let shift = coeffs.iter().fold(rat_int(0), |acc, c| acc + c);
    Ok(value - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::uniform::MetricTable;

    fn z2() -> Semigroup {
        Semigroup::cayley(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn nat_measure(s: &Semigroup, terms: &[(u64, i64)]) -> MolecularMeasure {
        MolecularMeasure::from_terms(
            s,
            terms.iter().map(|&(n, c)| (s.nat(n).unwrap(), rat_int(c))),
        )
        .unwrap()
    }

    #[test]
    fn dirac_has_unit_norm_and_evaluates_to_f() {
        let s = Semigroup::nat_plus();
        let x = s.nat(0).unwrap();
        let mu = MolecularMeasure::dirac(&s, &x).unwrap();
        assert_eq!(mu.norm(), rat_int(1));
        let w = s.enumerate(3).unwrap();
        let f = WindowFunction::indicator(w, &[x.clone()]).unwrap();
        assert_eq!(mu.evaluate(&f).unwrap(), rat_int(1));
        assert_eq!(mu.evaluate(&f).unwrap(), f.value(&x));
    }

    #[test]
    fn linear_combine_cancels_to_zero() {
        let s = Semigroup::free(&['a', 'b']).unwrap();
        let mu = MolecularMeasure::dirac(&s, &s.word("a").unwrap()).unwrap();
        let neg = mu.scale(&rat_int(-1));
        let sum = linear_combine(&rat_int(1), &mu, &rat_int(1), &neg).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn linear_combine_merges_terms() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 1)]);
        let nu = nat_measure(&s, &[(1, 1)]);
        let out = linear_combine(&rat_int(2), &mu, &rat_int(3), &nu).unwrap();
        assert_eq!(out, nat_measure(&s, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn combining_with_zero_scalar_is_identity() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 5)]);
        let nu = nat_measure(&s, &[(2, -1), (3, 4)]);
        let out = linear_combine(&rat_int(0), &mu, &rat_int(1), &nu).unwrap();
        assert_eq!(out, nu);
    }

    #[test]
    fn evaluate_is_the_weighted_sum() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 2), (1, -3)]);
        let w = s.enumerate(2).unwrap();
        let f = WindowFunction::constant(w.clone(), rat_int(1));
        assert_eq!(mu.evaluate(&f).unwrap(), rat_int(-1));
        let zero = WindowFunction::constant(w, rat_int(0));
        assert_eq!(mu.evaluate(&zero).unwrap(), rat_int(0));
    }

    #[test]
    fn convolving_point_masses_multiplies_points() {
        let s = Semigroup::free(&['a', 'b']).unwrap();
        let da = MolecularMeasure::dirac(&s, &s.word("a").unwrap()).unwrap();
        let db = MolecularMeasure::dirac(&s, &s.word("b").unwrap()).unwrap();
        let dab = MolecularMeasure::dirac(&s, &s.word("ab").unwrap()).unwrap();
        assert_eq!(da.convolve(&db).unwrap(), dab);
    }

    #[test]
    fn convolution_expands_bilinearly_over_naturals() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 1), (1, 2)]);
        let nu = nat_measure(&s, &[(1, 3)]);
        assert_eq!(mu.convolve(&nu).unwrap(), nat_measure(&s, &[(1, 3), (2, 6)]));
    }

    #[test]
    fn total_collision_cancels_everything() {
        let s = z2();
        let d0 = MolecularMeasure::dirac(&s, &s.index(0).unwrap()).unwrap();
        let d1 = MolecularMeasure::dirac(&s, &s.index(1).unwrap()).unwrap();
        let mu = difference(&d0, &d1).unwrap();
        let nu = linear_combine(&rat_int(1), &d0, &rat_int(1), &d1).unwrap();
        let out = mu.convolve(&nu).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.norm(), rat_int(0));
        // Strict submultiplicativity: 0 < 2 * 2.
        assert!(out.norm() < mu.norm() * nu.norm());
    }

    #[test]
    fn norm_is_the_absolute_coefficient_sum() {
        let s = Semigroup::nat_plus();
        assert_eq!(nat_measure(&s, &[(0, 2), (1, -3)]).norm(), rat_int(5));
        assert_eq!(MolecularMeasure::zero(&s).norm(), rat_int(0));
    }

    #[test]
    fn positivity_is_coefficientwise() {
        let s = Semigroup::nat_plus();
        assert!(nat_measure(&s, &[(0, 1)]).is_positive());
        assert!(!nat_measure(&s, &[(0, 1), (1, -1)]).is_positive());
        let mu = nat_measure(&s, &[(0, 1), (2, 2)]);
        let nu = nat_measure(&s, &[(1, 3)]);
        assert!(mu.convolve(&nu).unwrap().is_positive());
    }

    #[test]
    fn translation_action_convolves_point_masses() {
        let s = Semigroup::nat_plus();
        let action = SelfAction(s.clone());
        let d2 = MolecularMeasure::dirac(&s, &s.nat(2).unwrap()).unwrap();
        let d3 = MolecularMeasure::dirac(&s, &s.nat(3).unwrap()).unwrap();
        let d5 = MolecularMeasure::dirac(&s, &s.nat(5).unwrap()).unwrap();
        assert_eq!(action_convolve(&d2, &d3, &action).unwrap(), d5);
        // The additive identity acts as the identity.
        let d0 = MolecularMeasure::dirac(&s, &s.nat(0).unwrap()).unwrap();
        let nu = nat_measure(&s, &[(1, 2), (4, -1)]);
        assert_eq!(action_convolve(&d0, &nu, &action).unwrap(), nu);
    }

    #[test]
    fn self_action_specializes_to_convolution() {
        let s = Semigroup::free(&['a', 'b']).unwrap();
        let action = SelfAction(s.clone());
        let mu = MolecularMeasure::from_terms(
            &s,
            [
                (s.word("a").unwrap(), rat_int(2)),
                (s.word("ab").unwrap(), rat(1, 2)),
            ],
        )
        .unwrap();
        let nu = MolecularMeasure::from_terms(
            &s,
            [
                (s.word("b").unwrap(), rat_int(-1)),
                (s.word("ba").unwrap(), rat_int(3)),
            ],
        )
        .unwrap();
        assert_eq!(
            action_convolve(&mu, &nu, &action).unwrap(),
            mu.convolve(&nu).unwrap()
        );
    }

    #[test]
    fn action_law_violation_is_caught() {
        // m(s, y) = s + 2y is not an action: m(s, m(s', y)) = s + 2s' + 4y
        // but m(s*s', y) = s + s' + 2y.
        let s = Semigroup::nat_plus();
        let action = FnAction {
            acting: s.clone(),
            carrier: s.clone(),
            map: |x: &Element, y: &Element| {
                let s = Semigroup::nat_plus();
                let yy = s.product(y, y)?;
                s.product(x, &yy)
            },
        };
        let mu = nat_measure(&s, &[(1, 1), (2, 1)]);
        let nu = nat_measure(&s, &[(3, 1)]);
        assert!(matches!(
            action_convolve(&mu, &nu, &action),
            Err(Error::ActionLawViolation { .. })
        ));
    }

    #[test]
    fn ueb_distance_of_equal_measures_is_zero() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 1), (1, -2)]);
        let w = s.enumerate(3).unwrap();
        assert_eq!(
            ueb_distance(&mu, &mu, &Pseudometric::Discrete, &w).unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn ueb_distance_between_point_masses_discrete() {
        // Optimal f has f(x) - f(y) = 1, capped by the discrete distance.
        let s = Semigroup::nat_plus();
        let mu = MolecularMeasure::dirac(&s, &s.nat(0).unwrap()).unwrap();
        let nu = MolecularMeasure::dirac(&s, &s.nat(1).unwrap()).unwrap();
        let w = s.enumerate(2).unwrap();
        assert_eq!(
            ueb_distance(&mu, &nu, &Pseudometric::Discrete, &w).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn ueb_distance_is_range_capped() {
        // d(x, y) = 3 exceeds the range bound: f(x) - f(y) <= 1 - (-1).
        let s = z2();
        let w = s.enumerate(2).unwrap();
        let three = rat_int(3);
        let matrix = vec![
            vec![rat_int(0), three.clone()],
            vec![three, rat_int(0)],
        ];
        let d = Pseudometric::Table(MetricTable::new(w.clone(), matrix).unwrap());
        let mu = MolecularMeasure::dirac(&s, &s.index(0).unwrap()).unwrap();
        let nu = MolecularMeasure::dirac(&s, &s.index(1).unwrap()).unwrap();
        assert_eq!(ueb_distance(&mu, &nu, &d, &w).unwrap(), rat_int(2));
    }

    #[test]
    fn ueb_distance_three_point_hand_value() {
        // mu - nu = dx + dy - 2dz under the discrete metric: the optimum
        // lifts x and y one unit above z, reaching 2.
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 1), (1, 1)]);
        let nu = nat_measure(&s, &[(2, 2)]);
        let w = s.enumerate(3).unwrap();
        let dist = ueb_distance(&mu, &nu, &Pseudometric::Discrete, &w).unwrap();
        assert_eq!(dist, rat_int(2));
        // And the distance respects the total-variation bound.
        assert!(dist <= difference(&mu, &nu).unwrap().norm());
    }

    #[test]
    fn ueb_distance_ignores_window_padding() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(0, 1), (1, 1)]);
        let nu = nat_measure(&s, &[(2, 2)]);
        let narrow = s.enumerate(3).unwrap();
        let wide = s.enumerate(7).unwrap();
        assert_eq!(
            ueb_distance(&mu, &nu, &Pseudometric::Discrete, &narrow).unwrap(),
            ueb_distance(&mu, &nu, &Pseudometric::Discrete, &wide).unwrap()
        );
    }

    #[test]
    fn ueb_distance_requires_support_coverage() {
        let s = Semigroup::nat_plus();
        let mu = nat_measure(&s, &[(5, 1)]);
        let nu = MolecularMeasure::zero(&s);
        let w = s.enumerate(3).unwrap();
        assert!(matches!(
            ueb_distance(&mu, &nu, &Pseudometric::Discrete, &w),
            Err(Error::WindowMismatch { .. })
        ));
    }

    #[test]
    fn from_terms_coalesces_and_drops_zeros() {
        let s = Semigroup::nat_plus();
        let mu = MolecularMeasure::from_terms(
            &s,
            [
                (s.nat(1).unwrap(), rat(1, 2)),
                (s.nat(1).unwrap(), rat(1, 2)),
                (s.nat(2).unwrap(), rat_int(0)),
            ],
        )
        .unwrap();
        assert_eq!(mu, nat_measure(&s, &[(1, 1)]));
        assert_eq!(mu.support_size(), 1);
    }
}
