//! Seeded law suites for the measure algebra.
//!
//! Each suite runs a number of sampled cases of one algebraic identity
//! and reports how many failed, with the first counterexample rendered
//! for the report. The suites back both the `props test` command and
//! the acceptance run.

use crate::error::Result;
use crate::measure::{linear_combine, MolecularMeasure};
use crate::orbit::{phi_map, right_translate};
use crate::rat::{format_rat, rat_int};
use crate::sampling::Sampler;
use crate::semigroup::Window;

/// Outcome of one law suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

fn render(s: &crate::semigroup::Semigroup, mu: &MolecularMeasure) -> String {
    let terms: Vec<String> = mu
        .terms()
        .iter()
        .map(|(e, c)| format!("{}:{}", s.display_element(e), format_rat(c)))
        .collect();
    format!("{{{}}}", terms.join(", "))
}

/// `(mu * mu') * nu = mu * (mu' * nu)` on sampled triples.
pub fn convolution_associativity(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("convolution-associativity");
    for _ in 0..cases {
        let mu = sampler.measure(pool, 5, 3);
        let mu2 = sampler.measure(pool, 5, 3);
        let nu = sampler.measure(pool, 5, 3);
        let left = mu.convolve(&mu2)?.convolve(&nu)?;
        let right = mu.convolve(&mu2.convolve(&nu)?)?;
        outcome.record(left == right, || {
            format!(
                "mu={} mu'={} nu={}",
                render(s, &mu),
                render(s, &mu2),
                render(s, &nu)
            )
        });
    }
    Ok(outcome)
}

/// Scalar moves through either factor and convolution distributes over
/// addition on both sides.
pub fn convolution_bilinearity(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("convolution-bilinearity");
    for _ in 0..cases {
        let r = sampler.rational(3);
        let mu = sampler.measure(pool, 4, 3);
        let mu2 = sampler.measure(pool, 4, 3);
        let nu = sampler.measure(pool, 4, 3);
        let nu2 = sampler.measure(pool, 4, 3);

        let scaled = mu.scale(&r).convolve(&nu)? == mu.convolve(&nu)?.scale(&r)
            && mu.convolve(&nu.scale(&r))? == mu.convolve(&nu)?.scale(&r);
        let sum_mu = linear_combine(&rat_int(1), &mu, &rat_int(1), &mu2)?;
        let left_distributes = sum_mu.convolve(&nu)?
            == linear_combine(&rat_int(1), &mu.convolve(&nu)?, &rat_int(1), &mu2.convolve(&nu)?)?;
        let sum_nu = linear_combine(&rat_int(1), &nu, &rat_int(1), &nu2)?;
        let right_distributes = mu.convolve(&sum_nu)?
            == linear_combine(&rat_int(1), &mu.convolve(&nu)?, &rat_int(1), &mu.convolve(&nu2)?)?;

        outcome.record(scaled && left_distributes && right_distributes, || {
            format!(
                "r={} mu={} mu'={} nu={} nu'={}",
                format_rat(&r),
                render(s, &mu),
                render(s, &mu2),
                render(s, &nu),
                render(s, &nu2)
            )
        });
    }
    Ok(outcome)
}

/// `|mu * nu| <= |mu| . |nu|` in total variation, exactly.
pub fn norm_submultiplicativity(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("norm-submultiplicative");
    for _ in 0..cases {
        let mu = sampler.measure(pool, 5, 3);
        let nu = sampler.measure(pool, 5, 3);
        let ok = mu.convolve(&nu)?.norm() <= mu.norm() * nu.norm();
        outcome.record(ok, || format!("mu={} nu={}", render(s, &mu), render(s, &nu)));
    }
    Ok(outcome)
}

/// Convolution of non-negative measures stays non-negative (and stays
/// finitely supported by construction).
pub fn positivity_closure(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("positivity-closure");
    for _ in 0..cases {
        let mu = sampler.positive_measure(pool, 5, 3);
        let nu = sampler.positive_measure(pool, 5, 3);
        let out = mu.convolve(&nu)?;
        outcome.record(out.is_positive(), || {
            format!("mu={} nu={}", render(s, &mu), render(s, &nu))
        });
    }
    Ok(outcome)
}

/// `mu * nu = nu * mu` over a commutative carrier.
pub fn convolution_commutativity(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("convolution-commutativity");
    for _ in 0..cases {
        let mu = sampler.measure(pool, 5, 3);
        let nu = sampler.measure(pool, 5, 3);
        outcome.record(mu.convolve(&nu)? == nu.convolve(&mu)?, || {
            format!("mu={} nu={}", render(s, &mu), render(s, &nu))
        });
    }
    Ok(outcome)
}

/// Pairing consistency: evaluating a convolution against a function
/// agrees with the independent double-sum expansion over both supports.
pub fn pairing_consistency(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("pairing-consistency");
    for _ in 0..cases {
        let mu = sampler.measure(pool, 4, 3);
        let nu = sampler.measure(pool, 4, 3);
        let f = sampler.window_function(pool, 2);
        let via_convolution = mu.convolve(&nu)?.evaluate(&f)?;
        let mut expanded = rat_int(0);
        for (x, a) in mu.terms() {
            for (y, b) in nu.terms() {
                expanded = expanded + a * b * f.value(&s.product(x, y)?);
            }
        }
        outcome.record(via_convolution == expanded, || {
            format!("mu={} nu={}", render(s, &mu), render(s, &nu))
        });
    }
    Ok(outcome)
}

/// The measure-to-function map sends point masses to right translates,
/// and evaluating a point-mass convolution agrees with evaluating the
/// partially applied product.
pub fn translation_consistency(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<SuiteOutcome> {
    let s = pool.semigroup();
    let mut outcome = SuiteOutcome::new("translation-consistency");
    for _ in 0..cases {
        let x = sampler.element(pool);
        let f = sampler.window_function(pool, 2);
        let nu = sampler.measure(pool, 4, 3);

        let dirac = MolecularMeasure::dirac(s, &x)?;
        let via_phi = phi_map(&f, &dirac, pool)?;
        let via_translate = right_translate(&f, &x, pool)?;
        let phi_matches = via_phi == via_translate;

        // evaluate(dirac_x * nu, f) against the direct sum of
        // c_j * f(x * y_j).
        let bridge_left = dirac.convolve(&nu)?.evaluate(&f)?;
        let mut bridge_right = rat_int(0);
        for (y, c) in nu.terms() {
            bridge_right = bridge_right + c * f.value(&s.product(&x, y)?);
        }

        outcome.record(phi_matches && bridge_left == bridge_right, || {
            format!("x={} nu={}", s.display_element(&x), render(s, &nu))
        });
    }
    Ok(outcome)
}

/// The standard batch of suites for one carrier: every law that holds
/// unconditionally, plus commutativity when the carrier commutes.
pub fn standard_suites(
    pool: &Window,
    sampler: &mut Sampler,
    cases: usize,
) -> Result<Vec<SuiteOutcome>> {
    let mut outcomes = vec![
        convolution_associativity(pool, sampler, cases)?,
        convolution_bilinearity(pool, sampler, cases)?,
        norm_submultiplicativity(pool, sampler, cases)?,
        positivity_closure(pool, sampler, cases)?,
        pairing_consistency(pool, sampler, cases)?,
        translation_consistency(pool, sampler, cases)?,
    ];
    if pool.semigroup().is_commutative() {
        outcomes.push(convolution_commutativity(pool, sampler, cases)?);
    }
    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::DEFAULT_SEED;
    use crate::semigroup::Semigroup;

    #[test]
    fn standard_suites_pass_on_the_naturals() {
        let s = Semigroup::nat_plus();
        let pool = s.enumerate(20).unwrap();
        let mut sampler = Sampler::new(DEFAULT_SEED);
        for outcome in standard_suites(&pool, &mut sampler, 50).unwrap() {
            assert!(
                outcome.passed(),
                "{}: {:?}",
                outcome.name,
                outcome.first_failure
            );
        }
    }

    #[test]
    fn standard_suites_pass_on_free_words() {
        let s = Semigroup::free(&['a', 'b']).unwrap();
        let pool = s.enumerate(14).unwrap();
        let mut sampler = Sampler::new(DEFAULT_SEED);
        let outcomes = standard_suites(&pool, &mut sampler, 50).unwrap();
        // Free on two generators is not commutative: no such suite runs.
        assert!(outcomes.iter().all(|o| o.name != "convolution-commutativity"));
        for outcome in outcomes {
            assert!(
                outcome.passed(),
                "{}: {:?}",
                outcome.name,
                outcome.first_failure
            );
        }
    }

    #[test]
    fn commutativity_suite_detects_noncommutative_carriers() {
        let s = Semigroup::free(&['a', 'b']).unwrap();
        let pool = s.enumerate(10).unwrap();
        let mut sampler = Sampler::new(DEFAULT_SEED);
        let outcome = convolution_commutativity(&pool, &mut sampler, 50).unwrap();
        assert!(!outcome.passed());
        assert!(outcome.first_failure.is_some());
    }
}
