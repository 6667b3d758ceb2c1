//! Summation identities `Σₖ F(n, k) = rhs(n)` and their normalization.
//!
//! The engine proves identities in the normalized form `Σₖ f̂(n, k) = 1`
//! with `f̂ = F / rhs`; because both sides are structured terms, the
//! division happens atom-by-atom and stays exact.

use std::collections::BTreeMap;

use crate::{HyperError, HyperTerm, LinForm};

/// How a summation variable ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumRange {
    /// Over the term's natural support (all integers; the term's own zeros
    /// truncate the sum).
    NaturalSupport,
    /// Over an explicit inclusive window `[lo, hi]`.
    Explicit(LinForm, LinForm),
}

/// A claimed identity `Σ F = rhs`, summed over one or more variables, with
/// one distinguished recurrence variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    summand: HyperTerm,
    rhs: HyperTerm,
    n_var: String,
    sum_vars: Vec<String>,
    ranges: BTreeMap<String, SumRange>,
}

impl Identity {
    /// Build and validate.  The right-hand side must be free of every
    /// summation variable, and the recurrence variable must not itself be
    /// summed over.  Missing range entries default to natural support.
    pub fn new(
        summand: HyperTerm,
        rhs: HyperTerm,
        n_var: &str,
        sum_vars: Vec<String>,
        mut ranges: BTreeMap<String, SumRange>,
    ) -> Result<Self, HyperError> {
        if sum_vars.is_empty() {
            return Err(HyperError::InvalidAtom(
                "an identity needs at least one summation variable".into(),
            ));
        }
        if sum_vars.iter().any(|v| v == n_var) {
            return Err(HyperError::InvalidAtom(format!(
                "recurrence variable `{n_var}` cannot also be summed over"
            )));
        }
        for v in &sum_vars {
            if rhs.contains_var(v) {
                return Err(HyperError::RhsContainsSummationVariable(v.clone()));
            }
            ranges.entry(v.clone()).or_insert(SumRange::NaturalSupport);
        }
        ranges.retain(|v, _| sum_vars.contains(v));
        Ok(Self {
            summand,
            rhs,
            n_var: n_var.to_string(),
            sum_vars,
            ranges,
        })
    }

    /// The common single-sum case `Σₖ F(n, k) = rhs(n)`.
    pub fn single(
        summand: HyperTerm,
        rhs: HyperTerm,
        n_var: &str,
        k_var: &str,
    ) -> Result<Self, HyperError> {
        Self::new(
            summand,
            rhs,
            n_var,
            vec![k_var.to_string()],
            BTreeMap::new(),
        )
    }

    /// The raw summand `F`.
    pub fn summand(&self) -> &HyperTerm {
        &self.summand
    }

    /// The claimed closed form.
    pub fn rhs(&self) -> &HyperTerm {
        &self.rhs
    }

    /// The recurrence variable.
    pub fn n_var(&self) -> &str {
        &self.n_var
    }

    /// The summation variables, in declaration order.
    pub fn sum_vars(&self) -> &[String] {
        &self.sum_vars
    }

    /// The range for one summation variable.
    pub fn range(&self, var: &str) -> &SumRange {
        self.ranges
            .get(var)
            .unwrap_or(&SumRange::NaturalSupport)
    }

    /// `f̂ = F / rhs`, the summand of the normalized claim `Σ f̂ = 1`.
    pub fn normalized(&self) -> HyperTerm {
        self.summand.div_term(&self.rhs)
    }
}
