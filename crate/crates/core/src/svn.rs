//! Single-valued neutrosophic numbers and their algebra.
//!
//! An [`SvnNumber`] is a triple `(a, b, c)` of truth, indeterminacy and
//! falsity degrees, each in `[0, 1]`. The three degrees are independent, so
//! unlike intuitionistic fuzzy values there is no `a + c <= 1` constraint.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Component, SvnError};

/// Slack allowed for floating error before a component is treated as invalid.
const FLOAT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct SvnNumber {
    a: f64,
    b: f64,
    c: f64,
}

impl SvnNumber {
    /// `(1, 0, 0)`: identity of `*`, absorbing for `+`.
    pub const FULL: SvnNumber = SvnNumber::from_parts(1.0, 0.0, 0.0);
    /// `(0, 1, 1)`: identity of `+`, absorbing for `*`.
    pub const EMPTY: SvnNumber = SvnNumber::from_parts(0.0, 1.0, 1.0);

    /// Builds a number, rejecting any component outside `[0, 1]` (or NaN).
    pub fn new(truth: f64, indeterminacy: f64, falsity: f64) -> Result<Self, SvnError> {
        check(Component::Truth, truth)?;
        check(Component::Indeterminacy, indeterminacy)?;
        check(Component::Falsity, falsity)?;
        Ok(Self::from_parts(truth, indeterminacy, falsity))
    }

    pub(crate) const fn from_parts(a: f64, b: f64, c: f64) -> Self {
        SvnNumber { a, b, c }
    }

    /// Clamps operation results back into range. Only ever absorbs rounding.
    fn settled(a: f64, b: f64, c: f64) -> Self {
        debug_assert!(
            [a, b, c]
                .iter()
                .all(|x| *x >= -FLOAT_SLACK && *x <= 1.0 + FLOAT_SLACK),
            "operation left the unit cube: ({a}, {b}, {c})"
        );
        SvnNumber {
            a: a.clamp(0.0, 1.0),
            b: b.clamp(0.0, 1.0),
            c: c.clamp(0.0, 1.0),
        }
    }

    pub fn truth(&self) -> f64 {
        self.a
    }

    pub fn indeterminacy(&self) -> f64 {
        self.b
    }

    pub fn falsity(&self) -> f64 {
        self.c
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// `lambda * A = (1 - (1 - a)^lambda, b^lambda, c^lambda)` for `lambda > 0`.
    pub fn scale(self, lambda: f64) -> Result<Self, SvnError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(SvnError::NonPositiveScalar(lambda));
        }
        Ok(Self::settled(
            1.0 - (1.0 - self.a).powf(lambda),
            self.b.powf(lambda),
            self.c.powf(lambda),
        ))
    }

    /// Score `(1 + a - 2b - c) / 2`, in `[-1, 1]`.
    pub fn score(&self) -> f64 {
        (1.0 + (self.a - 2.0 * self.b - self.c)) / 2.0
    }

    /// Componentwise comparison with an explicit tolerance.
    pub fn approx_eq(&self, other: &SvnNumber, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
    }

    /// Sum of squared componentwise differences.
    pub fn squared_distance(&self, other: &SvnNumber) -> f64 {
        let da = self.a - other.a;
        let db = self.b - other.b;
        let dc = self.c - other.c;
        da * da + db * db + dc * dc
    }
}

fn check(component: Component, value: f64) -> Result<(), SvnError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(SvnError::OutOfRange { component, value })
    }
}

impl TryFrom<[f64; 3]> for SvnNumber {
    type Error = SvnError;

    fn try_from([a, b, c]: [f64; 3]) -> Result<Self, Self::Error> {
        SvnNumber::new(a, b, c)
    }
}

impl From<SvnNumber> for [f64; 3] {
    fn from(x: SvnNumber) -> Self {
        x.components()
    }
}

impl fmt::Display for SvnNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.p$},{:.p$},{:.p$})", self.a, self.b, self.c),
            None => write!(f, "({},{},{})", self.a, self.b, self.c),
        }
    }
}

/// `A1 + A2 = (a1 + a2 - a1 a2, b1 b2, c1 c2)`.
impl Add for SvnNumber {
    type Output = SvnNumber;

    fn add(self, rhs: SvnNumber) -> SvnNumber {
        SvnNumber::settled(
            self.a + rhs.a - self.a * rhs.a,
            self.b * rhs.b,
            self.c * rhs.c,
        )
    }
}

/// `A1 * A2 = (a1 a2, b1 + b2 - b1 b2, c1 + c2 - c1 c2)`.
impl Mul for SvnNumber {
    type Output = SvnNumber;

    fn mul(self, rhs: SvnNumber) -> SvnNumber {
        SvnNumber::settled(
            self.a * rhs.a,
            self.b + rhs.b - self.b * rhs.b,
            self.c + rhs.c - self.c * rhs.c,
        )
    }
}

/// A value paired with its aggregation weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSvn {
    pub value: SvnNumber,
    pub weight: f64,
}

impl WeightedSvn {
    pub fn new(value: SvnNumber, weight: f64) -> Self {
        WeightedSvn { value, weight }
    }
}

/// Weighted average `(1 - prod (1 - a_j)^w_j, prod b_j^w_j, prod c_j^w_j)`.
///
/// Weights need not sum to one. A zero weight contributes a unit factor,
/// including for zero bases (`0^0 = 1`).
pub fn svnwa(items: &[WeightedSvn]) -> Result<SvnNumber, SvnError> {
    if items.is_empty() {
        return Err(SvnError::EmptyAggregation);
    }
    for (index, item) in items.iter().enumerate() {
        if !(item.weight >= 0.0 && item.weight.is_finite()) {
            return Err(SvnError::InvalidWeight {
                index,
                weight: item.weight,
            });
        }
    }
    if items.iter().all(|item| item.weight == 0.0) {
        return Err(SvnError::ZeroWeights);
    }

    let (mut not_truth, mut indeterminacy, mut falsity) = (1.0, 1.0, 1.0);
    for WeightedSvn { value, weight } in items {
        not_truth *= (1.0 - value.a).powf(*weight);
        indeterminacy *= value.b.powf(*weight);
        falsity *= value.c.powf(*weight);
    }
    Ok(SvnNumber::settled(1.0 - not_truth, indeterminacy, falsity))
}

/// Convenience form of [`svnwa`] over parallel value and weight slices.
pub fn weighted_average(values: &[SvnNumber], weights: &[f64]) -> Result<SvnNumber, SvnError> {
    if values.len() != weights.len() {
        return Err(SvnError::LengthMismatch {
            left: values.len(),
            right: weights.len(),
        });
    }
    let items: Vec<WeightedSvn> = values
        .iter()
        .zip(weights)
        .map(|(v, w)| WeightedSvn::new(*v, *w))
        .collect();
    svnwa(&items)
}

/// How separation between two SVN vectors is measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    /// `sqrt(1/3 * sum_j |u_j - v_j|^2)`, no division by the vector length.
    #[default]
    Euclidean,
    /// Same, divided by `3n` instead of `3`.
    Normalized,
}

/// Euclidean separation between two equal-length SVN vectors.
pub fn separation(u: &[SvnNumber], v: &[SvnNumber]) -> Result<f64, SvnError> {
    separation_with(u, v, Distance::Euclidean)
}

pub fn separation_with(u: &[SvnNumber], v: &[SvnNumber], mode: Distance) -> Result<f64, SvnError> {
    if u.len() != v.len() {
        return Err(SvnError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.is_empty() {
        return Err(SvnError::EmptyVector);
    }
    let total: f64 = u.iter().zip(v).map(|(x, y)| x.squared_distance(y)).sum();
    let denom = match mode {
        Distance::Euclidean => 3.0,
        Distance::Normalized => 3.0 * u.len() as f64,
    };
    Ok((total / denom).sqrt())
}
