//! Linguistic scales: rating words bound to fixed SVN numbers.

use std::collections::HashMap;
use std::fmt;

use crate::error::{LookupError, ScaleError};
use crate::svn::SvnNumber;

/// One spelling of a term: a descriptive label and its abbreviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermName {
    pub label: String,
    pub abbrev: String,
}

impl TermName {
    pub fn new(label: impl Into<String>, abbrev: impl Into<String>) -> Self {
        TermName {
            label: label.into(),
            abbrev: abbrev.into(),
        }
    }
}

/// A scale entry. The first name is canonical; further names are synonyms
/// resolving to the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub names: Vec<TermName>,
    pub value: SvnNumber,
}

impl Term {
    pub fn new(names: Vec<TermName>, value: SvnNumber) -> Self {
        Term { names, value }
    }

    pub fn canonical(&self) -> &TermName {
        &self.names[0]
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            write!(f, "{} ({})", name.label, name.abbrev)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticScale {
    name: String,
    terms: Vec<Term>,
    index: HashMap<String, usize>,
}

impl LinguisticScale {
    /// Validates labels (unique, case-insensitive) and values.
    pub fn new(name: impl Into<String>, terms: Vec<Term>) -> Result<Self, ScaleError> {
        let name = name.into();
        if terms.is_empty() {
            return Err(ScaleError::Empty { scale: name });
        }
        let mut index = HashMap::new();
        for (pos, term) in terms.iter().enumerate() {
            if term.names.is_empty() {
                return Err(ScaleError::MissingLabel {
                    scale: name,
                    term: pos,
                });
            }
            if let Err(source) = SvnNumber::try_from(term.value.components()) {
                return Err(ScaleError::InvalidValue {
                    scale: name,
                    label: term.canonical().label.clone(),
                    source,
                });
            }
            for spelling in term
                .names
                .iter()
                .flat_map(|n| [n.label.as_str(), n.abbrev.as_str()])
            {
                let key = normalize(spelling);
                if key.is_empty() {
                    return Err(ScaleError::MissingLabel {
                        scale: name,
                        term: pos,
                    });
                }
                if index.insert(key, pos).is_some() {
                    return Err(ScaleError::DuplicateLabel {
                        scale: name,
                        label: spelling.to_string(),
                        term: pos,
                    });
                }
            }
        }
        Ok(LinguisticScale { name, terms, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Case-insensitive lookup by any label or abbreviation.
    pub fn term(&self, label: &str) -> Option<&Term> {
        self.index.get(&normalize(label)).map(|&i| &self.terms[i])
    }

    pub fn resolve(&self, label: &str) -> Result<SvnNumber, LookupError> {
        self.term(label)
            .map(|t| t.value)
            .ok_or_else(|| LookupError {
                scale: self.name.clone(),
                label: label.to_string(),
            })
    }
}

fn normalize(label: &str) -> String {
    label.trim().to_lowercase()
}

/// Resolves `label` in `scale`.
pub fn resolve_term(scale: &LinguisticScale, label: &str) -> Result<SvnNumber, LookupError> {
    scale.resolve(label)
}

type BuiltinRow<'a> = (&'a [(&'a str, &'a str)], [f64; 3]);

fn builtin(name: &str, rows: &[BuiltinRow]) -> LinguisticScale {
    let terms = rows
        .iter()
        .map(|(names, [a, b, c])| {
            Term::new(
                names.iter().map(|(l, s)| TermName::new(*l, *s)).collect(),
                SvnNumber::from_parts(*a, *b, *c),
            )
        })
        .collect();
    LinguisticScale::new(name, terms).expect("built-in scale is valid")
}

/// Five-term importance scale for decision makers and criteria.
pub fn builtin_weight_scale() -> LinguisticScale {
    builtin(
        "importance",
        &[
            (&[("Very important", "VI")], [0.90, 0.10, 0.10]),
            (&[("Important", "I")], [0.75, 0.25, 0.20]),
            (&[("Medium", "M")], [0.50, 0.50, 0.50]),
            (&[("Unimportant", "UI")], [0.35, 0.75, 0.80]),
            (&[("Very unimportant", "VUI")], [0.10, 0.90, 0.90]),
        ],
    )
}

/// Eleven-term rating scale; every term has a good/bad and a high/low spelling.
pub fn builtin_rating_scale() -> LinguisticScale {
    builtin(
        "rating",
        &[
            (
                &[("Extremely good", "EG"), ("Extremely high", "EH")],
                [1.00, 0.00, 0.00],
            ),
            (
                &[("Very very good", "VVG"), ("Very very high", "VVH")],
                [0.90, 0.10, 0.10],
            ),
            (
                &[("Very good", "VG"), ("Very high", "VH")],
                [0.80, 0.15, 0.20],
            ),
            (&[("Good", "G"), ("High", "H")], [0.70, 0.25, 0.30]),
            (
                &[("Medium good", "MG"), ("Medium high", "MH")],
                [0.60, 0.35, 0.40],
            ),
            (&[("Medium", "M"), ("Fair", "F")], [0.50, 0.50, 0.50]),
            (
                &[("Medium bad", "MB"), ("Medium low", "ML")],
                [0.40, 0.65, 0.60],
            ),
            (&[("Bad", "B"), ("Low", "L")], [0.30, 0.75, 0.70]),
            (
                &[("Very bad", "VB"), ("Very low", "VL")],
                [0.20, 0.85, 0.80],
            ),
            (
                &[("Very very bad", "VVB"), ("Very very low", "VVL")],
                [0.10, 0.90, 0.90],
            ),
            (
                &[("Extremely bad", "EB"), ("Extremely low", "EL")],
                [0.00, 1.00, 1.00],
            ),
        ],
    )
}
