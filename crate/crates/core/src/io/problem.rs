//! Problem files.
//!
//! A problem file is TOML with these sections (all names are case-sensitive):
//!
//! ```toml
//! schema = "svn-topsis-problem/1"      # optional
//!
//! [options]                            # optional
//! dm_weights = [0.2864, 0.2741, 0.2170, 0.1673]
//! normalized_distance = false
//! precision = 4
//!
//! [scales.rating]                      # optional, same for scales.weight
//! name = "my-rating"
//! [[scales.rating.terms]]
//! label = "Very good"
//! abbrev = "VG"
//! synonyms = [{ label = "Very high", abbrev = "VH" }]
//! value = [0.8, 0.15, 0.2]
//!
//! [[decision_makers]]
//! name = "DM1"
//! importance = "VI"
//!
//! [[criteria]]
//! name = "Delivery"
//! kind = "benefit"                     # or "cost"
//! importance = ["VI", "VI", "VI", "I"] # one term per decision maker
//!
//! [[alternatives]]
//! name = "rho1"
//! ratings = [                          # one row per criterion,
//!   ["VG", "MG", "VG", "G"],           # one column per decision maker
//! ]
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{ParseError, ScaleError};
use crate::linguistic::{
    builtin_rating_scale, builtin_weight_scale, LinguisticScale, Term, TermName,
};
use crate::svn::SvnNumber;
use crate::topsis::{Alternative, Criterion, CriterionKind, DecisionMaker, DecisionProblem};

pub const PROBLEM_SCHEMA: &str = "svn-topsis-problem/1";

/// Largest accepted `precision` option.
pub const MAX_PRECISION: usize = 12;

/// Run settings stored alongside the problem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub normalized_distance: bool,
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub problem: DecisionProblem,
    pub options: FileOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: Option<Spanned<String>>,
    #[serde(default)]
    options: RawOptions,
    #[serde(default)]
    scales: RawScales,
    decision_makers: Spanned<Vec<RawDecisionMaker>>,
    criteria: Spanned<Vec<RawCriterion>>,
    alternatives: Spanned<Vec<RawAlternative>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    dm_weights: Option<Spanned<Vec<f64>>>,
    normalized_distance: Option<bool>,
    precision: Option<Spanned<i64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawScales {
    weight: Option<Spanned<RawScale>>,
    rating: Option<Spanned<RawScale>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScale {
    name: String,
    terms: Vec<Spanned<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    label: String,
    abbrev: String,
    #[serde(default)]
    synonyms: Vec<RawName>,
    value: Spanned<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawName {
    label: String,
    abbrev: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDecisionMaker {
    name: Spanned<String>,
    importance: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCriterion {
    name: Spanned<String>,
    kind: Spanned<String>,
    importance: Spanned<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlternative {
    name: Spanned<String>,
    ratings: Spanned<Vec<Spanned<Vec<Spanned<String>>>>>,
}

/// Maps byte offsets to 1-based lines and columns.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn line(&self, span: &Range<usize>) -> usize {
        let end = span.start.min(self.text.len());
        self.text[..end].matches('\n').count() + 1
    }

    fn column(&self, span: &Range<usize>) -> usize {
        let end = span.start.min(self.text.len());
        let line_start = self.text[..end].rfind('\n').map_or(0, |i| i + 1);
        self.text[line_start..end].chars().count() + 1
    }

    fn invalid(
        &self,
        span: &Range<usize>,
        section: &str,
        message: impl Into<String>,
    ) -> ParseError {
        ParseError::Invalid {
            line: self.line(span),
            section: section.to_string(),
            message: message.into(),
        }
    }

    fn dimension(&self, span: &Range<usize>, section: &str, message: String) -> ParseError {
        ParseError::Dimension {
            line: self.line(span),
            section: section.to_string(),
            message,
        }
    }

    fn term(
        &self,
        scale: &LinguisticScale,
        label: &Spanned<String>,
        section: &str,
    ) -> Result<String, ParseError> {
        match scale.term(label.get_ref()) {
            Some(_) => Ok(label.get_ref().clone()),
            None => Err(ParseError::UnknownTerm {
                line: self.line(&label.span()),
                section: section.to_string(),
                scale: scale.name().to_string(),
                label: label.get_ref().clone(),
            }),
        }
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let loc = Locator { text };
    let raw: RawFile = toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        ParseError::Syntax {
            line: loc.line(&span),
            column: loc.column(&span),
            message: e.message().trim().to_string(),
        }
    })?;

    if let Some(schema) = &raw.schema {
        if schema.get_ref() != PROBLEM_SCHEMA {
            return Err(loc.invalid(
                &schema.span(),
                "schema",
                format!(
                    "unsupported schema {:?}, expected {PROBLEM_SCHEMA:?}",
                    schema.get_ref()
                ),
            ));
        }
    }

    let weight_scale = match &raw.scales.weight {
        Some(s) => build_scale(&loc, s, "scales.weight")?,
        None => builtin_weight_scale(),
    };
    let rating_scale = match &raw.scales.rating {
        Some(s) => build_scale(&loc, s, "scales.rating")?,
        None => builtin_rating_scale(),
    };

    let section = "decision_makers";
    if raw.decision_makers.get_ref().is_empty() {
        return Err(loc.invalid(&raw.decision_makers.span(), section, "no decision makers"));
    }
    let mut seen = HashSet::new();
    let mut decision_makers = Vec::new();
    for dm in raw.decision_makers.get_ref() {
        unique(&loc, &mut seen, &dm.name, section)?;
        decision_makers.push(DecisionMaker {
            name: dm.name.get_ref().clone(),
            importance: loc.term(&weight_scale, &dm.importance, section)?,
        });
    }
    let k = decision_makers.len();

    let section = "criteria";
    if raw.criteria.get_ref().is_empty() {
        return Err(loc.invalid(&raw.criteria.span(), section, "no criteria"));
    }
    let mut seen = HashSet::new();
    let mut criteria = Vec::new();
    for c in raw.criteria.get_ref() {
        unique(&loc, &mut seen, &c.name, section)?;
        let kind: CriterionKind = c
            .kind
            .get_ref()
            .parse()
            .map_err(|msg: String| loc.invalid(&c.kind.span(), section, msg))?;
        let terms = c.importance.get_ref();
        if terms.len() != k {
            return Err(loc.dimension(
                &c.importance.span(),
                section,
                format!(
                    "criterion {:?} has {} importance terms for {k} decision makers",
                    c.name.get_ref(),
                    terms.len()
                ),
            ));
        }
        criteria.push(Criterion {
            name: c.name.get_ref().clone(),
            kind,
            importance: terms
                .iter()
                .map(|t| loc.term(&weight_scale, t, section))
                .collect::<Result<_, _>>()?,
        });
    }
    let n = criteria.len();

    let section = "alternatives";
    if raw.alternatives.get_ref().is_empty() {
        return Err(loc.invalid(&raw.alternatives.span(), section, "no alternatives"));
    }
    let mut seen = HashSet::new();
    let mut alternatives = Vec::new();
    for alt in raw.alternatives.get_ref() {
        unique(&loc, &mut seen, &alt.name, section)?;
        let rows = alt.ratings.get_ref();
        if rows.len() != n {
            return Err(loc.dimension(
                &alt.ratings.span(),
                section,
                format!(
                    "alternative {:?} has {} rating rows for {n} criteria",
                    alt.name.get_ref(),
                    rows.len()
                ),
            ));
        }
        let mut ratings = Vec::with_capacity(n);
        for (row, crit) in rows.iter().zip(&criteria) {
            if row.get_ref().len() != k {
                return Err(loc.dimension(
                    &row.span(),
                    section,
                    format!(
                        "alternative {:?}, criterion {:?}: {} ratings for {k} decision makers",
                        alt.name.get_ref(),
                        crit.name,
                        row.get_ref().len()
                    ),
                ));
            }
            ratings.push(
                row.get_ref()
                    .iter()
                    .map(|t| loc.term(&rating_scale, t, section))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        alternatives.push(Alternative {
            name: alt.name.get_ref().clone(),
            ratings,
        });
    }

    let section = "options";
    let dm_weight_override = match &raw.options.dm_weights {
        Some(w) => {
            let weights = w.get_ref();
            if weights.len() != k {
                return Err(loc.dimension(
                    &w.span(),
                    section,
                    format!("{} dm_weights for {k} decision makers", weights.len()),
                ));
            }
            if let Some(bad) = weights.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
                return Err(loc.invalid(
                    &w.span(),
                    section,
                    format!("dm_weights must be positive, got {bad}"),
                ));
            }
            Some(weights.clone())
        }
        None => None,
    };
    let precision = match &raw.options.precision {
        Some(p) => {
            let value = *p.get_ref();
            match usize::try_from(value) {
                Ok(v) if v <= MAX_PRECISION => Some(v),
                _ => {
                    return Err(loc.invalid(
                        &p.span(),
                        section,
                        format!("precision must be between 0 and {MAX_PRECISION}, got {value}"),
                    ))
                }
            }
        }
        None => None,
    };

    let problem = DecisionProblem {
        decision_makers,
        criteria,
        alternatives,
        weight_scale,
        rating_scale,
        dm_weight_override,
    };
    debug_assert!(problem.resolve().is_ok());
    Ok(ProblemFile {
        problem,
        options: FileOptions {
            normalized_distance: raw.options.normalized_distance.unwrap_or(false),
            precision,
        },
    })
}

fn unique(
    loc: &Locator<'_>,
    seen: &mut HashSet<String>,
    name: &Spanned<String>,
    section: &str,
) -> Result<(), ParseError> {
    if name.get_ref().trim().is_empty() {
        return Err(loc.invalid(&name.span(), section, "name must not be empty"));
    }
    if !seen.insert(name.get_ref().clone()) {
        return Err(loc.invalid(
            &name.span(),
            section,
            format!("duplicate name {:?}", name.get_ref()),
        ));
    }
    Ok(())
}

fn build_scale(
    loc: &Locator<'_>,
    raw: &Spanned<RawScale>,
    section: &str,
) -> Result<LinguisticScale, ParseError> {
    let scale_error = |span: &Range<usize>, source: ScaleError| ParseError::InvalidScale {
        line: loc.line(span),
        section: section.to_string(),
        source,
    };
    let scale = raw.get_ref();
    let mut terms = Vec::with_capacity(scale.terms.len());
    for term in &scale.terms {
        let t = term.get_ref();
        let value = match t.value.get_ref().as_slice() {
            &[a, b, c] => SvnNumber::new(a, b, c).map_err(|source| {
                scale_error(
                    &t.value.span(),
                    ScaleError::InvalidValue {
                        scale: scale.name.clone(),
                        label: t.label.clone(),
                        source,
                    },
                )
            })?,
            other => {
                return Err(loc.invalid(
                    &t.value.span(),
                    section,
                    format!(
                        "term {:?}: value needs 3 components, got {}",
                        t.label,
                        other.len()
                    ),
                ))
            }
        };
        let names = std::iter::once(TermName::new(&t.label, &t.abbrev))
            .chain(
                t.synonyms
                    .iter()
                    .map(|s| TermName::new(&s.label, &s.abbrev)),
            )
            .collect();
        terms.push((term.span(), Term::new(names, value)));
    }
    let spans: Vec<Range<usize>> = terms.iter().map(|(s, _)| s.clone()).collect();
    LinguisticScale::new(&scale.name, terms.into_iter().map(|(_, t)| t).collect()).map_err(
        |source| {
            let span = source
                .term()
                .and_then(|i| spans.get(i).cloned())
                .unwrap_or_else(|| raw.span());
            scale_error(&span, source)
        },
    )
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn quoted_list<S: AsRef<str>>(items: &[S]) -> String {
    let inner: Vec<String> = items.iter().map(|s| quoted(s.as_ref())).collect();
    format!("[{}]", inner.join(", "))
}

fn float(x: f64) -> String {
    format!("{x:?}")
}

fn write_scale(out: &mut String, key: &str, scale: &LinguisticScale) {
    let _ = writeln!(out, "[scales.{key}]");
    let _ = writeln!(out, "name = {}", quoted(scale.name()));
    for term in scale.terms() {
        let canonical = term.canonical();
        let _ = writeln!(out, "\n[[scales.{key}.terms]]");
        let _ = writeln!(out, "label = {}", quoted(&canonical.label));
        let _ = writeln!(out, "abbrev = {}", quoted(&canonical.abbrev));
        if term.names.len() > 1 {
            let synonyms: Vec<String> = term.names[1..]
                .iter()
                .map(|n| {
                    format!(
                        "{{ label = {}, abbrev = {} }}",
                        quoted(&n.label),
                        quoted(&n.abbrev)
                    )
                })
                .collect();
            let _ = writeln!(out, "synonyms = [{}]", synonyms.join(", "));
        }
        let [a, b, c] = term.value.components();
        let _ = writeln!(out, "value = [{}, {}, {}]", float(a), float(b), float(c));
    }
    out.push('\n');
}

/// Writes a problem file that [`parse_problem`] reads back to an equal value.
/// Scales equal to the built-in ones are omitted.
pub fn serialize_problem(file: &ProblemFile) -> String {
    let p = &file.problem;
    let mut out = String::new();
    let _ = writeln!(out, "schema = {}\n", quoted(PROBLEM_SCHEMA));

    let opts = &file.options;
    if p.dm_weight_override.is_some() || opts.normalized_distance || opts.precision.is_some() {
        out.push_str("[options]\n");
        if let Some(w) = &p.dm_weight_override {
            let ws: Vec<String> = w.iter().map(|x| float(*x)).collect();
            let _ = writeln!(out, "dm_weights = [{}]", ws.join(", "));
        }
        if opts.normalized_distance {
            out.push_str("normalized_distance = true\n");
        }
        if let Some(prec) = opts.precision {
            let _ = writeln!(out, "precision = {prec}");
        }
        out.push('\n');
    }

    if p.weight_scale != builtin_weight_scale() {
        write_scale(&mut out, "weight", &p.weight_scale);
    }
    if p.rating_scale != builtin_rating_scale() {
        write_scale(&mut out, "rating", &p.rating_scale);
    }

    for dm in &p.decision_makers {
        out.push_str("[[decision_makers]]\n");
        let _ = writeln!(out, "name = {}", quoted(&dm.name));
        let _ = writeln!(out, "importance = {}\n", quoted(&dm.importance));
    }
    for c in &p.criteria {
        out.push_str("[[criteria]]\n");
        let _ = writeln!(out, "name = {}", quoted(&c.name));
        let _ = writeln!(out, "kind = {}", quoted(c.kind.as_str()));
        let _ = writeln!(out, "importance = {}\n", quoted_list(&c.importance));
    }
    for alt in &p.alternatives {
        out.push_str("[[alternatives]]\n");
        let _ = writeln!(out, "name = {}", quoted(&alt.name));
        out.push_str("ratings = [\n");
        for (row, crit) in alt.ratings.iter().zip(&p.criteria) {
            let _ = writeln!(
                out,
                "  {}, # {}",
                quoted_list(row),
                crit.name.replace('\n', " ")
            );
        }
        out.push_str("]\n\n");
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    out
}
