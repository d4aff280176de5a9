//! Full-analysis reports: one pass that gathers face vectors,
//! classification, stackedness verdicts per index, boundary relations,
//! identity checks, and the nonnegativity probe, renderable as plain text
//! or JSON. Exact integers are serialized as JSON numbers when they fit in
//! 53 bits and as `{"big": "<decimal>"}` objects beyond that.

use num::{BigInt, ToPrimitive};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::enumerative::{
    dehn_sommerville_residuals, is_m_vector, nonnegativity_probe, symmetry_and_duality_checks,
    DehnSommerville, DualityReport, EnumError, MVectorVerdict, VectorSuite,
};
use crate::facetfile::ParsedComplex;
use crate::field::FieldSpec;
use crate::manifold::{analyze_auto, ManifoldError};
use crate::stackedness::{
    is_locally_stacked_with_cap, is_stacked_closed_with_cap, is_stacked_with_boundary, StackError,
};

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Enumerative(#[from] EnumError),
    #[error(transparent)]
    Stackedness(#[from] StackError),
}

/// JSON encoding of an exact integer: a plain number when it is exactly
/// representable in a double, a `{"big": "<decimal>"}` object otherwise.
pub fn exact_int_json(x: &BigInt) -> Value {
    const LIMIT: i64 = (1 << 53) - 1;
    match x.to_i64() {
        Some(v) if v.abs() <= LIMIT => json!(v),
        _ => json!({ "big": x.to_string() }),
    }
}

fn exact_vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(exact_int_json).collect())
}

fn render_vec(v: &[BigInt]) -> String {
    let words: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", words.join(", "))
}

fn render_usize_vec(v: &[usize]) -> String {
    let words: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", words.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub pure: bool,
    pub connected: bool,
    pub cohen_macaulay: bool,
    pub buchsbaum: bool,
    pub closed_manifold: bool,
    pub manifold_with_boundary: bool,
    pub homology_sphere: bool,
    pub homology_ball: bool,
    pub orientable: Option<bool>,
    pub boundary_facet_count: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct StackedRow {
    pub r: usize,
    pub stack_level: usize,
    pub verdict: bool,
    pub criterion: String,
    /// Vertex-link verdict, for closed manifolds when the local criterion
    /// applies at this index.
    pub local_verdict: Option<bool>,
    pub witness_facet_count: Option<usize>,
    pub g_tilde: Option<BigInt>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum IdentityBlock {
    Checked(DualityReport),
    NotApplicable(String),
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub version: String,
    pub source: String,
    pub n: usize,
    pub dim: i32,
    pub facets: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
    pub field: FieldSpec,
    pub field_retried: bool,
    pub suite: VectorSuite,
    pub classification: Classification,
    /// `None` when the complex is not a homology manifold with boundary.
    pub stacked_rows: Option<Vec<StackedRow>>,
    pub boundary_relations: Option<DehnSommerville>,
    pub identity_checks: IdentityBlock,
    pub g_tilde_min: Option<BigInt>,
    pub g_tilde_first_negative: Option<usize>,
    pub m_vector: MVectorVerdict,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub source: String,
    pub requested_field: Option<FieldSpec>,
    pub max_r: Option<usize>,
    pub search_cap: usize,
}

pub fn build_analysis(
    parsed: &ParsedComplex,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport, ReportError> {
    let complex = &parsed.complex;
    let (analysis, retried) = analyze_auto(complex, opts.requested_field)?;
    let field = analysis.field();
    let suite = VectorSuite::compute(complex, field)?;

    let boundary_facet_count = analysis.boundary_complex().ok().map(|b| {
        if b.is_empty_complex() {
            0
        } else {
            b.facets().len()
        }
    });
    let classification = Classification {
        pure: analysis.is_pure(),
        connected: analysis.is_connected(),
        cohen_macaulay: analysis.is_cohen_macaulay(),
        buchsbaum: analysis.is_buchsbaum(),
        closed_manifold: analysis.is_closed_manifold(),
        manifold_with_boundary: analysis.is_manifold_with_boundary(),
        homology_sphere: analysis.is_homology_sphere(),
        homology_ball: analysis.is_homology_ball(),
        orientable: analysis.is_orientable(),
        boundary_facet_count,
    };

    let closed = classification.closed_manifold;
    let stacked_rows = if classification.manifold_with_boundary && complex.dim() >= 0 {
        let max_r = opts.max_r.unwrap_or((complex.dim() as usize + 2) / 2);
        let mut rows = Vec::with_capacity(max_r);
        for r in 1..=max_r {
            let mut row = StackedRow {
                r,
                stack_level: r - 1,
                verdict: false,
                criterion: String::new(),
                local_verdict: None,
                witness_facet_count: None,
                g_tilde: suite.g_tilde.get(r).cloned(),
                notes: Vec::new(),
            };
            if closed {
                let global = is_stacked_closed_with_cap(complex, r, field, opts.search_cap)?;
                row.verdict = global.verdict;
                row.criterion = global.criterion.to_string();
                row.witness_facet_count = global.witness.as_ref().map(|w| w.facets().len());
                row.notes.extend(global.notes);
                match is_locally_stacked_with_cap(complex, r, field, opts.search_cap) {
                    Ok(local) => {
                        row.local_verdict = Some(local.verdict);
                        row.notes.extend(local.notes);
                    }
                    Err(StackError::IndexOutOfRange { .. }) => {
                        row.notes.push(format!("the local criterion does not apply at r = {r}"));
                    }
                    Err(other) => return Err(other.into()),
                }
            } else {
                let verdict = is_stacked_with_boundary(complex, r - 1, field)?;
                row.verdict = verdict.verdict;
                row.criterion = verdict.criterion.to_string();
                row.notes.extend(verdict.notes);
            }
            rows.push(row);
        }
        Some(rows)
    } else {
        None
    };

    let boundary_relations = match analysis.boundary_complex() {
        Ok(b) if !b.is_empty_complex() => {
            Some(dehn_sommerville_residuals(complex, b, field)?)
        }
        _ => None,
    };

    let identity_checks = if closed {
        match symmetry_and_duality_checks(complex, field) {
            Ok(report) => IdentityBlock::Checked(report),
            Err(EnumError::PreconditionFailed(reason)) => IdentityBlock::NotApplicable(reason),
            Err(other) => return Err(other.into()),
        }
    } else {
        IdentityBlock::NotApplicable(
            "the identities only apply to closed homology manifolds".into(),
        )
    };

    let (g_tilde_min, g_tilde_first_negative) = nonnegativity_probe(&suite.g_tilde);
    let m_vector = is_m_vector(&suite.g_tilde);

    let mut warnings = Vec::new();
    if retried {
        warnings.push(format!(
            "classification over the rationals was retried; this report uses {field}"
        ));
    }

    Ok(AnalysisReport {
        version: REPORT_VERSION.to_string(),
        source: opts.source.clone(),
        n: complex.n(),
        dim: complex.dim(),
        facets: complex.facets().iter().map(|f| f.to_vec()).collect(),
        labels: parsed.labels.clone(),
        field,
        field_retried: retried,
        suite,
        classification,
        stacked_rows,
        boundary_relations,
        identity_checks,
        g_tilde_min,
        g_tilde_first_negative,
        m_vector,
        warnings,
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        p(&mut out, format!("input: {}", self.source));
        p(
            &mut out,
            format!(
                "vertices: {}  dimension: {}  facets: {}",
                self.n,
                self.dim,
                self.facets.len()
            ),
        );
        if let Some(labels) = &self.labels {
            let pairs: Vec<String> = labels
                .iter()
                .enumerate()
                .map(|(i, t)| format!("{t}={}", i + 1))
                .collect();
            p(&mut out, format!("labels: {}", pairs.join(" ")));
        }
        let retried = if self.field_retried { " (after retry)" } else { "" };
        p(&mut out, format!("field: {}{}", self.field, retried));
        for w in &self.warnings {
            p(&mut out, format!("note: {w}"));
        }
        p(&mut out, String::new());

        p(&mut out, format!("f = {}", render_vec(&self.suite.f)));
        p(&mut out, format!("h = {}", render_vec(&self.suite.h)));
        p(&mut out, format!("h' = {}", render_vec(&self.suite.h_prime)));
        p(&mut out, format!("h'' = {}", render_vec(&self.suite.h_double_prime)));
        p(&mut out, format!("g = {}", render_vec(&self.suite.g)));
        p(&mut out, format!("g̃ = {}", render_vec(&self.suite.g_tilde)));
        p(&mut out, format!("betti = {}", render_usize_vec(&self.suite.betti.betti)));
        p(&mut out, String::new());

        let c = &self.classification;
        p(&mut out, format!("pure: {}", yes_no(c.pure)));
        p(&mut out, format!("connected: {}", yes_no(c.connected)));
        p(&mut out, format!("cohen-macaulay: {}", yes_no(c.cohen_macaulay)));
        p(&mut out, format!("buchsbaum: {}", yes_no(c.buchsbaum)));
        p(&mut out, format!("closed homology manifold: {}", yes_no(c.closed_manifold)));
        p(
            &mut out,
            format!("homology manifold with boundary: {}", yes_no(c.manifold_with_boundary)),
        );
        p(&mut out, format!("homology sphere: {}", yes_no(c.homology_sphere)));
        p(&mut out, format!("homology ball: {}", yes_no(c.homology_ball)));
        let orientable = match c.orientable {
            Some(b) => yes_no(b),
            None => "n/a",
        };
        p(&mut out, format!("orientable: {orientable}"));
        if let Some(count) = c.boundary_facet_count {
            p(&mut out, format!("boundary facets: {count}"));
        }
        p(&mut out, String::new());

        match &self.stacked_rows {
            Some(rows) => {
                for row in rows {
                    let mut line = format!("{}-stacked: {}", row.stack_level, yes_no(row.verdict));
                    line.push_str(&format!("  (criterion: {}", row.criterion));
                    if let Some(count) = row.witness_facet_count {
                        line.push_str(&format!(", witness facets: {count}"));
                    }
                    if let Some(gt) = &row.g_tilde {
                        line.push_str(&format!(", g̃_{} = {gt}", row.r));
                    }
                    line.push(')');
                    p(&mut out, line);
                    if let Some(local) = row.local_verdict {
                        p(
                            &mut out,
                            format!("locally {}-stacked: {}", row.stack_level, yes_no(local)),
                        );
                    }
                    for note in &row.notes {
                        p(&mut out, format!("  note: {note}"));
                    }
                }
            }
            None => p(
                &mut out,
                "stackedness: not applicable (not a homology manifold with boundary)".to_string(),
            ),
        }
        p(&mut out, String::new());

        match &self.boundary_relations {
            Some(ds) => {
                p(
                    &mut out,
                    format!("boundary relations hold: {}", yes_no(ds.all_zero)),
                );
                p(&mut out, format!("  euler-form residuals = {}", render_vec(&ds.eq2_residuals)));
                p(&mut out, format!("  betti-form residuals = {}", render_vec(&ds.eq3_residuals)));
            }
            None => p(&mut out, "boundary relations: not applicable".to_string()),
        }

        match &self.identity_checks {
            IdentityBlock::Checked(d) => {
                p(&mut out, format!("h'' palindrome: {}", yes_no(d.h_double_prime_palindrome)));
                p(&mut out, format!("g̃ complement identity: {}", yes_no(d.g_tilde_identity)));
                p(&mut out, format!("poincare duality: {}", yes_no(d.poincare_duality)));
            }
            IdentityBlock::NotApplicable(reason) => {
                p(&mut out, format!("identity checks: not applicable ({reason})"));
            }
        }

        let min = self
            .g_tilde_min
            .as_ref()
            .map(|m| m.to_string())
            .unwrap_or_else(|| "n/a".into());
        let first_neg = self
            .g_tilde_first_negative
            .map(|i| i.to_string())
            .unwrap_or_else(|| "none".into());
        p(&mut out, format!("g̃ minimum: {min} (first negative index: {first_neg})"));
        p(
            &mut out,
            format!("g̃ is an M-vector: {}", yes_no(self.m_vector.is_m_vector)),
        );
        out
    }

    pub fn to_json(&self) -> Value {
        let suite = &self.suite;
        let mut root = Map::new();
        root.insert("version".into(), json!(self.version));
        root.insert("source".into(), json!(self.source));
        root.insert("vertex_count".into(), json!(self.n));
        root.insert("dimension".into(), json!(self.dim));
        root.insert("facet_count".into(), json!(self.facets.len()));
        root.insert("facets".into(), json!(self.facets));
        root.insert("labels".into(), json!(self.labels));
        root.insert("field".into(), json!(self.field.to_string()));
        root.insert("field_retried".into(), json!(self.field_retried));
        root.insert(
            "vectors".into(),
            json!({
                "f": exact_vec_json(&suite.f),
                "h": exact_vec_json(&suite.h),
                "h_prime": exact_vec_json(&suite.h_prime),
                "h_double_prime": exact_vec_json(&suite.h_double_prime),
                "g": exact_vec_json(&suite.g),
                "g_tilde": exact_vec_json(&suite.g_tilde),
            }),
        );
        root.insert(
            "betti".into(),
            json!({
                "field": self.field.to_string(),
                "values": suite.betti.betti,
                "empty_complex": suite.betti.empty_complex,
            }),
        );
        let c = &self.classification;
        root.insert(
            "classification".into(),
            json!({
                "pure": c.pure,
                "connected": c.connected,
                "cohen_macaulay": c.cohen_macaulay,
                "buchsbaum": c.buchsbaum,
                "closed_manifold": c.closed_manifold,
                "manifold_with_boundary": c.manifold_with_boundary,
                "homology_sphere": c.homology_sphere,
                "homology_ball": c.homology_ball,
                "orientable": c.orientable,
                "boundary_facet_count": c.boundary_facet_count,
            }),
        );
        let stacked = match &self.stacked_rows {
            Some(rows) => Value::Array(
                rows.iter()
                    .map(|row| {
                        json!({
                            "r": row.r,
                            "stack_level": row.stack_level,
                            "verdict": row.verdict,
                            "criterion": row.criterion,
                            "local_verdict": row.local_verdict,
                            "witness_facet_count": row.witness_facet_count,
                            "g_tilde": row.g_tilde.as_ref().map(exact_int_json),
                            "notes": row.notes,
                        })
                    })
                    .collect(),
            ),
            None => Value::Null,
        };
        root.insert("stackedness".into(), stacked);
        let relations = match &self.boundary_relations {
            Some(ds) => json!({
                "all_zero": ds.all_zero,
                "euler_form_residuals": exact_vec_json(&ds.eq2_residuals),
                "betti_form_residuals": exact_vec_json(&ds.eq3_residuals),
            }),
            None => Value::Null,
        };
        root.insert("boundary_relations".into(), relations);
        let identities = match &self.identity_checks {
            IdentityBlock::Checked(d) => json!({
                "applicable": true,
                "h_double_prime_palindrome": d.h_double_prime_palindrome,
                "h_double_prime_residuals": exact_vec_json(&d.h_double_prime_residuals),
                "g_tilde_identity": d.g_tilde_identity,
                "g_tilde_residuals": exact_vec_json(&d.g_tilde_residuals),
                "poincare_duality": d.poincare_duality,
                "poincare_residuals": d.poincare_residuals,
                "all_hold": d.all_hold,
            }),
            IdentityBlock::NotApplicable(reason) => json!({
                "applicable": false,
                "reason": reason,
            }),
        };
        root.insert("identity_checks".into(), identities);
        root.insert(
            "g_tilde_probe".into(),
            json!({
                "min": self.g_tilde_min.as_ref().map(exact_int_json),
                "first_negative_index": self.g_tilde_first_negative,
            }),
        );
        root.insert(
            "m_vector".into(),
            json!({
                "is_m_vector": self.m_vector.is_m_vector,
                "first_violation": self.m_vector.first_violation,
            }),
        );
        root.insert("warnings".into(), json!(self.warnings));
        Value::Object(root)
    }
}

/// Renders the boundary complex of a manifold with boundary, for the
/// boundary subcommand.
pub fn boundary_of(
    complex: &SimplicialComplex,
    requested_field: Option<FieldSpec>,
) -> Result<SimplicialComplex, ReportError> {
    let (analysis, _) = analyze_auto(complex, requested_field)?;
    Ok(analysis.boundary_complex()?.clone())
}
