//! Stackedness deciders.
//!
//! Index conventions, fixed once: a complex is "ℓ-stacked" when it has no
//! interior faces of dimension at most `dim − ℓ − 1`. The classical
//! criteria are phrased with the index `r = ℓ + 1`; every verdict therefore
//! records both `r` and `stack_level = r − 1` so the two conventions cannot
//! drift apart.
//!
//! Four routes to a verdict:
//!
//! * `interior-faces`: the definition, for manifolds with boundary.
//! * `h-double-prime`: `h''_r = 0`, equivalent to the definition for
//!   homology manifolds with boundary.
//! * `delta-reconstruction`: for a closed manifold, test the canonical
//!   candidate `Σ = Δ(r)`; complete for `2r ≤ d`, sufficient-only beyond.
//! * `local`: all vertex links stacked spheres, plus the constructive
//!   local-to-global assembly `Σ = ⋃_v v ∗ (lk v)(r−1)`.

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, DEFAULT_SEARCH_CAP};
use crate::enumerative::{EnumError, VectorSuite};
use crate::field::FieldSpec;
use crate::manifold::{analyze, ManifoldAnalysis, ManifoldError};
use num::Zero;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StackError {
    #[error("complex is not a homology manifold with boundary over {0}")]
    NotManifoldWithBoundary(FieldSpec),
    #[error("complex is not a closed homology manifold over {0}")]
    NotClosed(FieldSpec),
    #[error("complex is not a homology sphere over {0}")]
    NotSphere(FieldSpec),
    #[error("complex is not locally stacked at this level; the assembly needs stacked vertex links")]
    NotLocallyStacked,
    #[error("index r = {r} is out of range {lo}..={hi}")]
    IndexOutOfRange { r: usize, lo: usize, hi: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Enumerative(#[from] EnumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    InteriorFaces,
    HDoublePrime,
    DeltaReconstruction,
    Local,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Criterion::InteriorFaces => "interior-faces",
            Criterion::HDoublePrime => "h-double-prime",
            Criterion::DeltaReconstruction => "delta-reconstruction",
            Criterion::Local => "local",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone)]
pub struct StackednessVerdict {
    /// Criterion index; the verdict is about (r−1)-stackedness.
    pub r: usize,
    /// The level the verdict is about: `r − 1`.
    pub stack_level: usize,
    pub verdict: bool,
    pub criterion: Criterion,
    /// The reconstructed ball/manifold when one was built and verified.
    pub witness: Option<SimplicialComplex>,
    pub notes: Vec<String>,
}

impl StackednessVerdict {
    fn new(r: usize, verdict: bool, criterion: Criterion) -> StackednessVerdict {
        StackednessVerdict { r, stack_level: r - 1, verdict, criterion, witness: None, notes: Vec::new() }
    }
}

fn require_mwb(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<ManifoldAnalysis, StackError> {
    let analysis = analyze(complex, field)?;
    if !analysis.is_manifold_with_boundary() {
        return Err(StackError::NotManifoldWithBoundary(field));
    }
    Ok(analysis)
}

/// Whether `analysis` has no interior faces of dimension `<= dim − level − 1`.
fn no_small_interior_faces(analysis: &ManifoldAnalysis, level: usize) -> Result<bool, StackError> {
    let threshold = analysis.complex().dim() - level as i32 - 1;
    let interior = analysis.interior_faces()?;
    Ok(interior.iter().all(|f| f.dim() > threshold))
}

/// Definition-level test: a manifold with boundary is `level`-stacked when
/// all its interior faces have dimension above `dim − level − 1`.
pub fn is_stacked_with_boundary(
    complex: &SimplicialComplex,
    level: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    let analysis = require_mwb(complex, field)?;
    let verdict = no_small_interior_faces(&analysis, level)?;
    Ok(StackednessVerdict::new(level + 1, verdict, Criterion::InteriorFaces))
}

/// Enumerative test: a homology manifold with boundary is (r−1)-stacked
/// exactly when `h''_r = 0`, for `1 <= r <= d`.
pub fn is_stacked_via_h(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    let _analysis = require_mwb(complex, field)?;
    let d = (complex.dim() + 1) as usize;
    if r < 1 || r > d {
        return Err(StackError::IndexOutOfRange { r, lo: 1, hi: d });
    }
    let suite = VectorSuite::compute(complex, field)?;
    let verdict = suite.h_double_prime[r].is_zero();
    Ok(StackednessVerdict::new(r, verdict, Criterion::HDoublePrime))
}

/// Closed-manifold test via the canonical candidate `Σ = Δ(r)`: the verdict
/// is true when `Σ` strictly extends `Δ`, is a homology manifold with
/// boundary exactly `Δ`, and is (r−1)-stacked. The test is a complete
/// decision procedure for `2r <= d`; beyond that range a true verdict is
/// still valid but a false one is inconclusive, and the verdict says so.
pub fn is_stacked_closed(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    is_stacked_closed_with_cap(complex, r, field, DEFAULT_SEARCH_CAP)
}

pub fn is_stacked_closed_with_cap(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
    cap: usize,
) -> Result<StackednessVerdict, StackError> {
    let analysis = analyze(complex, field)?;
    if !analysis.is_closed_manifold() {
        return Err(StackError::NotClosed(field));
    }
    if r < 1 {
        return Err(StackError::IndexOutOfRange { r, lo: 1, hi: usize::MAX });
    }
    let d = (complex.dim() + 1) as usize;
    let mut out = StackednessVerdict::new(r, false, Criterion::DeltaReconstruction);
    if 2 * r > d {
        out.notes.push(format!(
            "r = {r} exceeds d/2 = {}/2: a true verdict is conclusive, a false one is not",
            d
        ));
    }
    let sigma = complex.delta_r_with_cap(r, cap)?;
    if sigma == *complex {
        out.notes.push("the candidate manifold adds no faces".into());
        return Ok(out);
    }
    let sigma_analysis = analyze(&sigma, field)?;
    if !sigma_analysis.is_manifold_with_boundary() {
        out.notes.push("the candidate is not a homology manifold with boundary".into());
        return Ok(out);
    }
    if sigma_analysis.boundary_complex()? != complex {
        out.notes.push("the candidate's boundary differs from the input".into());
        return Ok(out);
    }
    if !no_small_interior_faces(&sigma_analysis, r - 1)? {
        out.notes.push(format!("the candidate has interior faces of dimension <= {}", sigma.dim() - r as i32));
        return Ok(out);
    }
    out.verdict = true;
    out.witness = Some(sigma);
    Ok(out)
}

/// Sphere test via the canonical ball `B = Δ(r−1)`: true when `B` is a
/// homology ball with boundary `Δ` and no interior faces of dimension
/// `<= d − r`. Valid for `2r <= d + 1`.
pub fn is_stacked_sphere(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    is_stacked_sphere_with_cap(complex, r, field, DEFAULT_SEARCH_CAP)
}

pub fn is_stacked_sphere_with_cap(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
    cap: usize,
) -> Result<StackednessVerdict, StackError> {
    let analysis = analyze(complex, field)?;
    if !analysis.is_homology_sphere() {
        return Err(StackError::NotSphere(field));
    }
    let d = (complex.dim() + 1) as usize;
    if r < 1 || 2 * r > d + 1 {
        return Err(StackError::IndexOutOfRange { r, lo: 1, hi: d.div_ceil(2) });
    }
    let mut out = StackednessVerdict::new(r, false, Criterion::DeltaReconstruction);
    let ball = complex.delta_r_with_cap(r - 1, cap)?;
    let ball_analysis = analyze(&ball, field)?;
    if !ball_analysis.is_homology_ball() {
        out.notes.push("the candidate ball is not a homology ball".into());
        return Ok(out);
    }
    if ball_analysis.boundary_complex()? != complex {
        out.notes.push("the candidate ball's boundary differs from the input".into());
        return Ok(out);
    }
    if !no_small_interior_faces(&ball_analysis, r - 1)? {
        out.notes.push(format!("the candidate ball has interior faces of dimension <= {}", ball.dim() - r as i32));
        return Ok(out);
    }
    out.verdict = true;
    out.witness = Some(ball);
    Ok(out)
}

/// Local test: every vertex link is an (r−1)-stacked homology sphere.
pub fn is_locally_stacked(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    is_locally_stacked_with_cap(complex, r, field, DEFAULT_SEARCH_CAP)
}

pub fn is_locally_stacked_with_cap(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
    cap: usize,
) -> Result<StackednessVerdict, StackError> {
    let analysis = analyze(complex, field)?;
    if !analysis.is_closed_manifold() {
        return Err(StackError::NotClosed(field));
    }
    let mut out = StackednessVerdict::new(r, true, Criterion::Local);
    for v in complex.support().vertices() {
        let link = complex.link(&crate::complex::Face::singleton(v))?;
        let link_verdict = is_stacked_sphere_with_cap(&link, r, field, cap)?;
        if !link_verdict.verdict {
            out.verdict = false;
            out.notes.push(format!("the link of vertex {v} is not a stacked sphere at this level"));
            break;
        }
    }
    Ok(out)
}

/// Constructive local-to-global assembly: from stacked vertex links build
/// `Σ = ⋃_v v ∗ D_v` with `D_v = (lk v)(r−1)` and verify that `Σ` restores
/// the links, bounds `Δ`, and is (r−1)-stacked. Complete for `2r < d`;
/// outside that range the assembly still runs and the verdict notes it.
pub fn local_to_global(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
) -> Result<StackednessVerdict, StackError> {
    local_to_global_with_cap(complex, r, field, DEFAULT_SEARCH_CAP)
}

pub fn local_to_global_with_cap(
    complex: &SimplicialComplex,
    r: usize,
    field: FieldSpec,
    cap: usize,
) -> Result<StackednessVerdict, StackError> {
    let analysis = analyze(complex, field)?;
    if !analysis.is_closed_manifold() {
        return Err(StackError::NotClosed(field));
    }
    let locally = is_locally_stacked_with_cap(complex, r, field, cap)?;
    if !locally.verdict {
        return Err(StackError::NotLocallyStacked);
    }
    let d = (complex.dim() + 1) as usize;
    let mut out = StackednessVerdict::new(r, false, Criterion::Local);
    if 2 * r >= d {
        out.notes.push(format!(
            "r = {r} is not below d/2 = {}/2: the assembly is not guaranteed to close up",
            d
        ));
    }
    let mut cones: Vec<(usize, SimplicialComplex)> = Vec::new();
    let mut sigma: Option<SimplicialComplex> = None;
    for v in complex.support().vertices() {
        let link = complex.link(&crate::complex::Face::singleton(v))?;
        let d_v = link.delta_r_with_cap(r - 1, cap)?;
        let cone = d_v.cone(v)?;
        sigma = Some(match sigma {
            None => cone.clone(),
            Some(acc) => acc.union(&cone)?,
        });
        cones.push((v, d_v));
    }
    let Some(sigma) = sigma else {
        out.notes.push("the complex has no vertices to assemble from".into());
        return Ok(out);
    };
    for (v, d_v) in &cones {
        let restored = sigma.link(&crate::complex::Face::singleton(*v))?;
        if restored != *d_v {
            out.notes.push(format!("the assembled manifold does not restore the link of vertex {v}"));
            return Ok(out);
        }
    }
    let sigma_analysis = analyze(&sigma, field)?;
    if !sigma_analysis.is_manifold_with_boundary() {
        out.notes.push("the assembled complex is not a homology manifold with boundary".into());
        return Ok(out);
    }
    if sigma_analysis.boundary_complex()? != complex {
        out.notes.push("the assembled manifold's boundary differs from the input".into());
        return Ok(out);
    }
    if !no_small_interior_faces(&sigma_analysis, r - 1)? {
        out.notes.push("the assembled manifold has interior faces below the stacking level".into());
        return Ok(out);
    }
    out.verdict = true;
    out.witness = Some(sigma);
    Ok(out)
}

/// One consequence of a stackedness verdict, with what was checked and what
/// was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consequence {
    pub description: String,
    pub pass: bool,
}

/// Betti and missing-face consequences of being `level`-stacked. For a
/// manifold with nonempty boundary: `β_k = 0` for `k >= r` and no missing
/// faces of dimension `>= r + 1` (with `r = level + 1`). For a closed
/// manifold: `β_k = 0` for `r <= k <= d − 1 − r` and no missing faces of
/// dimension `k` for `r + 1 <= k <= d − r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub stack_level: usize,
    pub closed: bool,
    pub checks: Vec<Consequence>,
    pub all_pass: bool,
}

pub fn stackedness_consequences(
    complex: &SimplicialComplex,
    level: usize,
    field: FieldSpec,
) -> Result<ConsequenceReport, StackError> {
    let analysis = require_mwb(complex, field)?;
    let closed = analysis.is_closed_manifold();
    let betti = analysis.betti();
    let d = complex.dim() + 1;
    let r = level as i32 + 1;
    let mut checks = Vec::new();

    let betti_hi = if closed { d - 1 - r } else { complex.dim() };
    for k in r..=betti_hi {
        let value = betti.get(k);
        checks.push(Consequence {
            description: format!("betti number {k} over {field} vanishes (found {value})"),
            pass: value == 0,
        });
    }

    let missing = complex.missing_faces();
    let missing_hi = if closed { d - r } else { complex.dim() + 1 };
    for k in (r + 1)..=missing_hi {
        let count = missing.iter().filter(|f| f.dim() == k).count();
        checks.push(Consequence {
            description: format!("no missing faces of dimension {k} (found {count})"),
            pass: count == 0,
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(ConsequenceReport { stack_level: level, closed, checks, all_pass })
}
