//! Recognition of homology manifolds, spheres, and balls.
//!
//! Everything here is driven by one scan over the nonempty faces: for each
//! face `F` the reduced homology of its link is computed over the chosen
//! field and condensed to two booleans, "vanishes below the top degree" and
//! "top Betti number", where the top degree is `dim Δ − |F|`. The standard
//! classes then read off the scan:
//!
//! * Buchsbaum: pure, and every nonempty-face link vanishes below top.
//! * Cohen–Macaulay: Buchsbaum, and the complex itself vanishes below top.
//! * closed homology manifold: Buchsbaum with every link top equal to 1.
//! * homology manifold with boundary: Buchsbaum with link tops in {0, 1},
//!   where the faces with top 0 form a complex that is itself a closed
//!   homology manifold of one dimension lower (or there are none).
//!
//! The empty complex `{∅}` counts as the (−1)-sphere, so a single point has
//! a genuine boundary sphere and is recognized as a 0-ball.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::field::FieldSpec;
use crate::homology::{betti_numbers, BettiVector, HomologyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ManifoldError {
    #[error("the void complex cannot be classified")]
    VoidComplex,
    #[error("complex is not pure: facets of different dimensions")]
    NotPure,
    #[error("complex is not a homology manifold with boundary over {0}")]
    NotManifoldWithBoundary(FieldSpec),
    #[error("complex is not a closed homology manifold over {0}")]
    NotClosed(FieldSpec),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Condensed link homology of every nonempty face.
#[derive(Debug, Clone)]
struct LinkScan {
    all_vanish_below_top: bool,
    all_top_01: bool,
    all_top_1: bool,
    /// Faces whose link has top Betti number 0.
    boundary_faces: Vec<Face>,
}

fn scan_links(complex: &SimplicialComplex, field: FieldSpec) -> Result<LinkScan, ManifoldError> {
    let dim = complex.dim();
    let mut scan = LinkScan {
        all_vanish_below_top: true,
        all_top_01: true,
        all_top_1: true,
        boundary_faces: Vec::new(),
    };
    for k in 0..=dim {
        for &face in complex.faces(k) {
            let link = complex.link(&face)?;
            let betti = betti_numbers(&link, field)?;
            let expected_top = dim - k - 1;
            let vanishes = (-1..expected_top).all(|j| betti.get(j) == 0);
            let top = betti.get(expected_top);
            scan.all_vanish_below_top &= vanishes;
            scan.all_top_01 &= top <= 1;
            scan.all_top_1 &= top == 1;
            if vanishes && top == 0 {
                scan.boundary_faces.push(face);
            }
        }
    }
    Ok(scan)
}

/// Checks that the candidate boundary faces form a pure `(dim − 1)`-complex
/// that is downward closed and a closed homology manifold. Returns the
/// boundary complex, or `None` when the candidate set fails.
fn validate_boundary(
    complex: &SimplicialComplex,
    boundary_faces: &[Face],
    field: FieldSpec,
) -> Result<Option<SimplicialComplex>, ManifoldError> {
    let built = SimplicialComplex::from_faces(complex.n(), boundary_faces.to_vec())?;
    let mut built_faces = BTreeSet::new();
    for k in 0..=built.dim() {
        built_faces.extend(built.faces(k).iter().copied());
    }
    let given: BTreeSet<Face> = boundary_faces.iter().copied().collect();
    if built_faces != given {
        // not downward closed: some subset of a boundary face is interior
        return Ok(None);
    }
    if built.dim() != complex.dim() - 1 || !built.is_pure() {
        return Ok(None);
    }
    let scan = scan_links(&built, field)?;
    if scan.all_vanish_below_top && scan.all_top_1 {
        Ok(Some(built))
    } else {
        Ok(None)
    }
}

/// Full classification of one complex over one field.
#[derive(Debug, Clone)]
pub struct ManifoldAnalysis {
    complex: SimplicialComplex,
    field: FieldSpec,
    pure: bool,
    connected: bool,
    betti: BettiVector,
    global_vanish_below_top: bool,
    global_top: usize,
    buchsbaum: bool,
    cohen_macaulay: bool,
    closed: bool,
    sphere: bool,
    boundary_face_set: BTreeSet<Face>,
    /// `Some` exactly when the complex is a homology manifold with
    /// (possibly empty) boundary; holds `{∅}` for closed manifolds.
    boundary: Option<SimplicialComplex>,
    boundary_betti: Option<BettiVector>,
}

pub fn analyze(complex: &SimplicialComplex, field: FieldSpec) -> Result<ManifoldAnalysis, ManifoldError> {
    if complex.is_void() {
        return Err(ManifoldError::VoidComplex);
    }
    let dim = complex.dim();
    let pure = complex.is_pure();
    let connected = complex.is_connected();
    let betti = betti_numbers(complex, field)?;
    let scan = scan_links(complex, field)?;
    let global_vanish_below_top = (-1..dim).all(|j| betti.get(j) == 0);
    let global_top = betti.get(dim);

    let buchsbaum = pure && scan.all_vanish_below_top;
    let cohen_macaulay = buchsbaum && global_vanish_below_top;
    let weak_manifold = buchsbaum && scan.all_top_01;
    let closed = weak_manifold && scan.all_top_1;
    let sphere = cohen_macaulay && scan.all_top_1 && global_top == 1;

    let boundary = if !weak_manifold {
        None
    } else if scan.boundary_faces.is_empty() {
        Some(SimplicialComplex::empty_complex(complex.n())?)
    } else {
        validate_boundary(complex, &scan.boundary_faces, field)?
    };
    let boundary_betti = match &boundary {
        Some(b) => Some(betti_numbers(b, field)?),
        None => None,
    };

    Ok(ManifoldAnalysis {
        complex: complex.clone(),
        field,
        pure,
        connected,
        betti,
        global_vanish_below_top,
        global_top,
        buchsbaum,
        cohen_macaulay,
        closed,
        sphere,
        boundary_face_set: scan.boundary_faces.into_iter().collect(),
        boundary,
        boundary_betti,
    })
}

/// Analysis with the default field policy: when no field is requested,
/// classify over the rationals first and retry over GF(2) when the
/// manifold check fails, or when the complex is a closed connected
/// manifold that is not orientable (every closed connected manifold has an
/// orientation class over GF(2), which the duality identities need).
/// Returns the analysis and whether the GF(2) retry was used.
pub fn analyze_auto(
    complex: &SimplicialComplex,
    requested: Option<FieldSpec>,
) -> Result<(ManifoldAnalysis, bool), ManifoldError> {
    match requested {
        Some(field) => Ok((analyze(complex, field)?, false)),
        None => {
            let over_q = analyze(complex, FieldSpec::Rationals)?;
            let needs_retry = !over_q.is_manifold_with_boundary()
                || over_q.is_orientable() == Some(false);
            if !needs_retry {
                return Ok((over_q, false));
            }
            let over_gf2 = analyze(complex, FieldSpec::GF2)?;
            if over_gf2.is_manifold_with_boundary() {
                Ok((over_gf2, true))
            } else {
                Ok((over_q, false))
            }
        }
    }
}

impl ManifoldAnalysis {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn betti(&self) -> &BettiVector {
        &self.betti
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_buchsbaum(&self) -> bool {
        self.buchsbaum
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.cohen_macaulay
    }

    pub fn is_closed_manifold(&self) -> bool {
        self.closed
    }

    pub fn is_manifold_with_boundary(&self) -> bool {
        self.boundary.is_some()
    }

    pub fn is_homology_sphere(&self) -> bool {
        self.sphere
    }

    /// A homology ball: a homology manifold with boundary, acyclic over the
    /// field, whose boundary is a homology sphere of one dimension lower.
    pub fn is_homology_ball(&self) -> bool {
        let Some(boundary) = &self.boundary else {
            return false;
        };
        let acyclic = !self.betti.empty_complex
            && self.global_vanish_below_top
            && self.global_top == 0;
        if !acyclic || boundary.dim() != self.complex.dim() - 1 {
            return false;
        }
        // The boundary is already verified closed; sphere Betti numbers are
        // all that remain. The empty boundary is the (−1)-sphere.
        let Some(b) = &self.boundary_betti else { return false };
        let bd = boundary.dim();
        (-1..bd).all(|j| b.get(j) == 0) && b.get(bd) == 1
    }

    /// Orientability of a closed connected manifold, read off the top Betti
    /// number over the rationals. `None` when the complex is not a closed
    /// connected manifold.
    pub fn is_orientable(&self) -> Option<bool> {
        if !self.closed || !self.connected {
            return None;
        }
        let top = if self.field == FieldSpec::Rationals {
            self.global_top
        } else {
            match betti_numbers(&self.complex, FieldSpec::Rationals) {
                Ok(b) => b.get(self.complex.dim()),
                Err(_) => return None,
            }
        };
        Some(top == 1)
    }

    /// The boundary complex. Errors unless the complex is a homology
    /// manifold with boundary; returns `{∅}` for closed manifolds.
    pub fn boundary_complex(&self) -> Result<&SimplicialComplex, ManifoldError> {
        self.boundary
            .as_ref()
            .ok_or(ManifoldError::NotManifoldWithBoundary(self.field))
    }

    /// Nonempty faces that do not lie on the boundary, in dimension order.
    /// Errors unless the complex is a homology manifold with boundary.
    pub fn interior_faces(&self) -> Result<Vec<Face>, ManifoldError> {
        if self.boundary.is_none() {
            return Err(ManifoldError::NotManifoldWithBoundary(self.field));
        }
        let mut interior = Vec::new();
        for k in 0..=self.complex.dim() {
            for &face in self.complex.faces(k) {
                if !self.boundary_face_set.contains(&face) {
                    interior.push(face);
                }
            }
        }
        Ok(interior)
    }
}

pub fn is_buchsbaum(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool, ManifoldError> {
    Ok(analyze(complex, field)?.is_buchsbaum())
}

pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool, ManifoldError> {
    Ok(analyze(complex, field)?.is_cohen_macaulay())
}

pub fn is_closed_manifold(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool, ManifoldError> {
    Ok(analyze(complex, field)?.is_closed_manifold())
}

pub fn is_manifold_with_boundary(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<bool, ManifoldError> {
    Ok(analyze(complex, field)?.is_manifold_with_boundary())
}

/// Homology-sphere test. Errors on non-pure input, which can never be a
/// manifold and usually signals a malformed facet list.
pub fn is_homology_sphere(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool, ManifoldError> {
    if complex.is_void() {
        return Err(ManifoldError::VoidComplex);
    }
    if !complex.is_pure() {
        return Err(ManifoldError::NotPure);
    }
    Ok(analyze(complex, field)?.is_homology_sphere())
}

pub fn is_homology_ball(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool, ManifoldError> {
    Ok(analyze(complex, field)?.is_homology_ball())
}

pub fn boundary_complex(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<SimplicialComplex, ManifoldError> {
    Ok(analyze(complex, field)?.boundary_complex()?.clone())
}

pub fn interior_faces(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<Vec<Face>, ManifoldError> {
    analyze(complex, field)?.interior_faces()
}
