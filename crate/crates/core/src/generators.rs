//! Deterministic constructors for the example families used throughout the
//! crate: simplex boundaries and full simplices, cyclic-window manifolds,
//! transition-bounded sign-sequence balls, joins of simplex boundaries,
//! seeded stacked spheres, and cross-polytope boundaries.

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' takes {expected} parameters, got {got}")]
    BadParameterCount { family: &'static str, expected: usize, got: usize },
    #[error("{0}")]
    ParameterRange(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A generated complex plus any advisory messages (for parameter choices
/// that build fine but will fail downstream classification).
#[derive(Debug, Clone)]
pub struct Generated {
    pub complex: SimplicialComplex,
    pub warnings: Vec<String>,
}

impl Generated {
    fn clean(complex: SimplicialComplex) -> Generated {
        Generated { complex, warnings: Vec::new() }
    }
}

/// Tiny fixed-constant PRNG (splitmix64). Hand-rolled on purpose: the
/// stacked-sphere generator promises identical output for identical seeds
/// forever, so the stream must not depend on any external crate's version.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough index for small ranges.
    pub fn pick(&mut self, len: usize) -> usize {
        (self.next_u64() % len as u64) as usize
    }
}

/// Boundary of the d-simplex: all d-subsets of `[d+1]`.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::ParameterRange("simplex dimension must be at least 1".into()));
    }
    let n = d + 1;
    let mut facets = Vec::with_capacity(n);
    for skip in 1..=n {
        let facet: Vec<usize> = (1..=n).filter(|&v| v != skip).collect();
        facets.push(facet);
    }
    Ok(SimplicialComplex::from_facets(n, &facets)?)
}

/// The full d-simplex: a single facet `[d+1]`.
pub fn full_simplex(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::ParameterRange("simplex dimension must be at least 1".into()));
    }
    let n = d + 1;
    let facet: Vec<usize> = (1..=n).collect();
    Ok(SimplicialComplex::from_facets(n, &[facet])?)
}

/// Cyclic-window complex: the n facets `{i, i+1, .., i+d-1}` with vertices
/// taken mod n in `[n]`. For `n >= 2d - 1` this is a manifold with boundary;
/// smaller n still builds but earns a warning.
pub fn kuhnel_lassmann(d: usize, n: usize) -> Result<Generated, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::ParameterRange("window size must be at least 1".into()));
    }
    if n < d {
        return Err(GeneratorError::ParameterRange(format!(
            "need at least d = {d} vertices for windows of size {d}, got {n}"
        )));
    }
    let mut facets = Vec::with_capacity(n);
    for i in 0..n {
        let facet: Vec<usize> = (0..d).map(|t| (i + t) % n + 1).collect();
        facets.push(facet);
    }
    let complex = SimplicialComplex::from_facets(n, &facets)?;
    let mut warnings = Vec::new();
    if n < 2 * d - 1 {
        warnings.push(format!(
            "n = {n} is below 2d - 1 = {}; the cyclic-window complex is not a \
             manifold with boundary in this range",
            2 * d - 1
        ));
    }
    Ok(Generated { complex, warnings })
}

/// Transition-bounded sign-sequence ball on vertices `x_1..x_d, y_1..y_d`
/// (mapped to `2j-1` and `2j`): facets are the sequences `(z_1, .., z_d)`,
/// `z_j ∈ {x_j, y_j}`, with at most `i` adjacent alphabet changes among the
/// positions `1..d-1`.
pub fn klee_novik(d: usize, i: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d < 2 {
        return Err(GeneratorError::ParameterRange("need dimension parameter at least 2".into()));
    }
    if i > d - 2 {
        return Err(GeneratorError::ParameterRange(format!(
            "transition bound must be between 0 and d - 2 = {}, got {i}",
            d - 2
        )));
    }
    let mut facets = Vec::new();
    let mut seq: Vec<bool> = Vec::with_capacity(d);
    build_sequences(&mut seq, d, i, &mut facets);
    let facet_lists: Vec<Vec<usize>> = facets
        .iter()
        .map(|seq| {
            seq.iter()
                .enumerate()
                .map(|(j, &y)| if y { 2 * (j + 1) } else { 2 * (j + 1) - 1 })
                .collect()
        })
        .collect();
    Ok(SimplicialComplex::from_facets(2 * d, &facet_lists)?)
}

fn build_sequences(seq: &mut Vec<bool>, d: usize, budget: usize, out: &mut Vec<Vec<bool>>) {
    if seq.len() == d {
        out.push(seq.clone());
        return;
    }
    for next in [false, true] {
        let mut remaining = budget;
        if let Some(&last) = seq.last() {
            if next != last {
                if budget == 0 {
                    continue;
                }
                remaining = budget - 1;
            }
        }
        seq.push(next);
        build_sequences(seq, d, remaining, out);
        seq.pop();
    }
}

/// Join of two simplex boundaries, `∂σ^r` on `[r+1]` and `∂σ^s` on
/// `r+2..r+s+2`.
pub fn join_boundaries(r: usize, s: usize) -> Result<SimplicialComplex, GeneratorError> {
    let left = simplex_boundary(r)?;
    let right_shifted: Vec<Vec<usize>> = {
        let plain = simplex_boundary(s)?;
        plain
            .facets()
            .iter()
            .map(|f| f.vertices().map(|v| v + r + 1).collect())
            .collect()
    };
    let n = r + s + 2;
    let left_on_n: Vec<Vec<usize>> = left.facets().iter().map(|f| f.to_vec()).collect();
    let a = SimplicialComplex::from_facets(n, &left_on_n)?;
    let b = SimplicialComplex::from_facets(n, &right_shifted)?;
    Ok(a.join(&b)?)
}

/// Seeded stacked sphere: start from `∂σ^d` and stellarly subdivide a
/// pseudo-randomly chosen facet with a fresh vertex until the sphere has n
/// vertices. Every output is a 1-stacked homology sphere by construction.
pub fn stacked_sphere(d: usize, n: usize, seed: u64) -> Result<SimplicialComplex, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::ParameterRange("sphere dimension must be at least 1".into()));
    }
    if n < d + 2 {
        return Err(GeneratorError::ParameterRange(format!(
            "a stacked sphere of this dimension needs at least {} vertices, got {n}",
            d + 2
        )));
    }
    let base = simplex_boundary(d)?;
    let mut facets: Vec<Face> = base.facets().to_vec();
    let mut rng = SplitMix64::new(seed);
    let mut vertex_count = d + 1;
    while vertex_count < n {
        let idx = rng.pick(facets.len());
        let old = facets.swap_remove(idx);
        vertex_count += 1;
        let fresh = Face::singleton(vertex_count);
        for v in old.vertices() {
            facets.push(old.remove(v).union(&fresh));
        }
    }
    Ok(SimplicialComplex::from_faces(n, facets)?)
}

/// Boundary of the d-dimensional cross-polytope on `2d` vertices: the
/// antipode pairs are `{2k-1, 2k}` and facets pick one vertex per pair.
pub fn cross_polytope(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d < 1 {
        return Err(GeneratorError::ParameterRange("dimension must be at least 1".into()));
    }
    if d > 20 {
        return Err(GeneratorError::ParameterRange(format!(
            "cross-polytope boundary with d = {d} has 2^{d} facets; refusing to build"
        )));
    }
    let mut facets = Vec::with_capacity(1usize << d);
    for mask in 0u32..(1u32 << d) {
        let facet: Vec<usize> = (0..d)
            .map(|k| if mask >> k & 1 == 1 { 2 * (k + 1) } else { 2 * (k + 1) - 1 })
            .collect();
        facets.push(facet);
    }
    Ok(SimplicialComplex::from_facets(2 * d, &facets)?)
}

/// The generator families, addressable by their kebab-case names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    SimplexBoundary,
    FullSimplex,
    KuhnelLassmann,
    KleeNovik,
    JoinBoundaries,
    StackedSphere,
    CrossPolytope,
}

impl Family {
    pub fn from_name(name: &str) -> Result<Family, GeneratorError> {
        match name {
            "simplex-boundary" => Ok(Family::SimplexBoundary),
            "full-simplex" => Ok(Family::FullSimplex),
            "kuhnel-lassmann" => Ok(Family::KuhnelLassmann),
            "klee-novik" => Ok(Family::KleeNovik),
            "join-boundaries" => Ok(Family::JoinBoundaries),
            "stacked-sphere" => Ok(Family::StackedSphere),
            "cross-polytope" => Ok(Family::CrossPolytope),
            other => Err(GeneratorError::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::SimplexBoundary => "simplex-boundary",
            Family::FullSimplex => "full-simplex",
            Family::KuhnelLassmann => "kuhnel-lassmann",
            Family::KleeNovik => "klee-novik",
            Family::JoinBoundaries => "join-boundaries",
            Family::StackedSphere => "stacked-sphere",
            Family::CrossPolytope => "cross-polytope",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Family::SimplexBoundary | Family::FullSimplex | Family::CrossPolytope => 1,
            _ => 2,
        }
    }

    /// Builds the family member. The seed only affects `stacked-sphere`.
    pub fn build(&self, params: &[usize], seed: Option<u64>) -> Result<Generated, GeneratorError> {
        if params.len() != self.arity() {
            return Err(GeneratorError::BadParameterCount {
                family: self.name(),
                expected: self.arity(),
                got: params.len(),
            });
        }
        match self {
            Family::SimplexBoundary => Ok(Generated::clean(simplex_boundary(params[0])?)),
            Family::FullSimplex => Ok(Generated::clean(full_simplex(params[0])?)),
            Family::KuhnelLassmann => kuhnel_lassmann(params[0], params[1]),
            Family::KleeNovik => Ok(Generated::clean(klee_novik(params[0], params[1])?)),
            Family::JoinBoundaries => Ok(Generated::clean(join_boundaries(params[0], params[1])?)),
            Family::StackedSphere => Ok(Generated::clean(stacked_sphere(
                params[0],
                params[1],
                seed.unwrap_or(0),
            )?)),
            Family::CrossPolytope => Ok(Generated::clean(cross_polytope(params[0])?)),
        }
    }
}
