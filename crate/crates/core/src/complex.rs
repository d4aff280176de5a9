//! Simplicial complexes on a fixed vertex universe `[n] = {1, .., n}`.
//!
//! A complex is stored by its facets (inclusion-maximal faces); the full face
//! list per dimension is derived lazily and memoized. Faces are bitsets, so
//! subset tests, links and joins are word operations. The universe is capped
//! at [`MAX_VERTICES`] so a face always fits in one `u128`.
//!
//! The void complex (no faces at all) and the empty complex `{∅}` (one face,
//! the empty set) are distinct values and both representable.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use thiserror::Error;

/// Hard cap on the vertex universe; faces are single-word bitsets.
pub const MAX_VERTICES: usize = 128;

/// Default node budget for the face-reconstruction search in
/// [`SimplicialComplex::delta_r`].
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("universe size {n} exceeds the supported maximum {max}")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("duplicate vertex {vertex} inside one facet")]
    DuplicateVertex { vertex: usize },
    #[error("face {face} is not in the complex")]
    FaceNotInComplex { face: String },
    #[error("vertex {vertex} is not a vertex of the complex")]
    NotAVertex { vertex: usize },
    #[error("cone apex {vertex} is already a vertex of the base")]
    ApexInBase { vertex: usize },
    #[error("vertex supports overlap on {vertex}")]
    OverlappingSupports { vertex: usize },
    #[error("universe size mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },
    #[error("face reconstruction search exceeded its node budget of {cap}")]
    SearchBudgetExceeded { cap: usize },
}

/// A face: a set of vertices drawn from `1..=MAX_VERTICES`, stored as a
/// bitset (vertex `v` occupies bit `v - 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u128) -> Face {
        Face(bits)
    }

    pub fn bits(&self) -> u128 {
        self.0
    }

    /// Builds a face from a vertex list, rejecting out-of-range vertices and
    /// duplicates.
    pub fn from_vertices<I>(vertices: I, n: usize) -> Result<Face, ComplexError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits: u128 = 0;
        for v in vertices {
            if v == 0 || v > n {
                return Err(ComplexError::VertexOutOfRange { vertex: v, n });
            }
            let bit = 1u128 << (v - 1);
            if bits & bit != 0 {
                return Err(ComplexError::DuplicateVertex { vertex: v });
            }
            bits |= bit;
        }
        Ok(Face(bits))
    }

    pub fn singleton(v: usize) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1u128 << (v - 1))
    }

    pub fn card(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Dimension: cardinality minus one, so the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.card() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u128 << (v - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn insert(&self, v: usize) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(self.0 | (1u128 << (v - 1)))
    }

    pub fn remove(&self, v: usize) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(self.0 & !(1u128 << (v - 1)))
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> FaceVertices {
        FaceVertices(self.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.vertices().collect()
    }
}

pub struct FaceVertices(u128);

impl Iterator for FaceVertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

// Faces sort lexicographically by their ascending vertex lists, which is the
// order facet files are written in.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0;
        let mut b = other.0;
        loop {
            if a == b {
                return Ordering::Equal;
            }
            if a == 0 {
                return Ordering::Less;
            }
            if b == 0 {
                return Ordering::Greater;
            }
            let ta = a.trailing_zeros();
            let tb = b.trailing_zeros();
            match ta.cmp(&tb) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                unequal => return unequal,
            }
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An abstract simplicial complex on the universe `[n]`, represented by its
/// facets. Values are immutable: every operation returns a new complex.
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
    dim: i32,
    // face cache, slot k+1 holds the faces of dimension k
    cache: Vec<OnceLock<Vec<Face>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            n: self.n,
            facets: self.facets.clone(),
            dim: self.dim,
            cache: self.cache.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets=", self.n)?;
        f.debug_list().entries(self.facets.iter()).finish()?;
        write!(f, ")")
    }
}

/// Keeps the maximal elements of `faces`, sorted canonically.
fn antichain(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.card()));
    faces.dedup();
    let mut maximal: Vec<Face> = Vec::with_capacity(faces.len());
    for face in faces {
        if !maximal.iter().any(|m| face.is_subset_of(m)) {
            maximal.push(face);
        }
    }
    maximal.sort();
    maximal.dedup();
    maximal
}

impl SimplicialComplex {
    /// The void complex: no faces at all, not even the empty face.
    pub fn void(n: usize) -> Result<SimplicialComplex, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::UniverseTooLarge { n, max: MAX_VERTICES });
        }
        Ok(SimplicialComplex { n, facets: Vec::new(), dim: -1, cache: Vec::new() })
    }

    /// The empty complex `{∅}`: exactly one face, the empty set.
    pub fn empty_complex(n: usize) -> Result<SimplicialComplex, ComplexError> {
        Self::from_faces(n, vec![Face::EMPTY])
    }

    /// Builds the complex generated by the given facets. Duplicate facets and
    /// non-maximal entries are dropped; an empty list yields the void complex.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::UniverseTooLarge { n, max: MAX_VERTICES });
        }
        let mut faces = Vec::with_capacity(facets.len());
        for facet in facets {
            faces.push(Face::from_vertices(facet.iter().copied(), n)?);
        }
        Self::from_faces(n, faces)
    }

    /// Like [`from_facets`](Self::from_facets) but from bitset faces.
    pub fn from_faces(n: usize, faces: Vec<Face>) -> Result<SimplicialComplex, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::UniverseTooLarge { n, max: MAX_VERTICES });
        }
        for face in &faces {
            if let Some(v) = face.vertices().last() {
                if v > n {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        let facets = antichain(faces);
        if facets.is_empty() {
            return Self::void(n);
        }
        let dim = facets.iter().map(Face::dim).max().unwrap();
        let slots = (dim + 2) as usize;
        SimplicialComplex::new_internal(n, facets, dim, slots)
    }

    fn new_internal(
        n: usize,
        facets: Vec<Face>,
        dim: i32,
        slots: usize,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut cache = Vec::with_capacity(slots);
        cache.resize_with(slots, OnceLock::new);
        Ok(SimplicialComplex { n, facets, dim, cache })
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the complex; -1 for the empty complex `{∅}`.
    /// Meaningless for the void complex (check [`is_void`](Self::is_void)).
    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// True exactly for `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// Facets in canonical order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// All faces of dimension `k`, canonically ordered. Out-of-range `k`
    /// yields the empty slice; `k = -1` yields `[∅]` for non-void complexes.
    pub fn faces(&self, k: i32) -> &[Face] {
        static NONE: Vec<Face> = Vec::new();
        if self.is_void() || k < -1 || k > self.dim {
            return &NONE;
        }
        self.cache[(k + 1) as usize].get_or_init(|| self.compute_faces(k))
    }

    fn compute_faces(&self, k: i32) -> Vec<Face> {
        if k == -1 {
            return vec![Face::EMPTY];
        }
        let want = (k + 1) as usize;
        let mut set = BTreeSet::new();
        for facet in &self.facets {
            if facet.card() < want {
                continue;
            }
            if facet.card() == want {
                set.insert(*facet);
                continue;
            }
            let verts = facet.to_vec();
            for combo in verts.iter().combinations(want) {
                let mut bits = 0u128;
                for &&v in &combo {
                    bits |= 1u128 << (v - 1);
                }
                set.insert(Face(bits));
            }
        }
        set.into_iter().collect()
    }

    pub fn face_count(&self, k: i32) -> usize {
        self.faces(k).len()
    }

    /// Face counts `(f_{-1}, f_0, .., f_dim)`. Empty for the void complex.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.is_void() {
            return Vec::new();
        }
        (-1..=self.dim).map(|k| self.face_count(k)).collect()
    }

    pub fn contains(&self, face: &Face) -> bool {
        if self.is_void() {
            return false;
        }
        self.facets.iter().any(|m| face.is_subset_of(m))
    }

    /// Bitset of vertices that actually appear in some face.
    pub fn support(&self) -> Face {
        let mut bits = 0u128;
        for f in &self.facets {
            bits |= f.bits();
        }
        Face(bits)
    }

    /// Used vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.support().to_vec()
    }

    /// Universe vertices that appear in no face.
    pub fn unused_vertices(&self) -> Vec<usize> {
        let used = self.support();
        (1..=self.n).filter(|&v| !used.has_vertex(v)).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.dim() == self.dim)
    }

    /// Connectivity of the facet graph (facets adjacent when they share a
    /// vertex), which matches topological connectivity. Complexes without
    /// vertices count as connected.
    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        if verts.is_empty() {
            return true;
        }
        // union-find over used vertices
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let index_of = |v: usize| verts.binary_search(&v).unwrap();
        for facet in &self.facets {
            let mut it = facet.vertices();
            if let Some(first) = it.next() {
                let fi = index_of(first);
                for v in it {
                    let (a, b) = (find(&mut parent, fi), find(&mut parent, index_of(v)));
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, 0);
        (1..verts.len()).all(|i| find(&mut parent, i) == root)
    }

    /// Link of `face`: all `G` disjoint from `face` with `G ∪ face` in the
    /// complex. Lives on the same universe.
    pub fn link(&self, face: &Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(face) {
            return Err(ComplexError::FaceNotInComplex { face: face.to_string() });
        }
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|m| face.is_subset_of(m))
            .map(|m| m.difference(face))
            .collect();
        SimplicialComplex::from_faces(self.n, facets)
    }

    /// Closed star of a vertex: the subcomplex generated by the facets
    /// containing it.
    pub fn star(&self, v: usize) -> Result<SimplicialComplex, ComplexError> {
        if v == 0 || v > self.n {
            return Err(ComplexError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if !self.contains(&Face::singleton(v)) {
            return Err(ComplexError::NotAVertex { vertex: v });
        }
        let facets: Vec<Face> = self.facets.iter().filter(|m| m.has_vertex(v)).copied().collect();
        SimplicialComplex::from_faces(self.n, facets)
    }

    /// Cone over this complex with the given apex, which must not already be
    /// a vertex. `cone({∅}) = {{apex}}`; the cone over the void complex is void.
    pub fn cone(&self, apex: usize) -> Result<SimplicialComplex, ComplexError> {
        if apex == 0 || apex > self.n {
            return Err(ComplexError::VertexOutOfRange { vertex: apex, n: self.n });
        }
        if self.support().has_vertex(apex) {
            return Err(ComplexError::ApexInBase { vertex: apex });
        }
        let facets: Vec<Face> = self.facets.iter().map(|m| m.insert(apex)).collect();
        SimplicialComplex::from_faces(self.n, facets)
    }

    /// Join of two complexes on the same universe with disjoint supports.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        if self.n != other.n {
            return Err(ComplexError::UniverseMismatch { left: self.n, right: other.n });
        }
        let overlap = self.support().intersection(&other.support());
        if let Some(v) = overlap.vertices().next() {
            return Err(ComplexError::OverlappingSupports { vertex: v });
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(b));
            }
        }
        SimplicialComplex::from_faces(self.n, facets)
    }

    /// Union of the face sets of two complexes on the same universe.
    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        if self.n != other.n {
            return Err(ComplexError::UniverseMismatch { left: self.n, right: other.n });
        }
        let mut facets = self.facets.clone();
        facets.extend_from_slice(&other.facets);
        SimplicialComplex::from_faces(self.n, facets)
    }

    /// The subcomplex of faces of dimension at most `r` (clamped to -1, so
    /// every non-void complex has `skeleton(-1) = {∅}`).
    pub fn skeleton(&self, r: i32) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        let r = r.max(-1);
        if r >= self.dim {
            return self.clone();
        }
        let mut facets: Vec<Face> = self.faces(r).to_vec();
        facets.extend(self.facets.iter().filter(|m| m.dim() < r));
        SimplicialComplex::from_faces(self.n, facets).expect("faces are in range")
    }

    /// All vertex sets whose subsets of cardinality at most `r + 1` are all
    /// faces, with the default search budget. See [`delta_r_with_cap`](Self::delta_r_with_cap).
    pub fn delta_r(&self, r: usize) -> Result<SimplicialComplex, ComplexError> {
        self.delta_r_with_cap(r, DEFAULT_SEARCH_CAP)
    }

    /// The complex `{F ⊆ [n] : every subset of F with at most r+1 vertices is
    /// a face}`. Its facets are found by extending candidate sets in
    /// ascending vertex order, branch-and-bound style; `cap` bounds the number
    /// of search nodes visited.
    pub fn delta_r_with_cap(&self, r: usize, cap: usize) -> Result<SimplicialComplex, ComplexError> {
        if self.is_void() || self.is_empty_complex() {
            return Ok(self.clone());
        }
        let support = self.vertices();
        if r == 0 {
            // Every subset of the support qualifies.
            let full: Vec<usize> = support;
            return SimplicialComplex::from_facets(self.n, &[full]);
        }
        let mut out: Vec<Face> = Vec::new();
        let mut nodes: usize = 0;
        self.extend_admissible(Face::EMPTY, support, Vec::new(), r, cap, &mut nodes, &mut out)?;
        SimplicialComplex::from_faces(self.n, out)
    }

    /// True when `set ∪ {v}` stays admissible for the `delta_r` search,
    /// given that `set` itself is admissible.
    fn admissible_extension(&self, set: &Face, v: usize, r: usize) -> bool {
        let card = set.card();
        if card <= r {
            return self.contains(&set.insert(v));
        }
        // every r-subset of `set`, extended by v, must be a face
        let verts = set.to_vec();
        for combo in verts.iter().combinations(r) {
            let mut bits = 1u128 << (v - 1);
            for &&u in &combo {
                bits |= 1u128 << (u - 1);
            }
            if !self.contains(&Face::from_bits(bits)) {
                return false;
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_admissible(
        &self,
        current: Face,
        mut candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        r: usize,
        cap: usize,
        nodes: &mut usize,
        out: &mut Vec<Face>,
    ) -> Result<(), ComplexError> {
        *nodes += 1;
        if *nodes > cap {
            return Err(ComplexError::SearchBudgetExceeded { cap });
        }
        if candidates.is_empty() && excluded.is_empty() {
            out.push(current);
            return Ok(());
        }
        while !candidates.is_empty() {
            let v = candidates.remove(0);
            let next = current.insert(v);
            let next_candidates: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&u| self.admissible_extension(&next, u, r))
                .collect();
            let next_excluded: Vec<usize> = excluded
                .iter()
                .copied()
                .filter(|&u| self.admissible_extension(&next, u, r))
                .collect();
            self.extend_admissible(next, next_candidates, next_excluded, r, cap, nodes, out)?;
            excluded.push(v);
        }
        Ok(())
    }

    /// Minimal non-faces: sets not in the complex all of whose proper subsets
    /// are. Singletons of unused universe vertices qualify.
    pub fn missing_faces(&self) -> Vec<Face> {
        if self.is_void() {
            return Vec::new();
        }
        let mut found = BTreeSet::new();
        // only vertices actually present; unused universe slots are not
        // missing vertices
        let verts = self.vertices();
        for k in -1..=self.dim {
            for face in self.faces(k) {
                for &v in &verts {
                    if face.has_vertex(v) {
                        continue;
                    }
                    let candidate = face.insert(v);
                    if self.contains(&candidate) || found.contains(&candidate) {
                        continue;
                    }
                    let minimal = candidate
                        .vertices()
                        .all(|u| self.contains(&candidate.remove(u)));
                    if minimal {
                        found.insert(candidate);
                    }
                }
            }
        }
        found.into_iter().collect()
    }
}
