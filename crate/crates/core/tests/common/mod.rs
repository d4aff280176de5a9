//! Shared helpers for the integration tests: dense, subset-based
//! reimplementations of face enumeration, homology ranks, and the h-vector
//! transform. Everything here is deliberately written with different data
//! structures and algorithms than the library (BTreeSet faces instead of
//! bitsets, dense fraction-free elimination instead of sparse field
//! elimination, polynomial expansion instead of binomial sums) so the two
//! sides check each other.

#![allow(dead_code)]

use num::{BigInt, One, Zero};
use rstacked::{Face, FieldSpec, SimplicialComplex};
use std::collections::BTreeSet;

pub type VSet = BTreeSet<usize>;

pub fn vset(vs: &[usize]) -> VSet {
    vs.iter().copied().collect()
}

pub fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

// ---------------------------------------------------------------------------
// face machinery on BTreeSet vertex sets

/// Downward closure of a facet list, empty face included.
pub fn closure(facets: &[Vec<usize>]) -> BTreeSet<VSet> {
    let mut out: BTreeSet<VSet> = BTreeSet::new();
    for facet in facets {
        let verts: Vec<usize> = facet.clone();
        let m = verts.len();
        for mask in 0u32..(1 << m) {
            let sub: VSet = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
            out.insert(sub);
        }
    }
    out.insert(VSet::new());
    out
}

/// Face counts by cardinality: `out[c]` is the number of faces with `c`
/// vertices, so `out[0] = 1` counts the empty face.
pub fn oracle_f_vector(faces: &BTreeSet<VSet>) -> Vec<i64> {
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut out = vec![0i64; top + 1];
    for f in faces {
        out[f.len()] += 1;
    }
    out
}

/// lk(F): faces disjoint from F whose union with F is a face.
pub fn oracle_link(faces: &BTreeSet<VSet>, f: &VSet) -> BTreeSet<VSet> {
    let mut out = BTreeSet::new();
    for g in faces {
        if g.is_disjoint(f) {
            let u: VSet = g.union(f).copied().collect();
            if faces.contains(&u) {
                out.insert(g.clone());
            }
        }
    }
    out
}

fn support(faces: &BTreeSet<VSet>) -> Vec<usize> {
    let mut s: BTreeSet<usize> = BTreeSet::new();
    for f in faces {
        s.extend(f.iter().copied());
    }
    s.into_iter().collect()
}

fn subsets_of_support(faces: &BTreeSet<VSet>) -> Vec<VSet> {
    let verts = support(faces);
    let m = verts.len();
    assert!(m <= 20, "oracle subset enumeration is for small complexes");
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0u32..(1 << m) {
        out.push((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect());
    }
    out
}

/// Minimal non-faces: S not in the complex with every S minus a vertex in it.
pub fn oracle_missing_faces(faces: &BTreeSet<VSet>) -> BTreeSet<VSet> {
    let mut out = BTreeSet::new();
    for s in subsets_of_support(faces) {
        if s.is_empty() || faces.contains(&s) {
            continue;
        }
        let minimal = s.iter().all(|v| {
            let mut t = s.clone();
            t.remove(v);
            faces.contains(&t)
        });
        if minimal {
            out.insert(s);
        }
    }
    out
}

/// All vertex sets whose r-skeleton lies in the complex: every subset with
/// at most r+1 vertices must be a face.
pub fn oracle_delta_r(faces: &BTreeSet<VSet>, r: usize) -> BTreeSet<VSet> {
    let mut out = BTreeSet::new();
    'outer: for s in subsets_of_support(faces) {
        let verts: Vec<usize> = s.iter().copied().collect();
        let m = verts.len();
        if m <= 20 {
            for mask in 0u32..(1 << m) {
                if (mask.count_ones() as usize) > r + 1 {
                    continue;
                }
                let sub: VSet =
                    (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
                if !faces.contains(&sub) {
                    continue 'outer;
                }
            }
        }
        out.insert(s);
    }
    out
}

/// Faces of dimension at most r (cardinality at most r+1).
pub fn oracle_skeleton(faces: &BTreeSet<VSet>, r: i32) -> BTreeSet<VSet> {
    faces.iter().filter(|f| f.len() as i32 <= r + 1).cloned().collect()
}

// ---------------------------------------------------------------------------
// dense homology oracle

/// Dense signed boundary matrix from cardinality-c faces to cardinality-(c-1)
/// faces. Including the empty face as the single cardinality-0 face makes
/// c = 1 the augmentation map, so ranks feed reduced Betti numbers directly.
fn dense_boundary(by_card: &[Vec<VSet>], c: usize) -> Vec<Vec<i64>> {
    let rows = &by_card[c - 1];
    let cols = &by_card[c];
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, col) in cols.iter().enumerate() {
        for (pos, v) in col.iter().enumerate() {
            let mut r = col.clone();
            r.remove(v);
            let i = rows.binary_search(&r).expect("closure is downward closed");
            m[i][j] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Rank over the rationals by fraction-free (Bareiss) elimination on exact
/// integers.
fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 || m[0].is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        rank += 1;
        r += 1;
        if r == rows {
            break;
        }
    }
    rank
}

fn rank_mod_p(mut m: Vec<Vec<i64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 || m[0].is_empty() {
        return 0;
    }
    let p = p as i64;
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let modpow = |mut b: i64, mut e: i64| -> i64 {
        let mut acc = 1i64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let cols = m[0].len();
    let mut rank = 0;
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = modpow(m[r][c], p - 2);
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let factor = m[i][c] * inv % p;
            let pivot_row = m[r].clone();
            for (j, &prj) in pivot_row.iter().enumerate().skip(c) {
                m[i][j] = (m[i][j] - factor * prj).rem_euclid(p);
            }
        }
        rank += 1;
        r += 1;
        if r == rows {
            break;
        }
    }
    rank
}

/// Reduced Betti numbers from dense boundary ranks; `None` means rationals,
/// `Some(p)` a prime field. Index k is the degree-k reduced Betti number.
pub fn oracle_betti(facets: &[Vec<usize>], p: Option<u64>) -> Vec<usize> {
    let faces = closure(facets);
    let top = faces.iter().map(|f| f.len()).max().expect("empty face always present");
    if top == 0 {
        return Vec::new();
    }
    let mut by_card: Vec<Vec<VSet>> = vec![Vec::new(); top + 1];
    for f in &faces {
        by_card[f.len()].push(f.clone());
    }
    for bucket in by_card.iter_mut() {
        bucket.sort();
    }
    // ranks[c] = rank of the map leaving cardinality c, c = 1..=top
    let mut ranks = vec![0usize; top + 2];
    for (c, slot) in ranks.iter_mut().enumerate().skip(1).take(top) {
        let dense = dense_boundary(&by_card, c);
        *slot = match p {
            None => rank_bareiss(
                dense.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            ),
            Some(p) => rank_mod_p(dense, p),
        };
    }
    // reduced degree k lives at cardinality k+1
    (1..=top).map(|c| by_card[c].len() - ranks[c] - ranks[c + 1]).collect()
}

// ---------------------------------------------------------------------------
// enumerative oracles

fn comb(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// h-vector by polynomial expansion: coefficients of
/// sum_i f_{i-1} t^i (1-t)^(d-i), with `f[i]` the count of (i-1)-faces.
pub fn h_poly_oracle(f: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        let fi = f.get(i).cloned().unwrap_or_default();
        if fi.is_zero() {
            continue;
        }
        for j in 0..=(d - i) {
            let term = &fi * comb(d - i, j);
            if j % 2 == 0 {
                out[i + j] += term;
            } else {
                out[i + j] -= term;
            }
        }
    }
    out
}

/// Reduced Betti numbers of the product of an a-sphere and a b-sphere,
/// indexed 0..=a+b.
pub fn sphere_product_betti(a: usize, b: usize) -> Vec<usize> {
    let mut v = vec![0usize; a + b + 1];
    v[a] += 1;
    v[b] += 1;
    v[a + b] += 1;
    v
}

// ---------------------------------------------------------------------------
// adapters between the two representations

pub fn complex_of(n: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, facets).expect("test fixture in range")
}

pub fn face_to_set(f: &Face) -> VSet {
    f.vertices().collect()
}

/// Every face of the complex, empty face included.
pub fn library_faces(c: &SimplicialComplex) -> BTreeSet<VSet> {
    let mut out = BTreeSet::new();
    for k in -1..=c.dim() {
        for f in c.faces(k) {
            out.insert(face_to_set(f));
        }
    }
    out
}

pub fn facet_sets(c: &SimplicialComplex) -> BTreeSet<VSet> {
    c.facets().iter().map(face_to_set).collect()
}

pub fn facet_vecs(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    c.facets().iter().map(|f| f.to_vec()).collect()
}

pub fn betti_vec(c: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    rstacked::homology::betti_numbers(c, field).expect("betti on test fixture").betti
}

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

// ---------------------------------------------------------------------------
// fixture builders

pub fn kl(d: usize, n: usize) -> SimplicialComplex {
    rstacked::generators::kuhnel_lassmann(d, n).expect("in range").complex
}

pub fn kn(d: usize, i: usize) -> SimplicialComplex {
    rstacked::generators::klee_novik(d, i).expect("in range")
}

pub fn boundary_of(c: &SimplicialComplex, field: FieldSpec) -> SimplicialComplex {
    rstacked::manifold::boundary_complex(c, field).expect("manifold fixture")
}

pub fn rp2() -> SimplicialComplex {
    complex_of(
        6,
        &[
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![1, 5, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
            vec![2, 5, 6],
            vec![3, 4, 5],
            vec![3, 4, 6],
        ],
    )
}

// ---------------------------------------------------------------------------
// minimal JSON schema walker (type / properties / required /
// additionalProperties / items / enum / oneOf / internal $ref)

pub fn validate_schema(value: &serde_json::Value, schema: &serde_json::Value) -> Result<(), String> {
    Walker { root: schema }.walk(value, schema, "$")
}

struct Walker<'a> {
    root: &'a serde_json::Value,
}

impl<'a> Walker<'a> {
    fn resolve(&self, reference: &str) -> &'a serde_json::Value {
        let path = reference.strip_prefix("#/").expect("internal reference");
        let mut node = self.root;
        for step in path.split('/') {
            node = node.get(step).expect("reference target exists");
        }
        node
    }

    fn walk(
        &self,
        value: &serde_json::Value,
        schema: &serde_json::Value,
        path: &str,
    ) -> Result<(), String> {
        let obj =
            schema.as_object().ok_or_else(|| format!("{path}: schema node is not an object"))?;
        if let Some(reference) = obj.get("$ref") {
            let target = self.resolve(reference.as_str().expect("string reference"));
            return self.walk(value, target, path);
        }
        if let Some(one_of) = obj.get("oneOf") {
            let arms = one_of.as_array().expect("oneOf is an array");
            let hits = arms.iter().filter(|arm| self.walk(value, arm, path).is_ok()).count();
            if hits != 1 {
                return Err(format!("{path}: oneOf matched {hits} arms, expected exactly 1"));
            }
            return Ok(());
        }
        if let Some(ty) = obj.get("type") {
            let ok = match ty {
                serde_json::Value::String(s) => type_matches(value, s),
                serde_json::Value::Array(alts) => {
                    alts.iter().any(|s| type_matches(value, s.as_str().expect("type name")))
                }
                _ => panic!("bad type node"),
            };
            if !ok {
                return Err(format!("{path}: value does not match type {ty}"));
            }
        }
        if let Some(allowed) = obj.get("enum") {
            let arr = allowed.as_array().expect("enum is an array");
            if !arr.contains(value) {
                return Err(format!("{path}: value {value} not in enum"));
            }
        }
        if let Some(props) = obj.get("properties") {
            let props = props.as_object().expect("properties is an object");
            if let Some(map) = value.as_object() {
                if let Some(required) = obj.get("required") {
                    for key in required.as_array().expect("required is an array") {
                        let key = key.as_str().expect("required key");
                        if !map.contains_key(key) {
                            return Err(format!("{path}: missing required key {key}"));
                        }
                    }
                }
                let extra_ok =
                    obj.get("additionalProperties").and_then(|v| v.as_bool()).unwrap_or(true);
                for (key, sub) in map {
                    match props.get(key) {
                        Some(subschema) => self.walk(sub, subschema, &format!("{path}.{key}"))?,
                        None if !extra_ok => {
                            return Err(format!("{path}: unexpected key {key}"));
                        }
                        None => {}
                    }
                }
            }
        }
        if let Some(items) = obj.get("items") {
            if let Some(arr) = value.as_array() {
                for (i, item) in arr.iter().enumerate() {
                    self.walk(item, items, &format!("{path}[{i}]"))?;
                }
            }
        }
        Ok(())
    }
}

fn type_matches(value: &serde_json::Value, ty: &str) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        other => panic!("unknown schema type {other}"),
    }
}
