//! Finite simplicial complexes on labeled vertices.
//!
//! A complex is stored by its facets (maximal faces) over a canonical,
//! sorted vertex label list; faces are enumerated lazily per cardinality.
//! The void complex (no faces at all) is distinguished from the complex
//! whose only face is the empty set, since reduced homology and Alexander
//! duality treat them differently.

use crate::matroid::Matroid;
use crate::subset::Subset;
use itertools::Itertools;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

/// Vertex labels: ground-set elements, flats of a lattice, a cone apex, or
/// anonymous indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Elem(u32),
    Flat(Subset),
    Apex,
    Anon(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Elem(e) => write!(f, "e{e}"),
            Label::Flat(s) => write!(f, "{s}"),
            Label::Apex => write!(f, "apex"),
            Label::Anon(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ComplexError {
    #[error("{0} is not a face of the complex")]
    FaceNotInComplex(String),
    #[error("join operands share the vertex label {0}")]
    JoinOverlap(String),
    #[error("complex has {0} vertices; at most 128 are supported")]
    TooManyVertices(usize),
}

/// A finite simplicial complex with at most 128 vertices.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    facets: Vec<u128>,
    faces: OnceLock<Vec<Vec<u128>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}
impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex({} vertices, {} facets, dim {:?})",
            self.labels.len(),
            self.facets.len(),
            self.dim()
        )
    }
}

impl SimplicialComplex {
    /// The void complex: no faces at all, not even the empty one.
    pub fn void() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
            faces: OnceLock::new(),
        }
    }

    /// The complex whose only face is the empty set.
    pub fn empty_face_only() -> Self {
        Self::from_labeled_facets(&[Vec::new()]).unwrap()
    }

    /// A single point.
    pub fn point(label: Label) -> Self {
        Self::from_labeled_facets(&[vec![label]]).unwrap()
    }

    /// Builds a complex from faces given as label sets; dominated faces are
    /// dropped, vertex labels are sorted canonically.
    pub fn from_labeled_facets(facets: &[Vec<Label>]) -> Result<Self, ComplexError> {
        let mut labels: Vec<Label> = facets.iter().flatten().cloned().collect();
        labels.sort();
        labels.dedup();
        if labels.len() > 128 {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        let index = |l: &Label| labels.binary_search(l).unwrap();
        let mut masks: Vec<u128> = facets
            .iter()
            .map(|f| f.iter().fold(0u128, |m, l| m | (1u128 << index(l))))
            .collect();
        masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        let mut kept: Vec<u128> = Vec::new();
        for m in masks {
            if !kept.iter().any(|&k| m & !k == 0) {
                kept.push(m);
            }
        }
        kept.sort_unstable();
        Ok(SimplicialComplex {
            labels,
            facets: kept,
            faces: OnceLock::new(),
        })
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension: None for the void complex, -1 for the empty-face complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|m| m.count_ones() as i64 - 1)
            .max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .map(|m| m.count_ones())
            .all_equal()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn facet_masks(&self) -> &[u128] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn labels_of_mask(&self, mask: u128) -> Vec<Label> {
        (0..self.labels.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn facets_as_labels(&self) -> Vec<Vec<Label>> {
        self.facets.iter().map(|&m| self.labels_of_mask(m)).collect()
    }

    /// The vertex mask of labels actually used by some facet.
    pub fn support_mask(&self) -> u128 {
        self.facets.iter().fold(0, |a, &m| a | m)
    }

    /// Translates a label set into a vertex mask, if all labels exist.
    pub fn mask_of_labels(&self, face: &[Label]) -> Option<u128> {
        let mut m = 0u128;
        for l in face {
            m |= 1u128 << self.labels.binary_search(l).ok()?;
        }
        Some(m)
    }

    pub fn is_face_mask(&self, mask: u128) -> bool {
        self.facets.iter().any(|&f| mask & !f == 0) && !self.is_void()
    }

    pub fn is_face(&self, face: &[Label]) -> bool {
        match self.mask_of_labels(face) {
            Some(m) => self.is_face_mask(m),
            None => false,
        }
    }

    /// All faces grouped by cardinality (index = number of vertices; entry 0
    /// is the empty face). Void complex yields an empty list.
    pub fn faces_by_card(&self) -> &Vec<Vec<u128>> {
        self.faces.get_or_init(|| {
            if self.facets.is_empty() {
                return Vec::new();
            }
            let maxc = self.facets.iter().map(|m| m.count_ones()).max().unwrap() as usize;
            let mut sets: Vec<HashSet<u128>> = vec![HashSet::new(); maxc + 1];
            for &f in &self.facets {
                // Enumerate all submasks of f.
                let mut s = f;
                loop {
                    sets[s.count_ones() as usize].insert(s);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & f;
                }
            }
            sets.into_iter()
                .map(|set| {
                    let mut v: Vec<u128> = set.into_iter().collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces_by_card().iter().map(|v| v.len()).sum()
    }

    /// Link of a face: all faces disjoint from it whose union with it is a
    /// face.
    pub fn link(&self, face: &[Label]) -> Result<Self, ComplexError> {
        let mask = self
            .mask_of_labels(face)
            .filter(|&m| self.is_face_mask(m))
            .ok_or_else(|| ComplexError::FaceNotInComplex(label_set_string(face)))?;
        let facets: Vec<Vec<Label>> = self
            .facets
            .iter()
            .filter(|&&f| mask & !f == 0)
            .map(|&f| self.labels_of_mask(f & !mask))
            .collect();
        Self::from_labeled_facets(&facets)
    }

    /// Closed star of a face: all facets containing it.
    pub fn star(&self, face: &[Label]) -> Result<Self, ComplexError> {
        let mask = self
            .mask_of_labels(face)
            .filter(|&m| self.is_face_mask(m))
            .ok_or_else(|| ComplexError::FaceNotInComplex(label_set_string(face)))?;
        let facets: Vec<Vec<Label>> = self
            .facets
            .iter()
            .filter(|&&f| mask & !f == 0)
            .map(|&f| self.labels_of_mask(f))
            .collect();
        Self::from_labeled_facets(&facets)
    }

    /// Faces that avoid every vertex in the given label set.
    pub fn delete_labels(&self, gone: &[Label]) -> Self {
        if self.is_void() {
            return Self::void();
        }
        let gone: HashSet<&Label> = gone.iter().collect();
        let facets: Vec<Vec<Label>> = self
            .facets
            .iter()
            .map(|&f| {
                self.labels_of_mask(f)
                    .into_iter()
                    .filter(|l| !gone.contains(l))
                    .collect()
            })
            .collect();
        Self::from_labeled_facets(&facets).unwrap()
    }

    /// Deletion of a subcomplex: the faces avoiding every vertex used by it.
    pub fn delete(&self, sub: &SimplicialComplex) -> Result<Self, ComplexError> {
        if !sub.is_subcomplex_of(self) {
            return Err(ComplexError::FaceNotInComplex(
                "a face of the deleted complex".to_string(),
            ));
        }
        let support = sub.labels_of_mask(sub.support_mask());
        Ok(self.delete_labels(&support))
    }

    /// True when every face of self (matched by label) is a face of other.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        if self.is_void() {
            return true;
        }
        if other.is_void() {
            return false;
        }
        self.facets.iter().all(|&f| {
            let ls = self.labels_of_mask(f);
            other.is_face(&ls)
        })
    }

    /// Simplicial join; the operands must use disjoint vertex labels.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self, ComplexError> {
        for l in &self.labels {
            if other.labels.binary_search(l).is_ok() {
                return Err(ComplexError::JoinOverlap(l.to_string()));
            }
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &f in &self.facets {
            for &g in &other.facets {
                let mut fl = self.labels_of_mask(f);
                fl.extend(other.labels_of_mask(g));
                facets.push(fl);
            }
        }
        Self::from_labeled_facets(&facets)
    }

    /// Cone with a fresh apex vertex. The cone over the empty space is a
    /// point.
    pub fn cone(&self) -> Result<Self, ComplexError> {
        if self.is_void() {
            return Ok(Self::point(Label::Apex));
        }
        Self::point(Label::Apex).join(self)
    }

    /// Combinatorial Alexander dual inside the given ground set: all subsets
    /// whose complement is not a face. Vertices must be element labels
    /// contained in the ground set.
    pub fn alexander_dual(&self, ground: &Subset) -> Self {
        let n = ground.ground_size();
        for l in &self.labels {
            match l {
                Label::Elem(e) => assert!(
                    ground.contains(*e),
                    "vertex {l} is outside the ground set"
                ),
                _ => panic!("alexander_dual requires element-labeled vertices"),
            }
        }
        let mut members: Vec<Subset> = Vec::new();
        for s in Subset::all(n) {
            if !s.is_subset_of(ground) {
                continue;
            }
            let comp = ground.minus(&s);
            let comp_labels: Vec<Label> = comp.elems().into_iter().map(Label::Elem).collect();
            if !self.is_face(&comp_labels) {
                members.push(s);
            }
        }
        members.sort_by_key(|s| std::cmp::Reverse(s.card()));
        let mut kept: Vec<Subset> = Vec::new();
        for s in members {
            if !kept.iter().any(|k| s.is_subset_of(k)) {
                kept.push(s);
            }
        }
        let facets: Vec<Vec<Label>> = kept
            .iter()
            .map(|s| s.elems().into_iter().map(Label::Elem).collect())
            .collect();
        Self::from_labeled_facets(&facets).unwrap()
    }
}

fn label_set_string(face: &[Label]) -> String {
    let mut s = String::from("{");
    for (i, l) in face.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&l.to_string());
    }
    s.push('}');
    s
}

fn elem_face(s: &Subset) -> Vec<Label> {
    s.elems().into_iter().map(Label::Elem).collect()
}

/// Independence complex: facets are the bases.
pub fn independence_complex(m: &Matroid) -> SimplicialComplex {
    let r = m.rank();
    let n = m.n();
    let facets: Vec<Vec<Label>> = (1..=n)
        .combinations(r as usize)
        .map(|c| Subset::from_elems(&c, n))
        .filter(|s| m.rank_of(s) == r)
        .map(|s| elem_face(&s))
        .collect();
    SimplicialComplex::from_labeled_facets(&facets).unwrap()
}

/// Nonspanning complex: proper subsets of rank below the matroid rank;
/// facets are the corank-one flats.
pub fn nonspanning_complex(m: &Matroid) -> SimplicialComplex {
    let facets: Vec<Vec<Label>> = m
        .flats_of_rank(m.rank() - 1)
        .map(|f| elem_face(&f))
        .collect();
    SimplicialComplex::from_labeled_facets(&facets).unwrap()
}

/// Cospanning complex: subsets whose complement still spans; facets are the
/// complements of bases.
pub fn cospanning_complex(m: &Matroid) -> SimplicialComplex {
    let r = m.rank();
    let n = m.n();
    let facets: Vec<Vec<Label>> = (1..=n)
        .combinations(r as usize)
        .map(|c| Subset::from_elems(&c, n))
        .filter(|s| m.rank_of(s) == r)
        .map(|s| elem_face(&s.complement()))
        .collect();
    SimplicialComplex::from_labeled_facets(&facets).unwrap()
}
