//! Integral simplicial homology, reduced and relative, via Smith normal
//! form, plus the Cohen-Macaulay and wedge-of-spheres checks built on it.
//!
//! Chain groups are indexed by face cardinality, so the group in homological
//! dimension d collects the faces with d + 1 vertices and the empty face
//! contributes a group in dimension -1. All arithmetic is exact.

use std::collections::HashMap;
use std::collections::HashSet;
use std::fmt;

use crate::complex::{Label, SimplicialComplex};
use crate::linalg::{snf_sparse, SparseMat};
use crate::poset::Poset;
use crate::subset::Subset;
use num_bigint::BigInt;
use thiserror::Error;

/// Errors from homology computations.
#[derive(Debug, Error)]
pub enum HomologyError {
    /// The void complex has no chain groups, not even in dimension -1.
    #[error("the void complex has no homology")]
    VoidComplex,
    /// Relative homology needs the second complex inside the first.
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    /// A hand-built chain complex failed its structural checks.
    #[error("invalid chain complex: {0}")]
    InvalidChainComplex(String),
}

/// A finitely generated abelian group: free rank plus the nontrivial
/// invariant factors, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology groups of a complex or pair, one per dimension from -1 up to
/// the dimension of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    /// `groups[k]` is the group in dimension `k - 1`.
    groups: Vec<HomologyGroup>,
}

impl Homology {
    /// Wraps groups indexed by chain degree, degree k sitting in
    /// dimension k - 1.
    pub(crate) fn from_groups(groups: Vec<HomologyGroup>) -> Self {
        Homology { groups }
    }

    pub fn group(&self, dim: i64) -> HomologyGroup {
        let k = dim + 1;
        if k < 0 || k as usize >= self.groups.len() {
            return HomologyGroup::default();
        }
        self.groups[k as usize].clone()
    }

    pub fn betti(&self, dim: i64) -> usize {
        self.group(dim).betti
    }

    pub fn torsion(&self, dim: i64) -> Vec<BigInt> {
        self.group(dim).torsion
    }

    /// Largest dimension carrying a chain group.
    pub fn max_dim(&self) -> i64 {
        self.groups.len() as i64 - 2
    }

    /// Dimensions whose group is nonzero, ascending.
    pub fn nonzero_dims(&self) -> Vec<i64> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(k, _)| k as i64 - 1)
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Whether every nonzero group sits in the single dimension `dim`.
    pub fn concentrated_in(&self, dim: i64) -> bool {
        self.nonzero_dims().iter().all(|&d| d == dim)
    }

    /// Alternating sum of the free ranks over all dimensions, including -1.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                sign * g.betti as i64
            })
            .sum()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = self.nonzero_dims();
        if dims.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = dims
            .iter()
            .map(|&d| format!("H_{d} = {}", self.group(d)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A bounded chain complex of free abelian groups with integer boundary
/// maps. `boundaries[k]` maps degree k to degree k - 1; the first matrix
/// must have no rows, and consecutive boundaries must compose to zero.
pub struct ChainComplexZ {
    boundaries: Vec<SparseMat>,
}

impl ChainComplexZ {
    pub fn new(boundaries: Vec<SparseMat>) -> Result<Self, HomologyError> {
        if boundaries.is_empty() {
            return Err(HomologyError::InvalidChainComplex(
                "a chain complex needs at least one degree".into(),
            ));
        }
        if boundaries[0].nrows() != 0 {
            return Err(HomologyError::InvalidChainComplex(format!(
                "the lowest boundary must land in the zero group, got {} rows",
                boundaries[0].nrows()
            )));
        }
        for k in 1..boundaries.len() {
            if boundaries[k].nrows() != boundaries[k - 1].ncols() {
                return Err(HomologyError::InvalidChainComplex(format!(
                    "boundary {} has {} rows but degree {} has dimension {}",
                    k,
                    boundaries[k].nrows(),
                    k - 1,
                    boundaries[k - 1].ncols()
                )));
            }
            check_boundary_square(&boundaries[k - 1], &boundaries[k])?;
        }
        Ok(ChainComplexZ { boundaries })
    }

    /// Number of chain groups.
    pub fn degrees(&self) -> usize {
        self.boundaries.len()
    }

    /// Dimension of the degree-k chain group.
    pub fn dim_of(&self, k: usize) -> usize {
        self.boundaries[k].ncols()
    }

    pub fn boundary(&self, k: usize) -> &SparseMat {
        &self.boundaries[k]
    }

    /// Homology in every degree, computed by Smith normal form of the
    /// adjacent boundaries: the free rank in degree k is
    /// dim_k - rank d_k - rank d_{k+1}, and the torsion comes from the
    /// invariant factors of d_{k+1}.
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let snfs: Vec<_> = self.boundaries.iter().map(snf_sparse).collect();
        (0..self.boundaries.len())
            .map(|k| {
                let rank_out = snfs[k].rank;
                let (rank_in, torsion) = if k + 1 < snfs.len() {
                    (snfs[k + 1].rank, snfs[k + 1].torsion())
                } else {
                    (0, Vec::new())
                };
                HomologyGroup {
                    betti: self.dim_of(k) - rank_out - rank_in,
                    torsion,
                }
            })
            .collect()
    }
}

/// Verifies d . d' = 0 by pushing every column of d' through d.
fn check_boundary_square(d: &SparseMat, d_next: &SparseMat) -> Result<(), HomologyError> {
    let mut cols_of_d: Vec<Vec<(usize, i64)>> = vec![Vec::new(); d.ncols()];
    for (r, c, v) in d.triples() {
        cols_of_d[c].push((r, v));
    }
    let mut cols_of_next: Vec<Vec<(usize, i64)>> = vec![Vec::new(); d_next.ncols()];
    for (r, c, v) in d_next.triples() {
        cols_of_next[c].push((r, v));
    }
    for (j, col) in cols_of_next.iter().enumerate() {
        let mut acc: HashMap<usize, i128> = HashMap::new();
        for &(l, v) in col {
            for &(r, w) in &cols_of_d[l] {
                *acc.entry(r).or_insert(0) += v as i128 * w as i128;
            }
        }
        if acc.values().any(|&x| x != 0) {
            return Err(HomologyError::InvalidChainComplex(format!(
                "boundary of boundary is nonzero on basis column {j}"
            )));
        }
    }
    Ok(())
}

/// Builds the boundary matrices over the given cells, one list of sorted
/// vertex masks per cardinality starting at 0. Faces missing from the lists
/// are treated as zero, which is exactly the quotient by a subcomplex.
pub(crate) fn boundary_matrices(cells: &[Vec<u128>]) -> Vec<SparseMat> {
    let mut mats = Vec::with_capacity(cells.len());
    mats.push(SparseMat::new(0, cells[0].len()));
    for k in 1..cells.len() {
        let mut m = SparseMat::new(cells[k - 1].len(), cells[k].len());
        for (j, &mask) in cells[k].iter().enumerate() {
            let mut sign = 1i64;
            let mut walk = mask;
            while walk != 0 {
                let bit = walk.trailing_zeros();
                walk &= walk - 1;
                let target = mask & !(1u128 << bit);
                if let Ok(i) = cells[k - 1].binary_search(&target) {
                    m.push(i, j, sign);
                }
                sign = -sign;
            }
        }
        mats.push(m);
    }
    mats
}

fn homology_from_cells(cells: &[Vec<u128>]) -> Homology {
    let complex = ChainComplexZ::new(boundary_matrices(cells))
        .expect("simplicial boundaries always compose to zero");
    Homology {
        groups: complex.homology(),
    }
}

/// Reduced homology of a complex, dimensions -1 up to its dimension. The
/// empty face is a chain in dimension -1, so a nonempty complex has trivial
/// group there exactly when it is nonempty, and the complex whose only face
/// is the empty face has a single Z in dimension -1.
pub fn reduced_homology(complex: &SimplicialComplex) -> Result<Homology, HomologyError> {
    if complex.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    Ok(homology_from_cells(complex.faces_by_card()))
}

/// Homology of the pair (complex, sub): chains of the first modulo chains
/// of the second. The void complex is allowed as the subcomplex, in which
/// case this is reduced homology.
pub fn relative_homology(
    complex: &SimplicialComplex,
    sub: &SimplicialComplex,
) -> Result<Homology, HomologyError> {
    if complex.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    if !sub.is_subcomplex_of(complex) {
        return Err(HomologyError::NotASubcomplex(
            "the second complex has a face outside the first".into(),
        ));
    }
    let mut sub_masks: HashSet<u128> = HashSet::new();
    if !sub.is_void() {
        // Re-express the faces of the subcomplex in the vertex numbering of
        // the ambient complex.
        let position: HashMap<&Label, usize> = complex
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        for per_card in sub.faces_by_card() {
            for &mask in per_card {
                let mut ambient = 0u128;
                for label in sub.labels_of_mask(mask) {
                    let &i = position
                        .get(&label)
                        .expect("subcomplex labels occur in the ambient complex");
                    ambient |= 1 << i;
                }
                sub_masks.insert(ambient);
            }
        }
    }
    let cells: Vec<Vec<u128>> = complex
        .faces_by_card()
        .iter()
        .map(|per_card| {
            per_card
                .iter()
                .copied()
                .filter(|m| !sub_masks.contains(m))
                .collect()
        })
        .collect();
    Ok(homology_from_cells(&cells))
}

/// Reduced Euler characteristic: the alternating sum of face counts with
/// the empty face counting in dimension -1.
pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .faces_by_card()
        .iter()
        .enumerate()
        .map(|(k, cells)| {
            let sign = if k % 2 == 0 { -1i64 } else { 1 };
            sign * cells.len() as i64
        })
        .sum()
}

/// A face whose link has homology strictly below the link's dimension.
#[derive(Clone, Debug)]
pub struct CmWitness {
    pub face: Vec<Label>,
    pub dim: i64,
    pub group: HomologyGroup,
}

/// Outcome of the Cohen-Macaulay test. `link_condition` holds when every
/// link has integral homology only in its own top dimension; purity is
/// reported alongside, and genuine Cohen-Macaulayness is the conjunction.
#[derive(Clone, Debug)]
pub struct CmReport {
    pub link_condition: bool,
    pub pure: bool,
    pub witness: Option<CmWitness>,
}

impl CmReport {
    pub fn cohen_macaulay(&self) -> bool {
        self.link_condition && self.pure
    }
}

/// Checks the link condition face by face, in increasing cardinality, and
/// stops at the first failure.
pub fn cm_over_z(complex: &SimplicialComplex) -> Result<CmReport, HomologyError> {
    if complex.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    let pure = complex.is_pure();
    for per_card in complex.faces_by_card() {
        for &mask in per_card {
            let face = complex.labels_of_mask(mask);
            let link = complex
                .link(&face)
                .expect("every enumerated face has a link");
            let link_dim = link.dim().expect("links of faces are never void");
            if link_dim <= 0 {
                continue;
            }
            let h = reduced_homology(&link)?;
            for d in -1..link_dim {
                let group = h.group(d);
                if !group.is_zero() {
                    return Ok(CmReport {
                        link_condition: false,
                        pure,
                        witness: Some(CmWitness {
                            face,
                            dim: d,
                            group,
                        }),
                    });
                }
            }
        }
    }
    Ok(CmReport {
        link_condition: true,
        pure,
        witness: None,
    })
}

/// The Cohen-Macaulay test for an order complex, run interval by interval:
/// the order complex satisfies the link condition exactly when, for every
/// open interval of the poset extended by a global bottom and top, the
/// order complex of that interval has homology only in its top dimension.
/// Links in the order complex are joins of such interval complexes, and
/// each interval complex is itself the link of a saturated chain, so the
/// two formulations agree; this one avoids rebuilding large links.
pub fn cm_over_z_poset(poset: &Poset) -> Result<CmReport, HomologyError> {
    let chains = poset.maximal_chains();
    let pure = chains.iter().all(|c| c.len() == chains[0].len());
    let n = poset.len();
    // Bounds are element indices, with n standing for the artificial
    // bottom or top, whichever end it appears on.
    let mut pairs: Vec<(usize, usize)> = vec![(n, n)];
    for i in 0..n {
        pairs.push((n, i));
        pairs.push((i, n));
        for j in 0..n {
            if poset.less(i, j) {
                pairs.push((i, j));
            }
        }
    }
    for (low, high) in pairs {
        let between: Vec<Subset> = (0..n)
            .filter(|&i| {
                (low == n || poset.less(low, i)) && (high == n || poset.less(i, high))
            })
            .map(|i| poset.elements()[i])
            .collect();
        let interval = Poset::from_subsets(poset.ground_size(), &between)
            .expect("an interval is no larger than the poset");
        let complex = interval.order_complex();
        let dim = complex.dim().expect("order complexes are never void");
        if dim <= 0 {
            continue;
        }
        let h = reduced_homology(&complex)?;
        for d in -1..dim {
            let group = h.group(d);
            if !group.is_zero() {
                let mut face = Vec::new();
                if low < n {
                    face.push(Label::Flat(poset.elements()[low]));
                }
                if high < n {
                    face.push(Label::Flat(poset.elements()[high]));
                }
                return Ok(CmReport {
                    link_condition: false,
                    pure,
                    witness: Some(CmWitness { face, dim: d, group }),
                });
            }
        }
    }
    Ok(CmReport {
        link_condition: true,
        pure,
        witness: None,
    })
}

/// Whether the homology is that of a wedge of spheres of one dimension:
/// free, and concentrated in the given dimension. The count is the number
/// of spheres; zero means the homology is trivial, which passes.
#[derive(Clone, Debug)]
pub struct WedgeProfile {
    pub ok: bool,
    pub count: usize,
    pub failure: Option<(i64, HomologyGroup)>,
}

pub fn wedge_profile(
    complex: &SimplicialComplex,
    dim: i64,
) -> Result<WedgeProfile, HomologyError> {
    let h = reduced_homology(complex)?;
    let count = h.betti(dim);
    for d in h.nonzero_dims() {
        let group = h.group(d);
        if d != dim || !group.is_free() {
            return Ok(WedgeProfile {
                ok: false,
                count,
                failure: Some((d, group)),
            });
        }
    }
    Ok(WedgeProfile {
        ok: true,
        count,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;
    use crate::poset::{filtered, proper_lattice};
    use crate::subset::Subset;
    use crate::weight::Weight;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn labeled(facets: &[&[u32]]) -> SimplicialComplex {
        let lists: Vec<Vec<Label>> = facets
            .iter()
            .map(|f| f.iter().map(|&v| Label::Elem(v)).collect())
            .collect();
        SimplicialComplex::from_labeled_facets(&lists).unwrap()
    }

    fn euler_agrees(c: &SimplicialComplex) {
        let h = reduced_homology(c).unwrap();
        assert_eq!(h.euler_characteristic(), reduced_euler_characteristic(c));
    }

    #[test]
    fn spheres_points_and_the_empty_face() {
        let empty_only = SimplicialComplex::empty_face_only();
        let h = reduced_homology(&empty_only).unwrap();
        assert_eq!(h.group(-1), HomologyGroup::free(1));
        assert!(h.concentrated_in(-1));

        let point = SimplicialComplex::point(Label::Elem(1));
        assert!(reduced_homology(&point).unwrap().is_trivial());

        let three_points = labeled(&[&[1], &[2], &[3]]);
        let h = reduced_homology(&three_points).unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(2));
        assert!(h.concentrated_in(0));

        let circle = labeled(&[&[1, 2], &[2, 3], &[1, 3]]);
        let h = reduced_homology(&circle).unwrap();
        assert!(h.concentrated_in(1));
        assert_eq!(h.betti(1), 1);

        let disk = labeled(&[&[1, 2, 3]]);
        assert!(reduced_homology(&disk).unwrap().is_trivial());

        let sphere = labeled(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let h = reduced_homology(&sphere).unwrap();
        assert!(h.concentrated_in(2));
        assert_eq!(h.betti(2), 1);

        for c in [&empty_only, &point, &three_points, &circle, &disk, &sphere] {
            euler_agrees(c);
        }

        assert!(matches!(
            reduced_homology(&SimplicialComplex::void()),
            Err(HomologyError::VoidComplex)
        ));
    }

    #[test]
    fn projective_plane_torsion() {
        // Six-vertex closed surface with Euler characteristic 1: its first
        // homology is pure 2-torsion and its top homology vanishes.
        let rp2 = labeled(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 3, 5],
            &[1, 4, 6],
            &[1, 5, 6],
            &[2, 3, 6],
            &[2, 4, 5],
            &[2, 5, 6],
            &[3, 4, 5],
            &[3, 4, 6],
        ]);
        assert_eq!(rp2.face_count(), 1 + 6 + 15 + 10);
        let h = reduced_homology(&rp2).unwrap();
        assert_eq!(h.betti(0), 0);
        assert_eq!(
            h.group(1),
            HomologyGroup {
                betti: 0,
                torsion: vec![BigInt::from(2)],
            }
        );
        assert!(h.group(2).is_zero());
        euler_agrees(&rp2);

        let w = wedge_profile(&rp2, 1).unwrap();
        assert!(!w.ok);
    }

    #[test]
    fn order_complex_homology_counts_mobius() {
        // The order complex of the proper flat lattice is a wedge of
        // |mobius| spheres in dimension rank - 2.
        let cases = [
            (Matroid::boolean(3).unwrap(), 1usize),
            (Matroid::boolean(4).unwrap(), 1),
            (Matroid::uniform(2, 3).unwrap(), 2),
            (Matroid::fano(), 8),
            (
                Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
                6,
            ),
        ];
        for (m, count) in cases {
            let complex = proper_lattice(&m).unwrap().order_complex();
            let profile = wedge_profile(&complex, m.rank() as i64 - 2).unwrap();
            assert!(profile.ok, "rank {} matroid", m.rank());
            assert_eq!(profile.count, count);
            euler_agrees(&complex);
        }
    }

    #[test]
    fn relative_pairs() {
        let disk = labeled(&[&[1, 2, 3]]);
        let h = relative_homology(&disk, &disk).unwrap();
        assert!(h.is_trivial());

        let three_points = labeled(&[&[1], &[2], &[3]]);
        let one_point = labeled(&[&[1]]);
        let h = relative_homology(&three_points, &one_point).unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(2));
        assert!(h.concentrated_in(0));

        // Modulo the void complex, relative homology is reduced homology.
        let h = relative_homology(&three_points, &SimplicialComplex::void()).unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(2));

        // Disk modulo its boundary circle: a 2-sphere away from dimension 0.
        let circle = labeled(&[&[1, 2], &[2, 3], &[1, 3]]);
        let h = relative_homology(&disk, &circle).unwrap();
        assert!(h.concentrated_in(2));
        assert_eq!(h.betti(2), 1);

        let stray = labeled(&[&[9]]);
        assert!(matches!(
            relative_homology(&disk, &stray),
            Err(HomologyError::NotASubcomplex(_))
        ));
    }

    #[test]
    fn relative_pair_of_a_filtered_lattice() {
        let m = Matroid::uniform(2, 3).unwrap();
        let lattice = proper_lattice(&m).unwrap();
        let omega = Weight::from_integers(&[2, -1, -1]);
        let f = filtered(&lattice, &omega, &BigRational::zero());
        let whole = lattice.order_complex();
        let part = f.poset.order_complex();
        assert_eq!(f.poset.len(), 1);
        let h = relative_homology(&whole, &part).unwrap();
        assert!(h.concentrated_in(0));
        assert_eq!(h.betti(0), 2);
    }

    #[test]
    fn cohen_macaulay_verdicts() {
        let hexagon = proper_lattice(&Matroid::boolean(3).unwrap())
            .unwrap()
            .order_complex();
        let report = cm_over_z(&hexagon).unwrap();
        assert!(report.link_condition && report.pure && report.cohen_macaulay());

        let two_edges = labeled(&[&[1, 2], &[3, 4]]);
        let report = cm_over_z(&two_edges).unwrap();
        assert!(!report.link_condition);
        let w = report.witness.unwrap();
        assert!(w.face.is_empty());
        assert_eq!(w.dim, 0);
        assert_eq!(w.group, HomologyGroup::free(1));

        let m = Matroid::disconnection_example();
        let omega = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        let f = filtered(
            &proper_lattice(&m).unwrap(),
            &omega,
            &BigRational::zero(),
        );
        let report = cm_over_z(&f.poset.order_complex()).unwrap();
        assert!(!report.link_condition);
        let w = report.witness.unwrap();
        assert!(w.face.is_empty());
        assert_eq!(w.dim, 0);
    }

    #[test]
    fn poset_route_matches_direct_definition() {
        let zero = BigRational::zero();
        let omega = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        let disconnected = filtered(
            &proper_lattice(&Matroid::disconnection_example()).unwrap(),
            &omega,
            &zero,
        )
        .poset;
        let posets = [
            proper_lattice(&Matroid::uniform(2, 3).unwrap()).unwrap(),
            proper_lattice(&Matroid::boolean(3).unwrap()).unwrap(),
            proper_lattice(&Matroid::boolean(4).unwrap()).unwrap(),
            proper_lattice(&Matroid::uniform(3, 5).unwrap()).unwrap(),
            proper_lattice(&Matroid::fano()).unwrap(),
            disconnected,
        ];
        for p in posets {
            let direct = cm_over_z(&p.order_complex()).unwrap();
            let fast = cm_over_z_poset(&p).unwrap();
            assert_eq!(direct.link_condition, fast.link_condition);
            assert_eq!(direct.pure, fast.pure);
        }
    }

    #[test]
    fn wedge_profiles() {
        let hexagon = proper_lattice(&Matroid::boolean(3).unwrap())
            .unwrap()
            .order_complex();
        let w = wedge_profile(&hexagon, 1).unwrap();
        assert!(w.ok);
        assert_eq!(w.count, 1);

        let antichain = proper_lattice(&Matroid::uniform(2, 3).unwrap())
            .unwrap()
            .order_complex();
        let w = wedge_profile(&antichain, 0).unwrap();
        assert!(w.ok);
        assert_eq!(w.count, 2);

        // A cone is contractible: the profile passes with count zero.
        let cone = labeled(&[&[1, 2, 3]]).cone().unwrap();
        let w = wedge_profile(&cone, 1).unwrap();
        assert!(w.ok);
        assert_eq!(w.count, 0);

        // Homology off the requested dimension fails the profile.
        let w = wedge_profile(&hexagon, 0).unwrap();
        assert!(!w.ok);
        assert_eq!(w.failure.unwrap().0, 1);
    }

    #[test]
    fn alexander_duality_on_small_complexes() {
        // Reduced Betti numbers satisfy b_i(complex) = b_{n-i-3}(dual) and
        // torsion shifts one step further, over a ground set of size n.
        let cases = [
            (labeled(&[&[1, 2], &[2, 3], &[1, 3]]), 3u32),
            (labeled(&[&[1], &[2], &[3]]), 3),
            (labeled(&[&[1, 2], &[3, 4]]), 4),
            (
                labeled(&[
                    &[1, 2, 3],
                    &[1, 2, 4],
                    &[1, 3, 5],
                    &[1, 4, 6],
                    &[1, 5, 6],
                    &[2, 3, 6],
                    &[2, 4, 5],
                    &[2, 5, 6],
                    &[3, 4, 5],
                    &[3, 4, 6],
                ]),
                6,
            ),
        ];
        for (complex, n) in cases {
            let ground = Subset::full(n);
            let dual = complex.alexander_dual(&ground);
            let h = reduced_homology(&complex).unwrap();
            let hd = reduced_homology(&dual).unwrap();
            for i in -1..=n as i64 {
                assert_eq!(h.betti(i), hd.betti(n as i64 - i - 3), "betti at {i}");
                assert_eq!(
                    h.torsion(i),
                    hd.torsion(n as i64 - i - 4),
                    "torsion at {i}"
                );
            }
        }
    }

    #[test]
    fn chain_complex_validation() {
        // An edge followed by a map that does not die on its boundary.
        let mut bad_d1 = SparseMat::new(2, 1);
        bad_d1.push(0, 0, 1);
        bad_d1.push(1, 0, 1);
        let mut bad_d2 = SparseMat::new(1, 1);
        bad_d2.push(0, 0, 1);
        assert!(matches!(
            ChainComplexZ::new(vec![SparseMat::new(0, 2), bad_d1, bad_d2]),
            Err(HomologyError::InvalidChainComplex(_))
        ));

        // An honest edge between two vertices: one connected component.
        let mut d1 = SparseMat::new(2, 1);
        d1.push(0, 0, 1);
        d1.push(1, 0, -1);
        let cc =
            ChainComplexZ::new(vec![SparseMat::new(0, 2), d1, SparseMat::new(1, 0)]).unwrap();
        assert_eq!(cc.degrees(), 3);
        let h = cc.homology();
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1].is_zero());
        assert!(h[2].is_zero());
    }
}
