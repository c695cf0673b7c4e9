//! Wedge-power coefficient groups on matroid fans and the complexes that
//! compute local homology near the origin.
//!
//! Every chain of proper flats spans a cone of the fan whose ray lattice is
//! saturated, so its integral degree-p group is the p-th wedge power of the
//! chain lattice. The degree-p group of a family of chains is the lattice
//! sum of those wedge powers inside the exterior power of the ambient
//! lattice; over the rationals the same group is taken up to finite index
//! by saturating.
//!
//! Three regions carry cell complexes with these groups as coefficients:
//!
//! * `Link`: all chains of proper flats, together with the empty chain in
//!   dimension -1, so homology is reduced.
//! * `HalfLink`: chains of flats with positive weight under a generic
//!   halfspace, again augmented by the empty chain. Its homology computes
//!   the local homology of the punctured positive part, one degree down.
//! * `Ball`: the cone over the link, an apex cell standing for the origin.
//!
//! The coefficient at a cell is the degree-p group of the maximal chains
//! containing its chain, which is the tangent structure seen from interior
//! points of the cell; the empty chain and the apex both carry the group of
//! the whole fan. Faces of a cell have larger coefficient groups, so the
//! simplicial boundary descends to the coefficient blocks, and the square
//! of the assembled boundary is re-verified numerically on construction.
//!
//! On top of the complexes sit the comparison and witness operations:
//! `halfspace_p_comparison` measures rank equality and the lattice index of
//! the positive-side group; `torsion_witness_fano` pins down an index-2
//! drop on the seven-point rank-3 matroid with a parity certificate; and
//! `u34_witness` builds an explicit degree-0 cycle with degree-1
//! coefficients on the fan of `U(3,4)`, checks a constrained filling system
//! for solvability, and decides by exact linear algebra whether the cycle
//! bounds. `cone_iso_check` verifies that the pair (ball, link) is the
//! link shifted by one degree, both at the level of boundary matrices and
//! of computed homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::bergman::{BergmanError, BergmanFan, CircuitRealization, Halfspace};
use crate::complex::{ComplexError, Label, SimplicialComplex};
use crate::homology::{ChainComplexZ, Homology, HomologyError, HomologyGroup};
use crate::linalg::{combinations_lex, rank_big, solve_z, Lattice, SparseMat};
use crate::matroid::Matroid;
use crate::poset::{filtered, proper_lattice, PosetError};
use crate::subset::Subset;

/// Errors from coefficient groups and region complexes.
#[derive(Debug, Error)]
pub enum HodgeError {
    /// Parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// A subset list that is not a chain of proper nonempty flats.
    #[error("not a chain of proper nonempty flats: {0}")]
    NotAChain(String),
    /// The halfspace normal vanishes on a proper nonempty subset, so the
    /// positive side is not well defined on all of the fan.
    #[error("the halfspace normal vanishes on the subset {witness}")]
    NonGenericHalfspace { witness: Subset },
    /// Propagated fan or halfspace failure.
    #[error(transparent)]
    Fan(#[from] BergmanError),
    /// Propagated lattice-of-flats failure.
    #[error(transparent)]
    Lattice(#[from] PosetError),
    /// Propagated complex-construction failure.
    #[error(transparent)]
    Complex(#[from] ComplexError),
    /// Propagated homology failure.
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Coefficient ring for groups and homology: exact integral lattices, or
/// their rational spans where only ranks matter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Int,
    Rat,
}

/// Region of the fan whose cell complex is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// All chains of proper flats, augmented by the empty chain.
    Link,
    /// Chains of flats positive under the halfspace, augmented.
    HalfLink(Halfspace),
    /// The cone over the link, with an apex cell for the origin.
    Ball,
}

/// A degree-p coefficient group: a lattice inside the p-th exterior power
/// of the ambient lattice, kept in certified Hermite form.
#[derive(Clone, Debug)]
pub struct PLattice {
    p: usize,
    ring: Ring,
    lattice: Lattice,
}

impl PLattice {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Dimension of the exterior power the group lives in.
    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        self.lattice.basis_rows()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.lattice.contains(v)
    }

    pub fn is_sublattice_of(&self, other: &PLattice) -> bool {
        self.lattice.is_sublattice_of(&other.lattice)
    }

    /// Index inside a finer group of the same rank, `None` when the ranks
    /// differ.
    pub fn index_in(&self, finer: &PLattice) -> Option<BigInt> {
        self.lattice.index_in(&finer.lattice)
    }
}

fn binomial(d: usize, p: usize) -> usize {
    combinations_lex(d, p).len()
}

/// Checks that the subsets form a strictly nested chain of proper nonempty
/// flats and returns them sorted inner to outer.
fn validated_chain(m: &Matroid, chain: &[Subset]) -> Result<Vec<Subset>, HodgeError> {
    let mut sorted = chain.to_vec();
    sorted.sort_by_key(|s| (s.card(), s.bits()));
    for f in &sorted {
        if f.ground_size() != m.n() {
            return Err(HodgeError::NotAChain(format!(
                "{f} lives on a ground set of size {}, expected {}",
                f.ground_size(),
                m.n()
            )));
        }
        if f.is_empty() || f.is_full() || !m.is_flat(f) {
            return Err(HodgeError::NotAChain(format!(
                "{f} is not a proper nonempty flat"
            )));
        }
    }
    for w in sorted.windows(2) {
        if !w[0].is_proper_subset_of(&w[1]) {
            return Err(HodgeError::NotAChain(format!(
                "{} and {} are not strictly nested",
                w[0], w[1]
            )));
        }
    }
    Ok(sorted)
}

/// The ray lattice of a chain: spanned by the subset vectors of its flats.
/// These lattices are saturated, because the rays of any flag extend to a
/// basis of the ambient lattice.
pub(crate) fn chain_lattice(c: &CircuitRealization, chain: &[Subset]) -> Lattice {
    let rows: Vec<Vec<BigInt>> = chain.iter().map(|f| c.vector_of_subset(f)).collect();
    Lattice::from_rows(c.dim(), &rows)
}

/// All maximal chains of proper nonempty flats, inner to outer. A matroid
/// of rank below two has only the empty chain.
pub(crate) fn maximal_flat_chains(m: &Matroid) -> Result<Vec<Vec<Subset>>, HodgeError> {
    let lat = proper_lattice(m)?;
    let els = lat.elements().to_vec();
    if els.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    Ok(lat
        .maximal_chains()
        .into_iter()
        .map(|ch| ch.into_iter().map(|i| els[i]).collect())
        .collect())
}

/// The degree-p group of the given chains: the sum of the p-th wedge
/// powers of their ray lattices. Over `Ring::Rat` the sum is saturated, so
/// indices inside larger rational groups are trivial whenever ranks agree.
pub fn p_group(
    fan: &BergmanFan,
    chains: &[Vec<Subset>],
    p: usize,
    ring: Ring,
) -> Result<PLattice, HodgeError> {
    let d = fan.realization().dim();
    let mut acc = Lattice::zero(binomial(d, p));
    for chain in chains {
        let chain = if chain.is_empty() {
            Vec::new()
        } else {
            validated_chain(fan.matroid(), chain)?
        };
        let wedge = chain_lattice(fan.realization(), &chain).wedge_power(p);
        for row in wedge.basis_rows() {
            acc.insert(row.clone());
        }
    }
    if ring == Ring::Rat && acc.rank() > 0 {
        acc = acc.saturate();
    }
    Ok(PLattice {
        p,
        ring,
        lattice: acc,
    })
}

/// The degree-p group of the whole fan, summed over all maximal chains.
pub fn p_group_full(fan: &BergmanFan, p: usize, ring: Ring) -> Result<PLattice, HodgeError> {
    let chains = maximal_flat_chains(fan.matroid())?;
    p_group(fan, &chains, p, ring)
}

/// Proper flats with positive weight under the halfspace, or an error when
/// the induced weight vanishes on some proper nonempty subset.
pub(crate) fn positive_flats(fan: &BergmanFan, h: &Halfspace) -> Result<Vec<Subset>, HodgeError> {
    let weight = h.induced_weight(fan.realization())?;
    if let Some(witness) = weight.nongeneric_witness() {
        return Err(HodgeError::NonGenericHalfspace { witness });
    }
    Ok(fan
        .matroid()
        .proper_flats()
        .into_iter()
        .filter(|f| weight.dot(f) > BigRational::zero())
        .collect())
}

/// The degree-p group of the closed positive side: the sum over the
/// maximal chains containing at least one positive flat. Cones avoiding
/// the positive side entirely meet the halfspace only at the origin and
/// contribute nothing.
pub fn p_group_positive(
    fan: &BergmanFan,
    h: &Halfspace,
    p: usize,
    ring: Ring,
) -> Result<PLattice, HodgeError> {
    let pos = positive_flats(fan, h)?;
    let chains: Vec<Vec<Subset>> = maximal_flat_chains(fan.matroid())?
        .into_iter()
        .filter(|ch| ch.iter().any(|f| pos.contains(f)))
        .collect();
    p_group(fan, &chains, p, ring)
}

/// Outcome of comparing the degree-p group of the positive side with the
/// group of the whole fan.
#[derive(Clone, Debug)]
pub struct PComparison {
    pub p: usize,
    pub ring: Ring,
    pub rank_full: usize,
    pub rank_positive: usize,
    pub rank_equal: bool,
    /// Index of the positive group inside the full one; `None` when the
    /// ranks differ, so the index is infinite.
    pub index: Option<BigInt>,
}

/// Compares the positive-side degree-p group against the full one over the
/// chosen ring.
pub fn halfspace_p_comparison(
    m: &Matroid,
    h: &Halfspace,
    p: usize,
    ring: Ring,
) -> Result<PComparison, HodgeError> {
    let fan = BergmanFan::bergman_fan(m)?;
    let full = p_group_full(&fan, p, ring)?;
    let positive = p_group_positive(&fan, h, p, ring)?;
    let rank_equal = positive.rank() == full.rank();
    let index = if rank_equal {
        positive.index_in(&full)
    } else {
        None
    };
    Ok(PComparison {
        p,
        ring,
        rank_full: full.rank(),
        rank_positive: positive.rank(),
        rank_equal,
        index,
    })
}

/// Coefficient groups of every chain of the fan, keyed by the chain. The
/// group of a chain sums the wedge powers of all maximal chains containing
/// it; the empty chain gets the group of the whole fan.
pub(crate) fn star_table(
    fan: &BergmanFan,
    p: usize,
) -> Result<BTreeMap<Vec<Subset>, Lattice>, HodgeError> {
    let amb = binomial(fan.realization().dim(), p);
    let mut table: BTreeMap<Vec<Subset>, Lattice> = BTreeMap::new();
    for chain in maximal_flat_chains(fan.matroid())? {
        let wedge = chain_lattice(fan.realization(), &chain).wedge_power(p);
        for mask in 0u32..(1 << chain.len()) {
            let sub: Vec<Subset> = chain
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| *f)
                .collect();
            let entry = table
                .entry(sub)
                .or_insert_with(|| Lattice::zero(amb));
            for row in wedge.basis_rows() {
                entry.insert(row.clone());
            }
        }
    }
    Ok(table)
}

/// One cell of a region complex: its chain of flats, whether the origin
/// apex belongs to it, and its coefficient group.
#[derive(Clone, Debug)]
pub struct PQCell {
    pub flats: Vec<Subset>,
    pub has_apex: bool,
    pub coefficient: Lattice,
}

/// The chain complex of a region with degree-p coefficient groups. Level k
/// holds the cells with k vertices (the apex counts), so level 0 is the
/// empty chain and level k computes homology in dimension k - 1.
pub struct PQComplex {
    p: usize,
    ring: Ring,
    region: Region,
    cells: Vec<Vec<PQCell>>,
    offsets: Vec<Vec<usize>>,
    complex: ChainComplexZ,
}

impl PQComplex {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Number of levels, the empty chain included.
    pub fn levels(&self) -> usize {
        self.cells.len()
    }

    pub fn cells_at(&self, level: usize) -> &[PQCell] {
        &self.cells[level]
    }

    /// Dimension of the level-k chain group, all coefficient blocks summed.
    pub fn total_dim(&self, level: usize) -> usize {
        self.complex.dim_of(level)
    }

    /// Start of the coefficient block of one cell inside its level.
    pub fn block_start(&self, level: usize, cell: usize) -> usize {
        self.offsets[level][cell]
    }

    pub fn boundary(&self, level: usize) -> &SparseMat {
        self.complex.boundary(level)
    }

    pub fn chain_complex(&self) -> &ChainComplexZ {
        &self.complex
    }

    /// Homology of the complex, dimension -1 upwards. Over `Ring::Rat`
    /// only the free ranks are reported.
    pub fn homology(&self) -> Homology {
        let mut groups = self.complex.homology();
        if self.ring == Ring::Rat {
            for g in &mut groups {
                g.torsion.clear();
            }
        }
        Homology::from_groups(groups)
    }
}

/// Assembles the boundary matrices of a labeled complex whose cells carry
/// coefficient lattices, one block per cell, and verifies that adjacent
/// boundaries compose to zero.
fn assemble(
    complex: &SimplicialComplex,
    cell_of_mask: impl Fn(u128) -> (Vec<Subset>, bool),
    stars: &BTreeMap<Vec<Subset>, Lattice>,
) -> Result<(Vec<Vec<PQCell>>, Vec<Vec<usize>>, ChainComplexZ), HodgeError> {
    let cards = complex.faces_by_card();
    let mut cells: Vec<Vec<PQCell>> = Vec::with_capacity(cards.len());
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(cards.len());
    for per_card in cards {
        let mut level = Vec::with_capacity(per_card.len());
        let mut offs = Vec::with_capacity(per_card.len());
        let mut dim = 0usize;
        for &mask in per_card {
            let (flats, has_apex) = cell_of_mask(mask);
            let coefficient = stars
                .get(&flats)
                .expect("every region chain extends to a maximal chain")
                .clone();
            offs.push(dim);
            dim += coefficient.rank();
            level.push(PQCell {
                flats,
                has_apex,
                coefficient,
            });
        }
        cells.push(level);
        offsets.push(offs);
    }
    let dim_at = |k: usize| -> usize {
        offsets[k].last().copied().unwrap_or(0)
            + cells[k].last().map(|c| c.coefficient.rank()).unwrap_or(0)
    };
    let mut boundaries = vec![SparseMat::new(0, dim_at(0))];
    for k in 1..cards.len() {
        let mut mat = SparseMat::new(dim_at(k - 1), dim_at(k));
        for (j, &mask) in cards[k].iter().enumerate() {
            let cell = &cells[k][j];
            let col0 = offsets[k][j];
            let mut sign = 1i64;
            let mut walk = mask;
            while walk != 0 {
                let bit = walk.trailing_zeros();
                walk &= walk - 1;
                let target = mask & !(1u128 << bit);
                let i = cards[k - 1]
                    .binary_search(&target)
                    .expect("faces of a cell belong to the complex");
                let face = &cells[k - 1][i];
                let row0 = offsets[k - 1][i];
                for (b, row) in cell.coefficient.basis_rows().iter().enumerate() {
                    let coeffs = face
                        .coefficient
                        .coefficients_of(row)
                        .expect("coefficient groups grow toward faces");
                    for (c, v) in coeffs.iter().enumerate() {
                        if !v.is_zero() {
                            let v = v
                                .to_i64()
                                .expect("inclusion coefficients fit in 64 bits");
                            mat.push(row0 + c, col0 + b, sign * v);
                        }
                    }
                }
                sign = -sign;
            }
        }
        boundaries.push(mat);
    }
    let complexz = ChainComplexZ::new(boundaries)?;
    Ok((cells, offsets, complexz))
}

/// Builds the region complex of a matroid fan with degree-p coefficients.
pub fn pq_complex(
    m: &Matroid,
    region: &Region,
    p: usize,
    ring: Ring,
) -> Result<PQComplex, HodgeError> {
    let fan = BergmanFan::bergman_fan(m)?;
    let stars = star_table(&fan, p)?;
    pq_complex_with_table(m, &fan, region, p, ring, &stars)
}

/// Builds a region complex from a precomputed star table, so callers
/// sweeping many halfspaces at a fixed degree pay for the table once.
pub(crate) fn pq_complex_with_table(
    m: &Matroid,
    fan: &BergmanFan,
    region: &Region,
    p: usize,
    ring: Ring,
    stars: &BTreeMap<Vec<Subset>, Lattice>,
) -> Result<PQComplex, HodgeError> {
    let lat = proper_lattice(m)?;
    let simplicial = match region {
        Region::Link => lat.order_complex(),
        Region::HalfLink(h) => {
            let weight = h.induced_weight(fan.realization())?;
            if let Some(witness) = weight.nongeneric_witness() {
                return Err(HodgeError::NonGenericHalfspace { witness });
            }
            filtered(&lat, &weight, &BigRational::zero())
                .poset
                .order_complex()
        }
        Region::Ball => lat.order_complex().cone()?,
    };
    let (cells, offsets, complex) = cells_and_boundary(&simplicial, stars)?;
    Ok(PQComplex {
        p,
        ring,
        region: region.clone(),
        cells,
        offsets,
        complex,
    })
}

/// Cells, block offsets and verified boundary of a region complex given an
/// explicit simplicial model, for callers that trim the model first.
pub(crate) fn cells_and_boundary(
    simplicial: &SimplicialComplex,
    stars: &BTreeMap<Vec<Subset>, Lattice>,
) -> Result<(Vec<Vec<PQCell>>, Vec<Vec<usize>>, ChainComplexZ), HodgeError> {
    let labels = simplicial.labels().to_vec();
    let cell_of_mask = |mask: u128| -> (Vec<Subset>, bool) {
        let mut flats = Vec::new();
        let mut has_apex = false;
        for (i, label) in labels.iter().enumerate() {
            if mask >> i & 1 == 1 {
                match label {
                    Label::Flat(f) => flats.push(*f),
                    Label::Apex => has_apex = true,
                    other => unreachable!("region complexes carry flats, got {other}"),
                }
            }
        }
        flats.sort_by_key(|s| (s.card(), s.bits()));
        (flats, has_apex)
    };
    assemble(simplicial, cell_of_mask, stars)
}

/// Homology of a region complex, dimension -1 upwards.
pub fn pq_homology(
    m: &Matroid,
    region: &Region,
    p: usize,
    ring: Ring,
) -> Result<Homology, HodgeError> {
    Ok(pq_complex(m, region, p, ring)?.homology())
}

/// The relative complex of the pair (ball, link): the blocks of the cells
/// containing the apex, with the boundary restricted to them.
fn apex_relative(ball: &PQComplex) -> Result<(Vec<Vec<PQCell>>, ChainComplexZ), HodgeError> {
    let levels = ball.levels();
    let mut kept: Vec<Vec<PQCell>> = Vec::with_capacity(levels);
    // Per level: (old block start, block rank, new block start) per kept cell.
    let mut maps: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(levels);
    for k in 0..levels {
        let mut level = Vec::new();
        let mut map = Vec::new();
        let mut dim = 0usize;
        for (i, cell) in ball.cells_at(k).iter().enumerate() {
            if cell.has_apex {
                let rank = cell.coefficient.rank();
                map.push((ball.block_start(k, i), rank, dim));
                dim += rank;
                level.push(cell.clone());
            }
        }
        kept.push(level);
        maps.push(map);
    }
    let new_dim = |k: usize| -> usize {
        maps[k]
            .last()
            .map(|&(_, rank, start)| start + rank)
            .unwrap_or(0)
    };
    let relocate = |map: &[(usize, usize, usize)], old: usize| -> Option<usize> {
        let idx = map.partition_point(|&(start, _, _)| start <= old);
        if idx == 0 {
            return None;
        }
        let (start, rank, new_start) = map[idx - 1];
        (old < start + rank).then(|| new_start + (old - start))
    };
    let mut boundaries = vec![SparseMat::new(0, new_dim(0))];
    for k in 1..levels {
        let mut mat = SparseMat::new(new_dim(k - 1), new_dim(k));
        for (r, c, v) in ball.boundary(k).triples() {
            if let (Some(nr), Some(nc)) = (relocate(&maps[k - 1], r), relocate(&maps[k], c)) {
                mat.push(nr, nc, v);
            }
        }
        boundaries.push(mat);
    }
    Ok((kept, ChainComplexZ::new(boundaries)?))
}

/// Homology of the pair (ball, link) with degree-p coefficients. The group
/// returned in dimension q is carried by the apex cells with q + 1
/// vertices.
pub fn pq_relative_homology(m: &Matroid, p: usize, ring: Ring) -> Result<Homology, HodgeError> {
    let ball = pq_complex(m, &Region::Ball, p, ring)?;
    let (_, complex) = apex_relative(&ball)?;
    let mut groups = complex.homology();
    if ring == Ring::Rat {
        for g in &mut groups {
            g.torsion.clear();
        }
    }
    Ok(Homology::from_groups(groups))
}

/// Result of checking that the pair (ball, link) reproduces the link one
/// degree down.
#[derive(Clone, Debug)]
pub struct ConeIsoReport {
    pub p: usize,
    pub ring: Ring,
    /// Relative cells match the link cells shifted by one level, chain by
    /// chain and coefficient by coefficient.
    pub cells_match: bool,
    /// Relative boundary matrices equal the link boundaries one level down.
    pub boundaries_match: bool,
    /// Homology groups agree after the shift, each side computed by its own
    /// normal form.
    pub homology_match: bool,
    /// Chain dimensions of the ball complex, level by level.
    pub total_dims: Vec<usize>,
    pub pass: bool,
}

/// Verifies on one matroid that quotienting the ball by the link is the
/// identity on the link complex, shifted one degree up.
pub fn cone_iso_check(m: &Matroid, p: usize, ring: Ring) -> Result<ConeIsoReport, HodgeError> {
    let link = pq_complex(m, &Region::Link, p, ring)?;
    let ball = pq_complex(m, &Region::Ball, p, ring)?;
    let (rel_cells, rel_complex) = apex_relative(&ball)?;

    let mut cells_match = rel_cells.len() == link.levels() + 1 && rel_cells[0].is_empty();
    if cells_match {
        'outer: for k in 1..rel_cells.len() {
            let shifted = link.cells_at(k - 1);
            if rel_cells[k].len() != shifted.len() {
                cells_match = false;
                break;
            }
            for (a, b) in rel_cells[k].iter().zip(shifted) {
                if a.flats != b.flats
                    || !a.has_apex
                    || b.has_apex
                    || a.coefficient.basis_rows() != b.coefficient.basis_rows()
                {
                    cells_match = false;
                    break 'outer;
                }
            }
        }
    }

    let mut boundaries_match = cells_match;
    if boundaries_match {
        for k in 1..rel_cells.len() {
            let rel = rel_complex.boundary(k).triples();
            let shifted = link.boundary(k - 1).triples();
            if rel != shifted {
                boundaries_match = false;
                break;
            }
        }
    }

    let rel_groups = rel_complex.homology();
    let link_groups = link.chain_complex().homology();
    let strip = |mut gs: Vec<HomologyGroup>| -> Vec<HomologyGroup> {
        if ring == Ring::Rat {
            for g in &mut gs {
                g.torsion.clear();
            }
        }
        gs
    };
    let rel_groups = strip(rel_groups);
    let link_groups = strip(link_groups);
    let homology_match = rel_groups.len() == link_groups.len() + 1
        && rel_groups[0].is_zero()
        && rel_groups[1..] == link_groups[..];

    let total_dims = (0..ball.levels()).map(|k| ball.total_dim(k)).collect();
    let pass = cells_match && boundaries_match && homology_match;
    Ok(ConeIsoReport {
        p,
        ring,
        cells_match,
        boundaries_match,
        homology_match,
        total_dims,
        pass,
    })
}

/// The index-2 witness on the seven-point rank-3 matroid: positive flats,
/// the flats generating the positive-side degree-1 group, a parity
/// functional certifying that a basis vector is missing, and the measured
/// indices over both rings.
#[derive(Clone, Debug)]
pub struct FanoTorsionReport {
    pub halfspace: Halfspace,
    pub positive_flats: Vec<Subset>,
    /// Flats whose rays generate the positive-side degree-1 group.
    pub generating_flats: Vec<Subset>,
    /// Sum of the parity functional over each generating flat.
    pub parity_evaluations: Vec<(Subset, u32)>,
    pub generators_all_even: bool,
    /// The singleton whose parity is odd, so its ray cannot be generated.
    pub excluded_singleton: Subset,
    pub excluded_parity: u32,
    pub excluded_ray_in_positive_group: bool,
    pub integral: PComparison,
    pub rational: PComparison,
    pub pass: bool,
}

/// Runs the index-2 witness: under the normal `(4,4,4,-3,-3,-3)` the
/// positive-side degree-1 group of the seven-point rank-3 matroid has full
/// rank but index 2, detected by the parity functional that is even on
/// every generating ray and odd on the fourth ground element.
pub fn torsion_witness_fano() -> Result<FanoTorsionReport, HodgeError> {
    let m = Matroid::fano();
    let h = Halfspace::from_integers(&[4, 4, 4, -3, -3, -3]);
    let fan = BergmanFan::bergman_fan(&m)?;

    let mut positive = positive_flats(&fan, &h)?;
    positive.sort_by_key(|s| (s.card(), s.bits()));

    let mut generating: Vec<Subset> = Vec::new();
    for chain in maximal_flat_chains(&m)? {
        if chain.iter().any(|f| positive.contains(f)) {
            for f in chain {
                if !generating.contains(&f) {
                    generating.push(f);
                }
            }
        }
    }
    generating.sort_by_key(|s| (s.card(), s.bits()));

    // Parity functional: 0 on the first three ground elements, 1 on the
    // rest. On ambient vectors it reads off the sum of the middle three
    // coordinates, because the last ground element maps to minus the sum of
    // the basis.
    let theta = |s: &Subset| -> u32 { s.elems().iter().filter(|&&e| e >= 4).count() as u32 };
    let parity_evaluations: Vec<(Subset, u32)> =
        generating.iter().map(|f| (*f, theta(f))).collect();
    let generators_all_even = parity_evaluations.iter().all(|(_, v)| v % 2 == 0);

    let excluded_singleton = Subset::from_elems(&[4], m.n());
    let excluded_parity = theta(&excluded_singleton);
    let integral_positive = p_group_positive(&fan, &h, 1, Ring::Int)?;
    let excluded_ray_in_positive_group =
        integral_positive.contains(fan.realization().vector(4));

    let integral = halfspace_p_comparison(&m, &h, 1, Ring::Int)?;
    let rational = halfspace_p_comparison(&m, &h, 1, Ring::Rat)?;

    let pass = generators_all_even
        && excluded_parity % 2 == 1
        && !excluded_ray_in_positive_group
        && integral.rank_equal
        && integral.index.as_ref() == Some(&BigInt::from(2))
        && rational.rank_equal
        && rational.index.as_ref() == Some(&BigInt::one());
    Ok(FanoTorsionReport {
        halfspace: h,
        positive_flats: positive,
        generating_flats: generating,
        parity_evaluations,
        generators_all_even,
        excluded_singleton,
        excluded_parity,
        excluded_ray_in_positive_group,
        integral,
        rational,
        pass,
    })
}

/// Report of the low-degree cycle on the fan of `U(3,4)`: whether the
/// published filling system is inconsistent, and whether the cycle
/// actually bounds in the halflink complex by exact linear algebra.
#[derive(Clone, Debug)]
pub struct U34Report {
    pub halfspace: Halfspace,
    /// The constrained linear system for a filling in the restricted shape
    /// has no solution.
    pub system_inconsistent: bool,
    /// The cycle really is a cycle: its boundary into the augmentation
    /// vanishes.
    pub cycle_closes: bool,
    /// Whether the cycle fails to bound in the halflink complex.
    pub class_nonzero: bool,
    /// Bidegree of the chain the cycle cones to near the origin.
    pub bidegree: (usize, usize),
    /// Dimension of the fan.
    pub fan_dimension: usize,
    /// Whether the pushing bound `p + q < dim` holds for that bidegree; it
    /// does not, so no pushing argument applies to it.
    pub pushing_hypothesis_satisfied: bool,
}

/// Builds the halflink of `U(3,4)` under the normal `(3,4,5)`, forms the
/// degree-1 cycle `sum (e_{i-1} - e_i) . {i}` over the three positive
/// singleton vertices (indices cyclic), and reports: the inconsistency of
/// the constrained filling system over the two-cone coefficients, and the
/// exact verdict on whether the cycle bounds.
pub fn u34_witness() -> Result<U34Report, HodgeError> {
    let m = Matroid::uniform(3, 4).expect("parameters 3 <= 4 are valid");
    let h = Halfspace::from_integers(&[3, 4, 5]);
    let region = Region::HalfLink(h.clone());
    let pq = pq_complex(&m, &region, 1, Ring::Int)?;
    let fan = BergmanFan::bergman_fan(&m)?;

    // The cycle assigns e_{i-1} - e_i to the vertex {i}, i = 1, 2, 3 cyclic.
    let dim1 = pq.total_dim(1);
    let mut cycle = vec![BigInt::zero(); dim1];
    for i in 1u32..=3 {
        let prev = if i == 1 { 3 } else { i - 1 };
        let value: Vec<BigInt> = fan
            .realization()
            .vector(prev)
            .iter()
            .zip(fan.realization().vector(i))
            .map(|(a, b)| a - b)
            .collect();
        let flat = Subset::from_elems(&[i], m.n());
        let (idx, cell) = pq
            .cells_at(1)
            .iter()
            .enumerate()
            .find(|(_, c)| c.flats == [flat])
            .expect("positive singleton vertices are halflink cells");
        let coeffs = cell
            .coefficient
            .coefficients_of(&value)
            .expect("the cycle values lie in the vertex coefficients");
        let start = pq.block_start(1, idx);
        for (k, v) in coeffs.into_iter().enumerate() {
            cycle[start + k] = v;
        }
    }

    let mut closes = vec![BigInt::zero(); pq.total_dim(0)];
    for (r, c, v) in pq.boundary(1).triples() {
        closes[r] += BigInt::from(v) * &cycle[c];
    }
    let cycle_closes = closes.iter().all(BigInt::is_zero);

    let dim2 = pq.total_dim(2);
    let mut rows = vec![vec![BigInt::zero(); dim2]; dim1];
    for (r, c, v) in pq.boundary(2).triples() {
        rows[r][c] = BigInt::from(v);
    }
    let class_nonzero = solve_z(&rows, dim2, &cycle).is_none();

    // The published filling system over the coefficients of the three
    // two-dimensional cones, unknowns a_1..a_3 and b_1..b_3 with indices
    // cyclic: b_i + a_{i+1} + b_{i+1} = 0, a_{i+1} - b_{i+1} = 0, a_i = 1.
    let mut system: Vec<Vec<BigInt>> = Vec::new();
    let mut augmented: Vec<Vec<BigInt>> = Vec::new();
    let mut push_eq = |coeffs: [(usize, i64); 3], rhs: i64| {
        let mut row = vec![BigInt::zero(); 6];
        for (col, v) in coeffs {
            row[col] += BigInt::from(v);
        }
        let mut aug = row.clone();
        aug.push(BigInt::from(rhs));
        system.push(row);
        augmented.push(aug);
    };
    for i in 0..3usize {
        let next = (i + 1) % 3;
        push_eq([(3 + i, 1), (next, 1), (3 + next, 1)], 0);
        push_eq([(next, 1), (3 + next, -1), (3 + next, 0)], 0);
        push_eq([(i, 1), (i, 0), (i, 0)], 1);
    }
    let system_inconsistent = rank_big(&system) < rank_big(&augmented);

    let bidegree = (1usize, 1usize);
    let fan_dimension = fan.top_dimension() as usize;
    Ok(U34Report {
        halfspace: h,
        system_inconsistent,
        cycle_closes,
        class_nonzero,
        bidegree,
        fan_dimension,
        pushing_hypothesis_satisfied: bidegree.0 + bidegree.1 < fan_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology;

    fn uniform(r: u32, n: u32) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    #[test]
    fn p_groups_of_small_fans() {
        let fan = BergmanFan::bergman_fan(&uniform(2, 3)).unwrap();
        let full = p_group_full(&fan, 1, Ring::Int).unwrap();
        assert_eq!(full.rank(), 2);
        assert_eq!(full.ambient_dim(), 2);
        assert!(full.contains(&[BigInt::one(), BigInt::zero()]));
        assert!(full.contains(&[BigInt::zero(), BigInt::one()]));

        let degree_zero = p_group_full(&fan, 0, Ring::Int).unwrap();
        assert_eq!(degree_zero.rank(), 1);
        assert_eq!(degree_zero.ambient_dim(), 1);

        // Chains have at most one flat here, so degree 2 is empty.
        assert_eq!(p_group_full(&fan, 2, Ring::Int).unwrap().rank(), 0);

        // A single two-flat chain on U(3,4): the wedge of e_1 and
        // e_1 + e_2 is e_1 wedge e_2, the first coordinate axis.
        let fan34 = BergmanFan::bergman_fan(&uniform(3, 4)).unwrap();
        let chain = vec![
            Subset::from_elems(&[1], 4),
            Subset::from_elems(&[1, 2], 4),
        ];
        let single = p_group(&fan34, &[chain], 2, Ring::Int).unwrap();
        assert_eq!(single.rank(), 1);
        assert_eq!(
            single.basis_rows(),
            &[vec![BigInt::one(), BigInt::zero(), BigInt::zero()]]
        );

        let fano = BergmanFan::bergman_fan(&Matroid::fano()).unwrap();
        let fano_full = p_group_full(&fano, 1, Ring::Int).unwrap();
        assert_eq!(fano_full.rank(), 6);
        for i in 1..=7 {
            assert!(fano_full.contains(fano.realization().vector(i)));
        }
    }

    #[test]
    fn p_groups_grow_with_more_chains() {
        let m = Matroid::fano();
        let fan = BergmanFan::bergman_fan(&m).unwrap();
        let all = maximal_flat_chains(&m).unwrap();
        for p in 0..=2 {
            let part = p_group(&fan, &all[..5], p, Ring::Int).unwrap();
            let full = p_group(&fan, &all, p, Ring::Int).unwrap();
            assert!(part.is_sublattice_of(&full));
        }
        let h = Halfspace::from_integers(&[1, -2, 4, -8, 16, -32]);
        for p in 0..=2 {
            let positive = p_group_positive(&fan, &h, p, Ring::Int).unwrap();
            let full = p_group_full(&fan, p, Ring::Int).unwrap();
            assert!(positive.is_sublattice_of(&full));
        }
    }

    #[test]
    fn chain_validation_rejects_junk() {
        let fan = BergmanFan::bergman_fan(&uniform(3, 4)).unwrap();
        // Two incomparable singletons are not a chain.
        let bad = vec![
            Subset::from_elems(&[1], 4),
            Subset::from_elems(&[2], 4),
        ];
        assert!(matches!(
            p_group(&fan, &[bad], 1, Ring::Int),
            Err(HodgeError::NotAChain(_))
        ));
        // The full set is not a proper flat.
        let full_set = vec![Subset::full(4)];
        assert!(matches!(
            p_group(&fan, &[full_set], 1, Ring::Int),
            Err(HodgeError::NotAChain(_))
        ));
    }

    #[test]
    fn the_seven_point_halfspace_has_index_two() {
        let m = Matroid::fano();
        let h = Halfspace::from_integers(&[4, 4, 4, -3, -3, -3]);
        let integral = halfspace_p_comparison(&m, &h, 1, Ring::Int).unwrap();
        assert_eq!(integral.rank_full, 6);
        assert_eq!(integral.rank_positive, 6);
        assert!(integral.rank_equal);
        assert_eq!(integral.index, Some(BigInt::from(2)));

        let rational = halfspace_p_comparison(&m, &h, 1, Ring::Rat).unwrap();
        assert!(rational.rank_equal);
        assert_eq!(rational.index, Some(BigInt::one()));

        // Degree 0 sees no difference at all.
        let degree_zero = halfspace_p_comparison(&m, &h, 0, Ring::Int).unwrap();
        assert!(degree_zero.rank_equal);
        assert_eq!(degree_zero.index, Some(BigInt::one()));
    }

    #[test]
    fn the_parity_certificate_excludes_the_fourth_ray() {
        let report = torsion_witness_fano().unwrap();
        let flat = |elems: &[u32]| Subset::from_elems(elems, 7);
        assert_eq!(
            report.positive_flats,
            vec![flat(&[1]), flat(&[2]), flat(&[3]), flat(&[1, 2, 3])]
        );
        assert_eq!(
            report.generating_flats,
            vec![
                flat(&[1]),
                flat(&[2]),
                flat(&[3]),
                flat(&[1, 2, 3]),
                flat(&[1, 4, 5]),
                flat(&[2, 4, 6]),
                flat(&[3, 5, 6]),
                flat(&[3, 4, 7]),
                flat(&[2, 5, 7]),
                flat(&[1, 6, 7]),
            ]
        );
        for (f, v) in &report.parity_evaluations {
            let expected = if f.card() == 1 || *f == flat(&[1, 2, 3]) {
                0
            } else {
                2
            };
            assert_eq!(*v, expected, "parity of {f}");
        }
        assert!(report.generators_all_even);
        assert_eq!(report.excluded_singleton, flat(&[4]));
        assert_eq!(report.excluded_parity, 1);
        assert!(!report.excluded_ray_in_positive_group);
        assert!(report.pass);
    }

    #[test]
    fn nongeneric_halfspaces_are_refused() {
        let m = Matroid::fano();
        let h = Halfspace::from_integers(&[1, -1, 0, 0, 0, 0]);
        let err = halfspace_p_comparison(&m, &h, 1, Ring::Int).unwrap_err();
        match err {
            HodgeError::NonGenericHalfspace { witness } => {
                assert_eq!(witness, Subset::from_elems(&[1, 2], 7));
            }
            other => panic!("expected a genericity error, got {other}"),
        }
    }

    #[test]
    fn degree_zero_links_recover_reduced_homology() {
        for m in [uniform(2, 3), uniform(3, 4), Matroid::fano()] {
            let lat = proper_lattice(&m).unwrap();
            let expected = reduced_homology(&lat.order_complex()).unwrap();
            let got = pq_homology(&m, &Region::Link, 0, Ring::Int).unwrap();
            for d in -1..=expected.max_dim() {
                assert_eq!(got.group(d), expected.group(d), "dimension {d}");
            }
        }
    }

    #[test]
    fn the_triangle_link_in_degree_one() {
        let pq = pq_complex(&uniform(2, 3), &Region::Link, 1, Ring::Int).unwrap();
        assert_eq!(pq.levels(), 2);
        assert_eq!(pq.total_dim(0), 2);
        assert_eq!(pq.total_dim(1), 3);
        let h = pq.homology();
        // The three rays sum to zero, so one relation survives in degree 0
        // and the augmentation is exactly covered.
        assert_eq!(h.group(-1), HomologyGroup::free(0));
        assert_eq!(h.group(0), HomologyGroup::free(1));
    }

    #[test]
    fn ball_regions_are_acyclic() {
        for m in [uniform(2, 3), uniform(3, 4)] {
            for p in 0..=2 {
                let h = pq_homology(&m, &Region::Ball, p, Ring::Int).unwrap();
                assert!(h.is_trivial(), "ball of rank {} in degree {p}", m.rank());
            }
        }
    }

    #[test]
    fn cones_shift_the_link_by_one_degree() {
        for (m, p) in [
            (uniform(2, 3), 1),
            (Matroid::boolean(3).unwrap(), 0),
            (Matroid::boolean(3).unwrap(), 1),
            (uniform(3, 4), 2),
            (Matroid::fano(), 1),
        ] {
            let report = cone_iso_check(&m, p, Ring::Int).unwrap();
            assert!(report.cells_match, "cells for degree {p}");
            assert!(report.boundaries_match, "boundaries for degree {p}");
            assert!(report.homology_match, "homology for degree {p}");
            assert!(report.pass);
        }
    }

    #[test]
    fn relative_ball_link_homology_matches_the_link() {
        let m = Matroid::fano();
        let rel = pq_relative_homology(&m, 1, Ring::Int).unwrap();
        let link = pq_homology(&m, &Region::Link, 1, Ring::Int).unwrap();
        for q in 0..=3 {
            assert_eq!(rel.group(q), link.group(q - 1), "dimension {q}");
        }
    }

    #[test]
    fn the_seven_point_halflink_fails_integrally_but_not_rationally() {
        let m = Matroid::fano();
        let h = Halfspace::from_integers(&[4, 4, 4, -3, -3, -3]);
        let region = Region::HalfLink(h);

        // Rationally everything in reach of the bound p + q <= rank - 3
        // vanishes.
        for (p, q) in [(0usize, -1i64), (0, 0), (1, -1)] {
            let groups = pq_homology(&m, &region, p, Ring::Rat).unwrap();
            assert!(groups.group(q).is_zero(), "degree ({p},{q})");
        }

        // Integrally the augmentation quotient detects the index-2 drop.
        let integral = pq_homology(&m, &region, 1, Ring::Int).unwrap();
        assert_eq!(
            integral.group(-1),
            HomologyGroup {
                betti: 0,
                torsion: vec![BigInt::from(2)],
            }
        );
    }

    #[test]
    fn the_rank_three_cycle_bounds_even_though_the_published_system_cannot() {
        let report = u34_witness().unwrap();
        assert!(report.system_inconsistent);
        assert!(report.cycle_closes);
        // The restricted filling shape has no solution, but the complex
        // contains other fillings: assigning e_i to the cone over the edge
        // from {i} to {i, i+1} bounds the cycle, so the class vanishes.
        assert!(!report.class_nonzero);
        assert_eq!(report.bidegree, (1, 1));
        assert_eq!(report.fan_dimension, 2);
        assert!(!report.pushing_hypothesis_satisfied);
    }

    #[test]
    fn rational_framing_on_small_uniforms() {
        for (m, normal) in [
            (uniform(3, 4), vec![1i64, -2, 4]),
            (uniform(3, 5), vec![1, -2, 4, -8]),
            (uniform(4, 5), vec![1, -2, 4, -8]),
        ] {
            let h = Halfspace::from_integers(&normal);
            let top = (m.rank() - 1) as usize;
            for p in 0..top {
                let cmp = halfspace_p_comparison(&m, &h, p, Ring::Rat).unwrap();
                assert!(cmp.rank_equal, "rank {} degree {p}", m.rank());
                assert_eq!(cmp.index, Some(BigInt::one()));
            }
        }
    }
}
