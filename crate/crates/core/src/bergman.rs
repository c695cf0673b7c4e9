//! Fans built from matroids over an explicit integer circuit.
//!
//! A circuit realization places the ground set `[n]` at integer vectors
//! `e_1..e_n` in `Z^{n-1}` that sum to zero, any `n-1` of which form a
//! lattice basis. Every proper nonempty flat `F` gets the ray
//! `e_F = sum of e_i over i in F`, and every chain of proper flats spans a
//! cone whose dimension equals the chain length. On top of this the module
//! provides the balancing check along codimension-1 chains, the local
//! restriction/contraction split at a flat, and the halfspace machinery:
//! an integer or rational normal induces the weight `omega_i = normal . e_i`,
//! whose positive flats cut out a subcomplex of the order complex of flats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::homology::{relative_homology, Homology, HomologyError};
use crate::linalg::{det_big, rank_big};
use crate::matroid::{Matroid, MatroidError, Minor};
use crate::poset::{filtered, proper_lattice, Poset, PosetError};
use crate::subset::Subset;
use crate::weight::Weight;

/// Errors from fan construction and the halfspace operations.
#[derive(Debug, Error)]
pub enum BergmanError {
    /// Parameters outside the supported range, or vectors that fail the
    /// circuit axioms.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// The flats handed to the balancing check are not a maximal chain with
    /// one flat removed.
    #[error("not a subchain of a maximal chain: {0}")]
    NotASubchain(String),
    /// The subset is not a proper nonempty flat of the matroid.
    #[error("not a proper nonempty flat: {0}")]
    NotAFlat(Subset),
    /// The halfspace normal vanishes on some proper nonempty subset of the
    /// ground set.
    #[error("halfspace is not generic: {witness} has weight 0")]
    NonGenericHalfspace {
        /// A proper nonempty subset whose induced weight sums to zero.
        witness: Subset,
    },
    /// A failure bubbled up from the lattice of flats.
    #[error(transparent)]
    Lattice(#[from] PosetError),
    /// A failure bubbled up from a matroid computation.
    #[error(transparent)]
    MatroidOp(#[from] MatroidError),
    /// A failure bubbled up from a relative homology pair.
    #[error(transparent)]
    Pair(#[from] HomologyError),
}

/// An integer circuit: `n` vectors in `Z^{n-1}` that sum to zero, any `n-1`
/// of which form a basis of the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitRealization {
    n: u32,
    vectors: Vec<Vec<BigInt>>,
}

impl CircuitRealization {
    /// Validates and wraps an explicit family of vectors: at least two of
    /// them, each of length one less than their number, summing to zero,
    /// with every `n-1` of them of determinant `+-1`.
    pub fn new(vectors: Vec<Vec<BigInt>>) -> Result<CircuitRealization, BergmanError> {
        let n = vectors.len();
        if n < 2 {
            return Err(BergmanError::InvalidParameters(format!(
                "a circuit needs at least 2 vectors, got {n}"
            )));
        }
        let d = n - 1;
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(BergmanError::InvalidParameters(format!(
                    "vector {} has {} coordinates, expected {}",
                    i + 1,
                    v.len(),
                    d
                )));
            }
        }
        for j in 0..d {
            let total = vectors.iter().fold(BigInt::zero(), |acc, v| acc + &v[j]);
            if !total.is_zero() {
                return Err(BergmanError::InvalidParameters(format!(
                    "coordinate {} sums to {total} over the circuit, expected 0",
                    j + 1
                )));
            }
        }
        for skip in 0..n {
            let sub: Vec<Vec<BigInt>> = (0..n)
                .filter(|&i| i != skip)
                .map(|i| vectors[i].clone())
                .collect();
            let det = det_big(&sub);
            if !det.magnitude().is_one() {
                return Err(BergmanError::InvalidParameters(format!(
                    "dropping vector {} leaves determinant {det}, expected +-1",
                    skip + 1
                )));
            }
        }
        Ok(CircuitRealization {
            n: n as u32,
            vectors,
        })
    }

    /// The canonical circuit: `e_i` is the `i`-th standard basis vector for
    /// `i < n`, and `e_n` is the negated sum of the others.
    pub fn standard_circuit(n: u32) -> Result<CircuitRealization, BergmanError> {
        if n < 2 {
            return Err(BergmanError::InvalidParameters(format!(
                "a circuit needs a ground set of at least 2 elements, got {n}"
            )));
        }
        let d = (n - 1) as usize;
        let mut vectors = Vec::with_capacity(n as usize);
        for i in 0..d {
            let mut v = vec![BigInt::zero(); d];
            v[i] = BigInt::one();
            vectors.push(v);
        }
        vectors.push(vec![-BigInt::one(); d]);
        CircuitRealization::new(vectors)
    }

    /// Number of vectors, i.e. the ground set size they realize.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension of the ambient space, `n - 1`.
    pub fn dim(&self) -> usize {
        self.n as usize - 1
    }

    /// The vector of ground element `i` (1-based).
    pub fn vector(&self, i: u32) -> &[BigInt] {
        assert!(i >= 1 && i <= self.n, "element out of range");
        &self.vectors[(i - 1) as usize]
    }

    /// The sum of the vectors of the elements of `s`.
    pub fn vector_of_subset(&self, s: &Subset) -> Vec<BigInt> {
        assert_eq!(s.ground_size(), self.n, "ground set mismatch");
        let mut out = vec![BigInt::zero(); self.dim()];
        for e in s.elems() {
            for (j, c) in self.vectors[(e - 1) as usize].iter().enumerate() {
                out[j] += c;
            }
        }
        out
    }
}

/// The strict positive side of a linear functional on the circuit's ambient
/// space, given by its normal vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    normal: Vec<BigRational>,
}

impl Halfspace {
    /// Wraps a normal vector.
    pub fn new(normal: Vec<BigRational>) -> Halfspace {
        Halfspace { normal }
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(v: &[i64]) -> Halfspace {
        Halfspace {
            normal: v
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        }
    }

    /// The normal vector.
    pub fn normal(&self) -> &[BigRational] {
        &self.normal
    }

    /// The opposite halfspace, with negated normal.
    pub fn negated(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|x| -x).collect(),
        }
    }

    /// The weight `omega_i = normal . e_i` for each ground element. The
    /// entries always sum to zero because the circuit's vectors do.
    pub fn induced_weight(&self, c: &CircuitRealization) -> Result<Weight, BergmanError> {
        if self.normal.len() != c.dim() {
            return Err(BergmanError::InvalidParameters(format!(
                "normal has {} coordinates, the circuit lives in dimension {}",
                self.normal.len(),
                c.dim()
            )));
        }
        let entries: Vec<BigRational> = (1..=c.n())
            .map(|i| {
                c.vector(i)
                    .iter()
                    .zip(&self.normal)
                    .fold(BigRational::zero(), |acc, (e, nj)| {
                        acc + nj * BigRational::from_integer(e.clone())
                    })
            })
            .collect();
        let w = Weight::new(entries);
        assert!(w.total().is_zero(), "induced weights must sum to zero");
        Ok(w)
    }
}

/// A matroid's fan over a circuit realization: one ray per proper nonempty
/// flat, one cone per chain of proper flats. Construction verifies that
/// every maximal chain spans a cone of dimension equal to its length.
#[derive(Clone, Debug)]
pub struct BergmanFan {
    matroid: Matroid,
    realization: CircuitRealization,
}

impl BergmanFan {
    /// Builds the fan over the standard circuit.
    pub fn bergman_fan(m: &Matroid) -> Result<BergmanFan, BergmanError> {
        BergmanFan::over(m, CircuitRealization::standard_circuit(m.n())?)
    }

    /// Builds the fan over an explicit realization of the same ground set.
    pub fn over(m: &Matroid, realization: CircuitRealization) -> Result<BergmanFan, BergmanError> {
        if realization.n() != m.n() {
            return Err(BergmanError::InvalidParameters(format!(
                "realization covers {} elements, the matroid has {}",
                realization.n(),
                m.n()
            )));
        }
        let fan = BergmanFan {
            matroid: m.clone(),
            realization,
        };
        fan.check_cone_ranks()?;
        Ok(fan)
    }

    /// Every maximal chain of proper flats must have linearly independent
    /// rays; subchains inherit the property.
    fn check_cone_ranks(&self) -> Result<(), BergmanError> {
        if self.matroid.rank() < 2 {
            return Ok(());
        }
        let lattice = proper_lattice(&self.matroid)?;
        let elems = lattice.elements();
        for chain in lattice.maximal_chains() {
            let rows: Vec<Vec<BigInt>> = chain
                .iter()
                .map(|&i| self.realization.vector_of_subset(&elems[i]))
                .collect();
            let rank = rank_big(&rows);
            if rank != rows.len() {
                return Err(BergmanError::InvalidParameters(format!(
                    "a chain of {} flats spans a cone of dimension {rank}",
                    rows.len()
                )));
            }
        }
        Ok(())
    }

    /// The underlying matroid.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// The circuit realization in use.
    pub fn realization(&self) -> &CircuitRealization {
        &self.realization
    }

    /// Dimension of the largest cones: one less than the matroid rank,
    /// since chains of proper flats have at most `rank - 1` members.
    pub fn top_dimension(&self) -> u32 {
        self.matroid.rank() - 1
    }

    /// One ray per proper nonempty flat, by rank then bitmask.
    pub fn rays(&self) -> Vec<(Subset, Vec<BigInt>)> {
        self.matroid
            .proper_flats()
            .iter()
            .map(|f| (*f, self.realization.vector_of_subset(f)))
            .collect()
    }

    /// The ray of one proper nonempty flat.
    pub fn ray(&self, f: &Subset) -> Result<Vec<BigInt>, BergmanError> {
        if f.is_empty() || f.is_full() || !self.matroid.is_flat(f) {
            return Err(BergmanError::NotAFlat(*f));
        }
        Ok(self.realization.vector_of_subset(f))
    }

    /// Number of cones spanned by chains of exactly `len` proper flats.
    pub fn cone_count(&self, len: usize) -> usize {
        if self.matroid.rank() < 2 {
            return usize::from(len == 0);
        }
        let lattice = proper_lattice(&self.matroid).expect("rank checked above");
        let by_card = lattice.order_complex().faces_by_card().clone();
        by_card.get(len).map_or(0, |faces| faces.len())
    }

    /// Balancing along one codimension-1 chain: `subchain` must be a
    /// maximal chain of proper flats with exactly one flat removed, and the
    /// check passes when the sum of the rays of all flats completing it
    /// back to a maximal chain lies in the linear span of the subchain's
    /// own rays, decided by exact rank comparison.
    pub fn balancing_check(&self, subchain: &[Subset]) -> Result<bool, BergmanError> {
        let m = &self.matroid;
        let r = m.rank();
        if r < 2 {
            return Err(BergmanError::NotASubchain(
                "a matroid of rank < 2 has no chains of proper flats".into(),
            ));
        }
        let mut chain: Vec<Subset> = subchain.to_vec();
        chain.sort_by_key(|s| s.card());
        for f in &chain {
            if f.is_empty() || f.is_full() || !m.is_flat(f) {
                return Err(BergmanError::NotASubchain(format!(
                    "{f} is not a proper nonempty flat"
                )));
            }
        }
        for w in chain.windows(2) {
            if !w[0].is_proper_subset_of(&w[1]) {
                return Err(BergmanError::NotASubchain(format!(
                    "{} and {} are not nested",
                    w[0], w[1]
                )));
            }
        }
        if chain.len() != (r - 2) as usize {
            return Err(BergmanError::NotASubchain(format!(
                "expected {} flats (a maximal chain minus one), got {}",
                r - 2,
                chain.len()
            )));
        }
        // Nested distinct flats have strictly increasing ranks, so exactly
        // one rank in 1..r is missing; completions live there.
        let ranks: Vec<u32> = chain
            .iter()
            .map(|f| m.rank_of_flat(f).expect("validated above"))
            .collect();
        let missing = (1..r)
            .find(|k| !ranks.contains(k))
            .expect("one rank is missing");
        let below = match ranks.iter().position(|&k| k == missing - 1) {
            Some(i) => chain[i],
            None => Subset::empty(m.n()),
        };
        let above = match ranks.iter().position(|&k| k == missing + 1) {
            Some(i) => chain[i],
            None => Subset::full(m.n()),
        };
        let mut total = vec![BigInt::zero(); self.realization.dim()];
        for g in m.flats_of_rank(missing) {
            if below.is_subset_of(&g) && g.is_subset_of(&above) {
                for (j, c) in self.realization.vector_of_subset(&g).into_iter().enumerate() {
                    total[j] += c;
                }
            }
        }
        let base: Vec<Vec<BigInt>> = chain
            .iter()
            .map(|f| self.realization.vector_of_subset(f))
            .collect();
        let before = rank_big(&base);
        let mut augmented = base;
        augmented.push(total);
        Ok(rank_big(&augmented) == before)
    }

    /// The positive part of the fan under a generic halfspace: the order
    /// complex of the flats with positive induced weight, tagged with their
    /// rays.
    pub fn positive_part(&self, h: &Halfspace) -> Result<PositivePart, BergmanError> {
        let weight = h.induced_weight(&self.realization)?;
        if let Some(witness) = weight.nongeneric_witness() {
            return Err(BergmanError::NonGenericHalfspace { witness });
        }
        let lattice = proper_lattice(&self.matroid)?;
        let kept = filtered(&lattice, &weight, &BigRational::zero());
        let complex = kept.poset.order_complex();
        let rays = kept
            .poset
            .elements()
            .iter()
            .map(|f| (*f, self.realization.vector_of_subset(f)))
            .collect();
        Ok(PositivePart {
            complex,
            rays,
            weight,
        })
    }

    /// Relative homology of the full order complex of proper flats against
    /// its positive part under `h`. The verdict is PASS when the homology
    /// is free and concentrated in dimension `rank - 2`.
    pub fn lefschetz_pair(&self, h: &Halfspace) -> Result<LefschetzReport, BergmanError> {
        let part = self.positive_part(h)?;
        let ambient = proper_lattice(&self.matroid)?.order_complex();
        let homology = relative_homology(&ambient, &part.complex)?;
        let expected_dim = self.matroid.rank() as i64 - 2;
        let pass =
            homology.concentrated_in(expected_dim) && homology.group(expected_dim).is_free();
        Ok(LefschetzReport {
            homology,
            expected_dim,
            pass,
        })
    }
}

/// The positive flats of a fan under a halfspace, as a tagged complex.
#[derive(Clone, Debug)]
pub struct PositivePart {
    /// Order complex of the positive flats.
    pub complex: SimplicialComplex,
    /// The positive flats and their rays, one per vertex of the complex.
    pub rays: Vec<(Subset, Vec<BigInt>)>,
    /// The weight induced on the ground set by the halfspace normal.
    pub weight: Weight,
}

/// Outcome of a relative pair computation for a matroid and a halfspace.
#[derive(Clone, Debug)]
pub struct LefschetzReport {
    /// Relative homology groups of the pair.
    pub homology: Homology,
    /// The single dimension the pair is expected to be concentrated in.
    pub expected_dim: i64,
    /// True when the homology is free and concentrated in `expected_dim`.
    pub pass: bool,
}

/// Splits a matroid at a proper nonempty flat into its restriction and
/// contraction, the two local factors of the fan at the corresponding ray.
pub fn local_fans(m: &Matroid, f: &Subset) -> Result<(Minor, Minor), BergmanError> {
    if f.is_empty() || f.is_full() || !m.is_flat(f) {
        return Err(BergmanError::NotAFlat(*f));
    }
    Ok((m.restrict(f), m.contract(f)))
}

/// The positive part over the standard circuit.
pub fn positive_part(m: &Matroid, h: &Halfspace) -> Result<PositivePart, BergmanError> {
    BergmanFan::bergman_fan(m)?.positive_part(h)
}

/// The relative pair report over the standard circuit.
pub fn lefschetz_pair(m: &Matroid, h: &Halfspace) -> Result<LefschetzReport, BergmanError> {
    BergmanFan::bergman_fan(m)?.lefschetz_pair(h)
}

/// The order complex of the proper nonempty subsets that are NOT flats:
/// the deletion of the flat vertices from the Boolean order complex.
pub fn boolean_minus_flats(m: &Matroid) -> Result<SimplicialComplex, BergmanError> {
    boolean_part(m, |m, s| !m.is_flat(s))
}

/// The order complex of the proper nonempty subsets of full rank: the
/// deletion of the nonspanning vertices from the Boolean order complex.
pub fn boolean_minus_nonspanning(m: &Matroid) -> Result<SimplicialComplex, BergmanError> {
    boolean_part(m, |m, s| m.rank_of(s) == m.rank())
}

fn boolean_part(
    m: &Matroid,
    keep: impl Fn(&Matroid, &Subset) -> bool,
) -> Result<SimplicialComplex, BergmanError> {
    let n = m.n();
    let count = (1u64 << n) - 2;
    if count > 128 {
        return Err(BergmanError::Lattice(PosetError::TooManyElements(
            count as usize,
        )));
    }
    let subs: Vec<Subset> = (1..(1u32 << n) - 1)
        .map(|bits| Subset::new(bits, n))
        .filter(|s| keep(m, s))
        .collect();
    let poset = Poset::from_subsets(n, &subs)?;
    Ok(poset.order_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::homology::reduced_homology;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn standard_circuits() {
        let c = CircuitRealization::standard_circuit(3).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.vector(1), &big(&[1, 0])[..]);
        assert_eq!(c.vector(2), &big(&[0, 1])[..]);
        assert_eq!(c.vector(3), &big(&[-1, -1])[..]);

        let c2 = CircuitRealization::standard_circuit(2).unwrap();
        assert_eq!(c2.vector(1), &big(&[1])[..]);
        assert_eq!(c2.vector(2), &big(&[-1])[..]);

        // Every 3-subset of the 4-element circuit has determinant +-1.
        let c4 = CircuitRealization::standard_circuit(4).unwrap();
        for skip in 1..=4u32 {
            let sub: Vec<Vec<BigInt>> = (1..=4)
                .filter(|&i| i != skip)
                .map(|i| c4.vector(i).to_vec())
                .collect();
            assert!(det_big(&sub).magnitude().is_one(), "skip {skip}");
        }

        assert!(matches!(
            CircuitRealization::standard_circuit(1),
            Err(BergmanError::InvalidParameters(_))
        ));
        // Vectors that do not sum to zero are rejected.
        assert!(matches!(
            CircuitRealization::new(vec![big(&[1]), big(&[1])]),
            Err(BergmanError::InvalidParameters(_))
        ));
        // A sublattice of index 2 is not a circuit.
        assert!(matches!(
            CircuitRealization::new(vec![big(&[2]), big(&[-2])]),
            Err(BergmanError::InvalidParameters(_))
        ));
    }

    #[test]
    fn fan_shapes() {
        let line = BergmanFan::bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let rays = line.rays();
        assert_eq!(rays.len(), 3);
        assert_eq!(rays[0], (Subset::from_elems(&[1], 3), big(&[1, 0])));
        assert_eq!(rays[1], (Subset::from_elems(&[2], 3), big(&[0, 1])));
        assert_eq!(rays[2], (Subset::from_elems(&[3], 3), big(&[-1, -1])));
        assert_eq!(line.cone_count(1), 3);
        assert_eq!(line.cone_count(2), 0);
        assert_eq!(line.top_dimension(), 1);

        let fano = BergmanFan::bergman_fan(&Matroid::fano()).unwrap();
        assert_eq!(fano.rays().len(), 14);
        assert_eq!(fano.cone_count(2), 21);
        assert_eq!(fano.top_dimension(), 2);
        let l = Subset::from_elems(&[1, 2, 3], 7);
        assert_eq!(fano.ray(&l).unwrap(), big(&[1, 1, 1, 0, 0, 0]));
        let pair = Subset::from_elems(&[1, 2], 7);
        assert!(matches!(fano.ray(&pair), Err(BergmanError::NotAFlat(_))));

        let cube = BergmanFan::bergman_fan(&Matroid::boolean(3).unwrap()).unwrap();
        assert_eq!(cube.rays().len(), 6);
        assert_eq!(cube.cone_count(2), 6);
        assert_eq!(
            cube.ray(&Subset::from_elems(&[1, 2], 3)).unwrap(),
            big(&[1, 1])
        );
    }

    #[test]
    fn balancing_on_small_fans() {
        // Rank 2: the empty subchain, completed by all three atoms, sums to
        // the zero vector.
        let line = BergmanFan::bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert!(line.balancing_check(&[]).unwrap());

        // Rank 3 with seven lines: both atom-removed and line-removed
        // subchains of every maximal chain balance.
        let fano = BergmanFan::bergman_fan(&Matroid::fano()).unwrap();
        let lattice = proper_lattice(fano.matroid()).unwrap();
        let elems = lattice.elements().to_vec();
        let chains = lattice.maximal_chains();
        assert_eq!(chains.len(), 21);
        for chain in &chains {
            for drop in 0..chain.len() {
                let sub: Vec<Subset> = chain
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &e)| elems[e])
                    .collect();
                assert!(fano.balancing_check(&sub).unwrap());
            }
        }

        // Rank 4 Boolean: all codimension-1 subchains of all 24 maximal
        // chains balance.
        let cube = BergmanFan::bergman_fan(&Matroid::boolean(4).unwrap()).unwrap();
        let lattice = proper_lattice(cube.matroid()).unwrap();
        let elems = lattice.elements().to_vec();
        let chains = lattice.maximal_chains();
        assert_eq!(chains.len(), 24);
        for chain in &chains {
            for drop in 0..chain.len() {
                let sub: Vec<Subset> = chain
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &e)| elems[e])
                    .collect();
                assert!(cube.balancing_check(&sub).unwrap());
            }
        }
    }

    #[test]
    fn balancing_rejects_bad_subchains() {
        let fano = BergmanFan::bergman_fan(&Matroid::fano()).unwrap();
        // Two atoms are not nested.
        let a1 = Subset::from_elems(&[1], 7);
        let a2 = Subset::from_elems(&[2], 7);
        assert!(matches!(
            fano.balancing_check(&[a1, a2]),
            Err(BergmanError::NotASubchain(_))
        ));
        // A pair is not a flat of the seven-point plane.
        let pair = Subset::from_elems(&[1, 2], 7);
        assert!(matches!(
            fano.balancing_check(&[pair]),
            Err(BergmanError::NotASubchain(_))
        ));
        // Wrong length: rank 2 wants the empty subchain.
        let line = BergmanFan::bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert!(matches!(
            line.balancing_check(&[Subset::from_elems(&[1], 3)]),
            Err(BergmanError::NotASubchain(_))
        ));
    }

    #[test]
    fn local_fan_splits() {
        let fano = Matroid::fano();
        let l = Subset::from_elems(&[1, 2, 3], 7);
        let (res, con) = local_fans(&fano, &l).unwrap();
        assert_eq!(res.matroid.n(), 3);
        assert_eq!(res.matroid.rank(), 2);
        assert_eq!(res.matroid, Matroid::uniform(2, 3).unwrap());
        assert_eq!(res.old_of_new, vec![1, 2, 3]);
        assert_eq!(con.matroid.n(), 4);
        assert_eq!(con.matroid.rank(), 1);
        assert_eq!(con.old_of_new, vec![4, 5, 6, 7]);

        let u34 = Matroid::uniform(3, 4).unwrap();
        let (res, con) = local_fans(&u34, &Subset::from_elems(&[1], 4)).unwrap();
        assert_eq!(res.matroid.n(), 1);
        assert_eq!(res.matroid.rank(), 1);
        assert_eq!(con.matroid, Matroid::uniform(2, 3).unwrap());
        assert_eq!(con.old_of_new, vec![2, 3, 4]);

        let b5 = Matroid::boolean(5).unwrap();
        let (res, con) = local_fans(&b5, &Subset::from_elems(&[2, 4], 5)).unwrap();
        assert_eq!(res.matroid, Matroid::boolean(2).unwrap());
        assert_eq!(con.matroid, Matroid::boolean(3).unwrap());
        assert_eq!(con.old_of_new, vec![1, 3, 5]);

        assert!(matches!(
            local_fans(&fano, &Subset::from_elems(&[1, 2], 7)),
            Err(BergmanError::NotAFlat(_))
        ));
        assert!(matches!(
            local_fans(&fano, &Subset::full(7)),
            Err(BergmanError::NotAFlat(_))
        ));
        assert!(matches!(
            local_fans(&fano, &Subset::empty(7)),
            Err(BergmanError::NotAFlat(_))
        ));
    }

    #[test]
    fn halfspace_weights() {
        let c3 = CircuitRealization::standard_circuit(3).unwrap();
        let h = Halfspace::from_integers(&[2, -1]);
        let w = h.induced_weight(&c3).unwrap();
        assert_eq!(w.entries(), Weight::from_integers(&[2, -1, -1]).entries());

        let h2 = Halfspace::from_integers(&[5, -1]);
        let w2 = h2.induced_weight(&c3).unwrap();
        assert_eq!(w2.entries(), Weight::from_integers(&[5, -1, -4]).entries());
        assert!(w2.total().is_zero());

        let c5 = CircuitRealization::standard_circuit(5).unwrap();
        let w5 = Halfspace::from_integers(&[3, 1, 4, 1])
            .induced_weight(&c5)
            .unwrap();
        assert!(w5.total().is_zero());

        assert!(matches!(
            Halfspace::from_integers(&[1, 2, 3]).induced_weight(&c3),
            Err(BergmanError::InvalidParameters(_))
        ));
    }

    #[test]
    fn positive_parts() {
        // Normal (2,-1) induces (2,-1,-1); only the flat {1} is positive.
        let u23 = Matroid::uniform(2, 3).unwrap();
        let part = positive_part(&u23, &Halfspace::from_integers(&[2, -1])).unwrap();
        assert_eq!(part.rays.len(), 1);
        assert_eq!(part.rays[0], (Subset::from_elems(&[1], 3), big(&[1, 0])));
        assert_eq!(part.complex.face_count(), 2);
        assert_eq!(part.complex.dim(), Some(0));

        // Normal (5,-1) induces (5,-1,-4); the Boolean lattice keeps
        // {1} < {1,2} and {1} < {1,3}, two edges sharing a vertex.
        let b3 = Matroid::boolean(3).unwrap();
        let part = positive_part(&b3, &Halfspace::from_integers(&[5, -1])).unwrap();
        let kept: Vec<Subset> = part.rays.iter().map(|(f, _)| *f).collect();
        assert_eq!(
            kept,
            vec![
                Subset::from_elems(&[1], 3),
                Subset::from_elems(&[1, 2], 3),
                Subset::from_elems(&[1, 3], 3),
            ]
        );
        assert_eq!(part.complex.face_count(), 6);
        assert_eq!(part.complex.dim(), Some(1));

        // A normal vanishing on a proper subset is rejected with a witness.
        let err = positive_part(&u23, &Halfspace::from_integers(&[1, -1]));
        match err {
            Err(BergmanError::NonGenericHalfspace { witness }) => {
                // (1,-1) induces (1,-1,0); the first zero subset in bitmask
                // order is {1,2}, ahead of the singleton {3}.
                assert_eq!(witness, Subset::from_elems(&[1, 2], 3));
            }
            other => panic!("expected a genericity error, got {other:?}"),
        }
    }

    #[test]
    fn opposite_halfspaces_partition_the_vertices() {
        let cases: Vec<(Matroid, Halfspace)> = vec![
            (Matroid::uniform(2, 3).unwrap(), Halfspace::from_integers(&[2, -1])),
            (Matroid::boolean(3).unwrap(), Halfspace::from_integers(&[5, -1])),
            (
                Matroid::fano(),
                Halfspace::from_integers(&[1, -2, 4, -8, 16, -32]),
            ),
            (
                Matroid::uniform(3, 5).unwrap(),
                Halfspace::from_integers(&[1, -2, 4, -8]),
            ),
        ];
        for (m, h) in cases {
            let plus = positive_part(&m, &h).unwrap();
            let minus = positive_part(&m, &h.negated()).unwrap();
            let mut all: Vec<Subset> = plus
                .rays
                .iter()
                .chain(minus.rays.iter())
                .map(|(f, _)| *f)
                .collect();
            all.sort();
            let mut expect = m.proper_flats();
            expect.sort();
            assert_eq!(all, expect, "partition fails for n={}", m.n());
        }
    }

    #[test]
    fn lefschetz_pairs() {
        // Three points against one point: two relative classes in dim 0.
        let u23 = Matroid::uniform(2, 3).unwrap();
        let report = lefschetz_pair(&u23, &Halfspace::from_integers(&[2, -1])).unwrap();
        assert_eq!(report.expected_dim, 0);
        assert_eq!(report.homology.betti(0), 2);
        assert!(report.homology.group(0).is_free());
        assert!(report.pass);

        // Hexagon against a contractible path: one class in dim 1.
        let b3 = Matroid::boolean(3).unwrap();
        let report = lefschetz_pair(&b3, &Halfspace::from_integers(&[5, -1])).unwrap();
        assert_eq!(report.expected_dim, 1);
        assert_eq!(report.homology.betti(1), 1);
        assert!(report.pass);

        // Rank 3 on seven points: concentrated in dim 1 and free.
        let fano = Matroid::fano();
        let report =
            lefschetz_pair(&fano, &Halfspace::from_integers(&[1, -2, 4, -8, 16, -32])).unwrap();
        assert_eq!(report.expected_dim, 1);
        assert!(report.pass);

        let u35 = Matroid::uniform(3, 5).unwrap();
        let report = lefschetz_pair(&u35, &Halfspace::from_integers(&[1, -2, 4, -8])).unwrap();
        assert_eq!(report.expected_dim, 1);
        assert!(report.pass);
    }

    #[test]
    fn alternate_circuits_agree_with_the_standard_one() {
        // f_i = U e_i for the unimodular U with ones on the diagonal and
        // the subdiagonal.
        let u35 = Matroid::uniform(3, 5).unwrap();
        let alternate = CircuitRealization::new(vec![
            big(&[1, 1, 0, 0]),
            big(&[0, 1, 1, 0]),
            big(&[0, 0, 1, 1]),
            big(&[0, 0, 0, 1]),
            big(&[-1, -2, -2, -2]),
        ])
        .unwrap();
        let standard = BergmanFan::bergman_fan(&u35).unwrap();
        let skewed = BergmanFan::over(&u35, alternate).unwrap();

        // Balancing verdicts match on every codimension-1 subchain.
        let lattice = proper_lattice(&u35).unwrap();
        let elems = lattice.elements().to_vec();
        for chain in lattice.maximal_chains() {
            for drop in 0..chain.len() {
                let sub: Vec<Subset> = chain
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &e)| elems[e])
                    .collect();
                assert_eq!(
                    standard.balancing_check(&sub).unwrap(),
                    skewed.balancing_check(&sub).unwrap()
                );
            }
        }

        // Normals relate by the inverse transpose of U, so the induced
        // weights agree exactly and so does everything downstream.
        let h = Halfspace::from_integers(&[1, -2, 4, -8]);
        let h_skewed = Halfspace::from_integers(&[15, -14, 12, -8]);
        let w = h.induced_weight(standard.realization()).unwrap();
        let w_skewed = h_skewed.induced_weight(skewed.realization()).unwrap();
        assert_eq!(w.entries(), w_skewed.entries());

        let a = standard.lefschetz_pair(&h).unwrap();
        let b = skewed.lefschetz_pair(&h_skewed).unwrap();
        assert_eq!(a.homology, b.homology);
        assert_eq!(a.pass, b.pass);
    }

    #[test]
    fn complement_complexes_match_the_dual_independence_complex() {
        // Rank 2 on four points: non-flats are the six pairs and four
        // triples, spanning subsets the same; the dual is again uniform.
        let u24 = Matroid::uniform(2, 4).unwrap();
        let bl = reduced_homology(&boolean_minus_flats(&u24).unwrap()).unwrap();
        let bns = reduced_homology(&boolean_minus_nonspanning(&u24).unwrap()).unwrap();
        let ind = reduced_homology(&independence_complex(&u24.dual().unwrap())).unwrap();
        assert_eq!(bl, bns);
        assert_eq!(bl, ind);
        assert_eq!(bl.betti(1), 3);
        assert!(bl.concentrated_in(1));
        assert!(bl.group(1).is_free());

        // Rank 3 on four points: the four triples are the only non-flats,
        // giving four isolated vertices.
        let u34 = Matroid::uniform(3, 4).unwrap();
        let bl = reduced_homology(&boolean_minus_flats(&u34).unwrap()).unwrap();
        let bns = reduced_homology(&boolean_minus_nonspanning(&u34).unwrap()).unwrap();
        let ind = reduced_homology(&independence_complex(&u34.dual().unwrap())).unwrap();
        assert_eq!(bl, bns);
        assert_eq!(bl, ind);
        assert_eq!(bl.betti(0), 3);
        assert!(bl.concentrated_in(0));

        // A Boolean matroid has no non-flats at all: both complexes are
        // void and their reduced homology sits in dimension -1 = n - r - 1.
        let b3 = Matroid::boolean(3).unwrap();
        let bl = reduced_homology(&boolean_minus_flats(&b3).unwrap()).unwrap();
        let bns = reduced_homology(&boolean_minus_nonspanning(&b3).unwrap()).unwrap();
        assert_eq!(bl, bns);
        assert_eq!(bl.betti(-1), 1);
        assert!(bl.concentrated_in(-1));
    }
}
