//! Finite posets of ground-set subsets ordered by inclusion.
//!
//! The elements are stored in a canonical order (cardinality, then bit
//! pattern) and the strict order relation is kept as one bitmask per
//! element, so a poset holds at most 128 elements. That bound covers every
//! proper flat lattice this crate builds: the largest ground set is 24 and
//! the largest lattice exercised by the test suite has 126 elements.

use crate::complex::{Label, SimplicialComplex};
use crate::matroid::{Matroid, MatroidError};
use crate::subset::Subset;
use crate::weight::Weight;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Errors from poset construction and interval extraction.
#[derive(Debug, Error)]
pub enum PosetError {
    /// The matroid has rank below 2, so no flats lie strictly between the
    /// bottom and the top.
    #[error("rank {0} matroid has no proper flats to order")]
    RankTooSmall(u32),
    /// Interval bounds must be nested.
    #[error("interval bounds {a} and {b} are not nested")]
    NotComparable { a: String, b: String },
    /// The element bitmasks are 128 bits wide.
    #[error("poset would have {0} elements; at most 128 are supported")]
    TooManyElements(usize),
}

/// A finite poset of distinct subsets of a common ground set, ordered by
/// inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ground: u32,
    elements: Vec<Subset>,
    /// `above[i]` has bit `j` set exactly when `elements[i]` is a proper
    /// subset of `elements[j]`.
    above: Vec<u128>,
}

impl Poset {
    /// Builds the inclusion order on the given subsets of `{1..ground}`.
    /// Duplicates are merged; the order of the input is irrelevant.
    pub fn from_subsets(ground: u32, elements: &[Subset]) -> Result<Poset, PosetError> {
        let mut elements: Vec<Subset> = elements.to_vec();
        for s in &elements {
            assert_eq!(
                s.ground_size(),
                ground,
                "poset elements must share the ground set"
            );
        }
        elements.sort_by_key(|s| (s.card(), s.bits()));
        elements.dedup();
        if elements.len() > 128 {
            return Err(PosetError::TooManyElements(elements.len()));
        }
        let above = elements
            .iter()
            .map(|s| {
                let mut mask = 0u128;
                for (j, t) in elements.iter().enumerate() {
                    if s.is_proper_subset_of(t) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        Ok(Poset {
            ground,
            elements,
            above,
        })
    }

    /// Size of the ground set the elements live in.
    pub fn ground_size(&self) -> u32 {
        self.ground
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Whether the poset has no elements at all.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The elements in canonical order (by cardinality, then bit pattern).
    pub fn elements(&self) -> &[Subset] {
        &self.elements
    }

    /// Position of a subset among the elements, if present.
    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.elements.iter().position(|t| t == s)
    }

    /// Strict comparison by index.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    /// Cover relation: `covers[i]` marks the elements immediately above
    /// `elements[i]`, with nothing in between.
    pub fn covers(&self) -> Vec<u128> {
        (0..self.elements.len())
            .map(|i| {
                let mut mask = self.above[i];
                let mut walk = self.above[i];
                while walk != 0 {
                    let k = walk.trailing_zeros() as usize;
                    walk &= walk - 1;
                    mask &= !self.above[k];
                }
                mask
            })
            .collect()
    }

    /// All maximal chains, as index lists in increasing order. The empty
    /// poset has exactly one maximal chain, the empty chain; this makes its
    /// order complex the complex whose only face is the empty face.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        if self.elements.is_empty() {
            return vec![vec![]];
        }
        let covers = self.covers();
        let mut below_any = 0u128;
        for &a in &self.above {
            below_any |= a;
        }
        let mut chains = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.elements.len())
            .rev()
            .filter(|&i| below_any >> i & 1 == 0)
            .map(|i| vec![i])
            .collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains on the stack are nonempty");
            if covers[last] == 0 {
                chains.push(chain);
                continue;
            }
            let mut walk = covers[last];
            while walk != 0 {
                let k = walk.trailing_zeros() as usize;
                walk &= walk - 1;
                let mut next = chain.clone();
                next.push(k);
                stack.push(next);
            }
        }
        chains
    }

    /// The order complex: vertices are the elements, faces are the chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<Label>> = self
            .maximal_chains()
            .iter()
            .map(|chain| chain.iter().map(|&i| Label::Flat(self.elements[i])).collect())
            .collect();
        SimplicialComplex::from_labeled_facets(&facets)
            .expect("a poset never exceeds the vertex limit of a complex")
    }

    fn filter_elements(&self, keep: impl Fn(&Subset) -> bool) -> Poset {
        let kept: Vec<Subset> = self.elements.iter().copied().filter(keep).collect();
        Poset::from_subsets(self.ground, &kept)
            .expect("a subset of the elements stays within the size limit")
    }

    /// Elements strictly between `a` and `b`. The bounds may be arbitrary
    /// subsets; they need not belong to the poset.
    pub fn interval_open(&self, a: &Subset, b: &Subset) -> Result<Poset, PosetError> {
        self.check_nested(a, b)?;
        Ok(self.filter_elements(|x| a.is_proper_subset_of(x) && x.is_proper_subset_of(b)))
    }

    /// Elements between `a` and `b` inclusive.
    pub fn interval_closed(&self, a: &Subset, b: &Subset) -> Result<Poset, PosetError> {
        self.check_nested(a, b)?;
        Ok(self.filter_elements(|x| a.is_subset_of(x) && x.is_subset_of(b)))
    }

    /// Elements strictly above `a`.
    pub fn upper_open(&self, a: &Subset) -> Poset {
        self.filter_elements(|x| a.is_proper_subset_of(x))
    }

    /// Elements above `a`, including `a` itself when present.
    pub fn upper_closed(&self, a: &Subset) -> Poset {
        self.filter_elements(|x| a.is_subset_of(x))
    }

    /// Elements strictly below `b`.
    pub fn lower_open(&self, b: &Subset) -> Poset {
        self.filter_elements(|x| x.is_proper_subset_of(b))
    }

    /// Elements below `b`, including `b` itself when present.
    pub fn lower_closed(&self, b: &Subset) -> Poset {
        self.filter_elements(|x| x.is_subset_of(b))
    }

    fn check_nested(&self, a: &Subset, b: &Subset) -> Result<(), PosetError> {
        if a.is_subset_of(b) {
            Ok(())
        } else {
            Err(PosetError::NotComparable {
                a: a.to_string(),
                b: b.to_string(),
            })
        }
    }
}

/// The lattice of proper flats of a matroid: every flat except the bottom
/// (the empty set) and the top (the full ground set).
pub fn proper_lattice(m: &Matroid) -> Result<Poset, PosetError> {
    if m.rank() < 2 {
        return Err(PosetError::RankTooSmall(m.rank()));
    }
    Poset::from_subsets(m.n(), &m.proper_flats())
}

/// A poset cut down to the elements of weight above a threshold, together
/// with diagnostics about the weight and threshold used.
#[derive(Clone, Debug)]
pub struct FilteredPoset {
    /// The surviving elements, ordered by inclusion.
    pub poset: Poset,
    /// The weight the filtration used.
    pub omega: Weight,
    /// The threshold the filtration used.
    pub t: BigRational,
    /// Whether the weight is generic (no proper nonempty subset sums to 0).
    pub generic: bool,
    /// Whether `t <= min(0, total weight)`, the range the structural
    /// guarantees assume. Out-of-range thresholds are still computed.
    pub t_in_range: bool,
    /// A proper nonempty subset of weight 0, when the weight is not generic.
    pub witness: Option<Subset>,
}

/// Keeps the elements `x` with `omega(x) > t` and reports whether the
/// weight and threshold satisfy the usual hypotheses. Nothing is rejected
/// here: callers that require genericity must check the flags.
pub fn filtered(p: &Poset, omega: &Weight, t: &BigRational) -> FilteredPoset {
    assert_eq!(
        omega.len(),
        p.ground_size() as usize,
        "weight length must match the ground set"
    );
    let poset = p.filter_elements(|x| omega.dot(x) > *t);
    let witness = omega.nongeneric_witness();
    let zero = BigRational::zero();
    let bound = omega.total().min(zero);
    FilteredPoset {
        poset,
        omega: omega.clone(),
        t: t.clone(),
        generic: witness.is_none(),
        t_in_range: *t <= bound,
        witness,
    }
}

/// Checks that the part of the filtered lattice strictly between two nested
/// flats matches the filtered proper flat lattice of the corresponding
/// minor, with the weight restricted and the threshold shifted by the
/// weight of the lower flat. Returns whether the two sides agree as sets
/// of subsets of the original ground set.
pub fn heredity_check(
    m: &Matroid,
    omega: &Weight,
    t: &BigRational,
    sigma: &Subset,
    tau: &Subset,
) -> Result<bool, MatroidError> {
    if !m.is_flat(sigma) {
        return Err(MatroidError::NotAFlat(sigma.to_string()));
    }
    if !m.is_flat(tau) {
        return Err(MatroidError::NotAFlat(tau.to_string()));
    }
    if !sigma.is_subset_of(tau) {
        return Err(MatroidError::InvalidParameters(format!(
            "{sigma} is not contained in {tau}"
        )));
    }

    let mut lhs: Vec<Vec<u32>> = Vec::new();
    for x in m.flats() {
        if sigma.is_proper_subset_of(&x) && x.is_proper_subset_of(tau) && omega.dot(&x) > *t {
            lhs.push(x.minus(sigma).elems());
        }
    }
    lhs.sort();

    // A rank gap below 2 leaves no room for strictly intermediate flats on
    // either side, so the check holds vacuously.
    let rank_of = |f: &Subset| m.rank_of_flat(f).expect("validated above");
    let gap = rank_of(tau) - rank_of(sigma);
    if gap < 2 {
        return Ok(lhs.is_empty());
    }

    let restricted = m.restrict(tau);
    let sigma_in_restriction = restricted.to_new(&sigma.elems());
    let contracted = restricted.matroid.contract(&sigma_in_restriction);
    let old_label = |e: u32| -> u32 {
        let mid = contracted.old_of_new[(e - 1) as usize];
        restricted.old_of_new[(mid - 1) as usize]
    };

    let minor = &contracted.matroid;
    let entries: Vec<BigRational> = (1..=minor.n())
        .map(|e| omega.entry(old_label(e)).clone())
        .collect();
    let restricted_weight = Weight::new(entries);
    let shifted_t = t - omega.dot(sigma);

    let lattice = proper_lattice(minor).expect("rank gap of at least 2");
    let rhs_filtered = filtered(&lattice, &restricted_weight, &shifted_t);
    let mut rhs: Vec<Vec<u32>> = rhs_filtered
        .poset
        .elements()
        .iter()
        .map(|y| {
            let mut olds: Vec<u32> = y.elems().iter().map(|&e| old_label(e)).collect();
            olds.sort_unstable();
            olds
        })
        .collect();
    rhs.sort();

    Ok(lhs == rhs)
}
