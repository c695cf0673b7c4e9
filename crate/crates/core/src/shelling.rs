//! Shelling orders: the lexicographic shelling of a filtered Boolean
//! lattice, a verifier for arbitrary orders, and a brute-force search for
//! small complexes.
//!
//! A shelling of a pure complex is an order on its facets in which every
//! facet meets the union of its predecessors in a pure complex of one
//! dimension lower. The verifier uses the equivalent maximal-intersection
//! form: every maximal intersection with an earlier facet must have exactly
//! one vertex fewer than the facet itself.

use std::cmp::Ordering;

use crate::complex::{Label, SimplicialComplex};
use crate::poset::{filtered, proper_lattice};
use crate::matroid::Matroid;
use crate::subset::Subset;
use crate::weight::Weight;
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Errors from shelling construction and verification.
#[derive(Debug, Error)]
pub enum ShellingError {
    /// The weight has a proper nonempty subset of weight zero. The Boolean
    /// construction itself tolerates such weights through its tie-break,
    /// which plays the role of a perturbation that never changes the
    /// filtration, so this variant is for callers that insist on a generic
    /// weight up front.
    #[error("weight is not generic: {witness} has weight 0")]
    NonGenericWeight { witness: Subset },
    /// The threshold must satisfy t <= min(0, total weight).
    #[error("threshold {t} exceeds the bound {bound}")]
    TOutOfRange { t: BigRational, bound: BigRational },
    /// Verification requires a pure complex.
    #[error("the complex is not pure")]
    NotPure,
    /// The proposed order must list each facet of the complex exactly once.
    #[error("not a permutation of the facets: {0}")]
    NotAPermutation(String),
    /// Brute-force search is capped to keep the runtime sane.
    #[error("{0} facets exceed the brute-force cap of {MAX_BRUTE_FACETS}")]
    TooLarge(usize),
}

/// Hard cap on the facet count for [`brute_force_shellable`].
pub const MAX_BRUTE_FACETS: usize = 10;

/// An ordered list of facets, each given by its vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingOrder {
    pub facets: Vec<Vec<Label>>,
}

impl ShellingOrder {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }
}

/// Outcome of verifying an order: either every facet attaches correctly,
/// or the 1-based index of the first offender is reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    Pass,
    Fail { index: usize },
}

impl ShellingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ShellingVerdict::Pass)
    }
}

/// The lexicographic shelling of the order complex of a filtered proper
/// Boolean lattice. Facets are the maximal chains, each arising from a
/// permutation whose proper prefix weights all exceed the threshold; they
/// are ordered by their weight words, compared position by position with
/// the larger entry first, so the unique weight-decreasing chain leads.
/// Ties between equal weights are broken by the larger element index,
/// which acts as the small perturbation that never changes the filtration;
/// the weight therefore need not be generic. The threshold bound is
/// essential and is enforced.
pub fn lex_shelling_boolean(
    n: u32,
    omega: &Weight,
    t: &BigRational,
) -> Result<ShellingOrder, ShellingError> {
    assert_eq!(omega.len(), n as usize, "weight length must match n");
    let bound = omega.total().min(BigRational::zero());
    if *t > bound {
        return Err(ShellingError::TOutOfRange {
            t: t.clone(),
            bound,
        });
    }

    let mut perms: Vec<Vec<u32>> = (1..=n)
        .permutations(n as usize)
        .filter(|perm| {
            let mut acc = BigRational::zero();
            perm.iter().take(n as usize - 1).all(|&e| {
                acc += omega.entry(e);
                acc > *t
            })
        })
        .collect();

    // Position-wise comparison of the weight words, larger entries first.
    let key = |e: u32| (omega.entry(e).clone(), e);
    perms.sort_by(|a, b| {
        for (&x, &y) in a.iter().zip(b.iter()) {
            match key(y).cmp(&key(x)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    });

    let facets = perms
        .iter()
        .map(|perm| {
            let mut bits = 0u32;
            perm.iter()
                .take(n as usize - 1)
                .map(|&e| {
                    bits |= 1 << (e - 1);
                    Label::Flat(Subset::new(bits, n))
                })
                .collect()
        })
        .collect();
    Ok(ShellingOrder { facets })
}

/// Checks a proposed shelling order against a pure complex: the order must
/// be a permutation of the facets, and each facet must meet the union of
/// its predecessors in a pure complex of codimension one inside it.
pub fn verify_shelling(
    complex: &SimplicialComplex,
    order: &ShellingOrder,
) -> Result<ShellingVerdict, ShellingError> {
    if !complex.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let mut masks = Vec::with_capacity(order.facets.len());
    for facet in &order.facets {
        let mask = complex.mask_of_labels(facet).ok_or_else(|| {
            ShellingError::NotAPermutation("order lists a non-face".into())
        })?;
        if !complex.facet_masks().contains(&mask) {
            return Err(ShellingError::NotAPermutation(
                "order lists a face that is not a facet".into(),
            ));
        }
        masks.push(mask);
    }
    let mut sorted = masks.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != complex.facet_count() {
        return Err(ShellingError::NotAPermutation(format!(
            "{} distinct facets listed, complex has {}",
            sorted.len(),
            complex.facet_count()
        )));
    }
    Ok(verify_masks(&masks))
}

/// The maximal-intersection rule over facet masks, assuming the list is a
/// valid permutation of the facets.
fn verify_masks(masks: &[u128]) -> ShellingVerdict {
    for k in 1..masks.len() {
        if !attaches(masks[k], &masks[..k]) {
            return ShellingVerdict::Fail { index: k + 1 };
        }
    }
    ShellingVerdict::Pass
}

/// Whether a facet meets the union of the given predecessors in a pure
/// complex of codimension one: every maximal pairwise intersection must
/// have exactly one vertex fewer than the facet.
fn attaches(facet: u128, earlier: &[u128]) -> bool {
    let inters: Vec<u128> = earlier.iter().map(|&m| m & facet).collect();
    let want = facet.count_ones() - 1;
    inters
        .iter()
        .filter(|&&x| !inters.iter().any(|&y| x & y == x && y != x))
        .all(|&x| x.count_ones() == want)
}

/// Exhaustive search for a shelling order, feasible only for tiny
/// complexes. Returns the first order found under a deterministic
/// exploration, or nothing when no order passes.
pub fn brute_force_shellable(
    complex: &SimplicialComplex,
) -> Result<Option<ShellingOrder>, ShellingError> {
    let m = complex.facet_count();
    if m > MAX_BRUTE_FACETS {
        return Err(ShellingError::TooLarge(m));
    }
    if !complex.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let masks = complex.facet_masks();
    if m <= 1 {
        return Ok(Some(ShellingOrder {
            facets: masks.iter().map(|&f| complex.labels_of_mask(f)).collect(),
        }));
    }

    // Whether a facet can come next depends only on the set of facets
    // already placed, so a DP over subsets of facets is exact.
    let full = (1usize << m) - 1;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; full + 1];
    let mut reachable = vec![false; full + 1];
    reachable[0] = true;
    let mut frontier = vec![0usize];
    while let Some(s) = frontier.pop() {
        if s == full {
            break;
        }
        for f in 0..m {
            if s >> f & 1 == 1 {
                continue;
            }
            let next = s | 1 << f;
            if reachable[next] {
                continue;
            }
            let earlier: Vec<u128> = (0..m).filter(|&j| s >> j & 1 == 1).map(|j| masks[j]).collect();
            if s != 0 && !attaches(masks[f], &earlier) {
                continue;
            }
            reachable[next] = true;
            parent[next] = Some((s, f));
            frontier.push(next);
        }
    }
    if !reachable[full] {
        return Ok(None);
    }
    let mut order_rev = Vec::with_capacity(m);
    let mut s = full;
    while let Some((prev, f)) = parent[s] {
        order_rev.push(f);
        s = prev;
    }
    order_rev.reverse();
    Ok(Some(ShellingOrder {
        facets: order_rev
            .into_iter()
            .map(|f| complex.labels_of_mask(masks[f]))
            .collect(),
    }))
}

/// The order complex a Boolean shelling is checked against: the filtered
/// proper lattice of the free matroid on n elements.
pub fn boolean_filtered_complex(n: u32, omega: &Weight, t: &BigRational) -> SimplicialComplex {
    let lattice = proper_lattice(&Matroid::boolean(n).expect("n is positive"))
        .expect("boolean matroids of rank >= 2");
    filtered(&lattice, omega, t).poset.order_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::cm_over_z;

    fn flat(elems: &[u32], n: u32) -> Label {
        Label::Flat(Subset::from_elems(elems, n))
    }

    #[test]
    fn three_element_example() {
        let omega = Weight::from_integers(&[5, -1, -3]);
        let order = lex_shelling_boolean(3, &omega, &BigRational::zero()).unwrap();
        assert_eq!(order.len(), 2);
        assert_eq!(order.facets[0], vec![flat(&[1], 3), flat(&[1, 2], 3)]);
        assert_eq!(order.facets[1], vec![flat(&[1], 3), flat(&[1, 3], 3)]);

        let complex = boolean_filtered_complex(3, &omega, &BigRational::zero());
        assert_eq!(
            verify_shelling(&complex, &order).unwrap(),
            ShellingVerdict::Pass
        );
    }

    #[test]
    fn two_element_cases() {
        // One surviving atom: a single facet.
        let omega = Weight::from_integers(&[1, -2]);
        let t = BigRational::from_integer((-1).into());
        let order = lex_shelling_boolean(2, &omega, &t).unwrap();
        assert_eq!(order.len(), 1);
        assert_eq!(order.facets[0], vec![flat(&[1], 2)]);

        // Both atoms can survive a valid threshold; the zero-dimensional
        // complex is vacuously shellable either way.
        let omega = Weight::from_integers(&[1, 2]);
        let t = BigRational::zero();
        let order = lex_shelling_boolean(2, &omega, &t).unwrap();
        assert_eq!(order.len(), 2);
        assert_eq!(order.facets[0], vec![flat(&[2], 2)]);
        let complex = boolean_filtered_complex(2, &omega, &t);
        assert_eq!(
            verify_shelling(&complex, &order).unwrap(),
            ShellingVerdict::Pass
        );
    }

    #[test]
    fn four_element_first_facet_is_the_decreasing_chain() {
        // The weight is not generic ({2,3} sums to zero); the tie-broken
        // construction still yields the shelling, led by the fully
        // decreasing chain.
        let omega = Weight::from_integers(&[3, 1, -1, -2]);
        let order = lex_shelling_boolean(4, &omega, &BigRational::zero()).unwrap();
        let chain = |a: &[u32], b: &[u32], c: &[u32]| vec![flat(a, 4), flat(b, 4), flat(c, 4)];
        assert_eq!(
            order.facets,
            vec![
                chain(&[1], &[1, 2], &[1, 2, 3]),
                chain(&[1], &[1, 2], &[1, 2, 4]),
                chain(&[1], &[1, 3], &[1, 2, 3]),
                chain(&[1], &[1, 4], &[1, 2, 4]),
                chain(&[2], &[1, 2], &[1, 2, 3]),
                chain(&[2], &[1, 2], &[1, 2, 4]),
            ]
        );
        let complex = boolean_filtered_complex(4, &omega, &BigRational::zero());
        assert_eq!(
            verify_shelling(&complex, &order).unwrap(),
            ShellingVerdict::Pass
        );
    }

    #[test]
    fn threshold_bound_is_enforced_and_nongeneric_weights_are_tolerated() {
        let omega = Weight::from_integers(&[1, -2, 4]);
        let too_high = BigRational::from_integer(1.into());
        assert!(matches!(
            lex_shelling_boolean(3, &omega, &too_high),
            Err(ShellingError::TOutOfRange { .. })
        ));

        // {1,2} has weight zero, yet the shelling goes through and passes.
        let nongeneric = Weight::from_integers(&[1, -1, 5]);
        assert!(!nongeneric.is_generic());
        let order = lex_shelling_boolean(3, &nongeneric, &BigRational::zero()).unwrap();
        assert_eq!(order.len(), 3);
        let complex = boolean_filtered_complex(3, &nongeneric, &BigRational::zero());
        assert_eq!(
            verify_shelling(&complex, &order).unwrap(),
            ShellingVerdict::Pass
        );
    }

    #[test]
    fn verifier_examples() {
        let hexagon = proper_lattice(&Matroid::boolean(3).unwrap())
            .unwrap()
            .order_complex();
        // Walk the hexagon in cyclic order.
        let mut facets = Vec::new();
        let mut current = hexagon.facet_masks()[0];
        let mut prev_vertex = 0u128;
        for _ in 0..6 {
            facets.push(hexagon.labels_of_mask(current));
            let step = current & !prev_vertex;
            let vertex = 1u128 << step.trailing_zeros();
            let next = hexagon
                .facet_masks()
                .iter()
                .copied()
                .find(|&f| f != current && f & vertex != 0)
                .unwrap();
            prev_vertex = current & next;
            current = next;
        }
        let order = ShellingOrder { facets };
        assert_eq!(
            verify_shelling(&hexagon, &order).unwrap(),
            ShellingVerdict::Pass
        );
        assert!(cm_over_z(&hexagon).unwrap().cohen_macaulay());

        let two_edges = SimplicialComplex::from_labeled_facets(&[
            vec![Label::Elem(1), Label::Elem(2)],
            vec![Label::Elem(3), Label::Elem(4)],
        ])
        .unwrap();
        let order = ShellingOrder {
            facets: two_edges
                .facet_masks()
                .iter()
                .map(|&f| two_edges.labels_of_mask(f))
                .collect(),
        };
        assert_eq!(
            verify_shelling(&two_edges, &order).unwrap(),
            ShellingVerdict::Fail { index: 2 }
        );

        let impure = SimplicialComplex::from_labeled_facets(&[
            vec![Label::Elem(1), Label::Elem(2)],
            vec![Label::Elem(3)],
        ])
        .unwrap();
        assert!(matches!(
            verify_shelling(&impure, &order),
            Err(ShellingError::NotPure)
        ));

        let half = ShellingOrder {
            facets: vec![order.facets[0].clone()],
        };
        assert!(matches!(
            verify_shelling(&two_edges, &half),
            Err(ShellingError::NotAPermutation(_))
        ));
    }

    #[test]
    fn lex_orders_pass_on_small_ground_sets() {
        let weights: [&[i64]; 4] = [
            &[1, -2, 4, -8, 16],
            &[7, 3, -2, 9, -15],
            &[-1, -3, -7, -8, -21],
            &[2, 5, 9, 17, 33],
        ];
        for (n, raw) in (2u32..=5).flat_map(|n| weights.iter().map(move |w| (n, *w))) {
            let omega = Weight::from_integers(&raw[..n as usize]);
            if !omega.is_generic() {
                continue;
            }
            let bound = omega.total().min(BigRational::zero());
            for offset in [0i64, 2, 17] {
                let t = &bound - BigRational::from_integer(offset.into());
                let order = lex_shelling_boolean(n, &omega, &t).unwrap();
                let complex = boolean_filtered_complex(n, &omega, &t);
                assert_eq!(
                    verify_shelling(&complex, &order).unwrap(),
                    ShellingVerdict::Pass,
                    "n={n} weights={raw:?} offset={offset}"
                );
                // The first facet is the weight-decreasing chain.
                let mut by_weight: Vec<u32> = (1..=n).collect();
                by_weight.sort_by(|&a, &b| {
                    (omega.entry(b), b).cmp(&(omega.entry(a), a))
                });
                let mut bits = 0u32;
                let decreasing: Vec<Label> = by_weight
                    .iter()
                    .take(n as usize - 1)
                    .map(|&e| {
                        bits |= 1 << (e - 1);
                        Label::Flat(Subset::new(bits, n))
                    })
                    .collect();
                assert_eq!(order.facets[0], decreasing);
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let hexagon = proper_lattice(&Matroid::boolean(3).unwrap())
            .unwrap()
            .order_complex();
        let found = brute_force_shellable(&hexagon).unwrap().unwrap();
        assert_eq!(
            verify_shelling(&hexagon, &found).unwrap(),
            ShellingVerdict::Pass
        );

        let two_edges = SimplicialComplex::from_labeled_facets(&[
            vec![Label::Elem(1), Label::Elem(2)],
            vec![Label::Elem(3), Label::Elem(4)],
        ])
        .unwrap();
        assert_eq!(brute_force_shellable(&two_edges).unwrap(), None);

        // The positive part of a filtered rank-3 uniform lattice.
        let m = Matroid::uniform(3, 4).unwrap();
        let omega = Weight::from_integers(&[1, -2, 4, -8]);
        let f = filtered(&proper_lattice(&m).unwrap(), &omega, &BigRational::zero());
        let complex = f.poset.order_complex();
        let found = brute_force_shellable(&complex).unwrap().expect("shellable");
        assert_eq!(
            verify_shelling(&complex, &found).unwrap(),
            ShellingVerdict::Pass
        );

        let eleven_edges: Vec<Vec<Label>> = (0..11)
            .map(|i| vec![Label::Elem(2 * i + 1), Label::Elem(2 * i + 2)])
            .collect();
        let big = SimplicialComplex::from_labeled_facets(&eleven_edges).unwrap();
        assert!(matches!(
            brute_force_shellable(&big),
            Err(ShellingError::TooLarge(11))
        ));
    }
}
