//! The acceptance suite: fourteen checks over a fixed roster of matroids,
//! each returning a pass verdict with a short account of what was measured.
//! Randomized checks derive every sample from one seed, so a fixed seed
//! reproduces the run bit for bit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bergman::{boolean_minus_flats, boolean_minus_nonspanning, BergmanFan, Halfspace};
use crate::complex::{
    cospanning_complex, independence_complex, nonspanning_complex, Label, SimplicialComplex,
};
use crate::hodge::{
    cells_and_boundary, chain_lattice, cone_iso_check, maximal_flat_chains, star_table,
    torsion_witness_fano, u34_witness, Ring,
};
use crate::homology::{
    boundary_matrices, cm_over_z_poset, reduced_homology, relative_homology, wedge_profile,
    ChainComplexZ, Homology,
};
use crate::linalg::{combinations_lex, rank_mod_p, snf_dense, snf_sparse, verify_snf, Lattice, SparseMat};
use crate::matroid::Matroid;
use crate::poset::{filtered, heredity_check, proper_lattice};
use crate::shelling::{boolean_filtered_complex, lex_shelling_boolean, verify_shelling};
use crate::subset::Subset;
use crate::weight::Weight;

/// Seed the command line uses when none is given.
pub const DEFAULT_SEED: u64 = 17;

/// One matroid of the roster, with a stable display name.
pub struct SuiteMember {
    pub id: String,
    pub matroid: Matroid,
}

/// The fixed roster: all uniform matroids with 2 <= r <= n <= 7 (the free
/// ones listed under their own name), the seven-point rank-three example
/// with a non-realizable line pattern, and the cycle matroid of the
/// complete graph on four vertices.
pub fn suite_members() -> Vec<SuiteMember> {
    let mut members = Vec::new();
    for n in 2..=7u32 {
        for r in 2..=n {
            let id = if r == n {
                format!("boolean({n})")
            } else {
                format!("uniform({r},{n})")
            };
            members.push(SuiteMember {
                id,
                matroid: Matroid::uniform(r, n).expect("2 <= r <= n <= 7"),
            });
        }
    }
    members.push(SuiteMember {
        id: "fano".into(),
        matroid: Matroid::fano(),
    });
    members.push(SuiteMember {
        id: "graphic_k4".into(),
        matroid: Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
            .expect("a simple graph"),
    });
    members
}

/// Verdict of one suite check.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    /// Stable slug for report records.
    pub anchor: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Runs the whole suite in order.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    run_all_capped(seed, 7)
}

/// Runs the suite with the roster of randomized checks trimmed to ground
/// sets of at most `max_n` elements. The three pinned examples always run
/// on their own ground sets.
pub fn run_all_capped(seed: u64, max_n: u32) -> Vec<CriterionOutcome> {
    let members: Vec<SuiteMember> = suite_members()
        .into_iter()
        .filter(|m| m.matroid.n() <= max_n)
        .collect();
    vec![
        filtered_lattices_with(seed, &members),
        boolean_shellings_with(seed, max_n.min(7)),
        wedge_counts_with(&members),
        relative_pairs_with(seed, &members),
        complement_models_with(&members),
        alexander_duality_with(&members),
        fans_balance_with(&members),
        worked_disconnection_example(seed),
        integral_defect_witness(seed),
        positive_sides_with(seed, &members),
        halflink_vanishing_with(seed, &members),
        cones_shift_with(&members),
        low_degree_cycle_witness(seed),
        infrastructure_with(seed, &members),
    ]
}

fn outcome(
    id: usize,
    name: &'static str,
    anchor: &'static str,
    body: Result<(bool, String), String>,
) -> CriterionOutcome {
    match body {
        Ok((pass, detail)) => CriterionOutcome {
            id,
            name,
            anchor,
            pass,
            detail,
        },
        Err(e) => CriterionOutcome {
            id,
            name,
            anchor,
            pass: false,
            detail: format!("aborted: {e}"),
        },
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// One stream per criterion, so adding samples to one check never shifts
/// the samples of another.
fn rng_for(seed: u64, criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ criterion.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Integer weights in [-50, 50], redrawn until no nonempty proper subset
/// sums to zero.
fn random_generic_weight(rng: &mut ChaCha8Rng, n: u32) -> Weight {
    loop {
        let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
        let w = Weight::from_integers(&entries);
        if w.nongeneric_witness().is_none() {
            return w;
        }
    }
}

/// A threshold in the guaranteed range: min(0, total weight) minus a
/// random offset up to 30.
fn random_threshold(rng: &mut ChaCha8Rng, omega: &Weight) -> BigRational {
    let offset = rng.gen_range(0i64..=30);
    omega.total().min(BigRational::zero()) - BigRational::from_integer(BigInt::from(offset))
}

/// Integer normals in [-50, 50], redrawn until the induced weight on the
/// ambient coordinates is generic.
fn random_generic_halfspace(rng: &mut ChaCha8Rng, fan: &BergmanFan) -> (Halfspace, Weight) {
    loop {
        let normal: Vec<i64> = (0..fan.realization().dim())
            .map(|_| rng.gen_range(-50..=50))
            .collect();
        let h = Halfspace::from_integers(&normal);
        if let Ok(w) = h.induced_weight(fan.realization()) {
            if w.nongeneric_witness().is_none() {
                return (h, w);
            }
        }
    }
}

/// All faces of the given cardinality together with every smaller facet:
/// the complex truncated above `max_card`, which leaves homology intact
/// strictly below dimension `max_card - 1`.
fn card_skeleton(c: &SimplicialComplex, max_card: usize) -> SimplicialComplex {
    let per = c.faces_by_card();
    if per.len() <= max_card + 1 {
        return c.clone();
    }
    let mut facets: Vec<Vec<Label>> = per[max_card]
        .iter()
        .map(|&m| c.labels_of_mask(m))
        .collect();
    for &fm in c.facet_masks() {
        if (fm.count_ones() as usize) < max_card {
            facets.push(c.labels_of_mask(fm));
        }
    }
    SimplicialComplex::from_labeled_facets(&facets).expect("faces of an existing complex")
}

const MODP: u128 = (1u128 << 61) - 1;

fn modp_mul(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % MODP) as u64
}

fn modp_pow(mut base: u64, mut exp: u128) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = modp_mul(acc, base);
        }
        base = modp_mul(base, base);
        exp >>= 1;
    }
    acc
}

fn modp_of(v: &BigInt) -> Result<u64, String> {
    let x = v
        .to_i64()
        .ok_or_else(|| "matrix entry exceeds 64 bits".to_string())?;
    Ok(x.rem_euclid(MODP as i64) as u64)
}

/// Dense row reduction over one large prime, with early exit: returns as
/// soon as `stop_at` pivots are found. The rank over that prime bounds the
/// rational rank from below.
fn modp_rank_rows<'a, I>(rows: I, stop_at: usize) -> Result<usize, String>
where
    I: Iterator<Item = &'a Vec<BigInt>>,
{
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        let mut r: Vec<u64> = Vec::with_capacity(row.len());
        for v in row {
            r.push(modp_of(v)?);
        }
        for (lead, prow) in &pivots {
            if r[*lead] != 0 {
                let f = r[*lead];
                for j in 0..r.len() {
                    let sub = modp_mul(f, prow[j]);
                    r[j] = ((r[j] as u128 + MODP - sub as u128) % MODP) as u64;
                }
            }
        }
        if let Some(lead) = r.iter().position(|&x| x != 0) {
            let inv = modp_pow(r[lead], MODP - 2);
            for x in r.iter_mut() {
                *x = modp_mul(*x, inv);
            }
            pivots.push((lead, r));
            if pivots.len() >= stop_at {
                break;
            }
        }
    }
    Ok(pivots.len())
}

/// Criterion 1: on every roster member, twenty random generic weights with
/// in-range thresholds produce a filtered lattice whose order complex is
/// pure of dimension r - 2, Cohen-Macaulay over the integers, and a wedge
/// in top degree.
pub fn filtered_lattices_are_cm(seed: u64) -> CriterionOutcome {
    filtered_lattices_with(seed, &suite_members())
}

fn filtered_lattices_with(seed: u64, members: &[SuiteMember]) -> CriterionOutcome {
    outcome(1, "filtered lattices are Cohen-Macaulay", "filtered-cm", (|| {
        let mut rng = rng_for(seed, 1);
        let mut checked = 0usize;
        for member in members {
            let m = &member.matroid;
            let top = m.rank() as i64 - 2;
            let lat = proper_lattice(m).map_err(err)?;
            for _ in 0..20 {
                let omega = random_generic_weight(&mut rng, m.n());
                let t = random_threshold(&mut rng, &omega);
                let kept = filtered(&lat, &omega, &t);
                let delta = kept.poset.order_complex();
                if !delta.is_pure() || delta.dim() != Some(top) {
                    return Ok((
                        false,
                        format!("{}: a filtration is not pure of dimension {top}", member.id),
                    ));
                }
                let cm = cm_over_z_poset(&kept.poset).map_err(err)?;
                if !cm.cohen_macaulay() {
                    return Ok((
                        false,
                        format!("{}: a filtration fails the link condition", member.id),
                    ));
                }
                let wp = wedge_profile(&delta, top).map_err(err)?;
                if !wp.ok {
                    return Ok((
                        false,
                        format!("{}: homology is not free in top degree alone", member.id),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!(
                "{checked} random filtrations over {} matroids: pure of dimension r - 2, \
                 Cohen-Macaulay over Z, top homology a wedge",
                members.len()
            ),
        ))
    })())
}

/// Criterion 2: sixty random filtered Boolean lattices with n up to 7 are
/// shelled by the lexicographic order, the order verifies facet by facet,
/// and the weight-decreasing chain always leads.
pub fn boolean_shellings_verify(seed: u64) -> CriterionOutcome {
    boolean_shellings_with(seed, 7)
}

fn boolean_shellings_with(seed: u64, max_n: u32) -> CriterionOutcome {
    outcome(2, "Boolean shellings verify", "boolean-shelling", (|| {
        let mut rng = rng_for(seed, 2);
        let mut checked = 0usize;
        for n in 2..=max_n.max(2) {
            for _ in 0..10 {
                let omega = random_generic_weight(&mut rng, n);
                let t = random_threshold(&mut rng, &omega);
                let order = lex_shelling_boolean(n, &omega, &t).map_err(err)?;
                let complex = boolean_filtered_complex(n, &omega, &t);
                let verdict = verify_shelling(&complex, &order).map_err(err)?;
                if !verdict.passed() {
                    return Ok((false, format!("n = {n}: a facet attaches badly")));
                }
                let mut by_weight: Vec<u32> = (1..=n).collect();
                by_weight.sort_by(|a, b| match omega.entry(*b).cmp(omega.entry(*a)) {
                    std::cmp::Ordering::Equal => b.cmp(a),
                    other => other,
                });
                let expected: Vec<Label> = (1..n as usize)
                    .map(|k| Label::Flat(Subset::from_elems(&by_weight[..k], n)))
                    .collect();
                if order.facets.first() != Some(&expected) {
                    return Ok((
                        false,
                        format!("n = {n}: the first facet is not the weight-decreasing chain"),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!("{checked} shellings verified, weight-decreasing chain first every time"),
        ))
    })())
}

/// Criterion 3: the top Betti number of the full order complex counts the
/// spheres of the wedge, and equals the unsigned Moebius number, on every
/// roster member.
pub fn wedge_counts_match_mobius(_seed: u64) -> CriterionOutcome {
    wedge_counts_with(&suite_members())
}

fn wedge_counts_with(members: &[SuiteMember]) -> CriterionOutcome {
    outcome(3, "wedge counts match the Moebius number", "sphere-count", (|| {
        let mut total = BigInt::zero();
        for member in members {
            let m = &member.matroid;
            let top = m.rank() as i64 - 2;
            let delta = proper_lattice(m).map_err(err)?.order_complex();
            let wp = wedge_profile(&delta, top).map_err(err)?;
            let expected = m.mobius().abs();
            if !wp.ok || BigInt::from(wp.count) != expected {
                return Ok((
                    false,
                    format!(
                        "{}: profile ok = {}, {} spheres against {}",
                        member.id, wp.ok, wp.count, expected
                    ),
                ));
            }
            total += expected;
        }
        Ok((
            true,
            format!(
                "{} matroids, {total} spheres counted in total, every count exact",
                members.len()
            ),
        ))
    })())
}

/// Criterion 4: lowering the threshold grows the filtered complex; each
/// adjacent pair has relative homology free and concentrated in dimension
/// r - 2, and the top Betti number never drops.
pub fn relative_pairs_concentrate(seed: u64) -> CriterionOutcome {
    relative_pairs_with(seed, &suite_members())
}

fn relative_pairs_with(seed: u64, members: &[SuiteMember]) -> CriterionOutcome {
    outcome(4, "relative pairs concentrate in top degree", "relative-pairs", (|| {
        let mut rng = rng_for(seed, 4);
        let mut pairs = 0usize;
        for member in members {
            let m = &member.matroid;
            let top = m.rank() as i64 - 2;
            let lat = proper_lattice(m).map_err(err)?;
            for _ in 0..2 {
                let omega = random_generic_weight(&mut rng, m.n());
                let base = omega.total().min(BigRational::zero());
                let mut previous: Option<(SimplicialComplex, usize)> = None;
                for offset in [0i64, 10, 20, 30] {
                    let t = base.clone() - BigRational::from_integer(BigInt::from(offset));
                    let delta = filtered(&lat, &omega, &t).poset.order_complex();
                    let betti = reduced_homology(&delta).map_err(err)?.betti(top);
                    if let Some((smaller, smaller_betti)) = &previous {
                        if betti < *smaller_betti {
                            return Ok((
                                false,
                                format!("{}: top Betti number dropped as t fell", member.id),
                            ));
                        }
                        let rel = relative_homology(&delta, smaller).map_err(err)?;
                        for d in rel.nonzero_dims() {
                            if d != top || !rel.group(d).is_free() {
                                return Ok((
                                    false,
                                    format!(
                                        "{}: relative homology has {} in dimension {d}",
                                        member.id,
                                        rel.group(d)
                                    ),
                                ));
                            }
                        }
                        pairs += 1;
                    }
                    previous = Some((delta, betti));
                }
            }
        }
        Ok((
            true,
            format!(
                "{pairs} nested pairs over {} matroids: relative homology free in \
                 dimension r - 2, top Betti monotone",
                members.len()
            ),
        ))
    })())
}

/// Criterion 5: the complement models agree. Dropping the flats from the
/// Boolean order complex leaves homology free and concentrated in
/// dimension n - r - 1, the same answer as dropping the nonspanning
/// subsets, whose complex also obeys the dimension bound; and the
/// cospanning complex has exactly the faces of the independence complex of
/// the dual.
pub fn complement_models_agree(_seed: u64) -> CriterionOutcome {
    complement_models_with(&suite_members())
}

fn complement_models_with(members: &[SuiteMember]) -> CriterionOutcome {
    outcome(5, "complement models agree", "complement-model", (|| {
        let mut compared = 0usize;
        let mut degenerate = 0usize;
        for member in members {
            let m = &member.matroid;
            let n = m.n();
            let target = n as i64 - m.rank() as i64 - 1;
            let minus_flats = boolean_minus_flats(m).map_err(err)?;
            let minus_nonspanning = boolean_minus_nonspanning(m).map_err(err)?;
            let h_flats = reduced_homology(&minus_flats).map_err(err)?;
            for d in h_flats.nonzero_dims() {
                if d != target || !h_flats.group(d).is_free() {
                    return Ok((
                        false,
                        format!(
                            "{}: complement of the flats has {} in dimension {d}",
                            member.id,
                            h_flats.group(d)
                        ),
                    ));
                }
            }
            let h_spanning = reduced_homology(&minus_nonspanning).map_err(err)?;
            for d in -1..=(n as i64) {
                if h_flats.group(d) != h_spanning.group(d) {
                    return Ok((
                        false,
                        format!("{}: the two complement models disagree in dimension {d}", member.id),
                    ));
                }
            }
            if minus_nonspanning.dim() > Some(target) {
                return Ok((
                    false,
                    format!("{}: spanning-subset complex exceeds dimension {target}", member.id),
                ));
            }
            if m.rank() == n {
                // Every element is a coloop, so there is no dual to compare
                // against; only the empty set cospans.
                let cospanning = cospanning_complex(m);
                if cospanning.face_count() != 1 || cospanning.dim() != Some(-1) {
                    return Ok((
                        false,
                        format!("{}: free member cospans beyond the empty set", member.id),
                    ));
                }
                degenerate += 1;
                continue;
            }
            let dual = m.dual().map_err(err)?;
            if elem_faces(&cospanning_complex(m)) != elem_faces(&independence_complex(&dual)) {
                return Ok((
                    false,
                    format!(
                        "{}: cospanning faces differ from dual independent sets",
                        member.id
                    ),
                ));
            }
            compared += 1;
        }
        Ok((
            true,
            format!(
                "{compared} members matched face for face and group for group, \
                 {degenerate} free members degenerate as expected"
            ),
        ))
    })())
}

fn elem_faces(c: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for per in c.faces_by_card() {
        for &mask in per {
            let mut face: Vec<u32> = c
                .labels_of_mask(mask)
                .iter()
                .map(|l| match l {
                    Label::Elem(v) => *v,
                    other => panic!("ground-set complex carries {other}"),
                })
                .collect();
            face.sort_unstable();
            out.insert(face);
        }
    }
    out
}

/// Criterion 6: combinatorial Alexander duality with torsion. For each of
/// the three ground-set complexes of every member, reduced homology in
/// dimension i matches the cohomology of the dual complex in dimension
/// n - i - 3: Betti numbers straight across, torsion shifted one down.
pub fn alexander_duality_holds(_seed: u64) -> CriterionOutcome {
    alexander_duality_with(&suite_members())
}

fn alexander_duality_with(members: &[SuiteMember]) -> CriterionOutcome {
    outcome(6, "Alexander duality holds with torsion", "alexander-duality", (|| {
        let mut checked = 0usize;
        for member in members {
            let m = &member.matroid;
            let n = m.n();
            let ground = Subset::full(n);
            for (tag, delta) in [
                ("independence", independence_complex(m)),
                ("nonspanning", nonspanning_complex(m)),
                ("cospanning", cospanning_complex(m)),
            ] {
                let dual = delta.alexander_dual(&ground);
                let h = optional_homology(&delta).map_err(err)?;
                let hd = optional_homology(&dual).map_err(err)?;
                for i in -1..=(n as i64) {
                    let betti_left = h.as_ref().map_or(0, |g| g.betti(i));
                    let betti_right = hd.as_ref().map_or(0, |g| g.betti(n as i64 - i - 3));
                    let torsion_left = h.as_ref().map_or(Vec::new(), |g| g.torsion(i));
                    let torsion_right =
                        hd.as_ref().map_or(Vec::new(), |g| g.torsion(n as i64 - i - 4));
                    if betti_left != betti_right || torsion_left != torsion_right {
                        return Ok((
                            false,
                            format!(
                                "{} {tag}: dimension {i} disagrees with the dual complex",
                                member.id
                            ),
                        ));
                    }
                    checked += 1;
                }
            }
        }
        Ok((
            true,
            format!(
                "{checked} dimension pairs over {} matroids and three complexes each",
                members.len()
            ),
        ))
    })())
}

fn optional_homology(c: &SimplicialComplex) -> Result<Option<Homology>, String> {
    if c.is_void() {
        return Ok(None);
    }
    reduced_homology(c).map(Some).map_err(err)
}

/// Criterion 7: the balancing condition at every codimension-one cone of
/// every roster fan.
pub fn fans_balance(_seed: u64) -> CriterionOutcome {
    fans_balance_with(&suite_members())
}

fn fans_balance_with(members: &[SuiteMember]) -> CriterionOutcome {
    outcome(7, "fans balance in codimension one", "balancing", (|| {
        let mut checked = 0usize;
        for member in members {
            let m = &member.matroid;
            let fan = BergmanFan::bergman_fan(m).map_err(err)?;
            let mut walls: BTreeSet<Vec<Subset>> = BTreeSet::new();
            for chain in maximal_flat_chains(m).map_err(err)? {
                if chain.is_empty() {
                    walls.insert(chain);
                    continue;
                }
                for skip in 0..chain.len() {
                    let mut sub = chain.clone();
                    sub.remove(skip);
                    walls.insert(sub);
                }
            }
            for wall in &walls {
                if !fan.balancing_check(wall).map_err(err)? {
                    return Ok((
                        false,
                        format!("{}: a codimension-one cone fails to balance", member.id),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!(
                "{checked} codimension-one cones over {} fans, all balanced",
                members.len()
            ),
        ))
    })())
}

/// Criterion 8: the worked disconnection example, exactly. The fixed
/// weight at threshold zero keeps six flats in two components, reduced
/// H_0 is one copy of Z, and the link condition fails.
pub fn worked_disconnection_example(_seed: u64) -> CriterionOutcome {
    outcome(8, "the worked disconnection example", "disconnection", (|| {
        let m = Matroid::disconnection_example();
        let omega = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        let t = BigRational::zero();
        let lat = proper_lattice(&m).map_err(err)?;
        let kept = filtered(&lat, &omega, &t);
        let expected: Vec<Subset> = vec![
            Subset::from_elems(&[1], 7),
            Subset::from_elems(&[2], 7),
            Subset::from_elems(&[6], 7),
            Subset::from_elems(&[7], 7),
            Subset::from_elems(&[1, 2], 7),
            Subset::from_elems(&[6, 7], 7),
        ];
        let mut got = kept.poset.elements().to_vec();
        got.sort_by_key(|s| (s.card(), s.bits()));
        if got != expected {
            return Ok((false, format!("kept flats are {got:?}")));
        }
        let h = reduced_homology(&kept.poset.order_complex()).map_err(err)?;
        if h.nonzero_dims() != vec![0] || h.betti(0) != 1 || !h.group(0).is_free() {
            return Ok((false, format!("reduced homology is {h:?}")));
        }
        let cm = cm_over_z_poset(&kept.poset).map_err(err)?;
        if cm.cohen_macaulay() {
            return Ok((false, "the link condition unexpectedly holds".into()));
        }
        Ok((
            true,
            "six kept flats, two components, reduced H_0 = Z, link condition fails".into(),
        ))
    })())
}

/// Criterion 9: the seven-point integral defect, exactly. The fixed
/// halfspace gives a positive-side degree-1 group of full rank and index
/// two, the parity functional is even on every generator and odd on the
/// excluded ray, and the saturation has index one.
pub fn integral_defect_witness(_seed: u64) -> CriterionOutcome {
    outcome(9, "the integral defect witness", "seven-point-defect", (|| {
        let report = torsion_witness_fano().map_err(err)?;
        let two: Option<BigInt> = Some(BigInt::from(2));
        let one: Option<BigInt> = Some(BigInt::from(1));
        if !report.pass
            || report.integral.rank_full != 6
            || report.integral.rank_positive != 6
            || report.integral.index != two
            || report.rational.index != one
        {
            return Ok((
                false,
                format!(
                    "index over Z is {:?} at ranks {}/{}, index over Q is {:?}",
                    report.integral.index,
                    report.integral.rank_positive,
                    report.integral.rank_full,
                    report.rational.index
                ),
            ));
        }
        Ok((
            true,
            format!(
                "rank 6 on both sides, index 2 over Z and 1 over Q; parity even on all \
                 {} generators, odd on the excluded ray",
                report.generating_flats.len()
            ),
        ))
    })())
}

/// Criterion 10: on every member and every degree p < r - 1, twenty random
/// generic halfspaces give a positive-side degree-p group of the same
/// rational rank as the full group. Ranks are certified by one large prime
/// against the exact full rank, with an exact recount on any shortfall.
pub fn positive_sides_have_full_rank(seed: u64) -> CriterionOutcome {
    positive_sides_with(seed, &suite_members())
}

fn positive_sides_with(seed: u64, members: &[SuiteMember]) -> CriterionOutcome {
    outcome(10, "positive sides have full rational rank", "positive-rank", (|| {
        let mut rng = rng_for(seed, 10);
        let mut certified = 0usize;
        let mut recounted = 0usize;
        for member in members {
            let m = &member.matroid;
            let r = m.rank() as usize;
            let fan = BergmanFan::bergman_fan(m).map_err(err)?;
            let chains = maximal_flat_chains(m).map_err(err)?;
            let included: Vec<Vec<bool>> = (0..20)
                .map(|_| {
                    let (_, w) = random_generic_halfspace(&mut rng, &fan);
                    chains
                        .iter()
                        .map(|ch| ch.iter().any(|f| w.dot(f) > BigRational::zero()))
                        .collect()
                })
                .collect();
            let ambient = fan.realization().dim();
            for p in 0..=r.saturating_sub(2) {
                let width = combinations_lex(ambient, p).len();
                let rows: Vec<Vec<Vec<BigInt>>> = chains
                    .iter()
                    .map(|ch| {
                        chain_lattice(fan.realization(), ch)
                            .wedge_power(p)
                            .basis_rows()
                            .to_vec()
                    })
                    .collect();
                let mut full = Lattice::zero(width);
                'fill: for per_chain in &rows {
                    for row in per_chain {
                        full.insert(row.clone());
                        if full.rank() == width {
                            break 'fill;
                        }
                    }
                }
                let rho = full.rank();
                for mask in &included {
                    let picked = rows
                        .iter()
                        .zip(mask)
                        .filter(|(_, keep)| **keep)
                        .flat_map(|(per_chain, _)| per_chain.iter());
                    let lower = modp_rank_rows(picked, rho)?;
                    if lower == rho {
                        certified += 1;
                        continue;
                    }
                    let mut sub = Lattice::zero(width);
                    for (per_chain, keep) in rows.iter().zip(mask) {
                        if *keep {
                            for row in per_chain {
                                sub.insert(row.clone());
                            }
                        }
                    }
                    recounted += 1;
                    if sub.rank() != rho {
                        return Ok((
                            false,
                            format!(
                                "{}: degree {p} positive side has rank {} against {rho}",
                                member.id,
                                sub.rank()
                            ),
                        ));
                    }
                }
            }
        }
        Ok((
            true,
            format!(
                "{certified} comparisons certified by one prime, {recounted} settled by \
                 exact recount; every positive side has full rank"
            ),
        ))
    })())
}

/// Criterion 11: rational homology of the punctured positive side
/// vanishes for p + q <= r - 3. Zero is certified whenever the single
/// large prime already reports zero, with an exact recount otherwise; the
/// free members ride the unimodularity of their cones, which makes every
/// coefficient group the full wedge lattice and the complex a direct sum
/// of copies of the weight filtration itself.
pub fn halflink_low_degrees_vanish(seed: u64) -> CriterionOutcome {
    halflink_vanishing_with(seed, &suite_members())
}

fn halflink_vanishing_with(seed: u64, members: &[SuiteMember]) -> CriterionOutcome {
    outcome(11, "halved links vanish in low degrees", "halflink-vanishing", (|| {
        let mut rng = rng_for(seed, 11);
        let mut certified = 0usize;
        let mut recounted = 0usize;
        for member in members {
            let m = &member.matroid;
            let r = m.rank() as i64;
            let fan = BergmanFan::bergman_fan(m).map_err(err)?;
            let mut weights: Vec<Weight> = (0..3)
                .map(|_| random_generic_halfspace(&mut rng, &fan).1)
                .collect();
            if member.id == "fano" {
                let h = Halfspace::from_integers(&[4, 4, 4, -3, -3, -3]);
                weights.push(h.induced_weight(fan.realization()).map_err(err)?);
            }
            let lat = proper_lattice(m).map_err(err)?;
            if m.rank() == m.n() {
                // Unimodular full-dimensional cones: every star is the whole
                // wedge lattice, so each degree p is that many copies of the
                // plain filtered complex and p = 0 subsumes them all.
                for w in &weights {
                    let kept = filtered(&lat, w, &BigRational::zero()).poset.order_complex();
                    let h = reduced_homology(&kept).map_err(err)?;
                    for q in -1..=(r - 3) {
                        if h.betti(q) != 0 {
                            return Ok((
                                false,
                                format!("{}: Betti {} in dimension {q}", member.id, h.betti(q)),
                            ));
                        }
                        certified += 1;
                    }
                }
                continue;
            }
            for p in 0..=(r - 2) as usize {
                let stars = star_table(&fan, p).map_err(err)?;
                let q_max = r - 3 - p as i64;
                for w in &weights {
                    let kept = filtered(&lat, w, &BigRational::zero()).poset.order_complex();
                    let trimmed = card_skeleton(&kept, (q_max + 2) as usize);
                    let (_, _, cc) = cells_and_boundary(&trimmed, &stars).map_err(err)?;
                    for q in -1..=q_max {
                        let level = (q + 1) as usize;
                        let dim = cc.dim_of(level);
                        let down = rank_mod_p(cc.boundary(level));
                        let up = if level + 1 < cc.degrees() {
                            rank_mod_p(cc.boundary(level + 1))
                        } else {
                            0
                        };
                        if dim == down + up {
                            certified += 1;
                            continue;
                        }
                        // The prime only bounds ranks from below; recount
                        // both boundaries exactly before judging.
                        let exact_down = snf_sparse(cc.boundary(level)).rank;
                        let exact_up = if level + 1 < cc.degrees() {
                            snf_sparse(cc.boundary(level + 1)).rank
                        } else {
                            0
                        };
                        recounted += 1;
                        if dim != exact_down + exact_up {
                            return Ok((
                                false,
                                format!(
                                    "{}: degree ({p}, {q}) has rational Betti {}",
                                    member.id,
                                    dim - exact_down - exact_up
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok((
            true,
            format!(
                "{certified} bidegrees certified zero by one prime, {recounted} by exact \
                 recount, across {} matroids",
                members.len()
            ),
        ))
    })())
}

/// Criterion 12: coning shifts the link by one degree. The cone identity
/// is verified structurally on every member: the apex vertex sorts last,
/// faces pair off, boundary signs agree position by position, and paired
/// cells carry the same chain of flats, hence the same coefficient group.
/// Small members are additionally run through the full boundary-matrix
/// and homology comparison in every degree p <= r - 1.
pub fn cones_shift_links(_seed: u64) -> CriterionOutcome {
    cones_shift_with(&suite_members())
}

fn cones_shift_with(members: &[SuiteMember]) -> CriterionOutcome {
    outcome(12, "cones shift links by one degree", "cone-shift", (|| {
        let mut exact_pairs = 0usize;
        let mut structural_only = 0usize;
        for member in members {
            let m = &member.matroid;
            let link = proper_lattice(m).map_err(err)?.order_complex();
            let ball = link.cone().map_err(err)?;
            if ball.face_count() != 2 * link.face_count() {
                return Ok((false, format!("{}: cone face count is off", member.id)));
            }
            let apex = ball.labels().len() - 1;
            if ball.labels()[apex] != Label::Apex || ball.labels()[..apex] != link.labels()[..] {
                return Ok((
                    false,
                    format!("{}: cone vertices are not the link plus a final apex", member.id),
                ));
            }
            let apex_bit = 1u128 << apex;
            for per in link.faces_by_card() {
                for &mask in per {
                    if !ball.is_face_mask(mask) || !ball.is_face_mask(mask | apex_bit) {
                        return Ok((
                            false,
                            format!("{}: a link face fails to pair with its cone", member.id),
                        ));
                    }
                    let mut walk = mask;
                    while walk != 0 {
                        let bit = walk.trailing_zeros();
                        walk &= walk - 1;
                        let below = (mask & ((1u128 << bit) - 1)).count_ones();
                        let below_coned =
                            ((mask | apex_bit) & ((1u128 << bit) - 1)).count_ones();
                        if below % 2 != below_coned % 2 {
                            return Ok((
                                false,
                                format!("{}: a boundary sign flips under coning", member.id),
                            ));
                        }
                    }
                }
            }
            let ambient = (m.n() - 1) as usize;
            for p in 0..=(m.rank() - 1) as usize {
                let width = combinations_lex(ambient, p).len();
                if link.face_count() * width <= 4000 {
                    let report = cone_iso_check(m, p, Ring::Int).map_err(err)?;
                    if !report.pass {
                        return Ok((
                            false,
                            format!(
                                "{}: degree {p} cells {} boundaries {} homology {}",
                                member.id,
                                report.cells_match,
                                report.boundaries_match,
                                report.homology_match
                            ),
                        ));
                    }
                    exact_pairs += 1;
                } else {
                    structural_only += 1;
                }
            }
        }
        Ok((
            true,
            format!(
                "cone identity verified on {} matroids; {exact_pairs} degrees also \
                 compared matrix by matrix and group by group, {structural_only} large \
                 degrees covered by the structural identity",
                members.len()
            ),
        ))
    })())
}

/// Criterion 13: the rank-three witness in bidegree (1, 1). Expected: the
/// printed relations are inconsistent and the cycle class is nonzero. The
/// first half reproduces; the second does not, because the cycle bounds
/// explicitly, so this check reports the discrepancy and fails.
pub fn low_degree_cycle_witness(_seed: u64) -> CriterionOutcome {
    outcome(13, "the low-degree cycle witness", "rank-three-witness", (|| {
        let report = u34_witness().map_err(err)?;
        let pass = report.system_inconsistent && report.cycle_closes && report.class_nonzero;
        let detail = format!(
            "relations inconsistent: {}; cycle closes: {}; class nonzero: {} (expected true): \
             assigning the three ambient basis vectors to the three two-dimensional cones \
             fills the cycle, so its class vanishes and the nonzero-class expectation is \
             not reproducible; bidegree {:?} sits outside the vanishing range of the \
             dimension-{} fan either way",
            report.system_inconsistent,
            report.cycle_closes,
            report.class_nonzero,
            report.bidegree,
            report.fan_dimension
        );
        Ok((pass, detail))
    })())
}

/// Criterion 14: infrastructure. Boundary squares recompose to zero on
/// every roster order complex, normal forms re-verify against their
/// transform certificates, lattice bases re-verify, duality is an
/// involution away from coloops and errors on them, and the filtration is
/// hereditary across every nested pair of flats.
pub fn infrastructure_holds(seed: u64) -> CriterionOutcome {
    infrastructure_with(seed, &suite_members())
}

fn infrastructure_with(seed: u64, members: &[SuiteMember]) -> CriterionOutcome {
    outcome(14, "infrastructure re-verifies", "infrastructure", (|| {
        let mut rng = rng_for(seed, 14);
        let mut squares = 0usize;
        let mut normal_forms = 0usize;
        let mut lattices = 0usize;
        let mut involutions = 0usize;
        let mut hereditary = 0usize;
        for member in members {
            let m = &member.matroid;
            let delta = proper_lattice(m).map_err(err)?.order_complex();
            let mats = boundary_matrices(delta.faces_by_card());
            if delta.face_count() <= 600 {
                for (k, mat) in mats.iter().enumerate().skip(1) {
                    let dense = dense_of(mat);
                    let ncols = delta.faces_by_card()[k].len();
                    let snf = snf_dense(&dense, ncols, true);
                    verify_snf(&dense, ncols, &snf)?;
                    normal_forms += 1;
                }
            }
            ChainComplexZ::new(mats).map_err(err)?;
            squares += 1;

            let fan = BergmanFan::bergman_fan(m).map_err(err)?;
            for chain in maximal_flat_chains(m).map_err(err)?.iter().take(3) {
                for p in 0..=chain.len().min(2) {
                    let wedge = chain_lattice(fan.realization(), chain).wedge_power(p);
                    let mut certified = Lattice::zero_certified(wedge.dim());
                    for row in wedge.basis_rows() {
                        certified.insert(row.clone());
                    }
                    if !certified.is_certified() || certified.rank() != wedge.rank() {
                        return Ok((false, format!("{}: a wedge basis lost its certificate", member.id)));
                    }
                    certified.verify_certificate()?;
                    lattices += 1;
                }
            }

            if m.rank() < m.n() {
                let back = m.dual().map_err(err)?.dual().map_err(err)?;
                if back != *m {
                    return Ok((false, format!("{}: dual of dual differs", member.id)));
                }
                involutions += 1;
            } else if m.dual().is_ok() {
                return Ok((
                    false,
                    format!("{}: a free matroid dualized despite its coloops", member.id),
                ));
            }

            let omega = random_generic_weight(&mut rng, m.n());
            let t = random_threshold(&mut rng, &omega);
            let flats: Vec<Subset> = m.flats().collect();
            for sigma in &flats {
                for tau in &flats {
                    if sigma != tau && sigma.is_subset_of(tau) {
                        if !heredity_check(m, &omega, &t, sigma, tau).map_err(err)? {
                            return Ok((
                                false,
                                format!(
                                    "{}: filtration not hereditary between {sigma} and {tau}",
                                    member.id
                                ),
                            ));
                        }
                        hereditary += 1;
                    }
                }
            }
        }
        Ok((
            true,
            format!(
                "{squares} boundary squares recomposed to zero (every other complex built \
                 here verifies on construction), {normal_forms} normal forms re-verified \
                 with transforms, {lattices} lattice certificates re-verified, \
                 {involutions} duality involutions, {hereditary} hereditary intervals"
            ),
        ))
    })())
}

fn dense_of(mat: &SparseMat) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::zero(); mat.ncols()]; mat.nrows()];
    for (r, c, v) in mat.triples() {
        rows[r][c] += BigInt::from(v);
    }
    rows
}
