//! The seven commands. Each fills a report and returns `Ok` when the input
//! was usable; check failures are recorded as FAIL verdicts, not errors.

use std::collections::BTreeSet;

use clap::ValueEnum;
use num_bigint::BigInt;
use tropical_lefschetz::bergman::{
    boolean_minus_nonspanning, lefschetz_pair, positive_part, BergmanFan, CircuitRealization,
    Halfspace,
};
use tropical_lefschetz::complex::{cospanning_complex, independence_complex, Label,
    SimplicialComplex};
use tropical_lefschetz::homology::{cm_over_z_poset, reduced_homology, wedge_profile};
use tropical_lefschetz::hodge::{pq_homology, torsion_witness_fano, u34_witness, PComparison,
    Region, Ring};
use tropical_lefschetz::matroid::Matroid;
use tropical_lefschetz::poset::{filtered, proper_lattice};
use tropical_lefschetz::shelling::{
    boolean_filtered_complex, lex_shelling_boolean, verify_shelling, ShellingVerdict,
};
use tropical_lefschetz::subset::Subset;
use tropical_lefschetz::suite;
use tropical_lefschetz::weight::{show_rational, Weight};

use crate::input::{self, input_err, InputError};
use crate::report::Report;

/// Which fan check to run.
#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FanCheck {
    /// Balancing over every codimension-one cone.
    Balance,
    /// The positive part of the link under a halfspace.
    Positive,
    /// The relative pair of the halfspace against its boundary.
    Lefschetz,
}

/// Region choice for the bigraded homology command.
#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegionArg {
    Link,
    Halflink,
    Ball,
}

/// Coefficient choice for the bigraded homology command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Int,
    Rat,
}

const GOLDEN: &str = include_str!("../golden/paper_examples.txt");

/// Cap on how many sets a record lists before falling back to a count.
const LIST_CAP: usize = 24;

fn matroid_summary(m: &Matroid) -> String {
    let by_rank: Vec<String> = (1..m.rank())
        .map(|k| m.flats_of_rank(k).count().to_string())
        .collect();
    let ranks = if by_rank.is_empty() {
        String::new()
    } else {
        format!(" ({} by rank)", by_rank.join(" + "))
    };
    format!(
        "rank {} on {} elements; {} proper flats{ranks}; mobius {}",
        m.rank(),
        m.n(),
        m.proper_flats().len(),
        m.mobius()
    )
}

fn show_dim(d: Option<i64>) -> String {
    match d {
        Some(d) => d.to_string(),
        None => "void".to_string(),
    }
}

/// A chain face printed in increasing order, or a placeholder when empty.
fn show_face(face: &[Label]) -> String {
    if face.is_empty() {
        return "the empty face".to_string();
    }
    let mut sorted = face.to_vec();
    sorted.sort_by_key(|l| match l {
        Label::Flat(s) => (s.card(), s.bits()),
        Label::Elem(e) => (1, *e),
        Label::Apex => (u32::MAX, 0),
        Label::Anon(i) => (0, *i as u32),
    });
    sorted
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" < ")
}

fn show_subset_list(sets: &[Subset]) -> String {
    if sets.len() > LIST_CAP {
        return format!("{} sets", sets.len());
    }
    sets.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Validates a normal against the fan's ambient dimension and requires the
/// induced weight to be generic, since every positivity statement assumes
/// no flat sits exactly on the boundary.
fn generic_halfspace(m: &Matroid, list: &str) -> Result<(Halfspace, Weight), InputError> {
    let h = input::parse_normal_arg(list, m.n())?;
    let circuit = CircuitRealization::standard_circuit(m.n()).map_err(input_err)?;
    let w = h.induced_weight(&circuit).map_err(input_err)?;
    if let Some(witness) = w.nongeneric_witness() {
        return Err(InputError(format!(
            "the normal induces a non-generic weight: subset {witness} has weight zero"
        )));
    }
    Ok((h, w))
}

/// Validate a matroid file and summarize it.
pub fn cmd_matroid(report: &mut Report, file: &str) -> Result<(), InputError> {
    let (m, digest) = input::load_matroid(file)?;
    report.input(file, &digest);
    report.push("summary", "matroid/summary", true, matroid_summary(&m));
    Ok(())
}

/// Filter the lattice of flats and check the structural consequences.
pub fn cmd_filtered(
    report: &mut Report,
    file: &str,
    omega_arg: &str,
    t_arg: &str,
) -> Result<(), InputError> {
    let (m, digest) = input::load_matroid(file)?;
    report.input(file, &digest);
    let omega = input::parse_weight_arg(omega_arg, m.n())?;
    let t = input::parse_t_arg(t_arg)?;
    let lat = proper_lattice(&m).map_err(input_err)?;
    let fp = filtered(&lat, &omega, &t);

    let mut pdata = format!(
        "omega {omega}; t = {}; generic: {}",
        show_rational(&fp.t),
        fp.generic
    );
    if let Some(w) = &fp.witness {
        pdata.push_str(&format!(" (subset {w} has weight zero)"));
    }
    pdata.push_str(&format!("; t in range: {}", fp.t_in_range));
    report.push("parameters", "filtered/parameters", true, pdata);

    let mut kept: Vec<Subset> = fp.poset.elements().to_vec();
    kept.sort_by_key(|s| (s.card(), s.bits()));
    let edata = if kept.is_empty() {
        "0 kept flats".to_string()
    } else {
        format!("{} kept flats: {}", kept.len(), show_subset_list(&kept))
    };
    report.push("elements", "filtered/elements", true, edata);

    let complex = fp.poset.order_complex();
    let want = m.rank() as i64 - 2;
    let pure_ok = complex.is_pure() && complex.dim() == Some(want);
    report.push(
        "purity",
        "filtered/purity",
        pure_ok,
        format!(
            "dimension {}; pure: {}; expected dimension {want}",
            show_dim(complex.dim()),
            complex.is_pure()
        ),
    );

    let h = reduced_homology(&complex).map_err(input_err)?;
    report.push(
        "homology",
        "filtered/homology",
        true,
        format!("reduced homology {h}"),
    );

    let cm = cm_over_z_poset(&fp.poset).map_err(input_err)?;
    let cdata = match (&cm.witness, cm.cohen_macaulay()) {
        (_, true) => "every face link is concentrated in its top dimension".to_string(),
        (Some(w), false) => format!(
            "link of {} has {} in dimension {}",
            show_face(&w.face),
            w.group,
            w.dim
        ),
        (None, false) => "the complex is not pure".to_string(),
    };
    report.push("cohen-macaulay", "filtered/cm", cm.cohen_macaulay(), cdata);

    let wp = wedge_profile(&complex, want).map_err(input_err)?;
    let wdata = match &wp.failure {
        None => format!("wedge count {} at dimension {want}", wp.count),
        Some((d, g)) => format!("not a wedge: {g} in dimension {d}"),
    };
    report.push("wedge", "filtered/wedge", wp.ok, wdata);
    Ok(())
}

/// Shell the filtered Boolean complex and verify the order.
pub fn cmd_shell(
    report: &mut Report,
    file: &str,
    omega_arg: &str,
    t_arg: &str,
) -> Result<(), InputError> {
    let (m, digest) = input::load_matroid(file)?;
    report.input(file, &digest);
    if m.rank() != m.n() {
        return Err(InputError(format!(
            "the lexicographic shelling applies to free matroids; this input has rank {} on {} elements",
            m.rank(),
            m.n()
        )));
    }
    let n = m.n();
    let omega = input::parse_weight_arg(omega_arg, n)?;
    let t = input::parse_t_arg(t_arg)?;
    let order = lex_shelling_boolean(n, &omega, &t).map_err(input_err)?;
    let complex = boolean_filtered_complex(n, &omega, &t);
    report.push(
        "parameters",
        "shelling/parameters",
        true,
        format!("n = {n}; omega {omega}; t = {}", show_rational(&t)),
    );
    let first = order
        .facets
        .first()
        .map(|f| show_face(f))
        .unwrap_or_else(|| "none".to_string());
    report.push(
        "order",
        "shelling/order",
        true,
        format!("{} facets; first facet {first}", order.len()),
    );
    let verdict = verify_shelling(&complex, &order).map_err(input_err)?;
    let (ok, vdata) = match verdict {
        ShellingVerdict::Pass => (
            true,
            "every facet attaches along pure codimension one".to_string(),
        ),
        ShellingVerdict::Fail { index } => (false, format!("facet {index} fails to attach")),
    };
    report.push("verification", "shelling/verified", ok, vdata);
    Ok(())
}

/// One of the three fan checks.
pub fn cmd_bergman(
    report: &mut Report,
    file: &str,
    normal: Option<&str>,
    check: FanCheck,
) -> Result<(), InputError> {
    let (m, digest) = input::load_matroid(file)?;
    report.input(file, &digest);
    match check {
        FanCheck::Balance => {
            if normal.is_some() {
                return Err(InputError(
                    "--normal applies to the positive and lefschetz checks only".to_string(),
                ));
            }
            let fan = BergmanFan::bergman_fan(&m).map_err(input_err)?;
            let lat = proper_lattice(&m).map_err(input_err)?;
            let els = lat.elements().to_vec();
            let mut walls: BTreeSet<Vec<Subset>> = BTreeSet::new();
            let chains: Vec<Vec<Subset>> = if els.is_empty() {
                vec![Vec::new()]
            } else {
                lat.maximal_chains()
                    .into_iter()
                    .map(|ch| ch.into_iter().map(|i| els[i]).collect())
                    .collect()
            };
            for chain in chains {
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
            let mut bad: Option<Vec<Subset>> = None;
            for wall in &walls {
                if !fan.balancing_check(wall).map_err(input_err)? {
                    bad = Some(wall.clone());
                    break;
                }
            }
            match bad {
                None => report.push(
                    "balance",
                    "fan/balance",
                    true,
                    format!("{} codimension-one cones, all balanced", walls.len()),
                ),
                Some(w) => report.push(
                    "balance",
                    "fan/balance",
                    false,
                    format!("the cone on {} fails to balance", show_subset_list(&w)),
                ),
            }
        }
        FanCheck::Positive | FanCheck::Lefschetz => {
            let list = normal.ok_or_else(|| {
                InputError("this check requires --normal".to_string())
            })?;
            let (h, w) = generic_halfspace(&m, list)?;
            report.push(
                "halfspace",
                "fan/halfspace",
                true,
                format!("induced weight {w}; generic: true"),
            );
            if matches!(check, FanCheck::Positive) {
                let pp = positive_part(&m, &h).map_err(input_err)?;
                let mut flats: Vec<Subset> = pp.rays.iter().map(|(f, _)| *f).collect();
                flats.sort_by_key(|s| (s.card(), s.bits()));
                let fdata = if flats.is_empty() {
                    "0 positive flats".to_string()
                } else {
                    format!("{} positive flats: {}", flats.len(), show_subset_list(&flats))
                };
                report.push("positive-flats", "fan/positive-flats", true, fdata);
                report.push(
                    "complex",
                    "fan/positive-complex",
                    true,
                    format!(
                        "{} faces; dimension {}",
                        pp.complex.face_count(),
                        show_dim(pp.complex.dim())
                    ),
                );
            } else {
                let lr = lefschetz_pair(&m, &h).map_err(input_err)?;
                report.push(
                    "relative-pair",
                    "fan/relative-pair",
                    lr.pass,
                    format!(
                        "relative homology {}; expected concentration in dimension {}",
                        lr.homology, lr.expected_dim
                    ),
                );
            }
        }
    }
    Ok(())
}

/// Bigraded homology of one region at one degree.
pub fn cmd_hodge(
    report: &mut Report,
    file: &str,
    p: usize,
    region_arg: RegionArg,
    ring_arg: RingArg,
    normal: Option<&str>,
) -> Result<(), InputError> {
    let (m, digest) = input::load_matroid(file)?;
    report.input(file, &digest);
    let ring = match ring_arg {
        RingArg::Int => Ring::Int,
        RingArg::Rat => Ring::Rat,
    };
    let (region, rdesc) = match region_arg {
        RegionArg::Link => {
            if normal.is_some() {
                return Err(InputError(
                    "--normal applies to the halflink region only".to_string(),
                ));
            }
            (Region::Link, "link".to_string())
        }
        RegionArg::Ball => {
            if normal.is_some() {
                return Err(InputError(
                    "--normal applies to the halflink region only".to_string(),
                ));
            }
            (Region::Ball, "ball".to_string())
        }
        RegionArg::Halflink => {
            let list = normal.ok_or_else(|| {
                InputError("the halflink region requires --normal".to_string())
            })?;
            let (h, w) = generic_halfspace(&m, list)?;
            (
                Region::HalfLink(h),
                format!("halflink with induced weight {w}"),
            )
        }
    };
    let ring_name = match ring {
        Ring::Int => "integral",
        Ring::Rat => "rational",
    };
    report.push(
        "parameters",
        "hodge/parameters",
        true,
        format!(
            "{}; region {rdesc}; p = {p}; {ring_name} coefficients",
            matroid_summary(&m)
        ),
    );
    let h = pq_homology(&m, &region, p, ring).map_err(input_err)?;
    for q in -1..=h.max_dim() {
        let g = h.group(q);
        let torsion = if g.torsion.is_empty() {
            "none".to_string()
        } else {
            g.torsion
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        report.push(
            &format!("group q = {q}"),
            "hodge/group",
            true,
            format!("betti {}; torsion {torsion}", g.betti),
        );
    }
    Ok(())
}

/// Run the acceptance suite with the randomized roster capped at `max_n`.
pub fn cmd_suite(report: &mut Report, seed: u64, max_n: u32) -> Result<(), InputError> {
    if !(2..=8).contains(&max_n) {
        return Err(InputError(format!(
            "--max-n {max_n} is out of range: ground sets are capped at 8 elements, \
             and below 2 no member remains"
        )));
    }
    report.seed(seed);
    for outcome in suite::run_all_capped(seed, max_n) {
        report.push(outcome.name, outcome.anchor, outcome.pass, outcome.detail);
    }
    Ok(())
}

fn index_of(c: &PComparison) -> String {
    match &c.index {
        Some(i) => i.to_string(),
        None => "infinite".to_string(),
    }
}

/// Faces of a complex whose labels are ground elements, as sorted id lists.
fn elem_faces(c: &SimplicialComplex) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for level in c.faces_by_card() {
        for &mask in level {
            let mut face: Vec<u32> = c
                .labels_of_mask(mask)
                .iter()
                .map(|l| match l {
                    Label::Elem(e) => *e,
                    other => panic!("expected an element label, found {other}"),
                })
                .collect();
            face.sort_unstable();
            out.insert(face);
        }
    }
    out
}

fn named_matroids(names: &[&str]) -> Result<Vec<(String, Matroid)>, InputError> {
    names
        .iter()
        .map(|&id| {
            let m = match id {
                "uniform(2,3)" => Matroid::uniform(2, 3).map_err(input_err)?,
                "uniform(2,4)" => Matroid::uniform(2, 4).map_err(input_err)?,
                "uniform(3,5)" => Matroid::uniform(3, 5).map_err(input_err)?,
                "fano" => Matroid::fano(),
                "graphic_k4" => {
                    Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
                        .map_err(input_err)?
                }
                other => {
                    let n: u32 = other
                        .trim_start_matches("boolean(")
                        .trim_end_matches(')')
                        .parse()
                        .map_err(input_err)?;
                    Matroid::boolean(n).map_err(input_err)?
                }
            };
            Ok((id.to_string(), m))
        })
        .collect()
}

/// Reproduce the six recorded examples and compare them, line for line,
/// against the committed record.
pub fn cmd_paper_examples(report: &mut Report) -> Result<(), InputError> {
    // The disconnecting weight on the seven-point rank-three matroid.
    {
        let m = Matroid::disconnection_example();
        let omega = Weight::from_integers(&[1, 1, -3, -3, -3, 1, 1]);
        let t = input::parse_t_arg("0")?;
        let lat = proper_lattice(&m).map_err(input_err)?;
        let fp = filtered(&lat, &omega, &t);
        let mut kept: Vec<Subset> = fp.poset.elements().to_vec();
        kept.sort_by_key(|s| (s.card(), s.bits()));
        let expected: Vec<Subset> = [
            vec![1u32],
            vec![2],
            vec![6],
            vec![7],
            vec![1, 2],
            vec![6, 7],
        ]
        .iter()
        .map(|e| Subset::from_elems(e, 7))
        .collect();
        let complex = fp.poset.order_complex();
        let h = reduced_homology(&complex).map_err(input_err)?;
        let h_ok = h.nonzero_dims() == vec![0] && h.betti(0) == 1 && h.torsion(0).is_empty();
        let cm = cm_over_z_poset(&fp.poset).map_err(input_err)?;
        let pass = kept == expected && h_ok && !cm.cohen_macaulay();
        report.push(
            "disconnection",
            "worked-example/disconnection",
            pass,
            format!(
                "kept flats {}; reduced homology {h}; cohen-macaulay: {}",
                show_subset_list(&kept),
                cm.cohen_macaulay()
            ),
        );
    }

    // The index-two defect of the seven-point plane.
    {
        let r = torsion_witness_fano().map_err(input_err)?;
        report.push(
            "seven-point-defect",
            "worked-example/defect",
            r.pass,
            format!(
                "degree-one ranks {} of {}; integral index {}; rational index {}; \
                 parity even on all {} generating flats: {}; excluded singleton {} has parity {}",
                r.integral.rank_positive,
                r.integral.rank_full,
                index_of(&r.integral),
                index_of(&r.rational),
                r.generating_flats.len(),
                r.generators_all_even,
                r.excluded_singleton,
                r.excluded_parity
            ),
        );
    }

    // The rank-three cycle whose class is recorded as nonzero.
    {
        let r = u34_witness().map_err(input_err)?;
        let pass = r.system_inconsistent && r.cycle_closes && r.class_nonzero;
        report.push(
            "rank-three-witness",
            "worked-example/rank-three",
            pass,
            format!(
                "relations inconsistent: {}; cycle closes: {}; class nonzero: {}",
                r.system_inconsistent, r.cycle_closes, r.class_nonzero
            ),
        );
    }

    // Sphere counts against the Moebius number.
    {
        let list = named_matroids(&[
            "uniform(2,3)",
            "boolean(1)",
            "boolean(2)",
            "boolean(3)",
            "boolean(4)",
            "boolean(5)",
            "fano",
            "graphic_k4",
        ])?;
        let mut ok = true;
        let mut parts = Vec::new();
        for (id, m) in &list {
            // A rank-one matroid has an empty proper lattice; its order
            // complex is the lone empty face, one sphere in dimension -1.
            let complex = if m.rank() < 2 {
                SimplicialComplex::empty_face_only()
            } else {
                proper_lattice(m).map_err(input_err)?.order_complex()
            };
            let wp = wedge_profile(&complex, m.rank() as i64 - 2).map_err(input_err)?;
            let mu = m.mobius();
            let count = BigInt::from(wp.count);
            ok = ok && wp.ok && (mu == count || mu == -count.clone());
            parts.push(format!("{id} {}", wp.count));
        }
        report.push(
            "sphere-counts",
            "worked-example/sphere-counts",
            ok,
            parts.join("; "),
        );
    }

    // The complement model's dimension bound.
    {
        let list = named_matroids(&["uniform(2,4)", "uniform(3,5)", "fano", "graphic_k4"])?;
        let mut ok = true;
        let mut parts = Vec::new();
        for (id, m) in &list {
            let c = boolean_minus_nonspanning(m).map_err(input_err)?;
            let bound = (m.n() - m.rank()) as i64 - 1;
            ok = ok && c.dim().map_or(true, |d| d <= bound);
            parts.push(format!("{id} dimension {} with bound {bound}", show_dim(c.dim())));
        }
        report.push(
            "complement-dimension",
            "worked-example/complement-dimension",
            ok,
            parts.join("; "),
        );
    }

    // Cospanning faces against dual independence.
    {
        let list = named_matroids(&["uniform(2,4)", "uniform(3,5)", "fano", "graphic_k4"])?;
        let mut ok = true;
        let mut parts = Vec::new();
        for (id, m) in &list {
            let cos = cospanning_complex(m);
            let dual_ind = independence_complex(&m.dual().map_err(input_err)?);
            ok = ok && elem_faces(&cos) == elem_faces(&dual_ind);
            parts.push(format!("{id} {} faces", cos.face_count()));
        }
        report.push(
            "dual-identification",
            "worked-example/dual-identification",
            ok,
            parts.join("; "),
        );
    }

    // Line-for-line comparison with the committed record.
    {
        let computed: Vec<String> = report
            .records()
            .iter()
            .map(|r| format!("{}: {}: {}", r.name, r.verdict, r.data))
            .collect();
        let recorded: Vec<&str> = GOLDEN.lines().collect();
        let mut divergent: Vec<String> = Vec::new();
        if computed.len() != recorded.len() {
            divergent.push(format!(
                "record count {} against {} on file",
                computed.len(),
                recorded.len()
            ));
        }
        for (c, r) in computed.iter().zip(&recorded) {
            if c != r {
                let name = c.split(':').next().unwrap_or("?").to_string();
                divergent.push(name);
            }
        }
        let ok = divergent.is_empty();
        let data = if ok {
            format!("all {} records match the committed expectations", computed.len())
        } else {
            format!(
                "diverges from the committed expectations at: {}",
                divergent.join(", ")
            )
        };
        report.push("golden", "worked-example/golden", ok, data);
    }
    Ok(())
}
