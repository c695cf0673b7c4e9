//! Exact combinatorial machinery for weighted flat lattices: matroids,
//! order complexes, integral simplicial homology, lexicographic shellings,
//! tropical fans with their balancing and positivity structure, and the
//! bigraded coefficient complexes built from wedge powers of cone lattices.
//!
//! All arithmetic is exact (integers and rationals of unbounded size).
//! No floating point is used anywhere. Public types are immutable; every
//! operation returns fresh values.

pub mod bergman;
pub mod complex;
pub mod hodge;
pub mod homology;
pub mod linalg;
pub mod matroid;
pub mod poset;
pub mod shelling;
pub mod subset;
pub mod suite;
pub mod weight;

pub use bergman::{
    boolean_minus_flats, boolean_minus_nonspanning, lefschetz_pair, local_fans, positive_part,
    BergmanError, BergmanFan, CircuitRealization, Halfspace, LefschetzReport, PositivePart,
};
pub use complex::{Label, SimplicialComplex};
pub use hodge::{
    cone_iso_check, halfspace_p_comparison, p_group, p_group_full, p_group_positive, pq_complex,
    pq_homology, pq_relative_homology, torsion_witness_fano, u34_witness, ConeIsoReport,
    FanoTorsionReport, HodgeError, PComparison, PLattice, PQCell, PQComplex, Region, Ring,
    U34Report,
};
pub use homology::{
    cm_over_z, reduced_homology, relative_homology, wedge_profile, ChainComplexZ, CmReport,
    Homology, HomologyGroup,
};
pub use linalg::{Lattice, Snf, SparseMat};
pub use matroid::{Matroid, MatroidError, Minor};
pub use poset::{filtered, heredity_check, proper_lattice, FilteredPoset, Poset, PosetError};
pub use shelling::{
    brute_force_shellable, lex_shelling_boolean, verify_shelling, ShellingError, ShellingOrder,
    ShellingVerdict,
};
pub use subset::Subset;
pub use suite::{run_all, run_all_capped, suite_members, CriterionOutcome, SuiteMember, DEFAULT_SEED};
pub use weight::Weight;
