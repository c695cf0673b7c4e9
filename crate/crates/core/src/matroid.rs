//! Loopless matroids on {1..n} in canonical flats-by-rank form.
//!
//! The lattice of flats is the source of truth: closure, rank, minors,
//! duality, and the Moebius function are all computed from it. Constructors
//! from flats, bases, uniform/boolean parameters, a fixed seven-point plane,
//! and graphic inputs validate their axioms and report precise failures.

use crate::subset::{Subset, MAX_GROUND};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum MatroidError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("flat family is not a lattice: {0}")]
    NotALattice(String),
    #[error("partition axiom fails at flat {flat}: {detail}")]
    PartitionAxiomFails { flat: String, detail: String },
    #[error("matroid has loops (the rank-0 flat is not the empty set)")]
    Loops,
    #[error("basis exchange axiom fails for {b1} and {b2} at element {x}")]
    ExchangeAxiomFails { b1: String, b2: String, x: u32 },
    #[error("dual would have loops: element {coloop} is a coloop")]
    CoLoops { coloop: u32 },
    #[error("{0} is not a flat")]
    NotAFlat(String),
}

/// A loopless matroid on {1..n}, stored as its flats grouped by rank.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    n: u32,
    rank: u32,
    /// flats_by_rank[k] lists the rank-k flats as bitmasks, sorted ascending.
    flats_by_rank: Vec<Vec<u32>>,
    /// bitmask -> rank, for every flat.
    flat_rank: HashMap<u32, u32>,
}

/// A minor (restriction or contraction) together with its relabeling.
/// New elements are 1..m; `old_of_new[i]` is the original label of i+1.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: Matroid,
    pub old_of_new: Vec<u32>,
    /// Ground-set size of the parent matroid.
    pub parent_n: u32,
}

impl Minor {
    /// Carries a subset of the minor's ground set back to original labels.
    pub fn to_old(&self, s: &Subset) -> Subset {
        let elems: Vec<u32> = s
            .elems()
            .iter()
            .map(|&e| self.old_of_new[(e - 1) as usize])
            .collect();
        Subset::from_elems(&elems, self.parent_n)
    }

    /// Carries a set of original labels into the minor, dropping labels that
    /// do not survive.
    pub fn to_new(&self, old_elems: &[u32]) -> Subset {
        let mut elems = Vec::new();
        for (i, &o) in self.old_of_new.iter().enumerate() {
            if old_elems.contains(&o) {
                elems.push(i as u32 + 1);
            }
        }
        Subset::from_elems(&elems, self.matroid.n())
    }
}

impl Matroid {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Rank-k flats, ascending bitmask order.
    pub fn flats_of_rank(&self, k: u32) -> impl Iterator<Item = Subset> + '_ {
        self.flats_by_rank[k as usize]
            .iter()
            .map(move |&b| Subset::new(b, self.n))
    }

    /// All flats, by rank then bitmask.
    pub fn flats(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..=self.rank).flat_map(move |k| self.flats_of_rank(k))
    }

    /// Proper flats: ranks 1..r-1.
    pub fn proper_flats(&self) -> Vec<Subset> {
        (1..self.rank)
            .flat_map(|k| self.flats_of_rank(k).collect::<Vec<_>>())
            .collect()
    }

    pub fn flat_count(&self) -> usize {
        self.flat_rank.len()
    }

    pub fn is_flat(&self, s: &Subset) -> bool {
        self.flat_rank.contains_key(&s.bits())
    }

    pub fn rank_of_flat(&self, s: &Subset) -> Option<u32> {
        self.flat_rank.get(&s.bits()).copied()
    }

    /// The minimal flat containing s. Scanning ranks upward finds it: two
    /// distinct flats of the same rank containing s would intersect in a
    /// lower-rank flat containing s.
    pub fn closure(&self, s: &Subset) -> Subset {
        debug_assert_eq!(s.ground_size(), self.n);
        for k in 0..=self.rank {
            for &b in &self.flats_by_rank[k as usize] {
                if s.bits() & !b == 0 {
                    return Subset::new(b, self.n);
                }
            }
        }
        unreachable!("the full ground set is a flat containing everything")
    }

    /// rank(s) = rank of the closure of s.
    pub fn rank_of(&self, s: &Subset) -> u32 {
        self.flat_rank[&self.closure(s).bits()]
    }

    /// Restriction to s, relabeled densely onto 1..|s|.
    pub fn restrict(&self, s: &Subset) -> Minor {
        let old_of_new = s.elems();
        let m = old_of_new.len() as u32;
        let pos: HashMap<u32, u32> = old_of_new
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as u32 + 1))
            .collect();
        let mut by_rank: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashMap<u32, u32> = HashMap::new();
        for f in self.flats() {
            let t = f.inter(s);
            let bits_new = t
                .elems()
                .iter()
                .fold(0u32, |acc, &o| acc | (1 << (pos[&o] - 1)));
            let rk = self.rank_of(&t);
            seen.entry(bits_new).or_insert(rk);
        }
        let rank = seen.values().copied().max().unwrap_or(0);
        by_rank.resize((rank + 1) as usize, Vec::new());
        for (&bits, &rk) in &seen {
            by_rank[rk as usize].push(bits);
        }
        for v in &mut by_rank {
            v.sort_unstable();
        }
        let matroid = Matroid {
            n: m,
            rank,
            flat_rank: seen,
            flats_by_rank: by_rank,
        };
        debug_assert!(matroid.check_invariants().is_ok());
        Minor {
            matroid,
            old_of_new,
            parent_n: self.n,
        }
    }

    /// Contraction of the closure of s, relabeled densely onto the surviving
    /// elements {1..n} minus cl(s). Contracting a non-closed set literally
    /// would create loops, which this type forbids.
    pub fn contract(&self, s: &Subset) -> Minor {
        let cl = self.closure(s);
        let base_rank = self.flat_rank[&cl.bits()];
        let old_of_new = cl.complement().elems();
        let pos: HashMap<u32, u32> = old_of_new
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as u32 + 1))
            .collect();
        let m = old_of_new.len() as u32;
        let rank = self.rank - base_rank;
        let mut by_rank: Vec<Vec<u32>> = vec![Vec::new(); (rank + 1) as usize];
        let mut flat_rank = HashMap::new();
        for f in self.flats() {
            if !cl.is_subset_of(&f) {
                continue;
            }
            let bits_new = f
                .minus(&cl)
                .elems()
                .iter()
                .fold(0u32, |acc, &o| acc | (1 << (pos[&o] - 1)));
            let rk = self.flat_rank[&f.bits()] - base_rank;
            by_rank[rk as usize].push(bits_new);
            flat_rank.insert(bits_new, rk);
        }
        for v in &mut by_rank {
            v.sort_unstable();
        }
        let matroid = Matroid {
            n: m,
            rank,
            flats_by_rank: by_rank,
            flat_rank,
        };
        debug_assert!(matroid.check_invariants().is_ok());
        Minor {
            matroid,
            old_of_new,
            parent_n: self.n,
        }
    }

    /// Dual matroid: rank*(S) = |S| + rank(complement of S) - rank. Errors if
    /// the matroid has a coloop, since the dual would then have a loop.
    pub fn dual(&self) -> Result<Matroid, MatroidError> {
        let full = self.ground();
        for e in 1..=self.n {
            let without = full.minus(&Subset::from_elems(&[e], self.n));
            if self.rank_of(&without) < self.rank {
                return Err(MatroidError::CoLoops { coloop: e });
            }
        }
        let rank_fn = |s: &Subset| -> u32 { s.card() + self.rank_of(&s.complement()) - self.rank };
        Self::from_rank_oracle(self.n, self.n - self.rank, &rank_fn)
    }

    /// Moebius function mu(bottom, top) of the lattice of flats, by the
    /// standard recursion mu(bottom, x) = -sum over flats y < x of mu(bottom, y).
    pub fn mobius(&self) -> BigInt {
        let flats: Vec<Subset> = self.flats().collect();
        let mut mu: HashMap<u32, BigInt> = HashMap::new();
        // flats() yields by ascending rank, so strict subsets come earlier.
        for f in &flats {
            let mut acc = BigInt::from(0);
            for g in &flats {
                if g.is_proper_subset_of(f) {
                    acc += &mu[&g.bits()];
                }
            }
            let val = if f.is_empty() { BigInt::one() } else { -acc };
            mu.insert(f.bits(), val);
        }
        mu[&self.ground().bits()].clone()
    }

    /// Builds and validates a matroid from an explicit flat list.
    pub fn from_flats(n: u32, flats: &[Subset]) -> Result<Matroid, MatroidError> {
        if n == 0 || n > MAX_GROUND {
            return Err(MatroidError::InvalidParameters(format!(
                "ground-set size {n} outside 1..={MAX_GROUND}"
            )));
        }
        if flats.is_empty() {
            return Err(MatroidError::InvalidParameters(
                "flat list is empty".to_string(),
            ));
        }
        let mut masks: Vec<u32> = Vec::new();
        for f in flats {
            if f.ground_size() != n {
                return Err(MatroidError::InvalidParameters(format!(
                    "flat {f} is not over ground set of size {n}"
                )));
            }
            masks.push(f.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        let full = Subset::full(n).bits();
        if !masks.contains(&full) {
            return Err(MatroidError::NotALattice(format!(
                "the ground set {} is not a flat",
                Subset::full(n)
            )));
        }
        // Closure under pairwise intersection.
        for i in 0..masks.len() {
            for j in (i + 1)..masks.len() {
                let meet = masks[i] & masks[j];
                if masks.binary_search(&meet).is_err() {
                    return Err(MatroidError::NotALattice(format!(
                        "intersection of {} and {} is {}, not a flat",
                        Subset::new(masks[i], n),
                        Subset::new(masks[j], n),
                        Subset::new(meet, n)
                    )));
                }
            }
        }
        // Looplessness: the unique minimal flat must be the empty set. The
        // meet of all flats is the minimal one (intersections are closed).
        let bottom = masks.iter().fold(full, |a, &b| a & b);
        if bottom != 0 {
            return Err(MatroidError::Loops);
        }
        if masks.binary_search(&0).is_err() {
            return Err(MatroidError::Loops);
        }
        // Rank of each flat = longest chain below it. Process by cardinality.
        let mut order = masks.clone();
        order.sort_by_key(|m| m.count_ones());
        let mut rank_map: HashMap<u32, u32> = HashMap::new();
        for &m in &order {
            let mut rk = 0;
            for (&g, &rg) in rank_map.iter() {
                if g != m && g & !m == 0 {
                    rk = rk.max(rg + 1);
                }
            }
            rank_map.insert(m, rk);
        }
        let rank = rank_map[&full];
        let mut flats_by_rank: Vec<Vec<u32>> = vec![Vec::new(); (rank + 1) as usize];
        for (&m, &rk) in &rank_map {
            flats_by_rank[rk as usize].push(m);
        }
        for v in &mut flats_by_rank {
            v.sort_unstable();
        }
        let matroid = Matroid {
            n,
            rank,
            flats_by_rank,
            flat_rank: rank_map,
        };
        matroid.check_partition_axiom()?;
        matroid.check_invariants()?;
        Ok(matroid)
    }

    /// The partition axiom: for every flat F of rank k < r, the rank-(k+1)
    /// flats containing F partition the complement of F.
    fn check_partition_axiom(&self) -> Result<(), MatroidError> {
        for k in 0..self.rank {
            for f in self.flats_of_rank(k).collect::<Vec<_>>() {
                let mut covered = 0u32;
                for g in self.flats_of_rank(k + 1) {
                    if f.is_subset_of(&g) {
                        let part = g.minus(&f).bits();
                        if covered & part != 0 {
                            return Err(MatroidError::PartitionAxiomFails {
                                flat: f.to_string(),
                                detail: format!(
                                    "rank-{} flats above it overlap outside it",
                                    k + 1
                                ),
                            });
                        }
                        covered |= part;
                    }
                }
                if covered != f.complement().bits() {
                    let missing = Subset::new(f.complement().bits() & !covered, self.n);
                    return Err(MatroidError::PartitionAxiomFails {
                        flat: f.to_string(),
                        detail: format!(
                            "elements {missing} lie in no rank-{} flat above it",
                            k + 1
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Structural sanity used by debug assertions and from_flats.
    fn check_invariants(&self) -> Result<(), MatroidError> {
        if self.flats_by_rank.first().map(|v| v.as_slice()) != Some(&[0u32][..]) {
            return Err(MatroidError::Loops);
        }
        let top = self.flats_by_rank.last().unwrap();
        if top.as_slice() != [Subset::full(self.n).bits()] {
            return Err(MatroidError::NotALattice(
                "top rank is not exactly the ground set".to_string(),
            ));
        }
        Ok(())
    }

    /// Builds a matroid from an exact rank oracle by iterating the cover
    /// partition upward from the empty flat.
    fn from_rank_oracle(
        n: u32,
        rank: u32,
        rank_fn: &dyn Fn(&Subset) -> u32,
    ) -> Result<Matroid, MatroidError> {
        // Looplessness.
        for e in 1..=n {
            if rank_fn(&Subset::from_elems(&[e], n)) == 0 {
                return Err(MatroidError::Loops);
            }
        }
        let closure = |s: &Subset| -> Subset {
            let r = rank_fn(s);
            let mut out = *s;
            for e in 1..=n {
                if !out.contains(e) && rank_fn(&out.insert(e)) == r {
                    out = out.insert(e);
                }
            }
            out
        };
        let mut flats_by_rank: Vec<Vec<u32>> = vec![vec![0u32]];
        let mut flat_rank: HashMap<u32, u32> = HashMap::new();
        flat_rank.insert(0, 0);
        for k in 0..rank {
            let mut next: Vec<u32> = Vec::new();
            for &fb in &flats_by_rank[k as usize] {
                let f = Subset::new(fb, n);
                for e in 1..=n {
                    if f.contains(e) {
                        continue;
                    }
                    let g = closure(&f.insert(e));
                    debug_assert_eq!(rank_fn(&g), k + 1);
                    if !flat_rank.contains_key(&g.bits()) {
                        flat_rank.insert(g.bits(), k + 1);
                        next.push(g.bits());
                    }
                }
            }
            next.sort_unstable();
            flats_by_rank.push(next);
        }
        let m = Matroid {
            n,
            rank,
            flats_by_rank,
            flat_rank,
        };
        m.check_invariants()?;
        debug_assert!(m.check_partition_axiom().is_ok());
        Ok(m)
    }

    /// Builds and validates a matroid from its list of bases.
    pub fn from_bases(n: u32, bases: &[Subset]) -> Result<Matroid, MatroidError> {
        if n == 0 || n > MAX_GROUND {
            return Err(MatroidError::InvalidParameters(format!(
                "ground-set size {n} outside 1..={MAX_GROUND}"
            )));
        }
        if bases.is_empty() {
            return Err(MatroidError::InvalidParameters(
                "basis list is empty".to_string(),
            ));
        }
        let r = bases[0].card();
        let mut masks: Vec<u32> = Vec::new();
        for b in bases {
            if b.ground_size() != n {
                return Err(MatroidError::InvalidParameters(format!(
                    "basis {b} is not over ground set of size {n}"
                )));
            }
            if b.card() != r {
                return Err(MatroidError::InvalidParameters(format!(
                    "bases are not equicardinal: {} vs {}",
                    bases[0], b
                )));
            }
            masks.push(b.bits());
        }
        masks.sort_unstable();
        masks.dedup();
        // Exchange axiom, verified pairwise.
        for &b1 in &masks {
            for &b2 in &masks {
                if b1 == b2 {
                    continue;
                }
                let mut xs = b1 & !b2;
                while xs != 0 {
                    let x = xs.trailing_zeros();
                    xs &= xs - 1;
                    let mut ok = false;
                    let mut ys = b2 & !b1;
                    while ys != 0 {
                        let y = ys.trailing_zeros();
                        ys &= ys - 1;
                        let cand = (b1 & !(1 << x)) | (1 << y);
                        if masks.binary_search(&cand).is_ok() {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        return Err(MatroidError::ExchangeAxiomFails {
                            b1: Subset::new(b1, n).to_string(),
                            b2: Subset::new(b2, n).to_string(),
                            x: x + 1,
                        });
                    }
                }
            }
        }
        let rank_fn = |s: &Subset| -> u32 {
            masks
                .iter()
                .map(|&b| (b & s.bits()).count_ones())
                .max()
                .unwrap()
        };
        Self::from_rank_oracle(n, r, &rank_fn)
    }

    /// Uniform matroid U(r,n): every set of size at most r is independent.
    pub fn uniform(r: u32, n: u32) -> Result<Matroid, MatroidError> {
        if n == 0 || n > MAX_GROUND || r == 0 || r > n {
            return Err(MatroidError::InvalidParameters(format!(
                "uniform({r},{n}) needs 1 <= r <= n <= {MAX_GROUND}"
            )));
        }
        let mut flats_by_rank: Vec<Vec<u32>> = vec![Vec::new(); (r + 1) as usize];
        let mut flat_rank = HashMap::new();
        for s in Subset::all(n) {
            let k = if s.card() < r { s.card() } else if s.is_full() { r } else { continue };
            flats_by_rank[k as usize].push(s.bits());
            flat_rank.insert(s.bits(), k);
        }
        for v in &mut flats_by_rank {
            v.sort_unstable();
        }
        Ok(Matroid {
            n,
            rank: r,
            flats_by_rank,
            flat_rank,
        })
    }

    /// Boolean (free) matroid: every subset is independent and a flat.
    pub fn boolean(n: u32) -> Result<Matroid, MatroidError> {
        Self::uniform(n, n)
    }

    /// The seven-point projective plane: rank 3 on {1..7} with lines
    /// 123, 145, 167, 246, 257, 347, 356.
    pub fn fano() -> Matroid {
        let n = 7;
        let lines: [&[u32]; 7] = [
            &[1, 2, 3],
            &[1, 4, 5],
            &[1, 6, 7],
            &[2, 4, 6],
            &[2, 5, 7],
            &[3, 4, 7],
            &[3, 5, 6],
        ];
        let mut flats: Vec<Subset> = vec![Subset::empty(n), Subset::full(n)];
        for e in 1..=n {
            flats.push(Subset::from_elems(&[e], n));
        }
        for l in lines {
            flats.push(Subset::from_elems(l, n));
        }
        Self::from_flats(n, &flats).expect("fixed plane is a valid matroid")
    }

    /// A rank-3 matroid on {1..7} whose filtered lattice disconnects under
    /// the weight (1,1,-3,-3,-3,1,1) at t = 0: the atoms plus eleven lines.
    /// Its restriction to the positive part is {1},{2},{6},{7},{1,2},{6,7}.
    pub fn disconnection_example() -> Matroid {
        let n = 7;
        let lines: [&[u32]; 11] = [
            &[1, 2],
            &[6, 7],
            &[1, 3, 6],
            &[1, 4, 7],
            &[2, 4, 6],
            &[2, 5, 7],
            &[3, 4, 5],
            &[1, 5],
            &[2, 3],
            &[3, 7],
            &[5, 6],
        ];
        let mut flats: Vec<Subset> = vec![Subset::empty(n), Subset::full(n)];
        for e in 1..=n {
            flats.push(Subset::from_elems(&[e], n));
        }
        for l in lines {
            flats.push(Subset::from_elems(l, n));
        }
        Self::from_flats(n, &flats).expect("completed line set is a valid matroid")
    }

    /// The under-specified variant of the disconnection example: only seven
    /// of its eleven lines. Feeding this to from_flats must fail the
    /// partition axiom; kept as a fixture for that validation path.
    pub fn disconnection_example_incomplete_flats() -> Vec<Subset> {
        let n = 7;
        let lines: [&[u32]; 7] = [
            &[1, 2],
            &[6, 7],
            &[1, 3, 6],
            &[1, 4, 7],
            &[2, 4, 6],
            &[2, 5, 7],
            &[3, 4, 5],
        ];
        let mut flats: Vec<Subset> = vec![Subset::empty(n), Subset::full(n)];
        for e in 1..=n {
            flats.push(Subset::from_elems(&[e], n));
        }
        for l in lines {
            flats.push(Subset::from_elems(l, n));
        }
        flats
    }

    /// Graphic matroid of a loopless multigraph. Edges are numbered 1..m in
    /// input order; vertices are arbitrary nonnegative labels.
    pub fn graphic(edges: &[(u32, u32)]) -> Result<Matroid, MatroidError> {
        let m = edges.len() as u32;
        if m == 0 || m > MAX_GROUND {
            return Err(MatroidError::InvalidParameters(format!(
                "edge count {m} outside 1..={MAX_GROUND}"
            )));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(MatroidError::InvalidParameters(format!(
                    "edge {} is a self-loop at vertex {u}",
                    i + 1
                )));
            }
        }
        let mut verts: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let vidx: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nv = verts.len();
        // rank(S) = nv(S) - components(S), via union-find over selected edges.
        let rank_fn = |s: &Subset| -> u32 {
            let mut parent: Vec<usize> = (0..nv).collect();
            fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut rank = 0u32;
            for e in s.elems() {
                let (u, v) = edges[(e - 1) as usize];
                let (ru, rv) = (find(&mut parent, vidx[&u]), find(&mut parent, vidx[&v]));
                if ru != rv {
                    parent[ru] = rv;
                    rank += 1;
                }
            }
            rank
        };
        let total_rank = rank_fn(&Subset::full(m));
        Self::from_rank_oracle(m, total_rank, &rank_fn)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, rank={}, flats={})", self.n, self.rank, self.flat_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: u32, lists: &[&[u32]]) -> Vec<Subset> {
        lists.iter().map(|l| Subset::from_elems(l, n)).collect()
    }

    #[test]
    fn u23_from_flats() {
        let flats = subsets(3, &[&[], &[1], &[2], &[3], &[1, 2, 3]]);
        let m = Matroid::from_flats(3, &flats).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.flats_of_rank(1).count(), 3);
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
    }

    #[test]
    fn from_flats_errors() {
        // {1,2} and {2,3} intersect in {2}, which is missing: not a lattice.
        let flats = subsets(3, &[&[], &[1, 2], &[2, 3], &[1, 2, 3]]);
        assert!(matches!(
            Matroid::from_flats(3, &flats),
            Err(MatroidError::NotALattice(_))
        ));
        // Minimal flat {1} nonempty: loops.
        let flats = subsets(2, &[&[1], &[1, 2]]);
        assert!(matches!(
            Matroid::from_flats(2, &flats),
            Err(MatroidError::Loops)
        ));
        // Missing top.
        let flats = subsets(2, &[&[], &[1], &[2]]);
        assert!(matches!(
            Matroid::from_flats(2, &flats),
            Err(MatroidError::NotALattice(_))
        ));
        // Atoms {1} and {2,3} cover only part of the complement of the
        // empty flat unless {2,3} exists; here {2} alone leaves 3 uncovered.
        let flats = subsets(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        assert!(matches!(
            Matroid::from_flats(3, &flats),
            Err(MatroidError::PartitionAxiomFails { .. })
        ));
    }

    #[test]
    fn fano_shape() {
        let m = Matroid::fano();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.flats_of_rank(1).count(), 7);
        assert_eq!(m.flats_of_rank(2).count(), 7);
        // closure({1,2}) = {1,2,3}; closure of a flat is itself.
        assert_eq!(
            m.closure(&Subset::from_elems(&[1, 2], 7)),
            Subset::from_elems(&[1, 2, 3], 7)
        );
        let line = Subset::from_elems(&[2, 5, 7], 7);
        assert_eq!(m.closure(&line), line);
        // {1,2,4} is a basis.
        assert_eq!(m.rank_of(&Subset::from_elems(&[1, 2, 4], 7)), 3);
    }

    #[test]
    fn uniform_and_boolean() {
        let m = Matroid::uniform(3, 4).unwrap();
        assert_eq!(m.rank(), 3);
        // Rank-2 flats of U(3,4): the six 2-subsets of {1..4}.
        assert_eq!(m.flats_of_rank(2).count(), 6);
        let b = Matroid::boolean(3).unwrap();
        assert_eq!(b.flat_count(), 8);
        assert!(Matroid::uniform(0, 3).is_err());
        assert!(Matroid::uniform(4, 3).is_err());
    }

    #[test]
    fn from_bases_examples() {
        let u34 = Matroid::from_bases(
            4,
            &subsets(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]),
        )
        .unwrap();
        assert_eq!(u34, Matroid::uniform(3, 4).unwrap());
        let u23 = Matroid::from_bases(3, &subsets(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
        assert_eq!(u23, Matroid::uniform(2, 3).unwrap());
        let u12 = Matroid::from_bases(2, &subsets(2, &[&[1], &[2]])).unwrap();
        assert_eq!(u12, Matroid::uniform(1, 2).unwrap());
        // {1,2} and {3,4} violate exchange (swapping creates non-bases).
        assert!(matches!(
            Matroid::from_bases(4, &subsets(4, &[&[1, 2], &[3, 4]])),
            Err(MatroidError::ExchangeAxiomFails { .. })
        ));
        // Element 3 in no basis: a loop.
        assert!(matches!(
            Matroid::from_bases(3, &subsets(3, &[&[1, 2]])),
            Err(MatroidError::Loops)
        ));
    }

    #[test]
    fn graphic_k4() {
        // K4 on vertices 1..4; edges 1=12, 2=13, 3=14, 4=23, 5=24, 6=34.
        let k4 = Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(k4.rank(), 3);
        assert_eq!(k4.n(), 6);
        // Lines: 4 triangles plus 3 perfect matchings.
        assert_eq!(k4.flats_of_rank(2).count(), 7);
        let triangles = k4
            .flats_of_rank(2)
            .filter(|f| f.card() == 3)
            .count();
        assert_eq!(triangles, 4);
        assert!(Matroid::graphic(&[(1, 1)]).is_err());
    }

    #[test]
    fn minors() {
        let fano = Matroid::fano();
        let c = fano.contract(&Subset::from_elems(&[1], 7));
        assert_eq!(c.matroid.rank(), 2);
        assert_eq!(c.matroid.n(), 6);
        let r = fano.restrict(&Subset::from_elems(&[1, 2, 3], 7));
        assert_eq!(r.matroid.rank(), 2);
        assert_eq!(r.matroid.n(), 3);
        assert_eq!(r.matroid, Matroid::uniform(2, 3).unwrap());
        // Rank identities through the relabeling.
        let s = Subset::from_elems(&[2, 4], 7);
        let t = r.to_new(&[2, 3]);
        assert_eq!(r.matroid.rank_of(&t), fano.rank_of(&Subset::from_elems(&[2, 3], 7)));
        let u = c.to_new(&s.elems());
        assert_eq!(
            c.matroid.rank_of(&u),
            fano.rank_of(&s.union(&Subset::from_elems(&[1], 7))) - 1
        );
    }

    #[test]
    fn duality() {
        let u34 = Matroid::uniform(3, 4).unwrap();
        let d = u34.dual().unwrap();
        assert_eq!(d, Matroid::uniform(1, 4).unwrap());
        assert_eq!(d.dual().unwrap(), u34);
        // Boolean matroids are all coloops.
        assert!(matches!(
            Matroid::boolean(3).unwrap().dual(),
            Err(MatroidError::CoLoops { .. })
        ));
        let fano = Matroid::fano();
        assert_eq!(fano.dual().unwrap().rank(), 4);
        assert_eq!(fano.dual().unwrap().dual().unwrap(), fano);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().mobius(), BigInt::from(2));
        for n in 1..=6u32 {
            let expect = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(Matroid::boolean(n).unwrap().mobius(), BigInt::from(expect));
        }
        assert_eq!(Matroid::fano().mobius(), BigInt::from(-8));
        let k4 = Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(k4.mobius(), BigInt::from(-6));
    }

    #[test]
    fn disconnection_example_shape() {
        let m = Matroid::disconnection_example();
        assert_eq!(m.n(), 7);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.proper_flats().len(), 18);
        assert_eq!(m.flats_of_rank(1).count(), 7);
        assert_eq!(m.flats_of_rank(2).count(), 11);
        assert_eq!(
            m.closure(&Subset::from_elems(&[3, 4], 7)),
            Subset::from_elems(&[3, 4, 5], 7)
        );
        assert_eq!(
            m.closure(&Subset::from_elems(&[1, 5], 7)),
            Subset::from_elems(&[1, 5], 7)
        );

        let incomplete = Matroid::disconnection_example_incomplete_flats();
        assert_eq!(incomplete.len(), 16);
        match Matroid::from_flats(7, &incomplete) {
            Err(MatroidError::PartitionAxiomFails { .. }) => {}
            other => panic!("expected partition axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn closure_operator_laws() {
        let m = Matroid::uniform(3, 5).unwrap();
        for s in Subset::all(5) {
            let c = m.closure(&s);
            assert!(s.is_subset_of(&c));
            assert_eq!(m.closure(&c), c);
            for t in Subset::all(5) {
                if s.is_subset_of(&t) {
                    assert!(m.closure(&s).is_subset_of(&m.closure(&t)));
                }
            }
        }
    }
}
