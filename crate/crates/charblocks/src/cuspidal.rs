//! Cuspidal-datum bookkeeping: the classification data file, cuspidal labels
//! of pseudo-Levis, the set of cuspidal data of a group up to conjugacy,
//! relative Weyl groups, and the generalized-Springer counting identity.
//!
//! Type-A factors are handled by exact lattice arithmetic: the component
//! groups of nilpotent centralizers in a reductive group of type A are
//! quotients of the centre's image, so every count reduces to finite-abelian
//! quotients of coweight classes (Smith normal form). This covers non-split
//! centre configurations (e.g. the rank-two Levi of SL4 whose two A1 factors
//! are glued through the centre) that no per-factor table key can represent.
//! Non-A factors (B2/C2, G2) come from the shipped classification table and
//! require the configuration to split off, which is verified at runtime.

use crate::affweyl::{self, RelativeQuotient};
use crate::num::*;
use crate::rootdata::{
    simple_type_decomposition, CartanType, Decomposition, FiniteGroup, RootDatum, SimpleFactor,
};
use crate::{Error, Result};
use num::{Integer, One, Zero};
use serde::Deserialize;

// ---------------------------------------------------------------------------
// Classification table
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Deserialize)]
pub struct OrbitRecord {
    pub label: String,
    /// Order of the equivariant fundamental group of the orbit.
    pub component_order: u64,
    /// Number of irreducible equivariant local systems on the orbit.
    pub local_systems: u64,
    /// Labels of the cuspidal local systems among them.
    #[serde(default)]
    pub cuspidal: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TableEntry {
    pub cartan: String,
    pub rank: usize,
    pub lattice_key: String,
    pub provenance: String,
    pub total_pairs: u64,
    #[serde(rename = "orbit")]
    pub orbits: Vec<OrbitRecord>,
}

#[derive(Clone, Debug, Deserialize)]
struct TableFile {
    format: u32,
    #[serde(rename = "entry")]
    entries: Vec<TableEntry>,
}

#[derive(Clone, Debug)]
pub struct ClassificationTable {
    pub entries: Vec<TableEntry>,
}

impl ClassificationTable {
    pub fn from_toml(text: &str) -> Result<Self> {
        let f: TableFile =
            toml::from_str(text).map_err(|e| Error::Parse(format!("classification table: {e}")))?;
        if f.format != 1 {
            return Err(Error::Parse(format!("unsupported table format {}", f.format)));
        }
        // Internal consistency: per-entry local-system totals.
        for e in &f.entries {
            let total: u64 = e.orbits.iter().map(|o| o.local_systems).sum();
            if total != e.total_pairs {
                return Err(Error::Parse(format!(
                    "table entry {} {} [{}]: local systems sum to {total}, expected {}",
                    e.cartan, e.rank, e.lattice_key, e.total_pairs
                )));
            }
        }
        Ok(ClassificationTable { entries: f.entries })
    }

    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        ClassificationTable::from_toml(include_str!("../data/cuspidal.toml"))
            .expect("shipped classification table parses")
    }

    pub fn lookup(&self, cartan: &CartanType, rank: usize, key: &str) -> Option<&TableEntry> {
        let cs = cartan.to_string();
        self.entries
            .iter()
            .find(|e| e.cartan == cs && e.rank == rank && e.lattice_key == key)
    }

    fn lookup_or_err(&self, f: &SimpleFactor) -> Result<&TableEntry> {
        self.lookup(&f.cartan, f.rank, &f.lattice_key()).ok_or_else(|| {
            Error::DataAbsent(format!(
                "type {} rank {} key {}",
                f.cartan,
                f.rank,
                f.lattice_key()
            ))
        })
    }
}

// ---------------------------------------------------------------------------
// Cuspidal labels
// ---------------------------------------------------------------------------

/// Label of a cuspidal pair on the nilpotent cone of a pseudo-Levi, canonical
/// per decomposition and fixed by the normalizer action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalLabel(pub String);

impl std::fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub const TRIVIAL_LABEL: &str = "triv";

// ---------------------------------------------------------------------------
// Type-A joint engine
// ---------------------------------------------------------------------------

/// The joint centre-image data of the type-A factors of a decomposition:
/// a finite abelian group with one tracked generator class per factor.
struct TypeAJoint {
    /// Invariant factors of the group (each > 1).
    invariants: Vec<Int>,
    /// Class coordinates of each factor's generating coweight.
    generator_classes: Vec<IVec>,
    /// k_f = rank_f + 1 per factor.
    factor_sizes: Vec<usize>,
}

/// Quotient data for the centre images: everything is computed in the
/// quotient of the apartment by the central directions of the subset.
fn centre_image_quotient(
    rd: &RootDatum,
    subset: &[usize],
    coweight_gens: &[QVec],
) -> (FiniteQuotient, Vec<QVec>) {
    // Functionals cutting out the central directions: all roots of the subset.
    let rows: Vec<QVec> = subset.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
    let c = QMat::from_rows(&rows);
    let xstar_img: Vec<QVec> =
        Lattice::standard(rd.rank).basis.iter().map(|e| c.mul_qvec(e)).collect();
    let gen_img: Vec<QVec> = coweight_gens.iter().map(|w| c.mul_qvec(w)).collect();
    let mut big_gens = xstar_img.clone();
    big_gens.extend(gen_img.iter().cloned());
    let big = Lattice::from_generators(c.rows, &big_gens);
    (FiniteQuotient::new(&big, &xstar_img), gen_img)
}

fn type_a_joint(rd: &RootDatum, factors: &[&SimpleFactor], subset: &[usize]) -> TypeAJoint {
    if factors.is_empty() {
        return TypeAJoint { invariants: vec![], generator_classes: vec![], factor_sizes: vec![] };
    }
    let gens: Vec<QVec> = factors.iter().map(|f| f.coweights[0].clone()).collect();
    let (q, gen_img) = centre_image_quotient(rd, subset, &gens);
    let generator_classes: Vec<IVec> = gen_img.iter().map(|g| q.class_of(g)).collect();
    TypeAJoint {
        invariants: q.invariants.clone(),
        generator_classes,
        factor_sizes: factors.iter().map(|f| f.rank + 1).collect(),
    }
}

/// |A_M(e)| for the orbit tuple with per-factor part gcds `gcds`: quotient of
/// the joint group by the subgroup generated by g_f times each generator.
fn orbit_component_order(joint: &TypeAJoint, gcds: &[Int]) -> Int {
    let m = joint.invariants.len();
    if m == 0 {
        return Int::one();
    }
    let mut cols: Vec<IVec> = Vec::new();
    for i in 0..m {
        let mut v = vec![Int::zero(); m];
        v[i] = joint.invariants[i].clone();
        cols.push(v);
    }
    for (g, cls) in gcds.iter().zip(&joint.generator_classes) {
        cols.push(cls.iter().map(|c| g * c).collect());
    }
    let (d, _l, _r) = snf(&IMat::from_cols(&cols));
    let mut order = Int::one();
    for di in &d {
        assert!(!di.is_zero());
        order *= di;
    }
    order
}

/// Characters of the joint group whose value on each factor generator has
/// order exactly k_f; these index the cuspidal pairs.
fn joint_cuspidal_indices(joint: &TypeAJoint) -> Vec<Vec<Int>> {
    let m = joint.invariants.len();
    let mut out = Vec::new();
    let mut c = vec![Int::zero(); m];
    loop {
        let mut ok = !joint.factor_sizes.is_empty();
        for (f, cls) in joint.generator_classes.iter().enumerate() {
            let mut phase = Rat::zero();
            for i in 0..m {
                phase += rat_of(&(&c[i] * &cls[i])) / rat_of(&joint.invariants[i]);
            }
            let frac = &phase - phase.floor();
            let order = frac.denom().clone();
            if order != int(joint.factor_sizes[f] as i64) {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(c.clone());
        }
        // Odometer over character coordinates.
        let mut pos = 0;
        loop {
            if pos == m {
                out.sort();
                return out;
            }
            c[pos] += 1;
            if c[pos] < joint.invariants[pos] {
                break;
            }
            c[pos] = Int::zero();
            pos += 1;
        }
    }
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn gcd_of_partition(p: &[usize]) -> Int {
    let mut g = Int::zero();
    for &x in p {
        g = g.gcd(&int(x as i64));
    }
    g
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Splitness check for mixed configurations: the joint centre-image group of
/// all factors must have order equal to the product of the per-factor escape
/// orders. True exactly when the lattice glues nothing across factors.
fn check_split(rd: &RootDatum, dec: &Decomposition) -> Result<bool> {
    if dec.factors.len() <= 1 {
        return Ok(true);
    }
    let gens: Vec<QVec> = dec.factors.iter().map(|f| f.coweights[0].clone()).collect();
    let (q, _) = centre_image_quotient(rd, &dec.subset, &gens);
    let mut product = Int::one();
    for f in &dec.factors {
        product *= &f.escape_order;
    }
    Ok(q.order() == product)
}

/// Cuspidal labels of the pseudo-Levi described by a decomposition: the set
/// of isomorphism classes of cuspidal pairs on its nilpotent cone. A torus
/// contributes exactly the trivial label.
pub fn cuspidal_set(
    rd: &RootDatum,
    dec: &Decomposition,
    table: &ClassificationTable,
) -> Result<Vec<CuspidalLabel>> {
    if dec.factors.is_empty() {
        return Ok(vec![CuspidalLabel(TRIVIAL_LABEL.into())]);
    }
    let a_factors: Vec<&SimpleFactor> =
        dec.factors.iter().filter(|f| matches!(f.cartan, CartanType::A(_))).collect();
    let other: Vec<&SimpleFactor> =
        dec.factors.iter().filter(|f| !matches!(f.cartan, CartanType::A(_))).collect();
    if !other.is_empty() && !check_split(rd, dec)? {
        return Err(Error::DataAbsent(format!(
            "non-split centre configuration with a non-A factor in {}",
            dec.type_string()
        )));
    }
    let mut parts: Vec<Vec<String>> = Vec::new();
    if !a_factors.is_empty() {
        let joint = type_a_joint(rd, &a_factors, &dec.subset);
        let labels: Vec<String> = joint_cuspidal_indices(&joint)
            .iter()
            .enumerate()
            .map(|(i, _)| format!("a.c{i}"))
            .collect();
        if labels.is_empty() {
            return Ok(Vec::new());
        }
        parts.push(labels);
    }
    for f in &other {
        let entry = table.lookup_or_err(f)?;
        let labels: Vec<String> = entry
            .orbits
            .iter()
            .flat_map(|o| o.cuspidal.iter().map(move |c| format!("{}.{}", o.label, c)))
            .collect();
        if labels.is_empty() {
            return Ok(Vec::new());
        }
        parts.push(labels);
    }
    let mut acc: Vec<String> = vec![String::new()];
    for p in parts {
        let mut next = Vec::new();
        for prefix in &acc {
            for l in &p {
                next.push(if prefix.is_empty() { l.clone() } else { format!("{prefix}|{l}") });
            }
        }
        acc = next;
    }
    acc.sort();
    Ok(acc.into_iter().map(CuspidalLabel).collect())
}

/// Number of pairs (orbit, equivariant local system) on the nilpotent cone
/// of the pseudo-Levi described by the decomposition.
pub fn nilpotent_pair_count(
    rd: &RootDatum,
    dec: &Decomposition,
    table: &ClassificationTable,
) -> Result<Int> {
    if dec.factors.is_empty() {
        return Ok(Int::one());
    }
    let a_factors: Vec<&SimpleFactor> =
        dec.factors.iter().filter(|f| matches!(f.cartan, CartanType::A(_))).collect();
    let other: Vec<&SimpleFactor> =
        dec.factors.iter().filter(|f| !matches!(f.cartan, CartanType::A(_))).collect();
    if !other.is_empty() && !check_split(rd, dec)? {
        return Err(Error::DataAbsent(format!(
            "non-split centre configuration with a non-A factor in {}",
            dec.type_string()
        )));
    }
    let mut total = Int::one();
    if !a_factors.is_empty() {
        let joint = type_a_joint(rd, &a_factors, &dec.subset);
        let partition_lists: Vec<Vec<Vec<usize>>> =
            a_factors.iter().map(|f| partitions(f.rank + 1)).collect();
        let mut sum = Int::zero();
        let mut idx = vec![0usize; a_factors.len()];
        'outer: loop {
            let gcds: Vec<Int> = idx
                .iter()
                .zip(&partition_lists)
                .map(|(&i, pl)| gcd_of_partition(&pl[i]))
                .collect();
            sum += orbit_component_order(&joint, &gcds);
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break 'outer;
                }
                idx[pos] += 1;
                if idx[pos] < partition_lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
        total *= sum;
    }
    for f in &other {
        let entry = table.lookup_or_err(f)?;
        let pairs: u64 = entry.orbits.iter().map(|o| o.local_systems).sum();
        total *= int(pairs as i64);
    }
    Ok(total)
}

/// A cuspidal datum: a standard Levi up to conjugacy with a cuspidal label
/// on its nilpotent cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalDatum {
    /// Defining subset of simple-root indices (canonical class representative).
    pub levi_subset: Vec<usize>,
    /// All root indices of the Levi subsystem.
    pub levi_roots: Vec<usize>,
    pub label: CuspidalLabel,
    /// Dimension of the centre of the Levi.
    pub z_dim: usize,
}

impl CuspidalDatum {
    pub fn key(&self) -> (Vec<usize>, String) {
        (self.levi_subset.clone(), self.label.0.clone())
    }
}

/// Conjugacy classes of subsets of the simple roots: canonical representative
/// is the first subset (in mask order) of each class of generated subsystems.
pub fn levi_subset_classes(rd: &RootDatum, weyl: &FiniteGroup) -> Vec<Vec<usize>> {
    let simples = rd.simple.clone();
    let n = simples.len();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 0..(1usize << n) {
        subsets.push((0..n).filter(|k| mask & (1 << k) != 0).map(|k| simples[k]).collect());
    }
    let root_sets: Vec<std::collections::BTreeSet<usize>> = subsets
        .iter()
        .map(|s| {
            if s.is_empty() {
                return std::collections::BTreeSet::new();
            }
            let span: Vec<QVec> = s.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
            let m = QMat::from_cols(&span);
            (0..rd.num_roots())
                .filter(|&i| m.solve(&ivec_to_q(&rd.roots[i])).is_some())
                .collect()
        })
        .collect();
    let perms: Vec<Vec<usize>> = weyl
        .elements
        .iter()
        .map(|w| rd.root_permutation(w).expect("Weyl permutes roots"))
        .collect();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<bool> = vec![false; subsets.len()];
    for i in 0..subsets.len() {
        if seen[i] {
            continue;
        }
        reps.push(subsets[i].clone());
        for j in i..subsets.len() {
            if seen[j] {
                continue;
            }
            let conj = perms.iter().any(|p| {
                let image: std::collections::BTreeSet<usize> =
                    root_sets[i].iter().map(|&r| p[r]).collect();
                image == root_sets[j]
            });
            if conj {
                seen[j] = true;
            }
        }
    }
    reps
}

/// The set of cuspidal data of rd, one entry per conjugacy class of
/// (Levi, cuspidal label).
pub fn cuspidal_data_of_g(
    rd: &RootDatum,
    weyl: &FiniteGroup,
    table: &ClassificationTable,
) -> Result<Vec<CuspidalDatum>> {
    let mut out = Vec::new();
    for subset in levi_subset_classes(rd, weyl) {
        let roots: Vec<usize> = if subset.is_empty() {
            Vec::new()
        } else {
            let span: Vec<QVec> = subset.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
            let m = QMat::from_cols(&span);
            (0..rd.num_roots())
                .filter(|&i| m.solve(&ivec_to_q(&rd.roots[i])).is_some())
                .collect()
        };
        let dec = simple_type_decomposition(rd, &roots)?;
        let z_dim = dec.central_rank;
        for label in cuspidal_set(rd, &dec, table)? {
            out.push(CuspidalDatum {
                levi_subset: subset.clone(),
                levi_roots: roots.clone(),
                label,
                z_dim,
            });
        }
    }
    out.sort_by_key(|d| d.key());
    Ok(out)
}

/// Relative Weyl group of a cuspidal datum: N_W(W_M)/W_M with its faithful
/// action on the centre directions of M.
pub fn relative_weyl(
    rd: &RootDatum,
    weyl: &FiniteGroup,
    kappa: &CuspidalDatum,
) -> Result<RelativeQuotient> {
    affweyl::normalizer_parabolic(rd, weyl, &kappa.levi_roots)
}

/// Root datum of a reflection-closed subsystem on the same lattice
/// (a pseudo-Levi).
pub fn sub_datum(rd: &RootDatum, root_subset: &[usize]) -> Result<RootDatum> {
    let simples = crate::rootdata::simple_system(rd, root_subset);
    Ok(RootDatum {
        rank: rd.rank,
        roots: root_subset.iter().map(|&i| rd.roots[i].clone()).collect(),
        coroots: root_subset.iter().map(|&i| rd.coroots[i].clone()).collect(),
        simple: simples
            .iter()
            .map(|s| root_subset.iter().position(|r| r == s).unwrap())
            .collect(),
        name: format!("{}|sub", rd.name),
    })
}

#[derive(Clone, Debug)]
pub struct SpringerReport {
    /// Per cuspidal datum: (description, #Irr of the relative Weyl group).
    pub rows: Vec<(String, Int)>,
    /// Sum over cuspidal data of #Irr(W^kappa).
    pub lhs: Int,
    /// Number of pairs (O, L) on the nilpotent cone.
    pub rhs: Int,
    pub pass: bool,
}

/// The generalized Springer counting identity:
/// sum over cuspidal data of #Irr(W^kappa) = #{(O, L)} on the nilpotent cone.
pub fn springer_identity_check(
    rd: &RootDatum,
    weyl: &FiniteGroup,
    table: &ClassificationTable,
) -> Result<SpringerReport> {
    let data = cuspidal_data_of_g(rd, weyl, table)?;
    let mut rows = Vec::new();
    let mut lhs = Int::zero();
    for kappa in &data {
        let rq = relative_weyl(rd, weyl, kappa)?;
        let irr = int(rq.group.classes.len() as i64);
        rows.push((format!("M={:?} F={}", kappa.levi_subset, kappa.label), irr.clone()));
        lhs += irr;
    }
    let all: Vec<usize> = (0..rd.num_roots()).collect();
    let dec = simple_type_decomposition(rd, &all)?;
    let rhs = nilpotent_pair_count(rd, &dec, table)?;
    let pass = lhs == rhs;
    Ok(SpringerReport { rows, lhs, rhs, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{preset, weyl_group};

    fn dec_of_all(rd: &RootDatum) -> Decomposition {
        simple_type_decomposition(rd, &(0..rd.num_roots()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn table_parses_and_is_consistent() {
        let t = ClassificationTable::builtin();
        assert!(t.lookup(&CartanType::A(1), 1, "2").is_some());
        assert!(t.lookup(&CartanType::B2, 2, "1").is_some());
        assert!(t.lookup(&CartanType::G2, 2, "1").is_some());
    }

    #[test]
    fn cuspidal_counts_match_table_for_standalone_types() {
        let table = ClassificationTable::builtin();
        for (name, expect_cusp, expect_pairs) in [
            ("A1 sc", 1i64, 3i64),
            ("A1 ad", 0, 2),
            ("A2 sc", 2, 5),
            ("A2 ad", 0, 3),
            ("A3 sc", 2, 9),
            ("A3 semi", 0, 7),
            ("A3 ad", 0, 5),
            ("GL(2)", 0, 2),
            ("GL(3)", 0, 3),
        ] {
            let rd = preset(name).unwrap();
            let dec = dec_of_all(&rd);
            let cusp = cuspidal_set(&rd, &dec, &table).unwrap();
            assert_eq!(cusp.len() as i64, expect_cusp, "{name} cuspidals");
            let pairs = nilpotent_pair_count(&rd, &dec, &table).unwrap();
            assert_eq!(pairs, int(expect_pairs), "{name} pairs");
            // Cross-check the engine against the shipped type-A rows.
            if dec.factors.len() == 1 {
                if let Some(entry) = table.lookup(
                    &dec.factors[0].cartan,
                    dec.factors[0].rank,
                    &dec.factors[0].lattice_key(),
                ) {
                    let tcusp: usize = entry.orbits.iter().map(|o| o.cuspidal.len()).sum();
                    assert_eq!(tcusp as i64, expect_cusp, "{name} table cuspidals");
                    let tpairs: u64 = entry.orbits.iter().map(|o| o.local_systems).sum();
                    assert_eq!(int(tpairs as i64), int(expect_pairs), "{name} table pairs");
                }
            }
        }
    }

    #[test]
    fn torus_has_unique_label() {
        let table = ClassificationTable::builtin();
        let gl1 = preset("GL(1)").unwrap();
        let dec = simple_type_decomposition(&gl1, &[]).unwrap();
        let cusp = cuspidal_set(&gl1, &dec, &table).unwrap();
        assert_eq!(cusp, vec![CuspidalLabel(TRIVIAL_LABEL.into())]);
    }

    #[test]
    fn product_rule() {
        let table = ClassificationTable::builtin();
        let prod = preset("A1 sc x A1 sc").unwrap();
        let dec = dec_of_all(&prod);
        assert_eq!(cuspidal_set(&prod, &dec, &table).unwrap().len(), 1);
        assert_eq!(nilpotent_pair_count(&prod, &dec, &table).unwrap(), int(9));
    }

    #[test]
    fn glued_levi_of_sl4_has_one_cuspidal() {
        // The Levi of SL4 with two A1 factors glued through the centre: its
        // joint component group is Z/2 and it carries exactly one cuspidal.
        let table = ClassificationTable::builtin();
        let a3 = preset("A3 sc").unwrap();
        let s0 = a3.simple[0];
        let s2 = a3.simple[2];
        let span: Vec<QVec> = vec![ivec_to_q(&a3.roots[s0]), ivec_to_q(&a3.roots[s2])];
        let m = QMat::from_cols(&span);
        let roots: Vec<usize> = (0..a3.num_roots())
            .filter(|&i| m.solve(&ivec_to_q(&a3.roots[i])).is_some())
            .collect();
        assert_eq!(roots.len(), 4);
        let dec = simple_type_decomposition(&a3, &roots).unwrap();
        assert_eq!(dec.factors.len(), 2);
        // Each factor's solo pseudo-Levi is GL2-like (its mu_2 escapes into
        // the big torus), yet the joint centre image is Z/2.
        assert!(dec.factors.iter().all(|f| f.escape_order == int(1)));
        let cusp = cuspidal_set(&a3, &dec, &table).unwrap();
        assert_eq!(cusp.len(), 1);
        // Pair count on its cone: 2 + 1 + 1 + 1 = 5, not the split 9.
        assert_eq!(nilpotent_pair_count(&a3, &dec, &table).unwrap(), int(5));
    }

    #[test]
    fn cuspidal_data_examples() {
        let table = ClassificationTable::builtin();
        for (name, expect) in [
            ("GL(1)", 1usize),
            ("GL(3)", 1),
            ("A1 sc", 2),
            ("A1 ad", 1),
            ("A2 sc", 3),
            ("A2 ad", 1),
            ("B2 sc", 2),
            ("B2 ad", 1),
            ("G2", 2),
            ("A3 sc", 4),
        ] {
            let rd = preset(name).unwrap();
            let w = weyl_group(&rd).unwrap();
            let data = cuspidal_data_of_g(&rd, &w, &table).unwrap();
            assert_eq!(data.len(), expect, "{name}");
        }
    }

    #[test]
    fn relative_weyl_examples() {
        let table = ClassificationTable::builtin();
        let a1 = preset("A1 sc").unwrap();
        let w = weyl_group(&a1).unwrap();
        let data = cuspidal_data_of_g(&a1, &w, &table).unwrap();
        let principal = data.iter().find(|d| d.levi_subset.is_empty()).unwrap();
        assert_eq!(relative_weyl(&a1, &w, principal).unwrap().group.order(), 2);
        let full = data.iter().find(|d| !d.levi_subset.is_empty()).unwrap();
        assert_eq!(relative_weyl(&a1, &w, full).unwrap().group.order(), 1);
        let a2 = preset("A2 sc").unwrap();
        let w2 = weyl_group(&a2).unwrap();
        let data2 = cuspidal_data_of_g(&a2, &w2, &table).unwrap();
        let principal2 = data2.iter().find(|d| d.levi_subset.is_empty()).unwrap();
        assert_eq!(relative_weyl(&a2, &w2, principal2).unwrap().group.order(), 6);
    }

    #[test]
    fn springer_identity_for_presets() {
        let table = ClassificationTable::builtin();
        for name in [
            "GL(1)", "GL(2)", "GL(3)", "A1 sc", "A1 ad", "A2 sc", "A2 ad", "A3 sc", "A3 semi",
            "A3 ad", "B2 sc", "B2 ad", "C2 sc", "C2 ad", "G2", "A1 sc x A1 sc",
        ] {
            let rd = preset(name).unwrap();
            let w = weyl_group(&rd).unwrap();
            let report = springer_identity_check(&rd, &w, &table).unwrap();
            assert!(report.pass, "{name}: lhs {} != rhs {}", report.lhs, report.rhs);
        }
    }

    #[test]
    fn springer_identity_numbers() {
        let table = ClassificationTable::builtin();
        let gl3 = preset("GL(3)").unwrap();
        let w = weyl_group(&gl3).unwrap();
        let r = springer_identity_check(&gl3, &w, &table).unwrap();
        assert_eq!(r.lhs, int(3));
        assert_eq!(r.rhs, int(3));
        let a1 = preset("A1 sc").unwrap();
        let w1 = weyl_group(&a1).unwrap();
        let r1 = springer_identity_check(&a1, &w1, &table).unwrap();
        assert_eq!(r1.lhs, int(3));
        let b2 = preset("B2 sc").unwrap();
        let wb = weyl_group(&b2).unwrap();
        assert_eq!(springer_identity_check(&b2, &wb, &table).unwrap().rhs, int(7));
        let b2ad = preset("B2 ad").unwrap();
        let wba = weyl_group(&b2ad).unwrap();
        assert_eq!(springer_identity_check(&b2ad, &wba, &table).unwrap().rhs, int(5));
        let g2 = preset("G2").unwrap();
        let wg = weyl_group(&g2).unwrap();
        assert_eq!(springer_identity_check(&g2, &wg, &table).unwrap().rhs, int(7));
    }
}
