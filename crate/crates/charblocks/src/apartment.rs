//! Facet combinatorics of the finite and affine root hyperplane arrangements
//! on the apartment.
//!
//! A facet is determined by any interior point. For the affine arrangement the
//! full (infinite) sign vector of a point x is encoded finitely: per root, the
//! floor of the root's value together with whether the value is an integer.
//! All facet predicates below are computed exactly from that key.

use crate::num::*;
use crate::rootdata::{self, RootDatum};
use num::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Finite,
    Affine,
}

/// An affine root (level, root index): the function x -> root(x) + level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub level: Int,
    pub root: usize,
}

impl AffineRoot {
    pub fn eval(&self, rd: &RootDatum, x: &[Rat]) -> Rat {
        rd.eval_root(self.root, x) + rat_of(&self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FacetKey {
    /// Sign of each root at an interior point.
    Finite(Vec<i8>),
    /// Per root: (floor of value, value is integral) at an interior point.
    Affine(Vec<(Int, bool)>),
}

#[derive(Clone, Debug)]
pub struct Facet {
    pub ambient: Ambient,
    pub witness: QVec,
    /// Affine roots vanishing on the facet, sorted. Finite facets have level 0.
    pub zero_set: Vec<AffineRoot>,
    pub dim: usize,
    pub key: FacetKey,
}

impl PartialEq for Facet {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.key == other.key
    }
}
impl Eq for Facet {}

impl std::hash::Hash for Facet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.key.hash(state);
    }
}

impl Facet {
    /// Sign {-1,0,+1} of the affine root on this facet.
    pub fn sign_of(&self, a: &AffineRoot) -> i32 {
        match &self.key {
            FacetKey::Finite(signs) => {
                assert!(a.level.is_zero(), "finite facet queried with affine root");
                signs[a.root] as i32
            }
            FacetKey::Affine(data) => {
                let (floor, integral) = &data[a.root];
                // v + n with v in [floor, floor+1), v integral iff `integral`.
                let thresh = -a.level.clone();
                if *integral {
                    match floor.cmp(&thresh) {
                        std::cmp::Ordering::Less => -1,
                        std::cmp::Ordering::Equal => 0,
                        std::cmp::Ordering::Greater => 1,
                    }
                } else if *floor >= thresh {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// The roots vanishing on the facet's support (finite parts of zero_set).
    pub fn vanishing_roots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.zero_set.iter().map(|a| a.root).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// The support of a facet: the affine subspace cut out by its vanishing
/// hyperplanes, with its direction space.
#[derive(Clone, Debug)]
pub struct Support {
    pub basepoint: QVec,
    /// QQ-basis of the direction space (intersection of the kernels).
    pub direction: Vec<QVec>,
    pub vanishing: Vec<AffineRoot>,
}

impl Support {
    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// Whether a point lies on the support.
    pub fn contains_point(&self, rd: &RootDatum, x: &[Rat]) -> bool {
        self.vanishing.iter().all(|a| a.eval(rd, x).is_zero())
    }
}

/// Level bound for consulting affine roots near x: ceil(max |root(x)|) + 1.
pub fn level_bound(rd: &RootDatum, x: &[Rat]) -> Int {
    let mut b = Int::one();
    for i in 0..rd.num_roots() {
        let v = rd.eval_root(i, x).abs();
        let c = v.ceil().to_integer() + Int::one();
        if c > b {
            b = c;
        }
    }
    b
}

/// The unique facet containing a rational point.
pub fn facet_of_point(rd: &RootDatum, x: &[Rat], ambient: Ambient) -> Facet {
    assert_eq!(x.len(), rd.rank);
    let mut zero_set = Vec::new();
    let key = match ambient {
        Ambient::Finite => {
            let mut signs = Vec::with_capacity(rd.num_roots());
            for i in 0..rd.num_roots() {
                let v = rd.eval_root(i, x);
                let s = sign(&v) as i8;
                if s == 0 {
                    zero_set.push(AffineRoot { level: Int::zero(), root: i });
                }
                signs.push(s);
            }
            FacetKey::Finite(signs)
        }
        Ambient::Affine => {
            let mut data = Vec::with_capacity(rd.num_roots());
            for i in 0..rd.num_roots() {
                let v = rd.eval_root(i, x);
                let integral = is_integer(&v);
                if integral {
                    zero_set.push(AffineRoot { level: -v.to_integer(), root: i });
                }
                data.push((v.floor().to_integer(), integral));
            }
            FacetKey::Affine(data)
        }
    };
    zero_set.sort();
    let dim = facet_dim(rd, &zero_set);
    Facet { ambient, witness: x.to_vec(), zero_set, dim, key }
}

fn facet_dim(rd: &RootDatum, zero_set: &[AffineRoot]) -> usize {
    if zero_set.is_empty() {
        return rd.rank;
    }
    let rows: Vec<QVec> = zero_set.iter().map(|a| ivec_to_q(&rd.roots[a.root])).collect();
    rd.rank - QMat::from_rows(&rows).rank()
}

/// Support of a facet, with exact kernel intersection for the direction.
pub fn support(rd: &RootDatum, f: &Facet) -> Support {
    let direction = if f.zero_set.is_empty() {
        Lattice::standard(rd.rank).basis
    } else {
        let rows: Vec<QVec> =
            f.zero_set.iter().map(|a| ivec_to_q(&rd.roots[a.root])).collect();
        QMat::from_rows(&rows).kernel_basis()
    };
    Support { basepoint: f.witness.clone(), direction, vanishing: f.zero_set.clone() }
}

/// The standard face relation: I lies in the closure of J.
pub fn closure_le(i: &Facet, j: &Facet) -> bool {
    assert_eq!(i.ambient, j.ambient, "facets from different arrangements");
    match (&i.key, &j.key) {
        (FacetKey::Finite(si), FacetKey::Finite(sj)) => {
            si.iter().zip(sj).all(|(a, b)| *a == 0 || a == b)
        }
        (FacetKey::Affine(di), FacetKey::Affine(dj)) => {
            di.iter().zip(dj).all(|((fi, zi), (fj, zj))| {
                if *zj {
                    fi == fj && *zi
                } else {
                    // Need value_i in [fj, fj+1].
                    fi == fj || (*zi && *fi == fj + Int::one())
                }
            })
        }
        _ => unreachable!(),
    }
}

/// Whether x lies in the star of I (the union of facets whose closure
/// contains I).
pub fn star_membership(rd: &RootDatum, i: &Facet, x: &[Rat]) -> bool {
    let fx = facet_of_point(rd, x, i.ambient);
    closure_le(i, &fx)
}

/// Vertices of the fundamental alcove, one simplex per simple factor.
pub struct AlcoveGeometry {
    /// One entry per simple factor: vertices of the factor's alcove simplex
    /// (full-dimensional coordinates, zero outside the factor span).
    pub factor_vertices: Vec<Vec<QVec>>,
}

/// Vertices 0 and omega_i / c_i per factor, where the highest root is
/// sum c_i alpha_i over the factor's simple base.
pub fn alcove_geometry(rd: &RootDatum) -> AlcoveGeometry {
    let comps = rootdata::decompose_simples(rd);
    let mut factor_vertices = Vec::new();
    for comp in &comps {
        let coweights = rootdata::factor_coweights(rd, comp);
        let theta = highest_root_of(rd, comp);
        let coeffs = rootdata::base_coords(rd, comp, theta).expect("theta in factor span");
        let mut verts = vec![vec![Rat::zero(); rd.rank]];
        for (i, w) in coweights.iter().enumerate() {
            verts.push(qvec_scale(w, &(Rat::one() / &coeffs[i])));
        }
        factor_vertices.push(verts);
    }
    AlcoveGeometry { factor_vertices }
}

fn highest_root_of(rd: &RootDatum, comp: &[usize]) -> usize {
    let mut best: Option<(usize, Rat)> = None;
    for i in 0..rd.num_roots() {
        if let Some(coeffs) = rootdata::base_coords(rd, comp, i) {
            if coeffs.iter().all(|c| !c.is_negative()) {
                let h: Rat = coeffs.iter().sum();
                best = match best {
                    None => Some((i, h)),
                    Some((bi, bh)) => {
                        if h > bh {
                            Some((i, h))
                        } else {
                            Some((bi, bh))
                        }
                    }
                };
            }
        }
    }
    best.expect("no positive roots in factor").0
}

/// All facets of the affine arrangement meeting the closed fundamental
/// alcove, each exactly once. Faces are products over factors of simplex
/// faces; the witness of each face is the barycenter of its vertex subset.
pub fn facets_of_closed_alcove(rd: &RootDatum) -> Vec<Facet> {
    let geom = alcove_geometry(rd);
    let mut facets: Vec<Facet> = Vec::new();
    let mut subset_choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for verts in &geom.factor_vertices {
        let n = verts.len();
        let mut choices = Vec::new();
        for mask in 1..(1usize << n) {
            choices.push((0..n).filter(|k| mask & (1 << k) != 0).collect());
        }
        subset_choices.push(choices);
    }
    let mut idx = vec![0usize; subset_choices.len()];
    loop {
        let mut w = vec![Rat::zero(); rd.rank];
        for (f, verts) in geom.factor_vertices.iter().enumerate() {
            let subset = &subset_choices[f][idx[f]];
            let k = rat(subset.len() as i64);
            for &v in subset {
                for c in 0..rd.rank {
                    w[c] += &verts[v][c] / &k;
                }
            }
        }
        facets.push(facet_of_point(rd, &w, Ambient::Affine));
        // Odometer step over the per-factor subset choices.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                let mut seen = std::collections::HashSet::new();
                facets.retain(|f| seen.insert(f.key.clone()));
                facets.sort_by(|a, b| {
                    b.dim
                        .cmp(&a.dim)
                        .then_with(|| format!("{:?}", a.key).cmp(&format!("{:?}", b.key)))
                });
                return facets;
            }
            idx[pos] += 1;
            if idx[pos] < subset_choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Facet count predicted by the simplex-face formula: product over simple
/// factors of (2^(rank_f + 1) - 1); 1 for a torus.
pub fn alcove_facet_count_formula(rd: &RootDatum) -> Int {
    let comps = rootdata::decompose_simples(rd);
    let mut n = Int::one();
    for comp in &comps {
        n *= (Int::one() << (comp.len() + 1)) - Int::one();
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset;

    #[test]
    fn facet_of_point_examples() {
        let a1 = preset("A1 sc").unwrap();
        // x = alpha^vee / 4: open alcove, dim 1, no vanishing roots.
        let f = facet_of_point(&a1, &[ratio(1, 4)], Ambient::Affine);
        assert_eq!(f.dim, 1);
        assert!(f.zero_set.is_empty());
        // x = 0: vertex, both level-0 roots vanish.
        let v = facet_of_point(&a1, &[rat(0)], Ambient::Affine);
        assert_eq!(v.dim, 0);
        assert_eq!(v.zero_set.len(), 2);
        assert!(v.zero_set.iter().all(|a| a.level.is_zero()));
        // Torus: single facet of full dimension.
        let gl1 = preset("GL(1)").unwrap();
        let t = facet_of_point(&gl1, &[ratio(7, 3)], Ambient::Affine);
        assert_eq!(t.dim, 1);
        assert!(t.zero_set.is_empty());
    }

    #[test]
    fn alcove_facet_counts() {
        for (name, count) in [("A1 sc", 3i64), ("A2 sc", 7), ("GL(1)", 1), ("B2 sc", 7), ("G2", 7)]
        {
            let rd = preset(name).unwrap();
            let facets = facets_of_closed_alcove(&rd);
            assert_eq!(facets.len(), count as usize, "{name}");
            assert_eq!(alcove_facet_count_formula(&rd), int(count), "{name}");
        }
        // Product: two A1 factors give 3 x 3 = 9.
        let prod = preset("A1 sc x A1 sc").unwrap();
        assert_eq!(facets_of_closed_alcove(&prod).len(), 9);
    }

    #[test]
    fn alcove_facets_have_consistent_dims() {
        let a2 = preset("A2 sc").unwrap();
        let facets = facets_of_closed_alcove(&a2);
        let dims: Vec<usize> = facets.iter().map(|f| f.dim).collect();
        let count0 = dims.iter().filter(|&&d| d == 0).count();
        let count1 = dims.iter().filter(|&&d| d == 1).count();
        let count2 = dims.iter().filter(|&&d| d == 2).count();
        assert_eq!((count0, count1, count2), (3, 3, 1));
        for f in &facets {
            for a in &f.zero_set {
                assert!(a.eval(&a2, &f.witness).is_zero());
            }
            // dim + rank of vanishing roots = rank.
            let van = f.vanishing_roots();
            let r = if van.is_empty() {
                0
            } else {
                QMat::from_rows(&van.iter().map(|&i| ivec_to_q(&a2.roots[i])).collect::<Vec<_>>())
                    .rank()
            };
            assert_eq!(f.dim + r, a2.rank);
        }
    }

    #[test]
    fn closure_relation_examples() {
        let a1 = preset("A1 sc").unwrap();
        let v0 = facet_of_point(&a1, &[rat(0)], Ambient::Affine);
        let v1 = facet_of_point(&a1, &[ratio(1, 2)], Ambient::Affine);
        let alcove = facet_of_point(&a1, &[ratio(1, 4)], Ambient::Affine);
        assert!(closure_le(&v0, &alcove));
        assert!(closure_le(&v1, &alcove));
        assert!(!closure_le(&v0, &v1));
        assert!(closure_le(&v0, &v0));
        // In A2: every alcove face is below the open alcove, and closure_le
        // is a partial order with the open alcove as unique maximum.
        let a2 = preset("A2 sc").unwrap();
        let facets = facets_of_closed_alcove(&a2);
        let open = facets.iter().find(|f| f.dim == 2).unwrap();
        for f in &facets {
            assert!(closure_le(f, open));
            for g in &facets {
                if closure_le(f, g) && closure_le(g, f) {
                    assert_eq!(f, g);
                }
            }
        }
    }

    #[test]
    fn star_membership_examples() {
        let a1 = preset("A1 sc").unwrap();
        let v0 = facet_of_point(&a1, &[rat(0)], Ambient::Affine);
        assert!(star_membership(&a1, &v0, &[ratio(1, 8)]));
        assert!(!star_membership(&a1, &v0, &[ratio(1, 2)]));
        let alcove = facet_of_point(&a1, &[ratio(1, 4)], Ambient::Affine);
        assert!(star_membership(&a1, &alcove, &[ratio(1, 3)]));
    }

    #[test]
    fn support_examples() {
        let a1 = preset("A1 sc").unwrap();
        let alcove = facet_of_point(&a1, &[ratio(1, 4)], Ambient::Affine);
        assert_eq!(support(&a1, &alcove).dim(), 1);
        let v0 = facet_of_point(&a1, &[rat(0)], Ambient::Affine);
        assert_eq!(support(&a1, &v0).dim(), 0);
        let a2 = preset("A2 sc").unwrap();
        let facets = facets_of_closed_alcove(&a2);
        for f in facets.iter().filter(|f| f.dim == 1) {
            assert_eq!(support(&a2, f).dim(), 1);
        }
    }

    #[test]
    fn finite_ambient_facets() {
        let a2 = preset("A2 sc").unwrap();
        let x = [ratio(1, 3), ratio(1, 5)];
        let f = facet_of_point(&a2, &x, Ambient::Finite);
        assert_eq!(f.zero_set.len(), 0);
        let origin = facet_of_point(&a2, &[rat(0), rat(0)], Ambient::Finite);
        assert_eq!(origin.zero_set.len(), 6);
        assert!(closure_le(&origin, &f));
    }

    #[test]
    fn random_alcove_points_match_exactly_one_facet() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for name in ["A1 sc", "A2 sc", "B2 sc"] {
            let rd = preset(name).unwrap();
            let facets = facets_of_closed_alcove(&rd);
            let geom = alcove_geometry(&rd);
            for _ in 0..40 {
                let mut x = vec![Rat::zero(); rd.rank];
                for verts in &geom.factor_vertices {
                    let weights: Vec<i64> = verts.iter().map(|_| rng.gen_range(0..5)).collect();
                    let total: i64 = weights.iter().sum();
                    if total == 0 {
                        continue;
                    }
                    for (v, &w) in verts.iter().zip(&weights) {
                        for c in 0..rd.rank {
                            x[c] += &v[c] * ratio(w, total);
                        }
                    }
                }
                let f = facet_of_point(&rd, &x, Ambient::Affine);
                let matches = facets.iter().filter(|g| **g == f).count();
                assert_eq!(matches, 1, "{name}: point {x:?}");
            }
        }
    }
}
