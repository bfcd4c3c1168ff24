//! The extended affine Weyl group: semidirect product of the finite Weyl
//! group with the cocharacter lattice, acting on the apartment and its
//! facets. Elements are stored as (matrix, translation) pairs; the word
//! problem is solved by acting, never by rewriting.

use crate::apartment::{self, Ambient, Facet};
use crate::num::*;
use crate::rootdata::{FiniteGroup, RootDatum};
use crate::{Error, Result};
use num::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    /// Linear part acting on the cocharacter lattice.
    pub linear: IMat,
    /// Translation by a cocharacter.
    pub translation: IVec,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement { linear: IMat::identity(rank), translation: vec![Int::zero(); rank] }
    }

    pub fn translation_by(v: IVec) -> Self {
        AffineWeylElement { linear: IMat::identity(v.len()), translation: v }
    }

    pub fn from_linear(m: IMat) -> Self {
        let n = m.rows;
        AffineWeylElement { linear: m, translation: vec![Int::zero(); n] }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|x| x.is_zero())
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    /// Composition: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        let linear = self.linear.mul(&other.linear);
        let mut translation = self.linear.mul_ivec(&other.translation);
        for (t, s) in translation.iter_mut().zip(&self.translation) {
            *t += s;
        }
        AffineWeylElement { linear, translation }
    }

    pub fn inverse(&self) -> AffineWeylElement {
        let inv = self.linear.inverse_unimodular();
        let translation = inv.mul_ivec(&self.translation).iter().map(|x| -x.clone()).collect();
        AffineWeylElement { linear: inv, translation }
    }

    /// Action on a rational point: w(x) + lambda.
    pub fn act(&self, x: &[Rat]) -> QVec {
        let mut y = self.linear.mul_qvec(x);
        for (yi, t) in y.iter_mut().zip(&self.translation) {
            *yi += rat_of(t);
        }
        y
    }
}

/// Affine reflection in the hyperplane of an affine root.
pub fn affine_reflection(rd: &RootDatum, a: &apartment::AffineRoot) -> AffineWeylElement {
    // s_a(x) = x - a(x) alpha^vee = (s_alpha, -level * alpha^vee).
    let linear = rd.reflection(a.root);
    let translation: IVec = rd.coroots[a.root].iter().map(|c| -&a.level * c).collect();
    AffineWeylElement { linear, translation }
}

/// Transport a facet along a group element (recomputed from the witness).
pub fn act_facet(rd: &RootDatum, g: &AffineWeylElement, f: &Facet) -> Facet {
    assert_eq!(f.ambient, Ambient::Affine, "only affine facets are transported");
    apartment::facet_of_point(rd, &g.act(&f.witness), Ambient::Affine)
}

/// The walls of the fundamental alcove: simple roots at level 0 and, per
/// simple factor, the highest root at level 1 reversed (1 - theta >= 0).
pub fn alcove_walls(rd: &RootDatum) -> Vec<apartment::AffineRoot> {
    let mut walls = Vec::new();
    for &s in &rd.simple {
        walls.push(apartment::AffineRoot { level: Int::zero(), root: s });
    }
    for theta in rd.highest_roots() {
        let neg: IVec = rd.roots[theta].iter().map(|x| -x.clone()).collect();
        let neg_idx = rd.root_index(&neg).expect("negative of a root");
        walls.push(apartment::AffineRoot { level: Int::one(), root: neg_idx });
    }
    walls
}

/// Reduce a point into the closed fundamental alcove by wall crossings.
/// Returns (g, g(x)) with g(x) in the closed alcove. Deterministic: the
/// lowest-index violated wall is crossed first.
pub fn reduce_to_fundamental(rd: &RootDatum, x: &[Rat]) -> Result<(AffineWeylElement, QVec)> {
    let walls = alcove_walls(rd);
    let mut g = AffineWeylElement::identity(rd.rank);
    let mut y = x.to_vec();
    let cap = 100_000;
    for _ in 0..cap {
        let violated = walls.iter().find(|w| w.eval(rd, &y).is_negative());
        match violated {
            None => return Ok((g, y)),
            Some(w) => {
                let r = affine_reflection(rd, w);
                y = r.act(&y);
                g = r.compose(&g);
            }
        }
    }
    Err(Error::Limit("alcove walk did not terminate".into()))
}

/// Reduce a facet to the fundamental-alcove representative: g(I) appears in
/// `facets_of_closed_alcove`.
pub fn reduce_facet(rd: &RootDatum, f: &Facet) -> Result<(AffineWeylElement, Facet)> {
    let (g, y) = reduce_to_fundamental(rd, &f.witness)?;
    Ok((g, apartment::facet_of_point(rd, &y, Ambient::Affine)))
}

/// A subgroup of the extended affine Weyl group stabilizing some object:
/// a translation lattice together with finitely many coset representatives
/// (always including the identity).
#[derive(Clone, Debug)]
pub struct AffineStabilizer {
    /// Basis of the sublattice of stabilizing pure translations.
    pub translations: Lattice,
    /// Coset representatives modulo the translation lattice.
    pub finite_parts: Vec<AffineWeylElement>,
}

impl AffineStabilizer {
    /// Order of the finite part (index of the translation lattice).
    pub fn finite_order(&self) -> usize {
        self.finite_parts.len()
    }

    pub fn is_lattice_nontrivial(&self) -> bool {
        self.translations.rank() > 0
    }
}

/// Stabilizer of a point: {(w, lambda) : w(x) + lambda = x}. Finite, with
/// trivial translation lattice.
pub fn stabilizer_point(rd: &RootDatum, weyl: &FiniteGroup, x: &[Rat]) -> AffineStabilizer {
    let mut finite_parts = Vec::new();
    for w in &weyl.elements {
        let wx = w.mul_qvec(x);
        let lambda = qvec_sub(x, &wx);
        if lambda.iter().all(is_integer) {
            finite_parts.push(AffineWeylElement {
                linear: w.clone(),
                translation: lambda.iter().map(|r| r.numer().clone()).collect(),
            });
        }
    }
    AffineStabilizer { translations: Lattice::zero(rd.rank), finite_parts }
}

/// Setwise stabilizer of an affine facet.
///
/// The pure translations stabilizing any facet are exactly the cocharacters
/// killed by every root (central directions); the finite part is found per
/// Weyl element by solving an integral affine condition at the facet's
/// barycenter and verifying the action.
pub fn stabilizer_facet(rd: &RootDatum, weyl: &FiniteGroup, f: &Facet) -> Result<AffineStabilizer> {
    let (g0, f0) = reduce_facet(rd, f)?;
    let b = f0.witness.clone();
    let central_rows: Vec<QVec> = rd.roots.iter().map(|r| ivec_to_q(r)).collect();
    let translations = if central_rows.is_empty() {
        Lattice::standard(rd.rank)
    } else {
        Lattice::standard(rd.rank).intersect_kernel(&QMat::from_rows(&central_rows))
    };
    let mut finite_parts = Vec::new();
    for w in &weyl.elements {
        let wb = w.mul_qvec(&b);
        let lambda0 = qvec_sub(&b, &wb);
        // lambda must be integral and congruent to lambda0 modulo the
        // central directions: root(lambda) = root(lambda0) for every root.
        let candidate = if central_rows.is_empty() {
            if lambda0.iter().all(is_integer) {
                Some(lambda0.iter().map(|r| r.numer().clone()).collect::<IVec>())
            } else {
                None
            }
        } else {
            let c = QMat::from_rows(&central_rows);
            solve_affine_integer(&c, &c.mul_qvec(&lambda0))
        };
        if let Some(lambda) = candidate {
            let cand = AffineWeylElement { linear: w.clone(), translation: lambda };
            if act_facet(rd, &cand, &f0) == f0 {
                finite_parts.push(cand);
            }
        }
    }
    // Conjugate back to the original facet: Stab(f) = g0^{-1} Stab(f0) g0.
    let g0inv = g0.inverse();
    let finite_parts =
        finite_parts.into_iter().map(|h| g0inv.compose(&h).compose(&g0)).collect();
    Ok(AffineStabilizer { translations, finite_parts })
}

/// The alcove-preserving subgroup: stabilizer of the open fundamental alcove.
/// Trivial for simply-connected data; isomorphic to the fundamental group in
/// general (modulo central translations).
pub fn omega_elements(rd: &RootDatum, weyl: &FiniteGroup) -> Result<Vec<AffineWeylElement>> {
    let facets = apartment::facets_of_closed_alcove(rd);
    let open = facets.iter().find(|f| f.dim == rd.rank).expect("open alcove present");
    Ok(stabilizer_facet(rd, weyl, open)?.finite_parts)
}

/// The normalizer of a parabolic-type reflection subgroup and its quotient
/// acting on the fixed direction space.
#[derive(Clone, Debug)]
pub struct RelativeQuotient {
    /// Indices (into the ambient Weyl group) of the normalizer elements.
    pub normalizer: Vec<usize>,
    /// Indices of the reflection subgroup W_eps.
    pub subgroup: Vec<usize>,
    /// The quotient as a matrix group on a lattice basis of the direction z.
    pub group: FiniteGroup,
    /// Basis of the direction-space lattice the quotient acts on.
    pub z_basis: Vec<QVec>,
    /// For each quotient element, a representative index in the ambient group.
    pub reps: Vec<usize>,
    /// Quotient element index for each normalizer element.
    pub class_in_quotient: std::collections::HashMap<usize, usize>,
}

/// Compute N_W(W_eps) = {w : w(Phi_eps) = Phi_eps} and the quotient N/W_eps
/// with its faithful action on z_eps.
pub fn normalizer_parabolic(
    rd: &RootDatum,
    weyl: &FiniteGroup,
    vanishing_roots: &[usize],
) -> Result<RelativeQuotient> {
    let rootset: std::collections::BTreeSet<usize> = vanishing_roots.iter().copied().collect();
    let z_lattice = if rootset.is_empty() {
        Lattice::standard(rd.rank)
    } else {
        let rows: Vec<QVec> = rootset.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
        Lattice::standard(rd.rank).intersect_kernel(&QMat::from_rows(&rows))
    };
    let z_basis = z_lattice.basis.clone();
    let zmat = if z_basis.is_empty() { None } else { Some(QMat::from_cols(&z_basis)) };

    let mut normalizer = Vec::new();
    let mut quotient_mats: Vec<IMat> = Vec::new();
    let mut reps = Vec::new();
    let mut class_map = std::collections::HashMap::new();
    for (wi, w) in weyl.elements.iter().enumerate() {
        let Some(perm) = rd.root_permutation(w) else {
            return Err(Error::Invalid("Weyl element does not permute roots".into()));
        };
        if rootset.iter().all(|&i| rootset.contains(&perm[i])) {
            normalizer.push(wi);
            let m = restrict_to_subspace(w, &z_basis, zmat.as_ref());
            let pos = quotient_mats.iter().position(|q| *q == m);
            let qi = match pos {
                Some(p) => p,
                None => {
                    quotient_mats.push(m);
                    reps.push(wi);
                    quotient_mats.len() - 1
                }
            };
            class_map.insert(wi, qi);
        }
    }
    let refl_gens: Vec<usize> = rootset
        .iter()
        .map(|&i| weyl.index_of(&rd.reflection(i)).expect("reflection in Weyl group"))
        .collect();
    let subgroup = weyl.subgroup_closure(&refl_gens);
    // Faithfulness: distinct z-matrices must count |N| / |W_eps|.
    if quotient_mats.len() * subgroup.len() != normalizer.len() {
        return Err(Error::CheckFailed(format!(
            "quotient action on z not faithful: {} matrices, |N| = {}, |W_eps| = {}",
            quotient_mats.len(),
            normalizer.len(),
            subgroup.len()
        )));
    }
    let dim = z_basis.len();
    let group = FiniteGroup::from_generators(dim, &quotient_mats, crate::rootdata::GROUP_CAP)?;
    if group.order() != quotient_mats.len() {
        return Err(Error::CheckFailed(
            "quotient matrices are not closed under multiplication".into(),
        ));
    }
    let mut reps_by_group = vec![usize::MAX; group.order()];
    for (qi, m) in quotient_mats.iter().enumerate() {
        let gi = group.index_of(m).expect("closure contains generators");
        if reps_by_group[gi] == usize::MAX {
            reps_by_group[gi] = reps[qi];
        }
    }
    let class_in_quotient = class_map
        .into_iter()
        .map(|(wi, qi)| (wi, group.index_of(&quotient_mats[qi]).unwrap()))
        .collect();
    Ok(RelativeQuotient {
        normalizer,
        subgroup,
        group,
        z_basis,
        reps: reps_by_group,
        class_in_quotient,
    })
}

/// Restrict a lattice automorphism to an invariant subspace, as an integer
/// matrix in the given lattice basis. A 0-dimensional subspace yields the
/// empty 0x0 matrix.
pub fn restrict_to_subspace(w: &IMat, basis: &[QVec], basis_mat: Option<&QMat>) -> IMat {
    let dim = basis.len();
    if dim == 0 {
        return IMat::identity(0);
    }
    let bm = basis_mat.expect("basis matrix");
    let mut cols = Vec::new();
    for b in basis {
        let img = w.mul_qvec(b);
        let coords = bm.solve(&img).expect("subspace not invariant");
        assert!(coords.iter().all(is_integer), "restriction not integral");
        cols.push(coords.iter().map(|x| x.numer().clone()).collect::<IVec>());
    }
    IMat::from_cols(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apartment::facet_of_point;
    use crate::rootdata::{preset, weyl_group};

    #[test]
    fn action_examples() {
        let a1 = preset("A1 sc").unwrap();
        let s = AffineWeylElement::from_linear(a1.reflection(a1.simple[0]));
        assert_eq!(s.act(&[ratio(1, 4)]), vec![ratio(-1, 4)]);
        let t = AffineWeylElement::translation_by(ivec(&[1]));
        assert_eq!(t.act(&[rat(0)]), vec![rat(1)]);
        // Affine reflection at alpha = 1 fixes alpha^vee / 2.
        let neg = a1.root_index(&ivec(&[-2])).unwrap();
        let r = affine_reflection(&a1, &apartment::AffineRoot { level: Int::one(), root: neg });
        assert_eq!(r.act(&[ratio(1, 2)]), vec![ratio(1, 2)]);
        assert_eq!(r.act(&[rat(1)]), vec![rat(0)]);
    }

    #[test]
    fn composition_law_on_samples() {
        let b2 = preset("B2 sc").unwrap();
        let w = weyl_group(&b2).unwrap();
        let g = AffineWeylElement { linear: w.elements[3].clone(), translation: ivec(&[1, 1]) };
        let h = AffineWeylElement { linear: w.elements[5].clone(), translation: ivec(&[2, 0]) };
        let x = vec![ratio(1, 3), ratio(2, 7)];
        let lhs = g.compose(&h).act(&x);
        let rhs = g.act(&h.act(&x));
        assert_eq!(lhs, rhs);
        let id = g.compose(&g.inverse());
        assert!(id.is_identity());
    }

    #[test]
    fn reduction_examples() {
        let a1 = preset("A1 sc").unwrap();
        let (g, y) = reduce_to_fundamental(&a1, &[ratio(3, 4)]).unwrap();
        assert_eq!(y, vec![ratio(1, 4)]);
        assert_eq!(g.act(&[ratio(3, 4)]), y);
        let (g0, y0) = reduce_to_fundamental(&a1, &[rat(0)]).unwrap();
        assert!(g0.is_identity());
        assert_eq!(y0, vec![rat(0)]);
        let (_g1, y1) = reduce_to_fundamental(&a1, &[rat(1)]).unwrap();
        assert_eq!(y1, vec![rat(0)]);
        // Idempotence and orbit soundness on a G2 point.
        let g2 = preset("G2").unwrap();
        let x = vec![ratio(13, 5), ratio(-7, 3)];
        let (g, y) = reduce_to_fundamental(&g2, &x).unwrap();
        assert_eq!(g.act(&x), y);
        let (g_again, y_again) = reduce_to_fundamental(&g2, &y).unwrap();
        assert!(g_again.is_identity());
        assert_eq!(y, y_again);
        let fx = facet_of_point(&g2, &x, Ambient::Affine);
        let fy = facet_of_point(&g2, &y, Ambient::Affine);
        assert_eq!(fx.dim, fy.dim);
    }

    #[test]
    fn stabilizer_point_examples() {
        let a1 = preset("A1 sc").unwrap();
        let w = weyl_group(&a1).unwrap();
        assert_eq!(stabilizer_point(&a1, &w, &[rat(0)]).finite_parts.len(), 2);
        assert_eq!(stabilizer_point(&a1, &w, &[ratio(1, 4)]).finite_parts.len(), 1);
        // In the adjoint lattice the half-sum point has stabilizer of order 2.
        let ad = preset("A1 ad").unwrap();
        let wad = weyl_group(&ad).unwrap();
        assert_eq!(stabilizer_point(&ad, &wad, &[ratio(1, 2)]).finite_parts.len(), 2);
    }

    #[test]
    fn stabilizer_facet_examples() {
        // GL(1): the single facet is stabilized by all translations.
        let gl1 = preset("GL(1)").unwrap();
        let w = weyl_group(&gl1).unwrap();
        let f = facet_of_point(&gl1, &[ratio(1, 3)], Ambient::Affine);
        let st = stabilizer_facet(&gl1, &w, &f).unwrap();
        assert_eq!(st.translations.rank(), 1);
        assert_eq!(st.finite_order(), 1);
        // A1 sc: vertex 0 has stabilizer of order 2 and no translations.
        let a1 = preset("A1 sc").unwrap();
        let w1 = weyl_group(&a1).unwrap();
        let v0 = facet_of_point(&a1, &[rat(0)], Ambient::Affine);
        let st0 = stabilizer_facet(&a1, &w1, &v0).unwrap();
        assert_eq!(st0.translations.rank(), 0);
        assert_eq!(st0.finite_order(), 2);
        // Open alcove of A1 sc: trivial stabilizer.
        let alc = facet_of_point(&a1, &[ratio(1, 4)], Ambient::Affine);
        let sta = stabilizer_facet(&a1, &w1, &alc).unwrap();
        assert_eq!(sta.finite_order(), 1);
        assert_eq!(sta.translations.rank(), 0);
    }

    #[test]
    fn omega_orders_match_fundamental_groups() {
        for (name, order) in
            [("A1 sc", 1usize), ("A1 ad", 2), ("A2 sc", 1), ("A2 ad", 3), ("B2 ad", 2), ("G2", 1)]
        {
            let rd = preset(name).unwrap();
            let w = weyl_group(&rd).unwrap();
            let omega = omega_elements(&rd, &w).unwrap();
            assert_eq!(omega.len(), order, "{name}");
        }
    }

    #[test]
    fn stabilizer_conjugation_consistency() {
        let a2 = preset("A2 sc").unwrap();
        let w = weyl_group(&a2).unwrap();
        let x = vec![rat(2), rat(1)];
        let f = facet_of_point(&a2, &x, Ambient::Affine);
        let st = stabilizer_facet(&a2, &w, &f).unwrap();
        for h in &st.finite_parts {
            assert_eq!(act_facet(&a2, h, &f), f);
        }
    }

    #[test]
    fn normalizer_examples() {
        // eps = whole apartment in A2: N = W of order 6, quotient = W.
        let a2 = preset("A2 sc").unwrap();
        let w = weyl_group(&a2).unwrap();
        let q = normalizer_parabolic(&a2, &w, &[]).unwrap();
        assert_eq!(q.normalizer.len(), 6);
        assert_eq!(q.group.order(), 6);
        // eps = {0} in A1: W_eps = W, quotient trivial.
        let a1 = preset("A1 sc").unwrap();
        let w1 = weyl_group(&a1).unwrap();
        let q1 = normalizer_parabolic(&a1, &w1, &[0, 1]).unwrap();
        assert_eq!(q1.group.order(), 1);
        // eps = H_alpha1 in A2: normalizer of order 2, quotient trivial.
        let s0 = a2.simple[0];
        let neg: IVec = a2.roots[s0].iter().map(|x| -x.clone()).collect();
        let sub = vec![s0, a2.root_index(&neg).unwrap()];
        let q2 = normalizer_parabolic(&a2, &w, &sub).unwrap();
        assert_eq!(q2.normalizer.len(), 2);
        assert_eq!(q2.group.order(), 1);
    }

    #[test]
    fn group_action_property_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g2 = preset("G2").unwrap();
        let w = weyl_group(&g2).unwrap();
        for _ in 0..25 {
            let gi = rng.gen_range(0..w.order());
            let hi = rng.gen_range(0..w.order());
            let g = AffineWeylElement {
                linear: w.elements[gi].clone(),
                translation: ivec(&[rng.gen_range(-3..3), rng.gen_range(-3..3)]),
            };
            let h = AffineWeylElement {
                linear: w.elements[hi].clone(),
                translation: ivec(&[rng.gen_range(-3..3), rng.gen_range(-3..3)]),
            };
            let x = vec![ratio(rng.gen_range(-20..20), 7), ratio(rng.gen_range(-20..20), 5)];
            assert_eq!(g.compose(&h).act(&x), g.act(&h.act(&x)));
        }
    }
}
