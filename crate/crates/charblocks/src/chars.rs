//! Exact character theory for the finite groups appearing here: character
//! tables over the rationals, graded (q-valued) class functions, induction,
//! restriction, and Frobenius pairings.
//!
//! The table is computed from the class algebra: the central character
//! vectors are the common eigenvectors of the class-multiplication matrices.
//! For the groups in scope (Weyl groups and relative Weyl groups) all
//! eigenvalues are rational integers; if that ever fails we raise an error
//! rather than leave exact arithmetic.

use crate::num::*;
use crate::rootdata::FiniteGroup;
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Laurent polynomials in q
// ---------------------------------------------------------------------------

/// Laurent polynomial in one variable with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// exponent -> coefficient, zero coefficients removed.
    pub coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.coeffs.insert(0, c);
        }
        p
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            let v = out.coeffs.remove(e).unwrap_or_else(Rat::zero) + c;
            if !v.is_zero() {
                out.coeffs.insert(*e, v);
            }
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let v = out.coeffs.remove(&e).unwrap_or_else(Rat::zero) + c1 * c2;
                if !v.is_zero() {
                    out.coeffs.insert(e, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Degreewise pairing: sum of products of matching coefficients.
    pub fn pair(&self, other: &LaurentPoly) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(e) {
                s += c * d;
            }
        }
        s
    }

    /// Value at q = 1.
    pub fn eval_one(&self) -> Rat {
        self.coeffs.values().sum()
    }

    pub fn to_string_q(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.coeffs {
            let term = match e {
                0 => c.to_string(),
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{e}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Character tables
// ---------------------------------------------------------------------------

/// Exact character table: one row per irreducible, one column per conjugacy
/// class (in the group's class order).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub rows: Vec<Vec<Rat>>,
    /// Index of the class containing the identity element.
    pub id_class: usize,
    /// For each class, the class of the inverses.
    pub inverse_class: Vec<usize>,
    /// Class sizes.
    pub class_size: Vec<usize>,
}

impl CharacterTable {
    pub fn degree(&self, row: usize) -> &Rat {
        &self.rows[row][self.id_class]
    }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let k = g.classes.len();
    let order = g.order();
    let reps: Vec<usize> = g.classes.iter().map(|c| c[0]).collect();
    let class_size: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
    let id_class = g.class_of[g.id()];
    let inverse_class: Vec<usize> = reps.iter().map(|&r| g.class_of[g.inv(r)]).collect();

    // Class multiplication matrices: (M_i)_{l,j} = #{x in C_i : x^{-1} z_l in C_j}.
    let mut mats: Vec<QMat> = Vec::with_capacity(k);
    for i in 0..k {
        let mut m = QMat::zero(k, k);
        for (l, &zl) in reps.iter().enumerate() {
            for &x in &g.classes[i] {
                let y = g.mul(g.inv(x), zl);
                let j = g.class_of[y];
                let v = m.get(j, l) + Rat::one();
                m.set(j, l, v);
            }
        }
        mats.push(m);
    }

    // Refine common eigenspaces of the commuting class matrices.
    let mut spaces: Vec<Vec<QVec>> =
        vec![QMat::identity(k).a.chunks(k).map(|r| r.to_vec()).collect()];
    for m in &mats {
        let mut next = Vec::new();
        for space in &spaces {
            if space.len() == 1 {
                next.push(space.clone());
                continue;
            }
            let basis = QMat::from_cols(space);
            let mut rest_cols = Vec::new();
            for b in space {
                let img = m.mul_qvec(b);
                let coords = basis
                    .solve(&img)
                    .ok_or_else(|| Error::CheckFailed("eigenspace not invariant".into()))?;
                rest_cols.push(coords);
            }
            let rest = QMat::from_cols(&rest_cols);
            for (_lambda, kernel) in integer_eigen_kernels(&rest)? {
                let sub: Vec<QVec> = kernel
                    .iter()
                    .map(|kv| {
                        let mut v = vec![Rat::zero(); k];
                        for (c, b) in kv.iter().zip(space) {
                            for t in 0..k {
                                v[t] += c * &b[t];
                            }
                        }
                        v
                    })
                    .collect();
                next.push(sub);
            }
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if !spaces.iter().all(|s| s.len() == 1) {
        return Err(Error::CheckFailed(
            "character values are not rational for this group".into(),
        ));
    }

    // Convert central-character eigenvectors to characters.
    let mut rows = Vec::new();
    for space in &spaces {
        let v = &space[0];
        if v[id_class].is_zero() {
            return Err(Error::CheckFailed("degenerate central character".into()));
        }
        let omega: Vec<Rat> = v.iter().map(|x| x / &v[id_class]).collect();
        // chi(1)^2 = |G| / sum_j omega_j omega_{j*} / |C_j|.
        let mut s = Rat::zero();
        for j in 0..k {
            s += &omega[j] * &omega[inverse_class[j]] / rat(class_size[j] as i64);
        }
        let deg = rat_sqrt(&(rat(order as i64) / s));
        let row: Vec<Rat> = (0..k).map(|j| &deg * &omega[j] / rat(class_size[j] as i64)).collect();
        rows.push(row);
    }
    rows.sort_by(|a, b| {
        a[id_class].cmp(&b[id_class]).then_with(|| {
            b.iter().map(|x| x.clone()).collect::<Vec<_>>().cmp(&a.to_vec()).reverse()
        })
    });

    let table = CharacterTable { rows, id_class, inverse_class, class_size };
    // Orthonormality and degree-sum sanity.
    let mut degsum = Rat::zero();
    for i in 0..table.rows.len() {
        degsum += table.degree(i) * table.degree(i);
        for j in 0..table.rows.len() {
            let ip = inner_product_plain(g, &table, &table.rows[i], &table.rows[j]);
            let expect = if i == j { Rat::one() } else { Rat::zero() };
            if ip != expect {
                return Err(Error::CheckFailed("character table not orthonormal".into()));
            }
        }
    }
    if degsum != rat(order as i64) {
        return Err(Error::CheckFailed("sum of squared degrees mismatch".into()));
    }
    Ok(table)
}

fn inner_product_plain(g: &FiniteGroup, t: &CharacterTable, a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for j in 0..g.classes.len() {
        s += rat(t.class_size[j] as i64) * &a[j] * &b[t.inverse_class[j]];
    }
    s / rat(g.order() as i64)
}

/// Integer eigenvalues with their kernels for a rational matrix. Errors if
/// the matrix does not split with integer eigenvalues.
fn integer_eigen_kernels(m: &QMat) -> Result<Vec<(Int, Vec<QVec>)>> {
    let n = m.rows;
    let cp = char_poly(m);
    let mut out = Vec::new();
    let mut total_dim = 0usize;
    let mut candidates: Vec<Int> = vec![Int::zero()];
    if let Some(c0) = cp.iter().find(|c| !c.is_zero()) {
        let c0int = c0.numer().clone();
        let bound = num::Signed::abs(&c0int);
        let mut d = Int::one();
        while d <= bound {
            if num::Integer::is_multiple_of(&c0int, &d) {
                candidates.push(d.clone());
                candidates.push(-d.clone());
            }
            d += 1;
        }
    }
    candidates.sort();
    candidates.dedup();
    for lambda in candidates {
        let lr = rat_of(&lambda);
        let mut val = Rat::zero();
        let mut p = Rat::one();
        for c in &cp {
            val += c * &p;
            p *= &lr;
        }
        if val.is_zero() {
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted.get(i, i) - &lr;
                shifted.set(i, i, v);
            }
            let kernel = shifted.kernel_basis();
            total_dim += kernel.len();
            out.push((lambda, kernel));
        }
    }
    if total_dim != n {
        return Err(Error::CheckFailed("matrix does not split over the integers".into()));
    }
    Ok(out)
}

/// Characteristic polynomial coefficients (constant first) of a rational
/// matrix, by evaluation at n+1 points and Lagrange interpolation.
pub fn char_poly(m: &QMat) -> Vec<Rat> {
    let n = m.rows;
    let points: Vec<Rat> = (0..=n as i64).map(rat).collect();
    let values: Vec<Rat> = points
        .iter()
        .map(|x| {
            let mut xm = QMat::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j { x - m.get(i, j) } else { -m.get(i, j).clone() };
                    xm.set(i, j, v);
                }
            }
            xm.det()
        })
        .collect();
    let mut coeffs = vec![Rat::zero(); n + 1];
    for (i, xi) in points.iter().enumerate() {
        let mut num_poly = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); num_poly.len() + 1];
            for (d, c) in num_poly.iter().enumerate() {
                next[d] -= c * xj;
                next[d + 1] += c;
            }
            num_poly = next;
            denom *= xi - xj;
        }
        let w = &values[i] / denom;
        for (d, c) in num_poly.iter().enumerate() {
            coeffs[d] += c * &w;
        }
    }
    coeffs
}

// ---------------------------------------------------------------------------
// Graded characters
// ---------------------------------------------------------------------------

/// Class function with values in Laurent polynomials in q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    /// One value per conjugacy class of the carrying group.
    pub values: Vec<LaurentPoly>,
}

impl GradedCharacter {
    pub fn zero(num_classes: usize) -> Self {
        GradedCharacter { values: vec![LaurentPoly::zero(); num_classes] }
    }

    pub fn from_plain(row: &[Rat]) -> Self {
        GradedCharacter { values: row.iter().map(|c| LaurentPoly::constant(c.clone())).collect() }
    }

    pub fn add(&self, other: &GradedCharacter) -> GradedCharacter {
        GradedCharacter {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn shift_q(&self, e: i64) -> GradedCharacter {
        let q = LaurentPoly::monomial(Rat::one(), e);
        GradedCharacter { values: self.values.iter().map(|v| v.mul(&q)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Value at the identity (graded dimension).
    pub fn graded_dimension(&self, t: &CharacterTable) -> LaurentPoly {
        self.values[t.id_class].clone()
    }
}

/// Trivial character of a group with k classes.
pub fn trivial_character(k: usize) -> GradedCharacter {
    GradedCharacter { values: vec![LaurentPoly::one(); k] }
}

/// Regular character: |G| at the identity class, 0 elsewhere.
pub fn regular_character(g: &FiniteGroup) -> GradedCharacter {
    let k = g.classes.len();
    let mut ch = GradedCharacter::zero(k);
    ch.values[g.class_of[g.id()]] = LaurentPoly::constant(rat(g.order() as i64));
    ch
}

/// Determinant (sign) character of a matrix group.
pub fn sign_character(g: &FiniteGroup) -> GradedCharacter {
    let values = g
        .classes
        .iter()
        .map(|c| LaurentPoly::constant(g.elements[c[0]].to_qmat().det()))
        .collect();
    GradedCharacter { values }
}

/// An embedding of a subgroup: element i of the small group is element
/// `to_big[i]` of the big one.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub to_big: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Build from matrix groups where the small group's elements become
    /// members of the big group after a coordinate transport.
    pub fn locate(
        small: &FiniteGroup,
        big: &FiniteGroup,
        transport: impl Fn(&IMat) -> IMat,
    ) -> Result<Self> {
        let mut to_big = Vec::with_capacity(small.order());
        for m in &small.elements {
            let img = transport(m);
            let idx = big.index_of(&img).ok_or_else(|| {
                Error::CheckFailed("subgroup element missing in big group".into())
            })?;
            to_big.push(idx);
        }
        Ok(SubgroupEmbedding { to_big })
    }
}

/// Restriction of a graded character along a subgroup embedding.
pub fn restrict_character(
    small: &FiniteGroup,
    big: &FiniteGroup,
    emb: &SubgroupEmbedding,
    chi: &GradedCharacter,
) -> GradedCharacter {
    let values = small
        .classes
        .iter()
        .map(|c| chi.values[big.class_of[emb.to_big[c[0]]]].clone())
        .collect();
    GradedCharacter { values }
}

/// Induction of a graded character along a subgroup embedding:
/// (ind chi)(g) = (1/|H|) sum over x in G with x^{-1} g x in H of chi(x^{-1} g x).
pub fn induce_character(
    small: &FiniteGroup,
    big: &FiniteGroup,
    emb: &SubgroupEmbedding,
    chi: &GradedCharacter,
) -> GradedCharacter {
    let mut in_image: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (si, &bi) in emb.to_big.iter().enumerate() {
        in_image.insert(bi, small.class_of[si]);
    }
    let hsize = rat(small.order() as i64);
    let values = big
        .classes
        .iter()
        .map(|c| {
            let z = c[0];
            let mut total = LaurentPoly::zero();
            for x in 0..big.order() {
                let conj = big.mul(big.mul(big.inv(x), z), x);
                if let Some(&hclass) = in_image.get(&conj) {
                    total = total.add(&chi.values[hclass]);
                }
            }
            total.scale(&(Rat::one() / &hsize))
        })
        .collect();
    GradedCharacter { values }
}

/// Frobenius inner product of graded characters, paired q-degreewise.
pub fn inner_product(
    g: &FiniteGroup,
    t: &CharacterTable,
    a: &GradedCharacter,
    b: &GradedCharacter,
) -> Rat {
    let mut s = Rat::zero();
    for j in 0..g.classes.len() {
        let p = a.values[j].pair(&b.values[t.inverse_class[j]]);
        s += rat(t.class_size[j] as i64) * p;
    }
    s / rat(g.order() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{preset, weyl_group};

    fn table_for(name: &str) -> (FiniteGroup, CharacterTable) {
        let rd = preset(name).unwrap();
        let w = weyl_group(&rd).unwrap();
        let t = character_table(&w).unwrap();
        (w, t)
    }

    #[test]
    fn s2_table() {
        let (_w, t) = table_for("A1 sc");
        assert_eq!(t.rows.len(), 2);
        let degs: Vec<Rat> = t.rows.iter().map(|r| r[t.id_class].clone()).collect();
        assert_eq!(degs, vec![rat(1), rat(1)]);
    }

    #[test]
    fn s3_table() {
        let (_w, t) = table_for("A2 sc");
        assert_eq!(t.rows.len(), 3);
        let mut degs: Vec<Rat> = t.rows.iter().map(|r| r[t.id_class].clone()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(2)]);
    }

    #[test]
    fn b2_and_g2_tables() {
        let (_w, t) = table_for("B2 sc");
        assert_eq!(t.rows.len(), 5);
        let mut degs: Vec<Rat> = t.rows.iter().map(|r| r[t.id_class].clone()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(1), rat(1), rat(2)]);
        let (_w, t) = table_for("G2");
        assert_eq!(t.rows.len(), 6);
        let mut degs: Vec<Rat> = t.rows.iter().map(|r| r[t.id_class].clone()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(1), rat(1), rat(2), rat(2)]);
    }

    #[test]
    fn s4_table() {
        let (_w, t) = table_for("A3 sc");
        assert_eq!(t.rows.len(), 5);
        let mut degs: Vec<Rat> = t.rows.iter().map(|r| r[t.id_class].clone()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(2), rat(3), rat(3)]);
    }

    #[test]
    fn sign_character_of_s2() {
        let rd = preset("A1 sc").unwrap();
        let w = weyl_group(&rd).unwrap();
        let sgn = sign_character(&w);
        let mut vals: Vec<Rat> = sgn.values.iter().map(|v| v.eval_one()).collect();
        vals.sort();
        assert_eq!(vals, vec![rat(-1), rat(1)]);
    }

    #[test]
    fn laurent_ops() {
        let p = LaurentPoly::monomial(rat(2), 1).add(&LaurentPoly::one());
        let q = LaurentPoly::monomial(rat(1), -1);
        let prod = p.mul(&q);
        assert_eq!(prod.coeffs.get(&0), Some(&rat(2)));
        assert_eq!(prod.coeffs.get(&-1), Some(&rat(1)));
        assert_eq!(p.pair(&p), rat(5));
    }

    #[test]
    fn induction_restriction_s2_in_s3() {
        let a2 = preset("A2 sc").unwrap();
        let wg = weyl_group(&a2).unwrap();
        let (levi, _) = crate::rootdata::levi_subdatum(&a2, &[a2.simple[0]]).unwrap();
        let wl = weyl_group(&levi).unwrap();
        let emb = SubgroupEmbedding::locate(&wl, &wg, |m| m.clone()).unwrap();
        let tl = character_table(&wl).unwrap();
        let tg = character_table(&wg).unwrap();
        // Ind of the trivial character has values {3, 1, 0}.
        let ind = induce_character(&wl, &wg, &emb, &trivial_character(wl.classes.len()));
        let mut vals: Vec<Rat> = ind.values.iter().map(|v| v.eval_one()).collect();
        vals.sort();
        assert_eq!(vals, vec![rat(0), rat(1), rat(3)]);
        // Frobenius reciprocity over the full irreducible bases.
        for row_l in &tl.rows {
            for row_g in &tg.rows {
                let chi = GradedCharacter::from_plain(row_l);
                let psi = GradedCharacter::from_plain(row_g);
                let lhs = inner_product(&wg, &tg, &induce_character(&wl, &wg, &emb, &chi), &psi);
                let rhs =
                    inner_product(&wl, &tl, &chi, &restrict_character(&wl, &wg, &emb, &psi));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn induction_from_trivial_group() {
        // T inside A1: inducing the trivial character gives the regular one.
        let a1 = preset("A1 sc").unwrap();
        let wg = weyl_group(&a1).unwrap();
        let (t, _) = crate::rootdata::levi_subdatum(&a1, &[]).unwrap();
        let wt = weyl_group(&t).unwrap();
        assert_eq!(wt.order(), 1);
        let emb = SubgroupEmbedding::locate(&wt, &wg, |m| m.clone()).unwrap();
        let ind = induce_character(&wt, &wg, &emb, &trivial_character(1));
        assert_eq!(ind, regular_character(&wg));
        // Graded variant: induction is degree-preserving.
        let ind_q = induce_character(&wt, &wg, &emb, &trivial_character(1).shift_q(3));
        assert_eq!(ind_q, regular_character(&wg).shift_q(3));
    }
}
