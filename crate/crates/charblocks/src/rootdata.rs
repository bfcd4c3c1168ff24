//! Root data, finite Weyl groups, Levi subdata, simple-type decompositions
//! and invariant bilinear forms.
//!
//! A root datum is normalized so that the cocharacter lattice is `ZZ^rank`
//! with the perfect pairing given by the dot product; roots are integer
//! functionals, coroots integer vectors. Named presets ("A2 sc", "GL(3)", ...)
//! are sugar; the isogeny type is carried entirely by the lattice.

use crate::num::*;
use crate::{Error, Result};
use num::{One, Signed, Zero};
use serde::Deserialize;
use std::collections::HashMap;

/// Cap on group closure, guarding against malformed input.
pub const GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub rank: usize,
    /// Roots as integer functionals on the cocharacter lattice ZZ^rank.
    pub roots: Vec<IVec>,
    /// Coroots, matched index-by-index with `roots`.
    pub coroots: Vec<IVec>,
    /// Indices of the chosen simple roots.
    pub simple: Vec<usize>,
    pub name: String,
}

impl RootDatum {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn root_index(&self, alpha: &[Int]) -> Option<usize> {
        self.roots.iter().position(|r| r == alpha)
    }

    /// Reflection matrix of root `i` acting on the cocharacter lattice.
    pub fn reflection(&self, i: usize) -> IMat {
        let alpha = &self.roots[i];
        let cov = &self.coroots[i];
        let mut m = IMat::identity(self.rank);
        for r in 0..self.rank {
            for c in 0..self.rank {
                let v = m.get(r, c) - &cov[r] * &alpha[c];
                m.set(r, c, v);
            }
        }
        m
    }

    /// Evaluate root `i` at a rational point of the apartment.
    pub fn eval_root(&self, i: usize, x: &[Rat]) -> Rat {
        pair_iq(&self.roots[i], x)
    }

    /// The permutation of root indices induced by a lattice automorphism,
    /// or None if the matrix does not permute the roots.
    pub fn root_permutation(&self, w: &IMat) -> Option<Vec<usize>> {
        // w acts on X_*; the root functional transforms by alpha -> alpha o w^{-1},
        // i.e. as a vector by (w^{-1})^T = (w^T)^{-1}.
        let wt_inv = w.transpose().inverse_unimodular();
        let mut perm = Vec::with_capacity(self.roots.len());
        for alpha in &self.roots {
            let img = wt_inv.mul_ivec(alpha);
            perm.push(self.root_index(&img)?);
        }
        Some(perm)
    }

    /// Central directions: the QQ-subspace on which every root vanishes.
    pub fn central_space(&self) -> Vec<QVec> {
        if self.roots.is_empty() {
            return Lattice::standard(self.rank).basis;
        }
        let rows: Vec<QVec> = self.roots.iter().map(|r| ivec_to_q(r)).collect();
        QMat::from_rows(&rows).kernel_basis()
    }

    /// Highest roots, one per simple factor of the derived group.
    pub fn highest_roots(&self) -> Vec<usize> {
        let dec = decompose_simples(self);
        dec.iter()
            .map(|factor| {
                // The highest root is the unique positive root whose sum of
                // base coordinates is maximal within the factor's span.
                let mut best: Option<(usize, Rat)> = None;
                for (i, _alpha) in self.roots.iter().enumerate() {
                    if let Some(coeffs) = base_coords(self, factor, i) {
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
                best.expect("factor without positive roots").0
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        if self.roots.len() != self.coroots.len() {
            return Err(Error::Invalid("roots and coroots must match in length".into()));
        }
        for (alpha, cov) in self.roots.iter().zip(&self.coroots) {
            if alpha.len() != n || cov.len() != n {
                return Err(Error::Invalid("root/coroot of wrong rank".into()));
            }
            if pair_ii(alpha, cov) != int(2) {
                return Err(Error::Invalid(format!(
                    "pairing <alpha, alpha^vee> != 2 for root {alpha:?}"
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for alpha in &self.roots {
            if alpha.iter().all(|x| x.is_zero()) {
                return Err(Error::Invalid("zero root".into()));
            }
            if !seen.insert(alpha.clone()) {
                return Err(Error::Invalid("duplicate root".into()));
            }
        }
        // Phi = -Phi and reflection closure.
        for alpha in &self.roots {
            let neg: IVec = alpha.iter().map(|x| -x.clone()).collect();
            if self.root_index(&neg).is_none() {
                return Err(Error::Invalid("root set not symmetric".into()));
            }
        }
        for i in 0..self.roots.len() {
            for j in 0..self.roots.len() {
                let c = pair_ii(&self.roots[j], &self.coroots[i]);
                let img: IVec = self
                    .roots[j]
                    .iter()
                    .zip(&self.roots[i])
                    .map(|(b, a)| b - &c * a)
                    .collect();
                if self.root_index(&img).is_none() {
                    return Err(Error::Invalid("reflection closure fails".into()));
                }
            }
        }
        for &s in &self.simple {
            if s >= self.roots.len() {
                return Err(Error::Invalid("simple index out of range".into()));
            }
        }
        // Simple roots form a base.
        if !self.roots.is_empty() {
            let base: Vec<QVec> = self.simple.iter().map(|&s| ivec_to_q(&self.roots[s])).collect();
            if QMat::from_rows(&base).rank() != base.len() {
                return Err(Error::Invalid("simple roots not independent".into()));
            }
            let m = QMat::from_cols(&base);
            for alpha in &self.roots {
                let coeffs = m
                    .solve(&ivec_to_q(alpha))
                    .ok_or_else(|| Error::Invalid("root outside simple span".into()))?;
                let all_nonneg = coeffs.iter().all(|c| !c.is_negative());
                let all_nonpos = coeffs.iter().all(|c| !c.is_positive());
                let integral = coeffs.iter().all(is_integer);
                if !(integral && (all_nonneg || all_nonpos)) {
                    return Err(Error::Invalid("simple set is not a base".into()));
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of root `i` in the given base, if it lies in the span.
pub(crate) fn base_coords(rd: &RootDatum, base: &[usize], i: usize) -> Option<QVec> {
    let cols: Vec<QVec> = base.iter().map(|&s| ivec_to_q(&rd.roots[s])).collect();
    let coeffs = QMat::from_cols(&cols).solve(&ivec_to_q(&rd.roots[i]))?;
    Some(coeffs)
}

/// Partition the simple roots into connected components of the Cartan graph.
pub(crate) fn decompose_simples(rd: &RootDatum) -> Vec<Vec<usize>> {
    let s = &rd.simple;
    let mut seen = vec![false; s.len()];
    let mut comps = Vec::new();
    for start in 0..s.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for j in 0..s.len() {
                if !seen[j] && pair_ii(&rd.roots[s[i]], &rd.coroots[s[j]]) != Int::zero() {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort();
        comps.push(comp.iter().map(|&k| s[k]).collect());
    }
    comps
}

// ---------------------------------------------------------------------------
// Finite groups of lattice automorphisms
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub elements: Vec<IMat>,
    pub generators: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub inverse_of: Vec<usize>,
    index: HashMap<Vec<Int>, usize>,
}

impl FiniteGroup {
    /// Closure of the generators under multiplication. Element 0 is the identity.
    pub fn from_generators(dim: usize, gens: &[IMat], cap: usize) -> Result<FiniteGroup> {
        let id = IMat::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.a.clone(), 0usize);
        let mut gen_idx = Vec::new();
        for g in gens {
            if !index.contains_key(&g.a) {
                index.insert(g.a.clone(), elements.len());
                elements.push(g.clone());
            }
            gen_idx.push(index[&g.a]);
        }
        let mut frontier: Vec<usize> = (0..elements.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e in &frontier {
                for g in gens {
                    let prod = elements[e].mul(g);
                    if !index.contains_key(&prod.a) {
                        if elements.len() >= cap {
                            return Err(Error::Limit(format!(
                                "group closure exceeded cap of {cap} elements"
                            )));
                        }
                        index.insert(prod.a.clone(), elements.len());
                        next.push(elements.len());
                        elements.push(prod);
                    }
                }
            }
            frontier = next;
        }
        let inverse_of: Vec<usize> = elements
            .iter()
            .map(|m| index[&m.inverse_unimodular().a])
            .collect();
        // Conjugacy classes by brute-force orbit refinement.
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for e in 0..elements.len() {
            if class_of[e] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut cls = Vec::new();
            for h in 0..elements.len() {
                let conj = elements[h].mul(&elements[e]).mul(&elements[inverse_of[h]]);
                let ci = index[&conj.a];
                if class_of[ci] == usize::MAX {
                    class_of[ci] = cid;
                    cls.push(ci);
                }
            }
            cls.sort();
            classes.push(cls);
        }
        Ok(FiniteGroup { elements, generators: gen_idx, classes, class_of, inverse_of, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn id(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let prod = self.elements[i].mul(&self.elements[j]);
        self.index[&prod.a]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse_of[i]
    }

    pub fn index_of(&self, m: &IMat) -> Option<usize> {
        self.index.get(&m.a).copied()
    }

    /// Indices of the subgroup generated by the given elements.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(self.id());
        let mut frontier = vec![self.id()];
        while let Some(e) = frontier.pop() {
            for &g in gens {
                let p = self.mul(e, g);
                if seen.insert(p) {
                    frontier.push(p);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort();
        v
    }
}

/// The Weyl group of a root datum, generated by the simple reflections.
pub fn weyl_group(rd: &RootDatum) -> Result<FiniteGroup> {
    let gens: Vec<IMat> = rd.simple.iter().map(|&i| rd.reflection(i)).collect();
    let g = FiniteGroup::from_generators(rd.rank, &gens, GROUP_CAP)?;
    // Every element must permute the coroots.
    for w in &g.elements {
        for cov in &rd.coroots {
            let img = w.mul_ivec(cov);
            if !rd.coroots.contains(&img) {
                return Err(Error::Invalid("Weyl element does not permute coroots".into()));
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Levi subdata
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LeviEmbedding {
    /// For each root of the Levi, its index in the ambient datum.
    pub root_map: Vec<usize>,
    /// The defining subset of ambient simple indices.
    pub simple_subset: Vec<usize>,
}

/// Sub-root-datum generated by a subset of the simple roots. Lattices are
/// unchanged; the Levi root system is the rational closure of the subset.
pub fn levi_subdatum(rd: &RootDatum, subset: &[usize]) -> Result<(RootDatum, LeviEmbedding)> {
    for &s in subset {
        if !rd.simple.contains(&s) {
            return Err(Error::Invalid(format!("index {s} is not a simple root")));
        }
    }
    let span: Vec<QVec> = subset.iter().map(|&s| ivec_to_q(&rd.roots[s])).collect();
    let mut root_map = Vec::new();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (i, alpha) in rd.roots.iter().enumerate() {
        let in_span = if span.is_empty() {
            false
        } else {
            QMat::from_cols(&span).solve(&ivec_to_q(alpha)).is_some()
        };
        if in_span {
            root_map.push(i);
            roots.push(alpha.clone());
            coroots.push(rd.coroots[i].clone());
        }
    }
    let simple: Vec<usize> = subset
        .iter()
        .map(|&s| root_map.iter().position(|&i| i == s).unwrap())
        .collect();
    let sub = RootDatum {
        rank: rd.rank,
        roots,
        coroots,
        simple,
        name: format!("{}|levi{:?}", rd.name, subset),
    };
    sub.validate()?;
    Ok((sub, LeviEmbedding { root_map, simple_subset: subset.to_vec() }))
}

// ---------------------------------------------------------------------------
// Simple-type decomposition with lattice keys
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    Torus,
    A(usize),
    /// Rank-2 double bond; B2 and C2 coincide here.
    B2,
    G2,
}

impl std::fmt::Display for CartanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CartanType::Torus => write!(f, "T"),
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B2 => write!(f, "B2"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// One simple factor of a reflection-closed root subset.
#[derive(Clone, Debug)]
pub struct SimpleFactor {
    pub cartan: CartanType,
    pub rank: usize,
    /// Order of the factor's coweight classes modulo the cocharacter lattice
    /// and the directions transverse to the factor; this is the "lattice key"
    /// used for classification lookups.
    pub escape_order: Int,
    /// Simple roots of the factor, as indices into the ambient root list.
    pub simple_roots: Vec<usize>,
    /// Fundamental coweights of the factor (dual to its simple roots within
    /// its coroot span).
    pub coweights: Vec<QVec>,
}

impl SimpleFactor {
    pub fn lattice_key(&self) -> String {
        self.escape_order.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<SimpleFactor>,
    pub central_rank: usize,
    /// Root indices of the subset being decomposed.
    pub subset: Vec<usize>,
}

impl Decomposition {
    pub fn type_string(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| format!("{}[{}]", f.cartan, f.lattice_key()))
            .collect();
        if self.central_rank > 0 {
            parts.push(format!("T^{}", self.central_rank));
        }
        if parts.is_empty() {
            parts.push("T^0".into());
        }
        parts.join("x")
    }
}

/// Check that a root subset is closed under its own reflections.
pub fn is_reflection_closed(rd: &RootDatum, subset: &[usize]) -> bool {
    for &i in subset {
        for &j in subset {
            let c = pair_ii(&rd.roots[j], &rd.coroots[i]);
            let img: IVec = rd.roots[j]
                .iter()
                .zip(&rd.roots[i])
                .map(|(b, a)| b - &c * a)
                .collect();
            match rd.root_index(&img) {
                Some(k) if subset.contains(&k) => {}
                _ => return false,
            }
        }
    }
    true
}

/// A simple system for a reflection-closed subset: pick a deterministic
/// generic functional, take indecomposable positive roots.
pub fn simple_system(rd: &RootDatum, subset: &[usize]) -> Vec<usize> {
    if subset.is_empty() {
        return Vec::new();
    }
    // Deterministic generic functional: (1, t, t^2, ...) with t growing until
    // no root in the subset vanishes.
    let mut t = int(3);
    let f: IVec = loop {
        let mut f = Vec::with_capacity(rd.rank);
        let mut p = Int::one();
        for _ in 0..rd.rank {
            f.push(p.clone());
            p *= &t;
        }
        if subset.iter().all(|&i| {
            rd.roots[i].iter().zip(&f).map(|(a, b)| a * b).sum::<Int>() != Int::zero()
        }) {
            break f;
        }
        t += 1;
    };
    let positives: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&i| {
            rd.roots[i].iter().zip(&f).map(|(a, b)| a * b).sum::<Int>() > Int::zero()
        })
        .collect();
    positives
        .iter()
        .copied()
        .filter(|&i| {
            // i is simple iff it is not the sum of two positives.
            !positives.iter().any(|&j| {
                positives.iter().any(|&k| {
                    let sum: IVec =
                        rd.roots[j].iter().zip(&rd.roots[k]).map(|(a, b)| a + b).collect();
                    sum == rd.roots[i]
                })
            })
        })
        .collect()
}

/// Decompose a reflection-closed subset into simple factors plus central rank,
/// computing per-factor lattice keys.
pub fn simple_type_decomposition(rd: &RootDatum, subset: &[usize]) -> Result<Decomposition> {
    if !is_reflection_closed(rd, subset) {
        return Err(Error::Invalid("subset not reflection-closed".into()));
    }
    let simples = simple_system(rd, subset);
    // Connected components of the Cartan graph on `simples`.
    let mut seen = vec![false; simples.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..simples.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for j in 0..simples.len() {
                if !seen[j]
                    && pair_ii(&rd.roots[simples[i]], &rd.coroots[simples[j]]) != Int::zero()
                {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comps.push(comp.iter().map(|&k| simples[k]).collect());
    }
    let span_rank = if subset.is_empty() {
        0
    } else {
        QMat::from_rows(&subset.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect::<Vec<_>>())
            .rank()
    };
    let central_rank = rd.rank - span_rank;

    let mut factors = Vec::new();
    for comp in &comps {
        let (cartan, ordered) = detect_type(rd, comp)?;
        let coweights = factor_coweights(rd, &ordered);
        let escape_order = factor_escape_order(rd, &ordered, &coweights, subset)?;
        factors.push(SimpleFactor {
            cartan,
            rank: ordered.len(),
            escape_order,
            simple_roots: ordered,
            coweights,
        });
    }
    factors.sort_by(|a, b| {
        (&a.cartan, a.rank, a.escape_order.clone(), a.simple_roots.clone()).cmp(&(
            &b.cartan,
            b.rank,
            b.escape_order.clone(),
            b.simple_roots.clone(),
        ))
    });
    Ok(Decomposition { factors, central_rank, subset: subset.to_vec() })
}

/// Identify the Cartan type of a connected simple system and return the
/// simples in the canonical order for that type.
fn detect_type(rd: &RootDatum, comp: &[usize]) -> Result<(CartanType, Vec<usize>)> {
    let n = comp.len();
    let cartan = |i: usize, j: usize| pair_ii(&rd.roots[comp[j]], &rd.coroots[comp[i]]);
    match n {
        1 => Ok((CartanType::A(1), comp.to_vec())),
        2 => {
            let c12 = cartan(0, 1);
            let c21 = cartan(1, 0);
            let prod = (&c12 * &c21).abs();
            if prod == Int::one() {
                Ok((CartanType::A(2), comp.to_vec()))
            } else if prod == int(2) {
                // Canonical order: first root long, i.e. <a1, a2^vee> = -2.
                if cartan(1, 0) == int(-2) {
                    Ok((CartanType::B2, comp.to_vec()))
                } else {
                    Ok((CartanType::B2, vec![comp[1], comp[0]]))
                }
            } else if prod == int(3) {
                // Canonical order: first root short, i.e. <a2, a1^vee> = -3.
                if cartan(0, 1) == int(-3) {
                    Ok((CartanType::G2, comp.to_vec()))
                } else {
                    Ok((CartanType::G2, vec![comp[1], comp[0]]))
                }
            } else {
                Err(Error::DataAbsent(format!("rank-2 type with bond {prod}")))
            }
        }
        _ => {
            // Type A chain detection: every node degree <= 2, all bonds single.
            let mut deg = vec![0usize; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j && cartan(i, j) != Int::zero() {
                        if (cartan(i, j) * cartan(j, i)).abs() != Int::one() {
                            return Err(Error::DataAbsent(format!(
                                "non-simply-laced type of rank {n}"
                            )));
                        }
                        deg[i] += 1;
                    }
                }
            }
            if deg.iter().any(|&d| d > 2) || deg.iter().filter(|&&d| d == 1).count() != 2 {
                return Err(Error::DataAbsent(format!("branched diagram of rank {n}")));
            }
            // Order along the chain starting from the smaller endpoint.
            let mut ends: Vec<usize> =
                (0..n).filter(|&i| deg[i] == 1).collect();
            ends.sort_by_key(|&i| comp[i]);
            let mut order = vec![ends[0]];
            let mut prev = usize::MAX;
            while order.len() < n {
                let cur = *order.last().unwrap();
                let next = (0..n)
                    .find(|&j| j != prev && j != cur && cartan(cur, j) != Int::zero())
                    .expect("chain is connected");
                prev = cur;
                order.push(next);
            }
            Ok((CartanType::A(n), order.iter().map(|&i| comp[i]).collect()))
        }
    }
}

/// Fundamental coweights of a factor: vectors in the coroot span pairing
/// dually with the factor's simple roots.
pub(crate) fn factor_coweights(rd: &RootDatum, simples: &[usize]) -> Vec<QVec> {
    let coroot_span: Vec<QVec> = simples.iter().map(|&i| ivec_to_q(&rd.coroots[i])).collect();
    let b = QMat::from_cols(&coroot_span);
    // x = B t with <alpha_j, x> = delta_{ij}: rows alpha_j * B.
    let rows: Vec<QVec> = simples
        .iter()
        .map(|&j| b.transpose().mul_qvec(&ivec_to_q(&rd.roots[j])))
        .collect();
    let a = QMat::from_rows(&rows);
    let ainv = a.inverse().expect("Cartan matrix of a factor is invertible");
    (0..simples.len())
        .map(|i| {
            let t = ainv.col(i);
            b.mul_qvec(&t)
        })
        .collect()
}

/// Order of the coweight class group of a factor modulo the cocharacter
/// lattice and all transverse directions (centre of the subset plus the other
/// factors' coroot spans). This quotient is what controls equivariant
/// fundamental-group data on the factor, so it distinguishes e.g. an SL2-type
/// position from a GL2-type one.
fn factor_escape_order(
    rd: &RootDatum,
    simples: &[usize],
    coweights: &[QVec],
    subset: &[usize],
) -> Result<Int> {
    // Transverse space: kernel of all factor roots... no: span of other
    // factors' coroots plus the centre = kernel of the factor's own roots
    // intersected with nothing else. A vector is transverse iff it pairs to
    // zero with every root of this factor.
    // factor roots: all roots in subset lying in the factor span.
    let fac_span: Vec<QVec> = simples.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
    let span_mat = QMat::from_cols(&fac_span);
    let fac_roots: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&i| span_mat.solve(&ivec_to_q(&rd.roots[i])).is_some())
        .collect();
    let c_rows: Vec<QVec> = fac_roots.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
    let c = QMat::from_rows(&c_rows);
    // Quotient map modulo ker(c): represent classes by the values of the
    // factor's roots. X_* maps to the lattice generated by c * e_i.
    let std = Lattice::standard(rd.rank);
    let xstar_img: Vec<QVec> = std.basis.iter().map(|e| c.mul_qvec(e)).collect();
    let big_gens: Vec<QVec> = xstar_img
        .iter()
        .cloned()
        .chain(coweights.iter().map(|w| c.mul_qvec(w)))
        .collect();
    let big = Lattice::from_generators(c.rows, &big_gens);
    let q = FiniteQuotient::new(&big, &xstar_img);
    Ok(q.order())
}

// ---------------------------------------------------------------------------
// Invariant form
// ---------------------------------------------------------------------------

/// W-invariant positive-definite symmetric form on the apartment, normalized
/// so each simple factor's short coroots have squared length 2 and a chosen
/// basis of the central cocharacter lattice is orthonormal.
pub fn invariant_form(rd: &RootDatum) -> QMat {
    let n = rd.rank;
    let mut form = QMat::zero(n, n);
    // Per-factor: scaled sum of alpha alpha^T over the factor's roots.
    let dec = simple_type_decomposition(rd, &(0..rd.num_roots()).collect::<Vec<_>>())
        .expect("full root set is reflection-closed");
    for factor in &dec.factors {
        let fac_span: Vec<QVec> =
            factor.simple_roots.iter().map(|&i| ivec_to_q(&rd.roots[i])).collect();
        let span_mat = QMat::from_cols(&fac_span);
        let fac_roots: Vec<usize> = (0..rd.num_roots())
            .filter(|&i| span_mat.solve(&ivec_to_q(&rd.roots[i])).is_some())
            .collect();
        let mut b0 = QMat::zero(n, n);
        for &i in &fac_roots {
            for r in 0..n {
                for c in 0..n {
                    let v = b0.get(r, c) + rat_of(&rd.roots[i][r]) * rat_of(&rd.roots[i][c]);
                    b0.set(r, c, v);
                }
            }
        }
        // Scale so the shortest coroot in the factor has squared length 2.
        let mut min_len: Option<Rat> = None;
        for &i in &fac_roots {
            let cv = ivec_to_q(&rd.coroots[i]);
            let l = qvec_dot(&b0.mul_qvec(&cv), &cv);
            min_len = match min_len {
                None => Some(l),
                Some(m) => Some(if l < m { l } else { m }),
            };
        }
        let scale = rat(2) / min_len.unwrap();
        for r in 0..n {
            for c in 0..n {
                let v = form.get(r, c) + &scale * b0.get(r, c);
                form.set(r, c, v);
            }
        }
    }
    // Central part: dual functionals of a basis of the central cocharacter
    // lattice, vanishing on the coroot span.
    let central = rd.central_space();
    if !central.is_empty() {
        let zbasis = if rd.roots.is_empty() {
            Lattice::standard(n).basis
        } else {
            Lattice::standard(n)
                .intersect_kernel(&QMat::from_rows(
                    &rd.roots.iter().map(|r| ivec_to_q(r)).collect::<Vec<_>>(),
                ))
                .basis
        };
        // Full basis: central basis then coroot-span basis.
        let mut full = zbasis.clone();
        let coroot_span: Vec<QVec> = rd.coroots.iter().map(|c| ivec_to_q(c)).collect();
        let mut cs_basis = Vec::new();
        for v in &coroot_span {
            let mut probe = full.clone();
            probe.extend(cs_basis.iter().cloned());
            probe.push(v.clone());
            if QMat::from_rows(&probe).rank() == probe.len() {
                cs_basis.push(v.clone());
            }
        }
        full.extend(cs_basis);
        let basis_mat = QMat::from_cols(&full);
        let inv = basis_mat.inverse().expect("basis");
        // Dual functional of central basis vector i is row i of the inverse.
        for i in 0..zbasis.len() {
            let zeta = inv.row(i);
            for r in 0..n {
                for c in 0..n {
                    let v = form.get(r, c) + &zeta[r] * &zeta[c];
                    form.set(r, c, v);
                }
            }
        }
    }
    form
}

// ---------------------------------------------------------------------------
// Parsing and presets
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct SpecFile {
    format: u32,
    #[serde(rename = "type")]
    type_name: Option<String>,
    name: Option<String>,
    rank: Option<usize>,
    roots: Option<Vec<Vec<i64>>>,
    coroots: Option<Vec<Vec<i64>>>,
    simple: Option<Vec<usize>>,
    pairing: Option<Vec<Vec<i64>>>,
}

/// Parse a root-datum spec: either a preset name or an explicit datum.
pub fn parse_root_datum(text: &str) -> Result<RootDatum> {
    let spec: SpecFile =
        toml::from_str(text).map_err(|e| Error::Parse(format!("root datum spec: {e}")))?;
    if spec.format != 1 {
        return Err(Error::Parse(format!("unsupported format {}", spec.format)));
    }
    let mut rd = if let Some(t) = &spec.type_name {
        preset(t)?
    } else {
        explicit_datum(&spec)?
    };
    if let Some(name) = spec.name {
        rd.name = name;
    }
    Ok(rd)
}

fn explicit_datum(spec: &SpecFile) -> Result<RootDatum> {
    let rank = spec.rank.ok_or_else(|| Error::Parse("explicit spec needs rank".into()))?;
    let roots_raw =
        spec.roots.as_ref().ok_or_else(|| Error::Parse("explicit spec needs roots".into()))?;
    let coroots_raw = spec
        .coroots
        .as_ref()
        .ok_or_else(|| Error::Parse("explicit spec needs coroots".into()))?;
    // Perfect pairing: optional integer unimodular matrix, default identity.
    let pairing = match &spec.pairing {
        Some(rows) => {
            let m = IMat::from_rows(&rows.iter().map(|r| ivec(r)).collect::<Vec<_>>());
            if m.rows != rank || m.cols != rank {
                return Err(Error::Parse("pairing matrix has wrong shape".into()));
            }
            if m.det().abs() != Int::one() {
                return Err(Error::Invalid("pairing is not perfect".into()));
            }
            m
        }
        None => IMat::identity(rank),
    };
    // Normalize: <x, y>_P = x^T P y becomes (P^T x) . y.
    let pt = pairing.transpose();
    let roots: Vec<IVec> = roots_raw.iter().map(|r| pt.mul_ivec(&ivec(r))).collect();
    let coroots: Vec<IVec> = coroots_raw.iter().map(|r| ivec(r)).collect();
    let simple = match &spec.simple {
        Some(s) => s.clone(),
        None => infer_simple(&roots)?,
    };
    let rd = RootDatum { rank, roots, coroots, simple, name: "explicit".into() };
    rd.validate()?;
    Ok(rd)
}

fn infer_simple(roots: &[IVec]) -> Result<Vec<usize>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let tmp = RootDatum {
        rank: roots[0].len(),
        roots: roots.to_vec(),
        coroots: roots.to_vec(),
        simple: vec![],
        name: String::new(),
    };
    Ok(simple_system(&tmp, &(0..roots.len()).collect::<Vec<_>>()))
}

/// Construct a named preset. Products combine with " x ".
pub fn preset(name: &str) -> Result<RootDatum> {
    let parts: Vec<&str> = name.split(" x ").collect();
    if parts.len() > 1 {
        let data: Result<Vec<RootDatum>> = parts.iter().map(|p| preset(p.trim())).collect();
        return Ok(product(&data?, name));
    }
    let name = name.trim();
    if let Some(inner) = name.strip_prefix("GL(").and_then(|s| s.strip_suffix(")")) {
        let n: usize =
            inner.parse().map_err(|_| Error::Parse(format!("bad GL size {inner}")))?;
        if n == 0 {
            return Err(Error::Parse("GL(0) is empty".into()));
        }
        return Ok(gl(n));
    }
    let (cartan, isogeny) = match name.split_once(' ') {
        Some((c, i)) => (c, i),
        None => (name, "sc"),
    };
    let a: IMat = match cartan {
        "A1" => IMat::from_rows(&[ivec(&[2])]),
        "A2" => IMat::from_rows(&[ivec(&[2, -1]), ivec(&[-1, 2])]),
        "A3" => IMat::from_rows(&[ivec(&[2, -1, 0]), ivec(&[-1, 2, -1]), ivec(&[0, -1, 2])]),
        "B2" => IMat::from_rows(&[ivec(&[2, -2]), ivec(&[-1, 2])]),
        "C2" => IMat::from_rows(&[ivec(&[2, -1]), ivec(&[-2, 2])]),
        "G2" => IMat::from_rows(&[ivec(&[2, -1]), ivec(&[-3, 2])]),
        _ => return Err(Error::Parse(format!("unknown Cartan type {cartan}"))),
    };
    let sc = simply_connected(&a, name)?;
    match isogeny {
        "sc" => Ok(sc),
        "ad" => {
            // Adjoint lattice: all fundamental coweights.
            let r = sc.rank;
            let dec = simple_type_decomposition(&sc, &(0..sc.num_roots()).collect::<Vec<_>>())?;
            let mut extra = Vec::new();
            for f in &dec.factors {
                extra.extend(f.coweights.clone());
            }
            with_lattice(&sc, &extra, &format!("{cartan} ad")).map(|mut rd| {
                rd.rank = r;
                rd
            })
        }
        "semi" => {
            // Intermediate lattice for A3: adjoin the minuscule coweight of
            // order two (kernel mu_2 of the center).
            if cartan != "A3" {
                return Err(Error::Parse(format!("no intermediate isogeny for {cartan}")));
            }
            let dec = simple_type_decomposition(&sc, &(0..sc.num_roots()).collect::<Vec<_>>())?;
            let w2 = dec.factors[0].coweights[1].clone();
            with_lattice(&sc, &[w2], "A3 semi")
        }
        _ => Err(Error::Parse(format!("unknown isogeny {isogeny}"))),
    }
}

fn gl(n: usize) -> RootDatum {
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![Int::zero(); n];
                v[i] = Int::one();
                v[j] = -Int::one();
                roots.push(v.clone());
                coroots.push(v);
            }
        }
    }
    let simple = (0..n.saturating_sub(1))
        .map(|i| {
            roots
                .iter()
                .position(|r| {
                    r.iter().enumerate().all(|(k, x)| {
                        if k == i {
                            *x == Int::one()
                        } else if k == i + 1 {
                            *x == -Int::one()
                        } else {
                            x.is_zero()
                        }
                    })
                })
                .unwrap()
        })
        .collect();
    let rd =
        RootDatum { rank: n, roots, coroots, simple, name: format!("GL({n})") };
    rd.validate().expect("GL preset is valid");
    rd
}

/// Simply-connected datum from a Cartan matrix: cocharacter lattice is the
/// coroot lattice with the simple coroots as standard basis.
fn simply_connected(a: &IMat, name: &str) -> Result<RootDatum> {
    let r = a.rows;
    let mut roots: Vec<IVec> = Vec::new();
    let mut coroots: Vec<IVec> = Vec::new();
    for i in 0..r {
        roots.push(a.row(i));
        let mut cv = vec![Int::zero(); r];
        cv[i] = Int::one();
        coroots.push(cv);
    }
    // Reflection closure of matched pairs.
    let mut changed = true;
    while changed {
        changed = false;
        let cur: Vec<(IVec, IVec)> =
            roots.iter().cloned().zip(coroots.iter().cloned()).collect();
        for i in 0..r {
            for (alpha, cov) in &cur {
                let c = pair_ii(alpha, &coroots[i]);
                let new_root: IVec =
                    alpha.iter().zip(&roots[i]).map(|(b, s)| b - &c * s).collect();
                let c2 = pair_ii(&roots[i], cov);
                let new_cov: IVec =
                    cov.iter().zip(&coroots[i]).map(|(b, s)| b - &c2 * s).collect();
                if !roots.contains(&new_root) {
                    roots.push(new_root);
                    coroots.push(new_cov);
                    changed = true;
                }
            }
        }
        if roots.len() > 1000 {
            return Err(Error::Limit("root closure exceeded 1000".into()));
        }
    }
    let simple = (0..r)
        .map(|i| roots.iter().position(|x| *x == a.row(i)).unwrap())
        .collect();
    let rd = RootDatum { rank: r, roots, coroots, simple, name: format!("{name} sc") };
    rd.validate()?;
    Ok(rd)
}

/// Re-coordinatize onto the lattice generated by the current lattice plus
/// extra rational coweights. Roots must stay integral on the new lattice.
pub fn with_lattice(rd: &RootDatum, extra: &[QVec], name: &str) -> Result<RootDatum> {
    let mut gens = Lattice::standard(rd.rank).basis;
    gens.extend(extra.iter().cloned());
    let lat = Lattice::from_generators(rd.rank, &gens);
    if lat.rank() != rd.rank {
        return Err(Error::Invalid("lattice extension degenerate".into()));
    }
    let b = QMat::from_cols(&lat.basis);
    let binv = b.inverse().expect("basis invertible");
    let conv_vec = |v: &IVec| -> Result<IVec> {
        let nv = binv.mul_qvec(&ivec_to_q(v));
        if !nv.iter().all(is_integer) {
            return Err(Error::Invalid("coroot not in new lattice".into()));
        }
        Ok(nv.iter().map(|x| x.numer().clone()).collect())
    };
    let conv_fun = |f: &IVec| -> Result<IVec> {
        let nf = b.transpose().mul_qvec(&ivec_to_q(f));
        if !nf.iter().all(is_integer) {
            return Err(Error::Invalid(
                "root does not take integer values on new lattice".into(),
            ));
        }
        Ok(nf.iter().map(|x| x.numer().clone()).collect())
    };
    let coroots: Result<Vec<IVec>> = rd.coroots.iter().map(conv_vec).collect();
    let roots: Result<Vec<IVec>> = rd.roots.iter().map(conv_fun).collect();
    let out = RootDatum {
        rank: rd.rank,
        roots: roots?,
        coroots: coroots?,
        simple: rd.simple.clone(),
        name: name.into(),
    };
    out.validate()?;
    Ok(out)
}

fn product(data: &[RootDatum], name: &str) -> RootDatum {
    let rank: usize = data.iter().map(|d| d.rank).sum();
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut simple = Vec::new();
    let mut offset = 0;
    for d in data {
        let base = roots.len();
        for (alpha, cov) in d.roots.iter().zip(&d.coroots) {
            let mut a = vec![Int::zero(); rank];
            let mut c = vec![Int::zero(); rank];
            for k in 0..d.rank {
                a[offset + k] = alpha[k].clone();
                c[offset + k] = cov[k].clone();
            }
            roots.push(a);
            coroots.push(c);
        }
        simple.extend(d.simple.iter().map(|s| base + s));
        offset += d.rank;
    }
    let rd = RootDatum { rank, roots, coroots, simple, name: name.into() };
    rd.validate().expect("product of valid data is valid");
    rd
}

/// Shipped fundamental degrees per Cartan type; the product over degrees is
/// the Weyl group order.
pub fn fundamental_degrees(t: &CartanType) -> Vec<usize> {
    match t {
        CartanType::Torus => vec![],
        CartanType::A(n) => (2..=(n + 1)).collect(),
        CartanType::B2 => vec![2, 4],
        CartanType::G2 => vec![2, 6],
    }
}

/// Weyl order predicted by the degrees table for the full root system.
pub fn predicted_weyl_order(rd: &RootDatum) -> Result<Int> {
    let dec = simple_type_decomposition(rd, &(0..rd.num_roots()).collect::<Vec<_>>())?;
    let mut o = Int::one();
    for f in &dec.factors {
        for d in fundamental_degrees(&f.cartan) {
            o *= int(d as i64);
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(name: &str) -> RootDatum {
        preset(name).unwrap()
    }

    #[test]
    fn presets_validate() {
        for name in [
            "GL(1)", "GL(2)", "GL(3)", "A1 sc", "A1 ad", "A2 sc", "A2 ad", "A3 sc", "A3 ad",
            "A3 semi", "B2 sc", "B2 ad", "C2 sc", "C2 ad", "G2", "A1 sc x GL(1)",
        ] {
            let d = rd(name);
            d.validate().unwrap();
        }
    }

    #[test]
    fn a1_presets_match_spec_examples() {
        let sc = rd("A1 sc");
        assert_eq!(sc.rank, 1);
        assert_eq!(sc.num_roots(), 2);
        assert_eq!(sc.roots[sc.simple[0]], ivec(&[2]));
        assert_eq!(sc.coroots[sc.simple[0]], ivec(&[1]));
        let torus = rd("GL(1)");
        assert_eq!(torus.rank, 1);
        assert!(torus.is_torus());
        // Adjoint: the coroot is 2 in the basis alpha^vee/2, root evaluates 1.
        let ad = rd("A1 ad");
        assert_eq!(ad.coroots[ad.simple[0]], ivec(&[2]));
        assert_eq!(ad.roots[ad.simple[0]], ivec(&[1]));
    }

    #[test]
    fn weyl_orders_match_degree_table() {
        for (name, order) in
            [("A1 sc", 2usize), ("A2 sc", 6), ("B2 sc", 8), ("C2 ad", 8), ("G2", 12), ("A3 ad", 24)]
        {
            let d = rd(name);
            let w = weyl_group(&d).unwrap();
            assert_eq!(w.order(), order, "{name}");
            assert_eq!(int(order as i64), predicted_weyl_order(&d).unwrap(), "{name}");
        }
    }

    #[test]
    fn weyl_elements_permute_roots() {
        for name in ["A2 ad", "B2 sc", "G2"] {
            let d = rd(name);
            let w = weyl_group(&d).unwrap();
            for el in &w.elements {
                assert!(d.root_permutation(el).is_some());
            }
        }
    }

    #[test]
    fn levi_examples() {
        let a2 = rd("A2 sc");
        let (levi, emb) = levi_subdatum(&a2, &[a2.simple[0]]).unwrap();
        assert_eq!(levi.num_roots(), 2);
        assert_eq!(emb.root_map.len(), 2);
        let a1 = rd("A1 sc");
        let (torus, _) = levi_subdatum(&a1, &[]).unwrap();
        assert!(torus.is_torus());
        // B2 short-simple Levi: 2 roots, and rational closure holds.
        let b2 = rd("B2 sc");
        let short = b2.simple[1];
        let (levi, emb) = levi_subdatum(&b2, &[short]).unwrap();
        assert_eq!(levi.num_roots(), 2);
        // Brute-force closure: span cap Phi = Phi_L.
        let span: Vec<QVec> = vec![ivec_to_q(&b2.roots[short])];
        let m = QMat::from_cols(&span);
        let in_span: Vec<usize> = (0..b2.num_roots())
            .filter(|&i| m.solve(&ivec_to_q(&b2.roots[i])).is_some())
            .collect();
        assert_eq!(in_span.len(), emb.root_map.len());
    }

    #[test]
    fn decomposition_examples() {
        // Torus.
        let t = rd("GL(1)");
        let dec = simple_type_decomposition(&t, &[]).unwrap();
        assert!(dec.factors.is_empty());
        assert_eq!(dec.central_rank, 1);
        // Full A1 sc: key is the order-2 quotient.
        let a1 = rd("A1 sc");
        let dec = simple_type_decomposition(&a1, &[0, 1]).unwrap();
        assert_eq!(dec.factors.len(), 1);
        assert_eq!(dec.factors[0].cartan, CartanType::A(1));
        assert_eq!(dec.factors[0].escape_order, int(2));
        // A1-Levi inside A2 sc: GL2-type position, key 1, central rank 1.
        let a2 = rd("A2 sc");
        let sub: Vec<usize> = {
            let s0 = a2.simple[0];
            let neg: IVec = a2.roots[s0].iter().map(|x| -x.clone()).collect();
            vec![s0, a2.root_index(&neg).unwrap()]
        };
        let dec = simple_type_decomposition(&a2, &sub).unwrap();
        assert_eq!(dec.central_rank, 1);
        assert_eq!(dec.factors[0].escape_order, int(1));
    }

    #[test]
    fn escape_orders_distinguish_isogenies() {
        // Full system of A1 ad: adjoint position, key 1.
        let ad = rd("A1 ad");
        let dec = simple_type_decomposition(&ad, &[0, 1]).unwrap();
        assert_eq!(dec.factors[0].escape_order, int(1));
        // Full system of A2 sc: key 3.
        let a2 = rd("A2 sc");
        let all: Vec<usize> = (0..a2.num_roots()).collect();
        let dec = simple_type_decomposition(&a2, &all).unwrap();
        assert_eq!(dec.factors[0].escape_order, int(3));
        // GL(3): key 1 (the centre of SL3 sits inside the central torus).
        let gl3 = rd("GL(3)");
        let all: Vec<usize> = (0..gl3.num_roots()).collect();
        let dec = simple_type_decomposition(&gl3, &all).unwrap();
        assert_eq!(dec.factors[0].escape_order, int(1));
    }

    #[test]
    fn invariant_form_examples() {
        let a1 = rd("A1 sc");
        let f = invariant_form(&a1);
        let cv = ivec_to_q(&a1.coroots[0]);
        assert_eq!(qvec_dot(&f.mul_qvec(&cv), &cv), rat(2));
        let gl1 = rd("GL(1)");
        assert_eq!(invariant_form(&gl1), QMat::identity(1));
        // B2: exact invariance under all 8 elements.
        let b2 = rd("B2 sc");
        let f = invariant_form(&b2);
        let w = weyl_group(&b2).unwrap();
        for el in &w.elements {
            let m = el.to_qmat();
            let transported = m.transpose().mul(&f).mul(&m);
            assert_eq!(transported, f);
        }
    }

    #[test]
    fn explicit_spec_roundtrip() {
        let text = r#"
format = 1
rank = 1
roots = [[2], [-2]]
coroots = [[1], [-1]]
simple = [0]
"#;
        let rd = parse_root_datum(text).unwrap();
        assert_eq!(rd.num_roots(), 2);
        let bad = r#"
format = 1
rank = 1
roots = [[2]]
coroots = [[1]]
simple = [0]
"#;
        assert!(parse_root_datum(bad).is_err());
    }

    #[test]
    fn preset_keyword() {
        let rd = parse_root_datum("format = 1\ntype = \"A2 sc\"\n").unwrap();
        assert_eq!(rd.num_roots(), 6);
    }

    #[test]
    fn b2_and_c2_sc_are_isomorphic_counts() {
        let b = rd("B2 sc");
        let c = rd("C2 sc");
        assert_eq!(b.num_roots(), c.num_roots());
        assert_eq!(weyl_group(&b).unwrap().order(), weyl_group(&c).unwrap().order());
    }
}
