//! Finite-dimensional Lie algebras as named bases with sparse structure
//! constants, invariant pairings, the Casimir element `t` and the Cartan
//! trivector φ.

use crate::linalg::{self, Mat};
use crate::rational::{rat, Rat};
use crate::{Error, Result};
use crate::jet::Scalar;
use std::collections::BTreeMap;

/// Lie algebra with `[e_i, e_j] = Σ_k c^k_{ij} e_k`; the table stores `i < j`
/// only, antisymmetry is built in.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSC {
    names: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl LieAlgebraSC {
    pub fn new<S: Into<String>>(
        names: Vec<S>,
        brackets: Vec<((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let dim = names.len();
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
        for ((i, j), entry) in brackets {
            if i >= dim || j >= dim || entry.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::InvalidInput("bracket index out of range".into()));
            }
            if i == j {
                if entry.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::InvalidInput("nonzero bracket [e_i, e_i]".into()));
                }
                continue;
            }
            let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
            let dest = table.entry(key).or_default();
            for (k, c) in entry {
                let c = if flip { -c } else { c };
                merge_entry(dest, k, c);
            }
        }
        table.retain(|_, v| !v.is_empty());
        Ok(LieAlgebraSC { names, table })
    }

    /// Build from explicit matrix representatives of a basis: the structure
    /// constants come from matrix commutators expanded back in the basis.
    pub fn from_matrix_basis<S: Into<String>>(names: Vec<S>, mats: Vec<Mat<Rat>>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let dim = names.len();
        assert_eq!(mats.len(), dim);
        let flat: Mat<Rat> = mats.iter().map(|m| flatten(m)).collect();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let c = linalg::commutator(&mats[i], &mats[j]);
                let v = linalg::coords_in_row_basis(&flat, &flatten(&c)).ok_or_else(|| {
                    Error::InvalidInput("matrix basis not closed under commutators".into())
                })?;
                let entry: Vec<(usize, Rat)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                brackets.push(((i, j), entry));
            }
        }
        LieAlgebraSC::new(names, brackets)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// `[e_i, e_j]` as a dense coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut out = vec![crate::rational::zero(); self.dim()];
        if i == j {
            return out;
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        if let Some(entry) = self.table.get(&key) {
            for (k, c) in entry {
                out[*k] = if flip { -c } else { c.clone() };
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![crate::rational::zero(); n];
        for ((i, j), entry) in &self.table {
            // contributions of the (i,j) and (j,i) pairs
            let f = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if f.is_zero() {
                continue;
            }
            for (k, c) in entry {
                out[*k] = &out[*k] + &(c * &f);
            }
        }
        out
    }

    /// Matrix of `ad_x` (columns are `ad_x e_j`).
    pub fn ad_matrix(&self, x: &[Rat]) -> Mat<Rat> {
        let n = self.dim();
        let mut m = linalg::zeros::<Rat>(n, n);
        for j in 0..n {
            let mut ej = vec![crate::rational::zero(); n];
            ej[j] = crate::rational::one();
            let col = self.bracket(x, &ej);
            for (i, item) in col.into_iter().enumerate() {
                m[i][j] = item;
            }
        }
        m
    }

    /// All basis triples violating the Jacobi identity, with the Jacobiator
    /// value as witness. Empty means the axiom holds.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize, Vec<Rat>)> {
        let n = self.dim();
        let mut out = Vec::new();
        let basis = |i: usize| -> Vec<Rat> {
            let mut v = vec![crate::rational::zero(); n];
            v[i] = crate::rational::one();
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.bracket(&basis(i), &basis(j)), &basis(k));
                    let b = self.bracket(&self.bracket(&basis(j), &basis(k)), &basis(i));
                    let c = self.bracket(&self.bracket(&basis(k), &basis(i)), &basis(j));
                    let total: Vec<Rat> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if total.iter().any(|x| !x.is_zero()) {
                        out.push((i, j, k, total));
                    }
                }
            }
        }
        out
    }

    /// Restrict to the span of the given vectors (rows, in this algebra's
    /// coordinates). Fails if the span is not bracket-closed or the vectors
    /// are dependent.
    pub fn restrict(&self, sub_basis: &Mat<Rat>, names: Vec<String>) -> Result<LieAlgebraSC> {
        let k = sub_basis.len();
        if linalg::rank(sub_basis) != k {
            return Err(Error::InvalidInput("sub-basis is linearly dependent".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let b = self.bracket(&sub_basis[i], &sub_basis[j]);
                let v = linalg::coords_in_row_basis(sub_basis, &b).ok_or_else(|| {
                    Error::InvalidInput(format!("span not bracket-closed at pair ({i},{j})"))
                })?;
                let entry: Vec<(usize, Rat)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                brackets.push(((i, j), entry));
            }
        }
        LieAlgebraSC::new(names, brackets)
    }
}

fn merge_entry(dest: &mut Vec<(usize, Rat)>, k: usize, c: Rat) {
    if c.is_zero() {
        return;
    }
    if let Some(slot) = dest.iter_mut().find(|(i, _)| *i == k) {
        slot.1 = &slot.1 + &c;
    } else {
        dest.push((k, c));
    }
    dest.retain(|(_, c)| !c.is_zero());
}

pub fn flatten(m: &Mat<Rat>) -> Vec<Rat> {
    m.iter().flatten().cloned().collect()
}

/// Invariant symmetric nondegenerate pairing in the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPairing {
    pub gram: Mat<Rat>,
}

impl InvariantPairing {
    pub fn new(gram: Mat<Rat>) -> Self {
        InvariantPairing { gram }
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = crate::rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc = &acc + &(&(xi * yj) * &self.gram[i][j]);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.gram.len();
        (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !linalg::det(&self.gram).is_zero()
    }

    /// `⟨[x,e_i], e_j⟩ + ⟨e_i, [x,e_j]⟩ = 0` over all basis triples.
    pub fn invariance_violations(&self, alg: &LieAlgebraSC) -> Vec<(usize, usize, usize, Rat)> {
        let n = alg.dim();
        let basis = |i: usize| -> Vec<Rat> {
            let mut v = vec![crate::rational::zero(); n];
            v[i] = crate::rational::one();
            v
        };
        let mut out = Vec::new();
        for x in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let a = self.pair(&alg.bracket(&basis(x), &basis(i)), &basis(j));
                    let b = self.pair(&basis(i), &alg.bracket(&basis(x), &basis(j)));
                    let s = &a + &b;
                    if !s.is_zero() {
                        out.push((x, i, j, s));
                    }
                }
            }
        }
        out
    }
}

/// The invariant element `t ∈ S²g`: the inverse of the Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CasimirT {
    pub t: Mat<Rat>,
}

impl CasimirT {
    pub fn from_pairing(p: &InvariantPairing) -> Result<Self> {
        let t = linalg::inverse(&p.gram)
            .ok_or_else(|| Error::DegeneratePairing("gram matrix is singular".into()))?;
        Ok(CasimirT { t })
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// Raise a covector: `(t♯α)^i = t^{ij} α_j`.
    pub fn sharp(&self, alpha: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.t, alpha)
    }

    /// `ad^{(2)}_x t` as a matrix: `A t + t Aᵀ` with `A = ad_x`.
    pub fn ad2(&self, alg: &LieAlgebraSC, x: &[Rat]) -> Mat<Rat> {
        let a = alg.ad_matrix(x);
        linalg::mat_add(
            &linalg::mat_mul(&a, &self.t),
            &linalg::mat_mul(&self.t, &linalg::transpose(&a)),
        )
    }
}

/// Constant-coefficient alternating tensor over the algebra basis
/// (coefficients on strictly increasing index tuples). Holds φ and other
/// wedge-valued data.
#[derive(Clone, Debug, PartialEq)]
pub struct AltConst {
    pub degree: usize,
    pub comps: BTreeMap<Vec<u16>, Rat>,
}

impl AltConst {
    pub fn zero(degree: usize) -> Self {
        AltConst {
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn add_component(&mut self, idx: Vec<u16>, c: Rat) {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.comps.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Derivation action of `ad_x` across all slots.
    pub fn ad_action(&self, alg: &LieAlgebraSC, x: &[Rat]) -> AltConst {
        let a = alg.ad_matrix(x);
        let mut out = AltConst::zero(self.degree);
        for (idx, c) in &self.comps {
            for (slot, &b) in idx.iter().enumerate() {
                // replace e_b by ad_x e_b = Σ_m a[m][b] e_m
                for (m, row) in a.iter().enumerate() {
                    let coeff = &row[b as usize];
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut rest = idx.clone();
                    rest.remove(slot);
                    if let Some((t, s)) =
                        crate::multivector::merge_indices(&[m as u16], &rest)
                    {
                        let mut add = c * coeff;
                        // sign from moving e_m to the front of the removed slot
                        if slot % 2 == 1 {
                            add = -add;
                        }
                        if s < 0 {
                            add = -add;
                        }
                        out.add_component(t, add);
                    }
                }
            }
        }
        out
    }

    /// Offset all indices (for embedding into a direct sum).
    pub fn shift(&self, offset: usize) -> AltConst {
        let mut out = AltConst::zero(self.degree);
        for (idx, c) in &self.comps {
            out.add_component(idx.iter().map(|&i| i + offset as u16).collect(), c.clone());
        }
        out
    }

    pub fn merged(mut self, other: &AltConst) -> AltConst {
        for (idx, c) in &other.comps {
            self.add_component(idx.clone(), c.clone());
        }
        self
    }
}

/// The Cartan trivector: `φ(α,β,γ) = ¼ α([t♯β, t♯γ])`, stored on strictly
/// increasing triples so that evaluating the stored tensor on dual-basis
/// triples (determinant convention) reproduces the defining formula.
pub fn compute_phi(alg: &LieAlgebraSC, t: &CasimirT) -> AltConst {
    let n = alg.dim();
    let quarter = rat(1, 4);
    let mut phi = AltConst::zero(3);
    for j in 0..n {
        for k in j + 1..n {
            // t♯ε_j is row j of t (t is symmetric)
            let br = alg.bracket(&t.t[j], &t.t[k]);
            for i in 0..j {
                if !br[i].is_zero() {
                    phi.add_component(vec![i as u16, j as u16, k as u16], &quarter * &br[i]);
                }
            }
        }
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, zero};

    /// sl(2) with basis (e, h, f): [h,e] = 2e, [h,f] = −2f, [e,f] = h.
    pub fn sl2() -> (LieAlgebraSC, InvariantPairing, CasimirT) {
        let alg = LieAlgebraSC::new(
            vec!["e", "h", "f"],
            vec![
                ((1, 0), vec![(0, int(2))]),
                ((1, 2), vec![(2, int(-2))]),
                ((0, 2), vec![(1, int(1))]),
            ],
        )
        .unwrap();
        let gram = vec![
            vec![zero(), zero(), int(1)],
            vec![zero(), int(2), zero()],
            vec![int(1), zero(), zero()],
        ];
        let p = InvariantPairing::new(gram);
        let t = CasimirT::from_pairing(&p).unwrap();
        (alg, p, t)
    }

    #[test]
    fn sl2_passes_jacobi() {
        let (alg, p, _) = sl2();
        assert!(alg.jacobi_violations().is_empty());
        assert!(p.is_symmetric());
        assert!(p.is_nondegenerate());
        assert!(p.invariance_violations(&alg).is_empty());
    }

    #[test]
    fn abelian_passes_jacobi() {
        let alg = LieAlgebraSC::new(vec!["a", "b", "c"], vec![]).unwrap();
        assert!(alg.jacobi_violations().is_empty());
    }

    /// A genuinely non-Jacobi table: [e1,e2]=e1, [e2,e3]=e2, [e3,e1]=e3.
    /// The Jacobiator at (1,2,3) is −(e1+e2+e3) ≠ 0.
    ///
    /// (The table [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e1 satisfies Jacobi — it is
    /// so(2,1) — so it is useless as a negative control.)
    #[test]
    fn jacobi_violation_detected() {
        let alg = LieAlgebraSC::new(
            vec!["e1", "e2", "e3"],
            vec![
                ((0, 1), vec![(0, int(1))]),
                ((1, 2), vec![(1, int(1))]),
                ((2, 0), vec![(2, int(1))]),
            ],
        )
        .unwrap();
        let v = alg.jacobi_violations();
        assert_eq!(v.len(), 1);
        let (i, j, k, w) = &v[0];
        assert_eq!((*i, *j, *k), (0, 1, 2));
        assert_eq!(w, &vec![int(-1), int(-1), int(-1)]);
    }

    /// The spec-listed table that is actually so(2,1): confirm it passes, so
    /// the negative control above is the meaningful one.
    #[test]
    fn so21_satisfies_jacobi() {
        let alg = LieAlgebraSC::new(
            vec!["e1", "e2", "e3"],
            vec![
                ((0, 1), vec![(2, int(1))]),
                ((0, 2), vec![(1, int(1))]),
                ((1, 2), vec![(0, int(1))]),
            ],
        )
        .unwrap();
        assert!(alg.jacobi_violations().is_empty());
    }

    #[test]
    fn tsharp_sl2() {
        let (_, _, t) = sl2();
        // α = e*: t♯α = f
        assert_eq!(t.sharp(&[int(1), zero(), zero()]), vec![zero(), zero(), int(1)]);
        // α = h*: t♯α = h/2
        assert_eq!(
            t.sharp(&[zero(), int(1), zero()]),
            vec![zero(), crate::rational::rat(1, 2), zero()]
        );
        // α = 0
        assert_eq!(t.sharp(&[zero(), zero(), zero()]), vec![zero(), zero(), zero()]);
    }

    #[test]
    fn casimir_invariance_sl2() {
        let (alg, _, t) = sl2();
        for x in 0..3 {
            let mut v = vec![zero(); 3];
            v[x] = int(1);
            let m = t.ad2(&alg, &v);
            assert!(m.iter().flatten().all(|c| c.is_zero()), "t not invariant");
        }
    }

    #[test]
    fn ad2_on_tensor_sl2() {
        let (alg, _, _) = sl2();
        // ad^{(2)}_h (e⊗f) = 2e⊗f − 2e⊗f = 0
        let h = vec![zero(), int(1), zero()];
        let a = alg.ad_matrix(&h);
        let mut p = linalg::zeros::<Rat>(3, 3);
        p[0][2] = int(1); // e⊗f
        let moved = linalg::mat_add(
            &linalg::mat_mul(&a, &p),
            &linalg::mat_mul(&p, &linalg::transpose(&a)),
        );
        assert!(moved.iter().flatten().all(|c| c.is_zero()));
        // ad_e f = h
        let e = vec![int(1), zero(), zero()];
        let f = vec![zero(), zero(), int(1)];
        assert_eq!(alg.bracket(&e, &f), vec![zero(), int(1), zero()]);
    }

    #[test]
    fn phi_sl2() {
        let (alg, _, t) = sl2();
        let phi = compute_phi(&alg, &t);
        // φ(e*, h*, f*) = 1/4
        assert_eq!(phi.comps.get(&vec![0u16, 1, 2]).unwrap(), &crate::rational::rat(1, 4));
        // g-invariance: ad-action annihilates φ
        for x in 0..3 {
            let mut v = vec![zero(); 3];
            v[x] = int(1);
            assert!(phi.ad_action(&alg, &v).is_zero());
        }
    }

    #[test]
    fn phi_abelian_is_zero() {
        let alg = LieAlgebraSC::new(vec!["a", "b", "c"], vec![]).unwrap();
        let p = InvariantPairing::new(linalg::identity(3));
        let t = CasimirT::from_pairing(&p).unwrap();
        assert!(compute_phi(&alg, &t).is_zero());
    }

    /// Basis-change invariance of φ: transform sl(2) by a random-ish
    /// invertible S, recompute, map back, compare.
    #[test]
    fn phi_basis_change() {
        let (alg, p, t) = sl2();
        let phi = compute_phi(&alg, &t);
        // f_j = Σ_i S[i][j] e_i
        let s: Mat<Rat> = vec![
            vec![int(1), int(2), zero()],
            vec![int(0), int(1), int(3)],
            vec![int(1), int(0), int(1)],
        ];
        let sinv = linalg::inverse(&s).unwrap();
        // new structure constants: [f_a, f_b] = Σ S[·][a], S[·][b] brackets,
        // re-expressed in f-basis
        let cols: Mat<Rat> = (0..3)
            .map(|j| (0..3).map(|i| s[i][j].clone()).collect())
            .collect();
        let mut brackets = Vec::new();
        for a in 0..3 {
            for b in a + 1..3 {
                let v = alg.bracket(&cols[a], &cols[b]);
                let w = linalg::mat_vec(&sinv, &v);
                brackets.push((
                    (a, b),
                    w.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
                ));
            }
        }
        let alg2 = LieAlgebraSC::new(vec!["f1", "f2", "f3"], brackets).unwrap();
        // new gram: G' = Sᵀ G S
        let gram2 = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&s), &p.gram), &s);
        let t2 = CasimirT::from_pairing(&InvariantPairing::new(gram2)).unwrap();
        let phi2 = compute_phi(&alg2, &t2);
        // map φ2 back through ⋀³S and compare with φ
        let mut back = AltConst::zero(3);
        for (idx, c) in &phi2.comps {
            // f_{i} ∧ f_{j} ∧ f_{k} = Σ S[a][i]S[b][j]S[c][k] e_a∧e_b∧e_c
            let (i, j, k) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
            for a in 0..3 {
                for b in 0..3 {
                    for ccc in 0..3 {
                        let coeff = &(&s[a][i] * &s[b][j]) * &s[ccc][k];
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut perm = vec![(a, 0), (b, 1), (ccc, 2)];
                        perm.sort_by_key(|x| x.0);
                        if perm[0].0 == perm[1].0 || perm[1].0 == perm[2].0 {
                            continue;
                        }
                        // permutation sign
                        let order: Vec<usize> = perm.iter().map(|x| x.1).collect();
                        let sign = permutation_sign(&order);
                        let tuple: Vec<u16> = perm.iter().map(|x| x.0 as u16).collect();
                        let add = &(c * &coeff) * &int(sign);
                        back.add_component(tuple, add);
                    }
                }
            }
        }
        assert_eq!(back, phi);
    }

    fn permutation_sign(p: &[usize]) -> i64 {
        let mut s = 1i64;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }
}
