//! Alternating calculus on a polynomial coordinate ring: polyvector fields,
//! differential forms, wedge products, the Schouten–Nijenhuis bracket,
//! interior products and the de Rham differential.
//!
//! # Conventions (the one normative place)
//!
//! All signs in this crate derive from two choices:
//!
//! 1. **Wedge normalization.** `x∧y := x⊗y − y⊗x` (no 1/2). Evaluation of a
//!    k-vector on k covectors is the k×k determinant of pairings, so
//!    `⟨x∧y, A⊗B⟩ = ⟨x,A⟩⟨y,B⟩ − ⟨y,A⟩⟨x,B⟩`.
//! 2. **Schouten bracket.** The unique bracket with
//!    - `[X,Y]` the Lie bracket of vector fields,
//!    - `[X,f] = X(f)` for a vector field and a function,
//!    - graded antisymmetry `[P,Q] = −(−1)^{(p−1)(q−1)}[Q,P]` and the graded
//!      Jacobi identity,
//!    - Leibniz in the form `[P∧Q,R] = [P,R]∧Q + (−1)^{(r−1)p} P∧[Q,R]`,
//!    normalized so that for a bivector π with `{f,g} := π(df,dg)`,
//!    `[π,π](df,dg,dh) = 2({{f,g},h} + {{g,h},f} + {{h,f},g})`.
//!
//! On monomial components `p·ξ_I`, `q·ξ_J` (ξ odd symbols for ∂/∂x) the
//! bracket reads
//!
//! ```text
//! [p ξ_I, q ξ_J] = (−1)^{(|I|−1)|J|} Σ_k (−1)^{k+1} p (∂_{i_k} q) ξ_{I∖i_k}∧ξ_J
//!                  + (−1)^{|J|}      Σ_l (−1)^{l+1} q (∂_{j_l} p) ξ_{J∖j_l}∧ξ_I
//! ```
//!
//! and everything below implements exactly this.
//!
//! One consequence worth stating once: with these normalizations the
//! Jacobiator trivector of a quasi-Poisson bivector equals **minus** ρ(φ)
//! for the literal Cartan trivector φ(α,β,γ) = ¼α([t♯β,t♯γ]); every
//! quasi-Jacobi check in the crate therefore asserts ½[π,π] + ρ(φ) = 0.

use crate::jet::Scalar;
use crate::poly::{Coords, Poly};
use crate::rational::Rat;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Strictly increasing index tuple.
pub type IndexTuple = Vec<u16>;

/// Merge two strictly increasing tuples into one, with the sign of the
/// permutation that sorts the concatenation. `None` if they overlap.
pub fn merge_indices(a: &[u16], b: &[u16]) -> Option<(IndexTuple, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i32;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-entries.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

fn remove_at(t: &[u16], pos: usize) -> IndexTuple {
    let mut r = t.to_vec();
    r.remove(pos);
    r
}

/// Alternating multi-derivation with polynomial components, indexed by
/// strictly increasing coordinate tuples. Degree 0 is a single polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField {
    coords: Coords,
    degree: usize,
    comps: BTreeMap<IndexTuple, Poly>,
}

/// Differential form with polynomial components; same antisymmetric storage.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    coords: Coords,
    degree: usize,
    comps: BTreeMap<IndexTuple, Poly>,
}

macro_rules! shared_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(coords: &Coords, degree: usize) -> Self {
                $ty {
                    coords: coords.clone(),
                    degree,
                    comps: BTreeMap::new(),
                }
            }

            pub fn coords(&self) -> &Coords {
                &self.coords
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn is_zero(&self) -> bool {
                self.comps.is_empty()
            }

            pub fn components(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
                self.comps.iter()
            }

            pub fn component(&self, idx: &[u16]) -> Poly {
                self.comps
                    .get(idx)
                    .cloned()
                    .unwrap_or_else(|| Poly::zero(&self.coords))
            }

            /// Add `c` to the component at `idx` (must be strictly increasing
            /// and of length `degree`).
            pub fn add_component(&mut self, idx: IndexTuple, c: Poly) {
                debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
                debug_assert_eq!(idx.len(), self.degree);
                if c.is_zero() {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.comps.entry(idx) {
                    Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    Entry::Occupied(mut o) => {
                        let s = o.get().add(&c);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }

            pub fn add(&self, o: &Self) -> Self {
                assert_eq!(self.degree, o.degree, "degree mismatch in add");
                assert!(self.coords == o.coords, "coordinate mismatch in add");
                let mut r = self.clone();
                for (i, c) in &o.comps {
                    r.add_component(i.clone(), c.clone());
                }
                r
            }

            pub fn neg(&self) -> Self {
                let mut r = self.clone();
                for c in r.comps.values_mut() {
                    *c = c.neg();
                }
                r
            }

            pub fn sub(&self, o: &Self) -> Self {
                self.add(&o.neg())
            }

            pub fn scale(&self, c: &Rat) -> Self {
                let mut r = Self::zero(&self.coords, self.degree);
                for (i, p) in &self.comps {
                    r.add_component(i.clone(), p.scale(c));
                }
                r
            }

            pub fn scale_poly(&self, f: &Poly) -> Self {
                let mut r = Self::zero(&self.coords, self.degree);
                for (i, p) in &self.comps {
                    r.add_component(i.clone(), p.mul(f));
                }
                r
            }

            /// Evaluate every component at an exact point.
            pub fn eval_at<T: Scalar>(&self, point: &[T]) -> BTreeMap<IndexTuple, T> {
                let mut out = BTreeMap::new();
                for (i, p) in &self.comps {
                    let v = p.eval(point);
                    if !v.is_zero() {
                        out.insert(i.clone(), v);
                    }
                }
                out
            }

            pub fn vanishes_at(&self, point: &[Rat]) -> bool {
                self.eval_at::<Rat>(point).is_empty()
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.comps.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (idx, p) in &self.comps {
                    if !first {
                        write!(f, "  +  ")?;
                    }
                    first = false;
                    let names: Vec<&str> =
                        idx.iter().map(|&i| self.coords.name(i as usize)).collect();
                    write!(f, "({}) {}[{}]", p, $ty::SYMBOL, names.join(","))?;
                }
                Ok(())
            }
        }
    };
}

shared_impl!(PolyVectorField);
shared_impl!(PolyForm);

impl PolyVectorField {
    const SYMBOL: &'static str = "d/dx";

    /// Degree-0 field from a polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let mut r = PolyVectorField::zero(p.coords(), 0);
        r.add_component(vec![], p.clone());
        r
    }

    /// The coordinate vector field ∂/∂x_i.
    pub fn coordinate(coords: &Coords, i: usize) -> Self {
        let mut r = PolyVectorField::zero(coords, 1);
        r.add_component(vec![i as u16], Poly::one(coords));
        r
    }

    /// Degree-1 field from coefficient polynomials (one per coordinate).
    pub fn vector(coords: &Coords, coeffs: &[Poly]) -> Self {
        assert_eq!(coeffs.len(), coords.len());
        let mut r = PolyVectorField::zero(coords, 1);
        for (i, c) in coeffs.iter().enumerate() {
            r.add_component(vec![i as u16], c.clone());
        }
        r
    }

    /// Wedge product; degrees add, `P∧Q = (−1)^{pq} Q∧P`.
    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.coords != o.coords {
            return Err(Error::CoordMismatch("wedge of fields over different coordinates".into()));
        }
        let mut r = PolyVectorField::zero(&self.coords, self.degree + o.degree);
        for (i, p) in &self.comps {
            for (j, q) in &o.comps {
                if let Some((idx, s)) = merge_indices(i, j) {
                    let mut c = p.mul(q);
                    if s < 0 {
                        c = c.neg();
                    }
                    r.add_component(idx, c);
                }
            }
        }
        Ok(r)
    }

    /// Schouten–Nijenhuis bracket in the crate convention (see module docs).
    /// Degree is `deg P + deg Q − 1`; on two vector fields it is the Lie
    /// bracket, on a vector field and a function the directional derivative.
    pub fn schouten(&self, o: &Self) -> Result<Self> {
        if self.coords != o.coords {
            return Err(Error::CoordMismatch("schouten bracket over different coordinates".into()));
        }
        let p_deg = self.degree;
        let q_deg = o.degree;
        let out_deg = (p_deg + q_deg).saturating_sub(1);
        let mut r = PolyVectorField::zero(&self.coords, out_deg);
        if p_deg == 0 && q_deg == 0 {
            return Ok(r);
        }
        // (−1)^{(p−1)q}
        let s1_neg = ((p_deg + 1) * q_deg) % 2 == 1;
        // (−1)^{q}
        let s2_neg = q_deg % 2 == 1;
        for (i_idx, p) in &self.comps {
            for (j_idx, q) in &o.comps {
                // Σ_k ± p ∂_{i_k}(q) ξ_{I∖i_k} ∧ ξ_J
                for (pos, &k) in i_idx.iter().enumerate() {
                    let dq = q.diff(k as usize);
                    if dq.is_zero() {
                        continue;
                    }
                    if let Some((idx, ms)) = merge_indices(&remove_at(i_idx, pos), j_idx) {
                        let mut neg = s1_neg ^ (pos % 2 == 1);
                        if ms < 0 {
                            neg = !neg;
                        }
                        let mut c = p.mul(&dq);
                        if neg {
                            c = c.neg();
                        }
                        r.add_component(idx, c);
                    }
                }
                // Σ_l ± q ∂_{j_l}(p) ξ_{J∖j_l} ∧ ξ_I
                for (pos, &l) in j_idx.iter().enumerate() {
                    let dp = p.diff(l as usize);
                    if dp.is_zero() {
                        continue;
                    }
                    if let Some((idx, ms)) = merge_indices(&remove_at(j_idx, pos), i_idx) {
                        let mut neg = s2_neg ^ (pos % 2 == 1);
                        if ms < 0 {
                            neg = !neg;
                        }
                        let mut c = q.mul(&dp);
                        if neg {
                            c = c.neg();
                        }
                        r.add_component(idx, c);
                    }
                }
            }
        }
        Ok(r)
    }

    /// Apply a k-vector to k one-forms: the determinant evaluation.
    pub fn apply(&self, forms: &[&PolyForm]) -> Result<Poly> {
        if forms.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "applying degree-{} field to {} forms",
                self.degree,
                forms.len()
            )));
        }
        for a in forms {
            if a.degree != 1 {
                return Err(Error::InvalidInput("apply expects 1-forms".into()));
            }
            if a.coords != self.coords {
                return Err(Error::CoordMismatch("apply over different coordinates".into()));
            }
        }
        let mut acc = Poly::zero(&self.coords);
        for (idx, c) in &self.comps {
            let k = idx.len();
            // det[ forms[s](∂_{idx[r]}) ]_{r,s}
            let entries: Vec<Vec<Poly>> = idx
                .iter()
                .map(|&i| forms.iter().map(|a| a.component(&[i])).collect())
                .collect();
            let d = det_poly(&entries, k, &self.coords);
            acc = acc.add(&c.mul(&d));
        }
        Ok(acc)
    }

    /// Full contraction with a form of the same degree:
    /// `Σ_I P^I ω_I` (equals evaluation on the coordinate coframe).
    pub fn pair(&self, omega: &PolyForm) -> Result<Poly> {
        if self.degree != omega.degree {
            return Err(Error::DimensionMismatch("pairing of different degrees".into()));
        }
        if self.coords != omega.coords {
            return Err(Error::CoordMismatch("pairing over different coordinates".into()));
        }
        let mut acc = Poly::zero(&self.coords);
        for (idx, c) in &self.comps {
            let w = omega.component(idx);
            if !w.is_zero() {
                acc = acc.add(&c.mul(&w));
            }
        }
        Ok(acc)
    }

    /// A vector field applied to a function.
    pub fn derive(&self, f: &Poly) -> Result<Poly> {
        if self.degree != 1 {
            return Err(Error::InvalidInput("derive expects a degree-1 field".into()));
        }
        let mut acc = Poly::zero(&self.coords);
        for (idx, c) in &self.comps {
            acc = acc.add(&c.mul(&f.diff(idx[0] as usize)));
        }
        Ok(acc)
    }

    /// Rebuild the same field over a larger coordinate list via a strictly
    /// increasing index map (coefficients are lifted along with the
    /// component indices).
    pub fn relift(&self, target: &Coords, index_map: &[usize]) -> PolyVectorField {
        debug_assert!(index_map.windows(2).all(|w| w[0] < w[1]));
        let mut out = PolyVectorField::zero(target, self.degree);
        for (idx, comp) in &self.comps {
            let t: Vec<u16> = idx.iter().map(|&i| index_map[i as usize] as u16).collect();
            out.add_component(t, comp.lift(target, index_map));
        }
        out
    }

    /// Pushforward along a map: substitute coefficients and wedge the images
    /// of the coordinate tangents. `tangent(i)` is the image of ∂/∂x_i as a
    /// degree-1 field over `target`.
    pub fn pushforward(
        &self,
        target: &Coords,
        coeff: &dyn Fn(&Poly) -> Poly,
        tangent: &dyn Fn(usize) -> PolyVectorField,
    ) -> PolyVectorField {
        let mut r = PolyVectorField::zero(target, self.degree);
        for (idx, c) in &self.comps {
            let c2 = coeff(c);
            if c2.is_zero() {
                continue;
            }
            let mut acc = PolyVectorField::from_poly(&c2);
            for &i in idx {
                acc = acc.wedge(&tangent(i as usize)).expect("pushforward wedge");
            }
            r = r.add(&acc);
        }
        r
    }
}

impl PolyForm {
    const SYMBOL: &'static str = "dx";

    /// Degree-0 form from a polynomial.
    pub fn from_poly(p: &Poly) -> Self {
        let mut r = PolyForm::zero(p.coords(), 0);
        r.add_component(vec![], p.clone());
        r
    }

    /// The coordinate 1-form dx_i.
    pub fn coordinate(coords: &Coords, i: usize) -> Self {
        let mut r = PolyForm::zero(coords, 1);
        r.add_component(vec![i as u16], Poly::one(coords));
        r
    }

    /// Degree-1 form from coefficient polynomials.
    pub fn one_form(coords: &Coords, coeffs: &[Poly]) -> Self {
        assert_eq!(coeffs.len(), coords.len());
        let mut r = PolyForm::zero(coords, 1);
        for (i, c) in coeffs.iter().enumerate() {
            r.add_component(vec![i as u16], c.clone());
        }
        r
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.coords != o.coords {
            return Err(Error::CoordMismatch("wedge of forms over different coordinates".into()));
        }
        let mut r = PolyForm::zero(&self.coords, self.degree + o.degree);
        for (i, p) in &self.comps {
            for (j, q) in &o.comps {
                if let Some((idx, s)) = merge_indices(i, j) {
                    let mut c = p.mul(q);
                    if s < 0 {
                        c = c.neg();
                    }
                    r.add_component(idx, c);
                }
            }
        }
        Ok(r)
    }

    /// Exterior differential; `d∘d = 0`, on functions it is the differential.
    pub fn derham(&self) -> Self {
        let n = self.coords.len();
        let mut r = PolyForm::zero(&self.coords, self.degree + 1);
        for (idx, w) in &self.comps {
            for j in 0..n {
                let dw = w.diff(j);
                if dw.is_zero() {
                    continue;
                }
                if let Some((t, s)) = merge_indices(&[j as u16], idx) {
                    let c = if s < 0 { dw.neg() } else { dw };
                    r.add_component(t, c);
                }
            }
        }
        r
    }
}

/// Interior product of a 1-form into a polyvector field: contraction in the
/// first slot; a degree −1 derivation of the wedge.
pub fn interior(alpha: &PolyForm, p: &PolyVectorField) -> Result<PolyVectorField> {
    if alpha.degree() != 1 {
        return Err(Error::InvalidInput("interior product needs a 1-form".into()));
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput("interior product of a degree-0 field".into()));
    }
    if alpha.coords() != p.coords() {
        return Err(Error::CoordMismatch("interior product over different coordinates".into()));
    }
    let mut r = PolyVectorField::zero(p.coords(), p.degree() - 1);
    for (idx, c) in p.components() {
        for (pos, &k) in idx.iter().enumerate() {
            let a = alpha.component(&[k]);
            if a.is_zero() {
                continue;
            }
            let mut t = c.mul(&a);
            if pos % 2 == 1 {
                t = t.neg();
            }
            r.add_component(remove_at(idx, pos), t);
        }
    }
    Ok(r)
}

fn det_poly(m: &[Vec<Poly>], k: usize, coords: &Coords) -> Poly {
    match k {
        0 => Poly::one(coords),
        1 => m[0][0].clone(),
        _ => {
            // Laplace expansion along the first row; k is at most 3 or 4 here.
            let mut acc = Poly::zero(coords);
            for (j, item) in m[0].iter().enumerate() {
                if item.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let sub = det_poly(&minor, k - 1, coords);
                let term = item.mul(&sub);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}
