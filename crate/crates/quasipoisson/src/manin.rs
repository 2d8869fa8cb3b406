//! Manin quadruples `(d, a, b, c)`, their axiom checker, the equivalence
//! with Lie g-quasi-bialgebras in both directions, and the parabolic sl(N)
//! family that feeds every worked example in the crate.

use crate::lie::{CasimirT, InvariantPairing, LieAlgebraSC};
use crate::linalg::{self, Mat};
use crate::rational::{fmt_rat, int, one, zero, Rat};
use crate::report::{Check, Mode};
use crate::jet::Scalar;
use crate::{Error, Result};

/// Metric Lie algebra `d` with three distinguished sub-bases. Sub-bases are
/// stored as explicit vectors in `d`-coordinates (rows), so non-coordinate
/// subalgebras are representable.
#[derive(Clone, Debug)]
pub struct ManinQuadruple {
    pub d: LieAlgebraSC,
    pub pairing: InvariantPairing,
    pub a: Mat<Rat>,
    pub b: Mat<Rat>,
    pub c: Mat<Rat>,
    /// Matrix realization when `d` came from sl(N): one N×N matrix per
    /// basis vector of `d`, plus the block partition.
    pub matrices: Option<MatrixRealization>,
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub n: usize,
    pub partition: Vec<usize>,
    pub basis_mats: Vec<Mat<Rat>>,
}

impl MatrixRealization {
    /// Block number (0-based) of a 0-based matrix index.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &s) in self.partition.iter().enumerate() {
            acc += s;
            if i < acc {
                return b;
            }
        }
        panic!("index out of range")
    }

    /// Realize a `d`-coordinate vector as an N×N matrix.
    pub fn realize(&self, v: &[Rat]) -> Mat<Rat> {
        let mut m = linalg::zeros::<Rat>(self.n, self.n);
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    m[i][j] = &m[i][j] + &(c * &self.basis_mats[k][i][j]);
                }
            }
        }
        m
    }

    /// Express an N×N matrix in the `d`-basis.
    pub fn coords(&self, m: &Mat<Rat>) -> Option<Vec<Rat>> {
        let flat: Mat<Rat> = self.basis_mats.iter().map(crate::lie::flatten).collect();
        linalg::coords_in_row_basis(&flat, &crate::lie::flatten(m))
    }
}

impl ManinQuadruple {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a.len(), self.b.len(), self.c.len())
    }

    /// Stacked (a, b, c) rows.
    fn stacked(&self) -> Mat<Rat> {
        let mut m = self.a.clone();
        m.extend(self.b.iter().cloned());
        m.extend(self.c.iter().cloned());
        m
    }

    /// Coefficients of `v` in the (a, b, c) basis, split per part.
    pub fn split(&self, v: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>, Vec<Rat>)> {
        let coords = linalg::coords_in_row_basis(&self.stacked(), v)?;
        let (na, nb) = (self.a.len(), self.b.len());
        Some((
            coords[..na].to_vec(),
            coords[na..na + nb].to_vec(),
            coords[na + nb..].to_vec(),
        ))
    }

    /// Projection of `v` onto span(a) along b⊕c, as a d-vector.
    pub fn project_a(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (ca, _, _) = self.split(v)?;
        Some(combine(&self.a, &ca, self.d.dim()))
    }

    pub fn project_b(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (_, cb, _) = self.split(v)?;
        Some(combine(&self.b, &cb, self.d.dim()))
    }

    pub fn project_c(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (_, _, cc) = self.split(v)?;
        Some(combine(&self.c, &cc, self.d.dim()))
    }

    /// Dual basis `E^i ∈ span(c)` with `⟨E^i, a_j⟩ = δ^i_j` (rows). The
    /// c×a Gram block is invertible for a valid quadruple; errors otherwise.
    pub fn dual_basis_in_c(&self) -> Result<Mat<Rat>> {
        let k = self.a.len();
        if self.c.len() != k {
            return Err(Error::DimensionMismatch("dim a != dim c".into()));
        }
        let mut gram_ca = linalg::zeros::<Rat>(k, k);
        for i in 0..k {
            for j in 0..k {
                gram_ca[i][j] = self.pairing.pair(&self.c[i], &self.a[j]);
            }
        }
        let x = linalg::inverse(&gram_ca)
            .ok_or_else(|| Error::DegeneratePairing("c×a pairing block singular".into()))?;
        Ok(linalg::mat_mul(&x, &self.c))
    }

    /// Restriction of the pairing to b, as a Gram matrix.
    pub fn gram_b(&self) -> Mat<Rat> {
        let k = self.b.len();
        let mut g = linalg::zeros::<Rat>(k, k);
        for i in 0..k {
            for j in 0..k {
                g[i][j] = self.pairing.pair(&self.b[i], &self.b[j]);
            }
        }
        g
    }

    /// Full Gram matrix of `d` in the stacked (a,b,c) basis and its inverse
    /// (the Casimir of `d` in that basis).
    pub fn casimir_d_in_abc(&self) -> Result<Mat<Rat>> {
        let s = self.stacked();
        let n = s.len();
        let mut g = linalg::zeros::<Rat>(n, n);
        for i in 0..n {
            for j in 0..n {
                g[i][j] = self.pairing.pair(&s[i], &s[j]);
            }
        }
        linalg::inverse(&g).ok_or_else(|| Error::DegeneratePairing("d pairing singular".into()))
    }

    /// Exhaustive axiom check; every item is an exact statement.
    pub fn check(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let dim = self.d.dim();
        let (na, nb, nc) = self.dims();

        let jac = self.d.jacobi_violations();
        out.push(Check::from_bool("d satisfies Jacobi", Mode::Symbolic, jac.is_empty(), || {
            let (i, j, k, _) = &jac[0];
            format!("Jacobiator nonzero at basis triple ({i},{j},{k})")
        }));
        out.push(Check::from_bool(
            "pairing symmetric",
            Mode::Symbolic,
            self.pairing.is_symmetric(),
            || "gram not symmetric".into(),
        ));
        out.push(Check::from_bool(
            "pairing nondegenerate",
            Mode::Symbolic,
            self.pairing.is_nondegenerate(),
            || "det gram = 0".into(),
        ));
        let inv = self.pairing.invariance_violations(&self.d);
        out.push(Check::from_bool("pairing ad-invariant", Mode::Symbolic, inv.is_empty(), || {
            let (x, i, j, v) = &inv[0];
            format!("⟨[e{x},e{i}],e{j}⟩+⟨e{i},[e{x},e{j}]⟩ = {}", fmt_rat(v))
        }));

        for (name, rows) in [("a", &self.a), ("b", &self.b), ("c", &self.c)] {
            let closed = bracket_closed(&self.d, rows);
            out.push(Check::from_bool(
                &format!("{name} is a Lie subalgebra"),
                Mode::Symbolic,
                closed.is_none(),
                || {
                    let (i, j) = closed.unwrap();
                    format!("{name} not bracket-closed at pair ({i},{j})")
                },
            ));
        }

        let sum_ok = na + nb + nc == dim && linalg::rank(&self.stacked()) == dim;
        out.push(Check::from_bool("d = a ⊕ b ⊕ c", Mode::Symbolic, sum_ok, || {
            format!("dims {na}+{nb}+{nc} vs dim d = {dim}, rank {}", linalg::rank(&self.stacked()))
        }));

        // a^⊥ = a ⊕ b: ⟨a,a⟩ = ⟨a,b⟩ = 0 and dim a + dim b = dim d − dim a.
        let mut wit = None;
        'outer_a: for (i, ai) in self.a.iter().enumerate() {
            for (j, v) in self.a.iter().chain(self.b.iter()).enumerate() {
                let p = self.pairing.pair(ai, v);
                if !p.is_zero() {
                    wit = Some(format!("⟨a_{i}, (a∪b)_{j}⟩ = {}", fmt_rat(&p)));
                    break 'outer_a;
                }
            }
        }
        let dim_ok = na + nb == dim - na;
        out.push(Check::from_bool(
            "a^⊥ = a ⊕ b",
            Mode::Symbolic,
            wit.is_none() && dim_ok,
            || wit.clone().unwrap_or_else(|| format!("dim mismatch: {na}+{nb} != {dim}-{na}")),
        ));

        let mut wit = None;
        'outer_c: for (i, ci) in self.c.iter().enumerate() {
            for (j, v) in self.b.iter().chain(self.c.iter()).enumerate() {
                let p = self.pairing.pair(ci, v);
                if !p.is_zero() {
                    wit = Some(format!("⟨c_{i}, (b∪c)_{j}⟩ = {}", fmt_rat(&p)));
                    break 'outer_c;
                }
            }
        }
        let dim_ok = nb + nc == dim - nc;
        out.push(Check::from_bool(
            "c^⊥ = b ⊕ c",
            Mode::Symbolic,
            wit.is_none() && dim_ok,
            || wit.clone().unwrap_or_else(|| format!("dim mismatch: {nb}+{nc} != {dim}-{nc}")),
        ));

        out.push(Check::from_bool(
            "pairing on b nondegenerate",
            Mode::Symbolic,
            !linalg::det(&self.gram_b()).is_zero(),
            || "det of b-restricted gram = 0".into(),
        ));

        for (name, sub) in [("a", &self.a), ("c", &self.c)] {
            let mut ok = true;
            let mut w = String::new();
            'outer: for (i, bi) in self.b.iter().enumerate() {
                for (j, sj) in sub.iter().enumerate() {
                    let br = self.d.bracket(bi, sj);
                    if !linalg::in_row_span(sub, &br) {
                        ok = false;
                        w = format!("[b_{i}, {name}_{j}] leaves span({name})");
                        break 'outer;
                    }
                }
            }
            out.push(Check::from_bool(
                &format!("[b, {name}] ⊂ {name}"),
                Mode::Symbolic,
                ok,
                || w.clone(),
            ));
        }
        out
    }

    /// The derived Lie g-quasi-bialgebra `(h = a, g = b, δ via a* ≅ c)`.
    pub fn derive_bialgebra(&self) -> Result<QuasiBialgebra> {
        let names_h: Vec<String> = (0..self.a.len()).map(|i| format!("X{}", i)).collect();
        let names_g: Vec<String> = (0..self.b.len()).map(|i| format!("v{}", i)).collect();
        let h = self.d.restrict(&self.a, names_h)?;
        let g = self.d.restrict(&self.b, names_g)?;
        let g_pairing = InvariantPairing::new(self.gram_b());
        let g_casimir = CasimirT::from_pairing(&g_pairing)?;
        // action: ρ̇(b_α) a_j = [b_α, a_j], expressed in the a-basis
        let mut action = Vec::new();
        for balpha in &self.b {
            let mut m = linalg::zeros::<Rat>(self.a.len(), self.a.len());
            for (j, aj) in self.a.iter().enumerate() {
                let br = self.d.bracket(balpha, aj);
                let coords = linalg::coords_in_row_basis(&self.a, &br)
                    .ok_or_else(|| Error::InvalidInput("[b,a] not inside a".into()))?;
                for (i, ci) in coords.into_iter().enumerate() {
                    m[i][j] = ci;
                }
            }
            action.push(m);
        }
        // cobracket: ⟨δ(X), A⊗B⟩ = ⟨X, [B,A]⟩ against the dual basis in c
        let dual = self.dual_basis_in_c()?;
        let nh = self.a.len();
        let mut cobracket = Vec::new();
        for ak in &self.a {
            let mut m = linalg::zeros::<Rat>(nh, nh);
            for i in 0..nh {
                for j in 0..nh {
                    if i == j {
                        continue;
                    }
                    // δ^{ij}_k = ⟨a_k, [E^j, E^i]⟩
                    let br = self.d.bracket(&dual[j], &dual[i]);
                    m[i][j] = self.pairing.pair(ak, &br);
                }
            }
            cobracket.push(m);
        }
        Ok(QuasiBialgebra {
            h,
            g,
            g_pairing,
            g_casimir,
            action,
            cobracket,
        })
    }
}

fn combine(rows: &Mat<Rat>, coeffs: &[Rat], dim: usize) -> Vec<Rat> {
    let mut v = vec![zero(); dim];
    for (r, c) in rows.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (i, x) in r.iter().enumerate() {
            v[i] = &v[i] + &(c * x);
        }
    }
    v
}

fn bracket_closed(d: &LieAlgebraSC, rows: &Mat<Rat>) -> Option<(usize, usize)> {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let br = d.bracket(&rows[i], &rows[j]);
            if !linalg::in_row_span(rows, &br) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Lie g-quasi-bialgebra `(h, ρ̇, δ)` with `g` metric. The cobracket is
/// stored as one h⊗h matrix per basis element of h (antisymmetric when the
/// axioms hold; the checker verifies rather than assumes this).
#[derive(Clone, Debug)]
pub struct QuasiBialgebra {
    pub h: LieAlgebraSC,
    pub g: LieAlgebraSC,
    pub g_pairing: InvariantPairing,
    pub g_casimir: CasimirT,
    /// `action[α][i][j]` = coefficient of `h_i` in `ρ̇(g_α) h_j`.
    pub action: Vec<Mat<Rat>>,
    /// `cobracket[k][i][j]` = coefficient of `h_i ⊗ h_j` in `δ(h_k)`.
    pub cobracket: Vec<Mat<Rat>>,
}

impl QuasiBialgebra {
    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    /// δ applied to an h-vector, as an h⊗h matrix.
    pub fn delta(&self, x: &[Rat]) -> Mat<Rat> {
        let n = self.dim_h();
        let mut m = linalg::zeros::<Rat>(n, n);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    m[i][j] = &m[i][j] + &(c * &self.cobracket[k][i][j]);
                }
            }
        }
        m
    }

    /// The transpose cobracket as structure constants on h*:
    /// `[ε^i, ε^j] = Σ_k δ^{ij}_k ε^k`. Fails if δ is not antisymmetric.
    pub fn dual_bracket_algebra(&self) -> Result<LieAlgebraSC> {
        let n = self.dim_h();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let s = &self.cobracket[k][i][j] + &self.cobracket[k][j][i];
                    if !s.is_zero() {
                        return Err(Error::InvalidInput(format!(
                            "cobracket not antisymmetric at δ(h_{k})[{i}][{j}]"
                        )));
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("A{}", i)).collect();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let entry: Vec<(usize, Rat)> = (0..n)
                    .map(|k| (k, self.cobracket[k][i][j].clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                brackets.push(((i, j), entry));
            }
        }
        LieAlgebraSC::new(names, brackets)
    }

    /// Antisymmetry of δ plus co-Jacobi (Jacobi for the transpose bracket).
    pub fn check_cobracket(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let n = self.dim_h();
        let mut asym_wit = None;
        'outer: for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let s = &self.cobracket[k][i][j] + &self.cobracket[k][j][i];
                    if !s.is_zero() {
                        asym_wit = Some(format!("δ(h_{k})[{i}][{j}] symmetric part {}", fmt_rat(&s)));
                        break 'outer;
                    }
                }
            }
        }
        out.push(Check::from_bool(
            "cobracket antisymmetric",
            Mode::Symbolic,
            asym_wit.is_none(),
            || asym_wit.clone().unwrap(),
        ));
        if out[0].status == crate::report::Status::Pass {
            let dual = self.dual_bracket_algebra().expect("antisymmetry just checked");
            let jac = dual.jacobi_violations();
            out.push(Check::from_bool("co-Jacobi (transpose is a Lie bracket)", Mode::Symbolic, jac.is_empty(), || {
                let (i, j, k, _) = &jac[0];
                format!("transpose-bracket Jacobiator nonzero at ({i},{j},{k})")
            }));
        } else {
            out.push(Check::new(
                "co-Jacobi (transpose is a Lie bracket)",
                Mode::Symbolic,
                crate::report::Status::Inconclusive,
                Some("skipped: δ not antisymmetric".into()),
            ));
        }
        out
    }

    /// ρ̇ is an action by Lie algebra derivations.
    pub fn check_action(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let nh = self.dim_h();
        let ng = self.g.dim();
        // homomorphism: [A_α, A_β] = A_{[g_α, g_β]}
        let mut wit = None;
        'hom: for al in 0..ng {
            for be in al + 1..ng {
                let lhs = linalg::mat_sub(
                    &linalg::mat_mul(&self.action[al], &self.action[be]),
                    &linalg::mat_mul(&self.action[be], &self.action[al]),
                );
                let br = self.g.bracket_basis(al, be);
                let mut rhs = linalg::zeros::<Rat>(nh, nh);
                for (k, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..nh {
                        for j in 0..nh {
                            rhs[i][j] = &rhs[i][j] + &(c * &self.action[k][i][j]);
                        }
                    }
                }
                if lhs != rhs {
                    wit = Some(format!("[ρ̇(v{al}), ρ̇(v{be})] ≠ ρ̇([v{al},v{be}])"));
                    break 'hom;
                }
            }
        }
        out.push(Check::from_bool("ρ̇ is a g-action", Mode::Symbolic, wit.is_none(), || wit.clone().unwrap()));
        // derivation property on basis pairs
        let mut wit = None;
        'der: for al in 0..ng {
            for i in 0..nh {
                for j in 0..nh {
                    let mut ei = vec![zero(); nh];
                    ei[i] = one();
                    let mut ej = vec![zero(); nh];
                    ej[j] = one();
                    let lhs = apply_mat(&self.action[al], &self.h.bracket(&ei, &ej));
                    let r1 = self.h.bracket(&apply_mat(&self.action[al], &ei), &ej);
                    let r2 = self.h.bracket(&ei, &apply_mat(&self.action[al], &ej));
                    let rhs: Vec<Rat> = r1.iter().zip(&r2).map(|(x, y)| x + y).collect();
                    if lhs != rhs {
                        wit = Some(format!("ρ̇(v{al}) not a derivation at ({i},{j})"));
                        break 'der;
                    }
                }
            }
        }
        out.push(Check::from_bool(
            "ρ̇ acts by derivations",
            Mode::Symbolic,
            wit.is_none(),
            || wit.clone().unwrap(),
        ));
        out
    }

    /// g-equivariance of δ: `ad²_{ρ̇(v)} δ(X) = δ(ρ̇(v) X)`.
    pub fn check_equivariance(&self) -> Check {
        let nh = self.dim_h();
        for (al, a) in self.action.iter().enumerate() {
            for k in 0..nh {
                let lhs = linalg::mat_add(
                    &linalg::mat_mul(a, &self.cobracket[k]),
                    &linalg::mat_mul(&self.cobracket[k], &linalg::transpose(a)),
                );
                let mut ek = vec![zero(); nh];
                ek[k] = one();
                let rhs = self.delta(&apply_mat(a, &ek));
                if lhs != rhs {
                    return Check::fail(
                        "δ is g-equivariant",
                        Mode::Symbolic,
                        format!("fails for v{al}, h_{k}"),
                    );
                }
            }
        }
        Check::pass("δ is g-equivariant", Mode::Symbolic)
    }

    /// The mixed cocycle identity, Eq. mcoc, as exact matrix identities; on
    /// failure names the offending basis pair. Returns the four term
    /// matrices at (x, y) for reuse by the jac-coc comparison.
    pub fn mcoc_terms(&self, x: usize, y: usize) -> [Mat<Rat>; 4] {
        let nh = self.dim_h();
        let adx = ad_of_basis(&self.h, x);
        let ady = ad_of_basis(&self.h, y);
        let t1 = linalg::mat_add(
            &linalg::mat_mul(&adx, &self.cobracket[y]),
            &linalg::mat_mul(&self.cobracket[y], &linalg::transpose(&adx)),
        );
        let t2m = linalg::mat_add(
            &linalg::mat_mul(&ady, &self.cobracket[x]),
            &linalg::mat_mul(&self.cobracket[x], &linalg::transpose(&ady)),
        );
        let t2 = linalg::mat_neg(&t2m);
        let br = self.h.bracket_basis(x, y);
        let mut t3 = linalg::zeros::<Rat>(nh, nh);
        for (k, c) in br.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..nh {
                for j in 0..nh {
                    t3[i][j] = &t3[i][j] - &(c * &self.cobracket[k][i][j]);
                }
            }
        }
        // −t^{αβ} ρ̇(e_α)X ∧ ρ̇(e_β)Y  with  u∧v = u⊗v − v⊗u
        let ng = self.g.dim();
        let mut t4 = linalg::zeros::<Rat>(nh, nh);
        for al in 0..ng {
            for be in 0..ng {
                let tc = &self.g_casimir.t[al][be];
                if tc.is_zero() {
                    continue;
                }
                let u: Vec<Rat> = (0..nh).map(|i| self.action[al][i][x].clone()).collect();
                let v: Vec<Rat> = (0..nh).map(|i| self.action[be][i][y].clone()).collect();
                for i in 0..nh {
                    for j in 0..nh {
                        let w = &(&u[i] * &v[j]) - &(&v[i] * &u[j]);
                        t4[i][j] = &t4[i][j] - &(tc * &w);
                    }
                }
            }
        }
        [t1, t2, t3, t4]
    }

    pub fn check_mcoc(&self) -> Check {
        let nh = self.dim_h();
        for x in 0..nh {
            for y in x + 1..nh {
                let [t1, t2, t3, t4] = self.mcoc_terms(x, y);
                let total = linalg::mat_add(&linalg::mat_add(&t1, &t2), &linalg::mat_add(&t3, &t4));
                if total.iter().flatten().any(|c| !c.is_zero()) {
                    return Check::fail(
                        "mixed cocycle identity (mcoc)",
                        Mode::Symbolic,
                        format!("nonzero at basis pair (h_{x}, h_{y})"),
                    );
                }
            }
        }
        Check::pass("mixed cocycle identity (mcoc)", Mode::Symbolic)
    }

    /// All bialgebra-side checks at once.
    pub fn check_all(&self) -> Vec<Check> {
        let mut out = self.check_action();
        out.extend(self.check_cobracket());
        out.push(self.check_equivariance());
        out.push(self.check_mcoc());
        out
    }
}

fn apply_mat(m: &Mat<Rat>, v: &[Rat]) -> Vec<Rat> {
    linalg::mat_vec(m, v)
}

fn ad_of_basis(alg: &LieAlgebraSC, i: usize) -> Mat<Rat> {
    let mut v = vec![zero(); alg.dim()];
    v[i] = one();
    alg.ad_matrix(&v)
}

/// `d = h ⊕ g ⊕ h*` rebuilt from a quasi-bialgebra. The mixed brackets are
/// the unique ones making the canonical pairing invariant.
pub fn double_from_bialgebra(b: &QuasiBialgebra) -> Result<ManinQuadruple> {
    let nh = b.dim_h();
    let ng = b.g.dim();
    let dim = 2 * nh + ng;
    let hi = |i: usize| i; // h block
    let gi = |a: usize| nh + a; // g block
    let ei = |i: usize| nh + ng + i; // h* block

    let mut names = Vec::new();
    for i in 0..nh {
        names.push(format!("X{}", i));
    }
    for a in 0..ng {
        names.push(format!("v{}", a));
    }
    for i in 0..nh {
        names.push(format!("A{}", i));
    }

    let mut brackets: Vec<((usize, usize), Vec<(usize, Rat)>)> = Vec::new();
    let push = |brackets: &mut Vec<((usize, usize), Vec<(usize, Rat)>)>, i: usize, j: usize, v: Vec<(usize, Rat)>| {
        brackets.push(((i, j), v));
    };

    // [h, h]
    for i in 0..nh {
        for j in i + 1..nh {
            let br = b.h.bracket_basis(i, j);
            let entry = br
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (hi(k), c.clone()))
                .collect();
            push(&mut brackets, hi(i), hi(j), entry);
        }
    }
    // [g, g]
    for a in 0..ng {
        for bb in a + 1..ng {
            let br = b.g.bracket_basis(a, bb);
            let entry = br
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (gi(k), c.clone()))
                .collect();
            push(&mut brackets, gi(a), gi(bb), entry);
        }
    }
    // [h*, h*] = transpose of δ: ⟨h_k, [ε^i, ε^j]⟩ = ⟨δ(h_k), E^j⊗E^i⟩
    for i in 0..nh {
        for j in i + 1..nh {
            let entry = (0..nh)
                .map(|k| (ei(k), b.cobracket[k][j][i].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            push(&mut brackets, ei(i), ei(j), entry);
        }
    }
    // [g, h] = ρ̇
    for a in 0..ng {
        for j in 0..nh {
            let entry = (0..nh)
                .map(|k| (hi(k), b.action[a][k][j].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            push(&mut brackets, gi(a), hi(j), entry);
        }
    }
    // [g, h*]: coadjoint, [v, ε^i] = −Σ_j ρ̇(v)^i_j ε^j
    for a in 0..ng {
        for i in 0..nh {
            let entry = (0..nh)
                .map(|j| (ei(j), -&b.action[a][i][j]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            push(&mut brackets, gi(a), ei(i), entry);
        }
    }
    // [h, h*]: h-part Σ_j δ^{ij}_m h_j, g-part t_g·w with w_β = ρ̇(e_β)-matrix
    // entry [i][m], h*-part −Σ_j c^i_{mj} ε^j.
    for m in 0..nh {
        for i in 0..nh {
            let mut entry: Vec<(usize, Rat)> = Vec::new();
            // h-part: ⟨[h_m, ε^i], ε^j⟩ = ⟨h_m, [ε^i, ε^j]⟩ = δ^{ji}_m
            for j in 0..nh {
                let c = b.cobracket[m][j][i].clone();
                if !c.is_zero() {
                    entry.push((hi(j), c));
                }
            }
            // g-part
            let w: Vec<Rat> = (0..ng).map(|be| b.action[be][i][m].clone()).collect();
            let gamma = linalg::mat_vec(&b.g_casimir.t, &w);
            for (be, c) in gamma.into_iter().enumerate() {
                if !c.is_zero() {
                    entry.push((gi(be), c));
                }
            }
            // h*-part: ⟨[h_m, ε^i], h_j⟩ = −⟨ε^i, [h_m, h_j]⟩
            for j in 0..nh {
                let mut em = vec![zero(); nh];
                em[m] = one();
                let mut ej = vec![zero(); nh];
                ej[j] = one();
                let br = b.h.bracket(&em, &ej);
                let c = -&br[i];
                if !c.is_zero() {
                    entry.push((ei(j), c));
                }
            }
            push(&mut brackets, hi(m), ei(i), entry);
        }
    }

    let d = LieAlgebraSC::new(names, brackets)?;
    // canonical pairing
    let mut gram = linalg::zeros::<Rat>(dim, dim);
    for i in 0..nh {
        gram[hi(i)][ei(i)] = one();
        gram[ei(i)][hi(i)] = one();
    }
    for a1 in 0..ng {
        for a2 in 0..ng {
            gram[gi(a1)][gi(a2)] = b.g_pairing.gram[a1][a2].clone();
        }
    }
    let unit = |i: usize| -> Vec<Rat> {
        let mut v = vec![zero(); dim];
        v[i] = one();
        v
    };
    Ok(ManinQuadruple {
        d,
        pairing: InvariantPairing::new(gram),
        a: (0..nh).map(|i| unit(hi(i))).collect(),
        b: (0..ng).map(|a| unit(gi(a))).collect(),
        c: (0..nh).map(|i| unit(ei(i))).collect(),
        matrices: None,
    })
}

/// All ordered partitions (compositions) of `n` with at least two parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if acc.len() >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for first in 1..=n {
            acc.push(first);
            rec(n - first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// The parabolic Manin quadruple on sl(N) for a block partition:
/// `a` = strictly upper block part, `b` = traceless block diagonal,
/// `c` = strictly lower block part, pairing = trace form.
pub fn parabolic_quadruple(n: usize, partition: &[usize]) -> Result<ManinQuadruple> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    if partition.is_empty() || partition.iter().any(|&p| p == 0) {
        return Err(Error::InvalidInput("partition entries must be positive".into()));
    }
    if partition.iter().sum::<usize>() != n {
        return Err(Error::InvalidInput(format!(
            "partition {:?} does not sum to n = {}",
            partition, n
        )));
    }
    if partition.len() == 1 {
        return Err(Error::InvalidInput(
            "partition of length 1 is degenerate (a and c empty); rejected".into(),
        ));
    }
    let block_of = |i: usize| -> usize {
        let mut acc = 0;
        for (b, &s) in partition.iter().enumerate() {
            acc += s;
            if i < acc {
                return b;
            }
        }
        unreachable!()
    };
    let eij = |i: usize, j: usize| -> Mat<Rat> {
        let mut m = linalg::zeros::<Rat>(n, n);
        m[i][j] = one();
        m
    };

    let mut names = Vec::new();
    let mut mats = Vec::new();
    let mut na = 0;
    let mut nb = 0;
    // a = strictly upper block part, row-major
    for i in 0..n {
        for j in 0..n {
            if block_of(i) < block_of(j) {
                names.push(format!("E{}{}", i + 1, j + 1));
                mats.push(eij(i, j));
                na += 1;
            }
        }
    }
    // b = same-block off-diagonal, then the traceless diagonal H_k
    for i in 0..n {
        for j in 0..n {
            if i != j && block_of(i) == block_of(j) {
                names.push(format!("E{}{}", i + 1, j + 1));
                mats.push(eij(i, j));
                nb += 1;
            }
        }
    }
    for k in 0..n - 1 {
        names.push(format!("H{}", k + 1));
        let mut m = linalg::zeros::<Rat>(n, n);
        m[k][k] = one();
        m[k + 1][k + 1] = -one();
        mats.push(m);
        nb += 1;
    }
    // c = strictly lower block part, row-major ordering of (i,j) with
    // block(i) > block(j)
    let mut nc = 0;
    for i in 0..n {
        for j in 0..n {
            if block_of(i) > block_of(j) {
                names.push(format!("E{}{}", i + 1, j + 1));
                mats.push(eij(i, j));
                nc += 1;
            }
        }
    }

    let d = LieAlgebraSC::from_matrix_basis(names, mats.clone())?;
    let dim = d.dim();
    // trace pairing
    let mut gram = linalg::zeros::<Rat>(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram[i][j] = linalg::trace(&linalg::mat_mul(&mats[i], &mats[j]));
        }
    }
    let unit = |i: usize| -> Vec<Rat> {
        let mut v = vec![zero(); dim];
        v[i] = one();
        v
    };
    Ok(ManinQuadruple {
        d,
        pairing: InvariantPairing::new(gram),
        a: (0..na).map(unit).collect(),
        b: (na..na + nb).map(unit).collect(),
        c: (na + nb..na + nb + nc).map(unit).collect(),
        matrices: Some(MatrixRealization {
            n,
            partition: partition.to_vec(),
            basis_mats: mats,
        }),
    })
}

/// The quadruple with the roles of `a` and `c` exchanged (the "dual side").
pub fn swap_ac(q: &ManinQuadruple) -> ManinQuadruple {
    ManinQuadruple {
        d: q.d.clone(),
        pairing: q.pairing.clone(),
        a: q.c.clone(),
        b: q.b.clone(),
        c: q.a.clone(),
        matrices: q.matrices.clone(),
    }
}

/// jac-coc versus mcoc, grouped term by term: for basis `X, Y ∈ h` and dual
/// `A, B ∈ h*` the four mcoc terms contracted with `A⊗B` are matched against
/// the component routings of `⟨[A,X],[Y,B]⟩ − ⟨[B,X],[Y,A]⟩ − ⟨[X,Y],[B,A]⟩`:
///
/// - `⟨ad²_X δ(Y), A⊗B⟩       = ⟨[A,X]_{h*},[Y,B]_h⟩ − ⟨[B,X]_{h*},[Y,A]_h⟩`
/// - `−⟨ad²_Y δ(X), A⊗B⟩      = ⟨[A,X]_h,[Y,B]_{h*}⟩ − ⟨[B,X]_h,[Y,A]_{h*}⟩`
/// - `−⟨δ([X,Y]), A⊗B⟩        = −⟨[X,Y],[B,A]⟩`
/// - `−t^{ij}⟨ρ̇(e_i)X∧ρ̇(e_j)Y, A⊗B⟩ = ⟨[A,X]_g,[Y,B]_g⟩ − ⟨[B,X]_g,[Y,A]_g⟩`
pub fn check_mcoc_matches_jac_coc(q: &ManinQuadruple, b: &QuasiBialgebra) -> Result<Check> {
    let dual = q.dual_basis_in_c()?;
    let nh = q.a.len();
    let pair = |u: &[Rat], v: &[Rat]| q.pairing.pair(u, v);
    for x in 0..nh {
        for y in 0..nh {
            let terms = b.mcoc_terms(x, y);
            for i in 0..nh {
                for j in 0..nh {
                    let (aa, bb) = (&dual[i], &dual[j]);
                    let (ax, ay) = (&q.a[x], &q.a[y]);
                    let br_ax = q.d.bracket(aa, ax);
                    let br_bx = q.d.bracket(bb, ax);
                    let br_yb = q.d.bracket(ay, bb);
                    let br_ya = q.d.bracket(ay, aa);
                    let routes = |u: &[Rat], v: &[Rat]| -> Result<(Rat, Rat, Rat)> {
                        let err = || Error::InvalidInput("vector outside a⊕b⊕c".into());
                        let uh = q.project_a(u).ok_or_else(err)?;
                        let us = q.project_c(u).ok_or_else(err)?;
                        let ug = q.project_b(u).ok_or_else(err)?;
                        let vg = q.project_b(v).ok_or_else(err)?;
                        // ⟨u_{h*}, v⟩ only sees v_h, and symmetrically.
                        Ok((pair(&us, v), pair(&uh, v), pair(&ug, &vg)))
                    };
                    let (r1_ab, r2_ab, r3_ab) = routes(&br_ax, &br_yb)?;
                    let (r1_ba, r2_ba, r3_ba) = routes(&br_bx, &br_ya)?;
                    let t1q = &r1_ab - &r1_ba;
                    let t2q = &r2_ab - &r2_ba;
                    let t4q = &r3_ab - &r3_ba;
                    let br_xy = q.d.bracket(ax, ay);
                    let br_ba = q.d.bracket(bb, aa);
                    let t3q = -&pair(&br_xy, &br_ba);
                    let sides = [
                        (&terms[0][i][j], &t1q, "ad²_X δ(Y)"),
                        (&terms[1][i][j], &t2q, "−ad²_Y δ(X)"),
                        (&terms[2][i][j], &t3q, "−δ([X,Y])"),
                        (&terms[3][i][j], &t4q, "−t·ρ̇∧ρ̇"),
                    ];
                    for (lhs, rhs, name) in sides {
                        if lhs != rhs {
                            return Ok(Check::fail(
                                "mcoc ⇔ jac-coc term-by-term",
                                Mode::Symbolic,
                                format!(
                                    "term {name} at X=h_{x}, Y=h_{y}, A=E^{i}, B=E^{j}: bialgebra {} vs quadruple {}",
                                    fmt_rat(lhs),
                                    fmt_rat(rhs)
                                ),
                            ));
                        }
                    }
                    // jac-coc itself
                    let total = &(&pair(&br_ax, &br_yb) - &pair(&br_bx, &br_ya)) - &pair(&br_xy, &br_ba);
                    if !total.is_zero() {
                        return Ok(Check::fail(
                            "mcoc ⇔ jac-coc term-by-term",
                            Mode::Symbolic,
                            format!("jac-coc nonzero at X=h_{x}, Y=h_{y}, A=E^{i}, B=E^{j}: {}", fmt_rat(&total)),
                        ));
                    }
                }
            }
        }
    }
    let _ = int(0);
    Ok(Check::pass("mcoc ⇔ jac-coc term-by-term", Mode::Symbolic))
}

/// Does the rebuilt double match a concrete quadruple under the canonical
/// identification (h ↦ a, g ↦ b, ε ↦ dual basis in c)? Compares structure
/// constants and the pairing exactly.
pub fn double_matches_quadruple(dbl: &ManinQuadruple, q: &ManinQuadruple) -> Result<Check> {
    let dual = q.dual_basis_in_c()?;
    let mut images: Mat<Rat> = Vec::new();
    images.extend(q.a.iter().cloned());
    images.extend(q.b.iter().cloned());
    images.extend(dual.iter().cloned());
    let dim = dbl.d.dim();
    if images.len() != dim {
        return Err(Error::DimensionMismatch("double vs quadruple dimension".into()));
    }
    for i in 0..dim {
        for j in 0..dim {
            let g1 = &dbl.pairing.gram[i][j];
            let g2 = q.pairing.pair(&images[i], &images[j]);
            if *g1 != g2 {
                return Ok(Check::fail(
                    "double reproduces quadruple",
                    Mode::Symbolic,
                    format!("pairing differs at ({i},{j}): {} vs {}", fmt_rat(g1), fmt_rat(&g2)),
                ));
            }
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            let coeffs = dbl.d.bracket_basis(i, j);
            let mapped = combine(&images, &coeffs, q.d.dim());
            let direct = q.d.bracket(&images[i], &images[j]);
            if mapped != direct {
                return Ok(Check::fail(
                    "double reproduces quadruple",
                    Mode::Symbolic,
                    format!("bracket differs at basis pair ({i},{j})"),
                ));
            }
        }
    }
    Ok(Check::pass("double reproduces quadruple", Mode::Symbolic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn all_pass(checks: &[Check]) -> bool {
        checks.iter().all(|c| c.status == Status::Pass)
    }

    #[test]
    fn parabolic_dimensions() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        assert_eq!(q.dims(), (3, 2, 3));
        let q = parabolic_quadruple(3, &[1, 2]).unwrap();
        assert_eq!(q.dims(), (2, 4, 2));
        let q = parabolic_quadruple(4, &[2, 2]).unwrap();
        assert_eq!(q.dims(), (4, 7, 4));
    }

    #[test]
    fn parabolic_rejects_bad_partitions() {
        assert!(parabolic_quadruple(3, &[1, 1, 1, 1, 1]).is_err());
        assert!(parabolic_quadruple(3, &[3]).is_err());
        assert!(parabolic_quadruple(3, &[]).is_err());
        assert!(parabolic_quadruple(3, &[0, 3]).is_err());
    }

    #[test]
    fn quadruple_axioms_small() {
        for (n, p) in [(2usize, vec![1usize, 1]), (3, vec![1, 1, 1]), (3, vec![1, 2]), (4, vec![2, 2])] {
            let q = parabolic_quadruple(n, &p).unwrap();
            let checks = q.check();
            assert!(all_pass(&checks), "sl({n}) {:?}: {:#?}", p, checks);
        }
    }

    #[test]
    fn quadruple_symmetric_in_a_and_c() {
        let q = parabolic_quadruple(3, &[1, 2]).unwrap();
        let swapped = swap_ac(&q);
        assert!(all_pass(&swapped.check()));
    }

    #[test]
    fn quadruple_detects_bad_c() {
        // sl(2): replace c by span(E21 + E12), which is not isotropic.
        let mut q = parabolic_quadruple(2, &[1, 1]).unwrap();
        // basis order: a = E12 (idx 0), b = H1 (idx 1), c = E21 (idx 2)
        q.c = vec![vec![one(), zero(), one()]];
        let checks = q.check();
        let failed: Vec<&Check> = checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().any(|c| c.name.contains("c^⊥")));
    }

    #[test]
    fn derive_bialgebra_sl3_cobracket() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        // a-basis order is row-major: (E12, E13, E23)
        let b = q.derive_bialgebra().unwrap();
        // δ(E12) = 0 and δ(E23) = 0
        assert!(b.cobracket[0].iter().flatten().all(|c| c.is_zero()));
        assert!(b.cobracket[2].iter().flatten().all(|c| c.is_zero()));
        // δ(E13) = E12 ∧ E23 = E12⊗E23 − E23⊗E12
        let d13 = &b.cobracket[1];
        assert_eq!(d13[0][2], one());
        assert_eq!(d13[2][0], -one());
        for (i, row) in d13.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if (i, j) != (0, 2) && (i, j) != (2, 0) {
                    assert!(c.is_zero(), "unexpected δ(E13)[{i}][{j}] = {c}");
                }
            }
        }
        assert!(all_pass(&b.check_all()), "{:#?}", b.check_all());
    }

    #[test]
    fn derive_bialgebra_sl2_trivial_cobracket() {
        let q = parabolic_quadruple(2, &[1, 1]).unwrap();
        let b = q.derive_bialgebra().unwrap();
        assert!(b.cobracket[0].iter().flatten().all(|c| c.is_zero()));
        assert!(all_pass(&b.check_all()));
    }

    #[test]
    fn mcoc_matches_jac_coc_sl3() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        let b = q.derive_bialgebra().unwrap();
        let check = check_mcoc_matches_jac_coc(&q, &b).unwrap();
        assert_eq!(check.status, Status::Pass, "{:?}", check.witness);
    }

    #[test]
    fn double_roundtrip_sl3() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        let b = q.derive_bialgebra().unwrap();
        let dbl = double_from_bialgebra(&b).unwrap();
        assert!(all_pass(&dbl.check()), "{:#?}", dbl.check());
        let cmp = double_matches_quadruple(&dbl, &q).unwrap();
        assert_eq!(cmp.status, Status::Pass, "{:?}", cmp.witness);
    }

    #[test]
    fn double_of_trivial_bialgebra() {
        // h abelian 1-dim, g abelian 1-dim with pairing 1, δ = 0, action 0:
        // d = 3-dim abelian with hyperbolic-plus-line pairing.
        let h = LieAlgebraSC::new(vec!["X0"], vec![]).unwrap();
        let g = LieAlgebraSC::new(vec!["v0"], vec![]).unwrap();
        let g_pairing = InvariantPairing::new(vec![vec![one()]]);
        let g_casimir = CasimirT::from_pairing(&g_pairing).unwrap();
        let b = QuasiBialgebra {
            h,
            g,
            g_pairing,
            g_casimir,
            action: vec![vec![vec![zero()]]],
            cobracket: vec![vec![vec![zero()]]],
        };
        let dbl = double_from_bialgebra(&b).unwrap();
        assert!(all_pass(&dbl.check()), "{:#?}", dbl.check());
        assert!(dbl.d.jacobi_violations().is_empty());
    }

    #[test]
    fn perturbed_cobracket_breaks_double_jacobi() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        let mut b = q.derive_bialgebra().unwrap();
        // perturb δ(E13) by E12∧E13: violates mcoc
        b.cobracket[1][0][1] = &b.cobracket[1][0][1] + &one();
        b.cobracket[1][1][0] = &b.cobracket[1][1][0] - &one();
        assert_eq!(b.check_mcoc().status, Status::Fail);
        let dbl = double_from_bialgebra(&b).unwrap();
        let viol = dbl.d.jacobi_violations();
        assert!(!viol.is_empty());
        // the failure involves two h-indices and one h*-index
        let nh = 3usize;
        let ng = 2usize;
        let is_h = |i: usize| i < nh;
        let is_estar = |i: usize| i >= nh + ng;
        assert!(viol.iter().any(|(i, j, k, _)| {
            let idx = [*i, *j, *k];
            idx.iter().filter(|&&x| is_h(x)).count() == 2 && idx.iter().filter(|&&x| is_estar(x)).count() == 1
        }), "expected an (h,h,h*) witness, got {:?}", viol.iter().map(|(i,j,k,_)| (*i,*j,*k)).collect::<Vec<_>>());
    }

    #[test]
    fn cobracket_antisymmetry_negative() {
        let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
        let mut b = q.derive_bialgebra().unwrap();
        // δ(E13) := E12⊗E23 + E23⊗E12 (symmetric)
        b.cobracket[1][2][0] = one();
        let checks = b.check_cobracket();
        assert_eq!(checks[0].status, Status::Fail);
    }

    #[test]
    fn compositions_enumeration() {
        assert_eq!(compositions(2), vec![vec![1, 1]]);
        assert_eq!(compositions(3).len(), 3);
        assert_eq!(compositions(4).len(), 7);
    }
}
