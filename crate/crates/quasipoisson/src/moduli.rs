//! Moduli of flat SL(n)-bundles on surfaces with marked boundary points,
//! built purely from disk-and-gluing combinatorics.
//!
//! Each disk with two marked points contributes one SL(n) factor (the edge
//! holonomy) with π = 0 and two commuting d-actions: the first marked point
//! acts by x ↦ gx, the second by x ↦ xg⁻¹ (both taken with the e^{−t}
//! fundamental-field convention so that the actions are Lie algebra
//! homomorphisms). A corner gluing of two marked points applies internal
//! fusion of the two d-summands, in the order given.
//!
//! Conventions pinned by the annulus closed form (see
//! [`check_annulus_claims`]): the annulus is one disk pair glued twice,
//! first (disk0, pt1)–(disk1, pt0) and then (disk0, pt0)–(disk1, pt1); on
//! the quotient by H* at the first merged point and P₊ at the second, the
//! section {1}×D pushes the fused bivector exactly onto
//! `½[(E^i∧E_i)^L − (E^i∧E_i)^R − (e^α)^L∧(e_α)^R]`.

use crate::fusion::{CasimirAlgebra, FactorKind, QPSpace};
use crate::group::{
    gauss_decompose, left_invariant_field, right_invariant_field, MatrixGroupModel,
    QPGroupStructure,
};
use crate::jet::{Jet2, Scalar};
use crate::lie::{CasimirT, InvariantPairing, LieAlgebraSC};
use crate::linalg::{self, Mat};
use crate::manin::ManinQuadruple;
use crate::moment::{twisted_differential, Sign};
use crate::multivector::{IndexTuple, PolyVectorField};
use crate::poly::Poly;
use crate::rational::{one, rat, zero, Rat};
use crate::report::{Check, CheckReport, Mode, Status};
use crate::sample::{flatten_point, sample_sl_indexed};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Marked point: (disk index, 0 or 1).
pub type MarkedPoint = (usize, usize);

#[derive(Clone, Debug)]
pub struct SurfaceConfig {
    pub disks: usize,
    pub gluings: Vec<(MarkedPoint, MarkedPoint)>,
}

impl SurfaceConfig {
    pub fn disk() -> Self {
        SurfaceConfig {
            disks: 1,
            gluings: vec![],
        }
    }

    pub fn two_disks() -> Self {
        SurfaceConfig {
            disks: 2,
            gluings: vec![],
        }
    }

    /// Triangle: two disks glued once.
    pub fn triangle() -> Self {
        SurfaceConfig {
            disks: 2,
            gluings: vec![((0, 1), (1, 0))],
        }
    }

    /// Annulus with two marked points: two disks glued twice.
    pub fn annulus() -> Self {
        SurfaceConfig {
            disks: 2,
            gluings: vec![((0, 1), (1, 0)), ((0, 0), (1, 1))],
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuliSpace {
    pub config: SurfaceConfig,
    pub space: QPSpace,
    pub n: usize,
    /// surviving marked-point classes → acting summand index
    pub marked_to_summand: BTreeMap<MarkedPoint, usize>,
}

/// The acting copy of d = sl(n) in the quadruple's stacked (a,b,c) basis.
pub fn d_summand(quad: &ManinQuadruple) -> Result<Arc<CasimirAlgebra>> {
    let mut basis: Mat<Rat> = Vec::new();
    basis.extend(quad.a.iter().cloned());
    basis.extend(quad.b.iter().cloned());
    basis.extend(quad.c.iter().cloned());
    let t = quad.casimir_d_in_abc()?;
    let dim = basis.len();
    let mut gram = linalg::zeros::<Rat>(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            gram[i][j] = quad.pairing.pair(&basis[i], &basis[j]);
        }
    }
    let names: Vec<String> = (0..dim).map(|i| format!("d{}", i)).collect();
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let br = quad.d.bracket(&basis[i], &basis[j]);
            let coords = linalg::coords_in_row_basis(&basis, &br)
                .ok_or_else(|| Error::InvalidInput("abc basis not closed".into()))?;
            rows.push((
                (i, j),
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect::<Vec<_>>(),
            ));
        }
    }
    let alg = LieAlgebraSC::new(names, rows)?;
    Ok(Arc::new(CasimirAlgebra {
        alg,
        pairing: InvariantPairing::new(gram),
        casimir: CasimirT { t },
    }))
}

/// Realized stacked d-basis matrices, in the (a, b, c) order.
pub fn d_basis_mats(quad: &ManinQuadruple) -> Result<Vec<Mat<Rat>>> {
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let mut basis: Mat<Rat> = Vec::new();
    basis.extend(quad.a.iter().cloned());
    basis.extend(quad.b.iter().cloned());
    basis.extend(quad.c.iter().cloned());
    Ok(basis.iter().map(|v| re.realize(v)).collect())
}

/// One disk with two marked points: the space D with π = 0 and the two
/// boundary actions.
pub fn disk_space(quad: &ManinQuadruple) -> Result<QPSpace> {
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let n = re.n;
    let model = MatrixGroupModel::sampled(n);
    let mats = d_basis_mats(quad)?;
    let summand = d_summand(quad)?;
    // point 0: x ↦ gx, fundamental field −(v·M); point 1: x ↦ xg⁻¹, +(M·v)
    let left_action: Vec<PolyVectorField> = mats
        .iter()
        .map(|m| right_invariant_field(&model, m).expect("sampled model").neg())
        .collect();
    let right_action: Vec<PolyVectorField> = mats
        .iter()
        .map(|m| left_invariant_field(&model, m).expect("sampled model"))
        .collect();
    Ok(QPSpace::single(
        model.coords.names().to_vec(),
        FactorKind::SpecialLinear(n),
        vec![summand.clone(), summand],
        vec![left_action, right_action],
        PolyVectorField::zero(&model.coords, 2),
    ))
}

/// Assemble the moduli space of a disk-and-gluing configuration.
pub fn build_moduli(config: &SurfaceConfig, quad: &ManinQuadruple) -> Result<ModuliSpace> {
    if config.disks == 0 {
        return Err(Error::InvalidInput("no disks".into()));
    }
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let disk = disk_space(quad)?;
    let mut space = disk.clone();
    for _ in 1..config.disks {
        space = space.product(&disk);
    }
    let mut marked_to_summand: BTreeMap<MarkedPoint, usize> = BTreeMap::new();
    for d in 0..config.disks {
        marked_to_summand.insert((d, 0), 2 * d);
        marked_to_summand.insert((d, 1), 2 * d + 1);
    }
    for (p, q) in &config.gluings {
        let s1 = *marked_to_summand
            .get(p)
            .ok_or_else(|| Error::InvalidInput(format!("gluing references dead point {:?}", p)))?;
        let s2 = *marked_to_summand
            .get(q)
            .ok_or_else(|| Error::InvalidInput(format!("gluing references dead point {:?}", q)))?;
        if s1 == s2 {
            return Err(Error::InvalidInput(format!(
                "gluing {:?}–{:?} references an already merged point",
                p, q
            )));
        }
        space = space.internal_fuse(s1, s2)?;
        // q's class dies; indices above s2 shift down
        marked_to_summand.remove(q);
        for v in marked_to_summand.values_mut() {
            if *v == s2 {
                *v = s1;
            } else if *v > s2 {
                *v -= 1;
            }
        }
    }
    Ok(ModuliSpace {
        config: config.clone(),
        space,
        n: re.n,
        marked_to_summand,
    })
}

/// The conjugation action fields v ↦ v^L − v^R on the sampled model.
pub fn conjugation_fields(model: &MatrixGroupModel, mats: &[Mat<Rat>]) -> Vec<PolyVectorField> {
    mats.iter()
        .map(|m| {
            left_invariant_field(model, m)
                .expect("sampled model")
                .sub(&right_invariant_field(model, m).expect("sampled model"))
        })
        .collect()
}

/// The closed-form annulus bivector on D = SL(n):
/// `π = ½[(E^i∧E_i)^L − (E^i∧E_i)^R − (e^α)^L∧(e_α)^R]`.
pub fn annulus_bivector(quad: &ManinQuadruple) -> Result<(MatrixGroupModel, PolyVectorField)> {
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let model = MatrixGroupModel::sampled(re.n);
    let dual = quad.dual_basis_in_c()?;
    let h_mats: Vec<Mat<Rat>> = quad.a.iter().map(|r| re.realize(r)).collect();
    let dual_mats: Vec<Mat<Rat>> = dual.iter().map(|r| re.realize(r)).collect();
    let g_mats: Vec<Mat<Rat>> = quad.b.iter().map(|r| re.realize(r)).collect();
    let gram_b = quad.gram_b();
    let t_g = linalg::inverse(&gram_b).ok_or_else(|| Error::DegeneratePairing("b block".into()))?;
    // e^α = Σ_β t^{αβ} e_β
    let g_dual_mats: Vec<Mat<Rat>> = (0..g_mats.len())
        .map(|al| {
            let mut m = linalg::zeros::<Rat>(re.n, re.n);
            for (be, gm) in g_mats.iter().enumerate() {
                if t_g[al][be].is_zero() {
                    continue;
                }
                for r in 0..re.n {
                    for c in 0..re.n {
                        m[r][c] = &m[r][c] + &(&t_g[al][be] * &gm[r][c]);
                    }
                }
            }
            m
        })
        .collect();
    let lf = |m: &Mat<Rat>| left_invariant_field(&model, m).expect("sampled model");
    let rf = |m: &Mat<Rat>| right_invariant_field(&model, m).expect("sampled model");
    let mut pi = PolyVectorField::zero(&model.coords, 2);
    for i in 0..h_mats.len() {
        pi = pi.add(&lf(&dual_mats[i]).wedge(&lf(&h_mats[i]))?);
        pi = pi.sub(&rf(&dual_mats[i]).wedge(&rf(&h_mats[i]))?);
    }
    for al in 0..g_mats.len() {
        pi = pi.sub(&lf(&g_dual_mats[al]).wedge(&rf(&g_mats[al]))?);
    }
    Ok((model, pi.scale(&rat(1, 2))))
}

/// The annulus as a g-quasi-Poisson space (conjugation action).
pub fn annulus_space(quad: &ManinQuadruple) -> Result<QPSpace> {
    let (model, pi) = annulus_bivector(quad)?;
    let bialg = quad.derive_bialgebra()?;
    let re = quad.matrices.as_ref().expect("checked");
    let g_mats: Vec<Mat<Rat>> = quad.b.iter().map(|r| re.realize(r)).collect();
    let action = conjugation_fields(&model, &g_mats);
    let summand = Arc::new(CasimirAlgebra {
        alg: bialg.g.clone(),
        pairing: bialg.g_pairing.clone(),
        casimir: bialg.g_casimir.clone(),
    });
    Ok(QPSpace::single(
        model.coords.names().to_vec(),
        FactorKind::SpecialLinear(re.n),
        vec![summand],
        vec![action],
        pi,
    ))
}

fn rat_mat_to_jet(m: &Mat<Rat>, d1: Option<(usize, usize)>, d2: Option<(usize, usize)>) -> Mat<Jet2> {
    let n = m.len();
    let mut out = vec![vec![Jet2::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = Jet2 {
                val: m[i][j].clone(),
                d1: if d1 == Some((i, j)) { one() } else { zero() },
                d2: if d2 == Some((i, j)) { one() } else { zero() },
                d12: zero(),
            };
        }
    }
    out
}

/// Push an evaluated bivector through a pointwise linear tangent map.
fn push_bivector_values(
    vals: &BTreeMap<IndexTuple, Rat>,
    tangent: &dyn Fn(usize) -> Vec<Rat>,
    target_dim: usize,
) -> Mat<Rat> {
    let mut out = linalg::zeros::<Rat>(target_dim, target_dim);
    for (idx, v) in vals {
        let tp = tangent(idx[0] as usize);
        let tq = tangent(idx[1] as usize);
        for a in 0..target_dim {
            if tp[a].is_zero() && tq[a].is_zero() {
                continue;
            }
            for b in 0..target_dim {
                let w = &(&tp[a] * &tq[b]) - &(&tp[b] * &tq[a]);
                if !w.is_zero() {
                    out[a][b] = &out[a][b] + &(v * &w);
                }
            }
        }
    }
    out
}

/// Evaluate a bivector field into an antisymmetric matrix at a point.
fn bivector_matrix_at(field: &PolyVectorField, point: &[Rat], dim: usize) -> Mat<Rat> {
    let mut out = linalg::zeros::<Rat>(dim, dim);
    for (idx, v) in field.eval_at::<Rat>(point) {
        let (a, b) = (idx[0] as usize, idx[1] as usize);
        out[a][b] = v.clone();
        out[b][a] = -v;
    }
    out
}

/// The five annulus sub-checks of the two-marked-point example, pointwise at
/// exact SL(n) samples, plus a sign-flip negative control.
pub fn check_annulus_claims(
    quad: &ManinQuadruple,
    samples: usize,
    seed: u64,
    parallel: bool,
) -> Result<CheckReport> {
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let n = re.n;
    let mut report = CheckReport::new(&format!(
        "annulus-check n={} blocks={:?} samples={} seed={}",
        n, re.partition, samples, seed
    ));
    let space = annulus_space(quad)?;
    let (model, pi) = annulus_bivector(quad)?;
    let points: Vec<Mat<Rat>> = (0..samples as u64).map(|i| sample_sl_indexed(n, seed, i)).collect();
    let flat_points: Vec<Vec<Rat>> = points.iter().map(flatten_point).collect();

    // (a) quasi-Jacobi for the annulus π with φ of g, at samples
    report.run(|| {
        let residual = space.quasi_jacobi_residual();
        let bad = find_failing_point(&residual, &flat_points, parallel);
        Check::from_bool("(a) quasi-Jacobi for the annulus bivector", Mode::Sampled, bad.is_none(), || {
            format!("nonzero residual at sample {}", bad.unwrap())
        })
    });

    // invariance and action property come with the space invariants
    report.run(|| {
        let mut wit = None;
        'inv: for (s, fields) in space.action.iter().enumerate() {
            for (i, f) in fields.iter().enumerate() {
                let br = f.schouten(&space.pi).expect("same coords");
                if let Some(p) = find_failing_point(&br, &flat_points, parallel) {
                    wit = Some(format!("[ρ_{s}(e_{i}), π] ≠ 0 at sample {p}"));
                    break 'inv;
                }
            }
        }
        Check::from_bool("(a') conjugation invariance of π", Mode::Sampled, wit.is_none(), || {
            wit.clone().unwrap()
        })
    });

    // (b) multiplicativity of π on D at sample pairs
    report.run(|| {
        let t_g = &space.summands[0].casimir.t;
        let re2 = quad.matrices.as_ref().expect("checked");
        let g_mats: Vec<Mat<Rat>> = quad.b.iter().map(|r| re2.realize(r)).collect();
        let run_pair = |i: usize| -> Option<String> {
            let d1 = &points[i];
            let d2 = &sample_sl_indexed(n, seed, (samples + i) as u64);
            let prod = linalg::mat_mul(d1, d2);
            let lhs = bivector_matrix_at(&pi, &flatten_point(&prod), n * n);
            // left translation of π|_{d2}
            let vals2 = pi.eval_at::<Rat>(&flatten_point(d2));
            let left = push_bivector_values(
                &vals2,
                &|k| {
                    let (r, c) = model.positions[k];
                    let mut e = linalg::zeros::<Rat>(n, n);
                    e[r][c] = one();
                    flatten_point(&linalg::mat_mul(d1, &e))
                },
                n * n,
            );
            // right translation of π|_{d1}
            let vals1 = pi.eval_at::<Rat>(&flatten_point(d1));
            let right = push_bivector_values(
                &vals1,
                &|k| {
                    let (r, c) = model.positions[k];
                    let mut e = linalg::zeros::<Rat>(n, n);
                    e[r][c] = one();
                    flatten_point(&linalg::mat_mul(&e, d2))
                },
                n * n,
            );
            // correction ½ t^{αβ} (ρ_α|_{d1}·d2) ∧ (d1·ρ_β|_{d2})
            let mut corr = linalg::zeros::<Rat>(n * n, n * n);
            for (al, ga) in g_mats.iter().enumerate() {
                let va = linalg::mat_mul(&linalg::commutator(d1, ga), d2);
                let fa = flatten_point(&va);
                for (be, gb) in g_mats.iter().enumerate() {
                    if t_g[al][be].is_zero() {
                        continue;
                    }
                    let vb = linalg::mat_mul(d1, &linalg::commutator(d2, gb));
                    let fb = flatten_point(&vb);
                    let half_t = &rat(1, 2) * &t_g[al][be];
                    for a in 0..n * n {
                        for b in 0..n * n {
                            let w = &(&fa[a] * &fb[b]) - &(&fa[b] * &fb[a]);
                            if !w.is_zero() {
                                corr[a][b] = &corr[a][b] + &(&half_t * &w);
                            }
                        }
                    }
                }
            }
            let mut rhs = linalg::mat_add(&left, &right);
            rhs = linalg::mat_sub(&rhs, &corr);
            if lhs != rhs {
                Some(format!("qmult fails at sample pair {i}"))
            } else {
                None
            }
        };
        let wit = if parallel {
            (0..samples).into_par_iter().filter_map(run_pair).min()
        } else {
            (0..samples).filter_map(run_pair).next()
        };
        Check::from_bool("(b) multiplicativity of π on D", Mode::Sampled, wit.is_none(), || {
            wit.clone().unwrap()
        })
    });

    // (c) H ⊂ D is a quasi-Poisson inclusion, exactly
    report.run(|| check_h_inclusion(quad, &model, &pi));

    // (d) Gauss moment map at samples
    report.run(|| check_gauss_moment(quad, &space, &points, parallel));

    // (e) the moduli-built annulus agrees with the closed form at samples
    report.run(|| match check_moduli_annulus_agreement(quad, &pi, &points) {
        Ok(c) => c,
        Err(e) => Check::fail("(e) moduli gluing reproduces the closed form", Mode::Sampled, e.to_string()),
    });

    // Negative controls. Flipping the sign of the middle term yields the
    // opposite-order fusion structure, which is itself quasi-Poisson, so it
    // cannot break (a); it does break the agreement with the moduli
    // construction. Dropping the middle term breaks (a) at the first sample.
    let middle = {
        let dual = quad.dual_basis_in_c().expect("dual basis");
        let h_mats: Vec<Mat<Rat>> = quad.a.iter().map(|r| re.realize(r)).collect();
        let dual_mats: Vec<Mat<Rat>> = dual.iter().map(|r| re.realize(r)).collect();
        let rf = |m: &Mat<Rat>| right_invariant_field(&model, m).expect("sampled model");
        let mut middle = PolyVectorField::zero(&model.coords, 2);
        for i in 0..h_mats.len() {
            middle = middle.add(
                &rf(&dual_mats[i])
                    .wedge(&rf(&h_mats[i]))
                    .expect("same coords"),
            );
        }
        middle
    };
    report.run(|| {
        // sign flip: −½ → +½, i.e. add +1·middle
        let flipped_pi = pi.add(&middle);
        let mut flipped_space = space.clone();
        flipped_space.pi = flipped_pi.clone();
        let still_qp = flipped_space.quasi_jacobi_residual().is_zero();
        let disagrees = match check_moduli_annulus_agreement(quad, &flipped_pi, &points[..1.min(points.len())]) {
            Ok(c) => c.status == Status::Fail,
            Err(_) => false,
        };
        Check::from_bool(
            "negative control: sign-flipped middle term breaks the closed-form agreement",
            Mode::Sampled,
            still_qp && disagrees,
            || "expected the flip to stay quasi-Poisson but break (e)".into(),
        )
    });
    report.run(|| {
        let mut broken = space.clone();
        broken.pi = broken.pi.add(&middle.scale(&rat(1, 2)));
        let residual = broken.quasi_jacobi_residual();
        let fails = flat_points
            .first()
            .map(|p| !residual.vanishes_at(p))
            .unwrap_or(false);
        Check::from_bool(
            "negative control: dropped middle term breaks (a) at the first sample",
            Mode::Sampled,
            fails,
            || "corrupted bivector still satisfies quasi-Jacobi at sample 0".into(),
        )
    });

    Ok(report)
}

fn find_failing_point(field: &PolyVectorField, points: &[Vec<Rat>], parallel: bool) -> Option<usize> {
    if parallel {
        points
            .par_iter()
            .enumerate()
            .filter_map(|(i, p)| if field.vanishes_at(p) { None } else { Some(i) })
            .min()
    } else {
        points.iter().position(|p| !field.vanishes_at(p))
    }
}

/// (c): the restriction of the annulus π along the affine embedding of H
/// equals the group bivector, as exact polynomial identities.
fn check_h_inclusion(quad: &ManinQuadruple, model: &MatrixGroupModel, pi: &PolyVectorField) -> Check {
    let name = "(c) H ⊂ D is a quasi-Poisson inclusion";
    let s = match QPGroupStructure::build(quad) {
        Ok(s) => s,
        Err(e) => return Check::fail(name, Mode::Symbolic, e.to_string()),
    };
    let n = model.n;
    // substitution: entries of the generic pattern matrix
    let gm = s.model.generic_matrix();
    let mut images = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            images.push(gm[i][j].clone());
        }
    }
    for p in 0..n * n {
        for q in p + 1..n * n {
            let comp = pi.component(&[p as u16, q as u16]);
            let restricted = comp.substitute(&s.model.coords, &images);
            let expected = match (
                s.model.coord_of_position(model.positions[p]),
                s.model.coord_of_position(model.positions[q]),
            ) {
                (Some(a), Some(b)) => {
                    if a < b {
                        s.pi.component(&[a as u16, b as u16])
                    } else {
                        s.pi.component(&[b as u16, a as u16]).neg()
                    }
                }
                _ => Poly::zero(&s.model.coords),
            };
            if restricted != expected {
                return Check::fail(
                    name,
                    Mode::Symbolic,
                    format!(
                        "component ({:?},{:?}) restricts to {} but the group bivector gives {}",
                        model.positions[p], model.positions[q], restricted, expected
                    ),
                );
            }
        }
    }
    Check::pass(name, Mode::Symbolic)
}

/// (d): ψ(X) = −a₊(μ*X^L) for the Gauss projection μ: D → H* satisfies
/// Eq. inf-action at every sample point in the Gauss cell.
fn check_gauss_moment(
    quad: &ManinQuadruple,
    space: &QPSpace,
    points: &[Mat<Rat>],
    parallel: bool,
) -> Check {
    let name = "(d) Gauss moment map satisfies inf-action";
    let bialg = match quad.derive_bialgebra() {
        Ok(b) => b,
        Err(e) => return Check::fail(name, Mode::Sampled, e.to_string()),
    };
    let re = quad.matrices.as_ref().expect("matrix realization");
    let h_mats: Vec<Mat<Rat>> = quad.a.iter().map(|r| re.realize(r)).collect();
    let run_point = |d: &Mat<Rat>| -> std::result::Result<Option<String>, ()> {
        // outside the Gauss cell → skip
        if gauss_decompose(&re.partition, d).is_err() {
            return Err(());
        }
        match check_moment_at_point(quad, space, &bialg, &h_mats, d) {
            Ok(None) => Ok(None),
            Ok(Some(w)) => Ok(Some(w)),
            Err(e) => Ok(Some(e.to_string())),
        }
    };
    let results: Vec<std::result::Result<Option<String>, ()>> = if parallel {
        points.par_iter().map(run_point).collect()
    } else {
        points.iter().map(run_point).collect()
    };
    let skipped = results.iter().filter(|r| r.is_err()).count();
    let failure = results.iter().filter_map(|r| r.as_ref().ok()).find_map(|o| o.clone());
    if let Some(w) = failure {
        return Check::fail(name, Mode::Sampled, w);
    }
    if skipped == results.len() {
        return Check::inconclusive(name, Mode::Sampled, "all samples outside the Gauss cell".into());
    }
    if skipped > 0 {
        return Check::new(
            name,
            Mode::Sampled,
            Status::Pass,
            Some(format!("{skipped} samples outside the Gauss cell skipped")),
        );
    }
    Check::pass(name, Mode::Sampled)
}

/// Verify inf-action (both formulations) for the Gauss moment map at one
/// point, via exact second-order jets of the Gauss factorization.
fn check_moment_at_point(
    quad: &ManinQuadruple,
    space: &QPSpace,
    bialg: &crate::manin::QuasiBialgebra,
    h_mats: &[Mat<Rat>],
    d: &Mat<Rat>,
) -> Result<Option<String>> {
    let re = quad.matrices.as_ref().expect("matrix realization");
    let n = re.n;
    let nn = n * n;
    let coords = &space.coords;
    let sigma = crate::moment::sigma_tensor(space);
    let flat = flatten_point(d);
    let pos = |k: usize| (k / n, k % n);

    // ψ-जets: for each h-basis X, values and first derivatives of
    // ψ(X) = −a₊(μ*X^L) at d.
    let nh = h_mats.len();
    let mut psi_vals = vec![vec![zero(); nn]; nh];
    let mut psi_ders = vec![vec![vec![zero(); nn]; nn]; nh]; // [x][w][v] = ∂_w ψ^v
    for w in 0..nn {
        // jet in direction ε₂ = E_w; for each u, direction ε₁ = E_u
        let mut form_vals = vec![Jet2::zero(); nn]; // (μ*X^L)_u as jets in ε₂, per X below
        for x in 0..nh {
            for (u, fv) in form_vals.iter_mut().enumerate() {
                let jm = rat_mat_to_jet(d, Some(pos(u)), Some(pos(w)));
                let (_, _, l) = gauss_decompose(&re.partition, &jm)
                    .map_err(|_| Error::DecompositionUndefined(0))?;
                let linv = linalg::inverse(&l).ok_or(Error::DecompositionUndefined(0))?;
                // slices: a Jet2 with only (val, d2) keeps the ε₂ dependence
                let slice0 = |m: &Mat<Jet2>| -> Mat<Jet2> {
                    m.iter()
                        .map(|row| {
                            row.iter()
                                .map(|j| Jet2 {
                                    val: j.val.clone(),
                                    d1: zero(),
                                    d2: j.d2.clone(),
                                    d12: zero(),
                                })
                                .collect()
                        })
                        .collect()
                };
                let slice1 = |m: &Mat<Jet2>| -> Mat<Jet2> {
                    m.iter()
                        .map(|row| {
                            row.iter()
                                .map(|j| Jet2 {
                                    val: j.d1.clone(),
                                    d1: zero(),
                                    d2: j.d12.clone(),
                                    d12: zero(),
                                })
                                .collect()
                        })
                        .collect()
                };
                // (μ*X^L)_u = Tr(X · μ⁻¹ · ∂_u μ)
                let xj: Mat<Jet2> = h_mats[x]
                    .iter()
                    .map(|row| row.iter().map(|c| Jet2::constant(c.clone())).collect())
                    .collect();
                let prod = linalg::mat_mul(&linalg::mat_mul(&xj, &slice0(&linv)), &slice1(&l));
                *fv = linalg::trace(&prod);
            }
            // ψ^v = −Σ_u form_u · σ^{uv}, as jets in ε₂
            let jet_point: Vec<Jet2> = (0..nn)
                .map(|k| Jet2 {
                    val: flat[k].clone(),
                    d1: zero(),
                    d2: if k == w { one() } else { zero() },
                    d12: zero(),
                })
                .collect();
            for v in 0..nn {
                let mut acc = Jet2::zero();
                for (u, fv) in form_vals.iter().enumerate() {
                    if fv.is_zero() {
                        continue;
                    }
                    let s_uv = sigma[u][v].eval(&jet_point);
                    acc = acc.add(&fv.mul(&s_uv));
                }
                let acc = acc.neg();
                if w == 0 {
                    psi_vals[x][v] = acc.val.clone();
                }
                psi_ders[x][w][v] = acc.d2.clone();
            }
        }
    }

    // affine first-order models ψ̃(X) around d
    let psi_tilde: Vec<PolyVectorField> = (0..nh)
        .map(|x| {
            let coeffs: Vec<Poly> = (0..nn)
                .map(|v| {
                    let mut p = Poly::constant(coords, psi_vals[x][v].clone());
                    for w in 0..nn {
                        if psi_ders[x][w][v].is_zero() {
                            continue;
                        }
                        let lin = Poly::var(coords, w)
                            .sub(&Poly::constant(coords, flat[w].clone()))
                            .scale(&psi_ders[x][w][v]);
                        p = p.add(&lin);
                    }
                    p
                })
                .collect();
            PolyVectorField::vector(coords, &coeffs)
        })
        .collect();

    let rho_m = &space.action[0];
    let t = &bialg.g_casimir.t;
    let psi_value_field = |coeffs: &[Rat]| -> PolyVectorField {
        let polys: Vec<Poly> = coeffs.iter().map(|c| Poly::constant(coords, c.clone())).collect();
        PolyVectorField::vector(coords, &polys)
    };

    for x in 0..nh {
        let mut ex = vec![zero(); nh];
        ex[x] = one();
        // equivariance at d: [ρ(e_α), ψX]|_d = ψ(ρ̇(e_α)X)|_d
        for (al, rho) in rho_m.iter().enumerate() {
            let lhs = rho.schouten(&psi_tilde[x]).expect("same coords");
            let moved = linalg::mat_vec(&bialg.action[al], &ex);
            let mut rhs_vals = vec![zero(); nn];
            for (k, c) in moved.iter().enumerate() {
                if !c.is_zero() {
                    for v in 0..nn {
                        rhs_vals[v] = &rhs_vals[v] + &(c * &psi_vals[k][v]);
                    }
                }
            }
            let diff = lhs.sub(&psi_value_field(&rhs_vals));
            if !diff.vanishes_at(&flat) {
                return Ok(Some(format!("equivariance fails for e_{al}, h_{x}")));
            }
        }
        // ψ(δX)|_d as a constant bivector
        let delta_x = bialg.delta(&ex);
        let mut psi_delta = PolyVectorField::zero(coords, 2);
        for i in 0..nh {
            for j in i + 1..nh {
                if delta_x[i][j].is_zero() {
                    continue;
                }
                psi_delta = psi_delta.add(
                    &psi_value_field(&psi_vals[i])
                        .wedge(&psi_value_field(&psi_vals[j]))
                        .expect("same coords")
                        .scale(&delta_x[i][j]),
                );
            }
        }
        // R1 = [ψX, π] + ψ(δX) − ½ t ψ(ρ̇X)∧ρ at d
        let mut r1 = psi_tilde[x].schouten(&space.pi).expect("same coords").add(&psi_delta);
        for (al, t_row) in t.iter().enumerate() {
            for (be, c) in t_row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let moved = linalg::mat_vec(&bialg.action[al], &ex);
                let mut mv = vec![zero(); nn];
                for (k, cc) in moved.iter().enumerate() {
                    if !cc.is_zero() {
                        for v in 0..nn {
                            mv[v] = &mv[v] + &(cc * &psi_vals[k][v]);
                        }
                    }
                }
                r1 = r1.sub(
                    &psi_value_field(&mv)
                        .wedge(&rho_m[be])
                        .expect("same coords")
                        .scale(&(&rat(1, 2) * c)),
                );
            }
        }
        if !r1.vanishes_at(&flat) {
            return Ok(Some(format!("inf-action residual nonzero for h_{x}")));
        }
        // R2 = d₋ψX + ψ(δX) at d
        let r2 = twisted_differential(space, Sign::Minus, &psi_tilde[x]).add(&psi_delta);
        if !r2.vanishes_at(&flat) {
            return Ok(Some(format!("d₋-form residual nonzero for h_{x}")));
        }
    }
    Ok(None)
}

/// (e): evaluate the two-disk annulus moduli bivector on the section
/// {1} × D and push it through the quotient differential
/// `dq(v_x, v_y) = v_y + P_{p₊}(v_x)·d + d·P_{h*}(v_x)`; compare with the
/// closed form at each sample.
fn check_moduli_annulus_agreement(
    quad: &ManinQuadruple,
    pi_closed: &PolyVectorField,
    points: &[Mat<Rat>],
) -> Result<Check> {
    let name = "(e) moduli gluing reproduces the closed form";
    let re = quad.matrices.as_ref().expect("matrix realization");
    let n = re.n;
    let nn = n * n;
    let moduli = build_moduli(&SurfaceConfig::annulus(), quad)?;
    let block_of = |i: usize| re.block_of(i);
    for (ip, dmat) in points.iter().enumerate() {
        // section point (x = 1, y = d)
        let mut point = flatten_point(&linalg::identity::<Rat>(n));
        point.extend(flatten_point(dmat));
        let vals = moduli.space.pi.eval_at::<Rat>(&point);
        let tangent = |k: usize| -> Vec<Rat> {
            if k >= nn {
                // v_y direction passes through
                let mut v = vec![zero(); nn];
                v[k - nn] = one();
                v
            } else {
                // v_x = E_{r,c}: P_{p₊}(v)·d + d·P_{h*}(v)
                let (r, c) = (k / n, k % n);
                let mut e = linalg::zeros::<Rat>(n, n);
                e[r][c] = one();
                let m = if block_of(r) <= block_of(c) {
                    linalg::mat_mul(&e, dmat)
                } else {
                    linalg::mat_mul(dmat, &e)
                };
                flatten_point(&m)
            }
        };
        let pushed = push_bivector_values(&vals, &tangent, nn);
        let closed = bivector_matrix_at(pi_closed, &flatten_point(dmat), nn);
        if pushed != closed {
            return Ok(Check::fail(
                name,
                Mode::Sampled,
                format!("pushforward differs from the closed form at sample {ip}"),
            ));
        }
    }
    Ok(Check::pass(name, Mode::Sampled))
}

/// The triangle moduli quotient versus the group bivector: Gauss-project
/// each D-factor to its H-component and compare coordinate brackets at
/// sample pairs; plus the fully symbolic route through pair reduction.
pub fn triangle_equivalence(quad: &ManinQuadruple, samples: usize, seed: u64) -> Result<CheckReport> {
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quadruple has no matrix realization".into()))?;
    let n = re.n;
    let nn = n * n;
    let mut report = CheckReport::new(&format!(
        "triangle-check n={} blocks={:?} samples={} seed={}",
        n, re.partition, samples, seed
    ));
    let s = QPGroupStructure::build(quad)?;
    let tri = build_moduli(&SurfaceConfig::triangle(), quad)?;
    let pdim = s.model.dim();

    // symbolic route: the pair reduction equals the group bivector
    report.run(|| {
        let reduced = crate::group::reduce_pair_to_group(&s).expect("affine model");
        Check::from_bool(
            "symbolic route: pair reduction equals the group bivector",
            Mode::Symbolic,
            reduced == s.pi,
            || "reduce_pair_to_group ≠ build_pi".into(),
        )
    });

    // sampled route
    report.run(|| {
        let mut skips = 0usize;
        for i in 0..samples as u64 {
            let x = sample_sl_indexed(n, seed, 2 * i);
            let y = sample_sl_indexed(n, seed, 2 * i + 1);
            // h-parts: LGH for x (via x⁻¹), HGL for y
            let Some(xinv) = linalg::inverse(&x) else {
                skips += 1;
                continue;
            };
            let (hx, hy) = match (
                gauss_decompose(&re.partition, &xinv),
                gauss_decompose(&re.partition, &y),
            ) {
                (Ok((hprime, _, _)), Ok((h, _, _))) => {
                    let hx = linalg::inverse(&hprime).expect("unipotent");
                    (hx, h)
                }
                _ => {
                    skips += 1;
                    continue;
                }
            };
            let q_point = linalg::mat_mul(&hx, &hy);
            let target = s.model.point_of_matrix(&q_point);
            // dQ columns via jets of the Gauss factorizations
            let tangent = |k: usize| -> Vec<Rat> {
                let t_mat: Mat<Rat> = if k < nn {
                    // direction in x: d(hx)·hy
                    let (r, c) = (k / n, k % n);
                    let jm = rat_mat_to_jet(&x, Some((r, c)), None);
                    let jinv = linalg::inverse(&jm).expect("invertible");
                    let (hprime, _, _) =
                        gauss_decompose(&re.partition, &jinv).expect("in cell");
                    let hxj = linalg::inverse(&hprime).expect("unipotent");
                    let dhx: Mat<Rat> =
                        hxj.iter().map(|row| row.iter().map(|j| j.d1.clone()).collect()).collect();
                    linalg::mat_mul(&dhx, &hy)
                } else {
                    let kk = k - nn;
                    let (r, c) = (kk / n, kk % n);
                    let jm = rat_mat_to_jet(&y, Some((r, c)), None);
                    let (hj, _, _) = gauss_decompose(&re.partition, &jm).expect("in cell");
                    let dhy: Mat<Rat> =
                        hj.iter().map(|row| row.iter().map(|j| j.d1.clone()).collect()).collect();
                    linalg::mat_mul(&hx, &dhy)
                };
                // express in the pattern coordinate frame
                s.model.point_of_matrix(&t_mat)
            };
            let mut point = flatten_point(&x);
            point.extend(flatten_point(&y));
            let vals = tri.space.pi.eval_at::<Rat>(&point);
            let pushed = push_bivector_values(&vals, &tangent, pdim);
            let group_vals = bivector_matrix_at(&s.pi, &target, pdim);
            if pushed != group_vals {
                return Check::fail(
                    "sampled route: triangle quotient equals the group bivector",
                    Mode::Sampled,
                    format!("brackets differ at sample pair {i}"),
                );
            }
        }
        if skips > 0 {
            return Check::fail(
                "sampled route: triangle quotient equals the group bivector",
                Mode::Sampled,
                format!("{skips} Gauss-cell skips (expected zero with the default sampler)"),
            );
        }
        Check::pass("sampled route: triangle quotient equals the group bivector", Mode::Sampled)
    });

    Ok(report)
}

/// The two orders of the second annulus gluing give different bivectors at
/// some sample point.
pub fn check_fusion_order_dependence(quad: &ManinQuadruple, samples: usize, seed: u64) -> Result<Check> {
    let name = "fusion-order dependence of the annulus";
    let a1 = build_moduli(&SurfaceConfig::annulus(), quad)?;
    let cfg2 = SurfaceConfig {
        disks: 2,
        gluings: vec![((0, 1), (1, 0)), ((1, 1), (0, 0))],
    };
    let a2 = build_moduli(&cfg2, quad)?;
    let re = quad.matrices.as_ref().expect("matrix realization");
    let n = re.n;
    let diff = a1.space.pi.sub(&a2.space.pi);
    for i in 0..samples as u64 {
        let mut point = flatten_point(&sample_sl_indexed(n, seed, 2 * i));
        point.extend(flatten_point(&sample_sl_indexed(n, seed, 2 * i + 1)));
        if !diff.vanishes_at(&point) {
            return Ok(Check::pass(name, Mode::Sampled));
        }
    }
    Ok(Check::fail(
        name,
        Mode::Sampled,
        "the two gluing orders agree at every sample".into(),
    ))
}

/// Functoriality smoke test: forgetting a factor of the unglued two-disk
/// configuration is a quasi-Poisson map (brackets of pulled-back functions
/// agree, exactly).
pub fn check_forgetful_functoriality(quad: &ManinQuadruple) -> Result<Check> {
    let name = "forgetting a disk factor is quasi-Poisson";
    let two = build_moduli(&SurfaceConfig::two_disks(), quad)?;
    let one_disk = build_moduli(&SurfaceConfig::disk(), quad)?;
    let re = quad.matrices.as_ref().expect("matrix realization");
    let nn = re.n * re.n;
    // pullback along pr₁ embeds coordinate functions of D as the first block
    for a in 0..nn {
        for b in a + 1..nn {
            let fa = Poly::var(&two.space.coords, a);
            let fb = Poly::var(&two.space.coords, b);
            let da = differential_of(&two.space, &fa);
            let db = differential_of(&two.space, &fb);
            let big = two.space.pi.apply(&[&da, &db]).expect("same coords");
            let ga = Poly::var(&one_disk.space.coords, a);
            let gb = Poly::var(&one_disk.space.coords, b);
            let sa = differential_of(&one_disk.space, &ga);
            let sb = differential_of(&one_disk.space, &gb);
            let small = one_disk.space.pi.apply(&[&sa, &sb]).expect("same coords");
            let lifted = small.lift(&two.space.coords, &(0..nn).collect::<Vec<_>>());
            if big != lifted {
                return Ok(Check::fail(name, Mode::Symbolic, format!("pair ({a},{b})")));
            }
        }
    }
    Ok(Check::pass(name, Mode::Symbolic))
}

fn differential_of(space: &QPSpace, f: &Poly) -> crate::multivector::PolyForm {
    let coeffs: Vec<Poly> = (0..space.coords.len()).map(|i| f.diff(i)).collect();
    crate::multivector::PolyForm::one_form(&space.coords, &coeffs)
}

/// The moduli QPSpace invariant suite at sample points.
pub fn check_moduli_invariants(m: &ModuliSpace, samples: usize, seed: u64, parallel: bool) -> Vec<Check> {
    let factors = m.config.disks;
    let points: Vec<Vec<Rat>> = (0..samples as u64)
        .map(|i| {
            let mut p = Vec::new();
            for f in 0..factors as u64 {
                p.extend(flatten_point(&sample_sl_indexed(m.n, seed, i * factors as u64 + f)));
            }
            p
        })
        .collect();
    let _ = parallel;
    m.space.check_invariants(Some(&points))
}
