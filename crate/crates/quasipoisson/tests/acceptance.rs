//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with its runtime. Every identity is exact (rational zero), either as a
//! polynomial statement or at exactly sampled SL(n) points; runtime bounds
//! are asserted where stated.

use quasipoisson::fusion::{group_space, hhat_space};
use quasipoisson::group::QPGroupStructure;
use quasipoisson::manin::{
    check_mcoc_matches_jac_coc, compositions, double_from_bialgebra, double_matches_quadruple,
    parabolic_quadruple, swap_ac,
};
use quasipoisson::moduli::{check_annulus_claims, triangle_equivalence};
use quasipoisson::moment::{
    check_anchor_compatibility, check_dplus_left_invariant, check_inf_action, check_lie_h_star,
    check_square_zero, psi_identity_moment,
};
use quasipoisson::poly::Poly;
use quasipoisson::report::Status;
use std::time::Instant;

struct Criterion {
    name: &'static str,
    t0: Instant,
}

impl Criterion {
    fn start(name: &'static str) -> Self {
        Criterion {
            name,
            t0: Instant::now(),
        }
    }

    fn finish(self, ok: bool, detail: &str) {
        let ms = self.t0.elapsed().as_millis();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("[acceptance] {}: {} ({} ms){}", self.name, status, ms, detail);
        assert!(ok, "{} failed{}", self.name, detail);
    }

    fn elapsed_ms(&self) -> u128 {
        self.t0.elapsed().as_millis()
    }
}

fn all_partitions_upto(nmax: usize) -> Vec<(usize, Vec<usize>)> {
    (2..=nmax)
        .flat_map(|n| compositions(n).into_iter().map(move |p| (n, p)))
        .collect()
}

#[test]
fn criterion_01_quadruple_axioms() {
    let c = Criterion::start("criterion 1 (quadruple axioms, all partitions N ≤ 4)");
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in all_partitions_upto(4) {
        let q = parabolic_quadruple(n, &p).unwrap();
        let checks = q.check();
        if !checks.iter().all(|x| x.status == Status::Pass) {
            ok = false;
            detail = format!(" — sl({n}) {:?}", p);
            break;
        }
        // the definition is symmetric under a ↔ c
        let swapped = swap_ac(&q);
        if !swapped.check().iter().all(|x| x.status == Status::Pass) {
            ok = false;
            detail = format!(" — swapped sl({n}) {:?}", p);
            break;
        }
    }
    let within = c.elapsed_ms() < 1000;
    let ms_note = if within { String::new() } else { " — over the 1 s target".into() };
    c.finish(ok && within, &format!("{detail}{ms_note}"));
}

#[test]
fn criterion_02_bialgebra_equivalence() {
    let c = Criterion::start("criterion 2 (bialgebra equivalence: mcoc, co-Jacobi, double roundtrip)");
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in all_partitions_upto(4) {
        let q = parabolic_quadruple(n, &p).unwrap();
        let b = q.derive_bialgebra().unwrap();
        let mut checks = b.check_all();
        checks.push(check_mcoc_matches_jac_coc(&q, &b).unwrap());
        let dbl = double_from_bialgebra(&b).unwrap();
        checks.extend(dbl.check());
        checks.push(double_matches_quadruple(&dbl, &q).unwrap());
        if let Some(bad) = checks.iter().find(|x| x.status != Status::Pass) {
            ok = false;
            detail = format!(" — sl({n}) {:?}: {}", p, bad.name);
            break;
        }
    }
    let within = c.elapsed_ms() < 5000;
    c.finish(
        ok && within,
        &format!("{detail}{}", if within { "" } else { " — over the 5 s target" }),
    );
}

#[test]
fn criterion_03_group_structure() {
    let c = Criterion::start("criterion 3 (group bivector identities, all partitions N ≤ 4)");
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in all_partitions_upto(4) {
        let q = parabolic_quadruple(n, &p).unwrap();
        let s = QPGroupStructure::build(&q).unwrap();
        let checks = vec![
            s.check_pi_vanishes_at_identity(),
            s.check_invariance(),
            s.check_quasi_jacobi(),
            s.check_multiplicativity(),
            s.check_liedpi(),
            s.check_linearization_matches_delta(),
        ];
        if let Some(bad) = checks.iter().find(|x| x.status != Status::Pass) {
            ok = false;
            detail = format!(" — sl({n}) {:?}: {} ({:?})", p, bad.name, bad.witness);
            break;
        }
    }
    let within = c.elapsed_ms() < 60_000;
    c.finish(
        ok && within,
        &format!("{detail}{}", if within { "" } else { " — over the 60 s target" }),
    );
}

#[test]
fn criterion_04_bracket_table() {
    let c = Criterion::start("criterion 4 (closed-form bracket ≡ coordinate bracket)");
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in all_partitions_upto(4) {
        let q = parabolic_quadruple(n, &p).unwrap();
        let s = QPGroupStructure::build(&q).unwrap();
        let check = s.check_closed_form_brackets();
        if check.status != Status::Pass {
            ok = false;
            detail = format!(" — sl({n}) {:?}: {:?}", p, check.witness);
            break;
        }
    }
    // the pinned instance from the worked example
    let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
    let s = QPGroupStructure::build(&q).unwrap();
    let x12 = Poly::var_named(&s.model.coords, "x12").unwrap();
    let x23 = Poly::var_named(&s.model.coords, "x23").unwrap();
    let br = s.coordinate_bracket(&x12, &x23).unwrap();
    if format!("{br}") != "x13 - 1/2*x12*x23" {
        ok = false;
        detail = format!(" — {{x12,x23}} printed as {br}");
    }
    c.finish(ok, &detail);
}

#[test]
fn criterion_05_two_constructions_of_pi() {
    let c = Criterion::start("criterion 5 (pair reduction ≡ group bivector, all partitions N ≤ 4)");
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in all_partitions_upto(4) {
        let q = parabolic_quadruple(n, &p).unwrap();
        let s = QPGroupStructure::build(&q).unwrap();
        let check = s.check_reduce_pair();
        if check.status != Status::Pass {
            ok = false;
            detail = format!(" — sl({n}) {:?}", p);
            break;
        }
    }
    c.finish(ok, &detail);
}

#[test]
fn criterion_06_fusion_algebra() {
    let c = Criterion::start("criterion 6 (fusion associativity, non-commutativity, diagonal)");
    let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
    let h = hhat_space(&q).unwrap();
    let left = h.fuse(&h).unwrap().fuse(&h).unwrap();
    let right = h.fuse(&h.fuse(&h).unwrap()).unwrap();
    let assoc = left.same_structure(&right);
    // non-commutativity: the correction term flips under the opposite order
    let fused = h.fuse(&h).unwrap();
    let noncomm = !fused.pi.is_zero() && fused.pi != fused.pi.neg();
    let coiso = h.check_coisotropic_action(None).status == Status::Pass;
    let diag = h.check_diagonal_qp(None).status == Status::Pass;
    c.finish(
        assoc && noncomm && coiso && diag,
        &format!(" — assoc {assoc}, noncomm {noncomm}, coisotropic {coiso}, diagonal {diag}"),
    );
}

#[test]
fn criterion_07_moment_calculus() {
    let c = Criterion::start("criterion 7 (d±², Lie-H-star, identity-μ moment action)");
    let mut ok = true;
    let mut detail = String::new();
    // d±² = 0 on generators for every affine example with N ≤ 3 (both the
    // group side and the dual side)
    'outer: for (n, p) in all_partitions_upto(3) {
        for quad in [parabolic_quadruple(n, &p).unwrap(), swap_ac(&parabolic_quadruple(n, &p).unwrap())] {
            let s = QPGroupStructure::build(&quad).unwrap();
            let space = group_space(&s).unwrap();
            let checks = check_square_zero(&space, None);
            if !checks.iter().all(|x| x.status == Status::Pass) {
                ok = false;
                detail = format!(" — d±² fails on sl({n}) {:?}", p);
                break 'outer;
            }
            if check_anchor_compatibility(&space).status != Status::Pass {
                ok = false;
                detail = format!(" — anchors fail on sl({n}) {:?}", p);
                break 'outer;
            }
            if check_dplus_left_invariant(&s, &space).status != Status::Pass {
                ok = false;
                detail = format!(" — d₊X^L fails on sl({n}) {:?}", p);
                break 'outer;
            }
        }
    }
    // Lie-H-star for every partition with N ≤ 4
    if ok {
        for (n, p) in all_partitions_upto(4) {
            let q = parabolic_quadruple(n, &p).unwrap();
            let s = QPGroupStructure::build(&q).unwrap();
            let space = group_space(&s).unwrap();
            if check_lie_h_star(&s, &space).status != Status::Pass {
                ok = false;
                detail = format!(" — Lie-H-star fails on sl({n}) {:?}", p);
                break;
            }
        }
    }
    // identity-μ moment action on H* for the sl(3) partitions, both
    // formulations agreeing identically
    if ok {
        for p in compositions(3) {
            let q = parabolic_quadruple(3, &p).unwrap();
            let bialg = q.derive_bialgebra().unwrap();
            let s_star = QPGroupStructure::build(&swap_ac(&q)).unwrap();
            let space = group_space(&s_star).unwrap();
            let re = q.matrices.as_ref().unwrap();
            let h_mats: Vec<_> = q.a.iter().map(|r| re.realize(r)).collect();
            let psi = psi_identity_moment(&space, &s_star.model, &h_mats).unwrap();
            let checks = check_inf_action(&space, &bialg, &psi, "identity μ");
            if !checks.iter().all(|x| x.status == Status::Pass) {
                ok = false;
                detail = format!(" — identity-μ fails on sl(3) {:?}", p);
                break;
            }
        }
    }
    c.finish(ok, &detail);
}

#[test]
fn criterion_08_annulus_suite() {
    let c = Criterion::start("criterion 8 (annulus suite, n=2, 100 samples, seed 42)");
    let q = parabolic_quadruple(2, &[1, 1]).unwrap();
    let report = check_annulus_claims(&q, 100, 42, false).unwrap();
    let mut ok = report.all_passed();
    let mut detail = if ok {
        String::new()
    } else {
        format!(" — {report}")
    };
    // (c) symbolically for n = 3 as well
    if ok {
        for p in [vec![1usize, 1, 1], vec![1, 2]] {
            let q3 = parabolic_quadruple(3, &p).unwrap();
            let r3 = check_annulus_claims(&q3, 1, 42, false).unwrap();
            let inc = r3
                .checks
                .iter()
                .find(|x| x.name.starts_with("(c)"))
                .expect("inclusion check present");
            if inc.status != Status::Pass {
                ok = false;
                detail = format!(" — (c) fails for n=3 {:?}", p);
                break;
            }
        }
    }
    let within = c.elapsed_ms() < 120_000;
    c.finish(
        ok && within,
        &format!("{detail}{}", if within { "" } else { " — over the 120 s target" }),
    );
}

#[test]
fn criterion_09_triangle_suite() {
    let c = Criterion::start("criterion 9 (triangle suite, n=3, 50 samples, zero skips)");
    let q = parabolic_quadruple(3, &[1, 1, 1]).unwrap();
    let report = triangle_equivalence(&q, 50, 7).unwrap();
    // the sampled-route check fails on any Gauss-cell skip by construction
    let ok = report.all_passed();
    c.finish(ok, &if ok { String::new() } else { format!(" — {report}") });
}

#[test]
fn criterion_10_determinism() {
    let c = Criterion::start("criterion 10 (identical flags and seed ⇒ byte-identical JSON)");
    let q = parabolic_quadruple(2, &[1, 1]).unwrap();
    let a = check_annulus_claims(&q, 20, 42, false).unwrap().to_json();
    let b = check_annulus_claims(&q, 20, 42, true).unwrap().to_json();
    let again = check_annulus_claims(&q, 20, 42, false).unwrap().to_json();
    let t1 = triangle_equivalence(&q, 10, 7).unwrap().to_json();
    let t2 = triangle_equivalence(&q, 10, 7).unwrap().to_json();
    let ok = a == b && a == again && t1 == t2;
    c.finish(ok, " — including parallel vs sequential evaluation");
}
