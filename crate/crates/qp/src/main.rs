//! `qp` — exact verification of quasi-Poisson Lie structures.
//!
//! Every subcommand builds the requested objects over exact rationals, runs
//! the registered identity checks in a fixed order, and prints a report
//! (text or JSON). Exit codes: 0 all checks pass, 1 some check failed,
//! 2 invalid input or flags.

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasipoisson::fusion::{group_space, hhat_space};
use quasipoisson::group::QPGroupStructure;
use quasipoisson::manin::{
    check_mcoc_matches_jac_coc, double_from_bialgebra, double_matches_quadruple, parabolic_quadruple,
    swap_ac, ManinQuadruple,
};
use quasipoisson::moduli::{
    check_annulus_claims, check_forgetful_functoriality, check_fusion_order_dependence,
    triangle_equivalence,
};
use quasipoisson::poly::Poly;
use quasipoisson::report::{Check, CheckReport, Mode};
use quasipoisson::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qp", version, about = "Exact checks for quasi-Poisson Lie theory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Matrix size for the built-in parabolic family.
    #[arg(long)]
    n: Option<usize>,
    /// Block partition as a comma list, e.g. `--blocks 1,1,1`.
    #[arg(long)]
    blocks: Option<String>,
    /// JSON file describing a quadruple (overrides --n/--blocks).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Number of sample points for sampled checks.
    #[arg(long)]
    samples: Option<usize>,
    /// PRNG seed for sampled checks (falls back to $QP_SEED, then 42).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Evaluate independent sample points in parallel.
    #[arg(long)]
    parallel: bool,
}

impl CommonArgs {
    fn seed(&self, default: u64) -> u64 {
        self.seed
            .or_else(|| std::env::var("QP_SEED").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(default)
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn blocks(&self) -> Result<Vec<usize>, Error> {
        let s = self
            .blocks
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("missing --blocks".into()))?;
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad block entry {p:?}")))
            })
            .collect()
    }

    fn quadruple(&self) -> Result<ManinQuadruple, Error> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad JSON in {}: {e}", path.display())))?;
            return quasipoisson::jsonio::parse_quadruple(&value);
        }
        let n = self.n.ok_or_else(|| Error::InvalidInput("missing --n (or --file)".into()))?;
        let blocks = self.blocks()?;
        parabolic_quadruple(n, &blocks)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Manin quadruple axioms.
    VerifyQuadruple(CommonArgs),
    /// Derive the Lie g-quasi-bialgebra and verify its axioms.
    DeriveBialgebra(CommonArgs),
    /// Print the quasi-Poisson bracket of two coordinate functions.
    GroupBracket {
        #[command(flatten)]
        common: CommonArgs,
        /// Coordinate pair, e.g. `--pair 1,2:2,3` for {x12, x23}.
        #[arg(long)]
        pair: String,
    },
    /// Run the full group-level identity suite.
    CheckGroup(CommonArgs),
    /// Fusion algebra checks on the space Ĥ.
    FuseCheck(CommonArgs),
    /// Twisted differentials, algebroid brackets and moment maps.
    MomentCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Also run the sampled Gauss moment-map check on D.
        #[arg(long)]
        sampled: bool,
    },
    /// The annulus suite on D = SL(n).
    AnnulusCheck(CommonArgs),
    /// The triangle moduli quotient versus the group bivector.
    TriangleCheck(CommonArgs),
    /// The full default verification sweep.
    Report(CommonArgs),
}

fn emit(report: &CheckReport, format: Format, extra: Option<serde_json::Value>) -> ExitCode {
    match format {
        Format::Text => print!("{report}"),
        Format::Json => match extra {
            None => println!("{}", report.to_json()),
            Some(data) => {
                let mut v: serde_json::Value =
                    serde_json::from_str(&report.to_json()).expect("own serialization");
                v.as_object_mut().expect("object").insert("data".into(), data);
                println!("{}", serde_json::to_string_pretty(&v).expect("serialization"));
            }
        },
    }
    ExitCode::from(report.exit_code() as u8)
}

fn bialgebra_report(quad: &ManinQuadruple, name: &str) -> Result<(CheckReport, serde_json::Value), Error> {
    let mut report = CheckReport::new(name);
    let bialg = quad.derive_bialgebra()?;
    report.extend(bialg.check_all());
    report.run(|| check_mcoc_matches_jac_coc(quad, &bialg).unwrap_or_else(|e| {
        Check::fail("mcoc ⇔ jac-coc term-by-term", Mode::Symbolic, e.to_string())
    }));
    report.run(|| match double_from_bialgebra(&bialg) {
        Ok(dbl) => double_matches_quadruple(&dbl, quad)
            .unwrap_or_else(|e| Check::fail("double reproduces quadruple", Mode::Symbolic, e.to_string())),
        Err(e) => Check::fail("double reproduces quadruple", Mode::Symbolic, e.to_string()),
    });
    let data = quasipoisson::jsonio::bialgebra_json(&bialg);
    Ok((report, data))
}

fn group_report(quad: &ManinQuadruple, name: &str) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(name);
    report.extend(quad.check());
    let bialg = quad.derive_bialgebra()?;
    report.extend(bialg.check_all());
    let s = QPGroupStructure::build(quad)?;
    for f in [
        QPGroupStructure::check_pi_vanishes_at_identity,
        QPGroupStructure::check_invariance,
        QPGroupStructure::check_quasi_jacobi,
        QPGroupStructure::check_multiplicativity,
        QPGroupStructure::check_liedpi,
        QPGroupStructure::check_linearization_matches_delta,
        QPGroupStructure::check_rho_hat_action,
        QPGroupStructure::check_closed_form_brackets,
        QPGroupStructure::check_reduce_pair,
    ] {
        report.run(|| f(&s));
    }
    Ok(report)
}

fn fuse_report(quad: &ManinQuadruple, name: &str) -> Result<CheckReport, Error> {
    let mut report = CheckReport::new(name);
    let h = hhat_space(quad)?;
    report.run(|| {
        let left = h.fuse(&h).and_then(|ab| ab.fuse(&h));
        let right = h.fuse(&h).and_then(|bc| h.fuse(&bc));
        match (left, right) {
            (Ok(l), Ok(r)) => Check::from_bool(
                "fusion is associative",
                Mode::Symbolic,
                l.same_structure(&r),
                || "the two associations differ".into(),
            ),
            (Err(e), _) | (_, Err(e)) => Check::fail("fusion is associative", Mode::Symbolic, e.to_string()),
        }
    });
    report.run(|| {
        // the correction term is order-sensitive: fusing in the opposite
        // order flips it, so the fused bivectors differ unless it vanishes
        let fused = h.fuse(&h).expect("same algebra");
        Check::from_bool(
            "fusion is not commutative (witness)",
            Mode::Symbolic,
            !fused.pi.is_zero() && fused.pi != fused.pi.neg(),
            || "fusion correction term vanishes".into(),
        )
    });
    report.run(|| {
        let prod = h.product(&h);
        match prod.internal_fuse(0, 1) {
            Ok(infused) => Check::from_bool(
                "internal fusion of a product equals fusion",
                Mode::Symbolic,
                h.fuse(&h).map(|f| infused.same_structure(&f)).unwrap_or(false),
                || "internal fusion differs from direct fusion".into(),
            ),
            Err(e) => Check::fail("internal fusion of a product equals fusion", Mode::Symbolic, e.to_string()),
        }
    });
    report.run(|| h.check_coisotropic_action(None));
    report.run(|| h.check_diagonal_qp(None));
    report.run(|| {
        let checks = h.fuse(&h).expect("same algebra").check_invariants(None);
        let failed = checks.iter().find(|c| c.status == quasipoisson::report::Status::Fail);
        match failed {
            None => Check::pass("fusion preserves the quasi-Poisson axioms", Mode::Symbolic),
            Some(c) => Check::fail(
                "fusion preserves the quasi-Poisson axioms",
                Mode::Symbolic,
                c.witness.clone().unwrap_or_default(),
            ),
        }
    });
    report.run(|| {
        check_forgetful_functoriality(quad)
            .unwrap_or_else(|e| Check::fail("forgetting a disk factor is quasi-Poisson", Mode::Symbolic, e.to_string()))
    });
    Ok(report)
}

fn moment_report(quad: &ManinQuadruple, name: &str, sampled: Option<(usize, u64, bool)>) -> Result<CheckReport, Error> {
    use quasipoisson::moment::*;
    let mut report = CheckReport::new(name);
    let s = QPGroupStructure::build(quad)?;
    let space = group_space(&s)?;
    report.extend(check_square_zero(&space, None));
    report.run(|| check_anchor_compatibility(&space));
    report.run(|| check_dplus_left_invariant(&s, &space));
    report.run(|| check_anchor_homomorphism(&space));
    report.run(|| {
        let f = Poly::var(&space.coords, 0);
        check_algebroid_leibniz(&space, &f)
    });
    report.run(|| check_lie_h_star(&s, &space));
    // identity moment map on the dual group
    let dual_quad = swap_ac(quad);
    let s_star = QPGroupStructure::build(&dual_quad)?;
    let star_space = group_space(&s_star)?;
    let re = quad
        .matrices
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("moment checks need a matrix realization".into()))?;
    let h_mats: Vec<_> = quad.a.iter().map(|r| re.realize(r)).collect();
    let bialg = quad.derive_bialgebra()?;
    let psi = psi_identity_moment(&star_space, &s_star.model, &h_mats)?;
    report.extend(check_inf_action(&star_space, &bialg, &psi, "identity μ on H*"));
    // left multiplication of H on itself
    let psi_left: Vec<_> = s
        .h_mats
        .iter()
        .map(|m| {
            quasipoisson::group::right_invariant_field(&s.model, m)
                .expect("h tangency")
                .neg()
        })
        .collect();
    report.extend(check_inf_action(&space, &s.bialgebra, &psi_left, "left multiplication on H"));
    if let Some((samples, seed, parallel)) = sampled {
        let ann = check_annulus_claims(quad, samples, seed, parallel)?;
        for c in ann.checks {
            if c.name.starts_with("(d)") {
                report.push(c);
            }
        }
    }
    Ok(report)
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    Ok(match cli.cmd {
        Cmd::VerifyQuadruple(common) => {
            let quad = common.quadruple()?;
            let mut report = CheckReport::new("verify-quadruple");
            report.extend(quad.check());
            emit(&report, common.format, None)
        }
        Cmd::DeriveBialgebra(common) => {
            let quad = common.quadruple()?;
            let (report, data) = bialgebra_report(&quad, "derive-bialgebra")?;
            if common.format == Format::Text {
                print!("{report}");
                println!("{}", serde_json::to_string_pretty(&data).expect("serialization"));
                ExitCode::from(report.exit_code() as u8)
            } else {
                emit(&report, common.format, Some(data))
            }
        }
        Cmd::GroupBracket { common, pair } => {
            let quad = common.quadruple()?;
            let s = QPGroupStructure::build(&quad)?;
            let (p1, p2) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput("--pair wants i,j:k,l".into()))?;
            let parse_pos = |s: &str| -> Result<(usize, usize), Error> {
                let (a, b) = s
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidInput("coordinate wants i,j".into()))?;
                Ok((
                    a.trim().parse().map_err(|_| Error::InvalidInput("bad index".into()))?,
                    b.trim().parse().map_err(|_| Error::InvalidInput("bad index".into()))?,
                ))
            };
            let (i, j) = parse_pos(p1)?;
            let (k, l) = parse_pos(p2)?;
            let f = coord_poly(&s, i, j)?;
            let g = coord_poly(&s, k, l)?;
            let bracket = s.coordinate_bracket(&f, &g)?;
            match common.format {
                Format::Text => println!("{{x{i}{j}, x{k}{l}}} = {bracket}"),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "command": "group-bracket",
                        "pair": format!("{i},{j}:{k},{l}"),
                        "bracket": format!("{bracket}"),
                    }))
                    .expect("serialization")
                ),
            }
            ExitCode::SUCCESS
        }
        Cmd::CheckGroup(common) => {
            let quad = common.quadruple()?;
            let report = group_report(&quad, "check-group")?;
            emit(&report, common.format, None)
        }
        Cmd::FuseCheck(common) => {
            let quad = common.quadruple()?;
            let report = fuse_report(&quad, "fuse-check")?;
            emit(&report, common.format, None)
        }
        Cmd::MomentCheck { common, sampled } => {
            let quad = common.quadruple()?;
            let sampled_args = sampled.then(|| (common.samples(100), common.seed(7), common.parallel));
            let report = moment_report(&quad, "moment-check", sampled_args)?;
            emit(&report, common.format, None)
        }
        Cmd::AnnulusCheck(common) => {
            let quad = common.quadruple()?;
            let report = check_annulus_claims(&quad, common.samples(100), common.seed(42), common.parallel)?;
            emit(&report, common.format, None)
        }
        Cmd::TriangleCheck(common) => {
            let quad = common.quadruple()?;
            let mut report = triangle_equivalence(&quad, common.samples(50), common.seed(7))?;
            report.run(|| {
                check_fusion_order_dependence(&quad, common.samples(50).min(10), common.seed(7)).unwrap_or_else(
                    |e| Check::fail("fusion-order dependence of the annulus", Mode::Sampled, e.to_string()),
                )
            });
            emit(&report, common.format, None)
        }
        Cmd::Report(common) => {
            let quad = common.quadruple()?;
            let mut report = group_report(&quad, "report")?;
            let (bial, _) = bialgebra_report(&quad, "")?;
            report.extend(bial.checks);
            report.extend(fuse_report(&quad, "")?.checks);
            report.extend(moment_report(&quad, "", None)?.checks);
            report.extend(
                check_annulus_claims(&quad, common.samples(25), common.seed(42), common.parallel)?.checks,
            );
            report.extend(triangle_equivalence(&quad, common.samples(25), common.seed(7))?.checks);
            emit(&report, common.format, None)
        }
    })
}

fn coord_poly(s: &QPGroupStructure, i: usize, j: usize) -> Result<Poly, Error> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("coordinates are 1-based".into()));
    }
    s.model
        .coord_of_position((i - 1, j - 1))
        .map(|k| Poly::var(&s.model.coords, k))
        .ok_or_else(|| Error::InvalidInput(format!("(x{i}{j}) is not a pattern coordinate")))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
