use std::time::Instant;

use num_complex::Complex;
use num_rational::Rational64;

use cl13::algebra::{
    anticommutator, exp_default, gamma_rep, hermitian_spectrum, inverse, rank, CliffordElement, ExactElement, METRIC,
};
use cl13::fields::{
    bianchi_current_check, build_pure_gauge, check_h_identities, check_hb_identities, reduce, residual_dymym,
    residual_mdymw, sample_points, DerivMode, FieldFamily, FieldOverlay, FieldSetDymym, PhiChoice, PotentialFamily,
    SpacetimePoint,
};
use cl13::rng::{derive_seed, random_element, substream};
use cl13::subspaces::{
    exact_standard_idempotent, in_ideal, in_sp_group, is_hermitian_idempotent_exact, matrix_sp_dimension, subspace_basis,
    HermitianIdempotent, IdealKind, Space, SpaceSampler,
};
use cl13::symmetries::{
    bilinear_form, check_current_conservation, covariance_check, group_action_defect, TransformationSpec,
};

use crate::config::{ConfigError, FamilyChoice, ScenarioConfig, Suite};
use crate::report::{Check, Report, Status};

type E = CliffordElement;
type Q = ExactElement;

/// Outcome of one computation: the residual compared against the
/// tolerance and, optionally, the measured quantity it derives from.
struct Measured {
    residual: f64,
    value: Option<f64>,
}

fn residual(r: f64) -> cl13::Result<Measured> {
    Ok(Measured { residual: r, value: None })
}

fn measured(r: f64, v: f64) -> cl13::Result<Measured> {
    Ok(Measured { residual: r, value: Some(v) })
}

struct Runner<'a> {
    cfg: &'a ScenarioConfig,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn check(&mut self, name: impl Into<String>, anchor: &str, tol: f64, f: impl FnOnce() -> cl13::Result<Measured>) {
        let tolerance = self.cfg.tol.unwrap_or(tol);
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = self.cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (residual, value, error) = match outcome {
            Ok(m) => (Some(m.residual), m.value, None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        let pass = residual.is_some_and(|r| r.is_finite() && r <= tolerance);
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            tolerance,
            value,
            error,
            elapsed_ms,
        });
    }

    fn points(&self, label: &str) -> Vec<SpacetimePoint> {
        sample_points(derive_seed(self.cfg.seed, label), self.cfg.samples)
    }

    fn idempotent(&self) -> HermitianIdempotent {
        HermitianIdempotent::from_label(&self.cfg.idempotent).expect("validated")
    }

    fn families(&self) -> cl13::Result<Vec<FieldFamily>> {
        match &self.cfg.family {
            FamilyChoice::Explicit(f) => Ok(vec![f.clone()]),
            FamilyChoice::Named(_) => {
                let sampler = SpaceSampler::new(Space::SpAlgebra)?;
                Ok((0..self.cfg.families)
                    .map(|k| FieldFamily::random(&sampler, &mut substream(self.cfg.seed, &format!("family{k}")), 3, 0.5))
                    .collect())
            }
        }
    }
}

fn algebra(r: &mut Runner) {
    r.check("algebra.generator_relations", "e^a e^b + e^b e^a = 2η^{ab}e (exact)", 0.0, || {
        let mismatches = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let two_eta = Rational64::from_integer(2 * i64::from(METRIC.component(a, b)));
                anticommutator(&Q::generator(a), &Q::generator(b)) != Q::unit().scale_real(two_eta)
            })
            .count();
        residual(mismatches as f64)
    });
    let seed = r.cfg.seed;
    r.check("algebra.involutions", "(UV)* = V*U*, (UV)† = V†U†, conj(UV) = conj(U)conj(V), all involutive", 1e-12, || {
        let mut rng = substream(seed, "involutions");
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let (u, v) = (random_element(&mut rng, 1.0), random_element(&mut rng, 1.0));
            let uv = u * v;
            worst = [
                uv.pseudo_conj().distance(&(v.pseudo_conj() * u.pseudo_conj())),
                uv.herm_conj().distance(&(v.herm_conj() * u.herm_conj())),
                uv.complex_conj().distance(&(u.complex_conj() * v.complex_conj())),
                u.pseudo_conj().pseudo_conj().distance(&u),
                u.herm_conj().herm_conj().distance(&u),
            ]
            .into_iter()
            .fold(worst, f64::max);
        }
        residual(worst)
    });
    r.check("algebra.representation", "γ(UV) = γ(U)γ(V) and γ(U†) = γ(U)^H", 1e-12, || {
        let mut rng = substream(seed, "representation");
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let (u, v) = (random_element(&mut rng, 1.0), random_element(&mut rng, 1.0));
            worst = worst
                .max((gamma_rep(&(u * v)) - gamma_rep(&u) * gamma_rep(&v)).frobenius_norm())
                .max((gamma_rep(&u.herm_conj()) - gamma_rep(&u).adjoint()).frobenius_norm());
        }
        residual(worst)
    });
    r.check("algebra.exp_symplectic", "exp maps sp(cl(1,3)) into Sp(cl(1,3))", 1e-9, || {
        let sampler = SpaceSampler::new(Space::SpAlgebra)?;
        let mut rng = substream(seed, "exp");
        let mut worst = 0.0f64;
        for _ in 0..100 {
            worst = worst.max(in_sp_group(&exp_default(&sampler.draw_algebra(&mut rng, 1.0))?, f64::INFINITY).residual);
        }
        residual(worst)
    });
}

fn subspaces(r: &mut Runner) {
    r.check("subspaces.sp_dimension", "dim sp(cl(1,3)) = 10", 0.0, || {
        let d = subspace_basis(Space::SpAlgebra)?.dim as f64;
        measured((d - 10.0).abs(), d)
    });
    r.check("subspaces.matrix_sp_dimension", "dim sp(4, R) = 10", 0.0, || {
        let d = matrix_sp_dimension(2)? as f64;
        measured((d - 10.0).abs(), d)
    });
    let seed = r.cfg.seed;
    r.check("subspaces.sp_group_closure", "V1, V2 ∈ Sp(cl(1,3)) ⇒ V1V2 ∈ Sp(cl(1,3))", 1e-9, || {
        let sampler = SpaceSampler::new(Space::SpGroup)?;
        let mut rng = substream(seed, "sp_group");
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let v = sampler.draw(&mut rng, 0.8)? * sampler.draw(&mut rng, 0.8)?;
            worst = worst.max(in_sp_group(&v, f64::INFINITY).residual);
        }
        residual(worst)
    });
}

fn idempotents(r: &mut Runner) {
    let seed = r.cfg.seed;
    for n in 1..=4usize {
        r.check(format!("idempotents.t{n}.conditions"), "t² = t, t† = t, t̄J = Jt (exact)", 0.0, || {
            let ok = exact_standard_idempotent(n).is_some_and(|t| is_hermitian_idempotent_exact(&t));
            residual(if ok { 0.0 } else { 1.0 })
        });
        r.check(format!("idempotents.t{n}.lie_dimension"), "dim L(t) = rank(t)²", 0.0, || {
            let t = HermitianIdempotent::standard(n)?;
            let rk = rank(&gamma_rep(t.element()), 1e-9) as f64;
            let d = subspace_basis(Space::LieAlgebra(&t))?.dim as f64;
            measured((d - rk * rk).abs(), d)
        });
        r.check(format!("idempotents.t{n}.gauge_group"), "U ∈ G(t): U†U = e, [U, t] = 0", 1e-10, || {
            let t = HermitianIdempotent::standard(n)?;
            let sampler = SpaceSampler::new(Space::GaugeGroup(&t))?;
            let mut rng = substream(seed, &format!("gauge_t{n}"));
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let u = sampler.draw(&mut rng, 0.8)?;
                worst = worst
                    .max(in_ideal(&u, &t, IdealKind::GaugeGroup, f64::INFINITY).residual)
                    .max((u * *t.element() - *t.element() * u).norm());
            }
            residual(worst)
        });
    }
}

fn reduced(fam: &FieldFamily, t: &HermitianIdempotent, m: f64) -> cl13::Result<FieldSetDymym> {
    Ok(reduce(&build_pure_gauge(fam, t, m, PhiChoice::Zero)?))
}

fn reduction(r: &mut Runner) -> cl13::Result<()> {
    let t = r.idempotent();
    let pts = r.points("reduction");
    let families = r.families()?;
    let ms = r.cfg.m_values.clone();
    for (k, fam) in families.iter().enumerate() {
        r.check(format!("reduction.family{k}.h_identities"), "hh+hh = 2ηe, ¼h^μh_μ = e, h^μh^νh_μ = h_μh^νh^μ = -2h^ν", 1e-10, || {
            let fs = build_pure_gauge(fam, &t, 1.0, PhiChoice::Zero)?;
            let mut worst = 0.0f64;
            for x in &pts {
                worst = worst.max(check_h_identities(&fs.source.values(x)?.h).max());
            }
            residual(worst)
        });
        for &m in &ms {
            let tag = format!("reduction.family{k}.m{m}");
            r.check(format!("{tag}.single_field"), "pure gauge h = W⁻¹eW, C = -W⁻¹∂W solves the single-field system", 1e-9, || {
                residual(residual_mdymw(&build_pure_gauge(fam, &t, m, PhiChoice::Zero)?, &pts, DerivMode::Exact)?.max_residual())
            });
            r.check(format!("{tag}.two_field"), "B = C - (m/4)ih, G = -(m/4)²[ih, ih] solve the two-field system", 1e-9, || {
                residual(residual_dymym(&reduced(fam, &t, m)?, &pts, DerivMode::Exact)?.max_residual())
            });
            r.check(format!("{tag}.source_scale"), "‖(3/16)m³ih^ν‖ = (3/16)|m|³ ‖ih^ν‖", 1e-12, || {
                let rec = residual_dymym(&reduced(fam, &t, m)?, &pts, DerivMode::Exact)?;
                let v = rec.rhs_normalized.unwrap_or(f64::NAN);
                measured((v - 3.0 / 16.0 * m.abs().powi(3)).abs(), v)
            });
            r.check(format!("{tag}.transport_identities"), "∂ih - [B, ih] = (m/4)[ih, ih], curvature of B, ∂h - [B, h] = 0", 1e-9, || {
                residual(check_hb_identities(&reduced(fam, &t, m)?, &pts, DerivMode::Exact)?.max())
            });
        }
    }
    r.check("reduction.constant_field", "h = e, C = 0, m = 1: both sides of the B source equal (3/16)ie^ν", 1e-12, || {
        let rec = residual_dymym(&reduced(&FieldFamily::default(), &t, 1.0)?, &[SpacetimePoint::ORIGIN], DerivMode::Exact)?;
        let v = rec.rhs_norm.unwrap_or(f64::NAN);
        measured((v - 0.1875).abs() + rec.get("ym_b_source").unwrap_or(f64::NAN), v)
    });
    Ok(())
}

fn transformation_specs(t: &HermitianIdempotent, seed: u64) -> cl13::Result<Vec<TransformationSpec>> {
    let lie = SpaceSampler::new(Space::LieAlgebra(t))?;
    let sp = SpaceSampler::new(Space::SpAlgebra)?;
    let unitary = SpaceSampler::new(Space::GaugeGroup(&HermitianIdempotent::standard(4)?))?;
    let mut rng = substream(seed, "transformations");
    Ok(vec![
        TransformationSpec::GlobalUnitary(unitary.draw(&mut rng, 0.7)?),
        TransformationSpec::GaugeUnitary(FieldFamily::random(&lie, &mut rng, 2, 0.6)),
        TransformationSpec::GaugeSymplectic(FieldFamily::random(&sp, &mut rng, 2, 0.6)),
        TransformationSpec::Conjugation,
        TransformationSpec::DiscreteJ,
    ])
}

fn symmetries(r: &mut Runner) -> cl13::Result<()> {
    let t = r.idempotent();
    let seed = r.cfg.seed;
    let pts = r.points("symmetries");
    let fam = r.families()?.remove(0);
    let solution = reduced(&fam, &t, r.cfg.m_values[0])?;
    let off_shell = solution.with_overlay(FieldOverlay::random(&mut substream(seed, "overlay"), &t, 2, 0.5)?);
    let specs = transformation_specs(&t, seed)?;
    for spec in &specs {
        let kind = spec.kind();
        r.check(format!("symmetries.{kind}.solution"), "transformed solutions solve the two-field system", 1e-9, || {
            let rep = covariance_check(&solution, std::slice::from_ref(spec), &pts)?;
            residual(rep.max_after().max(rep.payload_defect))
        });
        r.check(format!("symmetries.{kind}.residual_law"), "residuals of non-solutions transform covariantly", 1e-9, || {
            let rep = covariance_check(&off_shell, std::slice::from_ref(spec), &pts)?;
            measured(rep.max_law_defect(), rep.max_before())
        });
    }
    r.check("symmetries.composite", "Dirac residual r → W⁻¹rU under a unitary then a symplectic gauge transformation", 1e-9, || {
        residual(covariance_check(&off_shell, &specs[1..3], &pts)?.max_law_defect())
    });
    r.check("symmetries.group_action", "gauge transformation by U1 then U2 equals transformation by U1U2", 1e-10, || {
        let lie = SpaceSampler::new(Space::LieAlgebra(&t))?;
        let mut rng = substream(seed, "group_action");
        let u1 = FieldFamily::random(&lie, &mut rng, 2, 0.5);
        let u2 = FieldFamily::random(&lie, &mut rng, 2, 0.5);
        residual(group_action_defect(&off_shell, &u1, &u2, &pts)?)
    });
    r.check("symmetries.current_conservation", "∂_μJ^μ - [A_μ, J^μ] = 0 (φ = 0 on pure-gauge solutions)", 1e-12, || {
        residual(check_current_conservation(&solution, &pts)?.residual)
    });
    r.check("symmetries.bianchi_current", "current induced by the curvature of A is covariantly conserved", 1e-8, || {
        let lie = SpaceSampler::new(Space::LieAlgebra(&t))?;
        let sp = SpaceSampler::new(Space::SpAlgebra)?;
        let mut rng = substream(seed, "potential");
        let a = PotentialFamily::random(&mut rng, 3, |g| lie.draw_algebra(g, 1.0));
        let b = PotentialFamily::random(&mut rng, 3, |g| sp.draw_algebra(g, 1.0));
        residual(bianchi_current_check(&a, &pts).residual.max(bianchi_current_check(&b, &pts).residual))
    });
    bilinear_checks(r, seed);
    Ok(())
}

fn bilinear_checks(r: &mut Runner, seed: u64) {
    r.check("symmetries.bilinear.antisymmetry", "J^{...μ...ν...} = -J^{...ν...μ...} (exact)", 0.0, || {
        let q = |n, d| Rational64::new(n, d);
        // W = (3e + 4e12)/5 lies in Sp with W⁻¹ = W*
        let w = Q::unit().scale_real(q(3, 5)) + Q::basis(&[1, 2]).scale_real(q(4, 5));
        let wi = w.pseudo_conj();
        let h: [Q; 4] = std::array::from_fn(|mu| wi * Q::generator(mu) * w);
        let mut mismatches = 0usize;
        for n in 1..=4 {
            let t = exact_standard_idempotent(n).expect("n in 1..=4");
            let psi = Q::unit() + Q::basis(&[0, 3]).scale(Complex::new(q(1, 2), q(-1, 3)));
            let phi = psi * t;
            for k in 1..=4usize {
                for code in 0..4usize.pow(k as u32) {
                    let idx: Vec<usize> = (0..k).map(|j| code / 4usize.pow(j as u32) % 4).collect();
                    let base = bilinear_form(&phi, &h, &idx)?.value;
                    for s in 0..k - 1 {
                        let mut swapped = idx.clone();
                        swapped.swap(s, s + 1);
                        if bilinear_form(&phi, &h, &swapped)?.value != -base {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
        residual(mismatches as f64)
    });
    for k in 1..=4usize {
        let run = |seed: u64| -> cl13::Result<[f64; 3]> {
            let sp = SpaceSampler::new(Space::SpGroup)?;
            let mut rng = substream(seed, &format!("bilinear{k}"));
            let mut worst = [0.0f64; 3];
            for n in 1..=4 {
                let t = HermitianIdempotent::standard(n)?;
                for _ in 0..10 {
                    let w = sp.draw(&mut rng, 0.5)?;
                    let wi = inverse(&w)?;
                    let h: [E; 4] = std::array::from_fn(|mu| wi * E::generator(mu) * w);
                    let phi = random_element(&mut rng, 0.3) * *t.element();
                    let idx: Vec<usize> = (0..k).collect();
                    let form = bilinear_form(&phi, &h, &idx)?;
                    worst[0] = worst[0].max(form.hermiticity_defect());
                    worst[1] = worst[1].max(form.lie_membership(&t, f64::INFINITY).residual);
                    worst[2] = worst[2].max(hermitian_spectrum(&form.value)?.max_imag);
                }
            }
            Ok(worst)
        };
        let tag = format!("symmetries.bilinear.k{k}");
        r.check(format!("{tag}.hermitian"), "J† = J", 1e-12, || residual(run(seed)?[0]));
        r.check(format!("{tag}.lie_membership"), "iJ ∈ L(t)", 1e-10, || residual(run(seed)?[1]));
        r.check(format!("{tag}.real_spectrum"), "eigenvalues of J are real", 1e-10, || residual(run(seed)?[2]));
    }
}

fn convergence(r: &mut Runner) -> cl13::Result<()> {
    let t = r.idempotent();
    let pts = r.points("convergence");
    let fam = r.families()?.remove(0);
    let fs = reduced(&fam, &t, r.cfg.m_values[0])?;
    let steps = r.cfg.grid_steps.clone();
    r.check("convergence.exact_baseline", "exact derivatives: reduced fields solve the two-field system", 1e-9, || {
        residual(residual_dymym(&fs, &pts, DerivMode::Exact)?.max_residual())
    });
    r.check("convergence.central_slope", "central-difference residuals scale as step²", 0.2, || {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &step in &steps {
            xs.push(step.ln());
            ys.push(residual_dymym(&fs, &pts, DerivMode::Central { step })?.max_residual().ln());
        }
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        measured((slope - 2.0).abs(), slope)
    });
    Ok(())
}

/// Runs every suite named by `cfg`; computation failures become failed checks.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let mut runner = Runner { cfg, checks: Vec::new() };
    for suite in cfg.suite.expand() {
        let result = match suite {
            Suite::Algebra => {
                algebra(&mut runner);
                Ok(())
            }
            Suite::Subspaces => {
                subspaces(&mut runner);
                Ok(())
            }
            Suite::Idempotents => {
                idempotents(&mut runner);
                Ok(())
            }
            Suite::Reduction => reduction(&mut runner),
            Suite::Symmetries => symmetries(&mut runner),
            Suite::Convergence => convergence(&mut runner),
            Suite::All => unreachable!("expanded"),
        };
        if let Err(e) = result {
            runner.check(format!("{suite}.setup"), "suite inputs could be constructed", 0.0, || Err(e));
        }
    }
    Ok(Report::new(Some(cfg.clone()), runner.checks))
}
