//! Bour isometries between helicoidal and rotational surfaces, the
//! same-Gauss-map pairs, and residual checks on parameter grids.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse, Env, Expr, Jet2};
use crate::helicoid::{closed_form_curvatures, family_curvature_report, helicoid_jet, helicoid_position, is_right_helicoid, rotational_jet, HelicoidSpec, Kind, RotationalSpec};
use crate::lorentz::{standard_to_pseudo, Bivector6, Vec4};
use crate::profile::Component;
use crate::quad;
use crate::surface::{curvature_report, gauss_map, orthonormal_frame, CurvatureReport, FirstForm, SurfaceJet};

/// Anything that can be sampled as a parametrized surface.
pub trait Surface: Sync {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet>;
    fn position(&self, u: f64, v: f64) -> Result<Vec4>;

    /// Curvatures at `(u, v)`; the generic pipeline unless a closed form is
    /// available.
    fn curvatures(&self, u: f64, v: f64) -> Result<CurvatureReport> {
        let j = self.jet(u, v)?;
        curvature_report(&j, &orthonormal_frame(&j)?)
    }

    fn gauss(&self, u: f64, v: f64) -> Result<Bivector6> {
        gauss_map(&self.jet(u, v)?)
    }
}

impl Surface for HelicoidSpec {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        helicoid_jet(self, u, v)
    }
    fn position(&self, u: f64, v: f64) -> Result<Vec4> {
        helicoid_position(self, u, v)
    }
    fn curvatures(&self, u: f64, v: f64) -> Result<CurvatureReport> {
        closed_form_curvatures(self, u, v)
    }
}

impl Surface for RotationalSpec {
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        rotational_jet(self, u, v)
    }
    fn position(&self, u: f64, v: f64) -> Result<Vec4> {
        RotationalSpec::position(self, u, v)
    }
    fn curvatures(&self, u: f64, t: f64) -> Result<CurvatureReport> {
        family_curvature_report(self.kind, 0.0, self.profile_jets(u)?, u, t)
    }
}

/// Uniform `nu × nv` grid, each end pulled inward by `shrink` of the
/// interval length.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nu: usize,
    pub nv: usize,
    pub u: [f64; 2],
    pub v: [f64; 2],
    pub shrink: f64,
}

pub const DEFAULT_GRID: usize = 33;
pub const DEFAULT_SHRINK: f64 = 0.02;

impl Grid {
    pub fn new(nu: usize, nv: usize, u: [f64; 2], v: [f64; 2]) -> Self {
        Grid { nu, nv, u, v, shrink: DEFAULT_SHRINK }
    }

    pub fn for_spec(spec: &HelicoidSpec, nu: usize, nv: usize) -> Self {
        Grid::new(nu, nv, spec.domain, spec.v_domain)
    }

    fn axis(range: [f64; 2], n: usize, shrink: f64) -> Vec<f64> {
        let pad = shrink * (range[1] - range[0]);
        let (a, b) = (range[0] + pad, range[1] - pad);
        if n <= 1 {
            return vec![0.5 * (a + b)];
        }
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    pub fn us(&self) -> Vec<f64> {
        Grid::axis(self.u, self.nu, self.shrink)
    }

    pub fn vs(&self) -> Vec<f64> {
        Grid::axis(self.v, self.nv, self.shrink)
    }

    /// Points in row-major order, `u` outermost.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let vs = self.vs();
        self.us().into_iter().flat_map(|u| vs.iter().map(move |&v| (u, v))).collect()
    }
}

/// Evaluate `f` on every grid point in parallel; results in grid order.
pub fn sweep<T: Send>(grid: &Grid, f: impl Fn(f64, f64) -> Result<T> + Sync) -> Result<Vec<T>> {
    grid.points().into_par_iter().map(|(u, v)| f(u, v)).collect()
}

fn max_of(xs: Vec<f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

/// Sample points `a..=b`.
fn samples(domain: [f64; 2], n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| domain[0] + (domain[1] - domain[0]) * i as f64 / (n - 1) as f64)
}

fn domain_err(what: &str, u: f64, message: &str) -> Error {
    Error::Domain { expr: what.to_string(), u, message: message.to_string() }
}

/// `t = v + shift(u) + phase`: the rotational angle matched to `(u, v)`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub shift: Component,
    pub phase: f64,
}

impl Correspondence {
    pub fn t(&self, u: f64, v: f64) -> Result<f64> {
        Ok(v + self.shift.value(u)? + self.phase)
    }
}

fn shift_integrand(spec: &HelicoidSpec) -> impl Fn(f64) -> Result<Jet2> + Send + Sync + 'static {
    let spec = spec.clone();
    move |u| {
        let [x, _, w] = spec.profile_jets(u)?;
        let l = spec.lambda;
        match spec.kind {
            Kind::I => {
                let d = x * x - l * l;
                if d.v == 0.0 {
                    return Err(domain_err("x^2 - lambda^2", u, "vanishes"));
                }
                Ok(-(w.derivative() * l) / d)
            }
            _ => {
                let d = w * w + l * l;
                if d.v == 0.0 {
                    return Err(domain_err("lambda^2 + w^2", u, "vanishes"));
                }
                Ok(x.derivative() * l / d)
            }
        }
    }
}

/// Angle shift of the isometric reparametrization, fixed to zero at the left
/// end of the domain for types I and II.
pub fn shift_component(spec: &HelicoidSpec) -> Result<Component> {
    shift_component_signed(spec, 1.0)
}

fn shift_component_signed(spec: &HelicoidSpec, sign: f64) -> Result<Component> {
    if spec.lambda == 0.0 {
        return Ok(Component::Const(0.0));
    }
    match spec.kind {
        Kind::I | Kind::II => {
            let f = shift_integrand(spec);
            let label = if spec.kind == Kind::I { "-lambda w'/(x^2 - lambda^2)" } else { "lambda x'/(lambda^2 + w^2)" };
            Component::integral(label, move |u| f(u).map(|j| j * sign), spec.domain[0], spec.domain[1], 0.0)
        }
        Kind::III => {
            let s = spec.clone();
            Ok(Component::func("lambda/(2 w)", move |u| {
                let [_, _, w] = s.profile_jets(u)?;
                if w.v == 0.0 {
                    return Err(domain_err("w", u, "vanishes"));
                }
                Ok(Jet2::constant(s.lambda) / (w * 2.0))
            }))
        }
    }
}

/// `v̄(u, v)`; the integral runs from the left end of the domain.
pub fn vbar(spec: &HelicoidSpec, u: f64, v: f64) -> Result<f64> {
    if spec.lambda == 0.0 {
        return Ok(v);
    }
    match spec.kind {
        Kind::III => Ok(v + shift_component(spec)?.value(u)?),
        _ => {
            let f = shift_integrand(spec);
            Ok(v + quad::integrate(&|t| f(t).map(|j| j.v), spec.domain[0], u, quad::tolerance())?)
        }
    }
}

/// The known gauge function.
#[derive(Clone, Debug)]
pub enum Given {
    A(Expr),
    B(Expr),
}

#[derive(Clone, Debug)]
pub struct BourGauge {
    pub kind: Kind,
    pub a: Component,
    pub b: Component,
}

/// Right-hand side of the gauge constraint as a jet in `u` (value and first
/// derivative): `a² − b²` (I), `a² + b²` (II), `a² − 2b` (III).
pub fn gauge_constraint(spec: &HelicoidSpec, u: f64) -> Result<Jet2> {
    let [x, z, w] = spec.profile_jets(u)?;
    let (xd, zd, wd) = (x.derivative(), z.derivative(), w.derivative());
    let l2 = spec.lambda * spec.lambda;
    let need = |j: Jet2, what: &str| {
        if j.v == 0.0 {
            Err(Error::InvalidSpec(format!("{what} vanishes at u = {u}; the gauge is undefined there")))
        } else {
            Ok(())
        }
    };
    match spec.kind {
        Kind::I => {
            need(x * xd, "x x'")?;
            Ok((x * x * (zd * zd - wd * wd) - (xd * xd + zd * zd) * l2) / (x * x * xd * xd))
        }
        Kind::II => {
            need(w * wd, "w w'")?;
            let yd = zd;
            Ok((w * w * (xd * xd + yd * yd) + (yd * yd - wd * wd) * l2) / (w * w * wd * wd))
        }
        Kind::III => {
            need(w * wd, "w w'")?;
            Ok((xd * xd - wd * zd * 2.0) / (wd * wd) - Jet2::constant(0.5 * l2) / (w * w))
        }
    }
}

const FEASIBILITY_SAMPLES: usize = 257;

/// Solve the gauge constraint for the missing function, taking the
/// non-negative branch.
pub fn gauge_complete(spec: &HelicoidSpec, given: Given) -> Result<BourGauge> {
    let (given_is_a, expr) = match given {
        Given::A(e) => (true, e),
        Given::B(e) => (false, e),
    };
    expr.check_constants(spec.env())?;
    let known = Component::expr(expr, spec.env().clone());
    let kind = spec.kind;
    // Square (or, for type III with a given, value) of the missing function.
    let missing = {
        let spec = spec.clone();
        let known = known.clone();
        move |u: f64| -> Result<Jet2> {
            let c = gauge_constraint(&spec, u)?;
            let k = known.jet(u)?;
            Ok(match (kind, given_is_a) {
                (Kind::I, true) => k * k - c,
                (Kind::I, false) => c + k * k,
                (Kind::II, _) => c - k * k,
                (Kind::III, true) => (k * k - c) * 0.5,
                (Kind::III, false) => c + k * 2.0,
            })
        }
    };
    let linear = kind == Kind::III && given_is_a;
    if !linear {
        let mut bad: Option<(f64, f64)> = None;
        for u in samples(spec.domain, FEASIBILITY_SAMPLES) {
            let q = missing(u)?;
            if q.v < -1e-12 * (1.0 + q.v.abs()) {
                bad = Some(bad.map_or((u, u), |(a, _)| (a, u)));
            } else if bad.is_some() {
                break;
            }
        }
        if let Some((from, to)) = bad {
            return Err(Error::InfeasibleGauge { from, to });
        }
    }
    let name = if given_is_a { "b" } else { "a" };
    let solved = Component::func(format!("{name} from the gauge constraint"), move |u| {
        let q = missing(u)?;
        if linear {
            return Ok(q);
        }
        if q.v < -1e-12 * (1.0 + q.v.abs()) {
            return Err(Error::InfeasibleGauge { from: u, to: u });
        }
        Ok(Jet2::new(q.v.max(0.0), q.d1, q.d2).sqrt())
    });
    let (a, b) = if given_is_a { (known, solved) } else { (solved, known) };
    Ok(BourGauge { kind, a, b })
}

impl BourGauge {
    /// Largest `|constraint(a, b) − rhs|` over `n` samples of the domain.
    pub fn constraint_residual(&self, spec: &HelicoidSpec, n: usize) -> Result<f64> {
        let mut worst = 0.0_f64;
        for u in samples(spec.domain, n) {
            let c = gauge_constraint(spec, u)?.v;
            let (a, b) = (self.a.value(u)?, self.b.value(u)?);
            let lhs = match self.kind {
                Kind::I => a * a - b * b,
                Kind::II => a * a + b * b,
                Kind::III => a * a - 2.0 * b,
            };
            worst = worst.max((lhs - c).abs());
        }
        Ok(worst)
    }

    /// The same gauge with the `b` function multiplied by `factor`.
    pub fn scale_b(&self, factor: f64) -> BourGauge {
        let b = self.b.clone();
        BourGauge {
            kind: self.kind,
            a: self.a.clone(),
            b: Component::func(format!("{factor} * ({})", b.describe()), move |u| Ok(b.jet(u)? * factor)),
        }
    }
}

/// Rotational partner together with the angle correspondence `(u, v) ↦ (u, t)`.
#[derive(Clone, Debug)]
pub struct BourPartner {
    pub rotational: RotationalSpec,
    pub correspondence: Correspondence,
}

impl BourPartner {
    /// Rotational angle for the helicoid point `(u, v)`.
    pub fn t(&self, u: f64, v: f64) -> Result<f64> {
        self.correspondence.t(u, v)
    }
}

impl Surface for BourPartner {
    /// Jet of `(u, v) ↦ R(u, v + shift(u) + phase)`.
    fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        let tau = self.correspondence.shift.jet(u)?;
        let t = v + tau.v + self.correspondence.phase;
        let r = rotational_jet(&self.rotational, u, t)?;
        let (d1, d2) = (tau.d1, tau.d2);
        Ok(SurfaceJet {
            u,
            v,
            x: r.x,
            xu: r.xu + d1 * r.xv,
            xv: r.xv,
            xuu: r.xuu + (2.0 * d1) * r.xuv + (d1 * d1) * r.xvv + d2 * r.xv,
            xuv: r.xuv + d1 * r.xvv,
            xvv: r.xvv,
        })
    }

    fn position(&self, u: f64, v: f64) -> Result<Vec4> {
        self.rotational.position(u, self.t(u, v)?)
    }

    // Curvatures and Gauss map are read in the rotational chart `(u, t)`:
    // same points and orientation, but well conditioned where the composite
    // chart degenerates.
    fn curvatures(&self, u: f64, v: f64) -> Result<CurvatureReport> {
        self.rotational.curvatures(u, self.t(u, v)?)
    }

    fn gauss(&self, u: f64, v: f64) -> Result<Bivector6> {
        gauss_map(&rotational_jet(&self.rotational, u, self.t(u, v)?)?)
    }
}

fn require_positive(spec: &HelicoidSpec, what: &str, f: impl Fn(&[Jet2; 3]) -> f64) -> Result<()> {
    for u in samples(spec.domain, FEASIBILITY_SAMPLES) {
        if !(f(&spec.profile_jets(u)?) > 0.0) {
            return Err(Error::NotSpacelike { u, v: f64::NAN, w: f64::NAN }).map_err(|e| match e {
                Error::NotSpacelike { .. } => Error::InvalidSpec(format!("{what} must be positive; fails at u = {u}")),
                e => e,
            });
        }
    }
    Ok(())
}

/// Partner with both integration constants zero.
pub fn bour_partner(spec: &HelicoidSpec, gauge: &BourGauge) -> Result<BourPartner> {
    bour_partner_with_offsets(spec, gauge, [0.0, 0.0])
}

/// Partner whose two quadrature-defined components take the values
/// `offsets` at the left end of the domain.
pub fn bour_partner_with_offsets(spec: &HelicoidSpec, gauge: &BourGauge, offsets: [f64; 2]) -> Result<BourPartner> {
    if gauge.kind != spec.kind {
        return Err(Error::InvalidSpec(format!("gauge is type {}, surface is type {}", gauge.kind, spec.kind)));
    }
    let l = spec.lambda;
    let [a0, b0] = spec.domain;
    let (ga, gb) = (gauge.a.clone(), gauge.b.clone());
    let s1 = spec.clone();
    let s2 = spec.clone();
    let rotational = match spec.kind {
        Kind::I => {
            require_positive(spec, "x^2 - lambda^2", |p| p[0].v * p[0].v - l * l)?;
            let n = Component::func("sqrt(x^2 - lambda^2)", move |u| {
                let [x, _, _] = s1.profile_jets(u)?;
                Ok((x * x - l * l).sqrt())
            });
            let weight = move |u: f64| -> Result<Jet2> {
                let [x, _, _] = s2.profile_jets(u)?;
                Ok(x * x.derivative() / (x * x - l * l).sqrt())
            };
            let w2 = weight.clone();
            let s = Component::integral("a x x'/sqrt(x^2 - lambda^2)", move |u| Ok(ga.jet(u)? * weight(u)?), a0, b0, offsets[0])?;
            let r = Component::integral("b x x'/sqrt(x^2 - lambda^2)", move |u| Ok(gb.jet(u)? * w2(u)?), a0, b0, offsets[1])?;
            RotationalSpec { kind: Kind::I, n, s, r, domain: spec.domain }
        }
        Kind::II => {
            let r = Component::func("sqrt(lambda^2 + w^2)", move |u| {
                let [_, _, w] = s1.profile_jets(u)?;
                Ok((w * w + l * l).sqrt())
            });
            let weight = move |u: f64| -> Result<Jet2> {
                let [_, _, w] = s2.profile_jets(u)?;
                Ok(w * w.derivative() / (w * w + l * l).sqrt())
            };
            let w2 = weight.clone();
            let n = Component::integral("a w w'/sqrt(lambda^2 + w^2)", move |u| Ok(ga.jet(u)? * weight(u)?), a0, b0, offsets[0])?;
            let s = Component::integral("b w w'/sqrt(lambda^2 + w^2)", move |u| Ok(gb.jet(u)? * w2(u)?), a0, b0, offsets[1])?;
            RotationalSpec { kind: Kind::II, n, s, r, domain: spec.domain }
        }
        Kind::III => {
            let weight = move |u: f64| -> Result<Jet2> { Ok(s1.profile_jets(u)?[2].derivative()) };
            let w2 = weight.clone();
            let n = Component::integral("a w'", move |u| Ok(ga.jet(u)? * weight(u)?), a0, b0, offsets[0])?;
            let s = Component::integral("b w'", move |u| Ok(gb.jet(u)? * w2(u)?), a0, b0, offsets[1])?;
            RotationalSpec { kind: Kind::III, n, s, r: spec.component(2), domain: spec.domain }
        }
    };
    let correspondence = Correspondence { shift: shift_component(spec)?, phase: 0.0 };
    Ok(BourPartner { rotational, correspondence })
}

/// Max over the grid of the componentwise first-form difference between
/// `a` and `b` at the same `(u, v)`.
pub fn isometry_residual(a: &dyn Surface, b: &dyn Surface, grid: &Grid) -> Result<f64> {
    let form = |j: SurfaceJet| FirstForm::new(j.xu.dot(&j.xu), j.xu.dot(&j.xv), j.xv.dot(&j.xv));
    sweep(grid, |u, v| Ok(form(a.jet(u, v)?).sup_diff(&form(b.jet(u, v)?)))).map(max_of)
}

/// Max over the grid of the componentwise Gauss-map difference.
pub fn gauss_residual(a: &dyn Surface, b: &dyn Surface, grid: &Grid) -> Result<f64> {
    sweep(grid, |u, v| Ok(a.gauss(u, v)?.sup_diff(&b.gauss(u, v)?))).map(max_of)
}

/// Max over the grid of `|H|_∞`.
pub fn max_mean_curvature(s: &dyn Surface, grid: &Grid) -> Result<f64> {
    sweep(grid, |u, v| Ok(s.curvatures(u, v)?.hvec.max_abs())).map(max_of)
}

/// Smallest per-coordinate variance of the sampled points; zero when the
/// surface lies in a coordinate hyperplane.
pub fn hyperplanarity_defect(s: &dyn Surface, grid: &Grid) -> Result<f64> {
    let pts = sweep(grid, |u, v| s.position(u, v))?;
    let n = pts.len() as f64;
    Ok((0..4)
        .map(|k| {
            let mean = pts.iter().map(|p| p[k]).sum::<f64>() / n;
            pts.iter().map(|p| (p[k] - mean).powi(2)).sum::<f64>() / n
        })
        .fold(f64::INFINITY, f64::min))
}

/// Verdicts a pair is expected to produce; `None` means "not asserted".
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub isometric: Option<bool>,
    pub same_gauss: Option<bool>,
    pub minimal: Option<bool>,
    pub hyperplanar: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub isometry: f64,
    pub gauss: f64,
    /// A Gauss residual above this counts as "different".
    pub gauss_different: f64,
    pub minimality: f64,
    pub hyperplanarity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { isometry: 1e-7, gauss: 1e-7, gauss_different: 0.1, minimality: 1e-7, hyperplanarity: 1e-10 }
    }
}

#[derive(Clone, Debug)]
pub struct BourPair {
    pub helicoid: HelicoidSpec,
    pub gauge: BourGauge,
    pub partner: BourPartner,
    pub expect: Expectations,
    pub sign_choices: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residuals {
    pub isometry: f64,
    pub gauss: f64,
    pub minimality: [f64; 2],
    pub hyperplanarity: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdicts {
    pub isometric: bool,
    pub same_gauss: bool,
    pub gauss_differs: bool,
    pub minimal: [bool; 2],
    pub hyperplanar: [bool; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    pub kind: Kind,
    pub lambda: f64,
    pub grid: Grid,
    pub residuals: Residuals,
    pub verdicts: Verdicts,
    pub expected: Expectations,
    pub tolerances: Tolerances,
    pub sign_choices: BTreeMap<String, String>,
    pub pass: bool,
}

pub fn pair_report(pair: &BourPair, grid: &Grid, tols: &Tolerances) -> Result<PairReport> {
    let h: &dyn Surface = &pair.helicoid;
    let r: &dyn Surface = &pair.partner;
    let residuals = Residuals {
        isometry: isometry_residual(h, r, grid)?,
        gauss: gauss_residual(h, r, grid)?,
        minimality: [max_mean_curvature(h, grid)?, max_mean_curvature(r, grid)?],
        hyperplanarity: [hyperplanarity_defect(h, grid)?, hyperplanarity_defect(r, grid)?],
    };
    let verdicts = Verdicts {
        isometric: residuals.isometry < tols.isometry,
        same_gauss: residuals.gauss < tols.gauss,
        gauss_differs: residuals.gauss > tols.gauss_different,
        minimal: residuals.minimality.map(|m| m < tols.minimality),
        hyperplanar: residuals.hyperplanarity.map(|d| d < tols.hyperplanarity),
    };
    let e = &pair.expect;
    let pass = e.isometric.is_none_or(|x| x == verdicts.isometric)
        && e.same_gauss.is_none_or(|x| if x { verdicts.same_gauss } else { verdicts.gauss_differs })
        && e.minimal.is_none_or(|x| verdicts.minimal.iter().all(|m| *m == x))
        && e.hyperplanar.is_none_or(|x| verdicts.hyperplanar.iter().all(|m| *m == x));
    Ok(PairReport {
        kind: pair.helicoid.kind,
        lambda: pair.helicoid.lambda,
        grid: *grid,
        residuals,
        verdicts,
        expected: pair.expect,
        tolerances: *tols,
        sign_choices: pair.sign_choices.clone(),
        pass,
    })
}

/// A helicoid plus one gauge function, read from JSON:
/// `{"helicoid": {...}, "gauge": {"a": "..."} | {"b": "..."}, "offsets": [s0, r0]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    helicoid: serde_json::Value,
    gauge: BTreeMap<String, String>,
    #[serde(default)]
    offsets: Option<[f64; 2]>,
}

impl BourPair {
    /// Plain Bour pair: isometry asserted; for type III with `λ ≠ 0` the
    /// Gauss maps are asserted to differ.
    pub fn bour(helicoid: HelicoidSpec, given: Given, offsets: [f64; 2]) -> Result<BourPair> {
        let gauge = gauge_complete(&helicoid, given)?;
        let partner = bour_partner_with_offsets(&helicoid, &gauge, offsets)?;
        let same_gauss = (helicoid.kind == Kind::III && helicoid.lambda != 0.0).then_some(false);
        let expect = Expectations { isometric: Some(true), same_gauss, ..Default::default() };
        Ok(BourPair { helicoid, gauge, partner, expect, sign_choices: BTreeMap::new() })
    }

    pub fn from_json(text: &str) -> Result<BourPair> {
        let f: PairFile = serde_json::from_str(text)?;
        let helicoid = HelicoidSpec::from_json(&f.helicoid.to_string())?;
        let given = match (f.gauge.get("a"), f.gauge.get("b"), f.gauge.len()) {
            (Some(a), None, 1) => Given::A(parse(a)?),
            (None, Some(b), 1) => Given::B(parse(b)?),
            _ => return Err(Error::InvalidSpec("gauge must give exactly one of `a` or `b`".into())),
        };
        BourPair::bour(helicoid, given, f.offsets.unwrap_or([0.0, 0.0]))
    }
}

/// Branch signs for the same-Gauss constructions (`+1` or `-1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Signs {
    /// `w` for type I, `x` for type II.
    pub profile: f64,
    /// `r` for type I, `n` for type II.
    pub partner: f64,
}

impl Default for Signs {
    fn default() -> Self {
        Signs { profile: 1.0, partner: 1.0 }
    }
}

#[derive(Clone, Debug)]
pub struct SameGaussParams {
    /// `x(u)` for type I, `w(u)` for type II.
    pub profile: String,
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub signs: Signs,
    pub domain: [f64; 2],
    pub v_domain: Option<[f64; 2]>,
}

fn sign_text(s: f64) -> &'static str {
    if s < 0.0 {
        "-"
    } else {
        ""
    }
}

fn sign_name(s: f64) -> String {
    if s < 0.0 { "-" } else { "+" }.to_string()
}

fn check_sign(name: &str, s: f64) -> Result<()> {
    if s == 1.0 || s == -1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} sign must be +1 or -1, got {s}")))
    }
}

fn pair_env(p: &SameGaussParams, q3: f64) -> Env {
    let mut env = Env::new();
    for (k, v) in [("c1", p.c1), ("c2", p.c2), ("c3", p.c3), ("c4", p.c4), ("q3", q3)] {
        env.insert(k.into(), v);
    }
    env
}

fn with_v(spec: HelicoidSpec, v: Option<[f64; 2]>) -> Result<HelicoidSpec> {
    match v {
        Some(v) => spec.with_v_domain(v),
        None => Ok(spec),
    }
}

/// `w(u)` of the type I same-Gauss helicoid as expression text in the
/// profile `x`, using constants `lambda`, `c3` and `q3 = 1 − c3 λ²`.
pub fn same_gauss_w_source(x: &str, sign: f64) -> String {
    let d = format!("(({x})^2 - lambda^2)");
    format!(
        "{}(sqrt(q3/c3)*asinh(sqrt(c3*{d})) - lambda*atan(sqrt(q3*{d}/(lambda^2*(1 + c3*{d})))))",
        sign_text(sign)
    )
}

/// `x(u)` of the type II same-Gauss helicoid in the profile `w`, using
/// `q3 = 1 + c3 λ²`. The second term is `λ·arccoth(Q)` with
/// `Q = √(q3 R)/(λ√(1 + c3 R))`, `R = λ² + w²`; since `Q² − 1 = w²/(λ²(1 + c3 R))`
/// it is written as `λ log((√(q3 R) + λ√(1 + c3 R))/|w|)`, which avoids the
/// cancellation in `Q − 1` for small `w`.
pub fn same_gauss_x_source(w: &str, sign: f64) -> String {
    let r = format!("(lambda^2 + ({w})^2)");
    format!(
        "{}(sqrt(q3/(-c3))*asin(sqrt(-c3*{r})) - lambda*(log(sqrt(q3*{r}) + lambda*sqrt(1 + c3*{r})) - 0.5*log(({w})^2)))",
        sign_text(sign)
    )
}

/// Type I pair with equal Gauss maps: `z ≡ c1`, `a ≡ 0`,
/// `b² = 1/(1 + c3(x² − λ²))`, requires `0 < c3 ≤ 1/λ²`.
pub fn same_gauss_pair_i(p: &SameGaussParams) -> Result<BourPair> {
    let l = p.lambda;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Parameter(format!("lambda must be positive, got {l}")));
    }
    let top = 1.0 / (l * l);
    if !(p.c3 > 0.0 && p.c3 <= top * (1.0 + 1e-12)) {
        return Err(Error::Parameter(format!("c3 must lie in (0, 1/lambda^2] = (0, {top}], got {}", p.c3)));
    }
    check_sign("w", p.signs.profile)?;
    check_sign("r", p.signs.partner)?;
    let mut q3 = 1.0 - p.c3 * l * l;
    if q3.abs() < 1e-12 {
        q3 = 0.0;
    }
    let env = pair_env(p, q3);
    let x = p.profile.as_str();
    let w = same_gauss_w_source(x, p.signs.profile);
    let helicoid = with_v(HelicoidSpec::new(Kind::I, l, [x, "c1", &w], p.domain, env)?, p.v_domain)?;
    require_positive(&helicoid, "x^2 - lambda^2", |j| j[0].v * j[0].v - l * l)?;

    let d = format!("(({x})^2 - lambda^2)");
    let env = helicoid.env().clone();
    let ex = |src: String| -> Result<Component> { Ok(Component::expr(parse(&src)?, env.clone())) };
    let b = ex(format!("{}1/sqrt(1 + c3*{d})", sign_text(p.signs.partner)))?;
    let gauge = BourGauge { kind: Kind::I, a: Component::Const(0.0), b: b.clone() };
    let rotational = RotationalSpec {
        kind: Kind::I,
        n: ex(format!("sqrt({d})"))?,
        s: Component::Const(p.c2),
        r: ex(format!("{}(1/sqrt(c3))*asinh(sqrt(c3*{d})) + c4", sign_text(p.signs.partner)))?,
        domain: p.domain,
    };
    // Phase: angle φ with ρ cos φ = x w', ρ sin φ = λ x', ρ = b x x'.
    let u0 = p.domain[0];
    let [xj, _, wj] = helicoid.profile_jets(u0)?;
    let rho = b.value(u0)? * xj.v * xj.d1;
    let phase = (l * xj.d1 * rho.signum()).atan2(xj.v * wj.d1 * rho.signum());
    let partner = BourPartner { rotational, correspondence: Correspondence { shift: shift_component(&helicoid)?, phase } };
    let mut sign_choices = BTreeMap::new();
    sign_choices.insert("w".to_string(), sign_name(p.signs.profile));
    sign_choices.insert("r".to_string(), sign_name(p.signs.partner));
    Ok(BourPair { helicoid, gauge, partner, expect: same_gauss_expectations(), sign_choices })
}

fn same_gauss_expectations() -> Expectations {
    Expectations { isometric: Some(true), same_gauss: Some(true), minimal: Some(true), hyperplanar: Some(true) }
}

/// Fail when the type II helicoid is right (`x` constant): its Gauss map
/// cannot match the partner's.
pub fn reject_right_helicoid_ii(spec: &HelicoidSpec) -> Result<()> {
    if spec.kind == Kind::II && is_right_helicoid(spec)? {
        return Err(Error::RightHelicoid(format!(
            "x(u) = {} is constant on [{}, {}], so the Gauss maps are necessarily different",
            spec.sources[0], spec.domain[0], spec.domain[1]
        )));
    }
    Ok(())
}

/// Type II pair with equal Gauss maps: `y ≡ c1`, `b ≡ 0`,
/// `a² = 1/(1 + c3(λ² + w²))`, requires `−1/λ² < c3 < 0`.
///
/// Both signs of the angle shift are tried on a coarse grid and the one with
/// the smaller Gauss residual is kept (recorded as `vbar_shift`).
pub fn same_gauss_pair_ii(p: &SameGaussParams) -> Result<BourPair> {
    let l = p.lambda;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Parameter(format!("lambda must be positive, got {l}")));
    }
    let bottom = -1.0 / (l * l);
    if !(p.c3 < 0.0 && p.c3 > bottom) {
        return Err(Error::Parameter(format!("c3 must lie in (-1/lambda^2, 0) = ({bottom}, 0), got {}", p.c3)));
    }
    check_sign("x", p.signs.profile)?;
    check_sign("n", p.signs.partner)?;
    let env = pair_env(p, 1.0 + p.c3 * l * l);
    let wsrc = p.profile.as_str();
    {
        let we = parse(wsrc)?;
        let mut e = env.clone();
        e.insert("lambda".into(), l);
        for u in samples(p.domain, FEASIBILITY_SAMPLES) {
            let w = we.eval(u, &e)?;
            if -p.c3 * (l * l + w * w) >= 1.0 {
                return Err(Error::Parameter(format!("-c3 (lambda^2 + w^2) must stay below 1; reaches {} at u = {u}", -p.c3 * (l * l + w * w))));
            }
        }
    }
    let x = same_gauss_x_source(wsrc, p.signs.profile);
    let helicoid = with_v(HelicoidSpec::new(Kind::II, l, [&x, "c1", wsrc], p.domain, env)?, p.v_domain)?;
    reject_right_helicoid_ii(&helicoid)?;

    let r = format!("(lambda^2 + ({wsrc})^2)");
    let env = helicoid.env().clone();
    let ex = |src: String| -> Result<Component> { Ok(Component::expr(parse(&src)?, env.clone())) };
    let a = ex(format!("{}1/sqrt(1 + c3*{r})", sign_text(p.signs.partner)))?;
    let gauge = BourGauge { kind: Kind::II, a, b: Component::Const(0.0) };
    let rotational = RotationalSpec {
        kind: Kind::II,
        n: ex(format!("{}(1/sqrt(-c3))*asin(sqrt(-c3*{r})) + c4", sign_text(p.signs.partner)))?,
        s: Component::Const(p.c2),
        r: ex(format!("sqrt({r})"))?,
        domain: p.domain,
    };
    // Boost: tanh α = λ w'/(x' w) at the left end; t = v − α there.
    let u0 = p.domain[0];
    let [xj, _, wj] = helicoid.profile_jets(u0)?;
    let phase = -(l * wj.d1 / (xj.d1 * wj.v)).atanh();
    if !phase.is_finite() {
        return Err(Error::NotSpacelike { u: u0, v: f64::NAN, w: f64::NAN });
    }
    let probe = Grid::new(9, 9, helicoid.domain, helicoid.v_domain);
    let mut best: Option<(f64, f64, BourPartner)> = None;
    for sign in [1.0, -1.0] {
        let partner = BourPartner {
            rotational: rotational.clone(),
            correspondence: Correspondence { shift: shift_component_signed(&helicoid, sign)?, phase },
        };
        let res = gauss_residual(&helicoid, &partner, &probe)?;
        if best.as_ref().is_none_or(|(r, _, _)| res < *r) {
            best = Some((res, sign, partner));
        }
    }
    let (_, shift_sign, partner) = best.expect("two candidates");
    let mut sign_choices = BTreeMap::new();
    sign_choices.insert("x".to_string(), sign_name(p.signs.profile));
    sign_choices.insert("n".to_string(), sign_name(p.signs.partner));
    sign_choices.insert("vbar_shift".to_string(), sign_name(shift_sign));
    Ok(BourPair { helicoid, gauge, partner, expect: same_gauss_expectations(), sign_choices })
}

/// Right helicoid of type I, `(x cos v, x sin v, c1, λv)`, with partner
/// `(√(x²−λ²) cos v, √(x²−λ²) sin v, c2, ±λ asinh(√(x²−λ²)/λ) + c4)`.
pub fn right_helicoid_pair_i(x: &str, lambda: f64, c: [f64; 3], sign: f64, domain: [f64; 2]) -> Result<BourPair> {
    if !(lambda > 0.0) {
        return Err(Error::Parameter(format!("lambda must be positive, got {lambda}")));
    }
    check_sign("r", sign)?;
    let mut env = Env::new();
    env.insert("c1".into(), c[0]);
    env.insert("c2".into(), c[1]);
    env.insert("c4".into(), c[2]);
    let helicoid = HelicoidSpec::new(Kind::I, lambda, [x, "c1", "0"], domain, env)?;
    require_positive(&helicoid, "x^2 - lambda^2", |j| j[0].v * j[0].v - lambda * lambda)?;
    let d = format!("(({x})^2 - lambda^2)");
    let env = helicoid.env().clone();
    let ex = |src: String| -> Result<Component> { Ok(Component::expr(parse(&src)?, env.clone())) };
    let s = sign_text(sign);
    let b = ex(format!("{s}lambda/({x})"))?;
    let gauge = BourGauge { kind: Kind::I, a: Component::Const(0.0), b };
    let rotational = RotationalSpec {
        kind: Kind::I,
        n: ex(format!("sqrt({d})"))?,
        s: Component::Const(c[1]),
        r: ex(format!("{s}lambda*asinh(sqrt({d})/lambda) + c4"))?,
        domain,
    };
    // With w ≡ 0 the shift vanishes and the phase is a quarter turn.
    let phase = sign * std::f64::consts::FRAC_PI_2;
    let partner = BourPartner { rotational, correspondence: Correspondence { shift: Component::Const(0.0), phase } };
    let mut sign_choices = BTreeMap::new();
    sign_choices.insert("r".to_string(), sign_name(sign));
    Ok(BourPair { helicoid, gauge, partner, expect: same_gauss_expectations(), sign_choices })
}

/// The three worked examples: `1` type I same-Gauss pair (`x = u`, `λ = 1`,
/// `c3 = 1/2`), `2` type II same-Gauss pair (`w = u`, `λ = 1`, `c3 = -1/2`),
/// `3` type III helicoid `x = u`, `z = c`, `w = u`, `λ = 1` with its partner
/// for `b ≡ 0` (so the partner keeps `s = c`).
pub fn example_pair(n: u32) -> Result<BourPair> {
    use std::f64::consts::{FRAC_PI_4, PI};
    let base = |profile: &str, c3: f64, domain: [f64; 2], v: [f64; 2]| SameGaussParams {
        profile: profile.into(),
        lambda: 1.0,
        c1: 0.0,
        c2: 0.0,
        c3,
        c4: 0.0,
        signs: Signs::default(),
        domain,
        v_domain: Some(v),
    };
    match n {
        1 => same_gauss_pair_i(&base("u", 0.5, [1.1, PI], [0.0, 2.0 * PI])),
        2 => same_gauss_pair_ii(&base("u", -0.5, [0.05, 0.95], [0.0, FRAC_PI_4])),
        3 => {
            let mut env = Env::new();
            env.insert("c".into(), 0.0);
            let spec = HelicoidSpec::new(Kind::III, 1.0, ["u", "c", "u"], [0.8, PI], env)?.with_v_domain([-PI, PI])?;
            BourPair::bour(spec, Given::B(parse("0")?), [0.8, 0.0])
        }
        _ => Err(Error::Parameter(format!("no example {n}; expected 1, 2 or 3"))),
    }
}

/// Closed-form solution of the Bernoulli equation: `b² = 1/(1 + c3(x² − λ²))`
/// for type I, `a² = 1/(1 + c3(λ² + w²))` for type II.
pub fn bernoulli_solution(kind: Kind, profile: &Component, lambda: f64, c3: f64) -> Result<Component> {
    let p = profile.clone();
    let l2 = lambda * lambda;
    match kind {
        Kind::I => Ok(Component::func("1/(1 + c3 (x^2 - lambda^2))", move |u| {
            let x = p.jet(u)?;
            Ok(Jet2::constant(1.0) / ((x * x - l2) * c3 + 1.0))
        })),
        Kind::II => Ok(Component::func("1/(1 + c3 (lambda^2 + w^2))", move |u| {
            let w = p.jet(u)?;
            Ok(Jet2::constant(1.0) / ((w * w + l2) * c3 + 1.0))
        })),
        Kind::III => Err(Error::Parameter("no Bernoulli equation for type III".into())),
    }
}

/// Max over `n` samples of the Bernoulli residual with `b = √b2`:
/// type I `(x² − λ²) b' + x x' b − x x' b³`, type II the same with
/// `λ² + w²` and `w w'`.
pub fn bernoulli_residual(kind: Kind, b2: &Component, profile: &Component, lambda: f64, domain: [f64; 2], n: usize) -> Result<f64> {
    let l2 = lambda * lambda;
    let mut worst = 0.0_f64;
    for u in samples(domain, n) {
        let q = b2.jet(u)?;
        if !(q.v > 0.0) {
            return Err(domain_err("b^2", u, "must be positive"));
        }
        let b = q.v.sqrt();
        let db = q.d1 / (2.0 * b);
        let p = profile.jet(u)?;
        let (coef, m) = match kind {
            Kind::I => (p.v * p.v - l2, p.v * p.d1),
            Kind::II => (p.v * p.v + l2, p.v * p.d1),
            Kind::III => return Err(Error::Parameter("no Bernoulli equation for type III".into())),
        };
        worst = worst.max((coef * db + m * b - m * b * b * b).abs());
    }
    Ok(worst)
}

/// Residual of the ODE linking `x` and `w` on same-Gauss helicoids, max over
/// `n` samples.
pub fn profile_ode_residual(spec: &HelicoidSpec, n: usize) -> Result<f64> {
    let l2 = spec.lambda * spec.lambda;
    let l = spec.lambda;
    let mut worst = 0.0_f64;
    for u in samples(spec.domain, n) {
        let [x, _, w] = spec.profile_jets(u)?;
        let (x0, x1, x2, w0, w1, w2) = (x.v, x.d1, x.d2, w.v, w.d1, w.d2);
        let r = match spec.kind {
            Kind::I => {
                l2 * (x0 * x1 * w2 + w1 * (2.0 * x1 * x1 - x0 * x2))
                    + x0 * x0 * (w1 * (w1 * w1 - x1 * x1) + x0 * (x2 * w1 - x1 * w2))
            }
            Kind::II => {
                l * (x1 * w1 * w1 * (2.0 * l2 + w0 * w0) - w0 * w0 * x1.powi(3)
                    + w0 * (l2 + w0 * w0) * (x2 * w1 - x1 * w2))
            }
            Kind::III => return Err(Error::Parameter("no profile ODE for type III".into())),
        };
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Largest deviation of the partner's `u = u0` curve from its expected
/// shape over `n` values of `v`: a circle of radius `√(x² − λ²)` in the
/// `x1 x2` plane (I), the hyperbola `x4² − x3² = λ² + w²` (II), or the
/// parabola `p3 = s + p2²/(2w)`, `p4 = w` in pseudo coordinates (III).
pub fn parallel_curve_defect(pair: &BourPair, u0: f64, n: usize) -> Result<f64> {
    let h = &pair.helicoid;
    let l2 = h.lambda * h.lambda;
    let [x, _, w] = h.profile_jets(u0)?;
    let vs = samples(h.v_domain, n).collect::<Vec<_>>();
    let pts = vs.iter().map(|&v| pair.partner.position(u0, v)).collect::<Result<Vec<_>>>()?;
    let first = pts[0];
    let mut worst = 0.0_f64;
    for p in &pts {
        let d = match h.kind {
            Kind::I => (p[0] * p[0] + p[1] * p[1] - (x.v * x.v - l2))
                .abs()
                .max((p[2] - first[2]).abs())
                .max((p[3] - first[3]).abs()),
            Kind::II => (p[3] * p[3] - p[2] * p[2] - (l2 + w.v * w.v))
                .abs()
                .max((p[0] - first[0]).abs())
                .max((p[1] - first[1]).abs()),
            Kind::III => {
                let q = standard_to_pseudo(*p);
                let q0 = standard_to_pseudo(first);
                let s0 = q0[2] - q0[1] * q0[1] / (2.0 * w.v);
                (q[0] - q0[0])
                    .abs()
                    .max((q[3] - w.v).abs())
                    .max((q[2] - q[1] * q[1] / (2.0 * w.v) - s0).abs())
            }
        };
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Shared, read-only handle for concurrent use.
pub type SharedPair = Arc<BourPair>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helicoid::closed_form_gauss_map;

    fn env(pairs: &[(&str, f64)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn params(profile: &str, lambda: f64, c3: f64, domain: [f64; 2]) -> SameGaussParams {
        SameGaussParams {
            profile: profile.into(),
            lambda,
            c1: 0.0,
            c2: 0.0,
            c3,
            c4: 0.0,
            signs: Signs::default(),
            domain,
            v_domain: None,
        }
    }

    #[test]
    fn vbar_examples() {
        let s = HelicoidSpec::new(Kind::I, 1.0, ["u", "0", "2"], [1.5, 3.0], Env::new()).unwrap();
        assert_eq!(vbar(&s, 2.0, 0.7).unwrap(), 0.7);
        let s = HelicoidSpec::new(Kind::III, 1.0, ["u", "0", "u"], [0.8, 3.0], Env::new()).unwrap();
        assert_eq!(vbar(&s, 2.0, 0.0).unwrap(), 0.25);
    }

    #[test]
    fn vbar_matches_example_one_antiderivative() {
        // For x = u, λ = 1, c3 = 1/2 the integrand λw'/(x²−λ²) is 1/(u√(u⁴−1)),
        // whose antiderivative is ½ acos(1/u²).
        let pair = same_gauss_pair_i(&params("u", 1.0, 0.5, [1.1, std::f64::consts::PI])).unwrap();
        let c = |u: f64| 0.5 * (1.0 / (u * u)).acos();
        for u in [1.3, 2.0, 2.7, 3.1] {
            let got = vbar(&pair.helicoid, u, 0.4).unwrap();
            assert!((got - (0.4 - (c(u) - c(1.1)))).abs() < 1e-8, "u = {u}");
        }
    }

    #[test]
    fn gauge_completion_examples() {
        let s = HelicoidSpec::new(Kind::I, 1.0, ["u", "0", "u/2"], [1.5, 3.0], Env::new()).unwrap();
        let g = gauge_complete(&s, Given::A(parse("0").unwrap())).unwrap();
        for u in [1.5, 2.0, 2.9] {
            let b = g.b.value(u).unwrap();
            assert!((b * b - (0.25 + 1.0 / (u * u))).abs() < 1e-14);
        }
        assert!(g.constraint_residual(&s, 101).unwrap() < 1e-12);

        let s = HelicoidSpec::new(Kind::III, 1.0, ["u", "sin(u)", "u^2"], [0.8, 3.0], Env::new()).unwrap();
        let g = gauge_complete(&s, Given::A(parse("5*u").unwrap())).unwrap();
        assert!(g.constraint_residual(&s, 101).unwrap() < 1e-12);

        let s = HelicoidSpec::new(Kind::I, 1.0, ["u", "10*u", "0"], [1.5, 3.0], Env::new()).unwrap();
        assert!(gauge_complete(&s, Given::B(parse("0").unwrap())).is_ok());
        let s = HelicoidSpec::new(Kind::I, 1.0, ["u", "0", "3*u"], [1.5, 3.0], Env::new()).unwrap();
        match gauge_complete(&s, Given::B(parse("0").unwrap())) {
            Err(Error::InfeasibleGauge { from, to }) => assert!(from <= to && from >= 1.5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bour_isometry_each_kind() {
        let cases = [
            (Kind::I, 1.0, ["u", "0", "u/2"], [1.5, 3.0], Given::A(parse("0").unwrap())),
            (Kind::I, 0.7, ["u^2/3 + 1.5", "cos(u)/3", "u^2/7"], [1.0, 2.5], Given::A(parse("0.2*u").unwrap())),
            (Kind::II, 0.6, ["3*u^2 + 2*u", "u/7", "u/2 + 1"], [0.5, 2.5], Given::B(parse("0.3").unwrap())),
            (Kind::III, 0.8, ["u^2/2 + u", "cos(u)/5 - u/3", "u/2 + 1"], [0.5, 2.5], Given::A(parse("1 + u/4").unwrap())),
        ];
        for (kind, l, p, d, given) in cases {
            let s = HelicoidSpec::new(kind, l, p, d, Env::new()).unwrap();
            let pair = BourPair::bour(s.clone(), given, [0.0, 0.0]).unwrap();
            let grid = Grid::for_spec(&s, 17, 17);
            let iso = isometry_residual(&pair.helicoid, &pair.partner, &grid).unwrap();
            assert!(iso < 1e-9, "type {kind}: {iso}");
            let bad = bour_partner(&s, &pair.gauge.scale_b(1.1)).unwrap();
            let iso = isometry_residual(&pair.helicoid, &bad, &grid).unwrap();
            assert!(iso > 1e-3, "type {kind} control: {iso}");
        }
    }

    #[test]
    fn zero_pitch_partner_is_the_surface() {
        let s = HelicoidSpec::new(Kind::I, 0.0, ["u", "u/3", "u/2"], [1.5, 3.0], Env::new()).unwrap();
        let pair = BourPair::bour(s.clone(), Given::A(parse("1/3").unwrap()), [0.5, 0.75]).unwrap();
        for (u, v) in Grid::for_spec(&s, 5, 5).points() {
            let a = helicoid_position(&s, u, v).unwrap();
            let b = pair.partner.position(u, v).unwrap();
            assert!((a - b).max_abs() < 1e-10, "{a} {b}");
        }
        let grid = Grid::for_spec(&s, 9, 9);
        assert!(isometry_residual(&s, &pair.partner, &grid).unwrap() < 1e-13);
    }

    #[test]
    fn same_gauss_pair_one_example() {
        let pair = same_gauss_pair_i(&params("u", 1.0, 0.5, [1.1, std::f64::consts::PI])).unwrap();
        let w = pair.helicoid.exprs[2].eval(2.0, pair.helicoid.env()).unwrap();
        let want = (1.5f64).sqrt().asinh() - (3.0f64 / 5.0).sqrt().atan();
        assert!((w - want).abs() < 1e-14);
        let grid = Grid::for_spec(&pair.helicoid, 17, 17);
        let rep = pair_report(&pair, &grid, &Tolerances::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn same_gauss_pair_one_all_signs() {
        for (sw, sr) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let mut p = params("u^2/2 + 1", 1.0, 0.25, [1.2, 2.5]);
            p.signs = Signs { profile: sw, partner: sr };
            let pair = same_gauss_pair_i(&p).unwrap();
            let grid = Grid::for_spec(&pair.helicoid, 9, 9);
            let g = gauss_residual(&pair.helicoid, &pair.partner, &grid).unwrap();
            assert!(g < 1e-8, "signs {sw} {sr}: {g}");
        }
    }

    #[test]
    fn same_gauss_pair_two_example() {
        let pair = example_pair(2).unwrap();
        assert_eq!(pair.sign_choices["vbar_shift"], "+");
        let grid = Grid::for_spec(&pair.helicoid, 17, 17);
        let rep = pair_report(&pair, &grid, &Tolerances::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(profile_ode_residual(&pair.helicoid, 101).unwrap() < 1e-8);
    }

    #[test]
    fn printed_example_two_profile_is_a_right_helicoid() {
        let x = "sqrt(2)*(asin(sqrt((u^2+1)/2)) - atan(sqrt((u^2+1)/(1-u^2))))";
        let s = HelicoidSpec::new(Kind::II, 1.0, [x, "0", "u"], [0.05, 0.95], Env::new()).unwrap();
        assert!(matches!(reject_right_helicoid_ii(&s), Err(Error::RightHelicoid(_))));
    }

    #[test]
    fn same_gauss_parameter_ranges() {
        assert!(matches!(same_gauss_pair_i(&params("u", 1.0, 2.0, [1.1, 3.0])), Err(Error::Parameter(_))));
        assert!(matches!(same_gauss_pair_i(&params("u", 1.0, -0.5, [1.1, 3.0])), Err(Error::Parameter(_))));
        assert!(matches!(same_gauss_pair_ii(&params("u", 1.0, 0.5, [0.1, 0.9])), Err(Error::Parameter(_))));
        assert!(matches!(same_gauss_pair_ii(&params("u", 1.0, -0.5, [0.1, 1.5])), Err(Error::Parameter(_))));
    }

    #[test]
    fn right_helicoid_limit() {
        let pair = same_gauss_pair_i(&params("u", 1.0, 1.0, [1.1, 3.0])).unwrap();
        for u in [1.1, 2.0, 3.0] {
            let j = pair.helicoid.profile_jets(u).unwrap()[2];
            assert_eq!((j.v, j.d1, j.d2), (0.0, 0.0, 0.0));
        }
        let right = right_helicoid_pair_i("u", 1.0, [0.0, 0.0, 0.0], 1.0, [1.1, 3.0]).unwrap();
        let grid = Grid::for_spec(&right.helicoid, 9, 9);
        let rep = pair_report(&right, &grid, &Tolerances::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
        for (u, v) in grid.points() {
            let a = pair.partner.position(u, v).unwrap();
            let b = right.partner.position(u, v).unwrap();
            assert!((a - b).max_abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_examples() {
        let x = Component::expr(parse("u").unwrap(), Arc::new(Env::new()));
        let b2 = bernoulli_solution(Kind::I, &x, 1.0, 0.5).unwrap();
        assert!(bernoulli_residual(Kind::I, &b2, &x, 1.0, [1.1, 3.0], 101).unwrap() < 1e-10);
        assert_eq!(bernoulli_residual(Kind::I, &Component::Const(1.0), &x, 1.0, [1.1, 3.0], 101).unwrap(), 0.0);
        let bump = b2.clone();
        let off = Component::func("perturbed", move |u| Ok(bump.jet(u)? * 1.001));
        assert!(bernoulli_residual(Kind::I, &off, &x, 1.0, [1.1, 3.0], 101).unwrap() > 1e-5);
    }

    #[test]
    fn example_three_gauss_maps_differ() {
        let pair = example_pair(3).unwrap();
        let grid = Grid::for_spec(&pair.helicoid, 17, 17);
        let rep = pair_report(&pair, &grid, &Tolerances::default()).unwrap();
        assert!(rep.verdicts.isometric && rep.verdicts.gauss_differs && rep.pass, "{rep:?}");
    }

    #[test]
    fn type_three_gauge_matching_x_prime_shares_gauss_map() {
        // a = x'/w' forces b = z'/w' + λ²/(4w²) and the Gauss maps coincide.
        let s = HelicoidSpec::new(Kind::III, 1.0, ["u", "0", "u"], [0.8, 3.0], Env::new()).unwrap();
        let pair = BourPair::bour(s.clone(), Given::A(parse("1").unwrap()), [0.8, 0.0]).unwrap();
        let grid = Grid::for_spec(&s, 9, 9);
        assert!(gauss_residual(&pair.helicoid, &pair.partner, &grid).unwrap() < 1e-10);
        let s = HelicoidSpec::new(Kind::III, 0.7, ["u^2/2", "-sin(u)/4", "u + 1"], [0.5, 2.0], Env::new()).unwrap();
        let pair = BourPair::bour(s.clone(), Given::A(parse("u").unwrap()), [0.0, 0.0]).unwrap();
        let grid = Grid::for_spec(&s, 9, 9);
        assert!(isometry_residual(&pair.helicoid, &pair.partner, &grid).unwrap() < 1e-9);
        assert!(gauss_residual(&pair.helicoid, &pair.partner, &grid).unwrap() < 1e-10);
    }

    #[test]
    fn literal_lambda_zero_partner_is_not_isometric() {
        let s = HelicoidSpec::new(Kind::III, 1.0, ["u", "c", "u"], [0.8, std::f64::consts::PI], env(&[("c", 0.0)])).unwrap();
        let lit = HelicoidSpec::new(Kind::III, 0.0, ["u", "c", "u"], s.domain, env(&[("c", 0.0)])).unwrap();
        let grid = Grid::for_spec(&s, 9, 9);
        assert!(isometry_residual(&s, &lit, &grid).unwrap() > 1e-2);
    }

    #[test]
    fn partner_gauss_display_matches() {
        let pair = same_gauss_pair_i(&params("u", 1.0, 0.5, [1.1, 3.0])).unwrap();
        for (u, v) in Grid::for_spec(&pair.helicoid, 5, 5).points() {
            let t = pair.partner.t(u, v).unwrap();
            let p = pair.partner.rotational.profile_jets(u).unwrap();
            let shown = crate::helicoid::family_gauss_map(Kind::I, 0.0, p, u, t).unwrap();
            let direct = gauss_map(&pair.partner.jet(u, v).unwrap()).unwrap();
            assert!(shown.sup_diff(&direct) < 1e-12);
            let h = closed_form_gauss_map(&pair.helicoid, u, v).unwrap();
            assert!(h.sup_diff(&direct) < 1e-8);
            assert!(pair.partner.gauss(u, v).unwrap().sup_diff(&direct) < 1e-10);
            let j = pair.partner.jet(u, v).unwrap();
            let generic = curvature_report(&j, &orthonormal_frame(&j).unwrap()).unwrap();
            let chart = pair.partner.curvatures(u, v).unwrap();
            assert!((generic.k - chart.k).abs() < 1e-8);
            assert!((generic.hvec - chart.hvec).max_abs() < 1e-8);
        }
    }

    #[test]
    fn parallel_curves() {
        let pairs = [
            same_gauss_pair_i(&params("u", 1.0, 0.5, [1.1, 3.0])).unwrap(),
            same_gauss_pair_ii(&params("u", 1.0, -0.5, [0.05, 0.95])).unwrap(),
            example_pair(3).unwrap(),
        ];
        for pair in &pairs {
            for u0 in [pair.helicoid.domain[0] + 0.1, pair.helicoid.domain[1] - 0.1] {
                let d = parallel_curve_defect(pair, u0, 100).unwrap();
                assert!(d < 1e-9, "type {}: {d}", pair.helicoid.kind);
            }
        }
    }

    #[test]
    fn pair_file_round_trip() {
        let text = r#"{"helicoid":{"kind":"I","lambda":1.0,"profile":{"x":"u","z":"0","w":"u/2"},"domain":[1.5,3.0]},"gauge":{"a":"0"}}"#;
        let pair = BourPair::from_json(text).unwrap();
        assert_eq!(pair.expect.isometric, Some(true));
        let bad = r#"{"helicoid":{"kind":"I","lambda":1.0,"profile":{"x":"u","z":"0","w":"u/2"},"domain":[1.5,3.0]},"gauge":{"a":"0","b":"1"}}"#;
        assert!(matches!(BourPair::from_json(bad), Err(Error::InvalidSpec(_))));
    }
}
