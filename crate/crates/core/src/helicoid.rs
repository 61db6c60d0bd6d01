//! The three helicoidal families and their rotational counterparts.
//!
//! * type I:   `X = (x cos v, x sin v, z, w + λv)`
//! * type II:  `X = (x + λv, y, w sinh v, w cosh v)`
//! * type III: `X = x e1 + √2 v w e2 + (z + v² w + λv) ξ3 + w ξ4`
//!
//! Rotational surfaces are the `λ = 0` members, with profile `(n, s, r)` in
//! place of `(x, z, w)` / `(x, y, w)`.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse, Env, Expr, Jet2};
use crate::lorentz::{pseudo_to_standard, wedge, Bivector6, Vec4, XI3, XI4};
use crate::profile::Component;
use crate::surface::{report_from_coefficients, tangent_frame, CurvatureReport, FirstForm, Frame, SurfaceJet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    I,
    II,
    III,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::I, Kind::II, Kind::III];

    /// Profile component names in storage order.
    pub fn profile_names(self) -> [&'static str; 3] {
        match self {
            Kind::II => ["x", "y", "w"],
            _ => ["x", "z", "w"],
        }
    }

    pub fn default_v_domain(self) -> [f64; 2] {
        use std::f64::consts::PI;
        match self {
            Kind::I => [0.0, 2.0 * PI],
            Kind::II => [-1.0, 1.0],
            Kind::III => [-PI, PI],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::I => "I",
            Kind::II => "II",
            Kind::III => "III",
        })
    }
}

#[derive(Clone, Debug)]
pub struct HelicoidSpec {
    pub kind: Kind,
    pub lambda: f64,
    /// Source text of `x, z|y, w`.
    pub sources: [String; 3],
    pub exprs: [Expr; 3],
    pub domain: [f64; 2],
    pub v_domain: [f64; 2],
    pub constants: Env,
    env: Arc<Env>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    kind: Kind,
    lambda: f64,
    profile: BTreeMap<String, String>,
    domain: [f64; 2],
    #[serde(default)]
    constants: Env,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v_domain: Option<[f64; 2]>,
}

fn check_interval(name: &str, d: [f64; 2]) -> Result<()> {
    if d[0].is_finite() && d[1].is_finite() && d[0] < d[1] {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be a finite interval [a, b] with a < b")))
    }
}

impl HelicoidSpec {
    pub fn new(kind: Kind, lambda: f64, profile: [&str; 3], domain: [f64; 2], constants: Env) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidSpec(format!("lambda must be a non-negative number, got {lambda}")));
        }
        check_interval("domain", domain)?;
        if constants.contains_key("lambda") {
            return Err(Error::InvalidSpec("`lambda` is reserved and cannot be a constant".into()));
        }
        if let Some((k, v)) = constants.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidSpec(format!("constant `{k}` is not finite: {v}")));
        }
        let mut env = constants.clone();
        env.insert("lambda".into(), lambda);
        let mut exprs = Vec::with_capacity(3);
        for src in profile {
            let e = parse(src)?;
            e.check_constants(&env)?;
            exprs.push(e);
        }
        let exprs: [Expr; 3] = exprs.try_into().expect("three profile expressions");
        Ok(HelicoidSpec {
            kind,
            lambda,
            sources: profile.map(str::to_string),
            exprs,
            domain,
            v_domain: kind.default_v_domain(),
            constants,
            env: Arc::new(env),
        })
    }

    pub fn with_v_domain(mut self, v_domain: [f64; 2]) -> Result<Self> {
        check_interval("v_domain", v_domain)?;
        self.v_domain = v_domain;
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SpecFile = serde_json::from_str(text)?;
        let names = f.kind.profile_names();
        if let Some(k) = f.profile.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::InvalidSpec(format!(
                "profile key `{k}` does not belong to a type {} surface (expected {})",
                f.kind,
                names.join(", ")
            )));
        }
        let get = |n: &str| {
            f.profile
                .get(n)
                .map(String::as_str)
                .ok_or_else(|| Error::InvalidSpec(format!("profile is missing `{n}`")))
        };
        let profile = [get(names[0])?, get(names[1])?, get(names[2])?];
        let spec = HelicoidSpec::new(f.kind, f.lambda, profile, f.domain, f.constants.clone())?;
        match f.v_domain {
            Some(v) => spec.with_v_domain(v),
            None => Ok(spec),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let names = self.kind.profile_names();
        let profile = names.iter().zip(&self.sources).map(|(n, s)| (n.to_string(), s.clone())).collect();
        let f = SpecFile {
            kind: self.kind,
            lambda: self.lambda,
            profile,
            domain: self.domain,
            constants: self.constants.clone(),
            v_domain: Some(self.v_domain),
        };
        serde_json::to_value(f).expect("spec serializes")
    }

    pub fn env(&self) -> &Arc<Env> {
        &self.env
    }

    /// Profile component `i` (0 = x, 1 = z|y, 2 = w) as a [`Component`].
    pub fn component(&self, i: usize) -> Component {
        Component::expr(self.exprs[i].clone(), self.env.clone())
    }

    pub fn profile_jets(&self, u: f64) -> Result<[Jet2; 3]> {
        Ok([
            self.exprs[0].eval_jet(u, &self.env)?,
            self.exprs[1].eval_jet(u, &self.env)?,
            self.exprs[2].eval_jet(u, &self.env)?,
        ])
    }

    /// "rotational" when `λ = 0`, otherwise "helicoidal".
    pub fn label(&self) -> &'static str {
        if self.lambda == 0.0 {
            "rotational"
        } else {
            "helicoidal"
        }
    }

    /// The same profile with `λ = 0`, as a rotational spec.
    pub fn rotational(&self) -> RotationalSpec {
        RotationalSpec {
            kind: self.kind,
            n: self.component(0),
            s: self.component(1),
            r: self.component(2),
            domain: self.domain,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RotationalSpec {
    pub kind: Kind,
    pub n: Component,
    pub s: Component,
    pub r: Component,
    pub domain: [f64; 2],
}

impl RotationalSpec {
    pub fn profile_jets(&self, u: f64) -> Result<[Jet2; 3]> {
        Ok([self.n.jet(u)?, self.s.jet(u)?, self.r.jet(u)?])
    }

    pub fn position(&self, u: f64, t: f64) -> Result<Vec4> {
        let p = [self.n.value(u)?, self.s.value(u)?, self.r.value(u)?];
        Ok(family_position(self.kind, 0.0, p, t))
    }
}

/// Point of the family surface for profile values `p = (x, z|y, w)`.
pub fn family_position(kind: Kind, lambda: f64, p: [f64; 3], v: f64) -> Vec4 {
    let [x, b, w] = p;
    match kind {
        Kind::I => {
            let (s, c) = v.sin_cos();
            Vec4::new(x * c, x * s, b, w + lambda * v)
        }
        Kind::II => Vec4::new(x + lambda * v, b, w * v.sinh(), w * v.cosh()),
        Kind::III => pseudo_to_standard([x, SQRT_2 * v * w, b + v * v * w + lambda * v, w]),
    }
}

/// Exact surface jet for profile jets `p = (x, z|y, w)`.
pub fn family_jet(kind: Kind, lambda: f64, p: [Jet2; 3], u: f64, v: f64) -> SurfaceJet {
    let [x, b, w] = p;
    match kind {
        Kind::I => {
            let (s, c) = v.sin_cos();
            SurfaceJet {
                u,
                v,
                x: Vec4::new(x.v * c, x.v * s, b.v, w.v + lambda * v),
                xu: Vec4::new(x.d1 * c, x.d1 * s, b.d1, w.d1),
                xv: Vec4::new(-x.v * s, x.v * c, 0.0, lambda),
                xuu: Vec4::new(x.d2 * c, x.d2 * s, b.d2, w.d2),
                xuv: Vec4::new(-x.d1 * s, x.d1 * c, 0.0, 0.0),
                xvv: Vec4::new(-x.v * c, -x.v * s, 0.0, 0.0),
            }
        }
        Kind::II => {
            let (sh, ch) = (v.sinh(), v.cosh());
            SurfaceJet {
                u,
                v,
                x: Vec4::new(x.v + lambda * v, b.v, w.v * sh, w.v * ch),
                xu: Vec4::new(x.d1, b.d1, w.d1 * sh, w.d1 * ch),
                xv: Vec4::new(lambda, 0.0, w.v * ch, w.v * sh),
                xuu: Vec4::new(x.d2, b.d2, w.d2 * sh, w.d2 * ch),
                xuv: Vec4::new(0.0, 0.0, w.d1 * ch, w.d1 * sh),
                xvv: Vec4::new(0.0, 0.0, w.v * sh, w.v * ch),
            }
        }
        Kind::III => {
            let q = |a: f64, bb: f64, c: f64, d: f64| pseudo_to_standard([a, bb, c, d]);
            SurfaceJet {
                u,
                v,
                x: q(x.v, SQRT_2 * v * w.v, b.v + v * v * w.v + lambda * v, w.v),
                xu: q(x.d1, SQRT_2 * v * w.d1, b.d1 + v * v * w.d1, w.d1),
                xv: q(0.0, SQRT_2 * w.v, 2.0 * v * w.v + lambda, 0.0),
                xuu: q(x.d2, SQRT_2 * v * w.d2, b.d2 + v * v * w.d2, w.d2),
                xuv: q(0.0, SQRT_2 * w.d1, 2.0 * v * w.d1, 0.0),
                xvv: q(0.0, 0.0, 2.0 * w.v, 0.0),
            }
        }
    }
}

pub fn helicoid_jet(spec: &HelicoidSpec, u: f64, v: f64) -> Result<SurfaceJet> {
    Ok(family_jet(spec.kind, spec.lambda, spec.profile_jets(u)?, u, v))
}

pub fn helicoid_position(spec: &HelicoidSpec, u: f64, v: f64) -> Result<Vec4> {
    let p = [
        spec.exprs[0].eval(u, &spec.env)?,
        spec.exprs[1].eval(u, &spec.env)?,
        spec.exprs[2].eval(u, &spec.env)?,
    ];
    Ok(family_position(spec.kind, spec.lambda, p, v))
}

pub fn rotational_jet(spec: &RotationalSpec, u: f64, t: f64) -> Result<SurfaceJet> {
    Ok(family_jet(spec.kind, 0.0, spec.profile_jets(u)?, u, t))
}

/// Profile values with derivatives, named as in the closed forms.
struct P {
    x: f64,
    x1: f64,
    x2: f64,
    b1: f64,
    b2: f64,
    w: f64,
    w1: f64,
    w2: f64,
}

impl P {
    fn new(p: [Jet2; 3]) -> Self {
        P { x: p[0].v, x1: p[0].d1, x2: p[0].d2, b1: p[1].d1, b2: p[1].d2, w: p[2].v, w1: p[2].d1, w2: p[2].d2 }
    }
}

/// Closed-form `g11, g12, g22` and `W` of a family member.
pub fn family_metric(kind: Kind, lambda: f64, p: [Jet2; 3]) -> FirstForm {
    let P { x, x1, b1: z1, w, w1, .. } = P::new(p);
    let l2 = lambda * lambda;
    let (g11, g12, g22, det) = match kind {
        Kind::I => {
            let pp = x1 * x1 + z1 * z1;
            (pp - w1 * w1, -lambda * w1, x * x - l2, (x * x - l2) * pp - x * x * w1 * w1)
        }
        Kind::II => {
            let y1 = z1;
            let r = l2 + w * w;
            (x1 * x1 + y1 * y1 - w1 * w1, lambda * x1, r, r * (y1 * y1 - w1 * w1) + x1 * x1 * w * w)
        }
        Kind::III => {
            let g11 = x1 * x1 - 2.0 * w1 * z1;
            (g11, -lambda * w1, 2.0 * w * w, 2.0 * w * w * g11 - l2 * w1 * w1)
        }
    };
    FirstForm { g11, g12, g22, w: det }
}

pub fn closed_form_metric(spec: &HelicoidSpec, u: f64) -> Result<FirstForm> {
    let f = family_metric(spec.kind, spec.lambda, spec.profile_jets(u)?);
    f.require_spacelike(u, f64::NAN)?;
    Ok(f)
}

/// Closed-form normal pair and second-form coefficients.
fn family_normals(kind: Kind, lambda: f64, p: [Jet2; 3], u: f64, v: f64, det: f64) -> Result<([Vec4; 2], [[f64; 3]; 2])> {
    let P { x, x1, x2, b1: z1, b2: z2, w, w1, w2, .. } = P::new(p);
    let fail = |reason: &str| Error::FrameFailure { u, v, reason: reason.to_string() };
    let sw = det.sqrt();
    match kind {
        Kind::I => {
            let pp = x1 * x1 + z1 * z1;
            if !(pp > 0.0) {
                return Err(fail("x'^2 + z'^2 vanishes"));
            }
            let sp = pp.sqrt();
            let (s, c) = v.sin_cos();
            let n1 = Vec4::new(z1 * c, z1 * s, -x1, 0.0).scale(1.0 / sp);
            let n2 = Vec4::new(x * x1 * w1 * c - lambda * pp * s, x * x1 * w1 * s + lambda * pp * c, x * z1 * w1, x * pp)
                .scale(1.0 / (sw * sp));
            let b1 = [(x2 * z1 - x1 * z2) / sp, 0.0, -x * z1 / sp];
            let b2 = [
                x * (w1 * (x1 * x2 + z1 * z2) - w2 * pp) / (sw * sp),
                lambda * x1 * sp / sw,
                -x * x * x1 * w1 / (sw * sp),
            ];
            Ok(([n1, n2], [b1, b2]))
        }
        Kind::II => {
            let (y1, y2) = (z1, z2);
            let q = w1 * w1 - y1 * y1;
            if !(q > 0.0) {
                return Err(fail("w'^2 - y'^2 is not positive"));
            }
            let sq = q.sqrt();
            let (sh, ch) = (v.sinh(), v.cosh());
            let n1 = Vec4::new(0.0, w1, y1 * sh, y1 * ch).scale(1.0 / sq);
            let n2 = Vec4::new(
                w * q,
                x1 * y1 * w,
                x1 * w * w1 * sh - lambda * q * ch,
                x1 * w * w1 * ch - lambda * q * sh,
            )
            .scale(1.0 / (sw * sq));
            let b1 = [(y2 * w1 - y1 * w2) / sq, 0.0, -w * y1 / sq];
            let b2 = [
                w * (x1 * (y1 * y2 - w1 * w2) + x2 * q) / (sw * sq),
                -lambda * w1 * sq / sw,
                -x1 * w * w * w1 / (sw * sq),
            ];
            Ok(([n1, n2], [b1, b2]))
        }
        Kind::III => {
            if w1 == 0.0 {
                return Err(fail("w' vanishes"));
            }
            let n1 = pseudo_to_standard([1.0, 0.0, x1 / w1, 0.0]);
            let n2 = pseudo_to_standard([
                SQRT_2 * x1 * w,
                w1 * (lambda + 2.0 * v * w),
                SQRT_2 / w1 * (w * x1 * x1 + v * v * w * w1 * w1 + lambda * v * w1 * w1 - w * w1 * z1),
                SQRT_2 * w * w1,
            ])
            .scale(1.0 / sw);
            let b1 = [(x2 * w1 - x1 * w2) / w1, 0.0, 0.0];
            let b2 = [
                SQRT_2 * w * (w1 * x1 * x2 - w2 * x1 * x1 + w1 * (z1 * w2 - w1 * z2)) / (w1 * sw),
                SQRT_2 * lambda * w1 * w1 / sw,
                -2.0 * SQRT_2 * w * w * w1 / sw,
            ];
            Ok(([n1, n2], [b1, b2]))
        }
    }
}

pub fn closed_form_frame(spec: &HelicoidSpec, u: f64, v: f64) -> Result<Frame> {
    let p = spec.profile_jets(u)?;
    let form = closed_form_metric(spec, u).map_err(|e| e.at_v(v))?;
    let j = family_jet(spec.kind, spec.lambda, p, u, v);
    let (e1, e2) = tangent_frame(&j, &form);
    let ([n1, n2], _) = family_normals(spec.kind, spec.lambda, p, u, v, form.w)?;
    Ok(Frame { e1, e2, n1, n2, eps1: 1.0, eps2: -1.0 })
}

/// `(H1, H2, K)` from the closed forms.
fn family_curvatures(kind: Kind, lambda: f64, p: [Jet2; 3], det: f64) -> (f64, f64, f64) {
    let P { x, x1, x2, b1: z1, b2: z2, w, w1, w2, .. } = P::new(p);
    let l2 = lambda * lambda;
    let w15 = det * det.sqrt();
    match kind {
        Kind::I => {
            let pp = x1 * x1 + z1 * z1;
            let sp = pp.sqrt();
            let h1 = (-x * z1 * (pp - w1 * w1) + (x * x - l2) * (x2 * z1 - x1 * z2)) / (2.0 * det * sp);
            let h2 = (x1 * w1 * (2.0 * l2 - x * x) * pp + x * x * x1 * w1.powi(3)
                - x * (x * x - l2) * (x1 * (x1 * w2 - x2 * w1) + z1 * (z1 * w2 - w1 * z2)))
                / (2.0 * w15 * sp);
            let k = (x * z1 * (x1 * z2 - x2 * z1) * det / pp
                + x.powi(3) * x1 * w1 * (w1 * (x1 * x2 + z1 * z2) - w2 * pp) / pp
                + l2 * x1 * x1 * pp)
                / (det * det);
            (h1, h2, k)
        }
        Kind::II => {
            let (y1, y2) = (z1, z2);
            let q = w1 * w1 - y1 * y1;
            let sq = q.sqrt();
            let r = l2 + w * w;
            let h1 = (-w * y1 * (x1 * x1 + y1 * y1 - w1 * w1) + r * (y2 * w1 - y1 * w2)) / (2.0 * det * sq);
            let h2 = (x1 * w1 * (2.0 * l2 + w * w) * q - w * w * w1 * x1.powi(3)
                + w * r * (x2 * q + x1 * (y1 * y2 - w1 * w2)))
                / (2.0 * w15 * sq);
            let k = (w.powi(3) * (x1 * (w1 * x2 - w2 * x1) + y1 * (w1 * y2 - w2 * y1))
                + l2 * (w * y1 * (w1 * y2 - w2 * y1) + w1 * w1 * q))
                / (det * det);
            (h1, h2, k)
        }
        Kind::III => {
            let w3 = w.powi(3);
            let h1 = w * w * (x2 * w1 - x1 * w2) / (w1 * det);
            let h2 = SQRT_2
                * (l2 * w1.powi(4) - w3 * w1 * w1 * z2 + w3 * w1 * w2 * z1 + w3 * w1 * x1 * x2 - w3 * w2 * x1 * x1
                    + 2.0 * w * w * w1.powi(3) * z1
                    - w * w * w1 * w1 * x1 * x1)
                / (w1 * w15);
            let k = (2.0 * l2 * w1.powi(4) - 4.0 * w3 * (w1 * w1 * z2 - w1 * w2 * z1 - w1 * x1 * x2 + w2 * x1 * x1))
                / (det * det);
            (h1, h2, k)
        }
    }
}

pub fn closed_form_curvatures(spec: &HelicoidSpec, u: f64, v: f64) -> Result<CurvatureReport> {
    family_curvature_report(spec.kind, spec.lambda, spec.profile_jets(u)?, u, v)
}

/// Closed-form curvature report of the family member with profile jets `p`
/// at `(u, v)`.
pub fn family_curvature_report(kind: Kind, lambda: f64, p: [Jet2; 3], u: f64, v: f64) -> Result<CurvatureReport> {
    let form = family_metric(kind, lambda, p);
    form.require_spacelike(u, v)?;
    let j = family_jet(kind, lambda, p, u, v);
    let (e1, e2) = tangent_frame(&j, &form);
    let ([n1, n2], b) = family_normals(kind, lambda, p, u, v, form.w)?;
    let frame = Frame { e1, e2, n1, n2, eps1: 1.0, eps2: -1.0 };
    let (h1, h2, k) = family_curvatures(kind, lambda, p, form.w);
    Ok(report_from_coefficients(form, &frame, b, Some((h1, h2)), Some(k)))
}

/// Closed-form Gauss map of a family member; with `lambda = 0` and the
/// profile `(n, s, r)` this is the rotational partner's display.
pub fn family_gauss_map(kind: Kind, lambda: f64, p: [Jet2; 3], u: f64, v: f64) -> Result<Bivector6> {
    let form = family_metric(kind, lambda, p);
    form.require_spacelike(u, v)?;
    let P { x, x1, b1: z1, w, w1, .. } = P::new(p);
    let c = match kind {
        Kind::I => {
            let (s, c) = v.sin_cos();
            Bivector6([
                x * x1,
                x * z1 * s,
                lambda * x1 * c + x * w1 * s,
                -x * z1 * c,
                lambda * x1 * s - x * w1 * c,
                lambda * z1,
            ])
        }
        Kind::II => {
            let y1 = z1;
            let (sh, ch) = (v.sinh(), v.cosh());
            Bivector6([
                -lambda * y1,
                x1 * w * ch - lambda * w1 * sh,
                x1 * w * sh - lambda * w1 * ch,
                y1 * w * ch,
                y1 * w * sh,
                -w * w1,
            ])
        }
        Kind::III => {
            let (e1, e2) = (Vec4::basis(0), Vec4::basis(1));
            let m = lambda + 2.0 * v * w;
            (SQRT_2 * x1 * w) * wedge(e1, e2)
                + (x1 * m) * wedge(e1, XI3)
                + (SQRT_2 * (v * v * w * w1 - w * z1 + lambda * v * w1)) * wedge(e2, XI3)
                - (SQRT_2 * w * w1) * wedge(e2, XI4)
                - (w1 * m) * wedge(XI3, XI4)
        }
    };
    Ok(c.scale(1.0 / form.w.sqrt()))
}

pub fn closed_form_gauss_map(spec: &HelicoidSpec, u: f64, v: f64) -> Result<Bivector6> {
    family_gauss_map(spec.kind, spec.lambda, spec.profile_jets(u)?, u, v)
}

/// Samples used by [`is_constant_component`].
pub const CONSTANCY_SAMPLES: usize = 64;

/// True when `d1` stays below `1e-12` at 64 evenly spaced points of `domain`.
pub fn is_constant_component(c: &Component, domain: [f64; 2]) -> Result<bool> {
    for i in 0..CONSTANCY_SAMPLES {
        let u = domain[0] + (domain[1] - domain[0]) * i as f64 / (CONSTANCY_SAMPLES - 1) as f64;
        if c.jet(u)?.d1.abs() >= 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Right helicoid: `w` constant for types I and III, `x` constant for type II.
pub fn is_right_helicoid(spec: &HelicoidSpec) -> Result<bool> {
    let i = match spec.kind {
        Kind::II => 0,
        _ => 2,
    };
    is_constant_component(&spec.component(i), spec.domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{curvature_report, first_form, gauss_map, numeric_jet, orthonormal_frame};

    fn spec(kind: Kind, lambda: f64, p: [&str; 3], domain: [f64; 2]) -> HelicoidSpec {
        let mut c = Env::new();
        c.insert("c".into(), 0.0);
        c.insert("c1".into(), 0.5);
        HelicoidSpec::new(kind, lambda, p, domain, c).unwrap()
    }

    fn samples() -> Vec<(HelicoidSpec, f64, f64)> {
        vec![
            (spec(Kind::I, 0.7, ["u^2/3 + 1.5 + sin(u)/4", "cos(u)/3 + u/5", "u^2/7 - sin(2*u)/9"], [1.0, 2.5]), 1.7, 2.5),
            (spec(Kind::I, 1.0, ["u", "u", "0"], [1.5, 3.0]), 2.0, 0.0),
            (spec(Kind::II, 0.6, ["3*u^2 + 2*u + sin(u)/4", "cos(u)/5 + u/7", "u/2 + sin(u)/3 + 1"], [0.5, 2.5]), 1.3, 0.4),
            (spec(Kind::III, 0.8, ["u^2/2 + u + sin(u)/4", "cos(u)/5 - u/3", "u/2 + sin(u)/3 + 1"], [0.5, 2.5]), 2.1, -1.2),
            (spec(Kind::III, 1.0, ["u", "c", "u"], [0.8, 3.0]), 1.0, 1.0),
        ]
    }

    #[test]
    fn substitution_examples() {
        let s = spec(Kind::I, 1.0, ["u", "0", "0"], [1.5, 3.0]);
        assert_eq!(helicoid_jet(&s, 2.0, 0.0).unwrap().x, Vec4::new(2.0, 0.0, 0.0, 0.0));
        let f = closed_form_metric(&s, 2.0).unwrap();
        assert_eq!((f.g11, f.g12, f.g22, f.w), (1.0, 0.0, 3.0, 3.0));
        let f = first_form(&helicoid_jet(&s, 2.0, 0.0).unwrap()).unwrap();
        assert_eq!((f.g11, f.g12, f.g22, f.w), (1.0, 0.0, 3.0, 3.0));

        let s = spec(Kind::I, 1.0, ["u", "0", "u/2"], [1.5, 3.0]);
        let f = closed_form_metric(&s, 2.0).unwrap();
        assert_eq!((f.g11, f.g12, f.g22, f.w), (0.75, -0.5, 3.0, 2.0));

        let s = spec(Kind::II, 1.0, ["0", "0", "u"], [0.5, 2.0]);
        let f = family_metric(Kind::II, 1.0, s.profile_jets(1.0).unwrap());
        assert_eq!(f.g11, -1.0);
        assert!(matches!(closed_form_metric(&s, 1.0), Err(Error::NotSpacelike { .. })));

        let s = spec(Kind::I, 1.0, ["u", "u", "0"], [1.5, 3.0]);
        let fr = closed_form_frame(&s, 2.0, 0.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((fr.n1 - Vec4::new(r, 0.0, -r, 0.0)).max_abs() < 1e-15);
    }

    #[test]
    fn example_three_position() {
        let s = spec(Kind::III, 1.0, ["u", "c", "u"], [0.8, 3.0]);
        for (u, v) in [(1.0, 1.0), (2.0, -0.5)] {
            let want = pseudo_to_standard([u, SQRT_2 * u * v, u * v * v + v, u]);
            assert!((helicoid_jet(&s, u, v).unwrap().x - want).max_abs() < 1e-15);
        }
        let r = closed_form_curvatures(&s, 1.7, 0.3).unwrap();
        assert_eq!(r.h1, 0.0);
    }

    #[test]
    fn jets_match_finite_differences() {
        for (s, u, v) in samples() {
            let exact = helicoid_jet(&s, u, v).unwrap();
            let num = numeric_jet(&|a, b| helicoid_position(&s, a, b), u, v, None).unwrap();
            assert!(exact.sup_diff(&num) < 1e-8, "type {} diff {}", s.kind, exact.sup_diff(&num));
        }
    }

    #[test]
    fn closed_forms_match_generic_pipeline() {
        for (s, u, v) in samples() {
            let j = helicoid_jet(&s, u, v).unwrap();
            let g = first_form(&j).unwrap();
            let c = closed_form_metric(&s, u).unwrap();
            assert!(g.sup_diff(&c) < 1e-12 && (g.w - c.w).abs() < 1e-10, "type {} metric", s.kind);

            let cf = closed_form_frame(&s, u, v).unwrap();
            assert!(cf.orthonormality_defect() < 1e-9, "type {} frame {}", s.kind, cf.orthonormality_defect());
            let gf = orthonormal_frame(&j).unwrap();
            assert!(cf.normal_plane_residual(&gf) < 1e-9);

            let closed = closed_form_curvatures(&s, u, v).unwrap();
            let generic_same_frame = curvature_report(&j, &cf).unwrap();
            for i in 0..2 {
                for k in 0..3 {
                    assert!((closed.b[i][k] - generic_same_frame.b[i][k]).abs() < 1e-10, "type {} b{}{}", s.kind, i + 1, k);
                }
            }
            assert!((closed.h1 - generic_same_frame.h1).abs() < 1e-10, "type {} H1", s.kind);
            assert!((closed.h2 - generic_same_frame.h2).abs() < 1e-10, "type {} H2", s.kind);

            let generic = curvature_report(&j, &gf).unwrap();
            assert!((closed.k - generic.k).abs() < 1e-9, "type {} K {} {}", s.kind, closed.k, generic.k);
            assert!((closed.hvec - generic.hvec).max_abs() < 1e-9, "type {} Hvec", s.kind);

            let nu = gauss_map(&j).unwrap();
            assert!(nu.sup_diff(&closed_form_gauss_map(&s, u, v).unwrap()) < 1e-12, "type {} gauss", s.kind);
        }
    }

    #[test]
    fn right_helicoid_type_one_is_minimal_with_k_one_ninth() {
        let s = spec(Kind::I, 1.0, ["u", "c1", "0"], [1.5, 3.0]);
        let r = closed_form_curvatures(&s, 2.0, 0.7).unwrap();
        assert_eq!((r.h1, r.h2), (0.0, 0.0));
        assert!((r.k - 1.0 / 9.0).abs() < 1e-15);
        let g = curvature_report(&helicoid_jet(&s, 2.0, 0.7).unwrap(), &closed_form_frame(&s, 2.0, 0.7).unwrap()).unwrap();
        assert!((g.k - 1.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn zero_pitch_is_rotational() {
        for (s, u, v) in samples() {
            let s0 = HelicoidSpec::new(s.kind, 0.0, s.sources.each_ref().map(String::as_str), s.domain, s.constants.clone()).unwrap();
            assert_eq!(s0.label(), "rotational");
            let a = helicoid_jet(&s0, u, v).unwrap();
            let b = rotational_jet(&s0.rotational(), u, v).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn right_helicoid_detection() {
        assert!(is_right_helicoid(&spec(Kind::I, 1.0, ["u", "c1", "c1"], [1.5, 3.0])).unwrap());
        assert!(!is_right_helicoid(&spec(Kind::I, 1.0, ["u", "c1", "u/2"], [1.5, 3.0])).unwrap());
        assert!(is_right_helicoid(&spec(Kind::II, 1.0, ["2", "0", "u"], [0.5, 3.0])).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"II","lambda":1.0,"profile":{"x":"u^2","y":"c1","w":"u"},"domain":[0.5,2.0],"constants":{"c1":0.25}}"#;
        let s = HelicoidSpec::from_json(text).unwrap();
        assert_eq!(s.v_domain, [-1.0, 1.0]);
        let back = HelicoidSpec::from_json(&s.to_json_value().to_string()).unwrap();
        assert_eq!(back.sources, s.sources);
        assert_eq!(back.constants, s.constants);

        let bad = r#"{"kind":"II","lambda":1.0,"profile":{"x":"u","z":"0","w":"u"},"domain":[0.5,2.0]}"#;
        assert!(matches!(HelicoidSpec::from_json(bad), Err(Error::InvalidSpec(_))));
        let bad = r#"{"kind":"I","lambda":1.0,"profile":{"x":"u","z":"k","w":"u"},"domain":[0.5,2.0]}"#;
        assert!(matches!(HelicoidSpec::from_json(bad), Err(Error::UnknownConstant { .. })));
        let bad = r#"{"kind":"I","lambda":-1.0,"profile":{"x":"u","z":"0","w":"u"},"domain":[0.5,2.0]}"#;
        assert!(matches!(HelicoidSpec::from_json(bad), Err(Error::InvalidSpec(_))));
    }
}
