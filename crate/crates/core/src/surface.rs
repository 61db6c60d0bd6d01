//! Family-agnostic curvature of spacelike surfaces in Minkowski 4-space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{causal_character, wedge, Bivector6, CausalClass, Vec4};

/// Relative band below which `W` counts as zero.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Minimum `|<p,p>|` for a projected seed to become a normal.
pub const SEED_TOL: f64 = 1e-10;
/// Band for the minimal / marginally trapped classification.
pub const MEAN_CURVATURE_TOL: f64 = 1e-8;

/// Default normal seeds: `e3, e4, e1, e2`.
pub const DEFAULT_SEEDS: [Vec4; 4] = [
    Vec4([0.0, 0.0, 1.0, 0.0]),
    Vec4([0.0, 0.0, 0.0, 1.0]),
    Vec4([1.0, 0.0, 0.0, 0.0]),
    Vec4([0.0, 1.0, 0.0, 0.0]),
];

/// Position and derivatives up to second order at `(u, v)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SurfaceJet {
    pub u: f64,
    pub v: f64,
    pub x: Vec4,
    pub xu: Vec4,
    pub xv: Vec4,
    pub xuu: Vec4,
    pub xuv: Vec4,
    pub xvv: Vec4,
}

impl SurfaceJet {
    pub fn is_finite(&self) -> bool {
        [self.x, self.xu, self.xv, self.xuu, self.xuv, self.xvv].iter().all(Vec4::is_finite)
    }

    /// Largest componentwise difference over all six vectors.
    pub fn sup_diff(&self, o: &SurfaceJet) -> f64 {
        [
            self.x - o.x,
            self.xu - o.xu,
            self.xv - o.xv,
            self.xuu - o.xuu,
            self.xuv - o.xuv,
            self.xvv - o.xvv,
        ]
        .iter()
        .map(Vec4::max_abs)
        .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FirstForm {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub w: f64,
}

impl FirstForm {
    pub fn new(g11: f64, g12: f64, g22: f64) -> Self {
        FirstForm { g11, g12, g22, w: g11 * g22 - g12 * g12 }
    }

    pub fn sup_diff(&self, o: &FirstForm) -> f64 {
        (self.g11 - o.g11).abs().max((self.g12 - o.g12).abs()).max((self.g22 - o.g22).abs())
    }

    fn is_degenerate(&self) -> bool {
        self.w.abs() <= DEGENERATE_TOL * ((self.g11 * self.g22).abs() + self.g12 * self.g12)
    }

    /// Fails unless the induced metric is positive definite.
    pub fn require_spacelike(&self, u: f64, v: f64) -> Result<()> {
        if self.is_degenerate() {
            return Err(Error::Degenerate { u, v, w: self.w });
        }
        if self.w < 0.0 || self.g11 <= 0.0 {
            return Err(Error::NotSpacelike { u, v, w: self.w });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Frame {
    pub e1: Vec4,
    pub e2: Vec4,
    pub n1: Vec4,
    pub n2: Vec4,
    pub eps1: f64,
    pub eps2: f64,
}

impl Frame {
    /// Flip `n1`/`n2` so each points to the same side as its counterpart in
    /// `reference`.
    pub fn align_to(mut self, reference: &Frame) -> Frame {
        if self.n1.dot(&reference.n1) * self.eps1 < 0.0 {
            self.n1 = -self.n1;
        }
        if self.n2.dot(&reference.n2) * self.eps2 < 0.0 {
            self.n2 = -self.n2;
        }
        self
    }

    /// Largest deviation of the pairwise products from `diag(1, 1, eps1, eps2)`.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = [self.e1, self.e2, self.n1, self.n2];
        let d = [1.0, 1.0, self.eps1, self.eps2];
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in i..4 {
                let want = if i == j { d[i] } else { 0.0 };
                worst = worst.max((v[i].dot(&v[j]) - want).abs());
            }
        }
        worst
    }

    /// Residual of projecting `other`'s normals onto this frame's normal
    /// plane; zero when the planes coincide.
    pub fn normal_plane_residual(&self, other: &Frame) -> f64 {
        [other.n1, other.n2]
            .iter()
            .map(|n| {
                let p = self.eps1 * n.dot(&self.n1) * self.n1 + self.eps2 * n.dot(&self.n2) * self.n2;
                (*n - p).max_abs()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub form: FirstForm,
    /// `b[i] = [b^i_11, b^i_12, b^i_22]` against `N_{i+1}`.
    pub b: [[f64; 3]; 2],
    pub h1: f64,
    pub h2: f64,
    pub hvec: Vec4,
    pub k: f64,
    pub hclass: CausalClass,
    pub minimal: bool,
    pub marginally_trapped: bool,
}

pub fn first_form(j: &SurfaceJet) -> Result<FirstForm> {
    let f = FirstForm::new(j.xu.dot(&j.xu), j.xu.dot(&j.xv), j.xv.dot(&j.xv));
    if f.is_degenerate() {
        return Err(Error::Degenerate { u: j.u, v: j.v, w: f.w });
    }
    Ok(f)
}

/// `e1 = X_u/√g11`, `e2 = (g11 X_v − g12 X_u)/√(W g11)`.
pub fn tangent_frame(j: &SurfaceJet, f: &FirstForm) -> (Vec4, Vec4) {
    let e1 = j.xu.scale(1.0 / f.g11.sqrt());
    let e2 = (f.g11 * j.xv - f.g12 * j.xu).scale(1.0 / (f.w * f.g11).sqrt());
    (e1, e2)
}

pub fn orthonormal_frame(j: &SurfaceJet) -> Result<Frame> {
    orthonormal_frame_seeded(j, &DEFAULT_SEEDS)
}

/// Gram–Schmidt over `seeds` in the orthogonal complement of the tangent
/// plane. The spacelike normal becomes `n1`, the timelike one `n2`.
pub fn orthonormal_frame_seeded(j: &SurfaceJet, seeds: &[Vec4]) -> Result<Frame> {
    let f = first_form(j)?;
    f.require_spacelike(j.u, j.v)?;
    let (e1, e2) = tangent_frame(j, &f);
    let mut found: Vec<(Vec4, f64)> = Vec::with_capacity(2);
    for s in seeds {
        let mut p = *s - s.dot(&e1) * e1 - s.dot(&e2) * e2;
        for (n, eps) in &found {
            p = p - (eps * p.dot(n)) * *n;
        }
        let q = p.norm_sq();
        if q.abs() > SEED_TOL {
            found.push((p.scale(1.0 / q.abs().sqrt()), q.signum()));
            if found.len() == 2 {
                break;
            }
        }
    }
    let fail = |reason: &str| Error::FrameFailure { u: j.u, v: j.v, reason: reason.to_string() };
    if found.len() < 2 {
        return Err(fail("normal seeds are degenerate"));
    }
    let (a, b) = (found[0], found[1]);
    let (n1, n2) = match (a.1 > 0.0, b.1 > 0.0) {
        (true, false) => (a.0, b.0),
        (false, true) => (b.0, a.0),
        _ => return Err(fail("normal plane is not Lorentzian")),
    };
    Ok(Frame { e1, e2, n1, n2, eps1: 1.0, eps2: -1.0 })
}

fn h_scale(form: &FirstForm, b: &[[f64; 3]; 2]) -> f64 {
    let s: f64 = b.iter().flatten().map(|x| x.abs()).sum();
    1.0 + s / (form.g11 + form.g22)
}

/// Classify a mean curvature vector against `scale` (see [`MEAN_CURVATURE_TOL`]).
pub fn classify_h(hvec: Vec4, scale: f64) -> (CausalClass, bool, bool) {
    let minimal = hvec.max_abs() < MEAN_CURVATURE_TOL * scale;
    if minimal {
        return (CausalClass::Spacelike, true, false);
    }
    if hvec.norm_sq().abs() <= MEAN_CURVATURE_TOL * scale * scale {
        return (CausalClass::Lightlike, false, true);
    }
    (causal_character(hvec), false, false)
}

/// Assemble a report from second-form coefficients taken against `frame`.
pub fn report_from_coefficients(form: FirstForm, frame: &Frame, b: [[f64; 3]; 2], h: Option<(f64, f64)>, k: Option<f64>) -> CurvatureReport {
    let hi = |c: &[f64; 3]| (c[0] * form.g22 - 2.0 * c[1] * form.g12 + c[2] * form.g11) / (2.0 * form.w);
    let (h1, h2) = h.unwrap_or((hi(&b[0]), hi(&b[1])));
    let k = k.unwrap_or_else(|| {
        (frame.eps1 * (b[0][0] * b[0][2] - b[0][1] * b[0][1]) + frame.eps2 * (b[1][0] * b[1][2] - b[1][1] * b[1][1]))
            / form.w
    });
    let hvec = (frame.eps1 * h1) * frame.n1 + (frame.eps2 * h2) * frame.n2;
    let (hclass, minimal, marginally_trapped) = classify_h(hvec, h_scale(&form, &b));
    CurvatureReport { form, b, h1, h2, hvec, k, hclass, minimal, marginally_trapped }
}

pub fn curvature_report(j: &SurfaceJet, frame: &Frame) -> Result<CurvatureReport> {
    let form = first_form(j)?;
    form.require_spacelike(j.u, j.v)?;
    let coeff = |n: &Vec4| [j.xuu.dot(n), j.xuv.dot(n), j.xvv.dot(n)];
    let b = [coeff(&frame.n1), coeff(&frame.n2)];
    Ok(report_from_coefficients(form, frame, b, None, None))
}

/// `ν = X_u ∧ X_v / √W`.
pub fn gauss_map(j: &SurfaceJet) -> Result<Bivector6> {
    let f = first_form(j)?;
    f.require_spacelike(j.u, j.v)?;
    Ok(wedge(j.xu, j.xv).scale(1.0 / f.w.sqrt()))
}

/// Default finite-difference step at `(u, v)`.
pub fn default_step(u: f64, v: f64) -> f64 {
    1e-3 * 1f64.max(u.abs()).max(v.abs())
}

/// Central differences with steps `h` and `2h`, combined by one Richardson
/// step.
pub fn numeric_jet(surface: &dyn Fn(f64, f64) -> Result<Vec4>, u: f64, v: f64, h: Option<f64>) -> Result<SurfaceJet> {
    let h = h.unwrap_or_else(|| default_step(u, v));
    let mut s = [[Vec4::ZERO; 5]; 5];
    for (i, row) in s.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let (di, dk) = (i as f64 - 2.0, k as f64 - 2.0);
            if di == 0.0 || dk == 0.0 || di.abs() == dk.abs() {
                *cell = surface(u + di * h, v + dk * h)?;
            }
        }
    }
    let at = |i: i32, k: i32| s[(i + 2) as usize][(k + 2) as usize];
    let rich = |fine: Vec4, coarse: Vec4| (4.0 * fine - coarse).scale(1.0 / 3.0);
    let xu = rich((at(1, 0) - at(-1, 0)).scale(0.5 / h), (at(2, 0) - at(-2, 0)).scale(0.25 / h));
    let xv = rich((at(0, 1) - at(0, -1)).scale(0.5 / h), (at(0, 2) - at(0, -2)).scale(0.25 / h));
    let c = at(0, 0);
    let xuu = rich(
        (at(1, 0) - 2.0 * c + at(-1, 0)).scale(1.0 / (h * h)),
        (at(2, 0) - 2.0 * c + at(-2, 0)).scale(0.25 / (h * h)),
    );
    let xvv = rich(
        (at(0, 1) - 2.0 * c + at(0, -1)).scale(1.0 / (h * h)),
        (at(0, 2) - 2.0 * c + at(0, -2)).scale(0.25 / (h * h)),
    );
    let mixed = |m: i32| (at(m, m) - at(m, -m) - at(-m, m) + at(-m, -m)).scale(1.0 / (4.0 * (m * m) as f64 * h * h));
    let xuv = rich(mixed(1), mixed(2));
    Ok(SurfaceJet { u, v, x: c, xu, xv, xuu, xuv, xvv })
}
