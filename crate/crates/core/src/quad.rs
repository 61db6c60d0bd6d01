//! Adaptive Gauss–Kronrod (7/15) quadrature and memoized antiderivatives.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default absolute and relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Interpolation error target of an [`Antiderivative`] table.
pub const TABLE_TOL: f64 = 1e-10;

const MAX_INTERVALS: usize = 4000;
const MAX_NODES: usize = 200_000;

/// Tolerance in effect: `LB_QUAD_TOL` if set to a positive number, else
/// [`DEFAULT_TOL`]. Read once per process.
pub fn tolerance() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("LB_QUAD_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(DEFAULT_TOL)
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod estimate and its distance from the embedded 7-point
/// Gauss rule.
fn gk15(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx)? + f(c + dx)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    let (k, g) = (k * h, g * h);
    if !k.is_finite() {
        return Err(Error::Quadrature { a, b, reason: "non-finite integrand".into() });
    }
    Ok((k, (k - g).abs()))
}

struct Piece {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// `∫_a^b f` to within `max(tol, tol·|I|)`, bisecting the worst interval
/// first.
pub fn integrate(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return integrate(f, b, a, tol).map(|x| -x);
    }
    let (val, err) = gk15(f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, val, err });
    let (mut total, mut total_err) = (val, err);
    while total_err > tol.max(tol * total.abs()) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature { a, b, reason: format!("no convergence, error estimate {total_err:e}") });
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return Err(Error::Quadrature { a, b, reason: format!("interval collapsed near {m}") });
        }
        let (v1, e1) = gk15(f, p.a, m)?;
        let (v2, e2) = gk15(f, m, p.b)?;
        total += v1 + v2 - p.val;
        total_err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, val: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, val: v2, err: e2 });
    }
    // Re-add in a fixed order so the result does not depend on heap layout.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(pieces.iter().map(|p| p.val).sum())
}

/// `F(u) = ∫_a^u f` on `[a, b]`, tabulated once and then read through cubic
/// Hermite interpolation on `(F, f)`. Outside the table it integrates
/// directly. Immutable after construction, so it can be shared across
/// threads.
pub struct Antiderivative {
    f: Box<dyn Fn(f64) -> Result<f64> + Send + Sync>,
    tol: f64,
    x: Vec<f64>,
    fx: Vec<f64>,
    dfx: Vec<f64>,
}

impl std::fmt::Debug for Antiderivative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Antiderivative")
            .field("domain", &(self.lower(), self.upper()))
            .field("nodes", &self.x.len())
            .finish()
    }
}

fn hermite(x0: f64, x1: f64, f0: f64, f1: f64, d0: f64, d1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * h * d0 + (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * h * d1
}

impl Antiderivative {
    pub fn build(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static, a: f64, b: f64) -> Result<Self> {
        Self::build_with_tol(f, a, b, tolerance())
    }

    pub fn build_with_tol(
        f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
        a: f64,
        b: f64,
        tol: f64,
    ) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Quadrature { a, b, reason: "empty or non-finite interval".into() });
        }
        let f: Box<dyn Fn(f64) -> Result<f64> + Send + Sync> = Box::new(f);
        const START: usize = 32;
        let mut x: Vec<f64> = (0..=START).map(|i| a + (b - a) * i as f64 / START as f64).collect();
        x[START] = b;
        let mut fx = vec![0.0; x.len()];
        for i in 1..x.len() {
            fx[i] = fx[i - 1] + integrate(&*f, x[i - 1], x[i], tol)?;
        }
        let mut dfx = x.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;

        // Split any interval whose midpoint interpolant misses the quadrature
        // value; the midpoint becomes a node, so nothing is recomputed.
        let mut i = 0;
        while i + 1 < x.len() {
            let (x0, x1) = (x[i], x[i + 1]);
            let m = 0.5 * (x0 + x1);
            let direct = fx[i] + integrate(&*f, x0, m, tol)?;
            let interp = hermite(x0, x1, fx[i], fx[i + 1], dfx[i], dfx[i + 1], m);
            if (interp - direct).abs() <= TABLE_TOL * direct.abs().max(1.0) || m <= x0 || m >= x1 {
                i += 1;
                continue;
            }
            if x.len() >= MAX_NODES {
                return Err(Error::Quadrature { a, b, reason: "antiderivative table did not converge".into() });
            }
            x.insert(i + 1, m);
            fx.insert(i + 1, direct);
            dfx.insert(i + 1, f(m)?);
        }
        Ok(Antiderivative { f, tol, x, fx, dfx })
    }

    pub fn lower(&self) -> f64 {
        self.x[0]
    }

    pub fn upper(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub fn nodes(&self) -> usize {
        self.x.len()
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        let (a, b) = (self.lower(), self.upper());
        if !(a..=b).contains(&u) {
            return integrate(&*self.f, a, u, self.tol);
        }
        let i = match self.x.partition_point(|&t| t <= u) {
            0 => 0,
            k if k >= self.x.len() => self.x.len() - 2,
            k => k - 1,
        };
        Ok(hermite(self.x[i], self.x[i + 1], self.fx[i], self.fx[i + 1], self.dfx[i], self.dfx[i + 1], u))
    }
}
