#![allow(dead_code)]

use bour_core::bour::{sweep, Grid};
use bour_core::expr::Env;
use bour_core::helicoid::{closed_form_curvatures, HelicoidSpec, Kind};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random smooth profile of the given kind, drawn from families that are
/// mostly spacelike; candidates with `W < 1e-2` anywhere on a 33x33 grid,
/// or whose closed-form frame fails, are redrawn. Returns the spec and the
/// number of rejected draws.
pub fn random_spec(kind: Kind, rng: &mut ChaCha8Rng) -> (HelicoidSpec, usize) {
    let mut rejected = 0;
    loop {
        if let Some(s) = candidate(kind, rng) {
            if usable(&s) {
                return (s, rejected);
            }
        }
        rejected += 1;
    }
}

fn candidate(kind: Kind, rng: &mut ChaCha8Rng) -> Option<HelicoidSpec> {
    let mut r = |a: f64, b: f64| rng.gen_range(a..b);
    let lambda = r(0.0, 1.0);
    let (p, domain) = match kind {
        Kind::I => (
            [
                format!("{:?} + {:?}*u + {:?}*sin(u)", r(2.0, 3.0), r(0.3, 1.0), r(-0.2, 0.2)),
                format!("{:?}*u + {:?}*cos(u)", r(1.0, 2.0), r(-0.3, 0.3)),
                format!("{:?}*u + {:?}*sin(2*u)", r(-0.3, 0.3), r(-0.1, 0.1)),
            ],
            [0.2, 1.5],
        ),
        Kind::II => (
            [
                format!("{:?}*u^2 + {:?}*u", r(0.5, 1.5), r(3.0, 5.0)),
                format!("{:?}*u + {:?}*sin(u)", r(-0.2, 0.2), r(-0.05, 0.05)),
                format!("1 + {:?}*u + {:?}*u^2", r(0.3, 0.6), r(-0.05, 0.05)),
            ],
            [0.2, 1.5],
        ),
        Kind::III => (
            [
                format!("{:?}*u + {:?}*sin(u)", r(1.0, 2.0), r(-0.3, 0.3)),
                format!("{:?}*u + {:?}*cos(u)", r(-0.5, 0.2), r(-0.1, 0.1)),
                format!("1 + {:?}*u + {:?}*u^2", r(0.3, 1.0), r(-0.05, 0.05)),
            ],
            [0.2, 1.5],
        ),
    };
    HelicoidSpec::new(kind, lambda, [&p[0], &p[1], &p[2]], domain, Env::new()).ok()
}

fn usable(s: &HelicoidSpec) -> bool {
    let grid = Grid::for_spec(s, 33, 33);
    match sweep(&grid, |u, v| closed_form_curvatures(s, u, v).map(|r| r.form.w)) {
        Ok(ws) => ws.iter().all(|w| *w > 1e-2),
        Err(_) => false,
    }
}
