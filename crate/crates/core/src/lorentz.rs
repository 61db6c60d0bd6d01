//! Vectors of Minkowski 4-space and bivectors of its second exterior power.
//!
//! The ambient metric has signature `(+,+,+,-)`. Bivectors are stored on the
//! basis `e12, e13, e14, e23, e24, e34`; the induced inner product on that
//! basis is diagonal with signs `(+,+,-,+,-,-)`, so the bivector space is a
//! pseudo-Euclidean 6-space with three negative directions.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative band used when deciding that a self-product vanishes.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Standard basis vector `e_{i+1}` (zero-based index).
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Vec4(c)
    }

    pub fn dot(&self, other: &Vec4) -> f64 {
        minkowski_dot(*self, *other)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn euclid_norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn scale(self, s: f64) -> Self {
        Vec4(self.0.map(|c| c * s))
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, o: Vec4) {
        *self = *self + o;
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        self.scale(-1.0)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v.scale(self)
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// `x1 y1 + x2 y2 + x3 y3 - x4 y4`.
pub fn minkowski_dot(x: Vec4, y: Vec4) -> f64 {
    x.0[0] * y.0[0] + x.0[1] * y.0[1] + x.0[2] * y.0[2] - x.0[3] * y.0[3]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::Timelike => "timelike",
            CausalClass::Lightlike => "lightlike",
        })
    }
}

/// Causal character of `v`. The zero vector counts as spacelike; a nonzero
/// vector whose self-product is within `1e-12 * |v|_E^2` of zero is lightlike.
pub fn causal_character(v: Vec4) -> CausalClass {
    let e = v.euclid_norm_sq();
    if e == 0.0 {
        return CausalClass::Spacelike;
    }
    let q = v.norm_sq();
    if q.abs() <= LIGHTLIKE_TOL * e {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Index pairs `(i, j)`, `i < j`, in the canonical bivector order.
pub const BIVECTOR_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Self-products of the bivector basis elements.
pub const BIVECTOR_SIGNATURE: [f64; 6] = [1.0, 1.0, -1.0, 1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bivector6(pub [f64; 6]);

impl Bivector6 {
    pub const ZERO: Bivector6 = Bivector6([0.0; 6]);

    /// `e_i ∧ e_j` for zero-based `i < j`.
    pub fn basis(i: usize, j: usize) -> Self {
        wedge(Vec4::basis(i), Vec4::basis(j))
    }

    pub fn dot(&self, other: &Bivector6) -> f64 {
        bivector_dot(*self, *other)
    }

    pub fn scale(self, s: f64) -> Self {
        Bivector6(self.0.map(|c| c * s))
    }

    /// Largest absolute component difference.
    pub fn sup_diff(&self, other: &Bivector6) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Add for Bivector6 {
    type Output = Bivector6;
    fn add(self, o: Bivector6) -> Bivector6 {
        Bivector6(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Bivector6 {
    type Output = Bivector6;
    fn sub(self, o: Bivector6) -> Bivector6 {
        Bivector6(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<Bivector6> for f64 {
    type Output = Bivector6;
    fn mul(self, b: Bivector6) -> Bivector6 {
        b.scale(self)
    }
}

/// Exterior product; the `e_ij` component is `x_i y_j - x_j y_i`.
pub fn wedge(x: Vec4, y: Vec4) -> Bivector6 {
    Bivector6(BIVECTOR_BASIS.map(|(i, j)| x.0[i] * y.0[j] - x.0[j] * y.0[i]))
}

/// Inner product induced on bivectors: on decomposables it is the Gram
/// determinant `det [[<a,c>, <a,d>], [<b,c>, <b,d>]]`.
pub fn bivector_dot(b: Bivector6, c: Bivector6) -> f64 {
    (0..6).map(|k| BIVECTOR_SIGNATURE[k] * b.0[k] * c.0[k]).sum()
}

/// Null basis vector `(e4 - e3)/√2`.
pub const XI3: Vec4 = Vec4([0.0, 0.0, -std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2]);
/// Null basis vector `(e3 + e4)/√2`.
pub const XI4: Vec4 = Vec4([0.0, 0.0, std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2]);

/// Coefficients on the pseudo-orthonormal basis `{e1, e2, ξ3, ξ4}` to
/// standard coordinates.
pub fn pseudo_to_standard(p: [f64; 4]) -> Vec4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Vec4([p[0], p[1], s * (p[3] - p[2]), s * (p[2] + p[3])])
}

/// Inverse of [`pseudo_to_standard`].
pub fn standard_to_pseudo(x: Vec4) -> [f64; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [x.0[0], x.0[1], s * (x.0[3] - x.0[2]), s * (x.0[2] + x.0[3])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn dot_examples() {
        assert_eq!(minkowski_dot(Vec4::basis(0), Vec4::basis(0)), 1.0);
        assert_eq!(minkowski_dot(Vec4::new(1.0, 2.0, 0.0, 1.0), Vec4::new(0.0, 1.0, 1.0, 3.0)), -1.0);
        assert!((minkowski_dot(XI3, XI4) + 1.0).abs() < 1e-15);
        assert_eq!(XI3, Vec4::new(0.0, 0.0, -S, S));
    }

    #[test]
    fn null_pseudo_basis() {
        assert!(XI3.norm_sq().abs() < 1e-16);
        assert!(XI4.norm_sq().abs() < 1e-16);
        assert!((XI3.dot(&XI4) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(Vec4::basis(0)), CausalClass::Spacelike);
        assert_eq!(causal_character(Vec4::basis(3)), CausalClass::Timelike);
        assert_eq!(causal_character(Vec4::new(0.0, 0.0, 3.0, 3.0)), CausalClass::Lightlike);
        assert_eq!(causal_character(Vec4::ZERO), CausalClass::Spacelike);
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(Vec4::basis(0), Vec4::basis(1)).0, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(wedge(Vec4::basis(1), Vec4::basis(0)).0, [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        // Hand expansion of the 2x2 minors of rows (1,0,1,0), (0,1,0,1).
        let b = wedge(Vec4::new(1.0, 0.0, 1.0, 0.0), Vec4::new(0.0, 1.0, 0.0, 1.0));
        assert_eq!(b.0, [1.0, 0.0, 1.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn bivector_signature_is_e63() {
        let selfs: Vec<f64> = BIVECTOR_BASIS
            .iter()
            .map(|&(i, j)| {
                let b = Bivector6::basis(i, j);
                b.dot(&b)
            })
            .collect();
        assert_eq!(selfs, vec![1.0, 1.0, -1.0, 1.0, -1.0, -1.0]);
        assert_eq!(selfs.iter().filter(|s| **s < 0.0).count(), 3);
    }

    #[test]
    fn pseudo_examples() {
        assert_eq!(pseudo_to_standard([1.0, 0.0, 0.0, 0.0]), Vec4::basis(0));
        assert_eq!(pseudo_to_standard([0.0, 0.0, 1.0, 0.0]), XI3);
        assert_eq!(pseudo_to_standard([0.0, 0.0, 0.0, 1.0]), XI4);
    }

    fn vec4() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-10.0..10.0f64).prop_map(Vec4)
    }

    proptest! {
        #[test]
        fn dot_symmetric_and_additive(x in vec4(), y in vec4(), z in vec4()) {
            let scale = 1.0 + x.euclid_norm_sq() + y.euclid_norm_sq() + z.euclid_norm_sq();
            prop_assert!((x.dot(&y) - y.dot(&x)).abs() <= 1e-12 * scale);
            prop_assert!(((x + z).dot(&y) - x.dot(&y) - z.dot(&y)).abs() <= 1e-12 * scale);
        }

        #[test]
        fn wedge_self_vanishes(x in vec4()) {
            prop_assert_eq!(wedge(x, x), Bivector6::ZERO);
        }

        #[test]
        fn bivector_dot_is_gram_determinant(a in vec4(), b in vec4(), c in vec4(), d in vec4()) {
            let lhs = wedge(a, b).dot(&wedge(c, d));
            let rhs = a.dot(&c) * b.dot(&d) - a.dot(&d) * b.dot(&c);
            let scale = 1.0 + (a.euclid_norm_sq() * b.euclid_norm_sq() * c.euclid_norm_sq() * d.euclid_norm_sq()).sqrt();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }

        #[test]
        fn pseudo_round_trip(x in vec4()) {
            let back = pseudo_to_standard(standard_to_pseudo(x));
            prop_assert!((back - x).max_abs() <= 1e-12 * (1.0 + x.max_abs()));
        }
    }
}
