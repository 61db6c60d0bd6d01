//! Scalar profile components: closed-form expressions, derived jet functions
//! and quadrature-defined antiderivatives.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::expr::{Env, Expr, Jet2};
use crate::quad::Antiderivative;

pub type JetFn = Arc<dyn Fn(f64) -> Result<Jet2> + Send + Sync>;

#[derive(Clone)]
pub enum Component {
    Const(f64),
    Expr { expr: Expr, env: Arc<Env> },
    /// A function known only through its jets; `d2` may be NaN when it is
    /// used as an integrand.
    Func { label: String, f: JetFn },
    /// `offset + ∫_a^u f`, with `f` supplying value and first derivative.
    Integral { label: String, integrand: JetFn, table: Arc<Antiderivative>, offset: f64 },
}

impl Component {
    pub fn expr(expr: Expr, env: Arc<Env>) -> Self {
        Component::Expr { expr, env }
    }

    pub fn func(label: impl Into<String>, f: impl Fn(f64) -> Result<Jet2> + Send + Sync + 'static) -> Self {
        Component::Func { label: label.into(), f: Arc::new(f) }
    }

    /// Antiderivative of `integrand` fixed to `offset` at `a`, tabulated on
    /// `[a, b]`.
    pub fn integral(
        label: impl Into<String>,
        integrand: impl Fn(f64) -> Result<Jet2> + Send + Sync + 'static,
        a: f64,
        b: f64,
        offset: f64,
    ) -> Result<Self> {
        let integrand: JetFn = Arc::new(integrand);
        let g = integrand.clone();
        let table = Antiderivative::build(move |u| g(u).map(|j| j.v), a, b)?;
        Ok(Component::Integral { label: label.into(), integrand, table: Arc::new(table), offset })
    }

    pub fn jet(&self, u: f64) -> Result<Jet2> {
        match self {
            Component::Const(c) => Ok(Jet2::constant(*c)),
            Component::Expr { expr, env } => expr.eval_jet(u, env),
            Component::Func { f, .. } => f(u),
            Component::Integral { integrand, table, offset, .. } => {
                let f = integrand(u)?;
                Ok(Jet2::new(offset + table.eval(u)?, f.v, f.d1))
            }
        }
    }

    pub fn value(&self, u: f64) -> Result<f64> {
        match self {
            Component::Integral { table, offset, .. } => Ok(offset + table.eval(u)?),
            _ => self.jet(u).map(|j| j.v),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Component::Const(c) => format!("{c:?}"),
            Component::Expr { expr, .. } => expr.to_string(),
            Component::Func { label, .. } => label.clone(),
            Component::Integral { label, offset, .. } => {
                if *offset == 0.0 {
                    format!("integral of {label}")
                } else {
                    format!("{offset:?} + integral of {label}")
                }
            }
        }
    }
}

impl fmt::Debug for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Component({})", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn integral_jet_uses_integrand() {
        let c = Component::integral("cos", |u: f64| Ok(Jet2::variable(u).cos()), 0.0, 3.0, 2.0).unwrap();
        let j = c.jet(1.2).unwrap();
        assert!((j.v - (2.0 + 1.2f64.sin())).abs() < 1e-10);
        assert_eq!(j.d1, 1.2f64.cos());
        assert_eq!(j.d2, -1.2f64.sin());
        assert!(c.describe().contains("integral"));
    }

    #[test]
    fn expression_component_reads_env() {
        let mut env = Env::new();
        env.insert("c1".into(), 3.0);
        let c = Component::expr(parse("c1*u").unwrap(), Arc::new(env));
        assert_eq!(c.jet(2.0).unwrap(), Jet2::new(6.0, 3.0, 0.0));
        assert_eq!(Component::Const(1.5).jet(9.0).unwrap(), Jet2::constant(1.5));
    }
}
