//! Laplacian of the height function of a surface viewed locally as a graph
//! `z = z(x, y)`. A Dirichlet-CAMC graph satisfies `z_xx + z_yy = Lambda / 2`.

use nalgebra::{Matrix2, Vector2};

use crate::error::{CamcError, Result};
use crate::surface::ParametricSurface;

pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;

/// Solves `(X1, X2)(s, theta) = (x, y)` from `start`, staying within
/// `halfwidth` (parameter units, max-norm) of `anchor`.
fn invert_xy(
    surface: &ParametricSurface,
    target: Vector2<f64>,
    start: Vector2<f64>,
    anchor: Vector2<f64>,
    halfwidth: f64,
) -> Result<Vector2<f64>> {
    let tol = NEWTON_TOL * target.amax().max(1.0);
    let mut p = start;
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_MAX_ITER {
        let jet = surface.jet(p.x, p.y)?;
        let f = Vector2::new(jet.pos.x, jet.pos.y) - target;
        residual = f.amax();
        if residual <= tol {
            return Ok(p);
        }
        let jac = Matrix2::new(jet.xs.x, jet.xt.x, jet.xs.y, jet.xt.y);
        let scale = (jet.xs.norm() * jet.xt.norm()).max(f64::MIN_POSITIVE);
        if jac.determinant().abs() < 1e-12 * scale {
            return Err(CamcError::NotAGraph { s: p.x, theta: p.y });
        }
        let step = jac.lu().solve(&f).ok_or(CamcError::NotAGraph { s: p.x, theta: p.y })?;
        p -= step;
        if !((p - anchor).amax() <= halfwidth) || !p.iter().all(|v| v.is_finite()) {
            return Err(CamcError::NewtonDivergence { iterations: NEWTON_MAX_ITER, residual });
        }
    }
    Err(CamcError::NewtonDivergence { iterations: NEWTON_MAX_ITER, residual })
}

/// `z_xx + z_yy - lambda0 / 2` at the point `X(seed)` by the five-point stencil
/// of spacing `fd_step` in `(x, y)`. Each stencil point is located on the
/// surface by Newton iteration, warm-started from its neighbour toward the
/// centre and confined to a `patch_halfwidth` box around the seed.
pub fn local_graph_laplace_residual(
    surface: &ParametricSurface,
    seed: (f64, f64),
    patch_halfwidth: f64,
    fd_step: f64,
    lambda0: f64,
) -> Result<f64> {
    if !(fd_step > 0.0 && patch_halfwidth > 0.0) {
        return Err(CamcError::InvalidParams("fd_step and patch_halfwidth must be positive".into()));
    }
    let anchor = Vector2::new(seed.0, seed.1);
    let jet = surface.jet(seed.0, seed.1)?;
    let centre = Vector2::new(jet.pos.x, jet.pos.y);
    let z0 = jet.pos.z;
    let mut sum = 0.0;
    for dir in [Vector2::new(1.0, 0.0), Vector2::new(-1.0, 0.0), Vector2::new(0.0, 1.0), Vector2::new(0.0, -1.0)] {
        // half-way point first, then the stencil point itself
        let mid = invert_xy(surface, centre + 0.5 * fd_step * dir, anchor, anchor, patch_halfwidth)?;
        let p = invert_xy(surface, centre + fd_step * dir, mid, anchor, patch_halfwidth)?;
        sum += surface.point(p.x, p.y)?.z;
    }
    Ok((sum - 4.0 * z0) / (fd_step * fd_step) - lambda0 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_surface, rotational_solution, CyclicFamilyParams, FamilyKind};

    #[test]
    fn type1_is_harmonic() {
        let p = CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0).unwrap();
        let res = local_graph_laplace_residual(&cyclic_surface(&p), (0.3, 0.7), 0.2, 1e-3, 0.0).unwrap();
        assert!(res.abs() < 1e-3, "{res}");
    }

    #[test]
    fn paraboloid_matches_lambda() {
        let surf = rotational_solution(0.0, 0.0, 8.0).surface();
        let res = local_graph_laplace_residual(&surf, (0.8, 1.1), 0.2, 1e-3, 8.0).unwrap();
        assert!(res.abs() < 1e-6, "{res}");
        // the same surface checked against Lambda = 0 leaves u_xx + u_yy = 4
        let res = local_graph_laplace_residual(&surf, (0.8, 1.1), 0.2, 1e-3, 0.0).unwrap();
        assert!((res - 4.0).abs() < 1e-6);
    }

    #[test]
    fn plane_is_harmonic() {
        let plane = ParametricSurface::graph("z=x", |x, _| x, 1e-4);
        let res = local_graph_laplace_residual(&plane, (0.5, 0.5), 0.2, 1e-3, 0.0).unwrap();
        assert!(res.abs() < 1e-6, "{res}");
    }

    #[test]
    fn second_order_in_step() {
        let p = CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0).unwrap();
        let surf = cyclic_surface(&p);
        let e1 = local_graph_laplace_residual(&surf, (0.3, 0.7), 0.3, 2e-2, 0.0).unwrap().abs();
        let e2 = local_graph_laplace_residual(&surf, (0.3, 0.7), 0.3, 1e-2, 0.0).unwrap().abs();
        let ratio = e1 / e2;
        assert!((3.0..5.0).contains(&ratio), "{e1} {e2} {ratio}");
    }

    #[test]
    fn vertical_point_is_not_a_graph() {
        // Type II is vertical along theta = 0
        let p = CyclicFamilyParams::new(FamilyKind::TypeII, 1.0, 0.0, 1.0).unwrap();
        let err = local_graph_laplace_residual(&cyclic_surface(&p), (0.5, 0.0), 0.2, 1e-3, 0.0).unwrap_err();
        assert!(matches!(err, CamcError::NotAGraph { .. } | CamcError::NewtonDivergence { .. }), "{err:?}");
    }
}
