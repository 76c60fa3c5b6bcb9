//! Reference eigensolve on a rectangle: the five-point Dirichlet Laplacian on
//! an `nx × ny` interior grid, inverse iteration with conjugate-gradient
//! solves. Slow and only second-order accurate; it exists to cross-check the
//! product rule of the one-dimensional solver.

/// `-Δ_h u` with zero boundary values, row-major `u[j * nx + i]`.
struct FivePoint {
    nx: usize,
    ny: usize,
    cx: f64,
    cy: f64,
}

impl FivePoint {
    fn apply(&self, u: &[f64], out: &mut [f64]) {
        let (nx, ny) = (self.nx, self.ny);
        for j in 0..ny {
            for i in 0..nx {
                let k = j * nx + i;
                let c = u[k];
                let w = if i > 0 { u[k - 1] } else { 0.0 };
                let e = if i + 1 < nx { u[k + 1] } else { 0.0 };
                let s = if j > 0 { u[k - nx] } else { 0.0 };
                let n = if j + 1 < ny { u[k + nx] } else { 0.0 };
                out[k] = self.cx * (2.0 * c - w - e) + self.cy * (2.0 * c - s - n);
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `A x = b` for SPD `A` to relative residual `tol`.
fn conjugate_gradient(a: &FivePoint, b: &[f64], x: &mut [f64], tol: f64) {
    let n = b.len();
    let mut ax = vec![0.0; n];
    a.apply(x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let stop = tol * tol * dot(b, b);
    let mut ap = vec![0.0; n];
    for _ in 0..10 * n {
        if rr <= stop {
            break;
        }
        a.apply(&p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for k in 0..n {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        for k in 0..n {
            p[k] = r[k] + beta * p[k];
        }
        rr = rr_new;
    }
}

/// Lowest Dirichlet eigenvalue of `-Δ` on `[0, a] × [0, b]`.
pub fn rectangle_lambda1(a: f64, b: f64, nx: usize, ny: usize) -> f64 {
    let hx = a / (nx + 1) as f64;
    let hy = b / (ny + 1) as f64;
    let op = FivePoint {
        nx,
        ny,
        cx: 1.0 / (hx * hx),
        cy: 1.0 / (hy * hy),
    };
    let n = nx * ny;
    let mut u = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut au = vec![0.0; n];
    let mut lambda = f64::INFINITY;
    for _ in 0..50 {
        next.iter_mut().for_each(|v| *v = 0.0);
        conjugate_gradient(&op, &u, &mut next, 1e-12);
        let norm = dot(&next, &next).sqrt();
        u.iter_mut().zip(&next).for_each(|(u, v)| *u = v / norm);
        op.apply(&u, &mut au);
        let rq = dot(&u, &au);
        if (rq - lambda).abs() < 1e-13 * rq {
            return rq;
        }
        lambda = rq;
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_discrete_closed_form() {
        // eigenvalues of the five-point stencil separate into 1-D sine modes
        let (a, b, nx, ny) = (1.0, 2.0, 12, 20);
        let hx = a / (nx + 1) as f64;
        let hy = b / (ny + 1) as f64;
        let exact = 4.0 / (hx * hx) * (PI * hx / (2.0 * a)).sin().powi(2)
            + 4.0 / (hy * hy) * (PI * hy / (2.0 * b)).sin().powi(2);
        let got = rectangle_lambda1(a, b, nx, ny);
        assert!((got - exact).abs() < 1e-10 * exact, "{got} vs {exact}");
    }
}
