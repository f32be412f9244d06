//! Float shims (std vs libm) and small closed-form solvers.

use num_complex::Complex64;

#[cfg(feature = "std")]
pub(crate) fn sqrt(x: f64) -> f64 {
    x.sqrt()
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[cfg(feature = "std")]
pub(crate) fn cbrt(x: f64) -> f64 {
    x.cbrt()
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn cbrt(x: f64) -> f64 {
    libm::cbrt(x)
}

#[cfg(feature = "std")]
pub(crate) fn acos(x: f64) -> f64 {
    x.acos()
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn acos(x: f64) -> f64 {
    libm::acos(x)
}

#[cfg(feature = "std")]
pub(crate) fn cos(x: f64) -> f64 {
    x.cos()
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[cfg(feature = "std")]
pub(crate) fn abs(x: f64) -> f64 {
    x.abs()
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[cfg(feature = "std")]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    x.powf(y)
}
#[cfg(all(not(feature = "std"), feature = "libm"))]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Roots of `x^2 + p*x + q = 0` as a complex pair, real parts descending.
pub(crate) fn solve_monic_quadratic(p: f64, q: f64) -> [Complex64; 2] {
    let disc = p * p - 4.0 * q;
    if disc >= 0.0 {
        let s = sqrt(disc);
        // Avoid cancellation: compute the larger-magnitude root first.
        let r0 = if p >= 0.0 { (-p - s) / 2.0 } else { (-p + s) / 2.0 };
        let r1 = if r0 != 0.0 { q / r0 } else { (-p + s) / 2.0 };
        let (hi, lo) = if r0 >= r1 { (r0, r1) } else { (r1, r0) };
        [Complex64::new(hi, 0.0), Complex64::new(lo, 0.0)]
    } else {
        let re = -p / 2.0;
        let im = sqrt(-disc) / 2.0;
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Roots of `x^3 + c2*x^2 + c1*x + c0 = 0` (Cardano, then one Newton polish
/// per root), sorted by real part descending.
pub(crate) fn solve_monic_cubic(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    // Depressed form t^3 + p t + q with x = t - c2/3.
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    let mut roots = if p == 0.0 && q == 0.0 {
        [Complex64::new(0.0, 0.0); 3]
    } else {
        let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
        if disc > 0.0 {
            // One real root, one complex pair.
            let s = sqrt(disc);
            let u = cbrt(-q / 2.0 + s);
            let v = cbrt(-q / 2.0 - s);
            let t1 = u + v;
            let re = -t1 / 2.0;
            let im = sqrt(3.0) / 2.0 * (u - v);
            [
                Complex64::new(t1, 0.0),
                Complex64::new(re, im),
                Complex64::new(re, -im),
            ]
        } else {
            // Three real roots (trigonometric form).
            let m = 2.0 * sqrt(-p / 3.0);
            let arg = (3.0 * q / (2.0 * p)) * sqrt(-3.0 / p);
            let phi = acos(arg.clamp(-1.0, 1.0)) / 3.0;
            const TWO_PI_3: f64 = 2.0943951023931953;
            [
                Complex64::new(m * cos(phi), 0.0),
                Complex64::new(m * cos(phi - TWO_PI_3), 0.0),
                Complex64::new(m * cos(phi - 2.0 * TWO_PI_3), 0.0),
            ]
        }
    };

    for t in roots.iter_mut() {
        // Newton step on the depressed cubic; skip near-critical points.
        let f = *t * *t * *t + p * *t + q;
        let df = 3.0 * *t * *t + p;
        if df.norm_sqr() > 1e-30 {
            let corr = f / df;
            if corr.norm_sqr() < 1.0 {
                *t -= corr;
            }
        }
        *t -= shift;
    }

    sort_by_re_desc(&mut roots);
    roots
}

pub(crate) fn sort_by_re_desc<const N: usize>(roots: &mut [Complex64; N]) {
    roots.sort_unstable_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(core::cmp::Ordering::Equal))
    });
}

/// Eigenvalues of a real 3x3 matrix through its characteristic cubic,
/// sorted by real part descending.
pub(crate) fn eigenvalues_3x3(m: &[[f64; 3]; 3]) -> [Complex64; 3] {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[1][1] * m[2][2] - m[1][2] * m[2][1]
        + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    solve_monic_cubic(-tr, minors, -det)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_roots_close(got: &[Complex64], want: &[Complex64], tol: f64) {
        for (g, w) in got.iter().zip(want) {
            assert!(
                (g - w).norm_sqr() <= tol * tol,
                "root mismatch: got {g:?}, want {w:?}"
            );
        }
    }

    #[test]
    fn cubic_three_real_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let r = solve_monic_cubic(-6.0, 11.0, -6.0);
        assert_roots_close(
            &r,
            &[
                Complex64::new(3.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
            1e-12,
        );
    }

    #[test]
    fn cubic_complex_pair() {
        // (x+1)(x^2 + 4) = x^3 + x^2 + 4x + 4
        let r = solve_monic_cubic(1.0, 4.0, 4.0);
        assert!((r[0].re - 0.0).abs() < 1e-12 && (r[0].im - 2.0).abs() < 1e-12);
        assert!((r[1].re - 0.0).abs() < 1e-12 && (r[1].im + 2.0).abs() < 1e-12);
        assert!((r[2].re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_triple_root() {
        // (x-2)^3 = x^3 - 6x^2 + 12x - 8
        let r = solve_monic_cubic(-6.0, 12.0, -8.0);
        for root in r {
            assert!((root - Complex64::new(2.0, 0.0)).norm_sqr() < 1e-8);
        }
    }

    #[test]
    fn eigenvalues_of_triangular_matrix_are_diagonal() {
        let m = [[-0.4, 0.0, 0.3], [0.0, -1.0, 0.0], [0.0, 0.0, 0.25]];
        let ev = eigenvalues_3x3(&m);
        assert_roots_close(
            &ev,
            &[
                Complex64::new(0.25, 0.0),
                Complex64::new(-0.4, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
            1e-12,
        );
    }

    #[test]
    fn quadratic_real_and_complex() {
        let r = solve_monic_quadratic(-3.0, 2.0); // roots 2, 1
        assert!((r[0].re - 2.0).abs() < 1e-14 && (r[1].re - 1.0).abs() < 1e-14);
        let r = solve_monic_quadratic(0.0, 1.0); // roots +-i
        assert!((r[0].im - 1.0).abs() < 1e-14 && (r[1].im + 1.0).abs() < 1e-14);
    }
}
