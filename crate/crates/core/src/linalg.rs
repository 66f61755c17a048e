//! Small dense complex matrices.

use crate::poly;
use crate::C64;

pub type Mat2 = [[C64; 2]; 2];
pub type Mat3 = [[C64; 3]; 3];
pub type Vec3 = [C64; 3];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity3() -> Mat3 {
    [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]
}

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn sub3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = *a;
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] -= b[i][j];
        }
    }
    c
}

pub fn sub2(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

pub fn apply3(a: &Mat3, v: &Vec3) -> Vec3 {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

pub fn frobenius3(a: &Mat3) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn frobenius2(a: &Mat2) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn det3(a: &Mat3) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn det2(a: &Mat2) -> C64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn trace2(a: &Mat2) -> C64 {
    a[0][0] + a[1][1]
}

pub fn conj_transpose3(a: &Mat3) -> Mat3 {
    let mut c = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

/// Eigenvalues of a 2×2 matrix.
pub fn eigenvalues2(a: &Mat2) -> [C64; 2] {
    let (l1, l2) = poly::quadratic_roots(ONE, -trace2(a), det2(a));
    [l1, l2]
}

/// Eigenvalues of a 3×3 matrix from its characteristic polynomial.
pub fn eigenvalues3(a: &Mat3) -> [C64; 3] {
    let tr = a[0][0] + a[1][1] + a[2][2];
    let c2 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let d = det3(a);
    let r = poly::roots(&[-d, c2, -tr, ONE]);
    [r[0], r[1], r[2]]
}

/// Largest singular value.
pub fn operator_norm3(a: &Mat3) -> f64 {
    let h = mul3(&conj_transpose3(a), a);
    eigenvalues3(&h).iter().map(|z| z.re).fold(0.0, f64::max).max(0.0).sqrt()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve3(a: &Mat3, b: &Vec3) -> Option<Vec3> {
    let mut m = *a;
    let mut r = *b;
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))?;
        if !(m[piv][col].norm() >= 1e-300) {
            return None;
        }
        m.swap(col, piv);
        r.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                let t = m[col][k];
                m[row][k] -= f * t;
            }
            let t = r[col];
            r[row] -= f * t;
        }
    }
    let mut x = [ZERO; 3];
    for i in (0..3).rev() {
        let mut s = r[i];
        for k in i + 1..3 {
            s -= m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    if x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Orthonormal basis (Hermitian inner product) of `{v : n₀v₀ + n₁v₁ + n₂v₂ = 0}`.
pub fn kernel_basis(n: &Vec3) -> Option<[Vec3; 2]> {
    let nn = (n[0].norm_sqr() + n[1].norm_sqr() + n[2].norm_sqr()).sqrt();
    if nn == 0.0 {
        return None;
    }
    // unit normal for the Hermitian product is conj(n)/|n|
    let u = [n[0].conj() / nn, n[1].conj() / nn, n[2].conj() / nn];
    let mut basis: Vec<Vec3> = Vec::with_capacity(2);
    // start from the coordinate axes least aligned with the normal
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| u[i].norm().total_cmp(&u[j].norm()));
    for &k in &order {
        let mut v = [ZERO; 3];
        v[k] = ONE;
        for b in basis.iter().chain(std::iter::once(&u)) {
            let ip = b[0].conj() * v[0] + b[1].conj() * v[1] + b[2].conj() * v[2];
            for i in 0..3 {
                v[i] -= ip * b[i];
            }
        }
        let len = (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt();
        if len > 1e-8 {
            basis.push([v[0] / len, v[1] / len, v[2] / len]);
        }
        if basis.len() == 2 {
            return Some([basis[0], basis[1]]);
        }
    }
    None
}

/// Compresses a 3×3 matrix to the plane spanned by an orthonormal pair.
pub fn compress(a: &Mat3, basis: &[Vec3; 2]) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for j in 0..2 {
        let img = apply3(a, &basis[j]);
        for i in 0..2 {
            out[i][j] = basis[i][0].conj() * img[0] + basis[i][1].conj() * img[1] + basis[i][2].conj() * img[2];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn solve_recovers_solution() {
        let a = [[c(2.0), c(1.0), c(0.0)], [c(1.0), c(3.0), C64::new(0.0, 1.0)], [c(0.0), c(1.0), c(4.0)]];
        let x = [c(1.0), C64::new(-2.0, 0.5), c(3.0)];
        let b = apply3(&a, &x);
        let y = solve3(&a, &b).unwrap();
        for i in 0..3 {
            assert!((x[i] - y[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn eigenvalues_of_triangular_matrix() {
        let a = [[c(1.0), c(5.0), c(2.0)], [c(0.0), c(-2.0), c(7.0)], [c(0.0), c(0.0), c(0.5)]];
        let mut ev: Vec<f64> = eigenvalues3(&a).iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        assert!((ev[0] + 2.0).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12 && (ev[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_basis_is_orthonormal_and_annihilated() {
        let n = [c(1.0), C64::new(2.0, -1.0), c(0.3)];
        let [b1, b2] = kernel_basis(&n).unwrap();
        for b in [b1, b2] {
            let dot = n[0] * b[0] + n[1] * b[1] + n[2] * b[2];
            assert!(dot.norm() < 1e-14);
        }
        let ip = b1[0].conj() * b2[0] + b1[1].conj() * b2[1] + b1[2].conj() * b2[2];
        assert!(ip.norm() < 1e-14);
    }

    #[test]
    fn operator_norm_of_shear() {
        let a = [[c(1.0), c(0.0), c(0.0)], [c(2.0), c(1.0), c(0.0)], [c(0.0), c(0.0), c(1.0)]];
        assert!((operator_norm3(&a) - (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }
}
