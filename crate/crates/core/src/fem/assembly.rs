use super::quadrature::{GAUSS3, GAUSS5};
use super::{FemVector, SpatialMesh, TridiagonalMatrix};
use crate::{Error, Result};

/// Mass matrix and the stiffness matrix of `B(u, v) = p(u', v') - (a u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assembly {
    pub mass: TridiagonalMatrix,
    pub stiffness: TridiagonalMatrix,
    /// Largest positive value of `a` seen at the quadrature points, if any.
    /// `B` is only guaranteed coercive for `a <= 0`.
    pub positive_reaction: Option<f64>,
}

/// Assemble mass and `B`-stiffness matrices. The reaction term is integrated
/// with the 3-point Gauss rule on each element.
pub fn assemble(mesh: &SpatialMesh, p: f64, a: impl Fn(f64) -> f64) -> Result<Assembly> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidProblem("diffusivity p must be positive"));
    }
    let n = mesh.dofs();
    let mut mass = TridiagonalMatrix::zeros(n);
    let mut stiffness = TridiagonalMatrix::zeros(n);
    let mut positive_reaction: Option<f64> = None;

    for (e, pair) in mesh.nodes().windows(2).enumerate() {
        let (x0, x1) = (pair[0], pair[1]);
        let h = x1 - x0;

        // ∫ a φ_i φ_j on the element; i, j ∈ {left, right}
        let (mut r_ll, mut r_lr, mut r_rr) = (0.0, 0.0, 0.0);
        for (&s, &w) in GAUSS3.points.iter().zip(GAUSS3.weights) {
            let av = a(x0 + s * h);
            if av > 0.0 {
                positive_reaction = Some(positive_reaction.map_or(av, |m| m.max(av)));
            }
            let wl = w * h * av;
            r_ll += wl * (1.0 - s) * (1.0 - s);
            r_lr += wl * (1.0 - s) * s;
            r_rr += wl * s * s;
        }

        let m_diag = h / 3.0;
        let m_off = h / 6.0;
        let k = p / h;

        // left node is dof e-1, right node is dof e
        if e >= 1 {
            let i = e - 1;
            mass.diag[i] += m_diag;
            stiffness.diag[i] += k - r_ll;
        }
        if e < n {
            mass.diag[e] += m_diag;
            stiffness.diag[e] += k - r_rr;
        }
        if e >= 1 && e < n {
            let i = e - 1;
            mass.sub[i] += m_off;
            mass.sup[i] += m_off;
            stiffness.sub[i] += -k - r_lr;
            stiffness.sup[i] += -k - r_lr;
        }
    }

    Ok(Assembly {
        mass,
        stiffness,
        positive_reaction,
    })
}

/// `∫ g φ_j` for every interior hat function, 3-point Gauss per element.
pub fn load_vector(mesh: &SpatialMesh, g: impl Fn(f64) -> f64) -> FemVector {
    let mut out = FemVector::zeros(mesh.dofs());
    load_vector_into(mesh, g, &mut out);
    out
}

/// As [`load_vector`], writing into `out` (length `M - 1`).
pub fn load_vector_into(mesh: &SpatialMesh, g: impl Fn(f64) -> f64, out: &mut [f64]) {
    let n = mesh.dofs();
    assert_eq!(out.len(), n);
    out.fill(0.0);
    for (e, pair) in mesh.nodes().windows(2).enumerate() {
        let (x0, x1) = (pair[0], pair[1]);
        let h = x1 - x0;
        let (mut left, mut right) = (0.0, 0.0);
        for (&s, &w) in GAUSS3.points.iter().zip(GAUSS3.weights) {
            let gv = w * h * g(x0 + s * h);
            left += gv * (1.0 - s);
            right += gv * s;
        }
        if e >= 1 {
            out[e - 1] += left;
        }
        if e < n {
            out[e] += right;
        }
    }
}

/// `‖U_h - exact‖_{L²}` with `U_h` the piecewise-linear function carrying the
/// interior coefficients `u` (zero at both ends). The exact function is
/// sampled inside a 5-point Gauss rule on each element.
pub fn l2_error(u: &[f64], exact: impl Fn(f64) -> f64, mesh: &SpatialMesh) -> f64 {
    let n = mesh.dofs();
    assert_eq!(u.len(), n);
    let nodal = |j: usize| if j == 0 || j > n { 0.0 } else { u[j - 1] };
    let mut sum = 0.0;
    for (e, pair) in mesh.nodes().windows(2).enumerate() {
        let (x0, x1) = (pair[0], pair[1]);
        let h = x1 - x0;
        let (ul, ur) = (nodal(e), nodal(e + 1));
        for (&s, &w) in GAUSS5.points.iter().zip(GAUSS5.weights) {
            let d = ul * (1.0 - s) + ur * s - exact(x0 + s * h);
            sum += w * h * d * d;
        }
    }
    libm::sqrt(sum)
}
