use l1delay_core::fem::{assemble, solve_tridiagonal, FemVector, SpatialMesh, TridiagonalMatrix};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

/// Random symmetric, strictly diagonally dominant tridiagonal matrix.
fn random_spd(rng: &mut StdRng, n: usize) -> TridiagonalMatrix {
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let diag = (0..n)
        .map(|i| {
            let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { off[i].abs() } else { 0.0 };
            left + right + rng.gen_range(0.1..2.0)
        })
        .collect();
    TridiagonalMatrix::new(off.clone(), diag, off).unwrap()
}

/// Dense Gaussian elimination with partial pivoting.
fn dense_solve(t: &TridiagonalMatrix, rhs: &[f64]) -> Vec<f64> {
    let n = t.len();
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        a[i][i] = t.diag[i];
        if i > 0 {
            a[i][i - 1] = t.sub[i - 1];
        }
        if i + 1 < n {
            a[i][i + 1] = t.sup[i];
        }
        a[i][n] = rhs[i];
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][n] - s) / a[r][r];
    }
    x
}

#[test]
fn thomas_matches_dense_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=12 {
        for _ in 0..20 {
            let t = random_spd(&mut rng, n);
            let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let got = solve_tridiagonal(&t, &FemVector(rhs.clone())).unwrap();
            let want = dense_solve(&t, &rhs);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-12, "n = {n}: {g} vs {w}");
            }
        }
    }
}

#[test]
fn solve_then_multiply_is_identity() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in [1usize, 2, 5, 64, 511, 1024] {
        let t = random_spd(&mut rng, n);
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = solve_tridiagonal(&t, &FemVector(rhs.clone())).unwrap();
        let back = t.mul_vec(&x);
        let scale = 1.0 + rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (b, r) in back.iter().zip(&rhs) {
            assert!((b - r).abs() <= 1e-12 * scale);
        }
        let x_known: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let recovered = solve_tridiagonal(&t, &t.mul_vec(&x_known)).unwrap();
        for (g, w) in recovered.iter().zip(&x_known) {
            assert!((g - w).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn assembled_matrices_symmetric_and_coercive(
        elements in 2usize..200,
        length in 0.1f64..10.0,
        p in 1e-3f64..10.0,
        slope in 0.0f64..5.0,
        seed in any::<u64>(),
    ) {
        let mesh = SpatialMesh::uniform(length, elements).unwrap();
        let asm = assemble(&mesh, p, move |x| -slope * x * x).unwrap();
        prop_assert!(asm.mass.is_symmetric());
        prop_assert!(asm.stiffness.is_symmetric());
        prop_assert!(asm.positive_reaction.is_none());
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..100 {
            let x: Vec<f64> = (0..mesh.dofs()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if x.iter().all(|&v| v == 0.0) {
                continue;
            }
            prop_assert!(asm.stiffness.quadratic_form(&x) > 0.0);
            prop_assert!(asm.mass.quadratic_form(&x) > 0.0);
        }
        // mass matrix rows are strictly diagonally dominant
        for i in 0..mesh.dofs() {
            let off = if i > 0 { asm.mass.sub[i - 1].abs() } else { 0.0 }
                + if i + 1 < mesh.dofs() { asm.mass.sup[i].abs() } else { 0.0 };
            prop_assert!(asm.mass.diag[i] > off);
        }
    }
}
