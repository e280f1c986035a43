//! Dense symmetric eigensolver wrapper and a matrix-free block eigensolver
//! (LOBPCG) for the lowest part of the spectrum.
//!
//! Dense path: nalgebra's symmetric eigendecomposition, eigenvalues sorted
//! ascending with matching eigenvector columns. Used for radial sector
//! operators (M <= 2048) and small boxes.
//!
//! Iterative path: LOBPCG with an spd preconditioner applied matrix-free.
//! The near-kernel stage feeds it the exact Fourier-space inverse of
//! c(-Δ)^s + 1, which keeps the iteration count in the low hundreds at
//! 128^2 unknowns.

use nalgebra::{DMatrix, DVector};

/// Eigendecomposition of a dense symmetric matrix, ascending order.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let se = a.clone().symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let eigs: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = DMatrix::<f64>::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i));
    }
    (eigs, vecs)
}

/// Orthonormalize columns by symmetric whitening (Gram eigendecomposition,
/// dropping directions below `drop` relative to the largest). Deterministic.
fn whiten(s: &DMatrix<f64>, drop: f64) -> DMatrix<f64> {
    let g = s.transpose() * s;
    let (eigs, v) = symmetric_eigen(&g);
    let emax = eigs.last().copied().unwrap_or(0.0).max(1e-300);
    let kept: Vec<usize> = (0..eigs.len()).filter(|&i| eigs[i] > drop * emax).collect();
    let mut t = DMatrix::<f64>::zeros(eigs.len(), kept.len());
    for (col, &i) in kept.iter().enumerate() {
        let f = 1.0 / eigs[i].sqrt();
        for r in 0..eigs.len() {
            t[(r, col)] = v[(r, i)] * f;
        }
    }
    s * t
}

pub struct LobpcgResult {
    pub eigenvalues: Vec<f64>,
    /// column-major eigenvectors, one column per eigenvalue
    pub eigenvectors: DMatrix<f64>,
    pub iterations: usize,
    pub residual_norms: Vec<f64>,
    pub converged: bool,
}

/// Lowest `want` eigenpairs of a symmetric operator by preconditioned block
/// iteration. `apply_a` and `apply_t` act column-wise on the given matrix.
/// Convergence: residual 2-norms of the first `want` columns relative to the
/// current spectral scale below `tol`, or stagnation.
pub fn lobpcg(
    apply_a: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>,
    apply_t: &dyn Fn(&DMatrix<f64>) -> DMatrix<f64>,
    x0: DMatrix<f64>,
    want: usize,
    tol: f64,
    max_iter: usize,
) -> LobpcgResult {
    let mut x = whiten(&x0, 1e-12);
    let p_block: Option<DMatrix<f64>> = None;
    let mut p = p_block;
    let mut lam = vec![0.0; x.ncols()];
    let mut best_res = f64::INFINITY;
    let mut stagnant = 0usize;
    let mut res_norms = vec![f64::INFINITY; want];

    for it in 0..max_iter {
        let ax = apply_a(&x);
        let mut h = x.transpose() * &ax;
        symmetrize(&mut h);
        let (hl, hv) = symmetric_eigen(&h);
        x = &x * &hv;
        let ax = ax * &hv;
        lam.clone_from(&hl);

        // residuals R = A X - X Λ
        let mut r = ax.clone();
        for j in 0..x.ncols() {
            let xj = x.column(j);
            let mut rj = r.column_mut(j);
            rj.axpy(-hl[j], &xj, 1.0);
        }
        let scale = hl.iter().fold(0.0_f64, |a, &b| a.max(b.abs())).max(1e-300);
        for (j, rn) in res_norms.iter_mut().enumerate().take(want) {
            *rn = r.column(j).norm() / scale;
        }
        let worst = res_norms.iter().cloned().fold(0.0_f64, f64::max);
        if worst < tol {
            return LobpcgResult {
                eigenvalues: lam,
                eigenvectors: x,
                iterations: it,
                residual_norms: res_norms,
                converged: true,
            };
        }
        if worst < best_res * 0.999 {
            best_res = best_res.min(worst);
            stagnant = 0;
        } else {
            stagnant += 1;
            if stagnant > 60 {
                // plateau: accept what we have
                return LobpcgResult {
                    eigenvalues: lam,
                    eigenvectors: x,
                    iterations: it,
                    residual_norms: res_norms,
                    converged: worst < tol * 100.0,
                };
            }
        }

        let w = apply_t(&r);
        let ncols = x.ncols() + w.ncols() + p.as_ref().map_or(0, |m| m.ncols());
        let mut basis = DMatrix::<f64>::zeros(x.nrows(), ncols);
        basis.columns_mut(0, x.ncols()).copy_from(&x);
        basis.columns_mut(x.ncols(), w.ncols()).copy_from(&w);
        if let Some(pm) = &p {
            basis.columns_mut(x.ncols() + w.ncols(), pm.ncols()).copy_from(pm);
        }
        let sb = whiten(&basis, 1e-10);
        let asb = apply_a(&sb);
        let mut hs = sb.transpose() * &asb;
        symmetrize(&mut hs);
        let (_, ys) = symmetric_eigen(&hs);
        let pcols = x.ncols().min(ys.ncols());
        let ylow = ys.columns(0, pcols);
        let xn = &sb * ylow;
        // next P: component of the update outside span(X)
        let proj = &x * (x.transpose() * &xn);
        let pn = &xn - proj;
        let pw = whiten(&pn, 1e-8);
        p = if pw.ncols() > 0 { Some(pw) } else { None };
        x = whiten(&xn, 1e-12);
        if x.ncols() < want {
            // basis collapse; re-expand with the preconditioned residual
            let refill = apply_t(&r);
            let mut wide = DMatrix::<f64>::zeros(x.nrows(), x.ncols() + refill.ncols());
            wide.columns_mut(0, x.ncols()).copy_from(&x);
            wide.columns_mut(x.ncols(), refill.ncols()).copy_from(&refill);
            x = whiten(&wide, 1e-12);
        }
    }
    LobpcgResult {
        eigenvalues: lam,
        eigenvectors: x,
        iterations: max_iter,
        residual_norms: res_norms,
        converged: false,
    }
}

fn symmetrize(h: &mut DMatrix<f64>) {
    for i in 0..h.nrows() {
        for j in 0..i {
            let v = 0.5 * (h[(i, j)] + h[(j, i)]);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
}

/// Convenience: lowest `want` eigenpairs of a dense symmetric matrix.
pub fn lowest_dense(a: &DMatrix<f64>, want: usize) -> (Vec<f64>, DMatrix<f64>) {
    let (eigs, vecs) = symmetric_eigen(a);
    let k = want.min(eigs.len());
    (eigs[..k].to_vec(), vecs.columns(0, k).into_owned())
}
