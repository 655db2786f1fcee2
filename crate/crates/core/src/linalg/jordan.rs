//! Numerical Jordan canonical form `A = Z·J·Z⁻¹`.
//!
//! The spectrum is computed from a complex Schur form, clustered, and the
//! Schur form is reordered so that each cluster occupies a contiguous
//! diagonal block. Sylvester solves then decouple the clusters, and inside
//! each cluster the nilpotent part `T_k − λ_k I` is resolved into Jordan
//! chains from the rank sequence of its powers.

use num_complex::Complex64;

use super::cluster::{
    adaptive_groups, default_cluster_tol, fixed_groups, split_at_widest_gap, EigenvalueCluster,
};
use super::lu::LuDecomposition;
use super::schur::{SchurDecomposition, DEFAULT_MAX_QR_ITER};
use super::svd::singular_values;
use super::{vec_norm, ComplexMatrix, LinalgError};

/// Condition estimate of `Z` above which a decomposition is flagged.
pub const ILL_CONDITIONED_THRESHOLD: f64 = 1e8;

/// One Jordan block `λ I + N` of the given size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: Complex64,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct JordanOptions {
    /// Fixed single-linkage tolerance. `None` selects the multiplicity-aware
    /// default policy.
    pub cluster_tol: Option<f64>,
    pub max_qr_iter: usize,
    pub ill_conditioned_threshold: f64,
}

impl Default for JordanOptions {
    fn default() -> Self {
        JordanOptions {
            cluster_tol: None,
            max_qr_iter: DEFAULT_MAX_QR_ITER,
            ill_conditioned_threshold: ILL_CONDITIONED_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone)]
pub struct JordanDecomposition {
    pub blocks: Vec<JordanBlock>,
    /// `Z`, columns are Jordan chains in block order.
    pub transform: ComplexMatrix,
    pub transform_inverse: ComplexMatrix,
    /// `‖Z‖₁ · ‖Z⁻¹‖₁`.
    pub condition_estimate: f64,
    pub clusters: Vec<EigenvalueCluster>,
    ill_conditioned_threshold: f64,
}

impl JordanDecomposition {
    pub fn dim(&self) -> usize {
        self.transform.rows()
    }

    /// The block-diagonal Jordan matrix `J`.
    pub fn jordan_matrix(&self) -> ComplexMatrix {
        let blocks: Vec<ComplexMatrix> = self
            .blocks
            .iter()
            .map(|b| {
                ComplexMatrix::from_fn(b.size, b.size, |i, j| {
                    if i == j {
                        b.eigenvalue
                    } else if j == i + 1 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        ComplexMatrix::block_diagonal(&blocks)
    }

    /// `Z · J · Z⁻¹`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.transform * &self.jordan_matrix()) * &self.transform_inverse
    }

    pub fn is_ill_conditioned(&self) -> bool {
        self.condition_estimate > self.ill_conditioned_threshold
    }

    /// Largest block size per cluster, paired with the cluster representative.
    pub fn index_per_eigenvalue(&self) -> Vec<(Complex64, usize)> {
        self.clusters
            .iter()
            .map(|c| {
                let size = self
                    .blocks
                    .iter()
                    .filter(|b| b.eigenvalue == c.representative)
                    .map(|b| b.size)
                    .max()
                    .unwrap_or(1);
                (c.representative, size)
            })
            .collect()
    }

    /// Ranges of `Z` columns occupied by each block.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = off;
                off += b.size;
                o
            })
            .collect()
    }
}

/// Jordan decomposition with an optional fixed clustering tolerance.
pub fn jordan_decompose(
    a: &ComplexMatrix,
    cluster_tol: Option<f64>,
) -> Result<JordanDecomposition, LinalgError> {
    jordan_decompose_with(
        a,
        &JordanOptions {
            cluster_tol,
            ..JordanOptions::default()
        },
    )
}

pub fn jordan_decompose_with(
    a: &ComplexMatrix,
    opts: &JordanOptions,
) -> Result<JordanDecomposition, LinalgError> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(LinalgError::NonFinite { row: 0, col: 0 });
    }
    if let Some(tol) = opts.cluster_tol {
        if !(tol > 0.0) {
            return Err(LinalgError::InvalidTolerance(tol));
        }
    }
    let anorm = a.frobenius_norm();

    let schur = SchurDecomposition::new(a, opts.max_qr_iter)?;
    let eigs = schur.eigenvalues();
    let structure_tol = opts
        .cluster_tol
        .unwrap_or_else(|| default_cluster_tol(n, anorm.max(1.0)));
    let mut groups = match opts.cluster_tol {
        Some(tol) => fixed_groups(&eigs, tol),
        None => adaptive_groups(&eigs, anorm),
    };
    loop {
        match assemble(n, schur.clone(), &groups, structure_tol, opts) {
            Ok(d) => return Ok(d),
            // A merged group that is not nilpotent held distinct eigenvalues.
            Err((Some(g), _)) if opts.cluster_tol.is_none() && groups[g].len() > 1 => {
                let parts = split_at_widest_gap(&eigs, &groups[g]);
                groups.splice(g..=g, parts);
            }
            Err((_, e)) => return Err(e),
        }
    }
}

type AssembleError = (Option<usize>, LinalgError);

fn assemble(
    n: usize,
    mut schur: SchurDecomposition,
    groups: &[Vec<usize>],
    structure_tol: f64,
    opts: &JordanOptions,
) -> Result<JordanDecomposition, AssembleError> {
    let mut labels = vec![usize::MAX; n];
    for (g, members) in groups.iter().enumerate() {
        for &i in members {
            labels[i] = g;
        }
    }
    if labels.contains(&usize::MAX) {
        return Err((
            None,
            LinalgError::DefectiveStructureUndetermined(
                "eigenvalue clustering did not cover the spectrum".into(),
            ),
        ));
    }
    let sizes: Vec<usize> = groups.iter().map(|g| g.len()).collect();
    schur.reorder_by_label(&labels);

    // Decouple clusters: T = Y·D·Y⁻¹ with D block diagonal.
    let mut t = schur.t.clone();
    let mut y = ComplexMatrix::identity(n);
    let mut y_inv = ComplexMatrix::identity(n);
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut off = 0;
    for &m in &sizes {
        offsets.push(off);
        let rest = off + m;
        if rest < n {
            let t11 = t.submatrix(off, off, m, m);
            let t22 = t.submatrix(rest, rest, n - rest, n - rest);
            let t12 = t.submatrix(off, rest, m, n - rest);
            let x = solve_triangular_sylvester(&t11, &t22, &t12.scale_real(-1.0))
                .map_err(|e| (None, e))?;
            // Y ← Y·[[I, X], [0, I]]
            for i in 0..n {
                for j in 0..(n - rest) {
                    let mut s = Complex64::new(0.0, 0.0);
                    for k in 0..m {
                        s += y[(i, off + k)] * x[(k, j)];
                    }
                    y[(i, rest + j)] += s;
                }
            }
            // Y⁻¹ ← [[I, −X], [0, I]]·Y⁻¹
            for k in 0..m {
                for col in 0..n {
                    let mut s = Complex64::new(0.0, 0.0);
                    for j in 0..(n - rest) {
                        s += x[(k, j)] * y_inv[(rest + j, col)];
                    }
                    y_inv[(off + k, col)] -= s;
                }
            }
            for i in 0..m {
                for j in rest..n {
                    t[(off + i, j)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        off = rest;
    }

    let v = &schur.q * &y;
    let v_inv = &y_inv * &schur.q.adjoint();

    let mut blocks = Vec::new();
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut chain_blocks = Vec::with_capacity(sizes.len());
    let mut chain_inverses = Vec::with_capacity(sizes.len());
    for (g, &m) in sizes.iter().enumerate() {
        let o = offsets[g];
        let tk = t.submatrix(o, o, m, m);
        let members = tk.diagonal();
        let lambda = members.iter().sum::<Complex64>() / m as f64;
        let nil = tk.shifted(lambda);
        let (w, lengths) = jordan_chains(&nil, structure_tol).map_err(|e| (Some(g), e))?;
        let w_inv = LuDecomposition::new(&w)
            .map_err(|_| {
                (
                    Some(g),
                    LinalgError::DefectiveStructureUndetermined(
                        "Jordan chains are linearly dependent".into(),
                    ),
                )
            })?
            .inverse();
        for &len in &lengths {
            blocks.push(JordanBlock {
                eigenvalue: lambda,
                size: len,
            });
        }
        clusters.push(EigenvalueCluster {
            representative: lambda,
            algebraic_multiplicity: m,
            members,
        });
        chain_blocks.push(w);
        chain_inverses.push(w_inv);
    }

    let mut z = &v * &ComplexMatrix::block_diagonal(&chain_blocks);
    let mut z_inv = &ComplexMatrix::block_diagonal(&chain_inverses) * &v_inv;
    // Unit eigenvector per chain; scaling a whole chain keeps Z⁻¹AZ = J.
    let mut col = 0;
    for b in &blocks {
        let s = vec_norm(&z.column(col));
        for j in col..col + b.size {
            for i in 0..n {
                z[(i, j)] /= s;
                z_inv[(j, i)] *= s;
            }
        }
        col += b.size;
    }
    let condition_estimate = (z.norm_one() * z_inv.norm_one()).max(1.0);
    if !condition_estimate.is_finite() {
        return Err((
            None,
            LinalgError::DefectiveStructureUndetermined("transform is numerically singular".into()),
        ));
    }

    Ok(JordanDecomposition {
        blocks,
        transform: z,
        transform_inverse: z_inv,
        condition_estimate,
        clusters,
        ill_conditioned_threshold: opts.ill_conditioned_threshold,
    })
}

/// Solves `T11·X − X·T22 = C` for upper-triangular `T11`, `T22`.
fn solve_triangular_sylvester(
    t11: &ComplexMatrix,
    t22: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<ComplexMatrix, LinalgError> {
    let m = t11.rows();
    let r = t22.rows();
    let mut x = ComplexMatrix::zeros(m, r);
    for j in 0..r {
        let mut rhs: Vec<Complex64> = (0..m).map(|i| c[(i, j)]).collect();
        for k in 0..j {
            let coef = t22[(k, j)];
            if coef != Complex64::new(0.0, 0.0) {
                for (i, v) in rhs.iter_mut().enumerate() {
                    *v += x[(i, k)] * coef;
                }
            }
        }
        let shift = t22[(j, j)];
        for i in (0..m).rev() {
            let mut s = rhs[i];
            for k in (i + 1)..m {
                s -= t11[(i, k)] * x[(k, j)];
            }
            let d = t11[(i, i)] - shift;
            if d.norm() == 0.0 {
                return Err(LinalgError::DefectiveStructureUndetermined(
                    "clusters share an eigenvalue; Sylvester equation singular".into(),
                ));
            }
            x[(i, j)] = s / d;
        }
    }
    Ok(x)
}

/// Jordan chains of a (numerically) nilpotent `m × m` matrix.
///
/// Returns the chain matrix `W` whose columns are the chains
/// `[N^{L−1}w, …, N w, w]` in order of decreasing length, and the lengths.
fn jordan_chains(
    nil: &ComplexMatrix,
    tol: f64,
) -> Result<(ComplexMatrix, Vec<usize>), LinalgError> {
    let m = nil.rows();
    if m == 1 {
        return Ok((ComplexMatrix::identity(1), vec![1]));
    }
    let nnorm = nil.frobenius_norm().max(tol);

    // Powers, their SVDs and the rank sequence r_0 = m, r_k = rank(N^k).
    let mut powers = vec![ComplexMatrix::identity(m)];
    let mut svds = vec![None];
    let mut ranks = vec![m];
    for k in 1..=m {
        let p = &powers[k - 1] * nil;
        let sv = singular_values(&p);
        let abs_tol = k as f64 * tol * nnorm.powi(k as i32 - 1);
        let r = sv.singular_values.iter().filter(|&&s| s > abs_tol).count();
        ranks.push(r);
        powers.push(p);
        svds.push(Some((sv, abs_tol)));
        if r == 0 {
            break;
        }
    }
    let index = ranks.len() - 1;
    if ranks[index] != 0 {
        return Err(LinalgError::DefectiveStructureUndetermined(format!(
            "cluster of size {m} is not nilpotent at tolerance {tol:e} (rank sequence {ranks:?})"
        )));
    }
    // at_least[k] = number of blocks of size >= k
    let at_least: Vec<usize> = (1..=index)
        .map(|k| ranks[k - 1].checked_sub(ranks[k]))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            LinalgError::DefectiveStructureUndetermined(format!(
                "rank sequence {ranks:?} increases"
            ))
        })?;
    for k in 1..at_least.len() {
        if at_least[k] > at_least[k - 1] {
            return Err(LinalgError::DefectiveStructureUndetermined(format!(
                "inconsistent rank sequence {ranks:?}"
            )));
        }
    }

    let null_basis = |k: usize| -> Vec<Vec<Complex64>> {
        if k == 0 {
            return Vec::new();
        }
        let (sv, abs_tol) = svds[k].as_ref().expect("svd computed");
        sv.null_space(*abs_tol)
    };

    // (top vector, length)
    let mut chains: Vec<(Vec<Complex64>, usize)> = Vec::new();
    for k in (1..=index).rev() {
        let longer = if k < index { at_least[k] } else { 0 };
        let new_count = at_least[k - 1] - longer;
        if new_count == 0 {
            continue;
        }
        let mut spanned = null_basis(k - 1);
        for (w, len) in &chains {
            spanned.push(powers[len - k].mul_vec(w));
        }
        let basis = orthonormalize(&spanned);
        let candidates = null_basis(k);
        if candidates.is_empty() {
            return Err(LinalgError::DefectiveStructureUndetermined(
                "empty null space".into(),
            ));
        }
        // Project candidates onto the complement of `basis`.
        let d = candidates.len();
        let mut proj = ComplexMatrix::zeros(m, d);
        for (j, c) in candidates.iter().enumerate() {
            let mut v = c.clone();
            for b in &basis {
                let coef: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= coef * bi;
                }
            }
            proj.set_column(j, &v);
        }
        let sv = singular_values(&proj);
        if sv.singular_values.len() < new_count || sv.singular_values[new_count - 1] <= 1e-3 {
            return Err(LinalgError::DefectiveStructureUndetermined(format!(
                "cannot extend Jordan chains of length {k}"
            )));
        }
        for i in 0..new_count {
            let coeffs = sv.v.column(i);
            let mut w = vec![Complex64::new(0.0, 0.0); m];
            for (c, &a) in candidates.iter().zip(&coeffs) {
                for (wi, ci) in w.iter_mut().zip(c) {
                    *wi += a * ci;
                }
            }
            let lead = vec_norm(&powers[k - 1].mul_vec(&w));
            if lead == 0.0 {
                return Err(LinalgError::DefectiveStructureUndetermined(
                    "degenerate chain".into(),
                ));
            }
            for wi in w.iter_mut() {
                *wi /= lead;
            }
            chains.push((w, k));
        }
    }

    let lengths: Vec<usize> = chains.iter().map(|(_, l)| *l).collect();
    if lengths.iter().sum::<usize>() != m {
        return Err(LinalgError::DefectiveStructureUndetermined(format!(
            "block sizes {lengths:?} do not sum to multiplicity {m}"
        )));
    }
    let mut w = ComplexMatrix::zeros(m, m);
    let mut col = 0;
    for (top, len) in &chains {
        for j in 0..*len {
            w.set_column(col, &powers[len - 1 - j].mul_vec(top));
            col += 1;
        }
    }
    Ok((w, lengths))
}

/// Modified Gram–Schmidt with re-orthogonalization; drops dependent vectors.
fn orthonormalize(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let norm0 = vec_norm(v);
        if norm0 == 0.0 {
            continue;
        }
        let mut u = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coef: Complex64 = b.iter().zip(&u).map(|(x, y)| x.conj() * y).sum();
                for (ui, bi) in u.iter_mut().zip(b) {
                    *ui -= coef * bi;
                }
            }
        }
        let nu = vec_norm(&u);
        if nu > 1e-8 * norm0 {
            basis.push(u.into_iter().map(|x| x / nu).collect());
        }
    }
    basis
}
