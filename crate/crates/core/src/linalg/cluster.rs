//! Grouping of computed eigenvalues into numerically distinct clusters.

use num_complex::Complex64;

/// A group of computed eigenvalues treated as one exact eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueCluster {
    /// Mean of the members.
    pub representative: Complex64,
    pub algebraic_multiplicity: usize,
    pub members: Vec<Complex64>,
}

impl EigenvalueCluster {
    fn from_members(members: Vec<Complex64>) -> Self {
        let sum: Complex64 = members.iter().sum();
        EigenvalueCluster {
            representative: sum / members.len() as f64,
            algebraic_multiplicity: members.len(),
            members,
        }
    }

    /// Largest distance from a member to the representative.
    pub fn radius(&self) -> f64 {
        self.members
            .iter()
            .map(|m| (m - self.representative).norm())
            .fold(0.0, f64::max)
    }
}

/// Default single-linkage tolerance `max(n, 10) · √ε · ‖A‖_F`.
pub fn default_cluster_tol(n: usize, frobenius_norm: f64) -> f64 {
    n.max(10) as f64 * f64::EPSILON.sqrt() * frobenius_norm
}

/// Connected components of the graph joining eigenvalues at distance
/// `<= tol`, returned as index groups in order of first appearance.
fn single_linkage(eigs: &[Complex64], idx: &[usize], tol: f64) -> Vec<Vec<usize>> {
    let n = idx.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if (eigs[idx[a]] - eigs[idx[b]]).norm() <= tol {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra != rb {
                    parent[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(idx[a]),
            None => groups.push((r, vec![idx[a]])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

pub(crate) fn fixed_groups(eigs: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..eigs.len()).collect();
    single_linkage(eigs, &idx, tol)
}

/// Single-linkage clustering with a fixed distance tolerance.
pub fn cluster_eigenvalues(eigs: &[Complex64], cluster_tol: f64) -> Vec<EigenvalueCluster> {
    fixed_groups(eigs, cluster_tol)
        .into_iter()
        .map(|g| EigenvalueCluster::from_members(g.into_iter().map(|i| eigs[i]).collect()))
        .collect()
}

/// Index groups for the multiplicity-aware policy; see [`cluster_eigenvalues_adaptive`].
pub(crate) fn adaptive_groups(eigs: &[Complex64], frobenius_norm: f64) -> Vec<Vec<usize>> {
    let n = eigs.len();
    let c = n.max(10) as f64;
    let fro = frobenius_norm.max(1.0);
    let radius_limit = |m: usize| fro * (c * c * f64::EPSILON).powf(1.0 / m as f64);

    fn split(
        eigs: &[Complex64],
        set: Vec<usize>,
        limit: &dyn Fn(usize) -> f64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let m = set.len();
        if m == 1 {
            out.push(set);
            return;
        }
        let mean: Complex64 = set.iter().map(|&i| eigs[i]).sum::<Complex64>() / m as f64;
        let radius = set
            .iter()
            .map(|&i| (eigs[i] - mean).norm())
            .fold(0.0, f64::max);
        if radius <= limit(m) {
            out.push(set);
            return;
        }
        for k in (1..m).rev() {
            let comps = single_linkage(eigs, &set, 2.0 * limit(k));
            if comps.len() > 1 {
                for c in comps {
                    split(eigs, c, limit, out);
                }
                return;
            }
        }
        for i in set {
            out.push(vec![i]);
        }
    }

    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for comp in single_linkage(eigs, &all, 2.0 * radius_limit(n)) {
        split(eigs, comp, &radius_limit, &mut out);
    }
    out.sort_by_key(|g| g[0]);
    out
}

/// Splits a group at its longest single-linkage edge.
pub(crate) fn split_at_widest_gap(eigs: &[Complex64], group: &[usize]) -> Vec<Vec<usize>> {
    let mut dists: Vec<f64> = Vec::new();
    for (a, &i) in group.iter().enumerate() {
        for &j in &group[a + 1..] {
            dists.push((eigs[i] - eigs[j]).norm());
        }
    }
    dists.sort_by(|a, b| a.total_cmp(b));
    dists.dedup();
    let mut below = 0.0;
    for &d in &dists {
        if single_linkage(eigs, group, d).len() == 1 {
            return single_linkage(eigs, group, below);
        }
        below = d;
    }
    group.iter().map(|&i| vec![i]).collect()
}

/// Multiplicity-aware clustering.
///
/// A defective eigenvalue of multiplicity `m` is split by rounding into `m`
/// values spread over a radius of order `ε^(1/m)`. A group of `m` computed
/// values is therefore accepted as one cluster when its radius around the
/// mean is at most `(c²·ε)^(1/m) · max(1, ‖A‖_F)` with `c = max(n, 10)`; for
/// `m = 2` this is [`default_cluster_tol`]. Groups that fail are split by single linkage at
/// the next smaller multiplicity's radius and examined recursively.
pub fn cluster_eigenvalues_adaptive(
    eigs: &[Complex64],
    frobenius_norm: f64,
) -> Vec<EigenvalueCluster> {
    adaptive_groups(eigs, frobenius_norm)
        .into_iter()
        .map(|g| EigenvalueCluster::from_members(g.into_iter().map(|i| eigs[i]).collect()))
        .collect()
}
