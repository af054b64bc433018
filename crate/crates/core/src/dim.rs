//! Numeric determination of `dim GramS(f)` and comparison against the
//! predicted `binom(d - e, 2)`.
//!
//! The feasible set is explored with eigenvalue-certified line searches
//! along kernel directions; a relative-interior (max-rank) witness is
//! accumulated by averaging segment midpoints, and the dimension is read
//! off as the nullity of the range-containment conditions at the witness.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deflate::{real_root_excess, DeflationReport, RealRoot};
use crate::error::{Error, Result};
use crate::gram::{binom, build_gram_space, GramAffineSpace};
use crate::poly::Polynomial;
use crate::sos::{two_squares, two_squares_selected};
use crate::symmat::SymMatrix;

/// Numeric knobs for the dimension pipeline. A single relative rank
/// threshold is used everywhere; it can be overridden from the CLI.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative singular-value / eigenvalue threshold for rank decisions.
    pub rank_rel: f64,
    /// Relative slack allowed below zero for PSD checks.
    pub psd_rel: f64,
    /// Maximum number of sweeps in the max-rank search.
    pub max_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-8,
            psd_rel: 1e-9,
            max_sweeps: 50,
        }
    }
}

impl Tolerances {
    pub fn with_rank_tol(rank_rel: f64) -> Self {
        Tolerances {
            rank_rel,
            ..Tolerances::default()
        }
    }

    fn psd_slack(&self, m: &SymMatrix) -> f64 {
        self.psd_rel * m.trace().abs().max(1.0)
    }

    fn is_psd(&self, m: &SymMatrix) -> bool {
        m.lambda_min() >= -self.psd_slack(m)
    }
}

/// Convergence status of the max-rank search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Determined,
    Undetermined,
}

/// Result of `verify_dimension`.
#[derive(Debug, Clone)]
pub struct DimensionReport {
    pub d: usize,
    pub e: usize,
    /// `binom(d - e, 2)`.
    pub predicted: u64,
    /// Dimension measured at the max-rank witness.
    pub computed: u64,
    pub max_rank_witness: SymMatrix,
    pub witness_rank: usize,
    pub status: Status,
    pub agreement: bool,
    pub deflation: DeflationReport,
    pub sos_residual: f64,
}

/// Maximal interval `[t_min, t_max]` with `Q + t D` positive semidefinite,
/// found by doubling a bracket and bisecting on the smallest eigenvalue.
/// Unbounded sides are signaled with infinities.
pub fn psd_line_search(q: &SymMatrix, dir: &SymMatrix, tol: &Tolerances) -> Result<(f64, f64)> {
    let lam = q.lambda_min();
    if lam < -tol.psd_slack(q) {
        return Err(Error::NotPsd(lam));
    }
    let dir_norm = dir.norm();
    if dir_norm == 0.0 {
        return Ok((f64::NEG_INFINITY, f64::INFINITY));
    }
    let cap = 1e12 * (1.0 + q.norm()) / dir_norm;
    let base = 1e-6 * (1.0 + q.norm()) / dir_norm;

    let feasible = |t: f64| {
        let m = q.add_scaled(t, dir);
        tol.is_psd(&m)
    };

    let search = |sign: f64| -> f64 {
        let mut lo = 0.0f64;
        let mut hi = base;
        while feasible(sign * hi) {
            lo = hi;
            hi *= 2.0;
            if hi > cap {
                return sign * f64::INFINITY;
            }
        }
        while hi - lo > 1e-10 * (1.0 + lo.abs()) {
            let mid = 0.5 * (lo + hi);
            if feasible(sign * mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        sign * lo
    };

    Ok((search(-1.0), search(1.0)))
}

/// Outcome of the max-rank search.
#[derive(Debug, Clone)]
pub struct MaxRankOutcome {
    pub point: SymMatrix,
    pub rank: usize,
    pub converged: bool,
    /// Witness rank after each sweep.
    pub rank_history: Vec<usize>,
}

const MAX_RANK_SEED: u64 = 0x6772616d; // "gram"

/// Pulls a slightly infeasible point back to `PSD ∩ Gram(f)` by
/// alternating the nearest-PSD clip with the affine re-projection. Both
/// sets are convex, so the iteration contracts; a few rounds reduce the
/// eigenvalue-slack drift of the line searches to rounding level, which
/// keeps the witness kernel aligned with the true face.
fn repair(space: &GramAffineSpace, q: &SymMatrix) -> SymMatrix {
    let mut cur = space.project(q);
    for _ in 0..25 {
        if cur.lambda_min() >= -1e-14 * cur.norm().max(1.0) {
            break;
        }
        cur = space.project(&cur.clip_negative());
    }
    cur
}

fn check_feasible(space: &GramAffineSpace, q: &SymMatrix, tol: &Tolerances) -> Result<()> {
    if !tol.is_psd(q) {
        return Err(Error::InfeasibleStart(format!(
            "lambda_min = {:.3e}",
            q.lambda_min()
        )));
    }
    let res = space.residual(q);
    if res > 1e-8 {
        return Err(Error::InfeasibleStart(format!(
            "Gram residual = {res:.3e}"
        )));
    }
    Ok(())
}

/// Finds a relative-interior point of `GramS(f)` by sweeping line searches
/// along kernel directions (plus random combinations of them) and
/// averaging the midpoints of all nondegenerate feasible segments.
/// Stops when the witness rank is stable over two consecutive sweeps.
pub fn max_rank_point(
    space: &GramAffineSpace,
    start: &SymMatrix,
    tol: &Tolerances,
) -> Result<MaxRankOutcome> {
    check_feasible(space, start, tol)?;
    let k = space.kernel.len();
    if k == 0 {
        return Ok(MaxRankOutcome {
            rank: start.rank(tol.rank_rel),
            point: start.clone(),
            converged: true,
            rank_history: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MAX_RANK_SEED);
    let mut current = start.clone();
    let mut history: Vec<usize> = Vec::new();
    let mut converged = false;

    for _sweep in 0..tol.max_sweeps {
        // Coordinate directions find axis-aligned segments; random
        // combinations catch feasible lines that avoid every axis; the
        // nullspace of the range-containment system at the current point
        // gives directions that stay inside the current face.
        let mut directions: Vec<SymMatrix> = space.kernel.clone();
        for _ in 0..k {
            let mut dir = SymMatrix::zeros(space.n);
            for b in &space.kernel {
                dir = dir.add_scaled(rng.gen_range(-1.0..1.0), b);
            }
            directions.push(dir);
        }
        for coords in face_nullspace(space, &current, tol) {
            let mut dir = SymMatrix::zeros(space.n);
            for (c, b) in coords.iter().zip(&space.kernel) {
                dir = dir.add_scaled(*c, b);
            }
            directions.push(dir);
        }

        let mut midpoints = Vec::new();
        for dir in &directions {
            let (t_min, t_max) = psd_line_search(&current, dir, tol)?;
            if t_min.is_finite() && t_max.is_finite() {
                let width = t_max - t_min;
                if width > 1e-9 * (1.0 + t_min.abs() + t_max.abs()) {
                    // The eigenvalue slack of the line search fattens a
                    // degenerate cross-section into a sliver, so raw
                    // midpoints can sit slightly off the true set. Repair
                    // collapses that drift; a midpoint that still fails a
                    // near-roundoff PSD test afterwards is discarded.
                    let mid = repair(
                        space,
                        &current.add_scaled(0.5 * (t_min + t_max), dir),
                    );
                    if mid.lambda_min() >= -1e-12 * mid.norm().max(1.0) {
                        midpoints.push(mid);
                    }
                }
            }
        }
        if !midpoints.is_empty() {
            let mut sum = current.clone();
            for m in &midpoints {
                sum = sum.add(m);
            }
            current = repair(space, &sum.scale(1.0 / (midpoints.len() + 1) as f64));
        }

        let rank = current.rank(tol.rank_rel);
        history.push(rank);
        let n = history.len();
        if rank == space.n || (n >= 2 && history[n - 2] == rank) {
            converged = true;
            break;
        }
    }

    Ok(MaxRankOutcome {
        rank: current.rank(tol.rank_rel),
        point: current,
        converged,
        rank_history: history,
    })
}

/// Orthonormal basis of the forced kernel of every feasible point: for a
/// real root `r` of half-multiplicity `h`, the vectors
/// `(d/dr)^j (1, r, ..., r^d)` for `j < h`.
fn structural_kernel(n: usize, roots: &[RealRoot]) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for rr in roots {
        for j in 0..rr.half_multiplicity {
            let mut v = DVector::zeros(n);
            for i in j..n {
                let mut c = 1.0;
                for t in 0..j {
                    c *= (i - t) as f64;
                }
                v[i] = c * rr.value.powi((i - j) as i32);
            }
            cols.push(v);
        }
    }
    if cols.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    let mut m = DMatrix::zeros(n, cols.len());
    for (k, c) in cols.iter().enumerate() {
        m.set_column(k, c);
    }
    let qr = m.qr();
    qr.q()
}

/// Drives the witness onto the maximal face by alternating three
/// projections: squeeze out the structural kernel directions, clip
/// negative eigenvalues, and restore the Gram coefficients. The
/// range-containment constraint at a real root is quadratically
/// degenerate in the kernel rotation, so feasibility tolerances alone
/// leave the witness kernel off by the square root of the slack; the
/// squeeze enforces it directly.
fn snap_to_face(space: &GramAffineSpace, w: &SymMatrix, vmat: &DMatrix<f64>) -> SymMatrix {
    if vmat.ncols() == 0 {
        return repair(space, w);
    }
    let n = space.n;
    let p = DMatrix::identity(n, n) - vmat * vmat.transpose();
    let mut cur = space.project(w);
    for _ in 0..200 {
        let squeezed = &p * cur.clip_negative().as_dmatrix() * &p;
        cur = space.project(&SymMatrix::from_dense(&squeezed));
        let scale = cur.norm().max(1.0);
        let viol = (cur.as_dmatrix() * vmat).norm();
        if viol <= 1e-14 * scale && cur.lambda_min() >= -1e-13 * scale {
            break;
        }
    }
    cur
}

/// Basis of `{t : P (sum t_k B_k) = 0}` where `P` projects onto the
/// orthogonal complement of the witness range: the kernel coordinates of
/// the affine hull of the face of the witness.
fn face_nullspace(space: &GramAffineSpace, witness: &SymMatrix, tol: &Tolerances) -> Vec<Vec<f64>> {
    let k = space.kernel.len();
    if k == 0 {
        return Vec::new();
    }
    let n = space.n;
    let u = witness.range_basis(tol.rank_rel);
    let p = DMatrix::identity(n, n) - &u * u.transpose();

    let mut stacked = DMatrix::zeros(n * n, k);
    for (col, b) in space.kernel.iter().enumerate() {
        let pb = &p * b.as_dmatrix();
        for (row, v) in pb.as_slice().iter().enumerate() {
            stacked[(row, col)] = *v;
        }
    }
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("svd with v requested");
    // Scale against the kernel basis, not against the stacked matrix
    // itself: when the witness has full rank, P is zero up to roundoff
    // and every singular value is noise.
    let b_scale = space.kernel.iter().fold(0.0f64, |a, b| a.max(b.norm()));
    let mut out = Vec::new();
    for i in 0..k {
        let s = svd.singular_values.get(i).copied().unwrap_or(0.0);
        if s <= tol.rank_rel * b_scale {
            out.push(v_t.row(i).iter().copied().collect());
        }
    }
    out
}

/// Dimension of `GramS(f)` at a max-rank witness: the nullity of the
/// linear system `P B_k = 0` over the kernel coordinates, where `P`
/// projects onto the orthogonal complement of the witness range.
pub fn face_dimension(
    space: &GramAffineSpace,
    witness: &SymMatrix,
    tol: &Tolerances,
) -> Result<usize> {
    check_feasible(space, witness, tol)?;
    Ok(face_nullspace(space, witness, tol).len())
}

/// Full pipeline: excess, Gram space, SOS feasible point, max-rank
/// witness, measured dimension, and the predicted `binom(d - e, 2)`.
pub fn verify_dimension(f: &Polynomial, tol: &Tolerances) -> Result<DimensionReport> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 != 0 {
        return Err(Error::OddDegree(deg));
    }
    let d = deg / 2;
    let (e, deflation) = real_root_excess(f)?;
    let space = build_gram_space(f)?;
    let cert = two_squares(f)?;
    // Average certificates with different conjugate-pair representative
    // selections: each is a rank-<=2 feasible point, and their ranges
    // jointly span the maximal face, so the starting point is already
    // close to relative-interior.
    let mut start = cert.gram_point.clone();
    let mut count = 1usize;
    for mask in 1..32u64 {
        if let Ok(c) = two_squares_selected(f, mask) {
            start = start.add(&c.gram_point);
            count += 1;
        }
    }
    let start = space.project(&start.scale(1.0 / count as f64));
    let outcome = max_rank_point(&space, &start, tol)?;
    let vmat = structural_kernel(space.n, &deflation.real_roots);
    let witness = snap_to_face(&space, &outcome.point, &vmat);
    let witness_rank = witness.rank(tol.rank_rel);
    let computed = face_dimension(&space, &witness, tol)? as u64;
    let predicted = binom((d - e) as u64, 2);
    let status = if outcome.converged {
        Status::Determined
    } else {
        Status::Undetermined
    };
    Ok(DimensionReport {
        d,
        e,
        predicted,
        computed,
        witness_rank,
        max_rank_witness: witness,
        status,
        agreement: status == Status::Determined && predicted == computed,
        deflation,
        sos_residual: cert.residual,
    })
}

/// Independent sampling oracle for the dimension, for small kernels
/// (`d <= 4`).
///
/// When `f` has real roots, every feasible Gram matrix kills the forced
/// kernel vectors at those roots, so the feasible set is measure-zero in
/// the kernel coordinates and naive box rejection never hits it. The
/// oracle therefore first solves the linear system `Q(t) V = 0` for the
/// structural kernel `V` (from the exact deflation layer), samples a box
/// in the nullspace coordinates of that system, retracts infeasible
/// draws along the segment toward a feasible anchor (Cholesky test with
/// a small diagonal shift, bisection on the segment parameter), and
/// returns the affine rank of the retracted cloud. Inside the forced
/// subspace the feasible set is full-dimensional, so spreads are genuine
/// and a generous absolute floor suppresses the retraction slivers.
pub fn brute_force_dimension(
    f: &Polynomial,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<usize> {
    let space = build_gram_space(f)?;
    let k = space.kernel.len();
    if k == 0 {
        return Ok(0);
    }
    let n = space.n;
    let (_, deflation) = real_root_excess(f)?;
    let vmat = structural_kernel(n, &deflation.real_roots);
    let vcols = vmat.ncols();

    // Solve Q(t) V = 0 over t: particular solution + nullspace basis.
    let (t_p, null) = if vcols == 0 {
        (vec![0.0; k], DMatrix::identity(k, k))
    } else {
        // Padding to at least k rows keeps the thin SVD's V factor
        // square, so nullspace rows past the row count are not lost.
        let rows = (n * vcols).max(k);
        let mut a = DMatrix::zeros(rows, k);
        for (col, b) in space.kernel.iter().enumerate() {
            let bv = b.as_dmatrix() * &vmat;
            for (row, v) in bv.as_slice().iter().enumerate() {
                a[(row, col)] = *v;
            }
        }
        let q0v = space.q0.as_dmatrix() * &vmat;
        let mut rhs = DVector::zeros(rows);
        for (row, v) in q0v.as_slice().iter().enumerate() {
            rhs[row] = -v;
        }
        let svd = a.clone().svd(true, true);
        let t_p = svd
            .solve(&rhs, 1e-12)
            .map_err(|e| Error::Numerical(format!("face system solve failed: {e}")))?;
        let resid = (&a * &t_p - &rhs).norm();
        let scale = rhs.norm().max(1.0);
        if resid > 1e-8 * scale {
            return Err(Error::Numerical(format!(
                "no Gram matrix kills the structural kernel: residual {resid:.3e}"
            )));
        }
        let b_scale = space.kernel.iter().fold(1.0f64, |acc, b| acc.max(b.norm()));
        let svd = a.svd(false, true);
        let v_t = svd.v_t.expect("svd with v requested");
        let mut cols = Vec::new();
        for i in 0..k {
            let s = svd.singular_values.get(i).copied().unwrap_or(0.0);
            if s <= tol.rank_rel * b_scale {
                cols.push(v_t.row(i).transpose());
            }
        }
        let mut null = DMatrix::zeros(k, cols.len());
        for (j, c) in cols.iter().enumerate() {
            null.set_column(j, c);
        }
        (t_p.iter().copied().collect(), null)
    };
    let m_free = null.ncols();
    if m_free == 0 {
        return Ok(0);
    }

    let embed = |z: &[f64]| -> Vec<f64> {
        (0..k)
            .map(|i| t_p[i] + (0..m_free).map(|j| null[(i, j)] * z[j]).sum::<f64>())
            .collect()
    };
    let feasible = |z: &[f64], rel: f64| -> bool {
        let q = space.point(&embed(z));
        let shift = rel * q.norm().max(1.0);
        let shifted = q.as_dmatrix() + DMatrix::identity(n, n) * shift;
        shifted.cholesky().is_some()
    };

    // Anchor: the SOS certificate point in nullspace coordinates.
    let cert = two_squares(f)?;
    let mut basis = DMatrix::zeros(n * n, k);
    for (col, b) in space.kernel.iter().enumerate() {
        basis.set_column(col, &b.vec_entries());
    }
    let rhs = cert.gram_point.vec_entries() - space.q0.vec_entries();
    let t0 = basis
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Numerical(format!("anchor projection failed: {e}")))?;
    let mut z0: Vec<f64> = (0..m_free)
        .map(|j| (0..k).map(|i| null[(i, j)] * (t0[i] - t_p[i])).sum::<f64>())
        .collect();

    let max_coeff = space.coeffs.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
    let box_half = 10.0 * (1.0 + max_coeff);

    // Push the anchor into the relative interior. The certificate point
    // has low rank, so from it almost every direction leaves the set
    // immediately and sampling collapses. lambda_min of the Gram point,
    // with the forced kernel filled in, is concave over the subspace, so
    // random-direction ternary searches climb toward a centered point.
    {
        let fill = &vmat * vmat.transpose();
        let lam = |z: &[f64]| -> f64 {
            let q = space.point(&embed(z));
            let filled = q.as_dmatrix() + &fill * q.norm().max(1.0);
            filled
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .fold(f64::INFINITY, |a, &b| a.min(b))
        };
        // Supergradient ascent: if v is a unit eigenvector for lambda_min
        // then d lambda_min / dz_j = v' B_j v along the subspace basis.
        // Diminishing steps with best-point tracking handle the kinks
        // where the minimal eigenvalue is multiple.
        let sub_basis: Vec<DMatrix<f64>> = (0..m_free)
            .map(|j| {
                let mut b = DMatrix::zeros(n, n);
                for (i, ker) in space.kernel.iter().enumerate() {
                    b += ker.as_dmatrix() * null[(i, j)];
                }
                b
            })
            .collect();
        let mut best = lam(&z0);
        let mut cur = z0.clone();
        for iter in 0..800usize {
            let q = space.point(&embed(&cur));
            let filled = q.as_dmatrix() + &fill * q.norm().max(1.0);
            let eig = filled.symmetric_eigen();
            let mut idx = 0;
            for (i, l) in eig.eigenvalues.iter().enumerate() {
                if *l < eig.eigenvalues[idx] {
                    idx = i;
                }
            }
            let v = eig.eigenvectors.column(idx);
            let g: Vec<f64> = sub_basis.iter().map(|b| (v.transpose() * b * v)[0]).collect();
            let g_norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if g_norm <= 1e-15 {
                break;
            }
            let step = 0.02 * box_half / ((iter + 1) as f64).sqrt();
            for (c, &d) in cur.iter_mut().zip(&g) {
                *c += step * d / g_norm;
            }
            let val = lam(&cur);
            if val > best {
                best = val;
                z0.copy_from_slice(&cur);
            }
        }
        // Polish: concave line searches from the best point recover the
        // last digits once the ascent has found the right basin.
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x63656e74);
        for _ in 0..20 * m_free {
            let g: Vec<f64> = (0..m_free).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
            let g_norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if g_norm == 0.0 {
                continue;
            }
            let probe = |t: f64| -> f64 {
                let z: Vec<f64> = z0
                    .iter()
                    .zip(&g)
                    .map(|(&a, &d)| a + t * d / g_norm)
                    .collect();
                lam(&z)
            };
            let (mut lo, mut hi) = (-box_half, box_half);
            for _ in 0..48 {
                let a = lo + (hi - lo) / 3.0;
                let b = hi - (hi - lo) / 3.0;
                if probe(a) < probe(b) {
                    lo = a;
                } else {
                    hi = b;
                }
            }
            let t = 0.5 * (lo + hi);
            let val = probe(t);
            if val > best {
                best = val;
                for (zi, &d) in z0.iter_mut().zip(&g) {
                    *zi += t * d / g_norm;
                }
            }
        }
    }

    let anchor = space.point(&embed(&z0));
    let anchor_lam = anchor.lambda_min();
    let anchor_scale = anchor.norm().max(1.0);
    // Strict feasibility margin: small enough that accepted points stay
    // within a negligible band around the true set, but wide enough to
    // absorb eigenvalue roundoff on exactly singular feasible matrices.
    let strict_rel = (1e-13f64).max(10.0 * (-anchor_lam).max(0.0) / anchor_scale);
    if strict_rel > 1e-7 || !feasible(&z0, strict_rel) {
        return Err(Error::Numerical(format!(
            "SOS anchor infeasible: lambda_min = {anchor_lam:.3e}"
        )));
    }

    // Retraction: largest feasible point on the segment from `c` to `z`.
    let retract = |c: &[f64], z: &[f64]| -> Vec<f64> {
        if feasible(z, strict_rel) {
            return z.to_vec();
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let p: Vec<f64> = c
                .iter()
                .zip(z)
                .map(|(&a, &b)| a + mid * (b - a))
                .collect();
            if feasible(&p, strict_rel) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        c.iter()
            .zip(z)
            .map(|(&a, &b)| a + lo * (b - a))
            .collect()
    };
    let cloud_of = |rng: &mut ChaCha8Rng,
                    count: usize,
                    center: &[f64],
                    dirs: &DMatrix<f64>,
                    widths: &[f64]| {
        let mut points = Vec::with_capacity(count + 1);
        points.push(center.to_vec());
        for _ in 0..count {
            let g: Vec<f64> = widths.iter().map(|w| rng.gen_range(-1.0..1.0) * w).collect();
            let z: Vec<f64> = (0..m_free)
                .map(|i| {
                    center[i] + (0..m_free).map(|j| dirs[(i, j)] * g[j]).sum::<f64>()
                })
                .collect();
            points.push(retract(center, &z));
        }
        points
    };
    let centered_svd = |points: &[Vec<f64>]| {
        let m = points.len();
        let mean: Vec<f64> = (0..m_free)
            .map(|j| points.iter().map(|p| p[j]).sum::<f64>() / m as f64)
            .collect();
        let centered = DMatrix::from_fn(m, m_free, |i, j| points[i][j] - mean[j]);
        (mean, centered.svd(false, true))
    };

    // Inside the forced subspace every principal direction has genuine
    // extent, so the sampling box can be whitened from the cloud
    // covariance: a few rounds adapt the box to anisotropic
    // cross-sections that single-scale boxes collapse.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut center = z0.clone();
    let mut dirs = DMatrix::<f64>::identity(m_free, m_free);
    let mut widths = vec![box_half; m_free];
    let adapt_samples = (samples / 10).clamp(50, 500);
    for _ in 0..8 {
        let points = cloud_of(&mut rng, adapt_samples, &center, &dirs, &widths);
        let (mean, svd) = centered_svd(&points);
        center = retract(&center, &mean);
        let v_t = svd.v_t.as_ref().expect("svd with v requested");
        let m_sqrt = (points.len() as f64).sqrt();
        for i in 0..m_free {
            let s = svd.singular_values.get(i).copied().unwrap_or(0.0);
            widths[i] = (5.0 * s / m_sqrt).clamp(1e-10 * box_half, box_half);
        }
        dirs = v_t.transpose();
    }

    // Affine rank of the final cloud. The absolute floor sits far above
    // the retraction sliver width at the subspace boundary (shift scale)
    // and far below genuine cross-sections.
    let points = cloud_of(&mut rng, samples.max(adapt_samples), &center, &dirs, &widths);
    let (_, svd) = centered_svd(&points);
    let sv = &svd.singular_values;
    let s_max = sv.iter().fold(0.0f64, |a, &b| a.max(b));
    let floor = 1e-8 * (1.0 + box_half) * (points.len() as f64).sqrt();
    Ok(sv
        .iter()
        .filter(|&&s| s > (tol.rank_rel * s_max).max(floor))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::gram_apply;

    fn space_of(ints: &[i64]) -> GramAffineSpace {
        build_gram_space(&Polynomial::from_ints(ints)).unwrap()
    }

    #[test]
    fn line_search_diagonal() {
        let tol = Tolerances::default();
        let q = SymMatrix::identity(2);
        let mut dir = SymMatrix::zeros(2);
        dir.set(0, 0, 1.0);
        dir.set(1, 1, -1.0);
        let (lo, hi) = psd_line_search(&q, &dir, &tol).unwrap();
        assert!((lo + 1.0).abs() < 1e-8 && (hi - 1.0).abs() < 1e-8);
    }

    #[test]
    fn line_search_unbounded_side() {
        let tol = Tolerances::default();
        let mut q = SymMatrix::zeros(2);
        q.set(0, 0, 1.0);
        let mut dir = SymMatrix::zeros(2);
        dir.set(1, 1, 1.0);
        let (lo, hi) = psd_line_search(&q, &dir, &tol).unwrap();
        assert!(lo.abs() < 1e-8);
        assert_eq!(hi, f64::INFINITY);
    }

    #[test]
    fn line_search_worked_spectrahedron() {
        // f = x^4 + 2x^2 + 1: q0 = diag(1, 2, 1), kernel direction
        // E02 + E20 - 2 E11, feasible interval [-1, 1].
        let tol = Tolerances::default();
        let space = space_of(&[1, 0, 2, 0, 1]);
        let (lo, hi) = psd_line_search(&space.q0, &space.kernel[0], &tol).unwrap();
        assert!((lo + 1.0).abs() < 1e-8, "lo = {lo}");
        assert!((hi - 1.0).abs() < 1e-8, "hi = {hi}");
    }

    #[test]
    fn line_search_rejects_indefinite_base() {
        let tol = Tolerances::default();
        let mut q = SymMatrix::zeros(2);
        q.set(0, 0, -1.0);
        let dir = SymMatrix::identity(2);
        assert!(matches!(
            psd_line_search(&q, &dir, &tol),
            Err(Error::NotPsd(_))
        ));
    }

    #[test]
    fn max_rank_on_point_spectrahedron() {
        // f = x^4: the only PSD Gram matrix is E22.
        let tol = Tolerances::default();
        let f = Polynomial::monomial(4);
        let space = build_gram_space(&f).unwrap();
        let cert = two_squares(&f).unwrap();
        let out = max_rank_point(&space, &cert.gram_point, &tol).unwrap();
        assert_eq!(out.rank, 1);
        assert!((out.point.get(2, 2) - 1.0).abs() < 1e-9);
        assert!(out.point.norm() - 1.0 < 1e-9);
    }

    #[test]
    fn max_rank_reaches_interior() {
        let tol = Tolerances::default();
        let f = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
        let space = build_gram_space(&f).unwrap();
        let cert = two_squares(&f).unwrap();
        assert_eq!(cert.gram_point.rank(tol.rank_rel), 2);
        let out = max_rank_point(&space, &cert.gram_point, &tol).unwrap();
        assert_eq!(out.rank, 3);
        assert!(out.converged);
        // Monotone rank across sweeps.
        for w in out.rank_history.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn max_rank_trivial_kernel() {
        let tol = Tolerances::default();
        let f = Polynomial::from_ints(&[1, 0, 1]);
        let space = build_gram_space(&f).unwrap();
        let cert = two_squares(&f).unwrap();
        let out = max_rank_point(&space, &cert.gram_point, &tol).unwrap();
        assert_eq!(gram_apply(&out.point), gram_apply(&cert.gram_point));
    }

    #[test]
    fn face_dimension_examples() {
        let tol = Tolerances::default();
        for (ints, expect) in [
            (&[1i64, 0, 2, 0, 1][..], 1usize),
            (&[0, 0, 0, 0, 1][..], 0),
            (&[1, 0, 1][..], 0),
        ] {
            let f = Polynomial::from_ints(ints);
            let space = build_gram_space(&f).unwrap();
            let cert = two_squares(&f).unwrap();
            let out = max_rank_point(&space, &cert.gram_point, &tol).unwrap();
            let dim = face_dimension(&space, &out.point, &tol).unwrap();
            assert_eq!(dim, expect, "f = {ints:?}");
        }
    }

    #[test]
    fn verify_dimension_examples() {
        let tol = Tolerances::default();
        for (ints, d, e, predicted) in [
            (&[1i64, 0, 2, 0, 1][..], 2usize, 0usize, 1u64),
            (&[0, 0, 0, 0, 1][..], 2, 2, 0),
            (&[0, 0, 1, 0, 1][..], 2, 1, 0),
        ] {
            let report = verify_dimension(&Polynomial::from_ints(ints), &tol).unwrap();
            assert_eq!(report.d, d);
            assert_eq!(report.e, e);
            assert_eq!(report.predicted, predicted);
            assert_eq!(report.computed, predicted, "f = {ints:?}");
            assert!(report.agreement);
        }
    }

    #[test]
    fn brute_force_examples() {
        let tol = Tolerances::default();
        assert_eq!(
            brute_force_dimension(&Polynomial::from_ints(&[1, 0, 2, 0, 1]), 10_000, 7, &tol)
                .unwrap(),
            1
        );
        assert_eq!(
            brute_force_dimension(&Polynomial::monomial(4), 10_000, 7, &tol).unwrap(),
            0
        );
        assert_eq!(
            brute_force_dimension(&Polynomial::from_ints(&[1, 0, 1]), 10_000, 7, &tol).unwrap(),
            0
        );
    }
}
