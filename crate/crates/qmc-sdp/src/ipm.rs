use crate::error::SdpError;
use crate::problem::{Assembled, SuppCell};
use nalgebra::{Cholesky, DMatrix, DVector};
use rayon::prelude::*;

/// Termination state of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Duality gap and primal residual below tolerance.
    Optimal,
    /// Iteration cap reached; the best iterate is returned.
    MaxIterations,
    /// Step lengths collapsed; the best iterate is returned.
    Stalled,
}

pub(crate) struct IpmResult {
    /// The realized moment matrix `I + sum_v y_v A_v` at the final iterate.
    pub s_matrix: DMatrix<f64>,
    pub linear_objective: f64,
    pub gap: f64,
    pub primal_residual: f64,
    pub iterations: usize,
    pub status: SolveStatus,
}

/// Full-orientation constraint cell.
struct FullCell {
    row: u32,
    col: u32,
    coeff: f64,
}

/// Cells of one constraint grouped by parity block: `cells[ranges[b]..ranges[b+1]]`
/// all live in block `b`.
struct BlockedSupport {
    cells: Vec<FullCell>,
    ranges: [usize; 5],
}

/// Dense primal-dual path-following interior-point method with a Mehrotra
/// predictor-corrector step, solving
/// `maximize c . y  s.t.  S(y) = I + sum_v y_v A_v  PSD`.
///
/// The dual slack is kept exactly equal to `S(y)`, so dual feasibility is
/// maintained by the positive-definiteness line search; primal feasibility
/// (`Tr(A_v X) = -c_v`) is reached along the way from the identity start.
pub(crate) fn solve_ipm(asm: &Assembled, tol: f64, max_iter: usize) -> Result<IpmResult, SdpError> {
    let m = asm.m;
    let d = asm.num_vars;
    if d == 0 {
        // No free moments: the moment matrix is the identity.
        return Ok(IpmResult {
            s_matrix: DMatrix::identity(m, m),
            linear_objective: 0.0,
            gap: 0.0,
            primal_residual: 0.0,
            iterations: 0,
            status: SolveStatus::Optimal,
        });
    }

    // Full-orientation supports for the quadratic Schur accumulation,
    // grouped by parity block so matched-block segments pair directly.
    let full_supports: Vec<BlockedSupport> = asm
        .supports
        .iter()
        .map(|supp| {
            let mut cells = Vec::with_capacity(2 * supp.len());
            for c in supp {
                let block = asm.block_of[c.row as usize];
                cells.push((block, c.row, c.col, c.coeff));
                if c.row != c.col {
                    cells.push((block, c.col, c.row, c.coeff));
                }
            }
            cells.sort_by_key(|&(block, row, col, _)| (block, row, col));
            let mut ranges = [0usize; 5];
            for b in 0..4u8 {
                ranges[b as usize + 1] =
                    ranges[b as usize] + cells.iter().filter(|c| c.0 == b).count();
            }
            BlockedSupport {
                cells: cells
                    .into_iter()
                    .map(|(_, row, col, coeff)| FullCell { row, col, coeff })
                    .collect(),
                ranges,
            }
        })
        .collect();

    let c_scale = asm.c.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);

    let mut y = vec![0.0; d];
    let mut x = DMatrix::<f64>::identity(m, m);
    let mut s = DMatrix::<f64>::identity(m, m);

    let mut best: Option<IpmResult> = None;
    let mut status = SolveStatus::MaxIterations;
    let mut iterations = 0;

    for iter in 0..max_iter {
        iterations = iter + 1;
        let chol_s = Cholesky::new(s.clone()).ok_or_else(|| {
            SdpError::NoConvergence("slack matrix lost positive definiteness".into())
        })?;
        let s_inv = chol_s.inverse();

        let tr_av_sinv: Vec<f64> = asm
            .supports
            .iter()
            .map(|supp| sparse_inner(supp, &s_inv))
            .collect();
        let tr_av_x: Vec<f64> = asm.supports.iter().map(|supp| sparse_inner(supp, &x)).collect();

        let mu = x.dot(&s) / m as f64;
        let primal_residual = asm
            .c
            .iter()
            .zip(&tr_av_x)
            .map(|(&cv, &tx)| (cv + tx).abs())
            .fold(0.0f64, f64::max)
            / c_scale;
        let linear_objective: f64 = asm.c.iter().zip(&y).map(|(&cv, &yv)| cv * yv).sum();
        let gap = x.dot(&s) / (1.0 + (asm.shift + linear_objective).abs());

        let current = IpmResult {
            s_matrix: s.clone(),
            linear_objective,
            gap,
            primal_residual,
            iterations,
            status: SolveStatus::Optimal,
        };
        let better = match &best {
            None => true,
            Some(b) => gap + primal_residual < b.gap + b.primal_residual,
        };
        if better {
            best = Some(current);
        }
        if gap < tol && primal_residual < tol.max(1e-9) * 10.0 {
            status = SolveStatus::Optimal;
            break;
        }

        // Schur complement B[v, u] = Tr(A_v X A_u S^-1), symmetrized.
        let schur = build_schur(&full_supports, &x, &s_inv, d);
        let chol_b = match cholesky_with_jitter(schur, c_scale) {
            Some(c) => c,
            None => {
                status = SolveStatus::Stalled;
                break;
            }
        };

        // Predictor (affine scaling direction).
        let rhs_aff = DVector::from_column_slice(&asm.c);
        let dy_aff = chol_b.solve(&rhs_aff);
        let ds_aff = scatter(&asm.supports, dy_aff.as_slice(), m);
        // dX_aff = -X - X dS S^-1, symmetrized.
        let x_ds_sinv = &x * &ds_aff * &s_inv;
        let mut dx_aff = -&x - &x_ds_sinv;
        symmetrize(&mut dx_aff);

        let alpha_p_aff = pd_step(&x, &dx_aff);
        let alpha_d_aff = pd_step(&s, &ds_aff);
        let mu_aff = {
            let xa = &x + &dx_aff * alpha_p_aff;
            let sa = &s + &ds_aff * alpha_d_aff;
            (xa.dot(&sa) / m as f64).max(0.0)
        };
        let sigma = ((mu_aff / mu).powi(3)).clamp(1e-8, 1.0);

        // Corrector with the second-order term dX_aff dS_aff S^-1.
        let w = &dx_aff * &ds_aff * &s_inv;
        let corr: Vec<f64> = asm
            .supports
            .iter()
            .map(|supp| sparse_inner_asym(supp, &w))
            .collect();
        let rhs: DVector<f64> = DVector::from_iterator(
            d,
            (0..d).map(|v| asm.c[v] + sigma * mu * tr_av_sinv[v] - corr[v]),
        );
        let dy = chol_b.solve(&rhs);
        let ds = scatter(&asm.supports, dy.as_slice(), m);
        let mut dx = s_inv.clone() * (sigma * mu);
        dx -= &x;
        dx -= &x * &ds * &s_inv;
        dx -= &w;
        symmetrize(&mut dx);

        let alpha_p = 0.98 * pd_step(&x, &dx);
        let alpha_d = 0.98 * pd_step(&s, &ds);
        if alpha_p < 1e-10 && alpha_d < 1e-10 {
            status = SolveStatus::Stalled;
            break;
        }
        x += &dx * alpha_p;
        for (yv, dv) in y.iter_mut().zip(dy.iter()) {
            *yv += alpha_d * dv;
        }
        // Rebuild the slack from y exactly to prevent drift.
        s = scatter(&asm.supports, &y, m);
        for i in 0..m {
            s[(i, i)] += 1.0;
        }
    }

    let mut result = best.ok_or_else(|| SdpError::NoConvergence("no iterate produced".into()))?;
    result.status = if result.gap < tol && result.primal_residual < tol.max(1e-9) * 10.0 {
        SolveStatus::Optimal
    } else {
        status
    };
    result.iterations = iterations;
    Ok(result)
}

/// `Tr(A X)` for a symmetric sparse `A` given by its upper triangle.
fn sparse_inner(supp: &[SuppCell], m: &DMatrix<f64>) -> f64 {
    supp.iter()
        .map(|c| {
            let v = c.coeff * m[(c.row as usize, c.col as usize)];
            if c.row == c.col {
                v
            } else {
                2.0 * v
            }
        })
        .sum()
}

/// `Tr(A W)` for a possibly asymmetric `W`: uses both orientations.
fn sparse_inner_asym(supp: &[SuppCell], w: &DMatrix<f64>) -> f64 {
    supp.iter()
        .map(|c| {
            let (r, cl) = (c.row as usize, c.col as usize);
            if r == cl {
                c.coeff * w[(r, cl)]
            } else {
                c.coeff * (w[(r, cl)] + w[(cl, r)])
            }
        })
        .sum()
}

/// Dense symmetric matrix `sum_v y_v A_v`.
fn scatter(supports: &[Vec<SuppCell>], y: &[f64], m: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m, m);
    for (supp, &yv) in supports.iter().zip(y) {
        if yv == 0.0 {
            continue;
        }
        for c in supp {
            let (r, cl) = (c.row as usize, c.col as usize);
            out[(r, cl)] += yv * c.coeff;
            if r != cl {
                out[(cl, r)] += yv * c.coeff;
            }
        }
    }
    out
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Largest step in [0, 1] keeping `M + alpha dM` positive definite,
/// found by Cholesky backtracking.
fn pd_step(m: &DMatrix<f64>, dm: &DMatrix<f64>) -> f64 {
    let mut alpha = 1.0;
    for _ in 0..60 {
        let trial = m + dm * alpha;
        if Cholesky::new(trial).is_some() {
            return alpha;
        }
        alpha *= 0.7;
    }
    0.0
}

fn cholesky_with_jitter(mut b: DMatrix<f64>, _scale: f64) -> Option<Cholesky<f64, nalgebra::Dyn>> {
    let d = b.nrows();
    // The Schur complement blows up like 1/mu^2 near the optimum, so the
    // regularization must be relative to its own diagonal.
    let diag_scale = (0..d).map(|i| b[(i, i)]).fold(1e-300, f64::max);
    let mut jitter = 0.0;
    for attempt in 0..5 {
        if attempt > 0 {
            jitter = if jitter == 0.0 {
                1e-14 * diag_scale
            } else {
                jitter * 100.0
            };
            for i in 0..d {
                b[(i, i)] += jitter;
            }
        }
        if let Some(c) = Cholesky::new(b.clone()) {
            return Some(c);
        }
    }
    None
}

/// Schur complement `B[v, u] = Tr(A_v X A_u S^-1)`, accumulated over cell
/// pairs. The trace form is symmetric for symmetric `X`, `S^-1` and `A`, so
/// only the upper rows are built. Cells are paired within matching parity
/// blocks: under the isotropic model cross-block matrix entries vanish.
fn build_schur(
    supports: &[BlockedSupport],
    x: &DMatrix<f64>,
    s_inv: &DMatrix<f64>,
    d: usize,
) -> DMatrix<f64> {
    let m = x.nrows();
    let xs = flat(x, m);
    let ss = flat(s_inv, m);
    let rows: Vec<Vec<f64>> = (0..d)
        .into_par_iter()
        .map(|v| {
            let sv = &supports[v];
            let mut row = vec![0.0; d - v];
            for (offset, su) in supports[v..].iter().enumerate() {
                let mut acc = 0.0;
                for b in 0..4usize {
                    let seg_v = &sv.cells[sv.ranges[b]..sv.ranges[b + 1]];
                    let seg_u = &su.cells[su.ranges[b]..su.ranges[b + 1]];
                    if seg_v.is_empty() || seg_u.is_empty() {
                        continue;
                    }
                    for a in seg_v {
                        // a encodes (p, q) with p = a.row, q = a.col.
                        let q_off = a.col as usize * m;
                        let p = a.row as usize;
                        let mut inner = 0.0;
                        for c in seg_u {
                            // c encodes (r, s): X[q, r] * Sinv[s, p].
                            unsafe {
                                inner += c.coeff
                                    * xs.get_unchecked(q_off + c.row as usize)
                                    * ss.get_unchecked(c.col as usize * m + p);
                            }
                        }
                        acc += a.coeff * inner;
                    }
                }
                row[offset] = acc;
            }
            row
        })
        .collect();

    let mut b = DMatrix::zeros(d, d);
    for (v, row) in rows.iter().enumerate() {
        for (offset, &val) in row.iter().enumerate() {
            let u = v + offset;
            b[(v, u)] = val;
            b[(u, v)] = val;
        }
    }
    b
}

/// Row-major copy of a column-major nalgebra matrix for unchecked indexing.
fn flat(mat: &DMatrix<f64>, m: usize) -> Vec<f64> {
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            out[i * m + j] = mat[(i, j)];
        }
    }
    out
}
