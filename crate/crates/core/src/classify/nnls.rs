//! Lawson-Hanson nonnegative least squares on the normal equations.
//!
//! The problems here are tall and thin (thousands of ontic states, a handful
//! of eigenstate preparations), so everything works on the k×k Gram matrix.

use nalgebra::{DMatrix, DVector};

/// Minimizes `|A w - b|²` subject to `w >= 0`, given `G = AᵀA` and `c = Aᵀb`.
pub fn nnls_gram(g: &DMatrix<f64>, c: &DVector<f64>) -> DVector<f64> {
    let k = c.len();
    let scale = g.diagonal().iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let tol = 1e-14 * scale;
    let mut w = DVector::<f64>::zeros(k);
    let mut passive = vec![false; k];

    for _ in 0..(3 * k + 10) {
        let grad = c - g * &w;
        let next = (0..k)
            .filter(|&j| !passive[j] && grad[j] > tol)
            .max_by(|&a, &b| grad[a].total_cmp(&grad[b]));
        let Some(j) = next else { break };
        passive[j] = true;

        loop {
            let z = solve_passive(g, c, &passive);
            let bad: Vec<usize> = (0..k).filter(|&i| passive[i] && z[i] <= 0.0).collect();
            if bad.is_empty() {
                w = z;
                break;
            }
            // Step from w towards z until the first passive weight hits zero.
            let alpha = bad
                .iter()
                .map(|&i| {
                    let d = w[i] - z[i];
                    if d > 0.0 {
                        w[i] / d
                    } else {
                        0.0
                    }
                })
                .fold(f64::INFINITY, f64::min);
            w += (z - &w) * alpha;
            for i in 0..k {
                if passive[i] && w[i] <= tol {
                    passive[i] = false;
                    w[i] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    w
}

/// Unconstrained minimizer restricted to the passive set; other entries zero.
fn solve_passive(g: &DMatrix<f64>, c: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
    let n = idx.len();
    let sub = DMatrix::from_fn(n, n, |r, s| g[(idx[r], idx[s])]);
    let rhs = DVector::from_fn(n, |r, _| c[idx[r]]);
    // Columns can be linearly dependent (an eigenstate preparation that is
    // itself a mixture of others), so use the pseudo-inverse.
    let z = sub
        .svd(true, true)
        .solve(&rhs, 1e-13)
        .unwrap_or_else(|_| DVector::zeros(n));
    let mut out = DVector::zeros(passive.len());
    for (r, &i) in idx.iter().enumerate() {
        out[i] = z[r];
    }
    out
}

/// Nonnegative weights over `columns` whose combination best matches
/// `target`. A row of ones is appended so the weights are pushed towards unit sum.
pub fn mixture_weights(columns: &[&[f64]], target: &[f64]) -> Vec<f64> {
    let k = columns.len();
    let mut g = DMatrix::<f64>::from_element(k, k, 1.0);
    let mut c = DVector::<f64>::from_element(k, 1.0);
    for a in 0..k {
        for b in a..k {
            let v: f64 = columns[a].iter().zip(columns[b]).map(|(x, y)| x * y).sum();
            g[(a, b)] += v;
            if a != b {
                g[(b, a)] += v;
            }
        }
        c[a] += columns[a].iter().zip(target).map(|(x, y)| x * y).sum::<f64>();
    }
    nnls_gram(&g, &c).iter().copied().collect()
}
