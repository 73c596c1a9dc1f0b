//! Smith normal form over the integers, just enough for abelianization
//! diagnoses: only the diagonal is computed, no transform tracking.

/// Invariant factors of an integer matrix: the nonzero diagonal of its
/// Smith normal form, each positive and dividing the next.
///
/// Pivoting on a minimum-magnitude entry with Euclidean remainder steps;
/// every remainder step shrinks the pivot candidate, so the loop terminates.
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let mut factors = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&m, k) else { break };
        m.swap(k, pi);
        swap_cols(&mut m, k, pj);
        if m[k][k] < 0 {
            for j in k..cols {
                m[k][j] = -m[k][j];
            }
        }

        let mut dirty = false;
        for i in k + 1..rows {
            if m[i][k] != 0 {
                let q = m[i][k].div_euclid(m[k][k]);
                for j in k..cols {
                    m[i][j] -= q * m[k][j];
                }
                dirty |= m[i][k] != 0;
            }
        }
        if dirty {
            continue;
        }
        for j in k + 1..cols {
            if m[k][j] != 0 {
                let q = m[k][j].div_euclid(m[k][k]);
                for i in k..rows {
                    m[i][j] -= q * m[i][k];
                }
                dirty |= m[k][j] != 0;
            }
        }
        if dirty {
            continue;
        }

        // Row and column k are clear; enforce divisibility of the rest.
        if let Some(i) = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| m[i][j] % m[k][k] != 0)) {
            for j in k..cols {
                let v = m[i][j];
                m[k][j] += v;
            }
            continue;
        }
        factors.push(m[k][k]);
        k += 1;
    }
    factors
}

fn min_abs_nonzero(m: &[Vec<i128>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, &v) in row.iter().enumerate().skip(k) {
            if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}
