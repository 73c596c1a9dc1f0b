//! Independent Smith-normal-form oracles.
//!
//! Two routes that share no code with the library kernel: a determinantal-
//! divisor oracle (invariant factors as quotients of minor gcds) for small
//! matrices, and a separately written recursive elimination for larger
//! ones.

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn minor_det(m: &[Vec<i128>], rows: &[usize], cols: &[usize]) -> i128 {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]];
    }
    let mut det = 0i128;
    let mut sign = 1i128;
    for (k, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> =
            cols.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &c)| c).collect();
        det += sign * m[rows[0]][c] * minor_det(m, &rows[1..], &sub_cols);
        sign = -sign;
    }
    det
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Invariant factors via determinantal divisors: `d_k` is the gcd of all
/// k-by-k minors and the k-th factor is `d_k / d_{k-1}`. Exponential; only
/// for small matrices.
pub fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for r in combinations(rows, k) {
            for c in combinations(cols, k) {
                d = gcd(d, minor_det(m, &r, &c));
                if d == 1 {
                    break;
                }
            }
            if d == 1 {
                break;
            }
        }
        if d == 0 {
            break;
        }
        factors.push(d / prev);
        prev = d;
    }
    factors
}

/// Recursive gcd-driven elimination, written independently of the library
/// kernel.
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors_recursive(m: &[Vec<i128>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = m.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    reduce(&mut m, 0, rows, cols, &mut out);
    out
}

#[allow(clippy::needless_range_loop)]
fn reduce(m: &mut Vec<Vec<i128>>, k: usize, rows: usize, cols: usize, out: &mut Vec<i128>) {
    if k >= rows.min(cols) {
        return;
    }
    // Pivot: any nonzero entry, then shrink it by gcd steps until it
    // divides its whole row and column.
    let Some((pi, pj)) =
        (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != 0)
    else {
        return;
    };
    m.swap(k, pi);
    for row in m.iter_mut() {
        row.swap(k, pj);
    }
    loop {
        let mut changed = false;
        for i in k + 1..rows {
            while m[i][k] != 0 {
                let q = m[i][k] / m[k][k];
                for j in k..cols {
                    m[i][j] -= q * m[k][j];
                }
                if m[i][k] != 0 {
                    // Remainder is smaller than the pivot: trade places.
                    m.swap(i, k);
                    changed = true;
                }
            }
        }
        for j in k + 1..cols {
            while m[k][j] != 0 {
                let q = m[k][j] / m[k][k];
                for i in k..rows {
                    m[i][j] -= q * m[i][k];
                }
                if m[k][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(j, k);
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // Divisibility: fold any offending row into row k and restart.
    if let Some(i) = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| m[i][j] % m[k][k] != 0)) {
        for j in k..cols {
            let v = m[i][j];
            m[k][j] += v;
        }
        reduce(m, k, rows, cols, out);
        return;
    }
    out.push(m[k][k].abs());
    reduce(m, k + 1, rows, cols, out);
}
