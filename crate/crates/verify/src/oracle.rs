//! Deliberately naive reference implementations. They share no code with the
//! library and favour obviousness over speed.

use rand::Rng;

pub fn naive_log_star(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else if x < 0.0 {
        -(-x).ln()
    } else {
        0.0
    }
}

pub fn naive_weight(j: usize) -> f64 {
    let j = j as f64;
    1.0 / (j * j * (j + 1.0) * (j + 1.0))
}

/// ν(l, m) with 1-based l, materialized entry by entry.
pub fn naive_nu(x: &[f64], l: usize, m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut out = vec![vec![0.0; m]; m];
    for i in l..=n + 1 - m {
        for a in 0..m {
            for b in 0..m {
                out[a][b] += x[i - 1 + a] * x[i - 1 + b];
            }
        }
    }
    let divisor = (n + 2 - m - l) as f64;
    for row in &mut out {
        for v in row.iter_mut() {
            *v /= divisor;
        }
    }
    out
}

pub fn naive_frobenius(a: &[Vec<f64>], b: &[Vec<f64>], log_star: bool) -> f64 {
    let mut s = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (&u, &v) in ra.iter().zip(rb) {
            let (u, v) = if log_star { (naive_log_star(u), naive_log_star(v)) } else { (u, v) };
            s += (u - v) * (u - v);
        }
    }
    s.sqrt()
}

pub fn naive_m_n(n: usize) -> usize {
    ((n as f64).ln().floor() as usize).clamp(1, n)
}

pub fn naive_d_hat(x1: &[f64], x2: &[f64], log_star: bool) -> f64 {
    let n = x1.len().min(x2.len());
    let (x1, x2) = (&x1[..n], &x2[..n]);
    let mut total = 0.0;
    for m in 1..=naive_m_n(n) {
        for l in 1..=n - m + 1 {
            let d = naive_frobenius(&naive_nu(x1, l, m), &naive_nu(x2, l, m), log_star);
            total += naive_weight(m) * naive_weight(l) * d;
        }
    }
    total
}

/// K + 1 increments of `z` starting at 0-based `start`, divided by `scale`.
pub fn naive_increments(z: &[f64], start: usize, k: usize, scale: f64) -> Vec<f64> {
    (start..=start + k).map(|i| (z[i + 1] - z[i]) / scale).collect()
}

pub fn random_series<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-2.0..2.0)).collect()
}

/// Every partition of 0..n into exactly `k` non-empty blocks, as label vectors
/// in restricted-growth form.
pub fn all_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        if k - used > n - i {
            return;
        }
        for label in 0..=used.min(k - 1) {
            cur.push(label);
            go(i + 1, n, k, used.max(label + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Relabels a partition so labels appear in first-occurrence order.
pub fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub fn separates(d: &[Vec<f64>], labels: &[usize]) -> bool {
    let mut intra = f64::NEG_INFINITY;
    let mut inter = f64::INFINITY;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] == labels[j] {
                intra = intra.max(d[i][j]);
            } else {
                inter = inter.min(d[i][j]);
            }
        }
    }
    intra < inter
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
