//! Linear algebra and polynomials over GF(P) for word-sized primes P < 2³².

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        n >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

/// Row-reduces in place, dropping zero rows; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, iv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = sub(*d, mul(f, *s, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space `{c : M c = 0}` of a square matrix.
pub fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.first().map_or(0, Vec::len);
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, rows[r][f], p);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI − M), coefficients from the constant term up.
pub fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.to_vec();
    // Similarity reduction to upper Hessenberg form.
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let iv = inv(h[c + 1][c], p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let u = mul(h[i][c], iv, p);
            for j in 0..n {
                let t = mul(u, h[c + 1][j], p);
                h[i][j] = sub(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(u, row[i], p);
                row[c + 1] = add(row[c + 1], t, p);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m_ in 1..=n {
        let prev = &polys[m_ - 1];
        let mut cur = vec![0u64; m_ + 1];
        for (i, &c) in prev.iter().enumerate() {
            cur[i + 1] = add(cur[i + 1], c, p);
            cur[i] = sub(cur[i], mul(h[m_ - 1][m_ - 1], c, p), p);
        }
        let mut t = 1u64;
        for i in (1..m_).rev() {
            t = mul(t, h[i][i - 1], p);
            let f = mul(t, h[i - 1][m_ - 1], p);
            if f != 0 {
                for (j, &c) in polys[i - 1].iter().enumerate() {
                    cur[j] = sub(cur[j], mul(f, c, p), p);
                }
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn trim(f: &mut Vec<u64>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

fn degree(f: &[u64]) -> usize {
    f.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// Remainder and quotient of `a` by a nonzero `b`.
fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = degree(b);
    let lead = inv(b[db], p);
    if degree(&r) < db || is_zero(&r) {
        return (vec![0], r);
    }
    let mut q = vec![0u64; degree(&r) - db + 1];
    while !is_zero(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let c = mul(r[dr], lead, p);
        q[dr - db] = c;
        for i in 0..=db {
            r[dr - db + i] = sub(r[dr - db + i], mul(c, b[i], p), p);
        }
        trim(&mut r);
    }
    (q, r)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        let (_, r) = divrem(&a, &b, p);
        a = b;
        b = r;
    }
    let l = inv(a[degree(&a)], p);
    a.iter().map(|&c| mul(c, l, p)).collect()
}

fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(x, y, p), p);
        }
    }
    divrem(&out, f, p).1
}

fn powmod(base: &[u64], mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = divrem(base, f, p).1;
    while n > 0 {
        if n & 1 == 1 {
            r = mulmod(&r, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        n >>= 1;
    }
    r
}

fn split(g: Vec<u64>, p: u64, out: &mut Vec<u64>) {
    let d = degree(&g);
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push(sub(0, mul(g[0], inv(g[1], p), p), p));
        return;
    }
    // p is odd here: splitting by (x + a)^((p-1)/2) - 1.
    for a in 0..p {
        let mut h = powmod(&[a, 1], (p - 1) / 2, &g, p);
        if h.is_empty() {
            h.push(0);
        }
        h[0] = sub(h[0], 1, p);
        let c = gcd(&g, &h, p);
        let dc = degree(&c);
        if dc > 0 && dc < d {
            let (q, _) = divrem(&g, &c, p);
            split(c, p, out);
            split(q, p, out);
            return;
        }
    }
}

/// Distinct roots in GF(P) of a nonzero polynomial, ascending.
pub fn distinct_roots(f: &[u64], p: u64) -> Vec<u64> {
    let mut roots = Vec::new();
    if p == 2 {
        roots.extend(
            (0..2).filter(|&x| f.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p)) == 0),
        );
        return roots;
    }
    let mut xp = powmod(&[0, 1], p, f, p);
    xp.resize(xp.len().max(2), 0);
    xp[1] = sub(xp[1], 1, p);
    let g = gcd(f, &xp, p);
    split(g, p, &mut roots);
    roots.sort_unstable();
    roots.dedup();
    roots
}
