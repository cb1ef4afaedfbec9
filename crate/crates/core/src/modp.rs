//! Prime-field arithmetic used by the character-table pipeline.
//!
//! Everything reported to callers is an integer (a degree, a multiplicity,
//! a root-of-unity exponent); the mod-p work is a computational device and
//! results are cross-checked under a second prime by the callers.

/// Deterministic splittable generator for tie-breaking choices.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `p > floor` with `p = 1 (mod m)`.
pub fn prime_one_mod(m: u64, floor: u64) -> u64 {
    let mut k = floor / m + 1;
    loop {
        let p = k * m + 1;
        if p > floor && is_prime(p) {
            return p;
        }
        k += 1;
    }
}

/// Smallest primitive root modulo prime p.
pub fn primitive_root(p: u64) -> u64 {
    let mut fs = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            fs.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    (2..)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap()
}

/// A primitive n-th root of unity mod p (requires p = 1 mod n). Deterministic.
pub fn root_of_unity(n: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % n, 0);
    pow_mod(primitive_root(p), (p - 1) / n, p)
}

// ---------------------------------------------------------------------------
// polynomials over F_p, coefficient vectors with constant term first
// ---------------------------------------------------------------------------

fn ptrim(mut f: Vec<u64>) -> Vec<u64> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &u) in a.iter().enumerate() {
        if u == 0 {
            continue;
        }
        for (j, &v) in b.iter().enumerate() {
            c[i + j] = add_mod(c[i + j], mul_mod(u, v, p), p);
        }
    }
    ptrim(c)
}

pub fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = ptrim(b.to_vec());
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if db == 0 {
        return vec![0];
    }
    let lead_inv = inv_mod(b[db], p);
    for i in (db..r.len()).rev() {
        if r[i] == 0 {
            continue;
        }
        let c = mul_mod(r[i], lead_inv, p);
        for (k, &bc) in b.iter().enumerate() {
            r[i - db + k] = sub_mod(r[i - db + k], mul_mod(c, bc, p), p);
        }
    }
    r.truncate(db);
    if r.is_empty() {
        r.push(0);
    }
    ptrim(r)
}

pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = ptrim(a.to_vec());
    let mut b = ptrim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    // monic normalization
    let lead = *a.last().unwrap();
    if lead != 0 && lead != 1 {
        let inv = inv_mod(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// (base^e) mod f, where base is a polynomial.
pub fn ppow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = prem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = prem(&pmul(&acc, &b, p), f, p);
        }
        b = prem(&pmul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

pub fn peval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = add_mod(mul_mod(acc, x, p), c, p);
    }
    acc
}

fn pderiv(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return vec![0];
    }
    ptrim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect(),
    )
}

/// All roots of `f` in F_p (Cantor-Zassenhaus on the split squarefree part).
pub fn roots_mod_p(f: &[u64], p: u64, rng: &mut SplitMix64) -> Vec<u64> {
    let f = ptrim(f.to_vec());
    if f.len() == 1 {
        return Vec::new();
    }
    // squarefree part
    let fp = pderiv(&f, p);
    let g = pgcd(&f, &fp, p);
    let sf = if g.len() == 1 {
        f.clone()
    } else {
        pdiv_exact(&f, &g, p)
    };
    // split part: gcd(x^p - x, sf)
    let xp = ppow_mod(&[0, 1], p, &sf, p);
    let mut xp_minus_x = xp;
    if xp_minus_x.len() < 2 {
        xp_minus_x.resize(2, 0);
    }
    xp_minus_x[1] = sub_mod(xp_minus_x[1], 1, p);
    let split = pgcd(&ptrim(xp_minus_x), &sf, p);
    let mut roots = Vec::new();
    let mut stack = vec![split];
    while let Some(h) = stack.pop() {
        let h = ptrim(h);
        if h.len() <= 1 {
            continue;
        }
        if h.len() == 2 {
            // x + c = 0
            let c = h[0];
            let lead_inv = inv_mod(h[1], p);
            roots.push(sub_mod(0, mul_mod(c, lead_inv, p), p));
            continue;
        }
        // random (x + a)^((p-1)/2) - 1 splitting
        loop {
            let a = rng.below(p);
            let probe = ppow_mod(&[a, 1], (p - 1) / 2, &h, p);
            let mut pm1 = probe.clone();
            pm1[0] = sub_mod(pm1[0], 1, p);
            let d = pgcd(&ptrim(pm1), &h, p);
            if d.len() > 1 && d.len() < h.len() {
                let other = pdiv_exact(&h, &d, p);
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    roots.sort_unstable();
    roots
}

fn pdiv_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = ptrim(b.to_vec());
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    let lead_inv = inv_mod(b[db], p);
    for i in (db..r.len()).rev() {
        if r[i] == 0 {
            continue;
        }
        let c = mul_mod(r[i], lead_inv, p);
        q[i - db] = c;
        for (k, &bc) in b.iter().enumerate() {
            r[i - db + k] = sub_mod(r[i - db + k], mul_mod(c, bc, p), p);
        }
    }
    ptrim(q)
}

// ---------------------------------------------------------------------------
// matrices over F_p
// ---------------------------------------------------------------------------

pub type PMat = Vec<Vec<u64>>;

pub fn p_rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in col..ncols {
                    let t = mul_mod(f, rows[r][j], p);
                    rows[i][j] = sub_mod(rows[i][j], t, p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn p_nullspace(m: &PMat, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = m.clone();
    let pivots = p_rref(&mut rows, p);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &piv) in rows.iter().zip(&pivots) {
            v[piv] = sub_mod(0, row[free], p);
        }
        out.push(v);
    }
    out
}

pub fn p_matmul(a: &PMat, b: &PMat, p: u64) -> PMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            let av = a[i][t];
            for j in 0..m {
                out[i][j] = add_mod(out[i][j], mul_mod(av, b[t][j], p), p);
            }
        }
    }
    out
}

/// Characteristic polynomial mod p via Hessenberg reduction, O(n^3).
pub fn p_charpoly(a: &PMat, p: u64) -> Vec<u64> {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    let mut h = a.clone();
    // similarity reduction to upper Hessenberg with pivoting
    for c in 0..n.saturating_sub(2) {
        if let Some(piv) = (c + 1..n).find(|&r| h[r][c] != 0) {
            if piv != c + 1 {
                h.swap(piv, c + 1);
                for row in h.iter_mut() {
                    row.swap(piv, c + 1);
                }
            }
            let inv = inv_mod(h[c + 1][c], p);
            for r in c + 2..n {
                if h[r][c] == 0 {
                    continue;
                }
                let f = mul_mod(h[r][c], inv, p);
                for j in 0..n {
                    let t = mul_mod(f, h[c + 1][j], p);
                    h[r][j] = sub_mod(h[r][j], t, p);
                }
                // column operation to keep similarity
                for i in 0..n {
                    let t = mul_mod(f, h[i][r], p);
                    h[i][c + 1] = add_mod(h[i][c + 1], t, p);
                }
            }
        }
    }
    // charpoly recurrence on the Hessenberg form
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        // (x - h[k-1][k-1]) * p_{k-1}
        let mut pk = pmul(&[sub_mod(0, h[k - 1][k - 1], p), 1], &polys[k - 1], p);
        let mut coeff = 1u64;
        for i in (1..k).rev() {
            coeff = mul_mod(coeff, h[i][i - 1], p);
            if h[i - 1][k - 1] == 0 || coeff == 0 {
                continue;
            }
            let factor = mul_mod(h[i - 1][k - 1], coeff, p);
            let term = &polys[i - 1];
            if pk.len() < term.len() {
                pk.resize(term.len(), 0);
            }
            for (j, &t) in term.iter().enumerate() {
                pk[j] = sub_mod(pk[j], mul_mod(factor, t, p), p);
            }
        }
        polys.push(ptrim(pk));
    }
    polys.pop().unwrap()
}
