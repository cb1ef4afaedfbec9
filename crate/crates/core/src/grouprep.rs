//! Character tables of the maximal subgroups, and exact multiplicity
//! computations for the quiver pipeline.
//!
//! Tables are computed by the class-algebra eigenvector method modulo a
//! prime p = 1 (mod exponent), then every value is lifted to an exact
//! root-of-unity expansion, so rows have a canonical, prime-independent
//! identity.  Multiplicities are inner products evaluated modulo two
//! independent qualifying primes which must agree.

use crate::error::{MonoidError, Result};
use crate::green::GroupTable;
use crate::modp::{
    self, add_mod, inv_mod, mul_mod, p_charpoly, p_rref, pow_mod, prime_one_mod, roots_mod_p,
    sub_mod, SplitMix64,
};

pub const GROUP_CAP: usize = 512;

#[derive(Debug, Clone)]
pub struct ConjClass {
    /// carrier index of the representative (least in the class)
    pub rep: usize,
    pub members: Vec<usize>,
    pub inverse_class: usize,
    pub rep_order: usize,
}

/// An exact character value: sum of `mult * zeta_exponent^exp` terms over
/// the group exponent, sorted by exp.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycValue {
    pub terms: Vec<(u32, u32)>,
}

impl CycValue {
    pub fn integer(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, m)] => Some(*m as i64),
            _ => None,
        }
    }

    /// Exact evaluation as a cyclotomic scalar over zeta_exponent.
    pub fn to_exact(&self, exponent: u32) -> crate::scalar::Exact {
        use crate::scalar::{Exact, Scalar};
        let mut acc = Exact::zero();
        for &(exp, mult) in &self.terms {
            acc = acc.add(&Exact::root_of_unity(exponent, exp).mul(&Exact::integer(mult as i64)));
        }
        acc
    }

    pub fn eval_mod(&self, zeta: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for &(exp, mult) in &self.terms {
            acc = add_mod(
                acc,
                mul_mod(mult as u64, pow_mod(zeta, exp as u64, p), p),
                p,
            );
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct CharRow {
    pub degree: usize,
    /// lifted value per conjugacy class
    pub values: Vec<CycValue>,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: GroupTable,
    pub classes: Vec<ConjClass>,
    /// carrier index -> class id
    pub class_of: Vec<usize>,
    pub rows: Vec<CharRow>,
    pub exponent: usize,
    pub order: usize,
    /// working prime used during construction (arithmetic domain tag)
    pub prime: u64,
}

fn conjugacy_classes(g: &GroupTable) -> (Vec<ConjClass>, Vec<usize>) {
    let k = g.order();
    let mut seen = vec![false; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..k {
        if seen[x] {
            continue;
        }
        let mut members: Vec<usize> = (0..k)
            .map(|a| g.mul_idx(g.mul_idx(a, x), g.inv_idx(a)))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        classes.push(members);
    }
    // identity class first, then by least member
    let id = g.identity_idx();
    classes.sort_by_key(|c| (if c.contains(&id) { 0 } else { 1 }, c[0]));
    let mut class_of = vec![0usize; k];
    for (ci, c) in classes.iter().enumerate() {
        for &m in c {
            class_of[m] = ci;
        }
    }
    let mut out: Vec<ConjClass> = classes
        .iter()
        .map(|c| ConjClass {
            rep: c[0],
            members: c.clone(),
            inverse_class: 0,
            rep_order: g.element_order(c[0]),
        })
        .collect();
    for i in 0..out.len() {
        let inv_rep = g.inv_idx(out[i].rep);
        out[i].inverse_class = class_of[inv_rep];
    }
    (out, class_of)
}

struct ModRow {
    degree: usize,
    values: Vec<u64>,
}

/// One attempt at the class-matrix eigenvector computation for a given
/// prime; `None` when the eigenspaces fail to split completely.
fn dixon_attempt(
    g: &GroupTable,
    classes: &[ConjClass],
    class_of: &[usize],
    p: u64,
    rng: &mut SplitMix64,
) -> Option<Vec<ModRow>> {
    let s = classes.len();
    let order = g.order() as u64;
    // structure counts: t[i][j][k] = #{(x,y) in K_i x K_j : xy in K_k};
    // the class-algebra constant is t[i][j][k] / |K_k|
    let mut t = vec![vec![vec![0u64; s]; s]; s];
    for x in 0..g.order() {
        for y in 0..g.order() {
            let z = g.mul_idx(x, y);
            t[class_of[x]][class_of[y]][class_of[z]] += 1;
        }
    }
    let a = |i: usize, j: usize, k: usize| -> u64 { t[i][j][k] / classes[k].members.len() as u64 };
    let b_mat = |i: usize| -> Vec<Vec<u64>> {
        (0..s)
            .map(|k| (0..s).map(|j| a(i, j, k) % p).collect())
            .collect()
    };

    // refine the full space into common eigenspaces (columns in F_p^s)
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..s)
        .map(|i| {
            let mut v = vec![0u64; s];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..s {
        if spaces.iter().all(|sp| sp.len() == 1) {
            break;
        }
        let bi = b_mat(i);
        let mut next = Vec::new();
        for sp in spaces {
            if sp.len() == 1 {
                next.push(sp);
                continue;
            }
            let d = sp.len();
            // restricted matrix R with B*q_j = sum_t R[t][j] q_t
            let mut r = vec![vec![0u64; d]; d];
            let mut ok = true;
            for (j, q) in sp.iter().enumerate() {
                let img: Vec<u64> = (0..s)
                    .map(|row| {
                        let mut acc = 0u64;
                        for (col, &qc) in q.iter().enumerate() {
                            acc = add_mod(acc, mul_mod(bi[row][col], qc, p), p);
                        }
                        acc
                    })
                    .collect();
                match p_solve_columns(&sp, &img, p) {
                    Some(coords) => {
                        for (ti, c) in coords.into_iter().enumerate() {
                            r[ti][j] = c;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return None;
            }
            let cp = p_charpoly(&r, p);
            let roots = roots_mod_p(&cp, p, rng);
            let mut split: Vec<Vec<Vec<u64>>> = Vec::new();
            let mut total = 0usize;
            for &lam in &roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|row| {
                        (0..d)
                            .map(|col| {
                                if row == col {
                                    sub_mod(r[row][col], lam, p)
                                } else {
                                    r[row][col]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let null = modp::p_nullspace(&shifted, d, p);
                if null.is_empty() {
                    continue;
                }
                total += null.len();
                let lifted: Vec<Vec<u64>> = null
                    .iter()
                    .map(|w| {
                        (0..s)
                            .map(|row| {
                                let mut acc = 0u64;
                                for (j, q) in sp.iter().enumerate() {
                                    acc = add_mod(acc, mul_mod(w[j], q[row], p), p);
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                split.push(lifted);
            }
            if total != d {
                return None;
            }
            next.extend(split);
        }
        spaces = next;
    }
    if spaces.iter().any(|sp| sp.len() != 1) {
        return None;
    }

    let mut rows = Vec::new();
    for sp in &spaces {
        let v = &sp[0];
        let nz = v.iter().position(|&x| x != 0)?;
        let mut omega = vec![0u64; s];
        for i in 0..s {
            let bi = b_mat(i);
            let img: u64 = (0..s).fold(0, |acc, col| {
                add_mod(acc, mul_mod(bi[nz][col], v[col], p), p)
            });
            omega[i] = mul_mod(img, inv_mod(v[nz], p), p);
            for row in 0..s {
                let img_r: u64 = (0..s).fold(0, |acc, col| {
                    add_mod(acc, mul_mod(bi[row][col], v[col], p), p)
                });
                if img_r != mul_mod(omega[i], v[row], p) {
                    return None;
                }
            }
        }
        // degree from the first orthogonality relation
        let mut denom = 0u64;
        for i in 0..s {
            let ki = classes[i].members.len() as u64;
            let term = mul_mod(
                mul_mod(omega[i], omega[classes[i].inverse_class], p),
                inv_mod(ki % p, p),
                p,
            );
            denom = add_mod(denom, term, p);
        }
        if denom == 0 {
            return None;
        }
        let d_sq = mul_mod(order % p, inv_mod(denom, p), p);
        let max_d = (order as f64).sqrt() as u64 + 1;
        let degree = (1..=max_d).find(|&d| mul_mod(d, d, p) == d_sq)?;
        let values: Vec<u64> = (0..s)
            .map(|i| {
                let ki = classes[i].members.len() as u64;
                mul_mod(mul_mod(degree % p, omega[i], p), inv_mod(ki % p, p), p)
            })
            .collect();
        rows.push(ModRow {
            degree: degree as usize,
            values,
        });
    }
    Some(rows)
}

fn p_solve_columns(cols: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let s = target.len();
    let d = cols.len();
    let mut aug: Vec<Vec<u64>> = (0..s)
        .map(|row| {
            let mut r: Vec<u64> = cols.iter().map(|c| c[row]).collect();
            r.push(target[row]);
            r
        })
        .collect();
    let pivots = p_rref(&mut aug, p);
    if pivots.contains(&d) {
        return None;
    }
    let mut out = vec![0u64; d];
    for (row, &piv) in aug.iter().zip(&pivots) {
        out[piv] = row[d];
    }
    Some(out)
}

/// Complete irreducible character table of `g`.
///
/// `bound` is a floor for the working prime; callers analysing a monoid M
/// pass 2 * |G| * |M| so that multiplicities computed later are identified
/// by their residues.
pub fn character_table(g: &GroupTable, bound: u64) -> Result<CharacterTable> {
    if g.order() > GROUP_CAP {
        return Err(MonoidError::GroupTooLarge {
            order: g.order(),
            cap: GROUP_CAP,
        });
    }
    let (classes, class_of) = conjugacy_classes(g);
    let exponent = g.exponent() as u64;
    let order = g.order() as u64;
    let floor = bound.max(2 * order).max(4);
    let mut p = prime_one_mod(exponent, floor);
    let mut rng = SplitMix64::new(0x5EED ^ order);
    for _attempt in 0..16 {
        if let Some(mod_rows) = dixon_attempt(g, &classes, &class_of, p, &mut rng) {
            if let Ok(t) = finish_table(g, &classes, &class_of, mod_rows, exponent, p) {
                return Ok(t);
            }
        }
        p = prime_one_mod(exponent, p);
    }
    Err(MonoidError::InternalDisagreement {
        context: format!("character table of group of order {order} failed to split"),
    })
}

fn finish_table(
    g: &GroupTable,
    classes: &[ConjClass],
    class_of: &[usize],
    mod_rows: Vec<ModRow>,
    exponent: u64,
    p: u64,
) -> Result<CharacterTable> {
    let s = classes.len();
    let order = g.order() as u64;
    let sum_sq: u64 = mod_rows.iter().map(|r| (r.degree * r.degree) as u64).sum();
    if sum_sq != order {
        return Err(MonoidError::InternalDisagreement {
            context: "degree identity failed".into(),
        });
    }
    // row orthogonality mod p: sum_c |K_c| chi(c) psi(c*) = |G| delta
    for (i, ri) in mod_rows.iter().enumerate() {
        for (j, rj) in mod_rows.iter().enumerate() {
            let mut acc = 0u64;
            for c in 0..s {
                let k = classes[c].members.len() as u64;
                let term = mul_mod(
                    mul_mod(k % p, ri.values[c], p),
                    rj.values[classes[c].inverse_class],
                    p,
                );
                acc = add_mod(acc, term, p);
            }
            let expect = if i == j { order % p } else { 0 };
            if acc != expect {
                return Err(MonoidError::InternalDisagreement {
                    context: "row orthogonality failed".into(),
                });
            }
        }
    }
    // lift each value to an exact root-of-unity expansion
    let zeta_e = modp::root_of_unity(exponent, p);
    let mut rows: Vec<CharRow> = Vec::new();
    for r in &mod_rows {
        let mut values = Vec::with_capacity(s);
        for c in 0..s {
            let o = classes[c].rep_order as u64;
            let zeta_o = pow_mod(zeta_e, exponent / o, p);
            let mut chi_pow = Vec::with_capacity(o as usize);
            let mut t = g.identity_idx();
            for _ in 0..o {
                chi_pow.push(r.values[class_of[t]]);
                t = g.mul_idx(t, classes[c].rep);
            }
            let inv_o = inv_mod(o % p, p);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..o {
                let mut acc = 0u64;
                for (ti, &cv) in chi_pow.iter().enumerate() {
                    let w = pow_mod(zeta_o, (o - j) % o * (ti as u64 % o) % o, p);
                    acc = add_mod(acc, mul_mod(cv, w, p), p);
                }
                let m = mul_mod(acc, inv_o, p);
                if m > r.degree as u64 {
                    return Err(MonoidError::InternalDisagreement {
                        context: "value lift out of range".into(),
                    });
                }
                total += m;
                if m > 0 {
                    terms.push(((j * (exponent / o)) as u32, m as u32));
                }
            }
            if total != r.degree as u64 {
                return Err(MonoidError::InternalDisagreement {
                    context: "value lift multiplicities do not sum to the degree".into(),
                });
            }
            values.push(CycValue { terms });
        }
        rows.push(CharRow {
            degree: r.degree,
            values,
            label: String::new(),
        });
    }
    rows.sort_by(|a, b| (a.degree, &a.values).cmp(&(b.degree, &b.values)));
    let plus_or_minus_one = |v: &CycValue| -> bool {
        v.terms.len() == 1
            && v.terms[0].1 == 1
            && (v.terms[0].0 as u64 * 2 == exponent || v.terms[0].0 == 0)
    };
    for (ri, row) in rows.iter_mut().enumerate() {
        let all_one = row.values.iter().all(|v| v.terms == vec![(0, 1)]);
        if row.degree == 1 && all_one {
            row.label = "triv".into();
        } else if row.degree == 1
            && row.values.iter().all(plus_or_minus_one)
            && row.values.iter().any(|v| v.terms[0].0 != 0)
        {
            row.label = "sign".into();
        } else {
            row.label = format!("chi{ri}");
        }
    }
    Ok(CharacterTable {
        group: g.clone(),
        classes: classes.to_vec(),
        class_of: class_of.to_vec(),
        rows,
        exponent: exponent as usize,
        order: g.order(),
        prime: p,
    })
}

impl CharacterTable {
    /// chi_row evaluated at a carrier element, modulo p, where `zeta` is a
    /// primitive `exponent`-th root of unity mod p.
    pub fn value_mod(&self, row: usize, elt: usize, zeta: u64, p: u64) -> u64 {
        self.rows[row].values[self.class_of[elt]].eval_mod(zeta, p)
    }

    /// Row index of the trivial character.
    pub fn trivial_row(&self) -> usize {
        self.rows
            .iter()
            .position(|r| r.label == "triv")
            .expect("every table has the trivial row")
    }
}

/// Multiplicity of W (x) D(V) in a G_f x G_e bimodule with integer character
/// `chi(g, h)` (indexed by carrier indices), evaluated exactly and verified
/// under two independent qualifying primes.
pub fn pair_multiplicity(
    chi: &dyn Fn(usize, usize) -> i64,
    tf: &CharacterTable,
    w_row: usize,
    te: &CharacterTable,
    v_row: usize,
    dim_bound: u64,
) -> Result<u64> {
    let gf = &tf.group;
    let ge = &te.group;
    let l = lcm(tf.exponent as u64, te.exponent as u64);
    let floor = (2 * (dim_bound + 1) * gf.order() as u64 * ge.order() as u64).max(64);
    let p1 = prime_one_mod(l, floor);
    let p2 = prime_one_mod(l, p1);
    let mut answers = Vec::new();
    for p in [p1, p2] {
        let w = modp::root_of_unity(l, p);
        let zeta_f = pow_mod(w, l / tf.exponent as u64, p);
        let zeta_e = pow_mod(w, l / te.exponent as u64, p);
        let mut acc = 0u64;
        for g in 0..gf.order() {
            // conj(chi_W(g)) = chi_W(g^{-1})
            let wg = tf.value_mod(w_row, gf.inv_idx(g), zeta_f, p);
            if wg == 0 {
                continue;
            }
            for h in 0..ge.order() {
                let vh = te.value_mod(v_row, h, zeta_e, p);
                if vh == 0 {
                    continue;
                }
                let c = chi(g, h);
                let cm = if c >= 0 {
                    (c as u64) % p
                } else {
                    sub_mod(0, (-c as u64) % p, p)
                };
                acc = add_mod(acc, mul_mod(cm, mul_mod(wg, vh, p), p), p);
            }
        }
        let denom = (gf.order() * ge.order()) as u64 % p;
        let mult = mul_mod(acc, inv_mod(denom, p), p);
        if mult > dim_bound {
            return Err(MonoidError::InternalDisagreement {
                context: format!("multiplicity residue {mult} exceeds bound {dim_bound}"),
            });
        }
        answers.push(mult);
    }
    if answers[0] != answers[1] {
        return Err(MonoidError::DomainMismatch {
            context: format!(
                "multiplicity differs between primes {p1} and {p2}: {} vs {}",
                answers[0], answers[1]
            ),
        });
    }
    Ok(answers[0])
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
