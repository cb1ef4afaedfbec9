//! Independent brute-force verification path on the rational monoid
//! algebra: radical by the trace form, semisimple quotient, idempotent
//! lifting, and a from-first-principles quiver for aperiodic monoids.
//!
//! Everything here is exact rational linear algebra; nothing is shared
//! with the counting and character formulas it cross-checks.

use crate::error::{MonoidError, Result};
use crate::green::{green_data, maximal_subgroup};
use crate::linalg::{Mat, Subspace};
use crate::modules::MatrixRep;
use crate::monoid_core::FiniteMonoid;
use crate::quiver::{Quiver, QuiverVertex};
use crate::scalar::{Exact, Scalar};
use num::{BigRational, One, Zero};
use std::collections::BTreeMap;

fn q0() -> BigRational {
    Zero::zero()
}

fn q1() -> BigRational {
    One::one()
}

fn qz(x: &BigRational) -> bool {
    <BigRational as Zero>::is_zero(x)
}

type Vector = Vec<BigRational>;

/// An associative algebra by structure constants over the rationals.
#[derive(Debug, Clone)]
pub struct AssocAlgebra {
    pub dim: usize,
    /// products[i][j] = sparse expansion of b_i * b_j
    pub products: Vec<Vec<Vec<(usize, BigRational)>>>,
    pub unit: Vector,
}

/// kM with basis the monoid elements.
pub fn monoid_algebra(m: &FiniteMonoid) -> AssocAlgebra {
    let n = m.order();
    let products = (0..n)
        .map(|i| (0..n).map(|j| vec![(m.mul(i, j), q1())]).collect())
        .collect();
    let mut unit = vec![q0(); n];
    unit[m.identity()] = q1();
    AssocAlgebra {
        dim: n,
        products,
        unit,
    }
}

impl AssocAlgebra {
    pub fn mul_vec(&self, a: &[BigRational], b: &[BigRational]) -> Vector {
        let mut out = vec![q0(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if qz(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if qz(bj) {
                    continue;
                }
                let c = ai * bj;
                for (k, s) in &self.products[i][j] {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// Multiply by a basis element on the left/right (cheap for monoid
    /// algebras where products are single basis elements).
    pub fn basis_mul_left(&self, i: usize, b: &[BigRational]) -> Vector {
        let mut out = vec![q0(); self.dim];
        for (j, bj) in b.iter().enumerate() {
            if qz(bj) {
                continue;
            }
            for (k, s) in &self.products[i][j] {
                out[*k] = &out[*k] + &(bj * s);
            }
        }
        out
    }

    pub fn basis_mul_right(&self, b: &[BigRational], j: usize) -> Vector {
        let mut out = vec![q0(); self.dim];
        for (i, bi) in b.iter().enumerate() {
            if qz(bi) {
                continue;
            }
            for (k, s) in &self.products[i][j] {
                out[*k] = &out[*k] + &(bi * s);
            }
        }
        out
    }

    /// Spot-check associativity and the unit law on all basis triples.
    pub fn verify(&self) -> Result<()> {
        for i in 0..self.dim {
            let mut ei = vec![q0(); self.dim];
            ei[i] = q1();
            if self.mul_vec(&self.unit, &ei) != ei || self.mul_vec(&ei, &self.unit) != ei {
                return Err(MonoidError::InternalDisagreement {
                    context: "unit law fails".into(),
                });
            }
        }
        for i in 0..self.dim {
            let mut ei = vec![q0(); self.dim];
            ei[i] = q1();
            for j in 0..self.dim {
                let mut ej = vec![q0(); self.dim];
                ej[j] = q1();
                let ij = self.mul_vec(&ei, &ej);
                for k in 0..self.dim {
                    let mut ek = vec![q0(); self.dim];
                    ek[k] = q1();
                    let left = self.mul_vec(&ij, &ek);
                    let right = self.mul_vec(&ei, &self.mul_vec(&ej, &ek));
                    if left != right {
                        return Err(MonoidError::InternalDisagreement {
                            context: format!("associativity fails at ({i},{j},{k})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// trace of left multiplication by each basis element
    fn basis_traces(&self) -> Vector {
        (0..self.dim)
            .map(|k| {
                let mut t = q0();
                for m in 0..self.dim {
                    for (target, c) in &self.products[k][m] {
                        if *target == m {
                            t = &t + c;
                        }
                    }
                }
                t
            })
            .collect()
    }
}

/// Basis of rad(A): the nullspace of the trace form of the left regular
/// representation (valid in characteristic zero), with nilpotency verified
/// by powering the subspace to zero.
pub fn radical(a: &AssocAlgebra) -> Result<Vec<Vector>> {
    let tr = a.basis_traces();
    let gram: Vec<Vector> = (0..a.dim)
        .map(|i| {
            (0..a.dim)
                .map(|j| {
                    let mut acc = q0();
                    for (k, c) in &a.products[i][j] {
                        acc = &acc + &(c * &tr[*k]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let basis = crate::linalg::nullspace(&Mat::from_rows(gram));
    // nilpotency: powers of the span must reach zero
    let mut current = basis.clone();
    for _ in 0..a.dim + 1 {
        if current.is_empty() {
            return Ok(basis);
        }
        let mut next = Vec::new();
        for u in &current {
            for v in &basis {
                next.push(a.mul_vec(u, v));
            }
        }
        let sub = Subspace::from_vectors(a.dim, &next);
        current = sub.basis;
    }
    Err(MonoidError::InternalDisagreement {
        context: "trace-form radical is not nilpotent".into(),
    })
}

/// The semisimple quotient with dense structure constants, a section of the
/// projection, and the projection itself.
pub struct Quotient {
    pub dim: usize,
    pub rad: Subspace<BigRational>,
    /// ambient coordinates that survive as quotient coordinates
    pub free: Vec<usize>,
    /// dense products of quotient basis vectors
    pub products: Vec<Vec<Vector>>,
    pub unit: Vector,
}

impl Quotient {
    pub fn new(a: &AssocAlgebra, rad_basis: &[Vector]) -> Quotient {
        let rad = Subspace::from_vectors(a.dim, rad_basis);
        let pivot_set: std::collections::HashSet<usize> = rad.pivots.iter().copied().collect();
        let free: Vec<usize> = (0..a.dim).filter(|c| !pivot_set.contains(c)).collect();
        let dim = free.len();
        let project = |v: &[BigRational]| -> Vector {
            let r = rad.reduce(v);
            free.iter().map(|&c| r[c].clone()).collect()
        };
        // products of the section basis vectors (single monoid elements)
        let mut products = vec![vec![Vector::new(); dim]; dim];
        for (qi, &fi) in free.iter().enumerate() {
            for (qj, &fj) in free.iter().enumerate() {
                let mut prod = vec![q0(); a.dim];
                for (k, c) in &a.products[fi][fj] {
                    prod[*k] = &prod[*k] + c;
                }
                products[qi][qj] = project(&prod);
            }
        }
        let unit = project(&a.unit);
        Quotient {
            dim,
            rad,
            free,
            products,
            unit,
        }
    }

    pub fn project(&self, v: &[BigRational]) -> Vector {
        let r = self.rad.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    pub fn section(&self, v: &[BigRational]) -> Vector {
        let mut out = vec![q0(); self.rad.ambient];
        for (c, &fc) in v.iter().zip(&self.free) {
            out[fc] = c.clone();
        }
        out
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> Vector {
        let mut out = vec![q0(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if qz(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if qz(yj) {
                    continue;
                }
                let c = xi * yj;
                for (k, pk) in self.products[i][j].iter().enumerate() {
                    if !qz(pk) {
                        out[k] = &out[k] + &(&c * pk);
                    }
                }
            }
        }
        out
    }

    /// Quotient as an abstract algebra (used to check rad(A/rad) = 0).
    pub fn as_algebra(&self) -> AssocAlgebra {
        let products = self
            .products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !qz(c))
                            .map(|(k, c)| (k, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        AssocAlgebra {
            dim: self.dim,
            products,
            unit: self.unit.clone(),
        }
    }
}

fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(qz)
}

/// Central primitive idempotents of the semisimple quotient, found by
/// splitting along units of two-sided ideals generated by images of the
/// monoid idempotents.
fn central_primitives(m: &FiniteMonoid, a: &AssocAlgebra, q: &Quotient) -> Result<Vec<Vector>> {
    // center dimension: solve [z, g] = 0 in the quotient for generators g
    let gens = m.cayley_generators();
    let gen_images: Vec<Vector> = gens
        .iter()
        .map(|&g| {
            let mut v = vec![q0(); a.dim];
            v[g] = q1();
            q.project(&v)
        })
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    for gi in &gen_images {
        // map z -> z*g - g*z, columns = quotient basis vectors
        for col in 0..q.dim {
            let mut bz = vec![q0(); q.dim];
            bz[col] = q1();
            let comm_col: Vector = {
                let zg = q.mul(&bz, gi);
                let gz = q.mul(gi, &bz);
                zg.iter().zip(&gz).map(|(x, y)| x - y).collect()
            };
            // store column-wise; assemble after the loop
            rows.push(comm_col);
        }
    }
    // rows currently holds columns of the stacked commutator maps, one
    // q.dim-block per generator; rebuild as a matrix with q.dim unknowns
    let n_blocks = gen_images.len();
    let mut sys: Vec<Vector> = Vec::new();
    for b in 0..n_blocks {
        for out_coord in 0..q.dim {
            sys.push(
                (0..q.dim)
                    .map(|col| rows[b * q.dim + col][out_coord].clone())
                    .collect(),
            );
        }
    }
    let center_dim = q.dim - Mat::from_rows(sys).rank();

    let gd = green_data(m);
    let mut current: Vec<Vector> = vec![q.unit.clone()];
    for (_, e) in gd.regular_j_representatives() {
        if current.len() == center_dim {
            break;
        }
        // two-sided ideal of the quotient generated by the image of e,
        // computed in A as the closure of {e} + rad under the generators
        let mut seed = vec![q0(); a.dim];
        seed[e] = q1();
        let mut space = Subspace::from_vectors(a.dim, &q.rad.basis);
        let mut queue: Vec<Vector> = Vec::new();
        let reduced = space.reduce(&seed);
        if !is_zero_vec(&reduced) {
            let s =
                Subspace::from_vectors(a.dim, &[space.basis.clone(), vec![seed.clone()]].concat());
            space = s;
            queue.push(seed.clone());
        }
        while let Some(v) = queue.pop() {
            for &g in &gens {
                for w in [a.basis_mul_left(g, &v), a.basis_mul_right(&v, g)] {
                    if !space.contains(&w) {
                        let mut vs = space.basis.clone();
                        vs.push(w.clone());
                        space = Subspace::from_vectors(a.dim, &vs);
                        queue.push(w);
                    }
                }
            }
        }
        // ideal in the quotient
        let ideal_vecs: Vec<Vector> = space.basis.iter().map(|v| q.project(v)).collect();
        let ideal = Subspace::from_vectors(q.dim, &ideal_vecs);
        let c_u = ideal_unit(q, &ideal)?;
        // refine the current central decomposition
        let mut next = Vec::new();
        for c in current {
            let c1 = q.mul(&c, &c_u);
            let c2: Vector = c.iter().zip(&c1).map(|(x, y)| x - y).collect();
            if !is_zero_vec(&c1) {
                next.push(c1);
            }
            if !is_zero_vec(&c2) {
                next.push(c2);
            }
        }
        current = next;
    }
    if current.len() != center_dim {
        return Err(MonoidError::InternalDisagreement {
            context: format!(
                "central splitting found {} blocks, center has dimension {center_dim}",
                current.len()
            ),
        });
    }
    // exact verification of the family
    for (i, c) in current.iter().enumerate() {
        if q.mul(c, c) != *c {
            return Err(MonoidError::InternalDisagreement {
                context: format!("central element {i} is not idempotent"),
            });
        }
        for (j, d) in current.iter().enumerate() {
            if i != j && !is_zero_vec(&q.mul(c, d)) {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("central idempotents {i},{j} not orthogonal"),
                });
            }
        }
    }
    let mut sum = vec![q0(); q.dim];
    for c in &current {
        for (s, x) in sum.iter_mut().zip(c) {
            *s = &*s + x;
        }
    }
    if sum != q.unit {
        return Err(MonoidError::InternalDisagreement {
            context: "central idempotents do not sum to the identity".into(),
        });
    }
    Ok(current)
}

/// The unit of a two-sided ideal of the semisimple quotient: the unique
/// right identity, pinned by the linear system b_s * c = b_s over the whole
/// ideal basis.
fn ideal_unit(q: &Quotient, ideal: &Subspace<BigRational>) -> Result<Vector> {
    let d = ideal.dim();
    // images of the quotient unit vectors under right multiplication by
    // each ideal basis vector: r[t][j] = e_j * B_t
    let mut right_images: Vec<Vec<Vector>> = Vec::with_capacity(d);
    for bt in &ideal.basis {
        let mut per_j = Vec::with_capacity(q.dim);
        for j in 0..q.dim {
            let mut acc = vec![q0(); q.dim];
            for (k, c) in bt.iter().enumerate() {
                if qz(c) {
                    continue;
                }
                for (o, p) in acc.iter_mut().zip(&q.products[j][k]) {
                    if !qz(p) {
                        *o = &*o + &(c * p);
                    }
                }
            }
            per_j.push(acc);
        }
        right_images.push(per_j);
    }
    // constraint rows: for each basis vector b_s and coordinate, the
    // combination sum_t alpha_t (b_s * B_t) equals b_s
    let mut aug: Vec<Vector> = Vec::with_capacity(d * q.dim);
    for bs in &ideal.basis {
        let prods: Vec<Vector> = right_images
            .iter()
            .map(|per_j| {
                let mut acc = vec![q0(); q.dim];
                for (j, c) in bs.iter().enumerate() {
                    if qz(c) {
                        continue;
                    }
                    for (o, p) in acc.iter_mut().zip(&per_j[j]) {
                        if !qz(p) {
                            *o = &*o + &(c * p);
                        }
                    }
                }
                acc
            })
            .collect();
        for coord in 0..q.dim {
            let mut row: Vector = prods.iter().map(|v| v[coord].clone()).collect();
            row.push(bs[coord].clone());
            aug.push(row);
        }
    }
    let pivots = crate::linalg::rref_in_place(&mut aug);
    if pivots.contains(&d) {
        return Err(MonoidError::InternalDisagreement {
            context: "no unit in the ideal".into(),
        });
    }
    let mut alpha = vec![q0(); d];
    for (row, &p) in aug.iter().zip(&pivots) {
        alpha[p] = row[d].clone();
    }
    let mut c = vec![q0(); q.dim];
    for (al, b) in alpha.iter().zip(&ideal.basis) {
        if qz(al) {
            continue;
        }
        for (s, x) in c.iter_mut().zip(b) {
            *s = &*s + &(al * x);
        }
    }
    // c must be the two-sided unit of the ideal
    for b in &ideal.basis {
        if q.mul(&c, b) != *b || q.mul(b, &c) != *b {
            return Err(MonoidError::InternalDisagreement {
                context: "ideal unit candidate fails the unit law".into(),
            });
        }
    }
    Ok(c)
}

/// Lift orthogonal idempotents from the quotient to the algebra by the
/// Newton iteration e <- 3e^2 - 2e^3, peeling corners to keep the family
/// orthogonal; the last one is the complement of the sum.
fn lift_orthogonal(a: &AssocAlgebra, q: &Quotient, centrals: &[Vector]) -> Result<Vec<Vector>> {
    let k = centrals.len();
    let mut lifted: Vec<Vector> = Vec::new();
    let mut sum = vec![q0(); a.dim];
    let unit = a.unit.clone();
    for (i, cbar) in centrals.iter().enumerate() {
        if i + 1 == k {
            let last: Vector = unit.iter().zip(&sum).map(|(u, s)| u - s).collect();
            if a.mul_vec(&last, &last) != last {
                return Err(MonoidError::InternalDisagreement {
                    context: "complement of lifted idempotents is not idempotent".into(),
                });
            }
            lifted.push(last);
            break;
        }
        // any preimage, pushed into the corner (1 - s) A (1 - s)
        let mut pre = vec![q0(); a.dim];
        for (qi, &fc) in q.free.iter().enumerate() {
            pre[fc] = cbar[qi].clone();
        }
        let comp: Vector = unit.iter().zip(&sum).map(|(u, s)| u - s).collect();
        let mut e = a.mul_vec(&a.mul_vec(&comp, &pre), &comp);
        for _ in 0..64 {
            let e2 = a.mul_vec(&e, &e);
            if e2 == e {
                break;
            }
            // 3e^2 - 2e^3
            let e3 = a.mul_vec(&e2, &e);
            e = e2
                .iter()
                .zip(&e3)
                .map(|(x2, x3)| {
                    &(x2 * BigRational::from_integer(3.into()))
                        - &(x3 * BigRational::from_integer(2.into()))
                })
                .collect();
        }
        if a.mul_vec(&e, &e) != e {
            return Err(MonoidError::InternalDisagreement {
                context: "Newton iteration failed to reach an idempotent".into(),
            });
        }
        if q.project(&e) != *cbar {
            return Err(MonoidError::InternalDisagreement {
                context: "lifted idempotent drifted from its residue".into(),
            });
        }
        for (s, x) in sum.iter_mut().zip(&e) {
            *s = &*s + x;
        }
        lifted.push(e);
    }
    // orthogonality
    for i in 0..lifted.len() {
        for j in 0..lifted.len() {
            if i != j && !is_zero_vec(&a.mul_vec(&lifted[i], &lifted[j])) {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("lifted idempotents {i},{j} are not orthogonal"),
                });
            }
        }
    }
    Ok(lifted)
}

/// Quiver of kM computed from first principles: trace-form radical, lifted
/// orthogonal idempotents, and Peirce blocks of rad/rad^2.  Requires an
/// aperiodic monoid so that kM is split over the rationals.
pub fn quiver_bruteforce(m: &FiniteMonoid) -> Result<Quiver> {
    let gd = green_data(m);
    for (_, e) in gd.regular_j_representatives() {
        let g = maximal_subgroup(m, &gd, e)?;
        if g.order() > 1 {
            return Err(MonoidError::NotAperiodic { witness: e });
        }
    }
    let a = monoid_algebra(m);
    let rad_basis = radical(&a)?;
    let q = Quotient::new(&a, &rad_basis);
    let centrals = central_primitives(m, &a, &q)?;
    let k = centrals.len();

    // block sizes: dim of c A/rad c must be a perfect square
    let mut block_n = vec![0usize; k];
    for (i, c) in centrals.iter().enumerate() {
        let vecs: Vec<Vector> = (0..q.dim)
            .map(|t| {
                let mut b = vec![q0(); q.dim];
                b[t] = q1();
                q.mul(&q.mul(c, &b), c)
            })
            .collect();
        let d = Subspace::from_vectors(q.dim, &vecs).dim();
        let n = (1..=d)
            .find(|&n| n * n == d)
            .ok_or_else(|| MonoidError::InternalDisagreement {
                context: format!("block {i} has non-square dimension {d}"),
            })?;
        block_n[i] = n;
    }

    // apex of each block: the unique minimal J-class acting nonzero
    let mut block_vertex = vec![usize::MAX; k];
    let reps = gd.regular_j_representatives();
    for (i, c) in centrals.iter().enumerate() {
        let mut acting: Vec<usize> = Vec::new();
        for x in m.elements() {
            let mut xv = vec![q0(); a.dim];
            xv[x] = q1();
            let prod = q.mul(&q.project(&xv), c);
            if !is_zero_vec(&prod) {
                acting.push(x);
            }
        }
        let mut min_classes: Vec<usize> = Vec::new();
        for &x in &acting {
            let jc = gd.j_class_of[x];
            if acting
                .iter()
                .all(|&y| gd.j_class_of[y] == jc || !gd.j_le(y, x))
            {
                min_classes.push(jc);
            }
        }
        min_classes.sort_unstable();
        min_classes.dedup();
        if min_classes.len() != 1 {
            return Err(MonoidError::InternalDisagreement {
                context: format!(
                    "block {i} has {} minimal acting J-classes",
                    min_classes.len()
                ),
            });
        }
        let jc = min_classes[0];
        let vi = reps.iter().position(|&(c_, _)| c_ == jc).ok_or_else(|| {
            MonoidError::InternalDisagreement {
                context: format!("apex J-class {jc} of block {i} is not regular"),
            }
        })?;
        if block_vertex.contains(&vi) {
            return Err(MonoidError::InternalDisagreement {
                context: "two blocks share an apex".into(),
            });
        }
        block_vertex[i] = vi;
    }

    let lifted = lift_orthogonal(&a, &q, &centrals)?;

    // rad^2 and the Peirce pieces of rad / rad^2
    let mut rad2_vecs = Vec::new();
    for u in &rad_basis {
        for v in &rad_basis {
            rad2_vecs.push(a.mul_vec(u, v));
        }
    }
    let rad2 = Subspace::from_vectors(a.dim, &rad2_vecs);

    let mut arrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (bi, ei) in lifted.iter().enumerate() {
        for (bj, ej) in lifted.iter().enumerate() {
            let mut vecs: Vec<Vector> = rad2.basis.clone();
            for w in &rad_basis {
                vecs.push(a.mul_vec(&a.mul_vec(ej, w), ei));
            }
            let total = Subspace::from_vectors(a.dim, &vecs).dim();
            let dim = total - rad2.dim();
            let denom = block_n[bi] * block_n[bj];
            if dim % denom != 0 {
                return Err(MonoidError::InternalDisagreement {
                    context: format!(
                        "Peirce block dimension {dim} not divisible by {denom} at ({bi},{bj})"
                    ),
                });
            }
            let count = dim / denom;
            if count > 0 {
                arrows.insert((block_vertex[bi], block_vertex[bj]), count);
            }
        }
    }

    let vertices: Vec<QuiverVertex> = reps
        .iter()
        .map(|&(jc, e)| QuiverVertex {
            j_class: jc,
            idempotent: e,
            irr_label: "triv".into(),
        })
        .collect();
    Ok(Quiver {
        mode: "bruteforce",
        vertices,
        arrows,
    })
}

/// Simplicity, top, socle and endomorphism data of a representation,
/// computed against the radical of kM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleTests {
    pub is_simple: bool,
    pub top_dim: usize,
    pub socle_dim: usize,
    pub end_dim: usize,
}

pub fn module_tests(m: &FiniteMonoid, rep: &MatrixRep) -> Result<ModuleTests> {
    rep.verify(m)?;
    let d = rep.dim;
    let a = monoid_algebra(m);
    let rad_basis = radical(&a)?;
    // radical action matrices in the scalar domain of the representation
    let rad_mats: Vec<Mat<Exact>> = rad_basis
        .iter()
        .map(|w| {
            let mut acc: Mat<Exact> = Mat::zeros(d, d);
            for (x, c) in w.iter().enumerate() {
                if qz(c) {
                    continue;
                }
                let ce = Exact::from_rat(c);
                for i in 0..d {
                    for j in 0..d {
                        if !rep.act[x].rows[i][j].is_zero() {
                            let t = ce.mul(&rep.act[x].rows[i][j]);
                            acc.rows[i][j] = acc.rows[i][j].add(&t);
                        }
                    }
                }
            }
            acc
        })
        .collect();
    // rad(V) = rad(kM) V: span of all columns of the radical action
    let mut rad_v_vecs: Vec<Vec<Exact>> = Vec::new();
    for rm in &rad_mats {
        for col in 0..d {
            rad_v_vecs.push((0..d).map(|row| rm.rows[row][col].clone()).collect());
        }
    }
    let rad_v = Subspace::from_vectors(d, &rad_v_vecs);
    let top_dim = d - rad_v.dim();
    // soc(V) = annihilator of rad(kM) in V
    let socle_dim = if rad_mats.is_empty() {
        d
    } else {
        let mut stacked: Vec<Vec<Exact>> = Vec::new();
        for rm in &rad_mats {
            stacked.extend(rm.rows.clone());
        }
        d - Mat::from_rows(stacked).rank()
    };
    // enveloping algebra dimension: d^2 means absolutely simple
    let flat: Vec<Vec<Exact>> = m
        .elements()
        .map(|x| {
            rep.act[x]
                .rows
                .iter()
                .flat_map(|r| r.iter().cloned())
                .collect()
        })
        .collect();
    let env_dim = Subspace::from_vectors(d * d, &flat).dim();
    let is_simple = env_dim == d * d && d > 0;
    // endomorphisms: solve X act(g) = act(g) X for the generators
    let gens = m.cayley_generators();
    let mut rows: Vec<Vec<Exact>> = Vec::new();
    for &g in &gens {
        let ag = &rep.act[g];
        for i in 0..d {
            for j in 0..d {
                // coefficient of X[r][c] in (X ag - ag X)[i][j]
                let mut row = vec![Exact::zero(); d * d];
                for c in 0..d {
                    // X[i][c] * ag[c][j]
                    row[i * d + c] = row[i * d + c].add(&ag.rows[c][j]);
                }
                for r in 0..d {
                    // - ag[i][r] * X[r][j]
                    row[r * d + j] = row[r * d + j].sub(&ag.rows[i][r]);
                }
                rows.push(row);
            }
        }
    }
    let end_dim = if d == 0 {
        0
    } else if rows.is_empty() {
        d * d
    } else {
        d * d - Mat::from_rows(rows).rank()
    };
    Ok(ModuleTests {
        is_simple,
        top_dim,
        socle_dim,
        end_dim,
    })
}

/// The top of a representation: the quotient by rad(kM) * V.
pub fn top_quotient(m: &FiniteMonoid, rep: &MatrixRep) -> Result<MatrixRep> {
    let d = rep.dim;
    let a = monoid_algebra(m);
    let rad_basis = radical(&a)?;
    let mut vecs: Vec<Vec<Exact>> = Vec::new();
    for w in &rad_basis {
        let mut acc: Mat<Exact> = Mat::zeros(d, d);
        for (x, c) in w.iter().enumerate() {
            if qz(c) {
                continue;
            }
            let ce = Exact::from_rat(c);
            for i in 0..d {
                for j in 0..d {
                    if !rep.act[x].rows[i][j].is_zero() {
                        let t = ce.mul(&rep.act[x].rows[i][j]);
                        acc.rows[i][j] = acc.rows[i][j].add(&t);
                    }
                }
            }
        }
        for col in 0..d {
            vecs.push((0..d).map(|row| acc.rows[row][col].clone()).collect());
        }
    }
    let rad_v = Subspace::from_vectors(d, &vecs);
    let top = rep.quotient(&rad_v);
    top.verify(m)?;
    Ok(top)
}

/// The socle of a representation as an explicit subrepresentation.
pub fn socle_subrep(m: &FiniteMonoid, rep: &MatrixRep) -> Result<MatrixRep> {
    let d = rep.dim;
    let a = monoid_algebra(m);
    let rad_basis = radical(&a)?;
    if rad_basis.is_empty() {
        return Ok(rep.clone());
    }
    let mut stacked: Vec<Vec<Exact>> = Vec::new();
    for w in &rad_basis {
        let mut acc: Mat<Exact> = Mat::zeros(d, d);
        for (x, c) in w.iter().enumerate() {
            if qz(c) {
                continue;
            }
            let ce = Exact::from_rat(c);
            for i in 0..d {
                for j in 0..d {
                    if !rep.act[x].rows[i][j].is_zero() {
                        let t = ce.mul(&rep.act[x].rows[i][j]);
                        acc.rows[i][j] = acc.rows[i][j].add(&t);
                    }
                }
            }
        }
        stacked.extend(acc.rows);
    }
    let soc = crate::linalg::nullspace(&Mat::from_rows(stacked));
    rep.restrict(&soc)
}

/// Principal left ideal span check: kL + rad = kL^2 + rad as subspaces.
pub fn left_ideal_radical_identity(m: &FiniteMonoid, x: usize) -> Result<bool> {
    let a = monoid_algebra(m);
    let rad_basis = radical(&a)?;
    let left_ideal: Vec<usize> = {
        let mut v: Vec<usize> = m.elements().map(|y| m.mul(y, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let unit_vec = |k: usize| -> Vector {
        let mut v = vec![q0(); a.dim];
        v[k] = q1();
        v
    };
    let mut lhs: Vec<Vector> = left_ideal.iter().map(|&k| unit_vec(k)).collect();
    lhs.extend(rad_basis.clone());
    let mut rhs: Vec<Vector> = Vec::new();
    for &u in &left_ideal {
        for &v in &left_ideal {
            rhs.push(unit_vec(m.mul(u, v)));
        }
    }
    rhs.extend(rad_basis);
    Ok(Subspace::from_vectors(a.dim, &lhs) == Subspace::from_vectors(a.dim, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, *};
    use crate::fountain::{classify, tilde_partitions};
    use crate::modules::{coinduced, projective_indecomposable, GroupModule};
    use crate::quiver::{quiver, Analysis, QuiverMode};

    #[test]
    fn algebra_dimensions_and_verification() {
        let a = monoid_algebra(&t1());
        assert_eq!(a.dim, 1);
        a.verify().unwrap();
        let a = monoid_algebra(&c2());
        assert_eq!(a.dim, 2);
        a.verify().unwrap();
    }

    #[test]
    fn radical_dimensions() {
        // group algebras over Q are semisimple
        for g in [c2(), c3(), fixtures::s3()] {
            let a = monoid_algebra(&g);
            assert!(radical(&a).unwrap().is_empty());
        }
        // kN2 = k[v]/(v^2) x k: radical dimension 1, square zero
        let a = monoid_algebra(&n2());
        let r = radical(&a).unwrap();
        assert_eq!(r.len(), 1);
        let sq = a.mul_vec(&r[0], &r[0]);
        assert!(is_zero_vec(&sq));
        // k(RZ2I): radical dimension 1
        let a = monoid_algebra(&rz2i());
        assert_eq!(radical(&a).unwrap().len(), 1);
    }

    #[test]
    fn quotient_has_zero_radical() {
        for (name, m) in fixtures::all_fixtures() {
            let a = monoid_algebra(&m);
            let r = radical(&a).unwrap();
            let q = Quotient::new(&a, &r);
            let qa = q.as_algebra();
            assert!(
                radical(&qa).unwrap().is_empty(),
                "{name}: quotient not semisimple"
            );
        }
    }

    #[test]
    fn bruteforce_quiver_n2() {
        let m = n2();
        let q = quiver_bruteforce(&m).unwrap();
        assert_eq!(q.vertices.len(), 2);
        assert_eq!(q.total_arrows(), 1);
        let gd = green_data(&m);
        let v1 = q
            .vertices
            .iter()
            .position(|v| v.j_class == gd.j_class_of[N2_ONE])
            .unwrap();
        assert_eq!(q.arrow_count(v1, v1), 1);
    }

    #[test]
    fn bruteforce_quiver_sl2() {
        let q = quiver_bruteforce(&sl2()).unwrap();
        assert_eq!(q.vertices.len(), 2);
        assert_eq!(q.total_arrows(), 0);
    }

    #[test]
    fn bruteforce_matches_counting_on_flrb2() {
        let m = flrb2();
        let bf = quiver_bruteforce(&m).unwrap();
        let an = Analysis::new(m).unwrap();
        let q = quiver(&an, QuiverMode::AperiodicEr).unwrap();
        assert_eq!(bf.vertices.len(), q.vertices.len());
        assert_eq!(bf.arrows, q.arrows);
    }

    #[test]
    fn bruteforce_rejects_groups() {
        let err = quiver_bruteforce(&c2()).unwrap_err();
        assert!(matches!(err, MonoidError::NotAperiodic { .. }));
    }

    #[test]
    fn module_tests_unit_rep() {
        let m = n2();
        let rep = {
            // 1-dimensional unit representation: everything acts by 1? no:
            // the trivial rep sends every element to 1
            MatrixRep {
                dim: 1,
                act: vec![Mat::identity(1); 3],
                basis_labels: vec!["v".into()],
            }
        };
        let t = module_tests(&m, &rep).unwrap();
        assert!(t.is_simple);
        assert_eq!(t.end_dim, 1);
        assert_eq!(t.top_dim, 1);
        assert_eq!(t.socle_dim, 1);
    }

    #[test]
    fn module_tests_projective_n2() {
        let m = n2();
        let gd = green_data(&m);
        let tp = tilde_partitions(&m);
        let cr = classify(&m, &gd, &tp).unwrap();
        let g = maximal_subgroup(&m, &gd, N2_ONE).unwrap();
        let v = GroupModule::trivial(g);
        let p = projective_indecomposable(&m, &gd, &tp, &cr, N2_ONE, &v).unwrap();
        let t = module_tests(&m, &p).unwrap();
        assert!(!t.is_simple);
        assert_eq!(t.top_dim, 1);
        // socle is spanned by [a]
        assert_eq!(t.socle_dim, 1);
    }

    #[test]
    fn coinduced_simple_on_er_fixtures() {
        for (name, m) in fixtures::all_fixtures() {
            let gd = green_data(&m);
            let tp = tilde_partitions(&m);
            let cr = classify(&m, &gd, &tp).unwrap();
            if !cr.is_er || !cr.is_aperiodic {
                continue;
            }
            for (_, e) in gd.regular_j_representatives() {
                let g = maximal_subgroup(&m, &gd, e).unwrap();
                let v = GroupModule::trivial(g);
                let c = coinduced(&m, &gd, e, &v).unwrap();
                let t = module_tests(&m, &c).unwrap();
                assert!(t.is_simple, "{name}: Coind at {e} not simple");
                let _ = tp;
            }
        }
    }

    #[test]
    fn left_ideal_identity_on_fixtures() {
        for (name, m) in fixtures::all_fixtures() {
            for x in m.elements() {
                assert!(
                    left_ideal_radical_identity(&m, x).unwrap(),
                    "{name}: kL + rad = kL^2 + rad fails at {x}"
                );
            }
        }
    }
}
