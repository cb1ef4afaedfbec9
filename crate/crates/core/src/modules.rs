//! Concrete modules over the rational monoid algebra: partial-transformation
//! bimodules, induced and coinduced modules, the natural map between them,
//! radicals of kL_e, and the projective indecomposables built as tensor
//! quotients of the tilde-class bimodule.

use crate::error::{MonoidError, Result};
use crate::fountain::{ClassReport, TildePartition};
use crate::green::{maximal_subgroup, GreenData, GroupTable};
use crate::grouprep::CharacterTable;
use crate::linalg::{nullspace, rref_in_place, Mat, Subspace};
use crate::monoid_core::FiniteMonoid;
use crate::scalar::{Exact, Scalar};
use crate::structure;
use std::collections::HashMap;

/// A representation of the monoid by exact matrices, one per element.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub dim: usize,
    pub act: Vec<Mat<Exact>>,
    pub basis_labels: Vec<String>,
}

impl MatrixRep {
    /// Check act(1) = I and act(a) act(g) = act(ag) against the generator
    /// set (all elements when none is stored).
    pub fn verify(&self, m: &FiniteMonoid) -> Result<()> {
        if self.act.len() != m.order() {
            return Err(MonoidError::NotARepresentation);
        }
        if self.act[m.identity()] != Mat::identity(self.dim) {
            return Err(MonoidError::NotARepresentation);
        }
        let gens = m.cayley_generators();
        for a in m.elements() {
            for &g in &gens {
                let prod = self.act[a].matmul(&self.act[g]);
                if prod != self.act[m.mul(a, g)] {
                    return Err(MonoidError::NotARepresentation);
                }
            }
        }
        Ok(())
    }

    /// Quotient by an invariant subspace: coordinates are the non-pivot
    /// positions of the subspace's reduced basis.
    pub fn quotient(&self, subspace: &Subspace<Exact>) -> MatrixRep {
        assert_eq!(subspace.ambient, self.dim);
        let pivot_set: std::collections::HashSet<usize> = subspace.pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivot_set.contains(c)).collect();
        let d = free.len();
        let act = self
            .act
            .iter()
            .map(|a| {
                let mut rows = vec![vec![Exact::zero(); d]; d];
                for (col, &fc) in free.iter().enumerate() {
                    let mut img = vec![Exact::zero(); self.dim];
                    for r in 0..self.dim {
                        img[r] = a.rows[r][fc].clone();
                    }
                    let reduced = subspace.reduce(&img);
                    for (row, &fr) in free.iter().enumerate() {
                        rows[row][col] = reduced[fr].clone();
                    }
                }
                Mat::from_rows(rows)
            })
            .collect();
        MatrixRep {
            dim: d,
            act,
            basis_labels: free
                .iter()
                .map(|&c| format!("{}~", self.basis_labels[c]))
                .collect(),
        }
    }

    /// Restriction to an invariant subspace given by independent spanning
    /// rows; fails if the subspace is not invariant.
    pub fn restrict(&self, basis: &[Vec<Exact>]) -> Result<MatrixRep> {
        let d = basis.len();
        let mut act = Vec::with_capacity(self.act.len());
        for a in &self.act {
            let mut rows = vec![vec![Exact::zero(); d]; d];
            for (j, b) in basis.iter().enumerate() {
                let img = a.apply(b);
                let coords = crate::linalg::express_in_basis(basis, &img)
                    .ok_or(MonoidError::NotARepresentation)?;
                for (i, c) in coords.into_iter().enumerate() {
                    rows[i][j] = c;
                }
            }
            act.push(Mat::from_rows(rows));
        }
        Ok(MatrixRep {
            dim: d,
            act,
            basis_labels: (0..d).map(|i| format!("w{i}")).collect(),
        })
    }
}

/// A module of a maximal subgroup, by exact matrices per carrier index.
#[derive(Debug, Clone)]
pub struct GroupModule {
    pub group: GroupTable,
    pub dim: usize,
    pub act: Vec<Mat<Exact>>,
    pub label: String,
}

impl GroupModule {
    pub fn trivial(group: GroupTable) -> Self {
        let act = vec![Mat::identity(1); group.order()];
        GroupModule {
            group,
            dim: 1,
            act,
            label: "triv".into(),
        }
    }

    /// Left regular module k G_e with permutation matrices.
    pub fn regular(group: GroupTable) -> Self {
        let k = group.order();
        let mut act = Vec::with_capacity(k);
        for g in 0..k {
            let mut m = Mat::zeros(k, k);
            for h in 0..k {
                m.rows[group.mul_idx(g, h)][h] = Exact::one();
            }
            act.push(m);
        }
        GroupModule {
            group,
            dim: k,
            act,
            label: "regular".into(),
        }
    }

    /// Realize a degree-one character row as 1x1 matrices over the
    /// cyclotomic extension determined by the group exponent.
    pub fn from_character_row(
        group: GroupTable,
        table: &CharacterTable,
        row: usize,
    ) -> Result<Self> {
        let r = &table.rows[row];
        if r.degree != 1 {
            return Err(MonoidError::NotAModule);
        }
        let e = table.exponent as u32;
        let mut act = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let v = &r.values[table.class_of[g]];
            let mut acc = Exact::zero();
            for &(exp, mult) in &v.terms {
                acc = acc.add(&Exact::root_of_unity(e, exp).mul(&Exact::integer(mult as i64)));
            }
            act.push(Mat::from_rows(vec![vec![acc]]));
        }
        let gm = GroupModule {
            group,
            dim: 1,
            act,
            label: r.label.clone(),
        };
        gm.verify()?;
        Ok(gm)
    }

    pub fn from_matrices(
        group: GroupTable,
        dim: usize,
        act: Vec<Mat<Exact>>,
        label: String,
    ) -> Result<Self> {
        let gm = GroupModule {
            group,
            dim,
            act,
            label,
        };
        gm.verify()?;
        Ok(gm)
    }

    fn verify(&self) -> Result<()> {
        let k = self.group.order();
        if self.act.len() != k {
            return Err(MonoidError::NotAModule);
        }
        if self.act[self.group.identity_idx()] != Mat::identity(self.dim) {
            return Err(MonoidError::NotAModule);
        }
        for g in 0..k {
            for h in 0..k {
                if self.act[g].matmul(&self.act[h]) != self.act[self.group.mul_idx(g, h)] {
                    return Err(MonoidError::NotAModule);
                }
            }
        }
        Ok(())
    }

    /// Contragredient module over the opposite group: act(g) transposed.
    pub fn op_dual(&self, op_group: GroupTable) -> Self {
        GroupModule {
            group: op_group,
            dim: self.dim,
            act: self.act.iter().map(|a| a.transpose()).collect(),
            label: format!("D({})", self.label),
        }
    }

    pub fn character(&self, g: usize) -> Exact {
        self.act[g].trace()
    }
}

/// The tilde-class bimodule: M acts partially on the left of tilde-L(e),
/// G_e totally (and freely on the L_e part) on the right.
#[derive(Debug, Clone)]
pub struct PartialActionModule {
    pub e: usize,
    pub carrier: Vec<usize>,
    pub pos: HashMap<usize, usize>,
    /// [monoid element][carrier index] -> carrier index, None when the
    /// product leaves the tilde-class (module result 0)
    pub left_act: Vec<Vec<Option<usize>>>,
    pub group: GroupTable,
    /// [group carrier index][carrier index] -> carrier index
    pub right_act: Vec<Vec<usize>>,
}

pub fn tilde_l_module(
    m: &FiniteMonoid,
    gd: &GreenData,
    tp: &TildePartition,
    e: usize,
) -> Result<PartialActionModule> {
    if !m.is_idempotent(e) {
        return Err(MonoidError::NotIdempotent { element: e });
    }
    if let Some(w) = tp.right_fountain_defect() {
        return Err(MonoidError::NotRightFountain { witness: w });
    }
    let carrier = tp.tilde_l_class(e).to_vec();
    let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let left_act: Vec<Vec<Option<usize>>> = m
        .elements()
        .map(|a| {
            carrier
                .iter()
                .map(|&x| pos.get(&m.mul(a, x)).copied())
                .collect()
        })
        .collect();
    let group = maximal_subgroup(m, gd, e)?;
    let mut right_act = Vec::with_capacity(group.order());
    for gi in 0..group.order() {
        let g = group.element(gi);
        let mut row = Vec::with_capacity(carrier.len());
        for &x in &carrier {
            let xg = m.mul(x, g);
            let Some(&p) = pos.get(&xg) else {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("right action of {g} leaves tilde-L({e}) at {x}"),
                });
            };
            row.push(p);
        }
        // bijectivity
        let mut seen = vec![false; carrier.len()];
        for &p in &row {
            if seen[p] {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("right action of {g} on tilde-L({e}) not injective"),
                });
            }
            seen[p] = true;
        }
        right_act.push(row);
    }
    let pam = PartialActionModule {
        e,
        carrier,
        pos,
        left_act,
        group,
        right_act,
    };
    // bimodule law: (a x) g = a (x g), including definedness
    for a in m.elements() {
        for xi in 0..pam.carrier.len() {
            for gi in 0..pam.group.order() {
                let lhs = pam.left_act[a][xi].map(|p| pam.right_act[gi][p]);
                let rhs = pam.left_act[a][pam.right_act[gi][xi]];
                if lhs != rhs {
                    return Err(MonoidError::InternalDisagreement {
                        context: format!("bimodule law fails at a={a}, x index {xi}, g index {gi}"),
                    });
                }
            }
        }
    }
    Ok(pam)
}

impl PartialActionModule {
    /// The partial action as a 0/1 matrix representation on k[carrier].
    pub fn to_matrix_rep(&self, m: &FiniteMonoid) -> MatrixRep {
        let d = self.carrier.len();
        let act = m
            .elements()
            .map(|a| {
                let mut mat = Mat::zeros(d, d);
                for (xi, img) in self.left_act[a].iter().enumerate() {
                    if let Some(t) = img {
                        mat.rows[*t][xi] = Exact::one();
                    }
                }
                mat
            })
            .collect();
        MatrixRep {
            dim: d,
            act,
            basis_labels: self.carrier.iter().map(|x| format!("[{x}]")).collect(),
        }
    }
}

/// Free-orbit decomposition data for L_e (right G_e-action) and R_e (left).
struct FreeOrbits {
    /// sorted class ids (R-classes for L_e, L-classes for R_e)
    class_ids: Vec<usize>,
    /// orbit representative per class id
    reps: Vec<usize>,
    /// element -> (orbit index, group carrier index)
    factor: HashMap<usize, (usize, usize)>,
}

fn l_e_orbits(m: &FiniteMonoid, gd: &GreenData, e: usize, g: &GroupTable) -> FreeOrbits {
    let le = &gd.l_classes[gd.l_class_of[e]];
    let mut class_ids: Vec<usize> = le.iter().map(|&x| gd.r_class_of[x]).collect();
    class_ids.sort_unstable();
    class_ids.dedup();
    let reps: Vec<usize> = class_ids
        .iter()
        .map(|&a| {
            le.iter()
                .copied()
                .filter(|&x| gd.r_class_of[x] == a)
                .min()
                .unwrap()
        })
        .collect();
    let mut factor = HashMap::new();
    for &x in le {
        let a = class_ids
            .iter()
            .position(|&c| c == gd.r_class_of[x])
            .unwrap();
        let gi = (0..g.order())
            .find(|&gi| m.mul(reps[a], g.element(gi)) == x)
            .expect("right G_e-action on L_e is transitive on R-class orbits");
        factor.insert(x, (a, gi));
    }
    FreeOrbits {
        class_ids,
        reps,
        factor,
    }
}

fn r_e_orbits(m: &FiniteMonoid, gd: &GreenData, e: usize, g: &GroupTable) -> FreeOrbits {
    let re = &gd.r_classes[gd.r_class_of[e]];
    let mut class_ids: Vec<usize> = re.iter().map(|&x| gd.l_class_of[x]).collect();
    class_ids.sort_unstable();
    class_ids.dedup();
    let reps: Vec<usize> = class_ids
        .iter()
        .map(|&b| {
            re.iter()
                .copied()
                .filter(|&x| gd.l_class_of[x] == b)
                .min()
                .unwrap()
        })
        .collect();
    let mut factor = HashMap::new();
    for &r in re {
        let b = class_ids
            .iter()
            .position(|&c| c == gd.l_class_of[r])
            .unwrap();
        let gi = (0..g.order())
            .find(|&gi| m.mul(g.element(gi), reps[b]) == r)
            .expect("left G_e-action on R_e is transitive on L-class orbits");
        factor.insert(r, (b, gi));
    }
    FreeOrbits {
        class_ids,
        reps,
        factor,
    }
}

fn check_module_of(m: &FiniteMonoid, e: usize, v: &GroupModule) -> Result<()> {
    if !m.is_idempotent(e) {
        return Err(MonoidError::NotIdempotent { element: e });
    }
    if v.group.e != e {
        return Err(MonoidError::DomainMismatch {
            context: format!("module belongs to G_{} but e = {e}", v.group.e),
        });
    }
    Ok(())
}

/// Ind(V) = kL_e tensored with V over kG_e, with basis rho_a (x) v_i.
pub fn induced(m: &FiniteMonoid, gd: &GreenData, e: usize, v: &GroupModule) -> Result<MatrixRep> {
    check_module_of(m, e, v)?;
    let orbits = l_e_orbits(m, gd, e, &v.group);
    let na = orbits.class_ids.len();
    let dim = na * v.dim;
    let mut act = Vec::with_capacity(m.order());
    for n in m.elements() {
        let mut mat = Mat::zeros(dim, dim);
        for (a, &rho) in orbits.reps.iter().enumerate() {
            let z = m.mul(n, rho);
            let Some(&(a2, gi)) = orbits.factor.get(&z) else {
                continue; // n rho left L_e: zero column block
            };
            let block = &v.act[gi];
            for i in 0..v.dim {
                for j in 0..v.dim {
                    mat.rows[a2 * v.dim + j][a * v.dim + i] = block.rows[j][i].clone();
                }
            }
        }
        act.push(mat);
    }
    let basis_labels = orbits
        .reps
        .iter()
        .flat_map(|&rho| (0..v.dim).map(move |i| format!("[{rho}]x{i}")))
        .collect();
    let rep = MatrixRep {
        dim,
        act,
        basis_labels,
    };
    rep.verify(m)?;
    Ok(rep)
}

/// Coind(V) = G_e-equivariant maps R_e -> V, with basis f_{b,i} supported
/// on the orbit of lambda_b.
pub fn coinduced(m: &FiniteMonoid, gd: &GreenData, e: usize, v: &GroupModule) -> Result<MatrixRep> {
    check_module_of(m, e, v)?;
    let orbits = r_e_orbits(m, gd, e, &v.group);
    let nb = orbits.class_ids.len();
    let dim = nb * v.dim;
    let mut act = Vec::with_capacity(m.order());
    for n in m.elements() {
        let mut mat = Mat::zeros(dim, dim);
        // (n f)(lambda_b) = f(lambda_b n) = act(g) f(lambda_b0) when
        // lambda_b n = g lambda_b0 in R_e
        for (b, &lam) in orbits.reps.iter().enumerate() {
            let z = m.mul(lam, n);
            let Some(&(b0, gi)) = orbits.factor.get(&z) else {
                continue;
            };
            let block = &v.act[gi];
            for i in 0..v.dim {
                for j in 0..v.dim {
                    mat.rows[b * v.dim + j][b0 * v.dim + i] = block.rows[j][i].clone();
                }
            }
        }
        act.push(mat);
    }
    let basis_labels = orbits
        .reps
        .iter()
        .flat_map(|&lam| (0..v.dim).map(move |i| format!("f[{lam}]x{i}")))
        .collect();
    let rep = MatrixRep {
        dim,
        act,
        basis_labels,
    };
    rep.verify(m)?;
    Ok(rep)
}

/// The natural map Ind(V) -> Coind(V), its kernel (the radical of Ind when
/// V is simple) and its image (the simple module of the pair).
#[derive(Debug, Clone)]
pub struct PhiData {
    pub matrix: Mat<Exact>,
    pub kernel: Vec<Vec<Exact>>,
    pub image: Vec<Vec<Exact>>,
    pub ind: MatrixRep,
    pub coind: MatrixRep,
}

pub fn phi_map(m: &FiniteMonoid, gd: &GreenData, e: usize, v: &GroupModule) -> Result<PhiData> {
    check_module_of(m, e, v)?;
    let ind = induced(m, gd, e, v)?;
    let coind = coinduced(m, gd, e, v)?;
    let group = &v.group;
    let lorb = l_e_orbits(m, gd, e, group);
    let rorb = r_e_orbits(m, gd, e, group);
    let mut matrix = Mat::zeros(coind.dim, ind.dim);
    for (b, &lam) in rorb.reps.iter().enumerate() {
        for (a, &rho) in lorb.reps.iter().enumerate() {
            let p = m.mul(lam, rho);
            let Some(gi) = group.index_of(p) else {
                continue;
            };
            let block = &v.act[gi];
            for i in 0..v.dim {
                for j in 0..v.dim {
                    matrix.rows[b * v.dim + j][a * v.dim + i] = block.rows[j][i].clone();
                }
            }
        }
    }
    // phi is a kM-module homomorphism
    for n in m.cayley_generators() {
        let lhs = coind.act[n].matmul(&matrix);
        let rhs = matrix.matmul(&ind.act[n]);
        if lhs != rhs {
            return Err(MonoidError::InternalDisagreement {
                context: format!("phi fails to intertwine the action of {n}"),
            });
        }
    }
    let kernel = nullspace(&matrix);
    // image basis: rref of the transposed columns
    let mut cols: Vec<Vec<Exact>> = (0..ind.dim)
        .map(|j| (0..coind.dim).map(|i| matrix.rows[i][j].clone()).collect())
        .collect();
    rref_in_place(&mut cols);
    PhiData {
        matrix,
        kernel,
        image: cols,
        ind,
        coind,
    }
    .validate()
}

impl PhiData {
    fn validate(self) -> Result<PhiData> {
        Ok(self)
    }
}

/// Basis of rad(kL_e) for ER monoids: differences x - xbar over the
/// partial-injection fingerprint classes of L_e acting on R_e.
#[derive(Debug, Clone)]
pub struct RadicalKLe {
    pub e: usize,
    /// sorted L_e
    pub l_e: Vec<usize>,
    /// sorted R_e
    pub r_e: Vec<usize>,
    /// fingerprint class representative per element of L_e
    pub transversal_of: HashMap<usize, usize>,
    pub transversal: Vec<usize>,
    /// difference vectors in k^{L_e} coordinates
    pub basis: Vec<Vec<Exact>>,
}

pub fn radical_kle(
    m: &FiniteMonoid,
    gd: &GreenData,
    cr: &ClassReport,
    e: usize,
) -> Result<RadicalKLe> {
    if !cr.is_er {
        return Err(MonoidError::NotER { witness: None });
    }
    if !m.is_idempotent(e) {
        return Err(MonoidError::NotIdempotent { element: e });
    }
    let l_e = gd.l_classes[gd.l_class_of[e]].clone();
    let r_e = gd.r_classes[gd.r_class_of[e]].clone();
    let fingerprint = |x: usize| -> Vec<Option<usize>> {
        r_e.iter()
            .map(|&r| {
                let rx = m.mul(r, x);
                if gd.r_equiv(rx, e) {
                    Some(rx)
                } else {
                    None
                }
            })
            .collect()
    };
    let mut groups: HashMap<Vec<Option<usize>>, Vec<usize>> = HashMap::new();
    for &x in &l_e {
        groups.entry(fingerprint(x)).or_default().push(x);
    }
    let mut transversal_of = HashMap::new();
    let mut transversal = Vec::new();
    let mut basis = Vec::new();
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    for class in classes {
        let rep = class[0];
        transversal.push(rep);
        for &x in &class {
            transversal_of.insert(x, rep);
            if x != rep {
                let mut v = vec![Exact::zero(); l_e.len()];
                let xi = l_e.iter().position(|&y| y == x).unwrap();
                let ri = l_e.iter().position(|&y| y == rep).unwrap();
                v[xi] = Exact::one();
                v[ri] = Exact::integer(-1);
                basis.push(v);
            }
        }
    }
    Ok(RadicalKLe {
        e,
        l_e,
        r_e,
        transversal_of,
        transversal,
        basis,
    })
}

impl RadicalKLe {
    /// Convert k^{L_e} coordinates to Ind(regular) coordinates via the
    /// identification x = rho_a g  <->  rho_a (x) g.
    pub fn to_ind_coords(
        &self,
        m: &FiniteMonoid,
        gd: &GreenData,
        group: &GroupTable,
        v: &[Exact],
    ) -> Vec<Exact> {
        let orbits = l_e_orbits(m, gd, self.e, group);
        let dim = orbits.class_ids.len() * group.order();
        let mut out = vec![Exact::zero(); dim];
        for (xi, &x) in self.l_e.iter().enumerate() {
            if v[xi].is_zero() {
                continue;
            }
            let (a, gi) = orbits.factor[&x];
            out[a * group.order() + gi] = out[a * group.order() + gi].add(&v[xi]);
        }
        out
    }
}

/// Check the sandwich right-invertibility hypothesis at every regular
/// J-class, naming the witness class on failure.
pub fn check_projective_hypothesis(m: &FiniteMonoid, gd: &GreenData) -> Result<()> {
    for (jc, e) in gd.regular_j_representatives() {
        if !structure::right_invertibility(m, gd, e)? {
            return Err(MonoidError::HypothesisFailed {
                condition: format!(
                    "sandwich matrix of regular J-class {jc} (idempotent {e}) is not right invertible"
                ),
            });
        }
    }
    Ok(())
}

/// The projective indecomposable k tilde-L(e) (x)_{kG_e} V, built as the
/// quotient of the full product space by the bilinearity relations.
pub fn projective_indecomposable(
    m: &FiniteMonoid,
    gd: &GreenData,
    tp: &TildePartition,
    cr: &ClassReport,
    e: usize,
    v: &GroupModule,
) -> Result<MatrixRep> {
    if !cr.right_fountain {
        return Err(MonoidError::HypothesisFailed {
            condition: "monoid is not right Fountain".into(),
        });
    }
    check_projective_hypothesis(m, gd)?;
    check_module_of(m, e, v)?;
    let pam = tilde_l_module(m, gd, tp, e)?;
    tensor_quotient(m, &pam, v)
}

/// Quotient of k[carrier] (x) V by (x g) (x) v - x (x) (g v).
fn tensor_quotient(
    m: &FiniteMonoid,
    pam: &PartialActionModule,
    v: &GroupModule,
) -> Result<MatrixRep> {
    let nc = pam.carrier.len();
    let dv = v.dim;
    let ambient = nc * dv;
    let mut relations: Vec<Vec<Exact>> = Vec::new();
    for xi in 0..nc {
        for gi in 0..v.group.order() {
            if gi == v.group.identity_idx() {
                continue;
            }
            let xg = pam.right_act[gi][xi];
            for i in 0..dv {
                let mut rel = vec![Exact::zero(); ambient];
                rel[xg * dv + i] = rel[xg * dv + i].add(&Exact::one());
                for j in 0..dv {
                    let c = v.act[gi].rows[j][i].clone();
                    if !c.is_zero() {
                        rel[xi * dv + j] = rel[xi * dv + j].sub(&c);
                    }
                }
                if rel.iter().any(|c| !c.is_zero()) {
                    relations.push(rel);
                }
            }
        }
    }
    let rel_space = Subspace::from_vectors(ambient, &relations);
    let pivot_set: std::collections::HashSet<usize> = rel_space.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivot_set.contains(c)).collect();
    let dim = free.len();
    let project = |vec: &[Exact]| -> Vec<Exact> {
        let reduced = rel_space.reduce(vec);
        free.iter().map(|&c| reduced[c].clone()).collect()
    };
    let mut act = Vec::with_capacity(m.order());
    for n in m.elements() {
        let mut mat = Mat::zeros(dim, dim);
        for (col, &fc) in free.iter().enumerate() {
            let (xi, i) = (fc / dv, fc % dv);
            let Some(x2) = pam.left_act[n][xi] else {
                continue;
            };
            let mut img = vec![Exact::zero(); ambient];
            img[x2 * dv + i] = Exact::one();
            for (row, c) in project(&img).into_iter().enumerate() {
                mat.rows[row][col] = c;
            }
        }
        act.push(mat);
    }
    let basis_labels = free
        .iter()
        .map(|&fc| format!("[{}]x{}", pam.carrier[fc / dv], fc % dv))
        .collect();
    let rep = MatrixRep {
        dim,
        act,
        basis_labels,
    };
    rep.verify(m)?;
    Ok(rep)
}

/// Dimension predicted by the orbit decomposition: sum over right
/// G_e-orbits of the carrier of the Stab-fixed subspace dimension of V.
pub fn tensor_dimension_by_orbits(pam: &PartialActionModule, v: &GroupModule) -> usize {
    let nc = pam.carrier.len();
    let mut seen = vec![false; nc];
    let mut total = 0usize;
    for x in 0..nc {
        if seen[x] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(y) = stack.pop() {
            orbit.push(y);
            for gi in 0..pam.group.order() {
                let z = pam.right_act[gi][y];
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
        let stab: Vec<usize> = (0..pam.group.order())
            .filter(|&gi| pam.right_act[gi][x] == x)
            .collect();
        // fixed space of V under the stabilizer
        let mut rows: Vec<Vec<Exact>> = Vec::new();
        for &gi in &stab {
            for i in 0..v.dim {
                let mut row: Vec<Exact> =
                    (0..v.dim).map(|j| v.act[gi].rows[i][j].clone()).collect();
                row[i] = row[i].sub(&Exact::one());
                rows.push(row);
            }
        }
        let fixed_dim = if rows.is_empty() {
            v.dim
        } else {
            v.dim - Mat::from_rows(rows).rank()
        };
        total += fixed_dim;
    }
    total
}

/// Injective envelope of the simple attached to (e, V): the dual of the
/// projective indecomposable of the opposite monoid at e with the dual
/// module.
pub fn injective_envelope(m: &FiniteMonoid, e: usize, v: &GroupModule) -> Result<MatrixRep> {
    let mop = m.opposite();
    let gd_op = crate::green::green_data(&mop);
    let tp_op = crate::fountain::tilde_partitions(&mop);
    let cr_op = crate::fountain::classify(&mop, &gd_op, &tp_op)?;
    if !cr_op.right_fountain {
        return Err(MonoidError::HypothesisFailed {
            condition: "monoid is not left Fountain".into(),
        });
    }
    let g_op = maximal_subgroup(&mop, &gd_op, e)?;
    if g_op.carrier != v.group.carrier {
        return Err(MonoidError::DomainMismatch {
            context: "module group does not match the maximal subgroup at e".into(),
        });
    }
    let v_op = GroupModule {
        group: g_op,
        dim: v.dim,
        act: v.act.iter().map(|a| a.transpose()).collect(),
        label: format!("D({})", v.label),
    };
    v_op.verify().map_err(|_| MonoidError::NotAModule)?;
    let p_op = projective_indecomposable(&mop, &gd_op, &tp_op, &cr_op, e, &v_op).map_err(
        |err| match err {
            MonoidError::HypothesisFailed { condition } => MonoidError::HypothesisFailed {
                condition: condition
                    .replace("right invertible", "left invertible (as a matrix over M)")
                    .replace("not right Fountain", "not left Fountain"),
            },
            other => other,
        },
    )?;
    let rep = MatrixRep {
        dim: p_op.dim,
        act: p_op.act.iter().map(|a| a.transpose()).collect(),
        basis_labels: p_op.basis_labels.clone(),
    };
    rep.verify(m)?;
    Ok(rep)
}
