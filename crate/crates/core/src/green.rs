//! Green's relations, idempotents, maximal subgroups and inverse pairs.

use crate::error::{MonoidError, Result};
use crate::monoid_core::FiniteMonoid;
use std::collections::HashMap;

/// R/L/J class partitions, their reachability preorders, and regularity data.
///
/// Class ids are canonical: classes are numbered by their minimum element.
/// `x <=_R y` holds iff `x` lies in `yM`, i.e. `y` reaches `x` in the right
/// Cayley graph; the stored orders are on class ids.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub r_class_of: Vec<usize>,
    pub l_class_of: Vec<usize>,
    pub j_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    r_leq: Vec<Vec<u64>>,
    l_leq: Vec<Vec<u64>>,
    j_leq: Vec<Vec<u64>>,
    pub regular_j: Vec<bool>,
    pub idempotents: Vec<usize>,
}

fn bit_get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

/// Strongly connected components of the graph on 0..n with neighbor sets
/// produced by `succ`.  Returned as (class_of, classes) with classes
/// renumbered by minimum element.
fn scc<F: Fn(usize, &mut Vec<usize>)>(n: usize, succ: F) -> (Vec<usize>, Vec<Vec<usize>>) {
    // iterative Tarjan
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp_of = vec![UNSET; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;
    let mut neigh: Vec<usize> = Vec::new();

    #[derive(Clone)]
    struct Frame {
        v: usize,
        succs: Vec<usize>,
        next: usize,
    }

    for start in 0..n {
        if index[start] != UNSET {
            continue;
        }
        let mut call: Vec<Frame> = Vec::new();
        neigh.clear();
        succ(start, &mut neigh);
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        call.push(Frame {
            v: start,
            succs: neigh.clone(),
            next: 0,
        });
        while let Some(frame) = call.last_mut() {
            if frame.next < frame.succs.len() {
                let w = frame.succs[frame.next];
                frame.next += 1;
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    neigh.clear();
                    succ(w, &mut neigh);
                    call.push(Frame {
                        v: w,
                        succs: neigh.clone(),
                        next: 0,
                    });
                } else if on_stack[w] {
                    let v = frame.v;
                    low[v] = low[v].min(index[w]);
                }
            } else {
                let v = frame.v;
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
                call.pop();
                if let Some(parent) = call.last() {
                    let pv = parent.v;
                    low[pv] = low[pv].min(low[v]);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    for (ci, comp) in comps.iter().enumerate() {
        for &x in comp {
            comp_of[x] = ci;
        }
    }
    (comp_of, comps)
}

/// Reachability closure on the condensation: leq[c] = bitset of classes d
/// with d reachable from c (i.e. d <= c in the ideal order).
fn condensation_reach<F: Fn(usize, &mut Vec<usize>)>(
    n: usize,
    class_of: &[usize],
    classes: &[Vec<usize>],
    succ: F,
) -> Vec<Vec<u64>> {
    let k = classes.len();
    let words = k.div_ceil(64);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut neigh = Vec::new();
    for v in 0..n {
        neigh.clear();
        succ(v, &mut neigh);
        let cv = class_of[v];
        for &w in &neigh {
            let cw = class_of[w];
            if cw != cv {
                edges[cv].push(cw);
            }
        }
    }
    for e in edges.iter_mut() {
        e.sort_unstable();
        e.dedup();
    }
    let mut reach: Vec<Vec<u64>> = vec![vec![0u64; words]; k];
    let mut done = vec![false; k];
    for c in 0..k {
        if done[c] {
            continue;
        }
        // iterative post-order
        let mut stack = vec![(c, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == 0 {
                bit_set(&mut reach[v], v);
            }
            if *next < edges[v].len() {
                let w = edges[v][*next];
                *next += 1;
                if !done[w] && !stack.iter().any(|&(x, _)| x == w) {
                    stack.push((w, 0));
                }
            } else {
                for i in 0..edges[v].len() {
                    let w = edges[v][i];
                    for word in 0..words {
                        let b = reach[w][word];
                        reach[v][word] |= b;
                    }
                }
                done[v] = true;
                stack.pop();
            }
        }
    }
    reach
}

/// Compute the full Green structure of `m`.
pub fn green_data(m: &FiniteMonoid) -> GreenData {
    let n = m.order();
    let gens = m.cayley_generators();
    let right = |v: usize, out: &mut Vec<usize>| {
        out.extend(gens.iter().map(|&g| m.mul(v, g)));
    };
    let left = |v: usize, out: &mut Vec<usize>| {
        out.extend(gens.iter().map(|&g| m.mul(g, v)));
    };
    let both = |v: usize, out: &mut Vec<usize>| {
        for &g in &gens {
            out.push(m.mul(v, g));
            out.push(m.mul(g, v));
        }
    };
    let (r_class_of, r_classes) = scc(n, right);
    let (l_class_of, l_classes) = scc(n, left);
    let (j_class_of, j_classes) = scc(n, both);
    let r_leq = condensation_reach(n, &r_class_of, &r_classes, right);
    let l_leq = condensation_reach(n, &l_class_of, &l_classes, left);
    let j_leq = condensation_reach(n, &j_class_of, &j_classes, both);
    let idempotents = m.idempotents();
    let mut regular_j = vec![false; j_classes.len()];
    for &e in &idempotents {
        regular_j[j_class_of[e]] = true;
    }
    GreenData {
        r_class_of,
        l_class_of,
        j_class_of,
        r_classes,
        l_classes,
        j_classes,
        r_leq,
        l_leq,
        j_leq,
        regular_j,
        idempotents,
    }
}

impl GreenData {
    /// x <=_R y on elements (x in yM).
    pub fn r_le(&self, x: usize, y: usize) -> bool {
        bit_get(&self.r_leq[self.r_class_of[y]], self.r_class_of[x])
    }

    pub fn l_le(&self, x: usize, y: usize) -> bool {
        bit_get(&self.l_leq[self.l_class_of[y]], self.l_class_of[x])
    }

    pub fn j_le(&self, x: usize, y: usize) -> bool {
        bit_get(&self.j_leq[self.j_class_of[y]], self.j_class_of[x])
    }

    pub fn r_equiv(&self, x: usize, y: usize) -> bool {
        self.r_class_of[x] == self.r_class_of[y]
    }

    pub fn l_equiv(&self, x: usize, y: usize) -> bool {
        self.l_class_of[x] == self.l_class_of[y]
    }

    pub fn j_equiv(&self, x: usize, y: usize) -> bool {
        self.j_class_of[x] == self.j_class_of[y]
    }

    pub fn is_regular_element(&self, x: usize) -> bool {
        self.regular_j[self.j_class_of[x]]
    }

    /// Least idempotent representative of each regular J-class, ordered by
    /// J-class id.
    pub fn regular_j_representatives(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (jc, regular) in self.regular_j.iter().enumerate() {
            if !regular {
                continue;
            }
            let e = *self
                .idempotents
                .iter()
                .find(|&&e| self.j_class_of[e] == jc)
                .expect("regular class has an idempotent");
            out.push((jc, e));
        }
        out
    }

    /// Minimal classes of the L-order; these are the minimal left ideals.
    pub fn minimal_l_classes(&self) -> Vec<usize> {
        (0..self.l_classes.len())
            .filter(|&c| (0..self.l_classes.len()).all(|d| d == c || !bit_get(&self.l_leq[c], d)))
            .collect()
    }
}

/// The maximal subgroup G_e = J_e intersect eMe at an idempotent e.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub carrier: Vec<usize>,
    pub e: usize,
    mult: Vec<usize>,
    pub inv: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn identity_idx(&self) -> usize {
        self.pos[&self.e]
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.carrier.len() + j]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn element(&self, i: usize) -> usize {
        self.carrier[i]
    }

    pub fn index_of(&self, element: usize) -> Option<usize> {
        self.pos.get(&element).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier.len() == 1
    }

    /// Order of the element at carrier index i.
    pub fn element_order(&self, i: usize) -> usize {
        let id = self.identity_idx();
        let mut t = i;
        let mut k = 1;
        while t != id {
            t = self.mul_idx(t, i);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1usize, |acc, i| {
            let o = self.element_order(i);
            acc / gcd(acc, o) * o
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Compute G_e, verifying the group axioms on the carrier.
pub fn maximal_subgroup(m: &FiniteMonoid, gd: &GreenData, e: usize) -> Result<GroupTable> {
    if !m.is_idempotent(e) {
        return Err(MonoidError::NotIdempotent { element: e });
    }
    let je = gd.j_class_of[e];
    let carrier: Vec<usize> = m
        .elements()
        .filter(|&x| gd.j_class_of[x] == je && m.mul(m.mul(e, x), e) == x)
        .collect();
    let k = carrier.len();
    let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut mult = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            let p = m.mul(carrier[i], carrier[j]);
            let Some(&pi) = pos.get(&p) else {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("G_{e} not closed under multiplication"),
                });
            };
            mult[i * k + j] = pi;
        }
    }
    let ei = pos[&e];
    let mut inv = vec![usize::MAX; k];
    for i in 0..k {
        match (0..k).find(|&j| mult[i * k + j] == ei && mult[j * k + i] == ei) {
            Some(j) => inv[i] = j,
            None => {
                return Err(MonoidError::InternalDisagreement {
                    context: format!("element {} of G_{e} has no inverse", carrier[i]),
                })
            }
        }
    }
    Ok(GroupTable {
        carrier,
        e,
        mult,
        inv,
        pos,
    })
}

/// An inverse pair (x, y) with xyx = x, yxy = y, xy = e, yx = f, chosen
/// lexicographically least.
pub fn inverse_pair(
    m: &FiniteMonoid,
    gd: &GreenData,
    e: usize,
    f: usize,
) -> Result<(usize, usize)> {
    for z in [e, f] {
        if !m.is_idempotent(z) {
            return Err(MonoidError::NotIdempotent { element: z });
        }
    }
    if !gd.j_equiv(e, f) {
        return Err(MonoidError::NotJEquivalent { e, f });
    }
    // any valid x satisfies x = ex = xf, so x in R_e intersect L_f
    for x in m.elements() {
        if !(gd.r_equiv(x, e) && gd.l_equiv(x, f)) {
            continue;
        }
        for y in m.elements() {
            if m.mul(x, y) == e
                && m.mul(y, x) == f
                && m.mul(m.mul(x, y), x) == x
                && m.mul(m.mul(y, x), y) == y
            {
                return Ok((x, y));
            }
        }
    }
    Err(MonoidError::InternalDisagreement {
        context: format!("no inverse pair found for J-equivalent idempotents {e}, {f}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, *};

    /// Direct ideal comparison oracle: x R y iff xM = yM, etc.
    fn ideal_classes(m: &FiniteMonoid) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = m.order();
        let right_ideal = |x: usize| -> Vec<bool> {
            let mut v = vec![false; n];
            for a in m.elements() {
                v[m.mul(x, a)] = true;
            }
            v
        };
        let left_ideal = |x: usize| -> Vec<bool> {
            let mut v = vec![false; n];
            for a in m.elements() {
                v[m.mul(a, x)] = true;
            }
            v
        };
        let two_ideal = |x: usize| -> Vec<bool> {
            let mut v = vec![false; n];
            for a in m.elements() {
                for b in m.elements() {
                    v[m.mul(m.mul(a, x), b)] = true;
                }
            }
            v
        };
        let group = |f: &dyn Fn(usize) -> Vec<bool>| -> Vec<Vec<usize>> {
            let mut seen: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
            for x in 0..n {
                let key = f(x);
                match seen.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, v)) => v.push(x),
                    None => seen.push((key, vec![x])),
                }
            }
            let mut out: Vec<Vec<usize>> = seen.into_iter().map(|(_, v)| v).collect();
            out.sort_by_key(|c| c[0]);
            out
        };
        (group(&right_ideal), group(&left_ideal), group(&two_ideal))
    }

    #[test]
    fn trivial_monoid_single_classes() {
        let m = t1();
        let gd = green_data(&m);
        assert_eq!(gd.r_classes.len(), 1);
        assert_eq!(gd.l_classes.len(), 1);
        assert_eq!(gd.j_classes.len(), 1);
    }

    #[test]
    fn rz2i_classes_match_ideal_oracle() {
        let m = rz2i();
        let gd = green_data(&m);
        let (r, l, j) = ideal_classes(&m);
        assert_eq!(gd.r_classes, r);
        assert_eq!(gd.l_classes, l);
        assert_eq!(gd.j_classes, j);
        // J-classes {1} and {e,f}; inside: one R-class {e,f}, two L-classes
        assert_eq!(gd.j_classes, vec![vec![RZ2I_ONE], vec![RZ2I_E, RZ2I_F]]);
        assert!(gd.r_equiv(RZ2I_E, RZ2I_F));
        assert!(!gd.l_equiv(RZ2I_E, RZ2I_F));
    }

    #[test]
    fn n2_classes_match_ideal_oracle() {
        let m = n2();
        let gd = green_data(&m);
        let (r, l, j) = ideal_classes(&m);
        assert_eq!(gd.r_classes, r);
        assert_eq!(gd.l_classes, l);
        assert_eq!(gd.j_classes, j);
        assert_eq!(gd.j_classes.len(), 3);
        assert!(!gd.regular_j[gd.j_class_of[N2_A]]);
        assert!(gd.regular_j[gd.j_class_of[N2_ONE]]);
        assert!(gd.regular_j[gd.j_class_of[N2_Z]]);
    }

    #[test]
    fn fixture_classes_match_ideal_oracle() {
        for (name, m) in fixtures::all_fixtures() {
            let gd = green_data(&m);
            let (r, l, j) = ideal_classes(&m);
            assert_eq!(gd.r_classes, r, "{name} R");
            assert_eq!(gd.l_classes, l, "{name} L");
            assert_eq!(gd.j_classes, j, "{name} J");
        }
    }

    #[test]
    fn stability_on_fixtures() {
        for (name, m) in fixtures::all_fixtures() {
            let gd = green_data(&m);
            for x in m.elements() {
                for y in m.elements() {
                    let xy = m.mul(x, y);
                    assert_eq!(
                        gd.j_equiv(xy, x),
                        gd.r_equiv(xy, x),
                        "{name}: stability (R) at {x},{y}"
                    );
                    assert_eq!(
                        gd.j_equiv(xy, y),
                        gd.l_equiv(xy, y),
                        "{name}: stability (L) at {x},{y}"
                    );
                }
            }
        }
    }

    #[test]
    fn maximal_subgroups() {
        let m = sl2();
        let gd = green_data(&m);
        let g = maximal_subgroup(&m, &gd, 1).unwrap();
        assert_eq!(g.carrier, vec![1]);

        let m = c2();
        let gd = green_data(&m);
        let g = maximal_subgroup(&m, &gd, 0).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.exponent(), 2);

        // N2C2 at e = (0_N2, 1_C2): index N2_Z * 2 + 0
        let m = n2c2();
        let gd = green_data(&m);
        let e = N2_Z * 2;
        let g = maximal_subgroup(&m, &gd, e).unwrap();
        assert_eq!(g.carrier, vec![N2_Z * 2, N2_Z * 2 + 1]);

        let err = maximal_subgroup(&n2(), &green_data(&n2()), N2_A).unwrap_err();
        assert!(matches!(err, MonoidError::NotIdempotent { element: N2_A }));
    }

    #[test]
    fn inverse_pairs() {
        let m = rz2i();
        let gd = green_data(&m);
        // e = f: (e, e)
        let (x, y) = inverse_pair(&m, &gd, RZ2I_E, RZ2I_E).unwrap();
        assert_eq!((x, y), (RZ2I_E, RZ2I_E));
        // distinct right zeros
        let (x, y) = inverse_pair(&m, &gd, RZ2I_E, RZ2I_F).unwrap();
        assert_eq!(m.mul(x, y), RZ2I_E);
        assert_eq!(m.mul(y, x), RZ2I_F);
        assert_eq!(m.mul(m.mul(x, y), x), x);
        assert_eq!(m.mul(m.mul(y, x), y), y);

        let m = n2();
        let gd = green_data(&m);
        let err = inverse_pair(&m, &gd, N2_ONE, N2_Z).unwrap_err();
        assert!(matches!(err, MonoidError::NotJEquivalent { .. }));
    }

    #[test]
    fn conjugation_isomorphism_between_local_monoids() {
        // z -> yzx maps eMe to fMf isomorphically, restricting to G_e -> G_f
        let m = rz2i();
        let gd = green_data(&m);
        let (x, y) = inverse_pair(&m, &gd, RZ2I_E, RZ2I_F).unwrap();
        let eme: Vec<usize> = m
            .elements()
            .filter(|&z| m.mul(m.mul(RZ2I_E, z), RZ2I_E) == z)
            .collect();
        let phi = |z: usize| m.mul(m.mul(y, z), x);
        let mut images: Vec<usize> = eme.iter().map(|&z| phi(z)).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), eme.len());
        for &z in &images {
            assert_eq!(m.mul(m.mul(RZ2I_F, z), RZ2I_F), z);
        }
        for &a in &eme {
            for &b in &eme {
                assert_eq!(phi(m.mul(a, b)), m.mul(phi(a), phi(b)));
            }
        }
    }

    #[test]
    fn j_squared_regularity() {
        // a J-class J with J^2 meeting J is regular
        for (name, m) in fixtures::all_fixtures() {
            let gd = green_data(&m);
            for (jc, class) in gd.j_classes.iter().enumerate() {
                let squared_meets = class
                    .iter()
                    .any(|&x| class.iter().any(|&y| gd.j_class_of[m.mul(x, y)] == jc));
                if squared_meets {
                    assert!(
                        gd.regular_j[jc],
                        "{name}: J^2 cap J nonempty but not regular"
                    );
                }
            }
        }
    }

    #[test]
    fn regular_iff_idempotent_in_r_and_l() {
        for (name, m) in fixtures::all_fixtures() {
            let gd = green_data(&m);
            for x in m.elements() {
                let reg = m.elements().any(|n| m.mul(m.mul(x, n), x) == x);
                let l_has = gd.idempotents.iter().any(|&e| gd.l_equiv(e, x));
                let r_has = gd.idempotents.iter().any(|&e| gd.r_equiv(e, x));
                assert_eq!(reg, l_has, "{name} elt {x}");
                assert_eq!(reg, r_has, "{name} elt {x}");
                assert_eq!(reg, gd.is_regular_element(x), "{name} elt {x}");
            }
        }
    }
}
