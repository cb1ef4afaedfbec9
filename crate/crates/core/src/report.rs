//! Analysis reports: deterministic JSON (sorted keys throughout) and DOT
//! output for quivers.

use crate::error::{MonoidError, Result};
use crate::green::maximal_subgroup;
use crate::grouprep::character_table;
use crate::modp::SplitMix64;
use crate::modules::{self, GroupModule};
use crate::oracle;
use crate::quiver::{quiver, Analysis, Quiver, QuiverMode};
use crate::structure;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn input_digest(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    format!("{:x}", h.finalize())
}

/// Base report: order, classification with witnesses, per-J-class data.
pub fn base_report(an: &Analysis, digest: &str, seed: Option<u64>) -> Result<Value> {
    let m = &an.m;
    let gd = &an.gd;
    let cr = &an.cr;
    let mut j_classes = Vec::new();
    for (jc, class) in gd.j_classes.iter().enumerate() {
        let regular = gd.regular_j[jc];
        let mut entry = json!({
            "id": jc,
            "size": class.len(),
            "regular": regular,
        });
        if regular {
            let e = *gd
                .idempotents
                .iter()
                .find(|&&e| gd.j_class_of[e] == jc)
                .expect("regular class has an idempotent");
            let g = maximal_subgroup(m, gd, e)?;
            let p = structure::sandwich_matrix(m, gd, e)?;
            entry["idempotent"] = json!(e);
            entry["group_order"] = json!(g.order());
            entry["sandwich"] = json!({
                "rows": p.rows.len(),
                "cols": p.cols.len(),
                "right_invertible": structure::right_invertible(&p, m),
                "left_invertible": structure::left_invertible(&p, m),
            });
        }
        j_classes.push(entry);
    }
    let flags = json!({
        "right_fountain": cr.right_fountain,
        "left_fountain": cr.left_fountain,
        "fountain": cr.fountain,
        "is_er": cr.is_er,
        "is_el": cr.is_el,
        "is_block_group": cr.is_block_group,
        "is_aperiodic": cr.is_aperiodic,
    });
    Ok(json!({
        "input_digest": digest,
        "monoid_order": m.order(),
        "identity": m.identity(),
        "classification": {
            "flags": flags,
            "witnesses": cr.witnesses,
        },
        "j_classes": j_classes,
        "seed": seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
    }))
}

pub fn quiver_value(q: &Quiver) -> Value {
    let vertices: Vec<Value> = q
        .vertices
        .iter()
        .map(|v| {
            json!({
                "j_class": v.j_class,
                "idempotent": v.idempotent,
                "irr": v.irr_label,
                "label": format!("J{}:{}", v.j_class, v.irr_label),
            })
        })
        .collect();
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|(&(s, t), &m)| json!({"src": s, "dst": t, "mult": m}))
        .collect();
    json!({
        "mode": q.mode,
        "vertices": vertices,
        "arrows": arrows,
    })
}

/// DOT output: one node per vertex labeled "J<idx>:<irr>", one edge per
/// arrow with a mult attribute; `repeat_edges` additionally duplicates each
/// edge to its multiplicity.
pub fn quiver_dot(q: &Quiver) -> String {
    quiver_dot_with(q, false)
}

pub fn quiver_dot_with(q: &Quiver, repeat_edges: bool) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in &q.vertices {
        out.push_str(&format!("  \"J{}:{}\";\n", v.j_class, v.irr_label));
    }
    for (&(s, t), &mult) in &q.arrows {
        let sv = &q.vertices[s];
        let tv = &q.vertices[t];
        let copies = if repeat_edges { mult } else { 1 };
        for _ in 0..copies {
            out.push_str(&format!(
                "  \"J{}:{}\" -> \"J{}:{}\" [mult={}];\n",
                sv.j_class, sv.irr_label, tv.j_class, tv.irr_label, mult
            ));
        }
    }
    out.push_str("}\n");
    out
}

/// Sandwich section: matrices and verdicts for the selected regular
/// J-classes (all of them when `jclass` is None).
pub fn sandwich_section(an: &Analysis, jclass: Option<usize>) -> Result<Value> {
    let m = &an.m;
    let gd = &an.gd;
    let mut out = Vec::new();
    for (jc, e) in gd.regular_j_representatives() {
        if jclass.is_some_and(|sel| sel != jc) {
            continue;
        }
        let p = structure::sandwich_matrix(m, gd, e)?;
        let entries: Vec<Vec<Value>> = p
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match x {
                        Some(g) => json!(g),
                        None => Value::Null,
                    })
                    .collect()
            })
            .collect();
        out.push(json!({
            "j_class": jc,
            "idempotent": e,
            "group_order": p.group.order(),
            "row_l_classes": p.rows,
            "col_r_classes": p.cols,
            "row_reps": p.row_reps,
            "col_reps": p.col_reps,
            "entries": entries,
            "right_invertible": structure::right_invertible(&p, m),
            "left_invertible": structure::left_invertible(&p, m),
        }));
    }
    if out.is_empty() {
        return Err(MonoidError::MissingSection {
            name: format!("sandwich (no regular J-class {:?})", jclass),
        });
    }
    Ok(Value::Array(out))
}

/// Projective indecomposables for the selected idempotent (or all regular
/// representatives), one entry per realizable irreducible of the maximal
/// subgroup.  Degree-one characters are realized exactly; higher-degree
/// irreducibles are listed but not materialized.
pub fn projectives_section(an: &Analysis, idempotent: Option<usize>) -> Result<Value> {
    let m = &an.m;
    let gd = &an.gd;
    let tp = &an.tp;
    let cr = &an.cr;
    let mut out = Vec::new();
    let reps: Vec<usize> = match idempotent {
        Some(e) => vec![e],
        None => gd
            .regular_j_representatives()
            .iter()
            .map(|&(_, e)| e)
            .collect(),
    };
    for e in reps {
        if !m.is_idempotent(e) {
            return Err(MonoidError::NotIdempotent { element: e });
        }
        let g = maximal_subgroup(m, gd, e)?;
        let bound = 2 * g.order() as u64 * m.order() as u64;
        let table = character_table(&g, bound)?;
        for (ri, row) in table.rows.iter().enumerate() {
            if row.degree != 1 {
                out.push(json!({
                    "idempotent": e,
                    "j_class": gd.j_class_of[e],
                    "irr": row.label,
                    "degree": row.degree,
                    "realized": false,
                    "note": "only degree-one characters are realized as explicit matrices",
                }));
                continue;
            }
            let v = GroupModule::from_character_row(g.clone(), &table, ri)?;
            let p = modules::projective_indecomposable(m, gd, tp, cr, e, &v)?;
            let matrices: Vec<Vec<Vec<String>>> = p
                .act
                .iter()
                .map(|mat| {
                    mat.rows
                        .iter()
                        .map(|r| r.iter().map(|x| format!("{x}")).collect())
                        .collect()
                })
                .collect();
            out.push(json!({
                "idempotent": e,
                "j_class": gd.j_class_of[e],
                "irr": row.label,
                "degree": row.degree,
                "realized": true,
                "dim": p.dim,
                "basis": p.basis_labels,
                "matrices": matrices,
            }));
        }
    }
    Ok(Value::Array(out))
}

/// Oracle cross-checks for --verify: each check contributes its number of
/// item-level agreements.
pub fn oracle_section(an: &Analysis, seed: u64) -> Value {
    let m = &an.m;
    let gd = &an.gd;
    let tp = &an.tp;
    let cr = &an.cr;
    let mut checks = Vec::new();
    let mut agreements = 0usize;
    let mut disagreements = 0usize;

    // right-stabilizer route vs tilde partition, every element
    {
        let mut ok = 0;
        let mut bad = 0;
        for x in m.elements() {
            let class_has = !tp.tilde_l_idempotents[tp.tilde_l_class_of[x]].is_empty();
            let (has, _) = crate::fountain::right_stabilizer_check(m, x);
            if has == class_has {
                ok += 1;
            } else {
                bad += 1;
            }
        }
        agreements += ok;
        disagreements += bad;
        checks.push(json!({"name": "stabilizer-vs-tilde", "agreements": ok, "disagreements": bad}));
    }

    // quiver counting vs brute-force linear algebra
    if cr.is_aperiodic && cr.is_er {
        let mut ok = 0;
        let mut bad = 0;
        match (
            quiver(an, QuiverMode::AperiodicEr),
            oracle::quiver_bruteforce(m),
        ) {
            (Ok(q1), Ok(q2)) => {
                let n = q1.vertices.len();
                for s in 0..n {
                    for t in 0..n {
                        if q1.arrow_count(s, t) == q2.arrow_count(s, t) {
                            ok += 1;
                        } else {
                            bad += 1;
                        }
                    }
                }
            }
            _ => bad += 1,
        }
        agreements += ok;
        disagreements += bad;
        checks
            .push(json!({"name": "quiver-vs-bruteforce", "agreements": ok, "disagreements": bad}));
    }

    // ER radical of kL_e vs the kernel of the natural map
    if cr.is_er {
        let mut ok = 0;
        let mut bad = 0;
        for &e in &gd.idempotents {
            let agreed = (|| -> Result<bool> {
                let g = maximal_subgroup(m, gd, e)?;
                let rad = modules::radical_kle(m, gd, cr, e)?;
                let reg = GroupModule::regular(g.clone());
                let phi = modules::phi_map(m, gd, e, &reg)?;
                let vecs: Vec<Vec<crate::scalar::Exact>> = rad
                    .basis
                    .iter()
                    .map(|v| rad.to_ind_coords(m, gd, &g, v))
                    .collect();
                let s1 = crate::linalg::Subspace::from_vectors(phi.ind.dim, &vecs);
                let s2 = crate::linalg::Subspace::from_vectors(phi.ind.dim, &phi.kernel);
                Ok(s1 == s2 && rad.basis.len() == rad.l_e.len() - rad.r_e.len())
            })()
            .unwrap_or(false);
            if agreed {
                ok += 1;
            } else {
                bad += 1;
            }
        }
        agreements += ok;
        disagreements += bad;
        checks
            .push(json!({"name": "radical-vs-phi-kernel", "agreements": ok, "disagreements": bad}));
    }

    // sandwich verdicts under re-randomized representatives
    {
        let mut rng = SplitMix64::new(seed);
        let mut ok = 0;
        let mut bad = 0;
        for (_, e) in gd.regular_j_representatives() {
            let canonical = structure::sandwich_matrix(m, gd, e).expect("idempotent rep");
            let r0 = structure::right_invertible(&canonical, m);
            let l0 = structure::left_invertible(&canonical, m);
            let row_reps: Vec<usize> = canonical
                .rows
                .iter()
                .map(|&b| {
                    let pool: Vec<usize> = gd.l_classes[b]
                        .iter()
                        .copied()
                        .filter(|&x| gd.r_equiv(x, e))
                        .collect();
                    pool[rng.below(pool.len() as u64) as usize]
                })
                .collect();
            let col_reps: Vec<usize> = canonical
                .cols
                .iter()
                .map(|&a| {
                    let pool: Vec<usize> = gd.r_classes[a]
                        .iter()
                        .copied()
                        .filter(|&x| gd.l_equiv(x, e))
                        .collect();
                    pool[rng.below(pool.len() as u64) as usize]
                })
                .collect();
            let alt = structure::sandwich_matrix_with_reps(m, gd, e, Some((&row_reps, &col_reps)))
                .expect("representatives are valid");
            if structure::right_invertible(&alt, m) == r0
                && structure::left_invertible(&alt, m) == l0
            {
                ok += 1;
            } else {
                bad += 1;
            }
        }
        agreements += ok;
        disagreements += bad;
        checks.push(json!({
            "name": "sandwich-representative-invariance",
            "agreements": ok,
            "disagreements": bad
        }));
    }

    json!({
        "checks": checks,
        "agreements": agreements,
        "disagreements": disagreements,
    })
}

/// Pretty JSON with a trailing newline; object keys are sorted by
/// construction (serde_json maps are BTree-backed).
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn base_report_shape() {
        let an = Analysis::new(fixtures::n2()).unwrap();
        let v = base_report(&an, "digest", Some(7)).unwrap();
        assert_eq!(v["monoid_order"], 3);
        assert_eq!(v["classification"]["flags"]["is_er"], true);
        assert_eq!(v["seed"], 7);
        // deterministic serialization
        assert_eq!(to_json_string(&v), to_json_string(&v));
    }

    #[test]
    fn dot_output_n2() {
        let an = Analysis::new(fixtures::n2()).unwrap();
        let q = quiver(&an, QuiverMode::Auto).unwrap();
        let dot = quiver_dot(&q);
        assert!(dot.starts_with("digraph quiver {"));
        assert!(dot.contains("\"J0:triv\""));
        assert!(dot.contains("-> \"J0:triv\" [mult=1]"));
        let dot2 = quiver_dot_with(&q, true);
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(dot2.matches("->").count(), 1);
    }

    #[test]
    fn group_quiver_dot_has_isolated_nodes() {
        let an = Analysis::new(fixtures::c2()).unwrap();
        let q = quiver(&an, QuiverMode::Auto).unwrap();
        let dot = quiver_dot(&q);
        assert!(!dot.contains("->"));
        assert_eq!(dot.matches(';').count(), 2);
    }

    #[test]
    fn oracle_section_passes_on_fixtures() {
        for (name, m) in fixtures::all_fixtures() {
            let an = Analysis::new(m).unwrap();
            let v = oracle_section(&an, 1);
            assert_eq!(v["disagreements"], 0, "{name}: {v}");
        }
    }

    #[test]
    fn sandwich_and_projectives_sections() {
        let an = Analysis::new(fixtures::rz2i()).unwrap();
        let s = sandwich_section(&an, None).unwrap();
        assert_eq!(s.as_array().unwrap().len(), 2);
        let err = sandwich_section(&an, Some(99)).unwrap_err();
        assert!(matches!(err, MonoidError::MissingSection { .. }));

        let an = Analysis::new(fixtures::n2c2()).unwrap();
        let p = projectives_section(&an, None).unwrap();
        let arr = p.as_array().unwrap();
        // two J-classes, two degree-1 characters each
        assert_eq!(arr.len(), 4);
        assert!(arr.iter().all(|e| e["realized"] == true));
    }
}
