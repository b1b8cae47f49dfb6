//! Transitive permutation groups of degree at most 7, built once from
//! generators. Order, primitivity, parity and cycle types are computed from
//! the closure rather than transcribed.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use super::perm::{closure, is_primitive, is_transitive, Perm};
use crate::error::{Error, Result};
use crate::ffpoly::Partition;

pub const TABLE_VERSION: u32 = 1;
pub const MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, Serialize)]
pub struct GroupTableEntry {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub is_transitive: bool,
    pub is_primitive: bool,
    pub contained_in_an: bool,
    pub allowed_cycle_types: BTreeSet<Partition>,
    /// Number of elements of each cycle type.
    pub cycle_type_counts: BTreeMap<Partition, u64>,
}

impl GroupTableEntry {
    pub fn is_symmetric(&self) -> bool {
        self.order == factorial(self.degree)
    }

    pub fn allows(&self, cycle_type: &Partition) -> bool {
        self.allowed_cycle_types.contains(cycle_type)
    }

    fn build(name: &str, n: usize, gens: Vec<Perm>) -> Self {
        let elements = closure(n, &gens);
        let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
        for g in &elements {
            *counts.entry(g.cycle_type()).or_default() += 1;
        }
        GroupTableEntry {
            name: name.to_string(),
            degree: n,
            order: elements.len() as u64,
            is_transitive: is_transitive(n, &gens),
            is_primitive: is_primitive(n, &gens),
            contained_in_an: elements.iter().all(Perm::is_even),
            allowed_cycle_types: counts.keys().cloned().collect(),
            cycle_type_counts: counts,
        }
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn c(n: usize, cycles: &[&[u8]]) -> Perm {
    Perm::from_cycles(n, cycles)
}

/// Image table of `x -> (a x + b) / (c x + d)` on `P^1(F_5)`, point 5 = infinity.
fn mobius(a: i64, b: i64, cc: i64, d: i64) -> Perm {
    const INF: i64 = 5;
    let inv = |v: i64| (1..5).find(|&w| (v * w).rem_euclid(5) == 1).expect("unit");
    let images = (0..6)
        .map(|x| {
            let (num, den) = if x == INF { (a, cc) } else { (a * x + b, cc * x + d) };
            let (num, den) = (num.rem_euclid(5), den.rem_euclid(5));
            if den == 0 {
                INF as u8
            } else {
                (num * inv(den)).rem_euclid(5) as u8
            }
        })
        .collect();
    Perm::from_images(images)
}

/// Collineations of the Fano plane with lines `{i, i+1, i+3} mod 7`.
fn fano_automorphisms() -> Vec<Perm> {
    let lines: BTreeSet<[u8; 3]> = (0..7u8)
        .map(|i| {
            let mut l = [i, (i + 1) % 7, (i + 3) % 7];
            l.sort_unstable();
            l
        })
        .collect();
    let mut out = Vec::new();
    let mut perm: Vec<u8> = (0..7).collect();
    permutations(&mut perm, 0, &mut |p| {
        let ok = lines.iter().all(|l| {
            let mut img = [p[l[0] as usize], p[l[1] as usize], p[l[2] as usize]];
            img.sort_unstable();
            lines.contains(&img)
        });
        if ok {
            out.push(Perm::from_images(p.to_vec()));
        }
    });
    out
}

fn permutations(v: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn symmetric_gens(n: usize) -> Vec<Perm> {
    if n == 1 {
        return vec![Perm::identity(1)];
    }
    let cycle: Vec<u8> = (1..=n as u8).collect();
    vec![c(n, &[&cycle]), c(n, &[&[1, 2]])]
}

fn alternating_gens(n: usize) -> Vec<Perm> {
    (3..=n as u8).map(|k| c(n, &[&[1, 2, k]])).collect()
}

fn generators(n: usize) -> Vec<(&'static str, Vec<Perm>)> {
    match n {
        1 => vec![("S1", symmetric_gens(1))],
        2 => vec![("S2", symmetric_gens(2))],
        3 => vec![("C3", vec![c(3, &[&[1, 2, 3]])]), ("S3", symmetric_gens(3))],
        4 => vec![
            ("C4", vec![c(4, &[&[1, 2, 3, 4]])]),
            ("V4", vec![c(4, &[&[1, 2], &[3, 4]]), c(4, &[&[1, 3], &[2, 4]])]),
            ("D4", vec![c(4, &[&[1, 2, 3, 4]]), c(4, &[&[1, 3]])]),
            ("A4", alternating_gens(4)),
            ("S4", symmetric_gens(4)),
        ],
        5 => {
            let r = c(5, &[&[1, 2, 3, 4, 5]]);
            vec![
                ("C5", vec![r.clone()]),
                ("D5", vec![r.clone(), c(5, &[&[2, 5], &[3, 4]])]),
                ("F20", vec![r.clone(), c(5, &[&[2, 3, 5, 4]])]),
                ("A5", alternating_gens(5)),
                ("S5", symmetric_gens(5)),
            ]
        }
        6 => {
            let swap = c(6, &[&[1, 4], &[2, 5], &[3, 6]]);
            let inversion = c(6, &[&[1, 2], &[3, 4], &[5, 6]]);
            let cube_a4 = vec![c(6, &[&[1, 3, 5], &[2, 4, 6]]), c(6, &[&[1, 2], &[3, 4]])];
            let cube_s4 = vec![c(6, &[&[1, 3, 2, 4]]), c(6, &[&[3, 5, 4, 6]])];
            let translate = mobius(1, 1, 0, 1);
            let flip = mobius(0, -1, 1, 0);
            vec![
                ("C6", vec![c(6, &[&[1, 2, 3, 4, 5, 6]])]),
                ("S3", vec![c(6, &[&[1, 2, 3], &[4, 5, 6]]), c(6, &[&[1, 4], &[2, 6], &[3, 5]])]),
                ("D6", vec![c(6, &[&[1, 2, 3, 4, 5, 6]]), c(6, &[&[1, 6], &[2, 5], &[3, 4]])]),
                ("A4", vec![c(6, &[&[1, 4, 2], &[3, 5, 6]]), c(6, &[&[2, 5], &[3, 4]])]),
                ("F18", vec![c(6, &[&[1, 2, 3]]), swap.clone()]),
                ("2A4", [cube_a4.clone(), vec![inversion.clone()]].concat()),
                ("S4(6d)", vec![c(6, &[&[2, 4], &[3, 5]]), c(6, &[&[1, 4, 6, 3], &[2, 5]])]),
                ("S4(6c)", cube_s4.clone()),
                ("F18:2", vec![c(6, &[&[1, 2, 3]]), c(6, &[&[4, 5, 6]]), swap.clone(), c(6, &[&[1, 2], &[4, 5]])]),
                ("F36", vec![c(6, &[&[1, 2, 3]]), c(6, &[&[1, 4, 2, 5], &[3, 6]])]),
                ("2S4", [cube_s4, vec![inversion]].concat()),
                ("PSL2(5)", vec![translate.clone(), mobius(4, 0, 0, 1), flip.clone()]),
                ("F36:2", vec![c(6, &[&[1, 2, 3]]), c(6, &[&[1, 2]]), swap]),
                ("PGL2(5)", vec![translate, mobius(2, 0, 0, 1), flip]),
                ("A6", alternating_gens(6)),
                ("S6", symmetric_gens(6)),
            ]
        }
        7 => {
            let r = c(7, &[&[1, 2, 3, 4, 5, 6, 7]]);
            vec![
                ("C7", vec![r.clone()]),
                ("D7", vec![r.clone(), c(7, &[&[2, 7], &[3, 6], &[4, 5]])]),
                ("F21", vec![r.clone(), c(7, &[&[2, 3, 5], &[4, 7, 6]])]),
                ("F42", vec![r, c(7, &[&[2, 4, 3, 7, 5, 6]])]),
                ("PSL3(2)", fano_automorphisms()),
                ("A7", alternating_gens(7)),
                ("S7", symmetric_gens(7)),
            ]
        }
        _ => Vec::new(),
    }
}

fn tables() -> &'static [OnceLock<Vec<GroupTableEntry>>; MAX_DEGREE + 1] {
    static TABLES: [OnceLock<Vec<GroupTableEntry>>; MAX_DEGREE + 1] = [const { OnceLock::new() }; MAX_DEGREE + 1];
    &TABLES
}

/// Transitive groups of degree `n`, ascending by order.
pub fn group_table(n: usize) -> Result<&'static [GroupTableEntry]> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree { degree: n, supported: "1..=7" });
    }
    Ok(tables()[n].get_or_init(|| {
        let mut entries: Vec<GroupTableEntry> =
            generators(n).into_iter().map(|(name, gens)| GroupTableEntry::build(name, n, gens)).collect();
        entries.sort_by_key(|e| e.order);
        entries
    }))
}

pub fn lookup(n: usize, name: &str) -> Option<&'static GroupTableEntry> {
    group_table(n).ok()?.iter().find(|e| e.name == name)
}

pub fn symmetric_name(n: usize) -> String {
    format!("S{n}")
}

pub const CSV_HEADER: &str = "degree,name,order,transitive,primitive,in_alternating,cycle_types";

/// One row per group; cycle types separated by `;`.
pub fn table_csv(n: usize) -> Result<String> {
    let mut out = format!("# transitive group table version {TABLE_VERSION}\n{CSV_HEADER}\n");
    for e in group_table(n)? {
        let types: Vec<String> = e.allowed_cycle_types.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            e.degree,
            e.name,
            e.order,
            e.is_transitive,
            e.is_primitive,
            e.contained_in_an,
            types.join(";")
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(n: usize) -> Vec<u64> {
        group_table(n).unwrap().iter().map(|e| e.order).collect()
    }

    #[test]
    fn group_orders() {
        assert_eq!(orders(3), vec![3, 6]);
        assert_eq!(orders(4), vec![4, 4, 8, 12, 24]);
        assert_eq!(orders(5), vec![5, 10, 20, 60, 120]);
        assert_eq!(orders(6), vec![6, 6, 12, 12, 18, 24, 24, 24, 36, 36, 48, 60, 72, 120, 360, 720]);
        assert_eq!(orders(7), vec![7, 14, 21, 42, 168, 2520, 5040]);
    }

    #[test]
    fn all_transitive_and_pairwise_distinct() {
        for n in 1..=7 {
            let t = group_table(n).unwrap();
            assert!(t.iter().all(|e| e.is_transitive));
            let sigs: BTreeSet<(u64, Vec<(Partition, u64)>)> = t
                .iter()
                .map(|e| (e.order, e.cycle_type_counts.iter().map(|(p, c)| (p.clone(), *c)).collect()))
                .collect();
            assert_eq!(sigs.len(), t.len(), "degree {n}");
        }
    }

    #[test]
    fn primitive_entries() {
        let prim = |n: usize| -> Vec<&str> {
            group_table(n).unwrap().iter().filter(|e| e.is_primitive).map(|e| e.name.as_str()).collect()
        };
        assert_eq!(prim(3), vec!["C3", "S3"]);
        assert_eq!(prim(4), vec!["A4", "S4"]);
        assert_eq!(prim(5), vec!["C5", "D5", "F20", "A5", "S5"]);
        assert_eq!(prim(6), vec!["PSL2(5)", "PGL2(5)", "A6", "S6"]);
        assert_eq!(prim(7).len(), 7);
    }

    #[test]
    fn alternating_containment() {
        let even = |n: usize| -> Vec<&str> {
            group_table(n).unwrap().iter().filter(|e| e.contained_in_an).map(|e| e.name.as_str()).collect()
        };
        assert_eq!(even(3), vec!["C3"]);
        assert_eq!(even(4), vec!["V4", "A4"]);
        assert_eq!(even(5), vec!["C5", "D5", "A5"]);
        assert_eq!(even(6), vec!["A4", "S4(6d)", "F36", "PSL2(5)", "A6"]);
        assert_eq!(even(7), vec!["C7", "F21", "PSL3(2)", "A7"]);
    }

    #[test]
    fn jordan_no_transposition_in_proper_primitive_groups() {
        for n in 2..=7 {
            let tr = Partition::transposition(n);
            for e in group_table(n).unwrap() {
                if e.is_primitive && !e.is_symmetric() {
                    assert!(!e.allows(&tr), "{} contains a transposition", e.name);
                }
            }
        }
    }

    #[test]
    fn unsupported_degree() {
        assert!(group_table(8).is_err());
        assert!(group_table(0).is_err());
    }

    #[test]
    fn csv_dump_has_one_row_per_group() {
        let csv = table_csv(6).unwrap();
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 17);
        assert!(csv.lines().skip(2).all(|l| l.split(',').count() == 7));
    }
}
