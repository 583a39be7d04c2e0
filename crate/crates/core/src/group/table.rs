//! Finite groups given by a verified multiplication table.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Largest table accepted; associativity is checked over all triples.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    name: String,
    table: Vec<Vec<u32>>,
    inverses: Vec<u32>,
    element_names: Vec<String>,
    generators: Vec<(String, u32)>,
}

impl FiniteTable {
    /// Validates Latin-square shape, identity at index 0 and associativity.
    pub fn new(
        name: impl Into<String>,
        table: Vec<Vec<u32>>,
        element_names: Option<Vec<String>>,
        generators: Vec<(String, u32)>,
    ) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidTable(format!("{name}: {msg}")));
        if n == 0 || n > MAX_ORDER {
            return bad(format!("order {n} outside 1..={MAX_ORDER}"));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has length {}", row.len()));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
                    return bad(format!("row {i} is not a permutation"));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j] as usize], true) {
                    return bad(format!("column {j} is not a permutation"));
                }
            }
        }
        for i in 0..n {
            if table[0][i] as usize != i || table[i][0] as usize != i {
                return bad("index 0 is not the identity".into());
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n as u32).find(|&b| table[a][b as usize] == 0).expect("latin square has inverses"))
            .collect();
        let element_names = match element_names {
            Some(names) if names.len() == n => names,
            Some(names) => return bad(format!("{} element names for order {n}", names.len())),
            None => (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect(),
        };
        for (g, idx) in &generators {
            if *idx as usize >= n {
                return bad(format!("generator {g} has index {idx}"));
            }
        }
        Ok(FiniteTable { name, table, inverses, element_names, generators })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn element_name(&self, a: u32) -> &str {
        &self.element_names[a as usize]
    }

    pub fn element_by_name(&self, name: &str) -> Option<u32> {
        self.element_names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    /// Loads `{"name", "order", "generators", "table"}`; see [`TableFile`].
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| Error::InvalidTable(e.to_string()))?;
        if file.order != file.table.len() {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        let generators = file
            .generators
            .into_iter()
            .enumerate()
            .map(|(i, g)| match g {
                GeneratorSpec::Index(idx) => (format!("x{}", i + 1), idx),
                GeneratorSpec::Named { name, index } => (name, index),
            })
            .collect();
        FiniteTable::new(file.name, file.table, file.element_names, generators)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let t = match name.to_ascii_uppercase().replace('_', "").as_str() {
            "Z2" => Self::new(
                "Z_2",
                vec![vec![0, 1], vec![1, 0]],
                Some(vec!["e".into(), "u".into()]),
                vec![("u".into(), 1)],
            ),
            "S3" => from_permutations("S_3", &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1], vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]], &[("a", 3), ("b", 1)]),
            "D4" => {
                let r = [1, 2, 3, 0];
                let s = [2, 1, 0, 3];
                let mut perms = Vec::new();
                for flip in [false, true] {
                    for k in 0..4 {
                        let mut p: Vec<usize> = (0..4).collect();
                        for _ in 0..k {
                            p = compose(&r, &p);
                        }
                        if flip {
                            p = compose(&p, &s);
                        }
                        perms.push(p);
                    }
                }
                from_permutations("D_4", &perms, &[("r", 1), ("s", 4)])
            }
            "A4" => {
                let gens = [vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
                let mut perms = vec![vec![0, 1, 2, 3]];
                let mut i = 0;
                while i < perms.len() {
                    for g in &gens {
                        let p = compose(g, &perms[i]);
                        if !perms.contains(&p) {
                            perms.push(p);
                        }
                    }
                    i += 1;
                }
                let a = perms.iter().position(|p| p == &gens[0]).unwrap() as u32;
                let b = perms.iter().position(|p| p == &gens[1]).unwrap() as u32;
                from_permutations_idx("A_4", &perms, vec![("a".into(), a), ("b".into(), b)])
            }
            "Q8" => quaternion_group(),
            _ => return None,
        };
        Some(t.expect("built-in tables are valid"))
    }

    pub const BUILTIN_NAMES: [&'static str; 5] = ["S3", "D4", "Q8", "Z2", "A4"];
}

#[derive(Deserialize)]
struct TableFile {
    name: String,
    order: usize,
    #[serde(default)]
    generators: Vec<GeneratorSpec>,
    table: Vec<Vec<u32>>,
    #[serde(default)]
    element_names: Option<Vec<String>>,
}

/// A generator is either a bare element index or `{"name", "index"}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorSpec {
    Index(u32),
    Named { name: String, index: u32 },
}

// (p ∘ q)(i) = p(q(i)): q acts first.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn from_permutations(name: &str, perms: &[Vec<usize>], gens: &[(&str, u32)]) -> Result<FiniteTable> {
    from_permutations_idx(name, perms, gens.iter().map(|(n, i)| (n.to_string(), *i)).collect())
}

fn from_permutations_idx(name: &str, perms: &[Vec<usize>], gens: Vec<(String, u32)>) -> Result<FiniteTable> {
    let index: BTreeMap<&Vec<usize>, u32> = perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index[&compose(a, b)]).collect())
        .collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteTable::new(name, table, Some(names), gens)
}

fn quaternion_group() -> Result<FiniteTable> {
    // element = sign * unit, unit in {1, i, j, k}; index = 2 * unit + (sign < 0)
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let table = (0..8)
        .map(|a: usize| {
            (0..8)
                .map(|b: usize| {
                    let (neg, u) = unit_mul(a / 2, b / 2);
                    let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
                    (2 * u + sign as usize) as u32
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteTable::new("Q_8", table, Some(names), vec![("i".into(), 2), ("j".into(), 4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in FiniteTable::BUILTIN_NAMES {
            let t = FiniteTable::builtin(name).unwrap();
            assert!(t.order() > 0);
        }
        assert_eq!(FiniteTable::builtin("A4").unwrap().order(), 12);
        assert_eq!(FiniteTable::builtin("D4").unwrap().order(), 8);
    }

    #[test]
    fn s3_product_convention() {
        let s3 = FiniteTable::builtin("S3").unwrap();
        let a = s3.element_by_name("(12)").unwrap();
        let b = s3.element_by_name("(123)").unwrap();
        assert_eq!(s3.element_name(s3.mul(a, b)), "(23)");
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteTable::builtin("Q8").unwrap();
        let i = q.element_by_name("i").unwrap();
        let j = q.element_by_name("j").unwrap();
        let k = q.element_by_name("k").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.element_name(q.mul(j, i)), "-k");
        assert_eq!(q.element_name(q.mul(i, i)), "-1");
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // Latin square with identity 0 that is not a group (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteTable::new("loop", t, None, vec![]).unwrap_err();
        assert!(err.to_string().contains("!="), "{err}");
    }

    #[test]
    fn json_round() {
        let text = r#"{"name":"C3","order":3,"generators":[1],"table":[[0,1,2],[1,2,0],[2,0,1]]}"#;
        let t = FiniteTable::from_json(text).unwrap();
        assert_eq!(t.generators()[0], ("x1".to_string(), 1));
        let named = r#"{"name":"C2","order":2,"generators":[{"name":"w","index":1}],"table":[[0,1],[1,0]]}"#;
        assert_eq!(FiniteTable::from_json(named).unwrap().generators()[0].0, "w");
        let bad = r#"{"name":"C2","order":3,"generators":[],"table":[[0,1],[1,0]]}"#;
        assert!(FiniteTable::from_json(bad).is_err());
    }
}
