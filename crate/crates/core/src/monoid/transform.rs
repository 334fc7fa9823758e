//! Transformation monoids generated by maps on `{0..n-1}`.
//!
//! Composition is left to right: `(f * g)(x) = g(f(x))`, so a word of
//! generators acts in reading order.

use std::collections::HashMap;

use super::{FiniteMonoid, FiniteSemigroup, MonoidError, Result};

/// A transformation monoid together with the maps backing its elements.
#[derive(Clone, Debug)]
pub struct TransformationMonoid {
    pub monoid: FiniteMonoid,
    /// `maps[e][x]` is the image of point `x` under element `e`.
    pub maps: Vec<Vec<usize>>,
}

/// Closure of `generators ∪ {id}` under composition. Elements are named by
/// shortest generator words (`a`, `b`, `c`, ... in generator order); the
/// identity is `1`.
pub fn transformation_monoid(
    point_count: usize,
    generators: &[Vec<usize>],
) -> Result<TransformationMonoid> {
    let named: Vec<(String, Vec<usize>)> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (generator_name(i, generators.len()), g.clone()))
        .collect();
    transformation_monoid_named(point_count, &named)
}

fn generator_name(i: usize, total: usize) -> String {
    if total <= 26 && i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// Same as [`transformation_monoid`] with explicit generator names.
///
/// Breadth-first closure from the identity, so every element's name is the
/// shortlex-least generator word reaching it.
pub fn transformation_monoid_named(
    point_count: usize,
    generators: &[(String, Vec<usize>)],
) -> Result<TransformationMonoid> {
    for (name, g) in generators {
        if g.len() != point_count || g.iter().any(|&x| x >= point_count) {
            return Err(MonoidError::BadParams {
                family: "transformation".into(),
                reason: format!("generator `{name}` is not a total map on {point_count} points"),
            });
        }
    }
    let joined = generators.iter().any(|(n, _)| n.chars().count() != 1);
    let identity: Vec<usize> = (0..point_count).collect();
    let mut maps = vec![identity.clone()];
    let mut words: Vec<String> = vec![String::new()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < maps.len() {
        for (gname, g) in generators {
            let h: Vec<usize> = maps[i].iter().map(|&x| g[x]).collect();
            if !index.contains_key(&h) {
                index.insert(h.clone(), maps.len());
                let word = match (words[i].is_empty(), joined) {
                    (true, _) => gname.clone(),
                    (false, true) => format!("{}.{}", words[i], gname),
                    (false, false) => format!("{}{}", words[i], gname),
                };
                words.push(word);
                maps.push(h);
            }
        }
        i += 1;
    }
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for f in &maps {
        for g in &maps {
            let h: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            table.push(index[&h]);
        }
    }
    let mut names = words;
    names[0] = "1".into();
    if names[1..].iter().any(|s| s == "1") {
        return Err(MonoidError::DuplicateElement("1".into()));
    }
    super::check_names(&names)?;
    let monoid = FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(names, table), 0);
    Ok(TransformationMonoid { monoid, maps })
}
