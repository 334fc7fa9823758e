//! Named monoid families.

use super::{adjoin_identity, Elem, FiniteMonoid, FiniteSemigroup, MonoidError, Result};

pub const FAMILY_NAMES: &[&str] = &[
    "gowers", "carlson", "carlson1", "cyclic", "i_monoid", "table1", "table2", "trivial",
];

fn bad(family: &str, reason: impl Into<String>) -> MonoidError {
    MonoidError::BadParams { family: family.to_string(), reason: reason.into() }
}

/// `G_k = ({0..k-1}, min(i + j, k - 1))` with identity `0`.
pub fn gowers(k: usize) -> Result<FiniteMonoid> {
    if k == 0 {
        return Err(bad("gowers", "k must be at least 1"));
    }
    let names = (0..k).map(|i| i.to_string()).collect();
    let table = (0..k).flat_map(|i| (0..k).map(move |j| (i + j).min(k - 1))).collect();
    Ok(FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(names, table), 0))
}

/// Right-zero semigroup `a * b = b` on the given points.
pub fn carlson<S: AsRef<str>>(points: &[S]) -> Result<FiniteSemigroup> {
    if points.is_empty() {
        return Err(bad("carlson", "needs at least one point"));
    }
    let n = points.len();
    let names: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
    super::check_names(&names)?;
    let table = (0..n).flat_map(|_| 0..n).collect();
    Ok(FiniteSemigroup::from_trusted(names, table))
}

/// Right-zero semigroup with an identity adjoined.
pub fn carlson1<S: AsRef<str>>(points: &[S]) -> Result<FiniteMonoid> {
    Ok(adjoin_identity(&carlson(points)?))
}

/// Cyclic group `Z_n` on `1, g, g^2, ...`.
pub fn cyclic(n: usize) -> Result<FiniteMonoid> {
    if n == 0 {
        return Err(bad("cyclic", "n must be at least 1"));
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            i => format!("g^{i}"),
        })
        .collect();
    let table = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
    Ok(FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(names, table), 0))
}

/// `I_k`: maps `f: k -> k` with `f(0) = 0` and `f(i+1) - f(i)` in `{0, 1}`,
/// multiplied by ordinary composition `(f * g)(i) = f(g(i))`.
///
/// Elements are named by their value sequence, e.g. `0112`.
pub fn i_monoid(k: usize) -> Result<FiniteMonoid> {
    if k == 0 {
        return Err(bad("i_monoid", "k must be at least 1"));
    }
    if k > 16 {
        return Err(bad("i_monoid", "k above 16 is not supported"));
    }
    let mut maps: Vec<Vec<usize>> = (0..1usize << (k - 1))
        .map(|bits| {
            let mut f = vec![0; k];
            for i in 1..k {
                f[i] = f[i - 1] + ((bits >> (k - 1 - i)) & 1);
            }
            f
        })
        .collect();
    maps.sort();
    let sep = if k > 10 { "." } else { "" };
    let names: Vec<String> = maps
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
        .collect();
    let index = |f: &[usize]| -> Elem { maps.binary_search_by(|g| g.as_slice().cmp(f)).unwrap() };
    let mut table = Vec::with_capacity(maps.len() * maps.len());
    for f in &maps {
        for g in &maps {
            let h: Vec<usize> = g.iter().map(|&x| f[x]).collect();
            table.push(index(&h));
        }
    }
    let identity: Vec<usize> = (0..k).collect();
    let id = index(&identity);
    Ok(FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(names, table), id))
}

/// Six-element syntactic monoid of `{g,h}*h ∪ {g,h}*a{g,h}*g ∪ A*aA*aA*`.
pub fn table1() -> FiniteMonoid {
    let names = ["1", "0", "a", "b", "g", "h"];
    let rows = [
        ["1", "0", "a", "b", "g", "h"],
        ["0", "0", "0", "0", "0", "0"],
        ["a", "0", "0", "0", "b", "a"],
        ["b", "0", "0", "0", "b", "a"],
        ["g", "0", "a", "b", "g", "h"],
        ["h", "0", "a", "b", "g", "h"],
    ];
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    FiniteMonoid::build(&names, "1", &rows).expect("table1 is a valid monoid")
}

/// Five-element aperiodic monoid whose non-trivial right ideals `{a,b}` and
/// `{c,d}` are incomparable.
pub fn table2() -> FiniteMonoid {
    let names = ["1", "a", "b", "c", "d"];
    let rows = [
        ["1", "a", "b", "c", "d"],
        ["a", "a", "b", "a", "b"],
        ["b", "a", "b", "a", "b"],
        ["c", "c", "d", "c", "d"],
        ["d", "c", "d", "c", "d"],
    ];
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    FiniteMonoid::build(&names, "1", &rows).expect("table2 is a valid monoid")
}

pub fn trivial() -> FiniteMonoid {
    FiniteMonoid::from_trusted(FiniteSemigroup::from_trusted(vec!["1".into()], vec![0]), 0)
}

fn int_param(family: &str, params: &[&str]) -> Result<usize> {
    match params {
        [p] => p.trim().parse().map_err(|_| bad(family, format!("`{p}` is not an integer"))),
        _ => Err(bad(family, format!("expected one integer, got {} parameters", params.len()))),
    }
}

/// Points for the right-zero families: either a count (`3` gives `p q r`)
/// or explicit names (`x,y` or `x y`).
fn point_params(family: &str, params: &[&str]) -> Result<Vec<String>> {
    let tokens: Vec<String> = params
        .iter()
        .flat_map(|p| p.split(','))
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if let [single] = tokens.as_slice() {
        if let Ok(n) = single.parse::<usize>() {
            if n == 0 {
                return Err(bad(family, "needs at least one point"));
            }
            const LETTERS: &str = "pqrstuvwxyz";
            return Ok((0..n)
                .map(|i| match LETTERS.chars().nth(i) {
                    Some(c) => c.to_string(),
                    None => format!("p{i}"),
                })
                .collect());
        }
    }
    if tokens.is_empty() {
        return Err(bad(family, "needs a point count or point names"));
    }
    Ok(tokens)
}

/// Any named family as a semigroup (right-zero `carlson` has no identity).
pub fn family_semigroup(name: &str, params: &[&str]) -> Result<FiniteSemigroup> {
    match name {
        "carlson" => carlson(&point_params(name, params)?),
        _ => family(name, params).map(FiniteMonoid::into_semigroup),
    }
}

/// Builds a named monoid.
pub fn family(name: &str, params: &[&str]) -> Result<FiniteMonoid> {
    let no_params = |m: FiniteMonoid| {
        if params.is_empty() {
            Ok(m)
        } else {
            Err(bad(name, "takes no parameters"))
        }
    };
    match name {
        "gowers" => gowers(int_param(name, params)?),
        "cyclic" => cyclic(int_param(name, params)?),
        "i_monoid" => i_monoid(int_param(name, params)?),
        "carlson1" => carlson1(&point_params(name, params)?),
        "carlson" => {
            let points = point_params(name, params)?;
            if points.len() == 1 {
                Ok(FiniteMonoid::from_trusted(carlson(&points)?, 0))
            } else {
                Err(bad(name, "a right-zero semigroup on two or more points has no identity"))
            }
        }
        "table1" => no_params(table1()),
        "table2" => no_params(table2()),
        "trivial" => no_params(trivial()),
        other => Err(MonoidError::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration of all maps k -> k, filtered by the defining rule.
    fn i_monoid_oracle(k: usize) -> usize {
        let mut count = 0;
        let total = k.pow(k as u32);
        for code in 0..total {
            let mut f = vec![0; k];
            let mut c = code;
            for slot in f.iter_mut() {
                *slot = c % k;
                c /= k;
            }
            if f[0] == 0 && f.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn gowers_two() {
        let g = gowers(2).unwrap();
        assert_eq!(g.names(), ["0", "1"]);
        assert_eq!(g.mul(1, 1), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn i_monoid_sizes() {
        assert_eq!(i_monoid_oracle(4), 8);
        for k in 1..=6 {
            let m = i_monoid(k).unwrap();
            assert_eq!(m.len(), 1 << (k - 1));
            assert_eq!(m.len(), i_monoid_oracle(k));
        }
        let m = i_monoid(3).unwrap();
        assert_eq!(m.name(m.identity()), "012");
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let z1 = cyclic(1).unwrap();
        assert_eq!(z1.len(), 1);
        assert!(crate::monoid::find_isomorphism(&z1, &trivial()).is_some());
    }

    #[test]
    fn family_dispatch() {
        assert_eq!(family("gowers", &["3"]).unwrap(), gowers(3).unwrap());
        assert_eq!(family("carlson1", &["p,q"]).unwrap().names(), ["1", "p", "q"]);
        assert_eq!(family("carlson1", &["2"]).unwrap().names(), ["1", "p", "q"]);
        assert!(matches!(family("nope", &[]), Err(MonoidError::UnknownFamily(_))));
        assert!(matches!(family("gowers", &["x"]), Err(MonoidError::BadParams { .. })));
        assert!(matches!(family("gowers", &["0"]), Err(MonoidError::BadParams { .. })));
        assert!(matches!(family("carlson", &["2"]), Err(MonoidError::BadParams { .. })));
        assert_eq!(family_semigroup("carlson", &["2"]).unwrap().len(), 2);
        assert!(matches!(family("table1", &["1"]), Err(MonoidError::BadParams { .. })));
    }
}
