use super::delta::DeltaTrunc;
use super::{CatError, FinCat, Morphism};

/// The terminal category `e`.
pub fn terminal() -> FinCat {
    discrete(&["pt"])
}

/// The discrete category on the given object names.
pub fn discrete(names: &[&str]) -> FinCat {
    let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let morphisms =
        objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("id_{o}"), src: i, tgt: i }).collect();
    let identities = (0..objects.len()).collect();
    FinCat::from_fn(objects, morphisms, identities, |g, f| (g == f).then_some(g)).expect("discrete table is total")
}

/// `Δ_{≤k}`: objects `Δ_0 … Δ_k`, morphisms all monotone maps.
pub fn build_delta_trunc(k: usize) -> FinCat {
    DeltaTrunc::new(k).cat().as_ref().clone()
}

/// The one-object category `BG` of a group given by its multiplication
/// table, `mult[g][h] = g·h`. Composition is `g ∘ h = g·h`.
pub fn build_group_cat(mult: &[Vec<usize>], names: Option<&[String]>) -> Result<FinCat, CatError> {
    let n = mult.len();
    if n == 0 {
        return Err(CatError::NotAGroup("empty multiplication table".into()));
    }
    if mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(CatError::NotAGroup("table is not a square table over the elements".into()));
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
        .ok_or_else(|| CatError::NotAGroup("no two-sided unit".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                    return Err(CatError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
        if !(0..n).any(|b| mult[a][b] == unit && mult[b][a] == unit) {
            return Err(CatError::NotAGroup(format!("element {a} has no inverse")));
        }
    }
    let names: Vec<String> = match names {
        Some(ns) => ns.to_vec(),
        None => (0..n).map(|i| if i == unit { "e".to_string() } else { format!("g{i}") }).collect(),
    };
    let morphisms = names.iter().map(|name| Morphism { name: name.clone(), src: 0, tgt: 0 }).collect();
    FinCat::from_fn(vec!["pt".to_string()], morphisms, vec![unit], |g, f| Some(mult[g][f]))
}

/// `B(ℤ/n)` with elements named `e, g, g2, …, g{n−1}`.
pub fn cyclic_group_cat(n: usize) -> FinCat {
    assert!(n >= 1);
    let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            i => format!("g{i}"),
        })
        .collect();
    build_group_cat(&mult, Some(&names)).expect("cyclic group table")
}

/// The poset generated by `relations` (pairs `a ≤ b`) on `names`; reflexive
/// and transitive closure is taken.
pub fn build_poset(names: &[&str], relations: &[(usize, usize)]) -> Result<FinCat, CatError> {
    let n = names.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
    }
    for &(a, b) in relations {
        if a >= n || b >= n {
            return Err(CatError::UnknownObject(format!("{a} ≤ {b}")));
        }
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if le[i][j] && le[j][i] {
                return Err(CatError::NotAntisymmetric { a: names[i].to_string(), b: names[j].to_string() });
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                index[i][j] = morphisms.len();
                let name = if i == j { format!("id_{}", names[i]) } else { format!("{}<{}", names[i], names[j]) };
                morphisms.push(Morphism { name, src: i, tgt: j });
            }
        }
    }
    let identities = (0..n).map(|i| index[i][i]).collect();
    let objects = names.iter().map(|s| s.to_string()).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    FinCat::from_fn(objects, morphisms, identities, |g, f| Some(index[ends[f].0][ends[g].1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_builders_validate() {
        assert!(terminal().validate().is_empty());
        assert_eq!(build_delta_trunc(0).morphism_count(), 1);
        let z2 = cyclic_group_cat(2);
        assert_eq!(z2.morphism_count(), 2);
        assert_eq!(z2.compose(1, 1), z2.identity(0));
        assert!(cyclic_group_cat(3).validate().is_empty());
        assert_eq!(cyclic_group_cat(1), build_group_cat(&[vec![0]], Some(&["e".to_string()])).unwrap());
    }

    #[test]
    fn group_table_rejected() {
        // 0 is a unit but 1·1 = 1 leaves 1 without an inverse
        let err = build_group_cat(&[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert!(matches!(err, CatError::NotAGroup(_)));
    }

    #[test]
    fn posets() {
        let chain = build_poset(&["0", "1"], &[(0, 1)]).unwrap();
        assert_eq!(chain.morphism_count(), 3);
        let cospan = build_poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(cospan.morphism_count(), 5);
        // square a ≤ b, a ≤ c, b ≤ d, c ≤ d closes to 4 + 4 + 1 = 9 arrows
        let square = build_poset(&["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(square.morphism_count(), 9);
        assert!(square.validate().is_empty());
        assert!(matches!(build_poset(&["a", "b"], &[(0, 1), (1, 0)]), Err(CatError::NotAntisymmetric { .. })));
    }
}
