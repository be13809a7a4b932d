use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, FinFunctor, Morphism};
use crate::presheaf::SetPresheaf;

/// `A^op`: same objects and morphism indices, ends swapped.
pub fn opposite(c: &FinCat) -> FinCat {
    let morphisms = c.morphisms().iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
    FinCat::from_fn(c.objects().to_vec(), morphisms, c.identities().to_vec(), |g, f| Some(c.compose(f, g)))
        .expect("opposite of a total table is total")
}

/// `A × B`. Object `(x, y)` has index `x·|Ob B| + y`, morphism `(f, g)` has
/// index `f·|Mor B| + g`.
pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
    let (nb, mb) = (b.object_count(), b.morphism_count());
    let mut objects = Vec::with_capacity(a.object_count() * nb);
    for x in a.objects() {
        for y in b.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::with_capacity(a.morphism_count() * mb);
    for f in a.morphisms() {
        for g in b.morphisms() {
            morphisms.push(Morphism {
                name: format!("({},{})", f.name, g.name),
                src: f.src * nb + g.src,
                tgt: f.tgt * nb + g.tgt,
            });
        }
    }
    let identities =
        (0..a.object_count()).flat_map(|x| (0..nb).map(move |y| a.identity(x) * mb + b.identity(y))).collect();
    FinCat::from_fn(objects, morphisms, identities, |g, f| {
        Some(a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb))
    })
    .expect("product of total tables is total")
}

/// `F × G : A × C → B × D`, with the index conventions of [`product`].
pub fn product_functor(f: &FinFunctor, g: &FinFunctor) -> FinFunctor {
    let dom = Arc::new(product(f.dom(), g.dom()));
    let cod = Arc::new(product(f.cod(), g.cod()));
    let (nd, nc) = (g.dom().object_count(), g.cod().object_count());
    let (md, mc) = (g.dom().morphism_count(), g.cod().morphism_count());
    let obj_map = (0..dom.object_count()).map(|o| f.obj(o / nd) * nc + g.obj(o % nd)).collect();
    let mor_map = (0..dom.morphism_count()).map(|m| f.mor(m / md) * mc + g.mor(m % md)).collect();
    FinFunctor::new(dom, cod, obj_map, mor_map).expect("product of functors has the right shape")
}

/// A category over a base, such as `A/b` or `A/X`, with its projection.
#[derive(Clone, Debug)]
pub struct Slice {
    pub cat: Arc<FinCat>,
    pub projection: FinFunctor,
    /// For each object: the base object and the index of its tag (a morphism
    /// of the codomain for slices, an element for categories of elements).
    pub objects: Vec<(usize, usize)>,
}

impl Slice {
    pub fn find(&self, base_object: usize, tag: usize) -> Option<usize> {
        self.objects.iter().position(|&o| o == (base_object, tag))
    }
}

/// Builds a category over `base` whose objects are `objects` and whose
/// morphisms `s → t` are base arrows `g` out of the base object of `s` with
/// `t ∈ targets(s, g)`.
fn fibred<F>(base: &Arc<FinCat>, objects: Vec<(usize, usize)>, names: Vec<String>, targets: F) -> Slice
where
    F: Fn(usize, usize) -> Vec<usize>,
{
    let mut morphisms = Vec::new();
    let mut over = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (s, &(a, _)) in objects.iter().enumerate() {
        for &g in base.out_of(a) {
            for t in targets(s, g) {
                index.insert((s, g, t), morphisms.len());
                morphisms.push(Morphism {
                    name: format!("{}@{}>{}", base.morphism(g).name, names[s], names[t]),
                    src: s,
                    tgt: t,
                });
                over.push(g);
            }
        }
    }
    let identities: Vec<usize> =
        objects.iter().enumerate().map(|(s, &(a, _))| index[&(s, base.identity(a), s)]).collect();
    let cat = FinCat::from_fn(names, morphisms.clone(), identities, |g, f| {
        index.get(&(morphisms[f].src, base.compose(over[g], over[f]), morphisms[g].tgt)).copied()
    })
    .expect("composites of a slice stay in the slice");
    let cat = Arc::new(cat);
    let obj_map = objects.iter().map(|&(a, _)| a).collect();
    let projection = FinFunctor::new(cat.clone(), base.clone(), obj_map, over).expect("projection has the right shape");
    Slice { cat, projection, objects }
}

/// `A/b` for `u : A → B`: pairs `(a, f : u a → b)`, morphisms `g : a → a'`
/// with `f' ∘ u(g) = f`.
pub fn slice_over(u: &FinFunctor, b: usize) -> Slice {
    let (dom, cod) = (u.dom(), u.cod());
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for a in 0..dom.object_count() {
        for &f in cod.hom(u.obj(a), b) {
            objects.push((a, f));
            names.push(format!("{}/{}", dom.object_name(a), cod.morphism(f).name));
        }
    }
    let position: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let objs = objects.clone();
    fibred(dom, objects, names, |s, g| {
        let f = objs[s].1;
        let a2 = dom.tgt(g);
        let ug = u.mor(g);
        cod.hom(u.obj(a2), b).iter().filter(|&&f2| cod.compose(f2, ug) == f).map(|&f2| position[&(a2, f2)]).collect()
    })
}

/// `A/X`: pairs `(a, s ∈ X(a))`, morphisms `f : a → a'` with `X(f)(s') = s`.
pub fn category_of_elements(x: &SetPresheaf) -> Slice {
    let base = x.base();
    let mut objects = Vec::new();
    let mut names = Vec::new();
    let mut first = Vec::with_capacity(base.object_count());
    for a in 0..base.object_count() {
        first.push(objects.len());
        for s in 0..x.size(a) {
            objects.push((a, s));
            names.push(format!("{}/{}", base.object_name(a), x.label(a, s)));
        }
    }
    let objs = objects.clone();
    fibred(base, objects, names, |s, f| {
        let a2 = base.tgt(f);
        (0..x.size(a2)).filter(|&s2| x.act(f, s2) == objs[s].1).map(|s2| first[a2] + s2).collect()
    })
}

/// Component label of each object, components numbered in order of first
/// appearance, together with the number of components.
pub fn connected_components(c: &FinCat) -> (usize, Vec<usize>) {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in c.morphisms() {
        let (r, s) = (find(&mut parent, m.src), find(&mut parent, m.tgt));
        if r != s {
            parent[r.max(s)] = r.min(s);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut root_label = HashMap::new();
    for a in 0..n {
        let r = find(&mut parent, a);
        let next = root_label.len();
        label[a] = *root_label.entry(r).or_insert(next);
    }
    (root_label.len(), label)
}

/// Objects receiving exactly one morphism from every object.
pub fn terminal_objects(c: &FinCat) -> Vec<usize> {
    (0..c.object_count()).filter(|&t| (0..c.object_count()).all(|a| c.hom(a, t).len() == 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::{build_delta_trunc, build_poset, terminal};
    use super::*;

    #[test]
    fn opposite_is_an_involution() {
        let d = build_delta_trunc(2);
        let op = opposite(&d);
        assert!(op.validate().is_empty());
        assert_eq!(opposite(&op), d);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.hom(i, j).len(), d.hom(j, i).len());
            }
        }
    }

    #[test]
    fn product_counts() {
        let d1 = build_delta_trunc(1);
        let p = product(&d1, &d1);
        assert!(p.validate().is_empty());
        assert_eq!(p.object_count(), 4);
        // Hom counts of Δ_{≤1} are 1, 2, 1, 3 per pair; Mor = 7, so 49 pairs
        assert_eq!(p.morphism_count(), 49);
        let e = terminal();
        let left = product(&e, &d1);
        assert_eq!(left.morphism_count(), d1.morphism_count());
    }

    #[test]
    fn slice_over_identity_has_terminal_object() {
        let square = Arc::new(build_poset(&["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        let id = FinFunctor::identity(square.clone());
        for b in 0..4 {
            let s = slice_over(&id, b);
            assert!(s.cat.validate().is_empty());
            assert!(s.projection.validate().is_empty());
            let t = terminal_objects(&s.cat);
            assert_eq!(t, vec![s.find(b, square.identity(b)).unwrap()]);
        }
        // d is above everything, a only above itself
        assert_eq!(slice_over(&id, 3).cat.object_count(), 4);
        assert_eq!(slice_over(&id, 0).cat.object_count(), 1);
    }

    #[test]
    fn components() {
        let c = build_poset(&["a", "b", "c", "d"], &[(0, 1), (3, 2)]).unwrap();
        assert_eq!(connected_components(&c), (2, vec![0, 0, 1, 1]));
    }
}
