use std::sync::Arc;

use super::{FinCat, FinFunctor};

/// Searches for an isomorphism `a → b`. Objects are matched by backtracking
/// on the matrix of Hom-set sizes; morphisms are then assigned one at a time
/// and every composite of assigned morphisms is forced.
pub fn find_isomorphism(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<FinFunctor> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return None;
    }
    let n = a.object_count();
    let mut obj = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_objects(a, b, 0, &mut obj, &mut used)
}

fn search_objects(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    x: usize,
    obj: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<FinFunctor> {
    let n = a.object_count();
    if x == n {
        return search_morphisms(a, b, obj);
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        let fits = (0..=x).all(|z| {
            let w = if z == x { y } else { obj[z] };
            a.hom(x, z).len() == b.hom(y, w).len() && a.hom(z, x).len() == b.hom(w, y).len()
        });
        if !fits {
            continue;
        }
        obj[x] = y;
        used[y] = true;
        if let Some(f) = search_objects(a, b, x + 1, obj, used) {
            return Some(f);
        }
        used[y] = false;
        obj[x] = usize::MAX;
    }
    None
}

struct State {
    mor: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl State {
    fn assign(&mut self, f: usize, g: usize) {
        self.mor[f] = g;
        self.used[g] = true;
        self.trail.push(f);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let f = self.trail.pop().unwrap();
            self.used[self.mor[f]] = false;
            self.mor[f] = usize::MAX;
        }
    }
}

/// Forces composites until nothing changes; false on a contradiction.
fn propagate(a: &FinCat, b: &FinCat, obj: &[usize], st: &mut State, from: usize) -> bool {
    let mut next = from;
    while next < st.trail.len() {
        let f = st.trail[next];
        next += 1;
        // pair f with every assigned morphism on either side
        let after: Vec<(usize, usize)> = a.out_of(a.tgt(f)).iter().map(|&g| (g, f)).collect();
        let before: Vec<(usize, usize)> =
            (0..a.object_count()).flat_map(|s| a.hom(s, a.src(f)).iter().map(move |&e| (f, e))).collect();
        for (g, e) in after.into_iter().chain(before) {
            if st.mor[g] == usize::MAX || st.mor[e] == usize::MAX {
                continue;
            }
            let h = a.compose(g, e);
            let image = b.compose(st.mor[g], st.mor[e]);
            if st.mor[h] == usize::MAX {
                let typed = b.src(image) == obj[a.src(h)] && b.tgt(image) == obj[a.tgt(h)];
                if st.used[image] || !typed {
                    return false;
                }
                st.assign(h, image);
            } else if st.mor[h] != image {
                return false;
            }
        }
    }
    true
}

fn search_morphisms(a: &Arc<FinCat>, b: &Arc<FinCat>, obj: &[usize]) -> Option<FinFunctor> {
    let mut st =
        State { mor: vec![usize::MAX; a.morphism_count()], used: vec![false; b.morphism_count()], trail: Vec::new() };
    for x in 0..a.object_count() {
        st.assign(a.identity(x), b.identity(obj[x]));
    }
    if !propagate(a, b, obj, &mut st, 0) {
        return None;
    }
    if !extend(a, b, obj, &mut st, 0) {
        return None;
    }
    FinFunctor::new(a.clone(), b.clone(), obj.to_vec(), st.mor).ok().filter(FinFunctor::is_isomorphism)
}

fn extend(a: &FinCat, b: &FinCat, obj: &[usize], st: &mut State, start: usize) -> bool {
    let Some(f) = (start..a.morphism_count()).find(|&f| st.mor[f] == usize::MAX) else { return true };
    let mark = st.trail.len();
    for &g in b.hom(obj[a.src(f)], obj[a.tgt(f)]) {
        if st.used[g] {
            continue;
        }
        st.assign(f, g);
        if propagate(a, b, obj, st, mark) && extend(a, b, obj, st, f + 1) {
            return true;
        }
        st.undo_to(mark);
    }
    false
}
