use std::collections::HashMap;
use std::sync::Arc;

use super::ThetaError;
use crate::fincat::{FinCat, FinFunctor, MonotoneMap, Morphism};

/// `[Δ_n; (a_1, …, a_n)]`. The width `n` is the number of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathObject {
    pub letters: Vec<usize>,
}

impl WreathObject {
    pub fn new(letters: Vec<usize>) -> Self {
        WreathObject { letters }
    }

    pub fn width(&self) -> usize {
        self.letters.len()
    }

    /// `a_i`, for `1 ≤ i ≤ n`.
    pub fn letter(&self, i: usize) -> usize {
        self.letters[i - 1]
    }
}

/// `[φ, f] : [Δ_n; a] → [Δ_m; a']` with `f_{ji} : a_i → a'_j` for
/// `φ(i−1) < j ≤ φ(i)`.
///
/// Every `j` in `φ(0) < j ≤ φ(n)` belongs to exactly one `i`, so the family
/// is stored as one base morphism per such `j`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathMorphism {
    src: WreathObject,
    tgt: WreathObject,
    phi: MonotoneMap,
    family: Vec<usize>,
}

impl WreathMorphism {
    pub fn new(
        base: &FinCat,
        src: WreathObject,
        tgt: WreathObject,
        phi: MonotoneMap,
        family: Vec<usize>,
    ) -> Result<Self, ThetaError> {
        if phi.src != src.width() || phi.tgt != tgt.width() {
            return Err(ThetaError::BadMorphism(format!(
                "φ goes [{}] → [{}] but the widths are {} and {}",
                phi.src,
                phi.tgt,
                src.width(),
                tgt.width()
            )));
        }
        let m = WreathMorphism { src, tgt, phi, family };
        let expected = m.phi.values[m.phi.src] - m.phi.values[0];
        if m.family.len() != expected {
            return Err(ThetaError::BadMorphism(format!("family has {} maps, φ needs {expected}", m.family.len())));
        }
        for (i, j) in m.index_pairs() {
            let f = m.component(j, i);
            if f >= base.morphism_count() || base.src(f) != m.src.letter(i) || base.tgt(f) != m.tgt.letter(j) {
                return Err(ThetaError::BadMorphism(format!("f_{{{j}{i}}} has the wrong source or target")));
            }
        }
        Ok(m)
    }

    pub fn identity(base: &FinCat, x: &WreathObject) -> Self {
        WreathMorphism {
            src: x.clone(),
            tgt: x.clone(),
            phi: MonotoneMap::identity(x.width()),
            family: x.letters.iter().map(|&a| base.identity(a)).collect(),
        }
    }

    pub fn src(&self) -> &WreathObject {
        &self.src
    }

    pub fn tgt(&self) -> &WreathObject {
        &self.tgt
    }

    pub fn phi(&self) -> &MonotoneMap {
        &self.phi
    }

    pub fn family(&self) -> &[usize] {
        &self.family
    }

    /// φ(i)
    fn at(&self, i: usize) -> usize {
        self.phi.values[i]
    }

    /// The index set `{(i, j) : 1 ≤ i ≤ n, φ(i−1) < j ≤ φ(i)}`, by increasing `j`.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.phi.src).flat_map(|i| (self.at(i - 1) + 1..=self.at(i)).map(move |j| (i, j))).collect()
    }

    /// `f_{ji}`.
    pub fn component(&self, j: usize, i: usize) -> usize {
        assert!(i >= 1 && self.at(i - 1) < j && j <= self.at(i), "({i}, {j}) is outside the index set");
        self.family[j - self.at(0) - 1]
    }
}

/// `[φ', f'] ∘ [φ, f] = [φ'φ, f'']` with `f''_{i''i} = f'_{i''i'} f_{i'i}`,
/// where `i'` is the only integer with `φ(i−1) < i' ≤ φ(i)` and
/// `φ'(i'−1) < i'' ≤ φ'(i')`.
pub fn wreath_compose(base: &FinCat, g: &WreathMorphism, f: &WreathMorphism) -> Result<WreathMorphism, ThetaError> {
    if f.tgt != g.src {
        return Err(ThetaError::NotComposable);
    }
    let phi = g.phi.after(&f.phi);
    let n = f.phi.src;
    let mut family = Vec::with_capacity(phi.values[n] - phi.values[0]);
    for i in 1..=n {
        for i2 in phi.values[i - 1] + 1..=phi.values[i] {
            let i1 = (f.at(i - 1) + 1..=f.at(i))
                .find(|&i1| g.at(i1 - 1) < i2 && i2 <= g.at(i1))
                .expect("intermediate index exists");
            family.push(base.compose(g.component(i2, i1), f.component(i1, i)));
        }
    }
    Ok(WreathMorphism { src: f.src.clone(), tgt: g.tgt.clone(), phi, family })
}

/// All morphisms `x → y`: φ in lexicographic order, then families in
/// lexicographic order of positions in the base Hom-sets.
pub fn wreath_hom(base: &FinCat, x: &WreathObject, y: &WreathObject) -> Vec<WreathMorphism> {
    let mut out = Vec::new();
    for phi in MonotoneMap::all(x.width(), y.width()) {
        let proto = WreathMorphism { src: x.clone(), tgt: y.clone(), phi, family: Vec::new() };
        let choices: Vec<&[usize]> =
            proto.index_pairs().into_iter().map(|(i, j)| base.hom(x.letter(i), y.letter(j))).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut pos = vec![0; choices.len()];
        loop {
            let family = pos.iter().zip(&choices).map(|(&p, c)| c[p]).collect();
            out.push(WreathMorphism { family, ..proto.clone() });
            // odometer, last position fastest
            let Some(k) = (0..pos.len()).rev().find(|&k| pos[k] + 1 < choices[k].len()) else { break };
            pos[k] += 1;
            pos[k + 1..].iter_mut().for_each(|p| *p = 0);
        }
    }
    out
}

/// `|Hom([Δ_n; a], [Δ_m; a'])| = Σ_φ Π_{i, φ(i−1)<j≤φ(i)} |Hom_A(a_i, a'_j)|`.
pub fn hom_count(base: &FinCat, x: &WreathObject, y: &WreathObject) -> u128 {
    MonotoneMap::all(x.width(), y.width())
        .into_iter()
        .map(|phi| {
            (1..=x.width())
                .flat_map(|i| (phi.values[i - 1] + 1..=phi.values[i]).map(move |j| (i, j)))
                .map(|(i, j)| base.hom(x.letter(i), y.letter(j)).len() as u128)
                .product::<u128>()
        })
        .sum()
}

/// All objects of width at most `wmax`: by width, then letters lexicographically.
pub fn wreath_objects(base: &FinCat, wmax: usize) -> Vec<WreathObject> {
    let k = base.object_count();
    let mut out = Vec::new();
    for w in 0..=wmax {
        let total = k.checked_pow(w as u32).expect("object count overflows");
        for mut code in 0..total {
            let mut letters = vec![0; w];
            for slot in letters.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            out.push(WreathObject::new(letters));
        }
    }
    out
}

/// `Δ≀A` truncated at width `wmax`, with the wreath data behind every index.
#[derive(Clone, Debug)]
pub struct WreathCategory {
    base: Arc<FinCat>,
    wmax: usize,
    cat: Arc<FinCat>,
    objects: Vec<WreathObject>,
    morphisms: Vec<WreathMorphism>,
    object_index: HashMap<WreathObject, usize>,
    morphism_index: HashMap<WreathMorphism, usize>,
}

fn object_name(base: &FinCat, x: &WreathObject) -> String {
    if x.letters.is_empty() {
        return "[D0]".to_string();
    }
    let letters: Vec<&str> = x.letters.iter().map(|&a| base.object_name(a)).collect();
    format!("[D{};{}]", x.width(), letters.join(","))
}

impl WreathCategory {
    /// `<src|φ|family|tgt>` with base morphism names. Table names are
    /// `w<index>`, since composition tables of wreath products get long.
    pub fn describe(&self, f: usize) -> String {
        let m = &self.morphisms[f];
        let values: Vec<String> = m.phi.values.iter().map(ToString::to_string).collect();
        let family: Vec<&str> = m.family.iter().map(|&g| self.base.morphism(g).name.as_str()).collect();
        let (src, tgt) = (self.cat.src(f), self.cat.tgt(f));
        format!(
            "<{}|{}|{}|{}>",
            self.cat.object_name(src),
            values.join("."),
            family.join(","),
            self.cat.object_name(tgt)
        )
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn wmax(&self) -> usize {
        self.wmax
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn objects(&self) -> &[WreathObject] {
        &self.objects
    }

    pub fn object(&self, a: usize) -> &WreathObject {
        &self.objects[a]
    }

    pub fn morphism(&self, f: usize) -> &WreathMorphism {
        &self.morphisms[f]
    }

    pub fn object_index(&self, x: &WreathObject) -> Option<usize> {
        self.object_index.get(x).copied()
    }

    pub fn morphism_index(&self, f: &WreathMorphism) -> Option<usize> {
        self.morphism_index.get(f).copied()
    }
}

/// `Δ≀A` restricted to objects of width at most `wmax`. This is a full
/// subcategory, so composites never leave it.
pub fn wreath_trunc(base: Arc<FinCat>, wmax: usize) -> WreathCategory {
    let objects = wreath_objects(&base, wmax);
    let object_index: HashMap<WreathObject, usize> = objects.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let names: Vec<String> = objects.iter().map(|x| object_name(&base, x)).collect();
    let mut morphisms = Vec::new();
    for x in &objects {
        for y in &objects {
            morphisms.extend(wreath_hom(&base, x, y));
        }
    }
    let morphism_index: HashMap<WreathMorphism, usize> =
        morphisms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let table: Vec<Morphism> = morphisms
        .iter()
        .enumerate()
        .map(|(i, f)| Morphism { name: format!("w{i}"), src: object_index[&f.src], tgt: object_index[&f.tgt] })
        .collect();
    let identities = objects.iter().map(|x| morphism_index[&WreathMorphism::identity(&base, x)]).collect();
    let cat = FinCat::from_fn(names, table, identities, |g, f| {
        let h = wreath_compose(&base, &morphisms[g], &morphisms[f]).ok()?;
        morphism_index.get(&h).copied()
    })
    .expect("wreath composites stay within the truncation");
    WreathCategory { base, wmax, cat: Arc::new(cat), objects, morphisms, object_index, morphism_index }
}

/// `Δ≀F : [φ, f] ↦ [φ, F(f)]`, between truncations of the same width.
pub fn wreath_functor(
    f: &FinFunctor,
    source: &WreathCategory,
    target: &WreathCategory,
) -> Result<FinFunctor, ThetaError> {
    if f.dom() != source.base() || f.cod() != target.base() || source.wmax > target.wmax {
        return Err(ThetaError::Mismatch("functor does not match the wreath bases".into()));
    }
    let obj_map = source
        .objects
        .iter()
        .map(|x| target.object_index[&WreathObject::new(x.letters.iter().map(|&a| f.obj(a)).collect())])
        .collect();
    let mor_map = source
        .morphisms
        .iter()
        .map(|m| {
            let image = WreathMorphism {
                src: WreathObject::new(m.src.letters.iter().map(|&a| f.obj(a)).collect()),
                tgt: WreathObject::new(m.tgt.letters.iter().map(|&a| f.obj(a)).collect()),
                phi: m.phi.clone(),
                family: m.family.iter().map(|&g| f.mor(g)).collect(),
            };
            target.morphism_index[&image]
        })
        .collect();
    Ok(FinFunctor::new(source.cat.clone(), target.cat.clone(), obj_map, mor_map)?)
}
