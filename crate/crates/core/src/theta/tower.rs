use std::sync::Arc;

use super::wreath::{wreath_functor, wreath_trunc, WreathCategory, WreathMorphism, WreathObject};
use super::ThetaError;
use crate::fincat::{product, product_functor, terminal, DeltaTrunc, FinCat, FinFunctor};

/// `μ_A : Δ_{≤k} × A → Δ≀A`, `(Δ_n, a) ↦ [Δ_n; (a, …, a)]` and
/// `(φ, g) ↦ [φ, (g, …, g)]`. The bounds of `delta` and `w` must agree.
pub fn mu_into(delta: &DeltaTrunc, w: &WreathCategory) -> Result<FinFunctor, ThetaError> {
    if delta.bound() != w.wmax() {
        return Err(ThetaError::Mismatch("Δ and wreath truncations differ".into()));
    }
    let (d, a) = (delta.cat(), w.base());
    let dom = Arc::new(product(d, a));
    let constant = |n: usize, x: usize| WreathObject::new(vec![x; n]);
    let obj_map = (0..dom.object_count())
        .map(|o| w.object_index(&constant(o / a.object_count(), o % a.object_count())).unwrap())
        .collect();
    let mor_map = (0..dom.morphism_count())
        .map(|m| {
            let (phi, g) = (delta.map(m / a.morphism_count()), m % a.morphism_count());
            let src = constant(phi.src, a.src(g));
            let tgt = constant(phi.tgt, a.tgt(g));
            let family = vec![g; phi.values[phi.src] - phi.values[0]];
            let f = WreathMorphism::new(a, src, tgt, phi.clone(), family).expect("μ image is well typed");
            w.morphism_index(&f).unwrap()
        })
        .collect();
    Ok(FinFunctor::new(dom, w.cat().clone(), obj_map, mor_map)?)
}

/// [`mu_into`] with a freshly built `Δ≀A` truncated at `k`.
pub fn mu_functor(a: Arc<FinCat>, k: usize) -> FinFunctor {
    mu_into(&DeltaTrunc::new(k), &wreath_trunc(a, k)).expect("bounds agree")
}

/// `I_a : Δ_{≤k} → Δ≀A`, `Δ_n ↦ [Δ_n; (a, …, a)]`, `φ ↦ [φ, (1_a, …)]`.
pub fn i_functor(delta: &DeltaTrunc, w: &WreathCategory, a: usize) -> Result<FinFunctor, ThetaError> {
    if delta.bound() > w.wmax() || a >= w.base().object_count() {
        return Err(ThetaError::Mismatch("I_a does not fit the truncation".into()));
    }
    let base = w.base();
    let obj_map = (0..=delta.bound()).map(|n| w.object_index(&WreathObject::new(vec![a; n])).unwrap()).collect();
    let mor_map = (0..delta.cat().morphism_count())
        .map(|m| {
            let phi = delta.map(m);
            let family = vec![base.identity(a); phi.values[phi.src] - phi.values[0]];
            let f = WreathMorphism::new(
                base,
                WreathObject::new(vec![a; phi.src]),
                WreathObject::new(vec![a; phi.tgt]),
                phi.clone(),
                family,
            )
            .expect("I_a image is well typed");
            w.morphism_index(&f).unwrap()
        })
        .collect();
    Ok(FinFunctor::new(delta.cat().clone(), w.cat().clone(), obj_map, mor_map)?)
}

/// Which of the two cases for `I_a` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IaReport {
    pub faithful: bool,
    pub fully_faithful: bool,
    /// `a` has no endomorphism besides its identity.
    pub rigid: bool,
}

pub fn i_report(delta: &DeltaTrunc, w: &WreathCategory, a: usize) -> Result<IaReport, ThetaError> {
    let i = i_functor(delta, w, a)?;
    Ok(IaReport {
        faithful: i.is_faithful(),
        fully_faithful: i.is_fully_faithful(),
        rigid: w.base().hom(a, a).len() == 1,
    })
}

/// `Θ_0 = e`, `Θ_{l+1} = Δ≀Θ_l`, every level truncated at width `k`, with the
/// inclusions `Θ_l ↪ Θ_{l+1}` coming from `e → Δ` at `Δ_0`.
#[derive(Clone, Debug)]
pub struct ThetaTower {
    width: usize,
    levels: Vec<Arc<FinCat>>,
    /// `wreaths[l]` is `Θ_{l+1}` presented as `Δ≀Θ_l`.
    wreaths: Vec<WreathCategory>,
    inclusions: Vec<FinFunctor>,
}

impl ThetaTower {
    pub fn level_count(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `Θ_n` at the top.
    pub fn cat(&self) -> &Arc<FinCat> {
        self.levels.last().unwrap()
    }

    pub fn level(&self, l: usize) -> &Arc<FinCat> {
        &self.levels[l]
    }

    /// `Θ_l` as a wreath product, for `l ≥ 1`.
    pub fn wreath(&self, l: usize) -> &WreathCategory {
        &self.wreaths[l - 1]
    }

    /// `Θ_l ↪ Θ_{l+1}`, for `l < n`.
    pub fn inclusion(&self, l: usize) -> &FinFunctor {
        &self.inclusions[l]
    }
}

/// Truncation of `Θ_n` at width `k` on every level.
pub fn theta_trunc(n: usize, k: usize) -> ThetaTower {
    let e = Arc::new(terminal());
    let mut levels = vec![e];
    let mut wreaths: Vec<WreathCategory> = Vec::with_capacity(n);
    let mut inclusions: Vec<FinFunctor> = Vec::with_capacity(n);
    for l in 0..n {
        let w = wreath_trunc(levels[l].clone(), k);
        levels.push(w.cat().clone());
        wreaths.push(w);
        let incl = if l == 0 {
            FinFunctor::point(levels[0].clone(), levels[1].clone(), 0).expect("[Δ_0] is an object")
        } else {
            wreath_functor(&inclusions[l - 1], &wreaths[l - 1], &wreaths[l]).expect("bases match")
        };
        inclusions.push(incl);
    }
    ThetaTower { width: k, levels, wreaths, inclusions }
}

/// `Δ_{≤k} ≅ Θ_1`, `Δ_n ↦ [Δ_n; (∗, …, ∗)]`.
pub fn delta_theta_iso(delta: &DeltaTrunc, theta1: &WreathCategory) -> Result<FinFunctor, ThetaError> {
    if theta1.base().morphism_count() != 1 {
        return Err(ThetaError::Mismatch("Θ_1 is Δ≀e".into()));
    }
    i_functor(delta, theta1, 0)
}

/// `(Δ_{≤k})^n` with `Δ^{n+1} = Δ × Δ^n` and `Δ^1 = Δ`, `Δ^0 = e`.
pub fn delta_power(delta: &DeltaTrunc, n: usize) -> Arc<FinCat> {
    match n {
        0 => Arc::new(terminal()),
        1 => delta.cat().clone(),
        _ => Arc::new(product(delta.cat(), &delta_power(delta, n - 1))),
    }
}

/// `m_n : (Δ_{≤k})^n → Θ_n` over a tower with at least `n` levels:
/// `m_0 = 1_e`, `m_1 = Δ ≅ Θ_1`, `m_{l+1} = μ_{Θ_l} ∘ (1_Δ × m_l)`.
pub fn m_into(delta: &DeltaTrunc, tower: &ThetaTower, n: usize) -> Result<FinFunctor, ThetaError> {
    if n > tower.level_count() || delta.bound() != tower.width() {
        return Err(ThetaError::Mismatch("tower too short or of another width".into()));
    }
    let mut m = FinFunctor::identity(tower.level(0).clone());
    for l in 0..n {
        m = if l == 0 {
            delta_theta_iso(delta, tower.wreath(1))?
        } else {
            let mu = mu_into(delta, tower.wreath(l + 1))?;
            product_functor(&FinFunctor::identity(delta.cat().clone()), &m).then(&mu)?
        };
    }
    Ok(m)
}

/// [`m_into`] over a freshly built `theta_trunc(n, k)`.
pub fn m_functor(n: usize, k: usize) -> FinFunctor {
    m_into(&DeltaTrunc::new(k), &theta_trunc(n, k), n).expect("tower matches")
}
