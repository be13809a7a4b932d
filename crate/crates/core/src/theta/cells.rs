//! Objects and morphisms of `Θ_n` as nested letter sequences, with no
//! width bound. Used to look one width past a truncation.

use std::collections::HashSet;

use rayon::prelude::*;

use super::tower::ThetaTower;
use crate::fincat::{FinFunctor, MonotoneMap};
use crate::homcore::{check_wab_aspherical, SliceVerdict};

/// `[Δ_w; (c_1, …, c_w)]` with letters one level down. The only object of
/// level 0 is `Cell(vec![])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell(pub Vec<Cell>);

/// `[φ, f]` with the family indexed as in `WreathMorphism`. The only
/// morphism of level 0 has `φ = 1_{[0]}` and an empty family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellMap {
    pub phi: MonotoneMap,
    pub family: Vec<CellMap>,
}

impl CellMap {
    fn point() -> Self {
        CellMap { phi: MonotoneMap::identity(0), family: Vec::new() }
    }
}

/// `Hom_{Θ_level}(x, y)`.
pub fn cell_hom(level: usize, x: &Cell, y: &Cell) -> Vec<CellMap> {
    if level == 0 {
        return vec![CellMap::point()];
    }
    let mut out = Vec::new();
    for phi in MonotoneMap::all(x.0.len(), y.0.len()) {
        let choices: Vec<Vec<CellMap>> = (1..=x.0.len())
            .flat_map(|i| (phi.values[i - 1] + 1..=phi.values[i]).map(move |j| (i, j)))
            .map(|(i, j)| cell_hom(level - 1, &x.0[i - 1], &y.0[j - 1]))
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pos = vec![0; choices.len()];
        loop {
            let family = pos.iter().zip(&choices).map(|(&p, c)| c[p].clone()).collect();
            out.push(CellMap { phi: phi.clone(), family });
            let Some(k) = (0..pos.len()).rev().find(|&k| pos[k] + 1 < choices[k].len()) else { break };
            pos[k] += 1;
            pos[k + 1..].iter_mut().for_each(|p| *p = 0);
        }
    }
    out
}

/// The wreath composition law, applied recursively.
pub fn cell_compose(g: &CellMap, f: &CellMap) -> CellMap {
    let phi = g.phi.after(&f.phi);
    let (fv, gv) = (&f.phi.values, &g.phi.values);
    let mut family = Vec::with_capacity(phi.values[phi.src] - phi.values[0]);
    for i in 1..=f.phi.src {
        for i2 in phi.values[i - 1] + 1..=phi.values[i] {
            let i1 = (fv[i - 1] + 1..=fv[i]).find(|&i1| gv[i1 - 1] < i2 && i2 <= gv[i1]).unwrap();
            family.push(cell_compose(&g.family[i2 - gv[0] - 1], &f.family[i1 - fv[0] - 1]));
        }
    }
    CellMap { phi, family }
}

/// `m_n(Δ_{p_1}, …, Δ_{p_n})`.
pub fn m_cell(dims: &[usize]) -> Cell {
    match dims.split_first() {
        None => Cell(Vec::new()),
        Some((&p, rest)) => Cell(vec![m_cell(rest); p]),
    }
}

/// `m_n(θ_1, …, θ_n)`.
pub fn m_cell_map(maps: &[MonotoneMap]) -> CellMap {
    match maps.split_first() {
        None => CellMap::point(),
        Some((phi, rest)) => {
            let inner = m_cell_map(rest);
            CellMap { phi: phi.clone(), family: vec![inner; phi.values[phi.src] - phi.values[0]] }
        }
    }
}

impl ThetaTower {
    /// Object `b` of level `l` as a cell.
    pub fn cell(&self, l: usize, b: usize) -> Cell {
        if l == 0 {
            return Cell(Vec::new());
        }
        Cell(self.wreath(l).object(b).letters.iter().map(|&a| self.cell(l - 1, a)).collect())
    }
}

fn tuples(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| (0..=max).map(move |p| [t.clone(), vec![p]].concat())).collect()
    })
}

fn delta_maps(src: &[usize], tgt: &[usize]) -> Vec<Vec<MonotoneMap>> {
    src.iter().zip(tgt).fold(vec![Vec::new()], |acc, (&p, &q)| {
        acc.into_iter()
            .flat_map(|t| MonotoneMap::all(p, q).into_iter().map(move |m| [t.clone(), vec![m]].concat()))
            .collect()
    })
}

/// Whether the truncated slice `(Δ_{≤k})^n / b` of `m_n` is closed under the
/// factorizations it would need one width further: every `m_n(x) → b` with
/// `x` in `(Δ_{≤k+1})^n` factors as `g ∘ m_n(ε)` with `ε : x → x'` and `x'`
/// inside the truncation.
pub fn slice_is_closed(tower: &ThetaTower, b: usize) -> bool {
    let (n, k) = (tower.level_count(), tower.width());
    let target = tower.cell(n, b);
    let inside = tuples(n, k);
    tuples(n, k + 1).into_iter().filter(|x| x.contains(&(k + 1))).all(|x| {
        let wanted = cell_hom(n, &m_cell(&x), &target);
        let mut reached: HashSet<CellMap> = HashSet::new();
        for x2 in &inside {
            let through = cell_hom(n, &m_cell(x2), &target);
            for eps in delta_maps(&x, x2) {
                let me = m_cell_map(&eps);
                reached.extend(through.iter().map(|g| cell_compose(g, &me)));
            }
        }
        wanted.iter().all(|f| reached.contains(f))
    })
}

/// Slice verdict for one object of `Θ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaVerdict {
    Pass,
    Fail,
    /// The truncation clips the slice; no verdict is drawn.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSliceReport {
    pub slice: SliceVerdict,
    pub certified: bool,
    pub verdict: ThetaVerdict,
}

/// Asphericity of `m_n` over a tower: slice homology below `bound` for every
/// object, with a verdict only where [`slice_is_closed`] holds.
pub fn theta_asphericity(tower: &ThetaTower, m: &FinFunctor, bound: usize) -> Vec<ThetaSliceReport> {
    let report = check_wab_aspherical(m, bound);
    report
        .objects
        .into_par_iter()
        .map(|slice| {
            let certified = slice_is_closed(tower, slice.object);
            let verdict = match (certified, slice.aspherical) {
                (false, _) => ThetaVerdict::Uncertified,
                (true, true) => ThetaVerdict::Pass,
                (true, false) => ThetaVerdict::Fail,
            };
            ThetaSliceReport { slice, certified, verdict }
        })
        .collect()
}
