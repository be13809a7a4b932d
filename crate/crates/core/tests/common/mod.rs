#![allow(dead_code)]

use std::sync::Arc;

use cathom::fincat::{build_delta_trunc, build_poset, cyclic_group_cat, product, terminal, FinCat};

pub fn poset(names: &[&str], rel: &[(usize, usize)]) -> Arc<FinCat> {
    Arc::new(build_poset(names, rel).unwrap())
}

/// Small categories of every flavour: posets, groups, Δ truncations, a product.
pub fn small_categories() -> Vec<(&'static str, Arc<FinCat>)> {
    let d1 = build_delta_trunc(1);
    vec![
        ("terminal", Arc::new(terminal())),
        ("chain3", poset(&["0", "1", "2"], &[(0, 1), (1, 2)])),
        ("cospan", poset(&["a", "b", "c"], &[(0, 2), (1, 2)])),
        ("square", poset(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)])),
        ("bz2", Arc::new(cyclic_group_cat(2))),
        ("bz3", Arc::new(cyclic_group_cat(3))),
        ("delta1", Arc::new(d1.clone())),
        ("delta2", Arc::new(build_delta_trunc(2))),
        ("delta1x1", Arc::new(product(&d1, &d1))),
    ]
}
