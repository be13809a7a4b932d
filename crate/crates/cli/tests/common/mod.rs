#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use cathom::fincat::{
    build_delta_trunc, build_poset, cyclic_group_cat, discrete, product, terminal, DeltaTrunc, FinCat, FinFunctor,
};
use cathom::presheaf::{AbPresheaf, SetPresheaf};
use cathom::zlinalg::IntMatrix;
use cathom_cli::format::{emit_ab_presheaf, emit_category, emit_functor, emit_presheaf};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus(name: &str) -> String {
    corpus_dir().join(name).display().to_string()
}

pub enum Entry {
    Cat(FinCat),
    Psh { base: &'static str, x: SetPresheaf },
    Apsh { base: &'static str, x: AbPresheaf },
    Fun { source: &'static str, target: &'static str, u: FinFunctor },
}

impl Entry {
    pub fn emit(&self) -> String {
        match self {
            Entry::Cat(c) => emit_category(c).unwrap(),
            Entry::Psh { x, .. } => emit_presheaf(x).unwrap(),
            Entry::Apsh { x, .. } => emit_ab_presheaf(x),
            Entry::Fun { source, target, u } => emit_functor(u, source, target),
        }
    }
}

pub fn arrow() -> FinCat {
    build_poset(&["0", "1"], &[(0, 1)]).unwrap()
}

pub fn chain3() -> FinCat {
    build_poset(&["0", "1", "2"], &[(0, 1), (1, 2)]).unwrap()
}

pub fn cospan() -> FinCat {
    build_poset(&["a", "b", "c"], &[(0, 2), (1, 2)]).unwrap()
}

pub fn square() -> FinCat {
    build_poset(&["00", "01", "10", "11"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

/// Categories with a terminal object, paired with their file names.
pub const TERMINAL_POSETS: [&str; 4] = ["arrow.cat", "chain3.cat", "cospan.cat", "square.cat"];

/// All bundled categories.
pub const CATEGORIES: [&str; 12] = [
    "terminal.cat",
    "arrow.cat",
    "chain3.cat",
    "cospan.cat",
    "square.cat",
    "two_points.cat",
    "bz2.cat",
    "bz3.cat",
    "delta1.cat",
    "delta2.cat",
    "delta3.cat",
    "delta1x1.cat",
];

pub const FUNCTORS: [&str; 8] = [
    "arrow_to_terminal.fun",
    "chain3_to_terminal.fun",
    "cospan_to_terminal.fun",
    "square_to_terminal.fun",
    "two_points_to_terminal.fun",
    "top_of_arrow.fun",
    "delta1_in_delta2.fun",
    "diagonal_delta1.fun",
];

fn to_terminal(c: FinCat) -> FinFunctor {
    FinFunctor::to_terminal(Arc::new(c), Arc::new(terminal())).unwrap()
}

/// Every bundled file with the builder it must agree with.
pub fn entries() -> Vec<(&'static str, Entry)> {
    let d1 = build_delta_trunc(1);
    let d2 = Arc::new(build_delta_trunc(2));
    let bz2 = Arc::new(cyclic_group_cat(2));
    let sign =
        AbPresheaf::new(bz2.clone(), vec![1], vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[-1]])]).unwrap();
    let incl = {
        let (a, b) = (DeltaTrunc::new(1), DeltaTrunc::new(2));
        let mor = (0..a.cat().morphism_count()).map(|f| b.index_of(a.map(f))).collect();
        FinFunctor::checked(a.cat().clone(), b.cat().clone(), vec![0, 1], mor).unwrap()
    };
    let diagonal = {
        let d = Arc::new(d1.clone());
        let dd = Arc::new(product(&d1, &d1));
        let (n, m) = (d.object_count(), d.morphism_count());
        FinFunctor::checked(d, dd, (0..n).map(|a| a * n + a).collect(), (0..m).map(|f| f * m + f).collect()).unwrap()
    };
    vec![
        ("terminal.cat", Entry::Cat(terminal())),
        ("arrow.cat", Entry::Cat(arrow())),
        ("chain3.cat", Entry::Cat(chain3())),
        ("cospan.cat", Entry::Cat(cospan())),
        ("square.cat", Entry::Cat(square())),
        ("two_points.cat", Entry::Cat(discrete(&["x", "y"]))),
        ("bz2.cat", Entry::Cat(cyclic_group_cat(2))),
        ("bz3.cat", Entry::Cat(cyclic_group_cat(3))),
        ("delta1.cat", Entry::Cat(d1.clone())),
        ("delta2.cat", Entry::Cat(build_delta_trunc(2))),
        ("delta3.cat", Entry::Cat(build_delta_trunc(3))),
        ("delta1x1.cat", Entry::Cat(product(&d1, &d1))),
        ("rep_d1.psh", Entry::Psh { base: "delta2.cat", x: SetPresheaf::representable(d2.clone(), 1) }),
        ("sign.apsh", Entry::Apsh { base: "bz2.cat", x: sign }),
        ("arrow_to_terminal.fun", Entry::Fun { source: "arrow.cat", target: "terminal.cat", u: to_terminal(arrow()) }),
        (
            "chain3_to_terminal.fun",
            Entry::Fun { source: "chain3.cat", target: "terminal.cat", u: to_terminal(chain3()) },
        ),
        (
            "cospan_to_terminal.fun",
            Entry::Fun { source: "cospan.cat", target: "terminal.cat", u: to_terminal(cospan()) },
        ),
        (
            "square_to_terminal.fun",
            Entry::Fun { source: "square.cat", target: "terminal.cat", u: to_terminal(square()) },
        ),
        (
            "two_points_to_terminal.fun",
            Entry::Fun { source: "two_points.cat", target: "terminal.cat", u: to_terminal(discrete(&["x", "y"])) },
        ),
        (
            "top_of_arrow.fun",
            Entry::Fun {
                source: "terminal.cat",
                target: "arrow.cat",
                u: FinFunctor::point(Arc::new(terminal()), Arc::new(arrow()), 1).unwrap(),
            },
        ),
        ("delta1_in_delta2.fun", Entry::Fun { source: "delta1.cat", target: "delta2.cat", u: incl }),
        ("diagonal_delta1.fun", Entry::Fun { source: "delta1.cat", target: "delta1x1.cat", u: diagonal }),
    ]
}
