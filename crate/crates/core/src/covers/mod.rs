//! Finite abelian covers by Reidemeister–Schreier rewriting.
//!
//! Every cover here is regular with a finite abelian deck group, so cosets
//! are just quotient elements and no coset enumeration is needed.

mod quotient;
mod schreier;

pub use quotient::{abelian_quotients, cyclic_quotient, parse_quotient_spec, FiniteAbelianQuotient};
pub use schreier::{
    cover_betti, iterated_cover_betti, reidemeister_schreier, rewrite, CosetTable, CoverRewrite,
};

use crate::error::Result;
use crate::presentation::GroupPresentation;

/// One branch of a tower of abelian covers.
#[derive(Clone, Debug)]
pub struct TowerPath {
    /// `quotients[k]` is a quotient of the level-`k` group.
    pub quotients: Vec<FiniteAbelianQuotient>,
    /// First Betti numbers of levels `0..=depth`.
    pub betti: Vec<usize>,
}

/// Every tower of the given depth in which each level is the cover for some
/// surjection onto an abelian group of order at most `max_order`.
pub fn abelian_towers(p: &GroupPresentation, max_order: u64, depth: usize) -> Result<Vec<TowerPath>> {
    let mut out = Vec::new();
    let root = TowerPath {
        quotients: Vec::new(),
        betti: vec![p.betti_number()?],
    };
    extend_tower(p, max_order, depth, root, &mut out)?;
    Ok(out)
}

fn extend_tower(
    p: &GroupPresentation,
    max_order: u64,
    remaining: usize,
    path: TowerPath,
    out: &mut Vec<TowerPath>,
) -> Result<()> {
    if remaining == 0 {
        out.push(path);
        return Ok(());
    }
    for q in abelian_quotients(p, max_order)? {
        let cover = reidemeister_schreier(p, &q)?;
        let mut next = path.clone();
        next.betti.push(cover.betti_number()?);
        next.quotients.push(q);
        extend_tower(&cover, max_order, remaining - 1, next, out)?;
    }
    Ok(())
}
