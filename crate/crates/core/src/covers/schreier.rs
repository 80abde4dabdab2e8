use std::collections::{HashMap, HashSet, VecDeque};

use super::quotient::{encode, FiniteAbelianQuotient};
use crate::error::{Error, Result};
use crate::linalg::Abelianization;
use crate::presentation::{GroupPresentation, Letter, Word};

/// Cosets of the kernel of a finite abelian quotient, i.e. the quotient's
/// elements, in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct CosetTable {
    elements: Vec<Vec<u64>>,
    /// `action[g][c]` is the coset of `c * x_g`.
    action: Vec<Vec<usize>>,
    inverse_action: Vec<Vec<usize>>,
    /// Tree edge into each coset other than the identity.
    parent: Vec<Option<(usize, Letter)>>,
    representatives: Vec<Word>,
}

impl CosetTable {
    /// Breadth-first search over the letters `x1, x1^-1, x2, ...`, which makes
    /// each representative the shortlex-least word for its coset.
    pub fn new(q: &FiniteAbelianQuotient) -> Self {
        let moduli = q.moduli().to_vec();
        let order = q.order() as usize;
        let g = q.generator_count();
        let step = |e: &[u64], l: Letter| -> Vec<u64> {
            let img = &q.images()[l.generator];
            e.iter()
                .zip(img)
                .zip(&moduli)
                .map(|((a, b), m)| if l.inverse { (a + m - b) % m } else { (a + b) % m })
                .collect()
        };

        let mut slot = vec![usize::MAX; order];
        let mut elements = vec![vec![0u64; moduli.len()]];
        let mut parent = vec![None];
        let mut representatives = vec![Word::empty()];
        slot[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for rank in 0..2 * g {
                let l = Letter::new(rank / 2, rank % 2 == 1);
                let next = step(&elements[c], l);
                let code = encode(&next, &moduli);
                if slot[code] == usize::MAX {
                    slot[code] = elements.len();
                    let mut rep = representatives[c].clone();
                    rep.push(l);
                    representatives.push(rep);
                    parent.push(Some((c, l)));
                    elements.push(next);
                    queue.push_back(slot[code]);
                }
            }
        }

        let action: Vec<Vec<usize>> = (0..g)
            .map(|gen| {
                (0..elements.len())
                    .map(|c| slot[encode(&step(&elements[c], Letter::pos(gen)), &moduli)])
                    .collect()
            })
            .collect();
        let inverse_action = action
            .iter()
            .map(|perm| {
                let mut inv = vec![0; perm.len()];
                for (c, &d) in perm.iter().enumerate() {
                    inv[d] = c;
                }
                inv
            })
            .collect();
        CosetTable {
            elements,
            action,
            inverse_action,
            parent,
            representatives,
        }
    }

    /// Number of cosets reached; equals the quotient order when the
    /// quotient is surjective.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, c: usize) -> &[u64] {
        &self.elements[c]
    }

    pub fn representative(&self, c: usize) -> &Word {
        &self.representatives[c]
    }

    pub fn act(&self, c: usize, g: usize) -> usize {
        self.action[g][c]
    }

    /// Coset `d` with `d * x_g = c`.
    pub fn act_inverse(&self, c: usize, g: usize) -> usize {
        self.inverse_action[g][c]
    }

    /// Whether the Schreier generator `rep(c) x_g rep(c x_g)^-1` is freely
    /// trivial, i.e. lies on the spanning tree.
    pub fn is_tree_edge(&self, c: usize, g: usize) -> bool {
        let d = self.act(c, g);
        self.parent[d] == Some((c, Letter::pos(g))) || self.parent[c] == Some((d, Letter::neg(g)))
    }
}

/// A rewritten cover presentation with the counts before cleanup.
#[derive(Clone, Debug)]
pub struct CoverRewrite {
    pub presentation: GroupPresentation,
    /// `|Q| g - |Q| + 1` Schreier generators off the spanning tree.
    pub raw_generators: usize,
    /// `|Q| r` rewritten relators.
    pub raw_relators: usize,
    pub order: usize,
}

/// Presentation of the kernel of `q` (a finite-index normal subgroup).
pub fn reidemeister_schreier(p: &GroupPresentation, q: &FiniteAbelianQuotient) -> Result<GroupPresentation> {
    Ok(rewrite(p, q)?.presentation)
}

/// [`reidemeister_schreier`] with the raw generator and relator counts.
pub fn rewrite(p: &GroupPresentation, q: &FiniteAbelianQuotient) -> Result<CoverRewrite> {
    q.validate(p)?;
    let table = CosetTable::new(q);
    if table.len() as u64 != q.order() {
        return Err(Error::InvalidArgument(format!(
            "quotient of order {} is not surjective (image has {} elements)",
            q.order(),
            table.len()
        )));
    }
    let n = table.len();
    let g = p.generator_count();

    // Schreier generator (c, g) -> index among the non-tree ones
    let mut index = vec![vec![usize::MAX; n]; g];
    let mut names = Vec::new();
    for c in 0..n {
        for gen in 0..g {
            if !table.is_tree_edge(c, gen) {
                index[gen][c] = names.len();
                names.push(schreier_name(&p.generators()[gen], table.element(c), n));
            }
        }
    }
    let raw_generators = names.len();

    let mut relators = Vec::with_capacity(n * p.relator_count());
    for c in 0..n {
        for r in p.relators() {
            let mut w = Word::empty();
            let mut cur = c;
            for l in r.letters() {
                let gen = l.generator;
                // x_g^-1 at coset d reads the generator (d x_g^-1, g) inverted
                let from = if l.inverse { table.act_inverse(cur, gen) } else { cur };
                let s = index[gen][from];
                if s != usize::MAX {
                    w.push_reduced(Letter::new(s, l.inverse));
                }
                cur = if l.inverse { from } else { table.act(cur, gen) };
            }
            debug_assert_eq!(cur, c, "relator must close up in the quotient");
            relators.push(w);
        }
    }
    let raw_relators = relators.len();
    let (names, relators) = clean(names, relators);
    let names = dedupe_names(names);
    Ok(CoverRewrite {
        presentation: GroupPresentation::new(names, relators)?,
        raw_generators,
        raw_relators,
        order: n,
    })
}

fn schreier_name(base: &str, element: &[u64], order: usize) -> String {
    if order == 1 {
        return base.to_string();
    }
    let mut s = base.to_string();
    for x in element {
        s.push('_');
        s.push_str(&x.to_string());
    }
    s
}

fn dedupe_names(names: Vec<String>) -> Vec<String> {
    let unique: HashSet<&String> = names.iter().collect();
    if unique.len() == names.len() {
        return names;
    }
    (1..=names.len()).map(|k| format!("s{k}")).collect()
}

/// Free reduction, deletion of generators occurring as length-one relators,
/// and removal of empty relators.
fn clean(names: Vec<String>, relators: Vec<Word>) -> (Vec<String>, Vec<Word>) {
    let mut alive = vec![true; names.len()];
    let mut relators: Vec<Word> = relators.iter().map(Word::free_reduce).collect();
    while let Some(pos) = relators.iter().position(|r| r.len() == 1) {
        let dead = relators[pos].letters()[0].generator;
        alive[dead] = false;
        relators.remove(pos);
        for r in relators.iter_mut() {
            if r.letters().iter().any(|l| l.generator == dead) {
                let kept: Vec<Letter> =
                    r.letters().iter().copied().filter(|l| l.generator != dead).collect();
                *r = Word::from_letters(kept).free_reduce();
            }
        }
    }
    relators.retain(|r| !r.is_empty());

    let mut renumber = HashMap::new();
    let mut kept_names = Vec::new();
    for (i, name) in names.into_iter().enumerate() {
        if alive[i] {
            renumber.insert(i, kept_names.len());
            kept_names.push(name);
        }
    }
    let relators = relators
        .into_iter()
        .map(|r| {
            Word::from_letters(
                r.letters()
                    .iter()
                    .map(|l| Letter::new(renumber[&l.generator], l.inverse))
                    .collect(),
            )
        })
        .collect();
    (kept_names, relators)
}

/// Integer abelianization of the cover.
pub fn cover_betti(p: &GroupPresentation, q: &FiniteAbelianQuotient) -> Result<Abelianization> {
    reidemeister_schreier(p, q)?.abelianization()
}

/// First Betti numbers along a tower of covers: level 0 is `p` itself and
/// level `k` is the cover of level `k - 1` by `quotients[k - 1]`.
pub fn iterated_cover_betti(
    p: &GroupPresentation,
    quotients: &[FiniteAbelianQuotient],
) -> Result<Vec<(usize, usize)>> {
    let mut out = vec![(0, p.betti_number()?)];
    let mut current = p.clone();
    for (k, q) in quotients.iter().enumerate() {
        let level = k + 1;
        current = reidemeister_schreier(&current, q).map_err(|e| at_level(e, level))?;
        out.push((level, current.betti_number()?));
    }
    Ok(out)
}

fn at_level(e: Error, level: usize) -> Error {
    match e {
        Error::InvalidQuotient {
            context,
            index,
            relator,
        } => Error::InvalidQuotient {
            context: format!("tower level {level}: {context}"),
            index,
            relator,
        },
        Error::InvalidArgument(msg) => Error::InvalidArgument(format!("tower level {level}: {msg}")),
        other => other,
    }
}
