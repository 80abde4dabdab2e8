use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, SmithOptions};
use crate::presentation::{GroupPresentation, Word, ZMap};

/// A homomorphism onto `Z/m_1 ⊕ ... ⊕ Z/m_k`, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianQuotient {
    moduli: Vec<u64>,
    images: Vec<Vec<u64>>,
}

impl FiniteAbelianQuotient {
    /// Reduces the images modulo the moduli.
    pub fn new(moduli: Vec<u64>, images: Vec<Vec<i64>>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidArgument("moduli must be at least 1".into()));
        }
        let mut reduced = Vec::with_capacity(images.len());
        for (g, img) in images.iter().enumerate() {
            if img.len() != moduli.len() {
                return Err(Error::InvalidArgument(format!(
                    "image of generator {g} has {} coordinates, expected {}",
                    img.len(),
                    moduli.len()
                )));
            }
            reduced.push(
                img.iter()
                    .zip(&moduli)
                    .map(|(&v, &m)| v.rem_euclid(m as i64) as u64)
                    .collect(),
            );
        }
        Ok(FiniteAbelianQuotient {
            moduli,
            images: reduced,
        })
    }

    /// The order-one quotient on `generators` generators.
    pub fn trivial(generators: usize) -> Self {
        FiniteAbelianQuotient {
            moduli: Vec::new(),
            images: vec![Vec::new(); generators],
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Image of a word in the quotient.
    pub fn image(&self, w: &Word) -> Vec<u64> {
        let mut acc = vec![0u64; self.moduli.len()];
        for l in w.letters() {
            for (k, a) in acc.iter_mut().enumerate() {
                let m = self.moduli[k];
                let v = self.images[l.generator][k];
                *a = if l.inverse { (*a + m - v) % m } else { (*a + v) % m };
            }
        }
        acc
    }

    /// Arity matches and every relator dies.
    pub fn validate(&self, p: &GroupPresentation) -> Result<()> {
        if self.generator_count() != p.generator_count() {
            return Err(Error::InvalidArgument(format!(
                "quotient is defined on {} generators but the presentation has {}",
                self.generator_count(),
                p.generator_count()
            )));
        }
        for (index, r) in p.relators().iter().enumerate() {
            if self.image(r).iter().any(|&x| x != 0) {
                return Err(Error::InvalidQuotient {
                    context: String::new(),
                    index,
                    relator: p.format_word(r),
                });
            }
        }
        Ok(())
    }

    /// True when the images generate the whole group.
    pub fn is_surjective(&self) -> bool {
        let order = self.order() as usize;
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut stack = vec![vec![0u64; self.moduli.len()]];
        let mut count = 1;
        while let Some(e) = stack.pop() {
            for img in &self.images {
                let next: Vec<u64> = e
                    .iter()
                    .zip(img)
                    .zip(&self.moduli)
                    .map(|((a, b), m)| (a + b) % m)
                    .collect();
                let i = encode(&next, &self.moduli);
                if !seen[i] {
                    seen[i] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == order
    }

    /// Renders as a quotient spec string, e.g. `mod 2,4; x=(1,0) y=(0,1)`.
    pub fn to_spec_string(&self, generators: &[String]) -> String {
        let mods: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        let mut s = format!("mod {};", mods.join(","));
        for (name, img) in generators.iter().zip(&self.images) {
            let coords: Vec<String> = img.iter().map(u64::to_string).collect();
            let _ = write!(s, " {name}=({})", coords.join(","));
        }
        s
    }
}

/// Mixed-radix index of a group element.
pub(crate) fn encode(e: &[u64], moduli: &[u64]) -> usize {
    e.iter()
        .zip(moduli)
        .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
}

pub(crate) fn decode(mut i: usize, moduli: &[u64]) -> Vec<u64> {
    let mut e = vec![0u64; moduli.len()];
    for k in (0..moduli.len()).rev() {
        let m = moduli[k] as usize;
        e[k] = (i % m) as u64;
        i /= m;
    }
    e
}

/// `π -> Z -> Z/n` through `psi`.
pub fn cyclic_quotient(psi: &ZMap, n: u64) -> Result<FiniteAbelianQuotient> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "cyclic cover degree must be at least 1, got {n}"
        )));
    }
    FiniteAbelianQuotient::new(vec![n], psi.values().iter().map(|&v| vec![v]).collect())
}

/// Parses `mod 2,4; x=(1,0) y=(0,1) t=(0,0)`; unlisted generators map to 0.
pub fn parse_quotient_spec(spec: &str, p: &GroupPresentation) -> Result<FiniteAbelianQuotient> {
    let bad = |msg: &str| Error::InvalidArgument(format!("quotient spec `{spec}`: {msg}"));
    let (head, tail) = spec.split_once(';').unwrap_or((spec, ""));
    let moduli_text = head
        .trim()
        .strip_prefix("mod")
        .ok_or_else(|| bad("expected `mod m1,m2,...`"))?;
    let moduli: Vec<u64> = moduli_text
        .split(',')
        .map(|m| m.trim().parse::<u64>().map_err(|_| bad("moduli must be positive integers")))
        .collect::<Result<_>>()?;

    let mut images = vec![vec![0i64; moduli.len()]; p.generator_count()];
    let mut rest = tail.trim();
    while !rest.is_empty() {
        let (name, after) = rest.split_once('=').ok_or_else(|| bad("expected name=(...)"))?;
        let name = name.trim();
        let g = p
            .generator_index(name)
            .ok_or_else(|| bad(&format!("unknown generator `{name}`")))?;
        let after = after.trim_start();
        let inner = after.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
        let (coords, remainder) = inner.split_once(')').ok_or_else(|| bad("expected `)`"))?;
        let coords: Vec<i64> = coords
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| bad("coordinates must be integers")))
            .collect::<Result<_>>()?;
        if coords.len() != moduli.len() {
            return Err(bad(&format!(
                "`{name}` has {} coordinates for {} moduli",
                coords.len(),
                moduli.len()
            )));
        }
        images[g] = coords;
        rest = remainder.trim_start();
    }
    let q = FiniteAbelianQuotient::new(moduli, images)?;
    q.validate(p)?;
    Ok(q)
}

/// Invariant-factor types `d_1 | d_2 | ... ` with `1 < d_1` and order in
/// `2..=max_order`.
fn abelian_group_types(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if last == 1 { 2 } else { last };
        while order * d <= max {
            if d % last == 0 {
                prefix.push(d);
                extend(prefix, order * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|t| (t.iter().product::<u64>(), t.clone()));
    out
}

/// All elements `e` of `⊕ Z/m_k` with `d e = 0` (`d = 0` means no constraint).
fn killed_by(d: u64, moduli: &[u64]) -> Vec<Vec<u64>> {
    let order: u64 = moduli.iter().product();
    (0..order as usize)
        .map(|i| decode(i, moduli))
        .filter(|e| {
            d == 0
                || e.iter()
                    .zip(moduli)
                    .all(|(&x, &m)| (x * (d % m)) % m == 0)
        })
        .collect()
}

/// Automorphisms of `⊕ Z/m_k`, each given by the images of the standard
/// basis vectors.
fn automorphisms(moduli: &[u64]) -> Vec<Vec<Vec<u64>>> {
    let order = moduli.iter().product::<u64>() as usize;
    let choices: Vec<Vec<Vec<u64>>> = moduli.iter().map(|&m| killed_by(m, moduli)).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; moduli.len()];
    loop {
        let basis: Vec<Vec<u64>> = pick
            .iter()
            .enumerate()
            .map(|(k, &i)| choices[k][i].clone())
            .collect();
        let q = FiniteAbelianQuotient {
            moduli: moduli.to_vec(),
            images: basis.clone(),
        };
        // a surjective endomorphism of a finite group is bijective
        if order == 1 || q.is_surjective() {
            out.push(basis);
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn apply_automorphism(aut: &[Vec<u64>], e: &[u64], moduli: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; moduli.len()];
    for (coeff, col) in e.iter().zip(aut) {
        for (k, o) in out.iter_mut().enumerate() {
            *o = (*o + coeff * col[k]) % moduli[k];
        }
    }
    out
}

/// Surjections of the group onto abelian groups of order `2..=max_order`,
/// one per kernel, in a deterministic order.
pub fn abelian_quotients(p: &GroupPresentation, max_order: u64) -> Result<Vec<FiniteAbelianQuotient>> {
    let g = p.generator_count();
    let snf = smith_normal_form(
        &p.exponent_matrix(),
        &SmithOptions {
            transforms: true,
            degree_cap: None,
        },
    )?;
    let v = snf.right.as_ref().expect("transforms requested");
    // coordinate i of the abelianization is killed by d_i (0 = free)
    let orders: Vec<BigInt> = (0..g)
        .map(|i| snf.invariant_factors.get(i).cloned().unwrap_or_default())
        .collect();
    let coeff = |j: usize, i: usize, m: u64| -> u64 {
        v[(j, i)]
            .mod_floor(&BigInt::from(m))
            .to_u64()
            .expect("reduced below the modulus")
    };

    let mut out = Vec::new();
    for moduli in abelian_group_types(max_order) {
        let exponent = moduli.iter().copied().fold(1, |a, m| a.lcm(&m));
        let choices: Vec<Vec<Vec<u64>>> = orders
            .iter()
            .map(|d| {
                // free coordinates and d ≡ 0 mod the exponent are unconstrained
                let d = if d.is_positive() {
                    (d % BigInt::from(exponent)).to_u64().unwrap()
                } else {
                    0
                };
                killed_by(d, &moduli)
            })
            .collect();
        let auts = automorphisms(&moduli);
        let mut seen = BTreeSet::new();
        let mut pick = vec![0usize; g];
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        'outer: loop {
            let psi: Vec<&Vec<u64>> = pick.iter().enumerate().map(|(i, &c)| &choices[i][c]).collect();
            let images: Vec<Vec<u64>> = (0..g)
                .map(|j| {
                    let mut e = vec![0u64; moduli.len()];
                    for (i, img) in psi.iter().enumerate() {
                        for (k, x) in e.iter_mut().enumerate() {
                            let m = moduli[k];
                            *x = (*x + coeff(j, i, m) * img[k]) % m;
                        }
                    }
                    e
                })
                .collect();
            let q = FiniteAbelianQuotient {
                moduli: moduli.clone(),
                images,
            };
            if q.is_surjective() {
                let canonical = auts
                    .iter()
                    .map(|a| {
                        q.images
                            .iter()
                            .map(|e| apply_automorphism(a, e, &moduli))
                            .collect::<Vec<_>>()
                    })
                    .min()
                    .expect("identity automorphism");
                if seen.insert(canonical.clone()) {
                    let q = FiniteAbelianQuotient {
                        moduli: moduli.clone(),
                        images: canonical,
                    };
                    debug_assert!(q.validate(p).is_ok());
                    out.push(q);
                }
            }
            let mut k = 0;
            loop {
                if k == g {
                    break 'outer;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn cyclic_examples() {
        let q = cyclic_quotient(&ZMap::new(vec![1, 0]), 3).unwrap();
        assert_eq!(q.images(), &[vec![1], vec![0]]);
        assert_eq!(cyclic_quotient(&ZMap::new(vec![5, -1]), 1).unwrap().order(), 1);
        let q = cyclic_quotient(&ZMap::new(vec![2, 3]), 5).unwrap();
        assert_eq!(q.images(), &[vec![2], vec![3]]);
        assert!(cyclic_quotient(&ZMap::new(vec![1]), 0).is_err());
    }

    #[test]
    fn group_types() {
        assert_eq!(
            abelian_group_types(8),
            vec![
                vec![2],
                vec![3],
                vec![2, 2],
                vec![4],
                vec![5],
                vec![6],
                vec![7],
                vec![2, 2, 2],
                vec![2, 4],
                vec![8]
            ]
        );
        assert_eq!(automorphisms(&[2, 2]).len(), 6);
        assert_eq!(automorphisms(&[4]).len(), 2);
        assert_eq!(automorphisms(&[2, 4]).len(), 8);
    }

    #[test]
    fn quotient_counts_of_free_abelian_groups() {
        // surjections Z^k -> A up to Aut(A)
        let z2 = parse_presentation("gens x y; rel [x,y]").unwrap().presentation;
        let qs = abelian_quotients(&z2, 4).unwrap();
        let count = |m: &[u64]| qs.iter().filter(|q| q.moduli() == m).count();
        assert_eq!((count(&[2]), count(&[3]), count(&[4]), count(&[2, 2])), (3, 4, 6, 1));

        let z3 = parse_presentation("gens x y t; rel [x,y]; rel [x,t]; rel [y,t]")
            .unwrap()
            .presentation;
        let qs = abelian_quotients(&z3, 4).unwrap();
        let count = |m: &[u64]| qs.iter().filter(|q| q.moduli() == m).count();
        assert_eq!((count(&[2]), count(&[3]), count(&[4]), count(&[2, 2])), (7, 13, 28, 7));
    }

    #[test]
    fn torsion_limits_quotients() {
        let p = parse_presentation("gens x; rel x^6").unwrap().presentation;
        let qs = abelian_quotients(&p, 8).unwrap();
        let moduli: Vec<&[u64]> = qs.iter().map(|q| q.moduli()).collect();
        assert_eq!(moduli, vec![&[2][..], &[3], &[6]]);
        for q in &qs {
            q.validate(&p).unwrap();
        }
    }

    #[test]
    fn spec_strings() {
        let f = parse_presentation("gens x y t; rel [x,y]; rel [x,t]; rel [y,t]").unwrap();
        let q = parse_quotient_spec("mod 2,4; x=(1,0) y=(0,1) t=(0,0)", &f.presentation).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(
            q.to_spec_string(f.presentation.generators()),
            "mod 2,4; x=(1,0) y=(0,1) t=(0,0)"
        );
        let q = parse_quotient_spec("mod 3; y=(-1)", &f.presentation).unwrap();
        assert_eq!(q.images(), &[vec![0], vec![2], vec![0]]);
        assert!(parse_quotient_spec("mod 2; z=(1)", &f.presentation).is_err());
        assert!(parse_quotient_spec("2; x=(1)", &f.presentation).is_err());

        let h = parse_presentation("gens x y t; rel [x,y] t^-1; rel [x,t]; rel [y,t]").unwrap();
        let err = parse_quotient_spec("mod 2; t=(1)", &h.presentation).unwrap_err();
        assert!(matches!(err, Error::InvalidQuotient { index: 0, .. }));
    }
}
