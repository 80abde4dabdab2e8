//! Finite group presentations, maps to Z, and the chain complex of the
//! infinite cyclic cover.

mod fox;
mod parse;
mod word;

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::{
    homology_decomposition, integer_abelianization, Abelianization, ModuleDecomposition,
    RingMatrix, SmithOptions,
};

pub use fox::{fox_derivative, fox_specialized, specialize, GroupRingElement};
pub use parse::{parse_presentation, parse_word, PresentationFile, CLOSED_3_MANIFOLD_FLAGS};
pub use word::{free_reduce, Letter, Word, WordDisplay};

/// Generators and relators of a finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Checks that names are unique and every relator letter is in range.
    /// Relators are stored freely reduced.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.generator_bound() > generators.len() {
                return Err(Error::InvalidArgument(format!(
                    "relator {i} uses generator index {} but only {} generators exist",
                    r.generator_bound() - 1,
                    generators.len()
                )));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators: relators.iter().map(Word::free_reduce).collect(),
        })
    }

    /// Free group on `x1, ..., x_rank`.
    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            generators: (1..=rank).map(|i| format!("x{i}")).collect(),
            relators: Vec::new(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display_with(&self.generators).to_string()
    }

    /// Relators x generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> RingMatrix<BigInt> {
        let g = self.generator_count();
        RingMatrix::from_rows_with_cols(
            self.relators
                .iter()
                .map(|r| r.exponent_vector(g).into_iter().map(BigInt::from).collect())
                .collect(),
            g,
        )
    }

    pub fn abelianization(&self) -> Result<Abelianization> {
        integer_abelianization(&self.exponent_matrix(), self.generator_count())
    }

    pub fn betti_number(&self) -> Result<usize> {
        Ok(self.abelianization()?.betti)
    }

    /// The same group with relators replaced by `f(index, relator)`.
    pub fn map_relators(&self, f: impl FnMut((usize, &Word)) -> Word) -> Result<Self> {
        let relators = self.relators.iter().enumerate().map(f).collect();
        Self::new(self.generators.clone(), relators)
    }

    /// Renders in the presentation file grammar.
    pub fn to_file_string(&self, name: Option<&str>, map: Option<&ZMap>, flags: &[String]) -> String {
        let mut s = String::new();
        if let Some(n) = name {
            let _ = writeln!(s, "name {n}");
        }
        let _ = writeln!(s, "gens {}", self.generators.join(" "));
        for r in &self.relators {
            let _ = writeln!(s, "rel {}", self.format_word(r));
        }
        if let Some(m) = map {
            let entries: Vec<String> = self
                .generators
                .iter()
                .zip(m.values())
                .map(|(g, v)| format!("{g}={v}"))
                .collect();
            let _ = writeln!(s, "map {}", entries.join(" "));
        }
        if !flags.is_empty() {
            let _ = writeln!(s, "flags {}", flags.join(" "));
        }
        s
    }
}

/// A homomorphism to Z given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMap {
    values: Vec<i64>,
}

impl ZMap {
    pub fn new(values: Vec<i64>) -> Self {
        ZMap { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn image(&self, w: &Word) -> i64 {
        w.image(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// gcd of the values; 0 for the zero map.
    pub fn content(&self) -> i64 {
        self.values.iter().fold(0i64, |g, &v| g.gcd(&v))
    }

    pub fn is_surjective(&self) -> bool {
        self.content() == 1
    }

    /// Divides out the content. The zero map is returned unchanged.
    pub fn primitive(&self) -> ZMap {
        let d = self.content();
        if d <= 1 {
            return self.clone();
        }
        ZMap::new(self.values.iter().map(|v| v / d).collect())
    }

    /// Arity matches and every relator maps to 0.
    pub fn validate(&self, p: &GroupPresentation) -> Result<()> {
        if self.values.len() != p.generator_count() {
            return Err(Error::MapArity {
                expected: p.generator_count(),
                found: self.values.len(),
            });
        }
        for (index, r) in p.relators().iter().enumerate() {
            let image = self.image(r);
            if image != 0 {
                return Err(Error::RelatorImage {
                    index,
                    relator: p.format_word(r),
                    image,
                });
            }
        }
        Ok(())
    }
}

/// `Λ^r --d2--> Λ^g --d1--> Λ` for the infinite cyclic cover.
#[derive(Clone, Debug, PartialEq)]
pub struct AlexanderComplex {
    /// generators x relators, `d2[i][j] = ∂r_j/∂x_i` specialized.
    pub d2: RingMatrix<LaurentPoly>,
    /// 1 x generators, `d1[i] = t^{ψ(x_i)} - 1`.
    pub d1: RingMatrix<LaurentPoly>,
}

/// Builds the complex and checks `d1 d2 = 0`.
///
/// A non-primitive map is replaced by its primitive part.
pub fn alexander_complex(p: &GroupPresentation, psi: &ZMap) -> Result<AlexanderComplex> {
    psi.validate(p)?;
    if psi.is_zero() {
        return Err(Error::ZeroMap);
    }
    let psi = psi.primitive();
    let vals = psi.values();
    let g = p.generator_count();

    let d1 = RingMatrix::from_rows_with_cols(
        vec![vals.iter().map(|&v| LaurentPoly::t_pow_minus_one(v)).collect()],
        g,
    );
    let columns = p
        .relators()
        .iter()
        .map(|r| (0..g).map(|i| specialize(&fox_derivative(r, i), vals)).collect())
        .collect();
    let d2 = RingMatrix::from_columns(columns, g);

    let composite = d1.mul(&d2)?;
    if let Some(col) = (0..composite.cols()).find(|&j| !composite[(0, j)].is_zero()) {
        return Err(Error::NotChainComplex { row: 0, col });
    }
    Ok(AlexanderComplex { d2, d1 })
}

/// `H_1` of the infinite cyclic cover as a Λ-module.
pub fn infinite_cyclic_homology(p: &GroupPresentation, psi: &ZMap) -> Result<ModuleDecomposition> {
    infinite_cyclic_homology_with(p, psi, &SmithOptions::default())
}

pub fn infinite_cyclic_homology_with(
    p: &GroupPresentation,
    psi: &ZMap,
    opts: &SmithOptions,
) -> Result<ModuleDecomposition> {
    let c = alexander_complex(p, psi)?;
    homology_decomposition(&c.d2, &c.d1, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn heisenberg_e1() -> (GroupPresentation, ZMap) {
        let f = parse_presentation("gens x y t ; rel [x,y] t^-1 ; rel [x,t] ; rel [y,t] ; map x=1 y=0 t=0")
            .unwrap();
        (f.presentation, f.map.unwrap())
    }

    #[test]
    fn heisenberg_complex() {
        let (p, psi) = heisenberg_e1();
        let c = alexander_complex(&p, &psi).unwrap();
        assert_eq!(c.d1.row(0), &[lp("t - 1"), lp("0"), lp("0")]);
        assert_eq!(c.d2.column(0), vec![lp("0"), lp("t - 1"), lp("-1")]);
        assert_eq!(c.d2.column(1), vec![lp("0"), lp("0"), lp("t - 1")]);
        assert_eq!(c.d2.column(2), vec![lp("0"), lp("0"), lp("0")]);

        let m = infinite_cyclic_homology(&p, &psi).unwrap();
        assert_eq!(m.rank, 0);
        assert_eq!(m.to_string(), "Λ/(t^2 - 2*t + 1)");
        assert_eq!(p.betti_number().unwrap(), 2);
    }

    #[test]
    fn free_group_complex() {
        let p = GroupPresentation::free(2);
        let psi = ZMap::new(vec![1, 0]);
        let c = alexander_complex(&p, &psi).unwrap();
        assert_eq!(c.d1.row(0), &[lp("t - 1"), lp("0")]);
        assert_eq!(c.d2.cols(), 0);
        assert_eq!(infinite_cyclic_homology(&p, &psi).unwrap(), ModuleDecomposition::free(1));
    }

    #[test]
    fn trefoil_complex() {
        let f = parse_presentation("gens a b ; rel a b a b^-1 a^-1 b^-1 ; map a=1 b=1").unwrap();
        let (p, psi) = (f.presentation, f.map.unwrap());
        let c = alexander_complex(&p, &psi).unwrap();
        assert_eq!((c.d2.rows(), c.d2.cols()), (2, 1));
        let m = infinite_cyclic_homology(&p, &psi).unwrap();
        assert_eq!(m.rank, 0);
        assert_eq!(m.to_string(), "Λ/(t^2 - t + 1)");
        let ab = p.abelianization().unwrap();
        assert_eq!((ab.betti, ab.torsion.len()), (1, 0));
    }

    #[test]
    fn map_errors() {
        let (p, _) = heisenberg_e1();
        assert!(matches!(
            alexander_complex(&p, &ZMap::new(vec![0, 0, 1])),
            Err(Error::RelatorImage { index: 0, image: -1, .. })
        ));
        assert_eq!(alexander_complex(&p, &ZMap::new(vec![0, 0, 0])), Err(Error::ZeroMap));
        assert!(matches!(
            alexander_complex(&p, &ZMap::new(vec![1, 0])),
            Err(Error::MapArity { expected: 3, found: 2 })
        ));
        let doubled = infinite_cyclic_homology(&p, &ZMap::new(vec![2, 0, 0])).unwrap();
        assert_eq!(doubled.to_string(), "Λ/(t^2 - 2*t + 1)");
    }

    #[test]
    fn file_round_trip() {
        let (p, psi) = heisenberg_e1();
        let flags = vec!["closed3manifold".to_string(), "beta1=2".to_string()];
        let text = p.to_file_string(Some("h"), Some(&psi), &flags);
        let back = parse_presentation(&text).unwrap();
        assert_eq!(back.presentation, p);
        assert_eq!(back.map, Some(psi));
        assert_eq!(back.flags, flags);
        assert_eq!(back.name.as_deref(), Some("h"));
    }
}
