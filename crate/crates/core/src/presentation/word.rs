use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Position in the order `x1, x1^-1, x2, x2^-1, ...`.
    pub fn rank(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// A word in the free group on numbered generators.
///
/// The constructors never reduce; call [`Word::free_reduce`] to cancel
/// adjacent inverse pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Parses a compact signed form: `[1, -2]` is `x1 x2^-1` with 1-based
    /// indices.
    pub fn from_signed(letters: &[i64]) -> Self {
        Word(
            letters
                .iter()
                .map(|&s| {
                    assert!(s != 0, "signed letters are 1-based");
                    Letter::new(s.unsigned_abs() as usize - 1, s < 0)
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Appends `l`, cancelling it against the last letter when possible.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn free_reduce(&self) -> Self {
        let mut out = Word(Vec::with_capacity(self.len()));
        for &l in &self.0 {
            out.push_reduced(l);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    /// Largest generator index plus one.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.sign())
            .sum()
    }

    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator] += l.sign();
        }
        v
    }

    /// Image under the homomorphism sending generator `i` to `values[i]`.
    pub fn image(&self, values: &[i64]) -> i64 {
        self.0.iter().map(|l| l.sign() * values[l.generator]).sum()
    }

    /// Renders with generator names, collapsing runs into powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Reduces `w` in the free group.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(&self.names[l.generator])?;
            let exp = l.sign() * run as i64;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}
