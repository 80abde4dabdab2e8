//! Line-oriented presentation files.
//!
//! ```text
//! name heisenberg_e1
//! gens x y t
//! rel [x,y] t^-1        # commutators expand to a b a^-1 b^-1
//! rel [x,t]; rel [y,t]  # `;` separates statements on one line
//! map x=1 y=0 t=0       # omitted generators map to 0
//! flags closed3manifold beta1=2
//! ```

use super::{GroupPresentation, Word, ZMap};
use crate::error::{Error, Result};

/// Flags marking a closed 3-manifold group with first Betti number 2.
pub const CLOSED_3_MANIFOLD_FLAGS: [&str; 2] = ["closed3manifold", "beta1=2"];

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub name: Option<String>,
    pub presentation: GroupPresentation,
    /// Validated against the relators; non-primitive maps are stored divided
    /// by their content.
    pub map: Option<ZMap>,
    pub flags: Vec<String>,
    pub warnings: Vec<String>,
}

impl PresentationFile {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn is_closed_3manifold_beta1_2(&self) -> bool {
        CLOSED_3_MANIFOLD_FLAGS.iter().all(|f| self.has_flag(f))
    }

    pub fn to_file_string(&self) -> String {
        self.presentation
            .to_file_string(self.name.as_deref(), self.map.as_ref(), &self.flags)
    }
}

pub fn parse_presentation(text: &str) -> Result<PresentationFile> {
    let mut st = State::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut start = 0;
        for end in (0..=chars.len()).filter(|&i| i == chars.len() || chars[i] == ';') {
            let mut cur = Cursor {
                chars: &chars[start..end],
                pos: 0,
                line: lineno + 1,
                base: start,
            };
            st.statement(&mut cur)?;
            start = end + 1;
        }
    }
    st.finish()
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    let mut cur = Cursor {
        chars: &chars,
        pos: 0,
        line: 1,
        base: 0,
    };
    let w = cur.product(generators)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected character in word"));
    }
    Ok(w.free_reduce())
}

#[derive(Default)]
struct State {
    name: Option<String>,
    generators: Option<Vec<String>>,
    relators: Vec<Word>,
    map: Option<(Vec<i64>, usize)>,
    flags: Vec<String>,
}

impl State {
    fn statement(&mut self, cur: &mut Cursor) -> Result<()> {
        cur.skip_ws();
        if cur.at_end() {
            return Ok(());
        }
        let kw_col = cur.column();
        let kw = cur.ident().ok_or_else(|| cur.error("expected a keyword"))?;
        match kw.as_str() {
            "name" => {
                cur.skip_ws();
                let n = cur.ident().ok_or_else(|| cur.error("expected a name"))?;
                self.name = Some(n);
            }
            "gens" => {
                if !self.relators.is_empty() || self.map.is_some() {
                    return Err(cur.error_at(kw_col, "gens must come before rel and map"));
                }
                let gens = self.generators.get_or_insert_with(Vec::new);
                loop {
                    cur.skip_ws();
                    if cur.at_end() {
                        break;
                    }
                    let g = cur.ident().ok_or_else(|| cur.error("expected a generator name"))?;
                    if gens.contains(&g) {
                        return Err(Error::DuplicateGenerator(g));
                    }
                    gens.push(g);
                }
            }
            "rel" => {
                let gens = self.generators.as_deref().unwrap_or(&[]);
                cur.skip_ws();
                if cur.at_end() {
                    return Err(cur.error("rel needs a word"));
                }
                let w = cur.product(gens)?;
                self.relators.push(w.free_reduce());
            }
            "map" => {
                if self.map.is_some() {
                    return Err(cur.error_at(kw_col, "map given twice"));
                }
                let gens = self.generators.as_deref().unwrap_or(&[]);
                let mut values = vec![0i64; gens.len()];
                let mut set = vec![false; gens.len()];
                loop {
                    cur.skip_ws();
                    if cur.at_end() {
                        break;
                    }
                    let col = cur.column();
                    let g = cur.ident().ok_or_else(|| cur.error("expected generator=value"))?;
                    let i = lookup(gens, &g, cur.line, col)?;
                    if set[i] {
                        return Err(cur.error_at(col, &format!("`{g}` mapped twice")));
                    }
                    cur.skip_ws();
                    if !cur.eat('=') {
                        return Err(cur.error("expected `=`"));
                    }
                    cur.skip_ws();
                    values[i] = cur.int()?;
                    set[i] = true;
                }
                self.map = Some((values, cur.line));
            }
            "flags" => loop {
                cur.skip_ws();
                if cur.at_end() {
                    break;
                }
                self.flags.push(cur.token());
            },
            other => {
                return Err(cur.error_at(kw_col, &format!("unknown keyword `{other}`")));
            }
        }
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(())
    }

    fn finish(self) -> Result<PresentationFile> {
        let generators = self.generators.ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: "missing gens statement".into(),
        })?;
        let presentation = GroupPresentation::new(generators, self.relators)?;
        let mut warnings = Vec::new();
        let map = match self.map {
            None => None,
            Some((values, line)) => {
                let psi = ZMap::new(values);
                psi.validate(&presentation)?;
                let d = psi.content();
                if d > 1 {
                    let msg = format!(
                        "map on line {line} has content {d}; using the primitive map divided by {d}"
                    );
                    log::warn!("{msg}");
                    warnings.push(msg);
                    Some(psi.primitive())
                } else {
                    Some(psi)
                }
            }
        };
        Ok(PresentationFile {
            name: self.name,
            presentation,
            map,
            flags: self.flags,
            warnings,
        })
    }
}

fn lookup(gens: &[String], name: &str, line: usize, column: usize) -> Result<usize> {
    gens.iter()
        .position(|g| g == name)
        .ok_or_else(|| Error::UndeclaredGenerator {
            name: name.to_string(),
            line,
            column,
        })
}

struct Cursor<'a> {
    chars: &'a [char],
    pos: usize,
    line: usize,
    base: usize,
}

impl Cursor<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.base + self.pos + 1
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        self.error_at(self.column(), message)
    }

    fn error_at(&self, column: usize, message: &str) -> Error {
        Error::Syntax {
            line: self.line,
            column,
            message: message.to_string(),
        }
    }

    fn ident(&mut self) -> Option<String> {
        let c = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn token(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<i64> {
        let col = self.column();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.error_at(col, "expected an integer"))
    }

    /// Juxtaposition of factors, stopping before `)`, `]`, `,` or the end.
    fn product(&mut self, gens: &[String]) -> Result<Word> {
        let mut w = Word::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(w),
                _ => {
                    let f = self.factor(gens)?;
                    w = w.concat(&f);
                }
            }
        }
    }

    fn factor(&mut self, gens: &[String]) -> Result<Word> {
        let base = self.atom(gens)?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let k = self.int()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self, gens: &[String]) -> Result<Word> {
        let col = self.column();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.product(gens)?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product(gens)?;
                if !self.eat(',') {
                    return Err(self.error("expected `,` in commutator"));
                }
                let b = self.product(gens)?;
                if !self.eat(']') {
                    return Err(self.error("expected `]`"));
                }
                Ok(Word::commutator(&a, &b))
            }
            Some('1') => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(self.error_at(col, "unexpected number in word"));
                }
                Ok(Word::empty())
            }
            _ => {
                let name = self
                    .ident()
                    .ok_or_else(|| self.error("expected a generator, `(` or `[`"))?;
                let g = lookup(gens, &name, self.line, col)?;
                Ok(Word::generator(g))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_one_liner() {
        let f = parse_presentation("gens x y t ; rel [x,y] t^-1 ; rel [x,t] ; rel [y,t] ; map x=1 y=0 t=0")
            .unwrap();
        let p = &f.presentation;
        assert_eq!(p.generators(), &["x", "y", "t"]);
        assert_eq!(p.format_word(&p.relators()[0]), "x y x^-1 y^-1 t^-1");
        assert_eq!(f.map.unwrap().values(), &[1, 0, 0]);
        assert!(f.warnings.is_empty());
    }

    #[test]
    fn free_group_without_relators() {
        let f = parse_presentation("gens x y ;").unwrap();
        assert_eq!(f.presentation.generator_count(), 2);
        assert_eq!(f.presentation.relator_count(), 0);
        assert!(f.map.is_none());
    }

    #[test]
    fn trefoil_and_nesting() {
        let f = parse_presentation("gens a b\nrel a b a b^-1 a^-1 b^-1\nmap a=1 b=1\n").unwrap();
        assert_eq!(f.presentation.betti_number().unwrap(), 1);

        let gens = vec!["a".to_string(), "b".to_string()];
        let w = parse_word("[[a,b],a]^2 (a b)^-1 1", &gens).unwrap();
        assert_eq!(
            w,
            parse_word("a b a^-1 b^-1 a b a b^-1 a^-1 a^-1 a b a^-1 b^-1 a b a b^-1 a^-1 a^-1 b^-1 a^-1", &gens).unwrap()
        );
        assert!(parse_word("a a^-1", &gens).unwrap().is_empty());
    }

    #[test]
    fn comments_flags_and_defaults() {
        let f = parse_presentation(
            "# leading comment\nname demo\ngens x y # two\nmap y=0 x=1\nflags closed3manifold beta1=2\n",
        )
        .unwrap();
        assert_eq!(f.name.as_deref(), Some("demo"));
        assert!(f.is_closed_3manifold_beta1_2());
        let f = parse_presentation("gens x y\nmap y=1").unwrap();
        assert_eq!(f.map.unwrap().values(), &[0, 1]);
    }

    #[test]
    fn non_primitive_map_warns() {
        let f = parse_presentation("gens x y\nmap x=2 y=4").unwrap();
        assert_eq!(f.map.unwrap().values(), &[1, 2]);
        assert_eq!(f.warnings.len(), 1);
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_presentation("gens x y\nrel x z").unwrap_err(),
            Error::UndeclaredGenerator {
                name: "z".into(),
                line: 2,
                column: 7
            }
        );
        assert!(matches!(
            parse_presentation("gens x\nrel (x x").unwrap_err(),
            Error::Syntax { line: 2, column: 9, .. }
        ));
        assert!(matches!(
            parse_presentation("gens x; bogus x").unwrap_err(),
            Error::Syntax { line: 1, column: 9, .. }
        ));
        assert!(matches!(
            parse_presentation("gens x\nrel x^").unwrap_err(),
            Error::Syntax { line: 2, .. }
        ));
        assert_eq!(
            parse_presentation("gens x x").unwrap_err(),
            Error::DuplicateGenerator("x".into())
        );
        assert!(matches!(
            parse_presentation("gens x y\nrel x y\nmap x=1").unwrap_err(),
            Error::RelatorImage { index: 0, image: 1, .. }
        ));
        assert!(matches!(
            parse_presentation("rel x").unwrap_err(),
            Error::UndeclaredGenerator { .. }
        ));
        assert!(matches!(
            parse_presentation("name n").unwrap_err(),
            Error::Syntax { .. }
        ));
    }
}
