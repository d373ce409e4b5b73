//! Ordinals in Cantor normal form and the finite/countable dimension value.
//!
//! Ranks produced by this crate stay far below `w^w`, so exponents and
//! coefficients are plain naturals. An ordinal is a sum of terms
//! `w^e * c` with strictly decreasing exponents and coefficients >= 1;
//! the empty sum is 0 and a natural `n` is the single term `(0, n)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Ordinal below `w^w` in Cantor normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    /// `(exponent, coefficient)` pairs, highest exponent first.
    terms: Vec<(u32, u32)>,
}

/// Case split used by the hierarchy definitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u32) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(0, n)] }
        }
    }

    /// `w * c + k`.
    pub fn omega_times_plus(c: u32, k: u32) -> Self {
        let mut terms = Vec::new();
        if c > 0 {
            terms.push((1, c));
        }
        if k > 0 {
            terms.push((0, k));
        }
        Ordinal { terms }
    }

    pub fn omega() -> Self {
        Self::omega_times_plus(1, 0)
    }

    /// Builds from explicit CNF terms; exponents must be strictly
    /// decreasing and coefficients nonzero.
    pub fn from_terms(terms: Vec<(u32, u32)>) -> Result<Self> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::OrdinalForm("exponents must strictly decrease".into()));
            }
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(Error::OrdinalForm("coefficients must be positive".into()));
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-commutative ordinal addition: terms of `self` below the leading
    /// exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(&(lead, c0)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u32)> =
            self.terms.iter().copied().filter(|&(e, _)| e > lead).collect();
        let carried: u32 = self
            .terms
            .iter()
            .find(|&&(e, _)| e == lead)
            .map_or(0, |&(_, c)| c);
        terms.push((lead, c0 + carried));
        terms.extend(rhs.terms.iter().skip(1).copied());
        Ordinal { terms }
    }

    /// Successor `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::nat(1))
    }

    pub fn kind(&self) -> OrdKind {
        match self.terms.last() {
            None => OrdKind::Zero,
            Some(&(0, _)) => OrdKind::Successor,
            Some(_) => OrdKind::Limit,
        }
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::OrdinalForm("empty ordinal text".into()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::OrdinalForm(format!("bad ordinal text {text:?}")));
            }
            let term = if let Some(rest) = part.strip_prefix('w') {
                let (exp_txt, coeff_txt) = match rest.split_once('.') {
                    Some((e, c)) => (e, Some(c)),
                    None => (rest, None),
                };
                let exp = if exp_txt.is_empty() {
                    1
                } else if let Some(e) = exp_txt.strip_prefix('^') {
                    e.parse::<u32>()
                        .map_err(|_| Error::OrdinalForm(format!("bad exponent in {part:?}")))?
                } else {
                    return Err(Error::OrdinalForm(format!("bad term {part:?}")));
                };
                let coeff = match coeff_txt {
                    Some(c) => c
                        .parse::<u32>()
                        .map_err(|_| Error::OrdinalForm(format!("bad coefficient in {part:?}")))?,
                    None => 1,
                };
                (exp, coeff)
            } else {
                let n = part
                    .parse::<u32>()
                    .map_err(|_| Error::OrdinalForm(format!("bad term {part:?}")))?;
                (0, n)
            };
            terms.push(term);
        }
        Self::from_terms(terms)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on (exponent, coefficient); a longer list with an
        // equal prefix is the larger ordinal.
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                non_eq => return non_eq,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => {
                    write!(f, "w")?;
                    if c > 1 {
                        write!(f, ".{c}")?;
                    }
                }
                _ => {
                    write!(f, "w^{e}")?;
                    if c > 1 {
                        write!(f, ".{c}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Membership dimension value: a finite depth or the countable cardinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Fin(u32),
    Aleph0,
}

impl Dimension {
    /// `sup` of the given dimensions plus one; the empty supremum is the
    /// terminal's dimension 1.
    pub fn sup_plus1<I: IntoIterator<Item = Dimension>>(ds: I) -> Dimension {
        let mut max = 0u32;
        for d in ds {
            match d {
                Dimension::Aleph0 => return Dimension::Aleph0,
                Dimension::Fin(n) => max = max.max(n),
            }
        }
        Dimension::Fin(max + 1)
    }
}

impl PartialOrd for Dimension {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dimension {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dimension::Fin(a), Dimension::Fin(b)) => a.cmp(b),
            (Dimension::Fin(_), Dimension::Aleph0) => Ordering::Less,
            (Dimension::Aleph0, Dimension::Fin(_)) => Ordering::Greater,
            (Dimension::Aleph0, Dimension::Aleph0) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Fin(n) => write!(f, "{n}"),
            Dimension::Aleph0 => write!(f, "aleph0"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    #[test]
    fn addition_absorbs_left_tail() {
        assert_eq!(ord("1").add(&ord("w")), ord("w"));
        assert_eq!(ord("w").add(&ord("1")), ord("w+1"));
        assert_eq!(ord("w.2+3").add(&ord("w+1")), ord("w.3+1"));
    }

    #[test]
    fn comparison_is_lexicographic_on_cnf() {
        assert!(ord("3") < ord("w"));
        assert_eq!(ord("w+1"), ord("w+1"));
        assert!(ord("w.2") > ord("w+5"));
        assert!(ord("w") < ord("w+1"));
        assert!(ord("w.2") < ord("w^2"));
    }

    #[test]
    fn kind_splits_on_trailing_term() {
        assert_eq!(ord("0").kind(), OrdKind::Zero);
        assert_eq!(ord("w").kind(), OrdKind::Limit);
        assert_eq!(ord("w.2+4").kind(), OrdKind::Successor);
        assert_eq!(ord("5").kind(), OrdKind::Successor);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "5", "w", "w+3", "w.2+1", "w^2.3+w+2"] {
            assert_eq!(ord(s).to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed_terms() {
        assert!(Ordinal::parse("").is_err());
        assert!(Ordinal::parse("w+w").is_err());
        assert!(Ordinal::parse("x2").is_err());
        assert!(Ordinal::from_terms(vec![(0, 0)]).is_err());
        assert!(Ordinal::from_terms(vec![(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn dim_sup_plus1_examples() {
        use Dimension::*;
        assert_eq!(Dimension::sup_plus1([]), Fin(1));
        assert_eq!(Dimension::sup_plus1([Fin(1), Fin(2)]), Fin(3));
        assert_eq!(Dimension::sup_plus1([Fin(4), Aleph0]), Aleph0);
    }

    #[test]
    fn dim_sup_plus1_monotone_under_extension() {
        use Dimension::*;
        let base = vec![Fin(1), Fin(3)];
        let d0 = Dimension::sup_plus1(base.clone());
        for extra in [Fin(1), Fin(2), Fin(7), Aleph0] {
            let mut xs = base.clone();
            xs.push(extra);
            assert!(Dimension::sup_plus1(xs) >= d0);
        }
    }

    /// All CNF ordinals with exponents <= 2 and coefficients <= 3 (plus 0).
    fn small_ordinals() -> Vec<Ordinal> {
        let mut out = vec![Ordinal::zero()];
        let coeffs = [0u32, 1, 2, 3];
        for &c2 in &coeffs {
            for &c1 in &coeffs {
                for &c0 in &coeffs {
                    let mut terms = Vec::new();
                    if c2 > 0 {
                        terms.push((2, c2));
                    }
                    if c1 > 0 {
                        terms.push((1, c1));
                    }
                    if c0 > 0 {
                        terms.push((0, c0));
                    }
                    if !terms.is_empty() {
                        out.push(Ordinal::from_terms(terms).unwrap());
                    }
                }
            }
        }
        out
    }

    #[test]
    fn addition_associative_and_zero_identity_exhaustive() {
        let os = small_ordinals();
        let zero = Ordinal::zero();
        for a in &os {
            assert_eq!(a.add(&zero), *a);
            assert_eq!(zero.add(a), *a);
            for b in &os {
                for c in &os {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                }
            }
        }
    }

    #[test]
    fn addition_right_monotone_exhaustive() {
        let os = small_ordinals();
        for a in &os {
            for b in &os {
                for c in &os {
                    if b < c {
                        assert!(a.add(b) < a.add(c), "{a} + {b} !< {a} + {c}");
                    }
                }
            }
        }
    }
}
