use super::lattice::Lattice;
use super::GroupError;
use crate::rational::{pow, Rational};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// `G = <E, t | t a t^-1 = tau(a), a in E->` with `E = Z^nu` and `tau: E- -> E+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnPresentation {
    pub nu: usize,
    pub e_minus: Lattice,
    pub e_plus: Lattice,
    /// `nu x nu` rational matrix acting on column vectors.
    pub tau: Vec<Vec<Rational>>,
    tau_inv: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Elem(Vec<i64>),
    T,
    TInv,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord(pub Vec<Letter>);

/// `s_1 t^e_1 s_2 t^e_2 ... s_n t^e_n e` with `s_i` a coset representative of `E/E+` before `t`
/// and of `E/E-` before `t^-1`, and no pinch `t^-1 0 t` or `t 0 t^-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrittonForm {
    pub syllables: Vec<(Vec<i64>, Sign)>,
    pub tail: Vec<i64>,
}

fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Rational::from_integer(BigInt::from((i == j) as i64))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        a[c].iter_mut().for_each(|v| *v = &*v / &piv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn apply(m: &[Vec<Rational>], v: &[i64]) -> Option<Vec<i64>> {
    m.iter()
        .map(|row| {
            let s: Rational = row
                .iter()
                .zip(v)
                .map(|(a, &b)| a * Rational::from_integer(BigInt::from(b)))
                .sum();
            if s.is_integer() {
                s.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("coefficient overflow in group arithmetic"))
        .collect()
}

impl HnnPresentation {
    pub fn new(
        nu: usize,
        e_minus: &[Vec<i64>],
        e_plus: &[Vec<i64>],
        tau: Vec<Vec<Rational>>,
    ) -> Result<Self, GroupError> {
        let e_minus = Lattice::new(nu, e_minus)?;
        let e_plus = Lattice::new(nu, e_plus)?;
        if tau.len() != nu || tau.iter().any(|r| r.len() != nu) {
            return Err(GroupError::Dimension { expected: nu, got: tau.len() });
        }
        let tau_inv = invert_matrix(&tau).ok_or_else(|| GroupError::BadTau("singular".into()))?;
        for b in e_minus.basis() {
            match apply(&tau, b) {
                Some(v) if e_plus.contains(&v) => {}
                _ => return Err(GroupError::BadTau(format!("tau{b:?} is not in E+"))),
            }
        }
        for b in e_plus.basis() {
            match apply(&tau_inv, b) {
                Some(v) if e_minus.contains(&v) => {}
                _ => return Err(GroupError::BadTau(format!("tau^-1{b:?} is not in E-"))),
            }
        }
        Ok(HnnPresentation { nu, e_minus, e_plus, tau, tau_inv })
    }

    /// `BS(p, q) = <a, t | t a^p t^-1 = a^q>`.
    pub fn baumslag_solitar(p: i64, q: i64) -> Result<Self, GroupError> {
        Self::new(
            1,
            &[vec![p]],
            &[vec![q]],
            vec![vec![Rational::new(BigInt::from(q), BigInt::from(p))]],
        )
    }

    /// `[E : E-]`.
    pub fn p(&self) -> u64 {
        self.e_minus.index()
    }

    /// `[E : E+]`.
    pub fn q(&self) -> u64 {
        self.e_plus.index()
    }

    pub fn tau_apply(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.tau, v).expect("tau applied outside E-")
    }

    pub fn tau_inv_apply(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.tau_inv, v).expect("tau^-1 applied outside E+")
    }

    /// Coset representatives used before `t` (of `E/E+`, zero first).
    pub fn reps_plus(&self) -> Vec<Vec<i64>> {
        self.e_plus.reps()
    }

    /// Coset representatives used before `t^-1` (of `E/E-`, zero first).
    pub fn reps_minus(&self) -> Vec<Vec<i64>> {
        self.e_minus.reps()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.nu]
    }

    /// Parses whitespace-separated tokens: `t`, `t^k`, `a^k` (nu = 1), `a1^k`, ..., `e`.
    pub fn parse_word(&self, s: &str) -> Result<GroupWord, GroupError> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || GroupError::Parse(tok.to_string());
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            if base == "t" {
                let l = if exp >= 0 { Letter::T } else { Letter::TInv };
                out.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
            } else if base == "e" {
            } else if let Some(idx) = base.strip_prefix('a') {
                let i = if idx.is_empty() && self.nu == 1 {
                    0
                } else {
                    idx.parse::<usize>().map_err(|_| bad())?.checked_sub(1).ok_or_else(bad)?
                };
                if i >= self.nu {
                    return Err(bad());
                }
                let mut v = self.zero();
                v[i] = exp;
                out.push(Letter::Elem(v));
            } else {
                return Err(bad());
            }
        }
        Ok(GroupWord(out))
    }
}

/// The exponent sum of `t`.
pub fn t_exponent(w: &GroupWord) -> i64 {
    w.0.iter()
        .map(|l| match l {
            Letter::T => 1,
            Letter::TInv => -1,
            Letter::Elem(_) => 0,
        })
        .sum()
}

/// `m(w) = (q/p)^(t-exponent of w)`, the modular homomorphism `G -> Q*`.
pub fn modular_hom(p: &HnnPresentation, w: &GroupWord) -> Rational {
    let base = Rational::new(BigInt::from(p.q()), BigInt::from(p.p()));
    pow(&base, t_exponent(w))
}

impl BrittonForm {
    pub fn identity(nu: usize) -> Self {
        BrittonForm { syllables: Vec::new(), tail: vec![0; nu] }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.iter().all(|&x| x == 0)
    }

    pub fn in_e(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Right multiplication by one letter.
    pub fn push(&mut self, p: &HnnPresentation, l: &Letter) {
        match l {
            Letter::Elem(v) => self.tail = add(&self.tail, v),
            Letter::T => {
                let (s, b) = p.e_plus.split(&self.tail);
                let carried = p.tau_inv_apply(&b);
                let zero = s.iter().all(|&x| x == 0);
                match self.syllables.last() {
                    Some((_, Sign::Minus)) if zero => {
                        let (sn, _) = self.syllables.pop().unwrap();
                        self.tail = add(&sn, &carried);
                    }
                    _ => {
                        self.syllables.push((s, Sign::Plus));
                        self.tail = carried;
                    }
                }
            }
            Letter::TInv => {
                let (s, c) = p.e_minus.split(&self.tail);
                let carried = p.tau_apply(&c);
                let zero = s.iter().all(|&x| x == 0);
                match self.syllables.last() {
                    Some((_, Sign::Plus)) if zero => {
                        let (sn, _) = self.syllables.pop().unwrap();
                        self.tail = add(&sn, &carried);
                    }
                    _ => {
                        self.syllables.push((s, Sign::Minus));
                        self.tail = carried;
                    }
                }
            }
        }
    }

    pub fn to_word(&self) -> GroupWord {
        let mut out = Vec::new();
        for (s, e) in &self.syllables {
            if s.iter().any(|&x| x != 0) {
                out.push(Letter::Elem(s.clone()));
            }
            out.push(match e {
                Sign::Plus => Letter::T,
                Sign::Minus => Letter::TInv,
            });
        }
        if self.tail.iter().any(|&x| x != 0) {
            out.push(Letter::Elem(self.tail.clone()));
        }
        GroupWord(out)
    }

    /// The coset `gE` of this element: the form with its tail dropped.
    pub fn coset(&self) -> BrittonForm {
        BrittonForm { syllables: self.syllables.clone(), tail: vec![0; self.tail.len()] }
    }
}

/// Britton normal form of a word, by right multiplication letter by letter.
pub fn britton_reduce(p: &HnnPresentation, w: &GroupWord) -> BrittonForm {
    let mut f = BrittonForm::identity(p.nu);
    for l in &w.0 {
        f.push(p, l);
    }
    f
}

impl GroupWord {
    pub fn inverse(&self) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::T => Letter::TInv,
                    Letter::TInv => Letter::T,
                    Letter::Elem(v) => Letter::Elem(v.iter().map(|x| -x).collect()),
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord(self.0.iter().chain(other.0.iter()).cloned().collect())
    }
}

fn fmt_elem(v: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v.len() == 1 {
        write!(f, "a^{}", v[0])
    } else {
        let mut first = true;
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "a{}^{}", i + 1, x)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match l {
                Letter::T => write!(f, "t")?,
                Letter::TInv => write!(f, "t^-1")?,
                Letter::Elem(v) => fmt_elem(v, f)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for BrittonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bs23_examples() {
        let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
        let nf = britton_reduce(&p, &p.parse_word("t a^2 t^-1").unwrap());
        assert!(nf.in_e());
        assert_eq!(nf.tail, vec![3]);
        let w = p.parse_word("t a t^-1").unwrap();
        assert_eq!(britton_reduce(&p, &w).syllables.len(), 2);
        assert_eq!(modular_hom(&p, &p.parse_word("t").unwrap()), rat(3, 2));
        assert_eq!(modular_hom(&p, &p.parse_word("t a t").unwrap()), rat(9, 4));
        assert_eq!(modular_hom(&p, &p.parse_word("t a t^-1").unwrap()), rat(1, 1));
        assert_eq!((p.p(), p.q()), (2, 3));
    }

    #[test]
    fn tau_must_be_compatible() {
        let bad = HnnPresentation::new(1, &[vec![2]], &[vec![3]], vec![vec![rat(1, 1)]]);
        assert!(matches!(bad, Err(GroupError::BadTau(_))));
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
        let w = p.parse_word("a t a^-1 t^-1 t^-1 a^5 t a").unwrap();
        assert!(britton_reduce(&p, &w.concat(&w.inverse())).is_identity());
    }
}
