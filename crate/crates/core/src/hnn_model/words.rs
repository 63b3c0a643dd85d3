use super::tree::{address_string, Address, Step, TreedArrow};
use super::{DescentData, HnnModelError};
use crate::group::{modular_hom, BrittonForm, GroupWord, HnnPresentation, Letter, Sign};
use crate::report::Report;

/// Every walk of length `<= max_len` from the root of type 0, as relative steps (backtracks
/// included).
fn walks(d: &DescentData, max_len: usize) -> Vec<Vec<Step>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    let all: Vec<Step> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .flat_map(|sign| (0..d.degree(sign) as u32).map(move |label| Step { sign, label }))
        .collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in &all {
                let mut v: Vec<Step> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Composes a walk as a product of one-step arrows and returns the resulting arrow.
fn compose_walk(d: &DescentData, walk: &[Step]) -> Result<TreedArrow, HnnModelError> {
    let mut at: Address = Vec::new();
    let mut acc = TreedArrow::unit(0, Vec::new());
    for &s in walk {
        let mut next = at.clone();
        d.walk(&mut next, s)?;
        acc = acc.compose(&TreedArrow { base: 0, range: at, source: next.clone() })?;
        at = next;
    }
    Ok(acc)
}

/// Walk in the Bass-Serre tree: label `l` before `t^e` multiplies by the `l`-th coset
/// representative, then `t^e`; the `E` tail is dropped.
fn group_walk(p: &HnnPresentation, walk: &[Step]) -> (BrittonForm, GroupWord) {
    let plus = p.reps_plus();
    let minus = p.reps_minus();
    let mut g = BrittonForm::identity(p.nu);
    let mut word = Vec::new();
    for s in walk {
        let (rep, letter) = match s.sign {
            Sign::Plus => (plus[s.label as usize].clone(), Letter::T),
            Sign::Minus => (minus[s.label as usize].clone(), Letter::TInv),
        };
        word.push(Letter::Elem(rep.clone()));
        word.push(letter.clone());
        g.push(p, &Letter::Elem(rep));
        g.push(p, &letter);
        g = g.coset();
    }
    (g, GroupWord(word))
}

/// Checks on every walk up to `max_len` that the composed arrow is a unit exactly when the
/// walk reduces to nothing. When `presentation` is given (and `|Z| = 1`) each walk is also run
/// through Britton reduction: its coset normal form must spell the reduced address, and the
/// cocycle must equal the modular homomorphism of the group word.
pub fn unit_word_check(
    d: &DescentData,
    max_len: usize,
    presentation: Option<&HnnPresentation>,
) -> Result<Report, HnnModelError> {
    let mut r = Report::new("unit-words");
    let mut units_agree = true;
    let mut reduced_nonunit = true;
    let mut britton_agree = true;
    let mut modular_agree = true;
    let mut n_walks = 0u64;
    let mut n_units = 0u64;
    let mut first_bad = String::new();
    if let Some(p) = presentation {
        if p.p() as usize != d.p || p.q() as usize != d.q || d.n_types() != 1 {
            return Err(HnnModelError::BadStep("presentation does not match the descent data".into()));
        }
    }
    for w in walks(d, max_len) {
        n_walks += 1;
        let arrow = compose_walk(d, &w)?;
        // Free reduction on the relative letters.
        let mut stack: Vec<Step> = Vec::new();
        for &s in &w {
            if DescentData::is_backtrack(stack.last(), s) {
                stack.pop();
            } else {
                stack.push(s);
            }
        }
        let is_reduced = stack.len() == w.len();
        if arrow.is_unit() {
            n_units += 1;
        }
        if arrow.is_unit() != stack.is_empty() {
            units_agree = false;
            first_bad = address_string(&w);
        }
        if is_reduced && !w.is_empty() && arrow.is_unit() {
            reduced_nonunit = false;
        }
        if let Some(p) = presentation {
            let (g, word) = group_walk(p, &w);
            let spelled: Vec<Step> = g
                .syllables
                .iter()
                .map(|(a, sign)| {
                    let reps = if *sign == Sign::Plus { p.reps_plus() } else { p.reps_minus() };
                    Step { sign: *sign, label: reps.iter().position(|x| x == a).unwrap_or(usize::MAX) as u32 }
                })
                .collect();
            if spelled != arrow.source || (is_reduced && !w.is_empty() && g.syllables.is_empty()) {
                britton_agree = false;
                first_bad = address_string(&w);
            }
            if modular_hom(p, &word) != super::tree::rn_cocycle(d, &arrow) {
                modular_agree = false;
            }
        }
    }
    r.value("walks", n_walks);
    r.value("unit-walks", n_units);
    r.value("max-length", max_len as u64);
    r.check("unit-iff-cancels", "a walk composes to a unit iff free reduction cancels it", units_agree, first_bad.clone());
    r.check("reduced-words-not-units", "no reduced nonempty word is a unit, so Phi is a treeing", reduced_nonunit, "");
    if presentation.is_some() {
        r.check("britton-agrees", "Britton normal forms spell the reduced addresses", britton_agree, first_bad);
        r.check("cocycle-is-modular", "the cocycle equals the modular homomorphism of the group word", modular_agree, "");
    }
    Ok(r)
}
