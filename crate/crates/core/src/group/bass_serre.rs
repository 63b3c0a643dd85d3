use super::hnn::{BrittonForm, HnnPresentation, Letter, Sign};
use super::GroupError;
use crate::graph::{bfs_ball, OrientedGraph};

/// A vertex `gE` of the Bass-Serre tree, stored as the Britton form of `g` with zero tail.
pub type CosetVertex = BrittonForm;

/// Neighbours of `gE`: `g a t E` for `a` in `E/E+` (edges out of `gE`) and `g a t^-1 E` for `a`
/// in `E/E-` (edges into `gE`).
pub fn coset_neighbours(p: &HnnPresentation, v: &CosetVertex) -> Vec<(CosetVertex, bool)> {
    let mut out = Vec::new();
    for (reps, letter, away) in [
        (p.reps_plus(), Letter::T, true),
        (p.reps_minus(), Letter::TInv, false),
    ] {
        for a in reps {
            let mut f = v.clone();
            f.push(p, &Letter::Elem(a));
            f.push(p, &letter);
            out.push((f.coset(), away));
        }
    }
    out
}

fn label(v: &CosetVertex) -> String {
    if v.syllables.is_empty() {
        return "E".into();
    }
    let mut s = String::new();
    for (a, e) in &v.syllables {
        let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("[{}]{}", a.join(","), if *e == Sign::Plus { "t" } else { "T" }));
    }
    s.push('E');
    s
}

/// Ball of radius `r` about `E` in the Bass-Serre tree, oriented from `gE` to `g a t E`.
pub fn bass_serre_ball(
    p: &HnnPresentation,
    r: usize,
    max_vertices: usize,
) -> Result<OrientedGraph, GroupError> {
    bfs_ball(BrittonForm::identity(p.nu), r, max_vertices, label, |v| {
        Ok::<_, GroupError>(coset_neighbours(p, v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bs23_ball_sizes() {
        let p = HnnPresentation::baumslag_solitar(2, 3).unwrap();
        let b = bass_serre_ball(&p, 3, 10_000).unwrap();
        assert!(b.is_tree());
        let cumulative: Vec<usize> = b
            .sphere_sizes()
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        assert_eq!(cumulative, vec![1, 6, 26, 106]);
    }
}
