//! Pushforward and general-fiber classes under the canonical projections
//! `pi_t` to the step-`t` Grassmannian.
//!
//! Pushing forward drops every sub-index with upper index above `t`. The
//! fiber class lives on the source variety again; in the orthogonal case the
//! span bookkeeping can hit a maximal isotropic wall, where the class splits
//! into two terms (or one of them dies on a spinor shape).

use std::fmt;

use crate::index::{Component, Entry, Family, FlagShape, IndexError, SchubertIndex};

/// Multiplicity of a class-sum term. The calculus never determines the
/// integers, only that they are positive, so `UnknownPositive` is the
/// common case outside the Littlewood-Richardson oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Known(u64),
    UnknownPositive,
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Known(c) => write!(f, "{c}"),
            Coefficient::UnknownPositive => write!(f, "?"),
        }
    }
}

/// A finite formal sum of Schubert classes on one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalClassSum {
    terms: Vec<(Coefficient, SchubertIndex)>,
}

impl FormalClassSum {
    pub fn new(mut terms: Vec<(Coefficient, SchubertIndex)>) -> Self {
        terms.retain(|(c, _)| *c != Coefficient::Known(0));
        terms.sort_by(|x, y| x.1.canonical().cmp(&y.1.canonical()));
        let mut merged: Vec<(Coefficient, SchubertIndex)> = Vec::new();
        for (c, x) in terms {
            match merged.last_mut() {
                Some((mc, mx)) if *mx == x => {
                    *mc = match (*mc, c) {
                        (Coefficient::Known(a), Coefficient::Known(b)) => Coefficient::Known(a + b),
                        _ => Coefficient::UnknownPositive,
                    };
                }
                _ => merged.push((c, x)),
            }
        }
        FormalClassSum { terms: merged }
    }

    pub fn zero() -> Self {
        FormalClassSum { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(Coefficient, SchubertIndex)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of an index, `Known(0)` when absent.
    pub fn coefficient(&self, x: &SchubertIndex) -> Coefficient {
        self.terms
            .iter()
            .find(|(_, y)| y == x)
            .map(|(c, _)| *c)
            .unwrap_or(Coefficient::Known(0))
    }
}

impl fmt::Display for FormalClassSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body = self
            .terms
            .iter()
            .map(|(c, x)| format!("{c}*[{x}]"))
            .collect::<Vec<_>>()
            .join(" + ");
        write!(f, "{body}")
    }
}

/// Counting profile of an orthogonal index at step `t`: how many conditions
/// of each kind survive, and the crossing counts between the two sequences.
#[derive(Debug, Clone)]
pub struct CountProfile {
    /// mu[i][t] = #{p <= i : alpha_p <= t}; row 0 is all zeros.
    pub mu: Vec<Vec<usize>>,
    /// nu[j][t] = #{p <= s : alpha_p <= t} + #{q >= j : beta_q <= t}.
    pub nu: Vec<Vec<usize>>,
    /// x[j][t] = #{p : a_p <= b_j, alpha_p <= t}.
    pub x: Vec<Vec<usize>>,
    /// h[i][t] = #{q : b_q >= a_i, beta_q <= t}.
    pub h: Vec<Vec<usize>>,
}

impl CountProfile {
    pub fn of(x: &SchubertIndex) -> CountProfile {
        let k = x.shape().steps();
        let a = x.a_entries();
        let b = x.b_entries();
        let s = a.len();
        let mu = (0..=s)
            .map(|i| {
                (0..=k)
                    .map(|t| a[..i].iter().filter(|e| e.upper <= t).count())
                    .collect()
            })
            .collect();
        let nu = (0..=b.len())
            .map(|j| {
                (0..=k)
                    .map(|t| {
                        let from_a = a.iter().filter(|e| e.upper <= t).count();
                        let from_b = if j == 0 {
                            0
                        } else {
                            b[j - 1..].iter().filter(|e| e.upper <= t).count()
                        };
                        from_a + from_b
                    })
                    .collect()
            })
            .collect();
        let xs = (0..=b.len())
            .map(|j| {
                (0..=k)
                    .map(|t| {
                        if j == 0 {
                            0
                        } else {
                            a.iter()
                                .filter(|e| e.value <= b[j - 1].value && e.upper <= t)
                                .count()
                        }
                    })
                    .collect()
            })
            .collect();
        let h = (0..=s)
            .map(|i| {
                (0..=k)
                    .map(|t| {
                        if i == 0 {
                            0
                        } else {
                            b.iter()
                                .filter(|e| e.value >= a[i - 1].value && e.upper <= t)
                                .count()
                        }
                    })
                    .collect()
            })
            .collect();
        CountProfile { mu, nu, x: xs, h }
    }
}

/// Class of the image under the tower projection to `(d_1..d_t; n)`: keep
/// exactly the entries with upper index at most `t`. The multiplicity is
/// positive but undetermined and is tracked by the caller. `t = k` is the
/// identity.
pub fn pushforward(x: &SchubertIndex, t: usize) -> Result<SchubertIndex, IndexError> {
    let shape = x.shape();
    if t == 0 || t > shape.steps() {
        return Err(IndexError::BadStep { t, k: shape.steps() });
    }
    let target = shape.truncate(t)?;
    let keep = |list: &[Entry]| -> Vec<Entry> {
        list.iter()
            .filter(|e| e.upper <= t)
            .map(|e| Entry::new(e.value, e.upper))
            .collect()
    };
    let component = if target.is_spinor() { x.component() } else { Component::Plus };
    SchubertIndex::new(target, keep(x.a_entries()), keep(x.b_entries()), component)
}

/// Class of the image in the single-step Grassmannian `G(d_t,n)` (or
/// `OG(d_t,n)`): the surviving entries with every upper index collapsed to
/// one. This is the image whose dimension pairs with the general fiber.
pub fn pushforward_grassmannian(x: &SchubertIndex, t: usize) -> Result<SchubertIndex, IndexError> {
    let shape = x.shape();
    if t == 0 || t > shape.steps() {
        return Err(IndexError::BadStep { t, k: shape.steps() });
    }
    let target = FlagShape::new(shape.family(), shape.n(), vec![shape.dim_at(t)])?;
    let keep = |list: &[Entry]| -> Vec<Entry> {
        list.iter()
            .filter(|e| e.upper <= t)
            .map(|e| Entry::new(e.value, 1))
            .collect()
    };
    let component = if target.is_spinor() { x.component() } else { Component::Plus };
    SchubertIndex::new(target, keep(x.a_entries()), keep(x.b_entries()), component)
}

/// Class of a general fiber of `pi_t` restricted to a representative,
/// expressed on the source shape.
pub fn fiber_class(x: &SchubertIndex, t: usize) -> Result<FormalClassSum, IndexError> {
    let shape = x.shape();
    let k = shape.steps();
    if t == 0 || t > k {
        return Err(IndexError::BadStep { t, k });
    }
    match shape.family() {
        Family::A => fiber_class_a(x, t),
        Family::B | Family::D => fiber_class_orthogonal(x, t),
    }
}

fn fiber_class_a(x: &SchubertIndex, t: usize) -> Result<FormalClassSum, IndexError> {
    let shape = x.shape();
    let dt = shape.dim_at(t);
    let kept: Vec<&Entry> = x.a_entries().iter().filter(|e| e.upper <= t).collect();
    let dropped: Vec<&Entry> = x.a_entries().iter().filter(|e| e.upper > t).collect();
    debug_assert_eq!(kept.len(), dt);
    let mut entries = Vec::with_capacity(x.a_entries().len());
    // the conditions that were cut down by the fiber become an initial
    // complete flag, keeping the kept entries' uppers in value order
    for (j, e) in kept.iter().enumerate() {
        entries.push(Entry::new(j + 1, e.upper));
    }
    // surviving conditions shift by the number of larger kept values
    for e in &dropped {
        let shift = kept.iter().filter(|ke| ke.value > e.value).count();
        entries.push(Entry::new(e.value + shift, e.upper));
    }
    entries.sort_by_key(|e| e.value);
    let y = SchubertIndex::new(shape.clone(), entries, Vec::new(), Component::Plus)?;
    Ok(FormalClassSum::new(vec![(Coefficient::UnknownPositive, y)]))
}

fn fiber_class_orthogonal(x: &SchubertIndex, t: usize) -> Result<FormalClassSum, IndexError> {
    let shape = x.shape();
    let n = shape.n();
    let even = n % 2 == 0;
    let half = n / 2;
    let profile = CountProfile::of(x);
    let s = x.s();
    let beta_le_t = x.b_entries().iter().filter(|e| e.upper <= t).count();
    let parity_odd = beta_le_t % 2 == 1;

    // a_side holds entries destined for the a-sequence, b_side for the
    // b-sequence; split captures the one entry that forks the class
    let mut a_side: Vec<Entry> = Vec::new();
    let mut b_side: Vec<Entry> = Vec::new();
    let mut split: Option<Entry> = None;

    for (iz, e) in x.a_entries().iter().enumerate() {
        let i = iz + 1;
        if e.upper <= t {
            a_side.push(Entry::new(profile.mu[i][t], e.upper));
        } else {
            let val = e.value + profile.mu[s][t] - profile.mu[i][t] + profile.h[i][t];
            if even && val == half && parity_odd {
                // the span became a maximal isotropic of the other
                // component; record it through the co-sequence
                b_side.push(Entry::new(half - 1, e.upper));
            } else {
                a_side.push(Entry::new(val, e.upper));
            }
        }
    }
    for (jz, e) in x.b_entries().iter().enumerate() {
        let j = jz + 1;
        if e.upper <= t {
            a_side.push(Entry::new(profile.nu[j][t], e.upper));
            continue;
        }
        if even && e.value == half - 1 {
            if parity_odd {
                a_side.push(Entry::new(half, e.upper));
            } else {
                b_side.push(Entry::new(half - 1, e.upper));
            }
            continue;
        }
        let val = e.value + profile.nu[j][t] - profile.x[j][t];
        if even && val == half - 1 {
            if split.is_some() {
                return Err(IndexError::NotApplicable(format!(
                    "two sub-indices reach the split wall in the fiber of {x} at step {t}"
                )));
            }
            split = Some(Entry::new(e.value, e.upper));
        } else {
            b_side.push(Entry::new(val, e.upper));
        }
    }

    a_side.sort_by_key(|e| e.value);
    b_side.sort_by_key(|e| e.value);
    let build = |extra_a: Option<Entry>, extra_b: Option<Entry>| -> Result<SchubertIndex, IndexError> {
        let mut a = a_side.clone();
        let mut b = b_side.clone();
        if let Some(e) = extra_a {
            a.push(e);
            a.sort_by_key(|en| en.value);
        }
        if let Some(e) = extra_b {
            b.push(e);
            b.sort_by_key(|en| en.value);
        }
        SchubertIndex::new(shape.clone(), a, b, x.component())
    };

    match split {
        None => {
            let y = build(None, None)?;
            Ok(FormalClassSum::new(vec![(Coefficient::UnknownPositive, y)]))
        }
        Some(e) => {
            let upper = e.upper;
            let plus_term = build(Some(Entry::new(half, upper)), None);
            let minus_term = build(None, Some(Entry::new(half - 1, upper)));
            if shape.is_spinor() {
                // only the term with the right component parity is effective
                let mut terms = Vec::new();
                if let Ok(y) = plus_term {
                    terms.push((Coefficient::UnknownPositive, y));
                }
                if let Ok(y) = minus_term {
                    terms.push((Coefficient::UnknownPositive, y));
                }
                if terms.len() != 1 {
                    return Err(IndexError::NotApplicable(format!(
                        "expected exactly one effective split term for {x} at step {t}"
                    )));
                }
                Ok(FormalClassSum::new(terms))
            } else {
                Ok(FormalClassSum::new(vec![
                    (Coefficient::UnknownPositive, plus_term?),
                    (Coefficient::UnknownPositive, minus_term?),
                ]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{enumerate, parse_shape, SchubertIndex};

    fn idx(text: &str) -> SchubertIndex {
        SchubertIndex::parse(text).unwrap()
    }

    #[test]
    fn pushforward_flag_example() {
        let x = idx("A(n=4; d=2,3) a=1^1,2^1,4^2");
        let y = pushforward(&x, 1).unwrap();
        assert_eq!(y.canonical(), "A(n=4; d=2) a=1,2");
        let same = pushforward(&x, 2).unwrap();
        assert_eq!(same.a_values(), x.a_values());
    }

    #[test]
    fn pushforward_orthogonal_drops_high_uppers() {
        let x = idx("OF(n=8; d=1,2) a=4^1 b=2^2");
        let y = pushforward(&x, 1).unwrap();
        assert_eq!(y.canonical(), "OG(k=1,n=8) a=4");
    }

    #[test]
    fn pushforward_tower() {
        let shape = parse_shape("A(n=5; d=1,2,3)").unwrap();
        for x in enumerate(&shape, 10_000).unwrap() {
            for tp in 1..=3usize {
                for t in 1..=tp {
                    let once = pushforward(&x, t).unwrap();
                    let twice = pushforward(&pushforward(&x, tp).unwrap(), t).unwrap();
                    assert_eq!(once, twice);
                }
            }
        }
    }

    #[test]
    fn fiber_examples_type_a() {
        let x = idx("A(n=4; d=1,3) a=1^2,2^1,4^2");
        let f = fiber_class(&x, 1).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[0].1.canonical(), "A(n=4; d=1,3) a=1^1,2^2,4^2");

        let x = idx("A(n=4; d=2,3) a=1^1,2^1,4^2");
        let f = fiber_class(&x, 2).unwrap();
        assert_eq!(f.terms()[0].1.canonical(), "A(n=4; d=2,3) a=1^1,2^1,3^2");
        assert_eq!(f.terms()[0].1.dimension(), 0);
    }

    #[test]
    fn fiber_case_three_split() {
        let x = idx("OF(n=8; d=1,2) a=4^1 b=2^2");
        let f = fiber_class(&x, 1).unwrap();
        let canon: Vec<String> = f.terms().iter().map(|(_, y)| y.canonical()).collect();
        assert_eq!(
            canon,
            vec![
                "OF(n=8; d=1,2) a=1^1 b=3^2".to_string(),
                "OF(n=8; d=1,2) a=1^1,4^2".to_string(),
            ]
        );
        for (c, _) in f.terms() {
            assert_eq!(*c, Coefficient::UnknownPositive);
        }
    }

    #[test]
    fn fiber_conserves_dimension_on_samples() {
        for text in [
            "A(n=4; d=1,3) a=1^2,2^1,4^2",
            "A(n=4; d=2,3) a=1^1,2^1,4^2",
            "OF(n=8; d=1,2) a=4^1 b=2^2",
            "OF(n=7; d=1,2) a=3^1 b=1^2",
            "OF(n=6; d=1,3) a=1^2,2^2,3^1",
        ] {
            let x = idx(text);
            for t in 1..=x.shape().steps() {
                let push_dim = pushforward_grassmannian(&x, t).unwrap().dimension();
                for (_, y) in fiber_class(&x, t).unwrap().terms() {
                    assert_eq!(
                        y.dimension() + push_dim,
                        x.dimension(),
                        "conservation failed for {x} at t={t}, term {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn class_sum_normalization() {
        let x = idx("A(n=4; d=2) a=1,3");
        let sum = FormalClassSum::new(vec![
            (Coefficient::Known(1), x.clone()),
            (Coefficient::Known(2), x.clone()),
            (Coefficient::Known(0), idx("A(n=4; d=2) a=1,2")),
        ]);
        assert_eq!(sum.terms().len(), 1);
        assert_eq!(sum.coefficient(&x), Coefficient::Known(3));
    }
}
