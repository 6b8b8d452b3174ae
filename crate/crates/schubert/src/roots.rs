//! Root systems of types A, B and D in epsilon coordinates, the window
//! action on roots, stabilizer and essential simple-root sets of Schubert
//! varieties, extreme coset representatives, and the ordering condition for
//! reducing a parabolic to its maximal overgroups.
//!
//! Orientation conventions are frozen by calibration tests: type A uses the
//! simple roots `e_{i+1} - e_i` (so positive roots are `e_j - e_i`, `i < j`),
//! types B and D use the standard `e_i - e_{i+1}` chain with short/spin end
//! node. Windows act by `w(e_i) = e_{w_i}` (with signs in types B/D).

use std::collections::BTreeSet;
use std::fmt;

use crate::index::{Family, FlagShape};
use crate::window::WeylWindow;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("window rank incompatible with the root system")]
    IncompatibleRank,
    #[error("window is not a minimal representative for the parabolic")]
    NotMinimal,
    #[error("parabolic subsets incompatible with the requested mode")]
    IncompatibleParabolics,
    #[error("too many factors: {0} exceeds the ordering-search budget")]
    TooManyFactors(usize),
}

/// A root written in the epsilon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn negated(&self) -> RootVector {
        RootVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "[{body}]")
    }
}

/// Dimension of the epsilon coordinate space for windows of the family.
pub fn coord_dim(family: Family, n: usize) -> usize {
    match family {
        Family::A => n,
        Family::B | Family::D => n / 2,
    }
}

/// Coxeter rank: number of simple roots.
pub fn rank(family: Family, n: usize) -> usize {
    match family {
        Family::A => n - 1,
        Family::B | Family::D => n / 2,
    }
}

fn unit(dim: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[i] = sign;
    v
}

/// Simple roots indexed by node `1..=rank`. `n` is the ambient dimension of
/// the windows (so the rank is `n-1` for type A and `n/2` for types B/D).
pub fn simple_roots(family: Family, n: usize) -> Vec<RootVector> {
    let dim = coord_dim(family, n);
    let mut out = Vec::new();
    match family {
        Family::A => {
            for i in 0..n - 1 {
                let mut v = vec![0i64; dim];
                v[i + 1] = 1;
                v[i] = -1;
                out.push(RootVector(v));
            }
        }
        Family::B => {
            let m = dim;
            for i in 0..m - 1 {
                let mut v = vec![0i64; m];
                v[i] = 1;
                v[i + 1] = -1;
                out.push(RootVector(v));
            }
            out.push(RootVector(unit(m, m - 1, 1)));
        }
        Family::D => {
            let m = dim;
            for i in 0..m - 1 {
                let mut v = vec![0i64; m];
                v[i] = 1;
                v[i + 1] = -1;
                out.push(RootVector(v));
            }
            let mut v = vec![0i64; m];
            v[m - 2] = 1;
            v[m - 1] = 1;
            out.push(RootVector(v));
        }
    }
    out
}

/// All positive roots of the system.
pub fn positive_roots(family: Family, n: usize) -> Vec<RootVector> {
    let dim = coord_dim(family, n);
    let mut out = Vec::new();
    match family {
        Family::A => {
            for i in 0..n {
                for j in i + 1..n {
                    let mut v = vec![0i64; dim];
                    v[j] = 1;
                    v[i] = -1;
                    out.push(RootVector(v));
                }
            }
        }
        Family::B | Family::D => {
            let m = dim;
            for i in 0..m {
                for j in i + 1..m {
                    let mut v = vec![0i64; m];
                    v[i] = 1;
                    v[j] = -1;
                    out.push(RootVector(v));
                    let mut v = vec![0i64; m];
                    v[i] = 1;
                    v[j] = 1;
                    out.push(RootVector(v));
                }
            }
            if family == Family::B {
                for i in 0..m {
                    out.push(RootVector(unit(m, i, 1)));
                }
            }
        }
    }
    out
}

pub fn all_roots(family: Family, n: usize) -> Vec<RootVector> {
    let mut out = positive_roots(family, n);
    let negs: Vec<RootVector> = out.iter().map(|r| r.negated()).collect();
    out.extend(negs);
    out
}

/// Positivity test; valid only on actual roots of the system.
pub fn is_positive(family: Family, r: &RootVector) -> bool {
    let first = r.0.iter().find(|&&c| c != 0).copied().unwrap_or(0);
    match family {
        Family::A => first < 0,
        Family::B | Family::D => first > 0,
    }
}

/// Action of a window on a root vector, `w(e_i) = sign * e_{|v_i|}`.
pub fn act(w: &WeylWindow, r: &RootVector) -> Result<RootVector, RootError> {
    let dim = coord_dim(w.family(), w.n());
    if r.0.len() != dim {
        return Err(RootError::IncompatibleRank);
    }
    let mut out = vec![0i64; dim];
    match w.family() {
        Family::A => {
            for (i, &c) in r.0.iter().enumerate() {
                out[w.entries()[i] - 1] += c;
            }
        }
        Family::B | Family::D => {
            let v = w.signed_half();
            for (i, &c) in r.0.iter().enumerate() {
                let s = v[i];
                if s > 0 {
                    out[(s - 1) as usize] += c;
                } else {
                    out[(-s - 1) as usize] -= c;
                }
            }
        }
    }
    Ok(RootVector(out))
}

/// Expansion coefficients of a root in the simple basis.
pub fn simple_coefficients(family: Family, n: usize, r: &RootVector) -> Vec<i64> {
    let c = &r.0;
    match family {
        Family::A => {
            // r = sum c_t * (e_{t+1} - e_t); coefficient t is -(prefix sum)
            let mut out = Vec::with_capacity(n - 1);
            let mut prefix = 0i64;
            for t in 0..n - 1 {
                prefix += c[t];
                out.push(-prefix);
            }
            out
        }
        Family::B => {
            let m = n / 2;
            let mut out = Vec::with_capacity(m);
            let mut prefix = 0i64;
            for t in 0..m {
                prefix += c[t];
                out.push(prefix);
            }
            out
        }
        Family::D => {
            let m = n / 2;
            let mut out = vec![0i64; m];
            let mut prefix = 0i64;
            for t in 0..m - 2 {
                prefix += c[t];
                out[t] = prefix;
            }
            let total: i64 = c.iter().sum();
            debug_assert_eq!(total.rem_euclid(2), 0, "not in the D root lattice");
            out[m - 1] = total / 2;
            out[m - 2] = out[m - 1] - c[m - 1];
            out
        }
    }
}

/// Simple-root nodes (1-based) carrying a nonzero coefficient.
pub fn support(family: Family, n: usize, r: &RootVector) -> BTreeSet<usize> {
    simple_coefficients(family, n, r)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Root-system data of a marked parabolic: the family, ambient size and the
/// set `I_P` of simple-root nodes inside the parabolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootContext {
    pub family: Family,
    pub n: usize,
    pub parabolic: BTreeSet<usize>,
}

impl RootContext {
    pub fn new(family: Family, n: usize, parabolic: BTreeSet<usize>) -> Self {
        RootContext { family, n, parabolic }
    }

    /// Parabolic of a flag shape: every node except the step dimensions.
    pub fn for_shape(shape: &FlagShape) -> Self {
        let family = shape.family();
        let n = shape.n();
        let rk = rank(family, n);
        let dims: BTreeSet<usize> = shape.dims().iter().copied().collect();
        let parabolic = (1..=rk).filter(|i| !dims.contains(i)).collect();
        RootContext { family, n, parabolic }
    }

    pub fn rank(&self) -> usize {
        rank(self.family, self.n)
    }

    /// Membership in `R_{P^-}`: negative roots together with the positive
    /// roots supported on `I_P`.
    pub fn in_parabolic_closure(&self, r: &RootVector) -> bool {
        if !is_positive(self.family, r) {
            return true;
        }
        support(self.family, self.n, r).is_subset(&self.parabolic)
    }
}

fn check_window(w: &WeylWindow, ctx: &RootContext) -> Result<(), RootError> {
    if w.family() != ctx.family || w.n() != ctx.n {
        return Err(RootError::IncompatibleRank);
    }
    if !is_minimal_for(w, &ctx.parabolic) {
        return Err(RootError::NotMinimal);
    }
    Ok(())
}

/// Minimality in the root-theoretic sense: `w` sends every simple root of
/// the parabolic to a positive root.
pub fn is_minimal_for(w: &WeylWindow, parabolic: &BTreeSet<usize>) -> bool {
    let simples = simple_roots(w.family(), w.n());
    parabolic.iter().all(|&i| {
        let img = act(w, &simples[i - 1]).expect("rank matches");
        is_positive(w.family(), &img)
    })
}

/// `I_w`, the set of simple roots whose minimal parabolic stabilizes the
/// Schubert variety of `w`, computed both as `Phi ∩ w(R_{P^-})` and through
/// `w^{-1}`; the two must agree.
pub fn stabilizer_simple_roots(
    w: &WeylWindow,
    ctx: &RootContext,
) -> Result<BTreeSet<usize>, RootError> {
    check_window(w, ctx)?;
    let family = ctx.family;
    let simples = simple_roots(family, ctx.n);
    let mut via_forward: BTreeSet<usize> = BTreeSet::new();
    for r in all_roots(family, ctx.n) {
        if !ctx.in_parabolic_closure(&r) {
            continue;
        }
        let img = act(w, &r)?;
        if let Some(pos) = simples.iter().position(|s| *s == img) {
            via_forward.insert(pos + 1);
        }
    }
    let winv = w.inverse();
    let via_inverse: BTreeSet<usize> = (1..=ctx.rank())
        .filter(|&i| {
            let pre = act(&winv, &simples[i - 1]).expect("rank matches");
            ctx.in_parabolic_closure(&pre)
        })
        .collect();
    debug_assert_eq!(via_forward, via_inverse, "stabilizer characterizations disagree");
    Ok(via_forward)
}

/// Essential simple roots `E(w)`: the complement of `I_w` in the simple
/// system.
pub fn essential_roots(w: &WeylWindow, ctx: &RootContext) -> Result<BTreeSet<usize>, RootError> {
    let stab = stabilizer_simple_roots(w, ctx)?;
    Ok((1..=ctx.rank()).filter(|i| !stab.contains(i)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeMode {
    Min,
    Max,
}

fn descend_to_min(mut w: WeylWindow, parabolic: &BTreeSet<usize>) -> WeylWindow {
    let simples = simple_roots(w.family(), w.n());
    loop {
        let mut moved = false;
        for &node in parabolic {
            let img = act(&w, &simples[node - 1]).expect("rank matches");
            if !is_positive(w.family(), &img) {
                w = w.right_multiply_node(node);
                moved = true;
            }
        }
        if !moved {
            return w;
        }
    }
}

/// Longest element of the standard parabolic subgroup on `nodes`.
fn longest_parabolic_element(family: Family, n: usize, nodes: &BTreeSet<usize>) -> WeylWindow {
    let simples = simple_roots(family, n);
    let mut w = WeylWindow::new(family, n, (1..=n).collect()).expect("identity window");
    loop {
        let mut moved = false;
        for &node in nodes {
            let img = act(&w, &simples[node - 1]).expect("rank matches");
            if is_positive(family, &img) {
                w = w.right_multiply_node(node);
                moved = true;
            }
        }
        if !moved {
            return w;
        }
    }
}

/// Window composition `a . b` (apply `b` first).
pub fn compose(a: &WeylWindow, b: &WeylWindow) -> WeylWindow {
    assert_eq!(a.family(), b.family());
    assert_eq!(a.n(), b.n());
    let n = a.n();
    match a.family() {
        Family::A => {
            let entries: Vec<usize> = b.entries().iter().map(|&i| a.entries()[i - 1]).collect();
            WeylWindow::new(Family::A, n, entries).expect("composition of windows")
        }
        Family::B | Family::D => {
            let va = a.signed_half();
            let vb = b.signed_half();
            let m = n / 2;
            let mut half = Vec::with_capacity(m);
            for &s in &vb {
                let t = if s > 0 {
                    va[(s - 1) as usize]
                } else {
                    -va[(-s - 1) as usize]
                };
                let value = if t > 0 { t as usize } else { (n as i64 + 1 + t) as usize };
                half.push(value);
            }
            WeylWindow::from_half(a.family(), n, &half).expect("composition of windows")
        }
    }
}

/// Extreme representative of the coset `w W_to`.
///
/// `Min` returns the shortest element; `Max` (requires `from ⊆ to`) returns
/// the longest element of the coset that is still minimal for `from` — the
/// window of the pullback Schubert variety along `G/P_from -> G/P_to`.
pub fn coset_extreme_rep(
    w: &WeylWindow,
    from: &BTreeSet<usize>,
    to: &BTreeSet<usize>,
    mode: ExtremeMode,
) -> Result<WeylWindow, RootError> {
    let rk = rank(w.family(), w.n());
    for &i in from.iter().chain(to.iter()) {
        if i < 1 || i > rk {
            return Err(RootError::IncompatibleRank);
        }
    }
    match mode {
        ExtremeMode::Min => Ok(descend_to_min(w.clone(), to)),
        ExtremeMode::Max => {
            if !from.is_subset(to) {
                return Err(RootError::IncompatibleParabolics);
            }
            let min = descend_to_min(w.clone(), to);
            let w0 = longest_parabolic_element(w.family(), w.n(), to);
            Ok(descend_to_min(compose(&min, &w0), from))
        }
    }
}

/// Searches the orderings of `S = Phi \ I_P` for one along which the
/// essential sets of the pushforwards are nested as the reduction to maximal
/// parabolics requires. Returns the first witness ordering.
pub fn ordering_condition(
    w: &WeylWindow,
    ctx: &RootContext,
) -> Result<(bool, Option<Vec<usize>>), RootError> {
    check_window(w, ctx)?;
    let rk = ctx.rank();
    let s_nodes: Vec<usize> = (1..=rk).filter(|i| !ctx.parabolic.contains(i)).collect();
    if s_nodes.len() > 6 {
        return Err(RootError::TooManyFactors(s_nodes.len()));
    }
    if s_nodes.len() <= 1 {
        return Ok((true, Some(s_nodes)));
    }
    // per-node data: the pushforward window and its essential set relative
    // to the maximal parabolic omitting the node
    let mut pushed: Vec<(usize, WeylWindow, BTreeSet<usize>)> = Vec::new();
    for &alpha in &s_nodes {
        let to: BTreeSet<usize> = (1..=rk).filter(|&i| i != alpha).collect();
        let w_alpha = coset_extreme_rep(w, &ctx.parabolic, &to, ExtremeMode::Min)?;
        let ess = essential_roots(&w_alpha, &RootContext::new(ctx.family, ctx.n, to))?;
        pushed.push((alpha, w_alpha, ess));
    }
    let nested = |hi: &(usize, WeylWindow, BTreeSet<usize>),
                  lo: &(usize, WeylWindow, BTreeSet<usize>)|
     -> Result<bool, RootError> {
        // pull hi back to P, push to the maximal parabolic of lo, compare
        let to_hi: BTreeSet<usize> = (1..=rk).filter(|&i| i != hi.0).collect();
        let to_lo: BTreeSet<usize> = (1..=rk).filter(|&i| i != lo.0).collect();
        let pulled = coset_extreme_rep(&hi.1, &ctx.parabolic, &to_hi, ExtremeMode::Max)?;
        let pushed_again = coset_extreme_rep(&pulled, &ctx.parabolic, &to_lo, ExtremeMode::Min)?;
        let ess = essential_roots(&pushed_again, &RootContext::new(ctx.family, ctx.n, to_lo))?;
        Ok(lo.2.is_subset(&ess))
    };
    let mut order: Vec<usize> = (0..pushed.len()).collect();
    let ok = loop {
        let mut all = true;
        for pair in order.windows(2) {
            if !nested(&pushed[pair[1]], &pushed[pair[0]])? {
                all = false;
                break;
            }
        }
        if all {
            break true;
        }
        if !next_permutation(&mut order) {
            break false;
        }
    };
    if ok {
        Ok((true, Some(order.iter().map(|&i| pushed[i].0).collect())))
    } else {
        Ok((false, None))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{parse_shape, SchubertIndex};
    use crate::window::{index_to_window, length};

    fn ctx_of(text: &str) -> RootContext {
        RootContext::for_shape(&parse_shape(text).unwrap())
    }

    fn win(text: &str) -> WeylWindow {
        index_to_window(&SchubertIndex::parse(text).unwrap())
    }

    #[test]
    fn simple_roots_type_a() {
        let roots = simple_roots(Family::A, 4);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].coords(), &[-1, 1, 0, 0]);
        assert_eq!(roots[1].coords(), &[0, -1, 1, 0]);
        assert_eq!(roots[2].coords(), &[0, 0, -1, 1]);
    }

    #[test]
    fn simple_roots_type_b_has_one_short() {
        let roots = simple_roots(Family::B, 5);
        assert_eq!(roots.len(), 2);
        let norms: Vec<i64> = roots.iter().map(|r| r.0.iter().map(|c| c * c).sum()).collect();
        assert_eq!(norms.iter().filter(|&&q| q == 1).count(), 1);
        assert_eq!(norms.iter().filter(|&&q| q == 2).count(), 1);
    }

    #[test]
    fn simple_roots_independent() {
        for (family, n) in [(Family::A, 5), (Family::B, 7), (Family::D, 8)] {
            let roots = simple_roots(family, n);
            // expansion of each simple root in the simple basis is a unit vector
            for (i, r) in roots.iter().enumerate() {
                let coeffs = simple_coefficients(family, n, r);
                let mut want = vec![0i64; roots.len()];
                want[i] = 1;
                assert_eq!(coeffs, want, "family {family} node {}", i + 1);
            }
        }
    }

    #[test]
    fn act_identity_and_example() {
        let id = WeylWindow::new(Family::A, 4, vec![1, 2, 3, 4]).unwrap();
        let beta2 = RootVector(vec![0, -1, 1, 0]);
        assert_eq!(act(&id, &beta2).unwrap(), beta2);
        let w = WeylWindow::new(Family::A, 4, vec![1, 3, 2, 4]).unwrap();
        assert_eq!(act(&w, &beta2).unwrap(), beta2.negated());
    }

    #[test]
    fn act_composition_law() {
        let u = WeylWindow::new(Family::A, 4, vec![2, 3, 1, 4]).unwrap();
        let v = WeylWindow::new(Family::A, 4, vec![1, 3, 2, 4]).unwrap();
        let uv = compose(&u, &v);
        for r in all_roots(Family::A, 4) {
            let lhs = act(&uv, &r).unwrap();
            let rhs = act(&u, &act(&v, &r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let u = WeylWindow::from_half(Family::D, 8, &[4, 6, 1, 7]).unwrap();
        let v = WeylWindow::from_half(Family::D, 8, &[2, 1, 3, 4]).unwrap();
        let uv = compose(&u, &v);
        for r in all_roots(Family::D, 8) {
            let lhs = act(&uv, &r).unwrap();
            let rhs = act(&u, &act(&v, &r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn stabilizer_of_incidence_cell() {
        let ctx = ctx_of("A(n=4; d=2)");
        let w = win("A(n=4; d=2) a=1,3");
        let stab = stabilizer_simple_roots(&w, &ctx).unwrap();
        assert_eq!(stab, BTreeSet::from([2]));
        let ess = essential_roots(&w, &ctx).unwrap();
        assert_eq!(ess, BTreeSet::from([1, 3]));
    }

    #[test]
    fn stabilizer_extremes() {
        let ctx = ctx_of("A(n=4; d=2)");
        // the identity window names the point class, stabilized exactly by P
        let id = WeylWindow::new(Family::A, 4, vec![1, 2, 3, 4]).unwrap();
        let stab = stabilizer_simple_roots(&id, &ctx).unwrap();
        assert_eq!(stab, BTreeSet::from([1, 3]));
        assert_eq!(essential_roots(&id, &ctx).unwrap(), BTreeSet::from([2]));
        // the fundamental class is stable under all of G
        let full = win("A(n=4; d=2) a=3,4");
        let stab = stabilizer_simple_roots(&full, &ctx).unwrap();
        assert_eq!(stab, BTreeSet::from([1, 2, 3]));
        assert!(essential_roots(&full, &ctx).unwrap().is_empty());
    }

    #[test]
    fn essential_roots_flag_example() {
        let ctx = ctx_of("A(n=4; d=2,3)");
        let w = win("A(n=4; d=2,3) a=1^1,2^1,4^2");
        let ess = essential_roots(&w, &ctx).unwrap();
        assert_eq!(ess, BTreeSet::from([2]));
        let stab = stabilizer_simple_roots(&w, &ctx).unwrap();
        assert_eq!(stab, BTreeSet::from([1, 3]));
    }

    #[test]
    fn stabilizer_rejects_non_minimal() {
        let ctx = ctx_of("A(n=4; d=2)");
        let bad = WeylWindow::new(Family::A, 4, vec![3, 1, 2, 4]).unwrap();
        assert_eq!(stabilizer_simple_roots(&bad, &ctx), Err(RootError::NotMinimal));
    }

    #[test]
    fn coset_min_is_block_sort() {
        let to = BTreeSet::from([1, 3]);
        let w = WeylWindow::new(Family::A, 4, vec![2, 1, 3, 4]).unwrap();
        let min = coset_extreme_rep(&w, &BTreeSet::new(), &to, ExtremeMode::Min).unwrap();
        assert_eq!(min.entries(), &[1, 2, 3, 4]);
        let again = coset_extreme_rep(&min, &BTreeSet::new(), &to, ExtremeMode::Min).unwrap();
        assert_eq!(again, min);
    }

    #[test]
    fn coset_max_matches_exhaustive_search() {
        // the coset of (1,3,2,4) modulo W_{(2,2)} has four elements; the
        // longest is (3,1,4,2)
        let to = BTreeSet::from([1, 3]);
        let w = WeylWindow::new(Family::A, 4, vec![1, 3, 2, 4]).unwrap();
        let max = coset_extreme_rep(&w, &BTreeSet::new(), &to, ExtremeMode::Max).unwrap();
        assert_eq!(max.entries(), &[3, 1, 4, 2]);
        assert_eq!(length(&max), 3);
    }

    #[test]
    fn ordering_condition_single_factor() {
        let ctx = ctx_of("A(n=4; d=2)");
        let w = win("A(n=4; d=2) a=1,3");
        let (ok, order) = ordering_condition(&w, &ctx).unwrap();
        assert!(ok);
        assert_eq!(order, Some(vec![2]));
    }

    #[test]
    fn ordering_condition_flag_example() {
        let ctx = ctx_of("A(n=4; d=2,3)");
        let w = win("A(n=4; d=2,3) a=1^1,2^1,4^2");
        let (ok, order) = ordering_condition(&w, &ctx).unwrap();
        assert!(ok, "expected a witness ordering");
        assert!(order.is_some());
    }
}
