//! One-line Weyl windows for types A, B and D, conversions to and from
//! Schubert indices, Coxeter lengths, and minimality of coset
//! representatives.
//!
//! Types B/D use windows `(w_1..w_n)` with the symmetry `w_i = n+1-w_{n+1-i}`;
//! the first `m = floor(n/2)` entries determine the rest. The signed view
//! maps `w_i` to `w_i` when `w_i <= m` and to `w_i - (n+1)` otherwise. For
//! spinor shapes the second component is carried by windows with an odd
//! number of sign changes.

use std::fmt;

use crate::index::{Component, Entry, Family, FlagShape, IndexError, SchubertIndex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylWindow {
    family: Family,
    n: usize,
    entries: Vec<usize>,
}

impl WeylWindow {
    pub fn new(family: Family, n: usize, entries: Vec<usize>) -> Result<Self, IndexError> {
        if entries.len() != n {
            return Err(IndexError::Syntax(format!(
                "window needs {n} entries, got {}",
                entries.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &w in &entries {
            if w < 1 || w > n || seen[w] {
                return Err(IndexError::Syntax(format!("not a permutation of 1..={n}")));
            }
            seen[w] = true;
        }
        match family {
            Family::A => {}
            Family::B => {
                if n % 2 == 0 {
                    return Err(IndexError::Syntax("family B window needs odd n".into()));
                }
                for i in 0..n {
                    if entries[i] != n + 1 - entries[n - 1 - i] {
                        return Err(IndexError::Syntax("window breaks the symmetry w_i = n+1-w_{n+1-i}".into()));
                    }
                }
            }
            Family::D => {
                if n % 2 != 0 {
                    return Err(IndexError::Syntax("family D window needs even n".into()));
                }
                for i in 0..n {
                    if entries[i] != n + 1 - entries[n - 1 - i] {
                        return Err(IndexError::Syntax("window breaks the symmetry w_i = n+1-w_{n+1-i}".into()));
                    }
                }
            }
        }
        Ok(WeylWindow { family, n, entries })
    }

    /// Rebuilds a full window from its first `m` entries (types B/D).
    pub fn from_half(family: Family, n: usize, half: &[usize]) -> Result<Self, IndexError> {
        let m = n / 2;
        if half.len() != m {
            return Err(IndexError::Syntax(format!("half window needs {m} entries")));
        }
        let mut entries = vec![0usize; n];
        entries[..m].copy_from_slice(half);
        if n % 2 == 1 {
            entries[m] = m + 1;
        }
        for i in 0..m {
            entries[n - 1 - i] = n + 1 - half[i];
        }
        WeylWindow::new(family, n, entries)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &w)| w == i + 1)
    }

    /// Signed view of the first half; only meaningful for B/D.
    pub fn signed_half(&self) -> Vec<i64> {
        let m = self.half();
        self.entries[..m]
            .iter()
            .map(|&w| {
                if w <= m {
                    w as i64
                } else {
                    w as i64 - (self.n as i64 + 1)
                }
            })
            .collect()
    }

    /// Number of entries above the half bound among the first half. Odd
    /// parity marks the second spinor component.
    pub fn sign_change_count(&self) -> usize {
        let m = self.half();
        self.entries[..m].iter().filter(|&&w| w > m).count()
    }

    pub fn inverse(&self) -> WeylWindow {
        let mut entries = vec![0usize; self.n];
        for (i, &w) in self.entries.iter().enumerate() {
            entries[w - 1] = i + 1;
        }
        WeylWindow {
            family: self.family,
            n: self.n,
            entries,
        }
    }

    /// Right multiplication by the simple reflection of the given node
    /// (1-based; see `roots::simple_roots` for the node order).
    pub(crate) fn right_multiply_node(&self, node: usize) -> WeylWindow {
        let n = self.n;
        let mut e = self.entries.clone();
        match self.family {
            Family::A => {
                e.swap(node - 1, node);
            }
            Family::B => {
                let m = self.half();
                if node < m {
                    e.swap(node - 1, node);
                    e.swap(n - node - 1, n - node);
                } else {
                    // sign change of coordinate m
                    e[m - 1] = n + 1 - e[m - 1];
                    e[n - m] = n + 1 - e[n - m];
                }
            }
            Family::D => {
                let m = self.half();
                if node < m {
                    e.swap(node - 1, node);
                    e.swap(n - node - 1, n - node);
                } else {
                    // node m: (v_{m-1}, v_m) -> (-v_m, -v_{m-1})
                    let a = e[m - 2];
                    let b = e[m - 1];
                    e[m - 2] = n + 1 - b;
                    e[m - 1] = n + 1 - a;
                    for i in 0..m {
                        e[n - 1 - i] = n + 1 - e[i];
                    }
                }
            }
        }
        WeylWindow {
            family: self.family,
            n,
            entries: e,
        }
    }
}

impl fmt::Display for WeylWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .entries
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({body})")
    }
}

/// Coxeter length: inversion count for type A; for B/D the number of
/// positive roots sent negative by the signed half-window.
pub fn length(w: &WeylWindow) -> usize {
    match w.family {
        Family::A => {
            let e = &w.entries;
            let mut inv = 0;
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    if e[i] > e[j] {
                        inv += 1;
                    }
                }
            }
            inv
        }
        Family::B => signed_length(&w.signed_half(), true),
        Family::D => signed_length(&w.signed_half(), false),
    }
}

fn signed_length(v: &[i64], with_singles: bool) -> usize {
    let m = v.len();
    let mut l = 0;
    if with_singles {
        l += v.iter().filter(|&&x| x < 0).count();
    }
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (v[i], v[j]);
            // root e_i - e_j
            let diff_negated = if a * b > 0 { a > b } else { a < 0 && b > 0 };
            // root e_i + e_j
            let sum_negated = if a < 0 && b < 0 {
                true
            } else if a > 0 && b > 0 {
                false
            } else if a > 0 {
                a > -b
            } else {
                b > -a
            };
            if diff_negated {
                l += 1;
            }
            if sum_negated {
                l += 1;
            }
        }
    }
    l
}

/// Sorts every block of a type-A window ascending, producing the minimal
/// representative of its coset.
pub fn minimize(w: &WeylWindow, shape: &FlagShape) -> WeylWindow {
    assert_eq!(w.family(), Family::A);
    let mut e = w.entries.clone();
    let mut start = 0usize;
    let mut bounds: Vec<usize> = shape.dims().to_vec();
    bounds.push(shape.n());
    for &end in &bounds {
        e[start..end].sort_unstable();
        start = end;
    }
    WeylWindow {
        family: Family::A,
        n: w.n,
        entries: e,
    }
}

/// Minimal window representative of the coset named by the index.
pub fn index_to_window(x: &SchubertIndex) -> WeylWindow {
    let shape = x.shape();
    let n = shape.n();
    match shape.family() {
        Family::A => {
            let mut entries = Vec::with_capacity(n);
            let mut used = vec![false; n + 1];
            for t in 1..=shape.steps() {
                let mut block: Vec<usize> = x
                    .a_entries()
                    .iter()
                    .filter(|e| e.upper == t)
                    .map(|e| e.value)
                    .collect();
                block.sort_unstable();
                for v in &block {
                    used[*v] = true;
                }
                entries.extend(block);
            }
            entries.extend((1..=n).filter(|&v| !used[v]));
            WeylWindow::new(Family::A, n, entries).expect("valid index produces a valid window")
        }
        Family::B | Family::D => {
            let m = shape.half();
            let dk = shape.last_dim();
            let mut half = Vec::with_capacity(m);
            let mut used_pair = vec![false; m + 1]; // pair keyed by its value <= m
            for t in 1..=shape.steps() {
                let mut block: Vec<usize> = Vec::new();
                for e in x.a_entries().iter().filter(|e| e.upper == t) {
                    block.push(e.value);
                    used_pair[e.value] = true;
                }
                for e in x.b_entries().iter().filter(|e| e.upper == t) {
                    let w = n - e.value;
                    block.push(w);
                    // the pair of window value w > m is keyed by n+1-w
                    used_pair[n + 1 - w] = true;
                }
                block.sort_unstable();
                half.extend(block);
            }
            let free: Vec<usize> = (1..=m).filter(|&v| !used_pair[v]).collect();
            debug_assert_eq!(free.len(), m - dk);
            let fill = if shape.family() == Family::B || shape.is_spinor() {
                // spinor shapes have no free positions; B fills all-positive
                free
            } else {
                // non-spinor D windows must have an even sign-change count
                let need_odd_fill = x.b_entries().len() % 2 == 1;
                best_d_fill(&free, n, need_odd_fill, &half)
            };
            let mut full_half = half;
            full_half.extend(fill);
            WeylWindow::from_half(shape.family(), n, &full_half)
                .expect("valid index produces a valid window")
        }
    }
}

/// Chooses window values for the free pair positions of a type-D window so
/// that the total sign-change parity is as requested and the resulting
/// window has minimal length. `free` lists the positive member of each
/// unused pair.
fn best_d_fill(free: &[usize], n: usize, odd_flips: bool, placed: &[usize]) -> Vec<usize> {
    if free.is_empty() {
        assert!(!odd_flips, "spinor placement cannot need a parity fix");
        return Vec::new();
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u64..(1u64 << free.len()) {
        if (mask.count_ones() as usize) % 2 != usize::from(odd_flips) % 2 {
            continue;
        }
        let mut fill: Vec<usize> = free
            .iter()
            .enumerate()
            .map(|(i, &v)| if mask >> i & 1 == 1 { n + 1 - v } else { v })
            .collect();
        fill.sort_unstable();
        let mut half = placed.to_vec();
        half.extend(fill.iter().copied());
        let w = WeylWindow::from_half(Family::D, n, &half).expect("fill stays a window");
        let l = length(&w);
        if best.as_ref().map(|(bl, _)| l < *bl).unwrap_or(true) {
            best = Some((l, fill));
        }
    }
    best.expect("some fill matches the parity").1
}

/// True when the window is the shortest element of its coset for the
/// parabolic of the shape.
pub fn is_minimal_rep(w: &WeylWindow, shape: &FlagShape) -> bool {
    if w.family() != shape.family() || w.n() != shape.n() {
        return false;
    }
    let e = w.entries();
    match shape.family() {
        Family::A => {
            let mut bounds: Vec<usize> = shape.dims().to_vec();
            bounds.push(shape.n());
            let mut start = 0usize;
            for &end in &bounds {
                if e[start..end].windows(2).any(|p| p[0] > p[1]) {
                    return false;
                }
                start = end;
            }
            true
        }
        Family::B | Family::D => {
            let m = shape.half();
            let dk = shape.last_dim();
            // ascending inside every first-half block, including the leftovers
            let mut bounds: Vec<usize> = shape.dims().to_vec();
            if dk < m {
                bounds.push(m);
            }
            let mut start = 0usize;
            for &end in &bounds {
                if e[start..end].windows(2).any(|p| p[0] > p[1]) {
                    return false;
                }
                start = end;
            }
            let v = w.signed_half();
            match shape.family() {
                Family::B => {
                    if dk < m && v[m - 1] < 0 {
                        return false;
                    }
                }
                Family::D => {
                    if !shape.is_spinor() && w.sign_change_count() % 2 == 1 {
                        return false;
                    }
                    if dk + 2 <= m {
                        // node e_{m-1}+e_m must stay positive
                        let (a, b) = (v[m - 2], v[m - 1]);
                        let ok = if a > 0 && b > 0 {
                            true
                        } else if a < 0 && b < 0 {
                            false
                        } else {
                            a + b < 0
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
                Family::A => unreachable!(),
            }
            true
        }
    }
}

/// Reads the Schubert index off a minimal window representative.
pub fn window_to_index(w: &WeylWindow, shape: &FlagShape) -> Result<SchubertIndex, IndexError> {
    if !is_minimal_rep(w, shape) {
        return Err(IndexError::NotMinimal);
    }
    let n = shape.n();
    let e = w.entries();
    match shape.family() {
        Family::A => {
            let dk = shape.last_dim();
            let mut a: Vec<Entry> = (0..dk)
                .map(|i| Entry::new(e[i], shape.block_of_position(i + 1)))
                .collect();
            a.sort_by_key(|en| en.value);
            SchubertIndex::new(shape.clone(), a, Vec::new(), Component::Plus)
        }
        Family::B | Family::D => {
            let m = shape.half();
            let dk = shape.last_dim();
            let mut a = Vec::new();
            let mut b = Vec::new();
            for i in 0..dk {
                let upper = shape.block_of_position(i + 1);
                if e[i] <= m {
                    a.push(Entry::new(e[i], upper));
                } else {
                    b.push(Entry::new(n - e[i], upper));
                }
            }
            a.sort_by_key(|en| en.value);
            b.sort_by_key(|en| en.value);
            let component = if shape.is_spinor() && w.sign_change_count() % 2 == 1 {
                Component::Minus
            } else {
                Component::Plus
            };
            SchubertIndex::new(shape.clone(), a, b, component)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{enumerate, parse_shape, SchubertIndex};
    use std::collections::HashMap;

    fn idx(text: &str) -> SchubertIndex {
        SchubertIndex::parse(text).unwrap()
    }

    #[test]
    fn window_for_grassmannian_cell() {
        let x = idx("A(n=4; d=2) a=1,3");
        let w = index_to_window(&x);
        assert_eq!(w.entries(), &[1, 3, 2, 4]);
        assert_eq!(length(&w), 1);
        assert_eq!(window_to_index(&w, x.shape()).unwrap(), x);
    }

    #[test]
    fn window_for_flag_example() {
        let x = idx("A(n=4; d=2,3) a=1^1,2^1,4^2");
        let w = index_to_window(&x);
        assert_eq!(w.entries(), &[1, 2, 4, 3]);
        assert_eq!(length(&w), 1);
        assert_eq!(x.dimension(), 1);
    }

    #[test]
    fn window_for_odd_quadric_line() {
        let x = idx("OG(k=1,n=5) a=2");
        let w = index_to_window(&x);
        assert_eq!(w.entries(), &[2, 1, 3, 5, 4]);
        assert_eq!(length(&w), 1);
        let back = window_to_index(&w, x.shape()).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.b_values(), Vec::<usize>::new());
    }

    #[test]
    fn og15_class_dimensions() {
        // the four classes of a three-dimensional quadric have dims 0..3
        let shape = parse_shape("OG(k=1,n=5)").unwrap();
        let mut dims: Vec<usize> = enumerate(&shape, 100)
            .unwrap()
            .iter()
            .map(|x| x.dimension())
            .collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 1, 2, 3]);
    }

    #[test]
    fn point_class_is_identity_window() {
        let x = idx("A(n=4; d=2,3) a=1^1,2^1,3^2");
        let w = index_to_window(&x);
        assert!(w.is_identity());
        assert_eq!(x.dimension(), 0);
    }

    #[test]
    fn minimality_examples() {
        let shape = parse_shape("A(n=4; d=2)").unwrap();
        let good = WeylWindow::new(Family::A, 4, vec![1, 3, 2, 4]).unwrap();
        let bad = WeylWindow::new(Family::A, 4, vec![3, 1, 2, 4]).unwrap();
        assert!(is_minimal_rep(&good, &shape));
        assert!(!is_minimal_rep(&bad, &shape));
        assert!(window_to_index(&bad, &shape).is_err());
    }

    #[test]
    fn half_window_reconstruction() {
        let w = WeylWindow::from_half(Family::B, 5, &[2, 1]).unwrap();
        assert_eq!(w.entries(), &[2, 1, 3, 5, 4]);
        let w = WeylWindow::from_half(Family::D, 4, &[3, 4]).unwrap();
        assert_eq!(w.entries(), &[3, 4, 1, 2]);
    }

    /// Breadth-first search over the Cayley graph gives reference lengths.
    fn bfs_lengths(family: Family, n: usize, nodes: usize) -> HashMap<Vec<usize>, usize> {
        let id = WeylWindow::new(family, n, (1..=n).collect()).unwrap();
        let mut dist = HashMap::new();
        dist.insert(id.entries().to_vec(), 0usize);
        let mut frontier = vec![id];
        let mut level = 0usize;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for w in frontier {
                for node in 1..=nodes {
                    let u = w.right_multiply_node(node);
                    if !dist.contains_key(u.entries()) {
                        dist.insert(u.entries().to_vec(), level);
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    #[test]
    fn length_matches_word_length_type_a() {
        let dist = bfs_lengths(Family::A, 4, 3);
        assert_eq!(dist.len(), 24);
        for (entries, d) in dist {
            let w = WeylWindow::new(Family::A, 4, entries).unwrap();
            assert_eq!(length(&w), d, "window {w}");
        }
    }

    #[test]
    fn length_matches_word_length_type_b() {
        for (n, size) in [(5usize, 8usize), (7, 48)] {
            let m = n / 2;
            let dist = bfs_lengths(Family::B, n, m);
            assert_eq!(dist.len(), size);
            for (entries, d) in dist {
                let w = WeylWindow::new(Family::B, n, entries).unwrap();
                assert_eq!(length(&w), d, "window {w}");
            }
        }
    }

    #[test]
    fn length_matches_word_length_type_d() {
        for (n, size) in [(6usize, 24usize), (8, 192)] {
            let m = n / 2;
            let dist = bfs_lengths(Family::D, n, m);
            assert_eq!(dist.len(), size);
            for (entries, d) in dist {
                let w = WeylWindow::new(Family::D, n, entries).unwrap();
                assert_eq!(length(&w), d, "window {w}");
            }
        }
    }

    #[test]
    fn round_trip_small_shapes() {
        for text in [
            "A(n=4; d=2)",
            "A(n=4; d=2,3)",
            "A(n=5; d=1,3)",
            "OG(k=1,n=5)",
            "OG(k=2,n=9)",
            "OG(k=2,n=4)",
            "OG(k=3,n=6)",
            "OF(n=8; d=1,2)",
            "OF(n=7; d=1,2)",
        ] {
            let shape = parse_shape(text).unwrap();
            for x in enumerate(&shape, 100_000).unwrap() {
                let w = index_to_window(&x);
                assert!(is_minimal_rep(&w, &shape), "{x} gave non-minimal {w}");
                let back = window_to_index(&w, &shape).unwrap();
                assert_eq!(back, x, "round trip failed via {w}");
            }
        }
    }

    #[test]
    fn spinor_minus_round_trip() {
        let x = idx("OG(k=3,n=6) a=1 b=1,2");
        let y = x.spinor_involution().unwrap();
        let w = index_to_window(&y);
        assert_eq!(w.sign_change_count() % 2, 1);
        let back = window_to_index(&w, y.shape()).unwrap();
        assert_eq!(back, y);
    }

    #[test]
    fn d_fill_picks_the_shorter_candidate() {
        // OF(1,2;8) with one b-entry forces exactly one sign change in the
        // leftover fill; the minimal choice is value 7, not 8.
        let x = idx("OF(n=8; d=1,2) a=4^1 b=2^2");
        let w = index_to_window(&x);
        assert_eq!(w.entries()[..4], [4, 6, 1, 7]);
        assert_eq!(length(&w), 5);
    }
}
