//! Schubert indices for partial flag varieties of types A, B and D.
//!
//! A class on `F(d_1..d_k;n)` is named by a double sequence `a^alpha`; on the
//! orthogonal varieties `OG(k,n)` / `OF(d_1..d_k;n)` by a pair of double
//! sequences `(a^alpha; b^beta)`. All values are immutable after
//! construction and every constructor validates the full invariant set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::D => write!(f, "D"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantKind {
    AdjacencyAB,
    ParityD,
    UpperCount,
    Range,
    NotIncreasing,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvariantKind::AdjacencyAB => "AdjacencyAB",
            InvariantKind::ParityD => "ParityD",
            InvariantKind::UpperCount => "UpperCount",
            InvariantKind::Range => "Range",
            InvariantKind::NotIncreasing => "NotIncreasing",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invariant {kind} violated: {detail}")]
    Invariant { kind: InvariantKind, detail: String },
    #[error("operation requires family {expected}, index has family {found}")]
    WrongFamily { expected: Family, found: Family },
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("window is not a minimal coset representative")]
    NotMinimal,
    #[error("step index {t} out of range 1..={k}")]
    BadStep { t: usize, k: usize },
}

fn invariant(kind: InvariantKind, detail: impl Into<String>) -> IndexError {
    IndexError::Invariant {
        kind,
        detail: detail.into(),
    }
}

/// Ambient data of a flag variety: family, ambient dimension `n` and the
/// strictly increasing step dimensions `d_1 < ... < d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagShape {
    family: Family,
    n: usize,
    dims: Vec<usize>,
}

impl FlagShape {
    pub fn new(family: Family, n: usize, dims: Vec<usize>) -> Result<Self, IndexError> {
        if dims.is_empty() {
            return Err(invariant(InvariantKind::Range, "no step dimensions"));
        }
        if dims[0] == 0 {
            return Err(invariant(InvariantKind::Range, "step dimension must be positive"));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invariant(
                InvariantKind::NotIncreasing,
                "step dimensions must be strictly increasing",
            ));
        }
        let dk = *dims.last().unwrap();
        match family {
            Family::A => {
                if dk >= n {
                    return Err(invariant(InvariantKind::Range, format!("d_k={dk} must be < n={n}")));
                }
            }
            Family::B => {
                if n % 2 == 0 || n < 3 {
                    return Err(invariant(InvariantKind::Range, format!("family B needs odd n >= 3, got {n}")));
                }
                if dk > (n - 1) / 2 {
                    return Err(invariant(
                        InvariantKind::Range,
                        format!("d_k={dk} exceeds the isotropic bound {}", (n - 1) / 2),
                    ));
                }
            }
            Family::D => {
                if n % 2 != 0 || n < 4 {
                    return Err(invariant(InvariantKind::Range, format!("family D needs even n >= 4, got {n}")));
                }
                if dk > n / 2 {
                    return Err(invariant(
                        InvariantKind::Range,
                        format!("d_k={dk} exceeds the isotropic bound {}", n / 2),
                    ));
                }
                if dk == n / 2 - 1 {
                    return Err(invariant(
                        InvariantKind::Range,
                        format!("family D excludes d_k = n/2 - 1 = {dk}"),
                    ));
                }
            }
        }
        Ok(FlagShape { family, n, dims })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of steps `k`.
    pub fn steps(&self) -> usize {
        self.dims.len()
    }

    pub fn last_dim(&self) -> usize {
        *self.dims.last().unwrap()
    }

    /// Half dimension `m = floor(n/2)`; only meaningful for B/D.
    pub fn half(&self) -> usize {
        self.n / 2
    }

    /// True for `OF(..., n/2; n)` in family D, where the parameter space has
    /// two components and the index carries a component flag.
    pub fn is_spinor(&self) -> bool {
        self.family == Family::D && self.n == 2 * self.last_dim()
    }

    pub fn is_single_step(&self) -> bool {
        self.dims.len() == 1
    }

    /// d_t with d_0 = 0 convention; `t` is 1-based.
    pub fn dim_at(&self, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.dims[t - 1]
        }
    }

    /// Shape of the image Grassmannian tower `(d_1..d_t; n)`.
    pub fn truncate(&self, t: usize) -> Result<FlagShape, IndexError> {
        if t == 0 || t > self.steps() {
            return Err(IndexError::BadStep { t, k: self.steps() });
        }
        FlagShape::new(self.family, self.n, self.dims[..t].to_vec())
    }

    /// Block number (1-based upper index) of a one-line window position
    /// `1..=n` (type A) or `1..=m` (types B/D); positions after the last step
    /// get block `k+1`.
    pub fn block_of_position(&self, pos: usize) -> usize {
        for (i, &d) in self.dims.iter().enumerate() {
            if pos <= d {
                return i + 1;
            }
        }
        self.dims.len() + 1
    }

    pub fn grammar_head(&self) -> String {
        let dims = self
            .dims
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.family {
            Family::A => format!("A(n={}; d={})", self.n, dims),
            Family::B | Family::D => {
                if self.is_single_step() {
                    format!("OG(k={},n={})", self.dims[0], self.n)
                } else {
                    format!("OF(n={}; d={})", self.n, dims)
                }
            }
        }
    }
}

impl fmt::Display for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.grammar_head())
    }
}

/// Component of the parameter space when it is reducible (spinor shapes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Component {
    #[default]
    Plus,
    Minus,
}

/// One sub-index: a value together with its step (upper index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub value: usize,
    pub upper: usize,
}

impl Entry {
    pub fn new(value: usize, upper: usize) -> Self {
        Entry { value, upper }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchubertIndex {
    shape: FlagShape,
    a: Vec<Entry>,
    b: Vec<Entry>,
    component: Component,
}

impl SchubertIndex {
    pub fn new(
        shape: FlagShape,
        a: Vec<Entry>,
        b: Vec<Entry>,
        component: Component,
    ) -> Result<Self, IndexError> {
        let x = SchubertIndex { shape, a, b, component };
        x.validate()?;
        Ok(x)
    }

    pub fn shape(&self) -> &FlagShape {
        &self.shape
    }

    pub fn a_entries(&self) -> &[Entry] {
        &self.a
    }

    pub fn b_entries(&self) -> &[Entry] {
        &self.b
    }

    pub fn component(&self) -> Component {
        self.component
    }

    /// Number of `a`-entries, the paper-facing symbol `s`.
    pub fn s(&self) -> usize {
        self.a.len()
    }

    pub fn a_values(&self) -> Vec<usize> {
        self.a.iter().map(|e| e.value).collect()
    }

    pub fn b_values(&self) -> Vec<usize> {
        self.b.iter().map(|e| e.value).collect()
    }

    fn validate(&self) -> Result<(), IndexError> {
        let shape = &self.shape;
        let n = shape.n();
        match shape.family() {
            Family::A => {
                if !self.b.is_empty() {
                    return Err(invariant(InvariantKind::Range, "family A index has b-entries"));
                }
                if self.a.len() != shape.last_dim() {
                    return Err(invariant(
                        InvariantKind::UpperCount,
                        format!("family A needs exactly d_k={} a-entries", shape.last_dim()),
                    ));
                }
                for e in &self.a {
                    if e.value < 1 || e.value > n {
                        return Err(invariant(InvariantKind::Range, format!("a-value {} out of 1..={n}", e.value)));
                    }
                }
            }
            Family::B | Family::D => {
                let m = shape.half();
                if self.a.len() + self.b.len() != shape.last_dim() {
                    return Err(invariant(
                        InvariantKind::UpperCount,
                        format!(
                            "need |a|+|b| = d_k = {}, got {}",
                            shape.last_dim(),
                            self.a.len() + self.b.len()
                        ),
                    ));
                }
                for e in &self.a {
                    if e.value < 1 || e.value > m {
                        return Err(invariant(InvariantKind::Range, format!("a-value {} out of 1..={m}", e.value)));
                    }
                }
                for e in &self.b {
                    if e.value + 1 > m {
                        return Err(invariant(
                            InvariantKind::Range,
                            format!("b-value {} out of 0..={}", e.value, m - 1),
                        ));
                    }
                }
                if shape.is_spinor() {
                    let plus_parity = self.a.len() % 2 == shape.last_dim() % 2;
                    let ok = match self.component {
                        Component::Plus => plus_parity,
                        Component::Minus => !plus_parity,
                    };
                    if !ok {
                        return Err(invariant(
                            InvariantKind::ParityD,
                            format!(
                                "s={} has the wrong parity for component {:?} on {}",
                                self.a.len(),
                                self.component,
                                shape
                            ),
                        ));
                    }
                }
                for ea in &self.a {
                    for eb in &self.b {
                        if ea.value == eb.value + 1 {
                            return Err(invariant(
                                InvariantKind::AdjacencyAB,
                                format!("a-value {} equals b-value {} + 1", ea.value, eb.value),
                            ));
                        }
                    }
                }
            }
        }
        for list in [&self.a, &self.b] {
            if list.windows(2).any(|w| w[0].value >= w[1].value) {
                return Err(invariant(InvariantKind::NotIncreasing, "values must be strictly increasing"));
            }
        }
        // per-step counts
        let k = shape.steps();
        for e in self.a.iter().chain(self.b.iter()) {
            if e.upper < 1 || e.upper > k {
                return Err(invariant(InvariantKind::UpperCount, format!("upper index {} out of 1..={k}", e.upper)));
            }
        }
        for t in 1..=k {
            let want = shape.dim_at(t) - shape.dim_at(t - 1);
            let got = self
                .a
                .iter()
                .chain(self.b.iter())
                .filter(|e| e.upper == t)
                .count();
            if got != want {
                return Err(invariant(
                    InvariantKind::UpperCount,
                    format!("step {t} needs {want} entries, got {got}"),
                ));
            }
        }
        Ok(())
    }

    /// Dimension of the named Schubert variety, defined as the Coxeter length
    /// of the minimal window representative.
    pub fn dimension(&self) -> usize {
        window::length(&window::index_to_window(self))
    }

    /// Duality `F(d_1..d_k;n) = F(n-d_k..n-d_1;n)`, computed through the
    /// window involution `v_i = n+1-w_{n+1-i}`.
    pub fn dual(&self) -> Result<SchubertIndex, IndexError> {
        if self.shape.family() != Family::A {
            return Err(IndexError::WrongFamily {
                expected: Family::A,
                found: self.shape.family(),
            });
        }
        let w = window::index_to_window(self);
        let n = self.shape.n();
        let dual_dims: Vec<usize> = self.shape.dims().iter().rev().map(|d| n - d).collect();
        let dual_shape = FlagShape::new(Family::A, n, dual_dims)?;
        let entries: Vec<usize> = (1..=n).map(|i| n + 1 - w.entries()[n - i]).collect();
        let v = window::WeylWindow::new(Family::A, n, entries).expect("involution preserves windows");
        let v = window::minimize(&v, &dual_shape);
        window::window_to_index(&v, &dual_shape)
    }

    /// Component swap on `OG(k,2k)`: trades the extreme sub-index between the
    /// `a` and `b` sequences and flips the component flag.
    pub fn spinor_involution(&self) -> Result<SchubertIndex, IndexError> {
        let shape = &self.shape;
        if shape.family() != Family::D {
            return Err(IndexError::WrongFamily {
                expected: Family::D,
                found: shape.family(),
            });
        }
        if !shape.is_single_step() || !shape.is_spinor() {
            return Err(IndexError::NotApplicable(
                "spinor involution needs a one-step shape with n = 2k".into(),
            ));
        }
        let k = shape.last_dim();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        if b.last().map(|e| e.value) == Some(k - 1) {
            b.pop();
            a.push(Entry::new(k, 1));
        } else if a.last().map(|e| e.value) == Some(k) {
            a.pop();
            b.push(Entry::new(k - 1, 1));
        } else {
            return Err(IndexError::NotApplicable(format!(
                "needs a_s = {k} or b_last = {}",
                k - 1
            )));
        }
        let component = match self.component {
            Component::Plus => Component::Minus,
            Component::Minus => Component::Plus,
        };
        SchubertIndex::new(shape.clone(), a, b, component)
    }

    /// Canonical textual form; inverse of [`SchubertIndex::parse`].
    pub fn canonical(&self) -> String {
        let with_uppers = !self.shape.is_single_step();
        let fmt_list = |list: &[Entry]| {
            list.iter()
                .map(|e| {
                    if with_uppers {
                        format!("{}^{}", e.value, e.upper)
                    } else {
                        format!("{}", e.value)
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = self.shape.grammar_head();
        if !self.a.is_empty() {
            out.push_str(&format!(" a={}", fmt_list(&self.a)));
        }
        if !self.b.is_empty() {
            out.push_str(&format!(" b={}", fmt_list(&self.b)));
        }
        if self.shape.is_spinor() {
            out.push_str(match self.component {
                Component::Plus => " comp=+",
                Component::Minus => " comp=-",
            });
        }
        out
    }

    /// Parses the canonical index grammar. Whitespace is ignored everywhere.
    pub fn parse(text: &str) -> Result<SchubertIndex, IndexError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cur = Cursor::new(&compact);
        let shape = parse_shape_head(&mut cur)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut component = Component::Plus;
        while !cur.done() {
            if cur.eat("a=") {
                a = parse_entry_list(&mut cur, &shape)?;
            } else if cur.eat("b=") {
                b = parse_entry_list(&mut cur, &shape)?;
            } else if cur.eat("comp=") {
                component = match cur.next_char() {
                    Some('+') => Component::Plus,
                    Some('-') => Component::Minus,
                    other => {
                        return Err(IndexError::Syntax(format!(
                            "expected + or - after comp=, got {other:?}"
                        )))
                    }
                };
            } else {
                return Err(IndexError::Syntax(format!(
                    "unexpected input at \"{}\"",
                    cur.rest()
                )));
            }
        }
        SchubertIndex::new(shape, a, b, component)
    }
}

impl fmt::Display for SchubertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// Parses only the shape head of the grammar, e.g. `A(n=4; d=2,3)`.
pub fn parse_shape(text: &str) -> Result<FlagShape, IndexError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cur = Cursor::new(&compact);
    let shape = parse_shape_head(&mut cur)?;
    if !cur.done() {
        return Err(IndexError::Syntax(format!("trailing input \"{}\"", cur.rest())));
    }
    Ok(shape)
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s, pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), IndexError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(IndexError::Syntax(format!(
                "expected \"{token}\" at \"{}\"",
                self.rest()
            )))
        }
    }

    fn next_char(&mut self) -> Option<char> {
        let c = self.rest().chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn number(&mut self) -> Result<usize, IndexError> {
        let rest = self.rest();
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if len == 0 {
            return Err(IndexError::Syntax(format!("expected a number at \"{rest}\"")));
        }
        let digits = rest[..len].to_string();
        self.pos += len;
        digits
            .parse()
            .map_err(|_| IndexError::Syntax(format!("number out of range: {digits}")))
    }

    fn number_list(&mut self) -> Result<Vec<usize>, IndexError> {
        let mut out = vec![self.number()?];
        while self.eat(",") {
            // a following clause like "b=..." starts with a letter
            if !self.rest().chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(IndexError::Syntax(format!(
                    "expected a number after comma at \"{}\"",
                    self.rest()
                )));
            }
            out.push(self.number()?);
        }
        Ok(out)
    }
}

fn parse_shape_head(cur: &mut Cursor) -> Result<FlagShape, IndexError> {
    if cur.eat("A(") {
        cur.expect("n=")?;
        let n = cur.number()?;
        cur.expect(";d=")?;
        let dims = cur.number_list()?;
        cur.expect(")")?;
        FlagShape::new(Family::A, n, dims)
    } else if cur.eat("OG(") {
        cur.expect("k=")?;
        let k = cur.number()?;
        cur.expect(",n=")?;
        let n = cur.number()?;
        cur.expect(")")?;
        let family = if n % 2 == 1 { Family::B } else { Family::D };
        FlagShape::new(family, n, vec![k])
    } else if cur.eat("OF(") {
        cur.expect("n=")?;
        let n = cur.number()?;
        cur.expect(";d=")?;
        let dims = cur.number_list()?;
        cur.expect(")")?;
        let family = if n % 2 == 1 { Family::B } else { Family::D };
        FlagShape::new(family, n, dims)
    } else {
        Err(IndexError::Syntax(format!(
            "expected A(, OG( or OF( at \"{}\"",
            cur.rest()
        )))
    }
}

fn parse_entry_list(cur: &mut Cursor, _shape: &FlagShape) -> Result<Vec<Entry>, IndexError> {
    let mut out = Vec::new();
    loop {
        let value = cur.number()?;
        let upper = if cur.eat("^") { cur.number()? } else { 1 };
        out.push(Entry::new(value, upper));
        if !cur.eat(",") {
            break;
        }
        if !cur.rest().chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return Err(IndexError::Syntax(format!(
                "expected a number after comma at \"{}\"",
                cur.rest()
            )));
        }
    }
    Ok(out)
}

/// Enumerates every valid index of the shape, canonically ordered. For spinor
/// shapes only the `Plus` component is produced, so the count is `|W^P|` of
/// the underlying homogeneous space.
pub fn enumerate(shape: &FlagShape, budget: usize) -> Result<Vec<SchubertIndex>, IndexError> {
    let mut out = Vec::new();
    let dk = shape.last_dim();
    let k = shape.steps();
    let step_counts: Vec<usize> = (1..=k).map(|t| shape.dim_at(t) - shape.dim_at(t - 1)).collect();
    match shape.family() {
        Family::A => {
            let values = combinations(1, shape.n(), dk);
            for vals in values {
                for uppers in multiset_arrangements(&step_counts, dk) {
                    let a = vals
                        .iter()
                        .zip(uppers.iter())
                        .map(|(&v, &u)| Entry::new(v, u))
                        .collect();
                    let x = SchubertIndex::new(shape.clone(), a, Vec::new(), Component::Plus)
                        .expect("enumerated family-A index must validate");
                    out.push(x);
                    if out.len() > budget {
                        return Err(IndexError::BudgetExceeded(budget));
                    }
                }
            }
        }
        Family::B | Family::D => {
            let m = shape.half();
            for s in 0..=dk {
                for avals in combinations(1, m, s) {
                    'bv: for bvals in combinations(0, m.saturating_sub(1), dk - s) {
                        for &av in &avals {
                            if bvals.iter().any(|&bv| av == bv + 1) {
                                continue 'bv;
                            }
                        }
                        if shape.is_spinor() && s % 2 != dk % 2 {
                            continue;
                        }
                        for uppers in multiset_arrangements(&step_counts, dk) {
                            let a: Vec<Entry> = avals
                                .iter()
                                .zip(uppers[..s].iter())
                                .map(|(&v, &u)| Entry::new(v, u))
                                .collect();
                            let b: Vec<Entry> = bvals
                                .iter()
                                .zip(uppers[s..].iter())
                                .map(|(&v, &u)| Entry::new(v, u))
                                .collect();
                            let x = SchubertIndex::new(shape.clone(), a, b, Component::Plus)
                                .expect("enumerated orthogonal index must validate");
                            out.push(x);
                            if out.len() > budget {
                                return Err(IndexError::BudgetExceeded(budget));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All strictly increasing `len`-tuples with values in `lo..=hi`.
pub(crate) fn combinations(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        out.push(Vec::new());
        return out;
    }
    if hi < lo || hi + 1 - lo < len {
        return out;
    }
    let mut cur = Vec::with_capacity(len);
    fn rec(lo: usize, hi: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map(|&v| v + 1).unwrap_or(lo);
        for v in start..=hi {
            // enough room for the remaining entries
            if hi + 1 - v < len - cur.len() {
                break;
            }
            cur.push(v);
            rec(lo, hi, len, cur, out);
            cur.pop();
        }
    }
    rec(lo, hi, len, &mut cur, &mut out);
    out
}

/// All arrangements of the multiset `{1^c1, 2^c2, ...}` over `len` slots.
fn multiset_arrangements(counts: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut remaining = counts.to_vec();
    let mut cur = Vec::with_capacity(len);
    fn rec(remaining: &mut [usize], len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for t in 0..remaining.len() {
            if remaining[t] > 0 {
                remaining[t] -= 1;
                cur.push(t + 1);
                rec(remaining, len, cur, out);
                cur.pop();
                remaining[t] += 1;
            }
        }
    }
    rec(&mut remaining, len, &mut cur, &mut out);
    out
}

/// Datum for a restriction-variety sequence: isotropic flag dimensions and
/// the subquadric (dimension, corank) pairs ordered with dimension
/// decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSequence {
    pub a_values: Vec<usize>,
    pub quadric_pairs: Vec<(usize, usize)>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub conditions: Vec<ConditionReport>,
}

impl RestrictionReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

/// Evaluates the combinatorially checkable admissibility conditions of a
/// restriction sequence and reports each one separately.
pub fn check_restriction_sequence(seq: &RestrictionSequence) -> RestrictionReport {
    let mut conditions = Vec::new();
    let pairs = &seq.quadric_pairs;
    let s = seq.a_values.len();
    let q = pairs.len();

    let d_decreasing = pairs.windows(2).all(|w| w[0].0 > w[1].0);
    conditions.push(ConditionReport {
        name: "d-decreasing".into(),
        pass: d_decreasing,
        detail: "quadric dimensions strictly decrease along the chain".into(),
    });

    // condition (3): either all coranks equal the first one, or the gap rule
    // r_t - r_i >= t - i - 1 holds for every pair; repeated coranks above r_1
    // force unit d-steps afterwards.
    let all_equal = pairs.iter().all(|&(_, r)| Some(r) == pairs.first().map(|p| p.1));
    let gap_rule = (0..q).all(|i| {
        (i + 1..q).all(|t| pairs[t].1 as i64 - pairs[i].1 as i64 >= t as i64 - i as i64 - 1)
    });
    let mut moreover = true;
    if let Some(&(_, r1)) = pairs.first() {
        for t in 1..q {
            if pairs[t].1 == pairs[t - 1].1 && pairs[t].1 > r1 {
                moreover &= pairs[t - 1].0 - pairs[t].0 == 1;
                for i in t..q.saturating_sub(1) {
                    moreover &= pairs[i].0 - pairs[i + 1].0 == pairs[i + 1].1 - pairs[i].1;
                }
            }
        }
    }
    conditions.push(ConditionReport {
        name: "corank-gaps".into(),
        pass: (all_equal || gap_rule) && moreover,
        detail: "corank growth rule with its repeated-corank consequences".into(),
    });

    let a1 = if let Some(&(d_last, r_last)) = pairs.last() {
        r_last as i64 <= d_last as i64 - 3
    } else {
        true
    };
    conditions.push(ConditionReport {
        name: "A1".into(),
        pass: a1,
        detail: "smallest quadric keeps corank <= dimension - 3".into(),
    });

    let mut a2 = true;
    for &av in &seq.a_values {
        for &(_, r) in pairs {
            if av as i64 - r as i64 == 1 {
                a2 = false;
            }
        }
    }
    conditions.push(ConditionReport {
        name: "A2".into(),
        pass: a2,
        detail: "no flag dimension sits immediately above a corank".into(),
    });

    let mut a3 = true;
    for (jz, &(d, r)) in pairs.iter().enumerate() {
        let j = jz + 1;
        let xj = seq.a_values.iter().filter(|&&av| av <= r).count() as i64;
        let bound = seq.k as i64 - j as i64 + 1 - ((d as i64 - r as i64) / 2);
        if xj < bound {
            a3 = false;
        }
    }
    conditions.push(ConditionReport {
        name: "A3".into(),
        pass: a3,
        detail: "enough flag elements inside each singular locus".into(),
    });

    let sk = ConditionReport {
        name: "step-count".into(),
        pass: s + q == seq.k,
        detail: format!("|a| + #quadrics = {} should equal k = {}", s + q, seq.k),
    };
    conditions.push(sk);

    RestrictionReport { conditions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(text: &str) -> SchubertIndex {
        SchubertIndex::parse(text).unwrap()
    }

    #[test]
    fn parse_flag_example() {
        let x = idx("A(n=4; d=2,3) a=1^1,2^1,4^2");
        assert_eq!(x.shape().family(), Family::A);
        assert_eq!(x.a_values(), vec![1, 2, 4]);
        assert_eq!(x.canonical(), "A(n=4; d=2,3) a=1^1,2^1,4^2");
    }

    #[test]
    fn parse_rejects_ab_adjacency() {
        let err = SchubertIndex::parse("OG(k=2,n=9) a=3 b=2").unwrap_err();
        match err {
            IndexError::Invariant { kind, .. } => assert_eq!(kind, InvariantKind::AdjacencyAB),
            other => panic!("expected AdjacencyAB, got {other}"),
        }
    }

    #[test]
    fn parse_rejects_spinor_parity() {
        let err = SchubertIndex::parse("OG(k=3,n=6) a=1,2 b=0").unwrap_err();
        match err {
            IndexError::Invariant { kind, .. } => assert_eq!(kind, InvariantKind::ParityD),
            other => panic!("expected ParityD, got {other}"),
        }
    }

    #[test]
    fn parse_accepts_og_example() {
        let x = idx("OG(k=2,n=9) a=2 b=2");
        assert_eq!(x.shape().family(), Family::B);
        assert_eq!(x.a_values(), vec![2]);
        assert_eq!(x.b_values(), vec![2]);
        assert_eq!(x.canonical(), "OG(k=2,n=9) a=2 b=2");
    }

    #[test]
    fn whitespace_insensitive() {
        let x = idx("  A( n = 4 ;  d = 2 , 3 )  a = 1^1 , 2^1 , 4^2 ");
        assert_eq!(x.canonical(), "A(n=4; d=2,3) a=1^1,2^1,4^2");
    }

    #[test]
    fn shape_rejects_d_near_half() {
        assert!(FlagShape::new(Family::D, 8, vec![3]).is_err());
        assert!(FlagShape::new(Family::D, 8, vec![4]).is_ok());
    }

    #[test]
    fn enumerate_counts_type_a() {
        let shape = FlagShape::new(Family::A, 3, vec![1, 2]).unwrap();
        assert_eq!(enumerate(&shape, 1000).unwrap().len(), 6);
        let g24 = FlagShape::new(Family::A, 4, vec![2]).unwrap();
        assert_eq!(enumerate(&g24, 1000).unwrap().len(), 6);
    }

    #[test]
    fn enumerate_counts_orthogonal() {
        let og15 = FlagShape::new(Family::B, 5, vec![1]).unwrap();
        assert_eq!(enumerate(&og15, 1000).unwrap().len(), 4);
        let og24 = FlagShape::new(Family::D, 4, vec![2]).unwrap();
        assert_eq!(enumerate(&og24, 1000).unwrap().len(), 2);
    }

    #[test]
    fn enumerate_budget() {
        let shape = FlagShape::new(Family::A, 6, vec![1, 2, 3]).unwrap();
        assert!(matches!(enumerate(&shape, 5), Err(IndexError::BudgetExceeded(5))));
    }

    #[test]
    fn spinor_involution_examples() {
        // trade the top b-entry for k in the a-sequence
        let x = idx("OG(k=3,n=6) a=1 b=1,2");
        let y = x.spinor_involution().unwrap();
        assert_eq!(y.a_values(), vec![1, 3]);
        assert_eq!(y.b_values(), vec![1]);
        assert_eq!(y.component(), Component::Minus);
        assert_eq!(y.spinor_involution().unwrap(), x);

        let x = idx("OG(k=2,n=4) a=1,2");
        let y = x.spinor_involution().unwrap();
        assert_eq!(y.a_values(), vec![1]);
        assert_eq!(y.b_values(), vec![1]);
        assert_eq!(y.component(), Component::Minus);
    }

    #[test]
    fn spinor_involution_preserves_dimension() {
        for text in ["OG(k=3,n=6) a=1 b=1,2", "OG(k=2,n=4) a=1,2", "OG(k=3,n=6) a=1,2,3"] {
            let x = idx(text);
            if let Ok(y) = x.spinor_involution() {
                assert_eq!(x.dimension(), y.dimension(), "dimension changed for {text}");
            }
        }
    }

    #[test]
    fn restriction_sequence_schubert_instances_pass() {
        // sequences derived from valid OG indices pass every condition
        let shape = FlagShape::new(Family::B, 9, vec![2]).unwrap();
        for x in enumerate(&shape, 10_000).unwrap() {
            let n = shape.n();
            let seq = RestrictionSequence {
                a_values: x.a_values(),
                quadric_pairs: x.b_values().iter().map(|&b| (n - b, b)).collect(),
                k: shape.last_dim(),
            };
            let report = check_restriction_sequence(&seq);
            assert!(report.all_pass(), "failed for {x}: {report:?}");
        }
    }

    #[test]
    fn restriction_sequence_a2_violation() {
        let seq = RestrictionSequence {
            a_values: vec![1],
            quadric_pairs: vec![(7, 0)],
            k: 2,
        };
        let report = check_restriction_sequence(&seq);
        let a2 = report.conditions.iter().find(|c| c.name == "A2").unwrap();
        assert!(!a2.pass);
    }

    #[test]
    fn restriction_sequence_a1_violation() {
        let seq = RestrictionSequence {
            a_values: vec![],
            quadric_pairs: vec![(5, 3)],
            k: 1,
        };
        let report = check_restriction_sequence(&seq);
        let a1 = report.conditions.iter().find(|c| c.name == "A1").unwrap();
        assert!(!a1.pass);
    }

    #[test]
    fn restriction_sequence_all_pass_instance() {
        let seq = RestrictionSequence {
            a_values: vec![1],
            quadric_pairs: vec![(9, 1)],
            k: 2,
        };
        assert!(check_restriction_sequence(&seq).all_pass());
    }
}
