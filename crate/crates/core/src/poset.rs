//! Finite posets, Hasse quivers with full commutativity, intervals, and
//! Möbius inversion on the containment order of intervals.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};

/// A finite poset given by its labels and the full `≤` relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Poset> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation matrix has the wrong size".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidPoset(format!("{} is not related to itself", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidPoset(format!("{} and {} violate antisymmetry", labels[a], labels[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidPoset(format!(
                            "{} ≤ {} ≤ {} violates transitivity",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::InvalidPoset(format!("duplicate label {l}")));
            }
        }
        Ok(Poset { labels, leq })
    }

    /// The poset generated by `a ≤ b` for each listed pair.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Upper covers of `a`, in element order.
    pub fn covers(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// Common upper bounds of `s`.
    pub fn upper_bounds(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&u| s.iter().all(|&x| self.leq(x, u))).collect()
    }

    /// Least upper bound of a nonempty set, if it exists.
    pub fn join(&self, s: &[usize]) -> Option<usize> {
        assert!(!s.is_empty(), "join of the empty set");
        let ub = self.upper_bounds(s);
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect();
        Poset { labels: self.labels.clone(), leq }
    }

    /// The Hasse quiver: one arrow `a → b` per cover `a ⋖ b`.
    pub fn hasse_quiver(&self) -> BoundQuiver {
        let mut arrows = Vec::new();
        for a in 0..self.len() {
            for b in self.covers(a) {
                arrows.push(Arrow {
                    label: format!("{}->{}", self.labels[a], self.labels[b]),
                    source: a,
                    target: b,
                });
            }
        }
        BoundQuiver::new(self.labels.clone(), arrows).expect("Hasse quiver of a poset is valid")
    }
}

/// A Hasse arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// An acyclic quiver whose arrows are exactly the covers of its path order,
/// bound by full commutativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    reach: Vec<Vec<bool>>,
    topo: Vec<usize>,
    ladder: Option<usize>,
}

impl BoundQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<BoundQuiver> {
        let n = vertices.len();
        let mut names = HashSet::new();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut labels = HashSet::new();
        let mut pairs = HashSet::new();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidQuiver(format!("arrow {} has an endpoint out of range", a.label)));
            }
            if a.source == a.target {
                return Err(Error::InvalidQuiver(format!("arrow {} is a loop", a.label)));
            }
            if !labels.insert(a.label.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label {}", a.label)));
            }
            if !pairs.insert((a.source, a.target)) {
                return Err(Error::InvalidQuiver(format!(
                    "multiple arrows {} -> {}",
                    vertices[a.source], vertices[a.target]
                )));
            }
        }
        // Kahn's algorithm, smallest index first for determinism.
        let mut indeg = vec![0usize; n];
        for a in &arrows {
            indeg[a.target] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for a in arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidQuiver("quiver has an oriented cycle".into()));
        }
        let mut reach = vec![vec![false; n]; n];
        for &v in topo.iter().rev() {
            reach[v][v] = true;
            for a in arrows.iter().filter(|a| a.source == v) {
                for w in 0..n {
                    if reach[a.target][w] {
                        reach[v][w] = true;
                    }
                }
            }
        }
        for a in &arrows {
            let (u, v) = (a.source, a.target);
            if (0..n).any(|w| w != u && w != v && reach[u][w] && reach[w][v]) {
                return Err(Error::InvalidQuiver(format!("arrow {} is not a Hasse cover", a.label)));
            }
        }
        Ok(BoundQuiver { vertices, arrows, reach, topo, ladder: None })
    }

    /// The commutative ladder CLₙ. Vertices `1..n` (bottom row) come first,
    /// then `1'..n'` (top row). Arrows are `a{i}: i → i+1`, `a{i}': i' → (i+1)'`
    /// and `b{i}: i → i'`.
    pub fn commutative_ladder(n: usize) -> Result<BoundQuiver> {
        if n < 2 {
            return Err(Error::InvalidQuiver(format!("commutative ladder needs n ≥ 2, got {n}")));
        }
        let mut vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        vertices.extend((1..=n).map(|i| format!("{i}'")));
        let mut arrows = Vec::new();
        for i in 0..n - 1 {
            arrows.push(Arrow { label: format!("a{}", i + 1), source: i, target: i + 1 });
        }
        for i in 0..n - 1 {
            arrows.push(Arrow { label: format!("a{}'", i + 1), source: n + i, target: n + i + 1 });
        }
        for i in 0..n {
            arrows.push(Arrow { label: format!("b{}", i + 1), source: i, target: n + i });
        }
        let mut q = BoundQuiver::new(vertices, arrows)?;
        q.ladder = Some(n);
        Ok(q)
    }

    /// A single vertex with no arrows.
    pub fn point() -> BoundQuiver {
        BoundQuiver::new(vec!["1".into()], vec![]).expect("one vertex is a valid quiver")
    }

    /// Length of the ladder, when this quiver was built as CLₙ.
    pub fn ladder_size(&self) -> Option<usize> {
        self.ladder
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Vertices in a topological order (sources first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Whether there is a path from `u` to `v` (including the trivial one).
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u][v]
    }

    pub fn poset(&self) -> Poset {
        Poset { labels: self.vertices.clone(), leq: self.reach.clone() }
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> BoundQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
            .collect();
        BoundQuiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver is valid")
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.arrows.iter().any(|a| (a.source == u && a.target == v) || (a.source == v && a.target == u))
    }

    fn is_connected(&self, set: &[usize]) -> bool {
        let Some(&start) = set.first() else { return false };
        let mut seen = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in set {
                if !seen.contains(&v) && self.adjacent(u, v) {
                    seen.push(v);
                    queue.push_back(v);
                }
            }
        }
        seen.len() == set.len()
    }

    fn is_convex(&self, set: &[usize]) -> bool {
        let inside: HashSet<usize> = set.iter().copied().collect();
        (0..self.num_vertices()).all(|v| {
            inside.contains(&v) || !set.iter().any(|&x| self.reach[x][v]) || !set.iter().any(|&y| self.reach[v][y])
        })
    }

    /// Smallest convex set containing `set`.
    pub fn convex_hull(&self, set: &[usize]) -> Vec<usize> {
        (0..self.num_vertices())
            .filter(|&v| set.iter().any(|&x| self.reach[x][v]) && set.iter().any(|&y| self.reach[v][y]))
            .collect()
    }

    /// Whether the vertex set is nonempty, connected and convex.
    pub fn is_interval(&self, set: &[usize]) -> bool {
        !set.is_empty() && set.iter().all(|&v| v < self.num_vertices()) && self.is_connected(set) && self.is_convex(set)
    }

    /// Validates and wraps a vertex set as an [`Interval`].
    pub fn interval(&self, set: &[usize]) -> Result<Interval> {
        let mut v = set.to_vec();
        v.sort_unstable();
        v.dedup();
        if self.is_interval(&v) {
            Ok(Interval { vertices: v })
        } else {
            Err(Error::NotAnInterval(self.render_set(&v)))
        }
    }

    /// The whole vertex set, when connected.
    pub fn full_interval(&self) -> Result<Interval> {
        self.interval(&(0..self.num_vertices()).collect::<Vec<_>>())
    }

    /// Interval of CLₙ from 1-based top and bottom ranges (either may be absent).
    pub fn ladder_interval(&self, top: Option<(usize, usize)>, bottom: Option<(usize, usize)>) -> Result<Interval> {
        let n = self.ladder.ok_or(Error::NotLadder)?;
        let mut set = Vec::new();
        for (range, offset) in [(bottom, 0), (top, n)] {
            if let Some((lo, hi)) = range {
                if lo == 0 || lo > hi || hi > n {
                    return Err(Error::NotAnInterval(format!("range [{lo},{hi}] on a ladder of length {n}")));
                }
                set.extend((lo - 1..hi).map(|i| i + offset));
            }
        }
        self.interval(&set)
    }

    /// Parses a ladder dimension vector written as `top row/bottom row`, with
    /// optional surrounding parentheses; entries may be space separated or not
    /// (`"1 1 1/0 0 1"` and `"(111/001)"` agree).
    pub fn parse_ladder_dims(&self, text: &str) -> Result<Vec<usize>> {
        let n = self.ladder.ok_or(Error::NotLadder)?;
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let (top, bottom) = body
            .split_once('/')
            .ok_or_else(|| Error::NotAnInterval(format!("expected 'top/bottom' in {text:?}")))?;
        let row = |r: &str| -> Result<Vec<usize>> {
            let tokens: Vec<String> = if r.contains(char::is_whitespace) {
                r.split_whitespace().map(str::to_string).collect()
            } else {
                r.trim().chars().map(|c| c.to_string()).collect()
            };
            let vals = tokens
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| Error::NotAnInterval(format!("bad entry {t:?} in {text:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != n {
                return Err(Error::NotAnInterval(format!("row of length {} on a ladder of length {n}", vals.len())));
            }
            Ok(vals)
        };
        let mut dims = row(bottom)?;
        dims.extend(row(top)?);
        Ok(dims)
    }

    /// Parses a 0/1 ladder vector (see [`BoundQuiver::parse_ladder_dims`]) as an interval.
    pub fn parse_ladder_interval(&self, text: &str) -> Result<Interval> {
        let dims = self.parse_ladder_dims(text)?;
        if dims.iter().any(|&d| d > 1) {
            return Err(Error::NotAnInterval(format!("{text:?} is not a 0/1 vector")));
        }
        let set: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] == 1).collect();
        self.interval(&set)
    }

    /// The top and bottom ranges (1-based) of a set of ladder vertices.
    pub fn ladder_ranges(&self, set: &[usize]) -> Option<LadderShape> {
        let n = self.ladder?;
        let range = |vs: Vec<usize>| -> Option<(usize, usize)> {
            let lo = *vs.first()?;
            let hi = *vs.last()?;
            Some((lo + 1, hi + 1))
        };
        let bottom: Vec<usize> = set.iter().copied().filter(|&v| v < n).collect();
        let top: Vec<usize> = set.iter().copied().filter(|&v| v >= n).map(|v| v - n).collect();
        Some(LadderShape { top: range(top), bottom: range(bottom) })
    }

    /// Human-readable rendering of a vertex set: a 0/1 two-row vector for
    /// ladders, a brace list otherwise.
    pub fn render_set(&self, set: &[usize]) -> String {
        match self.ladder {
            Some(n) => {
                let mut dims = vec![0usize; 2 * n];
                for &v in set {
                    if v < dims.len() {
                        dims[v] = 1;
                    }
                }
                render_ladder_dims(n, &dims)
            }
            None => {
                let names: Vec<&str> = set.iter().map(|&v| self.vertices[v].as_str()).collect();
                format!("{{{}}}", names.join(","))
            }
        }
    }

    pub fn render_interval(&self, i: &Interval) -> String {
        self.render_set(&i.vertices)
    }
}

/// Renders a ladder dimension vector as `(top row/bottom row)`.
pub fn render_ladder_dims(n: usize, dims: &[usize]) -> String {
    let row = |r: &[usize]| r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    format!("({}/{})", row(&dims[n..2 * n]), row(&dims[..n]))
}

/// Top and bottom ranges of a ladder interval, 1-based and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderShape {
    pub top: Option<(usize, usize)>,
    pub bottom: Option<(usize, usize)>,
}

impl fmt::Display for LadderShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((k, l)) = self.top {
            parts.push(format!("top=[{k},{l}]"));
        }
        if let Some((i, j)) = self.bottom {
            parts.push(format!("bot=[{i},{j}]"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A connected convex vertex set, stored sorted. Its identity is its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    vertices: Vec<usize>,
}

impl Interval {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }

    /// `self ⊆ outer` and closed under successors inside `outer`.
    pub fn is_upset_in(&self, outer: &Interval, q: &BoundQuiver) -> bool {
        self.is_subset_of(outer)
            && self
                .vertices
                .iter()
                .all(|&x| outer.vertices.iter().all(|&y| !q.reaches(x, y) || self.contains(y)))
    }

    /// `self ⊆ outer` and closed under predecessors inside `outer`.
    pub fn is_downset_in(&self, outer: &Interval, q: &BoundQuiver) -> bool {
        self.is_subset_of(outer)
            && self
                .vertices
                .iter()
                .all(|&x| outer.vertices.iter().all(|&y| !q.reaches(y, x) || self.contains(y)))
    }
}

/// All intervals by growing from single vertices: add one neighbouring vertex,
/// then close convexly. Sorted by vertex set.
pub fn enumerate_intervals(q: &BoundQuiver) -> Vec<Interval> {
    let n = q.num_vertices();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    for v in 0..n {
        if seen.insert(vec![v]) {
            queue.push_back(vec![v]);
        }
    }
    while let Some(set) = queue.pop_front() {
        let mut neighbours = BTreeSet::new();
        for a in q.arrows() {
            if set.contains(&a.source) && !set.contains(&a.target) {
                neighbours.insert(a.target);
            }
            if set.contains(&a.target) && !set.contains(&a.source) {
                neighbours.insert(a.source);
            }
        }
        for w in neighbours {
            let mut grown = set.clone();
            grown.push(w);
            let closed = q.convex_hull(&grown);
            if seen.insert(closed.clone()) {
                queue.push_back(closed);
            }
        }
    }
    let mut out: Vec<Interval> = seen.into_iter().map(|vertices| Interval { vertices }).collect();
    out.sort();
    out
}

/// All intervals by filtering every vertex subset. Exponential; a reference
/// implementation for small quivers.
pub fn enumerate_intervals_exhaustive(q: &BoundQuiver) -> Vec<Interval> {
    let n = q.num_vertices();
    assert!(n < 24, "exhaustive enumeration is limited to small quivers");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if q.is_interval(&set) {
            out.push(Interval { vertices: set });
        }
    }
    out.sort();
    out
}

/// The intervals of CLₙ in closed form: pure top rows `[k',l']`, pure bottom
/// rows `[i,j]`, and staircases `[k',l'] ⊔ [i,j]` with `k ≤ i ≤ l ≤ j`.
pub fn enumerate_intervals_ladder(n: usize) -> Result<Vec<Interval>> {
    if n < 2 {
        return Err(Error::InvalidQuiver(format!("commutative ladder needs n ≥ 2, got {n}")));
    }
    let mut out = Vec::new();
    let row = |lo: usize, hi: usize, offset: usize| (lo - 1..hi).map(move |v| v + offset);
    for lo in 1..=n {
        for hi in lo..=n {
            out.push(Interval { vertices: row(lo, hi, n).collect() });
            out.push(Interval { vertices: row(lo, hi, 0).collect() });
        }
    }
    for k in 1..=n {
        for i in k..=n {
            for l in i..=n {
                for j in l..=n {
                    let mut v: Vec<usize> = row(i, j, 0).chain(row(k, l, n)).collect();
                    v.sort_unstable();
                    out.push(Interval { vertices: v });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A family of intervals ordered by containment, with ζ and μ of the
/// incidence algebra of the opposite order.
///
/// `zeta[(a, b)] = 1` iff `intervals[a] ⊆ intervals[b]`.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    intervals: Vec<Interval>,
    zeta: Mat,
    mobius: Mat,
}

impl IntervalPoset {
    pub fn new(intervals: Vec<Interval>) -> IntervalPoset {
        let n = intervals.len();
        let f = Field::Rationals;
        let zeta = Mat::from_fn(f, n, n, |a, b| Scalar::from_integer((intervals[a].is_subset_of(&intervals[b]) as i64).into()));
        // μ(a,a) = 1; μ(a,b) = -Σ_{a ⊆ c ⊊ b} μ(a,c).
        let size = |i: usize| intervals[i].len();
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| size(i));
        let mut mobius = Mat::zeros(f, n, n);
        for a in 0..n {
            for &b in &by_size {
                if a == b {
                    mobius.set(a, b, f.one());
                } else if intervals[a].is_subset_of(&intervals[b]) {
                    let mut acc = f.zero();
                    for c in 0..n {
                        if c != b && intervals[a].is_subset_of(&intervals[c]) && intervals[c].is_subset_of(&intervals[b]) {
                            acc = f.add(&acc, mobius.get(a, c));
                        }
                    }
                    mobius.set(a, b, f.neg(&acc));
                }
            }
        }
        IntervalPoset { intervals, zeta, mobius }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn index_of(&self, i: &Interval) -> Option<usize> {
        self.intervals.binary_search(i).ok().or_else(|| self.intervals.iter().position(|j| j == i))
    }

    pub fn zeta(&self) -> &Mat {
        &self.zeta
    }

    pub fn mobius(&self) -> &Mat {
        &self.mobius
    }

    /// Intervals of the family strictly containing `a` with nothing in between.
    pub fn covers(&self, a: usize) -> Vec<usize> {
        let n = self.intervals.len();
        let lt = |x: usize, y: usize| x != y && self.intervals[x].is_subset_of(&self.intervals[y]);
        (0..n).filter(|&b| lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b))).collect()
    }

    /// The smallest member containing every listed member, if unique.
    pub fn join(&self, s: &[usize]) -> Option<usize> {
        let n = self.intervals.len();
        let ub: Vec<usize> = (0..n)
            .filter(|&u| s.iter().all(|&x| self.intervals[x].is_subset_of(&self.intervals[u])))
            .collect();
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.intervals[u].is_subset_of(&self.intervals[v])))
    }
}

/// The Möbius function of the containment order.
pub fn mobius_table(ip: &IntervalPoset) -> &Mat {
    ip.mobius()
}
