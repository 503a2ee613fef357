//! Cyclic permutations as order types of periodic orbits.
//!
//! A period-`m` orbit `x_1 < … < x_m` is described up to conjugacy by the
//! permutation `σ` with `f(x_i) = x_{σ(i)}`. Indices are 1-based throughout,
//! matching the textual form `"3 5 4 2 1"` (position `i` holds `σ(i)`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::map::PlMap;
use crate::periodic::IntervalCycle;
use crate::rational::{ratio, Interval, Rational};

pub const DEFAULT_LOOP_BUDGET: usize = 100_000;

/// A cyclic permutation of `{1..m}`, `m ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitPattern {
    sigma: Vec<usize>,
}

impl OrbitPattern {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let m = sigma.len();
        if m < 2 {
            return Err(Error::parse(
                "pattern",
                format!("needs at least 2 entries, found {m}"),
            ));
        }
        let mut seen = vec![false; m + 1];
        for &v in &sigma {
            if v == 0 || v > m || seen[v] {
                return Err(Error::parse(
                    "pattern",
                    format!("not a permutation of 1..{m}"),
                ));
            }
            seen[v] = true;
        }
        let mut len = 1;
        let mut i = sigma[0];
        while i != 1 {
            i = sigma[i - 1];
            len += 1;
        }
        if len != m {
            return Err(Error::parse("pattern", format!("not a single {m}-cycle")));
        }
        Ok(OrbitPattern { sigma })
    }

    pub fn m(&self) -> usize {
        self.sigma.len()
    }

    /// `σ(i)` for `1 ≤ i ≤ m`.
    pub fn image(&self, i: usize) -> usize {
        self.sigma[i - 1]
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Uniform node positions `x_i = (i−1)/(m−1)`.
    pub fn node(&self, i: usize) -> Rational {
        ratio(i as i64 - 1, self.m() as i64 - 1)
    }

    /// The gap interval `J_i = [x_i, x_{i+1}]`.
    pub fn gap(&self, i: usize) -> Interval {
        Interval::spanning(self.node(i), self.node(i + 1))
    }

    /// The indices `s, σ(s), σ²(s), …` of the orbit started at `s`.
    pub fn orbit_from(&self, s: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.m());
        let mut i = s;
        for _ in 0..self.m() {
            out.push(i);
            i = self.image(i);
        }
        out
    }
}

impl FromStr for OrbitPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sigma = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    Error::parse("pattern", format!("{t:?} is not a positive integer"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitPattern::new(sigma)
    }
}

impl fmt::Display for OrbitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.sigma.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The PL map on `[0,1]` through `(x_i, x_{σ(i)})` at uniform nodes.
pub fn connect_the_dots(p: &OrbitPattern) -> PlMap {
    PlMap::from_pairs((1..=p.m()).map(|i| (p.node(i), p.node(p.image(i)))))
        .expect("uniform nodes are strictly increasing")
}

/// Covering relations between the gaps `J_1 … J_{m−1}` of a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDigraph {
    nodes: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl CoverDigraph {
    pub fn of(p: &OrbitPattern) -> Self {
        let nodes = p.m() - 1;
        let mut edges = BTreeSet::new();
        for i in 1..=nodes {
            let (a, b) = (p.image(i), p.image(i + 1));
            let (lo, hi) = (a.min(b), a.max(b));
            for j in lo..hi {
                edges.insert((i, j));
            }
        }
        CoverDigraph { nodes, edges }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cover {\n");
        for i in 1..=self.nodes {
            out.push_str(&format!("  J{i};\n"));
        }
        for (i, j) in &self.edges {
            out.push_str(&format!("  J{i} -> J{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn cover_digraph(p: &OrbitPattern) -> CoverDigraph {
    CoverDigraph::of(p)
}

/// A closed walk `v_0 → … → v_{n−1} → v_0`, stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Vec<usize>);

impl Walk {
    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The gaps of `p` visited by the walk, as an interval cycle.
    pub fn to_cycle(&self, p: &OrbitPattern) -> IntervalCycle {
        IntervalCycle::new(self.0.iter().map(|&i| p.gap(i)).collect()).expect("walks are non-empty")
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "J{v}")?;
        }
        Ok(())
    }
}

fn is_least_rotation(seq: &[usize]) -> bool {
    (1..seq.len()).all(|r| {
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().le(rotated)
    })
}

/// All closed walks of length `n` up to rotation, in lexicographic order.
pub fn loops(g: &CoverDigraph, n: usize, budget: usize) -> Result<Vec<Walk>> {
    if n == 0 {
        return Err(Error::Domain("walk length must be positive".into()));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n);
    for start in 1..=g.node_count() {
        path.clear();
        path.push(start);
        extend(g, n, start, &mut path, &mut out, budget)?;
    }
    out.sort();
    Ok(out)
}

fn extend(
    g: &CoverDigraph,
    n: usize,
    start: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Walk>,
    budget: usize,
) -> Result<()> {
    let last = *path.last().expect("path starts non-empty");
    if path.len() == n {
        if g.has_edge(last, start) && is_least_rotation(path) {
            if out.len() == budget {
                return Err(Error::Resource {
                    what: "closed walk count",
                    budget,
                    reached: n as u64,
                });
            }
            out.push(Walk(path.clone()));
        }
        return Ok(());
    }
    // the least rotation starts at a minimal node
    let next: Vec<usize> = g.successors(last).filter(|&j| j >= start).collect();
    for j in next {
        path.push(j);
        extend(g, n, start, path, out, budget)?;
        path.pop();
    }
    Ok(())
}

/// Whether some orbit point `p_0` spirals outward alternately:
/// `p_{m−1} < … < p_2 < p_0 < p_1 < p_3 < … < p_{m−2}`, or the mirror image.
pub fn is_stefan(p: &OrbitPattern) -> bool {
    let m = p.m();
    if m < 3 || m.is_multiple_of(2) {
        return false;
    }
    (1..=m).any(|s| {
        let orbit = p.orbit_from(s);
        let left = (0..m).step_by(2).rev();
        let right = (1..m).step_by(2);
        let spiral: Vec<usize> = left.chain(right).map(|k| orbit[k]).collect();
        spiral.windows(2).all(|w| w[0] < w[1]) || spiral.windows(2).all(|w| w[0] > w[1])
    })
}

/// Every cyclic permutation of `{1..m}`, in lexicographic order of `σ`.
pub fn all_cyclic_patterns(m: usize) -> Vec<OrbitPattern> {
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let mut rest: Vec<usize> = (2..=m).collect();
    permute(&mut rest, 0, &mut |order| {
        let mut sigma = vec![0; m];
        let mut prev = 1;
        for &v in order {
            sigma[prev - 1] = v;
            prev = v;
        }
        sigma[prev - 1] = 1;
        out.push(OrbitPattern { sigma });
    });
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::check_covering;
    use crate::rational::int;

    fn f2() -> OrbitPattern {
        "3 5 4 2 1".parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(f2().to_string(), "3 5 4 2 1");
        assert!("1 2".parse::<OrbitPattern>().is_err());
        assert!("2 3 1 5 4".parse::<OrbitPattern>().is_err());
        assert!("2 2".parse::<OrbitPattern>().is_err());
        assert!("2 x".parse::<OrbitPattern>().is_err());
        assert!("2".parse::<OrbitPattern>().is_err());
        assert_eq!("2,1".parse::<OrbitPattern>().unwrap().m(), 2);
    }

    #[test]
    fn connect_the_dots_examples() {
        let flip = connect_the_dots(&"2 1".parse().unwrap());
        assert!(
            flip.same_function(&PlMap::from_pairs([(int(0), int(1)), (int(1), int(0))]).unwrap())
        );
        let three = connect_the_dots(&"2 3 1".parse().unwrap());
        let expected = PlMap::from_pairs([
            (int(0), ratio(1, 2)),
            (ratio(1, 2), int(1)),
            (int(1), int(0)),
        ])
        .unwrap();
        assert_eq!(three, expected);
        let f = connect_the_dots(&f2());
        assert_eq!(f.eval(&int(0)).unwrap(), ratio(1, 2));
        assert_eq!(f.eval(&ratio(1, 4)).unwrap(), int(1));
    }

    #[test]
    fn digraph_examples() {
        let g = cover_digraph(&f2());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(1, 3), (1, 4), (2, 4), (3, 2), (3, 3), (4, 1)]);
        let g = cover_digraph(&"2 1".parse().unwrap());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 1)]);
        let g = cover_digraph(&"2 3 1".parse().unwrap());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 1), (2, 2)]);
    }

    #[test]
    fn digraph_matches_covering_check() {
        for m in 2..=6 {
            for p in all_cyclic_patterns(m) {
                let f = connect_the_dots(&p);
                let g = cover_digraph(&p);
                for i in 1..m {
                    for j in 1..m {
                        let covers = check_covering(&f, &p.gap(i), &p.gap(j)).unwrap();
                        assert_eq!(covers, g.has_edge(i, j), "{p}: J{i} -> J{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn dot_export() {
        let dot = cover_digraph(&"2 1".parse().unwrap()).to_dot();
        assert_eq!(dot, "digraph cover {\n  J1;\n  J1 -> J1;\n}\n");
        let dot = cover_digraph(&f2()).to_dot();
        assert_eq!(dot.matches("->").count(), 6);
        assert_eq!(
            dot.lines()
                .filter(|l| l.ends_with(';') && !l.contains("->"))
                .count(),
            4
        );
    }

    #[test]
    fn loop_examples() {
        let g = cover_digraph(&f2());
        let one = loops(&g, 1, DEFAULT_LOOP_BUDGET).unwrap();
        assert_eq!(one, vec![Walk(vec![3])]);
        let five = loops(&g, 5, DEFAULT_LOOP_BUDGET).unwrap();
        assert!(five.contains(&Walk(vec![1, 3, 3, 2, 4])));
        let self_loop = cover_digraph(&"2 1".parse().unwrap());
        for n in 1..6 {
            assert_eq!(loops(&self_loop, n, DEFAULT_LOOP_BUDGET).unwrap().len(), 1);
        }
        assert!(matches!(loops(&g, 12, 3), Err(Error::Resource { .. })));
    }

    #[test]
    fn loops_count_matches_necklace_formula_on_complete_graph() {
        let g = CoverDigraph {
            nodes: 2,
            edges: [(1, 1), (1, 2), (2, 1), (2, 2)].into(),
        };
        // binary necklaces: 2, 3, 4, 6, 8, 14
        let counts: Vec<usize> = (1..=6).map(|n| loops(&g, n, 1000).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 4, 6, 8, 14]);
    }

    #[test]
    fn stefan_examples() {
        assert!(is_stefan(&f2()));
        assert!(is_stefan(&"2 3 1".parse().unwrap()));
        assert!(is_stefan(&"3 1 2".parse().unwrap()));
        assert!(!is_stefan(&"2 3 4 5 1".parse().unwrap()));
        assert!(!is_stefan(&"2 1".parse().unwrap()));
        assert!(!is_stefan(&"2 3 4 1".parse().unwrap()));
    }

    #[test]
    fn cyclic_pattern_counts() {
        let counts: Vec<usize> = (2..=7).map(|m| all_cyclic_patterns(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 24, 120, 720]);
    }
}
