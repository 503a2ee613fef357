//! Explicit map families, the four doubling operators and witness synthesis.
//!
//! Every construction returns a [`PlMap`] on `[0,1]` with exact breakpoints.
//! Collinear breakpoints are kept so that outputs are reproducible byte for
//! byte; call [`PlMap::normalize`] to drop them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::budget::PieceBudget;
use crate::error::{Error, Result};
use crate::map::{PlMap, Point};
use crate::order::{decompose, SharkClass};
use crate::pattern::{connect_the_dots, OrbitPattern};
use crate::periodic::periodic_points;
use crate::rational::{int, ratio, Interval, Rational};

/// The three named maps on `[0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedMap {
    /// `1 − |2x − 1|`.
    Tent,
    /// The zero map.
    G,
    /// `1/2 + 2x` on `[0, 1/4]`, `3/2 − 2x` on `[1/4, 1/2]`, `1 − x` on `[1/2, 1]`.
    H,
}

impl FromStr for NamedMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tent" => Ok(NamedMap::Tent),
            "g" => Ok(NamedMap::G),
            "h" => Ok(NamedMap::H),
            _ => Err(Error::parse(
                "map name",
                format!("{s:?} is not one of tent, g, h"),
            )),
        }
    }
}

pub fn make_named(kind: NamedMap) -> PlMap {
    let pairs = match kind {
        NamedMap::Tent => vec![(int(0), int(0)), (ratio(1, 2), int(1)), (int(1), int(0))],
        NamedMap::G => vec![(int(0), int(0)), (int(1), int(0))],
        NamedMap::H => vec![
            (int(0), ratio(1, 2)),
            (ratio(1, 4), int(1)),
            (ratio(1, 2), ratio(1, 2)),
            (int(1), int(0)),
        ],
    };
    PlMap::from_pairs(pairs).expect("named maps are well formed")
}

/// The Štefan pattern of period `2n + 1`:
/// `σ(1) = n+1`, `σ(i) = 2n+3−i` for `2 ≤ i ≤ n+1`, `σ(j) = 2n+2−j` beyond.
/// `n = 1` gives the 3-cycle `2 3 1`.
pub fn stefan_pattern(n: usize) -> Result<OrbitPattern> {
    if n == 0 {
        return Err(Error::Parameter("Štefan patterns need n ≥ 1".into()));
    }
    let m = 2 * n + 1;
    let sigma = (1..=m)
        .map(|i| match i {
            1 => n + 1,
            i if i <= n + 1 => 2 * n + 3 - i,
            j => 2 * n + 2 - j,
        })
        .collect();
    OrbitPattern::new(sigma)
}

/// Connect-the-dots map of [`stefan_pattern`]: a period-`2n+1` point and no
/// period-`2n−1` point.
pub fn make_fn(n: usize) -> Result<PlMap> {
    if n < 2 {
        return Err(Error::Parameter(format!("make_fn needs n ≥ 2, got {n}")));
    }
    Ok(connect_the_dots(&stefan_pattern(n)?))
}

/// The period-`n` tent orbit used by [`make_truncated_tent`]: no other
/// period-`n` orbit fits inside its open span. Ties go to the smallest
/// maximum, then the smallest minimum.
pub fn truncated_tent_orbit(n: u64, budget: PieceBudget) -> Result<Vec<Rational>> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "truncated tent needs n ≥ 2, got {n}"
        )));
    }
    let tent = make_named(NamedMap::Tent);
    let orbits = periodic_points(&tent, n, budget)?.orbits(&tent)?;
    let span = |o: &Vec<Rational>| (o[0].clone(), o[o.len() - 1].clone());
    orbits
        .iter()
        .filter(|p| {
            let (lo, hi) = span(p);
            !orbits
                .iter()
                .any(|q| q != *p && q.iter().all(|x| &lo < x && x < &hi))
        })
        .min_by(|p, q| {
            let (plo, phi) = span(p);
            let (qlo, qhi) = span(q);
            phi.cmp(&qhi).then(plo.cmp(&qlo))
        })
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("the tent map has no period-{n} orbit")))
}

/// `T` on `[0, max P]` and constantly `min P` on `[max P, 1]`, where `P` is
/// [`truncated_tent_orbit`].
pub fn make_truncated_tent(n: u64, budget: PieceBudget) -> Result<PlMap> {
    let orbit = truncated_tent_orbit(n, budget)?;
    let (lo, hi) = (orbit[0].clone(), orbit[orbit.len() - 1].clone());
    let tent = make_named(NamedMap::Tent);
    let mut points = tent.restrict_points(&Interval::spanning(int(0), hi.clone()))?;
    if points.last().map(|p| &p.y) != Some(&lo) {
        return Err(Error::Precondition(format!(
            "T({hi}) differs from {lo}; the truncation would be discontinuous"
        )));
    }
    points.push(Point::new(int(1), lo));
    PlMap::new(points)
}

/// Which doubling operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DoublingKind {
    G,
    H,
    D,
    E,
}

impl DoublingKind {
    pub const ALL: [DoublingKind; 4] = [
        DoublingKind::G,
        DoublingKind::H,
        DoublingKind::D,
        DoublingKind::E,
    ];

    /// Whether the copy of `f` is flipped left to right.
    fn reflects(self) -> bool {
        matches!(self, DoublingKind::D | DoublingKind::E)
    }

    /// Whether the tail on `[1−a, 1]` is `1 − x` rather than `x − (1−a)`.
    fn falling_tail(self) -> bool {
        matches!(self, DoublingKind::G | DoublingKind::D)
    }
}

impl fmt::Display for DoublingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            DoublingKind::G => "G",
            DoublingKind::H => "H",
            DoublingKind::D => "D",
            DoublingKind::E => "E",
        };
        f.write_str(c)
    }
}

impl FromStr for DoublingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" => Ok(DoublingKind::G),
            "H" | "h" => Ok(DoublingKind::H),
            "D" | "d" => Ok(DoublingKind::D),
            "E" | "e" => Ok(DoublingKind::E),
            _ => Err(Error::parse(
                "op",
                format!("{s:?} is not one of G, H, D, E"),
            )),
        }
    }
}

/// A doubling operator with its block width `a ∈ (0, 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingSpec {
    kind: DoublingKind,
    a: Rational,
}

pub(crate) fn check_block_width(name: &str, a: &Rational) -> Result<()> {
    if a <= &Rational::zero() || a >= &ratio(1, 2) {
        return Err(Error::Parameter(format!(
            "{name} = {a} must lie strictly between 0 and 1/2"
        )));
    }
    Ok(())
}

impl DoublingSpec {
    pub fn new(kind: DoublingKind, a: Rational) -> Result<Self> {
        check_block_width("a", &a)?;
        Ok(DoublingSpec { kind, a })
    }

    pub fn kind(&self) -> DoublingKind {
        self.kind
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
}

/// Places a scaled copy `a·f(x/a)` of `f` in `[0, a]`, composed with the
/// block swap of the chosen operator:
///
/// | kind | on `[0, a]`           | on `[1−a, 1]` |
/// |------|-----------------------|---------------|
/// | G    | `1 − f_s(x)`          | `1 − x`       |
/// | H    | `f_s(x) + 1 − a`      | `x − (1−a)`   |
/// | D    | `1 − a + f_s(a − x)`  | `1 − x`       |
/// | E    | `1 − f_s(a − x)`      | `x − (1−a)`   |
///
/// The middle block `[a, 1−a]` is the straight line joining the two.
pub fn double(f: &PlMap, spec: &DoublingSpec) -> Result<PlMap> {
    let unit = Interval::spanning(int(0), int(1));
    if f.domain() != unit || !f.image(&unit)?.is_subset_of(&unit) {
        return Err(Error::Domain("doubling needs a self-map of [0, 1]".into()));
    }
    let a = &spec.a;
    let one = Rational::one();
    let kind = spec.kind;
    let lift = |y: &Rational| -> Rational {
        let ys = a * y;
        match kind {
            DoublingKind::G | DoublingKind::E => &one - ys,
            DoublingKind::H | DoublingKind::D => ys + &one - a,
        }
    };
    let mut points: Vec<Point> = f
        .points()
        .iter()
        .map(|p| {
            let x = if kind.reflects() {
                a - a * &p.x
            } else {
                a * &p.x
            };
            Point::new(x, lift(&p.y))
        })
        .collect();
    if kind.reflects() {
        points.reverse();
    }
    let (at_start, at_end) = if kind.falling_tail() {
        (a.clone(), Rational::zero())
    } else {
        (Rational::zero(), a.clone())
    };
    points.push(Point::new(&one - a, at_start));
    points.push(Point::new(one, at_end));
    PlMap::new(points)
}

/// A bit sequence `α_1 α_2 …`: finite, or a prefix followed by a repeating cycle.
///
/// Text forms: `"01"` is the periodic sequence `0101…`, `"1(0)"` is `1000…`
/// and `"[011]"` is the finite sequence `0, 1, 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSeq {
    prefix: Vec<u8>,
    cycle: Vec<u8>,
}

impl AlphaSeq {
    pub fn finite(bits: Vec<u8>) -> Result<Self> {
        AlphaSeq::build(bits, Vec::new())
    }

    pub fn eventually_periodic(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::parse("alpha", "the repeating part is empty"));
        }
        AlphaSeq::build(prefix, cycle)
    }

    fn build(prefix: Vec<u8>, cycle: Vec<u8>) -> Result<Self> {
        if prefix.iter().chain(&cycle).any(|&b| b > 1) {
            return Err(Error::parse("alpha", "bits must be 0 or 1"));
        }
        Ok(AlphaSeq { prefix, cycle })
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Number of defined terms, `None` when infinite.
    pub fn finite_len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// `α_i` for `i ≥ 1`.
    pub fn bit(&self, i: usize) -> Option<u8> {
        assert!(i >= 1, "alpha is indexed from 1");
        let k = i - 1;
        if k < self.prefix.len() {
            return Some(self.prefix[k]);
        }
        if self.cycle.is_empty() {
            return None;
        }
        Some(self.cycle[(k - self.prefix.len()) % self.cycle.len()])
    }
}

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::parse("alpha", format!("unexpected character {c:?}"))),
        })
        .collect()
}

impl FromStr for AlphaSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            return AlphaSeq::finite(parse_bits(inner)?);
        }
        match s.find('(') {
            Some(open) => {
                let cycle = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse("alpha", "missing closing parenthesis"))?;
                AlphaSeq::eventually_periodic(parse_bits(&s[..open])?, parse_bits(cycle)?)
            }
            None => AlphaSeq::eventually_periodic(Vec::new(), parse_bits(s)?),
        }
    }
}

impl fmt::Display for AlphaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        if self.is_finite() {
            write!(f, "[{}]", bits(&self.prefix))
        } else {
            write!(f, "{}({})", bits(&self.prefix), bits(&self.cycle))
        }
    }
}

/// Parameters of a truncated infinite composition `Φ_{α_1} ∘ Φ_{α_2} ∘ …`
/// with `Φ_0 = G_{a_i}` and `Φ_1 = H_{b_i}`.
///
/// `a_seq` and `b_seq` repeat cyclically, so a single entry means a constant
/// sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    alpha: AlphaSeq,
    a_seq: Vec<Rational>,
    b_seq: Vec<Rational>,
    depth: usize,
}

impl PhiSpec {
    pub fn new(
        alpha: AlphaSeq,
        a_seq: Vec<Rational>,
        b_seq: Vec<Rational>,
        depth: usize,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Parameter("depth must be at least 1".into()));
        }
        if a_seq.is_empty() || b_seq.is_empty() {
            return Err(Error::Parameter(
                "parameter sequences must be non-empty".into(),
            ));
        }
        if let Some(len) = alpha.finite_len() {
            if len < depth {
                return Err(Error::Parameter(format!(
                    "alpha has {len} terms, fewer than the depth {depth}"
                )));
            }
        }
        for (name, seq) in [("a", &a_seq), ("b", &b_seq)] {
            for (i, c) in seq.iter().enumerate() {
                check_block_width(&format!("{name}[{}]", i + 1), c)?;
            }
        }
        Ok(PhiSpec {
            alpha,
            a_seq,
            b_seq,
            depth,
        })
    }

    /// Constant parameters `a_i = a`, `b_i = b`.
    pub fn constant(alpha: AlphaSeq, a: Rational, b: Rational, depth: usize) -> Result<Self> {
        PhiSpec::new(alpha, vec![a], vec![b], depth)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alpha(&self) -> &AlphaSeq {
        &self.alpha
    }

    /// The operator `Φ_{α_i}` for `1 ≤ i ≤ depth`.
    pub fn operator(&self, i: usize) -> DoublingSpec {
        let bit = self.alpha.bit(i).expect("checked against depth");
        let (kind, seq) = if bit == 0 {
            (DoublingKind::G, &self.a_seq)
        } else {
            (DoublingKind::H, &self.b_seq)
        };
        DoublingSpec {
            kind,
            a: seq[(i - 1) % seq.len()].clone(),
        }
    }

    pub fn c(&self, i: usize) -> Rational {
        self.operator(i).a
    }

    fn sup_c(&self) -> Rational {
        self.a_seq
            .iter()
            .chain(&self.b_seq)
            .max()
            .cloned()
            .expect("sequences are non-empty")
    }
}

/// A depth-`k` truncation with its exact convergence data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTruncation {
    pub map: PlMap,
    /// `c_1⋯c_{k−1}(1 − c_k)`: deeper truncations agree with this one on
    /// `[threshold, 1]`.
    pub threshold: Rational,
    /// `(Π_{i<k} c_i) / (1 − sup c)`: sup-distance to the limit is at most this.
    pub tail_bound: Rational,
}

/// `Φ_{α_1}(Φ_{α_2}(⋯Φ_{α_k}(seed)⋯))`, built innermost first.
pub fn phi_truncation(spec: &PhiSpec, seed: &PlMap) -> Result<PhiTruncation> {
    let k = spec.depth;
    let mut map = seed.clone();
    for i in (1..=k).rev() {
        map = double(&map, &spec.operator(i))?;
    }
    let prefix: Rational = (1..k).map(|i| spec.c(i)).product();
    let threshold = &prefix * (Rational::one() - spec.c(k));
    let tail_bound = &prefix / (Rational::one() - spec.sup_c());
    Ok(PhiTruncation {
        map,
        threshold,
        tail_bound,
    })
}

/// How [`witness`] builds finite classes with an odd part of at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Repeated doubling of a Štefan map.
    #[default]
    StefanDoubling,
    /// A truncated tent map `T_n`.
    TruncatedTent,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::StefanDoubling => "stefan-doubling",
            Strategy::TruncatedTent => "truncated-tent",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stefan-doubling" => Ok(Strategy::StefanDoubling),
            "truncated-tent" => Ok(Strategy::TruncatedTent),
            _ => Err(Error::parse(
                "strategy",
                format!("{s:?} is not one of stefan-doubling, truncated-tent"),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOptions {
    pub strategy: Strategy,
    pub kind: DoublingKind,
    pub a: Rational,
    /// Required for `2^inf`, ignored otherwise.
    pub depth: Option<usize>,
    pub budget: PieceBudget,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            strategy: Strategy::default(),
            kind: DoublingKind::G,
            a: ratio(1, 3),
            depth: None,
            budget: PieceBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub class: SharkClass,
    pub map: PlMap,
    /// A bound at which `verify` recognizes the class.
    pub bound: u64,
    /// Present for `2^inf`, whose witness is a finite-depth approximation.
    pub truncation: Option<(Rational, Rational)>,
    pub recipe: String,
}

/// A bound large enough for the class to be read back from the period set.
pub fn recommended_bound(class: SharkClass) -> u64 {
    match class {
        SharkClass::Finite(n) if n.is_power_of_two() => (2 * n).max(12),
        SharkClass::Finite(n) => n.max(12),
        SharkClass::TwoInf => 12,
    }
}

/// A map whose period set is the tail of `class`.
///
/// For `n = 2^i·q`: a constant map when `n = 1`; `i` doublings of the zero
/// map when `q = 1`; otherwise `i` doublings of the Štefan map of period `q`
/// (or `T_n` under [`Strategy::TruncatedTent`]). For `2^inf` the result is the
/// depth-`k` truncation, whose period set is `{1, 2, …, 2^k}`.
pub fn witness(class: SharkClass, opts: &WitnessOptions) -> Result<Witness> {
    let spec = DoublingSpec::new(opts.kind, opts.a.clone())?;
    let zero = make_named(NamedMap::G);
    let repeat = |mut map: PlMap, times: u32| -> Result<PlMap> {
        for _ in 0..times {
            map = double(&map, &spec)?;
        }
        Ok(map)
    };
    let ops = format!("op={} a={}", opts.kind, opts.a);
    let (map, truncation, recipe) = match class {
        SharkClass::TwoInf => {
            let depth = opts
                .depth
                .ok_or_else(|| Error::Parameter("class 2^inf needs an explicit depth".into()))?;
            if depth == 0 {
                return Err(Error::Parameter("depth must be at least 1".into()));
            }
            let map = repeat(zero, depth as u32)?;
            let c = &opts.a;
            let prefix = (1..depth).fold(Rational::one(), |acc, _| acc * c);
            let threshold = &prefix * (Rational::one() - c);
            let tail = &prefix / (Rational::one() - c);
            let recipe =
                format!("base=g doublings={depth} {ops} approximation: periods 1..2^{depth}");
            (map, Some((threshold, tail)), recipe)
        }
        SharkClass::Finite(1) => (zero, None, "base=g".to_string()),
        SharkClass::Finite(n) => {
            let d = decompose(n)?;
            match (opts.strategy, d.odd_part) {
                (Strategy::TruncatedTent, _) => (
                    make_truncated_tent(n, opts.budget)?,
                    None,
                    format!("base=truncated-tent({n})"),
                ),
                (Strategy::StefanDoubling, 1) => {
                    let map = repeat(zero, d.valuation)?;
                    (map, None, format!("base=g doublings={} {ops}", d.valuation))
                }
                (Strategy::StefanDoubling, q) => {
                    let k = ((q - 1) / 2) as usize;
                    let base = connect_the_dots(&stefan_pattern(k)?);
                    let map = repeat(base, d.valuation)?;
                    (
                        map,
                        None,
                        format!("base=stefan({q}) doublings={} {ops}", d.valuation),
                    )
                }
            }
        }
    };
    let bound = recommended_bound(class);
    let recipe = format!(
        "witness class={class} strategy={} {recipe} bound={bound}",
        opts.strategy
    );
    Ok(Witness {
        class,
        map,
        bound,
        truncation,
        recipe,
    })
}

/// Reads `bound=N` out of a recipe comment.
pub fn recipe_bound(comment: &str) -> Option<u64> {
    comment
        .split_whitespace()
        .find_map(|t| t.strip_prefix("bound="))
        .and_then(|v| v.parse().ok())
}
