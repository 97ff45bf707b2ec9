//! Branching of a pull-back map over 0, 1 and infinity, and the catalogue
//! of patterns a transformation between elliptic hypergeometric equations
//! can have.

use std::fmt;

use serde::Serialize;

use crate::arith::{BigRat, FieldElement};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};
use crate::triple::Transformation;
#[cfg(test)]
use crate::triple::HpgCase;

/// Multiplicities of the points above 0, 1 and infinity (in that order),
/// each fiber sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RamificationPattern {
    pub degree: usize,
    pub fibers: [Vec<usize>; 3],
}

impl RamificationPattern {
    /// Number of distinct points above the three branch points.
    pub fn point_count(&self) -> usize {
        self.fibers.iter().map(Vec::len).sum()
    }

    /// The Riemann-Hurwitz count for a genus-0 covering branched only above
    /// three points: exactly d + 2 points.
    pub fn hurwitz_ok(&self) -> bool {
        self.point_count() == self.degree + 2
    }

    pub fn fiber_sums_ok(&self) -> bool {
        self.fibers.iter().all(|f| f.iter().sum::<usize>() == self.degree)
    }

    /// Table notation, fibers over 0, 1, infinity: `2*2+1 = 1*4+1 = 1*4+1`.
    pub fn notation(&self) -> String {
        self.fibers.iter().map(|f| fiber_notation(f)).collect::<Vec<_>>().join(" = ")
    }
}

impl fmt::Display for RamificationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}: {}", self.degree, self.notation())
    }
}

fn fiber_notation(f: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut k = 0;
    while k < f.len() {
        let m = f[k];
        let run = f[k..].iter().take_while(|&&x| x == m).count();
        parts.push(if run > 1 { format!("{run}*{m}") } else { m.to_string() });
        k += run;
    }
    parts.join("+")
}

/// Points of the fiber of num/den over c (None for infinity).
fn fiber(num: &Poly, den: &Poly, c: Option<&FieldElement>, degree: usize) -> Vec<usize> {
    let f = match c {
        None => den.clone(),
        Some(c) => num - &den.scale(c),
    };
    let mut out: Vec<usize> = Vec::new();
    for (factor, mult) in f.squarefree_multiplicities() {
        out.extend(std::iter::repeat_n(mult, factor.deg0()));
    }
    let finite = f.deg0();
    if finite < degree {
        out.push(degree - finite);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Branching data of a rational map over 0, 1 and infinity.
pub fn ramify(phi: &RationalMap) -> Result<RamificationPattern> {
    if phi.is_constant() {
        return Err(Error::ConstantMap);
    }
    let d = phi.degree();
    let ring = phi.ring();
    let (n, q) = (phi.num(), phi.den());
    let fibers = [
        fiber(n, q, Some(&FieldElement::zero(ring)), d),
        fiber(n, q, Some(&FieldElement::one(ring)), d),
        fiber(n, q, None, d),
    ];
    Ok(RamificationPattern { degree: d, fibers })
}

/// a*n + b, the number of points in a term of a table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Count {
    a: i64,
    b: i64,
}

impl Count {
    fn at(self, n: i64) -> i64 {
        self.a * n + self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    count: Count,
    mult: usize,
}

/// One catalogue entry: target exponents (z side), source exponents
/// (x side), degree d = step*n + offset, and the fiber templates listed in
/// the order of the target exponents.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub id: &'static str,
    pub target: [BigRat; 3],
    pub source: [BigRat; 3],
    pub step: usize,
    pub offset: usize,
    pub text: &'static str,
    fibers: [Vec<Term>; 3],
}

impl TableRow {
    /// n with d = step*n + offset, if d lies in the class.
    pub fn solve_n(&self, d: usize) -> Option<i64> {
        (d >= self.offset && (d - self.offset).is_multiple_of(self.step)).then(|| ((d - self.offset) / self.step) as i64)
    }

    /// The fibers for a given n, sorted like a computed pattern; None when
    /// some count goes negative.
    fn instantiate(&self, n: i64) -> Option<[Vec<usize>; 3]> {
        let mut out: [Vec<usize>; 3] = Default::default();
        for (slot, terms) in out.iter_mut().zip(&self.fibers) {
            for t in terms {
                let c = t.count.at(n);
                if c < 0 {
                    return None;
                }
                slot.extend(std::iter::repeat_n(t.mult, c as usize));
            }
            slot.sort_unstable_by(|a, b| b.cmp(a));
        }
        Some(out)
    }

    pub fn degree_text(&self) -> String {
        match self.offset {
            0 => format!("{}n", self.step),
            o => format!("{}n+{o}", self.step),
        }
    }
}

fn parse_count(s: &str) -> Result<Count> {
    let bad = || Error::Parse { what: "table count", input: s.to_string() };
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (lin, rest) = match s.find('n') {
        Some(k) => (&s[..k], &s[k + 1..]),
        None => ("", s),
    };
    let a = if s.contains('n') {
        if lin.is_empty() {
            1
        } else {
            lin.parse().map_err(|_| bad())?
        }
    } else {
        0
    };
    let b = if rest.is_empty() {
        0
    } else if s.contains('n') {
        rest.replace('+', "").parse::<i64>().map_err(|_| bad())?
    } else {
        rest.parse().map_err(|_| bad())?
    };
    Ok(Count { a, b })
}

/// Terms like `(n-1)*4`, `2n*2`, `1`, split on top-level `+`.
fn parse_fiber(s: &str) -> Result<Vec<Term>> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let bytes: Vec<char> = s.chars().collect();
    for (k, &ch) in bytes.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(bytes[start..k].iter().collect::<String>());
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push(bytes[start..].iter().collect());
    parts
        .iter()
        .map(|p| {
            let p = p.trim();
            let bad = || Error::Parse { what: "table term", input: p.to_string() };
            match p.rsplit_once('*') {
                Some((c, m)) => Ok(Term { count: parse_count(c)?, mult: m.trim().parse().map_err(|_| bad())? }),
                None => Ok(Term { count: Count { a: 0, b: 1 }, mult: p.parse().map_err(|_| bad())? }),
            }
        })
        .collect()
}

fn parse_pattern(s: &str) -> Result<[Vec<Term>; 3]> {
    let f: Vec<&str> = s.split('=').collect();
    if f.len() != 3 {
        return Err(Error::Parse { what: "table pattern", input: s.to_string() });
    }
    Ok([parse_fiber(f[0])?, parse_fiber(f[1])?, parse_fiber(f[2])?])
}

fn q(a: i64, b: i64) -> BigRat {
    BigRat::new(a.into(), b.into())
}

/// (id, target denominators, source denominators, step, offset, pattern)
type RowSpec = (&'static str, [i64; 3], [i64; 3], usize, usize, &'static str);

const ROWS: [RowSpec; 15] = [
    ("e1-4n", [2, 4, 4], [2, 4, 4], 4, 0, "2n*2 = n*4 = (n-1)*4+2+1+1"),
    ("e1-4n+1", [2, 4, 4], [2, 4, 4], 4, 1, "2n*2+1 = n*4+1 = n*4+1"),
    ("e1-4n+2", [2, 4, 4], [2, 4, 4], 4, 2, "(2n+1)*2 = n*4+2 = n*4+1+1"),
    ("e2-6n", [2, 3, 6], [2, 3, 6], 6, 0, "3n*2 = 2n*3 = (n-1)*6+3+2+1"),
    ("e2-6n+1", [2, 3, 6], [2, 3, 6], 6, 1, "3n*2+1 = 2n*3+1 = n*6+1"),
    ("e2-6n+3", [2, 3, 6], [2, 3, 6], 6, 3, "(3n+1)*2+1 = (2n+1)*3 = n*6+2+1"),
    ("e2-6n+4", [2, 3, 6], [2, 3, 6], 6, 4, "(3n+2)*2 = (2n+1)*3+1 = n*6+3+1"),
    ("e3e2-6n-a", [2, 3, 6], [3, 3, 3], 6, 0, "3n*2 = 2n*3 = (n-1)*6+2+2+2"),
    ("e3e2-6n-b", [2, 3, 6], [3, 3, 3], 6, 0, "3n*2 = (2n-1)*3+1+1+1 = n*6"),
    ("e3e2-6n+2", [2, 3, 6], [3, 3, 3], 6, 2, "(3n+1)*2 = 2n*3+1+1 = n*6+2"),
    ("e3e2-6n+4", [2, 3, 6], [3, 3, 3], 6, 4, "(3n+2)*2 = (2n+1)*3+1 = n*6+2+2"),
    ("hyper-e2-6n", [2, 3, 6], [-3, 6, 6], 6, 0, "3n*2 = 2n*3 = (n-1)*6+4+1+1"),
    ("hyper-e2-6n+2", [2, 3, 6], [-3, 6, 6], 6, 2, "(3n+1)*2 = 2n*3+2 = n*6+1+1"),
    ("e3-3n", [3, 3, 3], [3, 3, 3], 3, 0, "n*3 = n*3 = (n-1)*3+1+1+1"),
    ("e3-3n+1", [3, 3, 3], [3, 3, 3], 3, 1, "n*3+1 = n*3+1 = n*3+1"),
];

/// The catalogue of ramification patterns. A negative denominator entry
/// stands for the exponent 2/|k|.
pub fn pattern_catalogue() -> Vec<TableRow> {
    let ex = |k: i64| if k < 0 { q(2, -k) } else { q(1, k) };
    ROWS.iter()
        .map(|&(id, t, s, step, offset, text)| TableRow {
            id,
            target: t.map(ex),
            source: s.map(ex),
            step,
            offset,
            text,
            fibers: parse_pattern(text).expect("catalogue pattern parses"),
        })
        .collect()
}

fn sorted(e: &[BigRat; 3]) -> Vec<BigRat> {
    let mut v = e.to_vec();
    v.sort();
    v
}

/// All catalogue rows matching the pattern, where `target` lists the
/// exponent differences at z = 0, 1, infinity of the equation in phi and
/// `source` those of the pulled-back equation.
pub fn matching_rows(p: &RamificationPattern, source: &[BigRat; 3], target: &[BigRat; 3]) -> Vec<&'static str> {
    let mut out = Vec::new();
    for row in pattern_catalogue() {
        if sorted(&row.target) != sorted(target) || sorted(&row.source) != sorted(source) {
            continue;
        }
        let Some(n) = row.solve_n(p.degree) else { continue };
        let Some(want) = row.instantiate(n) else { continue };
        // each row fiber goes to the branch point carrying its exponent
        let hit = PERMS.iter().any(|perm| {
            (0..3).all(|j| row.target[j] == target[perm[j]] && want[j] == p.fibers[perm[j]])
        });
        if hit {
            out.push(row.id);
        }
    }
    out
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The unique matching row, or None.
pub fn match_catalogue(p: &RamificationPattern, source: &[BigRat; 3], target: &[BigRat; 3]) -> Option<&'static str> {
    match matching_rows(p, source, target).as_slice() {
        [one] => Some(one),
        _ => None,
    }
}

/// Ramification report of a transformation.
#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    pub pattern: RamificationPattern,
    pub notation: String,
    pub hurwitz: bool,
    pub row: Option<&'static str>,
}

pub fn analyze(t: &Transformation) -> Result<RamificationReport> {
    let pattern = ramify(&t.phi)?;
    let row = match_catalogue(&pattern, &t.source.exponents(), &t.target.exponents());
    Ok(RamificationReport { notation: pattern.notation(), hurwitz: pattern.hurwitz_ok(), pattern, row })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ring;

    fn rm(n: &str, d: &str) -> RationalMap {
        RationalMap::new(Poly::parse(n, Ring::Gauss).unwrap(), Poly::parse(d, Ring::Gauss).unwrap()).unwrap()
    }

    #[test]
    fn small_patterns() {
        let p = ramify(&rm("-4z", "(z-1)^2")).unwrap();
        assert_eq!(p.fibers, [vec![1, 1], vec![2], vec![2]]);
        assert!(p.hurwitz_ok());
        let p = ramify(&rm("z", "1")).unwrap();
        assert_eq!(p.fibers, [vec![1], vec![1], vec![1]]);
        assert!(matches!(ramify(&rm("3", "1")), Err(Error::ConstantMap)));
    }

    #[test]
    fn degree_four_matches_first_row() {
        let p = ramify(&rm("16z(z-1)^2", "(z+1)^4")).unwrap();
        assert_eq!(p.notation(), "2+2*1 = 2*2 = 4");
        let e = HpgCase::E1.exponents();
        assert_eq!(match_catalogue(&p, &e, &e), Some("e1-4n"));
    }

    #[test]
    fn catalogue_parses() {
        let rows = pattern_catalogue();
        assert_eq!(rows.len(), 15);
        for r in &rows {
            // every template is a genus-0 three-point covering for n = 1, 2
            for n in 1..3 {
                let f = r.instantiate(n).unwrap();
                let d = r.step * n as usize + r.offset;
                let p = RamificationPattern { degree: d, fibers: f };
                assert!(p.fiber_sums_ok() && p.hurwitz_ok(), "{} n={n}", r.id);
            }
        }
        assert_eq!(parse_count("(3n+2)").unwrap(), Count { a: 3, b: 2 });
        assert_eq!(parse_count("(n-1)").unwrap(), Count { a: 1, b: -1 });
        assert_eq!(parse_count("2n").unwrap(), Count { a: 2, b: 0 });
    }

    #[test]
    fn random_map_matches_nothing() {
        let p = ramify(&rm("z^3+2z+5", "z^2-7")).unwrap();
        let e = HpgCase::E1.exponents();
        assert!(!p.hurwitz_ok());
        assert_eq!(match_catalogue(&p, &e, &e), None);
    }
}
