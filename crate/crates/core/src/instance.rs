//! Problem instances: a symmetric matrix of positive integer distances
//! between cities labelled `1..=n`.
//!
//! Instances travel as "tspd" text: optional `#` comment lines, a line
//! holding `n`, then `n` rows of `n` whitespace-separated integers with a
//! zero diagonal.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Largest distance an instance may hold. With 64-bit accumulation a path
/// of `n - 1` edges cannot overflow for any `n` a solver will accept.
pub const MAX_DISTANCE: u64 = u32::MAX as u64;

/// A 1-based city label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CityId(usize);

impl CityId {
    /// Panics on 0; labels start at 1.
    pub fn new(label: usize) -> Self {
        assert!(label >= 1, "city labels start at 1");
        CityId(label)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn index(self) -> usize {
        self.0 - 1
    }

    pub(crate) fn from_index(index: usize) -> Self {
        CityId(index + 1)
    }
}

impl fmt::Display for CityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A validated instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    // row-major, 0-based
    dist: Vec<u32>,
}

impl Instance {
    /// Builds an instance from a full matrix, checking every invariant.
    pub fn from_matrix<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Domain(format!("need at least 2 cities, got {n}")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Domain(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
                dist.push(v as u32);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (ij, ji) = (dist[i * n + j], dist[j * n + i]);
                if ij != ji {
                    return Err(Error::Asymmetry {
                        i: i + 1,
                        j: j + 1,
                        ij: ij.into(),
                        ji: ji.into(),
                    });
                }
            }
        }
        Ok(Instance { n, dist })
    }

    /// Builds an instance from a function of 1-based label pairs `(i, j)`
    /// with `i < j`; the lower triangle is mirrored.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("need at least 2 cities, got {n}")));
        }
        let mut dist = vec![0u32; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i + 1, j + 1);
                check_entry(i, j, v)?;
                dist[i * n + j] = v as u32;
                dist[j * n + i] = v as u32;
            }
        }
        Ok(Instance { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first(&self) -> CityId {
        CityId(1)
    }

    pub fn last(&self) -> CityId {
        CityId(self.n)
    }

    pub fn contains(&self, city: CityId) -> bool {
        city.0 <= self.n
    }

    /// δ(i, j). Panics if either city is out of range.
    pub fn dist(&self, i: CityId, j: CityId) -> u64 {
        assert!(self.contains(i) && self.contains(j), "city out of range");
        self.d(i.index(), j.index())
    }

    #[inline]
    pub(crate) fn d(&self, i: usize, j: usize) -> u64 {
        u64::from(self.dist[i * self.n + j])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.dist.chunks_exact(self.n)
    }

    /// The off-diagonal upper-triangle entries in row-major order.
    pub fn upper_triangle(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.d(i, j)))
    }
}

fn check_entry(i: usize, j: usize, v: u64) -> Result<()> {
    if i == j {
        if v != 0 {
            return Err(Error::Domain(format!(
                "diagonal entry d({0},{0}) = {v}, must be 0",
                i + 1
            )));
        }
    } else if v < 1 {
        return Err(Error::Domain(format!(
            "d({},{}) = {v}, distances must be positive",
            i + 1,
            j + 1
        )));
    } else if v > MAX_DISTANCE {
        return Err(Error::Domain(format!(
            "d({},{}) = {v} exceeds the cap {MAX_DISTANCE}",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// A data line's numeric token. Sign and magnitude are kept apart so that
/// out-of-range values report as domain errors, not syntax errors.
enum Token {
    Value(u64),
    Negative,
    TooLarge,
}

fn lex(tok: &str) -> Option<Token> {
    let (neg, digits) = match tok.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if neg && digits.bytes().any(|b| b != b'0') {
        return Some(Token::Negative);
    }
    Some(digits.parse().map_or(Token::TooLarge, Token::Value))
}

/// Parses tspd text into a validated [`Instance`].
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| Error::Syntax {
        line: 1,
        msg: "missing city count".into(),
    })?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        [tok] => match lex(tok) {
            Some(Token::Value(n)) => n,
            Some(_) => return Err(Error::Domain(format!("city count {tok} is out of range"))),
            None => {
                return Err(Error::Syntax {
                    line: header_line,
                    msg: format!("bad city count {tok:?}"),
                })
            }
        },
        _ => {
            return Err(Error::Syntax {
                line: header_line,
                msg: "first data line must hold only the city count".into(),
            })
        }
    };
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 cities, got {n}")));
    }
    let n = usize::try_from(n).map_err(|_| Error::Domain(format!("city count {n} too large")))?;

    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n.min(1 << 12));
    let mut last_line = header_line;
    for (line, text) in lines {
        if rows.len() == n {
            return Err(Error::Syntax {
                line,
                msg: format!("expected {n} matrix rows, found extra data"),
            });
        }
        last_line = line;
        let mut row = Vec::with_capacity(n.min(1 << 12));
        for tok in text.split_whitespace() {
            let v = match lex(tok) {
                Some(Token::Value(v)) => v,
                Some(Token::Negative) => {
                    return Err(Error::Domain(format!(
                        "negative entry {tok} on line {line}"
                    )))
                }
                Some(Token::TooLarge) => {
                    return Err(Error::Domain(format!(
                        "entry {tok} on line {line} exceeds the cap {MAX_DISTANCE}"
                    )))
                }
                None => {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("bad entry {tok:?}"),
                    })
                }
            };
            row.push(v);
        }
        if row.len() != n {
            return Err(Error::Syntax {
                line,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Syntax {
            line: last_line,
            msg: format!("expected {n} matrix rows, found {}", rows.len()),
        });
    }
    Instance::from_matrix(&rows)
}

/// Canonical tspd text: no comments, single spaces, newline after each row.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = format!("{}\n", inst.n);
    for row in inst.rows() {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_instance(self))
    }
}

/// Seeded random instance. The strict upper triangle is filled row by row
/// with `1 + next_u64() % max_dist` from a SplitMix64 stream, then mirrored.
pub fn generate_random(n: usize, max_dist: u64, seed: u64) -> Result<Instance> {
    if !(1..=MAX_DISTANCE).contains(&max_dist) {
        return Err(Error::Domain(format!(
            "max_dist must lie in 1..={MAX_DISTANCE}, got {max_dist}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    Instance::from_upper_fn(n, |_, _| 1 + rng.below(max_dist))
}

/// A relabelling of the interior cities `2..n-1`; cities 1 and n stay put.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // image[c - 1] = perm(c)
    image: Vec<usize>,
}

impl Permutation {
    /// `image[k]` is the new label of city `k + 1`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n < 2 {
            return Err(Error::Domain(format!(
                "permutation needs at least 2 cities, got {n}"
            )));
        }
        if image[0] != 1 || image[n - 1] != n {
            return Err(Error::Domain("permutation must fix cities 1 and n".into()));
        }
        let mut seen = vec![false; n];
        for &c in &image {
            if c < 1 || c > n || std::mem::replace(&mut seen[c - 1], true) {
                return Err(Error::Domain(format!(
                    "{image:?} is not a bijection on 1..={n}"
                )));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 2);
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// Uniformly shuffles the interior cities (Fisher-Yates).
    pub fn random_interior(n: usize, rng: &mut SplitMix64) -> Self {
        let mut p = Self::identity(n);
        let interior = &mut p.image[1..n - 1];
        for k in (1..interior.len()).rev() {
            let r = rng.below(k as u64 + 1) as usize;
            interior.swap(k, r);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, city: CityId) -> CityId {
        CityId(self.image[city.index()])
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.n()];
        for (k, &c) in self.image.iter().enumerate() {
            image[c - 1] = k + 1;
        }
        Permutation { image }
    }
}

/// Returns `inst'` with `dist'(perm(i), perm(j)) = dist(i, j)`.
pub fn relabel(inst: &Instance, perm: &Permutation) -> Result<Instance> {
    if perm.n() != inst.n {
        return Err(Error::Domain(format!(
            "permutation on {} cities applied to an instance with {}",
            perm.n(),
            inst.n
        )));
    }
    let n = inst.n;
    let mut dist = vec![0u32; n * n];
    for i in 0..n {
        let pi = perm.image[i] - 1;
        for j in 0..n {
            let pj = perm.image[j] - 1;
            dist[pi * n + pj] = inst.dist[i * n + j];
        }
    }
    Ok(Instance { n, dist })
}
