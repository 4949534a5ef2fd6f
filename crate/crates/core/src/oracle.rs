//! Ground truth for small instances: path evaluation and exhaustive search
//! over every ordering of the interior cities.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result, Solver};
use crate::heldkarp::Solution;
use crate::instance::{CityId, Instance};

/// Largest instance the brute-force solver accepts; (13 - 2)! is about
/// 4e7 orderings.
pub const BRUTE_FORCE_MAX_N: usize = 13;

/// A route through every city, starting at city 1 and ending at city n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    cities: Vec<CityId>,
}

impl Path {
    /// Wraps a city sequence without checking it; see [`Path::validate`].
    pub fn new(cities: Vec<CityId>) -> Self {
        Path { cities }
    }

    pub fn from_labels(labels: &[usize]) -> Self {
        Path::new(labels.iter().map(|&c| CityId::new(c)).collect())
    }

    pub fn cities(&self) -> &[CityId] {
        &self.cities
    }

    pub fn labels(&self) -> Vec<usize> {
        self.cities.iter().map(|c| c.get()).collect()
    }

    pub fn len(&self) -> usize {
        self.cities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cities.is_empty()
    }

    /// Checks that this is a Hamiltonian path from 1 to `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.cities.len() != n {
            return Err(Error::InvalidPath(format!(
                "path visits {} cities, instance has {n}",
                self.cities.len()
            )));
        }
        if self.cities[0].get() != 1 || self.cities[n - 1].get() != n {
            return Err(Error::InvalidPath(format!(
                "path {self} must start at 1 and end at {n}"
            )));
        }
        let mut seen = vec![false; n];
        for c in &self.cities {
            let k = c.get();
            if k > n {
                return Err(Error::InvalidPath(format!("city {k} out of range")));
            }
            if std::mem::replace(&mut seen[k - 1], true) {
                return Err(Error::InvalidPath(format!("city {k} visited twice")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cities.iter().format(","))
    }
}

/// Total distance along `path`.
pub fn path_length(inst: &Instance, path: &Path) -> Result<u64> {
    path.validate(inst.n())?;
    Ok(path
        .cities
        .iter()
        .tuple_windows()
        .map(|(&a, &b)| inst.dist(a, b))
        .sum())
}

/// Exhaustive search over all (n-2)! interior orderings, visited in
/// lexicographic order. The first ordering reaching the minimum wins.
pub fn solve_brute_force(inst: &Instance) -> Result<Solution> {
    let n = inst.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Size {
            solver: Solver::BruteForce,
            n,
            cap: BRUTE_FORCE_MAX_N,
        });
    }
    let (first, last) = (0, n - 1);
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut evaluated = 0u64;
    for order in (1..n - 1).permutations(n - 2) {
        evaluated += 1;
        let mut prev = first;
        let mut total = 0u64;
        for &c in order.iter().chain(std::iter::once(&last)) {
            total += inst.d(prev, c);
            prev = c;
        }
        if best.as_ref().is_none_or(|(len, _)| total < *len) {
            best = Some((total, order));
        }
    }
    let (length, order) = best.expect("at least one ordering exists");
    let mut cities = Vec::with_capacity(n);
    cities.push(inst.first());
    cities.extend(order.into_iter().map(CityId::from_index));
    cities.push(inst.last());
    Ok(Solution {
        length,
        path: Path::new(cities),
        states_computed: evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::instance_a;

    #[test]
    fn length_of_three_city_path() {
        let inst = Instance::from_matrix(&[[0, 5, 9], [5, 0, 7], [9, 7, 0]]).unwrap();
        assert_eq!(
            path_length(&inst, &Path::from_labels(&[1, 2, 3])).unwrap(),
            12
        );
    }

    #[test]
    fn length_on_instance_a() {
        let a = instance_a();
        assert_eq!(
            path_length(&a, &Path::from_labels(&[1, 3, 2, 4])).unwrap(),
            14
        );
        assert_eq!(
            path_length(&a, &Path::from_labels(&[1, 2, 3, 4])).unwrap(),
            21
        );
    }

    #[test]
    fn invalid_paths() {
        let a = instance_a();
        for labels in [
            &[1, 2, 2, 4][..],
            &[1, 2, 3][..],
            &[2, 1, 3, 4][..],
            &[1, 2, 4, 3][..],
            &[1, 2, 5, 4][..],
            &[1, 2, 3, 4, 4][..],
        ] {
            assert!(
                matches!(
                    path_length(&a, &Path::from_labels(labels)),
                    Err(Error::InvalidPath(_))
                ),
                "{labels:?}"
            );
        }
    }

    #[test]
    fn two_cities() {
        let inst = Instance::from_upper_fn(2, |_, _| 4).unwrap();
        let sol = solve_brute_force(&inst).unwrap();
        assert_eq!(sol.length, 4);
        assert_eq!(sol.path.labels(), [1, 2]);
        assert_eq!(sol.states_computed, 1);
    }

    #[test]
    fn instance_a_optimum() {
        let sol = solve_brute_force(&instance_a()).unwrap();
        assert_eq!(sol.length, 14);
        assert_eq!(sol.path.labels(), [1, 3, 2, 4]);
        assert_eq!(sol.states_computed, 2);
    }

    #[test]
    fn uniform_ties_pick_lexicographic_first() {
        let inst = Instance::from_upper_fn(5, |_, _| 1).unwrap();
        let sol = solve_brute_force(&inst).unwrap();
        assert_eq!(sol.length, 4);
        assert_eq!(sol.path.labels(), [1, 2, 3, 4, 5]);
        assert_eq!(sol.states_computed, 6);
    }

    #[test]
    fn evaluates_factorial_orderings() {
        let mut fact = 1u64;
        for n in 2..=9usize {
            if n > 2 {
                fact *= (n - 2) as u64;
            }
            let inst = crate::instance::generate_random(n, 50, n as u64).unwrap();
            assert_eq!(solve_brute_force(&inst).unwrap().states_computed, fact);
        }
    }

    #[test]
    fn size_cap() {
        let inst = Instance::from_upper_fn(14, |_, _| 1).unwrap();
        assert!(matches!(
            solve_brute_force(&inst),
            Err(Error::Size {
                solver: Solver::BruteForce,
                n: 14,
                cap: 13
            })
        ));
    }

    #[test]
    fn path_display() {
        assert_eq!(Path::from_labels(&[1, 3, 2, 4]).to_string(), "1,3,2,4");
    }
}
