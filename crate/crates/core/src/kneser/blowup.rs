//! Exact search for a blow-up K_a(t): a disjoint vertex classes of size t
//! with every cross-class pair adjacent. Edges inside a class are allowed.

use crate::error::{Error, Result};
use crate::kneser::cliques::above;
use crate::kneser::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupSpec {
    a: usize,
    t: usize,
}

impl BlowupSpec {
    pub fn new(a: usize, t: usize) -> Result<Self> {
        if a < 2 || t < 1 {
            return Err(Error::invalid(format!(
                "blow-up needs a >= 2 and t >= 1, got a={a}, t={t}"
            )));
        }
        Ok(BlowupSpec { a, t })
    }

    pub fn parts(&self) -> usize {
        self.a
    }

    pub fn part_size(&self) -> usize {
        self.t
    }
}

struct Finder<'a> {
    rows: &'a [u64],
    spec: BlowupSpec,
    classes: Vec<Vec<usize>>,
}

impl Finder<'_> {
    /// `cross`: vertices adjacent to every vertex of the completed classes.
    /// `cur_common`: vertices adjacent to every vertex of the current class.
    fn search(&mut self, current: &mut Vec<usize>, used: u64, cross: u64, cur_common: u64) -> bool {
        let t = self.spec.t;
        if current.len() == t {
            let done = std::mem::take(current);
            self.classes.push(done);
            let ok = if self.classes.len() == self.spec.a {
                true
            } else {
                let next_cross = cross & cur_common;
                self.search(current, used, next_cross, !0)
            };
            if !ok {
                *current = self.classes.pop().expect("pushed above");
            }
            return ok;
        }
        let later_classes = self.spec.a - self.classes.len() - 1;
        let need = t - current.len();
        if ((cross & cur_common & !used).count_ones() as usize) < later_classes * t {
            return false;
        }
        // Classes are listed by increasing first vertex, each class ascending.
        let floor = match current.last() {
            Some(&v) => above(v as u32),
            None => match self.classes.last() {
                Some(prev) => above(prev[0] as u32),
                None => !0,
            },
        };
        let candidates = cross & !used & floor;
        if (candidates.count_ones() as usize) < need {
            return false;
        }
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            current.push(v);
            if self.search(current, used | 1 << v, cross, cur_common & self.rows[v]) {
                return true;
            }
            current.pop();
        }
        false
    }
}

/// Finds a blow-up K_a(t) in `g`, or `None` once the search is exhausted.
///
/// The first solution in lexicographic order (classes by first vertex,
/// vertices ascending within a class) is returned.
pub fn find_blowup(g: &Graph, spec: BlowupSpec, limits: &Limits) -> Result<Option<Vec<Vec<usize>>>> {
    let m = g.vertex_count();
    let cap = limits.blowup_m.min(64);
    if m > cap {
        return Err(Error::CapExceeded {
            what: "blow-up search vertices",
            value: m as u64,
            cap: cap as u64,
        });
    }
    if spec.a * spec.t > m {
        return Ok(None);
    }
    let rows = g.small_rows();
    let all = if m == 64 { !0 } else { (1u64 << m) - 1 };
    let mut finder = Finder {
        rows: &rows,
        spec,
        classes: Vec::with_capacity(spec.a),
    };
    let mut current = Vec::with_capacity(spec.t);
    if finder.search(&mut current, 0, all, !0) {
        Ok(Some(finder.classes))
    } else {
        Ok(None)
    }
}

/// Independent check that `classes` are disjoint, of equal size, and fully
/// joined across classes.
pub fn is_blowup(g: &Graph, classes: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    for class in classes {
        for &v in class {
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    if classes.windows(2).any(|w| w[0].len() != w[1].len()) {
        return false;
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            for &u in a {
                for &v in b {
                    if !g.has_edge(u, v) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::turan::turan_blowup_graph;

    #[test]
    fn turan_graph_is_its_own_blowup() {
        let l = Limits::default();
        let g = turan_blowup_graph(3, 2, &l).unwrap();
        let found = find_blowup(&g, BlowupSpec::new(3, 2).unwrap(), &l).unwrap().unwrap();
        assert_eq!(found, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(is_blowup(&g, &found));
    }

    #[test]
    fn five_cycle_has_no_k22() {
        let l = Limits::default();
        let g = Graph::cycle(5);
        assert_eq!(find_blowup(&g, BlowupSpec::new(2, 2).unwrap(), &l).unwrap(), None);
        // Girth 6, so no 4-cycle either.
        assert_eq!(find_blowup(&Graph::cycle(6), BlowupSpec::new(2, 2).unwrap(), &l).unwrap(), None);
    }

    #[test]
    fn single_edge_blowup() {
        let l = Limits::default();
        let spec = BlowupSpec::new(2, 1).unwrap();
        assert_eq!(find_blowup(&Graph::new(4), spec, &l).unwrap(), None);
        let g = Graph::from_edges(4, &[(2, 3)]).unwrap();
        assert_eq!(find_blowup(&g, spec, &l).unwrap(), Some(vec![vec![2], vec![3]]));
    }

    #[test]
    fn intra_class_edges_are_ignored() {
        let l = Limits::default();
        let g = Graph::complete(4);
        let found = find_blowup(&g, BlowupSpec::new(2, 2).unwrap(), &l).unwrap().unwrap();
        assert!(is_blowup(&g, &found));
    }

    #[test]
    fn spec_and_cap_validation() {
        assert!(BlowupSpec::new(1, 2).is_err());
        assert!(BlowupSpec::new(2, 0).is_err());
        let big = Graph::new(65);
        assert!(find_blowup(&big, BlowupSpec::new(2, 1).unwrap(), &Limits::default()).is_err());
    }
}
