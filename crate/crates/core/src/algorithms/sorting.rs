//! Preference sorting, non-dominated sorting and crowding distance over the
//! heuristics of the currently uncovered targets (all maximised).

use std::cmp::Ordering;

use crate::types::HeuristicVector;

/// Heuristics of one individual restricted to a set of objectives, kept
/// dense for lookups and with the non-zero positions listed for fast
/// dominance checks (most tests score zero on most targets).
#[derive(Debug, Clone)]
pub struct Objectives {
    dense: Vec<f64>,
    nonzero: Vec<usize>,
}

impl Objectives {
    pub fn restrict(h: &HeuristicVector, objectives: &[usize]) -> Self {
        let dense: Vec<f64> = objectives.iter().map(|&k| h.get(k)).collect();
        let nonzero = (0..dense.len()).filter(|&i| dense[i] > 0.0).collect();
        Self { dense, nonzero }
    }

    pub fn values(&self) -> &[f64] {
        &self.dense
    }

    /// `self` is at least as good everywhere and strictly better somewhere.
    pub fn dominates(&self, other: &Objectives) -> bool {
        // Positions where `other` is zero can never beat `self`.
        if other
            .nonzero
            .iter()
            .any(|&p| self.dense[p] < other.dense[p])
        {
            return false;
        }
        self.nonzero.iter().any(|&p| self.dense[p] > other.dense[p])
    }
}

/// Fast non-dominated sort of `members` (indices into `objs`).
pub fn non_dominated_fronts(objs: &[Objectives], members: &[usize]) -> Vec<Vec<usize>> {
    let n = members.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&objs[members[i]], &objs[members[j]]);
            if a.dominates(b) {
                dominated_by_me[i].push(j);
                domination_count[j] += 1;
            } else if b.dominates(a) {
                dominated_by_me[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by_me[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current.iter().map(|&i| members[i]).collect());
        current = next;
    }
    fronts
}

/// Preference sorting: the best individual for every objective forms front
/// 0 (ties broken by smaller size, then lower index); everyone else is
/// ranked by non-dominated sorting from front 1 on. Objectives on which the
/// whole population scores zero give no preference.
pub fn preference_sort(objs: &[Objectives], sizes: &[usize]) -> Vec<Vec<usize>> {
    let n = objs.len();
    if n == 0 {
        return Vec::new();
    }
    let m = objs[0].dense.len();
    let mut preferred = vec![false; n];
    for p in 0..m {
        let mut best: Option<usize> = None;
        for i in 0..n {
            let v = objs[i].dense[p];
            if v <= 0.0 {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let bv = objs[b].dense[p];
                    if v > bv || (v == bv && sizes[i] < sizes[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        if let Some(b) = best {
            preferred[b] = true;
        }
    }
    let front0: Vec<usize> = (0..n).filter(|&i| preferred[i]).collect();
    let rest: Vec<usize> = (0..n).filter(|&i| !preferred[i]).collect();
    let mut fronts = Vec::new();
    if !front0.is_empty() {
        fronts.push(front0);
    }
    fronts.extend(non_dominated_fronts(objs, &rest));
    fronts
}

/// Standard crowding distance of each member of `front`, in front order.
pub fn crowding_distance(objs: &[Objectives], front: &[usize]) -> Vec<f64> {
    let len = front.len();
    let mut distance = vec![0.0; len];
    if len <= 2 {
        return vec![f64::INFINITY; len];
    }
    let m = objs[front[0]].dense.len();
    let mut order: Vec<usize> = (0..len).collect();
    for p in 0..m {
        let value = |i: usize| objs[front[i]].dense[p];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let (lo, hi) = (value(order[0]), value(order[len - 1]));
        if hi <= lo {
            continue;
        }
        distance[order[0]] = f64::INFINITY;
        distance[order[len - 1]] = f64::INFINITY;
        for w in 1..len - 1 {
            distance[order[w]] += (value(order[w + 1]) - value(order[w - 1])) / (hi - lo);
        }
    }
    distance
}

/// Rank and crowding of every individual, for tournament comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standing {
    pub rank: usize,
    pub crowding: f64,
}

impl Standing {
    /// Lower rank first, then larger crowding distance.
    pub fn compare(&self, other: &Standing) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(other.crowding.total_cmp(&self.crowding))
    }
}

/// Chooses up to `keep` survivors front by front, filling the last partial
/// front by descending crowding distance. Returns survivor indices and their
/// standings.
pub fn select_survivors(
    objs: &[Objectives],
    sizes: &[usize],
    keep: usize,
) -> Vec<(usize, Standing)> {
    let fronts = preference_sort(objs, sizes);
    let mut out = Vec::with_capacity(keep);
    for (rank, front) in fronts.iter().enumerate() {
        if out.len() >= keep {
            break;
        }
        let crowding = crowding_distance(objs, front);
        let mut members: Vec<(usize, Standing)> = front
            .iter()
            .zip(crowding)
            .map(|(&i, crowding)| (i, Standing { rank, crowding }))
            .collect();
        if out.len() + members.len() > keep {
            members.sort_by(|a, b| b.1.crowding.total_cmp(&a.1.crowding).then(a.0.cmp(&b.0)));
            members.truncate(keep - out.len());
        }
        out.extend(members);
    }
    out
}
