//! Exchanges that turn a tiling into a strictly larger one.
//!
//! Besides the trivial case of a copy inside the uncovered set `U`, three
//! replacements are tried:
//!
//! * six vertices of `U` with the same link between two members, containing
//!   a matching `a1b1, a2b2, a3b3`, give three copies `u1 a_k b_k u2` that
//!   replace the two members;
//! * four vertices of `U` sharing a link on `(Vi, Vj)` covered inside `Vj`,
//!   and four sharing a link on `(Vi, Vk)` covered inside `Vk`, give four
//!   copies replacing `Vi, Vj, Vk`;
//! * two disjoint copies inside `U ∪ Vi` replace `Vi`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::hypergraph::ThreeGraph;
use crate::tiling::classify::{classify_mask, link_mask, mask_has, LinkClassKind, LinkWitness};
use crate::tiling::{extend_to_maximal, find_y_within, YCopy, YTiling};
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exchange {
    /// A copy inside the uncovered set.
    Free,
    /// Two members replaced by three copies.
    TwoForThree,
    /// Three members replaced by four copies.
    ThreeForFour,
    /// One member replaced by two copies.
    OneForTwo,
}

#[derive(Debug, Clone)]
pub struct Improvement {
    pub tiling: YTiling,
    pub exchange: Exchange,
}

const ONE_FOR_TWO_TRIALS: usize = 256;

fn replace(tiling: &YTiling, drop: &[usize], add: Vec<YCopy>) -> YTiling {
    let mut copies: Vec<YCopy> = tiling
        .copies
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, c)| *c)
        .collect();
    copies.extend(add);
    YTiling { copies }
}

/// Groups of uncovered vertices by their labelled link on `(Vi, Vj)`.
fn link_groups(h: &ThreeGraph, u: &[Vertex], vi: &[Vertex; 4], vj: &[Vertex; 4]) -> BTreeMap<u16, Vec<Vertex>> {
    let mut groups: BTreeMap<u16, Vec<Vertex>> = BTreeMap::new();
    for &x in u {
        let m = link_mask(h, x, vi, vj);
        if m.count_ones() >= 7 {
            groups.entry(m).or_default().push(x);
        }
    }
    groups
}

fn two_for_three(h: &ThreeGraph, tiling: &YTiling, u: &[Vertex]) -> Option<YTiling> {
    let members: Vec<[Vertex; 4]> = tiling.copies.iter().map(|c| c.0).collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            for (mask, group) in link_groups(h, u, &members[i], &members[j]) {
                if group.len() < 6 {
                    continue;
                }
                let c = classify_mask(mask);
                let LinkWitness::Matching(pairs) = c.witness else {
                    continue;
                };
                let add = pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| YCopy([group[2 * k], members[i][a], members[j][b], group[2 * k + 1]]))
                    .collect();
                return Some(replace(tiling, &[i, j], add));
            }
        }
    }
    None
}

/// A candidate for the three-for-four exchange: `group` shares `mask` on
/// `(Vi, Vj)`, covered by two vertices of `Vj`.
struct Fan {
    j: usize,
    mask: u16,
    cover: [usize; 2],
    group: Vec<Vertex>,
}

const PERMS4: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a + b + c <= 6 {
                    let d = 6 - a - b - c;
                    if a != b && a != c && b != c && d < 4 && d != a && d != b && d != c {
                        out[k] = [a, b, c, d];
                        k += 1;
                    }
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

fn three_for_four(h: &ThreeGraph, tiling: &YTiling, u: &[Vertex]) -> Option<YTiling> {
    let members: Vec<[Vertex; 4]> = tiling.copies.iter().map(|c| c.0).collect();
    for i in 0..members.len() {
        let mut fans = Vec::new();
        for j in (0..members.len()).filter(|&j| j != i) {
            for (mask, group) in link_groups(h, u, &members[i], &members[j]) {
                if group.len() < 4 {
                    continue;
                }
                let c = classify_mask(mask);
                if c.kind != LinkClassKind::Ge7Two {
                    continue;
                }
                if let LinkWitness::Cover { left, right } = c.witness {
                    if left.is_empty() && right.len() == 2 {
                        fans.push(Fan {
                            j,
                            mask,
                            cover: [right[0], right[1]],
                            group,
                        });
                    }
                }
            }
        }
        for (f1, f2) in fans.iter().enumerate().flat_map(|(x, f1)| fans[x + 1..].iter().map(move |f2| (f1, f2))) {
            if f1.j == f2.j {
                continue;
            }
            let Some(us) = disjoint_quartets(&f1.group, &f2.group) else {
                continue;
            };
            // Positions in Vi: a, b matched to the first cover, c, d to the second.
            let Some(p) = PERMS4.iter().find(|p| {
                mask_has(f1.mask, p[0], f1.cover[0])
                    && mask_has(f1.mask, p[1], f1.cover[1])
                    && mask_has(f2.mask, p[2], f2.cover[0])
                    && mask_has(f2.mask, p[3], f2.cover[1])
            }) else {
                continue;
            };
            let vi = members[i];
            let (vj, vk) = (members[f1.j], members[f2.j]);
            let add = vec![
                YCopy([us[0], vi[p[0]], vj[f1.cover[0]], us[1]]),
                YCopy([us[2], vi[p[1]], vj[f1.cover[1]], us[3]]),
                YCopy([us[4], vi[p[2]], vk[f2.cover[0]], us[5]]),
                YCopy([us[6], vi[p[3]], vk[f2.cover[1]], us[7]]),
            ];
            return Some(replace(tiling, &[i, f1.j, f2.j], add));
        }
    }
    None
}

/// Four vertices from each group, all eight distinct.
fn disjoint_quartets(g1: &[Vertex], g2: &[Vertex]) -> Option<[Vertex; 8]> {
    let only1: Vec<Vertex> = g1.iter().copied().filter(|v| !g2.contains(v)).collect();
    let only2: Vec<Vertex> = g2.iter().copied().filter(|v| !g1.contains(v)).collect();
    let mut both: Vec<Vertex> = g1.iter().copied().filter(|v| g2.contains(v)).collect();
    let mut first: Vec<Vertex> = only1.into_iter().take(4).collect();
    while first.len() < 4 {
        first.push(both.pop()?);
    }
    let mut second: Vec<Vertex> = only2.into_iter().take(4).collect();
    while second.len() < 4 {
        second.push(both.pop()?);
    }
    let mut out = [0; 8];
    out[..4].copy_from_slice(&first);
    out[4..].copy_from_slice(&second);
    Some(out)
}

fn one_for_two(h: &ThreeGraph, tiling: &YTiling, free: &VertexSet) -> Option<YTiling> {
    for (i, c) in tiling.copies.iter().enumerate() {
        let mut s = free.clone();
        for v in c.0 {
            s.insert(v);
        }
        let mut trials = 0;
        for p in &s {
            for q in s.iter().filter(|&q| q > p) {
                let w: Vec<Vertex> = h.link_iter_in(p, q, &s).collect();
                for (x, &w1) in w.iter().enumerate() {
                    for &w2 in &w[x + 1..] {
                        trials += 1;
                        if trials > ONE_FOR_TWO_TRIALS {
                            break;
                        }
                        let y1 = YCopy([w1, p, q, w2]);
                        let mut rest = s.clone();
                        for v in y1.0 {
                            rest.remove(v);
                        }
                        if let Some(y2) = find_y_within(h, &rest) {
                            return Some(replace(tiling, &[i], vec![y1, y2]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// A strictly larger tiling obtained by one exchange, if any applies.
pub fn find_forbidden_configuration(h: &ThreeGraph, tiling: &YTiling) -> Option<Improvement> {
    let free = tiling.uncovered(h.n());
    if let Some(y) = find_y_within(h, &free) {
        let mut t = tiling.clone();
        t.copies.push(y);
        return Some(Improvement {
            tiling: t,
            exchange: Exchange::Free,
        });
    }
    let u = free.to_vec();
    if u.len() >= 6 {
        if let Some(t) = two_for_three(h, tiling, &u) {
            return Some(Improvement {
                tiling: t,
                exchange: Exchange::TwoForThree,
            });
        }
    }
    if u.len() >= 8 {
        if let Some(t) = three_for_four(h, tiling, &u) {
            return Some(Improvement {
                tiling: t,
                exchange: Exchange::ThreeForFour,
            });
        }
    }
    if u.len() >= 4 {
        if let Some(t) = one_for_two(h, tiling, &free) {
            return Some(Improvement {
                tiling: t,
                exchange: Exchange::OneForTwo,
            });
        }
    }
    None
}

/// Applies exchanges until none is found, re-extending to a maximal tiling
/// after each one.
pub fn augment_to_fixpoint(h: &ThreeGraph, tiling: &mut YTiling, order: &[Vertex]) {
    loop {
        extend_to_maximal(h, tiling, order);
        match find_forbidden_configuration(h, tiling) {
            Some(imp) => {
                debug_assert!(imp.tiling.len() > tiling.len());
                debug_assert!(imp.tiling.validate(h).is_ok());
                *tiling = imp.tiling;
            }
            None => break,
        }
    }
}
