//! ADE types of root configurations.

use std::fmt;

use crate::fermat::{Geometry, NsVector};

use super::NsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    D,
    E,
}

/// A multiset of Dynkin types, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AdeType(pub Vec<(Letter, usize)>);

impl AdeType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|(_, r)| r).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `0`, `6A1`, `6A1+A2`, `D4+2E6`, ….
    pub fn parse(s: &str) -> Result<AdeType, NsError> {
        let s = s.trim();
        let mut out = Vec::new();
        if s == "0" {
            return Ok(AdeType(out));
        }
        for part in s.split('+') {
            let part = part.trim();
            let pos = part
                .find(['A', 'D', 'E'])
                .ok_or_else(|| NsError::Precondition(format!("bad ADE term {part:?}")))?;
            let mult: usize = if pos == 0 {
                1
            } else {
                part[..pos].parse().map_err(|_| NsError::Precondition(format!("bad ADE term {part:?}")))?
            };
            let letter = match &part[pos..pos + 1] {
                "A" => Letter::A,
                "D" => Letter::D,
                _ => Letter::E,
            };
            let rank: usize =
                part[pos + 1..].parse().map_err(|_| NsError::Precondition(format!("bad ADE term {part:?}")))?;
            for _ in 0..mult {
                out.push((letter, rank));
            }
        }
        out.sort();
        Ok(AdeType(out))
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let t = self.0[i];
            let n = self.0[i..].iter().take_while(|&&u| u == t).count();
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if n > 1 {
                write!(f, "{n}")?;
            }
            write!(f, "{:?}{}", t.0, t.1)?;
            i += n;
        }
        Ok(())
    }
}

/// Type of a connected Dynkin graph from its adjacency lists.
fn classify_component(adj: &[Vec<usize>], nodes: &[usize]) -> Option<(Letter, usize)> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges != n - 1 {
        return None;
    }
    let deg = |v: usize| adj[v].len();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branch.as_slice() {
        [] => Some((Letter::A, n)),
        [b] if deg(*b) == 3 => {
            // arm lengths from the branch point
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Some((Letter::D, n)),
                (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Some((Letter::E, n)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// ADE type of a set of roots with pairwise intersections in `{0, 1}`.
pub fn ade_type(geom: &Geometry, roots: &[NsVector]) -> Result<AdeType, NsError> {
    let n = roots.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        if geom.pair(&roots[i], &roots[i]) != -2 {
            return Err(NsError::Check("not a root".into()));
        }
        for j in i + 1..n {
            match geom.pair(&roots[i], &roots[j]) {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                x => return Err(NsError::Check(format!("roots {i}, {j} meet in {x}"))),
            }
        }
    }
    ade_of_graph(&adj)
}

pub fn ade_of_graph(adj: &[Vec<usize>]) -> Result<AdeType, NsError> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        out.push(classify_component(adj, &comp).ok_or_else(|| NsError::Check("component is not of ADE type".into()))?);
    }
    out.sort();
    Ok(AdeType(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    #[test]
    fn shapes() {
        assert_eq!(ade_of_graph(&[]).unwrap().to_string(), "0");
        assert_eq!(ade_of_graph(&graph(6, &[])).unwrap().to_string(), "6A1");
        assert_eq!(ade_of_graph(&graph(3, &[(0, 1), (1, 2)])).unwrap().to_string(), "A3");
        assert_eq!(ade_of_graph(&graph(4, &[(0, 1), (0, 2), (0, 3)])).unwrap().to_string(), "D4");
        let e6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]);
        assert_eq!(ade_of_graph(&e6).unwrap().to_string(), "E6");
        let e8 = graph(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]);
        assert_eq!(ade_of_graph(&e8).unwrap().to_string(), "E8");
        let mixed = graph(5, &[(1, 2)]);
        assert_eq!(ade_of_graph(&mixed).unwrap().to_string(), "3A1+A2");
        assert!(ade_of_graph(&graph(3, &[(0, 1), (1, 2), (2, 0)])).is_err());
        let t = AdeType::parse("6A1+A2").unwrap();
        assert_eq!(t.rank(), 8);
        assert_eq!(t.to_string(), "6A1+A2");
    }
}
