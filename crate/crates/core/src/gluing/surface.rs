use petgraph::unionfind::UnionFind;

use super::word::GluingWord;
use crate::{Error, Result};

/// Topology of a glued polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedSurface {
    /// Class index of each polygon vertex `v_0..v_{N-1}`, numbered in order
    /// of first appearance.
    pub vertex_classes: Vec<usize>,
    /// Free labels of each boundary in traced order, each rotated to start
    /// at its smallest label; sorted.
    pub boundary_cycles: Vec<Vec<u16>>,
    pub puncture_count: usize,
    pub genus: usize,
    pub euler_char: i64,
}

impl GluedSurface {
    pub fn vertex_count(&self) -> usize {
        self.vertex_classes.iter().max().map_or(0, |m| m + 1)
    }

    /// Boundary sizes, traced boundaries first (largest first), then one
    /// zero per puncture.
    pub fn boundary_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.boundary_cycles.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.extend(std::iter::repeat_n(0, self.puncture_count));
        sizes
    }

    /// `Σn + 4g + 2L - 2` with `L` counting boundaries and punctures.
    pub fn implied_polygon_size(&self) -> usize {
        let edges: usize = self.boundary_cycles.iter().map(Vec::len).sum();
        let l = self.boundary_cycles.len() + self.puncture_count;
        (edges + 4 * self.genus + 2 * l).saturating_sub(2)
    }
}

/// First free slot reached from the end of free edge `slot`, walking
/// around the shared vertex through glued edges.
///
/// Each step `k -> μ(k) + 1` is injective, so starting from a corner next
/// to a free edge the walk reaches another free edge within `N` steps.
pub fn boundary_successor(word: &GluingWord, slot: usize) -> Result<usize> {
    let n = word.len();
    let mut k = (slot + 1) % n;
    for _ in 0..=n {
        match word.partner(k) {
            None => return Ok(k),
            Some(p) => k = (p + 1) % n,
        }
    }
    Err(Error::Topology(format!(
        "boundary walk from slot {slot} of {word} does not terminate"
    )))
}

/// Glues the paired edges orientably: `e_i ~ e_j` identifies `v_i ~ v_{j+1}`
/// and `v_{i+1} ~ v_j`.
///
/// Fails only if an internal invariant breaks (non-terminating or
/// non-injective boundary walk, non-integral genus, signature/size
/// mismatch).
pub fn glue(word: &GluingWord) -> Result<GluedSurface> {
    let n = word.len();
    let mut classes = UnionFind::<usize>::new(n);
    for i in 0..n {
        if let Some(j) = word.partner(i) {
            if i < j {
                classes.union(i, (j + 1) % n);
                classes.union((i + 1) % n, j);
            }
        }
    }

    let mut dense = vec![usize::MAX; n];
    let mut vertex_classes = Vec::with_capacity(n);
    let mut vertices = 0;
    for v in 0..n {
        let root = classes.find(v);
        if dense[root] == usize::MAX {
            dense[root] = vertices;
            vertices += 1;
        }
        vertex_classes.push(dense[root]);
    }

    let mut touched = vec![false; vertices];
    let mut label_at = vec![None; n];
    let mut free = 0;
    for (i, label) in word.free_slots() {
        touched[vertex_classes[i]] = true;
        touched[vertex_classes[(i + 1) % n]] = true;
        label_at[i] = Some(label);
        free += 1;
    }
    let puncture_count = touched.iter().filter(|t| !**t).count();

    let mut succ = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    for (i, _) in word.free_slots() {
        let next = boundary_successor(word, i)?;
        if std::mem::replace(&mut hit[next], true) {
            return Err(Error::Topology(format!(
                "boundary walk of {word} is not a permutation at slot {next}"
            )));
        }
        succ[i] = next;
    }

    let mut seen = vec![false; n];
    let mut boundary_cycles = Vec::new();
    for (start, _) in word.free_slots() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push(label_at[k].expect("free slot"));
            k = succ[k];
        }
        let lead = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
        cycle.rotate_left(lead);
        boundary_cycles.push(cycle);
    }
    boundary_cycles.sort_unstable();

    let glued_pairs = (n - free) / 2;
    let euler_char = vertices as i64 - (n - glued_pairs) as i64 + 1;
    let twice_genus = 2 - euler_char - boundary_cycles.len() as i64;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::Topology(format!(
            "{word}: Euler characteristic {euler_char} with {} boundaries gives no integral genus",
            boundary_cycles.len()
        )));
    }
    let surface = GluedSurface {
        vertex_classes,
        boundary_cycles,
        puncture_count,
        genus: (twice_genus / 2) as usize,
        euler_char,
    };
    if surface.implied_polygon_size() != n {
        return Err(Error::Topology(format!(
            "{word}: signature implies a {}-gon",
            surface.implied_polygon_size()
        )));
    }
    Ok(surface)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glued(s: &str) -> GluedSurface {
        glue(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn cylinder() {
        let s = glued("a,1,a,2");
        assert_eq!(s.genus, 0);
        assert_eq!(s.boundary_cycles, vec![vec![1], vec![2]]);
        assert_eq!(s.puncture_count, 0);
        assert_eq!(s.euler_char, 0);
        // {v0, v3}, {v1, v2}
        assert_eq!(s.vertex_classes, vec![0, 1, 1, 0]);
    }

    #[test]
    fn torus() {
        let s = glued("a,b,a,b");
        assert_eq!(s.genus, 1);
        assert!(s.boundary_cycles.is_empty());
        assert_eq!(s.puncture_count, 1);
        assert_eq!(s.vertex_count(), 1);
        assert_eq!(s.euler_char, 0);
    }

    #[test]
    fn disc_with_cone_point() {
        let s = glued("a,a,1,2");
        assert_eq!(s.genus, 0);
        assert_eq!(s.boundary_cycles, vec![vec![1, 2]]);
        assert_eq!(s.puncture_count, 1);
        assert_eq!(s.euler_char, 1);
        assert_eq!(s.boundary_sizes(), vec![2, 0]);
        assert_eq!(s.implied_polygon_size(), 4);
    }

    #[test]
    fn two_gon_sphere() {
        let s = glued("a,a");
        assert_eq!(s.genus, 0);
        assert!(s.boundary_cycles.is_empty());
        assert_eq!(s.puncture_count, 2);
        assert_eq!(s.euler_char, 2);
    }

    #[test]
    fn traced_direction() {
        assert_eq!(glued("1,2,3").boundary_cycles, vec![vec![1, 2, 3]]);
        assert_eq!(glued("1,3,2").boundary_cycles, vec![vec![1, 3, 2]]);
        // x a b a b: one-holed torus
        let s = glued("1,a,b,a,b");
        assert_eq!((s.genus, s.puncture_count), (1, 0));
        assert_eq!(s.boundary_cycles, vec![vec![1]]);
    }

    #[test]
    fn successor_walk() {
        let word: GluingWord = "1,a,a,2".parse().unwrap();
        assert_eq!(boundary_successor(&word, 0).unwrap(), 3);
        assert_eq!(boundary_successor(&word, 3).unwrap(), 0);
    }
}
