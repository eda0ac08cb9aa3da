use crate::table::{ElementSet, SubgroupTable};
use crate::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetKind {
    Left,
    Right,
    Double,
}

/// A partition of a table's elements into coset classes.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub kind: CosetKind,
    /// Each class sorted; classes ordered by their smallest member.
    pub classes: Vec<ElementSet>,
    pub class_of: Vec<u32>,
    pub left_subgroup: Option<ElementSet>,
    pub right_subgroup: Option<ElementSet>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Canonically smallest member of each class.
    pub fn representatives(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    fn from_dsu(mut dsu: Dsu, kind: CosetKind, left: Option<ElementSet>, right: Option<ElementSet>) -> Self {
        let n = dsu.parent.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<ElementSet> = Vec::new();
        let mut root_class = vec![u32::MAX; n];
        for g in 0..n as u32 {
            let r = dsu.find(g) as usize;
            if root_class[r] == u32::MAX {
                root_class[r] = classes.len() as u32;
                classes.push(Vec::new());
            }
            let c = root_class[r];
            class_of[g as usize] = c;
            classes[c as usize].push(g);
        }
        CosetSpace { kind, classes, class_of, left_subgroup: left, right_subgroup: right }
    }
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins, so roots are class minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn check_subgroup(g: &SubgroupTable, set: &[u32], what: &'static str) -> Result<(), GroupError> {
    if set.iter().any(|&x| x as usize >= g.order()) || !g.is_subgroup(set) {
        return Err(GroupError::NotSubgroup(what));
    }
    Ok(())
}

/// Right multiplication `x -> x * k` as a permutation.
pub fn right_permutation(g: &SubgroupTable, k: u32) -> Vec<u32> {
    let w = g.word_indices(k);
    let tables: Vec<&[u32]> = (0..g.generators.len()).map(|s| g.right_table(s)).collect();
    (0..g.order() as u32).map(|x| w.iter().fold(x, |acc, &s| tables[s as usize][acc as usize])).collect()
}

/// Classes `g K`.
pub fn left_cosets(g: &SubgroupTable, k: &[u32]) -> Result<CosetSpace, GroupError> {
    check_subgroup(g, k, "right factor")?;
    let mut dsu = Dsu::new(g.order());
    for kg in g.generating_set(k) {
        let perm = right_permutation(g, kg);
        for x in 0..g.order() as u32 {
            dsu.union(x, perm[x as usize]);
        }
    }
    let cs = CosetSpace::from_dsu(dsu, CosetKind::Left, None, Some(sorted(k)));
    debug_assert!(cs.classes.iter().all(|c| c.len() == k.len()));
    Ok(cs)
}

/// Classes `H g`.
pub fn right_cosets(g: &SubgroupTable, h: &[u32]) -> Result<CosetSpace, GroupError> {
    check_subgroup(g, h, "left factor")?;
    let mut dsu = Dsu::new(g.order());
    for hg in g.generating_set(h) {
        let perm = g.left_permutation(hg);
        for x in 0..g.order() as u32 {
            dsu.union(x, perm[x as usize]);
        }
    }
    Ok(CosetSpace::from_dsu(dsu, CosetKind::Right, Some(sorted(h)), None))
}

/// Classes `H g K`. The class count is cross-checked against the fixed-pair
/// count over `H x K`.
pub fn double_cosets(g: &SubgroupTable, h: &[u32], k: &[u32]) -> Result<CosetSpace, GroupError> {
    check_subgroup(g, h, "left factor")?;
    check_subgroup(g, k, "right factor")?;
    let mut dsu = Dsu::new(g.order());
    for hg in g.generating_set(h) {
        let perm = g.left_permutation(hg);
        for x in 0..g.order() as u32 {
            dsu.union(x, perm[x as usize]);
        }
    }
    for kg in g.generating_set(k) {
        let perm = right_permutation(g, kg);
        for x in 0..g.order() as u32 {
            dsu.union(x, perm[x as usize]);
        }
    }
    let cs = CosetSpace::from_dsu(dsu, CosetKind::Double, Some(sorted(h)), Some(sorted(k)));
    let counted = double_coset_count(g, h, k);
    if counted != cs.len() {
        return Err(GroupError::CountMismatch { partition: cs.len(), formula: counted });
    }
    Ok(cs)
}

/// `|H\G/K| = (1/|H||K|) sum_{(h,k)} #{g : h g k = g}`.
///
/// For fixed `g`, the pairs with `h g k = g` biject with `H g ∩ g K`
/// (take `k^-1`), so the sum is accumulated one `g` at a time.
pub fn double_coset_count(g: &SubgroupTable, h: &[u32], k: &[u32]) -> usize {
    let left: Vec<Vec<u32>> = h.iter().map(|&x| g.left_permutation(x)).collect();
    let right: Vec<Vec<u32>> = k.iter().map(|&x| right_permutation(g, x)).collect();
    let mut stamp = vec![u32::MAX; g.order()];
    let mut total: u64 = 0;
    for x in 0..g.order() {
        for p in &left {
            stamp[p[x] as usize] = x as u32;
        }
        total += right.iter().filter(|p| stamp[p[x] as usize] == x as u32).count() as u64;
    }
    let denom = (h.len() * k.len()) as u64;
    debug_assert_eq!(total % denom, 0);
    (total / denom) as usize
}

fn sorted(s: &[u32]) -> ElementSet {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}
