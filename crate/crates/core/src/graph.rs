//! Labeled simple graphs on vertices `1..=n`, the net and spider
//! families, claw detection and stable-partition counting.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::symfunc::factorial;

/// Vertex sets are bitmasks; bit `v - 1` stands for label `v`.
pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub fn bit(v: usize) -> VertexSet {
    1u64 << (v - 1)
}

/// Labels in a vertex set, ascending.
pub fn labels(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let v = rest.trailing_zeros() as usize + 1;
        rest &= rest - 1;
        Some(v)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Pendant,
    Anchor,
    Buoy,
    SpecialPendant,
    SpecialAnchor,
    Leg,
    Isolated,
}

impl VertexRole {
    /// Body vertices of a net or spider.
    pub fn is_body(self) -> bool {
        matches!(self, VertexRole::Anchor | VertexRole::Buoy | VertexRole::SpecialAnchor)
    }

    /// Vertices outside the body that hang off a leg.
    pub fn is_pendant_like(self) -> bool {
        matches!(self, VertexRole::Pendant | VertexRole::SpecialPendant | VertexRole::Leg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetLabeling {
    /// Pendants `1..=m`, anchors `m+1..=2m` (anchor `m+i` carries pendant
    /// `i`), buoys last.
    PendantFirst,
    /// Buoys `1..=n-m`, anchors `n-m+1..=n`, pendants `n+1..=n+m` (anchor
    /// `i` carries pendant `i+m`).
    PendantLast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    adj: Vec<VertexSet>,
    roles: Option<BTreeMap<usize, VertexRole>>,
}

impl LabeledGraph {
    /// `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_VERTICES} vertices are supported, got {n}"
            )));
        }
        Ok(LabeledGraph { n, adj: vec![0; n], roles: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = LabeledGraph::edgeless(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) outside 1..={n}")));
            }
            g.connect(u, v);
        }
        Ok(g)
    }

    fn connect(&mut self, u: usize, v: usize) {
        self.adj[u - 1] |= bit(v);
        self.adj[v - 1] |= bit(u);
    }

    pub fn complete(n: usize) -> Self {
        let mut g = LabeledGraph::edgeless(n).expect("complete graph too large");
        for u in 1..=n {
            for v in u + 1..=n {
                g.connect(u, v);
            }
        }
        g
    }

    pub fn path(k: usize) -> Self {
        let mut g = LabeledGraph::edgeless(k).expect("path too large");
        for u in 1..k {
            g.connect(u, u + 1);
        }
        g
    }

    /// `K_{a,b}` with the `a` side labeled after the `b` side, so the claw
    /// `K_{1,3}` has its center at label 4.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut g = LabeledGraph::edgeless(a + b)?;
        for u in 1..=b {
            for v in b + 1..=a + b {
                g.connect(u, v);
            }
        }
        Ok(g)
    }

    pub fn claw() -> Self {
        LabeledGraph::complete_bipartite(1, 3).expect("claw fits")
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn all_vertices(&self) -> VertexSet {
        if self.n == MAX_VERTICES {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| labels(self.adj[u - 1]).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_stable(&self, set: VertexSet) -> bool {
        labels(set).all(|v| self.adj[v - 1] & set == 0)
    }

    pub fn roles(&self) -> Option<&BTreeMap<usize, VertexRole>> {
        self.roles.as_ref()
    }

    pub fn role(&self, v: usize) -> Option<VertexRole> {
        self.roles.as_ref()?.get(&v).copied()
    }

    pub fn vertices_with(&self, pred: impl Fn(VertexRole) -> bool) -> VertexSet {
        self.roles
            .iter()
            .flatten()
            .filter(|(_, &r)| pred(r))
            .fold(0, |acc, (&v, _)| acc | bit(v))
    }

    /// Attaches role annotations after checking them against the edges.
    pub fn with_roles(mut self, roles: BTreeMap<usize, VertexRole>) -> Result<Self> {
        if let Some((&v, _)) = roles.iter().find(|(&v, _)| v == 0 || v > self.n) {
            return Err(Error::InvalidArgument(format!("role for unknown vertex {v}")));
        }
        self.roles = Some(roles);
        self.check_roles()?;
        Ok(self)
    }

    pub fn without_roles(mut self) -> Self {
        self.roles = None;
        self
    }

    /// Anchors carry exactly one pendant, buoys none, and a special
    /// pendant is a leaf away from the body.
    pub fn check_roles(&self) -> Result<()> {
        let Some(roles) = &self.roles else { return Ok(()) };
        let pendants = self.vertices_with(|r| r == VertexRole::Pendant);
        let body = self.vertices_with(VertexRole::is_body);
        for (&v, &role) in roles {
            let touching = (self.adj[v - 1] & pendants).count_ones();
            let ok = match role {
                VertexRole::Anchor | VertexRole::SpecialAnchor => touching == 1,
                VertexRole::Buoy => touching == 0,
                VertexRole::SpecialPendant => self.degree(v) == 1 && self.adj[v - 1] & body == 0,
                _ => true,
            };
            if !ok {
                return Err(Error::InvalidArgument(format!("role {role:?} violated at vertex {v}")));
            }
        }
        Ok(())
    }

    /// `GN_{n,m}`: `K_n` with `m` pendants on distinct body vertices.
    ///
    /// Returns `None` unless `n >= m`. `GN_{0,0}` is the empty graph, which
    /// is what the net recurrence produces at `n = m = 1`.
    pub fn generalized_net(n: usize, m: usize, labeling: NetLabeling) -> Option<Self> {
        if m > n || n + m > MAX_VERTICES {
            return None;
        }
        let mut g = LabeledGraph::edgeless(n + m).ok()?;
        let mut roles = BTreeMap::new();
        let (body, pendant_of): (Vec<usize>, Box<dyn Fn(usize) -> usize>) = match labeling {
            NetLabeling::PendantFirst => ((m + 1..=n + m).collect(), Box::new(move |a| a - m)),
            NetLabeling::PendantLast => ((1..=n).collect(), Box::new(move |a| a + m)),
        };
        let anchors: Vec<usize> = match labeling {
            NetLabeling::PendantFirst => (m + 1..=2 * m).collect(),
            NetLabeling::PendantLast => (n - m + 1..=n).collect(),
        };
        for (i, &u) in body.iter().enumerate() {
            for &v in &body[i + 1..] {
                g.connect(u, v);
            }
            roles.insert(u, VertexRole::Buoy);
        }
        for &a in &anchors {
            let p = pendant_of(a);
            g.connect(a, p);
            roles.insert(a, VertexRole::Anchor);
            roles.insert(p, VertexRole::Pendant);
        }
        g.with_roles(roles).ok()
    }

    /// `GS_{n,legs}`: `K_n` with paths of the given lengths attached at
    /// distinct body vertices.
    ///
    /// Labels run over the legs first (each leg from its free end towards
    /// the body), then the anchors in leg order, then the buoys. For legs
    /// `(2,1^{m-1})` this puts the special pendant at label 1. Returns
    /// `None` unless `n >= 1` and `n >= ℓ(legs)`.
    pub fn generalized_spider(n: usize, legs: &Partition) -> Option<Self> {
        let k = legs.len();
        let total = n + legs.size();
        if n == 0 || k > n || total > MAX_VERTICES {
            return None;
        }
        let mut g = LabeledGraph::edgeless(total).ok()?;
        let mut roles = BTreeMap::new();
        let special = legs.parts().first() == Some(&2) && legs.parts()[1..].iter().all(|&p| p == 1);
        let leg_vertices = legs.size();
        let mut next = 1;
        for (i, &len) in legs.parts().iter().enumerate() {
            let anchor = leg_vertices + i + 1;
            // tip .. attachment
            let path: Vec<usize> = (next..next + len).collect();
            next += len;
            for w in path.windows(2) {
                g.connect(w[0], w[1]);
            }
            let attach = *path.last().expect("legs are nonempty");
            g.connect(attach, anchor);
            for &v in &path {
                roles.insert(v, VertexRole::Leg);
            }
            roles.insert(attach, VertexRole::Pendant);
            let anchor_role = if special && i == 0 { VertexRole::SpecialAnchor } else { VertexRole::Anchor };
            roles.insert(anchor, anchor_role);
            if special && i == 0 {
                roles.insert(path[0], VertexRole::SpecialPendant);
            }
        }
        let body: Vec<usize> = (leg_vertices + 1..=total).collect();
        for (i, &u) in body.iter().enumerate() {
            for &v in &body[i + 1..] {
                g.connect(u, v);
            }
            roles.entry(u).or_insert(VertexRole::Buoy);
        }
        g.with_roles(roles).ok()
    }

    /// Disjoint union with a path on `k ∈ {1, 2}` vertices carrying the
    /// largest labels.
    pub fn with_extra_path(&self, k: usize) -> Result<Self> {
        if !(1..=2).contains(&k) {
            return Err(Error::InvalidArgument(format!("extra path must have 1 or 2 vertices, got {k}")));
        }
        let mut g = self.disjoint_union(&LabeledGraph::path(k))?;
        if let Some(roles) = g.roles.as_mut() {
            let role = if k == 1 { VertexRole::Isolated } else { VertexRole::Leg };
            for v in self.n + 1..=self.n + k {
                roles.insert(v, role);
            }
        }
        Ok(g)
    }

    /// Disjoint union; `other`'s labels are shifted past ours. Roles are
    /// kept only if both sides carry them, except that an unannotated
    /// right-hand side is allowed.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<Self> {
        let mut g = LabeledGraph::edgeless(self.n + other.n)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        for (u, v) in other.edges() {
            g.connect(u + self.n, v + self.n);
        }
        g.roles = self.roles.clone().map(|mut roles| {
            if let Some(theirs) = &other.roles {
                roles.extend(theirs.iter().map(|(&v, &r)| (v + self.n, r)));
            }
            roles
        });
        Ok(g)
    }

    /// Applies `new_label = perm[old_label - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || !perm.iter().all(|&v| v >= 1 && v <= self.n && !std::mem::replace(&mut seen[v - 1], true))
        {
            return Err(Error::InvalidArgument("relabeling is not a permutation".into()));
        }
        let mut g = LabeledGraph::edgeless(self.n)?;
        for (u, v) in self.edges() {
            g.connect(perm[u - 1], perm[v - 1]);
        }
        g.roles = self
            .roles
            .as_ref()
            .map(|roles| roles.iter().map(|(&v, &r)| (perm[v - 1], r)).collect());
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = bit(1);
        let mut frontier = bit(1);
        while frontier != 0 {
            let next = labels(frontier).fold(0, |acc, v| acc | self.adj[v - 1]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen == self.all_vertices()
    }

    /// True iff no four vertices induce `K_{1,3}`; checks every 4-subset.
    pub fn is_claw_free(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let set = bit(a) | bit(b) | bit(c) | bit(d);
                        let mut degs: Vec<u32> =
                            [a, b, c, d].iter().map(|&v| (self.adj[v - 1] & set).count_ones()).collect();
                        degs.sort_unstable();
                        if degs == [1, 1, 1, 3] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Semi-ordered stable partitions of type `mu`: unordered stable set
    /// partitions with block sizes `mu`, times `Π r_j!` for the
    /// multiplicities `r_j` of the part sizes.
    pub fn count_semi_ordered_stable_partitions(&self, mu: &Partition) -> Result<BigInt> {
        if mu.size() != self.n {
            return Err(Error::SizeMismatch { partition: mu.size(), vertices: self.n });
        }
        let sizes = std::cell::RefCell::new(mu.multiplicities());
        let mut count = 0u64;
        self.stable_partitions_rec(
            self.all_vertices(),
            &mut |block_size| {
                let mut sizes = sizes.borrow_mut();
                if sizes.get(block_size).copied().unwrap_or(0) == 0 {
                    return false;
                }
                sizes[block_size] -= 1;
                true
            },
            &mut |block_size| sizes.borrow_mut()[block_size] += 1,
            &mut || count += 1,
        );
        let weight: BigInt = mu.multiplicities().iter().map(|&r| factorial(r)).product();
        Ok(BigInt::from(count) * weight)
    }

    /// Number of unordered stable set partitions of each type.
    pub fn stable_partition_type_counts(&self) -> BTreeMap<Partition, u64> {
        let mut counts = BTreeMap::new();
        let stack = std::cell::RefCell::new(Vec::new());
        self.stable_partitions_rec(
            self.all_vertices(),
            &mut |size| {
                stack.borrow_mut().push(size);
                true
            },
            &mut |_| {
                stack.borrow_mut().pop();
            },
            &mut || {
                let mut parts = stack.borrow().clone();
                parts.sort_unstable_by(|a, b| b.cmp(a));
                *counts.entry(Partition::new(parts).expect("positive parts")).or_insert(0) += 1;
            },
        );
        counts
    }

    /// Canonical backtracking: the smallest unassigned vertex always opens
    /// the next block, so every unordered partition is produced once.
    fn stable_partitions_rec(
        &self,
        remaining: VertexSet,
        enter: &mut dyn FnMut(usize) -> bool,
        leave: &mut dyn FnMut(usize),
        found: &mut dyn FnMut(),
    ) {
        if remaining == 0 {
            found();
            return;
        }
        let v = remaining.trailing_zeros() as usize + 1;
        let candidates = remaining & !bit(v) & !self.adj[v - 1];
        self.blocks_rec(bit(v), candidates, remaining, enter, leave, found);
    }

    fn blocks_rec(
        &self,
        block: VertexSet,
        candidates: VertexSet,
        remaining: VertexSet,
        enter: &mut dyn FnMut(usize) -> bool,
        leave: &mut dyn FnMut(usize),
        found: &mut dyn FnMut(),
    ) {
        let size = block.count_ones() as usize;
        if enter(size) {
            self.stable_partitions_rec(remaining & !block, enter, leave, found);
            leave(size);
        }
        for u in labels(candidates) {
            let later = candidates & !((bit(u) << 1) - 1);
            self.blocks_rec(block | bit(u), later & !self.adj[u - 1], remaining, enter, leave, found);
        }
    }

    /// Cache key: vertex count and sorted edge list under the current labels.
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize)>) {
        (self.n, self.edges())
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph on {} vertices, edges {:?}", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roles: Option<BTreeMap<String, VertexRole>>,
}

impl Serialize for LabeledGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            roles: self
                .roles
                .as_ref()
                .map(|roles| roles.iter().map(|(v, r)| (v.to_string(), *r)).collect()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GraphJson::deserialize(deserializer)?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = LabeledGraph::from_edges(raw.n, &edges).map_err(D::Error::custom)?;
        match raw.roles {
            None => Ok(g),
            Some(roles) => {
                let roles = roles
                    .into_iter()
                    .map(|(k, r)| k.parse::<usize>().map(|v| (v, r)))
                    .collect::<std::result::Result<BTreeMap<_, _>, _>>()
                    .map_err(D::Error::custom)?;
                g.with_roles(roles).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn net(n: usize, m: usize) -> LabeledGraph {
        LabeledGraph::generalized_net(n, m, NetLabeling::PendantFirst).unwrap()
    }

    #[test]
    fn pendant_first_net_layout() {
        let g = net(4, 2);
        assert_eq!(g.n_vertices(), 6);
        assert_eq!(g.role(1), Some(VertexRole::Pendant));
        assert_eq!(g.role(2), Some(VertexRole::Pendant));
        assert_eq!(g.role(3), Some(VertexRole::Anchor));
        assert_eq!(g.role(4), Some(VertexRole::Anchor));
        assert_eq!(g.role(5), Some(VertexRole::Buoy));
        assert_eq!(g.role(6), Some(VertexRole::Buoy));
        assert!(g.adjacent(1, 3) && g.adjacent(2, 4));
        assert!(!g.adjacent(1, 4));
    }

    #[test]
    fn pendant_last_net_layout() {
        let g = LabeledGraph::generalized_net(5, 3, NetLabeling::PendantLast).unwrap();
        assert_eq!(g.vertices_with(|r| r == VertexRole::Buoy), bit(1) | bit(2));
        for anchor in 3..=5 {
            assert_eq!(g.role(anchor), Some(VertexRole::Anchor));
            assert!(g.adjacent(anchor, anchor + 3));
            assert_eq!(g.degree(anchor + 3), 1);
        }
    }

    #[test]
    fn net_sizes_and_invalid_parameters() {
        let k1 = net(1, 0);
        assert_eq!((k1.n_vertices(), k1.n_edges()), (1, 0));
        let g = net(5, 3);
        assert_eq!((g.n_vertices(), g.n_edges()), (8, 13));
        assert!(LabeledGraph::generalized_net(2, 3, NetLabeling::PendantFirst).is_none());
        assert_eq!(net(0, 0).n_vertices(), 0);
        for n in 1..=6 {
            for m in 0..=n {
                let g = net(n, m);
                assert_eq!(g.vertices_with(|r| r == VertexRole::Anchor).count_ones() as usize, m);
                assert_eq!(g.vertices_with(|r| r == VertexRole::Buoy).count_ones() as usize, n - m);
            }
        }
    }

    #[test]
    fn spider_sizes() {
        let g = LabeledGraph::generalized_spider(5, &p(&[4, 2, 1])).unwrap();
        assert_eq!(g.n_vertices(), 12);
        let k3 = LabeledGraph::generalized_spider(3, &Partition::empty()).unwrap();
        assert_eq!(k3.edges(), LabeledGraph::complete(3).edges());
        assert!(LabeledGraph::generalized_spider(2, &p(&[1, 1, 1])).is_none());
    }

    #[test]
    fn spider_with_one_long_leg_has_special_roles() {
        let g = LabeledGraph::generalized_spider(4, &p(&[2, 1, 1])).unwrap();
        assert_eq!(g.role(1), Some(VertexRole::SpecialPendant));
        assert_eq!(g.role(2), Some(VertexRole::Pendant));
        assert!(g.adjacent(1, 2));
        assert_eq!(g.role(5), Some(VertexRole::SpecialAnchor));
        assert!(g.adjacent(2, 5));
        assert_eq!(g.role(8), Some(VertexRole::Buoy));
        g.check_roles().unwrap();
    }

    #[test]
    fn spider_of_single_legs_is_the_net() {
        let s = LabeledGraph::generalized_spider(3, &p(&[1, 1])).unwrap();
        assert_eq!(s.edges(), net(3, 2).edges());
        assert_eq!(s.roles(), net(3, 2).roles());
    }

    #[test]
    fn extra_paths() {
        let two = LabeledGraph::complete(1).with_extra_path(1).unwrap();
        assert_eq!((two.n_vertices(), two.n_edges()), (2, 0));
        let g = net(2, 1).with_extra_path(1).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (4, 2));
        assert_eq!(g.role(4), Some(VertexRole::Isolated));
        let g = LabeledGraph::complete(3).with_extra_path(2).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (5, 4));
        assert!(g.adjacent(4, 5));
        assert!(LabeledGraph::complete(3).with_extra_path(3).is_err());
    }

    #[test]
    fn claw_detection() {
        assert!(!LabeledGraph::claw().is_claw_free());
        assert!(net(5, 3).is_claw_free());
        assert!(LabeledGraph::path(4).is_claw_free());
    }

    #[test]
    fn broken_roles_are_rejected() {
        let g = LabeledGraph::path(3);
        let roles = [(1, VertexRole::Pendant), (2, VertexRole::Buoy)].into_iter().collect();
        assert!(g.with_roles(roles).is_err());
    }

    #[test]
    fn stable_partition_examples() {
        let k2 = LabeledGraph::complete(2);
        assert_eq!(k2.count_semi_ordered_stable_partitions(&p(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(k2.count_semi_ordered_stable_partitions(&p(&[2])).unwrap(), BigInt::from(0));
        let claw = LabeledGraph::claw();
        assert_eq!(claw.count_semi_ordered_stable_partitions(&p(&[3, 1])).unwrap(), BigInt::from(1));
        assert!(k2.count_semi_ordered_stable_partitions(&p(&[1])).is_err());
    }

    #[test]
    fn singletons_and_cliques() {
        for n in 1..=6 {
            let ones = Partition::rectangle(1, n);
            for g in [LabeledGraph::complete(n), LabeledGraph::path(n), LabeledGraph::edgeless(n).unwrap()] {
                assert_eq!(g.count_semi_ordered_stable_partitions(&ones).unwrap(), factorial(n));
            }
            for mu in Partition::all(n).into_iter().filter(|mu| mu.parts()[0] >= 2) {
                assert_eq!(
                    LabeledGraph::complete(n).count_semi_ordered_stable_partitions(&mu).unwrap(),
                    BigInt::from(0)
                );
            }
        }
    }

    #[test]
    fn type_counts_agree_with_targeted_count() {
        let g = net(3, 2);
        let counts = g.stable_partition_type_counts();
        for mu in Partition::all(5) {
            let unordered = counts.get(&mu).copied().unwrap_or(0);
            let weight: BigInt = mu.multiplicities().iter().map(|&r| factorial(r)).product();
            assert_eq!(
                g.count_semi_ordered_stable_partitions(&mu).unwrap(),
                BigInt::from(unordered) * weight
            );
        }
        // edgeless graph on 4 vertices: all Bell(4) = 15 set partitions
        let total: u64 = LabeledGraph::edgeless(4).unwrap().stable_partition_type_counts().values().sum();
        assert_eq!(total, 15);
    }

    #[test]
    fn relabel_and_json() {
        let g = net(2, 1);
        let h = g.relabel(&[3, 1, 2]).unwrap();
        assert_eq!(h.role(3), Some(VertexRole::Pendant));
        assert_eq!(h.n_edges(), 2);
        assert!(g.relabel(&[1, 1, 2]).is_err());
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"edges":[[1,2],[2,3]],"roles":{"1":"pendant","2":"anchor","3":"buoy"}}"#
        );
        let back: LabeledGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<LabeledGraph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }
}
