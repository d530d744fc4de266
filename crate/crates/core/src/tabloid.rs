//! Special rim hook tabloids and their graph-filled variant.
//!
//! A special rim hook tabloid of shape λ is built by repeatedly removing a
//! rim hook that starts in the bottom cell of the first column. Such a
//! hook runs east along the bottom row, then alternates north and east
//! steps along the rim until it ends at the last cell of some row `r`;
//! every `r` gives a valid removal, so the hooks of a given diagram are
//! indexed by their end row. Fillings by graph vertices assign a stable
//! set to each hook and write it into the hook in increasing order from
//! the first-column cell.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock, RwLock};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, labels, LabeledGraph, VertexSet};
use crate::partition::{Composition, Partition};

/// A diagram cell; rows count from the top and columns from the left,
/// both starting at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(serializer)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    N,
    E,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RimHook {
    cells: Vec<Cell>,
    steps: Vec<Step>,
}

impl RimHook {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn north_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::N).count()
    }
}

/// Special rim hook tabloid; hooks are stored bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrhTabloid {
    shape: Partition,
    hooks: Vec<RimHook>,
    /// `owner[row-1][col-1]` = (hook index, position within the hook).
    owner: Vec<Vec<(usize, usize)>>,
}

impl SrhTabloid {
    fn from_hooks(shape: Partition, hooks: Vec<RimHook>) -> Self {
        let mut owner: Vec<Vec<(usize, usize)>> =
            shape.parts().iter().map(|&len| vec![(usize::MAX, 0); len]).collect();
        for (h, hook) in hooks.iter().enumerate() {
            for (pos, cell) in hook.cells.iter().enumerate() {
                owner[cell.row - 1][cell.col - 1] = (h, pos);
            }
        }
        SrhTabloid { shape, hooks, owner }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn hooks(&self) -> &[RimHook] {
        &self.hooks
    }

    pub fn north_steps(&self) -> usize {
        self.hooks.iter().map(RimHook::north_steps).sum()
    }

    /// `(-1)^(number of north steps)`.
    pub fn sign(&self) -> i64 {
        if self.north_steps().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Hook lengths from bottom to top.
    pub fn content(&self) -> Composition {
        Composition::new(self.hooks.iter().map(RimHook::len).collect()).expect("hooks are nonempty")
    }

    /// Hook index and position of a cell.
    pub fn owner(&self, cell: Cell) -> (usize, usize) {
        self.owner[cell.row - 1][cell.col - 1]
    }
}

impl Serialize for SrhTabloid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SrhTabloid", 2)?;
        s.serialize_field("shape", &self.shape)?;
        s.serialize_field("hooks", &self.hooks)?;
        s.end()
    }
}

/// The special rim hook of `rows` that starts at the bottom-left cell and
/// ends at the last cell of row `end_row` (1-based), together with the
/// rows left after removing it.
fn special_hook(rows: &[usize], end_row: usize) -> (RimHook, Vec<usize>) {
    let k = rows.len();
    let mut cells = Vec::new();
    let mut steps = Vec::new();
    for col in 1..=rows[k - 1] {
        if col > 1 {
            steps.push(Step::E);
        }
        cells.push(Cell { row: k, col });
    }
    for row in (end_row..k).rev() {
        let start = rows[row]; // length of the row below
        steps.push(Step::N);
        cells.push(Cell { row, col: start });
        for col in start + 1..=rows[row - 1] {
            steps.push(Step::E);
            cells.push(Cell { row, col });
        }
    }
    let mut rest: Vec<usize> = rows[..end_row - 1].to_vec();
    rest.extend((end_row..k).map(|row| rows[row] - 1));
    while rest.last() == Some(&0) {
        rest.pop();
    }
    (RimHook { cells, steps }, rest)
}

fn peel(rows: &[usize], hooks: &mut Vec<RimHook>, shape: &Partition, out: &mut Vec<SrhTabloid>) {
    if rows.is_empty() {
        out.push(SrhTabloid::from_hooks(shape.clone(), hooks.clone()));
        return;
    }
    // end rows from the bottom up give strictly increasing hook lengths
    for end_row in (1..=rows.len()).rev() {
        let (hook, rest) = special_hook(rows, end_row);
        hooks.push(hook);
        peel(&rest, hooks, shape, out);
        hooks.pop();
    }
}

/// Every special rim hook tabloid of `shape`, each exactly once.
pub fn enumerate_srh_tabloids(shape: &Partition) -> Vec<SrhTabloid> {
    let mut out = Vec::new();
    peel(shape.parts(), &mut Vec::new(), shape, &mut out);
    out
}

type TabloidCache = RwLock<HashMap<Partition, Arc<Vec<Arc<SrhTabloid>>>>>;

/// Memoized [`enumerate_srh_tabloids`].
pub fn srh_tabloids(shape: &Partition) -> Arc<Vec<Arc<SrhTabloid>>> {
    static CACHE: OnceLock<TabloidCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(found) = cache.read().expect("tabloid cache poisoned").get(shape) {
        return Arc::clone(found);
    }
    let built = Arc::new(enumerate_srh_tabloids(shape).into_iter().map(Arc::new).collect());
    let mut guard = cache.write().expect("tabloid cache poisoned");
    Arc::clone(guard.entry(shape.clone()).or_insert(built))
}

/// A special rim hook tabloid filled with the vertices of a graph.
///
/// `blocks[i]` is the vertex set of hook `i`; its labels occupy the hook's
/// cells in increasing order starting from the first-column cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrhGTabloid {
    base: Arc<SrhTabloid>,
    blocks: Vec<VertexSet>,
}

impl SrhGTabloid {
    pub fn base(&self) -> &SrhTabloid {
        &self.base
    }

    pub fn shape(&self) -> &Partition {
        &self.base.shape
    }

    pub fn sign(&self) -> i64 {
        self.base.sign()
    }

    pub fn content(&self) -> Composition {
        self.base.content()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    /// Vertices of hook `i` in reading order.
    pub fn hook_vertices(&self, i: usize) -> Vec<usize> {
        labels(self.blocks[i]).collect()
    }

    pub fn vertex_at(&self, cell: Cell) -> usize {
        let (hook, pos) = self.base.owner(cell);
        labels(self.blocks[hook]).nth(pos).expect("cell inside its hook")
    }

    /// Vertex in the bottom cell of the first column.
    pub fn bottom_vertex(&self) -> Option<usize> {
        let k = self.base.shape.len();
        (k > 0).then(|| self.vertex_at(Cell { row: k, col: 1 }))
    }

    pub fn filling(&self) -> BTreeMap<Cell, usize> {
        self.base
            .hooks
            .iter()
            .zip(&self.blocks)
            .flat_map(|(hook, &block)| hook.cells.iter().copied().zip(labels(block)))
            .collect()
    }

    /// Head (rows longer than 1) and tail (rows of length 1).
    pub fn split_head_tail(&self) -> (SubTabloid, SubTabloid) {
        let parts = self.base.shape.parts();
        let head_rows = parts.iter().take_while(|&&p| p > 1).count();
        (self.sub_tabloid(1..=head_rows), self.sub_tabloid(head_rows + 1..=parts.len()))
    }

    fn sub_tabloid(&self, rows: std::ops::RangeInclusive<usize>) -> SubTabloid {
        let inside = |cell: &Cell| rows.contains(&cell.row);
        let mut cells = Vec::new();
        let mut row_lengths = Vec::new();
        for row in rows.clone() {
            let len = self.base.shape.parts()[row - 1];
            row_lengths.push(len);
            for col in 1..=len {
                let cell = Cell { row, col };
                let (hook, pos) = self.base.owner(cell);
                let hook = &self.base.hooks[hook];
                let next = hook.cells.get(pos + 1).filter(|c| inside(c)).map(|_| hook.steps[pos]);
                cells.push(SubCell { vertex: self.vertex_at(cell), next });
            }
        }
        SubTabloid { row_lengths, cells }
    }
}

impl Serialize for SrhGTabloid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let filling: BTreeMap<String, usize> =
            self.filling().into_iter().map(|(cell, v)| (cell.to_string(), v)).collect();
        let mut s = serializer.serialize_struct("SrhGTabloid", 3)?;
        s.serialize_field("shape", &self.base.shape)?;
        s.serialize_field("hooks", &self.base.hooks)?;
        s.serialize_field("filling", &filling)?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct SubCell {
    vertex: usize,
    /// Step to the next cell of the same hook, when that cell is in the
    /// same part.
    next: Option<Step>,
}

/// The cells of a contiguous band of rows with their vertices and the
/// hook steps internal to the band, row indices renumbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubTabloid {
    row_lengths: Vec<usize>,
    cells: Vec<SubCell>,
}

impl SubTabloid {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn vertices(&self) -> VertexSet {
        self.cells.iter().fold(0, |acc, c| acc | bit(c.vertex))
    }

    /// Vertices in row-major order.
    pub fn vertex_sequence(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.vertex).collect()
    }
}

/// Greedy cover of a graph by cliques of size at least two. Each hook
/// holds at most one vertex of a clique, which bounds the search.
fn clique_cover(g: &LabeledGraph) -> Vec<VertexSet> {
    let mut uncovered = g.all_vertices();
    let mut cliques = Vec::new();
    while uncovered != 0 {
        let mut best = 0;
        max_clique(g, 0, uncovered, &mut best);
        if best.count_ones() < 2 {
            break;
        }
        cliques.push(best);
        uncovered &= !best;
    }
    cliques
}

fn max_clique(g: &LabeledGraph, current: VertexSet, candidates: VertexSet, best: &mut VertexSet) {
    if current.count_ones() + candidates.count_ones() <= best.count_ones() {
        return;
    }
    if candidates == 0 {
        *best = current;
        return;
    }
    let v = candidates.trailing_zeros() as usize + 1;
    max_clique(g, current | bit(v), candidates & g.neighbors(v), best);
    max_clique(g, current, candidates & !bit(v), best);
}

struct Filler<'a, F> {
    graph: &'a LabeledGraph,
    cliques: Vec<VertexSet>,
    current: SrhGTabloid,
    lengths: Vec<usize>,
    /// Allowed vertices for the bottom first-column cell.
    bottom: VertexSet,
    visit: F,
}

impl<F: FnMut(&SrhGTabloid) -> ControlFlow<()>> Filler<'_, F> {
    fn fill(&mut self, hook: usize, remaining: VertexSet) -> ControlFlow<()> {
        if hook == self.lengths.len() {
            return (self.visit)(&self.current);
        }
        let hooks_left = self.lengths.len() - hook;
        if self.cliques.iter().any(|&q| (q & remaining).count_ones() as usize > hooks_left) {
            return ControlFlow::Continue(());
        }
        self.choose(hook, self.lengths[hook], 0, remaining, remaining)
    }

    fn choose(
        &mut self,
        hook: usize,
        need: usize,
        block: VertexSet,
        candidates: VertexSet,
        remaining: VertexSet,
    ) -> ControlFlow<()> {
        if need == 0 {
            self.current.blocks[hook] = block;
            return self.fill(hook + 1, remaining & !block);
        }
        if (candidates.count_ones() as usize) < need {
            return ControlFlow::Continue(());
        }
        // the first pick of the bottom hook is its minimum, which lands in
        // the bottom cell
        let firsts = if hook == 0 && block == 0 { candidates & self.bottom } else { candidates };
        for u in labels(firsts) {
            let later = candidates & !((bit(u) << 1) - 1);
            self.choose(hook, need - 1, block | bit(u), later & !self.graph.neighbors(u), remaining)?;
        }
        ControlFlow::Continue(())
    }
}

/// Streams every special rim hook G-tabloid of `shape`. Nothing is
/// visited when the sizes disagree.
pub fn for_each_srh_g_tabloid<F>(shape: &Partition, g: &LabeledGraph, visit: F) -> ControlFlow<()>
where
    F: FnMut(&SrhGTabloid) -> ControlFlow<()>,
{
    fill_all(shape, g, g.all_vertices(), visit)
}

fn fill_all<F>(shape: &Partition, g: &LabeledGraph, bottom: VertexSet, visit: F) -> ControlFlow<()>
where
    F: FnMut(&SrhGTabloid) -> ControlFlow<()>,
{
    if shape.size() != g.n_vertices() {
        return ControlFlow::Continue(());
    }
    let bases = srh_tabloids(shape);
    let Some(first) = bases.first() else { return ControlFlow::Continue(()) };
    let mut filler = Filler {
        graph: g,
        cliques: clique_cover(g),
        current: SrhGTabloid { base: Arc::clone(first), blocks: Vec::new() },
        lengths: Vec::new(),
        bottom,
        visit,
    };
    for base in bases.iter() {
        filler.lengths = base.hooks.iter().map(RimHook::len).collect();
        filler.current = SrhGTabloid { base: Arc::clone(base), blocks: vec![0; base.hooks.len()] };
        filler.fill(0, g.all_vertices())?;
    }
    ControlFlow::Continue(())
}

/// `Σ sgn(T)` over the special rim hook G-tabloids of `shape`.
pub fn signed_count(shape: &Partition, g: &LabeledGraph) -> i64 {
    let mut total = 0;
    let _ = for_each_srh_g_tabloid(shape, g, |t| {
        total += t.sign();
        ControlFlow::Continue(())
    });
    total
}

pub fn enumerate_srh_g_tabloids(shape: &Partition, g: &LabeledGraph) -> Vec<SrhGTabloid> {
    let mut out = Vec::new();
    let _ = for_each_srh_g_tabloid(shape, g, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    });
    out
}

/// The G-tabloids of `shape` whose bottom first-column cell holds a
/// vertex of `vertices`. Requires the last part of `shape` to be 1.
pub fn for_each_with_bottom_in<F>(
    shape: &Partition,
    g: &LabeledGraph,
    vertices: VertexSet,
    visit: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&SrhGTabloid) -> ControlFlow<()>,
{
    if shape.last() != Some(1) {
        return Err(Error::InvalidArgument(format!("shape {shape} does not end in a part equal to 1")));
    }
    Ok(fill_all(shape, g, vertices, visit))
}

pub fn tabloids_with_bottom_vertex(shape: &Partition, g: &LabeledGraph, v: usize) -> Result<Vec<SrhGTabloid>> {
    if v == 0 || v > g.n_vertices() {
        return Err(Error::InvalidArgument(format!("vertex {v} not in graph")));
    }
    let mut out = Vec::new();
    let _ = for_each_with_bottom_in(shape, g, bit(v), |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NetLabeling;
    use std::collections::BTreeSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn content_and_sign(shape: &[usize]) -> Vec<(Vec<usize>, i64)> {
        enumerate_srh_tabloids(&p(shape))
            .iter()
            .map(|t| (t.content().parts().to_vec(), t.sign()))
            .collect()
    }

    #[test]
    fn shape_422_golden() {
        let mut found = content_and_sign(&[4, 2, 2]);
        found.sort();
        let mut expected = vec![
            (vec![2, 2, 4], 1),
            (vec![2, 5, 1], -1),
            (vec![3, 1, 4], -1),
            (vec![3, 5], 1),
            (vec![6, 1, 1], 1),
            (vec![6, 2], -1),
        ];
        expected.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn small_shapes() {
        assert_eq!(content_and_sign(&[1]), vec![(vec![1], 1)]);
        assert_eq!(content_and_sign(&[2, 1]), vec![(vec![1, 2], 1), (vec![3], -1)]);
        assert_eq!(enumerate_srh_tabloids(&Partition::empty()).len(), 1);
        for n in 1..7 {
            assert!(content_and_sign(&[n]).iter().all(|(_, s)| *s == 1));
        }
    }

    #[test]
    fn horizontal_hooks_content() {
        let t = enumerate_srh_tabloids(&p(&[4, 2, 2]))
            .into_iter()
            .find(|t| t.content().parts() == [2, 2, 4])
            .unwrap();
        assert!(t.hooks().iter().all(|h| h.north_steps() == 0));
        assert_eq!(t.hooks()[0].cells()[0], Cell { row: 3, col: 1 });
    }

    #[test]
    fn tiling_invariants() {
        for n in 0..=9 {
            for shape in Partition::all(n) {
                for t in enumerate_srh_tabloids(&shape) {
                    let mut seen = BTreeSet::new();
                    for hook in t.hooks() {
                        assert_eq!(hook.cells()[0].col, 1);
                        assert_eq!(hook.steps().len(), hook.len() - 1);
                        for cell in hook.cells() {
                            assert!(cell.col <= shape.parts()[cell.row - 1]);
                            assert!(seen.insert(*cell));
                        }
                    }
                    assert_eq!(seen.len(), n);
                    assert_eq!(t.content().size(), n);
                }
            }
        }
    }

    #[test]
    fn g_tabloid_examples() {
        let k2 = LabeledGraph::complete(2);
        let two = enumerate_srh_g_tabloids(&p(&[1, 1]), &k2);
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|t| t.sign() == 1));
        assert!(enumerate_srh_g_tabloids(&p(&[2]), &k2).is_empty());
        assert!(enumerate_srh_g_tabloids(&p(&[2, 1]), &k2).is_empty());
        assert_eq!(signed_count(&p(&[2, 2]), &LabeledGraph::claw()), -1);
        assert!(enumerate_srh_g_tabloids(&p(&[2, 1]), &LabeledGraph::claw()).is_empty());
    }

    #[test]
    fn g_tabloids_are_stable_and_increasing() {
        let g = LabeledGraph::generalized_net(3, 2, NetLabeling::PendantFirst).unwrap();
        for shape in Partition::all(5) {
            for t in enumerate_srh_g_tabloids(&shape, &g) {
                let mut all = 0;
                for (i, hook) in t.base().hooks().iter().enumerate() {
                    let vs: Vec<usize> = hook.cells().iter().map(|&c| t.vertex_at(c)).collect();
                    assert!(vs.windows(2).all(|w| w[0] < w[1]));
                    assert!(g.is_stable(t.blocks()[i]));
                    all |= t.blocks()[i];
                }
                assert_eq!(all, g.all_vertices());
            }
        }
    }

    #[test]
    fn head_tail_split() {
        let g = LabeledGraph::edgeless(8).unwrap();
        let t = enumerate_srh_g_tabloids(&p(&[3, 2, 1, 1, 1]), &g).pop().unwrap();
        let (head, tail) = t.split_head_tail();
        assert_eq!(head.row_lengths(), [3, 2]);
        assert_eq!(tail.row_lengths(), [1, 1, 1]);
        assert_eq!(head.vertices() | tail.vertices(), g.all_vertices());

        let g4 = LabeledGraph::edgeless(4).unwrap();
        let t = enumerate_srh_g_tabloids(&p(&[2, 2]), &g4).pop().unwrap();
        assert!(t.split_head_tail().1.is_empty());
        let g2 = LabeledGraph::edgeless(2).unwrap();
        let t = enumerate_srh_g_tabloids(&p(&[1, 1]), &g2).pop().unwrap();
        assert!(t.split_head_tail().0.is_empty());
    }

    #[test]
    fn bottom_vertex_filter() {
        let k2 = LabeledGraph::complete(2);
        assert_eq!(tabloids_with_bottom_vertex(&p(&[1, 1]), &k2, 1).unwrap().len(), 1);
        assert!(tabloids_with_bottom_vertex(&p(&[2]), &LabeledGraph::edgeless(2).unwrap(), 1).is_err());

        let g = LabeledGraph::generalized_net(3, 1, NetLabeling::PendantFirst).unwrap();
        let shape = p(&[2, 1, 1]);
        let total: usize =
            (1..=4).map(|v| tabloids_with_bottom_vertex(&shape, &g, v).unwrap().len()).sum();
        assert_eq!(total, enumerate_srh_g_tabloids(&shape, &g).len());
    }

    #[test]
    fn json_shape() {
        let g = LabeledGraph::edgeless(2).unwrap();
        let t = enumerate_srh_g_tabloids(&p(&[2]), &g).pop().unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"shape":[2],"hooks":[{"cells":[[1,1],[1,2]],"steps":["E"]}],"filling":{"[1,1]":1,"[1,2]":2}}"#
        );
    }
}
