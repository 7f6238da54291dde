//! Reshetikhin-Turaev invariants of 3-manifolds given by surgery on plumbing
//! forests of framed unknots, with their spin (`B`) and cohomological (`D`)
//! refinements.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catdata::CategoryTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::roots::{Family, Weight};
use crate::CycNum;

/// Largest graph accepted by [`vanishing_check`], which visits every subset.
pub const MAX_VANISHING_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub framing: i64,
}

#[derive(Deserialize, Serialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

/// A forest of framed unknots, two of them forming a Hopf link when joined
/// by an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl TryFrom<RawGraph> for PlumbingGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let edges = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
        PlumbingGraph::new(raw.vertices, edges)
    }
}

impl From<PlumbingGraph> for RawGraph {
    fn from(g: PlumbingGraph) -> Self {
        let edges = g.edges.iter().map(|&(a, b)| [g.vertices[a].id.clone(), g.vertices[b].id.clone()]).collect();
        RawGraph { vertices: g.vertices, edges }
    }
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::MalformedGraph(format!("edge references unknown vertex {id:?}")))
        };
        let mut components: Vec<usize> = (0..vertices.len()).collect();
        fn root(components: &mut [usize], mut i: usize) -> usize {
            while components[i] != i {
                components[i] = components[components[i]];
                i = components[i];
            }
            i
        }
        let mut resolved = Vec::with_capacity(edges.len());
        let mut neighbors = vec![Vec::new(); vertices.len()];
        for (a, b) in &edges {
            let (a, b) = (lookup(a)?, lookup(b)?);
            let (ra, rb) = (root(&mut components, a), root(&mut components, b));
            if ra == rb {
                return Err(Error::NotForest);
            }
            components[ra] = rb;
            neighbors[a].push(b);
            neighbors[b].push(a);
            resolved.push((a, b));
        }
        Ok(PlumbingGraph { vertices, edges: resolved, neighbors })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::MalformedGraph(e.to_string()))?;
        raw.try_into()
    }

    pub fn empty() -> Self {
        PlumbingGraph { vertices: Vec::new(), edges: Vec::new(), neighbors: Vec::new() }
    }

    /// Framed unknots `v0, v1, ...` joined in a line.
    pub fn chain(framings: &[i64]) -> Self {
        let vertices = framings.iter().enumerate().map(|(i, &f)| Vertex { id: format!("v{i}"), framing: f }).collect();
        let edges = (1..framings.len()).map(|i| (format!("v{}", i - 1), format!("v{i}"))).collect();
        PlumbingGraph::new(vertices, edges).expect("a chain is a forest")
    }

    /// Disjoint union; ids of `other` get the given prefix.
    pub fn disjoint_union(&self, other: &PlumbingGraph, prefix: &str) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| Vertex { id: format!("{prefix}{}", v.id), framing: v.framing }));
        let id = |g: &PlumbingGraph, i: usize, p: &str| format!("{p}{}", g.vertices[i].id);
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (id(self, a, ""), id(self, b, "")))
            .chain(other.edges.iter().map(|&(a, b)| (id(other, a, prefix), id(other, b, prefix))))
            .collect();
        PlumbingGraph::new(vertices, edges)
    }

    /// Adds a disjoint `+1` or `-1` framed unknot.
    pub fn blow_up(&self, positive: bool) -> Self {
        let framing = if positive { 1 } else { -1 };
        let id = (0..).map(|i| format!("blowup-{i}")).find(|id| self.position(id).is_none()).expect("unbounded");
        let mut vertices = self.vertices.clone();
        vertices.push(Vertex { id, framing });
        let mut neighbors = self.neighbors.clone();
        neighbors.push(Vec::new());
        PlumbingGraph { vertices, edges: self.edges.clone(), neighbors }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }
}

/// A set of vertices carrying the grade-1 Kirby color.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SublinkSelection {
    pub selected: BTreeSet<String>,
}

impl SublinkSelection {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(ids: I) -> Self {
        SublinkSelection { selected: ids.into_iter().map(Into::into).collect() }
    }

    fn from_mask(graph: &PlumbingGraph, mask: &[bool]) -> Self {
        SublinkSelection::new(graph.vertices.iter().zip(mask).filter(|(_, &m)| m).map(|(v, _)| v.id.clone()))
    }

    fn to_mask(&self, graph: &PlumbingGraph) -> Result<Vec<bool>> {
        let mut mask = vec![false; graph.len()];
        for id in &self.selected {
            let i = graph
                .position(id)
                .ok_or_else(|| Error::InvalidSelection(format!("{id:?} is not a vertex of the graph")))?;
            mask[i] = true;
        }
        Ok(mask)
    }
}

impl std::fmt::Display for SublinkSelection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.selected.iter().cloned().collect::<Vec<_>>().join(","))
    }
}

pub fn linking_matrix(graph: &PlumbingGraph) -> Vec<Vec<i64>> {
    let n = graph.len();
    let mut m = vec![vec![0; n]; n];
    for (i, v) in graph.vertices.iter().enumerate() {
        m[i][i] = v.framing;
    }
    for &(a, b) in &graph.edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric matrix, by
/// congruence over the rationals.
pub fn signature_counts(matrix: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<BigRational>> =
        matrix.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut active: Vec<usize> = (0..a.len()).collect();
    let (mut plus, mut minus) = (0, 0);
    while !active.is_empty() {
        if let Some(slot) = active.iter().position(|&p| !a[p][p].is_zero()) {
            let p = active.swap_remove(slot);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for &i in &active {
                if a[i][p].is_zero() {
                    continue;
                }
                let factor = &a[i][p] / &pivot;
                for &j in &active {
                    let delta = &factor * &a[p][j];
                    a[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
        let Some((i, j)) = pair else { break };
        // e_i -> e_i + e_j turns the zero diagonal entry into 2 a_ij.
        for &c in &active {
            let add = a[j][c].clone();
            a[i][c] += add;
        }
        for &r in &active {
            let add = a[r][j].clone();
            a[r][i] += add;
        }
    }
    (plus, minus, active.len())
}

/// All `x` over GF(2) with `m x = rhs`, as boolean vectors in lexicographic order.
fn solve_mod2(m: &[Vec<i64>], rhs: &[bool]) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut rows: Vec<Vec<bool>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| row.iter().map(|x| x.rem_euclid(2) == 1).chain(std::iter::once(b)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..n {
            if i != r && rows[i][c] {
                let pivot_row = rows[r].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x ^= y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n]) {
        return Vec::new();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut solutions: Vec<Vec<bool>> = (0u64..1 << free.len())
        .map(|bits| {
            let mut x = vec![false; n];
            for (t, &c) in free.iter().enumerate() {
                x[c] = bits >> t & 1 == 1;
            }
            for (row, &c) in rows.iter().zip(&pivots) {
                x[c] = row[n] ^ free.iter().fold(false, |acc, &f| acc ^ (row[f] && x[f]));
            }
            x
        })
        .collect();
    solutions.sort();
    solutions
}

/// Subsets `C` with `framing(i) = sum_{j in C} lk(i, j)` mod 2 at every vertex.
pub fn characteristic_sublinks(graph: &PlumbingGraph) -> Vec<SublinkSelection> {
    let m = linking_matrix(graph);
    let diagonal: Vec<bool> = (0..m.len()).map(|i| m[i][i].rem_euclid(2) == 1).collect();
    solve_mod2(&m, &diagonal).iter().map(|x| SublinkSelection::from_mask(graph, x)).collect()
}

/// Subsets whose indicator vector lies in the kernel of the linking matrix mod 2.
pub fn mod2_kernel_sublinks(graph: &PlumbingGraph) -> Vec<SublinkSelection> {
    let m = linking_matrix(graph);
    solve_mod2(&m, &vec![false; m.len()]).iter().map(|x| SublinkSelection::from_mask(graph, x)).collect()
}

/// Admissible selections for the table's family: characteristic sublinks
/// for `B`, the mod-2 kernel for `D`.
pub fn admissible_sublinks(table: &CategoryTable, graph: &PlumbingGraph) -> Vec<SublinkSelection> {
    match table.spec().family() {
        Family::B => characteristic_sublinks(graph),
        Family::D => mod2_kernel_sublinks(graph),
    }
}

fn is_admissible(table: &CategoryTable, graph: &PlumbingGraph, mask: &[bool]) -> bool {
    let m = linking_matrix(graph);
    (0..m.len()).all(|i| {
        let linked = (0..m.len()).filter(|&j| mask[j]).map(|j| m[i][j]).sum::<i64>();
        let target = match table.spec().family() {
            Family::B => m[i][i],
            Family::D => 0,
        };
        (linked - target).rem_euclid(2) == 0
    })
}

/// `dim^{1 - deg}` for the simple at `color`.
fn valence_factor(table: &CategoryTable, color: usize, degree: usize) -> Result<CycNum> {
    Ok(match degree {
        0 => table.dims()[color].clone(),
        1 => Cyclotomic::one(table.category().field()),
        d => table.dim_inverses()?[color].pow(d as i64 - 1)?,
    })
}

/// `prod_v t^{framing} dim^{1-deg} prod_{edges} S` for one coloring, listed in vertex order.
pub fn colored_bracket(table: &CategoryTable, graph: &PlumbingGraph, coloring: &[Weight]) -> Result<CycNum> {
    if coloring.len() != graph.len() {
        return Err(Error::LengthMismatch { expected: graph.len(), got: coloring.len() });
    }
    let colors = coloring.iter().map(|w| table.index(w)).collect::<Result<Vec<_>>>()?;
    let mut value = Cyclotomic::one(table.category().field());
    for (v, &c) in colors.iter().enumerate() {
        value = value * table.twist_pow(c, graph.vertices[v].framing) * valence_factor(table, c, graph.degree(v))?;
    }
    for &(a, b) in &graph.edges {
        value = value * table.s(colors[a], colors[b]);
    }
    Ok(value)
}

/// Bracket extended multilinearly to a linear combination of simples on
/// every vertex, by dynamic programming over each tree.
fn extended_bracket(table: &CategoryTable, graph: &PlumbingGraph, colors: &[&[CycNum]]) -> Result<CycNum> {
    let field = table.category().field();
    let mut visited = vec![false; graph.len()];
    let mut total = Cyclotomic::one(field);
    for start in 0..graph.len() {
        if visited[start] {
            continue;
        }
        let mut order = vec![(start, usize::MAX)];
        visited[start] = true;
        let mut head = 0;
        while head < order.len() {
            let (v, _) = order[head];
            for &u in &graph.neighbors[v] {
                if !visited[u] {
                    visited[u] = true;
                    order.push((u, v));
                }
            }
            head += 1;
        }
        let mut messages: HashMap<usize, Vec<CycNum>> = HashMap::new();
        let mut root_value = Cyclotomic::zero(field);
        for &(v, parent) in order.iter().rev() {
            let children: Vec<Vec<CycNum>> = graph.neighbors[v]
                .iter()
                .filter(|&&u| u != parent)
                .map(|u| messages.remove(u).expect("children are processed first"))
                .collect();
            let local = (0..table.len())
                .into_par_iter()
                .map(|c| {
                    if colors[v][c].is_zero() {
                        return Ok(Cyclotomic::zero(field));
                    }
                    let mut value = &colors[v][c] * &table.twist_pow(c, graph.vertices[v].framing);
                    value = value * valence_factor(table, c, graph.degree(v))?;
                    for child in &children {
                        value = value * child[c].clone();
                    }
                    Ok(value)
                })
                .collect::<Result<Vec<_>>>()?;
            if parent == usize::MAX {
                root_value = local.into_iter().fold(root_value, |acc, x| acc + x);
            } else {
                let message = (0..table.len())
                    .into_par_iter()
                    .map(|c| {
                        local
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .fold(Cyclotomic::zero(field), |acc, (d, x)| acc + table.s(c, d) * x)
                    })
                    .collect();
                messages.insert(v, message);
            }
        }
        total = total * root_value;
    }
    Ok(total)
}

fn normalization(table: &CategoryTable, graph: &PlumbingGraph) -> Result<CycNum> {
    let (plus, minus, _) = signature_counts(&linking_matrix(graph));
    let field = table.category().field();
    let mut denom = Cyclotomic::one(field);
    for (count, unknot) in [(plus, table.u_plus()), (minus, table.u_minus())] {
        if count > 0 {
            if unknot.is_zero() {
                return Err(Error::DegenerateNormalization);
            }
            denom = denom * unknot.pow(count as i64)?;
        }
    }
    Ok(denom)
}

fn graded_bracket(table: &CategoryTable, graph: &PlumbingGraph, mask: &[bool]) -> Result<CycNum> {
    let kirby = table.kirby_colors();
    let colors: Vec<&[CycNum]> = mask.iter().map(|&m| if m { &kirby.omega1[..] } else { &kirby.omega0[..] }).collect();
    extended_bracket(table, graph, &colors)
}

/// Unnormalized evaluation with the full Kirby color on every vertex.
pub fn kirby_bracket(table: &CategoryTable, graph: &PlumbingGraph) -> Result<CycNum> {
    let dims = table.dims();
    extended_bracket(table, graph, &vec![dims; graph.len()])
}

/// `F(Omega, ..., Omega) / (F(U_+)^{b_+} F(U_-)^{b_-})`.
pub fn rt_invariant(table: &CategoryTable, graph: &PlumbingGraph) -> Result<CycNum> {
    let denom = normalization(table, graph)?;
    Ok(kirby_bracket(table, graph)? / denom)
}

/// Grade-1 Kirby color on the selection, grade-0 elsewhere, with the same
/// normalization as [`rt_invariant`].
pub fn refined_rt_invariant(
    table: &CategoryTable,
    graph: &PlumbingGraph,
    selection: &SublinkSelection,
) -> Result<CycNum> {
    let mask = selection.to_mask(graph)?;
    if !is_admissible(table, graph, &mask) {
        let rule = match table.spec().family() {
            Family::B => "not a characteristic sublink",
            Family::D => "not in the kernel of the linking matrix mod 2",
        };
        return Err(Error::InvalidSelection(format!("{selection} is {rule}")));
    }
    let denom = normalization(table, graph)?;
    Ok(graded_bracket(table, graph, &mask)? / denom)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefinedInvariant {
    pub selection: SublinkSelection,
    pub value: CycNum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub invariant: CycNum,
    pub refined: Vec<RefinedInvariant>,
    /// Whether the refined invariants add up to the invariant.
    pub holds: bool,
}

/// The invariant together with its refinements over every admissible selection.
pub fn decomposition(table: &CategoryTable, graph: &PlumbingGraph) -> Result<Decomposition> {
    let invariant = rt_invariant(table, graph)?;
    let refined = admissible_sublinks(table, graph)
        .into_par_iter()
        .map(|selection| {
            let value = refined_rt_invariant(table, graph, &selection)?;
            Ok(RefinedInvariant { selection, value })
        })
        .collect::<Result<Vec<_>>>()?;
    let sum = refined.iter().fold(Cyclotomic::zero(table.category().field()), |acc, r| acc + &r.value);
    Ok(Decomposition { holds: sum == invariant, invariant, refined })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// Number of non-admissible subsets evaluated.
    pub checked: usize,
    pub violations: Vec<SublinkSelection>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every non-admissible grading of the Kirby color and lists those
/// that do not vanish.
pub fn vanishing_check(table: &CategoryTable, graph: &PlumbingGraph) -> Result<VanishingReport> {
    if graph.len() > MAX_VANISHING_VERTICES {
        return Err(Error::GraphTooLarge { vertices: graph.len(), max: MAX_VANISHING_VERTICES });
    }
    let masks: Vec<Vec<bool>> = (0u32..1 << graph.len())
        .map(|bits| (0..graph.len()).map(|i| bits >> i & 1 == 1).collect())
        .filter(|mask: &Vec<bool>| !is_admissible(table, graph, mask))
        .collect();
    let violations = masks
        .par_iter()
        .map(|mask| {
            Ok((!graded_bracket(table, graph, mask)?.is_zero()).then(|| SublinkSelection::from_mask(graph, mask)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VanishingReport { checked: masks.len(), violations: violations.into_iter().flatten().collect() })
}

/// Small forests used by the verification suites.
pub fn sample_forests() -> Vec<(&'static str, PlumbingGraph)> {
    let star = |center: i64, leaves: &[i64]| {
        let mut vertices = vec![Vertex { id: "c".into(), framing: center }];
        vertices.extend(leaves.iter().enumerate().map(|(i, &f)| Vertex { id: format!("l{i}"), framing: f }));
        let edges = (0..leaves.len()).map(|i| ("c".to_string(), format!("l{i}"))).collect();
        PlumbingGraph::new(vertices, edges).expect("a star is a forest")
    };
    let e6 = {
        let vertices = (0..6).map(|i| Vertex { id: format!("e{i}"), framing: -2 }).collect();
        let edges =
            [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)].iter().map(|&(a, b)| (format!("e{a}"), format!("e{b}"))).collect();
        PlumbingGraph::new(vertices, edges).expect("a tree")
    };
    let mixed =
        PlumbingGraph::chain(&[1, 0]).disjoint_union(&PlumbingGraph::chain(&[3, -1, 2]), "b").expect("disjoint");
    vec![
        ("empty", PlumbingGraph::empty()),
        ("unknot(0)", PlumbingGraph::chain(&[0])),
        ("unknot(+1)", PlumbingGraph::chain(&[1])),
        ("unknot(-1)", PlumbingGraph::chain(&[-1])),
        ("unknot(2)", PlumbingGraph::chain(&[2])),
        ("unknot(3)", PlumbingGraph::chain(&[3])),
        ("hopf(0,0)", PlumbingGraph::chain(&[0, 0])),
        ("chain(2,2)", PlumbingGraph::chain(&[2, 2])),
        ("chain(-2,-2,-2)", PlumbingGraph::chain(&[-2, -2, -2])),
        ("chain(1,2,3)", PlumbingGraph::chain(&[1, 2, 3])),
        ("star(-2;-2,-2,-2)", star(-2, &[-2, -2, -2])),
        ("star(1;2,-3,0)", star(1, &[2, -3, 0])),
        ("e6(-2)", e6),
        ("chain(1,0)+chain(3,-1,2)", mixed),
    ]
}
