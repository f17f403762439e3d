//! Labeled-graph presentations of one-dimensional sofic shifts.
//!
//! A [`LabeledGraph`] presents the sofic shift whose points are the labels of
//! bi-infinite paths. Most operations assume the graph is *essential* (every
//! vertex has an incoming and an outgoing edge), which [`LabeledGraph::trim`]
//! guarantees; on an essential graph every finite path extends to a
//! bi-infinite one, so the language is exactly the set of path labels.

mod code;

pub use code::{
    endo_check_on_fixed_points, fixed_points_1d, image_check, EndoReport, SlidingBlockCode,
};

use std::collections::VecDeque;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::word::{is_factor, Alphabet, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Symbol,
}

/// Directed multigraph with edge labels.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    alphabet: Alphabet,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    // succ[label][v] = targets of edges v --label--> _, in declaration order
    succ: Vec<Vec<Vec<usize>>>,
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("vertices", &self.vertices)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| {
                        format!(
                            "{}-{}->{}",
                            self.vertices[e.src],
                            self.alphabet.token(e.label),
                            self.vertices[e.dst]
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Result of [`LabeledGraph::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoficClass {
    pub nonempty: bool,
    /// Strong connectivity of the trimmed presentation.
    pub irreducible: bool,
    /// Period of the presentation when irreducible.
    pub period: Option<usize>,
    pub mixing: bool,
}

impl LabeledGraph {
    pub fn new(alphabet: Alphabet, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v:?}")));
            }
        }
        for e in &edges {
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if e.label as usize >= alphabet.len() {
                return Err(Error::InvalidGraph("edge label out of range".into()));
            }
        }
        let mut succ = vec![vec![Vec::new(); vertices.len()]; alphabet.len()];
        for e in &edges {
            succ[e.label as usize][e.src].push(e.dst);
        }
        Ok(Self {
            alphabet,
            vertices,
            edges,
            succ,
        })
    }

    /// Builds a graph from `(source, target, label)` token triples.
    pub fn from_tokens(
        alphabet: Alphabet,
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |name: &str| {
            names
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidGraph(format!("undeclared vertex {name:?}")))
        };
        let edges = edges
            .iter()
            .map(|&(s, t, l)| {
                Ok(Edge {
                    src: idx(s)?,
                    dst: idx(t)?,
                    label: alphabet.symbol(l)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, names, edges)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub(crate) fn successors(&self, v: usize, label: Symbol) -> &[usize] {
        &self.succ[label as usize][v]
    }

    fn out_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        adj
    }

    /// Restriction to bi-extendable vertices: repeatedly removes vertices
    /// without an outgoing or without an incoming edge.
    pub fn trim(&self) -> LabeledGraph {
        self.trim_with_report().0
    }

    /// Like [`trim`](Self::trim), also returning the names of removed vertices.
    pub fn trim_with_report(&self) -> (LabeledGraph, Vec<String>) {
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        loop {
            let mut outd = vec![0usize; n];
            let mut ind = vec![0usize; n];
            for e in &self.edges {
                if alive[e.src] && alive[e.dst] {
                    outd[e.src] += 1;
                    ind[e.dst] += 1;
                }
            }
            let mut changed = false;
            for v in 0..n {
                if alive[v] && (outd[v] == 0 || ind[v] == 0) {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        let mut removed = Vec::new();
        for v in 0..n {
            if alive[v] {
                remap[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            } else {
                removed.push(self.vertices[v].clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.src] && alive[e.dst])
            .map(|e| Edge {
                src: remap[e.src],
                dst: remap[e.dst],
                label: e.label,
            })
            .collect();
        let g = LabeledGraph::new(self.alphabet.clone(), vertices, edges)
            .expect("trimming preserves validity");
        (g, removed)
    }

    pub fn is_essential(&self) -> bool {
        self.trim().vertex_count() == self.vertex_count()
    }

    /// Vertices reachable from `from` by a path spelling `w`.
    pub(crate) fn sweep(&self, from: &[bool], w: &[Symbol]) -> Vec<bool> {
        let mut cur = from.to_vec();
        for &a in w {
            let mut next = vec![false; self.vertices.len()];
            let mut any = false;
            for (v, &on) in cur.iter().enumerate() {
                if on {
                    for &t in self.successors(v, a) {
                        next[t] = true;
                        any = true;
                    }
                }
            }
            cur = next;
            if !any {
                break;
            }
        }
        cur
    }

    /// True iff some path spells `w`. Exact language membership when the
    /// graph is essential. The empty word is accepted iff the graph is
    /// nonempty.
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let all = vec![true; self.vertices.len()];
        self.sweep(&all, w).into_iter().any(|b| b)
    }

    /// Strongly connected components (Tarjan), each sorted, listed by
    /// smallest member.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let adj = self.out_neighbors();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut comps = Vec::new();

        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // explicit DFS stack of (vertex, next child position)
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < adj[v].len() {
                    let w = adj[v][*pos];
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps.sort();
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        !self.vertices.is_empty() && self.sccs().len() == 1
    }

    /// Period (gcd of cycle lengths) of the subgraph induced by `component`,
    /// which must be nonempty and strongly connected.
    pub fn component_period(&self, component: &[usize]) -> Result<usize> {
        if component.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = self.vertices.len();
        let mut member = vec![false; n];
        for &v in component {
            member[v] = true;
        }
        let adj = self.out_neighbors();
        let mut level = vec![usize::MAX; n];
        let start = component[0];
        level[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if member[w] && level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if component.iter().any(|&v| level[v] == usize::MAX) {
            return Err(Error::NotStronglyConnected);
        }
        let mut g = 0usize;
        for e in &self.edges {
            if member[e.src] && member[e.dst] {
                let diff = (level[e.src] as i64 + 1 - level[e.dst] as i64).unsigned_abs() as usize;
                g = g.gcd(&diff);
            }
        }
        if g == 0 {
            // strongly connected but acyclic: a single vertex without a loop
            return Err(Error::NotStronglyConnected);
        }
        // a reverse pass confirms every member reaches `start`
        let mut back = vec![false; n];
        back[start] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for e in &self.edges {
                if member[e.src] && member[e.dst] && back[e.dst] && !back[e.src] {
                    back[e.src] = true;
                    changed = true;
                }
            }
        }
        if component.iter().any(|&v| !back[v]) {
            return Err(Error::NotStronglyConnected);
        }
        Ok(g)
    }

    /// Period of the whole graph, which must be strongly connected.
    pub fn period(&self) -> Result<usize> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.component_period(&all)
    }

    /// Nonemptiness, presentation-irreducibility and mixing of the trimmed
    /// graph.
    pub fn classify(&self) -> SoficClass {
        let g = self.trim();
        let nonempty = !g.is_empty();
        let irreducible = g.is_strongly_connected();
        let period = if irreducible { g.period().ok() } else { None };
        SoficClass {
            nonempty,
            irreducible,
            period,
            mixing: irreducible && period == Some(1),
        }
    }

    /// Shortest path lengths from `v` (usize::MAX when unreachable).
    fn bfs_distances(&self, adj: &[Vec<usize>], v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// `max N(v₁, v₂)` over ordered vertex pairs, where `N` is the shortest
    /// directed path length and `N(v, v) = 0`.
    pub fn lemma43_n0(&self) -> Result<usize> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let adj = self.out_neighbors();
        let mut best = 0;
        for v in 0..self.vertices.len() {
            let dist = self.bfs_distances(&adj, v);
            for d in dist {
                if d == usize::MAX {
                    return Err(Error::NotStronglyConnected);
                }
                best = best.max(d);
            }
        }
        Ok(best)
    }

    /// Exact test that `p^∞` is the label of a bi-infinite path: the product
    /// of the graph with the `|p|`-cycle automaton contains a directed cycle.
    pub fn verify_cycle(&self, p: &[Symbol]) -> bool {
        let n = p.len();
        let nv = self.vertices.len();
        if n == 0 || nv == 0 {
            return false;
        }
        let node = |v: usize, i: usize| v * n + i;
        let total = nv * n;
        let mut outdeg = vec![0usize; total];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); total];
        for v in 0..nv {
            for (i, &a) in p.iter().enumerate() {
                for &w in self.successors(v, a) {
                    let from = node(v, i);
                    outdeg[from] += 1;
                    preds[node(w, (i + 1) % n)].push(from);
                }
            }
        }
        let mut queue: Vec<usize> = (0..total).filter(|&x| outdeg[x] == 0).collect();
        let mut removed = 0;
        while let Some(x) = queue.pop() {
            removed += 1;
            for &pr in &preds[x] {
                outdeg[pr] -= 1;
                if outdeg[pr] == 0 {
                    queue.push(pr);
                }
            }
        }
        removed < total
    }

    /// Shortlex-least `c` with `|c| ≤ lemma43_n0` such that `(uc)^∞` is a
    /// point of the shift. `u` must be a nonempty word of the language and
    /// the graph must be strongly connected.
    pub fn periodic_completion(&self, u: &[Symbol]) -> Result<Word> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !self.accepts(u) {
            return Err(Error::NotInLanguage(self.alphabet.render(u)));
        }
        let n0 = self.lemma43_n0()?;
        for c in self.alphabet.words_up_to(n0) {
            let uc = Word::concat(&[u, &c]);
            if self.verify_cycle(&uc) {
                return Ok(c);
            }
        }
        Err(Error::Precondition(
            "no completion within the bound; graph is not essential".into(),
        ))
    }
}

/// Locally admissible: no forbidden word occurs as a factor.
pub fn locally_admissible(forbidden: &[Word], w: &[Symbol]) -> bool {
    forbidden.iter().all(|f| !is_factor(f, w))
}

/// Higher-block presentation of the SFT with the given forbidden words:
/// vertices are the locally admissible `m`-words, where `m` is the memory
/// (longest forbidden length minus one), and `u --a--> v` whenever `u·a` is
/// locally admissible and `v` is `u·a` without its first symbol.
pub fn debruijn_presentation(alphabet: &Alphabet, forbidden: &[Word]) -> LabeledGraph {
    let m = forbidden.iter().map(|f| f.len()).max().unwrap_or(1).max(1) - 1;
    let states: Vec<Word> = alphabet
        .words_of_length(m)
        .into_iter()
        .filter(|w| locally_admissible(forbidden, w))
        .collect();
    let names: Vec<String> = states
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                alphabet.render(w)
            }
        })
        .collect();
    let index = |w: &[Symbol]| states.iter().position(|s| &s[..] == w);
    let mut edges = Vec::new();
    for (i, u) in states.iter().enumerate() {
        for a in alphabet.symbols() {
            let ua = Word::concat(&[u, &[a]]);
            if !locally_admissible(forbidden, &ua) {
                continue;
            }
            if let Some(j) = index(&ua[1..]) {
                edges.push(Edge {
                    src: i,
                    dst: j,
                    label: a,
                });
            }
        }
    }
    LabeledGraph::new(alphabet.clone(), names, edges).expect("de Bruijn graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::digits(2)
    }

    fn words(a: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| a.parse(w).unwrap()).collect()
    }

    pub(crate) fn even_graph() -> LabeledGraph {
        LabeledGraph::from_tokens(
            bin(),
            &["E", "O"],
            &[("E", "E", "0"), ("E", "O", "1"), ("O", "E", "1")],
        )
        .unwrap()
    }

    fn edge_strings(g: &LabeledGraph) -> Vec<String> {
        g.edges()
            .iter()
            .map(|e| {
                format!(
                    "{}>{}:{}",
                    g.vertices()[e.src],
                    g.vertices()[e.dst],
                    g.alphabet().token(e.label)
                )
            })
            .collect()
    }

    #[test]
    fn debruijn_examples() {
        let a = bin();
        let golden = debruijn_presentation(&a, &words(&a, &["11"]));
        assert_eq!(golden.vertices(), ["0", "1"]);
        assert_eq!(edge_strings(&golden), ["0>0:0", "0>1:1", "1>0:0"]);

        let full = debruijn_presentation(&a, &[]);
        assert_eq!(full.vertex_count(), 1);
        assert_eq!(full.edges().len(), 2);

        let fio = debruijn_presentation(&a, &words(&a, &["010", "111"]));
        assert_eq!(fio.vertices(), ["00", "01", "10", "11"]);
        assert_eq!(fio.edges().len(), 6);
    }

    #[test]
    fn trim_examples() {
        let a = bin();
        let g = debruijn_presentation(&a, &words(&a, &["00", "01"]));
        let (t, removed) = g.trim_with_report();
        assert_eq!(t.vertices(), ["1"]);
        assert_eq!(removed, ["0"]);
        assert_eq!(edge_strings(&t), ["1>1:1"]);
        assert!(!t.accepts(&a.parse("0").unwrap()));

        let golden = debruijn_presentation(&a, &words(&a, &["11"]));
        assert_eq!(golden.trim(), golden);

        let bare = LabeledGraph::from_tokens(a, &["x", "y"], &[]).unwrap();
        assert!(bare.trim().is_empty());
        assert!(!bare.trim().accepts(&[]));
    }

    #[test]
    fn membership_examples() {
        let a = bin();
        let even = even_graph();
        assert!(even.accepts(&a.parse("0110").unwrap()));
        assert!(!even.accepts(&a.parse("010").unwrap()));
        assert!(even.accepts(&[]));
    }

    #[test]
    fn scc_and_period() {
        let a = bin();
        let golden = debruijn_presentation(&a, &words(&a, &["11"]));
        assert_eq!(golden.sccs(), vec![vec![0, 1]]);
        assert_eq!(golden.period().unwrap(), 1);

        let two = debruijn_presentation(&a, &words(&a, &["00", "11"]));
        assert_eq!(two.period().unwrap(), 2);

        let loop1 = LabeledGraph::from_tokens(a.clone(), &["v"], &[("v", "v", "0")]).unwrap();
        assert_eq!(loop1.period().unwrap(), 1);

        let empty = LabeledGraph::from_tokens(a.clone(), &[], &[]).unwrap();
        assert_eq!(empty.period(), Err(Error::EmptyGraph));
        let path = LabeledGraph::from_tokens(a, &["x", "y"], &[("x", "y", "0")]).unwrap();
        assert_eq!(path.period(), Err(Error::NotStronglyConnected));
        assert_eq!(path.sccs(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn classification() {
        let t = Alphabet::digits(3);
        let weiss = debruijn_presentation(&t, &words(&t, &["02", "10", "20", "21"]));
        assert_eq!(weiss.sccs().len(), 3);
        assert!(!weiss.classify().irreducible);

        let c = even_graph().classify();
        assert!(c.irreducible && c.mixing);
        assert_eq!(c.period, Some(1));

        let a = bin();
        let two = debruijn_presentation(&a, &words(&a, &["00", "11"])).classify();
        assert!(two.irreducible && !two.mixing);
        assert_eq!(two.period, Some(2));
    }

    #[test]
    fn completion_bound_of_zoo_presentations() {
        let a = bin();
        assert_eq!(debruijn_presentation(&a, &[]).lemma43_n0().unwrap(), 0);
        assert_eq!(
            debruijn_presentation(&a, &words(&a, &["11"]))
                .lemma43_n0()
                .unwrap(),
            1
        );
        assert_eq!(even_graph().lemma43_n0().unwrap(), 1);
        let path = LabeledGraph::from_tokens(a, &["x", "y"], &[("x", "y", "0")]).unwrap();
        assert_eq!(path.lemma43_n0(), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn completion_examples() {
        let a = bin();
        let golden = debruijn_presentation(&a, &words(&a, &["11"]));
        assert_eq!(
            golden.periodic_completion(&a.parse("1").unwrap()).unwrap(),
            a.parse("0").unwrap()
        );
        assert_eq!(
            golden.periodic_completion(&a.parse("0").unwrap()).unwrap(),
            Word::empty()
        );
        assert_eq!(
            even_graph()
                .periodic_completion(&a.parse("11").unwrap())
                .unwrap(),
            Word::empty()
        );
        assert!(matches!(
            golden.periodic_completion(&a.parse("11").unwrap()),
            Err(Error::NotInLanguage(_))
        ));
    }

    #[test]
    fn cycle_verification() {
        let a = bin();
        let golden = debruijn_presentation(&a, &words(&a, &["11"]));
        assert!(golden.verify_cycle(&a.parse("10010").unwrap()));
        assert!(!golden.verify_cycle(&a.parse("11").unwrap()));
        assert!(!golden.verify_cycle(&a.parse("1").unwrap()));
        assert!(even_graph().verify_cycle(&a.parse("0110").unwrap()));
        assert!(!even_graph().verify_cycle(&a.parse("01").unwrap()));
        assert!(!golden.verify_cycle(&[]));
    }
}
