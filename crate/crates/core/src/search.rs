//! Exhaustive backtracking search for small strength-2 arrays.
//!
//! Solutions are row multisets, represented with rows in nondecreasing
//! lexicographic order. In that order the first two columns of any OA are
//! forced: column 0 reads `0^(lambda n) 1^(lambda n) ...` and column 1
//! cycles through each symbol `lambda` times within every block of column
//! 0. The remaining columns are filled one at a time, top to bottom, under
//! a table of remaining pair capacities: every (column pair, symbol pair)
//! starts at `lambda` and may never go negative. Within a run of rows that
//! agree on all earlier columns the current column is nondecreasing, which
//! keeps the rows sorted, so each multiset is met exactly once.
//!
//! A forced multiplicity `m` fixes the first `m` rows to the all-zero row,
//! which every OA with an `m`-times repeated row can be relabeled to
//! contain. Existence queries additionally break two symmetries that do
//! not affect the answer: columns from 2 on are ordered by their zero
//! counts per block of column-0/1 pairs, and each such column must be
//! lexicographically minimal under relabeling its nonzero symbols.
//! Counting queries skip both and count every sorted multiset.
//!
//! The tree is split after the third column into independent branches.
//! [`search_oa`] walks them in order; a parallel driver may run them
//! concurrently and feed the outcomes to [`Merger`] in branch order to get
//! the identical result, node count included.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::array::OrthogonalArray;
use crate::bounds::max_multiplicity;
use crate::error::SearchError;

/// Default row ceiling for searches.
pub const DEFAULT_CEILING: usize = 36;

/// How often (in nodes) the interrupt hook is polled.
const INTERRUPT_STRIDE: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first solution.
    Exists,
    /// Count every solution (row multiset).
    CountSolutions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    /// Required copies of the all-zero row; 0 places no constraint.
    pub forced_multiplicity: usize,
    pub mode: SearchMode,
    /// Node budget; `None` for unlimited.
    pub max_nodes: Option<u64>,
    /// Largest admissible `lambda n^2`.
    pub ceiling: usize,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, lambda: usize) -> Self {
        SearchProblem {
            n,
            k,
            lambda,
            forced_multiplicity: 0,
            mode: SearchMode::Exists,
            max_nodes: None,
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn forced(mut self, m: usize) -> Self {
        self.forced_multiplicity = m;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn budget(mut self, max_nodes: Option<u64>) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn rows(&self) -> usize {
        self.lambda.saturating_mul(self.n).saturating_mul(self.n)
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n < 2 || self.k < 2 || self.lambda < 1 {
            return Err(SearchError::InvalidProblem(format!(
                "need n >= 2, k >= 2, lambda >= 1 (n={}, k={}, lambda={})",
                self.n, self.k, self.lambda
            )));
        }
        if self.rows() > self.ceiling {
            return Err(SearchError::OverCeiling { rows: self.rows(), ceiling: self.ceiling });
        }
        if self.forced_multiplicity > self.lambda {
            return Err(SearchError::InvalidProblem(format!(
                "forced multiplicity {} exceeds lambda = {}",
                self.forced_multiplicity, self.lambda
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNoSolution,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub status: SearchStatus,
    /// First solution in canonical order.
    pub witness: Option<OrthogonalArray>,
    pub nodes_explored: u64,
    /// Largest row multiplicity of the witness (0 without one).
    pub achieved_multiplicity: usize,
    /// Solutions seen; exact in counting mode when the search completed.
    pub solutions: u64,
}

/// Result of one branch below the split row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOutcome {
    pub nodes: u64,
    pub solutions: u64,
    pub first: Option<Vec<usize>>,
    pub exceeded: bool,
}

/// Search state: the `N x k` grid, filled column by column, and the
/// remaining capacity of every (column pair, symbol pair).
#[derive(Debug, Clone)]
struct State {
    n: usize,
    k: usize,
    lambda: usize,
    rows: usize,
    forced: usize,
    caps: Vec<i32>,
    grid: Vec<usize>,
}

impl State {
    /// Columns 0 and 1 filled with their forced values.
    fn new(n: usize, k: usize, lambda: usize, forced: usize) -> Self {
        let rows = lambda * n * n;
        let mut state = State {
            n,
            k,
            lambda,
            rows,
            forced,
            caps: vec![lambda as i32; k * k * n * n],
            grid: vec![0; rows * k],
        };
        for r in 0..rows {
            state.grid[r * k] = r / (lambda * n);
            state.assign(r, 1, (r / lambda) % n);
        }
        state
    }

    #[inline]
    fn cap_index(&self, i: usize, j: usize, a: usize, b: usize) -> usize {
        ((i * self.k + j) * self.n + a) * self.n + b
    }

    #[inline]
    fn at(&self, r: usize, j: usize) -> usize {
        self.grid[r * self.k + j]
    }

    fn fits(&self, r: usize, j: usize, v: usize) -> bool {
        (0..j).all(|i| self.caps[self.cap_index(i, j, self.at(r, i), v)] > 0)
    }

    fn assign(&mut self, r: usize, j: usize, v: usize) {
        self.grid[r * self.k + j] = v;
        for i in 0..j {
            let idx = self.cap_index(i, j, self.at(r, i), v);
            self.caps[idx] -= 1;
        }
    }

    fn unassign(&mut self, r: usize, j: usize) {
        let v = self.at(r, j);
        for i in 0..j {
            let idx = self.cap_index(i, j, self.at(r, i), v);
            self.caps[idx] += 1;
        }
    }

    /// Zeros of column `j` in each block of `lambda` rows sharing their
    /// first two symbols, for the first `blocks` blocks.
    fn zero_profile(&self, j: usize, blocks: usize) -> impl Iterator<Item = usize> + '_ {
        (0..blocks).map(move |g| (g * self.lambda..(g + 1) * self.lambda).filter(|&r| self.at(r, j) == 0).count())
    }

    /// Columns from 2 on have nondecreasing zero profiles. Checked as soon
    /// as row `r` closes a block.
    fn profile_ordered(&self, r: usize, j: usize) -> bool {
        if j <= SPLIT_COLUMN || (r + 1) % self.lambda != 0 {
            return true;
        }
        let blocks = (r + 1) / self.lambda;
        self.zero_profile(j, blocks).cmp(self.zero_profile(j - 1, blocks)) != core::cmp::Ordering::Less
    }

    /// Column `j` is lexicographically minimal among its images under
    /// permutations of the nonzero symbols, re-sorted within runs of equal
    /// prefix.
    fn relabel_minimal(&self, j: usize) -> bool {
        let column: Vec<usize> = (0..self.rows).map(|r| self.at(r, j)).collect();
        let mut image = vec![0; self.rows];
        let mut minimal = true;
        for_each_permutation(self.n - 1, &mut |perm| {
            if !minimal {
                return;
            }
            for (slot, &v) in image.iter_mut().zip(&column) {
                *slot = if v == 0 { 0 } else { perm[v - 1] + 1 };
            }
            let mut start = 0;
            for r in 1..=self.rows {
                if r == self.rows || !self.same_prefix(r, j) {
                    image[start..r].sort_unstable();
                    start = r;
                }
            }
            if image < column {
                minimal = false;
            }
        });
        minimal
    }

    /// Rows `r - 1` and `r` agree on columns `0..j`.
    fn same_prefix(&self, r: usize, j: usize) -> bool {
        r > 0 && (0..j).all(|i| self.at(r - 1, i) == self.at(r, i))
    }

    /// Every capacity between column `j` and the earlier ones is used up,
    /// i.e. column `j` is balanced against all of them.
    #[cfg(debug_assertions)]
    fn column_balanced(&self, j: usize) -> bool {
        (0..j).all(|i| {
            (0..self.n * self.n).all(|ab| self.caps[self.cap_index(i, j, ab / self.n, ab % self.n)] == 0)
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

/// The column whose completions form the branches.
const SPLIT_COLUMN: usize = 2;

struct Walker<'a> {
    state: State,
    mode: SearchMode,
    /// Apply the existence-only symmetry cuts.
    reduce: bool,
    collect: Option<Vec<Vec<usize>>>,
    nodes: u64,
    budget: u64,
    interrupt: &'a dyn Fn() -> bool,
    solutions: u64,
    first: Option<Vec<usize>>,
    exceeded: bool,
}

impl Walker<'_> {
    fn tick(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.exceeded = true;
            return false;
        }
        self.nodes += 1;
        if self.nodes % INTERRUPT_STRIDE == 0 && (self.interrupt)() {
            self.exceeded = true;
            return false;
        }
        true
    }

    /// Fills cell `(r, j)` and everything after it in column-major order.
    fn fill(&mut self, r: usize, j: usize) -> Flow {
        if r == self.state.rows {
            #[cfg(debug_assertions)]
            debug_assert!(self.state.column_balanced(j));
            if self.reduce && j >= SPLIT_COLUMN && !self.state.relabel_minimal(j) {
                return Flow::Continue;
            }
            if let Some(frontier) = &mut self.collect {
                frontier.push((0..self.state.rows).map(|r| self.state.at(r, j)).collect());
                return Flow::Continue;
            }
            return self.fill(0, j + 1);
        }
        if j == self.state.k {
            self.solutions += 1;
            if self.first.is_none() {
                self.first = Some(self.state.grid.clone());
            }
            return match self.mode {
                SearchMode::Exists => Flow::Stop,
                SearchMode::CountSolutions => Flow::Continue,
            };
        }
        // Rows stay sorted: within a run of equal prefixes, column j is
        // nondecreasing. Forced rows are all-zero.
        let lo = if self.state.same_prefix(r, j) { self.state.at(r - 1, j) } else { 0 };
        let hi = if r < self.state.forced { 1 } else { self.state.n };
        for v in lo..hi {
            if !self.state.fits(r, j, v) {
                continue;
            }
            if !self.tick() {
                return Flow::Stop;
            }
            self.state.assign(r, j, v);
            let flow = if self.reduce && !self.state.profile_ordered(r, j) {
                Flow::Continue
            } else {
                self.fill(r + 1, j)
            };
            self.state.unassign(r, j);
            if flow == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

/// Calls `f` with every permutation of `0..len`, identity first.
fn for_each_permutation(len: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(perm: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize])) {
        if perm.len() == used.len() {
            f(perm);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                rec(perm, used, f);
                perm.pop();
                used[v] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(len), &mut vec![false; len], f);
}

fn never() -> bool {
    false
}

/// A search split into branches, one per completion of the third column.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    problem: SearchProblem,
    root: State,
    /// Completions of the split column, or one empty branch for `k = 2`.
    branches: Vec<Vec<usize>>,
    frontier_nodes: u64,
    frontier_exceeded: bool,
}

impl SearchPlan {
    pub fn new(problem: &SearchProblem) -> Result<Self, SearchError> {
        problem.validate()?;
        // Any OA relabels to one containing the zero row, so existence
        // queries always fix at least one.
        let forced = match problem.mode {
            SearchMode::Exists => problem.forced_multiplicity.max(1),
            SearchMode::CountSolutions => problem.forced_multiplicity,
        };
        let root = State::new(problem.n, problem.k, problem.lambda, forced);
        if problem.k == SPLIT_COLUMN {
            return Ok(SearchPlan {
                problem: problem.clone(),
                root,
                branches: vec![Vec::new()],
                frontier_nodes: 0,
                frontier_exceeded: false,
            });
        }
        let budget = problem.max_nodes.unwrap_or(u64::MAX);
        let mut walker = Walker {
            state: root.clone(),
            mode: problem.mode,
            reduce: problem.mode == SearchMode::Exists,
            collect: Some(Vec::new()),
            nodes: 0,
            budget,
            interrupt: &never,
            solutions: 0,
            first: None,
            exceeded: false,
        };
        walker.fill(0, SPLIT_COLUMN);
        Ok(SearchPlan {
            problem: problem.clone(),
            root,
            branches: walker.collect.take().unwrap_or_default(),
            frontier_nodes: walker.nodes,
            frontier_exceeded: walker.exceeded,
        })
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Budget left for the branches after splitting.
    pub fn branch_budget(&self) -> u64 {
        self.problem.max_nodes.map_or(u64::MAX, |b| b.saturating_sub(self.frontier_nodes))
    }

    /// Explores branch `i` with at most `budget` nodes. `interrupt` is
    /// polled periodically; returning `true` abandons the branch.
    pub fn run_branch(&self, i: usize, budget: u64, interrupt: &dyn Fn() -> bool) -> BranchOutcome {
        let mut walker = Walker {
            state: self.root.clone(),
            mode: self.problem.mode,
            reduce: self.problem.mode == SearchMode::Exists,
            collect: None,
            nodes: 0,
            budget,
            interrupt,
            solutions: 0,
            first: None,
            exceeded: false,
        };
        let column = &self.branches[i];
        for (r, &v) in column.iter().enumerate() {
            walker.state.assign(r, SPLIT_COLUMN, v);
        }
        let next = if column.is_empty() { SPLIT_COLUMN } else { SPLIT_COLUMN + 1 };
        walker.fill(0, next);
        BranchOutcome {
            nodes: walker.nodes,
            solutions: walker.solutions,
            first: walker.first,
            exceeded: walker.exceeded,
        }
    }

    pub fn merger(&self) -> Merger<'_> {
        Merger {
            plan: self,
            nodes: self.frontier_nodes,
            solutions: 0,
            first: None,
            exceeded: self.frontier_exceeded,
            done: self.frontier_exceeded,
        }
    }
}

/// Folds branch outcomes, in branch order, into the sequential result.
pub struct Merger<'a> {
    plan: &'a SearchPlan,
    nodes: u64,
    solutions: u64,
    first: Option<Vec<usize>>,
    exceeded: bool,
    done: bool,
}

impl Merger<'_> {
    /// Budget the next branch would get in a sequential walk.
    pub fn remaining_budget(&self) -> u64 {
        self.plan.problem.max_nodes.map_or(u64::MAX, |b| b.saturating_sub(self.nodes))
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Adds the next branch. An outcome computed with a larger budget
    /// than [`remaining_budget`](Self::remaining_budget) is accepted; the
    /// sequential budget cut is re-applied here.
    pub fn push(&mut self, outcome: BranchOutcome) {
        if self.done {
            return;
        }
        let remaining = self.remaining_budget();
        if outcome.exceeded || outcome.nodes > remaining {
            // The walker stops after exactly `remaining` nodes.
            self.nodes += outcome.nodes.min(remaining);
            self.exceeded = true;
            self.done = true;
            return;
        }
        self.nodes += outcome.nodes;
        self.solutions += outcome.solutions;
        if self.first.is_none() {
            self.first = outcome.first;
        }
        if self.plan.problem.mode == SearchMode::Exists && self.first.is_some() {
            self.done = true;
        }
    }

    pub fn finish(self) -> SearchResult {
        let p = &self.plan.problem;
        let witness = self
            .first
            .map(|flat| OrthogonalArray::from_flat(p.n, p.k, flat).expect("search rows are in range"));
        let achieved_multiplicity = witness.as_ref().map_or(0, |w| w.row_multiplicities().max_multiplicity);
        let status = match (&witness, self.exceeded) {
            (Some(_), _) if p.mode == SearchMode::Exists => SearchStatus::Found,
            (_, true) => SearchStatus::BudgetExceeded,
            (Some(_), false) => SearchStatus::Found,
            (None, false) => SearchStatus::ExhaustedNoSolution,
        };
        SearchResult { status, witness, nodes_explored: self.nodes, achieved_multiplicity, solutions: self.solutions }
    }
}

/// Runs the search sequentially.
pub fn search_oa(problem: &SearchProblem) -> Result<SearchResult, SearchError> {
    search_oa_with_interrupt(problem, &never)
}

/// Like [`search_oa`], abandoning the search when `interrupt` returns true;
/// an interrupted search reports [`SearchStatus::BudgetExceeded`].
pub fn search_oa_with_interrupt(
    problem: &SearchProblem,
    interrupt: &dyn Fn() -> bool,
) -> Result<SearchResult, SearchError> {
    let plan = SearchPlan::new(problem)?;
    let mut merger = plan.merger();
    for i in 0..plan.num_branches() {
        if merger.is_done() {
            break;
        }
        let outcome = plan.run_branch(i, merger.remaining_budget(), interrupt);
        merger.push(outcome);
    }
    Ok(merger.finish())
}

/// Largest forced multiplicity with a solution, and a witness for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMultiplicity {
    /// 0 when no array with these parameters exists at all.
    pub max: usize,
    pub witness: Option<OrthogonalArray>,
    /// The bound's integer form the descent started from.
    pub bound_floor: usize,
    pub nodes_explored: u64,
}

/// Descends from the bound's floor and returns the first multiplicity for
/// which `run` finds a witness. Budget exhaustion at any step is an error
/// since a lower success would not settle the maximum.
pub fn oracle_max_multiplicity_with(
    base: &SearchProblem,
    mut run: impl FnMut(&SearchProblem) -> Result<SearchResult, SearchError>,
) -> Result<MaxMultiplicity, SearchError> {
    base.validate()?;
    let floor = max_multiplicity(base.k as u64, base.n as u64, base.lambda as u64)
        .map_err(|e| SearchError::InvalidProblem(format!("{e}")))?
        .integer_form;
    let floor: usize = usize::try_from(floor).unwrap_or(0).min(base.lambda);
    let mut nodes = 0;
    for m in (1..=floor).rev() {
        let problem = base.clone().forced(m).mode(SearchMode::Exists);
        let result = run(&problem)?;
        nodes += result.nodes_explored;
        match result.status {
            SearchStatus::Found => {
                return Ok(MaxMultiplicity {
                    max: result.achieved_multiplicity,
                    witness: result.witness,
                    bound_floor: floor,
                    nodes_explored: nodes,
                });
            }
            SearchStatus::BudgetExceeded => return Err(SearchError::BudgetExceeded),
            SearchStatus::ExhaustedNoSolution => {}
        }
    }
    Ok(MaxMultiplicity { max: 0, witness: None, bound_floor: floor, nodes_explored: nodes })
}

pub fn oracle_max_multiplicity(base: &SearchProblem) -> Result<MaxMultiplicity, SearchError> {
    oracle_max_multiplicity_with(base, search_oa)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Index-1 strength-2 array on `q^2` rows from the affine maps
/// `x -> a x + b` over `Z_q`: row `(a, b)` holds the slope `a`, then the
/// values at `x = 0, 1, ..., k-2`.
pub fn generate_linear_oa(q: usize, k: usize) -> Result<OrthogonalArray, SearchError> {
    if !is_prime(q) || k < 2 || k > q + 1 {
        return Err(SearchError::UnsupportedParameters(format!(
            "need q prime and 2 <= k <= q + 1 (q = {q}, k = {k})"
        )));
    }
    let mut rows = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            let mut row = vec![a];
            row.extend((0..k - 1).map(|x| (a * x + b) % q));
            rows.push(row);
        }
    }
    OrthogonalArray::new(q, rows).map_err(|e| SearchError::UnsupportedParameters(format!("{e}")))
}

/// The binary vectors of length `k` with even weight: `2^(k-1)` rows of
/// strength `k - 1`, hence a strength-2 array of index `2^(k-3)`.
pub fn generate_parity_oa(k: usize) -> Result<OrthogonalArray, SearchError> {
    if !(3..=20).contains(&k) {
        return Err(SearchError::UnsupportedParameters(format!("need 3 <= k <= 20 (k = {k})")));
    }
    let rows = (0usize..1 << k)
        .filter(|x| x.count_ones() % 2 == 0)
        .map(|x| (0..k).map(|j| (x >> (k - 1 - j)) & 1).collect())
        .collect();
    OrthogonalArray::new(2, rows).map_err(|e| SearchError::UnsupportedParameters(format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_generator_small_cases() {
        let a = generate_linear_oa(2, 3).unwrap();
        assert_eq!(a.rows().collect::<Vec<_>>(), [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        let b = generate_linear_oa(3, 4).unwrap();
        assert_eq!(b.num_rows(), 9);
        assert_eq!(b.strength_lambda(2), Ok(1));
        let c = generate_linear_oa(5, 6).unwrap();
        assert_eq!(c.num_rows(), 25);
        assert_eq!(c.strength_lambda(2), Ok(1));
        assert!(generate_linear_oa(4, 3).is_err());
        assert!(generate_linear_oa(3, 5).is_err());
    }

    #[test]
    fn parity_generator() {
        let a = generate_parity_oa(4).unwrap();
        assert_eq!(a.num_rows(), 8);
        assert_eq!(a.strength_lambda(2), Ok(2));
        assert_eq!(a.strength_lambda(3), Ok(1));
        assert_eq!(generate_parity_oa(3).unwrap().canonical_rows(), generate_linear_oa(2, 3).unwrap().canonical_rows());
    }

    #[test]
    fn tiny_searches() {
        let r = search_oa(&SearchProblem::new(2, 3, 1)).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        assert_eq!(r.witness.unwrap().strength_lambda(2), Ok(1));
        let r = search_oa(&SearchProblem::new(2, 4, 1)).unwrap();
        assert_eq!(r.status, SearchStatus::ExhaustedNoSolution);
    }

    #[test]
    fn budget_is_not_nonexistence() {
        let p = SearchProblem::new(2, 4, 2).forced(2).budget(Some(3));
        let r = search_oa(&p).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExceeded);
        assert_eq!(r.nodes_explored, 3);
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            search_oa(&SearchProblem::new(3, 3, 5)),
            Err(SearchError::OverCeiling { rows: 45, ceiling: 36 })
        ));
        assert!(search_oa(&SearchProblem::new(2, 3, 1).forced(2)).is_err());
        assert!(search_oa(&SearchProblem::new(1, 3, 1)).is_err());
    }
}
