//! Branch and bound over (path, color) picks.
//!
//! Every condition is a requirement "the picks inside path set `X` show at
//! least `need` distinct colors from `allowed`". Branching takes the
//! unsatisfied requirement with the fewest candidate picks; earlier siblings
//! are forbidden in later ones, so each pick set is visited at most once.

use std::time::Instant;

#[derive(Clone, Debug)]
pub(crate) struct Requirement {
    pub x: Vec<u64>,
    pub allowed: u32,
    pub need: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub npaths: usize,
    pub k: u32,
    pub path_masks: Vec<u128>,
    pub reqs: Vec<Requirement>,
    /// Per edge, the maximum number of picks through it.
    pub caps: Vec<Option<u32>>,
    /// Colors are interchangeable (no requirement singles out a color).
    pub symmetric: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Found,
    Exhausted,
    Budget,
}

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub node_budget: Option<u64>,
}

pub(crate) struct Engine<'a> {
    p: &'a Problem,
    path_reqs: Vec<Vec<usize>>,
    capped_edges: Vec<Vec<usize>>,
    order_by_size: Vec<usize>,
    order_by_need: Vec<usize>,
    // state
    picks: Vec<(usize, u32)>,
    chosen: Vec<Vec<u64>>,
    forb: Vec<Vec<u64>>,
    forb_from: Vec<u32>,
    seen_colors: Vec<u32>,
    unsat: usize,
    cover: Vec<u32>,
    max_used: i64,
    union_buf: Vec<u64>,
    pub nodes: u64,
    limits: Limits,
    budget_hit: bool,
}

fn bit(x: &[u64], i: usize) -> bool {
    x[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(x: &mut [u64], i: usize, on: bool) {
    if on {
        x[i / 64] |= 1 << (i % 64);
    } else {
        x[i / 64] &= !(1 << (i % 64));
    }
}

fn satisfied(r: &Requirement, seen: u32) -> bool {
    (seen & r.allowed).count_ones() >= r.need
}

impl<'a> Engine<'a> {
    pub fn new(p: &'a Problem, limits: Limits) -> Self {
        let words = p.npaths.div_ceil(64).max(1);
        let mut path_reqs = vec![Vec::new(); p.npaths];
        for (ri, r) in p.reqs.iter().enumerate() {
            for (pi, pr) in path_reqs.iter_mut().enumerate() {
                if bit(&r.x, pi) {
                    pr.push(ri);
                }
            }
        }
        let capped_edges = p
            .path_masks
            .iter()
            .map(|&m| (0..p.caps.len()).filter(|&e| p.caps[e].is_some() && m >> e & 1 == 1).collect())
            .collect();
        let size = |r: &Requirement| r.x.iter().map(|w| w.count_ones()).sum::<u32>();
        let mut order_by_size: Vec<usize> = (0..p.reqs.len()).collect();
        order_by_size.sort_by_key(|&i| (size(&p.reqs[i]), i));
        let mut order_by_need = order_by_size.clone();
        order_by_need.sort_by_key(|&i| (std::cmp::Reverse(p.reqs[i].need), size(&p.reqs[i]), i));
        let unsat = p.reqs.iter().filter(|r| !satisfied(r, 0)).count();
        Engine {
            p,
            path_reqs,
            capped_edges,
            order_by_size,
            order_by_need,
            picks: Vec::new(),
            chosen: vec![vec![0; words]; p.k as usize],
            forb: vec![vec![0; words]; p.k as usize],
            forb_from: vec![u32::MAX; p.npaths],
            seen_colors: vec![0; p.reqs.len()],
            unsat,
            cover: vec![0; p.caps.len()],
            max_used: -1,
            union_buf: vec![0; words],
            nodes: 0,
            limits,
            budget_hit: false,
        }
    }

    fn path_open(&self, path: usize) -> bool {
        self.capped_edges[path].iter().all(|&e| self.cover[e] < self.p.caps[e].unwrap())
    }

    fn pick_ok(&self, path: usize, c: u32) -> bool {
        c < self.p.k
            && !bit(&self.chosen[c as usize], path)
            && !bit(&self.forb[c as usize], path)
            && c < self.forb_from[path]
            && (!self.p.symmetric || (c as i64) <= self.max_used + 1)
    }

    fn candidate_colors(&self, r: usize) -> u32 {
        let req = &self.p.reqs[r];
        let mut mask = req.allowed & !self.seen_colors[r];
        if self.p.k < 32 {
            mask &= (1u32 << self.p.k) - 1;
        }
        if self.p.symmetric && self.max_used + 2 < 32 {
            mask &= (1u32 << (self.max_used + 2)) - 1;
        }
        mask
    }

    fn count_candidates(&self, r: usize, stop: usize) -> usize {
        let colors = self.candidate_colors(r);
        let mut n = 0;
        for (w, &word) in self.p.reqs[r].x.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let path = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !self.path_open(path) {
                    continue;
                }
                let mut cs = colors;
                while cs != 0 {
                    let c = cs.trailing_zeros();
                    cs &= cs - 1;
                    if self.pick_ok(path, c) {
                        n += 1;
                        if n >= stop {
                            return n;
                        }
                    }
                }
            }
        }
        n
    }

    fn lower_bound(&mut self) -> usize {
        let mut best = 0;
        for pass in 0..2 {
            let order = if pass == 0 { &self.order_by_size } else { &self.order_by_need };
            self.union_buf.iter_mut().for_each(|w| *w = 0);
            let mut lb = 0;
            for &r in order.iter() {
                let req = &self.p.reqs[r];
                let have = (self.seen_colors[r] & req.allowed).count_ones();
                if have >= req.need {
                    continue;
                }
                if req.x.iter().zip(&self.union_buf).any(|(a, b)| a & b != 0) {
                    continue;
                }
                lb += (req.need - have) as usize;
                for (u, a) in self.union_buf.iter_mut().zip(&req.x) {
                    *u |= a;
                }
            }
            best = best.max(lb);
        }
        best
    }

    fn apply(&mut self, path: usize, c: u32, trail: &mut Vec<(usize, u32)>) {
        self.picks.push((path, c));
        set_bit(&mut self.chosen[c as usize], path, true);
        for &e in &self.capped_edges[path] {
            self.cover[e] += 1;
        }
        for &r in &self.path_reqs[path] {
            let req = &self.p.reqs[r];
            let old = self.seen_colors[r];
            if req.allowed >> c & 1 == 1 && old >> c & 1 == 0 {
                trail.push((r, old));
                let was = satisfied(req, old);
                self.seen_colors[r] = old | 1 << c;
                if !was && satisfied(req, self.seen_colors[r]) {
                    self.unsat -= 1;
                }
            }
        }
    }

    fn undo(&mut self, trail: &mut Vec<(usize, u32)>) {
        let (path, c) = self.picks.pop().unwrap();
        set_bit(&mut self.chosen[c as usize], path, false);
        for &e in &self.capped_edges[path] {
            self.cover[e] -= 1;
        }
        while let Some((r, old)) = trail.pop() {
            let req = &self.p.reqs[r];
            if satisfied(req, self.seen_colors[r]) && !satisfied(req, old) {
                self.unsat += 1;
            }
            self.seen_colors[r] = old;
        }
    }

    fn over_budget(&mut self) -> bool {
        if self.budget_hit {
            return true;
        }
        if let Some(nb) = self.limits.node_budget {
            if self.nodes > nb {
                self.budget_hit = true;
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() > d {
                    self.budget_hit = true;
                }
            }
        }
        self.budget_hit
    }

    /// Depth-first search for a pick set of size at most `target`. With
    /// `on_solution` returning `true`, the search continues past solutions.
    pub fn run(&mut self, target: usize, on_solution: &mut dyn FnMut(&[(usize, u32)]) -> bool) -> Outcome {
        self.budget_hit = false;
        let r = self.dfs(target, on_solution);
        if self.budget_hit {
            Outcome::Budget
        } else {
            r
        }
    }

    fn dfs(&mut self, target: usize, on_solution: &mut dyn FnMut(&[(usize, u32)]) -> bool) -> Outcome {
        self.nodes += 1;
        if self.over_budget() {
            return Outcome::Budget;
        }
        if self.unsat == 0 {
            return if on_solution(&self.picks) { Outcome::Exhausted } else { Outcome::Found };
        }
        if self.picks.len() >= target {
            return Outcome::Exhausted;
        }
        if self.picks.len() + self.lower_bound() > target {
            return Outcome::Exhausted;
        }
        let mut best_r = usize::MAX;
        let mut best_n = usize::MAX;
        for r in 0..self.p.reqs.len() {
            if satisfied(&self.p.reqs[r], self.seen_colors[r]) {
                continue;
            }
            let n = self.count_candidates(r, best_n);
            if n < best_n {
                best_n = n;
                best_r = r;
                if n == 0 {
                    return Outcome::Exhausted;
                }
            }
        }
        let cands = self.candidates(best_r);
        let mut forb_trail: Vec<(usize, u32, bool)> = Vec::new();
        let mut trail = Vec::new();
        let mut outcome = Outcome::Exhausted;
        for &(path, c) in &cands {
            if !self.pick_ok(path, c) {
                continue;
            }
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c as i64);
            self.apply(path, c, &mut trail);
            let r = self.dfs(target, on_solution);
            self.undo(&mut trail);
            self.max_used = prev_max;
            if r != Outcome::Exhausted {
                outcome = r;
                break;
            }
            if self.p.symmetric && c as i64 == prev_max + 1 {
                forb_trail.push((path, self.forb_from[path], true));
                self.forb_from[path] = self.forb_from[path].min(c);
            } else {
                forb_trail.push((path, c, false));
                set_bit(&mut self.forb[c as usize], path, true);
            }
        }
        while let Some((path, v, thr)) = forb_trail.pop() {
            if thr {
                self.forb_from[path] = v;
            } else {
                set_bit(&mut self.forb[v as usize], path, false);
            }
        }
        outcome
    }

    /// Candidate picks for requirement `r`, most useful first.
    fn candidates(&self, r: usize) -> Vec<(usize, u32)> {
        let colors = self.candidate_colors(r);
        let mut out = Vec::new();
        for (w, &word) in self.p.reqs[r].x.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let path = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !self.path_open(path) {
                    continue;
                }
                let mut cs = colors;
                while cs != 0 {
                    let c = cs.trailing_zeros();
                    cs &= cs - 1;
                    if self.pick_ok(path, c) {
                        let gain = self.path_reqs[path]
                            .iter()
                            .filter(|&&q| {
                                let req = &self.p.reqs[q];
                                !satisfied(req, self.seen_colors[q])
                                    && req.allowed >> c & 1 == 1
                                    && self.seen_colors[q] >> c & 1 == 0
                            })
                            .count();
                        out.push((std::cmp::Reverse(gain), path, c));
                    }
                }
            }
        }
        out.sort_unstable();
        out.into_iter().map(|(_, p, c)| (p, c)).collect()
    }
}
