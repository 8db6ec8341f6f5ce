//! Exhaustive countermodel search.
//!
//! Carrier sizes are tried in ascending order and, within a size, the
//! interpretations of the occurring names in increasing order of their
//! bitmask encoding (bit `j·size² + a·size + b` says whether name `j`
//! contains `(a, b)`). The first interpretation satisfying every hypothesis
//! and falsifying the goal is returned.
//!
//! Evaluation is bit-sliced: each machine word holds one pair's membership
//! across 64 consecutive interpretations, so a whole block is decided with
//! one pass over the term.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::{Model, Relation};
use crate::term::{Inclusion, Term};

/// Default bound on `names · size²`, the number of interpretation bits.
pub const DEFAULT_ORACLE_BITS: usize = 27;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(
        "search space too large at carrier size {size}: {names} names need 2^{bits} interpretations (budget 2^{budget})"
    )]
    BudgetExceeded {
        size: usize,
        names: usize,
        bits: usize,
        budget: usize,
    },
}

/// A model falsifying the goal together with the smallest falsifying pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: Model,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Name(usize),
    Bottom,
    Top,
    Id,
    Di,
    Compl(usize),
    Conv(usize),
    Meet(usize, usize),
    Join(usize, usize),
    Prod(usize, usize),
    Sum(usize, usize),
}

/// Straight-line program; register `i` holds the value of `ops[i]`.
#[derive(Default)]
struct Program {
    ops: Vec<Op>,
    shared: HashMap<Op, usize>,
}

impl Program {
    fn push(&mut self, op: Op) -> usize {
        if let Some(&r) = self.shared.get(&op) {
            return r;
        }
        self.ops.push(op);
        self.shared.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn compile(&mut self, t: &Term, names: &HashMap<&str, usize>) -> usize {
        let op = match t {
            Term::Name(x) => Op::Name(names[x.as_str()]),
            Term::Bottom => Op::Bottom,
            Term::Top => Op::Top,
            Term::Id => Op::Id,
            Term::Di => Op::Di,
            Term::Compl(a) => Op::Compl(self.compile(a, names)),
            Term::Conv(a) => Op::Conv(self.compile(a, names)),
            Term::Meet(a, b) => Op::Meet(self.compile(a, names), self.compile(b, names)),
            Term::Join(a, b) => Op::Join(self.compile(a, names), self.compile(b, names)),
            Term::RelProd(a, b) => Op::Prod(self.compile(a, names), self.compile(b, names)),
            Term::RelSum(a, b) => Op::Sum(self.compile(a, names), self.compile(b, names)),
        };
        self.push(op)
    }
}

const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

struct Machine<'p> {
    program: &'p Program,
    n: usize,
    cells: usize,
    regs: Vec<u64>,
}

impl<'p> Machine<'p> {
    fn new(program: &'p Program, n: usize) -> Self {
        let cells = n * n;
        Machine {
            program,
            n,
            cells,
            regs: vec![0; program.ops.len() * cells],
        }
    }

    /// Evaluates every register for the block whose interpretation words
    /// are `interp` (one word per interpretation bit).
    fn run(&mut self, interp: &[u64]) {
        let (n, cells) = (self.n, self.cells);
        for (i, op) in self.program.ops.iter().enumerate() {
            let (done, rest) = self.regs.split_at_mut(i * cells);
            let out = &mut rest[..cells];
            let reg = |r: usize| &done[r * cells..(r + 1) * cells];
            match *op {
                Op::Name(j) => out.copy_from_slice(&interp[j * cells..(j + 1) * cells]),
                Op::Bottom => out.fill(0),
                Op::Top => out.fill(!0),
                Op::Id | Op::Di => {
                    let on_diagonal = matches!(op, Op::Id);
                    for a in 0..n {
                        for b in 0..n {
                            out[a * n + b] = if (a == b) == on_diagonal { !0 } else { 0 };
                        }
                    }
                }
                Op::Compl(x) => {
                    for (o, &v) in out.iter_mut().zip(reg(x)) {
                        *o = !v;
                    }
                }
                Op::Conv(x) => {
                    let src = reg(x);
                    for a in 0..n {
                        for b in 0..n {
                            out[a * n + b] = src[b * n + a];
                        }
                    }
                }
                Op::Meet(x, y) => {
                    for ((o, &p), &q) in out.iter_mut().zip(reg(x)).zip(reg(y)) {
                        *o = p & q;
                    }
                }
                Op::Join(x, y) => {
                    for ((o, &p), &q) in out.iter_mut().zip(reg(x)).zip(reg(y)) {
                        *o = p | q;
                    }
                }
                Op::Prod(x, y) => {
                    let (p, q) = (reg(x), reg(y));
                    for a in 0..n {
                        for b in 0..n {
                            let mut acc = 0;
                            for c in 0..n {
                                acc |= p[a * n + c] & q[c * n + b];
                            }
                            out[a * n + b] = acc;
                        }
                    }
                }
                Op::Sum(x, y) => {
                    let (p, q) = (reg(x), reg(y));
                    for a in 0..n {
                        for b in 0..n {
                            let mut acc = !0;
                            for c in 0..n {
                                acc &= p[a * n + c] | q[c * n + b];
                            }
                            out[a * n + b] = acc;
                        }
                    }
                }
            }
        }
    }

    /// Lanes in which the inclusion `lhs <= rhs` fails.
    fn failing(&self, lhs: usize, rhs: usize) -> u64 {
        let cells = self.cells;
        let l = &self.regs[lhs * cells..(lhs + 1) * cells];
        let r = &self.regs[rhs * cells..(rhs + 1) * cells];
        l.iter().zip(r).fold(0, |acc, (&a, &b)| acc | (a & !b))
    }
}

/// Searches carriers of size `1..=max_size` for a model in which every
/// hypothesis holds and `inc` fails.
///
/// Errors when a size would need more than `2^budget_bits` interpretations;
/// sizes below it have been searched by then.
pub fn find_countermodel(
    inc: &Inclusion,
    hyps: &[Inclusion],
    max_size: usize,
    budget_bits: usize,
) -> Result<Option<Countermodel>, OracleError> {
    let mut all_names = BTreeSet::new();
    inc.lhs.collect_names(&mut all_names);
    inc.rhs.collect_names(&mut all_names);
    for h in hyps {
        h.lhs.collect_names(&mut all_names);
        h.rhs.collect_names(&mut all_names);
    }
    let names: Vec<&str> = all_names.iter().map(String::as_str).collect();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let mut program = Program::default();
    let goal = (
        program.compile(&inc.lhs, &index),
        program.compile(&inc.rhs, &index),
    );
    let hyp_regs: Vec<(usize, usize)> = hyps
        .iter()
        .map(|h| (program.compile(&h.lhs, &index), program.compile(&h.rhs, &index)))
        .collect();

    for size in 1..=max_size {
        let cells = size * size;
        let bits = names.len() * cells;
        if bits > budget_bits {
            return Err(OracleError::BudgetExceeded {
                size,
                names: names.len(),
                bits,
                budget: budget_bits,
            });
        }
        let lane_bits = bits.min(6);
        let lane_mask = if lane_bits == 6 {
            !0
        } else {
            (1u64 << (1u32 << lane_bits)) - 1
        };
        let blocks: u64 = 1 << (bits - lane_bits);
        let mut machine = Machine::new(&program, size);
        let mut interp = vec![0u64; bits];
        interp[..lane_bits].copy_from_slice(&LANE_PATTERNS[..lane_bits]);
        for block in 0..blocks {
            for (k, word) in interp.iter_mut().enumerate().skip(lane_bits) {
                *word = if block >> (k - lane_bits) & 1 == 1 { !0 } else { 0 };
            }
            machine.run(&interp);
            let mut hits = machine.failing(goal.0, goal.1) & lane_mask;
            for &(l, r) in &hyp_regs {
                if hits == 0 {
                    break;
                }
                hits &= !machine.failing(l, r);
            }
            if hits != 0 {
                let code = (block << lane_bits) | u64::from(hits.trailing_zeros());
                let model = decode(&names, size, code);
                let pair = super::falsifying_pair(&model, inc).expect("goal fails in the model");
                return Ok(Some(Countermodel { model, pair }));
            }
        }
    }
    Ok(None)
}

fn decode(names: &[&str], size: usize, code: u64) -> Model {
    let cells = size * size;
    let mut m = Model::new(size);
    for (j, name) in names.iter().enumerate() {
        let pairs = (0..cells)
            .filter(|&p| code >> (j * cells + p) & 1 == 1)
            .map(|p| (p / size, p % size));
        m.set(*name, Relation::from_pairs(size, pairs));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::holds;
    use crate::term::parse_inclusion;

    fn inc(s: &str) -> Inclusion {
        parse_inclusion(s).unwrap()
    }

    /// Reference search: plain evaluation of every interpretation, in the
    /// same order.
    fn reference(goal: &Inclusion, hyps: &[Inclusion], max_size: usize) -> Option<Model> {
        let names: Vec<String> = {
            let mut all = goal.names();
            for h in hyps {
                all.extend(h.names());
            }
            all.into_iter().collect()
        };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        for size in 1..=max_size {
            let bits = names.len() * size * size;
            for code in 0u64..(1 << bits) {
                let m = decode(&refs, size, code);
                if hyps.iter().all(|h| holds(&m, h)) && !holds(&m, goal) {
                    return Some(m);
                }
            }
        }
        None
    }

    #[test]
    fn explicit_falsifier_at_size_one() {
        let found = find_countermodel(&inc("p <= q"), &[], 1, DEFAULT_ORACLE_BITS)
            .unwrap()
            .unwrap();
        assert_eq!(found.model, Model::new(1).with("p", [(0, 0)]).with("q", []));
        assert_eq!(found.pair, (0, 0));
    }

    #[test]
    fn valid_inclusion_has_no_countermodel() {
        let found = find_countermodel(&inc("p^ ; ~(p;q) <= ~q"), &[], 3, DEFAULT_ORACLE_BITS).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn hypotheses_filter_models() {
        let goal = inc("p;r';q <= p;r'';q");
        let hyps = [inc("r' <= r''")];
        assert!(find_countermodel(&goal, &hyps, 2, DEFAULT_ORACLE_BITS).unwrap().is_none());
        assert!(find_countermodel(&goal, &[], 1, DEFAULT_ORACLE_BITS).unwrap().is_some());
    }

    #[test]
    fn budget_is_enforced_per_size() {
        let err = find_countermodel(&inc("p;(q;r) <= (p;q);r"), &[], 3, 20).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded {
                size: 3,
                names: 3,
                bits: 27,
                budget: 20
            }
        );
        // The size-1 countermodel is found before the budget bites.
        assert!(find_countermodel(&inc("p <= q"), &[], 3, 2).unwrap().is_some());
    }

    #[test]
    fn agrees_with_reference_search() {
        let cases = [
            "p;q <= q;p",
            "p!q <= p;q",
            "p & I <= p^",
            "p^;p <= I",
            "D;D <= 1",
            "p;p <= p",
            "~(p;q) <= ~p ! ~q",
            "1 <= I | D",
            "p & q^ <= (p;q) | D",
        ];
        for text in cases {
            let goal = inc(text);
            let fast = find_countermodel(&goal, &[], 2, DEFAULT_ORACLE_BITS).unwrap();
            assert_eq!(fast.map(|c| c.model), reference(&goal, &[], 2), "{text}");
        }
        let goal = inc("p;p <= p");
        let hyps = [inc("p <= I")];
        let fast = find_countermodel(&goal, &hyps, 2, DEFAULT_ORACLE_BITS).unwrap();
        assert_eq!(fast.map(|c| c.model), reference(&goal, &hyps, 2));
    }

    #[test]
    fn no_names() {
        assert!(find_countermodel(&inc("I <= 1"), &[], 3, 4).unwrap().is_none());
        let found = find_countermodel(&inc("1 <= I"), &[], 3, 4).unwrap().unwrap();
        assert_eq!(found.model.size(), 2);
        assert_eq!(found.pair, (0, 1));
    }
}
