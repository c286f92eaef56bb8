//! 2-SAT via the implication graph and strongly connected components.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    pub fn negate(self) -> Self {
        Lit { var: self.var, negated: !self.negated }
    }

    fn node(self) -> usize {
        2 * self.var + self.negated as usize
    }

    pub fn eval(self, values: &[bool]) -> bool {
        values[self.var] != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("literal refers to variable {var} but the formula has {num_vars} variables")]
pub struct VarOutOfRange {
    pub var: usize,
    pub num_vars: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("formula is unsatisfiable")]
pub struct Unsatisfiable;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn get(&self, var: usize) -> bool {
        self.values[var]
    }
}

impl Formula {
    pub fn new(num_vars: usize) -> Self {
        Formula { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// Appends a fresh variable and returns its index.
    pub fn new_var(&mut self) -> usize {
        self.num_vars += 1;
        self.num_vars - 1
    }

    fn check(&self, l: Lit) -> Result<(), VarOutOfRange> {
        if l.var < self.num_vars {
            Ok(())
        } else {
            Err(VarOutOfRange { var: l.var, num_vars: self.num_vars })
        }
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) -> Result<(), VarOutOfRange> {
        self.check(a)?;
        self.check(b)?;
        self.clauses.push((a, b));
        Ok(())
    }

    /// Unit clause, stored as `(a ∨ a)`.
    pub fn add_unit(&mut self, a: Lit) -> Result<(), VarOutOfRange> {
        self.add_clause(a, a)
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|&(a, b)| a.eval(values) || b.eval(values))
    }

    pub fn solve(&self) -> Result<Assignment, Unsatisfiable> {
        let n = 2 * self.num_vars;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.clauses {
            adj[a.negate().node()].push(b.node());
            adj[b.negate().node()].push(a.node());
        }
        let comp = tarjan_scc(&adj);
        let mut values = Vec::with_capacity(self.num_vars);
        for v in 0..self.num_vars {
            let (t, f) = (comp[2 * v], comp[2 * v + 1]);
            if t == f {
                return Err(Unsatisfiable);
            }
            // Tarjan numbers components in reverse topological order, so the
            // literal whose component comes first is the one closer to a sink.
            values.push(t < f);
        }
        debug_assert!(self.is_satisfied_by(&values));
        Ok(Assignment { values })
    }
}

/// Iterative Tarjan; returns the component id of every node. Ids are assigned
/// in the order components are completed (reverse topological order).
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, edge)) = call.last() {
            if edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(edge) {
                call.last_mut().expect("non-empty").1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_clauses() {
        let mut f = Formula::new(1);
        f.add_unit(Lit::pos(0)).unwrap();
        assert!(f.solve().unwrap().get(0));
        f.add_unit(Lit::neg(0)).unwrap();
        assert_eq!(f.solve(), Err(Unsatisfiable));
    }

    #[test]
    fn forced_variable() {
        let mut f = Formula::new(2);
        f.add_clause(Lit::pos(0), Lit::pos(1)).unwrap();
        f.add_clause(Lit::neg(0), Lit::pos(1)).unwrap();
        assert_eq!(f.clauses().len(), 2);
        assert!(f.solve().unwrap().get(1));
    }

    #[test]
    fn rejects_out_of_range() {
        let mut f = Formula::new(1);
        assert_eq!(f.add_clause(Lit::pos(0), Lit::neg(1)), Err(VarOutOfRange { var: 1, num_vars: 1 }));
        assert!(f.clauses().is_empty());
    }

    #[test]
    fn long_implication_chain_is_iterative() {
        let n = 200_000;
        let mut f = Formula::new(n);
        for v in 0..n - 1 {
            f.add_clause(Lit::neg(v), Lit::pos(v + 1)).unwrap();
        }
        f.add_unit(Lit::pos(0)).unwrap();
        let a = f.solve().unwrap();
        assert!(a.values.iter().all(|&b| b));
    }
}
