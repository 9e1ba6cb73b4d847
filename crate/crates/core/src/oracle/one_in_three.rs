use crate::error::{Error, Result};
use crate::reduction::Formula13;
use crate::twosat::Assignment;

pub const MAX_ONE_IN_THREE_VARS: usize = 25;

/// Every 1-in-3 assignment, in lexicographic order of the value vectors
/// (false before true, variable 0 most significant).
pub fn enumerate_one_in_three(f: &Formula13) -> Result<Vec<Assignment>> {
    let n = f.var_count();
    if n > MAX_ONE_IN_THREE_VARS {
        return Err(Error::OracleBound { size: n, bound: MAX_ONE_IN_THREE_VARS });
    }
    let mut occurs = vec![Vec::new(); n];
    for (j, c) in f.clauses().iter().enumerate() {
        for &x in c {
            occurs[x].push(j);
        }
    }
    let mut state = Enum {
        occurs: &occurs,
        values: vec![false; n],
        trues: vec![0; f.clauses().len()],
        unset: vec![3; f.clauses().len()],
        out: Vec::new(),
    };
    state.go(0);
    Ok(state.out)
}

struct Enum<'a> {
    occurs: &'a [Vec<usize>],
    values: Vec<bool>,
    trues: Vec<usize>,
    unset: Vec<usize>,
    out: Vec<Assignment>,
}

impl Enum<'_> {
    fn go(&mut self, x: usize) {
        if x == self.values.len() {
            if self.trues.iter().all(|&t| t == 1) {
                self.out.push(Assignment(self.values.clone()));
            }
            return;
        }
        for value in [false, true] {
            self.values[x] = value;
            let mut ok = true;
            for &j in &self.occurs[x] {
                self.unset[j] -= 1;
                self.trues[j] += usize::from(value);
                if self.trues[j] > 1 || self.trues[j] + self.unset[j] == 0 {
                    ok = false;
                }
            }
            if ok {
                self.go(x + 1);
            }
            for &j in &self.occurs[x] {
                self.unset[j] += 1;
                self.trues[j] -= usize::from(value);
            }
        }
        self.values[x] = false;
    }
}
