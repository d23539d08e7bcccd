//! Small dense linear programs solved exactly.
//!
//! Dictionary-form simplex over rationals with Bland's rule, so it
//! terminates on degenerate problems. Rows are kept in the compact
//! "basic = constant + sum(coef * nonbasic)" layout: the tableau has one
//! column per nonbasic variable, which stays narrow for the tall systems
//! produced by ball intersections (many rows, 3-7 columns).

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// `maximize <objective, x>` subject to `<row, x> <= rhs`, with optional
/// free (sign-unrestricted) variables; all other variables are `>= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    objective: Vec<Rational>,
    rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&Rational, &[Rational])> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            objective: vec![Rational::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn add_le(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        assert_eq!(row.len(), self.num_vars);
        self.rows.push((row, rhs));
        self
    }

    pub fn add_ge(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.add_le(row.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn add_eq(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.add_le(row.clone(), rhs.clone());
        self.add_ge(row, rhs)
    }

    pub fn solve(&self) -> LpOutcome {
        Dictionary::build(self).solve(self)
    }
}

struct Dictionary {
    n: usize,
    free: Vec<bool>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    beta: Vec<Rational>,
    tab: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    z0: Rational,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Dictionary {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let m = lp.rows.len();
        Dictionary {
            n,
            free: lp.free.clone(),
            basic: (n..n + m).collect(),
            nonbasic: (0..n).collect(),
            beta: lp.rows.iter().map(|(_, b)| b.clone()).collect(),
            tab: lp
                .rows
                .iter()
                .map(|(a, _)| a.iter().map(|c| -c).collect())
                .collect(),
            obj: lp.objective.clone(),
            z0: Rational::zero(),
        }
    }

    fn is_free(&self, var: usize) -> bool {
        var < self.n && self.free[var]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.tab[r][c].clone();
        let inv = p.recip();
        // Solve row r for the entering variable.
        let mut new_row: Vec<Rational> = self.tab[r].iter().map(|t| -(t * &inv)).collect();
        new_row[c] = inv.clone();
        let new_beta = -(&self.beta[r] * &inv);

        for i in 0..self.tab.len() {
            if i == r {
                continue;
            }
            let coef = self.tab[i][c].clone();
            if coef.is_zero() {
                continue;
            }
            for (j, nr) in new_row.iter().enumerate() {
                if j == c {
                    self.tab[i][j] = &coef * nr;
                } else if !nr.is_zero() {
                    let delta = &coef * nr;
                    self.tab[i][j] += delta;
                }
            }
            self.beta[i] += &coef * &new_beta;
        }
        let coef = self.obj[c].clone();
        if !coef.is_zero() {
            for (j, nr) in new_row.iter().enumerate() {
                if j == c {
                    self.obj[j] = &coef * nr;
                } else if !nr.is_zero() {
                    let delta = &coef * nr;
                    self.obj[j] += delta;
                }
            }
            self.z0 += &coef * &new_beta;
        }
        self.tab[r] = new_row;
        self.beta[r] = new_beta;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[c]);
    }

    /// Runs Bland's-rule simplex on the current (feasible) dictionary.
    fn run(&mut self) -> Step {
        loop {
            let entering = self
                .nonbasic
                .iter()
                .enumerate()
                .filter(|(c, &var)| {
                    self.obj[*c].is_positive() || (self.is_free(var) && self.obj[*c].is_negative())
                })
                .min_by_key(|(_, &var)| var)
                .map(|(c, _)| c);
            let Some(c) = entering else {
                return Step::Optimal;
            };
            let dir_positive = self.obj[c].is_positive();

            let mut best: Option<(Rational, usize, usize)> = None;
            for (i, &var) in self.basic.iter().enumerate() {
                if self.is_free(var) {
                    continue;
                }
                let k = if dir_positive {
                    self.tab[i][c].clone()
                } else {
                    -self.tab[i][c].clone()
                };
                if !k.is_negative() {
                    continue;
                }
                let ratio = &self.beta[i] / -k;
                let better = match &best {
                    None => true,
                    Some((r, _, bv)) => ratio < *r || (ratio == *r && var < *bv),
                };
                if better {
                    best = Some((ratio, i, var));
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, c),
                None => return Step::Unbounded,
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let needs_phase_one = self.beta.iter().any(Signed::is_negative);
        if needs_phase_one {
            let art = self.n + self.basic.len();
            for row in &mut self.tab {
                row.push(Rational::one());
            }
            self.nonbasic.push(art);
            self.obj = vec![Rational::zero(); self.nonbasic.len()];
            *self.obj.last_mut().unwrap() = -Rational::one();
            self.z0 = Rational::zero();

            let c = self.nonbasic.len() - 1;
            let r = (0..self.beta.len())
                .min_by(|&a, &b| self.beta[a].cmp(&self.beta[b]))
                .unwrap();
            self.pivot(r, c);
            // Phase one is bounded above by zero.
            let _ = self.run();
            if self.z0.is_negative() {
                return LpOutcome::Infeasible;
            }
            if let Some(r) = self.basic.iter().position(|&v| v == art) {
                match (0..self.nonbasic.len()).find(|&c| !self.tab[r][c].is_zero()) {
                    Some(c) => self.pivot(r, c),
                    None => {
                        self.basic.remove(r);
                        self.beta.remove(r);
                        self.tab.remove(r);
                    }
                }
            }
            let c = self.nonbasic.iter().position(|&v| v == art).unwrap();
            self.nonbasic.remove(c);
            for row in &mut self.tab {
                row.remove(c);
            }
        }

        // Express the real objective over the current nonbasic variables.
        self.obj = vec![Rational::zero(); self.nonbasic.len()];
        self.z0 = Rational::zero();
        for (var, coef) in lp.objective.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if let Some(c) = self.nonbasic.iter().position(|&v| v == var) {
                self.obj[c] += coef;
            } else if let Some(r) = self.basic.iter().position(|&v| v == var) {
                self.z0 += coef * &self.beta[r];
                for c in 0..self.nonbasic.len() {
                    let delta = coef * &self.tab[r][c];
                    self.obj[c] += delta;
                }
            }
        }

        match self.run() {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![Rational::zero(); self.n];
                for (r, &var) in self.basic.iter().enumerate() {
                    if var < self.n {
                        x[var] = self.beta[r].clone();
                    }
                }
                LpOutcome::Optimal { value: self.z0, x }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 5x + 4y + 3z; 2x+3y+z<=5, 4x+y+2z<=11, 3x+4y+2z<=8 -> 13 at (2,0,1)
        let mut lp = LinearProgram::new(3);
        lp.maximize(ints(&[5, 4, 3]))
            .add_le(ints(&[2, 3, 1]), int(5))
            .add_le(ints(&[4, 1, 2]), int(11))
            .add_le(ints(&[3, 4, 2]), int(8));
        let out = lp.solve();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: int(13),
                x: ints(&[2, 0, 1])
            }
        );
    }

    #[test]
    fn phase_one_and_free_variables() {
        // min |x - 3| style: max -r, r >= x - 3, r >= 3 - x, x free, x >= 5
        let mut lp = LinearProgram::new(2);
        lp.set_free(0)
            .maximize(ints(&[0, -1]))
            .add_le(ints(&[1, -1]), int(3))
            .add_le(ints(&[-1, -1]), int(-3))
            .add_ge(ints(&[1, 0]), int(5));
        let (value, x) = lp.solve().optimal().map(|(v, x)| (v.clone(), x.to_vec())).unwrap();
        assert_eq!(value, int(-2));
        assert_eq!(x, ints(&[5, 2]));
    }

    #[test]
    fn free_variable_can_go_negative() {
        let mut lp = LinearProgram::new(1);
        lp.set_free(0)
            .maximize(ints(&[-1]))
            .add_ge(ints(&[2]), int(-3));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                value: frac(3, 2),
                x: vec![frac(-3, 2)]
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_le(ints(&[1]), int(0)).add_ge(ints(&[1]), int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.maximize(ints(&[1, 1])).add_le(ints(&[1, -1]), int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_vertex_does_not_cycle() {
        // Beale's cycling example.
        let mut lp = LinearProgram::new(4);
        lp.maximize(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)])
            .add_le(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)], int(0))
            .add_le(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)], int(0))
            .add_le(ints(&[0, 0, 1, 0]), int(1));
        let (value, _) = lp.solve().optimal().map(|(v, x)| (v.clone(), x.to_vec())).unwrap();
        assert_eq!(value, frac(1, 20));
    }
}
