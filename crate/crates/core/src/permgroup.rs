//! Permutation groups through a base and strong generating set
//! (deterministic Schreier-Sims).

use std::collections::VecDeque;

/// Permutation of `0..n`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &j in &self.0 {
            if j >= seen.len() || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &j)| *i != j).map(|(i, _)| i)
    }
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `transversal[b]` maps `point` to `b`, for `b` in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Level { point, gens: Vec::new(), transversal: vec![None; degree], orbit: Vec::new() };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        self.transversal = vec![None; n];
        self.transversal[self.point] = Some(Perm::identity(n));
        self.orbit = vec![self.point];
        let mut queue = VecDeque::from([self.point]);
        while let Some(b) = queue.pop_front() {
            for g in &self.gens {
                let c = g.apply(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().then(g);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                    queue.push_back(c);
                }
            }
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut group = PermGroup { degree, levels: Vec::new() };
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if group.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let p = g.first_moved().unwrap();
                group.levels.push(Level::new(p, degree));
            }
        }
        // Level i gets the generators fixing all earlier base points.
        for i in 0..group.levels.len() {
            let fixed: Vec<usize> = group.levels[..i].iter().map(|l| l.point).collect();
            group.levels[i].gens = gens.iter().filter(|g| fixed.iter().all(|&b| g.apply(b) == b)).cloned().collect();
        }
        for level in &mut group.levels {
            level.rebuild_orbit();
        }
        group.schreier_sims();
        group
    }

    /// Sifts `g` through the chain starting at `start`; returns the residue
    /// and the level at which sifting stopped (`levels.len()` on completion).
    fn strip(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for j in start..self.levels.len() {
            let level = &self.levels[j];
            let b = g.apply(level.point);
            match &level.transversal[b] {
                None => return (g, j),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'outer: loop {
            let level = &self.levels[i];
            for &b in &level.orbit.clone() {
                let ub = level.transversal[b].clone().unwrap();
                for s in &level.gens.clone() {
                    let c = s.apply(b);
                    let uc_inv = self.levels[i].transversal[c].as_ref().unwrap().inverse();
                    let h = ub.then(s).then(&uc_inv);
                    let (y, j) = self.strip(h, i + 1);
                    let drop = j < self.levels.len();
                    if drop || !y.is_identity() {
                        if !drop {
                            let p = y.first_moved().unwrap();
                            self.levels.push(Level::new(p, self.degree));
                        }
                        let top = if drop { j } else { self.levels.len() - 1 };
                        for l in i + 1..=top {
                            self.levels[l].gens.push(y.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = top;
                        continue 'outer;
                    }
                }
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
    }

    /// Group order, the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (y, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && y.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Perm(v)
    }

    #[test]
    fn symmetric_groups() {
        let mut fact = 1u128;
        for n in 2..=8 {
            fact *= n as u128;
            let g = PermGroup::new(n, &[cycle(n), transposition(n, 0, 1)]);
            assert_eq!(g.order(), fact, "S_{n}");
        }
    }

    #[test]
    fn cyclic_and_trivial() {
        assert_eq!(PermGroup::new(7, &[cycle(7)]).order(), 7);
        assert_eq!(PermGroup::new(4, &[Perm::identity(4)]).order(), 1);
        assert_eq!(PermGroup::new(4, &[]).order(), 1);
    }

    #[test]
    fn alternating_group_membership() {
        // A_5 generated by (0 1 2) and (0 1 2 3 4)
        let three = Perm(vec![1, 2, 0, 3, 4]);
        let g = PermGroup::new(5, &[three, cycle(5)]);
        assert_eq!(g.order(), 60);
        assert!(!g.contains(&transposition(5, 0, 1)));
        assert!(g.contains(&Perm(vec![1, 0, 3, 2, 4])));
    }

    #[test]
    fn perm_algebra() {
        let c = cycle(5);
        assert!(c.then(&c.inverse()).is_identity());
        assert!(c.is_valid());
        assert!(!Perm(vec![0, 0]).is_valid());
    }
}
