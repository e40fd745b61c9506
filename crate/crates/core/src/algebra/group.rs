use std::collections::HashMap;
use std::hash::Hash;

use num_integer::Integer;

use super::{Algebra, AlgebraError, SerreData};
use crate::linalg::SparseMatrix;
use crate::scalars::CycScalar;

/// A finite group by its multiplication table, optionally with the BFS
/// spanning tree over a generating set used to build representations.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    /// `tree[g] = Some((h, s))` when g = h · generator s.
    tree: Vec<Option<(usize, usize)>>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table: closure, associativity, identity and inverses.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::NotAGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotAGroup(format!("row {g} has length {}", row.len())));
            }
            if let Some(h) = row.iter().position(|&x| x >= n) {
                return Err(AlgebraError::NotAGroup(format!("{g}·{h} is outside the table")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| AlgebraError::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| AlgebraError::NotAGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
        }
        let labels = (0..n).map(|g| if g == identity { "e".to_string() } else { format!("g{g}") }).collect();
        let mut grp = FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            labels,
            tree: vec![None; n],
            generators: Vec::new(),
        };
        let gens = grp.greedy_generators();
        grp.set_generators(&gens);
        Ok(grp)
    }

    /// Closure of `gens` under multiplication, elements numbered in BFS order
    /// from the identity. Labels are words in `gen_names`.
    pub fn generate<T: Clone + Eq + Hash>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        gen_names: &[&str],
        mul: impl Fn(&T, &T) -> T,
    ) -> Self {
        assert_eq!(gens.len(), gen_names.len());
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut tree = vec![None];
        let mut head = 0;
        while head < elements.len() {
            let g = elements[head].clone();
            for (s, gen) in gens.iter().enumerate() {
                let h = mul(&g, gen);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    let mut word = words[head].clone();
                    word.push(s);
                    words.push(word);
                    tree.push(Some((head, s)));
                    elements.push(h);
                }
            }
            head += 1;
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&mul(&elements[a], &elements[b])]).collect()).collect();
        let inverse = (0..n).map(|g| (0..n).find(|&h| table[g][h] == 0).expect("finite group")).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        let labels = words.iter().map(|w| render_word(w, gen_names)).collect();
        FiniteGroup { name: name.into(), table, identity: 0, inverse, labels, tree, generators }
    }

    fn subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(g) = stack.pop() {
            for &x in gens {
                let h = self.table[g][x];
                if !inside[h] {
                    inside[h] = true;
                    stack.push(h);
                }
            }
        }
        inside
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.subgroup(&gens);
        // prefer elements of large order so cyclic groups get one generator
        let mut candidates: Vec<usize> = (0..self.order()).collect();
        candidates.sort_by_key(|&g| std::cmp::Reverse(self.element_order(g)));
        for g in candidates {
            if !inside[g] {
                gens.push(g);
                inside = self.subgroup(&gens);
            }
        }
        gens
    }

    fn set_generators(&mut self, gens: &[usize]) {
        let n = self.order();
        let mut tree = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.identity] = true;
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for (s, &x) in gens.iter().enumerate() {
                let h = self.table[g][x];
                if !seen[h] {
                    seen[h] = true;
                    tree[h] = Some((g, s));
                    queue.push_back(h);
                }
            }
        }
        self.tree = tree;
        self.generators = gens.to_vec();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let a_inv_b_inv = self.mul(self.inverse(a), self.inverse(b));
        self.mul(ab, a_inv_b_inv)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inverse(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Extends generator images to ρ(g) for every element along the BFS tree.
    /// The caller is responsible for checking that the result is a homomorphism.
    pub fn extend_from_generators(&self, images: &[SparseMatrix]) -> Vec<SparseMatrix> {
        assert_eq!(images.len(), self.generators.len(), "one image per generator");
        let dim = images.first().map_or(0, SparseMatrix::rows);
        let mut out: Vec<Option<SparseMatrix>> = vec![None; self.order()];
        out[self.identity] = Some(SparseMatrix::identity(dim));
        // BFS order guarantees parents are filled first when built by `generate`
        let mut pending: Vec<usize> = (0..self.order()).filter(|&g| g != self.identity).collect();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|&g| {
                let (parent, s) = self.tree[g].expect("generating set reaches every element");
                match &out[parent] {
                    Some(p) => {
                        out[g] = Some(p.matmul(&images[s]));
                        false
                    }
                    None => true,
                }
            });
            assert!(pending.len() < before, "spanning tree is not connected");
        }
        out.into_iter().map(|m| m.expect("filled")).collect()
    }

    /// The group algebra K[G] with λ = coefficient of the identity.
    pub fn algebra(&self) -> Algebra {
        let n = self.order();
        let mult = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| vec![(self.table[a][b], CycScalar::one())])
            .collect();
        let mut unit = vec![CycScalar::zero(); n];
        unit[self.identity] = CycScalar::one();
        let serre = SerreData::symmetric(unit.clone());
        let gens = self.generators.iter().map(|&g| vec![(g, CycScalar::one())]).collect();
        Algebra::from_parts_unchecked(
            self.name.clone(),
            self.labels.clone(),
            mult,
            unit,
            Some(serre),
            self.exponent() as u32,
        )
        .expect("group algebra shape")
        .with_generators(gens)
    }
}

/// "e" for the empty word, otherwise runs written as powers: [0, 0, 1] ↦ "r^2s".
fn render_word(word: &[usize], names: &[&str]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let run = word[i..].iter().take_while(|&&x| x == word[i]).count();
        out.push_str(names[word[i]]);
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        i += run;
    }
    out
}

/// K[G] from a multiplication table, validating the group axioms first.
pub fn group_algebra(table: Vec<Vec<usize>>) -> Result<Algebra, AlgebraError> {
    let g = FiniteGroup::from_table("group", table)?;
    let a = g.algebra();
    a.validate()?;
    Ok(a)
}
