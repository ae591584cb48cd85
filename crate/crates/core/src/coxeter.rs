//! A finite-group engine over signed permutations, with brute-force verifiers
//! for the group-theoretic facts the toolkit relies on: conjugacy classes and
//! the outer automorphism of the rank-two hyperoctahedral group, the
//! characteristic sign-change subgroup in rank three, normalizers of point
//! stabilizers in symmetric groups, and the Klein four-group image of the
//! braid relations in S(4).
//!
//! Elements are signed permutations of {1,…,n}: `g[i−1] = g(i) ∈ {±1,…,±n}`
//! with `g(−i) = −g(i)`. Plain permutations are the all-positive elements.
//! The composition convention is (σ∘τ)(i) = σ(τ(i)) throughout.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("group closure exceeded the size cap of {0}")]
    SizeCap(usize),
    #[error("generators act on different degrees")]
    DegreeMismatch,
    #[error("not a signed permutation: {0}")]
    Invalid(String),
}

/// A signed permutation as its image vector.
pub type Elem = Vec<i32>;

pub fn identity(n: usize) -> Elem {
    (1..=n as i32).collect()
}

/// Build a plain permutation from 1-based images.
pub fn perm(images: &[usize]) -> Elem {
    images.iter().map(|&k| k as i32).collect()
}

/// Build the transposition (a, b) in degree n.
pub fn transposition(n: usize, a: usize, b: usize) -> Elem {
    let mut e = identity(n);
    e[a - 1] = b as i32;
    e[b - 1] = a as i32;
    e
}

/// The sign change ε_i: flips the sign of the i-th coordinate.
pub fn sign_change(n: usize, i: usize) -> Elem {
    let mut e = identity(n);
    e[i - 1] = -(i as i32);
    e
}

fn apply(g: &Elem, i: i32) -> i32 {
    if i > 0 {
        g[(i - 1) as usize]
    } else {
        -g[(-i - 1) as usize]
    }
}

pub fn compose(s: &Elem, t: &Elem) -> Elem {
    (1..=s.len() as i32)
        .map(|i| apply(s, apply(t, i)))
        .collect()
}

pub fn inverse(g: &Elem) -> Elem {
    let mut inv = vec![0; g.len()];
    for i in 1..=g.len() as i32 {
        let j = g[(i - 1) as usize];
        if j > 0 {
            inv[(j - 1) as usize] = i;
        } else {
            inv[(-j - 1) as usize] = -i;
        }
    }
    inv
}

pub fn is_valid(g: &Elem) -> bool {
    let n = g.len() as i32;
    let mut seen = vec![false; g.len()];
    for &v in g {
        if v == 0 || v.abs() > n || seen[(v.abs() - 1) as usize] {
            return false;
        }
        seen[(v.abs() - 1) as usize] = true;
    }
    true
}

pub fn element_order(g: &Elem) -> usize {
    let e = identity(g.len());
    let mut acc = g.clone();
    let mut k = 1;
    while acc != e {
        acc = compose(g, &acc);
        k += 1;
    }
    k
}

/// A finite group given by the closure of its generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    elems: Vec<Elem>,
    index: BTreeMap<Elem, usize>,
}

impl FiniteGroup {
    pub fn closure(generators: &[Elem], cap: usize) -> Result<Self, CoxeterError> {
        let n = generators
            .first()
            .map(Vec::len)
            .ok_or(CoxeterError::DegreeMismatch)?;
        for g in generators {
            if g.len() != n {
                return Err(CoxeterError::DegreeMismatch);
            }
            if !is_valid(g) {
                return Err(CoxeterError::Invalid(format!("{g:?}")));
            }
        }
        let mut elems = vec![identity(n)];
        let mut index = BTreeMap::new();
        index.insert(identity(n), 0usize);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(g, &elems[i].clone());
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(CoxeterError::SizeCap(cap));
                    }
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        Ok(FiniteGroup { n, elems, index })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn contains(&self, g: &Elem) -> bool {
        self.index.contains_key(g)
    }

    /// Conjugacy classes as sorted sets of elements.
    pub fn conjugacy_classes(&self) -> Vec<BTreeSet<Elem>> {
        let mut seen: BTreeSet<Elem> = BTreeSet::new();
        let mut classes = Vec::new();
        for g in &self.elems {
            if seen.contains(g) {
                continue;
            }
            let mut class = BTreeSet::new();
            for h in &self.elems {
                let c = compose(&compose(h, g), &inverse(h));
                class.insert(c);
            }
            for x in &class {
                seen.insert(x.clone());
            }
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elems
            .iter()
            .filter(|g| self.elems.iter().all(|h| compose(g, h) == compose(h, g)))
            .cloned()
            .collect()
    }

    /// The normalizer of a subgroup (given by its element set) in this group.
    pub fn normalizer(&self, subgroup: &BTreeSet<Elem>) -> Vec<Elem> {
        self.elems
            .iter()
            .filter(|g| {
                let ginv = inverse(g);
                subgroup
                    .iter()
                    .all(|h| subgroup.contains(&compose(&compose(g, h), &ginv)))
            })
            .cloned()
            .collect()
    }

    pub fn centralizer(&self, subgroup: &BTreeSet<Elem>) -> Vec<Elem> {
        self.elems
            .iter()
            .filter(|g| subgroup.iter().all(|h| compose(g, h) == compose(h, g)))
            .cloned()
            .collect()
    }

    /// The stabilizer of the point i (1-based) under the natural action.
    pub fn stabilizer(&self, i: usize) -> BTreeSet<Elem> {
        self.elems
            .iter()
            .filter(|g| g[i - 1] == i as i32)
            .cloned()
            .collect()
    }

    /// A greedily chosen minimal generating set.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut generated: BTreeSet<Elem> = BTreeSet::new();
        generated.insert(identity(self.n));
        for g in &self.elems {
            if generated.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let sub = FiniteGroup::closure(&gens, self.order() + 1).expect("subgroup closure");
            generated = sub.elems.into_iter().collect();
            if generated.len() == self.order() {
                break;
            }
        }
        gens
    }
}

/// An automorphism recorded as the image list: `images[i]` is the index of
/// the image of element i.
pub type GroupMap = Vec<usize>;

/// Report of the exhaustive automorphism search.
pub struct AutReport {
    pub aut_order: usize,
    pub inn_order: usize,
    pub out_order: usize,
    pub automorphisms: Vec<GroupMap>,
}

/// Exhaustive automorphism search by backtracking over images of a greedy
/// generating set; every candidate is verified a bijective homomorphism on
/// the full multiplication table.
pub fn automorphism_search(g: &FiniteGroup) -> Result<AutReport, CoxeterError> {
    if g.order() > 1000 {
        return Err(CoxeterError::SizeCap(1000));
    }
    let gens = g.greedy_generators();
    let orders: Vec<usize> = g.elements().iter().map(element_order).collect();
    let gen_orders: Vec<usize> = gens.iter().map(element_order).collect();
    // Words expressing every element in the generators, from a BFS of the
    // Cayley graph.
    let words = cayley_words(g, &gens);
    let mut automorphisms = Vec::new();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| {
            (0..g.order())
                .filter(|&i| orders[i] == o)
                .collect::<Vec<usize>>()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    search_images(g, &words, &candidates, &mut choice, 0, &mut automorphisms);
    let z = g.center().len();
    let inn_order = g.order() / z;
    let aut_order = automorphisms.len();
    Ok(AutReport {
        aut_order,
        inn_order,
        out_order: aut_order / inn_order,
        automorphisms,
    })
}

/// For each element, a word (list of generator indices, applied right to
/// left) expressing it.
fn cayley_words(g: &FiniteGroup, gens: &[Elem]) -> Vec<Vec<usize>> {
    let mut words: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    let id_idx = g.index[&identity(g.degree())];
    words[id_idx] = Some(Vec::new());
    let mut queue = VecDeque::from([id_idx]);
    while let Some(i) = queue.pop_front() {
        for (gi, gen) in gens.iter().enumerate() {
            let next = compose(gen, &g.elems[i]);
            let ni = g.index[&next];
            if words[ni].is_none() {
                let mut w = vec![gi];
                w.extend(words[i].clone().unwrap());
                words[ni] = Some(w);
                queue.push_back(ni);
            }
        }
    }
    words.into_iter().map(Option::unwrap).collect()
}

fn search_images(
    g: &FiniteGroup,
    words: &[Vec<usize>],
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<GroupMap>,
) {
    if depth == candidates.len() {
        if let Some(phi) = build_and_check(g, words, choice) {
            out.push(phi);
        }
        return;
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        search_images(g, words, candidates, choice, depth + 1, out);
    }
}

fn build_and_check(g: &FiniteGroup, words: &[Vec<usize>], choice: &[usize]) -> Option<GroupMap> {
    let n = g.degree();
    // φ(element) := product of generator images along its word.
    let mut phi = vec![0usize; g.order()];
    for (i, word) in words.iter().enumerate() {
        // The word lists generator indices leftmost-first: element =
        // gen[w₀] ∘ gen[w₁] ∘ ….
        let mut acc = identity(n);
        for &gi in word.iter().rev() {
            acc = compose(&g.elems[choice[gi]], &acc);
        }
        phi[i] = *g.index.get(&acc)?;
    }
    // Bijectivity.
    let mut seen = vec![false; g.order()];
    for &v in &phi {
        if seen[v] {
            return None;
        }
        seen[v] = true;
    }
    // Full multiplication table.
    for i in 0..g.order() {
        for j in 0..g.order() {
            let ij = g.index[&compose(&g.elems[i], &g.elems[j])];
            let phi_ij = g.index[&compose(&g.elems[phi[i]], &g.elems[phi[j]])];
            if phi[ij] != phi_ij {
                return None;
            }
        }
    }
    Some(phi)
}

/// The rank-n hyperoctahedral group of signed permutations.
pub fn hyperoctahedral(n: usize) -> FiniteGroup {
    let mut gens = vec![sign_change(n, 1)];
    for i in 1..n {
        gens.push(transposition(n, i, i + 1));
    }
    FiniteGroup::closure(&gens, 1 << 20).expect("hyperoctahedral closure")
}

/// The sign-change subgroup: signed permutations with identity underlying
/// permutation (the kernel of the projection to S(n)).
pub fn sign_subgroup(g: &FiniteGroup) -> BTreeSet<Elem> {
    g.elements()
        .iter()
        .filter(|e| e.iter().enumerate().all(|(i, &v)| v.abs() == i as i32 + 1))
        .cloned()
        .collect()
}

/// The symmetric group S(n) as plain permutations.
pub fn symmetric(n: usize) -> FiniteGroup {
    let gens: Vec<Elem> = (1..n).map(|i| transposition(n, i, i + 1)).collect();
    FiniteGroup::closure(&gens, 1 << 20).expect("symmetric group closure")
}

/// Whether the subgroup (as an element set) is stabilized by every
/// automorphism of g.
pub fn is_characteristic(g: &FiniteGroup, sub: &BTreeSet<Elem>) -> Result<bool, CoxeterError> {
    let report = automorphism_search(g)?;
    let sub_idx: BTreeSet<usize> = sub.iter().map(|e| g.index[e]).collect();
    Ok(report
        .automorphisms
        .iter()
        .all(|phi| sub_idx.iter().map(|&i| phi[i]).collect::<BTreeSet<usize>>() == sub_idx))
}

/// Find one automorphism that moves the subgroup, if any.
pub fn moving_automorphism(
    g: &FiniteGroup,
    sub: &BTreeSet<Elem>,
) -> Result<Option<GroupMap>, CoxeterError> {
    let report = automorphism_search(g)?;
    let sub_idx: BTreeSet<usize> = sub.iter().map(|e| g.index[e]).collect();
    Ok(report
        .automorphisms
        .into_iter()
        .find(|phi| sub_idx.iter().map(|&i| phi[i]).collect::<BTreeSet<usize>>() != sub_idx))
}

/// Normalizer report for the two point-stabilizer lemmas inside S(n+2).
pub struct NormalizerReport {
    pub ambient_order: usize,
    pub subgroup_order: usize,
    pub normalizer_order: usize,
    pub expected_order: usize,
    pub pass: bool,
}

/// Inside S(n+2): the normalizer of Stab(n) ∩ Stab(n+2) (a copy of S(n) on
/// the remaining letters) is that copy extended by the transposition
/// (n, n+2); its order is 2·n!.
pub fn normalizer_two_points(n: usize) -> NormalizerReport {
    let g = symmetric(n + 2);
    let sub: BTreeSet<Elem> = g
        .stabilizer(n)
        .intersection(&g.stabilizer(n + 2))
        .cloned()
        .collect();
    let norm = g.normalizer(&sub);
    let expected: usize = 2 * factorial(n);
    // Structural check: the normalizer is the subgroup together with its
    // coset by (n, n+2).
    let swap = transposition(n + 2, n, n + 2);
    let mut expected_set: BTreeSet<Elem> = sub.clone();
    for h in &sub {
        expected_set.insert(compose(&swap, h));
    }
    let norm_set: BTreeSet<Elem> = norm.iter().cloned().collect();
    NormalizerReport {
        ambient_order: g.order(),
        subgroup_order: sub.len(),
        normalizer_order: norm.len(),
        expected_order: expected,
        pass: norm.len() == expected && norm_set == expected_set,
    }
}

/// Inside S(n+2): the stabilizer of the letter n+2 (a copy of S(n+1)) is
/// self-normalizing; its order is (n+1)!.
pub fn normalizer_one_point(n: usize) -> NormalizerReport {
    let g = symmetric(n + 2);
    let sub = g.stabilizer(n + 2);
    let norm = g.normalizer(&sub);
    let expected = factorial(n + 1);
    let norm_set: BTreeSet<Elem> = norm.iter().cloned().collect();
    NormalizerReport {
        ambient_order: g.order(),
        subgroup_order: sub.len(),
        normalizer_order: norm.len(),
        expected_order: expected,
        pass: norm.len() == expected && norm_set == sub,
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The Klein four-group shadow of the braid relations in S(4).
pub struct KleinReport {
    pub s_image: Elem,
    pub t_image: Elem,
    pub st_image: Elem,
    pub uv_is_identity: bool,
    pub st_is_identity: bool,
    pub klein_order: usize,
    pub u_v_inverse_three_cycles: bool,
    pub pass: bool,
}

/// Map the braid generators to (1,2), (2,3), (3,4) in S(4) and evaluate the
/// words s = σ₃σ₁⁻¹, t = σ₂σ₃σ₁⁻¹σ₂⁻¹, u = σ₂σ₁⁻¹, v = σ₁σ₂σ₁⁻²:
/// u and v map to mutually inverse 3-cycles with uv ↦ id, while st maps to a
/// nontrivial element, and the images of s and t generate the Klein
/// four-group.
pub fn klein_example() -> KleinReport {
    let s1 = transposition(4, 1, 2);
    let s2 = transposition(4, 2, 3);
    let s3 = transposition(4, 3, 4);
    let word =
        |parts: &[&Elem]| -> Elem { parts.iter().fold(identity(4), |acc, p| compose(&acc, p)) };
    // Transpositions are involutions, so σᵢ⁻¹ = σᵢ.
    let s = word(&[&s3, &s1]);
    let t = word(&[&s2, &s3, &s1, &s2]);
    let u = word(&[&s2, &s1]);
    let v = word(&[&s1, &s2, &s1, &s1]);
    let st = compose(&s, &t);
    let uv = compose(&u, &v);
    let klein = FiniteGroup::closure(&[s.clone(), t.clone()], 100).expect("closure");
    let u_v_inverse_three_cycles =
        element_order(&u) == 3 && element_order(&v) == 3 && inverse(&u) == v;
    let uv_is_identity = uv == identity(4);
    let st_is_identity = st == identity(4);
    let pass = uv_is_identity
        && !st_is_identity
        && klein.order() == 4
        && u_v_inverse_three_cycles
        && s == perm(&[2, 1, 4, 3])
        && t == perm(&[3, 4, 1, 2]);
    KleinReport {
        s_image: s,
        t_image: t,
        st_image: st,
        uv_is_identity,
        st_is_identity,
        klein_order: klein.order(),
        u_v_inverse_three_cycles,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_adjacent_transpositions() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(hyperoctahedral(2).order(), 8);
        assert_eq!(hyperoctahedral(3).order(), 48);
    }

    #[test]
    fn composition_convention() {
        // (σ∘τ)(i) = σ(τ(i)): with σ = (1,2), τ = (2,3): στ = (1,2,3)?
        // στ(1) = σ(1) = 2, στ(2) = σ(3) = 3, στ(3) = σ(2) = 1.
        let sigma = transposition(3, 1, 2);
        let tau = transposition(3, 2, 3);
        assert_eq!(compose(&sigma, &tau), perm(&[2, 3, 1]));
        // Inverse round trip for a signed element.
        let g = vec![-3, 1, -2];
        assert!(is_valid(&g));
        assert_eq!(compose(&g, &inverse(&g)), identity(3));
        assert_eq!(compose(&inverse(&g), &g), identity(3));
    }

    #[test]
    fn rank_two_conjugacy_classes() {
        // Five classes: {e}, {w₀}, {ε₁σ, ε₂σ}, {ε₁, ε₂}, {σ, w₀σ}.
        let g = hyperoctahedral(2);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 5);
        let mut sizes: Vec<usize> = classes.iter().map(BTreeSet::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let expect: Vec<BTreeSet<Elem>> = vec![
            BTreeSet::from([vec![1, 2]]),
            BTreeSet::from([vec![-1, -2]]),
            BTreeSet::from([vec![2, -1], vec![-2, 1]]),
            BTreeSet::from([vec![-1, 2], vec![1, -2]]),
            BTreeSet::from([vec![2, 1], vec![-2, -1]]),
        ];
        for c in &expect {
            assert!(classes.contains(c), "missing class {c:?}");
        }
    }

    #[test]
    fn rank_two_automorphisms() {
        let g = hyperoctahedral(2);
        assert_eq!(g.center().len(), 2);
        let report = automorphism_search(&g).unwrap();
        assert_eq!(report.aut_order, 8);
        assert_eq!(report.inn_order, 4);
        assert_eq!(report.out_order, 2);
    }

    #[test]
    fn graph_involution_moves_rank_two_signs() {
        // The sign subgroup of rank 2 is normal but not characteristic.
        let g = hyperoctahedral(2);
        let e2 = sign_subgroup(&g);
        assert_eq!(e2.len(), 4);
        assert_eq!(g.normalizer(&e2).len(), g.order(), "normal");
        assert!(moving_automorphism(&g, &e2).unwrap().is_some());
    }

    #[test]
    fn rank_three_signs_characteristic() {
        let g = hyperoctahedral(3);
        let e3 = sign_subgroup(&g);
        assert_eq!(e3.len(), 8);
        assert!(is_characteristic(&g, &e3).unwrap());
    }

    #[test]
    fn cyclic_three_automorphisms() {
        // Aut(ℤ/3) has order 2; realize ℤ/3 as ⟨(1,2,3)⟩.
        let g = FiniteGroup::closure(&[perm(&[2, 3, 1])], 10).unwrap();
        let report = automorphism_search(&g).unwrap();
        assert_eq!(report.aut_order, 2);
        assert_eq!(report.inn_order, 1);
    }

    #[test]
    fn normalizer_lemmas_small() {
        let r = normalizer_two_points(3);
        assert!(
            r.pass,
            "order {} expected {}",
            r.normalizer_order, r.expected_order
        );
        assert_eq!(r.normalizer_order, 12);
        let r = normalizer_one_point(3);
        assert!(r.pass);
        assert_eq!(r.normalizer_order, 24);
    }

    #[test]
    fn klein_assertions() {
        let r = klein_example();
        assert!(r.pass);
        assert_eq!(r.s_image, perm(&[2, 1, 4, 3]));
        assert_eq!(r.t_image, perm(&[3, 4, 1, 2]));
        assert_eq!(r.st_image, perm(&[4, 3, 2, 1]));
    }
}
