//! Named matrix groups acting on hyperbolic 3-space: generator sets,
//! seeded word sampling, congruence filtering and a bounded-search reduction
//! towards a fundamental domain.
//!
//! Extended elements are pairs `(M, f)` acting as `p ↦ M·(Tᶠ p)` where `T`
//! is the transpose involution; composition uses `T·g = ḡ·T`.

use crate::error::{Error, Result};
use crate::gaussian::{is_congruent_identity, GMat2, GaussInt, Modulus};
use crate::halfspace::{act_complex, gmat_to_complex, transpose_action, CMat2, Point};
use crate::scalar::{Complex, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Draw budget of [`sample_congruence`].
pub const SAMPLE_BUDGET: u64 = 1_000_000;

/// Word length scanned when discovering the translation lattice at ∞.
pub const TRANSLATION_SCAN_LEN: usize = 8;

/// Node cap for the breadth-first enumeration of short elements.
pub const BFS_NODE_CAP: usize = 400_000;

fn m(e: [(i64, i64); 4]) -> GMat2 {
    GMat2::from_parts(e)
}

/// The two generators of the Whitehead-link-complement group.
pub fn whitehead_generators() -> (GMat2, GMat2) {
    (m([(1, 0), (0, 1), (0, 0), (1, 0)]), m([(1, 0), (0, 0), (1, 1), (1, 0)]))
}

/// Generators of GL(2, Z[i]): two translations, the inversion and `diag(i, 1)`.
pub fn bianchi_generators() -> Vec<GMat2> {
    vec![
        m([(1, 0), (1, 0), (0, 0), (1, 0)]),
        m([(1, 0), (0, 1), (0, 0), (1, 0)]),
        m([(0, 0), (-1, 0), (1, 0), (0, 0)]),
        m([(0, 1), (0, 0), (0, 0), (1, 0)]),
    ]
}

/// Elementary matrices of level 2.
pub fn level_two_elementary() -> Vec<GMat2> {
    vec![
        m([(1, 0), (2, 0), (0, 0), (1, 0)]),
        m([(1, 0), (0, 2), (0, 0), (1, 0)]),
        m([(1, 0), (0, 0), (2, 0), (1, 0)]),
        m([(1, 0), (0, 0), (0, 2), (1, 0)]),
    ]
}

/// SL(2, Z) generators, for the classical one-dimensional analog.
pub fn modular_generators() -> Vec<GMat2> {
    vec![m([(1, 0), (1, 0), (0, 0), (1, 0)]), m([(0, 0), (-1, 0), (1, 0), (0, 0)])]
}

/// A generator set defining a sampling-accessible group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub generators: Vec<GMat2>,
    pub include_transpose: bool,
    /// Elements are the words in `generators` whose matrix is `≡ ±I` mod this ideal.
    pub congruence: Option<Modulus>,
}

pub const GROUP_NAMES: [&str; 7] =
    ["gamma", "gamma2", "gamma1pi", "whitehead", "gammaT2", "lambda_group", "gamma2_classical"];

impl GroupSpec {
    pub fn new(name: &str, generators: Vec<GMat2>, include_transpose: bool) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| !g.has_unit_det()) {
            return Err(Error::InvalidPoint(format!("generator {g} has non-unit determinant")));
        }
        Ok(Self { name: name.to_string(), generators, include_transpose, congruence: None })
    }

    pub fn with_congruence(mut self, modulus: Modulus) -> Self {
        self.congruence = Some(modulus);
        self
    }

    pub fn whitehead() -> Self {
        let (a, b) = whitehead_generators();
        Self::new("whitehead", vec![a, b], false).expect("unit determinants")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        let gamma = || Self::new(name, bianchi_generators(), false).expect("unit determinants");
        Ok(match name {
            "gamma" => gamma(),
            "gamma2" => gamma().with_congruence(Modulus::Two),
            "gamma1pi" => gamma().with_congruence(Modulus::OnePlusI),
            "whitehead" => Self::whitehead(),
            "gammaT2" => {
                let mut s = gamma().with_congruence(Modulus::Two);
                s.include_transpose = true;
                s
            }
            "lambda_group" => {
                let (a, b) = whitehead_generators();
                let mut gens = vec![a, b];
                gens.extend(level_two_elementary());
                Self::new(name, gens, true)?
            }
            "gamma2_classical" => Self::new(name, modular_generators(), false)?.with_congruence(Modulus::Two),
            other => {
                return Err(Error::Parse(format!(
                    "unknown group {other:?}; expected one of {}",
                    GROUP_NAMES.join(", ")
                )))
            }
        })
    }

    /// Letters: `2k` is generator `k`, `2k+1` its inverse, and `2·len` is `T` when enabled.
    pub fn letter_count(&self) -> usize {
        2 * self.generators.len() + usize::from(self.include_transpose)
    }

    pub fn inverse_letter(&self, l: usize) -> usize {
        if l == 2 * self.generators.len() {
            l
        } else {
            l ^ 1
        }
    }

    fn letter(&self, l: usize) -> Result<(GMat2, bool)> {
        let n = self.generators.len();
        if l == 2 * n && self.include_transpose {
            Ok((GMat2::identity(), true))
        } else if l < 2 * n {
            let g = self.generators[l / 2];
            Ok((if l.is_multiple_of(2) { g } else { g.inv()? }, false))
        } else {
            Err(Error::Parse(format!("letter {l} out of range")))
        }
    }

    /// Evaluates a word to its extended matrix `(M, transposed)`.
    pub fn replay(&self, word: &[usize]) -> Result<(GMat2, bool)> {
        let mut acc = (GMat2::identity(), false);
        for &l in word {
            acc = compose(&acc, &self.letter(l)?)?;
        }
        Ok(acc)
    }

    /// Membership of a word result in the (filtered) group.
    pub fn admits(&self, g: &GMat2) -> bool {
        match self.congruence {
            None => true,
            Some(md) => {
                let mg = md.generator::<i64>();
                is_congruent_identity(g, mg).unwrap_or(false)
                    || g.neg().ok().is_some_and(|n| is_congruent_identity(&n, mg).unwrap_or(false))
            }
        }
    }
}

/// `(M1, f1)∘(M2, f2) = (M1·(f1 ? M̄2 : M2), f1 ⊕ f2)`.
pub fn compose(x: &(GMat2, bool), y: &(GMat2, bool)) -> Result<(GMat2, bool)> {
    let rhs = if x.1 { y.0.conj() } else { y.0 };
    Ok((x.0.checked_mul(&rhs)?, x.1 ^ y.1))
}

/// A group element with the word that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub matrix: GMat2,
    pub transposed: bool,
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { matrix: GMat2::identity(), transposed: false, word: Vec::new() }
    }

    pub fn from_word(spec: &GroupSpec, word: Vec<usize>) -> Result<Self> {
        let (matrix, transposed) = spec.replay(&word)?;
        Ok(Self { matrix, transposed, word })
    }

    pub fn act<T: Real>(&self, p: &Point<T>) -> Result<Point<T>> {
        act_ext(&gmat_to_complex(&self.matrix), self.transposed, p)
    }
}

pub fn act_ext<T: Real>(g: &CMat2<T>, transposed: bool, p: &Point<T>) -> Result<Point<T>> {
    let q = if transposed { transpose_action(p) } else { *p };
    act_complex(g, &q)
}

fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(0..letters)).collect()
}

/// Random words (uniform length in `1..=max_len`, uniform letters) whose
/// matrices are `≡ ±I` modulo `modulus`.
pub fn sample_congruence(
    spec: &GroupSpec,
    modulus: GaussInt,
    count: usize,
    max_len: usize,
    seed: u64,
) -> Result<Vec<GroupElement>> {
    let md = Modulus::from_gauss(modulus)?;
    if count == 0 || max_len == 0 {
        return Err(Error::OutOfDomain("count and max_len must be at least 1".into()));
    }
    let mg = md.generator::<i64>();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0u64;
    while out.len() < count {
        if draws >= SAMPLE_BUDGET {
            return Err(Error::BudgetExhausted { draws, found: out.len(), wanted: count, partial: out });
        }
        draws += 1;
        let word = random_word(&mut rng, spec.letter_count(), max_len);
        let Ok((matrix, transposed)) = spec.replay(&word) else { continue };
        let hit = is_congruent_identity(&matrix, mg)? || is_congruent_identity(&matrix.neg()?, mg)?;
        if hit {
            out.push(GroupElement { matrix, transposed, word });
        }
    }
    Ok(out)
}

/// Elements of the group: congruence-filtered when the spec carries a
/// filter, otherwise plain random words.
pub fn sample_elements(spec: &GroupSpec, count: usize, max_len: usize, seed: u64) -> Result<Vec<GroupElement>> {
    match spec.congruence {
        Some(md) => sample_congruence(spec, md.generator(), count, max_len, seed),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| GroupElement::from_word(spec, random_word(&mut rng, spec.letter_count(), max_len)))
                .collect()
        }
    }
}

/// Distinct non-trivial elements of word length ≤ `depth` (breadth-first,
/// shortest word kept), restricted to the ones the spec admits.
pub fn short_elements(spec: &GroupSpec, depth: usize) -> Vec<GroupElement> {
    let key = |g: &GMat2, f: bool| (g.projective_normal(), f);
    let mut seen: HashSet<(GMat2, bool)> = HashSet::new();
    seen.insert(key(&GMat2::identity(), false));
    let mut frontier = vec![GroupElement::identity()];
    let mut out = Vec::new();
    'levels: for _ in 0..depth {
        let mut next = Vec::new();
        for e in &frontier {
            for l in 0..spec.letter_count() {
                if e.word.last().is_some_and(|&last| spec.inverse_letter(last) == l) {
                    continue;
                }
                let Ok(letter) = spec.letter(l) else { continue };
                let Ok((matrix, transposed)) = compose(&(e.matrix, e.transposed), &letter) else { continue };
                if !seen.insert(key(&matrix, transposed)) {
                    continue;
                }
                let mut word = e.word.clone();
                word.push(l);
                let g = GroupElement { matrix, transposed, word };
                if spec.admits(&g.matrix) {
                    out.push(g.clone());
                }
                next.push(g);
                if seen.len() > BFS_NODE_CAP {
                    break 'levels;
                }
            }
        }
        frontier = next;
    }
    out
}

/// Translation lattice of the stabilizer of ∞, as discovered from short words.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationLattice {
    /// Basis vectors with words realizing them (0, 1 or 2 entries).
    pub basis: Vec<(GaussInt, Vec<usize>)>,
}

fn cross(u: GaussInt, v: GaussInt) -> i64 {
    u.re * v.im - u.im * v.re
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl TranslationLattice {
    pub fn discover(spec: &GroupSpec, scan_len: usize) -> Self {
        let mut found: Vec<(GaussInt, Vec<usize>)> = Vec::new();
        for e in short_elements(spec, scan_len) {
            if e.transposed || !e.matrix.is_projective_unipotent_upper() {
                continue;
            }
            // translation by b/a, a a unit
            let Ok(v) = e.matrix.b().checked_mul(e.matrix.a().conj()) else { continue };
            if !v.is_zero() && !found.iter().any(|(w, _)| *w == v) {
                found.push((v, e.word));
            }
        }
        found.sort_by_key(|(v, w)| (v.norm().unwrap_or(i64::MAX), w.len()));
        let covolume = found
            .iter()
            .flat_map(|(u, _)| found.iter().map(move |(v, _)| cross(*u, *v)))
            .fold(0, gcd);
        if covolume == 0 {
            return Self { basis: found.into_iter().take(1).collect() };
        }
        for (i, (u, wu)) in found.iter().enumerate() {
            for (v, wv) in found.iter().skip(i + 1) {
                if cross(*u, *v).abs() == covolume {
                    return Self { basis: vec![(*u, wu.clone()), (*v, wv.clone())] };
                }
            }
        }
        Self { basis: found.into_iter().take(1).collect() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates `k` such that `z - Σ kⱼ vⱼ` lies in the half-open base cell.
    pub fn cell_offset<T: Real>(&self, z: Complex<T>) -> Vec<i64> {
        let c = |g: GaussInt| g.to_complex::<f64>();
        let z = Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy());
        match self.basis.as_slice() {
            [] => vec![],
            [(v, _)] => {
                let v = c(*v);
                vec![((z * v.conj()).re / v.norm_sqr()).floor() as i64]
            }
            [(u, _), (v, _), ..] => {
                let (u, v) = (c(*u), c(*v));
                let det = u.re * v.im - u.im * v.re;
                let x = (z.re * v.im - z.im * v.re) / det;
                let y = (u.re * z.im - u.im * z.re) / det;
                vec![x.floor() as i64, y.floor() as i64]
            }
        }
    }

    /// Translates `p` into the base cell; returns the point and the word applied.
    pub fn to_base_cell<T: Real>(&self, spec: &GroupSpec, p: &Point<T>) -> (Point<T>, Vec<usize>) {
        let offs = self.cell_offset(p.z);
        let mut z = p.z;
        let mut word = Vec::new();
        for ((v, w), k) in self.basis.iter().zip(offs) {
            z = z - v.to_complex::<T>() * T::from(k).unwrap();
            let (piece, reps) = if k > 0 {
                (w.iter().rev().map(|&l| spec.inverse_letter(l)).collect::<Vec<_>>(), k)
            } else {
                (w.clone(), -k)
            };
            for _ in 0..reps {
                word.extend_from_slice(&piece);
            }
        }
        (Point { z, t: p.t }, word)
    }

    /// Distance from `z - w` to the nearest lattice vector (coordinates searched in a small window).
    pub fn distance_mod<T: Real>(&self, z: Complex<T>, w: Complex<T>) -> f64 {
        let d = Complex::new((z - w).re.to_f64_lossy(), (z - w).im.to_f64_lossy());
        let base: Vec<i64> = self.cell_offset(Complex::new(T::lit(d.re), T::lit(d.im)));
        let vecs: Vec<Complex<f64>> = self.basis.iter().map(|(v, _)| v.to_complex()).collect();
        let mut best = f64::INFINITY;
        let window = [-1i64, 0, 1, 2];
        match vecs.len() {
            0 => best = d.norm(),
            1 => {
                for a in window {
                    best = best.min((d - vecs[0] * (base[0] + a) as f64).norm());
                }
            }
            _ => {
                for a in window {
                    for b in window {
                        let l = vecs[0] * (base[0] + a) as f64 + vecs[1] * (base[1] + b) as f64;
                        best = best.min((d - l).norm());
                    }
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult<T> {
    pub point: Point<T>,
    /// Word `w` with `point = w·p`.
    pub word: Vec<usize>,
    pub height_history: Vec<T>,
}

/// Precomputed move set for repeated reductions.
pub struct Reducer {
    pub spec: GroupSpec,
    pub depth: usize,
    moves: Vec<(GroupElement, CMat2<f64>)>,
    pub lattice: TranslationLattice,
}

const MAX_ASCENTS: usize = 256;

impl Reducer {
    pub fn new(spec: &GroupSpec, depth: usize) -> Self {
        let moves = short_elements(spec, depth)
            .into_iter()
            .map(|e| {
                let c = gmat_to_complex(&e.matrix);
                (e, c)
            })
            .collect();
        let lattice = TranslationLattice::discover(spec, TRANSLATION_SCAN_LEN.min(depth.max(1)));
        Self { spec: spec.clone(), depth, moves, lattice }
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    fn images<T: Real>(&self, p: &Point<T>) -> impl Iterator<Item = (usize, Point<T>)> + '_ {
        let p = *p;
        self.moves.iter().enumerate().filter_map(move |(k, (e, c))| {
            let cm: CMat2<T> = c.map(|row| row.map(|x| Complex::new(T::lit(x.re), T::lit(x.im))));
            act_ext(&cm, e.transposed, &p).ok().map(|q| (k, q))
        })
    }

    /// Greedy height ascent with bounded search, then the tie-break:
    /// base-cell translation and lexicographic `(Re z, Im z)`.
    pub fn reduce<T: Real>(&self, p: &Point<T>) -> ReductionResult<T> {
        let rel = T::lit(1e-12);
        let mut cur = *p;
        let mut word: Vec<usize> = Vec::new();
        let mut history = vec![cur.t];
        for _ in 0..MAX_ASCENTS {
            let best = self.images(&cur).fold(None::<(usize, Point<T>)>, |acc, (k, q)| match acc {
                Some((_, b)) if b.t >= q.t => acc,
                _ => Some((k, q)),
            });
            match best {
                Some((k, q)) if q.t > cur.t * (T::one() + rel) => {
                    let mut w = self.moves[k].0.word.clone();
                    w.extend_from_slice(&word);
                    word = w;
                    cur = q;
                    history.push(cur.t);
                }
                _ => break,
            }
        }
        let mut candidates = vec![(cur, Vec::new())];
        for (k, q) in self.images(&cur) {
            if (q.t - cur.t).abs() <= cur.t * rel {
                candidates.push((q, self.moves[k].0.word.clone()));
            }
        }
        let tol = T::lit(1e-9);
        let mut best: Option<(Point<T>, Vec<usize>)> = None;
        for (q, w) in candidates {
            let (cell, tw) = self.lattice.to_base_cell(&self.spec, &q);
            let better = match &best {
                None => true,
                Some((b, _)) => {
                    cell.z.re < b.z.re - tol || ((cell.z.re - b.z.re).abs() <= tol && cell.z.im < b.z.im - tol)
                }
            };
            if better {
                let mut full = tw;
                full.extend_from_slice(&w);
                best = Some((cell, full));
            }
        }
        let (point, pre) = best.expect("candidate list is non-empty");
        let mut full = pre;
        full.extend_from_slice(&word);
        ReductionResult { point, word: full, height_history: history }
    }
}

pub fn reduce_to_fd<T: Real>(p: &Point<T>, spec: &GroupSpec, depth: usize) -> ReductionResult<T> {
    Reducer::new(spec, depth.max(1)).reduce(p)
}

/// Images of `p` under all reduced words of length ≤ `max_len`, deduplicated within 1e-9.
pub fn orbit_points<T: Real>(p: &Point<T>, spec: &GroupSpec, max_len: usize) -> Vec<Point<T>> {
    let tol = 1e-9;
    let mut out = vec![*p];
    let mut frontier: Vec<(Vec<usize>, (GMat2, bool))> = vec![(Vec::new(), (GMat2::identity(), false))];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, g) in &frontier {
            for l in 0..spec.letter_count() {
                if w.last().is_some_and(|&last| spec.inverse_letter(last) == l) {
                    continue;
                }
                let Ok(letter) = spec.letter(l) else { continue };
                let Ok(h) = compose(g, &letter) else { continue };
                let mut w2 = w.clone();
                w2.push(l);
                if spec.admits(&h.0) {
                    if let Ok(q) = act_ext(&gmat_to_complex(&h.0), h.1, p) {
                        let dup = out.iter().any(|o: &Point<T>| {
                            (o.z - q.z).norm().to_f64_lossy() < tol && (o.t - q.t).abs().to_f64_lossy() < tol
                        });
                        if !dup {
                            out.push(q);
                        }
                    }
                }
                next.push((w2, h));
            }
        }
        frontier = next;
    }
    out
}

/// Boundary point of `C ∪ {∞}` with Gaussian-integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cusp {
    Infinity,
    At(GaussInt),
}

fn cusp_image(g: &GMat2, c: Cusp) -> Result<(GaussInt, GaussInt)> {
    match c {
        Cusp::Infinity => Ok((g.a(), g.c())),
        Cusp::At(x) => Ok((g.a().checked_mul(x)?.checked_add(g.b())?, g.c().checked_mul(x)?.checked_add(g.d())?)),
    }
}

fn cusp_equals(num: GaussInt, den: GaussInt, c: Cusp) -> bool {
    match c {
        Cusp::Infinity => den.is_zero() && !num.is_zero(),
        Cusp::At(y) => !den.is_zero() && y.checked_mul(den).is_ok_and(|v| v == num),
    }
}

/// Searches words of length ≤ `max_len` mapping cusp `from` to cusp `to`
/// (boundary action `z ↦ (az+b)/(cz+d)`). `None` only means nothing was found.
pub fn find_cusp_word(spec: &GroupSpec, from: Cusp, to: Cusp, max_len: usize) -> Option<GroupElement> {
    if from == to {
        return Some(GroupElement::identity());
    }
    short_elements(spec, max_len).into_iter().find(|e| {
        if e.transposed {
            return false;
        }
        cusp_image(&e.matrix, from).is_ok_and(|(n, d)| cusp_equals(n, d, to))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_sets() {
        let (a, b) = whitehead_generators();
        assert_eq!(a, m([(1, 0), (0, 1), (0, 0), (1, 0)]));
        assert_eq!(b, m([(1, 0), (0, 0), (1, 1), (1, 0)]));
        assert_eq!(a.det().unwrap(), GaussInt::one());
        assert_eq!(b.det().unwrap(), GaussInt::one());
        assert!(bianchi_generators().iter().all(|g| g.has_unit_det()));
        let s = bianchi_generators()[2];
        let s2 = s.checked_mul(&s).unwrap();
        assert_eq!(s2, GMat2::identity().neg().unwrap());
        assert_eq!(s2.projective_normal(), GMat2::identity());
    }

    #[test]
    fn short_words_of_gamma_give_many_classes() {
        let spec = GroupSpec::by_name("gamma").unwrap();
        let mut classes = HashSet::new();
        let mut frontier = vec![(GMat2::identity(), false)];
        for _ in 0..4 {
            let mut next = Vec::new();
            for g in &frontier {
                for l in 0..spec.letter_count() {
                    let h = compose(g, &spec.letter(l).unwrap()).unwrap();
                    classes.insert(h.0.projective_normal());
                    next.push(h);
                }
            }
            frontier = next;
        }
        assert!(classes.len() >= 50, "{}", classes.len());
    }

    #[test]
    fn congruence_sampling() {
        let spec = GroupSpec::by_name("gamma").unwrap();
        let t2 = m([(1, 0), (2, 0), (0, 0), (1, 0)]);
        let (w, _) = spec.replay(&[0, 0]).unwrap();
        assert_eq!(w, t2);
        assert!(is_congruent_identity(&w, GaussInt::two()).unwrap());

        let xs = sample_congruence(&spec, GaussInt::two(), 25, 8, 7).unwrap();
        assert_eq!(xs.len(), 25);
        for x in &xs {
            assert_eq!(spec.replay(&x.word).unwrap(), (x.matrix, x.transposed));
            let ok = is_congruent_identity(&x.matrix, GaussInt::two()).unwrap()
                || is_congruent_identity(&x.matrix.neg().unwrap(), GaussInt::two()).unwrap();
            assert!(ok);
        }
        assert_eq!(xs, sample_congruence(&spec, GaussInt::two(), 25, 8, 7).unwrap());
    }

    #[test]
    fn budget_exhaustion_returns_partial() {
        // words of length 1 in the Whitehead generators are never ≡ I mod 2
        let spec = GroupSpec::whitehead();
        match sample_congruence(&spec, GaussInt::two(), 3, 1, 0) {
            Err(Error::BudgetExhausted { found, partial, .. }) => assert_eq!(found, partial.len()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(sample_congruence(&spec, GaussInt::new(3, 0), 1, 2, 0), Err(Error::UnsupportedModulus(_))));
    }

    #[test]
    fn whitehead_translation_lattice() {
        let lat = TranslationLattice::discover(&GroupSpec::whitehead(), TRANSLATION_SCAN_LEN);
        assert_eq!(lat.rank(), 2);
        let spec = GroupSpec::whitehead();
        for (v, w) in &lat.basis {
            let (g, f) = spec.replay(w).unwrap();
            assert!(!f && g.is_projective_unipotent_upper());
            assert_eq!(g.b().checked_mul(g.a().conj()).unwrap(), *v);
        }
        let (u, v) = (lat.basis[0].0, lat.basis[1].0);
        assert_eq!(cross(u, v).abs(), 2);
    }

    #[test]
    fn reduction_examples() {
        let spec = GroupSpec::whitehead();
        let p = Point::<f64>::from_parts(1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0).unwrap();
        let r = reduce_to_fd(&p, &spec, 3);
        assert!((r.point.t - 1.0).abs() < 1e-12);
        assert!(r.height_history.windows(2).all(|w| w[0] <= w[1]));
        let (g, f) = spec.replay(&r.word).unwrap();
        let q = act_ext(&gmat_to_complex(&g), f, &p).unwrap();
        assert!((q.z - r.point.z).norm() < 1e-10 && (q.t - r.point.t).abs() < 1e-10);
        let again = reduce_to_fd(&r.point, &spec, 3);
        assert!((again.point.z - r.point.z).norm() < 1e-12 && again.point.t == r.point.t);
    }

    #[test]
    fn orbit_examples() {
        let spec = GroupSpec::whitehead();
        let p = Point::<f64>::from_parts(0.1, 0.2, 0.9).unwrap();
        assert_eq!(orbit_points(&p, &spec, 0), vec![p]);
        let par = GroupSpec::new("par", vec![whitehead_generators().0], false).unwrap();
        assert!(orbit_points(&p, &par, 4).iter().all(|q| (q.t - p.t).abs() < 1e-14));
        let sizes: Vec<usize> = (0..4).map(|k| orbit_points(&p, &spec, k).len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    }

    #[test]
    fn cusp_identifications() {
        let spec = GroupSpec::whitehead();
        let z = |re, im| Cusp::At(GaussInt::new(re, im));
        let e = find_cusp_word(&spec, z(0, 0), z(0, 1), 3).unwrap();
        assert_eq!(e.word.len(), 1);
        assert!(find_cusp_word(&spec, z(0, 0), z(1, 0), 6).is_some());
        // ∞ and 0 represent different cusps; nothing short identifies them
        assert!(find_cusp_word(&spec, Cusp::Infinity, z(0, 0), 4).is_none());
    }

    #[test]
    fn registry() {
        for name in GROUP_NAMES {
            let s = GroupSpec::by_name(name).unwrap();
            assert!(s.generators.iter().all(|g| g.has_unit_det()));
        }
        assert!(GroupSpec::by_name("nope").is_err());
        assert!(GroupSpec::by_name("gammaT2").unwrap().include_transpose);
    }
}
