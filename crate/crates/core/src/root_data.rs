//! Based root data of split reductive groups and their Weyl groups.
//!
//! Coweights live in the lattice `Z^n`; roots are integer vectors in the dual
//! lattice and the pairing is the dot product. The Weyl group acts on
//! coweights by `s_i(x) = x - <alpha_i, x> alpha_i^vee`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_WEYL_ORDER: usize = 2_000;
const MAX_ROOTS: usize = 10_000;

/// An element of the cocharacter lattice `X_*(T) = Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn new(v: Vec<i64>) -> Self {
        Coweight(v)
    }

    pub fn zero(n: usize) -> Self {
        Coweight(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Coweight(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Coweight {
    type Err = Error;

    /// Parses `a,b,...` with optional surrounding parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Ok(Coweight(Vec::new()));
        }
        t.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidDatum(format!("bad coweight {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Coweight)
    }
}

pub fn pair(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PGL,
    Sp,
    SO,
    #[serde(rename = "custom")]
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PGL => "PGL",
            Family::Sp => "Sp",
            Family::SO => "SO",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "PGL" => Ok(Family::PGL),
            "SP" => Ok(Family::Sp),
            "SO" => Ok(Family::SO),
            "CUSTOM" => Ok(Family::Custom),
            _ => Err(Error::Unsupported(format!("unknown family {s:?}"))),
        }
    }
}

/// The JSON form of a datum, accepted for custom data and emitted by `datum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDescription {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

/// An element of the finite Weyl group: a reduced word in the simple
/// reflections together with its matrix on the coweight lattice.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<i64>,
    n: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, self.n, x)
    }
}

fn mat_vec(m: &[i64], n: usize, x: &[i64]) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum()).collect()
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// The finite Weyl group, enumerated by breadth-first search so stored words
/// are reduced. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<i64>, usize>,
    mult: Vec<u32>,
    inverse: Vec<usize>,
    simple: Vec<usize>,
    /// `flips[w][k]`: whether `w^{-1}` sends the k-th positive root negative.
    flips: Vec<Vec<bool>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.elements.len() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.elements[a].length()
    }

    pub fn index_of_matrix(&self, m: &[i64]) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn apply(&self, w: usize, x: &[i64]) -> Vec<i64> {
        self.elements[w].apply(x)
    }

    pub(crate) fn inverse_flips_positive_root(&self, w: usize, k: usize) -> bool {
        self.flips[w][k]
    }
}

#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    family: Family,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    root_sign: HashMap<Vec<i64>, (usize, bool)>,
    two_rho: Vec<i64>,
    two_rho_check: Vec<i64>,
    weyl: WeylGroup,
}

impl BasedRootDatum {
    /// Standard datum of the group of `n x n` matrices in `family`
    /// (`Sp` takes the even size `n = 2m`, giving a rank-`m` lattice).
    pub fn build_standard(family: Family, n: usize) -> Result<Self> {
        let unit = |len: usize, i: usize| -> Vec<i64> {
            let mut v = vec![0; len];
            v[i] = 1;
            v
        };
        let a_type_cartan = |r: usize, i: usize, j: usize| -> i64 {
            match (i as i64 - j as i64).abs() {
                0 => 2,
                1 => -1,
                _ => {
                    let _ = r;
                    0
                }
            }
        };
        let (rank, roots, coroots) = match family {
            Family::GL if n >= 1 => {
                let r: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                (n, r.clone(), r)
            }
            Family::SL if n >= 2 => {
                let r = n - 1;
                let roots = (0..r).map(|j| (0..r).map(|i| a_type_cartan(r, j, i)).collect()).collect();
                let coroots = (0..r).map(|i| unit(r, i)).collect();
                (r, roots, coroots)
            }
            Family::PGL if n >= 2 => {
                let r = n - 1;
                let roots = (0..r).map(|i| unit(r, i)).collect();
                let coroots = (0..r).map(|i| (0..r).map(|j| a_type_cartan(r, j, i)).collect()).collect();
                (r, roots, coroots)
            }
            Family::Sp if n >= 2 && n % 2 == 0 => {
                let m = n / 2;
                let mut roots = Vec::new();
                let mut coroots = Vec::new();
                for i in 0..m - 1 {
                    let mut v = vec![0; m];
                    v[i] = 1;
                    v[i + 1] = -1;
                    roots.push(v.clone());
                    coroots.push(v);
                }
                let mut long = vec![0; m];
                long[m - 1] = 2;
                roots.push(long);
                coroots.push(unit(m, m - 1));
                (m, roots, coroots)
            }
            _ => return Err(Error::Unsupported(format!("{family} with n = {n}"))),
        };
        Self::new(family, rank, roots, coroots)
    }

    pub fn from_description(desc: &DatumDescription) -> Result<Self> {
        Self::new(desc.family, desc.rank, desc.simple_roots.clone(), desc.simple_coroots.clone())
    }

    pub fn description(&self) -> DatumDescription {
        DatumDescription {
            family: self.family,
            rank: self.rank,
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
        }
    }

    /// Validates the Cartan-matrix and Coxeter conditions and enumerates
    /// roots and the Weyl group.
    pub fn new(family: Family, rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        if rank == 0 {
            return bad("rank must be positive".into());
        }
        if simple_roots.len() != simple_coroots.len() {
            return bad("different numbers of simple roots and coroots".into());
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != rank) {
            return bad(format!("root vectors must have length {rank}"));
        }
        let r = simple_roots.len();
        let cartan: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| pair(&simple_roots[i], &simple_coroots[j])).collect()).collect();
        for i in 0..r {
            if cartan[i][i] != 2 {
                return bad(format!("<alpha_{i}, alpha_{i}^vee> = {} != 2", cartan[i][i]));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if cartan[i][j] > 0 {
                    return bad(format!("positive off-diagonal Cartan entry at ({i},{j})"));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return bad(format!("Cartan entries ({i},{j}) and ({j},{i}) disagree on vanishing"));
                }
                if cartan[i][j] * cartan[j][i] > 3 {
                    return bad(format!("Cartan product at ({i},{j}) is not of finite type"));
                }
            }
        }
        if rank_of(&simple_roots) != r || rank_of(&simple_coroots) != r {
            return bad("simple roots or coroots are linearly dependent".into());
        }

        // roots in simple-root coordinates paired with coroots in simple-coroot coordinates
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut c = vec![0; r];
            c[i] = 1;
            seen.insert(c.clone(), c.clone());
            queue.push_back((c.clone(), c));
        }
        while let Some((c, d)) = queue.pop_front() {
            for k in 0..r {
                let root_pair: i64 = (0..r).map(|j| c[j] * cartan[j][k]).sum();
                let coroot_pair: i64 = (0..r).map(|j| d[j] * cartan[k][j]).sum();
                let mut c2 = c.clone();
                c2[k] -= root_pair;
                let mut d2 = d.clone();
                d2[k] -= coroot_pair;
                if !seen.contains_key(&c2) {
                    if seen.len() >= MAX_ROOTS {
                        return bad("root system is not finite".into());
                    }
                    seen.insert(c2.clone(), d2.clone());
                    queue.push_back((c2, d2));
                }
            }
        }
        let combine = |coords: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            (0..rank).map(|t| coords.iter().zip(basis).map(|(k, b)| k * b[t]).sum()).collect()
        };
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for (c, d) in &seen {
            if c.iter().all(|x| *x >= 0) {
                if !d.iter().all(|x| *x >= 0) {
                    return bad("root and coroot positivity disagree".into());
                }
                pos.push((combine(c, &simple_roots), combine(d, &simple_coroots)));
            } else if !c.iter().all(|x| *x <= 0) {
                return bad("root is neither positive nor negative".into());
            }
        }
        pos.sort();
        let positive_roots: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
        let positive_coroots: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
        let mut root_sign = HashMap::new();
        for (k, a) in positive_roots.iter().enumerate() {
            root_sign.insert(a.clone(), (k, true));
            root_sign.insert(a.iter().map(|x| -x).collect(), (k, false));
        }
        let sum = |vs: &[Vec<i64>]| -> Vec<i64> { (0..rank).map(|t| vs.iter().map(|v| v[t]).sum()).collect() };
        let two_rho = sum(&positive_roots);
        let two_rho_check = sum(&positive_coroots);

        let weyl = build_weyl(rank, &simple_roots, &simple_coroots, &positive_roots, &root_sign)?;

        let datum = Self {
            family,
            rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots,
            positive_coroots,
            root_sign,
            two_rho,
            two_rho_check,
            weyl,
        };
        datum.check_coxeter_relations()?;
        Ok(datum)
    }

    fn check_coxeter_relations(&self) -> Result<()> {
        let r = self.simple_roots.len();
        let n = self.rank;
        let gens: Vec<Vec<i64>> = (0..r).map(|i| self.reflection_matrix(i)).collect();
        let id = identity(n);
        for i in 0..r {
            if mat_mul(&gens[i], &gens[i], n) != id {
                return Err(Error::InvalidDatum(format!("s_{i} is not an involution")));
            }
            for j in i + 1..r {
                let m = self.coxeter_exponent(i, j);
                let prod = mat_mul(&gens[i], &gens[j], n);
                let mut p = id.clone();
                for _ in 0..m {
                    p = mat_mul(&p, &prod, n);
                }
                if p != id {
                    return Err(Error::InvalidDatum(format!("braid relation fails for ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// `m_ij` read off the Cartan matrix.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    fn reflection_matrix(&self, i: usize) -> Vec<i64> {
        reflection(self.rank, &self.simple_roots[i], &self.simple_coroots[i])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Dimension of the coweight lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// Sum of the positive roots, `2 rho`.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// Sum of the positive coroots, `2 rho^vee`.
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// `(index into positive roots, is positive)` for a root vector.
    pub fn root_sign(&self, root: &[i64]) -> Option<(usize, bool)> {
        self.root_sign.get(root).copied()
    }

    pub fn simple_reflect(&self, i: usize, x: &Coweight) -> Coweight {
        let p = pair(&self.simple_roots[i], &x.0);
        Coweight(x.0.iter().zip(&self.simple_coroots[i]).map(|(a, c)| a - p * c).collect())
    }

    pub fn is_dominant(&self, x: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| pair(a, &x.0) >= 0)
    }

    pub fn check_dim(&self, x: &Coweight) -> Result<()> {
        if x.dim() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: x.dim() });
        }
        Ok(())
    }

    /// The full Weyl orbit, sorted lexicographically descending.
    pub fn weyl_orbit(&self, x: &Coweight) -> Vec<Coweight> {
        let mut seen = BTreeSet::new();
        seen.insert(x.clone());
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(y) = queue.pop_front() {
            for i in 0..self.simple_roots.len() {
                let z = self.simple_reflect(i, &y);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().rev().collect()
    }

    pub fn dominant_representative(&self, x: &Coweight) -> Coweight {
        let mut y = x.clone();
        'outer: loop {
            for i in 0..self.simple_roots.len() {
                if pair(&self.simple_roots[i], &y.0) < 0 {
                    y = self.simple_reflect(i, &y);
                    continue 'outer;
                }
            }
            return y;
        }
    }

    /// Whether every root pairs with `x` into `{-1, 0, 1}`.
    pub fn is_minuscule(&self, x: &Coweight) -> bool {
        self.positive_roots.iter().all(|a| pair(a, &x.0).abs() <= 1)
    }

    /// Coefficients of `x` in the simple coroots, if `x` lies in their
    /// integral span.
    pub fn coroot_coordinates(&self, x: &Coweight) -> Option<Vec<i64>> {
        solve_integral(&self.simple_coroots, &x.0)
    }

    /// `mu <= lambda`: `lambda - mu` is a non-negative integral combination of
    /// simple coroots.
    pub fn dominance_leq(&self, mu: &Coweight, lambda: &Coweight) -> bool {
        match self.coroot_coordinates(&lambda.sub(mu)) {
            Some(k) => k.iter().all(|c| *c >= 0),
            None => false,
        }
    }

    /// `<2 rho, x>`, so that `q^{<rho, x>} = v^{<2 rho, x>}`.
    pub fn rho_pairing_exponent(&self, x: &Coweight) -> i64 {
        pair(&self.two_rho, &x.0)
    }

    /// Dominant coweights `mu <= lambda`, highest first.
    pub fn dominant_weights_below(&self, lambda: &Coweight) -> Vec<Coweight> {
        let lambda = self.dominant_representative(lambda);
        let mut seen = BTreeSet::new();
        seen.insert(lambda.clone());
        let mut queue = VecDeque::from([lambda]);
        while let Some(mu) = queue.pop_front() {
            for b in &self.positive_coroots {
                let nu = Coweight(mu.0.iter().zip(b).map(|(x, y)| x - y).collect());
                if self.is_dominant(&nu) && seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort_by(|a, b| self.rho_pairing_exponent(b).cmp(&self.rho_pairing_exponent(a)).then(b.cmp(a)));
        out
    }

    /// Minuscule dominant coweights with entries bounded by `bound` in sup norm.
    pub fn minuscule_dominants(&self, bound: i64) -> Vec<Coweight> {
        self.dominant_weights_in_box(bound).into_iter().filter(|x| self.is_minuscule(x)).collect()
    }

    /// Dominant coweights with sup norm at most `bound`, lexicographically
    /// descending.
    pub fn dominant_weights_in_box(&self, bound: i64) -> Vec<Coweight> {
        let n = self.rank;
        let mut out = Vec::new();
        let mut cur = vec![-bound; n];
        loop {
            let x = Coweight(cur.clone());
            if self.is_dominant(&x) {
                out.push(x);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| b.cmp(a));
                    return out;
                }
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -bound;
                i += 1;
            }
        }
    }
}

fn reflection(n: usize, root: &[i64], coroot: &[i64]) -> Vec<i64> {
    let mut m = identity(n);
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] -= coroot[r] * root[c];
        }
    }
    m
}

fn build_weyl(
    n: usize,
    roots: &[Vec<i64>],
    coroots: &[Vec<i64>],
    positive_roots: &[Vec<i64>],
    root_sign: &HashMap<Vec<i64>, (usize, bool)>,
) -> Result<WeylGroup> {
    let gens: Vec<Vec<i64>> = roots.iter().zip(coroots).map(|(a, c)| reflection(n, a, c)).collect();
    let mut elements = vec![WeylElement { word: Vec::new(), matrix: identity(n), n }];
    let mut lookup = HashMap::from([(identity(n), 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        head += 1;
        for (i, g) in gens.iter().enumerate() {
            let m = mat_mul(g, &cur.matrix, n);
            if lookup.contains_key(&m) {
                continue;
            }
            if elements.len() >= MAX_WEYL_ORDER {
                return Err(Error::InvalidDatum("Weyl group is too large or infinite".into()));
            }
            let mut word = vec![i];
            word.extend_from_slice(&cur.word);
            lookup.insert(m.clone(), elements.len());
            elements.push(WeylElement { word, matrix: m, n });
        }
    }
    let order = elements.len();
    let mut mult = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            let m = mat_mul(&elements[a].matrix, &elements[b].matrix, n);
            mult[a * order + b] = lookup[&m] as u32;
        }
    }
    let inverse: Vec<usize> = (0..order).map(|a| (0..order).find(|&b| mult[a * order + b] == 0).expect("group")).collect();
    let simple = gens.iter().map(|g| lookup[g]).collect();
    let mut flips = Vec::with_capacity(order);
    for w in &elements {
        // w^{-1} alpha as a functional is M^T alpha
        let row: Result<Vec<bool>> = positive_roots
            .iter()
            .map(|a| {
                let img: Vec<i64> = (0..n).map(|c| (0..n).map(|r| w.matrix[r * n + c] * a[r]).sum()).collect();
                root_sign
                    .get(&img)
                    .map(|(_, positive)| !positive)
                    .ok_or_else(|| Error::InvalidDatum("Weyl group does not permute the roots".into()))
            })
            .collect();
        flips.push(row?);
    }
    for (w, e) in elements.iter().enumerate() {
        let inversions = flips[w].iter().filter(|f| **f).count();
        if inversions != e.length() {
            return Err(Error::InvalidDatum("word length disagrees with inversion count".into()));
        }
    }
    Ok(WeylGroup { elements, lookup, mult, inverse, simple, flips })
}

fn rank_of(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| v.iter().map(|x| BigRational::from_integer((*x).into())).collect()).collect();
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for k in 0..cols {
                    let t = &f * &rows[rank][k];
                    rows[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `sum_i k_i basis_i = target` for integers `k_i`.
fn solve_integral(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let r = basis.len();
    let n = target.len();
    // augmented n x (r + 1) system
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|t| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b[t].into())).collect();
            row.push(BigRational::from_integer(target[t].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..r {
        let Some(p) = (row..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(row, p);
        let lead = m[row][c].clone();
        for k in 0..=r {
            m[row][k] = &m[row][k] / &lead;
        }
        for i in 0..n {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..=r {
                    let t = &f * &m[row][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if (row..n).any(|i| !m[i][r].is_zero()) {
        return None;
    }
    let mut out = vec![0i64; r];
    for (i, c) in pivots.iter().enumerate() {
        let v = &m[i][r];
        if !v.is_integer() {
            return None;
        }
        out[*c] = v.to_integer().to_i64()?;
    }
    // pivot-free columns would mean dependent coroots, excluded at construction
    let check: Vec<BigInt> = (0..n).map(|t| (0..r).map(|i| BigInt::from(out[i] * basis[i][t])).sum()).collect();
    if check.iter().zip(target).any(|(a, b)| a != &BigInt::from(*b)) || check.iter().any(|x| x.abs() > BigInt::from(i64::MAX)) {
        return None;
    }
    Some(out)
}
