//! The Iwahori-Hecke algebra of the extended affine Weyl group in the
//! `T_w` basis, Bernstein elements, the center, the spherical idempotent and
//! the Satake transform computed through them.
//!
//! Conventions: `T_s^2 = (q - 1) T_s + q` with `q = v^2`, and
//! `theta_lambda = v^{-l(t_lambda)} T_{t_lambda}` for dominant `lambda`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{orbit_character, SymmetricFunction, WeightMultiset};
use crate::coeff_ring::LaurentHalf;
use crate::error::{Error, Result};
use crate::hecke_poly::{render_polynomial, GroupTag, HeckePolynomial, RelationReport};
use crate::root_data::{pair, BasedRootDatum, Coweight, WeylElement};

pub const DEFAULT_MAX_SUPPORT: usize = 20_000;

/// `t_lambda w`, acting on the apartment by `x -> lambda + w x`. The finite
/// part is an index into the datum's Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtAffineWeylElement {
    pub translation: Coweight,
    pub finite: usize,
}

impl ExtAffineWeylElement {
    pub fn new(translation: Coweight, finite: usize) -> Self {
        Self { translation, finite }
    }

    pub fn translation_only(translation: Coweight) -> Self {
        Self { translation, finite: 0 }
    }
}

/// A finite combination of `T_x` over `Z[v^{±1}]`, divided by a scalar
/// denominator (one unless stated otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHeckeElement {
    terms: BTreeMap<ExtAffineWeylElement, LaurentHalf>,
    denominator: LaurentHalf,
}

impl AffineHeckeElement {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), denominator: LaurentHalf::one() }
    }

    pub fn basis(x: ExtAffineWeylElement) -> Self {
        Self::monomial(x, LaurentHalf::one())
    }

    pub fn monomial(x: ExtAffineWeylElement, c: LaurentHalf) -> Self {
        let mut out = Self::zero();
        out.add_term(x, &c);
        out
    }

    pub fn with_denominator(mut self, denominator: LaurentHalf) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Coeff(crate::coeff_ring::CoeffError::ZeroDenominator));
        }
        self.denominator = &self.denominator * &denominator;
        Ok(self)
    }

    fn add_term(&mut self, x: ExtAffineWeylElement, c: &LaurentHalf) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffineWeylElement, &LaurentHalf)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &ExtAffineWeylElement) -> LaurentHalf {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn denominator(&self) -> &LaurentHalf {
        &self.denominator
    }

    pub fn numerator(&self) -> Self {
        Self { terms: self.terms.clone(), denominator: LaurentHalf::one() }
    }

    /// Sum; denominators are combined by cross-multiplying unless equal.
    pub fn add(&self, other: &Self) -> Self {
        if self.denominator == other.denominator {
            let mut out = self.clone();
            for (x, c) in &other.terms {
                out.add_term(x.clone(), c);
            }
            return out;
        }
        let mut out = self.scale(&other.denominator);
        for (x, c) in &other.terms {
            out.add_term(x.clone(), &(c * &self.denominator));
        }
        out.denominator = &self.denominator * &other.denominator;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentHalf::constant(-1)))
    }

    /// Multiplies the numerator by `c`.
    pub fn scale(&self, c: &LaurentHalf) -> Self {
        let mut out = Self { terms: BTreeMap::new(), denominator: self.denominator.clone() };
        for (x, y) in &self.terms {
            out.add_term(x.clone(), &(c * y));
        }
        out
    }

    /// Equality as fractions.
    pub fn equals(&self, other: &Self) -> bool {
        if self.denominator == other.denominator {
            return self.terms == other.terms;
        }
        self.scale(&other.denominator).terms == other.scale(&self.denominator).terms
    }
}

/// Coordinates in the double-coset basis `1_{K lambda K}`, normalized so the
/// unit function `1_K` has coordinate one at `lambda = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphericalCosetVector {
    coords: BTreeMap<Coweight, LaurentHalf>,
}

#[derive(Serialize, Deserialize)]
struct CosetEntry {
    lambda: Coweight,
    coeff: LaurentHalf,
}

impl Serialize for SphericalCosetVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<CosetEntry> =
            self.coords.iter().map(|(l, c)| CosetEntry { lambda: l.clone(), coeff: c.clone() }).collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SphericalCosetVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<CosetEntry>::deserialize(d)?;
        let mut out = Self::default();
        for e in entries {
            out.add(e.lambda, &e.coeff);
        }
        Ok(out)
    }
}

impl SphericalCosetVector {
    pub fn from_coords(coords: impl IntoIterator<Item = (Coweight, LaurentHalf)>) -> Self {
        let mut out = Self::default();
        for (l, c) in coords {
            out.add(l, &c);
        }
        out
    }

    fn add(&mut self, lambda: Coweight, c: &LaurentHalf) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(lambda.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coords.remove(&lambda);
        }
    }

    pub fn coords(&self) -> &BTreeMap<Coweight, LaurentHalf> {
        &self.coords
    }

    pub fn coeff(&self, lambda: &Coweight) -> LaurentHalf {
        self.coords.get(lambda).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &LaurentHalf) -> Self {
        Self::from_coords(self.coords.iter().map(|(l, x)| (l.clone(), c * x)))
    }
}

#[derive(Serialize)]
struct TermJson {
    translation: Coweight,
    finite_word: Vec<usize>,
    coeff: LaurentHalf,
}

#[derive(Serialize)]
pub struct AffineHeckeElementJson {
    terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    denominator: Option<String>,
}

/// Matrix of the inverse Satake transform on a dominance-closed set of
/// dominant coweights: row `nu` holds the double-coset coordinates of `m_nu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeMatrix {
    pub weights: Vec<Coweight>,
    pub entries: Vec<Vec<LaurentHalf>>,
}

impl SatakeMatrix {
    /// The Satake transform itself: row `lambda` holds the `m_nu`
    /// coordinates of `S(1_{K lambda K})`. Solved by back substitution, since
    /// the matrix is unitriangular up to unit diagonal entries.
    pub fn transform(&self, datum: &BasedRootDatum) -> Result<Vec<Vec<LaurentHalf>>> {
        let n = self.weights.len();
        let order = self.dominance_order(datum);
        let mut inv = vec![vec![LaurentHalf::zero(); n]; n];
        // B[nu][lambda] != 0 only for lambda <= nu. Process rows from low to high.
        for &i in &order {
            let diag_inv = self.entries[i][i]
                .unit_inverse()
                .ok_or_else(|| Error::Consistency(format!("diagonal entry at {} is not a unit", self.weights[i])))?;
            // e_i = sum_j B[i][j] S_j  =>  S_i = diag_inv (e_i - sum_{j != i} B[i][j] S_j)
            let mut row = vec![LaurentHalf::zero(); n];
            row[i] = LaurentHalf::one();
            for j in 0..n {
                if j == i || self.entries[i][j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if !inv[j][k].is_zero() {
                        row[k] = &row[k] - &(&self.entries[i][j] * &inv[j][k]);
                    }
                }
            }
            inv[i] = row.iter().map(|x| x * &diag_inv).collect();
        }
        Ok(inv)
    }

    /// Indices sorted so that lower weights in dominance come first.
    fn dominance_order(&self, datum: &BasedRootDatum) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.weights.len()).collect();
        idx.sort_by_key(|&i| (datum.rho_pairing_exponent(&self.weights[i]), self.weights[i].clone()));
        idx
    }

    /// Whether `entries[nu][lambda]` vanishes unless `lambda <= nu`.
    pub fn is_triangular(&self, datum: &BasedRootDatum) -> bool {
        (0..self.weights.len()).all(|i| {
            (0..self.weights.len())
                .all(|j| self.entries[i][j].is_zero() || datum.dominance_leq(&self.weights[j], &self.weights[i]))
        })
    }
}

/// The affine Hecke algebra of a based root datum.
#[derive(Clone, Debug)]
pub struct IwahoriHecke {
    datum: BasedRootDatum,
    simples: Vec<ExtAffineWeylElement>,
    max_support: usize,
}

impl IwahoriHecke {
    pub fn new(datum: &BasedRootDatum) -> Self {
        Self::with_max_support(datum, DEFAULT_MAX_SUPPORT)
    }

    pub fn with_max_support(datum: &BasedRootDatum, max_support: usize) -> Self {
        let mut engine = Self { datum: datum.clone(), simples: Vec::new(), max_support };
        let weyl = datum.weyl();
        let n = datum.rank();
        let mut simples: Vec<ExtAffineWeylElement> =
            (0..datum.semisimple_rank()).map(|i| ExtAffineWeylElement::new(Coweight::zero(n), weyl.simple(i))).collect();
        // Affine simple reflections: reflections in walls of the base alcove
        // not through the origin, i.e. length-one elements t_{±b} s_b.
        for (k, coroot) in datum.positive_coroots().iter().enumerate() {
            let refl = reflection_index(datum, k);
            for sign in [1, -1] {
                let x = ExtAffineWeylElement::new(Coweight(coroot.clone()).scale(sign), refl);
                if engine.length(&x) == 1 && !simples.contains(&x) {
                    simples.push(x);
                }
            }
        }
        engine.simples = simples;
        engine
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn max_support(&self) -> usize {
        self.max_support
    }

    pub fn simple_reflections(&self) -> &[ExtAffineWeylElement] {
        &self.simples
    }

    pub fn identity(&self) -> ExtAffineWeylElement {
        ExtAffineWeylElement::translation_only(Coweight::zero(self.datum.rank()))
    }

    pub fn one(&self) -> AffineHeckeElement {
        AffineHeckeElement::basis(self.identity())
    }

    pub fn finite_part(&self, x: &ExtAffineWeylElement) -> &WeylElement {
        self.datum.weyl().element(x.finite)
    }

    pub fn compose(&self, a: &ExtAffineWeylElement, b: &ExtAffineWeylElement) -> ExtAffineWeylElement {
        let weyl = self.datum.weyl();
        let moved = Coweight(weyl.apply(a.finite, &b.translation.0));
        ExtAffineWeylElement::new(a.translation.add(&moved), weyl.mul(a.finite, b.finite))
    }

    pub fn invert(&self, x: &ExtAffineWeylElement) -> ExtAffineWeylElement {
        let weyl = self.datum.weyl();
        let winv = weyl.inverse(x.finite);
        ExtAffineWeylElement::new(Coweight(weyl.apply(winv, &x.translation.0)).neg(), winv)
    }

    /// `sum_{a > 0} |<a, lambda>|` over roots with `w^{-1} a > 0`, plus
    /// `|<a, lambda> - 1|` over the rest.
    pub fn length(&self, x: &ExtAffineWeylElement) -> usize {
        let weyl = self.datum.weyl();
        self.datum
            .positive_roots()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let p = pair(a, &x.translation.0);
                if weyl.inverse_flips_positive_root(x.finite, k) {
                    (p - 1).unsigned_abs() as usize
                } else {
                    p.unsigned_abs() as usize
                }
            })
            .sum()
    }

    /// `x = s_1 ... s_k omega` with each `s_j` an index into the affine simple
    /// reflections and `omega` of length zero.
    pub fn reduced_decomposition(&self, x: &ExtAffineWeylElement) -> (Vec<usize>, ExtAffineWeylElement) {
        let mut word = Vec::new();
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        while len > 0 {
            let (i, next) = self
                .simples
                .iter()
                .enumerate()
                .map(|(i, s)| (i, self.compose(s, &cur)))
                .find(|(_, y)| self.length(y) < len)
                .expect("an element of positive length has a left descent");
            word.push(i);
            cur = next;
            len -= 1;
        }
        (word, cur)
    }

    fn guard(&self, size: usize, what: &str) -> Result<()> {
        if size > self.max_support {
            return Err(Error::ResourceLimit { what: what.into(), size, limit: self.max_support });
        }
        Ok(())
    }

    /// `T_s * h` for an affine simple reflection `s`.
    fn left_simple(&self, s: &ExtAffineWeylElement, h: &BTreeMap<ExtAffineWeylElement, LaurentHalf>) -> BTreeMap<ExtAffineWeylElement, LaurentHalf> {
        let mut out = AffineHeckeElement::zero();
        let q = LaurentHalf::q();
        let q1 = &q - &LaurentHalf::one();
        for (y, c) in h {
            let sy = self.compose(s, y);
            if self.length(&sy) > self.length(y) {
                out.add_term(sy, c);
            } else {
                out.add_term(y.clone(), &(&q1 * c));
                out.add_term(sy, &(&q * c));
            }
        }
        out.terms
    }

    /// `h * T_s`.
    fn right_simple(&self, h: &BTreeMap<ExtAffineWeylElement, LaurentHalf>, s: &ExtAffineWeylElement) -> BTreeMap<ExtAffineWeylElement, LaurentHalf> {
        let mut out = AffineHeckeElement::zero();
        let q = LaurentHalf::q();
        let q1 = &q - &LaurentHalf::one();
        for (y, c) in h {
            let ys = self.compose(y, s);
            if self.length(&ys) > self.length(y) {
                out.add_term(ys, c);
            } else {
                out.add_term(y.clone(), &(&q1 * c));
                out.add_term(ys, &(&q * c));
            }
        }
        out.terms
    }

    /// `T_x * h`.
    fn left_basis(&self, x: &ExtAffineWeylElement, h: &BTreeMap<ExtAffineWeylElement, LaurentHalf>) -> Result<BTreeMap<ExtAffineWeylElement, LaurentHalf>> {
        let (word, omega) = self.reduced_decomposition(x);
        let mut cur: BTreeMap<_, _> = h.iter().map(|(y, c)| (self.compose(&omega, y), c.clone())).collect();
        for &i in word.iter().rev() {
            cur = self.left_simple(&self.simples[i], &cur);
            self.guard(cur.len(), "affine Hecke product support")?;
        }
        Ok(cur)
    }

    /// `h * T_x`.
    fn right_basis(&self, h: &BTreeMap<ExtAffineWeylElement, LaurentHalf>, x: &ExtAffineWeylElement) -> Result<BTreeMap<ExtAffineWeylElement, LaurentHalf>> {
        let (word, omega) = self.reduced_decomposition(x);
        let mut cur = h.clone();
        for &i in &word {
            cur = self.right_simple(&cur, &self.simples[i]);
            self.guard(cur.len(), "affine Hecke product support")?;
        }
        Ok(cur.into_iter().map(|(y, c)| (self.compose(&y, &omega), c)).collect())
    }

    /// The product, expanded over the smaller factor.
    pub fn multiply(&self, a: &AffineHeckeElement, b: &AffineHeckeElement) -> Result<AffineHeckeElement> {
        let partials: Vec<BTreeMap<ExtAffineWeylElement, LaurentHalf>> = if a.len() <= b.len() {
            a.terms
                .par_iter()
                .map(|(x, c)| Ok(scale_map(&self.left_basis(x, &b.terms)?, c)))
                .collect::<Result<_>>()?
        } else {
            b.terms
                .par_iter()
                .map(|(y, c)| Ok(scale_map(&self.right_basis(&a.terms, y)?, c)))
                .collect::<Result<_>>()?
        };
        let mut out = AffineHeckeElement::zero();
        for part in partials {
            for (x, c) in part {
                out.add_term(x, &c);
            }
        }
        self.guard(out.len(), "affine Hecke product support")?;
        out.denominator = &a.denominator * &b.denominator;
        Ok(out)
    }

    /// `T_x^{-1}`, expanded along a reduced word with
    /// `T_s^{-1} = v^{-2} T_s + (v^{-2} - 1)`.
    pub fn basis_inverse(&self, x: &ExtAffineWeylElement) -> Result<AffineHeckeElement> {
        let (word, omega) = self.reduced_decomposition(x);
        let mut cur = AffineHeckeElement::basis(self.invert(&omega));
        for &i in word.iter().rev() {
            let s = &self.simples[i];
            let mut next = AffineHeckeElement::zero();
            for (y, c) in self.right_simple(&cur.terms, s) {
                next.add_term(y, &(&c * &LaurentHalf::v_pow(-2)));
            }
            let shift = &LaurentHalf::v_pow(-2) - &LaurentHalf::one();
            for (y, c) in &cur.terms {
                next.add_term(y.clone(), &(c * &shift));
            }
            self.guard(next.len(), "inverse support")?;
            cur = next;
        }
        Ok(cur)
    }

    /// `theta_lambda` for the decomposition `lambda = plus - minus` with both
    /// parts dominant.
    pub fn theta_decomposed(&self, plus: &Coweight, minus: &Coweight) -> Result<AffineHeckeElement> {
        for x in [plus, minus] {
            self.datum.check_dim(x)?;
            if !self.datum.is_dominant(x) {
                return Err(Error::NotDominant(x.to_string()));
            }
        }
        let tp = ExtAffineWeylElement::translation_only(plus.clone());
        let tm = ExtAffineWeylElement::translation_only(minus.clone());
        let exp = self.length(&tm) as i64 - self.length(&tp) as i64;
        let inv = self.basis_inverse(&tm)?;
        let prod = self.multiply(&AffineHeckeElement::basis(tp), &inv)?;
        Ok(prod.scale(&LaurentHalf::v_pow(exp)))
    }

    /// A decomposition `lambda = plus - minus` into dominant parts, chosen to
    /// keep the total translation length small.
    pub fn theta_split(&self, lambda: &Coweight) -> (Coweight, Coweight) {
        let rho2 = Coweight(self.datum.two_rho_check().to_vec());
        let mut candidates = Vec::new();
        let dom = self.datum.dominant_representative(&lambda.neg());
        if self.datum.is_dominant(&lambda.add(&dom)) {
            candidates.push(dom);
        }
        let need = self.datum.simple_roots().iter().map(|a| (-pair(a, &lambda.0)).max(0)).max().unwrap_or(0);
        candidates.push(rho2.scale((need + 1) / 2));
        candidates
            .into_iter()
            .map(|minus| (lambda.add(&minus), minus))
            .min_by_key(|(p, m)| {
                self.length(&ExtAffineWeylElement::translation_only(p.clone()))
                    + self.length(&ExtAffineWeylElement::translation_only(m.clone()))
            })
            .expect("at least one candidate")
    }

    pub fn theta(&self, lambda: &Coweight) -> Result<AffineHeckeElement> {
        self.datum.check_dim(lambda)?;
        let (plus, minus) = self.theta_split(lambda);
        self.theta_decomposed(&plus, &minus)
    }

    /// `T_s` for the i-th finite simple reflection.
    pub fn finite_generator(&self, i: usize) -> AffineHeckeElement {
        AffineHeckeElement::basis(ExtAffineWeylElement::new(
            Coweight::zero(self.datum.rank()),
            self.datum.weyl().simple(i),
        ))
    }

    /// `z_f = sum_lambda c_lambda theta_lambda` for Weyl-invariant `f`.
    pub fn central_element(&self, f: &WeightMultiset) -> Result<AffineHeckeElement> {
        if f.support().any(|w| w.dim() != self.datum.rank()) {
            return Err(Error::Dimension { expected: self.datum.rank(), got: 0 });
        }
        if !f.is_w_invariant(&self.datum) {
            return Err(Error::NotInvariant);
        }
        let parts: Vec<AffineHeckeElement> = f
            .terms()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(w, c)| Ok(self.theta(w)?.scale(c)))
            .collect::<Result<_>>()?;
        Ok(parts.iter().fold(AffineHeckeElement::zero(), |acc, p| acc.add(p)))
    }

    /// `P_W(q) = sum_w q^{l(w)}`.
    pub fn poincare_polynomial(&self) -> LaurentHalf {
        let weyl = self.datum.weyl();
        (0..weyl.order()).fold(LaurentHalf::zero(), |acc, w| &acc + &LaurentHalf::v_pow(2 * weyl.length(w) as i64))
    }

    fn finite_sum(&self) -> AffineHeckeElement {
        let n = self.datum.rank();
        let mut out = AffineHeckeElement::zero();
        for w in 0..self.datum.weyl().order() {
            out.add_term(ExtAffineWeylElement::new(Coweight::zero(n), w), &LaurentHalf::one());
        }
        out
    }

    /// `e_K = (sum_w T_w) / P_W(q)`.
    pub fn spherical_idempotent(&self) -> AffineHeckeElement {
        let mut out = self.finite_sum();
        out.denominator = self.poincare_polynomial();
        out
    }

    /// Double-coset coordinates of `z_f e_K`, checking bi-invariance.
    pub fn satake_inverse(&self, f: &SymmetricFunction) -> Result<SphericalCosetVector> {
        let z = self.central_element(f.as_multiset())?;
        // Rescaled by P_W so that e_K corresponds to 1_K.
        let n = self.multiply(&z, &self.finite_sum())?;
        let weyl = self.datum.weyl();
        let mut coords = BTreeMap::new();
        let mut counts: BTreeMap<Coweight, usize> = BTreeMap::new();
        for (x, c) in n.terms() {
            let lambda = self.datum.dominant_representative(&x.translation);
            let anchor = n.coeff(&ExtAffineWeylElement::translation_only(lambda.clone()));
            if &anchor != c {
                return Err(Error::Consistency(format!("coefficients not constant on the double coset of {lambda}")));
            }
            *counts.entry(lambda.clone()).or_default() += 1;
            coords.insert(lambda, c.clone());
        }
        for (lambda, count) in &counts {
            let expected = self.datum.weyl_orbit(lambda).len() * weyl.order();
            if *count != expected {
                return Err(Error::Consistency(format!("double coset of {lambda} only partly supported")));
            }
        }
        Ok(SphericalCosetVector::from_coords(coords))
    }

    /// Inverse Satake matrix on a dominance-closed list of dominant weights.
    pub fn satake_matrix(&self, weights: &[Coweight]) -> Result<SatakeMatrix> {
        let set: BTreeSet<&Coweight> = weights.iter().collect();
        for w in weights {
            self.datum.check_dim(w)?;
            if !self.datum.is_dominant(w) {
                return Err(Error::NotDominant(w.to_string()));
            }
            if let Some(missing) = self.datum.dominant_weights_below(w).into_iter().find(|b| !set.contains(b)) {
                return Err(Error::NotDownwardClosed(missing.to_string()));
            }
        }
        let rows: Vec<SphericalCosetVector> = weights
            .iter()
            .map(|w| self.satake_inverse(&orbit_character(&self.datum, w)?))
            .collect::<Result<_>>()?;
        let mut entries = Vec::with_capacity(weights.len());
        for (w, row) in weights.iter().zip(&rows) {
            if let Some(stray) = row.coords().keys().find(|l| !set.contains(l)) {
                return Err(Error::Consistency(format!("image of m{w} involves {stray} outside the list")));
            }
            entries.push(weights.iter().map(|l| row.coeff(l)).collect());
        }
        Ok(SatakeMatrix { weights: weights.to_vec(), entries })
    }

    /// The Satake transform of a double-coset vector.
    pub fn satake_transform(&self, x: &SphericalCosetVector) -> Result<SymmetricFunction> {
        let weights = self.closure_below(x.coords().keys())?;
        let m = self.satake_matrix(&weights)?;
        let s = m.transform(&self.datum)?;
        let mut out = WeightMultiset::zero();
        for (i, lambda) in weights.iter().enumerate() {
            let c = x.coeff(lambda);
            if c.is_zero() {
                continue;
            }
            for (j, nu) in weights.iter().enumerate() {
                if s[i][j].is_zero() {
                    continue;
                }
                let coeff = &c * &s[i][j];
                out = out.add(&orbit_character(&self.datum, nu)?.as_multiset().scale(&coeff));
            }
        }
        SymmetricFunction::new(&self.datum, out)
    }

    /// Double-coset coordinates of a symmetric function, through the
    /// monomial basis.
    pub fn to_double_coset(&self, f: &SymmetricFunction) -> Result<SphericalCosetVector> {
        self.satake_inverse(f)
    }

    fn closure_below<'a>(&self, tops: impl Iterator<Item = &'a Coweight>) -> Result<Vec<Coweight>> {
        let mut set = BTreeSet::new();
        for t in tops {
            self.datum.check_dim(t)?;
            if !self.datum.is_dominant(t) {
                return Err(Error::NotDominant(t.to_string()));
            }
            set.extend(self.datum.dominant_weights_below(t));
        }
        Ok(set.into_iter().collect())
    }

    /// Bernstein-Lusztig right side
    /// `(q - 1)(theta_lambda - theta_{s lambda}) / (1 - theta_{-a})` for the
    /// i-th simple coroot `a`, with the division carried out as a finite
    /// geometric sum and checked to leave no remainder.
    pub fn bernstein_lusztig_rhs(&self, lambda: &Coweight, i: usize) -> Result<AffineHeckeElement> {
        let k = pair(&self.datum.simple_roots()[i], &lambda.0);
        let a = Coweight(self.datum.simple_coroots()[i].clone());
        let one = LaurentHalf::one();
        let quotient = if k >= 0 {
            WeightMultiset::from_terms((0..k).map(|j| (lambda.sub(&a.scale(j)), one.clone())))
        } else {
            WeightMultiset::from_terms((1..=-k).map(|j| (lambda.add(&a.scale(j)), LaurentHalf::constant(-1))))
        };
        let numerator = WeightMultiset::monomial(lambda.clone(), one.clone())
            .sub(&WeightMultiset::monomial(self.datum.simple_reflect(i, lambda), one.clone()));
        let denom = WeightMultiset::monomial(Coweight::zero(self.datum.rank()), one.clone())
            .sub(&WeightMultiset::monomial(a.neg(), one));
        if quotient.mul(&denom) != numerator {
            return Err(Error::Consistency("geometric expansion left a remainder".into()));
        }
        let q1 = &LaurentHalf::q() - &LaurentHalf::one();
        let mut out = AffineHeckeElement::zero();
        for (w, c) in quotient.terms() {
            out = out.add(&self.theta(w)?.scale(&(c * &q1)));
        }
        Ok(out)
    }

    pub fn to_json(&self, h: &AffineHeckeElement) -> AffineHeckeElementJson {
        AffineHeckeElementJson {
            terms: h
                .terms()
                .map(|(x, c)| TermJson {
                    translation: x.translation.clone(),
                    finite_word: self.finite_part(x).word().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
            denominator: (!h.denominator.is_one()).then(|| h.denominator.to_string()),
        }
    }

    /// Whether `z` commutes with every finite and affine `T_s` and with
    /// `theta` of each unit coweight and its negative.
    pub fn centrality_report(&self, lambda: &Coweight) -> Result<RelationReport> {
        let z = self.central_element(orbit_character(&self.datum, lambda)?.as_multiset())?;
        let n = self.datum.rank();
        let mut generators: Vec<(String, AffineHeckeElement)> = self
            .simples
            .iter()
            .map(|s| (format!("T({},{:?})", s.translation, self.finite_part(s).word()), AffineHeckeElement::basis(s.clone())))
            .collect();
        for i in 0..n {
            for sign in [1, -1] {
                let e = Coweight::unit(n, i).scale(sign);
                generators.push((format!("theta{e}"), self.theta(&e)?));
            }
        }
        let mut failures = Vec::new();
        for (name, g) in &generators {
            let comm = self.multiply(&z, g)?.sub(&self.multiply(g, &z)?);
            if !comm.is_empty() {
                failures.push(vec![name.clone(), format!("{} terms", comm.len())]);
            }
        }
        let pass = failures.is_empty();
        let mut report = RelationReport::new("satake-centrality", failures, pass)
            .with_detail("lambda", lambda.to_string())
            .with_detail("generators", generators.len());
        report.group = Some(self.group_tag());
        Ok(report)
    }

    fn group_tag(&self) -> GroupTag {
        GroupTag { family: self.datum.family(), rank: self.datum.rank() }
    }

    /// Checks of the Satake transform on dominant weights of sup norm at most
    /// `max_norm`: minuscule calibration, triangularity with the expected
    /// diagonal, the round trip, centrality and `e_K^2 = e_K`.
    pub fn satake_suite(&self, max_norm: i64, centrality: bool) -> Result<Vec<RelationReport>> {
        let tag = self.group_tag();
        let mut reports = Vec::new();
        for mu in self.datum.minuscule_dominants(1) {
            let unit = SphericalCosetVector::from_coords([(mu.clone(), LaurentHalf::one())]);
            let got = self.satake_transform(&unit)?;
            let expected = orbit_character(&self.datum, &mu)?.scale(&LaurentHalf::v_pow(self.datum.rho_pairing_exponent(&mu)));
            let diff = got.sub(&expected);
            let mut r = RelationReport::new("satake-calibration", vec![vec![diff.as_multiset().render()]], diff.is_zero())
                .with_detail("mu", mu.to_string())
                .with_detail("transform", got.as_multiset().render());
            r.group = Some(tag.clone());
            reports.push(r);
        }

        let weights = self.closure_below(self.datum.dominant_weights_in_box(max_norm).iter())?;
        let m = self.satake_matrix(&weights)?;
        let s = m.transform(&self.datum)?;
        let mut bad = Vec::new();
        for (i, lambda) in weights.iter().enumerate() {
            let expected = LaurentHalf::v_pow(self.datum.rho_pairing_exponent(lambda));
            if s[i][i] != expected {
                bad.push(vec![lambda.to_string(), s[i][i].to_string()]);
            }
        }
        let triangular = m.is_triangular(&self.datum);
        if !triangular {
            bad.push(vec!["not triangular".into()]);
        }
        let mut r = RelationReport::new("satake-triangular", bad.clone(), bad.is_empty())
            .with_detail("weights", weights.iter().map(|w| w.to_string()).collect::<Vec<_>>())
            .with_detail("diagonal", (0..weights.len()).map(|i| s[i][i].to_string()).collect::<Vec<_>>());
        r.group = Some(tag.clone());
        reports.push(r);

        // B S = I is the round trip on every m_lambda at once.
        let k = weights.len();
        let mut residual = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let mut acc = LaurentHalf::zero();
                for l in 0..k {
                    acc += &(&m.entries[i][l] * &s[l][j]);
                }
                if i == j {
                    acc -= &LaurentHalf::one();
                }
                if !acc.is_zero() {
                    residual.push(vec![weights[i].to_string(), weights[j].to_string(), acc.to_string()]);
                }
            }
        }
        let mut r = RelationReport::new("satake-round-trip", residual.clone(), residual.is_empty()).with_detail("size", k);
        r.group = Some(tag.clone());
        reports.push(r);

        let ek = self.spherical_idempotent();
        let ok = self.multiply(&ek, &ek)?.equals(&ek);
        let mut r = RelationReport::new("satake-idempotent", Vec::new(), ok).with_detail("poincare", self.poincare_polynomial().to_string());
        r.group = Some(tag);
        reports.push(r);

        if centrality {
            for lambda in self.datum.dominant_weights_in_box(max_norm) {
                reports.push(self.centrality_report(&lambda)?);
            }
        }
        Ok(reports)
    }

    /// Coefficients of `H` in the double-coset basis.
    pub fn hecke_polynomial_double_coset(&self, h: &HeckePolynomial) -> Result<Vec<SphericalCosetVector>> {
        h.coefficients().iter().map(|c| self.satake_inverse(c)).collect()
    }

    /// Rendering such as `X^2 - T[1,0]*X + q*T[1,1]`.
    pub fn render_double_coset(&self, coeffs: &[SphericalCosetVector]) -> String {
        let rows: Vec<Vec<(Coweight, LaurentHalf)>> = coeffs
            .iter()
            .map(|c| {
                let mut v: Vec<_> = c.coords().iter().map(|(l, x)| (l.clone(), x.clone())).collect();
                v.sort_by(|(a, _), (b, _)| {
                    self.datum.rho_pairing_exponent(b).cmp(&self.datum.rho_pairing_exponent(a)).then(b.cmp(a))
                });
                v
            })
            .collect();
        render_polynomial(&rows, |w| {
            let inner: Vec<String> = w.0.iter().map(|x| x.to_string()).collect();
            format!("T[{}]", inner.join(","))
        })
    }
}

fn scale_map(
    m: &BTreeMap<ExtAffineWeylElement, LaurentHalf>,
    c: &LaurentHalf,
) -> BTreeMap<ExtAffineWeylElement, LaurentHalf> {
    m.iter().map(|(x, y)| (x.clone(), c * y)).filter(|(_, y)| !y.is_zero()).collect()
}

/// Weyl group index of the reflection in the k-th positive root.
fn reflection_index(datum: &BasedRootDatum, k: usize) -> usize {
    let root = &datum.positive_roots()[k];
    let coroot = &datum.positive_coroots()[k];
    let n = datum.rank();
    let mut m = vec![0i64; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = i64::from(r == c) - coroot[r] * root[c];
        }
    }
    datum.weyl().index_of_matrix(&m).expect("root reflections lie in the Weyl group")
}
