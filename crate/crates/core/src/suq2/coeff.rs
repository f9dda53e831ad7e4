//! Matrix coefficients of `SU_q(2)` acting on `c_c(Ĝ_q) = ⊕ End V(s)`.
//!
//! A block `ω_s ∈ End V(s)` is evaluated on the coefficient `u^s_{ij}` as
//! `ω_s[i, j]`, extending `X ↦ π_s(X)[i, j]` from `U_q(𝔰𝔩₂)`. Products of
//! coefficients are dual to the coproduct, so hitting `ω` with a spin-½
//! coefficient is a sandwich through Clebsch–Gordan injections.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use super::cg::{cg_decompose, CGIsometry};
use super::uq::{uq_sl2_module, CMat};
use crate::error::{Error, Result};
use crate::qnum::QContext;

/// Finitely supported element of `⊕_s End V(s)`, keyed by `2s`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CcElement {
    pub blocks: BTreeMap<u32, CMat>,
}

impl CcElement {
    pub fn new() -> Self {
        Self::default()
    }

    /// The minimal central projection `p⁰`, i.e. the Haar state.
    pub fn haar_state() -> Self {
        Self::unit(0, 0, 0)
    }

    /// Matrix unit `e^{(s)}_{ij}`.
    pub fn unit(two_s: u32, i: usize, j: usize) -> Self {
        let d = two_s as usize + 1;
        let mut m = CMat::zeros(d, d);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        Self::from_block(two_s, m)
    }

    pub fn identity(two_s: u32) -> Self {
        let d = two_s as usize + 1;
        Self::from_block(two_s, CMat::identity(d, d))
    }

    pub fn from_block(two_s: u32, m: CMat) -> Self {
        assert_eq!(m.nrows(), two_s as usize + 1, "block shape must match the spin");
        assert_eq!(m.ncols(), two_s as usize + 1, "block shape must match the spin");
        let mut blocks = BTreeMap::new();
        blocks.insert(two_s, m);
        Self { blocks }
    }

    pub fn block(&self, two_s: u32) -> Option<&CMat> {
        self.blocks.get(&two_s)
    }

    pub fn add_to_block(&mut self, two_s: u32, m: &CMat) {
        match self.blocks.get_mut(&two_s) {
            Some(b) => *b += m,
            None => {
                self.blocks.insert(two_s, m.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CcElement, c: Complex64) {
        for (s, m) in &other.blocks {
            self.add_to_block(*s, &(m * c));
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            blocks: self.blocks.iter().map(|(s, m)| (*s, m * c)).collect(),
        }
    }

    /// Blockwise conjugate transpose; the `*` of `c_c(Ĝ_q)`.
    pub fn adjoint(&self) -> Self {
        Self {
            blocks: self.blocks.iter().map(|(s, m)| (*s, m.adjoint())).collect(),
        }
    }

    /// Blockwise product.
    pub fn mul(&self, other: &CcElement) -> Self {
        let blocks = self
            .blocks
            .iter()
            .filter_map(|(s, m)| other.blocks.get(s).map(|n| (*s, m * n)))
            .collect();
        Self { blocks }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.values().map(|m| m.camax()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference, treating missing blocks as zero.
    pub fn max_abs_diff(&self, other: &CcElement) -> f64 {
        let mut d = self.clone();
        d.add_scaled(other, Complex64::new(-1.0, 0.0));
        d.max_abs()
    }

    /// Spins carrying an entry above `tol`.
    pub fn support(&self, tol: f64) -> Vec<u32> {
        self.blocks
            .iter()
            .filter(|(_, m)| m.camax() > tol)
            .map(|(s, _)| *s)
            .collect()
    }
}

/// Generators of `O(SU_q(2))`, the entries of the fundamental corepresentation
/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
    D,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::B, Generator::C, Generator::D];

    /// Position `(i, j)` in the corepresentation matrix.
    pub fn index(self) -> (usize, usize) {
        match self {
            Generator::A => (0, 0),
            Generator::B => (0, 1),
            Generator::C => (1, 0),
            Generator::D => (1, 1),
        }
    }

    pub fn from_index(i: usize, j: usize) -> Generator {
        match (i, j) {
            (0, 0) => Generator::A,
            (0, 1) => Generator::B,
            (1, 0) => Generator::C,
            _ => Generator::D,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::B => "b",
            Generator::C => "c",
            Generator::D => "d",
        }
    }
}

/// Element of the spin-½ coefficient space `x = Σ u[k,l] · u^{1/2}_{kl}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient {
    pub u: Matrix2<Complex64>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self { u: Matrix2::zeros() }
    }

    /// The bare coefficient `u^{1/2}_{kl}`.
    pub fn from_unit(k: usize, l: usize) -> Self {
        let mut u = Matrix2::zeros();
        u[(k, l)] = Complex64::new(1.0, 0.0);
        Self { u }
    }

    /// `a = u₀₀`, `b = q·u₁₀`, `c = q⁻¹·u₀₁`, `d = u₁₁`. The off-diagonal
    /// scalars make the corepresentation matrix satisfy `ad − qbc = 1` and
    /// `b* = −qc` for the normalization of `E`, `F` used here.
    pub fn generator(ctx: &QContext, g: Generator) -> Self {
        let q = ctx.q();
        let mut u = Matrix2::zeros();
        match g {
            Generator::A => u[(0, 0)] = 1.0.into(),
            Generator::B => u[(1, 0)] = q.into(),
            Generator::C => u[(0, 1)] = (1.0 / q).into(),
            Generator::D => u[(1, 1)] = 1.0.into(),
        }
        Self { u }
    }

    /// Coordinates `x = Σ m[i,j]·(corepresentation entry (i,j))`.
    pub fn corep_coords(&self, ctx: &QContext) -> Matrix2<Complex64> {
        let q = ctx.q();
        Matrix2::new(self.u[(0, 0)], self.u[(1, 0)] / q, self.u[(0, 1)] * q, self.u[(1, 1)])
    }

    /// Evaluate on a spin-½ operator.
    pub fn eval(&self, pi: &Matrix2<Complex64>) -> Complex64 {
        self.u.component_mul(pi).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { u: self.u * c }
    }

    /// `Some((λ, g))` when `x = λ·g` for a single generator.
    pub fn as_generator_multiple(&self, ctx: &QContext, tol: f64) -> Option<(Complex64, Generator)> {
        let m = self.corep_coords(ctx);
        let nz: Vec<(usize, usize)> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter(|&(i, j)| m[(i, j)].norm() > tol)
            .collect();
        match nz.as_slice() {
            [(i, j)] => Some((m[(*i, *j)], Generator::from_index(*i, *j))),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(x▷ω)(y) = ω(yx)`
    Left,
    /// `(ω◁x)(y) = ω(xy)`
    Right,
}

/// Clebsch–Gordan decompositions memoized for one computation.
pub(crate) struct CgCache {
    ctx: QContext,
    table: RefCell<HashMap<(u32, u32), Rc<CGIsometry>>>,
}

impl CgCache {
    pub(crate) fn new(ctx: &QContext) -> Self {
        Self {
            ctx: *ctx,
            table: RefCell::new(HashMap::new()),
        }
    }

    fn get(&self, a: u32, b: u32) -> Result<Rc<CGIsometry>> {
        if let Some(c) = self.table.borrow().get(&(a, b)) {
            return Ok(c.clone());
        }
        let c = Rc::new(cg_decompose(&self.ctx, a, b)?);
        self.table.borrow_mut().insert((a, b), c.clone());
        Ok(c)
    }

    pub(crate) fn hit(&self, x: &Coefficient, omega: &CcElement, side: Side) -> Result<CcElement> {
        let mut out = CcElement::new();
        let terms: Vec<(usize, usize, Complex64)> = (0..2)
            .flat_map(|k| (0..2).map(move |l| (k, l)))
            .filter_map(|(k, l)| {
                let c = x.u[(k, l)];
                (c.norm() > 0.0).then_some((k, l, c))
            })
            .collect();
        if terms.is_empty() {
            return Ok(out);
        }
        for (&two_sp, w) in &omega.blocks {
            let targets = if two_sp == 0 {
                vec![1]
            } else {
                vec![two_sp - 1, two_sp + 1]
            };
            for two_spp in targets {
                let d = two_spp as usize + 1;
                let cg = match side {
                    Side::Left => self.get(two_spp, 1)?,
                    Side::Right => self.get(1, two_spp)?,
                };
                let iota = cg
                    .injection(two_sp)
                    .ok_or_else(|| Error::Consistency(format!("missing V({two_sp}/2) in V({two_spp}/2)⊗V(1/2)")))?;
                // rows of ι belonging to a fixed spin-½ index
                let slice = |k: usize| -> CMat {
                    let rows: Vec<usize> = match side {
                        Side::Left => (0..d).map(|a| 2 * a + k).collect(),
                        Side::Right => (0..d).map(|a| k * d + a).collect(),
                    };
                    iota.select_rows(&rows)
                };
                let pieces = [slice(0), slice(1)];
                let mut acc = CMat::zeros(d, d);
                for &(k, l, c) in &terms {
                    acc += &pieces[k] * w * pieces[l].adjoint() * c;
                }
                out.add_to_block(two_spp, &acc);
            }
        }
        Ok(out)
    }
}

/// `x▷ω` or `ω◁x` for a spin-½ coefficient `x`.
pub fn coefficient_action(ctx: &QContext, x: &Coefficient, omega: &CcElement, side: Side) -> Result<CcElement> {
    CgCache::new(ctx).hit(x, omega, side)
}

fn spin_half(ctx: &QContext) -> [Matrix2<Complex64>; 4] {
    let m = uq_sl2_module(ctx, 1);
    let fix = |a: &CMat| Matrix2::new(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    [Matrix2::identity(), fix(&m.k), fix(&m.e), fix(&m.f)]
}

// Solve Σ y[k,l]·π(g_r)[k,l] = rhs_r over the basis {1, K, E, F} of End V(½).
fn solve_coefficient(basis: &[Matrix2<Complex64>; 4], rhs: [Complex64; 4]) -> Coefficient {
    let mut m = Matrix4::<Complex64>::zeros();
    for (r, g) in basis.iter().enumerate() {
        for (c, (k, l)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            m[(r, c)] = g[(k, l)];
        }
    }
    let y = m.lu().solve(&Vector4::from(rhs)).expect("1, K, E, F span End V(1/2)");
    Coefficient {
        u: Matrix2::new(y[0], y[1], y[2], y[3]),
    }
}

/// Antipode on spin-½ coefficients, from `S(x)(X) = x(Ŝ⁻¹X)` with
/// `Ŝ⁻¹(K) = K⁻¹`, `Ŝ⁻¹(E) = −EK⁻¹`, `Ŝ⁻¹(F) = −KF`.
pub fn antipode(ctx: &QContext, x: &Coefficient) -> Coefficient {
    let [one, k, e, f] = spin_half(ctx);
    let k_inv = k.try_inverse().unwrap();
    let twisted = [one, k_inv, -(e * k_inv), -(k * f)];
    let rhs = twisted.map(|g| x.eval(&g));
    solve_coefficient(&[one, k, e, f], rhs)
}

/// `S(g)` for a generator, as a multiple of a generator.
pub fn antipode_gen(ctx: &QContext, g: Generator) -> (Complex64, Generator) {
    antipode(ctx, &Coefficient::generator(ctx, g))
        .as_generator_multiple(ctx, 1e-12)
        .expect("antipode maps generators to multiples of generators")
}

/// Star on spin-½ coefficients, from `x*(X) = conj(x(Ŝ(X)*))` with
/// `Ŝ(K)* = K⁻¹`, `Ŝ(E)* = −F`, `Ŝ(F)* = −E`.
pub fn star(ctx: &QContext, x: &Coefficient) -> Coefficient {
    let [one, k, e, f] = spin_half(ctx);
    let k_inv = k.try_inverse().unwrap();
    let twisted = [one, k_inv, -f, -e];
    let rhs = twisted.map(|g| x.eval(&g).conj());
    solve_coefficient(&[one, k, e, f], rhs)
}

pub fn star_gen(ctx: &QContext, g: Generator) -> (Complex64, Generator) {
    star(ctx, &Coefficient::generator(ctx, g))
        .as_generator_multiple(ctx, 1e-12)
        .expect("star maps generators to multiples of generators")
}

#[cfg(test)]
mod tests {
    use super::super::uq::{tensor_action, Action};
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_element(rng: &mut StdRng, spins: &[u32]) -> CcElement {
        let mut w = CcElement::new();
        for &s in spins {
            let d = s as usize + 1;
            let m = CMat::from_fn(d, d, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            w.add_to_block(s, &m);
        }
        w
    }

    fn gens(ctx: &QContext) -> [Coefficient; 4] {
        Generator::ALL.map(|g| Coefficient::generator(ctx, g))
    }

    #[test]
    fn antipode_table() {
        let ctx = QContext::new(0.5).unwrap();
        let q = ctx.q();
        let expect = [
            (Generator::A, 1.0, Generator::D),
            (Generator::B, -1.0 / q, Generator::B),
            (Generator::C, -q, Generator::C),
            (Generator::D, 1.0, Generator::A),
        ];
        for (g, c, h) in expect {
            let (lam, got) = antipode_gen(&ctx, g);
            assert_eq!(got, h, "S({})", g.name());
            assert!((lam - c).norm() < 1e-12, "S({}) = {lam}·{}", g.name(), h.name());
        }
    }

    #[test]
    fn star_table() {
        let ctx = QContext::new(0.5).unwrap();
        let q = ctx.q();
        let expect = [
            (Generator::A, 1.0, Generator::D),
            (Generator::B, -q, Generator::C),
            (Generator::C, -1.0 / q, Generator::B),
            (Generator::D, 1.0, Generator::A),
        ];
        for (g, c, h) in expect {
            let (lam, got) = star_gen(&ctx, g);
            assert_eq!(got, h, "{}*", g.name());
            assert!((lam - c).norm() < 1e-12, "{}* = {lam}·{}", g.name(), h.name());
        }
    }

    // S²(x) = K_{−2ρ} ▷ x ◁ K_{2ρ}: for u_{kl}, the factor is K[k,k]·K⁻¹[l,l]
    #[test]
    fn antipode_squared_is_conjugation_by_k() {
        let ctx = QContext::new(0.5).unwrap();
        let k = uq_sl2_module(&ctx, 1).k;
        for g in Generator::ALL {
            let x = Coefficient::generator(&ctx, g);
            let s2 = antipode(&ctx, &antipode(&ctx, &x));
            let mut expect = x;
            for i in 0..2 {
                for j in 0..2 {
                    expect.u[(i, j)] *= k[(i, i)] / k[(j, j)];
                }
            }
            assert!((s2.u - expect.u).norm() < 1e-12);
        }
        let (lam, h) = antipode_gen(&ctx, Generator::C);
        let (lam2, h2) = antipode_gen(&ctx, h);
        assert_eq!(h2, Generator::C);
        assert!((lam * lam2 - 0.25).norm() < 1e-12);
    }

    #[test]
    fn haar_state_hits_land_on_spin_half() {
        let ctx = QContext::new(0.5).unwrap();
        for x in gens(&ctx) {
            for side in [Side::Left, Side::Right] {
                let r = coefficient_action(&ctx, &x, &CcElement::haar_state(), side).unwrap();
                assert_eq!(r.support(1e-14), vec![1]);
            }
        }
    }

    // Oracle: for X ∈ U_q(𝔰𝔩₂), the element ω = (π_s(X))_s satisfies
    // (x▷ω)(u^{s''}_{ab}) = (π_{s''}⊗π_½)(ΔX)[(a,k),(b,l)], with no CG data.
    #[test]
    fn hits_match_coproduct_evaluation() {
        let ctx = QContext::new(0.55).unwrap();
        let half: Action = (&uq_sl2_module(&ctx, 1)).into();
        for two_spp in 0..=6u32 {
            let m = uq_sl2_module(&ctx, two_spp);
            let here: Action = (&m).into();
            type Word = Box<dyn Fn(&Action) -> CMat>;
            let words: [Word; 3] = [
                Box::new(|a: &Action| &a.e * &a.f * &a.k),
                Box::new(|a: &Action| &a.f * &a.f * &a.e + &a.k_inv),
                Box::new(|a: &Action| &a.k * &a.e * &a.e * &a.f * &a.f),
            ];
            for word in &words {
                let mut omega = CcElement::new();
                for two_sp in [two_spp.wrapping_sub(1), two_spp + 1] {
                    if two_sp > 100 {
                        continue;
                    }
                    omega.add_to_block(two_sp, &word(&(&uq_sl2_module(&ctx, two_sp)).into()));
                }
                for side in [Side::Left, Side::Right] {
                    let t = match side {
                        Side::Left => tensor_action(&here, &half),
                        Side::Right => tensor_action(&half, &here),
                    };
                    let big = word(&t);
                    let d = m.dim();
                    for k in 0..2 {
                        for l in 0..2 {
                            let x = Coefficient::from_unit(k, l);
                            let r = coefficient_action(&ctx, &x, &omega, side).unwrap();
                            let blk = r.block(two_spp).unwrap();
                            for a in 0..d {
                                for b in 0..d {
                                    let (row, col) = match side {
                                        Side::Left => (2 * a + k, 2 * b + l),
                                        Side::Right => (k * d + a, l * d + b),
                                    };
                                    let e = big[(row, col)];
                                    assert!((blk[(a, b)] - e).norm() < 1e-9 * e.norm().max(1.0));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corepresentation_relations_as_actions() {
        let ctx = QContext::new(0.5).unwrap();
        let q = Complex64::from(ctx.q());
        let mut rng = StdRng::seed_from_u64(3);
        let omega = random_element(&mut rng, &[0, 1, 2, 3, 4]);
        let [a, b, c, d] = gens(&ctx);
        for side in [Side::Left, Side::Right] {
            // left: x▷(y▷ω) = (xy)▷ω; right: (ω◁x)◁y = ω◁(xy)
            let prod = |x: &Coefficient, y: &Coefficient| -> CcElement {
                match side {
                    Side::Left => {
                        let inner = coefficient_action(&ctx, y, &omega, side).unwrap();
                        coefficient_action(&ctx, x, &inner, side).unwrap()
                    }
                    Side::Right => {
                        let inner = coefficient_action(&ctx, x, &omega, side).unwrap();
                        coefficient_action(&ctx, y, &inner, side).unwrap()
                    }
                }
            };
            let check = |lhs: CcElement, rhs: CcElement, what: &str| {
                let err = lhs.max_abs_diff(&rhs);
                assert!(err < 1e-10, "{what} ({side:?}): {err}");
            };
            check(prod(&a, &b), prod(&b, &a).scale(q), "ab = qba");
            check(prod(&a, &c), prod(&c, &a).scale(q), "ac = qca");
            check(prod(&b, &c), prod(&c, &b), "bc = cb");
            check(prod(&b, &d), prod(&d, &b).scale(q), "bd = qdb");
            check(prod(&c, &d), prod(&d, &c).scale(q), "cd = qdc");
            let mut one = prod(&a, &d);
            one.add_scaled(&prod(&b, &c), -q);
            check(one, omega.clone(), "ad − qbc = 1");
            let mut one = prod(&d, &a);
            one.add_scaled(&prod(&b, &c), -1.0 / q);
            check(one, omega.clone(), "da − q⁻¹bc = 1");
        }
    }

    #[test]
    fn left_and_right_hits_commute() {
        let ctx = QContext::new(0.6).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        let omega = random_element(&mut rng, &[0, 2, 3]);
        for x in gens(&ctx) {
            for y in gens(&ctx) {
                let lr = coefficient_action(
                    &ctx,
                    &y,
                    &coefficient_action(&ctx, &x, &omega, Side::Left).unwrap(),
                    Side::Right,
                )
                .unwrap();
                let rl = coefficient_action(
                    &ctx,
                    &x,
                    &coefficient_action(&ctx, &y, &omega, Side::Right).unwrap(),
                    Side::Left,
                )
                .unwrap();
                assert!(lr.max_abs_diff(&rl) < 1e-10);
            }
        }
    }
}
