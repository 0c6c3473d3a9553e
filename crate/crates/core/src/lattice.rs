//! The grading group `L(A)` on `X1, …, Xr` modulo `α_i X_i = α_j X_j`, with normal
//! forms from a Smith decomposition, the degree map, the dualizing element and the
//! element `ω_W` singled out by the principal generators.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::numtheory::{bezout3, gcd_all, lcm_all};
use crate::arith::snf::{smith_normal_form, unimodular_inverse, vec_mul, IntMatrix, SmithForm};
use crate::duality::DualTypeData;
use crate::error::{Error, Result};
use crate::weights::WeightSystem;
use crate::PERMUTATIONS;

#[derive(Clone, Debug)]
pub struct GradingLattice {
    alphas: Vec<u64>,
    relations: IntMatrix,
    snf: SmithForm,
    /// `snf.right`, with the last column negated if needed so the free generator has
    /// positive degree.
    basis: IntMatrix,
    /// Invariant factors of the relation matrix.
    factors: Vec<i64>,
    alpha: u64,
    gen_degrees: Vec<i64>,
    /// Degree of the free generator: `deg v = free_degree · free(v)`.
    free_degree: i64,
}

/// An element of `L(A)`: a representative over the free cover and its normal form.
/// Equality compares normal forms only.
#[derive(Clone, Debug)]
pub struct LatticeElement {
    coords: Vec<i64>,
    free: i64,
    torsion: Vec<i64>,
}

impl PartialEq for LatticeElement {
    fn eq(&self, other: &Self) -> bool {
        self.free == other.free && self.torsion == other.torsion
    }
}

impl Eq for LatticeElement {}

impl LatticeElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinate along the free generator.
    pub fn free(&self) -> i64 {
        self.free
    }

    /// Residues along the nontrivial torsion generators, in the order of
    /// [`GradingLattice::torsion_orders`].
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }
}

impl GradingLattice {
    pub fn new(alphas: &[u64]) -> Result<Self> {
        if alphas.is_empty() || alphas.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "signature entries must be positive, got {alphas:?}"
            )));
        }
        let r = alphas.len();
        let relations: IntMatrix = (0..r - 1)
            .map(|i| {
                let mut row = vec![0i64; r];
                row[i] = alphas[i] as i64;
                row[i + 1] = -(alphas[i + 1] as i64);
                row
            })
            .collect();
        let snf = if r == 1 {
            SmithForm {
                left: Vec::new(),
                right: vec![vec![1]],
                diag: Vec::new(),
            }
        } else {
            smith_normal_form(&relations)
        };
        let factors = snf.invariant_factors();
        let alpha = lcm_all(&alphas.iter().map(|&a| a as i64).collect::<Vec<_>>()) as u64;
        let gen_degrees: Vec<i64> = alphas.iter().map(|&a| (alpha / a) as i64).collect();

        let mut basis = snf.right.clone();
        let inverse = unimodular_inverse(&basis).expect("Smith transforms are unimodular");
        // deg(x) = (x·V)·(V⁻¹·g); only the last component of V⁻¹·g survives.
        let projected: Vec<i64> = inverse
            .iter()
            .map(|row| row.iter().zip(&gen_degrees).map(|(a, b)| a * b).sum())
            .collect();
        assert!(
            projected[..r - 1].iter().all(|&x| x == 0),
            "degree does not factor through the free coordinate"
        );
        let mut free_degree = projected[r - 1];
        if free_degree < 0 {
            for row in basis.iter_mut() {
                row[r - 1] = -row[r - 1];
            }
            free_degree = -free_degree;
        }
        Ok(Self {
            alphas: alphas.to_vec(),
            relations,
            snf,
            basis,
            factors,
            alpha,
            gen_degrees,
            free_degree,
        })
    }

    pub fn arity(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    /// `α = lcm(α_1, …, α_r)`.
    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith_form(&self) -> &SmithForm {
        &self.snf
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.factors
    }

    /// Orders of the nontrivial cyclic torsion summands.
    pub fn torsion_orders(&self) -> Vec<i64> {
        self.factors.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.arity() - self.factors.iter().filter(|&&d| d != 0).count()
    }

    /// `deg X_i = α / α_i`.
    pub fn generator_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    /// Degree of the positive free generator.
    pub fn free_degree(&self) -> i64 {
        self.free_degree
    }

    pub fn element(&self, coords: &[i64]) -> LatticeElement {
        assert_eq!(coords.len(), self.arity(), "coordinate vector has the wrong length");
        let y = vec_mul(coords, &self.basis);
        let r = self.arity();
        let torsion = (0..r - 1)
            .filter(|&j| self.factors[j] > 1)
            .map(|j| y[j].rem_euclid(self.factors[j]))
            .collect();
        LatticeElement {
            coords: coords.to_vec(),
            free: y[r - 1],
            torsion,
        }
    }

    pub fn zero(&self) -> LatticeElement {
        self.element(&vec![0; self.arity()])
    }

    pub fn generator(&self, i: usize) -> LatticeElement {
        let mut v = vec![0; self.arity()];
        v[i] = 1;
        self.element(&v)
    }

    /// `c = α_1 X_1` (equal to every `α_i X_i`).
    pub fn c(&self) -> LatticeElement {
        let mut v = vec![0; self.arity()];
        v[0] = self.alphas[0] as i64;
        self.element(&v)
    }

    pub fn add(&self, a: &LatticeElement, b: &LatticeElement) -> LatticeElement {
        let v: Vec<i64> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.element(&v)
    }

    pub fn sub(&self, a: &LatticeElement, b: &LatticeElement) -> LatticeElement {
        let v: Vec<i64> = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        self.element(&v)
    }

    pub fn neg(&self, a: &LatticeElement) -> LatticeElement {
        self.scale(-1, a)
    }

    pub fn scale(&self, k: i64, a: &LatticeElement) -> LatticeElement {
        let v: Vec<i64> = a.coords.iter().map(|x| k * x).collect();
        self.element(&v)
    }

    pub fn degree(&self, v: &LatticeElement) -> i64 {
        v.coords.iter().zip(&self.gen_degrees).map(|(a, b)| a * b).sum()
    }

    /// `ω_A = (r - 2)c - Σ X_i`.
    pub fn dualizing_element(&self) -> LatticeElement {
        let r = self.arity() as i64;
        let mut v = vec![-1i64; self.arity()];
        v[0] += (r - 2) * self.alphas[0] as i64;
        self.element(&v)
    }
}

/// The principal generators, `ω_W`, and the data used to construct it.
#[derive(Clone, Debug)]
pub struct PrincipalData {
    pub lattice: GradingLattice,
    pub l: [LatticeElement; 3],
    pub omega: LatticeElement,
    pub bezout: [i64; 3],
    /// Weight attached to `l_i` (the degree of the letter for the i-th generator).
    pub weights: [u64; 3],
    /// `weights[i] = family weight at index assignment[i]`.
    pub assignment: [usize; 3],
    /// Set when the weight assignment is not the printed family order.
    pub assignment_permuted: bool,
    pub epsilon: i64,
    pub h: u64,
}

/// `l_i` for the family data, as elements of the lattice on the `A_W` row.
pub fn principal_generators(
    lattice: &GradingLattice,
    t: &DualTypeData,
) -> Result<[LatticeElement; 3]> {
    if lattice.alphas() != t.family.signature_row() {
        return Err(Error::InvalidInput(format!(
            "lattice {:?} does not match the signature row of {}",
            lattice.alphas(),
            t.family
        )));
    }
    Ok(t.family.principal_generators().map(|l| lattice.element(&l)))
}

pub fn omega_from_bezout(
    lattice: &GradingLattice,
    l: &[LatticeElement; 3],
    k: [i64; 3],
) -> LatticeElement {
    let coords: Vec<i64> = (0..lattice.arity())
        .map(|j| (0..3).map(|i| k[i] * l[i].coords()[j]).sum())
        .collect();
    lattice.element(&coords)
}

/// Constructs `ω_W` and checks `a_i ω = l_i`, `-ε ω = ω_A`, `a_i ω_A = -ε l_i` and
/// `a_i l_j = a_j l_i`.
pub fn omega(w: &WeightSystem, t: &DualTypeData) -> Result<PrincipalData> {
    let weights = w.weights();
    let g = gcd_all(&weights.map(|a| a as i64));
    if g != 1 {
        return Err(Error::WeightGcd(g));
    }
    if *w != t.family_weights {
        return Err(Error::InvalidInput(format!(
            "{w} does not match the family weights {}",
            t.family_weights
        )));
    }
    let fw = t.family_weights.weights();
    let h = w.h();
    let epsilon = w.epsilon();
    let lattice = GradingLattice::new(&t.family.signature_row())?;
    let l = principal_generators(&lattice, t)?;

    let proportional = |a: [u64; 3]| {
        (0..3).all(|i| {
            (i + 1..3).all(|j| {
                lattice.scale(a[i] as i64, &l[j]) == lattice.scale(a[j] as i64, &l[i])
            })
        })
    };
    let assignment = PERMUTATIONS
        .into_iter()
        .find(|p| proportional(p.map(|j| fw[j])))
        .ok_or_else(|| {
            Error::Verification(format!("a_i·l_j = a_j·l_i fails for every weight order of {}", t.family))
        })?;
    let a = assignment.map(|j| fw[j]);

    let (g, k) = bezout3(a.map(|x| x as i64));
    debug_assert_eq!(g, 1);
    let omega = omega_from_bezout(&lattice, &l, k);
    let data = PrincipalData {
        lattice,
        l,
        omega,
        bezout: k,
        weights: a,
        assignment,
        assignment_permuted: assignment != [0, 1, 2],
        epsilon,
        h,
    };
    let failures = lemma_failures(&data);
    if !failures.is_empty() {
        return Err(Error::Verification(failures.join("; ")));
    }
    Ok(data)
}

/// Every failing identity among the defining conditions of `ω_W` and the
/// preconditions used to construct it; empty when all hold.
pub fn lemma_failures(p: &PrincipalData) -> Vec<String> {
    let lat = &p.lattice;
    let omega_a = lat.dualizing_element();
    let mut out = Vec::new();
    if lat.scale(-p.epsilon, &p.omega) != omega_a {
        out.push(String::from("(-ε)·ω_W = ω_A"));
    }
    for i in 0..3 {
        if lat.scale(p.weights[i] as i64, &p.omega) != p.l[i] {
            out.push(format!("a_{}·ω_W = l_{}", i + 1, i + 1));
        }
        if lat.scale(p.weights[i] as i64, &omega_a) != lat.scale(-p.epsilon, &p.l[i]) {
            out.push(format!("a_{}·ω_A = -ε·l_{}", i + 1, i + 1));
        }
        for j in i + 1..3 {
            if lat.scale(p.weights[i] as i64, &p.l[j]) != lat.scale(p.weights[j] as i64, &p.l[i]) {
                out.push(format!("a_{}·l_{} = a_{}·l_{}", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    out
}

/// `deg ω_W · a1 a2 a3 = h · α`, and `deg ω_W = -deg ω_A / ε` when `ε ≠ 0`.
pub fn degree_of_omega_check(w: &WeightSystem, p: &PrincipalData) -> bool {
    let lat = &p.lattice;
    let d = lat.degree(&p.omega) as i128;
    let prod: i128 = w.weights().iter().map(|&a| a as i128).product();
    let by_remark = d * prod == w.h() as i128 * lat.alpha() as i128;
    let eps = w.epsilon() as i128;
    let by_dualizing = eps == 0 || -(lat.degree(&lat.dualizing_element()) as i128) == eps * d;
    by_remark && by_dualizing
}
