//! Formality of pull-backs from a free cohomology module.
//!
//! Given a cohomology triple `H_X <-f- H_B -g-> H_E` such that `H_E` is a
//! free `H_B`-module, the bar cohomology is concentrated in bar degree zero
//! and equals `T = H_X ⊗_{H_B} H_E`. The map `θ` onto `T` is then a
//! multiplicative quasi-isomorphism, which makes the pull-back formal.
//!
//! Formality is only ever certified. A module that is not free makes the
//! criterion inapplicable; it says nothing about formality itself.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{render_combination, AlgebraMorphism, GradedAlgebra};
use crate::bar::{BarTriple, BarWindow, Theta};
use crate::error::Error;
use crate::linalg::{quotient_basis, rank_and_kernel, sign, Rational, RationalMatrix, SparseVec};
use crate::tor::{bar_cohomology, TorResult};

/// A module generator found by [`check_free_module`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleGenerator {
    pub degree: usize,
    pub label: String,
}

/// A nontrivial relation `Σ cᵢ bᵢ·eᵢ = 0` among module generators `eᵢ`
/// with coefficients `bᵢ` in the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub degree: usize,
    /// `(coefficient, base basis label, generator label)`.
    pub terms: Vec<(Rational, String, String)>,
}

impl fmt::Display for FreenessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = render_combination(self.terms.iter().map(|(c, b, e)| (c.clone(), format!("{b}·{e}"))));
        write!(f, "{lhs} = 0 in degree {}", self.degree)
    }
}

impl Serialize for FreenessWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of [`check_free_module`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModuleReport {
    pub free: bool,
    pub checked_up_to: usize,
    pub generators: Vec<ModuleGenerator>,
    pub witness: Option<FreenessWitness>,
}

/// Greedy freeness test of `H_E` as an `H_B`-module through `g`, in degrees
/// `0..=top`.
///
/// In each degree the current generators are first tested for independence:
/// the map `H_B ⊗ span(generators) -> H_E` must be injective there. Basis
/// elements outside its image are then adjoined as new generators.
pub fn check_free_module(g: &AlgebraMorphism, top: usize) -> FreeModuleReport {
    let (hb, he) = (g.source(), g.target());
    let top = top.min(hb.top()).min(he.top());
    let mut gens: Vec<(usize, SparseVec, String)> = Vec::new();
    for n in 0..=top {
        let mut cols = Vec::new();
        let mut names = Vec::new();
        for (e, v, label) in &gens {
            let c = n - e;
            for b in 0..hb.dim(c) {
                let gb = g.apply(c, &SparseVec::unit(b));
                cols.push(he.multiply(c, &gb, *e, v).expect("degree within window"));
                names.push((hb.label(c, b).to_string(), label.clone()));
            }
        }
        let m = RationalMatrix::from_columns(he.dim(n), &cols);
        let (_, kernel) = rank_and_kernel(&m);
        if let Some(k) = kernel.first() {
            let terms = k
                .iter()
                .map(|(i, x)| (x.clone(), names[i].0.clone(), names[i].1.clone()))
                .collect();
            return FreeModuleReport {
                free: false,
                checked_up_to: n,
                generators: gens
                    .into_iter()
                    .map(|(degree, _, label)| ModuleGenerator { degree, label })
                    .collect(),
                witness: Some(FreenessWitness { degree: n, terms }),
            };
        }
        let (reps, _) = quotient_basis(&cols, he.dim(n));
        for r in reps {
            let label = he.render(n, &r);
            gens.push((n, r, label));
        }
    }
    FreeModuleReport {
        free: true,
        checked_up_to: top,
        generators: gens
            .into_iter()
            .map(|(degree, _, label)| ModuleGenerator { degree, label })
            .collect(),
        witness: None,
    }
}

/// First bigrade with nonzero bar degree carrying cohomology.
pub fn first_positive_class(tor: &TorResult) -> Option<(i64, usize)> {
    tor.bigraded_dims()?.keys().find(|(k, _)| *k != 0).copied()
}

/// Whether the bar cohomology vanishes outside bar degree zero in the valid
/// range. False when the result is not bigraded.
pub fn check_positive_vanishing(tor: &TorResult) -> bool {
    tor.is_bigraded() && first_positive_class(tor).is_none()
}

/// `H_X ⊗_{H_B} H_E` with the maps `α ↦ α ⊗ 1` and `β ↦ 1 ⊗ β`.
pub fn tensor_over_base(triple: &BarTriple) -> Result<(Arc<GradedAlgebra>, AlgebraMorphism, AlgebraMorphism), Error> {
    let (hx, hb, he) = (&triple.left, &triple.middle, &triple.right);
    let top = triple.top();
    // ambient basis of H_X ⊗ H_E per degree: (a, i, b, j)
    let pairs: Vec<Vec<(usize, usize, usize, usize)>> = (0..=top)
        .map(|n| {
            let mut v = Vec::new();
            for a in 0..=n {
                for i in 0..hx.dim(a) {
                    for j in 0..he.dim(n - a) {
                        v.push((a, i, n - a, j));
                    }
                }
            }
            v
        })
        .collect();
    let index = |n: usize, key: (usize, usize, usize, usize)| -> usize {
        pairs[n].binary_search(&key).expect("pair in ambient basis")
    };
    let mut reps = Vec::with_capacity(top + 1);
    let mut projectors = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut rels = Vec::new();
        for c in 1..=n {
            for w in 0..hb.dim(c) {
                let fw = triple.f.apply(c, &SparseVec::unit(w));
                let gw = triple.g.apply(c, &SparseVec::unit(w));
                for a in 0..=n - c {
                    let b = n - a - c;
                    for i in 0..hx.dim(a) {
                        let left = hx.multiply(a, &SparseVec::unit(i), c, &fw).expect("in window");
                        for j in 0..he.dim(b) {
                            let right = he.multiply(c, &gw, b, &SparseVec::unit(j)).expect("in window");
                            let mut r = SparseVec::new();
                            for (i2, x) in left.iter() {
                                r.add_at(index(n, (a + c, i2, b, j)), x);
                            }
                            for (j2, x) in right.iter() {
                                r.add_at(index(n, (a, i, b + c, j2)), &-x.clone());
                            }
                            if !r.is_zero() {
                                rels.push(r);
                            }
                        }
                    }
                }
            }
        }
        let (r, p) = quotient_basis(&rels, pairs[n].len());
        reps.push(r);
        projectors.push(p);
    }
    let label = |n: usize, v: &SparseVec| -> String {
        let (a, i, b, j) = pairs[n][v.leading().expect("unit vector").0];
        match (hx.label(a, i), he.label(b, j)) {
            ("1", r) => r.to_string(),
            (l, "1") => l.to_string(),
            (l, r) => format!("{l}⊗{r}"),
        }
    };
    let labels: Vec<Vec<String>> = (0..=top)
        .map(|n| reps[n].iter().map(|v| label(n, v)).collect())
        .collect();
    let ambient_product = |p: usize, x: &SparseVec, q: usize, y: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (s, cx) in x.iter() {
            let (a, i, b, j) = pairs[p][s];
            for (t, cy) in y.iter() {
                let (a2, i2, b2, j2) = pairs[q][t];
                let l = hx.basis_product(a, i, a2, i2).expect("in window");
                let r = he.basis_product(b, j, b2, j2).expect("in window");
                let coeff = cx * cy * sign(b * a2);
                for (u, xu) in l.iter() {
                    for (v, xv) in r.iter() {
                        out.add_at(index(p + q, (a + a2, u, b + b2, v)), &(&coeff * xu * xv));
                    }
                }
            }
        }
        out
    };
    let project = |n: usize, v: &SparseVec| -> SparseVec { projectors[n].project(v).expect("ambient vector") };
    let mult: Vec<Vec<Vec<SparseVec>>> = (0..=top)
        .map(|p| {
            (0..=top)
                .map(|q| {
                    if p + q > top {
                        return Vec::new();
                    }
                    let mut block = Vec::with_capacity(reps[p].len() * reps[q].len());
                    for x in &reps[p] {
                        for y in &reps[q] {
                            block.push(project(p + q, &ambient_product(p, x, q, y)));
                        }
                    }
                    block
                })
                .collect()
        })
        .collect();
    let diff = (0..top)
        .map(|n| RationalMatrix::zeros(reps[n + 1].len(), reps[n].len()))
        .collect();
    let name = format!("{}⊗[{}]{}", hx.name(), hb.name(), he.name());
    let t = Arc::new(GradedAlgebra::from_tables(name, top, labels, mult, diff)?);
    let u_maps = (0..=top)
        .map(|n| {
            let cols: Vec<SparseVec> = (0..hx.dim(n))
                .map(|i| project(n, &SparseVec::unit(index(n, (n, i, 0, 0)))))
                .collect();
            RationalMatrix::from_columns(t.dim(n), &cols)
        })
        .collect();
    let v_maps = (0..=top)
        .map(|n| {
            let cols: Vec<SparseVec> = (0..he.dim(n))
                .map(|j| project(n, &SparseVec::unit(index(n, (0, 0, n, j)))))
                .collect();
            RationalMatrix::from_columns(t.dim(n), &cols)
        })
        .collect();
    let u = AlgebraMorphism::new("u", hx.clone(), t.clone(), u_maps)?;
    let v = AlgebraMorphism::new("v", he.clone(), t.clone(), v_maps)?;
    Ok((t, u, v))
}

/// One nonzero bigraded dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedEntry {
    pub bar_degree: i64,
    pub tensor_degree: usize,
    pub dim: usize,
}

/// Positive-bar-degree vanishing part of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingRecord {
    pub holds: bool,
    pub bigraded: Vec<BigradedEntry>,
}

/// Image of one bar cohomology class under `θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassImage {
    pub total_degree: usize,
    pub class: String,
    pub image: String,
}

/// The bar-degree-zero projection `θ` onto `H_X ⊗_{H_B} H_E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionRecord {
    pub target: String,
    pub chain_map: bool,
    pub cohomology_isomorphism_up_to: usize,
    pub multiplicative_on_representatives: bool,
    pub class_images: Vec<ClassImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub total_degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRecord {
    pub left: String,
    pub right: String,
    pub product: String,
}

/// Cohomology algebra of the pull-back, as computed through `θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraRecord {
    pub valid_up_to: usize,
    pub degrees: Vec<DegreeRecord>,
    pub products: Vec<ProductRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub left: String,
    pub middle: String,
    pub right: String,
    pub f: String,
    pub g: String,
}

/// Machine-checkable record that the pull-back modelled by a cohomology
/// triple is formal. Serialize with [`FormalityCertificate::to_json`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalityCertificate {
    pub kind: String,
    pub assumption: String,
    pub triple: TripleRecord,
    pub max_degree: usize,
    pub valid_up_to: usize,
    pub freeness: FreeModuleReport,
    pub vanishing: VanishingRecord,
    pub projection: ProjectionRecord,
    pub algebra: AlgebraRecord,
}

impl FormalityCertificate {
    /// Pretty JSON; identical inputs give byte-identical output.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }
}

const ASSUMPTION: &str = "the input triple of cohomology algebras and maps is a compatibly formal model of the \
pull-back square; this is asserted by the user and not verified";

fn internal(msg: String) -> Error {
    Error::Consistency(msg)
}

/// Certifies formality of the pull-back modelled by a cohomology triple on
/// the window of top degree `top`.
///
/// Fails with [`Error::NotFree`] when `H_E` is not a free `H_B`-module in
/// the window, and with [`Error::VanishingFailed`] or
/// [`Error::Consistency`] when a step that freeness guarantees does not
/// hold, which points at an internal error.
pub fn formality_certificate(triple: &BarTriple, top: usize) -> Result<FormalityCertificate, Error> {
    for alg in [&triple.left, &triple.middle, &triple.right] {
        if let Some(degree) = (0..alg.top()).find(|&n| !alg.diff(n).expect("below top").is_zero()) {
            return Err(Error::NonzeroDifferential {
                name: alg.name().to_string(),
                degree,
            });
        }
    }
    let freeness = check_free_module(&triple.g, top);
    if let Some(w) = &freeness.witness {
        return Err(Error::NotFree(w.clone()));
    }
    let window = BarWindow::build(triple.clone(), top)?;
    let tor = bar_cohomology(&window)?;
    if let Some((bar_degree, tensor_degree)) = first_positive_class(&tor) {
        return Err(Error::VanishingFailed {
            bar_degree,
            tensor_degree,
        });
    }
    let bigraded = tor
        .bigraded_dims()
        .expect("cohomology triple")
        .iter()
        .map(|(&(bar_degree, tensor_degree), &dim)| BigradedEntry {
            bar_degree,
            tensor_degree,
            dim,
        })
        .collect();

    let (t, u, v) = tensor_over_base(triple)?;
    let theta = Theta::new(triple, u, v)?;
    if let Some(n) = theta.chain_map_failure(&window) {
        return Err(internal(format!("θ is not a chain map in degree {n}")));
    }
    let valid = tor.valid_up_to();
    let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(valid + 1);
    let mut class_images = Vec::new();
    for n in 0..=valid {
        let m = theta.matrix(&window, n);
        let imgs: Vec<SparseVec> = (0..tor.total_dim(n))
            .map(|i| m.apply(tor.representative(n, i)))
            .collect();
        if imgs.len() != t.dim(n) || RationalMatrix::from_columns(t.dim(n), &imgs).rank() != t.dim(n) {
            return Err(internal(format!("θ is not a cohomology isomorphism in degree {n}")));
        }
        for (i, img) in imgs.iter().enumerate() {
            class_images.push(ClassImage {
                total_degree: n,
                class: tor.classes(n)[i].label.clone(),
                image: t.render(n, img),
            });
        }
        images.push(imgs);
    }
    for (&(p, i, q, j), constants) in tor.products() {
        let direct = t.multiply(p, &images[p][i], q, &images[q][j]).expect("in window");
        let mut via_classes = SparseVec::new();
        for (k, c) in constants.iter() {
            via_classes.add_scaled(&images[p + q][k], c);
        }
        let prod = window.product_vectors(p, tor.representative(p, i), q, tor.representative(q, j))?;
        let on_reps = theta.matrix(&window, p + q).apply(&prod);
        if direct != via_classes || direct != on_reps {
            return Err(internal(format!(
                "θ is not multiplicative on classes ({p},{i}) and ({q},{j})"
            )));
        }
    }

    let degrees = (0..=valid)
        .map(|n| DegreeRecord {
            total_degree: n,
            dim: t.dim(n),
            basis: t.labels(n).to_vec(),
        })
        .collect();
    let mut products = Vec::new();
    for p in 1..=valid {
        for q in p..=valid - p {
            for i in 0..t.dim(p) {
                for j in 0..t.dim(q) {
                    if p == q && j < i {
                        continue;
                    }
                    let prod = t.basis_product(p, i, q, j).expect("in window");
                    products.push(ProductRecord {
                        left: t.label(p, i).to_string(),
                        right: t.label(q, j).to_string(),
                        product: t.render(p + q, prod),
                    });
                }
            }
        }
    }
    Ok(FormalityCertificate {
        kind: "cdga-bar formality certificate".to_string(),
        assumption: ASSUMPTION.to_string(),
        triple: TripleRecord {
            left: triple.left.name().to_string(),
            middle: triple.middle.name().to_string(),
            right: triple.right.name().to_string(),
            f: triple.f.name().to_string(),
            g: triple.g.name().to_string(),
        },
        max_degree: top,
        valid_up_to: valid,
        freeness,
        vanishing: VanishingRecord { holds: true, bigraded },
        projection: ProjectionRecord {
            target: t.name().to_string(),
            chain_map: true,
            cohomology_isomorphism_up_to: valid,
            multiplicative_on_representatives: true,
            class_images,
        },
        algebra: AlgebraRecord {
            valid_up_to: valid,
            degrees,
            products,
        },
    })
}
