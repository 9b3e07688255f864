//! Finite-dimensional Hopf algebras by structure constants.
//!
//! A [`HopfAlgebra`] stores the multiplication, unit, comultiplication,
//! counit, and antipode of a finite-dimensional Hopf algebra as sparse
//! tensors over an exact base field, together with its two-sided integral h
//! and dual integral φ, normalized so that ε(h) = φ(1) = dim H. Construction
//! verifies every axiom and rejects algebras that are not semisimple and
//! cosemisimple over the chosen ring (in particular, the dimension must be
//! invertible).
//!
//! The dimension's formal square root δ, with δ² = dim H, enters through
//! [`HopfAlgebra::delta_power`]; the sign choice for δ is a constructor
//! parameter that no final invariant may depend on.

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::scalars::{BaseRing, BaseScalar, DeltaScalar};
use crate::tensor::{contract_network, SparseTensor};

/// Which square root of the dimension the symbol δ denotes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DeltaSign {
    #[default]
    Positive,
    Negative,
}

/// Raw structure-constant data for a Hopf algebra, prior to validation.
///
/// Tensor conventions, with basis elements e_0, ..., e_{dim-1}:
/// * `mult` has legs (a, b, c) with entry the coefficient of e_c in e_a·e_b;
/// * `comult` has legs (a, b, c) with entry the coefficient of e_b ⊗ e_c in Δ(e_a);
/// * `unit` and `counit` are 1-leg tensors;
/// * `antipode` has legs (a, b) with entry the coefficient of e_b in S(e_a).
#[derive(Clone, Debug)]
pub struct HopfData {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub ring: BaseRing,
    pub mult: SparseTensor,
    pub unit: SparseTensor,
    pub comult: SparseTensor,
    pub counit: SparseTensor,
    pub antipode: SparseTensor,
}

/// One named verification with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool) -> Check {
        Check {
            name: name.into(),
            pass,
        }
    }
}

/// Results of running a family of named checks.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check::new(name, pass));
    }
}

impl HopfData {
    /// The group algebra k[G]: basis = group elements, Δ(g) = g ⊗ g,
    /// ε(g) = 1, S(g) = g⁻¹.
    pub fn group_algebra(table: &GroupTable, ring: BaseRing) -> HopfData {
        let n = table.order();
        let nu = n as u64;
        let one = || DeltaScalar::one(ring, nu);
        let mut mult = SparseTensor::zeros(vec![n as u32, n as u32, n as u32], ring, nu);
        for a in 0..n {
            for b in 0..n {
                mult.set(vec![a as u32, b as u32, table.mul(a, b) as u32], one());
            }
        }
        let mut comult = SparseTensor::zeros(vec![n as u32, n as u32, n as u32], ring, nu);
        let mut counit = SparseTensor::zeros(vec![n as u32], ring, nu);
        let mut antipode = SparseTensor::zeros(vec![n as u32, n as u32], ring, nu);
        for g in 0..n {
            comult.set(vec![g as u32, g as u32, g as u32], one());
            counit.set(vec![g as u32], one());
            antipode.set(vec![g as u32, table.inv(g) as u32], one());
        }
        let mut unit = SparseTensor::zeros(vec![n as u32], ring, nu);
        unit.set(vec![table.identity() as u32], one());
        HopfData {
            name: format!("{ring}[{}]", table.name()),
            dim: n,
            basis: table.element_names().to_vec(),
            ring,
            mult,
            unit,
            comult,
            counit,
            antipode,
        }
    }

    /// Structure constants of the dual Hopf algebra, by transposition.
    pub fn dual(&self) -> HopfData {
        // Dual mult (a,b,c) = comult (c,a,b); dual comult (a,b,c) = mult (b,c,a).
        // permute_legs places old leg j at new position σ[j].
        let to_mult = |t: &SparseTensor| t.permute_legs(&[2, 0, 1]).expect("3-leg permute");
        let to_comult = |t: &SparseTensor| t.permute_legs(&[1, 2, 0]).expect("3-leg permute");
        HopfData {
            name: if let Some(inner) = self.name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
                inner.to_string()
            } else {
                format!("dual({})", self.name)
            },
            dim: self.dim,
            basis: self.basis.clone(),
            ring: self.ring,
            mult: to_mult(&self.comult),
            unit: self.counit.clone(),
            comult: to_comult(&self.mult),
            counit: self.unit.clone(),
            antipode: self.antipode.transposed().expect("antipode is 2-leg"),
        }
    }

    /// Reads the JSON structure-constant format:
    /// `{"name"?, "dim", "basis"?, "base_ring": "Q" | {"Fp": p},
    ///   "mult": [[a,b,c,"coeff"],...], "comult": [[a,b,c,"coeff"],...],
    ///   "unit": ["coeff",...], "counit": ["coeff",...],
    ///   "antipode": [[a,b,"coeff"],...]}`.
    pub fn from_json(text: &str) -> Result<HopfData> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("Hopf algebra JSON must be an object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Parse("missing or bad \"dim\"".into()))? as usize;
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let ring = match obj.get("base_ring") {
            None => BaseRing::Q,
            Some(serde_json::Value::String(s)) if s == "Q" => BaseRing::Q,
            Some(serde_json::Value::Object(m)) => {
                let p = m
                    .get("Fp")
                    .and_then(|p| p.as_u64())
                    .ok_or_else(|| Error::Parse("bad \"base_ring\": expected {\"Fp\": p}".into()))?;
                if !crate::scalars::is_prime_u64(p) {
                    return Err(Error::Invalid(format!("base ring modulus {p} is not prime")));
                }
                BaseRing::Fp(p)
            }
            Some(other) => {
                return Err(Error::Parse(format!(
                    "bad \"base_ring\" {other}: expected \"Q\" or {{\"Fp\": p}}"
                )))
            }
        };
        let nu = dim as u64;
        let name = obj
            .get("name")
            .and_then(|s| s.as_str())
            .unwrap_or("custom")
            .to_string();
        let basis = match obj.get("basis") {
            None => (0..dim).map(|i| format!("e{i}")).collect(),
            Some(serde_json::Value::Array(items)) => {
                if items.len() != dim {
                    return Err(Error::Parse("\"basis\" length must equal dim".into()));
                }
                items
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .map(|s| s.to_string())
                            .ok_or_else(|| Error::Parse("basis labels must be strings".into()))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Some(_) => return Err(Error::Parse("\"basis\" must be an array".into())),
        };

        let idx = |v: &serde_json::Value, what: &str| -> Result<u32> {
            let i = v
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("{what}: index must be an integer")))?;
            if i >= nu {
                return Err(Error::Invalid(format!("{what}: index {i} out of range for dim {dim}")));
            }
            Ok(i as u32)
        };
        let coeff = |v: &serde_json::Value, what: &str| -> Result<DeltaScalar> {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("{what}: coefficient must be a string")))?;
            Ok(DeltaScalar::from_base(
                BaseScalar::parse_in_ring(s, ring)?,
                nu,
            ))
        };
        let sparse = |key: &str, arity: usize| -> Result<SparseTensor> {
            let rows = obj
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse(format!("missing or bad {key:?}")))?;
            let mut t = SparseTensor::zeros(vec![dim as u32; arity], ring, nu);
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::Parse(format!("{key}: rows must be arrays")))?;
                if row.len() != arity + 1 {
                    return Err(Error::Parse(format!(
                        "{key}: rows must be {arity} indices plus a coefficient"
                    )));
                }
                let mut index = Vec::with_capacity(arity);
                for item in &row[..arity] {
                    index.push(idx(item, key)?);
                }
                let c = coeff(&row[arity], key)?;
                let prior = t.get(&index);
                t.set(index, prior.add(&c));
            }
            Ok(t)
        };
        let dense1 = |key: &str| -> Result<SparseTensor> {
            let items = obj
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse(format!("missing or bad {key:?}")))?;
            if items.len() != dim {
                return Err(Error::Parse(format!("{key}: expected {dim} coefficients")));
            }
            let mut t = SparseTensor::zeros(vec![dim as u32], ring, nu);
            for (i, item) in items.iter().enumerate() {
                t.set(vec![i as u32], coeff(item, key)?);
            }
            Ok(t)
        };

        Ok(HopfData {
            name,
            dim,
            basis,
            ring,
            mult: sparse("mult", 3)?,
            unit: dense1("unit")?,
            comult: sparse("comult", 3)?,
            counit: dense1("counit")?,
            antipode: sparse("antipode", 2)?,
        })
    }

    fn structural_check(&self) -> Result<()> {
        let d = self.dim as u32;
        let shape: &[(&str, &SparseTensor, &[u32])] = &[
            ("mult", &self.mult, &[d, d, d]),
            ("unit", &self.unit, &[d]),
            ("comult", &self.comult, &[d, d, d]),
            ("counit", &self.counit, &[d]),
            ("antipode", &self.antipode, &[d, d]),
        ];
        for (name, tensor, dims) in shape {
            if tensor.dims() != *dims {
                return Err(Error::Invalid(format!(
                    "{name} tensor has legs {:?}, expected {dims:?}",
                    tensor.dims()
                )));
            }
            if tensor.ring() != self.ring || tensor.modulus_square() != self.dim as u64 {
                return Err(Error::Invalid(format!("{name} tensor has wrong scalar context")));
            }
            if tensor.iter().any(|(_, v)| !v.delta_part().is_zero()) {
                return Err(Error::Invalid(format!(
                    "{name} tensor has δ-dependent entries; structure constants must lie in the base field"
                )));
            }
        }
        if self.basis.len() != self.dim {
            return Err(Error::Invalid("basis label count must equal dim".into()));
        }
        Ok(())
    }

    /// Verifies the algebra, coalgebra, bialgebra, and antipode laws, plus
    /// involutivity of the antipode. Structural problems are errors; law
    /// violations are reported as failed checks.
    pub fn axiom_report(&self) -> Result<CheckReport> {
        self.structural_check()?;
        let d = self.dim as u32;
        let id = SparseTensor::identity(d, self.ring, self.dim as u64);
        let m = &self.mult;
        let c = &self.comult;
        let s = &self.antipode;
        let mut report = CheckReport::default();

        // (e_a e_b) e_c = e_a (e_b e_c)
        let assoc_l = m.contract(m, &[(2, 0)])?;
        let assoc_r = m.contract(m, &[(2, 1)])?.permute_legs(&[1, 2, 0, 3])?;
        report.push("multiplication is associative", assoc_l == assoc_r);

        report.push("1 is a left unit", self.unit.contract(m, &[(0, 0)])? == id);
        report.push("1 is a right unit", self.unit.contract(m, &[(0, 1)])? == id);

        // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ
        let coassoc_l = c.contract(c, &[(1, 0)])?.permute_legs(&[0, 3, 1, 2])?;
        let coassoc_r = c.contract(c, &[(2, 0)])?;
        report.push("comultiplication is coassociative", coassoc_l == coassoc_r);

        report.push("ε is a left counit", c.contract(&self.counit, &[(1, 0)])? == id);
        report.push("ε is a right counit", c.contract(&self.counit, &[(2, 0)])? == id);

        // Δ(xy) = Δ(x)Δ(y)
        let delta_of_product = m.contract(c, &[(2, 0)])?;
        let product_of_deltas = {
            let x = c.contract(m, &[(1, 0)])?; // legs (a, q, r, x)
            let y = x.contract(m, &[(1, 0)])?; // legs (a, r, x, s, y)
            y.contract(c, &[(1, 1), (3, 2)])? // legs (a, x, y, b)
                .permute_legs(&[0, 2, 3, 1])?
        };
        report.push(
            "comultiplication is an algebra map",
            delta_of_product == product_of_deltas,
        );

        report.push(
            "counit is an algebra map",
            m.contract(&self.counit, &[(2, 0)])? == self.counit.outer(&self.counit)?,
        );
        report.push(
            "comultiplication preserves the unit",
            self.unit.contract(c, &[(0, 0)])? == self.unit.outer(&self.unit)?,
        );
        report.push(
            "counit of the unit is 1",
            self.unit.contract(&self.counit, &[(0, 0)])?.as_scalar()?
                == DeltaScalar::one(self.ring, self.dim as u64),
        );

        // μ(S ⊗ id)Δ = ηε = μ(id ⊗ S)Δ
        let eta_eps = self.counit.outer(&self.unit)?;
        let left = c
            .contract(s, &[(1, 0)])? // legs (a, q, b')
            .contract(m, &[(2, 0), (1, 1)])?; // legs (a, d)
        report.push("antipode law, S on the left factor", left == eta_eps);
        let right = c
            .contract(s, &[(2, 0)])? // legs (a, q, b')
            .contract(m, &[(1, 0), (2, 1)])?; // legs (a, d)
        report.push("antipode law, S on the right factor", right == eta_eps);

        report.push("antipode is an involution", s.contract(s, &[(1, 0)])? == id);
        Ok(report)
    }
}

/// An element of the algebra, as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element(SparseTensor);

/// An element of the dual algebra (a functional), as a coefficient covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement(SparseTensor);

impl Element {
    pub fn tensor(&self) -> &SparseTensor {
        &self.0
    }

    pub fn into_tensor(self) -> SparseTensor {
        self.0
    }
}

impl DualElement {
    pub fn tensor(&self) -> &SparseTensor {
        &self.0
    }

    pub fn into_tensor(self) -> SparseTensor {
        self.0
    }
}

/// A validated Hopf algebra with cached integrals.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    data: HopfData,
    delta_sign: DeltaSign,
    integral: SparseTensor,
    dual_integral: SparseTensor,
}

impl HopfAlgebra {
    /// Validates the data and computes the normalized two-sided integrals.
    pub fn new(data: HopfData) -> Result<HopfAlgebra> {
        HopfAlgebra::with_delta_sign(data, DeltaSign::Positive)
    }

    /// As [`HopfAlgebra::new`], choosing which square root of dim H the
    /// symbol δ denotes. No invariant value may depend on this choice.
    pub fn with_delta_sign(data: HopfData, delta_sign: DeltaSign) -> Result<HopfAlgebra> {
        let report = data.axiom_report()?;
        if !report.all_pass() {
            return Err(Error::Invalid(format!(
                "{}: Hopf axioms fail: {}",
                data.name,
                report.failures().join("; ")
            )));
        }
        if let BaseRing::Fp(p) = data.ring {
            if data.dim as u64 % p == 0 {
                return Err(Error::Invalid(format!(
                    "{}: dimension {} vanishes in F{p}, so the algebra is not \
                     semisimple over this base ring",
                    data.name, data.dim
                )));
            }
        }
        let integral = solve_two_sided_integral(&data)?;
        let dual_integral = solve_two_sided_integral(&data.dual())?;
        let algebra = HopfAlgebra {
            data,
            delta_sign,
            integral,
            dual_integral,
        };
        algebra.verify_integral_identities()?;
        Ok(algebra)
    }

    fn verify_integral_identities(&self) -> Result<()> {
        let n_scalar = DeltaScalar::from_i64(self.data.dim as i64, self.ring(), self.modulus());
        let pairing = self
            .dual_integral
            .contract(&self.integral, &[(0, 0)])?
            .as_scalar()?;
        if pairing != n_scalar {
            return Err(Error::Invalid(format!(
                "{}: φ(h) = {pairing}, expected dim H = {}",
                self.name(),
                self.data.dim
            )));
        }
        // S fixes both integrals.
        let s_h = self.integral.contract(&self.data.antipode, &[(0, 0)])?;
        if s_h != self.integral {
            return Err(Error::Invalid(format!("{}: S(h) ≠ h", self.name())));
        }
        let s_phi = self
            .dual_integral
            .contract(&self.data.antipode.transposed()?, &[(0, 0)])?;
        if s_phi != self.dual_integral {
            return Err(Error::Invalid(format!("{}: S(φ) ≠ φ", self.name())));
        }
        // h² = (dim H)·h, and dually.
        let h_sq = self.multiply_vectors(&self.integral, &self.integral)?;
        if h_sq != self.integral.scale(&n_scalar) {
            return Err(Error::Invalid(format!("{}: h·h ≠ δ²·h", self.name())));
        }
        let dual_data = self.data.dual();
        let phi_sq = multiply_in(&dual_data, &self.dual_integral, &self.dual_integral)?;
        if phi_sq != self.dual_integral.scale(&n_scalar) {
            return Err(Error::Invalid(format!("{}: φ·φ ≠ δ²·φ", self.name())));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    /// δ² as an integer: the dimension of the algebra.
    pub fn modulus(&self) -> u64 {
        self.data.dim as u64
    }

    pub fn ring(&self) -> BaseRing {
        self.data.ring
    }

    pub fn basis(&self) -> &[String] {
        &self.data.basis
    }

    pub fn delta_sign(&self) -> DeltaSign {
        self.delta_sign
    }

    pub fn data(&self) -> &HopfData {
        &self.data
    }

    pub fn mult_tensor(&self) -> &SparseTensor {
        &self.data.mult
    }

    pub fn comult_tensor(&self) -> &SparseTensor {
        &self.data.comult
    }

    pub fn unit_tensor(&self) -> &SparseTensor {
        &self.data.unit
    }

    pub fn counit_tensor(&self) -> &SparseTensor {
        &self.data.counit
    }

    pub fn antipode_matrix(&self) -> &SparseTensor {
        &self.data.antipode
    }

    /// The normalized two-sided integral h, with ε(h) = dim H.
    pub fn integral_tensor(&self) -> &SparseTensor {
        &self.integral
    }

    /// The normalized two-sided dual integral φ, with φ(1) = dim H.
    pub fn dual_integral_tensor(&self) -> &SparseTensor {
        &self.dual_integral
    }

    /// δ^k as a scalar, honoring the chosen sign of δ.
    pub fn delta_power(&self, k: i64) -> Result<DeltaScalar> {
        let value = crate::scalars::delta_pow(k, self.modulus(), self.ring())?;
        Ok(match self.delta_sign {
            DeltaSign::Positive => value,
            DeltaSign::Negative if k.rem_euclid(2) == 1 => value.neg(),
            DeltaSign::Negative => value,
        })
    }

    /// The dual Hopf algebra. Integrals swap roles: the integral of the dual
    /// is φ and its dual integral is h.
    pub fn dual(&self) -> HopfAlgebra {
        HopfAlgebra {
            data: self.data.dual(),
            delta_sign: self.delta_sign,
            integral: self.dual_integral.clone(),
            dual_integral: self.integral.clone(),
        }
    }

    /// Re-runs all axiom checks on the validated algebra.
    pub fn check_axioms(&self) -> CheckReport {
        self.data
            .axiom_report()
            .expect("validated algebra stays structurally sound")
    }

    // ----- elements -----

    pub fn element(&self, coeffs: Vec<DeltaScalar>) -> Result<Element> {
        Ok(Element(self.vector_from(coeffs)?))
    }

    pub fn dual_element(&self, coeffs: Vec<DeltaScalar>) -> Result<DualElement> {
        Ok(DualElement(self.vector_from(coeffs)?))
    }

    fn vector_from(&self, coeffs: Vec<DeltaScalar>) -> Result<SparseTensor> {
        if coeffs.len() != self.dim() {
            return Err(Error::Invalid(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        let mut t = SparseTensor::zeros(vec![self.dim() as u32], self.ring(), self.modulus());
        for (i, v) in coeffs.into_iter().enumerate() {
            t.set(vec![i as u32], v);
        }
        Ok(t)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut t = SparseTensor::zeros(vec![self.dim() as u32], self.ring(), self.modulus());
        t.set(vec![i as u32], DeltaScalar::one(self.ring(), self.modulus()));
        Element(t)
    }

    pub fn unit_element(&self) -> Element {
        Element(self.data.unit.clone())
    }

    pub fn integral_element(&self) -> Element {
        Element(self.integral.clone())
    }

    pub fn dual_integral_element(&self) -> DualElement {
        DualElement(self.dual_integral.clone())
    }

    /// A random element with small integer coefficients, for property tests.
    pub fn random_element(&self, rng: &mut impl Rng) -> Element {
        let coeffs = (0..self.dim())
            .map(|_| DeltaScalar::from_i64(rng.random_range(-3i64..=3), self.ring(), self.modulus()))
            .collect();
        self.element(coeffs).expect("lengths match")
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(Element(self.multiply_vectors(&x.0, &y.0)?))
    }

    fn multiply_vectors(&self, x: &SparseTensor, y: &SparseTensor) -> Result<SparseTensor> {
        multiply_in(&self.data, x, y)
    }

    pub fn antipode_of(&self, x: &Element) -> Result<Element> {
        Ok(Element(x.0.contract(&self.data.antipode, &[(0, 0)])?))
    }

    pub fn counit_of(&self, x: &Element) -> Result<DeltaScalar> {
        self.data.counit.contract(&x.0, &[(0, 0)])?.as_scalar()
    }

    /// The canonical pairing ⟨ψ, x⟩.
    pub fn pair(&self, psi: &DualElement, x: &Element) -> Result<DeltaScalar> {
        psi.0.contract(&x.0, &[(0, 0)])?.as_scalar()
    }

    /// The k-fold comultiplication of x as a k-leg tensor. k = 0 gives the
    /// 0-leg scalar ε(x); coassociativity makes the bracketing irrelevant.
    pub fn sweedler_tensor(&self, x: &SparseTensor, k: usize) -> Result<SparseTensor> {
        if x.dims() != [self.dim() as u32] {
            return Err(Error::Math("Sweedler power of a non-vector".into()));
        }
        if k == 0 {
            let eps = self.data.counit.contract(x, &[(0, 0)])?;
            return Ok(eps);
        }
        let mut t = x.clone();
        for _ in 1..k {
            let last = t.num_legs() - 1;
            t = t.contract(&self.data.comult, &[(last, 0)])?;
        }
        Ok(t)
    }

    /// Sweedler power of an element.
    pub fn sweedler_power(&self, x: &Element, k: usize) -> Result<SparseTensor> {
        self.sweedler_tensor(&x.0, k)
    }

    /// μ ∘ (id ⊗ S) as a 3-leg tensor with legs (a, b, c): the coefficient
    /// of e_c in e_a · S(e_b).
    pub fn mult_antipode_tensor(&self) -> Result<SparseTensor> {
        self.data
            .antipode
            .contract(&self.data.mult, &[(1, 1)])? // legs (b, a, c)
            .permute_legs(&[1, 0, 2])
    }

    /// Applies the antipode to one algebra leg of a tensor over this
    /// algebra's coefficients.
    pub fn antipode_on_leg(&self, t: &SparseTensor, leg: usize) -> Result<SparseTensor> {
        t.map_leg(leg, &self.data.antipode.transposed()?)
    }

    /// The split integral h₁ ⊗ Sh₂ as a 2-leg tensor.
    pub fn split_integral(&self) -> Result<SparseTensor> {
        let t = self.sweedler_tensor(&self.integral, 2)?;
        self.antipode_on_leg(&t, 1)
    }

    /// The Fourier matrix with legs (a, b): the coefficient of the b-th dual
    /// basis vector in F(e_a) = δ⁻¹ φ₁(e_a) φ₂, so F(e_a)(e_b) = δ⁻¹ φ(e_a e_b).
    pub fn fourier_matrix(&self) -> Result<SparseTensor> {
        let phi_of_products = self.data.mult.contract(&self.dual_integral, &[(2, 0)])?;
        Ok(phi_of_products.scale(&self.delta_power(-1)?))
    }

    /// The Fourier transform F(x) = δ⁻¹ φ₁(x) φ₂ of an element.
    pub fn fourier(&self, x: &Element) -> Result<DualElement> {
        Ok(DualElement(x.0.contract(&self.fourier_matrix()?, &[(0, 0)])?))
    }

    /// Applies a linear map given by a matrix with legs (in, out) to one leg
    /// of a tensor, keeping the leg position.
    pub fn apply_map_to_leg(
        t: &SparseTensor,
        leg: usize,
        matrix_in_out: &SparseTensor,
    ) -> Result<SparseTensor> {
        t.map_leg(leg, &matrix_in_out.transposed()?)
    }
}

fn multiply_in(data: &HopfData, x: &SparseTensor, y: &SparseTensor) -> Result<SparseTensor> {
    let partial = x.contract(&data.mult, &[(0, 0)])?; // legs (b, c)
    y.contract(&partial, &[(0, 0)]) // legs (c)
}

/// Solves for the two-sided integral of the algebra described by `data`,
/// normalized so the counit takes it to dim H. Errors if the left-integral
/// space is not 1-dimensional, if the counit vanishes on it (the algebra is
/// not semisimple over the base ring), or if the solution fails two-sidedness.
fn solve_two_sided_integral(data: &HopfData) -> Result<SparseTensor> {
    let n = data.dim;
    let ring = data.ring;
    // Rows of the homogeneous system over (a, c): Σ_b (m[a,b,c] − ε_a δ_{bc}) h_b = 0.
    let mut rows: Vec<Vec<BaseScalar>> = Vec::with_capacity(n * n);
    let eps: Vec<BaseScalar> = (0..n)
        .map(|a| data.counit.get(&[a as u32]).base_part().clone())
        .collect();
    for a in 0..n {
        for cc in 0..n {
            let mut row = vec![BaseScalar::zero(ring); n];
            for b in 0..n {
                let m = data.mult.get(&[a as u32, b as u32, cc as u32]);
                let mut v = m.base_part().clone();
                if b == cc {
                    v = v.sub(&eps[a]);
                }
                row[b] = v;
            }
            rows.push(row);
        }
    }
    let null = nullspace(rows, n)?;
    if null.len() != 1 {
        return Err(Error::Invalid(format!(
            "{}: left integral space has dimension {}, expected 1",
            data.name,
            null.len()
        )));
    }
    let h = &null[0];
    let eps_h = (0..n).fold(BaseScalar::zero(ring), |acc, b| {
        acc.add(&eps[b].mul(&h[b]))
    });
    if eps_h.is_zero() {
        return Err(Error::Invalid(format!(
            "{}: counit vanishes on the integral; the algebra is not semisimple \
             over this base ring",
            data.name
        )));
    }
    let n_scalar = BaseScalar::from_u64(n as u64, ring);
    let scale = n_scalar.div(&eps_h)?;
    let nu = n as u64;
    let mut out = SparseTensor::zeros(vec![n as u32], ring, nu);
    for (b, v) in h.iter().enumerate() {
        out.set(
            vec![b as u32],
            DeltaScalar::from_base(v.mul(&scale), nu),
        );
    }
    // Verify two-sidedness: e_a h = ε(e_a) h = h e_a for all basis vectors.
    for a in 0..n {
        let mut basis_vec = SparseTensor::zeros(vec![n as u32], ring, nu);
        basis_vec.set(vec![a as u32], DeltaScalar::one(ring, nu));
        let left = multiply_in(data, &basis_vec, &out)?;
        let right = multiply_in(data, &out, &basis_vec)?;
        let expected = out.scale(&DeltaScalar::from_base(eps[a].clone(), nu));
        if left != expected || right != expected {
            return Err(Error::Invalid(format!(
                "{}: integral is not two-sided",
                data.name
            )));
        }
    }
    Ok(out)
}

/// Basis of the nullspace of a matrix over the base field, by exact
/// Gauss-Jordan elimination.
fn nullspace(mut rows: Vec<Vec<BaseScalar>>, ncols: usize) -> Result<Vec<Vec<BaseScalar>>> {
    let ring = rows
        .first()
        .and_then(|r| r.first())
        .map(|v| v.ring())
        .unwrap_or(BaseRing::Q);
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inverse()?;
        for v in rows[rank].iter_mut() {
            *v = v.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for cc in 0..ncols {
                    let delta = rows[rank][cc].mul(&factor);
                    rows[r][cc] = rows[r][cc].sub(&delta);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![BaseScalar::zero(ring); ncols];
        v[fc] = BaseScalar::one(ring);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = rows[r][fc].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Runs the full identity suite on an algebra: Fourier transform laws, the
/// split-integral identities, quasi-basis property, and traciality, with
/// `random_count` random elements drawn from `rng` where sampling is needed.
pub fn identity_suite(
    h: &HopfAlgebra,
    rng: &mut impl Rng,
    random_count: usize,
) -> Result<CheckReport> {
    let mut report = h.check_axioms();
    let n_scalar = DeltaScalar::from_i64(h.dim() as i64, h.ring(), h.modulus());
    let dual = h.dual();

    // Integral normalization and absorption.
    let eps_h = h.counit_of(&h.integral_element())?;
    report.push("ε(h) = dim H", eps_h == n_scalar);
    let phi_one = h.pair(&h.dual_integral_element(), &h.unit_element())?;
    report.push("φ(1) = dim H", phi_one == n_scalar);
    let phi_h = h.pair(&h.dual_integral_element(), &h.integral_element())?;
    report.push("φ(h) = dim H", phi_h == n_scalar);
    report.push(
        "S(h) = h",
        h.antipode_of(&h.integral_element())? == h.integral_element(),
    );
    let h_sq = h.multiply(&h.integral_element(), &h.integral_element())?;
    report.push(
        "h·h = δ²·h",
        h_sq.tensor() == &h.integral_tensor().scale(&n_scalar),
    );

    // Fourier transform laws.
    let fm = h.fourier_matrix()?;
    let fm_dual = dual.fourier_matrix()?;
    let ff = fm.contract(&fm_dual, &[(1, 0)])?;
    report.push("F∘F = S", ff == *h.antipode_matrix());
    let f_after_s = h.antipode_matrix().contract(&fm, &[(1, 0)])?;
    let s_after_f = fm.contract(h.antipode_matrix(), &[(1, 1)])?;
    report.push("F∘S = S∘F", f_after_s == s_after_f);
    let f_one = h.fourier(&h.unit_element())?;
    report.push(
        "F(1) = δ⁻¹·φ",
        f_one.tensor() == &h.dual_integral_tensor().scale(&h.delta_power(-1)?),
    );
    let f_h = h.fourier(&h.integral_element())?;
    report.push(
        "F(h) = δ·ε",
        f_h.tensor() == &h.counit_tensor().scale(&h.delta_power(1)?),
    );

    // The split integral and its symmetries.
    let c2 = h.split_integral()?;
    report.push(
        "h₁ ⊗ Sh₂ = Sh₂ ⊗ h₁",
        c2 == c2.permute_legs(&[1, 0])?,
    );
    let ff_c2 = {
        let one_leg = HopfAlgebra::apply_map_to_leg(&c2, 0, &fm)?;
        HopfAlgebra::apply_map_to_leg(&one_leg, 1, &fm)?
    };
    let dual_pair = dual.sweedler_tensor(dual.integral_tensor(), 2)?;
    report.push("(F ⊗ F)(h₁ ⊗ Sh₂) = φ₁ ⊗ φ₂", ff_c2 == dual_pair);

    // Quasi-basis property: (id ⊗ δ⁻²φ)((1 ⊗ x)·(h₁ ⊗ Sh₂)) = x.
    let mut quasi_ok = true;
    for _ in 0..random_count {
        let x = h.random_element(rng);
        let with_mult = c2.contract(h.mult_tensor(), &[(1, 1)])?; // legs (l1, a, c)
        let times_x = with_mult.contract(x.tensor(), &[(1, 0)])?; // legs (l1, c)
        let projected = times_x
            .contract(h.dual_integral_tensor(), &[(1, 0)])?
            .scale(&h.delta_power(-2)?);
        if &projected != x.tensor() {
            quasi_ok = false;
            break;
        }
    }
    report.push(
        "(id ⊗ δ⁻²φ)((1 ⊗ x)(h₁ ⊗ Sh₂)) = x",
        quasi_ok,
    );

    // h_k Sh_{k−1} ⊗ h_{k+1} Sh_{k−2} ⊗ ⋯ ⊗ h_{2k−2} Sh_1 = δ²·1^{⊗(k−1)}.
    for k in 2..=4usize {
        let t = h.sweedler_tensor(h.integral_tensor(), 2 * k - 2)?;
        let ms = h.mult_antipode_tensor()?;
        let mut tensors = vec![t];
        let mut edges = Vec::new();
        for j in 1..k {
            tensors.push(ms.clone());
            edges.push(((0usize, k - 2 + j), (j, 0usize)));
            edges.push(((0usize, k - 1 - j), (j, 1usize)));
        }
        let (result, labels) = contract_network(tensors, &edges)?;
        // Order the outputs by pair index j.
        let mut sigma = vec![0usize; labels.len()];
        for (pos, (tensor_idx, _)) in labels.iter().enumerate() {
            sigma[pos] = tensor_idx - 1;
        }
        let result = result.permute_legs(&sigma)?;
        let mut expected = SparseTensor::scalar(h.delta_power(2)?);
        for _ in 1..k {
            expected = expected.outer(h.unit_tensor())?;
        }
        report.push(
            format!("h_k Sh_(k−1) ⊗ ⋯ ⊗ h_(2k−2) Sh_1 = δ²·1^(k−1), k = {k}"),
            result == expected,
        );
    }

    // Traciality of φ and of h (as a functional on the dual).
    let mut trace_ok = true;
    let mut dual_trace_ok = true;
    for _ in 0..random_count.max(1) {
        let x = h.random_element(rng);
        let y = h.random_element(rng);
        let xy = h.multiply(&x, &y)?;
        let yx = h.multiply(&y, &x)?;
        if h.pair(&h.dual_integral_element(), &xy)? != h.pair(&h.dual_integral_element(), &yx)? {
            trace_ok = false;
        }
        let p = dual.random_element(rng);
        let q = dual.random_element(rng);
        let pq = dual.multiply(&p, &q)?;
        let qp = dual.multiply(&q, &p)?;
        if dual.pair(&dual.dual_integral_element(), &pq)?
            != dual.pair(&dual.dual_integral_element(), &qp)?
        {
            dual_trace_ok = false;
        }
    }
    report.push("φ(xy) = φ(yx)", trace_ok);
    report.push("h(ψχ) = h(χψ)", dual_trace_ok);

    Ok(report)
}

/// Built-in algebra catalog: group algebras of Z/m (m ≤ 12), S3, D4, Q8,
/// and their duals, over Q or a prime field.
///
/// Names: `ZmodGroupAlgebra(m)`, `S3GroupAlgebra`, `D4GroupAlgebra`,
/// `Q8GroupAlgebra`, optionally wrapped as `dual(...)`.
pub fn builtin_hopf(name: &str, ring: BaseRing) -> Result<HopfAlgebra> {
    let trimmed = name.trim();
    if let Some(inner) = trimmed.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        return Ok(builtin_hopf(inner, ring)?.dual());
    }
    let table = if let Some(arg) = trimmed
        .strip_prefix("ZmodGroupAlgebra(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let m: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad cyclic order in {name:?}")))?;
        if !(1..=12).contains(&m) {
            return Err(Error::Invalid(format!(
                "cyclic group order {m} outside the built-in range 1..=12"
            )));
        }
        GroupTable::cyclic(m)
    } else {
        match trimmed {
            "S3GroupAlgebra" => GroupTable::s3(),
            "D4GroupAlgebra" => GroupTable::d4(),
            "Q8GroupAlgebra" => GroupTable::q8(),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown Hopf algebra {name:?}; expected ZmodGroupAlgebra(m), \
                     S3GroupAlgebra, D4GroupAlgebra, Q8GroupAlgebra, or dual(...)"
                )))
            }
        }
    };
    HopfAlgebra::new(HopfData::group_algebra(&table, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q_group(table: &GroupTable) -> HopfAlgebra {
        HopfAlgebra::new(HopfData::group_algebra(table, BaseRing::Q)).unwrap()
    }

    #[test]
    fn group_algebras_pass_all_axioms() {
        for table in [GroupTable::cyclic(2), GroupTable::s3(), GroupTable::q8()] {
            let h = q_group(&table);
            assert!(h.check_axioms().all_pass(), "{}", h.name());
        }
    }

    #[test]
    fn corrupted_antipode_fails_the_antipode_axiom() {
        let mut data = HopfData::group_algebra(&GroupTable::cyclic(3), BaseRing::Q);
        // Replace S by the identity map; for Z/3 that is not an antipode.
        data.antipode = SparseTensor::identity(3, BaseRing::Q, 3);
        let report = data.axiom_report().unwrap();
        assert!(!report.all_pass());
        assert!(report
            .failures()
            .iter()
            .any(|f| f.contains("antipode law")));
        assert!(HopfAlgebra::new(data).is_err());
    }

    #[test]
    fn group_algebra_integral_is_the_sum_of_group_elements() {
        let h = q_group(&GroupTable::cyclic(4));
        let one = DeltaScalar::one(BaseRing::Q, 4);
        for g in 0..4 {
            assert_eq!(h.integral_tensor().get(&[g]), one);
        }
        assert_eq!(
            h.counit_of(&h.integral_element()).unwrap(),
            DeltaScalar::from_i64(4, BaseRing::Q, 4)
        );
    }

    #[test]
    fn group_algebra_dual_integral_detects_the_identity() {
        let h = q_group(&GroupTable::cyclic(2));
        // φ = n·(dual basis at the identity).
        assert_eq!(
            h.dual_integral_tensor().get(&[0]),
            DeltaScalar::from_i64(2, BaseRing::Q, 2)
        );
        assert_eq!(
            h.dual_integral_tensor().get(&[1]),
            DeltaScalar::zero(BaseRing::Q, 2)
        );
    }

    #[test]
    fn integral_fails_when_the_characteristic_divides_the_dimension() {
        let data = HopfData::group_algebra(&GroupTable::cyclic(2), BaseRing::Fp(2));
        match HopfAlgebra::new(data) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("semisimple")),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn prime_field_group_algebras_work_when_coprime() {
        let h = HopfAlgebra::new(HopfData::group_algebra(
            &GroupTable::cyclic(3),
            BaseRing::Fp(5),
        ))
        .unwrap();
        assert!(h.check_axioms().all_pass());
    }

    #[test]
    fn double_dual_restores_the_structure_constants() {
        let h = q_group(&GroupTable::s3());
        let dd = h.dual().dual();
        assert_eq!(dd.data().mult, h.data().mult);
        assert_eq!(dd.data().comult, h.data().comult);
        assert_eq!(dd.data().antipode, h.data().antipode);
        assert_eq!(dd.integral_tensor(), h.integral_tensor());
    }

    #[test]
    fn dual_of_cyclic_group_algebra_is_the_function_algebra() {
        let h = q_group(&GroupTable::cyclic(3)).dual();
        // Pointwise product: e^a · e^b = [a = b] e^a.
        let one = DeltaScalar::one(BaseRing::Q, 3);
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    let expected = if a == b && b == c { one.clone() } else { DeltaScalar::zero(BaseRing::Q, 3) };
                    assert_eq!(h.mult_tensor().get(&[a, b, c]), expected);
                }
            }
        }
        assert!(h.check_axioms().all_pass());
    }

    #[test]
    fn dual_integral_of_z2_solves_to_twice_the_identity_dual_vector() {
        // The integral of the dual algebra equals φ = 2·δ_e.
        let h = q_group(&GroupTable::cyclic(2));
        let dual = h.dual();
        assert_eq!(dual.integral_tensor(), h.dual_integral_tensor());
        assert_eq!(
            dual.integral_tensor().get(&[0]),
            DeltaScalar::from_i64(2, BaseRing::Q, 2)
        );
    }

    #[test]
    fn sweedler_power_of_group_integral_is_diagonal() {
        let h = q_group(&GroupTable::cyclic(2));
        let t = h.sweedler_tensor(h.integral_tensor(), 2).unwrap();
        let one = DeltaScalar::one(BaseRing::Q, 2);
        assert_eq!(t.get(&[0, 0]), one);
        assert_eq!(t.get(&[1, 1]), one);
        assert!(t.get(&[0, 1]).is_zero());
    }

    #[test]
    fn sweedler_power_zero_is_the_counit_value() {
        let h = q_group(&GroupTable::s3());
        let t = h.sweedler_tensor(h.integral_tensor(), 0).unwrap();
        assert_eq!(
            t.as_scalar().unwrap(),
            DeltaScalar::from_i64(6, BaseRing::Q, 6)
        );
    }

    #[test]
    fn dual_sweedler_counts_products_reaching_each_element() {
        // For the dual of a group algebra, (Δ₃ φ)(g₁,g₂,g₃) = n·[g₁g₂g₃ = e].
        let h = q_group(&GroupTable::cyclic(3)).dual();
        let t = h.sweedler_tensor(h.integral_tensor(), 3).unwrap();
        for g1 in 0..3u32 {
            for g2 in 0..3u32 {
                for g3 in 0..3u32 {
                    let expected = if (g1 + g2 + g3) % 3 == 0 {
                        DeltaScalar::from_i64(3, BaseRing::Q, 3)
                    } else {
                        DeltaScalar::zero(BaseRing::Q, 3)
                    };
                    assert_eq!(t.get(&[g1, g2, g3]), expected);
                }
            }
        }
    }

    #[test]
    fn fourier_laws_hold_for_the_catalog() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for table in [GroupTable::cyclic(3), GroupTable::s3()] {
            let h = q_group(&table);
            for algebra in [h.dual(), h] {
                let report = identity_suite(&algebra, &mut rng, 20).unwrap();
                assert!(
                    report.all_pass(),
                    "{}: failures {:?}",
                    algebra.name(),
                    report.failures()
                );
            }
        }
    }

    #[test]
    fn fourier_squared_is_antipode_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = q_group(&GroupTable::cyclic(3));
        let dual = h.dual();
        for _ in 0..10 {
            let x = h.random_element(&mut rng);
            let fx = h.fourier(&x).unwrap();
            let ffx = dual
                .fourier(&Element(fx.tensor().clone()))
                .unwrap();
            assert_eq!(ffx.tensor(), h.antipode_of(&x).unwrap().tensor());
        }
    }

    #[test]
    fn delta_sign_flips_odd_powers_only() {
        let data = HopfData::group_algebra(&GroupTable::cyclic(2), BaseRing::Q);
        let plus = HopfAlgebra::new(data.clone()).unwrap();
        let minus = HopfAlgebra::with_delta_sign(data, DeltaSign::Negative).unwrap();
        assert_eq!(plus.delta_power(2).unwrap(), minus.delta_power(2).unwrap());
        assert_eq!(
            plus.delta_power(1).unwrap(),
            minus.delta_power(1).unwrap().neg()
        );
        assert_eq!(
            plus.delta_power(-3).unwrap(),
            minus.delta_power(-3).unwrap().neg()
        );
    }

    #[test]
    fn builtin_names_resolve() {
        assert_eq!(builtin_hopf("ZmodGroupAlgebra(5)", BaseRing::Q).unwrap().dim(), 5);
        assert_eq!(builtin_hopf("S3GroupAlgebra", BaseRing::Q).unwrap().dim(), 6);
        assert_eq!(
            builtin_hopf("dual(Q8GroupAlgebra)", BaseRing::Q).unwrap().dim(),
            8
        );
        assert!(builtin_hopf("A5GroupAlgebra", BaseRing::Q).is_err());
        assert!(builtin_hopf("ZmodGroupAlgebra(2)", BaseRing::Fp(2)).is_err());
    }

    #[test]
    fn json_round_trip_builds_the_same_algebra() {
        let json = r#"{
            "name": "Z2",
            "dim": 2,
            "base_ring": "Q",
            "mult": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]],
            "comult": [[0,0,0,"1"],[1,1,1,"1"]],
            "unit": ["1","0"],
            "counit": ["1","1"],
            "antipode": [[0,0,"1"],[1,1,"1"]]
        }"#;
        let h = HopfAlgebra::new(HopfData::from_json(json).unwrap()).unwrap();
        let builtin = builtin_hopf("ZmodGroupAlgebra(2)", BaseRing::Q).unwrap();
        assert_eq!(h.data().mult, builtin.data().mult);
        assert_eq!(h.integral_tensor(), builtin.integral_tensor());
    }

    #[test]
    fn json_rejects_bad_indices_and_rings() {
        let bad_index = r#"{"dim": 2, "mult": [[0,0,5,"1"]], "comult": [],
            "unit": ["1","0"], "counit": ["1","1"], "antipode": []}"#;
        assert!(matches!(HopfData::from_json(bad_index), Err(Error::Invalid(_))));
        let bad_ring = r#"{"dim": 2, "base_ring": {"Fp": 4}, "mult": [],
            "comult": [], "unit": ["1","0"], "counit": ["1","1"], "antipode": []}"#;
        assert!(HopfData::from_json(bad_ring).is_err());
    }
}
