//! V-invariants and correction terms with N-doubling stability certificates.

use serde::Serialize;

use crate::algebra::{Gf2, Pid};
use crate::cfk::CfkComplex;
use crate::exec::Exec;
use crate::rational::{self, Rational};

use super::complex::TowerBottom;
use super::cone::{build_cone, cone_homology, cone_tower_bottom, tower_power, ConeMode};
use super::raw::RawTwistedComplex;
use super::truncated::{build_a_plus, build_b_plus, maps_between, truncation_floor};
use super::EngineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Base truncation level; defaults to the floor of each input.
    pub truncation: Option<u32>,
    /// Number of truncation levels N, 2N, 4N, … that must agree (≥ 2).
    pub stability_rounds: u32,
    pub exec: Exec,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            truncation: None,
            stability_rounds: 2,
            exec: Exec::default(),
        }
    }
}

impl EngineConfig {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    fn base(&self, floor: u32) -> Result<u32, EngineError> {
        if self.stability_rounds < 2 {
            return Err(EngineError::TooFewRounds(self.stability_rounds));
        }
        match self.truncation {
            Some(n) if n < floor => Err(EngineError::TruncationBelowFloor { requested: n, floor }),
            Some(n) => Ok(n),
            None => Ok(floor),
        }
    }
}

/// Vₛ at one truncation level.
///
/// With g_A the bottom of the tower in H(A⁺ₛ) and g_v the lowest grading in
/// which vₛ is nonzero on tower classes, Vₛ = (g_v − g_A)/2. Since B⁺ computes
/// HF⁺(S³), g_v must be 0; this is checked.
pub fn compute_v_at(c: &CfkComplex, s: i64, n: u32, exec: Exec) -> Result<u32, EngineError> {
    let a = build_a_plus(c, s, n)?;
    let b = build_b_plus(c, n)?;
    let maps = maps_between(c, &a, &b)?;
    let k = tower_power(n);
    let (ca, cb) = (a.complex(), b.complex());
    let g_a = ca.lowest_tower_grading(k, exec).ok_or(EngineError::NoTower { truncation: n })?;
    let window = ca.tower_window(k);
    let hits = exec.map(&window, |&g| {
        if !cb.is_exact_at(g) {
            return false;
        }
        let (images, _) = ca.tower_generators(g, k);
        let v = maps.v.submatrix(cb.slice(g), ca.slice(g));
        Gf2::subquotient(&cb.boundaries_at(g), &v.matmul(&images)).free_rank > 0
    });
    let g_v = window
        .into_iter()
        .zip(hits)
        .find(|(_, hit)| *hit)
        .map(|(g, _)| g)
        .ok_or(EngineError::NoTower { truncation: n })?;
    let g_b = cb.lowest_tower_grading(k, exec).ok_or(EngineError::NoTower { truncation: n })?;
    if g_v != g_b || g_b != rational::int(0) {
        return Err(EngineError::InconsistentTower {
            detail: format!(
                "v is first nonzero on the tower in grading {}, but the B⁺ tower starts in grading {}",
                rational::format(&g_v),
                rational::format(&g_b)
            ),
        });
    }
    let twice = g_v - g_a;
    if !rational::is_even_integer(&twice) || twice < rational::int(0) {
        return Err(EngineError::InconsistentTower {
            detail: format!("tower of A⁺ starts in grading {}", rational::format(&g_a)),
        });
    }
    Ok((twice.to_integer() / 2) as u32)
}

/// d(Y₀(K); Λ): bottom of the tower in the totally twisted s = 0 cone.
pub fn d_totally_twisted_at(c: &CfkComplex, n: u32, exec: Exec) -> Result<Rational, EngineError> {
    let cone = build_cone(c, 0, ConeMode::Twisted, n)?;
    cone_tower_bottom(&cone, exec)?.ok_or(EngineError::NoTower { truncation: n })
}

/// Tower bottoms of the untwisted s = 0 cone.
pub fn untwisted_tower_bottoms_at(c: &CfkComplex, n: u32, exec: Exec) -> Result<Vec<TowerBottom>, EngineError> {
    let cone = build_cone(c, 0, ConeMode::Untwisted, n)?;
    Ok(cone_homology(&cone, exec)?.homology.tower_bottoms)
}

/// Bottom of the twisted tower of a raw complex.
pub fn twisted_complex_d_at(raw: &RawTwistedComplex, n: u32, exec: Exec) -> Result<Rational, EngineError> {
    let c = raw.truncate(n)?;
    c.lowest_tower_grading(tower_power(n), exec)
        .ok_or(EngineError::NoTower { truncation: n })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateEntry<T> {
    pub truncation: u32,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityOutcome<T> {
    pub value: T,
    /// One entry per truncation level, all equal to `value`.
    pub certificate: Vec<CertificateEntry<T>>,
}

/// Evaluates `f` at N, 2N, …, 2^(rounds−1)·N and requires all values to agree.
pub fn stabilize<T, F>(base: u32, rounds: u32, exec: Exec, f: F) -> Result<StabilityOutcome<T>, EngineError>
where
    T: Clone + PartialEq + Send + std::fmt::Debug,
    F: Fn(u32) -> Result<T, EngineError> + Sync + Send,
{
    let levels: Vec<u32> = (0..rounds).map(|r| base << r).collect();
    let values = exec.map(&levels, |&n| f(n));
    let mut certificate = Vec::with_capacity(levels.len());
    for (n, v) in levels.into_iter().zip(values) {
        certificate.push(CertificateEntry { truncation: n, value: v? });
    }
    let value = certificate[0].value.clone();
    if certificate.iter().any(|e| e.value != value) {
        return Err(EngineError::Unstable {
            certificate: certificate
                .iter()
                .map(|e| format!("N={}: {:?}", e.truncation, e.value))
                .collect::<Vec<_>>()
                .join(", "),
        });
    }
    Ok(StabilityOutcome { value, certificate })
}

/// Quantities that can be certified by [`stability_run`].
#[derive(Clone, Copy, Debug)]
pub enum StabilityOp<'a> {
    ComputeV { complex: &'a CfkComplex, s: i64 },
    DTotallyTwisted { complex: &'a CfkComplex },
    TwistedComplexD { raw: &'a RawTwistedComplex },
}

pub fn stability_run(op: StabilityOp<'_>, config: &EngineConfig) -> Result<StabilityOutcome<Rational>, EngineError> {
    let exec = config.exec;
    let rounds = config.stability_rounds;
    match op {
        StabilityOp::ComputeV { complex, s } => {
            let base = config.base(truncation_floor(complex))?;
            stabilize(base, rounds, exec, |n| {
                compute_v_at(complex, s, n, exec).map(|v| rational::int(v as i64))
            })
        }
        StabilityOp::DTotallyTwisted { complex } => {
            let base = config.base(truncation_floor(complex))?;
            stabilize(base, rounds, exec, |n| d_totally_twisted_at(complex, n, exec))
        }
        StabilityOp::TwistedComplexD { raw } => {
            let base = config.base(raw.truncation_floor())?;
            stabilize(base, rounds, exec, |n| twisted_complex_d_at(raw, n, exec))
        }
    }
}

/// Certified Vₛ.
pub fn compute_v(c: &CfkComplex, s: i64, config: &EngineConfig) -> Result<u32, EngineError> {
    let out = stability_run(StabilityOp::ComputeV { complex: c, s }, config)?;
    Ok(out.value.to_integer() as u32)
}

/// Certified d(Y₀(K); Λ) from the mapping cone.
pub fn d_totally_twisted_zero_surgery(c: &CfkComplex, config: &EngineConfig) -> Result<Rational, EngineError> {
    Ok(stability_run(StabilityOp::DTotallyTwisted { complex: c }, config)?.value)
}

/// Certified d(·; Λ) of a raw twisted complex.
pub fn twisted_complex_d(raw: &RawTwistedComplex, config: &EngineConfig) -> Result<Rational, EngineError> {
    Ok(stability_run(StabilityOp::TwistedComplexD { raw }, config)?.value)
}

/// Certified tower bottoms of the untwisted s = 0 cone.
pub fn untwisted_tower_bottoms(c: &CfkComplex, config: &EngineConfig) -> Result<Vec<TowerBottom>, EngineError> {
    let base = config.base(truncation_floor(c))?;
    let exec = config.exec;
    Ok(stabilize(base, config.stability_rounds, exec, |n| untwisted_tower_bottoms_at(c, n, exec))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::{catalog_get, mirror, staircase, tensor};
    use crate::surgery::raw::{nonsplit_tower, parse_raw_twisted};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn half() -> Rational {
        rational::half()
    }

    #[test]
    fn v0_of_catalog_trefoils() {
        assert_eq!(compute_v(&catalog_get("unknot").unwrap(), 0, &cfg()).unwrap(), 0);
        assert_eq!(compute_v(&catalog_get("trefoil_right").unwrap(), 0, &cfg()).unwrap(), 1);
        assert_eq!(compute_v(&catalog_get("trefoil_left").unwrap(), 0, &cfg()).unwrap(), 0);
    }

    #[test]
    fn v_of_larger_staircases() {
        let t25 = staircase(&[1, 1, 1, 1]).unwrap();
        assert_eq!(compute_v(&t25, 0, &cfg()).unwrap(), 1);
        assert_eq!(compute_v(&t25, 1, &cfg()).unwrap(), 1);
        assert_eq!(compute_v(&t25, 2, &cfg()).unwrap(), 0);
        let tt = tensor(&catalog_get("trefoil_right").unwrap(), &catalog_get("trefoil_right").unwrap());
        assert_eq!(compute_v(&tt, 0, &cfg()).unwrap(), 1);
        // T(3,4): corners (0,3), (1,1), (3,0), so V₀ = 1 and V₁ = 1.
        let t34 = staircase(&[1, 2, 2, 1]).unwrap();
        assert_eq!(compute_v(&t34, 0, &cfg()).unwrap(), 1);
        assert_eq!(compute_v(&t34, 1, &cfg()).unwrap(), 1);
        assert_eq!(compute_v(&t34, 3, &cfg()).unwrap(), 0);
    }

    #[test]
    fn twisted_d_of_trefoils() {
        assert_eq!(d_totally_twisted_zero_surgery(&catalog_get("unknot").unwrap(), &cfg()).unwrap(), -half());
        let r = catalog_get("trefoil_right").unwrap();
        assert_eq!(d_totally_twisted_zero_surgery(&r, &cfg()).unwrap(), -half());
        assert_eq!(
            d_totally_twisted_zero_surgery(&mirror(&r), &cfg()).unwrap(),
            rational::int(1) + half()
        );
    }

    #[test]
    fn untwisted_bottoms_of_the_trefoil() {
        let r = catalog_get("trefoil_right").unwrap();
        let bottoms: Vec<_> = untwisted_tower_bottoms(&r, &cfg())
            .unwrap()
            .into_iter()
            .map(|t| (t.grading, t.multiplicity))
            .collect();
        assert_eq!(bottoms, vec![(-rational::int(1) - half(), 1), (-half(), 1)]);
    }

    #[test]
    fn raw_complexes() {
        assert_eq!(twisted_complex_d(&nonsplit_tower(), &cfg()).unwrap(), -half());
        let single = parse_raw_twisted(r#"{"generators":[{"id":"g","grading":0}]}"#).unwrap();
        assert_eq!(twisted_complex_d(&single, &cfg()).unwrap(), rational::int(0));
        // g₁ → (1+t)·g₂: the tower is F₂[t,t⁻¹]/(1+t) starting at g₂.
        let torsion = parse_raw_twisted(
            r#"{"generators":[{"id":"g1","grading":1},{"id":"g2","grading":0}],
                "differential":[{"from":"g1","to":"g2","upower":0,"poly":[0,1]}]}"#,
        )
        .unwrap();
        assert_eq!(twisted_complex_d(&torsion, &cfg()).unwrap(), rational::int(0));
        // g₁ → (1+t)·U·g₂: g₁'s tower dies except for its free bottom
        // class, which is not a tower class; the tower is g₂'s.
        let shifted = parse_raw_twisted(
            r#"{"generators":[{"id":"g1","grading":0},{"id":"g2","grading":1}],
                "differential":[{"from":"g1","to":"g2","upower":1,"poly":[0,1]}]}"#,
        )
        .unwrap();
        assert_eq!(twisted_complex_d(&shifted, &cfg()).unwrap(), rational::int(1));
    }

    #[test]
    fn stability_certificates() {
        let c = catalog_get("unknot").unwrap();
        let out = stability_run(StabilityOp::ComputeV { complex: &c, s: 0 }, &cfg()).unwrap();
        assert_eq!(out.value, rational::int(0));
        assert_eq!(
            out.certificate.iter().map(|e| e.truncation).collect::<Vec<_>>(),
            vec![4, 8]
        );
        let bad = EngineConfig {
            stability_rounds: 1,
            ..cfg()
        };
        assert_eq!(compute_v(&c, 0, &bad).unwrap_err(), EngineError::TooFewRounds(1));
        let low = EngineConfig {
            truncation: Some(2),
            ..cfg()
        };
        assert!(matches!(
            compute_v(&c, 0, &low),
            Err(EngineError::TruncationBelowFloor { requested: 2, floor: 4 })
        ));
    }
}
