//! add(M)-membership, left/right approximations, and the split-sequence
//! checker.

use super::hom::hom_group;
use super::map::ModuleMap;
use super::module::ModRef;
use super::ModuleError;
use crate::finring::Subgroup;

/// Which side of an approximation condition to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxSide {
    Left,
    Right,
}

/// `M'` is a direct summand of a finite direct sum of copies of `M` iff the
/// identity of `M'` is a sum of composites `M' -> M -> M'`; the set of such
/// sums is the additive span of composites of Hom-basis elements.
pub fn in_add(mprime: &ModRef, m: &ModRef) -> Result<bool, ModuleError> {
    if mprime.ring != m.ring {
        return Err(ModuleError::RingMismatch);
    }
    if mprime.is_zero() {
        return Ok(true);
    }
    let to_m = hom_group(mprime, m)?;
    let from_m = hom_group(m, mprime)?;
    let end = hom_group(mprime, mprime)?;
    let mut span = Subgroup::trivial(end.orders());
    for g in to_m.basis_maps() {
        for f in from_m.basis_maps() {
            let comp = g.compose(f).expect("endpoints match");
            span.insert(&end.express(&comp).expect("composite is an endomorphism"));
        }
    }
    let id = end
        .express(&ModuleMap::identity(mprime))
        .expect("identity is an endomorphism");
    Ok(span.contains(&id))
}

/// Verdict of an approximation check, with an explicit unliftable
/// homomorphism on failure.
pub struct ApproxResult {
    pub holds: bool,
    pub witness: Option<ModuleMap>,
}

/// Left: `f: X -> M'` is a left add(M)-approximation iff
/// `Hom(f, M): Hom(M', M) -> Hom(X, M)` is onto. Right: `f: M' -> Y` is a
/// right add(M)-approximation iff `Hom(M, f)` is onto. Additivity of Hom
/// makes the single test object `M` suffice for all of add(M).
pub fn is_approximation(
    f: &ModuleMap,
    m: &ModRef,
    side: ApproxSide,
) -> Result<ApproxResult, ModuleError> {
    if f.source.ring != m.ring {
        return Err(ModuleError::RingMismatch);
    }
    let (image_span, full) = match side {
        ApproxSide::Left => {
            let from_mid = hom_group(&f.target, m)?;
            let from_x = hom_group(&f.source, m)?;
            let composites: Vec<ModuleMap> = from_mid
                .basis_maps()
                .iter()
                .map(|phi| f.compose(phi).expect("endpoints match"))
                .collect();
            (from_x.span_of(&composites), from_x)
        }
        ApproxSide::Right => {
            let to_mid = hom_group(m, &f.source)?;
            let to_y = hom_group(m, &f.target)?;
            let composites: Vec<ModuleMap> = to_mid
                .basis_maps()
                .iter()
                .map(|phi| phi.compose(f).expect("endpoints match"))
                .collect();
            (to_y.span_of(&composites), to_y)
        }
    };
    if image_span.is_full() {
        return Ok(ApproxResult {
            holds: true,
            witness: None,
        });
    }
    // a proper subgroup misses some coordinate unit vector
    let ngens = full.orders().len();
    let witness = (0..ngens).find_map(|t| {
        let mut e = vec![0i64; ngens];
        e[t] = 1;
        if image_span.contains(&e) {
            None
        } else {
            Some(full.lift(&e))
        }
    });
    debug_assert!(witness.is_some());
    Ok(ApproxResult {
        holds: false,
        witness,
    })
}

/// Report of a split-sequence check; `failure` names the first violated
/// condition.
pub struct DsplitReport {
    pub holds: bool,
    pub failure: Option<String>,
    pub witness: Option<ModuleMap>,
}

impl DsplitReport {
    fn ok() -> Self {
        DsplitReport {
            holds: true,
            failure: None,
            witness: None,
        }
    }

    fn fail(reason: &str, witness: Option<ModuleMap>) -> Self {
        DsplitReport {
            holds: false,
            failure: Some(reason.to_string()),
            witness,
        }
    }
}

/// Check that `X --f--> M' --g--> Y` is an add(M)-split sequence:
/// `M'` in add(M), `f` a kernel of `g`, `g` a cokernel of `f`, `f` a left
/// and `g` a right add(M)-approximation.
pub fn is_dsplit(f: &ModuleMap, g: &ModuleMap, m: &ModRef) -> Result<DsplitReport, ModuleError> {
    if f.target != g.source {
        return Err(ModuleError::ShapeMismatch(
            "maps are not composable".into(),
        ));
    }
    if f.source.ring != m.ring {
        return Err(ModuleError::RingMismatch);
    }
    if !in_add(&f.target, m)? {
        return Ok(DsplitReport::fail("middle term not in add(M)", None));
    }
    let gf = f.compose(g)?;
    if !gf.is_zero() {
        return Ok(DsplitReport::fail("g o f is nonzero", None));
    }
    if !f.is_injective() {
        return Ok(DsplitReport::fail("f is not a kernel: not injective", None));
    }
    if f.image_subgroup() != g.kernel_subgroup() {
        return Ok(DsplitReport::fail("im(f) differs from ker(g)", None));
    }
    if !g.is_surjective() {
        return Ok(DsplitReport::fail(
            "g is not a cokernel: not surjective",
            None,
        ));
    }
    let left = is_approximation(f, m, ApproxSide::Left)?;
    if !left.holds {
        return Ok(DsplitReport::fail(
            "f is not a left add(M)-approximation",
            left.witness,
        ));
    }
    let right = is_approximation(g, m, ApproxSide::Right)?;
    if !right.holds {
        return Ok(DsplitReport::fail(
            "g is not a right add(M)-approximation",
            right.witness,
        ));
    }
    Ok(DsplitReport::ok())
}
