//! Chart model of the spectral moduli space for SL(2) on P¹ with three
//! marked points: unipotent monodromies `A_0, A_1, A_∞` with fixed lines
//! `ℓ_∞ = [1:0]`, `ℓ_0 = [1:x]`, `ℓ_1 = [1:y]`.

mod matrix;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::algkernel::{int, AlgError, Ideal, MonomialOrder, MultiPoly, PolyRing, Rational};
use crate::marked::{Marked, MarkedSet};
use crate::report::CheckReport;

pub use matrix::SymMatrix2;

/// `ℚ[a,b,x,y]` under grevlex.
pub fn chart_ring() -> Arc<PolyRing> {
    static RING: OnceLock<Arc<PolyRing>> = OnceLock::new();
    RING.get_or_init(|| PolyRing::new(&["a", "b", "x", "y"], MonomialOrder::Grevlex).unwrap())
        .clone()
}

fn poly(s: &str) -> MultiPoly {
    MultiPoly::parse(&chart_ring(), s).expect("valid chart polynomial")
}

fn ideal(gens: &[&str]) -> Ideal {
    Ideal::parse(&chart_ring(), gens).expect("valid chart ideal")
}

/// `A_0` and `A_1` in the chart.
pub fn build_chart_matrices() -> (SymMatrix2, SymMatrix2) {
    let r = chart_ring();
    let a0 = SymMatrix2::parse(&r, [["1 - a*x", "a"], ["-a*x^2", "1 + a*x"]]).unwrap();
    let a1 = SymMatrix2::parse(&r, [["1 - b*y", "b"], ["-b*y^2", "1 + b*y"]]).unwrap();
    (a0, a1)
}

/// `A_∞ = (A_0 A_1)⁻¹`, as the adjugate (the product has determinant 1).
pub fn a_infinity() -> SymMatrix2 {
    let (a0, a1) = build_chart_matrices();
    a0.mul(&a1).adjugate()
}

/// Column vectors spanning the fixed lines `ℓ_0, ℓ_1, ℓ_∞`.
pub fn chart_lines() -> [[MultiPoly; 2]; 3] {
    [[poly("1"), poly("x")], [poly("1"), poly("y")], [poly("1"), poly("0")]]
}

/// The ideal cut out by requiring `A_0 A_1` to be upper unitriangular.
pub fn derive_ideal() -> Ideal {
    let (a0, a1) = build_chart_matrices();
    let p = a0.mul(&a1);
    let one = poly("1");
    let gens = vec![p.entry(1, 0).clone(), p.entry(0, 0) - &one, p.entry(1, 1) - &one];
    Ideal::new(&chart_ring(), gens).unwrap()
}

/// The two-generator presentation `(ax+by, ax²+by²)`.
pub fn chart_ideal() -> Ideal {
    ideal(&["a*x + b*y", "a*x^2 + b*y^2"])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentName {
    Empty,
    OneInf,
    ZeroInf,
    ZeroOne,
    Diagonal,
}

impl fmt::Display for ComponentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentName::Empty => "Λ_∅",
            ComponentName::OneInf => "Λ_{1,∞}",
            ComponentName::ZeroInf => "Λ_{0,∞}",
            ComponentName::ZeroOne => "Λ_{0,1}",
            ComponentName::Diagonal => "~Λ_S",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ComponentDescriptor {
    pub name: ComponentName,
    pub ideal: Ideal,
    pub reduced: bool,
    /// The partial diagonal `Δ_R` whose conormal bundle is the reduced component.
    pub conormal_base: MarkedSet,
}

pub fn components() -> Vec<ComponentDescriptor> {
    use Marked::*;
    let c = |name, gens: &[&str], reduced, base: &[Marked]| ComponentDescriptor {
        name,
        ideal: ideal(gens),
        reduced,
        conormal_base: MarkedSet::of(base),
    };
    vec![
        c(ComponentName::Empty, &["a", "b"], true, &[]),
        c(ComponentName::OneInf, &["a", "y"], true, &[One, Inf]),
        c(ComponentName::ZeroInf, &["b", "x"], true, &[Zero, Inf]),
        c(ComponentName::ZeroOne, &["a + b", "x - y"], true, &[Zero, One]),
        c(ComponentName::Diagonal, &["x^2", "y^2", "x*y", "a*x + b*y"], false, &[Zero, One, Inf]),
    ]
}

pub fn component(name: ComponentName) -> ComponentDescriptor {
    components().into_iter().find(|c| c.name == name).unwrap()
}

fn intersect_all(ideals: &[&Ideal]) -> Result<Ideal, AlgError> {
    let mut acc = ideals[0].clone();
    for i in &ideals[1..] {
        acc = acc.intersect(i)?;
    }
    Ok(acc)
}

/// Rank of the coefficient matrix of affine-linear forms, or `None` if some
/// generator has degree > 1 or a nonzero constant term.
fn linear_rank(gens: &[MultiPoly]) -> Option<usize> {
    let n = chart_ring().nvars();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        if g.total_degree().unwrap_or(0) > 1 || !g.constant_term().is_zero() {
            return None;
        }
        let mut row = vec![Rational::zero(); n];
        for (i, cell) in row.iter_mut().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            *cell = g.coeff(&m);
        }
        rows.push(row);
    }
    Some(rank(rows))
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

const ANCHOR_COMPONENTS: &str = "spectral chart: five components";

pub fn verify_decomposition() -> Result<CheckReport, AlgError> {
    let mut rep = CheckReport::new("spectral");
    let derived = derive_ideal();
    let ci = chart_ideal();
    rep.record("derive_ideal", derived.ideal_eq(&ci)?, "(a*x + b*y, a*x^2 + b*y^2)", gb_string(&derived), "spectral chart: equations");

    let comps = components();
    rep.expect_eq("components.count", 5, comps.len(), ANCHOR_COMPONENTS);
    let refs: Vec<&Ideal> = comps.iter().map(|c| &c.ideal).collect();
    let meet = intersect_all(&refs)?;
    rep.record("decomposition.intersection", meet.ideal_eq(&derived)?, gb_string(&derived), gb_string(&meet), ANCHOR_COMPONENTS);

    let dim = derived.krull_dim()?;
    rep.expect_eq("decomposition.krull_dim", 2, dim, "spectral chart: lci");
    let ngens = ci.generators().len();
    rep.expect_eq("decomposition.complete_intersection", chart_ring().nvars() - dim, ngens, "spectral chart: lci")
        .with_details("generators of (a*x + b*y, a*x^2 + b*y^2) vs codimension");

    for c in &comps {
        let contains = c.ideal.contains_ideal(&derived)?;
        rep.record(&format!("component.{}.on_variety", c.name), contains, true, contains, ANCHOR_COMPONENTS);
        if c.reduced {
            let r = linear_rank(c.ideal.generators());
            let ok = r == Some(c.ideal.generators().len());
            rep.record(
                &format!("component.{}.linear_prime", c.name),
                ok,
                format!("independent linear forms ({})", c.ideal.generators().len()),
                match r {
                    Some(k) => format!("rank {k}"),
                    None => "nonlinear".to_string(),
                },
                ANCHOR_COMPONENTS,
            );
        }
    }

    let ns = component(ComponentName::Diagonal);
    rep.expect_eq("nonreduced.flag", false, ns.reduced, "spectral chart: non-reduced component");
    let x = poly("x");
    let y = poly("y");
    let rx = ns.ideal.radical_contains(&x)?;
    let ry = ns.ideal.radical_contains(&y)?;
    rep.record("nonreduced.radical_contains_xy", rx && ry, "x, y in radical", format!("x: {rx}, y: {ry}"), "spectral chart: non-reduced component");
    let xy = ideal(&["x", "y"]);
    let inside = xy.contains_ideal(&ns.ideal)?;
    rep.record("nonreduced.inside_xy", inside, true, inside, "spectral chart: non-reduced component");
    let x_in = ns.ideal.contains(&x)?;
    rep.record("nonreduced.strict", !x_in, "x not in ideal", if x_in { "x in ideal" } else { "x not in ideal" }, "spectral chart: non-reduced component");

    let swapped = Ideal::new(
        &chart_ring(),
        derived.generators().iter().map(|g| g.permute_vars(&[1, 0, 3, 2])).collect(),
    )?;
    rep.record("symmetry.swap_0_1", swapped.ideal_eq(&derived)?, true, swapped.ideal_eq(&derived)?, "spectral chart: equations");
    Ok(rep)
}

fn gb_string(i: &Ideal) -> String {
    let parts: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// The three linearizations: which marked point gets the sum-form matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `(A_0−1, A_1−1, 2−A_0−A_1)`
    Infinity = 1,
    /// `(2−A_1−A_∞, A_1−1, A_∞−1)`
    Zero = 2,
    /// `(A_0−1, 2−A_0−A_∞, A_∞−1)`
    One = 3,
}

impl Variant {
    pub fn from_index(v: u8) -> Option<Variant> {
        match v {
            1 => Some(Variant::Infinity),
            2 => Some(Variant::Zero),
            3 => Some(Variant::One),
            _ => None,
        }
    }

    pub fn all() -> [Variant; 3] {
        [Variant::Infinity, Variant::Zero, Variant::One]
    }
}

/// `(B_0, B_1, B_∞)` for a variant.
pub fn linearized_triple(variant: Variant) -> [SymMatrix2; 3] {
    let (a0, a1) = build_chart_matrices();
    let ainf = a_infinity();
    let r = chart_ring();
    let one = SymMatrix2::identity(&r);
    let two = SymMatrix2::scalar(&r, 2);
    let shifted = |m: &SymMatrix2| m.sub(&one);
    match variant {
        Variant::Infinity => [shifted(&a0), shifted(&a1), two.sub(&a0).sub(&a1)],
        Variant::Zero => [two.sub(&a1).sub(&ainf), shifted(&a1), shifted(&ainf)],
        Variant::One => [shifted(&a0), two.sub(&a0).sub(&ainf), shifted(&ainf)],
    }
}

fn replaced_index(variant: Variant) -> usize {
    match variant {
        Variant::Zero => 0,
        Variant::One => 1,
        Variant::Infinity => 2,
    }
}

/// `(A_s − 1) − B_s` for the replaced point `s`.
pub fn discrepancy(variant: Variant) -> SymMatrix2 {
    let (a0, a1) = build_chart_matrices();
    let a = [a0, a1, a_infinity()];
    let k = replaced_index(variant);
    let one = SymMatrix2::identity(&chart_ring());
    a[k].sub(&one).sub(&linearized_triple(variant)[k])
}

/// `[[0,0],[ab(x−y),0]]`
pub fn stated_discrepancy() -> SymMatrix2 {
    SymMatrix2::parse(&chart_ring(), [["0", "0"], ["a*b*(x - y)", "0"]]).unwrap()
}

/// Sign `±1` with `d ≡ sign·target` modulo `i`, if any.
fn congruent_up_to_sign(d: &SymMatrix2, target: &SymMatrix2, i: &Ideal) -> Result<Option<i8>, AlgError> {
    if d.sub(target).is_zero_mod(i)? {
        return Ok(Some(1));
    }
    if d.add(target).is_zero_mod(i)? {
        return Ok(Some(-1));
    }
    Ok(None)
}

const ANCHOR_LINEAR: &str = "linearized comparison";

pub fn verify_linearization(variant: Variant) -> Result<CheckReport, AlgError> {
    let mut rep = CheckReport::new("spectral");
    let tag = format!("linearization.v{}", variant as u8);
    let i = derive_ideal();
    let k = replaced_index(variant);
    let b = &linearized_triple(variant)[k];
    let line = &chart_lines()[k];

    let d = discrepancy(variant);
    let dred = d.reduce_mod(&i)?;
    let stated = stated_discrepancy();
    let sign = congruent_up_to_sign(&d, &stated, &i)?;
    rep.record(&format!("{tag}.discrepancy_stated_form"), sign.is_some(), format!("±{stated}"), &dred, ANCHOR_LINEAR)
        .with_details(match sign {
            Some(s) => format!("sign {s:+}"),
            None => "not congruent to either sign of the stated matrix".to_string(),
        });
    let transposed = SymMatrix2::parse(&chart_ring(), [["0", "a*b*(x - y)"], ["0", "0"]])?;
    let tsign = congruent_up_to_sign(&d, &transposed, &i)?;
    rep.record(&format!("{tag}.discrepancy_located"), tsign.is_some(), format!("±{transposed}"), &dred, ANCHOR_LINEAR)
        .with_details(match tsign {
            Some(s) => format!("sign {s:+}"),
            None => "no match".to_string(),
        });
    let nonzero = !d.is_zero_mod(&i)?;
    rep.record(&format!("{tag}.discrepancy_nonzero"), nonzero, "nonzero mod I", if nonzero { "nonzero mod I" } else { "zero mod I" }, ANCHOR_LINEAR);

    let kills = b.apply(line);
    let ok = i.contains(&kills[0])? && i.contains(&kills[1])?;
    rep.record(&format!("{tag}.kills_line"), ok, "B·ℓ ≡ 0", format!("({}, {})", i.normal_form(&kills[0])?, i.normal_form(&kills[1])?), ANCHOR_LINEAR);
    let tr = i.normal_form(&b.trace())?;
    rep.record(&format!("{tag}.traceless"), tr.is_zero(), 0, &tr, ANCHOR_LINEAR);
    let sq = b.mul(b).reduce_mod(&i)?;
    rep.record(&format!("{tag}.nilpotent"), sq.is_zero(), "0", &sq, ANCHOR_LINEAR);

    // the other two entries are A_s − 1, nilpotent with the chart line as kernel
    let triple = linearized_triple(variant);
    let lines = chart_lines();
    let mut exact = true;
    for s in (0..3).filter(|&s| s != k) {
        let v = triple[s].apply(&lines[s]);
        exact &= i.contains(&v[0])?
            && i.contains(&v[1])?
            && i.contains(&triple[s].trace())?
            && triple[s].mul(&triple[s]).is_zero_mod(&i)?;
    }
    rep.record(&format!("{tag}.unchanged_entries"), exact, true, exact, ANCHOR_LINEAR);
    let sum = triple[0].add(&triple[1]).add(&triple[2]);
    rep.record(&format!("{tag}.sum_zero"), sum.is_zero_mod(&i)?, "0", sum.reduce_mod(&i)?, ANCHOR_LINEAR);
    Ok(rep)
}

/// `ℚ[c]` for the odd component.
pub fn odd_ring() -> Arc<PolyRing> {
    PolyRing::new(&["c"], MonomialOrder::Grevlex).unwrap()
}

/// Kernel line of a rank-one 2×2 rational matrix, as a primitive vector.
fn kernel_line(m: &SymMatrix2) -> Option<[Rational; 2]> {
    let e = |i, j| m.entry(i, j).constant_term();
    let rows = [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]];
    let row = rows.iter().find(|r| !r[0].is_zero() || !r[1].is_zero())?;
    let v = [row[1].clone(), -row[0].clone()];
    let other = rows.iter().all(|r| (&r[0] * &v[0] + &r[1] * &v[1]).is_zero());
    other.then(|| normalize_line(v))
}

fn normalize_line(v: [Rational; 2]) -> [Rational; 2] {
    let pivot = if v[0].is_zero() { v[1].clone() } else { v[0].clone() };
    [&v[0] / &pivot, &v[1] / &pivot]
}

fn fmt_line(v: &[Rational; 2]) -> String {
    format!("[{}:{}]", v[0], v[1])
}

const ANCHOR_ODD: &str = "odd PGL(2) component";

pub fn pgl2_odd_component() -> Result<CheckReport, AlgError> {
    let mut rep = CheckReport::new("spectral");
    let r = odd_ring();
    let a0 = SymMatrix2::parse(&r, [["1", "1"], ["0", "1"]])?;
    let a1 = SymMatrix2::parse(&r, [["1", "0"], ["c", "1"]])?;
    let ainf = a1.adjugate().mul(&a0.adjugate()).neg();
    let shown = SymMatrix2::parse(&r, [["-1", "1"], ["c", "-1 - c"]])?;
    rep.record("odd.a_infinity", ainf == shown, &shown, &ainf, ANCHOR_ODD);
    let prod = a0.mul(&a1).mul(&ainf);
    rep.record("odd.product_minus_one", prod == SymMatrix2::scalar(&r, -1), "-1", &prod, ANCHOR_ODD);

    let t = ainf.trace() - MultiPoly::from_int(&r, 2);
    let c4 = MultiPoly::parse(&r, "c + 4")?;
    let ratio = t.div_exact(&c4);
    let ok = matches!(&ratio, Ok(q) if q.is_constant() && !q.is_zero());
    rep.record(
        "odd.trace_proportional",
        ok,
        "nonzero multiple of c + 4",
        match &ratio {
            Ok(q) => format!("({q})*(c + 4)"),
            Err(_) => t.to_string(),
        },
        ANCHOR_ODD,
    );

    let at = ainf.substitute("c", &int(-4))?;
    let one = SymMatrix2::identity(&r);
    let n = at.sub(&one);
    rep.record("odd.unipotent_at_minus_4", n.mul(&n).is_zero(), "(A_∞ − 1)² = 0", n.mul(&n), ANCHOR_ODD);
    rep.record("odd.nontrivial_at_minus_4", !n.is_zero(), "A_∞ ≠ 1", &at, ANCHOR_ODD);

    let lines: Vec<Option<[Rational; 2]>> =
        [a0.sub(&one), a1.substitute("c", &int(-4))?.sub(&one), n].iter().map(kernel_line).collect();
    let got: Vec<String> = lines.iter().map(|l| l.as_ref().map_or("-".into(), fmt_line)).collect();
    let mut distinct = lines.iter().all(Option::is_some);
    if distinct {
        let ls: Vec<&[Rational; 2]> = lines.iter().flatten().collect();
        for i in 0..3 {
            for j in i + 1..3 {
                distinct &= !(&ls[i][0] * &ls[j][1] - &ls[i][1] * &ls[j][0]).is_zero();
            }
        }
    }
    rep.record("odd.distinct_lines", distinct, "three distinct lines", got.join(", "), ANCHOR_ODD);

    // trace − 2 vanishes only at c = −4
    let lead = t.coeff(&[1]);
    let root = if lead.is_zero() { None } else { Some(-t.constant_term() / &lead) };
    let only = root.as_ref() == Some(&int(-4));
    rep.record("odd.unique_unipotent_parameter", only, "c = -4", root.map_or("none".into(), |v| format!("c = {v}")), ANCHOR_ODD);
    Ok(rep)
}

/// Local equation of the preimage of `Δ_{0,1} ∪ Δ_{1,∞}`, built from the chart
/// lines as `det(ℓ_0, ℓ_1) · det(ℓ_1, ℓ_∞)`.
pub fn y_equation() -> MultiPoly {
    let [l0, l1, linf] = chart_lines();
    let det = |u: &[MultiPoly; 2], v: &[MultiPoly; 2]| &(&u[0] * &v[1]) - &(&u[1] * &v[0]);
    &det(&l0, &l1) * &det(&l1, &linf)
}

const ANCHOR_Y: &str = "Eisenstein comparison: partial diagonal locus Y";

pub fn verify_y_sequences() -> Result<CheckReport, AlgError> {
    let mut rep = CheckReport::new("spectral");
    let i = derive_ideal();
    let h = y_equation();
    let y_ideal = i.with_generators(std::slice::from_ref(&h))?;
    let c = |n| component(n).ideal;
    let triple = intersect_all(&[&c(ComponentName::OneInf), &c(ComponentName::ZeroOne), &c(ComponentName::Diagonal)])?;
    rep.record("Y.components", y_ideal.ideal_eq(&triple)?, gb_string(&triple), gb_string(&y_ideal), ANCHOR_Y)
        .with_details(format!("Y = V(I + ({h}))"));

    let kernel = i.quotient(&h)?;
    let pair = c(ComponentName::Empty).intersect(&c(ComponentName::ZeroInf))?;
    rep.record("Y.kernel_support", kernel.ideal_eq(&pair)?, gb_string(&pair), gb_string(&kernel), ANCHOR_Y)
        .with_details("annihilator of the generator of I_Y / I");

    let apb = poly("a + b");
    let inside = y_ideal.contains(&apb)?;
    rep.record("Y.proper", !inside, "a + b not in I_Y", if inside { "a + b in I_Y" } else { "a + b not in I_Y" }, ANCHOR_Y);

    // Along the diagonal component, fibers over generic (a, b) have length 2,
    // filtered as two copies of the reduced diagonal.
    let fiber_ring = PolyRing::new(&["x", "y"], MonomialOrder::Grevlex)?;
    let ns = c(ComponentName::Diagonal);
    for (a, b) in [(1, 2), (3, -5)] {
        let fiber = |id: &Ideal| -> Result<Option<usize>, AlgError> {
            let gens = id
                .generators()
                .iter()
                .map(|g| g.substitute("a", &int(a))?.substitute("b", &int(b))?.map_to_ring(&fiber_ring))
                .collect::<Result<Vec<_>, _>>()?;
            Ideal::new(&fiber_ring, gens)?.quotient_dim()
        };
        let ly = fiber(&y_ideal)?;
        let ls = fiber(&ns)?;
        let lr = fiber(&ideal(&["x", "y"]))?;
        let ok = ly == Some(2) && ls == Some(2) && lr == Some(1);
        rep.record(
            &format!("Y.filtration_lengths.a{a}_b{b}"),
            ok,
            "Y: 2, ~Λ_S: 2, Λ_S: 1",
            format!("Y: {}, ~Λ_S: {}, Λ_S: {}", fmt_len(ly), fmt_len(ls), fmt_len(lr)),
            ANCHOR_Y,
        );
    }
    Ok(rep)
}

fn fmt_len(l: Option<usize>) -> String {
    l.map_or("∞".into(), |v| v.to_string())
}

/// Every spectral check in a fixed order.
pub fn verify_all() -> Result<CheckReport, AlgError> {
    let mut rep = verify_decomposition()?;
    for v in Variant::all() {
        rep.checks.extend(verify_linearization(v)?.checks);
    }
    rep.checks.extend(pgl2_odd_component()?.checks);
    rep.checks.extend(verify_y_sequences()?.checks);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_matrices_are_unipotent() {
        let (a0, a1) = build_chart_matrices();
        assert!(a0.det().is_one());
        assert!(a1.det().is_one());
        let at0 = a0.substitute("a", &int(0)).unwrap();
        assert_eq!(at0, SymMatrix2::identity(&chart_ring()));
        let v = a0.sub(&SymMatrix2::identity(&chart_ring())).apply(&chart_lines()[0]);
        assert!(v[0].is_zero() && v[1].is_zero());
    }

    #[test]
    fn product_entry() {
        let (a0, a1) = build_chart_matrices();
        assert_eq!(a0.mul(&a1).entry(1, 0), &poly("-a*x^2 - b*y^2 + a*b*x*y*(x - y)"));
    }

    #[test]
    fn y_equation_from_lines() {
        assert_eq!(y_equation(), poly("x*y - y^2"));
    }

    #[test]
    fn decomposition_report() {
        let rep = verify_decomposition().unwrap();
        for c in &rep.checks {
            assert_eq!(c.status, crate::report::Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn odd_component_report() {
        assert!(pgl2_odd_component().unwrap().passed());
    }
}
