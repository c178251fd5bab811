use std::collections::{BTreeSet, HashSet};

use gwkit_core::action::GraphAction;
use gwkit_core::commutator::{commutator_coeff, crossed_commutator_coeff, smallness_witness, CommutatorError, DiagSymbol};
use gwkit_core::group::{Group, GroupElement};
use gwkit_core::{GpElement, Graph, GraphProduct, Syllable, Vertex, WreathProduct};
use num_rational::Rational64;
use num_traits::Zero;

use super::fixtures::dihedral;
use super::{setup, Suite, SuiteContext, SuiteError};
use crate::runner::{run_items, Outcome, Tally};

/// Case formula for the entries of `[f, ρ(h)]`.
pub struct CommutatorCases;

/// The crossed version on the wreath basis.
pub struct CrossedCommutatorCases;

/// Delta symbols at a few elements and one mixed rational symbol.
fn symbols(v: Vertex, group: &Group) -> Vec<DiagSymbol> {
    let elems: Vec<GroupElement> = match group.elements() {
        Some(all) => all,
        None => group.ball(1).into_iter().collect(),
    };
    let mut out: Vec<DiagSymbol> = elems.iter().take(3).map(|a| DiagSymbol::delta(v, a.clone())).collect();
    out.push(DiagSymbol::new(
        v,
        elems
            .iter()
            .skip(1)
            .take(2)
            .cloned()
            .zip([Rational64::new(1, 2), Rational64::from_integer(-3)]),
    ));
    out
}

fn nontrivial(group: &Group) -> Vec<GroupElement> {
    let all: Vec<GroupElement> = match group.elements() {
        Some(all) => all,
        None => group.ball(1).into_iter().collect(),
    };
    all.into_iter().filter(|a| !group.is_identity(a)).collect()
}

/// The `v`-syllable that can be moved to the front of `x`, or `e`.
fn front_syllable(gp: &GraphProduct, x: &GpElement, v: Vertex) -> GroupElement {
    let s = x.syllables();
    (0..s.len())
        .find(|&j| s[j].vertex == v && s[..j].iter().all(|t| gp.graph().adjacent(t.vertex, v)))
        .map(|j| s[j].elem.clone())
        .unwrap_or_else(|| gp.vertex_group(v).expect("graph vertex").identity())
}

fn right_multiply(gp: &GraphProduct, x: &GpElement, w: Vertex, a: GroupElement) -> GpElement {
    let mut word = x.syllables().to_vec();
    word.push(Syllable::new(w, a));
    gp.normalize(&word).expect("valid word")
}

struct Case {
    v: usize,
    f: usize,
    w: Vertex,
    h: GroupElement,
}

struct Setting {
    gp: GraphProduct,
    symbols: Vec<(Vertex, Vec<DiagSymbol>)>,
    ball: Vec<GpElement>,
}

fn setting(suite: &'static str, ctx: &SuiteContext) -> Result<Setting, SuiteError> {
    let gp = match ctx.config.filter(|c| c.graph.is_some()) {
        Some(cfg) => cfg.product()?,
        None => GraphProduct::uniform(Graph::cycle(4).expect("C4"), Group::cyclic(3).expect("Z/3")),
    };
    let vertices = gp
        .graph()
        .vertices()
        .ok_or_else(|| setup(suite, "needs a finite graph"))?
        .to_vec();
    let symbols = vertices
        .iter()
        .map(|&v| Ok((v, symbols(v, gp.vertex_group(v).map_err(|e| setup(suite, e))?))))
        .collect::<Result<Vec<_>, SuiteError>>()?;
    let ball = gp
        .syllable_ball(ctx.radius_or(4), 2)
        .map_err(|e| setup(suite, e))?
        .into_iter()
        .collect();
    Ok(Setting { gp, symbols, ball })
}

fn check_case(s: &Setting, case: &Case) -> Outcome {
    let gp = &s.gp;
    let (v, f) = (s.symbols[case.v].0, &s.symbols[case.v].1[case.f]);
    let group = gp.vertex_group(case.w).expect("graph vertex");
    let h_inv = group.inverse(&case.h).expect("valid element");
    let star = gp.graph().star(v).expect("graph vertex");
    let mut targets = HashSet::with_capacity(s.ball.len());
    for x in &s.ball {
        let (c, target) = match commutator_coeff(gp, f, case.w, &case.h, x) {
            Ok(r) => r,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let describe = || {
            format!(
                "f at {v}, h = {}:{}, x = {}",
                case.w,
                group.format(&case.h),
                gp.format(x)
            )
        };
        if target != right_multiply(gp, x, case.w, h_inv.clone()) {
            return Outcome::Fail(format!("{}: target {} is not x h^-1", describe(), gp.format(&target)));
        }
        targets.insert(target.clone());
        let expected = f.eval(&front_syllable(gp, &target, v)) - f.eval(&front_syllable(gp, x, v));
        if c != expected {
            return Outcome::Fail(format!("{}: coefficient {c}, expected {expected}", describe()));
        }
        if !c.is_zero() && (v != case.w || !x.support().is_subset(&star) || !target.support().is_subset(&star)) {
            return Outcome::Fail(format!("{}: nonzero coefficient {c} outside the star case", describe()));
        }
        if v == case.w && x.support().is_subset(&star) {
            let vg = gp.vertex_group(v).expect("graph vertex");
            let a = front_syllable(gp, x, v);
            let shifted = vg.product(&a, &h_inv).expect("same group");
            if c != f.eval(&shifted) - f.eval(&a) {
                return Outcome::Fail(format!("{}: star case gives {c}", describe()));
            }
        }
    }
    if targets.len() != s.ball.len() {
        return Outcome::Fail(format!("f at {v}, h at {}: two columns share a target", case.w));
    }
    match smallness_witness(gp, f, case.w, &case.h, s.ball_radius(), 2) {
        Ok(cert) if v != case.w && cert.nonzero != 0 => {
            Outcome::Fail(format!("f at {v}, h at {}: {} nonzero entries off the diagonal case", case.w, cert.nonzero))
        }
        Ok(_) => Outcome::Pass,
        Err(CommutatorError::Uncovered { x, coefficient }) => Outcome::Fail(format!(
            "f at {v}, h at {}: x = {x} with coefficient {coefficient} lies outside the cover",
            case.w
        )),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

impl Setting {
    fn ball_radius(&self) -> usize {
        self.ball.iter().map(GpElement::syllable_length).max().unwrap_or(0)
    }

    fn cases(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for (vi, (_, fs)) in self.symbols.iter().enumerate() {
            for fi in 0..fs.len() {
                for &(w, _) in &self.symbols {
                    for h in nontrivial(self.gp.vertex_group(w).expect("graph vertex")) {
                        out.push(Case { v: vi, f: fi, w, h });
                    }
                }
            }
        }
        out
    }
}

impl Suite for CommutatorCases {
    fn name(&self) -> &'static str {
        "commutator-cases"
    }

    fn statement(&self) -> &'static str {
        "[f, rho(h)] sends delta_x to a multiple of delta_{x h^-1}, nonzero only when v = w and x lies in the star subgroup, where it equals f(a h^-1) - f(a); its support is covered by finitely many link translates"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let s = setting(self.name(), ctx)?;
        let cases = s.cases();
        Ok(run_items(&cases, |c| check_case(&s, c)))
    }
}

struct CrossedSetting {
    wreath: WreathProduct,
    elements: Vec<GroupElement>,
    symbols: Vec<DiagSymbol>,
    ball: Vec<GpElement>,
}

fn crossed_settings(suite: &'static str, ctx: &SuiteContext) -> Result<Vec<CrossedSetting>, SuiteError> {
    let actions = match ctx.config.filter(|c| c.action.is_some()) {
        Some(cfg) => vec![cfg.action()?.clone()],
        None => vec![GraphAction::rotation(4, 4, 1).expect("rotation"), dihedral(4)],
    };
    let h = match ctx.config.and_then(|c| c.vertex_group.clone()) {
        Some(g) => g,
        None => Group::cyclic(3).expect("Z/3"),
    };
    actions
        .into_iter()
        .map(|action| {
            let elements = action
                .group()
                .elements()
                .ok_or_else(|| setup(suite, "needs a finite acting group"))?;
            let v = action.graph().base_vertex();
            let wreath = WreathProduct::new(action, h.clone());
            let ball = wreath
                .product()
                .syllable_ball(ctx.radius_or(4), 2)
                .map_err(|e| setup(suite, e))?
                .into_iter()
                .collect();
            Ok(CrossedSetting {
                symbols: symbols(v, &h),
                wreath,
                elements,
                ball,
            })
        })
        .collect()
}

fn check_crossed(s: &CrossedSetting, f: &DiagSymbol, w: Vertex, h: &GroupElement, x: &GpElement) -> Outcome {
    let action = s.wreath.action();
    let gp = s.wreath.product();
    let hg = s.wreath.vertex_group();
    let Some(stab) = action.transporter(w, w) else {
        return Outcome::Inconclusive(format!("no stabilizer listing for {w}"));
    };
    let unit = s.wreath.from_h(gp.syllable(w, h.clone()).expect("valid syllable"));
    let unit_inv = s.wreath.invert(&unit).expect("valid element");
    let mut nonzero = BTreeSet::new();
    for g in &s.elements {
        let z = s.wreath.element(x.clone(), g.clone()).expect("valid element");
        let (c, target) = match crossed_commutator_coeff(&s.wreath, f, w, h, &z) {
            Ok(r) => r,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let describe = || format!("f at {}, h = {w}:{}, z = {}", f.vertex(), hg.format(h), s.wreath.format(&z));
        if target != s.wreath.multiply(&z, &unit_inv).expect("valid product") {
            return Outcome::Fail(format!("{}: target {} is not z (h, e)^-1", describe(), s.wreath.format(&target)));
        }
        let gw = action.act(g, w).expect("validated action");
        let plain = match commutator_coeff(gp, f, gw, h, x) {
            Ok((c, _)) => c,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if c != plain {
            return Outcome::Fail(format!("{}: coefficient {c}, plain coefficient at g w = {gw} is {plain}", describe()));
        }
        if !c.is_zero() {
            if gw != f.vertex() {
                return Outcome::Fail(format!("{}: nonzero coefficient with g w = {gw}", describe()));
            }
            nonzero.insert(g.clone());
        }
    }
    if let Some(g0) = nonzero.first() {
        let coset: BTreeSet<GroupElement> = stab
            .iter()
            .map(|k| action.group().product(g0, k).expect("group element"))
            .collect();
        if !nonzero.is_subset(&coset) {
            return Outcome::Fail(format!(
                "f at {}, h at {w}, x = {}: contributing elements leave one coset of Stab({w})",
                f.vertex(),
                gp.format(x)
            ));
        }
    }
    Outcome::Pass
}

impl Suite for CrossedCommutatorCases {
    fn name(&self) -> &'static str {
        "crossed-commutator-cases"
    }

    fn statement(&self) -> &'static str {
        "on the wreath basis, the entry of [f, rho(h)] at z = (x, g) is the plain entry of sigma_g(h) at x, nonzero only for g in one coset of the stabilizer of w"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<Tally, SuiteError> {
        let mut tally = Tally::default();
        for s in crossed_settings(self.name(), ctx)? {
            let vertices = s.wreath.action().graph().vertices().expect("finite graph").to_vec();
            let hs = nontrivial(s.wreath.vertex_group());
            let mut items = Vec::new();
            for f in &s.symbols {
                for &w in &vertices {
                    for h in &hs {
                        for x in &s.ball {
                            items.push((f, w, h, x));
                        }
                    }
                }
            }
            tally.merge(run_items(&items, |&(f, w, h, x)| check_crossed(&s, f, w, h, x)));
        }
        Ok(tally)
    }
}
