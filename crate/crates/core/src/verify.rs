//! Randomised self-checks of the belief algebra against its oracles.
//!
//! Used by the `verify` subcommand; each check reports how many cases it ran
//! and the first counterexample it found.

use rand::Rng;

use crate::belief::{consensus_belief, BeliefPair, BeliefState};
use crate::measures::{entropy, inconsistency, payoff, vagueness};
use crate::oracle::{consensus_belief_enum_oracle, ds_union_combine_oracle};
use crate::sim::evidence_update;
use crate::sim::rng::stream;
use crate::truth::{TruthValue, Valuation};

/// Tolerance for agreement between the closed form and the oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Random pair: usually uniform on the feasible triangle, sometimes one of
/// the three certain pairs or a crisp pair so that edge cases get exercised.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> BeliefPair {
    match rng.gen_range(0..10) {
        0 => BeliefPair::TRUE,
        1 => BeliefPair::FALSE,
        2 => BeliefPair::VAGUE,
        3 => {
            let x: f64 = rng.gen();
            BeliefPair::new(x, x).unwrap()
        }
        _ => {
            let (x, y): (f64, f64) = (rng.gen(), rng.gen());
            BeliefPair::new(x.min(y), x.max(y)).unwrap()
        }
    }
}

pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BeliefState {
    (0..n).map(|_| random_pair(rng)).collect::<Vec<_>>().into()
}

fn max_gap(a: &BeliefState, b: &BeliefState) -> f64 {
    a.pairs()
        .iter()
        .zip(b.pairs())
        .map(|(p, q)| (p.lower() - q.lower()).abs().max((p.upper() - q.upper()).abs()))
        .fold(0.0, f64::max)
}

fn valid(b: &BeliefState) -> bool {
    b.pairs()
        .iter()
        .all(|p| 0.0 <= p.lower() && p.lower() <= p.upper() && p.upper() <= 1.0)
}

fn check<F>(name: &'static str, cases: usize, seed: u64, mut case: F) -> CheckOutcome
where
    F: FnMut(&mut crate::sim::rng::SimRng) -> Option<String>,
{
    let mut rng = stream(seed);
    let failure = (0..cases).find_map(|_| case(&mut rng));
    CheckOutcome { name, cases, failure }
}

fn embed(t: TruthValue) -> BeliefPair {
    match t {
        TruthValue::False => BeliefPair::FALSE,
        TruthValue::Borderline => BeliefPair::VAGUE,
        TruthValue::True => BeliefPair::TRUE,
    }
}

/// Runs every check with `cases` random inputs each (language sizes 1–5).
pub fn oracle_suite(cases: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    out.push(check("worked example", 1, seed, |_| {
        let a = BeliefState::from_tuples(&[(0.6, 0.8)]).unwrap();
        let b = BeliefState::from_tuples(&[(0.4, 0.7)]).unwrap();
        let expect = BeliefState::from_tuples(&[(0.5, 0.82)]).unwrap();
        let got = consensus_belief(&a, &b).unwrap();
        (max_gap(&got, &expect) > ORACLE_TOLERANCE).then(|| format!("got {got:?}"))
    }));

    out.push(check("triple-oracle agreement", cases, seed ^ 1, |rng| {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(rng, n), random_state(rng, n));
        let closed = consensus_belief(&a, &b).unwrap();
        let table = consensus_belief_enum_oracle(&a, &b).unwrap();
        let ds = ds_union_combine_oracle(&a, &b).unwrap();
        let gap = max_gap(&closed, &table).max(max_gap(&closed, &ds));
        (gap > ORACLE_TOLERANCE).then(|| format!("{a:?} ⊙ {b:?}: gap {gap:e}"))
    }));

    out.push(check("closure", cases, seed ^ 2, |rng| {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(rng, n), random_state(rng, n));
        let c = consensus_belief(&a, &b).unwrap();
        (!valid(&c)).then(|| format!("{a:?} ⊙ {b:?} = {c:?}"))
    }));

    out.push(check("commutativity", cases, seed ^ 3, |rng| {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(rng, n), random_state(rng, n));
        (consensus_belief(&a, &b).unwrap() != consensus_belief(&b, &a).unwrap()).then(|| format!("{a:?}, {b:?}"))
    }));

    out.push(check("vague identity", cases, seed ^ 4, |rng| {
        let n = rng.gen_range(1..=5);
        let a = random_state(rng, n);
        let v = BeliefState::vague(n);
        let ok = consensus_belief(&a, &v).unwrap() == a && consensus_belief(&v, &a).unwrap() == a;
        (!ok).then(|| format!("{a:?}"))
    }));

    out.push(check("crisp-certain fixed points", cases, seed ^ 5, |rng| {
        let n = rng.gen_range(1..=5);
        let a: BeliefState = (0..n)
            .map(|_| BeliefPair::certain(rng.gen()))
            .collect::<Vec<_>>()
            .into();
        let v = BeliefState::vague(n);
        let ok = consensus_belief(&a, &a).unwrap() == a && consensus_belief(&v, &v).unwrap() == v;
        (!ok).then(|| format!("{a:?}"))
    }));

    out.push(check("valuation embedding", cases, seed ^ 6, |rng| {
        let n = rng.gen_range(1..=5);
        let mut draw = || Valuation::new((0..n).map(|_| TruthValue::ALL[rng.gen_range(0..3)]).collect());
        let (v1, v2) = (draw(), draw());
        let lift = |v: &Valuation| BeliefState::new(v.truths().iter().map(|&t| embed(t)).collect());
        let lifted = consensus_belief(&lift(&v1), &lift(&v2)).unwrap();
        let direct = lift(&v1.consensus(&v2).unwrap());
        (lifted != direct).then(|| format!("{v1:?} ⊙ {v2:?}"))
    }));

    out.push(check("evidence closed form", cases, seed ^ 7, |rng| {
        let n = rng.gen_range(1..=5);
        let a = random_state(rng, n);
        let i = rng.gen_range(0..n);
        let t: bool = rng.gen();
        let closed = evidence_update(&a, i, t).unwrap();
        let via_operator = consensus_belief(&a, &BeliefState::evidence(n, i, t).unwrap()).unwrap();
        (closed != via_operator).then(|| format!("{a:?}, index {i}, truth {t}"))
    }));

    out.push(check("measure bounds", cases, seed ^ 8, |rng| {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(rng, n), random_state(rng, n));
        let world = Valuation::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
        let v = vagueness(&a);
        let h = entropy(&a);
        let x = inconsistency(&a, &b).unwrap();
        let p = payoff(&a, &world).unwrap();
        let ok = (0.0..=1.0).contains(&v)
            && (0.0..=3f64.log2() + 1e-12).contains(&h)
            && (0.0..=1.0).contains(&x)
            && (-(n as f64)..=n as f64).contains(&p);
        (!ok).then(|| format!("{a:?}: vagueness {v}, entropy {h}, inconsistency {x}, payoff {p}"))
    }));

    out.push(check("inconsistency symmetry", cases, seed ^ 9, |rng| {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_state(rng, n), random_state(rng, n));
        (inconsistency(&a, &b).unwrap() != inconsistency(&b, &a).unwrap()).then(|| format!("{a:?}, {b:?}"))
    }));

    out
}
