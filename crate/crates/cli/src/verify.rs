use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pedalfront::classify::{
    check_arnold_observation, check_proposition_application, classify_legendrian, classify_pedal_type,
    cross_check_with_local_algebra, PedalRoute, Verdict,
};
use pedalfront::corpus::{random_normalized_legendrian, random_pedal_germ, random_quartic_tuple};
use pedalfront::germ::normal_forms::{g_k, g_k_differential_factors};
use pedalfront::germ::{compute_normal_field, differentiate, integrate, is_pedal_unfolding_type, lemma1_check};
use pedalfront::jet::{int, Rational};

use crate::Failure;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Proposition,
    Arnold,
    GkTable,
    Roundtrip,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Random trials per parameter count.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Truncation order of the randomized corpora.
const CORPUS_ORDER: u32 = 8;
/// The quartic family only needs its 4-jet.
const QUARTIC_ORDER: u32 = 6;

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, line: String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        println!("{} {line}", if ok { "PASS" } else { "FAIL" });
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

fn proposition(tally: &mut Tally, trials: usize, seed: u64) {
    let c = check_proposition_application(&int(3), &[int(1)], &int(-4), &[int(-2)], QUARTIC_ORDER);
    tally.check(
        c.predicted && c.consistent(),
        format!("proposition instance a=3 b=[1] c=-4 d=[-2]: verdict {}", c.report.verdict),
    );
    for n in 1..=3usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64));
        for t in 0..trials {
            let q = random_quartic_tuple(&mut rng, n);
            let c = check_proposition_application(&q.a, &q.b, &q.c, &q.d, QUARTIC_ORDER);
            tally.check(
                c.consistent(),
                format!(
                    "proposition n={n} #{t} a={} b=[{}] c={} d=[{}] predicted={} verdict={}",
                    q.a,
                    join(&q.b),
                    q.c,
                    join(&q.d),
                    c.predicted,
                    c.report.verdict
                ),
            );
        }
    }
}

fn arnold(tally: &mut Tally) {
    let r = check_arnold_observation(10);
    for s in &r.stages {
        tally.check(s.passed, format!("arnold {}: {}", s.stage, s.detail));
    }
    if r.stages.is_empty() {
        tally.check(false, "arnold: no stages ran".into());
    }
}

fn expected_gk(k: u32, n: usize) -> Verdict {
    if k as usize > n + 1 {
        return Verdict::NotApplicable;
    }
    match k {
        0 => Verdict::NonSingular,
        1 => Verdict::CuspCrossRn,
        2 => Verdict::SwallowtailCrossRn1,
        _ => Verdict::LegendrianA(k + 1),
    }
}

/// `G_k` needs `n >= k - 1`; `G_5` is added at its first parameter count.
fn gk_table(tally: &mut Tally) {
    let mut cases: Vec<(u32, usize)> = (1..=3).flat_map(|n| (0..=5).map(move |k| (k, n))).collect();
    cases.push((5, 4));
    for (k, n) in cases {
        let g = g_k(k, n, 12);
        let verdict = classify_legendrian(&g).map(|r| r.verdict);
        let want = expected_gk(k, n);
        let shown = verdict.as_ref().map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
        tally.check(
            verdict.as_ref() == Ok(&want),
            format!("gk-table G_{k} n={n}: {shown} (expected {want})"),
        );
        let (nf, pf) = g_k_differential_factors(k, n, 12);
        let d = differentiate(&g, false);
        let factored = d.as_ref().ok().and_then(|d| is_pedal_unfolding_type(d).ok());
        let ok = factored
            .as_ref()
            .is_some_and(|f| f.n_factor.agrees_with(&nf) && f.p_factor.agrees_with(&pf));
        tally.check(ok, format!("gk-table D(G_{k}) n={n}: n = {nf}, p = {pf}"));
        if let Some(c) = cross_check_with_local_algebra(&g, 6) {
            tally.check(
                c.agree(),
                format!(
                    "gk-table oracle G_{k} n={n}: rank accepts {}, quotient dims {} vs {}",
                    c.rank_accepts, c.oracle.ideal_dimension, c.oracle.model_dimension
                ),
            );
        }
    }
}

fn roundtrip(tally: &mut Tally, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for t in 0..trials {
        let n = 1 + t % 3;
        let s = random_pedal_germ(&mut rng, n, CORPUS_ORDER);
        let back = integrate(&s.germ).and_then(|i| differentiate(&i, true));
        tally.check(
            back.as_ref() == Ok(&s.germ),
            format!("roundtrip D(I(phi)) n={n} #{t}: phi = {}", s.germ),
        );

        // correspondence on the same sample
        let pedal = classify_pedal_type(&s.germ);
        let legendrian = integrate(&s.germ).ok().and_then(|i| classify_legendrian(&i).ok());
        if let (Ok(p), Some(l)) = (&pedal, &legendrian) {
            let umbrella = p.verdict == Verdict::WhitneyUmbrellaCrossRn1;
            let swallowtail = l.verdict == Verdict::SwallowtailCrossRn1;
            let fold = p.pedal_route == Some(PedalRoute::FoldOfP);
            let cusp = l.verdict == Verdict::CuspCrossRn;
            tally.check(
                umbrella == swallowtail && fold == cusp,
                format!(
                    "correspondence n={n} #{t}: {} on phi, {} on I(phi)",
                    p.verdict, l.verdict
                ),
            );
        } else if s.route != PedalRoute::NonVanishing {
            tally.check(false, format!("correspondence n={n} #{t}: pipelines rejected {}", s.germ));
        }
    }
    for t in 0..trials {
        let n = 1 + t % 3;
        let g = random_normalized_legendrian(&mut rng, n, CORPUS_ORDER);
        let back = differentiate(&g, true).and_then(|d| integrate(&d));
        tally.check(back.as_ref() == Ok(&g), format!("roundtrip I(D(Phi)) n={n} #{t}: Phi = {g}"));
        let identity = compute_normal_field(&g).map(|f| lemma1_check(&g, &f)).unwrap_or(false);
        tally.check(identity, format!("LJ identity n={n} #{t}"));
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), Failure> {
    let mut tally = Tally::default();
    let all = args.suite == Suite::All;
    if all || args.suite == Suite::Proposition {
        proposition(&mut tally, args.trials, args.seed);
    }
    if all || args.suite == Suite::Arnold {
        arnold(&mut tally);
    }
    if all || args.suite == Suite::GkTable {
        gk_table(&mut tally);
    }
    if all || args.suite == Suite::Roundtrip {
        roundtrip(&mut tally, args.trials, args.seed);
    }
    println!("{} checks, {} failures", tally.checks, tally.failures);
    if tally.failures > 0 {
        Err(Failure::Check(format!("{} of {} checks failed", tally.failures, tally.checks)))
    } else {
        Ok(())
    }
}
