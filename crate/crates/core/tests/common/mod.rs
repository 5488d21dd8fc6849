//! Property checks shared by the property suite and the acceptance run.
//!
//! Each check returns `Err` with a description of the first violation.

#![allow(dead_code)]

use extauto::compat::{Analysis, SPair};
use extauto::cohomology::{torsor_act, Cochain};
use extauto::corpus::{self, descriptor};
use extauto::extensions::{
    are_equivalent, extends, factor_system, is_connecting, is_split, pullback, pushout, FactorSystem,
};
use extauto::{Caps, Perm};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every non-heavy catalog entry with its analysis.
pub fn default_corpus() -> Vec<(&'static str, Analysis)> {
    let caps = Caps::default();
    corpus::NAMES
        .iter()
        .filter(|n| !descriptor(n).unwrap().heavy)
        .map(|&n| (n, Analysis::new(&corpus::example(n).unwrap(), &caps).unwrap()))
        .collect()
}

fn product(a: &Analysis, t: usize, u: usize) -> usize {
    let s = a.s();
    s.index_of(&s.pair(t).compose(&s.pair(u))).expect("S is closed")
}

/// `λ(θθ') = λ(θ)θ' + λ(θ')` for all `θ, θ' ∈ S`, with `λ(θ)` read off the
/// fiber and `ζθ'` from the induced map on `H²`.
pub fn derivation_law(a: &Analysis) -> Check {
    let n = a.s().order();
    let lam = a.lambda_table().map_err(err)?.to_vec();
    let stars: Vec<Vec<usize>> = (0..n).map(|t| a.theta_star(t)).collect::<Result<_, _>>().map_err(err)?;
    let (h2, m) = (a.h2(), a.module());
    for t in 0..n {
        for u in 0..n {
            let lhs = lam[product(a, t, u)];
            let rhs = h2.add(m, stars[u][lam[t]], lam[u]);
            ensure!(lhs == rhs, "λ(θθ') ≠ λ(θ)θ' + λ(θ') at ({t}, {u})");
        }
    }
    Ok(())
}

/// Equivariance, antisymmetry and additivity of `s(E, E')`.
pub fn difference_map(a: &Analysis) -> Check {
    let fib = a.fiber();
    let cls = fib.classes();
    let (h2, m) = (fib.h2(), fib.module());
    let k = cls.len();
    let mut d = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            d[i][j] = fib.diff(&cls[i], &cls[j]).map_err(err)?;
        }
    }
    for i in 0..k {
        ensure!(d[i][i] == 0, "s(E, E) ≠ 0 at {i}");
        for j in 0..k {
            ensure!(d[i][j] == h2.neg(m, d[j][i]), "antisymmetry fails at ({i}, {j})");
            for l in 0..k {
                ensure!(
                    d[i][l] == h2.add(m, d[i][j], d[j][l]),
                    "additivity fails at ({i}, {j}, {l})"
                );
            }
        }
    }
    for t in 0..a.s().order() {
        let star = a.theta_star(t).map_err(err)?;
        let moved: Vec<FactorSystem> = cls.iter().map(|c| a.act(t, c)).collect::<Result<_, _>>().map_err(err)?;
        for i in 0..k {
            for j in 0..k {
                let lhs = fib.diff(&moved[i], &moved[j]).map_err(err)?;
                ensure!(lhs == star[d[i][j]], "equivariance fails for θ = {t} at ({i}, {j})");
            }
        }
    }
    Ok(())
}

/// `X·ζ` has label `label(X) + ζ`, distinct classes are inequivalent and any
/// two classes differ by some `ζ`.
pub fn torsor(a: &Analysis) -> Check {
    let caps = a.caps();
    let fib = a.fiber();
    let cls = fib.classes();
    let (h2, m) = (fib.h2(), fib.module());
    for (i, x) in cls.iter().enumerate() {
        let lx = fib.label(x).map_err(err)?;
        ensure!(lx == i, "class {i} carries label {lx}");
        for (z, c) in h2.classes().iter().enumerate() {
            let moved = torsor_act(x, m, c).map_err(err)?;
            ensure!(fib.label(&moved).map_err(err)? == h2.add(m, lx, z), "X·ζ misplaced at ({i}, {z})");
        }
        for (j, y) in cls.iter().enumerate().take(i) {
            ensure!(!are_equivalent(x, y, caps).map_err(err)?, "classes {i} and {j} are equivalent");
        }
    }
    Ok(())
}

/// `B ⊴ S` and every element of `B` fixes every class in the orbit of `E`.
pub fn b_normal_and_trivial(a: &Analysis) -> Check {
    let s = a.s();
    ensure!(s.perm_group().is_normal(s.b()), "B is not normal in S");
    let orbit = a.orbit_and_stabilizer().map_err(err)?.orbit;
    let cls = a.fiber().classes();
    for &b in s.b() {
        for &x in &orbit {
            let moved = a.act(b, &cls[x]).map_err(err)?;
            ensure!(a.fiber().label(&moved).map_err(err)? == x, "B moves class {x}");
        }
    }
    Ok(())
}

/// Pushouts and pullbacks of split classes stay split.
pub fn split_preservation(a: &Analysis) -> Check {
    let caps = a.caps();
    let q = a.extension().q();
    for (i, x) in a.fiber().classes().iter().enumerate() {
        if !is_split(x, caps).map_err(err)? {
            continue;
        }
        for alpha in a.aut_h().elements() {
            ensure!(is_split(&pushout(alpha, x).map_err(err)?, caps).map_err(err)?, "α_* of split class {i} not split");
        }
        for beta in a.aut_q().elements() {
            let pb = pullback(&beta.images, q, x).map_err(err)?;
            ensure!(is_split(&pb, caps).map_err(err)?, "β^* of split class {i} not split");
        }
    }
    Ok(())
}

/// `γ ∈ Aut(G, H)` written on pairs `(n, q)` of the factor system.
fn on_pairs(a: &Analysis, gamma: &Perm) -> Perm {
    let e = a.extension();
    Perm::new((0..e.g().order()).map(|x| e.to_pair_index(gamma.apply(e.from_pair_index(x)))).collect())
}

/// `(α, β, σ)` with `γ(h, q) = (α(h)σ(q), β(q))`.
fn decompose(nh: usize, nq: usize, gp: &Perm) -> (Perm, Perm, Cochain) {
    let alpha = Perm::new((0..nh).map(|n| gp.apply(n * nq) / nq).collect());
    let beta = Perm::new((0..nq).map(|q| gp.apply(q) % nq).collect());
    let sigma = (0..nq).map(|q| gp.apply(q) / nq).collect();
    (alpha, beta, sigma)
}

/// Every `γ ∈ Aut(G, H)` is `(h, q) ↦ (α(h)σ(q), β(q))` for a connecting
/// `σ`; when the normalized map space is small, the connecting `σ` found by
/// brute force are exactly those coming from `Aut(G, H)`. Composition:
/// `γ'γ` corresponds to `α'σ · σ'β`.
pub fn map_bijection_and_composition(a: &Analysis) -> Check {
    let rel = a.relative().map_err(err)?;
    let fs = a.factor_system();
    let (h, q) = (fs.h(), fs.q());
    let (nh, nq) = (h.order(), q.order());
    let gammas: Vec<Perm> = rel.perms.elements().iter().map(|g| on_pairs(a, g)).collect();
    let parts: Vec<(Perm, Perm, Cochain)> = gammas.iter().map(|g| decompose(nh, nq, g)).collect();
    for (i, (al, be, si)) in parts.iter().enumerate() {
        ensure!(si[0] == 0, "σ not normalized for γ {i}");
        ensure!(is_connecting(fs, fs, al, be, si), "σ of γ {i} is not connecting");
        let rebuilt = Perm::new(
            (0..nh * nq)
                .map(|x| h.mul(al.apply(x / nq), si[x % nq]) * nq + be.apply(x % nq))
                .collect(),
        );
        ensure!(rebuilt == gammas[i], "γ {i} differs from its (α, β, σ) form");
    }

    // brute force over all normalized σ for each (α, β) in the image of res
    let space = (nh as u128).pow(nq as u32 - 1);
    if space <= 50_000 {
        let mut from_aut: std::collections::BTreeSet<(Vec<usize>, Vec<usize>, Cochain)> = Default::default();
        for (al, be, si) in &parts {
            from_aut.insert((al.images.clone(), be.images.clone(), si.clone()));
        }
        let pairs: std::collections::BTreeSet<(Vec<usize>, Vec<usize>)> =
            from_aut.iter().map(|(x, y, _)| (x.clone(), y.clone())).collect();
        let mut found = 0usize;
        for (al, be) in &pairs {
            let (al, be) = (Perm::new(al.clone()), Perm::new(be.clone()));
            for code in 0..space as usize {
                let mut c = code;
                let mut sigma = vec![0; nq];
                for v in sigma.iter_mut().skip(1) {
                    *v = c % nh;
                    c /= nh;
                }
                if is_connecting(fs, fs, &al, &be, &sigma) {
                    found += 1;
                    ensure!(
                        from_aut.contains(&(al.images.clone(), be.images.clone(), sigma)),
                        "connecting σ without an automorphism"
                    );
                }
            }
        }
        ensure!(found == from_aut.len(), "brute force finds {found} maps, Aut(G,H) has {}", from_aut.len());
    }

    // composition: all pairs when small, otherwise against generators
    let n = gammas.len();
    let others: Vec<usize> = if n <= 200 { (0..n).collect() } else { rel.perms.generators() };
    for i in 0..n {
        for &j in &others {
            let (al2, _, si2) = &parts[j];
            let (_, be, si) = &parts[i];
            let composed = gammas[j].compose(&gammas[i]);
            let (_, _, sc) = decompose(nh, nq, &composed);
            let law: Cochain = (0..nq).map(|x| h.mul(al2.apply(si[x]), si2[be.apply(x)])).collect();
            ensure!(sc == law, "composition law fails for ({j}) after ({i})");
        }
    }
    Ok(())
}

/// `α_* E ≡ E` for `α = c_g|H` whenever `π(g) ∈ zQ`.
pub fn conj_theorem(a: &Analysis) -> Check {
    let e = a.extension();
    let fs = factor_system(e);
    let zq = e.q().center();
    for g in 0..e.g().order() {
        if !zq.contains(e.proj().apply(g)) {
            continue;
        }
        let pushed = pushout(&e.conj_on_h(g), &fs).map_err(err)?;
        ensure!(are_equivalent(&pushed, &fs, a.caps()).map_err(err)?, "c_{g} moves E");
    }
    Ok(())
}

/// `(α, β)` extends to `G` ⇔ `θ ∈ Iso_S E` ⇔ `λ(θ) = 0` ⇔ `θ ∈ res(Aut(G,H))`.
pub fn mt_agreement(a: &Analysis) -> Check {
    let stab = a.stabilizer().map_err(err)?.to_vec();
    let lam = a.lambda_table().map_err(err)?.to_vec();
    let image: std::collections::BTreeSet<usize> = a.res_table().map_err(err)?.into_iter().collect();
    for t in 0..a.s().order() {
        let SPair { alpha, beta } = a.s().pair(t);
        let ext = extends(a.extension(), &alpha, &beta, a.caps()).map_err(err)?;
        if let Some(gamma) = &ext {
            let e = a.extension();
            ensure!(e.g().is_automorphism(gamma), "witness for θ = {t} is not an automorphism");
            ensure!(
                (0..e.h().order()).all(|x| gamma.apply(e.h_elem(x)) == e.h_elem(alpha.apply(x))),
                "witness for θ = {t} does not restrict to α"
            );
        }
        let flags = [
            ext.is_some(),
            stab.binary_search(&t).is_ok(),
            lam[t] == a.h2_zero(),
            image.contains(&t),
        ];
        ensure!(flags.iter().all(|&f| f == flags[0]), "θ = {t}: extends/stabilizer/ker λ/res disagree {flags:?}");
    }
    Ok(())
}

/// For centric extensions: `p` is injective and `H̄¹ = H¹`.
pub fn centric_degenerations(a: &Analysis) -> Check {
    if !a.is_centric() {
        return Ok(());
    }
    ensure!(a.outer().is_injective(), "centric but Φ not injective");
    let d = a.decompose_sbar().map_err(err)?;
    ensure!(d.p_injective, "p not injective");
    let basic = a.basic_sequence().map_err(err)?;
    ensure!(
        basic.order_of("H1bar(Q,zH)") == Some(a.h1().order() as u64),
        "H1bar ≠ H1"
    );
    let o = d.o_sequence.ok_or("no O-sequence for a centric extension")?;
    ensure!(o.is_exact(), "O-sequence not exact: {:?}", o.failures());
    Ok(())
}

pub fn normal_series(a: &Analysis) -> Check {
    let s = a.normal_series().map_err(err)?;
    ensure!(s.holds(), "normal series: {s:?}");
    Ok(())
}

pub fn five_term(a: &Analysis) -> Check {
    let r = a.solvability_report().map_err(err)?;
    ensure!(r.five_term.is_exact(), "five-term sequence: {:?}", r.five_term.failures());
    Ok(())
}

pub type Property = (&'static str, fn(&Analysis) -> Check);

pub const PROPERTIES: &[Property] = &[
    ("derivation law for lambda_E", derivation_law),
    ("difference map equivariance/antisymmetry/additivity", difference_map),
    ("torsor simple transitivity", torsor),
    ("B normal in S, trivial on O_E", b_normal_and_trivial),
    ("split preservation under pushout/pullback", split_preservation),
    ("map bijection and composition law", map_bijection_and_composition),
    ("conjugation theorem", conj_theorem),
    ("extends = stabilizer = ker lambda", mt_agreement),
    ("centric degenerations", centric_degenerations),
    ("normal-series quotient isomorphisms", normal_series),
    ("five-term exactness", five_term),
];

/// Runs one property over the corpus, collecting every failing entry.
pub fn run_property(corpus: &[(&str, Analysis)], f: fn(&Analysis) -> Check) -> Check {
    let failures: Vec<String> = corpus
        .iter()
        .filter_map(|(n, a)| f(a).err().map(|e| format!("{n}: {e}")))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}
