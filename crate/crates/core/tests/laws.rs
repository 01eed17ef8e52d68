use codesign::monads::laws::{check_monad_laws, check_monad_laws_with, FullPowerset, LawConfig};
use codesign::monads::markov::check_markov_axioms;
use codesign::{Execution, MonadKind};

#[test]
fn every_monad_is_lawful_on_carriers_up_to_three() {
    let cfg = LawConfig::default();
    for m in MonadKind::ALL {
        let r = check_monad_laws(&m, &cfg).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.results.iter().all(|l| l.checked > 0 || l.law == "affine"), "{r}");
    }
}

#[test]
fn every_monad_gives_a_markov_category() {
    let cfg = LawConfig::default();
    for m in MonadKind::ALL {
        let r = check_markov_axioms(m, &cfg).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn nonaffine_control_is_caught() {
    let r = check_monad_laws(&FullPowerset, &LawConfig::default()).unwrap();
    let failing: Vec<_> = r.failures().map(|l| l.law.as_str()).collect();
    assert_eq!(failing, ["affine", "delete_naturality"]);
}

#[test]
fn reports_do_not_depend_on_execution_strategy() {
    let cfg = LawConfig { seed: 7, ..LawConfig::default() };
    for m in [MonadKind::Dist, MonadKind::Powerset] {
        let a = check_monad_laws_with(Execution::Sequential, &m, &cfg).unwrap();
        let b = check_monad_laws_with(Execution::default(), &m, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
