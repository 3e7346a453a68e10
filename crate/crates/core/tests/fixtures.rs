mod common;

use std::collections::BTreeSet;

use dockslim_core::{analyze, detect, fix_source, RuleId};

#[test]
fn every_rule_has_two_positive_and_two_negative_fixtures() {
    let fixtures = common::fixtures();
    for rule in RuleId::ALL {
        let positive = fixtures
            .iter()
            .filter(|f| f.expect.iter().any(|(r, _)| *r == rule))
            .count();
        let negative = fixtures
            .iter()
            .filter(|f| f.name.contains("_neg_") && f.expect.iter().all(|(r, _)| *r != rule))
            .filter(|f| f.name.starts_with(prefix(rule)))
            .count();
        assert!(positive >= 2, "{rule}: {positive} positive fixtures");
        assert!(negative >= 2, "{rule}: {negative} negative fixtures");
    }
}

fn prefix(rule: RuleId) -> &'static str {
    match rule {
        RuleId::PipUseNoCacheDir => "pip_",
        RuleId::NpmCacheCleanUseForce => "npm_force_",
        RuleId::MkdirUsrSrcThenRemove => "mkdir_",
        RuleId::RmRecursiveAfterMktempD => "mktemp_",
        RuleId::TarSomethingRmTheSomething => "tar_",
        RuleId::ApkAddUseNoCache => "apk_",
        RuleId::AptGetInstallUseNoRec => "aptrec_",
        RuleId::AptGetInstallThenRemoveAptLists => "aptlists_",
        RuleId::GpgVerifyAscRmAsc => "gpg_",
        RuleId::NpmCacheCleanAfterInstall => "npminstall_",
        RuleId::GemUpdateSystemRmRootGem => "gemroot_",
        RuleId::GemUpdateNoDocument => "gemdoc_",
        RuleId::YumInstallRmVarCacheYum => "yum_",
        RuleId::YarnCacheCleanAfterInstall => "yarn_",
    }
}

#[test]
fn detections_match_annotations() {
    for f in common::fixtures() {
        let found: BTreeSet<(RuleId, usize)> = detect(&analyze(&f.text), &RuleId::ALL)
            .iter()
            .map(|d| (d.rule, d.line()))
            .collect();
        assert_eq!(found, f.expect, "{}", f.name);
    }
}

#[test]
fn not_fixable_matches_annotations() {
    for f in common::fixtures() {
        let found: BTreeSet<(RuleId, usize)> = detect(&analyze(&f.text), &RuleId::ALL)
            .iter()
            .filter(|d| !d.fixable)
            .map(|d| (d.rule, d.line()))
            .collect();
        assert_eq!(found, f.not_fixable, "{}", f.name);
    }
}

#[test]
fn fixed_fixtures_keep_only_not_fixable_smells() {
    for f in common::fixtures() {
        let (report, _) = fix_source(&f.name, &f.text, &RuleId::ALL);
        let residual: BTreeSet<RuleId> = report.residual.iter().map(|d| d.rule).collect();
        let expected: BTreeSet<RuleId> = f.not_fixable.iter().map(|(r, _)| *r).collect();
        assert_eq!(residual, expected, "{}", f.name);
    }
}
