//! Call-graph and scope contract tests against the committed fixtures.

mod common;

use std::collections::BTreeSet;

use chainlint_core::callgraph::{
    build_call_graph, dump_graph, reachable_from, shortest_witness_path, Resolution,
};
use chainlint_core::scope::{
    compute_scope, default_blacklist, find_entry_points, legacy_blacklist_scope, EntryKind,
    EntryPointSpec, ScopeMode,
};
use common::{func, load_model};

#[test]
fn chain_fixture_builds_direct_edges() {
    let model = load_model("calls/chain");
    let graph = build_call_graph(&model);
    assert_eq!(graph.edges.len(), 2);
    assert!(graph
        .edges
        .iter()
        .all(|e| e.resolution == Resolution::Direct));

    let a = func(&model, "example.com/chain", "A");
    let reached = reachable_from(&graph, &BTreeSet::from([a])).unwrap();
    let names: Vec<String> = reached
        .iter()
        .map(|&f| model.tree.func(f).name.clone())
        .collect();
    assert_eq!(names, ["A", "B", "C"]);
}

#[test]
fn empty_seed_set_reaches_nothing() {
    let model = load_model("calls/chain");
    let graph = build_call_graph(&model);
    assert!(reachable_from(&graph, &BTreeSet::new()).unwrap().is_empty());
}

#[test]
fn bogus_seed_is_an_error() {
    let model = load_model("calls/chain");
    let graph = build_call_graph(&model);
    let bogus = chainlint_core::source::FuncId(999);
    let err = reachable_from(&graph, &BTreeSet::from([bogus])).unwrap_err();
    assert!(err.to_string().contains("999"));
}

#[test]
fn interface_call_fans_out_to_all_satisfying_types() {
    let model = load_model("calls/interfaces");
    let graph = build_call_graph(&model);
    let dispatch: Vec<_> = graph
        .edges
        .iter()
        .filter(|e| e.resolution == Resolution::InterfaceDispatch)
        .collect();
    assert_eq!(dispatch.len(), 2);
    let mut targets: Vec<String> = dispatch
        .iter()
        .map(|e| model.tree.func_display(e.callee.unwrap()))
        .collect();
    targets.sort();
    assert_eq!(
        targets,
        [
            "example.com/ifaces.(LogSink).Notify",
            "example.com/ifaces.(NetSink).Notify"
        ]
    );
}

#[test]
fn cycle_terminates_and_reaches_both() {
    let model = load_model("calls/cycle");
    let graph = build_call_graph(&model);
    let a = func(&model, "example.com/cycle", "A");
    let reached = reachable_from(&graph, &BTreeSet::from([a])).unwrap();
    assert_eq!(reached.len(), 2);
}

#[test]
fn witness_path_prefers_fewest_edges() {
    let model = load_model("calls/twopath");
    let graph = build_call_graph(&model);
    let a = func(&model, "example.com/twopath", "A");
    let c = func(&model, "example.com/twopath", "C");
    let path = shortest_witness_path(&graph, &model, a, c).unwrap();
    assert_eq!(path.len(), 1);
    assert_eq!(path[0].callee, c);
}

#[test]
fn witness_path_from_self_is_empty() {
    let model = load_model("calls/twopath");
    let graph = build_call_graph(&model);
    let a = func(&model, "example.com/twopath", "A");
    assert!(shortest_witness_path(&graph, &model, a, a)
        .unwrap()
        .is_empty());
}

#[test]
fn witness_path_unreachable_is_error() {
    let model = load_model("calls/twopath");
    let graph = build_call_graph(&model);
    let a = func(&model, "example.com/twopath", "A");
    let c = func(&model, "example.com/twopath", "C");
    assert!(shortest_witness_path(&graph, &model, c, a).is_err());
}

#[test]
fn witness_tie_breaks_lexicographically() {
    // Root calls beta.Step then alpha.Step; both reach target.Goal in two
    // edges. The witness must route through the lexicographically smaller
    // import path (alpha), not the first call in source order (beta).
    let model = load_model("calls/tie");
    let graph = build_call_graph(&model);
    let root = func(&model, "example.com/tie", "Root");
    let goal = func(&model, "example.com/tie/target", "Goal");
    let path = shortest_witness_path(&graph, &model, root, goal).unwrap();
    assert_eq!(path.len(), 2);
    assert_eq!(
        model.tree.func_display(path[0].callee),
        "example.com/tie/alpha.Step"
    );
}

#[test]
fn dump_graph_is_sorted_tab_separated() {
    let model = load_model("calls/chain");
    let graph = build_call_graph(&model);
    let dump = dump_graph(&model, &graph);
    let lines: Vec<&str> = dump.lines().collect();
    assert_eq!(lines.len(), 2);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert_eq!(
        lines[0],
        "example.com/chain.A\texample.com/chain.B\tchain.go:3\tdirect"
    );
    for l in &lines {
        assert_eq!(l.split('\t').count(), 4);
    }
}

// ---------------------------------------------------------------------------
// Scope
// ---------------------------------------------------------------------------

#[test]
fn minimod_entry_points_match_spec_example() {
    let model = load_model("minimod");
    let entries = find_entry_points(&model, &EntryPointSpec::default());

    let begin = entries.get(&EntryKind::BeginBlock).unwrap();
    assert_eq!(begin.len(), 1);
    assert_eq!(
        model.tree.func_display(*begin.iter().next().unwrap()),
        "example.com/minichain/x/token/keeper.(Keeper).BeginBlock"
    );

    let deliver = entries.get(&EntryKind::DeliverTx).unwrap();
    let mut names: Vec<String> = deliver
        .iter()
        .map(|&f| model.tree.func(f).name.clone())
        .collect();
    names.sort();
    assert_eq!(names, ["Burn", "Transfer"]);

    // InitChain and Commit never appear under the default spec.
    for set in entries.values() {
        for &f in set {
            let n = &model.tree.func(f).name;
            assert_ne!(n, "InitChain");
            assert_ne!(n, "Commit");
        }
    }
    // There is no EndBlock in the fixture → no empty entry set either.
    assert!(!entries.contains_key(&EntryKind::EndBlock));
}

#[test]
fn extra_entry_names_admit_prepare_proposal() {
    let model = load_model("minimod");
    let mut spec = EntryPointSpec::default();
    spec.extra_entry_names.push("PrepareProposal".to_string());
    let entries = find_entry_points(&model, &spec);
    let extra = entries
        .get(&EntryKind::Extra("PrepareProposal".to_string()))
        .unwrap();
    assert_eq!(extra.len(), 1);
}

#[test]
fn whitelist_scope_and_provenance() {
    let model = load_model("minimod");
    let graph = build_call_graph(&model);
    let entries = find_entry_points(&model, &EntryPointSpec::default());
    let scope = compute_scope(&graph, &entries).unwrap();
    assert_eq!(scope.mode, ScopeMode::Whitelist);

    // moveCoins is reachable from BeginBlock (via mint) and from Transfer.
    let move_coins = func(
        &model,
        "example.com/minichain/x/token/keeper",
        "(Keeper).moveCoins",
    );
    let prov = scope.provenance.get(&move_coins).unwrap();
    assert!(prov.contains(&EntryKind::BeginBlock));
    assert!(prov.contains(&EntryKind::DeliverTx));

    // cli functions are not reachable from any entry.
    let print_total = func(&model, "example.com/minichain/cli", "PrintTotal");
    assert!(!scope.contains(print_total));

    // Test-file declarations are never members.
    for &f in &scope.members {
        assert!(!model.tree.func(f).is_test_file);
    }

    // Every member carries non-empty provenance.
    for &f in &scope.members {
        assert!(!scope.provenance.get(&f).unwrap().is_empty());
    }
}

#[test]
fn empty_entries_empty_scope() {
    let model = load_model("minimod");
    let graph = build_call_graph(&model);
    let scope = compute_scope(&graph, &std::collections::BTreeMap::new()).unwrap();
    assert!(scope.members.is_empty());
}

#[test]
fn blacklist_scope_filters_by_import_path_substring() {
    let model = load_model("minimod");
    let scope = legacy_blacklist_scope(
        &model,
        &["mocks".to_string(), "cli".to_string(), "simulation".to_string()],
    );
    assert_eq!(scope.mode, ScopeMode::Blacklist);
    assert!(scope.provenance.is_empty());
    for &f in &scope.members {
        let fd = model.tree.func(f);
        assert!(!fd.is_test_file);
        assert!(!model
            .tree
            .package(fd.package)
            .import_path
            .contains("cli"));
    }
    // PrintTotal excluded; keeper functions retained.
    let move_coins = func(
        &model,
        "example.com/minichain/x/token/keeper",
        "(Keeper).moveCoins",
    );
    assert!(scope.contains(move_coins));

    // Empty blacklist keeps every non-test function.
    let all = legacy_blacklist_scope(&model, &[]);
    let non_test = model
        .tree
        .func_ids()
        .filter(|&f| !model.tree.func(f).is_test_file)
        .count();
    assert_eq!(all.members.len(), non_test);

    // A blacklist matching everything empties the scope.
    let none = legacy_blacklist_scope(&model, &["example.com".to_string()]);
    assert!(none.members.is_empty());

    // The documented default exists and is non-empty.
    assert!(!default_blacklist().is_empty());
}

#[test]
fn extra_entries_grow_scope_monotonically() {
    let model = load_model("minimod");
    let graph = build_call_graph(&model);
    let base = compute_scope(&graph, &find_entry_points(&model, &EntryPointSpec::default()))
        .unwrap();
    let mut spec = EntryPointSpec::default();
    spec.extra_entry_names.push("PrepareProposal".to_string());
    let grown = compute_scope(&graph, &find_entry_points(&model, &spec)).unwrap();
    assert!(base.members.is_subset(&grown.members));
    assert!(grown.members.len() > base.members.len());
}

#[test]
fn pointer_receivers_resolve_like_value_receivers() {
    let model = load_model("calls/pointers");
    let graph = build_call_graph(&model);

    // `k.step()` on a `*Keeper` receiver and the method value `k.helper`
    // both resolve: methods auto-dereference in Go.
    assert!(graph
        .edges
        .iter()
        .all(|e| e.resolution == Resolution::Direct));
    let entry = func(&model, "example.com/pointers", "(Keeper).EndBlock");
    let reached = reachable_from(&graph, &BTreeSet::from([entry])).unwrap();
    let names: BTreeSet<String> = reached
        .iter()
        .map(|&f| model.tree.func(f).name.clone())
        .collect();
    assert_eq!(
        names,
        BTreeSet::from(["EndBlock".into(), "step".into(), "helper".into()])
    );
}
