// Command-line front end: instance validation, chain and tunnel distances,
// hypothesis checks, metrization pipelines, named verification suites, and
// the built-in example catalog.
//
// Exit status: 0 all checks pass, 2 some checked property failed (the
// report carries a witness), 1 operational error (bad input, budget).

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covergauge/builtins.hpp"
#include "covergauge/io.hpp"

using namespace covergauge;

namespace {

struct CommonOpts {
    std::string instance;
    std::string format = "human";
    int depth = 4;
    int cap = 4096;
    bool emit_matrix = false;
    std::string emit_trace;
    std::string dev, gauge, tun, cover;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_instance = true) {
    auto* opt = cmd->add_option("--instance", o.instance,
                                "instance document path or built-in name");
    if (needs_instance) opt->required();
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"human", "machine"}));
    cmd->add_option("--depth", o.depth, "pipeline depth (development truncation)");
    cmd->add_option("--cap", o.cap, "group enumeration cap");
    cmd->add_flag("--emit-matrix", o.emit_matrix, "include the distance matrix");
    cmd->add_option("--emit-trace", o.emit_trace, "write the pipeline trace to a file");
    cmd->add_option("--dev", o.dev, "development name (default: first)");
    cmd->add_option("--gauge", o.gauge, "gauge name (default: first)");
    cmd->add_option("--tunnels", o.tun, "tunnel system name (default: first)");
    cmd->add_option("--cover", o.cover, "cover name (default: first)");
}

int finish(Report& rep, const CommonOpts& o) {
    if (!rep.trace.empty() && !o.emit_trace.empty()) {
        ojson jt = ojson::array();
        for (const auto& s : rep.trace) {
            ojson t;
            t["stage"] = s.stage;
            t["detail"] = s.detail;
            jt.push_back(t);
        }
        std::ofstream out(o.emit_trace);
        out << jt.dump(2) << "\n";
    }
    std::cout << rep.emit(o.format == "machine");
    return rep.any_fail() ? 2 : 0;
}

Development pick_development(const InstanceBundle& b, const CommonOpts& o) {
    Development dev = InstanceBundle::pick(b.developments, o.dev, "development");
    if (o.depth > 0 && static_cast<int>(dev.levels.size()) > o.depth)
        dev.levels.resize(static_cast<size_t>(o.depth));
    return dev;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int cmd_validate(const CommonOpts& o) {
    Report rep;
    rep.command = "validate";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    ValidationReport v = validate_instance(b.inst);
    rep.verdict("instance", v.ok, v.ok ? "" : v.rejected_rule + " " + v.witness);
    rep.info("discrete", v.discrete ? "true" : "false");
    rep.info("bornology_directed", v.bornology_directed ? "true" : "false");
    if (!v.duplicate_basis.empty())
        rep.info("duplicate_basis_entries", std::to_string(v.duplicate_basis.size()));
    if (b.group) {
        rep.info("group_elements", std::to_string(b.group->elements.size()));
        rep.info("group_complete", b.group->complete ? "true" : "false");
    }
    if (b.horizons) rep.info("horizons", std::to_string(b.horizons->depth()));
    return finish(rep, o);
}

int cmd_au(const CommonOpts& o) {
    Report rep;
    rep.command = "au";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    Development dev = pick_development(b, o);
    ExtGauge rho = au_distance(b.inst, dev);
    rep.info("levels", std::to_string(dev.levels.size()));
    rep.info("elements", std::to_string(au_weights(dev).elements.size()));
    Verdict basis_cond = is_development(dev.levels, b.inst.n);
    rep.info("development_basis_condition",
             basis_cond.pass ? "true" : "false (" + basis_cond.witness + ")");
    Verdict three = check_k_development(dev, 3);
    rep.info("three_refining", three.pass ? "true" : "false");
    if (three.pass) {
        InclusionReport sw = verify_sandwich(b.inst, dev, rho);
        rep.verdict("sandwich", sw.pass, sw.witness);
    } else {
        InclusionReport sw = verify_right_sandwich(b.inst, dev, rho);
        rep.verdict("right_sandwich", sw.pass, sw.witness);
    }
    Partition crev = crevasse_partition(rho);
    rep.info("crevasses", std::to_string(crev.blocks.size()));
    if (o.emit_matrix) rep.set_matrix(rho);
    return finish(rep, o);
}

int cmd_tunnel(const CommonOpts& o) {
    Report rep;
    rep.command = "tunnel";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    const ExtGauge& rho = InstanceBundle::pick(b.gauges, o.gauge, "gauge");
    const TunnelSystem& t = InstanceBundle::pick(b.tunnels, o.tun, "tunnel system");
    TunnelReport tv = validate_tunnel_system(rho, t);
    rep.verdict("tunnel_system", tv.pass, tv.failed_condition + " " + tv.witness);
    if (!tv.pass) return finish(rep, o);
    ExtGauge sigma = tunnel_distance(b.inst, rho, t);
    if (!t.empty()) rep.info("lambda0", t.lambda0().str());
    TunnelDistanceReport td = verify_theorem_3_6(b.inst, rho, t, sigma);
    rep.verdict("distance_checks", td.pass, td.pass ? "" : td.failures.front());
    if (o.emit_matrix) rep.set_matrix(sigma);
    return finish(rep, o);
}

int cmd_check(const CommonOpts& o) {
    Report rep;
    rep.command = "check";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    GroupAction ga = b.group_or_trivial();
    QuotientSpace q = orbit_quotient(b.inst, ga);
    HypothesisReport h = hypothesis_report(b.inst, q);
    rep.info("hausdorff", h.x_hausdorff.pass ? "true" : "false (" + h.x_hausdorff.witness + ")");
    rep.info("regular", h.x_regular.pass ? "true" : "false (" + h.x_regular.witness + ")");
    rep.info("quotient_hausdorff",
             h.q_hausdorff.pass ? "true" : "false (" + h.q_hausdorff.witness + ")");
    rep.info("quotient_regular",
             h.q_regular.pass ? "true" : "false (" + h.q_regular.witness + ")");
    rep.info("paracompact", "true (finite)");
    rep.info("orbits", std::to_string(q.orbit_count));
    if (b.horizons) {
        HorizonEquiregReport er = equiregularity_horizon(*b.horizons);
        rep.tri("equiregular", er.status, er.witness);
        HorizonNearProperReport np = near_properness_horizon(*b.horizons);
        rep.tri("nearly_proper", np.status,
                np.status == Tri::yes ? "stable from horizon " + std::to_string(np.stable_from)
                                      : np.witness);
    } else {
        EquiregResult er = equiregularity_check(b.inst, ga);
        rep.tri("equiregular", er.status,
                er.status == Tri::no ? "x=" + std::to_string(er.fail_x) + " U=" + er.fail_u.str()
                                     : er.qualifier);
        NearProperResult np = near_properness_check(b.inst, ga);
        rep.tri("nearly_proper", np.status,
                np.status == Tri::no ? "A=" + np.fail_a.str() + " B=" + np.fail_b.str()
                                     : np.qualifier);
    }
    for (const auto& [name, g] : b.gauges) {
        AxiomReport ax = gauge_axioms_check(b.inst, g);
        rep.verdict("gauge_axioms:" + name, ax.pass, ax.failed_axiom + " " + ax.witness);
        Verdict pr = is_proper_gauge(b.inst, g);
        rep.info("proper:" + name, pr.pass ? "true" : "false (" + pr.witness + ")");
        Verdict inv = is_invariant_gauge(ga, g);
        rep.info("invariant:" + name, inv.pass ? "true" : "false (" + inv.witness + ")");
    }
    return finish(rep, o);
}

int cmd_metrize(const CommonOpts& o) {
    Report rep;
    rep.command = "metrize";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    GroupAction ga = b.group_or_trivial();
    auto targets = b.targets.empty() ? default_targets(b.inst) : b.targets;
    GaugeFamily fam = metrize(b.inst, ga, targets, o.depth);
    rep.info("targets", std::to_string(targets.size()));
    rep.info("separating", fam.separating ? "true" : "false");
    if (!fam.qualifier.empty()) rep.info("qualified", fam.qualifier);
    for (size_t i = 0; i < fam.gauges.size(); ++i) {
        Verdict inv = is_invariant_gauge(ga, fam.gauges[i]);
        rep.verdict("invariant:" + fam.tags[i], inv.pass, inv.witness);
    }
    if (o.emit_matrix && !fam.gauges.empty()) rep.set_matrix(fam.gauges.front());
    rep.trace = fam.trace.steps;
    return finish(rep, o);
}

int cmd_proper_metrize(const CommonOpts& o) {
    Report rep;
    rep.command = "proper-metrize";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    GroupAction ga = b.group_or_trivial();
    auto targets = b.targets.empty() ? default_targets(b.inst) : b.targets;
    std::vector<PointSet> exh = b.exhaustion;
    if (exh.empty()) exh.push_back(b.inst.all_points());
    GaugeFamily p = metrize(b.inst, ga, targets, o.depth);
    GaugeFamily fam = proper_metrize(b.inst, ga, exh, p, o.depth);
    rep.info("separating", fam.separating ? "true" : "false");
    if (!fam.qualifier.empty()) rep.info("qualified", fam.qualifier);
    for (size_t i = 0; i < fam.gauges.size(); ++i) {
        Verdict inv = is_invariant_gauge(ga, fam.gauges[i]);
        Verdict pr = is_proper_gauge(b.inst, fam.gauges[i]);
        rep.verdict("invariant:" + fam.tags[i], inv.pass, inv.witness);
        rep.verdict("proper:" + fam.tags[i], pr.pass, pr.witness);
    }
    if (o.emit_matrix && !fam.gauges.empty()) rep.set_matrix(fam.gauges.front());
    rep.trace = fam.trace.steps;
    return finish(rep, o);
}

int cmd_single_metrize(const CommonOpts& o) {
    Report rep;
    rep.command = "single-metrize";
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    GroupAction ga = b.group_or_trivial();
    auto targets = b.targets.empty() ? default_targets(b.inst) : b.targets;
    GaugeFamily fam = metrize(b.inst, ga, targets, o.depth);
    const ExtGauge* proper_member = nullptr;
    ExtGauge pm;
    if (!o.gauge.empty()) {
        pm = InstanceBundle::pick(b.gauges, o.gauge, "gauge");
        proper_member = &pm;
    }
    SingleMetric sm = single_metrize(b.inst, fam, proper_member);
    AxiomReport ax = gauge_axioms_check(b.inst, sm.metric, true);
    rep.verdict("metric_axioms", ax.pass, ax.failed_axiom + " " + ax.witness);
    Verdict inv = is_invariant_gauge(ga, sm.metric);
    rep.verdict("invariant", inv.pass, inv.witness);
    rep.verdict("equivalent_topology", sm.equivalent.pass, sm.equivalent.witness);
    if (proper_member) {
        Verdict pr = is_proper_gauge(b.inst, sm.metric);
        rep.verdict("proper", pr.pass, pr.witness);
    }
    if (o.emit_matrix) rep.set_matrix(sm.metric);
    rep.trace = fam.trace.steps;
    return finish(rep, o);
}

// ---------------------------------------------------------------------------
// Named verification suites.

void verify_thm2_1(Report& rep, const InstanceBundle& b, const CommonOpts& o) {
    Development dev = pick_development(b, o);
    ExtGauge rho = au_distance(b.inst, dev);
    AuWeights w = au_weights(dev);
    if (w.elements.size() <= 12) {
        ExtGauge oracle = au_oracle(b.inst, dev, static_cast<int>(w.elements.size()));
        rep.verdict("oracle_equality", rho == oracle);
    } else {
        rep.info("oracle_equality", "skipped (more than 12 elements)");
    }
    Verdict three = check_k_development(dev, 3);
    rep.info("three_refining", three.pass ? "true" : "false");
    if (three.pass) {
        InclusionReport sw = verify_sandwich(b.inst, dev, rho);
        rep.verdict("sandwich", sw.pass, sw.witness);
        Partition crev = crevasse_partition(rho);
        Partition comp = chain_components(dev.levels[0], b.inst.n);
        rep.verdict("crevasses_equal_first_level_components", crev.blocks == comp.blocks);
    } else {
        InclusionReport sw = verify_right_sandwich(b.inst, dev, rho);
        rep.verdict("right_sandwich", sw.pass, sw.witness);
    }
    AxiomReport ax = gauge_axioms_check(b.inst, rho);
    rep.verdict("gauge_axioms", ax.pass, ax.failed_axiom + " " + ax.witness);
}

void verify_lem3_4(Report& rep, const InstanceBundle& b, const CommonOpts& o) {
    Development dev = pick_development(b, o);
    ExtGauge rho = au_distance(b.inst, dev);
    std::vector<PointSet> samples{PointSet(), b.inst.all_points()};
    for (int x = 0; x < b.inst.n; ++x) samples.push_back(PointSet::single(x));
    InclusionReport r = verify_lemma_3_4(b.inst, dev, rho, samples);
    rep.verdict("inclusions", r.pass, r.witness);
}

void verify_thm3_3(Report& rep, const InstanceBundle& b, const CommonOpts& o) {
    Development dev = pick_development(b, o);
    ExtGauge rho = au_distance(b.inst, dev);
    bool all_proper = true;
    for (size_t l = 0; l < dev.levels.size(); ++l) {
        Verdict v = is_proper_cover(b.inst, dev.levels[l]);
        rep.info("level_" + std::to_string(l + 1) + "_proper", v.pass ? "true" : "false");
        if (!v.pass) all_proper = false;
    }
    Verdict gp = is_proper_gauge(b.inst, rho);
    rep.info("distance_proper", gp.pass ? "true" : "false");
    rep.verdict("properness_biconditional", all_proper == gp.pass);
}

void verify_thm3_6(Report& rep, const InstanceBundle& b, const CommonOpts& o) {
    const ExtGauge& rho = InstanceBundle::pick(b.gauges, o.gauge, "gauge");
    const TunnelSystem& t = InstanceBundle::pick(b.tunnels, o.tun, "tunnel system");
    ExtGauge sigma = tunnel_distance(b.inst, rho, t);
    TunnelDistanceReport r = verify_theorem_3_6(b.inst, rho, t, sigma);
    rep.verdict("tunnel_distance_checks", r.pass, r.pass ? "" : r.failures.front());
}

void verify_thm3_7(Report& rep, const InstanceBundle& b, const CommonOpts& o) {
    const ExtGauge& rho = InstanceBundle::pick(b.gauges, o.gauge, "gauge");
    const TunnelSystem& t = InstanceBundle::pick(b.tunnels, o.tun, "tunnel system");
    ExtGauge sigma = tunnel_distance(b.inst, rho, t);
    PropernessTransferReport r = verify_theorem_3_7(b.inst, rho, t, sigma);
    rep.info("sigma_proper", r.sigma_proper.pass ? "true" : "false");
    rep.info("rho_proper", r.rho_proper.pass ? "true" : "false");
    rep.info("tunnels_proper", r.tunnels_proper.pass ? "true" : "false");
    rep.verdict("biconditional", r.biconditional);
    rep.verdict("covering_inclusion", r.inclusion_pass, r.inclusion_witness);
    rep.verdict("converse_facts", r.converse_pass, r.converse_witness);
}

void verify_lem4_3(Report& rep, InstanceBundle& b, const CommonOpts& o) {
    GroupAction ga = b.group_or_trivial();
    const ExtGauge& rho = InstanceBundle::pick(b.gauges, o.gauge, "gauge");
    const TunnelSystem& t = InstanceBundle::pick(b.tunnels, o.tun, "tunnel system");
    TunnelSystem gt = g_saturate_tunnels(b.inst, ga, rho, t);
    TunnelReport tv = validate_tunnel_system(rho, gt);
    rep.verdict("conditions", tv.pass, tv.failed_condition);
    Verdict inv = is_invariant_tunnels(ga, gt);
    rep.verdict("invariant", inv.pass, inv.witness);
    Verdict pr = is_proper_tunnel_system(b.inst, gt);
    rep.verdict("proper", pr.pass, pr.witness);
    TunnelSystem gt2 = g_saturate_tunnels(b.inst, ga, rho, gt);
    rep.verdict("idempotent", gt2 == gt);
}

void verify_lem5_1(Report& rep, InstanceBundle& b, const CommonOpts& o) {
    GroupAction ga = b.group_or_trivial();
    EquiregResult w = equiregularity_check(b.inst, ga);
    rep.tri("equiregular", w.status);
    if (w.status != Tri::yes) return;
    QuotientSpace q = orbit_quotient(b.inst, ga);
    Cover u = b.covers.empty()
                  ? saturate_cover(ga, Cover(b.inst.basis))
                  : saturate_cover(ga, InstanceBundle::pick(b.covers, o.cover, "cover"));
    Cover out = stone_star_refine(b.inst, ga, q, u, w);
    Verdict sr = is_star_refinement(out, u, b.inst.n);
    rep.verdict("star_refines", sr.pass, sr.witness);
    Verdict ic = is_invariant_cover(ga, out);
    rep.verdict("invariant", ic.pass, ic.witness);
    Cover out2 = stone_star_refine(b.inst, ga, q, out, w);
    Verdict four = k_refines(out2, u, 4);
    rep.verdict("twice_4_refines", four.pass, four.witness);
}

void verify_prop5_2(Report& rep, const InstanceBundle& b, const CommonOpts&) {
    if (b.exhaustion.empty()) throw Error(Errc::validation_error, "no exhaustion in document");
    ExhaustionDecomposition dec = exhaustion_decomposition(b.inst, b.exhaustion);
    DecompositionReport r = verify_decomposition(b.inst, dec);
    rep.verdict("decomposition_invariants", r.pass, r.pass ? "" : r.failures.front());
}

void verify_thm1_1(Report& rep, InstanceBundle& b, const CommonOpts& o) {
    GroupAction ga = b.group_or_trivial();
    EquiregResult er = equiregularity_check(b.inst, ga);
    auto targets = b.targets.empty() ? default_targets(b.inst) : b.targets;
    bool succeeded = false;
    std::string fail_reason;
    try {
        GaugeFamily fam = metrize(b.inst, ga, targets, o.depth);
        succeeded = true;
        for (size_t i = 0; i < fam.gauges.size(); ++i) {
            Verdict inv = is_invariant_gauge(ga, fam.gauges[i]);
            rep.verdict("invariant:" + fam.tags[i], inv.pass, inv.witness);
            const auto& t = targets[i];
            PointSet ball = fam.gauges[i].ball_lt(t.x, ExtDyadic(Dyadic(1, 1)));
            rep.verdict("half_ball_in_target:" + fam.tags[i],
                        ball.subset_of(b.inst.basis[static_cast<size_t>(t.basis_index)]));
        }
        rep.info("separating", fam.separating ? "true" : "false");
    } catch (const Error& e) {
        fail_reason = e.what();
    }
    rep.verdict("coherence", succeeded == (er.status == Tri::yes), succeeded ? "" : fail_reason);
}

void verify_thm1_3(Report& rep, InstanceBundle& b, const CommonOpts& o) {
    GroupAction ga = b.group_or_trivial();
    EquiregResult er = equiregularity_check(b.inst, ga);
    NearProperResult np = near_properness_check(b.inst, ga);
    auto targets = b.targets.empty() ? default_targets(b.inst) : b.targets;
    std::vector<PointSet> exh = b.exhaustion;
    if (exh.empty()) exh.push_back(b.inst.all_points());
    bool succeeded = false;
    std::string fail_reason;
    try {
        GaugeFamily p = metrize(b.inst, ga, targets, o.depth);
        GaugeFamily fam = proper_metrize(b.inst, ga, exh, p, o.depth);
        succeeded = true;
        for (size_t i = 0; i < fam.gauges.size(); ++i) {
            Verdict inv = is_invariant_gauge(ga, fam.gauges[i]);
            Verdict pr = is_proper_gauge(b.inst, fam.gauges[i]);
            rep.verdict("invariant:" + fam.tags[i], inv.pass, inv.witness);
            rep.verdict("proper:" + fam.tags[i], pr.pass, pr.witness);
        }
    } catch (const Error& e) {
        fail_reason = e.what();
    }
    bool both = er.status == Tri::yes && np.status == Tri::yes;
    rep.verdict("coherence", succeeded == both, succeeded ? "" : fail_reason);
    for (const auto& [name, g] : b.gauges) {
        bool finite = true;
        for (const auto& e : g.m)
            if (e.is_inf()) finite = false;
        if (!finite || !is_invariant_gauge(ga, g).pass) continue;
        ConverseNearProperReport c = verify_converse_near_proper(b.inst, ga, g);
        rep.verdict("triple_ball_bound:" + name, c.pass, c.witness);
    }
}

int cmd_verify(const std::string& what, const CommonOpts& o) {
    Report rep;
    rep.command = "verify " + what;
    rep.meta.emplace_back("instance", o.instance);
    InstanceBundle b = load_bundle(o.instance, o.cap);
    if (what == "thm2.1")
        verify_thm2_1(rep, b, o);
    else if (what == "lem3.4")
        verify_lem3_4(rep, b, o);
    else if (what == "thm3.3")
        verify_thm3_3(rep, b, o);
    else if (what == "thm3.6")
        verify_thm3_6(rep, b, o);
    else if (what == "thm3.7")
        verify_thm3_7(rep, b, o);
    else if (what == "lem4.3")
        verify_lem4_3(rep, b, o);
    else if (what == "lem5.1")
        verify_lem5_1(rep, b, o);
    else if (what == "prop5.2")
        verify_prop5_2(rep, b, o);
    else if (what == "thm1.1")
        verify_thm1_1(rep, b, o);
    else if (what == "thm1.3")
        verify_thm1_3(rep, b, o);
    else
        throw Error(Errc::unknown_command, "unknown verification suite '" + what + "'");
    return finish(rep, o);
}

int cmd_example(const std::string& name, const std::string& check, const CommonOpts& o) {
    Builtin bi = load_builtin(name);
    Report rep;
    rep.command = "example " + name;
    rep.meta.emplace_back("summary", bi.summary);
    if (!check.empty()) {
        for (const auto& c : bi.checks)
            if (c.name == check) {
                auto [pass, detail] = c.run(bi.bundle);
                rep.verdict(c.name, pass, detail);
                return finish(rep, o);
            }
        throw Error(Errc::unknown_command, "example has no check '" + check + "'");
    }
    for (const auto& c : bi.checks) {
        auto [pass, detail] = c.run(bi.bundle);
        bool as_documented = (pass == c.expected_pass);
        rep.verdict(c.name + (c.expected_pass ? "" : " (documented: fails)"), as_documented,
                    detail);
    }
    return finish(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covergauge: cover-based invariant pseudometric construction and verification"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string verify_what, example_name, example_check;

    add_common(app.add_subcommand("validate", "validate an instance document"), o);
    add_common(app.add_subcommand("au", "chain distance of a development"), o);
    add_common(app.add_subcommand("tunnel", "tunnel distance of a gauge and tunnel system"), o);
    add_common(app.add_subcommand("check", "separation, equiregularity and properness checks"), o);
    add_common(app.add_subcommand("metrize", "invariant gauge family from equiregularity"), o);
    add_common(app.add_subcommand("proper-metrize", "proper invariant gauge family"), o);
    add_common(app.add_subcommand("single-metrize", "single invariant metric"), o);
    auto* sv = app.add_subcommand("verify", "run a named verification suite");
    sv->add_option("suite", verify_what, "one of thm2.1 lem3.4 thm3.3 thm3.6 thm3.7 lem4.3 "
                                         "lem5.1 prop5.2 thm1.1 thm1.3")
        ->required();
    add_common(sv, o);
    auto* se =
        app.add_subcommand("example", "run a built-in example against its documented verdicts");
    se->add_option("name", example_name, "built-in name (ex1.1, ex1.2-analogue, ...)")->required();
    se->add_option("--check", example_check, "run a single named check and report its raw verdict");
    add_common(se, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(o);
        if (app.got_subcommand("au")) return cmd_au(o);
        if (app.got_subcommand("tunnel")) return cmd_tunnel(o);
        if (app.got_subcommand("check")) return cmd_check(o);
        if (app.got_subcommand("metrize")) return cmd_metrize(o);
        if (app.got_subcommand("proper-metrize")) return cmd_proper_metrize(o);
        if (app.got_subcommand("single-metrize")) return cmd_single_metrize(o);
        if (app.got_subcommand("verify")) return cmd_verify(verify_what, o);
        if (app.got_subcommand("example")) return cmd_example(example_name, example_check, o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return errc_is_operational(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
