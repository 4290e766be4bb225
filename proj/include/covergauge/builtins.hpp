#pragma once

// Built-in instances, each a small combinatorial model of a known behavior:
// a discrete ray with all-swaps at each window (invariant but not nearly
// proper), a two-point-compactified shift (not equiregular), windowed
// integer translations (equiregular and nearly proper), metric ball covers
// (star-refinement, star-development), and block spaces with hub or chain
// tunnels (proper and improper tunnel systems).
//
// Each built-in carries its documented expected check outcomes; the example
// runner re-derives every verdict and compares.

#include <functional>
#include <string>
#include <vector>

#include "covergauge/bundle.hpp"

namespace covergauge {

struct BuiltinCheck {
    std::string name;
    bool expected_pass = true;
    // runs the check; returns (pass, detail)
    std::function<std::pair<bool, std::string>(const InstanceBundle&)> run;
};

struct Builtin {
    std::string name;
    std::string summary;
    InstanceBundle bundle;
    std::vector<BuiltinCheck> checks;
};

namespace detail {

inline std::vector<PointSet> singleton_basis(int n) {
    std::vector<PointSet> b;
    for (int i = 0; i < n; ++i) b.push_back(PointSet::single(i));
    return b;
}

inline PartialPerm transposition(int n, int a, int b) {
    PartialPerm g = PartialPerm::identity(n);
    g.img[static_cast<size_t>(a)] = b;
    g.img[static_cast<size_t>(b)] = a;
    return g;
}

inline PointSet range_set(int lo, int hi) {  // inclusive
    PointSet s;
    for (int i = lo; i <= hi; ++i) s.add(i);
    return s;
}

// Discrete ray window {0..m} with every swap of 1 and j, j >= 2.
inline HorizonEntry ray_window(int m) {
    int n = m + 1;
    SpaceInstance inst(n, singleton_basis(n),
                       Bornology::generated({PointSet::of({0, 1})}));
    std::vector<PartialPerm> gens;
    for (int j = 2; j <= m; ++j) gens.push_back(transposition(n, 1, j));
    return {inst, enumerate_group(inst, gens, 64), PointSet()};
}

// Integer-translation window {-m..m} stored as {0..2m}; shift by +1 leaves
// the window at the right edge. Bounded sets are central windows small
// enough that every translate-union question about them resolves inside the
// window.
inline HorizonEntry translation_window(int m) {
    int n = 2 * m + 1;
    std::vector<PointSet> gens;
    for (int j = 1; j <= m - 1; ++j) gens.push_back(range_set(m - j, m + j));
    SpaceInstance inst(n, singleton_basis(n), Bornology::generated(gens));
    PartialPerm shift;
    shift.img.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i + 1 < n; ++i) shift.img[static_cast<size_t>(i)] = i + 1;
    GroupAction ga = enumerate_group(inst, {shift}, 4096);
    return {inst, ga, PointSet::of({0, n - 1})};
}

// k blocks of two points each, within-block distance 1/2, infinite across.
inline ExtGauge block_gauge(int blocks) {
    ExtGauge g(2 * blocks);
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            g.set(x, y, x / 2 == y / 2 ? ExtDyadic(Dyadic(1, 1)) : ExtDyadic::infinity());
    return g;
}

inline ExtGauge line_gauge(int n, int denom_exp) {  // d(i,j) = |i-j| / 2^e
    ExtGauge g(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) g.set(x, y, ExtDyadic(Dyadic(y - x, denom_exp)));
    return g;
}

inline Cover ball_cover(const ExtGauge& g, const Dyadic& eps) {
    std::vector<PointSet> members;
    for (int x = 0; x < g.n; ++x) members.push_back(g.ball_lt(x, ExtDyadic(eps)));
    return Cover(members);
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Builtin builtin_ex1_1() {
    Builtin b;
    b.name = "ex1.1";
    b.summary = "discrete ray windows with all swaps of 1 and j: invariant metric exists, "
                "not nearly proper (witness C={0,1})";
    HorizonFamily fam;
    for (int m = 2; m <= 4; ++m) fam.entries.push_back(detail::ray_window(m));
    for (int i = 0; i + 1 < fam.depth(); ++i) {
        std::vector<int> inc(static_cast<size_t>(fam.entries[static_cast<size_t>(i)].inst.n));
        std::iota(inc.begin(), inc.end(), 0);
        fam.inclusions.push_back(inc);
    }
    validate_horizons(fam);
    b.bundle.inst = fam.entries.back().inst;
    b.bundle.group = fam.entries.back().group;
    b.bundle.horizons = fam;

    b.checks.push_back({"orbits", true, [](const InstanceBundle& ib) {
        QuotientSpace q = orbit_quotient(ib.inst, *ib.group);
        bool ok = q.orbit_count == 2 && q.orbits[0] == PointSet::single(0);
        return std::make_pair(ok, "orbit count " + std::to_string(q.orbit_count));
    }});
    b.checks.push_back({"equiregular", true, [](const InstanceBundle& ib) {
        HorizonEquiregReport r = equiregularity_horizon(*ib.horizons);
        return std::make_pair(r.status == Tri::yes, r.witness);
    }});
    b.checks.push_back({"near-proper", false, [](const InstanceBundle& ib) {
        HorizonNearProperReport r = near_properness_horizon(*ib.horizons);
        return std::make_pair(r.status == Tri::yes, r.witness);
    }});
    b.checks.push_back({"single-metrize", true, [](const InstanceBundle& ib) {
        GaugeFamily fam2 = metrize(ib.inst, *ib.group, default_targets(ib.inst));
        SingleMetric sm = single_metrize(ib.inst, fam2);
        AxiomReport ax = gauge_axioms_check(ib.inst, sm.metric, true);
        Verdict inv = is_invariant_gauge(*ib.group, sm.metric);
        bool ok = ax.pass && inv.pass && sm.equivalent.pass;
        return std::make_pair(ok, ok ? "invariant metric built" : ax.failed_axiom + inv.witness);
    }});
    b.checks.push_back({"proper-metrize", false, [](const InstanceBundle& ib) {
        try {
            GaugeFamily p = metrize(ib.inst, *ib.group, default_targets(ib.inst));
            proper_metrize(ib.inst, *ib.group, {ib.inst.all_points()}, p);
            return std::make_pair(true, std::string("unexpectedly succeeded"));
        } catch (const Error& e) {
            return std::make_pair(false, std::string(e.what()));
        }
    }});
    return b;
}

inline Builtin builtin_ex1_2_analogue() {
    Builtin b;
    b.name = "ex1.2-analogue";
    b.summary = "two-point-compactified shift: not equiregular at an endpoint";
    int k = 6, n = k + 2;  // 0 = right endpoint, 1..k = orbit, k+1 = left endpoint
    std::vector<PointSet> basis;
    for (int i = 1; i <= k; ++i) basis.push_back(PointSet::single(i));
    for (int j = 1; j <= k; ++j) {
        PointSet plus = PointSet::single(0) | detail::range_set(1, j);
        basis.push_back(plus);
        PointSet minus = PointSet::single(n - 1) | detail::range_set(j, k);
        basis.push_back(minus);
    }
    SpaceInstance inst(n, basis, Bornology::full_bornology());
    PartialPerm shift;
    shift.img.assign(static_cast<size_t>(n), -1);
    shift.img[0] = 0;
    shift.img[static_cast<size_t>(n - 1)] = n - 1;
    for (int i = 1; i < k; ++i) shift.img[static_cast<size_t>(i)] = i + 1;
    b.bundle.inst = inst;
    b.bundle.group = enumerate_group(inst, {shift}, 512);

    b.checks.push_back({"validate", true, [](const InstanceBundle& ib) {
        ValidationReport r = validate_instance(ib.inst);
        return std::make_pair(r.ok, r.rejected_rule);
    }});
    b.checks.push_back({"equiregular", false, [](const InstanceBundle& ib) {
        EquiregResult r = equiregularity_check(ib.inst, *ib.group);
        return std::make_pair(r.status == Tri::yes,
                              r.status == Tri::no
                                  ? "fails at x=" + std::to_string(r.fail_x) + " U=" +
                                        r.fail_u.str()
                                  : "indeterminate");
    }});
    b.checks.push_back({"near-proper", true, [](const InstanceBundle& ib) {
        NearProperResult r = near_properness_check(ib.inst, *ib.group);
        return std::make_pair(r.status == Tri::yes, "full bornology");
    }});
    b.checks.push_back({"metrize", false, [](const InstanceBundle& ib) {
        try {
            metrize(ib.inst, *ib.group, default_targets(ib.inst));
            return std::make_pair(true, std::string("unexpectedly succeeded"));
        } catch (const Error& e) {
            return std::make_pair(false, std::string(e.what()));
        }
    }});
    return b;
}

inline Builtin builtin_ex1_3_window() {
    Builtin b;
    b.name = "ex1.3-window";
    b.summary = "integer translation windows: equiregular, nearly proper, proper "
                "invariant metrization per window with stable balls";
    HorizonFamily fam;
    for (int m = 4; m <= 7; ++m) fam.entries.push_back(detail::translation_window(m));
    for (int i = 0; i + 1 < fam.depth(); ++i) {
        // center-preserving embedding {-m..m} -> {-(m+1)..m+1}
        int src_n = fam.entries[static_cast<size_t>(i)].inst.n;
        std::vector<int> inc(static_cast<size_t>(src_n));
        for (int p = 0; p < src_n; ++p) inc[static_cast<size_t>(p)] = p + 1;
        fam.inclusions.push_back(inc);
    }
    validate_horizons(fam);
    b.bundle.inst = fam.entries.back().inst;
    b.bundle.group = fam.entries.back().group;
    b.bundle.horizons = fam;

    b.checks.push_back({"equiregular", true, [](const InstanceBundle& ib) {
        HorizonEquiregReport r = equiregularity_horizon(*ib.horizons);
        return std::make_pair(r.status == Tri::yes, r.witness);
    }});
    b.checks.push_back({"near-proper", true, [](const InstanceBundle& ib) {
        HorizonNearProperReport r = near_properness_horizon(*ib.horizons);
        std::string detail = r.status == Tri::yes
                                 ? "stable from horizon " + std::to_string(r.stable_from)
                                 : (r.status == Tri::no ? r.witness : "indeterminate");
        if (!r.qualifier.empty()) detail += " (" + r.qualifier + ")";
        return std::make_pair(r.status == Tri::yes, detail);
    }});
    b.checks.push_back({"proper-metrize", true, [](const InstanceBundle& ib) {
        // Per-window runs act through the total core of the window action
        // and treat the window as compact (its bornology extended by the
        // full window); every output is re-verified proper and invariant.
        for (const auto& e : ib.horizons->entries) {
            SpaceInstance win = e.inst;
            std::vector<PointSet> gens = win.bornology.generators;
            gens.push_back(win.all_points());
            win.bornology = Bornology::generated(gens);
            GroupAction core = total_core(e.group);
            std::vector<PointSet> exh = gens;
            GaugeFamily p = metrize(win, core, default_targets(win));
            GaugeFamily out = proper_metrize(win, core, exh, p);
            for (const auto& g : out.gauges) {
                Verdict pr = is_proper_gauge(win, g);
                Verdict iv = is_invariant_gauge(core, g);
                if (!pr.pass || !iv.pass)
                    return std::make_pair(false, "output check failed: " + pr.witness + iv.witness);
            }
        }
        return std::make_pair(true, std::string("per-window proper invariant families built"));
    }});
    return b;
}

inline Builtin builtin_ex2_1() {
    Builtin b;
    b.name = "ex2.1";
    b.summary = "half-radius metric balls star-refine full-radius balls";
    int n = 6;
    SpaceInstance inst(n, detail::singleton_basis(n));
    ExtGauge d = detail::line_gauge(n, 3);  // |i-j|/8
    b.bundle.inst = inst;
    b.bundle.gauges["line"] = d;
    b.bundle.covers["half"] = detail::ball_cover(d, Dyadic(1, 2));
    b.bundle.covers["full"] = detail::ball_cover(d, Dyadic(1, 1));

    b.checks.push_back({"star-refines", true, [](const InstanceBundle& ib) {
        Verdict v = is_star_refinement(ib.covers.at("half"), ib.covers.at("full"), ib.inst.n);
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"2-refines", true, [](const InstanceBundle& ib) {
        Verdict v = k_refines(ib.covers.at("half"), ib.covers.at("full"), 2);
        return std::make_pair(v.pass, v.witness);
    }});
    return b;
}

inline Builtin builtin_ex2_2() {
    Builtin b;
    b.name = "ex2.2";
    b.summary = "metric ball covers at radii 2^-1, 2^-2, 2^-3 form a star-development";
    int n = 6;
    SpaceInstance inst(n, detail::singleton_basis(n));
    ExtGauge d = detail::line_gauge(n, 3);
    Development dev;
    for (int lvl = 1; lvl <= 3; ++lvl)
        dev.levels.push_back(detail::ball_cover(d, Dyadic(1, lvl)));
    dev.declared_star = true;
    b.bundle.inst = inst;
    b.bundle.gauges["line"] = d;
    b.bundle.developments["balls"] = dev;

    b.checks.push_back({"development", true, [](const InstanceBundle& ib) {
        Verdict v = is_development(ib.developments.at("balls").levels, ib.inst.n);
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"star-development", true, [](const InstanceBundle& ib) {
        Verdict v = check_star_development(ib.developments.at("balls"), ib.inst.n);
        return std::make_pair(v.pass, v.witness);
    }});
    return b;
}

namespace detail {
// Block space with hub/chain tunnels; shared by the tunnel examples.
inline InstanceBundle block_bundle(int blocks, bool reps_bounded) {
    InstanceBundle ib;
    int n = 2 * blocks;
    std::vector<PointSet> gens;
    if (reps_bounded) {
        // prefix unions of blocks (not all) plus the representative set
        PointSet pre;
        for (int j = 0; j < blocks - 1; ++j) {
            pre = pre | range_set(2 * j, 2 * j + 1);
            gens.push_back(pre);
        }
        PointSet reps;
        for (int j = 0; j < blocks; ++j) reps.add(2 * j);
        gens.push_back(reps);
    } else {
        for (int j = 0; j < blocks; ++j) gens.push_back(range_set(2 * j, 2 * j + 1));
    }
    ib.inst = SpaceInstance(n, singleton_basis(n), Bornology::generated(gens));
    ib.gauges["rho"] = block_gauge(blocks);
    return ib;
}
}  // namespace detail

inline Builtin builtin_ex3_2_surrogate() {
    Builtin b;
    b.name = "ex3.2-surrogate";
    b.summary = "constant-length hub tunnels over many blocks with block-sized bounded "
                "sets: tunnel system and induced distance both improper";
    b.bundle = detail::block_bundle(5, false);
    const ExtGauge& rho = b.bundle.gauges.at("rho");
    Partition part = crevasse_partition(rho);
    TunnelSystem t;
    auto reps = block_representatives(part);
    for (size_t i = 1; i < reps.size(); ++i) t.add(reps[0], reps[i], Dyadic(1, 0));
    t.canonicalize();
    b.bundle.tunnels["hub"] = t;

    b.checks.push_back({"valid-tunnels", true, [](const InstanceBundle& ib) {
        TunnelReport r = validate_tunnel_system(ib.gauges.at("rho"), ib.tunnels.at("hub"));
        return std::make_pair(r.pass, r.failed_condition);
    }});
    b.checks.push_back({"rho-proper", true, [](const InstanceBundle& ib) {
        Verdict v = is_proper_gauge(ib.inst, ib.gauges.at("rho"));
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"tunnels-proper", false, [](const InstanceBundle& ib) {
        Verdict v = is_proper_tunnel_system(ib.inst, ib.tunnels.at("hub"));
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"sigma-proper", false, [](const InstanceBundle& ib) {
        ExtGauge sigma = tunnel_distance(ib.inst, ib.gauges.at("rho"), ib.tunnels.at("hub"));
        Verdict v = is_proper_gauge(ib.inst, sigma);
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"one-crevasse-after", true, [](const InstanceBundle& ib) {
        ExtGauge sigma = tunnel_distance(ib.inst, ib.gauges.at("rho"), ib.tunnels.at("hub"));
        Partition p = crevasse_partition(sigma);
        return std::make_pair(p.blocks.size() == 1,
                              std::to_string(p.blocks.size()) + " blocks");
    }});
    b.checks.push_back({"properness-transfer", true, [](const InstanceBundle& ib) {
        ExtGauge sigma = tunnel_distance(ib.inst, ib.gauges.at("rho"), ib.tunnels.at("hub"));
        PropernessTransferReport r =
            verify_theorem_3_7(ib.inst, ib.gauges.at("rho"), ib.tunnels.at("hub"), sigma);
        return std::make_pair(r.biconditional && r.inclusion_pass && r.converse_pass,
                              r.inclusion_witness + r.converse_witness);
    }});
    return b;
}

inline Builtin builtin_ex3_3() {
    Builtin b;
    b.name = "ex3.3";
    b.summary = "unit chain tunnels through consecutive block representatives: proper";
    b.bundle = detail::block_bundle(5, true);
    Partition part = crevasse_partition(b.bundle.gauges.at("rho"));
    b.bundle.tunnels["chain"] = make_chain_tunnels(part);

    b.checks.push_back({"valid-tunnels", true, [](const InstanceBundle& ib) {
        TunnelReport r = validate_tunnel_system(ib.gauges.at("rho"), ib.tunnels.at("chain"));
        return std::make_pair(r.pass, r.failed_condition);
    }});
    b.checks.push_back({"tunnels-proper", true, [](const InstanceBundle& ib) {
        Verdict v = is_proper_tunnel_system(ib.inst, ib.tunnels.at("chain"));
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"lambda0", true, [](const InstanceBundle& ib) {
        return std::make_pair(ib.tunnels.at("chain").lambda0() == Dyadic(1, 0), std::string());
    }});
    return b;
}

inline Builtin builtin_ex3_4() {
    Builtin b;
    b.name = "ex3.4";
    b.summary = "hub tunnels with length i to block i: proper";
    b.bundle = detail::block_bundle(5, true);
    Partition part = crevasse_partition(b.bundle.gauges.at("rho"));
    b.bundle.tunnels["star"] = make_star_tunnels(part);

    b.checks.push_back({"valid-tunnels", true, [](const InstanceBundle& ib) {
        TunnelReport r = validate_tunnel_system(ib.gauges.at("rho"), ib.tunnels.at("star"));
        return std::make_pair(r.pass, r.failed_condition);
    }});
    b.checks.push_back({"tunnels-proper", true, [](const InstanceBundle& ib) {
        Verdict v = is_proper_tunnel_system(ib.inst, ib.tunnels.at("star"));
        return std::make_pair(v.pass, v.witness);
    }});
    b.checks.push_back({"hub-neighborhood", true, [](const InstanceBundle& ib) {
        PointSet tn = tunnel_neighborhood(ib.tunnels.at("star"), PointSet::single(0),
                                          Dyadic(5, 1));  // radius 5/2
        return std::make_pair(tn == PointSet::of({2, 4}), tn.str());
    }});
    b.checks.push_back({"below-lambda0-empty", true, [](const InstanceBundle& ib) {
        PointSet tn = tunnel_neighborhood(ib.tunnels.at("star"), ib.inst.all_points(),
                                          ib.tunnels.at("star").lambda0());
        return std::make_pair(tn.empty(), tn.str());
    }});
    return b;
}

inline std::vector<std::string> builtin_names() {
    return {"ex1.1", "ex1.2-analogue", "ex1.3-window", "ex2.1",
            "ex2.2", "ex3.2-surrogate", "ex3.3", "ex3.4"};
}

inline Builtin load_builtin(const std::string& name) {
    if (name == "ex1.1") return builtin_ex1_1();
    if (name == "ex1.2-analogue") return builtin_ex1_2_analogue();
    if (name == "ex1.3-window") return builtin_ex1_3_window();
    if (name == "ex2.1") return builtin_ex2_1();
    if (name == "ex2.2") return builtin_ex2_2();
    if (name == "ex3.2-surrogate") return builtin_ex3_2_surrogate();
    if (name == "ex3.3") return builtin_ex3_3();
    if (name == "ex3.4") return builtin_ex3_4();
    throw Error(Errc::validation_error, "unknown built-in '" + name + "'");
}

inline bool is_builtin_name(const std::string& name) {
    for (const auto& n : builtin_names())
        if (n == name) return true;
    return false;
}

}  // namespace covergauge
