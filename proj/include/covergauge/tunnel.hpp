#pragma once

// Tunnel systems: positive-length edges bridging distinct finiteness blocks
// of an extended gauge, the finite-valued distance they induce, properness
// of tunnel systems, and saturation under a group action.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "covergauge/dyadic.hpp"
#include "covergauge/error.hpp"
#include "covergauge/gauge.hpp"
#include "covergauge/space.hpp"

namespace covergauge {

struct TunnelSystem {
    // Unordered pairs stored with first < second, sorted for determinism.
    std::vector<std::pair<int, int>> tunnels;
    std::vector<Dyadic> lengths;

    static std::pair<int, int> key(int a, int b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    int find(int a, int b) const {
        auto k = key(a, b);
        for (size_t i = 0; i < tunnels.size(); ++i)
            if (tunnels[i] == k) return static_cast<int>(i);
        return -1;
    }

    void add(int a, int b, const Dyadic& len) {
        int i = find(a, b);
        if (i >= 0) {
            if (len < lengths[static_cast<size_t>(i)]) lengths[static_cast<size_t>(i)] = len;
            return;
        }
        tunnels.push_back(key(a, b));
        lengths.push_back(len);
    }

    void canonicalize() {
        std::vector<size_t> idx(tunnels.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](size_t i, size_t j) { return tunnels[i] < tunnels[j]; });
        std::vector<std::pair<int, int>> t;
        std::vector<Dyadic> l;
        for (size_t i : idx) {
            t.push_back(tunnels[i]);
            l.push_back(lengths[i]);
        }
        tunnels = std::move(t);
        lengths = std::move(l);
    }

    bool empty() const { return tunnels.empty(); }

    // Minimum length; tunnels are required nonempty for a meaningful value.
    Dyadic lambda0() const {
        Dyadic m = lengths.at(0);
        for (const auto& l : lengths)
            if (l < m) m = l;
        return m;
    }

    std::vector<Dyadic> length_thresholds() const {
        std::vector<Dyadic> v = lengths;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        if (!v.empty()) v.push_back(v.back() + Dyadic(1, 0));
        return v;
    }

    friend bool operator==(const TunnelSystem& a, const TunnelSystem& b) {
        return a.tunnels == b.tunnels && a.lengths == b.lengths;
    }
};

struct TunnelReport {
    bool pass = true;
    std::string failed_condition;  // "disjoint_from_blocks" | "connects" | "positive_lengths"
    std::string witness;
};

// The three structural conditions: no tunnel inside one block, the block
// graph with tunnels as edges is connected, and lengths are bounded away
// from zero (any positive dyadic is).
inline TunnelReport validate_tunnel_system(const ExtGauge& rho, const TunnelSystem& t) {
    Partition part = crevasse_partition(rho);
    for (size_t i = 0; i < t.tunnels.size(); ++i) {
        auto [a, b] = t.tunnels[i];
        if (part.block_of[a] == part.block_of[b])
            return {false, "disjoint_from_blocks",
                    "tunnel {" + std::to_string(a) + "," + std::to_string(b) +
                        "} joins one crevasse"};
        if (t.lengths[i].is_zero())
            return {false, "positive_lengths",
                    "tunnel {" + std::to_string(a) + "," + std::to_string(b) + "}"};
    }
    int nb = static_cast<int>(part.blocks.size());
    std::vector<int> comp(nb);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (auto [a, b] : t.tunnels) {
        int ra = find(part.block_of[a]), rb = find(part.block_of[b]);
        if (ra != rb) comp[std::max(ra, rb)] = std::min(ra, rb);
    }
    for (int i = 1; i < nb; ++i)
        if (find(i) != find(0))
            return {false, "connects",
                    "blocks " + part.blocks[0].str() + " and " + part.blocks[i].str() +
                        " not joined"};
    return {true, "", ""};
}

// Distance induced by a gauge and a tunnel system: the cheapest sequence of
// steps, each either within one block (cost rho) or a tunnel (cost lambda).
// Within-block travel collapses to single edges by the triangle inequality,
// so this is a shortest path on points with block edges plus tunnel edges.
inline ExtGauge tunnel_distance(const SpaceInstance& inst, const ExtGauge& rho,
                                const TunnelSystem& t) {
    TunnelReport rep = validate_tunnel_system(rho, t);
    if (!rep.pass)
        throw Error(Errc::invalid_tunnels, rep.failed_condition + ": " + rep.witness);
    int n = rho.n;
    ExtGauge sigma(n);
    for (int src = 0; src < n; ++src) {
        std::vector<ExtDyadic> dist(static_cast<size_t>(n), ExtDyadic::infinity());
        std::vector<bool> done(static_cast<size_t>(n), false);
        dist[static_cast<size_t>(src)] = ExtDyadic::zero();
        for (;;) {
            int u = -1;
            for (int i = 0; i < n; ++i)
                if (!done[static_cast<size_t>(i)] && !dist[static_cast<size_t>(i)].is_inf() &&
                    (u < 0 || dist[static_cast<size_t>(i)] < dist[static_cast<size_t>(u)]))
                    u = i;
            if (u < 0) break;
            done[static_cast<size_t>(u)] = true;
            for (int v = 0; v < n; ++v) {
                if (done[static_cast<size_t>(v)] || v == u) continue;
                ExtDyadic step = rho.at(u, v);
                int ti = t.find(u, v);
                if (ti >= 0)
                    step = ExtDyadic::min(step, ExtDyadic(t.lengths[static_cast<size_t>(ti)]));
                if (step.is_inf()) continue;
                ExtDyadic cand = dist[static_cast<size_t>(u)] + step;
                if (cand < dist[static_cast<size_t>(v)]) dist[static_cast<size_t>(v)] = cand;
            }
        }
        for (int y = 0; y < n; ++y)
            if (y != src) sigma.set(src, y, dist[static_cast<size_t>(y)]);
    }
    (void)inst;
    return sigma;
}

// T(A, eps): endpoints reachable from A through one tunnel strictly shorter
// than eps. Monotone in both arguments.
inline PointSet tunnel_neighborhood(const TunnelSystem& t, const PointSet& a,
                                    const Dyadic& eps) {
    PointSet r;
    for (size_t i = 0; i < t.tunnels.size(); ++i) {
        if (!(t.lengths[i] < eps)) continue;
        auto [u, v] = t.tunnels[i];
        if (a.contains(u)) r.add(v);
        if (a.contains(v)) r.add(u);
    }
    return r;
}

// Proper tunnel system: closures of tunnel neighborhoods of bounded sets are
// bounded, decided at generator sets and length thresholds.
inline Verdict is_proper_tunnel_system(const SpaceInstance& inst, const TunnelSystem& t) {
    if (inst.bornology.full) return {true, ""};
    for (const auto& a : inst.bornology.generators)
        for (const auto& eps : t.length_thresholds()) {
            PointSet tn = inst.closure(tunnel_neighborhood(t, a, eps));
            if (!inst.bornology.bounded(tn))
                return {false, "A=" + a.str() + " eps=" + eps.str()};
        }
    return {true, ""};
}

// Consecutive block representatives joined by unit tunnels.
inline TunnelSystem make_chain_tunnels(const Partition& part) {
    TunnelSystem t;
    auto reps = block_representatives(part);
    for (size_t i = 0; i + 1 < reps.size(); ++i)
        t.add(reps[i], reps[i + 1], Dyadic(1, 0));
    t.canonicalize();
    return t;
}

// Hub representative of block 0 joined to block i with length i.
inline TunnelSystem make_star_tunnels(const Partition& part) {
    TunnelSystem t;
    auto reps = block_representatives(part);
    for (size_t i = 1; i < reps.size(); ++i)
        t.add(reps[0], reps[i], Dyadic(static_cast<std::int64_t>(i), 0));
    t.canonicalize();
    return t;
}

// ---------------------------------------------------------------------------
// Saturation under a group action (orbit of the tunnel set, with orbit
// minima as lengths). Requires the gauge invariant under the enumerated
// elements and the boundedness hypothesis cl(T(GA, eps)) bounded for every
// bornology generator A.

inline Verdict is_invariant_gauge(const GroupAction& ga, const ExtGauge& rho) {
    for (size_t gi = 0; gi < ga.elements.size(); ++gi) {
        const auto& g = ga.elements[gi];
        for (int x = 0; x < rho.n; ++x)
            for (int y = 0; y < rho.n; ++y) {
                if (!g.defined_on(x) || !g.defined_on(y)) continue;
                if (rho.at(g(x), g(y)) != rho.at(x, y))
                    return {false,
                            "g#" + std::to_string(gi) + " x=" + std::to_string(x) +
                                " y=" + std::to_string(y),
                            ga.qualifier()};
            }
    }
    return {true, "", ga.qualifier()};
}

inline TunnelSystem g_saturate_tunnels(const SpaceInstance& inst, const GroupAction& ga,
                                       const ExtGauge& rho, const TunnelSystem& t) {
    Verdict inv = is_invariant_gauge(ga, rho);
    if (!inv.pass)
        throw Error(Errc::not_invariant_gauge, "gauge not invariant at " + inv.witness);
    TunnelReport rep = validate_tunnel_system(rho, t);
    if (!rep.pass)
        throw Error(Errc::invalid_tunnels, rep.failed_condition + ": " + rep.witness);
    // Boundedness hypothesis: cl(T(GA, eps)) bounded for each generator A.
    if (!inst.bornology.full) {
        for (const auto& a : inst.bornology.generators) {
            PointSet ga_set;
            for (const auto& g : ga.elements) ga_set = ga_set | g.image(a);
            for (const auto& eps : t.length_thresholds()) {
                PointSet tn = inst.closure(tunnel_neighborhood(t, ga_set, eps));
                if (!inst.bornology.bounded(tn))
                    throw Error(Errc::hypothesis_fail,
                                "cl(T(GA,eps)) unbounded for A=" + a.str() +
                                    " eps=" + eps.str());
            }
        }
    }
    TunnelSystem out;
    for (const auto& g : ga.elements)
        for (size_t i = 0; i < t.tunnels.size(); ++i) {
            auto [a, b] = t.tunnels[i];
            if (!g.defined_on(a) || !g.defined_on(b)) continue;
            out.add(g(a), g(b), t.lengths[i]);
        }
    out.canonicalize();
    return out;
}

// Exact invariance of a tunnel system: images of tunnels are tunnels with
// identical lengths.
inline Verdict is_invariant_tunnels(const GroupAction& ga, const TunnelSystem& t) {
    for (size_t gi = 0; gi < ga.elements.size(); ++gi) {
        const auto& g = ga.elements[gi];
        for (size_t i = 0; i < t.tunnels.size(); ++i) {
            auto [a, b] = t.tunnels[i];
            if (!g.defined_on(a) || !g.defined_on(b)) continue;
            int j = t.find(g(a), g(b));
            if (j < 0 || t.lengths[static_cast<size_t>(j)] != t.lengths[i])
                return {false,
                        "g#" + std::to_string(gi) + " tunnel {" + std::to_string(a) + "," +
                            std::to_string(b) + "}",
                        ga.qualifier()};
        }
    }
    return {true, "", ga.qualifier()};
}

// ---------------------------------------------------------------------------
// Theorem-style reports for the tunnel distance.

struct TunnelDistanceReport {
    bool pass = true;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

// sigma <= rho everywhere; sigma = rho exactly on pairs below the minimum
// tunnel length; balls agree at radii up to that length; gauge axioms hold.
inline TunnelDistanceReport verify_theorem_3_6(const SpaceInstance& inst, const ExtGauge& rho,
                                               const TunnelSystem& t, const ExtGauge& sigma) {
    TunnelDistanceReport rep;
    for (int x = 0; x < rho.n; ++x)
        for (int y = 0; y < rho.n; ++y)
            rep.check(sigma.at(x, y) <= rho.at(x, y),
                      "sigma<=rho at " + std::to_string(x) + "," + std::to_string(y));
    if (!t.empty()) {
        ExtDyadic l0{t.lambda0()};
        for (int x = 0; x < rho.n; ++x)
            for (int y = 0; y < rho.n; ++y)
                if (rho.at(x, y) < l0 || sigma.at(x, y) < l0)
                    rep.check(sigma.at(x, y) == rho.at(x, y),
                              "sigma=rho below lambda0 at " + std::to_string(x) + "," +
                                  std::to_string(y));
        std::vector<Dyadic> radii;
        for (const auto& r : sigma.threshold_radii())
            if (ExtDyadic(r) <= l0) radii.push_back(r);
        radii.push_back(t.lambda0());
        for (int x = 0; x < rho.n; ++x)
            for (const auto& r : radii)
                rep.check(sigma.ball_lt(x, ExtDyadic(r)) == rho.ball_lt(x, ExtDyadic(r)),
                          "ball equality at x=" + std::to_string(x) + " eps=" + r.str());
    }
    AxiomReport ax = gauge_axioms_check(inst, sigma);
    rep.check(ax.pass, "gauge axioms: " + ax.failed_axiom + " " + ax.witness);
    for (const auto& e : sigma.m)
        rep.check(!e.is_inf(), "sigma finite-valued");
    return rep;
}

// Properness transfer: sigma proper iff rho and the tunnel system are
// proper; the covering inclusion used in the inductive step; and the two
// converse facts (rho balls inside sigma balls, tunnel neighborhoods inside
// sigma neighborhoods).
struct PropernessTransferReport {
    Verdict sigma_proper, rho_proper, tunnels_proper;
    bool biconditional = true;
    bool inclusion_pass = true;
    std::string inclusion_witness;
    bool converse_pass = true;
    std::string converse_witness;
};

inline PropernessTransferReport verify_theorem_3_7(const SpaceInstance& inst,
                                                   const ExtGauge& rho, const TunnelSystem& t,
                                                   const ExtGauge& sigma, int n_budget = 4) {
    PropernessTransferReport rep;
    rep.sigma_proper = is_proper_gauge(inst, sigma);
    rep.rho_proper = is_proper_gauge(inst, rho);
    rep.tunnels_proper = is_proper_tunnel_system(inst, t);
    rep.biconditional =
        rep.sigma_proper.pass == (rep.rho_proper.pass && rep.tunnels_proper.pass);
    if (!t.empty()) {
        Dyadic l0 = t.lambda0();
        for (int nn = 1; nn <= n_budget && rep.inclusion_pass; ++nn) {
            ExtDyadic rn{l0.scaled_by(nn)};
            ExtDyadic rn1{l0.scaled_by(nn + 1)};
            ExtDyadic rn2{l0.scaled_by(nn + 2)};
            for (int x = 0; x < rho.n; ++x) {
                PointSet c = inst.closure(sigma.ball_lt(x, rn));
                PointSet lhs = sigma.ball_lt(x, rn1);
                PointSet rhs = rho.ball_lt(c, rn2) |
                               rho.ball_lt(tunnel_neighborhood(t, c, l0.scaled_by(nn + 1)),
                                           ExtDyadic(l0));
                if (!lhs.subset_of(rhs)) {
                    rep.inclusion_pass = false;
                    rep.inclusion_witness =
                        "x=" + std::to_string(x) + " n=" + std::to_string(nn);
                    break;
                }
            }
        }
    }
    // Converse facts.
    for (int x = 0; x < rho.n && rep.converse_pass; ++x)
        for (const auto& r : rho.threshold_radii())
            if (!rho.ball_lt(x, ExtDyadic(r)).subset_of(sigma.ball_lt(x, ExtDyadic(r)))) {
                rep.converse_pass = false;
                rep.converse_witness = "rho ball escape at x=" + std::to_string(x);
                break;
            }
    // T(A,eps) inside the sigma neighborhood of A: both sides decompose over
    // points of A, so singletons decide every A.
    if (rep.converse_pass)
        for (int x = 0; x < rho.n; ++x)
            for (const auto& eps : t.length_thresholds()) {
                PointSet a = PointSet::single(x);
                PointSet tn = tunnel_neighborhood(t, a, eps);
                PointSet sn = sigma.ball_lt(a, ExtDyadic(eps));
                if (!tn.subset_of(sn)) {
                    rep.converse_pass = false;
                    rep.converse_witness = "T(A,eps) escape at A=" + a.str();
                    break;
                }
            }
    return rep;
}

}  // namespace covergauge
