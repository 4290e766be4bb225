#pragma once

// Horizon families: increasing finite windows of one ambient space, with
// inclusion maps between consecutive ground sets and declared frontier
// points. Partial group elements model maps whose images leave the window.
// Predicates that touch the frontier return indeterminate at that horizon;
// set-valued quantities are classified as stable or growing across
// horizons, which is the finite signature of compactness or its failure.

#include <optional>
#include <string>
#include <vector>

#include "covergauge/error.hpp"
#include "covergauge/gauge.hpp"
#include "covergauge/invariance.hpp"
#include "covergauge/point_set.hpp"
#include "covergauge/space.hpp"

namespace covergauge {

struct HorizonEntry {
    SpaceInstance inst;
    GroupAction group;
    PointSet frontier;
};

struct HorizonFamily {
    std::vector<HorizonEntry> entries;
    // inclusions[i] maps points of entries[i] into entries[i+1]
    std::vector<std::vector<int>> inclusions;

    int depth() const { return static_cast<int>(entries.size()); }

    PointSet push(int from, const PointSet& s) const {
        PointSet r;
        for (int p : s.points()) r.add(inclusions[static_cast<size_t>(from)][static_cast<size_t>(p)]);
        return r;
    }
    // Image of a first-horizon point at horizon m.
    int push_point(int m, int p) const {
        for (int i = 0; i < m; ++i) p = inclusions[static_cast<size_t>(i)][static_cast<size_t>(p)];
        return p;
    }
};

inline void validate_horizons(const HorizonFamily& f) {
    if (f.entries.empty()) throw Error(Errc::validation_error, "horizon family is empty");
    if (f.inclusions.size() + 1 != f.entries.size())
        throw Error(Errc::validation_error, "inclusion map count mismatch");
    for (size_t i = 0; i < f.inclusions.size(); ++i) {
        const auto& inc = f.inclusions[i];
        const auto& src = f.entries[i].inst;
        const auto& dst = f.entries[i + 1].inst;
        if (static_cast<int>(inc.size()) != src.n)
            throw Error(Errc::validation_error, "inclusion map size mismatch at horizon " +
                                                    std::to_string(i));
        PointSet seen;
        for (int v : inc) {
            if (v < 0 || v >= dst.n)
                throw Error(Errc::validation_error, "inclusion map out of range");
            if (seen.contains(v))
                throw Error(Errc::validation_error, "inclusion map not injective");
            seen.add(v);
        }
        // Topology respected away from the frontier: basis sets clear of
        // frontier points must map to open sets.
        for (const auto& b : src.basis) {
            if (b.intersects(f.entries[i].frontier)) continue;
            PointSet img;
            for (int p : b.points()) img.add(inc[static_cast<size_t>(p)]);
            if (!dst.is_open(img))
                throw Error(Errc::validation_error,
                            "inclusion image of interior basis set " + b.str() + " not open");
        }
    }
}

// Stability of a per-horizon set family under the inclusion maps.
struct Stabilization {
    bool growing = false;
    int stable_from = 0;        // first horizon from which pushes match exactly
    std::string growth_witness; // new points at the last comparison when growing
};

inline Stabilization classify_stability(const HorizonFamily& f,
                                        const std::vector<PointSet>& per_horizon) {
    Stabilization s;
    int last_diff = -1;
    for (size_t i = 0; i + 1 < per_horizon.size(); ++i) {
        PointSet pushed = f.push(static_cast<int>(i), per_horizon[i]);
        if (pushed != per_horizon[i + 1]) last_diff = static_cast<int>(i);
    }
    if (last_diff == static_cast<int>(per_horizon.size()) - 2 && per_horizon.size() >= 2) {
        s.growing = true;
        PointSet pushed = f.push(last_diff, per_horizon[static_cast<size_t>(last_diff)]);
        s.growth_witness = (per_horizon.back() - pushed).str();
    }
    s.stable_from = last_diff + 1;
    return s;
}

// Near-properness over a horizon family: per-horizon verdicts at the
// declared bornology, plus per-pair stabilization of the translate unions.
// Generator lists are aligned by index across horizons (generator j of one
// window must map into generator j of the next). A pair indeterminate at
// small windows is expected to become determinate at larger ones; pairs
// still indeterminate at the last horizon only qualify the verdict.
struct HorizonNearProperReport {
    Tri status = Tri::yes;
    int stable_from = 0;
    std::string witness;     // failing pair or growth witness
    std::string qualifier;
    std::vector<Tri> per_horizon;
    int pending_pairs = 0;   // never determinate within the truncation
};

inline HorizonNearProperReport near_properness_horizon(const HorizonFamily& f) {
    HorizonNearProperReport rep;
    bool any_determinate = false;
    for (const auto& e : f.entries) {
        NearProperResult r = near_properness_check(e.inst, e.group, e.frontier);
        rep.per_horizon.push_back(r.status);
        if (r.status == Tri::no) {
            rep.status = Tri::no;
            rep.witness = "A=" + r.fail_a.str() + " B=" + r.fail_b.str() +
                          " union=" + r.fail_union.str();
            return rep;
        }
        if (e.inst.bornology.full) any_determinate = true;
        if (!r.qualifier.empty()) rep.qualifier = r.qualifier;
    }
    // Translate union of generator pair (ja, jb) at one horizon, or nullopt
    // when a clipped translate visibly meets B or the union reaches the
    // frontier.
    auto pair_union = [](const HorizonEntry& e, size_t ja,
                         size_t jb) -> std::optional<PointSet> {
        const auto& gens = e.inst.bornology.generators;
        if (ja >= gens.size() || jb >= gens.size()) return std::nullopt;
        PointSet uni;
        for (const auto& g : e.group.elements) {
            PointSet visible = g.image(gens[ja]);
            if (!visible.intersects(gens[jb])) continue;
            if (!g.defined_on(gens[ja])) return std::nullopt;
            uni = uni | visible;
        }
        if (e.inst.closure(uni).intersects(e.frontier)) return std::nullopt;
        return uni;
    };
    size_t max_gens = 0;
    for (const auto& e : f.entries)
        max_gens = std::max(max_gens, e.inst.bornology.generators.size());
    for (size_t ja = 0; ja < max_gens; ++ja)
        for (size_t jb = 0; jb < max_gens; ++jb) {
            int prev_h = -1;
            PointSet prev;
            bool saw = false;
            for (int h = 0; h < f.depth(); ++h) {
                auto u = pair_union(f.entries[static_cast<size_t>(h)], ja, jb);
                if (!u) continue;
                any_determinate = true;
                if (saw) {
                    PointSet pushed = prev;
                    for (int i = prev_h; i < h; ++i) pushed = f.push(i, pushed);
                    if (pushed != *u) {
                        rep.status = Tri::no;
                        rep.witness = "translate union for generator pair (" +
                                      std::to_string(ja) + "," + std::to_string(jb) +
                                      ") grows: new points " + (*u - pushed).str();
                        return rep;
                    }
                } else {
                    rep.stable_from = std::max(rep.stable_from, h);
                }
                saw = true;
                prev = *u;
                prev_h = h;
            }
            if (!saw && ja < max_gens && jb < max_gens) {
                bool exists_somewhere = false;
                for (const auto& e : f.entries)
                    if (ja < e.inst.bornology.generators.size() &&
                        jb < e.inst.bornology.generators.size())
                        exists_somewhere = true;
                if (exists_somewhere) ++rep.pending_pairs;
            }
        }
    if (!any_determinate) rep.status = Tri::unknown;
    if (rep.pending_pairs > 0)
        rep.qualifier = (rep.qualifier.empty() ? "" : rep.qualifier + "; ") +
                        std::to_string(rep.pending_pairs) +
                        " generator pairs pending deeper horizons";
    return rep;
}

struct HorizonEquiregReport {
    Tri status = Tri::yes;
    std::string witness;
    std::vector<Tri> per_horizon;
};

inline HorizonEquiregReport equiregularity_horizon(const HorizonFamily& f) {
    HorizonEquiregReport rep;
    bool any_unknown = false;
    for (const auto& e : f.entries) {
        EquiregResult r = equiregularity_check(e.inst, e.group);
        rep.per_horizon.push_back(r.status);
        if (r.status == Tri::no) {
            rep.status = Tri::no;
            rep.witness = "x=" + std::to_string(r.fail_x) + " U=" + r.fail_u.str();
            return rep;
        }
        if (r.status == Tri::unknown) any_unknown = true;
    }
    if (any_unknown) rep.status = Tri::unknown;
    return rep;
}

// Stability of ball closures of per-horizon gauges: the finite test for
// properness in the ambient space. A ball whose closure touches the
// frontier is clipped by the window and carries no verdict at that horizon.
// Between two frontier-clear horizons the restriction of one ambient gauge
// cannot change, so any difference there is genuine instability. Radii run
// over all threshold values seen at any horizon; base points run over the
// first window.
struct HorizonBallReport {
    bool stable = true;
    std::string witness;  // (point, radius) whose visible ball closures change
    int stable_from = 0;
    int pending = 0;  // (point, radius) pairs never clear of the frontier
};

inline HorizonBallReport gauge_ball_stability(const HorizonFamily& f,
                                              const std::vector<ExtGauge>& per_horizon) {
    HorizonBallReport rep;
    if (f.depth() == 0 || per_horizon.size() != static_cast<size_t>(f.depth()))
        throw Error(Errc::validation_error, "one gauge per horizon required");
    std::vector<Dyadic> radii;
    for (const auto& g : per_horizon)
        for (const auto& r : g.threshold_radii()) radii.push_back(r);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (int x0 = 0; x0 < f.entries.front().inst.n; ++x0)
        for (const auto& r : radii) {
            int prev_h = -1;
            PointSet prev;
            bool saw = false;
            for (int m = 0; m < f.depth(); ++m) {
                const auto& e = f.entries[static_cast<size_t>(m)];
                int xm = f.push_point(m, x0);
                PointSet ball = e.inst.closure(
                    per_horizon[static_cast<size_t>(m)].ball_lt(xm, ExtDyadic(r)));
                if (ball.intersects(e.frontier)) continue;
                if (saw) {
                    PointSet pushed = prev;
                    for (int i = prev_h; i < m; ++i) pushed = f.push(i, pushed);
                    if (pushed != ball) {
                        rep.stable = false;
                        rep.witness = "x=" + std::to_string(x0) + " eps=" + r.str() +
                                      " changed between horizons " + std::to_string(prev_h) +
                                      " and " + std::to_string(m);
                        return rep;
                    }
                } else {
                    rep.stable_from = std::max(rep.stable_from, m);
                }
                saw = true;
                prev = ball;
                prev_h = m;
            }
            if (!saw) ++rep.pending;
        }
    return rep;
}

}  // namespace covergauge
