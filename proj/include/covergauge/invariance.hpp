#pragma once

// Group-invariance machinery: the equiregularity decider with its witness
// structure, near-properness, invariant star-refinement (a Stone-type
// construction through the orbit quotient), exhaustion decompositions,
// proper invariant covers, and the metrization pipelines that assemble
// invariant (proper) gauge families from these pieces.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covergauge/cover.hpp"
#include "covergauge/error.hpp"
#include "covergauge/gauge.hpp"
#include "covergauge/space.hpp"
#include "covergauge/tunnel.hpp"

namespace covergauge {

// ---------------------------------------------------------------------------
// Cover invariance and saturation.

inline Verdict is_invariant_cover(const GroupAction& ga, const Cover& u) {
    bool partials = false;
    for (size_t gi = 0; gi < ga.elements.size(); ++gi) {
        const auto& g = ga.elements[gi];
        if (!g.total()) { partials = true; continue; }
        for (const auto& m : u.members)
            if (!u.has_member(g.image(m)))
                return {false, "g#" + std::to_string(gi) + " image " + g.image(m).str(),
                        ga.qualifier()};
    }
    std::string qual = ga.qualifier();
    if (partials) qual = qual.empty() ? "window elements skipped" : qual + "; window elements skipped";
    return {true, "", qual};
}

inline Cover saturate_cover(const GroupAction& ga, const Cover& u) {
    std::vector<PointSet> members = u.members;
    for (const auto& g : ga.elements) {
        if (!g.total()) continue;
        for (const auto& m : u.members) members.push_back(g.image(m));
    }
    return Cover(members);
}

// ---------------------------------------------------------------------------
// Equiregularity.
//
// For every x and every basis neighborhood U of x there must be a basis V
// containing x with cl(V) inside U such that every y has a basis
// neighborhood N_y whose images under the action cannot meet cl(V) without
// landing inside U. Searches run in (size, lex) order, first hit wins, so
// witnesses are deterministic.
//
// With window (partial) elements the per-check logic is three-valued: an
// image that visibly leaves U refutes, an invisible remainder that might
// leave U is indeterminate, everything else is exact.

enum class Tri { yes, no, unknown };

struct EquiregEntry {
    PointSet v;                  // chosen V for this (x, U)
    std::vector<PointSet> n_of;  // chosen N_y per point y
};

struct EquiregResult {
    Tri status = Tri::yes;
    int fail_x = -1;             // witness (x, U) on failure
    PointSet fail_u;
    std::string qualifier;
    // witness table keyed by (x, basis index of U); present when status==yes
    std::map<std::pair<int, int>, EquiregEntry> witness;
};

namespace detail {
// Classification of one candidate N against (cl(V), U) over all elements.
inline Tri classify_nbhd(const GroupAction& ga, const PointSet& n, const PointSet& clv,
                         const PointSet& u) {
    bool unknown = false;
    for (const auto& g : ga.elements) {
        PointSet visible = g.image(n);
        if (!visible.intersects(clv)) continue;   // cannot meet: exact under window semantics
        if (!visible.subset_of(u)) return Tri::no;  // a visible point escapes U
        if (!g.defined_on(n)) unknown = true;       // clipped image might escape
    }
    return unknown ? Tri::unknown : Tri::yes;
}
}  // namespace detail

inline EquiregResult equiregularity_check(const SpaceInstance& inst, const GroupAction& ga) {
    EquiregResult res;
    res.qualifier = ga.qualifier();
    bool any_unknown = false;
    // cache: (basis index of V, basis index of U) -> classification per N index
    std::map<std::pair<int, int>, std::vector<Tri>> cache;
    for (int x = 0; x < inst.n; ++x) {
        for (int ui : inst.basis_order) {
            const PointSet& u = inst.basis[ui];
            if (!u.contains(x)) continue;
            bool found = false, blocked_by_unknown = false;
            for (int vi : inst.basis_order) {
                const PointSet& v = inst.basis[vi];
                if (!v.contains(x)) continue;
                PointSet clv = inst.closure(v);
                if (!clv.subset_of(u)) continue;
                auto key = std::make_pair(vi, ui);
                auto it = cache.find(key);
                if (it == cache.end()) {
                    std::vector<Tri> cls;
                    cls.reserve(inst.basis.size());
                    for (const auto& nb : inst.basis)
                        cls.push_back(detail::classify_nbhd(ga, nb, clv, u));
                    it = cache.emplace(key, std::move(cls)).first;
                }
                const auto& cls = it->second;
                EquiregEntry entry;
                entry.v = v;
                entry.n_of.assign(static_cast<size_t>(inst.n), PointSet());
                bool v_ok = true, v_unknown = false;
                for (int y = 0; y < inst.n && v_ok; ++y) {
                    bool got = false, saw_unknown = false;
                    for (int ni : inst.basis_order) {
                        if (!inst.basis[ni].contains(y)) continue;
                        Tri c = cls[static_cast<size_t>(ni)];
                        if (c == Tri::yes) {
                            entry.n_of[static_cast<size_t>(y)] = inst.basis[ni];
                            got = true;
                            break;
                        }
                        if (c == Tri::unknown) saw_unknown = true;
                    }
                    if (!got) {
                        v_ok = false;
                        v_unknown = saw_unknown;
                    }
                }
                if (v_ok) {
                    res.witness[{x, ui}] = std::move(entry);
                    found = true;
                    break;
                }
                if (v_unknown) blocked_by_unknown = true;
            }
            if (!found) {
                if (blocked_by_unknown) {
                    any_unknown = true;
                } else {
                    res.status = Tri::no;
                    res.fail_x = x;
                    res.fail_u = u;
                    return res;
                }
            }
        }
    }
    if (any_unknown) res.status = Tri::unknown;
    return res;
}

// ---------------------------------------------------------------------------
// Near-properness: translates of a bounded set that meet a bounded set must
// have bounded union closure. Evaluated at generator pairs. A pair is
// indeterminate at a window when a clipped translate visibly meets B (its
// unseen part could contribute anywhere) or when the union closure touches
// the declared frontier (the ambient union may extend past the window).

struct NearProperResult {
    Tri status = Tri::yes;
    PointSet fail_a, fail_b, fail_union;  // witness pair and its union on failure
    std::string qualifier;
};

inline NearProperResult near_properness_check(const SpaceInstance& inst, const GroupAction& ga,
                                              const PointSet& frontier = PointSet()) {
    NearProperResult res;
    res.qualifier = ga.qualifier();
    if (inst.bornology.full) return res;
    bool any_unknown = false;
    for (const auto& a : inst.bornology.generators)
        for (const auto& b : inst.bornology.generators) {
            PointSet uni;
            bool contact = false;
            for (const auto& g : ga.elements) {
                PointSet visible = g.image(a);
                if (!visible.intersects(b)) continue;
                if (!g.defined_on(a)) { contact = true; break; }
                uni = uni | visible;
            }
            if (contact) { any_unknown = true; continue; }
            PointSet cl = inst.closure(uni);
            if (cl.intersects(frontier)) { any_unknown = true; continue; }
            if (!inst.bornology.bounded(cl)) {
                res.status = Tri::no;
                res.fail_a = a;
                res.fail_b = b;
                res.fail_union = uni;
                return res;
            }
        }
    if (any_unknown) res.status = Tri::unknown;
    return res;
}

// ---------------------------------------------------------------------------
// Pipeline trace: an ordered record of what each stage produced.

struct TraceStep {
    std::string stage;
    std::string detail;
};

struct PipelineTrace {
    std::vector<TraceStep> steps;
    void add(const std::string& stage, const std::string& detail) {
        steps.push_back({stage, detail});
    }
};

// ---------------------------------------------------------------------------
// Invariant star-refinement. Given an invariant open cover and an
// equiregularity witness, produces an invariant open cover whose point
// stars refine the input. The route goes through the orbit quotient:
// shrink an orbit cover until closures refine projected witness sets, cut
// each point's neighborhood away from the closures it avoids, and saturate.

inline Cover stone_star_refine(const SpaceInstance& inst, const GroupAction& ga,
                               const QuotientSpace& q, const Cover& u,
                               const EquiregResult& w, PipelineTrace* trace = nullptr) {
    if (w.status != Tri::yes)
        throw Error(Errc::hypothesis_fail, "equiregularity witness unavailable");
    Verdict inv = is_invariant_cover(ga, u);
    if (!inv.pass)
        throw Error(Errc::hypothesis_fail, "input cover not invariant: " + inv.witness);

    // Refined family: for each point, a witness V with a designated member
    // of u containing cl(V) and the per-point neighborhood table.
    struct Vitem {
        PointSet v;
        PointSet u_of_v;
        const std::vector<PointSet>* n_of;
    };
    std::vector<Vitem> vs;
    for (int z = 0; z < inst.n; ++z) {
        int ci = -1;
        for (size_t i = 0; i < u.size(); ++i)
            if (u[i].contains(z)) { ci = static_cast<int>(i); break; }
        if (ci < 0) throw Error(Errc::hypothesis_fail, "cover misses point " + std::to_string(z));
        int bi = -1;
        for (int i : inst.basis_order)
            if (inst.basis[i].contains(z) && inst.basis[i].subset_of(u[static_cast<size_t>(ci)])) {
                bi = i;
                break;
            }
        if (bi < 0)
            throw Error(Errc::hypothesis_fail,
                        "no basis set between point " + std::to_string(z) + " and its cover member");
        auto it = w.witness.find({z, bi});
        if (it == w.witness.end())
            throw Error(Errc::hypothesis_fail,
                        "equiregularity witness missing for x=" + std::to_string(z));
        bool dup = false;
        for (const auto& item : vs)
            if (item.v == it->second.v) { dup = true; break; }
        if (!dup) vs.push_back({it->second.v, u[static_cast<size_t>(ci)], &it->second.n_of});
    }
    if (trace) trace->add("lemma5.1:refined_family", std::to_string(vs.size()) + " witness sets");

    // Shrink an orbit cover: per orbit point, a quotient-open whose closure
    // lies inside some projected witness set.
    struct Litem {
        PointSet w_set;   // quotient open
        PointSet cl_set;  // its closure in the quotient
        int v_index;
    };
    std::vector<Litem> ls;
    for (int qp = 0; qp < q.quotient.n; ++qp) {
        int pick_w = -1, pick_v = -1;
        for (int wi : q.quotient.basis_order) {
            const PointSet& cand = q.quotient.basis[wi];
            if (!cand.contains(qp)) continue;
            PointSet cl = q.quotient.closure(cand);
            for (size_t vi = 0; vi < vs.size(); ++vi)
                if (cl.subset_of(q.project(vs[vi].v))) {
                    pick_w = wi;
                    pick_v = static_cast<int>(vi);
                    break;
                }
            if (pick_w >= 0) break;
        }
        if (pick_w < 0)
            throw Error(Errc::hypothesis_fail,
                        "lemma5.1:shrinking failed at orbit " + std::to_string(qp) +
                            " (quotient not regular enough)");
        PointSet wset = q.quotient.basis[pick_w];
        bool dup = false;
        for (const auto& l : ls)
            if (l.w_set == wset && l.v_index == pick_v) { dup = true; break; }
        if (!dup) ls.push_back({wset, q.quotient.closure(wset), pick_v});
    }
    if (trace) trace->add("lemma5.1:shrinking", std::to_string(ls.size()) + " orbit sets");

    // Per point: intersect the neighborhoods attached to the orbit sets
    // whose closures contain its orbit, then cut away the other closures.
    std::vector<PointSet> base_nbhds;
    for (int x = 0; x < inst.n; ++x) {
        int xq = q.orbit_of[x];
        PointSet nx = inst.all_points();
        PointSet cx;  // union of closures avoiding the orbit of x
        bool touched = false;
        for (const auto& l : ls) {
            if (l.cl_set.contains(xq)) {
                touched = true;
                const Vitem& vit = vs[static_cast<size_t>(l.v_index)];
                // least enumerated element moving the witness set over x
                int pick_g = -1;
                for (size_t gi = 0; gi < ga.elements.size(); ++gi)
                    if (ga.elements[gi].image(vit.v).contains(x)) {
                        pick_g = static_cast<int>(gi);
                        break;
                    }
                if (pick_g < 0)
                    throw Error(Errc::hypothesis_fail,
                                "lemma5.1:translate of witness set not found over x=" +
                                    std::to_string(x) + (ga.complete ? "" : " (capped group)"));
                PointSet moved = ga.elements[static_cast<size_t>(pick_g)].image(vit.v);
                PointSet n_here = (*vit.n_of)[static_cast<size_t>(x)] & moved;
                nx = nx & n_here;
            } else {
                cx = cx | l.cl_set;
            }
        }
        if (!touched)
            throw Error(Errc::hypothesis_fail,
                        "lemma5.1:orbit cover misses orbit of " + std::to_string(x));
        nx = nx - q.preimage(cx);
        if (!nx.contains(x))
            throw Error(Errc::hypothesis_fail,
                        "lemma5.1:N_x construction lost x=" + std::to_string(x));
        base_nbhds.push_back(nx);
    }
    if (trace) trace->add("lemma5.1:N_x", "per-point neighborhoods built");

    std::vector<PointSet> members;
    for (const auto& nx : base_nbhds)
        for (const auto& g : ga.elements) {
            if (!g.total()) continue;
            members.push_back(g.image(nx));
        }
    Cover out(members);
    if (trace) trace->add("lemma5.1:output", std::to_string(out.size()) + " members");
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustion decomposition: from an increasing chain of closed bounded sets
// exhausting the space, annular blocks K_i and cushions L_i with the five
// disjointness and containment properties.

struct ExhaustionDecomposition {
    std::vector<PointSet> d, k, l;
};

inline ExhaustionDecomposition exhaustion_decomposition(const SpaceInstance& inst,
                                                        const std::vector<PointSet>& d) {
    if (d.empty()) throw Error(Errc::bad_exhaustion, "empty chain");
    for (size_t i = 0; i < d.size(); ++i) {
        if (!inst.is_closed(d[i]))
            throw Error(Errc::bad_exhaustion, "D" + std::to_string(i + 1) + " not closed");
        if (!inst.bornology.bounded(d[i]))
            throw Error(Errc::bad_exhaustion, "D" + std::to_string(i + 1) + " not bounded");
        if (i + 1 < d.size() && !d[i].subset_of(inst.interior(d[i + 1])))
            throw Error(Errc::bad_exhaustion, "D" + std::to_string(i + 1) +
                                                  " not inside int(D" + std::to_string(i + 2) + ")");
    }
    if (d.back() != inst.all_points())
        throw Error(Errc::bad_exhaustion, "chain does not exhaust the space");
    ExhaustionDecomposition out;
    out.d = d;
    auto dd = [&](int i) {  // 1-based with D_0 empty and D_{>len} = X
        if (i <= 0) return PointSet();
        if (i > static_cast<int>(d.size())) return inst.all_points();
        return d[static_cast<size_t>(i - 1)];
    };
    int len = static_cast<int>(d.size());
    for (int i = 1; i <= len; ++i) {
        if (i == 1)
            out.k.push_back(dd(1));
        else
            out.k.push_back(dd(i) - inst.interior(dd(i - 1)));
        if (i <= 2)
            out.l.push_back(inst.interior(dd(i + 1)));
        else
            out.l.push_back(inst.interior(dd(i + 1)) - dd(i - 2));
    }
    return out;
}

struct DecompositionReport {
    bool pass = true;
    std::vector<std::string> failures;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

inline DecompositionReport verify_decomposition(const SpaceInstance& inst,
                                                const ExhaustionDecomposition& e) {
    DecompositionReport rep;
    PointSet all;
    for (const auto& k : e.k) all = all | k;
    rep.check(all == inst.all_points(), "union of K covers");
    int len = static_cast<int>(e.k.size());
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) {
            if (std::abs(i - j) > 1)
                rep.check(!e.k[static_cast<size_t>(i)].intersects(e.k[static_cast<size_t>(j)]),
                          "K" + std::to_string(i + 1) + " disjoint K" + std::to_string(j + 1));
            if (std::abs(i - j) > 1)
                rep.check(!e.l[static_cast<size_t>(i)].intersects(e.k[static_cast<size_t>(j)]),
                          "L" + std::to_string(i + 1) + " disjoint K" + std::to_string(j + 1));
            if (std::abs(i - j) > 2)
                rep.check(!e.l[static_cast<size_t>(i)].intersects(e.l[static_cast<size_t>(j)]),
                          "L" + std::to_string(i + 1) + " disjoint L" + std::to_string(j + 1));
        }
    for (int i = 0; i < len; ++i)
        rep.check(e.k[static_cast<size_t>(i)].subset_of(e.l[static_cast<size_t>(i)]),
                  "K" + std::to_string(i + 1) + " inside L" + std::to_string(i + 1));
    return rep;
}

// ---------------------------------------------------------------------------
// Proper invariant cover. Pushes an exhaustion of the space to the orbit
// quotient, re-fattens it into a closed bounded interior chain there, picks
// finite families of small opens over each annulus, and saturates.

namespace detail {
// Closed bounded thickening E of S with S inside int(E).
inline PointSet fatten(const SpaceInstance& inst, PointSet s, const char* what) {
    PointSet e = inst.closure(s);
    while (!s.subset_of(inst.interior(e))) {
        PointSet missing = s - inst.interior(e);
        e = inst.closure(e | inst.min_nbhd(missing.first()));
    }
    if (!inst.bornology.bounded(e))
        throw Error(Errc::hypothesis_fail,
                    std::string(what) + ": no bounded thickening of " + s.str());
    return e;
}
}  // namespace detail

inline Cover proper_invariant_cover(const SpaceInstance& inst, const GroupAction& ga,
                                    const QuotientSpace& q, const std::vector<PointSet>& d,
                                    PipelineTrace* trace = nullptr) {
    NearProperResult np = near_properness_check(inst, ga);
    if (np.status == Tri::no)
        throw Error(Errc::not_nearly_proper,
                    "A=" + np.fail_a.str() + " B=" + np.fail_b.str() + " union=" +
                        np.fail_union.str());
    if (np.status == Tri::unknown)
        throw Error(Errc::hypothesis_fail, "near-properness indeterminate at this window");

    // Quotient exhaustion: fatten projected chain links into closed bounded
    // sets with interior steps.
    std::vector<PointSet> qd;
    for (size_t i = 0; i < d.size(); ++i) {
        PointSet c = q.project(d[i]);
        if (!qd.empty()) c = c | qd.back();
        qd.push_back(detail::fatten(q.quotient, c, "lem5.3:quotient exhaustion"));
    }
    if (qd.empty() || qd.back() != q.quotient.all_points()) {
        // top up so the chain exhausts the quotient
        qd.push_back(detail::fatten(q.quotient, q.quotient.all_points(),
                                    "lem5.3:quotient exhaustion"));
    }
    ExhaustionDecomposition dec = exhaustion_decomposition(q.quotient, qd);
    DecompositionReport drep = verify_decomposition(q.quotient, dec);
    if (!drep.pass)
        throw Error(Errc::hypothesis_fail, "lem5.3:decomposition " + drep.failures.front());
    if (trace)
        trace->add("prop5.2:decomposition",
                   std::to_string(dec.k.size()) + " annuli over the quotient");

    // Finite families of small opens whose projections cover each annulus
    // inside its cushion.
    std::vector<PointSet> family;
    for (size_t i = 0; i < dec.k.size(); ++i) {
        for (int qp : dec.k[i].points()) {
            int x = q.orbits[static_cast<size_t>(qp)].first();
            int pick = -1;
            for (int bi : inst.basis_order) {
                const PointSet& b = inst.basis[bi];
                if (!b.contains(x)) continue;
                if (!q.project(b).subset_of(dec.l[i])) continue;
                if (!inst.bornology.bounded(inst.closure(b))) continue;
                pick = bi;
                break;
            }
            if (pick < 0)
                throw Error(Errc::hypothesis_fail,
                            "lem5.3:no bounded open over orbit " + std::to_string(qp) +
                                " inside its cushion");
            family.push_back(inst.basis[pick]);
        }
    }
    Cover sat = saturate_cover(ga, Cover(family));
    if (!sat.covers(inst))
        throw Error(Errc::hypothesis_fail,
                    "lem5.3:saturated family does not cover" +
                        std::string(ga.complete ? "" : " (capped group)"));
    Verdict proper = is_proper_cover(inst, sat);
    if (!proper.pass)
        throw Error(Errc::hypothesis_fail, "lem5.3:output not proper at " + proper.witness);
    Verdict inv = is_invariant_cover(ga, sat);
    if (!inv.pass)
        throw Error(Errc::hypothesis_fail, "lem5.3:output not invariant at " + inv.witness);
    if (trace)
        trace->add("lem5.3:proper_cover", std::to_string(sat.size()) + " members");
    return sat;
}

// ---------------------------------------------------------------------------
// Metrization pipelines.

struct GaugeFamily {
    std::vector<ExtGauge> gauges;
    std::vector<std::string> tags;
    bool separating = false;
    std::string qualifier;
    PipelineTrace trace;

    bool evaluate_separating() {
        separating = true;
        if (gauges.empty()) { separating = false; return false; }
        int n = gauges[0].n;
        for (int x = 0; x < n && separating; ++x)
            for (int y = x + 1; y < n; ++y) {
                bool sep = false;
                for (const auto& g : gauges)
                    if (!g.at(x, y).is_zero()) { sep = true; break; }
                if (!sep) { separating = false; break; }
            }
        return separating;
    }
};

struct MetrizeTarget {
    int x = 0;
    int basis_index = 0;  // index into inst.basis
};

// Builds, per target (x, U): an invariant cover of witness neighborhoods
// whose star at x stays inside U, a tower of invariant star-refinements,
// the chain distance of its odd levels, and its decapitation. Verifies the
// ball condition and exact invariance of every output.
inline GaugeFamily metrize(const SpaceInstance& inst, const GroupAction& ga,
                           const std::vector<MetrizeTarget>& targets, int depth = 4) {
    EquiregResult w = equiregularity_check(inst, ga);
    if (w.status == Tri::no)
        throw Error(Errc::not_equiregular,
                    "x=" + std::to_string(w.fail_x) + " U=" + w.fail_u.str());
    if (w.status == Tri::unknown)
        throw Error(Errc::hypothesis_fail, "equiregularity indeterminate at this window");
    QuotientSpace q = orbit_quotient(inst, ga);
    GaugeFamily fam;
    fam.qualifier = ga.qualifier();
    for (const auto& t : targets) {
        const PointSet& u = inst.basis.at(static_cast<size_t>(t.basis_index));
        if (!u.contains(t.x))
            throw Error(Errc::validation_error, "target set does not contain its point");
        auto it = w.witness.find({t.x, t.basis_index});
        if (it == w.witness.end())
            throw Error(Errc::hypothesis_fail, "witness missing for target");
        std::vector<PointSet> members;
        for (int y = 0; y < inst.n; ++y)
            for (const auto& g : ga.elements) {
                if (!g.total()) continue;
                members.push_back(g.image(it->second.n_of[static_cast<size_t>(y)]));
            }
        Cover v1(members);
        fam.trace.add("thm1.1:first_cover", "target x=" + std::to_string(t.x) + " U=" + u.str() +
                                                " cover size " + std::to_string(v1.size()));
        if (!star_point(t.x, v1).subset_of(u))
            throw Error(Errc::hypothesis_fail, "thm1.1:star of first cover escapes target set");
        std::vector<Cover> levels{v1};
        for (int i = 1; i < 2 * depth - 1; ++i)
            levels.push_back(stone_star_refine(inst, ga, q, levels.back(), w, &fam.trace));
        Development dev = odd_levels(levels);
        ExtGauge rho = au_distance(inst, dev);
        ExtGauge sigma = decapitate(rho);
        fam.trace.add("thm2.1:distance", "target x=" + std::to_string(t.x));
        if (!sigma.ball_lt(t.x, ExtDyadic(Dyadic(1, 1))).subset_of(u))
            throw Error(Errc::hypothesis_fail, "thm1.1:half-ball escapes target set");
        Verdict inv = is_invariant_gauge(ga, sigma);
        if (!inv.pass)
            throw Error(Errc::hypothesis_fail, "thm1.1:output gauge not invariant at " + inv.witness);
        fam.gauges.push_back(sigma);
        fam.tags.push_back("x=" + std::to_string(t.x) + ",U=" + u.str());
    }
    fam.evaluate_separating();
    fam.trace.add("thm1.1:family",
                  std::string("separating=") + (fam.separating ? "true" : "false"));
    return fam;
}

// Default target list: every (x, first basis neighborhood of x in search
// order), deduplicated.
inline std::vector<MetrizeTarget> default_targets(const SpaceInstance& inst) {
    std::vector<MetrizeTarget> ts;
    for (int x = 0; x < inst.n; ++x)
        for (int bi : inst.basis_order)
            if (inst.basis[bi].contains(x)) {
                ts.push_back({x, bi});
                break;
            }
    return ts;
}

// Proper invariant metrization: a proper invariant cover seeds the
// refinement tower, the chain distance of its odd levels is a proper
// invariant extended gauge, saturated hub tunnels make it finite, and each
// supplied gauge is max-combined with the result.
inline GaugeFamily proper_metrize(const SpaceInstance& inst, const GroupAction& ga,
                                  const std::vector<PointSet>& exhaustion,
                                  const GaugeFamily& p, int depth = 4) {
    EquiregResult w = equiregularity_check(inst, ga);
    if (w.status == Tri::no)
        throw Error(Errc::not_equiregular,
                    "x=" + std::to_string(w.fail_x) + " U=" + w.fail_u.str());
    if (w.status == Tri::unknown)
        throw Error(Errc::hypothesis_fail, "equiregularity indeterminate at this window");
    QuotientSpace q = orbit_quotient(inst, ga);
    GaugeFamily fam;
    fam.qualifier = ga.qualifier();
    Cover u1 = proper_invariant_cover(inst, ga, q, exhaustion, &fam.trace);
    std::vector<Cover> levels{u1};
    for (int i = 1; i < 2 * depth - 1; ++i)
        levels.push_back(stone_star_refine(inst, ga, q, levels.back(), w, &fam.trace));
    Development dev = odd_levels(levels);
    Verdict lvl_proper = is_proper_cover(inst, dev.levels[0]);
    if (!lvl_proper.pass)
        throw Error(Errc::hypothesis_fail, "thm1.3:first level not proper");
    ExtGauge rho = au_distance(inst, dev);
    fam.trace.add("thm2.1:distance", "proper tower");
    Verdict rho_proper = is_proper_gauge(inst, rho);
    if (!rho_proper.pass)
        throw Error(Errc::hypothesis_fail, "thm3.3:chain distance not proper at " + rho_proper.witness);
    Verdict rho_inv = is_invariant_gauge(ga, rho);
    if (!rho_inv.pass)
        throw Error(Errc::hypothesis_fail, "lem4.1:chain distance not invariant at " + rho_inv.witness);
    Partition part = crevasse_partition(rho);
    fam.trace.add("prop3.8:crevasses", std::to_string(part.blocks.size()) + " blocks");
    ExtGauge tau = rho;
    if (part.blocks.size() > 1) {
        TunnelSystem t = make_star_tunnels(part);
        TunnelSystem gt = g_saturate_tunnels(inst, ga, rho, t);
        fam.trace.add("cor4.4:tunnels", std::to_string(gt.tunnels.size()) + " saturated tunnels");
        tau = tunnel_distance(inst, rho, gt);
        Verdict t_proper = is_proper_tunnel_system(inst, gt);
        if (!t_proper.pass)
            throw Error(Errc::hypothesis_fail, "thm3.7:tunnel system not proper at " + t_proper.witness);
    }
    Verdict tau_proper = is_proper_gauge(inst, tau);
    if (!tau_proper.pass)
        throw Error(Errc::hypothesis_fail, "thm3.7:tunnel distance not proper at " + tau_proper.witness);
    Verdict tau_inv = is_invariant_gauge(ga, tau);
    if (!tau_inv.pass)
        throw Error(Errc::hypothesis_fail, "lem4.2:tunnel distance not invariant at " + tau_inv.witness);
    fam.trace.add("thm1.3:tunnel_distance", "finite proper invariant gauge");
    for (size_t i = 0; i < p.gauges.size(); ++i) {
        ExtGauge combined = max_combine({p.gauges[i], tau});
        Verdict cp = is_proper_gauge(inst, combined);
        if (!cp.pass)
            throw Error(Errc::hypothesis_fail, "thm1.3:combined gauge not proper at " + cp.witness);
        Verdict ci = is_invariant_gauge(ga, combined);
        if (!ci.pass)
            throw Error(Errc::hypothesis_fail, "thm1.3:combined gauge not invariant at " + ci.witness);
        fam.gauges.push_back(combined);
        fam.tags.push_back(p.tags.size() > i ? p.tags[i] : "combined");
    }
    if (fam.gauges.empty()) {
        fam.gauges.push_back(tau);
        fam.tags.push_back("tunnel_distance");
    }
    fam.evaluate_separating();
    fam.trace.add("thm1.3:family",
                  std::string("separating=") + (fam.separating ? "true" : "false"));
    return fam;
}

// Single invariant metric from a separating family: decapitate, combine by
// scaled supremum, optionally max with a proper member, and verify
// equivalence with the input family.
struct SingleMetric {
    ExtGauge metric;
    Verdict equivalent;  // same_topology against the input family
};

inline SingleMetric single_metrize(const SpaceInstance& inst, const GaugeFamily& fam,
                                   const ExtGauge* proper_member = nullptr) {
    std::vector<ExtGauge> decap;
    for (const auto& g : fam.gauges) decap.push_back(decapitate(g));
    SupCombined sup = sup_combine(decap);
    if (!sup.separating)
        throw Error(Errc::not_separating, "pair " + sup.witness);
    SingleMetric out;
    out.metric = sup.gauge;
    if (proper_member) out.metric = max_combine({sup.gauge, *proper_member});
    out.equivalent = same_topology(inst, {out.metric}, fam.gauges);
    return out;
}

// Converse near-properness bound: with an invariant finite gauge, the union
// of translates of A meeting B stays inside the triple ball around a base
// point containing A and B.
struct ConverseNearProperReport {
    bool pass = true;
    std::string witness;
};

inline ConverseNearProperReport verify_converse_near_proper(const SpaceInstance& inst,
                                                            const GroupAction& ga,
                                                            const ExtGauge& rho) {
    ConverseNearProperReport rep;
    std::vector<PointSet> pool = inst.bornology.full
                                     ? std::vector<PointSet>{inst.all_points()}
                                     : inst.bornology.generators;
    int x0 = 0;
    for (const auto& a : pool)
        for (const auto& b : pool) {
            std::int64_t nn = 1;
            for (;;) {
                PointSet ball = rho.ball_lt(x0, ExtDyadic(Dyadic(nn, 0)));
                if ((a | b).subset_of(ball)) break;
                if (++nn > 1 + (1 << 20))
                    return {false, "no finite radius covers A,B"};
            }
            PointSet uni;
            for (const auto& g : ga.elements) {
                if (!g.defined_on(a)) continue;
                PointSet img = g.image(a);
                if (img.intersects(b)) uni = uni | img;
            }
            if (!uni.subset_of(rho.ball_lt(x0, ExtDyadic(Dyadic(3 * nn, 0)))))
                return {false, "union escapes 3n-ball for A=" + a.str() + " B=" + b.str()};
        }
    return rep;
}

}  // namespace covergauge
