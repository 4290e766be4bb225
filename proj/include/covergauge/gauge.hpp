#pragma once

// Extended gauges (pseudometrics valued in the dyadic rationals plus
// infinity) and the chain-distance construction: given a development, every
// deduplicated cover element gets weight 2^-n for the deepest level n
// containing it, and the distance between two points is the minimum total
// weight of a chain of cover elements joining them.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covergauge/cover.hpp"
#include "covergauge/dyadic.hpp"
#include "covergauge/error.hpp"
#include "covergauge/point_set.hpp"
#include "covergauge/space.hpp"

namespace covergauge {

struct ExtGauge {
    int n = 0;
    std::vector<ExtDyadic> m;  // row-major, kept symmetric with zero diagonal

    ExtGauge() = default;
    explicit ExtGauge(int n_) : n(n_), m(static_cast<size_t>(n_) * n_, ExtDyadic::zero()) {}

    const ExtDyadic& at(int x, int y) const { return m[static_cast<size_t>(x) * n + y]; }
    void set(int x, int y, const ExtDyadic& v) {
        m[static_cast<size_t>(x) * n + y] = v;
        m[static_cast<size_t>(y) * n + x] = v;
    }

    PointSet ball_lt(int x, const ExtDyadic& eps) const {
        PointSet r;
        for (int y = 0; y < n; ++y)
            if (at(x, y) < eps) r.add(y);
        return r;
    }
    PointSet ball_le(int x, const ExtDyadic& eps) const {
        PointSet r;
        for (int y = 0; y < n; ++y)
            if (at(x, y) <= eps) r.add(y);
        return r;
    }
    PointSet ball_lt(const PointSet& a, const ExtDyadic& eps) const {
        PointSet r;
        for (int x : a.points()) r = r | ball_lt(x, eps);
        return r;
    }

    // Distinct finite values of the matrix, ascending. Balls are piecewise
    // constant in the radius, changing only at these values, so properness
    // and openness checks evaluate here plus one radius beyond the maximum.
    std::vector<Dyadic> finite_values() const {
        std::vector<Dyadic> vals;
        for (const auto& e : m)
            if (!e.is_inf()) vals.push_back(e.finite());
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }
    // Radii at which every ball shape is realized: each positive finite
    // value (strict balls) and each finite value plus a step (closed balls
    // as strict balls of a slightly larger radius).
    std::vector<Dyadic> threshold_radii() const {
        std::vector<Dyadic> vals = finite_values(), out;
        for (const auto& v : vals) {
            if (!v.is_zero()) out.push_back(v);
            out.push_back(v + Dyadic(1, 0));
        }
        if (out.empty()) out.push_back(Dyadic(1, 0));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const ExtGauge& a, const ExtGauge& b) {
        return a.n == b.n && a.m == b.m;
    }
};

// Weight table of the deduplicated union of all development levels.
struct AuWeights {
    std::vector<PointSet> elements;   // deduplicated by extension, (size,lex) order
    std::vector<Dyadic> weight;       // 2^-(deepest level containing the element)

    int index_of(const PointSet& s) const {
        for (size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == s) return static_cast<int>(i);
        return -1;
    }
};

inline AuWeights au_weights(const Development& dev) {
    AuWeights w;
    std::map<std::uint64_t, int> deepest;  // element bits -> deepest level (1-based)
    for (int l = 0; l < dev.depth(); ++l)
        for (const auto& s : dev.levels[l].members) deepest[s.bits] = l + 1;
    for (const auto& [bits, lvl] : deepest) w.elements.push_back(PointSet(bits));
    std::sort(w.elements.begin(), w.elements.end(), set_order);
    for (const auto& e : w.elements)
        w.weight.push_back(Dyadic::half_pow(deepest[e.bits]));
    return w;
}

namespace detail {
// Node-weighted shortest chain from any element containing x, by Dijkstra.
// dist[i] = least total weight of a chain starting at some element
// containing x and ending at element i.
inline std::vector<ExtDyadic> chain_dijkstra(const AuWeights& w, int x) {
    size_t k = w.elements.size();
    std::vector<ExtDyadic> dist(k, ExtDyadic::infinity());
    std::vector<bool> done(k, false);
    for (size_t i = 0; i < k; ++i)
        if (w.elements[i].contains(x)) dist[i] = ExtDyadic(w.weight[i]);
    for (;;) {
        int best = -1;
        for (size_t i = 0; i < k; ++i)
            if (!done[i] && !dist[i].is_inf() &&
                (best < 0 || dist[i] < dist[static_cast<size_t>(best)]))
                best = static_cast<int>(i);
        if (best < 0) break;
        done[static_cast<size_t>(best)] = true;
        for (size_t j = 0; j < k; ++j) {
            if (done[j] || !w.elements[static_cast<size_t>(best)].intersects(w.elements[j]))
                continue;
            ExtDyadic cand = dist[static_cast<size_t>(best)] + ExtDyadic(w.weight[j]);
            if (cand < dist[j]) dist[j] = cand;
        }
    }
    return dist;
}
}  // namespace detail

// The chain distance of a development. The diagonal is forced to zero: the
// untruncated construction sends it there via arbitrarily deep levels, and
// zero is the unique choice preserving the gauge axioms under truncation.
// When the development declares a refinement structure, that structure is
// verified first.
inline ExtGauge au_distance(const SpaceInstance& inst, const Development& dev) {
    if (dev.levels.empty()) throw Error(Errc::not_development, "no levels");
    for (int l = 0; l < dev.depth(); ++l) {
        auto err = dev.levels[l].validate(inst);
        if (err)
            throw Error(Errc::not_development,
                        "level " + std::to_string(l + 1) + ": " + *err);
    }
    if (dev.declared_k > 0) {
        Verdict v = check_k_development(dev, dev.declared_k);
        if (!v.pass)
            throw Error(Errc::not_development,
                        "declared " + std::to_string(dev.declared_k) +
                            "-development: " + v.witness);
    }
    if (dev.declared_star) {
        Verdict v = check_star_development(dev, inst.n);
        if (!v.pass)
            throw Error(Errc::not_development, "declared star-development: " + v.witness);
    }
    AuWeights w = au_weights(dev);
    ExtGauge g(inst.n);
    for (int x = 0; x < inst.n; ++x) {
        auto dist = detail::chain_dijkstra(w, x);
        for (int y = 0; y < inst.n; ++y) {
            if (y == x) continue;
            ExtDyadic best = ExtDyadic::infinity();
            for (size_t i = 0; i < w.elements.size(); ++i)
                if (w.elements[i].contains(y)) best = ExtDyadic::min(best, dist[i]);
            g.set(x, y, best);
        }
    }
    return g;
}

// Independent verifier: the minimum of chain weights over all chains with at
// most max_links links, computed by dynamic programming on link count
// (a layered relaxation, not a priority-first search). Agrees with
// au_distance whenever max_links >= the number of deduplicated elements,
// since an optimal chain never needs to revisit an element.
inline ExtGauge au_oracle(const SpaceInstance& inst, const Development& dev, int max_links,
                          long node_budget = 2000000) {
    AuWeights w = au_weights(dev);
    size_t k = w.elements.size();
    long work = static_cast<long>(k) * k * max_links;
    if (work > node_budget)
        throw Error(Errc::budget_exceeded,
                    "oracle needs " + std::to_string(work) + " relaxations");
    ExtGauge g(inst.n);
    for (int x = 0; x < inst.n; ++x) {
        std::vector<ExtDyadic> cur(k, ExtDyadic::infinity());
        std::vector<ExtDyadic> reach(k, ExtDyadic::infinity());
        for (size_t i = 0; i < k; ++i)
            if (w.elements[i].contains(x)) cur[i] = ExtDyadic(w.weight[i]);
        for (size_t i = 0; i < k; ++i) reach[i] = cur[i];
        for (int step = 1; step < max_links; ++step) {
            std::vector<ExtDyadic> nxt(k, ExtDyadic::infinity());
            for (size_t i = 0; i < k; ++i) {
                if (cur[i].is_inf()) continue;
                for (size_t j = 0; j < k; ++j)
                    if (w.elements[i].intersects(w.elements[j]))
                        nxt[j] = ExtDyadic::min(nxt[j], cur[i] + ExtDyadic(w.weight[j]));
            }
            for (size_t i = 0; i < k; ++i) reach[i] = ExtDyadic::min(reach[i], nxt[i]);
            cur = std::move(nxt);
        }
        for (int y = 0; y < inst.n; ++y) {
            if (y == x) continue;
            ExtDyadic best = ExtDyadic::infinity();
            for (size_t i = 0; i < k; ++i)
                if (w.elements[i].contains(y)) best = ExtDyadic::min(best, reach[i]);
            g.set(x, y, best);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Gauge axioms, combinators, crevasses.

struct AxiomReport {
    bool pass = true;
    std::string failed_axiom;  // "diagonal" | "symmetry" | "triangle" | "balls_open" | "separation"
    std::string witness;
};

inline AxiomReport gauge_axioms_check(const SpaceInstance& inst, const ExtGauge& g,
                                      bool require_metric = false) {
    for (int x = 0; x < g.n; ++x)
        if (!g.at(x, x).is_zero())
            return {false, "diagonal", "x=" + std::to_string(x)};
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y)
            if (g.at(x, y) != g.at(y, x))
                return {false, "symmetry", std::to_string(x) + "," + std::to_string(y)};
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y)
            for (int z = 0; z < g.n; ++z)
                if (g.at(x, y) + g.at(y, z) < g.at(x, z))
                    return {false, "triangle",
                            std::to_string(x) + "," + std::to_string(y) + "," +
                                std::to_string(z)};
    for (int x = 0; x < g.n; ++x)
        for (const auto& eps : g.threshold_radii()) {
            PointSet b = g.ball_lt(x, ExtDyadic(eps));
            if (!inst.is_open(b))
                return {false, "balls_open",
                        "x=" + std::to_string(x) + " eps=" + eps.str() + " ball=" + b.str()};
        }
    if (require_metric)
        for (int x = 0; x < g.n; ++x)
            for (int y = x + 1; y < g.n; ++y)
                if (g.at(x, y).is_zero())
                    return {false, "separation",
                            std::to_string(x) + "," + std::to_string(y)};
    return {true, "", ""};
}

// Truncation of a gauge at 1. Balls of radius below 1 are unchanged, so the
// result is equivalent to the input; infinite values become 1.
inline ExtGauge decapitate(const ExtGauge& g) {
    ExtGauge r(g.n);
    ExtDyadic one{Dyadic(1, 0)};
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y) r.set(x, y, ExtDyadic::min(g.at(x, y), one));
    return r;
}

// Pointwise maximum. The ball of the maximum is the intersection of the
// balls, and properness is inherited from any proper input.
inline ExtGauge max_combine(const std::vector<ExtGauge>& gs) {
    if (gs.empty()) throw Error(Errc::validation_error, "max_combine needs input");
    ExtGauge r(gs[0].n);
    for (const auto& g : gs)
        if (g.n != r.n) throw Error(Errc::validation_error, "max_combine size mismatch");
    for (int x = 0; x < r.n; ++x)
        for (int y = x + 1; y < r.n; ++y) {
            ExtDyadic v = ExtDyadic::zero();
            for (const auto& g : gs) v = ExtDyadic::max(v, g.at(x, y));
            r.set(x, y, v);
        }
    return r;
}

// sup_i 2^-i rho_i for a finite list of decapitated gauges (1-based i).
// Returns the combined gauge plus a separating flag; a non-separating
// family yields a pseudometric that identifies some pair of points.
struct SupCombined {
    ExtGauge gauge;
    bool separating = true;
    std::string witness;  // first identified pair when not separating
};

inline SupCombined sup_combine(const std::vector<ExtGauge>& gs) {
    if (gs.empty()) throw Error(Errc::validation_error, "sup_combine needs input");
    SupCombined out;
    out.gauge = ExtGauge(gs[0].n);
    for (const auto& g : gs) {
        if (g.n != out.gauge.n)
            throw Error(Errc::validation_error, "sup_combine size mismatch");
        for (const auto& e : g.m)
            if (e.is_inf())
                throw Error(Errc::validation_error, "sup_combine requires finite gauges");
    }
    for (int x = 0; x < out.gauge.n; ++x)
        for (int y = x + 1; y < out.gauge.n; ++y) {
            ExtDyadic v = ExtDyadic::zero();
            for (size_t i = 0; i < gs.size(); ++i) {
                Dyadic term = gs[i].at(x, y).finite().halved(static_cast<int>(i) + 1);
                v = ExtDyadic::max(v, ExtDyadic(term));
            }
            out.gauge.set(x, y, v);
            if (v.is_zero() && out.separating) {
                out.separating = false;
                out.witness = std::to_string(x) + "," + std::to_string(y);
            }
        }
    return out;
}

// Finiteness classes of a gauge. With a triangle inequality these form a
// partition into blocks that are both open and closed.
inline Partition crevasse_partition(const ExtGauge& g) {
    Partition part;
    part.block_of.assign(g.n, -1);
    for (int x = 0; x < g.n; ++x) {
        if (part.block_of[x] >= 0) continue;
        int id = static_cast<int>(part.blocks.size());
        part.blocks.push_back(PointSet());
        for (int y = 0; y < g.n; ++y)
            if (!g.at(x, y).is_inf()) {
                part.block_of[y] = id;
                part.blocks[id].add(y);
            }
    }
    return part;
}

inline std::vector<int> block_representatives(const Partition& p) {
    std::vector<int> reps;
    for (const auto& b : p.blocks) reps.push_back(b.first());
    return reps;
}

// A gauge is proper when every closed ball closure is bounded. Radii are
// checked at the threshold values, which realize every ball shape.
inline Verdict is_proper_gauge(const SpaceInstance& inst, const ExtGauge& g) {
    if (inst.bornology.full) return {true, ""};
    for (int x = 0; x < g.n; ++x)
        for (const auto& eps : g.threshold_radii()) {
            PointSet b = inst.closure(g.ball_lt(x, ExtDyadic(eps)));
            if (!inst.bornology.bounded(b))
                return {false, "x=" + std::to_string(x) + " eps=" + eps.str()};
        }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Verification of the sandwich inclusions and the iterated-star bounds.

struct InclusionReport {
    bool pass = true;
    std::string witness;
};

// For a development with 3-refining levels and its chain distance:
//   ball(x, 2^-n) is inside Star(x, U_n) is inside closed-ball(x, 2^-n)
// at every level. The right inclusion holds for any development.
inline InclusionReport verify_sandwich(const SpaceInstance& inst, const Development& dev,
                                       const ExtGauge& rho) {
    for (int l = 0; l < dev.depth(); ++l) {
        ExtDyadic r{Dyadic::half_pow(l + 1)};
        for (int x = 0; x < inst.n; ++x) {
            PointSet st = star_point(x, dev.levels[l]);
            PointSet lt = rho.ball_lt(x, r);
            if (!lt.subset_of(st))
                return {false, "left: x=" + std::to_string(x) + " n=" + std::to_string(l + 1) +
                                   " y=" + std::to_string((lt - st).first())};
            PointSet le = rho.ball_le(x, r);
            if (!st.subset_of(le))
                return {false, "right: x=" + std::to_string(x) + " n=" +
                                   std::to_string(l + 1) + " y=" +
                                   std::to_string((st - le).first())};
        }
    }
    return {true, ""};
}

inline InclusionReport verify_right_sandwich(const SpaceInstance& inst, const Development& dev,
                                             const ExtGauge& rho) {
    for (int l = 0; l < dev.depth(); ++l) {
        ExtDyadic r{Dyadic::half_pow(l + 1)};
        for (int x = 0; x < inst.n; ++x) {
            PointSet st = star_point(x, dev.levels[l]);
            if (!st.subset_of(rho.ball_le(x, r)))
                return {false, "x=" + std::to_string(x) + " n=" + std::to_string(l + 1)};
        }
    }
    return {true, ""};
}

// Two inclusions tying the chain distance to iterated stars of the first
// level: Star(A, U1) inside ball(A, 1) for every sampled A, and
// ball(x, n/2) inside Star^(2^n - 1)(x, U1) for n = 1..n_max.
inline InclusionReport verify_lemma_3_4(const SpaceInstance& inst, const Development& dev,
                                        const ExtGauge& rho,
                                        const std::vector<PointSet>& samples, int n_max = 3) {
    const Cover& u1 = dev.levels[0];
    ExtDyadic one{Dyadic(1, 0)};
    for (const auto& a : samples) {
        if (!star(a, u1).subset_of(rho.ball_lt(a, one)))
            return {false, "star bound: A=" + a.str()};
    }
    for (int nn = 1; nn <= n_max; ++nn) {
        ExtDyadic r{Dyadic(nn, 1)};  // n/2
        int iters = (1 << nn) - 1;
        for (int x = 0; x < inst.n; ++x) {
            PointSet ball = rho.ball_lt(x, r);
            PointSet st = iterated_star(PointSet::single(x), u1, iters);
            if (!ball.subset_of(st))
                return {false, "ball bound: x=" + std::to_string(x) + " n=" +
                                   std::to_string(nn) + " y=" + std::to_string((ball - st).first())};
        }
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Topology comparison of gauge families.

// Equivalence of the topologies determined by two gauge families. For each
// point and each subbasic ball around it from one family, a finite
// intersection of balls around the same point from the other family must fit
// inside; intersection depth is bounded by the family size.
inline Verdict same_topology(const SpaceInstance& inst, const std::vector<ExtGauge>& p,
                             const std::vector<ExtGauge>& q) {
    auto min_nbhd = [&](const std::vector<ExtGauge>& fam, int x) {
        // Deepest available intersection: the smallest ball around x from
        // every member. Balls around x nest by radius, so this is the finest
        // set reachable within the depth bound |fam|.
        PointSet r = inst.all_points();
        for (const auto& g : fam) {
            PointSet zero;
            for (int y = 0; y < g.n; ++y)
                if (g.at(x, y).is_zero()) zero.add(y);
            r = r & zero;
        }
        return r;
    };
    auto one_way = [&](const std::vector<ExtGauge>& from, const std::vector<ExtGauge>& to,
                       const char* tag) -> Verdict {
        for (size_t gi = 0; gi < from.size(); ++gi)
            for (int x = 0; x < inst.n; ++x) {
                PointSet fine = min_nbhd(to, x);
                for (const auto& eps : from[gi].threshold_radii()) {
                    PointSet ball = from[gi].ball_lt(x, ExtDyadic(eps));
                    if (!fine.subset_of(ball))
                        return {false, std::string(tag) + " gauge " + std::to_string(gi) +
                                           " x=" + std::to_string(x) + " eps=" + eps.str()};
                }
            }
        return {true, ""};
    };
    Verdict v = one_way(p, q, "P->Q");
    if (!v.pass) return v;
    return one_way(q, p, "Q->P");
}

}  // namespace covergauge
