#pragma once

// Finitely presented spaces: a ground set {0..n-1}, a topology given by a
// basis of open sets, a bornology declaring which subsets count as bounded,
// and group actions by (possibly partial) permutations.
//
// A set is open iff it is a union of basis sets; on a finite ground set this
// requires the basis to be intersection-stable, which validate_instance
// checks. All neighborhood searches quantify over basis members only.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "covergauge/error.hpp"
#include "covergauge/point_set.hpp"

namespace covergauge {

// Ideal of bounded sets: bounded(A) iff full or A is contained in some
// generator. Subset-closure is automatic; closure under union holds exactly
// when the generator family is directed, which validate_instance reports.
struct Bornology {
    bool full = true;
    std::vector<PointSet> generators;

    static Bornology full_bornology() { return Bornology{}; }
    static Bornology generated(std::vector<PointSet> gens) {
        Bornology b;
        b.full = false;
        b.generators = std::move(gens);
        return b;
    }

    bool bounded(const PointSet& a) const {
        if (full) return true;
        for (const auto& g : generators)
            if (a.subset_of(g)) return true;
        return false;
    }

    bool directed() const {
        if (full) return true;
        for (const auto& g1 : generators)
            for (const auto& g2 : generators)
                if (!bounded(g1 | g2)) return false;
        return true;
    }
};

struct SpaceInstance {
    int n = 0;
    std::vector<PointSet> basis;        // as declared
    std::vector<int> basis_order;       // indices sorted by set_order
    Bornology bornology;
    std::vector<std::string> labels;    // optional, size n or empty

    SpaceInstance() = default;
    SpaceInstance(int n_, std::vector<PointSet> basis_, Bornology b = Bornology{})
        : n(n_), basis(std::move(basis_)), bornology(std::move(b)) {
        if (n < 0 || n > kMaxPoints)
            throw Error(Errc::validation_error, "point count must be in [0," +
                                                    std::to_string(kMaxPoints) + "]");
        basis_order.resize(basis.size());
        std::iota(basis_order.begin(), basis_order.end(), 0);
        std::stable_sort(basis_order.begin(), basis_order.end(),
                         [&](int i, int j) { return set_order(basis[i], basis[j]); });
    }

    PointSet all_points() const { return PointSet::full(n); }

    std::string label(int p) const {
        if (p >= 0 && p < static_cast<int>(labels.size()) && !labels[p].empty())
            return labels[p];
        return std::to_string(p);
    }

    // Union of basis sets contained in A.
    PointSet interior(const PointSet& a) const {
        PointSet r;
        for (const auto& b : basis)
            if (b.subset_of(a)) r = r | b;
        return r;
    }

    bool is_open(const PointSet& a) const { return interior(a) == a; }

    // Complement of the union of all basis sets disjoint from A.
    PointSet closure(const PointSet& a) const {
        PointSet away;
        for (const auto& b : basis)
            if (!b.intersects(a)) away = away | b;
        return away.complement(n);
    }

    bool is_closed(const PointSet& a) const { return closure(a) == a; }

    // Smallest open set containing p (basis required intersection-stable).
    PointSet min_nbhd(int p) const {
        PointSet r = all_points();
        bool found = false;
        for (const auto& b : basis)
            if (b.contains(p)) { r = r & b; found = true; }
        return found ? r : PointSet();
    }

    bool is_discrete() const {
        for (int p = 0; p < n; ++p)
            if (min_nbhd(p) != PointSet::single(p)) return false;
        return true;
    }

    // Basis members containing p, in deterministic (size, lex) order.
    std::vector<int> basis_around(int p) const {
        std::vector<int> r;
        for (int i : basis_order)
            if (basis[i].contains(p)) r.push_back(i);
        return r;
    }
};

struct ValidationReport {
    bool ok = true;
    std::string rejected_rule;        // first violated rule when !ok
    std::string witness;
    bool discrete = false;
    bool bornology_directed = true;
    std::vector<int> duplicate_basis;  // indices of repeated basis entries
    std::vector<std::string> notes;
};

inline ValidationReport validate_instance(const SpaceInstance& inst) {
    ValidationReport rep;
    PointSet covered;
    for (const auto& b : inst.basis) covered = covered | b;
    if (covered != inst.all_points()) {
        rep.ok = false;
        rep.rejected_rule = "basis_coverage";
        rep.witness = "uncovered point " +
                      std::to_string((inst.all_points() - covered).first());
        return rep;
    }
    for (const auto& b : inst.basis) {
        if (!b.subset_of(inst.all_points())) {
            rep.ok = false;
            rep.rejected_rule = "basis_member_range";
            rep.witness = b.str();
            return rep;
        }
    }
    // Intersection stability: nonempty pairwise intersections must be unions
    // of basis sets, otherwise "union of basis sets" is not a topology.
    for (size_t i = 0; i < inst.basis.size(); ++i) {
        for (size_t j = i + 1; j < inst.basis.size(); ++j) {
            PointSet m = inst.basis[i] & inst.basis[j];
            if (!m.empty() && !inst.is_open(m)) {
                rep.ok = false;
                rep.rejected_rule = "basis_not_intersection_stable";
                rep.witness = inst.basis[i].str() + " meet " + inst.basis[j].str();
                return rep;
            }
        }
    }
    for (size_t i = 0; i < inst.basis.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (inst.basis[i] == inst.basis[j]) {
                rep.duplicate_basis.push_back(static_cast<int>(i));
                break;
            }
    if (!inst.bornology.full) {
        for (const auto& g : inst.bornology.generators)
            if (!g.subset_of(inst.all_points())) {
                rep.ok = false;
                rep.rejected_rule = "bornology_generator_range";
                rep.witness = g.str();
                return rep;
            }
        rep.bornology_directed = inst.bornology.directed();
    }
    rep.discrete = inst.is_discrete();
    return rep;
}

// ---------------------------------------------------------------------------
// Group actions.
//
// Elements are permutations of {0..n-1}, or partial injections when the
// instance is a window of a larger space (image -1 means "maps outside the
// window"). Window semantics: an undefined image is known to land outside
// the ground set, so "g(A) meets B" is decidable from the visible part.

struct PartialPerm {
    std::vector<int> img;  // img[p] in {0..n-1} or -1

    int n() const { return static_cast<int>(img.size()); }
    bool total() const {
        for (int v : img)
            if (v < 0) return false;
        return true;
    }
    bool defined_on(int p) const { return img[p] >= 0; }
    bool defined_on(const PointSet& a) const {
        for (int p : a.points())
            if (img[p] < 0) return false;
        return true;
    }
    PointSet domain() const {
        PointSet d;
        for (int p = 0; p < n(); ++p)
            if (img[p] >= 0) d.add(p);
        return d;
    }
    // Visible image of A: points of A with defined image, mapped.
    PointSet image(const PointSet& a) const {
        PointSet r;
        for (int p : a.points())
            if (img[p] >= 0) r.add(img[p]);
        return r;
    }
    int operator()(int p) const { return img[p]; }

    static PartialPerm identity(int n) {
        PartialPerm g;
        g.img.resize(n);
        std::iota(g.img.begin(), g.img.end(), 0);
        return g;
    }
    // h after g: x -> h(g(x)).
    static PartialPerm compose(const PartialPerm& g, const PartialPerm& h) {
        PartialPerm r;
        r.img.resize(g.n(), -1);
        for (int p = 0; p < g.n(); ++p) {
            int q = g.img[p];
            if (q >= 0) r.img[p] = h.img[q];
        }
        return r;
    }
    PartialPerm inverse() const {
        PartialPerm r;
        r.img.resize(n(), -1);
        for (int p = 0; p < n(); ++p)
            if (img[p] >= 0) r.img[img[p]] = p;
        return r;
    }
    bool injective() const {
        PointSet seen;
        for (int v : img) {
            if (v < 0) continue;
            if (seen.contains(v)) return false;
            seen.add(v);
        }
        return true;
    }
    // True when the other map agrees with this one everywhere this one is
    // defined (this map's graph is contained in the other's).
    bool subsumed_by(const PartialPerm& o) const {
        for (int p = 0; p < n(); ++p)
            if (img[p] >= 0 && o.img[p] != img[p]) return false;
        return true;
    }
    friend bool operator==(const PartialPerm& a, const PartialPerm& b) { return a.img == b.img; }
    friend bool operator<(const PartialPerm& a, const PartialPerm& b) { return a.img < b.img; }
};

struct GroupAction {
    std::vector<PartialPerm> generators;
    std::vector<PartialPerm> elements;  // BFS enumeration order, identity first
    int cap = 4096;
    bool complete = false;
    bool all_total = true;

    // Qualifier string appended to verdicts when the closure was capped.
    std::string qualifier() const {
        return complete ? "" : "verified for enumerated subgroup only";
    }
};

// Breadth-first closure of the generators (and their inverses) under
// composition, up to `cap` elements. Every total element must map basis
// sets to open sets in both directions; partial elements are checked for
// injectivity only, with verdicts downstream qualified by window semantics.
inline GroupAction enumerate_group(const SpaceInstance& inst,
                                   std::vector<PartialPerm> gens, int cap = 4096) {
    GroupAction ga;
    ga.cap = cap;
    ga.generators = gens;
    for (const auto& g : gens) {
        if (g.n() != inst.n)
            throw Error(Errc::validation_error, "generator size mismatch");
        if (!g.injective())
            throw Error(Errc::validation_error, "generator not injective");
    }
    std::vector<PartialPerm> steps;
    for (const auto& g : gens) {
        steps.push_back(g);
        PartialPerm gi = g.inverse();
        if (std::find(steps.begin(), steps.end(), gi) == steps.end()) steps.push_back(gi);
    }
    auto check_homeo = [&](const PartialPerm& g) {
        if (!g.total()) return;  // window element; no total image to test
        PartialPerm gi = g.inverse();
        for (size_t bi = 0; bi < inst.basis.size(); ++bi) {
            if (!inst.is_open(g.image(inst.basis[bi])))
                throw Error(Errc::not_homeomorphism,
                            "element image of basis set " + inst.basis[bi].str() +
                                " is not open");
            if (!inst.is_open(gi.image(inst.basis[bi])))
                throw Error(Errc::not_homeomorphism,
                            "element preimage of basis set " + inst.basis[bi].str() +
                                " is not open");
        }
    };
    ga.elements.push_back(PartialPerm::identity(inst.n));
    std::set<std::vector<int>> seen{ga.elements[0].img};
    ga.complete = true;
    // Window compositions can trim domains below the view of the ambient
    // composite (a trajectory leaving and re-entering the window). A map
    // subsumed by an already-enumerated one carries no extra information
    // and would poison frontier-contact tests, so it is dropped.
    auto subsumed = [&](const PartialPerm& g) {
        for (const auto& e : ga.elements)
            if (g.subsumed_by(e)) return true;
        return false;
    };
    for (size_t head = 0; head < ga.elements.size(); ++head) {
        PartialPerm cur = ga.elements[head];  // copy: vector may reallocate
        for (const auto& s : steps) {
            PartialPerm nxt = PartialPerm::compose(cur, s);
            if (seen.count(nxt.img)) continue;
            seen.insert(nxt.img);
            if (subsumed(nxt)) continue;
            if (static_cast<int>(ga.elements.size()) >= cap) {
                ga.complete = false;
                break;
            }
            check_homeo(nxt);
            ga.elements.push_back(nxt);
        }
        if (!ga.complete) break;
    }
    for (const auto& e : ga.elements)
        if (!e.total()) ga.all_total = false;
    return ga;
}

// The total elements of an enumerated action. For a complete enumeration
// this is a subgroup (total elements are closed under composition and
// inverse); window pipelines act through it.
inline GroupAction total_core(const GroupAction& ga) {
    GroupAction core;
    core.cap = ga.cap;
    core.complete = ga.complete;
    core.all_total = true;
    core.generators = ga.generators;
    for (const auto& e : ga.elements)
        if (e.total()) core.elements.push_back(e);
    return core;
}

inline GroupAction trivial_group(const SpaceInstance& inst) {
    return enumerate_group(inst, {}, 1);
}

// ---------------------------------------------------------------------------
// Orbit quotient. Orbits are the equivalence classes generated by all
// defined pairs x ~ g(x) over the enumerated elements. The quotient topology
// is presented by the basis {pi(B) : B basis of X}; pi is open by
// construction when the enumeration is a complete group of homeomorphisms.

struct QuotientSpace {
    std::vector<int> orbit_of;       // point -> orbit id
    int orbit_count = 0;
    std::vector<PointSet> orbits;    // orbit id -> members in X
    SpaceInstance quotient;          // instance on orbit ids

    PointSet project(const PointSet& a) const {
        PointSet r;
        for (int p : a.points()) r.add(orbit_of[p]);
        return r;
    }
    PointSet preimage(const PointSet& q) const {
        PointSet r;
        for (int b : q.points()) r = r | orbits[b];
        return r;
    }
};

inline QuotientSpace orbit_quotient(const SpaceInstance& inst, const GroupAction& ga) {
    QuotientSpace q;
    std::vector<int> parent(inst.n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : ga.elements)
        for (int p = 0; p < inst.n; ++p)
            if (g.defined_on(p)) {
                int a = find(p), b = find(g(p));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    q.orbit_of.assign(inst.n, -1);
    for (int p = 0; p < inst.n; ++p) {
        int r = find(p);
        if (q.orbit_of[r] < 0) {
            q.orbit_of[r] = q.orbit_count++;
            q.orbits.push_back(PointSet());
        }
        q.orbit_of[p] = q.orbit_of[r];
        q.orbits[q.orbit_of[p]].add(p);
    }
    std::vector<PointSet> qbasis;
    for (const auto& b : inst.basis) {
        PointSet pb = q.project(b);
        if (std::find(qbasis.begin(), qbasis.end(), pb) == qbasis.end())
            qbasis.push_back(pb);
    }
    q.quotient = SpaceInstance(q.orbit_count, qbasis,
                               [&] {
                                   if (inst.bornology.full) return Bornology::full_bornology();
                                   std::vector<PointSet> gens;
                                   for (const auto& g : inst.bornology.generators)
                                       gens.push_back(q.project(g));
                                   return Bornology::generated(gens);
                               }());
    return q;
}

// Exactness of the quotient-open criterion: a quotient subset is open in the
// derived basis iff its saturated preimage is open in X.
inline bool quotient_open_exact(const SpaceInstance& inst, const QuotientSpace& q,
                                const PointSet& a) {
    bool der = q.quotient.is_open(a);
    bool sat = inst.is_open(q.preimage(a));
    return der == sat;
}

// ---------------------------------------------------------------------------
// Separation hypotheses for X and its quotient.

struct SeparationVerdict {
    bool pass = true;
    std::string witness;
};

inline SeparationVerdict hausdorff_check(const SpaceInstance& inst) {
    for (int x = 0; x < inst.n; ++x)
        for (int y = x + 1; y < inst.n; ++y) {
            bool sep = false;
            for (const auto& bx : inst.basis) {
                if (!bx.contains(x)) continue;
                for (const auto& by : inst.basis)
                    if (by.contains(y) && !bx.intersects(by)) { sep = true; break; }
                if (sep) break;
            }
            if (!sep)
                return {false, "points " + std::to_string(x) + "," + std::to_string(y)};
        }
    return {true, ""};
}

// Regularity: every (point, basis neighborhood) pair admits a basis V with
// x in V and cl(V) inside the neighborhood.
inline SeparationVerdict regularity_check(const SpaceInstance& inst) {
    for (int x = 0; x < inst.n; ++x)
        for (int ui : inst.basis_order) {
            const PointSet& u = inst.basis[ui];
            if (!u.contains(x)) continue;
            bool ok = false;
            for (int vi : inst.basis_order) {
                const PointSet& v = inst.basis[vi];
                if (v.contains(x) && inst.closure(v).subset_of(u)) { ok = true; break; }
            }
            if (!ok)
                return {false, "x=" + std::to_string(x) + " U=" + u.str()};
        }
    return {true, ""};
}

struct HypothesisReport {
    SeparationVerdict x_hausdorff, x_regular;
    SeparationVerdict q_hausdorff, q_regular;
    bool paracompact = true;  // trivially, on finite instances
};

inline HypothesisReport hypothesis_report(const SpaceInstance& inst, const QuotientSpace& q) {
    HypothesisReport r;
    r.x_hausdorff = hausdorff_check(inst);
    r.x_regular = regularity_check(inst);
    r.q_hausdorff = hausdorff_check(q.quotient);
    r.q_regular = regularity_check(q.quotient);
    return r;
}

}  // namespace covergauge
