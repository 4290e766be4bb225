#pragma once

// Open covers and their combinatorics: stars, chains, chain components,
// star-/k-refinement, developments, and proper covers.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covergauge/error.hpp"
#include "covergauge/point_set.hpp"
#include "covergauge/space.hpp"

namespace covergauge {

// A family of nonempty open sets covering the instance. Members are
// deduplicated by extension and kept in (size, lex) order.
struct Cover {
    std::vector<PointSet> members;

    Cover() = default;
    explicit Cover(std::vector<PointSet> m) {
        for (const auto& s : m) {
            if (s.empty()) continue;
            if (std::find(members.begin(), members.end(), s) == members.end())
                members.push_back(s);
        }
        std::sort(members.begin(), members.end(), set_order);
    }

    size_t size() const { return members.size(); }
    const PointSet& operator[](size_t i) const { return members[i]; }

    PointSet support() const {
        PointSet u;
        for (const auto& m : members) u = u | m;
        return u;
    }
    bool covers(const SpaceInstance& inst) const { return support() == inst.all_points(); }

    std::optional<std::string> validate(const SpaceInstance& inst) const {
        if (!covers(inst)) return "cover does not cover all points";
        for (const auto& m : members)
            if (!inst.is_open(m)) return "cover member " + m.str() + " is not open";
        return std::nullopt;
    }

    bool has_member(const PointSet& s) const {
        return std::find(members.begin(), members.end(), s) != members.end();
    }
    // Some member containing A entirely, or -1.
    int member_containing(const PointSet& a) const {
        for (size_t i = 0; i < members.size(); ++i)
            if (a.subset_of(members[i])) return static_cast<int>(i);
        return -1;
    }
};

inline PointSet star(const PointSet& a, const Cover& u) {
    PointSet r;
    for (const auto& m : u.members)
        if (m.intersects(a)) r = r | m;
    return r;
}

inline PointSet star_point(int p, const Cover& u) { return star(PointSet::single(p), u); }

inline PointSet iterated_star(const PointSet& a, const Cover& u, int n) {
    PointSet r = a;
    for (int i = 0; i < n; ++i) r = star(r, u);
    return r;
}

// Connected components of the intersection graph of cover members,
// projected to points. Components partition the space into clopen sets.
struct Partition {
    std::vector<int> block_of;      // point -> block id
    std::vector<PointSet> blocks;
};

inline Partition chain_components(const Cover& u, int n) {
    std::vector<int> comp(u.size());
    for (size_t i = 0; i < u.size(); ++i) comp[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
            if (u[i].intersects(u[j])) {
                int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                if (a != b) comp[std::max(a, b)] = std::min(a, b);
            }
    Partition part;
    part.block_of.assign(n, -1);
    std::vector<int> block_id(u.size(), -1);
    for (int p = 0; p < n; ++p) {
        if (part.block_of[p] >= 0) continue;
        for (size_t i = 0; i < u.size(); ++i) {
            if (!u[i].contains(p)) continue;
            int r = find(static_cast<int>(i));
            if (block_id[r] < 0) {
                block_id[r] = static_cast<int>(part.blocks.size());
                part.blocks.push_back(PointSet());
            }
            // sweep every member of this component into the block
            for (size_t j = 0; j < u.size(); ++j)
                if (find(static_cast<int>(j)) == r) {
                    for (int q : u[j].points()) part.block_of[q] = block_id[r];
                    part.blocks[block_id[r]] = part.blocks[block_id[r]] | u[j];
                }
            break;
        }
    }
    return part;
}

struct Verdict {
    bool pass = true;
    std::string witness;
    std::string qualified;  // nonempty when only a capped subgroup was checked
};

// V star-refines U: every point star of V fits inside a member of U.
inline Verdict is_star_refinement(const Cover& v, const Cover& u, int n) {
    for (int x = 0; x < n; ++x)
        if (u.member_containing(star_point(x, v)) < 0)
            return {false, "x=" + std::to_string(x)};
    return {true, ""};
}

// Every V-chain with at most k links has its union inside a member of U.
// Chains may repeat members; enumeration prunes extensions whose running
// union already fits no member of U (unions only grow along a chain).
inline Verdict k_refines(const Cover& v, const Cover& u, int k) {
    if (k < 1) throw Error(Errc::validation_error, "k_refines requires k >= 1");
    std::vector<int> chain;
    std::function<std::optional<std::vector<int>>(int, PointSet)> extend =
        [&](int last, PointSet uni) -> std::optional<std::vector<int>> {
        if (u.member_containing(uni) < 0) return chain;  // witness
        if (static_cast<int>(chain.size()) == k) return std::nullopt;
        for (size_t j = 0; j < v.size(); ++j) {
            if (!v[static_cast<size_t>(last)].intersects(v[j])) continue;
            PointSet nu = uni | v[j];
            if (nu == uni && static_cast<int>(j) == last) continue;  // no-op repeat
            chain.push_back(static_cast<int>(j));
            auto w = extend(static_cast<int>(j), nu);
            if (w) return w;
            chain.pop_back();
        }
        return std::nullopt;
    };
    for (size_t i = 0; i < v.size(); ++i) {
        chain = {static_cast<int>(i)};
        auto w = extend(static_cast<int>(i), v[i]);
        if (w) {
            std::string s = "chain";
            for (int idx : *w) s += " " + v[static_cast<size_t>(idx)].str();
            return {false, s};
        }
    }
    return {true, ""};
}

// A finite truncation of a development with optional refinement structure.
struct Development {
    std::vector<Cover> levels;
    bool declared_star = false;  // each level from the second star-refines its predecessor
    int declared_k = 0;          // each level from the second k-refines its predecessor

    int depth() const { return static_cast<int>(levels.size()); }
};

// Weakened development basis condition: point stars over all levels form a
// basis for some topology. For all x, y, levels m, n and z in
// Star(x,Um) meet Star(y,Un), some level r has Star(z,Ur) inside both.
inline Verdict is_development(const std::vector<Cover>& levels, int n) {
    if (levels.empty()) throw Error(Errc::validation_error, "development needs a level");
    int depth = static_cast<int>(levels.size());
    std::vector<std::vector<PointSet>> stars(depth, std::vector<PointSet>(n));
    for (int l = 0; l < depth; ++l)
        for (int x = 0; x < n; ++x) stars[l][x] = star_point(x, levels[l]);
    for (int x = 0; x < n; ++x)
        for (int m = 0; m < depth; ++m)
            for (int y = 0; y < n; ++y)
                for (int l = 0; l < depth; ++l) {
                    PointSet inter = stars[m][x] & stars[l][y];
                    for (int z : inter.points()) {
                        bool ok = false;
                        for (int r = 0; r < depth; ++r)
                            if (stars[r][z].subset_of(inter)) { ok = true; break; }
                        if (!ok)
                            return {false, "x=" + std::to_string(x) + " m=" +
                                               std::to_string(m + 1) + " y=" +
                                               std::to_string(y) + " n=" +
                                               std::to_string(l + 1) + " z=" +
                                               std::to_string(z)};
                    }
                }
    return {true, ""};
}

// Checks the declared refinement chain of a development.
inline Verdict check_k_development(const Development& dev, int k) {
    for (int l = 1; l < dev.depth(); ++l) {
        Verdict v = k_refines(dev.levels[l], dev.levels[l - 1], k);
        if (!v.pass)
            return {false, "level " + std::to_string(l + 1) + ": " + v.witness};
    }
    return {true, ""};
}

inline Verdict check_star_development(const Development& dev, int n) {
    for (int l = 1; l < dev.depth(); ++l) {
        Verdict v = is_star_refinement(dev.levels[l], dev.levels[l - 1], n);
        if (!v.pass)
            return {false, "level " + std::to_string(l + 1) + ": " + v.witness};
    }
    return {true, ""};
}

// Odd-indexed levels (1st, 3rd, ...) of a star-refining sequence 4-refine,
// hence 3-refine, their predecessors.
inline Development odd_levels(const std::vector<Cover>& levels) {
    Development d;
    for (size_t i = 0; i < levels.size(); i += 2) d.levels.push_back(levels[i]);
    d.declared_k = 3;
    return d;
}

// A cover is proper when closed stars of bounded sets stay bounded. By
// subset-closure of the bornology, checking the generators decides every
// bounded set.
inline Verdict is_proper_cover(const SpaceInstance& inst, const Cover& u) {
    if (inst.bornology.full) return {true, ""};
    for (const auto& a : inst.bornology.generators)
        if (!inst.bornology.bounded(inst.closure(star(a, u))))
            return {false, "generator " + a.str()};
    return {true, ""};
}

}  // namespace covergauge
