#pragma once

// Independent brute-force references for the distance constructions. These
// deliberately share no code path with the library implementations: chains
// are enumerated recursively over cover elements, step sequences over
// points. Only usable at very small sizes.

#include <vector>

#include "covergauge/gauge.hpp"
#include "covergauge/tunnel.hpp"

namespace brute {

using namespace covergauge;

// Minimum chain weight between all point pairs by recursive enumeration of
// chains with at most max_links links.
inline ExtGauge chain_distance(const SpaceInstance& inst, const Development& dev,
                               int max_links) {
    AuWeights w = au_weights(dev);
    ExtGauge g(inst.n);
    for (int x = 0; x < inst.n; ++x)
        for (int y = 0; y < inst.n; ++y)
            if (x != y) g.set(x, y, ExtDyadic::infinity());
    std::vector<int> chain;
    std::function<void(int, Dyadic)> extend = [&](int last, Dyadic total) {
        // record: this chain joins every x in its first link to every y in
        // its last link
        for (int x : w.elements[static_cast<size_t>(chain.front())].points())
            for (int y : w.elements[static_cast<size_t>(last)].points()) {
                if (x == y) continue;
                ExtDyadic t{total};
                if (t < g.at(x, y)) g.set(x, y, t);
            }
        if (static_cast<int>(chain.size()) == max_links) return;
        for (size_t j = 0; j < w.elements.size(); ++j) {
            if (!w.elements[static_cast<size_t>(last)].intersects(w.elements[j])) continue;
            chain.push_back(static_cast<int>(j));
            extend(static_cast<int>(j), total + w.weight[j]);
            chain.pop_back();
        }
    };
    for (size_t i = 0; i < w.elements.size(); ++i) {
        chain = {static_cast<int>(i)};
        extend(static_cast<int>(i), w.weight[i]);
    }
    return g;
}

// Minimum step-sequence weight by relaxation over explicit steps: within
// one finiteness block at the gauge value, or through a tunnel. Bounded
// iteration count makes the enumeration exhaustive on finite instances.
inline ExtGauge step_distance(const ExtGauge& rho, const TunnelSystem& t) {
    int n = rho.n;
    Partition part = crevasse_partition(rho);
    ExtGauge best(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) best.set(x, y, ExtDyadic::infinity());
    auto step_cost = [&](int u, int v) -> ExtDyadic {
        ExtDyadic c = ExtDyadic::infinity();
        if (part.block_of[u] == part.block_of[v]) c = rho.at(u, v);
        int ti = t.find(u, v);
        if (ti >= 0) c = ExtDyadic::min(c, ExtDyadic(t.lengths[static_cast<size_t>(ti)]));
        return c;
    };
    for (int round = 0; round < n + static_cast<int>(t.tunnels.size()) + 2; ++round)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                ExtDyadic direct = step_cost(u, v);
                if (direct < best.at(u, v)) best.set(u, v, direct);
                for (int z = 0; z < n; ++z) {
                    if (z == u || z == v) continue;
                    ExtDyadic via = best.at(u, z) + step_cost(z, v);
                    if (via < best.at(u, v)) best.set(u, v, via);
                }
            }
    return best;
}

}  // namespace brute
