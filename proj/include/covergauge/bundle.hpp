#pragma once

// A parsed instance document: the space plus named auxiliary objects.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covergauge/cover.hpp"
#include "covergauge/gauge.hpp"
#include "covergauge/horizon.hpp"
#include "covergauge/invariance.hpp"
#include "covergauge/space.hpp"
#include "covergauge/tunnel.hpp"

namespace covergauge {

struct InstanceBundle {
    SpaceInstance inst;
    std::optional<GroupAction> group;
    std::map<std::string, Cover> covers;
    std::map<std::string, Development> developments;
    std::map<std::string, ExtGauge> gauges;
    std::map<std::string, TunnelSystem> tunnels;
    std::vector<PointSet> exhaustion;
    std::vector<MetrizeTarget> targets;
    std::optional<HorizonFamily> horizons;

    GroupAction group_or_trivial() const {
        if (group) return *group;
        return trivial_group(inst);
    }

    template <typename T>
    static const T& pick(const std::map<std::string, T>& m, const std::string& name,
                         const char* what) {
        if (m.empty()) throw Error(Errc::validation_error, std::string("no ") + what + " defined");
        if (name.empty()) return m.begin()->second;
        auto it = m.find(name);
        if (it == m.end())
            throw Error(Errc::validation_error, std::string(what) + " '" + name + "' not found");
        return it->second;
    }
};

}  // namespace covergauge
