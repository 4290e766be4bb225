#pragma once

// Instance documents (JSON) and deterministic reports. Distance values
// serialize as exact strings ("0", "5", "3/2^3", "inf"); matrices and all
// report output are byte-stable across runs and platforms.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "covergauge/bundle.hpp"
#include "covergauge/builtins.hpp"
#include "covergauge/error.hpp"

namespace covergauge {

using ojson = nlohmann::ordered_json;

namespace io_detail {

inline PointSet parse_set(const ojson& j, int n, const char* what) {
    if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + ": expected array");
    PointSet s;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw Error(Errc::parse_error, std::string(what) + ": expected point id");
        int p = e.get<int>();
        if (p < 0 || p >= n)
            throw Error(Errc::validation_error,
                        std::string(what) + ": point " + std::to_string(p) + " out of range");
        s.add(p);
    }
    return s;
}

inline std::vector<PointSet> parse_sets(const ojson& j, int n, const char* what) {
    if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + ": expected array");
    std::vector<PointSet> r;
    for (const auto& e : j) r.push_back(parse_set(e, n, what));
    return r;
}

inline ExtDyadic parse_value(const ojson& j, const char* what) {
    if (j.is_number_integer()) return ExtDyadic(Dyadic(j.get<std::int64_t>(), 0));
    if (!j.is_string())
        throw Error(Errc::parse_error, std::string(what) + ": expected exact value string");
    auto v = parse_ext_dyadic(j.get<std::string>());
    if (!v)
        throw Error(Errc::parse_error,
                    std::string(what) + ": bad value '" + j.get<std::string>() + "'");
    return *v;
}

inline ojson emit_set(const PointSet& s) {
    ojson a = ojson::array();
    for (int p : s.points()) a.push_back(p);
    return a;
}

inline ojson emit_sets(const std::vector<PointSet>& v) {
    ojson a = ojson::array();
    for (const auto& s : v) a.push_back(emit_set(s));
    return a;
}

}  // namespace io_detail

// Parses one instance object (used both at top level and per horizon entry).
inline SpaceInstance parse_space(const ojson& j) {
    if (!j.contains("points") || !j["points"].is_number_integer())
        throw Error(Errc::parse_error, "missing integer field 'points'");
    int n = j["points"].get<int>();
    if (!j.contains("basis")) throw Error(Errc::parse_error, "missing field 'basis'");
    std::vector<PointSet> basis = io_detail::parse_sets(j["basis"], n, "basis");
    Bornology b = Bornology::full_bornology();
    if (j.contains("bornology")) {
        const auto& jb = j["bornology"];
        if (jb.contains("full") && jb["full"].get<bool>()) {
            b = Bornology::full_bornology();
        } else if (jb.contains("generators")) {
            b = Bornology::generated(io_detail::parse_sets(jb["generators"], n, "bornology"));
        } else {
            throw Error(Errc::parse_error, "bornology needs 'full' or 'generators'");
        }
    }
    SpaceInstance inst(n, basis, b);
    if (j.contains("labels")) {
        for (const auto& l : j["labels"]) inst.labels.push_back(l.get<std::string>());
        if (!inst.labels.empty() && static_cast<int>(inst.labels.size()) != n)
            throw Error(Errc::validation_error, "labels length mismatch");
    }
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok)
        throw Error(Errc::validation_error, rep.rejected_rule + " (" + rep.witness + ")");
    return inst;
}

inline GroupAction parse_group(const ojson& j, const SpaceInstance& inst, int default_cap) {
    std::vector<PartialPerm> gens;
    if (j.contains("generators"))
        for (const auto& jg : j["generators"]) {
            PartialPerm g;
            for (const auto& e : jg) {
                if (e.is_null())
                    g.img.push_back(-1);
                else
                    g.img.push_back(e.get<int>());
            }
            if (static_cast<int>(g.img.size()) != inst.n)
                throw Error(Errc::validation_error, "group generator length mismatch");
            for (int v : g.img)
                if (v < -1 || v >= inst.n)
                    throw Error(Errc::validation_error, "group generator image out of range");
            gens.push_back(g);
        }
    int cap = default_cap;
    if (j.contains("cap")) cap = j["cap"].get<int>();
    return enumerate_group(inst, gens, cap);
}

inline ExtGauge parse_gauge(const ojson& j, int n, const std::string& name) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw Error(Errc::parse_error, "gauge '" + name + "': expected " + std::to_string(n) +
                                           " rows");
    ExtGauge g(n);
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(j[static_cast<size_t>(x)].size()) != n)
            throw Error(Errc::parse_error, "gauge '" + name + "': row length mismatch");
        for (int y = 0; y < n; ++y) {
            ExtDyadic v = io_detail::parse_value(j[static_cast<size_t>(x)][static_cast<size_t>(y)],
                                                 "gauge value");
            if (y < x && !(g.at(x, y) == v))
                throw Error(Errc::validation_error, "gauge '" + name + "' not symmetric at " +
                                                        std::to_string(x) + "," +
                                                        std::to_string(y));
            if (y >= x) g.set(x, y, v);
        }
    }
    return g;
}

inline InstanceBundle parse_bundle(const ojson& j, int default_cap = 4096) {
    InstanceBundle b;
    b.inst = parse_space(j);
    if (j.contains("group")) b.group = parse_group(j["group"], b.inst, default_cap);
    if (j.contains("covers"))
        for (const auto& [name, jc] : j["covers"].items()) {
            Cover c(io_detail::parse_sets(jc, b.inst.n, "cover"));
            auto err = c.validate(b.inst);
            if (err) throw Error(Errc::validation_error, "cover '" + name + "': " + *err);
            b.covers[name] = c;
        }
    if (j.contains("developments"))
        for (const auto& [name, jd] : j["developments"].items()) {
            Development d;
            if (!jd.contains("levels"))
                throw Error(Errc::parse_error, "development '" + name + "' needs levels");
            for (const auto& jl : jd["levels"]) {
                Cover c(io_detail::parse_sets(jl, b.inst.n, "development level"));
                auto err = c.validate(b.inst);
                if (err)
                    throw Error(Errc::validation_error, "development '" + name + "': " + *err);
                d.levels.push_back(c);
            }
            if (jd.contains("star")) d.declared_star = jd["star"].get<bool>();
            if (jd.contains("k")) d.declared_k = jd["k"].get<int>();
            b.developments[name] = d;
        }
    if (j.contains("gauges"))
        for (const auto& [name, jg] : j["gauges"].items())
            b.gauges[name] = parse_gauge(jg, b.inst.n, name);
    if (j.contains("tunnels"))
        for (const auto& [name, jt] : j["tunnels"].items()) {
            TunnelSystem t;
            for (const auto& jp : jt) {
                if (!jp.is_array() || jp.size() != 3)
                    throw Error(Errc::parse_error,
                                "tunnel entry must be [point, point, length]");
                int a = jp[0].get<int>(), c = jp[1].get<int>();
                if (a < 0 || a >= b.inst.n || c < 0 || c >= b.inst.n || a == c)
                    throw Error(Errc::validation_error, "tunnel endpoints out of range");
                ExtDyadic len = io_detail::parse_value(jp[2], "tunnel length");
                if (len.is_inf() || len.is_zero())
                    throw Error(Errc::validation_error, "tunnel length must be finite positive");
                t.add(a, c, len.finite());
            }
            t.canonicalize();
            b.tunnels[name] = t;
        }
    if (j.contains("exhaustion"))
        b.exhaustion = io_detail::parse_sets(j["exhaustion"], b.inst.n, "exhaustion");
    if (j.contains("targets"))
        for (const auto& jt : j["targets"]) {
            if (!jt.is_array() || jt.size() != 2)
                throw Error(Errc::parse_error, "target must be [point, basis set]");
            MetrizeTarget t;
            t.x = jt[0].get<int>();
            PointSet u = io_detail::parse_set(jt[1], b.inst.n, "target set");
            t.basis_index = -1;
            for (size_t i = 0; i < b.inst.basis.size(); ++i)
                if (b.inst.basis[i] == u) t.basis_index = static_cast<int>(i);
            if (t.basis_index < 0)
                throw Error(Errc::validation_error, "target set " + u.str() + " not in basis");
            if (t.x < 0 || t.x >= b.inst.n || !u.contains(t.x))
                throw Error(Errc::validation_error, "target point not in its set");
            b.targets.push_back(t);
        }
    if (j.contains("horizons")) {
        HorizonFamily f;
        const auto& jh = j["horizons"];
        if (!jh.contains("entries"))
            throw Error(Errc::parse_error, "horizons need 'entries'");
        for (const auto& je : jh["entries"]) {
            HorizonEntry e;
            e.inst = parse_space(je);
            e.group = je.contains("group") ? parse_group(je["group"], e.inst, default_cap)
                                           : trivial_group(e.inst);
            if (je.contains("frontier"))
                e.frontier = io_detail::parse_set(je["frontier"], e.inst.n, "frontier");
            f.entries.push_back(e);
        }
        if (jh.contains("inclusions"))
            for (const auto& ji : jh["inclusions"]) {
                std::vector<int> inc;
                for (const auto& e : ji) inc.push_back(e.get<int>());
                f.inclusions.push_back(inc);
            }
        validate_horizons(f);
        b.horizons = f;
    }
    return b;
}

inline InstanceBundle parse_bundle_text(const std::string& text, int default_cap = 4096) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
    try {
        return parse_bundle(j, default_cap);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

// Loads a document from a path, or a built-in instance by name.
inline InstanceBundle load_bundle(const std::string& ref, int default_cap = 4096) {
    if (is_builtin_name(ref)) return load_builtin(ref).bundle;
    std::ifstream in(ref);
    if (!in) throw Error(Errc::validation_error, "cannot open instance '" + ref + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bundle_text(ss.str(), default_cap);
}

// ---------------------------------------------------------------------------
// Emission: bundle back to a document (round-trip stable).

inline ojson emit_bundle(const InstanceBundle& b) {
    ojson j;
    j["points"] = b.inst.n;
    if (!b.inst.labels.empty()) j["labels"] = b.inst.labels;
    j["basis"] = io_detail::emit_sets(b.inst.basis);
    {
        ojson jb;
        if (b.inst.bornology.full)
            jb["full"] = true;
        else
            jb["generators"] = io_detail::emit_sets(b.inst.bornology.generators);
        j["bornology"] = jb;
    }
    if (b.group) {
        ojson jg;
        ojson gens = ojson::array();
        for (const auto& g : b.group->generators) {
            ojson a = ojson::array();
            for (int v : g.img)
                if (v < 0)
                    a.push_back(nullptr);
                else
                    a.push_back(v);
            gens.push_back(a);
        }
        jg["generators"] = gens;
        jg["cap"] = b.group->cap;
        j["group"] = jg;
    }
    if (!b.covers.empty()) {
        ojson jc;
        for (const auto& [name, c] : b.covers) jc[name] = io_detail::emit_sets(c.members);
        j["covers"] = jc;
    }
    if (!b.developments.empty()) {
        ojson jd;
        for (const auto& [name, d] : b.developments) {
            ojson e;
            ojson levels = ojson::array();
            for (const auto& l : d.levels) levels.push_back(io_detail::emit_sets(l.members));
            e["levels"] = levels;
            if (d.declared_star) e["star"] = true;
            if (d.declared_k) e["k"] = d.declared_k;
            jd[name] = e;
        }
        j["developments"] = jd;
    }
    if (!b.gauges.empty()) {
        ojson jg;
        for (const auto& [name, g] : b.gauges) {
            ojson rows = ojson::array();
            for (int x = 0; x < g.n; ++x) {
                ojson row = ojson::array();
                for (int y = 0; y < g.n; ++y) row.push_back(g.at(x, y).str());
                rows.push_back(row);
            }
            jg[name] = rows;
        }
        j["gauges"] = jg;
    }
    if (!b.tunnels.empty()) {
        ojson jt;
        for (const auto& [name, t] : b.tunnels) {
            ojson entries = ojson::array();
            for (size_t i = 0; i < t.tunnels.size(); ++i) {
                ojson e = ojson::array();
                e.push_back(t.tunnels[i].first);
                e.push_back(t.tunnels[i].second);
                e.push_back(t.lengths[i].str());
                entries.push_back(e);
            }
            jt[name] = entries;
        }
        j["tunnels"] = jt;
    }
    if (!b.exhaustion.empty()) j["exhaustion"] = io_detail::emit_sets(b.exhaustion);
    if (!b.targets.empty()) {
        ojson jt = ojson::array();
        for (const auto& t : b.targets) {
            ojson e = ojson::array();
            e.push_back(t.x);
            e.push_back(io_detail::emit_set(b.inst.basis[static_cast<size_t>(t.basis_index)]));
            jt.push_back(e);
        }
        j["targets"] = jt;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Reports.

struct ReportLine {
    std::string name;
    std::string status;  // PASS | FAIL | INDET | INFO
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<ReportLine> lines;
    std::vector<std::vector<std::string>> matrix;
    std::vector<TraceStep> trace;

    void pass(const std::string& name, const std::string& detail = "") {
        lines.push_back({name, "PASS", detail});
    }
    void fail(const std::string& name, const std::string& detail = "") {
        lines.push_back({name, "FAIL", detail});
    }
    void info(const std::string& name, const std::string& detail = "") {
        lines.push_back({name, "INFO", detail});
    }
    void verdict(const std::string& name, bool ok, const std::string& detail = "") {
        lines.push_back({name, ok ? "PASS" : "FAIL", detail});
    }
    void tri(const std::string& name, Tri t, const std::string& detail = "") {
        lines.push_back({name, t == Tri::yes ? "PASS" : t == Tri::no ? "FAIL" : "INDET", detail});
    }

    bool any_fail() const {
        for (const auto& l : lines)
            if (l.status == "FAIL") return true;
        return false;
    }

    void set_matrix(const ExtGauge& g) {
        matrix.clear();
        for (int x = 0; x < g.n; ++x) {
            std::vector<std::string> row;
            for (int y = 0; y < g.n; ++y) row.push_back(g.at(x, y).str());
            matrix.push_back(row);
        }
    }

    ojson to_json() const {
        ojson j;
        j["command"] = command;
        ojson m;
        for (const auto& [k, v] : meta) m[k] = v;
        j["meta"] = m;
        ojson rs = ojson::array();
        for (const auto& l : lines) {
            ojson r;
            r["name"] = l.name;
            r["status"] = l.status;
            r["detail"] = l.detail;
            rs.push_back(r);
        }
        j["results"] = rs;
        if (!matrix.empty()) j["matrix"] = matrix;
        if (!trace.empty()) {
            ojson ts = ojson::array();
            for (const auto& s : trace) {
                ojson t;
                t["stage"] = s.stage;
                t["detail"] = s.detail;
                ts.push_back(t);
            }
            j["trace"] = ts;
        }
        return j;
    }

    std::string emit(bool machine) const {
        if (machine) return to_json().dump(2) + "\n";
        std::string out = "# " + command + "\n";
        for (const auto& [k, v] : meta) out += k + ": " + v + "\n";
        for (const auto& l : lines) {
            out += "[" + l.status + "]";
            out += std::string(l.status.size() < 6 ? 6 - l.status.size() : 1, ' ');
            out += l.name;
            if (!l.detail.empty()) out += "  " + l.detail;
            out += "\n";
        }
        if (!matrix.empty()) {
            out += "matrix:\n";
            for (const auto& row : matrix) {
                std::string line = "  ";
                for (size_t y = 0; y < row.size(); ++y)
                    line += (y ? " " : "") + row[y];
                out += line + "\n";
            }
        }
        for (const auto& s : trace) out += "trace " + s.stage + ": " + s.detail + "\n";
        return out;
    }
};

}  // namespace covergauge
