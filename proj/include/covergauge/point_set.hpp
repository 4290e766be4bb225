#pragma once

// Subsets of a ground set {0..n-1}, n <= 64, as bit masks.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace covergauge {

constexpr int kMaxPoints = 64;

struct PointSet {
    std::uint64_t bits = 0;

    PointSet() = default;
    explicit PointSet(std::uint64_t b) : bits(b) {}
    static PointSet single(int p) { return PointSet(std::uint64_t(1) << p); }
    static PointSet full(int n) {
        return PointSet(n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1);
    }
    static PointSet of(const std::vector<int>& pts) {
        PointSet s;
        for (int p : pts) s.add(p);
        return s;
    }

    bool empty() const { return bits == 0; }
    int size() const { return std::popcount(bits); }
    bool contains(int p) const { return (bits >> p) & 1; }
    void add(int p) { bits |= std::uint64_t(1) << p; }
    void remove(int p) { bits &= ~(std::uint64_t(1) << p); }

    bool intersects(const PointSet& o) const { return (bits & o.bits) != 0; }
    bool subset_of(const PointSet& o) const { return (bits & ~o.bits) == 0; }

    friend PointSet operator|(const PointSet& a, const PointSet& b) { return PointSet(a.bits | b.bits); }
    friend PointSet operator&(const PointSet& a, const PointSet& b) { return PointSet(a.bits & b.bits); }
    friend PointSet operator-(const PointSet& a, const PointSet& b) { return PointSet(a.bits & ~b.bits); }
    PointSet complement(int n) const { return full(n) - *this; }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.bits == b.bits; }
    friend bool operator!=(const PointSet& a, const PointSet& b) { return a.bits != b.bits; }

    int first() const { return bits == 0 ? -1 : std::countr_zero(bits); }

    std::vector<int> points() const {
        std::vector<int> r;
        std::uint64_t b = bits;
        while (b) {
            r.push_back(std::countr_zero(b));
            b &= b - 1;
        }
        return r;
    }

    std::string str() const {
        std::string s = "{";
        bool first_pt = true;
        for (int p : points()) {
            if (!first_pt) s += ",";
            s += std::to_string(p);
            first_pt = false;
        }
        return s + "}";
    }
};

// Lexicographic order on sorted member lists, with size as first key.
// Used wherever a deterministic enumeration order over sets is needed.
inline bool set_order(const PointSet& a, const PointSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    std::uint64_t x = a.bits, y = b.bits;
    while (x && y) {
        int px = std::countr_zero(x), py = std::countr_zero(y);
        if (px != py) return px < py;
        x &= x - 1;
        y &= y - 1;
    }
    return false;
}

}  // namespace covergauge
