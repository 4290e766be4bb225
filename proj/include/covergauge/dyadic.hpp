#pragma once

// Exact dyadic rational arithmetic (p / 2^k) extended with +infinity.
// All distance values in this library are ExtDyadic; no floating point is
// used anywhere in a distance computation, so results are bit-identical
// across platforms.

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace covergauge {

// Nonnegative dyadic rational num / 2^k, kept in canonical form:
// num == 0 implies k == 0, and num is odd whenever k > 0.
struct Dyadic {
    std::int64_t num = 0;
    int k = 0;

    Dyadic() = default;
    Dyadic(std::int64_t n, int denom_exp) : num(n), k(denom_exp) {
        if (num < 0) throw std::invalid_argument("Dyadic: negative value");
        if (k < 0) throw std::invalid_argument("Dyadic: negative exponent");
        normalize();
    }
    static Dyadic from_int(std::int64_t n) { return Dyadic(n, 0); }
    static Dyadic half_pow(int n) { return Dyadic(1, n); }  // 2^-n

    void normalize() {
        if (num == 0) { k = 0; return; }
        while (k > 0 && (num & 1) == 0) { num >>= 1; --k; }
    }

    bool is_zero() const { return num == 0; }

    // Align both operands to a common denominator exponent.
    static void align(const Dyadic& a, const Dyadic& b, std::int64_t& na,
                      std::int64_t& nb, int& kk) {
        kk = a.k > b.k ? a.k : b.k;
        int sa = kk - a.k, sb = kk - b.k;
        assert(sa < 62 && sb < 62);
        assert(a.num < (std::int64_t(1) << (62 - sa)));
        assert(b.num < (std::int64_t(1) << (62 - sb)));
        na = a.num << sa;
        nb = b.num << sb;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        std::int64_t na, nb;
        int kk;
        align(a, b, na, nb, kk);
        return Dyadic(na + nb, kk);
    }
    // Requires a >= b.
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        std::int64_t na, nb;
        int kk;
        align(a, b, na, nb, kk);
        if (na < nb) throw std::invalid_argument("Dyadic: negative difference");
        return Dyadic(na - nb, kk);
    }
    Dyadic scaled_by(std::int64_t m) const {
        if (m < 0) throw std::invalid_argument("Dyadic: negative scale");
        return Dyadic(num * m, k);
    }
    Dyadic halved(int n = 1) const { return Dyadic(num, k + n); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num == b.num && a.k == b.k;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        std::int64_t na, nb;
        int kk;
        align(a, b, na, nb, kk);
        return na < nb;
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    std::string str() const {
        if (num == 0) return "0";
        if (k == 0) return std::to_string(num);
        return std::to_string(num) + "/2^" + std::to_string(k);
    }
};

// Dyadic or +infinity. Infinity absorbs addition and dominates comparison.
struct ExtDyadic {
    bool inf = false;
    Dyadic v;

    ExtDyadic() = default;
    ExtDyadic(const Dyadic& d) : inf(false), v(d) {}  // NOLINT: implicit by design
    static ExtDyadic infinity() {
        ExtDyadic e;
        e.inf = true;
        return e;
    }
    static ExtDyadic zero() { return ExtDyadic(Dyadic()); }

    bool is_inf() const { return inf; }
    bool is_zero() const { return !inf && v.is_zero(); }
    const Dyadic& finite() const {
        if (inf) throw std::logic_error("ExtDyadic: infinite value");
        return v;
    }

    friend ExtDyadic operator+(const ExtDyadic& a, const ExtDyadic& b) {
        if (a.inf || b.inf) return infinity();
        return ExtDyadic(a.v + b.v);
    }
    friend bool operator==(const ExtDyadic& a, const ExtDyadic& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.v == b.v;
    }
    friend bool operator!=(const ExtDyadic& a, const ExtDyadic& b) { return !(a == b); }
    friend bool operator<(const ExtDyadic& a, const ExtDyadic& b) {
        if (a.inf) return false;
        if (b.inf) return true;
        return a.v < b.v;
    }
    friend bool operator<=(const ExtDyadic& a, const ExtDyadic& b) { return !(b < a); }
    friend bool operator>(const ExtDyadic& a, const ExtDyadic& b) { return b < a; }
    friend bool operator>=(const ExtDyadic& a, const ExtDyadic& b) { return !(a < b); }

    static ExtDyadic min(const ExtDyadic& a, const ExtDyadic& b) { return a < b ? a : b; }
    static ExtDyadic max(const ExtDyadic& a, const ExtDyadic& b) { return a < b ? b : a; }

    std::string str() const { return inf ? "inf" : v.str(); }
};

// Parses "inf", "0", "5", "3/8" (power-of-two denominator) or "3/2^3".
// Returns nullopt on malformed input.
inline std::optional<ExtDyadic> parse_ext_dyadic(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "inf") return ExtDyadic::infinity();
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t, std::int64_t& out) {
        if (t.empty()) return false;
        std::int64_t r = 0;
        for (char c : t) {
            if (c < '0' || c > '9') return false;
            if (r > (INT64_MAX - (c - '0')) / 10) return false;
            r = r * 10 + (c - '0');
        }
        out = r;
        return true;
    };
    std::int64_t p = 0;
    if (slash == std::string::npos) {
        if (!parse_int(s, p)) return std::nullopt;
        return ExtDyadic(Dyadic(p, 0));
    }
    if (!parse_int(s.substr(0, slash), p)) return std::nullopt;
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
        std::int64_t e = 0;
        if (!parse_int(den.substr(2), e) || e > 60) return std::nullopt;
        return ExtDyadic(Dyadic(p, static_cast<int>(e)));
    }
    std::int64_t q = 0;
    if (!parse_int(den, q) || q <= 0) return std::nullopt;
    int e = 0;
    while ((q & 1) == 0) { q >>= 1; ++e; }
    if (q != 1) return std::nullopt;  // denominator must be a power of two
    return ExtDyadic(Dyadic(p, e));
}

}  // namespace covergauge
