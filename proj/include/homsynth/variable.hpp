#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "homsynth/errors.hpp"
#include "homsynth/graph.hpp"

namespace homsynth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw FormatError("zero denominator");
        return Rational(num, den);
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception&) {
        throw FormatError("malformed rational '" + s + "'");
    }
}

enum class VarKind : std::uint8_t { hom = 0, colsub = 1, aux = 2 };

/// Variable of a homomorphism / colorful-subgraph polynomial.
///
///  - hom:    x[i,j], unordered, stored with i <= j (diagonal allowed);
///  - colsub: x[e=u-v][i,j] with u < v, i the color of u and j the color of v;
///  - aux:    y[u-v], one per pattern edge.
struct VariableId {
    VarKind kind = VarKind::hom;
    int u = 0, v = 0;  ///< pattern edge (colsub, aux)
    int i = 0, j = 0;  ///< colors / target indices (hom, colsub)

    static VariableId hom(int a, int b) { return a <= b ? VariableId{VarKind::hom, 0, 0, a, b} : VariableId{VarKind::hom, 0, 0, b, a}; }

    /// Colorful variable of edge {p, q} with color cp on p and cq on q.
    static VariableId colsub(int p, int q, int cp, int cq) {
        return p < q ? VariableId{VarKind::colsub, p, q, cp, cq} : VariableId{VarKind::colsub, q, p, cq, cp};
    }

    static VariableId aux(int p, int q) {
        Edge e = make_edge(p, q);
        return VariableId{VarKind::aux, e.first, e.second, 0, 0};
    }

    Edge edge() const { return {u, v}; }

    auto operator<=>(const VariableId&) const = default;
};

inline std::string to_string(const VariableId& x) {
    switch (x.kind) {
        case VarKind::hom: return "x[" + std::to_string(x.i) + "," + std::to_string(x.j) + "]";
        case VarKind::colsub:
            return "x[e=" + std::to_string(x.u) + "-" + std::to_string(x.v) + "][" + std::to_string(x.i) + "," +
                   std::to_string(x.j) + "]";
        case VarKind::aux: return "y[" + std::to_string(x.u) + "-" + std::to_string(x.v) + "]";
    }
    return "?";
}

namespace detail {

inline int expect_int(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw FormatError("malformed variable '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
}

inline void expect(const std::string& s, std::size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c) throw FormatError("malformed variable '" + s + "'");
    ++pos;
}

}  // namespace detail

inline VariableId parse_variable(const std::string& s) {
    std::size_t pos = 0;
    if (s.rfind("y[", 0) == 0) {
        pos = 2;
        int a = detail::expect_int(s, pos);
        detail::expect(s, pos, '-');
        int b = detail::expect_int(s, pos);
        detail::expect(s, pos, ']');
        if (pos != s.size() || a == b) throw FormatError("malformed variable '" + s + "'");
        return VariableId::aux(a, b);
    }
    if (s.rfind("x[e=", 0) == 0) {
        pos = 4;
        int a = detail::expect_int(s, pos);
        detail::expect(s, pos, '-');
        int b = detail::expect_int(s, pos);
        detail::expect(s, pos, ']');
        detail::expect(s, pos, '[');
        int i = detail::expect_int(s, pos);
        detail::expect(s, pos, ',');
        int j = detail::expect_int(s, pos);
        detail::expect(s, pos, ']');
        if (pos != s.size() || a == b) throw FormatError("malformed variable '" + s + "'");
        return VariableId::colsub(a, b, i, j);
    }
    if (s.rfind("x[", 0) == 0) {
        pos = 2;
        int i = detail::expect_int(s, pos);
        detail::expect(s, pos, ',');
        int j = detail::expect_int(s, pos);
        detail::expect(s, pos, ']');
        if (pos != s.size()) throw FormatError("malformed variable '" + s + "'");
        return VariableId::hom(i, j);
    }
    throw FormatError("malformed variable '" + s + "'");
}

enum class PolyKind { hom, colsub };

inline std::string to_string(PolyKind k) { return k == PolyKind::hom ? "hom" : "colsub"; }

inline PolyKind parse_poly_kind(const std::string& s) {
    if (s == "hom") return PolyKind::hom;
    if (s == "colsub") return PolyKind::colsub;
    throw FormatError("unknown polynomial kind '" + s + "' (expected hom or colsub)");
}

}  // namespace homsynth
