#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "homsynth/variable.hpp"

namespace homsynth {

/// Sorted multiset of variables; the empty monomial is the constant 1.
using Monomial = std::vector<VariableId>;

inline Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::string to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += "*";
        s += to_string(m[i]);
    }
    return s;
}

/// Exact multivariate polynomial with rational coefficients; zero terms are never stored.
class SparsePolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    SparsePolynomial() = default;

    static SparsePolynomial constant(const Rational& c) {
        SparsePolynomial p;
        p.add_term({}, c);
        return p;
    }

    static SparsePolynomial variable(const VariableId& x) {
        SparsePolynomial p;
        p.add_term({x}, 1);
        return p;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SparsePolynomial& operator+=(const SparsePolynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
        SparsePolynomial out;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
        return out;
    }

    SparsePolynomial scaled(const Rational& c) const {
        SparsePolynomial out;
        for (auto& [m, v] : terms_) out.add_term(m, v * c);
        return out;
    }

    /// Largest total degree, -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
        return d;
    }

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) { return a.terms_ == b.terms_; }

    /// One "coeff monomial" line per term, in canonical monomial order.
    std::string dump() const {
        std::ostringstream os;
        for (auto& [m, c] : terms_) os << to_string(c) << " " << to_string(m) << "\n";
        return os.str();
    }

private:
    Terms terms_;
};

/// Parses the dump() format back.
inline SparsePolynomial parse_polynomial(const std::string& text) {
    SparsePolynomial p;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string coeff, mono;
        if (!(ls >> coeff >> mono)) throw FormatError("polynomial line " + std::to_string(line_no) + ": expected 'coeff monomial'");
        Monomial m;
        if (mono != "1") {
            std::size_t start = 0;
            for (;;) {
                auto star = mono.find('*', start);
                m.push_back(parse_variable(mono.substr(start, star - start)));
                if (star == std::string::npos) break;
                start = star + 1;
            }
            std::sort(m.begin(), m.end());
        }
        p.add_term(m, parse_rational(coeff));
    }
    return p;
}

}  // namespace homsynth
