#pragma once

#include <array>
#include <string>

#include "pfk/errors.hpp"
#include "pfk/expr.hpp"
#include "pfk/scalar.hpp"

namespace pfk {

// 2x2 change-of-basis matrix, rows and columns indexed from zero.
class BasisMatrix {
public:
    BasisMatrix() : e_{Scalar(1), Scalar(0), Scalar(0), Scalar(1)} {}
    BasisMatrix(Scalar a00, Scalar a01, Scalar a10, Scalar a11) : e_{a00, a01, a10, a11} {}

    static BasisMatrix identity() { return BasisMatrix(); }

    const Scalar& at(int r, int c) const { return e_[static_cast<size_t>(r) * 2 + c]; }
    Scalar& at(int r, int c) { return e_[static_cast<size_t>(r) * 2 + c]; }

    Scalar det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }

    bool singular(double eps = default_eps()) const { return is_zero(det(), eps); }

    // Adjugate over determinant.
    BasisMatrix inverse(double eps = default_eps()) const {
        Scalar d = det();
        if (is_zero(d, eps)) throw SingularBasis("basis matrix is singular");
        return BasisMatrix(at(1, 1) / d, -at(0, 1) / d, -at(1, 0) / d, at(0, 0) / d);
    }

    bool is_identity(double eps = default_eps()) const {
        return approx_equal(at(0, 0), Scalar(1), eps) && approx_equal(at(0, 1), Scalar(0), eps) &&
               approx_equal(at(1, 0), Scalar(0), eps) && approx_equal(at(1, 1), Scalar(1), eps);
    }

    bool all_exact() const {
        for (const Scalar& s : e_)
            if (!s.exact()) return false;
        return true;
    }

    bool rational() const {
        for (const Scalar& s : e_)
            if (!s.is_real_rational()) return false;
        return true;
    }

    bool approx_eq(const BasisMatrix& o, double eps = default_eps()) const {
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (!approx_equal(at(r, c), o.at(r, c), eps)) return false;
        return true;
    }

    std::string str() const {
        return "[[" + at(0, 0).str() + "," + at(0, 1).str() + "],[" + at(1, 0).str() + "," +
               at(1, 1).str() + "]]";
    }

    // Parses "[[e,e],[e,e]]" with scalar expressions as entries.
    static BasisMatrix parse(const std::string& text);

private:
    std::array<Scalar, 4> e_;
};

namespace detail {

inline size_t match_entry(const std::string& s, size_t pos, std::string& out) {
    int depth = 0;
    size_t start = pos;
    while (pos < s.size()) {
        char c = s[pos];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') {
            if (depth == 0) break;
            --depth;
        }
        if (c == ',' && depth == 0) break;
        ++pos;
    }
    out = s.substr(start, pos - start);
    return pos;
}

}  // namespace detail

inline BasisMatrix BasisMatrix::parse(const std::string& text) {
    // Expected shape: [[a,b],[c,d]]
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto fail = [&]() -> void { throw ParseError("malformed matrix literal: " + text); };
    if (s.size() < 9 || s.substr(0, 2) != "[[") fail();
    std::array<std::string, 4> ent;
    size_t pos = 2;
    pos = detail::match_entry(s, pos, ent[0]);
    if (pos >= s.size() || s[pos] != ',') fail();
    pos = detail::match_entry(s, pos + 1, ent[1]);
    if (pos + 2 >= s.size() || s.substr(pos, 3) != "],[") fail();
    pos = detail::match_entry(s, pos + 3, ent[2]);
    if (pos >= s.size() || s[pos] != ',') fail();
    pos = detail::match_entry(s, pos + 1, ent[3]);
    if (pos + 2 != s.size() || s.substr(pos) != "]]") fail();
    return BasisMatrix(parse_scalar(ent[0]), parse_scalar(ent[1]), parse_scalar(ent[2]),
                       parse_scalar(ent[3]));
}

}  // namespace pfk
