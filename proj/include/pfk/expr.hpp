#pragma once

#include <cctype>
#include <complex>
#include <string>

#include "pfk/errors.hpp"
#include "pfk/scalar.hpp"

namespace pfk {

// Recursive-descent parser for complex scalar expressions:
//   integers, decimals, 'i', sqrt(e), root4(e), parentheses, + - * /
// Rationals p/q fall out of the division operator. Decimal literals are read
// as exact rationals (they are finite base-10 fractions); sqrt/root4 keep the
// result exact when the radicand is a perfect square / fourth power.
namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    Scalar parse() {
        Scalar v = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters in expression");
        return v;
    }

private:
    Scalar sum() {
        Scalar v = product();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                v += product();
            } else if (peek() == '-') {
                ++pos_;
                v -= product();
            } else {
                return v;
            }
        }
    }

    Scalar product() {
        Scalar v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                v *= factor();
            } else if (peek() == '/') {
                ++pos_;
                Scalar d = factor();
                if (d.exact() && d.is_exact_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Scalar factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        if (peek() == '+') {
            ++pos_;
            return factor();
        }
        return primary();
    }

    Scalar primary() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Scalar v = sum();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = ident();
            if (name == "i") return Scalar::i();
            if (name == "sqrt" || name == "root4") {
                expect('(');
                Scalar arg = sum();
                expect(')');
                return name == "sqrt" ? radical(arg, 2) : radical(arg, 4);
            }
            fail("unknown identifier '" + name + "'");
        }
        fail("expected a number, 'i', sqrt(...), root4(...) or '('");
        return Scalar();  // unreachable
    }

    Scalar number() {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        bool decimal = false;
        if (peek() == '.') {
            decimal = true;
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        std::string tok = s_.substr(start, pos_ - start);
        if (tok.empty() || tok == ".") fail("malformed number");
        long exp10 = 0;
        if (peek() == 'e' || peek() == 'E') {
            size_t save = pos_;
            ++pos_;
            bool neg = false;
            if (peek() == '+' || peek() == '-') {
                neg = peek() == '-';
                ++pos_;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = save;  // the 'e' belongs to an identifier, not this literal
            } else {
                size_t es = pos_;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                exp10 = std::stol(s_.substr(es, pos_ - es));
                if (neg) exp10 = -exp10;
            }
        }
        mpq_class q;
        if (!decimal) {
            q = mpq_class(mpz_class(tok, 10));
        } else {
            // 12.345 -> 12345 / 10^3, exactly.
            size_t dot = tok.find('.');
            std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
            size_t frac = tok.size() - dot - 1;
            mpz_class num(digits.empty() ? "0" : digits, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
            q = mpq_class(num, den);
        }
        if (exp10 > 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
            q *= mpq_class(p);
        } else if (exp10 < 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
            q /= mpq_class(p);
        }
        q.canonicalize();
        return Scalar(q);
    }

    // nth root (n = 2 or 4), exact when possible.
    static Scalar radical(const Scalar& arg, int n) {
        if (arg.exact() && arg.im() == 0) {
            mpq_class q = arg.re();
            bool negative = q < 0;
            mpq_class a = negative ? mpq_class(-q) : q;
            mpz_class num_root, den_root;
            if (mpz_root(num_root.get_mpz_t(), a.get_num().get_mpz_t(), n) != 0 &&
                mpz_root(den_root.get_mpz_t(), a.get_den().get_mpz_t(), n) != 0) {
                Scalar root{mpq_class(num_root, den_root)};
                if (!negative) return root;
                if (n == 2) return root * Scalar::i();
                // root4 of a negative rational is irrational in Q(i); fall through.
            }
        }
        std::complex<double> z = arg.approx();
        return Scalar::from_complex(n == 2 ? std::sqrt(z) : std::sqrt(std::sqrt(z)));
    }

    std::string ident() {
        size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " in \"" + s_ + "\"", 1, static_cast<int>(pos_ + 1));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Scalar parse_scalar(const std::string& text) {
    return detail::ExprParser(text).parse();
}

}  // namespace pfk
