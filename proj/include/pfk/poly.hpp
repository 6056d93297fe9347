#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/errors.hpp"

namespace pfk {

// Interned variable names. Precedence for monomial orders is the insertion
// order: earlier variables rank higher.
struct VarTable {
    std::vector<std::string> names;
    std::map<std::string, int> index;

    int add(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) throw SchemeCollision("variable " + name + " declared twice");
        int id = static_cast<int>(names.size());
        names.push_back(name);
        index[name] = id;
        return id;
    }
    int add_or_get(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        return add(name);
    }
    int find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
    int size() const { return static_cast<int>(names.size()); }
};

// Dense exponent vector; fine for the variable counts that arise here.
struct Monomial {
    std::vector<uint16_t> e;
    uint32_t deg = 0;

    static Monomial one(int nvars) {
        Monomial m;
        m.e.assign(nvars, 0);
        return m;
    }
    bool is_one() const { return deg == 0; }

    Monomial times(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        r.deg = deg + o.deg;
        return r;
    }
    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    // o / this, assuming divisibility
    Monomial quotient_of(const Monomial& o) const {
        Monomial r = o;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= e[i];
        r.deg = o.deg - deg;
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        r.deg = 0;
        for (size_t i = 0; i < a.e.size(); ++i) {
            r.e[i] = std::max(a.e[i], b.e[i]);
            r.deg += r.e[i];
        }
        return r;
    }
    static bool coprime(const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] && b.e[i]) return false;
        return true;
    }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }

    Monomial& bump(int var, int by = 1) {
        e[var] = static_cast<uint16_t>(e[var] + by);
        deg += by;
        return *this;
    }
};

enum class OrderKind { DegRevLex, Lex, DegLex };

struct MonomialOrder {
    OrderKind kind = OrderKind::DegRevLex;

    // -1 when a < b, 0 equal, +1 when a > b
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case OrderKind::Lex:
                return lex(a, b);
            case OrderKind::DegLex:
                if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
                return lex(a, b);
            case OrderKind::DegRevLex:
            default:
                if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
                for (size_t i = a.e.size(); i-- > 0;) {
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
                }
                return 0;
        }
    }

    static OrderKind parse(const std::string& s) {
        if (s == "degrevlex") return OrderKind::DegRevLex;
        if (s == "lex") return OrderKind::Lex;
        if (s == "deglex") return OrderKind::DegLex;
        throw ParseError("unknown monomial order '" + s + "'");
    }

private:
    static int lex(const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
        return 0;
    }
};

struct Term {
    Monomial m;
    mpq_class c;
};

// Sparse multivariate polynomial over Q; terms kept sorted descending under
// the order supplied to the mutating operations.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial from_terms(std::vector<Term> terms, const MonomialOrder& ord) {
        Polynomial p;
        p.t_ = std::move(terms);
        p.normalize(ord);
        return p;
    }
    static Polynomial constant(int nvars, const mpq_class& c) {
        Polynomial p;
        if (c != 0) p.t_.push_back({Monomial::one(nvars), c});
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& lead() const { return t_.front(); }
    uint32_t degree() const {
        uint32_t d = 0;
        for (const Term& t : t_) d = std::max(d, t.m.deg);
        return d;
    }
    size_t size() const { return t_.size(); }

    Polynomial plus(const Polynomial& o, const MonomialOrder& ord) const {
        Polynomial r;
        r.t_.reserve(t_.size() + o.t_.size());
        size_t i = 0, j = 0;
        while (i < t_.size() || j < o.t_.size()) {
            if (i == t_.size()) {
                r.t_.push_back(o.t_[j++]);
            } else if (j == o.t_.size()) {
                r.t_.push_back(t_[i++]);
            } else {
                int c = ord.cmp(t_[i].m, o.t_[j].m);
                if (c > 0) {
                    r.t_.push_back(t_[i++]);
                } else if (c < 0) {
                    r.t_.push_back(o.t_[j++]);
                } else {
                    mpq_class s = t_[i].c + o.t_[j].c;
                    if (s != 0) r.t_.push_back({t_[i].m, s});
                    ++i;
                    ++j;
                }
            }
        }
        return r;
    }
    Polynomial minus(const Polynomial& o, const MonomialOrder& ord) const {
        return plus(o.scaled(mpq_class(-1)), ord);
    }
    Polynomial scaled(const mpq_class& c) const {
        Polynomial r;
        if (c == 0) return r;
        r.t_ = t_;
        for (Term& t : r.t_) t.c *= c;
        return r;
    }
    Polynomial times_term(const Term& f) const {
        Polynomial r;
        if (f.c == 0) return r;
        r.t_.reserve(t_.size());
        for (const Term& t : t_) r.t_.push_back({t.m.times(f.m), t.c * f.c});
        return r;  // multiplying by a monomial preserves order
    }
    Polynomial times(const Polynomial& o, const MonomialOrder& ord) const {
        Polynomial r;
        for (const Term& t : o.t_) r = r.plus(times_term(t), ord);
        return r;
    }

    // Integer-primitive normal form: clear denominators, divide by the
    // content, make the leading coefficient positive.
    void make_primitive() {
        if (t_.empty()) return;
        mpz_class den(1);
        for (const Term& t : t_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                                         t.c.get_den().get_mpz_t());
        mpz_class content(0);
        for (const Term& t : t_) {
            mpz_class num = t.c.get_num() * (den / t.c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
        }
        if (content == 0) return;
        mpq_class f(den, content);
        if (t_.front().c * f < 0) f = -f;
        for (Term& t : t_) {
            t.c *= f;
            t.c.canonicalize();
        }
    }
    void make_monic() {
        if (t_.empty()) return;
        mpq_class inv = 1 / t_.front().c;
        for (Term& t : t_) t.c *= inv;
    }

    void resort(const MonomialOrder& ord) { normalize(ord); }

    bool operator==(const Polynomial& o) const {
        if (t_.size() != o.t_.size()) return false;
        for (size_t i = 0; i < t_.size(); ++i)
            if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
        return true;
    }

    std::string str(const VarTable& vars) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const Term& t : t_) {
            mpq_class c = t.c;
            if (!first) {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            } else if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
            std::vector<std::string> factors;
            if (c != 1 || t.m.is_one()) {
                std::ostringstream cs;
                cs << c;
                factors.push_back(cs.str());
            }
            for (size_t v = 0; v < t.m.e.size(); ++v) {
                if (!t.m.e[v]) continue;
                std::string f = vars.names[v];
                if (t.m.e[v] > 1) f += "^" + std::to_string(t.m.e[v]);
                factors.push_back(std::move(f));
            }
            for (size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
        }
        return os.str();
    }

private:
    void normalize(const MonomialOrder& ord) {
        std::sort(t_.begin(), t_.end(),
                  [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
        std::vector<Term> out;
        for (Term& t : t_) {
            if (!out.empty() && out.back().m == t.m)
                out.back().c += t.c;
            else
                out.push_back(std::move(t));
            if (!out.empty() && out.back().c == 0) out.pop_back();
        }
        t_ = std::move(out);
    }

    std::vector<Term> t_;
};

}  // namespace pfk
