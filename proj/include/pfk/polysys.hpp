#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/basis.hpp"
#include "pfk/errors.hpp"
#include "pfk/poly.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

enum class GenTag { Parity, Consistency, Empty, Inversion, Linkage };

inline const char* tag_name(GenTag t) {
    switch (t) {
        case GenTag::Parity: return "parity";
        case GenTag::Consistency: return "consistency";
        case GenTag::Empty: return "empty";
        case GenTag::Inversion: return "inversion";
        case GenTag::Linkage: return "linkage";
    }
    return "?";
}

inline GenTag tag_from_name(const std::string& s) {
    if (s == "parity") return GenTag::Parity;
    if (s == "consistency") return GenTag::Consistency;
    if (s == "empty") return GenTag::Empty;
    if (s == "inversion") return GenTag::Inversion;
    if (s == "linkage") return GenTag::Linkage;
    throw ParseError("unknown generator tag '" + s + "'");
}

struct Generator {
    Polynomial p;
    GenTag tag;
};

struct PolySystem {
    VarTable vars;
    std::vector<Generator> gens;

    MonomialOrder default_order() const { return MonomialOrder{OrderKind::DegRevLex}; }

    size_t count(GenTag t) const {
        size_t n = 0;
        for (const Generator& g : gens)
            if (g.tag == t) ++n;
        return n;
    }
};

enum class IdealMode { Homogeneous, Heterogeneous };

struct IdealOptions {
    // substitute rational constants for these basis indices
    std::map<int, BasisMatrix> fixed;
    // divide the parity and consistency generators by their removable
    // (G'_empty)^{-1} powers
    bool reduce_scalars = false;
};

namespace detail {

struct WireModel {
    // either a variable block (entry_var[r][c]) or a fixed rational matrix
    bool is_fixed = false;
    int entry_var[2][2] = {{-1, -1}, {-1, -1}};
    mpq_class fixed[2][2];
};

struct IdealBuilder {
    PolySystem sys;
    MonomialOrder ord{OrderKind::DegRevLex};
    std::vector<WireModel> wires;
    int g0 = -1, g0v = -1;

    Polynomial var_poly(int v) {
        std::vector<Term> ts{{Monomial::one(sys.vars.size()).bump(v), mpq_class(1)}};
        return Polynomial::from_terms(std::move(ts), ord);
    }

    // symbolic G'_{target} = sum_I G_I prod_i entry_i[target_i, I_i]
    Polynomial cob_coefficient(const Tensor& g, uint32_t target,
                               const std::function<std::pair<int, int>(int, int, int)>& index_map) {
        std::vector<Term> terms;
        for (const auto& [mask, coeff] : g.coeffs()) {
            if (!coeff.is_real_rational())
                throw NotRational("tensor coefficients must be rational");
            Term t{Monomial::one(sys.vars.size()), coeff.rational()};
            bool dead = false;
            for (int i = 0; i < g.arity() && !dead; ++i) {
                auto [r, c] = index_map(i, (target >> i) & 1, (mask >> i) & 1);
                const WireModel& w = wires[i];
                if (w.is_fixed) {
                    if (w.fixed[r][c] == 0) dead = true;
                    t.c *= w.fixed[r][c];
                } else {
                    t.m.bump(w.entry_var[r][c]);
                }
            }
            if (!dead && t.c != 0) terms.push_back(std::move(t));
        }
        return Polynomial::from_terms(std::move(terms), ord);
    }
};

// Shared construction for gate and cogate ideals. For gates the wire entry
// lookup is A[target_bit, source_bit]; for cogates the tensor is first
// complement-reindexed (D_I := C_{I^C}) and the lookup becomes
// M[1-source, 1-target] with M = A^{-1} carried by b-variables.
inline PolySystem tensor_ideal(const Tensor& t, IdealMode mode, const IdealOptions& opts,
                               const std::string& g0_name, const std::string& g0v_name) {
    bool dual = t.kind() == TensorKind::Cogate;
    int n = t.arity();

    Tensor work = t;
    if (dual) work = t.complement();  // D_I = C_{I^C}

    // basis index per wire
    std::vector<int> bindex(n);
    for (int i = 0; i < n; ++i) bindex[i] = mode == IdealMode::Homogeneous ? 1 : i + 1;

    IdealBuilder b;
    const char* prefix = dual ? "b" : "a";
    const char* det_prefix = dual ? "dB" : "dA";

    // declare entry variables for unknown bases, in index order
    std::set<int> unknown;
    std::map<int, std::array<int, 4>> entry_vars;
    for (int i = 0; i < n; ++i) {
        int k = bindex[i];
        if (opts.fixed.count(k) || entry_vars.count(k)) continue;
        std::array<int, 4> vs{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                vs[r * 2 + c] = b.sys.vars.add(std::string(prefix) + std::to_string(k) + "_" +
                                               std::to_string(r) + std::to_string(c));
        entry_vars[k] = vs;
        unknown.insert(k);
    }
    std::map<int, int> det_var, det_inv_var;
    for (int k : unknown) det_var[k] = b.sys.vars.add(det_prefix + std::to_string(k));
    for (int k : unknown)
        det_inv_var[k] = b.sys.vars.add(det_prefix + std::to_string(k) + "v");
    b.g0 = b.sys.vars.add(g0_name);
    b.g0v = b.sys.vars.add(g0v_name);

    // per-wire models
    b.wires.resize(n);
    for (int i = 0; i < n; ++i) {
        int k = bindex[i];
        auto fit = opts.fixed.find(k);
        if (fit != opts.fixed.end()) {
            const BasisMatrix& m = fit->second;
            if (!m.rational()) throw NotRational("fixed basis must be rational");
            BasisMatrix use = dual ? m.inverse() : m;
            if (!use.rational()) throw NotRational("fixed basis inverse must be rational");
            b.wires[i].is_fixed = true;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) b.wires[i].fixed[r][c] = use.at(r, c).rational();
        } else {
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    b.wires[i].entry_var[r][c] = entry_vars[k][r * 2 + c];
        }
    }

    // entry lookup: gates read A[target, source]; the dual reads M[1-source,
    // 1-target] which matches the complement-reindexed tensor
    auto index_map = [dual](int /*wire*/, int target, int source) -> std::pair<int, int> {
        if (dual) return {1 - source, 1 - target};
        return {target, source};
    };
    auto cob = [&](uint32_t target) { return b.cob_coefficient(work, target, index_map); };

    uint32_t full = work.full_mask();
    Polynomial g0p = b.var_poly(b.g0);
    Polynomial g0vp = b.var_poly(b.g0v);

    // parity: for every odd subset
    for (uint32_t m = 0; n > 0 && m <= full; ++m) {
        if (__builtin_popcount(m) % 2 != 1) continue;
        Polynomial gp = cob(m);
        Polynomial gen = opts.reduce_scalars ? gp : gp.times(g0vp, b.ord);
        b.sys.gens.push_back({std::move(gen), GenTag::Parity});
    }

    // consistency: every even subset of size >= 4, expanded along the
    // smallest member with the alternating Laplace signs
    for (uint32_t m = 0; n >= 4 && m <= full; ++m) {
        int k = __builtin_popcount(m);
        if (k < 4 || k % 2) continue;
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (m & (1u << i)) members.push_back(i);
        int lo = members.front();
        Polynomial rhs;
        for (size_t idx = 1; idx < members.size(); ++idx) {
            int i = members[idx];
            uint32_t pair_mask = (1u << lo) | (1u << i);
            Polynomial term = cob(pair_mask).times(cob(m & ~pair_mask), b.ord);
            bool negative = idx % 2 == 0;  // +, -, +, ... along the expansion
            rhs = rhs.plus(negative ? term.scaled(mpq_class(-1)) : term, b.ord);
        }
        Polynomial lhs = cob(m);
        Polynomial gen;
        if (opts.reduce_scalars) {
            // multiply the identity through by (G'_empty)^2
            gen = lhs.times(g0p, b.ord).minus(rhs, b.ord);
        } else {
            gen = lhs.times(g0vp, b.ord)
                      .minus(rhs.times(g0vp.times(g0vp, b.ord), b.ord), b.ord);
        }
        b.sys.gens.push_back({std::move(gen), GenTag::Consistency});
    }

    // empty-set definition and the inversion equations
    b.sys.gens.push_back({cob(0).minus(g0p, b.ord), GenTag::Empty});
    b.sys.gens.push_back(
        {g0p.times(g0vp, b.ord).minus(Polynomial::constant(b.sys.vars.size(), 1), b.ord),
         GenTag::Inversion});
    for (int k : unknown) {
        auto& vs = entry_vars[k];
        Polynomial det_expr =
            b.var_poly(vs[0]).times(b.var_poly(vs[3]), b.ord)
                .minus(b.var_poly(vs[1]).times(b.var_poly(vs[2]), b.ord), b.ord);
        b.sys.gens.push_back({det_expr.minus(b.var_poly(det_var[k]), b.ord), GenTag::Inversion});
        b.sys.gens.push_back(
            {b.var_poly(det_var[k]).times(b.var_poly(det_inv_var[k]), b.ord)
                 .minus(Polynomial::constant(b.sys.vars.size(), 1), b.ord),
             GenTag::Inversion});
    }
    return std::move(b.sys);
}

}  // namespace detail

// System whose solutions are the changes of bases making the gate Pfaffian.
inline PolySystem gate_ideal(const Tensor& g, IdealMode mode, const IdealOptions& opts = {}) {
    if (g.kind() != TensorKind::Gate) throw Error("gate_ideal needs a gate");
    return detail::tensor_ideal(g, mode, opts, "g0", "g0v");
}

// Cogate analog; b-variables stand for the entries of the inverse matrices,
// and fixed bases are inverted before substitution.
inline PolySystem cogate_ideal(const Tensor& c, IdealMode mode, const IdealOptions& opts = {}) {
    if (c.kind() != TensorKind::Cogate) throw Error("cogate_ideal needs a cogate");
    return detail::tensor_ideal(c, mode, opts, "g0", "g0v");
}

// ---- linked circuit ideals ----------------------------------------------

struct CircuitTensor {
    Tensor tensor;
    std::vector<int> basis_index;  // one per wire
};

// Union of per-tensor systems over a shared basis-index scheme: a gate wire
// with index k uses the a{k} entries, a cogate wire the b{k} entries of the
// inverse, and every index appearing on both sides gets the four
// A_k * A_k^{-1} = I linkage generators.
inline PolySystem circuit_ideal(const std::vector<CircuitTensor>& tensors, IdealMode mode) {
    // per-edge consistency of the index scheme
    std::map<EdgeId, int> edge_index;
    std::set<int> gate_indices, cogate_indices;
    for (const CircuitTensor& ct : tensors) {
        if (static_cast<int>(ct.basis_index.size()) != ct.tensor.arity())
            throw Error("basis index count mismatch");
        for (int i = 0; i < ct.tensor.arity(); ++i) {
            EdgeId e = ct.tensor.wires()[i];
            int k = ct.basis_index[i];
            auto it = edge_index.find(e);
            if (it != edge_index.end() && it->second != k)
                throw SchemeCollision("edge " + std::to_string(e) +
                                      " bound to two basis indices");
            edge_index[e] = k;
            (ct.tensor.kind() == TensorKind::Cogate ? cogate_indices : gate_indices).insert(k);
        }
    }
    if (mode == IdealMode::Homogeneous) {
        std::set<int> all;
        for (auto& [e, k] : edge_index) all.insert(k);
        if (all.size() > 1)
            throw SchemeCollision("homogeneous circuit must use a single basis index");
    }

    MonomialOrder ord{OrderKind::DegRevLex};
    PolySystem sys;

    // variable layout: a-entries, b-entries, dets, det inverses, then the
    // per-tensor scale pairs
    std::map<int, std::array<int, 4>> a_vars, b_vars;
    for (int k : gate_indices) {
        std::array<int, 4> vs{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                vs[r * 2 + c] = sys.vars.add("a" + std::to_string(k) + "_" + std::to_string(r) +
                                             std::to_string(c));
        a_vars[k] = vs;
    }
    for (int k : cogate_indices) {
        std::array<int, 4> vs{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                vs[r * 2 + c] = sys.vars.add("b" + std::to_string(k) + "_" + std::to_string(r) +
                                             std::to_string(c));
        b_vars[k] = vs;
    }
    std::map<int, int> a_det, b_det, a_detv, b_detv;
    for (int k : gate_indices) a_det[k] = sys.vars.add("dA" + std::to_string(k));
    for (int k : cogate_indices) b_det[k] = sys.vars.add("dB" + std::to_string(k));
    for (int k : gate_indices) a_detv[k] = sys.vars.add("dA" + std::to_string(k) + "v");
    for (int k : cogate_indices) b_detv[k] = sys.vars.add("dB" + std::to_string(k) + "v");
    std::vector<std::pair<int, int>> scales;
    for (size_t t = 0; t < tensors.size(); ++t) {
        int g0 = sys.vars.add("g0_t" + std::to_string(t + 1));
        int g0v = sys.vars.add("g0v_t" + std::to_string(t + 1));
        scales.emplace_back(g0, g0v);
    }

    int nv = sys.vars.size();
    auto var_poly = [&](int v) {
        std::vector<Term> ts{{Monomial::one(nv).bump(v), mpq_class(1)}};
        return Polynomial::from_terms(std::move(ts), ord);
    };

    // per-tensor generators, then renamed into the shared table
    for (size_t ti = 0; ti < tensors.size(); ++ti) {
        const CircuitTensor& ct = tensors[ti];
        bool dual = ct.tensor.kind() == TensorKind::Cogate;
        Tensor work = dual ? ct.tensor.complement() : ct.tensor;
        int n = ct.tensor.arity();

        auto entry_var = [&](int wire, int r, int c) {
            int k = ct.basis_index[wire];
            if (dual) {
                // M[1-source, 1-target] with (r,c) already complement-mapped
                return b_vars[k][r * 2 + c];
            }
            return a_vars[k][r * 2 + c];
        };

        auto cob = [&](uint32_t target) {
            std::vector<Term> terms;
            for (const auto& [mask, coeff] : work.coeffs()) {
                if (!coeff.is_real_rational())
                    throw NotRational("circuit tensor coefficients must be rational");
                Term t{Monomial::one(nv), coeff.rational()};
                for (int i = 0; i < n; ++i) {
                    int tb = (target >> i) & 1;
                    int sb = (mask >> i) & 1;
                    int r = dual ? 1 - sb : tb;
                    int c = dual ? 1 - tb : sb;
                    t.m.bump(entry_var(i, r, c));
                }
                terms.push_back(std::move(t));
            }
            return Polynomial::from_terms(std::move(terms), ord);
        };

        Polynomial g0p = var_poly(scales[ti].first);
        Polynomial g0vp = var_poly(scales[ti].second);
        uint32_t full = work.full_mask();
        for (uint32_t m = 0; n > 0 && m <= full; ++m) {
            if (__builtin_popcount(m) % 2 != 1) continue;
            sys.gens.push_back({cob(m).times(g0vp, ord), GenTag::Parity});
        }
        for (uint32_t m = 0; n >= 4 && m <= full; ++m) {
            int k = __builtin_popcount(m);
            if (k < 4 || k % 2) continue;
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (m & (1u << i)) members.push_back(i);
            int lo = members.front();
            Polynomial rhs;
            for (size_t idx = 1; idx < members.size(); ++idx) {
                int i = members[idx];
                uint32_t pm = (1u << lo) | (1u << i);
                Polynomial term = cob(pm).times(cob(m & ~pm), ord);
                rhs = rhs.plus(idx % 2 == 0 ? term.scaled(mpq_class(-1)) : term, ord);
            }
            sys.gens.push_back(
                {cob(m).times(g0vp, ord).minus(rhs.times(g0vp.times(g0vp, ord), ord), ord),
                 GenTag::Consistency});
        }
        sys.gens.push_back({cob(0).minus(g0p, ord), GenTag::Empty});
        sys.gens.push_back(
            {g0p.times(g0vp, ord).minus(Polynomial::constant(nv, 1), ord), GenTag::Inversion});
    }

    // determinant definitions and inversions per declared matrix
    for (int k : gate_indices) {
        auto& vs = a_vars[k];
        Polynomial det_expr = var_poly(vs[0]).times(var_poly(vs[3]), ord)
                                  .minus(var_poly(vs[1]).times(var_poly(vs[2]), ord), ord);
        sys.gens.push_back({det_expr.minus(var_poly(a_det[k]), ord), GenTag::Inversion});
        sys.gens.push_back({var_poly(a_det[k]).times(var_poly(a_detv[k]), ord)
                                .minus(Polynomial::constant(nv, 1), ord),
                            GenTag::Inversion});
    }
    for (int k : cogate_indices) {
        auto& vs = b_vars[k];
        Polynomial det_expr = var_poly(vs[0]).times(var_poly(vs[3]), ord)
                                  .minus(var_poly(vs[1]).times(var_poly(vs[2]), ord), ord);
        sys.gens.push_back({det_expr.minus(var_poly(b_det[k]), ord), GenTag::Inversion});
        sys.gens.push_back({var_poly(b_det[k]).times(var_poly(b_detv[k]), ord)
                                .minus(Polynomial::constant(nv, 1), ord),
                            GenTag::Inversion});
    }

    // linkage: A_k * A_k^{-1} = I entrywise for indices used on both sides
    for (int k : gate_indices) {
        if (!cogate_indices.count(k)) continue;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                Polynomial sum;
                for (int j = 0; j < 2; ++j) {
                    sum = sum.plus(var_poly(a_vars[k][r * 2 + j])
                                       .times(var_poly(b_vars[k][j * 2 + c]), ord),
                                   ord);
                }
                if (r == c) sum = sum.minus(Polynomial::constant(nv, 1), ord);
                sys.gens.push_back({std::move(sum), GenTag::Linkage});
            }
        }
    }
    return sys;
}

// ---- export / import -------------------------------------------------------

enum class ExportFormat { Singular, Neutral };

inline std::string export_system(const PolySystem& sys, ExportFormat fmt) {
    std::ostringstream os;
    if (fmt == ExportFormat::Singular) {
        os << "ring r = 0, (";
        for (int i = 0; i < sys.vars.size(); ++i) os << (i ? "," : "") << sys.vars.names[i];
        os << "), dp;\n";
        if (sys.gens.empty()) {
            os << "ideal i = 0;\n";
        } else {
            os << "ideal i = ";
            for (size_t i = 0; i < sys.gens.size(); ++i) {
                if (i) os << ",\n  ";
                os << sys.gens[i].p.str(sys.vars);
            }
            os << ";\n";
        }
        os << "std(i);\n";
        return os.str();
    }
    os << "pfk-neutral 1\n";
    for (const std::string& v : sys.vars.names) os << "var " << v << "\n";
    for (const Generator& g : sys.gens)
        os << "gen " << tag_name(g.tag) << " " << g.p.str(sys.vars) << "\n";
    os << "end\n";
    return os.str();
}

// Parses the neutral format back into a system (round-trip safe).
inline PolySystem parse_neutral(const std::string& text) {
    PolySystem sys;
    MonomialOrder ord{OrderKind::DegRevLex};
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header = false, done = false;
    std::vector<std::pair<GenTag, std::string>> raw_gens;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (!header) {
            if (kw != "pfk-neutral") throw ParseError("missing pfk-neutral header", lineno, 1);
            header = true;
            continue;
        }
        if (kw == "var") {
            std::string name;
            ls >> name;
            if (name.empty()) throw ParseError("var line without a name", lineno, 1);
            sys.vars.add(name);
        } else if (kw == "gen") {
            std::string tag;
            ls >> tag;
            std::string rest;
            std::getline(ls, rest);
            raw_gens.emplace_back(tag_from_name(tag), rest);
        } else if (kw == "end") {
            done = true;
            break;
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, 1);
        }
    }
    if (!done) throw ParseError("missing end marker");

    // polynomial parser over the declared variables
    auto parse_poly = [&](const std::string& s) {
        int nv = sys.vars.size();
        Polynomial p;
        size_t pos = 0;
        auto skip = [&]() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        };
        bool first = true;
        while (true) {
            skip();
            if (pos >= s.size()) break;
            mpq_class sign(1);
            if (s[pos] == '+') {
                ++pos;
            } else if (s[pos] == '-') {
                sign = -1;
                ++pos;
            } else if (!first) {
                throw ParseError("expected + or - in polynomial");
            }
            skip();
            Term t{Monomial::one(nv), sign};
            bool saw_factor = false;
            while (true) {
                skip();
                if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
                    size_t start = pos;
                    while (pos < s.size() &&
                           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
                        ++pos;
                    t.c *= mpq_class(s.substr(start, pos - start));
                    saw_factor = true;
                } else if (pos < s.size() &&
                           (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                    size_t start = pos;
                    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                              s[pos] == '_'))
                        ++pos;
                    std::string name = s.substr(start, pos - start);
                    int v = sys.vars.find(name);
                    if (v < 0) throw ParseError("unknown variable '" + name + "'");
                    int exp = 1;
                    if (pos < s.size() && s[pos] == '^') {
                        ++pos;
                        size_t es = pos;
                        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                            ++pos;
                        exp = std::stoi(s.substr(es, pos - es));
                    }
                    t.m.bump(v, exp);
                    saw_factor = true;
                } else {
                    break;
                }
                skip();
                if (pos < s.size() && s[pos] == '*') {
                    ++pos;
                    continue;
                }
                break;
            }
            if (!saw_factor) throw ParseError("empty term in polynomial");
            if (t.c != 0) p = p.plus(Polynomial::from_terms({t}, ord), ord);
            first = false;
        }
        return p;
    };

    for (auto& [tag, body] : raw_gens) sys.gens.push_back({parse_poly(body), tag});
    return sys;
}

}  // namespace pfk
