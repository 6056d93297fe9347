#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/basis.hpp"
#include "pfk/errors.hpp"
#include "pfk/expr.hpp"
#include "pfk/scalar.hpp"

namespace pfk {

// Edge labels in a contraction network. Positive, unique within a network.
using EdgeId = int;

enum class WireSide : uint8_t { Ket, Bra };
enum class TensorKind { Gate, Cogate, Mixed };

// Counts coefficient multiplications performed by exponential-time paths so
// callers can bound the work of brute-force evaluation.
struct WorkBudget {
    size_t limit = 0;  // 0 means unlimited
    size_t used = 0;
    void charge(size_t n) {
        used += n;
        if (limit && used > limit) throw BudgetExceeded("contraction work limit exceeded");
    }
};

// A sparse tensor over an ordered list of wires. Subsets of wire positions
// index the coefficients: position 1 is the leftmost symbol of a ket/bra and
// the first tensor factor. A tensor whose wires are all kets is a gate, all
// bras a cogate; mixed tensors arise as intermediate contraction results.
class Tensor {
public:
    Tensor() = default;

    Tensor(std::vector<EdgeId> wires, std::vector<WireSide> sides)
        : wires_(std::move(wires)), sides_(std::move(sides)) {
        if (wires_.size() != sides_.size()) throw Error("wire/side length mismatch");
        if (wires_.size() > 31) throw SizeLimit("tensor arity above 31 is unsupported");
        std::set<EdgeId> seen;
        for (EdgeId e : wires_) {
            if (e <= 0) throw Error("edge ids must be positive");
            if (!seen.insert(e).second) throw LabelCollision("duplicate wire " + std::to_string(e));
        }
    }

    static Tensor make(TensorKind kind, std::vector<EdgeId> wires) {
        WireSide side = kind == TensorKind::Cogate ? WireSide::Bra : WireSide::Ket;
        std::vector<WireSide> sides(wires.size(), side);
        return Tensor(std::move(wires), std::move(sides));
    }
    static Tensor gate(std::vector<EdgeId> wires) {
        std::vector<WireSide> s(wires.size(), WireSide::Ket);
        return Tensor(std::move(wires), std::move(s));
    }
    static Tensor cogate(std::vector<EdgeId> wires) {
        std::vector<WireSide> s(wires.size(), WireSide::Bra);
        return Tensor(std::move(wires), std::move(s));
    }

    // Builds a 0/1 tensor from bitstrings like {"10","01","11"} (leftmost bit
    // is position 1 / wire 0).
    static Tensor from_bits(TensorKind kind, std::vector<EdgeId> wires,
                            std::initializer_list<const char*> terms) {
        Tensor t = make(kind, std::move(wires));
        for (const char* bits : terms) t.set(mask_from_bits(bits, t.arity()), Scalar(1));
        return t;
    }
    static Tensor from_masks(TensorKind kind, std::vector<EdgeId> wires,
                             const std::vector<uint32_t>& masks) {
        Tensor t = make(kind, std::move(wires));
        for (uint32_t m : masks) t.set(m, Scalar(1));
        return t;
    }

    static uint32_t mask_from_bits(const std::string& bits, int arity) {
        if (static_cast<int>(bits.size()) != arity) throw InvalidSubset("bitstring length mismatch");
        uint32_t m = 0;
        for (int i = 0; i < arity; ++i) {
            if (bits[i] == '1')
                m |= 1u << i;
            else if (bits[i] != '0')
                throw ParseError("bitstring must be 0/1");
        }
        return m;
    }

    int arity() const { return static_cast<int>(wires_.size()); }
    const std::vector<EdgeId>& wires() const { return wires_; }
    const std::vector<WireSide>& sides() const { return sides_; }
    const std::map<uint32_t, Scalar>& coeffs() const { return coeffs_; }
    uint32_t full_mask() const { return arity() == 0 ? 0u : ((1u << arity()) - 1u); }

    TensorKind kind() const {
        bool any_ket = false, any_bra = false;
        for (WireSide s : sides_) (s == WireSide::Ket ? any_ket : any_bra) = true;
        if (any_ket && any_bra) return TensorKind::Mixed;
        if (any_bra) return TensorKind::Cogate;
        return TensorKind::Gate;  // all-ket, including the 0-arity scalar
    }

    int wire_position(EdgeId e) const {
        for (int i = 0; i < arity(); ++i)
            if (wires_[i] == e) return i;
        return -1;
    }

    void set(uint32_t mask, const Scalar& v) {
        check_mask(mask);
        if (prune_to_zero(v))
            coeffs_.erase(mask);
        else
            coeffs_[mask] = v;
    }

    Scalar coefficient(uint32_t mask) const {
        check_mask(mask);
        auto it = coeffs_.find(mask);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    // Subset given as 1-based wire positions.
    Scalar coefficient(const std::set<int>& positions) const {
        uint32_t m = 0;
        for (int p : positions) {
            if (p < 1 || p > arity())
                throw InvalidSubset("position " + std::to_string(p) + " out of range for arity " +
                                    std::to_string(arity()));
            m |= 1u << (p - 1);
        }
        return coefficient(m);
    }

    // Coefficient looked up by a set of wire labels instead of positions.
    Scalar coefficient_by_edges(const std::set<EdgeId>& edges) const {
        uint32_t m = 0;
        for (EdgeId e : edges) {
            int p = wire_position(e);
            if (p < 0) throw InvalidSubset("edge " + std::to_string(e) + " not on this tensor");
            m |= 1u << p;
        }
        return coefficient(m);
    }

    Scalar scalar_value() const {
        if (arity() != 0) throw Error("tensor is not a scalar");
        return coefficient(0u);
    }

    // (A_1 x ... x A_n) G, one wire at a time: Eq. coefficient rule
    // G'_{I'} = sum_I G_I prod_i A_i[I'_i, I_i].
    Tensor apply_basis_change(const std::vector<BasisMatrix>& bases) const {
        if (static_cast<int>(bases.size()) != arity())
            throw ArityMismatch("need one basis per wire");
        Tensor out = *this;
        for (int i = 0; i < arity(); ++i) out = out.apply_one(i, bases[i], false);
        return out;
    }

    // (A_1^{-1} x ... x A_n^{-1}) C for cogates; the dual action uses the
    // transposed index pattern C'_{J'} = sum_J C_J M_i[J_i, J'_i].
    Tensor apply_inverse_basis_change(const std::vector<BasisMatrix>& bases,
                                      double eps = default_eps()) const {
        if (static_cast<int>(bases.size()) != arity())
            throw ArityMismatch("need one basis per wire");
        Tensor out = *this;
        for (int i = 0; i < arity(); ++i) out = out.apply_one(i, bases[i].inverse(eps), true);
        return out;
    }

    Tensor scaled(const Scalar& c) const {
        Tensor out(wires_, sides_);
        for (const auto& [m, v] : coeffs_) out.set(m, v * c);
        return out;
    }

    Tensor plus(const Tensor& o) const {
        if (wires_ != o.wires_ || sides_ != o.sides_)
            throw WireMismatch("tensor sum requires identical wire lists");
        Tensor out = *this;
        for (const auto& [m, v] : o.coeffs_) out.set(m, out.coefficient(m) + v);
        return out;
    }

    // Reindexes every coefficient by the complementary subset.
    Tensor complement() const {
        Tensor out(wires_, sides_);
        for (const auto& [m, v] : coeffs_) out.set(full_mask() & ~m, v);
        return out;
    }

    bool complement_invariant(double eps = default_eps()) const {
        for (const auto& [m, v] : coeffs_) {
            if (is_zero(v, eps)) continue;
            if (is_zero(coefficient(full_mask() & ~m), eps)) return false;
        }
        return true;
    }

    bool approx_eq(const Tensor& o, double eps = default_eps()) const {
        if (wires_ != o.wires_ || sides_ != o.sides_) return false;
        for (const auto& [m, v] : coeffs_)
            if (!approx_equal(v, o.coefficient(m), eps)) return false;
        for (const auto& [m, v] : o.coeffs_)
            if (!approx_equal(v, coefficient(m), eps)) return false;
        return true;
    }

    // Same coefficients when subsets are compared as wire-label sets,
    // regardless of wire order (both tensors must carry the same label set).
    bool same_by_labels(const Tensor& o, double eps = default_eps()) const {
        if (arity() != o.arity()) return false;
        std::set<EdgeId> mine(wires_.begin(), wires_.end());
        std::set<EdgeId> theirs(o.wires_.begin(), o.wires_.end());
        if (mine != theirs) return false;
        for (uint32_t m = 0; m <= full_mask(); ++m) {
            std::set<EdgeId> sub;
            for (int i = 0; i < arity(); ++i)
                if (m & (1u << i)) sub.insert(wires_[i]);
            if (!approx_equal(coefficient(m), o.coefficient_by_edges(sub), eps)) return false;
            if (full_mask() == 0) break;
        }
        return true;
    }

    size_t term_count() const { return coeffs_.size(); }

    std::string str() const;

private:
    void check_mask(uint32_t mask) const {
        if (arity() < 32 && (mask >> arity()) != 0)
            throw InvalidSubset("subset uses positions beyond arity " + std::to_string(arity()));
    }

    Tensor apply_one(int wire, const BasisMatrix& m, bool dual) const {
        Tensor out(wires_, sides_);
        uint32_t bit = 1u << wire;
        for (const auto& [mask, c] : coeffs_) {
            int b = (mask & bit) ? 1 : 0;
            for (int x = 0; x < 2; ++x) {
                // gates: A[x, b]; cogates (dual action): M[b, x]
                const Scalar& entry = dual ? m.at(b, x) : m.at(x, b);
                if (entry.exact() && entry.is_exact_zero()) continue;
                uint32_t target = x ? (mask | bit) : (mask & ~bit);
                out.set(target, out.coefficient(target) + entry * c);
            }
        }
        return out;
    }

    std::vector<EdgeId> wires_;
    std::vector<WireSide> sides_;
    std::map<uint32_t, Scalar> coeffs_;
};

// Contraction over shared wires with Kronecker-delta pairing. Each shared
// edge must appear as a ket on one operand and a bra on the other; same-side
// sharing has no delta pairing and is rejected.
inline Tensor contract(const Tensor& a, const Tensor& b, WorkBudget* budget = nullptr) {
    std::vector<std::pair<int, int>> shared;  // positions in a, b
    for (int i = 0; i < a.arity(); ++i) {
        int j = b.wire_position(a.wires()[i]);
        if (j < 0) continue;
        if (a.sides()[i] == b.sides()[j])
            throw UnsupportedMixedResult("shared wire " + std::to_string(a.wires()[i]) +
                                         " has the same side on both operands");
        shared.emplace_back(i, j);
    }

    std::vector<int> keep_a, keep_b;
    for (int i = 0; i < a.arity(); ++i) {
        bool is_shared = false;
        for (auto& [ia, ib] : shared) is_shared |= (ia == i);
        if (!is_shared) keep_a.push_back(i);
    }
    for (int j = 0; j < b.arity(); ++j) {
        bool is_shared = false;
        for (auto& [ia, ib] : shared) is_shared |= (ib == j);
        if (!is_shared) keep_b.push_back(j);
    }

    std::vector<EdgeId> wires;
    std::vector<WireSide> sides;
    for (int i : keep_a) {
        wires.push_back(a.wires()[i]);
        sides.push_back(a.sides()[i]);
    }
    for (int j : keep_b) {
        wires.push_back(b.wires()[j]);
        sides.push_back(b.sides()[j]);
    }

    Tensor out(std::move(wires), std::move(sides));
    for (const auto& [ma, ca] : a.coeffs()) {
        for (const auto& [mb, cb] : b.coeffs()) {
            if (budget) budget->charge(1);
            bool match = true;
            for (auto& [ia, ib] : shared) {
                if (((ma >> ia) & 1u) != ((mb >> ib) & 1u)) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            uint32_t mask = 0;
            int pos = 0;
            for (int i : keep_a) mask |= ((ma >> i) & 1u) << pos++;
            for (int j : keep_b) mask |= ((mb >> j) & 1u) << pos++;
            out.set(mask, out.coefficient(mask) + ca * cb);
        }
    }
    return out;
}

inline bool complement_invariant(const Tensor& t, double eps = default_eps()) {
    return t.complement_invariant(eps);
}

// ---- tensor literals ------------------------------------------------------

namespace detail {

// Parses one |bits> or <bits| token starting at s[pos]; returns bits and side.
inline bool parse_braket(const std::string& s, size_t& pos, std::string& bits, WireSide& side) {
    if (pos >= s.size()) return false;
    if (s[pos] == '|') {
        size_t end = s.find('>', pos + 1);
        if (end == std::string::npos) throw ParseError("unterminated ket");
        bits = s.substr(pos + 1, end - pos - 1);
        side = WireSide::Ket;
        pos = end + 1;
        return true;
    }
    if (s[pos] == '<') {
        size_t end = s.find('|', pos + 1);
        if (end == std::string::npos) throw ParseError("unterminated bra");
        bits = s.substr(pos + 1, end - pos - 1);
        side = WireSide::Bra;
        pos = end + 1;
        return true;
    }
    return false;
}

}  // namespace detail

// Parses a term list like "|10> + |01> + 2*|11>" or "<00| + <11|" onto the
// given wires. All terms must agree on the side (gate xor cogate).
inline Tensor parse_tensor_terms(const std::string& text, std::vector<EdgeId> wires) {
    int arity = static_cast<int>(wires.size());
    std::optional<WireSide> side;
    std::vector<std::pair<uint32_t, Scalar>> terms;

    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        Scalar sign(1);
        if (!first || text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '+') {
                ++pos;
            } else if (text[pos] == '-') {
                sign = Scalar(-1);
                ++pos;
            } else if (!first) {
                throw ParseError("expected '+' or '-' between tensor terms");
            }
        }
        skip_ws();
        // Optional coefficient expression ending right before the braket (an
        // optional '*' may separate them).
        size_t braket = text.find_first_of("|<", pos);
        if (braket == std::string::npos) throw ParseError("expected |bits> or <bits| term");
        std::string coeff_text = text.substr(pos, braket - pos);
        // Trim trailing '*' and whitespace.
        while (!coeff_text.empty() &&
               (std::isspace(static_cast<unsigned char>(coeff_text.back())) ||
                coeff_text.back() == '*'))
            coeff_text.pop_back();
        Scalar c = coeff_text.empty() ? Scalar(1) : parse_scalar(coeff_text);
        pos = braket;
        std::string bits;
        WireSide s;
        if (!detail::parse_braket(text, pos, bits, s)) throw ParseError("expected |bits> or <bits|");
        if (side && *side != s) throw ParseError("mixed kets and bras in one tensor literal");
        side = s;
        terms.emplace_back(Tensor::mask_from_bits(bits, arity), sign * c);
        first = false;
    }
    if (!side) throw ParseError("empty tensor literal");

    Tensor t = Tensor::make(*side == WireSide::Ket ? TensorKind::Gate : TensorKind::Cogate,
                            std::move(wires));
    for (auto& [m, c] : terms) t.set(m, t.coefficient(m) + c);
    return t;
}

// Parses "|10> + ..." with implicit wires 1..n (used by the CLI --gate/--cogate).
inline Tensor parse_tensor_literal(const std::string& text) {
    // Peek arity from the first braket token.
    size_t first = text.find_first_of("|<");
    if (first == std::string::npos) throw ParseError("no tensor term found");
    size_t pos = first;
    std::string bits;
    WireSide side;
    detail::parse_braket(text, pos, bits, side);
    std::vector<EdgeId> wires;
    for (size_t i = 0; i < bits.size(); ++i) wires.push_back(static_cast<EdgeId>(i + 1));
    return parse_tensor_terms(text, std::move(wires));
}

inline std::string Tensor::str() const {
    if (arity() == 0) return scalar_value().str();
    std::ostringstream os;
    bool first = true;
    bool pure_ket = kind() == TensorKind::Gate;
    bool pure_bra = kind() == TensorKind::Cogate;
    for (const auto& [m, v] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (!v.is_exact_one()) {
            std::string c = v.str();
            bool needs_parens = c.find('+') != std::string::npos ||
                                (c.find('-') != std::string::npos && c.find('-') != 0);
            os << (needs_parens ? "(" + c + ")" : c) << "*";
        }
        auto all_bits = [&]() {
            std::string out;
            for (int i = 0; i < arity(); ++i) out += (m & (1u << i)) ? '1' : '0';
            return out;
        };
        if (pure_ket) {
            os << "|" << all_bits() << ">";
        } else if (pure_bra) {
            os << "<" << all_bits() << "|";
        } else {
            // mixed: bras then kets, annotated with wire labels
            os << "<";
            for (int i = 0; i < arity(); ++i)
                if (sides_[i] == WireSide::Bra)
                    os << ((m & (1u << i)) ? '1' : '0') << "_" << wires_[i];
            os << "|";
            for (int i = 0; i < arity(); ++i)
                if (sides_[i] == WireSide::Ket)
                    os << ((m & (1u << i)) ? '1' : '0') << "_" << wires_[i];
            os << ">";
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace pfk
