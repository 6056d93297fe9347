#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "pfk/errors.hpp"
#include "pfk/scalar.hpp"
#include "pfk/skew.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

enum class PfMethod { Enumeration, Laplace, Elimination };

namespace detail {

// Sum over the restricted permutations S^Pf_n: sigma(1)<sigma(2), ...,
// sigma(1)<sigma(3)<...<sigma(n-1), each term sgn(sigma) * prod a_{.,.}.
// The sign is computed by literal inversion counting, independent of the
// Laplace recursion used elsewhere.
inline Scalar pf_enumeration(const SkewMatrix& m) {
    int n = m.n();
    if (n % 2) return Scalar(0);
    if (n == 0) return Scalar(1);
    if (n > 10) throw SizeLimit("enumeration limited to n <= 10");

    std::vector<int> perm;  // sigma(1), sigma(2), ... as 0-based indices
    std::vector<bool> used(n, false);
    Scalar total(0);

    auto sgn = [](const std::vector<int>& p) {
        int inv = 0;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++inv;
        return (inv % 2) ? -1 : 1;
    };

    // Restricted shape: at each level pick the smallest unused index, then any
    // larger unused partner.
    std::function<void()> rec = [&]() {
        if (static_cast<int>(perm.size()) == n) {
            Scalar term(sgn(perm));
            for (int k = 0; k + 1 < n; k += 2) term *= m.at(perm[k], perm[k + 1]);
            total += term;
            return;
        }
        int first = 0;
        while (used[first]) ++first;
        used[first] = true;
        perm.push_back(first);
        for (int partner = first + 1; partner < n; ++partner) {
            if (used[partner]) continue;
            used[partner] = true;
            perm.push_back(partner);
            rec();
            perm.pop_back();
            used[partner] = false;
        }
        perm.pop_back();
        used[first] = false;
    };
    rec();
    return total;
}

inline Scalar pf_laplace(const SkewMatrix& m) {
    int n = m.n();
    if (n % 2) return Scalar(0);
    if (n == 0) return Scalar(1);
    Scalar total(0);
    for (int j = 1; j < n; ++j) {
        Scalar a = m.at(0, j);
        if (a.exact() && a.is_exact_zero()) continue;
        uint32_t rest = 0;
        for (int k = 1; k < n; ++k)
            if (k != j) rest |= 1u << k;
        Scalar sub = pf_laplace(m.restrict_mask(rest));
        // expansion along the first row: + a_{1,2} Pf(..) - a_{1,3} Pf(..) + ...
        Scalar term = a * sub;
        total += (j % 2) ? term : -term;
    }
    return total;
}

// O(n^3) skew-symmetric Gaussian elimination (Parlett-Reid style Schur
// updates), pivot chosen by maximum modulus. Runs exactly when all entries
// are exact.
inline Scalar pf_elimination(const SkewMatrix& sm) {
    int n = sm.n();
    if (n % 2) return Scalar(0);
    if (n == 0) return Scalar(1);

    std::vector<Scalar> m;
    m.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.push_back(sm.at(i, j));
    auto at = [&](int i, int j) -> Scalar& { return m[static_cast<size_t>(i) * n + j]; };

    Scalar pf(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot row for column k among rows k+1..n-1
        int kp = k + 1;
        double best = at(k, kp).abs();
        for (int i = k + 2; i < n; ++i) {
            double cand = at(k, i).abs();
            if (cand > best) {
                best = cand;
                kp = i;
            }
        }
        // The max-modulus pivot being zero means the whole pivot column is zero.
        Scalar pivot = at(k, kp);
        bool pivot_zero = pivot.exact() ? pivot.is_exact_zero() : (pivot.abs() == 0.0);
        if (pivot_zero) return Scalar(0);
        if (kp != k + 1) {
            // swap rows and columns k+1 <-> kp; each simultaneous swap flips Pf
            for (int j = 0; j < n; ++j) std::swap(at(k + 1, j), at(kp, j));
            for (int i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, kp));
            sign = -sign;
        }
        Scalar p = at(k, k + 1);
        pf *= p;
        for (int i = k + 2; i < n; ++i) {
            for (int j = k + 2; j < n; ++j) {
                // Schur complement keeps the trailing block skew-symmetric.
                Scalar upd = (at(i, k) * at(j, k + 1) - at(i, k + 1) * at(j, k)) / p;
                at(i, j) -= upd;
            }
        }
    }
    if (sign < 0) pf = -pf;
    return pf;
}

// All-subset Pfaffians by the Laplace recurrence over bitmasks, O(2^n * n).
inline std::vector<Scalar> subset_pfaffians(const SkewMatrix& m) {
    int n = m.n();
    std::vector<Scalar> pf(static_cast<size_t>(1) << n, Scalar(0));
    pf[0] = Scalar(1);
    for (uint32_t mask = 1; mask < pf.size(); ++mask) {
        int bits = __builtin_popcount(mask);
        if (bits % 2) continue;  // odd-order Pfaffian is zero
        int lo = __builtin_ctz(mask);
        uint32_t rest = mask & ~(1u << lo);
        Scalar total(0);
        int parity = 0;  // index of the partner among remaining elements
        for (uint32_t r = rest; r; r &= r - 1) {
            int j = __builtin_ctz(r);
            Scalar a = m.at(lo, j);
            if (!(a.exact() && a.is_exact_zero())) {
                Scalar term = a * pf[rest & ~(1u << j)];
                total += (parity % 2 == 0) ? term : -term;
            }
            ++parity;
        }
        pf[mask] = total;
    }
    return pf;
}

}  // namespace detail

inline Scalar pfaffian(const SkewMatrix& m, PfMethod method = PfMethod::Elimination) {
    switch (method) {
        case PfMethod::Enumeration:
            return detail::pf_enumeration(m);
        case PfMethod::Laplace:
            return detail::pf_laplace(m);
        case PfMethod::Elimination:
        default:
            return detail::pf_elimination(m);
    }
}

// sPf(Xi) = sum_{I subset [n]} Pf(Xi|_I) |I>, a gate on the matrix labels.
inline Tensor sub_pfaffian(const SkewMatrix& m, int cap = 16) {
    if (m.n() > cap) throw SizeLimit("subPfaffian size cap exceeded");
    Tensor t = Tensor::gate(m.labels());
    auto pf = detail::subset_pfaffians(m);
    for (uint32_t mask = 0; mask < pf.size(); ++mask) t.set(mask, pf[mask]);
    return t;
}

// sPf*(Xi) = sum_{J subset [n]} Pf(Xi|_{J^C}) <J|.
inline Tensor sub_pfaffian_dual(const SkewMatrix& m, int cap = 16) {
    if (m.n() > cap) throw SizeLimit("subPfaffian size cap exceeded");
    Tensor t = Tensor::cogate(m.labels());
    auto pf = detail::subset_pfaffians(m);
    uint32_t full = t.full_mask();
    for (uint32_t mask = 0; mask < pf.size(); ++mask) t.set(mask, pf[full & ~mask]);
    return t;
}

}  // namespace pfk
