#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "pfk/poly.hpp"
#include "pfk/polysys.hpp"

namespace pfk {

// Full multivariate division remainder: no term of the result is divisible
// by any leading monomial of the basis.
inline Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                              const MonomialOrder& ord) {
    Polynomial rem;
    Polynomial work = p;
    while (!work.is_zero()) {
        const Term& lt = work.lead();
        bool reduced = false;
        for (const Polynomial& b : basis) {
            if (b.is_zero()) continue;
            if (!b.lead().m.divides(lt.m)) continue;
            Term q{b.lead().m.quotient_of(lt.m), lt.c / b.lead().c};
            work = work.minus(b.times_term(q), ord);
            reduced = true;
            break;
        }
        if (!reduced) {
            // move the leading term to the remainder
            rem = rem.plus(Polynomial::from_terms({lt}, ord), ord);
            work = work.minus(Polynomial::from_terms({lt}, ord), ord);
        }
    }
    return rem;
}

// Division with recorded quotients: p = sum q_i b_i + r. Used by tests as an
// independent witness that p - normal_form(p) lies in the ideal.
inline Polynomial normal_form_with_quotients(const Polynomial& p,
                                             const std::vector<Polynomial>& basis,
                                             const MonomialOrder& ord,
                                             std::vector<Polynomial>* quotients) {
    quotients->assign(basis.size(), Polynomial());
    Polynomial rem;
    Polynomial work = p;
    while (!work.is_zero()) {
        const Term& lt = work.lead();
        bool reduced = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            const Polynomial& b = basis[i];
            if (b.is_zero() || !b.lead().m.divides(lt.m)) continue;
            Term q{b.lead().m.quotient_of(lt.m), lt.c / b.lead().c};
            (*quotients)[i] = (*quotients)[i].plus(Polynomial::from_terms({q}, ord), ord);
            work = work.minus(b.times_term(q), ord);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem = rem.plus(Polynomial::from_terms({lt}, ord), ord);
            work = work.minus(Polynomial::from_terms({lt}, ord), ord);
        }
    }
    return rem;
}

struct GroebnerOptions {
    size_t max_pairs = std::numeric_limits<size_t>::max();
    double timeout_sec = std::numeric_limits<double>::infinity();
};

struct GroebnerBasis {
    std::vector<Polynomial> gens;  // reduced, monic, sorted by leading monomial descending
    MonomialOrder order;
    bool budget_exceeded = false;
    size_t pairs_processed = 0;
};

inline bool is_trivial(const GroebnerBasis& gb) {
    return gb.gens.size() == 1 && !gb.gens[0].is_zero() && gb.gens[0].lead().m.is_one();
}

// Buchberger with the coprime-leading-term and chain criteria, processing
// pairs by smallest lcm first (normal strategy). Deterministic for a given
// input ordering. When the pair or time budget runs out the partial basis is
// returned with the flag set.
inline GroebnerBasis buchberger(const PolySystem& sys, MonomialOrder ord = {},
                                const GroebnerOptions& opts = {}) {
    auto started = std::chrono::steady_clock::now();
    auto out_of_time = [&]() {
        if (opts.timeout_sec == std::numeric_limits<double>::infinity()) return false;
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
        return dt.count() > opts.timeout_sec;
    };

    std::vector<Polynomial> g;
    for (const Generator& gen : sys.gens) {
        Polynomial p = gen.p;
        p.resort(ord);
        if (p.is_zero()) continue;
        p.make_primitive();
        g.push_back(std::move(p));
    }

    struct Pair {
        size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pending;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i)
            pending.push_back({i, j, Monomial::lcm(g[i].lead().m, g[j].lead().m)});
    };
    for (size_t j = 1; j < g.size(); ++j) push_pairs(j);

    auto pick = [&]() {
        size_t best = 0;
        for (size_t k = 1; k < pending.size(); ++k) {
            const Pair &a = pending[k], &b = pending[best];
            if (a.lcm.deg != b.lcm.deg) {
                if (a.lcm.deg < b.lcm.deg) best = k;
                continue;
            }
            int c = ord.cmp(a.lcm, b.lcm);
            if (c < 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j)))) best = k;
        }
        return best;
    };

    GroebnerBasis result;
    result.order = ord;

    std::set<std::pair<size_t, size_t>> done;
    while (!pending.empty()) {
        if (result.pairs_processed >= opts.max_pairs || out_of_time()) {
            result.budget_exceeded = true;
            break;
        }
        size_t idx = pick();
        Pair pr = pending[idx];
        pending.erase(pending.begin() + idx);
        ++result.pairs_processed;
        done.insert({pr.i, pr.j});

        const Polynomial &fi = g[pr.i], &fj = g[pr.j];
        // Buchberger's first criterion
        if (Monomial::coprime(fi.lead().m, fj.lead().m)) continue;
        // chain criterion: some k with lt(k) | lcm and both pairs settled
        bool chained = false;
        for (size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j || g[k].is_zero()) continue;
            if (!g[k].lead().m.divides(pr.lcm)) continue;
            auto key_ik = std::minmax(pr.i, k);
            auto key_jk = std::minmax(pr.j, k);
            if (done.count({key_ik.first, key_ik.second}) &&
                done.count({key_jk.first, key_jk.second}))
                chained = true;
        }
        if (chained) continue;

        Term qi{fi.lead().m.quotient_of(pr.lcm), mpq_class(1) / fi.lead().c};
        Term qj{fj.lead().m.quotient_of(pr.lcm), mpq_class(1) / fj.lead().c};
        Polynomial s = fi.times_term(qi).minus(fj.times_term(qj), ord);
        Polynomial r = normal_form(s, g, ord);
        if (r.is_zero()) continue;
        r.make_primitive();
        g.push_back(std::move(r));
        push_pairs(g.size() - 1);
    }

    // A budgeted run returns the raw accumulated set: minimization is only
    // ideal-preserving once the pair queue has been exhausted.
    if (result.budget_exceeded) {
        for (Polynomial& p : g) p.make_monic();
        std::sort(g.begin(), g.end(), [&](const Polynomial& a, const Polynomial& b) {
            return ord.cmp(a.lead().m, b.lead().m) > 0;
        });
        result.gens = std::move(g);
        return result;
    }

    // inter-reduce: drop generators whose lead is divisible by another lead,
    // then put every survivor in normal form against the others
    std::vector<Polynomial> kept;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!g[j].lead().m.divides(g[i].lead().m)) continue;
            // break ties deterministically when leads are equal
            if (g[i].lead().m == g[j].lead().m ? j < i : true) redundant = true;
        }
        if (!redundant) kept.push_back(g[i]);
    }
    for (size_t i = 0; i < kept.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        kept[i] = normal_form(kept[i], others, ord);
        if (!kept[i].is_zero()) kept[i].make_monic();
    }
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [](const Polynomial& p) { return p.is_zero(); }),
               kept.end());
    std::sort(kept.begin(), kept.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.cmp(a.lead().m, b.lead().m) > 0;
    });
    result.gens = std::move(kept);
    return result;
}

}  // namespace pfk
