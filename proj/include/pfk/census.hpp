#pragma once

#include <atomic>
#include <thread>
#include <vector>

#include "pfk/certificate.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

// Enumerates all nonzero 0/1-coefficient tensors of the given arity and kind
// and keeps those that are Pfaffian under the given per-wire bases. Exact:
// the decision procedure is find_certificate_given_bases.
inline std::vector<Tensor> census_under_fixed_bases(int arity,
                                                    const std::vector<BasisMatrix>& bases,
                                                    TensorKind kind = TensorKind::Gate,
                                                    int jobs = 1, double eps = default_eps()) {
    if (arity < 1 || arity > 4)
        throw SizeLimit("census enumerates 2^(2^arity) tables; arity must be 1..4");
    if (static_cast<int>(bases.size()) != arity) throw ArityMismatch("one basis per wire");

    std::vector<EdgeId> wires;
    for (int i = 1; i <= arity; ++i) wires.push_back(i);

    uint64_t tables = uint64_t(1) << (uint64_t(1) << arity);
    std::vector<uint8_t> keep(tables, 0);

    auto worker = [&](uint64_t begin, uint64_t end) {
        for (uint64_t table = begin; table < end; ++table) {
            if (table == 0) continue;  // the zero tensor is excluded
            Tensor t = Tensor::make(kind, wires);
            for (uint32_t m = 0; m < (uint32_t(1) << arity); ++m)
                if (table & (uint64_t(1) << m)) t.set(m, Scalar(1));
            if (find_certificate_given_bases(t, bases, eps)) keep[table] = 1;
        }
    };

    if (jobs <= 1) {
        worker(1, tables);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = (tables + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            uint64_t b = j * chunk, e = std::min(tables, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Tensor> out;
    for (uint64_t table = 1; table < tables; ++table) {
        if (!keep[table]) continue;
        Tensor t = Tensor::make(kind, wires);
        for (uint32_t m = 0; m < (uint32_t(1) << arity); ++m)
            if (table & (uint64_t(1) << m)) t.set(m, Scalar(1));
        out.push_back(std::move(t));
    }
    return out;
}

// Canonical text key for a 0/1 tensor: sorted bitstrings joined by '+'.
inline std::string table_key(const Tensor& t) {
    std::string out;
    for (uint32_t m = 0; m <= t.full_mask(); ++m) {
        if (is_zero(t.coefficient(m))) continue;
        if (!out.empty()) out += "+";
        for (int i = 0; i < t.arity(); ++i) out += (m & (1u << i)) ? '1' : '0';
        if (t.full_mask() == 0) break;
    }
    return out;
}

}  // namespace pfk
