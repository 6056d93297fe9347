#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfk/certificate.hpp"
#include "pfk/pfaffian.hpp"
#include "pfk/skew.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

// A vertex of the bipartite network: gate #index or cogate #index.
struct VertexRef {
    bool is_gate = true;
    int index = 0;
    auto operator<=>(const VertexRef&) const = default;
};

// Counterclockwise rotation of incident edges per vertex, plus one dart
// (vertex, edge) whose left face is the unbounded one.
struct RotationSystem {
    std::map<VertexRef, std::vector<EdgeId>> rotation;
    VertexRef outer_vertex;
    EdgeId outer_edge = 0;
};

// Bipartite tensor contraction network {G, C, E}. Every edge of a closed
// network is incident on exactly one gate and one cogate; fragments may
// leave edges dangling on one side.
struct Network {
    std::vector<Tensor> gates;
    std::vector<Tensor> cogates;
    std::set<EdgeId> edges;
    std::optional<RotationSystem> embedding;
    std::optional<EdgeOrder> order;
    std::vector<std::string> gate_names;
    std::vector<std::string> cogate_names;

    const Tensor& tensor(const VertexRef& v) const {
        return v.is_gate ? gates[v.index] : cogates[v.index];
    }

    std::string name(const VertexRef& v) const {
        const auto& names = v.is_gate ? gate_names : cogate_names;
        if (v.index < static_cast<int>(names.size()) && !names[v.index].empty())
            return names[v.index];
        return (v.is_gate ? "G" : "C") + std::to_string(v.index + 1);
    }

    std::optional<VertexRef> vertex_by_name(const std::string& n) const {
        for (size_t i = 0; i < gates.size(); ++i)
            if (name({true, static_cast<int>(i)}) == n) return VertexRef{true, static_cast<int>(i)};
        for (size_t i = 0; i < cogates.size(); ++i)
            if (name({false, static_cast<int>(i)}) == n)
                return VertexRef{false, static_cast<int>(i)};
        return std::nullopt;
    }

    // Every edge on at most (exactly, when closed) one gate and one cogate.
    void validate(bool allow_dangling = false) const {
        std::map<EdgeId, int> gate_count, cogate_count;
        for (const Tensor& g : gates) {
            if (g.kind() != TensorKind::Gate) throw Error("gate list contains a non-gate");
            for (EdgeId e : g.wires()) ++gate_count[e];
        }
        for (const Tensor& c : cogates) {
            if (c.kind() != TensorKind::Cogate) throw Error("cogate list contains a non-cogate");
            for (EdgeId e : c.wires()) ++cogate_count[e];
        }
        for (EdgeId e : edges) {
            int gc = gate_count.count(e) ? gate_count[e] : 0;
            int cc = cogate_count.count(e) ? cogate_count[e] : 0;
            if (gc > 1 || cc > 1)
                throw Error("edge " + std::to_string(e) + " incident on two same-kind tensors");
            if (!allow_dangling && (gc != 1 || cc != 1))
                throw Error("edge " + std::to_string(e) +
                            " must touch exactly one gate and one cogate");
        }
        for (auto& [e, n] : gate_count)
            if (!edges.count(e)) throw Error("gate uses undeclared edge " + std::to_string(e));
        for (auto& [e, n] : cogate_count)
            if (!edges.count(e)) throw Error("cogate uses undeclared edge " + std::to_string(e));
    }

    std::vector<VertexRef> vertices() const {
        std::vector<VertexRef> vs;
        for (size_t i = 0; i < gates.size(); ++i) vs.push_back({true, static_cast<int>(i)});
        for (size_t i = 0; i < cogates.size(); ++i) vs.push_back({false, static_cast<int>(i)});
        return vs;
    }

    // dangling = incident on only one side
    std::set<EdgeId> dangling_edges() const {
        std::map<EdgeId, int> count;
        for (const Tensor& g : gates)
            for (EdgeId e : g.wires()) ++count[e];
        for (const Tensor& c : cogates)
            for (EdgeId e : c.wires()) ++count[e];
        std::set<EdgeId> out;
        for (EdgeId e : edges)
            if (!count.count(e) || count[e] < 2) out.insert(e);
        return out;
    }
};

namespace detail {

inline std::map<EdgeId, std::vector<VertexRef>> incidence(const Network& n) {
    std::map<EdgeId, std::vector<VertexRef>> inc;
    for (size_t i = 0; i < n.gates.size(); ++i)
        for (EdgeId e : n.gates[i].wires()) inc[e].push_back({true, static_cast<int>(i)});
    for (size_t i = 0; i < n.cogates.size(); ++i)
        for (EdgeId e : n.cogates[i].wires()) inc[e].push_back({false, static_cast<int>(i)});
    return inc;
}

}  // namespace detail

// val(Gamma) by spanning-tree contraction, rooted at the gate carrying the
// lowest edge id (Newick-style fold). Components are evaluated independently
// and their scalar values multiplied. Exponential time, guarded by `budget`.
inline Scalar brute_force_value(const Network& net, WorkBudget* budget = nullptr) {
    net.validate(false);
    auto inc = detail::incidence(net);

    std::map<VertexRef, std::vector<VertexRef>> adj;
    for (auto& [e, vs] : inc)
        if (vs.size() == 2) {
            adj[vs[0]].push_back(vs[1]);
            adj[vs[1]].push_back(vs[0]);
        }

    std::set<VertexRef> visited;
    Scalar total(1);
    std::vector<VertexRef> all = net.vertices();
    // deterministic component roots: lowest min-edge gate first
    std::sort(all.begin(), all.end(), [&](const VertexRef& a, const VertexRef& b) {
        const Tensor &ta = net.tensor(a), &tb = net.tensor(b);
        EdgeId ma = ta.wires().empty() ? 0 : *std::min_element(ta.wires().begin(), ta.wires().end());
        EdgeId mb = tb.wires().empty() ? 0 : *std::min_element(tb.wires().begin(), tb.wires().end());
        if (a.is_gate != b.is_gate) return a.is_gate > b.is_gate;
        if (ma != mb) return ma < mb;
        return a < b;
    });

    for (const VertexRef& root : all) {
        if (visited.count(root)) continue;
        // post-order contraction of the BFS tree below root
        std::function<Tensor(const VertexRef&)> eval = [&](const VertexRef& v) -> Tensor {
            visited.insert(v);
            Tensor acc = net.tensor(v);
            for (const VertexRef& w : adj[v]) {
                if (visited.count(w)) continue;
                Tensor sub = eval(w);
                acc = contract(acc, sub, budget);
            }
            return acc;
        };
        Tensor val = eval(root);
        if (val.arity() != 0) throw Error("network is not closed: dangling wires remain");
        total *= val.scalar_value();
    }
    return total;
}

// Contracts every tensor of a (possibly dangling) network into one tensor,
// pairing shared wires greedily; disconnected pieces end up as an outer
// product. The result lives on the dangling wires.
inline Tensor contract_fragment(const Network& net, WorkBudget* budget = nullptr) {
    std::vector<Tensor> pool;
    for (const Tensor& c : net.cogates) pool.push_back(c);
    for (const Tensor& g : net.gates) pool.push_back(g);
    if (pool.empty()) throw Error("empty network");
    Tensor acc = pool.back();
    pool.pop_back();
    while (!pool.empty()) {
        bool found = false;
        for (size_t i = 0; i < pool.size(); ++i) {
            bool shares = false;
            for (EdgeId e : pool[i].wires()) shares |= acc.wire_position(e) >= 0;
            if (!shares) continue;
            Tensor next = pool[i];
            pool.erase(pool.begin() + i);
            acc = contract(acc, next, budget);
            found = true;
            break;
        }
        if (!found) {  // disconnected: splice in the next component
            Tensor next = pool.back();
            pool.pop_back();
            acc = contract(acc, next, budget);
        }
    }
    return acc;
}

// Applies a change of basis to every edge: A_e to the gate side, A_e^{-1} to
// the cogate side. val(Gamma) is invariant under this.
inline Network apply_edge_bases(const Network& net, const std::map<EdgeId, BasisMatrix>& bases,
                                double eps = default_eps()) {
    Network out = net;
    auto basis_for = [&](EdgeId e) {
        auto it = bases.find(e);
        return it == bases.end() ? BasisMatrix::identity() : it->second;
    };
    for (Tensor& g : out.gates) {
        std::vector<BasisMatrix> bs;
        for (EdgeId e : g.wires()) bs.push_back(basis_for(e));
        g = g.apply_basis_change(bs);
    }
    for (Tensor& c : out.cogates) {
        std::vector<BasisMatrix> bs;
        for (EdgeId e : c.wires()) bs.push_back(basis_for(e));
        c = c.apply_inverse_basis_change(bs, eps);
    }
    return out;
}

// A network together with a verified certificate per tensor and the change
// of basis carried by each edge.
struct CertifiedNetwork {
    Network net;
    std::vector<Certificate> gate_certs;
    std::vector<Certificate> cogate_certs;
    std::map<EdgeId, BasisMatrix> edge_bases;

    void validate(double eps = default_eps(), bool allow_dangling = false) const {
        net.validate(allow_dangling);
        if (gate_certs.size() != net.gates.size() || cogate_certs.size() != net.cogates.size())
            throw Error("certificate count mismatch");
        auto check_side = [&](const Tensor& t, const Certificate& c) {
            if (!check_certificate(t, c, eps))
                throw Error("certificate fails to verify for tensor on wire " +
                            std::to_string(t.wires().empty() ? 0 : t.wires()[0]));
            for (int i = 0; i < t.arity(); ++i) {
                auto it = edge_bases.find(t.wires()[i]);
                const BasisMatrix& expect = it == edge_bases.end() ? BasisMatrix::identity()
                                                                   : it->second;
                if (!c.bases[i].approx_eq(expect, eps))
                    throw Error("certificate basis disagrees with edge " +
                                std::to_string(t.wires()[i]));
            }
        };
        for (size_t i = 0; i < net.gates.size(); ++i) check_side(net.gates[i], gate_certs[i]);
        for (size_t i = 0; i < net.cogates.size(); ++i)
            check_side(net.cogates[i], cogate_certs[i]);
    }
};

namespace detail {

// Rebuilds a certificate matrix with labels in the order sigma induces on
// the tensor's wires. The matrix is forced by the cobased pair coefficients;
// subsets of size >= 4 are then verified, so a wire order that admits no
// certificate is rejected rather than silently mis-signed. The native order
// and its reversal always succeed; other permutations succeed exactly when
// the reordered tensor is still Pfaffian under the same bases.
inline SkewMatrix reorder_certificate_matrix(const Tensor& t, const Certificate& cert,
                                             const std::vector<EdgeId>& induced, double eps) {
    if (induced == t.wires()) return cert.matrix;
    bool dual = t.kind() == TensorKind::Cogate;
    Tensor tp = cobased_tensor(t, cert.bases, eps);
    uint32_t full = t.full_mask();

    auto coeff_by_labels = [&](const std::set<EdgeId>& labels) {
        uint32_t m = 0;
        for (EdgeId e : labels) m |= 1u << t.wire_position(e);
        return dual ? tp.coefficient(full & ~m) : tp.coefficient(m);
    };

    int n = t.arity();
    std::vector<Scalar> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            upper.push_back(coeff_by_labels({induced[i], induced[j]}) / cert.scale);
    SkewMatrix m = SkewMatrix::from_upper(induced, upper);

    if (n >= 4) {
        auto pf = pfk::detail::subset_pfaffians(m);
        for (uint32_t mask = 0; mask <= full; ++mask) {
            int k = __builtin_popcount(mask);
            if (k < 4 || k % 2) continue;
            std::set<EdgeId> labels;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) labels.insert(induced[i]);
            if (!approx_equal(coeff_by_labels(labels) / cert.scale, pf[mask], eps))
                throw UnsupportedWireOrder("certificate does not survive the wire order "
                                           "induced by sigma");
        }
    }
    return m;
}

}  // namespace detail

// Polynomial-time evaluation: Xi and Theta are the ordered direct sums of
// the per-tensor certificate matrices, Theta gets the checkerboard flip, and
// the value is (prod alpha_i)(prod beta_j) Pf(Theta~ + Xi).
inline Scalar pfaffian_value(const CertifiedNetwork& cn, const EdgeOrder& sigma,
                             double eps = default_eps()) {
    const Network& net = cn.net;
    if (net.edges.size() % 2 != 0)
        throw OddEdgeCount("Pfaffian evaluation needs an even number of edges");
    for (EdgeId e : net.edges)
        if (!sigma.contains(e))
            throw OrderMismatch("edge " + std::to_string(e) + " missing from sigma");
    if (sigma.size() != net.edges.size())
        throw OrderMismatch("sigma mentions edges outside the network");

    auto induced_order = [&](const Tensor& t) {
        std::vector<EdgeId> ind;
        for (EdgeId e : sigma.seq())
            if (t.wire_position(e) >= 0) ind.push_back(e);
        return ind;
    };

    Scalar scale(1);
    std::vector<SkewMatrix> gate_blocks, cogate_blocks;
    for (size_t i = 0; i < net.gates.size(); ++i) {
        gate_blocks.push_back(detail::reorder_certificate_matrix(
            net.gates[i], cn.gate_certs[i], induced_order(net.gates[i]), eps));
        scale *= cn.gate_certs[i].scale;
    }
    for (size_t i = 0; i < net.cogates.size(); ++i) {
        cogate_blocks.push_back(detail::reorder_certificate_matrix(
            net.cogates[i], cn.cogate_certs[i], induced_order(net.cogates[i]), eps));
        scale *= cn.cogate_certs[i].scale;
    }

    SkewMatrix xi = direct_sum_ordered(gate_blocks, sigma);
    SkewMatrix theta = direct_sum_ordered(cogate_blocks, sigma);
    SkewMatrix theta_flipped = sign_flip(theta);
    return scale * pfaffian(theta_flipped + xi, PfMethod::Elimination);
}

}  // namespace pfk
