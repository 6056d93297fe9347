#pragma once

#include <deque>
#include <vector>

#include "pfk/network.hpp"
#include "pfk/registry.hpp"

namespace pfk {

// Relabels a certificate matrix onto concrete wires (same entries).
inline SkewMatrix relabel(const SkewMatrix& m, std::vector<EdgeId> labels) {
    std::vector<Scalar> entries;
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) entries.push_back(m.at(i, j));
    return SkewMatrix(std::move(labels), std::move(entries));
}

struct BooleanTree {
    CertifiedNetwork fragment;
    std::vector<EdgeId> dangling;  // the leaf wires, oldest first
};

// Alternating EQUAL tree behaving like an n-arity EQUAL tensor: EQUAL_2
// cogate root under A^{-1} x A^{-1}, EQUAL_3 gates under A x B x B, EQUAL_3
// cogates under B^{-1} x A^{-1} x A^{-1}, capped with |0>+|1> under A and
// <0|+<1| under B where needed.
inline BooleanTree build_boolean_tree(int leaf_count) {
    if (leaf_count < 1) throw Error("leaf_count must be positive");
    const BasisMatrix& A = hadamard_basis();
    const BasisMatrix& B = equal_cogate_basis();
    const Scalar half(mpq_class(1, 2));
    const Scalar quart(mpq_class(1, 4));

    BooleanTree bt;
    CertifiedNetwork& cn = bt.fragment;
    EdgeId next_edge = 1;
    auto fresh = [&]() {
        EdgeId e = next_edge++;
        cn.net.edges.insert(e);
        return e;
    };

    struct Open {
        EdgeId edge;
        bool needs_gate;  // which side is still missing
        char basis;       // 'A' or 'B'
    };
    std::deque<Open> open;

    // root: EQUAL_2 cogate on two fresh A-edges
    {
        EdgeId e1 = fresh(), e2 = fresh();
        cn.net.cogates.push_back(equal_cogate(2, {e1, e2}));
        cn.cogate_certs.push_back(
            Certificate{{A, A}, half, relabel(skew2(1, 2, Scalar(1)), {e1, e2})});
        cn.edge_bases[e1] = A;
        cn.edge_bases[e2] = A;
        open.push_back({e1, true, 'A'});
        open.push_back({e2, true, 'A'});
    }

    if (leaf_count == 1) {
        // seal one root wire with the 1-arity cap gate
        Open o = open.front();
        open.pop_front();
        cn.net.gates.push_back(cap_gate(o.edge));
        cn.gate_certs.push_back(Certificate{{A}, Scalar(2), SkewMatrix::zero({o.edge})});
    }

    while (static_cast<int>(open.size()) < leaf_count) {
        Open o = open.front();
        open.pop_front();
        if (o.needs_gate) {
            // EQUAL_3 gate under (A, B, B): consumes an A-edge, opens two B-edges
            EdgeId b1 = fresh(), b2 = fresh();
            cn.net.gates.push_back(equal_gate(3, {o.edge, b1, b2}));
            cn.gate_certs.push_back(Certificate{
                {A, B, B}, Scalar(2),
                relabel(SkewMatrix::from_upper({1, 2, 3}, {half, half, quart}),
                        {o.edge, b1, b2})});
            cn.edge_bases[b1] = B;
            cn.edge_bases[b2] = B;
            open.push_back({b1, false, 'B'});
            open.push_back({b2, false, 'B'});
        } else {
            // EQUAL_3 cogate under (B^{-1}, A^{-1}, A^{-1})
            EdgeId a1 = fresh(), a2 = fresh();
            cn.net.cogates.push_back(equal_cogate(3, {o.edge, a1, a2}));
            cn.cogate_certs.push_back(Certificate{
                {B, A, A}, half,
                relabel(SkewMatrix::from_upper({1, 2, 3}, {half, half, Scalar(1)}),
                        {o.edge, a1, a2})});
            cn.edge_bases[a1] = A;
            cn.edge_bases[a2] = A;
            open.push_back({a1, true, 'A'});
            open.push_back({a2, true, 'A'});
        }
    }
    for (const Open& o : open) bt.dangling.push_back(o.edge);
    return bt;
}

}  // namespace pfk
