#pragma once

#include <vector>

#include "pfk/network.hpp"
#include "pfk/pfaffian.hpp"

namespace pfk {

namespace detail {

// Wire-order reconciliation for fragment blocks: the order sigma induces on
// the block labels must be the native order or its cyclic reversal anchored
// at the first crossed wire; the reversed case flips the block by the
// checkerboard pattern in native indexing.
inline SkewMatrix fragment_block(const SkewMatrix& native, const EdgeOrder& sigma) {
    std::vector<EdgeId> induced;
    for (EdgeId e : sigma.seq())
        if (native.position_of(e) >= 0) induced.push_back(e);
    if (induced.size() != native.labels().size())
        throw OrderMismatch("sigma misses block labels");
    const std::vector<EdgeId>& nat = native.labels();
    if (induced == nat) return native;

    // Supported reversals: the cyclic reversal anchored at the native first
    // wire (first wire kept, rest reversed) and the plain reversal. Other
    // permutations are not curve-realizable for these fragments and are
    // rejected rather than mis-signed.
    size_t n = nat.size();
    bool anchored = induced[0] == nat[0];
    for (size_t i = 1; i < n && anchored; ++i)
        if (induced[i] != nat[n - i]) anchored = false;
    bool plain = true;
    for (size_t i = 0; i < n && plain; ++i)
        if (induced[i] != nat[n - 1 - i]) plain = false;
    if (!anchored && !plain)
        throw UnsupportedWireOrder("block order in sigma is neither the native order nor its "
                                   "reversal");
    return sign_flip(native);
}

}  // namespace detail

// Decomposability check: the basis-changed target gate must equal the
// partial contraction  (prod alpha)(prod beta) <sPf*(Theta~) | sPf(Xi~_sigma)>
// of the fragment, where Xi~_sigma concatenates the (possibly flipped) gate
// blocks in native order and Theta~ is the checkerboard-flipped ordered
// direct sum of the cogate blocks over the internal wires.
inline bool check_decomposition(const Tensor& target, const Certificate& target_cert,
                                const CertifiedNetwork& fragment, const EdgeOrder& sigma,
                                double eps = default_eps(), Tensor* intermediate_out = nullptr) {
    if (target.kind() != TensorKind::Gate) throw Error("decomposition target must be a gate");
    const Network& net = fragment.net;

    std::set<EdgeId> dangling = net.dangling_edges();
    std::set<EdgeId> target_wires(target.wires().begin(), target.wires().end());
    if (dangling != target_wires)
        throw WireMismatch("fragment dangling wires must equal the target wires");
    for (const Tensor& c : net.cogates)
        for (EdgeId e : c.wires())
            if (dangling.count(e))
                throw WireMismatch("fragment cogate wires must all be internal");

    // gate side: block-diagonal concatenation in native order
    std::vector<EdgeId> labels;
    std::vector<SkewMatrix> blocks;
    Scalar scale(1);
    for (size_t i = 0; i < net.gates.size(); ++i) {
        SkewMatrix b = detail::fragment_block(fragment.gate_certs[i].matrix, sigma);
        for (EdgeId e : b.labels()) labels.push_back(e);
        blocks.push_back(std::move(b));
        scale *= fragment.gate_certs[i].scale;
    }
    SkewMatrix xi = direct_sum_ordered(blocks, EdgeOrder(labels));
    Tensor gate_side = sub_pfaffian(xi);
    if (intermediate_out) *intermediate_out = gate_side;

    // cogate side: ordered direct sum over sigma, then the checkerboard flip
    std::vector<SkewMatrix> cblocks;
    for (size_t i = 0; i < net.cogates.size(); ++i) {
        cblocks.push_back(detail::fragment_block(fragment.cogate_certs[i].matrix, sigma));
        scale *= fragment.cogate_certs[i].scale;
    }
    SkewMatrix theta = direct_sum_ordered(cblocks, sigma);
    Tensor cogate_side = sub_pfaffian_dual(sign_flip(theta));

    Tensor value = contract(cogate_side, gate_side).scaled(scale);
    Tensor expect = target.apply_basis_change(target_cert.bases);
    return value.same_by_labels(expect, eps);
}

}  // namespace pfk
