#pragma once

#include <string>
#include <vector>

#include "pfk/decompose.hpp"
#include "pfk/registry.hpp"
#include "pfk/samples.hpp"

namespace pfk {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

namespace detail {

inline double tensor_residual(const Tensor& a, const Tensor& b) {
    double worst = 0.0;
    for (uint32_t m = 0; m <= a.full_mask(); ++m) {
        std::set<EdgeId> sub;
        for (int i = 0; i < a.arity(); ++i)
            if (m & (1u << i)) sub.insert(a.wires()[i]);
        worst = std::max(worst,
                         std::abs(a.coefficient(m).approx() - b.coefficient_by_edges(sub).approx()));
        if (a.full_mask() == 0) break;
    }
    return worst;
}

}  // namespace detail

// Checks every transcribed certificate plus the fragment-level identities:
// the basis bridges in both directions and the EQUAL_4 decomposition.
// One result per named check.
inline std::vector<SuiteResult> run_paper_suite(double eps = default_eps()) {
    std::vector<SuiteResult> out;

    for (const RegistryEntry& e : paper_certificate_registry()) {
        SuiteResult r;
        r.name = e.name;
        r.pass = check_certificate(e.tensor, e.cert, eps, &r.residual);
        out.push_back(r);
    }

    const BasisMatrix& A = hadamard_basis();
    const BasisMatrix& B = equal_cogate_basis();
    const Scalar half(mpq_class(1, 2));
    const Scalar quart(mpq_class(1, 4));

    // bridge A->B: EQUAL_3 gate under (A,B,B) capped on wire 3 behaves like
    // EQUAL_2 under (A,B); verified against the directly cobased tensor via
    // the Pfaffian-side partial contraction.
    {
        SuiteResult r;
        r.name = "bridge-a-to-b-fragment";
        SkewMatrix xi = SkewMatrix::from_upper({1, 2, 3}, {half, half, quart});
        Tensor gate_side = sub_pfaffian(xi).scaled(Scalar(2));            // alpha = 2
        Tensor cap = sub_pfaffian_dual(SkewMatrix::zero({3})).scaled(Scalar(2));  // beta = 2
        Tensor value = contract(cap, gate_side);
        Tensor expect = equal_gate(2).apply_basis_change({A, B});
        r.residual = detail::tensor_residual(value, expect);
        r.pass = value.same_by_labels(expect, eps);
        out.push_back(r);
    }

    // bridge B->A: EQUAL_3 cogate under (B,A,A) capped on wire 3 with the
    // |0>+|1> gate behaves like EQUAL_2 under (B,A). The dual partial
    // contraction flips the internal (gate) side.
    {
        SuiteResult r;
        r.name = "bridge-b-to-a-fragment";
        SkewMatrix theta = SkewMatrix::from_upper({1, 2, 3}, {half, half, Scalar(1)});
        Tensor cogate_side = sub_pfaffian_dual(theta).scaled(half);  // beta = 1/2
        SkewMatrix xi_cap = SkewMatrix::zero({3});
        Tensor cap_side = sub_pfaffian(sign_flip(xi_cap)).scaled(Scalar(2));  // alpha = 2
        Tensor value = contract(cogate_side, cap_side);
        Tensor expect = equal_cogate(2).apply_inverse_basis_change({B, A});
        r.residual = detail::tensor_residual(value, expect);
        r.pass = value.same_by_labels(expect, eps);
        out.push_back(r);
    }

    // the EQUAL_4 decomposition into two EQUAL_3 gates and one EQUAL_2 cogate
    {
        SuiteResult r;
        r.name = "decomp-equal4-fragment";
        const DecompositionBases& m = decomposition_bases();
        CertifiedNetwork frag;
        frag.net.gates = {equal_gate(3, {5, 1, 2}), equal_gate(3, {6, 3, 4})};
        frag.net.cogates = {equal_cogate(2, {5, 6})};
        frag.net.edges = {1, 2, 3, 4, 5, 6};
        Scalar alpha = parse_scalar("i*root4(2)");
        frag.gate_certs = {
            Certificate{{m.a, m.b, m.b}, alpha,
                        SkewMatrix::from_upper({5, 1, 2}, {half, half, half})},
            Certificate{{m.a, m.b, m.b}, alpha,
                        SkewMatrix::from_upper({6, 3, 4}, {half, half, half})},
        };
        frag.cogate_certs = {
            Certificate{{m.a, m.a}, parse_scalar("-sqrt(2)"), skew2(5, 6, half)}};
        frag.edge_bases = {{1, m.b}, {2, m.b}, {3, m.b}, {4, m.b}, {5, m.a}, {6, m.a}};

        Certificate target{{m.c, m.d, m.e, m.f}, Scalar(1),
                           SkewMatrix::from_upper({1, 2, 3, 4},
                                                  {half, half, -half, -half, half, half})};
        EdgeOrder sigma({5, 2, 1, 6, 4, 3});
        r.pass = check_decomposition(equal_gate(4), target, frag, sigma, eps);
        out.push_back(r);
    }

    return out;
}

}  // namespace pfk
