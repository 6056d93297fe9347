#pragma once

#include "pfk/network.hpp"
#include "pfk/registry.hpp"

namespace pfk {

// The triangle 2-SAT instance (x1 v x2)(x2 v x3)(x1 v x3): three OR gates,
// three EQUAL cogates, edges 1..6 forming a hexagon. val = 4.
inline Network two_sat_triangle() {
    Network n;
    n.gates = {or_gate({1, 6}), or_gate({2, 3}), or_gate({4, 5})};
    n.gate_names = {"G1", "G2", "G3"};
    n.cogates = {equal_cogate(2, {5, 6}), equal_cogate(2, {1, 2}), equal_cogate(2, {3, 4})};
    n.cogate_names = {"C1", "C2", "C3"};
    n.edges = {1, 2, 3, 4, 5, 6};

    // hexagon G1-C2-G2-C3-G3-C1, counterclockwise
    RotationSystem rs;
    rs.rotation[{true, 0}] = {1, 6};   // G1
    rs.rotation[{false, 1}] = {2, 1};  // C2
    rs.rotation[{true, 1}] = {3, 2};   // G2
    rs.rotation[{false, 2}] = {4, 3};  // C3
    rs.rotation[{true, 2}] = {5, 4};   // G3
    rs.rotation[{false, 0}] = {6, 5};  // C1
    rs.outer_vertex = {false, 1};      // the face left of C2 -> G1 along edge 1
    rs.outer_edge = 1;
    n.embedding = rs;
    return n;
}

// The same network certified under the homogeneous quartic basis: every OR
// gate carries alpha = 1, Xi_12 = -1; every EQUAL cogate carries
// beta = sqrt(5)/2 - 1/2, Theta_12 = sqrt(5)/2 + 3/2.
inline CertifiedNetwork two_sat_triangle_certified() {
    CertifiedNetwork cn;
    cn.net = two_sat_triangle();
    const BasisMatrix& A = or_basis();
    for (EdgeId e : cn.net.edges) cn.edge_bases[e] = A;
    Scalar beta = parse_scalar("sqrt(5)/2 - 1/2");
    Scalar k = parse_scalar("sqrt(5)/2 + 3/2");
    for (const Tensor& g : cn.net.gates)
        cn.gate_certs.push_back(
            Certificate{{A, A}, Scalar(1), skew2(g.wires()[0], g.wires()[1], Scalar(-1))});
    for (const Tensor& c : cn.net.cogates)
        cn.cogate_certs.push_back(Certificate{{A, A}, beta, skew2(c.wires()[0], c.wires()[1], k)});
    return cn;
}

// Small five-vertex sample network whose value is zero (the EQUAL branch is
// cut off by the forced <1_1 1_4| pin).
inline Network zero_value_sample() {
    Network n;
    n.gates = {
        Tensor::from_bits(TensorKind::Gate, {4, 5, 6}, {"000", "111"}),
        Tensor::from_bits(TensorKind::Gate, {1, 2, 3}, {"101", "011", "111"}),
    };
    n.gate_names = {"G1", "G2"};
    n.cogates = {
        Tensor::from_bits(TensorKind::Cogate, {3, 6}, {"01", "10"}),
        Tensor::from_bits(TensorKind::Cogate, {2, 5}, {"01", "10"}),
        Tensor::from_bits(TensorKind::Cogate, {1, 4}, {"11"}),
    };
    n.cogate_names = {"C1", "C2", "C3"};
    n.edges = {1, 2, 3, 4, 5, 6};
    return n;
}

// One EQUAL gate against one EQUAL cogate on two parallel edges; val = 2.
inline Network equal_pair(EdgeId e1 = 1, EdgeId e2 = 2) {
    Network n;
    n.gates = {equal_gate(2, {e1, e2})};
    n.cogates = {equal_cogate(2, {e1, e2})};
    n.edges = {e1, e2};
    RotationSystem rs;
    rs.rotation[{true, 0}] = {e1, e2};
    rs.rotation[{false, 0}] = {e2, e1};
    rs.outer_vertex = {false, 0};
    rs.outer_edge = e1;
    n.embedding = rs;
    return n;
}

}  // namespace pfk
