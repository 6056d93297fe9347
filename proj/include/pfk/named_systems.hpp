#pragma once

#include <vector>

#include "pfk/polysys.hpp"
#include "pfk/registry.hpp"

namespace pfk {

// Boolean-tree fragment (EQUAL_3 gate, EQUAL_2 cogate, three caps) under a
// single shared basis. Its variety is empty: no one matrix makes the whole
// collection Pfaffian.
inline PolySystem boolean_tree_homogeneous_ideal() {
    std::vector<CircuitTensor> ts{
        {equal_gate(3, {1, 2, 3}), {1, 1, 1}},
        {equal_cogate(2, {3, 4}), {1, 1}},
        {cap_cogate(1), {1}},
        {cap_cogate(2), {1}},
        {cap_gate(4), {1}},
    };
    return circuit_ideal(ts, IdealMode::Homogeneous);
}

// The four-leaf alternating tree with two unknown bases: index 1 on the
// EQUAL_2 root edges and the gates' first wires, index 2 on the leaf edges.
// This is the feasible configuration the five tree certificates witness.
inline PolySystem boolean_tree_heterogeneous_ideal() {
    std::vector<CircuitTensor> ts{
        {equal_cogate(2, {5, 6}), {1, 1}},
        {equal_gate(3, {5, 1, 2}), {1, 2, 2}},
        {equal_gate(3, {6, 3, 4}), {1, 2, 2}},
        {cap_cogate(1), {2}},
        {cap_cogate(2), {2}},
        {cap_cogate(3), {2}},
        {cap_cogate(4), {2}},
    };
    return circuit_ideal(ts, IdealMode::Heterogeneous);
}

inline PolySystem cnot1_homogeneous_ideal() {
    return gate_ideal(cnot1_gate(), IdealMode::Homogeneous);
}

inline PolySystem or_gate_heterogeneous_ideal() {
    return gate_ideal(or_gate(), IdealMode::Heterogeneous);
}

// The twelve 3-arity gates that become Pfaffian under (A x B x C) once a
// suitable third matrix C exists, and the twelve cogates that pair with
// them.
inline std::vector<Tensor> third_basis_gates() {
    auto g = [](std::initializer_list<const char*> bits) {
        return Tensor::from_bits(TensorKind::Gate, {1, 2, 3}, bits);
    };
    return {
        g({"000", "110", "111"}),
        g({"000", "001", "111"}),
        g({"000", "001", "110"}),
        g({"001", "110", "111"}),
        g({"010", "101", "011"}),
        g({"100", "101", "011"}),
        g({"100", "010", "011"}),
        g({"100", "010", "101"}),
        g({"010", "001", "110", "101", "011", "111"}),
        g({"000", "100", "001", "101", "011", "111"}),
        g({"000", "100", "010", "110", "011", "111"}),
        g({"000", "100", "010", "001", "110", "101"}),
    };
}

inline std::vector<Tensor> third_basis_cogates() {
    auto c = [](std::initializer_list<const char*> bits) {
        return Tensor::from_bits(TensorKind::Cogate, {1, 2, 3}, bits);
    };
    return {
        c({"000", "110", "111"}),
        c({"000", "001", "111"}),
        c({"000", "001", "110"}),
        c({"001", "110", "111"}),
        c({"010", "101", "011"}),
        c({"100", "101", "011"}),
        c({"100", "010", "011"}),
        c({"100", "010", "101"}),
        c({"100", "001", "110", "101", "011", "111"}),
        c({"000", "010", "001", "101", "011", "111"}),
        c({"000", "100", "010", "110", "101", "111"}),
        c({"000", "100", "010", "001", "110", "011"}),
    };
}

// The gate-list member whose cogate counterpart is NOT Pfaffian under any
// third matrix.
inline Tensor third_basis_infeasible_cogate() {
    return Tensor::from_bits(TensorKind::Cogate, {1, 2, 3},
                             {"010", "001", "110", "101", "011", "111"});
}

// Wires 1, 2 fixed to the Hadamard-variant pair; wire 3 carries the unknown
// matrix.
inline PolySystem third_basis_ideal(const Tensor& t) {
    IdealOptions opts;
    opts.fixed[1] = hadamard_basis();
    opts.fixed[2] = equal_cogate_basis();
    if (t.kind() == TensorKind::Cogate) return cogate_ideal(t, IdealMode::Heterogeneous, opts);
    return gate_ideal(t, IdealMode::Heterogeneous, opts);
}

inline PolySystem swap_gate_ideal() { return gate_ideal(swap_gate(), IdealMode::Heterogeneous); }
inline PolySystem swap_cogate_ideal() {
    return cogate_ideal(swap_cogate(), IdealMode::Heterogeneous);
}

// CNOT1-CNOT2-CNOT1 linked by EQUAL cogates, fully heterogeneous (one basis
// index per edge). Generated and exported; the feasibility run is a known
// multi-hour computation.
inline PolySystem cnot_chain_ideal() {
    std::vector<CircuitTensor> ts{
        {cnot1_gate({1, 2, 3, 4}), {1, 2, 3, 4}},
        {equal_cogate(2, {3, 5}), {3, 5}},
        {equal_cogate(2, {4, 6}), {4, 6}},
        {cnot2_gate({5, 6, 7, 8}), {5, 6, 7, 8}},
        {equal_cogate(2, {7, 9}), {7, 9}},
        {equal_cogate(2, {8, 10}), {8, 10}},
        {cnot1_gate({9, 10, 11, 12}), {9, 10, 11, 12}},
    };
    return circuit_ideal(ts, IdealMode::Heterogeneous);
}

// Fully heterogeneous ideal of the complement-invariant 4-arity gate with no
// admissible change of basis (export target; 19 generators).
inline PolySystem no_basis_gate_ideal() {
    return gate_ideal(no_basis_gate(), IdealMode::Heterogeneous);
}

}  // namespace pfk
