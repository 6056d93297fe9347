#pragma once

#include <string>
#include <vector>

#include "pfk/certificate.hpp"
#include "pfk/expr.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

// ---- the recurring tensors ------------------------------------------------

inline Tensor or_gate(std::vector<EdgeId> wires = {1, 2}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"10", "01", "11"});
}

inline Tensor equal_gate(int n, std::vector<EdgeId> wires = {}) {
    if (wires.empty())
        for (int i = 1; i <= n; ++i) wires.push_back(i);
    Tensor t = Tensor::gate(std::move(wires));
    t.set(0u, Scalar(1));
    t.set(t.full_mask(), Scalar(1));
    return t;
}

inline Tensor equal_cogate(int n, std::vector<EdgeId> wires = {}) {
    if (wires.empty())
        for (int i = 1; i <= n; ++i) wires.push_back(i);
    Tensor t = Tensor::cogate(std::move(wires));
    t.set(0u, Scalar(1));
    t.set(t.full_mask(), Scalar(1));
    return t;
}

inline Tensor not_gate(std::vector<EdgeId> wires = {1, 2}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"10", "01"});
}
inline Tensor not_cogate(std::vector<EdgeId> wires = {1, 2}) {
    return Tensor::from_bits(TensorKind::Cogate, std::move(wires), {"10", "01"});
}

// |0> + |1> and <0| + <1|
inline Tensor cap_gate(EdgeId wire) {
    return Tensor::from_bits(TensorKind::Gate, {wire}, {"0", "1"});
}
inline Tensor cap_cogate(EdgeId wire) {
    return Tensor::from_bits(TensorKind::Cogate, {wire}, {"0", "1"});
}

inline Tensor cnot1_gate(std::vector<EdgeId> wires = {1, 2, 3, 4}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"0000", "0110", "1011", "1101"});
}
inline Tensor cnot2_gate(std::vector<EdgeId> wires = {1, 2, 3, 4}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"0000", "0111", "1001", "1110"});
}
// the partial chain CNOT1-CNOT2 as a single 4-arity tensor
inline Tensor cnot12_gate(std::vector<EdgeId> wires = {1, 2, 3, 4}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"0000", "1010", "1101", "0111"});
}

inline Tensor swap_gate(std::vector<EdgeId> wires = {1, 2, 3, 4}) {
    return Tensor::from_bits(TensorKind::Gate, std::move(wires), {"0000", "0101", "1010", "1111"});
}
inline Tensor swap_cogate(std::vector<EdgeId> wires = {1, 2, 3, 4}) {
    return Tensor::from_bits(TensorKind::Cogate, std::move(wires), {"0000", "0101", "1010", "1111"});
}

// the two 3-arity bridge cogates of the partial-swap construction
inline Tensor bridge_top_cogate(std::vector<EdgeId> wires = {1, 2, 3}) {
    return Tensor::from_bits(TensorKind::Cogate, std::move(wires), {"100", "010", "001", "111"});
}
inline Tensor bridge_bottom_cogate(std::vector<EdgeId> wires = {1, 2, 3}) {
    return Tensor::from_bits(TensorKind::Cogate, std::move(wires), {"000", "010", "101"});
}

// the 8-term complement-invariant 4-arity gate that is Pfaffian under no
// change of basis at all
inline Tensor no_basis_gate() {
    return Tensor::from_bits(TensorKind::Gate, {1, 2, 3, 4},
                             {"0000", "1000", "0100", "0010", "0111", "1011", "1101", "1111"});
}

// ---- the named change-of-basis matrices -------------------------------------

inline BasisMatrix basis_from(const char* a00, const char* a01, const char* a10,
                              const char* a11) {
    return BasisMatrix(parse_scalar(a00), parse_scalar(a01), parse_scalar(a10), parse_scalar(a11));
}

// quartic-radical basis of the OR/EQUAL pair
inline const BasisMatrix& or_basis() {
    static BasisMatrix b = basis_from("(5*root4(5) - sqrt(5)*root4(5))/10", "1/root4(5)",
                                      "(-5*root4(5) - sqrt(5)*root4(5))/10", "1/root4(5)");
    return b;
}

// Hadamard-variant pair used by the EQUAL representations and the census
inline const BasisMatrix& hadamard_basis() {  // A
    static BasisMatrix b = basis_from("1", "1", "1", "-1");
    return b;
}
inline const BasisMatrix& equal_cogate_basis() {  // B
    static BasisMatrix b = basis_from("1", "-1", "1/2", "1/2");
    return b;
}

struct Cnot1Bases {
    BasisMatrix a, b, c, d;
};
inline const Cnot1Bases& cnot1_bases() {
    static Cnot1Bases m{
        basis_from("1", "1", "-1/2", "1/2"),
        basis_from("0", "1", "-1", "0"),
        basis_from("1/2", "-i/2", "-i", "1"),
        basis_from("i", "1", "-1/2", "-i/2"),
    };
    return m;
}

// the ten matrices of the CNOT12-CNOT1 partial-swap certificates
struct PartialSwapBases {
    BasisMatrix a, b, c, d, e, f, g, h, i, j;
};
inline const PartialSwapBases& partial_swap_bases() {
    static PartialSwapBases m{
        basis_from("1", "1", "-1/2", "1/2"),
        basis_from("0", "1", "-1", "0"),
        basis_from("1", "1", "-1/2", "1/2"),
        basis_from("0", "1/2", "-2", "0"),
        basis_from("-2", "2*i", "i/4", "-1/4"),
        basis_from("(-1+i)/2", "-1/2", "1-i", "-i"),
        basis_from("-i/2", "-1/2", "1", "i"),
        basis_from("1", "-i", "-i/2", "1/2"),
        basis_from("i", "0", "0", "-i"),
        basis_from("1", "-1", "1/2", "1/2"),
    };
    return m;
}

// the six matrices of the EQUAL_4 decomposition example
struct DecompositionBases {
    BasisMatrix a, b, c, d, e, f;
};
inline const DecompositionBases& decomposition_bases() {
    static DecompositionBases m{
        basis_from("i*root4(8)/2", "i*root4(8)/2", "i*root4(2)/2", "-i*root4(2)/2"),
        basis_from("-root4(8)/2", "root4(8)/2", "-root4(2)/2", "-root4(2)/2"),
        basis_from("-root4(8)/2", "-i*root4(8)/2", "-i*root4(2)/2", "-root4(2)/2"),
        basis_from("root4(8)/2", "-i*root4(8)/2", "-i*root4(2)/2", "root4(2)/2"),
        basis_from("root4(8)/2", "-i*root4(8)/2", "-i*root4(2)/2", "root4(2)/2"),
        basis_from("-root4(8)/2", "-i*root4(8)/2", "-i*root4(2)/2", "-root4(2)/2"),
    };
    return m;
}

// ---- the transcribed certificates -------------------------------------------

// All-ones strict upper triangle (n-arity EQUAL gate under the Hadamard
// variant) and the 1/4 counterpart for the cogate.
inline SkewMatrix ones_upper(std::vector<EdgeId> labels) {
    size_t n = labels.size();
    return SkewMatrix::from_upper(std::move(labels),
                                  std::vector<Scalar>(n * (n - 1) / 2, Scalar(1)));
}
inline SkewMatrix quarter_upper(std::vector<EdgeId> labels) {
    size_t n = labels.size();
    return SkewMatrix::from_upper(std::move(labels),
                                  std::vector<Scalar>(n * (n - 1) / 2, Scalar(mpq_class(1, 4))));
}

inline SkewMatrix skew2(EdgeId u, EdgeId v, const Scalar& entry) {
    return SkewMatrix::from_upper({u, v}, {entry});
}

struct RegistryEntry {
    std::string name;
    Tensor tensor;
    Certificate cert;
};

// Every Pfaffian certificate displayed in the source material, transcribed:
// the OR/EQUAL pair under the quartic basis, the n-arity EQUAL family, the
// EQUAL/NOT bridge pairs, the five Boolean-tree certificates, CNOT1, the four
// partial-swap certificates and the three decomposition certificates.
inline std::vector<RegistryEntry> paper_certificate_registry() {
    std::vector<RegistryEntry> reg;
    auto add = [&](const std::string& name, const Tensor& t, std::vector<BasisMatrix> bases,
                   const Scalar& scale, SkewMatrix xi) {
        reg.push_back(RegistryEntry{name, t, Certificate{std::move(bases), scale, std::move(xi)}});
    };

    const BasisMatrix& A25 = or_basis();
    add("or-quartic-gate", or_gate(), {A25, A25}, Scalar(1), skew2(1, 2, Scalar(-1)));
    add("equal2-quartic-cogate", equal_cogate(2), {A25, A25}, parse_scalar("sqrt(5)/2 - 1/2"),
        skew2(1, 2, parse_scalar("sqrt(5)/2 + 3/2")));

    const BasisMatrix& A = hadamard_basis();
    const BasisMatrix& B = equal_cogate_basis();
    for (int n = 2; n <= 8; ++n) {
        std::vector<EdgeId> wires;
        for (int i = 1; i <= n; ++i) wires.push_back(i);
        add("equal-gate-hadamard-" + std::to_string(n), equal_gate(n),
            std::vector<BasisMatrix>(n, A), Scalar(2), ones_upper(wires));
        add("equal-cogate-halfsum-" + std::to_string(n), equal_cogate(n),
            std::vector<BasisMatrix>(n, B), Scalar(2), quarter_upper(wires));
    }

    // EQUAL and NOT, Pfaffian under both bases (matrices forced by the pair
    // coefficients; verified by check_certificate).
    add("equal2-gate-basisA", equal_gate(2), {A, A}, Scalar(2), skew2(1, 2, Scalar(1)));
    add("equal2-gate-basisB", equal_gate(2), {B, B}, Scalar(2),
        skew2(1, 2, Scalar(mpq_class(1, 4))));
    add("not2-gate-basisA", not_gate(), {A, A}, Scalar(2), skew2(1, 2, Scalar(-1)));
    add("not2-gate-basisB", not_gate(), {B, B}, Scalar(-2),
        skew2(1, 2, Scalar(mpq_class(-1, 4))));
    add("equal2-cogate-basisA", equal_cogate(2), {A, A}, Scalar(mpq_class(1, 2)),
        skew2(1, 2, Scalar(1)));
    add("equal2-cogate-basisB", equal_cogate(2), {B, B}, Scalar(2),
        skew2(1, 2, Scalar(mpq_class(1, 4))));
    add("not2-cogate-basisA", not_cogate(), {A, A}, Scalar(mpq_class(-1, 2)),
        skew2(1, 2, Scalar(-1)));
    add("not2-cogate-basisB", not_cogate(), {B, B}, Scalar(2),
        skew2(1, 2, Scalar(mpq_class(-1, 4))));

    // the five Boolean-tree certificates
    add("tree-equal2-cogate", equal_cogate(2), {A, A}, Scalar(mpq_class(1, 2)),
        skew2(1, 2, Scalar(1)));
    add("tree-equal3-gate", equal_gate(3), {A, B, B}, Scalar(2),
        SkewMatrix::from_upper({1, 2, 3}, {Scalar(mpq_class(1, 2)), Scalar(mpq_class(1, 2)),
                                           Scalar(mpq_class(1, 4))}));
    add("tree-equal3-cogate", equal_cogate(3), {B, A, A}, Scalar(mpq_class(1, 2)),
        SkewMatrix::from_upper({1, 2, 3},
                               {Scalar(mpq_class(1, 2)), Scalar(mpq_class(1, 2)), Scalar(1)}));
    add("tree-cap-cogate", cap_cogate(1), {B}, Scalar(2), SkewMatrix::zero({1}));
    add("tree-cap-gate", cap_gate(1), {A}, Scalar(2), SkewMatrix::zero({1}));

    {
        const Cnot1Bases& m = cnot1_bases();
        const Scalar I = Scalar::i();
        const Scalar half(mpq_class(1, 2));
        const Scalar quarter(mpq_class(1, 4));
        add("cnot1-het-gate", cnot1_gate(), {m.a, m.b, m.c, m.d}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3, 4}, {I * half, -I, -I * quarter, Scalar(-2), half,
                                                  Scalar(-1)}));
    }

    {
        const PartialSwapBases& m = partial_swap_bases();
        const Scalar I = Scalar::i();
        const Scalar half(mpq_class(1, 2));
        const Scalar quarter(mpq_class(1, 4));
        add("pswap-cnot12-gate", cnot12_gate(), {m.a, m.b, m.c, m.d}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3, 4},
                                   {Scalar(0), -quarter, Scalar(0), Scalar(0), Scalar(4),
                                    Scalar(0)}));
        add("pswap-cnot1-gate", cnot1_gate(), {m.g, m.h, m.i, m.j}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3, 4},
                                   {Scalar(1), Scalar(-2), I, -half, -I * quarter, I * half}));
        add("pswap-bridge-top-cogate", bridge_top_cogate(), {m.d, m.e, m.g}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3}, {-half, Scalar(8), -quarter}));
        add("pswap-bridge-bottom-cogate", bridge_bottom_cogate(), {m.c, m.f, m.h}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3}, {-I, I * quarter, Scalar(1)}));
    }

    {
        const DecompositionBases& m = decomposition_bases();
        const Scalar half(mpq_class(1, 2));
        add("decomp-equal4-gate", equal_gate(4), {m.c, m.d, m.e, m.f}, Scalar(1),
            SkewMatrix::from_upper({1, 2, 3, 4}, {half, half, -half, -half, half, half}));
        add("decomp-equal3-gate", equal_gate(3, {5, 1, 2}), {m.a, m.b, m.b},
            parse_scalar("i*root4(2)"),
            SkewMatrix::from_upper({5, 1, 2}, {half, half, half}));
        add("decomp-equal2-cogate", equal_cogate(2, {5, 6}), {m.a, m.a}, parse_scalar("-sqrt(2)"),
            skew2(5, 6, half));
    }

    return reg;
}

}  // namespace pfk
