#pragma once

#include <optional>
#include <vector>

#include "pfk/basis.hpp"
#include "pfk/errors.hpp"
#include "pfk/pfaffian.hpp"
#include "pfk/skew.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

// Witness that a gate (cogate) is Pfaffian after a change of basis:
//   (A_1 x...x A_n) G = scale * sPf(matrix)          for gates,
//   (A_1^{-1} x...x A_n^{-1}) C = scale * sPf*(matrix) for cogates.
// `bases` always stores the forward matrices A_i; the dual action inverts
// them. `matrix` is labeled by the tensor's wires in wire order.
struct Certificate {
    std::vector<BasisMatrix> bases;
    Scalar scale;
    SkewMatrix matrix;
};

inline Tensor cobased_tensor(const Tensor& t, const std::vector<BasisMatrix>& bases,
                             double eps = default_eps()) {
    if (t.kind() == TensorKind::Cogate) return t.apply_inverse_basis_change(bases, eps);
    return t.apply_basis_change(bases);
}

// Coefficientwise check of Def. "Pfaffian after a change of basis". For
// cogates the subPfaffian dual is compared. Reports the largest residual if
// asked.
inline bool check_certificate(const Tensor& t, const Certificate& cert,
                              double eps = default_eps(), double* max_residual = nullptr) {
    if (static_cast<int>(cert.bases.size()) != t.arity() || cert.matrix.n() != t.arity())
        throw ArityMismatch("certificate arity does not match tensor");
    Tensor lhs = cobased_tensor(t, cert.bases, eps);
    Tensor rhs = (t.kind() == TensorKind::Cogate ? sub_pfaffian_dual(cert.matrix)
                                                 : sub_pfaffian(cert.matrix))
                     .scaled(cert.scale);
    double worst = 0.0;
    bool ok = true;
    for (uint32_t m = 0; m <= t.full_mask(); ++m) {
        Scalar a = lhs.coefficient(m);
        Scalar b = rhs.coefficient(m);
        double resid = std::abs(a.approx() - b.approx());
        worst = std::max(worst, resid);
        if (!approx_equal(a, b, eps)) ok = false;
        if (t.full_mask() == 0) break;
    }
    if (max_residual) *max_residual = worst;
    return ok;
}

// Deterministic decision procedure for "is t Pfaffian under these bases":
// the scale is forced by the empty-set (full-set, for cogates) coefficient,
// the matrix is forced by the size-two (complement-of-size-two) coefficients,
// and what remains is to verify the parity and consistency of every other
// subset. Returns the certificate or nullopt; never guesses.
inline std::optional<Certificate> find_certificate_given_bases(
    const Tensor& t, const std::vector<BasisMatrix>& bases, double eps = default_eps()) {
    if (static_cast<int>(bases.size()) != t.arity())
        throw ArityMismatch("need one basis per wire");
    for (const BasisMatrix& b : bases)
        if (b.singular(eps)) throw SingularBasis("basis matrix is singular");

    bool dual = t.kind() == TensorKind::Cogate;
    Tensor tp = cobased_tensor(t, bases, eps);
    int n = t.arity();
    uint32_t full = t.full_mask();

    // For cogates work with D_I := C'_{I^C}; then both kinds read the same.
    auto coeff = [&](uint32_t m) { return dual ? tp.coefficient(full & ~m) : tp.coefficient(m); };

    Scalar scale = coeff(0);
    if (is_zero(scale, eps)) return std::nullopt;

    // parity: odd subsets must vanish (relative to the overall magnitude)
    for (uint32_t m = 0; m <= full && n > 0; ++m) {
        if (__builtin_popcount(m) % 2 == 1 && !is_zero(coeff(m) / scale, eps))
            return std::nullopt;
    }

    // matrix forced by pair coefficients
    std::vector<Scalar> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            upper.push_back(coeff((1u << i) | (1u << j)) / scale);
    SkewMatrix xi = SkewMatrix::from_upper(t.wires(), upper);

    // consistency of every even subset of size >= 4
    if (n >= 4) {
        auto pf = detail::subset_pfaffians(xi);
        for (uint32_t m = 0; m <= full; ++m) {
            int k = __builtin_popcount(m);
            if (k < 4 || k % 2) continue;
            if (!approx_equal(coeff(m) / scale, pf[m], eps)) return std::nullopt;
        }
    }
    return Certificate{bases, scale, xi};
}

}  // namespace pfk
