#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/errors.hpp"
#include "pfk/scalar.hpp"
#include "pfk/tensor.hpp"

namespace pfk {

// Skew-symmetric matrix whose rows/columns are labeled by edge identifiers.
class SkewMatrix {
public:
    SkewMatrix() = default;

    SkewMatrix(std::vector<EdgeId> labels, std::vector<Scalar> entries,
               double eps = default_eps())
        : labels_(std::move(labels)), m_(std::move(entries)) {
        size_t n = labels_.size();
        if (m_.size() != n * n) throw Error("entry count does not match label count");
        std::set<EdgeId> seen;
        for (EdgeId e : labels_)
            if (!seen.insert(e).second)
                throw LabelCollision("duplicate label " + std::to_string(e));
        for (size_t i = 0; i < n; ++i) {
            if (!is_zero(m_[i * n + i], eps))
                throw NotSkewSymmetric("nonzero diagonal entry");
            for (size_t j = i + 1; j < n; ++j)
                if (!approx_equal(m_[i * n + j], -m_[j * n + i], eps))
                    throw NotSkewSymmetric("m[i][j] != -m[j][i]");
        }
    }

    // Builds from the strict upper triangle, row-major: {m12, m13, ..., m23, ...}.
    static SkewMatrix from_upper(std::vector<EdgeId> labels, const std::vector<Scalar>& upper) {
        size_t n = labels.size();
        if (upper.size() != n * (n - 1) / 2) throw Error("upper triangle size mismatch");
        std::vector<Scalar> m(n * n, Scalar(0));
        size_t k = 0;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                m[i * n + j] = upper[k];
                m[j * n + i] = -upper[k];
                ++k;
            }
        }
        return SkewMatrix(std::move(labels), std::move(m));
    }

    static SkewMatrix zero(std::vector<EdgeId> labels) {
        size_t n = labels.size();
        return SkewMatrix(std::move(labels), std::vector<Scalar>(n * n, Scalar(0)));
    }

    int n() const { return static_cast<int>(labels_.size()); }
    const std::vector<EdgeId>& labels() const { return labels_; }

    const Scalar& at(int i, int j) const { return m_[static_cast<size_t>(i) * n() + j]; }

    int position_of(EdgeId e) const {
        for (int i = 0; i < n(); ++i)
            if (labels_[i] == e) return i;
        return -1;
    }

    Scalar at_labels(EdgeId u, EdgeId v) const {
        int i = position_of(u), j = position_of(v);
        if (i < 0 || j < 0) throw InvalidSubset("label not present");
        return at(i, j);
    }

    bool all_exact() const {
        for (const Scalar& s : m_)
            if (!s.exact()) return false;
        return true;
    }

    // Principal submatrix on the given position bitmask, order preserved.
    SkewMatrix restrict_mask(uint32_t mask) const {
        std::vector<int> pos;
        for (int i = 0; i < n(); ++i)
            if (mask & (1u << i)) pos.push_back(i);
        std::vector<EdgeId> labels;
        std::vector<Scalar> m(pos.size() * pos.size(), Scalar(0));
        for (size_t a = 0; a < pos.size(); ++a) {
            labels.push_back(labels_[pos[a]]);
            for (size_t b = 0; b < pos.size(); ++b) m[a * pos.size() + b] = at(pos[a], pos[b]);
        }
        return SkewMatrix(std::move(labels), std::move(m));
    }

    std::string str() const {
        std::ostringstream os;
        os << "labels:";
        for (EdgeId e : labels_) os << " " << e;
        os << "\n";
        for (int i = 0; i < n(); ++i) {
            os << "[";
            for (int j = 0; j < n(); ++j) os << (j ? "," : "") << at(i, j).str();
            os << "]\n";
        }
        return os.str();
    }

    friend SkewMatrix operator+(const SkewMatrix& a, const SkewMatrix& b) {
        if (a.labels_ != b.labels_) throw OrderMismatch("skew matrix sum needs identical labels");
        std::vector<Scalar> m(a.m_.size(), Scalar(0));
        for (size_t k = 0; k < m.size(); ++k) m[k] = a.m_[k] + b.m_[k];
        return SkewMatrix(a.labels_, std::move(m));
    }

private:
    std::vector<EdgeId> labels_;
    std::vector<Scalar> m_;  // n*n row-major
};

// An order on edge labels, no repeats.
class EdgeOrder {
public:
    EdgeOrder() = default;
    explicit EdgeOrder(std::vector<EdgeId> seq) : seq_(std::move(seq)) {
        std::set<EdgeId> seen;
        for (EdgeId e : seq_)
            if (!seen.insert(e).second)
                throw LabelCollision("repeated edge " + std::to_string(e) + " in order");
    }
    const std::vector<EdgeId>& seq() const { return seq_; }
    size_t size() const { return seq_.size(); }
    int rank_of(EdgeId e) const {
        for (size_t i = 0; i < seq_.size(); ++i)
            if (seq_[i] == e) return static_cast<int>(i);
        return -1;
    }
    bool contains(EdgeId e) const { return rank_of(e) >= 0; }

private:
    std::vector<EdgeId> seq_;
};

// Labeled ordered direct sum: rows/columns of the result are the union of
// the block labels ordered by sigma; cross-block entries are zero.
inline SkewMatrix direct_sum_ordered(const std::vector<SkewMatrix>& blocks,
                                     const EdgeOrder& sigma) {
    std::set<EdgeId> seen;
    for (const SkewMatrix& b : blocks) {
        for (EdgeId e : b.labels()) {
            if (!seen.insert(e).second)
                throw LabelCollision("label " + std::to_string(e) + " appears in two blocks");
            if (!sigma.contains(e))
                throw OrderMismatch("label " + std::to_string(e) + " missing from the edge order");
        }
    }
    std::vector<EdgeId> labels;
    for (EdgeId e : sigma.seq())
        if (seen.count(e)) labels.push_back(e);

    size_t n = labels.size();
    std::vector<Scalar> m(n * n, Scalar(0));
    auto pos = [&](EdgeId e) {
        for (size_t i = 0; i < n; ++i)
            if (labels[i] == e) return i;
        return n;
    };
    for (const SkewMatrix& b : blocks) {
        for (int i = 0; i < b.n(); ++i) {
            size_t pi = pos(b.labels()[i]);
            for (int j = 0; j < b.n(); ++j) {
                size_t pj = pos(b.labels()[j]);
                m[pi * n + pj] = b.at(i, j);
            }
        }
    }
    return SkewMatrix(std::move(labels), std::move(m));
}

// Checkerboard sign flip on positions: entry (i,j), 1-based, is multiplied by
// (-1)^{i+j+1}; equivalently conjugation by diag(+1,-1,+1,...) and negation.
inline SkewMatrix sign_flip(const SkewMatrix& m) {
    int n = m.n();
    std::vector<Scalar> out(static_cast<size_t>(n) * n, Scalar(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // 1-based exponent (i+1)+(j+1)+1 is odd exactly when i+j is even.
            bool flip = ((i + j) % 2) == 0;
            Scalar v = m.at(i, j);
            out[static_cast<size_t>(i) * n + j] = flip ? -v : v;
        }
    }
    return SkewMatrix(m.labels(), std::move(out));
}

}  // namespace pfk
