#pragma once

#include "ttground/tensor.hpp"

#include <vector>

namespace ttground {

/// Tensor train operator (matrix product operator): d cores of shape
/// [R_{k-1}, n_k, m_k, R_k] with R_0 = R_d = 1.  n_k are row modes, m_k are
/// column modes.  `symmetric` is a caller claim, not a checked property;
/// the test suites verify it on densifiable instances.
class TTMatrix {
public:
    TTMatrix() = default;

    explicit TTMatrix(std::vector<Core4> cores, bool symmetric = false)
        : cores_(std::move(cores)), symmetric_(symmetric) {
        validate();
    }

    Index site_count() const { return static_cast<Index>(cores_.size()); }

    std::vector<Index> row_modes() const {
        std::vector<Index> n(cores_.size());
        for (size_t k = 0; k < cores_.size(); ++k) n[k] = cores_[k].rows();
        return n;
    }

    std::vector<Index> col_modes() const {
        std::vector<Index> m(cores_.size());
        for (size_t k = 0; k < cores_.size(); ++k) m[k] = cores_[k].cols();
        return m;
    }

    /// Operator bond ranks R_0..R_d (R_0 = R_d = 1).
    std::vector<Index> op_ranks() const {
        std::vector<Index> r(cores_.size() + 1, 1);
        for (size_t k = 0; k < cores_.size(); ++k) r[k] = cores_[k].left();
        r[cores_.size()] = cores_.back().right();
        return r;
    }

    Index max_op_rank() const {
        Index m = 1;
        for (const auto& c : cores_) m = std::max(m, c.right());
        return m;
    }

    const Core4& core(Index k) const { return cores_.at(static_cast<size_t>(k)); }

    void set_core(Index k, Core4 c) { cores_.at(static_cast<size_t>(k)) = std::move(c); }

    bool symmetric() const { return symmetric_; }
    void set_symmetric(bool s) { symmetric_ = s; }

    void validate() const {
        if (cores_.empty()) throw std::invalid_argument("TTMatrix: empty");
        if (cores_.front().left() != 1 || cores_.back().right() != 1)
            throw std::invalid_argument("TTMatrix: boundary ranks must be 1");
        for (size_t k = 0; k + 1 < cores_.size(); ++k)
            if (cores_[k].right() != cores_[k + 1].left())
                throw std::invalid_argument("TTMatrix: bond rank mismatch");
    }

private:
    std::vector<Core4> cores_;
    bool symmetric_ = false;
};

}  // namespace ttground
