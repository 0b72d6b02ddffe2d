#pragma once

#include "ttground/tensor.hpp"

#include <optional>
#include <vector>

namespace ttground {

/// Tensor train vector: d cores of shape [r_{k-1}, n_k, r_k] with
/// r_0 = r_d = 1.  The optional orthogonality center c records the invariant
/// "cores < c are left-orthonormal, cores > c are right-orthonormal"; it is
/// maintained by the operations that establish it and dropped on raw writes.
class TTVector {
public:
    TTVector() = default;

    explicit TTVector(std::vector<Core3> cores,
                      std::optional<Index> center = std::nullopt)
        : cores_(std::move(cores)), center_(center) {
        validate();
    }

    static TTVector zeros(const std::vector<Index>& mode_sizes,
                          const std::vector<Index>& ranks) {
        if (mode_sizes.empty())
            throw std::invalid_argument("TTVector: no mode sizes");
        if (ranks.size() != mode_sizes.size() + 1)
            throw std::invalid_argument("TTVector: ranks must have d+1 entries");
        std::vector<Core3> cores;
        cores.reserve(mode_sizes.size());
        for (size_t k = 0; k < mode_sizes.size(); ++k)
            cores.emplace_back(ranks[k], mode_sizes[k], ranks[k + 1]);
        return TTVector(std::move(cores));
    }

    Index site_count() const { return static_cast<Index>(cores_.size()); }

    std::vector<Index> mode_sizes() const {
        std::vector<Index> n(cores_.size());
        for (size_t k = 0; k < cores_.size(); ++k) n[k] = cores_[k].mode();
        return n;
    }

    /// Bond ranks r_0..r_d (r_0 = r_d = 1).
    std::vector<Index> ranks() const {
        std::vector<Index> r(cores_.size() + 1, 1);
        for (size_t k = 0; k < cores_.size(); ++k) r[k] = cores_[k].left();
        r[cores_.size()] = cores_.back().right();
        return r;
    }

    Index rank(Index bond) const {
        if (bond < 0 || bond > site_count())
            throw std::out_of_range("TTVector::rank: bond out of range");
        if (bond == site_count()) return cores_.back().right();
        return cores_[bond].left();
    }

    Index max_rank() const {
        Index m = 1;
        for (const auto& c : cores_) m = std::max(m, c.right());
        return m;
    }

    const Core3& core(Index k) const { return cores_.at(static_cast<size_t>(k)); }

    /// Replaces a core; the orthogonality claim no longer holds afterwards.
    void set_core(Index k, Core3 c) {
        if (c.mode() != cores_.at(static_cast<size_t>(k)).mode())
            throw std::invalid_argument("TTVector::set_core: mode size mismatch");
        cores_[static_cast<size_t>(k)] = std::move(c);
        center_.reset();
    }

    std::optional<Index> ortho_center() const { return center_; }

    void set_ortho_center(std::optional<Index> c) {
        if (c && (*c < 0 || *c >= site_count()))
            throw std::out_of_range("TTVector: ortho center out of range");
        center_ = c;
    }

    void validate() const {
        if (cores_.empty()) throw std::invalid_argument("TTVector: empty");
        if (cores_.front().left() != 1 || cores_.back().right() != 1)
            throw std::invalid_argument("TTVector: boundary ranks must be 1");
        for (size_t k = 0; k + 1 < cores_.size(); ++k)
            if (cores_[k].right() != cores_[k + 1].left())
                throw std::invalid_argument("TTVector: bond rank mismatch");
    }

private:
    std::vector<Core3> cores_;
    std::optional<Index> center_;
};

}  // namespace ttground
