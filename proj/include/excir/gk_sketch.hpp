#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "excir/errors.hpp"

namespace excir {

// Greenwald-Khanna streaming quantile summary with deterministic rank error
// bound eps: a query for rank alpha*n returns a value whose true rank is
// within eps*n. State is an ordered list of (value, g, delta) tuples where
// g is the minimum rank gap to the previous tuple and delta the extra rank
// uncertainty; rmin(i) = sum g_0..g_i and rmax(i) = rmin(i) + delta_i.
//
// Incoming values are staged in a small buffer and folded into the summary
// (sort, linear merge, right-to-left compression) every ceil(1/(2*eps))
// insertions, so a single value costs amortized O(log(summary size)).
// Interior tuples keep g + delta <= floor(2*eps*n) + 1.
class gk_sketch {
public:
    struct entry {
        double value;
        std::uint64_t g;
        std::uint64_t delta;
    };

    explicit gk_sketch(double epsilon) : eps_(epsilon) {
        if (!(epsilon > 0.0) || !(epsilon < 0.5))
            raise(errc::invalid_input, "sketch epsilon must lie in (0, 0.5)");
        period_ = static_cast<std::size_t>(std::ceil(1.0 / (2.0 * eps_)));
        buffer_.reserve(period_);
    }

    void insert(double v) {
        if (!std::isfinite(v)) raise(errc::invalid_input, "sketch insert of non-finite value");
        buffer_.push_back(v);
        if (buffer_.size() >= period_) {
            flush();
            compress();
        }
    }

    std::uint64_t count() const { return count_ + buffer_.size(); }
    double epsilon() const { return eps_; }

    double quantile(double alpha) const {
        flush();
        if (count_ == 0) raise(errc::empty_sketch, "quantile query on empty sketch");
        alpha = std::clamp(alpha, 0.0, 1.0);
        const double n = static_cast<double>(count_);
        if (alpha <= eps_) return tuples_.front().value;
        if (alpha >= 1.0 - eps_) return tuples_.back().value;

        const auto target = static_cast<std::uint64_t>(std::ceil(alpha * n));
        const auto slack = static_cast<std::uint64_t>(eps_ * n);
        std::uint64_t rmin = 0;
        double best_value = tuples_.back().value;
        double best_gap = std::numeric_limits<double>::infinity();
        for (const entry& t : tuples_) {
            rmin += t.g;
            const std::uint64_t rmax = rmin + t.delta;
            if (target <= rmin + slack && rmax <= target + slack) return t.value;
            const double mid = 0.5 * (static_cast<double>(rmin) + static_cast<double>(rmax));
            const double gap = std::abs(mid - static_cast<double>(target));
            if (gap < best_gap) {
                best_gap = gap;
                best_value = t.value;
            }
        }
        return best_value;  // fallback; not reached while the invariant holds
    }

    double midmean() const { return 0.5 * (quantile(0.25) + quantile(0.75)); }

    std::size_t tuple_count() const {
        flush();
        return tuples_.size();
    }

    std::vector<entry> tuples() const {
        flush();
        return tuples_;
    }

private:
    // Folds the staged buffer into the summary in one sorted merge. New
    // interior tuples get delta = floor(2*eps*n) with n the running count.
    void flush() const {
        if (buffer_.empty()) return;
        std::sort(buffer_.begin(), buffer_.end());
        std::vector<entry> merged;
        merged.reserve(tuples_.size() + buffer_.size());
        std::size_t ti = 0;
        std::uint64_t running = count_;
        for (double v : buffer_) {
            while (ti < tuples_.size() && tuples_[ti].value <= v) merged.push_back(tuples_[ti++]);
            ++running;
            const bool at_edge = merged.empty() || ti == tuples_.size();
            const auto delta =
                at_edge ? 0ull
                        : static_cast<std::uint64_t>(2.0 * eps_ * static_cast<double>(running));
            merged.push_back(entry{v, 1, delta});
        }
        while (ti < tuples_.size()) merged.push_back(tuples_[ti++]);
        tuples_ = std::move(merged);
        count_ = running;
        buffer_.clear();
    }

    // Merges neighbors right-to-left while g_i + g_{i+1} + delta_{i+1} stays
    // within floor(2*eps*n). First and last tuples are never removed.
    void compress() const {
        if (tuples_.size() < 3) return;
        const auto threshold =
            static_cast<std::uint64_t>(2.0 * eps_ * static_cast<double>(count_));
        std::vector<entry> reversed;
        reversed.reserve(tuples_.size());
        entry head = tuples_.back();
        for (std::size_t i = tuples_.size() - 1; i-- > 1;) {
            const entry& cur = tuples_[i];
            if (cur.g + head.g + head.delta <= threshold) {
                head.g += cur.g;
            } else {
                reversed.push_back(head);
                head = cur;
            }
        }
        reversed.push_back(head);
        reversed.push_back(tuples_.front());
        std::reverse(reversed.begin(), reversed.end());
        tuples_ = std::move(reversed);
    }

    double eps_;
    std::size_t period_;
    mutable std::vector<entry> tuples_;
    mutable std::vector<double> buffer_;
    mutable std::uint64_t count_ = 0;
};

}  // namespace excir
