#pragma once

#include <array>
#include <cstdint>

namespace excir {

// Pairwise (tree) summation in streaming form: a binary counter of partial
// sums where level k holds the sum of a block of 2^k consecutive terms.
// Error grows O(log n) instead of O(n), with O(log n) state and a
// deterministic, input-order-defined tree.
class pairwise_sum {
public:
    void add(double x) {
        std::uint64_t c = count_;
        std::size_t k = 0;
        while (c & 1u) {
            x += levels_[k];
            c >>= 1;
            ++k;
        }
        levels_[k] = x;
        ++count_;
    }

    double value() const {
        double s = 0.0;
        std::uint64_t c = count_;
        for (std::size_t k = 0; c != 0; ++k, c >>= 1)
            if (c & 1u) s += levels_[k];
        return s;
    }

    std::uint64_t count() const { return count_; }

private:
    std::array<double, 64> levels_{};
    std::uint64_t count_ = 0;
};

}  // namespace excir
