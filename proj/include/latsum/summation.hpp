#ifndef LATSUM_SUMMATION_HPP
#define LATSUM_SUMMATION_HPP

#include <cmath>
#include <cstdint>
#include <functional>

namespace latsum
{

/// Neumaier's variant of Kahan summation.
template <typename T>
class NeumaierSum
{
public:
    void add(T x) noexcept
    {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    T value() const noexcept { return sum_ + comp_; }

private:
    T sum_ = 0;
    T comp_ = 0;
};

/// Worker count from LATTICE_SUM_THREADS, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Each index is
/// handled exactly once; callers store per-index results and reduce them in
/// index order, so results do not depend on the thread count.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

} // namespace latsum

#endif
