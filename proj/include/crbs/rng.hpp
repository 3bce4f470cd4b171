#ifndef CRBS_RNG_HPP
#define CRBS_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace crbs {

/**
 * Seeded generator with platform-independent draws. The mt19937_64 stream
 * is fixed by the standard; the std distributions are not, so bounded draws
 * and shuffles are done here.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % bound;
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// First k items of a uniform random permutation of items.
    template <class T>
    void partial_shuffle(std::vector<T>& items, std::size_t k) {
        for (std::size_t i = 0; i < k && i + 1 < items.size(); ++i) {
            std::swap(items[i], items[i + below(items.size() - i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace crbs

#endif
