#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gtcent::rng {

/// splitmix64 finalizer; the mixing step behind all substream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream tags keep substreams of different estimator stages disjoint.
enum class Stream : std::uint64_t {
    Banzhaf = 0x62616e7a68616601ULL,
    BanzhafOwen = 0x627a6f74776f7374ULL,
    ShapleyBlock = 0x736861706c657921ULL,
    OwenBlock = 0x6f77656e626c6f63ULL,
    Replicate = 0x7265706c69636174ULL,
};

/// Derives a substream seed from the master seed and up to two task ids.
/// Identical (master, stream, a, b) always yields the identical stream, so
/// results do not depend on which thread runs the task.
inline std::uint64_t substream_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ static_cast<std::uint64_t>(stream));
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    return h;
}

/// A per-task random stream. Draw order is part of the determinism
/// contract: serial and parallel estimators must consume words identically.
class Substream {
public:
    explicit Substream(std::uint64_t seed) : eng_(seed) {}
    Substream(std::uint64_t master, Stream stream, std::uint64_t a, std::uint64_t b = 0)
        : eng_(substream_seed(master, stream, a, b)) {}

    std::uint64_t word() { return eng_(); }

    /// Low `nbits` bits of one word: independent fair coins per position.
    std::uint64_t mask(int nbits) {
        const std::uint64_t m = nbits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
        return word() & m;
    }

    /// Uniform integer in [0, n), bias-free by rejection. n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = word();
            if (r >= threshold) return r % n;
        }
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace gtcent::rng
