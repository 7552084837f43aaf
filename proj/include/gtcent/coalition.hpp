#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gtcent {

/// A subset of node indices 0..n-1 packed into one machine word (n <= 64).
class Coalition {
public:
    constexpr Coalition() = default;
    constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

    static constexpr Coalition empty() { return Coalition{}; }
    static constexpr Coalition single(int i) { return Coalition{std::uint64_t{1} << i}; }
    static constexpr Coalition full(int n) {
        return Coalition{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }
    static Coalition of(std::initializer_list<int> members) {
        std::uint64_t b = 0;
        for (int i : members) b |= std::uint64_t{1} << i;
        return Coalition{b};
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool is_empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr bool is_subset_of(Coalition o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr Coalition with(int i) const { return Coalition{bits_ | (std::uint64_t{1} << i)}; }
    constexpr Coalition without(int i) const { return Coalition{bits_ & ~(std::uint64_t{1} << i)}; }

    /// Smallest member index; undefined for the empty coalition.
    constexpr int lowest() const { return std::countr_zero(bits_); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition{a.bits_ | b.bits_}; }
    friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition{a.bits_ & b.bits_}; }
    friend constexpr Coalition operator-(Coalition a, Coalition b) { return Coalition{a.bits_ & ~b.bits_}; }
    friend constexpr bool operator==(Coalition a, Coalition b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(Coalition a, Coalition b) { return a.bits_ != b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

} // namespace gtcent
