#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sigwalk {

/// Philox4x32-10 (Salmon et al.), counter-based. The 64-bit seed is the key;
/// the stream index occupies the upper half of the counter, so streams with
/// different indices never overlap.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    static constexpr const char* name = "philox4x32-10";
    static constexpr int version = 1;

    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (used_ == 4) {
            block_ = generate({static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32), stream_[0],
                               stream_[1]},
                              key_);
            ++index_;
            used_ = 0;
        }
        return block_[used_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        std::uint64_t hi = (*this)() >> 5;
        std::uint64_t lo = (*this)() >> 6;
        return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    }

    using Block = std::array<std::uint32_t, 4>;

    static Block generate(Block counter, std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53} * counter[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57} * counter[2];
            counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0], static_cast<std::uint32_t>(p1),
                       static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9;
            key[1] += 0xBB67AE85;
        }
        return counter;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> stream_;
    std::uint64_t index_ = 0;
    Block block_{};
    int used_ = 4;
};

}  // namespace sigwalk
