#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each
// (key, counter) pair maps to an independent block of four 32-bit words, so
// draws can be addressed by position instead of by sequence.

#include <array>
#include <cstdint>

namespace lgas {

class Philox4x32 {
public:
  using Block = std::array<std::uint32_t, 4>;

  explicit constexpr Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] constexpr Block operator()(Block ctr) const {
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

  /// Block addressed by (a, b, c); `b` and `c` are truncated to 32 bits.
  [[nodiscard]] constexpr Block at(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return (*this)(Block{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)});
  }

  /// Uniform double in [0, 1) from one word.
  static constexpr double to_unit(std::uint32_t w) { return w * 0x1p-32; }

  /// Integer in [0, bound) by multiply-shift; bias is at most bound / 2^32.
  static constexpr std::uint32_t to_range(std::uint32_t w, std::uint32_t bound) {
    return static_cast<std::uint32_t>((std::uint64_t{w} * bound) >> 32);
  }

private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

  static constexpr Block single_round(const Block& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }

  std::array<std::uint32_t, 2> key_;
};

}  // namespace lgas
