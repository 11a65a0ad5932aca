#pragma once

#include <cstdint>
#include <cstddef>

namespace fiberlab {

/// Counter-based generator (Philox-4x32-10). A stream is addressed by
/// (seed, stream id); draws are addressed by a 64-bit counter. Streams are
/// independent of evaluation order, so parallel path workers reproduce the
/// same ensemble bit-for-bit regardless of scheduling.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : counter_(0) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    stream_[0] = static_cast<std::uint32_t>(stream);
    stream_[1] = static_cast<std::uint32_t>(stream >> 32);
    buf_pos_ = 4;
  }

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) {
      fill(counter_++);
      buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
  }

  /// Uniform in (0,1), never returning the endpoints.
  double next_uniform() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    const std::uint64_t bits = (hi << 21) ^ (lo >> 11 << 10) ^ (lo & 0x3ff);  // 53 bits, deterministic mix
    const double u = (static_cast<double>(bits & ((1ull << 53) - 1)) + 0.5) * (1.0 / 9007199254740992.0);
    return u;
  }

  /// Standard normal via the inverse CDF (Wichura AS241), chosen over
  /// rejection methods so a draw always consumes exactly two 32-bit words.
  double next_normal() { return normal_icdf(next_uniform()); }

  static double normal_icdf(double p);

private:
  void fill(std::uint64_t ctr) {
    std::uint32_t c[4] = {static_cast<std::uint32_t>(ctr), static_cast<std::uint32_t>(ctr >> 32), stream_[0],
                          stream_[1]};
    std::uint32_t k[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ull * c[0];
      const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
      const std::uint32_t n3 = lo0;
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    buf_[0] = c[0];
    buf_[1] = c[1];
    buf_[2] = c[2];
    buf_[3] = c[3];
  }

  std::uint32_t key_[2];
  std::uint32_t stream_[2];
  std::uint64_t counter_;
  std::uint32_t buf_[4];
  int buf_pos_;
};

}  // namespace fiberlab
