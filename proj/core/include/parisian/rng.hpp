#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace parisian {

/// splitmix64 mixer; used to derive per-path xoshiro states from (seed, path).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman-Vigna), seeded through splitmix64.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// uniform in (0, 1]
  double uniform01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  std::int32_t next_i32() { return static_cast<std::int32_t>(next() >> 32); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

/// Independent stream for one path, derived from (seed, path index) only.
inline Xoshiro256pp make_path_rng(std::uint64_t seed, std::uint64_t path) {
  std::uint64_t a = seed;
  std::uint64_t b = path * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
  return Xoshiro256pp(splitmix64(a) ^ splitmix64(b));
}

namespace rng_detail {

// Marsaglia-Tsang ziggurat tables (128 layers).
struct ZigguratTables {
  std::uint32_t kn[128];
  double wn[128];
  double fn[128];

  ZigguratTables() {
    const double m1 = 2147483648.0;
    double dn = 3.442619855899, tn = dn;
    const double vn = 9.91256303526217e-3;
    double q = vn / std::exp(-0.5 * dn * dn);
    kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
    kn[1] = 0;
    wn[0] = q / m1;
    wn[127] = dn / m1;
    fn[0] = 1.0;
    fn[127] = std::exp(-0.5 * dn * dn);
    for (int i = 126; i >= 1; --i) {
      dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
      kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
      tn = dn;
      fn[i] = std::exp(-0.5 * dn * dn);
      wn[i] = dn / m1;
    }
  }

  static const ZigguratTables& get() {
    static const ZigguratTables t;
    return t;
  }
};

}  // namespace rng_detail

/// Standard normal draw (ziggurat).
inline double standard_normal(Xoshiro256pp& rng) {
  const auto& t = rng_detail::ZigguratTables::get();
  const double r = 3.442619855899;
  for (;;) {
    const std::int32_t hz = rng.next_i32();
    const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
    const std::uint32_t mag =
        static_cast<std::uint32_t>(std::llabs(static_cast<long long>(hz)));
    if (mag < t.kn[iz]) return hz * t.wn[iz];
    if (iz == 0) {  // tail
      double x, y;
      do {
        x = -std::log(rng.uniform01()) / r;
        y = -std::log(rng.uniform01());
      } while (y + y < x * x);
      return hz > 0 ? r + x : -(r + x);
    }
    const double x = hz * t.wn[iz];
    if (t.fn[iz] + rng.uniform01() * (t.fn[iz - 1] - t.fn[iz]) <
        std::exp(-0.5 * x * x))
      return x;
  }
}

}  // namespace parisian
