#include "motzkin/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace motzkin {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

Integer two_pow(unsigned long bits) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, bits);
  return out;
}

Integer from_u64(std::uint64_t x) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return out;
}

std::uint64_t to_u64(const Integer& x) {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, 1, sizeof(out), 0, 0, x.get_mpz_t());
  return count == 0 ? 0 : out;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

std::uint64_t RandomStream::next() {
  if (used_ >= 4) {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
    ++block_;
    used_ = 0;
  }
  const std::uint64_t hi = buffer_[static_cast<std::size_t>(used_)];
  const std::uint64_t lo = buffer_[static_cast<std::size_t>(used_ + 1)];
  used_ += 2;
  return (hi << 32) | lo;
}

ExactDiscrete::ExactDiscrete(std::span<const Rational> weights) {
  cumulative_.reserve(weights.size());
  bool any = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (sgn(weights[i]) < 0) throw std::invalid_argument("negative sampling weight");
    total_ += weights[i];
    cumulative_.push_back(total_);
    if (sgn(weights[i]) > 0) {
      last_positive_ = i;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("sampling weights have no positive mass");
  const Integer scale = two_pow(64);
  thresholds_.reserve(last_positive_);
  for (std::size_t i = 0; i < last_positive_; ++i) {
    Rational scaled = cumulative_[i] * scale / total_;
    Integer floor_value = scaled.get_num() / scaled.get_den();
    thresholds_.push_back(to_u64(floor_value));
  }
}

std::size_t ExactDiscrete::draw(RandomStream& rng) const {
  const std::uint64_t u = rng.next();
  // Smallest i with u < t_i means [u, u+1)/2⁶⁴ lies below C_i / W.
  auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), u);
  const auto i = static_cast<std::size_t>(it - thresholds_.begin());
  // If u equals the previous threshold the cell boundary may sit inside [u, u+1).
  if (i > 0 && thresholds_[i - 1] == u) return draw_slow(rng, u);
  return i;
}

std::size_t ExactDiscrete::draw_slow(RandomStream& rng, std::uint64_t first_word) const {
  Integer numerator = from_u64(first_word);
  unsigned long bits = 64;
  while (true) {
    const Integer denom = two_pow(bits);
    Rational lo(numerator, denom);
    Rational hi(numerator + 1, denom);
    lo.canonicalize();
    hi.canonicalize();
    lo *= total_;
    hi *= total_;
    for (std::size_t i = 0; i <= last_positive_; ++i) {
      if (lo < cumulative_[i]) {
        if (hi <= cumulative_[i]) return i;
        break;
      }
    }
    numerator = numerator * two_pow(64) + from_u64(rng.next());
    bits += 64;
  }
}

}  // namespace motzkin
