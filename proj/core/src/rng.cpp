#include "ophc/rng.hpp"

namespace ophc {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(mix64(seed) ^ (value + 0x632be59bd9b4e019ULL + (seed << 6) + (seed >> 2)));
}

std::mt19937_64 RngHandle::engine() const {
  const std::uint64_t h = hash_combine(master_seed, stream_index);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(stream_index)};
  return std::mt19937_64(seq);
}

RngHandle RngHandle::child(std::uint64_t index) const {
  return RngHandle{hash_combine(hash_combine(master_seed, stream_index), 0xc41d5eedULL), index};
}

}  // namespace ophc
