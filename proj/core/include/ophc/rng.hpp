#pragma once

#include <cstdint>
#include <random>

namespace ophc {

/// Reproducible random stream identified by (master_seed, stream_index).
///
/// A handle is a plain value: it owns no engine state. Every consumer builds
/// a fresh engine from it, so two calls with equal handles see equal draws no
/// matter which thread runs them or in what order.
struct RngHandle {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  /// Engine seeded from a hash of both fields.
  [[nodiscard]] std::mt19937_64 engine() const;

  /// Independent sub-stream. The child's master seed is the hash of this
  /// handle, so children of distinct parents never collide in practice.
  [[nodiscard]] RngHandle child(std::uint64_t index) const;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

/// SplitMix64 finalizer; used for seed derivation only.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-dependent combination of two words into one seed.
[[nodiscard]] std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept;

}  // namespace ophc
