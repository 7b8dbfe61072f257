#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fracstoch {

enum class StreamPurpose : std::uint32_t {
  TimeChange = 1,
  OuterPath = 2,
  Inner = 3,
  Auxiliary = 4,
};

/// Provenance of a stream: which master seed, which path index, which role.
struct StreamId {
  std::uint64_t master_seed = 0;
  std::uint64_t index = 0;
  StreamPurpose purpose = StreamPurpose::Auxiliary;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

/// A reproducible random stream derived from (master seed, index, purpose).
///
/// Streams are move-only so that a single stream cannot silently feed two
/// consumers; the derived engine state depends only on the id, so path i is
/// reproducible regardless of how paths are scheduled across threads.
class RngStream {
 public:
  explicit RngStream(StreamId id);
  RngStream(std::uint64_t master_seed, std::uint64_t index,
            StreamPurpose purpose = StreamPurpose::Auxiliary)
      : RngStream(StreamId{master_seed, index, purpose}) {}

  RngStream(const RngStream&) = delete;
  RngStream& operator=(const RngStream&) = delete;
  RngStream(RngStream&&) noexcept = default;
  RngStream& operator=(RngStream&&) noexcept = default;

  const StreamId& id() const noexcept { return id_; }

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  void fill_uniform(std::span<double> out) noexcept {
    for (double& u : out) u = uniform();
  }

  double exponential() noexcept;
  double normal() noexcept;
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  StreamId id_;
  std::mt19937_64 engine_;
};

}  // namespace fracstoch
