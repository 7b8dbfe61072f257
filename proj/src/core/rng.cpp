#include "fracstoch/rng.hpp"

#include <cmath>

namespace fracstoch {

namespace {

std::mt19937_64 seeded_engine(const StreamId& id) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(id.master_seed), hi(id.master_seed), lo(id.index), hi(id.index),
                    static_cast<std::uint32_t>(id.purpose), 0x6a09e667u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(StreamId id) : id_(id), engine_(seeded_engine(id)) {}

double RngStream::exponential() noexcept { return -std::log(uniform()); }

double RngStream::normal() noexcept {
  std::normal_distribution<double> dist;
  return dist(engine_);
}

std::uint64_t RngStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

}  // namespace fracstoch
