#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace senses {

// Error taxonomy shared across the library. Each maps to one failure mode a
// caller can reasonably catch and handle.
struct RadiusOutOfRange : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingLink : std::runtime_error { using std::runtime_error::runtime_error; };
struct LinkNotOwned : std::runtime_error { using std::runtime_error::runtime_error; };
struct BrokenPath : std::runtime_error { using std::runtime_error::runtime_error; };
struct ShapeMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct LengthMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotFixedSensor : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadL1 : std::runtime_error { using std::runtime_error::runtime_error; };
struct InfeasibleCoverage : std::runtime_error { using std::runtime_error::runtime_error; };
struct ParseError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ValidationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingParams : std::runtime_error { using std::runtime_error::runtime_error; };
struct DivergedLoss : std::runtime_error { using std::runtime_error::runtime_error; };

// Seeded RNG wrapper. mt19937_64 output is fully specified by the standard,
// and all derived draws below use explicit bit manipulation, so streams are
// identical across standard library implementations and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Uniform integer in [0, n). Multiply-shift map; bias is < n / 2^64.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 finalizer; good avalanche for composing small keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Content identity of one cell observation within one slot.
inline std::uint64_t hash_cell_slot(std::int64_t cell, std::int64_t slot) {
  return mix64(static_cast<std::uint64_t>(cell) ^
               mix64(static_cast<std::uint64_t>(slot)));
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace senses
