#include "sburgers/rng.hpp"

namespace sburgers {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t sample_index,
                     std::string_view purpose)
    : derived_seed_(mix64(mix64(mix64(master_seed) ^ sample_index) ^ fnv1a(purpose))),
      engine_(derived_seed_) {}

}  // namespace sburgers
