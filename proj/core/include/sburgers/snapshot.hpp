#pragma once

#include <string>

#include "sburgers/field.hpp"

namespace sburgers {

struct Snapshot {
  Field field;
  double time = 0.0;
};

/// SBF1 binary snapshot: magic "SBF1", then little-endian
/// u8 version=1, u8 d, u8 components, u8 reserved=0, u64 n, f64 period,
/// f64 time, then components × n^d f64 physical values, row major with the
/// last axis fastest. Round trips are bit-exact.
void write_snapshot(const Field& field, const std::string& path, double time = 0.0);
Snapshot read_snapshot(const std::string& path);

}  // namespace sburgers
