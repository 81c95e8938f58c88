// Copyright 2022 The swaproute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swaproute/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "swaproute/error.hpp"

namespace swaproute {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::BadUnfolding: return "BadUnfolding";
    case ErrorCode::UnfoldFailed: return "UnfoldFailed";
    case ErrorCode::InvalidLayer: return "InvalidLayer";
    case ErrorCode::StrategyExhausted: return "StrategyExhausted";
    case ErrorCode::MappingInvalid: return "MappingInvalid";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivByZero: return "DivByZero";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
  }
  return "Unknown";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << contents;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace swaproute
