// include/vcvts/base/binary-io.h

// Copyright 2026  vcvts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VCVTS_BASE_BINARY_IO_H_
#define VCVTS_BASE_BINARY_IO_H_

#include <cstdint>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include "vcvts/base/error.h"

namespace vcvts {

// All on-disk integers and floats are little-endian.  The build targets
// little-endian hosts only, so these are plain byte copies.
static_assert(std::endian::native == std::endian::little,
              "on-disk formats assume a little-endian host");

template <typename T>
void WriteLe(std::ostream &os, T value) {
  static_assert(std::is_arithmetic_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  os.write(bytes, sizeof(T));
}

template <typename T>
T ReadLe(std::istream &is, const std::string &what) {
  static_assert(std::is_arithmetic_v<T>);
  char bytes[sizeof(T)];
  is.read(bytes, sizeof(T));
  if (is.gcount() != static_cast<std::streamsize>(sizeof(T)))
    throw FormatError("unexpected end of data while reading " + what);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace vcvts

#endif  // VCVTS_BASE_BINARY_IO_H_
