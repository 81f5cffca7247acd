#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "qgc/bigint.hpp"
#include "qgc/error.hpp"

namespace qgc {

// Big-endian writer/reader for the QGEK/QGSD/QGSC formats. Integers are written
// as a 4-byte big-endian length followed by the minimal big-endian magnitude.

inline void put_be(Bytes& out, std::uint64_t v, int width) {
  for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_magic(Bytes& out, std::string_view magic) { out.insert(out.end(), magic.begin(), magic.end()); }

inline void put_int(Bytes& out, const Int& v) {
  Bytes mag = to_bytes_be(v);
  put_be(out, mag.size(), 4);
  out.insert(out.end(), mag.begin(), mag.end());
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (remaining() < n) throw Error(Errc::bad_format, "unexpected end of data");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint64_t get_be(int width) {
    std::uint64_t v = 0;
    for (auto b : take(static_cast<std::size_t>(width))) v = (v << 8) | b;
    return v;
  }

  void expect_magic(std::string_view magic) {
    auto got = take(magic.size());
    if (!std::equal(got.begin(), got.end(), magic.begin()))
      throw Error(Errc::bad_format, "bad magic, expected " + std::string(magic));
  }

  Int get_int() {
    auto len = get_be(4);
    return from_bytes_be(take(len));
  }

  void expect_end() const {
    if (remaining() != 0) throw Error(Errc::bad_format, "trailing bytes after record");
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace qgc
