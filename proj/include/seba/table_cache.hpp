#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "seba/arithmetic.hpp"
#include "seba/error.hpp"

namespace seba {

// Binary layout, all integers little-endian:
//   magic "SEBATBL\0" | u32 version | u32 flags | u64 x_max | u64 |𝒩|
//   then per element of 𝒩: varint(n − previous n), varint(r₂), u8 ω₁.
// Flags bit 0 marks a lattice (sieved) table.
inline constexpr std::array<char, 8> kTableMagic{'S', 'E', 'B', 'A', 'T', 'B', 'L', '\0'};
inline constexpr std::uint32_t kTableVersion = 1;

namespace detail {

inline void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

inline void put_varint(std::vector<unsigned char>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<unsigned char>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<unsigned char>(v));
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& buf) : buf_(buf) {}

  std::uint64_t le(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{buf_[pos_++]} << (8 * i);
    return v;
  }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      need(1);
      const unsigned char b = buf_[pos_++];
      v |= std::uint64_t{b & 0x7Fu} << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw FormatError("table cache: varint overflow");
  }

  bool done() const { return pos_ == buf_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > buf_.size()) throw FormatError("table cache: truncated file");
  }
  const std::vector<unsigned char>& buf_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<unsigned char> encode_table(const ArithmeticTable& table) {
  std::vector<unsigned char> out(kTableMagic.begin(), kTableMagic.end());
  detail::put_le(out, kTableVersion, 4);
  detail::put_le(out, table.lattice() ? 1u : 0u, 4);
  detail::put_le(out, static_cast<std::uint64_t>(table.x_max()), 8);
  const auto rep = table.representable();
  detail::put_le(out, rep.size(), 8);
  std::int64_t prev = 0;
  for (const auto n : rep) {
    detail::put_varint(out, static_cast<std::uint64_t>(n - prev));
    detail::put_varint(out, table.r2(n));
    out.push_back(static_cast<unsigned char>(table.omega1(n)));
    prev = n;
  }
  return out;
}

inline ArithmeticTable decode_table(const std::vector<unsigned char>& buf) {
  if (buf.size() < kTableMagic.size() || std::memcmp(buf.data(), kTableMagic.data(), kTableMagic.size()) != 0)
    throw FormatError("table cache: bad magic");
  std::vector<unsigned char> body(buf.begin() + kTableMagic.size(), buf.end());
  detail::Reader in(body);
  const auto version = in.le(4);
  if (version != kTableVersion) throw FormatError("table cache: unsupported version " + std::to_string(version));
  const bool lattice = (in.le(4) & 1u) != 0;
  const auto x_max = in.le(8);
  const auto count = in.le(8);
  if (x_max > (std::uint64_t{1} << 40) || count > x_max + 1) throw FormatError("table cache: implausible header");
  std::vector<std::uint32_t> r2(x_max + 1, 0);
  std::vector<std::uint8_t> omega1(x_max + 1, 0);
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto delta = in.varint();
    if (i > 0 && delta == 0) throw FormatError("table cache: elements not strictly increasing");
    n += delta;
    if (n > x_max) throw FormatError("table cache: element beyond x_max");
    const auto r = in.varint();
    if (r == 0 || r > UINT32_MAX) throw FormatError("table cache: invalid multiplicity");
    r2[n] = static_cast<std::uint32_t>(r);
    omega1[n] = static_cast<std::uint8_t>(in.le(1));
  }
  if (!in.done()) throw FormatError("table cache: trailing bytes");
  return assemble_table(std::move(r2), std::move(omega1), lattice);
}

inline void save_table(const ArithmeticTable& table, const std::filesystem::path& path) {
  const auto bytes = encode_table(table);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline ArithmeticTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open table cache " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_table(bytes);
}

}  // namespace seba
