#pragma once

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace stablike {

inline constexpr const char* kVersion = "0.1.0";

namespace io {

/// Shortest decimal string that round-trips to the same double.
inline std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string fmt(std::uint64_t v) { return std::to_string(v); }

inline void csv_row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

/// "# stablike <version> config_hash=<hex>" comment line.
inline void provenance_line(std::ostream& os, std::uint64_t config_hash) {
  os << "# stablike " << kVersion << " config_hash=" << hex(config_hash) << '\n';
}

}  // namespace io
}  // namespace stablike
