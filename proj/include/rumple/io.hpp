#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rumple/errors.hpp"
#include "rumple/magma.hpp"

namespace rumple {

// Text format: first line "magma <n>", then n rows of n integers in 0..n-1.
// Parsing is strict apart from flexible whitespace and trailing blank lines.
inline Magma parse_mag(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(errc::parse_error, "empty input, expected a magma header");
  std::istringstream header(line);
  std::string tag;
  long long n = -1;
  header >> tag >> n;
  std::string extra;
  if (tag != "magma" || n < 1 || (header >> extra))
    fail(errc::parse_error, "header must be exactly 'magma <n>' with n >= 1: got \"" + line + "\"");
  if (n > 4096) fail(errc::parse_error, "order " + std::to_string(n) + " is unreasonably large");
  Magma M;
  M.n = static_cast<int>(n);
  M.t.reserve(static_cast<std::size_t>(n) * n);
  for (long long i = 0; i < n * n; ++i) {
    long long v;
    if (!(in >> v))
      fail(errc::parse_error, "table ended after " + std::to_string(i) + " of " +
                                  std::to_string(n * n) + " entries");
    if (v < 0 || v >= n)
      fail(errc::parse_error, "entry " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
    M.t.push_back(static_cast<int>(v));
  }
  std::string tail;
  if (in >> tail) fail(errc::parse_error, "trailing content after the table: \"" + tail + "\"");
  return M;
}

inline void print_mag(std::ostream& out, const Magma& X) {
  out << "magma " << X.n << "\n";
  for (int x = 0; x < X.n; ++x) {
    for (int y = 0; y < X.n; ++y) out << (y ? " " : "") << X.at(x, y);
    out << "\n";
  }
}

inline std::string to_mag(const Magma& X) {
  std::ostringstream out;
  print_mag(out, X);
  return out.str();
}

inline Magma parse_mag_string(const std::string& text) {
  std::istringstream in(text);
  return parse_mag(in);
}

inline Magma read_mag_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  return parse_mag(in);
}

// Whole-file writes go through a sibling temp file and a rename, so readers
// never observe a half-written file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::parse_error, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) fail(errc::parse_error, "short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace rumple
