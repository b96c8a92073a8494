#include "lupus/format.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

namespace lupus {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_sci2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

}  // namespace lupus
